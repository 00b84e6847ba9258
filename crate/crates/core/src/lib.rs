pub mod error;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod modrep;
pub mod rng;
pub mod suite;
pub mod symrep;
pub mod variety;

pub use error::{Error, Result};
