//! File formats and text grammars.
//!
//! Module files (`eamod-v1`):
//!
//! ```json
//! {"format":"eamod-v1","p":3,"k":2,"dim":3,
//!  "field":{"p":3,"m":1,"irr":[0,1]},
//!  "generators":[[[[0],[0],[0]], ...], ...]}
//! ```
//!
//! Each matrix entry is the ascending coefficient array of the element, of
//! length exactly `m`. Matrices are validated on load.
//!
//! Points are written as comma-separated coordinates, each an integer or a
//! polynomial in `w` (the class of `x` modulo the field's modulus), for
//! example `1,2w+1,w^2-1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Fel, FieldCtx, FieldSpec};
use crate::linalg::MatF;
use crate::modrep::{EAModule, Point};

pub const FORMAT_TAG: &str = "eamod-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    format: String,
    p: u64,
    k: usize,
    dim: usize,
    field: FieldSpec,
    generators: Vec<Vec<Vec<Vec<u64>>>>,
}

/// Serialize a module as an `eamod-v1` document (compact, one line).
pub fn module_to_json(m: &EAModule) -> String {
    let field = m.field();
    let generators = m
        .gens()
        .iter()
        .map(|x| {
            (0..x.rows())
                .map(|r| (0..x.cols()).map(|c| field.coeffs(x.get(r, c)).into_iter().map(u64::from).collect()).collect())
                .collect()
        })
        .collect();
    let file = ModuleFile {
        format: FORMAT_TAG.into(),
        p: field.p() as u64,
        k: m.k(),
        dim: m.dim(),
        field: field.spec(),
        generators,
    };
    serde_json::to_string(&file).expect("serializable")
}

/// Parse and validate an `eamod-v1` document.
pub fn module_from_json(text: &str) -> Result<EAModule> {
    let file: ModuleFile = serde_json::from_str(text).map_err(|e| Error::BadFile(e.to_string()))?;
    if file.format != FORMAT_TAG {
        return Err(Error::BadFile(format!("unknown format {:?}", file.format)));
    }
    if file.p != file.field.p {
        return Err(Error::BadFile(format!("p = {} but the field has characteristic {}", file.p, file.field.p)));
    }
    if file.generators.len() != file.k {
        return Err(Error::BadFile(format!("k = {} but {} generators given", file.k, file.generators.len())));
    }
    if file.dim > 4096 {
        return Err(Error::TooLarge(format!("dimension {}", file.dim)));
    }
    let field = FieldCtx::from_spec(&file.field)?;
    let m = field.m() as usize;
    let mut gens = Vec::with_capacity(file.k);
    for (g, rows) in file.generators.iter().enumerate() {
        if rows.len() != file.dim || rows.iter().any(|r| r.len() != file.dim) {
            return Err(Error::BadFile(format!("generator {} is not {}x{}", g + 1, file.dim, file.dim)));
        }
        let mut mat = MatF::zeros(&field, file.dim, file.dim);
        for (r, row) in rows.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                if entry.len() != m {
                    return Err(Error::BadFile(format!(
                        "entry ({r},{c}) of generator {} has {} coefficients, expected {m}",
                        g + 1,
                        entry.len()
                    )));
                }
                mat.set(r, c, field.from_coeffs(entry)?);
            }
        }
        gens.push(mat);
    }
    EAModule::new(&field, file.dim, gens)
}

/// Parse a field description `{"p":..,"m":..,"irr":[..]}`.
pub fn field_from_json(text: &str) -> Result<FieldCtx> {
    let spec: FieldSpec = serde_json::from_str(text).map_err(|e| Error::BadFile(e.to_string()))?;
    FieldCtx::from_spec(&spec)
}

pub fn field_to_json(field: &FieldCtx) -> String {
    serde_json::to_string(&field.spec()).expect("serializable")
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::ParseFailure { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    /// Digits reduced mod `modulus`; `None` if there are no digits.
    fn number(&mut self, modulus: u64) -> Option<u64> {
        let start = self.pos;
        let mut v = 0u64;
        while let Some(d @ b'0'..=b'9') = self.peek() {
            v = (v * 10 + (d - b'0') as u64) % modulus;
            self.pos += 1;
        }
        (self.pos > start).then_some(v)
    }

    fn exponent(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v = 0u64;
        while let Some(d @ b'0'..=b'9') = self.peek() {
            v = match v.checked_mul(10).and_then(|v| v.checked_add((d - b'0') as u64)) {
                Some(v) => v,
                None => {
                    self.pos = start;
                    return self.fail("exponent too large");
                }
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.fail("expected exponent");
        }
        Ok(v)
    }

    /// `[coef] ['*'] [w ['^' exp]]`, at least one of the two parts present.
    fn term(&mut self, field: &FieldCtx) -> Result<Fel> {
        self.skip_ws();
        let p = field.p() as u64;
        let coef = self.number(p);
        self.skip_ws();
        let star = coef.is_some() && self.peek() == Some(b'*');
        if star {
            self.pos += 1;
            self.skip_ws();
        }
        if self.peek() == Some(b'w') {
            if field.m() == 1 {
                return self.fail("w is not available in a prime field");
            }
            self.pos += 1;
            self.skip_ws();
            let mut e = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                e = self.exponent()?;
            }
            let c = field.from_int(coef.unwrap_or(1) as i64);
            return Ok(field.mul(c, field.pow(field.gen(), e)));
        }
        if star {
            return self.fail("expected w after '*'");
        }
        match coef {
            Some(c) => Ok(field.from_int(c as i64)),
            None => self.fail("expected an integer or w"),
        }
    }

    /// A signed sum of terms, ending at ',' or end of input.
    fn element(&mut self, field: &FieldCtx) -> Result<Fel> {
        self.skip_ws();
        let mut neg = false;
        if self.peek() == Some(b'-') {
            neg = true;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut acc = Fel::ZERO;
        loop {
            let t = self.term(field)?;
            acc = if neg { field.sub(acc, t) } else { field.add(acc, t) };
            self.skip_ws();
            match self.peek() {
                Some(b'+') => neg = false,
                Some(b'-') => neg = true,
                None | Some(b',') => return Ok(acc),
                Some(_) => return self.fail("unexpected character"),
            }
            self.pos += 1;
        }
    }
}

/// Parse one field element in the point grammar.
pub fn parse_element(field: &FieldCtx, text: &str) -> Result<Fel> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let v = cur.element(field)?;
    if cur.pos != text.len() {
        return cur.fail("trailing input");
    }
    Ok(v)
}

/// Parse a point `a1,a2,...`. Byte positions in errors refer to `text`.
pub fn parse_alpha(field: &FieldCtx, text: &str) -> Result<Point> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut coords = vec![cur.element(field)?];
    while cur.peek() == Some(b',') {
        cur.pos += 1;
        coords.push(cur.element(field)?);
    }
    Ok(Point::new(coords))
}
