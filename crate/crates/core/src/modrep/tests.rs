use super::*;
use crate::gf::Poly;
use crate::linalg::JordanType;

fn f3() -> FieldCtx {
    FieldCtx::new(3, 1).unwrap()
}

fn jordan_block_module(field: &FieldCtx, sizes: &[usize]) -> EAModule {
    let p = field.p() as usize;
    let t = JordanType::from_blocks(p, sizes);
    EAModule::new(field, t.dim(), vec![t.canonical_matrix(field)]).unwrap()
}

#[test]
fn validate_examples() {
    let f = f3();
    for (l, m) in [(0, 0), (0, 1), (1, 2), (2, 2)] {
        assert!(EAModule::benson(&f, f.from_int(l), f.from_int(m)).is_ok());
    }
    let j2 = MatF::from_ints(&f, &[&[0, 0], &[1, 0]]);
    let err = EAModule::new(&f, 2, vec![j2.clone(), j2.transpose()]).unwrap_err();
    assert_eq!(err, Error::NonCommuting(1, 2));
    let j4 = JordanType::from_blocks(4, &[4]).canonical_matrix(&f);
    assert_eq!(EAModule::new(&f, 4, vec![j4]).unwrap_err(), Error::NotNilpotentGenerator(1));
    assert!(EAModule::zero(&f, 2).validate().is_ok());
}

#[test]
fn x_alpha_of_benson_module() {
    let f = FieldCtx::new(3, 2).unwrap();
    let (lambda, mu) = (f.gen(), f.from_int(2));
    let m = EAModule::benson(&f, lambda, mu).unwrap();
    let a = Point::new(vec![f.from_int(1), f.from_int(1)]);
    let u = m.x_alpha(&a).unwrap();
    let sub = f.add(a.coords[0], f.mul(a.coords[1], lambda));
    assert_eq!(u.get(1, 0), sub);
    assert_eq!(u.get(2, 1), sub);
    assert_eq!(u.get(2, 0), f.mul(a.coords[1], mu));
    assert_eq!(m.x_alpha(&Point::from_ints(&f, &[1, 0])).unwrap(), m.gens()[0]);
    assert_eq!(m.x_alpha(&Point::from_ints(&f, &[0, 0])), Err(Error::ZeroPoint));
    // rank of the first generator
    assert_eq!(m.gens()[0].rank(), 2);
    // variety is the line through (−λ, 1)
    let on_line = Point::new(vec![f.neg(lambda), f.one()]);
    assert!(m.variety_contains(&on_line).unwrap());
    assert!(!m.variety_contains(&a).unwrap());
}

#[test]
fn trivial_and_regular_modules() {
    let f = f3();
    let triv = EAModule::trivial(&f, 2);
    let a = Point::from_ints(&f, &[1, 2]);
    assert_eq!(triv.point_jordan_type(&a).unwrap(), JordanType::from_blocks(3, &[1]));
    assert!(!triv.is_free_at(&a).unwrap());
    assert!(triv.variety_contains(&Point::from_ints(&f, &[0, 0])).unwrap());

    let reg = EAModule::regular(&f, 2);
    assert_eq!(reg.dim(), 9);
    assert!(reg.validate().is_ok());
    assert!(!reg.variety_contains(&Point::from_ints(&f, &[1, 0])).unwrap());
    assert_eq!(reg.projective_test().unwrap(), (true, 1));
    assert_eq!(EAModule::zero(&f, 2).projective_test().unwrap(), (true, 0));
}

#[test]
fn sums_tensors_duals() {
    let f = f3();
    let m = EAModule::benson(&f, f.from_int(1), f.from_int(1)).unwrap();
    let reg = EAModule::regular(&f, 2);
    let s = reg.direct_sum(&m).unwrap();
    assert_eq!(s.dim(), 12);
    assert_eq!(s.projective_test().unwrap(), (false, 1));
    let t = EAModule::trivial(&f, 2).tensor(&m).unwrap();
    assert_eq!(t.gens(), m.gens());
    let mt = m.tensor(&m).unwrap();
    assert_eq!(mt.dim(), 9);
    assert!(mt.validate().is_ok());
    let d = m.dual();
    assert!(d.validate().is_ok());
    assert_eq!(d.dual(), m);
    let other = EAModule::trivial(&FieldCtx::new(5, 1).unwrap(), 2);
    assert!(matches!(m.direct_sum(&other), Err(Error::MismatchedContext(_))));
}

#[test]
fn wedge_dimensions_and_types() {
    let f = f3();
    let m = EAModule::benson(&f, f.from_int(1), f.from_int(2)).unwrap();
    assert_eq!(m.wedge(0).unwrap(), EAModule::trivial(&f, 2));
    assert_eq!(m.wedge(1).unwrap(), m);
    assert_eq!(m.wedge(2).unwrap().dim(), 3);
    assert!(m.wedge(2).unwrap().validate().is_ok());
    assert!(m.wedge(4).is_err());
    assert_eq!(subsets(4, 2).len(), 6);
    assert_eq!(subsets(4, 2)[0], vec![0, 1]);

    let t22 = JordanType::from_blocks(3, &[2, 2]);
    assert_eq!(wedge_jordan(&t22, 2, 3).unwrap(), JordanType::from_blocks(3, &[3, 1, 1, 1]));
    let t1 = JordanType::from_blocks(3, &[1]);
    assert_eq!(wedge_jordan(&t1, 1, 3).unwrap(), t1);
    for p in [3u32, 5] {
        for count in 1..=3 {
            let w = wedge_jordan(&JordanType::free(p as usize, count), p as usize - 1, p).unwrap();
            assert!(w.is_free(), "p={p} count={count} got {w}");
        }
    }
}

#[test]
fn restriction_examples() {
    let f = f3();
    let m = EAModule::benson(&f, f.zero(), f.one()).unwrap();
    let r = m.restrict_to_subgroup(&[vec![0, 1]]).unwrap();
    assert_eq!(r.k(), 1);
    assert_eq!(r.point_jordan_type(&Point::from_ints(&f, &[1])).unwrap(), JordanType::from_blocks(3, &[2, 1]));
    assert_eq!(m.restrict_to_subgroup(&[vec![1, 0], vec![0, 1]]).unwrap(), m);
    let reg = EAModule::regular(&f, 2).restrict_to_subgroup(&[vec![1, 1]]).unwrap();
    assert_eq!(reg.point_jordan_type(&Point::from_ints(&f, &[1])).unwrap(), JordanType::free(3, 3));
    assert_eq!(m.restrict_to_subgroup(&[vec![1, 1], vec![2, 2]]).unwrap_err(), Error::DependentGenerators);
}

#[test]
fn induction_examples() {
    let f = f3();
    let ind = EAModule::trivial(&f, 1).induce(2, &[vec![1, 1]]).unwrap();
    assert_eq!(ind.dim(), 3);
    assert!(ind.validate().is_ok());
    for a in [[1, 1], [2, 2]] {
        assert!(ind.variety_contains(&Point::from_ints(&f, &a)).unwrap());
    }
    for a in [[1, 0], [0, 1], [1, 2], [2, 1]] {
        assert!(!ind.variety_contains(&Point::from_ints(&f, &a)).unwrap());
    }
    let full = EAModule::trivial(&f, 2).induce(2, &[vec![1, 0], vec![0, 1]]).unwrap();
    assert_eq!(full, EAModule::trivial(&f, 2));
    let from_one = EAModule::trivial(&f, 0).induce(2, &[]).unwrap();
    assert_eq!(from_one.dim(), 9);
    assert_eq!(from_one.projective_test().unwrap(), (true, 1));
    assert_eq!(EAModule::trivial(&f, 2).induce(2, &[vec![1, 2], vec![2, 1]]).unwrap_err(), Error::DependentGenerators);
}

#[test]
fn linear_variety_examples() {
    let f = f3();
    let m = EAModule::linear_variety_module(&f, 2, &[vec![f.one(), f.one()]]).unwrap();
    assert_eq!(m.dim(), 3);
    assert!(m.validate().is_ok());
    assert!(m.variety_contains(&Point::from_ints(&f, &[2, 2])).unwrap());
    assert!(!m.variety_contains(&Point::from_ints(&f, &[1, 2])).unwrap());
    let full = EAModule::linear_variety_module(&f, 2, &[vec![f.one(), f.zero()], vec![f.zero(), f.one()]]).unwrap();
    assert_eq!(full, EAModule::trivial(&f, 2));
    assert_eq!(EAModule::linear_variety_module(&f, 2, &[]).unwrap(), EAModule::regular(&f, 2));
    let dep = EAModule::linear_variety_module(&f, 2, &[vec![f.one(), f.one()], vec![f.from_int(2), f.from_int(2)]]);
    assert_eq!(dep.unwrap_err(), Error::DependentGenerators);
}

#[test]
fn endomorphism_examples() {
    let f = f3();
    assert_eq!(endomorphism_basis(&EAModule::trivial(&f, 1)).len(), 1);
    assert_eq!(endomorphism_basis(&jordan_block_module(&f, &[2])).len(), 2);
    let ff = EAModule::trivial(&f, 1).direct_sum(&EAModule::trivial(&f, 1)).unwrap();
    let basis = endomorphism_basis(&ff);
    assert_eq!(basis.len(), 4);
    assert_eq!(basis[0], MatF::identity(&f, 2));
}

#[test]
fn minimal_polynomial_examples() {
    let f = f3();
    let j = JordanType::from_blocks(3, &[3, 1]).canonical_matrix(&f);
    assert_eq!(minimal_polynomial(&j), Poly::monomial(Fel::ONE, 3));
    assert_eq!(minimal_polynomial(&MatF::identity(&f, 3)), Poly::new(vec![f.from_int(-1), Fel::ONE]));
}

#[test]
fn fitting_splits_direct_sum() {
    let f = f3();
    let m = jordan_block_module(&f, &[1]).direct_sum(&jordan_block_module(&f, &[2])).unwrap();
    let d = fitting_decompose(&m, 20, 1);
    assert_eq!(d.status, DecompositionStatus::Decomposed);
    let mut dims: Vec<usize> = d.summands.iter().map(|s| s.dim()).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 2]);
    check_conjugate(&m, &d);
    let single = fitting_decompose(&jordan_block_module(&f, &[3]), 20, 1);
    assert_eq!(single.status, DecompositionStatus::NoSplitFound(20));
    assert_eq!(single.summands.len(), 1);
}

fn check_conjugate(m: &EAModule, d: &Decomposition) {
    let inv = d.basis.inverse().expect("adapted basis invertible");
    let mut blocks = EAModule::zero(m.field(), m.k());
    for s in &d.summands {
        blocks = blocks.direct_sum(s).unwrap();
    }
    for (x, y) in m.gens().iter().zip(blocks.gens()) {
        assert_eq!(&inv.mul(x).unwrap().mul(&d.basis).unwrap(), y);
    }
}

#[test]
fn change_field_preserves_types() {
    let f = f3();
    let f9 = FieldCtx::new(3, 2).unwrap();
    let m = EAModule::benson(&f, f.from_int(1), f.from_int(1)).unwrap();
    let m9 = m.change_field(&f9).unwrap();
    for a in [[1, 0], [1, 2], [0, 1]] {
        assert_eq!(
            m.point_jordan_type(&Point::from_ints(&f, &a)).unwrap(),
            m9.point_jordan_type(&Point::from_ints(&f9, &a)).unwrap()
        );
    }
}

#[test]
fn point_normalization() {
    let f = FieldCtx::new(5, 1).unwrap();
    let a = Point::from_ints(&f, &[0, 2, 3]).normalize(&f).unwrap();
    assert_eq!(a.coords, vec![f.zero(), f.one(), f.from_int(4)]);
    assert!(a.normalized);
    assert_eq!(Point::from_ints(&f, &[0, 0]).normalize(&f), Err(Error::ZeroPoint));
}
