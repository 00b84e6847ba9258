use eamod::gf::{Fel, FieldCtx};
use eamod::io::{module_from_json, module_to_json, parse_alpha};
use eamod::linalg::{jordan_type_nilpotent, JordanType, MatF};
use eamod::modrep::{fitting_decompose, EAModule, Point};
use eamod::symrep::{block_model_d1, d_r, PkPoly, SymContext};
use eamod::variety::{generic_type, variety_points, wreath_act};
use eamod::linalg::Dominance;
use proptest::prelude::*;

fn field(p: u64, m: u32) -> FieldCtx {
    FieldCtx::new(p, m).unwrap()
}

fn small_field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(vec![(2u64, 1u32), (3, 1), (3, 2), (5, 1), (2, 3), (7, 2)]).prop_map(|(p, m)| field(p, m))
}

fn elems(f: &FieldCtx, n: usize) -> impl Strategy<Value = Vec<Fel>> {
    prop::collection::vec((0..f.q()).prop_map(Fel), n)
}

fn matrix(f: FieldCtx, rows: usize, cols: usize) -> impl Strategy<Value = MatF> {
    elems(&f, rows * cols).prop_map(move |v| MatF::from_fn(&f, rows, cols, |r, c| v[r * cols + c]))
}

fn jordan_module(f: &FieldCtx, blocks: &[usize], k: usize) -> EAModule {
    let t = JordanType::from_blocks(f.p() as usize, blocks);
    let x = t.canonical_matrix(f);
    let mut gens = vec![x];
    gens.resize(k, MatF::zeros(f, t.dim(), t.dim()));
    EAModule::new(f, t.dim(), gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in small_field(), seed in any::<u64>()) {
        let q = f.q() as u64;
        let pick = |i: u64| Fel(((seed.rotate_left(i as u32 * 13)) % q) as u32);
        let (a, b, c) = (pick(1), pick(2), pick(3));
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, q - 1), f.one());
        }
        // Frobenius is additive
        let p = f.p() as u64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn rank_nullity_and_solve((f, m) in small_field().prop_flat_map(|f| (Just(f.clone()), 1usize..6, 1usize..6))
        .prop_flat_map(|(f, r, c)| (Just(f.clone()), matrix(f, r, c)))) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let x: Vec<Fel> = (0..m.cols()).map(|i| f.from_int(i as i64 + 1)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn inverse_and_det(m in small_field().prop_flat_map(|f| matrix(f, 4, 4))) {
        let f = m.field().clone();
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv).unwrap(), MatF::identity(&f, 4));
                prop_assert!(!m.det().is_zero());
            }
            None => {
                prop_assert!(m.det().is_zero());
                prop_assert!(m.rank() < 4);
            }
        }
    }

    #[test]
    fn jordan_type_is_a_conjugation_invariant(
        blocks in prop::collection::vec(1usize..=3, 1..5),
        g in matrix(field(3, 1), 12, 12),
    ) {
        let f = field(3, 1);
        let t = JordanType::from_blocks(3, &blocks);
        let n = t.dim();
        let g = g.submatrix(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
        prop_assume!(g.inverse().is_some());
        let x = g.inverse().unwrap().mul(&t.canonical_matrix(&f)).unwrap().mul(&g).unwrap();
        prop_assert_eq!(jordan_type_nilpotent(&x, 3).unwrap(), t);
    }

    #[test]
    fn sum_and_tensor_point_laws(l1 in 0i64..3, m1 in 0i64..3, l2 in 0i64..3, m2 in 0i64..3, a in 0u32..9, b in 0u32..9) {
        let f = field(3, 2);
        prop_assume!(a != 0 || b != 0);
        let m = EAModule::benson(&f, f.from_int(l1), f.from_int(m1)).unwrap();
        let n = EAModule::benson(&f, f.from_int(l2), f.from_int(m2)).unwrap();
        let pt = Point::new(vec![Fel(a), Fel(b)]);
        let (vm, vn) = (m.variety_contains(&pt).unwrap(), n.variety_contains(&pt).unwrap());
        let sum = m.direct_sum(&n).unwrap();
        let ten = m.tensor(&n).unwrap();
        prop_assert!(sum.validate().is_ok() && ten.validate().is_ok());
        prop_assert_eq!(sum.variety_contains(&pt).unwrap(), vm || vn);
        prop_assert_eq!(ten.variety_contains(&pt).unwrap(), vm && vn);
        let (fm, fn_) = (m.projective_test().unwrap().1, n.projective_test().unwrap().1);
        prop_assert_eq!(sum.projective_test().unwrap().1, fm + fn_);
    }

    #[test]
    fn freeness_agrees_with_jordan_type(l in 0i64..3, mu in 0i64..3, a in 0u32..9, b in 0u32..9, regular in any::<bool>()) {
        let f = field(3, 2);
        prop_assume!(a != 0 || b != 0);
        let m = if regular { EAModule::regular(&f, 2) } else { EAModule::benson(&f, f.from_int(l), f.from_int(mu)).unwrap() };
        let pt = Point::new(vec![Fel(a), Fel(b)]);
        let t = m.point_jordan_type(&pt).unwrap();
        let free = m.dim() % 3 == 0 && t == JordanType::free(3, m.dim() / 3);
        prop_assert_eq!(m.is_free_at(&pt).unwrap(), free);
    }

    #[test]
    fn pk_vanishes_with_two_zero_coordinates(coords in prop::collection::vec(0u32..25, 3..5), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let f = field(5, 2);
        let mut c: Vec<Fel> = coords.into_iter().map(Fel).collect();
        c[i] = Fel::ZERO;
        c[j] = Fel::ZERO;
        let k = c.len();
        prop_assert!(PkPoly::new(5, k).eval(&f, &Point::new(c)).unwrap().is_zero());
    }

    #[test]
    fn wreath_action_preserves_the_variety(a in 0u32..9, b in 0u32..9, c in 0u32..9, g in prop::collection::vec(1i64..3, 3), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let f = field(3, 2);
        let pt = Point::new(vec![Fel(a), Fel(b), Fel(c)]);
        prop_assume!(!pt.is_zero());
        let m = d_r(&SymContext::new(3, 3).unwrap(), &f, 2).unwrap();
        let gamma: Vec<Fel> = g.iter().map(|&x| f.from_int(x)).collect();
        let image = wreath_act(&f, &gamma, &perm, &pt).unwrap();
        prop_assert_eq!(m.variety_contains(&pt).unwrap(), m.variety_contains(&image).unwrap());
    }

    #[test]
    fn module_file_round_trip(l in 0u32..9, mu in 0u32..9, wedge in 0usize..4) {
        let f = field(3, 2);
        let m = EAModule::benson(&f, Fel(l), Fel(mu)).unwrap().wedge(wedge).unwrap();
        prop_assert_eq!(module_from_json(&module_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn alpha_format_parse_round_trip(f in small_field(), raw in prop::collection::vec(any::<u32>(), 1..5)) {
        let coords: Vec<Fel> = raw.iter().map(|&x| Fel(x % f.q())).collect();
        let text: Vec<String> = coords.iter().map(|&c| f.format(c)).collect();
        prop_assert_eq!(parse_alpha(&f, &text.join(",")).unwrap().coords, coords);
    }

    #[test]
    fn alpha_parser_never_panics(s in ".{0,40}") {
        let _ = parse_alpha(&field(3, 2), &s);
        let _ = parse_alpha(&field(5, 1), &s);
    }

    #[test]
    fn fitting_decomposition_is_a_conjugation(blocks in prop::collection::vec(1usize..=3, 1..4), seed in any::<u64>()) {
        let f = field(3, 1);
        let m = jordan_module(&f, &blocks, 2);
        let d = fitting_decompose(&m, 12, seed);
        let mut sum = EAModule::zero(&f, 2);
        for s in &d.summands {
            prop_assert!(s.validate().is_ok());
            sum = sum.direct_sum(s).unwrap();
        }
        prop_assert_eq!(sum.dim(), m.dim());
        let inv = d.basis.inverse().expect("adapted basis");
        for (x, y) in m.gens().iter().zip(sum.gens()) {
            prop_assert_eq!(&inv.mul(x).unwrap().mul(&d.basis).unwrap(), y);
        }
        // deterministic in the seed
        prop_assert_eq!(fitting_decompose(&m, 12, seed).summands, d.summands);
    }
}

#[test]
fn block_model_generators_annihilate_each_other() {
    for (p, k) in [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2)] {
        let f = field(p as u64, 1);
        let m = block_model_d1(&SymContext::new(p, k).unwrap(), &f).unwrap();
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    assert!(m.gens()[i].mul(&m.gens()[j]).unwrap().is_zero(), "p={p} k={k} i={i} j={j}");
                }
            }
        }
    }
}

#[test]
fn sampled_types_are_dominated_by_the_generic_type() {
    let f = field(3, 1);
    for (k, r) in [(2, 1), (3, 1), (3, 2)] {
        let m = d_r(&SymContext::new(3, k).unwrap(), &f, r).unwrap();
        let g = generic_type(&m, 4, 24, 7).unwrap();
        let top = g.jordan.clone().unwrap();
        for (t, _) in &g.observed {
            assert!(matches!(top.dominance_compare(t).unwrap(), Dominance::Greater | Dominance::Equal));
        }
        assert_eq!(generic_type(&m, 4, 24, 7).unwrap(), g, "seeded sampling is reproducible");
    }
}

#[test]
fn free_generic_type_makes_freeness_and_maximality_complementary() {
    let f9 = field(3, 2);
    for k in [2, 3] {
        let m = d_r(&SymContext::new(3, k).unwrap(), &f9, 2).unwrap();
        let g = generic_type(&m, 4, 24, 7).unwrap().jordan.unwrap();
        assert!(g.is_free());
        for rec in variety_points(&m).unwrap().points {
            assert_eq!(rec.free, rec.jordan == g);
        }
    }
}

#[test]
fn induced_module_varieties_lie_in_the_embedded_span() {
    let f3 = field(3, 1);
    let f9 = field(3, 2);
    let base = EAModule::benson(&f3, f3.from_int(1), f3.from_int(1)).unwrap();
    let embed = vec![vec![1, 0, 1], vec![0, 1, 1]];
    let ind = base.induce(3, &embed).unwrap();
    assert_eq!(ind.dim(), 9);
    let span: Vec<Vec<Fel>> = embed.iter().map(|v| v.iter().map(|&c| f9.from_int(c as i64)).collect()).collect();
    for pt in variety_points(&ind.change_field(&f9).unwrap()).unwrap().variety() {
        assert!(eamod::variety::in_span(&f9, &span, &pt));
    }
}
