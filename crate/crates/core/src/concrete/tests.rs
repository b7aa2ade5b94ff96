use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use super::*;
use crate::cycletype::{CountFunction, Fin, Omega};

fn ct(s: &str) -> CycleType {
    s.parse().unwrap()
}

fn canon(s: &str) -> DressedMap {
    DressedMap::canonical(&ct(s)).unwrap()
}

fn tr(a: u64, b: u64) -> FinitaryPerm {
    FinitaryPerm::transposition(a, b)
}

fn ext() -> impl Strategy<Value = ExtNat> {
    prop_oneof![4 => (0..4u64).prop_map(Fin), 1 => Just(Omega)]
}

/// Valid cycle types of every shape, including ω counts.
fn any_type() -> impl Strategy<Value = CycleType> {
    (
        prop_oneof![3 => (0..3u64).prop_map(Fin), 1 => Just(Omega)],
        prop_oneof![3 => (0..4u64).prop_map(Fin), 1 => Just(Omega)],
        prop_oneof![3 => Just(Fin(0)), 1 => Just(Fin(1)), 1 => Just(Omega)],
        proptest::collection::vec((1..7u64, ext()), 0..4),
    )
        .prop_map(|(open, fwd, default, ex)| CycleType::new(open, fwd, CountFunction::new(default, ex)))
        .prop_filter("valid", CycleType::is_valid)
}

/// Types with finitely many cycles in total.
fn small_type(max_fwd: u64) -> impl Strategy<Value = CycleType> {
    (0..3u64, 0..=max_fwd, proptest::collection::vec((1..7u64, 0..3u64), 0..4))
        .prop_map(|(open, fwd, ex)| {
            CycleType::new(Fin(open), Fin(fwd), CountFunction::new(Fin(0), ex.into_iter().map(|(n, c)| (n, Fin(c)))))
        })
        .prop_filter("valid", CycleType::is_valid)
}

/// Exactly one infinite cycle and finitely many finite cycles.
fn single_infinite() -> impl Strategy<Value = CycleType> {
    (any::<bool>(), proptest::collection::vec((1..7u64, 0..3u64), 0..4)).prop_map(|(fwd, ex)| {
        let (open, fwd) = if fwd { (0, 1) } else { (1, 0) };
        CycleType::new(Fin(open), Fin(fwd), CountFunction::new(Fin(0), ex.into_iter().map(|(n, c)| (n, Fin(c)))))
    })
}

fn perm(bound: u64, max_swaps: usize) -> impl Strategy<Value = FinitaryPerm> {
    proptest::collection::vec((0..bound, 0..bound), 0..=max_swaps)
        .prop_map(|swaps| swaps.into_iter().fold(FinitaryPerm::identity(), |p, (a, b)| p.then(&tr(a, b))))
}

fn dressed(ty: impl Strategy<Value = CycleType>) -> impl Strategy<Value = DressedMap> {
    (ty, perm(40, 4), perm(40, 4)).prop_map(|(t, p, q)| DressedMap::new(p, CanonicalMap::new(&t).unwrap(), q))
}

/// Counts finite cycles by following orbits point by point.
///
/// Every finite cycle of `p·c·q` lies in the block of carrier triples whose largest
/// coordinate is at most the largest coordinate seen in the base's finite cycles and the
/// dressing supports, so scanning that block finds all of them.
fn oracle_finite_counts(m: &DressedMap) -> BTreeMap<u64, u64> {
    let carrier = m.base().carrier();
    let ty = m.base_type();
    let level = |x: u64| {
        let (s, c, p) = carrier.decode_raw(x);
        s.max(c).max(p)
    };
    let mut top = 0;
    for (n, c) in ty.counts().exceptions() {
        for copy in 0..c.finite().unwrap() {
            for pos in 0..n as i64 {
                top = top.max(level(carrier.encode(Coord::new(CycleKind::Finite(n), copy, pos))));
            }
        }
    }
    for x in m.p().support().chain(m.q().support()) {
        top = top.max(level(x));
    }
    let block: Vec<u64> = (0..).take_while(|&x| level(x) <= top).collect();
    let mut counts = BTreeMap::new();
    for &x in &block {
        let mut y = m.eval(x);
        let mut len = 1u64;
        let mut least = x;
        while y != x && len <= block.len() as u64 + 1 {
            least = least.min(y);
            y = m.eval(y);
            len += 1;
        }
        if y == x && least == x {
            *counts.entry(len).or_insert(0) += 1;
        }
    }
    counts
}

#[test]
fn canonical_maps_step_along_cycles() {
    let m = canon("ct(open=0,fwd=1,default=0)");
    assert_eq!((0..5).map(|x| m.eval(x)).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
    assert_eq!(m.preimage(0), None);
    assert_eq!(m.preimage(3), Some(2));
    let m = canon("ct(open=0,fwd=0,default=0,1:w)");
    assert!((0..50).all(|x| m.eval(x) == x));
}

#[test]
fn dressed_text_round_trip() {
    let s = "dmap(p=perm((0 3)),t=ct(open=0,fwd=1,default=0,2:1),q=perm((1 5 7)))";
    let m: DressedMap = s.parse().unwrap();
    assert_eq!(m.to_string(), s);
    assert!("dmap(p=perm(),t=ct(open=0,fwd=0,default=0),q=perm())".parse::<DressedMap>().is_err());
    assert!("dmap(p=perm(),t=ct(open=0,fwd=1,default=0))".parse::<DressedMap>().is_err());
}

#[test]
fn exact_type_of_small_dressings() {
    let f = canon("ct(open=0,fwd=1,default=0)");
    // (0 3) after the shift: 2 -> 3 -> 0 -> 1 -> 2 closes a 3-cycle, 3's old successor 4 is a root.
    assert_eq!(f.then_perm(&tr(0, 3)).exact_type(), ct("ct(open=0,fwd=1,default=0,3:1)"));
    // Any dressing of the identity permutation is a finitary permutation.
    let id = canon("ct(open=0,fwd=0,default=0,1:w)");
    let h: FinitaryPerm = "perm((1 2 3)(7 9))".parse().unwrap();
    assert_eq!(id.then_perm(&h).exact_type(), h.cycle_type());
    assert_eq!(id.perm_then(&h).exact_type(), h.cycle_type());
}

#[test]
fn split_examples() {
    let f = canon("ct(open=0,fwd=1,default=0)");
    let h = split_witness(&f, 3).unwrap();
    assert!(h.is_transposition());
    assert_eq!(f.then_perm(&h).exact_type(), ct("ct(open=0,fwd=1,default=0,3:1)"));

    let mut cur = f.clone();
    for _ in 0..4 {
        cur = cur.then_perm(&split_witness(&cur, 1).unwrap());
    }
    assert_eq!(cur.exact_type().count(1), Fin(4));

    let f = canon("ct(open=1,fwd=0,default=0)");
    let h = split_witness(&f, 5).unwrap();
    assert_eq!(f.then_perm(&h).exact_type(), ct("ct(open=1,fwd=0,default=0,5:1)"));

    let f = canon("ct(open=0,fwd=0,default=0,1:w,2:1)");
    assert_eq!(split_witness(&f, 2), Err(ConcreteError::NoInfiniteCycle));
}

#[test]
fn merge_examples() {
    let f = canon("ct(open=0,fwd=1,default=0,3:1)");
    let h = merge_witness(&f, 3).unwrap();
    assert_eq!(f.then_perm(&h).exact_type(), ct("ct(open=0,fwd=1,default=0)"));

    let f = canon("ct(open=1,fwd=0,default=0,2:5)");
    let h = merge_witness(&f, 2).unwrap();
    assert_eq!(f.then_perm(&h).exact_type().count(2), Fin(4));

    assert_eq!(merge_witness(&f, 3), Err(ConcreteError::NoSuchFiniteCycle(3)));
    let g = canon("ct(open=0,fwd=0,default=0,1:w)");
    assert_eq!(merge_witness(&g, 1), Err(ConcreteError::NoInfiniteCycle));
}

#[test]
fn parity_examples() {
    let f = canon("ct(open=0,fwd=1,default=0)");
    // Swapping positions 0 and 3 of the forward cycle cuts off a 3-cycle.
    assert_eq!(parity_effect(&f, &tr(0, 3)), Ok(-1));

    let f = canon("ct(open=0,fwd=1,default=0,3:1)");
    let root = f.base().root(0);
    let beta = f.base().point(Coord::new(CycleKind::Finite(3), 0, 0));
    assert_eq!(parity_effect(&f, &tr(root, beta)), Ok(1));

    let f = canon("ct(open=0,fwd=1,default=0,1:1,2:1)");
    let fixed = f.base().point(Coord::new(CycleKind::Finite(1), 0, 0));
    let beta = f.base().point(Coord::new(CycleKind::Finite(2), 0, 0));
    assert_eq!(parity_effect(&f, &tr(fixed, beta)), Ok(1));

    let two = canon("ct(open=0,fwd=2,default=0)");
    assert!(matches!(parity_effect(&two, &tr(0, 1)), Err(ConcreteError::PreconditionViolated(_))));
    assert!(matches!(
        parity_effect(&f, &"perm((0 1 2))".parse().unwrap()),
        Err(ConcreteError::PreconditionViolated(_))
    ));
}

#[test]
fn parity_effect_is_a_sign_for_every_small_transposition() {
    for t in [
        "ct(open=0,fwd=1,default=0)",
        "ct(open=1,fwd=0,default=0,2:2)",
        "ct(open=0,fwd=1,default=0,1:3,4:1)",
        "ct(open=1,fwd=0,default=0,1:1,3:2)",
    ] {
        let f = canon(t);
        for a in 0..24 {
            for b in a + 1..24 {
                let v = parity_effect(&f, &tr(a, b)).unwrap();
                assert!(v == 1 || v == -1, "{t} ({a} {b}) gave {v}");
            }
        }
    }
}

#[test]
fn even_adjust_cases() {
    // Two infinite cycles.
    let f = canon("ct(open=1,fwd=1,default=0)");
    let h = tr(2, 5);
    let g = even_adjust_witness(&f, &h).unwrap();
    assert_eq!(g.parity(), 0);
    assert_eq!(f.then_perm(&g).exact_type(), f.then_perm(&h).exact_type());
    assert_eq!(g.cycle_type().sym_class(), crate::cycletype::SymClass::EvenFinitary);

    // One infinite cycle and infinitely many 2-cycles.
    let f = canon("ct(open=0,fwd=1,default=0,2:w)");
    let h: FinitaryPerm = "perm((0 1 4 9))".parse().unwrap();
    let g = even_adjust_witness(&f, &h).unwrap();
    assert_eq!(g.parity(), 0);
    assert_eq!(f.then_perm(&g).exact_type(), f.then_perm(&h).exact_type());

    let f = canon("ct(open=0,fwd=1,default=w)");
    let g = even_adjust_witness(&f, &tr(0, 7)).unwrap();
    assert_eq!(f.then_perm(&g).exact_type(), f.then_perm(&tr(0, 7)).exact_type());

    let f = canon("ct(open=0,fwd=1,default=0,2:3)");
    assert!(matches!(even_adjust_witness(&f, &tr(0, 1)), Err(ConcreteError::PreconditionViolated(_))));
    assert!(matches!(even_adjust_witness(&f, &FinitaryPerm::identity()), Err(ConcreteError::PreconditionViolated(_))));
}

fn check_relation(f: &DressedMap, g: &DressedMap, rel: &Relation) {
    let mut cur = g.clone();
    for h in &rel.transpositions {
        assert!(h.is_transposition());
        cur = cur.then_perm(h);
    }
    assert_eq!(cur, rel.adjusted);
    assert_eq!(cur.exact_type(), f.exact_type());
    for x in 0..500 {
        assert_eq!(rel.witness.apply(f.eval(x)), cur.eval(rel.witness.apply(x)));
        assert_eq!(rel.witness.apply_inv(rel.witness.apply(x)), x);
    }
}

#[test]
fn relate_examples() {
    let f = canon("ct(open=0,fwd=1,default=0)");
    let rel = relate_witness(&f, &f, false).unwrap().unwrap();
    assert!(rel.transpositions.is_empty());
    assert!((0..200).all(|x| rel.witness.apply(x) == x));

    let f = canon("ct(open=0,fwd=1,default=0,3:2)");
    let g = canon("ct(open=0,fwd=1,default=0,3:1,5:1)");
    let rel = relate_witness(&f, &g, false).unwrap().unwrap();
    assert_eq!(rel.transpositions.len(), 2);
    check_relation(&f, &g, &rel);
    assert!(relate_witness(&f, &g, true).unwrap().is_some());

    let g = canon("ct(open=0,fwd=1,default=0,3:1)");
    assert!(relate_witness(&f, &g, false).unwrap().is_some());
    assert!(relate_witness(&f, &g, true).unwrap().is_none());

    let h = canon("ct(open=0,fwd=2,default=0)");
    assert!(relate_witness(&f, &h, false).unwrap().is_none());
    let p = canon("ct(open=0,fwd=0,default=1)");
    assert!(matches!(relate_witness(&f, &p, false), Err(ConcreteError::PreconditionViolated(_))));
}

#[test]
fn completion_matches_coimages() {
    let f: DressedMap = "dmap(p=perm((0 4)),t=ct(open=0,fwd=2,default=0,3:1),q=perm((1 2)))".parse().unwrap();
    let g: DressedMap = "dmap(p=perm(),t=ct(open=1,fwd=2,default=0),q=perm((0 6 9)))".parse().unwrap();
    let h = complete_to_permutation(&f, &g).unwrap();
    for x in 0..2000 {
        assert_eq!(h.apply(f.eval(x)), g.eval(x));
        assert_eq!(h.apply_inv(h.apply(x)), x);
        assert_eq!(h.apply(h.apply_inv(x)), x);
    }
    let Coimage::Finite(cf) = f.coimage_points() else { panic!() };
    let Coimage::Finite(cg) = g.coimage_points() else { panic!() };
    let image: BTreeSet<u64> = cf.iter().map(|&y| h.apply(y)).collect();
    assert_eq!(image, cg.into_iter().collect());

    let k = canon("ct(open=0,fwd=1,default=0)");
    assert_eq!(complete_to_permutation(&f, &k).unwrap_err(), ConcreteError::CoimageMismatch(Fin(2), Fin(1)));
}

#[test]
fn completion_with_infinite_coimages() {
    let f: DressedMap = "dmap(p=perm((3 8)),t=ct(open=0,fwd=w,default=0),q=perm())".parse().unwrap();
    let g: DressedMap = "dmap(p=perm(),t=ct(open=1,fwd=w,default=1),q=perm((2 5)))".parse().unwrap();
    let h = complete_to_permutation(&f, &g).unwrap();
    for x in 0..2000 {
        assert_eq!(h.apply(f.eval(x)), g.eval(x));
        assert_eq!(h.apply_inv(h.apply(x)), x);
    }
    let Coimage::Infinite(roots) = f.coimage_points() else { panic!() };
    for y in roots.take(50) {
        assert_eq!(g.preimage(h.apply(y)), None);
    }
}

#[test]
fn inverse_of_a_dressed_permutation() {
    let f: DressedMap = "dmap(p=perm((0 5 2)),t=ct(open=2,fwd=0,default=0,3:2),q=perm((1 7)))".parse().unwrap();
    let inv = f.inverse().unwrap();
    for x in 0..1000 {
        assert_eq!(inv.eval(f.eval(x)), x);
        assert_eq!(f.eval(inv.eval(x)), x);
    }
    assert_eq!(inv.exact_type(), f.exact_type());
    assert!(canon("ct(open=0,fwd=1,default=0)").inverse().is_none());
}

#[test]
fn composite_coimage_with_infinite_factor() {
    let f = canon("ct(open=0,fwd=2,default=0)");
    let g: DressedMap = "dmap(p=perm((0 1)),t=ct(open=0,fwd=w,default=0,2:1),q=perm())".parse().unwrap();
    let fg = compose(&f, &g);
    assert_eq!(fg.coimage(), Omega);
    let Coimage::Infinite(points) = fg.coimage_points() else { panic!() };
    let points: Vec<u64> = points.take(30).collect();
    assert_eq!(points.iter().collect::<BTreeSet<_>>().len(), 30);
    for y in points {
        assert_eq!(fg.preimage(y), None);
    }
}

#[test]
fn factorization_examples() {
    let w = DEFAULT_WINDOW;
    let r = factor_into_conjugates(&ct("ct(open=0,fwd=1,default=0)"), &ct("ct(open=0,fwd=1,default=0)"), &ct("ct(open=0,fwd=2,default=0)"), w)
        .unwrap();
    assert!(r.decision);
    let Witnesses::Found(found) = r.witnesses else { panic!("{:?}", r.witnesses) };
    assert_eq!(found.first_mismatch(w), None);

    let r = factor_into_conjugates(&ct("ct(open=0,fwd=1,default=0)"), &ct("ct(open=0,fwd=1,default=0)"), &ct("ct(open=0,fwd=3,default=0)"), w)
        .unwrap();
    assert!(!r.decision);
    assert!(matches!(r.witnesses, Witnesses::NotApplicable));

    let r = factor_into_conjugates(&ct("ct(open=0,fwd=w,default=0)"), &ct("ct(open=0,fwd=1,default=0)"), &ct("ct(open=0,fwd=w,default=0)"), w)
        .unwrap();
    assert!(r.decision);
    assert!(matches!(r.witnesses, Witnesses::Unsupported(_)));

    let e = factor_into_conjugates(&ct("ct(open=0,fwd=0,default=1)"), &ct("ct(open=0,fwd=1,default=0)"), &ct("ct(open=0,fwd=1,default=0)"), w);
    assert!(matches!(e, Err(ConcreteError::PreconditionViolated(_))));
}

#[test]
fn factorization_with_finite_cycles_everywhere() {
    for (f, g, h) in [
        ("ct(open=0,fwd=1,default=0,2:1)", "ct(open=0,fwd=1,default=0,3:2)", "ct(open=0,fwd=2,default=0,1:1,4:1)"),
        ("ct(open=0,fwd=1,default=0,1:2,2:1)", "ct(open=0,fwd=1,default=0)", "ct(open=0,fwd=2,default=0,2:3)"),
        ("ct(open=0,fwd=2,default=0,6:1)", "ct(open=0,fwd=2,default=0,1:1)", "ct(open=0,fwd=4,default=0,2:1,4:1)"),
        ("ct(open=0,fwd=3,default=0,3:1)", "ct(open=0,fwd=1,default=0,4:2)", "ct(open=0,fwd=4,default=0,1:3)"),
    ] {
        let r = factor_into_conjugates(&ct(f), &ct(g), &ct(h), DEFAULT_WINDOW).unwrap();
        let Witnesses::Found(found) = r.witnesses else { panic!("{f} {g} {h}: {:?}", r.witnesses) };
        assert_eq!(found.first_mismatch(DEFAULT_WINDOW), None);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_exact_type_is_the_base_type(t in any_type()) {
        prop_assert_eq!(DressedMap::canonical(&t).unwrap().exact_type(), t);
    }

    #[test]
    fn coordinates_follow_the_map(m in dressed(any_type())) {
        let a = m.analysis();
        for x in 0..300 {
            let at = a.coord(x);
            prop_assert_eq!(a.point(at), x);
            prop_assert_eq!(a.coord(m.eval(x)), at.step());
        }
    }

    #[test]
    fn eval_is_injective(m in dressed(any_type())) {
        let mut seen = BTreeSet::new();
        for x in 0..2000 {
            let y = m.eval(x);
            prop_assert!(seen.insert(y));
            prop_assert_eq!(m.preimage(y), Some(x));
        }
    }

    #[test]
    fn exact_type_agrees_with_orbit_tracing(m in dressed(small_type(2))) {
        let t = m.exact_type();
        let traced = oracle_finite_counts(&m);
        let computed: BTreeMap<u64, u64> = t.counts().exceptions().map(|(n, c)| (n, c.finite().unwrap())).collect();
        prop_assert_eq!(computed, traced);
        prop_assert_eq!(t.fwd(), m.base_type().fwd());
        prop_assert_eq!(t.open(), m.base_type().open());
    }

    #[test]
    fn conjugation_preserves_type(m in dressed(any_type()), a in perm(60, 5)) {
        let c = m.conjugate(&a);
        prop_assert_eq!(c.exact_type(), m.exact_type());
        let inv = a.inverse();
        for x in 0..200 {
            prop_assert_eq!(c.eval(x), inv.apply(m.eval(a.apply(x))));
        }
    }

    #[test]
    fn finitary_dressing_stays_finitely_related(m in dressed(any_type()), h in perm(60, 4)) {
        let base = m.base_type().clone();
        prop_assert!(m.exact_type().approx_fin(&base));
        prop_assert_eq!(m.then_perm(&h).exact_type().open(), base.open());
        prop_assert_eq!(m.perm_then(&h).exact_type().open(), base.open());
    }

    #[test]
    fn inverse_has_the_same_type(t in any_type(), p in perm(40, 4), q in perm(40, 4)) {
        let t = CycleType::new(t.open(), Fin(0), t.counts().clone());
        prop_assume!(t.is_valid());
        let m = DressedMap::new(p, CanonicalMap::new(&t).unwrap(), q);
        let inv = m.inverse().unwrap();
        prop_assert_eq!(inv.exact_type(), m.exact_type());
        for x in 0..300 {
            prop_assert_eq!(inv.eval(m.eval(x)), x);
        }
    }

    #[test]
    fn composite_coimage_is_additive(f in dressed(small_type(4)), g in dressed(small_type(4))) {
        let fg = compose(&f, &g);
        let missing: BTreeSet<u64> = (0..DEFAULT_WINDOW).filter(|&y| fg.preimage(y).is_none()).collect();
        prop_assert_eq!(Fin(missing.len() as u64), fg.coimage());
        let Coimage::Finite(points) = fg.coimage_points() else { panic!("finite coimage expected") };
        prop_assert_eq!(points.into_iter().collect::<BTreeSet<_>>(), missing);
    }

    #[test]
    fn split_and_merge_match_the_type_level(m in dressed(any_type()), n in 1..13u64) {
        prop_assume!(m.exact_type().has_infinite_cycle());
        let t = m.exact_type();
        let h = split_witness(&m, n).unwrap();
        let split = m.then_perm(&h);
        prop_assert_eq!(split.exact_type(), t.split_cycle(n).unwrap());
        let back = merge_witness(&split, n).unwrap();
        prop_assert_eq!(split.then_perm(&back).exact_type(), t);
    }

    #[test]
    fn parity_effect_is_a_sign(m in dressed(single_infinite()), a in 0..64u64, b in 0..64u64) {
        prop_assume!(a != b);
        let v = parity_effect(&m, &tr(a, b)).unwrap();
        prop_assert!(v == 1 || v == -1);
    }

    #[test]
    fn even_dressing_keeps_the_even_class(m in dressed(single_infinite()), swaps in proptest::collection::vec((0..50u64, 0..20u64), 0..4)) {
        let h = swaps.iter().fold(FinitaryPerm::identity(), |h, &(a, d)| h.then(&tr(a, a + 1 + d)).then(&tr(a, a + 2 + d)));
        prop_assert_eq!(h.parity(), 0);
        let t = m.exact_type();
        prop_assert!(m.then_perm(&h).exact_type().approx_even(&t));
        prop_assert!(m.perm_then(&h).exact_type().approx_even(&t));
    }

    #[test]
    fn related_maps_get_a_working_relation(f in dressed(any_type()), g in dressed(any_type()), even in any::<bool>()) {
        let (tf, tg) = (f.exact_type(), g.exact_type());
        prop_assume!(tf.has_infinite_cycle() && tg.has_infinite_cycle());
        let rel = relate_witness(&f, &g, even).unwrap();
        let expected = if even { tf.approx_even(&tg) } else { tf.approx_fin(&tg) };
        prop_assert_eq!(rel.is_some(), expected);
        if let Some(rel) = rel {
            if even {
                prop_assert_eq!(rel.transpositions.len() % 2, 0);
            }
            check_relation(&f, &g, &rel);
        }
    }

    #[test]
    fn conjugacy_witness_intertwines(m in dressed(any_type()), a in perm(60, 5)) {
        let c = m.conjugate(&a);
        let w = conjugacy_witness(&m, &c).unwrap();
        for x in 0..300 {
            prop_assert_eq!(w.apply(m.eval(x)), c.eval(w.apply(x)));
            prop_assert_eq!(w.apply_inv(w.apply(x)), x);
        }
    }

    #[test]
    fn completion_is_pointwise(f in dressed(small_type(3)), g in dressed(small_type(3))) {
        prop_assume!(f.coimage() == g.coimage());
        let h = complete_to_permutation(&f, &g).unwrap();
        for x in 0..500 {
            prop_assert_eq!(h.apply(f.eval(x)), g.eval(x));
            prop_assert_eq!(h.apply_inv(h.apply(x)), x);
        }
    }
}

fn restricted(max_fwd: u64) -> impl Strategy<Value = CycleType> {
    (1..=max_fwd, proptest::collection::vec((1..7u64, 0..3u64), 0..3)).prop_map(|(fwd, ex)| {
        CycleType::new(Fin(0), Fin(fwd), CountFunction::new(Fin(0), ex.into_iter().map(|(n, c)| (n, Fin(c)))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_witnesses_verify(tf in restricted(3), tg in restricted(3), extra in restricted(1)) {
        let th = CycleType::new(Fin(0), tf.fwd() + tg.fwd(), extra.counts().clone());
        let r = factor_into_conjugates(&tf, &tg, &th, DEFAULT_WINDOW).unwrap();
        prop_assert!(r.decision);
        let Witnesses::Found(found) = r.witnesses else { panic!("{tf} {tg} {th}: {:?}", r.witnesses) };
        prop_assert_eq!(found.first_mismatch(DEFAULT_WINDOW), None);
    }
}
