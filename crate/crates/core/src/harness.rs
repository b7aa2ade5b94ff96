//! Deterministic randomized property suites over concrete maps and descriptors.
//!
//! Randomness: trial `i` of a run with seed `s` draws from ChaCha8 (the `rand_chacha`
//! 0.3 implementation) created by `ChaCha8Rng::seed_from_u64(s)` and switched to stream
//! `i` with `set_stream(i)`. Trials are independent, so they run in parallel and the
//! report is the same for any thread count. The first counterexample is the failing check
//! of the lowest-numbered trial.
//!
//! The JSON report has the fields `suite`, `seed`, `trials`, `window`, `passed` and
//! `failed` (trial counts), `first_counterexample` (`null` or an object with `trial`,
//! `property` and `inputs`), and `properties` (per-property `passed`/`failed` counts).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::concrete::{
    complete_to_permutation, compose, conjugacy_witness, even_adjust_witness, factor_into_conjugates, parity_effect,
    relate_witness, Bijection, Coimage, DressedMap, FinitaryPerm, Witnesses,
};
use crate::cycletype::{ClassKind, CycleType, ExtNat, Fin, Omega};
use crate::submonoid::{SubmonoidDescriptor, UnitsLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Conjugacy,
    Coimage,
    Finrel,
    Evenrel,
    Parity,
    Witnesses,
    Submonoid,
    Counterexample,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Conjugacy,
        Suite::Coimage,
        Suite::Finrel,
        Suite::Evenrel,
        Suite::Parity,
        Suite::Witnesses,
        Suite::Submonoid,
        Suite::Counterexample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Conjugacy => "conjugacy",
            Suite::Coimage => "coimage",
            Suite::Finrel => "finrel",
            Suite::Evenrel => "evenrel",
            Suite::Parity => "parity",
            Suite::Witnesses => "witnesses",
            Suite::Submonoid => "submonoid",
            Suite::Counterexample => "counterexample",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite `{0}` (expected one of conjugacy, coimage, finrel, evenrel, parity, witnesses, submonoid, counterexample)")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: u64,
    pub window: u64,
    pub suite: Suite,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCount {
    pub passed: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: u64,
    pub property: String,
    pub inputs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub trials: u64,
    pub window: u64,
    pub passed: u64,
    pub failed: u64,
    pub first_counterexample: Option<Counterexample>,
    pub properties: BTreeMap<String, PropertyCount>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} passed, {} failed (seed {}, window {})",
            self.suite, self.passed, self.failed, self.seed, self.window
        )?;
        for (name, count) in &self.properties {
            writeln!(f, "  {name}: {} passed, {} failed", count.passed, count.failed)?;
        }
        if let Some(c) = &self.first_counterexample {
            writeln!(f, "first counterexample: trial {} property {}: {}", c.trial, c.property, c.inputs)?;
        }
        Ok(())
    }
}

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let outcomes: Vec<Trial> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, i);
            let mut t = Trial::default();
            run_trial(cfg.suite, &mut rng, cfg.window.max(4), &mut t);
            t
        })
        .collect();
    let mut report = Report {
        suite: cfg.suite,
        seed: cfg.seed,
        trials: cfg.trials,
        window: cfg.window,
        passed: 0,
        failed: 0,
        first_counterexample: None,
        properties: BTreeMap::new(),
    };
    for (i, t) in outcomes.into_iter().enumerate() {
        let mut trial_ok = true;
        for (property, failure) in t.checks {
            let count = report.properties.entry(property.to_string()).or_default();
            match failure {
                None => count.passed += 1,
                Some(inputs) => {
                    count.failed += 1;
                    trial_ok = false;
                    if report.first_counterexample.is_none() {
                        report.first_counterexample =
                            Some(Counterexample { trial: i as u64, property: property.to_string(), inputs });
                    }
                }
            }
        }
        if trial_ok {
            report.passed += 1;
        } else {
            report.failed += 1;
        }
    }
    report
}

#[derive(Default)]
struct Trial {
    checks: Vec<(&'static str, Option<String>)>,
}

impl Trial {
    fn check(&mut self, property: &'static str, ok: bool, inputs: impl FnOnce() -> String) {
        self.checks.push((property, (!ok).then(inputs)));
    }
}

fn run_trial(suite: Suite, rng: &mut ChaCha8Rng, window: u64, t: &mut Trial) {
    match suite {
        Suite::Conjugacy => conjugacy(rng, window, t),
        Suite::Coimage => coimage(rng, window, t),
        Suite::Finrel => finrel(rng, window, t),
        Suite::Evenrel => evenrel(rng, window, t),
        Suite::Parity => parity(rng, window, t),
        Suite::Witnesses => witnesses(rng, window, t),
        Suite::Submonoid => submonoid(rng, t),
        Suite::Counterexample => counterexample(rng, window, t),
    }
}

/// Random inputs shared by the suites and the tests.
pub mod gen {
    use super::*;
    use crate::cycletype::CountFunction;

    /// Largest dressing support point for a window: a quarter of it, at most 64.
    pub fn support_bound(window: u64) -> u64 {
        (window / 4).clamp(2, 64)
    }

    fn count(rng: &mut impl Rng, omega: bool) -> ExtNat {
        if omega && rng.gen_ratio(1, 5) {
            Omega
        } else {
            Fin(rng.gen_range(0..4))
        }
    }

    fn counts(rng: &mut impl Rng, default: ExtNat, omega: bool) -> CountFunction {
        let k = rng.gen_range(0..4);
        CountFunction::new(default, (0..k).map(|_| (rng.gen_range(1..=8), count(rng, omega))).collect::<Vec<_>>())
    }

    /// A random valid type of the given kind.
    pub fn cycle_type_of(rng: &mut impl Rng, kind: ClassKind) -> CycleType {
        loop {
            let t = match kind {
                ClassKind::Permutation => {
                    let open = [Fin(0), Fin(0), Fin(1), Fin(2), Omega][rng.gen_range(0..5)];
                    let default = [Fin(0), Fin(1), Omega][rng.gen_range(0..3)];
                    CycleType::new(open, Fin(0), counts(rng, default, true))
                }
                ClassKind::TwoPlusInfinite => {
                    let fwd = if rng.gen_ratio(1, 8) { Omega } else { Fin(rng.gen_range(1..4)) };
                    let open = if fwd == Fin(1) {
                        [Fin(1), Fin(2), Omega][rng.gen_range(0..3)]
                    } else {
                        Fin(rng.gen_range(0..3))
                    };
                    let default = [Fin(0), Fin(0), Fin(1), Omega][rng.gen_range(0..4)];
                    CycleType::new(open, fwd, counts(rng, default, true))
                }
                ClassKind::InfiniteMultiplicity => {
                    let default = [Fin(0), Fin(1), Omega][rng.gen_range(0..3)];
                    let mut c = counts(rng, default, true);
                    if c.all_finite() {
                        c = CountFunction::new(c.default_value(), c.exceptions().chain([(rng.gen_range(1..=8), Omega)]).collect::<Vec<_>>());
                    }
                    CycleType::new(Fin(0), Fin(1), c)
                }
                ClassKind::SingleInfiniteFiniteCounts => {
                    let default = [Fin(0), Fin(0), Fin(1)][rng.gen_range(0..3)];
                    CycleType::new(Fin(0), Fin(1), counts(rng, default, false))
                }
            };
            if t.is_valid() && t.class_kind() == kind {
                return t;
            }
        }
    }

    /// A random valid type; each of the four kinds is drawn with probability 1/4.
    pub fn cycle_type(rng: &mut impl Rng) -> CycleType {
        let kinds = [
            ClassKind::Permutation,
            ClassKind::TwoPlusInfinite,
            ClassKind::InfiniteMultiplicity,
            ClassKind::SingleInfiniteFiniteCounts,
        ];
        let kind = kinds[rng.gen_range(0..4)];
        cycle_type_of(rng, kind)
    }

    /// A random type with at least one infinite cycle.
    pub fn infinite_type(rng: &mut impl Rng) -> CycleType {
        loop {
            let t = cycle_type(rng);
            if t.has_infinite_cycle() {
                return t;
            }
        }
    }

    /// No open cycles, finitely many finite cycles and `1..=max_fwd` forward cycles.
    pub fn finite_type(rng: &mut impl Rng, max_fwd: u64) -> CycleType {
        CycleType::new(Fin(0), Fin(rng.gen_range(1..=max_fwd)), counts(rng, Fin(0), false))
    }

    /// Changes a few finite counts, giving a finitely related type.
    pub fn fin_perturb(rng: &mut impl Rng, t: &CycleType) -> CycleType {
        let mut counts: Vec<(u64, ExtNat)> = t.counts().exceptions().collect();
        for _ in 0..rng.gen_range(0..3) {
            let n = rng.gen_range(1..=8);
            if t.count(n).is_finite() {
                counts.push((n, Fin(rng.gen_range(0..4))));
            }
        }
        let out = CycleType::new(t.open(), t.fwd(), CountFunction::new(t.counts().default_value(), counts));
        if out.is_valid() {
            out
        } else {
            t.clone()
        }
    }

    pub fn perm(rng: &mut impl Rng, bound: u64, max_swaps: usize) -> FinitaryPerm {
        let swaps = rng.gen_range(0..=max_swaps);
        (0..swaps).fold(FinitaryPerm::identity(), |p, _| {
            p.then(&FinitaryPerm::transposition(rng.gen_range(0..bound), rng.gen_range(0..bound)))
        })
    }

    /// A product of `k` transpositions of distinct points, so its parity is that of `k`.
    pub fn perm_of_parity(rng: &mut impl Rng, bound: u64, k: usize) -> FinitaryPerm {
        (0..k).fold(FinitaryPerm::identity(), |p, _| {
            let a = rng.gen_range(0..bound);
            let b = (a + rng.gen_range(1..bound)) % bound;
            p.then(&FinitaryPerm::transposition(a, b))
        })
    }

    pub fn dressed(rng: &mut impl Rng, t: &CycleType, bound: u64) -> DressedMap {
        let base = crate::concrete::CanonicalMap::new(t).expect("generated types are valid");
        DressedMap::new(perm(rng, bound, 4), base, perm(rng, bound, 4))
    }

    /// Sample points of the window: a prefix and some random points.
    pub fn points(rng: &mut impl Rng, window: u64, n: usize) -> Vec<u64> {
        (0..window.min(n as u64)).chain((0..n).map(|_| rng.gen_range(0..window))).collect()
    }
}

fn conjugacy(rng: &mut ChaCha8Rng, window: u64, t: &mut Trial) {
    let bound = gen::support_bound(window);
    let ty = gen::cycle_type(rng);
    let m = gen::dressed(rng, &ty, bound);
    let a = gen::perm(rng, bound, 5);
    let c = m.conjugate(&a);
    let inputs = || format!("m={m} a={a}");
    let tm = m.exact_type();
    t.check("type-preserved", c.exact_type() == tm, inputs);
    let inv = a.inverse();
    let pts = gen::points(rng, window, 64);
    t.check("conjugate-evaluates", pts.iter().all(|&x| c.eval(x) == inv.apply(m.eval(a.apply(x)))), inputs);
    let intertwines = conjugacy_witness(&m, &c).is_some_and(|w| {
        pts.iter().all(|&x| w.apply(m.eval(x)) == c.eval(w.apply(x)) && w.apply_inv(w.apply(x)) == x)
    });
    t.check("witness-intertwines", intertwines, inputs);
    let other = gen::cycle_type(rng);
    let o = gen::dressed(rng, &other, bound);
    t.check("witness-iff-same-type", conjugacy_witness(&m, &o).is_some() == (o.exact_type() == tm), || {
        format!("m={m} o={o}")
    });
}

fn coimage(rng: &mut ChaCha8Rng, window: u64, t: &mut Trial) {
    let bound = gen::support_bound(window);
    let base = gen::cycle_type(rng);
    let k = rng.gen_range(0..=8);
    let ty = CycleType::new(base.open(), Fin(k), base.counts().clone());
    if ty.is_valid() {
        let m = DressedMap::canonical(&ty).expect("valid");
        let ok = match m.coimage_points() {
            Coimage::Finite(v) => v.len() as u64 == k && v.iter().all(|&y| m.preimage(y).is_none()),
            Coimage::Infinite(_) => false,
        };
        t.check("roots-count-forward-cycles", ok, || ty.to_string());
    }

    let small = |rng: &mut ChaCha8Rng| {
        let b = gen::cycle_type(rng);
        let ty = CycleType::new(b.open(), Fin(rng.gen_range(0..=4)), b.counts().clone());
        if ty.is_valid() {
            ty
        } else {
            CycleType::shift(1)
        }
    };
    let (tf, tg) = (small(rng), small(rng));
    let f = gen::dressed(rng, &tf, bound);
    let g = gen::dressed(rng, &tg, bound);
    let fg = compose(&f, &g);
    let missing: Vec<u64> = (0..window).filter(|&y| fg.preimage(y).is_none()).collect();
    let additive = match fg.coimage_points() {
        Coimage::Finite(mut v) => {
            v.sort_unstable();
            ExtNat::Fin(missing.len() as u64) == fg.coimage() && v == missing
        }
        Coimage::Infinite(_) => false,
    };
    t.check("coimage-additive", additive, || format!("f={f} g={g}"));

    let h = gen::dressed(rng, &CycleType::new(Fin(0), Omega, base.counts().clone()), bound);
    let fh = compose(&f, &h);
    let infinite = fh.coimage() == Omega
        && match fh.coimage_points() {
            Coimage::Infinite(it) => it.take(16).all(|y| fh.preimage(y).is_none()),
            Coimage::Finite(_) => false,
        };
    t.check("infinite-coimage", infinite, || format!("f={f} h={h}"));
}

fn check_relation(f: &DressedMap, g: &DressedMap, rel: &crate::concrete::Relation, pts: &[u64]) -> bool {
    let mut cur = g.clone();
    for h in &rel.transpositions {
        cur = cur.then_perm(h);
    }
    cur.exact_type() == f.exact_type()
        && pts.iter().all(|&x| rel.witness.apply(f.eval(x)) == cur.eval(rel.witness.apply(x)))
}

fn finrel(rng: &mut ChaCha8Rng, window: u64, t: &mut Trial) {
    let bound = gen::support_bound(window);
    let ty = gen::cycle_type(rng);
    let f = gen::dressed(rng, &ty, bound);
    let h = gen::perm(rng, bound, 4);
    let tf = f.exact_type();
    let inputs = || format!("f={f} h={h}");
    t.check(
        "open-count-invariant",
        f.then_perm(&h).exact_type().open() == tf.open() && f.perm_then(&h).exact_type().open() == tf.open(),
        inputs,
    );
    t.check("dressing-finitely-related", tf.approx_fin(&ty), inputs);

    let ty = gen::infinite_type(rng);
    let f = gen::dressed(rng, &ty, bound);
    let tf = f.exact_type();
    let other = if rng.gen_bool(0.5) { gen::fin_perturb(rng, &tf) } else { gen::infinite_type(rng) };
    let g = gen::dressed(rng, &other, bound);
    let pts = gen::points(rng, window, 32);
    let ok = match relate_witness(&f, &g, false) {
        Ok(Some(rel)) => tf.approx_fin(&g.exact_type()) && check_relation(&f, &g, &rel, &pts),
        Ok(None) => !tf.approx_fin(&g.exact_type()),
        Err(_) => false,
    };
    t.check("relation-iff-finitely-related", ok, || format!("f={f} g={g}"));
}

fn evenrel(rng: &mut ChaCha8Rng, window: u64, t: &mut Trial) {
    let bound = gen::support_bound(window);
    let a = gen::cycle_type_of(rng, ClassKind::SingleInfiniteFiniteCounts);
    let b = gen::fin_perturb(rng, &a);
    let c = gen::fin_perturb(rng, &b);
    let (ab, bc, ac) = (a.approx_even(&b), b.approx_even(&c), a.approx_even(&c));
    let equivalence = a.approx_even(&a) && ab == b.approx_even(&a) && (!(ab && bc) || ac);
    t.check("even-is-an-equivalence", equivalence, || format!("a={a} b={b} c={c}"));

    let f = gen::dressed(rng, &a, bound);
    let k = 2 * rng.gen_range(0..3);
    let h = gen::perm_of_parity(rng, bound, k);
    let tf = f.exact_type();
    t.check(
        "even-dressing-stable",
        f.then_perm(&h).exact_type().approx_even(&tf) && f.perm_then(&h).exact_type().approx_even(&tf),
        || format!("f={f} h={h}"),
    );

    let near = gen::fin_perturb(rng, &tf);
    let g = gen::dressed(rng, &near, bound);
    let pts = gen::points(rng, window, 32);
    let ok = match relate_witness(&f, &g, true) {
        Ok(Some(rel)) => {
            tf.approx_even(&g.exact_type()) && rel.transpositions.len() % 2 == 0 && check_relation(&f, &g, &rel, &pts)
        }
        Ok(None) => !tf.approx_even(&g.exact_type()),
        Err(_) => false,
    };
    t.check("even-relation-iff-even", ok, || format!("f={f} g={g}"));
}

fn parity(rng: &mut ChaCha8Rng, window: u64, t: &mut Trial) {
    let bound = gen::support_bound(window);
    let ty = CycleType::new(Fin(0), Fin(1), gen::finite_type(rng, 1).counts().clone());
    let f = gen::dressed(rng, &ty, bound);
    for _ in 0..16 {
        let h = gen::perm_of_parity(rng, bound, 1);
        let ok = matches!(parity_effect(&f, &h), Ok(1) | Ok(-1));
        t.check("transposition-changes-count-by-one", ok, || format!("f={f} h={h}"));
    }

    let kind = if rng.gen_bool(0.5) { ClassKind::TwoPlusInfinite } else { ClassKind::InfiniteMultiplicity };
    let ty = gen::cycle_type_of(rng, kind);
    let f = gen::dressed(rng, &ty, bound);
    let k = 2 * rng.gen_range(0..3) + 1;
    let h = gen::perm_of_parity(rng, bound, k);
    let ok = match even_adjust_witness(&f, &h) {
        Ok(g) => g.parity() == 0 && f.then_perm(&g).exact_type() == f.then_perm(&h).exact_type(),
        Err(_) => false,
    };
    t.check("odd-dressing-has-even-twin", ok, || format!("f={f} h={h}"));
}

fn witnesses(rng: &mut ChaCha8Rng, window: u64, t: &mut Trial) {
    let bound = gen::support_bound(window);
    let a = gen::cycle_type(rng);
    let b = gen::cycle_type(rng);
    let b = CycleType::new(b.open(), a.fwd(), b.counts().clone());
    if b.is_valid() {
        let f = gen::dressed(rng, &a, bound);
        let g = gen::dressed(rng, &b, bound);
        let pts = gen::points(rng, window, 128);
        let ok = complete_to_permutation(&f, &g).is_ok_and(|h| {
            pts.iter().all(|&x| h.apply(f.eval(x)) == g.eval(x) && h.apply_inv(h.apply(x)) == x)
        });
        t.check("completion-extends-pointwise", ok, || format!("f={f} g={g}"));
    }

    let tf = gen::finite_type(rng, 2);
    let tg = gen::finite_type(rng, 2);
    let extra = gen::finite_type(rng, 1);
    let th = CycleType::new(Fin(0), tf.fwd() + tg.fwd(), extra.counts().clone());
    let ok = match factor_into_conjugates(&tf, &tg, &th, window) {
        Ok(r) => r.decision && matches!(&r.witnesses, Witnesses::Found(w) if w.first_mismatch(window).is_none()),
        Err(_) => false,
    };
    t.check("factorization-verifies", ok, || format!("f={tf} g={tg} h={th}"));

    let off = CycleType::new(Fin(0), th.fwd() + Fin(rng.gen_range(1..3)), th.counts().clone());
    let ok = factor_into_conjugates(&tf, &tg, &off, window)
        .is_ok_and(|r| !r.decision && matches!(r.witnesses, Witnesses::NotApplicable));
    t.check("factorization-needs-matching-coimages", ok, || format!("f={tf} g={tg} h={off}"));
}

fn submonoid(rng: &mut ChaCha8Rng, t: &mut Trial) {
    let units: Vec<CycleType> =
        (0..rng.gen_range(0..3)).map(|_| gen::cycle_type_of(rng, ClassKind::Permutation)).collect();
    let fins: Vec<CycleType> = (0..rng.gen_range(0..4))
        .map(|_| loop {
            let t = gen::cycle_type(rng);
            let t = CycleType::new(t.open(), Fin(rng.gen_range(1..6)), t.counts().clone());
            if t.is_valid() {
                break t;
            }
        })
        .collect();
    let inf = rng.gen_bool(0.5);
    let inputs = || {
        let list = |v: &[CycleType]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        format!("units=[{}] fin=[{}] inf={inf}", list(&units), list(&fins))
    };
    let Ok(d) = SubmonoidDescriptor::generate(&units, &fins, inf) else {
        t.check("generate-accepts-generators", false, inputs);
        return;
    };
    t.check("generated-descriptor-valid", d.validate().is_ok(), inputs);
    t.check("generators-are-members", units.iter().chain(&fins).all(|g| d.member_unchecked(g)), inputs);
    t.check("descriptor-text-round-trip", d.to_string().parse::<SubmonoidDescriptor>().as_ref() == Ok(&d), inputs);
    let minimal = (0..d.b_classes.len()).all(|i| {
        let mut smaller = d.clone();
        smaller.b_classes.remove(i);
        fins.iter().any(|g| !smaller.member_unchecked(g))
    }) && (d.units == UnitsLabel::Trivial || {
        let mut smaller = d.clone();
        smaller.units = UnitsLabel::ALL[d.units as usize - 1];
        units.iter().any(|g| !smaller.member_unchecked(g))
    });
    t.check("generated-descriptor-minimal", minimal, inputs);

    // Coimages that are sums of two nonzero elements take in every type.
    let sample = gen::cycle_type(rng);
    let k = rng.gen_range(1..12);
    let probe = CycleType::new(sample.open(), Fin(k), sample.counts().clone());
    if probe.is_valid() && d.monoid.in_nongenerator_part(k) {
        t.check("nongenerator-fibres-full", d.member_unchecked(&probe), || format!("{d} {probe}"));
    }
    let sym = SubmonoidDescriptor { units: UnitsLabel::Sym, b_classes: Vec::new(), ..d.clone() };
    if probe.is_valid() {
        t.check("sym-units-full-fibres", sym.member_unchecked(&probe) == d.monoid.contains(k), || {
            format!("{sym} {probe}")
        });
    }
}

fn counterexample(rng: &mut ChaCha8Rng, window: u64, t: &mut Trial) {
    let f: CycleType = "ct(open=0,fwd=0,default=1)".parse().expect("fixture");
    let g: CycleType = "ct(open=0,fwd=0,default=1,1:2)".parse().expect("fixture");
    t.check("fixture-finitely-related", f.approx_fin(&g), || format!("{f} {g}"));
    t.check("fixture-not-evenly-related", !f.approx_even(&g) && f.parity_sum(&g).parity == Some(1), || {
        format!("{f} {g}")
    });
    let m = gen::dressed(rng, &f, gen::support_bound(window));
    t.check("fixture-dressing-finitely-related", m.exact_type().approx_fin(&f), || m.to_string());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: Suite, trials: u64) -> SuiteConfig {
        SuiteConfig { seed: 1, trials, window: 2000, suite }
    }

    #[test]
    fn every_suite_passes_a_short_run() {
        for suite in Suite::ALL {
            let r = run_suite(&cfg(suite, 12));
            assert!(r.ok(), "{r}");
            assert_eq!(r.passed, 12);
        }
    }

    #[test]
    fn runs_are_reproducible() {
        let a = run_suite(&cfg(Suite::Finrel, 20));
        let b = run_suite(&cfg(Suite::Finrel, 20));
        assert_eq!(a, b);
        let mut r1 = trial_rng(9, 3);
        let mut r2 = trial_rng(9, 3);
        assert_eq!(r1.gen::<u64>(), r2.gen::<u64>());
        assert_ne!(trial_rng(9, 3).gen::<u64>(), trial_rng(9, 4).gen::<u64>());
    }

    #[test]
    fn zero_trials_is_an_empty_pass() {
        let r = run_suite(&cfg(Suite::Parity, 0));
        assert!(r.ok());
        assert_eq!((r.passed, r.failed), (0, 0));
        assert!(r.properties.is_empty());
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert_eq!("bogus".parse::<Suite>(), Err(UnknownSuite("bogus".into())));
        let json = serde_json::to_value(run_suite(&cfg(Suite::Counterexample, 2))).unwrap();
        assert_eq!(json["suite"], "counterexample");
        assert!(json["first_counterexample"].is_null());
    }

    #[test]
    fn generators_reach_every_kind() {
        let mut rng = trial_rng(5, 0);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..200 {
            seen.insert(format!("{}", gen::cycle_type(&mut rng).class_kind()));
        }
        assert_eq!(seen.len(), 4);
    }
}
