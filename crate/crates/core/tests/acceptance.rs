//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use injclass::concrete::{
    compose, factor_into_conjugates, merge_witness, parity_effect, split_witness, Bijection, Coimage, DressedMap,
    FinitaryPerm, Witnesses,
};
use injclass::cycletype::{ClassKind, CycleType, ExtNat, Fin};
use injclass::harness::{gen, trial_rng};
use injclass::numonoid::NumericalMonoid;
use injclass::submonoid::{ClassDescriptor, ClassRelation, SubmonoidDescriptor, UnitsLabel};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

const WINDOW: u64 = 2000;
const BOUND: u64 = 64;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

/// Points of `0..window` missed by `eval` on `0..scan`. Preimages of small points are small,
/// so a scan well past the window finds all of them.
fn unhit(eval: impl Fn(u64) -> u64, window: u64, scan: u64) -> Vec<u64> {
    let mut hit = vec![false; window as usize];
    for y in (0..scan).map(eval).filter(|&y| y < window) {
        hit[y as usize] = true;
    }
    (0..window).filter(|&y| !hit[y as usize]).collect()
}

fn with_fwd(t: &CycleType, k: u64) -> Option<CycleType> {
    let t = CycleType::new(t.open(), Fin(k), t.counts().clone());
    t.is_valid().then_some(t)
}

fn conjugation_invariance() -> Outcome {
    let failures: Vec<String> = (0..500u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = trial_rng(101, i);
            let t = gen::cycle_type(&mut rng);
            let m = gen::dressed(&mut rng, &t, BOUND);
            let a = gen::perm(&mut rng, BOUND, 6);
            let c = m.conjugate(&a);
            let pointwise = (0..256).all(|x| c.eval(x) == a.apply_inv(m.eval(a.apply(x))));
            (c.exact_type() != m.exact_type() || !pointwise).then(|| format!("m={m} a={a}"))
        })
        .collect();
    match failures.first() {
        None => Ok("500/500 conjugates keep their exact type".into()),
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
    }
}

fn coimage_additivity() -> Outcome {
    let failures: Vec<String> = (0..500u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = trial_rng(102, i);
            let draw = |rng: &mut rand_chacha::ChaCha8Rng| loop {
                let base = gen::cycle_type(rng);
                if let Some(t) = with_fwd(&base, rng.gen_range(0..=8)) {
                    break t;
                }
            };
            let (tf, tg) = (draw(&mut rng), draw(&mut rng));
            let f = gen::dressed(&mut rng, &tf, BOUND);
            let g = gen::dressed(&mut rng, &tg, BOUND);
            let fg = compose(&f, &g);
            let missing = unhit(|x| fg.eval(x), WINDOW, 3 * WINDOW);
            let expected = tf.coimage() + tg.coimage();
            let listed = match fg.coimage_points() {
                Coimage::Finite(mut v) => {
                    v.sort_unstable();
                    v == missing
                }
                Coimage::Infinite(_) => false,
            };
            (ExtNat::Fin(missing.len() as u64) != expected || fg.coimage() != expected || !listed)
                .then(|| format!("f={f} g={g} counted={} expected={expected}", missing.len()))
        })
        .collect();
    match failures.first() {
        None => Ok("500/500 window counts equal the sum of coimages".into()),
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
    }
}

fn forward_cycle_roots() -> Outcome {
    let mut failures = Vec::new();
    let mut done = 0;
    let mut i = 0;
    while done < 200 {
        let mut rng = trial_rng(103, i);
        i += 1;
        let base = gen::cycle_type(&mut rng);
        let k = rng.gen_range(0..=8);
        let Some(t) = with_fwd(&base, k) else { continue };
        done += 1;
        let m = DressedMap::canonical(&t).expect("valid");
        let missing = unhit(|x| m.eval(x), WINDOW, 3 * WINDOW);
        let ok = match m.coimage_points() {
            Coimage::Finite(mut v) => {
                v.sort_unstable();
                v.len() as u64 == k && v == missing
            }
            Coimage::Infinite(_) => false,
        };
        if !ok {
            failures.push(t.to_string());
        }
    }
    match failures.first() {
        None => Ok("200/200 canonical maps have exactly fwd roots".into()),
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
    }
}

fn split_merge_surgery() -> Outcome {
    let failures: Vec<String> = (0..300u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = trial_rng(104, i);
            let t = gen::infinite_type(&mut rng);
            let n = rng.gen_range(1..=12);
            let f = gen::dressed(&mut rng, &t, BOUND);
            let tf = f.exact_type();
            let inputs = || format!("f={f} n={n}");
            let Ok(s) = split_witness(&f, n) else { return Some(format!("split refused: {}", inputs())) };
            let g = f.then_perm(&s);
            let predicted = tf.split_cycle(n).expect("infinite cycle present");
            if g.exact_type() != predicted {
                return Some(format!("split type: {}", inputs()));
            }
            let Ok(m) = merge_witness(&g, n) else { return Some(format!("merge refused: {}", inputs())) };
            let back = g.then_perm(&m).exact_type();
            let merged = predicted.merge_cycle(n).expect("an n-cycle present");
            (back != merged || back != tf).then(|| format!("round trip: {}", inputs()))
        })
        .collect();
    match failures.first() {
        None => Ok("300/300 split and merge match the predicted types and round-trip".into()),
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
    }
}

fn parity_of_transpositions() -> Outcome {
    let results: Vec<(u64, Vec<String>)> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(105, i);
            let t = gen::cycle_type_of(&mut rng, ClassKind::SingleInfiniteFiniteCounts);
            let f = gen::dressed(&mut rng, &t, BOUND);
            let mut bad = Vec::new();
            let mut checked = 0;
            for a in 0..BOUND {
                for b in a + 1..BOUND {
                    let h = FinitaryPerm::transposition(a, b);
                    checked += 1;
                    match parity_effect(&f, &h) {
                        Ok(1) | Ok(-1) => {}
                        other => bad.push(format!("f={f} h={h}: {other:?}")),
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let checked: u64 = results.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = results.iter().flat_map(|r| &r.1).collect();
    match bad.first() {
        None => Ok(format!("{checked} transpositions over 100 types, every effect is ±1")),
        Some(f) => Err(format!("{} exceptions, first: {f}", bad.len())),
    }
}

fn even_relation() -> Outcome {
    let results: Vec<(bool, Option<String>)> = (0..300u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(106, i);
            let t = if rng.gen_bool(0.5) {
                gen::cycle_type_of(&mut rng, ClassKind::SingleInfiniteFiniteCounts)
            } else {
                gen::cycle_type(&mut rng)
            };
            let f = gen::dressed(&mut rng, &t, BOUND);
            let (k1, k2) = (rng.gen_range(0..4), rng.gen_range(0..4));
            let h1 = gen::perm_of_parity(&mut rng, BOUND, k1);
            let h2 = gen::perm_of_parity(&mut rng, BOUND, k2);
            let f1 = f.then_perm(&h1);
            let a = f.exact_type();
            let b = if rng.gen_bool(0.5) { f1.exact_type() } else { gen::fin_perturb(&mut rng, &a) };
            let c = if rng.gen_bool(0.5) { f1.then_perm(&h2).exact_type() } else { gen::fin_perturb(&mut rng, &b) };
            let (ab, bc, ac) = (a.approx_even(&b), b.approx_even(&c), a.approx_even(&c));
            let relation = a.approx_even(&a) && ab == b.approx_even(&a) && (!(ab && bc) || ac);
            let k = 2 * rng.gen_range(0..3);
            let even = gen::perm_of_parity(&mut rng, BOUND, k);
            // Dressing stability is a statement about one infinite cycle and finite counts.
            let stable = a.class_kind() != ClassKind::SingleInfiniteFiniteCounts
                || f.then_perm(&even).exact_type().approx_even(&a);
            let failure = (!relation || !stable).then(|| format!("f={f} h1={h1} even={even} a={a} b={b} c={c}"));
            (ab && bc, failure)
        })
        .collect();
    let chained = results.iter().filter(|r| r.0).count();
    let failures: Vec<&String> = results.iter().filter_map(|r| r.1.as_ref()).collect();
    match failures.first() {
        None => Ok(format!("300/300 trials, {chained} with a nonvacuous transitivity chain")),
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
    }
}

fn counterexample_fixture() -> Outcome {
    let f: CycleType = "ct(open=0,fwd=0,default=1)".parse().map_err(|e| format!("{e}"))?;
    let g: CycleType = "ct(open=0,fwd=0,default=1,1:2)".parse().map_err(|e| format!("{e}"))?;
    let r = f.parity_sum(&g);
    if f.approx_fin(&g) && r.fin_related && r.parity == Some(1) && !f.approx_even(&g) {
        Ok("finitely related with odd count difference".into())
    } else {
        Err(format!("approx_fin={} parity_sum={r:?}", f.approx_fin(&g)))
    }
}

/// Membership and minimal generators by dynamic programming over `0..=limit`.
fn monoid_oracle(gens: &[u64], limit: usize) -> (Vec<bool>, Vec<u64>) {
    let mut member = vec![false; limit + 1];
    member[0] = true;
    for n in 1..=limit {
        member[n] = gens.iter().any(|&g| g != 0 && g as usize <= n && member[n - g as usize]);
    }
    let min_gens = (1..=limit)
        .filter(|&n| member[n] && !(1..n).any(|a| member[a] && member[n - a]))
        .map(|n| n as u64)
        .collect();
    (member, min_gens)
}

fn generator_uniqueness() -> Outcome {
    let mut failures = Vec::new();
    for i in 0..200u64 {
        let mut rng = trial_rng(108, i);
        let base: Vec<u64> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..=30)).collect();
        let mut s = base.clone();
        for _ in 0..rng.gen_range(0..8) {
            let k = rng.gen_range(2..=3);
            s.push((0..k).map(|_| *base.choose(&mut rng).expect("nonempty")).sum());
        }
        if rng.gen_bool(0.2) {
            s.push(0);
        }
        s.shuffle(&mut rng);
        let m = NumericalMonoid::generate(s.iter().copied());
        let (member, oracle_gens) = monoid_oracle(&s, 1000);
        let subset = m.min_gens().iter().all(|g| s.contains(g));
        let agrees = (0..=1000).all(|n| m.contains(n as u64) == member[n]);
        let same = m.min_gens() == oracle_gens.as_slice() && m == NumericalMonoid::generate(base.iter().copied());
        if !(subset && agrees && same) {
            failures.push(format!("S={s:?} min_gens={:?}", m.min_gens()));
        }
    }
    match failures.first() {
        None => Ok("200/200 minimal generators lie in S and membership matches up to 1000".into()),
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
    }
}

fn factorization() -> Outcome {
    let results: Vec<Option<String>> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(109, i);
            let tf = gen::finite_type(&mut rng, 4);
            let tg = gen::finite_type(&mut rng, 4);
            let extra = gen::finite_type(&mut rng, 1);
            let th = CycleType::new(Fin(0), tf.fwd() + tg.fwd(), extra.counts().clone());
            let inputs = format!("f={tf} g={tg} h={th}");
            let r = match factor_into_conjugates(&tf, &tg, &th, WINDOW) {
                Ok(r) => r,
                Err(e) => return Some(format!("{inputs}: {e}")),
            };
            let w = match (&r.decision, &r.witnesses) {
                (true, Witnesses::Found(w)) => w,
                _ => return Some(format!("{inputs}: decision {} without witnesses", r.decision)),
            };
            let types = w.f.exact_type() == tf && w.g.exact_type() == tg && w.h.exact_type() == th;
            let product = (0..WINDOW).all(|x| {
                let y = w.a.apply_inv(w.f.eval(w.a.apply(x)));
                w.b.apply_inv(w.g.eval(w.b.apply(y))) == w.h.eval(x)
            });
            if !(types && product) {
                return Some(format!("{inputs}: witnesses do not verify"));
            }
            let off = CycleType::new(Fin(0), th.fwd() + Fin(rng.gen_range(1..=3)), th.counts().clone());
            match factor_into_conjugates(&tf, &tg, &off, WINDOW) {
                Ok(r) if !r.decision && matches!(r.witnesses, Witnesses::NotApplicable) => None,
                _ => Some(format!("f={tf} g={tg} h={off}: mismatched coimages produced witnesses")),
            }
        })
        .collect();
    let failures: Vec<&String> = results.iter().flatten().collect();
    match failures.first() {
        None => Ok(format!("100/100 triples verified on 0..{WINDOW}, 100 negative decisions without witnesses")),
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
    }
}

struct Generators {
    units: Vec<CycleType>,
    fins: Vec<CycleType>,
    infinity: bool,
}

fn random_generators(rng: &mut impl Rng) -> Generators {
    let units = (0..rng.gen_range(0..3)).map(|_| gen::cycle_type_of(rng, ClassKind::Permutation)).collect();
    let fins = (0..rng.gen_range(1..5))
        .map(|_| loop {
            let t = gen::cycle_type(rng);
            if let Some(t) = with_fwd(&t, rng.gen_range(1..8)) {
                break t;
            }
        })
        .collect();
    Generators { units, fins, infinity: rng.gen_bool(0.5) }
}

/// Same submonoid: equal units, monoid and infinity flag, and each class of one lies in a
/// class of the other.
fn same_set(a: &SubmonoidDescriptor, b: &SubmonoidDescriptor) -> bool {
    let covered = |x: &SubmonoidDescriptor, y: &SubmonoidDescriptor| {
        x.b_classes.iter().all(|c| y.b_classes.iter().any(|d| d.relation == c.relation && d.contains(&c.representative)))
    };
    a.units == b.units && a.monoid == b.monoid && a.has_infinity == b.has_infinity && covered(a, b) && covered(b, a)
}

/// Single-element edits that break closure of a valid descriptor.
fn perturbations(d: &SubmonoidDescriptor, rng: &mut impl Rng) -> Vec<(String, SubmonoidDescriptor)> {
    let mut out = Vec::new();
    for (i, c) in d.b_classes.iter().enumerate() {
        for r in [ClassRelation::Conjugacy, ClassRelation::FinRel, ClassRelation::EvenRel] {
            if r != c.relation {
                let mut p = d.clone();
                p.b_classes[i].relation = r;
                out.push((format!("class {i} relation {} -> {}", c.relation.name(), r.name()), p));
            }
        }
        let k = c.coimage();
        if d.b_classes.iter().filter(|o| o.coimage() == k).count() == 1 {
            let mut p = d.clone();
            p.b_classes.remove(i);
            out.push((format!("drop class {i}"), p));
        }
    }
    if d.units != UnitsLabel::Sym {
        let k = loop {
            let k = rng.gen_range(1..40);
            if !d.monoid.is_min_gen(k) {
                break k;
            }
        };
        let rep = loop {
            if let Some(t) = with_fwd(&gen::cycle_type(rng), k) {
                break t;
            }
        };
        let relation = d.units.relation_for(rep.class_kind()).expect("not sym");
        let mut p = d.clone();
        p.b_classes.push(ClassDescriptor::new(relation, rep));
        out.push((format!("add class at non-generator {k}"), p));
    }
    if !d.b_classes.is_empty() {
        let mut p = d.clone();
        p.units = UnitsLabel::Sym;
        out.push(("units -> sym with classes".into(), p));
    }
    out
}

fn sample_type(rng: &mut impl Rng, g: &Generators, d: &SubmonoidDescriptor) -> CycleType {
    match rng.gen_range(0..4) {
        0 => gen::cycle_type(rng),
        1 => gen::cycle_type_of(rng, ClassKind::Permutation),
        2 => {
            let t = g.fins.choose(rng).expect("nonempty");
            gen::fin_perturb(rng, t)
        }
        _ => loop {
            let gens = d.monoid.min_gens();
            let k = if gens.is_empty() { rng.gen_range(1..8) } else { *gens.choose(rng).expect("nonempty") };
            if let Some(t) = with_fwd(&gen::cycle_type(rng), k) {
                break t;
            }
        },
    }
}

fn descriptor_round_trip() -> Outcome {
    let results: Vec<Result<(usize, usize), String>> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(110, i);
            let g = random_generators(&mut rng);
            let d = SubmonoidDescriptor::generate(&g.units, &g.fins, g.infinity).map_err(|e| e.to_string())?;
            if let Err(v) = d.validate() {
                return Err(format!("{d}: {v:?}"));
            }
            if !g.units.iter().chain(&g.fins).all(|t| d.member(t) == Ok(true)) {
                return Err(format!("{d}: a generator is not a member"));
            }
            let perturbed = perturbations(&d, &mut rng);
            for (what, p) in &perturbed {
                if p.validate().is_ok() {
                    return Err(format!("{d}: perturbation `{what}` still validates"));
                }
            }
            let mut members = 0;
            for _ in 0..200 {
                let t = sample_type(&mut rng, &g, &d);
                let member = d.member(&t).map_err(|e| e.to_string())?;
                let (mut units, mut fins, mut infinity) = (g.units.clone(), g.fins.clone(), g.infinity);
                match t.coimage() {
                    Fin(0) => units.push(t.clone()),
                    Fin(_) => fins.push(t.clone()),
                    _ => infinity = true,
                }
                let grown = SubmonoidDescriptor::generate(&units, &fins, infinity).map_err(|e| e.to_string())?;
                if member != same_set(&d, &grown) {
                    return Err(format!("{d}: member({t}) = {member} but adding it gives {grown}"));
                }
                members += member as usize;
            }
            Ok((perturbed.len(), members))
        })
        .collect();
    let mut perturbations = 0;
    let mut members = 0;
    for r in results {
        let (p, m) = r?;
        perturbations += p;
        members += m;
    }
    Ok(format!("100/100 valid, {perturbations} perturbations rejected, 20000 sampled types agree ({members} members)"))
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "conjugation invariance", limit: Some(Duration::from_secs(10)), run: conjugation_invariance },
        Criterion { id: 2, name: "coimage additivity", limit: Some(Duration::from_secs(10)), run: coimage_additivity },
        Criterion { id: 3, name: "forward-cycle roots", limit: None, run: forward_cycle_roots },
        Criterion { id: 4, name: "split/merge surgery", limit: None, run: split_merge_surgery },
        Criterion { id: 5, name: "transposition parity", limit: Some(Duration::from_secs(60)), run: parity_of_transpositions },
        Criterion { id: 6, name: "even relation", limit: None, run: even_relation },
        Criterion { id: 7, name: "counterexample fixture", limit: None, run: counterexample_fixture },
        Criterion { id: 8, name: "generator uniqueness", limit: None, run: generator_uniqueness },
        Criterion { id: 9, name: "factorization", limit: Some(Duration::from_secs(120)), run: factorization },
        Criterion { id: 10, name: "descriptor round trip", limit: None, run: descriptor_round_trip },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(msg) => println!("PASS {:>2} {}: {msg} ({elapsed:.2?})", c.id, c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {}: {msg} ({elapsed:.2?})", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
