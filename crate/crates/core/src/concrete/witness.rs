use std::sync::Arc;

use crate::cycletype::{CycleType, ExtNat};

use super::{Analysis, Bijection, ConcreteError, Coord, CycleKind, DressedMap, FinitaryPerm};

/// A computable permutation `a` with `(x)m₁·a = (x)a·m₂` for every `x`, i.e. `m₂ = a⁻¹·m₁·a`.
///
/// It sends the `i`-th cycle of each kind of `m₁` onto the `i`-th cycle of the same kind of
/// `m₂`, position by position.
#[derive(Clone, Debug)]
pub struct ConjugacyWitness {
    from: Arc<Analysis>,
    to: Arc<Analysis>,
}

impl ConjugacyWitness {
    pub(crate) fn between(from: Analysis, to: Analysis) -> Option<Self> {
        (from.cycle_type() == to.cycle_type()).then(|| ConjugacyWitness { from: Arc::new(from), to: Arc::new(to) })
    }
}

impl Bijection for ConjugacyWitness {
    fn apply(&self, x: u64) -> u64 {
        self.to.point(self.from.coord(x))
    }

    fn apply_inv(&self, x: u64) -> u64 {
        self.from.point(self.to.coord(x))
    }
}

/// A witness that `m₁` and `m₂` are conjugate, or `None` when their cycle types differ.
pub fn conjugacy_witness(m1: &DressedMap, m2: &DressedMap) -> Option<ConjugacyWitness> {
    ConjugacyWitness::between(m1.analysis(), m2.analysis())
}

/// The permutation `h` with `f·h = g`, for maps with equal coimage sizes.
///
/// On the image of `f` it is forced: `((x)f)h = (x)g`. The coimage of `f` is matched to
/// the coimage of `g` by forward-cycle index: the `q`-image of the `c`-th root of `f` goes
/// to the `q`-image of the `c`-th root of `g`. This also works when both coimages are
/// infinite.
#[derive(Clone, Debug)]
pub struct Completion {
    f: DressedMap,
    g: DressedMap,
}

fn root_index(m: &DressedMap, y: u64) -> u64 {
    let at = m.base.locate(m.q.apply_inv(y));
    debug_assert!(at.kind == CycleKind::Forward && at.pos == 0);
    at.copy
}

impl Bijection for Completion {
    fn apply(&self, y: u64) -> u64 {
        match self.f.preimage(y) {
            Some(x) => self.g.eval(x),
            None => self.g.q.apply(self.g.base.root(root_index(&self.f, y))),
        }
    }

    fn apply_inv(&self, z: u64) -> u64 {
        match self.g.preimage(z) {
            Some(x) => self.f.eval(x),
            None => self.f.q.apply(self.f.base.root(root_index(&self.g, z))),
        }
    }
}

pub fn complete_to_permutation(f: &DressedMap, g: &DressedMap) -> Result<Completion, ConcreteError> {
    if f.coimage() != g.coimage() {
        return Err(ConcreteError::CoimageMismatch(f.coimage(), g.coimage()));
    }
    Ok(Completion { f: f.clone(), g: g.clone() })
}

/// Coordinates of the first infinite cycle (forward cycles before open ones).
fn first_infinite(ty: &CycleType) -> Option<CycleKind> {
    if !ty.fwd().is_zero() {
        Some(CycleKind::Forward)
    } else if !ty.open().is_zero() {
        Some(CycleKind::Open)
    } else {
        None
    }
}

/// A transposition `h` with `exact_type(f·h) = split_cycle(exact_type(f), n)`: it swaps the
/// points at positions `0` and `n` of an infinite cycle, cutting off positions `0..n`.
pub fn split_witness(f: &DressedMap, n: u64) -> Result<FinitaryPerm, ConcreteError> {
    split_in(&f.analysis(), n)
}

pub(crate) fn split_in(a: &Analysis, n: u64) -> Result<FinitaryPerm, ConcreteError> {
    if n == 0 {
        return Err(crate::cycletype::CycleTypeError::ZeroLength.into());
    }
    let kind = first_infinite(a.cycle_type()).ok_or(ConcreteError::NoInfiniteCycle)?;
    Ok(FinitaryPerm::transposition(a.point(Coord::new(kind, 0, 0)), a.point(Coord::new(kind, 0, n as i64))))
}

/// A transposition `h` with `exact_type(f·h) = merge_cycle(exact_type(f), n)`: it swaps a
/// point of an infinite cycle with a point of an `n`-cycle, splicing the two together.
pub fn merge_witness(f: &DressedMap, n: u64) -> Result<FinitaryPerm, ConcreteError> {
    merge_in(&f.analysis(), n)
}

fn merge_in(a: &Analysis, n: u64) -> Result<FinitaryPerm, ConcreteError> {
    if n == 0 {
        return Err(crate::cycletype::CycleTypeError::ZeroLength.into());
    }
    let kind = first_infinite(a.cycle_type()).ok_or(ConcreteError::NoInfiniteCycle)?;
    if a.cycle_type().count(n).is_zero() {
        return Err(ConcreteError::NoSuchFiniteCycle(n));
    }
    Ok(FinitaryPerm::transposition(
        a.point(Coord::new(kind, 0, 0)),
        a.point(Coord::new(CycleKind::Finite(n), 0, 0)),
    ))
}

/// `Σ_n (C_n(f) - C_n(f·h))` for a transposition `h`, where `f` has exactly one infinite
/// cycle and finitely many cycles of each length. The result is always `-1` or `1`.
pub fn parity_effect(f: &DressedMap, h: &FinitaryPerm) -> Result<i64, ConcreteError> {
    let before = f.exact_type();
    if before.infinite_cycles() != ExtNat::ONE || !before.counts().all_finite() {
        return Err(ConcreteError::PreconditionViolated(
            "the map needs exactly one infinite cycle and finite cycle counts".into(),
        ));
    }
    if !h.is_transposition() {
        return Err(ConcreteError::PreconditionViolated("h must be a transposition".into()));
    }
    let after = f.then_perm(h).exact_type();
    Ok(count_difference(&before, &after))
}

/// `Σ_n (C_n(a) - C_n(b))` for finitely related types with finite counts.
fn count_difference(a: &CycleType, b: &CycleType) -> i64 {
    debug_assert_eq!(a.counts().default_value(), b.counts().default_value());
    let mut lengths: Vec<u64> = a.counts().exceptions().chain(b.counts().exceptions()).map(|(n, _)| n).collect();
    lengths.sort_unstable();
    lengths.dedup();
    lengths
        .into_iter()
        .map(|n| {
            let x = a.count(n).finite().expect("finite count") as i64;
            let y = b.count(n).finite().expect("finite count") as i64;
            x - y
        })
        .sum()
}

/// Given an odd finitary `h`, an even finitary `g = h·a` (with `a` a transposition) such that
/// `f·g` and `f·h` have the same cycle type.
///
/// Needs either two infinite cycles (then `a` swaps points of two of them) or an infinite
/// cycle together with infinitely many `n`-cycles for some `n` (then `a` cuts off one more
/// `n`-cycle, which does not change an infinite count).
pub fn even_adjust_witness(f: &DressedMap, h: &FinitaryPerm) -> Result<FinitaryPerm, ConcreteError> {
    if h.parity() != 1 {
        return Err(ConcreteError::PreconditionViolated("h must be an odd permutation".into()));
    }
    let fh = f.then_perm(h).analysis();
    let ty = fh.cycle_type().clone();
    let infinite: Vec<Coord> = [(CycleKind::Forward, ty.fwd()), (CycleKind::Open, ty.open())]
        .into_iter()
        .flat_map(|(kind, count)| (0..count.cap(2)).map(move |c| Coord::new(kind, c, 0)))
        .take(2)
        .collect();
    let a = if infinite.len() == 2 {
        FinitaryPerm::transposition(fh.point(infinite[0]), fh.point(infinite[1]))
    } else if let (1, Some(n)) = (infinite.len(), omega_length(&ty)) {
        split_in(&fh, n)?
    } else {
        return Err(ConcreteError::PreconditionViolated(
            "needs two infinite cycles, or one infinite cycle and infinitely many n-cycles".into(),
        ));
    };
    Ok(h.then(&a))
}

/// Least `n` with `C_n = ω`.
fn omega_length(ty: &CycleType) -> Option<u64> {
    let counts = ty.counts();
    let listed = counts.exceptions().find(|&(_, v)| v == ExtNat::Omega).map(|(n, _)| n);
    let unlisted = (counts.default_value() == ExtNat::Omega)
        .then(|| (1..).find(|&n| counts.exceptions().all(|(m, _)| m != n)).expect("some length is unlisted"));
    match (listed, unlisted) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Transpositions `h₁…h_m` with `g·h₁⋯h_m` conjugate to `f`, and a witness `w` with
/// `f = w·(g·h₁⋯h_m)·w⁻¹`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub transpositions: Vec<FinitaryPerm>,
    pub adjusted: DressedMap,
    pub witness: ConjugacyWitness,
}

/// Relates two maps with infinite cycles through finitary surgery and conjugation.
///
/// Returns `Ok(None)` when the types are not finitely related (or, with `require_even`, not
/// evenly related). With `require_even` the number of transpositions is even: it has the
/// parity of the count difference, which is even exactly then.
pub fn relate_witness(f: &DressedMap, g: &DressedMap, require_even: bool) -> Result<Option<Relation>, ConcreteError> {
    let tf = f.exact_type();
    let tg = g.exact_type();
    if !tf.has_infinite_cycle() || !tg.has_infinite_cycle() {
        return Err(ConcreteError::PreconditionViolated("both maps need an infinite cycle".into()));
    }
    let related = if require_even { tf.approx_even(&tg) } else { tf.approx_fin(&tg) };
    if !related {
        return Ok(None);
    }
    let mut lengths: Vec<u64> = tf.counts().exceptions().chain(tg.counts().exceptions()).map(|(n, _)| n).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let mut cur = g.clone();
    let mut transpositions = Vec::new();
    for n in lengths {
        let (Some(want), Some(have)) = (tf.count(n).finite(), tg.count(n).finite()) else {
            continue;
        };
        for _ in 0..want.abs_diff(have) {
            let a = cur.analysis();
            let h = if want > have { split_in(&a, n)? } else { merge_in(&a, n)? };
            cur = cur.then_perm(&h);
            transpositions.push(h);
        }
    }
    debug_assert!(!require_even || transpositions.len() % 2 == 0);
    let witness = conjugacy_witness(f, &cur).expect("surgery reached the target type");
    Ok(Some(Relation { transpositions, adjusted: cur, witness }))
}
