//! Writing a map of type `Th` as a product of conjugates of maps of types `Tf` and `Tg`.
//!
//! The construction works with three maps over shift bases, `F = P·s_kf`, `G = s_kg·Q` and
//! `H = P·s_kh·Q` with `kh = kf + kg`, so that `H = F·G` holds identically. Two moves keep
//! that identity:
//!
//! * left-multiplying `F` and `H` by a transposition `t` (`P ← t·P`);
//! * right-multiplying `G` and `H` by `t` (`Q ← Q·t`).
//!
//! First the finite cycles of `Th` are cut off infinite cycles of `H`. Then `F` and `G` are
//! corrected one cycle at a time with transpositions swapping points of two different
//! infinite cycles of `H`, which leave the type of `H` alone. Since `kh ≥ 2` such pairs
//! always exist among fresh points. Every move is checked against the exact cycle types
//! and undone if it misses. Finally the conjugacy witnesses to the canonical maps give
//! `a` and `b`.

use crate::cycletype::{CycleType, ExtNat};

use super::witness::ConjugacyWitness;
use super::{Analysis, Base, Bijection, ConcreteError, Coord, CycleKind, Dressed, DressedMap, FinitaryPerm, Inverse, Then};

/// The conjugator `c_H⁻¹·c_X` built from two conjugacy witnesses.
pub type Conjugator = Then<Inverse<ConjugacyWitness>, ConjugacyWitness>;

/// Permutations `a`, `b` and maps `f`, `g` of the requested types with
/// `h = a·f·a⁻¹·b·g·b⁻¹`, where `h` is the canonical map of `Th`.
#[derive(Clone, Debug)]
pub struct FactorWitnesses {
    pub a: Conjugator,
    pub b: Conjugator,
    pub f: DressedMap,
    pub g: DressedMap,
    pub h: DressedMap,
}

impl FactorWitnesses {
    /// `(x)a·f·a⁻¹·b·g·b⁻¹`.
    pub fn eval_product(&self, x: u64) -> u64 {
        let y = self.a.apply_inv(self.f.eval(self.a.apply(x)));
        self.b.apply_inv(self.g.eval(self.b.apply(y)))
    }

    /// The first point of `0..window` where the product differs from `h`.
    pub fn first_mismatch(&self, window: u64) -> Option<u64> {
        (0..window).find(|&x| self.eval_product(x) != self.h.eval(x))
    }
}

#[derive(Clone, Debug)]
pub enum Witnesses {
    /// The decision is negative.
    NotApplicable,
    /// The decision is positive but the types are outside the class handled by the
    /// construction.
    Unsupported(String),
    Found(Box<FactorWitnesses>),
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub decision: bool,
    pub witnesses: Witnesses,
}

/// Decides whether a map of type `th` is a product of a conjugate of a map of type `tf`
/// and a conjugate of a map of type `tg`, which happens exactly when the coimages add up.
///
/// Witnesses are built when all three types have finitely many cycles of each finite
/// length, finitely many finite cycles in total, no open cycles and finitely many forward
/// cycles. They are checked pointwise on `0..window` before being returned.
pub fn factor_into_conjugates(
    tf: &CycleType,
    tg: &CycleType,
    th: &CycleType,
    window: u64,
) -> Result<Factorization, ConcreteError> {
    for t in [tf, tg, th] {
        t.validate()?;
        if t.fwd().is_zero() {
            return Err(ConcreteError::PreconditionViolated("every type needs a forward cycle".into()));
        }
    }
    let decision = tf.coimage() + tg.coimage() == th.coimage();
    if !decision {
        return Ok(Factorization { decision, witnesses: Witnesses::NotApplicable });
    }
    if let Some(reason) = [tf, tg, th].into_iter().find_map(unsupported) {
        return Ok(Factorization { decision, witnesses: Witnesses::Unsupported(reason) });
    }
    let witnesses = match Builder::new(tf, tg, th).run() {
        Some(found) => match found.first_mismatch(window) {
            None => Witnesses::Found(Box::new(found)),
            Some(x) => Witnesses::Unsupported(format!("construction failed verification at {x}")),
        },
        None => Witnesses::Unsupported("no neutral transposition found".into()),
    };
    Ok(Factorization { decision, witnesses })
}

fn unsupported(t: &CycleType) -> Option<String> {
    if !t.fwd().is_finite() {
        Some(format!("{t} has infinitely many forward cycles"))
    } else if !t.open().is_zero() {
        Some(format!("{t} has open cycles"))
    } else if !t.counts().default_value().is_zero() || !t.counts().all_finite() {
        Some(format!("{t} has infinitely many finite cycles"))
    } else {
        None
    }
}

/// Finite cycle lengths of a restricted type, with multiplicity.
fn finite_cycles(t: &CycleType) -> Vec<u64> {
    t.counts()
        .exceptions()
        .flat_map(|(n, c)| std::iter::repeat_n(n, c.finite().expect("restricted type") as usize))
        .collect()
}

fn bump(t: &CycleType, n: u64, delta: i64) -> CycleType {
    let mut out = t.clone();
    let c = t.count(n).finite().expect("restricted type") as i64 + delta;
    out.set_count(n, ExtNat::Fin(c as u64));
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    /// Left multiplication of `F` and `H`.
    F,
    /// Right multiplication of `G` and `H`.
    G,
}

struct Builder {
    kf: u64,
    kg: u64,
    kh: u64,
    tf: CycleType,
    tg: CycleType,
    th: CycleType,
    p: FinitaryPerm,
    q: FinitaryPerm,
}

/// Bound on attempts per placement search, far above what any move needs.
const PLACEMENTS: u64 = 64;

impl Builder {
    fn new(tf: &CycleType, tg: &CycleType, th: &CycleType) -> Self {
        let k = |t: &CycleType| t.fwd().finite().expect("restricted type");
        Builder {
            kf: k(tf),
            kg: k(tg),
            kh: k(th),
            tf: tf.clone(),
            tg: tg.clone(),
            th: th.clone(),
            p: FinitaryPerm::identity(),
            q: FinitaryPerm::identity(),
        }
    }

    fn f(&self) -> Dressed {
        Dressed { p: self.p.clone(), base: Base::Shift(self.kf), q: FinitaryPerm::identity() }
    }

    fn g(&self) -> Dressed {
        Dressed { p: FinitaryPerm::identity(), base: Base::Shift(self.kg), q: self.q.clone() }
    }

    fn h(&self) -> Dressed {
        Dressed { p: self.p.clone(), base: Base::Shift(self.kh), q: self.q.clone() }
    }

    fn side(&self, side: Side) -> Dressed {
        match side {
            Side::F => self.f(),
            Side::G => self.g(),
        }
    }

    fn step(&self, side: Side) -> u64 {
        match side {
            Side::F => self.kf,
            Side::G => self.kg,
        }
    }

    /// A point beyond every dressing, where all three maps are plain shifts.
    fn cursor(&self) -> u64 {
        self.p.max_support().max(self.q.max_support()).map_or(0, |m| m + 1)
    }

    fn apply(&mut self, side: Side, t: &FinitaryPerm) {
        match side {
            Side::F => self.p = t.then(&self.p),
            Side::G => self.q = self.q.then(t),
        }
    }

    /// Applies `t` on `side` if the resulting types are as expected; otherwise leaves
    /// everything unchanged.
    fn attempt(&mut self, side: Side, t: &FinitaryPerm, side_type: Option<&CycleType>, h_type: &CycleType) -> bool {
        let saved = (self.p.clone(), self.q.clone());
        self.apply(side, t);
        let ok = Analysis::new(&self.h()).cycle_type() == h_type
            && side_type.is_none_or(|want| Analysis::new(&self.side(side)).cycle_type() == want);
        if !ok {
            (self.p, self.q) = saved;
        }
        ok
    }

    fn run(mut self) -> Option<FactorWitnesses> {
        // Cut the finite cycles of Th off H, preferring the side where the transposition
        // swaps two different infinite cycles and so changes nothing there.
        let mut h_type = CycleType::shift(self.kh);
        for n in finite_cycles(&self.th) {
            let d = n * self.kh;
            let side = if d.is_multiple_of(self.kf) && !d.is_multiple_of(self.kg) { Side::G } else { Side::F };
            let u = self.cursor();
            let next = h_type.split_cycle(n).ok()?;
            if !self.attempt(side, &FinitaryPerm::transposition(u, u + d), None, &next) {
                return None;
            }
            h_type = next;
        }
        debug_assert_eq!(h_type, self.th);

        for side in [Side::F, Side::G] {
            let target = match side {
                Side::F => self.tf.clone(),
                Side::G => self.tg.clone(),
            };
            self.correct(side, &target)?;
        }

        let (f_can, g_can, h_can) = (
            DressedMap::canonical(&self.tf).ok()?,
            DressedMap::canonical(&self.tg).ok()?,
            DressedMap::canonical(&self.th).ok()?,
        );
        let c_f = ConjugacyWitness::between(Analysis::new(&self.f()), f_can.analysis())?;
        let c_g = ConjugacyWitness::between(Analysis::new(&self.g()), g_can.analysis())?;
        let c_h = ConjugacyWitness::between(Analysis::new(&self.h()), h_can.analysis())?;
        Some(FactorWitnesses {
            a: Then(Inverse(c_h.clone()), c_f),
            b: Then(Inverse(c_h), c_g),
            f: f_can,
            g: g_can,
            h: h_can,
        })
    }

    /// Brings the finite cycles on `side` to those of `target` without changing the type
    /// of `H`.
    fn correct(&mut self, side: Side, target: &CycleType) -> Option<()> {
        let current = Analysis::new(&self.side(side)).cycle_type().clone();
        let mut lengths: Vec<u64> =
            current.counts().exceptions().chain(target.counts().exceptions()).map(|(n, _)| n).collect();
        lengths.sort_unstable();
        lengths.dedup();
        for &n in &lengths {
            let have = current.count(n).finite()?;
            let want = target.count(n).finite()?;
            for _ in want..have {
                self.absorb(side, n)?;
            }
        }
        for &n in &lengths {
            let have = current.count(n).finite()?;
            let want = target.count(n).finite()?;
            for _ in have..want {
                self.add_cycle(side, n)?;
            }
        }
        (Analysis::new(&self.side(side)).cycle_type() == target).then_some(())
    }

    /// The infinite `H`-cycle through `x`, if any.
    fn h_cycle(h: &Analysis, x: u64) -> Option<(CycleKind, u64)> {
        let at = h.coord(x);
        at.kind.is_infinite().then_some((at.kind, at.copy))
    }

    fn fresh(&self) -> impl Iterator<Item = u64> {
        let start = self.cursor();
        start..start + PLACEMENTS.max(2 * self.kh * self.kh + 2)
    }

    /// Merges one `n`-cycle of the side map into an infinite cycle.
    fn absorb(&mut self, side: Side, n: u64) -> Option<()> {
        let m = Analysis::new(&self.side(side));
        let h = Analysis::new(&self.h());
        let h_type = h.cycle_type().clone();
        let expected = bump(m.cycle_type(), n, -1);
        for w in Self::cycle_points(&m, n) {
            let Some(cw) = Self::h_cycle(&h, w) else { continue };
            for z in self.fresh() {
                if Self::h_cycle(&h, z).is_some_and(|cz| cz != cw)
                    && self.attempt(side, &FinitaryPerm::transposition(w, z), Some(&expected), &h_type)
                {
                    return Some(());
                }
            }
        }
        None
    }

    /// All points lying on `n`-cycles of `m`.
    fn cycle_points(m: &Analysis, n: u64) -> Vec<u64> {
        let count = m.cycle_type().count(n).finite().unwrap_or(0);
        (0..count)
            .flat_map(|c| (0..n as i64).map(move |pos| m.point(Coord::new(CycleKind::Finite(n), c, pos))))
            .collect()
    }

    /// Cuts an `a`-cycle off an infinite cycle of the side map.
    fn add_cycle(&mut self, side: Side, a: u64) -> Option<()> {
        if !(a * self.step(side)).is_multiple_of(self.kh) {
            return self.split(side, a);
        }
        // Cutting `a` steps directly would cut an `a·k/kh`-cycle off H too. Cut off a fixed
        // point and an `(a-1)`-cycle instead, then join the two.
        self.split(side, 1)?;
        self.split(side, a - 1)?;
        let m = Analysis::new(&self.side(side));
        let h = Analysis::new(&self.h());
        let h_type = h.cycle_type().clone();
        let expected = bump(&bump(&bump(m.cycle_type(), 1, -1), a - 1, -1), a, 1);
        let ones = Self::cycle_points(&m, 1);
        let rest = Self::cycle_points(&m, a - 1);
        for &w in &ones {
            let Some(cw) = Self::h_cycle(&h, w) else { continue };
            for &z in &rest {
                if z != w
                    && Self::h_cycle(&h, z).is_some_and(|cz| cz != cw)
                    && self.attempt(side, &FinitaryPerm::transposition(w, z), Some(&expected), &h_type)
                {
                    return Some(());
                }
            }
        }
        None
    }

    fn split(&mut self, side: Side, a: u64) -> Option<()> {
        let k = self.step(side);
        let m_type = Analysis::new(&self.side(side)).cycle_type().clone();
        let h = Analysis::new(&self.h());
        let h_type = h.cycle_type().clone();
        let expected = m_type.split_cycle(a).ok()?;
        for x in self.fresh() {
            let y = x + a * k;
            let (Some(cx), Some(cy)) = (Self::h_cycle(&h, x), Self::h_cycle(&h, y)) else { continue };
            if cx != cy && self.attempt(side, &FinitaryPerm::transposition(x, y), Some(&expected), &h_type) {
                return Some(());
            }
        }
        None
    }
}
