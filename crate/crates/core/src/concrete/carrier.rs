//! The fixed enumeration of the carrier of a canonical map.
//!
//! For a cycle type `T` the carrier is the set of triples `(family, copy, pos)`:
//!
//! * Families are numbered in this order: the forward family (if `fwd ≥ 1`), the open family (if
//!   `open ≥ 1`), then one family per finite length `n` with `C_n ≥ 1`, by increasing `n`.
//!   When the default count is nonzero there are infinitely many finite families.
//! * `copy < C_family` picks one of the cycles of that family (`C_family` may be `ω`).
//! * `pos < P_family` is the raw position: `P = ω` for infinite families and `P = n` for an
//!   `n`-cycle. Forward positions are `0, 1, 2, …` from the root. Open positions are
//!   integers written in zigzag order: raw `2z` is `z ≥ 0` and raw `2|z| - 1` is `z < 0`.
//!
//! Triples are ordered by `m = max(family, copy, pos)` and then lexicographically, and the
//! carrier index of a triple is its rank in that order. With `cap(v, m) = min(v, m)`, the
//! number of triples with every coordinate below `m` and family below `s` is
//!
//! ```text
//! G(m, s) = Σ_{t < min(s, m)} cap(C_t, m) · cap(P_t, m)
//! ```
//!
//! and the index of `(s, c, p)` with `m = max(s, c, p)` is
//! `G(m, ∞) + [G(m+1, s) - G(m, s)] + w`, where the rank `w` within the family is
//!
//! * `c · cap(P_s, m+1) + p` when `s = m`;
//! * otherwise `c` when `p = m` and `c < m`, and `[m < P_s] · cap(C_s, m) + p` when `c = m`.
//!
//! Every shell `m` is nonempty for a valid (countably infinite) type, so `G(·, ∞)` is
//! strictly increasing and decoding is two binary searches.

use crate::cycletype::{CycleType, ExtNat};

/// The kind of a cycle: forward, open, or finite of the given length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleKind {
    Forward,
    Open,
    Finite(u64),
}

impl CycleKind {
    pub fn is_infinite(self) -> bool {
        !matches!(self, CycleKind::Finite(_))
    }

    /// Normalizes a position on a cycle of this kind (reduces modulo the length).
    pub(crate) fn wrap(self, pos: i64) -> i64 {
        match self {
            CycleKind::Finite(n) => pos.rem_euclid(n as i64),
            _ => pos,
        }
    }
}

/// A point's place in a cycle decomposition: the `copy`-th cycle of its kind and the
/// position on it. The map acts by `pos ↦ pos + 1` (modulo the length for finite cycles).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub kind: CycleKind,
    pub copy: u64,
    pub pos: i64,
}

impl Coord {
    pub fn new(kind: CycleKind, copy: u64, pos: i64) -> Self {
        Coord { kind, copy, pos }
    }

    pub(crate) fn step(self) -> Coord {
        Coord { pos: self.kind.wrap(self.pos + 1), ..self }
    }
}

#[derive(Clone, Copy, Debug)]
struct Family {
    kind: CycleKind,
    mult: ExtNat,
}

impl Family {
    fn period(&self) -> ExtNat {
        match self.kind {
            CycleKind::Finite(n) => ExtNat::Fin(n),
            _ => ExtNat::Omega,
        }
    }
}

/// The enumeration of the carrier of one cycle type.
#[derive(Clone, Debug)]
pub struct Carrier {
    ty: CycleType,
    head: Vec<Family>,
    /// `(first length, multiplicity)` of the infinite run of finite families, if any.
    tail: Option<(u64, ExtNat)>,
}

fn zigzag(z: i64) -> u64 {
    if z >= 0 {
        2 * z as u64
    } else {
        2 * z.unsigned_abs() - 1
    }
}

fn unzigzag(p: u64) -> i64 {
    if p.is_multiple_of(2) {
        (p / 2) as i64
    } else {
        -(p.div_ceil(2) as i64)
    }
}

/// `Σ_{i < count} min(first + i, m)`.
fn capped_run_sum(first: u64, count: u128, m: u64) -> u128 {
    let below = count.min(m.saturating_sub(first) as u128);
    below * first as u128 + below * below.saturating_sub(1) / 2 + (count - below) * m as u128
}

impl Carrier {
    /// Assumes `ty` is valid.
    pub fn new(ty: &CycleType) -> Self {
        let mut head = Vec::new();
        if !ty.fwd().is_zero() {
            head.push(Family { kind: CycleKind::Forward, mult: ty.fwd() });
        }
        if !ty.open().is_zero() {
            head.push(Family { kind: CycleKind::Open, mult: ty.open() });
        }
        let last = ty.counts().max_exception().unwrap_or(0);
        for n in 1..=last {
            let c = ty.count(n);
            if !c.is_zero() {
                head.push(Family { kind: CycleKind::Finite(n), mult: c });
            }
        }
        let default = ty.counts().default_value();
        let tail = (!default.is_zero()).then_some((last + 1, default));
        Carrier { ty: ty.clone(), head, tail }
    }

    pub fn cycle_type(&self) -> &CycleType {
        &self.ty
    }

    fn family(&self, s: u64) -> Family {
        match usize::try_from(s).ok().and_then(|i| self.head.get(i)) {
            Some(family) => *family,
            None => {
                let (first, mult) = self.tail.expect("family index beyond the carrier");
                Family { kind: CycleKind::Finite(first + (s - self.head.len() as u64)), mult }
            }
        }
    }

    fn family_count(&self) -> Option<u64> {
        match self.tail {
            Some(_) => None,
            None => Some(self.head.len() as u64),
        }
    }

    /// Family index of a kind, if the type has cycles of that kind.
    fn family_of(&self, kind: CycleKind) -> Option<u64> {
        if let Some(i) = self.head.iter().position(|s| s.kind == kind) {
            return Some(i as u64);
        }
        match (kind, self.tail) {
            (CycleKind::Finite(n), Some((first, _))) if n >= first => Some(self.head.len() as u64 + (n - first)),
            _ => None,
        }
    }

    /// Number of triples with all coordinates below `m` and family below `f_lim`.
    fn below(&self, m: u64, f_lim: u64) -> u128 {
        let lim = f_lim.min(m);
        let mut total: u128 = 0;
        for family in self.head.iter().take(usize::try_from(lim).unwrap_or(usize::MAX)) {
            total += family.mult.cap(m) as u128 * family.period().cap(m) as u128;
        }
        if let Some((first, mult)) = self.tail {
            let h = self.head.len() as u64;
            if lim > h {
                total += mult.cap(m) as u128 * capped_run_sum(first, (lim - h) as u128, m);
            }
        }
        total
    }

    /// Rank of `(s, c, p)` within shell `m` among the triples of family `s`.
    fn within(family: Family, s: u64, c: u64, p: u64, m: u64) -> u128 {
        let period = family.period();
        if s == m {
            c as u128 * period.cap(m + 1) as u128 + p as u128
        } else if c < m {
            debug_assert_eq!(p, m);
            c as u128
        } else {
            let first = if ExtNat::Fin(m) < period { family.mult.cap(m) } else { 0 };
            first as u128 + p as u128
        }
    }

    /// Carrier index of a triple with a raw (nonnegative) position.
    pub fn encode_raw(&self, s: u64, c: u64, p: u64) -> u64 {
        let family = self.family(s);
        debug_assert!(ExtNat::Fin(c) < family.mult && ExtNat::Fin(p) < family.period());
        let m = s.max(c).max(p);
        let idx = self.below(m, u64::MAX) + (self.below(m + 1, s) - self.below(m, s)) + Carrier::within(family, s, c, p, m);
        u64::try_from(idx).expect("carrier index exceeds 64 bits")
    }

    /// The triple `(family, copy, raw position)` at carrier index `x`.
    pub fn decode_raw(&self, x: u64) -> (u64, u64, u64) {
        let x = x as u128;
        // Largest m with below(m, ∞) ≤ x.
        let mut hi: u64 = 1;
        while self.below(hi, u64::MAX) <= x {
            hi *= 2;
        }
        let mut lo = 0u64;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.below(mid, u64::MAX) <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let m = lo;
        let r = x - self.below(m, u64::MAX);
        let cum = |s: u64| self.below(m + 1, s) - self.below(m, s);
        // Smallest s with cum(s + 1) > r.
        let s_max = match self.family_count() {
            Some(count) => m.min(count - 1),
            None => m,
        };
        let (mut lo, mut hi) = (0u64, s_max);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if cum(mid + 1) > r {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let s = lo;
        let family = self.family(s);
        let w = (r - cum(s)) as u64;
        let period = family.period();
        if s == m {
            let width = period.cap(m + 1);
            (s, w / width, w % width)
        } else {
            let first = if ExtNat::Fin(m) < period { family.mult.cap(m) } else { 0 };
            if w < first {
                (s, w, m)
            } else {
                (s, m, w - first)
            }
        }
    }

    pub fn encode(&self, at: Coord) -> u64 {
        let s = self.family_of(at.kind).expect("the type has no cycles of this kind");
        let raw = match at.kind {
            CycleKind::Open => zigzag(at.pos),
            _ => u64::try_from(at.pos).expect("negative position on a forward or finite cycle"),
        };
        self.encode_raw(s, at.copy, raw)
    }

    pub fn decode(&self, x: u64) -> Coord {
        let (s, c, p) = self.decode_raw(x);
        let kind = self.family(s).kind;
        let pos = match kind {
            CycleKind::Open => unzigzag(p),
            _ => p as i64,
        };
        Coord { kind, copy: c, pos }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    /// Lists the first `limit` triples by sorting every triple inside a bounding box.
    fn brute_order(carrier: &Carrier, bound: u64, limit: usize) -> Vec<(u64, u64, u64)> {
        let mut all = Vec::new();
        let families = carrier.family_count().unwrap_or(bound).min(bound);
        for s in 0..families {
            let family = carrier.family(s);
            for c in 0..family.mult.cap(bound) {
                for p in 0..family.period().cap(bound) {
                    all.push((s, c, p));
                }
            }
        }
        all.sort_by_key(|&(s, c, p)| (s.max(c).max(p), s, c, p));
        // Only triples with max below the box bound are certainly complete.
        all.retain(|&(s, c, p)| s.max(c).max(p) < bound);
        all.truncate(limit);
        all
    }

    #[test]
    fn matches_brute_force_order() {
        for t in [
            "ct(open=0,fwd=1,default=0)",
            "ct(open=2,fwd=3,default=0,2:1,5:w)",
            "ct(open=0,fwd=0,default=1)",
            "ct(open=1,fwd=0,default=w,3:0)",
            "ct(open=0,fwd=0,default=0,1:w)",
            "ct(open=0,fwd=w,default=2,1:1,4:3)",
            "ct(open=w,fwd=0,default=0,2:4)",
        ] {
            let carrier = Carrier::new(&ct(t));
            let order = brute_order(&carrier, 24, 400);
            assert!(order.len() >= 24, "{t}");
            for (i, &(s, c, p)) in order.iter().enumerate() {
                assert_eq!(carrier.decode_raw(i as u64), (s, c, p), "{t} index {i}");
                assert_eq!(carrier.encode_raw(s, c, p), i as u64, "{t} triple {s} {c} {p}");
            }
        }
    }

    #[test]
    fn round_trips_far_out() {
        let carrier = Carrier::new(&ct("ct(open=1,fwd=2,default=1,3:w)"));
        for x in (0..200u64).map(|i| i * 7_919_993 + 3) {
            let at = carrier.decode(x);
            assert_eq!(carrier.encode(at), x);
        }
    }

    #[test]
    fn zigzag_is_a_bijection() {
        for z in -50..50 {
            assert_eq!(unzigzag(zigzag(z)), z);
        }
        assert_eq!((0..5).map(unzigzag).collect::<Vec<_>>(), vec![0, -1, 1, -2, 2]);
    }

    #[test]
    fn single_forward_cycle_is_the_identity_enumeration() {
        let carrier = Carrier::new(&ct("ct(open=0,fwd=1,default=0)"));
        for x in 0..100 {
            assert_eq!(carrier.decode(x), Coord::new(CycleKind::Forward, 0, x as i64));
        }
    }
}
