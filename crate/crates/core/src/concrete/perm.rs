use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cycletype::{CountFunction, CycleType, ExtNat};
use crate::parse::{self, Cursor, ParseError};

use super::Bijection;

/// A permutation of ℕ moving finitely many points.
///
/// Composition follows the right-action convention: `a.then(&b)` applies `a` first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FinitaryPerm {
    fwd: BTreeMap<u64, u64>,
    inv: BTreeMap<u64, u64>,
}

impl FinitaryPerm {
    pub fn identity() -> Self {
        FinitaryPerm::default()
    }

    /// Swaps `a` and `b`; the identity when they coincide.
    pub fn transposition(a: u64, b: u64) -> Self {
        let mut p = FinitaryPerm::identity();
        if a != b {
            p.insert(a, b);
            p.insert(b, a);
        }
        p
    }

    /// Builds a permutation from disjoint cycles, each written in mapping order.
    ///
    /// Returns `None` if some point appears twice.
    pub fn from_cycles<C: AsRef<[u64]>>(cycles: &[C]) -> Option<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut p = FinitaryPerm::identity();
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &x in cycle {
                if !seen.insert(x) {
                    return None;
                }
            }
            if cycle.len() < 2 {
                continue;
            }
            for (i, &x) in cycle.iter().enumerate() {
                p.insert(x, cycle[(i + 1) % cycle.len()]);
            }
        }
        Some(p)
    }

    fn insert(&mut self, x: u64, y: u64) {
        self.fwd.insert(x, y);
        self.inv.insert(y, x);
    }

    pub fn apply(&self, x: u64) -> u64 {
        self.fwd.get(&x).copied().unwrap_or(x)
    }

    pub fn apply_inv(&self, x: u64) -> u64 {
        self.inv.get(&x).copied().unwrap_or(x)
    }

    pub fn is_identity(&self) -> bool {
        self.fwd.is_empty()
    }

    /// Moved points, ascending.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.fwd.keys().copied()
    }

    pub fn max_support(&self) -> Option<u64> {
        self.fwd.keys().next_back().copied()
    }

    pub fn inverse(&self) -> Self {
        FinitaryPerm { fwd: self.inv.clone(), inv: self.fwd.clone() }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &FinitaryPerm) -> Self {
        let mut out = FinitaryPerm::identity();
        for x in self.support().chain(other.support()) {
            let y = other.apply(self.apply(x));
            if y != x {
                out.insert(x, y);
            }
        }
        out
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u64>> {
        let mut done = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.fwd.keys() {
            if done.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            done.insert(start);
            let mut x = self.apply(start);
            while x != start {
                done.insert(x);
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_transposition(&self) -> bool {
        self.fwd.len() == 2
    }

    /// 0 for even permutations, 1 for odd ones.
    pub fn parity(&self) -> u8 {
        (self.cycles().iter().map(|c| c.len() as u64 - 1).sum::<u64>() % 2) as u8
    }

    /// The cycle type of this permutation acting on ℕ.
    pub fn cycle_type(&self) -> CycleType {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for c in self.cycles() {
            *counts.entry(c.len() as u64).or_default() += 1;
        }
        let exceptions = std::iter::once((1, ExtNat::Omega)).chain(counts.into_iter().map(|(n, c)| (n, ExtNat::Fin(c))));
        CycleType::new(ExtNat::ZERO, ExtNat::ZERO, CountFunction::new(ExtNat::ZERO, exceptions))
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<FinitaryPerm, ParseError> {
        let start = c.pos();
        c.expect("perm(")?;
        let mut cycles = Vec::new();
        while c.eat("(") {
            let mut cycle = vec![c.uint()?];
            while c.eat(" ") {
                cycle.push(c.uint()?);
            }
            c.expect(")")?;
            cycles.push(cycle);
        }
        c.expect(")")?;
        FinitaryPerm::from_cycles(&cycles).ok_or_else(|| c.error_at(start, "cycles are not disjoint"))
    }
}

impl Bijection for FinitaryPerm {
    fn apply(&self, x: u64) -> u64 {
        FinitaryPerm::apply(self, x)
    }

    fn apply_inv(&self, x: u64) -> u64 {
        FinitaryPerm::apply_inv(self, x)
    }
}

impl fmt::Display for FinitaryPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("perm(")?;
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        f.write_str(")")
    }
}

impl FromStr for FinitaryPerm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::whole(s, FinitaryPerm::parse_from)
    }
}
