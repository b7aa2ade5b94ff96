use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A cardinal no larger than the carrier: a natural number or `ω` (countably infinite).
///
/// Ordering puts every finite value below `ω`. Addition saturates at `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExtNat {
    Fin(u64),
    Omega,
}

pub use ExtNat::{Fin, Omega};

impl ExtNat {
    pub const ZERO: ExtNat = Fin(0);
    pub const ONE: ExtNat = Fin(1);

    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn is_zero(self) -> bool {
        self == Fin(0)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Fin(n) => Some(n),
            Omega => None,
        }
    }

    /// `x + 1`, with `ω + 1 = ω`.
    pub fn succ(self) -> ExtNat {
        self + Fin(1)
    }

    /// `x - 1`, with `ω - 1 = ω`; `None` on zero.
    pub fn pred(self) -> Option<ExtNat> {
        match self {
            Fin(0) => None,
            Fin(n) => Some(Fin(n - 1)),
            Omega => Some(Omega),
        }
    }

    /// Subtracts a finite amount; `ω - k = ω`. `None` if the result would be negative.
    pub fn checked_sub(self, k: u64) -> Option<ExtNat> {
        match self {
            Fin(n) => n.checked_sub(k).map(Fin),
            Omega => Some(Omega),
        }
    }

    /// `min(self, bound)` as an integer; `ω` is treated as larger than any bound.
    pub(crate) fn cap(self, bound: u64) -> u64 {
        match self {
            Fin(n) => n.min(bound),
            Omega => bound,
        }
    }
}

impl Default for ExtNat {
    fn default() -> Self {
        Fin(0)
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        Fin(n)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (Fin(a), Fin(b)) => Fin(a.checked_add(b).expect("finite cardinal overflowed u64")),
            _ => Omega,
        }
    }
}

impl std::iter::Sum for ExtNat {
    fn sum<I: Iterator<Item = ExtNat>>(iter: I) -> ExtNat {
        iter.fold(Fin(0), Add::add)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(n) => write!(f, "{n}"),
            Omega => f.write_str("w"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = crate::parse::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = crate::parse::Cursor::new(s);
        let v = p.ext_nat()?;
        p.finish()?;
        Ok(v)
    }
}
