//! Cycle types of injective endomaps of a countably infinite set.
//!
//! A [`CycleType`] records how many cycles of each kind a map has: `C_n` finite cycles of
//! length `n` for every `n ≥ 1`, `open` bi-infinite cycles and `fwd` forward (one-sided)
//! cycles. Two maps are conjugate under the full symmetric group exactly when their cycle
//! types coincide, so every conjugacy question in this crate is answered here, symbolically.
//!
//! Count functions are stored as a default value plus finitely many exceptions. That is
//! enough to express types such as "one cycle of every length" and keeps the finitary
//! equivalences below decidable.

mod extnat;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use extnat::{ExtNat, Fin, Omega};

use crate::parse::{self, Cursor, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CycleTypeError {
    #[error("the cycle type describes a finite carrier")]
    FiniteCarrier,
    #[error("the cycle type has no cycles")]
    EmptyType,
    #[error("the map has no infinite cycle")]
    NoInfiniteCycle,
    #[error("the map has no cycle of length {0}")]
    NoSuchFiniteCycle(u64),
    #[error("cycle lengths start at 1")]
    ZeroLength,
    #[error("the map is not a permutation")]
    NotInvertible,
}

/// `n ↦ C_n` for `n ≥ 1`, as a default value with finitely many exceptions.
///
/// Normal form: no exception equals the default, so two count functions are equal iff
/// they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CountFunction {
    default: ExtNat,
    exceptions: BTreeMap<u64, ExtNat>,
}

impl CountFunction {
    /// Builds a count function, dropping exceptions that repeat the default.
    ///
    /// Panics if a length is zero; later entries for the same length win.
    pub fn new(default: ExtNat, exceptions: impl IntoIterator<Item = (u64, ExtNat)>) -> Self {
        let mut cf = CountFunction { default, exceptions: BTreeMap::new() };
        for (n, v) in exceptions {
            cf.set(n, v);
        }
        cf
    }

    pub fn zero() -> Self {
        CountFunction::default()
    }

    pub fn default_value(&self) -> ExtNat {
        self.default
    }

    /// The exceptions in ascending order of length.
    pub fn exceptions(&self) -> impl Iterator<Item = (u64, ExtNat)> + '_ {
        self.exceptions.iter().map(|(&n, &v)| (n, v))
    }

    pub fn get(&self, n: u64) -> ExtNat {
        assert!(n >= 1, "cycle lengths start at 1");
        self.exceptions.get(&n).copied().unwrap_or(self.default)
    }

    pub(crate) fn set(&mut self, n: u64, v: ExtNat) {
        assert!(n >= 1, "cycle lengths start at 1");
        if v == self.default {
            self.exceptions.remove(&n);
        } else {
            self.exceptions.insert(n, v);
        }
    }

    /// Largest length carried by an exception.
    pub fn max_exception(&self) -> Option<u64> {
        self.exceptions.keys().next_back().copied()
    }

    /// True when every `C_n` is finite.
    pub fn all_finite(&self) -> bool {
        self.default.is_finite() && self.exceptions.values().all(|v| v.is_finite())
    }

    /// Lengths at which the two functions disagree. Only meaningful (and finite) when the
    /// defaults agree; with different defaults every length past the exceptions differs.
    fn differing_lengths<'a>(&'a self, other: &'a CountFunction) -> impl Iterator<Item = u64> + 'a {
        debug_assert_eq!(self.default, other.default);
        let mut keys: Vec<u64> = self.exceptions.keys().chain(other.exceptions.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().filter(move |&n| self.get(n) != other.get(n))
    }
}

/// Where a permutation sits among the four normal subgroups of the symmetric group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymClass {
    NotAPermutation,
    Identity,
    EvenFinitary,
    OddFinitary,
    Infinitary,
}

impl fmt::Display for SymClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymClass::NotAPermutation => "not-a-permutation",
            SymClass::Identity => "identity",
            SymClass::EvenFinitary => "even-finitary",
            SymClass::OddFinitary => "odd-finitary",
            SymClass::Infinitary => "infinitary",
        })
    }
}

/// Buckets used when classifying submonoids whose units are the alternating group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    /// At least two infinite cycles.
    TwoPlusInfinite,
    /// One infinite cycle and infinitely many cycles of some finite length.
    InfiniteMultiplicity,
    /// One infinite cycle and finitely many cycles of each finite length. The total number
    /// of finite cycles may still be infinite, e.g. one cycle of every length.
    SingleInfiniteFiniteCounts,
    Permutation,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::TwoPlusInfinite => "two-plus-infinite",
            ClassKind::InfiniteMultiplicity => "infinite-multiplicity",
            ClassKind::SingleInfiniteFiniteCounts => "single-infinite-finite-counts",
            ClassKind::Permutation => "permutation",
        })
    }
}

/// Outcome of comparing two types for the even relation: whether they are finitely
/// related at all, and if so the parity of `Σ_n (C_n(a) - C_n(b))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityResult {
    pub fin_related: bool,
    pub parity: Option<u8>,
}

/// The conjugacy invariant of an injective map: finite cycle counts plus the numbers of
/// open and forward infinite cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleType {
    counts: CountFunction,
    open: ExtNat,
    fwd: ExtNat,
}

impl CycleType {
    pub fn new(open: ExtNat, fwd: ExtNat, counts: CountFunction) -> Self {
        CycleType { counts, open, fwd }
    }

    /// Convenience constructor from a default and a list of `(length, count)` exceptions.
    pub fn from_parts(
        open: impl Into<ExtNat>,
        fwd: impl Into<ExtNat>,
        default: impl Into<ExtNat>,
        exceptions: &[(u64, ExtNat)],
    ) -> Self {
        CycleType::new(open.into(), fwd.into(), CountFunction::new(default.into(), exceptions.iter().copied()))
    }

    /// The identity map: countably many fixed points.
    pub fn identity() -> Self {
        CycleType::from_parts(0, 0, 0, &[(1, Omega)])
    }

    /// A single forward cycle and nothing else (the shift `n ↦ n + 1` on ℕ).
    pub fn shift(fwd: u64) -> Self {
        CycleType::from_parts(0, fwd, 0, &[])
    }

    pub fn counts(&self) -> &CountFunction {
        &self.counts
    }

    pub fn count(&self, n: u64) -> ExtNat {
        self.counts.get(n)
    }

    pub fn open(&self) -> ExtNat {
        self.open
    }

    pub fn fwd(&self) -> ExtNat {
        self.fwd
    }

    /// `C_open + C_fwd`.
    pub fn infinite_cycles(&self) -> ExtNat {
        self.open + self.fwd
    }

    pub fn has_infinite_cycle(&self) -> bool {
        !self.infinite_cycles().is_zero()
    }

    pub(crate) fn set_count(&mut self, n: u64, v: ExtNat) {
        self.counts.set(n, v);
    }

    /// Checks that the type describes a countably infinite, nonempty carrier.
    pub fn validate(&self) -> Result<(), CycleTypeError> {
        if self.has_infinite_cycle() || !self.counts.default.is_zero() {
            return Ok(());
        }
        let mut finite_points: u64 = 0;
        for (n, v) in self.counts.exceptions() {
            match v {
                Omega => return Ok(()),
                Fin(c) => finite_points = finite_points.saturating_add(n.saturating_mul(c)),
            }
        }
        if finite_points == 0 {
            Err(CycleTypeError::EmptyType)
        } else {
            Err(CycleTypeError::FiniteCarrier)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Size of the complement of the image; equals the number of forward cycles.
    pub fn coimage(&self) -> ExtNat {
        self.fwd
    }

    /// Conjugacy under the full symmetric group: equal invariants.
    pub fn conjugate_equal(&self, other: &CycleType) -> bool {
        self == other
    }

    pub fn sym_class(&self) -> SymClass {
        if !self.fwd.is_zero() {
            return SymClass::NotAPermutation;
        }
        if *self == CycleType::identity() {
            return SymClass::Identity;
        }
        let finite_support = self.open.is_zero()
            && self.counts.default.is_zero()
            && self.counts.exceptions().all(|(n, v)| n == 1 || v.is_finite());
        if !finite_support {
            return SymClass::Infinitary;
        }
        // A cycle of length n is a product of n - 1 transpositions.
        let parity = self
            .counts
            .exceptions()
            .filter(|&(n, _)| n >= 2)
            .map(|(n, v)| ((n - 1) % 2) * (v.finite().unwrap_or(0) % 2))
            .sum::<u64>()
            % 2;
        if parity == 0 {
            SymClass::EvenFinitary
        } else {
            SymClass::OddFinitary
        }
    }

    /// The finitary relation: same open and forward counts, and the finite-length counts
    /// differ at finitely many lengths, with finite values wherever they differ.
    pub fn approx_fin(&self, other: &CycleType) -> bool {
        self.open == other.open
            && self.fwd == other.fwd
            && self.counts.default == other.counts.default
            && self
                .counts
                .differing_lengths(&other.counts)
                .all(|n| self.count(n).is_finite() && other.count(n).is_finite())
    }

    pub fn parity_sum(&self, other: &CycleType) -> ParityResult {
        if !self.approx_fin(other) {
            return ParityResult { fin_related: false, parity: None };
        }
        let total: i128 = self
            .counts
            .differing_lengths(&other.counts)
            .map(|n| {
                let a = self.count(n).finite().expect("finite at a differing length");
                let b = other.count(n).finite().expect("finite at a differing length");
                a as i128 - b as i128
            })
            .sum();
        ParityResult { fin_related: true, parity: Some(total.rem_euclid(2) as u8) }
    }

    pub fn approx_even(&self, other: &CycleType) -> bool {
        self.parity_sum(other).parity == Some(0)
    }

    /// Type of `f·h` where `h` cuts an `n`-cycle off an infinite cycle of `f`.
    pub fn split_cycle(&self, n: u64) -> Result<CycleType, CycleTypeError> {
        self.validate()?;
        if n == 0 {
            return Err(CycleTypeError::ZeroLength);
        }
        if !self.has_infinite_cycle() {
            return Err(CycleTypeError::NoInfiniteCycle);
        }
        let mut out = self.clone();
        out.set_count(n, self.count(n).succ());
        Ok(out)
    }

    /// Type of `f·h` where `h` splices an `n`-cycle into an infinite cycle of `f`.
    pub fn merge_cycle(&self, n: u64) -> Result<CycleType, CycleTypeError> {
        self.validate()?;
        if n == 0 {
            return Err(CycleTypeError::ZeroLength);
        }
        if !self.has_infinite_cycle() {
            return Err(CycleTypeError::NoInfiniteCycle);
        }
        let reduced = self.count(n).pred().ok_or(CycleTypeError::NoSuchFiniteCycle(n))?;
        let mut out = self.clone();
        out.set_count(n, reduced);
        Ok(out)
    }

    /// Type of the inverse permutation, which is the same type.
    pub fn invert_type(&self) -> Result<CycleType, CycleTypeError> {
        self.validate()?;
        if !self.fwd.is_zero() {
            return Err(CycleTypeError::NotInvertible);
        }
        Ok(self.clone())
    }

    pub fn class_kind(&self) -> ClassKind {
        if self.fwd.is_zero() {
            ClassKind::Permutation
        } else if self.infinite_cycles() >= Fin(2) {
            ClassKind::TwoPlusInfinite
        } else if !self.counts.all_finite() {
            ClassKind::InfiniteMultiplicity
        } else {
            ClassKind::SingleInfiniteFiniteCounts
        }
    }

    /// Lengths `n` with `C_n ≥ 1`, in ascending order, restricted to `n ≤ bound`.
    pub fn lengths_present(&self, bound: u64) -> Vec<u64> {
        if self.counts.default.is_zero() {
            self.counts.exceptions().filter(|&(n, v)| n <= bound && !v.is_zero()).map(|(n, _)| n).collect()
        } else {
            (1..=bound).filter(|&n| !self.count(n).is_zero()).collect()
        }
    }

    /// Disjoint union of two maps' cycle structures.
    pub fn disjoint_sum(&self, other: &CycleType) -> CycleType {
        let mut out = CycleType::new(
            self.open + other.open,
            self.fwd + other.fwd,
            CountFunction::new(self.counts.default + other.counts.default, []),
        );
        let mut keys: Vec<u64> = self.counts.exceptions.keys().chain(other.counts.exceptions.keys()).copied().collect();
        keys.dedup();
        for n in keys {
            out.set_count(n, self.count(n) + other.count(n));
        }
        out
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<CycleType, ParseError> {
        c.expect("ct(")?;
        c.expect("open=")?;
        let open = c.ext_nat()?;
        c.expect(",fwd=")?;
        let fwd = c.ext_nat()?;
        c.expect(",default=")?;
        let default = c.ext_nat()?;
        let mut counts = CountFunction::new(default, []);
        let mut seen = std::collections::BTreeSet::new();
        while c.eat(",") {
            let at = c.pos();
            let n = c.uint()?;
            if n == 0 {
                return Err(c.error_at(at, "cycle length 0"));
            }
            if !seen.insert(n) {
                return Err(c.error_at(at, format!("duplicate cycle length {n}")));
            }
            c.expect(":")?;
            counts.set(n, c.ext_nat()?);
        }
        c.expect(")")?;
        Ok(CycleType::new(open, fwd, counts))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ct(open={},fwd={},default={}", self.open, self.fwd, self.counts.default)?;
        for (n, v) in self.counts.exceptions() {
            write!(f, ",{n}:{v}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for CycleType {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::whole(s, CycleType::parse_from)
    }
}
