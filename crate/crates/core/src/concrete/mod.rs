//! Concrete injective maps of ℕ: canonical realizations of cycle types, maps dressed by
//! finitary permutations, their exact cycle types, and constructive witnesses.
//!
//! Maps act on the right: `(x)fg = ((x)f)g`, so `f.then(g)` applies `f` first.

mod analysis;
mod carrier;
mod factor;
mod perm;
mod witness;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::cycletype::{CycleType, CycleTypeError, ExtNat};
use crate::parse::{self, Cursor, ParseError};

pub(crate) use analysis::Analysis;
pub use carrier::{Carrier, Coord, CycleKind};
pub use factor::{factor_into_conjugates, FactorWitnesses, Factorization, Witnesses};
pub use perm::FinitaryPerm;
pub use witness::{
    complete_to_permutation, conjugacy_witness, even_adjust_witness, merge_witness, parity_effect,
    relate_witness, split_witness, Completion, ConjugacyWitness, Relation,
};

/// Default verification window: carrier indices `0..2000`.
pub const DEFAULT_WINDOW: u64 = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcreteError {
    #[error(transparent)]
    Type(#[from] CycleTypeError),
    #[error("coimage sizes differ: {0} vs {1}")]
    CoimageMismatch(ExtNat, ExtNat),
    #[error("the map has no infinite cycle")]
    NoInfiniteCycle,
    #[error("the map has no cycle of length {0}")]
    NoSuchFiniteCycle(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("witness construction unsupported: {0}")]
    WitnessUnsupported(String),
}

/// A computable bijection of ℕ.
pub trait Bijection: Send + Sync {
    fn apply(&self, x: u64) -> u64;
    fn apply_inv(&self, x: u64) -> u64;
}

/// The inverse of a bijection.
#[derive(Clone, Debug)]
pub struct Inverse<B>(pub B);

impl<B: Bijection> Bijection for Inverse<B> {
    fn apply(&self, x: u64) -> u64 {
        self.0.apply_inv(x)
    }

    fn apply_inv(&self, x: u64) -> u64 {
        self.0.apply(x)
    }
}

/// `Then(a, b)` applies `a`, then `b`.
#[derive(Clone, Debug)]
pub struct Then<A, B>(pub A, pub B);

impl<A: Bijection, B: Bijection> Bijection for Then<A, B> {
    fn apply(&self, x: u64) -> u64 {
        self.1.apply(self.0.apply(x))
    }

    fn apply_inv(&self, x: u64) -> u64 {
        self.0.apply_inv(self.1.apply_inv(x))
    }
}

/// The canonical map of a cycle type: every point moves one step along its cycle in the
/// fixed carrier enumeration (see [`Carrier`]).
#[derive(Clone, Debug)]
pub struct CanonicalMap {
    carrier: Arc<Carrier>,
    /// Runs every cycle backwards; only for permutation types (inverse maps).
    reversed: bool,
}

impl PartialEq for CanonicalMap {
    fn eq(&self, other: &Self) -> bool {
        self.reversed == other.reversed && self.cycle_type() == other.cycle_type()
    }
}

impl Eq for CanonicalMap {}

impl CanonicalMap {
    pub fn new(ty: &CycleType) -> Result<Self, CycleTypeError> {
        ty.validate()?;
        Ok(CanonicalMap { carrier: Arc::new(Carrier::new(ty)), reversed: false })
    }

    pub fn cycle_type(&self) -> &CycleType {
        self.carrier.cycle_type()
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// The inverse map, which exists only for permutation types.
    pub fn inverse(&self) -> Option<CanonicalMap> {
        self.cycle_type().fwd().is_zero().then(|| CanonicalMap { carrier: self.carrier.clone(), reversed: !self.reversed })
    }

    pub fn locate(&self, x: u64) -> Coord {
        let at = self.carrier.decode(x);
        if self.reversed {
            Coord { pos: at.kind.wrap(-at.pos), ..at }
        } else {
            at
        }
    }

    pub fn point(&self, at: Coord) -> u64 {
        if self.reversed {
            self.carrier.encode(Coord { pos: at.kind.wrap(-at.pos), ..at })
        } else {
            self.carrier.encode(at)
        }
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.point(self.locate(x).step())
    }

    pub fn preimage(&self, x: u64) -> Option<u64> {
        let at = self.locate(x);
        if at.kind == CycleKind::Forward && at.pos == 0 {
            return None;
        }
        Some(self.point(Coord { pos: at.kind.wrap(at.pos - 1), ..at }))
    }

    /// The root of the `copy`-th forward cycle.
    pub fn root(&self, copy: u64) -> u64 {
        self.point(Coord::new(CycleKind::Forward, copy, 0))
    }

    pub fn coimage_points(&self) -> Coimage {
        DressedMap::canonical_of(self.clone()).coimage_points()
    }
}

/// The cycle structure underneath a dressed map.
#[derive(Clone, Debug)]
pub(crate) enum Base {
    Canonical(CanonicalMap),
    /// `x ↦ x + k`: `k` forward cycles, the residues modulo `k`.
    Shift(u64),
}

impl Base {
    pub(crate) fn locate(&self, x: u64) -> Coord {
        match self {
            Base::Canonical(c) => c.locate(x),
            Base::Shift(k) => Coord::new(CycleKind::Forward, x % k, (x / k) as i64),
        }
    }

    pub(crate) fn point(&self, at: Coord) -> u64 {
        match self {
            Base::Canonical(c) => c.point(at),
            Base::Shift(k) => {
                debug_assert!(at.kind == CycleKind::Forward && at.copy < *k && at.pos >= 0);
                at.copy + at.pos as u64 * k
            }
        }
    }

    pub(crate) fn cycle_type(&self) -> CycleType {
        match self {
            Base::Canonical(c) => c.cycle_type().clone(),
            Base::Shift(k) => CycleType::shift(*k),
        }
    }

    pub(crate) fn eval(&self, x: u64) -> u64 {
        self.point(self.locate(x).step())
    }

    pub(crate) fn preimage(&self, x: u64) -> Option<u64> {
        let at = self.locate(x);
        if at.kind == CycleKind::Forward && at.pos == 0 {
            return None;
        }
        Some(self.point(Coord { pos: at.kind.wrap(at.pos - 1), ..at }))
    }
}

/// `x ↦ (((x)p)base)q` over an arbitrary base; the object of the exact-type analysis.
#[derive(Clone, Debug)]
pub(crate) struct Dressed {
    pub(crate) p: FinitaryPerm,
    pub(crate) base: Base,
    pub(crate) q: FinitaryPerm,
}

impl Dressed {
    pub(crate) fn eval(&self, x: u64) -> u64 {
        self.q.apply(self.base.eval(self.p.apply(x)))
    }

    pub(crate) fn preimage(&self, y: u64) -> Option<u64> {
        self.base.preimage(self.q.apply_inv(y)).map(|x| self.p.apply_inv(x))
    }
}

/// A canonical map dressed on both sides by finitary permutations: `x ↦ (((x)p)c)q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DressedMap {
    p: FinitaryPerm,
    base: CanonicalMap,
    q: FinitaryPerm,
}

impl DressedMap {
    pub fn new(p: FinitaryPerm, base: CanonicalMap, q: FinitaryPerm) -> Self {
        DressedMap { p, base, q }
    }

    /// The canonical map of `ty`, undressed.
    pub fn canonical(ty: &CycleType) -> Result<Self, CycleTypeError> {
        Ok(DressedMap::canonical_of(CanonicalMap::new(ty)?))
    }

    fn canonical_of(base: CanonicalMap) -> Self {
        DressedMap { p: FinitaryPerm::identity(), base, q: FinitaryPerm::identity() }
    }

    pub fn p(&self) -> &FinitaryPerm {
        &self.p
    }

    pub fn base(&self) -> &CanonicalMap {
        &self.base
    }

    pub fn q(&self) -> &FinitaryPerm {
        &self.q
    }

    pub fn base_type(&self) -> &CycleType {
        self.base.cycle_type()
    }

    pub(crate) fn dressed(&self) -> Dressed {
        Dressed { p: self.p.clone(), base: Base::Canonical(self.base.clone()), q: self.q.clone() }
    }

    pub(crate) fn analysis(&self) -> Analysis {
        Analysis::new(&self.dressed())
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.q.apply(self.base.eval(self.p.apply(x)))
    }

    /// The unique `x` with `eval(x) = y`, or `None` when `y` is outside the image.
    pub fn preimage(&self, y: u64) -> Option<u64> {
        self.base.preimage(self.q.apply_inv(y)).map(|x| self.p.apply_inv(x))
    }

    /// `|ℕ ∖ image|`, which the finitary dressing does not change.
    pub fn coimage(&self) -> ExtNat {
        self.base_type().coimage()
    }

    /// The points outside the image: the `q`-images of the forward-cycle roots.
    pub fn coimage_points(&self) -> Coimage {
        match self.coimage() {
            ExtNat::Fin(k) => Coimage::Finite((0..k).map(|c| self.q.apply(self.base.root(c))).collect()),
            ExtNat::Omega => {
                let this = self.clone();
                Coimage::Infinite(Box::new((0..).map(move |c| this.q.apply(this.base.root(c)))))
            }
        }
    }

    /// The true cycle type of this map.
    pub fn exact_type(&self) -> CycleType {
        self.analysis().cycle_type().clone()
    }

    /// `f·h`: this map followed by `h`.
    pub fn then_perm(&self, h: &FinitaryPerm) -> DressedMap {
        DressedMap { p: self.p.clone(), base: self.base.clone(), q: self.q.then(h) }
    }

    /// `h·f`: `h` followed by this map.
    pub fn perm_then(&self, h: &FinitaryPerm) -> DressedMap {
        DressedMap { p: h.then(&self.p), base: self.base.clone(), q: self.q.clone() }
    }

    /// The conjugate `a·f·a⁻¹` (apply `a`, then this map, then `a⁻¹`); same cycle type.
    pub fn conjugate(&self, a: &FinitaryPerm) -> DressedMap {
        DressedMap { p: a.then(&self.p), base: self.base.clone(), q: self.q.then(&a.inverse()) }
    }

    /// The inverse map of a dressed permutation: `q⁻¹ · c⁻¹ · p⁻¹`.
    pub fn inverse(&self) -> Option<InverseMap> {
        let base = self.base.inverse()?;
        Some(InverseMap(Dressed { p: self.q.inverse(), base: Base::Canonical(base), q: self.p.inverse() }))
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<DressedMap, ParseError> {
        c.expect("dmap(p=")?;
        let p = FinitaryPerm::parse_from(c)?;
        c.expect(",t=")?;
        let at = c.pos();
        let ty = CycleType::parse_from(c)?;
        let base = CanonicalMap::new(&ty).map_err(|e| c.error_at(at, e.to_string()))?;
        c.expect(",q=")?;
        let q = FinitaryPerm::parse_from(c)?;
        c.expect(")")?;
        Ok(DressedMap { p, base, q })
    }
}

impl fmt::Display for DressedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dmap(p={},t={},q={})", self.p, self.base_type(), self.q)
    }
}

impl FromStr for DressedMap {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::whole(s, DressedMap::parse_from)
    }
}

/// The inverse of a dressed permutation. Its canonical part runs cycles backwards, which
/// the `dmap(..)` syntax cannot express, so it is a separate type.
#[derive(Clone, Debug)]
pub struct InverseMap(Dressed);

impl InverseMap {
    pub fn eval(&self, x: u64) -> u64 {
        self.0.eval(x)
    }

    pub fn preimage(&self, y: u64) -> Option<u64> {
        self.0.preimage(y)
    }

    pub fn exact_type(&self) -> CycleType {
        Analysis::new(&self.0).cycle_type().clone()
    }
}

/// Points outside the image of a map.
pub enum Coimage {
    Finite(Vec<u64>),
    /// Infinitely many; enumerated lazily.
    Infinite(Box<dyn Iterator<Item = u64> + Send>),
}

impl Coimage {
    pub fn size(&self) -> ExtNat {
        match self {
            Coimage::Finite(v) => ExtNat::Fin(v.len() as u64),
            Coimage::Infinite(_) => ExtNat::Omega,
        }
    }
}

impl fmt::Debug for Coimage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coimage::Finite(v) => f.debug_tuple("Finite").field(v).finish(),
            Coimage::Infinite(_) => f.write_str("Infinite(..)"),
        }
    }
}

/// A composite `f₁·f₂·…·f_k` of dressed maps, applied left to right.
#[derive(Clone, Debug)]
pub struct ComposedMap {
    factors: Vec<DressedMap>,
}

/// `f·g`: apply `f`, then `g`.
pub fn compose(f: &DressedMap, g: &DressedMap) -> ComposedMap {
    ComposedMap { factors: vec![f.clone(), g.clone()] }
}

impl ComposedMap {
    pub fn new(factors: Vec<DressedMap>) -> Self {
        ComposedMap { factors }
    }

    pub fn factors(&self) -> &[DressedMap] {
        &self.factors
    }

    /// Appends one more factor on the right.
    pub fn then(mut self, g: &DressedMap) -> Self {
        self.factors.push(g.clone());
        self
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.factors.iter().fold(x, |x, f| f.eval(x))
    }

    pub fn preimage(&self, y: u64) -> Option<u64> {
        self.factors.iter().rev().try_fold(y, |y, f| f.preimage(y))
    }

    /// Sum of the factors' coimage sizes, exact without analysing the composite.
    pub fn coimage(&self) -> ExtNat {
        self.factors.iter().map(DressedMap::coimage).sum()
    }

    /// `ℕ ∖ image(f₁…f_k)` is the disjoint union over `j` of the coimage of `f_j` pushed
    /// through `f_{j+1}…f_k`.
    pub fn coimage_points(&self) -> Coimage {
        let push = |j: usize, x: u64| self.factors[j + 1..].iter().fold(x, |x, f| f.eval(x));
        let mut finite = Vec::new();
        let mut infinite = Vec::new();
        for (j, f) in self.factors.iter().enumerate() {
            match f.coimage_points() {
                Coimage::Finite(v) => finite.extend(v.into_iter().map(|x| push(j, x))),
                Coimage::Infinite(_) => infinite.push(j),
            }
        }
        if infinite.is_empty() {
            return Coimage::Finite(finite);
        }
        // Finite contributions first, then the infinite ones interleaved round-robin.
        let this = self.clone();
        let interleaved = (0u64..).flat_map(move |c| {
            let this = this.clone();
            infinite.clone().into_iter().map(move |j| {
                let f = &this.factors[j];
                let root = f.q.apply(f.base.root(c));
                this.factors[j + 1..].iter().fold(root, |x, g| g.eval(x))
            })
        });
        Coimage::Infinite(Box::new(finite.into_iter().chain(interleaved)))
    }
}

#[cfg(test)]
mod tests;
