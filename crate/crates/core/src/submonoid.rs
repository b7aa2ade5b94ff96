//! Normal submonoids of the monoid of injective maps, described by four pieces of data:
//! the group of units (one of four normal subgroups of the symmetric group), the numerical
//! monoid of coimage sizes, finitely many classes of maps whose coimage size is a minimal
//! generator, and whether all maps with infinite coimage belong.
//!
//! Membership only depends on the cycle type, so every query takes a [`CycleType`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycletype::{ClassKind, CycleType, ExtNat, SymClass};
use crate::numonoid::NumericalMonoid;
use crate::parse::{self, Cursor, ParseError};

/// The four normal subgroups of the symmetric group, ordered by inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitsLabel {
    Trivial,
    Alt,
    Fin,
    Sym,
}

impl UnitsLabel {
    pub const ALL: [UnitsLabel; 4] = [UnitsLabel::Trivial, UnitsLabel::Alt, UnitsLabel::Fin, UnitsLabel::Sym];

    pub fn name(self) -> &'static str {
        match self {
            UnitsLabel::Trivial => "trivial",
            UnitsLabel::Alt => "alt",
            UnitsLabel::Fin => "fin",
            UnitsLabel::Sym => "sym",
        }
    }

    /// The least normal subgroup containing a permutation of this class.
    pub fn of_class(class: SymClass) -> Option<UnitsLabel> {
        match class {
            SymClass::NotAPermutation => None,
            SymClass::Identity => Some(UnitsLabel::Trivial),
            SymClass::EvenFinitary => Some(UnitsLabel::Alt),
            SymClass::OddFinitary => Some(UnitsLabel::Fin),
            SymClass::Infinitary => Some(UnitsLabel::Sym),
        }
    }

    /// The relation that orbits of maps with the given kind form under dressing by these
    /// units; `None` for `Sym`, where whole coimage fibres are forced.
    pub fn relation_for(self, kind: ClassKind) -> Option<ClassRelation> {
        match self {
            UnitsLabel::Trivial => Some(ClassRelation::Conjugacy),
            UnitsLabel::Alt if kind == ClassKind::SingleInfiniteFiniteCounts => Some(ClassRelation::EvenRel),
            UnitsLabel::Alt | UnitsLabel::Fin => Some(ClassRelation::FinRel),
            UnitsLabel::Sym => None,
        }
    }
}

impl fmt::Display for UnitsLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassRelation {
    Conjugacy,
    FinRel,
    EvenRel,
}

impl ClassRelation {
    pub fn name(self) -> &'static str {
        match self {
            ClassRelation::Conjugacy => "conj",
            ClassRelation::FinRel => "fin",
            ClassRelation::EvenRel => "even",
        }
    }

    pub fn relates(self, a: &CycleType, b: &CycleType) -> bool {
        match self {
            ClassRelation::Conjugacy => a.conjugate_equal(b),
            ClassRelation::FinRel => a.approx_fin(b),
            ClassRelation::EvenRel => a.approx_even(b),
        }
    }
}

/// The class of `representative` under `relation`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassDescriptor {
    pub relation: ClassRelation,
    pub representative: CycleType,
}

impl ClassDescriptor {
    pub fn new(relation: ClassRelation, representative: CycleType) -> Self {
        ClassDescriptor { relation, representative }
    }

    pub fn contains(&self, t: &CycleType) -> bool {
        self.relation.relates(&self.representative, t)
    }

    pub fn coimage(&self) -> ExtNat {
        self.representative.coimage()
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class({}, {})", self.relation.name(), self.representative)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("class {0}: representative is not a valid cycle type")]
    InvalidRepresentative(usize),
    #[error("class {0}: representative needs finitely many and at least one forward cycle")]
    NotFiniteCoimage(usize),
    #[error("class {index}: relation {found} does not match units {units} (expected {expected})")]
    RelationMismatch { index: usize, units: UnitsLabel, found: &'static str, expected: &'static str },
    #[error("class {0}: even relation needs exactly one infinite cycle and finite counts")]
    EvenOutsideSingleInfinite(usize),
    #[error("units sym force whole coimage fibres; classes must be empty")]
    ClassesUnderSym,
    #[error("class {0}: coimage {1} is not a minimal generator of the monoid")]
    CoimageNotGenerator(usize, u64),
    #[error("minimal generator {0} has no class")]
    GeneratorWithoutClass(u64),
    #[error("classes {0} and {1} describe the same set")]
    Redundant(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SubmonoidError {
    #[error("invalid descriptor: {}", join(.0))]
    InvalidDescriptor(Vec<Violation>),
    #[error("invalid cycle type: {0}")]
    InvalidType(#[from] crate::cycletype::CycleTypeError),
    #[error("generator {0} is not allowed here: {1}")]
    InvalidGenerator(CycleType, &'static str),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A normal submonoid `M = M_gp ∪ M_fin ∪ M_∞`.
///
/// `M_gp` is given by `units`; `M_fin` consists of the maps whose coimage size lies in
/// `monoid ∖ {0}`, restricted to `b_classes` when the size is a minimal generator (with
/// units `Sym` the whole fibre); `M_∞` is everything with infinite coimage or nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmonoidDescriptor {
    pub units: UnitsLabel,
    pub monoid: NumericalMonoid,
    pub b_classes: Vec<ClassDescriptor>,
    pub has_infinity: bool,
}

impl SubmonoidDescriptor {
    /// All of `Inj(Ω)`.
    pub fn full() -> Self {
        SubmonoidDescriptor {
            units: UnitsLabel::Sym,
            monoid: NumericalMonoid::generate([1]),
            b_classes: Vec::new(),
            has_infinity: true,
        }
    }

    /// Every violated condition; empty exactly when the described set is a normal
    /// submonoid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.units == UnitsLabel::Sym && !self.b_classes.is_empty() {
            out.push(Violation::ClassesUnderSym);
        }
        let mut coimages = Vec::new();
        for (i, class) in self.b_classes.iter().enumerate() {
            let rep = &class.representative;
            if !rep.is_valid() {
                out.push(Violation::InvalidRepresentative(i));
                continue;
            }
            let Some(k) = rep.fwd().finite().filter(|&k| k >= 1) else {
                out.push(Violation::NotFiniteCoimage(i));
                continue;
            };
            coimages.push(k);
            if !self.monoid.is_min_gen(k) {
                out.push(Violation::CoimageNotGenerator(i, k));
            }
            let kind = rep.class_kind();
            if class.relation == ClassRelation::EvenRel && kind != ClassKind::SingleInfiniteFiniteCounts {
                out.push(Violation::EvenOutsideSingleInfinite(i));
            } else if let Some(expected) = self.units.relation_for(kind) {
                if expected != class.relation {
                    out.push(Violation::RelationMismatch {
                        index: i,
                        units: self.units,
                        found: class.relation.name(),
                        expected: expected.name(),
                    });
                }
            }
        }
        if self.units != UnitsLabel::Sym {
            for &g in self.monoid.min_gens() {
                if !coimages.contains(&g) {
                    out.push(Violation::GeneratorWithoutClass(g));
                }
            }
        }
        for (i, a) in self.b_classes.iter().enumerate() {
            for (j, b) in self.b_classes.iter().enumerate().skip(i + 1) {
                if a.relation == b.relation && a.representative.is_valid() && a.contains(&b.representative) {
                    out.push(Violation::Redundant(i, j));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    pub fn member(&self, t: &CycleType) -> Result<bool, SubmonoidError> {
        self.validate().map_err(SubmonoidError::InvalidDescriptor)?;
        t.validate()?;
        Ok(self.member_unchecked(t))
    }

    /// Membership without validating the descriptor or the type first.
    pub fn member_unchecked(&self, t: &CycleType) -> bool {
        match t.coimage() {
            ExtNat::Fin(0) => match UnitsLabel::of_class(t.sym_class()) {
                Some(needed) => needed <= self.units,
                None => false,
            },
            ExtNat::Omega => self.has_infinity,
            ExtNat::Fin(k) => {
                if !self.monoid.contains(k) {
                    false
                } else if self.monoid.in_nongenerator_part(k) || self.units == UnitsLabel::Sym {
                    true
                } else {
                    self.b_classes.iter().any(|c| c.coimage() == ExtNat::Fin(k) && c.contains(t))
                }
            }
        }
    }

    /// The least normal submonoid containing maps of the given types.
    ///
    /// `units_gens` must be permutation types, `fin_gens` types with finitely many, and
    /// at least one, forward cycles; `infinity_gen` adds a map with infinite coimage.
    pub fn generate(
        units_gens: &[CycleType],
        fin_gens: &[CycleType],
        infinity_gen: bool,
    ) -> Result<SubmonoidDescriptor, SubmonoidError> {
        let mut units = UnitsLabel::Trivial;
        for t in units_gens {
            t.validate()?;
            let label = UnitsLabel::of_class(t.sym_class())
                .ok_or_else(|| SubmonoidError::InvalidGenerator(t.clone(), "units generators must be permutations"))?;
            units = units.max(label);
        }
        let mut coimages = Vec::new();
        for t in fin_gens {
            t.validate()?;
            match t.fwd().finite() {
                Some(k) if k >= 1 => coimages.push(k),
                _ => {
                    return Err(SubmonoidError::InvalidGenerator(
                        t.clone(),
                        "needs finitely many and at least one forward cycle",
                    ))
                }
            }
        }
        let monoid = NumericalMonoid::generate(coimages.iter().copied());
        let mut b_classes: Vec<ClassDescriptor> = Vec::new();
        for (t, &k) in fin_gens.iter().zip(&coimages) {
            if !monoid.is_min_gen(k) {
                continue;
            }
            let Some(relation) = units.relation_for(t.class_kind()) else { continue };
            let class = ClassDescriptor::new(relation, t.clone());
            if !b_classes.iter().any(|c| c.relation == relation && c.contains(t)) {
                b_classes.push(class);
            }
        }
        Ok(SubmonoidDescriptor { units, monoid, b_classes, has_infinity: infinity_gen })
    }

    fn parse_from(c: &mut Cursor<'_>) -> Result<SubmonoidDescriptor, ParseError> {
        c.expect("units=")?;
        let at = c.pos();
        let units = match c.word() {
            "trivial" => UnitsLabel::Trivial,
            "alt" => UnitsLabel::Alt,
            "fin" => UnitsLabel::Fin,
            "sym" => UnitsLabel::Sym,
            _ => return Err(c.error_at(at, "expected one of `trivial`, `alt`, `fin`, `sym`")),
        };
        separator(c)?;
        let monoid = NumericalMonoid::parse_from(c)?;
        let mut b_classes = Vec::new();
        loop {
            separator(c)?;
            if !c.eat("class(") {
                break;
            }
            c.skip_ws();
            let at = c.pos();
            let relation = match c.word() {
                "conj" => ClassRelation::Conjugacy,
                "fin" => ClassRelation::FinRel,
                "even" => ClassRelation::EvenRel,
                _ => return Err(c.error_at(at, "expected one of `conj`, `fin`, `even`")),
            };
            c.skip_ws();
            c.expect(",")?;
            c.skip_ws();
            let representative = CycleType::parse_from(c)?;
            c.skip_ws();
            c.expect(")")?;
            b_classes.push(ClassDescriptor { relation, representative });
        }
        c.expect("inf=")?;
        let at = c.pos();
        let has_infinity = match c.word() {
            "yes" => true,
            "no" => false,
            _ => return Err(c.error_at(at, "expected `yes` or `no`")),
        };
        Ok(SubmonoidDescriptor { units, monoid, b_classes, has_infinity })
    }
}

fn separator(c: &mut Cursor<'_>) -> Result<(), ParseError> {
    c.skip_ws();
    c.expect(";")?;
    c.skip_ws();
    Ok(())
}

impl fmt::Display for SubmonoidDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "units={}; {}", self.units, self.monoid)?;
        for class in &self.b_classes {
            write!(f, "; {class}")?;
        }
        write!(f, "; inf={}", if self.has_infinity { "yes" } else { "no" })
    }
}

impl FromStr for SubmonoidDescriptor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::whole(s, SubmonoidDescriptor::parse_from)
    }
}
