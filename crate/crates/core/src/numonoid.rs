//! Additive submonoids of ℕ given by finitely many generators.
//!
//! Membership uses the Apéry set with respect to the smallest generator `m`: for each
//! residue `r mod m` we store the least element of the monoid congruent to `r`. Then
//! `n ∈ N` iff that least element exists and is `≤ n`, which answers every query in
//! constant time. Memory is proportional to the smallest generator.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::parse::{self, Cursor, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u64>", from = "Vec<u64>")]
pub struct NumericalMonoid {
    gens: Vec<u64>,
    gcd: u64,
    conductor_over_gcd: u64,
    /// `apery[r]`: least element congruent to `r` modulo the smallest generator.
    apery: Vec<Option<u64>>,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extends an Apéry table modulo `m` by one more generator `g`.
///
/// Residues split into `gcd(g, m)` orbits under `r ↦ r + g`; in each orbit one relaxation
/// pass starting from the current minimum is enough, since the minimum cannot improve.
fn add_generator(apery: &mut [Option<u64>], g: u64) {
    let m = apery.len() as u64;
    let step = (g % m) as usize;
    let orbits = gcd(g, m) as usize;
    let orbit_len = apery.len() / orbits;
    for start in 0..orbits {
        let mut best = None;
        let mut r = start;
        for _ in 0..orbit_len {
            if let Some(w) = apery[r] {
                if best.is_none_or(|(bw, _)| w < bw) {
                    best = Some((w, r));
                }
            }
            r = (r + step) % apery.len();
        }
        let Some((_, mut r)) = best else { continue };
        for _ in 0..orbit_len {
            let next = (r + step) % apery.len();
            let cand = apery[r].expect("orbit walk starts at a reachable residue").saturating_add(g);
            if apery[next].is_none_or(|w| cand < w) {
                apery[next] = Some(cand);
            }
            r = next;
        }
    }
}

impl NumericalMonoid {
    /// The monoid generated by `raw`; zeros are ignored and the result stores the unique
    /// minimal generating set.
    pub fn generate(raw: impl IntoIterator<Item = u64>) -> Self {
        let mut sorted: Vec<u64> = raw.into_iter().filter(|&g| g > 0).collect();
        sorted.sort_unstable();
        sorted.dedup();
        let Some(&m) = sorted.first() else {
            return NumericalMonoid { gens: Vec::new(), gcd: 0, conductor_over_gcd: 0, apery: Vec::new() };
        };
        let m_len = usize::try_from(m).expect("smallest generator exceeds the address space");
        let mut apery = vec![None; m_len];
        apery[0] = Some(0);
        let mut gens = vec![m];
        let mut d = m;
        for &g in &sorted[1..] {
            // Ascending order: g is redundant iff the smaller kept generators already reach it.
            if apery[(g % m) as usize].is_some_and(|w| w <= g) {
                continue;
            }
            add_generator(&mut apery, g);
            gens.push(g);
            d = gcd(d, g);
        }
        let max_apery = apery.iter().flatten().copied().max().unwrap_or(0);
        // Frobenius number of N/d is max_apery/d - m/d; the conductor is one more.
        let conductor_over_gcd = (max_apery / d + 1).saturating_sub(m / d);
        NumericalMonoid { gens, gcd: d, conductor_over_gcd, apery }
    }

    /// The trivial monoid `{0}`.
    pub fn zero() -> Self {
        NumericalMonoid::generate([])
    }

    pub fn contains(&self, n: u64) -> bool {
        match self.gens.first() {
            None => n == 0,
            Some(&m) => self.apery[(n % m) as usize].is_some_and(|w| w <= n),
        }
    }

    /// The unique minimal generating set, ascending.
    pub fn min_gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn is_min_gen(&self, n: u64) -> bool {
        self.gens.binary_search(&n).is_ok()
    }

    /// `n ∈ N ∖ (Gn(N) ∪ {0})`: elements that are sums of two nonzero elements.
    pub fn in_nongenerator_part(&self, n: u64) -> bool {
        n > 0 && self.contains(n) && !self.is_min_gen(n)
    }

    /// Greatest common divisor of the elements; 0 for the trivial monoid.
    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    /// Least `c` such that every multiple of the gcd from `c·gcd` on lies in the monoid.
    pub fn conductor_over_gcd(&self) -> u64 {
        self.conductor_over_gcd
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<NumericalMonoid, ParseError> {
        c.expect("nm(")?;
        let mut raw = Vec::new();
        if !c.at(")") {
            raw.push(c.uint()?);
            while c.eat(",") {
                raw.push(c.uint()?);
            }
        }
        c.expect(")")?;
        Ok(NumericalMonoid::generate(raw))
    }
}

impl From<Vec<u64>> for NumericalMonoid {
    fn from(raw: Vec<u64>) -> Self {
        NumericalMonoid::generate(raw)
    }
}

impl From<NumericalMonoid> for Vec<u64> {
    fn from(n: NumericalMonoid) -> Self {
        n.gens
    }
}

impl fmt::Display for NumericalMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("nm(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for NumericalMonoid {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::whole(s, NumericalMonoid::parse_from)
    }
}
