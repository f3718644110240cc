//! Absolutely graded modules over `F[U]` built from towers `T⁺_d` and finite
//! ladders `τ_d(N)`.
//!
//! All gradings are exact rationals. `U` lowers grading by 2, so a ladder
//! `τ_d(N)` has basis gradings `d, d+2, …, d+2(N-1)`, with `d` the grading of
//! the generator `1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational homological degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Grading(Rational64);

impl Grading {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Grading(Rational64::new(num, den))
    }

    pub fn int(n: i64) -> Self {
        Grading(Rational64::from_integer(n))
    }

    pub fn zero() -> Self {
        Grading(Rational64::zero())
    }

    pub fn from_ratio(r: Rational64) -> Self {
        Grading(r)
    }

    pub fn ratio(&self) -> Rational64 {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `self + 2k`.
    pub fn shift(&self, k: i64) -> Self {
        Grading(self.0 + Rational64::from_integer(2 * k))
    }

    pub fn scale(&self, k: i64) -> Self {
        Grading(self.0 * Rational64::from_integer(k))
    }

    pub fn half(&self) -> Self {
        Grading(self.0 / Rational64::from_integer(2))
    }

    pub fn div_int(&self, k: i64) -> Self {
        Grading(self.0 / Rational64::from_integer(k))
    }

    /// Integer difference `self - other`, if it is one.
    pub fn int_offset(&self, other: Grading) -> Option<i64> {
        let diff = self.0 - other.0;
        if diff.is_integer() {
            Some(diff.to_integer())
        } else {
            None
        }
    }

    /// Parity of `self - reference`.
    pub fn parity_from(&self, reference: Grading) -> Result<Parity> {
        self.int_offset(reference)
            .map(Parity::of)
            .ok_or_else(|| Error::InvalidGrading(format!("{self} - {reference} is not an integer")))
    }

    pub fn floor(&self) -> i64 {
        self.0.floor().to_integer()
    }

    /// Asserts the denominator divides `bound`.
    pub fn check_denominator(&self, bound: i64) -> Result<()> {
        if bound != 0 && bound.abs() % self.denom() == 0 {
            Ok(())
        } else {
            Err(Error::InvalidGrading(format!(
                "denominator of {self} does not divide {bound}"
            )))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Self {
        Grading(self.0.abs())
    }
}

impl Add for Grading {
    type Output = Grading;
    fn add(self, rhs: Grading) -> Grading {
        Grading(self.0 + rhs.0)
    }
}

impl Sub for Grading {
    type Output = Grading;
    fn sub(self, rhs: Grading) -> Grading {
        Grading(self.0 - rhs.0)
    }
}

impl Neg for Grading {
    type Output = Grading;
    fn neg(self) -> Grading {
        Grading(-self.0)
    }
}

impl std::iter::Sum for Grading {
    fn sum<I: Iterator<Item = Grading>>(iter: I) -> Grading {
        iter.fold(Grading::zero(), |a, b| a + b)
    }
}

/// Always `num/den` with `den ≥ 1` and the fraction in lowest terms.
impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Grading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>().map_err(|_| bad())?,
                d.trim().parse::<i64>().map_err(|_| bad())?,
            ),
            None => (s.parse::<i64>().map_err(|_| bad())?, 1),
        };
        if den == 0 {
            return Err(bad());
        }
        Ok(Grading::new(num, den))
    }
}

impl Serialize for Grading {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Grading {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// `T⁺_d ≅ F[U, U⁻¹] / U·F[U]` with `1` in grading `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TowerSummand {
    pub d: Grading,
}

/// `τ_d(N)`: the span of `U^{-n}`, `0 ≤ n < N`, inside `T⁺_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteCyclic {
    pub d: Grading,
    pub length: u32,
}

impl FiniteCyclic {
    pub fn new(d: Grading, length: u32) -> Self {
        assert!(length > 0, "τ(0) is the zero module");
        FiniteCyclic { d, length }
    }

    pub fn top(&self) -> Grading {
        self.d.shift(self.length as i64 - 1)
    }

    pub fn basis_gradings(&self) -> impl Iterator<Item = Grading> + '_ {
        (0..self.length as i64).map(move |n| self.d.shift(n))
    }
}

/// A finite direct sum of towers and ladders.
///
/// Summands are kept sorted, so derived equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedModule {
    towers: Vec<TowerSummand>,
    finites: Vec<FiniteCyclic>,
}

impl GradedModule {
    pub fn new(towers: Vec<TowerSummand>, finites: Vec<FiniteCyclic>) -> Self {
        let mut m = GradedModule { towers, finites };
        m.towers.sort();
        m.finites.sort();
        m
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn tower(d: Grading) -> Self {
        Self::new(vec![TowerSummand { d }], vec![])
    }

    pub fn with_finite(mut self, d: Grading, length: u32) -> Self {
        self.push_finite(d, length);
        self
    }

    pub fn push_tower(&mut self, d: Grading) {
        let at = self.towers.partition_point(|t| t.d <= d);
        self.towers.insert(at, TowerSummand { d });
    }

    /// Adds `τ_d(length)`; zero lengths are dropped.
    pub fn push_finite(&mut self, d: Grading, length: u32) {
        if length == 0 {
            return;
        }
        let f = FiniteCyclic::new(d, length);
        let at = self.finites.partition_point(|x| *x <= f);
        self.finites.insert(at, f);
    }

    /// Removes one summand equal to `τ_d(length)`.
    pub fn remove_finite(&mut self, d: Grading, length: u32) -> bool {
        let f = FiniteCyclic { d, length };
        match self.finites.binary_search(&f) {
            Ok(pos) => {
                self.finites.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn towers(&self) -> &[TowerSummand] {
        &self.towers
    }

    pub fn finites(&self) -> &[FiniteCyclic] {
        &self.finites
    }

    pub fn reduced_dim(&self) -> u64 {
        self.finites.iter().map(|f| f.length as u64).sum()
    }

    /// Least `N` with `U^N` killing the reduced part.
    pub fn u_annihilation_exponent(&self) -> u32 {
        self.finites.iter().map(|f| f.length).max().unwrap_or(0)
    }

    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let mut towers = self.towers.clone();
        towers.extend_from_slice(&other.towers);
        let mut finites = self.finites.clone();
        finites.extend_from_slice(&other.finites);
        GradedModule::new(towers, finites)
    }

    /// Euler characteristic of the reduced part, each basis element counted
    /// by the parity of its grading relative to `reference`.
    pub fn z2_euler_characteristic(&self, reference: Grading) -> Result<i64> {
        let mut chi = 0;
        for f in &self.finites {
            for g in f.basis_gradings() {
                chi += g.parity_from(reference)?.sign();
            }
        }
        Ok(chi)
    }

    /// Dimension of the reduced part in each parity relative to `reference`.
    pub fn reduced_parity_dims(&self, reference: Grading) -> Result<BTreeMap<Parity, u64>> {
        let mut out = BTreeMap::new();
        for f in &self.finites {
            for g in f.basis_gradings() {
                *out.entry(g.parity_from(reference)?).or_insert(0) += 1;
            }
        }
        Ok(out)
    }

    /// Graded dimensions in all gradings `≤ ceiling`.
    pub fn graded_dims(&self, ceiling: Grading) -> BTreeMap<Grading, u64> {
        let mut out = BTreeMap::new();
        for t in &self.towers {
            let mut g = t.d;
            while g <= ceiling {
                *out.entry(g).or_insert(0) += 1;
                g = g.shift(1);
            }
        }
        for f in &self.finites {
            for g in f.basis_gradings().filter(|g| *g <= ceiling) {
                *out.entry(g).or_insert(0) += 1;
            }
        }
        out
    }

    /// Asserts every grading's denominator divides `bound`.
    pub fn check_denominators(&self, bound: i64) -> Result<()> {
        for t in &self.towers {
            t.d.check_denominator(bound)?;
        }
        for f in &self.finites {
            f.d.check_denominator(bound)?;
        }
        Ok(())
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.towers.iter().map(|t| format!("T_{{{}}}", t.d)).collect();
        parts.extend(self.finites.iter().map(|x| format!("τ_{{{}}}({})", x.d, x.length)));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SummandDoc {
    Tower { d: Grading },
    Finite { d: Grading, length: u32 },
}

impl Serialize for GradedModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let docs: Vec<SummandDoc> = self
            .towers
            .iter()
            .map(|t| SummandDoc::Tower { d: t.d })
            .chain(self.finites.iter().map(|f| SummandDoc::Finite { d: f.d, length: f.length }))
            .collect();
        docs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let docs = Vec::<SummandDoc>::deserialize(d)?;
        let mut m = GradedModule::empty();
        for doc in docs {
            match doc {
                SummandDoc::Tower { d } => m.push_tower(d),
                SummandDoc::Finite { d, length } => {
                    if length == 0 {
                        return Err(serde::de::Error::custom("finite summand of length 0"));
                    }
                    m.push_finite(d, length)
                }
            }
        }
        Ok(m)
    }
}
