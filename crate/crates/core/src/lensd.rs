//! Lens-space correction terms and mapping-cone slot bookkeeping.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gradedalg::Grading;

/// Surgery slope `p/q` in lowest terms, `q ≥ 1`, sign carried by `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    /// Reduces `p/q` and moves the sign onto `p`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("slope denominator is zero".into()));
        }
        if p == 0 {
            return Ok(Slope { p: 0, q: 1 });
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn integer(p: i64) -> Self {
        Slope { p, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `|H_1|` of the surgered manifold.
    pub fn order(&self) -> u64 {
        self.p.unsigned_abs()
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }

    pub fn spinc_indices(&self) -> impl Iterator<Item = SpincIndex> {
        (0..self.p.abs()).map(SpincIndex)
    }

    pub fn check_index(&self, i: SpincIndex) -> Result<()> {
        if self.p == 0 || i.0 < 0 || i.0 >= self.p.abs() {
            Err(Error::Domain(format!("Spin^c index {} out of range for slope {self}", i.0)))
        } else {
            Ok(())
        }
    }

    pub fn as_ratio(&self) -> Rational64 {
        Rational64::new(self.p, self.q)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad slope {s:?}, expected p/q"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (
                p.trim().parse::<i64>().map_err(|_| bad())?,
                q.trim().parse::<i64>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
        };
        Slope::new(p, q).map_err(|_| bad())
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Mapping-cone Spin^c label `i ∈ [0, |p|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpincIndex(pub i64);

/// Knot index of cone slot `n`: `⌊(i + p·n)/q⌋`, flooring toward `-∞`.
pub fn cone_index(i: SpincIndex, p: i64, q: i64, n: i64) -> i64 {
    debug_assert!(q >= 1);
    Integer::div_floor(&(i.0 + p * n), &q)
}

/// `d(L(p, q), i)`, the correction term of `p/q` surgery on the unknot in
/// Spin^c structure `i`. Negative `p` is the orientation reversal.
pub fn lens_d(p: i64, q: i64, i: SpincIndex) -> Result<Grading> {
    lens_d_traced(p, q, i).map(|(d, _)| d)
}

/// As [`lens_d`], also returning the sequence of `q` values visited by the
/// recursion.
pub fn lens_d_traced(p: i64, q: i64, i: SpincIndex) -> Result<(Grading, Vec<i64>)> {
    if p == 0 || q < 1 || p.gcd(&q) != 1 || i.0 < 0 || i.0 >= p.abs() {
        return Err(Error::Domain(format!("no lens space correction term for L({p},{q}), i = {}", i.0)));
    }
    let mut trace = Vec::new();
    let d = positive_lens_d(p.abs(), q, i.0, &mut trace);
    Ok((if p > 0 { d } else { -d }, trace))
}

// d(L(p,q),i) = -1/4 + (2i+1-p-q)^2/(4pq) - d(L(q, p mod q), i mod q)
fn positive_lens_d(p: i64, q: i64, i: i64, trace: &mut Vec<i64>) -> Grading {
    trace.push(q);
    if q == 0 {
        // L(1, 0) = S^3
        return Grading::zero();
    }
    let s = 2 * i + 1 - p - q;
    let term = Grading::new(s * s, 4 * p * q) - Grading::new(1, 4);
    term - positive_lens_d(q, p.rem_euclid(q), i.rem_euclid(q), trace)
}
