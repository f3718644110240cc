//! Knot-side input data: the `V`/`H` sequences, the reduced large-surgery
//! groups `A^red_k`, the Alexander polynomial and its torsion coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gradedalg::Parity;

/// Symmetrized Alexander polynomial `a_0 + Σ a_i (T^i + T^{-i})` with
/// `Δ(1) = 1`. Stores `a_0..a_D` with `a_D ≠ 0` (or just `[1]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlexanderPolynomial {
    coeffs: Vec<i64>,
}

impl AlexanderPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Result<Self> {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        let at_one = coeffs[0] + 2 * coeffs[1..].iter().sum::<i64>();
        if at_one != 1 {
            return Err(Error::Domain(format!(
                "Alexander polynomial is not normalized: Δ(1) = {at_one}"
            )));
        }
        Ok(AlexanderPolynomial { coeffs })
    }

    pub fn unknot() -> Self {
        AlexanderPolynomial { coeffs: vec![1] }
    }

    pub fn from_map(map: &BTreeMap<i64, i64>) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (&i, &a) in map {
            if i < 0 {
                return Err(Error::Parse(format!("Alexander index {i} is negative; store a_i for i ≥ 0 only")));
            }
            let i = i as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, 0);
            }
            coeffs[i] = a;
        }
        Self::new(coeffs)
    }

    /// Inverse of [`torsion_coefficients`](Self::torsion_coefficients):
    /// `a_i = t_{i-1} - 2t_i + t_{i+1}` for `i ≥ 1`, `a_0` from `Δ(1) = 1`.
    pub fn from_torsion(t: &[i64]) -> Self {
        let at = |i: usize| t.get(i).copied().unwrap_or(0);
        let mut coeffs: Vec<i64> = (0..=t.len()).map(|i| if i == 0 { 0 } else { at(i - 1) - 2 * at(i) + at(i + 1) }).collect();
        coeffs[0] = 1 - 2 * coeffs[1..].iter().sum::<i64>();
        Self::new(coeffs).expect("normalized by construction")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: i64) -> i64 {
        self.coeffs.get(i.unsigned_abs() as usize).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `t_i = Σ_{j≥1} j·a_{i+j}` for `i = 0..=deg`; `t_i = 0` beyond.
    pub fn torsion_coefficients(&self) -> Vec<i64> {
        let d = self.degree();
        (0..=d)
            .map(|i| (1..=d - i).map(|j| j as i64 * self.coeffs[i + j]).sum())
            .collect()
    }

    /// `|Δ(-1)|`.
    pub fn determinant(&self) -> u64 {
        let v: i64 = self.coeffs[0]
            + 2 * self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, a)| if (k + 1) % 2 == 0 { *a } else { -*a })
                .sum::<i64>();
        v.unsigned_abs()
    }

    pub fn to_map(&self) -> BTreeMap<i64, i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(i, a)| *i == 0 || **a != 0)
            .map(|(i, a)| (i as i64, *a))
            .collect()
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeffs[0])?;
        for (i, a) in self.coeffs.iter().enumerate().skip(1) {
            if *a != 0 {
                write!(f, " {} {}(T^{i}+T^-{i})", if *a < 0 { '-' } else { '+' }, a.abs())?;
            }
        }
        Ok(())
    }
}

/// `V_k` on the window `k = -(g-1)..=g-1`, with `H_k = V_{-k}`.
///
/// Outside the window `V_k = 0` for `k ≥ g` and `V_k = -k` for `k ≤ -g`
/// (the latter only feeds the brute-force cone; closed forms never read it).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VHData {
    genus: u32,
    window: Vec<i64>,
}

impl VHData {
    pub fn new(genus: u32, window: Vec<i64>) -> Result<Self> {
        let want = if genus == 0 { 0 } else { 2 * genus as usize - 1 };
        if window.len() != want {
            return Err(Error::Parse(format!(
                "V window for genus {genus} needs {want} entries, got {}",
                window.len()
            )));
        }
        Ok(VHData { genus, window })
    }

    pub fn zeros(genus: u32) -> Self {
        let len = if genus == 0 { 0 } else { 2 * genus as usize - 1 };
        VHData { genus, window: vec![0; len] }
    }

    /// Window from `V_k`, `k ≥ 0`, completed by `V_{-k} = V_k + k`.
    pub fn from_nonnegative(v: &[i64]) -> Self {
        let g = v.len();
        let mut window = Vec::with_capacity(2 * g.saturating_sub(1) + 1);
        for k in (1..g).rev() {
            window.push(v[k] + k as i64);
        }
        window.extend_from_slice(v);
        if g == 0 {
            window.clear();
        }
        VHData { genus: g as u32, window }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn v(&self, k: i64) -> i64 {
        let g = self.genus as i64;
        if k >= g {
            0
        } else if k <= -g {
            -k
        } else {
            self.window[(k + g - 1) as usize]
        }
    }

    pub fn h(&self, k: i64) -> i64 {
        self.v(-k)
    }

    /// Least `i ≥ 0` with `V_i = 0`.
    pub fn first_zero(&self) -> i64 {
        (0..).find(|&i| self.v(i) == 0).unwrap()
    }

    fn violations(&self, label: &str, out: &mut Vec<Violation>) {
        let g = self.genus as i64;
        for k in -(g - 1)..g {
            if self.v(k) < 0 {
                out.push(Violation::new("nonnegativity", format!("{label}_{k} = {} < 0", self.v(k))));
            }
        }
        for k in -g..g {
            if self.v(k) < self.v(k + 1) {
                out.push(Violation::new(
                    "monotonicity",
                    format!("{label}_{k} = {} < {label}_{} = {}", self.v(k), k + 1, self.v(k + 1)),
                ));
            }
        }
    }
}

/// One cyclic summand of `A^red_k`: generator sits `offset` above the grading
/// of `1` in the tower `A^T_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RedSummand {
    pub offset: i64,
    pub length: u32,
}

impl RedSummand {
    pub fn parity(&self) -> Parity {
        Parity::of(self.offset)
    }

    fn basis_offsets(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.length as i64).map(move |j| self.offset + 2 * j)
    }
}

/// `A^red_k` for every `k` with a nonzero group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ReducedGroupTable {
    groups: BTreeMap<i64, Vec<RedSummand>>,
}

impl ReducedGroupTable {
    pub fn new(groups: BTreeMap<i64, Vec<RedSummand>>) -> Self {
        let groups = groups
            .into_iter()
            .map(|(k, mut v)| {
                v.retain(|s| s.length > 0);
                v.sort();
                (k, v)
            })
            .filter(|(_, v)| !v.is_empty())
            .collect();
        ReducedGroupTable { groups }
    }

    /// Same summands at `k` and `-k`.
    pub fn symmetric(entries: &[(i64, RedSummand)]) -> Self {
        let mut groups: BTreeMap<i64, Vec<RedSummand>> = BTreeMap::new();
        for &(k, s) in entries {
            groups.entry(k).or_default().push(s);
            if k != 0 {
                groups.entry(-k).or_default().push(s);
            }
        }
        Self::new(groups)
    }

    pub fn at(&self, k: i64) -> &[RedSummand] {
        self.groups.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &[RedSummand])> {
        self.groups.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn dim_at(&self, k: i64) -> u64 {
        self.at(k).iter().map(|s| s.length as u64).sum()
    }

    /// `δ(K) = Σ_k dim A^red_k`.
    pub fn total_dim(&self) -> u64 {
        self.groups.keys().map(|k| self.dim_at(*k)).sum()
    }

    /// `χ(A^red_k)` with the tower `A^T_k` in even grading.
    pub fn euler_characteristic(&self, k: i64) -> i64 {
        self.at(k).iter().map(|s| s.length as i64 * s.parity().sign()).sum()
    }

    fn graded_offsets(&self, k: i64) -> Vec<i64> {
        let mut v: Vec<i64> = self.at(k).iter().flat_map(|s| s.basis_offsets().collect::<Vec<_>>()).collect();
        v.sort();
        v
    }

    /// Common parity of every summand, if there is one.
    pub fn common_parity(&self) -> Option<Parity> {
        let mut it = self.groups.values().flatten().map(RedSummand::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub invariant: String,
    pub detail: String,
}

impl Violation {
    fn new(invariant: &str, detail: String) -> Self {
        Violation { invariant: invariant.to_string(), detail }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.invariant, self.detail)
    }
}

/// Everything about a knot that the surgery formulas consume.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnotSurgeryModel {
    pub name: Option<String>,
    pub vh: VHData,
    pub red: ReducedGroupTable,
    pub alex: AlexanderPolynomial,
    /// `V̄` for the mirror image.
    pub mirror_v: Option<VHData>,
    /// Parity of the Maslov grading supporting `HFK^(K, g)`.
    pub hfk_top_parity: Option<Parity>,
    /// Optional slice-genus annotation.
    pub g4: Option<u32>,
}

impl KnotSurgeryModel {
    pub fn unknot() -> Self {
        KnotSurgeryModel {
            name: Some("unknot".into()),
            vh: VHData::zeros(0),
            red: ReducedGroupTable::default(),
            alex: AlexanderPolynomial::unknot(),
            mirror_v: Some(VHData::zeros(0)),
            hfk_top_parity: None,
            g4: Some(0),
        }
    }

    pub fn genus(&self) -> u32 {
        self.vh.genus()
    }

    pub fn delta(&self) -> u64 {
        self.red.total_dim()
    }

    pub fn is_lspace_shaped(&self) -> bool {
        self.red.is_empty()
    }

    pub fn torsion(&self) -> Vec<i64> {
        self.alex.torsion_coefficients()
    }

    pub fn torsion_at(&self, i: i64) -> i64 {
        self.torsion().get(i as usize).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.genus() == 0
    }

    /// `V̄`, falling back to zero for L-space-shaped models.
    pub fn mirror_vh(&self) -> Result<VHData> {
        match &self.mirror_v {
            Some(v) => Ok(v.clone()),
            None if self.is_lspace_shaped() => Ok(VHData::zeros(self.genus())),
            None => Err(Error::InsufficientData(
                "mirror V-data is required for a model with nonzero reduced groups".into(),
            )),
        }
    }

    /// Parity of the top knot Floer group `HFK^(K, g) ≅ τ(V_{g-1}) ⊕ A^red_{g-1}`
    /// (ladder in even grading), or the explicit flag. `None` when mixed or
    /// when the genus is zero.
    pub fn top_parity(&self) -> Option<Parity> {
        if let Some(p) = self.hfk_top_parity {
            return Some(p);
        }
        let g = self.genus() as i64;
        if g == 0 {
            return None;
        }
        let mut parities = self.red.at(g - 1).iter().map(RedSummand::parity).collect::<Vec<_>>();
        if self.vh.v(g - 1) > 0 {
            parities.push(Parity::Even);
        }
        let first = *parities.first()?;
        parities.iter().all(|p| *p == first).then_some(first)
    }

    /// The model for an L-space knot with this Alexander polynomial.
    pub fn lspace_model(alex: &AlexanderPolynomial) -> Result<Self> {
        if alex.degree() == 0 {
            return Ok(KnotSurgeryModel { alex: alex.clone(), ..Self::unknot() });
        }
        let t = alex.torsion_coefficients();
        let g = alex.degree();
        for k in 0..g {
            let drop = t[k] - t[k + 1];
            if !(0..=1).contains(&drop) {
                return Err(Error::NotLSpaceKnot(format!(
                    "t_{k} - t_{} = {drop} is not 0 or 1",
                    k + 1
                )));
            }
        }
        if t[g - 1] <= 0 {
            return Err(Error::NotLSpaceKnot(format!("t_{} = {} is not positive", g - 1, t[g - 1])));
        }
        Ok(KnotSurgeryModel {
            name: None,
            vh: VHData::from_nonnegative(&t[..g]),
            red: ReducedGroupTable::default(),
            alex: alex.clone(),
            mirror_v: Some(VHData::zeros(g as u32)),
            hfk_top_parity: None,
            g4: None,
        })
    }

    /// Model of the mirror image: swaps `V` and `V̄`; reduced groups are
    /// carried over unchanged. Fails with `InsufficientData` when the result
    /// is not a valid model, as for the mirror of a nontrivial L-space knot,
    /// whose reduced groups are not recorded here.
    pub fn mirror(&self) -> Result<Self> {
        let mirror_v = self.mirror_vh()?;
        let out = KnotSurgeryModel {
            name: self.name.as_ref().map(|n| format!("mirror({n})")),
            vh: mirror_v,
            red: self.red.clone(),
            alex: self.alex.clone(),
            mirror_v: Some(self.vh.clone()),
            hfk_top_parity: self.hfk_top_parity,
            g4: self.g4,
        };
        match out.validate().first() {
            None => Ok(out),
            Some(v) => Err(Error::InsufficientData(format!("mirror model is inconsistent: {}: {}", v.invariant, v.detail))),
        }
    }

    /// Every violated structural invariant; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let g = self.genus() as i64;
        self.vh.violations("V", &mut out);
        if let Some(mv) = &self.mirror_v {
            if mv.genus() != self.genus() {
                out.push(Violation::new(
                    "mirror-genus",
                    format!("mirror window has genus {}, model has {}", mv.genus(), g),
                ));
            }
            mv.violations("Vbar", &mut out);
        }
        for (k, summands) in self.red.iter() {
            if k.abs() >= g {
                out.push(Violation::new("red-support", format!("A^red_{k} nonzero but |k| ≥ g = {g}")));
            }
            for s in summands {
                if s.length as i64 > g {
                    out.push(Violation::new(
                        "red-length",
                        format!("summand of length {} in A^red_{k} exceeds g = {g}", s.length),
                    ));
                }
            }
            if self.red.graded_offsets(k) != self.red.graded_offsets(-k) {
                out.push(Violation::new("red-symmetry", format!("A^red_{k} and A^red_{} differ", -k)));
            }
        }
        if self.alex.degree() as i64 > g {
            out.push(Violation::new(
                "alexander-degree",
                format!("deg Δ = {} exceeds g = {g}", self.alex.degree()),
            ));
        }
        let t = self.torsion();
        let top = t.len().max(g as usize) as i64;
        for k in 0..top {
            let tk = self.torsion_at(k);
            let rhs = self.vh.v(k) + self.red.euler_characteristic(k);
            if tk != rhs {
                out.push(Violation::new(
                    "euler-consistency",
                    format!("t_{k} = {tk} but V_{k} + χ(A^red_{k}) = {rhs}"),
                ));
            }
        }
        if let Some(flag) = self.hfk_top_parity {
            for s in self.red.at(g - 1) {
                if s.parity() != flag {
                    out.push(Violation::new(
                        "top-parity",
                        format!("A^red_{} has a summand of {} parity, flag says {flag}", g - 1, s.parity()),
                    ));
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msg: Vec<String> = v.iter().map(ToString::to_string).collect();
            Err(Error::Validation(msg.join("; ")))
        }
    }
}

/// On-disk knot model document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotModelDoc {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub genus: u32,
    #[serde(rename = "V_window")]
    pub v_window: Vec<i64>,
    #[serde(default)]
    pub reduced: BTreeMap<String, Vec<(i64, u32)>>,
    pub alexander: BTreeMap<String, i64>,
    #[serde(rename = "mirror_V_window", default, skip_serializing_if = "Option::is_none")]
    pub mirror_v_window: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hfk_top_parity: Option<Parity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g4: Option<u32>,
}

pub const SCHEMA_VERSION: u32 = 1;

fn parse_key(field: &str, key: &str) -> Result<i64> {
    key.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{field}: key {key:?} is not an integer")))
}

impl TryFrom<KnotModelDoc> for KnotSurgeryModel {
    type Error = Error;

    fn try_from(doc: KnotModelDoc) -> Result<Self> {
        if doc.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!("schema: unsupported version {}", doc.schema)));
        }
        let vh = VHData::new(doc.genus, doc.v_window).map_err(|e| Error::Parse(format!("V_window: {e}")))?;
        let mirror_v = doc
            .mirror_v_window
            .map(|w| VHData::new(doc.genus, w))
            .transpose()
            .map_err(|e| Error::Parse(format!("mirror_V_window: {e}")))?;
        let mut groups = BTreeMap::new();
        for (k, list) in doc.reduced {
            let k = parse_key("reduced", &k)?;
            let mut v = Vec::new();
            for (offset, length) in list {
                if length == 0 {
                    return Err(Error::Parse(format!("reduced.{k}: summand length must be positive")));
                }
                v.push(RedSummand { offset, length });
            }
            groups.insert(k, v);
        }
        let mut coeffs = BTreeMap::new();
        for (i, a) in doc.alexander {
            coeffs.insert(parse_key("alexander", &i)?, a);
        }
        let alex = AlexanderPolynomial::from_map(&coeffs).map_err(|e| Error::Parse(format!("alexander: {e}")))?;
        Ok(KnotSurgeryModel {
            name: doc.name,
            vh,
            red: ReducedGroupTable::new(groups),
            alex,
            mirror_v,
            hfk_top_parity: doc.hfk_top_parity,
            g4: doc.g4,
        })
    }
}

impl From<&KnotSurgeryModel> for KnotModelDoc {
    fn from(m: &KnotSurgeryModel) -> Self {
        KnotModelDoc {
            schema: SCHEMA_VERSION,
            name: m.name.clone(),
            genus: m.genus(),
            v_window: m.vh.window().to_vec(),
            reduced: m
                .red
                .iter()
                .map(|(k, v)| (k.to_string(), v.iter().map(|s| (s.offset, s.length)).collect()))
                .collect(),
            alexander: m.alex.to_map().into_iter().map(|(i, a)| (i.to_string(), a)).collect(),
            mirror_v_window: m.mirror_v.as_ref().map(|v| v.window().to_vec()),
            hfk_top_parity: m.hfk_top_parity,
            g4: m.g4,
        }
    }
}

impl KnotSurgeryModel {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: KnotModelDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&KnotModelDoc::from(self)).expect("serializable")
    }
}
