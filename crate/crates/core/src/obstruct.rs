//! Bounds and necessary conditions on surgeries: slope denominators, the
//! `M` and `c` invariants, alternating-knot enumeration, Seifert-fibred
//! criteria, Property S and recovery of L-space knots.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gradedalg::{Grading, Parity};
use crate::knotmodel::{AlexanderPolynomial, KnotSurgeryModel};
use crate::lensd::{lens_d, Slope, SpincIndex};
use crate::surgery::{full_surgery, ManifoldHF};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
        })
    }
}

/// One named check. `basis` states the criterion being evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: BTreeMap<String, String>,
    pub basis: String,
}

impl Check {
    fn new(name: &str, status: Status, basis: &str) -> Self {
        Check { name: name.into(), status, witness: BTreeMap::new(), basis: basis.into() }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.witness.insert(key.into(), value.to_string());
        self
    }

    fn status_if(name: &str, ok: bool, basis: &str) -> Self {
        Check::new(name, if ok { Status::Pass } else { Status::Fail }, basis)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl ObstructionReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ObstructionReport { subject: subject.into(), checks: vec![] }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn render_table(&self) -> String {
        let mut out = format!("# {}\n", self.subject);
        for c in &self.checks {
            let w: Vec<String> = c.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out += &format!("{:<24} {:<12} {}\n", c.name, c.status, w.join(" "));
        }
        out
    }
}

fn require_rational_sphere(y: &ManifoldHF) -> Result<i64> {
    if y.p == 0 {
        return Err(Error::Domain("this invariant needs |H1(Y)| > 0".into()));
    }
    Ok(y.p as i64)
}

/// `n(Y) = |H₁(Y)| + dim HF_red(Y)`, a bound on `|q|`.
pub fn slope_denominator_bound(y: &ManifoldHF) -> Result<u64> {
    require_rational_sphere(y)?;
    Ok(y.p + y.total_reduced_dim)
}

/// `M(Y, q) = (Σ_i d(L(p,q), i) - Σ_s d(Y, s)) / 2`, with `q` read mod `p`.
pub fn m_invariant(y: &ManifoldHF, q: i64) -> Result<Grading> {
    let p = require_rational_sphere(y)?;
    if q < 1 {
        return Err(Error::Domain(format!("q = {q} must be positive")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Domain(format!("L({p},{q}) is not a lens space: gcd is {}", p.gcd(&q))));
    }
    let q_red = if p == 1 { 1 } else { q.rem_euclid(p) };
    let lens: Grading = (0..p).map(|i| lens_d(p, q_red, SpincIndex(i))).collect::<Result<Vec<_>>>()?.into_iter().sum();
    let ds = y.d_invariants();
    if ds.len() as i64 != p {
        return Err(Error::Validation(format!("{} d-invariants listed for |H1| = {p}", ds.len())));
    }
    Ok((lens - ds.into_iter().sum::<Grading>()).half())
}

/// `c(Y) = max_q (dim HF_red(Y) + M(Y,q)) / q` over `1 ≤ q ≤ n(Y)` with
/// `gcd(p, q) = 1`, together with a maximizing `q`.
pub fn c_invariant_with_argmax(y: &ManifoldHF) -> Result<(Grading, i64)> {
    let p = require_rational_sphere(y)?;
    let n = slope_denominator_bound(y)? as i64;
    let dim = Grading::int(y.total_reduced_dim as i64);
    let mut best: Option<(Grading, i64)> = None;
    for q in (1..=n).filter(|q| p.gcd(q) == 1) {
        let val = (dim + m_invariant(y, q)?).div_int(q);
        if best.is_none_or(|(b, _)| val > b) {
            best = Some((val, q));
        }
    }
    Ok(best.expect("q = 1 is always admissible"))
}

pub fn c_invariant(y: &ManifoldHF) -> Result<Grading> {
    c_invariant_with_argmax(y).map(|(c, _)| c)
}

/// `Σ |t_i(K)| ≤ c(Y)`, necessary for `Y` to be positive surgery on `K`.
pub fn torsion_sum_check(model: &KnotSurgeryModel, y: &ManifoldHF) -> Result<Check> {
    let c = c_invariant(y)?;
    let t = model.torsion();
    let sum: i64 = t.iter().map(|x| x.abs()).sum();
    let basis = "sum of |t_i(K)| is at most c(Y)";
    let mut check = Check::status_if("torsion-sum", Grading::int(sum) <= c, basis).with("sum", sum).with("c", c);
    if sum > 0 {
        let (i, ti) = t.iter().enumerate().find(|(_, x)| **x != 0).unwrap();
        check = check.with("first_nonzero", format!("t_{i}={ti}"));
    }
    Ok(check)
}

/// `⌊3c(Y)⌋`, bounding the genus of alternating knots producing `Y`.
pub fn alternating_genus_bound(y: &ManifoldHF) -> Result<i64> {
    Ok(c_invariant(y)?.scale(3).floor())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub alexander: BTreeMap<i64, i64>,
    pub torsion: Vec<i64>,
    pub determinant: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub c: Grading,
    pub genus_bound: i64,
    pub candidates: Vec<Candidate>,
    pub truncated: bool,
}

impl Enumeration {
    pub fn polynomials(&self) -> BTreeSet<AlexanderPolynomial> {
        self.candidates.iter().map(|c| AlexanderPolynomial::from_map(&c.alexander).unwrap()).collect()
    }
}

/// Murasugi: alternating knots have `a_i ≠ 0` for `0 ≤ i ≤ deg Δ`.
pub fn murasugi_ok(alex: &AlexanderPolynomial) -> bool {
    alex.coeffs().iter().all(|a| *a != 0)
}

/// No `t_i = t_{i+1} = t_{i+2} = 0` with `i + 2 ≤ deg Δ`.
pub fn no_three_zero_torsion(alex: &AlexanderPolynomial) -> bool {
    let t = alex.torsion_coefficients();
    let deg = alex.degree();
    (0..=deg.saturating_sub(2)).filter(|i| i + 2 <= deg).all(|i| !(t[i] == 0 && t[i + 1] == 0 && t[i + 2] == 0))
}

/// Every sequence of length `len` with `Σ|t_i| ≤ budget`.
fn torsion_sequences(len: usize, budget: i64) -> Vec<Vec<i64>> {
    fn rec(prefix: &mut Vec<i64>, len: usize, budget: i64, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for x in -budget..=budget {
            prefix.push(x);
            rec(prefix, len, budget - x.abs(), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(len), len, budget, &mut out);
    out
}

/// Candidate Alexander polynomials of alternating knots with a surgery to `Y`:
/// torsion sequences `t_i`, `i < 3c(Y)`, with `Σ|t_i| ≤ c(Y)`, filtered by
/// Murasugi and the three-zeros rule. Stops after `max_candidates`.
pub fn enumerate_alternating_alexander(y: &ManifoldHF, max_candidates: Option<usize>) -> Result<Enumeration> {
    let c = c_invariant(y)?;
    let genus_bound = c.scale(3).floor();
    // i < 3c
    let len = (0..).find(|&i| Grading::int(i) >= c.scale(3)).unwrap() as usize;
    let budget = c.floor().max(0);
    let seqs = torsion_sequences(len, budget);
    let mut candidates: Vec<Candidate> = seqs
        .par_iter()
        .filter_map(|t| {
            let alex = AlexanderPolynomial::from_torsion(t);
            (murasugi_ok(&alex) && no_three_zero_torsion(&alex)).then(|| Candidate {
                torsion: alex.torsion_coefficients(),
                determinant: alex.determinant(),
                alexander: alex.to_map(),
            })
        })
        .collect();
    candidates.sort_by(|a, b| {
        (a.torsion.len(), &a.torsion).cmp(&(b.torsion.len(), &b.torsion))
    });
    let truncated = max_candidates.is_some_and(|m| candidates.len() > m);
    if let Some(m) = max_candidates {
        candidates.truncate(m);
    }
    Ok(Enumeration { c, genus_bound, candidates, truncated })
}

/// `U^{g + V_0}` kills `HF_red` of every surgery.
pub fn genus_bound_check(model: &KnotSurgeryModel, y: &ManifoldHF) -> Check {
    let u = y.u_annihilation_exponent() as i64;
    let bound = model.genus() as i64 + model.vh.v(0);
    Check::status_if("annihilation-genus", u <= bound, "U^(g + V_0) annihilates HF_red of every surgery")
        .with("u_exponent", u)
        .with("g_plus_v0", bound)
}

/// Largest `m ≥ 0` with `2m ≤ n - √n`, by integer squaring.
pub fn mccoy_threshold(n: i64) -> i64 {
    // 2m ≤ n - √n  ⇔  n - 2m ≥ 0 and n ≤ (n - 2m)²
    (0..).take_while(|m| n - 2 * m >= 0 && n <= (n - 2 * m) * (n - 2 * m)).last().unwrap_or(0)
}

fn first_violation(t: &[i64], from: usize, bad: impl Fn(i64) -> bool) -> Option<(usize, i64)> {
    t.iter().copied().enumerate().skip(from).find(|(_, x)| bad(*x))
}

/// Necessary conditions for `Y = S³_{p/q}(K)`, `p/q > 0`, to be a negatively
/// oriented Seifert fibred space.
pub fn seifert_negative_checks(model: &KnotSurgeryModel, slope: Slope, y: &ManifoldHF) -> Result<ObstructionReport> {
    if slope.p() <= 0 {
        return Err(Error::Domain(format!("Seifert checks need p/q > 0, got {slope}")));
    }
    let name = model.name.as_deref().unwrap_or("K");
    let mut rep = ObstructionReport::new(format!("negative Seifert orientation of S^3_{slope}({name})"));
    let g = model.genus() as i64;
    let t = model.torsion();
    let deg = model.alex.degree() as i64;
    let u = y.u_annihilation_exponent() as i64;
    let n = Integer::div_ceil(&slope.p(), &slope.q());
    let gt = model.vh.first_zero();
    let threshold = mccoy_threshold(n);

    rep.checks.push(
        Check::status_if("annihilation", u <= g, "U^g annihilates HF_red(Y)").with("u_exponent", u).with("g", g),
    );
    rep.checks.push(
        Check::status_if("mccoy", n - 2 * gt >= 0 && n <= (n - 2 * gt) * (n - 2 * gt), "2g~ <= n - sqrt(n), n = ceil(p/q)")
            .with("g_tilde", gt)
            .with("n", n),
    );

    let degree_check = |name: &str, basis: &str, applies: bool| {
        if !applies {
            return Check::new(name, Status::Inapplicable, basis);
        }
        Check::status_if(name, deg == g, basis).with("deg", deg).with("g", g)
    };

    let small = slope.as_ratio() <= num_rational::Rational64::from_integer(3);
    rep.checks.push(if small {
        match first_violation(&t, 0, |x| x > 0) {
            Some((i, x)) => Check::new("small-slope-torsion", Status::Fail, "p/q <= 3: every t_i <= 0").with("t", format!("t_{i}={x}")),
            None => Check::new("small-slope-torsion", Status::Pass, "p/q <= 3: every t_i <= 0"),
        }
    } else {
        Check::new("small-slope-torsion", Status::Inapplicable, "p/q <= 3: every t_i <= 0")
    });
    rep.checks.push(degree_check("small-slope-degree", "p/q <= 3: deg Δ = g", small));

    let tail = "t_i <= 0 for i >= floor((n - sqrt n)/2)";
    rep.checks.push(match first_violation(&t, threshold as usize, |x| x > 0) {
        Some((i, x)) => Check::new("torsion-tail", Status::Fail, tail).with("t", format!("t_{i}={x}")).with("threshold", threshold),
        None => Check::new("torsion-tail", Status::Pass, tail).with("threshold", threshold),
    });
    let big_genus = g > threshold;
    rep.checks.push(degree_check("genus-degree", "g > floor((n - sqrt n)/2) implies deg Δ = g", big_genus));
    let deep = u > y.p as i64 / 2;
    rep.checks.push(degree_check("annihilation-degree", "U^floor(|H1|/2) HF_red != 0 implies deg Δ = g", deep));

    let odd_basis = "HF_red(Y) is supported in odd Z/2 grading";
    let mut odd = Check::new("reduced-odd", Status::Pass, odd_basis);
    for s in &y.structures {
        let z = s.reduced_parity(false)?;
        if z.even > 0 {
            odd = Check::new("reduced-odd", Status::Fail, odd_basis).with("spinc", s.index).with("even_dim", z.even);
            break;
        }
    }
    rep.checks.push(odd);

    let red_basis = "every A^red_k is supported in odd Z/2 grading";
    let even_red = model.red.iter().find_map(|(k, ss)| ss.iter().find(|s| s.parity() == Parity::Even).map(|s| (k, *s)));
    rep.checks.push(match even_red {
        Some((k, s)) => Check::new("red-odd", Status::Fail, red_basis).with("k", k).with("offset", s.offset),
        None => Check::new("red-odd", Status::Pass, red_basis),
    });

    let parity_basis = "when deg Δ = g is forced, HFK^(K, g) is supported in odd degrees";
    let forced = small || big_genus || deep;
    rep.checks.push(match (forced, model.top_parity()) {
        (false, _) | (_, None) => Check::new("top-parity", Status::Inapplicable, parity_basis),
        (true, Some(p)) => Check::status_if("top-parity", p == Parity::Odd, parity_basis).with("parity", p),
    });
    Ok(rep)
}

/// Necessary conditions for a positive Seifert fibred surgery.
pub fn seifert_positive_checks(model: &KnotSurgeryModel) -> ObstructionReport {
    let name = model.name.as_deref().unwrap_or("K");
    let mut rep = ObstructionReport::new(format!("positive Seifert orientation for surgery on {name}"));
    let t = model.torsion();
    let basis = "every t_i(K) >= 0";
    rep.checks.push(match first_violation(&t, 0, |x| x < 0) {
        Some((i, x)) => Check::new("torsion-nonnegative", Status::Fail, basis).with("t", format!("t_{i}={x}")),
        None => Check::new("torsion-nonnegative", Status::Pass, basis),
    });
    let parity_basis = "HFK^(K, g) is supported in even degrees";
    rep.checks.push(match model.top_parity() {
        _ if model.is_trivial() => Check::new("top-parity", Status::Pass, parity_basis),
        None => Check::new("top-parity", Status::Inapplicable, parity_basis),
        Some(p) => Check::status_if("top-parity", p == Parity::Even, parity_basis).with("parity", p),
    });
    let (deg, g) = (model.alex.degree(), model.genus() as usize);
    rep.checks.push(Check::status_if("degree", deg == g, "deg Δ = g").with("deg", deg).with("g", g));
    rep
}

/// Reduced part concentrated in one `Z/2` grading (relative to each tower).
pub fn property_s_manifold(y: &ManifoldHF) -> Result<bool> {
    let mut seen: BTreeSet<Parity> = BTreeSet::new();
    for s in &y.structures {
        let z = s.reduced_parity(false)?;
        if z.even > 0 {
            seen.insert(Parity::Even);
        }
        if z.odd > 0 {
            seen.insert(Parity::Odd);
        }
    }
    Ok(seen.len() <= 1)
}

/// All `A^red` offsets share one parity.
pub fn property_s_knot(model: &KnotSurgeryModel) -> bool {
    model.red.is_empty() || model.red.common_parity().is_some()
}

/// Purely cosmetic surgeries are excluded for nontrivial knots with
/// Property S, and whenever `V_0` or `V̄_0` is nonzero.
pub fn cosmetic_exclusion(model: &KnotSurgeryModel) -> Check {
    let basis = "nontrivial knots with Property S, or with V_0 or Vbar_0 nonzero, have no purely cosmetic surgeries";
    if model.is_trivial() {
        return Check::new("cosmetic-exclusion", Status::Inapplicable, basis).with("reason", "trivial knot");
    }
    let v0 = model.vh.v(0);
    let vbar0 = model.mirror_vh().ok().map(|m| m.v(0));
    let s = property_s_knot(model);
    let mut c = Check::new("cosmetic-exclusion", Status::Fail, basis).with("property_s", s).with("v0", v0);
    if let Some(vb) = vbar0 {
        c = c.with("vbar0", vb);
    }
    if s {
        c.status = Status::Pass;
        c = c.with("reason", "property S");
    } else if v0 != 0 || vbar0.is_some_and(|v| v != 0) {
        c.status = Status::Pass;
        c = c.with("reason", "V_0 or Vbar_0 nonzero");
    }
    c
}

/// Alexander polynomial of an L-space knot `K` from `Y = S³_{p/q}(K)`,
/// `p/q ≤ 1`.
///
/// Across all Spin^c structures each knot index `k` fills `q` cone slots,
/// so the ladder lengths are `V_0` with multiplicity `q` (less `p` tower
/// slots when `p > 0`) and `V_j`, `j ≥ 1`, with multiplicity `2q`. At slope
/// 1, `V_0 = (d(L(1,1)) - d(Y)) / 2`. The result is checked by recomputing
/// the surgery.
pub fn recover_alexander_lspace(y: &ManifoldHF, slope: Slope) -> Result<AlexanderPolynomial> {
    let (p, q) = (slope.p(), slope.q());
    if p == 0 || slope.as_ratio() > num_rational::Rational64::from_integer(1) {
        return Err(Error::Domain(format!("recovery needs p ≠ 0 and p/q ≤ 1, got {slope}")));
    }
    if y.p != slope.order() {
        return Err(Error::NotLSpaceSurgery(format!("|H1| = {} does not match slope {slope}", y.p)));
    }
    let fail = |why: String| Error::NotLSpaceSurgery(why);
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for s in &y.structures {
        for f in s.module.finites() {
            *counts.entry(f.length as i64).or_insert(0) += 1;
        }
    }
    let mult0 = if p < 0 { q } else { q - p };
    let v0 = if mult0 == 0 {
        let s0 = y.structures.iter().find(|s| s.index == 0).ok_or_else(|| fail("no structure 0".into()))?;
        let d = s0.d.ok_or_else(|| fail("structure 0 has no d-invariant".into()))?;
        let twice = lens_d(p, q, SpincIndex(0))? - d;
        if !twice.is_integer() || twice.numer() % 2 != 0 || twice.numer() < 0 {
            return Err(fail(format!("d-invariant shift {twice} is not a non-negative even integer")));
        }
        twice.numer() / 2
    } else {
        counts.keys().next_back().copied().unwrap_or(0)
    };
    if v0 > 0 && mult0 > 0 {
        let c = counts.entry(v0).or_insert(0);
        *c -= mult0;
        if *c < 0 {
            return Err(fail(format!("V_0 = {v0} needs {mult0} ladders of that length")));
        }
    }
    let mut rest: Vec<i64> = Vec::new();
    for (&len, &c) in counts.iter().rev() {
        if c % (2 * q) != 0 {
            return Err(fail(format!("{c} ladders of length {len} is not a multiple of {}", 2 * q)));
        }
        rest.extend(std::iter::repeat_n(len, (c / (2 * q)) as usize));
    }
    let mut v = vec![v0];
    v.extend(rest);
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v == [0] {
        v.clear();
    }
    for w in v.windows(2) {
        if !(0..=1).contains(&(w[0] - w[1])) {
            return Err(fail(format!("V sequence {v:?} does not step down by 0 or 1")));
        }
    }
    if v.last().is_some_and(|x| *x != 1) {
        return Err(fail(format!("V sequence {v:?} does not end in 1")));
    }
    let alex = AlexanderPolynomial::from_torsion(&v);
    let model = KnotSurgeryModel::lspace_model(&alex).map_err(|e| fail(e.to_string()))?;
    let again = full_surgery(&model, slope)?;
    let same = again.structures.len() == y.structures.len()
        && again.structures.iter().all(|s| y.structures.iter().any(|t| t.index == s.index && t.module == s.module));
    if !same {
        return Err(fail(format!("surgery on the recovered L-space knot ({alex}) does not reproduce Y")));
    }
    Ok(alex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedalg::GradedModule;
    use crate::knotmodel::{RedSummand, ReducedGroupTable, VHData};
    use crate::surgery::SpincHF;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    fn lspace(coeffs: Vec<i64>) -> KnotSurgeryModel {
        KnotSurgeryModel::lspace_model(&AlexanderPolynomial::new(coeffs).unwrap()).unwrap()
    }

    fn k0() -> KnotSurgeryModel {
        KnotSurgeryModel {
            name: Some("K_0".into()),
            vh: VHData::zeros(2),
            red: ReducedGroupTable::symmetric(&[(1, RedSummand { offset: -1, length: 1 })]),
            alex: AlexanderPolynomial::new(vec![-1, 2, -1]).unwrap(),
            mirror_v: Some(VHData::zeros(2)),
            hfk_top_parity: None,
            g4: None,
        }
    }

    fn teragaito() -> ManifoldHF {
        full_surgery(&k0(), s(-4, 1)).unwrap()
    }

    #[test]
    fn slope_bounds() {
        let l51 = full_surgery(&KnotSurgeryModel::unknot(), s(5, 1)).unwrap();
        assert_eq!(slope_denominator_bound(&l51).unwrap(), 5);
        assert_eq!(slope_denominator_bound(&teragaito()).unwrap(), 6);
        let fake = ManifoldHF::new(
            2,
            vec![
                SpincHF::graded(0, GradedModule::tower(Grading::zero()).with_finite(Grading::zero(), 3)),
                SpincHF::graded(1, GradedModule::tower(Grading::zero())),
            ],
        );
        assert_eq!(slope_denominator_bound(&fake).unwrap(), 5);
    }

    #[test]
    fn m_and_c() {
        let l73 = full_surgery(&KnotSurgeryModel::unknot(), s(7, 3)).unwrap();
        assert_eq!(m_invariant(&l73, 3).unwrap(), Grading::zero());
        let s3 = full_surgery(&KnotSurgeryModel::unknot(), s(1, 1)).unwrap();
        assert_eq!(m_invariant(&s3, 1).unwrap(), Grading::zero());
        assert_eq!(c_invariant(&s3).unwrap(), Grading::zero());
        let y = teragaito();
        assert_eq!(m_invariant(&y, 1).unwrap(), Grading::new(1, 2));
        assert_eq!(c_invariant_with_argmax(&y).unwrap(), (Grading::new(5, 2), 1));
        assert_eq!(alternating_genus_bound(&y).unwrap(), 7);
        assert!(m_invariant(&y, 2).is_err());
    }

    #[test]
    fn c_of_lens_spaces_is_nonnegative() {
        for p in 1..8 {
            let l = full_surgery(&KnotSurgeryModel::unknot(), s(p, 1)).unwrap();
            assert!(c_invariant(&l).unwrap() >= Grading::zero());
        }
    }

    #[test]
    fn torsion_sums() {
        let y = teragaito();
        assert_eq!(torsion_sum_check(&KnotSurgeryModel::unknot(), &y).unwrap().status, Status::Pass);
        assert_eq!(torsion_sum_check(&k0(), &y).unwrap().status, Status::Pass);
        let s3 = full_surgery(&KnotSurgeryModel::unknot(), s(1, 1)).unwrap();
        let c = torsion_sum_check(&lspace(vec![-1, 1]), &s3).unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness["first_nonzero"], "t_0=1");
    }

    #[test]
    fn enumeration_small_c() {
        let s3 = full_surgery(&KnotSurgeryModel::unknot(), s(1, 1)).unwrap();
        let e = enumerate_alternating_alexander(&s3, None).unwrap();
        assert_eq!(e.polynomials(), BTreeSet::from([AlexanderPolynomial::unknot()]));
    }

    #[test]
    fn mccoy_threshold_exact() {
        // 2m ≤ n - √n
        assert_eq!(mccoy_threshold(1), 0);
        assert_eq!(mccoy_threshold(3), 0);
        assert_eq!(mccoy_threshold(4), 1);
        assert_eq!(mccoy_threshold(9), 3);
        assert_eq!(mccoy_threshold(10), 3);
    }

    #[test]
    fn trefoil_at_three_fails_mccoy() {
        let t = lspace(vec![-1, 1]);
        let y = full_surgery(&t, s(3, 1)).unwrap();
        let rep = seifert_negative_checks(&t, s(3, 1), &y).unwrap();
        assert_eq!(rep.check("mccoy").unwrap().status, Status::Fail);
        assert!(rep.any_failed());
    }

    #[test]
    fn vacuous_model_passes() {
        let mut m = k0();
        m.red = ReducedGroupTable::default();
        m.alex = AlexanderPolynomial::unknot();
        let y = full_surgery(&m, s(2, 1)).unwrap();
        let rep = seifert_negative_checks(&m, s(2, 1), &y).unwrap();
        for name in ["annihilation", "mccoy", "small-slope-torsion", "torsion-tail", "reduced-odd", "red-odd"] {
            assert_eq!(rep.check(name).unwrap().status, Status::Pass, "{name}");
        }
    }

    #[test]
    fn wu_checks() {
        assert!(!seifert_positive_checks(&lspace(vec![-1, 1])).any_failed());
        assert!(!seifert_positive_checks(&KnotSurgeryModel::unknot()).any_failed());
        let r = seifert_positive_checks(&k0());
        let c = r.check("torsion-nonnegative").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness["t"], "t_1=-1");
    }

    #[test]
    fn property_s_and_cosmetic() {
        let l = full_surgery(&KnotSurgeryModel::unknot(), s(5, 2)).unwrap();
        assert!(property_s_manifold(&l).unwrap());
        assert!(property_s_knot(&k0()));
        assert!(property_s_manifold(&teragaito()).unwrap());
        let mut mixed = k0();
        mixed.red = ReducedGroupTable::symmetric(&[
            (1, RedSummand { offset: -1, length: 1 }),
            (0, RedSummand { offset: 0, length: 1 }),
        ]);
        assert!(!property_s_knot(&mixed));
        assert_eq!(cosmetic_exclusion(&KnotSurgeryModel::unknot()).status, Status::Inapplicable);
        assert_eq!(cosmetic_exclusion(&lspace(vec![-1, 1])).status, Status::Pass);
        let c = cosmetic_exclusion(&k0());
        assert_eq!((c.status, c.witness["reason"].as_str()), (Status::Pass, "property S"));
        assert_eq!(cosmetic_exclusion(&mixed).status, Status::Fail);
    }

    #[test]
    fn recovery_examples() {
        let t = lspace(vec![-1, 1]);
        let y = full_surgery(&t, s(1, 1)).unwrap();
        assert_eq!(recover_alexander_lspace(&y, s(1, 1)).unwrap(), t.alex);
        let t52 = lspace(vec![1, -1, 1]);
        let y = full_surgery(&t52, s(-3, 2)).unwrap();
        assert_eq!(recover_alexander_lspace(&y, s(-3, 2)).unwrap(), t52.alex);
        let s3 = full_surgery(&KnotSurgeryModel::unknot(), s(1, 1)).unwrap();
        assert_eq!(recover_alexander_lspace(&s3, s(1, 1)).unwrap(), AlexanderPolynomial::unknot());
    }

    #[test]
    fn recovery_rejects_non_lspace_surgery() {
        let y = teragaito();
        assert!(matches!(recover_alexander_lspace(&y, s(-4, 1)), Err(Error::NotLSpaceSurgery(_))));
        assert!(recover_alexander_lspace(&y, s(4, 1)).is_err());
    }
}
