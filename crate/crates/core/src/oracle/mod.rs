//! Brute-force check of the closed forms: build a finite piece of the
//! mapping cone over `F_p`, take homology, compare grading by grading.

pub mod cone;
pub mod linalg;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gradedalg::Grading;
use crate::knotmodel::{AlexanderPolynomial, KnotSurgeryModel, RedSummand, ReducedGroupTable, VHData};
use crate::lensd::{cone_index, lens_d, Slope, SpincIndex};
use crate::surgery::{self, ConeGradings};
pub use cone::{build_cone, ASlot, BasisLabel, ConeInput, Part, RedPiece, Row, TruncatedCone};

/// How the reduced pieces are attached to the `B` towers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttachPolicy {
    /// Zero maps.
    Zero,
    /// Independent random coefficients on every admissible target.
    Random,
    /// Random maps that factor through the tower part of `A`; these never
    /// reach the cokernel of the tower map.
    TowerImage,
    /// `Random` for `p > 0`, `TowerImage` for `p < 0`.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleParams {
    /// `A` slots `n ∈ [-W, W]`; `None` picks the least exact window.
    pub window: Option<i64>,
    /// Keep basis elements up to `2M` above the highest core bottom.
    pub height: Option<u32>,
    pub characteristic: u32,
    pub seed: u64,
    pub attach: AttachPolicy,
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams { window: None, height: None, characteristic: 2, seed: 0, attach: AttachPolicy::Auto }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub grading: Grading,
    pub oracle: u64,
    pub closed_form: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub slope: Slope,
    pub index: i64,
    pub window: i64,
    pub height: u32,
    pub characteristic: u32,
    pub seed: u64,
    pub stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inconclusive: Option<String>,
    /// Lowest and highest compared grading.
    pub compared: Option<(Grading, Grading)>,
    pub table: Vec<DimRow>,
    pub mismatches: Vec<Grading>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.inconclusive.is_none() && self.stable && self.mismatches.is_empty()
    }
}

/// Least slot range `[n_L, n_R]` for which the truncated cone is exact.
pub fn core_slots(genus: u32, slope: Slope, i: SpincIndex) -> (i64, i64) {
    let (p, q) = (slope.p(), slope.q());
    let g = genus as i64;
    let k = |n| cone_index(i, p, q, n);
    if p > 0 {
        let nr = (0..).find(|&n| k(n + 1) >= g).unwrap();
        let nl = (0..).map(|n: i64| -n).find(|&n| k(n - 1) <= -g).unwrap();
        (nl, nr)
    } else {
        let nl = (0..).map(|n: i64| -n).find(|&n| k(n - 1) >= g).unwrap();
        let nr = (0..).find(|&n| k(n + 1) <= -g).unwrap();
        (nl, nr)
    }
}

fn slot_rng(seed: u64, i: SpincIndex, n: i64) -> ChaCha8Rng {
    let mix = seed
        ^ (i.0 as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (n as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    ChaCha8Rng::seed_from_u64(mix)
}

fn default_height(model: &KnotSurgeryModel) -> u32 {
    let longest = model.red.iter().flat_map(|(_, s)| s.iter()).map(|s| s.length as i64 + s.offset.abs()).max();
    (model.genus() as i64 + model.vh.v(0) + longest.unwrap_or(0) + 2) as u32
}

/// Cone data for one Spin^c structure at the given window and height.
pub fn cone_input(
    model: &KnotSurgeryModel,
    slope: Slope,
    i: SpincIndex,
    window: i64,
    height: u32,
    params: &OracleParams,
) -> Result<ConeInput> {
    let (p, q) = (slope.p(), slope.q());
    if p == 0 {
        return Err(Error::Domain("the oracle handles p ≠ 0 only".into()));
    }
    let vh = &model.vh;
    let grades = ConeGradings::new(vh, slope, i, window + 2)?;
    let policy = match params.attach {
        AttachPolicy::Auto if p > 0 => AttachPolicy::Random,
        AttachPolicy::Auto => AttachPolicy::TowerImage,
        other => other,
    };
    let chr = params.characteristic;
    let mut a_slots = BTreeMap::new();
    for n in -window..=window {
        let k = cone_index(i, p, q, n);
        let (v, h) = (vh.v(k), vh.h(k));
        let mut rng = slot_rng(params.seed, i, n);
        let red = model
            .red
            .at(k)
            .iter()
            .map(|s| {
                let (v_coeff, h_coeff) = match policy {
                    AttachPolicy::Zero | AttachPolicy::Auto => (0, 0),
                    AttachPolicy::Random => {
                        let a = grades.a(n);
                        let cv = if cone::can_attach(a, s.offset, s.length, grades.b(n)) { rng.gen_range(0..chr) } else { 0 };
                        let ch =
                            if cone::can_attach(a, s.offset, s.length, grades.b(n + 1)) { rng.gen_range(0..chr) } else { 0 };
                        (cv, ch)
                    }
                    AttachPolicy::TowerImage => {
                        // top generator ↦ c·U^{-m} on the A tower, then through v and h
                        let twice_m = s.offset + 2 * (s.length as i64 - 1);
                        let c = rng.gen_range(0..chr);
                        if twice_m % 2 != 0 || twice_m < 0 || twice_m / 2 >= s.length as i64 {
                            (0, 0)
                        } else {
                            let m = twice_m / 2;
                            (if m >= v { c } else { 0 }, if m >= h { c } else { 0 })
                        }
                    }
                };
                RedPiece { offset: s.offset, length: s.length, v_coeff, h_coeff }
            })
            .collect();
        a_slots.insert(n, ASlot { v: v as u32, h: h as u32, red });
    }
    let b_slots = if p > 0 { -window + 1..=window } else { -window..=window + 1 };
    let d_l = lens_d(p, q, i)?;
    let anchor = if p > 0 { (0, d_l - Grading::int(1)) } else { (1, d_l) };
    let (nl, nr) = core_slots(model.genus(), slope, i);
    let top_bottom = (nl..=nr).flat_map(|n| [grades.a(n), grades.b(n), grades.b(n + 1)]).max().unwrap();
    Ok(ConeInput { a_slots, b_slots, anchor, ceiling: top_bottom.shift(height as i64), characteristic: chr })
}

fn oracle_dims(
    model: &KnotSurgeryModel,
    slope: Slope,
    i: SpincIndex,
    window: i64,
    height: u32,
    params: &OracleParams,
) -> Result<(BTreeMap<Grading, u64>, Grading)> {
    let input = cone_input(model, slope, i, window, height, params)?;
    let cone = build_cone(&input)?;
    debug_assert!(cone.d_squared().is_empty());
    Ok((cone.homology(), input.ceiling))
}

/// Oracle homology against the closed form for one Spin^c structure.
pub fn compare(model: &KnotSurgeryModel, slope: Slope, i: SpincIndex, params: &OracleParams) -> Result<OracleReport> {
    slope.check_index(i)?;
    let (nl, nr) = core_slots(model.genus(), slope, i);
    let needed = nl.abs().max(nr);
    let window = params.window.unwrap_or(needed);
    let height = params.height.unwrap_or_else(|| default_height(model));
    let mut report = OracleReport {
        slope,
        index: i.0,
        window,
        height,
        characteristic: params.characteristic,
        seed: params.seed,
        stable: false,
        inconclusive: None,
        compared: None,
        table: vec![],
        mismatches: vec![],
    };
    if window < needed {
        report.inconclusive = Some(format!("window {window} does not cover the exact slot range [{nl}, {nr}]"));
        return Ok(report);
    }
    let expected = surgery::surgery(model, slope, i)?.module;
    let (dims, ceiling) = oracle_dims(model, slope, i, window, height, params)?;
    let (wider, _) = oracle_dims(model, slope, i, window + 1, height + 2, params)?;
    let top = ceiling - Grading::int(1);
    report.stable = wider.iter().filter(|(g, _)| **g <= top).eq(dims.iter());
    let closed = expected.graded_dims(top);
    let mut gradings: Vec<Grading> = dims.keys().chain(closed.keys()).copied().collect();
    gradings.sort();
    gradings.dedup();
    for g in gradings {
        let row = DimRow {
            grading: g,
            oracle: dims.get(&g).copied().unwrap_or(0),
            closed_form: closed.get(&g).copied().unwrap_or(0),
        };
        if row.oracle != row.closed_form {
            report.mismatches.push(g);
        }
        report.table.push(row);
    }
    report.compared = report.table.first().map(|r| (r.grading, top));
    Ok(report)
}

/// Bounds for randomly generated models and slopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModelLimits {
    pub max_genus: u32,
    pub max_v: i64,
    pub max_red: usize,
    pub max_p: i64,
    pub max_q: i64,
}

impl Default for ModelLimits {
    fn default() -> Self {
        ModelLimits { max_genus: 5, max_v: 6, max_red: 3, max_p: 7, max_q: 4 }
    }
}

/// A valid model with random `V` data, up to `max_red` reduced summands and
/// the Alexander polynomial forced by `t_k = V_k + χ(A^red_k)`. Mirror data
/// is zero.
pub fn random_model<R: Rng>(rng: &mut R, limits: &ModelLimits) -> KnotSurgeryModel {
    let g = rng.gen_range(0..=limits.max_genus) as i64;
    if g == 0 {
        return KnotSurgeryModel::unknot();
    }
    let mut v = vec![0i64; g as usize];
    v[g as usize - 1] = rng.gen_range(0..=1).min(limits.max_v - (g - 1)).max(0);
    for k in (0..g as usize - 1).rev() {
        v[k] = (v[k + 1] + rng.gen_range(0..=1)).min(limits.max_v - k as i64).max(v[k + 1]);
    }
    let vh = VHData::from_nonnegative(&v);
    let mut entries = Vec::new();
    let mut budget = rng.gen_range(0..=limits.max_red);
    while budget > 0 {
        let k = rng.gen_range(0..g);
        let cost = if k == 0 { 1 } else { 2 };
        if cost > budget {
            if budget == 1 && entries.is_empty() && g > 0 {
                entries.push((0, random_summand(rng, g)));
            }
            break;
        }
        entries.push((k, random_summand(rng, g)));
        budget -= cost;
    }
    let red = ReducedGroupTable::symmetric(&entries);
    let t: Vec<i64> = (0..g).map(|k| vh.v(k) + red.euler_characteristic(k)).collect();
    KnotSurgeryModel {
        name: None,
        vh,
        red,
        alex: AlexanderPolynomial::from_torsion(&t),
        mirror_v: Some(VHData::zeros(g as u32)),
        hfk_top_parity: None,
        g4: None,
    }
}

fn random_summand<R: Rng>(rng: &mut R, g: i64) -> RedSummand {
    RedSummand { offset: rng.gen_range(-2 * g..=2 * g), length: rng.gen_range(1..=g as u32) }
}

pub fn random_slope<R: Rng>(rng: &mut R, limits: &ModelLimits) -> Slope {
    loop {
        let p = rng.gen_range(-limits.max_p..=limits.max_p);
        let q = rng.gen_range(1..=limits.max_q);
        if p != 0 && num_integer::gcd(p, q) == 1 {
            return Slope::new(p, q).unwrap();
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TrialConfig {
    pub trials: u64,
    pub seed: u64,
    pub characteristic: u32,
    pub limits: ModelLimits,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialOutcome {
    pub trial: u64,
    pub seed: u64,
    pub slope: Slope,
    pub genus: u32,
    pub delta: u64,
    pub structures: usize,
    pub failed: Vec<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialSummary {
    pub config: TrialConfig,
    pub comparisons: u64,
    pub mismatched: u64,
    pub outcomes: Vec<TrialOutcome>,
}

impl TrialSummary {
    pub fn all_agree(&self) -> bool {
        self.mismatched == 0 && self.outcomes.iter().all(|o| o.error.is_none())
    }
}

/// Random models and slopes, each Spin^c structure checked; trials run in
/// parallel and are reproducible from `config.seed`.
pub fn run_trials(config: TrialConfig) -> TrialSummary {
    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let seed = config.seed.wrapping_add(t);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let model = random_model(&mut rng, &config.limits);
            let slope = random_slope(&mut rng, &config.limits);
            let params = OracleParams { characteristic: config.characteristic, seed, ..OracleParams::default() };
            let mut outcome = TrialOutcome {
                trial: t,
                seed,
                slope,
                genus: model.genus(),
                delta: model.delta(),
                structures: slope.order() as usize,
                failed: vec![],
                error: None,
            };
            for i in slope.spinc_indices() {
                match compare(&model, slope, i, &params) {
                    Ok(r) if r.agrees() => {}
                    Ok(r) => outcome.failed.push(r),
                    Err(e) => {
                        outcome.error = Some(format!("{e} (model {})", model.to_json().replace('\n', "")));
                        break;
                    }
                }
            }
            outcome
        })
        .collect();
    TrialSummary {
        config,
        comparisons: outcomes.iter().map(|o| o.structures as u64).sum(),
        mismatched: outcomes.iter().map(|o| o.failed.len() as u64).sum(),
        outcomes,
    }
}
