//! Command-line front end.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog;
use crate::error::{Error, Result};
use crate::io::{load_manifold, load_model, manifold_to_json, to_document};
use crate::knotmodel::KnotSurgeryModel;
use crate::lensd::{Slope, SpincIndex};
use crate::obstruct::{self, ObstructionReport};
use crate::oracle::{self, ModelLimits, OracleParams, TrialConfig};
use crate::surgery::{full_surgery, ManifoldHF};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Doc,
}

#[derive(Debug, Parser)]
#[command(name = "hfsurg", version, about = "Heegaard Floer homology of Dehn surgeries on knots")]
pub struct JobSpec {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// HF⁺ of surgeries on a knot model.
    Compute {
        /// Knot model document.
        #[arg(long)]
        input: PathBuf,
        /// Surgery slope `p/q` or `p`; repeatable.
        #[arg(long = "slope", required = true, allow_hyphen_values = true)]
        slopes: Vec<Slope>,
        /// Only this Spin^c structure.
        #[arg(long)]
        spinc: Option<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the closed form with brute-force cone homology.
    Oracle {
        /// Knot model document.
        #[arg(long, required_unless_present = "trials", conflicts_with = "trials")]
        input: Option<PathBuf>,
        /// Surgery slope; repeatable.
        #[arg(long = "slope", allow_hyphen_values = true, conflicts_with = "trials")]
        slopes: Vec<Slope>,
        /// Only this Spin^c structure (default: all).
        #[arg(long, conflicts_with = "trials")]
        spinc: Option<i64>,
        /// Cone slots kept on each side of slot 0 (default: the least exact window).
        #[arg(long)]
        window: Option<i64>,
        /// U-levels kept above the highest tower bottom.
        #[arg(long)]
        height: Option<u32>,
        /// Prime characteristic of the coefficient field.
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u32,
        /// Seed for the random attaching maps and trial models.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run this many random models instead of one input.
        #[arg(long, conflicts_with_all = ["window", "height"])]
        trials: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Obstruction suite for a manifold, optionally against a knot and slope.
    Obstruct {
        /// Manifold document.
        #[arg(long)]
        input: PathBuf,
        /// Knot model to test against the manifold.
        #[arg(long, requires = "slope")]
        model: Option<PathBuf>,
        /// Slope of the surgery on `--model`.
        #[arg(long, requires = "model", allow_hyphen_values = true)]
        slope: Option<Slope>,
        #[command(flatten)]
        output: Output,
    },
    /// Candidate Alexander polynomials of alternating knots with a surgery to a manifold.
    Enumerate {
        /// Manifold document.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_candidates: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Alexander polynomial of an L-space knot from one of its surgeries.
    Recover {
        /// Manifold document.
        #[arg(long)]
        input: PathBuf,
        /// Slope `p/q ≤ 1` of the surgery producing the manifold.
        #[arg(long, allow_hyphen_values = true)]
        slope: Slope,
        #[command(flatten)]
        output: Output,
    },
    /// Regenerate the bundled golden outputs.
    Examples {
        #[arg(long, default_value = "golden")]
        out: PathBuf,
    },
}

fn emit(output: &Output, table: String, doc: String) -> Result<()> {
    let text = match output.format {
        Format::Table => table,
        Format::Doc => doc,
    };
    match &output.out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn compute(model: &KnotSurgeryModel, slope: Slope, spinc: Option<i64>) -> Result<ManifoldHF> {
    let mut y = full_surgery(model, slope)?;
    if let Some(i) = spinc {
        if slope.p() != 0 {
            slope.check_index(SpincIndex(i))?;
        }
        y.structures.retain(|s| s.index == i);
        if y.structures.is_empty() {
            return Err(Error::Domain(format!("no Spin^c structure {i} for slope {slope}")));
        }
        y.total_reduced_dim = y.structures.iter().map(|s| s.reduced_dim()).sum();
    }
    Ok(y)
}

fn surgeries_doc(results: &[ManifoldHF]) -> String {
    to_document("surgeries", &json!({ "results": results }))
}

fn surgeries_table(results: &[ManifoldHF]) -> String {
    results.iter().map(ManifoldHF::render_table).collect::<Vec<_>>().join("\n")
}

#[derive(Serialize)]
struct Invariants {
    n: u64,
    c: crate::gradedalg::Grading,
    c_argmax: i64,
    alternating_genus_bound: i64,
    property_s: bool,
}

fn obstruct_reports(
    y: &ManifoldHF,
    knot: Option<(&KnotSurgeryModel, Slope)>,
) -> Result<(Invariants, Vec<ObstructionReport>)> {
    let (c, c_argmax) = obstruct::c_invariant_with_argmax(y)?;
    let inv = Invariants {
        n: obstruct::slope_denominator_bound(y)?,
        c,
        c_argmax,
        alternating_genus_bound: obstruct::alternating_genus_bound(y)?,
        property_s: obstruct::property_s_manifold(y)?,
    };
    let mut reports = Vec::new();
    if let Some((model, slope)) = knot {
        let name = model.name.clone().unwrap_or_else(|| "K".into());
        let computed = full_surgery(model, slope)?;
        let mut rep = ObstructionReport::new(format!("{name} at slope {slope}"));
        if slope.p() > 0 {
            rep.checks.push(obstruct::torsion_sum_check(model, y)?);
        }
        rep.checks.push(obstruct::genus_bound_check(model, &computed));
        rep.checks.push(obstruct::cosmetic_exclusion(model));
        reports.push(rep);
        if slope.p() > 0 {
            reports.push(obstruct::seifert_negative_checks(model, slope, &computed)?);
        }
        reports.push(obstruct::seifert_positive_checks(model));
    }
    Ok((inv, reports))
}

fn obstruct_table(inv: &Invariants, reports: &[ObstructionReport]) -> String {
    let mut out = format!(
        "n(Y) = {}\nc(Y) = {} (q = {})\nalternating genus bound = {}\nproperty S = {}\n",
        inv.n, inv.c, inv.c_argmax, inv.alternating_genus_bound, inv.property_s
    );
    for r in reports {
        out += "\n";
        out += &r.render_table();
    }
    out
}

fn oracle_table(reports: &[oracle::OracleReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let verdict = match (&r.inconclusive, r.agrees()) {
            (Some(why), _) => format!("inconclusive: {why}"),
            (None, true) => "agree".into(),
            (None, false) => format!("MISMATCH at {:?}", r.mismatches.iter().map(ToString::to_string).collect::<Vec<_>>()),
        };
        out += &format!(
            "{} i={} W={} M={} char={} seed={} stable={} {verdict}\n",
            r.slope, r.index, r.window, r.height, r.characteristic, r.seed, r.stable
        );
    }
    out
}

/// Writes every bundled example under `dir`.
pub fn write_examples(dir: &Path) -> Result<()> {
    let slopes_for = |stem: &str| -> Vec<Slope> {
        let s = |p, q| Slope::new(p, q).unwrap();
        match stem {
            "unknot" => vec![s(5, 1), s(7, 3), s(-3, 1), s(0, 1)],
            "k0" | "k1" | "k2" => vec![s(-4, 1), s(4, 1), s(4, 3), s(-1, 2), s(0, 1)],
            _ => vec![s(1, 1), s(1, 2), s(-1, 1), s(5, 2), s(0, 1)],
        }
    };
    for (stem, model) in catalog::models() {
        write_file(&dir.join("models").join(format!("{stem}.json")), &(model.to_json() + "\n"))?;
        let results = slopes_for(stem).into_iter().map(|s| full_surgery(&model, s)).collect::<Result<Vec<_>>>()?;
        write_file(&dir.join("surgeries").join(format!("{stem}.json")), &surgeries_doc(&results))?;
        write_file(&dir.join("surgeries").join(format!("{stem}.txt")), &surgeries_table(&results))?;
    }
    let y = catalog::teragaito_manifold();
    write_file(&dir.join("manifolds").join("teragaito.json"), &manifold_to_json(&y))?;
    let k0 = catalog::teragaito_knot(0);
    let mk0 = k0.mirror()?;
    let (inv, mut reports) = obstruct_reports(&y, Some((&k0, Slope::integer(-4))))?;
    let (_, mirrored) = obstruct_reports(&y, Some((&mk0, Slope::integer(4))))?;
    reports.extend(mirrored);
    write_file(&dir.join("reports").join("teragaito-obstruct.json"), &to_document("obstruction", &json!({ "invariants": inv, "reports": reports })))?;
    write_file(&dir.join("reports").join("teragaito-obstruct.txt"), &obstruct_table(&inv, &reports))?;
    let e = obstruct::enumerate_alternating_alexander(&y, None)?;
    write_file(&dir.join("reports").join("teragaito-enumerate.json"), &to_document("enumeration", &e))?;
    let params = OracleParams::default();
    let oracle_reports = (0..4)
        .map(|i| oracle::compare(&k0, Slope::integer(-4), SpincIndex(i), &params))
        .collect::<Result<Vec<_>>>()?;
    write_file(&dir.join("reports").join("k0-oracle.json"), &to_document("oracle", &json!({ "reports": oracle_reports })))?;
    Ok(())
}

pub fn run(job: JobSpec) -> Result<()> {
    match job.command {
        Command::Compute { input, slopes, spinc, output } => {
            let model = load_model(&input)?;
            let results = slopes.iter().map(|s| compute(&model, *s, spinc)).collect::<Result<Vec<_>>>()?;
            emit(&output, surgeries_table(&results), surgeries_doc(&results))
        }
        Command::Oracle { input, slopes, spinc, window, height, characteristic, seed, trials, output } => {
            if let Some(trials) = trials {
                let summary = oracle::run_trials(TrialConfig { trials, seed, characteristic, limits: ModelLimits::default() });
                let table = format!(
                    "trials {} comparisons {} mismatched {} errors {}\n",
                    trials,
                    summary.comparisons,
                    summary.mismatched,
                    summary.outcomes.iter().filter(|o| o.error.is_some()).count()
                );
                let ok = summary.all_agree();
                emit(&output, table, to_document("oracle-trials", &summary))?;
                return if ok { Ok(()) } else { Err(Error::InconsistentModel("oracle trials found mismatches".into())) };
            }
            let model = load_model(input.as_deref().expect("required by clap"))?;
            if slopes.is_empty() {
                return Err(Error::Parse("--slope is required without --trials".into()));
            }
            let params = OracleParams { window, height, characteristic, seed, ..OracleParams::default() };
            let mut reports = Vec::new();
            for slope in slopes {
                let indices: Vec<SpincIndex> = match spinc {
                    Some(i) => vec![SpincIndex(i)],
                    None => slope.spinc_indices().collect(),
                };
                for i in indices {
                    reports.push(oracle::compare(&model, slope, i, &params)?);
                }
            }
            emit(&output, oracle_table(&reports), to_document("oracle", &json!({ "reports": reports })))
        }
        Command::Obstruct { input, model, slope, output } => {
            let y = load_manifold(&input)?;
            let model = model.map(|m| load_model(&m)).transpose()?;
            let knot = model.as_ref().zip(slope);
            let (inv, reports) = obstruct_reports(&y, knot)?;
            let doc = to_document("obstruction", &json!({ "invariants": inv, "reports": reports }));
            emit(&output, obstruct_table(&inv, &reports), doc)
        }
        Command::Enumerate { input, max_candidates, output } => {
            let y = load_manifold(&input)?;
            let e = obstruct::enumerate_alternating_alexander(&y, max_candidates)?;
            let mut table = format!("c(Y) = {}, genus bound {}, {} candidates\n", e.c, e.genus_bound, e.candidates.len());
            for c in &e.candidates {
                let alex = crate::knotmodel::AlexanderPolynomial::from_map(&c.alexander)?;
                table += &format!("det {:>4}  t = {:?}  Δ = {alex}\n", c.determinant, c.torsion);
            }
            if e.truncated {
                table += "(truncated at --max-candidates)\n";
            }
            emit(&output, table, to_document("enumeration", &e))
        }
        Command::Recover { input, slope, output } => {
            let y = load_manifold(&input)?;
            let alex = obstruct::recover_alexander_lspace(&y, slope)?;
            let doc = to_document("recovery", &json!({ "slope": slope, "alexander": alex.to_map(), "torsion": alex.torsion_coefficients() }));
            emit(&output, format!("Δ = {alex}\n"), doc)
        }
        Command::Examples { out } => write_examples(&out),
    }
}

/// Process exit code for an error: 2 for bad input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Validation(_) => 2,
        _ => 1,
    }
}
