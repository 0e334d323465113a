//! The `asymlab` command line: `sweep`, `verify` and `correct`.
//!
//! Every command renders its output to a string ([`execute`]) so runs can be
//! compared byte for byte; the binary only writes the string and maps errors
//! to exit codes (0 ok, 1 verify failure, 2 config error, 3 numerical failure).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::almostrep::{
    free_abelian_witness, homdist_lower_bound_voiculescu, relator_bound_check, AlmostRep, Lift,
};
use crate::cohomology::{cocycle_residuals, diminish, hochschild_cocycle, CorrectionReport};
use crate::families::{
    block_constant, bs23_pair, bs23_relation_gap, commutator_gap, loglog_fit, perturbed_rep,
    voiculescu_rep, BsBlockData,
};
use crate::groups::{ball, builtin_normal_form, Backend, NormalFormGroup};
use crate::normkit::{
    absolute_value, exp_skew, gaussian_matrix, haar_unitary_with, nearest_involution, norm,
    operator_norm, random_psd, random_skew, ComplexMatrix, NormKind,
};
use crate::seed::{derive, rng_for};
use crate::words::Alphabet;
use crate::{Error, Result};

/// Default stall factor for `correct`.
pub const STALL_FACTOR: f64 = 0.5;

#[derive(Debug, Parser)]
#[command(
    name = "asymlab",
    version,
    about = "Almost-representations of finitely presented groups into U(k)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate defects over a grid of sizes as CSV, with log-log fits.
    Sweep(SweepArgs),
    /// Run the invariant checks and print a JSON report.
    Verify(VerifyArgs),
    /// Run the defect-diminishing loop and print its JSON report.
    Correct(CorrectArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// `voiculescu`, `bs23` or `perturbed:<group>:<eps>` (sizes are then k).
    #[arg(long)]
    pub example: String,
    /// `a:b:xK` (geometric grid a, aK, ... <= b) or a comma-separated list.
    #[arg(long, default_value = "4:256:x2")]
    pub sizes: String,
    /// Compute only this norm's defect column (`op`, `frob`, `hs`).
    #[arg(long)]
    pub norm: Option<NormKind>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only the named checks (repeatable); see `--check list`.
    #[arg(long)]
    pub check: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CorrectArgs {
    /// `voiculescu:n` or `perturbed:<group>:<k>:<eps>:<seed>`.
    #[arg(long)]
    pub rep: String,
    /// Window radius (>= 2); defaults to 2, or the whole group for `cyclic:m`.
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub max_iters: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Command {
    pub fn out(&self) -> Option<&PathBuf> {
        match self {
            Command::Sweep(a) => a.out.as_ref(),
            Command::Verify(a) => a.out.as_ref(),
            Command::Correct(a) => a.out.as_ref(),
        }
    }
}

/// Rendered output of a command and whether it succeeded (only `verify` can
/// report failure without an error).
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: String,
    pub success: bool,
}

pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Sweep(a) => Ok(Output {
            body: sweep(a)?,
            success: true,
        }),
        Command::Verify(a) => {
            let report = verify(&a.check, a.seed)?;
            let success = report.values().all(|c| c.pass);
            Ok(Output {
                body: format!("{}\n", serde_json::to_string_pretty(&report)?),
                success,
            })
        }
        Command::Correct(a) => Ok(Output {
            body: format!("{}\n", serde_json::to_string_pretty(&correct(a)?)?),
            success: true,
        }),
    }
}

/// Exit code for an error: 2 for configuration problems, 3 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_config() || matches!(err, Error::Io(_)) {
        2
    } else {
        3
    }
}

/// `a:b:xK` or `n1,n2,...`.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let bad = || {
        Error::Parse(format!(
            "bad size list `{text}` (expected a:b:xK or n1,n2,...)"
        ))
    };
    let sizes: Vec<usize> = if let [a, b, k] = text.split(':').collect::<Vec<_>>().as_slice() {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        let k: usize = k
            .trim()
            .strip_prefix('x')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        if a == 0 || k < 2 {
            return Err(bad());
        }
        std::iter::successors(Some(a), |&n| n.checked_mul(k))
            .take_while(|&n| n <= b)
            .collect()
    } else {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    if sizes.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "size list `{text}` is empty"
        )));
    }
    Ok(sizes)
}

enum SweepExample {
    Voiculescu,
    Bs23,
    Perturbed { group: NormalFormGroup, eps: f64 },
}

fn parse_example(name: &str) -> Result<SweepExample> {
    match name {
        "voiculescu" => Ok(SweepExample::Voiculescu),
        "bs23" => Ok(SweepExample::Bs23),
        "perturbed" => Ok(SweepExample::Perturbed {
            group: NormalFormGroup::free_abelian(2)?,
            eps: 0.01,
        }),
        _ => {
            let rest = name
                .strip_prefix("perturbed:")
                .ok_or_else(|| Error::Parse(format!("unknown example `{name}`")))?;
            let (group, eps) = rest.rsplit_once(':').ok_or_else(|| {
                Error::Parse(format!("expected perturbed:<group>:<eps>, got `{name}`"))
            })?;
            Ok(SweepExample::Perturbed {
                group: builtin_normal_form(group)?,
                eps: parse_eps(eps)?,
            })
        }
    }
}

fn parse_eps(s: &str) -> Result<f64> {
    let eps: f64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad perturbation size `{s}`")))?;
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "perturbation size must be >= 0, got `{s}`"
        )));
    }
    Ok(eps)
}

fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

struct Row {
    n: usize,
    defects: [Option<f64>; 3],
    extras: Vec<f64>,
}

fn measure_row(example: &SweepExample, n: usize, kinds: &[NormKind], seed: u64) -> Result<Row> {
    let mut defects = [None; 3];
    let mut fill = |f: &dyn Fn(NormKind) -> Result<f64>| -> Result<()> {
        for (slot, kind) in NormKind::ALL.iter().enumerate() {
            if kinds.contains(kind) {
                defects[slot] = Some(f(*kind)?);
            }
        }
        Ok(())
    };
    let extras = match example {
        SweepExample::Voiculescu => {
            let rep = voiculescu_rep(n)?;
            fill(&|k| rep.defect(k))?;
            vec![homdist_lower_bound_voiculescu(n)?]
        }
        SweepExample::Bs23 => {
            let (a, b) = bs23_pair(n)?;
            fill(&|k| Ok(bs23_relation_gap(&a, &b, k)))?;
            let gap = commutator_gap(&a, &b);
            vec![gap, ((6 * n) as f64).sqrt() - gap]
        }
        SweepExample::Perturbed { group, eps } => {
            let rep = perturbed_rep(group, n, *eps, derive(seed, n as u64))?;
            fill(&|k| rep.defect(k))?;
            vec![]
        }
    };
    Ok(Row { n, defects, extras })
}

fn sweep(args: &SweepArgs) -> Result<String> {
    let example = parse_example(&args.example)?;
    let sizes = parse_sizes(&args.sizes)?;
    let min = match example {
        SweepExample::Voiculescu => 2,
        _ => 1,
    };
    if let Some(&n) = sizes.iter().find(|&&n| n < min) {
        return Err(Error::InvalidArgument(format!(
            "size {n} is below the minimum {min} for this example"
        )));
    }
    let kinds: Vec<NormKind> = match args.norm {
        Some(k) => vec![k],
        None => NormKind::ALL.to_vec(),
    };
    let extra_names: &[&str] = match example {
        SweepExample::Voiculescu => &["homdist_lb"],
        SweepExample::Bs23 => &["commutator_gap", "sqrt6n_minus_gap"],
        SweepExample::Perturbed { .. } => &[],
    };
    let rows = sizes
        .par_iter()
        .map(|&n| measure_row(&example, n, &kinds, args.seed))
        .collect::<Result<Vec<Row>>>()?;

    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n", "defect_op", "defect_frob", "defect_hs"];
    header.extend_from_slice(extra_names);
    w.write_record(&header).map_err(csv_err)?;
    let opt = |v: Option<f64>| v.map(fmt_float).unwrap_or_default();
    for r in &rows {
        let mut rec = vec![r.n.to_string()];
        rec.extend(r.defects.iter().map(|&d| opt(d)));
        rec.extend(r.extras.iter().map(|&e| fmt_float(e)));
        w.write_record(&rec).map_err(csv_err)?;
    }
    // summary: log-log fits of every column whose values are all positive
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let columns: Vec<Vec<Option<f64>>> = (0..3)
        .map(|j| rows.iter().map(|r| r.defects[j]).collect())
        .chain((0..extra_names.len()).map(|j| rows.iter().map(|r| Some(r.extras[j])).collect()))
        .collect();
    let fits: Vec<Option<(f64, f64)>> = columns
        .iter()
        .map(|col| {
            let ys: Option<Vec<f64>> = col.iter().copied().collect();
            let fit = loglog_fit(&xs, &ys?).ok()?;
            Some((fit.slope, fit.intercept))
        })
        .collect();
    for (label, pick) in [("slope", 0), ("intercept", 1)] {
        let mut rec = vec![label.to_string()];
        rec.extend(
            fits.iter()
                .map(|f| opt(f.map(|(s, i)| if pick == 0 { s } else { i }))),
        );
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// A resolved `--rep` selector.
pub struct RepSelection {
    pub rep: AlmostRep,
    pub group: Option<NormalFormGroup>,
}

/// `voiculescu:n`, `bs23:n` or `perturbed:<group>:<k>:<eps>:<seed>`.
pub fn parse_rep(text: &str) -> Result<RepSelection> {
    let bad = || Error::Parse(format!("unknown rep `{text}`"));
    let num = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::Parse(format!("bad integer `{s}` in `{text}`")))
    };
    if let Some(n) = text.strip_prefix("voiculescu:") {
        return Ok(RepSelection {
            rep: voiculescu_rep(num(n)?)?,
            group: Some(NormalFormGroup::free_abelian(2)?),
        });
    }
    if let Some(n) = text.strip_prefix("bs23:") {
        return Ok(RepSelection {
            rep: crate::families::bs23_rep(num(n)?)?,
            group: None,
        });
    }
    let rest = text.strip_prefix("perturbed:").ok_or_else(bad)?;
    // the group name may itself contain ':'
    let parts: Vec<&str> = rest.rsplitn(4, ':').collect();
    let [seed, eps, k, group] = parts.as_slice() else {
        return Err(Error::Parse(format!(
            "expected perturbed:<group>:<k>:<eps>:<seed>, got `{text}`"
        )));
    };
    let group = builtin_normal_form(group)?;
    let seed: u64 = seed
        .parse()
        .map_err(|_| Error::Parse(format!("bad seed in `{text}`")))?;
    Ok(RepSelection {
        rep: perturbed_rep(&group, num(k)?, parse_eps(eps)?, seed)?,
        group: Some(group),
    })
}

/// The radius used when `--radius` is absent: 2 for `Z^d`, the whole group
/// (at least 2) for `Z/m` so that the involution is in the window.
pub fn default_radius(group: &NormalFormGroup) -> usize {
    match group.backend() {
        Backend::FreeAbelian { .. } => 2,
        Backend::Cyclic { order } => ((order / 2) as usize).max(2),
    }
}

pub fn correct(args: &CorrectArgs) -> Result<CorrectionReport> {
    let sel = parse_rep(&args.rep)?;
    let group = sel.group.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "`{}` has no normal-form group backend to correct over",
            args.rep
        ))
    })?;
    let radius = args.radius.unwrap_or_else(|| default_radius(&group));
    if radius < 2 {
        return Err(Error::InvalidArgument("--radius must be at least 2".into()));
    }
    Ok(diminish(&sel.rep, &group, radius, args.max_iters, STALL_FACTOR)?.1)
}

/// One named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub pass: bool,
    pub measured: f64,
    pub bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl CheckResult {
    /// `measured <= bound`.
    fn at_most(measured: f64, bound: f64) -> Self {
        Self {
            pass: measured <= bound,
            measured,
            bound,
            target: None,
            witness: None,
        }
    }
}

type Check = fn(u64) -> Result<CheckResult>;

pub const CHECKS: &[(&str, Check)] = &[
    ("norm-invariance", check_invariance),
    ("norm-adjoint-abs", check_adjoint_abs),
    ("norm-monotone", check_monotone),
    ("norm-ideal", check_ideal),
    ("submult-op", check_submult_op),
    ("submult-frob", check_submult_frob),
    ("hs-submult", check_hs_submult),
    ("nearest-involution", check_nearest_involution),
    ("exp-bounds", check_exp_bounds),
    ("clock-shift", check_clock_shift),
    ("relator-bound", check_relator_bound),
    ("cocycle-identities", check_cocycle_identities),
    ("bs23-block-bound", check_bs23_block_bound),
    ("block-constant", check_block_constant),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs the selected checks (all when `names` is empty) with trial seeds
/// derived from `seed`.
pub fn verify(names: &[String], seed: u64) -> Result<BTreeMap<String, CheckResult>> {
    if names.iter().any(|n| n == "list") {
        return Err(Error::InvalidArgument(format!(
            "available checks: {}",
            check_names().join(", ")
        )));
    }
    for n in names {
        if !CHECKS.iter().any(|(c, _)| c == n) {
            return Err(Error::InvalidArgument(format!(
                "unknown check `{n}`; available: {}",
                check_names().join(", ")
            )));
        }
    }
    let selected: Vec<(usize, &(&str, Check))> = CHECKS
        .iter()
        .enumerate()
        .filter(|(_, (c, _))| names.is_empty() || names.iter().any(|n| n == c))
        .collect();
    let results = selected
        .par_iter()
        .map(|(i, (name, f))| Ok((name.to_string(), f(derive(seed, *i as u64))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(results.into_iter().collect())
}

const DIMS: [usize; 3] = [2, 4, 8];
const TRIALS: u64 = 200;
const REL_TOL: f64 = 1e-10;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn check_invariance(seed: u64) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for &k in &DIMS {
        for t in 0..TRIALS {
            let mut rng = rng_for(seed, t * 16 + k as u64);
            let a = gaussian_matrix(k, &mut rng);
            let u = haar_unitary_with(k, &mut rng)?;
            let v = haar_unitary_with(k, &mut rng)?;
            let uav = u.matrix().matmul(&a).matmul(v.matrix());
            for kind in NormKind::ALL {
                worst = worst.max(rel(norm(&uav, kind), norm(&a, kind)));
            }
        }
    }
    Ok(CheckResult::at_most(worst, REL_TOL))
}

fn check_adjoint_abs(seed: u64) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for &k in &DIMS {
        for t in 0..TRIALS {
            let mut rng = rng_for(seed, t * 16 + k as u64);
            let a = gaussian_matrix(k, &mut rng);
            let abs = absolute_value(&a)?;
            for kind in NormKind::ALL {
                let n = norm(&a, kind);
                worst = worst
                    .max(rel(norm(&a.adjoint(), kind), n))
                    .max(rel(norm(&abs, kind), n));
            }
        }
    }
    Ok(CheckResult::at_most(worst, REL_TOL))
}

fn check_monotone(seed: u64) -> Result<CheckResult> {
    // 0 <= A <= B = A + P
    let mut worst = f64::NEG_INFINITY;
    for &k in &DIMS {
        for t in 0..TRIALS {
            let mut rng = rng_for(seed, t * 16 + k as u64);
            let a = random_psd(k, &mut rng);
            let b = &a + &random_psd(k, &mut rng);
            for kind in NormKind::ALL {
                let nb = norm(&b, kind);
                worst = worst.max((norm(&a, kind) - nb) / nb);
            }
        }
    }
    Ok(CheckResult::at_most(worst, REL_TOL))
}

fn check_ideal(seed: u64) -> Result<CheckResult> {
    // |A B C| <= |A|_op |B| |C|_op
    let mut worst = f64::NEG_INFINITY;
    for &k in &DIMS {
        for t in 0..TRIALS {
            let mut rng = rng_for(seed, t * 16 + k as u64);
            let (a, b, c) = (
                gaussian_matrix(k, &mut rng),
                gaussian_matrix(k, &mut rng),
                gaussian_matrix(k, &mut rng),
            );
            let abc = a.matmul(&b).matmul(&c);
            let (ao, co) = (operator_norm(&a), operator_norm(&c));
            for kind in NormKind::ALL {
                let bound = ao * norm(&b, kind) * co;
                worst = worst.max((norm(&abc, kind) - bound) / bound);
            }
        }
    }
    Ok(CheckResult::at_most(worst, REL_TOL))
}

fn submult(seed: u64, kind: NormKind) -> Result<CheckResult> {
    let mut worst = f64::NEG_INFINITY;
    for &k in &DIMS {
        for t in 0..TRIALS {
            let mut rng = rng_for(seed, t * 16 + k as u64);
            let (a, b) = (gaussian_matrix(k, &mut rng), gaussian_matrix(k, &mut rng));
            let bound = norm(&a, kind) * norm(&b, kind);
            worst = worst.max((norm(&a.matmul(&b), kind) - bound) / bound);
        }
    }
    Ok(CheckResult::at_most(worst, REL_TOL))
}

fn check_submult_op(seed: u64) -> Result<CheckResult> {
    submult(seed, NormKind::Operator)
}

fn check_submult_frob(seed: u64) -> Result<CheckResult> {
    submult(seed, NormKind::Frobenius)
}

/// The normalized HS norm is not submultiplicative: `A = B = diag(1, 0)`.
fn check_hs_submult(_seed: u64) -> Result<CheckResult> {
    let a = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
    let ab = norm(&a.matmul(&a), NormKind::NormalizedHS);
    let product = norm(&a, NormKind::NormalizedHS).powi(2);
    let margin = ab - product;
    Ok(CheckResult {
        pass: margin >= 0.2,
        measured: margin,
        bound: 0.2,
        target: None,
        witness: Some(serde_json::json!({
            "a": "diag(1, 0)",
            "b": "diag(1, 0)",
            "norm_ab": ab,
            "norm_a_times_norm_b": product,
        })),
    })
}

fn check_nearest_involution(seed: u64) -> Result<CheckResult> {
    // B = B*, B^2 = 1 and |B - A| <= |1 - A^2| in all three norms; measured
    // is the largest ratio |B - A| / |1 - A^2| (or involution error)
    let mut worst: f64 = 0.0;
    for &k in &DIMS {
        for t in 0..100 {
            let mut rng = rng_for(seed, t * 16 + k as u64);
            let a = haar_unitary_with(k, &mut rng)?;
            let b = nearest_involution(&a)?;
            let bm = b.matrix();
            worst = worst.max((bm - &bm.adjoint()).frobenius());
            worst = worst.max(bm.matmul(bm).minus_identity().frobenius());
            let a2 = a.matrix().matmul(a.matrix()).minus_identity();
            for kind in NormKind::ALL {
                worst = worst.max(norm(&(bm - a.matrix()), kind) / norm(&a2, kind));
            }
        }
    }
    Ok(CheckResult::at_most(worst, 1.0 + REL_TOL))
}

fn check_exp_bounds(seed: u64) -> Result<CheckResult> {
    // |1 - e^X| <= |X| e^|X| and |1 + X - e^X| <= |X|^2 e^|X| for skew X with
    // |X|_op <= 2; measured is the largest ratio of left to right side
    let mut worst: f64 = 0.0;
    for &k in &DIMS {
        for t in 0..TRIALS {
            let mut rng = rng_for(seed, t * 16 + k as u64);
            let x = random_skew(k, &mut rng);
            let scale = 2.0 * rand::Rng::random::<f64>(&mut rng) / operator_norm(&x);
            let x = x.scale(scale);
            let e = exp_skew(&x)?;
            let d1 = e.matrix().minus_identity();
            let d2 = &d1 - &x;
            for kind in NormKind::ALL {
                let n = norm(&x, kind);
                worst = worst.max(norm(&d1, kind) / (n * n.exp()));
                worst = worst.max(norm(&d2, kind) / (n * n * n.exp()));
            }
        }
    }
    Ok(CheckResult::at_most(worst, 1.0 + REL_TOL))
}

fn check_clock_shift(_seed: u64) -> Result<CheckResult> {
    // defects equal |w - 1| (op) and sqrt(n) |w - 1| (Frobenius)
    let mut worst: f64 = 0.0;
    for n in [2, 3, 4, 8, 16, 64, 128] {
        let rep = voiculescu_rep(n)?;
        let gap = 2.0 * (std::f64::consts::PI / n as f64).sin();
        worst = worst
            .max((rep.defect(NormKind::Operator)? - gap).abs())
            .max((rep.defect(NormKind::Frobenius)? - (n as f64).sqrt() * gap).abs());
    }
    Ok(CheckResult::at_most(worst, 1e-10))
}

fn check_relator_bound(_seed: u64) -> Result<CheckResult> {
    // |phi(a^2 b a^-2 b^-1) - 1| <= 2 defect(phi) on the clock/shift pair
    let rep = voiculescu_rep(16)?;
    let r = Alphabet::standard(2).parse_word("a a b a' a' b'")?;
    let witness = free_abelian_witness(&r, 2)?;
    let mut worst = f64::NEG_INFINITY;
    for kind in NormKind::ALL {
        let rb = relator_bound_check(&rep, &r, &witness, kind)?;
        worst = worst.max(rb.lhs - rb.bound);
    }
    Ok(CheckResult::at_most(worst, 1e-10))
}

fn check_cocycle_identities(seed: u64) -> Result<CheckResult> {
    let z2 = NormalFormGroup::free_abelian(2)?;
    let c6 = NormalFormGroup::cyclic(6)?;
    let cases = [
        (voiculescu_rep(5)?, &z2, 2),
        (voiculescu_rep(8)?, &z2, 3),
        (perturbed_rep(&z2, 8, 0.1, seed)?, &z2, 3),
        (perturbed_rep(&c6, 8, 0.1, seed)?, &c6, 3),
    ];
    let mut worst: f64 = 0.0;
    for (phi, group, radius) in cases {
        let lift = Lift::new(&phi, Arc::new(ball(group, radius)))?;
        let c = hochschild_cocycle(&lift, phi.defect(NormKind::Frobenius)?)?;
        let r = cocycle_residuals(&c, &lift)?;
        worst = worst.max(r.hochschild.max(r.symmetry).max(r.group_cocycle) / (1.0 + r.scale));
    }
    Ok(CheckResult::at_most(worst, 1e-10))
}

fn check_bs23_block_bound(_seed: u64) -> Result<CheckResult> {
    let mut worst = f64::NEG_INFINITY;
    for n in [1, 2, 4, 8, 16, 32] {
        let (a, b) = bs23_pair(n)?;
        let v = bs23_relation_gap(&a, &b, NormKind::Frobenius);
        worst = worst.max(v * v - BsBlockData::new(n)?.block_bound_sum());
    }
    Ok(CheckResult::at_most(worst, 1e-8))
}

fn check_block_constant(_seed: u64) -> Result<CheckResult> {
    let v = block_constant();
    Ok(CheckResult {
        pass: (v - 6.0).abs() <= 1e-10,
        measured: v,
        bound: 1e-10,
        target: Some(6.0),
        witness: None,
    })
}
