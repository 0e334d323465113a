//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test --release --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use asymlab::almostrep::{homdist_lower_bound_voiculescu, AlmostRep, Lift};
use asymlab::cli::{execute, verify, Cli, Command, CorrectArgs, SweepArgs, VerifyArgs};
use asymlab::cohomology::{
    coboundary1, cocycle_residuals, correction_step, hochschild_cocycle, solve_coboundary, Cochain1,
};
use asymlab::families::{
    block_constant, bs23_pair, bs23_relation_gap, commutator_gap, diagonal_rep, loglog_fit,
    perturbed_rep, voiculescu_rep, BsBlockData,
};
use asymlab::groups::{ball, NormalFormGroup, Window};
use asymlab::normkit::{random_skew, ComplexMatrix, NormKind};
use asymlab::seed::rng_for;
use asymlab::Result;
use num_complex::Complex64;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict {
        pass,
        detail: detail.into(),
    })
}

fn run(
    id: usize,
    name: &str,
    limit: Option<Duration>,
    f: impl FnOnce() -> Result<Verdict>,
) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (mut pass, mut detail) = match outcome {
        Ok(v) => (v.pass, v.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            pass = false;
            detail.push_str(&format!("; over the {}s limit", limit.as_secs()));
        }
    }
    let tag = if pass { "PASS" } else { "FAIL" };
    println!(
        "{tag} {id:>2} {name}: {detail} [{:.1}s]",
        elapsed.as_secs_f64()
    );
    pass
}

fn pow2(from: usize, to: usize) -> Vec<usize> {
    std::iter::successors(Some(from), |n| Some(n * 2))
        .take_while(|&n| n <= to)
        .collect()
}

fn unit_gap(n: usize) -> f64 {
    // |e^{2 pi i/n} - 1| straight from the complex number
    (Complex64::from_polar(1.0, 2.0 * PI / n as f64) - 1.0).norm()
}

fn voiculescu_exactness() -> Result<Verdict> {
    let (mut op, mut frob) = (0.0f64, 0.0f64);
    for n in pow2(2, 512) {
        let rep = voiculescu_rep(n)?;
        let g = unit_gap(n);
        op = op.max((rep.defect(NormKind::Operator)? - g).abs());
        frob = frob.max((rep.defect(NormKind::Frobenius)? - (n as f64).sqrt() * g).abs());
    }
    verdict(
        op <= 1e-10 && frob <= 1e-8,
        format!("max op error {op:.2e}, max frob error {frob:.2e}"),
    )
}

fn voiculescu_scaling() -> Result<Verdict> {
    let ns = pow2(8, 512);
    let ys = ns
        .iter()
        .map(|&n| voiculescu_rep(n)?.defect(NormKind::Frobenius))
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let slope = loglog_fit(&xs, &ys)?.slope;
    verdict(
        (-0.55..=-0.45).contains(&slope),
        format!("frob slope {slope:.4}"),
    )
}

fn voiculescu_homdist() -> Result<Verdict> {
    let bound = homdist_lower_bound_voiculescu(512)?;
    let oracle = (2.0 - unit_gap(512)).sqrt() - 1.0;
    let err = (bound - oracle).abs();
    verdict(
        err <= 1e-12 && bound >= 0.40,
        format!("bound {bound:.6}, error {err:.1e}"),
    )
}

fn bs23_defect_scaling() -> Result<Verdict> {
    let ns = pow2(4, 256);
    let (mut ys, mut hs, mut chain) = (Vec::new(), Vec::new(), f64::NEG_INFINITY);
    for &n in &ns {
        let (a, b) = bs23_pair(n)?;
        let v = bs23_relation_gap(&a, &b, NormKind::Frobenius);
        chain = chain.max(v * v - BsBlockData::new(n)?.block_bound_sum());
        ys.push(v);
        hs.push(bs23_relation_gap(&a, &b, NormKind::NormalizedHS));
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let slope = loglog_fit(&xs, &ys)?.slope;
    let hs_slope = loglog_fit(&xs, &hs)?.slope;
    verdict(
        (-1.15..=-0.85).contains(&slope) && chain <= 1e-8,
        format!("frob slope {slope:.4} (normalized HS slope {hs_slope:.4}), max value^2 - block bound {chain:.3e}"),
    )
}

fn bs23_obstruction() -> Result<Verdict> {
    let (mut min_diff, mut max_diff, mut min_ratio) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY);
    for n in pow2(4, 256) {
        let (a, b) = bs23_pair(n)?;
        let gap = commutator_gap(&a, &b);
        let root = ((6 * n) as f64).sqrt();
        min_diff = min_diff.min(root - gap);
        max_diff = max_diff.max(root - gap);
        if n >= 32 {
            min_ratio = min_ratio.min(gap / root);
        }
    }
    verdict(
        min_diff > 0.0 && max_diff <= 5.0 && min_ratio >= 0.9,
        format!(
            "sqrt(6n) - gap in [{min_diff:.4}, {max_diff:.4}], min gap/sqrt(6n) for n >= 32 {min_ratio:.4}"
        ),
    )
}

fn block_constant_check() -> Result<Verdict> {
    let v = block_constant();
    verdict((v - 6.0).abs() <= 1e-10, format!("measured {v:.15}"))
}

fn norm_properties() -> Result<Verdict> {
    let names = [
        "norm-ideal",
        "norm-adjoint-abs",
        "norm-monotone",
        "norm-invariance",
        "submult-op",
        "submult-frob",
        "hs-submult",
        "nearest-involution",
    ];
    let report = verify(&names.map(String::from), 2024)?;
    let failed: Vec<&str> = names.iter().copied().filter(|n| !report[*n].pass).collect();
    let margin = report["hs-submult"].measured;
    verdict(
        failed.is_empty() && margin >= 0.2,
        if failed.is_empty() {
            format!("{} checks pass, HS witness margin {margin:.4}", names.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    )
}

fn lift(phi: &AlmostRep, group: &NormalFormGroup, radius: usize) -> Result<Lift> {
    Lift::new(phi, Arc::new(ball(group, radius)))
}

/// Worst `max residual / (1 + scale)` over the given cases.
fn cocycle_worst(cases: &[(AlmostRep, &NormalFormGroup, usize)]) -> Result<f64> {
    let mut worst = 0.0f64;
    for (phi, group, radius) in cases {
        let l = lift(phi, group, *radius)?;
        let c = hochschild_cocycle(&l, phi.defect(NormKind::Frobenius)?)?;
        let r = cocycle_residuals(&c, &l)?;
        worst = worst.max(r.hochschild.max(r.symmetry).max(r.group_cocycle) / (1.0 + r.scale));
    }
    Ok(worst)
}

fn cocycle_identities() -> Result<Verdict> {
    let z2 = NormalFormGroup::free_abelian(2)?;
    let mut cases = Vec::new();
    for radius in [1, 2, 3] {
        for n in [2, 5, 8] {
            cases.push((voiculescu_rep(n)?, &z2, radius));
        }
        for (k, eps) in [(2, 0.1), (4, 0.01), (8, 0.1)] {
            cases.push((perturbed_rep(&z2, k, eps, 11 + k as u64)?, &z2, radius));
        }
    }
    let worst = cocycle_worst(&cases)?;
    verdict(
        worst <= 1e-10,
        format!(
            "{} cases, worst residual / (1 + scale) {worst:.2e}",
            cases.len()
        ),
    )
}

/// Plants `d beta0` for a random skew `beta0` on a genuine lift and returns
/// the fit residual and the independently recomputed `|d beta - alpha|`.
fn plant_and_recover(l: &Lift, seed: u64) -> Result<(f64, f64)> {
    let w: Arc<Window> = l.window().clone();
    let mut rng = rng_for(seed, 0);
    let values = (0..w.len())
        .map(|i| {
            if i == w.identity() {
                ComplexMatrix::zeros(l.dim())
            } else {
                random_skew(l.dim(), &mut rng)
            }
        })
        .collect();
    let beta0 = Cochain1::new(w.clone(), values)?;
    let alpha = coboundary1(&beta0, l)?;
    let sol = solve_coboundary(&alpha, l)?;
    let d = coboundary1(&sol.beta, l)?;
    let mut sq = 0.0;
    for p in w.pairs() {
        if let (Some(x), Some(y)) = (d.get(p.g, p.h), alpha.get(p.g, p.h)) {
            sq += (x - y).frobenius().powi(2);
        }
    }
    Ok((sol.residual, sq.sqrt()))
}

fn plant_recover() -> Result<Verdict> {
    let c5 = NormalFormGroup::cyclic(5)?;
    let z2 = NormalFormGroup::free_abelian(2)?;
    let mut worst = 0.0f64;
    let mut sizes = Vec::new();
    for (group, radius) in [(&c5, 2), (&z2, 2), (&z2, 3)] {
        let l = lift(&diagonal_rep(group, 4, 3)?, group, radius)?;
        sizes.push(l.window().len());
        let (res, check) = plant_and_recover(&l, 17)?;
        worst = worst.max(res).max(check);
    }
    verdict(
        worst <= 1e-8 && sizes.iter().all(|&s| s <= 30),
        format!("window sizes {sizes:?}, worst residual {worst:.2e}"),
    )
}

/// One correction step at each perturbation size: `(eps, before, after)`.
fn gain_table(group: &NormalFormGroup, radius: usize, seed: u64) -> Result<Vec<(f64, f64, f64)>> {
    let window = Arc::new(ball(group, radius));
    [1e-1, 1e-2, 1e-3]
        .into_iter()
        .map(|eps| {
            let phi = perturbed_rep(group, 8, eps, seed)?;
            let before = phi.defect(NormKind::Frobenius)?;
            let (psi, _) = correction_step(&phi, &window, before)?;
            Ok((eps, before, psi.defect(NormKind::Frobenius)?))
        })
        .collect()
}

/// `(bound ok at every eps, ratio-of-ratios in [3, 30], summary)`.
fn judge_gain(name: &str, table: &[(f64, f64, f64)]) -> (bool, bool, String) {
    let bound_ok = table.iter().all(|&(eps, b, a)| a <= 10.0 * eps * b);
    let ratios: Vec<f64> = table.iter().map(|&(_, b, a)| a / b).collect();
    let ror: Vec<f64> = ratios.windows(2).map(|w| w[0] / w[1]).collect();
    let band_ok = ror.iter().all(|r| (3.0..=30.0).contains(r));
    let ratio_text: Vec<String> = ratios.iter().map(|r| format!("{r:.2e}")).collect();
    let ror_text: Vec<String> = ror.iter().map(|r| format!("{r:.1}")).collect();
    (
        bound_ok,
        band_ok,
        format!(
            "{name}: after/before [{}], ratio of ratios [{}]",
            ratio_text.join(", "),
            ror_text.join(", ")
        ),
    )
}

fn quadratic_gain(c6_table: &[(f64, f64, f64)]) -> Result<Verdict> {
    let z2 = NormalFormGroup::free_abelian(2)?;
    let (zb, zr, zt) = judge_gain("Z^2", &gain_table(&z2, 2, 42)?);
    let (cb, cr, ct) = judge_gain("Z/6", c6_table);
    verdict(zb && zr && cb && cr, format!("{zt}; {ct}"))
}

fn involution_branch(c6_table: &[(f64, f64, f64)]) -> Result<Verdict> {
    let c6 = NormalFormGroup::cyclic(6)?;
    let phi = perturbed_rep(&c6, 8, 0.01, 7)?;
    let l = lift(&phi, &c6, 3)?;
    let involution = l
        .window()
        .index_of(&c6.element_of(&asymlab::words::Word::power(0, 3)));
    let repaired = l.repairs().iter().map(|r| r.element).collect::<Vec<_>>();
    let exact = repaired.iter().all(|&i| {
        let v = l.value(i).matrix();
        *v == v.adjoint() && v.matmul(v).minus_identity().frobenius() <= 1e-12
    });
    let branch_ok =
        involution.is_some() && repaired == vec![involution.unwrap_or(usize::MAX)] && exact;

    let cocycle = cocycle_worst(&[
        (phi.clone(), &c6, 3),
        (perturbed_rep(&c6, 4, 0.1, 3)?, &c6, 2),
        (perturbed_rep(&c6, 8, 0.001, 5)?, &c6, 3),
    ])?;
    let plant = lift(&diagonal_rep(&c6, 4, 3)?, &c6, 3)?;
    let (res, check) = plant_and_recover(&plant, 19)?;
    let (gb, gr, gt) = judge_gain("Z/6", c6_table);
    verdict(
        branch_ok && cocycle <= 1e-10 && res.max(check) <= 1e-8 && gb && gr,
        format!(
            "involution repaired exactly: {branch_ok}; cocycle residual {cocycle:.2e}; planted residual {:.2e}; \
             step bound {gb}; {gt}",
            res.max(check)
        ),
    )
}

fn commands() -> Vec<Cli> {
    let sweep = |example: &str, sizes: &str| Cli {
        command: Command::Sweep(SweepArgs {
            example: example.into(),
            sizes: sizes.into(),
            norm: None,
            seed: 3,
            out: None,
        }),
    };
    let correct = |rep: &str, radius: Option<usize>| Cli {
        command: Command::Correct(CorrectArgs {
            rep: rep.into(),
            radius,
            max_iters: 10,
            out: None,
        }),
    };
    vec![
        sweep("voiculescu", "4:512:x2"),
        sweep("bs23", "4:256:x2"),
        sweep("perturbed:z^2:0.01", "2,4,8"),
        Cli {
            command: Command::Verify(VerifyArgs {
                check: vec![],
                seed: 9,
                out: None,
            }),
        },
        correct("perturbed:z^2:8:0.01:42", Some(2)),
        correct("perturbed:cyclic:6:8:0.01:7", None),
    ]
}

fn determinism() -> Result<Verdict> {
    let mut differing = Vec::new();
    let cmds = commands();
    for (i, cli) in cmds.iter().enumerate() {
        if execute(cli)?.body != execute(cli)?.body {
            differing.push(i);
        }
    }
    verdict(
        differing.is_empty(),
        format!(
            "{} commands run twice, differing outputs: {differing:?}",
            cmds.len()
        ),
    )
}

fn main() -> ExitCode {
    let c6 = NormalFormGroup::cyclic(6).expect("cyclic group");
    let c6_table = gain_table(&c6, 3, 7);
    let c6_table = || {
        c6_table
            .as_ref()
            .map(|t| t.as_slice())
            .map_err(|e| asymlab::Error::InvalidArgument(e.to_string()))
    };
    let results = [
        run(
            1,
            "voiculescu exactness",
            Some(Duration::from_secs(30)),
            voiculescu_exactness,
        ),
        run(2, "voiculescu frobenius scaling", None, voiculescu_scaling),
        run(
            3,
            "voiculescu homdist lower bound",
            None,
            voiculescu_homdist,
        ),
        run(
            4,
            "bs23 relation defect",
            Some(Duration::from_secs(120)),
            bs23_defect_scaling,
        ),
        run(5, "bs23 obstruction growth", None, bs23_obstruction),
        run(6, "block constant", None, block_constant_check),
        run(7, "norm properties", None, norm_properties),
        run(8, "cocycle identities", None, cocycle_identities),
        run(9, "plant and recover", None, plant_recover),
        run(10, "quadratic gain", None, || quadratic_gain(c6_table()?)),
        run(11, "involution branch", None, || {
            involution_branch(c6_table()?)
        }),
        run(12, "determinism", None, determinism),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
