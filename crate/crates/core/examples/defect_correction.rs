//! One correction step at several perturbation sizes, then the full loop.

use std::sync::Arc;

use asymlab::cohomology::{correction_step, diminish};
use asymlab::families::perturbed_rep;
use asymlab::groups::{ball, NormalFormGroup};
use asymlab::normkit::NormKind;
use asymlab::Result;

fn main() -> Result<()> {
    let group = NormalFormGroup::free_abelian(2)?;
    let window = Arc::new(ball(&group, 2));
    for eps in [1e-1, 1e-2, 1e-3] {
        let phi = perturbed_rep(&group, 4, eps, 42)?;
        let before = phi.defect(NormKind::Frobenius)?;
        let (psi, sol) = correction_step(&phi, &window, before)?;
        let after = psi.defect(NormKind::Frobenius)?;
        println!(
            "eps {eps:.0e}: {before:.3e} -> {after:.3e} (ratio {:.2e}, fit residual {:.2e})",
            after / before,
            sol.residual
        );
    }
    let phi = perturbed_rep(&group, 4, 1e-2, 42)?;
    let (_, report) = diminish(&phi, &group, 2, 10, 0.5)?;
    println!("\n{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
