//! The Hochschild cocycle of a lifted clock/shift pair and the identities it
//! satisfies on a ball in `Z^2`.

use std::sync::Arc;

use asymlab::almostrep::Lift;
use asymlab::cohomology::{cocycle_residuals, hochschild_cocycle};
use asymlab::families::voiculescu_rep;
use asymlab::groups::{ball, NormalFormGroup};
use asymlab::normkit::NormKind;
use asymlab::Result;

fn main() -> Result<()> {
    let z2 = NormalFormGroup::free_abelian(2)?;
    for n in [3, 5, 8] {
        let phi = voiculescu_rep(n)?;
        let lift = Lift::new(&phi, Arc::new(ball(&z2, 3)))?;
        let c = hochschild_cocycle(&lift, phi.defect(NormKind::Frobenius)?)?;
        let r = cocycle_residuals(&c, &lift)?;
        println!(
            "n = {n}: |c| <= {:.3}, hochschild {:.1e}, symmetry {:.1e}, group cocycle {:.1e} (raw d alpha {:.3})",
            r.scale, r.hochschild, r.symmetry, r.group_cocycle, r.group_cocycle_raw
        );
    }
    Ok(())
}
