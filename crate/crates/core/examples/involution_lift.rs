//! Lifting an almost-representation of `Z/6` to a window: the element of
//! order two gets the nearest involution to `phi(a^3)`.

use std::sync::Arc;

use asymlab::almostrep::Lift;
use asymlab::families::perturbed_rep;
use asymlab::groups::{ball, NormalFormGroup};
use asymlab::normkit::NormKind;
use asymlab::Result;

fn main() -> Result<()> {
    let group = NormalFormGroup::cyclic(6)?;
    let phi = perturbed_rep(&group, 4, 0.05, 3)?;
    let lift = Lift::new(&phi, Arc::new(ball(&group, 3)))?;
    println!(
        "window of {} elements, defect {:.4e}",
        lift.window().len(),
        phi.defect(NormKind::Frobenius)?
    );
    for (r, (cost, bound)) in lift
        .repairs()
        .iter()
        .zip(lift.repair_costs(NormKind::Frobenius))
    {
        let v = lift.value(r.element).matrix();
        println!(
            "repaired {}: |fixed - raw| = {cost:.4e} <= |1 - raw^2| = {bound:.4e}; |V - V*| = {:e}, |V^2 - 1| = {:.2e}",
            group.format_element(lift.window().element(r.element)),
            (v - &v.adjoint()).frobenius(),
            v.matmul(v).minus_identity().frobenius()
        );
    }
    Ok(())
}
