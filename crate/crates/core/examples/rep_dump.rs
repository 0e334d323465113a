//! Saving an almost-representation as JSON and loading it back.

use asymlab::almostrep::{dist, AlmostRep, RepDump};
use asymlab::families::{bs23_rep, perturbed_rep};
use asymlab::groups::NormalFormGroup;
use asymlab::normkit::NormKind;
use asymlab::Result;

fn main() -> Result<()> {
    let c5 = NormalFormGroup::cyclic(5)?;
    let reps = [perturbed_rep(&c5, 2, 0.1, 4)?, bs23_rep(1)?];
    for phi in &reps {
        let text = serde_json::to_string(&phi.to_dump())?;
        let dump: RepDump = serde_json::from_str(&text)?;
        let back = AlmostRep::from_dump(&dump)?;
        println!(
            "{}: {} bytes of JSON, distance after round trip {:e}",
            phi.presentation(),
            text.len(),
            dist(phi, &back, NormKind::Operator)?
        );
    }
    Ok(())
}
