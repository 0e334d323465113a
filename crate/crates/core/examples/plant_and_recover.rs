//! Solving `d beta = alpha` for a planted coboundary, with the dense and the
//! iterative least-squares solvers.

use std::sync::Arc;

use asymlab::almostrep::Lift;
use asymlab::cohomology::{coboundary1, solve_coboundary_with, Cochain1, SolveMethod};
use asymlab::families::diagonal_rep;
use asymlab::groups::{ball, NormalFormGroup};
use asymlab::normkit::{random_skew, ComplexMatrix};
use asymlab::seed::rng;
use asymlab::Result;

fn main() -> Result<()> {
    let z2 = NormalFormGroup::free_abelian(2)?;
    let lift = Lift::new(&diagonal_rep(&z2, 4, 1)?, Arc::new(ball(&z2, 2)))?;
    let w = lift.window().clone();
    let mut rng = rng(5);
    let planted = (0..w.len())
        .map(|i| {
            if i == w.identity() {
                ComplexMatrix::zeros(4)
            } else {
                random_skew(4, &mut rng)
            }
        })
        .collect();
    let alpha = coboundary1(&Cochain1::new(w, planted)?, &lift)?;
    for method in [SolveMethod::Dense, SolveMethod::Iterative] {
        let sol = solve_coboundary_with(&alpha, &lift, method)?;
        println!(
            "{method:?}: residual {:.2e}, max |beta| {:.4}, iterations {}",
            sol.residual,
            sol.beta.max_frobenius(),
            sol.iterations
        );
    }
    Ok(())
}
