//! The three unitarily invariant norms and the matrix facts the pipeline
//! relies on.

use asymlab::normkit::{
    exp_skew, haar_unitary, nearest_involution, norm, random_skew, ComplexMatrix, NormKind,
};
use asymlab::seed::rng;
use asymlab::Result;

fn main() -> Result<()> {
    let mut rng = rng(1);
    let a = asymlab::normkit::gaussian_matrix(4, &mut rng);
    for kind in NormKind::ALL {
        println!("|A|_{kind:<4} = {:.6}", norm(&a, kind));
    }

    // normalized Hilbert-Schmidt is not submultiplicative
    let p = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
    let hs = |m: &ComplexMatrix| norm(m, NormKind::NormalizedHS);
    println!(
        "\nP = diag(1, 0): |PP|_hs = {:.4} > |P|_hs |P|_hs = {:.4}",
        hs(&p.matmul(&p)),
        hs(&p) * hs(&p)
    );

    // nearest involution: |B - U| <= |1 - U^2|
    let u = haar_unitary(6, 7)?;
    let b = nearest_involution(&u)?;
    let u2 = u.matrix().matmul(u.matrix()).minus_identity();
    println!();
    for kind in NormKind::ALL {
        println!(
            "{kind:<4}: |B - U| = {:.4} <= |1 - U^2| = {:.4}",
            norm(&(b.matrix() - u.matrix()), kind),
            norm(&u2, kind)
        );
    }

    // exponential bounds for skew X
    let x = random_skew(6, &mut rng).scale(1.5);
    let e = exp_skew(&x)?;
    let d1 = e.matrix().minus_identity();
    let d2 = &d1 - &x;
    let n = norm(&x, NormKind::Operator);
    println!(
        "\n|1 - e^X| = {:.4} <= {:.4},  |1 + X - e^X| = {:.4} <= {:.4}",
        norm(&d1, NormKind::Operator),
        n * n.exp(),
        norm(&d2, NormKind::Operator),
        n * n * n.exp()
    );
    Ok(())
}
