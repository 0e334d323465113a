//! Bounding `|phi(r) - 1|` for a consequence `r` of the relators through an
//! explicit product of conjugates.

use asymlab::almostrep::{free_abelian_witness, relator_bound_check};
use asymlab::families::voiculescu_rep;
use asymlab::normkit::NormKind;
use asymlab::words::Alphabet;
use asymlab::Result;

fn main() -> Result<()> {
    let alphabet = Alphabet::standard(2);
    let phi = voiculescu_rep(12)?;
    for text in [
        "a b a' b'",
        "a a b a' a' b'",
        "a b b a' b' b'",
        "a a b b a' a' b' b'",
    ] {
        let r = alphabet.parse_word(text)?;
        let witness = free_abelian_witness(&r, 2)?;
        let check = relator_bound_check(&phi, &r, &witness, NormKind::Operator)?;
        println!(
            "{text:<22} witness length {:>2}: |phi(r) - 1| = {:.4} <= {:.4}",
            witness.len(),
            check.lhs,
            check.bound
        );
    }
    Ok(())
}
