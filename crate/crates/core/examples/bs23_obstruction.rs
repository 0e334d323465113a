//! The `BS(2,3)` pair in `U(6n)`: the defining relation is almost satisfied
//! while `[a, b^-1 a b]` stays of size about `sqrt(6n)`.

use asymlab::families::{
    block_constant, bs23_pair, bs23_relation_gap, commutator_gap, BsBlockData,
};
use asymlab::normkit::NormKind;
use asymlab::Result;

fn main() -> Result<()> {
    println!("block constant: {:.12}\n", block_constant());
    println!(
        "{:>4} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "n", "defect_frob", "defect_hs", "block bound", "gap", "sqrt(6n)"
    );
    for n in [1, 2, 4, 8, 16, 32, 64, 128] {
        let (a, b) = bs23_pair(n)?;
        let f = bs23_relation_gap(&a, &b, NormKind::Frobenius);
        let h = bs23_relation_gap(&a, &b, NormKind::NormalizedHS);
        let bound = BsBlockData::new(n)?.block_bound_sum().sqrt();
        let gap = commutator_gap(&a, &b);
        println!(
            "{n:>4} {f:>12.5e} {h:>12.5e} {bound:>12.5e} {gap:>12.6} {:>12.6}",
            ((6 * n) as f64).sqrt()
        );
    }
    Ok(())
}
