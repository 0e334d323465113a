//! Clock and shift: the commutator defect is `|1 - w_n|` in operator norm
//! but only decays like `n^-1/2` in Frobenius norm.

use asymlab::almostrep::homdist_lower_bound_voiculescu;
use asymlab::families::{loglog_fit, voiculescu_rep};
use asymlab::normkit::NormKind;
use asymlab::Result;

fn main() -> Result<()> {
    let ns: Vec<usize> = (2..=9).map(|p| 1 << p).collect();
    let mut frob = Vec::new();
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>12}",
        "n", "op", "frob", "hs", "homdist_lb"
    );
    for &n in &ns {
        let rep = voiculescu_rep(n)?;
        let d = NormKind::ALL.map(|k| rep.defect(k));
        let [op, fr, hs] = [d[0].as_ref(), d[1].as_ref(), d[2].as_ref()].map(|v| *v.unwrap());
        frob.push(fr);
        println!(
            "{n:>5} {op:>12.4e} {fr:>12.4e} {hs:>12.4e} {:>12.6}",
            homdist_lower_bound_voiculescu(n)?
        );
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    println!("\nFrobenius slope {:.4}", loglog_fit(&xs, &frob)?.slope);
    Ok(())
}
