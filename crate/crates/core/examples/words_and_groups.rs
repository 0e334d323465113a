//! Presentations, free reduction, normal-form sections and balls.

use asymlab::groups::{ball, builtin_normal_form, Presentation};
use asymlab::Result;

fn main() -> Result<()> {
    let bs: Presentation = "a, b | b' a a b a' a' a'".parse()?;
    println!(
        "{bs} has {} generators and {} relator",
        bs.rank(),
        bs.relators().len()
    );

    let alphabet = bs.alphabet();
    let w = alphabet.parse_word("a b b' a' a a")?;
    println!("`a b b' a' a a` reduces to `{}`", alphabet.format_word(&w));

    for name in ["z^2", "cyclic:6"] {
        let group = builtin_normal_form(name)?;
        let window = ball(&group, 2);
        println!("\n{name}: ball of radius 2 has {} elements", window.len());
        for g in window.elements() {
            let s = group.section(g);
            let tag = if group.is_involution(g) {
                "  (involution)"
            } else {
                ""
            };
            println!(
                "  {:>10}  ->  {}{tag}",
                group.format_element(g),
                group.presentation().alphabet().format_word(&s)
            );
        }
    }
    Ok(())
}
