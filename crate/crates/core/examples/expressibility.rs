//! Recognise expressible posets and decompose them into `ox`/`tri` terms.

use std::fmt::Write;

use depcalc::expressible::{decompose, zigzag};
use depcalc::poset::from_pairs;
use depcalc::{evaluate, Result};

pub fn run_example() -> Result<String> {
    let mut out = String::new();

    // a < b, a < c, c < d
    let p = from_pairs(4, &[(0, 1), (0, 2), (2, 3)])?;
    let e = decompose(&p).expect("no zig-zag inside");
    writeln!(out, "expression: {e}").unwrap();
    assert_eq!(evaluate(&e)?, p);

    match decompose(&zigzag()) {
        Ok(e) => writeln!(out, "unexpected: {e}").unwrap(),
        Err(z) => writeln!(out, "zig-zag obstruction: {z}").unwrap(),
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
