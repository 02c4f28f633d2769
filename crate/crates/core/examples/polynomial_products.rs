//! Dirichlet and composition products of finite polynomials, and `⊠^P`.

use std::fmt::Write;

use depcalc::expressible::zigzag;
use depcalc::poly::{boxtimes_poly, comparitor, compose, dirichlet, signature, FinitePolynomial};
use depcalc::Result;

pub fn run_example() -> Result<String> {
    let mut out = String::new();
    let p = FinitePolynomial::new(vec![2, 1]); // y^2 + y
    let q = FinitePolynomial::new(vec![1, 0]); // y + 1
    writeln!(out, "p ⊗ q = {}", dirichlet(&p, &q)).unwrap();
    let pq = compose(&p, &q);
    writeln!(out, "p ◁ q = {pq}  signature {}", signature(&pq)).unwrap();

    let c = comparitor(&p, &q);
    writeln!(out, "comparitor on positions {:?}", c.on_positions).unwrap();

    let z = zigzag();
    let parts = vec![q.clone(); 4];
    let boxed = boxtimes_poly(&z, &parts, &z.first_linear_extension())?;
    writeln!(out, "⊠^Z(y+1, ..) has {} positions, signature {}", boxed.position_count(), signature(&boxed)).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
