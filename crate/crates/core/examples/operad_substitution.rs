//! Lexicographic substitution of posets and its symmetric-group action.

use std::fmt::Write;

use depcalc::operad::{act, block_permutation, mu, permute_parts, Permutation};
use depcalc::{FinitePoset, Result};

pub fn run_example() -> Result<String> {
    let mut out = String::new();
    let outer = FinitePoset::chain(2);
    let parts = [FinitePoset::antichain(2), FinitePoset::chain(3)];
    let composite = mu(&outer, &parts)?;
    writeln!(out, "chain(2) ∘ (antichain(2), chain(3)) = {composite:?}").unwrap();

    // equivariance: (τ·P) ∘ (parts permuted) = block(τ)·(P ∘ parts)
    let tau = Permutation::new(vec![1, 0])?;
    let lhs = mu(&act(&tau, &outer)?, &permute_parts(&tau, &parts))?;
    let sizes: Vec<usize> = parts.iter().map(FinitePoset::size).collect();
    let rhs = act(&block_permutation(&tau, &sizes), &composite)?;
    writeln!(out, "equivariant: {}", lhs == rhs).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
