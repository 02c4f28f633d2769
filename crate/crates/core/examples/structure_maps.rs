//! Turn an inclusion of expressible posets into a duoidal structure map.

use std::fmt::Write;

use depcalc::poset::from_pairs;
use depcalc::{derive_structure_map, verify_proof, Result};

pub fn run_example() -> Result<String> {
    let mut out = String::new();
    // (x0 ◁ x1) ⊗ (x2 ◁ x3) included in (x0 ⊗ x2) ◁ (x1 ⊗ x3)
    let parallel = from_pairs(4, &[(0, 1), (2, 3)])?;
    let crossed = from_pairs(4, &[(0, 1), (0, 3), (2, 1), (2, 3)])?;
    let proof = derive_structure_map(&parallel, &crossed)?;
    assert!(verify_proof(&proof));
    write!(out, "{proof}").unwrap();

    // the comparitor x0 ⊗ x1 → x0 ◁ x1
    let comparitor = derive_structure_map(
        &depcalc::FinitePoset::antichain(2),
        &depcalc::FinitePoset::chain(2),
    )?;
    writeln!(out, "comparitor: {} => {}", comparitor.source(), comparitor.target()).unwrap();

    if let Err(e) = derive_structure_map(&crossed, &parallel) {
        writeln!(out, "reverse direction: {e}").unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
