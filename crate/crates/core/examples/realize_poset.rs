//! Build a layered diagram whose edge poset is a given poset.

use std::fmt::Write;

use depcalc::diagram::{edge_poset, realize_poset};
use depcalc::expressible::zigzag;
use depcalc::Result;

pub fn run_example() -> Result<String> {
    let mut out = String::new();
    let z = zigzag();
    let (pg, layering) = realize_poset(&z, &[1, 0, 1, 0], &[0, 1, 0, 1])?;
    writeln!(out, "{} layers, instance order {:?}", layering.diagram.layers.len(), layering.order).unwrap();
    let (p, _) = edge_poset(&pg, &layering.diagram)?;
    writeln!(out, "edge poset matches: {}", p.relabel(&layering.order)? == z).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
