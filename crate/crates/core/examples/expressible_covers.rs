//! Recover a non-expressible poset as the intersection of expressible ones.

use std::fmt::Write;

use depcalc::expressible::{is_expressible, zigzag};
use depcalc::operad::{expressible_covers, intersect};
use depcalc::Result;

pub fn run_example() -> Result<String> {
    let mut out = String::new();
    let z = zigzag();
    let covers = expressible_covers(&z);
    for c in &covers {
        writeln!(out, "cover {c:?} expressible={}", is_expressible(c)).unwrap();
    }
    let meet = intersect(&covers)?;
    writeln!(out, "intersection recovers Z: {}", meet == z).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
