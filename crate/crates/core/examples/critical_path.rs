//! Makespan, critical chain and a text Gantt chart for a task poset.

use std::fmt::Write;

use depcalc::poset::from_pairs;
use depcalc::tropical::{parse_runtimes, render_gantt, schedule};
use depcalc::Result;

pub fn run_example() -> Result<String> {
    let mut out = String::new();
    // two independent programs f;g and f';g' with runtimes 1,3 and 4,1
    let p = from_pairs(4, &[(0, 1), (2, 3)])?;
    let s = schedule(&p, &parse_runtimes("1,3,4,1")?)?;
    writeln!(out, "makespan {}", s.makespan).unwrap();
    writeln!(out, "critical chain {:?}", s.critical_chain).unwrap();
    out.push_str(&render_gantt(&s, 1));

    // fractional runtimes stay exact
    let s = schedule(&p, &parse_runtimes("1/3,0.5,2/3,1/6")?)?;
    writeln!(out, "fractional makespan {}", s.makespan).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
