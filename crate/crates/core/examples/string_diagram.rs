//! Edge poset of a layered string diagram and its decorations.

use std::collections::BTreeMap;
use std::fmt::Write;

use depcalc::decoration::{decorate, PolynomialAlgebra, TropicalAlgebra};
use depcalc::diagram::{edge_poset, validate_diagram, PartialPolygraph, StringDiagram};
use depcalc::poly::FinitePolynomial;
use depcalc::tropical::Runtime;
use depcalc::Result;

const POLYGRAPH: &str = include_str!("../tests/fixtures/stringdiagram_polygraph.json");
const DIAGRAM: &str = include_str!("../tests/fixtures/stringdiagram.json");

pub fn run_example() -> Result<String> {
    let mut out = String::new();
    let pg = PartialPolygraph::from_json_str(POLYGRAPH)?;
    let diag = StringDiagram::from_json_str(DIAGRAM)?;
    validate_diagram(&pg, &diag)?;

    let (p, instances) = edge_poset(&pg, &diag)?;
    let names: Vec<&str> = instances.iter().map(|i| i.generator.as_str()).collect();
    writeln!(out, "instances {names:?}").unwrap();
    writeln!(out, "edge poset {p:?}").unwrap();

    let unit: BTreeMap<String, Runtime> = names.iter().map(|n| (n.to_string(), Runtime::integer(1))).collect();
    writeln!(out, "unit runtimes decorate to {}", decorate(&pg, &diag, &unit, &TropicalAlgebra)?).unwrap();

    let y_plus_one: BTreeMap<String, FinitePolynomial> = names
        .iter()
        .map(|n| (n.to_string(), FinitePolynomial::new(vec![1, 0])))
        .collect();
    let v = decorate(&pg, &diag, &y_plus_one, &PolynomialAlgebra)?;
    writeln!(out, "y+1 everywhere decorates to {} positions", v.position_count()).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
