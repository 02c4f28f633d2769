//! Check productor, compositor and interchange laws of a decoration.

use std::collections::BTreeMap;

use depcalc::decoration::{check_decoration_laws, path_decoration, LawSample, TropicalAlgebra};
use depcalc::diagram::{tensor, Cell, Generator, PartialPolygraph, StringDiagram};
use depcalc::tropical::Runtime;
use depcalc::Result;

fn edge(src: &str, tgt: &str) -> Generator {
    Generator {
        src: vec![src.into()],
        tgt: vec![tgt.into()],
    }
}

pub fn run_example() -> Result<String> {
    let gens = BTreeMap::from([
        ("f".to_string(), edge("a", "b")),
        ("g".to_string(), edge("b", "c")),
        ("f2".to_string(), edge("a", "b")),
        ("g2".to_string(), edge("b", "c")),
    ]);
    let graph = PartialPolygraph::total(["a", "b", "c"].map(String::from), gens)?;
    let d: BTreeMap<String, Runtime> = [("f", 1), ("g", 3), ("f2", 4), ("g2", 1)]
        .into_iter()
        .map(|(n, t)| (n.to_string(), Runtime::integer(t)))
        .collect();

    let paths = vec![vec!["f".to_string(), "g".to_string()], vec!["f2".to_string(), "g2".to_string()]];
    let mut out = format!("paths run in {}\n", path_decoration(&graph, &d, &TropicalAlgebra, &paths)?);

    let single = |name: &str| {
        let g = graph.generator(name).unwrap();
        StringDiagram {
            input: g.src.clone(),
            output: g.tgt.clone(),
            layers: vec![vec![Cell::Gen(name.into())]],
        }
    };
    let [f, f2, g, g2] = ["f", "f2", "g", "g2"].map(single);
    let ff = tensor(&graph, &f, &f2)?.diagram;
    let gg = tensor(&graph, &g, &g2)?.diagram;
    let report = check_decoration_laws(
        &graph,
        &d,
        &TropicalAlgebra,
        &[LawSample::Compose(ff, gg), LawSample::Interchange(f, f2, g, g2)],
    );
    out.push_str(&report.to_string());
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
