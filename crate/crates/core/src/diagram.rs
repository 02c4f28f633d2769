//! Partial polygraphs and layered string diagrams.
//!
//! A diagram is a sequence of layers. Each layer is a row of cells read
//! left to right against the current list of wire types: a generator
//! consumes its source types and emits its target types, an identity passes
//! one wire, and a swap exchanges two adjacent wires. The list between
//! layers (a *stage*) must be valid: consecutive types are `‖`-related.
//!
//! Generator instances are indexed by `(layer, position)` in lexicographic
//! order, and every poset or decoration output uses that order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{from_pairs, FinitePoset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub src: Vec<String>,
    pub tgt: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialPolygraph {
    types: BTreeSet<String>,
    compat: BTreeSet<(String, String)>,
    generators: BTreeMap<String, Generator>,
}

#[derive(Serialize, Deserialize)]
struct PolygraphJson {
    types: Vec<String>,
    #[serde(default)]
    compat: Vec<[String; 2]>,
    #[serde(default)]
    generators: BTreeMap<String, Generator>,
}

impl PartialPolygraph {
    /// Builds the polygraph, closing `compat` under symmetry and checking
    /// that every generator's source and target lists are valid.
    pub fn new(
        types: impl IntoIterator<Item = String>,
        compat: impl IntoIterator<Item = (String, String)>,
        generators: BTreeMap<String, Generator>,
    ) -> Result<Self> {
        let types: BTreeSet<String> = types.into_iter().collect();
        let known = |types: &BTreeSet<String>, t: &String| {
            if types.contains(t) {
                Ok(())
            } else {
                Err(Error::InvalidPolygraph(format!("unknown vertex type `{t}`")))
            }
        };
        let mut pairs = BTreeSet::new();
        for (a, b) in compat {
            known(&types, &a)?;
            known(&types, &b)?;
            pairs.insert((b.clone(), a.clone()));
            pairs.insert((a, b));
        }
        let pg = PartialPolygraph {
            types,
            compat: pairs,
            generators,
        };
        for (name, g) in &pg.generators {
            for t in g.src.iter().chain(&g.tgt) {
                known(&pg.types, t)?;
            }
            if !pg.is_valid_list(&g.src) || !pg.is_valid_list(&g.tgt) {
                return Err(Error::InvalidPolygraph(format!(
                    "generator `{name}` has an incompatible boundary"
                )));
            }
        }
        Ok(pg)
    }

    /// Every pair of the given types is compatible, including each with
    /// itself.
    pub fn total(
        types: impl IntoIterator<Item = String>,
        generators: BTreeMap<String, Generator>,
    ) -> Result<Self> {
        let types: Vec<String> = types.into_iter().collect();
        let compat: Vec<(String, String)> = types
            .iter()
            .flat_map(|a| types.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        Self::new(types, compat, generators)
    }

    pub fn types(&self) -> impl Iterator<Item = &str> {
        self.types.iter().map(String::as_str)
    }

    pub fn generators(&self) -> &BTreeMap<String, Generator> {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.get(name)
    }

    pub fn compatible(&self, a: &str, b: &str) -> bool {
        self.compat.contains(&(a.to_string(), b.to_string()))
    }

    pub fn is_valid_list(&self, list: &[String]) -> bool {
        list.windows(2).all(|w| self.compatible(&w[0], &w[1]))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: PolygraphJson = serde_json::from_str(s)?;
        Self::new(
            json.types,
            json.compat.into_iter().map(|[a, b]| (a, b)),
            json.generators,
        )
    }

    pub fn to_json_string(&self) -> String {
        let compat = self
            .compat
            .iter()
            .filter(|(a, b)| a <= b)
            .map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        let json = PolygraphJson {
            types: self.types.iter().cloned().collect(),
            compat,
            generators: self.generators.clone(),
        };
        serde_json::to_string(&json).expect("polygraph JSON is always serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cell {
    Gen(String),
    Id(String),
    Swap(String, String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringDiagram {
    pub input: Vec<String>,
    pub output: Vec<String>,
    pub layers: Vec<Vec<Cell>>,
}

/// A generator instance located in a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Instance {
    pub generator: String,
    pub layer: usize,
    pub position: usize,
}

impl StringDiagram {
    /// The identity diagram on a list of types.
    pub fn identity(types: Vec<String>) -> Self {
        StringDiagram {
            input: types.clone(),
            output: types,
            layers: Vec::new(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("diagram JSON is always serializable")
    }

    /// Generator instances in `(layer, position)` order.
    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for (layer, cells) in self.layers.iter().enumerate() {
            for (position, cell) in cells.iter().enumerate() {
                if let Cell::Gen(name) = cell {
                    out.push(Instance {
                        generator: name.clone(),
                        layer,
                        position,
                    });
                }
            }
        }
        out
    }

    pub fn instance_count(&self) -> usize {
        self.layers.iter().flatten().filter(|c| matches!(c, Cell::Gen(_))).count()
    }
}

fn stage_error(stage: usize, reason: String) -> Error {
    Error::InvalidDiagram { stage, reason }
}

/// The type lists at every stage, `input` first. Stage `k + 1` is the
/// list after layer `k`.
pub fn stages(pg: &PartialPolygraph, diag: &StringDiagram) -> Result<Vec<Vec<String>>> {
    let mut current = diag.input.clone();
    if !pg.is_valid_list(&current) {
        return Err(stage_error(0, "input list is not valid".into()));
    }
    let mut out = vec![current.clone()];
    for (k, layer) in diag.layers.iter().enumerate() {
        let mut next = Vec::new();
        let mut rest = current.as_slice();
        for cell in layer {
            let (needs, emits): (Vec<String>, Vec<String>) = match cell {
                Cell::Gen(name) => {
                    let g = pg
                        .generator(name)
                        .ok_or_else(|| stage_error(k, format!("unknown generator `{name}`")))?;
                    (g.src.clone(), g.tgt.clone())
                }
                Cell::Id(t) => (vec![t.clone()], vec![t.clone()]),
                Cell::Swap(a, b) => (vec![a.clone(), b.clone()], vec![b.clone(), a.clone()]),
            };
            if rest.len() < needs.len() || rest[..needs.len()] != needs[..] {
                return Err(stage_error(
                    k,
                    format!("layer {k} expects {needs:?} but the wires read {rest:?}"),
                ));
            }
            rest = &rest[needs.len()..];
            next.extend(emits);
        }
        if !rest.is_empty() {
            return Err(stage_error(k, format!("layer {k} leaves {rest:?} unconsumed")));
        }
        if !pg.is_valid_list(&next) {
            return Err(stage_error(k + 1, format!("list {next:?} is not valid")));
        }
        out.push(next.clone());
        current = next;
    }
    if current != diag.output {
        return Err(stage_error(
            diag.layers.len(),
            format!("final list {current:?} differs from output {:?}", diag.output),
        ));
    }
    Ok(out)
}

/// Checks type matching and validity at every stage, reporting the first
/// failing stage.
pub fn validate_diagram(pg: &PartialPolygraph, diag: &StringDiagram) -> Result<()> {
    stages(pg, diag).map(|_| ())
}

/// The edge poset: generator instances ordered by output-to-input wiring.
pub fn edge_poset(pg: &PartialPolygraph, diag: &StringDiagram) -> Result<(FinitePoset, Vec<Instance>)> {
    validate_diagram(pg, diag)?;
    let instances = diag.instances();
    // producer of each wire in the current list, `None` for boundary wires
    let mut producers: Vec<Option<usize>> = vec![None; diag.input.len()];
    let mut relations = Vec::new();
    let mut next_instance = 0;
    for layer in &diag.layers {
        let mut next = Vec::new();
        let mut cursor = 0;
        for cell in layer {
            match cell {
                Cell::Gen(name) => {
                    let g = &pg.generators[name];
                    for p in producers[cursor..cursor + g.src.len()].iter().flatten() {
                        relations.push((*p, next_instance));
                    }
                    cursor += g.src.len();
                    next.extend(std::iter::repeat_n(Some(next_instance), g.tgt.len()));
                    next_instance += 1;
                }
                Cell::Id(_) => {
                    next.push(producers[cursor]);
                    cursor += 1;
                }
                Cell::Swap(..) => {
                    next.push(producers[cursor + 1]);
                    next.push(producers[cursor]);
                    cursor += 2;
                }
            }
        }
        producers = next;
    }
    Ok((from_pairs(instances.len(), &relations)?, instances))
}

/// A diagram built from two others, with the positions their instances
/// occupy in its instance order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combined {
    pub diagram: StringDiagram,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

fn identity_layer(types: &[String]) -> Vec<Cell> {
    types.iter().map(|t| Cell::Id(t.clone())).collect()
}

/// Side-by-side tensor `a ⊗ b`; the shorter diagram is padded with
/// identity layers. Fails when some stage of the result is invalid.
pub fn tensor(pg: &PartialPolygraph, a: &StringDiagram, b: &StringDiagram) -> Result<Combined> {
    let (sa, sb) = (stages(pg, a)?, stages(pg, b)?);
    let depth = a.layers.len().max(b.layers.len());
    let layer = |d: &StringDiagram, s: &[Vec<String>], k: usize| match d.layers.get(k) {
        Some(cells) => cells.clone(),
        None => identity_layer(s.last().unwrap()),
    };
    let mut layers = Vec::with_capacity(depth);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    let mut index = 0;
    for k in 0..depth {
        let (la, lb) = (layer(a, &sa, k), layer(b, &sb, k));
        for (cells, map) in [(&la, &mut left), (&lb, &mut right)] {
            for c in cells.iter() {
                if matches!(c, Cell::Gen(_)) {
                    map.push(index);
                    index += 1;
                }
            }
        }
        layers.push(la.into_iter().chain(lb).collect());
    }
    let diagram = StringDiagram {
        input: a.input.iter().chain(&b.input).cloned().collect(),
        output: a.output.iter().chain(&b.output).cloned().collect(),
        layers,
    };
    validate_diagram(pg, &diagram)?;
    Ok(Combined {
        diagram,
        left,
        right,
    })
}

/// Sequential composite `g ∘ f`: the layers of `f`, then those of `g`.
pub fn compose(pg: &PartialPolygraph, f: &StringDiagram, g: &StringDiagram) -> Result<Combined> {
    if f.output != g.input {
        return Err(stage_error(
            f.layers.len(),
            format!("output {:?} does not match input {:?}", f.output, g.input),
        ));
    }
    let diagram = StringDiagram {
        input: f.input.clone(),
        output: g.output.clone(),
        layers: f.layers.iter().chain(&g.layers).cloned().collect(),
    };
    validate_diagram(pg, &diagram)?;
    let nf = f.instance_count();
    Ok(Combined {
        left: (0..nf).collect(),
        right: (nf..nf + g.instance_count()).collect(),
        diagram,
    })
}

/// A diagram given as a wiring graph: wires are numbered, every wire has a
/// type, and each is produced once (by the input boundary or a node) and
/// consumed once (by a node or the output boundary).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WiringGraph {
    pub wire_types: Vec<String>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub nodes: Vec<WiringNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WiringNode {
    pub generator: String,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

/// Layered form of a wiring graph, with `order[k]` the node realized as
/// instance `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    pub diagram: StringDiagram,
    pub order: Vec<usize>,
}

/// Lays out a wiring graph one generator per layer. Nodes are scheduled
/// topologically, least index first; before each node its input wires are
/// bubbled together with adjacent swaps, one swap per layer, and the final
/// list is bubbled into output order the same way.
pub fn import_wiring(pg: &PartialPolygraph, graph: &WiringGraph) -> Result<Layering> {
    let wires = graph.wire_types.len();
    let bad = |msg: String| Error::InvalidDiagram { stage: 0, reason: msg };
    let mut produced = vec![0usize; wires];
    let mut consumed = vec![0usize; wires];
    for &w in graph.inputs.iter().chain(graph.nodes.iter().flat_map(|n| &n.outputs)) {
        *produced.get_mut(w).ok_or_else(|| bad(format!("unknown wire {w}")))? += 1;
    }
    for &w in graph.outputs.iter().chain(graph.nodes.iter().flat_map(|n| &n.inputs)) {
        *consumed.get_mut(w).ok_or_else(|| bad(format!("unknown wire {w}")))? += 1;
    }
    if let Some(w) = (0..wires).find(|&w| produced[w] != 1 || consumed[w] != 1) {
        return Err(bad(format!("wire {w} must be produced and consumed exactly once")));
    }
    for (k, node) in graph.nodes.iter().enumerate() {
        let g = pg
            .generator(&node.generator)
            .ok_or_else(|| bad(format!("node {k} uses unknown generator `{}`", node.generator)))?;
        let types = |ws: &[usize]| ws.iter().map(|&w| graph.wire_types[w].clone()).collect::<Vec<_>>();
        if types(&node.inputs) != g.src || types(&node.outputs) != g.tgt {
            return Err(bad(format!("node {k} does not match the type of `{}`", node.generator)));
        }
    }

    let ty = |w: usize| graph.wire_types[w].clone();
    let mut current = graph.inputs.clone();
    let mut layers: Vec<Vec<Cell>> = Vec::new();
    let mut order = Vec::new();
    let mut done = vec![false; graph.nodes.len()];

    let swap_layer = |current: &mut Vec<usize>, at: usize, layers: &mut Vec<Vec<Cell>>| -> Result<()> {
        let (a, b) = (current[at], current[at + 1]);
        let mut layer: Vec<Cell> = current[..at].iter().map(|&w| Cell::Id(ty(w))).collect();
        layer.push(Cell::Swap(ty(a), ty(b)));
        layer.extend(current[at + 2..].iter().map(|&w| Cell::Id(ty(w))));
        current.swap(at, at + 1);
        let list: Vec<String> = current.iter().map(|&w| ty(w)).collect();
        if !pg.is_valid_list(&list) {
            return Err(Error::InvalidDiagram {
                stage: layers.len() + 1,
                reason: format!("swapping `{}` and `{}` leaves an invalid list", ty(a), ty(b)),
            });
        }
        layers.push(layer);
        Ok(())
    };
    let bubble = |current: &mut Vec<usize>, wire: usize, to: usize, layers: &mut Vec<Vec<Cell>>| -> Result<()> {
        let mut at = current.iter().position(|&w| w == wire).unwrap();
        while at > to {
            swap_layer(current, at - 1, layers)?;
            at -= 1;
        }
        Ok(())
    };

    while order.len() < graph.nodes.len() {
        let next = (0..graph.nodes.len())
            .find(|&k| !done[k] && graph.nodes[k].inputs.iter().all(|w| current.contains(w)))
            .ok_or_else(|| bad("the wiring contains a cycle".into()))?;
        let node = &graph.nodes[next];
        let start = node
            .inputs
            .iter()
            .map(|w| current.iter().position(|x| x == w).unwrap())
            .min()
            .unwrap_or(0);
        for (k, &w) in node.inputs.iter().enumerate() {
            bubble(&mut current, w, start + k, &mut layers)?;
        }
        let mut layer: Vec<Cell> = current[..start].iter().map(|&w| Cell::Id(ty(w))).collect();
        layer.push(Cell::Gen(node.generator.clone()));
        let after = start + node.inputs.len();
        layer.extend(current[after..].iter().map(|&w| Cell::Id(ty(w))));
        current.splice(start..after, node.outputs.iter().copied());
        layers.push(layer);
        let list: Vec<String> = current.iter().map(|&w| ty(w)).collect();
        if !pg.is_valid_list(&list) {
            return Err(Error::InvalidDiagram {
                stage: layers.len(),
                reason: format!("placing `{}` leaves an invalid list", node.generator),
            });
        }
        done[next] = true;
        order.push(next);
    }
    for (k, &w) in graph.outputs.iter().enumerate() {
        bubble(&mut current, w, k, &mut layers)?;
    }
    let diagram = StringDiagram {
        input: graph.inputs.iter().map(|&w| ty(w)).collect(),
        output: graph.outputs.iter().map(|&w| ty(w)).collect(),
        layers,
    };
    validate_diagram(pg, &diagram)?;
    Ok(Layering { diagram, order })
}

/// A diagram whose edge poset is `p`: element `i` becomes a generator
/// `e<i>` with `sources[i]` open inputs, `targets[i]` open outputs and one
/// internal wire per cover relation. Every wire has its own type and all
/// types are compatible.
pub fn realize_poset(
    p: &FinitePoset,
    sources: &[usize],
    targets: &[usize],
) -> Result<(PartialPolygraph, Layering)> {
    let n = p.size();
    if sources.len() != n || targets.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: sources.len().min(targets.len()),
        });
    }
    let covers = crate::poset::transitive_reduction(p);
    let mut wire_types = Vec::new();
    let mut new_wire = |name: String| {
        wire_types.push(name);
        wire_types.len() - 1
    };
    let mut node_inputs = vec![Vec::new(); n];
    let mut node_outputs = vec![Vec::new(); n];
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for i in 0..n {
        for a in 0..sources[i] {
            let w = new_wire(format!("s{i}_{a}"));
            inputs.push(w);
            node_inputs[i].push(w);
        }
    }
    for &(i, j) in &covers {
        let w = new_wire(format!("v{i}_{j}"));
        node_outputs[i].push(w);
        node_inputs[j].push(w);
    }
    for i in 0..n {
        for a in 0..targets[i] {
            let w = new_wire(format!("t{i}_{a}"));
            outputs.push(w);
            node_outputs[i].push(w);
        }
    }
    let mut generators = BTreeMap::new();
    let mut nodes = Vec::new();
    for i in 0..n {
        let name = format!("e{i}");
        let types = |ws: &[usize]| ws.iter().map(|&w| wire_types[w].clone()).collect();
        generators.insert(
            name.clone(),
            Generator {
                src: types(&node_inputs[i]),
                tgt: types(&node_outputs[i]),
            },
        );
        nodes.push(WiringNode {
            generator: name,
            inputs: node_inputs[i].clone(),
            outputs: node_outputs[i].clone(),
        });
    }
    let pg = PartialPolygraph::total(wire_types.clone(), generators)?;
    let graph = WiringGraph {
        wire_types,
        inputs,
        outputs,
        nodes,
    };
    let layering = import_wiring(&pg, &graph)?;
    Ok((pg, layering))
}
