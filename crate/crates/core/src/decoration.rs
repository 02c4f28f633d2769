//! Decorating string diagrams in a dependence algebra.
//!
//! A diagram with generator instances `f_1, .., f_n` is decorated by
//! `⊠^P(d_{f_1}, .., d_{f_n})` for `P` its edge poset.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::{compose, edge_poset, tensor, Cell, PartialPolygraph, StringDiagram};
use crate::error::{Error, Result};
use crate::poly::{boxtimes_poly, signature, FinitePolynomial};
use crate::poset::{disjoint_union, is_inclusion, join, FinitePoset};
use crate::tropical::{self, Runtime};

/// Values that finite posets act on.
pub trait DependenceAlgebra {
    type Value: Clone + fmt::Debug + fmt::Display;

    fn unit(&self) -> Self::Value;

    /// `⊠^P(values)`.
    fn boxtimes(&self, p: &FinitePoset, values: &[Self::Value]) -> Result<Self::Value>;

    /// Whether a structure map `source → target` exists.
    fn holds(&self, source: &Self::Value, target: &Self::Value) -> bool;

    /// Whether the two values are isomorphic.
    fn equivalent(&self, a: &Self::Value, b: &Self::Value) -> bool;
}

/// Runtimes under `max` and `+`; maps are `≤`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TropicalAlgebra;

impl DependenceAlgebra for TropicalAlgebra {
    type Value = Runtime;

    fn unit(&self) -> Runtime {
        Runtime::zero()
    }

    fn boxtimes(&self, p: &FinitePoset, values: &[Runtime]) -> Result<Runtime> {
        tropical::boxtimes(p, values)
    }

    fn holds(&self, source: &Runtime, target: &Runtime) -> bool {
        source <= target
    }

    fn equivalent(&self, a: &Runtime, b: &Runtime) -> bool {
        a == b
    }
}

/// Finite polynomials. A structure map is a cartesian morphism, which
/// exists when every direction count of the source also occurs in the
/// target; it need not be injective on positions, since the interchanger
/// collapses positions lying over a direction-free one. Values are
/// equivalent when signatures agree.
#[derive(Clone, Copy, Debug, Default)]
pub struct PolynomialAlgebra;

impl DependenceAlgebra for PolynomialAlgebra {
    type Value = FinitePolynomial;

    fn unit(&self) -> FinitePolynomial {
        FinitePolynomial::y()
    }

    fn boxtimes(&self, p: &FinitePoset, values: &[FinitePolynomial]) -> Result<FinitePolynomial> {
        boxtimes_poly(p, values, &p.first_linear_extension())
    }

    fn holds(&self, source: &FinitePolynomial, target: &FinitePolynomial) -> bool {
        let available = signature(target);
        source
            .positions()
            .iter()
            .all(|d| available.counts().contains(d))
    }

    fn equivalent(&self, a: &FinitePolynomial, b: &FinitePolynomial) -> bool {
        signature(a) == signature(b)
    }
}

/// Generator name to value.
pub type Decoration<V> = BTreeMap<String, V>;

/// The first generator of `pg` missing from `d`, if any.
pub fn missing_generator<'a, V>(pg: &'a PartialPolygraph, d: &Decoration<V>) -> Option<&'a str> {
    pg.generators()
        .keys()
        .find(|name| !d.contains_key(*name))
        .map(String::as_str)
}

fn instance_values<V: Clone>(diag: &StringDiagram, d: &Decoration<V>) -> Result<Vec<V>> {
    diag.instances()
        .iter()
        .map(|i| {
            d.get(&i.generator)
                .cloned()
                .ok_or_else(|| Error::MissingAssignment(i.generator.clone()))
        })
        .collect()
}

pub fn decorate<A: DependenceAlgebra>(
    pg: &PartialPolygraph,
    diag: &StringDiagram,
    d: &Decoration<A::Value>,
    alg: &A,
) -> Result<A::Value> {
    let (p, _) = edge_poset(pg, diag)?;
    let values = instance_values(diag, d)?;
    alg.boxtimes(&p, &values)
}

/// Pairs of diagrams on which the decoration laws are checked.
#[derive(Clone, Debug)]
pub enum LawSample {
    /// `a ⊗ b`.
    Tensor(StringDiagram, StringDiagram),
    /// `g ∘ f`, given as `(f, g)`.
    Compose(StringDiagram, StringDiagram),
    /// `(g ⊗ g') ∘ (f ⊗ f')` against `(g ∘ f) ⊗ (g' ∘ f')`, given as
    /// `(f, f', g, g')`.
    Interchange(StringDiagram, StringDiagram, StringDiagram, StringDiagram),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// `d_{a ⊗ b}` is equivalent to `⊠^{antichain}(d_a, d_b)`.
    Productor,
    /// `P_{g∘f}` includes into `P_f ⋈ P_g`.
    CompositorInclusion,
    /// `d_{g∘f} → ⊠^{chain}(d_f, d_g)`.
    Compositor,
    /// Both layouts of the interchange square decorate equivalently.
    InterchangeSquare,
    /// The lax interchanger `⊗` of `◁` maps to `◁` of `⊗`.
    LaxInterchanger,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub sample: usize,
    pub law: Law,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecorationReport {
    pub checks: Vec<LawCheck>,
}

impl DecorationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for DecorationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "ok" } else { "FAIL" };
            writeln!(f, "sample {} {:?}: {status} ({})", c.sample, c.law, c.detail)?;
        }
        Ok(())
    }
}

/// Checks the productor, compositor and interchange laws on each sample.
/// Malformed samples are reported as failed checks.
pub fn check_decoration_laws<A: DependenceAlgebra>(
    pg: &PartialPolygraph,
    d: &Decoration<A::Value>,
    alg: &A,
    samples: &[LawSample],
) -> DecorationReport {
    let mut report = DecorationReport::default();
    for (k, sample) in samples.iter().enumerate() {
        let result = match sample {
            LawSample::Tensor(a, b) => check_tensor(pg, d, alg, a, b),
            LawSample::Compose(f, g) => check_compose(pg, d, alg, f, g),
            LawSample::Interchange(f, f2, g, g2) => check_interchange(pg, d, alg, [f, f2, g, g2]),
        };
        match result {
            Ok(checks) => report.checks.extend(checks.into_iter().map(|(law, passed, detail)| LawCheck {
                sample: k,
                law,
                passed,
                detail,
            })),
            Err(e) => report.checks.push(LawCheck {
                sample: k,
                law: match sample {
                    LawSample::Tensor(..) => Law::Productor,
                    LawSample::Compose(..) => Law::Compositor,
                    LawSample::Interchange(..) => Law::InterchangeSquare,
                },
                passed: false,
                detail: e.to_string(),
            }),
        }
    }
    report
}

type Checks = Vec<(Law, bool, String)>;

fn check_tensor<A: DependenceAlgebra>(
    pg: &PartialPolygraph,
    d: &Decoration<A::Value>,
    alg: &A,
    a: &StringDiagram,
    b: &StringDiagram,
) -> Result<Checks> {
    let whole = decorate(pg, &tensor(pg, a, b)?.diagram, d, alg)?;
    let parts = [decorate(pg, a, d, alg)?, decorate(pg, b, d, alg)?];
    let product = alg.boxtimes(&FinitePoset::antichain(2), &parts)?;
    Ok(vec![(
        Law::Productor,
        alg.equivalent(&whole, &product),
        format!("{whole} vs {product}"),
    )])
}

fn check_compose<A: DependenceAlgebra>(
    pg: &PartialPolygraph,
    d: &Decoration<A::Value>,
    alg: &A,
    f: &StringDiagram,
    g: &StringDiagram,
) -> Result<Checks> {
    let gf = compose(pg, f, g)?;
    let (p_gf, _) = edge_poset(pg, &gf.diagram)?;
    let (p_f, _) = edge_poset(pg, f)?;
    let (p_g, _) = edge_poset(pg, g)?;
    let included = is_inclusion(&p_gf, &join(&p_f, &p_g));
    let whole = decorate(pg, &gf.diagram, d, alg)?;
    let parts = [decorate(pg, f, d, alg)?, decorate(pg, g, d, alg)?];
    let sequential = alg.boxtimes(&FinitePoset::chain(2), &parts)?;
    Ok(vec![
        (Law::CompositorInclusion, included, format!("{p_gf:?}")),
        (
            Law::Compositor,
            alg.holds(&whole, &sequential),
            format!("{whole} -> {sequential}"),
        ),
    ])
}

fn check_interchange<A: DependenceAlgebra>(
    pg: &PartialPolygraph,
    d: &Decoration<A::Value>,
    alg: &A,
    [f, f2, g, g2]: [&StringDiagram; 4],
) -> Result<Checks> {
    let tensor_first = compose(pg, &tensor(pg, f, f2)?.diagram, &tensor(pg, g, g2)?.diagram)?;
    let compose_first = tensor(pg, &compose(pg, f, g)?.diagram, &compose(pg, f2, g2)?.diagram)?;
    let lhs = decorate(pg, &tensor_first.diagram, d, alg)?;
    let rhs = decorate(pg, &compose_first.diagram, d, alg)?;
    let v: Vec<A::Value> = [f, f2, g, g2]
        .iter()
        .map(|x| decorate(pg, x, d, alg))
        .collect::<Result<_>>()?;
    let (anti, chain) = (FinitePoset::antichain(2), FinitePoset::chain(2));
    let parallel_of_sequences = alg.boxtimes(
        &anti,
        &[
            alg.boxtimes(&chain, &[v[0].clone(), v[2].clone()])?,
            alg.boxtimes(&chain, &[v[1].clone(), v[3].clone()])?,
        ],
    )?;
    let sequence_of_parallels = alg.boxtimes(
        &chain,
        &[
            alg.boxtimes(&anti, &[v[0].clone(), v[1].clone()])?,
            alg.boxtimes(&anti, &[v[2].clone(), v[3].clone()])?,
        ],
    )?;
    Ok(vec![
        (
            Law::InterchangeSquare,
            alg.equivalent(&lhs, &rhs),
            format!("{lhs} vs {rhs}"),
        ),
        (
            Law::LaxInterchanger,
            alg.holds(&parallel_of_sequences, &sequence_of_parallels)
                && alg.holds(&rhs, &parallel_of_sequences),
            format!("{rhs} -> {parallel_of_sequences} -> {sequence_of_parallels}"),
        ),
    ])
}

/// Decoration of `n` disjoint paths in a graph: `⊠` over the disjoint
/// union of chains, which is the `⊗` of the `◁`-folds along each path.
pub fn path_decoration<A: DependenceAlgebra>(
    graph: &PartialPolygraph,
    d: &Decoration<A::Value>,
    alg: &A,
    paths: &[Vec<String>],
) -> Result<A::Value> {
    let mut p = FinitePoset::empty();
    let mut values = Vec::new();
    for (k, path) in paths.iter().enumerate() {
        check_path(graph, k, path)?;
        p = disjoint_union(&p, &FinitePoset::chain(path.len()));
        for name in path {
            values.push(
                d.get(name)
                    .cloned()
                    .ok_or_else(|| Error::MissingAssignment(name.clone()))?,
            );
        }
    }
    alg.boxtimes(&p, &values)
}

fn check_path(graph: &PartialPolygraph, k: usize, path: &[String]) -> Result<()> {
    let mut previous: Option<&str> = None;
    for name in path {
        let g = graph
            .generator(name)
            .ok_or_else(|| Error::InvalidPaths(format!("path {k}: unknown edge `{name}`")))?;
        if g.src.len() != 1 || g.tgt.len() != 1 {
            return Err(Error::InvalidPaths(format!("path {k}: `{name}` is not a graph edge")));
        }
        if let Some(t) = previous {
            if g.src[0] != t {
                return Err(Error::InvalidPaths(format!(
                    "path {k}: `{name}` does not start where the previous edge ends"
                )));
            }
        }
        previous = Some(&g.tgt[0]);
    }
    Ok(())
}

/// The layered diagram running the paths side by side, one edge per path
/// per layer. Empty paths are not allowed since their vertex is unknown.
pub fn path_diagram(graph: &PartialPolygraph, paths: &[Vec<String>]) -> Result<StringDiagram> {
    for (k, path) in paths.iter().enumerate() {
        check_path(graph, k, path)?;
        if path.is_empty() {
            return Err(Error::InvalidPaths(format!("path {k} is empty")));
        }
    }
    let edge = |name: &String| &graph.generators()[name];
    let input = paths.iter().map(|p| edge(&p[0]).src[0].clone()).collect();
    let output = paths.iter().map(|p| edge(p.last().unwrap()).tgt[0].clone()).collect();
    let depth = paths.iter().map(Vec::len).max().unwrap_or(0);
    let layers = (0..depth)
        .map(|k| {
            paths
                .iter()
                .map(|p| match p.get(k) {
                    Some(name) => Cell::Gen(name.clone()),
                    None => Cell::Id(edge(p.last().unwrap()).tgt[0].clone()),
                })
                .collect()
        })
        .collect();
    let diag = StringDiagram {
        input,
        output,
        layers,
    };
    crate::diagram::validate_diagram(graph, &diag)
        .map_err(|e| Error::InvalidPaths(e.to_string()))?;
    Ok(diag)
}
