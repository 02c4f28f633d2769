//! Derivations of duoidal structure maps between expressible posets.
//!
//! A [`StructureMapProof`] is a tree built from equivalences, composition,
//! the two products applied to sub-derivations, and the lax interchanger
//! `(a◁b)⊗(c◁d) → (a⊗c)◁(b⊗d)` with sub-derivations substituted for
//! `a, b, c, d`. Every node carries enough information to recompute its
//! source and target expressions, so a proof can be re-checked without
//! trusting the code that built it.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::expressible::{decompose_on, find_z};
use crate::poset::{self, connected_components, is_inclusion, FinitePoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureMapProof {
    /// Coercion between two equivalent expressions.
    Equiv { source: Expression, target: Expression },
    /// `first` followed by `then`.
    Compose {
        first: Box<StructureMapProof>,
        then: Box<StructureMapProof>,
    },
    OtimesPar(Vec<StructureMapProof>),
    TriPar(Vec<StructureMapProof>),
    /// Sub-derivations for the corners `a, b, c, d` of the interchanger.
    InterchangerSubst(Box<[StructureMapProof; 4]>),
}

use StructureMapProof as P;

impl StructureMapProof {
    pub fn identity(e: Expression) -> Self {
        P::Equiv {
            source: e.clone(),
            target: e,
        }
    }

    pub fn compose(first: StructureMapProof, then: StructureMapProof) -> Self {
        P::Compose {
            first: Box::new(first),
            then: Box::new(then),
        }
    }

    pub fn interchanger(a: Self, b: Self, c: Self, d: Self) -> Self {
        P::InterchangerSubst(Box::new([a, b, c, d]))
    }

    pub fn source(&self) -> Expression {
        match self {
            P::Equiv { source, .. } => source.clone(),
            P::Compose { first, .. } => first.source(),
            P::OtimesPar(ps) => Expression::Otimes(ps.iter().map(Self::source).collect()),
            P::TriPar(ps) => Expression::Tri(ps.iter().map(Self::source).collect()),
            P::InterchangerSubst(q) => {
                let [a, b, c, d] = &**q;
                Expression::Otimes(vec![
                    Expression::Tri(vec![a.source(), b.source()]),
                    Expression::Tri(vec![c.source(), d.source()]),
                ])
            }
        }
    }

    pub fn target(&self) -> Expression {
        match self {
            P::Equiv { target, .. } => target.clone(),
            P::Compose { then, .. } => then.target(),
            P::OtimesPar(ps) => Expression::Otimes(ps.iter().map(Self::target).collect()),
            P::TriPar(ps) => Expression::Tri(ps.iter().map(Self::target).collect()),
            P::InterchangerSubst(q) => {
                let [a, b, c, d] = &**q;
                Expression::Tri(vec![
                    Expression::Otimes(vec![a.target(), c.target()]),
                    Expression::Otimes(vec![b.target(), d.target()]),
                ])
            }
        }
    }

    pub fn node_count(&self) -> usize {
        1 + match self {
            P::Equiv { .. } => 0,
            P::Compose { first, then } => first.node_count() + then.node_count(),
            P::OtimesPar(ps) | P::TriPar(ps) => ps.iter().map(Self::node_count).sum(),
            P::InterchangerSubst(q) => q.iter().map(Self::node_count).sum(),
        }
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        let kind = match self {
            P::Equiv { .. } => "equiv",
            P::Compose { .. } => "compose",
            P::OtimesPar(_) => "ox-par",
            P::TriPar(_) => "tri-par",
            P::InterchangerSubst(_) => "interchanger",
        };
        writeln!(f, "{pad}{kind} {} => {}", self.source(), self.target())?;
        match self {
            P::Equiv { .. } => Ok(()),
            P::Compose { first, then } => {
                first.write_indented(f, depth + 1)?;
                then.write_indented(f, depth + 1)
            }
            P::OtimesPar(ps) | P::TriPar(ps) => {
                ps.iter().try_for_each(|p| p.write_indented(f, depth + 1))
            }
            P::InterchangerSubst(q) => q.iter().try_for_each(|p| p.write_indented(f, depth + 1)),
        }
    }
}

/// Indented derivation tree, one node per line.
impl fmt::Display for StructureMapProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// Re-check every node of a derivation.
///
/// Each node's source and target must be linear in the same variables and
/// evaluate to posets related by inclusion; compositions must agree (up to
/// equivalence) at the middle; equivalences must relate equivalent
/// expressions; parallel products need disjoint variables.
pub fn verify_proof(proof: &StructureMapProof) -> bool {
    check_node(proof).is_ok()
}

fn check_node(proof: &StructureMapProof) -> std::result::Result<(), ()> {
    let source = proof.source();
    let target = proof.target();
    let (Ok(sv), Ok(tv)) = (source.var_set(), target.var_set()) else {
        return Err(());
    };
    if sv != tv {
        return Err(());
    }
    let (Ok(sp), Ok(tp)) = (source.evaluate_compact(), target.evaluate_compact()) else {
        return Err(());
    };
    if !is_inclusion(&sp, &tp) {
        return Err(());
    }
    match proof {
        P::Equiv { source, target } => {
            if !source.equivalent(target) {
                return Err(());
            }
        }
        P::Compose { first, then } => {
            if !first.target().equivalent(&then.source()) {
                return Err(());
            }
            check_node(first)?;
            check_node(then)?;
        }
        P::OtimesPar(ps) | P::TriPar(ps) => ps.iter().try_for_each(check_node)?,
        P::InterchangerSubst(q) => q.iter().try_for_each(check_node)?,
    }
    Ok(())
}

/// Build the structure map witnessing the inclusion `p ⊆ q`.
pub fn derive_structure_map(p: &FinitePoset, q: &FinitePoset) -> Result<StructureMapProof> {
    if let Some(z) = find_z(p).or_else(|| find_z(q)) {
        return Err(Error::NotExpressible(z));
    }
    if !is_inclusion(p, q) {
        return Err(Error::NotInclusion);
    }
    let all: Vec<usize> = (0..p.size()).collect();
    Ok(derive_on(p, q, &all))
}

fn expr_on(p: &FinitePoset, elements: &[usize]) -> Expression {
    decompose_on(p, elements).expect("sub-posets of expressible posets are expressible")
}

fn globalize(elements: &[usize], local: &[usize]) -> Vec<usize> {
    local.iter().map(|&k| elements[k]).collect()
}

/// Series blocks of a connected sub-poset: the children of its top-level
/// `tri` node, as sorted global element lists.
fn series_split(p: &FinitePoset, elements: &[usize]) -> (Vec<usize>, Vec<usize>) {
    match expr_on(p, elements) {
        Expression::Tri(children) => {
            let mut first = children[0].vars();
            first.sort_unstable();
            let mut rest: Vec<usize> = children[1..].iter().flat_map(Expression::vars).collect();
            rest.sort_unstable();
            (first, rest)
        }
        other => unreachable!("connected sub-poset decomposed as {other}"),
    }
}

// Invariant: p ⊆ q, both expressible. `elements` is sorted.
fn derive_on(p: &FinitePoset, q: &FinitePoset, elements: &[usize]) -> StructureMapProof {
    let sub_p = p.restrict(elements);
    let sub_q = q.restrict(elements);
    if elements.len() <= 1 || sub_p == sub_q {
        return P::identity(expr_on(p, elements));
    }

    let q_components = connected_components(&sub_q);
    if q_components.len() > 1 {
        return P::OtimesPar(
            q_components
                .iter()
                .map(|c| derive_on(p, q, &globalize(elements, c)))
                .collect(),
        );
    }

    let p_components = connected_components(&sub_p);
    if p_components.len() == 1 {
        let (lower, upper) = series_split(p, elements);
        return P::TriPar(vec![derive_on(p, q, &lower), derive_on(p, q, &upper)]);
    }

    // p = p1 ⊔ p2 and q = q1 ⋈ q2: factor through the interchanger
    let p1 = globalize(elements, &p_components[0]);
    let p2: Vec<usize> = {
        let mut v: Vec<usize> = p_components[1..]
            .iter()
            .flat_map(|c| globalize(elements, c))
            .collect();
        v.sort_unstable();
        v
    };
    let (q1, q2) = series_split(q, elements);
    let meet = |a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter().copied().filter(|x| b.contains(x)).collect()
    };
    let (p11, p12, p21, p22) = (meet(&p1, &q1), meet(&p1, &q2), meet(&p2, &q1), meet(&p2, &q2));

    let n = p.size();
    // (p11 ⋈ p12) ⊔ (p21 ⋈ p22) and (q11 ⊔ q21) ⋈ (q12 ⊔ q22) on the full carrier
    let mut before = Vec::new();
    let mut after = Vec::new();
    for &x in elements {
        for &y in elements {
            let (px, py) = (p1.contains(&x), p1.contains(&y));
            let (qx, qy) = (q1.contains(&x), q1.contains(&y));
            let same_p_block = px == py;
            let same_q_block = qx == qy;
            if same_p_block && (p.lt(x, y) && same_q_block || qx && !qy) {
                before.push((x, y));
            }
            if same_q_block && (q.lt(x, y) && same_p_block) || qx && !qy {
                after.push((x, y));
            }
        }
    }
    let middle_source = poset::from_pairs(n, &before).expect("block structure is a poset");
    let middle_target = poset::from_pairs(n, &after).expect("block structure is a poset");

    let interchange = P::interchanger(
        derive_on(p, q, &p11),
        derive_on(p, q, &p12),
        derive_on(p, q, &p21),
        derive_on(p, q, &p22),
    );
    let mut proof = interchange;
    if middle_source.restrict(elements) != sub_p {
        proof = P::compose(derive_on(p, &middle_source, elements), proof);
    }
    if middle_target.restrict(elements) != sub_q {
        proof = P::compose(proof, derive_on(&middle_target, q, elements));
    }
    proof
}
