//! Finite polynomial functors `p = Σ_{I ∈ p(1)} y^{p[I]}`.
//!
//! A polynomial is a list of positions, each with a direction count; the
//! direction set of position `I` is `{0, .., p[I]-1}`. Morphisms are stored
//! in dependent-lens form: a forward map on positions and, per source
//! position, a backward map from the target's directions to the source's.
//!
//! Encodings are fixed so that maps are reproducible:
//! - `p ⊗ q` has position `(I, J)` at index `I·|q(1)| + J` and direction
//!   `(i, j)` at `i·q[J] + j`;
//! - `p ◁ q` has positions `(I, f)` with `f: p[I] → q(1)`, `I`-major and
//!   then `f` in lexicographic order (`f(0)` most significant); direction
//!   `(i, j)` with `j ∈ q[f(i)]` sits at `Σ_{k<i} q[f(k)] + j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::poset::FinitePoset;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinitePolynomial {
    positions: Vec<usize>,
}

impl FinitePolynomial {
    pub fn new(positions: Vec<usize>) -> Self {
        FinitePolynomial { positions }
    }

    /// The unit `y`.
    pub fn y() -> Self {
        Self::new(vec![1])
    }

    /// `k` positions with no directions.
    pub fn constant(k: usize) -> Self {
        Self::new(vec![0; k])
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn position_count(&self) -> usize {
        self.positions.len()
    }

    pub fn directions(&self, position: usize) -> usize {
        self.positions[position]
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("polynomial JSON is always serializable")
    }

    /// Reorder positions: position `I` moves to `perm[I]`.
    pub fn permute(&self, perm: &[usize]) -> Result<(FinitePolynomial, PolyMorphism)> {
        crate::poset::check_bijection(perm, self.position_count())?;
        let mut positions = vec![0; self.position_count()];
        for (i, &t) in perm.iter().enumerate() {
            positions[t] = self.positions[i];
        }
        let map = PolyMorphism {
            on_positions: perm.to_vec(),
            on_directions: self.positions.iter().map(|&d| (0..d).collect()).collect(),
        };
        Ok((FinitePolynomial::new(positions), map))
    }
}

/// Monomials in position order, e.g. `y^2 + y + 1`.
impl fmt::Display for FinitePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positions.is_empty() {
            return write!(f, "0");
        }
        for (k, &d) in self.positions.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "1")?,
                1 => write!(f, "y")?,
                _ => write!(f, "y^{d}")?,
            }
        }
        Ok(())
    }
}

/// Multiset of direction counts, sorted in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolySignature(Vec<usize>);

impl PolySignature {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Whether `self` is a sub-multiset of `other`.
    pub fn embeds_in(&self, other: &PolySignature) -> bool {
        let mut rest = other.0.clone();
        self.0.iter().all(|d| match rest.iter().position(|x| x == d) {
            Some(k) => {
                rest.remove(k);
                true
            }
            None => false,
        })
    }
}

impl From<Vec<usize>> for PolySignature {
    fn from(mut v: Vec<usize>) -> Self {
        v.sort_unstable_by(|a, b| b.cmp(a));
        PolySignature(v)
    }
}

impl fmt::Display for PolySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, d) in self.0.iter().enumerate() {
            write!(f, "{}{d}", if k == 0 { "" } else { "," })?;
        }
        write!(f, "}}")
    }
}

pub fn signature(p: &FinitePolynomial) -> PolySignature {
    PolySignature::from(p.positions.clone())
}

/// A morphism of polynomials: positions forward, directions backward.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMorphism {
    pub on_positions: Vec<usize>,
    /// `on_directions[I][d]` is the source direction at `I` that target
    /// direction `d` (at `on_positions[I]`) pulls back to.
    pub on_directions: Vec<Vec<usize>>,
}

impl PolyMorphism {
    pub fn identity(p: &FinitePolynomial) -> Self {
        PolyMorphism {
            on_positions: (0..p.position_count()).collect(),
            on_directions: p.positions.iter().map(|&d| (0..d).collect()).collect(),
        }
    }

    /// Every position lands in range and every backward map is a total
    /// function into the source position's direction set.
    pub fn is_valid(&self, source: &FinitePolynomial, target: &FinitePolynomial) -> bool {
        self.on_positions.len() == source.position_count()
            && self.on_directions.len() == source.position_count()
            && self.on_positions.iter().enumerate().all(|(i, &t)| {
                t < target.position_count()
                    && self.on_directions[i].len() == target.directions(t)
                    && self.on_directions[i].iter().all(|&d| d < source.directions(i))
            })
    }

    /// Every backward direction map is a bijection.
    pub fn is_cartesian(&self, source: &FinitePolynomial) -> bool {
        self.on_directions.iter().enumerate().all(|(i, back)| {
            let mut seen = vec![false; source.directions(i)];
            back.len() == seen.len()
                && back.iter().all(|&d| !std::mem::replace(&mut seen[d], true))
        })
    }

    pub fn is_injective_on_positions(&self) -> bool {
        let mut v = self.on_positions.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &PolyMorphism) -> PolyMorphism {
        let on_positions = self.on_positions.iter().map(|&j| next.on_positions[j]).collect();
        let on_directions = self
            .on_positions
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                next.on_directions[j]
                    .iter()
                    .map(|&d| self.on_directions[i][d])
                    .collect()
            })
            .collect();
        PolyMorphism {
            on_positions,
            on_directions,
        }
    }
}

/// Dirichlet tensor `p ⊗ q`.
pub fn dirichlet(p: &FinitePolynomial, q: &FinitePolynomial) -> FinitePolynomial {
    let positions = p
        .positions
        .iter()
        .flat_map(|&a| q.positions.iter().map(move |&b| a * b))
        .collect();
    FinitePolynomial::new(positions)
}

/// All functions `[len] → [base]` in lexicographic order.
pub(crate) fn functions(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len > 0 && base == 0 {
        return out;
    }
    let mut f = vec![0; len];
    loop {
        out.push(f.clone());
        let mut k = len;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            f[k] += 1;
            if f[k] < base {
                break;
            }
            f[k] = 0;
        }
    }
}

/// Positions of `p ◁ q` as `(I, f)` pairs, in index order.
pub fn compose_positions(p: &FinitePolynomial, q: &FinitePolynomial) -> Vec<(usize, Vec<usize>)> {
    p.positions
        .iter()
        .enumerate()
        .flat_map(|(i, &d)| {
            functions(d, q.position_count())
                .into_iter()
                .map(move |f| (i, f))
        })
        .collect()
}

fn compose_index(p: &FinitePolynomial, q: &FinitePolynomial, outer: usize, f: &[usize]) -> usize {
    let m = q.position_count();
    let offset: usize = p.positions[..outer].iter().map(|&d| m.pow(d as u32)).sum();
    offset + f.iter().fold(0, |acc, &x| acc * m + x)
}

fn direction_offsets(q: &FinitePolynomial, f: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(f.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for &x in f {
        acc += q.directions(x);
        offsets.push(acc);
    }
    offsets
}

/// Composition product `p ◁ q`.
pub fn compose(p: &FinitePolynomial, q: &FinitePolynomial) -> FinitePolynomial {
    let positions = compose_positions(p, q)
        .iter()
        .map(|(_, f)| f.iter().map(|&x| q.directions(x)).sum())
        .collect();
    FinitePolynomial::new(positions)
}

/// `f ⊗ g : p ⊗ q → p' ⊗ q'`.
pub fn dirichlet_map(
    f: &PolyMorphism,
    g: &PolyMorphism,
    p: &FinitePolynomial,
    q: &FinitePolynomial,
    p2: &FinitePolynomial,
    q2: &FinitePolynomial,
) -> PolyMorphism {
    let mut on_positions = Vec::new();
    let mut on_directions = Vec::new();
    for i in 0..p.position_count() {
        for j in 0..q.position_count() {
            let (ti, tj) = (f.on_positions[i], g.on_positions[j]);
            on_positions.push(ti * q2.position_count() + tj);
            let back = (0..p2.directions(ti))
                .flat_map(|a| (0..q2.directions(tj)).map(move |b| (a, b)))
                .map(|(a, b)| f.on_directions[i][a] * q.directions(j) + g.on_directions[j][b])
                .collect();
            on_directions.push(back);
        }
    }
    PolyMorphism {
        on_positions,
        on_directions,
    }
}

/// `f ◁ g : p ◁ q → p' ◁ q'`.
pub fn compose_map(
    f: &PolyMorphism,
    g: &PolyMorphism,
    p: &FinitePolynomial,
    q: &FinitePolynomial,
    p2: &FinitePolynomial,
    q2: &FinitePolynomial,
) -> PolyMorphism {
    let mut on_positions = Vec::new();
    let mut on_directions = Vec::new();
    for (outer, h) in compose_positions(p, q) {
        let target_outer = f.on_positions[outer];
        let back_outer = &f.on_directions[outer];
        let h2: Vec<usize> = back_outer.iter().map(|&i| g.on_positions[h[i]]).collect();
        on_positions.push(compose_index(p2, q2, target_outer, &h2));
        let src_offsets = direction_offsets(q, &h);
        let mut back = Vec::new();
        for (i2, &x2) in h2.iter().enumerate() {
            let i = back_outer[i2];
            for j2 in 0..q2.directions(x2) {
                back.push(src_offsets[i] + g.on_directions[h[i]][j2]);
            }
        }
        on_directions.push(back);
    }
    PolyMorphism {
        on_positions,
        on_directions,
    }
}

/// Comparitor `p ⊗ q → p ◁ q`: `(I, J) ↦ (I, const_J)`, directions pulled
/// back identically.
pub fn comparitor(p: &FinitePolynomial, q: &FinitePolynomial) -> PolyMorphism {
    let mut on_positions = Vec::new();
    let mut on_directions = Vec::new();
    for (i, &d) in p.positions.iter().enumerate() {
        for (j, &e) in q.positions.iter().enumerate() {
            on_positions.push(compose_index(p, q, i, &vec![j; d]));
            on_directions.push((0..d * e).collect());
        }
    }
    PolyMorphism {
        on_positions,
        on_directions,
    }
}

/// Lax interchanger `(p ◁ q) ⊗ (r ◁ s) → (p ⊗ r) ◁ (q ⊗ s)`, sending
/// `((I, J), (K, L))` to `((I, K), J × L)`.
pub fn interchanger(
    p: &FinitePolynomial,
    q: &FinitePolynomial,
    r: &FinitePolynomial,
    s: &FinitePolynomial,
) -> PolyMorphism {
    let pq = compose(p, q);
    let rs = compose(r, s);
    let pr = dirichlet(p, r);
    let qs = dirichlet(q, s);
    let mut on_positions = Vec::new();
    let mut on_directions = Vec::new();
    for (pi, (outer_i, jf)) in compose_positions(p, q).into_iter().enumerate() {
        for (ri, (outer_k, lf)) in compose_positions(r, s).into_iter().enumerate() {
            let (di, dk) = (p.directions(outer_i), r.directions(outer_k));
            // J × L on the directions (i, k) of p ⊗ r, row-major
            let product: Vec<usize> = (0..di)
                .flat_map(|i| (0..dk).map(move |k| (i, k)))
                .map(|(i, k)| jf[i] * s.position_count() + lf[k])
                .collect();
            on_positions.push(compose_index(
                &pr,
                &qs,
                outer_i * r.position_count() + outer_k,
                &product,
            ));
            let j_offsets = direction_offsets(q, &jf);
            let l_offsets = direction_offsets(s, &lf);
            let v_total = rs.directions(ri);
            let mut back = Vec::new();
            for i in 0..di {
                for k in 0..dk {
                    let (dj, dl) = (q.directions(jf[i]), s.directions(lf[k]));
                    for j in 0..dj {
                        for l in 0..dl {
                            let u = j_offsets[i] + j;
                            let v = l_offsets[k] + l;
                            back.push(u * v_total + v);
                        }
                    }
                }
            }
            debug_assert_eq!(
                pq.directions(pi) * v_total,
                dirichlet(&pq, &rs).directions(pi * rs.position_count() + ri)
            );
            on_directions.push(back);
        }
    }
    PolyMorphism {
        on_positions,
        on_directions,
    }
}

/// `⊠^P(parts)`: strategy profiles over `p_{ℓ1} ◁ .. ◁ p_{ℓn}` whose
/// stage-`k` choice depends only on the directions chosen at stages whose
/// element lies below `ℓ_k` in `P`.
///
/// The stage-`k` choice is a function on every tuple of directions the
/// predecessor stages can produce, even when some other stage has reached
/// a position without directions. This keeps the result independent of
/// `ℓ` (with `P` an antichain it is always the Dirichlet product), and it
/// coincides with the subfunctor of the composite whenever no chosen
/// position is direction-free. A profile's directions are its complete
/// histories, listed lexicographically.
pub fn boxtimes_poly(
    p: &FinitePoset,
    parts: &[FinitePolynomial],
    ell: &[usize],
) -> Result<FinitePolynomial> {
    if parts.len() != p.size() {
        return Err(Error::Arity {
            expected: p.size(),
            found: parts.len(),
        });
    }
    if !p.is_linear_extension(ell) {
        return Err(Error::InvalidExtension(format!("{ell:?}")));
    }
    let n = ell.len();
    let preds: Vec<Vec<usize>> = (0..n)
        .map(|k| (0..k).filter(|&j| p.lt(ell[j], ell[k])).collect())
        .collect();
    let stages: Vec<&FinitePolynomial> = ell.iter().map(|&x| &parts[x]).collect();
    let mut out = Vec::new();
    let mut choices = Vec::with_capacity(n);
    grow(&stages, &preds, &mut choices, &mut out);
    Ok(FinitePolynomial::new(out))
}

/// A stage's choice: the sorted predecessor-direction keys and the
/// position chosen for each.
type Choice = (Vec<Vec<usize>>, Vec<usize>);

/// Direction histories over the stages in `over` (sorted and closed
/// downward), as full-length vectors with unused stages left at zero.
fn histories(
    stages: &[&FinitePolynomial],
    preds: &[Vec<usize>],
    choices: &[Choice],
    over: &[usize],
) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; stages.len()]];
    for &s in over {
        let mut next = Vec::new();
        for h in out {
            let key: Vec<usize> = preds[s].iter().map(|&j| h[j]).collect();
            let (keys, positions) = &choices[s];
            let position = positions[keys.binary_search(&key).expect("key was enumerated")];
            for d in 0..stages[s].directions(position) {
                let mut extended = h.clone();
                extended[s] = d;
                next.push(extended);
            }
        }
        out = next;
    }
    out
}

fn grow(
    stages: &[&FinitePolynomial],
    preds: &[Vec<usize>],
    choices: &mut Vec<Choice>,
    out: &mut Vec<usize>,
) {
    let k = choices.len();
    if k == stages.len() {
        let all: Vec<usize> = (0..k).collect();
        out.push(histories(stages, preds, choices, &all).len());
        return;
    }
    let mut keys: Vec<Vec<usize>> = histories(stages, preds, choices, &preds[k])
        .into_iter()
        .map(|h| preds[k].iter().map(|&j| h[j]).collect())
        .collect();
    keys.sort();
    keys.dedup();
    for assignment in functions(keys.len(), stages[k].position_count()) {
        choices.push((keys.clone(), assignment));
        grow(stages, preds, choices, out);
        choices.pop();
    }
}

/// Explicit isomorphism matching positions with equal direction counts,
/// if the signatures agree.
pub fn find_isomorphism(p: &FinitePolynomial, q: &FinitePolynomial) -> Option<PolyMorphism> {
    if signature(p) != signature(q) {
        return None;
    }
    let mut used = vec![false; q.position_count()];
    let mut on_positions = Vec::with_capacity(p.position_count());
    for &d in &p.positions {
        let t = (0..q.position_count()).find(|&t| !used[t] && q.directions(t) == d)?;
        used[t] = true;
        on_positions.push(t);
    }
    Some(PolyMorphism {
        on_positions,
        on_directions: p.positions.iter().map(|&d| (0..d).collect()).collect(),
    })
}

/// Evaluate with `ox ↦ ⊗`, `tri ↦ ◁`, `e ↦ y` and `x<i> ↦ parts[i]`.
pub fn evaluate_expression(e: &Expression, parts: &[FinitePolynomial]) -> Result<FinitePolynomial> {
    Ok(match e {
        Expression::Unit => FinitePolynomial::y(),
        Expression::Var(i) => parts.get(*i).cloned().ok_or(Error::Index {
            index: *i,
            size: parts.len(),
        })?,
        Expression::Otimes(cs) => {
            let mut acc = FinitePolynomial::y();
            for c in cs {
                acc = dirichlet(&acc, &evaluate_expression(c, parts)?);
            }
            acc
        }
        Expression::Tri(cs) => {
            let mut acc = FinitePolynomial::y();
            for c in cs {
                acc = compose(&acc, &evaluate_expression(c, parts)?);
            }
            acc
        }
    })
}
