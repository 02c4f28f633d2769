//! The categorical operad of finite posets: lexicographic composition,
//! unit, symmetric group action, and the expressible covers that exhibit
//! every poset as an intersection of expressible ones.

use crate::error::{Error, Result};
use crate::expressible::is_expressible;
use crate::poset::{self, block_offsets, check_bijection, is_inclusion, FinitePoset};

/// A permutation of `{0, .., n-1}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        check_bijection(&images, images.len())?;
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &t) in self.0.iter().enumerate() {
            inv[t] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }
}

/// Operadic composition; identical to [`poset::substitute`].
pub fn mu(outer: &FinitePoset, parts: &[FinitePoset]) -> Result<FinitePoset> {
    poset::substitute(outer, parts)
}

/// The operadic unit: the only poset on one element.
pub fn unit() -> FinitePoset {
    FinitePoset::singleton()
}

/// Apply `tau` to the carrier: `(i, j)` is related in the result iff
/// `(tau⁻¹ i, tau⁻¹ j)` is related in `p`.
pub fn act(tau: &Permutation, p: &FinitePoset) -> Result<FinitePoset> {
    if tau.len() != p.size() {
        return Err(Error::Arity {
            expected: p.size(),
            found: tau.len(),
        });
    }
    p.relabel(tau.images())
}

/// Reorder `parts` so that the part attached to `a` sits at `tau(a)`.
pub fn permute_parts(tau: &Permutation, parts: &[FinitePoset]) -> Vec<FinitePoset> {
    let inv = tau.inverse();
    (0..parts.len()).map(|b| parts[inv.apply(b)].clone()).collect()
}

/// The block permutation induced by `tau` on the carrier of
/// `mu(P, parts)`, where `sizes[a] = |parts[a]|`. Equivariance reads
/// `mu(act(tau, P), permute_parts(tau, parts)) = act(block, mu(P, parts))`.
pub fn block_permutation(tau: &Permutation, sizes: &[usize]) -> Permutation {
    let inv = tau.inverse();
    let mut new_offsets = vec![0; sizes.len()];
    let mut acc = 0;
    for (b, slot) in new_offsets.iter_mut().enumerate() {
        *slot = acc;
        acc += sizes[inv.apply(b)];
    }
    let mut images = Vec::with_capacity(acc);
    for (a, &size) in sizes.iter().enumerate() {
        let start = new_offsets[tau.apply(a)];
        images.extend(start..start + size);
    }
    Permutation(images)
}

/// An expressible poset containing `p` in which `i` and `j` stay
/// incomparable, built from the linear extension `order` (which lists `i`
/// before `j`).
///
/// The elements strictly between `i` and `j` in `order` are split into
/// `upper`, those above `i` in `p`, and `lower`, the rest. The result is
/// the chain of elements before `i`, then the chains `i, upper..` and
/// `lower.., j` side by side, then the chain of elements after `j`. When `p` relates some
/// element of `lower` to one of `upper` that split loses a relation; the
/// elements below `j` are then moved into the leading chain instead, which
/// leaves `i ⊔ j` alone in the middle.
pub fn incomparability_witness(
    p: &FinitePoset,
    order: &[usize],
    i: usize,
    j: usize,
) -> Result<FinitePoset> {
    if !p.is_linear_extension(order) {
        return Err(Error::Precondition(format!(
            "{order:?} is not a linear extension of the poset"
        )));
    }
    if !p.incomparable(i, j) {
        return Err(Error::Precondition(format!("{i} and {j} are not incomparable")));
    }
    let pos_i = order.iter().position(|&x| x == i).unwrap();
    let pos_j = order.iter().position(|&x| x == j).unwrap();
    if pos_i > pos_j {
        return Err(Error::Precondition(format!("{i} is listed after {j}")));
    }
    let before = &order[..pos_i];
    let between = &order[pos_i + 1..pos_j];
    let after = &order[pos_j + 1..];

    let (upper, lower): (Vec<usize>, Vec<usize>) =
        between.iter().partition(|&&k| p.lt(i, k));
    let separated = lower
        .iter()
        .all(|&x| upper.iter().all(|&y| !p.comparable(x, y)));

    let (prefix, left, right, suffix): (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>) =
        if separated {
            let left = std::iter::once(i).chain(upper).collect();
            let right = lower.into_iter().chain(std::iter::once(j)).collect();
            (before.to_vec(), left, right, after.to_vec())
        } else {
            let (below_j, rest): (Vec<usize>, Vec<usize>) =
                between.iter().partition(|&&k| p.lt(k, j));
            let prefix = before.iter().copied().chain(below_j).collect();
            let suffix = rest.into_iter().chain(after.iter().copied()).collect();
            (prefix, vec![i], vec![j], suffix)
        };

    let n = p.size();
    let chain = |xs: &[usize]| FinitePoset::chain_through(n, xs);
    let pieces = [chain(&prefix)?, chain(&left)?, chain(&right)?, chain(&suffix)?];
    let mut pairs: Vec<(usize, usize)> = pieces.iter().flat_map(FinitePoset::pairs).collect();
    let middle: Vec<usize> = left.iter().chain(&right).copied().collect();
    let levels = [&prefix[..], &middle[..], &suffix[..]];
    for (k, lo) in levels.iter().enumerate() {
        for hi in &levels[k + 1..] {
            for &x in lo.iter() {
                for &y in hi.iter() {
                    pairs.push((x, y));
                }
            }
        }
    }
    poset::from_pairs(n, &pairs)
}

/// One linear extension of `p` plus one incomparability witness per
/// unordered incomparable pair; their intersection is `p`.
pub fn expressible_covers(p: &FinitePoset) -> Vec<FinitePoset> {
    let order = p.first_linear_extension();
    let n = p.size();
    let mut covers = vec![FinitePoset::chain_through(n, &order).expect("extension is a chain")];
    for (a, &x) in order.iter().enumerate() {
        for &y in &order[a + 1..] {
            if p.incomparable(x, y) {
                covers.push(
                    incomparability_witness(p, &order, x, y)
                        .expect("preconditions hold by construction"),
                );
            }
        }
    }
    covers
}

/// Intersection of order relations on a common carrier.
pub fn intersect(posets: &[FinitePoset]) -> Result<FinitePoset> {
    let first = posets
        .first()
        .ok_or_else(|| Error::Precondition("intersect needs at least one poset".into()))?;
    if posets.iter().any(|q| q.size() != first.size()) {
        return Err(Error::SizeMismatch(posets.iter().map(FinitePoset::size).collect()));
    }
    let pairs: Vec<_> = first
        .pairs()
        .into_iter()
        .filter(|&(i, j)| posets.iter().all(|q| q.lt(i, j)))
        .collect();
    poset::from_pairs(first.size(), &pairs)
}

/// The terminal block-composite below `r` over `mu(p, parts)`.
///
/// `r_parts[a]` is `r` restricted to block `a`; `r_outer` relates `a < b`
/// when every element of block `a` lies below every element of block `b`
/// in `r`. Blocks must be nonempty.
pub fn terminal_cover_factorization(
    r: &FinitePoset,
    p: &FinitePoset,
    parts: &[FinitePoset],
) -> Result<(FinitePoset, Vec<FinitePoset>)> {
    let composite = mu(p, parts)?;
    if !is_inclusion(&composite, r) {
        return Err(Error::Precondition(
            "the composite is not included in the cover".into(),
        ));
    }
    if !is_expressible(r) {
        return Err(Error::Precondition("the cover is not expressible".into()));
    }
    if let Some(a) = parts.iter().position(FinitePoset::is_empty) {
        return Err(Error::Precondition(format!("block {a} is empty")));
    }
    let offsets = block_offsets(parts);
    let blocks: Vec<Vec<usize>> = (0..parts.len())
        .map(|a| (offsets[a]..offsets[a + 1]).collect())
        .collect();
    let r_parts = blocks.iter().map(|b| r.restrict(b)).collect();
    let mut pairs = Vec::new();
    for a in 0..blocks.len() {
        for b in 0..blocks.len() {
            if a != b && r.all_below(&blocks[a], &blocks[b]) {
                pairs.push((a, b));
            }
        }
    }
    let r_outer = poset::from_pairs(parts.len(), &pairs)?;
    Ok((r_outer, r_parts))
}
