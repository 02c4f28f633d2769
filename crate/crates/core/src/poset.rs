//! Finite strict partial orders on `{0, .., n-1}`.
//!
//! A [`FinitePoset`] stores its strict order as a dense, transitively closed
//! boolean matrix. Every constructor closes and checks the relation, so a
//! value of this type always satisfies irreflexivity, transitivity and
//! antisymmetry.
//!
//! The three building operations ([`disjoint_union`], [`join`] and
//! [`substitute`]) use a block-contiguous numbering: the elements of the
//! first argument keep their indices and later arguments are shifted past
//! them. Associativity and unit laws therefore hold as literal equalities.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_posets`].
pub const ENUMERATION_LIMIT: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePoset {
    size: usize,
    // row-major, lt[i * size + j] <=> i < j
    lt: Vec<bool>,
}

impl FinitePoset {
    pub fn empty() -> Self {
        Self::antichain(0)
    }

    pub fn singleton() -> Self {
        Self::antichain(1)
    }

    pub fn antichain(n: usize) -> Self {
        FinitePoset {
            size: n,
            lt: vec![false; n * n],
        }
    }

    /// The linear order `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        let mut p = Self::antichain(n);
        for i in 0..n {
            for j in i + 1..n {
                p.set(i, j);
            }
        }
        p
    }

    /// Linear order following `order`: `order[0] < order[1] < ..`.
    pub fn chain_through(size: usize, order: &[usize]) -> Result<Self> {
        let pairs: Vec<_> = order.windows(2).map(|w| (w[0], w[1])).collect();
        from_pairs(size, &pairs)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// `i < j` in this poset. Out-of-range indices are never related.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i < self.size && j < self.size && self.lt[i * self.size + j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) || self.lt(j, i)
    }

    /// Distinct and incomparable.
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        i != j && !self.comparable(i, j)
    }

    fn set(&mut self, i: usize, j: usize) {
        self.lt[i * self.size + j] = true;
    }

    /// All strict pairs `(i, j)` with `i < j`, in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.lt(i, j))
            .collect()
    }

    pub fn relation_count(&self) -> usize {
        self.lt.iter().filter(|&&b| b).count()
    }

    pub fn predecessors(&self, j: usize) -> Vec<usize> {
        (0..self.size).filter(|&i| self.lt(i, j)).collect()
    }

    pub fn successors(&self, i: usize) -> Vec<usize> {
        (0..self.size).filter(|&j| self.lt(i, j)).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&i| (0..self.size).all(|j| !self.lt(i, j)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&j| (0..self.size).all(|i| !self.lt(i, j)))
            .collect()
    }

    /// Full sub-poset on `elements`; element `k` of the result is
    /// `elements[k]` of `self`.
    pub fn restrict(&self, elements: &[usize]) -> FinitePoset {
        let m = elements.len();
        let mut out = FinitePoset::antichain(m);
        for (a, &x) in elements.iter().enumerate() {
            for (b, &y) in elements.iter().enumerate() {
                if self.lt(x, y) {
                    out.set(a, b);
                }
            }
        }
        out
    }

    /// Transport along a bijection: element `i` becomes `map[i]`.
    pub fn relabel(&self, map: &[usize]) -> Result<FinitePoset> {
        check_bijection(map, self.size)?;
        let mut out = FinitePoset::antichain(self.size);
        for (i, j) in self.pairs() {
            out.set(map[i], map[j]);
        }
        Ok(out)
    }

    /// Every element of `lower` is below every element of `upper`.
    pub fn all_below(&self, lower: &[usize], upper: &[usize]) -> bool {
        lower
            .iter()
            .all(|&x| upper.iter().all(|&y| self.lt(x, y)))
    }

    /// Whether `order` lists every element once and respects this poset.
    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        if check_bijection(order, self.size).is_err() {
            return false;
        }
        let mut pos = vec![0; self.size];
        for (k, &x) in order.iter().enumerate() {
            pos[x] = k;
        }
        self.pairs().into_iter().all(|(i, j)| pos[i] < pos[j])
    }

    /// Greedy linear extension: repeatedly take the least-indexed minimal
    /// remaining element.
    pub fn first_linear_extension(&self) -> Vec<usize> {
        let n = self.size;
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&j| !placed[j] && (0..n).all(|i| placed[i] || !self.lt(i, j)))
                .expect("a finite poset always has a minimal element");
            placed[next] = true;
            order.push(next);
        }
        order
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n");
        for i in 0..self.size {
            out.push_str(&format!("  {i} [label=\"{i}\"];\n"));
        }
        for (i, j) in transitive_reduction(self) {
            out.push_str(&format!("  {i} -> {j};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.size,
            relations: transitive_reduction(self)
                .into_iter()
                .map(|(i, j)| [i, j])
                .collect(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self> {
        let pairs: Vec<_> = json.relations.iter().map(|&[i, j]| (i, j)).collect();
        from_pairs(json.elements, &pairs)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("poset JSON is always serializable")
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePoset({}", self.size)?;
        let covers = transitive_reduction(self);
        for (k, (i, j)) in covers.iter().enumerate() {
            write!(f, "{}{i}<{j}", if k == 0 { "; " } else { ", " })?;
        }
        write!(f, ")")
    }
}

/// On-disk poset format; `relations` are `[lower, greater]` pairs and are
/// closed transitively on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: usize,
    #[serde(default)]
    pub relations: Vec<[usize; 2]>,
}

pub(crate) fn check_bijection(map: &[usize], n: usize) -> Result<()> {
    if map.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: map.len(),
        });
    }
    let mut seen = vec![false; n];
    for &x in map {
        if x >= n {
            return Err(Error::Index { index: x, size: n });
        }
        if seen[x] {
            return Err(Error::Precondition(format!("{x} appears twice in a permutation")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Transitive closure of `pairs` on `size` elements.
pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<FinitePoset> {
    let mut p = FinitePoset::antichain(size);
    for &(i, j) in pairs {
        for x in [i, j] {
            if x >= size {
                return Err(Error::Index { index: x, size });
            }
        }
        p.lt[i * size + j] = true;
    }
    for k in 0..size {
        for i in 0..size {
            if p.lt[i * size + k] {
                for j in 0..size {
                    if p.lt[k * size + j] {
                        p.lt[i * size + j] = true;
                    }
                }
            }
        }
    }
    // report the first input pair lying on a cycle
    for &(i, j) in pairs {
        if i == j || p.lt[j * size + i] {
            return Err(Error::Cycle { from: i, to: j });
        }
    }
    Ok(p)
}

/// `p ⊔ q`: `q`'s elements are shifted by `|p|`, no cross relations.
pub fn disjoint_union(p: &FinitePoset, q: &FinitePoset) -> FinitePoset {
    combine(p, q, false)
}

/// `p ⋈ q`: the disjoint union plus every `x < y` with `x` from `p` and
/// `y` from `q`.
pub fn join(p: &FinitePoset, q: &FinitePoset) -> FinitePoset {
    combine(p, q, true)
}

fn combine(p: &FinitePoset, q: &FinitePoset, cross: bool) -> FinitePoset {
    let (m, n) = (p.size, q.size);
    let mut out = FinitePoset::antichain(m + n);
    for (i, j) in p.pairs() {
        out.set(i, j);
    }
    for (i, j) in q.pairs() {
        out.set(m + i, m + j);
    }
    if cross {
        for i in 0..m {
            for j in 0..n {
                out.set(i, m + j);
            }
        }
    }
    out
}

/// Index offsets of the blocks of a lexicographic substitution.
pub fn block_offsets(parts: &[FinitePoset]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(parts.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for part in parts {
        acc += part.size;
        offsets.push(acc);
    }
    offsets
}

/// Lexicographic substitution `P ∘ (P_0, .., P_{n-1})`.
///
/// Block `a` occupies the contiguous index range starting at
/// `Σ_{a' < a} |parts[a']|`. Two elements of different blocks `a`, `b` are
/// ordered iff `a < b` in `outer`; elements of the same block keep that
/// block's order.
pub fn substitute(outer: &FinitePoset, parts: &[FinitePoset]) -> Result<FinitePoset> {
    if parts.len() != outer.size {
        return Err(Error::Arity {
            expected: outer.size,
            found: parts.len(),
        });
    }
    let offsets = block_offsets(parts);
    let total = offsets[parts.len()];
    let mut out = FinitePoset::antichain(total);
    for (a, part) in parts.iter().enumerate() {
        for (x, y) in part.pairs() {
            out.set(offsets[a] + x, offsets[a] + y);
        }
    }
    for (a, b) in outer.pairs() {
        for x in offsets[a]..offsets[a + 1] {
            for y in offsets[b]..offsets[b + 1] {
                out.set(x, y);
            }
        }
    }
    Ok(out)
}

/// Identity-on-elements inclusion: same carrier and `lt(p) ⊆ lt(q)`.
pub fn is_inclusion(p: &FinitePoset, q: &FinitePoset) -> bool {
    p.size == q.size && p.lt.iter().zip(&q.lt).all(|(&a, &b)| !a || b)
}

/// An injective, order-preserving and order-reflecting map of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    pub mapping: Vec<usize>,
}

impl Embedding {
    /// Re-check the embedding conditions against a pattern/target pair.
    pub fn is_valid(&self, pattern: &FinitePoset, target: &FinitePoset) -> bool {
        let m = &self.mapping;
        if m.len() != pattern.size() || m.iter().any(|&x| x >= target.size()) {
            return false;
        }
        for a in 0..m.len() {
            for b in 0..m.len() {
                if a != b && (m[a] == m[b] || pattern.lt(a, b) != target.lt(m[a], m[b])) {
                    return false;
                }
            }
        }
        true
    }
}

/// Every full embedding of `pattern` into `target`, in lexicographic order
/// of the mapping.
pub fn full_embeddings(pattern: &FinitePoset, target: &FinitePoset) -> Vec<Embedding> {
    fn extend(
        pattern: &FinitePoset,
        target: &FinitePoset,
        used: &mut [bool],
        mapping: &mut Vec<usize>,
        out: &mut Vec<Embedding>,
    ) {
        let x = mapping.len();
        if x == pattern.size() {
            out.push(Embedding {
                mapping: mapping.clone(),
            });
            return;
        }
        for t in 0..target.size() {
            if used[t] {
                continue;
            }
            let fits = mapping.iter().enumerate().all(|(a, &ma)| {
                pattern.lt(a, x) == target.lt(ma, t) && pattern.lt(x, a) == target.lt(t, ma)
            });
            if fits {
                used[t] = true;
                mapping.push(t);
                extend(pattern, target, used, mapping, out);
                mapping.pop();
                used[t] = false;
            }
        }
    }

    let mut out = Vec::new();
    let mut used = vec![false; target.size()];
    extend(pattern, target, &mut used, &mut Vec::new(), &mut out);
    out
}

/// All linear extensions, each listed as the sequence of elements from
/// least to greatest, in lexicographic order of those sequences.
pub fn linear_extensions(p: &FinitePoset) -> Vec<Vec<usize>> {
    fn extend(p: &FinitePoset, placed: &mut [bool], order: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = p.size();
        if order.len() == n {
            out.push(order.clone());
            return;
        }
        for j in 0..n {
            if !placed[j] && (0..n).all(|i| placed[i] || !p.lt(i, j)) {
                placed[j] = true;
                order.push(j);
                extend(p, placed, order, out);
                order.pop();
                placed[j] = false;
            }
        }
    }

    let mut out = Vec::new();
    extend(p, &mut vec![false; p.size()], &mut Vec::new(), &mut out);
    out
}

/// All nonempty chains `i_1 < .. < i_k`, depth-first from each start
/// element in index order.
pub fn chains(p: &FinitePoset) -> Vec<Vec<usize>> {
    fn extend(p: &FinitePoset, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(chain.clone());
        let last = *chain.last().unwrap();
        for next in p.successors(last) {
            chain.push(next);
            extend(p, chain, out);
            chain.pop();
        }
    }

    let mut out = Vec::new();
    for start in 0..p.size() {
        extend(p, &mut vec![start], &mut out);
    }
    out
}

/// Every labeled strict partial order on `n` elements, each exactly once.
///
/// Posets on `n` elements are grown from posets on `n - 1` by choosing the
/// down-set and up-set of the new element `n - 1`; the restriction to the
/// first `n - 1` elements identifies the parent uniquely.
pub fn enumerate_posets(n: usize) -> Result<std::vec::IntoIter<FinitePoset>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::SizeLimit {
            size: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut level = vec![FinitePoset::empty()];
    for m in 0..n {
        let mut next = Vec::new();
        for q in &level {
            let closed_sets: Vec<(u32, bool, bool)> = (0u32..1 << m)
                .map(|mask| {
                    let down = (0..m).all(|j| {
                        mask & (1 << j) == 0 || (0..m).all(|i| !q.lt(i, j) || mask & (1 << i) != 0)
                    });
                    let up = (0..m).all(|i| {
                        mask & (1 << i) == 0 || (0..m).all(|j| !q.lt(i, j) || mask & (1 << j) != 0)
                    });
                    (mask, down, up)
                })
                .collect();
            for &(down, is_down, _) in &closed_sets {
                if !is_down {
                    continue;
                }
                for &(up, _, is_up) in &closed_sets {
                    if !is_up || down & up != 0 {
                        continue;
                    }
                    let compatible = (0..m).all(|d| {
                        down & (1 << d) == 0
                            || (0..m).all(|u| up & (1 << u) == 0 || q.lt(d, u))
                    });
                    if !compatible {
                        continue;
                    }
                    let mut p = FinitePoset::antichain(m + 1);
                    for (i, j) in q.pairs() {
                        p.set(i, j);
                    }
                    for x in 0..m {
                        if down & (1 << x) != 0 {
                            p.set(x, m);
                        }
                        if up & (1 << x) != 0 {
                            p.set(m, x);
                        }
                    }
                    next.push(p);
                }
            }
        }
        level = next;
    }
    Ok(level.into_iter())
}

/// Components of the comparability graph, each sorted, ordered by least
/// element.
pub fn connected_components(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.size();
    let mut component = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        component[start] = id;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for (y, slot) in component.iter_mut().enumerate() {
                if *slot == usize::MAX && p.comparable(x, y) {
                    *slot = id;
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Cover pairs of the Hasse diagram, sorted.
pub fn transitive_reduction(p: &FinitePoset) -> Vec<(usize, usize)> {
    let n = p.size();
    p.pairs()
        .into_iter()
        .filter(|&(i, j)| !(0..n).any(|k| p.lt(i, k) && p.lt(k, j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zigzag() -> FinitePoset {
        from_pairs(4, &[(0, 1), (2, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn zigzag_from_pairs() {
        let z = zigzag();
        assert_eq!(z.pairs(), vec![(0, 1), (2, 1), (2, 3)]);
        assert!(!z.lt(0, 3));
    }

    #[test]
    fn closure_and_errors() {
        let p = from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.lt(0, 2));
        assert_eq!(from_pairs(3, &[]).unwrap(), FinitePoset::antichain(3));
        assert!(matches!(
            from_pairs(2, &[(0, 1), (1, 0)]),
            Err(Error::Cycle { from: 0, to: 1 })
        ));
        assert!(matches!(from_pairs(2, &[(0, 0)]), Err(Error::Cycle { .. })));
        assert!(matches!(
            from_pairs(2, &[(0, 2)]),
            Err(Error::Index { index: 2, size: 2 })
        ));
    }

    #[test]
    fn union_and_join() {
        let one = FinitePoset::singleton();
        assert_eq!(disjoint_union(&one, &one), FinitePoset::antichain(2));
        assert_eq!(join(&one, &one), FinitePoset::chain(2));
        let c2 = FinitePoset::chain(2);
        let left = disjoint_union(&c2, &c2);
        assert_eq!(left.pairs(), vec![(0, 1), (2, 3)]);
        let a2 = FinitePoset::antichain(2);
        let right = join(&a2, &a2);
        assert_eq!(right.pairs(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(disjoint_union(&zigzag(), &FinitePoset::empty()), zigzag());
        assert_eq!(join(&FinitePoset::empty(), &zigzag()), zigzag());
    }

    #[test]
    fn substitution_special_cases() {
        let z = zigzag();
        let c2 = FinitePoset::chain(2);
        assert_eq!(
            substitute(&FinitePoset::antichain(2), &[z.clone(), c2.clone()]).unwrap(),
            disjoint_union(&z, &c2)
        );
        assert_eq!(
            substitute(&FinitePoset::chain(2), &[z.clone(), c2.clone()]).unwrap(),
            join(&z, &c2)
        );
        let singles = vec![FinitePoset::singleton(); 4];
        assert_eq!(substitute(&z, &singles).unwrap(), z);
        assert!(matches!(
            substitute(&z, &singles[..3]),
            Err(Error::Arity { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn inclusion() {
        let a2 = FinitePoset::antichain(2);
        let c2 = FinitePoset::chain(2);
        assert!(is_inclusion(&a2, &c2));
        assert!(is_inclusion(&c2, &c2));
        assert!(!is_inclusion(&c2, &a2));
        assert!(!is_inclusion(&a2, &FinitePoset::antichain(3)));
    }

    #[test]
    fn embeddings_of_zigzag() {
        let z = zigzag();
        let own = full_embeddings(&z, &z);
        assert!(own.contains(&Embedding {
            mapping: vec![0, 1, 2, 3]
        }));
        assert!(own.iter().all(|e| e.is_valid(&z, &z)));
        assert!(full_embeddings(&z, &FinitePoset::chain(4)).is_empty());
        let expression = from_pairs(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        assert!(full_embeddings(&z, &expression).is_empty());
    }

    #[test]
    fn extensions_and_chains() {
        assert_eq!(linear_extensions(&FinitePoset::chain(3)).len(), 1);
        assert_eq!(linear_extensions(&FinitePoset::antichain(2)).len(), 2);
        assert_eq!(linear_extensions(&FinitePoset::empty()), vec![Vec::<usize>::new()]);
        assert_eq!(chains(&FinitePoset::antichain(2)), vec![vec![0], vec![1]]);
        assert_eq!(
            chains(&FinitePoset::chain(2)),
            vec![vec![0], vec![0, 1], vec![1]]
        );
    }

    #[test]
    fn components_and_covers() {
        assert_eq!(connected_components(&FinitePoset::antichain(3)).len(), 3);
        assert_eq!(connected_components(&zigzag()), vec![vec![0, 1, 2, 3]]);
        let c2 = FinitePoset::chain(2);
        assert_eq!(
            connected_components(&disjoint_union(&c2, &c2)),
            vec![vec![0, 1], vec![2, 3]]
        );
        assert_eq!(
            transitive_reduction(&FinitePoset::chain(3)),
            vec![(0, 1), (1, 2)]
        );
        assert!(transitive_reduction(&FinitePoset::antichain(3)).is_empty());
    }

    #[test]
    fn enumeration_guard() {
        assert_eq!(enumerate_posets(0).unwrap().count(), 1);
        assert_eq!(enumerate_posets(2).unwrap().count(), 3);
        assert!(matches!(
            enumerate_posets(7),
            Err(Error::SizeLimit { size: 7, limit: 6 })
        ));
    }

    #[test]
    fn json_and_dot() {
        let z = zigzag();
        let text = z.to_json_string();
        assert_eq!(text, r#"{"elements":4,"relations":[[0,1],[2,1],[2,3]]}"#);
        assert_eq!(FinitePoset::from_json_str(&text).unwrap(), z);
        let dot = FinitePoset::chain(2).to_dot();
        assert!(dot.contains("0 -> 1;"));
        let bare: PosetJson = serde_json::from_str(r#"{"elements":2}"#).unwrap();
        assert_eq!(FinitePoset::from_json(&bare).unwrap(), FinitePoset::antichain(2));
    }

    #[test]
    fn relabel_and_restrict() {
        let c2 = FinitePoset::chain(2);
        assert_eq!(c2.relabel(&[1, 0]).unwrap().pairs(), vec![(1, 0)]);
        assert!(c2.relabel(&[0, 0]).is_err());
        assert_eq!(zigzag().restrict(&[2, 3]), FinitePoset::chain(2));
        assert!(zigzag().is_linear_extension(&[2, 0, 3, 1]));
        assert!(!zigzag().is_linear_extension(&[1, 0, 2, 3]));
    }
}
