//! Recognition and decomposition of expressible posets.
//!
//! A poset is expressible when it can be built from singletons by disjoint
//! unions and joins. The zig-zag `Z` (`a < b`, `c < b`, `c < d`) is the only
//! obstruction: a poset is expressible iff it has no full embedding of `Z`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::Expression;
use crate::poset::{connected_components, FinitePoset};

/// Four elements `(a, b, c, d)` inducing exactly `a < b`, `c < b`, `c < d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Obstruction {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl Obstruction {
    pub fn elements(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The induced order on the four elements is exactly the zig-zag.
    pub fn is_valid_in(&self, p: &FinitePoset) -> bool {
        let e = self.elements();
        e.iter().all(|&x| x < p.size())
            && p.restrict(&e) == zigzag()
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

/// The zig-zag poset on `a=0, b=1, c=2, d=3`.
pub fn zigzag() -> FinitePoset {
    crate::poset::from_pairs(4, &[(0, 1), (2, 1), (2, 3)]).expect("zig-zag is a poset")
}

fn is_z(p: &FinitePoset, a: usize, b: usize, c: usize, d: usize) -> bool {
    p.lt(a, b)
        && p.lt(c, b)
        && p.lt(c, d)
        && p.incomparable(a, c)
        && p.incomparable(a, d)
        && p.incomparable(b, d)
}

/// Lexicographically least full embedding of `Z`, if any.
pub fn find_z(p: &FinitePoset) -> Option<Obstruction> {
    let n = p.size();
    for a in 0..n {
        for b in 0..n {
            if !p.lt(a, b) {
                continue;
            }
            for c in 0..n {
                if !p.lt(c, b) || !p.incomparable(a, c) {
                    continue;
                }
                for d in 0..n {
                    if is_z(p, a, b, c, d) {
                        return Some(Obstruction { a, b, c, d });
                    }
                }
            }
        }
    }
    None
}

pub fn is_expressible(p: &FinitePoset) -> bool {
    find_z(p).is_none()
}

/// Split `p` into an expression whose variables are the element indices,
/// or return the obstruction that prevents it.
///
/// Disconnected posets split into their components. A connected poset is
/// split at the top: `bottom` holds the elements strictly below every
/// maximal element, `top` the rest, and the poset must be `bottom ⋈ top`.
pub fn decompose(p: &FinitePoset) -> Result<Expression, Obstruction> {
    let all: Vec<usize> = (0..p.size()).collect();
    match decompose_on(p, &all) {
        Some(e) => Ok(e.normalize()),
        None => Err(find_z(p).expect("a decomposition only fails in the presence of Z")),
    }
}

/// Decompose the full sub-poset on `elements` (sorted), keeping the
/// original element indices as variables. `None` if it is not expressible.
pub(crate) fn decompose_on(p: &FinitePoset, elements: &[usize]) -> Option<Expression> {
    match elements {
        [] => return Some(Expression::Unit),
        [x] => return Some(Expression::Var(*x)),
        _ => {}
    }
    let sub = p.restrict(elements);
    let components = connected_components(&sub);
    if components.len() > 1 {
        let children = components
            .iter()
            .map(|c| {
                let global: Vec<usize> = c.iter().map(|&k| elements[k]).collect();
                decompose_on(p, &global)
            })
            .collect::<Option<Vec<_>>>()?;
        return Some(Expression::Otimes(children).normalize());
    }
    let maximal = sub.maximal_elements();
    let (bottom, top): (Vec<usize>, Vec<usize>) = (0..sub.size())
        .partition(|&x| maximal.iter().all(|&m| sub.lt(x, m)));
    if bottom.is_empty() || !sub.all_below(&bottom, &top) {
        return None;
    }
    let lower: Vec<usize> = bottom.iter().map(|&k| elements[k]).collect();
    let upper: Vec<usize> = top.iter().map(|&k| elements[k]).collect();
    let e = Expression::Tri(vec![decompose_on(p, &lower)?, decompose_on(p, &upper)?]);
    Some(e.normalize())
}
