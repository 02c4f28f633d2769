//! Polynomial products, structure maps and the dependence product.

mod support;

use std::collections::BTreeMap;

use depcalc::expressible::decompose;
use depcalc::poly::{
    boxtimes_poly, comparitor, compose, dirichlet, evaluate_expression, interchanger, signature,
    FinitePolynomial,
};
use depcalc::poset::{from_pairs, is_inclusion, linear_extensions, FinitePoset};
use proptest::prelude::*;
use support::poset;

fn polynomial(max_positions: usize, max_dirs: usize) -> impl Strategy<Value = FinitePolynomial> + Clone {
    proptest::collection::vec(0..=max_dirs, 0..=max_positions).prop_map(FinitePolynomial::new)
}

/// Polynomials in which every position has at least one direction.
fn inhabited(max_positions: usize, max_dirs: usize) -> impl Strategy<Value = FinitePolynomial> + Clone {
    proptest::collection::vec(1..=max_dirs, 1..=max_positions).prop_map(FinitePolynomial::new)
}

/// Literal count over the composite `p_{ℓ1} ◁ .. ◁ p_{ℓn}`: a profile
/// assigns a position to every reachable history prefix, and is kept when
/// each stage's choice agrees on prefixes with equal predecessor
/// directions. Returns the direction counts of the kept profiles, sorted.
fn literal_profiles(p: &FinitePoset, parts: &[FinitePolynomial], ell: &[usize]) -> Vec<usize> {
    let n = ell.len();
    let mut out = Vec::new();
    let mut chosen: Vec<BTreeMap<Vec<usize>, usize>> = Vec::new();
    literal_grow(p, parts, ell, &[vec![]], &mut chosen, &mut out);
    assert!(n > 0 || out == vec![1]);
    out.sort_unstable();
    out
}

fn literal_grow(
    p: &FinitePoset,
    parts: &[FinitePolynomial],
    ell: &[usize],
    prefixes: &[Vec<usize>],
    chosen: &mut Vec<BTreeMap<Vec<usize>, usize>>,
    out: &mut Vec<usize>,
) {
    let k = chosen.len();
    if k == ell.len() {
        out.push(prefixes.len());
        return;
    }
    let part = &parts[ell[k]];
    let count = part.position_count();
    let mut assignment = vec![0; prefixes.len()];
    loop {
        let map: BTreeMap<Vec<usize>, usize> =
            prefixes.iter().cloned().zip(assignment.iter().copied()).collect();
        let mut by_key: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let consistent = prefixes.iter().all(|h| {
            let key: Vec<usize> = (0..k).filter(|&j| p.lt(ell[j], ell[k])).map(|j| h[j]).collect();
            *by_key.entry(key).or_insert(map[h]) == map[h]
        });
        if consistent && count > 0 {
            let next: Vec<Vec<usize>> = prefixes
                .iter()
                .flat_map(|h| {
                    (0..part.directions(map[h])).map(move |d| {
                        let mut e = h.clone();
                        e.push(d);
                        e
                    })
                })
                .collect();
            chosen.push(map);
            literal_grow(p, parts, ell, &next, chosen, out);
            chosen.pop();
        }
        // next assignment in base `count`
        let mut i = 0;
        while i < assignment.len() {
            assignment[i] += 1;
            if assignment[i] < count {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
        if i == assignment.len() {
            break;
        }
    }
}

fn poset_and_parts(
    max: usize,
    parts: impl Strategy<Value = FinitePolynomial> + Clone,
) -> impl Strategy<Value = (FinitePoset, Vec<FinitePolynomial>)> {
    poset(max).prop_flat_map(move |p| {
        let n = p.size();
        (Just(p), proptest::collection::vec(parts.clone(), n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn comparitor_is_a_cartesian_map(p in polynomial(3, 2), q in polynomial(3, 2)) {
        let m = comparitor(&p, &q);
        prop_assert!(m.is_valid(&dirichlet(&p, &q), &compose(&p, &q)));
        prop_assert!(m.is_cartesian(&dirichlet(&p, &q)));
    }

    #[test]
    fn interchanger_is_a_cartesian_map(
        p in polynomial(2, 2), q in polynomial(2, 2), r in polynomial(2, 2), s in polynomial(2, 2),
    ) {
        let source = dirichlet(&compose(&p, &q), &compose(&r, &s));
        let target = compose(&dirichlet(&p, &r), &dirichlet(&q, &s));
        let m = interchanger(&p, &q, &r, &s);
        prop_assert!(m.is_valid(&source, &target));
        prop_assert!(m.is_cartesian(&source));
    }

    #[test]
    fn boxtimes_matches_the_literal_composite((p, parts) in poset_and_parts(3, inhabited(2, 2))) {
        for ell in linear_extensions(&p) {
            let fast = boxtimes_poly(&p, &parts, &ell).unwrap();
            let mut dirs = fast.positions().to_vec();
            dirs.sort_unstable();
            prop_assert_eq!(dirs, literal_profiles(&p, &parts, &ell));
        }
    }

    #[test]
    fn boxtimes_ignores_the_extension((p, parts) in poset_and_parts(4, polynomial(2, 2))) {
        let exts = linear_extensions(&p);
        let first = signature(&boxtimes_poly(&p, &parts, &exts[0]).unwrap());
        for ell in &exts[1..] {
            prop_assert_eq!(&signature(&boxtimes_poly(&p, &parts, ell).unwrap()), &first);
        }
        if let Ok(e) = decompose(&p) {
            prop_assert_eq!(signature(&evaluate_expression(&e, &parts).unwrap()), first);
        }
    }

    #[test]
    fn more_dependence_allows_more_profiles(
        (p, parts, k) in poset_and_parts(4, inhabited(2, 2))
            .prop_flat_map(|(p, parts)| (Just(p), Just(parts), any::<prop::sample::Index>())),
    ) {
        let order = p.first_linear_extension();
        if order.len() >= 2 {
            let k = k.index(order.len() - 1);
            let mut pairs = p.pairs();
            pairs.push((order[k], order[k + 1]));
            let q = from_pairs(p.size(), &pairs).unwrap();
            prop_assert!(is_inclusion(&p, &q));
            let small = boxtimes_poly(&p, &parts, &order).unwrap();
            let large = boxtimes_poly(&q, &parts, &order).unwrap();
            prop_assert!(small.position_count() <= large.position_count());
        }
    }
}

#[test]
fn zigzag_against_the_literal_composite() {
    let z = depcalc::expressible::zigzag();
    let parts = vec![FinitePolynomial::new(vec![2, 1]); 4];
    let ell = z.first_linear_extension();
    let fast = boxtimes_poly(&z, &parts, &ell).unwrap();
    let mut dirs = fast.positions().to_vec();
    dirs.sort_unstable();
    assert_eq!(dirs, literal_profiles(&z, &parts, &ell));
}

/// A direction-free position ends the composite early, so adding a
/// relation can lose profiles: `1 ⊗ (y + y)` has two positions and
/// `1 ◁ (y + y)` only one.
#[test]
fn direction_free_positions_break_monotonicity() {
    let parts = [FinitePolynomial::new(vec![0]), FinitePolynomial::new(vec![1, 1])];
    let antichain = FinitePoset::antichain(2);
    let chain = FinitePoset::chain(2);
    let apart = boxtimes_poly(&antichain, &parts, &[0, 1]).unwrap();
    let sequenced = boxtimes_poly(&chain, &parts, &[0, 1]).unwrap();
    assert_eq!(apart, dirichlet(&parts[0], &parts[1]));
    assert_eq!(sequenced, compose(&parts[0], &parts[1]));
    assert_eq!((apart.position_count(), sequenced.position_count()), (2, 1));
}
