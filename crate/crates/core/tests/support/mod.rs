//! Shared generators for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use depcalc::diagram::{Cell, Generator, PartialPolygraph, StringDiagram};
use depcalc::poset::{from_pairs, FinitePoset};
use depcalc::tropical::Runtime;
use proptest::prelude::*;
use rand::Rng;

/// One wire type `w`, compatible with itself, and a generator `g<a><b>`
/// for every arity pair up to 2.
pub fn uniform_polygraph() -> PartialPolygraph {
    let mut gens = BTreeMap::new();
    for a in 0..3 {
        for b in 0..3 {
            gens.insert(
                format!("g{a}{b}"),
                Generator {
                    src: vec!["w".to_string(); a],
                    tgt: vec!["w".to_string(); b],
                },
            );
        }
    }
    PartialPolygraph::total(vec!["w".to_string()], gens).unwrap()
}

/// A random valid diagram over [`uniform_polygraph`] starting from `width`
/// wires, with at most `budget` generator instances.
pub fn random_diagram<R: Rng>(rng: &mut R, width: usize, budget: usize) -> StringDiagram {
    let w = || "w".to_string();
    let input = vec![w(); width];
    let mut current = width;
    let mut left = budget;
    let mut layers = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        let mut layer = Vec::new();
        let mut rest = current;
        let mut next = 0;
        while rest > 0 || (left > 0 && rng.gen_bool(0.1)) {
            let roll: f64 = rng.gen();
            if left > 0 && roll < 0.45 {
                let a = rng.gen_range(0..=2.min(rest));
                let b = rng.gen_range(0..=2);
                layer.push(Cell::Gen(format!("g{a}{b}")));
                rest -= a;
                next += b;
                left -= 1;
            } else if rest >= 2 && roll < 0.6 {
                layer.push(Cell::Swap(w(), w()));
                rest -= 2;
                next += 2;
            } else if rest > 0 {
                layer.push(Cell::Id(w()));
                rest -= 1;
                next += 1;
            } else {
                break;
            }
        }
        current = next;
        layers.push(layer);
    }
    StringDiagram {
        input,
        output: vec![w(); current],
        layers,
    }
}

/// A random nonnegative rational with small numerator and denominator.
pub fn random_runtime<R: Rng>(rng: &mut R) -> Runtime {
    Runtime::ratio(rng.gen_range(0..=12), rng.gen_range(1..=4))
}

pub fn random_runtimes<R: Rng>(rng: &mut R, pg: &PartialPolygraph) -> BTreeMap<String, Runtime> {
    pg.generators()
        .keys()
        .map(|k| (k.clone(), random_runtime(rng)))
        .collect()
}

/// Random posets on up to `max` elements: a random relation compatible
/// with a random linear order, closed transitively.
pub fn poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (0..=max)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(proptest::bool::weighted(0.35), n * n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, bits, order)| {
            let mut pairs = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if bits[a * n + b] {
                        pairs.push((order[a], order[b]));
                    }
                }
            }
            from_pairs(n, &pairs).unwrap()
        })
}

/// Random posets with exactly `n` elements.
pub fn poset_of_size(n: usize) -> impl Strategy<Value = FinitePoset> {
    poset(n).prop_filter("size", move |p| p.size() == n)
}
