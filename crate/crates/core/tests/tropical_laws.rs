//! Critical-path semantics against expressions and schedules.

mod support;

use depcalc::expressible::decompose;
use depcalc::poset::{enumerate_posets, FinitePoset};
use depcalc::tropical::{boxtimes, check_interchange, evaluate_expression, schedule, Runtime};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use support::poset;

fn runtime() -> impl Strategy<Value = Runtime> {
    (0u64..=20, 1u64..=5).prop_map(|(n, d)| Runtime::ratio(n, d))
}

fn runtimes(n: usize) -> impl Strategy<Value = Vec<Runtime>> {
    proptest::collection::vec(runtime(), n)
}

proptest! {
    #[test]
    fn schedule_is_consistent((p, a) in poset(7).prop_flat_map(|p| {
        let n = p.size();
        (Just(p), runtimes(n))
    })) {
        let s = schedule(&p, &a).unwrap();
        prop_assert_eq!(&s.makespan, &boxtimes(&p, &a).unwrap());
        for (j, aj) in a.iter().enumerate() {
            prop_assert_eq!(&s.finish[j], &(&s.start[j] + aj));
            for i in p.predecessors(j) {
                prop_assert!(s.start[j] >= s.finish[i]);
            }
        }
        let chain = &s.critical_chain;
        for w in chain.windows(2) {
            prop_assert!(p.lt(w[0], w[1]));
        }
        let total: Runtime = chain.iter().map(|&i| a[i].clone()).sum();
        prop_assert_eq!(total, s.makespan);
    }

    #[test]
    fn interchange_inequality(a in runtime(), b in runtime(), c in runtime(), d in runtime()) {
        prop_assert!(check_interchange(&a, &b, &c, &d));
    }

    #[test]
    fn more_relations_never_shorten((p, extra, a) in poset(6).prop_flat_map(|p| {
        let n = p.size();
        (Just(p), any::<prop::sample::Index>(), runtimes(n))
    })) {
        // add the relations of one linear extension prefix pair
        let order = p.first_linear_extension();
        if order.len() >= 2 {
            let k = extra.index(order.len() - 1);
            let mut pairs = p.pairs();
            pairs.push((order[k], order[k + 1]));
            let q = depcalc::poset::from_pairs(p.size(), &pairs).unwrap();
            prop_assert!(boxtimes(&p, &a).unwrap() <= boxtimes(&q, &a).unwrap());
        }
    }
}

#[test]
fn expressions_agree_with_the_longest_chain() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for n in 0..=5 {
        for p in enumerate_posets(n).unwrap() {
            let Ok(e) = decompose(&p) else { continue };
            let a = runtimes(n).new_tree(&mut runner).unwrap().current();
            assert_eq!(evaluate_expression(&e, &a).unwrap(), boxtimes(&p, &a).unwrap(), "{e}");
        }
    }
}

#[test]
fn degenerate_cases() {
    assert_eq!(boxtimes(&FinitePoset::empty(), &[]).unwrap(), Runtime::zero());
    let s = schedule(&FinitePoset::empty(), &[]).unwrap();
    assert!(s.critical_chain.is_empty());
    let a = [Runtime::ratio(7, 3)];
    assert_eq!(boxtimes(&FinitePoset::singleton(), &a).unwrap(), Runtime::ratio(7, 3));
    assert_eq!(schedule(&FinitePoset::singleton(), &a).unwrap().critical_chain, vec![0]);
    assert!(boxtimes(&FinitePoset::singleton(), &[]).is_err());
}
