use super::*;
use crate::construct::{build_circulant, build_cycle};
use crate::factor::Factor;
use crate::verify::{is_robust, robust_brute_force, vertex_connectivity, VerifyOptions};

fn fixed(nf: usize) -> GrowthBuilder {
    GrowthBuilder::with_min_seed(RobustnessPolicy::FixedNf { nf }, InsertionStrategy::Latest).unwrap()
}

fn factors(v: &[&str]) -> Vec<Factor> {
    v.iter().map(|s| s.parse().unwrap()).collect()
}

#[test]
fn reconcile_cycle_examples() {
    let (mut g, ring) = build_cycle(8).unwrap();
    let added = reconcile_ring(&mut g, &ring, 3).unwrap();
    assert_eq!(added.len(), 8);
    assert_eq!(g.link_count(), 16);

    let (mut g, ring) = build_cycle(8).unwrap();
    assert_eq!(reconcile_ring(&mut g, &ring, 4).unwrap().len(), 12);
    assert!(
        robust_brute_force(&g, 4, &VerifyOptions::default())
            .unwrap()
            .robust
    );
    assert!(reconcile_ring(&mut g, &ring, 4).unwrap().is_empty());
}

#[test]
fn reconcile_skips_present_links() {
    let (_, ring) = build_cycle(9).unwrap();
    let mut g = build_circulant(9, 3).unwrap();
    assert!(reconcile_ring(&mut g, &ring, 3).unwrap().is_empty());
    assert!(reconcile_ring(&mut g, &ring, 0).unwrap().is_empty());
}

#[test]
fn reconcile_odd_ring_even_demand() {
    for r in [5, 7, 9, 11] {
        let (mut g, ring) = build_cycle(r).unwrap();
        reconcile_ring(&mut g, &ring, 4).unwrap();
        assert!(
            robust_brute_force(&g, 4.min(r - 2), &VerifyOptions::default())
                .unwrap()
                .robust,
            "r={r}"
        );
    }
}

#[test]
fn fixed_nf_step_from_seven() {
    let mut b =
        GrowthBuilder::new(RobustnessPolicy::FixedNf { nf: 3 }, 7, InsertionStrategy::Latest).unwrap();
    let before = b.graph().link_count();
    let ev = b.step().unwrap();
    assert_eq!(ev.added_nodes, vec![NodeId(7)]);
    assert_eq!(ev.added_edges.len(), 4);
    assert_eq!(b.graph().link_count(), before + 4);
    assert!(ev.within_bound());
}

#[test]
fn fixed_nf_stays_robust() {
    for nf in 1..=4 {
        for strategy in [InsertionStrategy::Latest, InsertionStrategy::Random(7)] {
            let mut b = GrowthBuilder::with_min_seed(RobustnessPolicy::FixedNf { nf }, strategy).unwrap();
            for _ in 0..10 {
                let ev = b.step().unwrap();
                assert!(ev.within_bound(), "nf={nf} step={}", ev.step);
                let r = robust_brute_force(b.graph(), nf, &VerifyOptions::default()).unwrap();
                assert!(r.robust, "nf={nf} n={} {strategy:?}", ev.n);
                let ring = b.rings()[0].clone();
                assert!(contains_static_circulant(b.graph(), &ring, nf));
            }
        }
    }
}

#[test]
fn fixed_nf_link_count_at_hundred() {
    let mut b = fixed(3);
    b.grow_to(100).unwrap();
    assert_eq!(b.graph().link_count(), 390);
}

#[test]
fn half_policy_counts() {
    let mut b = GrowthBuilder::with_min_seed(RobustnessPolicy::Half, InsertionStrategy::Latest).unwrap();
    b.grow_to(4).unwrap();
    assert_eq!(b.graph().link_count(), 6);
    b.grow_to(10).unwrap();
    assert_eq!(b.graph().link_count(), 33);
    assert_eq!(b.current_nf(), 5);
    assert_eq!(vertex_connectivity(b.graph()), 6);
    assert!(b.trace().events.iter().all(TraceEvent::within_bound));
}

#[test]
fn half_plus_n_connectivity() {
    for extra in 0..=3 {
        let policy = RobustnessPolicy::HalfPlusN { n: extra };
        let mut b = GrowthBuilder::with_min_seed(policy, InsertionStrategy::Latest).unwrap();
        for ev in b.grow_to(24).unwrap() {
            assert!(ev.within_bound(), "n={extra} N={}", ev.n);
        }
        assert_eq!(b.current_nf(), 12 + extra);
        assert!(vertex_connectivity(b.graph()) > 12 + extra);
        let expect = 24 * 24 / 4 + (extra + 1) * 24 - (extra + 1) * (extra + 2);
        assert_eq!(b.graph().link_count(), expect);
    }
}

#[test]
fn two_rings_follow_fraction() {
    let policy = RobustnessPolicy::Fraction2f {
        schedule: factors(&["2"]),
    };
    let mut b = GrowthBuilder::with_min_seed(policy, InsertionStrategy::Latest).unwrap();
    for ev in b.grow_to(24).unwrap() {
        assert!(ev.within_bound());
        let r = is_robust(b.graph(), ev.nf, &VerifyOptions::default());
        assert!(r.robust, "N={} nf={}", ev.n, ev.nf);
    }
    assert_eq!(b.current_nf(), 6);
}

#[test]
fn two_rings_with_varying_schedule() {
    let policy = RobustnessPolicy::Fraction2f {
        schedule: factors(&["3/2", "2", "3/2", "4"]),
    };
    let mut b = GrowthBuilder::new(policy, 4, InsertionStrategy::Random(3)).unwrap();
    for ev in b.grow_to(20).unwrap() {
        assert!(is_robust(b.graph(), ev.nf, &VerifyOptions::default()).robust);
    }
}

#[test]
fn multi_ring_step_is_one_event() {
    let policy = RobustnessPolicy::Fraction2mf {
        m: 2,
        schedule: factors(&["1"]),
    };
    let mut b = GrowthBuilder::new(policy, 8, InsertionStrategy::Latest).unwrap();
    let events = b.grow_to(12).unwrap();
    assert_eq!(events.len(), 1);
    assert_eq!(events[0].added_nodes.len(), 4);
    assert_eq!(events[0].nf, 3);
    assert!(is_robust(b.graph(), 3, &VerifyOptions::default()).robust);
    assert!(b.grow_to(14).is_err());
}

#[test]
fn variable_schedule_raises_demand() {
    let policy = RobustnessPolicy::VariableNf {
        schedule: vec![2, 3, 3, 5, 2, 4],
    };
    let mut b = GrowthBuilder::with_min_seed(policy, InsertionStrategy::Latest).unwrap();
    let mut top = 2;
    for _ in 0..8 {
        let ev = b.step().unwrap();
        top = top.max(ev.nf);
        assert_eq!(ev.nf, top);
        assert!(
            robust_brute_force(b.graph(), ev.nf.min(ev.n - 2), &VerifyOptions::default())
                .unwrap()
                .robust
        );
    }
    let ev = b.reconcile_variable_nf(6).unwrap();
    assert!(ev.added_nodes.is_empty());
    assert!(
        robust_brute_force(b.graph(), 6, &VerifyOptions::default())
            .unwrap()
            .robust
    );
    assert!(b.reconcile_variable_nf(6).unwrap().added_edges.is_empty());
}

#[test]
fn wrong_step_kind_is_rejected() {
    let mut b = fixed(2);
    assert!(b.step_half().is_err());
    assert!(b.reconcile_variable_nf(3).is_err());
}

#[test]
fn bad_seeds_and_policies() {
    assert!(GrowthBuilder::new(RobustnessPolicy::FixedNf { nf: 3 }, 4, InsertionStrategy::Latest).is_err());
    assert!(GrowthBuilder::new(RobustnessPolicy::Half, 4, InsertionStrategy::Latest).is_err());
    let p = RobustnessPolicy::Fraction2f {
        schedule: factors(&["1"]),
    };
    assert!(GrowthBuilder::with_min_seed(p, InsertionStrategy::Latest).is_err());
    let p = RobustnessPolicy::Fraction2mf {
        m: 1,
        schedule: factors(&["1"]),
    };
    assert!(GrowthBuilder::with_min_seed(p, InsertionStrategy::Latest).is_err());
    assert!(
        GrowthBuilder::with_min_seed(RobustnessPolicy::FixedNf { nf: 0 }, InsertionStrategy::Latest).is_err()
    );
}

#[test]
fn trace_replays_to_final_graph() {
    let mut b = GrowthBuilder::new(
        RobustnessPolicy::FixedNf { nf: 4 },
        6,
        InsertionStrategy::Random(11),
    )
    .unwrap();
    b.grow_to(19).unwrap();
    let (g, trace) = b.into_parts();
    assert_eq!(trace.events[0].step, 0);
    assert_eq!(trace.events[0].added_nodes.len(), 6);
    assert_eq!(trace.replay().unwrap(), g);
}

#[test]
fn replay_rejects_repeated_link() {
    let mut b = fixed(1);
    b.grow_to(5).unwrap();
    let mut trace = b.trace().clone();
    let dup = trace.events[0].added_edges[0];
    trace.events[1].added_edges.push(dup);
    trace.events[1].links += 1;
    assert!(matches!(trace.replay(), Err(Error::Trace { line: 2, .. })));
}

#[test]
fn random_insertion_is_reproducible() {
    let grow = |seed| {
        let mut b = GrowthBuilder::with_min_seed(
            RobustnessPolicy::FixedNf { nf: 3 },
            InsertionStrategy::Random(seed),
        )
        .unwrap();
        b.grow_to(15).unwrap();
        b.into_parts().0
    };
    assert_eq!(grow(5), grow(5));
}

#[test]
fn savings_ratio_examples() {
    assert_eq!(savings_ratio(&Graph::new(1)), 0.0);
    let (c4, _) = build_cycle(4).unwrap();
    assert!((savings_ratio(&c4) - 1.0 / 3.0).abs() < 1e-12);
}
