mod oracle;

use automata_net::dynamics::default_max_periods;
use automata_net::generate;
use automata_net::{
    apply_block, bootstrap_closure, decide_per, orbit, run_period, Configuration, DynamicsError, Graph, NetError,
    NetworkSpec, Observation, PerInstance, PerOptions, RuleKind, UpdateSchedule,
};
use oracle::Net;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn path3() -> NetworkSpec {
    NetworkSpec::uniform(Graph::new(3, &[(0, 1), (1, 2)]).unwrap(), RuleKind::Bootstrap)
}

fn cycle4() -> NetworkSpec {
    NetworkSpec::uniform(
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
        RuleKind::SimpleMajority,
    )
}

fn bits(s: &str) -> Configuration {
    s.parse().unwrap()
}

/// Graph, rules, schedule kind and config drawn from one seed.
fn instance(seed: u64, n: usize, mixed: bool) -> (NetworkSpec, UpdateSchedule, Configuration) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = generate::random_graph(&mut rng, n, 0.4);
    let rules = (0..n)
        .map(|v| {
            if mixed {
                RuleKind::ALL[(seed as usize + v * 7) % 4]
            } else {
                RuleKind::ALL[seed as usize % 4]
            }
        })
        .collect();
    let net = NetworkSpec::new(graph, rules).unwrap();
    let schedule = match seed % 4 {
        0 => UpdateSchedule::parallel(n).unwrap(),
        1 => generate::random_sequential(&mut rng, n),
        2 => generate::random_partition(&mut rng, n),
        _ => generate::random_word(&mut rng, n, 3),
    };
    let config = generate::random_config(&mut rng, n, 0.4);
    (net, schedule, config)
}

#[test]
fn path_bootstrap_fills_in_one_period() {
    let traj = orbit(&path3(), &UpdateSchedule::parallel(3).unwrap(), &bits("101"), 8).unwrap();
    assert_eq!(traj.boundary_states.last().unwrap(), &bits("111"));
    assert_eq!((traj.transient, traj.period), (1, 1));
}

#[test]
fn alternating_cycle() {
    let traj = orbit(&cycle4(), &UpdateSchedule::parallel(4).unwrap(), &bits("1010"), 8).unwrap();
    assert_eq!((traj.transient, traj.period), (0, 2));
    assert_eq!(traj.cycle(), &[bits("1010"), bits("0101")]);
}

#[test]
fn sequential_breaks_the_alternation() {
    let s = UpdateSchedule::sequential(&[0, 1, 2, 3]).unwrap();
    let traj = orbit(&cycle4(), &s, &bits("1010"), 16).unwrap();
    assert_eq!(traj.period, 1);
}

#[test]
fn per_path_example() {
    let inst = PerInstance::new(path3(), UpdateSchedule::parallel(3).unwrap(), bits("101"), 1, false).unwrap();
    let answer = decide_per(&inst, &PerOptions::default()).unwrap();
    assert!(answer.reachable);
    let w = answer.witness_time.unwrap();
    assert_eq!((w.period, w.block), (0, 0));
}

#[test]
fn all_zero_is_not_reachable() {
    let inst = PerInstance::new(path3(), UpdateSchedule::parallel(3).unwrap(), bits("000"), 1, false).unwrap();
    let answer = decide_per(&inst, &PerOptions::default()).unwrap();
    assert!(!answer.reachable);
    assert_eq!(answer.witness_time, None);
}

#[test]
fn instance_preconditions() {
    let p = UpdateSchedule::parallel(3).unwrap();
    assert_eq!(
        PerInstance::new(path3(), p.clone(), bits("010"), 1, false),
        Err(DynamicsError::TargetInitiallyActive(1))
    );
    assert!(matches!(
        PerInstance::new(path3(), p.clone(), bits("000"), 3, false),
        Err(DynamicsError::VertexOutOfRange { vertex: 3, n: 3 })
    ));
    let andor = NetworkSpec::new(path3().graph().clone(), vec![RuleKind::Or, RuleKind::And, RuleKind::Or]).unwrap();
    assert_eq!(
        PerInstance::new(andor.clone(), p.clone(), bits("010"), 0, true),
        Err(DynamicsError::InitialConfig(NetError::ActiveNonOrVertex(1)))
    );
    assert!(PerInstance::new(andor, p, bits("010"), 0, false).is_ok());
}

#[test]
fn bound_exceeded_keeps_the_partial_trajectory() {
    // C4 alternating plus an isolated passive target: the cycle repeats
    // after two periods.
    let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let net = NetworkSpec::uniform(g, RuleKind::SimpleMajority);
    let inst = PerInstance::new(net, UpdateSchedule::parallel(5).unwrap(), bits("10100"), 4, false).unwrap();
    let two = PerOptions {
        max_periods: Some(2),
        ..PerOptions::default()
    };
    assert!(!decide_per(&inst, &two).unwrap().reachable);
    let tight = PerOptions {
        max_periods: Some(1),
        ..PerOptions::default()
    };
    match decide_per(&inst, &tight) {
        Err(DynamicsError::BoundExceeded {
            max_periods: 1,
            partial,
        }) => {
            assert_eq!(partial, vec![bits("10100"), bits("01010")]);
        }
        other => panic!("expected BoundExceeded, got {other:?}"),
    }
    let zero = PerOptions {
        max_periods: Some(0),
        ..PerOptions::default()
    };
    assert_eq!(decide_per(&inst, &zero), Err(DynamicsError::ZeroBound));
}

#[test]
fn observation_modes_differ_on_transient_activity() {
    // Vertex 0 turns on in block 2 and off again in block 3.
    let g = Graph::new(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
    let net = NetworkSpec::uniform(g, RuleKind::SimpleMajority);
    let s = UpdateSchedule::new(4, vec![vec![0], vec![1], vec![0], vec![2, 3]]).unwrap();
    let inst = PerInstance::new(net, s, bits("0100"), 0, false).unwrap();
    let block = decide_per(&inst, &PerOptions::default()).unwrap();
    assert_eq!(block.witness_time.map(|w| (w.period, w.block)), Some((0, 0)));
    let period = decide_per(
        &inst,
        &PerOptions {
            observe: Observation::Period,
            ..PerOptions::default()
        },
    )
    .unwrap();
    assert!(!period.reachable);
}

#[test]
fn activation_log_records_blocks() {
    let s = UpdateSchedule::sequential(&[1, 0, 2]).unwrap();
    let (next, log) = run_period(&path3(), &s, &bits("100")).unwrap();
    assert_eq!(next, bits("100"));
    assert!(log.is_empty());
    let (next, log) = run_period(&path3(), &s, &bits("101")).unwrap();
    assert_eq!(next, bits("111"));
    assert_eq!(log.len(), 1);
    assert_eq!((log[0].vertex, log[0].block), (1, 0));
}

#[test]
fn all_zero_is_fixed_without_isolated_and_vertices() {
    for seed in 0..40 {
        let (net, s, _) = instance(seed, 8, true);
        let isolated_and = (0..net.n()).any(|v| net.rule(v) == RuleKind::And && net.graph().degree(v) == 0);
        let zero = Configuration::zeros(net.n());
        let (next, _) = run_period(&net, &s, &zero).unwrap();
        assert_eq!(next == zero, !isolated_and, "seed {seed}");
    }
}

#[test]
fn default_bound() {
    assert_eq!(default_max_periods(3), 8);
    assert_eq!(default_max_periods(19), 1 << 19);
    assert_eq!(default_max_periods(20), 1_000_000);
    assert_eq!(default_max_periods(500), 1_000_000);
}

#[test]
fn per_matches_oracle_on_mixed_rules_and_long_words() {
    for seed in 0..300 {
        let n = 2 + (seed as usize % 9);
        let (net, s, mut init) = instance(seed, n, seed % 2 == 0);
        let target = seed as usize % n;
        init.set(target, false);
        let brute = Net::from_spec(&net, &s);
        let inst = PerInstance::new(net, s, init.clone(), target, false).unwrap();
        for observe in [Observation::Block, Observation::Period] {
            let got = decide_per(
                &inst,
                &PerOptions {
                    observe,
                    ..PerOptions::default()
                },
            )
            .unwrap();
            let want = brute.per(&init.to_bools(), target, observe == Observation::Block);
            assert_eq!(
                got.witness_time.map(|w| (w.period, w.block)),
                want,
                "seed {seed} {observe}"
            );
        }
    }
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn arb_case(max_n: usize) -> impl Strategy<Value = (Graph, Vec<bool>, u64)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(any::<bool>(), n), any::<u64>())
    })
}

fn schedule_from(seed: u64, n: usize) -> UpdateSchedule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match seed % 4 {
        0 => UpdateSchedule::parallel(n).unwrap(),
        1 => generate::random_sequential(&mut rng, n),
        2 => generate::random_partition(&mut rng, n),
        _ => generate::random_word(&mut rng, n, 2),
    }
}

proptest! {
    #[test]
    fn block_updates_are_monotone((g, x, seed) in arb_case(10), extra in proptest::collection::vec(any::<bool>(), 10)) {
        let n = g.n();
        let y: Vec<bool> = x.iter().zip(&extra).map(|(&a, &b)| a || b).collect();
        for rule in RuleKind::ALL {
            let net = NetworkSpec::uniform(g.clone(), rule);
            let s = schedule_from(seed, n);
            let (fx, _) = run_period(&net, &s, &Configuration::from_bools(&x)).unwrap();
            let (fy, _) = run_period(&net, &s, &Configuration::from_bools(&y)).unwrap();
            prop_assert!(fx.is_subset_of(&fy), "{rule}: {fx} not below {fy}");
        }
    }

    #[test]
    fn odd_degree_majority_ignores_self((g, x, _seed) in arb_case(10), v in 0usize..10) {
        let n = g.n();
        let v = v % n;
        prop_assume!(g.degree(v) % 2 == 1);
        let net = NetworkSpec::uniform(g, RuleKind::SimpleMajority);
        let mut flipped = x.clone();
        flipped[v] = !flipped[v];
        let a = apply_block(&net, &Configuration::from_bools(&x), &[v]).unwrap();
        let b = apply_block(&net, &Configuration::from_bools(&flipped), &[v]).unwrap();
        prop_assert_eq!(a.get(v), b.get(v));
    }

    #[test]
    fn parallel_majority_has_period_at_most_two((g, x, _seed) in arb_case(10)) {
        let n = g.n();
        let net = NetworkSpec::uniform(g, RuleKind::SimpleMajority);
        let traj = orbit(&net, &UpdateSchedule::parallel(n).unwrap(), &Configuration::from_bools(&x), 1 << n).unwrap();
        prop_assert!(traj.period <= 2);
    }

    #[test]
    fn sequential_majority_reaches_a_fixed_point((g, x, seed) in arb_case(10)) {
        let n = g.n();
        let net = NetworkSpec::uniform(g, RuleKind::SimpleMajority);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = generate::random_sequential(&mut rng, n);
        let traj = orbit(&net, &s, &Configuration::from_bools(&x), 1 << n).unwrap();
        prop_assert_eq!(traj.period, 1);
    }

    #[test]
    fn bootstrap_grows_and_settles((g, x, seed) in arb_case(12)) {
        let n = g.n();
        let net = NetworkSpec::uniform(g.clone(), RuleKind::Bootstrap);
        let s = schedule_from(seed, n);
        let init = Configuration::from_bools(&x);
        let traj = orbit(&net, &s, &init, n + 2).unwrap();
        for w in traj.boundary_states.windows(2) {
            prop_assert!(w[0].is_subset_of(&w[1]));
        }
        prop_assert_eq!(traj.period, 1);
        prop_assert!(traj.transient <= n);
        prop_assert_eq!(&traj.cycle()[0], &bootstrap_closure(&g, &init));
        prop_assert_eq!(bootstrap_closure(&g, &init).to_bools(), oracle::closure(&net, &x));
    }

    #[test]
    fn bootstrap_fast_path_matches_plain_simulation((g, x, seed) in arb_case(12), target in 0usize..12) {
        let n = g.n();
        let target = target % n;
        let mut init = Configuration::from_bools(&x);
        init.set(target, false);
        let net = NetworkSpec::uniform(g, RuleKind::Bootstrap);
        let inst = PerInstance::new(net, schedule_from(seed, n), init, target, false).unwrap();
        for observe in [Observation::Block, Observation::Period] {
            let fast = decide_per(&inst, &PerOptions { observe, ..PerOptions::default() }).unwrap();
            let slow = decide_per(&inst, &PerOptions { observe, bootstrap_fast_path: false, ..PerOptions::default() }).unwrap();
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn orbit_matches_oracle((g, x, seed) in arb_case(8), rule in 0usize..4) {
        let n = g.n();
        let net = NetworkSpec::uniform(g, RuleKind::ALL[rule]);
        let s = schedule_from(seed, n);
        let want = Net::from_spec(&net, &s).tau_p(&x);
        let traj = orbit(&net, &s, &Configuration::from_bools(&x), 1 << n).unwrap();
        prop_assert_eq!((traj.transient, traj.period), want);
    }
}
