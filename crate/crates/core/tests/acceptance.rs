//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the report is always
//! printed.

mod oracle;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use automata_net::cli::formats;
use automata_net::generate;
use automata_net::reductions::{Signal, MAX_BOOTSTRAP_DEGREE};
use automata_net::schedule::nc_violations;
use automata_net::{
    bootstrap_closure, check_nc_condition, classify_schedule, compile_to_bootstrap, decide_per, eval_local_rule, orbit,
    verify_reduction, Backend, Configuration, MonotoneCircuit, NetError, NetworkSpec, Observation, PerInstance,
    PerOptions, RuleKind, ScheduleCase, UpdateSchedule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use oracle::Net;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_schedule(rng: &mut ChaCha8Rng, kind: usize, n: usize) -> UpdateSchedule {
    match kind % 3 {
        0 => UpdateSchedule::parallel(n).unwrap(),
        1 => generate::random_sequential(rng, n),
        _ => generate::random_partition(rng, n),
    }
}

fn rule_table() -> Outcome {
    let mut checked = 0;
    for rule in RuleKind::ALL {
        for degree in 0..=8 {
            for active in 0..=degree {
                for me in [false, true] {
                    let got = eval_local_rule(rule, me, active, degree).map_err(|e| e.to_string())?;
                    let want = oracle::rule(rule, me, active, degree);
                    ensure(got == want, || {
                        format!("{rule} self={me} active={active} degree={degree}: got {got}, want {want}")
                    })?;
                    checked += 1;
                }
            }
            ensure(
                eval_local_rule(rule, false, degree + 1, degree)
                    == Err(NetError::CountExceedsDegree {
                        active: degree + 1,
                        degree,
                    }),
                || format!("{rule}: count above degree {degree} accepted"),
            )?;
        }
    }
    Ok(format!("{checked} table entries"))
}

fn bootstrap_invariance() -> Outcome {
    let mut rng = rng(2);
    let mut runs = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.1..0.7);
        let graph = generate::random_graph(&mut rng, n, p);
        let density = rng.gen_range(0.05..0.5);
        let init = generate::random_config(&mut rng, n, density);
        let closure = bootstrap_closure(&graph, &init);
        let brute = oracle::closure(
            &NetworkSpec::uniform(graph.clone(), RuleKind::Bootstrap),
            &init.to_bools(),
        );
        ensure(closure.to_bools() == brute, || {
            format!("graph {i}: closure differs from sweep fixed point")
        })?;
        let net = NetworkSpec::uniform(graph, RuleKind::Bootstrap);
        let mut schedules = vec![UpdateSchedule::parallel(n).unwrap()];
        schedules.extend((0..10).map(|_| generate::random_sequential(&mut rng, n)));
        schedules.extend((0..10).map(|_| generate::random_partition(&mut rng, n)));
        for s in &schedules {
            let traj = orbit(&net, s, &init, n + 2).map_err(|e| e.to_string())?;
            let ever = traj.boundary_states.iter().fold(Configuration::zeros(n), |acc, x| {
                Configuration::from_active(n, acc.ones().chain(x.ones()))
            });
            ensure(ever == closure, || {
                format!("graph {i}, schedule {s}: ever-active {ever} != closure {closure}")
            })?;
            runs += 1;
        }
    }
    Ok(format!("100 graphs, {runs} schedule runs"))
}

fn per_oracle() -> Outcome {
    let mut rng = rng(3);
    let mut reachable = 0;
    for i in 0..200 {
        let n = rng.gen_range(2..=10);
        let rule = RuleKind::ALL[i % 4];
        let p = rng.gen_range(0.15..0.6);
        let graph = generate::random_graph(&mut rng, n, p);
        let density = rng.gen_range(0.1..0.6);
        let mut init = generate::random_config(&mut rng, n, density);
        let target = rng.gen_range(0..n);
        init.set(target, false);
        let schedule = random_schedule(&mut rng, i / 4, n);
        let net = NetworkSpec::uniform(graph, rule);
        let brute = Net::from_spec(&net, &schedule);
        let inst = PerInstance::new(net, schedule, init.clone(), target, false).map_err(|e| e.to_string())?;
        for observe in [Observation::Block, Observation::Period] {
            let answer = decide_per(
                &inst,
                &PerOptions {
                    observe,
                    ..PerOptions::default()
                },
            )
            .map_err(|e| e.to_string())?;
            let want = brute.per(&init.to_bools(), target, observe == Observation::Block);
            let got = answer.witness_time.map(|w| (w.period, w.block));
            ensure(answer.reachable == want.is_some() && got == want, || {
                format!("instance {i} ({rule}, {observe}): got {got:?}, oracle {want:?}")
            })?;
            if observe == Observation::Block && want.is_some() {
                reachable += 1;
            }
        }
    }
    Ok(format!("200 instances, {reachable} reachable"))
}

fn orbit_oracle() -> Outcome {
    let mut rng = rng(4);
    let mut max_p = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.2..0.7);
        let graph = generate::random_graph(&mut rng, n, p);
        let init = generate::random_config(&mut rng, n, 0.5);
        let schedule = random_schedule(&mut rng, i, n);
        let net = NetworkSpec::uniform(graph, RuleKind::SimpleMajority);
        let want = Net::from_spec(&net, &schedule).tau_p(&init.to_bools());
        let traj = orbit(&net, &schedule, &init, 1 << n).map_err(|e| e.to_string())?;
        ensure((traj.transient, traj.period) == want, || {
            format!(
                "instance {i}: orbit ({}, {}), oracle {want:?}",
                traj.transient, traj.period
            )
        })?;
        max_p = max_p.max(traj.period);
    }
    let c4 = automata_net::Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let net = NetworkSpec::uniform(c4, RuleKind::SimpleMajority);
    let init: Configuration = "1010".parse().unwrap();
    let traj = orbit(&net, &UpdateSchedule::parallel(4).unwrap(), &init, 16).map_err(|e| e.to_string())?;
    ensure((traj.transient, traj.period) == (0, 2), || {
        format!("C4 alternating: ({}, {})", traj.transient, traj.period)
    })?;
    Ok(format!("100 instances (longest cycle {max_p}) + C4 (0, 2)"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

fn classifier() -> Outcome {
    let mut rng = rng(5);
    let mut counts = [0usize; 3];
    for i in 0..20 {
        let n = 2 + i % 5;
        let p = rng.gen_range(0.3..0.8);
        let graph = generate::random_graph(&mut rng, n, p);
        let net = generate::random_and_or(&mut rng, graph);
        for order in permutations(n) {
            let s = UpdateSchedule::sequential(&order).unwrap();
            let want = if Net::from_spec(&net, &s).nc_condition() {
                ScheduleCase::NcCondition
            } else {
                ScheduleCase::Interleaved
            };
            let got = classify_schedule(&net, &s).map_err(|e| e.to_string())?;
            ensure(got == want, || {
                format!("network {i}, order {order:?}: got {got}, oracle {want}")
            })?;
            let nc = check_nc_condition(&net, &s).map_err(|e| e.to_string())?;
            ensure(nc == (want == ScheduleCase::NcCondition), || {
                format!("network {i}: check_nc_condition disagrees")
            })?;
            let violations = nc_violations(&net, &s).map_err(|e| e.to_string())?;
            ensure(violations.is_empty() == nc, || {
                format!("network {i}: violation list disagrees")
            })?;
            counts[if nc { 1 } else { 2 }] += 1;
        }
        let parallel = classify_schedule(&net, &UpdateSchedule::parallel(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(parallel == ScheduleCase::NcCondition, || {
            format!("network {i}: parallel gave {parallel}")
        })?;
        for _ in 0..10 {
            let mut blocks = generate::random_partition(&mut rng, n).blocks().to_vec();
            let at = rng.gen_range(0..=blocks.len());
            blocks.insert(at, vec![rng.gen_range(0..n)]);
            let long = UpdateSchedule::new(n, blocks).unwrap();
            ensure(long.word_length() == n + 1, || "word length".into())?;
            let got = classify_schedule(&net, &long).map_err(|e| e.to_string())?;
            ensure(got == ScheduleCase::LongWord, || {
                format!("network {i}, word {long}: got {got}")
            })?;
            counts[0] += 1;
        }
    }
    Ok(format!(
        "{} NcCondition, {} Interleaved, {} LongWord",
        counts[1], counts[2], counts[0]
    ))
}

/// Small exhaustive corpus plus seeded random circuits.
fn reduction_corpus() -> Vec<MonotoneCircuit> {
    let mut corpus = Vec::new();
    for inputs in 1..=4 {
        for gates in 0..=3 {
            corpus.extend(generate::all_circuits(inputs, gates));
        }
    }
    let mut rng = rng(6);
    for i in 0..50 {
        let inputs = 1 + i % 8;
        let gates = rng.gen_range(1..=20);
        corpus.push(generate::random_circuit(&mut rng, inputs, gates));
    }
    corpus
}

fn netlist_value(c: &MonotoneCircuit, bits: &[bool]) -> bool {
    let k = c.inputs().len();
    let index = |s: Signal| match s {
        Signal::Input(i) => i,
        Signal::Gate(g) => k + g,
    };
    let gates: Vec<(bool, usize, usize)> = (0..c.gates().len())
        .map(|g| {
            let [a, b] = c.operands(g);
            (
                c.gates()[g].kind == automata_net::reductions::GateKind::And2,
                index(a),
                index(b),
            )
        })
        .collect();
    oracle::eval_netlist(bits, &gates, index(c.output_signal()))
}

fn reductions(corpus: &[MonotoneCircuit]) -> Outcome {
    let exhaustive = corpus.len() - 50;
    let failures: Vec<String> = corpus
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, c)| {
            let mut errs = Vec::new();
            for mask in 0..1u64 << c.inputs().len() {
                let bits = c.assignment_from_mask(mask);
                if c.eval_bits(&bits).unwrap() != netlist_value(c, &bits) {
                    errs.push(format!("circuit {i}: evaluator disagrees with netlist oracle"));
                }
            }
            for backend in [Backend::AndOr, Backend::Bootstrap] {
                match verify_reduction(c, backend, 8) {
                    Ok(r) if r.passed() => {}
                    Ok(r) => errs.push(format!("circuit {i} via {backend}: {r}\n{c}")),
                    Err(e) => errs.push(format!("circuit {i} via {backend}: {e}")),
                }
            }
            errs
        })
        .collect();
    match failures.first() {
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
        None => Ok(format!(
            "{exhaustive} exhaustive + 50 random circuits, both backends, 0 mismatches"
        )),
    }
}

fn degree_bound(corpus: &[MonotoneCircuit]) -> Outcome {
    let worst = corpus
        .par_iter()
        .map(|c| compile_to_bootstrap(c).network.graph().max_degree())
        .max()
        .unwrap_or(0);
    ensure(worst <= MAX_BOOTSTRAP_DEGREE, || format!("maximum degree {worst}"))?;
    Ok(format!("{} instances, largest degree {worst}", corpus.len()))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

/// Parses, emits and re-parses one instance file.
fn round_trip(path: &Path) -> Result<(), String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let err = |e: formats::FormatError| format!("{}: {e}", path.display());
    let head = Some("round trip");
    let (first, second) = match ext {
        "graph" => {
            let g = formats::parse_graph(&text).map_err(err)?;
            let e = formats::emit_graph(&g, head);
            ensure(formats::parse_graph(&e).map_err(err)? == g, || "graph changed".into())?;
            (
                e,
                formats::emit_graph(&formats::parse_graph(&formats::emit_graph(&g, head)).unwrap(), head),
            )
        }
        "rules" => {
            let r = formats::parse_rules(&text).map_err(err)?;
            let e = formats::emit_rules(&r, head);
            ensure(formats::parse_rules(&e).map_err(err)? == r, || "rules changed".into())?;
            (e.clone(), formats::emit_rules(&formats::parse_rules(&e).unwrap(), head))
        }
        "schedule" => {
            let ids: Vec<usize> = text.split_whitespace().filter_map(|t| t.parse().ok()).collect();
            let n = ids.iter().max().map_or(4, |m| m + 1);
            let s = formats::parse_schedule(&text, n).map_err(err)?;
            let e = formats::emit_schedule(&s, head);
            ensure(formats::parse_schedule(&e, n).map_err(err)? == s, || {
                "schedule changed".into()
            })?;
            (
                e.clone(),
                formats::emit_schedule(&formats::parse_schedule(&e, n).unwrap(), head),
            )
        }
        "circuit" => {
            let c = formats::parse_circuit(&text).map_err(err)?;
            let e = formats::emit_circuit(&c, head);
            ensure(formats::parse_circuit(&e).map_err(err)? == c, || {
                "circuit changed".into()
            })?;
            (
                e.clone(),
                formats::emit_circuit(&formats::parse_circuit(&e).unwrap(), head),
            )
        }
        "init" => {
            let c = formats::parse_config(&text).map_err(err)?;
            let e = formats::emit_config(&c, head);
            ensure(formats::parse_config(&e).map_err(err)? == c, || {
                "configuration changed".into()
            })?;
            (
                e.clone(),
                formats::emit_config(&formats::parse_config(&e).unwrap(), head),
            )
        }
        "target" => {
            let t = formats::parse_target(&text).map_err(err)?;
            let e = formats::emit_target(t, head);
            ensure(formats::parse_target(&e).map_err(err)? == t, || "target changed".into())?;
            (
                e.clone(),
                formats::emit_target(formats::parse_target(&e).unwrap(), head),
            )
        }
        other => return Err(format!("{}: unknown corpus extension {other:?}", path.display())),
    };
    ensure(first == second, || format!("{}: emit is not stable", path.display()))
}

fn autnet(args: &[&str], envs: &[(&str, &str)]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_autnet"))
        .args(args)
        .envs(envs.iter().copied())
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn cli_contract() -> Outcome {
    let dir = corpus_dir();
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| !p.file_name().unwrap().to_string_lossy().starts_with("malformed"))
        .collect();
    files.sort();
    for f in &files {
        round_trip(f)?;
    }

    // Compiled instances are corpus files too.
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out_dir = tmp.path().to_str().unwrap();
    let or2 = dir.join("or2.circuit");
    let (code, _) = autnet(
        &[
            "compile",
            or2.to_str().unwrap(),
            "--backend",
            "andor",
            "--assign",
            "x1=1,x2=0",
            "--out-dir",
            out_dir,
        ],
        &[],
    )?;
    ensure(code == 0, || format!("compile exited {code}"))?;
    let mut compiled = 0;
    for (name, ext) in [
        ("graph", "graph"),
        ("rules", "rules"),
        ("schedule", "schedule"),
        ("init", "init"),
        ("target", "target"),
    ] {
        let src = tmp.path().join(format!("{name}.txt"));
        let dst = tmp.path().join(format!("compiled.{ext}"));
        fs::copy(&src, &dst).map_err(|e| e.to_string())?;
        round_trip(&dst)?;
        compiled += 1;
    }

    let p = |f: &str| dir.join(f).to_string_lossy().into_owned();
    let golden = [
        (
            vec![
                "per".to_string(),
                p("p3.graph"),
                "--rule".into(),
                "bootstrap".into(),
                "--init".into(),
                p("p3.init"),
                "--target".into(),
                p("p3.target"),
            ],
            0,
        ),
        (
            vec![
                "per".to_string(),
                p("p3.graph"),
                "--rule".into(),
                "bootstrap".into(),
                "--init".into(),
                p("zeros3.init"),
                "--target".into(),
                p("p3.target"),
            ],
            1,
        ),
        (
            vec![
                "per".to_string(),
                p("malformed.graph"),
                "--rule".into(),
                "bootstrap".into(),
                "--init".into(),
                p("zeros3.init"),
                "--target".into(),
                "1".into(),
            ],
            2,
        ),
    ];
    for (args, want) in &golden {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _) = autnet(&args, &[])?;
        ensure(code == *want, || format!("{args:?}: exit {code}, want {want}"))?;
    }

    let sweep = [
        "sweep",
        "--family",
        "bootstrap-invariance",
        "--count",
        "100",
        "--seed",
        "7",
    ];
    let (c1, a) = autnet(&sweep, &[])?;
    let (c2, b) = autnet(&sweep, &[("RAYON_NUM_THREADS", "1")])?;
    ensure(c1 == 0 && c2 == 0, || format!("sweep exited {c1}/{c2}"))?;
    ensure(a == b, || "sweep output differs between runs".into())?;
    let text = String::from_utf8(a).map_err(|e| e.to_string())?;
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    ensure(rows.len() == 100 && rows.iter().all(|r| r.ends_with(",true")), || {
        "sweep rows missing or failing".into()
    })?;
    Ok(format!(
        "{} corpus files + {compiled} compiled files round-trip, 3 golden exit codes, sweep byte-identical",
        files.len()
    ))
}

fn main() {
    let start = Instant::now();
    let corpus = reduction_corpus();
    let criteria: Vec<Criterion> = vec![
        ("rule table", Box::new(rule_table)),
        ("bootstrap schedule invariance", Box::new(bootstrap_invariance)),
        ("PER oracle equivalence", Box::new(per_oracle)),
        ("orbit correctness", Box::new(orbit_oracle)),
        ("schedule classifier", Box::new(classifier)),
        ("reduction verification", Box::new(|| reductions(&corpus))),
        ("bootstrap degree bound", Box::new(|| degree_bound(&corpus))),
        ("CLI contract", Box::new(cli_contract)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome =
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
