//! Seeded batch checks.
//!
//! Instance `i` draws from a ChaCha8 stream keyed by `(seed, i)`, so rows do
//! not depend on thread scheduling or on `count`, and the CSV is
//! byte-identical across runs.

use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::RunManifest;
use crate::dynamics::{bootstrap_closure, decide_per, orbit, PerInstance, PerOptions};
use crate::generate;
use crate::net::{NetworkSpec, RuleKind};
use crate::reductions::{verify_reduction, Backend, MAX_BOOTSTRAP_DEGREE};
use crate::schedule::UpdateSchedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    /// Bootstrap fixed points under several schedules versus the closure.
    BootstrapInvariance,
    /// Incremental bootstrap reachability versus plain simulation.
    BootstrapFastpath,
    /// Random circuits through both reductions, every assignment.
    Reduction,
}

impl SweepFamily {
    pub fn name(self) -> &'static str {
        match self {
            SweepFamily::BootstrapInvariance => "bootstrap-invariance",
            SweepFamily::BootstrapFastpath => "bootstrap-fastpath",
            SweepFamily::Reduction => "reduction",
        }
    }

    fn header(self) -> &'static str {
        match self {
            SweepFamily::BootstrapInvariance => "index,n,edges,initial_active,closure_active,schedules,pass",
            SweepFamily::BootstrapFastpath => "index,n,edges,target,reachable,witness_period,witness_block,pass",
            SweepFamily::Reduction => "index,inputs,gates,andor_vertices,bootstrap_vertices,bootstrap_max_degree,pass",
        }
    }
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

type Row = Result<(String, bool)>;

fn invariance_row(index: usize, rng: &mut ChaCha8Rng) -> Row {
    let n = rng.gen_range(2..=12);
    let p = rng.gen_range(0.15..0.6);
    let graph = generate::random_graph(rng, n, p);
    let density = rng.gen_range(0.1..0.5);
    let init = generate::random_config(rng, n, density);
    let closure = bootstrap_closure(&graph, &init);
    let edges = graph.edge_count();
    let net = NetworkSpec::uniform(graph, RuleKind::Bootstrap);
    let mut schedules = vec![UpdateSchedule::parallel(n)?];
    for _ in 0..3 {
        schedules.push(generate::random_sequential(rng, n));
        schedules.push(generate::random_partition(rng, n));
        schedules.push(generate::random_word(rng, n, 3));
    }
    let mut pass = true;
    for s in &schedules {
        let traj = orbit(&net, s, &init, n + 2)?;
        pass &= traj.period == 1 && traj.cycle()[0] == closure;
    }
    let line = format!(
        "{index},{n},{edges},{},{},{},{pass}",
        init.count_ones(),
        closure.count_ones(),
        schedules.len()
    );
    Ok((line, pass))
}

fn fastpath_row(index: usize, rng: &mut ChaCha8Rng) -> Row {
    let n = rng.gen_range(2..=14);
    let p = rng.gen_range(0.15..0.6);
    let graph = generate::random_graph(rng, n, p);
    let density = rng.gen_range(0.1..0.5);
    let mut init = generate::random_config(rng, n, density);
    let target = rng.gen_range(0..n);
    init.set(target, false);
    let edges = graph.edge_count();
    let schedule = match rng.gen_range(0..3) {
        0 => UpdateSchedule::parallel(n)?,
        1 => generate::random_sequential(rng, n),
        _ => generate::random_word(rng, n, 3),
    };
    let net = NetworkSpec::uniform(graph, RuleKind::Bootstrap);
    let inst = PerInstance::new(net, schedule, init, target, false)?;
    let fast = decide_per(&inst, &PerOptions::default())?;
    let naive = decide_per(
        &inst,
        &PerOptions {
            bootstrap_fast_path: false,
            ..PerOptions::default()
        },
    )?;
    let pass = fast == naive;
    let (wp, wb) = match fast.witness_time {
        Some(w) => (w.period.to_string(), w.block.to_string()),
        None => (String::new(), String::new()),
    };
    Ok((
        format!("{index},{n},{edges},{target},{},{wp},{wb},{pass}", fast.reachable),
        pass,
    ))
}

fn reduction_row(index: usize, rng: &mut ChaCha8Rng) -> Row {
    let inputs = rng.gen_range(1..=6);
    let gates = rng.gen_range(1..=10);
    let circuit = generate::random_circuit(rng, inputs, gates);
    let andor = verify_reduction(&circuit, Backend::AndOr, inputs)?;
    let boot = verify_reduction(&circuit, Backend::Bootstrap, inputs)?;
    let pass = andor.passed() && boot.passed() && boot.max_degree <= MAX_BOOTSTRAP_DEGREE;
    let line = format!(
        "{index},{inputs},{gates},{},{},{},{pass}",
        andor.vertices, boot.vertices, boot.max_degree
    );
    Ok((line, pass))
}

/// Runs `count` instances of `family` and returns the CSV text (manifest
/// comment, header, one row per instance) and whether every row passed.
pub fn run_sweep(family: SweepFamily, count: usize, seed: u64, manifest: &RunManifest) -> Result<(String, bool)> {
    let rows: Vec<(String, bool)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(seed, i);
            match family {
                SweepFamily::BootstrapInvariance => invariance_row(i, &mut rng),
                SweepFamily::BootstrapFastpath => fastpath_row(i, &mut rng),
                SweepFamily::Reduction => reduction_row(i, &mut rng),
            }
        })
        .collect::<Result<_>>()?;
    let mut csv = String::new();
    writeln!(csv, "# manifest {}", manifest.to_json())?;
    writeln!(csv, "{}", family.header())?;
    let mut all = true;
    for (line, pass) in rows {
        all &= pass;
        writeln!(csv, "{line}")?;
    }
    Ok((csv, all))
}
