//! The `autnet` command line.
//!
//! Every command writes a manifest record first (command, inputs, seed,
//! flags, tool version) so an output artifact identifies how it was made.
//! Exit codes: 0 for a positive answer or success, 1 for a negative answer,
//! 2 for any error.

pub mod formats;
mod sweep;

use std::collections::{BTreeMap, HashMap};
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::dynamics::{decide_per, run_period, DynamicsError, Observation, PerInstance, PerOptions};
use crate::net::{validate_initial_config, Configuration, Graph, NetworkSpec, RuleKind};
use crate::reductions::{verify_reduction, Backend, DEFAULT_EXHAUSTION_BOUND};
use crate::schedule::{classify_schedule, nc_violations, UpdateSchedule};

pub use sweep::{run_sweep, SweepFamily};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "autnet",
    version,
    about = "Boolean automata networks under periodic update schedules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the period map until a boundary configuration repeats.
    Simulate(SimulateArgs),
    /// Decide whether the target vertex is ever active.
    Per(PerArgs),
    /// Classify an AND/OR network and schedule.
    Classify(ClassifyArgs),
    /// Compile a monotone circuit into a reachability instance.
    Compile(CompileArgs),
    /// Seeded batch checks, one CSV row per instance.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UniformRule {
    Bootstrap,
    Majority,
    And,
    Or,
}

impl From<UniformRule> for RuleKind {
    fn from(r: UniformRule) -> Self {
        match r {
            UniformRule::Bootstrap => RuleKind::Bootstrap,
            UniformRule::Majority => RuleKind::SimpleMajority,
            UniformRule::And => RuleKind::And,
            UniformRule::Or => RuleKind::Or,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObserveArg {
    Block,
    Period,
}

impl From<ObserveArg> for Observation {
    fn from(o: ObserveArg) -> Self {
        match o {
            ObserveArg::Block => Observation::Block,
            ObserveArg::Period => Observation::Period,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Andor,
    Bootstrap,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Andor => Backend::AndOr,
            BackendArg::Bootstrap => Backend::Bootstrap,
        }
    }
}

#[derive(Debug, Args)]
pub struct NetworkArgs {
    /// Graph file: "n m" followed by m edge lines.
    pub graph: PathBuf,
    /// Uniform rule for every vertex.
    #[arg(long, conflicts_with = "rules", required_unless_present = "rules")]
    pub rule: Option<UniformRule>,
    /// Rules file: one of and/or/bootstrap/majority per vertex.
    #[arg(long)]
    pub rules: Option<PathBuf>,
    /// Schedule file, or the schedule text itself (e.g. "parallel").
    #[arg(long, default_value = "parallel")]
    pub schedule: String,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub net: NetworkArgs,
    /// Initial configuration: a bit string or a file holding one.
    #[arg(long)]
    pub init: String,
    /// Period cap; defaults to min(2^n, 10^6).
    #[arg(long)]
    pub max_periods: Option<usize>,
    /// Require every initially active vertex to be an OR vertex.
    #[arg(long)]
    pub enforce_or_only: bool,
}

#[derive(Debug, Args)]
pub struct PerArgs {
    #[command(flatten)]
    pub net: NetworkArgs,
    /// Initial configuration: a bit string or a file holding one.
    #[arg(long)]
    pub init: String,
    /// Target vertex id, or a file holding one.
    #[arg(long)]
    pub target: String,
    /// Period cap; defaults to min(2^n, 10^6).
    #[arg(long)]
    pub max_periods: Option<usize>,
    /// Check the target after every block, or only at period boundaries.
    #[arg(long, value_enum, default_value = "block")]
    pub observe: ObserveArg,
    /// Require every initially active vertex to be an OR vertex.
    #[arg(long)]
    pub enforce_or_only: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub net: NetworkArgs,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// Circuit netlist file.
    pub circuit: PathBuf,
    /// Target network family.
    #[arg(long, value_enum)]
    pub backend: BackendArg,
    /// Input values, "x1=1,x2=0" or a bit string in declaration order.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub assign: Option<String>,
    /// Verify every input assignment instead of writing an instance.
    #[arg(long)]
    pub all: bool,
    /// Directory receiving graph.txt, rules.txt, schedule.txt, init.txt, target.txt.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Largest input count accepted by --all.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTION_BOUND)]
    pub bound: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: SweepFamily,
    /// Number of instances.
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Identifies how an artifact was produced; written verbatim into outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
    pub flags: BTreeMap<String, String>,
    pub version: String,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            inputs: Vec::new(),
            seed: None,
            flags: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    fn input(mut self, path: impl AsRef<Path>) -> Self {
        self.inputs.push(path.as_ref().display().to_string());
        self
    }

    fn flag(mut self, key: &str, value: impl ToString) -> Self {
        self.flags.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    fn record(&self) -> String {
        json!({ "manifest": self }).to_string()
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Treats `arg` as a path when such a file exists, else as literal text.
fn file_or_literal(arg: &str) -> Result<(String, bool)> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok((read(path)?, true))
    } else {
        Ok((arg.to_string(), false))
    }
}

struct LoadedNetwork {
    network: NetworkSpec,
    schedule: UpdateSchedule,
    manifest: RunManifest,
}

fn load_network(args: &NetworkArgs, manifest: RunManifest) -> Result<LoadedNetwork> {
    let graph: Graph =
        formats::parse_graph(&read(&args.graph)?).with_context(|| format!("{}", args.graph.display()))?;
    let mut manifest = manifest.input(&args.graph);
    let rules = match (&args.rule, &args.rules) {
        (Some(r), _) => {
            manifest = manifest.flag("rule", RuleKind::from(*r));
            vec![RuleKind::from(*r); graph.n()]
        }
        (None, Some(path)) => {
            manifest = manifest.input(path);
            formats::parse_rules(&read(path)?).with_context(|| format!("{}", path.display()))?
        }
        (None, None) => bail!("either --rule or --rules is required"),
    };
    let network = NetworkSpec::new(graph, rules)?;
    let (text, is_file) = file_or_literal(&args.schedule)?;
    manifest = if is_file {
        manifest.input(&args.schedule)
    } else {
        manifest.flag("schedule", &args.schedule)
    };
    let schedule =
        formats::parse_schedule(&text, network.n()).with_context(|| format!("schedule {:?}", args.schedule))?;
    Ok(LoadedNetwork {
        network,
        schedule,
        manifest,
    })
}

fn load_config(arg: &str, manifest: RunManifest, n: usize) -> Result<(Configuration, RunManifest)> {
    let (text, is_file) = file_or_literal(arg)?;
    let manifest = if is_file {
        manifest.input(arg)
    } else {
        manifest.flag("init", arg)
    };
    let config = formats::parse_config(&text).with_context(|| format!("initial configuration {arg:?}"))?;
    if config.len() != n {
        bail!(
            "initial configuration has {} bits, network has {n} vertices",
            config.len()
        );
    }
    Ok((config, manifest))
}

fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<i32> {
    let loaded = load_network(&args.net, RunManifest::new("simulate"))?;
    let (init, mut manifest) = load_config(&args.init, loaded.manifest, loaded.network.n())?;
    validate_initial_config(&loaded.network, &init, args.enforce_or_only)?;
    let max_periods = args
        .max_periods
        .unwrap_or_else(|| crate::dynamics::default_max_periods(loaded.network.n()));
    manifest = manifest
        .flag("max-periods", max_periods)
        .flag("enforce-or-only", args.enforce_or_only);
    writeln!(out, "{}", manifest.record())?;

    let mut seen: HashMap<Configuration, usize> = HashMap::new();
    let mut current = init;
    let mut activations: Vec<usize> = Vec::new();
    for period in 0..=max_periods {
        if let Some(&first) = seen.get(&current) {
            writeln!(
                out,
                "{}",
                json!({ "cycle": { "transient": first, "period": period - first } })
            )?;
            return Ok(EXIT_YES);
        }
        writeln!(
            out,
            "{}",
            json!({ "period": period, "state": current.to_string(), "activations": activations })
        )?;
        if period == max_periods {
            break;
        }
        seen.insert(current.clone(), period);
        let (next, log) = run_period(&loaded.network, &loaded.schedule, &current)?;
        activations = log.iter().map(|a| a.vertex).collect();
        activations.sort_unstable();
        activations.dedup();
        current = next;
    }
    writeln!(out, "{}", json!({ "bound_exceeded": { "max_periods": max_periods } }))?;
    Ok(EXIT_YES)
}

fn per(args: &PerArgs, out: &mut dyn Write) -> Result<i32> {
    let loaded = load_network(&args.net, RunManifest::new("per"))?;
    let n = loaded.network.n();
    let (init, manifest) = load_config(&args.init, loaded.manifest, n)?;
    let (target_text, target_is_file) = file_or_literal(&args.target)?;
    let target = formats::parse_target(&target_text).with_context(|| format!("target {:?}", args.target))?;
    let manifest = if target_is_file {
        manifest.input(&args.target)
    } else {
        manifest.flag("target", target)
    };
    let options = PerOptions {
        max_periods: args.max_periods,
        observe: args.observe.into(),
        bootstrap_fast_path: true,
    };
    let mut manifest = manifest
        .flag("observe", options.observe)
        .flag("enforce-or-only", args.enforce_or_only);
    if let Some(m) = args.max_periods {
        manifest = manifest.flag("max-periods", m);
    }
    let instance = PerInstance::new(loaded.network, loaded.schedule, init, target, args.enforce_or_only)?;
    let answer = match decide_per(&instance, &options) {
        Err(DynamicsError::BoundExceeded { max_periods, .. }) => {
            bail!("no repeated configuration within {max_periods} periods; raise --max-periods")
        }
        other => other?,
    };
    writeln!(out, "{}", manifest.record())?;
    let record = json!({
        "reachable": answer.reachable,
        "witness": answer.witness_time,
    });
    writeln!(out, "{record}")?;
    Ok(if answer.reachable { EXIT_YES } else { EXIT_NO })
}

fn classify(args: &ClassifyArgs, out: &mut dyn Write) -> Result<i32> {
    let loaded = load_network(&args.net, RunManifest::new("classify"))?;
    let case = classify_schedule(&loaded.network, &loaded.schedule)?;
    let violations = if loaded.schedule.word_length() == loaded.network.n() {
        nc_violations(&loaded.network, &loaded.schedule)?
    } else {
        Vec::new()
    };
    writeln!(out, "{}", loaded.manifest.record())?;
    let record = json!({
        "case": case,
        "word_length": loaded.schedule.word_length(),
        "n": loaded.network.n(),
        "violations": violations,
    });
    writeln!(out, "{record}")?;
    Ok(EXIT_YES)
}

fn compile(args: &CompileArgs, out: &mut dyn Write) -> Result<i32> {
    let circuit =
        formats::parse_circuit(&read(&args.circuit)?).with_context(|| format!("{}", args.circuit.display()))?;
    let backend: Backend = args.backend.into();
    let manifest = RunManifest::new("compile")
        .input(&args.circuit)
        .flag("backend", backend);
    if args.all {
        let manifest = manifest.flag("all", true).flag("bound", args.bound);
        let report = verify_reduction(&circuit, backend, args.bound)?;
        writeln!(out, "{}", manifest.record())?;
        let mut value = serde_json::to_value(&report)?;
        value["summary"] = json!(report.to_string());
        writeln!(out, "{value}")?;
        return Ok(if report.passed() { EXIT_YES } else { EXIT_NO });
    }
    let assign_text = args.assign.as_deref().expect("clap requires --assign without --all");
    let assignment = formats::parse_assignment(&circuit, assign_text)?;
    let manifest = manifest.flag("assign", assign_text);
    let compiled = backend.compile(&circuit);
    let instance = compiled.instantiate(&circuit, &assignment)?;
    let head = manifest.to_json();
    let head = Some(head.as_str());
    fs::create_dir_all(&args.out_dir).with_context(|| format!("creating {}", args.out_dir.display()))?;
    let files = [
        ("graph.txt", formats::emit_graph(instance.network().graph(), head)),
        ("rules.txt", formats::emit_rules(instance.network().rules(), head)),
        ("schedule.txt", formats::emit_schedule(instance.schedule(), head)),
        ("init.txt", formats::emit_config(instance.initial(), head)),
        ("target.txt", formats::emit_target(instance.target(), head)),
    ];
    let mut written = Vec::new();
    for (name, text) in &files {
        let path = args.out_dir.join(name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        written.push(path.display().to_string());
    }
    writeln!(out, "{}", manifest.record())?;
    let value = circuit.eval_bits(&assignment)?;
    writeln!(
        out,
        "{}",
        json!({ "files": written, "vertices": instance.network().n(), "circuit_value": value })
    )?;
    Ok(EXIT_YES)
}

fn sweep_cmd(args: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    if args.count == 0 {
        bail!("--count must be at least 1");
    }
    let manifest = RunManifest::new("sweep")
        .flag("family", args.family.name())
        .flag("count", args.count);
    let mut manifest = manifest;
    manifest.seed = Some(args.seed);
    let (csv, all_pass) = run_sweep(args.family, args.count, args.seed, &manifest)?;
    match &args.out {
        Some(path) => fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(if all_pass { EXIT_YES } else { EXIT_NO })
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Simulate(a) => simulate(a, out),
        Command::Per(a) => per(a, out),
        Command::Classify(a) => classify(a, out),
        Command::Compile(a) => compile(a, out),
        Command::Sweep(a) => sweep_cmd(a, out),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Errors go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}
