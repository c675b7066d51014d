//! Finite Boolean automata networks under periodic update schedules.
//!
//! - [`net`]: graphs, local rules, networks and configurations.
//! - [`schedule`]: block schedules and their AND/OR case classification.
//! - [`dynamics`]: block and period updates, orbits, reachability (PER) and
//!   the bootstrap closure.
//! - [`reductions`]: monotone circuits and their compilation into AND/OR and
//!   bootstrap reachability instances.
//! - [`cli`]: text formats, random instance families and the `autnet`
//!   subcommands.

pub mod cli;
pub mod dynamics;
pub mod generate;
pub mod net;
pub mod reductions;
pub mod schedule;

pub use dynamics::{
    apply_block, bootstrap_closure, decide_per, orbit, run_period, Activation, DynamicsError, Observation, PerAnswer,
    PerInstance, PerOptions, Trajectory, WitnessTime,
};
pub use net::{eval_local_rule, validate_initial_config, Configuration, Graph, NetError, NetworkSpec, RuleKind};
pub use reductions::{
    compile_to_andor, compile_to_bootstrap, verify_reduction, Backend, MonotoneCircuit, ReductionOutput,
    VerificationReport,
};
pub use schedule::{check_nc_condition, classify_schedule, ScheduleCase, ScheduleError, UpdateSchedule};
