//! C ABI for `automata-net`.
//!
//! Networks, schedules and circuits cross the boundary as opaque handles
//! that the caller releases with the matching `*_free` function. Every
//! fallible call returns an [`AnStatus`]; on failure a description is
//! available from [`an_last_error`] until the next failing call on the same
//! thread. Configurations are byte arrays with one `0`/`1` byte per vertex.
//! Panics never unwind into C; they are reported as `AN_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use automata_net::cli::formats;
use automata_net::{
    bootstrap_closure, classify_schedule, decide_per, verify_reduction, Backend, Configuration, DynamicsError, Graph,
    MonotoneCircuit, NetworkSpec, Observation, PerInstance, PerOptions, RuleKind, ScheduleCase, UpdateSchedule,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    BoundExceeded = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnRule {
    Bootstrap = 0,
    Majority = 1,
    And = 2,
    Or = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnObservation {
    Block = 0,
    Period = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnScheduleCase {
    LongWord = 0,
    NcCondition = 1,
    Interleaved = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnBackend {
    AndOr = 0,
    Bootstrap = 1,
}

/// Answer of [`an_decide_per`]. `period` and `block` are meaningful only
/// when `reachable` is true.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnPerResult {
    pub reachable: bool,
    pub period: usize,
    pub block: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnVerifyResult {
    pub assignments_tested: usize,
    pub mismatches: usize,
    pub vertices: usize,
    pub max_degree: usize,
}

/// Opaque network handle.
pub struct AnNetwork(NetworkSpec);

/// Opaque schedule handle.
pub struct AnSchedule(UpdateSchedule);

/// Opaque circuit handle.
pub struct AnCircuit(MonotoneCircuit);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(AnStatus, String);

impl Failure {
    fn invalid(e: impl ToString) -> Self {
        Failure(AnStatus::InvalidArgument, e.to_string())
    }

    fn parse(e: impl ToString) -> Self {
        Failure(AnStatus::Parse, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, converting failures and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AnStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            AnStatus::Panic
        }
    }
}

unsafe fn slice_of<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure(AnStatus::NullPointer, format!("{what} is null")));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(AnStatus::NullPointer, format!("{what} is null")))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(AnStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::invalid(format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(AnStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn config_from_bytes(bytes: &[u8]) -> Result<Configuration, Failure> {
    let bits = bytes
        .iter()
        .map(|&b| match b {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(Failure::invalid(format!("state byte {other} is not 0 or 1"))),
        })
        .collect::<Result<Vec<bool>, _>>()?;
    Ok(Configuration::from_bools(&bits))
}

impl From<AnRule> for RuleKind {
    fn from(r: AnRule) -> Self {
        match r {
            AnRule::Bootstrap => RuleKind::Bootstrap,
            AnRule::Majority => RuleKind::SimpleMajority,
            AnRule::And => RuleKind::And,
            AnRule::Or => RuleKind::Or,
        }
    }
}

fn rule_from_u8(b: u8) -> Result<RuleKind, Failure> {
    Ok(match b {
        0 => AnRule::Bootstrap,
        1 => AnRule::Majority,
        2 => AnRule::And,
        3 => AnRule::Or,
        other => return Err(Failure::invalid(format!("rule code {other} out of range"))),
    }
    .into())
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn an_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn an_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a network on `n` vertices. `edges` holds `2 * edge_count` vertex
/// ids (pairs `u, v`); `rules` holds `n` [`AnRule`] codes.
///
/// # Safety
/// `edges` and `rules` must point to readable arrays of the stated lengths;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn an_network_new(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    rules: *const u8,
    out: *mut *mut AnNetwork,
) -> AnStatus {
    guard(|| {
        let flat = slice_of(edges, 2 * edge_count, "edges")?;
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let rules = slice_of(rules, n, "rules")?
            .iter()
            .map(|&r| rule_from_u8(r))
            .collect::<Result<Vec<_>, _>>()?;
        let graph = Graph::new(n, &pairs).map_err(Failure::invalid)?;
        let net = NetworkSpec::new(graph, rules).map_err(Failure::invalid)?;
        write_out(out, Box::into_raw(Box::new(AnNetwork(net))))
    })
}

/// # Safety
/// `net` must be null or a handle from [`an_network_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn an_network_free(net: *mut AnNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `net` must be null or a live network handle.
#[no_mangle]
pub unsafe extern "C" fn an_network_size(net: *const AnNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.n())
}

unsafe fn new_schedule(out: *mut *mut AnSchedule, s: UpdateSchedule) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(AnSchedule(s))))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn an_schedule_parallel(n: usize, out: *mut *mut AnSchedule) -> AnStatus {
    guard(|| new_schedule(out, UpdateSchedule::parallel(n).map_err(Failure::invalid)?))
}

/// One singleton block per vertex in the order given (a permutation).
///
/// # Safety
/// `order` must point to `n` readable ids; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn an_schedule_sequential(order: *const usize, n: usize, out: *mut *mut AnSchedule) -> AnStatus {
    guard(|| {
        let order = slice_of(order, n, "order")?;
        new_schedule(out, UpdateSchedule::sequential(order).map_err(Failure::invalid)?)
    })
}

/// General block word over `n` vertices: `vertices` concatenates the blocks,
/// whose sizes are given by `block_sizes[0..block_count]`.
///
/// # Safety
/// `vertices` must hold the sum of `block_sizes` ids; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn an_schedule_blocks(
    n: usize,
    vertices: *const usize,
    block_sizes: *const usize,
    block_count: usize,
    out: *mut *mut AnSchedule,
) -> AnStatus {
    guard(|| {
        let sizes = slice_of(block_sizes, block_count, "block_sizes")?;
        let total = sizes.iter().try_fold(0usize, |a, &s| a.checked_add(s));
        let total = total.ok_or_else(|| Failure::invalid("block sizes overflow"))?;
        let flat = slice_of(vertices, total, "vertices")?;
        let mut blocks = Vec::with_capacity(block_count);
        let mut at = 0;
        for &s in sizes {
            blocks.push(flat[at..at + s].to_vec());
            at += s;
        }
        new_schedule(out, UpdateSchedule::new(n, blocks).map_err(Failure::invalid)?)
    })
}

/// Parses the schedule text format for `n` vertices.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn an_schedule_parse(text: *const c_char, n: usize, out: *mut *mut AnSchedule) -> AnStatus {
    guard(|| {
        let s = formats::parse_schedule(c_str(text, "text")?, n).map_err(Failure::parse)?;
        new_schedule(out, s)
    })
}

/// # Safety
/// `s` must be null or a schedule handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn an_schedule_free(s: *mut AnSchedule) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Decides whether `target` is ever active. `max_periods == 0` selects the
/// default bound.
///
/// # Safety
/// Handles must be live; `initial` must point to `n` bytes; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn an_decide_per(
    net: *const AnNetwork,
    schedule: *const AnSchedule,
    initial: *const u8,
    target: usize,
    observe: AnObservation,
    max_periods: usize,
    enforce_or_only: bool,
    out: *mut AnPerResult,
) -> AnStatus {
    guard(|| {
        let net = &handle(net, "network")?.0;
        let schedule = &handle(schedule, "schedule")?.0;
        let init = config_from_bytes(slice_of(initial, net.n(), "initial")?)?;
        let inst =
            PerInstance::new(net.clone(), schedule.clone(), init, target, enforce_or_only).map_err(Failure::invalid)?;
        let options = PerOptions {
            max_periods: (max_periods > 0).then_some(max_periods),
            observe: match observe {
                AnObservation::Block => Observation::Block,
                AnObservation::Period => Observation::Period,
            },
            bootstrap_fast_path: true,
        };
        let answer = decide_per(&inst, &options).map_err(|e| match e {
            DynamicsError::BoundExceeded { .. } => Failure(AnStatus::BoundExceeded, e.to_string()),
            other => Failure::invalid(other),
        })?;
        let w = answer.witness_time;
        write_out(
            out,
            AnPerResult {
                reachable: answer.reachable,
                period: w.map_or(0, |w| w.period),
                block: w.map_or(0, |w| w.block),
            },
        )
    })
}

/// Bootstrap closure of `initial` on the network's graph (rules ignored),
/// written as `n` bytes to `out`.
///
/// # Safety
/// `initial` and `out` must each point to `n` bytes.
#[no_mangle]
pub unsafe extern "C" fn an_bootstrap_closure(net: *const AnNetwork, initial: *const u8, out: *mut u8) -> AnStatus {
    guard(|| {
        let net = &handle(net, "network")?.0;
        let init = config_from_bytes(slice_of(initial, net.n(), "initial")?)?;
        if out.is_null() {
            return Err(Failure(AnStatus::NullPointer, "output pointer is null".into()));
        }
        let closure = bootstrap_closure(net.graph(), &init);
        for (i, b) in closure.to_bools().into_iter().enumerate() {
            out.add(i).write(b as u8);
        }
        Ok(())
    })
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn an_classify_schedule(
    net: *const AnNetwork,
    schedule: *const AnSchedule,
    out: *mut AnScheduleCase,
) -> AnStatus {
    guard(|| {
        let case = classify_schedule(&handle(net, "network")?.0, &handle(schedule, "schedule")?.0)
            .map_err(Failure::invalid)?;
        write_out(
            out,
            match case {
                ScheduleCase::LongWord => AnScheduleCase::LongWord,
                ScheduleCase::NcCondition => AnScheduleCase::NcCondition,
                ScheduleCase::Interleaved => AnScheduleCase::Interleaved,
            },
        )
    })
}

/// Parses a circuit netlist.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn an_circuit_parse(text: *const c_char, out: *mut *mut AnCircuit) -> AnStatus {
    guard(|| {
        let c = formats::parse_circuit(c_str(text, "text")?).map_err(Failure::parse)?;
        write_out(out, Box::into_raw(Box::new(AnCircuit(c))))
    })
}

/// # Safety
/// `c` must be null or a circuit handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn an_circuit_free(c: *mut AnCircuit) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of circuit inputs, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn an_circuit_input_count(c: *const AnCircuit) -> usize {
    c.as_ref().map_or(0, |c| c.0.inputs().len())
}

/// Compiles the circuit and checks every input assignment.
///
/// # Safety
/// `c` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn an_verify_reduction(
    c: *const AnCircuit,
    backend: AnBackend,
    exhaustion_bound: usize,
    out: *mut AnVerifyResult,
) -> AnStatus {
    guard(|| {
        let c = &handle(c, "circuit")?.0;
        let backend = match backend {
            AnBackend::AndOr => Backend::AndOr,
            AnBackend::Bootstrap => Backend::Bootstrap,
        };
        let r = verify_reduction(c, backend, exhaustion_bound).map_err(Failure::invalid)?;
        write_out(
            out,
            AnVerifyResult {
                assignments_tested: r.assignments_tested,
                mismatches: r.mismatches.len(),
                vertices: r.vertices,
                max_degree: r.max_degree,
            },
        )
    })
}
