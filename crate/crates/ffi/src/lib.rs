//! C ABI for the tempograph library.
//!
//! Conventions: every fallible entry point returns a [`TgStatus`] and writes
//! its result through out-pointers; graphs and bridges solutions are opaque
//! handles created and released by `tg_*_free`; a thread-local message for
//! the most recent failure is available via [`tg_last_error_message`]. All
//! entry points catch panics and report them as `TG_STATUS_INTERNAL_PANIC`
//! instead of unwinding across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use tempograph::bridges::{bridges_greedy, bridges_oracle, BridgesSolution};
use tempograph::error::Error;
use tempograph::estimators::{estimate_md_td, estimate_path_count};
use tempograph::extend_try::extend_try_experiment;
use tempograph::formulas;
use tempograph::graph::{Journey, TemporalGraph, TimeEdge};
use tempograph::io;
use tempograph::sampling::{make_clique, make_path, make_star, sample_labeling, SampleSpec};

/// Result of a tempograph call. `Ok` is zero; everything else is a failure
/// and leaves a description in `tg_last_error_message`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    ScaleError = 4,
    IoError = 5,
    Utf8Error = 6,
    InternalPanic = 7,
}

/// Graph family selector for `tg_graph_sample`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TgFamily {
    Clique = 0,
    Star = 1,
    Path = 2,
}

/// Opaque temporal graph handle.
pub struct TgGraph(TemporalGraph);

/// Opaque bridges-solution handle.
pub struct TgBridges(BridgesSolution);

/// One time edge `(u, v, label)` crossed from `u` to `v`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TgTimeEdge {
    pub u: usize,
    pub v: usize,
    pub label: u32,
}

/// Distances for one ordered vertex pair. When `reachable` is false,
/// `delta_prime` is meaningless (set to 0) and `delta` equals the graph's
/// slow arrival time.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TgDistance {
    pub reachable: bool,
    pub delta_prime: u64,
    pub delta: f64,
}

/// Star closed form and its components.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TgStarMd {
    pub value: f64,
    pub cond_exp: f64,
    pub p_fail: f64,
}

/// Derived extend-try parameters.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TgExtendTryParams {
    pub n: u64,
    pub c1: f64,
    pub r: f64,
    pub k: f64,
    pub t0: f64,
    pub success_bound: f64,
    pub window_reachable: bool,
    pub small_params_warning: bool,
    pub max_hops: u64,
}

/// Aggregate of an extend-try experiment.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TgExtendTryReport {
    pub n: u64,
    pub c1: f64,
    pub r: f64,
    pub k: f64,
    pub t0: f64,
    pub success_bound: f64,
    pub window_reachable: bool,
    pub small_params_warning: bool,
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub stderr: f64,
    pub failures_no_extension: u64,
    pub failures_window_exhausted: u64,
    pub failures_window_unreachable: u64,
    pub seed: u64,
}

/// A Monte Carlo estimate. `argmax_source`/`argmax_target` are meaningful
/// only when `has_argmax` is set (MD estimates).
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TgEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub has_argmax: bool,
    pub argmax_source: usize,
    pub argmax_target: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_for(err: &Error) -> TgStatus {
    match err {
        Error::InvalidInput(_) | Error::InvalidVertex { .. } => TgStatus::InvalidArgument,
        Error::Parse { .. } => TgStatus::ParseError,
        Error::ScaleGuard(_) => TgStatus::ScaleError,
        Error::Io { .. } => TgStatus::IoError,
    }
}

fn fail(err: &Error) -> TgStatus {
    set_error(&err.to_string());
    status_for(err)
}

/// Runs `body`, converting panics into `InternalPanic`.
fn guarded(body: impl FnOnce() -> TgStatus) -> TgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(&msg);
            TgStatus::InternalPanic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, TgStatus> {
    if ptr.is_null() {
        set_error("null string pointer");
        return Err(TgStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|e| {
        set_error(&format!("invalid utf-8: {e}"));
        TgStatus::Utf8Error
    })
}

fn require<'a, T>(ptr: *const T) -> Result<&'a T, TgStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(TgStatus::NullPointer);
    }
    Ok(unsafe { &*ptr })
}

fn require_out<'a, T>(ptr: *mut T) -> Result<&'a mut T, TgStatus> {
    if ptr.is_null() {
        set_error("null out pointer");
        return Err(TgStatus::NullPointer);
    }
    Ok(unsafe { &mut *ptr })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for this thread's most recent failure. Valid until the next
/// failing call on the same thread; never NULL.
#[no_mangle]
pub extern "C" fn tg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses a graph from tgraph-format text into a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_parse(text: *const c_char, out: *mut *mut TgGraph) -> TgStatus {
    guarded(|| {
        let out = match require_out(out) {
            Ok(o) => o,
            Err(s) => return s,
        };
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match io::parse(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(TgGraph(g)));
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Loads a graph from a tgraph file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_load(path: *const c_char, out: *mut *mut TgGraph) -> TgStatus {
    guarded(|| {
        let out = match require_out(out) {
            Ok(o) => o,
            Err(s) => return s,
        };
        let path = match read_str(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match io::load(Path::new(path)) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(TgGraph(g)));
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Writes a graph to a file in canonical tgraph form.
///
/// # Safety
/// `graph` must be a live handle and `path` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_save(graph: *const TgGraph, path: *const c_char) -> TgStatus {
    guarded(|| {
        let graph = match require(graph) {
            Ok(g) => g,
            Err(s) => return s,
        };
        let path = match read_str(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match io::save(&graph.0, Path::new(path)) {
            Ok(()) => TgStatus::Ok,
            Err(e) => fail(&e),
        }
    })
}

/// Samples one uniform labeling of a graph family into a new handle.
/// `n` counts vertices (the star center is vertex 0; path vertices are in
/// line order); labels are drawn from `{1..=a}` and `nprime` is the slow
/// arrival time of the resulting graph.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_sample(
    family: TgFamily,
    n: usize,
    a: u32,
    nprime: f64,
    seed: u64,
    sample_index: u64,
    out: *mut *mut TgGraph,
) -> TgStatus {
    guarded(|| {
        let out = match require_out(out) {
            Ok(o) => o,
            Err(s) => return s,
        };
        let base = match family {
            TgFamily::Clique if n >= 1 => make_clique(n),
            TgFamily::Star if n >= 2 => make_star(n - 1),
            TgFamily::Path if n >= 2 => make_path(n - 1),
            _ => {
                set_error("family needs at least 2 vertices (1 for cliques)");
                return TgStatus::InvalidArgument;
            }
        };
        let spec = SampleSpec::uniform(base, a, nprime, seed).with_sample_index(sample_index);
        match sample_labeling(&spec) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(TgGraph(g)));
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a graph handle. NULL is a no-op.
///
/// # Safety
/// `graph` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_graph_free(graph: *mut TgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices; 0 for NULL.
#[no_mangle]
pub extern "C" fn tg_graph_num_vertices(graph: *const TgGraph) -> usize {
    require(graph).map_or(0, |g| g.0.num_vertices())
}

/// Number of edges; 0 for NULL.
#[no_mangle]
pub extern "C" fn tg_graph_num_edges(graph: *const TgGraph) -> usize {
    require(graph).map_or(0, |g| g.0.num_edges())
}

/// Largest assignable label `a`; 0 for NULL.
#[no_mangle]
pub extern "C" fn tg_graph_max_label(graph: *const TgGraph) -> u32 {
    require(graph).map_or(0, |g| g.0.max_label())
}

/// Slow-journey arrival time `n'`; NaN for NULL.
#[no_mangle]
pub extern "C" fn tg_graph_slow_arrival(graph: *const TgGraph) -> f64 {
    require(graph).map_or(f64::NAN, |g| g.0.slow_arrival())
}

/// Foremost-journey distances from `source` to `target`.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_distance(
    graph: *const TgGraph,
    source: usize,
    target: usize,
    out: *mut TgDistance,
) -> TgStatus {
    guarded(|| {
        let (graph, out) = match (require(graph), require_out(out)) {
            (Ok(g), Ok(o)) => (g, o),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match graph.0.foremost_journey(source, target) {
            Ok(report) => {
                *out = TgDistance {
                    reachable: report.delta_prime.is_some(),
                    delta_prime: report.delta_prime.unwrap_or(0) as u64,
                    delta: report.delta,
                };
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// True iff the given time-edge sequence is a valid journey of the graph.
///
/// # Safety
/// `graph` must be a live handle; `edges` must point to `len` readable
/// elements (may be NULL when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn tg_journey_is_valid(
    graph: *const TgGraph,
    edges: *const TgTimeEdge,
    len: usize,
) -> bool {
    let Ok(graph) = require(graph) else {
        return false;
    };
    if len > 0 && edges.is_null() {
        set_error("null edges pointer with nonzero length");
        return false;
    }
    let slice = if len == 0 {
        &[][..]
    } else {
        std::slice::from_raw_parts(edges, len)
    };
    let journey = Journey::new(
        slice
            .iter()
            .map(|e| TimeEdge::new(e.u, e.v, e.label))
            .collect(),
    );
    graph.0.validate_journey(&journey)
}

/// `n! / (n-1)^(n-1)` evaluated in log space.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_expected_paths_full(n: u64, out: *mut f64) -> TgStatus {
    guarded(|| {
        let out = match require_out(out) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match formulas::expected_paths_full(n) {
            Ok(v) => {
                *out = v;
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Probability that `k` uniform labels from `{1..=a}` strictly increase.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_phi(k: u64, a: u64, out: *mut f64) -> TgStatus {
    guarded(|| {
        let out = match require_out(out) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match formulas::phi(k, a) {
            Ok(v) => {
                *out = v;
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Expected number of length-`k` journeys in the uniform random temporal
/// clique, plus the large-`a` approximation.
///
/// # Safety
/// `out_value` and `out_large_a` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn tg_expected_paths(
    n: u64,
    k: u64,
    a: u64,
    out_value: *mut f64,
    out_large_a: *mut f64,
) -> TgStatus {
    guarded(|| {
        let (out_value, out_large_a) = match (require_out(out_value), require_out(out_large_a)) {
            (Ok(v), Ok(l)) => (v, l),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match formulas::expected_paths(&formulas::PathCountQuery { n, k, a }) {
            Ok(v) => {
                *out_value = v.value;
                *out_large_a = v.large_a_approx;
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Star closed form `(a-1)(a+1)(a+2)/(6a^2) + n'(a+1)/(2a)` with its
/// components.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_star_md(a: u64, nprime: f64, out: *mut TgStarMd) -> TgStatus {
    guarded(|| {
        let out = match require_out(out) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match formulas::star_md(a, nprime) {
            Ok(s) => {
                *out = TgStarMd {
                    value: s.value,
                    cond_exp: s.cond_exp,
                    p_fail: s.p_fail,
                };
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Derived extend-try parameters for the normalized clique K_n.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_extend_try_params(
    n: u64,
    c1: f64,
    r: f64,
    out: *mut TgExtendTryParams,
) -> TgStatus {
    guarded(|| {
        let out = match require_out(out) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match formulas::extend_try_params(n, c1, r) {
            Ok(p) => {
                *out = TgExtendTryParams {
                    n: p.n,
                    c1: p.c1,
                    r: p.r,
                    k: p.k,
                    t0: p.t0,
                    success_bound: p.success_bound,
                    window_reachable: p.window_reachable(),
                    small_params_warning: p.small_params_warning,
                    max_hops: p.max_hops(),
                };
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Seeded extend-try experiment on sampled normalized cliques (s = 0, t = 1).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_extend_try_experiment(
    n: u64,
    c1: f64,
    r: f64,
    trials: u64,
    seed: u64,
    out: *mut TgExtendTryReport,
) -> TgStatus {
    guarded(|| {
        let out = match require_out(out) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match extend_try_experiment(n, c1, r, trials, seed) {
            Ok(rep) => {
                *out = TgExtendTryReport {
                    n: rep.n,
                    c1: rep.c1,
                    r: rep.r,
                    k: rep.k,
                    t0: rep.t0,
                    success_bound: rep.success_bound,
                    window_reachable: rep.window_reachable,
                    small_params_warning: rep.small_params_warning,
                    trials: rep.trials,
                    successes: rep.successes,
                    success_rate: rep.success_rate,
                    stderr: rep.stderr,
                    failures_no_extension: rep.failures_no_extension,
                    failures_window_exhausted: rep.failures_window_exhausted,
                    failures_window_unreachable: rep.failures_window_unreachable,
                    seed: rep.seed,
                };
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

fn family_base(family: TgFamily, n: usize) -> Result<tempograph::sampling::BaseGraph, TgStatus> {
    match family {
        TgFamily::Clique if n >= 1 => Ok(make_clique(n)),
        TgFamily::Star if n >= 2 => Ok(make_star(n - 1)),
        TgFamily::Path if n >= 2 => Ok(make_path(n - 1)),
        _ => {
            set_error("family needs at least 2 vertices (1 for cliques)");
            Err(TgStatus::InvalidArgument)
        }
    }
}

#[allow(clippy::too_many_arguments)]
unsafe fn estimate_into(
    family: TgFamily,
    n: usize,
    a: u32,
    nprime: f64,
    samples: u64,
    seed: u64,
    want_md: bool,
    out: *mut TgEstimate,
) -> TgStatus {
    let out = match require_out(out) {
        Ok(o) => o,
        Err(s) => return s,
    };
    let base = match family_base(family, n) {
        Ok(b) => b,
        Err(s) => return s,
    };
    match estimate_md_td(&base, a, nprime, samples, seed) {
        Ok((md, td)) => {
            let rep = if want_md { md } else { td };
            let (has_argmax, s, t) = match rep.argmax_pair {
                Some((s, t)) => (true, s, t),
                None => (false, 0, 0),
            };
            *out = TgEstimate {
                mean: rep.mean,
                stderr: rep.stderr,
                samples: rep.samples,
                seed: rep.seed,
                has_argmax,
                argmax_source: s,
                argmax_target: t,
            };
            TgStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Monte Carlo maximum expected temporal distance of a family.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_estimate_md(
    family: TgFamily,
    n: usize,
    a: u32,
    nprime: f64,
    samples: u64,
    seed: u64,
    out: *mut TgEstimate,
) -> TgStatus {
    guarded(|| estimate_into(family, n, a, nprime, samples, seed, true, out))
}

/// Monte Carlo temporal diameter of a family.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_estimate_td(
    family: TgFamily,
    n: usize,
    a: u32,
    nprime: f64,
    samples: u64,
    seed: u64,
    out: *mut TgEstimate,
) -> TgStatus {
    guarded(|| estimate_into(family, n, a, nprime, samples, seed, false, out))
}

/// Monte Carlo expected journey count of length `k` in K_n (n <= 8).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_estimate_path_count(
    n: usize,
    k: usize,
    a: u32,
    samples: u64,
    seed: u64,
    out: *mut TgEstimate,
) -> TgStatus {
    guarded(|| {
        let out = match require_out(out) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match estimate_path_count(n, k, a, samples, seed) {
            Ok(rep) => {
                *out = TgEstimate {
                    mean: rep.mean,
                    stderr: rep.stderr,
                    samples: rep.samples,
                    seed: rep.seed,
                    has_argmax: false,
                    argmax_source: 0,
                    argmax_target: 0,
                };
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Solves the bridges problem for `n` people into a new handle.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_bridges_solve(n: u64, out: *mut *mut TgBridges) -> TgStatus {
    guarded(|| {
        let out = match require_out(out) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match bridges_greedy(n) {
            Ok(sol) => {
                *out = Box::into_raw(Box::new(TgBridges(sol)));
                TgStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a bridges handle. NULL is a no-op.
///
/// # Safety
/// `solution` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tg_bridges_free(solution: *mut TgBridges) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// Maximum cost paid on any nonempty bridge; 0 for NULL.
#[no_mangle]
pub extern "C" fn tg_bridges_max_cost(solution: *const TgBridges) -> u64 {
    require(solution).map_or(0, |s| s.0.max_cost)
}

/// Closed-form optimum stored in the solution; 0 for NULL.
#[no_mangle]
pub extern "C" fn tg_bridges_opt_formula(solution: *const TgBridges) -> u64 {
    require(solution).map_or(0, |s| s.0.opt_formula)
}

/// Number of bridges (equal to the number of people); 0 for NULL.
#[no_mangle]
pub extern "C" fn tg_bridges_len(solution: *const TgBridges) -> usize {
    require(solution).map_or(0, |s| s.0.contents.len())
}

/// People on bridge `index` (0-based); 0 when out of range or NULL.
#[no_mangle]
pub extern "C" fn tg_bridges_content(solution: *const TgBridges, index: usize) -> u64 {
    require(solution).map_or(0, |s| s.0.contents.get(index).copied().unwrap_or(0))
}

/// Cost of bridge `index` (0-based; 0 for empty bridges, out of range, or
/// NULL).
#[no_mangle]
pub extern "C" fn tg_bridges_cost(solution: *const TgBridges, index: usize) -> u64 {
    require(solution).map_or(0, |s| s.0.costs.get(index).copied().unwrap_or(0))
}

/// Feasibility-oracle optimum for `n` people; 0 for `n = 0`.
#[no_mangle]
pub extern "C" fn tg_bridges_oracle(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    bridges_oracle(n)
}

/// Closed form `ceil(sqrt(2n) + 1/2)`; 0 for `n = 0`.
#[no_mangle]
pub extern "C" fn tg_bridges_opt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    formulas::bridges_opt_formula(n)
}
