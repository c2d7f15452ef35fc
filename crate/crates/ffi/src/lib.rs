//! C ABI for the red-blue counting toolkit.
//!
//! Everything crosses the boundary through opaque handles ([`RbGraph`],
//! [`RbPattern`]) and integer status codes ([`RbStatus`]); strings returned
//! by the library must be released with [`rb_string_free`]. Counts are
//! reported as `u64` and `RB_STATUS_OVERFLOW` is returned when a value does
//! not fit. Every entry point catches panics, so the library never unwinds
//! into the caller.
//!
//! The matching C header is generated by `cbindgen` into `include/redblue.h`
//! at build time.
//!
//! Safety contract, shared by every function here: handle and out-pointer
//! arguments must be either null or valid for their access; strings must be
//! NUL-terminated; handles must come from this library and be freed exactly
//! once with their matching `_free`. Null pointers are reported as
//! `RB_STATUS_NULL_POINTER`, never dereferenced.
#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use redblue::formulas::FormulaParams;
use redblue::graph::{self, Colour, ColouredCompleteGraph};
use redblue::pattern::PatternGraph;
use redblue::{counting, formulas, relaxation, search};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RbStatus {
    Ok = 0,
    InvalidArgument = 1,
    ParseError = 2,
    CapExceeded = 3,
    Overflow = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

impl From<&redblue::Error> for RbStatus {
    fn from(e: &redblue::Error) -> Self {
        match e {
            redblue::Error::InvalidArgument(_) => RbStatus::InvalidArgument,
            redblue::Error::Parse(_) => RbStatus::ParseError,
            redblue::Error::CapExceeded(_) => RbStatus::CapExceeded,
            redblue::Error::Overflow(_) => RbStatus::Overflow,
        }
    }
}

/// Opaque red-blue complete graph handle.
pub struct RbGraph(ColouredCompleteGraph);

/// Opaque pattern handle.
pub struct RbPattern(PatternGraph);

/// Edge colour constant: red.
pub const RB_COLOUR_RED: i32 = 0;
/// Edge colour constant: blue.
pub const RB_COLOUR_BLUE: i32 = 1;

fn colour_of(raw: i32) -> Option<Colour> {
    match raw {
        RB_COLOUR_RED => Some(Colour::Red),
        RB_COLOUR_BLUE => Some(Colour::Blue),
        _ => None,
    }
}

fn guard(f: impl FnOnce() -> RbStatus) -> RbStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(RbStatus::Panic)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> RbStatus {
    if out.is_null() {
        return RbStatus::NullPointer;
    }
    unsafe { out.write(value) };
    RbStatus::Ok
}

unsafe fn graph_result(
    out: *mut *mut RbGraph,
    r: redblue::Result<ColouredCompleteGraph>,
) -> RbStatus {
    match r {
        Ok(g) => unsafe { write_out(out, Box::into_raw(Box::new(RbGraph(g)))) },
        Err(e) => RbStatus::from(&e),
    }
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Result<&'a str, RbStatus> {
    if ptr.is_null() {
        return Err(RbStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| RbStatus::InvalidUtf8)
}

// ---------------------------------------------------------------------------
// Graph construction and lifecycle
// ---------------------------------------------------------------------------

/// Builds the partitioned graph: the `bip_colour` class is `K_{a, n−a}`.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_partitioned(
    n: usize,
    a: usize,
    bip_colour: i32,
    out: *mut *mut RbGraph,
) -> RbStatus {
    guard(|| {
        let Some(c) = colour_of(bip_colour) else {
            return RbStatus::InvalidArgument;
        };
        unsafe { graph_result(out, graph::construct_partitioned(n, a, c)) }
    })
}

/// Builds the graph whose red edges form the balanced complete
/// `parts`-partite graph.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_turan_red(
    n: usize,
    parts: usize,
    out: *mut *mut RbGraph,
) -> RbStatus {
    guard(|| unsafe { graph_result(out, graph::construct_turan_red(n, parts)) })
}

/// Builds the seeded binomial graph: each pair is red with probability
/// `sigma`, reproducibly for a given seed.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_quasirandom(
    n: usize,
    sigma: f64,
    seed: u64,
    out: *mut *mut RbGraph,
) -> RbStatus {
    guard(|| unsafe { graph_result(out, graph::construct_quasirandom(n, sigma, seed)) })
}

/// Parses the two-line text format (`n`, then the `R`/`B` pair string).
#[no_mangle]
pub unsafe extern "C" fn rb_graph_parse(text: *const c_char, out: *mut *mut RbGraph) -> RbStatus {
    guard(|| {
        let s = match unsafe { cstr(text) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        unsafe { graph_result(out, ColouredCompleteGraph::from_str(s)) }
    })
}

/// Serialises a graph into the two-line text format. The returned string
/// must be released with [`rb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rb_graph_to_text(g: *const RbGraph, out: *mut *mut c_char) -> RbStatus {
    guard(|| {
        if g.is_null() {
            return RbStatus::NullPointer;
        }
        let text = unsafe { &(*g).0 }.to_string();
        let c = CString::new(text).expect("no interior NUL in graph text");
        unsafe { write_out(out, c.into_raw()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn rb_graph_free(g: *mut RbGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

#[no_mangle]
pub unsafe extern "C" fn rb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Vertex count of a graph; zero for a null handle.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_n(g: *const RbGraph) -> usize {
    if g.is_null() {
        0
    } else {
        unsafe { &(*g).0 }.n()
    }
}

/// New graph with the two colours exchanged.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_swap_colours(
    g: *const RbGraph,
    out: *mut *mut RbGraph,
) -> RbStatus {
    guard(|| {
        if g.is_null() {
            return RbStatus::NullPointer;
        }
        unsafe { graph_result(out, Ok((*g).0.swap_colours())) }
    })
}

/// New graph with the colour of one pair toggled.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_flip_edge(
    g: *const RbGraph,
    x: usize,
    y: usize,
    out: *mut *mut RbGraph,
) -> RbStatus {
    guard(|| {
        if g.is_null() {
            return RbStatus::NullPointer;
        }
        unsafe { graph_result(out, (*g).0.flip_edge(x, y)) }
    })
}

/// Balance deviation `ε` and quasirandomness (`σ`, score) of a graph.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_assess(
    g: *const RbGraph,
    out_balance_epsilon: *mut f64,
    out_sigma: *mut f64,
    out_quasirandom_score: *mut f64,
) -> RbStatus {
    guard(|| {
        if g.is_null() {
            return RbStatus::NullPointer;
        }
        let graph = unsafe { &(*g).0 };
        let bal = graph::assess_balance(graph);
        let qa = graph::assess_quasirandomness(graph);
        let mut st = unsafe { write_out(out_balance_epsilon, bal.epsilon) };
        if st == RbStatus::Ok {
            st = unsafe { write_out(out_sigma, qa.sigma) };
        }
        if st == RbStatus::Ok {
            st = unsafe { write_out(out_quasirandom_score, qa.score) };
        }
        st
    })
}

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

/// Looks up a named pattern (`rbrb_c4`, `rrbb_c4`, `rrrb_c4`, `ccext`,
/// `rrbbext_a`, `rrbbext_b`, `ccextt`, `rbr_path`, `alt_cycle_<len>`).
#[no_mangle]
pub unsafe extern "C" fn rb_pattern_named(
    name: *const c_char,
    out: *mut *mut RbPattern,
) -> RbStatus {
    guard(|| {
        let s = match unsafe { cstr(name) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        match redblue::pattern::named_pattern(s) {
            Ok(p) => unsafe { write_out(out, Box::into_raw(Box::new(RbPattern(p)))) },
            Err(e) => RbStatus::from(&e),
        }
    })
}

/// Parses the literal 1-based edge list `"1-2:R,2-3:B"`.
#[no_mangle]
pub unsafe extern "C" fn rb_pattern_from_edges(
    spec: *const c_char,
    out: *mut *mut RbPattern,
) -> RbStatus {
    guard(|| {
        let s = match unsafe { cstr(spec) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        match redblue::pattern::parse_edge_list(s) {
            Ok(p) => unsafe { write_out(out, Box::into_raw(Box::new(RbPattern(p)))) },
            Err(e) => RbStatus::from(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn rb_pattern_free(p: *mut RbPattern) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Pattern with every edge colour swapped.
#[no_mangle]
pub unsafe extern "C" fn rb_pattern_swap_colours(
    p: *const RbPattern,
    out: *mut *mut RbPattern,
) -> RbStatus {
    guard(|| {
        if p.is_null() {
            return RbStatus::NullPointer;
        }
        let swapped = unsafe { &(*p).0 }.swap_colours();
        unsafe { write_out(out, Box::into_raw(Box::new(RbPattern(swapped)))) }
    })
}

/// Order of the colour-preserving automorphism group.
#[no_mangle]
pub unsafe extern "C" fn rb_pattern_aut_count(p: *const RbPattern, out: *mut u64) -> RbStatus {
    guard(|| {
        if p.is_null() {
            return RbStatus::NullPointer;
        }
        unsafe { write_out(out, (*p).0.aut_count()) }
    })
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

fn clamp_u64(v: u128, out: *mut u64) -> RbStatus {
    if v > u64::MAX as u128 {
        return RbStatus::Overflow;
    }
    unsafe { write_out(out, v as u64) }
}

/// Copies of a pattern in a graph (specialised counter when one applies).
#[no_mangle]
pub unsafe extern "C" fn rb_count_copies(
    p: *const RbPattern,
    g: *const RbGraph,
    out: *mut u64,
) -> RbStatus {
    guard(|| {
        if p.is_null() || g.is_null() {
            return RbStatus::NullPointer;
        }
        let v = counting::count_copies_dispatch(unsafe { &(*p).0 }, unsafe { &(*g).0 });
        clamp_u64(v, out)
    })
}

/// Injective embeddings of a pattern in a graph.
#[no_mangle]
pub unsafe extern "C" fn rb_count_embeddings(
    p: *const RbPattern,
    g: *const RbGraph,
    out: *mut u64,
) -> RbStatus {
    guard(|| {
        if p.is_null() || g.is_null() {
            return RbStatus::NullPointer;
        }
        clamp_u64(
            counting::count_embeddings(unsafe { &(*p).0 }, unsafe { &(*g).0 }),
            out,
        )
    })
}

/// Unlabelled alternating cycles on `len` edges.
#[no_mangle]
pub unsafe extern "C" fn rb_count_alternating_cycles(
    g: *const RbGraph,
    len: usize,
    out: *mut u64,
) -> RbStatus {
    guard(|| {
        if g.is_null() {
            return RbStatus::NullPointer;
        }
        match counting::count_alternating_cycles(unsafe { &(*g).0 }, len) {
            Ok(v) => clamp_u64(v, out),
            Err(e) => RbStatus::from(&e),
        }
    })
}

/// Alternating walks of length `t`.
#[no_mangle]
pub unsafe extern "C" fn rb_count_alternating_walks(
    g: *const RbGraph,
    t: usize,
    out: *mut u64,
) -> RbStatus {
    guard(|| {
        if g.is_null() {
            return RbStatus::NullPointer;
        }
        match counting::walk_profile(unsafe { &(*g).0 }, t) {
            Ok(p) => clamp_u64(p.totals[t], out),
            Err(e) => RbStatus::from(&e),
        }
    })
}

/// Both sides of the triangle/path identity; they are always equal.
#[no_mangle]
pub unsafe extern "C" fn rb_goodman_identity(
    g: *const RbGraph,
    out_lhs: *mut u64,
    out_rhs: *mut u64,
) -> RbStatus {
    guard(|| {
        if g.is_null() {
            return RbStatus::NullPointer;
        }
        let (l, r) = counting::goodman_identity_check(unsafe { &(*g).0 });
        let st = clamp_u64(l, out_lhs);
        if st != RbStatus::Ok {
            return st;
        }
        clamp_u64(r, out_rhs)
    })
}

// ---------------------------------------------------------------------------
// Formulas, search, relaxation
// ---------------------------------------------------------------------------

/// Evaluates a named closed-form formula (see the library's formula
/// registry) with the parameters it needs; unused parameters are ignored.
#[no_mangle]
pub unsafe extern "C" fn rb_formula_eval(
    name: *const c_char,
    n: u64,
    t: u32,
    a: u64,
    sigma: f64,
    epsilon: f64,
    out: *mut f64,
) -> RbStatus {
    guard(|| {
        let s = match unsafe { cstr(name) } {
            Ok(s) => s,
            Err(st) => return st,
        };
        let params = FormulaParams {
            n: Some(n as u128),
            t: Some(t),
            a: Some(a as u128),
            sigma: Some(sigma),
            epsilon: Some(epsilon),
            row: None,
        };
        match formulas::evaluate(s, &params) {
            Ok(v) => unsafe { write_out(out, v.float) },
            Err(e) => RbStatus::from(&e),
        }
    })
}

/// Exact `max(H, n)` by isomorph-free exhaustive search (`n ≤ 9`).
#[no_mangle]
pub unsafe extern "C" fn rb_brute_force_max(
    p: *const RbPattern,
    n: usize,
    out_value: *mut u64,
    out_extremal_count: *mut u64,
) -> RbStatus {
    guard(|| {
        if p.is_null() {
            return RbStatus::NullPointer;
        }
        match search::brute_force_max(unsafe { &(*p).0 }, n) {
            Ok(r) => {
                let st = clamp_u64(r.max_value, out_value);
                if st != RbStatus::Ok {
                    return st;
                }
                if out_extremal_count.is_null() {
                    RbStatus::Ok
                } else {
                    unsafe { write_out(out_extremal_count, r.extremal.len() as u64) }
                }
            }
            Err(e) => RbStatus::from(&e),
        }
    })
}

/// Best value found by seeded edge-flip local search (a lower bound on
/// `max(H, n)`).
#[no_mangle]
pub unsafe extern "C" fn rb_local_search_max(
    p: *const RbPattern,
    n: usize,
    seed: u64,
    restarts: u32,
    out_value: *mut u64,
) -> RbStatus {
    guard(|| {
        if p.is_null() {
            return RbStatus::NullPointer;
        }
        match search::local_search_max(unsafe { &(*p).0 }, n, seed, restarts) {
            Ok(r) => clamp_u64(r.max_value, out_value),
            Err(e) => RbStatus::from(&e),
        }
    })
}

/// Canonical-pattern score `p_H(α, β)`.
#[no_mangle]
pub unsafe extern "C" fn rb_canonical_score(
    p: *const RbPattern,
    alpha: f64,
    beta: f64,
    out: *mut f64,
) -> RbStatus {
    guard(|| {
        if p.is_null() {
            return RbStatus::NullPointer;
        }
        let v = relaxation::canonical_score(unsafe { &(*p).0 }, alpha, beta);
        unsafe { write_out(out, v) }
    })
}

/// Runs the acceptance battery; `out_failed` receives the number of failed
/// criteria.
#[no_mangle]
pub unsafe extern "C" fn rb_acceptance_run(out_failed: *mut u32) -> RbStatus {
    guard(|| {
        let failed = redblue::acceptance::run_all()
            .iter()
            .filter(|r| !r.passed)
            .count();
        unsafe { write_out(out_failed, failed as u32) }
    })
}
