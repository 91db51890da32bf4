//! C interface over the polytope engine.
//!
//! Objects are opaque handles released with their `_free` function. Every
//! call returns a [`ChStatus`]; on failure the message is available from
//! [`ch_last_error_message`] on the same thread until the next call. Strings
//! returned through `out` parameters are owned by the caller and released
//! with [`ch_string_free`].
//!
//! Pointer contract for every function: handles are NULL or live and not yet
//! freed; `out` pointers are writable for the documented number of elements;
//! strings are NUL-terminated UTF-8.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chemhull::edgetype::{Point3, ValidPair};
use chemhull::graph::{profile_of, ChemGraph};
use chemhull::hull::{point_location, Location, Polytope};
use chemhull::index::{optimize, parse_index_formula, preset, IndexError, IndexSpec, Sense};
use chemhull::realizer::{realize, RealizeBudget, RealizeError, Unrealized};
use chemhull::views::{catalog_polytope, GraphView, OptimizationView, PointView, PolytopeView};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChStatus {
    Ok = 0,
    InvalidPair = 1,
    InconsistentPoint = 2,
    BadFormula = 3,
    Unrealizable = 4,
    BudgetExhausted = 5,
    NullPointer = 6,
    InvalidArgument = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChSense {
    Max = 0,
    Min = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChLocation {
    Interior = 0,
    Boundary = 1,
    Outside = 2,
}

pub struct ChPolytope {
    poly: Polytope,
    view: PolytopeView,
}

pub struct ChOptimization {
    view: OptimizationView,
}

pub struct ChGraph {
    graph: ChemGraph,
}

struct LastError {
    message: CString,
    /// Character offset of a formula syntax error, or -1.
    position: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

struct Failure {
    status: ChStatus,
    message: String,
    position: i64,
}

impl Failure {
    fn new(status: ChStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
            position: -1,
        }
    }
}

impl From<IndexError> for Failure {
    fn from(e: IndexError) -> Self {
        let position = match &e {
            IndexError::Syntax(s) => s.position as i64,
            _ => -1,
        };
        let status = match e {
            IndexError::Syntax(_) | IndexError::Eval(_) => ChStatus::BadFormula,
            _ => ChStatus::InvalidArgument,
        };
        Failure {
            status,
            message: e.to_string(),
            position,
        }
    }
}

impl From<RealizeError> for Failure {
    fn from(e: RealizeError) -> Self {
        let status = match &e {
            RealizeError::InconsistentPoint(_) => ChStatus::InconsistentPoint,
            RealizeError::Unrealized {
                reason: Unrealized::ProvenUnrealizable,
                ..
            } => ChStatus::Unrealizable,
            RealizeError::Unrealized {
                reason: Unrealized::BudgetExhausted,
                ..
            } => ChStatus::BudgetExhausted,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(e: Option<LastError>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = e);
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ChStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(Failure::new(ChStatus::Internal, msg))
    });
    match outcome {
        Ok(()) => {
            set_last_error(None);
            ChStatus::Ok
        }
        Err(f) => {
            let message = CString::new(f.message.replace('\0', " ")).unwrap_or_default();
            set_last_error(Some(LastError {
                message,
                position: f.position,
            }));
            f.status
        }
    }
}

fn valid_pair(n: i64, m: i64) -> Result<ValidPair, Failure> {
    ValidPair::new(n, m).map_err(|e| Failure::new(ChStatus::InvalidPair, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(ChStatus::NullPointer, "null handle"))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(ChStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::new(ChStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(ChStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_slice<T: Copy>(out: *mut T, values: &[T]) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(ChStatus::NullPointer, "null output pointer"));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::new(ChStatus::Internal, "interior NUL"))?;
    put(out, c.into_raw())
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string(value).map_err(|e| Failure::new(ChStatus::Internal, e.to_string()))
}

fn five(p: &PointView) -> [i64; 5] {
    [p.m12, p.m13, p.m22, p.m23, p.m33]
}

fn out_of_range(index: usize, len: usize) -> Failure {
    Failure::new(
        ChStatus::InvalidArgument,
        format!("index {index} out of range (len {len})"),
    )
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ch_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |e| e.message.as_ptr()))
}

/// Character offset of the last formula syntax error on this thread, or -1.
#[no_mangle]
pub extern "C" fn ch_last_error_position() -> i64 {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(-1, |e| e.position))
}

#[no_mangle]
pub unsafe extern "C" fn ch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn ch_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn ch_polytope_new(n: i64, m: i64, out: *mut *mut ChPolytope) -> ChStatus {
    guard(|| {
        let pair = valid_pair(n, m)?;
        let poly = catalog_polytope(pair);
        let view = PolytopeView::new(pair, &poly);
        put(out, Box::into_raw(Box::new(ChPolytope { poly, view })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ch_polytope_free(p: *mut ChPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Affine dimension, or -1 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_dim(p: *const ChPolytope) -> i32 {
    p.as_ref().map_or(-1, |p| p.poly.dim as i32)
}

#[no_mangle]
pub unsafe extern "C" fn ch_polytope_vertex_count(p: *const ChPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.poly.vertices.len())
}

#[no_mangle]
pub unsafe extern "C" fn ch_polytope_facet_count(p: *const ChPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.poly.facets.len())
}

#[no_mangle]
pub unsafe extern "C" fn ch_polytope_equality_count(p: *const ChPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.poly.equalities.len())
}

/// Writes `(m12, m13, m22, m23, m33)` of vertex `index` to `out[0..5]`.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_vertex(p: *const ChPolytope, index: usize, out: *mut i64) -> ChStatus {
    guard(|| {
        let p = handle(p)?;
        let v = p
            .view
            .vertices
            .get(index)
            .ok_or_else(|| out_of_range(index, p.view.vertices.len()))?;
        put_slice(out, &five(v))
    })
}

/// Writes row `index` of `a . x >= b` over `(m12, m13, m33)`: `a` to
/// `a_out[0..3]` and `b` to `b_out`.
#[no_mangle]
pub unsafe extern "C" fn ch_polytope_facet(
    p: *const ChPolytope,
    index: usize,
    a_out: *mut i64,
    b_out: *mut i64,
) -> ChStatus {
    guard(|| {
        let p = handle(p)?;
        let f = p
            .poly
            .facets
            .get(index)
            .ok_or_else(|| out_of_range(index, p.poly.facets.len()))?;
        put_slice(a_out, &f.a)?;
        put(b_out, f.b)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ch_polytope_locate(
    p: *const ChPolytope,
    m12: i64,
    m13: i64,
    m33: i64,
    out: *mut ChLocation,
) -> ChStatus {
    guard(|| {
        let p = handle(p)?;
        let loc = match point_location(&p.poly, Point3::new(m12, m13, m33)) {
            Location::Interior => ChLocation::Interior,
            Location::Boundary { .. } => ChLocation::Boundary,
            Location::Outside => ChLocation::Outside,
        };
        put(out, loc)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ch_polytope_to_json(p: *const ChPolytope, out: *mut *mut c_char) -> ChStatus {
    guard(|| put_string(out, json(&handle(p)?.view)?))
}

fn run_optimize(n: i64, m: i64, spec: IndexSpec, sense: ChSense) -> Result<Box<ChOptimization>, Failure> {
    let pair = valid_pair(n, m)?;
    let sense = match sense {
        ChSense::Max => Sense::Max,
        ChSense::Min => Sense::Min,
    };
    let result = optimize(&spec, pair, sense);
    Ok(Box::new(ChOptimization {
        view: OptimizationView::new(&spec, &result),
    }))
}

/// `alpha` is read only for `generalized_randic`; pass NaN for its default.
#[no_mangle]
pub unsafe extern "C" fn ch_optimize_preset(
    n: i64,
    m: i64,
    name: *const c_char,
    alpha: f64,
    sense: ChSense,
    out: *mut *mut ChOptimization,
) -> ChStatus {
    guard(|| {
        let alpha = (!alpha.is_nan()).then_some(alpha);
        let spec = preset(text(name)?, alpha)?;
        put(out, Box::into_raw(run_optimize(n, m, spec, sense)?))
    })
}

/// Formula in `i` and `j`; a syntax error sets [`ch_last_error_position`].
#[no_mangle]
pub unsafe extern "C" fn ch_optimize_formula(
    n: i64,
    m: i64,
    formula: *const c_char,
    sense: ChSense,
    out: *mut *mut ChOptimization,
) -> ChStatus {
    guard(|| {
        let spec = parse_index_formula(text(formula)?)?;
        put(out, Box::into_raw(run_optimize(n, m, spec, sense)?))
    })
}

/// `coeffs` holds `c12, c13, c22, c23, c33`.
#[no_mangle]
pub unsafe extern "C" fn ch_optimize_coefficients(
    n: i64,
    m: i64,
    coeffs: *const f64,
    sense: ChSense,
    out: *mut *mut ChOptimization,
) -> ChStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(Failure::new(ChStatus::NullPointer, "null coefficients"));
        }
        let c: [f64; 5] = ptr::read(coeffs.cast());
        let spec = IndexSpec::from_coefficients(c)?;
        put(out, Box::into_raw(run_optimize(n, m, spec, sense)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ch_optimization_free(o: *mut ChOptimization) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Optimal index value, including the `(n, m)` constant.
#[no_mangle]
pub unsafe extern "C" fn ch_optimization_value(o: *const ChOptimization, out: *mut f64) -> ChStatus {
    guard(|| put(out, handle(o)?.view.optimal_value))
}

#[no_mangle]
pub unsafe extern "C" fn ch_optimization_arg_count(o: *const ChOptimization) -> usize {
    o.as_ref().map_or(0, |o| o.view.arg_points.len())
}

/// Writes `(m12, m13, m22, m23, m33)` of optimal point `index` to `out[0..5]`.
#[no_mangle]
pub unsafe extern "C" fn ch_optimization_arg_point(o: *const ChOptimization, index: usize, out: *mut i64) -> ChStatus {
    guard(|| {
        let o = handle(o)?;
        let p = o
            .view
            .arg_points
            .get(index)
            .ok_or_else(|| out_of_range(index, o.view.arg_points.len()))?;
        put_slice(out, &five(p))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ch_optimization_to_json(o: *const ChOptimization, out: *mut *mut c_char) -> ChStatus {
    guard(|| put_string(out, json(&handle(o)?.view)?))
}

/// Builds a graph at `(m12, m13, m33)`; the same seed gives the same graph.
#[no_mangle]
pub unsafe extern "C" fn ch_realize(
    n: i64,
    m: i64,
    m12: i64,
    m13: i64,
    m33: i64,
    seed: u64,
    out: *mut *mut ChGraph,
) -> ChStatus {
    guard(|| {
        let pair = valid_pair(n, m)?;
        let budget = RealizeBudget {
            seed,
            ..RealizeBudget::default()
        };
        let graph = realize(pair, Point3::new(m12, m13, m33), budget)?;
        put(out, Box::into_raw(Box::new(ChGraph { graph })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ch_graph_free(g: *mut ChGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ch_graph_order(g: *const ChGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.order())
}

#[no_mangle]
pub unsafe extern "C" fn ch_graph_size(g: *const ChGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.size())
}

/// Writes edges as `u0, v0, u1, v1, ...`; `capacity` must be at least
/// twice the size.
#[no_mangle]
pub unsafe extern "C" fn ch_graph_edges(g: *const ChGraph, out: *mut u32, capacity: usize) -> ChStatus {
    guard(|| {
        let g = handle(g)?;
        let flat: Vec<u32> = g.graph.edges().iter().flat_map(|&(u, v)| [u, v]).collect();
        if capacity < flat.len() {
            return Err(Failure::new(
                ChStatus::InvalidArgument,
                format!("capacity {capacity} < {}", flat.len()),
            ));
        }
        put_slice(out, &flat)
    })
}

/// Writes `(m12, m13, m22, m23, m33)` recomputed from the edges.
#[no_mangle]
pub unsafe extern "C" fn ch_graph_counts(g: *const ChGraph, out: *mut i64) -> ChStatus {
    guard(|| put_slice(out, &profile_of(&handle(g)?.graph).edge_counts()))
}

#[no_mangle]
pub unsafe extern "C" fn ch_graph_to_json(g: *const ChGraph, out: *mut *mut c_char) -> ChStatus {
    guard(|| put_string(out, json(&GraphView::new(&handle(g)?.graph))?))
}

#[no_mangle]
pub unsafe extern "C" fn ch_graph_to_dot(g: *const ChGraph, out: *mut *mut c_char) -> ChStatus {
    guard(|| put_string(out, handle(g)?.graph.to_dot()))
}
