//! C ABI over `plab-core`.
//!
//! Objects are opaque handles created by `plab_*_new`-style functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`PlabStatus`]; on failure the message is available from
//! [`plab_last_error`] until the next failing call on the same thread.
//! Strings returned to the caller are owned and released with
//! [`plab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;
use std::sync::Arc;

use plab_core::classify::{self, Catalog, ClassifyOptions};
use plab_core::error::PlabError;
use plab_core::graphs::{canonical_certificate, exchange_graph_with_budget, ExchangeGraph};
use plab_core::io::GraphDoc;
use plab_core::positroid::{DecoratedPermutation, GrassmannNecklace};
use plab_core::symmetry;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlabStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    MalformedPermutation = 3,
    Disconnected = 4,
    BudgetExceeded = 5,
    InvalidInput = 6,
    OracleUnavailable = 7,
    Internal = 8,
    Io = 9,
    BufferTooSmall = 10,
}

/// A Grassmann necklace.
pub struct PlabNecklace {
    inner: Arc<GrassmannNecklace>,
}

/// An exchange graph together with its necklace.
pub struct PlabGraph {
    necklace: Arc<GrassmannNecklace>,
    graph: ExchangeGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: PlabStatus, msg: impl Into<String>) -> PlabStatus {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
    status
}

fn from_error(e: PlabError) -> PlabStatus {
    let status = match e {
        PlabError::MalformedPermutation { .. } => PlabStatus::MalformedPermutation,
        PlabError::Disconnected(_) => PlabStatus::Disconnected,
        PlabError::BudgetExceeded { .. } => PlabStatus::BudgetExceeded,
        PlabError::InvalidInput(_) => PlabStatus::InvalidInput,
        PlabError::OracleUnavailable(_) => PlabStatus::OracleUnavailable,
        PlabError::InternalConsistency(_) | PlabError::Json(_) => PlabStatus::Internal,
        PlabError::Io(_) => PlabStatus::Io,
    };
    fail(status, e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PlabStatus> {
    if s.is_null() {
        return Err(fail(PlabStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(PlabStatus::InvalidUtf8, "string is not UTF-8"))
}

fn give_string(s: String, out: *mut *mut c_char) -> PlabStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: caller checked `out` is non-null.
            unsafe { *out = c.into_raw() };
            PlabStatus::Ok
        }
        Err(_) => fail(PlabStatus::Internal, "string contains a NUL byte"),
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(PlabStatus::NullArgument, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

/// Message of the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn plab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn plab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the necklace of a permutation string such as `"3(10)98712654"`.
///
/// # Safety
/// `perm` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plab_necklace_from_permutation(
    perm: *const c_char,
    out: *mut *mut PlabNecklace,
) -> PlabStatus {
    non_null!(out);
    let text = match read_str(perm) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let necklace = DecoratedPermutation::parse(text).and_then(|pi| GrassmannNecklace::from_permutation(&pi));
    match necklace {
        Ok(g) => {
            *out = Box::into_raw(Box::new(PlabNecklace { inner: Arc::new(g) }));
            PlabStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `necklace` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn plab_necklace_free(necklace: *mut PlabNecklace) {
    if !necklace.is_null() {
        drop(Box::from_raw(necklace));
    }
}

/// # Safety
/// `necklace` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn plab_necklace_n(necklace: *const PlabNecklace) -> usize {
    necklace.as_ref().map_or(0, |g| g.inner.n())
}

/// # Safety
/// `necklace` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn plab_necklace_k(necklace: *const PlabNecklace) -> usize {
    necklace.as_ref().map_or(0, |g| g.inner.k())
}

/// Number of non-boundary sets in every maximal collection.
///
/// # Safety
/// `necklace` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn plab_necklace_interior_size(necklace: *const PlabNecklace) -> usize {
    necklace.as_ref().map_or(0, |g| g.inner.interior_size())
}

/// Set `index` (zero-based) of the necklace as a bitmask, label `j` at bit
/// `j - 1`.
///
/// # Safety
/// `necklace` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn plab_necklace_set(necklace: *const PlabNecklace, index: usize, out: *mut u64) -> PlabStatus {
    non_null!(necklace, out);
    let g = &(*necklace).inner;
    if index >= g.n() {
        return fail(PlabStatus::InvalidInput, format!("index {index} out of range 0..{}", g.n()));
    }
    *out = g.sets()[index].bits();
    PlabStatus::Ok
}

/// # Safety
/// `necklace` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn plab_necklace_is_prime(necklace: *const PlabNecklace, out: *mut bool) -> PlabStatus {
    non_null!(necklace, out);
    *out = symmetry::is_prime(&(*necklace).inner);
    PlabStatus::Ok
}

/// # Safety
/// `necklace` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn plab_necklace_is_mutation_friendly(
    necklace: *const PlabNecklace,
    out: *mut bool,
) -> PlabStatus {
    non_null!(necklace, out);
    match classify::is_mutation_friendly(&(*necklace).inner) {
        Ok(b) => {
            *out = b;
            PlabStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `necklace` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn plab_necklace_is_very_mutation_friendly(
    necklace: *const PlabNecklace,
    out: *mut bool,
) -> PlabStatus {
    non_null!(necklace, out);
    match classify::is_very_mutation_friendly(&(*necklace).inner) {
        Ok(b) => {
            *out = b;
            PlabStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Lexicographically least member of the permutation's equivalence class.
///
/// # Safety
/// `perm` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plab_canonical_representative(perm: *const c_char, out: *mut *mut c_char) -> PlabStatus {
    non_null!(out);
    let text = match read_str(perm) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match DecoratedPermutation::parse(text) {
        Ok(pi) => give_string(symmetry::canonical_rep(&pi).to_string(), out),
        Err(e) => from_error(e),
    }
}

/// Enumerates the exchange graph; `budget` caps the number of collections
/// (0 selects the default).
///
/// # Safety
/// `necklace` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plab_exchange_graph(
    necklace: *const PlabNecklace,
    budget: usize,
    out: *mut *mut PlabGraph,
) -> PlabStatus {
    non_null!(necklace, out);
    let necklace = (*necklace).inner.clone();
    let budget = if budget == 0 { plab_core::graphs::DEFAULT_VERTEX_BUDGET } else { budget };
    match exchange_graph_with_budget(&necklace, budget) {
        Ok(graph) => {
            *out = Box::into_raw(Box::new(PlabGraph { necklace, graph }));
            PlabStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `graph` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn plab_graph_free(graph: *mut PlabGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn plab_graph_order(graph: *const PlabGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.order())
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn plab_graph_size(graph: *const PlabGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.size())
}

/// Writes the edges as `(u, v)` pairs of zero-based vertex indices into
/// `buf`, which holds `capacity` pairs. `written` receives the edge count;
/// `BufferTooSmall` is returned when it exceeds `capacity`.
///
/// # Safety
/// `buf` must hold `2 * capacity` elements; `graph` and `written` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn plab_graph_edges(
    graph: *const PlabGraph,
    buf: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> PlabStatus {
    non_null!(graph, written);
    let edges = (*graph).graph.edges();
    *written = edges.len();
    if edges.len() > capacity {
        return fail(PlabStatus::BufferTooSmall, format!("{} edges, capacity {capacity}", edges.len()));
    }
    if !edges.is_empty() {
        non_null!(buf);
        let dst = std::slice::from_raw_parts_mut(buf, 2 * edges.len());
        for (j, (u, v)) in edges.into_iter().enumerate() {
            dst[2 * j] = u;
            dst[2 * j + 1] = v;
        }
    }
    PlabStatus::Ok
}

/// Canonical certificate text; equal strings mean isomorphic graphs.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plab_graph_certificate(graph: *const PlabGraph, out: *mut *mut c_char) -> PlabStatus {
    non_null!(graph, out);
    give_string(canonical_certificate(&(*graph).graph).to_string(), out)
}

/// Catalog name of the graph, or null in `*out` when it has none.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plab_graph_catalog_name(graph: *const PlabGraph, out: *mut *mut c_char) -> PlabStatus {
    non_null!(graph, out);
    let catalog = match Catalog::standard() {
        Ok(c) => c,
        Err(e) => return from_error(e),
    };
    match catalog.name_of(&canonical_certificate(&(*graph).graph)) {
        Some(name) => give_string(name.to_string(), out),
        None => {
            *out = ptr::null_mut();
            PlabStatus::Ok
        }
    }
}

/// The graph document as JSON.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plab_graph_to_json(graph: *const PlabGraph, out: *mut *mut c_char) -> PlabStatus {
    non_null!(graph, out);
    let g = &*graph;
    match serde_json::to_string(&GraphDoc::from_exchange_graph(&g.graph, &g.necklace)) {
        Ok(s) => give_string(s, out),
        Err(e) => from_error(e.into()),
    }
}

/// Prime very-mutation-friendly classes of one interior size as a JSON
/// array of rows. `jobs` of 0 uses all cores.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn plab_classify_json(interior: usize, jobs: usize, out: *mut *mut c_char) -> PlabStatus {
    non_null!(out);
    let opts = ClassifyOptions {
        jobs: (jobs > 0).then_some(jobs),
        ..Default::default()
    };
    match classify::classify_with(interior, &opts).and_then(|rows| Ok(serde_json::to_string(&rows)?)) {
        Ok(s) => give_string(s, out),
        Err(e) => from_error(e),
    }
}
