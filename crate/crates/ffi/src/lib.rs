//! C interface to `pmdecomp`.
//!
//! Hypergraphs and decompositions cross the boundary as opaque handles that
//! the caller releases with the matching `*_free` function. Every fallible
//! call returns a [`PmdStatus`] and writes results through out-pointers,
//! which are left untouched on failure. Strings returned by the library are
//! released with [`pmd_string_free`]. Panics never unwind into C; they
//! surface as [`PmdStatus::Internal`].

use pmdecomp::decomposition::{pm_decompose_complete_r, pmd_exact as exact, DecompositionError, PmDecomposition};
use pmdecomp::hypergraph::{complete_uniform, Hypergraph, Matching, Vertex};
use pmdecomp::oracle::is_positive_matching;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmdStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Text was not UTF-8 or not the expected JSON.
    InvalidJson = 2,
    /// The hypergraph or matching violates its invariants.
    InvalidInput = 3,
    /// A search ran out of budget.
    BudgetExceeded = 4,
    /// A certificate failed replay.
    VerificationFailed = 5,
    /// An outcome that a theorem rules out.
    TheoremViolated = 6,
    /// A panic inside the library.
    Internal = 7,
}

/// Opaque hypergraph handle.
pub struct PmdHypergraph(Hypergraph);

/// Opaque decomposition handle.
pub struct PmdDecomposition(PmDecomposition);

fn guard(f: impl FnOnce() -> PmdStatus) -> PmdStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(PmdStatus::Internal)
}

fn decomposition_status(e: &DecompositionError) -> PmdStatus {
    match e {
        DecompositionError::BudgetExceeded { .. } => PmdStatus::BudgetExceeded,
        e if e.contradicts_theorem() => PmdStatus::TheoremViolated,
        _ => PmdStatus::InvalidInput,
    }
}

/// A static, NUL-terminated description of `status`.
#[no_mangle]
pub extern "C" fn pmd_status_message(status: PmdStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PmdStatus::Ok => c"ok",
        PmdStatus::NullPointer => c"null pointer argument",
        PmdStatus::InvalidJson => c"malformed JSON or text",
        PmdStatus::InvalidInput => c"invalid hypergraph, matching or parameters",
        PmdStatus::BudgetExceeded => c"search budget exceeded",
        PmdStatus::VerificationFailed => c"certificate replay failed",
        PmdStatus::TheoremViolated => c"outcome contradicts a theorem",
        PmdStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Parses `{"n": .., "edges": [[..], ..]}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmd_hypergraph_from_json(json: *const c_char, out: *mut *mut PmdHypergraph) -> PmdStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return PmdStatus::NullPointer;
        }
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return PmdStatus::InvalidJson;
        };
        match serde_json::from_str::<Hypergraph>(text) {
            Ok(h) => {
                *out = Box::into_raw(Box::new(PmdHypergraph(h)));
                PmdStatus::Ok
            }
            Err(_) => PmdStatus::InvalidJson,
        }
    })
}

/// All `r`-subsets of `1..=n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmd_hypergraph_complete(n: u32, r: usize, out: *mut *mut PmdHypergraph) -> PmdStatus {
    guard(|| {
        if out.is_null() {
            return PmdStatus::NullPointer;
        }
        match complete_uniform(n, r) {
            Ok(h) => {
                *out = Box::into_raw(Box::new(PmdHypergraph(h)));
                PmdStatus::Ok
            }
            Err(_) => PmdStatus::InvalidInput,
        }
    })
}

/// # Safety
/// `h` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pmd_hypergraph_free(h: *mut PmdHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmd_hypergraph_edge_count(h: *const PmdHypergraph, out: *mut usize) -> PmdStatus {
    guard(|| {
        if h.is_null() || out.is_null() {
            return PmdStatus::NullPointer;
        }
        *out = (*h).0.edge_count();
        PmdStatus::Ok
    })
}

/// Decides positivity of the matching given as `edge_count` edges of the
/// hypergraph's size, stored back to back in `vertices`.
///
/// # Safety
/// `h` must be a live handle, `vertices` must point to
/// `edge_count * rank` values (or may be null when `edge_count` is 0) and
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmd_is_positive_matching(
    h: *const PmdHypergraph,
    vertices: *const u32,
    edge_count: usize,
    out: *mut bool,
) -> PmdStatus {
    guard(|| {
        if h.is_null() || out.is_null() || (vertices.is_null() && edge_count > 0) {
            return PmdStatus::NullPointer;
        }
        let h = &(*h).0;
        let r = h.rank();
        if r == 0 && edge_count > 0 {
            return PmdStatus::InvalidInput;
        }
        let flat: &[Vertex] = if edge_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(vertices, edge_count * r)
        };
        let lists: Vec<Vec<Vertex>> = flat.chunks(r.max(1)).map(<[Vertex]>::to_vec).collect();
        match Matching::from_lists(h, lists) {
            Ok(m) => {
                *out = is_positive_matching(h, &m);
                PmdStatus::Ok
            }
            Err(_) => PmdStatus::InvalidInput,
        }
    })
}

/// The certified band decomposition of the complete `r`-uniform
/// hypergraph on `n` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmd_decompose_complete(n: u32, r: usize, out: *mut *mut PmdDecomposition) -> PmdStatus {
    guard(|| {
        if out.is_null() {
            return PmdStatus::NullPointer;
        }
        match pm_decompose_complete_r(n, r) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(PmdDecomposition(d)));
                PmdStatus::Ok
            }
            Err(e) => decomposition_status(&e),
        }
    })
}

/// The exact `pmd` of `h` within `budget` search nodes. `decomposition` may
/// be null when the witness is not wanted.
///
/// # Safety
/// `h` must be a live handle, `pmd` a valid pointer, and `decomposition`
/// null or valid.
#[no_mangle]
pub unsafe extern "C" fn pmd_exact(
    h: *const PmdHypergraph,
    budget: u64,
    pmd: *mut usize,
    decomposition: *mut *mut PmdDecomposition,
) -> PmdStatus {
    guard(|| {
        if h.is_null() || pmd.is_null() {
            return PmdStatus::NullPointer;
        }
        match exact(&(*h).0, budget) {
            Ok((p, d)) => {
                *pmd = p;
                if !decomposition.is_null() {
                    *decomposition = Box::into_raw(Box::new(PmdDecomposition(d)));
                }
                PmdStatus::Ok
            }
            Err(e) => decomposition_status(&e),
        }
    })
}

/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmd_decomposition_part_count(d: *const PmdDecomposition, out: *mut usize) -> PmdStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return PmdStatus::NullPointer;
        }
        *out = (*d).0.count();
        PmdStatus::Ok
    })
}

/// Replays every certificate. Returns `Ok` or `VerificationFailed`.
///
/// # Safety
/// `d` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pmd_decomposition_verify(d: *const PmdDecomposition) -> PmdStatus {
    guard(|| {
        if d.is_null() {
            return PmdStatus::NullPointer;
        }
        match (*d).0.verify() {
            Ok(()) => PmdStatus::Ok,
            Err(_) => PmdStatus::VerificationFailed,
        }
    })
}

/// Serializes to JSON. Release the string with [`pmd_string_free`].
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmd_decomposition_to_json(d: *const PmdDecomposition, out: *mut *mut c_char) -> PmdStatus {
    guard(|| {
        if d.is_null() || out.is_null() {
            return PmdStatus::NullPointer;
        }
        let text = serde_json::to_string(&(*d).0).expect("decompositions serialize");
        *out = CString::new(text).expect("JSON has no NUL").into_raw();
        PmdStatus::Ok
    })
}

/// Parses a decomposition document without verifying it.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pmd_decomposition_from_json(
    json: *const c_char,
    out: *mut *mut PmdDecomposition,
) -> PmdStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return PmdStatus::NullPointer;
        }
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return PmdStatus::InvalidJson;
        };
        match serde_json::from_str::<PmDecomposition>(text) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(PmdDecomposition(d)));
                PmdStatus::Ok
            }
            Err(_) => PmdStatus::InvalidJson,
        }
    })
}

/// # Safety
/// `d` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pmd_decomposition_free(d: *mut PmdDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pmd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
