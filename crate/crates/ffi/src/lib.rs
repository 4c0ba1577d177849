//! C ABI over `dis-core`.
//!
//! Objects are opaque handles owned by the caller and released with the
//! matching `_free` function. Every fallible function returns a
//! [`DisStatus`] and writes its result through an out pointer; on failure
//! [`dis_last_error_message`] describes what went wrong on this thread.
//! Strings returned by the library are NUL-terminated UTF-8 and must be
//! released with [`dis_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dis_core::assoc::{enumerate_alternating, to_alternating};
use dis_core::enumeration::isolated_count;
use dis_core::geometry::realize;
use dis_core::rewrite::{check_equivalence, closure, Equivalence};
use dis_core::trees::{enumerate_shapes, parse_monomial_with, parse_named};
use dis_core::{BlockPartition, Error, RewriteCertificate, RuleSet, Tree};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DisStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfRange = 4,
    LimitExceeded = 5,
    /// The monomials are provably not equivalent.
    NotEquivalent = 6,
    /// The search budget ran out before a verdict.
    Inconclusive = 7,
    ReplayFailed = 8,
    Invalid = 9,
    /// A Rust panic was caught at the boundary.
    Internal = 10,
}

/// A tree monomial together with its leaf identifiers.
pub struct DisTree {
    tree: Tree,
    names: Vec<String>,
}

/// A labeled block partition of the unit square.
pub struct DisPartition {
    partition: BlockPartition,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior NUL"));
}

fn fail(status: DisStatus, msg: impl Into<String>) -> DisStatus {
    set_error(msg);
    status
}

fn from_core(e: Error) -> DisStatus {
    let status = match e {
        Error::Parse(_) | Error::Dyadic(_) | Error::PartitionText { .. } => DisStatus::Parse,
        Error::IndexOutOfRange { .. } => DisStatus::OutOfRange,
        Error::LimitExceeded { .. } => DisStatus::LimitExceeded,
        _ => DisStatus::Invalid,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into [`DisStatus::Internal`].
fn guard(f: impl FnOnce() -> Result<(), DisStatus>) -> DisStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DisStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(DisStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, DisStatus> {
    if s.is_null() {
        return Err(fail(DisStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(DisStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, DisStatus> {
    p.as_ref()
        .ok_or_else(|| fail(DisStatus::NullPointer, "null handle"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), DisStatus> {
    if out.is_null() {
        return Err(fail(DisStatus::NullPointer, "null out pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), DisStatus> {
    let c = CString::new(s).map_err(|_| fail(DisStatus::Internal, "string contains NUL"))?;
    write(out, c.into_raw())
}

/// Message for the last failed call on this thread; empty after a
/// success. Valid until the next call on this thread; do not free.
#[no_mangle]
pub extern "C" fn dis_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn dis_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses infix text such as `"((a h b) v c)"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_tree_parse(text: *const c_char, out: *mut *mut DisTree) -> DisStatus {
    guard(|| {
        let (tree, names) = parse_named(read_str(text)?).map_err(|e| from_core(e.into()))?;
        write(out, Box::into_raw(Box::new(DisTree { tree, names })))
    })
}

/// Parses `text` using the identifiers of `reference`, so that equal
/// letters get equal labels in both trees.
///
/// # Safety
/// `text` must be a NUL-terminated string, `reference` a valid handle and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_tree_parse_like(
    text: *const c_char,
    reference: *const DisTree,
    out: *mut *mut DisTree,
) -> DisStatus {
    guard(|| {
        let names = deref(reference)?.names.clone();
        let tree = parse_monomial_with(read_str(text)?, &names).map_err(|e| from_core(e.into()))?;
        write(out, Box::into_raw(Box::new(DisTree { tree, names })))
    })
}

/// # Safety
/// `tree` must be null or a handle from [`dis_tree_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn dis_tree_free(tree: *mut DisTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// # Safety
/// `tree` must be a valid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_tree_arity(tree: *const DisTree, out: *mut usize) -> DisStatus {
    guard(|| write(out, deref(tree)?.tree.arity()))
}

/// The monomial with its original identifiers.
///
/// # Safety
/// `tree` must be a valid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_tree_to_string(
    tree: *const DisTree,
    out: *mut *mut c_char,
) -> DisStatus {
    guard(|| {
        let t = deref(tree)?;
        write_string(out, t.tree.display_with(&t.names).to_string())
    })
}

/// The associativity normal form, with `x<k>` labels.
///
/// # Safety
/// `tree` must be a valid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_tree_to_alternating_string(
    tree: *const DisTree,
    out: *mut *mut c_char,
) -> DisStatus {
    guard(|| write_string(out, to_alternating(&deref(tree)?.tree).to_string()))
}

/// Size of the class of `tree` under associativity and interchange,
/// exploring at most `budget` monomials.
///
/// # Safety
/// `tree` must be a valid handle; `size` and `exhausted` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_closure_size(
    tree: *const DisTree,
    budget: usize,
    size: *mut usize,
    exhausted: *mut bool,
) -> DisStatus {
    guard(|| {
        let c = closure(&deref(tree)?.tree, RuleSet::ALL, budget);
        write(size, c.len())?;
        write(exhausted, c.exhausted)
    })
}

/// Decides whether `a` rewrites to `b`. On [`DisStatus::Ok`] writes a
/// certificate in JSON to `certificate`; otherwise returns
/// [`DisStatus::NotEquivalent`] or [`DisStatus::Inconclusive`].
///
/// # Safety
/// `a` and `b` must be valid handles and `certificate` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_check_equivalence(
    a: *const DisTree,
    b: *const DisTree,
    budget: usize,
    certificate: *mut *mut c_char,
) -> DisStatus {
    guard(|| {
        let (a, b) = (deref(a)?, deref(b)?);
        match check_equivalence(&a.tree, &b.tree, budget).map_err(from_core)? {
            Equivalence::Found(cert) => write_string(certificate, cert.to_json()),
            Equivalence::Distinct { expanded } => Err(fail(
                DisStatus::NotEquivalent,
                format!("classes differ ({expanded} expansions)"),
            )),
            Equivalence::NotFound { expanded } => Err(fail(
                DisStatus::Inconclusive,
                format!("budget exhausted after {expanded} expansions"),
            )),
        }
    })
}

/// Replays a JSON certificate; on success writes the final monomial.
///
/// # Safety
/// `json` must be a NUL-terminated string and `final_tree` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_certificate_replay(
    json: *const c_char,
    final_tree: *mut *mut c_char,
) -> DisStatus {
    guard(|| {
        let cert = RewriteCertificate::from_json(read_str(json)?).map_err(from_core)?;
        let end = cert
            .replay()
            .map_err(|e| fail(DisStatus::ReplayFailed, e.to_string()))?;
        write_string(final_tree, end.to_string())
    })
}

/// The geometric realization of `tree`.
///
/// # Safety
/// `tree` must be a valid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_partition_from_tree(
    tree: *const DisTree,
    out: *mut *mut DisPartition,
) -> DisStatus {
    guard(|| {
        let partition = realize(&deref(tree)?.tree);
        write(out, Box::into_raw(Box::new(DisPartition { partition })))
    })
}

/// # Safety
/// `p` must be null or a handle from [`dis_partition_from_tree`], freed once.
#[no_mangle]
pub unsafe extern "C" fn dis_partition_free(p: *mut DisPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a valid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_partition_block_count(
    p: *const DisPartition,
    out: *mut usize,
) -> DisStatus {
    guard(|| write(out, deref(p)?.partition.len()))
}

/// One `x1 x2 y1 y2 label` line per block.
///
/// # Safety
/// `p` must be a valid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dis_partition_to_text(
    p: *const DisPartition,
    out: *mut *mut c_char,
) -> DisStatus {
    guard(|| write_string(out, deref(p)?.partition.to_text()))
}

/// Number of binary monomial shapes with `n` leaves.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dis_count_shapes(n: usize, out: *mut u64) -> DisStatus {
    guard(|| write(out, enumerate_shapes(n).map_err(from_core)?.len() as u64))
}

/// Number of associativity classes with `n` leaves.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dis_count_alternating(n: usize, out: *mut u64) -> DisStatus {
    guard(|| {
        write(
            out,
            enumerate_alternating(n).map_err(from_core)?.len() as u64,
        )
    })
}

/// Number of associativity classes with `n` leaves admitting no
/// interchange.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dis_count_isolated(n: usize, out: *mut u64) -> DisStatus {
    guard(|| write(out, isolated_count(n).map_err(from_core)? as u64))
}
