//! C ABI for asymtree.
//!
//! Objects are opaque handles created by `*_parse` and released by the
//! matching `*_free`. Every fallible call returns an [`AsymtreeStatus`];
//! on failure [`asymtree_last_error`] describes the error for the calling
//! thread. Strings returned through out-parameters are owned by the caller
//! and released with [`asymtree_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use asymtree::asym::{
    count_rooted, count_unrooted, find_set, motion, motion_rooted, verify_set, AsymSet,
    MotionResult, SetContext,
};
use asymtree::graph::RootedGraph;
use asymtree::oracle::Caps;
use asymtree::presented::{count_presented, PresentedError, TreePresentation};
use asymtree::tree::{parse_tree_input, TreeInput};
use asymtree::treelike::{asymmetrize_treelike, Asymmetrization, TreelikeError};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymtreeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// The requested object does not exist, e.g. no asymmetrizing set.
    NotFound = 4,
    /// Input exceeds a size limit of the brute-force routines.
    TooLarge = 5,
    /// Any other failure reported by the library.
    Failed = 6,
    Panic = 7,
}

/// A finite rooted or unrooted tree.
pub struct AsymtreeTree {
    inner: TreeInput,
}

/// A finitely presented tree.
pub struct AsymtreePresentation {
    inner: TreePresentation,
}

/// A finite rooted graph.
pub struct AsymtreeGraph {
    inner: RootedGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: AsymtreeStatus,
    message: String,
}

impl Failure {
    fn new(status: AsymtreeStatus, message: impl Into<String>) -> Failure {
        Failure {
            status,
            message: message.into(),
        }
    }
}

fn set_last_error(message: Option<String>) {
    let message = message.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

/// Runs `body`, records its error message and maps panics to a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> AsymtreeStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error(None);
            AsymtreeStatus::Ok
        }
        Ok(Err(f)) => {
            set_last_error(Some(f.message));
            f.status
        }
        Err(_) => {
            set_last_error(Some("internal panic".into()));
            AsymtreeStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(Failure::new(AsymtreeStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| Failure::new(AsymtreeStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, Failure> {
    h.as_ref()
        .ok_or_else(|| Failure::new(AsymtreeStatus::NullPointer, "null handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(
            AsymtreeStatus::NullPointer,
            "null output pointer",
        ));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, value: String) -> Result<(), Failure> {
    let s =
        CString::new(value).map_err(|_| Failure::new(AsymtreeStatus::Failed, "interior nul"))?;
    write_out(out, s.into_raw())
}

fn parse_failure(e: impl ToString) -> Failure {
    Failure::new(AsymtreeStatus::Parse, e.to_string())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn asymtree_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn asymtree_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a rooted bracket tree or a `tree unrooted` edge list.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_tree_parse(
    text: *const c_char,
    out: *mut *mut AsymtreeTree,
) -> AsymtreeStatus {
    guard(|| {
        let inner = parse_tree_input(read_str(text)?).map_err(parse_failure)?;
        write_out(out, Box::into_raw(Box::new(AsymtreeTree { inner })))
    })
}

/// # Safety
/// `tree` must come from [`asymtree_tree_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn asymtree_tree_free(tree: *mut AsymtreeTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Number of vertices.
///
/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_tree_len(
    tree: *const AsymtreeTree,
    out: *mut usize,
) -> AsymtreeStatus {
    guard(|| {
        let n = match &handle(tree)?.inner {
            TreeInput::Rooted(t) => t.len(),
            TreeInput::Unrooted(t) => t.len(),
        };
        write_out(out, n)
    })
}

/// Whether the tree has a root.
///
/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_tree_is_rooted(
    tree: *const AsymtreeTree,
    out: *mut bool,
) -> AsymtreeStatus {
    guard(|| write_out(out, matches!(handle(tree)?.inner, TreeInput::Rooted(_))))
}

/// Canonical code as a new string.
///
/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_tree_canonical_code(
    tree: *const AsymtreeTree,
    out: *mut *mut c_char,
) -> AsymtreeStatus {
    guard(|| {
        let code = match &handle(tree)?.inner {
            TreeInput::Rooted(t) => t.canonical_code(None),
            TreeInput::Unrooted(t) => t.canonical_code(None),
        };
        write_string(out, code.to_string())
    })
}

/// Number of inequivalent asymmetrizing sets, in decimal.
///
/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_tree_count(
    tree: *const AsymtreeTree,
    out: *mut *mut c_char,
) -> AsymtreeStatus {
    guard(|| {
        let count = match &handle(tree)?.inner {
            TreeInput::Rooted(t) => count_rooted(t),
            TreeInput::Unrooted(t) => count_unrooted(t),
        };
        write_string(out, count.to_string())
    })
}

/// Motion. `*asymmetric` is set when no automorphism moves anything, and
/// `*moved` is then 0.
///
/// # Safety
/// `tree` must be a live handle and both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_tree_motion(
    tree: *const AsymtreeTree,
    moved: *mut usize,
    asymmetric: *mut bool,
) -> AsymtreeStatus {
    guard(|| {
        let m = match &handle(tree)?.inner {
            TreeInput::Rooted(t) => motion_rooted(t),
            TreeInput::Unrooted(t) => motion(t),
        };
        let (n, asym) = match m {
            MotionResult::Moved(n) => (n, false),
            MotionResult::Asymmetric => (0, true),
        };
        write_out(moved, n)?;
        write_out(asymmetric, asym)
    })
}

/// The first asymmetrizing set, rendered as `{a,b}`; `NotFound` if none.
///
/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_tree_find(
    tree: *const AsymtreeTree,
    out: *mut *mut c_char,
) -> AsymtreeStatus {
    guard(|| {
        let t = &handle(tree)?.inner;
        let labels = match t {
            TreeInput::Rooted(t) => t.labels(),
            TreeInput::Unrooted(t) => t.labels(),
        };
        let set = find_set(t)
            .ok_or_else(|| Failure::new(AsymtreeStatus::NotFound, "no asymmetrizing set"))?;
        write_string(out, set.render(labels))
    })
}

/// Checks a comma-separated label list.
///
/// # Safety
/// `tree` must be a live handle, `labels` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_tree_verify(
    tree: *const AsymtreeTree,
    labels: *const c_char,
    out: *mut bool,
) -> AsymtreeStatus {
    guard(|| {
        let t = &handle(tree)?.inner;
        let (names, context) = match t {
            TreeInput::Rooted(t) => (t.labels(), SetContext::Rooted),
            TreeInput::Unrooted(t) => (t.labels(), SetContext::Unrooted),
        };
        let members = read_str(labels)?
            .split(',')
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                names
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| parse_failure(format!("unknown vertex `{l}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        write_out(out, verify_set(t, &AsymSet::new(members, context)))
    })
}

/// Parses a presentation (`name: child*mult, ...` per line).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_presentation_parse(
    text: *const c_char,
    out: *mut *mut AsymtreePresentation,
) -> AsymtreeStatus {
    guard(|| {
        let inner = TreePresentation::parse(read_str(text)?).map_err(parse_failure)?;
        write_out(out, Box::into_raw(Box::new(AsymtreePresentation { inner })))
    })
}

/// # Safety
/// `p` must come from [`asymtree_presentation_parse`] and not have been
/// freed.
#[no_mangle]
pub unsafe extern "C" fn asymtree_presentation_free(p: *mut AsymtreePresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn presented_failure(e: PresentedError) -> Failure {
    Failure::new(AsymtreeStatus::Failed, e.to_string())
}

/// Asymmetrizing count as a cardinal, e.g. `0`, `24` or `beth_1`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_presentation_count(
    p: *const AsymtreePresentation,
    out: *mut *mut c_char,
) -> AsymtreeStatus {
    guard(|| {
        let report = count_presented(&handle(p)?.inner).map_err(presented_failure)?;
        write_string(out, report.count.to_string())
    })
}

/// Full report as one `key=value` line: classification, size, motion,
/// count, rank when defined, and the counting rule.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_presentation_report(
    p: *const AsymtreePresentation,
    out: *mut *mut c_char,
) -> AsymtreeStatus {
    guard(|| {
        let report = count_presented(&handle(p)?.inner).map_err(presented_failure)?;
        let line: Vec<String> = report
            .fields()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write_string(out, line.join(" "))
    })
}

/// Parses a `graph root <LABEL>` edge list.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_graph_parse(
    text: *const c_char,
    out: *mut *mut AsymtreeGraph,
) -> AsymtreeStatus {
    guard(|| {
        let inner = RootedGraph::parse(read_str(text)?).map_err(parse_failure)?;
        write_out(out, Box::into_raw(Box::new(AsymtreeGraph { inner })))
    })
}

/// # Safety
/// `g` must come from [`asymtree_graph_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn asymtree_graph_free(g: *mut AsymtreeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Component-wise asymmetrization of a rooted graph. On success writes the
/// set as `{a,b}`; `NotFound` when the procedure fails, with the reason in
/// the last error.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymtree_graph_asymmetrize(
    g: *const AsymtreeGraph,
    out: *mut *mut c_char,
) -> AsymtreeStatus {
    guard(|| {
        let g = &handle(g)?.inner;
        match asymmetrize_treelike(g, &Caps::from_env()) {
            Ok(Asymmetrization::Success(set)) => write_string(out, set.render(g.labels())),
            Ok(Asymmetrization::Failure(reason)) => Err(Failure::new(
                AsymtreeStatus::NotFound,
                format!("asymmetrization failed: {reason}"),
            )),
            Err(TreelikeError::Oracle(e)) => {
                Err(Failure::new(AsymtreeStatus::TooLarge, e.to_string()))
            }
            Err(e) => Err(Failure::new(AsymtreeStatus::Failed, e.to_string())),
        }
    })
}
