//! C interface.
//!
//! Every call returns a [`FreesubStatus`]; results go through out-pointers.
//! Graphs and subgroup sets are opaque handles owned by the caller and
//! released with [`freesub_graph_free`] / [`freesub_set_free`]. Strings
//! returned by the library are released with [`freesub_string_free`].
//! After a failure, [`freesub_last_error`] describes it (per thread).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use freesub::properties::{self, PropertyPredicate};
use freesub::{algext, format, lattice, words, Error, StallingsGraph, SubgroupSet, Word};

/// Opaque subgroup handle.
pub struct FreesubGraph(StallingsGraph);

/// Opaque handle to a canonically ordered set of subgroups.
pub struct FreesubSet(SubgroupSet);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreesubStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    RankMismatch = 4,
    NotSubgroup = 5,
    NotMember = 6,
    InvalidPrime = 7,
    BudgetExceeded = 8,
    InternalInconsistency = 9,
    OutOfRange = 10,
    Panic = 11,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(FreesubStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) | Error::InvalidRank(_) | Error::LetterOutOfRange { .. } | Error::EmptyWord => {
                FreesubStatus::Parse
            }
            Error::InvalidPartition(_) => FreesubStatus::Parse,
            Error::RankMismatch { .. } => FreesubStatus::RankMismatch,
            Error::NotSubgroup => FreesubStatus::NotSubgroup,
            Error::NotMember(_) => FreesubStatus::NotMember,
            Error::InvalidPrime(_) => FreesubStatus::InvalidPrime,
            Error::BudgetExceeded(_) => FreesubStatus::BudgetExceeded,
            Error::InternalInconsistency(_) => FreesubStatus::InternalInconsistency,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FreesubStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FreesubStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside freesub".into());
            FreesubStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(FreesubStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(FreesubStatus::InvalidUtf8, e.to_string()))
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(FreesubStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(FreesubStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut FreesubGraph, g: StallingsGraph) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(FreesubStatus::NullPointer, "null output pointer".into()));
    }
    out.write(Box::into_raw(Box::new(FreesubGraph(g))));
    Ok(())
}

unsafe fn put_set(out: *mut *mut FreesubSet, s: SubgroupSet) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(FreesubStatus::NullPointer, "null output pointer".into()));
    }
    out.write(Box::into_raw(Box::new(FreesubSet(s))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(FreesubStatus::Parse, e.to_string()))?;
    put(out, c.into_raw())
}

/// Copy of the last error message on this thread, or null if the last
/// call succeeded. Free with `freesub_string_free`.
#[no_mangle]
pub extern "C" fn freesub_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn freesub_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Subgroup generated by comma separated words such as `"ab,acba"`.
///
/// # Safety
/// `gens` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_graph_build(
    rank: usize,
    gens: *const c_char,
    out: *mut *mut FreesubGraph,
) -> FreesubStatus {
    guard(|| {
        let words = words::parse_word_list(text(gens)?, rank)?;
        put_graph(out, StallingsGraph::build(rank, &words)?)
    })
}

/// # Safety
/// `json` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_graph_from_json(json: *const c_char, out: *mut *mut FreesubGraph) -> FreesubStatus {
    guard(|| put_graph(out, format::from_json(text(json)?)?))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_graph_to_json(g: *const FreesubGraph, out: *mut *mut c_char) -> FreesubStatus {
    guard(|| put_string(out, format::to_json(&borrow(g)?.0)))
}

/// # Safety
/// `g` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn freesub_graph_free(g: *mut FreesubGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Rank of the subgroup (not of the ambient group).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_graph_rank(g: *const FreesubGraph, out: *mut usize) -> FreesubStatus {
    guard(|| put(out, borrow(g)?.0.rank()))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_graph_vertex_count(g: *const FreesubGraph, out: *mut usize) -> FreesubStatus {
    guard(|| put(out, borrow(g)?.0.vertex_count()))
}

/// # Safety
/// `g` must be a live handle, `word` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_graph_contains(
    g: *const FreesubGraph,
    word: *const c_char,
    out: *mut bool,
) -> FreesubStatus {
    guard(|| {
        let h = &borrow(g)?.0;
        let w = Word::parse_in_rank(text(word)?, h.alphabet_rank())?;
        put(out, h.contains(&w))
    })
}

/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_graph_equal(
    a: *const FreesubGraph,
    b: *const FreesubGraph,
    out: *mut bool,
) -> FreesubStatus {
    guard(|| put(out, borrow(a)?.0 == borrow(b)?.0))
}

/// Whether `a ≤ b`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_graph_leq(
    a: *const FreesubGraph,
    b: *const FreesubGraph,
    out: *mut bool,
) -> FreesubStatus {
    guard(|| put(out, borrow(a)?.0.is_subgroup_of(&borrow(b)?.0)))
}

/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_intersect(
    a: *const FreesubGraph,
    b: *const FreesubGraph,
    out: *mut *mut FreesubGraph,
) -> FreesubStatus {
    guard(|| put_graph(out, lattice::intersect(&borrow(a)?.0, &borrow(b)?.0)?))
}

/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_join(
    a: *const FreesubGraph,
    b: *const FreesubGraph,
    out: *mut *mut FreesubGraph,
) -> FreesubStatus {
    guard(|| put_graph(out, lattice::join(&borrow(a)?.0, &borrow(b)?.0)?))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_fringe(g: *const FreesubGraph, out: *mut *mut FreesubSet) -> FreesubStatus {
    guard(|| put_set(out, lattice::fringe(&borrow(g)?.0)))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_algebraic_extensions(
    g: *const FreesubGraph,
    out: *mut *mut FreesubSet,
) -> FreesubStatus {
    guard(|| put_set(out, algext::algebraic_extensions(&borrow(g)?.0)?))
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_set_len(s: *const FreesubSet, out: *mut usize) -> FreesubStatus {
    guard(|| put(out, borrow(s)?.0.len()))
}

/// New handle for member `index` of the set.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_set_get(
    s: *const FreesubSet,
    index: usize,
    out: *mut *mut FreesubGraph,
) -> FreesubStatus {
    guard(|| {
        let set = &borrow(s)?.0;
        let g = set
            .members()
            .get(index)
            .ok_or_else(|| Failure(FreesubStatus::OutOfRange, format!("index {index} of {}", set.len())))?;
        put_graph(out, g.clone())
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn freesub_set_free(s: *mut FreesubSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Tests `pure`, `p-pure:<p>`, `malnormal`, `ealg-closed` or `compressed`.
///
/// # Safety
/// `g` must be a live handle, `property` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_is_property(
    g: *const FreesubGraph,
    property: *const c_char,
    out: *mut bool,
) -> FreesubStatus {
    guard(|| {
        let h = &borrow(g)?.0;
        let answer = match text(property)? {
            "compressed" => algext::is_compressed(h)?,
            p => p.parse::<PropertyPredicate>()?.holds(h)?,
        };
        put(out, answer)
    })
}

/// Closure for `pure`, `p-pure:<p>`, `malnormal` or `ealg`.
///
/// # Safety
/// `g` must be a live handle, `property` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn freesub_closure(
    g: *const FreesubGraph,
    property: *const c_char,
    out: *mut *mut FreesubGraph,
) -> FreesubStatus {
    guard(|| {
        let p: PropertyPredicate = text(property)?.parse()?;
        put_graph(out, properties::property_closure(&borrow(g)?.0, p)?)
    })
}
