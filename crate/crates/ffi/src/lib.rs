//! C ABI over the pointed-posets library.
//!
//! Every entry point returns a [`PpStatus`]; results go through out
//! pointers. Strings handed out are owned by the caller and must be released
//! with [`pp_string_free`]. After a failure, [`pp_last_error_message`]
//! describes it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pointed_posets::homology::{bounded_report, HomologyError};
use pointed_posets::identities::{closed_form, IdentityError};
use pointed_posets::partitions::{FamilySpec, PartitionError};
use pointed_posets::posetcore::{family_poset, FamilyPoset, PosetError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LimitExceeded = 3,
    NotBounded = 4,
    NoClosedForm = 5,
    Internal = 6,
}

/// Opaque handle to an enumerated family poset.
pub struct PpPoset {
    inner: FamilyPoset,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PpStatus, String);

impl Failure {
    fn new(status: PpStatus, msg: impl Into<String>) -> Self {
        Failure(status, msg.into())
    }
}

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        let status = match e {
            PartitionError::LimitExceeded { .. } => PpStatus::LimitExceeded,
            _ => PpStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<PosetError> for Failure {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::Partition(p) => p.into(),
            PosetError::NotBounded => Failure(PpStatus::NotBounded, e.to_string()),
            PosetError::SizeLimitExceeded { .. } => Failure(PpStatus::LimitExceeded, e.to_string()),
            _ => Failure(PpStatus::Internal, e.to_string()),
        }
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::NotBounded => Failure(PpStatus::NotBounded, e.to_string()),
            HomologyError::SizeLimitExceeded { .. } => Failure(PpStatus::LimitExceeded, e.to_string()),
            HomologyError::Poset(p) => p.into(),
        }
    }
}

impl From<IdentityError> for Failure {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::NoClosedForm(_) => Failure(PpStatus::NoClosedForm, e.to_string()),
            IdentityError::Partition(p) => p.into(),
            IdentityError::Poset(p) => p.into(),
            _ => Failure(PpStatus::Internal, e.to_string()),
        }
    }
}

fn set_last_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("nul bytes removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

/// Run `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            PpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(_) => {
            set_last_error(Some("internal panic".into()));
            PpStatus::Internal
        }
    }
}

unsafe fn spec_from(family: *const c_char, n: usize, i: i64) -> Result<FamilySpec, Failure> {
    if family.is_null() {
        return Err(Failure::new(PpStatus::NullPointer, "family is null"));
    }
    let name = CStr::from_ptr(family)
        .to_str()
        .map_err(|_| Failure::new(PpStatus::InvalidArgument, "family is not UTF-8"))?;
    let i = match i {
        i if i < 0 => None,
        i => Some(i as usize),
    };
    Ok(FamilySpec::from_parts(name, n, i)?)
}

unsafe fn handle<'a>(poset: *const PpPoset) -> Result<&'a PpPoset, Failure> {
    poset.as_ref().ok_or_else(|| Failure::new(PpStatus::NullPointer, "poset handle is null"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(PpStatus::NullPointer, "output pointer is null"));
    }
    let c = CString::new(s).map_err(|_| Failure::new(PpStatus::Internal, "string has an interior nul"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_value<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(PpStatus::NullPointer, "output pointer is null"));
    }
    *out = v;
    Ok(())
}

/// Enumerate a family and build its poset.
///
/// `family` is a family tag such as `"A"`, `"MA_fixed"` or `"beta"`; `i` is
/// the fixed parameter, or negative when the family takes none. Refuses
/// families with more than `cap` elements.
///
/// # Safety
/// `family` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pp_poset_new(
    family: *const c_char,
    n: usize,
    i: i64,
    cap: usize,
    out: *mut *mut PpPoset,
) -> PpStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::new(PpStatus::NullPointer, "output pointer is null"));
        }
        let spec = spec_from(family, n, i)?;
        let inner = family_poset(&spec, cap)?;
        *out = Box::into_raw(Box::new(PpPoset { inner }));
        Ok(())
    })
}

/// # Safety
/// `poset` must come from [`pp_poset_new`] and not be freed twice. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn pp_poset_free(poset: *mut PpPoset) {
    if !poset.is_null() {
        drop(Box::from_raw(poset));
    }
}

/// Number of elements.
///
/// # Safety
/// `poset` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_poset_len(poset: *const PpPoset, out: *mut usize) -> PpStatus {
    guard(|| write_value(out, handle(poset)?.inner.poset.len()))
}

/// Largest rank of an element.
///
/// # Safety
/// `poset` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_poset_rank(poset: *const PpPoset, out: *mut usize) -> PpStatus {
    guard(|| {
        let p = &handle(poset)?.inner.poset;
        write_value(out, p.ranks().iter().copied().max().unwrap_or(0))
    })
}

/// Canonical text of element `index`.
///
/// # Safety
/// `poset` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_poset_label(poset: *const PpPoset, index: usize, out: *mut *mut c_char) -> PpStatus {
    guard(|| {
        let p = &handle(poset)?.inner.poset;
        if index >= p.len() {
            return Err(Failure::new(PpStatus::InvalidArgument, format!("index {index} out of range")));
        }
        write_string(out, p.label(index).to_string())
    })
}

/// Möbius value from the bottom to the top, as a decimal string.
///
/// # Safety
/// `poset` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_poset_mobius(poset: *const PpPoset, out: *mut *mut c_char) -> PpStatus {
    guard(|| {
        let p = &handle(poset)?.inner.poset;
        let top = p.top().ok_or(PosetError::NotBounded)?;
        write_string(out, p.mobius(p.bottom(), top)?.to_string())
    })
}

/// Characteristic polynomial, e.g. `"x^2-6x+9"`.
///
/// # Safety
/// `poset` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_poset_charpoly(poset: *const PpPoset, out: *mut *mut c_char) -> PpStatus {
    guard(|| {
        let p = &handle(poset)?.inner.poset;
        write_string(out, p.characteristic_polynomial()?.to_string())
    })
}

/// Reduced homology of the proper part as JSON with keys `betti` and
/// `torsion`, indexed from degree -1.
///
/// # Safety
/// `poset` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_poset_homology_json(poset: *const PpPoset, out: *mut *mut c_char) -> PpStatus {
    guard(|| {
        let p = &handle(poset)?.inner.poset;
        let (_, h) = bounded_report(p)?;
        let json = serde_json::to_string(&h).map_err(|e| Failure::new(PpStatus::Internal, e.to_string()))?;
        write_string(out, json)
    })
}

/// Predicted characteristic polynomial of a family, without enumerating it.
///
/// # Safety
/// `family` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pp_closed_form(family: *const c_char, n: usize, i: i64, out: *mut *mut c_char) -> PpStatus {
    guard(|| {
        let spec = spec_from(family, n, i)?;
        write_string(out, closed_form(&spec)?.to_string())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null after a
/// success. The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
