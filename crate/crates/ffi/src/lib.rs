//! C ABI over the `alcs` index.
//!
//! Indexes are opaque heap handles. Every call returns an [`AlcsStatus`];
//! on failure a message is kept per thread and read back with
//! [`alcs_last_error_message`]. Panics are caught at the boundary and
//! reported as [`AlcsStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use alcs::{Algorithm, BuildOptions, Error};

/// Opaque index handle.
pub struct AlcsIndex {
    inner: alcs::AlcsIndex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlcsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidEpsilon = 3,
    Io = 4,
    BadMagic = 5,
    UnsupportedVersion = 6,
    ChecksumMismatch = 7,
    Truncated = 8,
    Malformed = 9,
    PersistentCollisions = 10,
    Panic = 11,
}

pub const ALCS_ALGORITHM_NAIVE: u32 = 0;
pub const ALCS_ALGORITHM_PRUNED: u32 = 1;

/// Query answer. Spans are 1-based and closed; `length == 0` means no
/// common substring, and then `t_pos == 0`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AlcsQueryResult {
    pub length: u64,
    pub p_start: u64,
    pub p_end: u64,
    pub t_pos: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', "\\0")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> AlcsStatus {
    match e {
        Error::InvalidEpsilon(_) => AlcsStatus::InvalidEpsilon,
        Error::InvalidMaxLen | Error::TextTooLong(_) | Error::NotPermutation => AlcsStatus::InvalidArgument,
        Error::PersistentCollisions(_) => AlcsStatus::PersistentCollisions,
        Error::BadMagic(_) => AlcsStatus::BadMagic,
        Error::UnsupportedVersion(_) => AlcsStatus::UnsupportedVersion,
        Error::ChecksumMismatch { .. } => AlcsStatus::ChecksumMismatch,
        Error::Truncated => AlcsStatus::Truncated,
        Error::Malformed(_) => AlcsStatus::Malformed,
        Error::Io(_) => AlcsStatus::Io,
    }
}

struct Fail(AlcsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(AlcsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> AlcsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AlcsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            AlcsStatus::Panic
        }
    }
}

/// A byte slice from a pointer that may be null when `len == 0`.
unsafe fn bytes<'a>(data: *const u8, len: usize, what: &str) -> Result<&'a [u8], Fail> {
    if len == 0 {
        Ok(&[])
    } else if data.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(data, len))
    }
}

unsafe fn index_ref<'a>(index: *const AlcsIndex) -> Result<&'a alcs::AlcsIndex, Fail> {
    index.as_ref().map(|h| &h.inner).ok_or_else(|| null("index"))
}

unsafe fn c_path<'a>(path: *const c_char) -> Result<&'a str, Fail> {
    if path.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(path)
        .to_str()
        .map_err(|_| Fail(AlcsStatus::InvalidArgument, "path is not valid UTF-8".into()))
}

unsafe fn emit(out: *mut *mut AlcsIndex, inner: alcs::AlcsIndex) {
    *out = Box::into_raw(Box::new(AlcsIndex { inner }));
}

/// Builds an index over `text[0..len]`.
///
/// `seed` may be null for an entropy-drawn seed. `max_pattern_len == 0`
/// means no cap.
///
/// # Safety
/// `text` must point to `len` readable bytes, `seed` must be null or valid,
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alcs_build(
    text: *const u8,
    len: usize,
    epsilon: f64,
    seed: *const u64,
    max_pattern_len: usize,
    out: *mut *mut AlcsIndex,
) -> AlcsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = bytes(text, len, "text")?;
        let opts = BuildOptions {
            seed: seed.as_ref().copied(),
            max_pattern_len: (max_pattern_len != 0).then_some(max_pattern_len),
        };
        emit(out, alcs::AlcsIndex::build(text, epsilon, opts)?);
        Ok(())
    })
}

/// Releases an index. Null is ignored.
///
/// # Safety
/// `index` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn alcs_index_free(index: *mut AlcsIndex) {
    if !index.is_null() {
        drop(Box::from_raw(index));
    }
}

/// Text length, or 0 for a null handle.
///
/// # Safety
/// `index` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alcs_index_n(index: *const AlcsIndex) -> u64 {
    index.as_ref().map_or(0, |h| h.inner.n() as u64)
}

/// Number of LZ77 phrases, or 0 for a null handle.
///
/// # Safety
/// `index` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn alcs_index_z(index: *const AlcsIndex) -> u64 {
    index.as_ref().map_or(0, |h| h.inner.z() as u64)
}

/// `algorithm` is `ALCS_ALGORITHM_NAIVE` or `ALCS_ALGORITHM_PRUNED`.
///
/// # Safety
/// `index` must be a live handle, `pattern` must point to `len` readable
/// bytes, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alcs_query(
    index: *const AlcsIndex,
    pattern: *const u8,
    len: usize,
    algorithm: u32,
    out: *mut AlcsQueryResult,
) -> AlcsStatus {
    guard(|| {
        let index = index_ref(index)?;
        let pattern = bytes(pattern, len, "pattern")?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let algo = match algorithm {
            ALCS_ALGORITHM_NAIVE => Algorithm::Naive,
            ALCS_ALGORITHM_PRUNED => Algorithm::Pruned,
            a => return Err(Fail(AlcsStatus::InvalidArgument, format!("unknown algorithm {a}"))),
        };
        let r = alcs::query(index, pattern, algo);
        *out = if r.is_empty() {
            AlcsQueryResult::default()
        } else {
            AlcsQueryResult {
                length: r.length as u64,
                p_start: r.p_start as u64,
                p_end: r.p_end as u64,
                t_pos: r.t_pos.map_or(0, |t| t as u64),
            }
        };
        Ok(())
    })
}

/// Writes the index file to `path`.
///
/// # Safety
/// `index` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn alcs_save_file(index: *const AlcsIndex, path: *const c_char) -> AlcsStatus {
    guard(|| {
        let index = index_ref(index)?;
        let path = c_path(path)?;
        let file = std::fs::File::create(path).map_err(|e| Fail(AlcsStatus::Io, format!("{path}: {e}")))?;
        alcs::io::save(index, std::io::BufWriter::new(file))?;
        Ok(())
    })
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn alcs_load_file(path: *const c_char, out: *mut *mut AlcsIndex) -> AlcsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let path = c_path(path)?;
        let data = std::fs::read(path).map_err(|e| Fail(AlcsStatus::Io, format!("{path}: {e}")))?;
        emit(out, alcs::io::from_bytes(&data)?);
        Ok(())
    })
}

/// Serializes the index into a fresh buffer, released with
/// [`alcs_bytes_free`].
///
/// # Safety
/// `index` must be a live handle; `out_data` and `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn alcs_serialize(
    index: *const AlcsIndex,
    out_data: *mut *mut u8,
    out_len: *mut usize,
) -> AlcsStatus {
    guard(|| {
        let index = index_ref(index)?;
        if out_data.is_null() || out_len.is_null() {
            return Err(null("out"));
        }
        let buf = alcs::io::to_bytes(index).into_boxed_slice();
        *out_len = buf.len();
        *out_data = Box::into_raw(buf) as *mut u8;
        Ok(())
    })
}

/// # Safety
/// `data` and `len` must come from one [`alcs_serialize`] call, or `data`
/// must be null.
#[no_mangle]
pub unsafe extern "C" fn alcs_bytes_free(data: *mut u8, len: usize) {
    if !data.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(data, len)));
    }
}

/// # Safety
/// `data` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn alcs_load_bytes(data: *const u8, len: usize, out: *mut *mut AlcsIndex) -> AlcsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let data = bytes(data, len, "data")?;
        emit(out, alcs::io::from_bytes(data)?);
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn alcs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
