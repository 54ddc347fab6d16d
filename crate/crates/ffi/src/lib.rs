//! C ABI for fixtures and signature estimates.
//!
//! Every entry point returns an [`FsigStatus`]; on failure the message is
//! available from [`fsig_last_error`] on the same thread. Strings handed out
//! by the library are released with [`fsig_string_free`], fixtures with
//! [`fsig_fixture_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fsig_core::groebner::Engine;
use fsig_core::io::{bundled_fixture, parse_fixture, to_json, Fixture};
use fsig_core::lab::signature_table;
use fsig_core::signature::{f_purity_test, signature_estimate, DivisorSpec, RingPresentation, Rounding};
use fsig_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsigStatus {
    Ok = 0,
    Usage = 1,
    Arithmetic = 2,
    Resource = 3,
    DegenerateDivisor = 4,
    OracleScope = 5,
    Parse = 6,
    NotArtinian = 7,
    EmptyScheme = 8,
    Io = 9,
    NullPointer = 10,
    Panic = 11,
}

impl From<&Error> for FsigStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Usage(_) => FsigStatus::Usage,
            Error::Arithmetic(_) => FsigStatus::Arithmetic,
            Error::Resource(_) => FsigStatus::Resource,
            Error::DegenerateDivisor(_) => FsigStatus::DegenerateDivisor,
            Error::OracleScope(_) => FsigStatus::OracleScope,
            Error::NotArtinian { .. } => FsigStatus::NotArtinian,
            Error::EmptyScheme => FsigStatus::EmptyScheme,
            Error::Parse { .. } => FsigStatus::Parse,
            Error::Io(_) | Error::Json(_) => FsigStatus::Io,
        }
    }
}

/// One estimate `s_e = length / q^d = num / den`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FsigSample {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    pub num: i64,
    pub den: i64,
}

/// Opaque parsed fixture with its presentation and a private basis cache.
pub struct FsigFixture {
    fixture: Fixture,
    presentation: RingPresentation,
    divisor: DivisorSpec,
    engine: Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FsigStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FsigStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            FsigStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            FsigStatus::from(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            FsigStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Core(Error::Usage(format!("{what} is not valid UTF-8"))))
}

unsafe fn handle<'a>(p: *const FsigFixture) -> Result<&'a FsigFixture, Failure> {
    p.as_ref().ok_or(Failure::Null("fixture"))
}

fn into_handle(fixture: Fixture) -> Result<*mut FsigFixture, Failure> {
    let engine = Engine::default();
    let presentation = fixture.presentation(&engine)?;
    let divisor = fixture.divisor_spec()?;
    Ok(Box::into_raw(Box::new(FsigFixture { fixture, presentation, divisor, engine })))
}

fn hand_out_string(s: String, out: *mut *mut c_char) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::Core(Error::Usage("string contains NUL".into())))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Parses fixture text. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fsig_fixture_parse(text: *const c_char, out: *mut *mut FsigFixture) -> FsigStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let fixture = parse_fixture(c_str(text, "text")?)?;
        *out = into_handle(fixture)?;
        Ok(())
    })
}

/// Loads one of the fixtures shipped with the library by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fsig_fixture_bundled(name: *const c_char, out: *mut *mut FsigFixture) -> FsigStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let name = c_str(name, "name")?;
        let fixture = bundled_fixture(name).ok_or_else(|| Error::Usage(format!("no bundled fixture {name:?}")))?;
        *out = into_handle(fixture)?;
        Ok(())
    })
}

/// # Safety
/// `fixture` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fsig_fixture_free(fixture: *mut FsigFixture) {
    if !fixture.is_null() {
        drop(Box::from_raw(fixture));
    }
}

/// Krull dimension of the fixture's ring.
///
/// # Safety
/// `fixture` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fsig_dimension(fixture: *const FsigFixture, out: *mut usize) -> FsigStatus {
    guard(|| {
        let f = handle(fixture)?;
        let out = out.as_mut().ok_or(Failure::Null("out"))?;
        *out = f.presentation.dimension();
        Ok(())
    })
}

/// Computes `s_e`, along the fixture's divisor when `with_divisor` is true.
///
/// # Safety
/// `fixture` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fsig_signature_estimate(
    fixture: *const FsigFixture,
    e: u32,
    with_divisor: bool,
    out: *mut FsigSample,
) -> FsigStatus {
    guard(|| {
        let f = handle(fixture)?;
        let out = out.as_mut().ok_or(Failure::Null("out"))?;
        let empty = DivisorSpec::empty();
        let delta = if with_divisor { &f.divisor } else { &empty };
        let s = signature_estimate(&f.presentation, e, delta, &f.engine)?;
        *out = FsigSample { e: s.e, q: s.q, length: s.length, num: *s.estimate.0.numer(), den: *s.estimate.0.denom() };
        Ok(())
    })
}

/// Fedder-type F-purity test at the distinguished point.
///
/// # Safety
/// `fixture` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fsig_f_pure(fixture: *const FsigFixture, out: *mut bool) -> FsigStatus {
    guard(|| {
        let f = handle(fixture)?;
        let out = out.as_mut().ok_or(Failure::Null("out"))?;
        *out = f_purity_test(&f.presentation, &f.engine)?;
        Ok(())
    })
}

/// JSON report of `s_1..s_emax`, in the same format as `fsig compute`.
/// Free the string with [`fsig_string_free`].
///
/// # Safety
/// `fixture` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fsig_report_json(
    fixture: *const FsigFixture,
    emax: u32,
    with_divisor: bool,
    out: *mut *mut c_char,
) -> FsigStatus {
    guard(|| {
        let f = handle(fixture)?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let empty = DivisorSpec::empty();
        let delta = if with_divisor { &f.divisor } else { &empty };
        let mut report = signature_table(&f.presentation, delta, emax, &[Rounding::CeilQm1], &f.engine)?;
        report.fixture = f.fixture.name.clone();
        hand_out_string(to_json(&report)?, out)
    })
}

/// Message for the last failed call on this thread, or null. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn fsig_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fsig_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
