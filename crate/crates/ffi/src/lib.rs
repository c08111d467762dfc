//! C ABI for the `genmat` library.
//!
//! Every entry point returns a [`GenmatStatus`]; on failure the message is
//! available from [`genmat_last_error`] on the same thread. Strings handed
//! out by the library must be released with [`genmat_string_free`], and
//! algebras with [`genmat_algebra_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use genmat::algebra::{is_hsop, is_noether_normalization, GradedAlgebra};
use genmat::cli::{self, CheckTask, CliError, InstanceFile, Options, Report};
use genmat::Error;

/// Result codes shared by all functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenmatStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, polynomial syntax or an ill-posed instance.
    InvalidInput = 3,
    /// The power criterion found nothing up to the configured bound.
    Inconclusive = 4,
    /// Every sampled candidate was rejected.
    Exhausted = 5,
    Panic = 6,
}

/// Optional overrides; zero means "not set" for every field except `seed`,
/// which is read only when `has_seed` is true.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct GenmatOptions {
    pub prime: u64,
    pub seed: u64,
    pub has_seed: bool,
    pub n_max: usize,
    pub trials: usize,
    pub max_tries: usize,
}

impl GenmatOptions {
    fn to_options(self) -> Options {
        let nz = |v: usize| (v != 0).then_some(v);
        Options {
            prime: (self.prime != 0).then_some(self.prime),
            seed: self.has_seed.then_some(self.seed),
            n_max: nz(self.n_max),
            trials: nz(self.trials),
            max_tries: nz(self.max_tries),
            ..Options::default()
        }
    }
}

/// Opaque graded algebra `k[x]/I`.
pub struct GenmatAlgebra {
    inner: GradedAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(GenmatStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match &e {
            CliError::Algebra(Error::Inconclusive(_)) => GenmatStatus::Inconclusive,
            CliError::Algebra(Error::ExchangeExhausted { .. }) => GenmatStatus::Exhausted,
            _ => GenmatStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        CliError::from(e).into()
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GenmatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GenmatStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GenmatStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GenmatStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(GenmatStatus::InvalidUtf8, format!("{name}: {e}")))
}

fn null(name: &str) -> Failure {
    Failure(GenmatStatus::NullArgument, format!("{name} is null"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes replaced").into_raw()
}

unsafe fn write_report(report: Report, out: *mut *mut c_char, verdict: *mut i32) {
    if !verdict.is_null() {
        *verdict = report.exit_code();
    }
    let json = serde_json::to_string(&report).expect("report serializes");
    *out = into_c_string(json);
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn genmat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn genmat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed before.
#[no_mangle]
pub unsafe extern "C" fn genmat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an algebra from the `ring` (and optional `field`) sections of an
/// instance document. `prime` overrides the document when nonzero.
///
/// # Safety
/// `instance_json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn genmat_algebra_new(
    instance_json: *const c_char,
    prime: u64,
    out: *mut *mut GenmatAlgebra,
) -> GenmatStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(instance_json, "instance_json")?;
        let file = InstanceFile::from_json(text)?;
        let field = file.resolve_prime((prime != 0).then_some(prime))?;
        let inner = file.build_algebra(field)?;
        *out = Box::into_raw(Box::new(GenmatAlgebra { inner }));
        Ok(())
    })
}

/// Frees an algebra. Null is ignored.
///
/// # Safety
/// `algebra` must come from [`genmat_algebra_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn genmat_algebra_free(algebra: *mut GenmatAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Krull dimension of the algebra.
///
/// # Safety
/// `algebra` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn genmat_algebra_dimension(
    algebra: *const GenmatAlgebra,
    out: *mut usize,
) -> GenmatStatus {
    guard(|| {
        let a = algebra.as_ref().ok_or_else(|| null("algebra"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = a.inner.dimension()?;
        Ok(())
    })
}

unsafe fn parse_elements(
    a: &GenmatAlgebra,
    elements: *const *const c_char,
    count: usize,
) -> Result<Vec<genmat::Polynomial>, Failure> {
    if count > 0 && elements.is_null() {
        return Err(null("elements"));
    }
    (0..count)
        .map(|i| {
            let s = read_str(*elements.add(i), &format!("elements[{i}]"))?;
            a.inner.ring().parse(s).map_err(Failure::from)
        })
        .collect()
}

/// Whether `elements` form a homogeneous system of parameters.
///
/// # Safety
/// `elements` must point to `count` NUL-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn genmat_algebra_is_hsop(
    algebra: *const GenmatAlgebra,
    elements: *const *const c_char,
    count: usize,
    out: *mut bool,
) -> GenmatStatus {
    guard(|| {
        let a = algebra.as_ref().ok_or_else(|| null("algebra"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let y = parse_elements(a, elements, count)?;
        *out = is_hsop(&a.inner, &y)?;
        Ok(())
    })
}

/// Whether `elements` (linear forms) give a graded Noether normalization.
///
/// # Safety
/// Same contract as [`genmat_algebra_is_hsop`].
#[no_mangle]
pub unsafe extern "C" fn genmat_algebra_is_noether_normalization(
    algebra: *const GenmatAlgebra,
    elements: *const *const c_char,
    count: usize,
    out: *mut bool,
) -> GenmatStatus {
    guard(|| {
        let a = algebra.as_ref().ok_or_else(|| null("algebra"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let y = parse_elements(a, elements, count)?;
        *out = is_noether_normalization(&a.inner, &y)?;
        Ok(())
    })
}

/// Runs a check task (`nn`, `hsop`, `reduction`, `minimal-reduction`,
/// `complete-reduction-ring`, `complete-reduction-ideals`) on an instance
/// document. On success `*report` receives the JSON report and `*verdict`
/// (if non-null) its exit code: 0 true, 1 false, 2 inconclusive.
///
/// # Safety
/// String arguments must be NUL-terminated; `report` writable; `options`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn genmat_check(
    task: *const c_char,
    instance_json: *const c_char,
    options: *const GenmatOptions,
    report: *mut *mut c_char,
    verdict: *mut i32,
) -> GenmatStatus {
    guard(|| {
        if report.is_null() {
            return Err(null("report"));
        }
        let task: CheckTask = read_str(task, "task")?
            .parse()
            .map_err(|e: String| Failure(GenmatStatus::InvalidInput, e))?;
        let text = read_str(instance_json, "instance_json")?;
        let opts = options.as_ref().copied().unwrap_or_default().to_options();
        write_report(cli::check_json(task, text, &opts)?, report, verdict);
        Ok(())
    })
}

/// Runs the `exchange` section of an instance document. An exhausted
/// exchange still produces a report, with `*verdict` set to 4.
///
/// # Safety
/// As for [`genmat_check`].
#[no_mangle]
pub unsafe extern "C" fn genmat_exchange(
    instance_json: *const c_char,
    options: *const GenmatOptions,
    report: *mut *mut c_char,
    verdict: *mut i32,
) -> GenmatStatus {
    guard(|| {
        if report.is_null() {
            return Err(null("report"));
        }
        let text = read_str(instance_json, "instance_json")?;
        let opts = options.as_ref().copied().unwrap_or_default().to_options();
        write_report(cli::exchange_json(text, &opts)?, report, verdict);
        Ok(())
    })
}

/// Runs the built-in quadric demonstration.
///
/// # Safety
/// `report` writable; `options` may be null.
#[no_mangle]
pub unsafe extern "C" fn genmat_demo(
    options: *const GenmatOptions,
    report: *mut *mut c_char,
    verdict: *mut i32,
) -> GenmatStatus {
    guard(|| {
        if report.is_null() {
            return Err(null("report"));
        }
        let opts = options.as_ref().copied().unwrap_or_default().to_options();
        write_report(cli::run_demo(&opts)?, report, verdict);
        Ok(())
    })
}
