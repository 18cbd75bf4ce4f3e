//! C ABI over the primegap toolkit.
//!
//! Every fallible function returns a [`PgStatus`] and writes its result
//! through an out-pointer. The message of the most recent failure on the
//! calling thread is available from [`pg_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use primegap::cli::claims::verify_all;
use primegap::cli::config::{RunConfig, ZeroSource};
use primegap::explicit_bounds::{lower_bound_appendix, lower_bound_main, BoundParams};
use primegap::optimize::alpha_of_beta;
use primegap::primes::Sieve;
use primegap::quadrature::f_integral;
use primegap::zeta_zeros::ZeroTable;
use primegap::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Range = 3,
    Parse = 4,
    Io = 5,
    Budget = 6,
    Config = 7,
    Utf8 = 8,
    Panic = 9,
}

/// A loaded table of zero ordinates.
pub struct PgZeroTable(ZeroTable);

/// A prime sieve with a fixed upper limit.
pub struct PgSieve(Sieve);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PgStatus {
    match e {
        Error::Capacity { .. } | Error::InvalidRange(_) | Error::OutsideTable { .. } => {
            PgStatus::Range
        }
        Error::Domain(_) | Error::Overflow(_) => PgStatus::Domain,
        Error::EmptyTable
        | Error::Parse { .. }
        | Error::NotMonotone { .. }
        | Error::BelowTwoPi { .. } => PgStatus::Parse,
        Error::PairBudget { .. } | Error::QuadBudget { .. } => PgStatus::Budget,
        Error::Config(_) => PgStatus::Config,
        Error::Io { .. } => PgStatus::Io,
    }
}

/// Run `f`, translating errors and panics into status codes.
fn guard<F>(f: F) -> PgStatus
where
    F: FnOnce() -> Result<(), (PgStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            PgStatus::Panic
        }
    }
}

fn lift<T>(r: primegap::Result<T>) -> Result<T, (PgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PgStatus, String) {
    (PgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (PgStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (PgStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (PgStatus::Utf8, format!("{what} is not valid UTF-8")))
}

/// Message of the last failure on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `path` must be a NUL-terminated string and `out_table` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_zero_table_load(
    path: *const c_char,
    out_table: *mut *mut PgZeroTable,
) -> PgStatus {
    guard(|| {
        let slot = out(out_table, "out_table")?;
        let t = lift(ZeroTable::load(str_arg(path, "path")?))?;
        *slot = Box::into_raw(Box::new(PgZeroTable(t)));
        Ok(())
    })
}

/// The table compiled into the library.
///
/// # Safety
/// `out_table` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pg_zero_table_bundled(out_table: *mut *mut PgZeroTable) -> PgStatus {
    guard(|| {
        let slot = out(out_table, "out_table")?;
        *slot = Box::into_raw(Box::new(PgZeroTable(ZeroTable::bundled().clone())));
        Ok(())
    })
}

/// # Safety
/// `table` must come from a `pg_zero_table_*` constructor, or be null.
#[no_mangle]
pub unsafe extern "C" fn pg_zero_table_free(table: *mut PgZeroTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of ordinates in the table; 0 for a null handle.
///
/// # Safety
/// `table` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pg_zero_table_len(table: *const PgZeroTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.len())
}

/// `N(T)`, the number of ordinates in `(0, T]`.
///
/// # Safety
/// `table` must be a live handle and `out_n` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_zero_table_count(
    table: *const PgZeroTable,
    t: f64,
    out_n: *mut usize,
) -> PgStatus {
    guard(|| {
        let table = table.as_ref().ok_or_else(|| null("table"))?;
        let slot = out(out_n, "out_n")?;
        *slot = lift(table.0.count(t))?.n;
        Ok(())
    })
}

/// The sum over zeros `|γ| <= T` of the kernel transform at `(x, h)`.
///
/// # Safety
/// `table` must be a live handle and `out_value` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_zero_table_sigma1(
    table: *const PgZeroTable,
    x: f64,
    h: f64,
    t: f64,
    out_value: *mut f64,
) -> PgStatus {
    guard(|| {
        let table = table.as_ref().ok_or_else(|| null("table"))?;
        let slot = out(out_value, "out_value")?;
        *slot = lift(table.0.sigma1_exact(x, h, t))?;
        Ok(())
    })
}

/// A sieve able to answer queries up to `max`.
///
/// # Safety
/// `out_sieve` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pg_sieve_new(max: u64, out_sieve: *mut *mut PgSieve) -> PgStatus {
    guard(|| {
        let slot = out(out_sieve, "out_sieve")?;
        if max < 2 {
            return Err((PgStatus::Domain, format!("sieve maximum {max} below 2")));
        }
        *slot = Box::into_raw(Box::new(PgSieve(Sieve::with_max(max))));
        Ok(())
    })
}

/// # Safety
/// `sieve` must come from [`pg_sieve_new`], or be null.
#[no_mangle]
pub unsafe extern "C" fn pg_sieve_free(sieve: *mut PgSieve) {
    if !sieve.is_null() {
        drop(Box::from_raw(sieve));
    }
}

/// Number of primes in `[lo, hi]`.
///
/// # Safety
/// `sieve` must be a live handle and `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_sieve_prime_count(
    sieve: *const PgSieve,
    lo: u64,
    hi: u64,
    out_count: *mut u64,
) -> PgStatus {
    guard(|| {
        let sieve = sieve.as_ref().ok_or_else(|| null("sieve"))?;
        let slot = out(out_count, "out_count")?;
        let lo = lo.max(2);
        *slot = if hi < lo {
            0
        } else {
            let range = lift(sieve.0.sieve(lo, hi.max(lo + 1)))?;
            range.primes().take_while(|&p| p <= hi).count() as u64
        };
        Ok(())
    })
}

/// Smallest prime greater than `n`.
///
/// # Safety
/// `sieve` must be a live handle and `out_prime` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_sieve_next_prime(
    sieve: *const PgSieve,
    n: u64,
    out_prime: *mut u64,
) -> PgStatus {
    guard(|| {
        let sieve = sieve.as_ref().ok_or_else(|| null("sieve"))?;
        let slot = out(out_prime, "out_prime")?;
        *slot = lift(sieve.0.next_prime_after(n))?;
        Ok(())
    })
}

/// `F(y)` with its quadrature error estimate.
///
/// # Safety
/// `out_value` and `out_err` must be writable (`out_err` may be null).
#[no_mangle]
pub unsafe extern "C" fn pg_f_integral(
    y: f64,
    tol: f64,
    out_value: *mut f64,
    out_err: *mut f64,
) -> PgStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        let q = lift(f_integral(y, tol))?;
        *slot = q.value;
        if let Some(e) = out_err.as_mut() {
            *e = q.err_estimate;
        }
        Ok(())
    })
}

/// The constant `α(β)` of the mean-square route.
///
/// # Safety
/// `out_alpha` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pg_alpha_of_beta(beta: f64, tol: f64, out_alpha: *mut f64) -> PgStatus {
    guard(|| {
        let slot = out(out_alpha, "out_alpha")?;
        *slot = lift(alpha_of_beta(beta, tol))?;
        Ok(())
    })
}

/// Total of the Taylor-route lower bound at `(x, c, β)`.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pg_lower_bound_main(
    x: f64,
    c: f64,
    beta: f64,
    out_value: *mut f64,
) -> PgStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        let p = lift(BoundParams::new(x, c, beta))?;
        *slot = lift(lower_bound_main(&p))?.total;
        Ok(())
    })
}

/// Total of the mean-square lower bound at `(x, c, β)`.
///
/// # Safety
/// `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pg_lower_bound_appendix(
    x: f64,
    c: f64,
    beta: f64,
    tol: f64,
    out_value: *mut f64,
) -> PgStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        let p = lift(BoundParams::new(x, c, beta))?;
        let f = lift(f_integral(p.log_half_width * p.height, tol))?;
        *slot = lift(lower_bound_appendix(&p, &f))?.total;
        Ok(())
    })
}

/// Run every registered claim and return the JSON report; release it with
/// [`pg_string_free`]. `zeros_path` may be null for the bundled table.
/// `out_all_pass` (may be null) receives 1 when no claim failed.
///
/// # Safety
/// `zeros_path` must be null or NUL-terminated; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_verify_all_json(
    sieve_cap: u64,
    zeros_path: *const c_char,
    out_json: *mut *mut c_char,
    out_all_pass: *mut i32,
) -> PgStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let zeros = if zeros_path.is_null() {
            ZeroSource::Bundled
        } else {
            ZeroSource::File(str_arg(zeros_path, "zeros_path")?.into())
        };
        let cfg = RunConfig {
            sieve_cap,
            zeros,
            ..RunConfig::default()
        };
        let report = lift(verify_all(&cfg))?;
        let text = serde_json::to_string(&report).map_err(|e| (PgStatus::Config, e.to_string()))?;
        if let Some(p) = out_all_pass.as_mut() {
            *p = i32::from(report.all_pass());
        }
        *slot = CString::new(text)
            .map_err(|e| (PgStatus::Config, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
