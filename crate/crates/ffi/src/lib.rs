//! C ABI over `ymbv-core`.
//!
//! Every entry point returns a [`YmStatus`] and writes results through out
//! pointers. Objects cross the boundary as opaque handles that the caller
//! releases with the matching `*_free`. Strings returned to the caller are
//! NUL-terminated UTF-8 owned by the caller and released with
//! [`ymbv_string_free`]. After a non-`Ok` status, [`ymbv_last_error`]
//! describes the failure on the calling thread.
//!
//! Panics never unwind into C: they are caught and reported as
//! [`YmStatus::Internal`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ymbv_core::amplitudes::{homology_vanishing, Machine};
use ymbv_core::bv_infinity::{build, theta3_primal, verify_all, BvData, ThetaCertificate};
use ymbv_core::exact_arith::{FindInstanceOptions, Rat, GR};
use ymbv_core::vanishing::{check_vanishing, Case};
use ymbv_core::ym_complex::homotopy::alternate_candidates;
use ymbv_core::ym_complex::{homology_at, solve_h, verify_h, HSolution, Momentum4, StructureTables};
use ymbv_core::YmError;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YmStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidInput = 2,
    ZeroMomentum = 3,
    NotNull = 4,
    DegenerateKinematics = 5,
    Certificate = 6,
    ChecksumMismatch = 7,
    SolveFailed = 8,
    Internal = 9,
}

/// A solved homotopy `h`.
pub struct YmHomotopy {
    h: HSolution,
}

/// Solved θ tables through some arity, with the `h` they were built from.
pub struct YmBv {
    h: HSolution,
    data: BvData,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &YmError) -> YmStatus {
    match e {
        YmError::ZeroMomentum => YmStatus::ZeroMomentum,
        YmError::NotNull => YmStatus::NotNull,
        YmError::DegenerateKinematics | YmError::OnShellPole => YmStatus::DegenerateKinematics,
        YmError::Certificate(_) => YmStatus::Certificate,
        YmError::ChecksumMismatch { .. } => YmStatus::ChecksumMismatch,
        YmError::Inconsistent(_) | YmError::NotAffine(_) | YmError::NotFound(_) | YmError::Degree(_) => {
            YmStatus::SolveFailed
        }
        _ => YmStatus::InvalidInput,
    }
}

struct Fail(YmStatus, String);

impl From<YmError> for Fail {
    fn from(e: YmError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null_arg(name: &str) -> Fail {
    Fail(YmStatus::NullArgument, format!("`{name}` is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> YmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            YmStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(&m);
            s
        }
        Err(p) => {
            let m = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {m}"));
            YmStatus::Internal
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null_arg(name))
}

unsafe fn input<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null_arg(name))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null_arg(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(YmStatus::InvalidInput, format!("`{name}` is not UTF-8")))
}

fn give_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no NUL bytes").into_raw()
}

/// Version of the library as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ymbv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last non-`Ok` status on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn ymbv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn ymbv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// SHA-256 of the embedded structure tables, as 64 hex digits.
#[no_mangle]
pub unsafe extern "C" fn ymbv_fixture_sha256(out_hex: *mut *mut c_char) -> YmStatus {
    guard(|| {
        *out(out_hex, "out_hex")? = give_string(StructureTables::get().checksum.clone());
        Ok(())
    })
}

/// Solves for `h`. A nonzero `alternate` selects the second candidate
/// order, which yields a different homotopy.
#[no_mangle]
pub unsafe extern "C" fn ymbv_homotopy_solve(alternate: c_int, out_h: *mut *mut YmHomotopy) -> YmStatus {
    guard(|| {
        let slot = out(out_h, "out_h")?;
        let opts = if alternate != 0 {
            FindInstanceOptions { candidates: alternate_candidates(), ..Default::default() }
        } else {
            FindInstanceOptions::default()
        };
        let h = solve_h(StructureTables::get(), &opts)?;
        *slot = Box::into_raw(Box::new(YmHomotopy { h }));
        Ok(())
    })
}

/// Reads an `h/1` document and checks `h² = 0` and `dh + hd = □`.
#[no_mangle]
pub unsafe extern "C" fn ymbv_homotopy_from_json(json: *const c_char, out_h: *mut *mut YmHomotopy) -> YmStatus {
    guard(|| {
        let slot = out(out_h, "out_h")?;
        let h = HSolution::from_json(text(json, "json")?)?;
        if !verify_h(StructureTables::get(), &h.matrix).all_pass() {
            return Err(Fail(YmStatus::InvalidInput, "not a homotopy for the structure tables".into()));
        }
        *slot = Box::into_raw(Box::new(YmHomotopy { h }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ymbv_homotopy_to_json(h: *const YmHomotopy, out_json: *mut *mut c_char) -> YmStatus {
    guard(|| {
        let h = input(h, "h")?;
        *out(out_json, "out_json")? = give_string(h.h.to_json(StructureTables::get()));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ymbv_homotopy_sha256(h: *const YmHomotopy, out_hex: *mut *mut c_char) -> YmStatus {
    guard(|| {
        let h = input(h, "h")?;
        *out(out_hex, "out_hex")? = give_string(h.h.digest());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ymbv_homotopy_free(h: *mut YmHomotopy) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Solves θ₃, …, θ_max_arity for the given `h`; `max_arity` is 2, 3 or 4.
#[no_mangle]
pub unsafe extern "C" fn ymbv_bv_build(h: *const YmHomotopy, max_arity: usize, out_bv: *mut *mut YmBv) -> YmStatus {
    guard(|| {
        let h = input(h, "h")?;
        let slot = out(out_bv, "out_bv")?;
        if !(2..=4).contains(&max_arity) {
            return Err(Fail(YmStatus::InvalidInput, format!("max_arity {max_arity} outside 2..=4")));
        }
        let data = build(StructureTables::get(), &h.h, max_arity)?;
        *slot = Box::into_raw(Box::new(YmBv { h: h.h.clone(), data }));
        Ok(())
    })
}

/// Evaluates every axiom component. `out_free` receives the total number of
/// free parameters left by the θ solves, zero when they are unique.
#[no_mangle]
pub unsafe extern "C" fn ymbv_bv_verify(
    bv: *const YmBv,
    out_checked: *mut usize,
    out_failing: *mut usize,
    out_free: *mut usize,
) -> YmStatus {
    guard(|| {
        let bv = input(bv, "bv")?;
        let (checked, failing, free) = (out(out_checked, "out_checked")?, out(out_failing, "out_failing")?, out(out_free, "out_free")?);
        let report = verify_all(&bv.data);
        *checked = report.verdicts.len();
        *failing = report.failures().count();
        *free = bv.data.solves.iter().map(|s| s.free.len()).sum();
        Ok(())
    })
}

/// The `theta/1` certificate for these tables.
#[no_mangle]
pub unsafe extern "C" fn ymbv_bv_certificate(bv: *const YmBv, out_json: *mut *mut c_char) -> YmStatus {
    guard(|| {
        let bv = input(bv, "bv")?;
        let slot = out(out_json, "out_json")?;
        let t = StructureTables::get();
        let cert = ThetaCertificate::new(t, &bv.h, &bv.data, verify_all(&bv.data));
        *slot = give_string(cert.to_json());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ymbv_bv_free(bv: *mut YmBv) {
    if !bv.is_null() {
        drop(Box::from_raw(bv));
    }
}

/// Replays a `theta/1` certificate against `h`. `out_pass` is 1 when the
/// recomputed verdicts match the stored ones and all pass.
#[no_mangle]
pub unsafe extern "C" fn ymbv_certificate_recheck(
    json: *const c_char,
    h: *const YmHomotopy,
    out_pass: *mut c_int,
) -> YmStatus {
    guard(|| {
        let h = input(h, "h")?;
        let pass = out(out_pass, "out_pass")?;
        let cert = ThetaCertificate::from_json(text(json, "json")?)?;
        let report = cert.recheck(StructureTables::get(), &h.h)?;
        *pass = c_int::from(report.all_pass());
        Ok(())
    })
}

fn momentum(num: &[i64; 4], den: &[i64; 4]) -> Result<Momentum4, Fail> {
    let mut k = [GR::zero(), GR::zero(), GR::zero(), GR::zero()];
    for mu in 0..4 {
        if den[mu] == 0 {
            return Err(Fail(YmStatus::InvalidInput, format!("zero denominator in component {mu}")));
        }
        k[mu] = GR::real(Rat::new(num[mu], den[mu]));
    }
    Ok(Momentum4(k))
}

unsafe fn four<'a, T>(p: *const T, name: &str) -> Result<&'a [T; 4], Fail> {
    p.cast::<[T; 4]>().as_ref().ok_or_else(|| null_arg(name))
}

/// Homology dimensions in unshifted degrees 0..3 at the momentum with
/// components `num[μ] / den[μ]`. All three arrays have 4 elements.
#[no_mangle]
pub unsafe extern "C" fn ymbv_homology_dims(num: *const i64, den: *const i64, out_dims: *mut usize) -> YmStatus {
    guard(|| {
        let k = momentum(four(num, "num")?, four(den, "den")?)?;
        let slot = out(out_dims.cast::<[usize; 4]>(), "out_dims")?;
        *slot = homology_at(StructureTables::get(), &k)?.dims;
        Ok(())
    })
}

/// Checks that the ternary tree sum vanishes on homology for every
/// combination of basis classes at `configs` random null configurations.
/// `out_nonzero` receives the number of nonvanishing combinations.
#[no_mangle]
pub unsafe extern "C" fn ymbv_bcj_check(
    h: *const YmHomotopy,
    n: usize,
    configs: usize,
    seed: u64,
    out_nonzero: *mut usize,
) -> YmStatus {
    guard(|| {
        let h = input(h, "h")?;
        let slot = out(out_nonzero, "out_nonzero")?;
        if !(3..=5).contains(&n) || configs == 0 {
            return Err(Fail(YmStatus::InvalidInput, format!("n = {n}, configs = {configs}")));
        }
        let t = StructureTables::get();
        let data = build(t, &h.h, 3)?;
        let th = theta3_primal(t, &data.theta[3]);
        let m = Machine::new(t, &h.h).with_theta3(&th);
        let verdicts = homology_vanishing(&m, n, configs, seed)?;
        *slot = verdicts.iter().map(|v| v.nonzero.len()).sum();
        Ok(())
    })
}

/// `dim H⁰` and `dim H¹` of the complex `C_ℓ` for `case` 1 or 2 and `n`
/// blocks (1 or 2).
#[no_mangle]
pub unsafe extern "C" fn ymbv_vanishing(case_: u8, n: usize, ell: i32, out_h0: *mut usize, out_h1: *mut usize) -> YmStatus {
    guard(|| {
        let (h0, h1) = (out(out_h0, "out_h0")?, out(out_h1, "out_h1")?);
        let case = Case::from_number(case_).ok_or_else(|| Fail(YmStatus::InvalidInput, format!("case {case_}")))?;
        if !(1..=2).contains(&n) {
            return Err(Fail(YmStatus::InvalidInput, format!("n = {n}")));
        }
        let r = check_vanishing(case, n, ell);
        *h0 = r.dim_h0;
        *h1 = r.dim_h1;
        Ok(())
    })
}
