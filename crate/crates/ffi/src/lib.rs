//! C ABI over `injclass`. Values live behind opaque handles created by the `*_parse`
//! functions and released by the matching `*_free`. Every call returns an [`InjStatus`];
//! results go through out-pointers. The message of the last failure on the calling thread
//! is available from [`inj_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use injclass::concrete::{factor_into_conjugates, DressedMap, Witnesses};
use injclass::cycletype::{CycleType, ExtNat};
use injclass::harness::{run_suite, Suite, SuiteConfig};
use injclass::numonoid::NumericalMonoid;
use injclass::submonoid::SubmonoidDescriptor;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InjStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// The value is well formed but violates a validity rule or a precondition.
    Invalid = 4,
    /// The output buffer is too small; the required length is still reported.
    BufferTooSmall = 5,
    Panic = 6,
}

pub struct InjCycleType(CycleType);
pub struct InjMonoid(NumericalMonoid);
pub struct InjDressedMap(DressedMap);
pub struct InjDescriptor(SubmonoidDescriptor);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

type Res<T> = Result<T, (InjStatus, String)>;

fn guard(f: impl FnOnce() -> Res<()>) -> InjStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            InjStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            InjStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Res<&'a str> {
    if s.is_null() {
        return Err((InjStatus::NullArgument, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (InjStatus::InvalidUtf8, e.to_string()))
}

unsafe fn get<'a, T>(p: *const T) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| (InjStatus::NullArgument, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return Err((InjStatus::NullArgument, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn invalid(e: impl ToString) -> (InjStatus, String) {
    (InjStatus::Invalid, e.to_string())
}

fn parse<T: std::str::FromStr<Err = injclass::parse::ParseError>>(s: &str) -> Res<T> {
    s.parse().map_err(|e: injclass::parse::ParseError| (InjStatus::Parse, e.to_string()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    let c = CString::new(s).map_err(invalid)?;
    put(out, c.into_raw())
}

unsafe fn put_handle<T>(out: *mut *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return Err((InjStatus::NullArgument, "null output pointer".into()));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failed call on this thread; empty after a success. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn inj_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn inj_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a cycle type such as `ct(open=0,fwd=1,default=0,2:3)`.
///
/// # Safety
/// `s` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_cycle_type_parse(s: *const c_char, out: *mut *mut InjCycleType) -> InjStatus {
    guard(|| {
        let t: CycleType = parse(text(s)?)?;
        t.validate().map_err(invalid)?;
        put_handle(out, InjCycleType(t))
    })
}

/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn inj_cycle_type_free(t: *mut InjCycleType) {
    free(t)
}

/// Normal form of a cycle type; free the result with [`inj_string_free`].
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_cycle_type_to_string(t: *const InjCycleType, out: *mut *mut c_char) -> InjStatus {
    guard(|| put_string(out, get(t)?.0.to_string()))
}

/// Coimage size; `*infinite` is set when it is infinite, in which case `*size` is 0.
///
/// # Safety
/// `t` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_cycle_type_coimage(t: *const InjCycleType, size: *mut u64, infinite: *mut bool) -> InjStatus {
    guard(|| {
        let c = get(t)?.0.coimage();
        put(infinite, c == ExtNat::Omega)?;
        put(size, c.finite().unwrap_or(0))
    })
}

/// Whether the two types are equal, i.e. their maps are conjugate.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_cycle_type_conjugate(a: *const InjCycleType, b: *const InjCycleType, out: *mut bool) -> InjStatus {
    guard(|| put(out, get(a)?.0.conjugate_equal(&get(b)?.0)))
}

/// The finitary relation.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_cycle_type_approx_fin(a: *const InjCycleType, b: *const InjCycleType, out: *mut bool) -> InjStatus {
    guard(|| put(out, get(a)?.0.approx_fin(&get(b)?.0)))
}

/// The even relation.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_cycle_type_approx_even(a: *const InjCycleType, b: *const InjCycleType, out: *mut bool) -> InjStatus {
    guard(|| put(out, get(a)?.0.approx_even(&get(b)?.0)))
}

/// Type after cutting an `n`-cycle off an infinite cycle.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_cycle_type_split(t: *const InjCycleType, n: u64, out: *mut *mut InjCycleType) -> InjStatus {
    guard(|| put_handle(out, InjCycleType(get(t)?.0.split_cycle(n).map_err(invalid)?)))
}

/// Type after splicing an `n`-cycle into an infinite cycle.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_cycle_type_merge(t: *const InjCycleType, n: u64, out: *mut *mut InjCycleType) -> InjStatus {
    guard(|| put_handle(out, InjCycleType(get(t)?.0.merge_cycle(n).map_err(invalid)?)))
}

/// Parses a numerical monoid such as `nm(3,5)`.
///
/// # Safety
/// `s` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_monoid_parse(s: *const c_char, out: *mut *mut InjMonoid) -> InjStatus {
    guard(|| put_handle(out, InjMonoid(parse(text(s)?)?)))
}

/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn inj_monoid_free(m: *mut InjMonoid) {
    free(m)
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_monoid_contains(m: *const InjMonoid, n: u64, out: *mut bool) -> InjStatus {
    guard(|| put(out, get(m)?.0.contains(n)))
}

/// Copies the minimal generators, ascending, into `buf`. `*len` receives their number
/// even when `cap` is too small.
///
/// # Safety
/// `m` must be a live handle; `buf` must hold `cap` values (it may be null when `cap` is 0);
/// `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_monoid_min_gens(m: *const InjMonoid, buf: *mut u64, cap: usize, len: *mut usize) -> InjStatus {
    guard(|| {
        let gens = get(m)?.0.min_gens();
        put(len, gens.len())?;
        if gens.len() > cap {
            return Err((InjStatus::BufferTooSmall, format!("need room for {} generators", gens.len())));
        }
        if !gens.is_empty() {
            if buf.is_null() {
                return Err((InjStatus::NullArgument, "null buffer".into()));
            }
            ptr::copy_nonoverlapping(gens.as_ptr(), buf, gens.len());
        }
        Ok(())
    })
}

/// Parses a dressed map such as `dmap(p=perm((0 1)),t=ct(open=0,fwd=1,default=0),q=perm())`.
///
/// # Safety
/// `s` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_dmap_parse(s: *const c_char, out: *mut *mut InjDressedMap) -> InjStatus {
    guard(|| put_handle(out, InjDressedMap(parse(text(s)?)?)))
}

/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn inj_dmap_free(m: *mut InjDressedMap) {
    free(m)
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_dmap_eval(m: *const InjDressedMap, x: u64, out: *mut u64) -> InjStatus {
    guard(|| put(out, get(m)?.0.eval(x)))
}

/// Preimage of `y`; `*found` is false for points outside the image.
///
/// # Safety
/// `m` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_dmap_preimage(m: *const InjDressedMap, y: u64, out: *mut u64, found: *mut bool) -> InjStatus {
    guard(|| {
        let p = get(m)?.0.preimage(y);
        put(found, p.is_some())?;
        put(out, p.unwrap_or(0))
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_dmap_exact_type(m: *const InjDressedMap, out: *mut *mut InjCycleType) -> InjStatus {
    guard(|| put_handle(out, InjCycleType(get(m)?.0.exact_type())))
}

/// Decides whether a map of type `th` is a product of conjugates of maps of types `tf` and
/// `tg`. `*verified` is set when witnesses were built and checked on `0..window`.
///
/// # Safety
/// The type handles must be live; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_factor(
    tf: *const InjCycleType,
    tg: *const InjCycleType,
    th: *const InjCycleType,
    window: u64,
    decision: *mut bool,
    verified: *mut bool,
) -> InjStatus {
    guard(|| {
        let r = factor_into_conjugates(&get(tf)?.0, &get(tg)?.0, &get(th)?.0, window).map_err(invalid)?;
        put(decision, r.decision)?;
        put(verified, matches!(r.witnesses, Witnesses::Found(_)))
    })
}

/// Parses a submonoid descriptor line. The descriptor is not validated here.
///
/// # Safety
/// `s` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_descriptor_parse(s: *const c_char, out: *mut *mut InjDescriptor) -> InjStatus {
    guard(|| put_handle(out, InjDescriptor(parse(text(s)?)?)))
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn inj_descriptor_free(d: *mut InjDescriptor) {
    free(d)
}

/// `*ok` is false when the descriptor has violations; they are listed, one per line, in
/// [`inj_last_error`].
///
/// # Safety
/// `d` must be a live handle; `ok` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_descriptor_validate(d: *const InjDescriptor, ok: *mut bool) -> InjStatus {
    let mut report = String::new();
    let status = guard(|| {
        let v = get(d)?.0.violations();
        report = v.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
        put(ok, v.is_empty())
    });
    if status == InjStatus::Ok {
        set_error(report);
    }
    status
}

/// Membership of maps of type `t`; fails with `Invalid` if the descriptor is invalid.
///
/// # Safety
/// `d` and `t` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_descriptor_member(d: *const InjDescriptor, t: *const InjCycleType, out: *mut bool) -> InjStatus {
    guard(|| put(out, get(d)?.0.member(&get(t)?.0).map_err(invalid)?))
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_descriptor_to_string(d: *const InjDescriptor, out: *mut *mut c_char) -> InjStatus {
    guard(|| put_string(out, get(d)?.0.to_string()))
}

/// Runs a property suite by name; `*passed` is true when no trial failed.
///
/// # Safety
/// `suite` must be a nul-terminated string; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn inj_verify(suite: *const c_char, trials: u64, seed: u64, window: u64, passed: *mut bool) -> InjStatus {
    guard(|| {
        let suite: Suite = text(suite)?.parse().map_err(invalid)?;
        let report = run_suite(&SuiteConfig { seed, trials, window, suite });
        put(passed, report.ok())
    })
}
