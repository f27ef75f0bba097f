//! C ABI over the hyperzoom geometry kernel and discrete camera filters.
//!
//! Every point carries two footprint coordinates; a one-dimensional world
//! sets `u[1] = 0`. Functions return an [`HzStatus`] and write results
//! through out-pointers. On failure `hz_last_error` describes the error for
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

use hyperzoom::filters::{Filter, FilterConfig, StageConfig};
use hyperzoom::hyperbolic::{self, HPoint, HVector};

/// Camera position: footprint `u` and altitude `v > 0`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HzPoint {
    pub u: [f64; 2],
    pub v: f64,
}

/// Tangent vector `(du, dv)` based at `base`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HzVector {
    pub base: HzPoint,
    pub du: [f64; 2],
    pub dv: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Internal = 3,
}

/// Stage list and sampling period for a filter.
pub struct HzFilterConfig {
    inner: FilterConfig,
}

/// A running filter cascade.
pub struct HzFilter {
    inner: Filter<2>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

struct Failure(HzStatus, String);

fn invalid(message: impl ToString) -> Failure {
    Failure(HzStatus::InvalidArgument, message.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Failure> + UnwindSafe) -> HzStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => {
            set_error("");
            HzStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error");
            HzStatus::Internal
        }
    }
}

unsafe fn read<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(HzStatus::NullPointer, format!("{name} is null")))
}

unsafe fn write<T>(p: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure(HzStatus::NullPointer, format!("{name} is null")));
    }
    p.write(value);
    Ok(())
}

fn to_point(p: &HzPoint) -> Result<HPoint<2>, Failure> {
    HPoint::new(p.u, p.v).map_err(invalid)
}

fn from_point(p: &HPoint<2>) -> HzPoint {
    HzPoint {
        u: *p.footprint(),
        v: p.altitude(),
    }
}

fn to_vector(x: &HzVector) -> Result<HVector<2>, Failure> {
    HVector::new(to_point(&x.base)?, x.du, x.dv).map_err(invalid)
}

fn from_vector(x: &HVector<2>) -> HzVector {
    HzVector {
        base: from_point(x.base()),
        du: *x.du(),
        dv: x.dv(),
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn hz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Hyperbolic distance between `x` and `y`.
///
/// # Safety
/// Pointers must be null or valid for the access their type implies.
#[no_mangle]
pub unsafe extern "C" fn hz_dist(x: *const HzPoint, y: *const HzPoint, out: *mut f64) -> HzStatus {
    guard(|| {
        let (x, y) = (to_point(read(x, "x")?)?, to_point(read(y, "y")?)?);
        write(out, hyperbolic::dist(&x, &y), "out")
    })
}

/// Point at hyperbolic distance `s` from `x` towards `y`.
///
/// # Safety
/// Pointers must be null or valid for the access their type implies.
#[no_mangle]
pub unsafe extern "C" fn hz_geo(
    x: *const HzPoint,
    y: *const HzPoint,
    s: f64,
    out: *mut HzPoint,
) -> HzStatus {
    guard(|| {
        let (x, y) = (to_point(read(x, "x")?)?, to_point(read(y, "y")?)?);
        let p = hyperbolic::geo(&x, &y, s).map_err(invalid)?;
        write(out, from_point(&p), "out")
    })
}

/// Geodesic interpolation: `t = 0` gives `x`, `t = 1` gives `y`.
///
/// # Safety
/// Pointers must be null or valid for the access their type implies.
#[no_mangle]
pub unsafe extern "C" fn hz_gerp(
    x: *const HzPoint,
    y: *const HzPoint,
    t: f64,
    out: *mut HzPoint,
) -> HzStatus {
    guard(|| {
        let (x, y) = (to_point(read(x, "x")?)?, to_point(read(y, "y")?)?);
        if !t.is_finite() {
            return Err(invalid(format!("t must be finite, got {t}")));
        }
        write(out, from_point(&hyperbolic::gerp(&x, &y, t)), "out")
    })
}

/// Hyperbolic magnitude of a tangent vector.
///
/// # Safety
/// Pointers must be null or valid for the access their type implies.
#[no_mangle]
pub unsafe extern "C" fn hz_hnorm(x: *const HzVector, out: *mut f64) -> HzStatus {
    guard(|| write(out, to_vector(read(x, "x")?)?.hnorm(), "out"))
}

/// # Safety
/// Pointers must be null or valid for the access their type implies.
#[no_mangle]
pub unsafe extern "C" fn hz_exp_map(x: *const HzVector, out: *mut HzPoint) -> HzStatus {
    guard(|| {
        let w = to_vector(read(x, "x")?)?;
        write(out, from_point(&hyperbolic::exp_map(&w)), "out")
    })
}

/// # Safety
/// Pointers must be null or valid for the access their type implies.
#[no_mangle]
pub unsafe extern "C" fn hz_log_map(
    x: *const HzPoint,
    y: *const HzPoint,
    out: *mut HzVector,
) -> HzStatus {
    guard(|| {
        let (x, y) = (to_point(read(x, "x")?)?, to_point(read(y, "y")?)?);
        write(out, from_vector(&hyperbolic::log_map(&x, &y)), "out")
    })
}

/// Moves `x` along the geodesic from its base to `y`.
///
/// # Safety
/// Pointers must be null or valid for the access their type implies.
#[no_mangle]
pub unsafe extern "C" fn hz_transport(
    x: *const HzVector,
    y: *const HzPoint,
    out: *mut HzVector,
) -> HzStatus {
    guard(|| {
        let (w, y) = (to_vector(read(x, "x")?)?, to_point(read(y, "y")?)?);
        write(out, from_vector(&hyperbolic::transport(&w, &y)), "out")
    })
}

/// Limits the hyperbolic magnitude of `x` to `c >= 0`.
///
/// # Safety
/// Pointers must be null or valid for the access their type implies.
#[no_mangle]
pub unsafe extern "C" fn hz_clipvec(x: *const HzVector, c: f64, out: *mut HzVector) -> HzStatus {
    guard(|| {
        let w = to_vector(read(x, "x")?)?;
        if !(c >= 0.0) {
            return Err(invalid(format!("c must be non-negative, got {c}")));
        }
        write(out, from_vector(&hyperbolic::clipvec(&w, c)), "out")
    })
}

/// Empty stage list sampled every `period` seconds. Returns null for a
/// non-positive period. Release with `hz_filter_config_free`.
#[no_mangle]
pub extern "C" fn hz_filter_config_new(period: f64) -> *mut HzFilterConfig {
    if !(period > 0.0 && period.is_finite()) {
        set_error(format!("period must be positive, got {period}"));
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(HzFilterConfig {
        inner: FilterConfig::new(Vec::new(), period),
    }))
}

/// Default clipped cascade: a clipped one-pole stage with `c = 1`, then three
/// one-pole stages, all with `alpha = 6`, at the given period.
#[no_mangle]
pub extern "C" fn hz_filter_config_default(period: f64) -> *mut HzFilterConfig {
    let cfg = hz_filter_config_new(period);
    if let Some(c) = unsafe { cfg.as_mut() } {
        c.inner = FilterConfig::clipped_cascaded(1.0, 6.0, period);
    }
    cfg
}

unsafe fn push_stage(cfg: *mut HzFilterConfig, stage: StageConfig) -> HzStatus {
    guard(move || {
        let cfg = cfg
            .as_mut()
            .ok_or_else(|| Failure(HzStatus::NullPointer, "config is null".into()))?;
        cfg.inner.stages.push(stage);
        Ok(())
    })
}

/// # Safety
/// `cfg` must be null or a live pointer from `hz_filter_config_new`.
#[no_mangle]
pub unsafe extern "C" fn hz_filter_config_add_one_pole(
    cfg: *mut HzFilterConfig,
    alpha: f64,
) -> HzStatus {
    push_stage(cfg, StageConfig::OnePole { alpha })
}

/// # Safety
/// `cfg` must be null or a live pointer from `hz_filter_config_new`.
#[no_mangle]
pub unsafe extern "C" fn hz_filter_config_add_clipped_one_pole(
    cfg: *mut HzFilterConfig,
    alpha: f64,
    c: f64,
) -> HzStatus {
    push_stage(cfg, StageConfig::ClippedOnePole { alpha, c })
}

/// # Safety
/// `cfg` must be null or a live pointer from `hz_filter_config_new`.
#[no_mangle]
pub unsafe extern "C" fn hz_filter_config_add_two_pole(
    cfg: *mut HzFilterConfig,
    omega0: f64,
    zeta: f64,
) -> HzStatus {
    push_stage(cfg, StageConfig::TwoPole { omega0, zeta })
}

/// # Safety
/// `cfg` must be null or a pointer from `hz_filter_config_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hz_filter_config_free(cfg: *mut HzFilterConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Validates `cfg` and creates a filter resting at `y0`. The configuration
/// is copied; it may be freed afterwards. Release with `hz_filter_free`.
///
/// # Safety
/// Pointers must be null or valid for the access their type implies.
#[no_mangle]
pub unsafe extern "C" fn hz_filter_new(
    cfg: *const HzFilterConfig,
    y0: *const HzPoint,
    out: *mut *mut HzFilter,
) -> HzStatus {
    guard(|| {
        let cfg = read(cfg, "config")?;
        let y0 = to_point(read(y0, "y0")?)?;
        if out.is_null() {
            return Err(Failure(HzStatus::NullPointer, "out is null".into()));
        }
        let filter = Filter::new(cfg.inner.clone(), y0).map_err(invalid)?;
        out.write(Box::into_raw(Box::new(HzFilter { inner: filter })));
        Ok(())
    })
}

/// Advances one sample towards target `x` and writes the new output.
///
/// # Safety
/// Pointers must be null or valid; `filter` must come from `hz_filter_new`.
#[no_mangle]
pub unsafe extern "C" fn hz_filter_step(
    filter: *mut HzFilter,
    x: *const HzPoint,
    out: *mut HzPoint,
) -> HzStatus {
    guard(|| {
        let f = filter
            .as_mut()
            .ok_or_else(|| Failure(HzStatus::NullPointer, "filter is null".into()))?;
        let x = to_point(read(x, "x")?)?;
        let y = f.inner.step(&x);
        if out.is_null() {
            return Ok(());
        }
        out.write(from_point(&y));
        Ok(())
    })
}

/// Current output of the last stage.
///
/// # Safety
/// Pointers must be null or valid; `filter` must come from `hz_filter_new`.
#[no_mangle]
pub unsafe extern "C" fn hz_filter_output(filter: *const HzFilter, out: *mut HzPoint) -> HzStatus {
    guard(|| {
        let f = read(filter, "filter")?;
        write(out, from_point(&f.inner.output()), "out")
    })
}

/// Puts every stage at rest at `y0`.
///
/// # Safety
/// Pointers must be null or valid; `filter` must come from `hz_filter_new`.
#[no_mangle]
pub unsafe extern "C" fn hz_filter_reset(filter: *mut HzFilter, y0: *const HzPoint) -> HzStatus {
    guard(|| {
        let f = filter
            .as_mut()
            .ok_or_else(|| Failure(HzStatus::NullPointer, "filter is null".into()))?;
        f.inner.reset(to_point(read(y0, "y0")?)?);
        Ok(())
    })
}

/// Largest per-step displacement of any clipped stage so far.
///
/// # Safety
/// Pointers must be null or valid; `filter` must come from `hz_filter_new`.
#[no_mangle]
pub unsafe extern "C" fn hz_filter_max_clipped_step(
    filter: *const HzFilter,
    out: *mut f64,
) -> HzStatus {
    guard(|| {
        let f = read(filter, "filter")?;
        write(out, f.inner.max_clipped_step(), "out")
    })
}

/// # Safety
/// `filter` must be null or a pointer from `hz_filter_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hz_filter_free(filter: *mut HzFilter) {
    if !filter.is_null() {
        drop(Box::from_raw(filter));
    }
}
