//! C interface to `sl3_maass`.
//!
//! Every function returns an [`Sl3Status`]; on failure a description is
//! available from [`sl3_last_error`] on the same thread. Handles are
//! created by `*_new`/`*_load` and released by the matching `*_free`.

use sl3_maass::cli::CoefficientFile;
use sl3_maass::langlands::LanglandsParams;
use sl3_maass::maass::{automorphy_residual, Backend, GroupWord, H3Point, MaassEvaluator, MaassForm};
use sl3_maass::whittaker::{
    w_eval, w_series_origin, w_series_small, w_stade_default, Algorithm, EvalPolicy, SeriesBudget, WhittakerArgs,
};
use sl3_maass::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl3Status {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Pole = 3,
    Underflow = 4,
    NonConvergence = 5,
    SeriesNonConvergence = 6,
    NonTempered = 7,
    Degenerate = 8,
    Cancellation = 9,
    AccuracyRange = 10,
    Determinant = 11,
    NumericalDegeneracy = 12,
    MissingCoefficient = 13,
    MissingInput = 14,
    Parse = 15,
    Io = 16,
    Panic = 17,
}

/// Whittaker algorithm selector.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl3Algorithm {
    Auto = 0,
    Stade = 1,
    Origin = 2,
    SmallArg = 3,
}

/// Source of Whittaker values inside Maass evaluation.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl3Backend {
    FixedD = 0,
    Stade = 1,
    Auto = 2,
}

/// A Whittaker value. The scaled value `e^{π|α-β|} W` equals
/// `(scaled_re + i scaled_im) · e^{scaled_log}`; `re`, `im` hold `W`
/// itself (zero or infinite when it does not fit in a double).
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct Sl3Whittaker {
    pub scaled_re: f64,
    pub scaled_im: f64,
    pub scaled_log: f64,
    pub re: f64,
    pub im: f64,
    pub rel_error: f64,
    /// 1 Stade, 2 origin series, 3 small-argument series, 4 fixed-D Mellin.
    pub algorithm: i32,
}

/// A Maass form value.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct Sl3MaassValue {
    pub re: f64,
    pub im: f64,
    pub abs_error: f64,
    /// Largest `m2` whose terms reach the accuracy threshold.
    pub max_m2: u32,
    pub distinct_d: u32,
}

/// Opaque Langlands parameters.
pub struct Sl3Params(LanglandsParams);

/// Opaque Maass form (parameters, coefficients and cutoff).
pub struct Sl3Form(MaassForm);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> Sl3Status {
    match e {
        Error::Pole { .. } => Sl3Status::Pole,
        Error::Domain(_) => Sl3Status::Domain,
        Error::Underflow(_) => Sl3Status::Underflow,
        Error::NonConvergence { .. } => Sl3Status::NonConvergence,
        Error::SeriesNonConvergence { .. } => Sl3Status::SeriesNonConvergence,
        Error::NonTempered(_) => Sl3Status::NonTempered,
        Error::Degenerate => Sl3Status::Degenerate,
        Error::Cancellation { .. } => Sl3Status::Cancellation,
        Error::AccuracyRange { .. } => Sl3Status::AccuracyRange,
        Error::Determinant(_) => Sl3Status::Determinant,
        Error::NumericalDegeneracy => Sl3Status::NumericalDegeneracy,
        Error::MissingCoefficient { .. } => Sl3Status::MissingCoefficient,
        Error::MissingInput(_) => Sl3Status::MissingInput,
        Error::Parse { .. } => Sl3Status::Parse,
        Error::Io(_) => Sl3Status::Io,
    }
}

/// Run `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Error>) -> Sl3Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            Sl3Status::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            Sl3Status::Panic
        }
    }
}

fn null() -> Error {
    Error::Domain("null pointer argument".into())
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, Error> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Error::Domain("string is not UTF-8".into()))
}

macro_rules! check_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            set_error("null pointer argument");
            return Sl3Status::NullPointer;
        }
    };
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn sl3_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parameters from imaginary parts; `gamma_im` must equal `-alpha_im - beta_im`
/// up to rounding of printed values.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl3_params_new(alpha_im: f64, beta_im: f64, gamma_im: f64, out: *mut *mut Sl3Params) -> Sl3Status {
    check_null!(out);
    guard(|| {
        let p = LanglandsParams::new(alpha_im, beta_im, gamma_im)?;
        *out = Box::into_raw(Box::new(Sl3Params(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from [`sl3_params_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sl3_params_free(p: *mut Sl3Params) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Evaluate the Whittaker function.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl3_whittaker(
    p: *const Sl3Params,
    y1: f64,
    y2: f64,
    algorithm: Sl3Algorithm,
    out: *mut Sl3Whittaker,
) -> Sl3Status {
    check_null!(p, out);
    guard(|| {
        let params = &(*p).0;
        let a = WhittakerArgs::new(y1, y2)?;
        let budget = SeriesBudget::default();
        let e = match algorithm {
            Sl3Algorithm::Auto => w_eval(params, a, &EvalPolicy::default()),
            Sl3Algorithm::Stade => w_stade_default(params, a),
            Sl3Algorithm::Origin => w_series_origin(params, a, budget),
            Sl3Algorithm::SmallArg => w_series_small(params, a, budget),
        }?;
        let w = e.unscaled(params).to_complex();
        *out = Sl3Whittaker {
            scaled_re: e.value.mantissa().re,
            scaled_im: e.value.mantissa().im,
            scaled_log: e.value.log_scale(),
            re: w.re,
            im: w.im,
            rel_error: e.rel_error,
            algorithm: match e.algorithm {
                Algorithm::Stade => 1,
                Algorithm::Origin => 2,
                Algorithm::SmallArg => 3,
                Algorithm::Mellin => 4,
            },
        };
        Ok(())
    })
}

/// Load a coefficient file and compute the cutoff for accuracy goal `eps`.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl3_form_load(path: *const c_char, eps: f64, out: *mut *mut Sl3Form) -> Sl3Status {
    check_null!(path, out);
    guard(|| {
        let file = CoefficientFile::load(Path::new(c_str(path)?))?;
        let form = MaassForm::new(file.params, file.table, eps)?;
        *out = Box::into_raw(Box::new(Sl3Form(form)));
        Ok(())
    })
}

/// # Safety
/// `f` must come from [`sl3_form_load`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sl3_form_free(f: *mut Sl3Form) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// The cutoff `C` of a form.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl3_form_cutoff(f: *const Sl3Form, out: *mut f64) -> Sl3Status {
    check_null!(f, out);
    *out = (*f).0.cutoff().c;
    Sl3Status::Ok
}

fn backend(b: Sl3Backend) -> Backend {
    match b {
        Sl3Backend::FixedD => Backend::FixedD,
        Sl3Backend::Stade => Backend::Stade,
        Sl3Backend::Auto => Backend::Auto,
    }
}

/// `f(z)` at `z = ((x1, x2, x3), (y1, y2))`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl3_form_eval(
    f: *const Sl3Form,
    x1: f64,
    x2: f64,
    x3: f64,
    y1: f64,
    y2: f64,
    backend_kind: Sl3Backend,
    out: *mut Sl3MaassValue,
) -> Sl3Status {
    check_null!(f, out);
    guard(|| {
        let z = H3Point::new(x1, x2, x3, y1, y2)?;
        let v = MaassEvaluator::new(&(*f).0, backend(backend_kind)).eval(&z)?;
        *out = Sl3MaassValue {
            re: v.value.re,
            im: v.value.im,
            abs_error: v.abs_error,
            max_m2: v.stats.max_m2,
            distinct_d: v.stats.distinct_d as u32,
        };
        Ok(())
    })
}

/// `|f(z) - f(g z)|` where `word` lists generators S1, S2, T1, T2, T3
/// separated by spaces.
///
/// # Safety
/// `f` must be a live handle, `word` a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl3_form_automorphy(
    f: *const Sl3Form,
    x1: f64,
    x2: f64,
    x3: f64,
    y1: f64,
    y2: f64,
    word: *const c_char,
    out: *mut f64,
) -> Sl3Status {
    check_null!(f, word, out);
    guard(|| {
        let z = H3Point::new(x1, x2, x3, y1, y2)?;
        let w: GroupWord = c_str(word)?.parse()?;
        let mut ev = MaassEvaluator::new(&(*f).0, Backend::FixedD);
        *out = automorphy_residual(&mut ev, &z, &w)?.residual;
        Ok(())
    })
}
