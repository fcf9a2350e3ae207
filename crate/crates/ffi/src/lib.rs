//! C ABI over `galecubic`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with the
//! matching `*_free` function. Every fallible call returns a [`GcStatus`]; on
//! failure, [`gc_last_error`] describes the error for the calling thread.
//! Strings returned through `char **` are owned by the caller and released
//! with [`gc_string_free`]. Structured data is exchanged as JSON in the same
//! format the command-line tool reads and writes.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use galecubic::algebra::Field;
use galecubic::epwfano::{epw_contains, harvest, EPWPoint};
use galecubic::equivariant::{a4_family, A4FamilyParams};
use galecubic::gale::NonSyzygeticEquation;
use galecubic::io::{self, Instance};
use galecubic::lagrangian::{lagrangian_from_gale, RhoLagrangianData};
use galecubic::lattice::{build_ds_dt, enumerate_glue_groups};
use galecubic::selftest;
use galecubic::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    ParseError = 3,
    DegenerateTuple = 4,
    ConditionFailed = 5,
    Internal = 6,
    Panic = 7,
}

/// A parsed instance file.
pub struct GcInstance(Instance);

/// One equation `det M ± L1 L2 L3`.
pub struct GcEquation(NonSyzygeticEquation);

/// A validated ρ-Lagrangian subspace.
pub struct GcLagrangian(RhoLagrangianData);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GcStatus {
    match e {
        Error::InvalidInput(_) => GcStatus::InvalidInput,
        Error::Parse(_) => GcStatus::ParseError,
        Error::DegenerateTuple => GcStatus::DegenerateTuple,
        Error::ConditionFailed(_) => GcStatus::ConditionFailed,
        Error::Normalization(_) | Error::Inconsistent(_) => GcStatus::Internal,
    }
}

enum Fail {
    Null,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Run `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GcStatus::Ok
        }
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument".into());
            GcStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            GcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Lib(Error::Parse("string is not UTF-8".into())))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Lib(Error::Inconsistent("output contains a nul byte".into())))?;
    write_out(out, c.into_raw())
}

unsafe fn write_handle<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    write_out(out, Box::into_raw(Box::new(v)))
}

unsafe fn free_handle<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn parse_field(s: &str) -> Result<Field, Fail> {
    Ok(Field::parse(s)?)
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn gc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn gc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parse an instance from JSON.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_instance_parse(json: *const c_char, out: *mut *mut GcInstance) -> GcStatus {
    guard(|| {
        let inst = Instance::parse(str_arg(json)?)?;
        write_handle(out, GcInstance(inst))
    })
}

/// Serialize an instance to pretty-printed JSON.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_instance_to_json(inst: *const GcInstance, out: *mut *mut c_char) -> GcStatus {
    guard(|| write_string(out, ref_arg(inst)?.0.to_string_pretty()))
}

/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_instance_free(inst: *mut GcInstance) {
    free_handle(inst)
}

/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_instance_equation_count(inst: *const GcInstance, out: *mut usize) -> GcStatus {
    guard(|| write_out(out, ref_arg(inst)?.0.equations.len()))
}

/// Copy equation `index` out of an instance.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_instance_equation(inst: *const GcInstance, index: usize, out: *mut *mut GcEquation) -> GcStatus {
    guard(|| {
        let eq = ref_arg(inst)?
            .0
            .equations
            .get(index)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("no equation at index {index}")))?;
        write_handle(out, GcEquation(eq))
    })
}

/// A random equation of full rank over `field` (e.g. `"rational"`, `"prime:101"`).
///
/// # Safety
/// `field` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_equation_random(field: *const c_char, seed: u64, out: *mut *mut GcEquation) -> GcStatus {
    guard(|| {
        let f = parse_field(str_arg(field)?)?;
        let eq = NonSyzygeticEquation::random_valid(f, &mut ChaCha8Rng::seed_from_u64(seed));
        write_handle(out, GcEquation(eq))
    })
}

/// # Safety
/// `eq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_equation_free(eq: *mut GcEquation) {
    free_handle(eq)
}

/// The Gale dual; fails with `DegenerateTuple` for rank-deficient input.
///
/// # Safety
/// `eq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_equation_gale_dual(eq: *const GcEquation, out: *mut *mut GcEquation) -> GcStatus {
    guard(|| {
        let d = ref_arg(eq)?.0.gale_dual()?;
        write_handle(out, GcEquation(d))
    })
}

/// Whether the coefficient map has rank 6 and at least two L-forms are independent.
///
/// # Safety
/// `eq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_equation_is_valid(eq: *const GcEquation, out: *mut bool) -> GcStatus {
    guard(|| {
        let e = &ref_arg(eq)?.0;
        write_out(out, e.coefficient_map().rank() == 6 && e.is_valid())
    })
}

/// Whether the coefficient maps of `a` and `b` compose to zero.
///
/// # Safety
/// `a` and `b` must be live handles over the same field; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_equation_composes_to_zero(a: *const GcEquation, b: *const GcEquation, out: *mut bool) -> GcStatus {
    guard(|| {
        let (a, b) = (&ref_arg(a)?.0, &ref_arg(b)?.0);
        if a.field() != b.field() {
            return Err(Error::InvalidInput("equations are over different fields".into()).into());
        }
        write_out(out, a.coefficient_map().mul(&b.coefficient_map().transpose()).is_zero())
    })
}

/// The equation as JSON (`vars`, `m`, `l`, `sign`).
///
/// # Safety
/// `eq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_equation_to_json(eq: *const GcEquation, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let j = io::equation_to_json(&ref_arg(eq)?.0);
        write_string(out, serde_json::to_string(&j).expect("serializable"))
    })
}

/// The cubic polynomial as JSON (`vars`, `terms`).
///
/// # Safety
/// `eq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_equation_cubic_json(eq: *const GcEquation, out: *mut *mut c_char) -> GcStatus {
    guard(|| write_string(out, json_text(&io::poly_to_json(&ref_arg(eq)?.0.cubic_polynomial()))))
}

/// The ρ-Lagrangian attached to `eq` and the choice `i ∈ {1,2,3}` of L-form.
///
/// # Safety
/// `eq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_lagrangian_from_gale(eq: *const GcEquation, i: u32, out: *mut *mut GcLagrangian) -> GcStatus {
    guard(|| {
        let (a, _) = lagrangian_from_gale(&ref_arg(eq)?.0, i as usize)?;
        write_handle(out, GcLagrangian(a))
    })
}

/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_lagrangian_free(a: *mut GcLagrangian) {
    free_handle(a)
}

/// Basis of the subspace as a JSON list of ten 20-vectors.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_lagrangian_to_json(a: *const GcLagrangian, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let cols: Vec<serde_json::Value> = ref_arg(a)?.0.basis().col_vecs().iter().map(|c| io::vector_to_json(c)).collect();
        write_string(out, json_text(&serde_json::Value::Array(cols)))
    })
}

/// Rank test for a point given as a JSON 6-vector. Writes membership and
/// `dim(A ∩ F_λ)`.
///
/// # Safety
/// `a` must be a live handle, `point_json` a nul-terminated string, and both
/// outputs writable.
#[no_mangle]
pub unsafe extern "C" fn gc_epw_contains(
    a: *const GcLagrangian,
    point_json: *const c_char,
    on_sextic: *mut bool,
    dim: *mut usize,
) -> GcStatus {
    guard(|| {
        let a = &ref_arg(a)?.0;
        let v: serde_json::Value = serde_json::from_str(str_arg(point_json)?).map_err(|e| Error::Parse(e.to_string()))?;
        let p = EPWPoint::new(io::vector_from_json(a.field(), &v, Some(6))?)?;
        let (on, d) = epw_contains(a, &p);
        write_out(on_sextic, on)?;
        write_out(dim, d)
    })
}

/// Up to `count` points of the EPW sextic over a prime field, as a JSON list
/// of 6-vectors.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_epw_harvest(a: *const GcLagrangian, count: usize, seed: u64, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let a = &ref_arg(a)?.0;
        let pts = harvest(a, count, 40 * count.max(10), &mut ChaCha8Rng::seed_from_u64(seed))?;
        let list: Vec<serde_json::Value> = pts.iter().map(|p| io::vector_to_json(p.lambda())).collect();
        write_string(out, json_text(&serde_json::Value::Array(list)))
    })
}

/// Number of glue groups in the overlattice count.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_lattice_count(out: *mut usize) -> GcStatus {
    guard(|| {
        let (ds, dt) = build_ds_dt()?;
        write_out(out, enumerate_glue_groups(&ds, &dt).groups.len())
    })
}

/// The A4 family member for integer parameters `(α, β, γ, δ, λ)`: an
/// instance with both cubics, the generators and the parameters.
///
/// # Safety
/// `params` must point to five integers, `field` must be a nul-terminated
/// string, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_a4_emit(params: *const i64, field: *const c_char, out: *mut *mut GcInstance) -> GcStatus {
    guard(|| {
        if params.is_null() {
            return Err(Fail::Null);
        }
        let vals: [i64; 5] = std::slice::from_raw_parts(params, 5).try_into().expect("five values");
        let p = A4FamilyParams::new(parse_field(str_arg(field)?)?, vals)?;
        let (xe, xf, act) = a4_family(&p)?;
        let mut inst = Instance::new(p.field());
        inst.equations = vec![xe, xf];
        inst.generators = Some(act.generators);
        inst.params = Some(p);
        write_handle(out, GcInstance(inst))
    })
}

/// Run acceptance criterion `number` (1..=12). Writes whether it passed
/// within its time bound, and a JSON report if `report` is non-null.
///
/// # Safety
/// `pass` must be writable; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn gc_selftest_run(number: u8, seed: u64, pass: *mut bool, report: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let r = selftest::run_criterion(number, seed)
            .ok_or_else(|| Error::InvalidInput(format!("no criterion numbered {number}")))?;
        write_out(pass, r.pass())?;
        if !report.is_null() {
            write_string(report, serde_json::to_string(&r).expect("serializable"))?;
        }
        Ok(())
    })
}
