//! C ABI over the `multilru` crate.
//!
//! Objects cross the boundary as opaque handles created by `*_new`-style
//! constructors and released with the matching `*_free`. Every fallible call
//! returns an [`MlruStatus`]; on failure the message is kept per thread and
//! can be copied out with [`mlru_last_error`]. Results go through out
//! pointers, which are left untouched on failure.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multilru::analytics::{che_multi_all_hit, che_multi_one_hit, che_single_hit, two_cache_hit, TwoCachePolicy};
use multilru::engine::{run_experiment, ExperimentConfig, ExperimentReport};
use multilru::geometry::{coverage_profile_ppp_boolean, CoverageProfile};
use multilru::policies::{hit_upper_bound, CacheInventory};
use multilru::traffic::{Catalogue, ObjectId};
use multilru::Error;

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlruStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    InvalidUtf8 = 3,
    Config = 4,
    RootFinding = 5,
    Io = 6,
    Internal = 7,
    Panic = 8,
}

/// Which two-cache formula to evaluate.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MlruTwoCache {
    One = 0,
    All = 1,
}

/// Object popularity law.
pub struct MlruCatalogue(Catalogue);

/// Coverage-number distribution `p_0..p_M`.
pub struct MlruProfile(CoverageProfile);

/// One LRU cache.
pub struct MlruInventory(CacheInventory);

/// Aggregated result of a replicated experiment.
pub struct MlruReport(ExperimentReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn status_of(err: &Error) -> MlruStatus {
    match err {
        Error::InvalidParameter { .. } | Error::EmptyField | Error::AlreadyCached(_) | Error::UnknownStation { .. } => {
            MlruStatus::InvalidParameter
        }
        Error::InvalidPlacement(_) | Error::GridMismatch(_) => MlruStatus::Internal,
        Error::RootFinding(_) => MlruStatus::RootFinding,
        Error::Config(_) => MlruStatus::Config,
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => MlruStatus::Io,
        // the error enum may grow
        #[allow(unreachable_patterns)]
        _ => MlruStatus::Internal,
    }
}

/// Runs `f`, recording any error or panic for [`mlru_last_error`].
fn guard(f: impl FnOnce() -> Result<(), MlruStatus>) -> MlruStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MlruStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("panic inside multilru".into());
            MlruStatus::Panic
        }
    }
}

trait IntoStatus<T> {
    fn status(self) -> Result<T, MlruStatus>;
}

impl<T> IntoStatus<T> for multilru::Result<T> {
    fn status(self) -> Result<T, MlruStatus> {
        self.map_err(|e| {
            let s = status_of(&e);
            set_error(e.to_string());
            s
        })
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, MlruStatus> {
    p.as_ref().ok_or_else(|| {
        set_error(format!("{what} is null"));
        MlruStatus::NullPointer
    })
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, MlruStatus> {
    p.as_mut().ok_or_else(|| {
        set_error(format!("{what} is null"));
        MlruStatus::NullPointer
    })
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), MlruStatus> {
    if out.is_null() {
        set_error(format!("{what} is null"));
        return Err(MlruStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL, or
/// 0 if there is no error.
#[no_mangle]
pub unsafe extern "C" fn mlru_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Frees a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn mlru_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Zipf catalogue of `size` objects with exponent `exponent`.
#[no_mangle]
pub unsafe extern "C" fn mlru_catalogue_zipf(size: usize, exponent: f64, out: *mut *mut MlruCatalogue) -> MlruStatus {
    guard(|| {
        let cat = Catalogue::zipf(size, exponent).status()?;
        write(out, boxed(MlruCatalogue(cat)), "out")
    })
}

/// Catalogue from explicit popularities (normalised, non-increasing).
#[no_mangle]
pub unsafe extern "C" fn mlru_catalogue_from_popularities(
    popularities: *const f64,
    len: usize,
    out: *mut *mut MlruCatalogue,
) -> MlruStatus {
    guard(|| {
        let a = deref(popularities, "popularities")?;
        let values = std::slice::from_raw_parts(a, len).to_vec();
        let cat = Catalogue::new(values).status()?;
        write(out, boxed(MlruCatalogue(cat)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn mlru_catalogue_len(catalogue: *const MlruCatalogue) -> usize {
    catalogue.as_ref().map_or(0, |c| c.0.len())
}

/// Popularity mass of the `k` most popular objects.
#[no_mangle]
pub unsafe extern "C" fn mlru_catalogue_head_mass(
    catalogue: *const MlruCatalogue,
    k: usize,
    out: *mut f64,
) -> MlruStatus {
    guard(|| {
        let c = deref(catalogue, "catalogue")?;
        write(out, c.0.head_mass(k.min(c.0.len())), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn mlru_catalogue_free(catalogue: *mut MlruCatalogue) {
    if !catalogue.is_null() {
        drop(Box::from_raw(catalogue));
    }
}

/// Poisson coverage law of Boolean discs of radius `radius` on a PPP of
/// intensity `lambda_b`, tail folded into `p_{max_count}`.
#[no_mangle]
pub unsafe extern "C" fn mlru_profile_ppp(
    lambda_b: f64,
    radius: f64,
    max_count: usize,
    out: *mut *mut MlruProfile,
) -> MlruStatus {
    guard(|| {
        let p = coverage_profile_ppp_boolean(lambda_b, radius, max_count).status()?;
        write(out, boxed(MlruProfile(p)), "out")
    })
}

/// Profile from `p_0..p_{len-1}`.
#[no_mangle]
pub unsafe extern "C" fn mlru_profile_from_pmf(pmf: *const f64, len: usize, out: *mut *mut MlruProfile) -> MlruStatus {
    guard(|| {
        let first = deref(pmf, "pmf")?;
        let p = CoverageProfile::new(std::slice::from_raw_parts(first, len).to_vec()).status()?;
        write(out, boxed(MlruProfile(p)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn mlru_profile_mean(profile: *const MlruProfile, out: *mut f64) -> MlruStatus {
    guard(|| write(out, deref(profile, "profile")?.0.mean(), "out"))
}

/// `p_m`, zero beyond the stored range.
#[no_mangle]
pub unsafe extern "C" fn mlru_profile_probability(profile: *const MlruProfile, m: usize, out: *mut f64) -> MlruStatus {
    guard(|| write(out, deref(profile, "profile")?.0.probability(m), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn mlru_profile_free(profile: *mut MlruProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Empty LRU cache holding at most `capacity` objects.
#[no_mangle]
pub unsafe extern "C" fn mlru_inventory_new(capacity: usize, out: *mut *mut MlruInventory) -> MlruStatus {
    guard(|| {
        let inv = CacheInventory::new(capacity).status()?;
        write(out, boxed(MlruInventory(inv)), "out")
    })
}

/// LRU request: a hit moves `object` to the front, a miss inserts it and may
/// evict the least recent object. `evicted` receives that object, or -1.
#[no_mangle]
pub unsafe extern "C" fn mlru_inventory_request(
    inventory: *mut MlruInventory,
    object: u32,
    hit: *mut bool,
    evicted: *mut i64,
) -> MlruStatus {
    guard(|| {
        let inv = &mut deref_mut(inventory, "inventory")?.0;
        if hit.is_null() || evicted.is_null() {
            set_error("hit/evicted is null".into());
            return Err(MlruStatus::NullPointer);
        }
        let id = ObjectId(object);
        if inv.touch(id) {
            *hit = true;
            *evicted = -1;
        } else {
            let out = inv.insert(id).status()?;
            *hit = false;
            *evicted = out.map_or(-1, |o| i64::from(o.0));
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mlru_inventory_contains(inventory: *const MlruInventory, object: u32) -> bool {
    inventory.as_ref().is_some_and(|i| i.0.contains(ObjectId(object)))
}

#[no_mangle]
pub unsafe extern "C" fn mlru_inventory_len(inventory: *const MlruInventory) -> usize {
    inventory.as_ref().map_or(0, |i| i.0.len())
}

/// Copies up to `len` cached objects, most recent first, into `objects`.
/// Returns how many were written.
#[no_mangle]
pub unsafe extern "C" fn mlru_inventory_snapshot(
    inventory: *const MlruInventory,
    objects: *mut u32,
    len: usize,
) -> usize {
    let (Some(inv), false) = (inventory.as_ref(), objects.is_null()) else {
        return 0;
    };
    let mut n = 0;
    for (i, o) in inv.0.iter().take(len).enumerate() {
        *objects.add(i) = o.0;
        n += 1;
    }
    n
}

#[no_mangle]
pub unsafe extern "C" fn mlru_inventory_free(inventory: *mut MlruInventory) {
    if !inventory.is_null() {
        drop(Box::from_raw(inventory));
    }
}

/// Che hit probability of one isolated LRU cache seeing request rate `rate`.
#[no_mangle]
pub unsafe extern "C" fn mlru_che_single(
    catalogue: *const MlruCatalogue,
    rate: f64,
    k: usize,
    out: *mut f64,
) -> MlruStatus {
    guard(|| {
        let c = deref(catalogue, "catalogue")?;
        write(out, che_single_hit(&c.0, rate, k).status()?, "out")
    })
}

/// multi-LRU-One hit probability under the independence approximation.
#[no_mangle]
pub unsafe extern "C" fn mlru_che_multi_one(
    catalogue: *const MlruCatalogue,
    lambda_u: f64,
    voronoi_area: f64,
    profile: *const MlruProfile,
    k: usize,
    out: *mut f64,
) -> MlruStatus {
    guard(|| {
        let c = deref(catalogue, "catalogue")?;
        let p = deref(profile, "profile")?;
        write(
            out,
            che_multi_one_hit(&c.0, lambda_u, voronoi_area, &p.0, k).status()?,
            "out",
        )
    })
}

/// multi-LRU-All hit probability under the similarity approximation.
#[no_mangle]
pub unsafe extern "C" fn mlru_che_multi_all(
    catalogue: *const MlruCatalogue,
    lambda_u: f64,
    radius: f64,
    profile: *const MlruProfile,
    k: usize,
    out: *mut f64,
) -> MlruStatus {
    guard(|| {
        let c = deref(catalogue, "catalogue")?;
        let p = deref(profile, "profile")?;
        write(out, che_multi_all_hit(&c.0, lambda_u, radius, &p.0, k).status()?, "out")
    })
}

/// Two caches sharing one area of `2 * voronoi_area`.
#[no_mangle]
pub unsafe extern "C" fn mlru_two_cache(
    policy: MlruTwoCache,
    catalogue: *const MlruCatalogue,
    lambda_u: f64,
    voronoi_area: f64,
    k: usize,
    out: *mut f64,
) -> MlruStatus {
    guard(|| {
        let c = deref(catalogue, "catalogue")?;
        let policy = match policy {
            MlruTwoCache::One => TwoCachePolicy::One,
            MlruTwoCache::All => TwoCachePolicy::All,
        };
        write(
            out,
            two_cache_hit(policy, &c.0, lambda_u, voronoi_area, k).status()?,
            "out",
        )
    })
}

/// Upper bound on the hit probability of any placement.
#[no_mangle]
pub unsafe extern "C" fn mlru_hit_upper_bound(
    catalogue: *const MlruCatalogue,
    profile: *const MlruProfile,
    k: usize,
    out: *mut f64,
) -> MlruStatus {
    guard(|| {
        let c = deref(catalogue, "catalogue")?;
        let p = deref(profile, "profile")?;
        write(out, hit_upper_bound(&c.0, &p.0, k), "out")
    })
}

/// Runs the experiment described by the TOML document `config` (the same
/// format as `multilru simulate --config`).
#[no_mangle]
pub unsafe extern "C" fn mlru_experiment_run(config: *const c_char, out: *mut *mut MlruReport) -> MlruStatus {
    guard(|| {
        if config.is_null() {
            set_error("config is null".into());
            return Err(MlruStatus::NullPointer);
        }
        let text = CStr::from_ptr(config).to_str().map_err(|e| {
            set_error(format!("config is not UTF-8: {e}"));
            MlruStatus::InvalidUtf8
        })?;
        let config = ExperimentConfig::from_toml(text).status()?;
        let report = run_experiment(&config).status()?;
        write(out, boxed(MlruReport(report)), "out")
    })
}

/// Number of policies in the report.
#[no_mangle]
pub unsafe extern "C" fn mlru_report_len(report: *const MlruReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.reports.len())
}

/// Mean hit probability over replications and its 95% half-width (NaN with
/// a single replication) for policy `index`.
#[no_mangle]
pub unsafe extern "C" fn mlru_report_hit(
    report: *const MlruReport,
    index: usize,
    mean: *mut f64,
    ci95: *mut f64,
) -> MlruStatus {
    guard(|| {
        let r = deref(report, "report")?;
        let Some(h) = r.0.reports.get(index) else {
            set_error(format!("policy index {index} out of range ({})", r.0.reports.len()));
            return Err(MlruStatus::InvalidParameter);
        };
        write(mean, h.mean, "mean")?;
        write(ci95, h.ci95, "ci95")
    })
}

/// Policy name of entry `index`, e.g. `multi-lru-one`. Free with
/// [`mlru_string_free`]; null if `index` is out of range.
#[no_mangle]
pub unsafe extern "C" fn mlru_report_policy(report: *const MlruReport, index: usize) -> *mut c_char {
    report
        .as_ref()
        .and_then(|r| r.0.reports.get(index))
        .and_then(|h| CString::new(h.policy.to_string()).ok())
        .map_or(ptr::null_mut(), CString::into_raw)
}

/// Whole report as JSON. Free with [`mlru_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mlru_report_json(report: *const MlruReport, out: *mut *mut c_char) -> MlruStatus {
    guard(|| {
        let r = deref(report, "report")?;
        let json = serde_json::to_string(&r.0).map_err(Error::from).status()?;
        let s = CString::new(json).map_err(|e| {
            set_error(e.to_string());
            MlruStatus::Internal
        })?;
        write(out, s.into_raw(), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn mlru_report_free(report: *mut MlruReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
