//! C interface. Objects are opaque handles created by `*_new` functions and
//! released with the matching `*_free`. Every fallible call returns an
//! `HgsStatus`; the message of the last failure on the calling thread is
//! available from `hgs_last_error`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use hopfgal::catalog::catalog_for_degree;
use hopfgal::hgs::{sort_records, ExtensionContext, HgsEngine, HgsRecord};
use hopfgal::props::classify;
use hopfgal::report::{run_degree, RunOptions};
use hopfgal::zoo::{group_type, groups_of_order};
use hopfgal::{Error, Perm, PermGroup};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HgsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    ResourceCap = 4,
    NotFound = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// A permutation group.
pub struct HgsGroup(PermGroup);

/// A transitive group G with the stabilizer of point 1.
pub struct HgsContext(ExtensionContext);

/// Classified structures of one context.
pub struct HgsResult(Vec<HgsRecord>);

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: &str) {
    LAST_ERROR.with(|e| {
        let mut e = e.borrow_mut();
        e.clear();
        e.extend_from_slice(msg.as_bytes());
    });
}

fn status_of(e: &Error) -> HgsStatus {
    match e {
        e if e.is_resource_cap() => HgsStatus::ResourceCap,
        Error::Parse(_) | Error::Catalog { .. } => HgsStatus::Parse,
        Error::MissingCatalog(_) | Error::UnknownType { .. } => HgsStatus::NotFound,
        _ => HgsStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), HgsStatus>) -> HgsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HgsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            HgsStatus::Internal
        }
    }
}

fn fail(e: Error) -> HgsStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, HgsStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(HgsStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        HgsStatus::InvalidArgument
    })
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, HgsStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        HgsStatus::NullPointer
    })
}

/// Copies `s` with a trailing NUL into `buf`. `needed` receives the full
/// size including the NUL, so a call with `cap = 0` sizes the buffer.
unsafe fn copy_out(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Result<(), HgsStatus> {
    let n = s.len() + 1;
    if !needed.is_null() {
        *needed = n;
    }
    if cap < n || buf.is_null() {
        set_error("buffer too small");
        return Err(HgsStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

/// Copies the last error message of this thread into `buf`.
#[no_mangle]
pub unsafe extern "C" fn hgs_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> HgsStatus {
    let msg = LAST_ERROR.with(|e| String::from_utf8_lossy(&e.borrow()).into_owned());
    let n = msg.len() + 1;
    if !needed.is_null() {
        *needed = n;
    }
    if cap < n || buf.is_null() {
        return HgsStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, msg.len());
    *buf.add(msg.len()) = 0;
    HgsStatus::Ok
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hgs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Builds a group on `degree` points from `count` generators in cycle
/// notation, e.g. "(1,2,3)(4,5)".
#[no_mangle]
pub unsafe extern "C" fn hgs_group_new(
    degree: usize,
    generators: *const *const c_char,
    count: usize,
    out: *mut *mut HgsGroup,
) -> HgsStatus {
    guard(|| {
        if out.is_null() || (generators.is_null() && count > 0) {
            set_error("null pointer argument");
            return Err(HgsStatus::NullPointer);
        }
        let mut gens = Vec::with_capacity(count);
        for i in 0..count {
            let s = str_arg(*generators.add(i))?;
            gens.push(Perm::parse(degree, s).map_err(fail)?);
        }
        let g = PermGroup::new(degree, gens).map_err(fail)?;
        *out = Box::into_raw(Box::new(HgsGroup(g)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hgs_group_free(g: *mut HgsGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hgs_group_order(g: *const HgsGroup, out: *mut u64) -> HgsStatus {
    guard(|| {
        let g = handle(g)?;
        let out = out.as_mut().ok_or(HgsStatus::NullPointer)?;
        *out = u64::try_from(g.0.order()).map_err(|_| {
            set_error("order does not fit in 64 bits");
            HgsStatus::ResourceCap
        })?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hgs_group_is_transitive(g: *const HgsGroup, out: *mut bool) -> HgsStatus {
    guard(|| {
        let g = handle(g)?;
        *out.as_mut().ok_or(HgsStatus::NullPointer)? = g.0.is_transitive();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hgs_group_is_regular(g: *const HgsGroup, out: *mut bool) -> HgsStatus {
    guard(|| {
        let g = handle(g)?;
        *out.as_mut().ok_or(HgsStatus::NullPointer)? = g.0.is_regular();
        Ok(())
    })
}

/// Context of a transitive group. The group handle stays owned by the caller.
#[no_mangle]
pub unsafe extern "C" fn hgs_context_new(g: *const HgsGroup, out: *mut *mut HgsContext) -> HgsStatus {
    guard(|| {
        let g = handle(g)?;
        if out.is_null() {
            return Err(HgsStatus::NullPointer);
        }
        let ctx = ExtensionContext::new(g.0.clone()).map_err(fail)?;
        *out = Box::into_raw(Box::new(HgsContext(ctx)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hgs_context_free(c: *mut HgsContext) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// All structures of the given type label on the context, or of every type
/// when `type_label` is NULL, with flags and G-isomorphism classes filled in.
#[no_mangle]
pub unsafe extern "C" fn hgs_find(
    ctx: *const HgsContext,
    type_label: *const c_char,
    out: *mut *mut HgsResult,
) -> HgsStatus {
    guard(|| {
        let ctx = &handle(ctx)?.0;
        if out.is_null() {
            return Err(HgsStatus::NullPointer);
        }
        let g = ctx.degree();
        let types = if type_label.is_null() {
            groups_of_order(g).map_err(fail)?
        } else {
            vec![group_type(g, str_arg(type_label)?).map_err(fail)?]
        };
        let engine = HgsEngine::new(None);
        let mut recs = Vec::new();
        for t in &types {
            recs.extend(engine.run(ctx, t).map_err(fail)?.records);
        }
        classify(&mut recs, ctx).map_err(fail)?;
        sort_records(&mut recs);
        *out = Box::into_raw(Box::new(HgsResult(recs)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hgs_result_free(r: *mut HgsResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hgs_result_len(r: *const HgsResult) -> usize {
    r.as_ref().map_or(0, |r| r.0.len())
}

unsafe fn record<'a>(r: *const HgsResult, i: usize) -> Result<&'a HgsRecord, HgsStatus> {
    handle(r)?.0.get(i).ok_or_else(|| {
        set_error("record index out of range");
        HgsStatus::InvalidArgument
    })
}

/// Flags of record `i`. Any output pointer may be NULL.
#[no_mangle]
pub unsafe extern "C" fn hgs_result_flags(
    r: *const HgsResult,
    i: usize,
    almost_classical: *mut bool,
    bijective: *mut bool,
    class_id: *mut usize,
) -> HgsStatus {
    guard(|| {
        let rec = record(r, i)?;
        if let Some(x) = almost_classical.as_mut() {
            *x = rec.almost_classical;
        }
        if let Some(x) = bijective.as_mut() {
            *x = rec.bijective_corr;
        }
        if let Some(x) = class_id.as_mut() {
            *x = rec.class_id.unwrap_or(usize::MAX);
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn hgs_result_type(
    r: *const HgsResult,
    i: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HgsStatus {
    guard(|| copy_out(&record(r, i)?.type_label, buf, cap, needed))
}

/// Generators of N for record `i`, space separated, in cycle notation.
#[no_mangle]
pub unsafe extern "C" fn hgs_result_generators(
    r: *const HgsResult,
    i: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HgsStatus {
    guard(|| {
        let rec = record(r, i)?;
        let s: Vec<String> = rec.n_image.generators().iter().map(ToString::to_string).collect();
        copy_out(&s.join(" "), buf, cap, needed)
    })
}

/// Summary row of a degree: degree followed by the nine table columns.
/// `catalog` may be NULL to use the default catalog resolution.
#[no_mangle]
pub unsafe extern "C" fn hgs_table_row(
    degree: usize,
    catalog: *const c_char,
    jobs: usize,
    row: *mut u64,
) -> HgsStatus {
    guard(|| {
        if row.is_null() {
            return Err(HgsStatus::NullPointer);
        }
        let path = if catalog.is_null() { None } else { Some(str_arg(catalog)?) };
        let cat = catalog_for_degree(degree, path.map(Path::new)).map_err(fail)?;
        let opts = RunOptions {
            jobs: jobs.max(1),
            ..RunOptions::default()
        };
        let s = run_degree(degree, &cat, &opts).map_err(fail)?.summary;
        *row = s.degree as u64;
        for (k, v) in s.row().iter().enumerate() {
            *row.add(k + 1) = *v as u64;
        }
        Ok(())
    })
}
