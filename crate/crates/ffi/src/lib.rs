//! C ABI over the `mdswe` engine.
//!
//! Every fallible call returns an [`MdsweStatus`]; on failure a message is
//! kept per thread and read with [`mdswe_last_error`]. Handles are opaque
//! and freed with their matching `*_free`. Strings returned through `out`
//! parameters are owned by the caller and released with
//! [`mdswe_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mdswe::codespec::CodeSpec;
use mdswe::duality::{macwilliams_pwe, property_a_check};
use mdswe::errorprob::{cep_bm, channel_map, sep_bm};
use mdswe::linear_code::brute_force_pwe;
use mdswe::mds_enum::weight_distribution;
use mdswe::report::PweDocument;
use mdswe::{Budget, Error, LinearCode, MdsParams, Partition, PweTable};
use num_bigint::BigUint;

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdsweStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    Field = 4,
    Code = 5,
    Partition = 6,
    Budget = 7,
    InvalidArgument = 8,
    NotMds = 9,
    BufferTooSmall = 10,
    Io = 11,
    Internal = 12,
    Panic = 13,
}

impl From<&Error> for MdsweStatus {
    fn from(e: &Error) -> Self {
        use Error::*;
        match e {
            NotPrime(_) | NotIrreducible { .. } | DegreeMismatch { .. } | FieldTooLarge(_) | NotPrimePower(_)
            | ElementOutOfRange { .. } | DivisionByZero | FieldMismatch | NotCharTwo { .. } => MdsweStatus::Field,
            LengthExceedsField { .. } | InvalidDimension { .. } | RankDeficient { .. } => MdsweStatus::Code,
            BudgetExceeded { .. } => MdsweStatus::Budget,
            PartitionMismatch(_) | ProfileOutOfRange(_) => MdsweStatus::Partition,
            ParamOutOfRange(_) | ConditionCountMismatch { .. } | InvalidCondition(_) | IncompleteTable(_) => {
                MdsweStatus::InvalidArgument
            }
            Parse { .. } => MdsweStatus::Parse,
            Io(_) => MdsweStatus::Io,
            InternalError(_) | NonIntegerResult(_) => MdsweStatus::Internal,
        }
    }
}

/// A linear code, with its MDS parameters when known.
pub struct MdsweCode {
    code: LinearCode,
    mds: Option<MdsParams>,
}

/// A partition weight enumerator.
pub struct MdsweTable {
    table: PweTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(MdsweStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

fn fail<T>(status: MdsweStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MdsweStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            MdsweStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside mdswe");
            MdsweStatus::Panic
        }
    }
}

unsafe fn nonnull<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().map_or_else(|| fail(MdsweStatus::NullPointer, format!("{what} is NULL")), Ok)
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().map_or_else(|| fail(MdsweStatus::NullPointer, format!("{what} is NULL")), Ok)
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return fail(MdsweStatus::NullPointer, format!("{what} is NULL"));
    }
    CStr::from_ptr(p).to_str().or_else(|_| fail(MdsweStatus::Utf8, format!("{what} is not UTF-8")))
}

unsafe fn read_slice<'a>(p: *const usize, len: usize, what: &str) -> Result<&'a [usize], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return fail(MdsweStatus::NullPointer, format!("{what} is NULL"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).or_else(|_| fail(MdsweStatus::Internal, "string contains NUL"))
}

fn budget(b: u64) -> Budget {
    if b == 0 {
        Budget::DEFAULT
    } else {
        Budget(b)
    }
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message of the last failed call on this thread, or NULL after a
/// successful one. The pointer stays valid until the next call on the
/// same thread and must not be freed.
#[no_mangle]
pub extern "C" fn mdswe_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mdswe_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a code from a description such as `rs:8:7:3`, `rm1:3`,
/// `dual:rs:16:15:11` or `file:path.json`.
///
/// # Safety
/// `spec` is a NUL-terminated string; `code_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_code_from_spec(spec: *const c_char, code_out: *mut *mut MdsweCode) -> MdsweStatus {
    guard(|| {
        let slot = out(code_out, "code_out")?;
        let spec: CodeSpec = read_str(spec, "spec")?.parse()?;
        let code = spec.build()?;
        *slot = boxed(MdsweCode { code, mds: spec.mds_params() });
        Ok(())
    })
}

/// Builds a code from a row-major `k x n` generator over GF(q).
///
/// # Safety
/// `rows` points to `k * n` readable values; `code_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_code_from_generator(
    q: u64,
    k: usize,
    n: usize,
    rows: *const u32,
    code_out: *mut *mut MdsweCode,
) -> MdsweStatus {
    guard(|| {
        let slot = out(code_out, "code_out")?;
        if k == 0 || n == 0 {
            return fail(MdsweStatus::Code, "generator must have k, n >= 1");
        }
        let len = k.checked_mul(n).map_or_else(|| fail(MdsweStatus::InvalidArgument, "k * n overflows"), Ok)?;
        nonnull(rows, "rows")?;
        let flat = std::slice::from_raw_parts(rows, len);
        let field = mdswe::Field::from_order(q)?;
        let code = LinearCode::from_generator(&field, flat.chunks(n).map(<[u32]>::to_vec).collect())?;
        *slot = boxed(MdsweCode { code, mds: None });
        Ok(())
    })
}

/// # Safety
/// `code` is NULL or a handle from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mdswe_code_free(code: *mut MdsweCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Length of the code, or 0 for NULL.
///
/// # Safety
/// `code` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mdswe_code_length(code: *const MdsweCode) -> usize {
    code.as_ref().map_or(0, |c| c.code.n())
}

/// Dimension of the code, or 0 for NULL.
///
/// # Safety
/// `code` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mdswe_code_dimension(code: *const MdsweCode) -> usize {
    code.as_ref().map_or(0, |c| c.code.k())
}

/// Field order, or 0 for NULL.
///
/// # Safety
/// `code` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mdswe_code_field_order(code: *const MdsweCode) -> u64 {
    code.as_ref().map_or(0, |c| c.code.field().order() as u64)
}

/// Whether the handle carries MDS parameters (Reed-Solomon codes and
/// their duals).
///
/// # Safety
/// `code` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mdswe_code_is_mds(code: *const MdsweCode) -> bool {
    code.as_ref().is_some_and(|c| c.mds.is_some())
}

/// # Safety
/// `code` is a live handle; `dual_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_code_dual(code: *const MdsweCode, dual_out: *mut *mut MdsweCode) -> MdsweStatus {
    guard(|| {
        let slot = out(dual_out, "dual_out")?;
        let c = nonnull(code, "code")?;
        *slot = boxed(MdsweCode { code: c.code.dual(), mds: c.mds.and_then(|p| p.dual()) });
        Ok(())
    })
}

fn partition_for(code: &LinearCode, sizes: &[usize]) -> Result<Partition, Failure> {
    if sizes.is_empty() {
        return Ok(Partition::single(code.n()));
    }
    let part = Partition::contiguous(sizes)?;
    if part.n() != code.n() {
        return fail(MdsweStatus::Partition, format!("block sizes sum to {} but the code has length {}", part.n(), code.n()));
    }
    Ok(part)
}

/// Closed-form partition weight enumerator of an MDS code over contiguous
/// blocks of the given sizes. `blocks == 0` means a single block.
///
/// # Safety
/// `code` is a live handle; `sizes` has `blocks` readable entries;
/// `table_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_pwgf(
    code: *const MdsweCode,
    sizes: *const usize,
    blocks: usize,
    table_out: *mut *mut MdsweTable,
) -> MdsweStatus {
    guard(|| {
        let slot = out(table_out, "table_out")?;
        let c = nonnull(code, "code")?;
        let Some(params) = c.mds else {
            return fail(MdsweStatus::NotMds, "code has no MDS parameters; use mdswe_brute_force");
        };
        let part = partition_for(&c.code, read_slice(sizes, blocks, "sizes")?)?;
        let poly = mdswe::mds_enum::pwgf(params, part.sizes())?;
        *slot = boxed(MdsweTable { table: PweTable::from_poly(&poly, part.sizes())? });
        Ok(())
    })
}

/// Partition weight enumerator by enumerating every codeword. A budget of
/// 0 selects the default codeword limit.
///
/// # Safety
/// As for [`mdswe_pwgf`].
#[no_mangle]
pub unsafe extern "C" fn mdswe_brute_force(
    code: *const MdsweCode,
    sizes: *const usize,
    blocks: usize,
    max_codewords: u64,
    table_out: *mut *mut MdsweTable,
) -> MdsweStatus {
    guard(|| {
        let slot = out(table_out, "table_out")?;
        let c = nonnull(code, "code")?;
        let part = partition_for(&c.code, read_slice(sizes, blocks, "sizes")?)?;
        *slot = boxed(MdsweTable { table: brute_force_pwe(&c.code, &part, budget(max_codewords))? });
        Ok(())
    })
}

/// Two-block enumerator of the dual code, from the enumerator of an
/// `[n, k]` code over GF(q).
///
/// # Safety
/// `table` is a live handle; `dual_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_macwilliams(
    table: *const MdsweTable,
    q: u64,
    k: usize,
    dual_out: *mut *mut MdsweTable,
) -> MdsweStatus {
    guard(|| {
        let slot = out(dual_out, "dual_out")?;
        let t = nonnull(table, "table")?;
        *slot = boxed(MdsweTable { table: macwilliams_pwe(&t.table, q, k)? });
        Ok(())
    })
}

/// # Safety
/// `table` is NULL or a handle from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mdswe_table_free(table: *mut MdsweTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of nonzero entries, or 0 for NULL.
///
/// # Safety
/// `table` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mdswe_table_len(table: *const MdsweTable) -> usize {
    table.as_ref().map_or(0, |t| t.table.len())
}

/// Number of blocks, or 0 for NULL.
///
/// # Safety
/// `table` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mdswe_table_blocks(table: *const MdsweTable) -> usize {
    table.as_ref().map_or(0, |t| t.table.sizes().len())
}

/// Copies the block sizes into `sizes_out`, which holds `cap` entries.
///
/// # Safety
/// `table` is a live handle; `sizes_out` has `cap` writable entries.
#[no_mangle]
pub unsafe extern "C" fn mdswe_table_sizes(table: *const MdsweTable, sizes_out: *mut usize, cap: usize) -> MdsweStatus {
    guard(|| {
        let t = nonnull(table, "table")?;
        copy_out(t.table.sizes(), sizes_out, cap)
    })
}

unsafe fn copy_out(src: &[usize], dst: *mut usize, cap: usize) -> Result<(), Failure> {
    if cap < src.len() {
        return fail(MdsweStatus::BufferTooSmall, format!("need {} entries, got {cap}", src.len()));
    }
    if !src.is_empty() {
        out(dst, "buffer")?;
        ptr::copy_nonoverlapping(src.as_ptr(), dst, src.len());
    }
    Ok(())
}

/// Entry `index` in lexicographic profile order: the profile goes to
/// `profile_out` (`cap` entries) and the decimal count to `count_out`.
///
/// # Safety
/// `table` is a live handle; `profile_out` has `cap` writable entries;
/// `count_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_table_entry(
    table: *const MdsweTable,
    index: usize,
    profile_out: *mut usize,
    cap: usize,
    count_out: *mut *mut c_char,
) -> MdsweStatus {
    guard(|| {
        let slot = out(count_out, "count_out")?;
        let t = nonnull(table, "table")?;
        let Some((profile, count)) = t.table.iter().nth(index) else {
            return fail(MdsweStatus::InvalidArgument, format!("index {index} out of range for {} entries", t.table.len()));
        };
        copy_out(profile, profile_out, cap)?;
        *slot = to_c_string(count.to_string())?;
        Ok(())
    })
}

/// Decimal count at `profile` (zero when absent).
///
/// # Safety
/// `table` is a live handle; `profile` has `len` readable entries;
/// `count_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_table_get(
    table: *const MdsweTable,
    profile: *const usize,
    len: usize,
    count_out: *mut *mut c_char,
) -> MdsweStatus {
    guard(|| {
        let slot = out(count_out, "count_out")?;
        let t = nonnull(table, "table")?;
        let profile = read_slice(profile, len, "profile")?;
        let sizes = t.table.sizes();
        if profile.len() != sizes.len() || profile.iter().zip(sizes).any(|(w, s)| w > s) {
            return fail(MdsweStatus::Partition, format!("profile {profile:?} does not fit block sizes {sizes:?}"));
        }
        *slot = to_c_string(t.table.get(profile).to_string())?;
        Ok(())
    })
}

/// Total number of codewords, as a decimal string.
///
/// # Safety
/// `table` is a live handle; `count_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_table_total(table: *const MdsweTable, count_out: *mut *mut c_char) -> MdsweStatus {
    guard(|| {
        let slot = out(count_out, "count_out")?;
        *slot = to_c_string(nonnull(table, "table")?.table.total().to_string())?;
        Ok(())
    })
}

/// JSON document with the partition and every nonzero entry, in the same
/// layout as the `mdswe pwe` command.
///
/// # Safety
/// `table` is a live handle; `json_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_table_to_json(table: *const MdsweTable, json_out: *mut *mut c_char) -> MdsweStatus {
    guard(|| {
        let slot = out(json_out, "json_out")?;
        *slot = to_c_string(PweDocument::from_table(&nonnull(table, "table")?.table).to_json())?;
        Ok(())
    })
}

/// # Safety
/// `json` is a NUL-terminated string; `table_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_table_from_json(json: *const c_char, table_out: *mut *mut MdsweTable) -> MdsweStatus {
    guard(|| {
        let slot = out(table_out, "table_out")?;
        let doc = PweDocument::from_json(read_str(json, "json")?)?;
        *slot = boxed(MdsweTable { table: doc.to_table()? });
        Ok(())
    })
}

/// Exact equality of two tables; false when either is NULL.
///
/// # Safety
/// Both arguments are NULL or live handles.
#[no_mangle]
pub unsafe extern "C" fn mdswe_table_equal(a: *const MdsweTable, b: *const MdsweTable) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.table == b.table,
        _ => false,
    }
}

/// Whether every coordinate carries weight `h E(h) / n` in each weight
/// class `h`. Writes the number of violating (coordinate, weight) pairs to
/// `witnesses_out` when it is not NULL.
///
/// # Safety
/// `code` is a live handle; `holds_out` is writable; `witnesses_out` is
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_property_a(
    code: *const MdsweCode,
    max_codewords: u64,
    holds_out: *mut bool,
    witnesses_out: *mut usize,
) -> MdsweStatus {
    guard(|| {
        let slot = out(holds_out, "holds_out")?;
        let report = property_a_check(&nonnull(code, "code")?.code, budget(max_codewords))?;
        *slot = report.holds;
        if let Some(w) = witnesses_out.as_mut() {
            *w = report.witnesses.len();
        }
        Ok(())
    })
}

fn weights_of(c: &MdsweCode) -> Result<(Vec<BigUint>, usize), Failure> {
    let w = match c.mds {
        Some(p) => weight_distribution(p),
        None => c.code.weight_distribution(Budget::DEFAULT)?,
    };
    let d = w.iter().skip(1).position(|x| *x != BigUint::default()).map_or(c.code.n() + 1, |i| i + 1);
    Ok((w, d))
}

unsafe fn bm(
    code: *const MdsweCode,
    p: f64,
    prob_out: *mut f64,
    f: fn(&[BigUint], usize, usize, u64, f64) -> mdswe::Result<f64>,
) -> MdsweStatus {
    guard(|| {
        let slot = out(prob_out, "prob_out")?;
        let c = nonnull(code, "code")?;
        let (w, d) = weights_of(c)?;
        *slot = f(&w, c.code.n(), d, c.code.field().order() as u64, p)?;
        Ok(())
    })
}

/// Codeword error probability of bounded-distance decoding on a q-ary
/// symmetric channel with symbol error probability `p`.
///
/// # Safety
/// `code` is a live handle; `prob_out` is writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_cep_bm(code: *const MdsweCode, p: f64, prob_out: *mut f64) -> MdsweStatus {
    bm(code, p, prob_out, cep_bm)
}

/// Symbol error probability of bounded-distance decoding; see
/// [`mdswe_cep_bm`].
///
/// # Safety
/// As for [`mdswe_cep_bm`].
#[no_mangle]
pub unsafe extern "C" fn mdswe_sep_bm(code: *const MdsweCode, p: f64, prob_out: *mut f64) -> MdsweStatus {
    bm(code, p, prob_out, sep_bm)
}

/// Bit and symbol error probabilities seen by an `(n, k)` code over
/// GF(2^m) with BPSK at `gamma_db` (Eb/N0 in dB).
///
/// # Safety
/// `p_bit_out` and `p_sym_out` are writable.
#[no_mangle]
pub unsafe extern "C" fn mdswe_channel(
    gamma_db: f64,
    n: usize,
    k: usize,
    m: u32,
    p_bit_out: *mut f64,
    p_sym_out: *mut f64,
) -> MdsweStatus {
    guard(|| {
        let pb = out(p_bit_out, "p_bit_out")?;
        let ps = out(p_sym_out, "p_sym_out")?;
        if n == 0 || k == 0 || k > n || m == 0 || !gamma_db.is_finite() {
            return fail(MdsweStatus::InvalidArgument, format!("bad channel parameters n={n} k={k} m={m} gamma={gamma_db}"));
        }
        let c = channel_map(gamma_db, n, k, m);
        *pb = c.p_bit;
        *ps = c.p_symbol;
        Ok(())
    })
}
