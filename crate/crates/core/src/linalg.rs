//! Dense symmetric/Hermitian eigensolvers on top of LAPACK's divide-and-conquer
//! drivers (`dsyevd`, `zheevd`).
//!
//! BLAS is pinned to a single thread: all parallelism in this crate happens one
//! level up (across walkers and trials), which keeps every factorization
//! bit-identical regardless of the worker-pool width.

use std::ffi::CStr;
use std::os::raw::{c_char, c_int};
use std::sync::OnceLock;

use ndarray::{Array1, Array2, ShapeBuilder};
use num_complex::Complex64;

use crate::error::{Error, Result};

extern crate openblas_src;

extern "C" {
    fn openblas_set_num_threads(num_threads: c_int);
    fn openblas_get_corename() -> *const c_char;
    fn gotoblas_dynamic_init();
    fn gotoblas_dynamic_quit();
    fn dtrmm_(
        side: *const c_char,
        uplo: *const c_char,
        transa: *const c_char,
        diag: *const c_char,
        m: *const c_int,
        n: *const c_int,
        alpha: *const f64,
        a: *const f64,
        lda: *const c_int,
        b: *mut f64,
        ldb: *const c_int,
    );
}

static BLAS_STATE: OnceLock<std::result::Result<(), String>> = OnceLock::new();

/// OpenBLAS cores with a broken `dtrmm` kernel and the core to switch to.
/// Seen with OpenBLAS 0.3.20 on Cooperlake, where every blocked Householder
/// step in LAPACK comes out wrong.
const CORE_FALLBACKS: &[(&str, &str)] = &[("cooperlake", "SkylakeX")];

pub(crate) fn init_blas() -> Result<()> {
    BLAS_STATE
        .get_or_init(|| unsafe {
            openblas_set_num_threads(1);
            if trmm_probe() {
                return Ok(());
            }
            let core = corename();
            let fallback = CORE_FALLBACKS.iter().find(|(bad, _)| core.eq_ignore_ascii_case(bad));
            match fallback {
                Some((_, good)) if std::env::var_os("OPENBLAS_CORETYPE").is_none() => {
                    std::env::set_var("OPENBLAS_CORETYPE", good);
                    gotoblas_dynamic_quit();
                    gotoblas_dynamic_init();
                    std::env::remove_var("OPENBLAS_CORETYPE");
                    openblas_set_num_threads(1);
                    if trmm_probe() {
                        Ok(())
                    } else {
                        Err(format!("dtrmm is wrong on core {core} and on fallback {}", corename()))
                    }
                }
                _ => Err(format!("dtrmm is wrong on OpenBLAS core {core}; set OPENBLAS_CORETYPE to another core")),
            }
        })
        .clone()
        .map_err(Error::Blas)
}

unsafe fn corename() -> String {
    let p = openblas_get_corename();
    if p.is_null() {
        return String::from("unknown");
    }
    CStr::from_ptr(p).to_string_lossy().trim().to_string()
}

/// Upper-triangular `B := A B` on a 96×96 block, checked against a plain loop.
unsafe fn trmm_probe() -> bool {
    const N: usize = 96;
    let a: Vec<f64> = (0..N * N).map(|i| ((i * 37 % 101) as f64 - 50.0) / 50.0).collect();
    let b0: Vec<f64> = (0..N * N).map(|i| ((i * 53 % 97) as f64 - 48.0) / 48.0).collect();
    let mut b = b0.clone();
    let n = N as c_int;
    let (side, uplo, trans, diag) = (b'L' as c_char, b'U' as c_char, b'N' as c_char, b'N' as c_char);
    dtrmm_(&side, &uplo, &trans, &diag, &n, &n, &1.0, a.as_ptr(), &n, b.as_mut_ptr(), &n);
    // column-major: a[r + c*N]
    for j in 0..N {
        for i in 0..N {
            let want: f64 = (i..N).map(|l| a[i + l * N] * b0[l + j * N]).sum();
            if (want - b[i + j * N]).abs() > 1e-10 {
                return false;
            }
        }
    }
    true
}

const JOBZ_V: u8 = b'V';
const UPLO_L: u8 = b'L';

/// Eigen-decomposition of a real symmetric matrix. Only the lower triangle is
/// read. Eigenvalues ascend; eigenvectors are the columns of the returned
/// matrix.
pub fn symmetric_eigh(matrix: &Array2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    init_blas()?;
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: matrix.ncols() });
    }
    if n == 0 {
        return Ok((Array1::zeros(0), Array2::zeros((0, 0))));
    }
    let mut a = Array2::<f64>::zeros((n, n).f());
    a.assign(matrix);
    let mut w = vec![0.0f64; n];
    let n_c = n as c_int;
    let mut info: c_int = 0;

    let mut work_q = [0.0f64];
    let mut iwork_q = [0 as c_int];
    let query: c_int = -1;
    unsafe {
        lapack_sys::dsyevd_(
            &JOBZ_V as *const u8 as *const _,
            &UPLO_L as *const u8 as *const _,
            &n_c,
            a.as_mut_ptr(),
            &n_c,
            w.as_mut_ptr(),
            work_q.as_mut_ptr(),
            &query,
            iwork_q.as_mut_ptr(),
            &query,
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Eigensolver(info));
    }
    let lwork = work_q[0] as c_int;
    let liwork = iwork_q[0];
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    let mut iwork = vec![0 as c_int; liwork.max(1) as usize];
    unsafe {
        lapack_sys::dsyevd_(
            &JOBZ_V as *const u8 as *const _,
            &UPLO_L as *const u8 as *const _,
            &n_c,
            a.as_mut_ptr(),
            &n_c,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Eigensolver(info));
    }
    Ok((Array1::from(w), a.as_standard_layout().into_owned()))
}

/// Eigen-decomposition of a complex Hermitian matrix. Only the lower triangle
/// is read. Eigenvalues ascend; eigenvectors are the columns of the returned
/// unitary matrix.
pub fn hermitian_eigh(matrix: &Array2<Complex64>) -> Result<(Array1<f64>, Array2<Complex64>)> {
    init_blas()?;
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: matrix.ncols() });
    }
    if n == 0 {
        return Ok((Array1::zeros(0), Array2::zeros((0, 0))));
    }
    let mut a = Array2::<Complex64>::zeros((n, n).f());
    a.assign(matrix);
    let mut w = vec![0.0f64; n];
    let n_c = n as c_int;
    let mut info: c_int = 0;

    let mut work_q = [Complex64::new(0.0, 0.0)];
    let mut rwork_q = [0.0f64];
    let mut iwork_q = [0 as c_int];
    let query: c_int = -1;
    unsafe {
        lapack_sys::zheevd_(
            &JOBZ_V as *const u8 as *const _,
            &UPLO_L as *const u8 as *const _,
            &n_c,
            a.as_mut_ptr() as *mut _,
            &n_c,
            w.as_mut_ptr(),
            work_q.as_mut_ptr() as *mut _,
            &query,
            rwork_q.as_mut_ptr(),
            &query,
            iwork_q.as_mut_ptr(),
            &query,
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Eigensolver(info));
    }
    let lwork = work_q[0].re as c_int;
    let lrwork = rwork_q[0] as c_int;
    let liwork = iwork_q[0];
    let mut work = vec![Complex64::new(0.0, 0.0); lwork.max(1) as usize];
    let mut rwork = vec![0.0f64; lrwork.max(1) as usize];
    let mut iwork = vec![0 as c_int; liwork.max(1) as usize];
    unsafe {
        lapack_sys::zheevd_(
            &JOBZ_V as *const u8 as *const _,
            &UPLO_L as *const u8 as *const _,
            &n_c,
            a.as_mut_ptr() as *mut _,
            &n_c,
            w.as_mut_ptr(),
            work.as_mut_ptr() as *mut _,
            &lwork,
            rwork.as_mut_ptr(),
            &lrwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Eigensolver(info));
    }
    Ok((Array1::from(w), a.as_standard_layout().into_owned()))
}
