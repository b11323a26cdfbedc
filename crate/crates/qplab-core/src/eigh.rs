//! Thin wrappers over LAPACK's divide-and-conquer Hermitian eigensolvers.
//!
//! LAPACK works in column-major order. We hand it the raw row-major buffer
//! unchanged: the input is Hermitian (real symmetric), so the transposed
//! interpretation diagonalizes the conjugate matrix, which has the same
//! eigenvalues and conjugated eigenvectors; reading the column-major output
//! back as row-major then yields the eigenvectors as *rows* without any
//! copy. Both wrappers therefore return `(w, b)` with `b[(j, s)] = psi_j(s)`
//! and `w` ascending.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const JOB_VECTORS: i8 = b'V' as i8;
const UPLO_LOWER: i8 = b'L' as i8;

/// Eigendecomposition of a real symmetric matrix via `dsyevd`.
pub(crate) fn eigh_real(mut a: Array2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    let n = checked_order(a.nrows(), a.ncols())?;
    if n == 0 {
        return Err(Error::Eigensolver("empty matrix".into()));
    }
    let ni = n as i32;
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;

    // workspace query
    let mut work_query = [0.0f64];
    let mut iwork_query = [0i32];
    unsafe {
        lapack_sys::dsyevd_(
            &JOB_VECTORS,
            &UPLO_LOWER,
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work_query.as_mut_ptr(),
            &-1,
            iwork_query.as_mut_ptr(),
            &-1,
            &mut info,
        );
    }
    let lwork = work_query[0] as i32;
    let liwork = iwork_query[0];
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        lapack_sys::dsyevd_(
            &JOB_VECTORS,
            &UPLO_LOWER,
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
        );
    }
    check_info("dsyevd", info)?;
    Ok((Array1::from(w), a))
}

/// Eigendecomposition of a complex Hermitian matrix via `zheevd`.
pub(crate) fn eigh_complex(mut a: Array2<C64>) -> Result<(Array1<f64>, Array2<C64>)> {
    let n = checked_order(a.nrows(), a.ncols())?;
    if n == 0 {
        return Err(Error::Eigensolver("empty matrix".into()));
    }
    let ni = n as i32;
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;

    let mut work_query = [C64::new(0.0, 0.0)];
    let mut rwork_query = [0.0f64];
    let mut iwork_query = [0i32];
    unsafe {
        lapack_sys::zheevd_(
            &JOB_VECTORS,
            &UPLO_LOWER,
            &ni,
            a.as_mut_ptr() as *mut _,
            &ni,
            w.as_mut_ptr(),
            work_query.as_mut_ptr() as *mut _,
            &-1,
            rwork_query.as_mut_ptr(),
            &-1,
            iwork_query.as_mut_ptr(),
            &-1,
            &mut info,
        );
    }
    let lwork = work_query[0].re as i32;
    let lrwork = rwork_query[0] as i32;
    let liwork = iwork_query[0];
    let mut work = vec![C64::new(0.0, 0.0); lwork.max(1) as usize];
    let mut rwork = vec![0.0f64; lrwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        lapack_sys::zheevd_(
            &JOB_VECTORS,
            &UPLO_LOWER,
            &ni,
            a.as_mut_ptr() as *mut _,
            &ni,
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
    check_info("zheevd", info)?;
    // Column-major output read as row-major is the transpose V^T, whose rows
    // are the eigenvectors of conj(A); conjugate to get those of A itself.
    a.mapv_inplace(|z| z.conj());
    Ok((Array1::from(w), a))
}

fn checked_order(rows: usize, cols: usize) -> Result<usize> {
    if rows != cols {
        return Err(Error::Eigensolver(format!(
            "matrix is {rows}x{cols}, expected square"
        )));
    }
    if rows > i32::MAX as usize {
        return Err(Error::Eigensolver("matrix order exceeds i32".into()));
    }
    Ok(rows)
}

fn check_info(routine: &str, info: i32) -> Result<()> {
    if info == 0 {
        Ok(())
    } else {
        Err(Error::Eigensolver(format!(
            "{routine} returned info = {info}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn real_two_by_two() {
        let a = array![[0.0, 1.0], [1.0, 0.0]];
        let (w, b) = eigh_real(a).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-12 && (w[1] - 1.0).abs() < 1e-12);
        // rows are eigenvectors
        for j in 0..2 {
            let r = &b.row(j);
            let hv = [r[1], r[0]]; // H = [[0,1],[1,0]]
            assert!((hv[0] - w[j] * r[0]).abs() < 1e-12);
            assert!((hv[1] - w[j] * r[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_hermitian_small() {
        let i = C64::new(0.0, 1.0);
        let a = array![
            [C64::new(1.0, 0.0), 0.5 * i],
            [-0.5 * i, C64::new(-1.0, 0.0)]
        ];
        let (w, b) = eigh_complex(a.clone()).unwrap();
        assert!(w[0] < w[1]);
        for j in 0..2 {
            let v = b.row(j);
            let hv0 = a[(0, 0)] * v[0] + a[(0, 1)] * v[1];
            let hv1 = a[(1, 0)] * v[0] + a[(1, 1)] * v[1];
            assert!((hv0 - v[0] * w[j]).norm() < 1e-12);
            assert!((hv1 - v[1] * w[j]).norm() < 1e-12);
        }
    }
}
