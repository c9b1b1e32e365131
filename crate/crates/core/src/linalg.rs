//! Dense complex linear algebra helpers shared by every module.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

/// Residual threshold used by report checks that compare computed identities.
pub const CHECK_TOL: f64 = 1e-8;

pub const DEFAULT_TOL: f64 = 1e-9;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Matrix unit E_ij in an n×n ambient.
pub fn unit_matrix(n: usize, i: usize, j: usize) -> CMatrix {
    let mut m = zeros(n, n);
    m[(i, j)] = C64::new(1.0, 0.0);
    m
}

/// Build a matrix from row-major real entries.
pub fn real_matrix(rows: usize, cols: usize, entries: &[f64]) -> CMatrix {
    CMatrix::from_row_iterator(rows, cols, entries.iter().map(|&x| C64::new(x, 0.0)))
}

pub fn diag(entries: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(entries))
}

pub fn pauli_x() -> CMatrix {
    real_matrix(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn pauli_y() -> CMatrix {
    let mut m = zeros(2, 2);
    m[(0, 1)] = c(0.0, -1.0);
    m[(1, 0)] = c(0.0, 1.0);
    m
}

pub fn pauli_z() -> CMatrix {
    real_matrix(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

/// Kronecker product a ⊗ b.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn frob_norm(m: &CMatrix) -> f64 {
    m.norm()
}

/// Frobenius inner product trace(a* b), conjugate-linear in `a`.
pub fn frob_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Column-major flattening, the coordinate vector used for all subspace algebra.
pub fn flatten(m: &CMatrix) -> CVector {
    CVector::from_column_slice(m.as_slice())
}

pub fn unflatten(v: &[C64], rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_column_slice(rows, cols, v)
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Largest singular value.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// Moore–Penrose pseudo-inverse with a relative singular value cutoff.
pub fn pinv(m: &CMatrix, rel_cutoff: f64) -> CMatrix {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return zeros(c, r);
    }
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let cutoff = rel_cutoff * smax.max(f64::MIN_POSITIVE);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let mut out = zeros(c, r);
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff {
            let col = vt.row(k).adjoint();
            let row = u.column(k).adjoint();
            out += (col * row) * C64::new(1.0 / s, 0.0);
        }
    }
    out
}

/// Numerical rank with threshold `tol * max(largest singular value, 1)`.
pub fn rank(m: &CMatrix, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.singular_values();
    let thr = tol * sv.max().max(1.0);
    sv.iter().filter(|&&s| s > thr).count()
}

/// Orthonormal basis of the kernel of `m` (columns of the result).
/// Singular values at or below `thr` count as zero.
pub fn null_space(m: &CMatrix, thr: f64) -> CMatrix {
    let (r, c) = m.shape();
    if c == 0 {
        return zeros(0, 0);
    }
    // pad to at least square so that v_t is complete
    let padded = if r < c {
        let mut p = zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let cols: Vec<CVector> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= thr)
        .map(|(k, _)| vt.row(k).adjoint())
        .collect();
    if cols.is_empty() {
        zeros(c, 0)
    } else {
        CMatrix::from_columns(&cols)
    }
}

pub fn hermitian_residual(m: &CMatrix) -> f64 {
    frob_norm(&(m - m.adjoint()))
}

/// Eigen-decomposition of a Hermitian matrix (the input is symmetrized first).
pub fn hermitian_eigen(m: &CMatrix) -> (RVector, CMatrix) {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    (eig.eigenvalues, eig.eigenvectors)
}

/// Rebuild V·diag(f(λ))·V* from an eigen-decomposition.
pub fn spectral_apply(values: &RVector, vectors: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let d: Vec<C64> = values.iter().map(|&l| C64::new(f(l), 0.0)).collect();
    vectors * diag(&d) * vectors.adjoint()
}

/// Realified coordinates [Re v; Im v].
pub fn realify_vec(v: &CVector) -> RVector {
    let k = v.len();
    RVector::from_fn(2 * k, |i, _| if i < k { v[i].re } else { v[i - k].im })
}

pub fn complexify_vec(r: &RVector) -> CVector {
    let k = r.len() / 2;
    CVector::from_fn(k, |i, _| C64::new(r[i], r[i + k]))
}

/// Realification of a complex matrix: [[Re, −Im], [Im, Re]].
pub fn realify_mat(m: &CMatrix) -> RMatrix {
    let (r, c) = m.shape();
    RMatrix::from_fn(2 * r, 2 * c, |i, j| {
        let z = m[(i % r, j % c)];
        match (i < r, j < c) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

pub fn real_pinv(m: &RMatrix, rel_cutoff: f64) -> RMatrix {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return RMatrix::zeros(c, r);
    }
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let cutoff = rel_cutoff * smax.max(f64::MIN_POSITIVE);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let mut out = RMatrix::zeros(c, r);
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > cutoff {
            out += (vt.row(k).transpose() * u.column(k).transpose()) / s;
        }
    }
    out
}

pub fn real_rank(m: &RMatrix, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.singular_values();
    let thr = tol * sv.max().max(1.0);
    sv.iter().filter(|&&s| s > thr).count()
}

/// Square matrix with entries uniform in the unit square of the complex plane.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// A unitary obtained from the QR factorization of a random matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if rank(&m, 1e-6) == n {
            return m.qr().q();
        }
    }
}

/// Checks that a matrix has finite entries and the expected shape.
pub fn check_shape(m: &CMatrix, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::ShapeMismatch {
            expected: (rows, cols),
            found: m.shape(),
        });
    }
    if !is_finite(m) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pinv_inverts_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&mut rng, 4, 4);
        let p = pinv(&m, 1e-12);
        assert!(frob_norm(&(m * p - identity(4))) < 1e-10);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let m = real_matrix(1, 3, &[1.0, 1.0, 0.0]);
        let k = null_space(&m, 1e-10);
        assert_eq!(k.ncols(), 2);
        assert!(frob_norm(&(m * k)) < 1e-12);
    }

    #[test]
    fn realify_roundtrip_and_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 3, 2);
        let v = CVector::from_fn(2, |i, _| c(i as f64, 1.0 - i as f64));
        let lhs = realify_vec(&(&a * &v));
        let rhs = realify_mat(&a) * realify_vec(&v);
        assert!((lhs - rhs).norm() < 1e-12);
        assert_eq!(complexify_vec(&realify_vec(&v)), v);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_unitary(&mut rng, 3);
        assert!(frob_norm(&(u.adjoint() * &u - identity(3))) < 1e-12);
    }

    #[test]
    fn op_norm_of_pauli() {
        assert!((op_norm(&pauli_y()) - 1.0).abs() < 1e-12);
    }
}
