//! Small dense-matrix helpers shared across modules.

use nalgebra::{DMatrix, DVector};

/// Spectral (induced 2-) norm: largest singular value.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// Spectral radius: largest eigenvalue modulus.
pub fn spectral_radius(m: &DMatrix<f64>) -> f64 {
    m.complex_eigenvalues().iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Eigenvalue range (min, max) of a symmetric matrix.
pub fn symmetric_eigen_range(m: &DMatrix<f64>) -> (f64, f64) {
    let eig = m.clone().symmetric_eigen();
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (min, max)
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn lambda_min(m: &DMatrix<f64>) -> f64 {
    symmetric_eigen_range(m).0
}

/// True when the matrix is symmetric (to `tol`) with all eigenvalues > 0.
pub fn is_symmetric_positive_definite(m: &DMatrix<f64>, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let asym = (m - m.transpose()).amax();
    if asym > tol * (1.0 + m.amax()) {
        return false;
    }
    lambda_min(&0.5 * (m + m.transpose())) > 0.0
}

/// True when every entry of the vector is finite.
pub fn all_finite(v: &DVector<f64>) -> bool {
    v.iter().all(|x| x.is_finite())
}

/// True when every entry of the matrix is finite.
pub fn all_finite_mat(m: &DMatrix<f64>) -> bool {
    m.iter().all(|x| x.is_finite())
}
