//! Small dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::DMatrix;

use crate::C64;

pub type CMatrix = DMatrix<C64>;

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted decreasing.
///
/// Column `j` of the returned matrix is the unit eigenvector of eigenvalue `j`.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    // Symmetrise explicitly; the solver only reads one triangle.
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    hermitian_eigen(m).0
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    frobenius(&(m - m.adjoint()))
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Determinant of the principal submatrix on the index set `rows`.
pub fn principal_minor(m: &CMatrix, rows: &[usize]) -> C64 {
    if rows.is_empty() {
        return C64::new(1.0, 0.0);
    }
    let sub = CMatrix::from_fn(rows.len(), rows.len(), |i, j| m[(rows[i], rows[j])]);
    sub.lu().determinant()
}

/// Smallest gap between consecutive entries of a sorted list.
pub fn min_spacing(sorted: &[f64]) -> f64 {
    sorted.windows(2).map(|w| (w[0] - w[1]).abs()).fold(f64::INFINITY, f64::min)
}
