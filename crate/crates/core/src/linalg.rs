//! Small dense linear-algebra helpers: numerical rank, affine independence,
//! kernel bases. Everything here operates on matrices with at most a few
//! hundred rows, so full decompositions are fine.

use nalgebra::{DMatrix, DVector};

/// Default relative singular-value threshold for rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Numerical rank: the number of singular values above `rel_tol` times the
/// largest one. A zero matrix has rank 0.
pub fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.max();
    if max <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Whether the rows of `points` (one point per row) are affinely
/// independent, decided by the numerical rank of the difference vectors
/// relative to the first point. A single point is affinely independent.
pub fn affinely_independent(points: &DMatrix<f64>, rel_tol: f64) -> bool {
    let k = points.nrows();
    if k <= 1 {
        return true;
    }
    let d = points.ncols();
    let mut diffs = DMatrix::<f64>::zeros(k - 1, d);
    for i in 1..k {
        for j in 0..d {
            diffs[(i - 1, j)] = points[(i, j)] - points[(0, j)];
        }
    }
    numerical_rank(&diffs, rel_tol) == k - 1
}

/// Dimension of the affine span of the rows of `points`.
pub fn affine_span_dim(points: &DMatrix<f64>, rel_tol: f64) -> usize {
    let k = points.nrows();
    if k <= 1 {
        return 0;
    }
    let d = points.ncols();
    let mut diffs = DMatrix::<f64>::zeros(k - 1, d);
    for i in 1..k {
        for j in 0..d {
            diffs[(i - 1, j)] = points[(i, j)] - points[(0, j)];
        }
    }
    numerical_rank(&diffs, rel_tol)
}

/// Copy of `m` with every nonzero row scaled to unit norm. Positive row
/// rescaling preserves rank while decoupling the relative singular-value
/// threshold from disparate row magnitudes.
pub fn row_normalized(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = m.clone();
    for r in 0..out.nrows() {
        let norm = out.row(r).norm();
        if norm > 0.0 {
            for c in 0..out.ncols() {
                out[(r, c)] /= norm;
            }
        }
    }
    out
}

/// Orthonormal basis of the left kernel of `m`, i.e. of `{ w : m^T w = 0 }`.
///
/// The kernel dimension is fixed by the SVD rank of `m` (so the rank
/// decision and the kernel agree); the vectors are the eigenvectors of
/// `m m^T` with the smallest eigenvalues.
pub fn left_kernel_basis(m: &DMatrix<f64>, rel_tol: f64) -> Vec<DVector<f64>> {
    let rows = m.nrows();
    if rows == 0 {
        return Vec::new();
    }
    let kernel_dim = rows - numerical_rank(m, rel_tol);
    if kernel_dim == 0 {
        return Vec::new();
    }
    let gram = m * m.transpose();
    let eig = gram.symmetric_eigen();
    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    order[..kernel_dim]
        .iter()
        .map(|&i| eig.eigenvectors.column(i).into_owned())
        .collect()
}
