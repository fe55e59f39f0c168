//! Central finite differences over point-cloud coordinates. Exposed as a
//! cross-check utility for the analytic Jacobians.

use nalgebra::DVector;

use crate::geometry::PointCloud;

/// Central-difference gradient of `f` at `cloud`, one entry per coordinate
/// in flattened (point-block) order, with step `h` per coordinate.
pub fn central_difference_gradient<F>(cloud: &PointCloud, h: f64, mut f: F) -> DVector<f64>
where
    F: FnMut(&PointCloud) -> f64,
{
    let n = cloud.n();
    let d = cloud.dim();
    let base = cloud.flattened();
    let mut grad = DVector::<f64>::zeros(n * d);
    for idx in 0..n * d {
        let mut plus = base.clone();
        plus[idx] += h;
        let mut minus = base.clone();
        minus[idx] -= h;
        let fp = f(&PointCloud::from_flattened(&plus, n, d).expect("perturbed cloud"));
        let fm = f(&PointCloud::from_flattened(&minus, n, d).expect("perturbed cloud"));
        grad[idx] = (fp - fm) / (2.0 * h);
    }
    grad
}

/// Central-difference Jacobian of a vector-valued map, rows in the map's
/// output order.
pub fn central_difference_jacobian<F>(
    cloud: &PointCloud,
    h: f64,
    rows: usize,
    mut f: F,
) -> nalgebra::DMatrix<f64>
where
    F: FnMut(&PointCloud) -> Vec<f64>,
{
    let n = cloud.n();
    let d = cloud.dim();
    let base = cloud.flattened();
    let mut jac = nalgebra::DMatrix::<f64>::zeros(rows, n * d);
    for idx in 0..n * d {
        let mut plus = base.clone();
        plus[idx] += h;
        let mut minus = base.clone();
        minus[idx] -= h;
        let fp = f(&PointCloud::from_flattened(&plus, n, d).expect("perturbed cloud"));
        let fm = f(&PointCloud::from_flattened(&minus, n, d).expect("perturbed cloud"));
        for r in 0..rows {
            jac[(r, idx)] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    jac
}
