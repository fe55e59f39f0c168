//! Distance and Cayley–Menger matrices, circumradii, and the analytic
//! gradient of the squared circumradius.
//!
//! For an affinely independent sub-configuration with squared-distance
//! matrix `L` and bordered Cayley–Menger matrix `M`, the squared
//! circumradius is `-det L / (2 det M)`. The gradient is obtained from the
//! determinant derivative `d det(A) = tr(adj(A) dA)` applied to both
//! determinants, chained through the squared distances.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::{PointCloud, SimplexKey};
use crate::linalg::{affinely_independent, DEFAULT_RANK_TOL};

/// Symmetric matrix of squared distances of a sub-configuration, zero
/// diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix(DMatrix<f64>);

/// Bordered `(k+1) x (k+1)` matrix: zero corner, border of ones, and the
/// squared-distance block.
#[derive(Debug, Clone, PartialEq)]
pub struct CayleyMengerMatrix(DMatrix<f64>);

impl DistanceMatrix {
    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }
}

impl CayleyMengerMatrix {
    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }
}

/// Distance and Cayley–Menger matrices of the sub-configuration selected by
/// `simplex`, rows and columns in the simplex's vertex order.
pub fn cayley_menger(
    cloud: &PointCloud,
    simplex: &SimplexKey,
) -> Result<(CayleyMengerMatrix, DistanceMatrix)> {
    simplex.check_against(cloud.n())?;
    let verts = simplex.vertices();
    let k = verts.len();
    let mut lambda = DMatrix::<f64>::zeros(k, k);
    for a in 0..k {
        for b in (a + 1)..k {
            let d2 = cloud.squared_distance(verts[a], verts[b])?;
            lambda[(a, b)] = d2;
            lambda[(b, a)] = d2;
        }
    }
    let mut delta = DMatrix::<f64>::zeros(k + 1, k + 1);
    for a in 0..k {
        delta[(0, a + 1)] = 1.0;
        delta[(a + 1, 0)] = 1.0;
    }
    delta.view_mut((1, 1), (k, k)).copy_from(&lambda);
    Ok((CayleyMengerMatrix(delta), DistanceMatrix(lambda)))
}

fn require_affinely_independent(cloud: &PointCloud, simplex: &SimplexKey) -> Result<()> {
    let sub = cloud.sub_configuration(simplex)?;
    if !affinely_independent(&sub, DEFAULT_RANK_TOL) {
        return Err(Error::DegenerateSimplex {
            vertices: simplex.vertices().to_vec(),
        });
    }
    Ok(())
}

/// Squared circumradius of the simplex's sub-configuration, via the
/// Cayley–Menger determinant ratio. Zero for singletons.
///
/// Fails with [`Error::DegenerateSimplex`] when the sub-configuration is
/// affinely dependent, in which case the circumsphere need not exist.
pub fn circumradius_squared(cloud: &PointCloud, simplex: &SimplexKey) -> Result<f64> {
    require_affinely_independent(cloud, simplex)?;
    if simplex.len() == 1 {
        return Ok(0.0);
    }
    let (delta, lambda) = cayley_menger(cloud, simplex)?;
    Ok(-lambda.det() / (2.0 * delta.det()))
}

/// Gradient of [`circumradius_squared`] with respect to all `n*d` point
/// coordinates (point blocks in index order). Entries outside the simplex's
/// blocks are zero.
pub fn circumradius_gradient(cloud: &PointCloud, simplex: &SimplexKey) -> Result<DVector<f64>> {
    require_affinely_independent(cloud, simplex)?;
    let n = cloud.n();
    let d = cloud.dim();
    let mut grad = DVector::<f64>::zeros(n * d);
    let k = simplex.len();
    if k == 1 {
        return Ok(grad); // circumradius of a point is identically zero
    }

    let (delta, lambda) = cayley_menger(cloud, simplex)?;
    let det_l = lambda.det();
    let det_m = delta.det();
    let adj_l = adjugate_symmetric(lambda.as_matrix(), simplex)?;
    let adj_m = adjugate_symmetric(delta.as_matrix(), simplex)?;

    let verts = simplex.vertices();
    for a in 0..k {
        for b in (a + 1)..k {
            // d(R^2)/d(D_ab) where D_ab is the squared distance; the factor
            // 2 from symmetric entries cancels against 2*det(M) in Eq. 2's
            // denominator derivative.
            let g = -(adj_l[(a, b)] * det_m - det_l * adj_m[(a + 1, b + 1)]) / (det_m * det_m);
            let (va, vb) = (verts[a], verts[b]);
            let diff = cloud.point(va) - cloud.point(vb);
            for c in 0..d {
                grad[va * d + c] += g * 2.0 * diff[c];
                grad[vb * d + c] -= g * 2.0 * diff[c];
            }
        }
    }
    Ok(grad)
}

/// Adjugate of a symmetric matrix via `adj(A) = det(A) * A^{-1}`. The
/// matrices here are nonsingular whenever the simplex is affinely
/// independent, so inversion failing signals degeneracy.
fn adjugate_symmetric(a: &DMatrix<f64>, simplex: &SimplexKey) -> Result<DMatrix<f64>> {
    let det = a.determinant();
    match a.clone().try_inverse() {
        Some(inv) => Ok(inv * det),
        None => Err(Error::DegenerateSimplex {
            vertices: simplex.vertices().to_vec(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn unit_equilateral() -> PointCloud {
        PointCloud::new(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.5, 3.0_f64.sqrt() / 2.0],
        ])
        .unwrap()
    }

    #[test]
    fn singleton_matrices() {
        let p = PointCloud::new(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let s = SimplexKey::new(vec![1]).unwrap();
        let (delta, lambda) = cayley_menger(&p, &s).unwrap();
        assert_eq!(lambda.as_matrix(), &DMatrix::from_row_slice(1, 1, &[0.0]));
        assert_eq!(
            delta.as_matrix(),
            &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
        );
    }

    #[test]
    fn equilateral_determinants() {
        // 3x3 and 4x4 expansions by hand: det L = 2, det M = -3.
        let p = unit_equilateral();
        let s = SimplexKey::new(vec![0, 1, 2]).unwrap();
        let (delta, lambda) = cayley_menger(&p, &s).unwrap();
        assert_relative_eq!(lambda.det(), 2.0, max_relative = 1e-12);
        assert_relative_eq!(delta.det(), -3.0, max_relative = 1e-12);
    }

    #[test]
    fn two_point_determinants() {
        let p = PointCloud::new(vec![vec![0.0], vec![2.0]]).unwrap();
        let s = SimplexKey::new(vec![0, 1]).unwrap();
        let (delta, lambda) = cayley_menger(&p, &s).unwrap();
        assert_relative_eq!(lambda.det(), -16.0, max_relative = 1e-12);
        assert_relative_eq!(delta.det(), 8.0, max_relative = 1e-12);
    }

    #[test]
    fn circumradius_examples() {
        // Midpoint sphere of a pair at distance 2.
        let pair = PointCloud::new(vec![vec![0.0, 0.0], vec![2.0, 0.0]]).unwrap();
        let s01 = SimplexKey::new(vec![0, 1]).unwrap();
        assert_relative_eq!(circumradius_squared(&pair, &s01).unwrap(), 1.0);

        // Unit equilateral: -2 / (2 * -3) = 1/3.
        let tri = unit_equilateral();
        let s012 = SimplexKey::new(vec![0, 1, 2]).unwrap();
        assert_relative_eq!(
            circumradius_squared(&tri, &s012).unwrap(),
            1.0 / 3.0,
            max_relative = 1e-12
        );

        // Right triangle with legs 3, 4: circumradius is half the
        // hypotenuse, 2.5, squared 6.25.
        let right = PointCloud::new(vec![vec![0.0, 0.0], vec![3.0, 0.0], vec![0.0, 4.0]]).unwrap();
        assert_relative_eq!(
            circumradius_squared(&right, &s012).unwrap(),
            6.25,
            max_relative = 1e-12
        );
    }

    #[test]
    fn degenerate_simplex_rejected() {
        let collinear =
            PointCloud::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]]).unwrap();
        let s = SimplexKey::new(vec![0, 1, 2]).unwrap();
        assert!(matches!(
            circumradius_squared(&collinear, &s),
            Err(Error::DegenerateSimplex { .. })
        ));
    }

    #[test]
    fn pair_gradient_is_quarter_of_squared_distance_gradient() {
        let p = PointCloud::new(vec![vec![0.3, -0.2], vec![1.7, 0.9]]).unwrap();
        let s = SimplexKey::new(vec![0, 1]).unwrap();
        let g = circumradius_gradient(&p, &s).unwrap();
        let diff = p.point(0) - p.point(1);
        // R^2 = D/4, so the gradient is (2 diff)/4 in block 0.
        for c in 0..2 {
            assert_relative_eq!(g[c], diff[c] / 2.0, max_relative = 1e-12);
            assert_relative_eq!(g[2 + c], -diff[c] / 2.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn gradient_annihilates_rigid_motions() {
        let p = PointCloud::new(vec![
            vec![0.1, 0.2],
            vec![1.3, -0.4],
            vec![0.6, 1.1],
        ])
        .unwrap();
        let s = SimplexKey::new(vec![0, 1, 2]).unwrap();
        let g = circumradius_gradient(&p, &s).unwrap();

        // Translations: e_x and e_y repeated per point.
        for c in 0..2 {
            let mut v = DVector::<f64>::zeros(6);
            for i in 0..3 {
                v[i * 2 + c] = 1.0;
            }
            assert!(g.dot(&v).abs() < 1e-10);
        }
        // Infinitesimal rotation: velocity (-y, x) at each point.
        let mut rot = DVector::<f64>::zeros(6);
        for i in 0..3 {
            rot[i * 2] = -p.point(i)[1];
            rot[i * 2 + 1] = p.point(i)[0];
        }
        assert!(g.dot(&rot).abs() < 1e-10);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let p = PointCloud::new(vec![
            vec![0.05, 0.12],
            vec![1.02, 0.11],
            vec![0.47, 0.93],
        ])
        .unwrap();
        let s = SimplexKey::new(vec![0, 1, 2]).unwrap();
        let g = circumradius_gradient(&p, &s).unwrap();
        let fd = crate::numdiff::central_difference_gradient(
            &p,
            1e-6 * p.diameter(),
            |q| circumradius_squared(q, &s).unwrap(),
        );
        assert!((g - &fd).norm() / fd.norm() < 1e-6);
    }
}
