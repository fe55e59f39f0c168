//! Minimal enclosing spheres via randomized-incremental insertion with
//! move-to-front, support sets tracked through the recursion.
//!
//! The basis case solves the circumsphere of the boundary set from the Gram
//! system of difference vectors, which keeps the center in the boundary's
//! affine span. Inputs here are tiny (at most a handful of points beyond
//! d+1), so the move-to-front heuristic alone is plenty.

use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::geometry::{PointCloud, SimplexKey};

/// Containment slack, relative to the squared radius.
const CONTAIN_EPS: f64 = 1e-10;

/// A sphere in `R^d`; radius 0 means the single point at the center.
#[derive(Debug, Clone, PartialEq)]
pub struct Sphere {
    pub center: DVector<f64>,
    pub radius: f64,
}

impl Sphere {
    pub fn contains(&self, point: &DVector<f64>) -> bool {
        let d2 = (point - &self.center).norm_squared();
        let r2 = self.radius * self.radius;
        d2 <= r2 * (1.0 + CONTAIN_EPS) + f64::MIN_POSITIVE
    }
}

/// Minimal enclosing sphere of a sub-configuration together with its
/// support: a subset of at most `d + 1` vertices whose minimal circumsphere
/// equals the enclosing sphere.
#[derive(Debug, Clone)]
pub struct EnclosingSphere {
    pub sphere: Sphere,
    pub support: SimplexKey,
}

/// Minimal enclosing sphere of `simplex(P)` with its support set.
pub fn min_enclosing_sphere(cloud: &PointCloud, simplex: &SimplexKey) -> Result<EnclosingSphere> {
    let sub = cloud.sub_configuration(simplex)?;
    let k = sub.nrows();
    let mut order: Vec<usize> = (0..k).collect();
    let mut boundary: Vec<usize> = Vec::new();
    let (sphere, support) = welzl(&sub, &mut order, k, &mut boundary);
    let sphere = sphere.expect("nonempty input always has an enclosing sphere");
    let (sphere, support) = prune_support(&sub, sphere, support);
    let mut verts: Vec<usize> = support
        .iter()
        .map(|&local| simplex.vertices()[local])
        .collect();
    verts.sort_unstable();
    Ok(EnclosingSphere {
        sphere,
        support: SimplexKey::from_sorted(verts),
    })
}

/// Radius of the minimal enclosing sphere of `simplex(P)`; 0 for singletons.
pub fn min_enclosing_radius(cloud: &PointCloud, simplex: &SimplexKey) -> Result<f64> {
    Ok(min_enclosing_sphere(cloud, simplex)?.sphere.radius)
}

/// Support set of the minimal enclosing sphere, inclusion-minimal among the
/// supports the search visits.
pub fn min_enclosing_support(cloud: &PointCloud, simplex: &SimplexKey) -> Result<SimplexKey> {
    Ok(min_enclosing_sphere(cloud, simplex)?.support)
}

fn welzl(
    pts: &DMatrix<f64>,
    order: &mut [usize],
    n: usize,
    boundary: &mut Vec<usize>,
) -> (Option<Sphere>, Vec<usize>) {
    let d = pts.ncols();
    if n == 0 || boundary.len() == d + 1 {
        return (sphere_through(pts, boundary), boundary.clone());
    }
    let p = order[n - 1];
    let (sphere, support) = welzl(pts, order, n - 1, boundary);
    if let Some(ref s) = sphere {
        if s.contains(&pts.row(p).transpose()) {
            return (sphere, support);
        }
    }
    boundary.push(p);
    let result = welzl(pts, order, n - 1, boundary);
    boundary.pop();
    order[..n].rotate_right(1); // move the violator to the front
    result
}

/// Smallest sphere passing through every boundary point, center in their
/// affine span: solve the Gram system `G x = b` with `G = V V^T`,
/// `b_i = |v_i|^2 / 2` for difference vectors `v_i`.
///
/// The boundary is sorted first so the result is a bit-stable function of
/// the boundary set: the radius of a simplex whose enclosing sphere is
/// supported on a face must equal the face's own value exactly, or the
/// reduction would see phantom ulp-length intervals.
fn sphere_through(pts: &DMatrix<f64>, boundary: &[usize]) -> Option<Sphere> {
    let mut sorted;
    let boundary = if boundary.windows(2).all(|w| w[0] < w[1]) {
        boundary
    } else {
        sorted = boundary.to_vec();
        sorted.sort_unstable();
        &sorted
    };
    match boundary.len() {
        0 => None,
        1 => Some(Sphere {
            center: pts.row(boundary[0]).transpose(),
            radius: 0.0,
        }),
        // Diameter sphere, computed directly so that the radius of a pair
        // is bit-identical to half its distance.
        2 => {
            let a = pts.row(boundary[0]).transpose();
            let b = pts.row(boundary[1]).transpose();
            let radius = (&b - &a).norm() / 2.0;
            Some(Sphere {
                center: (a + b) / 2.0,
                radius,
            })
        }
        k => {
            let d = pts.ncols();
            let q0 = pts.row(boundary[0]).transpose();
            let mut v = DMatrix::<f64>::zeros(k - 1, d);
            let mut b = DVector::<f64>::zeros(k - 1);
            for i in 1..k {
                let diff = pts.row(boundary[i]).transpose() - &q0;
                b[i - 1] = diff.norm_squared() / 2.0;
                v.row_mut(i - 1).copy_from(&diff.transpose());
            }
            let gram = &v * v.transpose();
            let x = match gram.clone().cholesky() {
                Some(chol) => chol.solve(&b),
                // Affinely dependent boundary: least-squares center.
                None => gram.svd(true, true).solve(&b, 1e-12).ok()?,
            };
            let offset = v.transpose() * x;
            let radius = offset.norm();
            Some(Sphere {
                center: q0 + offset,
                radius,
            })
        }
    }
}

/// Drop support points whose removal leaves a circumsphere of equal radius
/// that still encloses everything.
fn prune_support(
    pts: &DMatrix<f64>,
    sphere: Sphere,
    mut support: Vec<usize>,
) -> (Sphere, Vec<usize>) {
    let mut sphere = sphere;
    'outer: loop {
        if support.len() <= 1 {
            break;
        }
        for drop in 0..support.len() {
            let candidate: Vec<usize> = support
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, &v)| v)
                .collect();
            if let Some(s) = sphere_through(pts, &candidate) {
                let radius_ok = s.radius <= sphere.radius * (1.0 + CONTAIN_EPS);
                let encloses =
                    (0..pts.nrows()).all(|i| s.contains(&pts.row(i).transpose()));
                if radius_ok && encloses {
                    support = candidate;
                    sphere = s;
                    continue 'outer;
                }
            }
        }
        break;
    }
    support.sort_unstable();
    (sphere, support)
}
