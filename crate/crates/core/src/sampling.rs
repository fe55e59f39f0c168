//! Seeded random configurations and rigid motions. Generic-property tests
//! sample from here; coordinates are i.i.d. uniform on [0, 1], which hits
//! the generic set with probability 1.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::PointCloud;

/// Deterministic RNG for a seed.
pub fn rng_for_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random cloud of `n` points in `R^d` with coordinates uniform on [0, 1].
pub fn random_cloud<R: Rng>(n: usize, d: usize, rng: &mut R) -> PointCloud {
    loop {
        let coords = DMatrix::from_fn(n, d, |_, _| rng.random::<f64>());
        // Duplicate rows have probability zero; retry on the off chance.
        if let Ok(cloud) = PointCloud::from_matrix(coords) {
            return cloud;
        }
    }
}

/// Random orthogonal matrix (Gram–Schmidt on a Gaussian-ish sample) and a
/// random shift, packaged as a rigid motion of `R^d`.
pub fn random_rigid_motion<R: Rng>(d: usize, rng: &mut R) -> (DMatrix<f64>, DVector<f64>) {
    let m = DMatrix::from_fn(d, d, |_, _| rng.random::<f64>() - 0.5);
    let qr = m.qr();
    let mut q = qr.q();
    let r = qr.r();
    // Fix the sign convention so Q is uniquely determined by the sample.
    for c in 0..d {
        if r[(c, c)] < 0.0 {
            for row in 0..d {
                q[(row, c)] = -q[(row, c)];
            }
        }
    }
    let shift = DVector::from_fn(d, |_, _| 2.0 * rng.random::<f64>() - 1.0);
    (q, shift)
}

/// Random permutation of `0..n`.
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a = random_cloud(5, 3, &mut rng_for_seed(42));
        let b = random_cloud(5, 3, &mut rng_for_seed(42));
        assert_eq!(a, b);
    }

    #[test]
    fn rigid_motion_is_orthogonal() {
        let mut rng = rng_for_seed(7);
        let (q, _) = random_rigid_motion(3, &mut rng);
        let err = (q.transpose() * &q - DMatrix::<f64>::identity(3, 3)).norm();
        assert!(err < 1e-12);
    }

    #[test]
    fn rigid_motion_preserves_distances() {
        let mut rng = rng_for_seed(3);
        let cloud = random_cloud(4, 2, &mut rng);
        let (q, t) = random_rigid_motion(2, &mut rng);
        let moved = cloud.transformed(&q, &t).unwrap();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let a = cloud.distance(i, j).unwrap();
                let b = moved.distance(i, j).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
