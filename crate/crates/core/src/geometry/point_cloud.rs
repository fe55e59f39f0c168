//! Labeled configurations of distinct points in `R^d`.

use nalgebra::{DMatrix, DVector, RowDVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SimplexKey;

/// An ordered configuration of `n` pairwise-distinct points in `R^d`.
///
/// Immutable after construction. Duplicate points are rejected by exact
/// coordinate equality; near-duplicates are allowed (genericity diagnostics
/// flag them downstream).
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    coords: DMatrix<f64>, // n x d, one point per row
}

impl PointCloud {
    /// Build a cloud from row vectors. Requires `n >= 1`, `d >= 1`, all rows
    /// finite and pairwise distinct, and all rows of equal length.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() || points[0].is_empty() {
            return Err(Error::EmptyCloud);
        }
        let d = points[0].len();
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::EmptyCloud);
        }
        let n = points.len();
        let coords = DMatrix::from_fn(n, d, |i, j| points[i][j]);
        Self::from_matrix(coords)
    }

    /// Build a cloud from an `n x d` coordinate matrix.
    pub fn from_matrix(coords: DMatrix<f64>) -> Result<Self> {
        if coords.nrows() == 0 || coords.ncols() == 0 {
            return Err(Error::EmptyCloud);
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::EmptyCloud);
        }
        let n = coords.nrows();
        for i in 0..n {
            for j in (i + 1)..n {
                if coords.row(i) == coords.row(j) {
                    return Err(Error::DuplicatePoints { i, j });
                }
            }
        }
        Ok(PointCloud { coords })
    }

    pub fn n(&self) -> usize {
        self.coords.nrows()
    }

    pub fn dim(&self) -> usize {
        self.coords.ncols()
    }

    pub fn coords(&self) -> &DMatrix<f64> {
        &self.coords
    }

    pub fn point(&self, i: usize) -> RowDVector<f64> {
        self.coords.row(i).into_owned()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange { index: i, n: self.n() });
        }
        Ok(())
    }

    /// Squared Euclidean distance between points `i != j`; strictly positive.
    pub fn squared_distance(&self, i: usize, j: usize) -> Result<f64> {
        self.check_index(i)?;
        self.check_index(j)?;
        debug_assert_ne!(i, j, "squared_distance requires i != j");
        Ok((self.coords.row(i) - self.coords.row(j)).norm_squared())
    }

    /// Euclidean distance between points `i != j`.
    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        Ok(self.squared_distance(i, j)?.sqrt())
    }

    /// Coordinate matrix of the sub-configuration selected by `simplex`,
    /// rows in the simplex's vertex order.
    pub fn sub_configuration(&self, simplex: &SimplexKey) -> Result<DMatrix<f64>> {
        simplex.check_against(self.n())?;
        let k = simplex.len();
        let mut sub = DMatrix::<f64>::zeros(k, self.dim());
        for (row, &v) in simplex.vertices().iter().enumerate() {
            sub.row_mut(row).copy_from(&self.coords.row(v));
        }
        Ok(sub)
    }

    /// Largest pairwise distance; 0 for a single point.
    pub fn diameter(&self) -> f64 {
        let n = self.n();
        let mut max = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                max = max.max((self.coords.row(i) - self.coords.row(j)).norm());
            }
        }
        max
    }

    /// Coordinates flattened to a single vector of length `n*d`, point
    /// blocks in order. This is the variable order every Jacobian uses.
    pub fn flattened(&self) -> DVector<f64> {
        let n = self.n();
        let d = self.dim();
        DVector::from_fn(n * d, |idx, _| self.coords[(idx / d, idx % d)])
    }

    /// Cloud with the given coordinate vector (inverse of [`flattened`]).
    ///
    /// [`flattened`]: PointCloud::flattened
    pub fn from_flattened(v: &DVector<f64>, n: usize, d: usize) -> Result<Self> {
        if v.len() != n * d {
            return Err(Error::EmptyCloud);
        }
        Self::from_matrix(DMatrix::from_fn(n, d, |i, j| v[i * d + j]))
    }

    /// Cloud with points relabeled so that new point `i` is old point
    /// `perm[i]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::InvalidGraph("permutation length mismatch".into()));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidGraph("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut coords = DMatrix::<f64>::zeros(n, self.dim());
        for (i, &p) in perm.iter().enumerate() {
            coords.row_mut(i).copy_from(&self.coords.row(p));
        }
        Self::from_matrix(coords)
    }

    /// Cloud with every point mapped to `rot * p + shift`. `rot` must be
    /// `d x d`; it is not required to be orthogonal here, callers supply
    /// rigid motions when they need isometry.
    pub fn transformed(&self, rot: &DMatrix<f64>, shift: &DVector<f64>) -> Result<Self> {
        let d = self.dim();
        if rot.nrows() != d || rot.ncols() != d || shift.len() != d {
            return Err(Error::EmptyCloud);
        }
        let mut coords = DMatrix::<f64>::zeros(self.n(), d);
        for i in 0..self.n() {
            let p = self.coords.row(i).transpose();
            let q = rot * p + shift;
            coords.row_mut(i).copy_from(&q.transpose());
        }
        Self::from_matrix(coords)
    }
}

/// Wire format: `{"points": [[x, y], ...]}`.
#[derive(Serialize, Deserialize)]
struct CloudRepr {
    points: Vec<Vec<f64>>,
}

impl Serialize for PointCloud {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let points = (0..self.n())
            .map(|i| self.coords.row(i).iter().cloned().collect())
            .collect();
        CloudRepr { points }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointCloud {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CloudRepr::deserialize(d)?;
        PointCloud::new(repr.points).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pythagorean_squared_distance() {
        let p = PointCloud::new(vec![vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(p.squared_distance(0, 1).unwrap(), 25.0);
    }

    #[test]
    fn duplicate_points_rejected() {
        let err = PointCloud::new(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap_err();
        assert_eq!(err, Error::DuplicatePoints { i: 0, j: 1 });
    }

    #[test]
    fn direct_arithmetic() {
        let p =
            PointCloud::new(vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(p.squared_distance(0, 2).unwrap(), 2.0);
    }

    #[test]
    fn index_out_of_range() {
        let p = PointCloud::new(vec![vec![0.0], vec![1.0]]).unwrap();
        assert!(matches!(
            p.squared_distance(0, 5),
            Err(Error::IndexOutOfRange { index: 5, n: 2 })
        ));
    }

    #[test]
    fn flatten_round_trip() {
        let p = PointCloud::new(vec![vec![0.5, -1.0], vec![2.0, 3.0]]).unwrap();
        let v = p.flattened();
        let q = PointCloud::from_flattened(&v, 2, 2).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn json_round_trip() {
        let p = PointCloud::new(vec![vec![0.0, 1.0], vec![2.5, -0.25]]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        let q: PointCloud = serde_json::from_str(&text).unwrap();
        assert_eq!(p, q);
    }
}
