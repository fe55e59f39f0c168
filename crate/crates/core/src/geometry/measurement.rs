//! Squared edge-length measurement map and its Jacobian, the classical
//! rigidity matrix.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geometry::PointCloud;

fn check_edges(cloud: &PointCloud, edges: &[(usize, usize)]) -> Result<()> {
    let n = cloud.n();
    for &(i, j) in edges {
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange { index: i.max(j), n });
        }
        if i == j {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
        }
    }
    Ok(())
}

/// Vector of squared edge lengths, in edge order.
pub fn edge_length_measurement(cloud: &PointCloud, edges: &[(usize, usize)]) -> Result<Vec<f64>> {
    check_edges(cloud, edges)?;
    edges
        .iter()
        .map(|&(i, j)| cloud.squared_distance(i, j))
        .collect()
}

/// Jacobian of [`edge_length_measurement`]: the row for edge `{i, j}` holds
/// `2(p_i - p_j)` in block `i`, `2(p_j - p_i)` in block `j`, zeros elsewhere.
pub fn rigidity_matrix(cloud: &PointCloud, edges: &[(usize, usize)]) -> Result<DMatrix<f64>> {
    check_edges(cloud, edges)?;
    let n = cloud.n();
    let d = cloud.dim();
    let mut jac = DMatrix::<f64>::zeros(edges.len(), n * d);
    for (row, &(i, j)) in edges.iter().enumerate() {
        let diff = cloud.point(i) - cloud.point(j);
        for c in 0..d {
            jac[(row, i * d + c)] = 2.0 * diff[c];
            jac[(row, j * d + c)] = -2.0 * diff[c];
        }
    }
    Ok(jac)
}

#[cfg(test)]
mod tests {
    use nalgebra::DVector;

    use super::*;

    #[test]
    fn empty_edge_list() {
        let p = PointCloud::new(vec![vec![0.0], vec![1.0]]).unwrap();
        assert!(edge_length_measurement(&p, &[]).unwrap().is_empty());
    }

    #[test]
    fn unit_square_sides() {
        let p = PointCloud::new(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        let sides = [(0, 1), (1, 2), (2, 3), (3, 0)];
        assert_eq!(
            edge_length_measurement(&p, &sides).unwrap(),
            vec![1.0, 1.0, 1.0, 1.0]
        );
    }

    #[test]
    fn triangle_edge_order() {
        let p = PointCloud::new(vec![vec![0.0, 0.0], vec![3.0, 0.0], vec![0.0, 4.0]]).unwrap();
        let edges = [(0, 1), (1, 2), (0, 2)];
        assert_eq!(
            edge_length_measurement(&p, &edges).unwrap(),
            vec![9.0, 25.0, 16.0]
        );
    }

    #[test]
    fn single_edge_row() {
        let p = PointCloud::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let jac = rigidity_matrix(&p, &[(0, 1)]).unwrap();
        assert_eq!(jac.nrows(), 1);
        assert_eq!(
            jac.row(0).iter().cloned().collect::<Vec<_>>(),
            vec![-2.0, 0.0, 2.0, 0.0]
        );
    }

    #[test]
    fn translations_in_kernel() {
        let p = PointCloud::new(vec![
            vec![0.2, 1.4],
            vec![2.1, 0.3],
            vec![1.0, 2.0],
        ])
        .unwrap();
        let edges = [(0, 1), (1, 2), (0, 2)];
        let jac = rigidity_matrix(&p, &edges).unwrap();
        for c in 0..2 {
            let mut t = DVector::<f64>::zeros(6);
            for i in 0..3 {
                t[i * 2 + c] = 1.0;
            }
            assert!((jac.clone() * t).norm() < 1e-12);
        }
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let p = PointCloud::new(vec![
            vec![0.11, 0.87],
            vec![0.93, 0.24],
            vec![0.48, 0.61],
        ])
        .unwrap();
        let edges = vec![(0, 1), (1, 2), (0, 2)];
        let jac = rigidity_matrix(&p, &edges).unwrap();
        let fd = crate::numdiff::central_difference_jacobian(
            &p,
            1e-6 * p.diameter(),
            edges.len(),
            |q| edge_length_measurement(q, &edges).unwrap(),
        );
        let rel = (&jac - &fd).norm() / fd.norm();
        assert!(rel < 1e-6, "relative error {rel}");
    }
}
