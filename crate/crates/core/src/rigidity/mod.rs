//! Classical framework rigidity: infinitesimal rigidity via the rank of the
//! rigidity matrix, the 2D combinatorial characterizations, and the
//! randomized stress-matrix test for generic global rigidity.

mod graph;
mod pebble;

use nalgebra::DMatrix;
use serde::Serialize;

pub use graph::Graph;
pub use pebble::{laman_glr_2d, pebble_game_23};

use crate::error::{Error, Result};
use crate::geometry::{rigidity_matrix, PointCloud};
use crate::linalg::{affine_span_dim, left_kernel_basis, numerical_rank};
use crate::sampling::{random_cloud, rng_for_seed};

/// A graph realized at a configuration.
#[derive(Debug, Clone)]
pub struct Framework {
    pub graph: Graph,
    pub config: PointCloud,
}

impl Framework {
    pub fn new(graph: Graph, config: PointCloud) -> Result<Self> {
        if graph.n() != config.n() {
            return Err(Error::InvalidGraph(format!(
                "graph has {} vertices but configuration has {} points",
                graph.n(),
                config.n()
            )));
        }
        Ok(Framework { graph, config })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RigidityStatus {
    Flexible,
    Rigid,
}

/// Outcome of a rank-based rigidity test. `dof` counts the nontrivial
/// flexes: `target_rank - rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RigidityVerdict {
    pub status: RigidityStatus,
    pub rank: usize,
    pub target_rank: usize,
    pub dof: usize,
}

impl RigidityVerdict {
    pub fn is_rigid(&self) -> bool {
        self.status == RigidityStatus::Rigid
    }

    pub(crate) fn from_rank(rank: usize, target_rank: usize) -> Self {
        RigidityVerdict {
            status: if rank == target_rank {
                RigidityStatus::Rigid
            } else {
                RigidityStatus::Flexible
            },
            rank,
            target_rank,
            dof: target_rank - rank,
        }
    }
}

fn check_rank_test_domain(config: &PointCloud) -> Result<()> {
    let (n, d) = (config.n(), config.dim());
    if n < d + 1 {
        return Err(Error::Domain(format!(
            "rank test needs n >= d + 1 (got n = {n}, d = {d})"
        )));
    }
    if affine_span_dim(config.coords(), crate::linalg::DEFAULT_RANK_TOL) < d {
        return Err(Error::Domain(
            "configuration does not affinely span the ambient space".into(),
        ));
    }
    Ok(())
}

/// Number of trivial infinitesimal motions in dimension `d`.
pub fn trivial_motion_dim(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Infinitesimal (equivalently, generic local) rigidity by the rank of the
/// rigidity matrix: rigid iff the rank reaches `nd - d(d+1)/2`.
///
/// Configurations with fewer than `d + 1` points or a degenerate affine
/// span are rejected with [`Error::Domain`].
pub fn infinitesimal_rigidity_test(fw: &Framework, rank_tol: f64) -> Result<RigidityVerdict> {
    check_rank_test_domain(&fw.config)?;
    let n = fw.config.n();
    let d = fw.config.dim();
    let jac = rigidity_matrix(&fw.config, fw.graph.edges())?;
    let rank = numerical_rank(&jac, rank_tol);
    Ok(RigidityVerdict::from_rank(rank, n * d - trivial_motion_dim(d)))
}

/// 3-connectivity in the operational sense: no deletion of two vertices
/// disconnects the graph. For fewer than 4 vertices the answer is the
/// vacuous one; callers gate small cases separately.
pub fn is_3_connected(graph: &Graph) -> bool {
    let n = graph.n();
    for u in 0..n {
        for v in (u + 1)..n {
            if !graph.connected_after_removing(&[u, v]) {
                return false;
            }
        }
    }
    true
}

/// Redundant rigidity in 2D: every single-edge deletion leaves a
/// generically rigid graph.
pub fn is_redundantly_rigid_2d(graph: &Graph) -> bool {
    (0..graph.m()).all(|idx| laman_glr_2d(&graph.without_edge(idx)))
}

/// Generic global rigidity in 2D: complete, or 3-connected and redundantly
/// rigid. Graphs on at most 3 vertices are globally rigid exactly when
/// complete.
pub fn ggr_2d(graph: &Graph) -> bool {
    if graph.is_complete() {
        return true;
    }
    if graph.n() < 4 {
        return false;
    }
    is_3_connected(graph) && is_redundantly_rigid_2d(graph)
}

/// One-sided Monte Carlo test for generic global rigidity in dimension `d`.
///
/// Per trial: sample a generic configuration; reject unless the rigidity
/// matrix has full target rank; draw a random equilibrium stress from the
/// kernel of the transposed rigidity matrix and accept the trial iff the
/// stress matrix has rank `n - d - 1`. Accepts overall iff every trial
/// accepts. Complete graphs with `n <= d + 1` accept immediately.
pub fn ggr_randomized(
    graph: &Graph,
    d: usize,
    trials: usize,
    seed: u64,
    rank_tol: f64,
) -> bool {
    let n = graph.n();
    assert!(n >= 2 && d >= 1, "ggr_randomized needs n >= 2 and d >= 1");
    if graph.is_complete() && n <= d + 1 {
        return true;
    }
    let target = n * d - trivial_motion_dim(d);

    for trial in 0..trials {
        let mut rng = rng_for_seed(seed.wrapping_add(trial as u64));
        let config = random_cloud(n, d, &mut rng);
        let jac = match rigidity_matrix(&config, graph.edges()) {
            Ok(j) => j,
            Err(_) => return false,
        };
        if numerical_rank(&jac, rank_tol) < target {
            return false;
        }
        let kernel = left_kernel_basis(&jac, rank_tol);
        let mut stress = vec![0.0; graph.m()];
        for basis_vec in &kernel {
            use rand::Rng;
            let coeff = 2.0 * rng.random::<f64>() - 1.0;
            for (e, s) in stress.iter_mut().enumerate() {
                *s += coeff * basis_vec[e];
            }
        }
        let mut omega = DMatrix::<f64>::zeros(n, n);
        for (e, &(i, j)) in graph.edges().iter().enumerate() {
            let w = stress[e];
            omega[(i, j)] -= w;
            omega[(j, i)] -= w;
            omega[(i, i)] += w;
            omega[(j, j)] += w;
        }
        if numerical_rank(&omega, rank_tol) != n - d - 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_RANK_TOL;

    fn framework(n: usize, edges: Vec<(usize, usize)>, coords: Vec<Vec<f64>>) -> Framework {
        Framework::new(Graph::new(n, edges).unwrap(), PointCloud::new(coords).unwrap()).unwrap()
    }

    #[test]
    fn triangle_is_infinitesimally_rigid() {
        let fw = framework(
            3,
            vec![(0, 1), (1, 2), (0, 2)],
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.3, 0.9]],
        );
        let v = infinitesimal_rigidity_test(&fw, DEFAULT_RANK_TOL).unwrap();
        assert!(v.is_rigid());
        assert_eq!(v.rank, 3);
        assert_eq!(v.target_rank, 3);
    }

    #[test]
    fn four_cycle_is_flexible_with_one_dof() {
        let fw = framework(
            4,
            vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            vec![
                vec![0.0, 0.0],
                vec![1.1, 0.1],
                vec![1.0, 1.2],
                vec![-0.1, 0.9],
            ],
        );
        let v = infinitesimal_rigidity_test(&fw, DEFAULT_RANK_TOL).unwrap();
        assert!(!v.is_rigid());
        assert_eq!(v.rank, 4);
        assert_eq!(v.target_rank, 5);
        assert_eq!(v.dof, 1);
    }

    #[test]
    fn four_cycle_plus_diagonal_is_rigid() {
        let fw = framework(
            4,
            vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
            vec![
                vec![0.0, 0.0],
                vec![1.1, 0.1],
                vec![1.0, 1.2],
                vec![-0.1, 0.9],
            ],
        );
        let v = infinitesimal_rigidity_test(&fw, DEFAULT_RANK_TOL).unwrap();
        assert!(v.is_rigid());
        assert_eq!(v.rank, 5);
    }

    #[test]
    fn domain_errors() {
        // Too few points for the ambient dimension.
        let fw = framework(2, vec![(0, 1)], vec![vec![0.0, 0.0], vec![1.0, 0.0]]);
        assert!(matches!(
            infinitesimal_rigidity_test(&fw, DEFAULT_RANK_TOL),
            Err(Error::Domain(_))
        ));
        // Collinear configuration in the plane.
        let fw = framework(
            3,
            vec![(0, 1), (1, 2)],
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]],
        );
        assert!(matches!(
            infinitesimal_rigidity_test(&fw, DEFAULT_RANK_TOL),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn three_connectivity_examples() {
        assert!(is_3_connected(&Graph::complete(4)));
        let cycle = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!is_3_connected(&cycle));
        let diag = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(!is_3_connected(&diag)); // remove the diagonal's endpoints
    }

    #[test]
    fn redundant_rigidity_examples() {
        let diag = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(!is_redundantly_rigid_2d(&diag));
        assert!(is_redundantly_rigid_2d(&Graph::complete(4)));
        let triangle = Graph::complete(3);
        assert!(!is_redundantly_rigid_2d(&triangle));
    }

    #[test]
    fn ggr_2d_examples() {
        assert!(ggr_2d(&Graph::complete(4)));
        let diag = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(!ggr_2d(&diag));
        // Wheel on 5 vertices: 4-cycle plus a hub joined to every rim vertex.
        let wheel = Graph::new(
            5,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 0),
                (4, 1),
                (4, 2),
                (4, 3),
            ],
        )
        .unwrap();
        assert!(ggr_2d(&wheel));
    }

    #[test]
    fn ggr_implies_glr() {
        for g in [
            Graph::complete(4),
            Graph::complete(5),
            Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
        ] {
            if ggr_2d(&g) {
                assert!(laman_glr_2d(&g));
            }
        }
    }

    #[test]
    fn ggr_randomized_examples() {
        assert!(ggr_randomized(&Graph::complete(4), 2, 3, 7, DEFAULT_RANK_TOL));
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(!ggr_randomized(&path, 2, 3, 7, DEFAULT_RANK_TOL));
        // K5 minus one edge is isostatic in d = 3 (9 = 3n - 6 edges), so it
        // carries no nonzero stress and is not globally rigid there, while
        // in d = 2 it is 3-connected and redundantly rigid.
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in (i + 1)..5 {
                if (i, j) != (0, 1) {
                    edges.push((i, j));
                }
            }
        }
        let k5_minus = Graph::new(5, edges).unwrap();
        assert!(!ggr_randomized(&k5_minus, 3, 3, 11, DEFAULT_RANK_TOL));
        assert!(ggr_2d(&k5_minus));
        assert!(ggr_randomized(&k5_minus, 2, 3, 11, DEFAULT_RANK_TOL));
        assert!(ggr_randomized(&Graph::complete(5), 3, 3, 11, DEFAULT_RANK_TOL));
    }

    #[test]
    fn verdicts_invariant_under_relabeling() {
        let graph = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let config = PointCloud::new(vec![
            vec![0.0, 0.0],
            vec![1.1, 0.1],
            vec![1.0, 1.2],
            vec![-0.1, 0.9],
        ])
        .unwrap();
        let perm = vec![2, 0, 3, 1];
        let relabeled_graph = graph.relabeled(&perm).unwrap();
        // New point perm[i] must be old point i: invert the permutation.
        let mut inverse = vec![0; 4];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let relabeled_config = config.permuted(&inverse).unwrap();
        let a = infinitesimal_rigidity_test(
            &Framework::new(graph, config).unwrap(),
            DEFAULT_RANK_TOL,
        )
        .unwrap();
        let b = infinitesimal_rigidity_test(
            &Framework::new(relabeled_graph, relabeled_config).unwrap(),
            DEFAULT_RANK_TOL,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
