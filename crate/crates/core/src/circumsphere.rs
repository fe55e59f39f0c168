//! Circumsphere frameworks: hypergraphs whose hyperedges constrain the
//! circumradius of their endpoints, the Jacobian rank test for their
//! rigidity, and the randomized verifier for rigidity of the complete
//! (d+1)-uniform hypergraph.
//!
//! Two frameworks `(H, P)` and `(H, Q)` are equivalent when
//! `det CM(sigma(P)) det L(sigma(Q)) = det CM(sigma(Q)) det L(sigma(P))`
//! for every hyperedge; on affinely independent configurations this says
//! the hyperedge circumradii agree. Rigidity is decided by the rank of the
//! stacked circumradius gradients: rigid iff the rank is `nd - d(d+1)/2`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    cayley_menger, circumradius_gradient, PointCloud, SimplexKey,
};
use crate::linalg::{affine_span_dim, affinely_independent, numerical_rank, DEFAULT_RANK_TOL};
use crate::rigidity::{trivial_motion_dim, RigidityVerdict};
use crate::sampling::{random_cloud, rng_for_seed};

/// A hypergraph on vertices `0..n` whose hyperedges have at least two
/// endpoints. The per-dimension size cap (`d + 1`) is enforced when a
/// framework is built, since it depends on the configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    hyperedges: Vec<SimplexKey>,
}

impl Hypergraph {
    pub fn new(n: usize, hyperedges: Vec<SimplexKey>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidHypergraph("needs at least one vertex".into()));
        }
        for (idx, edge) in hyperedges.iter().enumerate() {
            if edge.len() < 2 {
                return Err(Error::InvalidHypergraph(format!(
                    "hyperedge {edge} has fewer than 2 endpoints"
                )));
            }
            edge.check_against(n)?;
            if hyperedges[..idx].contains(edge) {
                return Err(Error::InvalidHypergraph(format!(
                    "duplicate hyperedge {edge}"
                )));
            }
        }
        Ok(Hypergraph { n, hyperedges })
    }

    /// All subsets of size `d + 1` of the vertex set.
    pub fn complete_uniform(n: usize, size: usize) -> Result<Self> {
        if size < 2 || size > n {
            return Err(Error::InvalidHypergraph(format!(
                "uniform size {size} out of range for {n} vertices"
            )));
        }
        let mut hyperedges = Vec::new();
        let mut buf = Vec::with_capacity(size);
        fn rec(n: usize, size: usize, start: usize, buf: &mut Vec<usize>, out: &mut Vec<SimplexKey>) {
            if buf.len() == size {
                out.push(SimplexKey::new(buf.clone()).expect("valid subset"));
                return;
            }
            let remaining = size - buf.len();
            for v in start..=(n - remaining) {
                buf.push(v);
                rec(n, size, v + 1, buf, out);
                buf.pop();
            }
        }
        rec(n, size, 0, &mut buf, &mut hyperedges);
        Ok(Hypergraph { n, hyperedges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn hyperedges(&self) -> &[SimplexKey] {
        &self.hyperedges
    }

    /// Hyperedges sorted by (size, lexicographic), for canonical output.
    pub fn sorted_hyperedges(&self) -> Vec<SimplexKey> {
        let mut edges = self.hyperedges.clone();
        edges.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        edges
    }

    /// Copy with vertex `i` renamed to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(Error::InvalidHypergraph("permutation length mismatch".into()));
        }
        let hyperedges = self
            .hyperedges
            .iter()
            .map(|e| SimplexKey::new(e.vertices().iter().map(|&v| perm[v]).collect()))
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(self.n, hyperedges)
    }
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    n: usize,
    hyperedges: Vec<Vec<usize>>,
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphRepr {
            n: self.n,
            hyperedges: self
                .sorted_hyperedges()
                .iter()
                .map(|e| e.vertices().to_vec())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = HypergraphRepr::deserialize(d)?;
        let edges = repr
            .hyperedges
            .into_iter()
            .map(SimplexKey::new)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Hypergraph::new(repr.n, edges).map_err(serde::de::Error::custom)
    }
}

/// A hypergraph realized at a configuration. Construction checks that every
/// hyperedge has between 2 and `d + 1` endpoints and that its
/// sub-configuration is affinely independent, which the Jacobian requires.
#[derive(Debug, Clone)]
pub struct CircumsphereFramework {
    pub hypergraph: Hypergraph,
    pub config: PointCloud,
}

impl CircumsphereFramework {
    pub fn new(hypergraph: Hypergraph, config: PointCloud) -> Result<Self> {
        if hypergraph.n() != config.n() {
            return Err(Error::InvalidHypergraph(format!(
                "hypergraph has {} vertices but configuration has {} points",
                hypergraph.n(),
                config.n()
            )));
        }
        let d = config.dim();
        for edge in hypergraph.hyperedges() {
            if edge.len() > d + 1 {
                return Err(Error::InvalidHypergraph(format!(
                    "hyperedge {edge} has more than d + 1 = {} endpoints",
                    d + 1
                )));
            }
            let sub = config.sub_configuration(edge)?;
            if !affinely_independent(&sub, DEFAULT_RANK_TOL) {
                return Err(Error::DegenerateSimplex {
                    vertices: edge.vertices().to_vec(),
                });
            }
        }
        Ok(CircumsphereFramework { hypergraph, config })
    }
}

/// Residual of the equivalence equation for one hyperedge:
/// `det CM(sigma(P)) det L(sigma(Q)) - det CM(sigma(Q)) det L(sigma(P))`.
/// Zero exactly when the constraint holds; antisymmetric in `P` and `Q`.
pub fn circumsphere_residual(
    p: &PointCloud,
    q: &PointCloud,
    simplex: &SimplexKey,
) -> Result<f64> {
    if p.n() != q.n() || p.dim() != q.dim() {
        return Err(Error::InvalidHypergraph(
            "point clouds must share n and d".into(),
        ));
    }
    let (delta_p, lambda_p) = cayley_menger(p, simplex)?;
    let (delta_q, lambda_q) = cayley_menger(q, simplex)?;
    Ok(delta_p.det() * lambda_q.det() - delta_q.det() * lambda_p.det())
}

/// Jacobian of the circumradius constraint system: one row per hyperedge,
/// the gradient of that hyperedge's squared circumradius. Row order is the
/// hypergraph's hyperedge order.
pub fn circumsphere_jacobian(fw: &CircumsphereFramework) -> Result<DMatrix<f64>> {
    let n = fw.config.n();
    let d = fw.config.dim();
    let mut jac = DMatrix::<f64>::zeros(fw.hypergraph.m(), n * d);
    for (row, edge) in fw.hypergraph.hyperedges().iter().enumerate() {
        let grad = circumradius_gradient(&fw.config, edge)?;
        jac.row_mut(row).copy_from(&grad.transpose());
    }
    Ok(jac)
}

/// Rank test for circumsphere rigidity: rigid iff the Jacobian reaches rank
/// `nd - d(d+1)/2`. Same domain restrictions as the classical test.
pub fn circumsphere_rigidity_test(
    fw: &CircumsphereFramework,
    rank_tol: f64,
) -> Result<RigidityVerdict> {
    let n = fw.config.n();
    let d = fw.config.dim();
    if n < d + 1 {
        return Err(Error::Domain(format!(
            "rank test needs n >= d + 1 (got n = {n}, d = {d})"
        )));
    }
    if affine_span_dim(fw.config.coords(), DEFAULT_RANK_TOL) < d {
        return Err(Error::Domain(
            "configuration does not affinely span the ambient space".into(),
        ));
    }
    let jac = circumsphere_jacobian(fw)?;
    // Row magnitudes vary wildly with hyperedge conditioning; rescaling
    // rows to unit norm leaves the rank unchanged and keeps the relative
    // singular-value threshold meaningful.
    let rank = numerical_rank(&crate::linalg::row_normalized(&jac), rank_tol);
    Ok(RigidityVerdict::from_rank(rank, n * d - trivial_motion_dim(d)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjectureVerdict {
    Supported,
    Refuted,
}

/// Outcome of the complete-hypergraph rigidity verification.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub d: usize,
    pub n: usize,
    pub trials: usize,
    /// Trials whose Jacobian reached the target rank.
    pub rigid: usize,
    /// Sampled configurations discarded for an affinely dependent hyperedge.
    pub rejects: usize,
    pub verdict: ConjectureVerdict,
    /// Jacobian rank observed per trial (not serialized).
    #[serde(skip)]
    pub ranks: Vec<usize>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut b: u128 = 1;
    for i in 1..=k {
        b = b * (n - k + i) as u128 / i as u128;
    }
    b
}

/// Sample random configurations and test whether the complete
/// (d+1)-uniform hypergraph is circumsphere rigid at each. Supported iff
/// every non-degenerate trial is rigid.
///
/// Requires the count inequality `C(n, d+1) >= dn - C(d+1, 2)`; fails with
/// [`Error::HypothesisViolated`] otherwise.
pub fn verify_conjecture_66(
    d: usize,
    n: usize,
    trials: usize,
    seed: u64,
    rank_tol: f64,
) -> Result<ConjectureReport> {
    if d < 1 {
        return Err(Error::Domain("d must be at least 1".into()));
    }
    let target = (n * d).saturating_sub(trivial_motion_dim(d)) as u128;
    if binomial(n, d + 1) < target {
        return Err(Error::HypothesisViolated(format!(
            "C({n}, {}) = {} < dn - d(d+1)/2 = {target}",
            d + 1,
            binomial(n, d + 1)
        )));
    }
    let hypergraph = Hypergraph::complete_uniform(n, d + 1)?;

    let mut rigid = 0;
    let mut rejects = 0;
    let mut ranks = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = rng_for_seed(seed.wrapping_add(trial as u64));
        let fw = loop {
            let config = random_cloud(n, d, &mut rng);
            match CircumsphereFramework::new(hypergraph.clone(), config) {
                Ok(fw) => break fw,
                Err(Error::DegenerateSimplex { .. }) => {
                    rejects += 1;
                    continue;
                }
                Err(e) => return Err(e),
            }
        };
        let verdict = circumsphere_rigidity_test(&fw, rank_tol)?;
        ranks.push(verdict.rank);
        if verdict.is_rigid() {
            rigid += 1;
        }
    }

    Ok(ConjectureReport {
        d,
        n,
        trials,
        rigid,
        rejects,
        verdict: if rigid == trials {
            ConjectureVerdict::Supported
        } else {
            ConjectureVerdict::Refuted
        },
        ranks,
    })
}
