//! Identifiability verdicts and fiber-dimension bounds for the persistence
//! map.
//!
//! With `k` distinct bounded endpoints in the full barcode of a generic
//! cloud, the fiber dimension sits between `nd - k + 1` and `nd - n + 1`.
//! The local dimension at a cloud is `nd` minus the rank of the Jacobian
//! built from one filtration-value gradient per nonzero endpoint. Local
//! identifiability reduces to rigidity of the critical graph (VR) or the
//! critical hypergraph (Čech); global identifiability under VR has the
//! sufficient condition that the critical graph is generically globally
//! rigid.

use serde::Serialize;

use crate::circumsphere::{circumsphere_rigidity_test, CircumsphereFramework, Hypergraph};
use crate::config::AnalysisConfig;
use crate::criticality::{
    bounded_endpoints, cech_full_barcode, critical_graph, critical_hypergraph, vr_full_barcode,
};
use crate::error::{Error, Result};
use crate::filtration::{
    build_filtered_complex, preorder_signature, FilteredComplex, FiltrationKind,
};
use crate::geometry::{
    circumradius_gradient, min_enclosing_sphere, PointCloud, SimplexKey,
};
use crate::linalg::{affinely_independent, numerical_rank, row_normalized, DEFAULT_RANK_TOL};
use crate::rigidity::{
    ggr_2d, ggr_randomized, infinitesimal_rigidity_test, Framework, Graph, RigidityVerdict,
};

/// Fiber-dimension bounds from endpoint and point counts alone:
/// `(nd - k + 1, nd - n + 1)`.
pub fn fiber_dim_bounds(n: usize, d: usize, k: usize) -> (i64, i64) {
    let nd = (n * d) as i64;
    (nd - k as i64 + 1, nd - n as i64 + 1)
}

/// One selected endpoint representative of the fiber Jacobian.
#[derive(Debug, Clone, Serialize)]
pub struct EndpointRepresentative {
    pub endpoint: f64,
    pub simplex: SimplexKey,
}

/// Rank computation behind [`local_fiber_dimension`], kept for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct FiberJacobian {
    /// Distinct bounded endpoints, including 0.
    pub k: usize,
    /// Rows of the Jacobian (one per nonzero endpoint).
    pub rows: usize,
    pub rank: usize,
    /// `nd - rank`.
    pub local_fiber_dim: i64,
    /// Lexicographically least simplex attaining each nonzero endpoint.
    pub representatives: Vec<EndpointRepresentative>,
}

/// Local dimension of the fiber at `cloud`: `nd` minus the rank of the
/// stacked filtration-value gradients, one representative simplex per
/// nonzero bounded endpoint.
pub fn local_fiber_dimension(
    cloud: &PointCloud,
    kind: FiltrationKind,
    config: &AnalysisConfig,
) -> Result<i64> {
    Ok(fiber_jacobian(cloud, kind, config)?.local_fiber_dim)
}

/// Full analysis: endpoints, representatives, Jacobian rank.
pub fn fiber_jacobian(
    cloud: &PointCloud,
    kind: FiltrationKind,
    config: &AnalysisConfig,
) -> Result<FiberJacobian> {
    let n = cloud.n();
    let d = cloud.dim();
    let max_degree = match kind {
        FiltrationKind::VietorisRips => config.vr_degree(n),
        FiltrationKind::Cech => config.cech_degree(d),
    };
    let complex = build_filtered_complex(cloud, kind, max_degree, config.complex_budget)?;
    let barcode = crate::persistence::compute_barcodes(&complex, max_degree);
    let endpoints = bounded_endpoints(&barcode, config.tol);
    let k = endpoints.len();

    let mut representatives = Vec::new();
    let mut rows: Vec<nalgebra::DVector<f64>> = Vec::new();
    for &b in endpoints.iter().filter(|&&b| b > config.tol) {
        let simplex = representative_simplex(&complex, b, config.tol).ok_or_else(|| {
            Error::Domain(format!("no simplex attains endpoint {b}"))
        })?;
        let row = match kind {
            FiltrationKind::VietorisRips => vr_value_gradient(cloud, &simplex)?,
            FiltrationKind::Cech => cech_value_gradient(cloud, &simplex)?,
        };
        representatives.push(EndpointRepresentative {
            endpoint: b,
            simplex,
        });
        rows.push(row);
    }

    let mut jac = nalgebra::DMatrix::<f64>::zeros(rows.len(), n * d);
    for (r, row) in rows.iter().enumerate() {
        jac.row_mut(r).copy_from(&row.transpose());
    }
    let rank = numerical_rank(&row_normalized(&jac), config.rank_tol);
    Ok(FiberJacobian {
        k,
        rows: rows.len(),
        rank,
        local_fiber_dim: (n * d) as i64 - rank as i64,
        representatives,
    })
}

/// Lexicographically least simplex whose value matches `b` within the
/// tolerance.
fn representative_simplex(complex: &FilteredComplex, b: f64, tol: f64) -> Option<SimplexKey> {
    complex
        .entries()
        .iter()
        .filter(|(_, v)| (v - b).abs() <= tol * (1.0 + b.abs()))
        .map(|(s, _)| s.clone())
        .min()
}

/// Gradient of the VR value of `simplex`: half the distance gradient of its
/// maximal pair (lexicographically first among ties).
fn vr_value_gradient(cloud: &PointCloud, simplex: &SimplexKey) -> Result<nalgebra::DVector<f64>> {
    let d = cloud.dim();
    let mut best: Option<((usize, usize), f64)> = None;
    for (i, j) in simplex.pairs() {
        let dist = cloud.distance(i, j)?;
        let better = match best {
            None => true,
            Some((_, cur)) => dist > cur,
        };
        if better {
            best = Some(((i, j), dist));
        }
    }
    let ((i, j), dist) =
        best.ok_or_else(|| Error::Domain("singleton has no distance gradient".into()))?;
    let mut grad = nalgebra::DVector::<f64>::zeros(cloud.n() * d);
    let diff = cloud.point(i) - cloud.point(j);
    for c in 0..d {
        grad[i * d + c] = diff[c] / (2.0 * dist);
        grad[j * d + c] = -diff[c] / (2.0 * dist);
    }
    Ok(grad)
}

/// Gradient of the Čech value of `simplex`: the enclosing-radius gradient
/// through the circumradius of the support set.
fn cech_value_gradient(cloud: &PointCloud, simplex: &SimplexKey) -> Result<nalgebra::DVector<f64>> {
    let enc = min_enclosing_sphere(cloud, simplex)?;
    let rho = enc.sphere.radius;
    if rho <= 0.0 {
        return Err(Error::Domain("zero enclosing radius has no gradient".into()));
    }
    // rho = sqrt(R^2(support)), so grad rho = grad R^2 / (2 rho).
    let grad = circumradius_gradient(cloud, &enc.support)?;
    Ok(grad / (2.0 * rho))
}

/// Local identifiability under VR persistence: rigidity of the critical
/// graph at the configuration.
pub fn vr_local_identifiability(cloud: &PointCloud, config: &AnalysisConfig) -> Result<bool> {
    Ok(vr_local_identifiability_verdict(cloud, config)?.is_rigid())
}

/// Same test, exposing the rank verdict.
pub fn vr_local_identifiability_verdict(
    cloud: &PointCloud,
    config: &AnalysisConfig,
) -> Result<RigidityVerdict> {
    let graph = critical_graph(cloud, config)?;
    let fw = Framework::new(graph, cloud.clone())?;
    infinitesimal_rigidity_test(&fw, config.rank_tol)
}

/// Sufficient condition for global identifiability under VR persistence:
/// generic global rigidity of the critical graph. `false` means the
/// sufficient condition fails, not that the cloud is non-identifiable.
///
/// Requires `n >= d + 2` and `d >= 2`; otherwise [`Error::NotApplicable`].
pub fn vr_global_identifiability_sufficient(
    cloud: &PointCloud,
    config: &AnalysisConfig,
) -> Result<bool> {
    let n = cloud.n();
    let d = cloud.dim();
    if n < d + 2 || d < 2 {
        return Err(Error::NotApplicable(format!(
            "needs n >= d + 2 and d >= 2 (got n = {n}, d = {d})"
        )));
    }
    let graph = critical_graph(cloud, config)?;
    Ok(if d == 2 {
        ggr_2d(&graph)
    } else {
        ggr_randomized(&graph, d, config.trials, config.seed, config.rank_tol)
    })
}

/// Local identifiability under Čech persistence: circumsphere rigidity of
/// the critical hypergraph at the configuration.
pub fn cech_local_identifiability(cloud: &PointCloud, config: &AnalysisConfig) -> Result<bool> {
    Ok(cech_local_identifiability_verdict(cloud, config)?.is_rigid())
}

/// Same test, exposing the rank verdict.
pub fn cech_local_identifiability_verdict(
    cloud: &PointCloud,
    config: &AnalysisConfig,
) -> Result<RigidityVerdict> {
    let hypergraph = critical_hypergraph(cloud, config)?;
    let fw = CircumsphereFramework::new(hypergraph, cloud.clone())?;
    circumsphere_rigidity_test(&fw, config.rank_tol)
}

/// A genericity warning: the configuration sits near (or on) a degenerate
/// locus where verdicts are advisory.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum GenericityWarning {
    /// Two or more pairs share a distance within tolerance.
    CoincidentDistances {
        distance: f64,
        pairs: Vec<(usize, usize)>,
    },
    /// An affinely dependent subset of at most d + 1 points.
    AffineDependence { vertices: Vec<usize> },
    /// A filtration tie not forced by shared supports.
    UnforcedTie {
        value: f64,
        simplices: Vec<SimplexKey>,
    },
    /// A point of a simplex lies on the boundary sphere of its proper
    /// support, so the support set is ambiguous.
    SupportDegeneracy {
        simplex: SimplexKey,
        support: SimplexKey,
    },
    /// Two merged endpoint values are suspiciously close.
    NearCoincidentEndpoints { values: Vec<f64> },
}

/// Scan for genericity failures: coincident distances, affine dependences,
/// unforced filtration ties, ambiguous enclosing-sphere supports, and
/// near-coincident barcode endpoints.
pub fn genericity_diagnostics(
    cloud: &PointCloud,
    config: &AnalysisConfig,
) -> Result<Vec<GenericityWarning>> {
    let tol = config.tol;
    let n = cloud.n();
    let d = cloud.dim();
    let mut warnings = Vec::new();

    // Coincident pairwise distances.
    let mut dists: Vec<(f64, (usize, usize))> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            dists.push((cloud.distance(i, j)?, (i, j)));
        }
    }
    dists.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut cluster: Vec<(f64, (usize, usize))> = Vec::new();
    let flush = |cluster: &mut Vec<(f64, (usize, usize))>,
                 warnings: &mut Vec<GenericityWarning>| {
        if cluster.len() > 1 {
            warnings.push(GenericityWarning::CoincidentDistances {
                distance: cluster[0].0,
                pairs: cluster.iter().map(|e| e.1).collect(),
            });
        }
        cluster.clear();
    };
    for entry in &dists {
        let tied = cluster
            .last()
            .is_some_and(|last| (entry.0 - last.0).abs() <= tol * (1.0 + entry.0.abs()));
        if !tied {
            flush(&mut cluster, &mut warnings);
        }
        cluster.push(*entry);
    }
    flush(&mut cluster, &mut warnings);

    // Affinely dependent small subsets.
    let max_size = (d + 1).min(n);
    let mut buf = Vec::new();
    affine_dependence_scan(cloud, max_size, 0, &mut buf, &mut warnings);

    // Unforced Čech ties and ambiguous supports.
    let cech = build_filtered_complex(
        cloud,
        FiltrationKind::Cech,
        config.cech_degree(d),
        config.complex_budget,
    )?;
    let signature = preorder_signature(&cech, tol);
    for group in &signature.groups {
        if group.value <= tol || group.simplices.len() < 2 {
            continue;
        }
        let mut supports: Vec<SimplexKey> = Vec::new();
        for simplex in &group.simplices {
            let support = min_enclosing_sphere(cloud, simplex)?.support;
            if !supports.contains(&support) {
                supports.push(support);
            }
        }
        if supports.len() > 1 {
            warnings.push(GenericityWarning::UnforcedTie {
                value: group.value,
                simplices: group.simplices.clone(),
            });
        }
    }
    for (simplex, _) in cech.entries() {
        if simplex.len() < 2 || simplex.len() > d + 1 {
            continue;
        }
        let enc = min_enclosing_sphere(cloud, simplex)?;
        if enc.support.len() >= simplex.len() {
            continue;
        }
        let rho = enc.sphere.radius;
        for &v in simplex.vertices() {
            if enc.support.contains(v) {
                continue;
            }
            let dist = (cloud.point(v).transpose() - &enc.sphere.center).norm();
            if (dist - rho).abs() <= tol * (1.0 + rho) {
                warnings.push(GenericityWarning::SupportDegeneracy {
                    simplex: simplex.clone(),
                    support: enc.support.clone(),
                });
                break;
            }
        }
    }

    // Near-coincident endpoints in either barcode.
    for barcode in [
        vr_full_barcode(cloud, config)?,
        cech_full_barcode(cloud, config)?,
    ] {
        let endpoints = bounded_endpoints(&barcode, tol);
        for w in endpoints.windows(2) {
            if (w[1] - w[0]).abs() <= 10.0 * tol * (1.0 + w[1].abs()) {
                warnings.push(GenericityWarning::NearCoincidentEndpoints {
                    values: vec![w[0], w[1]],
                });
            }
        }
    }

    Ok(warnings)
}

fn affine_dependence_scan(
    cloud: &PointCloud,
    max_size: usize,
    start: usize,
    buf: &mut Vec<usize>,
    warnings: &mut Vec<GenericityWarning>,
) {
    if buf.len() >= 3 {
        let simplex = SimplexKey::new(buf.clone()).expect("valid subset");
        let sub = cloud.sub_configuration(&simplex).expect("valid indices");
        if !affinely_independent(&sub, DEFAULT_RANK_TOL) {
            warnings.push(GenericityWarning::AffineDependence {
                vertices: buf.clone(),
            });
        }
    }
    if buf.len() == max_size {
        return;
    }
    for v in start..cloud.n() {
        buf.push(v);
        affine_dependence_scan(cloud, max_size, v + 1, buf, warnings);
        buf.pop();
    }
}

/// Planar chain: point `i + 1` sits at distance `2 * radii[i]` from point
/// `i` in direction `angles[i]` (radians, strictly inside (-pi/4, pi/4)).
///
/// Every pairwise direction then stays inside the cone, which forces the
/// Čech persistence of the chain to live in degree 0 with deaths exactly
/// the radii. The pairwise condition is re-checked after construction.
pub fn generate_chain_cloud(radii: &[f64], angles: &[f64]) -> Result<PointCloud> {
    if radii.is_empty() {
        return Err(Error::Domain("chain needs at least one radius".into()));
    }
    if radii.len() != angles.len() {
        return Err(Error::Domain(format!(
            "{} radii but {} angles",
            radii.len(),
            angles.len()
        )));
    }
    if let Some(r) = radii.iter().find(|&&r| !r.is_finite() || r <= 0.0) {
        return Err(Error::Domain(format!("radii must be positive, got {r}")));
    }
    let quarter_pi = std::f64::consts::FRAC_PI_4;
    if let Some(a) = angles.iter().find(|&&a| a.abs() >= quarter_pi) {
        return Err(Error::AngleViolation(format!(
            "step angle {a} not strictly inside (-pi/4, pi/4)"
        )));
    }

    let n = radii.len() + 1;
    let mut points = vec![vec![0.0, 0.0]];
    for i in 0..radii.len() {
        let prev = &points[i];
        points.push(vec![
            prev[0] + 2.0 * radii[i] * angles[i].cos(),
            prev[1] + 2.0 * radii[i] * angles[i].sin(),
        ]);
    }
    let cloud = PointCloud::new(points)?;

    // The pairwise condition follows from the per-step bound, but verify
    // it anyway: dx > 0 and |dy| < dx for every i < j.
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = cloud.point(j) - cloud.point(i);
            if !(diff[0] > 0.0 && diff[1].abs() < diff[0]) {
                return Err(Error::AngleViolation(format!(
                    "direction from point {i} to point {j} leaves the cone"
                )));
            }
        }
    }
    Ok(cloud)
}

/// Rank diagnostics attached to a report.
#[derive(Debug, Clone, Serialize)]
pub struct RankDiagnostics {
    pub fiber_jacobian: FiberJacobian,
    pub vr_rigidity: Option<RigidityVerdict>,
    pub cech_rigidity: Option<RigidityVerdict>,
}

/// Everything the identifiability analysis produces for one cloud and one
/// filtration, serialized as the tool's main JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct IdentifiabilityReport {
    pub version: String,
    pub n: usize,
    pub d: usize,
    pub filtration: FiltrationKind,
    /// Distinct bounded endpoints, including 0.
    pub k: usize,
    /// `nd - k + 1`: fiber dimension is at least this (generic clouds).
    pub lower_bound: i64,
    /// `nd - n + 1`: the whole fiber has at most this dimension.
    pub upper_bound: i64,
    /// `nd - rank` of the endpoint-gradient Jacobian; a local quantity at
    /// the input, unlike the whole-fiber upper bound.
    pub local_fiber_dim: i64,
    pub vr_locally_identifiable: Option<bool>,
    pub vr_globally_identifiable_sufficient: Option<bool>,
    pub cech_locally_identifiable: Option<bool>,
    pub genericity_warnings: Vec<GenericityWarning>,
    pub rank_diagnostics: RankDiagnostics,
    pub critical_graph: Option<Graph>,
    pub critical_hypergraph: Option<Hypergraph>,
    pub seed: u64,
    pub trials: usize,
}

/// Map a verdict-level failure (out-of-domain input, degeneracy, unmet
/// hypothesis) to "not available"; surface everything else.
fn advisory<T>(result: Result<T>) -> Result<Option<T>> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(Error::Domain(_))
        | Err(Error::NotApplicable(_))
        | Err(Error::DegenerateSimplex { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Run the full identifiability analysis of `cloud` for one filtration.
pub fn build_identifiability_report(
    cloud: &PointCloud,
    kind: FiltrationKind,
    config: &AnalysisConfig,
) -> Result<IdentifiabilityReport> {
    let n = cloud.n();
    let d = cloud.dim();
    let fiber = fiber_jacobian(cloud, kind, config)?;
    let (lower_bound, upper_bound) = fiber_dim_bounds(n, d, fiber.k);

    let vr_verdict = advisory(vr_local_identifiability_verdict(cloud, config))?;
    let cech_verdict = advisory(cech_local_identifiability_verdict(cloud, config))?;
    let vr_global = advisory(vr_global_identifiability_sufficient(cloud, config))?;
    let warnings = genericity_diagnostics(cloud, config)?;

    Ok(IdentifiabilityReport {
        version: crate::VERSION.to_string(),
        n,
        d,
        filtration: kind,
        k: fiber.k,
        lower_bound,
        upper_bound,
        local_fiber_dim: fiber.local_fiber_dim,
        vr_locally_identifiable: vr_verdict.map(|v| v.is_rigid()),
        vr_globally_identifiable_sufficient: vr_global,
        cech_locally_identifiable: cech_verdict.map(|v| v.is_rigid()),
        genericity_warnings: warnings,
        rank_diagnostics: RankDiagnostics {
            fiber_jacobian: fiber,
            vr_rigidity: vr_verdict,
            cech_rigidity: cech_verdict,
        },
        critical_graph: advisory(critical_graph(cloud, config))?,
        critical_hypergraph: advisory(critical_hypergraph(cloud, config))?,
        seed: config.seed,
        trials: config.trials,
    })
}
