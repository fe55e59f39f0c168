//! Critical edges, the critical graph, and the critical hypergraph: the
//! combinatorial structures a barcode pins inside a point cloud.
//!
//! A pair is critical when half its distance is a bounded endpoint of the
//! VR full barcode. A simplex is critical for the Čech filtration when its
//! enclosing radius is a bounded endpoint and strictly exceeds that of
//! every proper face.

use std::collections::HashMap;

use crate::circumsphere::Hypergraph;
use crate::config::AnalysisConfig;
use crate::error::Result;
use crate::filtration::{build_filtered_complex, FiltrationKind};
use crate::geometry::{min_enclosing_radius, PointCloud, SimplexKey};
use crate::persistence::{compute_barcodes, FullBarcode};
use crate::rigidity::Graph;

/// All distinct finite endpoint values across all degrees, merged within
/// `tol * (1 + |value|)`, ascending. Always contains 0 for point-cloud
/// filtrations (every degree-0 interval is born there).
pub fn bounded_endpoints(barcode: &FullBarcode, tol: f64) -> Vec<f64> {
    let mut values: Vec<f64> = Vec::new();
    for degree in &barcode.degrees {
        for interval in degree.intervals() {
            values.push(interval.birth);
            if !interval.is_infinite() {
                values.push(interval.death);
            }
        }
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut merged: Vec<f64> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for v in values {
        if merged.is_empty() || (v - last).abs() > tol * (1.0 + v.abs()) {
            merged.push(v);
        }
        last = v;
    }
    merged
}

/// Whether `value` matches some endpoint within `tol * (1 + |value|)`.
pub(crate) fn matches_endpoint(value: f64, endpoints: &[f64], tol: f64) -> bool {
    let idx = endpoints.partition_point(|&e| e < value);
    let slack = tol * (1.0 + value.abs());
    let mut ok = false;
    if idx < endpoints.len() {
        ok |= (endpoints[idx] - value).abs() <= slack;
    }
    if idx > 0 {
        ok |= (endpoints[idx - 1] - value).abs() <= slack;
    }
    ok
}

/// Pairs whose half-distance matches a bounded endpoint of `barcode`, which
/// must be the VR full barcode of `cloud`. Sorted lexicographically.
pub fn critical_edges(
    cloud: &PointCloud,
    barcode: &FullBarcode,
    tol: f64,
) -> Result<Vec<(usize, usize)>> {
    let endpoints = bounded_endpoints(barcode, tol);
    let n = cloud.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let half = cloud.distance(i, j)? / 2.0;
            if matches_endpoint(half, &endpoints, tol) {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

/// VR full barcode of `cloud` at the configured degree cap.
pub fn vr_full_barcode(cloud: &PointCloud, config: &AnalysisConfig) -> Result<FullBarcode> {
    let max_degree = config.vr_degree(cloud.n());
    let complex = build_filtered_complex(
        cloud,
        FiltrationKind::VietorisRips,
        max_degree,
        config.complex_budget,
    )?;
    Ok(compute_barcodes(&complex, max_degree))
}

/// Čech full barcode of `cloud` at the configured degree cap.
pub fn cech_full_barcode(cloud: &PointCloud, config: &AnalysisConfig) -> Result<FullBarcode> {
    let max_degree = config.cech_degree(cloud.dim());
    let complex = build_filtered_complex(
        cloud,
        FiltrationKind::Cech,
        max_degree,
        config.complex_budget,
    )?;
    Ok(compute_barcodes(&complex, max_degree))
}

/// The critical graph: vertex set `0..n`, edges the critical pairs of the
/// VR full barcode.
pub fn critical_graph(cloud: &PointCloud, config: &AnalysisConfig) -> Result<Graph> {
    let barcode = vr_full_barcode(cloud, config)?;
    let edges = critical_edges(cloud, &barcode, config.tol)?;
    Graph::new(cloud.n(), edges)
}

/// The critical hypergraph: all simplices with 2 to `d + 1` vertices whose
/// enclosing radius matches a bounded Čech endpoint and strictly exceeds
/// the enclosing radius of every proper face by more than the tolerance.
///
/// Singletons are omitted: they impose no constraint and the circumsphere
/// framework requires hyperedges of at least two endpoints.
pub fn critical_hypergraph(cloud: &PointCloud, config: &AnalysisConfig) -> Result<Hypergraph> {
    let tol = config.tol;
    let barcode = cech_full_barcode(cloud, config)?;
    let endpoints = bounded_endpoints(&barcode, tol);

    let n = cloud.n();
    let d = cloud.dim();
    let max_size = (d + 1).min(n);

    // Enclosing radii of all candidate simplices and their facets.
    let mut radius: HashMap<SimplexKey, f64> = HashMap::new();
    let mut sizes: Vec<Vec<SimplexKey>> = vec![Vec::new(); max_size + 1];
    let mut buf: Vec<usize> = Vec::new();
    collect_subsets(n, max_size, 0, &mut buf, &mut sizes);
    for by_size in sizes.iter().skip(1) {
        for simplex in by_size {
            radius.insert(simplex.clone(), min_enclosing_radius(cloud, simplex)?);
        }
    }

    let mut hyperedges = Vec::new();
    for by_size in sizes.iter().skip(2) {
        for simplex in by_size {
            let rho = radius[simplex];
            if !matches_endpoint(rho, &endpoints, tol) {
                continue;
            }
            // Strictness against facets covers all proper faces by
            // monotonicity of the enclosing radius.
            let margin = tol * (1.0 + rho.abs());
            let strict = simplex
                .facets()
                .iter()
                .all(|facet| rho - radius[facet] > margin);
            if strict {
                hyperedges.push(simplex.clone());
            }
        }
    }
    Hypergraph::new(n, hyperedges)
}

fn collect_subsets(
    n: usize,
    max_size: usize,
    start: usize,
    buf: &mut Vec<usize>,
    out: &mut Vec<Vec<SimplexKey>>,
) {
    if !buf.is_empty() {
        out[buf.len()].push(SimplexKey::new(buf.clone()).expect("valid subset"));
    }
    if buf.len() == max_size {
        return;
    }
    for v in start..n {
        buf.push(v);
        collect_subsets(n, max_size, v + 1, buf, out);
        buf.pop();
    }
}
