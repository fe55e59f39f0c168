//! Vietoris–Rips and Čech filtered complexes on the complete complex, and
//! the total-preorder signature of a point cloud.
//!
//! Simplex values: VR assigns half the largest pairwise distance, Čech the
//! minimal enclosing radius. Both vanish exactly on singletons and agree on
//! pairs. The complex enumerates every simplex up to the dimension cap; no
//! sparsification, since downstream analyses need values near the endpoints
//! of the full complex.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{min_enclosing_radius, PointCloud, SimplexKey};

/// Which filtration to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiltrationKind {
    #[serde(rename = "vr")]
    VietorisRips,
    #[serde(rename = "cech")]
    Cech,
}

impl std::fmt::Display for FiltrationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FiltrationKind::VietorisRips => write!(f, "vr"),
            FiltrationKind::Cech => write!(f, "cech"),
        }
    }
}

/// VR filtration value: 0 for singletons, else half the largest pairwise
/// distance within the simplex.
pub fn phi_vr(cloud: &PointCloud, simplex: &SimplexKey) -> Result<f64> {
    simplex.check_against(cloud.n())?;
    let mut max = 0.0_f64;
    for (i, j) in simplex.pairs() {
        max = max.max(cloud.distance(i, j)?);
    }
    Ok(max / 2.0)
}

/// Čech filtration value: the minimal enclosing radius of the simplex's
/// sub-configuration.
pub fn phi_cech(cloud: &PointCloud, simplex: &SimplexKey) -> Result<f64> {
    min_enclosing_radius(cloud, simplex)
}

/// All simplices of the complete complex up to a dimension cap, with their
/// filtration values, sorted by (value, dimension, lexicographic vertices).
/// That order is also the reduction order: faces always precede cofaces.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    entries: Vec<(SimplexKey, f64)>,
    dim_cap: usize,
    kind: FiltrationKind,
    n: usize,
}

impl FilteredComplex {
    pub fn entries(&self) -> &[(SimplexKey, f64)] {
        &self.entries
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value of a simplex, if it is in the complex.
    pub fn value(&self, simplex: &SimplexKey) -> Option<f64> {
        self.entries
            .iter()
            .find(|(s, _)| s == simplex)
            .map(|&(_, v)| v)
    }

    /// Copy with entries reordered within exact-value tie groups by a seeded
    /// shuffle, still face-respecting (dimension stays the inner tie-break).
    /// Barcodes must be invariant under this.
    pub fn shuffled_within_ties(&self, seed: u64) -> FilteredComplex {
        use rand::Rng;
        let mut rng = crate::sampling::rng_for_seed(seed);
        let mut keyed: Vec<(f64, usize, u64, SimplexKey)> = self
            .entries
            .iter()
            .map(|(s, v)| (*v, s.len(), rng.random::<u64>(), s.clone()))
            .collect();
        keyed.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap()
                .then(a.1.cmp(&b.1))
                .then(a.2.cmp(&b.2))
        });
        FilteredComplex {
            entries: keyed.into_iter().map(|(v, _, _, s)| (s, v)).collect(),
            dim_cap: self.dim_cap,
            kind: self.kind,
            n: self.n,
        }
    }
}

/// Number of simplices of the complete complex on `n` vertices with at most
/// `max_size` vertices, saturating.
fn simplex_count(n: usize, max_size: usize) -> usize {
    let mut total: usize = 0;
    let mut binom: u128 = 1;
    for k in 1..=max_size.min(n) {
        binom = binom.saturating_mul((n - k + 1) as u128) / k as u128;
        total = total.saturating_add(binom.min(usize::MAX as u128) as usize);
    }
    total
}

/// Build the filtered complex of `cloud` for the requested filtration, with
/// all simplices of dimension at most `min(max_degree + 1, n - 1)`.
///
/// Čech values are clamped up to the maximum over facets so the stored
/// complex is exactly order-preserving even under floating-point noise.
pub fn build_filtered_complex(
    cloud: &PointCloud,
    kind: FiltrationKind,
    max_degree: usize,
    budget: usize,
) -> Result<FilteredComplex> {
    let n = cloud.n();
    let dim_cap = (max_degree + 1).min(n - 1);
    let max_size = dim_cap + 1;

    let count = simplex_count(n, max_size);
    if count > budget {
        return Err(Error::ComplexTooLarge {
            simplices: count,
            budget,
        });
    }

    let mut values: HashMap<SimplexKey, f64> = HashMap::with_capacity(count);
    let mut entries: Vec<(SimplexKey, f64)> = Vec::with_capacity(count);
    let mut buf: Vec<usize> = Vec::with_capacity(max_size);
    enumerate_simplices(n, max_size, &mut buf, &mut |verts| {
        let simplex = SimplexKey::from_sorted(verts.to_vec());
        let raw = match kind {
            FiltrationKind::VietorisRips => phi_vr(cloud, &simplex)?,
            FiltrationKind::Cech => phi_cech(cloud, &simplex)?,
        };
        // Enumeration is by increasing size, so facet values are known.
        let mut value = raw;
        for facet in simplex.facets() {
            if let Some(&fv) = values.get(&facet) {
                value = value.max(fv);
            }
        }
        values.insert(simplex.clone(), value);
        entries.push((simplex, value));
        Ok(())
    })?;

    entries.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .unwrap()
            .then(a.0.len().cmp(&b.0.len()))
            .then(a.0.cmp(&b.0))
    });

    Ok(FilteredComplex {
        entries,
        dim_cap,
        kind,
        n,
    })
}

/// Visit all nonempty subsets of `0..n` by increasing size, lexicographic
/// within each size.
fn enumerate_simplices<F>(
    n: usize,
    max_size: usize,
    buf: &mut Vec<usize>,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    for size in 1..=max_size.min(n) {
        buf.clear();
        subsets_of_size(n, size, 0, buf, visit)?;
    }
    Ok(())
}

fn subsets_of_size<F>(
    n: usize,
    size: usize,
    start: usize,
    buf: &mut Vec<usize>,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    if buf.len() == size {
        return visit(buf);
    }
    let remaining = size - buf.len();
    for v in start..=(n - remaining) {
        buf.push(v);
        subsets_of_size(n, size, v + 1, buf, visit)?;
        buf.pop();
    }
    Ok(())
}

/// One tie group of the preorder signature: simplices with equal filtration
/// value, listed in (dimension, lexicographic) order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TieGroup {
    /// Smallest value in the group.
    pub value: f64,
    pub simplices: Vec<SimplexKey>,
}

/// The combinatorial signature of the cell containing a point cloud: the
/// ordered partition of simplices into tie groups of equal filtration value.
#[derive(Debug, Clone, Serialize)]
pub struct PreorderSignature {
    pub groups: Vec<TieGroup>,
}

impl PreorderSignature {
    /// Compare only the combinatorial partition, not the values.
    pub fn same_partition(&self, other: &PreorderSignature) -> bool {
        self.groups.len() == other.groups.len()
            && self
                .groups
                .iter()
                .zip(&other.groups)
                .all(|(a, b)| a.simplices == b.simplices)
    }
}

/// Partition the simplices of `complex` into tie groups: walking values in
/// ascending order, a simplex joins the current group when its value is
/// within `tol * (1 + |value|)` of the group's last member.
pub fn preorder_signature(complex: &FilteredComplex, tol: f64) -> PreorderSignature {
    let mut groups: Vec<TieGroup> = Vec::new();
    let mut last_value = f64::NEG_INFINITY;
    for (simplex, value) in complex.entries() {
        let tie = !groups.is_empty() && (value - last_value).abs() <= tol * (1.0 + value.abs());
        if tie {
            groups.last_mut().unwrap().simplices.push(simplex.clone());
        } else {
            groups.push(TieGroup {
                value: *value,
                simplices: vec![simplex.clone()],
            });
        }
        last_value = *value;
    }
    for g in &mut groups {
        g.simplices
            .sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    }
    PreorderSignature { groups }
}
