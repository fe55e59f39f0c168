//! Barcodes from filtered complexes: column-based boundary-matrix reduction
//! over the two-element field with the clearing optimization, plus the
//! degree-0 / minimal-spanning-tree correspondence.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::filtration::FilteredComplex;
use crate::geometry::{PointCloud, SimplexKey};

/// A half-open interval `[birth, death)`; `death` may be `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub birth: f64,
    pub death: f64,
}

impl Interval {
    pub fn is_infinite(&self) -> bool {
        self.death.is_infinite()
    }

    pub fn length(&self) -> f64 {
        self.death - self.birth
    }
}

impl Serialize for Interval {
    /// `[birth, death]` with infinite deaths as the string `"inf"`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut tup = s.serialize_tuple(2)?;
        tup.serialize_element(&self.birth)?;
        if self.death.is_infinite() {
            tup.serialize_element("inf")?;
        } else {
            tup.serialize_element(&self.death)?;
        }
        tup.end()
    }
}

/// A finite multiset of intervals, canonically sorted by (birth ascending,
/// death descending with infinity first).
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct Barcode {
    intervals: Vec<Interval>,
}

impl Barcode {
    fn new(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by(|a, b| {
            a.birth
                .partial_cmp(&b.birth)
                .unwrap()
                .then(b.death.partial_cmp(&a.death).unwrap())
        });
        Barcode { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Finite deaths, ascending.
    pub fn finite_deaths(&self) -> Vec<f64> {
        let mut deaths: Vec<f64> = self
            .intervals
            .iter()
            .filter(|i| !i.is_infinite())
            .map(|i| i.death)
            .collect();
        deaths.sort_by(|a, b| a.partial_cmp(b).unwrap());
        deaths
    }

    /// Number of intervals containing `t` (half-open convention).
    pub fn alive_at(&self, t: f64) -> usize {
        self.intervals
            .iter()
            .filter(|i| i.birth <= t && t < i.death)
            .count()
    }

    /// Multiset equality within an absolute-plus-relative tolerance,
    /// comparing canonically sorted interval lists entrywise.
    pub fn approx_eq(&self, other: &Barcode, tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        self.intervals.iter().zip(&other.intervals).all(|(a, b)| {
            let births = (a.birth - b.birth).abs() <= tol * (1.0 + a.birth.abs());
            let deaths = match (a.is_infinite(), b.is_infinite()) {
                (true, true) => true,
                (false, false) => (a.death - b.death).abs() <= tol * (1.0 + a.death.abs()),
                _ => false,
            };
            births && deaths
        })
    }
}

/// Per-degree barcodes of a filtration, degrees `0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FullBarcode {
    /// `degrees[q]` is the degree-q barcode.
    pub degrees: Vec<Barcode>,
    pub max_degree: usize,
}

impl FullBarcode {
    pub fn degree(&self, q: usize) -> &Barcode {
        &self.degrees[q]
    }

    pub fn approx_eq(&self, other: &FullBarcode, tol: f64) -> bool {
        self.max_degree == other.max_degree
            && self
                .degrees
                .iter()
                .zip(&other.degrees)
                .all(|(a, b)| a.approx_eq(b, tol))
    }
}

/// Compute barcodes in degrees `0..=max_degree` by standard column
/// reduction with clearing, processing dimensions from the top down.
///
/// Requires `F` to be face-closed up to dimension `max_degree + 1` (its cap
/// must be at least `min(max_degree + 1, n - 1)`). Zero-length intervals
/// are dropped; each connected component at infinity contributes one
/// infinite interval in degree 0.
pub fn compute_barcodes(complex: &FilteredComplex, max_degree: usize) -> FullBarcode {
    let needed_cap = (max_degree + 1).min(complex.n().saturating_sub(1));
    assert!(
        complex.dim_cap() >= needed_cap,
        "complex cap {} too small for degree {}",
        complex.dim_cap(),
        max_degree
    );

    let entries = complex.entries();
    let total = entries.len();
    let mut position: HashMap<&SimplexKey, usize> = HashMap::with_capacity(total);
    for (pos, (simplex, _)) in entries.iter().enumerate() {
        position.insert(simplex, pos);
    }

    let top_dim = complex.dim_cap();
    // Columns grouped by dimension for the clearing sweep.
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top_dim + 1];
    for (pos, (simplex, _)) in entries.iter().enumerate() {
        by_dim[simplex.dim()].push(pos);
    }

    let mut cleared = vec![false; total];
    let mut negative = vec![false; total];
    // pivot row -> column that owns it, per reduction sweep.
    let mut pivot_owner: Vec<Option<usize>> = vec![None; total];
    let mut reduced: HashMap<usize, Vec<usize>> = HashMap::new();
    // pairs[q] collects (birth position, death position) in degree q.
    let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); top_dim + 1];

    for dim in (1..=top_dim).rev() {
        for &col in &by_dim[dim] {
            if cleared[col] {
                continue;
            }
            let (simplex, _) = &entries[col];
            let mut column: Vec<usize> = simplex
                .facets()
                .iter()
                .map(|f| position[f])
                .collect();
            column.sort_unstable();
            while let Some(&low) = column.last() {
                let Some(owner) = pivot_owner[low] else { break };
                column = add_columns(&column, &reduced[&owner]);
            }
            if let Some(&low) = column.last() {
                negative[col] = true;
                pivot_owner[low] = Some(col);
                cleared[low] = true;
                pairs[dim - 1].push((low, col));
                reduced.insert(col, column);
            }
        }
        // Pivot rows live one dimension down; owners of this sweep stay
        // valid because rows of dimension `dim - 1` are only pivots for
        // columns of dimension `dim`.
    }

    let mut degrees: Vec<Barcode> = Vec::with_capacity(max_degree + 1);
    for q in 0..=max_degree {
        let mut intervals = Vec::new();
        let mut paired = vec![false; total];
        if q < pairs.len() {
            for &(birth_pos, death_pos) in &pairs[q] {
                paired[birth_pos] = true;
                let birth = entries[birth_pos].1;
                let death = entries[death_pos].1;
                if death > birth {
                    intervals.push(Interval { birth, death });
                }
            }
        }
        if q <= top_dim {
            for &pos in &by_dim[q] {
                if !negative[pos] && !paired[pos] {
                    intervals.push(Interval {
                        birth: entries[pos].1,
                        death: f64::INFINITY,
                    });
                }
            }
        }
        degrees.push(Barcode::new(intervals));
    }

    FullBarcode {
        degrees,
        max_degree,
    }
}

/// Symmetric difference of two sorted index lists (column addition over
/// the two-element field).
fn add_columns(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Ascending edge lengths of a minimal spanning tree of the cloud, by
/// Kruskal's algorithm over all pairs. The multiset is unique even when
/// the tree is not; `n - 1` entries.
pub fn mst_edge_lengths(cloud: &PointCloud) -> Vec<f64> {
    let n = cloud.n();
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((cloud.distance(i, j).expect("valid indices"), i, j));
        }
    }
    edges.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut uf = UnionFind::new(n);
    let mut lengths = Vec::with_capacity(n.saturating_sub(1));
    for (len, i, j) in edges {
        if uf.union(i, j) {
            lengths.push(len);
            if lengths.len() == n - 1 {
                break;
            }
        }
    }
    lengths
}

/// Check that the sorted MST edge lengths equal the doubled finite
/// degree-0 deaths, with multiplicity, within a relative tolerance.
pub fn verify_mst_barcode_correspondence(cloud: &PointCloud, max_rel_err: f64) -> Result<bool> {
    let complex = crate::filtration::build_filtered_complex(
        cloud,
        crate::filtration::FiltrationKind::VietorisRips,
        0,
        usize::MAX,
    )?;
    let barcode = compute_barcodes(&complex, 0);
    let deaths = barcode.degree(0).finite_deaths();
    let mst = mst_edge_lengths(cloud);
    if deaths.len() != mst.len() {
        return Ok(false);
    }
    Ok(deaths.iter().zip(&mst).all(|(death, len)| {
        (2.0 * death - len).abs() <= max_rel_err * (1.0 + len.abs())
    }))
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            self.parent[x] = self.find(self.parent[x]);
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}
