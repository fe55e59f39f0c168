//! Keys for simplices of the complete complex on `n` vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty subset of vertex indices, stored strictly increasing.
///
/// The derived ordering is lexicographic on the vertex list, which is the
/// tie-break order used throughout (e.g. "lexicographically least simplex").
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimplexKey(Vec<usize>);

impl SimplexKey {
    /// Build a key from vertices in any order; duplicates are rejected.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("simplex must be nonempty".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!(
                "duplicate vertex in {vertices:?}"
            )));
        }
        Ok(SimplexKey(vertices))
    }

    /// Vertices assumed sorted and distinct; checked in debug builds only.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!vertices.is_empty());
        SimplexKey(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: nonempty
    }

    /// Simplex dimension, `len() - 1`.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Whether `self` is a (not necessarily strict) face of `other`.
    pub fn is_face_of(&self, other: &SimplexKey) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// All codimension-1 faces, in the order of the omitted vertex.
    pub fn facets(&self) -> Vec<SimplexKey> {
        if self.len() < 2 {
            return Vec::new();
        }
        (0..self.len())
            .map(|drop| {
                let verts = self
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, &v)| v)
                    .collect();
                SimplexKey::from_sorted(verts)
            })
            .collect()
    }

    /// All unordered vertex pairs `(a, b)` with `a < b`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let v = &self.0;
        (0..v.len()).flat_map(move |i| (i + 1..v.len()).map(move |j| (v[i], v[j])))
    }

    pub(crate) fn check_against(&self, n: usize) -> Result<()> {
        if let Some(&max) = self.0.last() {
            if max >= n {
                return Err(Error::IndexOutOfRange { index: max, n });
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for SimplexKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
