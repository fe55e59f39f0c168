//! Persistence barcodes of finite point clouds and rigidity-based
//! identifiability analysis.
//!
//! The pipeline implemented here goes from a labeled point cloud in `R^d` to
//! an identifiability verdict for the point cloud under its persistence
//! barcodes:
//!
//! 1. [`geometry`] — point clouds, Cayley–Menger matrices, circumradii,
//!    minimal enclosing spheres, measurement maps and their Jacobians.
//! 2. [`filtration`] — Vietoris–Rips and Čech filtered complexes and the
//!    total-preorder signature of a point cloud.
//! 3. [`persistence`] — boundary-matrix reduction over GF(2), full barcodes,
//!    and the degree-0 / minimal-spanning-tree correspondence.
//! 4. [`criticality`] — the critical graph and critical hypergraph extracted
//!    from barcode endpoints.
//! 5. [`rigidity`] — classical framework rigidity: rank tests, the 2D pebble
//!    game, and the randomized generic-global-rigidity test.
//! 6. [`circumsphere`] — circumsphere frameworks, their Jacobian rank test,
//!    and the complete-hypergraph rigidity verifier.
//! 7. [`fiber`] — fiber-dimension bounds for the persistence map and the
//!    identifiability report tying everything together.
//!
//! All types are immutable after construction and all operations are pure
//! functions of their inputs; randomized procedures take explicit seeds.

pub mod circumsphere;
pub mod config;
pub mod criticality;
pub mod error;
pub mod fiber;
pub mod filtration;
pub mod geometry;
pub mod jsonio;
pub mod linalg;
pub mod numdiff;
pub mod persistence;
pub mod rigidity;
pub mod sampling;

pub use config::AnalysisConfig;
pub use error::Error;
pub use geometry::{PointCloud, SimplexKey};

/// Crate version, embedded in serialized reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
