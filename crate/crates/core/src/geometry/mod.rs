//! Point clouds, simplices, and the geometric kernels built on them:
//! distance and Cayley–Menger matrices, circumradii and their gradients,
//! minimal enclosing spheres, and edge-length measurement maps.

mod cayley_menger;
mod enclosing;
mod measurement;
mod point_cloud;
mod simplex;

pub use cayley_menger::{
    cayley_menger, circumradius_gradient, circumradius_squared, CayleyMengerMatrix,
    DistanceMatrix,
};
pub use enclosing::{
    min_enclosing_radius, min_enclosing_sphere, min_enclosing_support, EnclosingSphere, Sphere,
};
pub use measurement::{edge_length_measurement, rigidity_matrix};
pub use point_cloud::PointCloud;
pub use simplex::SimplexKey;
