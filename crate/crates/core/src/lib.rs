//! Kernel-based signature functions for unordered point clouds in R^d.
//!
//! A point cloud `X = {x^1, .., x^m}` is turned into a smooth scalar field
//!
//! ```text
//! u_X(x) = (1/m) Σ_k λ_k K(x − x^k)
//! ```
//!
//! by solving the dense ridge system `(mα + M)Λ = m·1` over the kernel matrix
//! `M[i][k] = K(x^i − x^k)`. The level set `{u_X = 1}` (approximately)
//! interpolates the cloud, and the field gives direct access to the geometry
//! of the sampled manifold: implied unit normals `ν = −∇u/|∇u|`, principal
//! curvatures from the projected Hessian, 2-D iso-level polylines, and a local
//! intrinsic dimension estimate from the rank of nearby implied normals.
//!
//! Modules mirror that pipeline:
//!
//! * [`kernels`] — Gauss / Laplace / regularized-Laplace kernels with closed-form
//!   first and second derivatives and bandwidth scaling,
//! * [`cloud`] — the [`PointCloud`] container,
//! * [`density`] — kernel-matrix assembly and the density solve,
//! * [`signature`] — the evaluable model plus normals, shape operator and curvatures,
//! * [`dimension`] — local intrinsic dimension from implied-normal rank,
//! * [`isoline`] — marching-squares extraction of 2-D level lines,
//! * [`shapes`] — deterministic generators for the benchmark shapes and the
//!   radial noise model.
//!
//! All randomized paths take an explicit 64-bit seed and use the ChaCha8
//! generator, so results are reproducible within this implementation.

pub mod cloud;
pub mod density;
pub mod dimension;
pub mod error;
pub mod isoline;
pub mod kernels;
mod sampling;
pub mod shapes;
pub mod signature;

pub use cloud::PointCloud;
pub use density::{build_kernel_matrix, solve_density, DensitySolution, SolverPath};
pub use dimension::{estimate_local_dimension, DimensionEstimate, ProbeConfig};
pub use error::{Error, Result};
pub use isoline::{auto_iso_value, extract_isolines, GridSpec, IsoLevel, IsolineSet, Polyline};
pub use kernels::{EvalOrder, KernelEval, KernelFamily, KernelSpec};
pub use shapes::NoiseSpec;
pub use signature::{Evaluation, GeometryReport, NormalEstimate, RegularizedQuery, SignatureModel};

/// Column vector in R^d used for points, displacements and gradients.
pub type Vector = nalgebra::DVector<f64>;
/// Dense d×d or m×m matrix.
pub type Matrix = nalgebra::DMatrix<f64>;
