//! The evaluable signature function and the geometry derived from it.
//!
//! A fitted [`SignatureModel`] evaluates
//!
//! ```text
//! u(x) = (1/m) Σ_k λ_k K(x − x^k)
//! ```
//!
//! together with its exact gradient and Hessian. From those it derives the
//! implied unit normal `ν = −∇u/|∇u|`, the normal field's Jacobian, and the
//! principal curvatures of the level set through a point.
//!
//! Points where the gradient (numerically) vanishes are handled by the
//! singular-point policy: the query is retried at `x + η·ω` for random unit
//! directions ω, with `η = 1e−6 ×` cloud diameter, up to
//! [`MAX_SINGULAR_RETRIES`] times; reports produced this way carry the
//! applied offset.

use nalgebra::SymmetricEigen;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cloud::PointCloud;
use crate::density::DensitySolution;
use crate::error::{Error, Result};
use crate::kernels::{EvalOrder, KernelSpec};
use crate::sampling::unit_direction;
use crate::{Matrix, Vector};

/// Retry budget of the singular-point policy.
pub const MAX_SINGULAR_RETRIES: u32 = 8;

/// Seed of the (fixed, documented) ChaCha8 stream that draws perturbation
/// directions in the singular-point policy; a constant seed keeps
/// `normal_at` deterministic for identical arguments.
const SINGULAR_RETRY_SEED: u64 = 0x5194_7a7e_u64;

/// Evaluation of u with optional derivative data.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub value: f64,
    pub gradient: Option<Vector>,
    pub hessian: Option<Matrix>,
}

/// Record of a singular-point fallback: the offset actually applied to the
/// query and the number of attempts spent.
#[derive(Debug, Clone)]
pub struct RegularizedQuery {
    pub offset: Vector,
    pub attempts: u32,
}

/// Implied unit normal at a (possibly perturbed) query point.
#[derive(Debug, Clone)]
pub struct NormalEstimate {
    pub normal: Vector,
    pub gradient: Vector,
    /// The point the normal was actually evaluated at.
    pub query: Vector,
    pub regularized: Option<RegularizedQuery>,
}

/// Per-query geometry record: field value, derivatives, implied normal and
/// principal curvatures (length d−1, descending by magnitude).
#[derive(Debug, Clone)]
pub struct GeometryReport {
    pub query: Vector,
    pub u: f64,
    pub gradient: Vector,
    pub hessian: Matrix,
    pub normal: Vector,
    pub curvatures: Vec<f64>,
    pub regularized: Option<RegularizedQuery>,
}

/// An immutable fitted model: cloud + kernel + density coefficients.
#[derive(Debug, Clone)]
pub struct SignatureModel {
    cloud: PointCloud,
    spec: KernelSpec,
    density: DensitySolution,
    diameter: f64,
}

impl SignatureModel {
    pub fn new(cloud: PointCloud, spec: KernelSpec, density: DensitySolution) -> Result<Self> {
        spec.validate()?;
        if density.lambda.len() != cloud.len() {
            return Err(Error::DimensionMismatch {
                expected: cloud.len(),
                got: density.lambda.len(),
            });
        }
        let diameter = cloud.diameter();
        Ok(SignatureModel { cloud, spec, density, diameter })
    }

    /// Assemble the kernel matrix, solve the density system and build the model.
    pub fn fit(cloud: PointCloud, spec: KernelSpec, alpha: f64) -> Result<Self> {
        let matrix = crate::density::build_kernel_matrix(&cloud, &spec)?;
        let density = crate::density::solve_density(&matrix, alpha)?;
        Self::new(cloud, spec, density)
    }

    pub fn cloud(&self) -> &PointCloud {
        &self.cloud
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn density(&self) -> &DensitySolution {
        &self.density
    }

    pub fn dim(&self) -> usize {
        self.cloud.dim()
    }

    /// Gradient-norm threshold of the singular-point policy,
    /// `1e−12 · (1 + cloud diameter)`.
    pub fn singular_threshold(&self) -> f64 {
        1e-12 * (1.0 + self.diameter)
    }

    fn check_query(&self, x: &Vector) -> Result<()> {
        if x.len() != self.cloud.dim() {
            return Err(Error::DimensionMismatch { expected: self.cloud.dim(), got: x.len() });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidCloud("query point has a non-finite coordinate".into()));
        }
        Ok(())
    }

    /// u(x); infallible for a valid query of matching dimension.
    pub fn value(&self, x: &Vector) -> f64 {
        let m = self.cloud.len() as f64;
        self.cloud
            .points()
            .iter()
            .zip(&self.density.lambda)
            .map(|(p, l)| l * self.spec.value(&(x - p)))
            .sum::<f64>()
            / m
    }

    /// Evaluate u and, as requested, its exact gradient and Hessian
    /// (term-wise derivatives including the 1/m prefactor).
    pub fn evaluate(&self, x: &Vector, order: EvalOrder) -> Result<Evaluation> {
        self.check_query(x)?;
        if order == EvalOrder::Value {
            return Ok(Evaluation { value: self.value(x), gradient: None, hessian: None });
        }
        let d = self.cloud.dim();
        let m = self.cloud.len() as f64;
        let mut value = 0.0;
        let mut gradient = Vector::zeros(d);
        let mut hessian =
            if order == EvalOrder::Hessian { Some(Matrix::zeros(d, d)) } else { None };
        for (p, l) in self.cloud.points().iter().zip(&self.density.lambda) {
            let term = self.spec.eval(&(x - p), order)?;
            value += l * term.value;
            gradient.axpy(*l, &term.gradient.expect("gradient requested"), 1.0);
            if let Some(acc) = hessian.as_mut() {
                *acc += term.hessian.expect("hessian requested") * *l;
            }
        }
        Ok(Evaluation {
            value: value / m,
            gradient: Some(gradient / m),
            hessian: hessian.map(|h| h / m),
        })
    }

    /// ∇u(x).
    pub fn gradient(&self, x: &Vector) -> Result<Vector> {
        Ok(self.evaluate(x, EvalOrder::Gradient)?.gradient.unwrap())
    }

    /// D²u(x), symmetric.
    pub fn hessian(&self, x: &Vector) -> Result<Matrix> {
        Ok(self.evaluate(x, EvalOrder::Hessian)?.hessian.unwrap())
    }

    /// Resolve a query against the singular-point policy: returns the point
    /// actually used, the gradient there, and the applied offset if any.
    fn resolve_regular(&self, x: &Vector) -> Result<(Vector, Vector, Option<RegularizedQuery>)> {
        let eps = self.singular_threshold();
        let g = self.gradient(x)?;
        if g.norm() >= eps {
            return Ok((x.clone(), g, None));
        }
        let eta = 1e-6 * self.diameter;
        let mut rng = ChaCha8Rng::seed_from_u64(SINGULAR_RETRY_SEED);
        for attempt in 1..=MAX_SINGULAR_RETRIES {
            let q = x + unit_direction(&mut rng, x.len()) * eta;
            let g = self.gradient(&q)?;
            if g.norm() >= eps {
                let offset = &q - x;
                return Ok((q, g, Some(RegularizedQuery { offset, attempts: attempt })));
            }
        }
        Err(Error::SingularPoint {
            point: format!("{:?}", x.as_slice()),
            attempts: MAX_SINGULAR_RETRIES,
        })
    }

    /// Implied outer unit normal `ν = −∇u/|∇u|`, with the singular-point
    /// policy applied when the gradient vanishes numerically.
    pub fn normal_at(&self, x: &Vector) -> Result<NormalEstimate> {
        self.check_query(x)?;
        let (query, gradient, regularized) = self.resolve_regular(x)?;
        let normal = -&gradient / gradient.norm();
        Ok(NormalEstimate { normal, gradient, query, regularized })
    }

    /// Jacobian of the implied normal field, `Dν = (D²u − D²u ν νᵀ)/|∇u|`.
    /// ν is a right null vector of this operator; its other eigenvalues have
    /// the same magnitudes as the principal curvatures.
    pub fn normal_jacobian(&self, x: &Vector) -> Result<Matrix> {
        self.check_query(x)?;
        let (query, gradient, _) = self.resolve_regular(x)?;
        let gn = gradient.norm();
        let nu = -&gradient / gn;
        let h = self.hessian(&query)?;
        let hn = &h * &nu;
        Ok((&h - hn * nu.transpose()) / gn)
    }

    /// Full geometry record at x: u, ∇u, D²u, ν and the d−1 principal
    /// curvatures of the level set, ordered descending by magnitude (ties by
    /// signed value). The sign is fixed so the unit circle with outer normal
    /// reports curvature +1.
    pub fn curvatures_at(&self, x: &Vector) -> Result<GeometryReport> {
        self.check_query(x)?;
        let (query, gradient, regularized) = self.resolve_regular(x)?;
        let gn = gradient.norm();
        let normal = -&gradient / gn;
        let hessian = self.hessian(&query)?;
        let u = self.value(&query);

        let basis = tangent_basis(&normal);
        let projected = basis.transpose() * &hessian * &basis / gn;
        let eig = SymmetricEigen::new(projected);
        let mut curvatures: Vec<f64> = eig.eigenvalues.iter().map(|w| -w).collect();
        curvatures.sort_by(|a, b| {
            b.abs()
                .partial_cmp(&a.abs())
                .unwrap()
                .then(b.partial_cmp(a).unwrap())
        });

        Ok(GeometryReport { query, u, gradient, hessian, normal, curvatures, regularized })
    }
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector `nu`,
/// as the d×(d−1) trailing columns of the Householder reflector that maps
/// e₀ onto ∓ν.
fn tangent_basis(nu: &Vector) -> Matrix {
    let d = nu.len();
    let sign = if nu[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut w = nu.clone();
    w[0] += sign;
    let scale = 2.0 / w.norm_squared();
    let mut basis = Matrix::zeros(d, d.saturating_sub(1));
    for col in 1..d {
        for row in 0..d {
            let id = if row == col { 1.0 } else { 0.0 };
            basis[(row, col - 1)] = id - scale * w[row] * w[col];
        }
    }
    basis
}
