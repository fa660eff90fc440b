//! Kernel-matrix assembly and the density solve.
//!
//! The density Λ ∈ R^m solves the ridge system
//!
//! ```text
//! (mα·I + M) Λ = m·1,     M[i][k] = K(x^i − x^k),
//! ```
//!
//! which is plain interpolation `MΛ = m·1` at α = 0. `M` is symmetric
//! positive definite for distinct points, but for the Gauss kernel it can be
//! numerically singular at desk scale, so the solver falls back from a
//! Cholesky factorization to a truncated symmetric eigendecomposition when
//! the condition estimate is hopeless.

use nalgebra::SymmetricEigen;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::Matrix;

/// Which solver produced the density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverPath {
    /// Cholesky factorization of the (shifted) kernel matrix.
    SpdFactorization,
    /// Pseudo-inverse via symmetric eigendecomposition with small
    /// eigenvalues truncated.
    TruncatedEigen,
}

impl SolverPath {
    pub fn name(&self) -> &'static str {
        match self {
            SolverPath::SpdFactorization => "spd-factorization",
            SolverPath::TruncatedEigen => "truncated-eigen",
        }
    }
}

/// Density coefficients with solver diagnostics.
#[derive(Debug, Clone)]
pub struct DensitySolution {
    /// λ_j, j = 1..m.
    pub lambda: Vec<f64>,
    pub alpha: f64,
    /// Extreme-eigenvalue ratio of the shifted matrix; infinite when the
    /// smallest eigenvalue is non-positive.
    pub condition_estimate: f64,
    pub solver_path: SolverPath,
    /// ∞-norm of `(mα + M)Λ − m·1`.
    pub residual_inf: f64,
    /// Warning flag: condition estimate above [`COND_WARN_THRESHOLD`].
    pub ill_conditioned: bool,
}

/// Condition-estimate level above which the solve is flagged ill-conditioned
/// and routed to the truncated-eigen path (1e−2 / machine epsilon).
pub const COND_WARN_THRESHOLD: f64 = 1e-2 / f64::EPSILON;

/// Eigenvalues below this fraction of the largest one are truncated in the
/// fallback pseudo-inverse solve.
pub const EIGEN_TRUNC_RATIO: f64 = 1e-14;

/// Residual acceptance bound: `1e−9 · m · max(1, ‖Λ‖∞)`.
pub fn residual_bound(m: usize, lambda_inf: f64) -> f64 {
    1e-9 * m as f64 * lambda_inf.max(1.0)
}

/// Assemble the symmetric kernel matrix `M[i][k] = K(x^i − x^k)`.
///
/// Fails with [`Error::DuplicatePoints`] if two points coincide, since the
/// matrix would be singular in the limit.
pub fn build_kernel_matrix(cloud: &PointCloud, spec: &KernelSpec) -> Result<Matrix> {
    spec.validate()?;
    cloud.ensure_distinct()?;
    let m = cloud.len();
    let diag = spec.value_at_zero();
    let mut mat = Matrix::zeros(m, m);
    for i in 0..m {
        mat[(i, i)] = diag;
        for k in (i + 1)..m {
            let v = cloud.point(i) - cloud.point(k);
            let kv = spec.value(&v);
            mat[(i, k)] = kv;
            mat[(k, i)] = kv;
        }
    }
    Ok(mat)
}

/// Solve `(mα·I + M) Λ = m·1` for the density Λ.
///
/// Attempts a Cholesky factorization first; when that fails or the condition
/// estimate exceeds [`COND_WARN_THRESHOLD`], falls back to a truncated
/// symmetric eigendecomposition. [`Error::SolveFailed`] is returned only if
/// the fallback residual violates [`residual_bound`].
pub fn solve_density(matrix: &Matrix, alpha: f64) -> Result<DensitySolution> {
    let m = matrix.nrows();
    if m == 0 || matrix.ncols() != m {
        return Err(Error::SolveFailed(format!(
            "matrix must be square and nonempty, got {}x{}",
            m,
            matrix.ncols()
        )));
    }
    if !(alpha >= 0.0) {
        return Err(Error::SolveFailed(format!("alpha must be nonnegative, got {alpha}")));
    }
    let asym = (matrix - matrix.transpose()).amax();
    if asym > 1e-12 * matrix.amax().max(1.0) {
        return Err(Error::SolveFailed(format!("matrix is not symmetric (max asymmetry {asym:e})")));
    }

    let mf = m as f64;
    let mut shifted = matrix.clone();
    for i in 0..m {
        shifted[(i, i)] += mf * alpha;
    }
    let rhs = nalgebra::DVector::from_element(m, mf);

    let eig = SymmetricEigen::new(shifted.clone());
    let w_max = eig.eigenvalues.amax();
    let w_min = eig.eigenvalues.min();
    let condition_estimate = if w_min > 0.0 { w_max / w_min } else { f64::INFINITY };
    let ill_conditioned = !(condition_estimate <= COND_WARN_THRESHOLD);

    let residual = |lam: &nalgebra::DVector<f64>| (&shifted * lam - &rhs).amax();

    if !ill_conditioned {
        if let Some(chol) = nalgebra::Cholesky::new(shifted.clone()) {
            let lam = chol.solve(&rhs);
            let res = residual(&lam);
            if res <= residual_bound(m, lam.amax()) {
                return Ok(DensitySolution {
                    lambda: lam.iter().copied().collect(),
                    alpha,
                    condition_estimate,
                    solver_path: SolverPath::SpdFactorization,
                    residual_inf: res,
                    ill_conditioned,
                });
            }
        }
    }

    // Truncated pseudo-inverse over the eigenbasis.
    let cutoff = EIGEN_TRUNC_RATIO * w_max;
    let coeffs = eig.eigenvectors.transpose() * &rhs;
    let scaled = nalgebra::DVector::from_fn(m, |i, _| {
        let w = eig.eigenvalues[i];
        if w.abs() >= cutoff {
            coeffs[i] / w
        } else {
            0.0
        }
    });
    let lam = &eig.eigenvectors * scaled;
    let res = residual(&lam);
    let bound = residual_bound(m, lam.amax());
    if res > bound {
        return Err(Error::SolveFailed(format!(
            "truncated-eigen residual {res:e} exceeds bound {bound:e} (condition estimate {condition_estimate:e})"
        )));
    }
    Ok(DensitySolution {
        lambda: lam.iter().copied().collect(),
        alpha,
        condition_estimate,
        solver_path: SolverPath::TruncatedEigen,
        residual_inf: res,
        ill_conditioned,
    })
}
