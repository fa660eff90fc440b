//! Local intrinsic dimension from the rank of nearby implied normals.
//!
//! Near a point of an embedded k-manifold, the signature function's level
//! sets wrap the manifold tightly, so implied normals computed at small
//! random perturbations of the point turn quickly in the d−k directions
//! orthogonal to it and stay almost constant along it. Collecting the
//! normals as columns and counting the singular values above a relative
//! threshold therefore estimates the normal-space dimension r, and `d − r`
//! estimates the manifold dimension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sampling::unit_direction;
use crate::signature::SignatureModel;
use crate::{Matrix, Vector};

/// Probe-sampling parameters of the estimator.
#[derive(Debug, Clone, Copy)]
pub struct ProbeConfig {
    /// Number of perturbed points (must be at least the ambient dimension).
    pub probes: usize,
    /// Perturbation distances are drawn uniformly from `[0, radius]`.
    pub radius: f64,
    /// Relative singular-value cutoff: σ_j counts toward the rank when
    /// `σ_j ≥ threshold·σ_1`.
    pub threshold: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { probes: 15, radius: 0.01, threshold: 0.1 }
    }
}

/// Outcome of a local dimension estimate.
#[derive(Debug, Clone)]
pub struct DimensionEstimate {
    pub base_point: Vector,
    /// All d singular values of the d×probes matrix of unit normals,
    /// descending.
    pub singular_values: Vec<f64>,
    /// Count of singular values at or above `threshold·σ_1`.
    pub numerical_rank: usize,
    /// `d − numerical_rank`.
    pub estimated_dimension: usize,
    pub probes: usize,
    pub radius: f64,
    pub threshold: f64,
}

/// Estimate the local intrinsic dimension at `p`.
///
/// Draws `probes` points `p + ρ·ω` (ρ ~ U[0, radius], ω uniform on the unit
/// sphere), computes the implied normal at each, and returns the
/// singular-value rank analysis of the normal matrix. Deterministic given
/// the seed (ChaCha8 stream).
pub fn estimate_local_dimension(
    model: &SignatureModel,
    p: &Vector,
    config: &ProbeConfig,
    seed: u64,
) -> Result<DimensionEstimate> {
    let d = model.dim();
    if config.probes < d {
        return Err(Error::InsufficientProbes { needed: d, got: config.probes });
    }
    if !(config.radius > 0.0) {
        return Err(Error::InvalidCount(format!("radius must be positive, got {}", config.radius)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut normals = Matrix::zeros(d, config.probes);
    for j in 0..config.probes {
        let direction = unit_direction(&mut rng, d);
        let rho: f64 = config.radius * rng.random::<f64>();
        let probe = p + direction * rho;
        let estimate = model.normal_at(&probe)?;
        normals.set_column(j, &estimate.normal);
    }

    let mut singular_values: Vec<f64> = normals.singular_values().iter().copied().collect();
    singular_values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let cutoff = config.threshold * singular_values[0];
    let numerical_rank = singular_values.iter().filter(|&&s| s >= cutoff).count();

    Ok(DimensionEstimate {
        base_point: p.clone(),
        singular_values,
        numerical_rank,
        estimated_dimension: d - numerical_rank,
        probes: config.probes,
        radius: config.radius,
        threshold: config.threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::KernelSpec;
    use crate::PointCloud;

    /// 50 points on a straight segment in R^2; a smoothing ridge keeps the
    /// field flat along the line so probe normals all point (anti)parallel
    /// to the perpendicular.
    fn line_model() -> SignatureModel {
        let pts = (0..50)
            .map(|k| {
                let x = -10.0 + 20.0 * k as f64 / 49.0;
                Vector::from_vec(vec![x, 0.0])
            })
            .collect();
        let cloud = PointCloud::new(pts).unwrap();
        SignatureModel::fit(cloud, KernelSpec::gauss(), 0.1).unwrap()
    }

    #[test]
    fn straight_line_has_dimension_one() {
        let model = line_model();
        let mid = Vector::from_vec(vec![0.2, 0.0]);
        let est =
            estimate_local_dimension(&model, &mid, &ProbeConfig::default(), 99).unwrap();
        assert_eq!(est.numerical_rank, 1);
        assert_eq!(est.estimated_dimension, 1);
        assert!(est.singular_values[0] <= (est.probes as f64).sqrt() + 1e-12);
        assert!(est.singular_values[1] / est.singular_values[0] < 0.1);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let model = line_model();
        let p = Vector::from_vec(vec![-0.4, 0.0]);
        let a = estimate_local_dimension(&model, &p, &ProbeConfig::default(), 7).unwrap();
        let b = estimate_local_dimension(&model, &p, &ProbeConfig::default(), 7).unwrap();
        assert_eq!(a.singular_values, b.singular_values);
        assert_eq!(a.estimated_dimension, b.estimated_dimension);
        let c = estimate_local_dimension(&model, &p, &ProbeConfig::default(), 8).unwrap();
        assert_ne!(a.singular_values, c.singular_values);
    }

    #[test]
    fn probe_count_must_cover_dimension() {
        let model = line_model();
        let p = Vector::from_vec(vec![0.0, 0.0]);
        let config = ProbeConfig { probes: 1, ..ProbeConfig::default() };
        assert!(matches!(
            estimate_local_dimension(&model, &p, &config, 0),
            Err(Error::InsufficientProbes { .. })
        ));
    }

    #[test]
    fn singular_values_are_sorted_and_bounded() {
        let model = line_model();
        let p = Vector::from_vec(vec![1.0, 0.0]);
        let est = estimate_local_dimension(&model, &p, &ProbeConfig::default(), 5).unwrap();
        assert_eq!(est.singular_values.len(), 2);
        assert!(est.singular_values[0] >= est.singular_values[1]);
        assert!(est.singular_values[1] >= 0.0);
        assert!(est.singular_values[0] <= 15f64.sqrt() + 1e-12);
    }
}
