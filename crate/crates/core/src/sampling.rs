//! Shared seeded-sampling helpers.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::Vector;

/// Uniform direction on the unit sphere in R^d via normalized isotropic
/// Gaussian draws. Resamples on (astronomically unlikely) near-zero norms.
pub(crate) fn unit_direction<R: Rng>(rng: &mut R, d: usize) -> Vector {
    loop {
        let v = Vector::from_fn(d, |_, _| rng.sample::<f64, _>(StandardNormal));
        let n = v.norm();
        if n > 1e-12 {
            return v / n;
        }
    }
}
