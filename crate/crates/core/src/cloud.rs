//! Point cloud container.

use crate::error::{Error, Result};
use crate::Vector;

/// An ordered list of `m` points in R^d.
///
/// The order is meaningful only to the shape generators and the noise model
/// (consecutive-point distances); every algorithm downstream treats the cloud
/// as a set. Points are expected to be pairwise distinct; the kernel-matrix
/// assembly enforces that, since coincident points make the system singular.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vector>,
    dim: usize,
}

impl PointCloud {
    /// Build a cloud from points, all of the same dimension, all finite.
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidCloud("cloud must contain at least one point".into()));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::InvalidCloud("points must have dimension >= 1".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidCloud(format!("point {i} has a non-finite coordinate")));
            }
        }
        Ok(PointCloud { points, dim })
    }

    /// Build a cloud from a flat row-major coordinate list.
    pub fn from_flat(dim: usize, flat: &[f64]) -> Result<Self> {
        if dim == 0 || flat.len() % dim != 0 {
            return Err(Error::InvalidCloud(format!(
                "flat list of length {} is not a multiple of d={}",
                flat.len(),
                dim
            )));
        }
        let points = flat.chunks(dim).map(|c| Vector::from_column_slice(c)).collect();
        Self::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Vector {
        &self.points[i]
    }

    /// Row-major flat coordinate list.
    pub fn to_flat(&self) -> Vec<f64> {
        self.points.iter().flat_map(|p| p.iter().copied()).collect()
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.points.len() {
            for k in (i + 1)..self.points.len() {
                d = d.max((&self.points[i] - &self.points[k]).norm());
            }
        }
        d
    }

    /// Axis-aligned bounding box as (min, max) corner vectors.
    pub fn bounding_box(&self) -> (Vector, Vector) {
        let mut lo = self.points[0].clone();
        let mut hi = self.points[0].clone();
        for p in &self.points[1..] {
            for j in 0..self.dim {
                lo[j] = lo[j].min(p[j]);
                hi[j] = hi[j].max(p[j]);
            }
        }
        (lo, hi)
    }

    /// Error if any two points coincide exactly.
    pub fn ensure_distinct(&self) -> Result<()> {
        for i in 0..self.points.len() {
            for k in (i + 1)..self.points.len() {
                if (&self.points[i] - &self.points[k]).norm() == 0.0 {
                    return Err(Error::DuplicatePoints { i, k });
                }
            }
        }
        Ok(())
    }

    /// Reorder points by `perm`, where the new cloud's point `i` is the old
    /// point `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.points.len() {
            return Err(Error::DimensionMismatch { expected: self.points.len(), got: perm.len() });
        }
        let points = perm.iter().map(|&i| self.points[i].clone()).collect();
        Self::new(points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn pt(coords: &[f64]) -> Vector {
        DVector::from_column_slice(coords)
    }

    #[test]
    fn construction_and_accessors() {
        let c = PointCloud::new(vec![pt(&[0.0, 0.0]), pt(&[3.0, 4.0])]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.diameter(), 5.0);
        let (lo, hi) = c.bounding_box();
        assert_eq!(lo, pt(&[0.0, 0.0]));
        assert_eq!(hi, pt(&[3.0, 4.0]));
    }

    #[test]
    fn rejects_empty_and_mixed_dims() {
        assert!(PointCloud::new(vec![]).is_err());
        assert!(PointCloud::new(vec![pt(&[0.0]), pt(&[0.0, 1.0])]).is_err());
        assert!(PointCloud::new(vec![pt(&[f64::NAN])]).is_err());
    }

    #[test]
    fn detects_duplicates() {
        let c = PointCloud::new(vec![pt(&[1.0, 2.0]), pt(&[1.0, 2.0])]).unwrap();
        assert!(matches!(c.ensure_distinct(), Err(crate::Error::DuplicatePoints { i: 0, k: 1 })));
        let ok = PointCloud::new(vec![pt(&[1.0, 2.0]), pt(&[1.0, 2.0 + 1e-15])]).unwrap();
        assert!(ok.ensure_distinct().is_ok());
    }

    #[test]
    fn flat_round_trip() {
        let c = PointCloud::from_flat(2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.to_flat(), vec![1.0, 2.0, 3.0, 4.0]);
        assert!(PointCloud::from_flat(2, &[1.0, 2.0, 3.0]).is_err());
    }
}
