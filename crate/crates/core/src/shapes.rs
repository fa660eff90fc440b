//! Deterministic generators for the benchmark shapes and the radial noise model.
//!
//! Every generator is a pure function of its parameters (plus an explicit
//! 64-bit seed where randomness is involved) and documents whether the
//! produced shape is closed; that flag feeds [`h_max`] and [`add_noise`],
//! whose displacement scale is the maximal distance between consecutive
//! points, closing edge included for closed shapes.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::sampling::unit_direction;
use crate::Vector;

/// Radial noise: each point is displaced by `ρ·ω` with `ρ ~ U[0, percent·h_max]`
/// and `ω` uniform on the unit sphere.
#[derive(Debug, Clone, Copy)]
pub struct NoiseSpec {
    /// Fraction of `h_max` bounding the displacement magnitude.
    pub percent: f64,
    pub seed: u64,
}

fn pt2(x: f64, y: f64) -> Vector {
    Vector::from_vec(vec![x, y])
}

/// `n` regularly spaced points on a circle, at angles `2πk/n`. Closed shape.
pub fn gen_circle(n: usize, radius: f64, center: &[f64; 2]) -> Result<PointCloud> {
    if n < 3 {
        return Err(Error::InvalidCount(format!("circle needs n >= 3, got {n}")));
    }
    let pts = (0..n)
        .map(|k| {
            let th = TAU * k as f64 / n as f64;
            pt2(center[0] + radius * th.cos(), center[1] + radius * th.sin())
        })
        .collect();
    PointCloud::new(pts)
}

/// `n` points equally spaced by perimeter around a square boundary, corners
/// included, counterclockwise from the lower-left corner. Closed shape.
pub fn gen_square(n: usize, side: f64, center: &[f64; 2]) -> Result<PointCloud> {
    if n < 4 || n % 4 != 0 {
        return Err(Error::InvalidCount(format!("square needs n divisible by 4, got {n}")));
    }
    let h = side / 2.0;
    let step = 4.0 * side / n as f64;
    let pts = (0..n)
        .map(|k| {
            let t = k as f64 * step;
            let (leg, along) = ((t / side).floor() as usize, t % side);
            match leg {
                0 => pt2(center[0] - h + along, center[1] - h),
                1 => pt2(center[0] + h, center[1] - h + along),
                2 => pt2(center[0] + h - along, center[1] + h),
                _ => pt2(center[0] - h, center[1] + h - along),
            }
        })
        .collect();
    PointCloud::new(pts)
}

/// `n` points on a circular arc of the given aperture centered at angle 0,
/// `θ_k = −a/2 + k·a/(n−1)`, plus a mask marking the middle quarter of the
/// aperture (`|θ_k| ≤ a/8`). Open shape.
pub fn gen_sector(n: usize, aperture: f64, radius: f64) -> Result<(PointCloud, Vec<bool>)> {
    if n < 2 {
        return Err(Error::InvalidCount(format!("sector needs n >= 2, got {n}")));
    }
    let mut pts = Vec::with_capacity(n);
    let mut mask = Vec::with_capacity(n);
    for k in 0..n {
        let th = -aperture / 2.0 + k as f64 * aperture / (n - 1) as f64;
        pts.push(pt2(radius * th.cos(), radius * th.sin()));
        mask.push(th.abs() <= aperture / 8.0);
    }
    Ok((PointCloud::new(pts)?, mask))
}

/// Sample of the graph `y = −1 + x² + |x|^2.5` at `n` equally spaced
/// `x ∈ [−0.25, 0.25]` (includes x = 0 when n is odd). Open shape.
pub fn gen_graph(n: usize) -> Result<PointCloud> {
    if n < 2 {
        return Err(Error::InvalidCount(format!("graph needs n >= 2, got {n}")));
    }
    let pts = (0..n)
        .map(|k| {
            let x = -0.25 + 0.5 * k as f64 / (n - 1) as f64;
            pt2(x, -1.0 + x * x + x.abs().powf(2.5))
        })
        .collect();
    PointCloud::new(pts)
}

/// `m` random points on the unit sphere: `x₃ ~ U[−1,1]`, longitude uniform.
pub fn gen_sphere_sample(m: usize, seed: u64) -> Result<PointCloud> {
    if m == 0 {
        return Err(Error::InvalidCount("sphere sample needs m >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = (0..m)
        .map(|_| {
            let x3: f64 = rng.random_range(-1.0..=1.0);
            let th: f64 = rng.random_range(0.0..TAU);
            let rho = (1.0 - x3 * x3).sqrt();
            Vector::from_vec(vec![rho * th.cos(), rho * th.sin(), x3])
        })
        .collect();
    PointCloud::new(pts)
}

enum Piece {
    Seg { a: [f64; 2], b: [f64; 2] },
    Arc { c: [f64; 2], r: f64, th0: f64, th1: f64 },
}

impl Piece {
    fn len(&self) -> f64 {
        match self {
            Piece::Seg { a, b } => ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt(),
            Piece::Arc { r, th0, th1, .. } => (th1 - th0).abs() * r,
        }
    }

    fn at(&self, s: f64) -> [f64; 2] {
        let t = s / self.len();
        match self {
            Piece::Seg { a, b } => [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])],
            Piece::Arc { c, r, th0, th1 } => {
                let th = th0 + t * (th1 - th0);
                [c[0] + r * th.cos(), c[1] + r * th.sin()]
            }
        }
    }
}

/// The folded closed curve: a paperclip fold of segments and semicircles.
/// Traversal order: (0,0)→(2,0), right semicircle up to (2,0.5), back to
/// (0,0.5), left semicircle up to (0,1), across to (2,1), right semicircle
/// of radius 0.75 down to (2,−0.5), back to (0,−0.5), left semicircle
/// closing at (0,0). Total length 8 + 1.5π.
fn folded_pieces() -> Vec<Piece> {
    vec![
        Piece::Seg { a: [0.0, 0.0], b: [2.0, 0.0] },
        Piece::Arc { c: [2.0, 0.25], r: 0.25, th0: -PI / 2.0, th1: PI / 2.0 },
        Piece::Seg { a: [2.0, 0.5], b: [0.0, 0.5] },
        Piece::Arc { c: [0.0, 0.75], r: 0.25, th0: -PI / 2.0, th1: -3.0 * PI / 2.0 },
        Piece::Seg { a: [0.0, 1.0], b: [2.0, 1.0] },
        Piece::Arc { c: [2.0, 0.25], r: 0.75, th0: PI / 2.0, th1: -PI / 2.0 },
        Piece::Seg { a: [2.0, -0.5], b: [0.0, -0.5] },
        Piece::Arc { c: [0.0, -0.25], r: 0.25, th0: -PI / 2.0, th1: -3.0 * PI / 2.0 },
    ]
}

/// Total arc length of the folded curve, `8 + 1.5π`.
pub fn folded_curve_length() -> f64 {
    folded_pieces().iter().map(|p| p.len()).sum()
}

/// `n` points equally spaced by arc length along the folded curve. Closed shape.
pub fn gen_folded_curve(n: usize) -> Result<PointCloud> {
    if n < 8 {
        return Err(Error::InvalidCount(format!("folded curve needs n >= 8, got {n}")));
    }
    let pieces = folded_pieces();
    let total: f64 = pieces.iter().map(|p| p.len()).sum();
    let pts = (0..n)
        .map(|k| {
            let mut s = k as f64 * total / n as f64;
            for piece in &pieces {
                let l = piece.len();
                if s <= l {
                    let p = piece.at(s);
                    return pt2(p[0], p[1]);
                }
                s -= l;
            }
            let p = pieces.last().unwrap();
            let l = p.len();
            let xy = p.at(l);
            pt2(xy[0], xy[1])
        })
        .collect();
    PointCloud::new(pts)
}

/// The folded curve embedded in the xz-plane of R³ and extruded across
/// `n_y` values of `y ∈ [−0.5, 0.5]` (just `y = 0` when `n_y = 1`).
/// The result is a surface sample of `n_curve · n_y` points.
pub fn gen_extruded_surface(n_curve: usize, n_y: usize) -> Result<PointCloud> {
    if n_y == 0 {
        return Err(Error::InvalidCount("surface needs n_y >= 1".into()));
    }
    let curve = gen_folded_curve(n_curve)?;
    let ys: Vec<f64> = if n_y == 1 {
        vec![0.0]
    } else {
        (0..n_y).map(|j| -0.5 + j as f64 / (n_y - 1) as f64).collect()
    };
    let mut pts = Vec::with_capacity(n_curve * n_y);
    for &y in &ys {
        for p in curve.points() {
            pts.push(Vector::from_vec(vec![p[0], y, p[1]]));
        }
    }
    PointCloud::new(pts)
}

/// Embed a 2-D cloud into the xz-plane of R³ at the given y.
pub fn embed_xz(cloud: &PointCloud, y: f64) -> Result<PointCloud> {
    if cloud.dim() != 2 {
        return Err(Error::DimensionUnsupported { required: 2, got: cloud.dim() });
    }
    PointCloud::new(
        cloud.points().iter().map(|p| Vector::from_vec(vec![p[0], y, p[1]])).collect(),
    )
}

/// Maximal distance between consecutive points of an ordered cloud; the
/// closing edge counts for closed shapes.
pub fn h_max(cloud: &PointCloud, closed: bool) -> f64 {
    let pts = cloud.points();
    let mut h = 0.0f64;
    for w in pts.windows(2) {
        h = h.max((&w[1] - &w[0]).norm());
    }
    if closed && pts.len() > 1 {
        h = h.max((&pts[pts.len() - 1] - &pts[0]).norm());
    }
    h
}

/// Displace every point by `ρ·ω` with `ρ ~ U[0, percent·h_max]` and `ω`
/// uniform in direction; `closed` selects whether the closing edge enters
/// `h_max`. Deterministic given the spec's seed.
pub fn add_noise(cloud: &PointCloud, closed: bool, spec: &NoiseSpec) -> PointCloud {
    let bound = spec.percent * h_max(cloud, closed);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let d = cloud.dim();
    let pts = cloud
        .points()
        .iter()
        .map(|p| {
            let dir = unit_direction(&mut rng, d);
            let rho: f64 = bound * rng.random::<f64>();
            p + dir * rho
        })
        .collect();
    PointCloud::new(pts).expect("noisy cloud inherits validity")
}
