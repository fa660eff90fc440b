//! Shared fixtures for the criterion benchmarks in `benches/`.

use cloudsig_core::{shapes, KernelSpec, PointCloud, SignatureModel};

/// Sector cloud at the largest benchmarked size.
pub fn sector_cloud(n: usize) -> PointCloud {
    shapes::gen_sector(n, std::f64::consts::PI / 16.0, 1.0).unwrap().0
}

/// Fitted 30-point circle model used by the evaluation benchmarks.
pub fn circle_model() -> SignatureModel {
    let cloud = shapes::gen_circle(30, 1.0, &[0.0, 0.0]).unwrap();
    SignatureModel::fit(cloud, KernelSpec::gauss(), 0.0).unwrap()
}

/// Fitted folded-curve model in R^3 used by the dimension benchmark.
pub fn folded_curve_model() -> SignatureModel {
    let curve = shapes::gen_folded_curve(150).unwrap();
    let embedded = shapes::embed_xz(&curve, 0.0).unwrap();
    SignatureModel::fit(embedded, KernelSpec::gauss().with_delta(4.0), 1e-10).unwrap()
}
