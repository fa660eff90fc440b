//! JSON model file: cloud, kernel, ridge weight, coefficients, diagnostics.
//!
//! Floats are serialized in shortest-round-trip form, so a save/load cycle
//! reproduces the signature function bit for bit. Non-finite condition
//! estimates (a singular unshifted system) are stored as `null`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use cloudsig_core::{
    DensitySolution, KernelFamily, KernelSpec, PointCloud, SignatureModel, SolverPath,
};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    pub cloud: CloudSection,
    pub kernel: KernelSection,
    pub alpha: f64,
    pub lambda: Vec<f64>,
    pub diagnostics: DiagnosticsSection,
}

#[derive(Serialize, Deserialize)]
pub struct CloudSection {
    pub d: usize,
    pub m: usize,
    /// Row-major coordinates, m*d values.
    pub points: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
pub struct KernelSection {
    pub family: String,
    pub r: f64,
    pub delta: f64,
}

#[derive(Serialize, Deserialize)]
pub struct DiagnosticsSection {
    /// `None` encodes a non-finite estimate (singular at working precision).
    pub condition_estimate: Option<f64>,
    pub residual_inf: f64,
    pub solver_path: String,
    pub ill_conditioned: bool,
}

pub fn family_name(family: KernelFamily) -> &'static str {
    family.name()
}

fn parse_family(name: &str) -> Result<KernelFamily, CliError> {
    match name {
        "gauss" => Ok(KernelFamily::Gauss),
        "laplace" => Ok(KernelFamily::Laplace),
        "laplace-r" => Ok(KernelFamily::RegularizedLaplace),
        other => Err(CliError::usage(format!("unknown kernel family '{other}'"))),
    }
}

fn parse_solver_path(name: &str) -> Result<SolverPath, CliError> {
    match name {
        "spd-factorization" => Ok(SolverPath::SpdFactorization),
        "truncated-eigen" => Ok(SolverPath::TruncatedEigen),
        other => Err(CliError::usage(format!("unknown solver path '{other}'"))),
    }
}

pub fn from_model(model: &SignatureModel) -> ModelFile {
    let density = model.density();
    ModelFile {
        format_version: FORMAT_VERSION,
        cloud: CloudSection {
            d: model.cloud().dim(),
            m: model.cloud().len(),
            points: model.cloud().to_flat(),
        },
        kernel: KernelSection {
            family: model.kernel().family.name().to_string(),
            r: model.kernel().r,
            delta: model.kernel().delta,
        },
        alpha: density.alpha,
        lambda: density.lambda.clone(),
        diagnostics: DiagnosticsSection {
            condition_estimate: density.condition_estimate.is_finite().then_some(density.condition_estimate),
            residual_inf: density.residual_inf,
            solver_path: density.solver_path.name().to_string(),
            ill_conditioned: density.ill_conditioned,
        },
    }
}

pub fn to_model(file: &ModelFile) -> Result<SignatureModel, CliError> {
    if file.format_version != FORMAT_VERSION {
        return Err(CliError::usage(format!(
            "unsupported model format version {}",
            file.format_version
        )));
    }
    if file.cloud.points.len() != file.cloud.d * file.cloud.m {
        return Err(CliError::usage("model cloud length disagrees with d*m".to_string()));
    }
    let cloud = PointCloud::from_flat(file.cloud.d, &file.cloud.points)?;
    let spec = KernelSpec {
        family: parse_family(&file.kernel.family)?,
        r: file.kernel.r,
        delta: file.kernel.delta,
    };
    let density = DensitySolution {
        lambda: file.lambda.clone(),
        alpha: file.alpha,
        condition_estimate: file.diagnostics.condition_estimate.unwrap_or(f64::INFINITY),
        solver_path: parse_solver_path(&file.diagnostics.solver_path)?,
        residual_inf: file.diagnostics.residual_inf,
        ill_conditioned: file.diagnostics.ill_conditioned,
    };
    Ok(SignatureModel::new(cloud, spec, density)?)
}

pub fn save(path: &Path, model: &SignatureModel) -> Result<(), CliError> {
    let file = from_model(model);
    let json = serde_json::to_string_pretty(&file)
        .map_err(|e| CliError::usage(format!("serialize model: {e}")))?;
    fs::write(path, json)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<SignatureModel, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let file: ModelFile = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: bad model file: {e}", path.display())))?;
    to_model(&file)
}
