use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cloudsig_cli::{bench, csvio, model_file, svg, CliError};
use cloudsig_core::{
    estimate_local_dimension, extract_isolines, shapes, GridSpec, IsoLevel, KernelFamily,
    KernelSpec, ProbeConfig, SignatureModel, Vector,
};

/// Kernel-based signature functions for point clouds: generate shapes, fit
/// models, query implied geometry, extract iso-lines, run benchmark tables.
#[derive(Parser)]
#[command(name = "cloudsig", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a sample shape as a point-cloud CSV.
    Gen(GenArgs),
    /// Fit a signature model to a cloud and write a model file.
    Fit(FitArgs),
    /// Evaluate geometry (u, normals, curvatures, local dimension) at query points.
    Analyze(AnalyzeArgs),
    /// Extract 2-D level lines on a grid, as CSV or SVG.
    Isoline(IsolineArgs),
    /// Run a benchmark-table suite (CSV + markdown).
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// circle | square | sector | graph | sphere | folded-curve | folded-surface
    shape: String,
    /// Point count (shape-specific default).
    #[arg(long)]
    n: Option<usize>,
    /// Sample count for the sphere (alias of --n).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 2.0)]
    side: f64,
    /// Sector aperture in radians.
    #[arg(long, default_value_t = PI / 16.0)]
    aperture: f64,
    /// Extrusion row count of the folded surface.
    #[arg(long, default_value_t = 7)]
    n_y: usize,
    /// Center "x,y" for circle and square.
    #[arg(long, default_value = "0,0")]
    center: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Radial noise bound as a fraction of the max consecutive-point distance.
    #[arg(long, default_value_t = 0.0)]
    noise_percent: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    cloud: PathBuf,
    /// gauss | laplace | laplace-r
    #[arg(long)]
    kernel: String,
    /// Smoothing offset of the regularized Laplace kernel.
    #[arg(long, default_value_t = 1e-6)]
    r: f64,
    /// Kernel bandwidth, applied as K(delta * v).
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Ridge weight of the density system (m*alpha + M) L = m*1.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    model: PathBuf,
    /// CSV of query points (conflicts with --at-data).
    #[arg(long)]
    points: Option<PathBuf>,
    /// Query at the model's own data points.
    #[arg(long, default_value_t = false)]
    at_data: bool,
    /// Include gradient and implied-normal columns.
    #[arg(long, default_value_t = false)]
    normals: bool,
    /// Include principal-curvature columns.
    #[arg(long, default_value_t = false)]
    curvature: bool,
    /// Include local-dimension columns (singular values + estimate).
    #[arg(long, default_value_t = false)]
    dimension: bool,
    #[arg(long, default_value_t = 15)]
    probes: usize,
    #[arg(long, default_value_t = 0.01)]
    radius: f64,
    #[arg(long, default_value_t = 0.1)]
    threshold: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct IsolineArgs {
    #[arg(long)]
    model: PathBuf,
    /// "auto" or an explicit level.
    #[arg(long, default_value = "auto")]
    iso: String,
    /// Grid node counts: NX NY.
    #[arg(long, num_args = 2, default_values_t = [200usize, 200usize])]
    grid: Vec<usize>,
    /// Bounding-box margin as a fraction of the cloud diameter.
    #[arg(long, default_value_t = 0.2)]
    margin: f64,
    /// Draw implied-normal arrows at the data points (SVG only).
    #[arg(long, default_value_t = false)]
    normals: bool,
    /// Output file; a .svg extension selects SVG, anything else CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// sector | circle | sphere | graph | dimension
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output base path; writes <base>.csv and <base>.md.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Isoline(args) => cmd_isoline(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code as u8)
        }
    }
}

fn parse_center(text: &str) -> Result<[f64; 2], CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::usage(format!("--center expects \"x,y\", got '{text}'")));
    }
    let x = parts[0].trim().parse::<f64>().map_err(|e| CliError::usage(format!("--center: {e}")))?;
    let y = parts[1].trim().parse::<f64>().map_err(|e| CliError::usage(format!("--center: {e}")))?;
    Ok([x, y])
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let center = parse_center(&args.center)?;
    let count = args.n.or(args.m);
    // (cloud, closed-for-noise)
    let (cloud, closed) = match args.shape.as_str() {
        "circle" => (shapes::gen_circle(count.unwrap_or(30), args.radius, &center)?, true),
        "square" => (shapes::gen_square(count.unwrap_or(48), args.side, &center)?, true),
        "sector" => {
            let (cloud, _mask) = shapes::gen_sector(count.unwrap_or(128), args.aperture, args.radius)?;
            (cloud, false)
        }
        "graph" => (shapes::gen_graph(count.unwrap_or(51))?, false),
        "sphere" => (shapes::gen_sphere_sample(count.unwrap_or(80), args.seed)?, false),
        "folded-curve" => (shapes::gen_folded_curve(count.unwrap_or(54))?, true),
        "folded-surface" => {
            (shapes::gen_extruded_surface(count.unwrap_or(36), args.n_y)?, false)
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown shape '{other}' (expected circle|square|sector|graph|sphere|folded-curve|folded-surface)"
            )))
        }
    };
    let cloud = if args.noise_percent > 0.0 {
        // Separate stream from any generator randomness.
        let noise_seed = args.seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
        shapes::add_noise(
            &cloud,
            closed,
            &shapes::NoiseSpec { percent: args.noise_percent, seed: noise_seed },
        )
    } else {
        cloud
    };
    csvio::write_cloud(&args.out, &cloud)?;
    println!("shape={}", args.shape);
    println!("m={}", cloud.len());
    println!("d={}", cloud.dim());
    Ok(())
}

fn parse_kernel(name: &str, r: f64, delta: f64) -> Result<KernelSpec, CliError> {
    let family = match name {
        "gauss" => KernelFamily::Gauss,
        "laplace" => KernelFamily::Laplace,
        "laplace-r" => KernelFamily::RegularizedLaplace,
        other => {
            return Err(CliError::usage(format!(
                "unknown kernel '{other}' (expected gauss|laplace|laplace-r)"
            )))
        }
    };
    let spec = KernelSpec { family, r: if family == KernelFamily::RegularizedLaplace { r } else { 0.0 }, delta };
    spec.validate()?;
    Ok(spec)
}

fn cmd_fit(args: FitArgs) -> Result<(), CliError> {
    let cloud = csvio::read_cloud(&args.cloud)?;
    let spec = parse_kernel(&args.kernel, args.r, args.delta)?;
    if args.alpha < 0.0 {
        return Err(CliError::usage(format!("--alpha must be nonnegative, got {}", args.alpha)));
    }
    let model = SignatureModel::fit(cloud, spec, args.alpha)?;
    let density = model.density();
    if density.ill_conditioned {
        eprintln!(
            "warning: ill-conditioned system (condition estimate {:e}); used {}",
            density.condition_estimate,
            density.solver_path.name()
        );
    }
    model_file::save(&args.out, &model)?;

    println!("m={}", model.cloud().len());
    println!("d={}", model.cloud().dim());
    println!("kernel={}", model.kernel().family.name());
    println!("delta={}", model.kernel().delta);
    println!("alpha={:e}", density.alpha);
    println!("condition_estimate={:e}", density.condition_estimate);
    println!("solver_path={}", density.solver_path.name());
    println!("residual_inf={:e}", density.residual_inf);
    if density.alpha > 0.0 {
        let worst = model
            .cloud()
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| (model.value(p) - (1.0 - density.alpha * density.lambda[i])).abs())
            .fold(0.0f64, f64::max);
        println!("identity_max_err={worst:e}");
    } else {
        let worst = model
            .cloud()
            .points()
            .iter()
            .map(|p| (model.value(p) - 1.0).abs())
            .fold(0.0f64, f64::max);
        println!("interpolation_max_err={worst:e}");
    }
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let model = model_file::load(&args.model)?;
    let d = model.cloud().dim();
    let queries: Vec<Vector> = match (&args.points, args.at_data) {
        (Some(path), false) => {
            let cloud = csvio::read_cloud(path)?;
            if cloud.dim() != d {
                return Err(CliError::usage(format!(
                    "query dimension {} does not match model dimension {d}",
                    cloud.dim()
                )));
            }
            cloud.points().to_vec()
        }
        (None, true) => model.cloud().points().to_vec(),
        _ => return Err(CliError::usage("provide exactly one of --points FILE or --at-data")),
    };

    let mut header: Vec<String> = (0..d).map(|j| format!("x{j}")).collect();
    header.push("u".into());
    if args.normals {
        header.extend((0..d).map(|j| format!("g{j}")));
        header.extend((0..d).map(|j| format!("n{j}")));
    }
    if args.curvature {
        header.extend((1..d).map(|j| format!("k{j}")));
    }
    if args.normals || args.curvature {
        header.push("regularized".into());
    }
    if args.dimension {
        header.extend((1..=d).map(|j| format!("sv{j}")));
        header.push("est_dim".into());
    }

    let probe_config =
        ProbeConfig { probes: args.probes, radius: args.radius, threshold: args.threshold };
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (qi, q) in queries.iter().enumerate() {
        let mut row: Vec<String> = q.iter().map(|&x| csvio::fmt_f64(x)).collect();
        row.push(csvio::fmt_f64(model.value(q)));
        if args.normals || args.curvature {
            let report = model.curvatures_at(q)?;
            if args.normals {
                row.extend(report.gradient.iter().map(|&g| csvio::fmt_f64(g)));
                row.extend(report.normal.iter().map(|&n| csvio::fmt_f64(n)));
            }
            if args.curvature {
                row.extend(report.curvatures.iter().map(|&k| csvio::fmt_f64(k)));
            }
            row.push(if report.regularized.is_some() { "1".into() } else { "0".into() });
        }
        if args.dimension {
            let est = estimate_local_dimension(
                &model,
                q,
                &probe_config,
                args.seed.wrapping_add(qi as u64),
            )?;
            row.extend(est.singular_values.iter().map(|&s| csvio::fmt_f64(s)));
            row.push(est.estimated_dimension.to_string());
        }
        rows.push(row);
    }

    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    csvio::write_table(&args.out, &header_refs, &rows)?;
    println!("queries={}", queries.len());
    Ok(())
}

fn cmd_isoline(args: IsolineArgs) -> Result<(), CliError> {
    let model = model_file::load(&args.model)?;
    let level = if args.iso == "auto" {
        IsoLevel::Auto
    } else {
        IsoLevel::Value(
            args.iso
                .parse::<f64>()
                .map_err(|e| CliError::usage(format!("--iso expects 'auto' or a number: {e}")))?,
        )
    };
    let grid = GridSpec { nx: args.grid[0], ny: args.grid[1], margin: args.margin };
    let set = extract_isolines(&model, level, &grid)?;

    let is_svg = args.out.extension().map(|e| e == "svg").unwrap_or(false);
    if is_svg {
        let normals_model = args.normals.then_some(&model);
        let rendered = svg::render(&set, model.cloud(), normals_model);
        std::fs::write(&args.out, rendered)?;
    } else {
        let mut rows: Vec<Vec<String>> = Vec::new();
        for (id, line) in set.polylines.iter().enumerate() {
            for v in &line.vertices {
                rows.push(vec![id.to_string(), csvio::fmt_f64(v[0]), csvio::fmt_f64(v[1])]);
            }
        }
        csvio::write_table(&args.out, &["polyline", "x", "y"], &rows)?;
    }
    println!("iso_value={:e}", set.iso_value);
    println!("polylines={}", set.polylines.len());
    println!("max_edge_residual={:e}", set.max_edge_residual);
    Ok(())
}

fn strip_table_ext(path: &Path) -> PathBuf {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") | Some("md") => path.with_extension(""),
        _ => path.to_path_buf(),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let output = bench::run_suite(&args.suite, args.seed)?;
    let base = strip_table_ext(&args.out);
    let csv_path = base.with_extension("csv");
    let md_path = base.with_extension("md");
    csvio::write_table(&csv_path, &output.header, &output.rows)?;
    std::fs::write(&md_path, &output.markdown)?;
    print!("{}", output.markdown);
    println!();
    println!("csv={}", csv_path.display());
    println!("markdown={}", md_path.display());
    Ok(())
}
