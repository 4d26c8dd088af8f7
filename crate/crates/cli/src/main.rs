use std::f64::consts::{FRAC_PI_4, PI};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use isoperim::arcs::{self, ArcBuilder};
use isoperim::geometry::{Preset, PresetParams};
use isoperim::perturbation::{self, PerturbationFamily, PerturbationField};
use isoperim::profile::{self, ArcCloud};
use isoperim::{disk, DomainSpec, Error, SupportCurve};
use serde::{Deserialize, Serialize};

const EXIT_NOT_PASSED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;
const MIN_GRID: usize = 16;

#[derive(Parser)]
#[command(name = "isoperim", version, about = "Isoperimetric profiles of planar convex domains")]
struct Cli {
    /// Worker threads for grid sweeps.
    #[arg(long, global = true, env = "ISOPERIM_THREADS")]
    threads: Option<usize>,
    /// JSON config file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Area, perimeter, curvature extremes and shape class.
    DomainInfo(DomainArgs),
    /// CSV of the symmetric arc family (theta, area, length, curvature).
    Profile {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Compare the profile with the unit disk's; exit 0 iff it lies strictly below.
    CheckConjecture {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Perfect arcs through a boundary point, or the least-length arc for an area.
    ArcsFind {
        #[command(flatten)]
        domain: DomainArgs,
        /// Normal angle of the first endpoint.
        #[arg(long, conflicts_with = "area")]
        s1: Option<f64>,
        /// Target enclosed area.
        #[arg(long)]
        area: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Disk perturbations: mode roots and the profile-decrease experiment.
    Perturb {
        #[command(subcommand)]
        action: PerturbAction,
    },
    /// Marching-squares samples of the zero set of cos y sin xy − x sin y cos xy.
    ImplicitCurve {
        #[arg(long, default_value_t = 0.0)]
        xmin: f64,
        #[arg(long, default_value_t = 8.0)]
        xmax: f64,
        #[arg(long, default_value_t = 0.01)]
        ymin: f64,
        #[arg(long, default_value_t = 1.57)]
        ymax: f64,
        #[arg(long, default_value_t = 400)]
        resolution: usize,
    },
}

#[derive(Subcommand)]
enum PerturbAction {
    /// Half-angles where mode n has vanishing first variation.
    Roots {
        #[arg(long)]
        n: i64,
    },
    /// Fit I(s) ≈ I(0) + αs + βs² for the perturbed disks.
    Experiment {
        /// Fourier mode of the field `cos(mode·u)`.
        #[arg(long, required_unless_present = "translation")]
        mode: Option<usize>,
        /// Use `sin(mode·u)` instead of `cos(mode·u)`.
        #[arg(long)]
        sin: bool,
        /// Rigid translation of the disk (null control).
        #[arg(long, conflicts_with = "mode")]
        translation: bool,
        /// Area of the profile; defaults to the first mode root, or π/2 − 1.
        #[arg(long)]
        area: Option<f64>,
        #[arg(long, default_value_t = 5e-3)]
        s_max: f64,
        #[arg(long, default_value_t = 5)]
        s_count: usize,
        #[arg(long)]
        grid: Option<usize>,
    },
}

#[derive(Args, Clone, Default)]
struct DomainArgs {
    #[arg(long, value_parser = ["disk", "ellipse"])]
    preset: Option<String>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    /// Area-π ellipse with semi-axes 1 + eps and 1/(1 + eps).
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    radius: Option<f64>,
    /// Domain as inline JSON or a path to a JSON file.
    #[arg(long)]
    domain: Option<String>,
    /// Rescale the domain to area π.
    #[arg(long)]
    normalize: bool,
}

/// Settings read from `--config`.
#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    domain: Option<DomainSpec>,
    samples: Option<usize>,
    grid: Option<usize>,
    threads: Option<usize>,
    output: Option<PathBuf>,
}

enum Failure {
    Config(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) | Failure::Lib(Error::InvalidSpec(_)) => EXIT_CONFIG,
            Failure::Lib(e) if e.is_domain_precondition() => EXIT_DOMAIN,
            Failure::Lib(_) | Failure::Io(_) => EXIT_NUMERICAL,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Config(m) | Failure::Io(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn load_config(path: Option<&Path>) -> CliResult<RunConfig> {
    let Some(path) = path else { return Ok(RunConfig::default()) };
    let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn domain_spec(args: &DomainArgs, config: &RunConfig) -> CliResult<DomainSpec> {
    if let Some(text) = &args.domain {
        let text = if text.trim_start().starts_with('{') {
            text.clone()
        } else {
            fs::read_to_string(text).map_err(|e| Failure::Config(format!("{text}: {e}")))?
        };
        return Ok(DomainSpec::from_json(&text)?);
    }
    if let Some(name) = &args.preset {
        let preset = if name == "disk" { Preset::Disk } else { Preset::Ellipse };
        let params = PresetParams { radius: args.radius, a: args.a, b: args.b, eps: args.eps };
        return Ok(DomainSpec::Preset { preset, params, normalize_area: None });
    }
    config
        .domain
        .clone()
        .ok_or_else(|| Failure::Config("no domain given: use --preset, --domain or a config file".into()))
}

fn build_domain(args: &DomainArgs, config: &RunConfig) -> CliResult<SupportCurve> {
    let curve = domain_spec(args, config)?.build()?;
    Ok(if args.normalize { curve.normalize_area(PI)? } else { curve })
}

fn grid_size(value: Option<usize>, config: Option<usize>, default: usize, name: &str) -> CliResult<usize> {
    let n = value.or(config).unwrap_or(default);
    if n < MIN_GRID {
        return Err(Failure::Config(format!("{name} = {n} is below the minimum {MIN_GRID}")));
    }
    Ok(n)
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Io(e.to_string()))
}

#[derive(Serialize)]
struct DomainInfo {
    domain_id: String,
    support_cos: Vec<f64>,
    support_sin: Vec<f64>,
    #[serde(flatten)]
    report: isoperim::DomainClassReport,
    pestov_ionin: PestovIonin,
}

#[derive(Serialize)]
struct PestovIonin {
    kappa_max: f64,
    bound: f64,
    holds: bool,
}

#[derive(Serialize)]
struct PartnerArcs {
    s1: f64,
    arcs: Vec<isoperim::PerfectArc>,
}

/// Output text and whether the command's check passed.
fn run(cli: &Cli, config: &RunConfig) -> CliResult<(String, bool)> {
    match &cli.command {
        Command::DomainInfo(d) => {
            let curve = build_domain(d, config)?;
            let report = curve.classify()?;
            let (kappa_max, bound) = curve.pestov_ionin(&report);
            let info = DomainInfo {
                domain_id: curve.domain_id(),
                support_cos: curve.cos_coeffs().to_vec(),
                support_sin: curve.sin_coeffs().to_vec(),
                pestov_ionin: PestovIonin { kappa_max, bound, holds: kappa_max >= bound * (1.0 - 1e-12) },
                report,
            };
            Ok((to_json(&info)?, true))
        }
        Command::Profile { domain, samples } => {
            let curve = build_domain(domain, config)?;
            let n = grid_size(*samples, config.samples, 256, "samples")?;
            Ok((profile::symmetric_profile(&curve, n)?.to_csv(), true))
        }
        Command::CheckConjecture { domain, samples } => {
            let curve = build_domain(domain, config)?;
            let n = grid_size(*samples, config.samples, 512, "samples")?;
            let report = profile::conjecture_check(&curve, n)?;
            Ok((to_json(&report)?, report.passed))
        }
        Command::ArcsFind { domain, s1, area, grid } => {
            let curve = build_domain(domain, config)?;
            let grid = grid_size(*grid, config.grid, 256, "grid")?;
            match (s1, area) {
                (Some(s1), _) => {
                    let builder = ArcBuilder::new(&curve);
                    let arcs = arcs::partners(&curve, *s1, grid)
                        .into_iter()
                        .map(|s2| builder.build(*s1, s2))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok((to_json(&PartnerArcs { s1: *s1, arcs })?, true))
                }
                (None, Some(area)) => {
                    let result = ArcCloud::build(&curve, grid)?.query(*area)?;
                    Ok((to_json(&result)?, true))
                }
                (None, None) => Err(Failure::Config("arcs-find needs --s1 or --area".into())),
            }
        }
        Command::Perturb { action: PerturbAction::Roots { n } } => {
            Ok((to_json(&perturbation::find_mode_roots(*n))?, true))
        }
        Command::Perturb {
            action: PerturbAction::Experiment { mode, sin, translation, area, s_max, s_count, grid },
        } => {
            let grid = grid_size(*grid, config.grid, 256, "grid")?;
            let family = match (mode, translation) {
                (_, true) => PerturbationFamily::Translation,
                (Some(0), _) | (None, false) => return Err(Failure::Config("--mode must be at least 1".into())),
                (Some(m), false) if *sin => PerturbationFamily::Linear(PerturbationField::sin_mode(*m)),
                (Some(m), false) => PerturbationFamily::Linear(PerturbationField::cos_mode(*m)),
            };
            let area = match area {
                Some(a) => *a,
                None => mode
                    .and_then(|m| perturbation::find_mode_roots(m as i64).first().map(|r| r.area))
                    .unwrap_or(disk::theta_to_area(FRAC_PI_4)?),
            };
            if !(*s_max > 0.0 && s_max.is_finite()) || *s_count < 3 {
                return Err(Failure::Config("need --s-max > 0 and --s-count >= 3".into()));
            }
            let s: Vec<f64> = (1..=*s_count).map(|k| s_max * k as f64 / *s_count as f64).collect();
            let report = perturbation::profile_decrease_experiment(&family, area, &s, grid)?;
            Ok((to_json(&report)?, true))
        }
        Command::ImplicitCurve { xmin, xmax, ymin, ymax, resolution } => {
            if *resolution < MIN_GRID {
                return Err(Failure::Config(format!("resolution must be at least {MIN_GRID}")));
            }
            let curve = perturbation::implicit_curve_sample((*xmin, *xmax), (*ymin, *ymax), *resolution)
                .map_err(|e| Failure::Config(e.to_string()))?;
            Ok((curve.to_csv(), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_config(cli.config.as_deref()).and_then(|config| {
        if let Some(n) = cli.threads.or(config.threads) {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Failure::Config(e.to_string()))?;
        }
        let (text, passed) = run(&cli, &config)?;
        match cli.output.as_ref().or(config.output.as_ref()) {
            Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
            None => {
                let mut out = io::stdout().lock();
                match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                    Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(Failure::Io(e.to_string())),
                    _ => {}
                }
            }
        }
        Ok(passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_NOT_PASSED),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
