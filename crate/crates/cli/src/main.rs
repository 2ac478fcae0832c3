use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ccd_cli::commands::{bench_file, cluster_file, evaluate_files, simulate_to, to_json};
use ccd_cli::config::{default_delta_roots, AlphaSetting, REAL_DATA_ALPHA};
use ccd_cli::csvio::write_atomic;
use ccd_cli::{CliError, CliResult, MethodSettings};
use ccd_core::{CenterLayout, Family, Method, SimSpec};

#[derive(Parser)]
#[command(name = "ccd", version, about = "Cluster catch digraph clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Un,
    Rk,
    Ks,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Un => vec![Method::Un],
            MethodArg::Rk => vec![Method::Rk],
            MethodArg::Ks => vec![Method::Ks],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Uniform,
    Gaussian,
}

#[derive(Clone, Copy, ValueEnum)]
enum LayoutArg {
    Standard,
    NoiseStudy,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster the points of a CSV file.
    Cluster {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "un")]
        method: MethodArg,
        /// Significance level, or `schedule` for the per-dimension defaults.
        #[arg(long, default_value_t = AlphaSetting::Fixed(REAL_DATA_ALPHA))]
        alpha: AlphaSetting,
        /// KS `delta^(1/d)`; repeat or comma-separate to search for the best
        /// silhouette. Defaults to a log grid over [0.05, 20].
        #[arg(long, value_delimiter = ',')]
        delta_root: Vec<f64>,
        /// Monte Carlo replicates (default max(999, ceil(2/alpha))).
        #[arg(long)]
        mc_replicates: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Z-score every feature first.
        #[arg(long)]
        normalize: bool,
        /// Clusters are connected components of the intersection graph.
        #[arg(long)]
        flexible: bool,
        /// Walk candidate radii from the largest down.
        #[arg(long)]
        descending: bool,
        /// JSON report path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic dataset as CSV.
    Simulate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        d: usize,
        /// Number of cluster points; noise comes on top.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, value_enum, default_value = "standard")]
        layout: LayoutArg,
        /// Standard-deviation multiplier for Gaussian clusters (default 0.5
        /// for the standard layout, 1 for the noise-study layout).
        #[arg(long)]
        gaussian_scale: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a replicated simulation experiment described by a JSON spec.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        /// Overrides the replicate count of the spec file.
        #[arg(long)]
        replicates: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write per-run rows as CSV.
        #[arg(long)]
        rows_csv: Option<PathBuf>,
    },
    /// Score predicted labels against true labels.
    Evaluate {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => write_atomic(path, bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Cluster {
            input,
            method,
            alpha,
            delta_root,
            mc_replicates,
            seed,
            normalize,
            flexible,
            descending,
            out,
        } => {
            let settings = MethodSettings {
                alpha,
                mc_replicates,
                delta_roots: if delta_root.is_empty() {
                    default_delta_roots()
                } else {
                    delta_root
                },
                seed,
                descending,
                flexible,
            };
            let report = cluster_file(&input, normalize, &method.methods(), &settings)?;
            for r in &report.results {
                eprintln!(
                    "{}: k_hat = {}, silhouette = {:.4}{}",
                    r.method,
                    r.k_hat,
                    r.avg_silhouette,
                    r.ari.map(|a| format!(", ARI = {a:.4}")).unwrap_or_default()
                );
            }
            emit(out.as_ref(), &to_json(&report)?)
        }
        Command::Simulate {
            family,
            d,
            n,
            k,
            noise,
            layout,
            gaussian_scale,
            seed,
            out,
        } => {
            let family = match family {
                FamilyArg::Uniform => Family::Uniform,
                FamilyArg::Gaussian => Family::Gaussian,
            };
            let layout = match layout {
                LayoutArg::Standard => CenterLayout::Standard,
                LayoutArg::NoiseStudy => CenterLayout::NoiseStudy,
            };
            let spec = SimSpec {
                gaussian_scale,
                ..SimSpec::new(family, d, n, k, seed)
                    .with_noise(noise)
                    .with_layout(layout)
            };
            simulate_to(&spec, &out)
        }
        Command::Bench {
            spec,
            replicates,
            out,
            rows_csv,
        } => {
            let report = bench_file(&spec, replicates)?;
            eprint!("{}", report.to_text());
            if let Some(path) = rows_csv {
                write_atomic(&path, &report.rows_csv()?)?;
            }
            emit(out.as_ref(), &to_json(&report)?)
        }
        Command::Evaluate {
            pred,
            truth,
            data,
            normalize,
            out,
        } => {
            let report = evaluate_files(&pred, &truth, &data, normalize)?;
            if !report.silhouette_defined {
                eprintln!("warning: a single predicted cluster; silhouette reported as 0");
            }
            emit(out.as_ref(), &to_json(&report)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ccd: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    e.exit_code() as u8
}
