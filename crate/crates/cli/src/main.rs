use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heilbronn::io::{parse_point_set, parse_trace_regions, point_set_to_json};
use heilbronn::render::{render_svg, RenderOptions};
use heilbronn::scalar::parse_rational;
use heilbronn::{
    extract_kgon, grid_config, min_kgon, optimize, probe_conjecture, upper_bound, verify_config, AnchorStrategy,
    Domain, Error, ExtractOptions, KGonOptions, ProbeTarget, Rational, SearchConfig,
};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "heilbronn", version, about = "Heilbronn problem for k-gons: exact areas, bounds and searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum convex-hull area over all k-subsets of a point file.
    Minarea {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Use the pruned search instead of plain enumeration.
        #[arg(long)]
        prune: bool,
        /// Lift the 10^9 subset guard rail.
        #[arg(long)]
        allow_large: bool,
    },
    /// Run the recursive halving extractor and print its trace.
    Extract {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "first")]
        strategy: AnchorStrategy,
    },
    /// Best closed-form upper bound on the k-gon value for n points.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Build a configuration.
    Config {
        #[command(subcommand)]
        kind: ConfigKind,
    },
    /// Exactly verify a configuration against its claimed value.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Simulated annealing for a configuration with a large minimum k-gon.
    Optimize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Search for counterexamples to a conjectured value.
    Probe {
        #[command(subcommand)]
        target: ProbeKind,
    },
    /// Draw a point file as SVG.
    Render {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated indices whose hull is highlighted.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
        /// Extraction trace JSON (output of `extract`).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum ConfigKind {
    /// `alpha` rows by `k - 1` columns in `[0, d] x [0, 1/d]`.
    Grid {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "1", value_parser = rational)]
        d: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyKind {
    Grid {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "1", value_parser = rational)]
        d: Rational,
    },
}

#[derive(Subcommand)]
enum ProbeKind {
    /// Nine points, quadrilaterals, conjectured 1/4.
    C1 {
        #[command(flatten)]
        budget: Budget,
    },
    /// `alpha (k - 1)` points, conjectured `1 / (2 (alpha - 1))`.
    C5 {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Args)]
struct Budget {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    initial_temperature: Option<f64>,
    #[arg(long)]
    cooling_rate: Option<f64>,
    #[arg(long)]
    step_scale: Option<f64>,
    /// Rectangle aspect of the domain.
    #[arg(long, default_value = "1", value_parser = rational)]
    d: Rational,
    /// Skip the exact re-score of the final incumbent.
    #[arg(long)]
    no_rescore: bool,
    /// Write the best configuration as a point file.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Budget {
    fn config(&self, n: usize, k: usize) -> Result<SearchConfig, Error> {
        let base = SearchConfig::new(n, k, self.seed);
        Ok(SearchConfig {
            domain: domain_for(&self.d)?,
            iterations: self.iterations.unwrap_or(base.iterations),
            restarts: self.restarts.unwrap_or(base.restarts),
            initial_temperature: self.initial_temperature.unwrap_or(base.initial_temperature),
            cooling_rate: self.cooling_rate.unwrap_or(base.cooling_rate),
            step_scale: self.step_scale.unwrap_or(base.step_scale),
            exact_rescore: !self.no_rescore,
            ..base
        })
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn domain_for(d: &Rational) -> Result<Domain<Rational>, Error> {
    if *d == Rational::from_integer(1.into()) {
        Ok(Domain::UnitSquare)
    } else {
        Domain::rectangle(d.clone())
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn to_value<S: serde::Serialize>(v: &S) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run(cli: Cli) -> Result<Option<Value>, Error> {
    let out = match cli.command {
        Command::Minarea { points, k, mode, prune, allow_large } => {
            let ps = parse_point_set(&read(&points)?)?;
            let opts = KGonOptions { prune, allow_large, ..KGonOptions::default() };
            match mode {
                ModeArg::Exact => to_value(&min_kgon(&ps.to_exact()?, k, &opts)?),
                ModeArg::Float => to_value(&min_kgon(&ps.to_float()?, k, &opts)?),
            }
        }
        Command::Extract { points, k, strategy } => {
            let ps = parse_point_set(&read(&points)?)?.to_float()?;
            let opts = ExtractOptions { strategy, ..ExtractOptions::default() };
            to_value(&extract_kgon(&ps, k, &opts)?)
        }
        Command::Bound { n, k } => to_value(&upper_bound(n, k)?),
        Command::Config { kind: ConfigKind::Grid { alpha, k, d, out } } => {
            let g = grid_config(alpha, k, d)?;
            let doc = point_set_to_json(&g.points);
            match out {
                Some(path) => {
                    write(&path, &pretty(&doc))?;
                    return Ok(None);
                }
                None => doc,
            }
        }
        Command::Verify { kind: VerifyKind::Grid { alpha, k, d } } => {
            to_value(&verify_config(&grid_config(alpha, k, d)?, &KGonOptions::default())?)
        }
        Command::Optimize { n, k, budget } => {
            let result = optimize(&budget.config(n, k)?)?;
            if let Some(path) = &budget.out {
                write(path, &pretty(&point_set_to_json(&result.best_points)))?;
            }
            to_value(&result)
        }
        Command::Probe { target } => {
            let (target, budget) = match target {
                ProbeKind::C1 { budget } => (ProbeTarget::C1, budget),
                ProbeKind::C5 { alpha, k, budget } => (ProbeTarget::C5 { alpha, k }, budget),
            };
            let (n, k) = target.n_k();
            let report = probe_conjecture(target, &budget.config(n, k)?)?;
            if let Some(path) = &budget.out {
                write(path, &pretty(&report.best_points))?;
            }
            to_value(&report)
        }
        Command::Render { points, out, subset, trace } => {
            let ps = parse_point_set(&read(&points)?)?.to_float()?;
            let trace_regions = match trace {
                Some(path) => parse_trace_regions(&read(&path)?)?,
                None => Vec::new(),
            };
            let svg = render_svg(&ps, &RenderOptions { subset, trace_regions })?;
            write(&out, &svg)?;
            return Ok(None);
        }
    };
    Ok(Some(out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("error: {}", msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(Some(v)) => {
            print!("{}", pretty(&v));
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_guard_rail() { 2 } else { 1 })
        }
    }
}
