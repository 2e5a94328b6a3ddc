use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use pass_core::analysis::{optimal_length_search, LengthGrid, Metric};
use pass_core::harness::{
    figure_config, fmt_g12, parse_assignment, run_sweep, run_validation, write_text,
    ParamOverrides, SweepConfig, SweepOutcome, ValidateFile,
};
use pass_core::params::LightSpeed;
use pass_core::Error;

const EXIT_VALIDATION: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

/// Outage and rate analysis of pinching-antenna links in a circular room.
#[derive(Debug, Parser)]
#[command(name = "pass-sim", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Monte-Carlo seed; overrides the configuration file.
    #[arg(long, global = true, env = "PASS_SEED")]
    seed: Option<u64>,
    /// Monte-Carlo sample count per estimate.
    #[arg(long, global = true)]
    mc_samples: Option<usize>,
    /// Gauss-Chebyshev node count for the rate closed forms.
    #[arg(long, global = true)]
    nodes: Option<usize>,
    /// Output CSV path ("-" for standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Use c = 3e8 m/s as in the reference figures.
    #[arg(long, global = true)]
    paper_c: bool,
    /// Parameter override `key=value`; may be repeated.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a sweep described by a configuration file.
    Sweep {
        /// TOML sweep description.
        #[arg(long, short)]
        config: PathBuf,
        /// Skip the Monte-Carlo columns.
        #[arg(long)]
        no_mc: bool,
        /// Also write a gnuplot script next to the CSV.
        #[arg(long)]
        gnuplot: bool,
    },
    /// Reproduce one of the reference figures (2 to 7) as a CSV table.
    Figure {
        /// Figure number.
        id: u32,
        /// Skip the Monte-Carlo columns.
        #[arg(long)]
        no_mc: bool,
        /// Also write a gnuplot script next to the CSV.
        #[arg(long)]
        gnuplot: bool,
    },
    /// Run the Monte-Carlo agreement and consistency report.
    Validate {
        /// File with a `[validate]` section.
        #[arg(long, short)]
        config: Option<PathBuf>,
        /// Random parameter draws per scenario.
        #[arg(long)]
        draws: Option<usize>,
        /// Override every tolerance, e.g. 0 as a negative control.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Search the waveguide half-length that optimises outage or rate.
    OptimalLength {
        /// `rate` (maximised) or `outage` (minimised).
        #[arg(long, default_value = "rate")]
        metric: Metric,
        /// Smallest half-length of the grid; defaults to `r / steps`.
        #[arg(long)]
        start: Option<f64>,
        /// Largest half-length of the grid; defaults to `r`.
        #[arg(long)]
        stop: Option<f64>,
        /// Grid points.
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Polish the grid optimum by golden-section search.
        #[arg(long)]
        refine: bool,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config { .. } | Error::InvalidParam { .. } => EXIT_CONFIG,
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_VALIDATION,
    }
}

fn overrides(g: &Global) -> Result<ParamOverrides, Error> {
    let mut o = ParamOverrides::default();
    for item in &g.set {
        let (k, v) = parse_assignment(item)?;
        o.set(&k, &v)?;
    }
    if g.paper_c {
        o.light_speed = Some(LightSpeed::Rounded);
    }
    Ok(o)
}

fn run(cli: Cli) -> Result<u8, Error> {
    let g = &cli.global;
    match cli.command {
        Command::Sweep {
            config,
            no_mc,
            gnuplot,
        } => {
            let cfg = SweepConfig::load(&config)?;
            sweep(cfg, g, no_mc, gnuplot)
        }
        Command::Figure { id, no_mc, gnuplot } => {
            let cfg = figure_config(id)?;
            sweep(cfg, g, no_mc, gnuplot)
        }
        Command::Validate {
            config,
            draws,
            tolerance,
        } => {
            let file = match config {
                Some(path) => ValidateFile::load(&path)?,
                None => ValidateFile::from_toml_str("")?,
            };
            let mut v = file.validate;
            if let Some(s) = g.seed {
                v.seed = s;
            }
            if let Some(n) = g.mc_samples {
                v.samples = n;
            }
            if let Some(d) = draws {
                v.draws = d;
            }
            if let Some(t) = tolerance {
                v.outage_tolerance = t;
                v.rate_tolerance = t;
                v.lattice_outage_abs = t;
                v.limit_outage_abs = t;
                v.lattice_rate_rel = t;
            }
            let report = run_validation(&v, g.nodes.unwrap_or(file.quadrature_nodes))?;
            print!("{}", report.render());
            Ok(if report.all_passed() {
                0
            } else {
                EXIT_VALIDATION
            })
        }
        Command::OptimalLength {
            metric,
            start,
            stop,
            steps,
            refine,
        } => {
            let p = overrides(g)?.resolve()?;
            let grid = LengthGrid {
                start: start.unwrap_or(p.r / steps.max(1) as f64),
                stop: stop.unwrap_or(p.r),
                steps,
                refine,
            };
            let nodes = g.nodes.unwrap_or(pass_core::numerics::DEFAULT_NODES);
            let res = optimal_length_search(&p, metric, &grid, nodes)?;
            println!(
                "best_l={} best_{}={}",
                fmt_g12(res.best_l),
                metric,
                fmt_g12(res.best_value)
            );
            if let Some(out) = &g.out {
                let mut csv = format!("l,{metric}\n");
                for (l, v) in &res.grid {
                    csv.push_str(&format!("{},{}\n", fmt_g12(*l), fmt_g12(*v)));
                }
                emit(out, &csv)?;
            }
            Ok(0)
        }
    }
}

fn sweep(mut cfg: SweepConfig, g: &Global, no_mc: bool, gnuplot: bool) -> Result<u8, Error> {
    if let Some(s) = g.seed {
        cfg.mc.seed = s;
    }
    if let Some(n) = g.mc_samples {
        cfg.mc.samples = n;
    }
    if let Some(n) = g.nodes {
        cfg.quadrature_nodes = n;
    }
    if no_mc {
        cfg.mc.enabled = false;
    }
    if let Some(out) = &g.out {
        cfg.output = Some(out.clone());
    }
    cfg.forced = overrides(g)?;
    let outcome = run_sweep(&cfg)?;
    let out = cfg.output.clone().unwrap_or_else(|| PathBuf::from("-"));
    emit(&out, &outcome.to_csv())?;
    if gnuplot || cfg.gnuplot.is_some() {
        write_gnuplot(&cfg, &outcome, &out)?;
    }
    eprintln!("{}", outcome.summary());
    Ok(0)
}

fn write_gnuplot(cfg: &SweepConfig, outcome: &SweepOutcome, csv: &Path) -> Result<(), Error> {
    let script_path = cfg
        .gnuplot
        .clone()
        .unwrap_or_else(|| csv.with_extension("gp"));
    if csv == Path::new("-") {
        return Err(Error::Config {
            field: "gnuplot".into(),
            reason: "a gnuplot script needs the CSV written to a file".into(),
        });
    }
    emit(&script_path, &outcome.gnuplot_script(csv))
}

fn emit(path: &Path, text: &str) -> Result<(), Error> {
    if path == Path::new("-") {
        print!("{text}");
        return Ok(());
    }
    write_text(path, text)?;
    info!("wrote {}", path.display());
    Ok(())
}
