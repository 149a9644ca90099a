//! Command-line front end. Models come from built-in names or model files;
//! results go out as CSV, a one-line summary goes to stderr.
//!
//! Exit codes: 0 success, 1 I/O, 2 parse or usage, 3 validation,
//! 4 numeric invariant violated, 5 resource cap.

use std::ffi::OsString;
use std::f64::consts::TAU;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::csv::{self, MomentRow};
use crate::distribution::{self, PdfMode, PdfOptions, WalkerInit};
use crate::error::{QorwError, Result};
use crate::oracle;
use crate::sampling::default_workers;
use crate::simulation::{self, SimulatorSpec};
use crate::tolerance::TOL;
use crate::walk::{classicality_test, completeness_residual, Builtin, CoinKernel, WalkModel};

/// Probabilities at or below this are omitted from distribution CSVs.
const ZERO_FLOOR: f64 = 1e-15;

#[derive(Debug, Parser)]
#[command(name = "qorw", version, about = "Quantum optical random walks: kernels, distributions and asymptotics")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Built-in name (example_i, example_ii, example_iii, example_iv, v3) or model file path.
    #[arg(long, default_value = "example_ii")]
    pub model: String,
    /// Coin population `q` of `diag(q, 1−q)` (examples i, iii, iv).
    #[arg(long)]
    pub q: Option<f64>,
    /// Entry amplitude-damping probability (example iii).
    #[arg(long)]
    pub decay_t: Option<f64>,
    /// Intermediate amplitude-damping probability (example iii).
    #[arg(long)]
    pub decay_tau: Option<f64>,
    /// Initial walker site.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub site: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Spectral,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// example_ii, 200 bins, 200000 nodes
    Fig1a,
    /// v3, 200 bins, 200000 nodes
    Fig1b,
    /// example_iv at q = 0, 200 bins, 200000 nodes
    Fig2,
}

impl Preset {
    fn model(self) -> Builtin {
        match self {
            Preset::Fig1a => Builtin::ExampleII,
            Preset::Fig1b => Builtin::V3,
            Preset::Fig2 => Builtin::ExampleIV { q: 0.0 },
        }
    }
}

pub const PRESET_BINS: usize = 200;
pub const PRESET_NODES: usize = 200_000;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the model's channels are CPTP and its kernel is normalized.
    Validate {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Report whether the kernel depends on φ − φ′ only.
    ClassicalCheck {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Occupation probabilities after n steps.
    Evolve {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Engine::Spectral)]
        engine: Engine,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite-n moments ⟨L^s⟩_n for s = 1..=s_max at each listed n.
    Moments {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        s_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Histogram of the limiting scaled position L/n.
    Pdf {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long, default_value_t = PRESET_BINS)]
        bins: usize,
        #[arg(long, default_value_t = PRESET_NODES)]
        nodes: usize,
        #[arg(long, value_enum, default_value_t = Mode::Quadrature)]
        mode: Mode,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tensor-power moments Tr[σ^{⊗s} ε̄^s] against direct quadrature.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 3)]
        s_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence of the stochastic estimate of ε̄^s with sample size.
    Stochastic {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [1_000usize, 10_000, 100_000])]
        samples: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Validate { .. } => "validate",
            Command::ClassicalCheck { .. } => "classical-check",
            Command::Evolve { .. } => "evolve",
            Command::Moments { .. } => "moments",
            Command::Pdf { .. } => "pdf",
            Command::Simulate { .. } => "simulate",
            Command::Stochastic { .. } => "stochastic",
        })
    }
}

/// Resolves `--model` and its parameter overrides.
pub fn load_model(args: &ModelArgs) -> Result<WalkModel> {
    let builtin = match args.model.parse::<Builtin>() {
        Ok(b) => Some(b),
        Err(_) if Path::new(&args.model).exists() => None,
        Err(e) => return Err(e),
    };
    let Some(mut b) = builtin else {
        if args.q.is_some() || args.decay_t.is_some() || args.decay_tau.is_some() {
            return Err(QorwError::Parse("--q/--decay-t/--decay-tau apply to built-in models only".into()));
        }
        return WalkModel::from_file(&args.model);
    };
    match &mut b {
        Builtin::ExampleI { q } | Builtin::ExampleIV { q } => {
            if let Some(v) = args.q {
                *q = v;
            }
        }
        Builtin::ExampleIII {
            decay_t,
            decay_tau,
            q,
        } => {
            *q = args.q.unwrap_or(*q);
            *decay_t = args.decay_t.unwrap_or(*decay_t);
            *decay_tau = args.decay_tau.unwrap_or(*decay_tau);
        }
        Builtin::ExampleII | Builtin::V3 => {
            if args.q.is_some() {
                return Err(QorwError::Parse(format!("{b} takes no --q")));
            }
        }
    }
    b.build()
}

/// Largest `|A(φ, φ) − 1|` over 64 nodes.
pub fn kernel_residual(model: &WalkModel) -> f64 {
    let kernel = CoinKernel::new(model);
    (0..64)
        .map(|a| {
            let phi = TAU * a as f64 / 64.0;
            (kernel.value(phi, phi) - 1.0).norm()
        })
        .fold(0.0, f64::max)
}

pub fn exit_code(err: &QorwError) -> i32 {
    match err {
        QorwError::Parse(_) | QorwError::Usage(_) => 2,
        QorwError::Structural(_) | QorwError::Parameter(_) => 3,
        QorwError::Numeric(_) => 4,
        QorwError::Resource(_) => 5,
        QorwError::Io(_) => 1,
    }
}

/// What a command produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub norm_residual: f64,
    pub note: String,
}

fn emit(out: &Option<PathBuf>, csv: String) -> Result<String> {
    match out {
        Some(path) => {
            csv::write_atomic(path, &csv)?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}

fn need_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.ok_or_else(|| QorwError::Usage(format!("{what} needs --seed")))
}

/// Executes one command; returns its output and residuals.
pub fn execute(command: &Command) -> Result<(WalkModel, Outcome)> {
    match command {
        Command::Validate { model } => {
            let m = load_model(model)?;
            let mut text = String::new();
            for (j, ch) in m.quantizers().iter().enumerate() {
                text += &format!("quantizer {} ({}): deviation {:.3e}\n", j + 1, ch.label(), ch.validate().deviation);
            }
            if let Some(ch) = m.entry_channel() {
                text += &format!("entry ({}): deviation {:.3e}\n", ch.label(), ch.validate().deviation);
            }
            text += "valid\n";
            let residual = completeness_residual(&m);
            Ok((
                m,
                Outcome {
                    stdout: text,
                    norm_residual: residual,
                    note: String::new(),
                },
            ))
        }
        Command::ClassicalCheck { model, nodes, tol } => {
            let m = load_model(model)?;
            let report = classicality_test(&m, *nodes, *tol)?;
            let verdict = if report.classical { "classical" } else { "non-classical" };
            Ok((
                m,
                Outcome {
                    stdout: format!("{verdict}\n"),
                    norm_residual: 0.0,
                    note: format!("variation={:.3e}", report.max_variation),
                },
            ))
        }
        Command::Evolve { model, n, engine, out } => {
            let m = load_model(model)?;
            let init = WalkerInit::site(model.site);
            let dist = match engine {
                Engine::Spectral => distribution::probabilities(&m, &init, *n)?,
                Engine::Oracle => oracle::oracle_run(&m, &init, *n)?,
            };
            let residual = (dist.total() - 1.0).abs();
            let stdout = emit(out, csv::distribution_csv(&dist, ZERO_FLOOR))?;
            Ok((
                m,
                Outcome {
                    stdout,
                    norm_residual: residual,
                    note: format!("sites={}", dist.support(ZERO_FLOOR).len()),
                },
            ))
        }
        Command::Moments { model, n, s_max, out } => {
            let m = load_model(model)?;
            let init = WalkerInit::site(model.site);
            let mut rows = Vec::new();
            let mut residual: f64 = 0.0;
            for &steps in n {
                residual = residual.max((distribution::probabilities(&m, &init, steps)?.total() - 1.0).abs());
                for s in 1..=*s_max {
                    rows.push((steps, s, distribution::moment(&m, &init, steps, s)?));
                }
            }
            let stdout = emit(out, csv::moments_csv(&rows))?;
            Ok((
                m,
                Outcome {
                    stdout,
                    norm_residual: residual,
                    note: String::new(),
                },
            ))
        }
        Command::Pdf {
            model,
            preset,
            bins,
            nodes,
            mode,
            seed,
            workers,
            out,
        } => {
            let m = match preset {
                Some(p) => p.model().build()?,
                None => load_model(model)?,
            };
            let pdf_mode = match mode {
                Mode::Quadrature => PdfMode::Quadrature,
                Mode::MonteCarlo => PdfMode::MonteCarlo {
                    seed: need_seed(*seed, "monte-carlo mode")?,
                    workers: workers.unwrap_or_else(default_workers),
                },
            };
            let opts = PdfOptions {
                bins: *bins,
                nodes: *nodes,
                mode: pdf_mode,
            };
            let hist = distribution::asymptotic_pdf(&m, &WalkerInit::site(model.site), &opts)?;
            let residual = (hist.total_mass() - 1.0).abs();
            let stdout = emit(out, csv::histogram_csv(&hist))?;
            Ok((
                m,
                Outcome {
                    stdout,
                    norm_residual: residual,
                    note: format!("bins={} degenerate={}", hist.bins(), hist.degenerate),
                },
            ))
        }
        Command::Simulate { model, s_max, out } => {
            let m = load_model(model)?;
            let init = WalkerInit::site(model.site);
            let mut rows = Vec::new();
            let mut worst: f64 = 0.0;
            for s in 1..=*s_max {
                let spec = SimulatorSpec::new(&m, s, &init)?;
                let simulated = simulation::simulated_moment(&spec)?;
                let quadrature = distribution::asymptotic_moment(&m, &init, s as u32)? / (m.k() as f64).powi(s as i32);
                worst = worst.max((simulated - quadrature).abs());
                rows.push(MomentRow {
                    s,
                    simulated,
                    quadrature,
                });
            }
            if worst > TOL.run_residual {
                return Err(QorwError::Numeric(format!("simulated and quadrature moments differ by {worst:.3e}")));
            }
            let trace = (simulation::eps_bar_s(&SimulatorSpec::new(&m, 1, &init)?)?.matrix().trace() - 1.0).norm();
            let stdout = emit(out, csv::moment_table_csv(&rows))?;
            Ok((
                m,
                Outcome {
                    stdout,
                    norm_residual: trace,
                    note: format!("max_abs_diff={worst:.3e}"),
                },
            ))
        }
        Command::Stochastic {
            model,
            s,
            samples,
            seed,
            workers,
            replicates,
            out,
        } => {
            let m = load_model(model)?;
            let seed = need_seed(*seed, "stochastic")?;
            let spec = SimulatorSpec::new(&m, *s, &WalkerInit::site(model.site))?;
            let rows = simulation::convergence_table(
                &spec,
                samples,
                seed,
                workers.unwrap_or_else(default_workers),
                *replicates,
            )?;
            let trace = (simulation::eps_bar_s(&spec)?.matrix().trace() - 1.0).norm();
            let stdout = emit(out, csv::convergence_csv(&rows))?;
            Ok((
                m,
                Outcome {
                    stdout,
                    norm_residual: trace,
                    note: format!("seed={seed}"),
                },
            ))
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Output goes to the given writers.
pub fn run_with<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match execute(&config.command) {
        Ok((model, outcome)) => {
            let kernel = kernel_residual(&model);
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = writeln!(
                stderr,
                "qorw {}: model={} kernel_residual={:.3e} norm_residual={:.3e}{}{}",
                config.command,
                model.label(),
                kernel,
                outcome.norm_residual,
                if outcome.note.is_empty() { "" } else { " " },
                outcome.note
            );
            if kernel > TOL.run_residual || outcome.norm_residual > TOL.run_residual {
                let _ = writeln!(stderr, "qorw: invariant residual above {:.0e}", TOL.run_residual);
                return 4;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "qorw {}: {e}", config.command);
            exit_code(&e)
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
