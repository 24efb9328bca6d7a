//! The `qgrass` command line.
//!
//! Exit codes: 0 when every consistency check passes, 1 when a check fails
//! (the report is still written), 2 on invalid input.

pub mod experiments;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::{build_system, PolySystem, ScheduleKind, SectionsSpec};
use crate::qposet::{delta_chains, delta_formula, hasse_dot, index_label, syt_rectangle, ChainCountTable, ProblemShape, QuantumPoset, DEFAULT_POSET_CAP};
use crate::solve::{certify_eliminant, solve_homotopy, CertifyOptions, TrackSettings};
use experiments::{paper_q1, shapiro_sweep, solve_osculating};

#[derive(Debug, Parser)]
#[command(name = "qgrass", version, about = "Degrees, systems and real solutions for rational curves in Grassmannians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    pub m: usize,
    pub p: usize,
    pub q: usize,
}

impl ShapeArgs {
    fn shape(&self) -> Result<ProblemShape> {
        ProblemShape::new(self.m, self.p, self.q)
    }
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Residual tolerance for accepting a solution.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Largest imaginary part of a real solution.
    #[arg(long = "real-tol", default_value_t = 1e-8)]
    pub real_tol: f64,
    /// Worker threads (default: QGRASS_THREADS or all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

impl SolverArgs {
    fn settings(&self) -> TrackSettings {
        let threads = self.threads.or_else(|| std::env::var("QGRASS_THREADS").ok().and_then(|v| v.parse().ok()));
        TrackSettings { seed: self.seed, residual_tol: self.tol, reality_tol: self.real_tol, threads, ..TrackSettings::default() }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The degree by the closed formula and by counting chains.
    Delta {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The index poset with ranks, covers and chain counts.
    Poset {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_POSET_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes the osculating system of a schedule in text form.
    Build {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value = "power:1")]
        schedule: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solves an osculating instance, or a system file with `--system`.
    Solve {
        m: Option<usize>,
        p: Option<usize>,
        q: Option<usize>,
        #[arg(long, default_value = "power:1")]
        schedule: String,
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact eliminant and Sturm count of an osculating instance or system file.
    Certify {
        m: Option<usize>,
        p: Option<usize>,
        q: Option<usize>,
        #[arg(long, default_value = "power:1")]
        schedule: String,
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Preset experiments: `paper-q1` or `shapiro-q0-sweep`.
    Experiment {
        name: String,
        /// Runs per shape for the sweep.
        #[arg(long, default_value_t = 50)]
        runs: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Result of a command: the text to emit and whether all checks passed.
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

fn emit(outcome: &Outcome, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, &outcome.output)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(outcome.output.as_bytes())
            .map_err(|e| Error::Internal(format!("stdout: {e}"))),
    }
}

fn load_system(
    m: Option<usize>,
    p: Option<usize>,
    q: Option<usize>,
    schedule: &str,
    file: &Option<PathBuf>,
) -> Result<(PolySystem, Option<String>)> {
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        return Ok((PolySystem::parse(&text)?, None));
    }
    let (Some(m), Some(p), Some(q)) = (m, p, q) else {
        return Err(Error::InvalidInput("give M P Q or --system FILE".into()));
    };
    let shape = ProblemShape::new(m, p, q)?;
    let kind: ScheduleKind = schedule.parse()?;
    let spec = SectionsSpec::from_schedule(&shape, &kind)?;
    Ok((build_system(&shape, &spec, None)?, Some(kind.label())))
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Delta { shape, format } => {
            let shape = shape.shape()?;
            let formula = delta_formula(&shape)?;
            let chains = delta_chains(&shape)?;
            let syt = (shape.q() == 0).then(|| syt_rectangle(shape.p(), shape.m()));
            let agree = formula == chains && syt.as_ref().is_none_or(|s| *s == chains);
            let output = match format {
                Format::Json => pretty(&json!({
                    "m": shape.m(), "p": shape.p(), "q": shape.q(),
                    "formula": formula.to_string(),
                    "chains": chains.to_string(),
                    "syt": syt.as_ref().map(|s| s.to_string()),
                    "agree": agree,
                })),
                _ => {
                    let mut line = format!("delta {} {} {}: formula {formula}, chains {chains}", shape.m(), shape.p(), shape.q());
                    if let Some(s) = &syt {
                        line += &format!(", tableaux {s}");
                    }
                    line += if agree { ", agree\n" } else { ", DISAGREE\n" };
                    line
                }
            };
            Ok(Outcome { output, ok: agree })
        }
        Command::Poset { shape, format, cap, out: _ } => {
            let shape = shape.shape()?;
            let poset = QuantumPoset::with_cap(shape, *cap)?;
            let table = ChainCountTable::build(&poset);
            let ok = poset.validate_covers().is_ok() && table.delta() == &delta_formula(&shape)?;
            let output = match format {
                Format::Dot => hasse_dot(&poset, Some(&table)),
                Format::Json => {
                    let elements: Vec<_> = poset
                        .elements()
                        .iter()
                        .enumerate()
                        .map(|(i, x)| {
                            json!({
                                "index": x.key(),
                                "label": index_label(&shape, x),
                                "rank": poset.rank_of(i),
                                "chains": table.get(x).map(|c| c.to_string()),
                                "upper_covers": poset.upper_covers(i).iter().map(|&j| poset.element(j).key()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    pretty(&json!({
                        "m": shape.m(), "p": shape.p(), "q": shape.q(),
                        "size": poset.len(),
                        "delta": table.delta().to_string(),
                        "elements": elements,
                    }))
                }
                Format::Text => {
                    let mut s = format!("{} elements, delta {}\n", poset.len(), table.delta());
                    for (i, x) in poset.elements().iter().enumerate() {
                        let covers: Vec<String> = poset.upper_covers(i).iter().map(|&j| index_label(&shape, poset.element(j))).collect();
                        s += &format!(
                            "{} rank {} chains {} covered by {}\n",
                            index_label(&shape, x),
                            poset.rank_of(i),
                            table.get(x).map(|c| c.to_string()).unwrap_or_default(),
                            covers.join(" ")
                        );
                    }
                    s
                }
            };
            Ok(Outcome { output, ok })
        }
        Command::Build { shape, schedule, out: _ } => {
            let shape = shape.shape()?;
            let kind: ScheduleKind = schedule.parse()?;
            let system = build_system(&shape, &SectionsSpec::from_schedule(&shape, &kind)?, None)?;
            Ok(Outcome { output: system.render(), ok: system.warnings.is_empty() })
        }
        Command::Solve { m, p, q, schedule, system, certify, solver, format, out: _ } => {
            let settings = solver.settings();
            let report = match system {
                None => {
                    let (Some(m), Some(p), Some(q)) = (m, p, q) else {
                        return Err(Error::InvalidInput("give M P Q or --system FILE".into()));
                    };
                    let shape = ProblemShape::new(*m, *p, *q)?;
                    solve_osculating(&shape, &schedule.parse()?, &settings, *certify)?
                }
                Some(_) => {
                    let (sys, _) = load_system(*m, *p, *q, schedule, system)?;
                    let (solutions, mut report) = solve_homotopy(&sys, &settings)?;
                    if *certify {
                        let cert = certify_eliminant(&sys, &CertifyOptions::default())?;
                        let matched = cert.matched_solutions(&solutions, 1e-6);
                        report.certificate_agrees = Some(
                            cert.complete() && cert.real_roots == report.real && matched == solutions.len(),
                        );
                        report.certificate = Some(cert);
                    }
                    report
                }
            };
            let output = match format {
                Format::Text => {
                    let mut s = format!(
                        "{} paths, {} distinct, {} real, {} conjugate pairs, max residual {:.3e}",
                        report.total_paths, report.distinct, report.real, report.complex_pairs, report.residuals.max
                    );
                    if let Some(d) = report.delta {
                        s += &format!(", expected {d}");
                    }
                    if let Some(c) = &report.certificate {
                        s += &format!("; eliminant degree {}, {} real roots", c.degree, c.real_roots);
                    }
                    s + "\n"
                }
                _ => report.to_json() + "\n",
            };
            Ok(Outcome { output, ok: report.consistent() })
        }
        Command::Certify { m, p, q, schedule, system, seed, format, out: _ } => {
            let (sys, _) = load_system(*m, *p, *q, schedule, system)?;
            let cert = certify_eliminant(&sys, &CertifyOptions { seed: *seed, ..CertifyOptions::default() })?;
            let output = match format {
                Format::Text => format!(
                    "eliminant in {} of degree {} (expected {}), {} real roots\n",
                    cert.variable, cert.degree, cert.expected_degree, cert.real_roots
                ),
                _ => pretty(&cert),
            };
            Ok(Outcome { output, ok: cert.complete() })
        }
        Command::Experiment { name, runs, solver, out: _ } => {
            let settings = solver.settings();
            match name.as_str() {
                "paper-q1" => {
                    let r = paper_q1(&settings)?;
                    let mut output = String::new();
                    for run in &r.runs {
                        output += &format!(
                            "{}: {} distinct, {} real, eliminant Sturm count {}\n",
                            run.schedule.as_deref().unwrap_or("?"),
                            run.distinct,
                            run.real,
                            run.certificate.as_ref().map_or("-".to_string(), |c| c.real_roots.to_string())
                        );
                    }
                    output += if r.passed { "PASS\n" } else { "FAIL\n" };
                    Ok(Outcome { output, ok: r.passed })
                }
                "shapiro-q0-sweep" => {
                    let r = shapiro_sweep(&[(2, 2), (3, 2)], *runs, solver.seed, &settings)?;
                    let mut output = String::new();
                    for s in &r.shapes {
                        output += &format!(
                            "m={} p={}: {}/{} runs found delta={} solutions, all-real fraction {:.3}\n",
                            s.m, s.p, s.complete, s.runs, s.delta, s.all_real_fraction
                        );
                    }
                    Ok(Outcome { output, ok: r.counts_match() })
                }
                other => Err(Error::InvalidInput(format!("unknown experiment {other:?} (paper-q1, shapiro-q0-sweep)"))),
            }
        }
    }
}

fn out_path(cli: &Cli) -> Option<PathBuf> {
    match &cli.command {
        Command::Delta { .. } => None,
        Command::Poset { out, .. }
        | Command::Build { out, .. }
        | Command::Solve { out, .. }
        | Command::Certify { out, .. }
        | Command::Experiment { out, .. } => out.clone(),
    }
}

/// Parses arguments, runs the command, writes its output and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli).and_then(|o| emit(&o, &out_path(&cli), stdout).map(|_| o.ok)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Internal(_) => 1,
                _ => 2,
            }
        }
    }
}
