//! `finadd`: command line front end for the exact probability engine.
//!
//! Results go to standard output, diagnostics to standard error. Exit
//! codes: 0 success (and coherent verdicts), 1 usage or input error,
//! 2 outside the determinable class, 3 incoherent verdict. Identical
//! arguments and seed produce byte-identical output.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use finadd_core::bernoulli::{
    cantelli_probability, mixture_prob, oscillation_checkpoints, tail_frequency_path, Cylinder,
    FrequencyPath, MixingDf, TailLaw,
};
use finadd_core::coherence::{check_coherence, extension_bounds, ExtensionError};
use finadd_core::fisi::{
    limit_cf, monte_carlo_cf_check, partial_sum_cf, CharFn, CompoundPoissonCf, DegenerateCf,
    EmpiricalCfRow, GaussianCf, PoissonCf, SamplerKind,
};
use finadd_core::limits::{natural_density, CountingSet, DensityValue};
use finadd_core::pd::{weak_limit_classify, StepDf};
use finadd_core::schema::{
    interval_csv, parse_assessment, to_json, DensityDoc, DfClassDoc, DfFamilyDoc,
    DfLimitReportDoc, StepDfDoc, VerdictDoc,
};
use finadd_core::{format_rat, parse_rat, Rat};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_OUTSIDE: u8 = 2;
const EXIT_INCOHERENT: u8 = 3;

#[derive(Parser)]
#[command(name = "finadd", version, about = "Exact finitely additive probability toolkit")]
struct Cli {
    /// Output format; commands with a natural plain-text form default
    /// to it, everything else defaults to json
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for every randomized quantity
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Quadrature tolerance (fisi only)
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Coherence verdicts and extension intervals for assessment files
    Coherence {
        #[command(subcommand)]
        cmd: CoherenceCmd,
    },
    /// Natural densities of structured integer sets
    Density {
        #[command(subcommand)]
        cmd: DensityCmd,
    },
    /// Classify the weak limit of a family of step distribution functions
    Pdlim {
        /// Family selector, e.g. '{"kind":"symmetric_escape"}'
        #[arg(long)]
        family: String,
    },
    /// Bernoulli-type tail laws: cylinder probabilities and frequency paths
    Bernoulli {
        #[command(subcommand)]
        cmd: BernoulliCmd,
    },
    /// Probability that the running frequency stays in a band over a window
    Cantelli {
        /// Success chance, e.g. 1/2
        #[arg(long)]
        p: String,
        /// Band radius, e.g. 1/4
        #[arg(long)]
        eps: String,
        /// First checked index
        #[arg(long)]
        n: u64,
        /// Window length beyond the first index
        #[arg(long)]
        m: u64,
    },
    /// Characteristic functions of time-averaged partial sums
    Fisi {
        #[command(subcommand)]
        cmd: FisiCmd,
    },
}

#[derive(Subcommand)]
enum CoherenceCmd {
    /// Check an assessment file; exit 0 if coherent, 3 with a Dutch book if not
    Check { file: PathBuf },
    /// Coherent price interval for one additional event
    Extend {
        file: PathBuf,
        /// New event as comma-separated 0-based atom indices
        #[arg(long, value_delimiter = ',')]
        event: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum DensityCmd {
    /// Natural density of a set descriptor; exit 2 if the limit does not exist
    Eval {
        /// Descriptor JSON, e.g. '{"finite":[1,2,3]}'
        #[arg(long)]
        set: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LawKind {
    /// Dead tail: zeros after the jump coordinate
    Q,
    /// Factorial-block tail alternating zeros and ones
    Qstar,
    /// Exchangeable tail driven by a mixing distribution
    Qstarstar,
}

#[derive(Subcommand)]
enum BernoulliCmd {
    /// Exact probability of a binary cylinder under the mixture law
    Cylinder {
        #[arg(long, value_enum)]
        law: LawKind,
        /// Success chance for q and qstar, or a point mixing mass
        #[arg(long)]
        p: Option<String>,
        /// Beta mixing parameters "alpha,beta" (qstarstar only)
        #[arg(long)]
        beta: Option<String>,
        /// Cylinder bits on coordinates 1.., e.g. 1,0,1
        #[arg(long)]
        cyl: String,
    },
    /// Running frequencies along one realization, or exact factorial
    /// checkpoints for the oscillating law
    Path {
        #[arg(long, value_enum)]
        law: LawKind,
        #[arg(long)]
        p: Option<String>,
        /// Beta mixing parameters "alpha,beta" (qstarstar only)
        #[arg(long)]
        beta: Option<String>,
        /// Pinned success coordinate
        #[arg(long, default_value_t = 1)]
        jump: u64,
        /// Head bits before the jump, e.g. 1,0,1 (length jump-1)
        #[arg(long)]
        prefix: Option<String>,
        /// Number of factorial cycles to report exactly (qstar only)
        #[arg(long)]
        checkpoints: Option<u32>,
        /// Simulated path length
        #[arg(long)]
        horizon: Option<u64>,
        /// Write the frequency trajectory as SVG to this file
        #[arg(long)]
        plot: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FisiCmd {
    /// Compare the limit law, the n-summand value, and a Monte Carlo
    /// estimate of the characteristic function on a grid
    Cf {
        #[arg(long, value_enum)]
        phi: PhiKind,
        /// Jump intensity for poisson and compound-poisson
        #[arg(long, default_value_t = 1.0)]
        rate: f64,
        /// Slope for the degenerate family
        #[arg(long, default_value_t = 1.0)]
        slope: f64,
        /// Time span
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Additive drift
        #[arg(long, default_value_t = 0.0)]
        c: f64,
        /// Grid as start:end:step
        #[arg(long, default_value = "-4:4:0.25", allow_hyphen_values = true)]
        xi_grid: String,
        /// Summand count
        #[arg(long, default_value_t = 256)]
        n: u64,
        /// Monte Carlo sample count; 0 disables the empirical columns
        #[arg(long, default_value_t = 0)]
        mc_samples: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PhiKind {
    Gaussian,
    Poisson,
    Degenerate,
    CompoundPoisson,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    if cli.tol.is_some() && !matches!(cli.command, Command::Fisi { .. }) {
        return Err("--tol applies to fisi commands only".into());
    }
    match cli.command {
        Command::Coherence { ref cmd } => match cmd {
            CoherenceCmd::Check { file } => {
                let assessment = parse_assessment(&read(file)?).map_err(|e| e.to_string())?;
                let verdict = check_coherence(&assessment);
                let doc = VerdictDoc::from(&verdict);
                emit(&render(&doc, cli.format.unwrap_or(Format::Json))?);
                Ok(if verdict.is_coherent() { EXIT_OK } else { EXIT_INCOHERENT })
            }
            CoherenceCmd::Extend { file, event } => {
                let assessment = parse_assessment(&read(file)?).map_err(|e| e.to_string())?;
                let new_event = assessment
                    .space()
                    .event_from_atoms(event)
                    .map_err(|e| e.to_string())?;
                match extension_bounds(&assessment, &new_event) {
                    Ok(interval) => {
                        match cli.format {
                            Some(Format::Json) => {
                                #[derive(Serialize)]
                                struct IntervalDoc {
                                    lower: String,
                                    upper: String,
                                }
                                let doc = IntervalDoc {
                                    lower: format_rat(&interval.lower),
                                    upper: format_rat(&interval.upper),
                                };
                                emit(&to_json(&doc));
                            }
                            _ => emit(&interval_csv(&interval)),
                        }
                        Ok(EXIT_OK)
                    }
                    Err(ExtensionError::IncoherentBase(book)) => {
                        let doc = VerdictDoc::from(
                            &finadd_core::CoherenceVerdict::Incoherent { dutch_book: book },
                        );
                        eprintln!("the base assessment is incoherent: {}", to_json(&doc));
                        Ok(EXIT_INCOHERENT)
                    }
                    Err(e) => Err(e.to_string()),
                }
            }
        },
        Command::Density { cmd: DensityCmd::Eval { ref set } } => {
            let descriptor: CountingSet =
                serde_json::from_str(set).map_err(|e| format!("bad set descriptor: {e}"))?;
            let value = natural_density(&descriptor).map_err(|e| e.to_string())?;
            let doc = DensityDoc::from(&value);
            emit(&render(&doc, cli.format.unwrap_or(Format::Json))?);
            Ok(match value {
                DensityValue::Exists(_) => EXIT_OK,
                DensityValue::Divergent { .. } => EXIT_OUTSIDE,
            })
        }
        Command::Pdlim { ref family } => {
            let selector: DfFamilyDoc =
                serde_json::from_str(family).map_err(|e| format!("bad family selector: {e}"))?;
            let (family, claimed): (Box<dyn Fn(u64) -> StepDf>, StepDf) = match selector {
                DfFamilyDoc::SymmetricEscape => (
                    Box::new(|n| {
                        StepDf::from_point_masses(&[
                            (int(-(n as i64)), half()),
                            (int(n as i64), half()),
                        ])
                        .expect("masses sum to one")
                    }),
                    StepDf::constant(half()).expect("constant level in [0, 1]"),
                ),
                DfFamilyDoc::RightwardEscape => (
                    Box::new(|n| {
                        StepDf::from_point_masses(&[(int(n as i64), int(1))])
                            .expect("masses sum to one")
                    }),
                    StepDf::constant(int(0)).expect("constant level in [0, 1]"),
                ),
                DfFamilyDoc::Fixed { df } => {
                    let df = df.to_step_df().map_err(|e| e.to_string())?;
                    let fixed = df.clone();
                    (Box::new(move |_| fixed.clone()), df)
                }
            };
            let probes: Vec<Rat> = (-8..=8)
                .map(int)
                .chain([Rat::new(1.into(), 2.into()), Rat::new((-1).into(), 2.into())])
                .collect();
            let class = weak_limit_classify(family.as_ref(), &claimed, &probes)
                .map_err(|e| e.to_string())?;
            let doc = DfLimitReportDoc {
                limit: StepDfDoc::from(&claimed),
                class: DfClassDoc::from(&class),
            };
            emit(&render(&doc, cli.format.unwrap_or(Format::Json))?);
            Ok(EXIT_OK)
        }
        Command::Bernoulli { ref cmd } => match cmd {
            BernoulliCmd::Cylinder { law, p, beta, cyl } => {
                let tail_law = build_law(*law, p, beta)?;
                let bits = parse_bits(cyl)?;
                let cylinder = Cylinder::prefix(&bits);
                let probability = mixture_prob(&tail_law, &cylinder);
                #[derive(Serialize)]
                struct CylinderDoc {
                    law: String,
                    cylinder: String,
                    probability: String,
                }
                let doc = CylinderDoc {
                    law: law_name(*law).into(),
                    cylinder: cyl.clone(),
                    probability: format_rat(&probability),
                };
                emit(&render(&doc, cli.format.unwrap_or(Format::Json))?);
                Ok(EXIT_OK)
            }
            BernoulliCmd::Path { law, p, beta, jump, prefix, checkpoints, horizon, plot } => {
                let format = cli.format.unwrap_or(Format::Json);
                let prefix_bits = match prefix {
                    Some(text) => parse_bits(text)?,
                    None => Vec::new(),
                };
                match (checkpoints, horizon) {
                    (Some(cycles), None) => {
                        if *law != LawKind::Qstar {
                            return Err("exact checkpoints exist for --law qstar only".into());
                        }
                        if plot.is_some() {
                            return Err("--plot needs a simulated path; use --horizon".into());
                        }
                        let head_ones = prefix_bits.iter().filter(|&&b| b).count() as u64;
                        let rows = oscillation_checkpoints(*jump, head_ones, *cycles)
                            .map_err(|e| e.to_string())?;
                        #[derive(Serialize)]
                        struct CheckpointDoc {
                            cycle: u32,
                            trough_index: String,
                            trough_frequency: String,
                            peak_index: String,
                            peak_frequency: String,
                        }
                        for row in &rows {
                            let doc = CheckpointDoc {
                                cycle: row.cycle,
                                trough_index: row.trough_index.to_string(),
                                trough_frequency: format_rat(&row.trough_frequency),
                                peak_index: row.peak_index.to_string(),
                                peak_frequency: format_rat(&row.peak_frequency),
                            };
                            emit(&render(&doc, format)?);
                        }
                        Ok(EXIT_OK)
                    }
                    (None, horizon) => {
                        let horizon = horizon.unwrap_or(1024);
                        let tail_law = build_law(*law, p, beta)?;
                        let path = tail_frequency_path(
                            &tail_law,
                            &prefix_bits,
                            *jump,
                            horizon,
                            cli.seed,
                        )
                        .map_err(|e| e.to_string())?;
                        #[derive(Serialize)]
                        struct PathPointDoc {
                            k: u64,
                            ones: u64,
                            frequency: String,
                        }
                        for k in path_checkpoints(horizon) {
                            let doc = PathPointDoc {
                                k,
                                ones: path.ones_through(k),
                                frequency: format_rat(&path.frequency(k)),
                            };
                            emit(&render(&doc, format)?);
                        }
                        if let Some(file) = plot {
                            std::fs::write(file, svg_frequency_plot(&path))
                                .map_err(|e| format!("cannot write {}: {e}", file.display()))?;
                        }
                        Ok(EXIT_OK)
                    }
                    (Some(_), Some(_)) => {
                        Err("--checkpoints and --horizon are mutually exclusive".into())
                    }
                }
            }
        },
        Command::Cantelli { ref p, ref eps, n, m } => {
            let p = parse_rat(p).map_err(|e| e.to_string())?;
            let eps = parse_rat(eps).map_err(|e| e.to_string())?;
            let value = cantelli_probability(&p, &eps, n, m).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct CantelliDoc {
                probability: String,
            }
            let doc = CantelliDoc { probability: format_rat(&value) };
            emit(&render(&doc, cli.format.unwrap_or(Format::Json))?);
            Ok(EXIT_OK)
        }
        Command::Fisi {
            cmd: FisiCmd::Cf { phi, rate, slope, t, c, ref xi_grid, n, mc_samples },
        } => {
            let tol = cli.tol.unwrap_or(1e-10);
            if !(tol > 0.0) {
                return Err("--tol must be positive".into());
            }
            let grid = parse_grid(xi_grid)?;
            let char_fn: Box<dyn CharFn> = match phi {
                PhiKind::Gaussian => Box::new(GaussianCf),
                PhiKind::Poisson => Box::new(PoissonCf { rate }),
                PhiKind::Degenerate => Box::new(DegenerateCf { drift: slope }),
                PhiKind::CompoundPoisson => Box::new(CompoundPoissonCf { rate }),
            };
            let empirical: Option<Vec<EmpiricalCfRow>> = if mc_samples > 0 {
                let kind = match phi {
                    PhiKind::Gaussian => SamplerKind::Gaussian,
                    PhiKind::Poisson => SamplerKind::Poisson { rate },
                    PhiKind::Degenerate => SamplerKind::Degenerate { drift: slope },
                    PhiKind::CompoundPoisson => {
                        return Err(
                            "no sampler for compound-poisson; rerun with --mc-samples 0".into()
                        )
                    }
                };
                Some(
                    monte_carlo_cf_check(&kind, c, t, n, &grid, mc_samples, cli.seed, 5.0)
                        .map_err(|e| e.to_string())?,
                )
            } else {
                None
            };
            let format = cli.format.unwrap_or(Format::Tsv);
            let mut header = vec!["xi", "limit_re", "limit_im", "sum_re", "sum_im"];
            if empirical.is_some() {
                header.extend(["emp_re", "emp_im", "se_re", "se_im"]);
            }
            if format == Format::Tsv {
                emit(&header.join("\t"));
            }
            for (i, &xi) in grid.iter().enumerate() {
                let limit = limit_cf(char_fn.as_ref(), c, t, xi, tol).map_err(|e| e.to_string())?;
                let partial =
                    partial_sum_cf(char_fn.as_ref(), c, t, n, xi).map_err(|e| e.to_string())?;
                let mut cells = vec![
                    format!("{xi:.6}"),
                    fnum(limit.re),
                    fnum(limit.im),
                    fnum(partial.re),
                    fnum(partial.im),
                ];
                if let Some(rows) = &empirical {
                    let row = &rows[i];
                    cells.extend([
                        fnum(row.empirical.re),
                        fnum(row.empirical.im),
                        fnum(row.se_re),
                        fnum(row.se_im),
                    ]);
                }
                match format {
                    Format::Tsv => emit(&cells.join("\t")),
                    Format::Json => {
                        let pairs: Vec<String> = header
                            .iter()
                            .zip(&cells)
                            .map(|(k, v)| format!("\"{k}\":\"{v}\""))
                            .collect();
                        emit(&format!("{{{}}}", pairs.join(",")));
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn read(file: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))
}

/// Print one result line; a closed pipe (downstream `head`) ends the
/// run quietly instead of panicking.
fn emit(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(i32::from(EXIT_OK));
    }
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn half() -> Rat {
    Rat::new(1.into(), 2.into())
}

fn law_name(law: LawKind) -> &'static str {
    match law {
        LawKind::Q => "q",
        LawKind::Qstar => "qstar",
        LawKind::Qstarstar => "qstarstar",
    }
}

fn build_law(law: LawKind, p: &Option<String>, beta: &Option<String>) -> Result<TailLaw, String> {
    let parse_p = |text: &str| parse_rat(text).map_err(|e| e.to_string());
    match law {
        LawKind::Q | LawKind::Qstar => {
            if beta.is_some() {
                return Err("--beta applies to --law qstarstar only".into());
            }
            let p = parse_p(p.as_deref().ok_or("this law needs --p")?)?;
            if law == LawKind::Q { TailLaw::zero_tail(p) } else { TailLaw::factorial_tail(p) }
                .map_err(|e| e.to_string())
        }
        LawKind::Qstarstar => {
            let mixing = match (p, beta) {
                (Some(_), Some(_)) => return Err("give either --p or --beta, not both".into()),
                (Some(p), None) => MixingDf::PointMass(parse_p(p)?),
                (None, Some(ab)) => {
                    let parts: Vec<&str> = ab.split(',').collect();
                    let bad = || format!("--beta wants \"alpha,beta\", got {ab:?}");
                    if parts.len() != 2 {
                        return Err(bad());
                    }
                    let alpha: u64 = parts[0].trim().parse().map_err(|_| bad())?;
                    let beta: u64 = parts[1].trim().parse().map_err(|_| bad())?;
                    MixingDf::Beta { alpha, beta }
                }
                (None, None) => return Err("qstarstar needs --p or --beta".into()),
            };
            TailLaw::exchangeable(mixing).map_err(|e| e.to_string())
        }
    }
}

fn parse_bits(text: &str) -> Result<Vec<bool>, String> {
    text.split(',')
        .map(|tok| match tok.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(format!("bit must be 0 or 1, got {other:?}")),
        })
        .collect()
}

fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || format!("grid wants start:end:step, got {text:?}");
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || end < start {
        return Err(bad());
    }
    let mut grid = Vec::new();
    let mut k = 0u64;
    loop {
        let x = start + k as f64 * step;
        if x > end + step * 1e-9 {
            break;
        }
        grid.push(x);
        k += 1;
    }
    Ok(grid)
}

/// Doubling indices plus the endpoint, for compact path reports.
fn path_checkpoints(horizon: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1u64;
    while k < horizon {
        out.push(k);
        k *= 2;
    }
    out.push(horizon);
    out
}

fn fnum(x: f64) -> String {
    format!("{x:.12e}")
}

/// One result document, as a single JSON line or as flattened
/// tab-separated key-value rows.
fn render<T: Serialize>(doc: &T, format: Format) -> Result<String, String> {
    match format {
        Format::Json => Ok(to_json(doc)),
        Format::Tsv => {
            let value = serde_json::to_value(doc).map_err(|e| e.to_string())?;
            let mut rows = Vec::new();
            flatten("", &value, &mut rows);
            Ok(rows
                .into_iter()
                .map(|(k, v)| format!("{k}\t{v}"))
                .collect::<Vec<_>>()
                .join("\n"))
        }
    }
}

fn flatten(prefix: &str, value: &serde_json::Value, rows: &mut Vec<(String, String)>) {
    let key = |suffix: &str| {
        if prefix.is_empty() {
            suffix.to_string()
        } else {
            format!("{prefix}.{suffix}")
        }
    };
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, rows);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, rows);
            }
        }
        serde_json::Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

/// Frequency trajectory as a standalone SVG polyline.
fn svg_frequency_plot(path: &FrequencyPath) -> String {
    let (width, height, margin) = (800.0, 400.0, 45.0);
    let horizon = path.len();
    let stride = (horizon / 2048).max(1);
    let mut points = String::new();
    let mut k = 1;
    while k <= horizon {
        let x = margin + (k - 1) as f64 / (horizon - 1).max(1) as f64 * (width - 2.0 * margin);
        let f = path.frequency(k).to_f64().unwrap_or(0.0);
        let y = height - margin - f * (height - 2.0 * margin);
        points.push_str(&format!("{x:.2},{y:.2} "));
        if k == horizon {
            break;
        }
        k = (k + stride).min(horizon);
    }
    let x0 = margin;
    let x1 = width - margin;
    let y0 = height - margin;
    let y_at = |f: f64| height - margin - f * (height - 2.0 * margin);
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    ));
    for (f, label) in [(0.0, "0"), (0.5, "1/2"), (1.0, "1")] {
        let y = y_at(f);
        svg.push_str(&format!(
            "  <line x1=\"{x0}\" y1=\"{y:.2}\" x2=\"{x1}\" y2=\"{y:.2}\" stroke=\"#cccccc\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{label}</text>\n",
            x0 - 6.0,
            y + 4.0
        ));
    }
    svg.push_str(&format!(
        "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{x0}\" y1=\"{:.2}\" x2=\"{x0}\" y2=\"{y0}\" stroke=\"black\"/>\n",
        y_at(1.0)
    ));
    svg.push_str(&format!(
        "  <text x=\"{x1}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">k = {horizon}</text>\n",
        y0 + 16.0
    ));
    svg.push_str(&format!(
        "  <polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        points.trim_end()
    ));
    svg.push_str("</svg>\n");
    svg
}
