//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Everything a run does is determined by its [`RunConfig`], which JSON
//! reports echo back under `config`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::braid::{growth_rate_with, is_cyclic, BraidWord, GrowthOptions};
use crate::choreography::{
    load_trajectory, render_svg, save_trajectory, solve, validate, ChoreographyProblem, TrajectoryFile,
};
use crate::combinatorics::{
    class_count_formula, enumerate_compositions, equivalence_class, equivalence_classes, theta, theta_inverse,
    Composition, SignSequence,
};
use crate::error::Error;
use crate::extract::{default_epsilon, extract_crossings, verify_braid_type};
use crate::spectral::{classify, extremal_survey, stretch_factor, Classification};

pub const EXIT_BAD_INPUT: u8 = 2;
pub const EXIT_SOLVER_FAILURE: u8 = 3;
pub const EXIT_VALIDATION_FAILURE: u8 = 4;

const DEFAULT_TOL: f64 = 1e-10;
const DEFAULT_GRID: usize = 256;
const DEFAULT_SEED: u64 = 1;
const DEFAULT_TABLE_MAX: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Braid types and stretch factors of planar N-body simple choreographies.
#[derive(Clone, Debug, Parser, Serialize)]
#[command(name = "choreo", version)]
pub struct RunConfig {
    /// Root enclosure width for stretch factors; convergence tolerance for growth estimates.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Samples per unit time M.
    #[arg(long = "grid", value_name = "M", global = true, default_value_t = DEFAULT_GRID)]
    pub grid: usize,

    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    /// Output file; stdout when absent. For `solve` this is the trajectory file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for the initial loop of `solve`.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    /// Compositions of N-1, their sign sequences and the equivalence classes.
    Compositions { bodies: usize },
    /// Smallest and largest stretch factors for N = 3..=N_MAX.
    Table1 {
        #[arg(default_value_t = DEFAULT_TABLE_MAX)]
        n_max: usize,
    },
    /// Certified stretch factor of the braid of a composition such as `1,2`.
    Stretch { composition: String },
    /// Nielsen-Thurston type and stretch factor of a sign sequence such as `+-+`.
    Classify {
        #[arg(allow_hyphen_values = true)]
        omega: String,
    },
    /// Solves for the choreography with signs ω and writes it with an SVG plot.
    Solve {
        bodies: usize,
        #[arg(allow_hyphen_values = true)]
        omega: String,
    },
    /// Validates a trajectory file and checks its braid type.
    Verify { file: PathBuf },
    /// Prints the crossings and braid word read off a trajectory file.
    Extract { file: PathBuf },
    /// Growth rate of a braid word such as `s1 s2'` under its free group action.
    Growth {
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Strand count; defaults to the smallest that fits the word.
        #[arg(long)]
        strands: Option<usize>,
    },
}

/// A failed run: message plus process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SolverNonConvergence { .. } | Error::Collision { .. } | Error::GrowthNonConvergence { .. } => {
                EXIT_SOLVER_FAILURE
            }
            Error::AmbiguousCrossing { .. } => EXIT_VALIDATION_FAILURE,
            _ => EXIT_BAD_INPUT,
        };
        Self::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `std::env::args`, runs, prints errors to stderr.
pub fn main_entry() -> ExitCode {
    let config = RunConfig::parse();
    let stdout = std::io::stdout();
    match run(&config, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Runs one command, writing its report to `--out` or to `stdout`.
pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    if let Some(tol) = config.tol {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::new(
                EXIT_BAD_INPUT,
                format!("--tol must be positive, got {tol}"),
            ));
        }
    }
    let report = match &config.command {
        Command::Compositions { bodies } => cmd_compositions(config, *bodies)?,
        Command::Table1 { n_max } => cmd_table1(config, *n_max)?,
        Command::Stretch { composition } => cmd_stretch(config, composition)?,
        Command::Classify { omega } => cmd_classify(config, omega)?,
        Command::Solve { bodies, omega } => return cmd_solve(config, *bodies, omega, stdout),
        Command::Verify { file } => return cmd_verify(config, file, stdout),
        Command::Extract { file } => cmd_extract(config, file)?,
        Command::Growth { word, strands } => cmd_growth(config, word, *strands)?,
    };
    emit(config, &report, stdout)
}

fn emit(config: &RunConfig, report: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match &config.out {
        Some(path) => fs::write(path, report)?,
        None => stdout.write_all(report.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    config: &'a RunConfig,
    result: T,
}

fn json<T: Serialize>(config: &RunConfig, result: T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(&Envelope { config, result }).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn reject_csv(config: &RunConfig, command: &str) -> CliResult<()> {
    if config.format == Format::Csv {
        return Err(CliError::new(EXIT_BAD_INPUT, format!("{command} has no csv output")));
    }
    Ok(())
}

fn parse_omega(text: &str) -> CliResult<SignSequence> {
    text.parse::<SignSequence>().map_err(CliError::from)
}

fn tol_or(config: &RunConfig, default: f64) -> f64 {
    config.tol.unwrap_or(default)
}

#[derive(Serialize)]
struct CompositionRow {
    composition: Composition,
    omega: SignSequence,
}

#[derive(Serialize)]
struct ClassRow {
    representative: SignSequence,
    members: Vec<SignSequence>,
}

#[derive(Serialize)]
struct CompositionsReport {
    bodies: usize,
    compositions: Vec<CompositionRow>,
    classes: Vec<ClassRow>,
    class_count: u64,
    formula: u64,
}

fn cmd_compositions(config: &RunConfig, bodies: usize) -> CliResult<String> {
    let classes = equivalence_classes(bodies)?;
    let compositions = enumerate_compositions(bodies - 1)?
        .into_iter()
        .map(|m| {
            Ok(CompositionRow {
                omega: theta(&m)?,
                composition: m,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let report = CompositionsReport {
        bodies,
        compositions,
        class_count: classes.len() as u64,
        formula: class_count_formula(bodies),
        classes: classes
            .into_iter()
            .map(|(representative, members)| ClassRow {
                representative,
                members,
            })
            .collect(),
    };
    match config.format {
        Format::Json => json(config, report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["composition", "omega"]).map_err(Error::from)?;
            for row in &report.compositions {
                w.write_record([row.composition.to_string(), row.omega.to_string()])
                    .map_err(Error::from)?;
            }
            csv_string(w)
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "compositions of {} ({}):", bodies - 1, report.compositions.len()).unwrap();
            for row in &report.compositions {
                writeln!(s, "  {:<16} {}", row.composition.to_string(), row.omega).unwrap();
            }
            writeln!(s, "classes of sign sequences for N = {bodies}:").unwrap();
            for class in &report.classes {
                let members: Vec<String> = class.members.iter().map(ToString::to_string).collect();
                writeln!(s, "  {:<16} {}", class.representative.to_string(), members.join(" ")).unwrap();
            }
            writeln!(s, "class count {} (formula {})", report.class_count, report.formula).unwrap();
            Ok(s)
        }
    }
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = w.into_inner().map_err(|e| CliError::new(1, e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct Table1Row {
    bodies: usize,
    argmin: Vec<Composition>,
    lambda_min: f64,
    argmax: Vec<Composition>,
    lambda_max: f64,
}

fn join_compositions(ms: &[Composition]) -> String {
    ms.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_table1(config: &RunConfig, n_max: usize) -> CliResult<String> {
    if n_max < 3 {
        return Err(CliError::new(
            EXIT_BAD_INPUT,
            format!("table needs N_MAX >= 3, got {n_max}"),
        ));
    }
    let tol = tol_or(config, DEFAULT_TOL);
    let rows = (3..=n_max)
        .map(|n| {
            let s = extremal_survey(n, tol)?;
            Ok(Table1Row {
                bodies: n,
                argmin: s.minimizers,
                lambda_min: s.min.lambda,
                argmax: s.maximizers,
                lambda_max: s.max.lambda,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    match config.format {
        Format::Json => json(config, rows),
        Format::Csv | Format::Text => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["N", "argmin", "lambda_min", "argmax", "lambda_max"])
                .map_err(Error::from)?;
            for r in &rows {
                w.write_record([
                    r.bodies.to_string(),
                    join_compositions(&r.argmin),
                    format!("{:.10}", r.lambda_min),
                    join_compositions(&r.argmax),
                    format!("{:.10}", r.lambda_max),
                ])
                .map_err(Error::from)?;
            }
            csv_string(w)
        }
    }
}

fn cmd_stretch(config: &RunConfig, text: &str) -> CliResult<String> {
    reject_csv(config, "stretch")?;
    let m: Composition = text.parse()?;
    let report = stretch_factor(&m, tol_or(config, DEFAULT_TOL))?;
    match config.format {
        Format::Json => json(config, report),
        _ => {
            let mut s = String::new();
            writeln!(s, "composition   {}", report.composition).unwrap();
            writeln!(s, "omega         {}", theta(&m)?).unwrap();
            match (&report.polynomial, &report.enclosure) {
                (Some(f), Some(e)) => {
                    writeln!(s, "type          pseudo-Anosov").unwrap();
                    writeln!(s, "polynomial    {f}").unwrap();
                    writeln!(s, "lambda        {:.12}", report.lambda).unwrap();
                    writeln!(s, "enclosure     [{:.15}, {:.15}]", e.lo, e.hi).unwrap();
                }
                _ => writeln!(s, "type          periodic\nlambda        1").unwrap(),
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClassifyReport {
    omega: SignSequence,
    class: Vec<SignSequence>,
    composition: Composition,
    classification: Classification,
    lambda: f64,
}

fn cmd_classify(config: &RunConfig, text: &str) -> CliResult<String> {
    reject_csv(config, "classify")?;
    let omega = parse_omega(text)?;
    let representative = if omega.is_positive_led() {
        omega.clone()
    } else {
        omega.negate()
    };
    let composition = theta_inverse(&representative)?;
    let report = ClassifyReport {
        class: equivalence_class(&omega),
        classification: classify(&omega),
        lambda: stretch_factor(&composition, tol_or(config, DEFAULT_TOL))?.lambda,
        composition,
        omega,
    };
    match config.format {
        Format::Json => json(config, report),
        _ => {
            let class: Vec<String> = report.class.iter().map(ToString::to_string).collect();
            let kind = match report.classification {
                Classification::Periodic => "periodic",
                Classification::PseudoAnosov => "pseudo-Anosov",
            };
            Ok(format!(
                "omega         {}\nclass         {}\ncomposition   {}\ntype          {kind}\nlambda        {:.12}\n",
                report.omega,
                class.join(" "),
                report.composition,
                report.lambda
            ))
        }
    }
}

/// Default trajectory file name for `solve` without `--out`.
pub fn default_trajectory_path(omega: &SignSequence, grid: usize) -> PathBuf {
    let spelled: String = omega
        .to_string()
        .chars()
        .map(|c| if c == '+' { 'p' } else { 'm' })
        .collect();
    PathBuf::from(format!("choreo-{}-{spelled}-M{grid}.json", omega.bodies()))
}

fn cmd_solve(config: &RunConfig, bodies: usize, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    reject_csv(config, "solve")?;
    let omega = parse_omega(text)?;
    if omega.bodies() != bodies {
        return Err(CliError::new(
            EXIT_BAD_INPUT,
            format!(
                "omega {omega} has {} signs, N = {bodies} needs {}",
                omega.signs().len(),
                bodies - 1
            ),
        ));
    }
    let problem = ChoreographyProblem::new(omega.clone(), config.grid)?;
    let trajectory = solve(&problem, config.seed)?;
    let report = validate(&trajectory.path, &problem)?;
    let passed = report.passed;
    let failures = report.failures();
    let file = TrajectoryFile::new(&trajectory, Some(report));
    let out = config
        .out
        .clone()
        .unwrap_or_else(|| default_trajectory_path(&omega, config.grid));
    save_trajectory(&out, &file)?;
    let svg_path = out.with_extension("svg");
    fs::write(&svg_path, render_svg(&trajectory.path))?;

    let summary = match config.format {
        Format::Json => json(
            config,
            serde_json::json!({
                "trajectory": out,
                "svg": svg_path,
                "action": trajectory.action,
                "gradientNorm": trajectory.gradient_norm,
                "validationPassed": passed,
            }),
        )?,
        _ => format!(
            "wrote {} and {}\naction {:.12}  gradient norm {:.3e}  validation {}\n",
            out.display(),
            svg_path.display(),
            trajectory.action,
            trajectory.gradient_norm,
            if passed { "passed" } else { "FAILED" }
        ),
    };
    stdout.write_all(summary.as_bytes())?;
    if !passed {
        return Err(CliError::new(
            EXIT_VALIDATION_FAILURE,
            format!("validation failed: {}", failures.join(", ")),
        ));
    }
    Ok(())
}

fn load(file: &Path) -> CliResult<TrajectoryFile> {
    load_trajectory(file).map_err(|e| CliError::new(EXIT_BAD_INPUT, format!("{}: {e}", file.display())))
}

fn cmd_verify(config: &RunConfig, file: &Path, stdout: &mut dyn Write) -> CliResult<()> {
    reject_csv(config, "verify")?;
    let stored = load(file)?;
    let path = stored.path()?;
    let problem = ChoreographyProblem::new(stored.omega.clone(), stored.samples_per_unit)?;
    let validation = validate(&path, &problem)?;
    let braid = verify_braid_type(&path, &stored.omega)?;
    let mut failures: Vec<String> = validation.failures().into_iter().map(String::from).collect();
    failures.extend(braid.mismatches.iter().cloned());
    let passed = validation.passed && braid.passed;

    let report = match config.format {
        Format::Json => json(
            config,
            serde_json::json!({ "validation": validation, "braid": braid, "passed": passed }),
        )?,
        _ => {
            let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
            let mut s = String::new();
            writeln!(
                s,
                "omega           {}  (N = {}, M = {})",
                stored.omega, stored.bodies, stored.samples_per_unit
            )
            .unwrap();
            writeln!(
                s,
                "residual        {:.3e} <= {:.3e}  {}",
                validation.max_residual,
                validation.residual_tol,
                mark(validation.residual_ok)
            )
            .unwrap();
            writeln!(
                s,
                "energy spread   {:.3e} <= {:.3e}  {}",
                validation.energy_spread,
                validation.energy_tol,
                mark(validation.energy_ok)
            )
            .unwrap();
            writeln!(
                s,
                "separation      {:.6}  {}",
                validation.min_separation,
                mark(validation.separation_ok)
            )
            .unwrap();
            writeln!(s, "signs           {}", mark(validation.omega_ok)).unwrap();
            writeln!(s, "monotone        {}", mark(validation.monotone_ok)).unwrap();
            writeln!(s, "endpoints       {}", mark(validation.endpoints_ok)).unwrap();
            writeln!(s, "axis crossings  {}", mark(validation.crossings_ok)).unwrap();
            writeln!(s, "symmetry        {}", mark(validation.symmetry_ok)).unwrap();
            let kind = match braid.classification {
                Classification::Periodic => "periodic",
                Classification::PseudoAnosov => "pseudo-Anosov",
            };
            writeln!(s, "type            {kind}").unwrap();
            writeln!(s, "extracted       {}", braid.extracted).unwrap();
            writeln!(s, "expected        {}  {}", braid.expected, mark(braid.literal_match)).unwrap();
            writeln!(
                s,
                "conjugate       {} ~ {}  {}",
                braid.extracted,
                braid.alpha,
                mark(braid.conjugacy_match)
            )
            .unwrap();
            let growth = braid.growth_rate.map_or("none".into(), |g| format!("{g:.6}"));
            writeln!(
                s,
                "growth          {growth} vs lambda {:.9}  {}",
                braid.lambda,
                mark(braid.growth_match)
            )
            .unwrap();
            writeln!(s, "full stretch    {:.9}", braid.full_stretch).unwrap();
            writeln!(s, "{}", if passed { "PASSED" } else { "FAILED" }).unwrap();
            s
        }
    };
    emit(config, &report, stdout)?;
    if !passed {
        return Err(CliError::new(
            EXIT_VALIDATION_FAILURE,
            format!("checks failed: {}", failures.join("; ")),
        ));
    }
    Ok(())
}

fn cmd_extract(config: &RunConfig, file: &Path) -> CliResult<String> {
    let stored = load(file)?;
    let path = stored.path()?;
    let extraction = extract_crossings(&path, default_epsilon(&path))?;
    match config.format {
        Format::Json => json(config, &extraction),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["time", "position", "sign", "left_strand", "right_strand"])
                .map_err(Error::from)?;
            for e in &extraction.events {
                w.write_record([
                    format!("{:.12}", e.time),
                    e.position.to_string(),
                    e.sign.to_string(),
                    e.left_strand.to_string(),
                    e.right_strand.to_string(),
                ])
                .map_err(Error::from)?;
            }
            csv_string(w)
        }
        Format::Text => {
            let mut s = String::new();
            for e in &extraction.events {
                writeln!(
                    s,
                    "t = {:.10}  strands {} over {}  s{}{}",
                    e.time,
                    if e.sign < 0 { e.left_strand } else { e.right_strand },
                    if e.sign < 0 { e.right_strand } else { e.left_strand },
                    e.position,
                    if e.sign < 0 { "'" } else { "" }
                )
                .unwrap();
            }
            writeln!(s, "word {}", extraction.word).unwrap();
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct GrowthReport {
    word: String,
    strands: usize,
    cyclic_permutation: bool,
    rate: f64,
    iterations: usize,
    bounded: bool,
    extrapolated: bool,
}

fn cmd_growth(config: &RunConfig, text: &str, strands: Option<usize>) -> CliResult<String> {
    reject_csv(config, "growth")?;
    let word = match strands {
        Some(n) => BraidWord::parse(text, n)?,
        None => text.parse::<BraidWord>()?,
    };
    let options = GrowthOptions {
        tol: tol_or(config, GrowthOptions::default().tol),
        ..GrowthOptions::default()
    };
    let g = growth_rate_with(&word, options)?;
    let report = GrowthReport {
        word: word.to_string(),
        strands: word.strands(),
        cyclic_permutation: is_cyclic(&word),
        rate: g.rate,
        iterations: g.iterations,
        bounded: g.bounded,
        extrapolated: g.extrapolated,
    };
    match config.format {
        Format::Json => json(config, report),
        _ => Ok(format!(
            "word {}  (B_{})\ngrowth rate {:.9}  after {} iterations{}{}\n",
            report.word,
            report.strands,
            report.rate,
            report.iterations,
            if report.bounded { ", bounded" } else { "" },
            if report.extrapolated { ", extrapolated" } else { "" }
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (CliResult<()>, String) {
        let config = RunConfig::try_parse_from(std::iter::once("choreo").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let r = run(&config, &mut out);
        (r, String::from_utf8(out).unwrap())
    }

    #[test]
    fn omega_accepts_leading_hyphen() {
        let (r, out) = run_args(&["classify", "-+-"]);
        r.unwrap();
        assert!(out.contains("composition   (1,1,1)"), "{out}");
    }

    #[test]
    fn table1_csv_header() {
        let (r, out) = run_args(&["table1", "4"]);
        r.unwrap();
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("N,argmin,lambda_min,argmax,lambda_max"));
        assert!(lines.next().unwrap().starts_with("3,\"(1,1)\",2.618"));
    }

    #[test]
    fn compositions_counts_classes() {
        let (r, out) = run_args(&["compositions", "5"]);
        r.unwrap();
        assert!(out.contains("compositions of 4 (8)"));
        assert!(out.contains("class count 6 (formula 6)"));
    }

    #[test]
    fn bad_input_exit_code() {
        let (r, _) = run_args(&["stretch", "1,x"]);
        assert_eq!(r.unwrap_err().code, EXIT_BAD_INPUT);
        let (r, _) = run_args(&["solve", "4", "+-"]);
        assert_eq!(r.unwrap_err().code, EXIT_BAD_INPUT);
        let (r, _) = run_args(&["--tol=-1", "stretch", "1,2"]);
        assert_eq!(r.unwrap_err().code, EXIT_BAD_INPUT);
    }

    #[test]
    fn growth_of_periodic_word_is_bounded() {
        let (r, out) = run_args(&["--format", "json", "growth", "s1 s2"]);
        r.unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["bounded"], true);
        assert_eq!(v["config"]["command"]["name"], "growth");
    }

    #[test]
    fn json_output_is_deterministic() {
        let a = run_args(&["--format", "json", "table1", "6"]).1;
        let b = run_args(&["--format", "json", "table1", "6"]).1;
        assert_eq!(a, b);
    }
}
