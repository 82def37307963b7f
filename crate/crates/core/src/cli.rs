//! Command-line front end.
//!
//! Exit codes: `0` when a report was produced (disagreement between the two
//! routes is report content, not a failure), `2` for parameters outside the
//! real-energy region or otherwise invalid input, `3` when the Bethe
//! multistart found no solution at all.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bethe::{self, BetheLevelReport, SeedStrategy};
use crate::level::QesLevel;
use crate::lie::{self, LieLevelReport};
use crate::oracle::{self, FdConfig, FdSpectrum};
use crate::potential::{self, uniform_grid, PotentialParams};
use crate::reduction::{assemble_wavefunction, reduce};
use crate::{fmt_sig17, QesError, TABLE_SHAPE};

pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

/// Two values are paired across methods when they agree to this relative
/// tolerance.
pub const PAIRING_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "qes",
    version,
    about = "Quasi-exactly solvable levels of the hyperbolic double-well potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Bethe,
    Lie,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Shape {
    #[arg(long, default_value_t = TABLE_SHAPE.0, allow_negative_numbers = true)]
    pub v1: f64,
    #[arg(long, default_value_t = TABLE_SHAPE.1.to_string(), allow_negative_numbers = true)]
    pub v3: String,
    /// Decimal or rational, e.g. `0.25` or `1/4`.
    #[arg(long, default_value = "1/4", allow_negative_numbers = true)]
    pub g: String,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Output {
    /// Destination path, `-` for standard output.
    #[arg(long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy and admissible v2 values of one level.
    Solve {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Generated Newton starting configurations for the Bethe route.
        #[arg(long, default_value_t = 240)]
        starts: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Levels n = 0..3 at v1 = 0.09, v3 = 10, g = 1/4 by both routes.
    Table1 {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Both routes plus the finite-difference oracle for n = 0..n_max.
    CrossCheck {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        out: Output,
    },
    /// Finite-difference spectrum, optionally with the residual scan of one
    /// level's polynomial solution at the given v2.
    Oracle {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, allow_negative_numbers = true)]
        v2: f64,
        #[arg(long, default_value_t = 8.0)]
        x_max: f64,
        #[arg(long, default_value_t = 4000)]
        n_points: usize,
        #[arg(long, default_value_t = 4)]
        n_eigen: usize,
        /// Level whose polynomial solution is checked pointwise on [-3, 3].
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Potential sampled on a uniform grid, CSV `x,V`.
    PlotPotential {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, allow_negative_numbers = true)]
        v2: f64,
        #[arg(long, default_value_t = -4.0, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long, default_value_t = 401)]
        n_points: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Quantized energies for n = 0..n_max, CSV `n,E`.
    PlotSpectrum {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[command(flatten)]
        out: Output,
    },
}

/// Failure with its process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<QesError> for CliError {
    fn from(e: QesError) -> Self {
        Self::invalid(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

/// Parses a decimal or `p/q` rational.
pub fn parse_number(s: &str) -> Result<f64, CliError> {
    let bad = || CliError::invalid(format!("cannot parse `{s}` as a number"));
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

/// Decimal with `digits` significant digits.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn shape_values(shape: &Shape) -> Result<(f64, f64, f64), CliError> {
    let v3 = parse_number(&shape.v3)?;
    let g = parse_number(&shape.g)?;
    if !shape.v1.is_finite() {
        return Err(CliError::invalid("v1 must be finite"));
    }
    Ok((shape.v1, v3, g))
}

/// Exit code 2 outside the real-energy region.
fn require_valid(v1: f64, v3: f64, g: f64) -> Result<(), CliError> {
    let report = potential::validate(&PotentialParams::new(v1, 0.0, v3, g))?;
    if !report.is_valid() {
        return Err(CliError::invalid(format!(
            "parameters outside the real-energy region: need v1 < 1/4 (margin {}) and v3 > -(1+g) (margin {})",
            report.v1_margin, report.v3_margin
        )));
    }
    Ok(())
}

/// One entry of a method-to-method comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct V2Pair {
    pub bethe: Option<f64>,
    pub lie: Option<f64>,
    pub delta: Option<f64>,
}

/// Pairs every Lie value with the nearest unused Bethe value within
/// [`PAIRING_TOL`]; leftovers on either side are unpaired.
pub fn pair_levels(bethe: &QesLevel, lie: &QesLevel) -> Vec<V2Pair> {
    let mut used = vec![false; bethe.v2_values.len()];
    let mut pairs = Vec::new();
    for &l in &lie.v2_values {
        let best = bethe
            .v2_values
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, &b)| (i, (b - l).abs()))
            .filter(|&(_, d)| d <= PAIRING_TOL * l.abs().max(1.0))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) => {
                used[i] = true;
                pairs.push(V2Pair {
                    bethe: Some(bethe.v2_values[i]),
                    lie: Some(l),
                    delta: Some(d),
                });
            }
            None => pairs.push(V2Pair {
                bethe: None,
                lie: Some(l),
                delta: None,
            }),
        }
    }
    for (i, &b) in bethe.v2_values.iter().enumerate() {
        if !used[i] {
            pairs.push(V2Pair {
                bethe: Some(b),
                lie: None,
                delta: None,
            });
        }
    }
    pairs.sort_by(|a, b| {
        let ka = a.lie.or(a.bethe).unwrap_or(f64::NAN);
        let kb = b.lie.or(b.bethe).unwrap_or(f64::NAN);
        ka.total_cmp(&kb)
    });
    pairs
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub n: usize,
    #[serde(rename = "E")]
    pub energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bethe: Option<BetheLevelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieLevelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Vec<V2Pair>>,
}

/// Runs the selected route(s) for one level.
pub fn cmd_solve(
    n: usize,
    v1: f64,
    v3: f64,
    g: f64,
    method: MethodArg,
    starts: usize,
) -> Result<SolveReport, CliError> {
    require_valid(v1, v3, g)?;
    let energy = bethe::energy(n, v1, v3, g)?;
    let lie = match method {
        MethodArg::Lie | MethodArg::Both => Some(lie::solve_level(n, v1, v3, g)?),
        MethodArg::Bethe => None,
    };
    let bethe = match method {
        MethodArg::Bethe | MethodArg::Both => {
            let strategy = SeedStrategy {
                starts,
                ..SeedStrategy::default()
            };
            let report = bethe::solve_level(n, v1, v3, g, &strategy)?;
            if report.did_not_converge() {
                return Err(CliError {
                    code: EXIT_NO_CONVERGENCE,
                    message: format!(
                        "Bethe multistart: none of {} starts converged at n = {n}",
                        report.starts
                    ),
                });
            }
            Some(report)
        }
        MethodArg::Lie => None,
    };
    let comparison = match (&bethe, &lie) {
        (Some(b), Some(l)) => Some(pair_levels(&b.level(), &l.level())),
        _ => None,
    };
    Ok(SolveReport {
        n,
        energy,
        bethe,
        lie,
        comparison,
    })
}

impl SolveReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}", self.n);
        let _ = writeln!(out, "E = {}", fmt_sig(self.energy, 10));
        let list = |level: QesLevel| {
            level
                .v2_values
                .iter()
                .map(|v| fmt_sig(*v, 10))
                .collect::<Vec<_>>()
                .join(" ")
        };
        if let Some(b) = &self.bethe {
            let _ = writeln!(out, "v2 (Bethe) = {}", list(b.level()));
        }
        if let Some(l) = &self.lie {
            let _ = writeln!(out, "v2 (Lie)   = {}", list(l.level()));
        }
        if let Some(pairs) = &self.comparison {
            for p in pairs {
                let _ = writeln!(
                    out,
                    "  {:>18} {:>18} {:>12}",
                    cell(p.bethe),
                    cell(p.lie),
                    p.delta.map_or("-".to_string(), |d| format!("{d:.3e}"))
                );
            }
        }
        out
    }
}

fn cell(v: Option<f64>) -> String {
    v.map_or("MISSING".to_string(), |x| fmt_sig(x, 10))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub n: usize,
    #[serde(rename = "E")]
    pub energy: f64,
    pub bethe: Vec<f64>,
    pub lie: Vec<f64>,
    pub pairs: Vec<V2Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1 {
    pub v1: f64,
    pub v3: f64,
    pub g: f64,
    pub rows: Vec<Table1Row>,
}

/// Levels `n = 0..=3` at `v1 = 0.09, v3 = 10, g = 1/4`.
pub fn cmd_table1() -> Result<Table1, CliError> {
    let (v1, v3, g) = TABLE_SHAPE;
    let mut rows = Vec::new();
    for n in 0..=3 {
        let report = cmd_solve(
            n,
            v1,
            v3,
            g,
            MethodArg::Both,
            SeedStrategy::default().starts,
        )?;
        let bethe = report
            .bethe
            .as_ref()
            .map(|b| b.level())
            .expect("both methods");
        let lie = report
            .lie
            .as_ref()
            .map(|l| l.level())
            .expect("both methods");
        rows.push(Table1Row {
            n,
            energy: report.energy,
            pairs: pair_levels(&bethe, &lie),
            bethe: bethe.v2_values,
            lie: lie.v2_values,
        });
    }
    Ok(Table1 { v1, v3, g, rows })
}

impl Table1 {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "QES levels for v1 = {}, v3 = {}, g = {}",
            self.v1, self.v3, self.g
        );
        let _ = writeln!(
            out,
            "{:>2} {:>14} {:>18} {:>18} {:>12}",
            "n", "E", "v2 (Bethe)", "v2 (Lie)", "|dv2|"
        );
        for row in &self.rows {
            for (i, p) in row.pairs.iter().enumerate() {
                let (n, e) = if i == 0 {
                    (row.n.to_string(), fmt_sig(row.energy, 10))
                } else {
                    (String::new(), String::new())
                };
                let _ = writeln!(
                    out,
                    "{:>2} {:>14} {:>18} {:>18} {:>12}",
                    n,
                    e,
                    cell(p.bethe),
                    cell(p.lie),
                    p.delta.map_or("-".to_string(), |d| format!("{d:.3e}"))
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub v2: f64,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheckLevel {
    pub n: usize,
    #[serde(rename = "E")]
    pub energy: f64,
    pub bethe: Vec<f64>,
    pub lie: Vec<f64>,
    pub pairs: Vec<V2Pair>,
    /// Every Bethe value has a Lie partner within 1e-8.
    pub bethe_subset_of_lie: bool,
    pub residuals: Vec<OracleCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundStateCheck {
    pub v2: f64,
    pub expected: f64,
    pub fd_lowest: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheckReport {
    pub v1: f64,
    pub v3: f64,
    pub g: f64,
    pub levels: Vec<CrossCheckLevel>,
    pub ground_state: Vec<GroundStateCheck>,
}

fn residual_grid() -> Vec<f64> {
    uniform_grid(-3.0, 3.0, 241).expect("static grid")
}

/// Max Schrödinger residual of the degree-`n` polynomial solution at `v2`.
pub fn level_residual(n: usize, v1: f64, v2: f64, v3: f64, g: f64) -> Result<f64, CliError> {
    let params = PotentialParams::new(v1, v2, v3, g);
    let energy = bethe::energy(n, v1, v3, g)?;
    let coeffs = reduce(&params, energy)?;
    let a = lie::polynomial_coefficients(n, &coeffs, coeffs.sigma);
    let wf = assemble_wavefunction(&params, &a)?;
    Ok(oracle::ode_residual(&params, energy, &wf, &residual_grid())?.max_residual)
}

pub fn cmd_cross_check(
    n_max: usize,
    v1: f64,
    v3: f64,
    g: f64,
) -> Result<CrossCheckReport, CliError> {
    require_valid(v1, v3, g)?;
    let mut levels = Vec::new();
    for n in 0..=n_max {
        let lie = lie::solve_level(n, v1, v3, g)?.level();
        let bethe = bethe::solve_level(n, v1, v3, g, &SeedStrategy::default())?.level();
        let mut residuals = Vec::new();
        for &v2 in &lie.v2_values {
            residuals.push(OracleCheck {
                v2,
                max_residual: level_residual(n, v1, v2, v3, g)?,
            });
        }
        levels.push(CrossCheckLevel {
            n,
            energy: lie.energy,
            bethe_subset_of_lie: bethe.is_subset_of(&lie, 1e-8),
            pairs: pair_levels(&bethe, &lie),
            bethe: bethe.v2_values,
            lie: lie.v2_values,
            residuals,
        });
    }
    let mut ground_state = Vec::new();
    if let Some(level0) = levels.first() {
        for &v2 in &level0.lie {
            let spectrum = oracle::fd_eigenvalues(
                &PotentialParams::new(v1, v2, v3, g),
                &FdConfig {
                    n_eigen: 1,
                    ..FdConfig::default()
                },
            )?;
            ground_state.push(GroundStateCheck {
                v2,
                expected: level0.energy,
                fd_lowest: spectrum.eigenvalues[0],
                delta: (spectrum.eigenvalues[0] - level0.energy).abs(),
            });
        }
    }
    Ok(CrossCheckReport {
        v1,
        v3,
        g,
        levels,
        ground_state,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub params: PotentialParams,
    pub config: FdConfig,
    #[serde(flatten)]
    pub spectrum: FdSpectrum,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<LevelResidual>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelResidual {
    pub n: usize,
    #[serde(rename = "E")]
    pub energy: f64,
    pub max_residual: f64,
    #[serde(skip)]
    pub csv: String,
}

pub fn cmd_oracle(
    params: PotentialParams,
    cfg: FdConfig,
    n: Option<usize>,
) -> Result<OracleReport, CliError> {
    potential::validate(&params)?;
    let spectrum = oracle::fd_eigenvalues(&params, &cfg)?;
    let level = match n {
        Some(n) => {
            require_valid(params.v1, params.v3, params.g)?;
            let energy = bethe::energy(n, params.v1, params.v3, params.g)?;
            let coeffs = reduce(&params, energy)?;
            let a = lie::polynomial_coefficients(n, &coeffs, coeffs.sigma);
            let wf = assemble_wavefunction(&params, &a)?;
            let scan = oracle::ode_residual(&params, energy, &wf, &residual_grid())?;
            Some(LevelResidual {
                n,
                energy,
                max_residual: scan.max_residual,
                csv: scan.to_csv(),
            })
        }
        None => None,
    };
    Ok(OracleReport {
        params,
        config: cfg,
        spectrum,
        level,
    })
}

pub fn cmd_plot_potential(
    params: PotentialParams,
    x_min: f64,
    x_max: f64,
    n_points: usize,
) -> Result<String, CliError> {
    potential::validate(&params)?;
    Ok(potential::sample_grid(&params, x_min, x_max, n_points)?.to_csv())
}

pub fn cmd_plot_spectrum(v1: f64, v3: f64, g: f64, n_max: usize) -> Result<String, CliError> {
    require_valid(v1, v3, g)?;
    let mut out = String::from("n,E\n");
    for n in 0..=n_max {
        let _ = writeln!(out, "{n},{}", fmt_sig17(bethe::energy(n, v1, v3, g)?));
    }
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

/// Executes a parsed command and returns the rendered output together with
/// its destination.
pub fn run(cli: &Cli) -> Result<(String, PathBuf), CliError> {
    match &cli.command {
        Command::Solve {
            n,
            shape,
            method,
            starts,
            format,
            out,
        } => {
            let (v1, v3, g) = shape_values(shape)?;
            let report = cmd_solve(*n, v1, v3, g, *method, *starts)?;
            let text = match format {
                Format::Json => to_json(&report),
                Format::Text => report.render_text(),
                Format::Csv => return Err(CliError::invalid("solve supports json or text output")),
            };
            Ok((text, out.output.clone()))
        }
        Command::Table1 { format, out } => {
            let table = cmd_table1()?;
            let text = match format {
                Format::Json => to_json(&table),
                Format::Text => table.render_text(),
                Format::Csv => {
                    return Err(CliError::invalid("table1 supports json or text output"))
                }
            };
            Ok((text, out.output.clone()))
        }
        Command::CrossCheck { n_max, shape, out } => {
            let (v1, v3, g) = shape_values(shape)?;
            Ok((
                to_json(&cmd_cross_check(*n_max, v1, v3, g)?),
                out.output.clone(),
            ))
        }
        Command::Oracle {
            shape,
            v2,
            x_max,
            n_points,
            n_eigen,
            n,
            format,
            out,
        } => {
            let (v1, v3, g) = shape_values(shape)?;
            let cfg = FdConfig {
                x_max: *x_max,
                n_points: *n_points,
                n_eigen: *n_eigen,
            };
            let report = cmd_oracle(PotentialParams::new(v1, *v2, v3, g), cfg, *n)?;
            let text = match format {
                Format::Json | Format::Text => to_json(&report),
                Format::Csv => match &report.level {
                    Some(level) => level.csv.clone(),
                    None => return Err(CliError::invalid("csv output needs --n")),
                },
            };
            Ok((text, out.output.clone()))
        }
        Command::PlotPotential {
            shape,
            v2,
            x_min,
            x_max,
            n_points,
            out,
        } => {
            let (v1, v3, g) = shape_values(shape)?;
            let csv = cmd_plot_potential(
                PotentialParams::new(v1, *v2, v3, g),
                *x_min,
                *x_max,
                *n_points,
            )?;
            Ok((csv, out.output.clone()))
        }
        Command::PlotSpectrum { shape, n_max, out } => {
            let (v1, v3, g) = shape_values(shape)?;
            Ok((cmd_plot_spectrum(v1, v3, g, *n_max)?, out.output.clone()))
        }
    }
}

/// Parses `args`, runs the command, writes its output, and returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok((text, dest)) => {
            let written = if dest.as_os_str() == "-" {
                std::io::stdout().write_all(text.as_bytes())
            } else {
                std::fs::write(&dest, text)
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", dest.display());
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_parsing() {
        assert_eq!(parse_number("1/4").unwrap(), 0.25);
        assert_eq!(parse_number("0.25").unwrap(), 0.25);
        assert_eq!(parse_number("-3").unwrap(), -3.0);
        assert!(parse_number("1/0").is_err());
        assert!(parse_number("abc").is_err());
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(-8.531128874149275, 10), "-8.531128874");
        assert_eq!(fmt_sig(-24.01, 10), "-24.01000000");
        assert_eq!(fmt_sig(-0.4688711258507, 10), "-0.4688711259");
        assert_eq!(fmt_sig(0.0, 10), "0");
    }

    #[test]
    fn pairing_marks_missing() {
        use crate::level::Method;
        let lie = QesLevel::new(3, -24.01, vec![-36.0, -26.4, -9.0, 17.4], Method::Lie);
        let bethe = QesLevel::new(3, -24.01, vec![-26.4, -9.0, 17.4], Method::Bethe);
        let pairs = pair_levels(&bethe, &lie);
        assert_eq!(pairs.len(), 4);
        assert_eq!(pairs[0].bethe, None);
        assert_eq!(pairs[0].lie, Some(-36.0));
        assert!(pairs[1..].iter().all(|p| p.delta == Some(0.0)));
    }

    #[test]
    fn invalid_parameters_exit_two() {
        let err = cmd_solve(0, 0.5, 10.0, 0.25, MethodArg::Both, 10).unwrap_err();
        assert_eq!(err.code, EXIT_INVALID);
        let err = cmd_plot_spectrum(0.09, -3.0, 0.25, 2).unwrap_err();
        assert_eq!(err.code, EXIT_INVALID);
    }

    #[test]
    fn no_starts_means_no_convergence() {
        let err = cmd_solve(2, 0.09, 10.0, 0.25, MethodArg::Bethe, 0).unwrap_err();
        assert_eq!(err.code, EXIT_NO_CONVERGENCE);
        // degree zero needs no iteration
        assert!(cmd_solve(0, 0.09, 10.0, 0.25, MethodArg::Bethe, 0).is_ok());
    }
}
