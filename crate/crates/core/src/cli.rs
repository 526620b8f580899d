//! Problem files, run configuration and report output for the `solve`
//! command.
//!
//! A problem file is TOML (or JSON when the extension is `.json`):
//!
//! ```toml
//! beta = "3/4"          # exact fraction, 1/2 < beta <= 1
//! A = 1.0               # u(0)
//! g = [0.0, 1.0]        # g(u) coefficients, lowest degree first
//!
//! [[f]]                 # f(t) = sum of c * t^r
//! c = 1.0
//! r = "0/1"
//!
//! # optional run settings, overridden by command-line flags
//! order = 64
//! tmax = 1.0
//! points = 101
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::algebra::Monomial;
use crate::oracle::{geometric_points, residual, ResidualReport};
use crate::order::RationalOrder;
use crate::solver::{choose_grid, solve, ProblemSpec, SeriesSolution};

pub const DEFAULT_ORDER: usize = 64;
pub const DEFAULT_TMAX: f64 = 1.0;
pub const DEFAULT_POINTS: usize = 101;
pub const RESIDUAL_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => bail!("unknown format {other:?}, expected csv or json"),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub order: usize,
    pub t_max: f64,
    pub grid_points: usize,
    pub output_dir: PathBuf,
    pub formats: Vec<Format>,
}

impl RunConfig {
    pub fn new(problem: ProblemSpec) -> Self {
        RunConfig {
            problem,
            order: DEFAULT_ORDER,
            t_max: DEFAULT_TMAX,
            grid_points: DEFAULT_POINTS,
            output_dir: PathBuf::from("out"),
            formats: vec![Format::Csv],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let min = self.problem.min_truncation()?;
        if self.order < min {
            bail!(
                "order {} too small for beta = {}: need at least {min}",
                self.order,
                self.problem.beta()
            );
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            bail!("tmax must be positive, got {}", self.t_max);
        }
        if self.grid_points < 2 {
            bail!("points must be at least 2, got {}", self.grid_points);
        }
        if self.formats.is_empty() {
            bail!("no output format selected");
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FractionField {
    Text(String),
    Int(i64),
}

impl FractionField {
    fn parse(&self, field: &str) -> Result<RationalOrder> {
        match self {
            FractionField::Text(s) => s.parse().map_err(|e| anyhow!("field `{field}`: {e}")),
            FractionField::Int(n) => {
                RationalOrder::new(*n, 1).map_err(|e| anyhow!("field `{field}`: {e}"))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FTerm {
    #[serde(alias = "coeff")]
    c: f64,
    #[serde(alias = "exponent")]
    r: FractionField,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    beta: FractionField,
    #[serde(rename = "A", alias = "a")]
    initial_value: f64,
    f: Vec<FTerm>,
    g: Vec<f64>,
    order: Option<usize>,
    tmax: Option<f64>,
    points: Option<usize>,
}

/// Parses problem text. `json` selects the JSON grammar instead of TOML.
pub fn parse_problem(text: &str, json: bool) -> Result<RunConfig> {
    let file: ProblemFile = if json {
        serde_json::from_str(text).context("malformed problem file")?
    } else {
        toml::from_str(text).context("malformed problem file")?
    };

    let beta = file.beta.parse("beta")?;
    let half = RationalOrder::new(1, 2)?;
    if beta <= half || beta > RationalOrder::ONE {
        bail!("field `beta`: beta out of range: {beta} is not in (1/2, 1]");
    }
    if file.f.is_empty() {
        bail!("field `f`: must contain at least one monomial");
    }
    if file.g.is_empty() {
        bail!("field `g`: must contain at least one coefficient");
    }
    let f = file
        .f
        .iter()
        .enumerate()
        .map(|(i, t)| Ok(Monomial::new(t.c, t.r.parse(&format!("f[{i}].r"))?)))
        .collect::<Result<Vec<_>>>()?;
    let problem =
        ProblemSpec::new(beta, file.initial_value, f, file.g).context("invalid problem")?;

    let mut cfg = RunConfig::new(problem);
    if let Some(k) = file.order {
        cfg.order = k;
    }
    if let Some(t) = file.tmax {
        cfg.t_max = t;
    }
    if let Some(n) = file.points {
        cfg.grid_points = n;
    }
    Ok(cfg)
}

pub fn parse_problem_file(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    parse_problem(&text, json).with_context(|| format!("in problem file {}", path.display()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub alpha: String,
    pub beta: String,
    #[serde(rename = "A")]
    pub initial_value: f64,
    #[serde(rename = "K")]
    pub order: usize,
    pub t_max: f64,
    pub grid_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientRow {
    pub k: usize,
    pub alpha_k: String,
    #[serde(rename = "U")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    #[serde(rename = "K")]
    pub order: usize,
    pub u: f64,
    /// difference to the previous row; absent on the first
    pub diff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRow {
    pub t: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub metadata: Metadata,
    pub coefficients: Vec<CoefficientRow>,
    pub solution: Vec<[f64; 2]>,
    pub residual: Vec<ResidualRow>,
    pub max_abs_residual: f64,
    pub convergence: Vec<ConvergenceRow>,
}

/// Solves and evaluates everything in memory; nothing is written.
pub fn compute_report(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let sol = solve(&config.problem, config.order).context("solver failed")?;
    let alpha = choose_grid(&config.problem)?;

    let coefficients = sol
        .coeffs()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &value)| CoefficientRow {
            k,
            alpha_k: sol.coeffs().exponent(k).to_string(),
            value,
        })
        .collect();

    let n = config.grid_points;
    let solution = (0..n)
        .map(|i| {
            let t = if i + 1 == n {
                config.t_max
            } else {
                config.t_max * i as f64 / (n - 1) as f64
            };
            Ok([t, sol.evaluate(t)?])
        })
        .collect::<Result<Vec<_>>>()
        .context("evaluating solution grid")?;

    let report: ResidualReport = residual(&sol, &geometric_points(config.t_max, RESIDUAL_SAMPLES))
        .context("residual check failed")?;
    let residual_rows = report
        .sample_points
        .iter()
        .zip(&report.residuals)
        .map(|(&t, &residual)| ResidualRow { t, residual })
        .collect();

    Ok(RunReport {
        metadata: Metadata {
            alpha: alpha.to_string(),
            beta: config.problem.beta().to_string(),
            initial_value: config.problem.initial_value(),
            order: config.order,
            t_max: config.t_max,
            grid_points: config.grid_points,
        },
        coefficients,
        solution,
        residual: residual_rows,
        max_abs_residual: report.max_abs_residual,
        convergence: convergence_rows(&sol, config.t_max / 2.0)?,
    })
}

fn convergence_rows(sol: &SeriesSolution, t: f64) -> Result<Vec<ConvergenceRow>> {
    let k = sol.truncation_index();
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(3);
    for kk in [k / 4, k / 2, k] {
        let u = sol.truncated(kk).evaluate(t)?;
        let diff = rows.last().map(|prev| u - prev.u);
        rows.push(ConvergenceRow { order: kk, u, diff });
    }
    Ok(rows)
}

/// Shortest round-trip decimal; -0 prints as 0.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        "0.0".to_string()
    } else {
        format!("{x:?}")
    }
}

pub const COEFFICIENTS_CSV: &str = "coefficients.csv";
pub const SOLUTION_CSV: &str = "solution.csv";
pub const RESIDUAL_CSV: &str = "residual.csv";
pub const CONVERGENCE_CSV: &str = "convergence.csv";
pub const METADATA_JSON: &str = "metadata.json";
pub const REPORT_JSON: &str = "solution.json";

fn render_csv(report: &RunReport) -> Vec<(&'static str, String)> {
    let mut coeffs = String::from("k,alpha_k,U\n");
    for row in &report.coefficients {
        coeffs += &format!("{},{},{}\n", row.k, row.alpha_k, format_number(row.value));
    }
    let mut solution = String::from("t,u\n");
    for [t, u] in &report.solution {
        solution += &format!("{},{}\n", format_number(*t), format_number(*u));
    }
    let mut residual = String::from("t,residual\n");
    for row in &report.residual {
        residual += &format!("{},{}\n", format_number(row.t), format_number(row.residual));
    }
    let mut convergence = String::from("K,u,diff\n");
    for row in &report.convergence {
        let diff = row.diff.map(format_number).unwrap_or_default();
        convergence += &format!("{},{},{}\n", row.order, format_number(row.u), diff);
    }
    vec![
        (COEFFICIENTS_CSV, coeffs),
        (SOLUTION_CSV, solution),
        (RESIDUAL_CSV, residual),
        (CONVERGENCE_CSV, convergence),
    ]
}

/// Writes the selected formats plus `metadata.json` into `dir`. On any
/// failure the files written so far are removed.
pub fn write_report(report: &RunReport, dir: &Path, formats: &[Format]) -> Result<Vec<PathBuf>> {
    let mut files: Vec<(&'static str, String)> = Vec::new();
    files.push((
        METADATA_JSON,
        serde_json::to_string_pretty(&report.metadata)? + "\n",
    ));
    if formats.contains(&Format::Csv) {
        files.extend(render_csv(report));
    }
    if formats.contains(&Format::Json) {
        files.push((REPORT_JSON, serde_json::to_string_pretty(report)? + "\n"));
    }

    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::with_capacity(files.len());
    for (name, body) in files {
        let path = dir.join(name);
        if let Err(e) = fs::write(&path, body) {
            for p in &written {
                let _ = fs::remove_file(p);
            }
            return Err(e).with_context(|| format!("writing {}", path.display()));
        }
        written.push(path);
    }
    Ok(written)
}

pub fn run(config: &RunConfig) -> Result<RunReport> {
    let report = compute_report(config)?;
    write_report(&report, &config.output_dir, &config.formats)?;
    Ok(report)
}

pub fn read_metadata(dir: &Path) -> Result<Metadata> {
    let path = dir.join(METADATA_JSON);
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}
