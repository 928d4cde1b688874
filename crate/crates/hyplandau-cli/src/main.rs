//! Command-line surface for the hyplandau library: tabulate radial
//! phase-space densities and characteristic functions, print moment
//! summaries with quadrature cross-checks, run the built-in verification
//! suite, track flat-space limit errors over growing disk radius, and
//! sweep the thermodynamic lower bound over Landau levels.
//!
//! Output is CSV (default) or JSON. Every run writes its full
//! configuration into '#'-prefixed header lines (CSV) or a `config`
//! object (JSON) so a result file alone suffices to reproduce the run.
//! CSV data cells carry 17 significant digits with '.' as the decimal
//! separator and are byte-stable for fixed inputs and tolerances.
//!
//! Exit codes: 0 success, 2 invalid usage or parameters, 3 numerical
//! failure (non-convergence, a failed verification, or a violated
//! assertion such as a non-negative limit slope).

// Negated comparisons like `!(x > 0.0)` are deliberate: they reject NaN
// along with the out-of-range values, which `x <= 0.0` silently lets
// through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use hyplandau::coherent::{DiskPoint, ModelParams};
use hyplandau::husimi_mixed::{
    berezin_lieb_sweep, cf_mixed, cf_mixed_euclid_limit, mean_mixed, q_mixed_closed,
    q_mixed_euclid, radial_density_mixed, var_mixed, MixedStateSpec,
};
use hyplandau::husimi_pure::{
    cf_pure, cf_pure_euclid, mean_pure, q_pure, q_pure_euclid, radial_density, var_pure,
    PureStateSpec, RadialDensity,
};
use hyplandau::verify::{
    cf_oracle, limit_rate, moment_oracle, run_default_suite, QuadratureSpec, VerificationReport,
};
use hyplandau::SeriesConfig;

/// Fixed phase-space probe for the limit command, documented in its
/// output header.
const LIMIT_PROBE_Z: Complex64 = Complex64::new(0.6, 0.3);
/// Fixed transform argument for the limit command.
const LIMIT_PROBE_U: f64 = 0.5;
/// Disk radii swept by the limit command.
const LIMIT_RADII: [f64; 3] = [5.0, 20.0, 100.0];

#[derive(Parser)]
#[command(
    name = "hyplandau",
    version,
    about = "Phase-space distributions for Landau levels on the hyperbolic disk",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate a radial phase-space density on [0, R^2]
    Density(DensityArgs),
    /// Tabulate a characteristic function over a grid of u values
    Cf(CfArgs),
    /// Print closed-form mean and variance with quadrature cross-checks
    Moments(MomentsArgs),
    /// Run the built-in verification suite
    Verify(VerifyArgs),
    /// Track a flat-space limit error over growing disk radius
    Limit(LimitArgs),
    /// Sweep the thermodynamic lower bound over admissible level indices
    Bound(BoundArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Magnetic field strength B (requires 2BR^2 > 1)
    #[arg(long = "B", default_value_t = 1.0)]
    b: f64,
    /// Disk radius R
    #[arg(long = "R", default_value_t = 1.5)]
    r: f64,
    /// Landau level index m, at most floor(BR^2 - 1/2)
    #[arg(long, default_value_t = 0)]
    m: u32,
}

/// Exactly one of --j / --beta picks the state family.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct StateSelect {
    /// Pure-state index j (selects the pure family)
    #[arg(long)]
    j: Option<u32>,
    /// Inverse temperature beta (selects the thermal family)
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relative series tolerance; overrides the HYP_TOL environment variable
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    state: StateSelect,
    /// Number of midpoint cells covering [0, R^2]
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
    grid: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CfArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    state: StateSelect,
    /// Smallest transform argument u
    #[arg(long = "u-min", default_value_t = 0.0)]
    u_min: f64,
    /// Largest transform argument u
    #[arg(long = "u-max", default_value_t = 5.0)]
    u_max: f64,
    /// Number of evenly spaced u values (endpoints included)
    #[arg(long = "u-steps", default_value_t = 21, value_parser = clap::value_parser!(u32).range(1..))]
    u_steps: u32,
    /// Append quadrature-oracle columns and the absolute error
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    state: StateSelect,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Append a deliberately failing report (for exercising pipelines)
    #[arg(long)]
    include_failure_fixture: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum LimitKind {
    /// Pure-state density value at the fixed probe point
    PureQ,
    /// Pure-state characteristic function at the fixed probe argument
    PureCf,
    /// Thermal density value at the fixed probe point
    MixedQ,
    /// Thermal characteristic function at the fixed probe argument
    MixedCf,
}

impl LimitKind {
    fn name(self) -> &'static str {
        match self {
            LimitKind::PureQ => "pure-q",
            LimitKind::PureCf => "pure-cf",
            LimitKind::MixedQ => "mixed-q",
            LimitKind::MixedCf => "mixed-cf",
        }
    }
}

#[derive(Args)]
struct LimitArgs {
    /// Which limit claim to track
    #[arg(value_enum)]
    kind: LimitKind,
    /// Magnetic field strength B (held fixed while R grows)
    #[arg(long = "B", default_value_t = 1.0)]
    b: f64,
    /// Landau level index m (held fixed while R grows)
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Pure-state index j (pure kinds only)
    #[arg(long, default_value_t = 2)]
    j: u32,
    /// Inverse temperature beta (mixed kinds only)
    #[arg(long, default_value_t = 0.8)]
    beta: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BoundArgs {
    /// Magnetic field strength B (requires 2BR^2 > 1)
    #[arg(long = "B", default_value_t = 1.0)]
    b: f64,
    /// Disk radius R
    #[arg(long = "R", default_value_t = 1.5)]
    r: f64,
    /// Inverse temperature beta
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Coupling strength epsilon in the bound integrand
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// A failure routed to a process exit code.
enum CliError {
    /// Invalid flags or parameters (exit 2).
    Usage(String),
    /// A numerical evaluation failed or an asserted property was violated
    /// (exit 3).
    Numerical(String),
}

impl From<hyplandau::Error> for CliError {
    fn from(e: hyplandau::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Cmd::Density(a) => cmd_density(a),
        Cmd::Cf(a) => cmd_cf(a),
        Cmd::Moments(a) => cmd_moments(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Limit(a) => cmd_limit(a),
        Cmd::Bound(a) => cmd_bound(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Which state family a command evaluates.
#[derive(Clone, Copy)]
enum Family {
    Pure(u32),
    Mixed(f64),
}

/// Validated run parameters shared by the tabulating commands, carrying
/// everything the output header needs to reproduce the run.
struct RunConfig {
    params: ModelParams,
    family: Family,
    rel_tol: f64,
}

impl RunConfig {
    fn from_flags(model: &ModelArgs, state: &StateSelect, tol: Option<f64>) -> CliResult<Self> {
        let params = model_params(model.b, model.r, model.m)?;
        let family = match (state.j, state.beta) {
            (Some(j), None) => Family::Pure(j),
            (None, Some(beta)) => {
                if !(beta > 0.0) || !beta.is_finite() {
                    return Err(CliError::Usage(format!(
                        "--beta must be positive and finite, got {beta}"
                    )));
                }
                Family::Mixed(beta)
            }
            // clap's argument group guarantees exactly one selector.
            _ => unreachable!("state selector enforced by the flag parser"),
        };
        Ok(RunConfig {
            params,
            family,
            rel_tol: resolve_rel_tol(tol)?,
        })
    }

    fn series(&self) -> SeriesConfig {
        SeriesConfig {
            rel_tol: self.rel_tol,
            ..SeriesConfig::default()
        }
    }

    fn mixed_spec(&self, beta: f64) -> CliResult<MixedStateSpec> {
        Ok(MixedStateSpec::new(beta, self.params, 1.0)?)
    }

    fn density(&self) -> CliResult<RadialDensity> {
        Ok(match self.family {
            Family::Pure(j) => radial_density(&PureStateSpec {
                j,
                params: self.params,
            }),
            Family::Mixed(beta) => radial_density_mixed(&self.mixed_spec(beta)?),
        })
    }

    /// Header entries shared by every family-selected command, in a fixed
    /// order so output stays byte-stable.
    fn config_entries(&self, command: &str) -> Vec<(String, Value)> {
        let mut entries = vec![
            ("command".to_string(), json!(command)),
            ("B".to_string(), json!(self.params.b())),
            ("R".to_string(), json!(self.params.r())),
            ("m".to_string(), json!(self.params.m())),
        ];
        match self.family {
            Family::Pure(j) => entries.push(("j".to_string(), json!(j))),
            Family::Mixed(beta) => entries.push(("beta".to_string(), json!(beta))),
        }
        entries.push(("rel_tol".to_string(), json!(self.rel_tol)));
        entries
    }
}

fn model_params(b: f64, r: f64, m: u32) -> CliResult<ModelParams> {
    // The library message already reports floor(BR^2 - 1/2) when m is out
    // of range, which is exactly the actionable hint wanted here.
    ModelParams::new(b, r, m).map_err(|e| CliError::Usage(e.to_string()))
}

/// Default series tolerance, overridden by HYP_TOL, overridden by --tol.
fn resolve_rel_tol(flag: Option<f64>) -> CliResult<f64> {
    let validate = |tol: f64, origin: &str| {
        if tol.is_finite() && tol > 0.0 && tol < 1.0 {
            Ok(tol)
        } else {
            Err(CliError::Usage(format!(
                "{origin} must be a relative tolerance in (0, 1), got {tol}"
            )))
        }
    };
    if let Some(tol) = flag {
        return validate(tol, "--tol");
    }
    match std::env::var("HYP_TOL") {
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(tol) => validate(tol, "HYP_TOL"),
            Err(_) => Err(CliError::Usage(format!(
                "HYP_TOL must parse as a number, got {raw:?}"
            ))),
        },
        Err(_) => Ok(SeriesConfig::default().rel_tol),
    }
}

/// One output cell; numeric cells print with 17 significant digits in CSV.
enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Flag(bool),
    Empty,
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Flag(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

/// A rendered result: config header, column names, and data rows. JSON
/// output is `{"config": {...}, "rows": [...]}` unless a command supplies
/// a bespoke JSON value.
struct Table {
    config: Vec<(String, Value)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    json_override: Option<Value>,
}

impl Table {
    fn new(config: Vec<(String, Value)>, columns: Vec<&'static str>) -> Self {
        Table {
            config,
            columns,
            rows: Vec::new(),
            json_override: None,
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.config {
            // Strings print bare (no quotes) so headers read as key=value.
            match value {
                Value::String(s) => writeln!(out, "# {key}={s}").unwrap(),
                other => writeln!(out, "# {key}={other}").unwrap(),
            }
        }
        writeln!(out, "# columns: {}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::to_csv).collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }

    fn render_json(&self) -> String {
        if let Some(value) = &self.json_override {
            return format!("{:#}\n", value);
        }
        let mut config = Map::new();
        for (key, value) in &self.config {
            config.insert(key.clone(), value.clone());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).to_string(), cell.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        format!("{:#}\n", json!({ "config": config, "rows": rows }))
    }
}

fn emit(table: &Table, output: &OutputArgs) -> CliResult<()> {
    let text = match output.format {
        Format::Csv => table.render_csv(),
        Format::Json => table.render_json(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finite(value: f64, what: &str) -> CliResult<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Numerical(format!(
            "{what} evaluated to a non-finite value"
        )))
    }
}

fn cmd_density(a: DensityArgs) -> CliResult<()> {
    let run = RunConfig::from_flags(&a.model, &a.state, a.output.tol)?;
    let density = run.density()?;
    let r2 = run.params.r() * run.params.r();
    let cells = a.grid as usize;
    let step = r2 / cells as f64;

    let mut config = run.config_entries("density");
    config.push(("grid".to_string(), json!(a.grid)));
    let mut table = Table::new(config, vec!["lambda", "q"]);
    for i in 0..cells {
        let lambda = (i as f64 + 0.5) * step;
        let value = finite((density.eval)(lambda), "density")?;
        table.push(vec![Cell::Num(lambda), Cell::Num(value)]);
    }
    emit(&table, &a.output)
}

fn u_grid(u_min: f64, u_max: f64, steps: u32) -> CliResult<Vec<f64>> {
    if !u_min.is_finite() || !u_max.is_finite() || u_max < u_min {
        return Err(CliError::Usage(format!(
            "u range must be finite with --u-max >= --u-min, got [{u_min}, {u_max}]"
        )));
    }
    if steps == 1 {
        return Ok(vec![u_min]);
    }
    Ok((0..steps)
        .map(|i| u_min + (u_max - u_min) * f64::from(i) / f64::from(steps - 1))
        .collect())
}

fn cmd_cf(a: CfArgs) -> CliResult<()> {
    let run = RunConfig::from_flags(&a.model, &a.state, a.output.tol)?;
    let cfg = run.series();
    let quad = QuadratureSpec::default();
    let grid = u_grid(a.u_min, a.u_max, a.u_steps)?;
    let oracle_density = if a.oracle { Some(run.density()?) } else { None };

    let mut config = run.config_entries("cf");
    config.push(("u_min".to_string(), json!(a.u_min)));
    config.push(("u_max".to_string(), json!(a.u_max)));
    config.push(("u_steps".to_string(), json!(a.u_steps)));
    config.push(("oracle".to_string(), json!(a.oracle)));
    let columns = if a.oracle {
        vec!["u", "cf_re", "cf_im", "oracle_re", "oracle_im", "abs_err"]
    } else {
        vec!["u", "cf_re", "cf_im"]
    };
    let mut table = Table::new(config, columns);

    for &u in &grid {
        let closed = match run.family {
            Family::Pure(j) => cf_pure(
                &PureStateSpec {
                    j,
                    params: run.params,
                },
                u,
                &cfg,
            )?,
            Family::Mixed(beta) => cf_mixed(&run.mixed_spec(beta)?, u, &cfg)?,
        };
        finite(closed.re, "characteristic function")?;
        finite(closed.im, "characteristic function")?;
        let mut row = vec![Cell::Num(u), Cell::Num(closed.re), Cell::Num(closed.im)];
        if let Some(density) = &oracle_density {
            let reference = cf_oracle(density, u, &quad)?;
            row.push(Cell::Num(reference.re));
            row.push(Cell::Num(reference.im));
            row.push(Cell::Num((closed - reference).norm()));
        }
        table.push(row);
    }
    emit(&table, &a.output)
}

fn cmd_moments(a: MomentsArgs) -> CliResult<()> {
    let run = RunConfig::from_flags(&a.model, &a.state, a.output.tol)?;
    let cfg = run.series();
    let quad = QuadratureSpec::default();

    let (mean, variance) = match run.family {
        Family::Pure(j) => {
            let s = PureStateSpec {
                j,
                params: run.params,
            };
            (mean_pure(&s), var_pure(&s))
        }
        Family::Mixed(beta) => {
            let ms = run.mixed_spec(beta)?;
            (mean_mixed(&ms, &cfg)?, var_mixed(&ms, &cfg)?)
        }
    };
    let density = run.density()?;
    let e1 = moment_oracle(&density, 1, &quad)?;
    let e2 = moment_oracle(&density, 2, &quad)?;
    let variance_quad = e2 - e1 * e1;

    let config = run.config_entries("moments");
    let mut table = Table::new(
        config,
        vec![
            "mean",
            "variance",
            "mean_quad",
            "variance_quad",
            "mean_abs_err",
            "variance_abs_err",
        ],
    );
    table.push(vec![
        Cell::Num(mean),
        Cell::Num(variance),
        Cell::Num(e1),
        Cell::Num(variance_quad),
        Cell::Num((mean - e1).abs()),
        Cell::Num((variance - variance_quad).abs()),
    ]);
    emit(&table, &a.output)
}

fn cmd_verify(a: VerifyArgs) -> CliResult<()> {
    let rel_tol = resolve_rel_tol(a.output.tol)?;
    let mut reports = run_default_suite()?;
    if a.include_failure_fixture {
        reports.push(VerificationReport {
            label: "forced failure fixture".to_string(),
            formula_re: 1.0,
            formula_im: 0.0,
            oracle_re: 0.0,
            oracle_im: 0.0,
            abs_err: 1.0,
            rel_err: 1.0,
            tol: 1e-12,
            pass: false,
            runtime_ms: 0.0,
        });
    }
    let failed = reports.iter().filter(|r| !r.pass).count();

    let config = vec![
        ("command".to_string(), json!("verify")),
        (
            "include_failure_fixture".to_string(),
            json!(a.include_failure_fixture),
        ),
        ("rel_tol".to_string(), json!(rel_tol)),
        ("reports".to_string(), json!(reports.len())),
        ("failed".to_string(), json!(failed)),
    ];
    // runtime_ms is left out of the CSV so output stays byte-stable; the
    // JSON report keeps the full record.
    let mut table = Table::new(
        config,
        vec![
            "label",
            "formula_re",
            "formula_im",
            "oracle_re",
            "oracle_im",
            "abs_err",
            "rel_err",
            "tol",
            "pass",
        ],
    );
    for report in &reports {
        table.push(vec![
            Cell::Text(report.label.clone()),
            Cell::Num(report.formula_re),
            Cell::Num(report.formula_im),
            Cell::Num(report.oracle_re),
            Cell::Num(report.oracle_im),
            Cell::Num(report.abs_err),
            Cell::Num(report.rel_err),
            Cell::Num(report.tol),
            Cell::Flag(report.pass),
        ]);
    }
    if a.output.format == Format::Json {
        let rows: Vec<Value> = reports
            .iter()
            .map(|r| serde_json::to_value(r).expect("report serializes"))
            .collect();
        let config: Map<String, Value> = table
            .config
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        table.json_override = Some(json!({ "config": config, "rows": rows }));
    }
    emit(&table, &a.output)?;

    if failed > 0 {
        return Err(CliError::Numerical(format!(
            "{failed} of {} verification reports failed",
            reports.len()
        )));
    }
    Ok(())
}

fn cmd_limit(a: LimitArgs) -> CliResult<()> {
    let rel_tol = resolve_rel_tol(a.output.tol)?;
    let cfg = SeriesConfig {
        rel_tol,
        ..SeriesConfig::default()
    };
    if !(a.b > 0.0) || !a.b.is_finite() {
        return Err(CliError::Usage(format!(
            "--B must be positive and finite, got {}",
            a.b
        )));
    }
    let uses_beta = matches!(a.kind, LimitKind::MixedQ | LimitKind::MixedCf);
    if uses_beta && (!(a.beta > 0.0) || !a.beta.is_finite()) {
        return Err(CliError::Usage(format!(
            "--beta must be positive and finite, got {}",
            a.beta
        )));
    }
    if matches!(a.kind, LimitKind::MixedCf) && LIMIT_PROBE_U >= 2.0 * a.b {
        return Err(CliError::Usage(format!(
            "the thermal transform limit holds for u < 2B only; probe u = {LIMIT_PROBE_U} \
             needs B > {}",
            LIMIT_PROBE_U / 2.0
        )));
    }
    // Validate the level index at the smallest swept radius; larger radii
    // only loosen the constraint.
    model_params(a.b, LIMIT_RADII[0], a.m)?;

    let probe = DiskPoint::new(LIMIT_PROBE_Z);
    let flat_q_pure = q_pure_euclid(a.j, a.m, a.b, LIMIT_PROBE_Z);
    // The flat transform lives at the scale of 2B times the squared
    // radial coordinate, so the disk argument u maps to u / (2B).
    let flat_cf_pure = cf_pure_euclid(a.j, a.m, a.b, LIMIT_PROBE_U / (2.0 * a.b));
    let flat_q_mixed = q_mixed_euclid(a.beta, a.b, a.m, LIMIT_PROBE_Z);
    let flat_cf_mixed = if matches!(a.kind, LimitKind::MixedCf) {
        cf_mixed_euclid_limit(a.beta, a.b, a.m, LIMIT_PROBE_U)?
    } else {
        Complex64::new(0.0, 0.0)
    };

    let mut errors = Vec::with_capacity(LIMIT_RADII.len());
    for &radius in &LIMIT_RADII {
        let params = model_params(a.b, radius, a.m)?;
        let err = match a.kind {
            LimitKind::PureQ => {
                let s = PureStateSpec { j: a.j, params };
                (q_pure(&s, &probe)? - flat_q_pure).abs()
            }
            LimitKind::PureCf => {
                let s = PureStateSpec { j: a.j, params };
                (cf_pure(&s, LIMIT_PROBE_U, &cfg)? - flat_cf_pure).norm()
            }
            LimitKind::MixedQ => {
                let ms = MixedStateSpec::new(a.beta, params, 1.0)?;
                (q_mixed_closed(&ms, &probe)? - flat_q_mixed).abs()
            }
            LimitKind::MixedCf => {
                let ms = MixedStateSpec::new(a.beta, params, 1.0)?;
                (cf_mixed(&ms, LIMIT_PROBE_U, &cfg)? - flat_cf_mixed).norm()
            }
        };
        errors.push(finite(err, "limit error")?);
    }
    let mut cached = errors.iter();
    let fit = limit_rate(
        |_| Ok(*cached.next().expect("one error per radius")),
        &LIMIT_RADII,
    )?;

    let mut config = vec![
        ("command".to_string(), json!("limit")),
        ("kind".to_string(), json!(a.kind.name())),
        ("B".to_string(), json!(a.b)),
        ("m".to_string(), json!(a.m)),
    ];
    match a.kind {
        LimitKind::PureQ | LimitKind::PureCf => config.push(("j".to_string(), json!(a.j))),
        LimitKind::MixedQ | LimitKind::MixedCf => config.push(("beta".to_string(), json!(a.beta))),
    }
    config.push(("probe_z_re".to_string(), json!(LIMIT_PROBE_Z.re)));
    config.push(("probe_z_im".to_string(), json!(LIMIT_PROBE_Z.im)));
    if matches!(a.kind, LimitKind::PureCf | LimitKind::MixedCf) {
        config.push(("probe_u".to_string(), json!(LIMIT_PROBE_U)));
    }
    config.push(("rel_tol".to_string(), json!(rel_tol)));
    config.push(("fitted_slope".to_string(), json!(fit.slope)));
    config.push(("monotone".to_string(), json!(fit.monotone)));

    let mut table = Table::new(config, vec!["R", "error", "slope"]);
    let last = LIMIT_RADII.len() - 1;
    for (i, (&radius, &err)) in LIMIT_RADII.iter().zip(&errors).enumerate() {
        let slope = if i == last {
            Cell::Num(fit.slope)
        } else {
            Cell::Empty
        };
        table.push(vec![Cell::Num(radius), Cell::Num(err), slope]);
    }
    emit(&table, &a.output)?;

    if fit.slope >= 0.0 {
        return Err(CliError::Numerical(format!(
            "limit error does not decay: fitted slope {} is not negative",
            fit.slope
        )));
    }
    Ok(())
}

fn cmd_bound(a: BoundArgs) -> CliResult<()> {
    let rel_tol = resolve_rel_tol(a.output.tol)?;
    // Validate (B, R) and report the sweep range before doing any work.
    model_params(a.b, a.r, 0)?;
    if !(a.beta > 0.0) || !a.beta.is_finite() {
        return Err(CliError::Usage(format!(
            "--beta must be positive and finite, got {}",
            a.beta
        )));
    }
    if !(a.epsilon > 0.0) || !a.epsilon.is_finite() {
        return Err(CliError::Usage(format!(
            "--epsilon must be positive and finite, got {}",
            a.epsilon
        )));
    }
    let quad = QuadratureSpec::default();
    let sweep = berezin_lieb_sweep(a.beta, a.epsilon, a.b, a.r, &quad)?;
    let theta_star = sweep.terms[sweep.m_star as usize].theta;

    let mut config = vec![
        ("command".to_string(), json!("bound")),
        ("B".to_string(), json!(a.b)),
        ("R".to_string(), json!(a.r)),
        ("beta".to_string(), json!(a.beta)),
        ("epsilon".to_string(), json!(a.epsilon)),
        ("rel_tol".to_string(), json!(rel_tol)),
        ("m_star".to_string(), json!(sweep.m_star)),
        ("bound".to_string(), json!(sweep.bound)),
    ];
    config.push(("levels".to_string(), json!(sweep.terms.len())));

    let mut table = Table::new(
        config,
        vec![
            "m",
            "lower_symbol_integral",
            "literal_symbol_integral",
            "theta",
            "gap",
        ],
    );
    for term in &sweep.terms {
        table.push(vec![
            Cell::Int(i64::from(term.m)),
            Cell::Num(term.lower_symbol_integral),
            Cell::Num(term.literal_symbol_integral),
            Cell::Num(term.theta),
            Cell::Num(term.gap),
        ]);
    }
    if a.output.format == Format::Json {
        let config: Map<String, Value> = table
            .config
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let theta_per_m: Vec<f64> = sweep.terms.iter().map(|t| t.theta).collect();
        let gap_per_m: Vec<f64> = sweep.terms.iter().map(|t| t.gap).collect();
        table.json_override = Some(json!({
            "config": config,
            "m_star": sweep.m_star,
            "bound": sweep.bound,
            "theta_exact_per_m": theta_per_m,
            "gap": gap_per_m,
        }));
    }
    emit(&table, &a.output)?;

    let min_gap = sweep
        .terms
        .iter()
        .map(|t| t.gap)
        .fold(f64::INFINITY, f64::min);
    if min_gap < 0.0 {
        return Err(CliError::Numerical(format!(
            "bound inequality violated: smallest gap {min_gap} is negative"
        )));
    }
    if sweep.bound > theta_star {
        return Err(CliError::Numerical(format!(
            "bound {} exceeds the potential {theta_star} at the selected level",
            sweep.bound
        )));
    }
    Ok(())
}
