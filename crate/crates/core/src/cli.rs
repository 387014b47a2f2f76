//! Command-line front end.
//!
//! Every subcommand builds a [`Report`] and renders it as CSV or JSON.
//! Floating-point output carries 12 significant digits so reports diff
//! cleanly across runs.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::expansions::{deep_expansion_fit, shallow_expansion_on};
use crate::oracle::{critical_strength_exact, crossing_point, exact_energy, variational_gap};
use crate::trial::{optimize_parameter, variational_critical_on, TrialFamily};
use crate::wells::WellShape;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "varwell",
    version,
    about = "Variational and exact bound states of 1D quantum wells"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy of one state at one well strength.
    Energy {
        #[arg(long)]
        v0: f64,
        #[arg(long, default_value_t = 0)]
        state: usize,
        #[arg(long = "method", visible_alias = "methods", default_value = "numerov")]
        methods: MethodList,
        #[command(flatten)]
        common: Common,
    },
    /// Energies on a uniform grid of well strengths.
    Sweep {
        #[arg(long)]
        v0_min: f64,
        #[arg(long)]
        v0_max: f64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long = "states", visible_alias = "state", default_value = "0")]
        states: StateList,
        #[arg(long = "methods", visible_alias = "method", default_value = "all")]
        methods: MethodList,
        #[command(flatten)]
        common: Common,
    },
    /// Shallow-well series coefficients of a variational energy.
    Series {
        #[arg(long, default_value = "harm-even")]
        family: TrialFamily,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Deep-well coefficients extracted numerically, against the closed form.
    Deep {
        #[arg(long, default_value = "harm-even")]
        family: TrialFamily,
        #[command(flatten)]
        common: Common,
    },
    /// Strength at which a state first binds.
    Critical {
        #[arg(long, default_value_t = 1)]
        state: usize,
        #[arg(long = "methods", visible_alias = "method", default_value = "all")]
        methods: MethodList,
        /// Report a single trial family instead of the method list.
        #[arg(long)]
        family: Option<TrialFamily>,
        #[command(flatten)]
        common: Common,
    },
    /// Strength at which the exponential and harmonic bounds cross.
    Crossing {
        #[arg(long, default_value_t = 0)]
        state: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Well::Gaussian)]
    well: Well,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Well {
    Gaussian,
    Square,
}

impl Well {
    fn shape(self) -> WellShape {
        match self {
            Well::Gaussian => WellShape::Gaussian,
            Well::Square => WellShape::UNIT_SQUARE,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Well::Gaussian => "gaussian",
            Well::Square => "square",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Method {
    Harmonic,
    Exponential,
    Numerov,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Harmonic => "harmonic",
            Method::Exponential => "exponential",
            Method::Numerov => "numerov",
        }
    }
}

#[derive(Debug, Clone)]
struct MethodList(Vec<Method>);

impl FromStr for MethodList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut methods = Vec::new();
        for item in s.split(',') {
            match item.trim() {
                "all" => methods.extend([Method::Harmonic, Method::Exponential, Method::Numerov]),
                "harmonic" => methods.push(Method::Harmonic),
                "exponential" => methods.push(Method::Exponential),
                "numerov" | "exact" => methods.push(Method::Numerov),
                other => {
                    return Err(format!(
                        "unknown method '{other}' (harmonic, exponential, numerov, all)"
                    ))
                }
            }
        }
        methods.sort();
        methods.dedup();
        Ok(MethodList(methods))
    }
}

#[derive(Debug, Clone)]
struct StateList(Vec<usize>);

impl FromStr for StateList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut states = s
            .split(',')
            .map(|t| match t.trim() {
                "0" => Ok(0),
                "1" => Ok(1),
                other => Err(format!("state must be 0 or 1, got '{other}'")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        states.sort();
        states.dedup();
        Ok(StateList(states))
    }
}

/// A tabular result with JSON context.
struct Report {
    inputs: Map<String, Value>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    diagnostics: Map<String, Value>,
}

#[derive(Debug, Clone)]
enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_g(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => num(*x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl Report {
    fn new(command: &str, columns: &[&'static str]) -> Self {
        let mut inputs = Map::new();
        inputs.insert("command".into(), json!(command));
        Report {
            inputs,
            columns: columns.to_vec(),
            rows: Vec::new(),
            diagnostics: Map::new(),
        }
    }

    fn input(&mut self, key: &str, value: Value) {
        self.inputs.insert(key.into(), value);
    }

    fn note(&mut self, key: &str, value: Value) {
        self.diagnostics.insert(key.into(), value);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut text = self.columns.join(",");
                text.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    let _ = writeln!(text, "{}", cells.join(","));
                }
                text
            }
            Format::Json => {
                let results: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.to_string(), v.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let report = json!({
                    "inputs": Value::Object(self.inputs.clone()),
                    "results": results,
                    "diagnostics": Value::Object(self.diagnostics.clone()),
                });
                let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
                text.push('\n');
                text
            }
        }
    }
}

/// `printf("%.12g")`.
pub fn format_g(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// JSON number rounded to the same 12 digits as the CSV output.
fn num(x: f64) -> Value {
    format_g(x).parse::<f64>().ok().map_or(Value::Null, |v| json!(v))
}

/// Failure carrying the operation that raised it.
struct Failure {
    operation: &'static str,
    error: Error,
}

trait Context<T> {
    fn during(self, operation: &'static str) -> Result<T, Failure>;
}

impl<T> Context<T> for crate::Result<T> {
    fn during(self, operation: &'static str) -> Result<T, Failure> {
        self.map_err(|error| Failure { operation, error })
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self.error {
            Error::InvalidParameter(_) | Error::InvalidOrder { .. } | Error::Unsupported(_) | Error::Domain { .. } => {
                EXIT_USAGE
            }
            _ => EXIT_NUMERIC,
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        operation: "cli::run",
        error: Error::InvalidParameter(message),
    }
}

fn is_unbound(error: &Error) -> bool {
    matches!(error, Error::NoBoundState { .. })
        || matches!(error, Error::NonConvergence { operation, .. } if *operation == "optimize_parameter")
}

/// Energy of `state` by `method`: `(a_opt, energy, diagnostics)`.
fn point_energy(shape: WellShape, v0: f64, state: usize, method: Method) -> Result<(Option<f64>, f64, Value), Failure> {
    match method {
        Method::Harmonic | Method::Exponential => {
            let family = TrialFamily::for_state(state, method == Method::Harmonic).during("trial::for_state")?;
            let opt = optimize_parameter(family, shape, v0).during("trial::optimize_parameter")?;
            Ok((Some(opt.a), opt.w, json!({ "family": family.name() })))
        }
        Method::Numerov => {
            let r = exact_energy(shape, v0, state).during(match shape {
                WellShape::Gaussian => "oracle::numerov_eigen",
                WellShape::Square { .. } => "oracle::square_transcendental",
            })?;
            let d = r.diagnostics;
            let diag = json!({
                "solver": r.solver,
                "decay_rate": num(r.decay_rate),
                "step": num(d.step),
                "half_length": num(d.half_length),
                "residual": num(d.residual),
                "nodes": d.nodes,
            });
            Ok((None, r.energy, diag))
        }
    }
}

fn energy_row(v0: f64, state: usize, method: Method, a_opt: Option<f64>, energy: f64) -> Vec<Cell> {
    vec![
        Cell::Num(v0),
        Cell::Int(state),
        Cell::Text(method.name().into()),
        a_opt.map_or(Cell::Empty, Cell::Num),
        Cell::Num(energy),
    ]
}

const ENERGY_COLUMNS: [&str; 5] = ["v0", "state", "method", "a_opt", "energy"];

fn check_positive(name: &str, v: f64) -> Result<(), Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("--{name} must be a positive number, got {v}")))
    }
}

fn check_state(state: usize) -> Result<(), Failure> {
    if state <= 1 {
        Ok(())
    } else {
        Err(usage(format!("--state must be 0 or 1, got {state}")))
    }
}

fn execute(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Energy {
            v0,
            state,
            methods,
            common,
        } => {
            check_positive("v0", *v0)?;
            check_state(*state)?;
            let mut report = Report::new("energy", &ENERGY_COLUMNS);
            report.input("well", json!(common.well.name()));
            report.input("v0", num(*v0));
            report.input("state", json!(state));
            report.input("methods", json!(methods.0.iter().map(|m| m.name()).collect::<Vec<_>>()));
            for &method in &methods.0 {
                let (a_opt, energy, diag) = point_energy(common.well.shape(), *v0, *state, method)?;
                report.rows.push(energy_row(*v0, *state, method, a_opt, energy));
                report.note(method.name(), diag);
            }
            Ok(report)
        }
        Command::Sweep {
            v0_min,
            v0_max,
            points,
            states,
            methods,
            common,
        } => {
            check_positive("v0-min", *v0_min)?;
            check_positive("v0-max", *v0_max)?;
            if v0_max < v0_min {
                return Err(usage(format!("--v0-max {v0_max} is below --v0-min {v0_min}")));
            }
            if *points == 0 || (*points == 1 && v0_min != v0_max) {
                return Err(usage(format!("--points must be at least 2 for a range, got {points}")));
            }
            let grid: Vec<f64> = (0..*points)
                .map(|i| match i {
                    0 => *v0_min,
                    _ if i + 1 == *points => *v0_max,
                    _ => v0_min + (v0_max - v0_min) * i as f64 / (*points - 1) as f64,
                })
                .collect();
            let mut report = Report::new("sweep", &ENERGY_COLUMNS);
            report.input("well", json!(common.well.name()));
            report.input("v0_min", num(*v0_min));
            report.input("v0_max", num(*v0_max));
            report.input("points", json!(points));
            report.input("states", json!(states.0));
            report.input("methods", json!(methods.0.iter().map(|m| m.name()).collect::<Vec<_>>()));
            let mut skipped = Vec::new();
            for &state in &states.0 {
                for &method in &methods.0 {
                    for &v0 in &grid {
                        match point_energy(common.well.shape(), v0, state, method) {
                            Ok((a_opt, energy, _)) => report.rows.push(energy_row(v0, state, method, a_opt, energy)),
                            Err(f) if is_unbound(&f.error) => skipped.push(json!({
                                "v0": num(v0),
                                "state": state,
                                "method": method.name(),
                                "reason": f.error.to_string(),
                            })),
                            Err(f) => return Err(f),
                        }
                    }
                }
            }
            report.note("skipped", Value::Array(skipped));
            Ok(report)
        }
        Command::Series { family, order, common } => {
            let shape = common.well.shape();
            let s = shallow_expansion_on(*family, shape, *order).during("expansions::shallow_expansion")?;
            let mut report = Report::new("series", &["power", "coefficient"]);
            report.input("well", json!(common.well.name()));
            report.input("family", json!(family.name()));
            report.input("order", json!(order));
            for (k, &c) in s.series.coeffs().iter().enumerate() {
                report.rows.push(vec![Cell::Int(k), Cell::Num(c)]);
            }
            report.note("label", json!(s.label));
            if let Some(trace) = &s.trace {
                let list =
                    |t: &crate::series::TruncatedSeries| Value::Array(t.coeffs().iter().map(|&c| num(c)).collect());
                report.note(
                    "pipeline",
                    json!({
                        "variable": format!("{:?}", trace.variable),
                        "v0_of_u": list(&trace.v0_of_u),
                        "u_of_v0": list(&trace.u_of_v0),
                        "w_of_u": list(&trace.w_of_u),
                    }),
                );
            }
            Ok(report)
        }
        Command::Deep { family, common } => {
            if !matches!(common.well, Well::Gaussian) {
                return Err(usage("deep-well fits are available for the gaussian well".into()));
            }
            let fit = deep_expansion_fit(*family).during("expansions::deep_expansion_fit")?;
            let mut report = Report::new("deep", &["quantity", "fitted", "reference"]);
            report.input("well", json!(common.well.name()));
            report.input("family", json!(family.name()));
            let rows = [
                ("linear", Some(fit.fitted.linear), Some(fit.expansion.linear)),
                ("sqrt", Some(fit.fitted.sqrt), Some(fit.expansion.sqrt)),
                ("constant", Some(fit.fitted.constant), Some(fit.expansion.constant)),
                ("a1", fit.fitted.a1, fit.expansion.a1),
                ("a2", fit.fitted.a2, fit.expansion.a2),
            ];
            for (name, fitted, reference) in rows {
                report.rows.push(vec![
                    Cell::Text(name.into()),
                    fitted.map_or(Cell::Empty, Cell::Num),
                    reference.map_or(Cell::Empty, Cell::Num),
                ]);
            }
            let list = |v: &[f64]| Value::Array(v.iter().map(|&x| num(x)).collect());
            report.note("ladder", list(&fit.ladder));
            report.note("residuals", list(&fit.residuals));
            report.note(
                "fitted_without_top_decade",
                json!({
                    "linear": num(fit.fitted_lower.linear),
                    "sqrt": num(fit.fitted_lower.sqrt),
                    "constant": num(fit.fitted_lower.constant),
                }),
            );
            Ok(report)
        }
        Command::Critical {
            state,
            methods,
            family,
            common,
        } => {
            check_state(*state)?;
            let shape = common.well.shape();
            let mut report = Report::new("critical", &["state", "method", "a_c", "v0_c"]);
            report.input("well", json!(common.well.name()));
            report.input("state", json!(state));
            let families: Vec<(String, Option<TrialFamily>)> = match family {
                Some(f) => vec![(f.name().to_string(), Some(*f))],
                None => methods
                    .0
                    .iter()
                    .map(|&m| {
                        let f = match m {
                            Method::Harmonic => Some(TrialFamily::for_state(*state, true)),
                            Method::Exponential => Some(TrialFamily::for_state(*state, false)),
                            Method::Numerov => None,
                        };
                        f.transpose()
                            .during("trial::for_state")
                            .map(|f| (m.name().to_string(), f))
                    })
                    .collect::<Result<_, _>>()?,
            };
            report.input(
                "methods",
                json!(families.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>()),
            );
            for (name, fam) in families {
                match fam {
                    Some(f) => {
                        let c = variational_critical_on(f, shape).during("trial::variational_critical")?;
                        report.rows.push(vec![
                            Cell::Int(*state),
                            Cell::Text(name),
                            Cell::Num(c.a_c),
                            Cell::Num(c.v0_c),
                        ]);
                    }
                    None => {
                        let v = critical_strength_exact(shape, *state).during("oracle::critical_strength_exact")?;
                        report
                            .rows
                            .push(vec![Cell::Int(*state), Cell::Text(name), Cell::Empty, Cell::Num(v)]);
                    }
                }
            }
            Ok(report)
        }
        Command::Crossing { state, common } => {
            check_state(*state)?;
            if !matches!(common.well, Well::Gaussian) {
                return Err(usage("crossings are available for the gaussian well".into()));
            }
            let c = crossing_point(*state).during("oracle::crossing_point")?;
            let mut report = Report::new("crossing", &["state", "v_c", "lo", "hi"]);
            report.input("well", json!(common.well.name()));
            report.input("state", json!(state));
            report.rows.push(vec![
                Cell::Int(c.state),
                Cell::Num(c.v_c),
                Cell::Num(c.bracket.0),
                Cell::Num(c.bracket.1),
            ]);
            let lo_gap = variational_gap(*state, c.bracket.0).during("oracle::variational_gap")?;
            let hi_gap = variational_gap(*state, c.bracket.1).during("oracle::variational_gap")?;
            report.note("gap_exp_minus_harm", json!({ "lo": num(lo_gap), "hi": num(hi_gap) }));
            Ok(report)
        }
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Energy { common, .. }
        | Command::Sweep { common, .. }
        | Command::Series { common, .. }
        | Command::Deep { common, .. }
        | Command::Critical { common, .. }
        | Command::Crossing { common, .. } => common,
    }
}

/// Parse `args` (program name first), run the subcommand and write the
/// report to `out` or to `--out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(f) => {
            let _ = writeln!(err, "error: {}: {}", f.operation, f.error);
            return f.exit_code();
        }
    };
    let options = common(&cli.command);
    let text = report.render(options.format);
    let written = match &options.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("varwell").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn general_format() {
        assert_eq!(format_g(0.0), "0");
        assert_eq!(format_g(1.0), "1");
        assert_eq!(format_g(0.25), "0.25");
        assert_eq!(format_g(-1.5e-5), "-1.5e-05");
        assert_eq!(format_g(1e-4), "0.0001");
        assert_eq!(format_g(123456789012.0), "123456789012");
        assert_eq!(format_g(1234567890123.0), "1.23456789012e+12");
        assert_eq!(format_g(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_g(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(format_g(9.9999999999996), "10");
    }

    #[test]
    fn method_lists() {
        let all: MethodList = "all".parse().unwrap();
        assert_eq!(all.0, vec![Method::Harmonic, Method::Exponential, Method::Numerov]);
        let two: MethodList = "numerov,harmonic".parse().unwrap();
        assert_eq!(two.0, vec![Method::Harmonic, Method::Numerov]);
        assert!("simplex".parse::<MethodList>().is_err());
        assert!("0,2".parse::<StateList>().is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&["energy"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["energy", "--v0", "-1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["energy", "--v0", "1", "--state", "2"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["sweep", "--v0-min", "2", "--v0-max", "1"]).0, EXIT_USAGE);
    }

    #[test]
    fn numeric_failure_exits_three_and_names_operation() {
        let (code, _, err) = run_capture(&["energy", "--v0", "1", "--state", "1", "--method", "numerov"]);
        assert_eq!(code, EXIT_NUMERIC);
        assert!(err.contains("oracle::numerov_eigen"), "{err}");
        let (code, _, err) = run_capture(&["energy", "--v0", "1", "--state", "1", "--method", "harmonic"]);
        assert_eq!(code, EXIT_NUMERIC);
        assert!(err.contains("trial::optimize_parameter"), "{err}");
    }

    #[test]
    fn energy_json_has_report_keys() {
        let (code, out, _) = run_capture(&["energy", "--v0", "2", "--method", "all", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        for key in ["inputs", "results", "diagnostics"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        let rows = v["results"].as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[2]["a_opt"].is_null());
    }

    #[test]
    fn sweep_skips_unbound_points() {
        let (code, out, _) = run_capture(&[
            "sweep",
            "--v0-min",
            "1",
            "--v0-max",
            "3",
            "--points",
            "3",
            "--states",
            "1",
            "--methods",
            "numerov",
        ]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 3, "{out}");
    }

    #[test]
    fn series_table() {
        let (code, out, _) = run_capture(&["series", "--family", "harm-even", "--order", "4"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "power,coefficient\n0,0\n1,0\n2,-1\n3,0\n4,4\n");
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["energy", "--v0", "3.5", "--state", "1", "--method", "all"];
        assert_eq!(run_capture(&args), run_capture(&args));
    }
}
