//! `qml`: evaluate the series, list zeros, solve radii, print bounds, run the
//! verification suite and sweep parameter grids.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qml_core::grid::Execution;
use qml_core::output::{format_f64, to_json_string};
use qml_core::rayleigh::radius_bounds;
use qml_core::sweep::{self, OutputFormat, SweepSpec};
use qml_core::verify::{self, VerifyGrid};
use qml_core::zeros::DEFAULT_TOL;
use qml_core::{
    eval_series, NormalizedFamily, Property, QmlError, QmlParams, RadiusQuery, RadiusSolver, SeriesKind, ZeroKind,
    ZeroOptions, ZeroSet,
};
use serde::Serialize;
use std::collections::HashMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

/// Process exit codes.
mod code {
    pub const VERIFY_FAILED: u8 = 1;
    pub const DOMAIN: u8 = 2;
    pub const NON_CONVERGENCE: u8 = 3;
    pub const CONDITION: u8 = 4;
    pub const UNSUPPORTED: u8 = 5;
    pub const BRACKET: u8 = 6;
    pub const INSUFFICIENT_ZEROS: u8 = 7;
    pub const MISMATCHED_PARAMS: u8 = 8;
    pub const USAGE: u8 = 64;
    pub const IO: u8 = 74;
}

const DEFAULT_Q: f64 = 0.1;
const DEFAULT_GAMMA: f64 = 0.5;
const DEFAULT_SIGMA: f64 = 1.0;
const DEFAULT_COUNT: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "qml", version, about = "q-Mittag-Leffler functions: zeros, radii, bounds and verification")]
struct Cli {
    /// Tolerance: absolute for eval, relative for zeros and radii
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Proceed when the zero-reality condition fails
    #[arg(long, global = true)]
    force: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key=value settings; command-line flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Evaluate grid points on one thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default)]
struct ParamArgs {
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
}

#[derive(Args, Debug, Default)]
struct GridArgs {
    #[arg(long, value_delimiter = ',')]
    q_values: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    gamma_values: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    sigma_values: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    alpha_values: Option<Vec<f64>>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate a series or one of its first two derivatives
    Eval {
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_negative_numbers = true)]
        z: Option<f64>,
        #[arg(long)]
        deriv: Option<u32>,
        /// α of E_{α,β} (generic-e only)
        #[arg(long)]
        ml_alpha: Option<f64>,
        /// β of E_{α,β} (generic-e only)
        #[arg(long, allow_negative_numbers = true)]
        ml_beta: Option<f64>,
    },
    /// List positive zeros with their brackets
    Zeros {
        #[arg(long, value_enum)]
        kind: Option<ZeroKindArg>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Solve for a radius of starlikeness or convexity of order alpha
    Radius {
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long, value_enum)]
        property: Option<PropertyArg>,
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Closed-form Euler–Rayleigh bounds on the order-0 radius
    Bounds {
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long, value_enum)]
        property: Option<PropertyArg>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the verification suite over a grid
    Verify {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Tabulate radii and bounds over a grid
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, value_delimiter = ',')]
        families: Option<Vec<FamilyArg>>,
        #[arg(long, value_enum, value_delimiter = ',')]
        properties: Option<Vec<PropertyArg>>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Lambda,
    PsiPrimeReduced,
    Phi,
    Varphi,
    BigPhi,
    Psi,
    GenericE,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ZeroKindArg {
    Epsilon,
    Xi,
    Theta,
    Varsigma,
    Ell,
    Nu,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    F,
    G,
    H,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PropertyArg {
    Starlike,
    Convex,
}

impl From<ZeroKindArg> for ZeroKind {
    fn from(k: ZeroKindArg) -> Self {
        match k {
            ZeroKindArg::Epsilon => ZeroKind::Epsilon,
            ZeroKindArg::Xi => ZeroKind::Xi,
            ZeroKindArg::Theta => ZeroKind::Theta,
            ZeroKindArg::Varsigma => ZeroKind::VarSigma,
            ZeroKindArg::Ell => ZeroKind::Ell,
            ZeroKindArg::Nu => ZeroKind::Nu,
        }
    }
}

impl From<FamilyArg> for NormalizedFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::F => NormalizedFamily::F,
            FamilyArg::G => NormalizedFamily::G,
            FamilyArg::H => NormalizedFamily::H,
        }
    }
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::Starlike => Property::Starlike,
            PropertyArg::Convex => Property::Convex,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Lib(QmlError),
    Usage(String),
    Io(String),
    VerifyFailed(String),
}

impl From<QmlError> for Failure {
    fn from(e: QmlError) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::VerifyFailed(_) => code::VERIFY_FAILED,
            Failure::Usage(_) => code::USAGE,
            Failure::Io(_) => code::IO,
            Failure::Lib(e) => match e {
                QmlError::Domain(_) | QmlError::Pole(_) => code::DOMAIN,
                QmlError::NonConvergence { .. } => code::NON_CONVERGENCE,
                QmlError::ConditionViolated { .. } => code::CONDITION,
                QmlError::Unsupported(_) => code::UNSUPPORTED,
                QmlError::BracketFailure { .. } => code::BRACKET,
                QmlError::InsufficientZeros { .. } => code::INSUFFICIENT_ZEROS,
                QmlError::MismatchedParams => code::MISMATCHED_PARAMS,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Io(m) => format!("I/O error: {m}"),
            Failure::VerifyFailed(m) => format!("verification failed; first failing check: {m}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

const CONFIG_KEYS: [&str; 23] = [
    "tol",
    "force",
    "format",
    "out",
    "sequential",
    "q",
    "gamma",
    "sigma",
    "z",
    "deriv",
    "kind",
    "ml_alpha",
    "ml_beta",
    "count",
    "family",
    "property",
    "alpha",
    "q_values",
    "gamma_values",
    "sigma_values",
    "alpha_values",
    "families",
    "properties",
];

/// Settings from a `key = value` file; blank lines and `#` comments ignored.
#[derive(Debug, Default)]
struct Config(HashMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else { return Ok(Config::default()) };
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let mut map = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
            let k = k.trim().replace('-', "_");
            if !CONFIG_KEYS.contains(&k.as_str()) {
                return Err(Failure::Usage(format!("{}:{}: unknown key '{k}'", path.display(), i + 1)));
            }
            map.insert(k, v.trim().to_string());
        }
        Ok(Config(map))
    }

    fn parse<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.0
            .get(key)
            .map(|v| v.parse::<T>().map_err(|_| Failure::Usage(format!("config key '{key}': cannot parse '{v}'"))))
            .transpose()
    }

    fn value<T: FromStr>(&self, cli: Option<T>, key: &str) -> CliResult<Option<T>> {
        match cli {
            Some(v) => Ok(Some(v)),
            None => self.parse(key),
        }
    }

    fn or<T: FromStr>(&self, cli: Option<T>, key: &str, default: T) -> CliResult<T> {
        Ok(self.value(cli, key)?.unwrap_or(default))
    }

    fn enumeration<T: ValueEnum>(&self, cli: Option<T>, key: &str) -> CliResult<Option<T>> {
        if cli.is_some() {
            return Ok(cli);
        }
        self.0
            .get(key)
            .map(|v| {
                T::from_str(v, true).map_err(|_| Failure::Usage(format!("config key '{key}': invalid value '{v}'")))
            })
            .transpose()
    }

    fn list<T: FromStr>(&self, cli: Option<Vec<T>>, key: &str, default: Vec<T>) -> CliResult<Vec<T>> {
        if let Some(v) = cli {
            return Ok(v);
        }
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<T>().map_err(|_| Failure::Usage(format!("config key '{key}': cannot parse '{s}'"))))
                .collect(),
        }
    }

    fn enum_list<T: ValueEnum>(&self, cli: Option<Vec<T>>, key: &str, default: Vec<T>) -> CliResult<Vec<T>> {
        if let Some(v) = cli {
            return Ok(v);
        }
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    T::from_str(s, true).map_err(|_| Failure::Usage(format!("config key '{key}': invalid value '{s}'")))
                })
                .collect(),
        }
    }
}

/// Global settings after merging flags, config and defaults.
struct Global {
    tol: Option<f64>,
    force: bool,
    format: FormatArg,
    out: Option<PathBuf>,
    exec: Execution,
}

impl Global {
    fn tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }
}

fn params(cfg: &Config, a: &ParamArgs) -> CliResult<QmlParams> {
    Ok(QmlParams::new(
        cfg.or(a.q, "q", DEFAULT_Q)?,
        cfg.or(a.gamma, "gamma", DEFAULT_GAMMA)?,
        cfg.or(a.sigma, "sigma", DEFAULT_SIGMA)?,
    )?)
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).map_err(|e| Failure::Io(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| Failure::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn num(x: f64) -> String {
    format_f64(x).replace("null", "")
}

fn json_line<T: Serialize + ?Sized>(v: &T) -> String {
    to_json_string(v) + "\n"
}

#[derive(Serialize)]
struct EvalOutput {
    kind: &'static str,
    params: QmlParams,
    z: f64,
    deriv: u32,
    value: f64,
    tail_bound: f64,
    terms_used: usize,
}

#[derive(Serialize)]
struct ZeroRow {
    n: usize,
    bracket_lo: f64,
    bracket_hi: f64,
    zero: f64,
    residual: f64,
}

#[derive(Serialize)]
struct ZerosOutput {
    kind: ZeroKind,
    params: QmlParams,
    tol: f64,
    reality_verified: bool,
    rows: Vec<ZeroRow>,
}

fn cmd_eval(
    g: &Global,
    cfg: &Config,
    kind: Option<KindArg>,
    pa: &ParamArgs,
    z: Option<f64>,
    deriv: Option<u32>,
    ml: (Option<f64>, Option<f64>),
) -> CliResult<()> {
    let p = params(cfg, pa)?;
    let kind = cfg.enumeration(kind, "kind")?.unwrap_or(KindArg::Lambda);
    let kind = match kind {
        KindArg::Lambda => SeriesKind::Lambda,
        KindArg::PsiPrimeReduced => SeriesKind::PsiPrimeReduced,
        KindArg::Phi => SeriesKind::PhiSmall,
        KindArg::Varphi => SeriesKind::VarPhi,
        KindArg::BigPhi => SeriesKind::BigPhi,
        KindArg::Psi => SeriesKind::PsiSmall,
        KindArg::GenericE => SeriesKind::GenericE {
            alpha: cfg.or(ml.0, "ml_alpha", 2.0)?,
            beta: cfg.or(ml.1, "ml_beta", p.gamma + 1.0)?,
        },
    };
    let z = cfg.or(z, "z", 0.0)?;
    let deriv = cfg.or(deriv, "deriv", 0)?;
    if deriv > 2 {
        return Err(QmlError::Domain(format!("derivative order must be 0, 1 or 2, got {deriv}")).into());
    }
    let r = eval_series(kind, &p, z, deriv, g.tol())?;
    let out = EvalOutput {
        kind: kind.name(),
        params: p,
        z,
        deriv,
        value: r.value,
        tail_bound: r.tail_bound,
        terms_used: r.terms_used,
    };
    let text = match g.format {
        FormatArg::Json => json_line(&out),
        FormatArg::Csv => csv_text(
            &["kind", "q", "gamma", "sigma", "z", "deriv", "value", "tail_bound", "terms_used"],
            &[vec![
                out.kind.into(),
                num(p.q),
                num(p.gamma),
                num(p.sigma),
                num(z),
                deriv.to_string(),
                num(r.value),
                num(r.tail_bound),
                r.terms_used.to_string(),
            ]],
        )?,
    };
    g.emit(&text)
}

fn cmd_zeros(
    g: &Global,
    cfg: &Config,
    kind: Option<ZeroKindArg>,
    pa: &ParamArgs,
    count: Option<usize>,
) -> CliResult<()> {
    let p = params(cfg, pa)?;
    let kind: ZeroKind = cfg.enumeration(kind, "kind")?.unwrap_or(ZeroKindArg::Epsilon).into();
    let count = cfg.or(count, "count", DEFAULT_COUNT)?;
    let mut set = ZeroSet::new(p, ZeroOptions { tol: g.tol(), force: g.force })?;
    let seq = set.get(kind, count)?.truncated(count);
    let rows: Vec<ZeroRow> = (0..seq.zeros.len())
        .map(|i| ZeroRow {
            n: i + 1,
            bracket_lo: seq.brackets[i].lo,
            bracket_hi: seq.brackets[i].hi,
            zero: seq.zeros[i],
            residual: seq.residuals[i],
        })
        .collect();
    let text = match g.format {
        FormatArg::Json => {
            json_line(&ZerosOutput { kind, params: p, tol: seq.tol, reality_verified: seq.reality_verified, rows })
        }
        FormatArg::Csv => csv_text(
            &["n", "bracket_lo", "bracket_hi", "zero", "residual"],
            &rows
                .iter()
                .map(|r| vec![r.n.to_string(), num(r.bracket_lo), num(r.bracket_hi), num(r.zero), num(r.residual)])
                .collect::<Vec<_>>(),
        )?,
    };
    g.emit(&text)
}

fn family_property(
    cfg: &Config,
    family: Option<FamilyArg>,
    property: Option<PropertyArg>,
) -> CliResult<(NormalizedFamily, Property)> {
    let f = cfg.enumeration(family, "family")?.ok_or_else(|| Failure::Usage("--family is required".into()))?;
    let p = cfg.enumeration(property, "property")?.ok_or_else(|| Failure::Usage("--property is required".into()))?;
    Ok((f.into(), p.into()))
}

fn cmd_radius(
    g: &Global,
    cfg: &Config,
    family: Option<FamilyArg>,
    property: Option<PropertyArg>,
    alpha: Option<f64>,
    pa: &ParamArgs,
) -> CliResult<()> {
    let p = params(cfg, pa)?;
    let (f, pr) = family_property(cfg, family, property)?;
    let query = RadiusQuery::new(f, pr, cfg.or(alpha, "alpha", 0.0)?)?;
    let mut solver = RadiusSolver::new(p, ZeroOptions { tol: g.tol(), force: g.force })?;
    let r = solver.radius(query)?;
    let text = match g.format {
        FormatArg::Json => json_line(&r),
        FormatArg::Csv => {
            let b = r.bounds_check;
            csv_text(
                &[
                    "family",
                    "property",
                    "alpha",
                    "q",
                    "gamma",
                    "sigma",
                    "radius",
                    "residual",
                    "search_lo",
                    "search_hi",
                    "normalized_lower",
                    "normalized_upper",
                ],
                &[vec![
                    f.name().into(),
                    pr.name().into(),
                    num(query.alpha),
                    num(p.q),
                    num(p.gamma),
                    num(p.sigma),
                    num(r.value),
                    num(r.residual),
                    num(r.search_interval.0),
                    num(r.search_interval.1),
                    b.map(|b| num(b.normalized_radius_lower)).unwrap_or_default(),
                    b.map(|b| num(b.normalized_radius_upper)).unwrap_or_default(),
                ]],
            )?
        }
    };
    g.emit(&text)
}

fn cmd_bounds(
    g: &Global,
    cfg: &Config,
    family: Option<FamilyArg>,
    property: Option<PropertyArg>,
    pa: &ParamArgs,
) -> CliResult<()> {
    let p = params(cfg, pa)?;
    let (f, pr) = family_property(cfg, family, property)?;
    let b = radius_bounds(f, pr, &p)?;
    let text = match g.format {
        FormatArg::Json => json_line(&b),
        FormatArg::Csv => csv_text(
            &["family", "property", "quantity", "lower", "upper", "normalized_radius_lower", "normalized_radius_upper"],
            &[vec![
                f.name().into(),
                pr.name().into(),
                to_json_string(&b.quantity).trim_matches('"').into(),
                num(b.lower),
                num(b.upper),
                num(b.normalized_radius_lower),
                num(b.normalized_radius_upper),
            ]],
        )?,
    };
    g.emit(&text)
}

fn grid_lists(cfg: &Config, a: &GridArgs, default_alphas: Vec<f64>) -> CliResult<[Vec<f64>; 4]> {
    let d = VerifyGrid::default();
    let lists = [
        cfg.list(a.q_values.clone(), "q_values", d.q_values)?,
        cfg.list(a.gamma_values.clone(), "gamma_values", d.gamma_values)?,
        cfg.list(a.sigma_values.clone(), "sigma_values", d.sigma_values)?,
        cfg.list(a.alpha_values.clone(), "alpha_values", default_alphas)?,
    ];
    if lists.iter().any(Vec::is_empty) {
        return Err(Failure::Usage("empty grid".into()));
    }
    Ok(lists)
}

fn cmd_verify(g: &Global, cfg: &Config, a: &GridArgs) -> CliResult<()> {
    let [q_values, gamma_values, sigma_values, alpha_values] = grid_lists(cfg, a, VerifyGrid::default().alpha_values)?;
    let grid = VerifyGrid { q_values, gamma_values, sigma_values, alpha_values };
    let report = verify::run(&grid, g.exec)?;
    let text = match g.format {
        FormatArg::Json => json_line(&report),
        FormatArg::Csv => csv_text(
            &["check_id", "subject", "q", "gamma", "sigma", "alpha", "status", "lhs", "rhs", "margin", "detail"],
            &report
                .checks
                .iter()
                .map(|c| {
                    let p = c.params;
                    vec![
                        c.check_id.clone(),
                        c.subject.clone(),
                        p.map(|p| num(p.q)).unwrap_or_default(),
                        p.map(|p| num(p.gamma)).unwrap_or_default(),
                        p.map(|p| num(p.sigma)).unwrap_or_default(),
                        p.and_then(|p| p.alpha).map(num).unwrap_or_default(),
                        to_json_string(&c.status).trim_matches('"').into(),
                        num(c.lhs),
                        num(c.rhs),
                        num(c.margin),
                        c.detail.clone(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    g.emit(&text)?;
    let s = &report.summary;
    eprintln!("checks: {} passed, {} failed, {} skipped", s.passed, s.failed, s.skipped);
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(Failure::VerifyFailed(format!("{} ({})", verify::describe(c), c.detail))),
    }
}

fn cmd_sweep(
    g: &Global,
    cfg: &Config,
    a: &GridArgs,
    families: Option<Vec<FamilyArg>>,
    properties: Option<Vec<PropertyArg>>,
) -> CliResult<()> {
    let d = SweepSpec::default();
    let [q_values, gamma_values, sigma_values, alpha_values] = grid_lists(cfg, a, d.alpha_values)?;
    let families = cfg.enum_list(families, "families", vec![FamilyArg::F, FamilyArg::G, FamilyArg::H])?;
    let properties = cfg.enum_list(properties, "properties", vec![PropertyArg::Starlike, PropertyArg::Convex])?;
    if families.is_empty() || properties.is_empty() {
        return Err(Failure::Usage("empty grid".into()));
    }
    let spec = SweepSpec {
        q_values,
        gamma_values,
        sigma_values,
        alpha_values,
        families: families.into_iter().map(Into::into).collect(),
        properties: properties.into_iter().map(Into::into).collect(),
        output_format: match g.format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        },
    };
    let rows = sweep::run(&spec, g.exec, g.force, g.tol())?;
    let mut buf = Vec::new();
    sweep::write(&mut buf, &rows, spec.output_format)?;
    g.emit(&String::from_utf8(buf).expect("sweep output is UTF-8"))
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = Config::load(cli.config.as_deref())?;
    let g = Global {
        tol: cfg.value(cli.tol, "tol")?,
        force: cli.force || cfg.parse::<bool>("force")?.unwrap_or(false),
        format: cfg.enumeration(cli.format, "format")?.unwrap_or(FormatArg::Json),
        out: cli.out.or(cfg.parse::<PathBuf>("out")?),
        exec: if cli.sequential || cfg.parse::<bool>("sequential")?.unwrap_or(false) {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(QmlError::Domain(format!("tolerance must be positive, got {t}")).into());
        }
    }
    match &cli.cmd {
        Cmd::Eval { kind, params, z, deriv, ml_alpha, ml_beta } => {
            cmd_eval(&g, &cfg, *kind, params, *z, *deriv, (*ml_alpha, *ml_beta))
        }
        Cmd::Zeros { kind, params, count } => cmd_zeros(&g, &cfg, *kind, params, *count),
        Cmd::Radius { family, property, alpha, params } => cmd_radius(&g, &cfg, *family, *property, *alpha, params),
        Cmd::Bounds { family, property, params } => cmd_bounds(&g, &cfg, *family, *property, params),
        Cmd::Verify { grid } => cmd_verify(&g, &cfg, grid),
        Cmd::Sweep { grid, families, properties } => cmd_sweep(&g, &cfg, grid, families.clone(), properties.clone()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(code::USAGE),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qml: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
