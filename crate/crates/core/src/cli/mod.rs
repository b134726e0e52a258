//! Command-line front end.
//!
//! Complex numbers are written "re,im" (or just "re") on the command line and
//! as `[re, im]` in JSON. Errors are reported as
//! `{"error": {"code": …, "message": …}}` with exit status 2 for invalid input
//! and 3 for numerical failures.

pub mod config;
pub mod suite;

use crate::error::{HeunError, Result};
use crate::fuchsian::{FuchsianSystem, SystemSpec};
use crate::heun_reduction::{reduce, to_canonical_ghe};
use crate::monodromy::{fricke_residual, monodromy_matrices, trace_coordinates};
use crate::numerics::QuadratureRule;
use crate::pole_matrices::{limit_system, LimitSystem, Variant};
use crate::pvi_series::{double_pole_jet, simple_pole_jet};
use crate::reducible_rh::{heun_locus, heun_locus_ratio, moments_with, ReducibleData, SearchRegion};
use clap::{Parser, Subcommand, ValueEnum};
use config::Config;
use num_complex::Complex64 as C64;
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "heunrh", version, about = "Painleve VI Fuchsian systems, pole limits, Heun reductions, monodromy and Heun polynomials")]
pub struct Cli {
    /// JSON config replacing the built-in defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    GaussJacobi,
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LocusMode {
    /// Root-find in the position a at fixed s₁, s₃.
    Position,
    /// Root-find in s₃ at fixed a and s₁.
    Ratio,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Laurent jet of y(x) at a movable pole.
    PoleSeries {
        /// +1 or -1 for a simple pole; omit with --cm2 for a double pole.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<i8>,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        delta: Option<C64>,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        a: C64,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        c0: Option<C64>,
        /// Leading coefficient c₋₂ of a double pole (δ = ½).
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        cm2: Option<C64>,
        #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
        alpha: Option<[C64; 3]>,
        /// Highest retained power of (x − a).
        #[arg(long, allow_hyphen_values = true)]
        order: Option<i32>,
    },
    /// Closed-form limit coefficients of A(λ) at a pole.
    LimitMatrix {
        #[arg(long)]
        variant: Variant,
        /// JSON object with a, delta, alpha, kappa0 and c0 (or cm2 for tilde).
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        a: Option<C64>,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        delta: Option<C64>,
        #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
        alpha: Option<[C64; 3]>,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        c0: Option<C64>,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        cm2: Option<C64>,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        kappa0: Option<C64>,
    },
    /// Reduce a limit system (JSON, "-" for stdin) to Heun parameters.
    Reduce {
        #[arg(long)]
        input: PathBuf,
    },
    /// Numerical monodromy of a Fuchsian or limit system (JSON, "-" for stdin).
    Monodromy {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        radius_factor: Option<f64>,
        #[arg(long)]
        anchor_radius: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Moments φ_k of the reducible jump weight.
    Moments {
        #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
        alpha: [C64; 3],
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        a: C64,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        s1: C64,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        s3: C64,
        #[arg(long)]
        count: Option<usize>,
        /// Fixed rule; without it Gauss–Jacobi is refined automatically.
        #[arg(long, value_enum)]
        rule: Option<RuleArg>,
    },
    /// Heun polynomials on the locus Δ_{n+1} = 0.
    HeunPoly {
        #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
        alpha: [C64; 3],
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        s1: C64,
        /// Required in position mode; the ratio mode solves for it.
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        s3: Option<C64>,
        /// re0:re1:im0:im1
        #[arg(long, value_parser = parse_region, allow_hyphen_values = true)]
        region: Option<[f64; 4]>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum, default_value_t = LocusMode::Position)]
        mode: LocusMode,
        /// Position a for the ratio mode.
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        a: Option<C64>,
        /// Also write the scan CSV here.
        #[arg(long)]
        scan_csv: Option<PathBuf>,
        /// Also write the root report JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "invariants")]
        suite: String,
    },
}

/// "re,im" or "re".
pub fn parse_c64(s: &str) -> std::result::Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im, got {s:?}")),
    }
}

/// Three reals "a1,a2,a3", or three complex numbers "re,im;re,im;re,im".
pub fn parse_alpha(s: &str) -> std::result::Result<[C64; 3], String> {
    let v: Vec<C64> = if s.contains(';') {
        s.split(';').map(parse_c64).collect::<std::result::Result<_, _>>()?
    } else {
        s.split(',').map(parse_c64).collect::<std::result::Result<_, _>>()?
    };
    v.try_into().map_err(|_| format!("expected three exponents, got {s:?}"))
}

/// "re0:re1:im0:im1".
pub fn parse_region(s: &str) -> std::result::Result<[f64; 4], String> {
    let v: Vec<f64> = s
        .split(':')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    v.try_into().map_err(|_| format!("expected re0:re1:im0:im1, got {s:?}"))
}

/// What a command produced: the JSON document, an optional CSV rendering and
/// the exit status on success.
pub struct Artifacts {
    pub json: Value,
    pub csv: Option<String>,
    pub status: i32,
}

impl Artifacts {
    fn new(json: Value, csv: String) -> Self {
        Artifacts { json, csv: Some(csv), status: 0 }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| HeunError::ConfigInvalid(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| HeunError::ConfigInvalid(format!("{}: {e}", path.display())))
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| HeunError::ConfigInvalid(format!("{what}: {e}")))
}

struct CsvTable(csv::Writer<Vec<u8>>);

impl CsvTable {
    fn new(header: &[&str]) -> Self {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).expect("in-memory write");
        CsvTable(w)
    }
    fn row<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        self.0.write_record(cells.into_iter().collect::<Vec<_>>()).expect("in-memory write");
    }
    fn finish(self) -> String {
        String::from_utf8(self.0.into_inner().expect("flush")).expect("utf8")
    }
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn complex_rows(pairs: &[(String, C64)]) -> String {
    let mut t = CsvTable::new(&["key", "re", "im"]);
    for (k, v) in pairs {
        t.row([k.clone(), num(v.re), num(v.im)]);
    }
    t.finish()
}

#[allow(clippy::too_many_arguments)]
fn pole_series(
    cfg: &Config,
    sigma: Option<i8>,
    delta: Option<C64>,
    a: C64,
    c0: Option<C64>,
    cm2: Option<C64>,
    alpha: Option<[C64; 3]>,
    order: Option<i32>,
) -> Result<Artifacts> {
    let alpha = alpha.unwrap_or(cfg.pole_series.alpha);
    let depth = cfg.pole_series.depth as i32;
    let jet = match (sigma, cm2) {
        (Some(s), None) => {
            let delta = delta.ok_or_else(|| HeunError::ConfigInvalid("--delta is required for a simple pole".into()))?;
            simple_pole_jet(a, c0.unwrap_or_default(), s, delta, alpha, order.unwrap_or(depth - 2))?
        }
        (None, Some(cm2)) => {
            if let Some(d) = delta {
                if (d - 0.5).norm() > 1e-12 {
                    return Err(HeunError::BadDelta(format!("double poles need delta = 1/2, got {d}")));
                }
            }
            double_pole_jet(a, cm2, alpha, order.unwrap_or(depth - 3))?
        }
        _ => return Err(HeunError::ConfigInvalid("give exactly one of --sigma or --cm2".into())),
    };
    let rows: Vec<(String, C64)> = jet.coeffs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    Ok(Artifacts::new(to_value(&jet), complex_rows(&rows)))
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct LimitParams {
    a: Option<C64>,
    delta: Option<C64>,
    alpha: Option<[C64; 3]>,
    c0: Option<C64>,
    cm2: Option<C64>,
    kappa0: Option<C64>,
}

fn limit_rows(ls: &LimitSystem) -> String {
    let c = &ls.coeffs;
    let mut rows = vec![("a3".to_string(), c.a3), ("b3".into(), c.b3), ("c3".into(), c.c3)];
    if let Some(bp) = c.bp {
        rows.push(("bp".into(), bp));
    }
    rows.push(("cp".into(), c.cp));
    rows.push(("bm".into(), c.bm));
    if let Some(cm) = c.cm {
        rows.push(("cm".into(), cm));
    }
    complex_rows(&rows)
}

fn limit_matrix(cfg: &Config, variant: Variant, file: Option<&Path>, flags: LimitParams) -> Result<Artifacts> {
    let base: LimitParams = match file {
        Some(p) => parse_json(&read_input(p)?, "limit parameters")?,
        None => LimitParams::default(),
    };
    let missing = |name: &str| HeunError::ConfigInvalid(format!("missing parameter {name}"));
    let a = flags.a.or(base.a).ok_or_else(|| missing("a"))?;
    let alpha = flags.alpha.or(base.alpha).ok_or_else(|| missing("alpha"))?;
    let kappa0 = flags.kappa0.or(base.kappa0).unwrap_or(cfg.limit.kappa0);
    let (param, delta) = if variant == Variant::Tilde {
        let cm2 = flags.cm2.or(base.cm2).ok_or_else(|| missing("cm2"))?;
        (cm2, flags.delta.or(base.delta).unwrap_or(C64::new(0.5, 0.0)))
    } else {
        let c0 = flags.c0.or(base.c0).ok_or_else(|| missing("c0"))?;
        let delta = flags.delta.or(base.delta);
        let delta = match variant {
            Variant::Check => delta.unwrap_or(C64::new(1.0, 0.0)),
            _ => delta.ok_or_else(|| missing("delta"))?,
        };
        (c0, delta)
    };
    let ls = limit_system(variant, a, param, delta, alpha, kappa0)?;
    Ok(Artifacts::new(to_value(&ls), limit_rows(&ls)))
}

fn reduce_cmd(input: &Path) -> Result<Artifacts> {
    let ls: LimitSystem = parse_json(&read_input(input)?, "limit system")?;
    let hp = reduce(&ls)?;
    let ghe = to_canonical_ghe(&hp);
    let json = json!({
        "heun_parameters": to_value(&hp),
        "canonical": to_value(&ghe),
        "fuchs_residual": ghe.fuchs_residual().norm(),
    });
    let rows = vec![
        ("mu".to_string(), hp.mu),
        ("nu".into(), hp.nu),
        ("gamma".into(), ghe.gamma),
        ("kappa".into(), ghe.kappa_exp),
        ("epsilon".into(), ghe.epsilon),
        ("alpha".into(), ghe.alpha),
        ("beta".into(), ghe.beta),
        ("q".into(), ghe.q),
        ("a".into(), ghe.a),
    ];
    Ok(Artifacts::new(json, complex_rows(&rows)))
}

fn monodromy_cmd(cfg: &Config, input: &Path, rf: Option<f64>, ar: Option<f64>, tol: Option<f64>) -> Result<Artifacts> {
    let text = read_input(input)?;
    let raw: Value = parse_json(&text, "system")?;
    let (field, alpha, kind) = if raw.get("variant").is_some() {
        let ls: LimitSystem = parse_json(&text, "limit system")?;
        (ls.field(), ls.exponent_table().0, "limit")
    } else {
        let spec: SystemSpec = parse_json(&text, "system")?;
        let s = FuchsianSystem::new(spec)?;
        (s.field(), s.alpha, "fuchsian")
    };
    let mut opts = cfg.monodromy.loop_options();
    opts.radius_factor = rf.unwrap_or(opts.radius_factor);
    opts.anchor_radius = ar.unwrap_or(opts.anchor_radius);
    opts.tol = tol.unwrap_or(opts.tol);
    let set = monodromy_matrices(&field, alpha, &opts)?;
    let tc = trace_coordinates(&set);
    let fricke = fricke_residual(&tc);
    let json = json!({
        "system": kind,
        "poles": to_value(&field.poles),
        "m": to_value(&set.m),
        "m_inf": to_value(&set.m_inf),
        "traces": to_value(&tc),
        "cyclic_residual": set.cyclic_residual(),
        "reversed_cyclic_residual": set.reversed_cyclic_residual(),
        "trace_error": set.trace_error(alpha),
        "det_error": set.max_rel_det_error(),
        "fricke_residual": fricke.norm(),
        "options": to_value(&opts),
    });
    let mut t = CsvTable::new(&["matrix", "row", "col", "re", "im"]);
    let named = [("M1", set.m[0]), ("M2", set.m[1]), ("M3", set.m[2]), ("Minf", set.m_inf)];
    for (name, m) in named {
        for (i, row) in m.m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.row([name.to_string(), (i + 1).to_string(), (j + 1).to_string(), num(v.re), num(v.im)]);
            }
        }
    }
    Ok(Artifacts::new(json, t.finish()))
}

#[allow(clippy::too_many_arguments)]
fn moments_cmd(
    cfg: &Config,
    alpha: [C64; 3],
    n: usize,
    a: C64,
    s1: C64,
    s3: C64,
    count: Option<usize>,
    rule: Option<RuleArg>,
) -> Result<Artifacts> {
    let rd = ReducibleData::new(alpha, n, a, s1, s3)?;
    let k = count.unwrap_or(cfg.moments.count).max(1);
    let m = &cfg.moments;
    let rule = match rule {
        Some(RuleArg::Adaptive) => QuadratureRule::adaptive(m.adaptive_budget, m.adaptive_tol),
        _ => QuadratureRule::gauss_jacobi(m.gauss_jacobi_nodes),
    };
    let mt = moments_with(&rd, k, &rule)?;
    let json = json!({ "data": to_value(&rd), "moments": to_value(&mt) });
    let mut t = CsvTable::new(&["k", "re", "im", "scale", "error"]);
    for j in 1..=k {
        let v = mt.phi(j);
        t.row([j.to_string(), num(v.re), num(v.im), num(mt.scale[j - 1]), num(mt.error[j - 1])]);
    }
    Ok(Artifacts::new(json, t.finish()))
}

fn scan_csv(scan: &[(C64, C64)]) -> String {
    let mut t = CsvTable::new(&["re_a", "im_a", "re_det", "im_det"]);
    for (a, d) in scan {
        t.row([num(a.re), num(a.im), num(d.re), num(d.im)]);
    }
    t.finish()
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| HeunError::ConfigInvalid(format!("{}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn heun_poly(
    cfg: &Config,
    alpha: [C64; 3],
    n: usize,
    s1: C64,
    s3: Option<C64>,
    region: Option<[f64; 4]>,
    grid: Option<usize>,
    mode: LocusMode,
    a: Option<C64>,
    scan_path: Option<&Path>,
    report_path: Option<&Path>,
) -> Result<Artifacts> {
    let (json, csv) = match mode {
        LocusMode::Position => {
            let mut reg = cfg.heun_poly.region;
            if let Some([r0, r1, i0, i1]) = region {
                reg = SearchRegion { re: [r0, r1], im: [i0, i1], grid: reg.grid };
            }
            reg.grid = grid.unwrap_or(reg.grid);
            reg.validate()?;
            // The stored position is a placeholder; the scan replaces it.
            let start = C64::new(0.5 * (reg.re[0] + reg.re[1]), 0.5 * (reg.im[0] + reg.im[1]) + 0.25);
            let s3 = s3.ok_or_else(|| HeunError::ConfigInvalid("--s3 is required in position mode".into()))?;
            let rd = ReducibleData::new(alpha, n, start, s1, s3)?;
            let rep = heun_locus(&rd, &reg)?;
            let json = json!({
                "mode": "position",
                "n": n,
                "alpha": to_value(&rd.alpha),
                "delta": to_value(&rd.delta),
                "s": to_value(&rd.s),
                "region": to_value(&rep.region),
                "seeds": rep.seeds,
                "roots": to_value(&rep.roots),
            });
            (json, scan_csv(&rep.scan))
        }
        LocusMode::Ratio => {
            let a = a.ok_or_else(|| HeunError::ConfigInvalid("--a is required in ratio mode".into()))?;
            let rd = ReducibleData::new(alpha, n, a, s1, s3.unwrap_or(C64::new(1.0, 0.0)))?;
            let roots = heun_locus_ratio(&rd)?;
            let mut t = CsvTable::new(&["re_s3", "im_s3", "defect", "residual"]);
            for r in &roots {
                t.row([num(r.s[2].re), num(r.s[2].im), num(r.defect), num(r.residual)]);
            }
            let json = json!({
                "mode": "ratio",
                "n": n,
                "a": to_value(&a),
                "alpha": to_value(&rd.alpha),
                "delta": to_value(&rd.delta),
                "roots": to_value(&roots),
            });
            (json, t.finish())
        }
    };
    if let Some(p) = scan_path {
        write_file(p, &csv)?;
    }
    if let Some(p) = report_path {
        write_file(p, &pretty(&json))?;
    }
    Ok(Artifacts::new(json, csv))
}

fn verify(cfg: &Config, name: &str) -> Result<Artifacts> {
    if name != "invariants" {
        return Err(HeunError::ConfigInvalid(format!("unknown suite {name:?} (available: invariants)")));
    }
    let checks = suite::invariants(cfg);
    let passed = checks.iter().all(|c| c.pass);
    let mut t = CsvTable::new(&["name", "value", "tol", "pass"]);
    for c in &checks {
        t.row([c.name.to_string(), num(c.value), num(c.tol), c.pass.to_string()]);
    }
    let json = json!({ "suite": name, "passed": passed, "checks": to_value(&checks) });
    Ok(Artifacts { json, csv: Some(t.finish()), status: if passed { 0 } else { 3 } })
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Artifacts> {
    let cfg = Config::load(cli.config.as_deref())?;
    match &cli.command {
        Command::PoleSeries { sigma, delta, a, c0, cm2, alpha, order } => {
            pole_series(&cfg, *sigma, *delta, *a, *c0, *cm2, *alpha, *order)
        }
        Command::LimitMatrix { variant, params, a, delta, alpha, c0, cm2, kappa0 } => {
            let flags = LimitParams { a: *a, delta: *delta, alpha: *alpha, c0: *c0, cm2: *cm2, kappa0: *kappa0 };
            limit_matrix(&cfg, *variant, params.as_deref(), flags)
        }
        Command::Reduce { input } => reduce_cmd(input),
        Command::Monodromy { input, radius_factor, anchor_radius, tol } => {
            monodromy_cmd(&cfg, input, *radius_factor, *anchor_radius, *tol)
        }
        Command::Moments { alpha, n, a, s1, s3, count, rule } => moments_cmd(&cfg, *alpha, *n, *a, *s1, *s3, *count, *rule),
        Command::HeunPoly { alpha, n, s1, s3, region, grid, mode, a, scan_csv, report } => heun_poly(
            &cfg,
            *alpha,
            *n,
            *s1,
            *s3,
            *region,
            *grid,
            *mode,
            *a,
            scan_csv.as_deref(),
            report.as_deref(),
        ),
        Command::Verify { suite } => verify(&cfg, suite),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn error_json(e: &HeunError) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}

/// Runs the command line `args` and returns (stdout text, exit status).
pub fn execute<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (e.to_string(), 0);
            }
            let err = HeunError::ConfigInvalid(e.to_string());
            return (pretty(&error_json(&err)), err.exit_code());
        }
    };
    match run(&cli) {
        Ok(art) => {
            let text = match (cli.output, art.csv) {
                (OutputFormat::Csv, Some(csv)) => csv,
                _ => pretty(&art.json),
            };
            (text, art.status)
        }
        Err(e) => (pretty(&error_json(&e)), e.exit_code()),
    }
}

/// Process entry point used by the binary.
pub fn main() -> i32 {
    let (text, status) = execute(std::env::args_os());
    print!("{text}");
    status
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_argument_formats() {
        assert_eq!(parse_c64("2,0").unwrap(), C64::new(2.0, 0.0));
        assert_eq!(parse_c64("-0.5, 1e-3").unwrap(), C64::new(-0.5, 1e-3));
        assert_eq!(parse_c64("3").unwrap(), C64::new(3.0, 0.0));
        assert!(parse_c64("1,2,3").is_err());
        let al = parse_alpha("0.1,0.2,0.15").unwrap();
        assert_eq!(al[2], C64::new(0.15, 0.0));
        let al = parse_alpha("0.1,0.05;0.2;0.15,-0.1").unwrap();
        assert_eq!(al[0], C64::new(0.1, 0.05));
        assert_eq!(al[2], C64::new(0.15, -0.1));
        assert_eq!(parse_region("0.1:0.9:-0.4:0.4").unwrap(), [0.1, 0.9, -0.4, 0.4]);
    }

    #[test]
    fn pole_series_simple_pole() {
        let (out, code) = execute(["heunrh", "pole-series", "--sigma", "+1", "--delta", "0.75", "--a", "2,0", "--c0", "0,0", "--order", "4"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["center"], json!([2.0, 0.0]));
        assert_eq!(v["leading"], json!(-1));
        let cm1 = &v["coeffs"]["-1"];
        assert!((cm1[0].as_f64().unwrap() - 4.0).abs() < 1e-14 && cm1[1].as_f64().unwrap().abs() < 1e-14);
        assert!(v["coeffs"].get("4").is_some() && v["coeffs"].get("5").is_none());
    }

    #[test]
    fn errors_carry_codes_and_exit_status() {
        let (out, code) = execute(["heunrh", "pole-series", "--sigma", "2", "--delta", "0.75", "--a", "2"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["code"], json!("invalid_parameters"));
        let (out, code) = execute(["heunrh", "frobnicate"]);
        assert_eq!(code, 2);
        assert!(out.contains("config_invalid"));
    }
}
