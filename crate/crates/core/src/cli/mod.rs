//! Command-line interface.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 numeric failure
//! (including a cross-check deviation above tolerance).

pub mod coeff_file;
pub mod report;

use crate::error::{Error, Result};
use crate::langlands::LanglandsParams;
use crate::maass::{automorphy_residual, Backend, GroupWord, H3Point, MaassEvaluator, MaassForm};
use crate::quadrature::QuadratureGrid;
use crate::scaled::ScaledComplex;
use crate::whittaker::mellin::build_fixed_d_cache_unvalidated;
use crate::whittaker::{
    default_mellin_grid, stade_grid, w_eval, w_mellin_fixed_d, w_series_origin, w_series_small, w_stade_refined,
    Algorithm, EvalPolicy, Evaluation, SeriesBudget, WhittakerArgs,
};
use clap::{Args, Parser, Subcommand};
pub use coeff_file::{CoefficientFile, RowKind};
pub use report::{fmt_complex, fmt_real, RunReport};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sl3-maass", version, about = "Jacquet's Whittaker function and Maass forms for SL(3,Z)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate e^{π|α-β|} W(y1, y2) and W(y1, y2).
    Whittaker(WhittakerCmd),
    /// Cross-check all algorithms on a grid of (y1, y2).
    Xcheck(XcheckCmd),
    /// Evaluate a Maass form at a point.
    MaassEval(MaassCmd),
    /// Compare f(z) with f(g z) for a word g in S1, S2, T1, T2, T3.
    Automorphy(AutomorphyCmd),
    /// Write the full coefficient table of a file as c2 rows.
    ExportCoeffs(ExportCmd),
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Imaginary part of α.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_im: f64,
    /// Imaginary part of β.
    #[arg(long, allow_hyphen_values = true)]
    pub beta_im: f64,
    /// Imaginary part of γ; defaults to -alpha_im - beta_im.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_im: Option<f64>,
}

impl ParamArgs {
    fn params(&self) -> Result<LanglandsParams> {
        LanglandsParams::new(
            self.alpha_im,
            self.beta_im,
            self.gamma_im.unwrap_or(-self.alpha_im - self.beta_im),
        )
    }
}

/// Quadrature and series overrides shared by the Whittaker commands.
#[derive(Args, Debug, Clone, Default)]
pub struct NumericArgs {
    /// Series target accuracy.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Series term cap.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Step of the Stade or Mellin grid.
    #[arg(long)]
    pub grid_h: Option<f64>,
    /// Half-width (in steps) of the Stade or Mellin grid.
    #[arg(long)]
    pub grid_n: Option<usize>,
    #[arg(long)]
    pub sigma1: Option<f64>,
    #[arg(long)]
    pub sigma2: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Significant digits in printed values.
    #[arg(long, default_value_t = 12)]
    pub digits: usize,
    /// Also write the table to this CSV file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WhittakerCmd {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub y1: f64,
    #[arg(long)]
    pub y2: f64,
    /// stade, origin, smallarg, mellin or auto.
    #[arg(long, default_value = "auto")]
    pub algo: String,
    #[command(flatten)]
    pub numeric: NumericArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct XcheckCmd {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Comma-separated values used for both y1 and y2.
    #[arg(long, default_value = "0.3,0.6,1.0")]
    pub grid: String,
    /// Largest acceptable relative deviation.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[command(flatten)]
    pub numeric: NumericArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct MaassCmd {
    #[arg(long)]
    pub coeffs: PathBuf,
    /// x1,x2,x3,y1,y2
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    /// Accuracy goal relative to the largest Whittaker value.
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    /// fixed-d, stade or auto.
    #[arg(long, default_value = "fixed-d")]
    pub backend: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct AutomorphyCmd {
    #[command(flatten)]
    pub maass: MaassCmd,
    /// Generators separated by spaces, e.g. "S1 S2 S1".
    #[arg(long, default_value = "")]
    pub word: String,
}

#[derive(Args, Debug)]
pub struct ExportCmd {
    #[arg(long)]
    pub coeffs: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A finished command: its report and whether its checks passed.
pub struct Outcome {
    pub report: RunReport,
    pub passed: bool,
    /// Text written verbatim instead of the rendered report.
    pub raw: Option<String>,
}

impl Outcome {
    fn ok(report: RunReport) -> Self {
        Self {
            report,
            passed: true,
            raw: None,
        }
    }
}

fn parse_algo(s: &str) -> Result<Option<Algorithm>> {
    if s == "auto" {
        Ok(None)
    } else {
        s.parse().map(Some)
    }
}

/// Evaluate with one algorithm, honouring the overrides.
pub fn evaluate_with(
    p: &LanglandsParams,
    a: WhittakerArgs,
    algo: Option<Algorithm>,
    num: &NumericArgs,
) -> Result<Evaluation> {
    let mut budget = SeriesBudget::default();
    if let Some(e) = num.eps {
        budget.target_eps = e;
    }
    if let Some(n) = num.nmax {
        budget.nmax = n;
    }
    budget.validate()?;
    match algo {
        None => w_eval(
            p,
            a,
            &EvalPolicy {
                budget,
                ..EvalPolicy::default()
            },
        ),
        Some(Algorithm::Origin) => w_series_origin(p, a, budget),
        Some(Algorithm::SmallArg) => w_series_small(p, a, budget),
        Some(Algorithm::Stade) => {
            let mut g = stade_grid(p);
            if let Some(h) = num.grid_h {
                g.h = h;
            }
            if let Some(n) = num.grid_n {
                g = QuadratureGrid::fixed(g.h, n);
            }
            w_stade_refined(p, a, &g)
        }
        Some(Algorithm::Mellin) => {
            let mut g = default_mellin_grid(p);
            if let Some(h) = num.grid_h {
                g.h1 = h;
                g.h2 = h;
            }
            if let Some(n) = num.grid_n {
                g.n1 = n;
                g.n2 = n;
            }
            if let Some(s) = num.sigma1 {
                g.sigma1 = s;
            }
            if let Some(s) = num.sigma2 {
                g.sigma2 = s;
            }
            let cache = build_fixed_d_cache_unvalidated(p, a.d(), &g)?;
            w_mellin_fixed_d(&cache, a.y2)
        }
    }
}

fn param_settings(r: &mut RunReport, imag: [f64; 3]) {
    r.setting("alpha_im", imag[0]);
    r.setting("beta_im", imag[1]);
    r.setting("gamma_im", imag[2]);
}

fn cmd_whittaker(c: &WhittakerCmd) -> Result<Outcome> {
    let p = c.params.params()?;
    let args = WhittakerArgs::new(c.y1, c.y2)?;
    let algo = parse_algo(&c.algo)?;
    let e = evaluate_with(&p, args, algo, &c.numeric)?;
    let dg = c.output.digits;
    let mut r = RunReport::new("whittaker");
    param_settings(&mut r, p.imag_parts());
    r.setting("y1", c.y1);
    r.setting("y2", c.y2);
    r.setting("requested", &c.algo);
    r.columns = ["algorithm", "scaled e^{pi|a-b|}W", "W", "rel_error"].map(String::from).to_vec();
    r.row(vec![
        e.algorithm.to_string(),
        fmt_scaled(&e.value, dg),
        fmt_scaled(&e.unscaled(&p), dg),
        fmt_real(e.rel_error, 3),
    ]);
    Ok(Outcome::ok(r))
}

/// A scaled value printed as a plain complex number when it fits in `f64`.
fn fmt_scaled(v: &ScaledComplex, digits: usize) -> String {
    let z = v.to_complex();
    if v.is_zero() || (z.norm() > 0.0 && z.norm().is_finite()) {
        fmt_complex(z, digits)
    } else {
        format!("({}) * 2^{}", fmt_complex(v.mantissa(), digits), v.log_scale() / std::f64::consts::LN_2)
    }
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Domain(format!("bad grid '{s}': {e}")))?;
    if v.is_empty() || v.iter().any(|y| !(*y > 0.0)) {
        return Err(Error::Domain(format!("grid '{s}' needs positive values")));
    }
    Ok(v)
}

fn cmd_xcheck(c: &XcheckCmd) -> Result<Outcome> {
    let p = c.params.params()?;
    let ys = parse_grid(&c.grid)?;
    let mut algos = vec![Algorithm::Stade, Algorithm::Mellin];
    if !p.is_degenerate() {
        algos.extend([Algorithm::Origin, Algorithm::SmallArg]);
    }
    let mut r = RunReport::new("xcheck");
    param_settings(&mut r, p.imag_parts());
    r.setting("grid", &c.grid);
    r.setting("tol", c.tol);
    r.setting("algorithms", algos.iter().map(|a| a.name()).collect::<Vec<_>>().join(","));
    r.columns = std::iter::once("y1 \\ y2".to_string())
        .chain(ys.iter().map(|y| y.to_string()))
        .collect();
    let n = algos.len();
    let mut pair_max = vec![vec![0.0f64; n]; n];
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for &y1 in &ys {
        let mut row = vec![y1.to_string()];
        for &y2 in &ys {
            let a = WhittakerArgs::new(y1, y2)?;
            let vals: Vec<Option<Evaluation>> = algos
                .iter()
                .map(|&al| match evaluate_with(&p, a, Some(al), &c.numeric) {
                    Ok(v) => Some(v),
                    Err(e) => {
                        failures.push(format!("{} at ({y1}, {y2}): {e}", al.name()));
                        None
                    }
                })
                .collect();
            let mut cell = 0.0f64;
            for i in 0..n {
                for j in 0..i {
                    if let (Some(u), Some(v)) = (&vals[i], &vals[j]) {
                        let d = ScaledComplex::rel_diff(&u.value, &v.value);
                        pair_max[i][j] = pair_max[i][j].max(d);
                        pair_max[j][i] = pair_max[i][j];
                        cell = cell.max(d);
                    }
                }
            }
            worst = worst.max(cell);
            row.push(fmt_real(cell, 3));
        }
        r.row(row);
    }
    r.notes.push(String::new());
    r.notes.push("max pairwise relative deviation:".into());
    for i in 0..n {
        for j in 0..i {
            r.notes.push(format!(
                "  {:>8} vs {:<8} {}",
                algos[i].name(),
                algos[j].name(),
                fmt_real(pair_max[i][j], 3)
            ));
        }
    }
    for f in &failures {
        r.notes.push(format!("not applicable: {f}"));
    }
    let passed = worst <= c.tol;
    r.notes.push(format!(
        "max deviation {} {} tolerance {}",
        fmt_real(worst, 3),
        if passed { "within" } else { "exceeds" },
        c.tol
    ));
    Ok(Outcome {
        report: r,
        passed,
        raw: None,
    })
}

fn load_form(c: &MaassCmd) -> Result<(CoefficientFile, MaassForm, Backend, H3Point)> {
    let file = CoefficientFile::load(&c.coeffs)?;
    let backend: Backend = c.backend.parse()?;
    let z: H3Point = c.point.parse()?;
    let form = MaassForm::new(file.params, file.table.clone(), c.eps)?;
    Ok((file, form, backend, z))
}

fn maass_settings(r: &mut RunReport, c: &MaassCmd, file: &CoefficientFile, form: &MaassForm) {
    r.setting("coeffs", c.coeffs.display());
    param_settings(r, file.imag);
    r.setting("coefficients", form.coeffs().len());
    r.setting("eps", c.eps);
    r.setting("backend", &c.backend);
    r.setting("cutoff C", fmt_real(form.cutoff().c, 6));
    r.setting("ln max|W|", fmt_real(form.cutoff().ln_max, 6));
}

fn cmd_maass(c: &MaassCmd) -> Result<Outcome> {
    let (file, form, backend, z) = load_form(c)?;
    let v = MaassEvaluator::new(&form, backend).eval(&z)?;
    let dg = c.output.digits;
    let mut r = RunReport::new("maass-eval");
    maass_settings(&mut r, c, &file, &form);
    r.setting("point", &c.point);
    r.columns = ["f(z)", "abs_error", "max_m2", "max_m1", "distinct_D", "terms", "fallbacks"]
        .map(String::from)
        .to_vec();
    r.row(vec![
        fmt_complex(v.value, dg),
        fmt_real(v.abs_error, 3),
        v.stats.max_m2.to_string(),
        v.stats.max_m1.to_string(),
        v.stats.distinct_d.to_string(),
        v.stats.terms.to_string(),
        v.stats.fallbacks.to_string(),
    ]);
    Ok(Outcome::ok(r))
}

fn cmd_automorphy(c: &AutomorphyCmd) -> Result<Outcome> {
    let (file, form, backend, z) = load_form(&c.maass)?;
    let word: GroupWord = c.word.parse()?;
    let mut ev = MaassEvaluator::new(&form, backend);
    let res = automorphy_residual(&mut ev, &z, &word)?;
    let dg = c.maass.output.digits;
    let mut r = RunReport::new("automorphy");
    maass_settings(&mut r, &c.maass, &file, &form);
    r.setting("word", if word.is_empty() { "(identity)".to_string() } else { word.to_string() });
    r.columns = ["point", "x1", "x2", "x3", "y1", "y2", "f", "abs_error"].map(String::from).to_vec();
    for (name, pt, val) in [("z", res.z, &res.f_z), ("gz", res.gz, &res.f_gz)] {
        r.row(vec![
            name.to_string(),
            fmt_real(pt.x1, dg),
            fmt_real(pt.x2, dg),
            fmt_real(pt.x3, dg),
            fmt_real(pt.y1, dg),
            fmt_real(pt.y2, dg),
            fmt_complex(val.value, dg),
            fmt_real(val.abs_error, 3),
        ]);
    }
    r.notes.push(format!("residual |f(z) - f(gz)| = {}", fmt_real(res.residual, dg)));
    Ok(Outcome::ok(r))
}

fn cmd_export(c: &ExportCmd) -> Result<Outcome> {
    let file = CoefficientFile::load(&c.coeffs)?;
    let text = CoefficientFile::export(file.imag, &file.table);
    let mut r = RunReport::new("export-coeffs");
    r.setting("rows", file.table.len());
    let raw = match &c.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            r.setting("written", path.display());
            None
        }
        None => Some(text),
    };
    Ok(Outcome {
        report: r,
        passed: true,
        raw,
    })
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    let start = Instant::now();
    let (mut out, csv) = match cmd {
        Command::Whittaker(c) => (cmd_whittaker(c)?, c.output.csv.as_ref()),
        Command::Xcheck(c) => (cmd_xcheck(c)?, c.output.csv.as_ref()),
        Command::MaassEval(c) => (cmd_maass(c)?, c.output.csv.as_ref()),
        Command::Automorphy(c) => (cmd_automorphy(c)?, c.maass.output.csv.as_ref()),
        Command::ExportCoeffs(c) => (cmd_export(c)?, None),
    };
    if let Some(path) = csv {
        out.report.write_csv(path)?;
    }
    out.report.wall_time = start.elapsed();
    Ok(out)
}

/// Parse `args`, run the command and return the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let _ = match &out.raw {
                Some(raw) => write!(stdout, "{raw}"),
                None => write!(stdout, "{}", out.report.render()),
            };
            let _ = writeln!(stderr, "wall time: {:.3} s", out.report.wall_time.as_secs_f64());
            if out.passed {
                EXIT_OK
            } else {
                EXIT_NUMERIC
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_numeric() {
                EXIT_NUMERIC
            } else {
                EXIT_USAGE
            }
        }
    }
}

/// Entry point used by the binary.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}
