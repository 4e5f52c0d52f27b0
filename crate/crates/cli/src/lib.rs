//! Command-line front end: `auxr <command> [flags]`.
//!
//! Exit codes: 0 success, 1 a check failed or a computation did not
//! converge, 2 usage error. Numbers print with 15 significant digits.

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

use auxr_core::auxiliary::{default_spec, RMethod};
use auxr_core::crosscheck::crosscheck_with;
use auxr_core::hermite::{hermite_reflection_residual, parabolic_ode_residual, HermiteEngine};
use auxr_core::identities::{
    prop_inth_lhs, prop_inth_rhs, prop_inth_spec, residual, sinc_lemma_residual, sinc_lemma_spec,
};
use auxr_core::quad::QuadratureSpec;
use auxr_core::xray::{detect_zero_curves, figure_values, FIGURE_TOL};
use auxr_core::zeta::{zeta_spec, zeta_via_r};
use auxr_core::{Complex64, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub const MAX_NODES_VAR: &str = "AUXR_MAX_NODES";

/// Parsed command line.
#[derive(Parser, Debug)]
#[command(name = "auxr", version, about = "Riemann auxiliary function R(s): evaluation, identity checks, x-rays")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate R(s) by one representation.
    R(ROpts),
    /// Check one identity numerically.
    Validate(ValidateOpts),
    /// Compare representations of R(s) over a grid of s.
    Crosscheck(CrossOpts),
    /// Render the x-ray of H_ν(z√π) e^{-πz²} / (1 + e^{-2πωz}), ν = -(½ + ti).
    Xray(XrayOpts),
    /// ζ(s) from R(s) through the classical functional equation (not part of
    /// the R(s) toolkit proper; needs --classical).
    Zeta(ZetaOpts),
}

#[derive(Args, Debug, Clone, Copy)]
#[group(multiple = false)]
pub struct Format {
    /// Print JSON.
    #[arg(long)]
    pub json: bool,
    /// Print CSV.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Definition,
    Hermite,
    GabckeU,
}

impl MethodArg {
    fn method(self) -> RMethod {
        match self {
            MethodArg::Definition => RMethod::Definition,
            MethodArg::Hermite => RMethod::HermiteForm,
            MethodArg::GabckeU => RMethod::GabckeUForm,
        }
    }
}

#[derive(Args, Debug)]
pub struct ROpts {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Complex64,
    #[arg(long, value_enum, default_value = "definition")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ValidateOpts {
    #[arg(value_enum)]
    pub check: Check,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub nu: Option<Complex64>,
    /// Largest acceptable residual; each check has its own default.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// ∫_L e^{-zζ}/(1+e^{-ζ}) dζ = π/sin πz; needs --z.
    Lemma,
    /// ∫_{0↑} x^s e^{x²/4-xz} dx = 2i√π e^{-z²} H_s(z) on three lines; needs --s, --z.
    Prop,
    /// Reflection formula of H_ν; needs --nu, --z.
    Hermite,
    /// Parabolic cylinder equation for D_ν = U(-ν-½, ·); needs --nu, --z.
    Ode,
}

impl Check {
    fn default_tol(self) -> f64 {
        match self {
            Check::Lemma => 1e-9,
            Check::Prop => 1e-7,
            Check::Hermite => 1e-8,
            Check::Ode => 1e-5,
        }
    }
}

#[derive(Args, Debug)]
pub struct CrossOpts {
    /// "σ1,σ2,…;t1,t2,…"
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    /// Representations to compare (comma separated).
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["definition", "hermite"])]
    pub method: Vec<MethodArg>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[command(flatten)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct XrayOpts {
    /// Figure parameter: ν = -(½ + ti).
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    /// Half side of the square (-a, a)².
    #[arg(long, default_value_t = 6.0)]
    pub square: f64,
    #[arg(long, default_value_t = 512)]
    pub res: usize,
    /// PPM output path.
    #[arg(long)]
    pub out: PathBuf,
    /// Hermite tolerance per pixel.
    #[arg(long, default_value_t = FIGURE_TOL)]
    pub tol: f64,
    /// Print the summary as JSON.
    #[arg(long)]
    pub json: bool,
    /// Also write the raw values next to the image (same name, .csv).
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug)]
pub struct ZetaOpts {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Complex64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Acknowledge the classical identity.
    #[arg(long, required = true)]
    pub classical: bool,
    #[command(flatten)]
    pub format: Format,
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (no spaces; `i` alone means 1).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let bad = || format!("not a complex number: {text:?} (expected a+bi)");
    if text.is_empty() || text.contains(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = text.strip_suffix('i') else {
        return text.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    // last sign that is not the sign of an exponent
    let split =
        (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// `a+bi` with 15 significant digits.
pub fn format_complex(z: Complex64) -> String {
    format!("{:.14e}{:+.14e}i", z.re, z.im)
}

pub fn format_real(x: f64) -> String {
    format!("{x:.14e}")
}

fn complex_json(z: Complex64) -> serde_json::Value {
    json!({ "re": z.re, "im": z.im })
}

enum Failure {
    Usage(String),
    Check(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Precondition(_) | Error::GammaPole(_) => Failure::Usage(e.to_string()),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numeric(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the command line `argv` (without the program name) and returns the
/// exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] writing to the given streams.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = std::iter::once("auxr".to_string()).chain(argv.into_iter().map(Into::into));
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let outcome = max_nodes().and_then(|cap| dispatch(&config, cap, out, err));
    match outcome {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            1
        }
        Err(Failure::Numeric(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn max_nodes() -> Result<Option<usize>, Failure> {
    match std::env::var(MAX_NODES_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 2 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!("{MAX_NODES_VAR} must be an integer >= 2, got {v:?}"))),
        },
    }
}

fn capped(spec: QuadratureSpec<f64>, cap: Option<usize>) -> QuadratureSpec<f64> {
    match cap {
        Some(n) => spec.with_max_nodes(spec.max_nodes.min(n)),
        None => spec,
    }
}

fn engine(cap: Option<usize>) -> HermiteEngine<f64> {
    let mut e = HermiteEngine::default();
    if let Some(n) = cap {
        e.max_nodes = e.max_nodes.min(n);
    }
    e
}

fn check_tol(tol: f64) -> Outcome {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--tol must be positive, got {tol}")))
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str, check: Check) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("validate {check:?} needs --{flag}").to_lowercase()))
}

fn dispatch(config: &CliConfig, cap: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match &config.command {
        Command::R(o) => cmd_r(o, cap, out, err),
        Command::Validate(o) => cmd_validate(o, cap, out),
        Command::Crosscheck(o) => cmd_crosscheck(o, cap, out),
        Command::Xray(o) => cmd_xray(o, cap, out, err),
        Command::Zeta(o) => cmd_zeta(o, cap, out, err),
    }
}

fn cmd_r(o: &ROpts, cap: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    check_tol(o.tol)?;
    let method = o.method.method();
    let spec = capped(default_spec(method, o.s, o.tol)?, cap);
    let r = method.eval_with(o.s, &spec, &engine(cap))?;
    if r.degraded {
        writeln!(err, "warning: estimated error {} exceeds --tol", format_real(r.err_estimate))?;
    }
    if o.format.json {
        let doc = json!({
            "s": complex_json(o.s),
            "method": method.name(),
            "value": complex_json(r.value),
            "err_estimate": r.err_estimate,
            "nodes": r.nodes,
            "degraded": r.degraded,
        });
        writeln!(out, "{doc}")?;
    } else if o.format.csv {
        writeln!(out, "s_re,s_im,re,im,err_estimate,nodes,degraded")?;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            format_real(o.s.re),
            format_real(o.s.im),
            format_real(r.value.re),
            format_real(r.value.im),
            format_real(r.err_estimate),
            r.nodes,
            r.degraded
        )?;
    } else {
        writeln!(out, "{}", format_complex(r.value))?;
    }
    Ok(())
}

fn cmd_validate(o: &ValidateOpts, cap: Option<usize>, out: &mut dyn Write) -> Outcome {
    let tol = o.tol.unwrap_or(o.check.default_tol());
    check_tol(tol)?;
    // name, residual
    let mut rows: Vec<(String, f64)> = Vec::new();
    match o.check {
        Check::Lemma => {
            let z = need(o.z, "z", o.check)?;
            let spec = capped(sinc_lemma_spec(z, tol * 1e-2)?, cap);
            rows.push(("residual".into(), sinc_lemma_residual(z, &spec)?));
        }
        Check::Prop => {
            let s = need(o.s, "s", o.check)?;
            let z = need(o.z, "z", o.check)?;
            let quad_tol = (tol * 1e-3).max(1e-13);
            let rhs = prop_inth_rhs(s, z, quad_tol.max(1e-14))?;
            let mut lhs = Vec::new();
            for (label, angle) in [("pi/3", PI / 3.0), ("pi/2", PI / 2.0), ("2pi/3", 2.0 * PI / 3.0)] {
                let spec = capped(prop_inth_spec(s, z, angle, quad_tol)?, cap);
                let v = prop_inth_lhs(s, z, angle, &spec)?.value;
                rows.push((format!("residual {label}"), residual(v, rhs)));
                lhs.push(v);
            }
            let spread = (0..lhs.len())
                .flat_map(|i| (i + 1..lhs.len()).map(move |j| (i, j)))
                .map(|(i, j)| residual(lhs[i], lhs[j]))
                .fold(0.0, f64::max);
            rows.push(("angle spread".into(), spread));
        }
        Check::Hermite => {
            let nu = need(o.nu, "nu", o.check)?;
            let z = need(o.z, "z", o.check)?;
            rows.push(("residual".into(), hermite_reflection_residual(nu, z)?));
        }
        Check::Ode => {
            let nu = need(o.nu, "nu", o.check)?;
            let z = need(o.z, "z", o.check)?;
            let a = -nu - 0.5;
            rows.push(("residual".into(), parabolic_ode_residual(a, z)?));
        }
    }
    let pass = rows.iter().all(|(_, r)| *r <= tol);
    if o.format.json {
        let residuals: serde_json::Map<String, serde_json::Value> =
            rows.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        writeln!(
            out,
            "{}",
            json!({ "check": format!("{:?}", o.check).to_lowercase(), "residuals": residuals, "tol": tol, "pass": pass })
        )?;
    } else if o.format.csv {
        writeln!(out, "name,residual,tol,pass")?;
        for (k, v) in &rows {
            writeln!(out, "{k},{},{},{}", format_real(*v), format_real(tol), *v <= tol)?;
        }
    } else if rows.len() == 1 {
        writeln!(out, "{}", format_real(rows[0].1))?;
    } else {
        for (k, v) in &rows {
            writeln!(out, "{k}: {}", format_real(*v))?;
        }
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Check(format!("residual above {}", format_real(tol))))
    }
}

/// Parses `"σ1,σ2;t1,t2"` into its two lists.
pub fn parse_grid(text: &str) -> Result<(Vec<f64>, Vec<f64>), String> {
    let (sig, t) = text.split_once(';').ok_or_else(|| format!("grid must look like \"σ1,σ2;t1,t2\", got {text:?}"))?;
    let list = |part: &str| -> Result<Vec<f64>, String> {
        part.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad number {x:?} in grid"))).collect()
    };
    let (sig, t) = (list(sig)?, list(t)?);
    if sig.is_empty() || t.is_empty() {
        return Err("grid lists must not be empty".into());
    }
    Ok((sig, t))
}

fn cmd_crosscheck(o: &CrossOpts, cap: Option<usize>, out: &mut dyn Write) -> Outcome {
    check_tol(o.tol)?;
    let (sigmas, ts) = parse_grid(&o.grid).map_err(Failure::Usage)?;
    let methods: Vec<RMethod> = o.method.iter().map(|m| m.method()).collect();
    let eng = engine(cap);
    let mut reports = Vec::new();
    for &sigma in &sigmas {
        for &t in &ts {
            reports.push(crosscheck_with(Complex64::new(sigma, t), &methods, o.tol, &eng, cap)?);
        }
    }
    if o.format.json {
        let docs: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
        writeln!(out, "{}", serde_json::Value::Array(docs))?;
    } else if o.format.csv {
        writeln!(out, "sigma,t,max_pairwise_rel_err,pass")?;
        for r in &reports {
            writeln!(
                out,
                "{},{},{},{}",
                format_real(r.s.re),
                format_real(r.s.im),
                format_real(r.max_pairwise_rel_err),
                r.pass
            )?;
        }
    } else {
        for r in &reports {
            let verdict = if r.pass { "pass" } else { "FAIL" };
            writeln!(
                out,
                "s = {}  max rel diff {}  {verdict}",
                format_complex(r.s),
                format_real(r.max_pairwise_rel_err)
            )?;
            for (m, msg) in &r.failures {
                writeln!(out, "  {} failed: {msg}", m.name())?;
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failed} of {} points disagree beyond {}", reports.len(), format_real(o.tol))))
    }
}

fn csv_path(out: &Path) -> PathBuf {
    out.with_extension("csv")
}

fn cmd_xray(o: &XrayOpts, cap: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    check_tol(o.tol)?;
    if !(o.square > 0.0 && o.square.is_finite()) {
        return Err(Failure::Usage(format!("--square must be positive, got {}", o.square)));
    }
    if !o.t.is_finite() {
        return Err(Failure::Usage(format!("--t must be finite, got {}", o.t)));
    }
    let values = figure_values(&engine(cap), o.t, o.square, o.res, o.tol)?;
    let image = detect_zero_curves(&values);
    image.write_image(&o.out)?;
    let csv = if o.csv {
        let path = csv_path(&o.out);
        values.save_csv(&path)?;
        Some(path)
    } else {
        None
    };
    let degraded = values.degraded_count();
    let (re, im) = values.real_axis_crossings();
    if degraded > 0 {
        writeln!(err, "warning: {degraded} pixels below the requested precision (yellow)")?;
    }
    if o.json {
        let doc = json!({
            "image": o.out.display().to_string(),
            "csv": csv.as_ref().map(|p| p.display().to_string()),
            "t": o.t,
            "square": o.square,
            "res": o.res,
            "degraded": degraded,
            "real_axis_crossings": { "re": re, "im": im },
        });
        writeln!(out, "{doc}")?;
    } else {
        writeln!(out, "wrote {} ({}x{}), degraded pixels {degraded}", o.out.display(), o.res, o.res)?;
        if let Some(p) = csv {
            writeln!(out, "wrote {}", p.display())?;
        }
        writeln!(out, "real-axis sign changes: re {re}, im {im}")?;
    }
    Ok(())
}

fn cmd_zeta(o: &ZetaOpts, cap: Option<usize>, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    check_tol(o.tol)?;
    let spec = capped(zeta_spec(o.s, o.tol)?, cap);
    let r = zeta_via_r(o.s, &spec)?;
    if r.degraded {
        writeln!(err, "warning: estimated error {} exceeds --tol", format_real(r.err_estimate))?;
    }
    if o.format.json {
        let doc = json!({ "s": complex_json(o.s), "value": complex_json(r.value), "err_estimate": r.err_estimate, "degraded": r.degraded });
        writeln!(out, "{doc}")?;
    } else if o.format.csv {
        writeln!(out, "s_re,s_im,re,im,err_estimate")?;
        writeln!(
            out,
            "{},{},{},{},{}",
            format_real(o.s.re),
            format_real(o.s.im),
            format_real(r.value.re),
            format_real(r.value.im),
            format_real(r.err_estimate)
        )?;
    } else {
        writeln!(out, "{}", format_complex(r.value))?;
    }
    Ok(())
}
