//! Batch command-line frontend. Every computation is exposed as a
//! subcommand with machine-readable JSON output (CSV for `eval-xi --grid`),
//! deterministic formatting, and exact rationals serialized as
//! {num, den} strings.
//!
//! Exit codes: 0 success, 2 invalid input, 3 convergence refusal,
//! 4 wall or degenerate geometry, 1 internal/check failure.
//!
//! The default working precision is 128 bits, overridable per invocation
//! with `--prec` or globally with the `BORCHERDS_U11_PREC` environment
//! variable.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use crate::borcherds::{self, ProductParams, Region, XiProduct};
use crate::error::{Error, Result};
use crate::heegner;
use crate::hermlattice;
use crate::numeric::{self, Cplx, Real};
use crate::qexp;
use crate::qfield::{rat, FieldElem, FieldSpec, Rat};
use crate::weyl::{self, Chamber};

pub const PREC_ENV_VAR: &str = "BORCHERDS_U11_PREC";
const DEFAULT_PREC: u32 = 128;

#[derive(Parser, Debug)]
#[command(
    name = "borcherds-u11",
    version,
    about = "Borcherds products for U(1,1): chambers, Weyl vectors, Heegner points, product evaluation"
)]
pub struct Cli {
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Field data for F = Q(sqrt(d)): discriminant, zeta, |delta|.
    FieldInfo {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Coefficients [m, c(m)] of the basis form j_n for -n <= m <= upto.
    JnCoeffs {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        upto: i64,
    },
    /// Ordered Weyl chambers of index m with wall data.
    Chambers {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Also report the half-plane strip bounds |delta| t^2 / (2|m|).
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Weyl vector of j_n at a chamber, or of a general input (--f) at the
    /// chamber cut out by --Y.
    WeylVector {
        #[arg(long)]
        n: Option<i64>,
        /// Chamber walls "t_lo,t_hi" with t_hi = "inf" allowed.
        #[arg(long)]
        chamber: Option<String>,
        /// JSON file {"coefficients": [[m, c], ...]} with integer c
        /// (numbers or decimal strings).
        #[arg(long)]
        f: Option<PathBuf>,
        /// Base point "y1,y2" (exact decimals or fractions).
        #[arg(long = "Y", allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Wall-crossing function at Y: raw divisor sum, chamber formula, and
    /// the residual of the defining identity.
    PhiK {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long = "Y", allow_hyphen_values = true)]
        y: String,
    },
    /// Heegner points of index m with minimal polynomials and conductors.
    Heegner {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        bound: i64,
        /// Reduce to the fundamental domain and deduplicate orbits.
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Evaluate Xi(tau; j_n, W). With --grid, emit CSV of log|Xi| samples.
    EvalXi {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        n: i64,
        /// tau as "re,im" decimal strings, parsed at full precision.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long)]
        chamber: String,
        #[arg(long = "max-kl", default_value_t = 60)]
        max_kl: i64,
        #[arg(long)]
        prec: Option<u32>,
        /// Convergence region: "conservative" (default) or "theorem".
        #[arg(long, default_value = "conservative")]
        region: String,
        /// Grid "re0,re1,nre,im0,im1,nim": emit CSV of log|Xi| samples.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Run a named invariant suite; exits 0 iff all checks pass.
    Check {
        /// One of: field, lattice, weyl, qexp, heegner, eta, all.
        #[arg(long)]
        suite: String,
    },
}

/// Rendered output of a subcommand.
#[derive(Debug)]
pub enum Output {
    Json(Value),
    /// One JSON value per line (check suites).
    Lines(Vec<Value>),
    Csv(String),
}

impl Output {
    pub fn render(&self) -> String {
        match self {
            Output::Json(v) => format!("{}\n", serde_json::to_string_pretty(v).expect("json")),
            Output::Lines(vs) => {
                let mut s = String::new();
                for v in vs {
                    s.push_str(&serde_json::to_string(v).expect("json"));
                    s.push('\n');
                }
                s
            }
            Output::Csv(s) => s.clone(),
        }
    }
}

/// Entry point used by the binary: run, print, map errors to exit codes.
pub fn run(cli: Cli) -> i32 {
    let out_path = cli.out.clone();
    match execute(cli.command) {
        Ok((output, code)) => {
            let rendered = output.render();
            match out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, rendered) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return 1;
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    let _ = stdout.write_all(rendered.as_bytes());
                }
            }
            code
        }
        Err(err) => {
            let payload = json!({
                "error": {
                    "kind": error_kind(&err),
                    "message": err.to_string(),
                    "exit_code": err.exit_code(),
                }
            });
            println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
            err.exit_code()
        }
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidInput(_) => "invalid_input",
        Error::Arithmetic(_) => "arithmetic",
        Error::Domain(_) => "domain",
        Error::InsufficientPrecision { .. } => "insufficient_precision",
        Error::Wall { .. } => "wall",
        Error::Convergence(_) => "convergence",
        Error::DivisorHit { .. } => "divisor_hit",
        Error::Inconclusive(_) => "inconclusive",
        Error::ChamberMismatch(_) => "chamber_mismatch",
    }
}

/// Execute a subcommand, returning the output and the process exit code.
pub fn execute(cmd: Command) -> Result<(Output, i32)> {
    match cmd {
        Command::FieldInfo { d, prec } => field_info(d, resolve_prec(prec)?).map(ok0),
        Command::JnCoeffs { n, upto } => jn_coeffs(n, upto).map(ok0),
        Command::Chambers { m, d, prec } => chambers_cmd(m, d, resolve_prec(prec)?).map(ok0),
        Command::WeylVector { n, chamber, f, y } => weyl_vector_cmd(n, chamber, f, y).map(ok0),
        Command::PhiK { m, y } => phi_k_cmd(m, &y).map(ok0),
        Command::Heegner { m, d, bound, reduced, prec } => {
            heegner_cmd(m, d, bound, reduced, resolve_prec(prec)?).map(ok0)
        }
        Command::EvalXi { d, n, tau, chamber, max_kl, prec, region, grid } => {
            eval_xi_cmd(d, n, &tau, &chamber, max_kl, resolve_prec(prec)?, &region, grid.as_deref())
                .map(ok0)
        }
        Command::Check { suite } => check_cmd(&suite),
    }
}

fn ok0(o: Output) -> (Output, i32) {
    (o, 0)
}

fn resolve_prec(cli_prec: Option<u32>) -> Result<u32> {
    if let Some(p) = cli_prec {
        return validate_prec(p);
    }
    match std::env::var(PREC_ENV_VAR) {
        Ok(s) => {
            let p: u32 = s.parse().map_err(|_| {
                Error::InvalidInput(format!("{PREC_ENV_VAR} must be an integer, got {s:?}"))
            })?;
            validate_prec(p)
        }
        Err(_) => Ok(DEFAULT_PREC),
    }
}

fn validate_prec(p: u32) -> Result<u32> {
    if !(64..=16384).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "precision must lie in 64..=16384 bits, got {p}"
        )));
    }
    Ok(p)
}

// ---- formatting helpers --------------------------------------------------------

fn sig_digits(prec: u32) -> usize {
    (prec as f64 * 0.30103).ceil() as usize + 2
}

fn real_str(x: &Real, prec: u32) -> String {
    x.to_string_radix(10, Some(sig_digits(prec)))
}

fn cplx_strs(z: &Cplx, prec: u32) -> Value {
    json!([real_str(z.real(), prec), real_str(z.imag(), prec)])
}

fn rat_json(r: &Rat) -> Value {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

fn chamber_json(c: &Chamber) -> Value {
    json!({
        "t_lo": c.t_lo(),
        "t_hi": c.t_hi().map(Value::from).unwrap_or_else(|| Value::String("inf".into())),
    })
}

// ---- input parsing --------------------------------------------------------------

/// Exact rational from "a/b" or a decimal string.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |msg: &str| Error::InvalidInput(format!("cannot parse {s:?} as a rational: {msg}"));
    if s.is_empty() {
        return Err(bad("empty"));
    }
    if let Some((a, b)) = s.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| bad("bad numerator"))?;
        let den: BigInt = b.trim().parse().map_err(|_| bad("bad denominator"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rat::new(num, den));
    }
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad("no digits"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad("non-digit characters"));
    }
    let joined = format!("{int_part}{frac_part}");
    let num: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| bad("overflow"))?
    };
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Rat::new(BigInt::from(sign) * num, den))
}

fn parse_pair(s: &str, what: &str) -> Result<(String, String)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "{what} must be two comma-separated values, got {s:?}"
        )));
    }
    Ok((parts[0].trim().to_string(), parts[1].trim().to_string()))
}

fn parse_y(s: &str) -> Result<(Rat, Rat)> {
    let (a, b) = parse_pair(s, "--Y")?;
    Ok((parse_rat(&a)?, parse_rat(&b)?))
}

fn parse_tau(s: &str, prec: u32) -> Result<Cplx> {
    let (re_s, im_s) = parse_pair(s, "--tau")?;
    let re = numeric::real_from_str(prec, &re_s)
        .ok_or_else(|| Error::InvalidInput(format!("bad real part {re_s:?}")))?;
    let im = numeric::real_from_str(prec, &im_s)
        .ok_or_else(|| Error::InvalidInput(format!("bad imaginary part {im_s:?}")))?;
    Ok(Cplx::with_val(prec, (re, im)))
}

fn parse_chamber(s: &str, m: i64) -> Result<Chamber> {
    let (lo_s, hi_s) = parse_pair(s, "--chamber")?;
    let t_lo: i64 = lo_s
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad chamber wall {lo_s:?}")))?;
    let t_hi = if hi_s.eq_ignore_ascii_case("inf") {
        None
    } else {
        Some(hi_s.parse::<i64>().map_err(|_| {
            Error::InvalidInput(format!("bad chamber wall {hi_s:?} (use an integer or 'inf')"))
        })?)
    };
    Chamber::new(m, t_lo, t_hi)
}

fn parse_region(s: &str) -> Result<Region> {
    match s.to_ascii_lowercase().as_str() {
        "conservative" => Ok(Region::Conservative),
        "theorem" => Ok(Region::Theorem),
        other => Err(Error::InvalidInput(format!(
            "region must be 'conservative' or 'theorem', got {other:?}"
        ))),
    }
}

/// Coefficient file: {"coefficients": [[m, c], ...]} with c an integer
/// number or decimal string.
fn read_coefficient_file(path: &PathBuf) -> Result<BTreeMap<i64, BigInt>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{} is not valid JSON: {e}", path.display())))?;
    let entries = value
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(|| {
            Error::InvalidInput(format!(
                "{} must contain {{\"coefficients\": [[m, c], ...]}}",
                path.display()
            ))
        })?;
    let mut out = BTreeMap::new();
    for entry in entries {
        let pair = entry
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::InvalidInput("each coefficient entry must be [m, c]".into()))?;
        let m = pair[0]
            .as_i64()
            .ok_or_else(|| Error::InvalidInput("coefficient exponent must be an integer".into()))?;
        let c: BigInt = match &pair[1] {
            Value::Number(n) => BigInt::from(n.as_i64().ok_or_else(|| {
                Error::InvalidInput("coefficient values beyond i64 must be strings".into())
            })?),
            Value::String(s) => s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {s:?}")))?,
            _ => {
                return Err(Error::InvalidInput(
                    "coefficient must be an integer or string".into(),
                ))
            }
        };
        if out.insert(m, c).is_some() {
            return Err(Error::InvalidInput(format!(
                "duplicate exponent {m} in coefficient file"
            )));
        }
    }
    Ok(out)
}

// ---- subcommands ----------------------------------------------------------------

fn field_info(d: i64, prec: u32) -> Result<Output> {
    let spec = FieldSpec::new(d)?;
    let zeta = spec.zeta_c(prec);
    Ok(Output::Json(json!({
        "d": spec.d(),
        "D_F": spec.disc(),
        "zeta": cplx_strs(&zeta, prec),
        "abs_delta": real_str(&spec.abs_delta(prec), prec),
        "prec_bits": prec,
    })))
}

fn jn_coeffs(n: i64, upto: i64) -> Result<Output> {
    if upto < -n {
        return Err(Error::InvalidInput(format!(
            "--upto {upto} is below the valuation {}",
            -n
        )));
    }
    let jn = qexp::faber_jn(n, (upto + 1).max(1))?;
    let mut rows = Vec::new();
    for m in -n..=upto {
        rows.push(json!([m, jn.coeff(m)?.to_string()]));
    }
    Ok(Output::Json(Value::Array(rows)))
}

fn chambers_cmd(m: i64, d: Option<i64>, prec: u32) -> Result<Output> {
    let chambers = weyl::chambers(m)?;
    let spec = d.map(FieldSpec::new).transpose()?;
    let am = -m;
    let rows: Vec<Value> = chambers
        .iter()
        .map(|c| {
            let mut obj = chamber_json(c);
            let map = obj.as_object_mut().expect("object");
            map.insert(
                "slope_lo".into(),
                rat_json(&Rat::new(BigInt::from(c.t_lo() * c.t_lo()), BigInt::from(am))),
            );
            map.insert(
                "slope_hi".into(),
                match c.t_hi() {
                    Some(t) => rat_json(&Rat::new(BigInt::from(t * t), BigInt::from(am))),
                    None => Value::String("inf".into()),
                },
            );
            if let Some(spec) = &spec {
                let half_delta = spec.abs_delta(prec) / 2u32;
                let lo = half_delta.clone() * (c.t_lo() * c.t_lo()) as f64 / am as f64;
                map.insert("strip_im_lo".into(), Value::String(real_str(&lo, prec)));
                map.insert(
                    "strip_im_hi".into(),
                    match c.t_hi() {
                        Some(t) => {
                            let hi = half_delta * (t * t) as f64 / am as f64;
                            Value::String(real_str(&hi, prec))
                        }
                        None => Value::String("inf".into()),
                    },
                );
            }
            obj
        })
        .collect();
    Ok(Output::Json(json!({
        "m": m,
        "count": rows.len(),
        "chambers": rows,
    })))
}

fn weyl_vector_cmd(
    n: Option<i64>,
    chamber: Option<String>,
    f: Option<PathBuf>,
    y: Option<String>,
) -> Result<Output> {
    let v = match (n, chamber, f, y) {
        (Some(n), Some(chamber), None, None) => {
            let w = parse_chamber(&chamber, -n)?;
            weyl::weyl_vector_jn(n, &w)?
        }
        (None, None, Some(path), Some(y)) => {
            let coeffs = read_coefficient_file(&path)?;
            let (y1, y2) = parse_y(&y)?;
            let c0 = coeffs.get(&0).cloned().unwrap_or_else(BigInt::zero);
            let principal: BTreeMap<i64, BigInt> =
                coeffs.into_iter().filter(|(m, _)| *m < 0).collect();
            weyl::weyl_vector_f(&principal, &c0, &y1, &y2)?
        }
        _ => {
            return Err(Error::InvalidInput(
                "use either --n with --chamber, or --f with --Y".into(),
            ))
        }
    };
    Ok(Output::Json(json!({
        "rho1": rat_json(&v.rho1),
        "rho2": rat_json(&v.rho2),
    })))
}

fn phi_k_cmd(m: i64, y: &str) -> Result<Output> {
    let (y1, y2) = parse_y(y)?;
    let w = weyl::chamber_of_y(m, &y1, &y2)?.chamber()?;
    let y1f = numeric::rat_to_f64(&y1);
    let y2f = numeric::rat_to_f64(&y2);
    let raw = weyl::phi_k(m, y1f, y2f)?;
    let lin = weyl::phi_k_chamber(m, &w, y1f, y2f)?;
    // defining identity: Phi = 8 sqrt2 pi B(Y/|Y|, rho)
    let rho = weyl::weyl_vector_fm(m, &w)?;
    let norm_y = (2.0 * y1f * y2f).sqrt();
    let pairing =
        (y1f * numeric::rat_to_f64(&rho.rho2) + y2f * numeric::rat_to_f64(&rho.rho1)) / norm_y;
    let identity = 8.0 * 2.0_f64.sqrt() * std::f64::consts::PI * pairing;
    Ok(Output::Json(json!({
        "m": m,
        "chamber": chamber_json(&w),
        "raw": raw,
        "chamber_formula": lin,
        "identity_residual": (raw - identity).abs(),
        "rho": {"rho1": rat_json(&rho.rho1), "rho2": rat_json(&rho.rho2)},
    })))
}

fn heegner_cmd(m: i64, d: i64, bound: i64, reduced: bool, prec: u32) -> Result<Output> {
    let spec = FieldSpec::new(d)?;
    let mut points = heegner::enumerate_heegner(&spec, m, bound)?;
    if reduced {
        let mut seen = std::collections::BTreeSet::new();
        let mut unique = Vec::new();
        for p in &points {
            let r = heegner::reduce_point(&spec, p);
            let (a, b, c) = r.minpoly();
            if seen.insert((a.clone(), b.clone(), c.clone())) {
                unique.push(r);
            }
        }
        points = unique;
    }
    let rows: Vec<Value> = points
        .iter()
        .map(|p| {
            let (l1, l2) = p.lambda();
            let tau = p.tau(&spec, prec);
            let (a, b, c) = p.minpoly();
            json!({
                "lambda": [
                    l1.a().to_integer().to_string(), l1.b().to_integer().to_string(),
                    l2.a().to_integer().to_string(), l2.b().to_integer().to_string(),
                ],
                "tau": cplx_strs(&tau, prec),
                "minpoly": [a.to_string(), b.to_string(), c.to_string()],
                "q": p.content().to_string(),
                "conductor": p.conductor().to_string(),
            })
        })
        .collect();
    Ok(Output::Json(Value::Array(rows)))
}

#[allow(clippy::too_many_arguments)]
fn eval_xi_cmd(
    d: i64,
    n: i64,
    tau: &str,
    chamber: &str,
    max_kl: i64,
    prec: u32,
    region: &str,
    grid: Option<&str>,
) -> Result<Output> {
    let spec = FieldSpec::new(d)?;
    let w = parse_chamber(chamber, -n)?;
    let params = ProductParams {
        max_kl,
        prec_bits: prec,
        region: parse_region(region)?,
        ..Default::default()
    };
    let product = XiProduct::for_jn(&spec, n, &w, &params)?;

    if let Some(grid_spec) = grid {
        let parts: Vec<&str> = grid_spec.split(',').collect();
        if parts.len() != 6 {
            return Err(Error::InvalidInput("--grid needs re0,re1,nre,im0,im1,nim".into()));
        }
        let parse_f = |i: usize, what: &str| -> Result<f64> {
            parts[i]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad grid {what}")))
        };
        let parse_n = |i: usize, what: &str| -> Result<usize> {
            parts[i]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad grid {what}")))
        };
        let (re0, re1, nre) = (parse_f(0, "re0")?, parse_f(1, "re1")?, parse_n(2, "nre")?);
        let (im0, im1, nim) = (parse_f(3, "im0")?, parse_f(4, "im1")?, parse_n(5, "nim")?);
        if nre < 1 || nim < 1 {
            return Err(Error::InvalidInput("grid counts must be >= 1".into()));
        }
        let mut csv = String::from("re,im,log_abs\n");
        for i in 0..nim {
            let im = if nim == 1 { im0 } else { im0 + (im1 - im0) * i as f64 / (nim - 1) as f64 };
            for j in 0..nre {
                let re = if nre == 1 { re0 } else { re0 + (re1 - re0) * j as f64 / (nre - 1) as f64 };
                let point = numeric::cplx_f64(prec, re, im);
                match product.eval(&point) {
                    Ok(r) => csv.push_str(&format!("{re},{im},{}\n", r.log_abs.to_f64())),
                    Err(Error::DivisorHit { .. }) => csv.push_str(&format!("{re},{im},-inf\n")),
                    Err(e) => return Err(e),
                }
            }
        }
        return Ok(Output::Csv(csv));
    }

    let tau = parse_tau(tau, prec)?;
    let r = product.eval(&tau)?;
    Ok(Output::Json(json!({
        "value": cplx_strs(&r.value, prec),
        "log_abs": real_str(&r.log_abs, prec),
        "tail_bound": r.tail_bound,
        "factor_count": r.factor_count,
        "weight": rat_json(&r.weight),
        "prec_bits": prec,
    })))
}

// ---- check suites ----------------------------------------------------------------

struct CheckSink {
    lines: Vec<Value>,
    all_pass: bool,
}

impl CheckSink {
    fn new() -> Self {
        CheckSink { lines: Vec::new(), all_pass: true }
    }

    fn check(&mut self, suite: &str, test: &str, outcome: Result<String>) {
        let (pass, detail) = match outcome {
            Ok(detail) => (true, detail),
            Err(e) => (false, e.to_string()),
        };
        self.all_pass &= pass;
        self.lines.push(json!({
            "suite": suite, "test": test, "pass": pass, "detail": detail,
        }));
    }
}

fn check_cmd(suite: &str) -> Result<(Output, i32)> {
    let known = ["field", "lattice", "weyl", "qexp", "heegner", "eta"];
    let selected: Vec<&str> = if suite == "all" {
        known.to_vec()
    } else if known.contains(&suite) {
        vec![suite]
    } else {
        return Err(Error::InvalidInput(format!(
            "unknown suite {suite:?}; use one of field, lattice, weyl, qexp, heegner, eta, all"
        )));
    };
    let mut sink = CheckSink::new();
    for s in selected {
        match s {
            "field" => check_field(&mut sink),
            "lattice" => check_lattice(&mut sink),
            "weyl" => check_weyl(&mut sink),
            "qexp" => check_qexp(&mut sink),
            "heegner" => check_heegner(&mut sink),
            "eta" => check_eta(&mut sink),
            _ => unreachable!(),
        }
    }
    let code = if sink.all_pass { 0 } else { 1 };
    Ok((Output::Lines(sink.lines), code))
}

fn ensure(cond: bool, detail: String) -> Result<String> {
    if cond {
        Ok(detail)
    } else {
        Err(Error::InvalidInput(format!("FAILED: {detail}")))
    }
}

fn check_field(sink: &mut CheckSink) {
    sink.check("field", "discriminants", (|| {
        let k1 = FieldSpec::new(-1)?;
        let k3 = FieldSpec::new(-3)?;
        ensure(k1.disc() == -4 && k3.disc() == -3, "D_F(-1) = -4, D_F(-3) = -3".into())
    })());
    sink.check("field", "rejects-non-squarefree", (|| {
        ensure(
            FieldSpec::new(-4).is_err() && FieldSpec::new(-12).is_err(),
            "d = -4, -12 rejected".into(),
        )
    })());
    sink.check("field", "norm-multiplicative", (|| {
        let k = FieldSpec::new(-7)?;
        let x = FieldElem::from_ints(3, -2);
        let y = FieldElem::from_ints(-5, 4);
        ensure(
            k.norm(&k.mul(&x, &y)) == &k.norm(&x) * &k.norm(&y),
            "N(xy) = N(x)N(y) at a sample point".into(),
        )
    })());
    sink.check("field", "inverse-different-dual", (|| {
        let k = FieldSpec::new(-3)?;
        let x = k.inv_delta();
        let dual =
            k.trace(&x).is_integer() && k.trace(&k.mul(&x, &FieldElem::zeta())).is_integer();
        ensure(
            k.in_inv_different(&x) && dual,
            "delta^{-1} satisfies the trace-dual test".into(),
        )
    })());
}

fn check_lattice(sink: &mut CheckSink) {
    sink.check("lattice", "epsilon-is-one", (|| {
        for d in [-1i64, -2, -3, -7, -11] {
            let k = FieldSpec::new(d)?;
            if hermlattice::epsilon(&k) != FieldElem::one() {
                return ensure(false, format!("epsilon != 1 for d = {d}"));
            }
        }
        ensure(true, "epsilon = -delta <l', l> = 1 for all test fields".into())
    })());
    sink.check("lattice", "gram-two-hyperbolic-planes", (|| {
        for d in [-1i64, -2, -3, -7, -11] {
            let k = FieldSpec::new(d)?;
            let e = hermlattice::ebasis(&k);
            for i in 0..4 {
                for j in 0..4 {
                    let expect = match (i, j) {
                        (0, 1) | (1, 0) | (2, 3) | (3, 2) => rat(1),
                        _ => rat(0),
                    };
                    if hermlattice::bilinear(&k, &e[i], &e[j]) != expect {
                        return ensure(false, format!("Gram({i},{j}) wrong for d = {d}"));
                    }
                }
            }
        }
        ensure(true, "exact Gram matrix matches two hyperbolic planes".into())
    })());
    sink.check("lattice", "zl-isotropic", (|| {
        let z = hermlattice::TubePoint::new(
            numeric::cplx_f64(128, 0.3, 1.4),
            numeric::cplx_f64(128, -0.7, 2.2),
        )?;
        let zl = hermlattice::zl_of_z(&z);
        let iso = hermlattice::gram_bilinear(&zl, &zl).abs().real().to_f64();
        ensure(iso < 1e-30, format!("|B(Z_L, Z_L)| = {iso:.2e} < 1e-30"))
    })());
}

fn check_weyl(sink: &mut CheckSink) {
    sink.check("weyl", "chamber-counts", (|| {
        for m in -12..=-1i64 {
            let n_chambers = weyl::chambers(m)?.len();
            let n_divisors = weyl::divisors(-m)?.len();
            if n_chambers != n_divisors + 1 {
                return ensure(false, format!("index {m}: {n_chambers} != d + 1"));
            }
        }
        ensure(true, "chamber count is d(|m|) + 1 for m in -12..=-1".into())
    })());
    sink.check("weyl", "wall-crossing-identity", (|| {
        for m in [-1i64, -6, -12] {
            for w in weyl::chambers(m)? {
                let (y1, y2) = w.interior_point();
                let s1 = weyl::phi_k_sum(m, &y1, &y2)?;
                let s2 = weyl::phi_k_chamber_sum(m, &w, &y1, &y2)?;
                if s1 != rat(2) * s2 {
                    return ensure(false, format!("identity fails at {w} of index {m}"));
                }
            }
        }
        ensure(true, "divisor sum equals twice the chamber sum, exactly".into())
    })());
    sink.check("weyl", "weyl-vector-endpoints", (|| {
        for n in [1i64, 6, 50] {
            let cs = weyl::chambers(-n)?;
            let sigma_n = qexp::sigma(n)?;
            let first = weyl::weyl_vector_jn(n, &cs[0])?;
            let last = weyl::weyl_vector_jn(n, cs.last().expect("nonempty"))?;
            if first.rho1 != rat(-sigma_n)
                || !first.rho2.is_zero()
                || !last.rho1.is_zero()
                || last.rho2 != rat(-sigma_n)
            {
                return ensure(false, format!("endpoint Weyl vectors wrong for n = {n}"));
            }
        }
        ensure(true, "rho(j_n) endpoints are (-sigma, 0) and (0, -sigma)".into())
    })());
    sink.check("weyl", "whittaker-closed-form", (|| {
        let (num, closed) = weyl::whittaker_check(-2, 1.0, 64)?;
        ensure(
            (num - closed).abs() < 1e-8,
            format!("|quadrature - closed| = {:.2e}", (num - closed).abs()),
        )
    })());
}

fn check_qexp(sink: &mut CheckSink) {
    sink.check("qexp", "delta-tau2", (|| {
        let c = qexp::delta_series(4).coeff(2)?;
        ensure(c == BigInt::from(-24), format!("Delta q^2 coefficient = {c}"))
    })());
    sink.check("qexp", "j1-196884-two-routes", (|| {
        let j1 = qexp::faber_jn(1, 3)?;
        let alt = qexp::e6_series(5)
            .pow(2)
            .mul(&qexp::delta_series(5).invert()?)
            .add_scalar(&BigInt::from(984));
        ensure(
            j1.coeff(1)? == BigInt::from(196884) && alt.coeff(1)? == BigInt::from(196884),
            "c(1) = 196884 via E4^3/Delta and via E6^2/Delta".into(),
        )
    })());
    sink.check("qexp", "divisor-sum-constant", (|| {
        ensure(24 * qexp::sigma(6)? == 288, "24 sigma(6) = 288".into())
    })());
}

fn check_heegner(sink: &mut CheckSink) {
    sink.check("heegner", "worked-conductors", (|| {
        let k = FieldSpec::new(-1)?;
        let h1 = heegner::heegner_point(&k, &FieldElem::from_ints(0, -1), &FieldElem::one())?;
        let h2 = heegner::heegner_point(&k, &FieldElem::from_ints(0, -2), &FieldElem::one())?;
        let h3 =
            heegner::heegner_point(&k, &FieldElem::from_ints(0, -2), &FieldElem::from_ints(2, 0))?;
        let got = (h1.conductor().clone(), h2.conductor().clone(), h3.conductor().clone());
        ensure(
            got == (BigInt::one(), BigInt::from(2), BigInt::one()),
            format!(
                "conductors ({}, {}, {})",
                got.0, got.1, got.2
            ),
        )
    })());
    sink.check("heegner", "discriminant-identity", (|| {
        let k = FieldSpec::new(-7)?;
        for h in heegner::enumerate_heegner(&k, -2, 2)? {
            let (a, b, c) = h.minpoly();
            if b * b - 4 * a * c != BigInt::from(4) * BigInt::from(k.disc()) {
                return ensure(false, "B^2 - 4AC != m^2 D_F".into());
            }
        }
        ensure(true, "B^2 - 4AC = m^2 D_F on the enumerated set".into())
    })());
}

fn check_eta(sink: &mut CheckSink) {
    sink.check("eta", "constant-lift-identity", (|| {
        let k = FieldSpec::new(-2)?;
        let params = ProductParams::default();
        let tau = numeric::cplx_f64(128, 0.2, 1.1);
        let xi = borcherds::xi_const(&tau, &k, &params)?;
        let eta_tau = borcherds::eta_auto(&tau, 128)?;
        let eta_z = borcherds::eta_auto(&k.minus_zeta_bar(128), 128)?;
        let expect = eta_tau * eta_z;
        let rel = ((xi.value.clone() - &expect).abs() / expect.abs()).real().to_f64();
        ensure(rel < 1e-30, format!("relative deviation {rel:.2e}"))
    })());
    sink.check("eta", "xi-jn-periodicity", (|| {
        let k = FieldSpec::new(-1)?;
        let params = ProductParams { max_kl: 20, ..Default::default() };
        let w = Chamber::new(-1, 1, None)?;
        let xp = XiProduct::for_jn(&k, 1, &w, &params)?;
        let tau = numeric::cplx_f64(128, 0.21, 2.7);
        let a = xp.eval(&tau)?.value;
        let b = xp.eval(&(tau + 1u32))?.value;
        let rel = ((a.clone() - &b).abs() / a.abs()).real().to_f64();
        ensure(rel < 1e-25, format!("relative deviation {rel:.2e}"))
    })());
}
