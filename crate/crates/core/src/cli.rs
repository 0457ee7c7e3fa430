//! Command-line frontend.
//!
//! Exit codes: 0 success, 2 invalid flags or parameters, 3 validity,
//! 4 parity, 5 failed check, 6 no root or divergent quadrature.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{classify_pointwise, classify_profile, quadrature_case, CaseReport, SolutionClass};
use crate::error::Error;
use crate::families::{catalog_admissible, make_profile, Extras, FamilyId, Profile, SignClass};
use crate::params::{reduced_constants, EquationParams, ReducedConstants, WaveParams};
use crate::quadrature::{half_width, invert_profile, PotentialSpec};
use crate::rational::Rational;
use crate::report::{csv_string, fmt_sci, json_string, write_atomic};
use crate::specfun::{elliptic_k, elliptic_k_imag, signed_pow, tan_fixed_points};
use crate::verify::{run_suite, CheckKind, SuiteOptions, Tolerances, VerificationReport};

/// Multiplier applied to every default tolerance.
pub const TOLERANCE_ENV: &str = "COMPACTON_LAB_TOLERANCE";

#[derive(Debug, Parser)]
#[command(name = "compacton-lab", version, about = "Travelling waves of the K_N(m,n) equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Admissible families, quadrature case and solution class.
    Classify(ClassifyArgs),
    /// Sample a closed-form profile.
    Profile(ProfileArgs),
    /// Invert the quadrature numerically.
    Quadrature(QuadratureArgs),
    /// Run verification checks on a family.
    Verify(VerifyArgs),
    /// Fixed points of tan z = z and elliptic constants.
    Roots(RootsArgs),
    /// List the solution families.
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

fn rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn family(s: &str) -> Result<FamilyId, String> {
    s.parse::<FamilyId>().map_err(|e| e.to_string())
}

fn check(s: &str) -> Result<CheckKind, String> {
    s.parse::<CheckKind>().map_err(|e| e.to_string())
}

fn key_value(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

#[derive(Debug, Args)]
struct EquationArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// Transverse sign; 0 is the one-dimensional reduction.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    s: i32,
    #[arg(long, value_parser = rational)]
    m: Rational,
    #[arg(long, value_parser = rational)]
    n: Rational,
    /// Transverse wave numbers μ, comma separated; N = len + 1.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    mu: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    nu: f64,
}

impl EquationArgs {
    fn build(&self) -> crate::Result<(EquationParams, WaveParams)> {
        let eq = EquationParams::new(self.a, self.b, self.s, self.m, self.n, self.mu.len() + 1)?;
        let wave = WaveParams::new(self.mu.clone(), self.nu)?;
        Ok((eq, wave))
    }
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_parser = family)]
    family: FamilyId,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Which root of z = tan z (LinMixed).
    #[arg(long)]
    root_index: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    phase_sign: Option<i32>,
}

impl FamilyArgs {
    fn profile(&self, eq: &EquationParams, wave: &WaveParams) -> crate::Result<Profile> {
        let mut extras = Extras::default();
        if let Some(a) = self.alpha {
            extras.set("alpha", a)?;
        }
        if let Some(j) = self.root_index {
            extras.set("root_index", j as f64)?;
        }
        if let Some(s) = self.phase_sign {
            extras.set("phase_sign", s as f64)?;
        }
        make_profile(self.family, eq, wave, extras)
    }
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    eq: EquationArgs,
    /// Integration constants of the quadrature.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c3: f64,
    /// Classify a candidate cutoff power directly.
    #[arg(long, value_parser = rational)]
    p: Option<Rational>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    #[command(flatten)]
    eq: EquationArgs,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 401)]
    samples: usize,
    /// Half-span sampled for waves without compact support.
    #[arg(long, default_value_t = 20.0)]
    span: f64,
    /// Add a `V = U^n` column.
    #[arg(long)]
    with_v: bool,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct QuadratureArgs {
    /// Quadrature constants `E,C,B,A`; needs --m and --n.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1)]
    constants: Option<Vec<f64>>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    s: i32,
    #[arg(long, value_parser = rational)]
    m: Rational,
    #[arg(long, value_parser = rational)]
    n: Rational,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    mu: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c3: f64,
    /// Closed-form family to compare with; uses the equation flags.
    #[arg(long, value_parser = family)]
    compare: Option<FamilyId>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 201)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    eq: EquationArgs,
    #[command(flatten)]
    family: FamilyArgs,
    /// Checks to run, comma separated; default all.
    #[arg(long, value_delimiter = ',', value_parser = check)]
    checks: Vec<CheckKind>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 401)]
    grid: usize,
    #[arg(long, default_value_t = 20)]
    random_tests: usize,
    /// Tolerance override, e.g. `residual=1e-6`; repeatable.
    #[arg(long = "tol", value_parser = key_value)]
    tol: Vec<(String, f64)>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RootsArgs {
    #[arg(long, default_value_t = 3)]
    count: usize,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure of a command, carrying its exit code.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ZeroCoefficient(_)
            | Error::NonPositivePower(_)
            | Error::DimensionMismatch(_)
            | Error::InvalidParameter(_)
            | Error::Parse(_) => 2,
            Error::Validity(_) | Error::Domain(_) | Error::NonCompact | Error::LawNotApplicable(_) => 3,
            Error::Parity(_) => 4,
            Error::NoRoot(_) | Error::DivergentIntegral(_) | Error::NoTurningPoint(_) | Error::Degenerate(_) => 6,
            Error::Integration(_) => 1,
        };
        Fail(code, e.to_string())
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail(1, format!("i/o error: {e}"))
    }
}

type CmdResult = Result<i32, Fail>;

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => write_atomic(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Summary lines go to stdout when the data went to a file.
fn note(to_file: bool, line: &str) {
    if to_file {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

/// Runs the CLI on the process arguments and returns the exit code.
pub fn main() -> i32 {
    run(std::env::args_os())
}

/// Runs the CLI on explicit arguments (the first is the program name).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let res = match cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Profile(a) => cmd_profile(a),
        Command::Quadrature(a) => cmd_quadrature(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Roots(a) => cmd_roots(a),
        Command::Catalog(a) => cmd_catalog(a),
    };
    match res {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

// ----------------------------------------------------------------- classify

#[derive(Serialize)]
struct FamilyClass {
    family: FamilyId,
    extras: &'static str,
    parity_obstruction: Option<String>,
    class: Option<String>,
}

#[derive(Serialize)]
struct ClassifyReport {
    kappa: f64,
    families: Vec<FamilyClass>,
    constants: ReducedConstants,
    quadrature: CaseReport,
    quadrature_class: SolutionClass,
    pointwise: Option<SolutionClass>,
}

fn class_label(profile: &Profile) -> String {
    match classify_profile(profile) {
        Ok(c) => c.to_string(),
        Err(Error::NonCompact) => "non-compact".into(),
        Err(e) => format!("unclassified ({e})"),
    }
}

fn cmd_classify(args: ClassifyArgs) -> CmdResult {
    let (eq, wave) = args.eq.build()?;
    let families = catalog_admissible(&eq, &wave)
        .into_iter()
        .map(|ad| {
            let class = match ad.parity_obstruction {
                Some(_) => None,
                None => make_profile(ad.family, &eq, &wave, Extras::default()).ok().map(|p| class_label(&p)),
            };
            FamilyClass { family: ad.family, extras: ad.extras, parity_obstruction: ad.parity_obstruction, class }
        })
        .collect();
    let rc = reduced_constants(&eq, &wave, args.c2, args.c3)?;
    let case = quadrature_case(&rc, &eq)?;
    let pointwise = args.p.map(|p| classify_pointwise(p, &eq, &wave)).transpose()?;
    let report = ClassifyReport {
        kappa: crate::params::kappa(&eq, &wave),
        families,
        constants: rc,
        quadrature_class: case.class(),
        quadrature: case,
        pointwise,
    };
    let text = match args.format {
        ReportFormat::Json => json_string(&report)?,
        ReportFormat::Text => classify_text(&report),
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn classify_text(r: &ClassifyReport) -> String {
    let mut s = format!("kappa {}\n", fmt_sci(r.kappa));
    if r.families.is_empty() {
        s.push_str("admissible families: none\n");
    }
    for f in &r.families {
        match (&f.class, &f.parity_obstruction) {
            (_, Some(why)) => s.push_str(&format!("family {} parity obstruction: {why}\n", f.family)),
            (Some(c), None) => s.push_str(&format!("family {} class {c} [{}]\n", f.family, f.extras)),
            (None, None) => s.push_str(&format!("family {} [{}]\n", f.family, f.extras)),
        }
    }
    let q = &r.quadrature;
    s.push_str(&format!(
        "quadrature E {} C {} B {} A {}\n",
        fmt_sci(r.constants.e),
        fmt_sci(r.constants.c),
        fmt_sci(r.constants.b),
        fmt_sci(r.constants.a)
    ));
    s.push_str(&format!("quadrature case {:?} class {}\n", q.quadrature_case, r.quadrature_class));
    if let Some(pn) = q.pn {
        s.push_str(&format!("quadrature pn {}\n", fmt_sci(pn)));
    }
    for n in &q.notes {
        s.push_str(&format!("note {n}\n"));
    }
    if let Some(c) = r.pointwise {
        s.push_str(&format!("pointwise class {c}\n"));
    }
    s
}

// ------------------------------------------------------------------ profile

#[derive(Serialize)]
struct ProfileData {
    family: FamilyId,
    formula: &'static str,
    half_width: f64,
    p: Option<Rational>,
    sign_class: SignClass,
    kappa: f64,
    speed: f64,
    theta: f64,
    alpha: f64,
    extras: Extras,
    xi: Vec<f64>,
    u: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<Vec<f64>>,
}

fn cmd_profile(args: ProfileArgs) -> CmdResult {
    if args.samples < 2 {
        return Err(Fail(2, "--samples must be at least 2".into()));
    }
    if !(args.span > 0.0) {
        return Err(Fail(2, "--span must be positive".into()));
    }
    let (eq, wave) = args.eq.build()?;
    let profile = args.family.profile(&eq, &wave)?;
    let half = if profile.is_compact() { 1.1 * profile.half_width } else { args.span };
    let ns = args.samples;
    // symmetric grid with an exact centre point for odd sample counts
    let xi: Vec<f64> = (0..ns)
        .map(|i| {
            let t = (2 * i) as f64 - (ns - 1) as f64;
            half * t / (ns - 1) as f64
        })
        .collect();
    let u: Vec<f64> = xi.iter().map(|&x| profile.evaluate(x)).collect();
    let v = args.with_v.then(|| u.iter().map(|&x| signed_pow(x, eq.n).unwrap_or(f64::NAN)).collect::<Vec<_>>());
    let text = match args.format {
        DataFormat::Csv => {
            let mut header = vec!["xi", "u"];
            if v.is_some() {
                header.push("V");
            }
            let rows: Vec<Vec<f64>> = (0..ns)
                .map(|i| {
                    let mut r = vec![xi[i], u[i]];
                    if let Some(v) = &v {
                        r.push(v[i]);
                    }
                    r
                })
                .collect();
            csv_string(&header, &rows)
        }
        DataFormat::Json => {
            let k = profile.kinematics();
            json_string(&ProfileData {
                family: profile.family,
                formula: profile.family.formula(),
                half_width: profile.half_width,
                p: profile.p,
                sign_class: profile.sign_class,
                kappa: k.kappa,
                speed: k.speed,
                theta: k.theta,
                alpha: profile.alpha,
                extras: profile.extras,
                xi,
                u,
                v,
            })?
        }
    };
    emit(&args.out, &text)?;
    Ok(0)
}

// --------------------------------------------------------------- quadrature

#[derive(Serialize)]
struct QuadratureData {
    constants: [f64; 4],
    case: CaseReport,
    class: SolutionClass,
    warnings: Vec<String>,
    vmax: f64,
    half_width: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    compare: Option<Comparison>,
    xi: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
}

#[derive(Serialize)]
struct Comparison {
    family: FamilyId,
    sup_deviation: f64,
    half_width: f64,
    half_width_rel_error: f64,
}

fn cmd_quadrature(args: QuadratureArgs) -> CmdResult {
    if args.samples < 16 {
        return Err(Fail(2, "--samples must be at least 16".into()));
    }
    let (m, n) = (args.m, args.n);
    let equation = match (args.a, args.b, args.nu) {
        (Some(a), Some(b), Some(nu)) => {
            let eq = EquationParams::new(a, b, args.s, m, n, args.mu.len() + 1)?;
            Some((eq, WaveParams::new(args.mu.clone(), nu)?))
        }
        (None, None, None) => None,
        _ => return Err(Fail(2, "--a, --b and --nu go together".into())),
    };
    let compare = match (args.compare, &equation) {
        (Some(f), Some((eq, w))) => {
            let extras = args.alpha.map(Extras::with_alpha).unwrap_or_default();
            Some(make_profile(f, eq, w, extras)?)
        }
        (Some(_), None) => return Err(Fail(2, "--compare needs --a, --b and --nu".into())),
        _ => None,
    };
    let (spec, eq) = match (&args.constants, &equation, &compare) {
        (Some(c), _, _) => {
            let [e, cc, bb, aa] = c[..] else {
                return Err(Fail(2, format!("--constants takes E,C,B,A; got {} values", c.len())));
            };
            let spec = PotentialSpec::from_coefficients(e, cc, bb, aa, m, n);
            // equation with b = 1 whose reduced constants are exactly B and A
            let (mf, nf) = (m.value(), n.value());
            let a = aa * (mf + nf) / (2.0 * nf);
            let eq = if aa != 0.0 { EquationParams::new(a, 1.0, 0, m, n, 1).ok() } else { None };
            (spec, eq)
        }
        (None, _, Some(p)) => (PotentialSpec::from_profile(p)?, Some(p.eq.clone())),
        (None, Some((eq, w)), None) => (PotentialSpec::from_params(eq, w, args.c2, args.c3)?, Some(eq.clone())),
        (None, None, None) => return Err(Fail(2, "give --constants or the equation flags".into())),
    };
    let rc = spec.rc;
    let case = match &eq {
        Some(eq) => quadrature_case(&rc, eq)?,
        None => return Err(Fail(6, "A = 0: no positive root of the quadrature potential".into())),
    };
    let class = case.class();
    let mut warnings = vec![];
    if rc.e != 0.0 {
        warnings.push("E ≠ 0: the profile is not a compacton (class NotASolution)".to_string());
    }
    let hw = half_width(&spec)?;
    let num = invert_profile(&spec, args.samples)?;
    let comparison = compare.map(|p| Comparison {
        family: p.family,
        sup_deviation: num.sup_deviation(&p),
        half_width: p.half_width,
        half_width_rel_error: (hw.value - p.half_width).abs() / p.half_width.abs(),
    });
    let to_file = args.out.is_some();
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    note(to_file, &format!("class {class}"));
    note(to_file, &format!("vmax {}", fmt_sci(hw.vmax)));
    note(to_file, &format!("L {}", fmt_sci(hw.value)));
    if let Some(c) = &comparison {
        note(to_file, &format!("compare {} sup_deviation {}", c.family, fmt_sci(c.sup_deviation)));
        note(to_file, &format!("compare {} L_rel_error {}", c.family, fmt_sci(c.half_width_rel_error)));
    }
    let text = match args.format {
        DataFormat::Csv => {
            let rows: Vec<Vec<f64>> = (0..num.xi.len()).map(|i| vec![num.xi[i], num.u[i], num.v[i]]).collect();
            csv_string(&["xi", "u", "V"], &rows)
        }
        DataFormat::Json => json_string(&QuadratureData {
            constants: [rc.e, rc.c, rc.b, rc.a],
            case,
            class,
            warnings,
            vmax: hw.vmax,
            half_width: hw.value,
            compare: comparison,
            xi: num.xi.clone(),
            u: num.u.clone(),
            v: num.v.clone(),
        })?,
    };
    emit(&args.out, &text)?;
    Ok(0)
}

// ------------------------------------------------------------------- verify

#[derive(Serialize)]
struct VerifyData {
    family: FamilyId,
    class: String,
    seed: u64,
    tolerances: Tolerances,
    all_pass: bool,
    #[serde(flatten)]
    report: VerificationReport,
}

/// Default tolerances scaled by the environment multiplier, if set.
pub fn env_tolerances() -> crate::Result<Tolerances> {
    let base = Tolerances::default();
    match std::env::var(TOLERANCE_ENV) {
        Ok(s) => {
            let f: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("{TOLERANCE_ENV}=`{s}` is not a number")))?;
            if !(f > 0.0 && f.is_finite()) {
                return Err(Error::InvalidParameter(format!("{TOLERANCE_ENV} must be positive, got {f}")));
            }
            Ok(base.scaled(f))
        }
        Err(_) => Ok(base),
    }
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let mut tolerances = env_tolerances()?;
    for (k, v) in &args.tol {
        tolerances.set(k, *v)?;
    }
    let (eq, wave) = args.eq.build()?;
    let profile = args.family.profile(&eq, &wave)?;
    let mut checks = if args.checks.is_empty() { CheckKind::ALL.to_vec() } else { args.checks.clone() };
    checks.sort();
    checks.dedup();
    let opts = SuiteOptions {
        checks,
        tolerances,
        seed: args.seed,
        grid_points: args.grid,
        random_tests: args.random_tests,
    };
    let report = run_suite(&profile, &opts)?;
    for e in &report.entries {
        let mark = if e.pass { "pass" } else { "FAIL" };
        eprintln!("{mark} {} {} (tol {}) {}", e.check_name, fmt_sci(e.measured), fmt_sci(e.tolerance), e.details);
    }
    let all_pass = report.all_pass();
    let data = VerifyData {
        family: profile.family,
        class: class_label(&profile),
        seed: args.seed,
        tolerances,
        all_pass,
        report,
    };
    emit(&args.out, &json_string(&data)?)?;
    Ok(if all_pass { 0 } else { 5 })
}

// -------------------------------------------------------------------- roots

#[derive(Serialize)]
struct RootsData {
    tan_fixed_points: Vec<f64>,
    k_inv_sqrt2: f64,
    sn_period_zero_imag_unit: f64,
}

fn cmd_roots(args: RootsArgs) -> CmdResult {
    if args.count == 0 {
        return Err(Fail(2, "--count must be at least 1".into()));
    }
    let roots = tan_fixed_points(args.count);
    let k = elliptic_k(std::f64::consts::FRAC_1_SQRT_2)?;
    // first positive zero of sn(·, i)
    let zero = 2.0 * elliptic_k_imag(1.0)?;
    let text = match args.format {
        DataFormat::Csv => {
            let mut s = String::from("name,index,value\n");
            for (i, z) in roots.iter().enumerate() {
                s.push_str(&format!("tan_fixed_point,{},{}\n", i + 1, fmt_sci(*z)));
            }
            s.push_str(&format!("K(1/sqrt2),0,{}\n", fmt_sci(k)));
            s.push_str(&format!("2K(i),0,{}\n", fmt_sci(zero)));
            s
        }
        DataFormat::Json => {
            json_string(&RootsData { tan_fixed_points: roots, k_inv_sqrt2: k, sn_period_zero_imag_unit: zero })?
        }
    };
    emit(&args.out, &text)?;
    Ok(0)
}

// ------------------------------------------------------------------ catalog

#[derive(Serialize)]
struct CatalogEntry {
    family: FamilyId,
    formula: &'static str,
    expected_class: String,
    extras: &'static [&'static str],
}

fn cmd_catalog(args: CatalogArgs) -> CmdResult {
    let entries: Vec<CatalogEntry> = FamilyId::ALL
        .into_iter()
        .map(|f| CatalogEntry {
            family: f,
            formula: f.formula(),
            expected_class: format!("{:?}", f.expected_class()),
            extras: f.free_extras(),
        })
        .collect();
    let text = match args.format {
        ReportFormat::Json => {
            #[derive(Serialize)]
            struct Catalog {
                families: Vec<CatalogEntry>,
            }
            json_string(&Catalog { families: entries })?
        }
        ReportFormat::Text => entries
            .iter()
            .map(|e| format!("{:<16} {:<14} {}\n", e.family.name(), e.expected_class, e.formula))
            .collect(),
    };
    emit(&args.out, &text)?;
    Ok(0)
}
