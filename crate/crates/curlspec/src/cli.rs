//! Command-line front end: every pipeline behind one subcommand with
//! file-based, reproducible outputs.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.
//! Config precedence: flags > config file (key=value lines) > defaults.
//! CURLSPEC_THREADS caps scan parallelism (default 1 for bitwise
//! reproducibility).

use crate::certificate;
use crate::dispersion::{
    annulus_mode_scan, disk_mode_scan, disk_spectral_bound, find_resonant_annulus,
    scaled_zero_curve_infimum, annulus_determinant, AnnulusGeometry, ModeIndex, ScanCaps,
};
use crate::error::{Error, Result};
use crate::grad_shafranov::{
    grad_shafranov_solve, laplacian_dirichlet_lambda1, richardson_study,
    symmetric_fluxfree_solve, CrossSection, GridMask,
};
use crate::symmetry::{decide, DeciderConfig, TorusSpec, Verdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::path::PathBuf;

/// Resolution and output configuration shared by the subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub grid_h: f64,
    pub scan_step: f64,
    pub alpha_max: f64,
    pub m_max: i64,
    pub n_ell_max: i64,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
    pub margin_floor: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_h: 1.0 / 64.0,
            scan_step: 0.005,
            alpha_max: 10.0,
            m_max: 8,
            n_ell_max: 8,
            output_dir: PathBuf::from("."),
            format: OutputFormat::Csv,
            margin_floor: 1e-6,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.grid_h > 0.0 && self.scan_step > 0.0 && self.alpha_max > 0.0) {
            return Err(Error::InvalidConfig("resolutions must be positive".into()));
        }
        if self.m_max < 1 || self.n_ell_max < 1 {
            return Err(Error::InvalidConfig("mode caps must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Parse a key=value configuration file. Unknown keys are rejected so typos
/// do not silently fall back to defaults.
pub fn parse_config_file(text: &str, config: &mut RunConfig) -> Result<()> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidConfig(format!("line {}: expected key=value, got '{line}'", lineno + 1))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| Error::InvalidConfig(format!("line {}: bad {what}: '{value}'", lineno + 1));
        match key {
            "grid_h" => config.grid_h = value.parse().map_err(|_| bad("grid_h"))?,
            "scan_step" => config.scan_step = value.parse().map_err(|_| bad("scan_step"))?,
            "alpha_max" => config.alpha_max = value.parse().map_err(|_| bad("alpha_max"))?,
            "m_max" => config.m_max = value.parse().map_err(|_| bad("m_max"))?,
            "n_ell_max" => config.n_ell_max = value.parse().map_err(|_| bad("n_ell_max"))?,
            "output_dir" => config.output_dir = PathBuf::from(value),
            "margin_floor" => config.margin_floor = value.parse().map_err(|_| bad("margin_floor"))?,
            "format" => {
                config.format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad("format (csv|json)")),
                }
            }
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "line {}: unknown key '{key}'",
                    lineno + 1
                )))
            }
        }
    }
    Ok(())
}

#[derive(Debug, Parser)]
#[command(
    name = "curlspec",
    about = "Curl eigenvalue bounds on rotationally symmetric toroidal domains",
    version
)]
struct Cli {
    /// Configuration file with key=value lines (flags take precedence).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory for output files.
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,

    /// Output format for tabular results.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Grid spacing for eigenvalue solves.
    #[arg(long, global = true)]
    grid_h: Option<f64>,

    /// Step for dispersion scans.
    #[arg(long, global = true)]
    scan_step: Option<f64>,

    /// Half-width of the alpha window in zero-curve scans.
    #[arg(long, global = true)]
    alpha_max: Option<f64>,

    /// Azimuthal mode cap |m| <= m_max.
    #[arg(long, global = true)]
    m_max: Option<i64>,

    /// Axial mode cap |n_ell| <= n_ell_max.
    #[arg(long, global = true)]
    n_ell_max: Option<i64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recompute the exact-rational negativity certificate and compare it
    /// bit-for-bit against the built-in reference values.
    VerifyAppendixD(VerifyArgs),
    /// Sweep the minor radius of a standard torus and tabulate the
    /// symmetric upper bound against the antisymmetric lower bound.
    ReproduceThm1(Thm1Args),
    /// Construct the resonant annular family and report the index threshold
    /// past which the first eigenfield cannot be symmetric.
    ReproduceThm2(Thm2Args),
    /// Enumerate dispersion roots (or zero curves) on flat tubes.
    Scan(ScanArgs),
    /// Grad-Shafranov spectrum of a cross-section: Dirichlet eigenvalue,
    /// bracket, symmetric Amperian and flux-free eigenvalues.
    Gs(GsArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Series truncation index M.
    #[arg(long, default_value_t = 5)]
    m_trunc: u32,
    /// Certificate argument s as NUM/DEN.
    #[arg(long, default_value = "287/100")]
    s: String,
    /// Compare against this golden certificate JSON instead of the
    /// built-in reference.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Output file (defaults to certificate.json in the output directory).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Thm1Args {
    /// Major radius R.
    #[arg(long, default_value_t = 1.0)]
    major: f64,
    /// Minor-radius sweep start.
    #[arg(long, default_value_t = 0.01)]
    a_start: f64,
    /// Minor-radius sweep stop (inclusive).
    #[arg(long, default_value_t = 0.5)]
    a_stop: f64,
    /// Minor-radius sweep step.
    #[arg(long, default_value_t = 0.01)]
    a_step: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Thm2Args {
    /// Outer radius b of the annular cross-section.
    #[arg(long, default_value_t = 1.0)]
    outer: f64,
    /// Largest family index n to tabulate.
    #[arg(long, default_value_t = 16)]
    n_max: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanFamily {
    /// Disk-tube dispersion roots.
    Disk,
    /// Annulus-tube determinant roots.
    Annulus,
    /// Zero curve of the scaled dispersion function F_m.
    Curve,
    /// Resonant annulus roots of the family determinant.
    Resonance,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    family: ScanFamily,
    /// Disk radius (family = disk).
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Inner radius (family = annulus).
    #[arg(long, default_value_t = 0.5)]
    inner: f64,
    /// Outer radius (family = annulus | resonance).
    #[arg(long, default_value_t = 1.0)]
    outer: f64,
    /// Tube period L.
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    period: f64,
    /// Scan ceiling for lambda.
    #[arg(long, default_value_t = 12.0)]
    lambda_max: f64,
    /// Azimuthal order for family = curve.
    #[arg(long, default_value_t = 1)]
    m_order: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SectionKind {
    Disk,
    Rectangle,
    Mask,
}

#[derive(Debug, Args)]
struct GsArgs {
    #[arg(long, value_enum)]
    section: SectionKind,
    /// Disk: center radius R.
    #[arg(long, default_value_t = 1.0)]
    major: f64,
    /// Disk: cross-section radius a.
    #[arg(long, default_value_t = 0.1)]
    minor: f64,
    /// Rectangle: [r0, r1] x [z0, z1].
    #[arg(long, default_value_t = 1.0)]
    r0: f64,
    #[arg(long, default_value_t = 2.0)]
    r1: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    z0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    z1: f64,
    /// Mask file (header r0 z0 h nr nz, then 0/1 rows).
    #[arg(long)]
    mask_file: Option<PathBuf>,
    /// Also run a three-grid convergence study (4h, 2h, h).
    #[arg(long)]
    richardson: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Entry point used by the binary: parses std::env args, runs, maps errors
/// to exit codes.
pub fn run() -> i32 {
    init_thread_pool();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap uses exit code 2 for usage errors, 0 for help/version
            err.exit()
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidConfig(_)
        | Error::InvalidGeometry(_)
        | Error::InvalidMode(_)
        | Error::InvalidSection(_)
        | Error::OrderOutOfRange(_)
        | Error::TruncationTooSmall(_)
        | Error::ArgumentOutOfCertifiedRange(_)
        | Error::ZeroIndexOutOfRange => 2,
        _ => 1,
    }
}

fn init_thread_pool() {
    let threads = std::env::var("CURLSPEC_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1);
    // ignore the error when a pool already exists (repeated calls in tests)
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
}

fn dispatch(cli: Cli) -> Result<i32> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        parse_config_file(&std::fs::read_to_string(path)?, &mut config)?;
    }
    if let Some(dir) = cli.output_dir {
        config.output_dir = dir;
    }
    if let Some(f) = cli.format {
        config.format = f;
    }
    if let Some(h) = cli.grid_h {
        config.grid_h = h;
    }
    if let Some(s) = cli.scan_step {
        config.scan_step = s;
    }
    if let Some(a) = cli.alpha_max {
        config.alpha_max = a;
    }
    if let Some(m) = cli.m_max {
        config.m_max = m;
    }
    if let Some(n) = cli.n_ell_max {
        config.n_ell_max = n;
    }
    config.validate()?;
    std::fs::create_dir_all(&config.output_dir)?;

    match cli.command {
        Command::VerifyAppendixD(args) => cmd_verify(&args, &config),
        Command::ReproduceThm1(args) => cmd_thm1(&args, &config),
        Command::ReproduceThm2(args) => cmd_thm2(&args, &config),
        Command::Scan(args) => cmd_scan(&args, &config),
        Command::Gs(args) => cmd_gs(&args, &config),
    }
}

fn out_path(config: &RunConfig, flag: &Option<PathBuf>, default_name: &str) -> PathBuf {
    match flag {
        Some(p) if p.is_absolute() => p.clone(),
        Some(p) => config.output_dir.join(p),
        None => config.output_dir.join(default_name),
    }
}

/// 17 significant digits, enough to round-trip any f64.
fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn unix_seconds() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidConfig(format!("bad rational component '{s}'")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == BigInt::from(0) {
                return Err(Error::InvalidConfig("rational denominator is zero".into()));
            }
            Ok(BigRational::new(parse_int(num)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(text)?)),
    }
}

// ---------------------------------------------------------------------------
// verify-appendix-d
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyReport {
    certificate: certificate::CertificateRecord,
    golden_match: bool,
    mismatches: Vec<String>,
    generated_unix_seconds: u64,
}

fn cmd_verify(args: &VerifyArgs, config: &RunConfig) -> Result<i32> {
    let s = parse_rational(&args.s)?;
    let cert = certificate::certify_negativity(&s, args.m_trunc)?;
    let record = cert.to_record();
    let golden = match &args.golden {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => certificate::golden_reference(),
    };
    let mismatches = certificate::diff_records(&record, &golden);
    let report = VerifyReport {
        certificate: record,
        golden_match: mismatches.is_empty(),
        mismatches: mismatches.clone(),
        generated_unix_seconds: unix_seconds(),
    };
    let path = out_path(config, &args.out, "certificate.json");
    std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;

    println!(
        "certificate at s = {}, M = {}: verdict {}",
        cert.s, cert.truncation, cert.verdict
    );
    println!("  r_lower_check = {}", cert.r_lower_check);
    println!("  sum_j0        = {}", cert.sum_j0);
    println!("  sum_j2        = {}", cert.sum_j2);
    println!("  remainder     = {}", cert.remainder);
    println!("  combined      = {}", cert.combined);
    println!("  wrote {}", path.display());
    if !mismatches.is_empty() {
        for field in &mismatches {
            eprintln!("golden mismatch in {field}");
        }
        return Ok(1);
    }
    Ok(if cert.verdict { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// reproduce-thm1
// ---------------------------------------------------------------------------

fn cmd_thm1(args: &Thm1Args, config: &RunConfig) -> Result<i32> {
    if !(args.a_step > 0.0) || args.a_start > args.a_stop || !(args.a_start > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "empty or invalid minor-radius range [{}, {}] step {}",
            args.a_start, args.a_stop, args.a_step
        )));
    }
    if args.a_stop >= args.major {
        return Err(Error::InvalidGeometry(format!(
            "minor radii must stay below the major radius {}",
            args.major
        )));
    }
    let j_star = disk_spectral_bound(config.alpha_max, config.scan_step)?;
    let decider = DeciderConfig { margin_floor: config.margin_floor, ..Default::default() };

    let mut rows = Vec::new();
    let mut a = args.a_start;
    while a <= args.a_stop + 1e-12 * args.a_step {
        let verdict = decide(
            &TorusSpec::StandardTorus { minor: a, major: args.major },
            &decider,
            &j_star,
        )?;
        rows.push((a, verdict.sym_bound, verdict.antisym_bound, verdict.verdict));
        a += args.a_step;
    }

    let path = out_path(config, &args.out, "thm1_sweep.csv");
    let mut text = String::from("a,sym_upper,antisym_lower,verdict\n");
    for (a, sym, anti, verdict) in &rows {
        text.push_str(&format!("{},{},{},{verdict}\n", fmt_f(*a), fmt_f(*sym), fmt_f(*anti)));
    }
    std::fs::write(&path, text)?;

    let symmetric = rows.iter().filter(|r| r.3 == Verdict::Symmetric).count();
    println!(
        "swept {} minor radii for R = {}: {} Symmetric, {} other; j* in [{}, {}]",
        rows.len(),
        args.major,
        symmetric,
        rows.len() - symmetric,
        fmt_f(j_star.lower()),
        fmt_f(j_star.value + j_star.error_bar),
    );
    println!("  wrote {}", path.display());
    Ok(0)
}

// ---------------------------------------------------------------------------
// reproduce-thm2
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Thm2Row {
    n: u64,
    antisym_upper: f64,
    verdict: Verdict,
}

#[derive(Serialize)]
struct Thm2Report {
    ratio: f64,
    inner: f64,
    outer: f64,
    period: f64,
    lambda: f64,
    g_residual: f64,
    determinant_residual: f64,
    sym_lower: f64,
    n_threshold: u64,
    rows: Vec<Thm2Row>,
    alternative_roots: Vec<f64>,
    generated_unix_seconds: u64,
}

fn cmd_thm2(args: &Thm2Args, config: &RunConfig) -> Result<i32> {
    if args.n_max < 1 {
        return Err(Error::InvalidConfig("n_max must be >= 1".into()));
    }
    let res = find_resonant_annulus(args.outer)?;
    let bounds = crate::symmetry::annular_family_bounds(&res)?;

    // raw determinant residual at the resonant eigenvalue, mode (m, n_ell) = (1, 1)
    let geom = AnnulusGeometry::new(res.inner, res.outer)?;
    let mode = ModeIndex::new(1, 1, res.period)?;
    let det_residual = annulus_determinant(&geom, &mode, res.lambda)?;

    let decider = DeciderConfig { margin_floor: config.margin_floor, ..Default::default() };
    let j_star = disk_spectral_bound(config.alpha_max, config.scan_step)?;
    let mut rows = Vec::new();
    for n in 1..=args.n_max {
        let verdict = decide(
            &TorusSpec::AnnularFamily {
                inner: res.inner,
                outer: res.outer,
                period: res.period,
                n,
            },
            &decider,
            &j_star,
        )?;
        rows.push(Thm2Row { n, antisym_upper: verdict.antisym_bound, verdict: verdict.verdict });
    }

    let report = Thm2Report {
        ratio: res.ratio,
        inner: res.inner,
        outer: res.outer,
        period: res.period,
        lambda: res.lambda,
        g_residual: res.g_residual,
        determinant_residual: det_residual,
        sym_lower: bounds.sym_lower,
        n_threshold: bounds.n_threshold,
        rows,
        alternative_roots: res.alternatives.clone(),
        generated_unix_seconds: unix_seconds(),
    };
    let path = out_path(config, &args.out, "thm2_report.json");
    std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;

    println!(
        "resonant annulus for b = {}: a = {}, L = {}, lambda = {}",
        args.outer,
        fmt_f(res.inner),
        fmt_f(res.period),
        fmt_f(res.lambda)
    );
    println!(
        "  sym_lower = {}, threshold N = {}, |g| = {:.3e}, |det| = {:.3e}",
        fmt_f(report.sym_lower),
        report.n_threshold,
        report.g_residual.abs(),
        report.determinant_residual.abs()
    );
    println!("  wrote {}", path.display());
    Ok(0)
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

fn cmd_scan(args: &ScanArgs, config: &RunConfig) -> Result<i32> {
    match args.family {
        ScanFamily::Disk | ScanFamily::Annulus => {
            let caps = ScanCaps::new(config.m_max, config.n_ell_max, args.lambda_max, config.scan_step)?;
            let roots = match args.family {
                ScanFamily::Disk => disk_mode_scan(args.radius, args.period, &caps)?,
                ScanFamily::Annulus => {
                    let geom = AnnulusGeometry::new(args.inner, args.outer)?;
                    annulus_mode_scan(&geom, args.period, &caps)?
                }
                _ => unreachable!(),
            };
            let name = match args.family {
                ScanFamily::Disk => "scan_disk.csv",
                _ => "scan_annulus.csv",
            };
            let path = out_path(config, &args.out, name);
            let mut text = String::from("m,n_ell,lambda\n");
            for r in &roots {
                text.push_str(&format!("{},{},{}\n", r.m, r.n_ell, fmt_f(r.lambda)));
            }
            std::fs::write(&path, text)?;
            println!("{} roots within caps; wrote {}", roots.len(), path.display());
        }
        ScanFamily::Curve => {
            let scan = scaled_zero_curve_infimum(args.m_order, config.alpha_max, config.scan_step)?;
            let path = out_path(config, &args.out, "scan_curve.csv");
            let mut text = String::from("m,alpha,kappa_root\n");
            for &(alpha, kappa) in &scan.zeros {
                text.push_str(&format!("{},{},{}\n", scan.m, fmt_f(alpha), fmt_f(kappa)));
            }
            std::fs::write(&path, text)?;
            println!(
                "zero-curve infimum for m = {}: {} +/- {} (found = {}, window exhaustive = {}); wrote {}",
                scan.m,
                fmt_f(scan.infimum),
                fmt_f(scan.error_bar),
                scan.found,
                scan.exhaustive,
                path.display()
            );
        }
        ScanFamily::Resonance => {
            let res = find_resonant_annulus(args.outer)?;
            let path = out_path(config, &args.out, "scan_resonance.csv");
            let mut text = String::from("r,b,a_root,L,lambda\n");
            text.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_f(res.ratio),
                fmt_f(res.outer),
                fmt_f(res.inner),
                fmt_f(res.period),
                fmt_f(res.lambda)
            ));
            for &alt in &res.alternatives {
                let gap = res.outer - alt;
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_f(res.ratio),
                    fmt_f(res.outer),
                    fmt_f(alt),
                    fmt_f(2.0 * gap / res.ratio),
                    fmt_f(std::f64::consts::PI / gap)
                ));
            }
            std::fs::write(&path, text)?;
            println!(
                "resonance root a = {} (+{} alternatives); wrote {}",
                fmt_f(res.inner),
                res.alternatives.len(),
                path.display()
            );
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// gs
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RichardsonReport {
    hs: [f64; 3],
    values: [f64; 3],
    order: f64,
    error_estimate: f64,
}

#[derive(Serialize)]
struct GsReport {
    lambda1_d: f64,
    lambda1_gs: f64,
    lambda1_s: f64,
    lambda1_sff: f64,
    bracket_low: f64,
    bracket_high: f64,
    bracket_contained: bool,
    fluxfree_exceeds_amperian: bool,
    fluxfree_weighted_mean: f64,
    fluxfree_boundary_value: f64,
    grid_h: f64,
    richardson: Option<RichardsonReport>,
    generated_unix_seconds: u64,
}

fn build_section(args: &GsArgs) -> Result<CrossSection> {
    match args.section {
        SectionKind::Disk => CrossSection::disk(args.major, args.minor),
        SectionKind::Rectangle => CrossSection::rectangle(args.r0, args.r1, args.z0, args.z1),
        SectionKind::Mask => {
            let path = args.mask_file.as_ref().ok_or_else(|| {
                Error::InvalidConfig("--mask-file is required for --section mask".into())
            })?;
            Ok(CrossSection::Mask(GridMask::read_file(path)?))
        }
    }
}

fn cmd_gs(args: &GsArgs, config: &RunConfig) -> Result<i32> {
    let section = build_section(args)?;
    let h = config.grid_h;
    let gs = grad_shafranov_solve(&section, h)?;
    let lap = laplacian_dirichlet_lambda1(&section, h)?;
    let ff = symmetric_fluxfree_solve(&section, h)?;

    let richardson = if args.richardson {
        // three grids refining down from grid_h: h, h/2, h/4
        let study = richardson_study(h, |hh| Ok(grad_shafranov_solve(&section, hh)?.estimate.value))?;
        Some(RichardsonReport {
            hs: study.hs,
            values: study.values,
            order: study.order,
            error_estimate: study.error_estimate,
        })
    } else {
        None
    };

    let est = &gs.estimate;
    let report = GsReport {
        lambda1_d: lap.value,
        lambda1_gs: est.value,
        lambda1_s: est.value.sqrt(),
        lambda1_sff: ff.lambda,
        bracket_low: est.bracket_low,
        bracket_high: est.bracket_high,
        bracket_contained: est.bracket_low <= est.value && est.value <= est.bracket_high,
        fluxfree_exceeds_amperian: ff.lambda > est.value.sqrt(),
        fluxfree_weighted_mean: ff.weighted_mean,
        fluxfree_boundary_value: ff.boundary_value,
        grid_h: h,
        richardson,
        generated_unix_seconds: unix_seconds(),
    };
    let path = out_path(config, &args.out, "gs_report.json");
    std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;

    println!(
        "lambda1_D = {}, lambda1_GS = {} in [{}, {}]",
        fmt_f(report.lambda1_d),
        fmt_f(report.lambda1_gs),
        fmt_f(report.bracket_low),
        fmt_f(report.bracket_high)
    );
    println!(
        "lambda1_s = {}, lambda1_sFF = {} (ordering ok: {})",
        fmt_f(report.lambda1_s),
        fmt_f(report.lambda1_sff),
        report.fluxfree_exceeds_amperian
    );
    if let Some(r) = &report.richardson {
        println!("richardson order = {:.3}, error estimate = {:.3e}", r.order, r.error_estimate);
    }
    println!("  wrote {}", path.display());
    Ok(0)
}
