//! Antisymmetric-mode dispersion relations on flat tubes.
//!
//! On a disk tube the admissible (lambda, ell, m) satisfy
//! (lambda m / a) J_m(mu a) + ell mu J_m'(mu a) = 0 with
//! mu = sqrt(lambda^2 - ell^2); on an annulus tube the same expression for
//! J and Y at both radii forms a 2x2 determinant. The recurrence identity
//! (lambda m / c) Z_m + ell mu Z_m' = (mu/2) [(lambda+ell) Z_{m-1} +
//! (lambda-ell) Z_{m+1}] reduces everything to the two-parameter functions
//! F_m(alpha, kappa) = ((kappa+alpha)/(kappa-alpha)) J_{m-1}(t) + J_{m+1}(t),
//! t = sqrt(kappa^2 - alpha^2), whose zero curves this module scans.

use crate::bessel::{self, bessel_zero, BesselZeroIndex};
use crate::error::{Error, Result};
use rayon::prelude::*;

/// Points closer than this to the kappa = alpha pole are rejected.
const POLE_GUARD: f64 = 1e-6;

/// Axial/azimuthal mode index on a tube of period L: the realized axial
/// wavenumber is ell = 2 pi n_ell / L.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeIndex {
    pub n_ell: i64,
    pub m: i64,
    pub period: f64,
}

impl ModeIndex {
    pub fn new(n_ell: i64, m: i64, period: f64) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::InvalidMode(format!("period must be positive, got {period}")));
        }
        if m.abs() > bessel::MAX_ORDER {
            return Err(Error::InvalidMode(format!("|m| = {} exceeds {}", m.abs(), bessel::MAX_ORDER)));
        }
        Ok(ModeIndex { n_ell, m, period })
    }

    /// Realized axial wavenumber 2 pi n_ell / L.
    pub fn ell(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.n_ell as f64 / self.period
    }
}

/// Admissible spectral point: lambda^2 > ell^2, mu = sqrt(lambda^2 - ell^2).
#[derive(Debug, Clone, Copy)]
pub struct DispersionPoint {
    pub lambda: f64,
    pub ell: f64,
    pub mu: f64,
}

impl DispersionPoint {
    pub fn new(lambda: f64, ell: f64) -> Result<Self> {
        if !(lambda * lambda > ell * ell) {
            return Err(Error::EvanescentMode { lambda, ell });
        }
        Ok(DispersionPoint { lambda, ell, mu: (lambda * lambda - ell * ell).sqrt() })
    }
}

/// Point of the scaled (alpha, kappa) half-plane with kappa^2 > alpha^2.
#[derive(Debug, Clone, Copy)]
pub struct ScaledPoint {
    pub alpha: f64,
    pub kappa: f64,
}

impl ScaledPoint {
    pub fn new(alpha: f64, kappa: f64) -> Result<Self> {
        if !(kappa * kappa > alpha * alpha) {
            return Err(Error::EvanescentMode { lambda: kappa, ell: alpha });
        }
        if (kappa - alpha).abs() < POLE_GUARD {
            return Err(Error::PoleProximity { alpha, kappa });
        }
        Ok(ScaledPoint { alpha, kappa })
    }
}

/// Annular cross-section radii 0 < inner < outer.
#[derive(Debug, Clone, Copy)]
pub struct AnnulusGeometry {
    pub inner: f64,
    pub outer: f64,
}

impl AnnulusGeometry {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        if !(inner > 0.0 && outer > inner) {
            return Err(Error::InvalidGeometry(format!(
                "need 0 < inner < outer, got ({inner}, {outer})"
            )));
        }
        Ok(AnnulusGeometry { inner, outer })
    }
}

fn j_signed(m: i64, x: f64) -> f64 {
    let mut sign = 1.0;
    let mu = if m < 0 {
        if m % 2 != 0 {
            sign = -sign;
        }
        (-m) as usize
    } else {
        m as usize
    };
    let table = bessel::j_upto(mu, x);
    sign * table[mu]
}

/// J_{m-1}(x) and J_{m+1}(x) from a single backward sweep.
fn j_pair(m: i64, x: f64) -> (f64, f64) {
    let lo = m - 1;
    let hi = m + 1;
    let n_max = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
    let table = bessel::j_upto(n_max, x);
    let fetch = |k: i64| -> f64 {
        if k < 0 {
            let s = if k % 2 != 0 { -1.0 } else { 1.0 };
            s * table[(-k) as usize]
        } else {
            table[k as usize]
        }
    };
    (fetch(lo), fetch(hi))
}

fn y_signed(m: i64, x: f64) -> Result<f64> {
    if m < 0 {
        let sign = if m % 2 != 0 { -1.0 } else { 1.0 };
        Ok(sign * bessel::bessel_y((-m) as u32, x)?)
    } else {
        bessel::bessel_y(m as u32, x)
    }
}

/// Left-hand side of the disk dispersion relation
/// (lambda m / a) J_m(mu a) + ell mu J_m'(mu a); a root signals a
/// nontrivial antisymmetric mode.
pub fn disk_dispersion(radius: f64, mode: &ModeIndex, lambda: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::InvalidGeometry(format!("radius must be positive, got {radius}")));
    }
    let ell = mode.ell();
    let point = DispersionPoint::new(lambda, ell)?;
    let t = point.mu * radius;
    let (jm1, jp1) = j_pair(mode.m, t);
    let jm = j_signed(mode.m, t);
    let j_prime = 0.5 * (jm1 - jp1);
    Ok(lambda * mode.m as f64 / radius * jm + ell * point.mu * j_prime)
}

/// The scaled dispersion function
/// F_m(alpha, kappa) = ((kappa+alpha)/(kappa-alpha)) J_{m-1}(t) + J_{m+1}(t)
/// with t = sqrt(kappa^2 - alpha^2). Zeros at (a ell, a lambda) correspond
/// exactly to roots of the disk relation.
pub fn scaled_disk_dispersion(m: i64, point: &ScaledPoint) -> Result<f64> {
    if m.abs() > bessel::MAX_ORDER {
        return Err(Error::OrderOutOfRange(m));
    }
    let t = (point.kappa * point.kappa - point.alpha * point.alpha).sqrt();
    let (jm1, jp1) = j_pair(m, t);
    let weight = (point.kappa + point.alpha) / (point.kappa - point.alpha);
    Ok(weight * jm1 + jp1)
}

/// Result of scanning the zero curves of F_m over a rectangle of the
/// scaled plane.
#[derive(Debug, Clone)]
pub struct ZeroCurveScan {
    pub m: u32,
    /// Smallest kappa among detected zeros (or the open lower bound
    /// j_{m-1,1} when `found` is false).
    pub infimum: f64,
    /// Resolution-dependent error bar on the infimum.
    pub error_bar: f64,
    pub alpha_at_infimum: f64,
    /// First zero per retained alpha column.
    pub zeros: Vec<(f64, f64)>,
    pub found: bool,
    /// The analytic open lower bound j_{m-1,1} for the whole curve family.
    pub curve_lower_bound: f64,
    pub alpha_max: f64,
    pub step: f64,
    /// True when the reported infimum is below the floor at |alpha| =
    /// alpha_max, so zeros outside the window cannot undercut it and the
    /// finite scan is exhaustive.
    pub exhaustive: bool,
}

/// Numerical infimum of kappa over the zero set of F_m on
/// {|alpha| <= alpha_max}. Every zero satisfies
/// kappa > sqrt(j_{m-1,1}^2 + alpha^2), so columns whose floor already
/// exceeds the running best cannot contribute and are skipped; the same
/// bound makes the alpha truncation exhaustive.
pub fn scaled_zero_curve_infimum(m: u32, alpha_max: f64, step: f64) -> Result<ZeroCurveScan> {
    if m < 1 {
        return Err(Error::InvalidMode("zero-curve scan needs m >= 1".into()));
    }
    if !(alpha_max >= 10.0) {
        return Err(Error::InvalidConfig(format!(
            "alpha_max must be >= 10 for an exhaustive scan, got {alpha_max}"
        )));
    }
    if !(step > 0.0 && step <= 0.01) {
        return Err(Error::InvalidConfig(format!(
            "scan step must lie in (0, 0.01] to resolve the zero curves, got {step}"
        )));
    }
    let j_lower = bessel_zero(BesselZeroIndex::new(m - 1, 1)?);
    let j_upper = bessel_zero(BesselZeroIndex::new(m + 1, 1)?);
    let window = j_upper - j_lower + 3.0;

    // columns ordered by |alpha| so pruning engages as early as possible
    let n_cols = (alpha_max / step).floor() as i64;
    let mut columns: Vec<f64> = Vec::with_capacity(2 * n_cols as usize + 1);
    columns.push(0.0);
    for k in 1..=n_cols {
        columns.push(k as f64 * step);
        columns.push(-(k as f64) * step);
    }

    let mi = m as i64;
    let mut best = f64::INFINITY;
    let mut best_alpha = f64::NAN;
    let mut zeros = Vec::new();
    for alpha in columns {
        let floor = (j_lower * j_lower + alpha * alpha).sqrt();
        if floor >= best {
            continue;
        }
        if let Some(kappa) = first_column_zero(mi, alpha, floor, window, step) {
            zeros.push((alpha, kappa));
            if kappa < best {
                best = kappa;
                best_alpha = alpha;
            }
        }
    }
    let found = best.is_finite();
    let window_floor = (j_lower * j_lower + alpha_max * alpha_max).sqrt();
    Ok(ZeroCurveScan {
        m,
        infimum: if found { best } else { j_lower },
        // the curve is smooth in alpha; one alpha step dominates the
        // column-sampling error, the bisection tail is negligible
        error_bar: step + 1e-10,
        alpha_at_infimum: best_alpha,
        zeros,
        found,
        curve_lower_bound: j_lower,
        alpha_max,
        step,
        exhaustive: found && best < window_floor,
    })
}

/// First zero of F_m(alpha, .) above `floor`, within `window`, or None.
fn first_column_zero(m: i64, alpha: f64, floor: f64, window: f64, step: f64) -> Option<f64> {
    let eval = |kappa: f64| -> f64 {
        let t = (kappa * kappa - alpha * alpha).sqrt();
        let (jm1, jp1) = j_pair(m, t);
        (kappa + alpha) / (kappa - alpha) * jm1 + jp1
    };
    let start = floor + step * 1e-3;
    let mut kappa = start;
    let mut prev = eval(kappa);
    while kappa < floor + window {
        let next = kappa + step;
        let val = eval(next);
        if prev * val < 0.0 {
            let (mut lo, mut hi) = (kappa, next);
            let mut f_lo = prev;
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                let f_mid = eval(mid);
                if f_lo * f_mid <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    f_lo = f_mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev = val;
        kappa = next;
    }
    None
}

/// Uniform scaled lower bound for antisymmetric disk eigenvalues:
/// min of the F_1 zero-curve infimum and j_{1,1}, strictly above j_{0,1}.
#[derive(Debug, Clone)]
pub struct DiskSpectralBound {
    pub value: f64,
    pub error_bar: f64,
    pub j11: f64,
    pub curve: ZeroCurveScan,
}

impl DiskSpectralBound {
    /// Conservative lower bound: estimate minus error bar.
    pub fn lower(&self) -> f64 {
        self.value - self.error_bar
    }
}

pub fn disk_spectral_bound(alpha_max: f64, step: f64) -> Result<DiskSpectralBound> {
    let curve = scaled_zero_curve_infimum(1, alpha_max, step)?;
    if !curve.exhaustive {
        return Err(Error::InvalidConfig(format!(
            "zero-curve scan window |alpha| <= {alpha_max} does not certify its infimum {}",
            curve.infimum
        )));
    }
    let j11 = bessel_zero(BesselZeroIndex::new(1, 1)?);
    let j01 = bessel_zero(BesselZeroIndex::new(0, 1)?);
    let value = curve.infimum.min(j11);
    let bound = DiskSpectralBound { value, error_bar: curve.error_bar, j11, curve };
    if !(bound.lower() > j01) {
        // the scan resolution was too coarse to separate from j_{0,1}
        return Err(Error::InvalidConfig(format!(
            "scan-based bound {} does not separate from j_01 = {j01}",
            bound.lower()
        )));
    }
    Ok(bound)
}

/// Default scan used by the deciders: alpha_max 10, step 0.005.
pub fn disk_spectral_bound_default() -> Result<DiskSpectralBound> {
    disk_spectral_bound(10.0, 0.005)
}

/// Raw annulus dispersion determinant with entries
/// (lambda m / c) Z_m(mu c) + ell mu Z_m'(mu c), c in {a, b}, Z in {J, Y}.
pub fn annulus_determinant(geom: &AnnulusGeometry, mode: &ModeIndex, lambda: f64) -> Result<f64> {
    let point = DispersionPoint::new(lambda, mode.ell())?;
    let row = |c: f64| -> Result<(f64, f64)> {
        let t = point.mu * c;
        let (jm1, jp1) = j_pair(mode.m, t);
        let jm = j_signed(mode.m, t);
        let ym = y_signed(mode.m, t)?;
        let ym1 = y_signed(mode.m - 1, t)?;
        let yp1 = y_signed(mode.m + 1, t)?;
        let coeff = lambda * mode.m as f64 / c;
        Ok((
            coeff * jm + mode.ell() * point.mu * 0.5 * (jm1 - jp1),
            coeff * ym + mode.ell() * point.mu * 0.5 * (ym1 - yp1),
        ))
    };
    let (a1, a2) = row(geom.inner)?;
    let (b1, b2) = row(geom.outer)?;
    Ok(a1 * b2 - a2 * b1)
}

/// Reduced determinant with entries
/// (lambda + ell) Z_{m-1}(mu c) + (lambda - ell) Z_{m+1}(mu c); equals the
/// raw determinant divided by (mu/2)^2.
pub fn annulus_determinant_reduced(
    geom: &AnnulusGeometry,
    mode: &ModeIndex,
    lambda: f64,
) -> Result<f64> {
    let point = DispersionPoint::new(lambda, mode.ell())?;
    let ell = mode.ell();
    let row = |c: f64| -> Result<(f64, f64)> {
        let t = point.mu * c;
        let (jm1, jp1) = j_pair(mode.m, t);
        let ym1 = y_signed(mode.m - 1, t)?;
        let yp1 = y_signed(mode.m + 1, t)?;
        Ok((
            (lambda + ell) * jm1 + (lambda - ell) * jp1,
            (lambda + ell) * ym1 + (lambda - ell) * yp1,
        ))
    };
    let (a1, a2) = row(geom.inner)?;
    let (b1, b2) = row(geom.outer)?;
    Ok(a1 * b2 - a2 * b1)
}

/// The m = 1 reduced determinant along the one-parameter family
/// lambda = pi/(b-a), ell = r lambda, mu = sqrt(1-r^2) pi/(b-a), divided by
/// lambda^2: rows (1+r) Z_0(mu c) + (1-r) Z_2(mu c) at c = a and c = b.
/// Its sign structure in a (negative near 0, positive near b) produces the
/// resonant annulus geometry.
pub fn resonant_annulus_det(ratio: f64, outer: f64, inner: f64) -> Result<f64> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidGeometry(format!("ratio must lie in (0,1), got {ratio}")));
    }
    if !(outer > 0.0 && inner > 0.0 && inner < outer) {
        return Err(Error::InvalidGeometry(format!(
            "need 0 < inner < outer, got ({inner}, {outer})"
        )));
    }
    let mu = (1.0 - ratio * ratio).sqrt() * std::f64::consts::PI / (outer - inner);
    let row = |c: f64| -> Result<(f64, f64)> {
        let t = mu * c;
        let table = bessel::j_upto(2, t);
        let y0 = bessel::bessel_y(0, t)?;
        let y2 = bessel::bessel_y(2, t)?;
        Ok((
            (1.0 + ratio) * table[0] + (1.0 - ratio) * table[2],
            (1.0 + ratio) * y0 + (1.0 - ratio) * y2,
        ))
    };
    let (a1, a2) = row(inner)?;
    let (b1, b2) = row(outer)?;
    Ok(a1 * b2 - a2 * b1)
}

/// The ratio r_0 = sqrt(1 - s^2/pi^2) at s = 287/100, the value whose
/// initial negativity is certified exactly by the `certificate` module.
pub fn reference_ratio() -> f64 {
    let s = 2.87_f64;
    (1.0 - s * s / (std::f64::consts::PI * std::f64::consts::PI)).sqrt()
}

/// Resonant annulus construction: a root a of the family determinant
/// together with the induced period and eigenvalue.
#[derive(Debug, Clone)]
pub struct ResonantAnnulus {
    pub ratio: f64,
    pub inner: f64,
    pub outer: f64,
    /// Tube period L = 2 (b - a) / r, so that ell = r lambda is realized
    /// with n_ell = 1.
    pub period: f64,
    /// lambda = pi / (b - a).
    pub lambda: f64,
    /// Determinant residual at the returned root.
    pub g_residual: f64,
    /// Other sign-change roots found by the scan (ascending in a).
    pub alternatives: Vec<f64>,
}

/// Find the smallest root a of the family determinant at the reference
/// ratio: sign-bracketing between the initially negative and eventually
/// positive regions, bisected to 1e-12 relative.
pub fn find_resonant_annulus(outer: f64) -> Result<ResonantAnnulus> {
    find_resonant_annulus_with_ratio(reference_ratio(), outer)
}

pub fn find_resonant_annulus_with_ratio(ratio: f64, outer: f64) -> Result<ResonantAnnulus> {
    if !(outer > 0.0) || !outer.is_finite() {
        return Err(Error::InvalidGeometry(format!("outer radius must be positive, got {outer}")));
    }
    let n_steps = 2000usize;
    let lo_frac = 1e-4;
    let hi_frac = 1.0 - 1e-4;
    let mut roots: Vec<f64> = Vec::new();
    let mut prev_a = outer * lo_frac;
    let mut prev_g = resonant_annulus_det(ratio, outer, prev_a)?;
    for k in 1..=n_steps {
        let a = outer * (lo_frac + (hi_frac - lo_frac) * k as f64 / n_steps as f64);
        let g = resonant_annulus_det(ratio, outer, a)?;
        if prev_g * g < 0.0 {
            let (mut lo, mut hi) = (prev_a, a);
            let mut f_lo = prev_g;
            while hi - lo > 1e-12 * outer {
                let mid = 0.5 * (lo + hi);
                let f_mid = resonant_annulus_det(ratio, outer, mid)?;
                if f_lo * f_mid <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    f_lo = f_mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_a = a;
        prev_g = g;
    }
    if roots.is_empty() {
        return Err(Error::NoSignChange {
            what: format!("resonant annulus determinant at ratio {ratio}"),
            lo: outer * lo_frac,
            hi: outer * hi_frac,
            step: outer * (hi_frac - lo_frac) / n_steps as f64,
        });
    }
    let inner = roots[0];
    let g_residual = resonant_annulus_det(ratio, outer, inner)?;
    Ok(ResonantAnnulus {
        ratio,
        inner,
        outer,
        period: 2.0 * (outer - inner) / ratio,
        lambda: std::f64::consts::PI / (outer - inner),
        g_residual,
        alternatives: roots[1..].to_vec(),
    })
}

/// One dispersion root located by a mode scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionRoot {
    pub m: i64,
    pub n_ell: i64,
    pub lambda: f64,
}

/// Scan configuration shared by the disk and annulus mode scans.
#[derive(Debug, Clone, Copy)]
pub struct ScanCaps {
    pub m_max: i64,
    pub n_ell_max: i64,
    pub lambda_max: f64,
    pub step: f64,
}

impl ScanCaps {
    pub fn new(m_max: i64, n_ell_max: i64, lambda_max: f64, step: f64) -> Result<Self> {
        if m_max < 0 || n_ell_max < 0 {
            return Err(Error::InvalidConfig("mode caps must be non-negative".into()));
        }
        if !(step > 0.0) || !(lambda_max > 0.0) {
            return Err(Error::InvalidConfig("lambda_max and step must be positive".into()));
        }
        Ok(ScanCaps { m_max, n_ell_max, lambda_max, step })
    }
}

/// All roots of the disk dispersion relation with |m| <= m_max,
/// 0 < |n_ell| <= n_ell_max and lambda in (|ell|, lambda_max], sorted by
/// lambda. Mode cells are independent; they run in parallel and the result
/// order is canonical regardless of scheduling.
pub fn disk_mode_scan(radius: f64, period: f64, caps: &ScanCaps) -> Result<Vec<DispersionRoot>> {
    let modes = enumerate_modes(period, caps)?;
    let results: Vec<Result<Vec<DispersionRoot>>> = modes
        .par_iter()
        .map(|mode| scan_mode_roots(|lambda| disk_dispersion(radius, mode, lambda), mode, caps))
        .collect();
    collect_sorted(results)
}

/// All roots of the raw annulus determinant within the caps, sorted by
/// lambda.
pub fn annulus_mode_scan(
    geom: &AnnulusGeometry,
    period: f64,
    caps: &ScanCaps,
) -> Result<Vec<DispersionRoot>> {
    let modes = enumerate_modes(period, caps)?;
    let results: Vec<Result<Vec<DispersionRoot>>> = modes
        .par_iter()
        .map(|mode| scan_mode_roots(|lambda| annulus_determinant(geom, mode, lambda), mode, caps))
        .collect();
    collect_sorted(results)
}

fn collect_sorted(results: Vec<Result<Vec<DispersionRoot>>>) -> Result<Vec<DispersionRoot>> {
    let mut roots = Vec::new();
    for r in results {
        roots.extend(r?);
    }
    roots.sort_by(|p, q| {
        p.lambda
            .total_cmp(&q.lambda)
            .then(p.m.cmp(&q.m))
            .then(p.n_ell.cmp(&q.n_ell))
    });
    Ok(roots)
}

fn enumerate_modes(period: f64, caps: &ScanCaps) -> Result<Vec<ModeIndex>> {
    let mut modes = Vec::new();
    for m in -caps.m_max..=caps.m_max {
        for n in -caps.n_ell_max..=caps.n_ell_max {
            if n == 0 {
                continue;
            }
            modes.push(ModeIndex::new(n, m, period)?);
        }
    }
    Ok(modes)
}

fn scan_mode_roots(
    residual: impl Fn(f64) -> Result<f64>,
    mode: &ModeIndex,
    caps: &ScanCaps,
) -> Result<Vec<DispersionRoot>> {
    let mut out = Vec::new();
    let ell_abs = mode.ell().abs();
    if ell_abs >= caps.lambda_max {
        return Ok(out);
    }
    // stay strictly inside lambda^2 > ell^2
    let start = ell_abs + (caps.step * 1e-3).max(1e-9 * ell_abs.max(1.0));
    let mut lambda = start;
    let mut prev = residual(lambda)?;
    loop {
        let next = (lambda + caps.step).min(caps.lambda_max);
        let val = residual(next)?;
        if prev != 0.0 && val != 0.0 && prev * val < 0.0 {
            let (mut lo, mut hi) = (lambda, next);
            let mut f_lo = prev;
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                let f_mid = residual(mid)?;
                if f_lo * f_mid <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    f_lo = f_mid;
                }
            }
            out.push(DispersionRoot { m: mode.m, n_ell: mode.n_ell, lambda: 0.5 * (lo + hi) });
        }
        prev = val;
        if next >= caps.lambda_max {
            break;
        }
        lambda = next;
    }
    Ok(out)
}
