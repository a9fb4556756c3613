//! Symmetry verdicts for the first Amperian curl eigenfield.
//!
//! The first positive Amperian eigenvalue is the minimum of the symmetric
//! and antisymmetric branch minima, so one-sided bounds decide symmetry:
//! an upper bound on the symmetric eigenvalue strictly below a lower bound
//! on the antisymmetric one certifies a symmetric first eigenfield, and a
//! lower bound on the symmetric eigenvalue strictly above an antisymmetric
//! upper bound certifies that no first eigenfield is symmetric. The decider
//! only ever compares certified one-sided bounds; it never claims a
//! computed spectrum.

use crate::bessel::{bessel_zero, BesselZeroIndex};
use crate::dispersion::{
    resonant_annulus_det, DiskSpectralBound, ResonantAnnulus,
};
use crate::error::{Error, Result};
use serde::Serialize;

/// Rotationally symmetric domains the bound pipelines cover.
#[derive(Debug, Clone)]
pub enum TorusSpec {
    /// Standard solid torus with minor radius a and major radius R.
    StandardTorus { minor: f64, major: f64 },
    /// Member n of the annular-cylinder family: cross-section
    /// [a, b] x [-L_n/2, L_n/2] with L_n = n L.
    AnnularFamily { inner: f64, outer: f64, period: f64, n: u64 },
}

impl TorusSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TorusSpec::StandardTorus { minor, major } => {
                if !(minor > 0.0 && minor < major) {
                    return Err(Error::InvalidGeometry(format!(
                        "need 0 < minor < major, got ({minor}, {major})"
                    )));
                }
                Ok(())
            }
            TorusSpec::AnnularFamily { inner, outer, period, n } => {
                if !(inner > 0.0 && inner < outer) {
                    return Err(Error::InvalidGeometry(format!(
                        "need 0 < inner < outer, got ({inner}, {outer})"
                    )));
                }
                if !(period > 0.0) {
                    return Err(Error::InvalidGeometry(format!("period must be positive, got {period}")));
                }
                if n < 1 {
                    return Err(Error::InvalidGeometry("family index n must be >= 1".into()));
                }
                Ok(())
            }
        }
    }
}

/// Closed-form bounds for the standard torus: an upper bound for the
/// symmetric branch and a scan-backed lower bound for the antisymmetric one.
#[derive(Debug, Clone, Copy)]
pub struct StandardTorusBounds {
    /// sqrt(j_01^2/a^2 + 3/(4 (R+a)^2)) >= lambda_1^s.
    pub sym_upper: f64,
    /// sqrt((R-a)/(R+a)) j*/a <= lambda_1^*, with j* taken at its
    /// conservative value (estimate minus error bar).
    pub antisym_lower: f64,
}

pub fn standard_torus_bounds(
    minor: f64,
    major: f64,
    j_star: &DiskSpectralBound,
) -> Result<StandardTorusBounds> {
    TorusSpec::StandardTorus { minor, major }.validate()?;
    let j01 = bessel_zero(BesselZeroIndex::new(0, 1)?);
    let sym_upper =
        (j01 * j01 / (minor * minor) + 0.75 / ((major + minor) * (major + minor))).sqrt();
    let antisym_lower =
        ((major - minor) / (major + minor)).sqrt() * j_star.lower() / minor;
    Ok(StandardTorusBounds { sym_upper, antisym_lower })
}

/// Smallest minor radius at which the standard-torus bounds stop separating
/// (sym_upper >= antisym_lower), located by bisection.
pub fn crossover_minor_radius(major: f64, j_star: &DiskSpectralBound) -> Result<f64> {
    let gap = |a: f64| -> Result<f64> {
        let b = standard_torus_bounds(a, major, j_star)?;
        Ok(b.sym_upper - b.antisym_lower)
    };
    let mut lo = 1e-6 * major;
    let mut hi = major * (1.0 - 1e-9);
    if gap(lo)? >= 0.0 {
        return Err(Error::NoSignChange {
            what: "bound crossover in minor radius".into(),
            lo,
            hi,
            step: 0.0,
        });
    }
    while hi - lo > 1e-12 * major {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bounds for the annular-cylinder family built from a resonant annulus:
/// sym_lower below every symmetric eigenvalue, antisym_upper(n) above the
/// first antisymmetric one on family member n.
#[derive(Debug, Clone)]
pub struct AnnularFamilyBounds {
    /// sqrt(pi^2/(b-a)^2 + 3/(4 b^2)) <= lambda_1^s.
    pub sym_lower: f64,
    /// Least n with antisym_upper(n) <= sym_lower.
    pub n_threshold: u64,
    pub resonance: ResonantAnnulus,
}

impl AnnularFamilyBounds {
    /// (pi^2 b^2 / (n L)^2 + 1) pi/(b-a), decreasing in n with limit
    /// pi/(b-a) < sym_lower.
    pub fn antisym_upper(&self, n: u64) -> f64 {
        let b = self.resonance.outer;
        let len = n as f64 * self.resonance.period;
        (std::f64::consts::PI.powi(2) * b * b / (len * len) + 1.0) * self.resonance.lambda
    }
}

pub fn annular_family_bounds(resonance: &ResonantAnnulus) -> Result<AnnularFamilyBounds> {
    let gap = resonance.outer - resonance.inner;
    let sym_lower =
        (std::f64::consts::PI.powi(2) / (gap * gap) + 0.75 / (resonance.outer * resonance.outer))
            .sqrt();
    let bounds = AnnularFamilyBounds {
        sym_lower,
        n_threshold: 0,
        resonance: resonance.clone(),
    };
    // antisym_upper(n) decreases to pi/(b-a) < sym_lower, so the threshold
    // is finite; walk up from 1
    let mut n = 1u64;
    loop {
        if bounds.antisym_upper(n) <= sym_lower {
            break;
        }
        n += 1;
        if n > 1_000_000_000 {
            return Err(Error::InvalidGeometry(
                "no finite threshold found; resonance parameters inconsistent".into(),
            ));
        }
    }
    Ok(AnnularFamilyBounds { n_threshold: n, ..bounds })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Symmetric,
    Asymmetric,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Symmetric => write!(f, "Symmetric"),
            Verdict::Asymmetric => write!(f, "Asymmetric"),
            Verdict::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// Provenance of the scan-based disk bound consumed by a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct JStarProvenance {
    pub estimate: f64,
    pub error_bar: f64,
    pub conservative_lower: f64,
    pub alpha_max: f64,
    pub step: f64,
    pub curve_infimum: f64,
    pub j11: f64,
}

impl JStarProvenance {
    fn from_bound(b: &DiskSpectralBound) -> Self {
        JStarProvenance {
            estimate: b.value,
            error_bar: b.error_bar,
            conservative_lower: b.lower(),
            alpha_max: b.curve.alpha_max,
            step: b.curve.step,
            curve_infimum: b.curve.infimum,
            j11: b.j11,
        }
    }
}

/// Geometry echo carried inside the verdict record.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum VerdictInputs {
    StandardTorus { minor: f64, major: f64 },
    AnnularFamily { inner: f64, outer: f64, period: f64, n: u64, ratio: f64, g_residual: f64 },
}

/// The decision record: which branch owns the first eigenvalue, with the
/// two bounds that separate (or fail to).
#[derive(Debug, Clone, Serialize)]
pub struct SymmetryVerdict {
    pub verdict: Verdict,
    pub sym_bound: f64,
    pub antisym_bound: f64,
    pub margin: f64,
    pub inputs: VerdictInputs,
    pub j_star: Option<JStarProvenance>,
}

/// Decider configuration. `margin_floor` is the separation below which the
/// verdict degrades to Inconclusive; `g_residual_max` is the largest family
/// determinant residual accepted before annular parameters are rejected.
#[derive(Debug, Clone)]
pub struct DeciderConfig {
    pub margin_floor: f64,
    pub g_residual_max: f64,
}

impl Default for DeciderConfig {
    fn default() -> Self {
        DeciderConfig { margin_floor: 1e-6, g_residual_max: 1e-6 }
    }
}

/// Decide symmetry of the first Amperian eigenfield from one-sided bounds.
///
/// Standard torus: Symmetric when the symmetric upper bound clears the
/// antisymmetric lower bound; never Asymmetric (no antisymmetric upper
/// bound exists for this family). Annular family: Asymmetric when the
/// symmetric lower bound clears the antisymmetric upper bound; never
/// Symmetric. Separations below the margin floor give Inconclusive.
pub fn decide(
    spec: &TorusSpec,
    config: &DeciderConfig,
    j_star: &DiskSpectralBound,
) -> Result<SymmetryVerdict> {
    spec.validate()?;
    match *spec {
        TorusSpec::StandardTorus { minor, major } => {
            let b = standard_torus_bounds(minor, major, j_star)?;
            let margin = (b.sym_upper - b.antisym_lower).abs();
            let verdict = if b.sym_upper < b.antisym_lower && margin > config.margin_floor {
                Verdict::Symmetric
            } else {
                Verdict::Inconclusive
            };
            Ok(SymmetryVerdict {
                verdict,
                sym_bound: b.sym_upper,
                antisym_bound: b.antisym_lower,
                margin,
                inputs: VerdictInputs::StandardTorus { minor, major },
                j_star: Some(JStarProvenance::from_bound(j_star)),
            })
        }
        TorusSpec::AnnularFamily { inner, outer, period, n } => {
            // the family is certified by the resonance condition: the ratio
            // realized by the period must put (inner, outer) on a root of
            // the family determinant
            let ratio = 2.0 * (outer - inner) / period;
            if !(ratio > 0.0 && ratio < 1.0) {
                return Err(Error::InvalidGeometry(format!(
                    "period {period} incompatible with a resonant ratio in (0,1): got {ratio}"
                )));
            }
            let g_residual = resonant_annulus_det(ratio, outer, inner)?;
            if g_residual.abs() > config.g_residual_max {
                return Err(Error::ResonanceResidual {
                    residual: g_residual.abs(),
                    max: config.g_residual_max,
                });
            }
            let resonance = ResonantAnnulus {
                ratio,
                inner,
                outer,
                period,
                lambda: std::f64::consts::PI / (outer - inner),
                g_residual,
                alternatives: Vec::new(),
            };
            let bounds = annular_family_bounds(&resonance)?;
            let anti = bounds.antisym_upper(n);
            let margin = (bounds.sym_lower - anti).abs();
            let verdict = if bounds.sym_lower > anti && margin > config.margin_floor {
                Verdict::Asymmetric
            } else {
                Verdict::Inconclusive
            };
            Ok(SymmetryVerdict {
                verdict,
                sym_bound: bounds.sym_lower,
                antisym_bound: anti,
                margin,
                inputs: VerdictInputs::AnnularFamily {
                    inner,
                    outer,
                    period,
                    n,
                    ratio,
                    g_residual,
                },
                j_star: None,
            })
        }
    }
}
