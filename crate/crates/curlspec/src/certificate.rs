//! Exact-rational certificate for the negativity of
//! (1 + r) J_0(s) + (1 - r) J_2(s) with r = sqrt(1 - s^2/pi^2).
//!
//! The chain never leaves the rationals: the partial sums of the two Bessel
//! series are exact fractions, the tail is controlled by the exact bound
//! 18 (3/4)^{M+1}/(M+1)!, and the irrational coefficient r is handled by
//! checking r >= 2/5 through the substitution pi < 314/100, which turns the
//! hypothesis into the positivity of the exact rational
//! 1 - s^2 (100/314)^2 - (2/5)^2. When every hypothesis holds, the bound
//!   (7/5) S_J0 + (3/5) S_J2 + 2 * 18 (3/4)^{M+1}/(M+1)! < 0
//! certifies the negativity.

use crate::bessel::{self, RationalSeriesRequest};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

/// One named exact rational inside the certificate JSON.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct NamedRational {
    pub name: String,
    pub num: String,
    pub den: String,
}

impl NamedRational {
    fn new(name: &str, value: &BigRational) -> Self {
        NamedRational {
            name: name.to_string(),
            num: value.numer().to_string(),
            den: value.denom().to_string(),
        }
    }
}

/// Machine-checkable negativity certificate.
///
/// `verdict` is true exactly when all three hypotheses hold and the combined
/// bound is negative; a false verdict is a valid result, not an error.
#[derive(Debug, Clone)]
pub struct NegativityCertificate {
    pub s: BigRational,
    pub truncation: u32,
    /// 1 - s^2 (100/314)^2 - (2/5)^2; positivity certifies r >= 2/5.
    pub r_lower_check: BigRational,
    /// Exact partial sum of the J_0 series at s.
    pub sum_j0: BigRational,
    /// Exact partial sum of the J_2 series at s.
    pub sum_j2: BigRational,
    /// Exact tail bound for one series, 18 (3/4)^{M+1}/(M+1)!.
    pub remainder: BigRational,
    /// (7/5) sum_j0 + (3/5) sum_j2 + 2 * remainder.
    pub combined: BigRational,
    pub verdict: bool,
}

impl NegativityCertificate {
    pub fn hypotheses_hold(&self) -> bool {
        self.r_lower_check.is_positive()
            && self.sum_j0.is_negative()
            && self.sum_j2.is_positive()
    }

    /// Serializable record following the JSON schema
    /// {s, M, hypotheses, values: [{name, num, den}], verdict}.
    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            s: NamedRational::new("s", &self.s),
            m: self.truncation,
            hypotheses: vec![
                Hypothesis {
                    name: "r_lower_check_positive".into(),
                    holds: self.r_lower_check.is_positive(),
                },
                Hypothesis {
                    name: "sum_j0_negative".into(),
                    holds: self.sum_j0.is_negative(),
                },
                Hypothesis {
                    name: "sum_j2_positive".into(),
                    holds: self.sum_j2.is_positive(),
                },
                Hypothesis {
                    name: "combined_negative".into(),
                    holds: self.combined.is_negative(),
                },
            ],
            values: vec![
                NamedRational::new("r_lower_check", &self.r_lower_check),
                NamedRational::new("sum_j0", &self.sum_j0),
                NamedRational::new("sum_j2", &self.sum_j2),
                NamedRational::new("remainder", &self.remainder),
                NamedRational::new("combined", &self.combined),
            ],
            verdict: self.verdict,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

/// JSON form of the certificate, with decimal-string numerators and
/// denominators so golden comparisons are bit-exact.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateRecord {
    pub s: NamedRational,
    #[serde(rename = "M")]
    pub m: u32,
    pub hypotheses: Vec<Hypothesis>,
    pub values: Vec<NamedRational>,
    pub verdict: bool,
}

impl CertificateRecord {
    pub fn value(&self, name: &str) -> Option<&NamedRational> {
        self.values.iter().find(|v| v.name == name)
    }
}

/// Run the certificate at arbitrary s in (0, 3] and truncation M >= 1.
///
/// The r >= 2/5 hypothesis is checked, never assumed: since pi > 314/100,
/// r^2 - (2/5)^2 = 1 - s^2/pi^2 - 4/25 > 1 - s^2 (100/314)^2 - 4/25, so
/// positivity of the exact rational on the right certifies r > 2/5.
pub fn certify_negativity(s: &BigRational, truncation: u32) -> Result<NegativityCertificate> {
    if !s.is_positive() || s > &BigRational::from_integer(BigInt::from(3)) {
        return Err(Error::ArgumentOutOfCertifiedRange(s.to_string()));
    }
    if truncation < 1 {
        return Err(Error::TruncationTooSmall(truncation as i64));
    }

    // the tail bound rests on m! >= (2/9) 3^m for m >= 2; re-verify the
    // range the certificate can ever touch
    debug_assert!((2..=200).all(crate::bessel::factorial_dominates_geometric));

    let ratio = s * BigRational::new(BigInt::from(100), BigInt::from(314));
    let r_lower_check = BigRational::from_integer(BigInt::from(1))
        - (&ratio * &ratio)
        - BigRational::new(BigInt::from(4), BigInt::from(25));

    let sum_j0 = bessel::taylor_partial_sum(&RationalSeriesRequest::new(0, truncation, s.clone())?);
    let sum_j2 = bessel::taylor_partial_sum(&RationalSeriesRequest::new(2, truncation, s.clone())?);
    let remainder = bessel::taylor_remainder_bound(truncation)?;

    let combined = BigRational::new(BigInt::from(7), BigInt::from(5)) * &sum_j0
        + BigRational::new(BigInt::from(3), BigInt::from(5)) * &sum_j2
        + BigRational::from_integer(BigInt::from(2)) * &remainder;

    let verdict = r_lower_check.is_positive()
        && sum_j0.is_negative()
        && sum_j2.is_positive()
        && combined.is_negative();

    Ok(NegativityCertificate {
        s: s.clone(),
        truncation,
        r_lower_check,
        sum_j0,
        sum_j2,
        remainder,
        combined,
        verdict,
    })
}

/// The canonical certificate at s = 287/100, M = 5.
pub fn reference_certificate() -> NegativityCertificate {
    let s = BigRational::new(BigInt::from(287), BigInt::from(100));
    certify_negativity(&s, 5).expect("reference parameters are in range")
}

/// Golden values the canonical run must reproduce bit-for-bit.
pub fn golden_reference() -> CertificateRecord {
    fn named(name: &str, num: &str, den: &str) -> NamedRational {
        NamedRational {
            name: name.into(),
            num: num.into(),
            den: den.into(),
        }
    }
    CertificateRecord {
        s: named("s", "287", "100"),
        m: 5,
        hypotheses: vec![
            Hypothesis { name: "r_lower_check_positive".into(), holds: true },
            Hypothesis { name: "sum_j0_negative".into(), holds: true },
            Hypothesis { name: "sum_j2_positive".into(), holds: true },
            Hypothesis { name: "combined_negative".into(), holds: true },
        ],
        values: vec![
            named("r_lower_check", "11291", "2464900"),
            named(
                "sum_j0",
                "-314127831054337257779422849",
                "1474560000000000000000000000",
            ),
            named(
                "sum_j2",
                "170519275716150776952821694135817",
                "353894400000000000000000000000000",
            ),
            named("remainder", "729", "163840"),
            named(
                "combined",
                "-143509674278087403655101304183",
                "589824000000000000000000000000000",
            ),
        ],
        verdict: true,
    }
}

/// Field-by-field comparison of a computed record against a golden record.
/// Returns the names of mismatching fields (empty means exact match).
/// When the truncations differ, only truncation-independent fields compare.
pub fn diff_records(computed: &CertificateRecord, golden: &CertificateRecord) -> Vec<String> {
    let mut mismatches = Vec::new();
    if computed.s != golden.s {
        mismatches.push("s".to_string());
    }
    let same_truncation = computed.m == golden.m;
    for gv in &golden.values {
        let truncation_dependent = gv.name != "r_lower_check";
        if truncation_dependent && !same_truncation {
            continue;
        }
        match computed.value(&gv.name) {
            Some(cv) if cv == gv => {}
            _ => mismatches.push(format!("values.{}", gv.name)),
        }
    }
    if computed.verdict != golden.verdict {
        mismatches.push("verdict".to_string());
    }
    mismatches
}

/// Convert an exact rational to the nearest f64 (for cross-checks only).
pub fn rational_to_f64(value: &BigRational) -> f64 {
    let num: f64 = value.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = value.denom().to_string().parse().unwrap_or(f64::NAN);
    if num.is_finite() && den.is_finite() && den != 0.0 {
        return num / den;
    }
    // fall back to a scaled division for operands beyond f64 range
    let scale = (value.denom().to_string().len() as i32 - 15).max(0) as usize;
    let ten = BigInt::from(10).pow(scale as u32);
    let n2: f64 = (value.numer() / &ten).to_string().parse().unwrap_or(f64::NAN);
    let d2: f64 = (value.denom() / &ten).to_string().parse().unwrap_or(f64::NAN);
    n2 / d2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_certificate_matches_golden_bit_for_bit() {
        let cert = reference_certificate();
        assert!(cert.verdict);
        let record = cert.to_record();
        let mismatches = diff_records(&record, &golden_reference());
        assert!(mismatches.is_empty(), "mismatching fields: {mismatches:?}");
    }

    #[test]
    fn canonical_values_in_lowest_terms() {
        use num_integer::Integer;
        let cert = reference_certificate();
        for v in [&cert.r_lower_check, &cert.sum_j0, &cert.sum_j2, &cert.combined] {
            let g = v.numer().gcd(v.denom());
            assert!(g.is_one(), "fraction not reduced: {v}");
            assert!(v.denom().is_positive());
        }
    }

    #[test]
    fn small_s_fails_second_hypothesis() {
        // J_0 near 1 keeps the partial sum positive
        let cert = certify_negativity(&rat(1, 10), 5).unwrap();
        assert!(!cert.verdict);
        assert!(cert.sum_j0.is_positive());
    }

    #[test]
    fn deeper_truncation_passes_with_smaller_remainder() {
        let s = rat(287, 100);
        let at5 = certify_negativity(&s, 5).unwrap();
        let at8 = certify_negativity(&s, 8).unwrap();
        assert!(at8.verdict);
        assert!(at8.remainder < at5.remainder);
    }

    #[test]
    fn certificates_persist_from_m5_to_m10() {
        let s = rat(287, 100);
        for m in 5..=10 {
            let cert = certify_negativity(&s, m).unwrap();
            assert!(cert.verdict, "certificate fails at M={m}");
            assert!(cert.hypotheses_hold());
        }
    }

    #[test]
    fn domain_validation() {
        assert!(certify_negativity(&rat(0, 1), 5).is_err());
        assert!(certify_negativity(&rat(-1, 2), 5).is_err());
        assert!(certify_negativity(&rat(31, 10), 5).is_err());
        assert!(certify_negativity(&rat(3, 1), 5).is_ok());
        assert!(certify_negativity(&rat(287, 100), 0).is_err());
    }

    #[test]
    fn verdict_implies_float_negativity() {
        // soundness cross-check with float pi
        let cert = reference_certificate();
        assert!(cert.verdict);
        let s = rational_to_f64(&cert.s);
        let r = (1.0 - s * s / (std::f64::consts::PI * std::f64::consts::PI)).sqrt();
        let value = (1.0 + r) * bessel::bessel_j(0, s).unwrap()
            + (1.0 - r) * bessel::bessel_j(2, s).unwrap();
        assert!(value < -1e-9, "float evaluation not negative: {value}");
        assert!(r >= 0.4, "r >= 2/5 hypothesis should hold in floats too");
    }

    #[test]
    fn record_round_trips_through_json() {
        let record = reference_certificate().to_record();
        let json = serde_json::to_string_pretty(&record).unwrap();
        let back: CertificateRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(record, back);
    }

    #[test]
    fn diff_reports_tampered_field() {
        let record = reference_certificate().to_record();
        let mut golden = golden_reference();
        golden.values[1].num = "-314127831054337257779422848".into();
        let mismatches = diff_records(&record, &golden);
        assert_eq!(mismatches, vec!["values.sum_j0".to_string()]);
    }
}
