#![allow(clippy::excessive_precision)]

//! Acceptance suite: one test per shipped criterion, each printing a
//! [PASS]/[FAIL] line (run with `cargo test --test acceptance -- --nocapture`
//! to see them). Tolerances and runtime budgets are pinned in the asserts.

use curlspec::bessel::{self, bessel_zero, BesselZeroIndex, RationalSeriesRequest};
use curlspec::dispersion::{
    annulus_determinant, annulus_determinant_reduced, disk_mode_scan, disk_spectral_bound,
    find_resonant_annulus, scaled_disk_dispersion, AnnulusGeometry, ModeIndex, ScaledPoint,
    ScanCaps,
};
use curlspec::grad_shafranov::{
    grad_shafranov_solve, laplacian_dirichlet_lambda1, richardson_study,
    symmetric_amperian_lambda1, symmetric_fluxfree_solve, CrossSection,
};
use curlspec::symmetry::{annular_family_bounds, decide, DeciderConfig, TorusSpec, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const J01: f64 = 2.404825557695773;
const J01_SQ: f64 = 5.7831859629467846;
const J11: f64 = 3.831705970207512;

fn criterion(
    n: u32,
    name: &str,
    limit_s: f64,
    body: impl FnOnce() -> Result<String, String>,
) {
    let start = Instant::now();
    let outcome = body();
    let dt = start.elapsed().as_secs_f64();
    let outcome = outcome.and_then(|detail| {
        if dt < limit_s {
            Ok(detail)
        } else {
            Err(format!("runtime {dt:.2}s exceeded the {limit_s}s budget"))
        }
    });
    match outcome {
        Ok(detail) => println!("[PASS] criterion {n} ({name}): {detail} [{dt:.2}s]"),
        Err(msg) => {
            println!("[FAIL] criterion {n} ({name}): {msg} [{dt:.2}s]");
            panic!("criterion {n} failed: {msg}");
        }
    }
}

fn check(cond: bool, msg: String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg)
    }
}

#[test]
fn criterion_01_exact_rational_certificate() {
    criterion(1, "exact-rational certificate", 1.0, || {
        let exe = env!("CARGO_BIN_EXE_curlspec");
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let status = std::process::Command::new(exe)
            .args(["--output-dir", dir.path().to_str().unwrap(), "verify-appendix-d"])
            .output()
            .map_err(|e| e.to_string())?;
        check(status.status.code() == Some(0), format!("exit code {:?}", status.status.code()))?;

        let text = std::fs::read_to_string(dir.path().join("certificate.json"))
            .map_err(|e| e.to_string())?;
        let json: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        check(json["golden_match"] == true, "golden mismatch reported".into())?;
        check(json["certificate"]["verdict"] == true, "verdict not true".into())?;

        let golden: [(&str, &str, &str); 4] = [
            ("r_lower_check", "11291", "2464900"),
            (
                "sum_j0",
                "-314127831054337257779422849",
                "1474560000000000000000000000",
            ),
            (
                "sum_j2",
                "170519275716150776952821694135817",
                "353894400000000000000000000000000",
            ),
            (
                "combined",
                "-143509674278087403655101304183",
                "589824000000000000000000000000000",
            ),
        ];
        let values = json["certificate"]["values"].as_array().ok_or("missing values")?;
        for (name, num, den) in golden {
            let v = values
                .iter()
                .find(|v| v["name"] == name)
                .ok_or(format!("missing value {name}"))?;
            check(
                v["num"] == num && v["den"] == den,
                format!("{name} != {num}/{den}: got {}/{}", v["num"], v["den"]),
            )?;
        }
        Ok("all four rationals bit-exact, verdict true".into())
    });
}

#[test]
fn criterion_02_laplacian_baseline() {
    criterion(2, "unit-disk Laplacian baseline", 30.0, || {
        let disk = CrossSection::disk(2.0, 1.0).map_err(|e| e.to_string())?;
        let study = richardson_study(1.0 / 32.0, |h| {
            Ok(laplacian_dirichlet_lambda1(&disk, h)?.value)
        })
        .map_err(|e| e.to_string())?;
        let fine = study.values[2]; // grid_h = 1/128
        let rel = (fine - J01_SQ).abs() / J01_SQ;
        check(rel < 5e-3, format!("relative error {rel:.2e} >= 0.5%"))?;
        check(
            study.order > 1.5 && study.order < 2.5,
            format!("Richardson order {} outside [1.5, 2.5]", study.order),
        )?;
        Ok(format!(
            "lambda1 = {fine:.6} (rel err {rel:.1e}), order {:.2}",
            study.order
        ))
    });
}

#[test]
fn criterion_03_grad_shafranov_brackets() {
    let sections = [
        (
            "disk a=0.1 R=1",
            CrossSection::disk(1.0, 0.1).unwrap(),
            0.1 / 8.0,
        ),
        (
            "rectangle [1,2]x[-1,1]",
            CrossSection::rectangle(1.0, 2.0, -1.0, 1.0).unwrap(),
            1.0 / 8.0,
        ),
    ];
    criterion(3, "Grad-Shafranov brackets", 120.0, || {
        let mut details = Vec::new();
        for (label, section, h_coarse) in sections {
            let t0 = Instant::now();
            let study = richardson_study(h_coarse, |h| {
                Ok(grad_shafranov_solve(&section, h)?.estimate.value)
            })
            .map_err(|e| e.to_string())?;
            let sol = grad_shafranov_solve(&section, h_coarse / 4.0).map_err(|e| e.to_string())?;
            let est = &sol.estimate;
            let slack = 3.0 * study.error_estimate;
            check(
                est.bracket_low - slack <= est.value && est.value <= est.bracket_high + slack,
                format!(
                    "{label}: value {} outside [{}, {}] +/- {slack:.2e}",
                    est.value, est.bracket_low, est.bracket_high
                ),
            )?;
            let dt = t0.elapsed().as_secs_f64();
            check(dt < 60.0, format!("{label}: section runtime {dt:.1}s >= 60s"))?;
            details.push(format!(
                "{label}: {:.4} in [{:.4}, {:.4}]",
                est.value, est.bracket_low, est.bracket_high
            ));
        }
        Ok(details.join("; "))
    });
}

#[test]
fn criterion_04_fluxfree_ordering() {
    criterion(4, "flux-free exceeds Amperian", 120.0, || {
        let sections = [
            ("disk a=0.1 R=1", CrossSection::disk(1.0, 0.1).unwrap(), 0.1 / 24.0),
            (
                "rectangle [1,2]x[-1,1]",
                CrossSection::rectangle(1.0, 2.0, -1.0, 1.0).unwrap(),
                1.0 / 24.0,
            ),
        ];
        let mut details = Vec::new();
        for (label, section, h) in sections {
            let ff = symmetric_fluxfree_solve(&section, h).map_err(|e| e.to_string())?;
            let sa = symmetric_amperian_lambda1(&section, h).map_err(|e| e.to_string())?;
            check(
                ff.lambda > sa,
                format!("{label}: lambda_sFF {} <= lambda_sA {sa}", ff.lambda),
            )?;
            check(
                ff.weighted_mean.abs() < 1e-8,
                format!("{label}: weighted mean {:.2e} >= 1e-8", ff.weighted_mean),
            )?;
            details.push(format!("{label}: {:.4} > {:.4}", ff.lambda, sa));
        }
        Ok(details.join("; "))
    });
}

#[test]
fn criterion_05_dispersion_function_oracles() {
    criterion(5, "scaled dispersion oracles", 60.0, || {
        // (a) F_0 zeros on the shifted curve, located by bisection
        for alpha in [0.5, 1.0, 2.0] {
            let predicted = (J11 * J11 + alpha * alpha).sqrt();
            let eval = |kappa: f64| {
                scaled_disk_dispersion(0, &ScaledPoint::new(alpha, kappa).unwrap()).unwrap()
            };
            let (mut lo, mut hi) = (predicted - 0.01, predicted + 0.01);
            check(
                eval(lo) * eval(hi) < 0.0,
                format!("no bracket around predicted F_0 zero at alpha={alpha}"),
            )?;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if eval(lo) * eval(mid) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let zero = 0.5 * (lo + hi);
            check(
                (zero - predicted).abs() < 1e-9,
                format!("F_0 zero at alpha={alpha}: {zero} vs {predicted}"),
            )?;
        }

        // (b) F_m(0, kappa) = (2m/kappa) J_m(kappa) on a grid
        for m in 1..=8i64 {
            for k in 1..=40 {
                let kappa = 0.3 * k as f64;
                let f = scaled_disk_dispersion(m, &ScaledPoint::new(0.0, kappa).unwrap())
                    .map_err(|e| e.to_string())?;
                let want = 2.0 * m as f64 / kappa * bessel::bessel_j(m, kappa).unwrap();
                check(
                    (f - want).abs() < 1e-10,
                    format!("F_{m}(0,{kappa}) = {f} vs {want}"),
                )?;
            }
        }

        // (c) both symmetry identities on 1000 seeded random points
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
        for i in 0..1000 {
            let m = rng.gen_range(-8i64..=8);
            let alpha: f64 = rng.gen_range(-6.0..6.0);
            let gap: f64 = rng.gen_range(0.05..6.0);
            let kappa = (alpha.abs() + gap) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let p = ScaledPoint::new(alpha, kappa).unwrap();
            let f_p = scaled_disk_dispersion(m, &p).unwrap();

            let q = ScaledPoint::new(-alpha, -kappa).unwrap();
            let f_q = scaled_disk_dispersion(m, &q).unwrap();
            check(
                (f_p - f_q).abs() <= 1e-12 * f_p.abs().max(1.0),
                format!("point reflection fails at sample {i}: m={m} ({alpha},{kappa})"),
            )?;

            let mirrored = ScaledPoint::new(-alpha, kappa).unwrap();
            let f_neg = scaled_disk_dispersion(-m, &p).unwrap();
            let f_mir = scaled_disk_dispersion(m, &mirrored).unwrap();
            let sign = if (m + 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let want = sign * (kappa + alpha) / (kappa - alpha) * f_mir;
            check(
                (f_neg - want).abs() <= 1e-12 * f_neg.abs().max(1.0),
                format!("order reflection fails at sample {i}: m={m} ({alpha},{kappa})"),
            )?;
        }
        Ok("zeros, axis reduction, and 2x1000 symmetry identities verified".into())
    });
}

#[test]
fn criterion_06_uniform_disk_bound() {
    criterion(6, "uniform disk bound and mode scan", 300.0, || {
        let bound = disk_spectral_bound(10.0, 0.005).map_err(|e| e.to_string())?;
        let conservative = bound.lower();
        check(
            conservative > J01 + 0.1,
            format!("conservative bound {conservative} <= j01 + 0.1"),
        )?;

        let caps = ScanCaps::new(8, 8, 12.0, 0.005).map_err(|e| e.to_string())?;
        let roots =
            disk_mode_scan(1.0, 2.0 * std::f64::consts::PI, &caps).map_err(|e| e.to_string())?;
        check(!roots.is_empty(), "mode scan found no roots at all".into())?;
        let smallest = roots[0].lambda;
        check(
            smallest >= conservative,
            format!("root {smallest} below the bound {conservative}"),
        )?;
        Ok(format!(
            "bound {:.5} +/- {:.3}, smallest scanned root {smallest:.5}",
            bound.value, bound.error_bar
        ))
    });
}

#[test]
fn criterion_07_thin_torus_symmetry() {
    criterion(7, "thin standard tori are symmetric", 60.0, || {
        let j_star = disk_spectral_bound(10.0, 0.005).map_err(|e| e.to_string())?;
        let config = DeciderConfig::default();
        let mut a = 0.01;
        while a <= 0.05 + 1e-12 {
            let v = decide(
                &TorusSpec::StandardTorus { minor: a, major: 1.0 },
                &config,
                &j_star,
            )
            .map_err(|e| e.to_string())?;
            check(
                v.verdict == Verdict::Symmetric,
                format!("a = {a}: verdict {:?}", v.verdict),
            )?;
            a += 0.01;
        }

        // limit displays at a = 1e-4
        let a = 1e-4;
        let b = curlspec::symmetry::standard_torus_bounds(a, 1.0, &j_star)
            .map_err(|e| e.to_string())?;
        let sym_limit = (a * b.sym_upper - J01).abs();
        check(sym_limit < 1e-3, format!("a*sym_upper off by {sym_limit:.2e}"))?;
        let anti_limit = (a * b.antisym_lower - j_star.lower()).abs();
        check(anti_limit < 1e-3, format!("a*antisym_lower off by {anti_limit:.2e}"))?;
        Ok(format!(
            "Symmetric through a = 0.05; limits at a=1e-4 off by {sym_limit:.1e} / {anti_limit:.1e}"
        ))
    });
}

#[test]
fn criterion_08_resonant_family_asymmetry() {
    criterion(8, "resonant annular family goes asymmetric", 120.0, || {
        let res = find_resonant_annulus(1.0).map_err(|e| e.to_string())?;
        check(
            (res.ratio - 0.4067).abs() < 1e-4,
            format!("ratio {} far from 0.4067", res.ratio),
        )?;
        check(
            res.g_residual.abs() < 1e-8,
            format!("family determinant residual {:.2e} >= 1e-8", res.g_residual),
        )?;

        let geom = AnnulusGeometry::new(res.inner, res.outer).map_err(|e| e.to_string())?;
        let mode = ModeIndex::new(1, 1, res.period).map_err(|e| e.to_string())?;
        let det = annulus_determinant(&geom, &mode, res.lambda).map_err(|e| e.to_string())?;
        check(det.abs() < 1e-6, format!("determinant at lambda = {:.2e}", det.abs()))?;

        let bounds = annular_family_bounds(&res).map_err(|e| e.to_string())?;
        let n0 = bounds.n_threshold;
        check((1..1_000_000).contains(&n0), format!("threshold {n0} not usable"))?;
        let j_star = disk_spectral_bound(10.0, 0.005).map_err(|e| e.to_string())?;
        for n in n0..n0 + 6 {
            let v = decide(
                &TorusSpec::AnnularFamily {
                    inner: res.inner,
                    outer: res.outer,
                    period: res.period,
                    n,
                },
                &DeciderConfig::default(),
                &j_star,
            )
            .map_err(|e| e.to_string())?;
            check(
                v.verdict == Verdict::Asymmetric,
                format!("n = {n}: verdict {:?}", v.verdict),
            )?;
        }
        Ok(format!(
            "a = {:.8}, |g| = {:.1e}, |det| = {:.1e}, N = {n0}, Asymmetric for n >= N",
            res.inner,
            res.g_residual.abs(),
            det.abs()
        ))
    });
}

#[test]
fn criterion_09_determinant_equivalence() {
    criterion(9, "raw vs reduced annulus determinants", 120.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
        for i in 0..1000 {
            let inner: f64 = rng.gen_range(0.2..2.0);
            let width: f64 = rng.gen_range(0.1..2.0);
            let geom = AnnulusGeometry::new(inner, inner + width).unwrap();
            let m = rng.gen_range(-8i64..=8);
            let n = rng.gen_range(1i64..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let period: f64 = rng.gen_range(1.0..8.0);
            let mode = ModeIndex::new(n, m, period).unwrap();
            let lambda = mode.ell().abs() + rng.gen_range(0.1..8.0);
            let mu = (lambda * lambda - mode.ell() * mode.ell()).sqrt();

            let raw = annulus_determinant(&geom, &mode, lambda).map_err(|e| e.to_string())?;
            let red =
                annulus_determinant_reduced(&geom, &mode, lambda).map_err(|e| e.to_string())?;
            let want = 0.25 * mu * mu * red;
            let scale = raw.abs().max(want.abs()).max(1e-12);
            check(
                (raw - want).abs() < 1e-9 * scale,
                format!(
                    "sample {i}: raw {raw:e} vs (mu/2)^2 reduced {want:e} (rel {:.2e})",
                    (raw - want).abs() / scale
                ),
            )?;
        }
        Ok("1000 random admissible points agree to 1e-9 relative".into())
    });
}

#[test]
fn criterion_10_series_tail_bound() {
    criterion(10, "series tail bound at M = 5", 60.0, || {
        let bound = 729.0 / 163840.0;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
        for i in 0..200 {
            let num = rng.gen_range(-3000i64..=3000);
            let x = num_rational::BigRational::new(num.into(), 1000.into());
            let req = RationalSeriesRequest::new(0, 5, x).unwrap();
            let partial = bessel::taylor_partial_sum(&req);
            let p: f64 = partial.numer().to_string().parse::<f64>().unwrap()
                / partial.denom().to_string().parse::<f64>().unwrap();
            let j = bessel::bessel_j(0, num as f64 / 1000.0).unwrap();
            check(
                (j - p).abs() <= bound,
                format!("sample {i} (x = {num}/1000): |J - S| = {:.3e} > {bound:.3e}", (j - p).abs()),
            )?;
        }
        Ok("200 random rational arguments stay within 729/163840".into())
    });
}

#[test]
fn bessel_zero_sanity_anchor() {
    // anchors shared by several criteria
    assert!((bessel_zero(BesselZeroIndex::new(0, 1).unwrap()) - J01).abs() < 1e-10);
    assert!((bessel_zero(BesselZeroIndex::new(1, 1).unwrap()) - J11).abs() < 1e-10);
    assert!((J01 * J01 - J01_SQ).abs() < 1e-12);
}
