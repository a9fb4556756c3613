//! Antisymmetric modes on a disk tube: dispersion roots per (m, n_ell)
//! cell, the scaled zero curves, and the uniform lower bound that keeps
//! every root away from j_{0,1}.
//!
//! ```text
//! cargo run --release --example disk_dispersion_modes
//! ```

use curlspec::dispersion::{
    disk_dispersion, disk_mode_scan, disk_spectral_bound, scaled_disk_dispersion, ModeIndex,
    ScaledPoint, ScanCaps,
};

fn main() {
    // the dispersion residual changes sign across each admissible mode
    let mode = ModeIndex::new(1, 1, 2.0 * std::f64::consts::PI).unwrap();
    println!("disk residual (a = 1, n_ell = 1, m = 1):");
    for lambda in [1.5, 2.5, 3.0, 3.2, 3.5] {
        let r = disk_dispersion(1.0, &mode, lambda).unwrap();
        println!("  lambda = {lambda:.2}: {r:+.6e}");
    }

    // all roots within the caps, sorted
    let caps = ScanCaps::new(4, 4, 8.0, 0.005).unwrap();
    let roots = disk_mode_scan(1.0, 2.0 * std::f64::consts::PI, &caps).unwrap();
    println!("\nfirst roots on the unit-disk tube with period 2 pi:");
    for root in roots.iter().take(10) {
        println!("  lambda = {:.9}  (m = {:+}, n_ell = {:+})", root.lambda, root.m, root.n_ell);
    }

    // the scaled picture: F_m(alpha, kappa) with alpha = a ell, kappa = a lambda
    println!("\nscaled function F_1 along kappa at alpha = 1.2:");
    for kappa in [2.8, 3.0, 3.1, 3.2, 3.4] {
        let f = scaled_disk_dispersion(1, &ScaledPoint::new(1.2, kappa).unwrap()).unwrap();
        println!("  kappa = {kappa:.2}: {f:+.6}");
    }

    let bound = disk_spectral_bound(10.0, 0.005).unwrap();
    println!(
        "\nuniform bound: min over the F_1 zero set is {:.6} +/- {:.3} at alpha = {:.3};",
        bound.curve.infimum, bound.error_bar, bound.curve.alpha_at_infimum
    );
    println!(
        "j* = min(curve, j_11) = {:.6}, conservative lower bound {:.6} (> j_01 = 2.404826)",
        bound.value,
        bound.lower()
    );
    let smallest = roots.first().map(|r| r.lambda).unwrap_or(f64::NAN);
    println!("smallest scanned root {smallest:.6} respects the bound: {}", smallest >= bound.lower());
}
