//! Verdicts across geometry: sweep the minor radius of a standard torus,
//! find the radius where the bounds stop separating, and contrast with the
//! asymmetric annular family.
//!
//! ```text
//! cargo run --release --example symmetry_sweep
//! ```

use curlspec::dispersion::{disk_spectral_bound, find_resonant_annulus};
use curlspec::symmetry::{
    crossover_minor_radius, decide, standard_torus_bounds, DeciderConfig, TorusSpec,
};

fn main() {
    let j_star = disk_spectral_bound(10.0, 0.005).unwrap();
    println!(
        "antisymmetric disk bound j* = {:.6} +/- {:.3} (consumed as {:.6})",
        j_star.value,
        j_star.error_bar,
        j_star.lower()
    );

    let config = DeciderConfig::default();
    println!("\nstandard torus, R = 1:");
    println!("  {:>6} {:>14} {:>16} {:>14}", "a", "sym upper", "antisym lower", "verdict");
    for k in 1..=12 {
        let a = 0.05 * k as f64;
        let v = decide(&TorusSpec::StandardTorus { minor: a, major: 1.0 }, &config, &j_star)
            .unwrap();
        println!(
            "  {a:>6.2} {:>14.4} {:>16.4} {:>14}",
            v.sym_bound, v.antisym_bound, v.verdict
        );
    }

    let a_star = crossover_minor_radius(1.0, &j_star).unwrap();
    println!("\nbounds separate for a < a* = {a_star:.6}");
    let b = standard_torus_bounds(1e-4, 1.0, &j_star).unwrap();
    println!(
        "thin limit at a = 1e-4: a*sym_upper = {:.6} (-> j_01), a*antisym_lower = {:.6} (-> j*)",
        1e-4 * b.sym_upper,
        1e-4 * b.antisym_lower
    );

    // the annular family flips the comparison: the symmetric branch is
    // bounded below, the antisymmetric one above
    let res = find_resonant_annulus(1.0).unwrap();
    println!("\nannular family at the resonant geometry (a = {:.6}):", res.inner);
    for n in [1u64, 5, 10, 11, 12, 20] {
        let v = decide(
            &TorusSpec::AnnularFamily {
                inner: res.inner,
                outer: res.outer,
                period: res.period,
                n,
            },
            &config,
            &j_star,
        )
        .unwrap();
        println!(
            "  n = {n:2}: sym lower {:.4} vs antisym upper {:.4} -> {}",
            v.sym_bound, v.antisym_bound, v.verdict
        );
    }
}
