//! Construction of the resonant annular family: the sign structure of the
//! family determinant, its smallest root, and the index threshold past
//! which the annular-cylinder tori lose symmetric first eigenfields.
//!
//! ```text
//! cargo run --release --example resonant_annulus
//! ```

use curlspec::dispersion::{
    annulus_determinant, find_resonant_annulus, reference_ratio, resonant_annulus_det,
    AnnulusGeometry, ModeIndex,
};
use curlspec::symmetry::annular_family_bounds;

fn main() {
    let r0 = reference_ratio();
    println!("certified ratio r0 = sqrt(1 - (287/100)^2/pi^2) = {r0:.12}");

    println!("\nfamily determinant g(a) at r0, outer radius 1:");
    for a in [0.01, 0.1, 0.3, 0.44, 0.46, 0.6, 0.9, 0.99] {
        let g = resonant_annulus_det(r0, 1.0, a).unwrap();
        println!("  a = {a:.2}: {g:+.6e}");
    }

    let res = find_resonant_annulus(1.0).unwrap();
    println!("\nsmallest root: a = {:.12} (|g| = {:.1e})", res.inner, res.g_residual.abs());
    println!("  period L = {:.12}", res.period);
    println!("  eigenvalue lambda = pi/(b-a) = {:.12}", res.lambda);
    if res.alternatives.is_empty() {
        println!("  no alternative roots in (0, b)");
    } else {
        println!("  alternative roots: {:?}", res.alternatives);
    }

    // the root really is an annulus-tube eigenvalue: the raw determinant
    // vanishes at lambda for the (m, n_ell) = (1, 1) mode
    let geom = AnnulusGeometry::new(res.inner, res.outer).unwrap();
    let mode = ModeIndex::new(1, 1, res.period).unwrap();
    let det = annulus_determinant(&geom, &mode, res.lambda).unwrap();
    println!("  raw determinant at lambda: {det:+.2e}");

    let bounds = annular_family_bounds(&res).unwrap();
    println!("\nsymmetric branch lower bound: {:.9}", bounds.sym_lower);
    println!("antisymmetric upper bounds along the family:");
    for n in 1..=bounds.n_threshold + 2 {
        let u = bounds.antisym_upper(n);
        let marker = if u <= bounds.sym_lower { "  <- asymmetric from here" } else { "" };
        println!("  n = {n:2}: {u:.9}{marker}");
    }
    println!("threshold N = {}", bounds.n_threshold);
}
