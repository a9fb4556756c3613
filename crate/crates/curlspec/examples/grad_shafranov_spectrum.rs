//! Eigenvalues of a cross-section: Dirichlet Laplacian baseline, the
//! Grad-Shafranov eigenvalue with its two-sided bracket, the symmetric
//! Amperian eigenvalue, and the flux-free variant.
//!
//! ```text
//! cargo run --release --example grad_shafranov_spectrum
//! ```

use curlspec::grad_shafranov::{
    grad_shafranov_solve, laplacian_dirichlet_lambda1, richardson_study,
    symmetric_fluxfree_solve, CrossSection,
};

fn report(label: &str, section: &CrossSection, h: f64) {
    let lap = laplacian_dirichlet_lambda1(section, h).unwrap();
    let gs = grad_shafranov_solve(section, h).unwrap();
    let ff = symmetric_fluxfree_solve(section, h).unwrap();
    let est = &gs.estimate;
    println!("{label} (grid_h = {h}):");
    println!("  lambda1_D   = {:.8}", lap.value);
    println!(
        "  lambda1_GS  = {:.8} in [{:.8}, {:.8}] (contained: {})",
        est.value,
        est.bracket_low,
        est.bracket_high,
        est.bracket_low <= est.value && est.value <= est.bracket_high
    );
    println!("  lambda1_s   = {:.8}", est.value.sqrt());
    println!(
        "  lambda1_sFF = {:.8} (> lambda1_s: {}, |weighted mean| = {:.1e})",
        ff.lambda,
        ff.lambda > est.value.sqrt(),
        ff.weighted_mean.abs()
    );
}

fn main() {
    let disk = CrossSection::disk(1.0, 0.1).unwrap();
    report("disk a = 0.1 centred at r = 1", &disk, 0.1 / 32.0);

    // for comparison: j_{0,1}^2 / a^2 = 578.32 and the potential band
    // 3/(4 r^2) over r in [0.9, 1.1] is [0.62, 0.93]
    println!();

    let rect = CrossSection::rectangle(1.0, 2.0, -1.0, 1.0).unwrap();
    report("rectangle [1,2] x [-1,1]", &rect, 1.0 / 32.0);

    println!("\nconvergence of the disk Grad-Shafranov eigenvalue:");
    let study = richardson_study(0.1 / 8.0, |h| {
        Ok(grad_shafranov_solve(&disk, h)?.estimate.value)
    })
    .unwrap();
    for (h, v) in study.hs.iter().zip(&study.values) {
        println!("  h = {h:.6}: {v:.8}");
    }
    println!(
        "  observed order {:.3}, error estimate {:.2e}",
        study.order, study.error_estimate
    );

    // eigenvalues scale like 1/length^2: doubling the section halves
    // the Amperian eigenvalue exactly on the rescaled grid
    let doubled = CrossSection::disk(2.0, 0.2).unwrap();
    let l1 = grad_shafranov_solve(&disk, 0.1 / 16.0).unwrap().estimate.value.sqrt();
    let l2 = grad_shafranov_solve(&doubled, 0.2 / 16.0).unwrap().estimate.value.sqrt();
    println!("\nscaling check: lambda({{2x domain}}) / lambda = {:.12}", l2 / l1);
}
