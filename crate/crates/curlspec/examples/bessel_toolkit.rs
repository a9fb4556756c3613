//! Tour of the Bessel layer: evaluation, zeros, identities, and the exact
//! rational Taylor machinery the certificate builds on.
//!
//! ```text
//! cargo run --example bessel_toolkit
//! ```

use curlspec::bessel::{
    bessel_j, bessel_j_prime, bessel_y, bessel_zero, taylor_partial_sum, taylor_remainder_bound,
    BesselZeroIndex, RationalSeriesRequest,
};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    println!("values:");
    for &(m, x) in &[(0i64, 1.0), (0, 2.404825557695773), (1, 3.5), (5, 20.0), (10, 50.0)] {
        println!("  J_{m}({x}) = {:+.15e}", bessel_j(m, x).unwrap());
    }
    for &(m, x) in &[(0u32, 0.001), (0, 1.0), (1, 3.5), (2, 20.0)] {
        println!("  Y_{m}({x}) = {:+.15e}", bessel_y(m, x).unwrap());
    }

    println!("\nfirst zeros j_{{m,k}}:");
    for m in 0..=3u32 {
        let zeros: Vec<String> = (1..=3)
            .map(|k| format!("{:.12}", bessel_zero(BesselZeroIndex::new(m, k).unwrap())))
            .collect();
        println!("  m = {m}: {}", zeros.join(", "));
    }

    // the three-term recurrence and the Wronskian act as cheap self-tests
    println!("\nidentity residuals at x = 7.3:");
    let x = 7.3;
    for m in [0i64, 1, 4] {
        let r = bessel_j(m - 1, x).unwrap() + bessel_j(m + 1, x).unwrap()
            - 2.0 * m as f64 / x * bessel_j(m, x).unwrap();
        println!("  J recurrence  m = {m}: {r:+.2e}");
    }
    let w = bessel_j(1, x).unwrap() * bessel_y(0, x).unwrap()
        - bessel_j(0, x).unwrap() * bessel_y(1, x).unwrap()
        - 2.0 / (std::f64::consts::PI * x);
    println!("  Wronskian residual: {w:+.2e}");
    println!(
        "  J_0'(x) + J_1(x) = {:+.2e}",
        bessel_j_prime(0, x).unwrap() + bessel_j(1, x).unwrap()
    );

    // exact rational partial sums with a certified tail
    println!("\nexact partial sums at x = 287/100:");
    let s = BigRational::new(BigInt::from(287), BigInt::from(100));
    for n in [0u32, 2] {
        let req = RationalSeriesRequest::new(n, 5, s.clone()).unwrap();
        println!("  S_5 for J_{n}: {}", taylor_partial_sum(&req));
    }
    for m in [1u32, 5, 20] {
        println!("  tail bound at M = {m:2}: {}", taylor_remainder_bound(m).unwrap());
    }
}
