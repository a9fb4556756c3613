//! Recompute the exact-rational negativity certificate and print every
//! intermediate fraction.
//!
//! ```text
//! cargo run --example verify_certificate
//! ```
//!
//! The certificate shows (1 + r) J_0(s) + (1 - r) J_2(s) < 0 for
//! s = 287/100 and r = sqrt(1 - s^2/pi^2) without ever leaving the
//! rationals: exact partial sums, an exact tail bound, and the substitution
//! pi > 314/100 for the single irrational hypothesis.

use curlspec::certificate::{certify_negativity, diff_records, golden_reference, reference_certificate};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() {
    let cert = reference_certificate();
    println!("certificate at s = {}, M = {}", cert.s, cert.truncation);
    println!("  r_lower_check = {}", cert.r_lower_check);
    println!("  sum_j0        = {}", cert.sum_j0);
    println!("  sum_j2        = {}", cert.sum_j2);
    println!("  remainder     = {}", cert.remainder);
    println!("  combined      = {}", cert.combined);
    println!("  verdict       = {}", cert.verdict);

    let mismatches = diff_records(&cert.to_record(), &golden_reference());
    println!("  golden match  = {}", mismatches.is_empty());

    // the certificate is monotone in the truncation: deeper partial sums
    // shrink the tail term and keep the verdict
    println!("\ntruncation sweep at s = 287/100:");
    let s = BigRational::new(BigInt::from(287), BigInt::from(100));
    for m in 5..=10 {
        let c = certify_negativity(&s, m).unwrap();
        println!(
            "  M = {m:2}: remainder = {:<24} verdict = {}",
            c.remainder.to_string(),
            c.verdict
        );
    }

    // a small argument keeps J_0 positive and the certificate correctly
    // refuses to sign off
    let tiny = BigRational::new(BigInt::from(1), BigInt::from(10));
    let c = certify_negativity(&tiny, 5).unwrap();
    println!("\nat s = 1/10 the verdict is {} (sum_j0 = {})", c.verdict, c.sum_j0);
}
