//! Bessel functions J_m, Y_m, their derivatives and zeros, plus exact
//! rational Taylor partial sums with a certified tail bound.
//!
//! Strategy: the ascending power series is used for small arguments, a
//! normalized backward recurrence for J at larger arguments (all orders in
//! one sweep), and the large-argument cosine/sine expansions for Y_0, Y_1
//! beyond the reach of the ascending series. Mid-range Y series are summed
//! in double-double to absorb the alternating-term cancellation. Y_m for
//! m >= 2 follows from the upward recurrence, which is stable for Y.
//!
//! Floating-point accuracy targets are relative to the local oscillation
//! amplitude: near a zero of J_m or Y_m no fixed-precision evaluator can
//! bound the pointwise relative error.

use crate::dd::Dd;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Largest Bessel order accepted by the evaluators.
pub const MAX_ORDER: i64 = 64;

/// Ascending series is used for |x| below this, backward recurrence above.
const J_SERIES_CUTOFF: f64 = 7.0;
/// Ascending (log) series for Y below this, large-argument expansion above.
const Y_SERIES_CUTOFF: f64 = 17.0;

/// Euler-Mascheroni constant as a double-double.
const EULER_GAMMA: Dd = Dd {
    hi: 0.5772156649015329,
    lo: -3.9393487909917596e-17,
};

/// Validated Bessel order, |m| <= [`MAX_ORDER`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BesselOrder(i64);

impl BesselOrder {
    pub fn new(m: i64) -> Result<Self> {
        if m.abs() > MAX_ORDER {
            return Err(Error::OrderOutOfRange(m));
        }
        Ok(BesselOrder(m))
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

/// Index of the k-th positive zero of J_m, with k >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BesselZeroIndex {
    order: u32,
    k: u32,
}

impl BesselZeroIndex {
    pub fn new(order: u32, k: u32) -> Result<Self> {
        BesselOrder::new(order as i64)?;
        if k == 0 {
            return Err(Error::ZeroIndexOutOfRange);
        }
        Ok(BesselZeroIndex { order, k })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// Request for an exact rational Taylor partial sum of J_n.
#[derive(Debug, Clone)]
pub struct RationalSeriesRequest {
    /// Non-negative series order n.
    pub order: u32,
    /// Truncation index M >= 1: terms m = 0..=M are kept.
    pub truncation: u32,
    /// Exact rational argument.
    pub x: BigRational,
}

impl RationalSeriesRequest {
    pub fn new(order: u32, truncation: u32, x: BigRational) -> Result<Self> {
        if truncation < 1 {
            return Err(Error::TruncationTooSmall(truncation as i64));
        }
        Ok(RationalSeriesRequest { order, truncation, x })
    }
}

/// J_m(x) for integer |m| <= 64 and finite x.
pub fn bessel_j(order: i64, x: f64) -> Result<f64> {
    let m = BesselOrder::new(order)?.get();
    // J_{-m}(x) = (-1)^m J_m(x); J_m(-x) = (-1)^m J_m(x)
    let mut sign = 1.0;
    let mu = if m < 0 {
        if m % 2 != 0 {
            sign = -sign;
        }
        (-m) as usize
    } else {
        m as usize
    };
    let xa = if x < 0.0 {
        if mu % 2 == 1 {
            sign = -sign;
        }
        -x
    } else {
        x
    };
    Ok(sign * j_nonneg(mu, xa))
}

/// Derivative J_m'(x), via J_m' = (J_{m-1} - J_{m+1}) / 2.
pub fn bessel_j_prime(order: i64, x: f64) -> Result<f64> {
    BesselOrder::new(order)?;
    let lo = j_signed(order - 1, x);
    let hi = j_signed(order + 1, x);
    Ok(0.5 * (lo - hi))
}

/// Y_m(x) for 0 <= m <= 64 and x > 0.
pub fn bessel_y(order: u32, x: f64) -> Result<f64> {
    BesselOrder::new(order as i64)?;
    if !(x > 0.0) {
        return Err(Error::NonPositiveArgument(x));
    }
    Ok(y_upward(order as usize, x))
}

/// Derivative Y_m'(x), via Y_0' = -Y_1 and Y_m' = (Y_{m-1} - Y_{m+1}) / 2.
pub fn bessel_y_prime(order: u32, x: f64) -> Result<f64> {
    BesselOrder::new(order as i64)?;
    if !(x > 0.0) {
        return Err(Error::NonPositiveArgument(x));
    }
    if order == 0 {
        return Ok(-y_upward(1, x));
    }
    let lo = y_upward(order as usize - 1, x);
    let hi = y_upward(order as usize + 1, x);
    Ok(0.5 * (lo - hi))
}

/// The k-th positive zero j_{m,k}, to absolute accuracy ~1e-12.
///
/// Coarse sign scan with step 0.05 followed by bisection; the zeros of J_m
/// are simple and spaced by more than the scan step, so no zero is skipped.
pub fn bessel_zero(index: BesselZeroIndex) -> f64 {
    let m = index.order as usize;
    // J_m > 0 on (0, j_{m,1}) and j_{m,1} > m, so the scan may start at m.
    let mut x = if m == 0 { 0.05 } else { m as f64 };
    let step = 0.05;
    let mut prev = j_nonneg(m, x);
    let mut crossings = 0u32;
    loop {
        let x_next = x + step;
        let val = j_nonneg(m, x_next);
        if prev == 0.0 {
            crossings += 1; // landed exactly on a zero
            if crossings == index.k {
                return x;
            }
        } else if prev * val < 0.0 {
            crossings += 1;
            if crossings == index.k {
                return bisect_j(m, x, x_next);
            }
        }
        prev = val;
        x = x_next;
    }
}

fn bisect_j(m: usize, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = j_nonneg(m, lo);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let f_mid = j_nonneg(m, mid);
        if f_lo * f_mid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exact partial sum sum_{m=0}^{M} (-1)^m / (m! (m+n)!) (x/2)^{2m+n}
/// as a reduced fraction.
pub fn taylor_partial_sum(req: &RationalSeriesRequest) -> BigRational {
    let n = req.order;
    let x_half = &req.x / BigRational::from_integer(BigInt::from(2));
    let q = &x_half * &x_half;
    // term_0 = (x/2)^n / n!
    let mut term = rational_pow(&x_half, n) / BigRational::from_integer(factorial(n));
    let mut sum = term.clone();
    for m in 1..=req.truncation {
        let denom = BigInt::from(m as u64) * BigInt::from((m + n) as u64);
        term = -(term * &q) / BigRational::from_integer(denom);
        sum += &term;
    }
    sum
}

/// Exact tail bound 18 (3/4)^{M+1} / (M+1)! valid for all orders n >= 0
/// and all |x| <= 3.
pub fn taylor_remainder_bound(truncation: u32) -> Result<BigRational> {
    if truncation < 1 {
        return Err(Error::TruncationTooSmall(truncation as i64));
    }
    let three_quarters = BigRational::new(BigInt::from(3), BigInt::from(4));
    let pow = rational_pow(&three_quarters, truncation + 1);
    Ok(BigRational::from_integer(BigInt::from(18)) * pow
        / BigRational::from_integer(factorial(truncation + 1)))
}

pub(crate) fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n as u64 {
        acc *= BigInt::from(i);
    }
    acc
}

pub(crate) fn rational_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Checks m! >= (2/9) 3^m exactly for a single m (used by the certificate
/// tests over a finite range; the bound underlies the remainder estimate).
pub(crate) fn factorial_dominates_geometric(m: u32) -> bool {
    let lhs = factorial(m) * BigInt::from(9);
    let rhs = BigInt::from(2) * BigInt::from(3).pow(m);
    lhs >= rhs
}

// ---------------------------------------------------------------------------
// internal evaluators
// ---------------------------------------------------------------------------

fn j_signed(order: i64, x: f64) -> f64 {
    let mut sign = 1.0;
    let mu = if order < 0 {
        if order % 2 != 0 {
            sign = -sign;
        }
        (-order) as usize
    } else {
        order as usize
    };
    let xa = if x < 0.0 {
        if mu % 2 == 1 {
            sign = -sign;
        }
        -x
    } else {
        x
    };
    sign * j_nonneg(mu, xa)
}

/// J_m(x) for m >= 0, x >= 0.
fn j_nonneg(m: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if x <= J_SERIES_CUTOFF {
        j_series(m, x)
    } else {
        j_backward(m, x)
    }
}

/// Ascending series; safe from cancellation for x <= J_SERIES_CUTOFF.
fn j_series(m: usize, x: f64) -> f64 {
    let xh = 0.5 * x;
    let mut term = 1.0_f64;
    for i in 1..=m {
        term *= xh / i as f64;
    }
    let q = xh * xh;
    let mut sum = term;
    let mut t_max = term.abs();
    for k in 1..300usize {
        term *= -q / ((k * (k + m)) as f64);
        sum += term;
        let a = term.abs();
        if a > t_max {
            t_max = a;
        }
        if a < t_max * 1e-20 {
            break;
        }
    }
    sum
}

/// Normalized backward (Miller) recurrence: returns J_m(x) for x > 0.
/// One sweep produces all orders 0..=m; see `j_upto` for batch access.
fn j_backward(m: usize, x: f64) -> f64 {
    j_upto(m, x)[m]
}

/// J_0(x)..J_{n_max}(x) in one pass. For x above the series cutoff a single
/// backward sweep covers every order; below it each order is summed directly.
pub(crate) fn j_upto(n_max: usize, x: f64) -> Vec<f64> {
    assert!(x >= 0.0, "j_upto expects x >= 0");
    if x <= J_SERIES_CUTOFF {
        return (0..=n_max).map(|m| j_nonneg(m, x)).collect();
    }
    let base = (n_max as f64).max(x.ceil());
    // Start far enough above the turning point that seed contamination
    // decays below 1e-17 relative by the time the sweep reaches order base.
    let pad = (21.0 * base.sqrt()).powf(2.0 / 3.0).ceil() as usize + 8;
    let mut start = base as usize + pad;
    if start % 2 == 1 {
        start += 1;
    }
    let mut out = vec![0.0_f64; n_max + 1];
    let mut f_next = 0.0_f64; // f_{k+1}
    let mut f = 1e-30_f64; // f_k, k = start
    let mut norm = 2.0 * f; // start is even; normalization 1 = J_0 + 2 sum J_{2j}
    for k in (1..=start).rev() {
        let f_prev = (2.0 * k as f64 / x) * f - f_next;
        f_next = f;
        f = f_prev;
        let idx = k - 1;
        if idx <= n_max {
            out[idx] = f;
        }
        if idx == 0 {
            norm += f;
        } else if idx % 2 == 0 {
            norm += 2.0 * f;
        }
        if f.abs() > 1e250 {
            f *= 1e-250;
            f_next *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// Y_m(x) via Y_0, Y_1 and the upward recurrence Y_{m+1} = (2m/x) Y_m - Y_{m-1}.
fn y_upward(m: usize, x: f64) -> f64 {
    let (y0, y1) = y01(x);
    if m == 0 {
        return y0;
    }
    if m == 1 {
        return y1;
    }
    let mut prev = y0;
    let mut cur = y1;
    for k in 1..m {
        let next = (2.0 * k as f64 / x) * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// (Y_0(x), Y_1(x)) for x > 0.
fn y01(x: f64) -> (f64, f64) {
    if x <= Y_SERIES_CUTOFF {
        y01_series(x)
    } else {
        (hankel_jy(0, x).1, hankel_jy(1, x).1)
    }
}

/// Ascending log series:
///   Y_0 = (2/pi) [ (ln(x/2)+gamma) J_0 + sum_{k>=1} (-1)^{k+1} H_k q^k/(k!)^2 ]
///   Y_1 = (2/pi) (ln(x/2)+gamma) J_1 - 2/(pi x)
///         - (x/(2 pi)) sum_{k>=0} (-1)^k (H_k + H_{k+1}) q^k/(k!(k+1)!)
/// with q = x^2/4. The alternating sums run in double-double: near the upper
/// end of the series range they cancel ~7 leading digits.
fn y01_series(x: f64) -> (f64, f64) {
    let j0 = j_nonneg(0, x);
    let j1 = j_nonneg(1, x);
    let log_term = (0.5 * x).ln() + EULER_GAMMA.to_f64();

    let q = Dd::from_f64(x).mul_f64(x).div_f64(4.0);

    // S0 = sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2
    let mut harmonic = Dd::ZERO;
    let mut term = Dd::from_f64(1.0); // q^k / (k!)^2, k = 0
    let mut s0 = Dd::ZERO;
    let mut t_max = 0.0_f64;
    for k in 1..300usize {
        term = term.mul(q).div_f64((k * k) as f64);
        harmonic = harmonic.add(Dd::from_f64(1.0).div_f64(k as f64));
        let contrib = term.mul(harmonic);
        s0 = if k % 2 == 1 { s0.add(contrib) } else { s0.add(contrib.neg()) };
        let a = contrib.abs();
        t_max = t_max.max(a);
        if a < t_max * 1e-34 {
            break;
        }
    }

    // S1 = sum_{k>=0} (-1)^k (H_k + H_{k+1}) q^k / (k! (k+1)!)
    let mut harmonic_k = Dd::ZERO;
    let mut harmonic_k1 = Dd::from_f64(1.0);
    let mut term = Dd::from_f64(1.0); // q^k / (k!(k+1)!), k = 0
    let mut s1 = harmonic_k.add(harmonic_k1); // k = 0 contribution, H_0 + H_1 = 1
    let mut t_max = s1.abs();
    for k in 1..300usize {
        term = term.mul(q).div_f64((k * (k + 1)) as f64);
        harmonic_k = harmonic_k.add(Dd::from_f64(1.0).div_f64(k as f64));
        harmonic_k1 = harmonic_k1.add(Dd::from_f64(1.0).div_f64((k + 1) as f64));
        let contrib = term.mul(harmonic_k.add(harmonic_k1));
        s1 = if k % 2 == 0 { s1.add(contrib) } else { s1.add(contrib.neg()) };
        let a = contrib.abs();
        t_max = t_max.max(a);
        if a < t_max * 1e-34 {
            break;
        }
    }

    let two_over_pi = std::f64::consts::FRAC_2_PI;
    let y0 = two_over_pi * (log_term * j0 + s0.to_f64());
    let y1 = two_over_pi * log_term * j1 - two_over_pi / x
        - (x / (2.0 * std::f64::consts::PI)) * s1.to_f64();
    (y0, y1)
}

/// Large-argument expansion (DLMF 10.17): for order m in {0, 1} and x above
/// the series cutoff the optimally truncated series is below 1e-14 relative.
/// Exposed within the crate as an independent cross-check route.
pub(crate) fn hankel_jy(m: u32, x: f64) -> (f64, f64) {
    let mu = (4 * m * m) as f64;
    let mut p = 1.0_f64;
    let mut q = 0.0_f64;
    let mut term = 1.0_f64; // a_j / x^j, signed products folded in
    let mut last = f64::INFINITY;
    for j in 1..60usize {
        let factor = (mu - ((2 * j - 1) as f64).powi(2)) / (8.0 * j as f64 * x);
        term *= factor;
        let a = term.abs();
        if a >= last {
            break; // asymptotic tail started to grow
        }
        last = a;
        // P takes even j with sign (-1)^{j/2}, Q takes odd j with (-1)^{(j-1)/2}
        match j % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => unreachable!(),
        }
        if a < 1e-19 {
            break;
        }
    }
    let omega = x - (0.5 * m as f64 + 0.25) * std::f64::consts::PI;
    let (sin_o, cos_o) = omega.sin_cos();
    let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
    (amp * (p * cos_o - q * sin_o), amp * (p * sin_o + q * cos_o))
}
