//! First Dirichlet eigenvalue of the Grad-Shafranov operator
//! L = d_rr + d_zz - (1/r) d_r on a cross-section, the bracket that pins it
//! between Laplacian eigenvalues, the symmetric Amperian eigenvalue
//! sqrt(lambda_1^{G-S}), and the flux-free variant with a free constant
//! boundary value and zero weighted mean.
//!
//! The substitution v = r^{-1/2} u turns the weighted eigenproblem into the
//! Schrodinger problem (-Laplace + 3/(4 r^2)) v = lambda v with Dirichlet
//! conditions, which is what the solver discretizes: five-point stencils,
//! boundary-fitted legs on analytic shapes, and inverse power iteration.

mod fd;
mod section;

pub use section::{CrossSection, GridMask};

use crate::error::{Error, Result};
use fd::{smallest_eigen, EigenOptions, Link, RankOne};

/// Eigenvalue estimate with its analytic bracket and the outer iteration
/// count of the eigensolver.
#[derive(Debug, Clone)]
pub struct EigenEstimate {
    pub value: f64,
    pub grid_h: f64,
    pub bracket_low: f64,
    pub bracket_high: f64,
    pub iterations: usize,
}

/// Scalar field over the interior grid nodes of a discretized section.
#[derive(Debug, Clone)]
pub struct GridField {
    pub grid_h: f64,
    /// (r, z) of each interior node, in solver order.
    pub positions: Vec<(f64, f64)>,
    pub values: Vec<f64>,
}

impl GridField {
    /// Quadrature of u / r over the section (weighted mean against 1).
    pub fn weighted_mean(&self) -> f64 {
        let h2 = self.grid_h * self.grid_h;
        self.positions
            .iter()
            .zip(&self.values)
            .map(|(&(r, _), &u)| u / r * h2)
            .sum()
    }

    /// Weighted L2 norm sqrt(int u^2 / r).
    pub fn weighted_norm(&self) -> f64 {
        let h2 = self.grid_h * self.grid_h;
        self.positions
            .iter()
            .zip(&self.values)
            .map(|(&(r, _), &u)| u * u / r * h2)
            .sum::<f64>()
            .sqrt()
    }
}

/// Full Grad-Shafranov solve: eigenvalue with bracket, the eigenfunction u,
/// and its transform v = r^{-1/2} u that the operator actually iterates on.
#[derive(Debug, Clone)]
pub struct GsSolution {
    pub estimate: EigenEstimate,
    /// Same-grid first Dirichlet eigenvalue of the plain Laplacian.
    pub laplacian_lambda1: f64,
    pub u: GridField,
    pub v: GridField,
    /// Rayleigh quotient of v under the discrete operator; matches
    /// `estimate.value` to solver tolerance by construction.
    pub operator_quotient: f64,
}

/// Flux-free solve: eigenfunction equal to an unknown constant on the
/// boundary, orthogonal to constants in the weighted inner product.
#[derive(Debug, Clone)]
pub struct FluxFreeSolution {
    /// sqrt of the constrained eigenvalue (the curl eigenvalue).
    pub lambda: f64,
    /// The constrained eigenvalue lambda^2 itself.
    pub eigenvalue: f64,
    /// Boundary value c of the normalized eigenfunction.
    pub boundary_value: f64,
    /// Residual weighted mean of the returned eigenfunction.
    pub weighted_mean: f64,
    pub iterations: usize,
    pub u: GridField,
}

/// First Dirichlet eigenvalue of -(d_rr + d_zz); second order in grid_h on
/// analytic shapes. The bracket fields collapse to the value (no analytic
/// two-sided bracket is available for the bare Laplacian).
pub fn laplacian_dirichlet_lambda1(section: &CrossSection, grid_h: f64) -> Result<EigenEstimate> {
    let disc = fd::build_disc(section, grid_h)?;
    let mat = disc.dirichlet_matrix(|_| 0.0);
    let (value, _, iterations) =
        smallest_eigen(&mat, None, disc.symmetric, None, None, &EigenOptions::default())?;
    Ok(EigenEstimate {
        value,
        grid_h,
        bracket_low: value,
        bracket_high: value,
        iterations,
    })
}

/// First Dirichlet eigenvalue of the Grad-Shafranov operator, computed as
/// the ground state of -Laplace + 3/(4 r^2), with the bracket
/// [lambda_1^D + 3/(4 r_max^2), lambda_1^D + 3/(4 r_min^2)] from the
/// same-grid Laplacian eigenvalue.
pub fn grad_shafranov_solve(section: &CrossSection, grid_h: f64) -> Result<GsSolution> {
    let disc = fd::build_disc(section, grid_h)?;
    let opts = EigenOptions::default();

    let lap = disc.dirichlet_matrix(|_| 0.0);
    let (lambda_d, _, _) = smallest_eigen(&lap, None, disc.symmetric, None, None, &opts)?;

    let mat = disc.dirichlet_matrix(|r| 0.75 / (r * r));
    let (value, mut v, iterations) = smallest_eigen(&mat, None, disc.symmetric, None, None, &opts)?;

    // normalize v to unit discrete L2 norm, i.e. (u, u)_{L2, r} = 1,
    // and orient the first eigenfunction positive
    let h = disc.h;
    let scale = (v.iter().map(|x| x * x).sum::<f64>() * h * h).sqrt();
    let sign = if v.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    v.iter_mut().for_each(|x| *x *= sign / scale);

    let operator_quotient = mat.quadratic_form(&v) / v.iter().map(|x| x * x).sum::<f64>();

    let u_values: Vec<f64> = disc
        .points
        .iter()
        .zip(&v)
        .map(|(&(r, _), &vv)| r.sqrt() * vv)
        .collect();

    let r_min = section.r_min();
    let r_max = section.r_max();
    Ok(GsSolution {
        estimate: EigenEstimate {
            value,
            grid_h,
            bracket_low: lambda_d + 0.75 / (r_max * r_max),
            bracket_high: lambda_d + 0.75 / (r_min * r_min),
            iterations,
        },
        laplacian_lambda1: lambda_d,
        u: GridField { grid_h, positions: disc.points.clone(), values: u_values },
        v: GridField { grid_h, positions: disc.points, values: v },
        operator_quotient,
    })
}

pub fn grad_shafranov_lambda1(section: &CrossSection, grid_h: f64) -> Result<EigenEstimate> {
    Ok(grad_shafranov_solve(section, grid_h)?.estimate)
}

/// First positive symmetric Amperian curl eigenvalue sqrt(lambda_1^{G-S}).
pub fn symmetric_amperian_lambda1(section: &CrossSection, grid_h: f64) -> Result<f64> {
    Ok(grad_shafranov_lambda1(section, grid_h)?.value.sqrt())
}

/// Smallest lambda > 0 with L u = -lambda^2 u, u equal to a free constant on
/// the boundary and zero weighted mean. Discretized as a symmetric pencil
/// with one extra unknown for the boundary value; each iterate is projected
/// onto the zero-weighted-mean subspace.
pub fn symmetric_fluxfree_solve(section: &CrossSection, grid_h: f64) -> Result<FluxFreeSolution> {
    let disc = fd::build_disc(section, grid_h)?;
    let (mat, mass) = disc.weighted_system();
    let n = mat.n;
    let weights = mass.clone();
    let project = move |x: &mut [f64]| {
        // remove the M-weighted mean: x <- x - (<x, M 1>/<1, M 1>) 1
        let num: f64 = x.iter().zip(&weights).map(|(v, w)| v * w).sum();
        let den: f64 = weights.iter().sum();
        let shift = num / den;
        x.iter_mut().for_each(|v| *v -= shift);
    };
    // deflate the constant nullspace out of the inner solves
    let aug = RankOne {
        vec: mass.clone(),
        denom: mass.iter().sum(),
        sigma: mat.mean_diagonal(),
    };
    let opts = EigenOptions::default();
    let (eigenvalue, x, iterations) =
        smallest_eigen(&mat, Some(&mass), true, Some(&project), Some(&aug), &opts)?;
    if !(eigenvalue > 0.0) {
        return Err(Error::EigenNotConverged(iterations));
    }
    let weighted_mean: f64 = x.iter().zip(&mass).map(|(v, w)| v * w).sum::<f64>()
        / mass.iter().sum::<f64>().sqrt();
    let boundary_value = x[n - 1];
    let u = GridField {
        grid_h,
        positions: disc.points,
        values: x[..n - 1].to_vec(),
    };
    Ok(FluxFreeSolution {
        lambda: eigenvalue.sqrt(),
        eigenvalue,
        boundary_value,
        weighted_mean,
        iterations,
        u,
    })
}

pub fn symmetric_fluxfree_lambda1(section: &CrossSection, grid_h: f64) -> Result<f64> {
    Ok(symmetric_fluxfree_solve(section, grid_h)?.lambda)
}

/// Independent discrete route for the weighted Rayleigh quotient
/// B_r[u, u] / (u, u)_{L2, r}: edge differences against 1/r at edge
/// midpoints over the staircase graph, Dirichlet zero beyond cuts. Agrees
/// with the Schrodinger-form eigenvalue up to discretization error.
pub fn weighted_form_quotient(section: &CrossSection, grid_h: f64, u: &GridField) -> Result<f64> {
    let disc = fd::build_disc(section, grid_h)?;
    if disc.points.len() != u.values.len() {
        return Err(Error::InvalidSection(
            "field does not match the discretization of this section".into(),
        ));
    }
    let h2 = disc.h * disc.h;
    let mut energy = 0.0;
    for (t, links) in disc.links.iter().enumerate() {
        let (r, _) = disc.points[t];
        for (dir, link) in links.iter().enumerate() {
            let di = [1.0, -1.0, 0.0, 0.0][dir];
            let r_mid = r + di * disc.h / 2.0;
            match *link {
                Link::Interior(s) => {
                    if s > t {
                        let d = u.values[t] - u.values[s];
                        energy += d * d / r_mid;
                    }
                }
                Link::Cut { .. } => {
                    // Dirichlet: difference against zero, full edge
                    energy += u.values[t] * u.values[t] / r_mid;
                }
            }
        }
    }
    // each squared edge difference carries (du/dx)^2 h^2 and a cell area h^2,
    // so the h^2 factors cancel in `energy`; the mass quadrature keeps its h^2
    let mass: f64 = disc
        .points
        .iter()
        .zip(&u.values)
        .map(|(&(r, _), &uu)| uu * uu / r)
        .sum::<f64>()
        * h2;
    Ok(energy / mass)
}

/// Convergence study at spacings h, h/2, h/4.
#[derive(Debug, Clone)]
pub struct RichardsonStudy {
    pub hs: [f64; 3],
    pub values: [f64; 3],
    /// Observed order log2((v_h - v_{h/2}) / (v_{h/2} - v_{h/4})); NaN when
    /// the differences change sign.
    pub order: f64,
    /// Error estimate for the finest value, |v_{h/2} - v_{h/4}| / (2^p - 1)
    /// with p clamped to [0.5, 3].
    pub error_estimate: f64,
}

pub fn richardson_study(
    h_coarse: f64,
    mut solve: impl FnMut(f64) -> Result<f64>,
) -> Result<RichardsonStudy> {
    let hs = [h_coarse, h_coarse / 2.0, h_coarse / 4.0];
    let values = [solve(hs[0])?, solve(hs[1])?, solve(hs[2])?];
    let d1 = values[0] - values[1];
    let d2 = values[1] - values[2];
    let order = if d1 * d2 > 0.0 { (d1 / d2).log2() } else { f64::NAN };
    let p = if order.is_finite() { order.clamp(0.5, 3.0) } else { 1.0 };
    let error_estimate = d2.abs() / (2f64.powf(p) - 1.0);
    Ok(RichardsonStudy { hs, values, order, error_estimate })
}
