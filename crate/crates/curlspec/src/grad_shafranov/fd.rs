//! Finite-difference machinery shared by the eigenvalue routines: node
//! classification with boundary-fitted (Shortley-Weller) stencils on
//! analytic shapes, compressed sparse rows, Krylov solvers, and inverse
//! power iteration.

use super::section::{CrossSection, GridMask};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Nodes closer to the boundary than this fraction of h are pinned to the
/// Dirichlet value instead of receiving a near-singular cut stencil.
const THETA_MIN: f64 = 1e-3;

/// Minimum interior node count below which a discretization is rejected.
pub(crate) const MIN_INTERIOR: usize = 100;

#[derive(Debug, Clone, Copy)]
pub(crate) enum Link {
    /// Neighbour is an interior node with the given index.
    Interior(usize),
    /// Stencil leg is cut by the boundary at fraction `theta` of h.
    Cut { theta: f64 },
}

/// Interior-node discretization of a cross-section on a uniform grid.
pub(crate) struct Disc {
    pub h: f64,
    /// (r, z) per interior node.
    pub points: Vec<(f64, f64)>,
    /// Integer grid coordinates per interior node.
    pub coords: Vec<(i64, i64)>,
    /// E, W, N, S neighbour links per node.
    pub links: Vec<[Link; 4]>,
    /// True when every cut has theta == 1 (classical symmetric stencil).
    pub symmetric: bool,
}

struct Shape<'a> {
    section: &'a CrossSection,
}

impl Shape<'_> {
    fn inside(&self, r: f64, z: f64, tol: f64) -> bool {
        match self.section {
            CrossSection::Disk { center_r, radius } => {
                let d2 = (r - center_r).powi(2) + z * z;
                d2 < radius * radius - tol * radius
            }
            CrossSection::Rectangle { r_min, r_max, z_min, z_max } => {
                r > r_min + tol && r < r_max - tol && z > z_min + tol && z < z_max - tol
            }
            CrossSection::Mask(_) => unreachable!("masks classified cell-wise"),
        }
    }

    /// Distances from an interior point to the boundary along +r, -r, +z, -z.
    fn crossings(&self, r: f64, z: f64) -> [f64; 4] {
        match self.section {
            CrossSection::Disk { center_r, radius } => {
                let se = (radius * radius - z * z).max(0.0).sqrt();
                let sn = (radius * radius - (r - center_r).powi(2)).max(0.0).sqrt();
                [center_r + se - r, r - (center_r - se), sn - z, z + sn]
            }
            CrossSection::Rectangle { r_min, r_max, z_min, z_max } => {
                [r_max - r, r - r_min, z_max - z, z - z_min]
            }
            CrossSection::Mask(_) => unreachable!(),
        }
    }
}

const DIRS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

pub(crate) fn build_disc(section: &CrossSection, grid_h: f64) -> Result<Disc> {
    section.validate()?;
    if !(grid_h > 0.0) || !grid_h.is_finite() {
        return Err(Error::InvalidSection(format!("grid_h must be positive, got {grid_h}")));
    }
    // ghost nodes and edge midpoints extend one spacing past the section;
    // they must stay in the half-plane r > 0
    if grid_h >= section.r_min() {
        return Err(Error::InvalidSection(format!(
            "grid_h {} must stay below the section's distance {} to the axis",
            grid_h,
            section.r_min()
        )));
    }
    let disc = match section {
        CrossSection::Mask(mask) => build_mask_disc(mask, grid_h)?,
        _ => build_analytic_disc(section, grid_h)?,
    };
    if disc.points.len() < MIN_INTERIOR {
        return Err(Error::DegenerateSection {
            h: grid_h,
            interior: disc.points.len(),
            min: MIN_INTERIOR,
        });
    }
    Ok(disc)
}

fn build_analytic_disc(section: &CrossSection, h: f64) -> Result<Disc> {
    let shape = Shape { section };
    let (r0, z0, nr, nz) = match section {
        CrossSection::Disk { center_r, radius } => {
            let n = (2.0 * radius / h).ceil() as i64 + 1;
            (center_r - radius, -radius, n, n)
        }
        CrossSection::Rectangle { r_min, r_max, z_min, z_max } => (
            *r_min,
            *z_min,
            ((r_max - r_min) / h).ceil() as i64 + 1,
            ((z_max - z_min) / h).ceil() as i64 + 1,
        ),
        CrossSection::Mask(_) => unreachable!(),
    };
    let tol = 1e-9 * h;

    // first pass: raw interior classification
    let mut raw: HashMap<(i64, i64), (f64, f64)> = HashMap::new();
    for i in 0..=nr {
        for j in 0..=nz {
            let r = r0 + i as f64 * h;
            let z = z0 + j as f64 * h;
            if shape.inside(r, z, tol) {
                raw.insert((i, j), (r, z));
            }
        }
    }

    // second pass: demote nodes whose boundary crossing is below THETA_MIN
    // along a leg whose neighbour is exterior
    let mut keys: Vec<(i64, i64)> = raw.keys().copied().collect();
    keys.sort_unstable_by_key(|&(i, j)| (j, i));
    let mut kept: Vec<(i64, i64)> = Vec::with_capacity(keys.len());
    for &(i, j) in &keys {
        let (r, z) = raw[&(i, j)];
        let d = shape.crossings(r, z);
        let mut ok = true;
        for (dir, &(di, dj)) in DIRS.iter().enumerate() {
            if !raw.contains_key(&(i + di, j + dj)) && d[dir] < THETA_MIN * h {
                ok = false;
                break;
            }
        }
        if ok {
            kept.push((i, j));
        }
    }

    let index: HashMap<(i64, i64), usize> =
        kept.iter().enumerate().map(|(t, &k)| (k, t)).collect();
    let mut points = Vec::with_capacity(kept.len());
    let mut links = Vec::with_capacity(kept.len());
    let mut symmetric = true;
    for &(i, j) in &kept {
        let (r, z) = raw[&(i, j)];
        let d = shape.crossings(r, z);
        let mut ll = [Link::Cut { theta: 1.0 }; 4];
        for (dir, &(di, dj)) in DIRS.iter().enumerate() {
            let nb = (i + di, j + dj);
            if let Some(&t) = index.get(&nb) {
                ll[dir] = Link::Interior(t);
            } else if raw.contains_key(&nb) {
                // demoted node: grid neighbour pinned to zero at distance h
                ll[dir] = Link::Cut { theta: 1.0 };
            } else {
                let theta = (d[dir] / h).clamp(THETA_MIN, 1.0);
                if (theta - 1.0).abs() > 1e-12 {
                    symmetric = false;
                }
                ll[dir] = Link::Cut { theta };
            }
        }
        points.push((r, z));
        links.push(ll);
    }
    Ok(Disc { h, points, coords: kept, links, symmetric })
}

fn build_mask_disc(mask: &GridMask, grid_h: f64) -> Result<Disc> {
    // the requested spacing must be the mask spacing divided by an integer
    let ratio = mask.h / grid_h;
    let f = ratio.round() as i64;
    if f < 1 || (ratio - f as f64).abs() > 1e-9 * ratio {
        return Err(Error::InvalidSection(format!(
            "grid_h {} must divide the mask spacing {} by an integer factor",
            grid_h, mask.h
        )));
    }
    let f = f as usize;
    let h = mask.h / f as f64;
    let n_i = mask.nr * f;
    let n_j = mask.nz * f;

    // fine node (i, j) is interior iff every cell whose closed region
    // contains the node is occupied
    let node_interior = |i: usize, j: usize| -> bool {
        let (qi, ri) = (i / f, i % f);
        let (qj, rj) = (j / f, j % f);
        let i_cells: &[isize] = if ri == 0 {
            &[-1, 0]
        } else {
            &[0]
        };
        let j_cells: &[isize] = if rj == 0 { &[-1, 0] } else { &[0] };
        for &di in i_cells {
            for &dj in j_cells {
                if !mask.cell(qi as isize + di, qj as isize + dj) {
                    return false;
                }
            }
        }
        true
    };

    let mut index: HashMap<(i64, i64), usize> = HashMap::new();
    let mut order: Vec<(i64, i64)> = Vec::new();
    for j in 0..=n_j {
        for i in 0..=n_i {
            if node_interior(i, j) {
                index.insert((i as i64, j as i64), order.len());
                order.push((i as i64, j as i64));
            }
        }
    }
    let mut points = Vec::with_capacity(order.len());
    let mut links = Vec::with_capacity(order.len());
    for &(i, j) in &order {
        points.push((mask.r0 + i as f64 * h, mask.z0 + j as f64 * h));
        let mut ll = [Link::Cut { theta: 1.0 }; 4];
        for (dir, &(di, dj)) in DIRS.iter().enumerate() {
            if let Some(&t) = index.get(&(i + di, j + dj)) {
                ll[dir] = Link::Interior(t);
            }
        }
        links.push(ll);
    }
    Ok(Disc { h, points, coords: order, links, symmetric: true })
}

impl Disc {
    /// Shortley-Weller matrix of -(d_rr + d_zz) + V(r) with Dirichlet zero
    /// beyond every cut.
    pub fn dirichlet_matrix(&self, potential: impl Fn(f64) -> f64) -> Csr {
        let n = self.points.len();
        let h2 = self.h * self.h;
        let mut builder = CsrBuilder::new(n);
        for (t, ll) in self.links.iter().enumerate() {
            let theta = |dir: usize| -> (f64, Option<usize>) {
                match ll[dir] {
                    Link::Interior(s) => (1.0, Some(s)),
                    Link::Cut { theta } => (theta, None),
                }
            };
            let mut diag = potential(self.points[t].0);
            for pair in [(0usize, 1usize), (2, 3)] {
                let (t1, n1) = theta(pair.0);
                let (t2, n2) = theta(pair.1);
                diag += 2.0 / (t1 * t2 * h2);
                if let Some(s) = n1 {
                    builder.add(t, s, -2.0 / (t1 * (t1 + t2) * h2));
                }
                if let Some(s) = n2 {
                    builder.add(t, s, -2.0 / (t2 * (t1 + t2) * h2));
                }
            }
            builder.add(t, t, diag);
        }
        builder.finish()
    }

    /// Weighted stiffness for -div((1/r) grad u) with a shared boundary
    /// unknown c as the last degree of freedom, plus the diagonal (1/r) mass.
    /// Edge weights use 1/r at the edge midpoint; boundary legs use theta = 1
    /// (staircase), keeping the system symmetric.
    pub fn weighted_system(&self) -> (Csr, Vec<f64>) {
        let n = self.points.len();
        let c = n; // index of the boundary unknown
        let h2 = self.h * self.h;
        let mut builder = CsrBuilder::new(n + 1);
        let mut mass = vec![0.0; n + 1];
        let mut ghost_mass = HashMap::new();
        for (t, ll) in self.links.iter().enumerate() {
            let (r, _z) = self.points[t];
            mass[t] = 1.0 / r;
            for (dir, link) in ll.iter().enumerate() {
                let (di, _) = DIRS[dir];
                let r_mid = r + di as f64 * self.h / 2.0;
                let w = (1.0 / r_mid) / h2;
                match *link {
                    Link::Interior(s) => {
                        builder.add(t, t, w);
                        builder.add(t, s, -w);
                    }
                    Link::Cut { .. } => {
                        builder.add(t, t, w);
                        builder.add(t, c, -w);
                        builder.add(c, t, -w);
                        builder.add(c, c, w);
                        // half of each ghost cell is attributed to the strip
                        // between the staircase interior and the true boundary
                        let (gi, gj) = (self.coords[t].0 + di, self.coords[t].1 + DIRS[dir].1);
                        let r_ghost = r + di as f64 * self.h;
                        ghost_mass.entry((gi, gj)).or_insert(0.5 / r_ghost);
                    }
                }
            }
        }
        mass[c] = ghost_mass.values().sum();
        (builder.finish(), mass)
    }
}

// ---------------------------------------------------------------------------
// sparse matrix and solvers
// ---------------------------------------------------------------------------

pub(crate) struct CsrBuilder {
    n: usize,
    entries: Vec<HashMap<usize, f64>>,
}

impl CsrBuilder {
    fn new(n: usize) -> Self {
        CsrBuilder { n, entries: vec![HashMap::new(); n] }
    }

    fn add(&mut self, row: usize, col: usize, val: f64) {
        *self.entries[row].entry(col).or_insert(0.0) += val;
    }

    fn finish(self) -> Csr {
        let mut row_ptr = Vec::with_capacity(self.n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in self.entries {
            let mut sorted: Vec<(usize, f64)> = row.into_iter().collect();
            sorted.sort_unstable_by_key(|&(c, _)| c);
            for (c, v) in sorted {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Csr { n: self.n, row_ptr, cols, vals }
    }
}

pub(crate) struct Csr {
    pub n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Csr {
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (row, out) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.row_ptr[row]..self.row_ptr[row + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *out = acc;
        }
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut y = vec![0.0; self.n];
        self.matvec(x, &mut y);
        dot(x, &y)
    }

    pub fn mean_diagonal(&self) -> f64 {
        let mut acc = 0.0;
        for row in 0..self.n {
            for k in self.row_ptr[row]..self.row_ptr[row + 1] {
                if self.cols[k] == row {
                    acc += self.vals[k];
                }
            }
        }
        acc / self.n as f64
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Symmetric rank-one augmentation sigma v v^T / (v^T 1) that shifts the
/// constant nullspace of the flux-free stiffness into the positive
/// spectrum. For right-hand sides orthogonal to constants the augmented
/// solution is exactly the M-orthogonal particular solution.
pub(crate) struct RankOne {
    /// v = M 1.
    pub vec: Vec<f64>,
    /// v^T 1.
    pub denom: f64,
    /// Shift magnitude, on the scale of the operator diagonal.
    pub sigma: f64,
}

impl RankOne {
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let c = self.sigma * dot(&self.vec, x) / self.denom;
        for (yi, vi) in y.iter_mut().zip(&self.vec) {
            *yi += c * vi;
        }
    }
}

fn apply_op(mat: &Csr, aug: Option<&RankOne>, x: &[f64], y: &mut [f64]) {
    mat.matvec(x, y);
    if let Some(r1) = aug {
        r1.apply(x, y);
    }
}

/// Conjugate gradients with an optional initial guess and optional rank-one
/// augmentation. The (augmented) matrix must be symmetric positive definite.
pub(crate) fn cg(
    mat: &Csr,
    aug: Option<&RankOne>,
    b: &[f64],
    x: &mut [f64],
    rtol: f64,
    max_iter: usize,
) -> Result<usize> {
    let n = mat.n;
    let b_norm = norm(b).max(f64::MIN_POSITIVE);
    let mut r = vec![0.0; n];
    apply_op(mat, aug, x, &mut r);
    for i in 0..n {
        r[i] = b[i] - r[i];
    }
    if norm(&r) <= rtol * b_norm {
        return Ok(0);
    }
    let mut p = r.clone();
    let mut ap = vec![0.0; n];
    let mut rs = dot(&r, &r);
    for it in 1..=max_iter {
        apply_op(mat, aug, &p, &mut ap);
        let alpha = rs / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rs_new = dot(&r, &r);
        if rs_new.sqrt() <= rtol * b_norm {
            return Ok(it);
        }
        let beta = rs_new / rs;
        rs = rs_new;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    Err(Error::SolverStalled { tol: rtol, residual: rs.sqrt() / b_norm, iters: max_iter })
}

/// BiCGStab for the mildly nonsymmetric Shortley-Weller systems.
pub(crate) fn bicgstab(mat: &Csr, b: &[f64], x: &mut [f64], rtol: f64, max_iter: usize) -> Result<usize> {
    let n = mat.n;
    let b_norm = norm(b).max(f64::MIN_POSITIVE);
    let mut r = vec![0.0; n];
    mat.matvec(x, &mut r);
    for i in 0..n {
        r[i] = b[i] - r[i];
    }
    if norm(&r) <= rtol * b_norm {
        return Ok(0);
    }
    let r0 = r.clone();
    let mut rho = 1.0;
    let mut alpha = 1.0;
    let mut omega = 1.0;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut s = vec![0.0; n];
    let mut t = vec![0.0; n];
    for it in 1..=max_iter {
        let rho_new = dot(&r0, &r);
        if rho_new.abs() < 1e-300 {
            break;
        }
        let beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        mat.matvec(&p, &mut v);
        alpha = rho / dot(&r0, &v);
        for i in 0..n {
            s[i] = r[i] - alpha * v[i];
        }
        if norm(&s) <= rtol * b_norm {
            for i in 0..n {
                x[i] += alpha * p[i];
            }
            return Ok(it);
        }
        mat.matvec(&s, &mut t);
        omega = dot(&t, &s) / dot(&t, &t);
        for i in 0..n {
            x[i] += alpha * p[i] + omega * s[i];
            r[i] = s[i] - omega * t[i];
        }
        if norm(&r) <= rtol * b_norm {
            return Ok(it);
        }
    }
    let res = norm(&r) / b_norm;
    if res <= rtol * 100.0 {
        // close enough for an inner solve inside inverse iteration
        return Ok(max_iter);
    }
    Err(Error::SolverStalled { tol: rtol, residual: res, iters: max_iter })
}

/// Constraint projection applied to each inverse-iteration iterate.
pub(crate) type Projector<'a> = &'a dyn Fn(&mut [f64]);

pub(crate) struct EigenOptions {
    pub tol: f64,
    pub max_outer: usize,
    pub inner_rtol: f64,
    pub inner_max: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions { tol: 1e-10, max_outer: 2000, inner_rtol: 1e-12, inner_max: 40_000 }
    }
}

/// Smallest eigenvalue of A x = lambda M x by inverse power iteration.
///
/// `mass` is a diagonal (None means identity), `project` is applied to every
/// iterate (used for the zero-weighted-mean constraint), `aug` deflates a
/// known constant nullspace during the inner solves, and `symmetric`
/// selects CG vs BiCGStab. Returns (lambda, M-normalized eigenvector,
/// outer iterations).
pub(crate) fn smallest_eigen(
    mat: &Csr,
    mass: Option<&[f64]>,
    symmetric: bool,
    project: Option<Projector>,
    aug: Option<&RankOne>,
    opts: &EigenOptions,
) -> Result<(f64, Vec<f64>, usize)> {
    let n = mat.n;
    let m_norm = |x: &[f64]| -> f64 {
        match mass {
            Some(m) => x.iter().zip(m).map(|(v, w)| v * v * w).sum::<f64>().sqrt(),
            None => norm(x),
        }
    };
    // deterministic, boundary-shaped start: strictly positive, never an
    // eigenvector of the discrete operators used here
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i % 17) as f64 / 17.0)).collect();
    if let Some(p) = project {
        p(&mut x);
    }
    let s = m_norm(&x);
    if !(s > 0.0) {
        return Err(Error::EigenNotConverged(0));
    }
    x.iter_mut().for_each(|v| *v /= s);

    let mut y = x.clone();
    let mut b = vec![0.0; n];
    let mut lambda_prev = f64::INFINITY;
    let mut close_streak = 0usize;
    let mut rel_change = 1.0_f64;
    for outer in 1..=opts.max_outer {
        match mass {
            Some(m) => {
                for i in 0..n {
                    b[i] = m[i] * x[i];
                }
            }
            None => b.copy_from_slice(&x),
        }
        // inexact inverse iteration: early solves may be loose, the final
        // ones must be tight for the eigenvalue to settle at opts.tol
        let rtol = (1e-3 * rel_change).clamp(opts.inner_rtol, 1e-6);
        // warm start from the previous direction
        if symmetric {
            cg(mat, aug, &b, &mut y, rtol, opts.inner_max)?;
        } else {
            bicgstab(mat, &b, &mut y, rtol, opts.inner_max)?;
        }
        if let Some(p) = project {
            p(&mut y);
        }
        // with A y = M x: lambda = (y^T M x) / (y^T M y)
        let (num, den) = match mass {
            Some(m) => (
                y.iter().zip(&x).zip(m).map(|((a, b), w)| a * b * w).sum::<f64>(),
                y.iter().zip(m).map(|(a, w)| a * a * w).sum::<f64>(),
            ),
            None => (dot(&y, &x), dot(&y, &y)),
        };
        let lambda = num / den;
        let scale = den.sqrt();
        for i in 0..n {
            x[i] = y[i] / scale;
        }
        rel_change = ((lambda - lambda_prev) / lambda.max(f64::MIN_POSITIVE)).abs();
        if rel_change <= opts.tol {
            close_streak += 1;
            if close_streak >= 2 {
                return Ok((lambda, x, outer));
            }
        } else {
            close_streak = 0;
        }
        lambda_prev = lambda;
        // reuse y (scaled) as the next warm start
        for v in y.iter_mut() {
            *v /= scale * lambda.max(f64::MIN_POSITIVE);
        }
    }
    Err(Error::EigenNotConverged(opts.max_outer))
}
