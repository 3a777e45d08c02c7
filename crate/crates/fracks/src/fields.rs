//! Harmonic two-level basis, grid density assembly, and reconstruction of
//! the orbital phase and every derivative field the potential formulas need.
//!
//! The phase is not evolved; it is closed from continuity. The single
//! Kohn-Sham orbital must carry the open-system density, so
//! d_t n + d_x(n d_x theta) = 0 defines d_x theta, and the gauge
//! theta(x_min) = 0 pins the additive constant.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lindblad::{analytic_state, lindblad_rhs, DephasingParams, TwoLevelDensity};

/// Density floor used for divisions when inverting the continuity equation.
pub const DENSITY_FLOOR: f64 = 1e-12;
/// A floored point whose cumulative flux exceeds this fraction of the peak
/// flux carries current the grid cannot represent.
const FLUX_LEAK_TOL: f64 = 1e-9;

/// Uniform spatial grid straddling the origin with an odd point count, so
/// x = 0 is always sampled.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SpatialGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl SpatialGrid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min < 0.0 && 0.0 < x_max) {
            return Err(Error::BadGrid(format!(
                "grid must straddle the origin, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 3 || n_points.is_multiple_of(2) {
            return Err(Error::BadGrid(format!(
                "n_points must be odd and >= 3, got {n_points}"
            )));
        }
        Ok(SpatialGrid {
            x_min,
            x_max,
            n_points,
        })
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    /// Grid points by convex combination of the endpoints; for a symmetric
    /// range this makes x[i] = -x[n-1-i] exact, so parity identities hold
    /// to the last bit.
    pub fn points(&self) -> Vec<f64> {
        let n = (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|i| (self.x_min * (n - i as f64) + self.x_max * i as f64) / n)
            .collect()
    }

    /// Index of the grid point nearest to x.
    pub fn index_of(&self, x: f64) -> usize {
        (((x - self.x_min) / self.spacing()).round() as isize)
            .clamp(0, self.n_points as isize - 1) as usize
    }

    /// Trapezoid-rule integral of samples over the grid.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        let h = self.spacing();
        let mut acc = 0.0;
        for w in f.windows(2) {
            acc += 0.5 * (w[0] + w[1]) * h;
        }
        acc
    }
}

/// Harmonic-oscillator eigenfunction samples for level 0 or 1
/// (hbar = 1, energies omega/2 and 3 omega/2).
pub fn ho_eigenfunction(
    level: usize,
    omega: f64,
    mass: f64,
    grid: &SpatialGrid,
) -> Result<Vec<f64>> {
    if level > 1 {
        return Err(Error::BadBasis(format!("level {level} not in {{0, 1}}")));
    }
    if omega <= 0.0 || mass <= 0.0 {
        return Err(Error::BadBasis(format!(
            "omega = {omega}, mass = {mass} must be positive"
        )));
    }
    let mw = mass * omega;
    let norm = (mw / std::f64::consts::PI).powf(0.25);
    let xs = grid.points();
    Ok(xs
        .iter()
        .map(|&x| {
            let gauss = (-mw * x * x / 2.0).exp();
            match level {
                0 => norm * gauss,
                _ => norm * (2.0 * mw).sqrt() * x * gauss,
            }
        })
        .collect())
}

const BASIS_NORM_TOL: f64 = 1e-6;

/// The |0>, |1> oscillator basis sampled on a grid, with its energies.
#[derive(Debug, Clone)]
pub struct TwoLevelBasis {
    pub grid: SpatialGrid,
    pub omega_sys: f64,
    pub mass: f64,
    pub phi0: Vec<f64>,
    pub phi1: Vec<f64>,
    pub e0: f64,
    pub e1: f64,
}

impl TwoLevelBasis {
    pub fn new(omega_sys: f64, mass: f64, grid: SpatialGrid) -> Result<Self> {
        let phi0 = ho_eigenfunction(0, omega_sys, mass, &grid)?;
        let phi1 = ho_eigenfunction(1, omega_sys, mass, &grid)?;

        let sq0: Vec<f64> = phi0.iter().map(|v| v * v).collect();
        let sq1: Vec<f64> = phi1.iter().map(|v| v * v).collect();
        let cross: Vec<f64> = phi0.iter().zip(&phi1).map(|(a, b)| a * b).collect();
        let n0 = grid.integrate(&sq0);
        let n1 = grid.integrate(&sq1);
        let ovl = grid.integrate(&cross);
        if (n0 - 1.0).abs() > BASIS_NORM_TOL || (n1 - 1.0).abs() > BASIS_NORM_TOL {
            return Err(Error::BadBasis(format!(
                "eigenfunctions not normalized on this grid: {n0}, {n1}"
            )));
        }
        if ovl.abs() > BASIS_NORM_TOL {
            return Err(Error::BadBasis(format!("basis overlap {ovl} exceeds tolerance")));
        }

        Ok(TwoLevelBasis {
            grid,
            omega_sys,
            mass,
            phi0,
            phi1,
            e0: omega_sys / 2.0,
            e1: 1.5 * omega_sys,
        })
    }

    /// Dephasing parameters carrying this basis' energies.
    pub fn dephasing_params(&self, gamma: f64) -> Result<DephasingParams> {
        DephasingParams::new(gamma, self.e0, self.e1)
    }
}

/// n(x) = rho00 phi0^2 + rho11 phi1^2 + 2 Re(rho01) phi0 phi1, clipped at
/// -1e-12 (deeper negative values signal an invalid density matrix).
pub fn assemble_density(rho: &TwoLevelDensity, basis: &TwoLevelBasis) -> Result<Vec<f64>> {
    let p00 = rho.rho00.re;
    let p11 = rho.rho11.re;
    let coh = 2.0 * rho.rho01.re;
    let xs = basis.grid.points();
    let mut out = Vec::with_capacity(xs.len());
    for (&x, (&f0, &f1)) in xs.iter().zip(basis.phi0.iter().zip(&basis.phi1)) {
        let v = p00 * f0 * f0 + p11 * f1 * f1 + coh * f0 * f1;
        if v < -1e-12 {
            return Err(Error::NegativeDensity { x, value: v });
        }
        out.push(v.max(0.0));
    }
    Ok(out)
}

/// Analytic d_t n(x) = 2 Re(d rho01/dt) phi0 phi1 straight from the master
/// equation; avoids one finite-difference error source.
pub fn density_time_derivative(
    rho: &TwoLevelDensity,
    p: &DephasingParams,
    basis: &TwoLevelBasis,
) -> Vec<f64> {
    let rhs = lindblad_rhs(rho, p);
    let c = 2.0 * rhs.0[0][1].re;
    basis
        .phi0
        .iter()
        .zip(&basis.phi1)
        .map(|(a, b)| c * a * b)
        .collect()
}

/// Central second-order first and second derivatives, one-sided
/// second-order stencils at the boundaries. Exact on quadratics.
pub fn spatial_derivatives(f: &[f64], grid: &SpatialGrid) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = f.len();
    if n < 5 || n != grid.n_points {
        return Err(Error::GridTooCoarse { min: 5, got: n });
    }
    let h = grid.spacing();
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    for j in 1..n - 1 {
        d1[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
        d2[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) / (h * h);
    }
    d1[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d1[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    d2[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
    d2[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (h * h);
    Ok((d1, d2))
}

/// Cumulative trapezoid from the left edge; out[0] = 0.
fn cumulative_trapezoid(f: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(f.len());
    out.push(0.0);
    let mut acc = 0.0;
    for w in f.windows(2) {
        acc += 0.5 * (w[0] + w[1]) * h;
        out.push(acc);
    }
    out
}

/// Closes the continuity equation for the phase:
///
///   d_x theta(x) = -(1/n) int_{x_min}^x d_t n dx',   theta(x_min) = 0.
///
/// Below the density floor the current is taken to be zero; if the
/// accumulated flux at such a point is non-negligible the grid genuinely
/// cannot carry it and the call fails.
pub fn phase_from_continuity(
    n: &[f64],
    dn_dt: &[f64],
    grid: &SpatialGrid,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if n.len() != grid.n_points || dn_dt.len() != grid.n_points {
        return Err(Error::GridMismatch);
    }
    let h = grid.spacing();
    let flux = cumulative_trapezoid(dn_dt, h);
    let flux_peak = flux.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let xs = grid.points();

    let mut dtheta_dx = Vec::with_capacity(n.len());
    for i in 0..n.len() {
        if n[i] > DENSITY_FLOOR {
            dtheta_dx.push(-flux[i] / n[i]);
        } else if flux[i].abs() > FLUX_LEAK_TOL * flux_peak {
            return Err(Error::DensityUnderflow {
                x: xs[i],
                n: n[i],
                flux: flux[i],
            });
        } else {
            dtheta_dx.push(0.0);
        }
    }
    let theta = cumulative_trapezoid(&dtheta_dx, h);
    Ok((theta, dtheta_dx))
}

/// Central time difference of the gauged phase, (theta+ - theta-)/(2 delta).
pub fn phase_time_derivative(
    theta_minus: &[f64],
    theta_plus: &[f64],
    delta: f64,
) -> Result<Vec<f64>> {
    assert!(delta > 0.0);
    if theta_minus.len() != theta_plus.len() {
        return Err(Error::GridMismatch);
    }
    if theta_minus[0].abs() > 1e-12 {
        return Err(Error::GaugeMismatch(theta_minus[0]));
    }
    if theta_plus[0].abs() > 1e-12 {
        return Err(Error::GaugeMismatch(theta_plus[0]));
    }
    Ok(theta_minus
        .iter()
        .zip(theta_plus)
        .map(|(m, p)| (p - m) / (2.0 * delta))
        .collect())
}

/// Default half-width of the central time stencil for d_t theta (a.u.).
pub const PHASE_TIME_DELTA: f64 = 1e-4;

/// Density, phase, and all their derivative fields at one time.
#[derive(Debug, Clone)]
pub struct FieldSnapshot {
    pub grid: SpatialGrid,
    pub t: f64,
    pub n: Vec<f64>,
    pub dn_dx: Vec<f64>,
    pub d2n_dx2: Vec<f64>,
    pub dn_dt: Vec<f64>,
    pub theta: Vec<f64>,
    pub dtheta_dx: Vec<f64>,
    pub dtheta_dt: Vec<f64>,
}

impl FieldSnapshot {
    /// Builds the complete snapshot at time t from the initial state. The
    /// phase time derivative uses a central stencil of half-width `delta`
    /// (one-sided forward at t < delta to keep time non-negative).
    pub fn build(
        rho0: &TwoLevelDensity,
        p: &DephasingParams,
        basis: &TwoLevelBasis,
        t: f64,
        delta: f64,
    ) -> Result<Self> {
        let grid = basis.grid;
        let theta_at = |time: f64| -> Result<Vec<f64>> {
            let rho = analytic_state(rho0, p, time);
            let n = assemble_density(&rho, basis)?;
            let dnt = density_time_derivative(&rho, p, basis);
            Ok(phase_from_continuity(&n, &dnt, &grid)?.0)
        };

        let rho = analytic_state(rho0, p, t);
        let n = assemble_density(&rho, basis)?;
        let dn_dt = density_time_derivative(&rho, p, basis);
        let (theta, dtheta_dx) = phase_from_continuity(&n, &dn_dt, &grid)?;
        let (dn_dx, d2n_dx2) = spatial_derivatives(&n, &grid)?;

        let dtheta_dt = if t >= delta {
            phase_time_derivative(&theta_at(t - delta)?, &theta_at(t + delta)?, delta)?
        } else {
            // Forward one-sided second-order stencil at the time origin.
            let t1 = theta_at(t + delta)?;
            let t2 = theta_at(t + 2.0 * delta)?;
            theta
                .iter()
                .zip(t1.iter().zip(&t2))
                .map(|(th0, (th1, th2))| (-3.0 * th0 + 4.0 * th1 - th2) / (2.0 * delta))
                .collect()
        };

        Ok(FieldSnapshot {
            grid,
            t,
            n,
            dn_dx,
            d2n_dx2,
            dn_dt,
            theta,
            dtheta_dx,
            dtheta_dt,
        })
    }

    /// Orbital samples sqrt(n) e^{i theta} in the theta(x_min) = 0 gauge.
    pub fn orbital_values(&self) -> Vec<Complex64> {
        self.n
            .iter()
            .zip(&self.theta)
            .map(|(&n, &th)| Complex64::from_polar(n.sqrt(), th))
            .collect()
    }

    /// Sup-norm of d_t n + d_x(n d_x theta) over the window n > `floor`.
    pub fn continuity_residual(&self, floor: f64) -> Result<f64> {
        let flux: Vec<f64> = self
            .n
            .iter()
            .zip(&self.dtheta_dx)
            .map(|(n, d)| n * d)
            .collect();
        let (dflux, _) = spatial_derivatives(&flux, &self.grid)?;
        let mut worst: f64 = 0.0;
        for ((&n, &dnt), &df) in self.n.iter().zip(&self.dn_dt).zip(&dflux) {
            if n > floor {
                worst = worst.max((dnt + df).abs());
            }
        }
        Ok(worst)
    }
}
