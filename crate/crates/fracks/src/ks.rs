//! Exact (integer-order) correlation and Kohn-Sham potentials, and the
//! residual of the closed Kohn-Sham evolution equation that verifies them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::{spatial_derivatives, FieldSnapshot, SpatialGrid};
use crate::potentials::PotentialField;

/// Density window for potential evaluation; outside, 1/n amplification
/// makes the pointwise formulas meaningless and samples are masked
/// non-finite for downstream repair.
pub const POTENTIAL_WINDOW_FLOOR: f64 = 1e-8;
/// Tighter window used by norm-based residual diagnostics.
pub const RESIDUAL_WINDOW_FLOOR: f64 = 1e-6;

/// Single Kohn-Sham orbital sqrt(n) e^{i theta} sampled at one time.
#[derive(Debug, Clone)]
pub struct KsOrbital {
    pub t: f64,
    pub values: Vec<Complex64>,
}

impl KsOrbital {
    pub fn from_snapshot(snap: &FieldSnapshot) -> Self {
        KsOrbital {
            t: snap.t,
            values: snap.orbital_values(),
        }
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }
}

/// Exact correlation potential (gauged at theta(x_min) = 0):
///
///   V_c = -d_t theta + d_xx n/(4n) - (d_x n)^2/(8n^2)
///         - (d_x theta)^2/2 - V_ext
///
/// evaluated where n > 1e-8; masked non-finite elsewhere.
pub fn exact_correlation_potential(
    snap: &FieldSnapshot,
    v_ext: &PotentialField,
) -> Result<PotentialField> {
    if v_ext.grid != snap.grid || v_ext.values.len() != snap.n.len() {
        return Err(Error::GridMismatch);
    }
    let mut values = Vec::with_capacity(snap.n.len());
    let mut any = false;
    for i in 0..snap.n.len() {
        let n = snap.n[i];
        if n > POTENTIAL_WINDOW_FLOOR {
            any = true;
            let v = -snap.dtheta_dt[i] + snap.d2n_dx2[i] / (4.0 * n)
                - snap.dn_dx[i] * snap.dn_dx[i] / (8.0 * n * n)
                - 0.5 * snap.dtheta_dx[i] * snap.dtheta_dx[i]
                - v_ext.values[i];
            values.push(v);
        } else {
            values.push(f64::NAN);
        }
    }
    if !any {
        return Err(Error::EmptyWindow(POTENTIAL_WINDOW_FLOOR));
    }
    Ok(PotentialField {
        grid: snap.grid,
        t: snap.t,
        values,
    })
}

/// V_KS = V_ext + V_c, pointwise. Masked samples stay masked.
pub fn ks_potential_total(v_c: &PotentialField, v_ext: &PotentialField) -> Result<PotentialField> {
    if !v_c.same_layout(v_ext) {
        return Err(Error::GridMismatch);
    }
    Ok(PotentialField {
        grid: v_c.grid,
        t: v_c.t,
        values: v_c
            .values
            .iter()
            .zip(&v_ext.values)
            .map(|(c, e)| c + e)
            .collect(),
    })
}

/// Relative L2 residual of i d_t phi = V_KS phi - (1/2) d_xx phi over the
/// window n > 1e-6, with the time derivative from a central stencil over
/// the orbital triplet at t - dt, t, t + dt.
pub fn tdse_residual(
    phi_minus: &KsOrbital,
    phi: &KsOrbital,
    phi_plus: &KsOrbital,
    v_ks: &PotentialField,
    grid: &SpatialGrid,
    dt_fd: f64,
) -> Result<f64> {
    let len = phi.values.len();
    if phi_minus.values.len() != len || phi_plus.values.len() != len || v_ks.values.len() != len {
        return Err(Error::GridMismatch);
    }
    // All three snapshots share the theta(x_min) = 0 gauge, so the orbital
    // is real (non-negative) at the left edge.
    for orb in [phi_minus, phi, phi_plus] {
        let edge = orb.values[0];
        if edge.im.abs() > 1e-9 * edge.norm().max(1e-30) {
            return Err(Error::GaugeMismatch(edge.im));
        }
    }

    let re: Vec<f64> = phi.values.iter().map(|v| v.re).collect();
    let im: Vec<f64> = phi.values.iter().map(|v| v.im).collect();
    let (_, d2re) = spatial_derivatives(&re, grid)?;
    let (_, d2im) = spatial_derivatives(&im, grid)?;

    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..len {
        let n = phi.values[i].norm_sqr();
        if n <= RESIDUAL_WINDOW_FLOOR || !v_ks.values[i].is_finite() {
            continue;
        }
        let dphi_dt = (phi_plus.values[i] - phi_minus.values[i]) / (2.0 * dt_fd);
        let d2phi = Complex64::new(d2re[i], d2im[i]);
        let r = Complex64::new(0.0, 1.0) * dphi_dt - v_ks.values[i] * phi.values[i]
            + 0.5 * d2phi;
        num += r.norm_sqr();
        den += phi.values[i].norm_sqr();
    }
    if den == 0.0 {
        return Err(Error::EmptyWindow(RESIDUAL_WINDOW_FLOOR));
    }
    Ok((num / den).sqrt())
}
