//! Space-fractional Kohn-Sham orbital, its fractional derivative
//! components, the fractional correlation/K-S potentials, and the
//! neighbor-mean singularity repair applied to masked or non-finite
//! samples.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::FieldSnapshot;
use crate::fractional::{
    branch_power, frac_power, gamma_fn, mittag_leffler, FracOrder, PowerBranchMode,
};
use crate::ks::{KsOrbital, POTENTIAL_WINDOW_FLOOR};
use crate::potentials::PotentialField;

/// Fractional-scheme configuration: order, power branch, and the longest
/// interior non-finite run the repair step may fill.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FracConfig {
    pub order: FracOrder,
    pub branch: PowerBranchMode,
    pub repair_max_run: usize,
}

impl FracConfig {
    pub fn new(order: FracOrder, branch: PowerBranchMode, repair_max_run: usize) -> Result<Self> {
        if repair_max_run < 1 {
            return Err(Error::Config(
                "repair_max_run must be at least 1".to_string(),
            ));
        }
        Ok(FracConfig {
            order,
            branch,
            repair_max_run,
        })
    }
}

impl Default for FracConfig {
    /// alpha = 0.3 with the signed branch, repairing runs up to 3 points.
    fn default() -> Self {
        FracConfig {
            order: FracOrder::new(0.3).unwrap(),
            branch: PowerBranchMode::Signed,
            repair_max_run: 3,
        }
    }
}

/// Truncated fractional orbital sqrt(n) (1 + i theta / Gamma(1 + alpha)).
/// Truncation breaks |phi|^2 = n whenever theta != 0; that is recorded,
/// not repaired.
pub fn frac_orbital_trunc(snap: &FieldSnapshot, cfg: &FracConfig) -> KsOrbital {
    let g = gamma_fn(1.0 + cfg.order.alpha()).expect("1 + alpha is pole-free");
    let values = snap
        .n
        .iter()
        .zip(&snap.theta)
        .map(|(&n, &th)| n.sqrt() * Complex64::new(1.0, th / g))
        .collect();
    KsOrbital {
        t: snap.t,
        values,
    }
}

/// Full fractional orbital sqrt(n) E_alpha(i theta).
pub fn frac_orbital_full(snap: &FieldSnapshot, cfg: &FracConfig) -> Result<KsOrbital> {
    let mut values = Vec::with_capacity(snap.n.len());
    for (&n, &th) in snap.n.iter().zip(&snap.theta) {
        let ml = mittag_leffler(cfg.order, Complex64::new(0.0, th))?;
        values.push(n.sqrt() * ml);
    }
    Ok(KsOrbital {
        t: snap.t,
        values,
    })
}

/// Fractional density partial of the orbital:
/// E_alpha(i theta) Gamma(3/2) Gamma^{-1}(3/2 - alpha) n^{1/2 - alpha},
/// masked non-finite outside the n > 1e-8 window.
pub fn frac_partial_density(snap: &FieldSnapshot, cfg: &FracConfig) -> Result<Vec<Complex64>> {
    let alpha = cfg.order.alpha();
    let coeff = gamma_fn(1.5)? / gamma_fn(1.5 - alpha)?;
    let mut out = Vec::with_capacity(snap.n.len());
    for (&n, &th) in snap.n.iter().zip(&snap.theta) {
        if n > POTENTIAL_WINDOW_FLOOR {
            let ml = mittag_leffler(cfg.order, Complex64::new(0.0, th))?;
            out.push(ml * coeff * n.powf(0.5 - alpha));
        } else {
            out.push(Complex64::new(f64::NAN, f64::NAN));
        }
    }
    Ok(out)
}

/// Fractional phase partial of the orbital:
/// i sqrt(n) alpha^{-alpha} theta^{1 - alpha} E_alpha(i theta),
/// with theta^{1-alpha} through the configured branch. At alpha = 1 the
/// exponent vanishes and theta^0 = 1 identically.
pub fn frac_partial_phase(snap: &FieldSnapshot, cfg: &FracConfig) -> Result<Vec<Complex64>> {
    let alpha = cfg.order.alpha();
    let scale = alpha.powf(-alpha);
    let exponent = 1.0 - alpha;
    let mut out = Vec::with_capacity(snap.n.len());
    for (&n, &th) in snap.n.iter().zip(&snap.theta) {
        let theta_pow = if exponent < 1e-15 {
            1.0
        } else {
            branch_power(th, exponent, cfg.branch)?
        };
        let ml = mittag_leffler(cfg.order, Complex64::new(0.0, th))?;
        out.push(Complex64::new(0.0, 1.0) * n.sqrt() * scale * theta_pow * ml);
    }
    Ok(out)
}

/// Fractional spatial derivative by the alpha-chain rule:
/// d_x^a phi = d_n^a phi (d_x n)^a + d_theta^a phi (d_x theta)^a.
pub fn frac_spatial_derivative(snap: &FieldSnapshot, cfg: &FracConfig) -> Result<Vec<Complex64>> {
    let pn = frac_partial_density(snap, cfg)?;
    let pth = frac_partial_phase(snap, cfg)?;
    let mut out = Vec::with_capacity(snap.n.len());
    for i in 0..snap.n.len() {
        let dn_pow = frac_power(snap.dn_dx[i], cfg.order, cfg.branch)?;
        let dth_pow = frac_power(snap.dtheta_dx[i], cfg.order, cfg.branch)?;
        out.push(pn[i] * dn_pow + pth[i] * dth_pow);
    }
    Ok(out)
}

/// Fractional correlation potential:
///
///   Vc~ = -d_t theta * Gamma(1+a) / (Gamma(1+a)^2 + theta^2)
///         + (1/(2 sqrt n)) Gamma(3/2) Gamma^{-1}(3/2 - a)
///           n^{1/2 - a} (d_x n)^a
///         - V_ext
///
/// on the n > 1e-8 window; masked non-finite elsewhere for repair.
pub fn frac_correlation_potential(
    snap: &FieldSnapshot,
    v_ext: &PotentialField,
    cfg: &FracConfig,
) -> Result<PotentialField> {
    if v_ext.grid != snap.grid || v_ext.values.len() != snap.n.len() {
        return Err(Error::GridMismatch);
    }
    let alpha = cfg.order.alpha();
    let g1a = gamma_fn(1.0 + alpha)?;
    let coeff = gamma_fn(1.5)? / gamma_fn(1.5 - alpha)?;

    let mut values = Vec::with_capacity(snap.n.len());
    let mut any = false;
    for i in 0..snap.n.len() {
        let n = snap.n[i];
        if n > POTENTIAL_WINDOW_FLOOR {
            any = true;
            let th = snap.theta[i];
            let phase_term = -snap.dtheta_dt[i] * g1a / (g1a * g1a + th * th);
            let dn_pow = frac_power(snap.dn_dx[i], cfg.order, cfg.branch)?;
            let density_term = 0.5 / n.sqrt() * coeff * n.powf(0.5 - alpha) * dn_pow;
            values.push(phase_term + density_term - v_ext.values[i]);
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

/// Fractional K-S potential Vks~ = Vc~ + V_ext, pointwise.
pub fn frac_ks_potential(
    v_c_frac: &PotentialField,
    v_ext: &PotentialField,
) -> Result<PotentialField> {
    if !v_c_frac.same_layout(v_ext) {
        return Err(Error::GridMismatch);
    }
    Ok(PotentialField {
        grid: v_c_frac.grid,
        t: v_c_frac.t,
        values: v_c_frac
            .values
            .iter()
            .zip(&v_ext.values)
            .map(|(c, e)| c + e)
            .collect(),
    })
}

/// Outcome of a singularity repair pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct RepairStats {
    /// Interior non-finite points replaced by neighbor means.
    pub repaired_points: usize,
    /// Masked points at the left window margin, left untouched.
    pub masked_left: usize,
    /// Masked points at the right window margin, left untouched.
    pub masked_right: usize,
}

/// Replaces each interior non-finite sample by the arithmetic mean of the
/// nearest finite neighbors on each side. Interior runs longer than
/// `cfg.repair_max_run` are unrepairable and rejected with the offending
/// range identified. Runs touching the field boundary are window margins:
/// they stay masked and are only counted.
///
/// Repair is idempotent: a repaired field passes through unchanged.
pub fn singularity_repair(
    field: &PotentialField,
    cfg: &FracConfig,
) -> Result<(PotentialField, RepairStats)> {
    let n = field.values.len();
    let (first, last) = match field.finite_range() {
        Some(range) => range,
        None => {
            return Err(Error::UnrepairableSingularity {
                alpha: cfg.order.alpha(),
                x: field.grid.x_min,
                len: n,
                max_run: cfg.repair_max_run,
            })
        }
    };

    let mut values = field.values.clone();
    let mut stats = RepairStats {
        repaired_points: 0,
        masked_left: first,
        masked_right: n - 1 - last,
    };
    let xs = field.grid.points();

    let mut i = first;
    while i <= last {
        if values[i].is_finite() {
            i += 1;
            continue;
        }
        let run_start = i;
        while i <= last && !values[i].is_finite() {
            i += 1;
        }
        let run_len = i - run_start;
        if run_len > cfg.repair_max_run {
            return Err(Error::UnrepairableSingularity {
                alpha: cfg.order.alpha(),
                x: xs[run_start],
                len: run_len,
                max_run: cfg.repair_max_run,
            });
        }
        // Nearest finite neighbors bound the run on both sides by
        // construction (the scan starts and ends at finite samples).
        let mean = 0.5 * (values[run_start - 1] + values[i]);
        for v in values.iter_mut().take(i).skip(run_start) {
            *v = mean;
        }
        stats.repaired_points += run_len;
    }

    Ok((
        PotentialField {
            grid: field.grid,
            t: field.t,
            values,
        },
        stats,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FieldSnapshot, SpatialGrid, TwoLevelBasis, PHASE_TIME_DELTA};
    use crate::lindblad::{DephasingParams, TwoLevelDensity};
    use crate::potentials::eval_harmonic;

    fn grid(npts: usize) -> SpatialGrid {
        SpatialGrid::new(-8.0, 8.0, npts).unwrap()
    }

    fn snapshot(npts: usize, t: f64, rho: &TwoLevelDensity) -> FieldSnapshot {
        let basis = TwoLevelBasis::new(1.0, 1.0, grid(npts)).unwrap();
        let p = DephasingParams::new(0.15, 0.5, 1.5).unwrap();
        FieldSnapshot::build(rho, &p, &basis, t, PHASE_TIME_DELTA).unwrap()
    }

    fn cfg(alpha: f64, branch: PowerBranchMode) -> FracConfig {
        FracConfig::new(FracOrder::new(alpha).unwrap(), branch, 3).unwrap()
    }

    fn zero_field(g: &SpatialGrid, t: f64) -> PotentialField {
        PotentialField {
            grid: *g,
            t,
            values: vec![0.0; g.n_points],
        }
    }

    #[test]
    fn trunc_orbital_cases() {
        let rho = TwoLevelDensity::diagonal(1.0, 0.0).unwrap();
        let snap = snapshot(801, 0.0, &rho);
        let orb = frac_orbital_trunc(&snap, &cfg(0.3, PowerBranchMode::Signed));
        // theta == 0 for the stationary state: phi = sqrt(n) exactly.
        for (v, &n) in orb.values.iter().zip(&snap.n) {
            assert_eq!(v.im, 0.0);
            assert_eq!(v.re, n.sqrt());
        }

        let rho = TwoLevelDensity::equal_superposition();
        let snap = snapshot(801, 0.9, &rho);
        let orb = frac_orbital_trunc(&snap, &cfg(1.0, PowerBranchMode::Signed));
        // Gamma(2) = 1: phi = sqrt(n)(1 + i theta); |phi|^2 = n (1 + theta^2).
        for i in 0..snap.n.len() {
            let want = snap.n[i].sqrt() * Complex64::new(1.0, snap.theta[i]);
            assert!((orb.values[i] - want).norm() < 1e-14);
            let norm_sq = snap.n[i] * (1.0 + snap.theta[i] * snap.theta[i]);
            assert!((orb.values[i].norm_sqr() - norm_sq).abs() < 1e-12);
        }
    }

    #[test]
    fn full_orbital_reduces_to_ansatz_at_alpha_one() {
        let rho = TwoLevelDensity::equal_superposition();
        let snap = snapshot(801, 1.2, &rho);
        let orb = frac_orbital_full(&snap, &cfg(1.0, PowerBranchMode::Signed)).unwrap();
        for i in 0..snap.n.len() {
            let want = Complex64::from_polar(snap.n[i].sqrt(), snap.theta[i]);
            assert!((orb.values[i] - want).norm() < 1e-10);
        }
    }

    #[test]
    fn full_vs_trunc_small_theta() {
        // Synthetic phase ramp over [-0.1, 0.1]: the truncation error is
        // governed by the dropped third series term theta^2 / Gamma(1+2a).
        let g = SpatialGrid::new(-1.0, 1.0, 41).unwrap();
        let xs = g.points();
        let snap = FieldSnapshot {
            grid: g,
            t: 0.0,
            n: xs.iter().map(|x| 0.3 + x * x).collect(),
            dn_dx: vec![0.0; 41],
            d2n_dx2: vec![0.0; 41],
            dn_dt: vec![0.0; 41],
            theta: xs.iter().map(|x| 0.1 * x).collect(),
            dtheta_dx: vec![0.0; 41],
            dtheta_dt: vec![0.0; 41],
        };
        for alpha in [0.3, 0.5, 0.8] {
            let c = cfg(alpha, PowerBranchMode::Signed);
            let bound_coeff = 1.0 / crate::fractional::gamma_fn(1.0 + 2.0 * alpha).unwrap();
            let full = frac_orbital_full(&snap, &c).unwrap();
            let trunc = frac_orbital_trunc(&snap, &c);
            for i in 0..snap.n.len() {
                let diff = (full.values[i] - trunc.values[i]).norm();
                let theta_sq = snap.theta[i] * snap.theta[i];
                let bound = 1.15 * theta_sq * bound_coeff * snap.n[i].sqrt() + 1e-15;
                assert!(diff <= bound, "alpha {alpha} at {i}: {diff} > {bound}");
            }
        }
        // At alpha = 0.5 the coefficient is Gamma(2) = 1 and the plain
        // 0.01 sqrt(n) form holds over the whole |theta| <= 0.1 ramp.
        let c = cfg(0.5, PowerBranchMode::Signed);
        let full = frac_orbital_full(&snap, &c).unwrap();
        let trunc = frac_orbital_trunc(&snap, &c);
        for i in 0..snap.n.len() {
            let diff = (full.values[i] - trunc.values[i]).norm();
            assert!(diff < 0.01 * snap.n[i].sqrt() + 1e-15, "at {i}: {diff}");
        }
    }

    #[test]
    fn partial_density_values() {
        let rho = TwoLevelDensity::diagonal(1.0, 0.0).unwrap();
        let snap = snapshot(801, 0.0, &rho);
        // alpha = 1, theta = 0: the classical d sqrt(n)/dn = n^{-1/2}/2.
        let out = frac_partial_density(&snap, &cfg(1.0, PowerBranchMode::Signed)).unwrap();
        for (v, &n) in out.iter().zip(&snap.n) {
            if n > POTENTIAL_WINDOW_FLOOR {
                assert!((v.re - 0.5 / n.sqrt()).abs() < 1e-10 * (0.5 / n.sqrt()));
                assert!(v.im.abs() < 1e-15);
            } else {
                assert!(v.re.is_nan());
            }
        }

        // Pinned spot: alpha = 0.3, n = phi0(-1)^2.
        let i = snap.grid.index_of(-1.0);
        let out = frac_partial_density(&snap, &cfg(0.3, PowerBranchMode::Signed)).unwrap();
        assert!((out[i].re - 0.704_771_856_589_309_4).abs() < 1e-9, "{}", out[i].re);

        // Doubling n scales the theta = 0 value by 2^{1/2 - alpha}.
        let mut doubled = snap.clone();
        for v in &mut doubled.n {
            *v *= 2.0;
        }
        let out2 = frac_partial_density(&doubled, &cfg(0.3, PowerBranchMode::Signed)).unwrap();
        let ratio = out2[i].re / out[i].re;
        assert!((ratio - 2.0f64.powf(0.2)).abs() < 1e-12);
    }

    #[test]
    fn partial_phase_values() {
        let rho = TwoLevelDensity::equal_superposition();
        let snap = snapshot(801, 0.9, &rho);
        // alpha = 1: i sqrt(n) E_1(i theta) = i sqrt(n) e^{i theta}.
        let out = frac_partial_phase(&snap, &cfg(1.0, PowerBranchMode::Signed)).unwrap();
        for ((v, &n), &th) in out.iter().zip(&snap.n).zip(&snap.theta) {
            let want = Complex64::new(0.0, 1.0) * Complex64::from_polar(n.sqrt(), th);
            assert!((v - want).norm() < 1e-10);
        }

        // theta = 0 kills the term for alpha < 1.
        let rho = TwoLevelDensity::diagonal(1.0, 0.0).unwrap();
        let snap0 = snapshot(801, 0.0, &rho);
        let out = frac_partial_phase(&snap0, &cfg(0.5, PowerBranchMode::Signed)).unwrap();
        assert!(out.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn partial_phase_pinned_value() {
        // alpha = 0.5, theta = 1, n = 1: i sqrt(2) E_{1/2}(i).
        let g = SpatialGrid::new(-1.0, 1.0, 5).unwrap();
        let snap = FieldSnapshot {
            grid: g,
            t: 0.0,
            n: vec![1.0; 5],
            dn_dx: vec![0.0; 5],
            d2n_dx2: vec![0.0; 5],
            dn_dt: vec![0.0; 5],
            theta: vec![1.0; 5],
            dtheta_dx: vec![0.0; 5],
            dtheta_dt: vec![0.0; 5],
        };
        let out = frac_partial_phase(&snap, &cfg(0.5, PowerBranchMode::Signed)).unwrap();
        // E_{1/2}(i) = 0.36787944117144232 + 0.60715770584139373 i
        let ml = Complex64::new(0.36787944117144232, 0.607_157_705_841_393_7);
        let want = Complex64::new(0.0, 1.0) * 2.0f64.sqrt() * ml;
        assert!((out[2] - want).norm() < 1e-12, "{}", out[2]);
    }

    #[test]
    fn spatial_derivative_alpha_one_matches_stencil() {
        let rho = TwoLevelDensity::equal_superposition();
        let snap = snapshot(1601, 0.7, &rho);
        let c = cfg(1.0, PowerBranchMode::Signed);
        let chain = frac_spatial_derivative(&snap, &c).unwrap();
        let full = frac_orbital_full(&snap, &c).unwrap();
        let re: Vec<f64> = full.values.iter().map(|v| v.re).collect();
        let im: Vec<f64> = full.values.iter().map(|v| v.im).collect();
        let (dre, _) = crate::fields::spatial_derivatives(&re, &snap.grid).unwrap();
        let (dim, _) = crate::fields::spatial_derivatives(&im, &snap.grid).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..snap.n.len() {
            if snap.n[i] > 1e-6 {
                let direct = Complex64::new(dre[i], dim[i]);
                worst = worst.max((chain[i] - direct).norm());
            }
        }
        assert!(worst < 2e-3, "chain-rule vs stencil mismatch {worst}");
    }

    #[test]
    fn spatial_derivative_zero_fields_and_parity() {
        let g = SpatialGrid::new(-1.0, 1.0, 5).unwrap();
        let flat = FieldSnapshot {
            grid: g,
            t: 0.0,
            n: vec![0.5; 5],
            dn_dx: vec![0.0; 5],
            d2n_dx2: vec![0.0; 5],
            dn_dt: vec![0.0; 5],
            theta: vec![0.2; 5],
            dtheta_dx: vec![0.0; 5],
            dtheta_dt: vec![0.0; 5],
        };
        let out =
            frac_spatial_derivative(&flat, &cfg(0.4, PowerBranchMode::Signed)).unwrap();
        assert!(out.iter().all(|v| v.norm() == 0.0));

        // Even n with theta = 0 and the signed branch: output odd in x.
        let rho = TwoLevelDensity::diagonal(0.5, 0.5).unwrap();
        let snap = snapshot(801, 0.4, &rho);
        let out = frac_spatial_derivative(&snap, &cfg(0.3, PowerBranchMode::Signed)).unwrap();
        let len = out.len();
        for i in 0..len / 2 {
            let a = out[i];
            let b = out[len - 1 - i];
            if a.re.is_finite() && b.re.is_finite() {
                assert!((a + b).norm() < 1e-9, "odd parity at {i}");
            }
        }
    }

    #[test]
    fn correlation_potential_spot_value() {
        // theta = 0 stationary state, x = -1, alpha = 0.3, V_ext = 0:
        // independent term-by-term value 0.59415730346871428.
        let rho = TwoLevelDensity::diagonal(1.0, 0.0).unwrap();
        let snap = snapshot(801, 0.0, &rho);
        let v = frac_correlation_potential(
            &snap,
            &zero_field(&snap.grid, snap.t),
            &cfg(0.3, PowerBranchMode::Signed),
        )
        .unwrap();
        let i = snap.grid.index_of(-1.0);
        assert!(
            (v.values[i] - 0.594_157_303_468_714_3).abs() < 1e-3,
            "{}",
            v.values[i]
        );
    }

    #[test]
    fn correlation_potential_vext_linearity() {
        let rho = TwoLevelDensity::equal_superposition();
        let snap = snapshot(801, 0.8, &rho);
        let c = cfg(0.3, PowerBranchMode::Signed);
        let va = eval_harmonic(1.0, 1.0, &snap.grid, snap.t);
        let vb = eval_harmonic(0.4, 1.0, &snap.grid, snap.t);
        let fa = frac_correlation_potential(&snap, &va, &c).unwrap();
        let fb = frac_correlation_potential(&snap, &vb, &c).unwrap();
        for i in 0..fa.values.len() {
            if fa.values[i].is_finite() {
                let diff = fa.values[i] - fb.values[i];
                let want = vb.values[i] - va.values[i];
                assert!((diff - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ks_potential_cancellation_and_alpha_one_identity() {
        let rho = TwoLevelDensity::equal_superposition();
        let snap = snapshot(801, 0.8, &rho);
        let c = cfg(0.3, PowerBranchMode::Signed);
        let va = eval_harmonic(1.0, 1.0, &snap.grid, snap.t);
        let vb = eval_harmonic(0.3, 1.0, &snap.grid, snap.t);
        let ks_a = frac_ks_potential(&frac_correlation_potential(&snap, &va, &c).unwrap(), &va)
            .unwrap();
        let ks_b = frac_ks_potential(&frac_correlation_potential(&snap, &vb, &c).unwrap(), &vb)
            .unwrap();
        for (a, b) in ks_a.values.iter().zip(&ks_b.values) {
            if a.is_finite() {
                assert!((a - b).abs() < 1e-12);
            }
        }

        // theta = 0, alpha = 1, signed branch: the density term collapses to
        // d_x n/(4n), so Vc~ = d_x n/(4n) - V_ext exactly.
        let rho = TwoLevelDensity::diagonal(1.0, 0.0).unwrap();
        let snap = snapshot(801, 0.0, &rho);
        let v = frac_correlation_potential(
            &snap,
            &va,
            &cfg(1.0, PowerBranchMode::Signed),
        )
        .unwrap();
        for i in 0..snap.n.len() {
            if v.values[i].is_finite() {
                let want = snap.dn_dx[i] / (4.0 * snap.n[i]) - va.values[i];
                assert!((v.values[i] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn principal_real_branch_scales_negative_slopes() {
        let rho = TwoLevelDensity::diagonal(1.0, 0.0).unwrap();
        let snap = snapshot(801, 0.0, &rho);
        let zero = zero_field(&snap.grid, snap.t);
        let signed = frac_correlation_potential(&snap, &zero, &cfg(0.3, PowerBranchMode::Signed))
            .unwrap();
        let principal =
            frac_correlation_potential(&snap, &zero, &cfg(0.3, PowerBranchMode::PrincipalReal))
                .unwrap();
        let cos_factor = (0.3 * std::f64::consts::PI).cos();
        for i in 0..snap.n.len() {
            if !signed.values[i].is_finite() {
                continue;
            }
            if snap.dn_dx[i] < 0.0 {
                // theta = 0: the whole value is the density term, scaled by
                // -cos(alpha pi) relative to the signed branch.
                let want = -signed.values[i] * cos_factor;
                assert!((principal.values[i] - want).abs() < 1e-12);
            } else {
                assert_eq!(principal.values[i], signed.values[i]);
            }
        }

        // Signed branch on an even density: the density term is odd in x.
        let len = signed.values.len();
        for i in 0..len / 2 {
            let a = signed.values[i];
            let b = signed.values[len - 1 - i];
            if a.is_finite() && b.is_finite() {
                assert!((a + b).abs() < 1e-9, "odd parity at {i}");
            }
        }
    }

    #[test]
    fn strict_branch_errors_on_negative_slope() {
        let rho = TwoLevelDensity::diagonal(1.0, 0.0).unwrap();
        let snap = snapshot(801, 0.0, &rho);
        let zero = zero_field(&snap.grid, snap.t);
        assert!(matches!(
            frac_correlation_potential(&snap, &zero, &cfg(0.3, PowerBranchMode::Strict)),
            Err(Error::StrictNegativeBase(_))
        ));
    }

    #[test]
    fn repair_identity_on_finite_field() {
        let g = grid(801);
        let field = PotentialField {
            grid: g,
            t: 0.0,
            values: g.points().iter().map(|x| x * x).collect(),
        };
        let c = FracConfig::default();
        let (out, stats) = singularity_repair(&field, &c).unwrap();
        assert_eq!(out.values, field.values);
        assert_eq!(stats, RepairStats::default());
    }

    #[test]
    fn repair_single_point_mean() {
        let g = SpatialGrid::new(-1.0, 1.0, 5).unwrap();
        let field = PotentialField {
            grid: g,
            t: 0.0,
            values: vec![1.0, 2.0, f64::NAN, 4.0, 5.0],
        };
        let (out, stats) = singularity_repair(&field, &FracConfig::default()).unwrap();
        assert_eq!(out.values[2], 3.0);
        assert_eq!(stats.repaired_points, 1);

        // Idempotence.
        let (again, stats2) = singularity_repair(&out, &FracConfig::default()).unwrap();
        assert_eq!(again.values, out.values);
        assert_eq!(stats2.repaired_points, 0);
    }

    #[test]
    fn repair_run_mean_and_margins() {
        let g = SpatialGrid::new(-1.0, 1.0, 9).unwrap();
        let field = PotentialField {
            grid: g,
            t: 0.0,
            values: vec![
                f64::NAN,
                2.0,
                f64::NAN,
                f64::NAN,
                8.0,
                1.0,
                f64::NAN,
                f64::NAN,
                f64::NAN,
            ],
        };
        let (out, stats) = singularity_repair(&field, &FracConfig::default()).unwrap();
        // Interior two-point run filled with the bounding mean.
        assert_eq!(out.values[2], 5.0);
        assert_eq!(out.values[3], 5.0);
        // Boundary runs stay masked.
        assert!(out.values[0].is_nan());
        assert!(out.values[8].is_nan());
        assert_eq!(stats.repaired_points, 2);
        assert_eq!(stats.masked_left, 1);
        assert_eq!(stats.masked_right, 3);
    }

    #[test]
    fn repair_rejects_long_runs() {
        let g = SpatialGrid::new(-1.0, 1.0, 9).unwrap();
        let mut values = vec![1.0; 9];
        for v in values.iter_mut().take(7).skip(2) {
            *v = f64::NAN;
        }
        let field = PotentialField {
            grid: g,
            t: 0.0,
            values,
        };
        let err = singularity_repair(&field, &FracConfig::default()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        match err {
            Error::UnrepairableSingularity { len, max_run, .. } => {
                assert_eq!(len, 5);
                assert_eq!(max_run, 3);
            }
            other => panic!("unexpected error {other:?}"),
        }

        let all_nan = PotentialField {
            grid: g,
            t: 0.0,
            values: vec![f64::NAN; 9],
        };
        assert!(singularity_repair(&all_nan, &FracConfig::default()).is_err());
    }
}
