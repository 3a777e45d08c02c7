//! Two-level density matrix evolution under pure dephasing.
//!
//! The master equation drives only the coherences: with the collapse
//! operator sqrt(gamma) |0><0| the populations are frozen and
//! rho01(t) = rho01(0) exp(-(gamma + i(E1 - E0)) t). A classical RK4
//! integrator of the full matrix equation serves as the independent
//! check on the closed form.

use num_complex::Complex64;

use crate::error::{Error, Result};

const HERMITICITY_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const POSITIVITY_TOL: f64 = 1e-12;

/// 2x2 density matrix of the dephasing system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelDensity {
    pub rho00: Complex64,
    pub rho01: Complex64,
    pub rho10: Complex64,
    pub rho11: Complex64,
}

impl TwoLevelDensity {
    /// Validates hermiticity, unit trace, and positivity.
    pub fn new(
        rho00: Complex64,
        rho01: Complex64,
        rho10: Complex64,
        rho11: Complex64,
    ) -> Result<Self> {
        let herm = (rho10 - rho01.conj()).norm().max(rho00.im.abs()).max(rho11.im.abs());
        if herm > HERMITICITY_TOL {
            return Err(Error::DensityInvariant {
                what: "hermiticity",
                residual: herm,
                tolerance: HERMITICITY_TOL,
            });
        }
        let trace = (rho00.re + rho11.re - 1.0).abs();
        if trace > TRACE_TOL {
            return Err(Error::DensityInvariant {
                what: "unit trace",
                residual: trace,
                tolerance: TRACE_TOL,
            });
        }
        let pos = rho01.norm_sqr() - rho00.re * rho11.re;
        if pos > POSITIVITY_TOL {
            return Err(Error::DensityInvariant {
                what: "positivity",
                residual: pos,
                tolerance: POSITIVITY_TOL,
            });
        }
        Ok(TwoLevelDensity {
            rho00,
            rho01,
            rho10,
            rho11,
        })
    }

    /// Hermitian constructor from the population of |0> and the coherence.
    pub fn from_parts(rho00: f64, rho01: Complex64) -> Result<Self> {
        TwoLevelDensity::new(
            Complex64::new(rho00, 0.0),
            rho01,
            rho01.conj(),
            Complex64::new(1.0 - rho00, 0.0),
        )
    }

    /// Diagonal (incoherent) state.
    pub fn diagonal(p0: f64, p1: f64) -> Result<Self> {
        if (p0 + p1 - 1.0).abs() > TRACE_TOL {
            return Err(Error::DensityInvariant {
                what: "unit trace",
                residual: (p0 + p1 - 1.0).abs(),
                tolerance: TRACE_TOL,
            });
        }
        TwoLevelDensity::new(
            Complex64::new(p0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(p1, 0.0),
        )
    }

    /// The (|0> + |1>)/sqrt(2) pure state: every entry 0.5.
    pub fn equal_superposition() -> Self {
        TwoLevelDensity {
            rho00: Complex64::new(0.5, 0.0),
            rho01: Complex64::new(0.5, 0.0),
            rho10: Complex64::new(0.5, 0.0),
            rho11: Complex64::new(0.5, 0.0),
        }
    }

    #[cfg(test)]
    pub(crate) fn raw_unchecked(
        rho00: Complex64,
        rho01: Complex64,
        rho10: Complex64,
        rho11: Complex64,
    ) -> Self {
        TwoLevelDensity {
            rho00,
            rho01,
            rho10,
            rho11,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.rho00 + self.rho11
    }

    /// Tr(rho^2).
    pub fn purity(&self) -> f64 {
        (self.rho00 * self.rho00
            + self.rho01 * self.rho10
            + self.rho10 * self.rho01
            + self.rho11 * self.rho11)
            .re
    }
}

/// Dephasing rate and the two system energies (atomic units).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DephasingParams {
    pub gamma: f64,
    pub e0: f64,
    pub e1: f64,
}

impl DephasingParams {
    pub fn new(gamma: f64, e0: f64, e1: f64) -> Result<Self> {
        if gamma < 0.0 {
            return Err(Error::BadDephasingParams(format!("gamma = {gamma} < 0")));
        }
        if e1 < e0 {
            return Err(Error::BadDephasingParams(format!("E1 = {e1} < E0 = {e0}")));
        }
        Ok(DephasingParams { gamma, e0, e1 })
    }

    pub fn level_splitting(&self) -> f64 {
        self.e1 - self.e0
    }
}

/// Unnormalized 2x2 complex matrix used for derivatives and RK4 stages.
#[derive(Debug, Clone, Copy)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    fn zeros() -> Self {
        Mat2([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    fn diag(a: Complex64, b: Complex64) -> Self {
        let mut m = Mat2::zeros();
        m.0[0][0] = a;
        m.0[1][1] = b;
        m
    }

    fn mul(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * other.0[0][j] + self.0[i][1] * other.0[1][j];
            }
        }
        out
    }

    fn add(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] + other.0[i][j];
            }
        }
        out
    }

    fn sub(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] - other.0[i][j];
            }
        }
        out
    }

    fn scale(&self, s: Complex64) -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] * s;
            }
        }
        out
    }

    fn adjoint(&self) -> Mat2 {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    fn from_density(rho: &TwoLevelDensity) -> Mat2 {
        Mat2([[rho.rho00, rho.rho01], [rho.rho10, rho.rho11]])
    }
}

/// Right-hand side of the dephasing master equation,
///
///   d rho/dt = i [H, rho] + sum_i (2 L rho L+ - L+ L rho - rho L+ L),
///
/// with H = diag(E0, E1) and L = sqrt(gamma) diag(1, 0). The commutator
/// sign is the one that reproduces the closed-form coherence
/// rho01 ~ e^{-i(E1-E0)t} of [`analytic_state`]; the dissipator gives the
/// convention-independent -gamma rho01. Diagonal entries come out exactly
/// zero: pure dephasing, no relaxation.
pub fn lindblad_rhs(rho: &TwoLevelDensity, p: &DephasingParams) -> Mat2 {
    let m = Mat2::from_density(rho);
    let h = Mat2::diag(Complex64::new(p.e0, 0.0), Complex64::new(p.e1, 0.0));
    let l = Mat2::diag(Complex64::new(p.gamma.sqrt(), 0.0), Complex64::new(0.0, 0.0));
    let l_dag = l.adjoint();

    let commutator = h.mul(&m).sub(&m.mul(&h));
    let unitary = commutator.scale(Complex64::new(0.0, 1.0));

    let ldl = l_dag.mul(&l);
    let dissipator = l
        .mul(&m)
        .mul(&l_dag)
        .scale(Complex64::new(2.0, 0.0))
        .sub(&ldl.mul(&m))
        .sub(&m.mul(&ldl));

    unitary.add(&dissipator)
}

/// Closed-form state at time t >= 0: populations frozen,
/// rho01(t) = rho01(0) e^{-(gamma + i(E1-E0)) t}.
pub fn analytic_state(rho0: &TwoLevelDensity, p: &DephasingParams, t: f64) -> TwoLevelDensity {
    let decay = Complex64::new(-p.gamma * t, -(p.e1 - p.e0) * t).exp();
    let rho01 = rho0.rho01 * decay;
    TwoLevelDensity {
        rho00: rho0.rho00,
        rho01,
        rho10: rho01.conj(),
        rho11: rho0.rho11,
    }
}

const RK4_TRACE_DRIFT_TOL: f64 = 1e-9;

/// Classical fourth-order integration of [`lindblad_rhs`]; the independent
/// numerical check on [`analytic_state`]. Errors if the trace drifts
/// beyond 1e-9.
pub fn propagate_rk4(
    rho0: &TwoLevelDensity,
    p: &DephasingParams,
    t_end: f64,
    dt: f64,
) -> Result<TwoLevelDensity> {
    assert!(dt > 0.0, "dt must be positive");
    assert!(t_end >= 0.0, "t_end must be non-negative");

    let mut state = *rho0;
    let mut t = 0.0;
    while t < t_end - 1e-15 {
        let step = dt.min(t_end - t);
        state = rk4_step(&state, p, step);
        t += step;
    }
    let drift = (state.trace().re - 1.0).abs().max(state.trace().im.abs());
    if drift > RK4_TRACE_DRIFT_TOL {
        return Err(Error::DensityInvariant {
            what: "trace drift during RK4",
            residual: drift,
            tolerance: RK4_TRACE_DRIFT_TOL,
        });
    }
    Ok(state)
}

fn rk4_step(rho: &TwoLevelDensity, p: &DephasingParams, dt: f64) -> TwoLevelDensity {
    let as_density = |m: &Mat2| TwoLevelDensity {
        rho00: m.0[0][0],
        rho01: m.0[0][1],
        rho10: m.0[1][0],
        rho11: m.0[1][1],
    };
    let advance = |m: &Mat2, k: &Mat2, f: f64| {
        as_density(&m.add(&k.scale(Complex64::new(f, 0.0))))
    };

    let m = Mat2::from_density(rho);
    let k1 = lindblad_rhs(rho, p);
    let k2 = lindblad_rhs(&advance(&m, &k1, dt / 2.0), p);
    let k3 = lindblad_rhs(&advance(&m, &k2, dt / 2.0), p);
    let k4 = lindblad_rhs(&advance(&m, &k3, dt), p);

    let incr = k1
        .add(&k2.scale(Complex64::new(2.0, 0.0)))
        .add(&k3.scale(Complex64::new(2.0, 0.0)))
        .add(&k4)
        .scale(Complex64::new(dt / 6.0, 0.0));
    as_density(&m.add(&incr))
}

/// Dephasing timescale 0.5 (gamma_m + gamma_n), exactly as printed.
pub fn dephasing_timescale(gamma_m: f64, gamma_n: f64) -> f64 {
    debug_assert!(gamma_m >= 0.0 && gamma_n >= 0.0);
    0.5 * (gamma_m + gamma_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(gamma: f64, e0: f64, e1: f64) -> DephasingParams {
        DephasingParams::new(gamma, e0, e1).unwrap()
    }

    fn table_params() -> DephasingParams {
        params(0.15, 0.5, 1.5)
    }

    #[test]
    fn rhs_vanishes_on_eigenstates() {
        let rho = TwoLevelDensity::diagonal(1.0, 0.0).unwrap();
        let d = lindblad_rhs(&rho, &table_params());
        for row in d.0 {
            for v in row {
                assert_eq!(v, Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn rhs_pure_phase_rotation() {
        // gamma = 0, E1 - E0 = 1: the coherence rotates as e^{-it}.
        let rho = TwoLevelDensity::equal_superposition();
        let d = lindblad_rhs(&rho, &params(0.0, 0.5, 1.5));
        assert!((d.0[0][1] - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        assert_eq!(d.0[0][0], Complex64::new(0.0, 0.0));
        assert_eq!(d.0[1][1], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rhs_dissipator_only() {
        // Degenerate levels isolate the dissipator: d rho01/dt = -gamma rho01.
        let rho = TwoLevelDensity::equal_superposition();
        let d = lindblad_rhs(&rho, &params(0.15, 1.0, 1.0));
        assert!((d.0[0][1] - Complex64::new(-0.075, 0.0)).norm() < 1e-16);
        assert_eq!(d.0[0][0], Complex64::new(0.0, 0.0));
        assert_eq!(d.0[1][1], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn analytic_identity_at_zero() {
        let rho = TwoLevelDensity::equal_superposition();
        let out = analytic_state(&rho, &table_params(), 0.0);
        assert_eq!(out.rho01, rho.rho01);
        assert_eq!(out.rho00, rho.rho00);
    }

    #[test]
    fn analytic_coherence_decay() {
        let rho = TwoLevelDensity::equal_superposition();
        let out = analytic_state(&rho, &table_params(), 1.0);
        // 0.5 e^{-0.15}
        assert!((out.rho01.norm() - 0.430_353_988_212_528_9).abs() < 1e-14);
        assert_eq!(out.rho00.re, 0.5);
        assert_eq!(out.rho11.re, 0.5);
    }

    #[test]
    fn analytic_long_time_mixed_state() {
        let rho = TwoLevelDensity::equal_superposition();
        let out = analytic_state(&rho, &table_params(), 200.0);
        assert!(out.rho01.norm() < 1e-13);
        assert_eq!(out.rho00.re, 0.5);
        assert_eq!(out.rho11.re, 0.5);
    }

    #[test]
    fn rk4_matches_closed_form() {
        let rho = TwoLevelDensity::equal_superposition();
        let p = table_params();
        let numeric = propagate_rk4(&rho, &p, 1.0, 1e-3).unwrap();
        let exact = analytic_state(&rho, &p, 1.0);
        assert!((numeric.rho01 - exact.rho01).norm() < 1e-8);
        assert!((numeric.rho00 - exact.rho00).norm() < 1e-9);
        assert!((numeric.rho11 - exact.rho11).norm() < 1e-9);
    }

    #[test]
    fn rk4_zero_time_is_identity() {
        let rho = TwoLevelDensity::equal_superposition();
        let out = propagate_rk4(&rho, &table_params(), 0.0, 1e-3).unwrap();
        assert_eq!(out.rho01, rho.rho01);
    }

    #[test]
    fn rk4_preserves_purity_without_dephasing() {
        let rho = TwoLevelDensity::equal_superposition();
        let p = params(0.0, 0.5, 1.5);
        let out = propagate_rk4(&rho, &p, 3.0, 1e-3).unwrap();
        assert!((out.purity() - 1.0).abs() < 1e-9, "{}", out.purity());
    }

    #[test]
    fn rhs_matches_time_derivative_of_closed_form() {
        let rho = TwoLevelDensity::equal_superposition();
        let p = table_params();
        let t = 0.7;
        let delta = 1e-5;
        let state = analytic_state(&rho, &p, t);
        let d = lindblad_rhs(&state, &p);
        let plus = analytic_state(&rho, &p, t + delta);
        let minus = analytic_state(&rho, &p, t - delta);
        let fd = (plus.rho01 - minus.rho01) / (2.0 * delta);
        assert!((d.0[0][1] - fd).norm() < 1e-6);
    }

    #[test]
    fn timescale_examples() {
        assert_eq!(dephasing_timescale(0.15, 0.15), 0.15);
        assert_eq!(dephasing_timescale(0.0, 0.0), 0.0);
        assert!((dephasing_timescale(0.1, 0.3) - 0.2).abs() < 1e-16);
    }

    #[test]
    fn invalid_densities_rejected() {
        // Broken hermiticity.
        assert!(TwoLevelDensity::new(
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.4, 0.0),
            Complex64::new(0.5, 0.0),
        )
        .is_err());
        // Broken trace.
        assert!(TwoLevelDensity::from_parts(0.7, Complex64::new(0.0, 0.0)).is_ok());
        assert!(TwoLevelDensity::new(
            Complex64::new(0.7, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.7, 0.0),
        )
        .is_err());
        // Broken positivity.
        assert!(TwoLevelDensity::from_parts(0.9, Complex64::new(0.4, 0.0)).is_err());
    }

    #[test]
    fn params_rejected() {
        assert!(DephasingParams::new(-0.1, 0.0, 1.0).is_err());
        assert!(DephasingParams::new(0.1, 1.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn analytic_semigroup_property(
            t1 in 0.0f64..5.0,
            t2 in 0.0f64..5.0,
            im in -0.4f64..0.4,
        ) {
            let rho = TwoLevelDensity::from_parts(
                0.5,
                Complex64::new(0.3, im),
            ).unwrap();
            let p = params(0.15, 0.5, 1.5);
            let two_step = analytic_state(&analytic_state(&rho, &p, t1), &p, t2);
            let one_step = analytic_state(&rho, &p, t1 + t2);
            prop_assert!((two_step.rho01 - one_step.rho01).norm() < 1e-12);
            prop_assert!((two_step.rho00 - one_step.rho00).norm() < 1e-15);
        }

        #[test]
        fn populations_frozen(t in 0.0f64..40.0) {
            let rho = TwoLevelDensity::equal_superposition();
            let p = params(0.15, 0.5, 1.5);
            let out = analytic_state(&rho, &p, t);
            prop_assert_eq!(out.rho00.re, 0.5);
            prop_assert_eq!(out.rho11.re, 0.5);
            // |rho01(t)| = 0.5 e^{-gamma t}
            let want = 0.5 * (-0.15 * t).exp();
            prop_assert!((out.rho01.norm() - want).abs() < 1e-12);
        }
    }
}
