//! External potentials: plain harmonic and the delta-kicked harmonic
//! oscillator, with three regularizations of the kick comb.

use crate::error::{Error, Result};
use crate::fields::SpatialGrid;

/// Sign of the harmonic term in the kicked oscillator. The printed form
/// carries a minus; the conventional kicked oscillator uses a plus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum HarmonicSign {
    AsPrintedMinus,
    StandardPlus,
}

impl HarmonicSign {
    pub fn factor(&self) -> f64 {
        match self {
            HarmonicSign::AsPrintedMinus => -1.0,
            HarmonicSign::StandardPlus => 1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            HarmonicSign::AsPrintedMinus => "as-printed-minus",
            HarmonicSign::StandardPlus => "standard-plus",
        }
    }
}

/// Regularization of the Dirac comb sum_n delta(t - n tau).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum CombMode {
    /// Each kick becomes a unit-mass Gaussian of width sigma_t, truncated
    /// at 6 sigma.
    GaussianComb,
    /// Time average of the comb: the constant 1/tau.
    MeanField,
    /// Zero off-kick; 1/frame_width within half a frame of a kick instant.
    OffKickZero { frame_width: f64 },
}

impl CombMode {
    pub fn name(&self) -> &'static str {
        match self {
            CombMode::GaussianComb => "gaussian-comb",
            CombMode::MeanField => "mean-field",
            CombMode::OffKickZero { .. } => "off-kick-zero",
        }
    }
}

/// Parameters of the delta-kicked harmonic oscillator,
/// V(x, t) = s m w^2 x^2 / 2 + K cos(k x) C(t).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct KickedOscillatorParams {
    pub mass: f64,
    pub omega: f64,
    pub kick_strength: f64,
    pub wavenumber: f64,
    pub tau: f64,
    pub harmonic_sign: HarmonicSign,
    pub comb_mode: CombMode,
    pub sigma_t: f64,
}

impl KickedOscillatorParams {
    /// Checks the parameter invariants, passing the record through.
    pub fn validated(self) -> Result<Self> {
        if self.mass <= 0.0 {
            return Err(Error::Config(format!(
                "kicked oscillator mass {} <= 0",
                self.mass
            )));
        }
        if self.omega < 0.0 {
            return Err(Error::Config(format!(
                "kicked oscillator omega {} < 0",
                self.omega
            )));
        }
        if self.tau <= 0.0 {
            return Err(Error::Config(format!("kick interval tau {} <= 0", self.tau)));
        }
        if matches!(self.comb_mode, CombMode::GaussianComb) && self.sigma_t <= 0.0 {
            return Err(Error::Config(format!(
                "gaussian comb needs sigma_t > 0, got {}",
                self.sigma_t
            )));
        }
        if let CombMode::OffKickZero { frame_width } = self.comb_mode {
            if frame_width <= 0.0 {
                return Err(Error::Config(format!(
                    "off-kick-zero needs frame_width > 0, got {frame_width}"
                )));
            }
        }
        Ok(self)
    }

    /// The paper-figure parameter set: w = 0.1, K = 1, k = 1, tau = 0.1,
    /// printed harmonic sign, Gaussian comb of width tau/50.
    pub fn figure_defaults() -> Self {
        KickedOscillatorParams {
            mass: 1.0,
            omega: 0.1,
            kick_strength: 1.0,
            wavenumber: 1.0,
            tau: 0.1,
            harmonic_sign: HarmonicSign::AsPrintedMinus,
            comb_mode: CombMode::GaussianComb,
            sigma_t: 0.1 / 50.0,
        }
    }
}

/// Real potential sampled on a grid at one time. Non-finite samples mark
/// points masked out of the evaluation window, pending repair.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialField {
    pub grid: SpatialGrid,
    pub t: f64,
    pub values: Vec<f64>,
}

impl PotentialField {
    pub fn same_layout(&self, other: &PotentialField) -> bool {
        self.grid == other.grid && self.t == other.t
    }

    /// Indices of the finite (in-window) samples.
    pub fn finite_range(&self) -> Option<(usize, usize)> {
        let first = self.values.iter().position(|v| v.is_finite())?;
        let last = self.values.iter().rposition(|v| v.is_finite())?;
        Some((first, last))
    }
}

/// Time-independent harmonic potential m w^2 x^2 / 2.
pub fn eval_harmonic(omega: f64, mass: f64, grid: &SpatialGrid, t: f64) -> PotentialField {
    let values = grid
        .points()
        .iter()
        .map(|&x| 0.5 * mass * omega * omega * x * x)
        .collect();
    PotentialField {
        grid: *grid,
        t,
        values,
    }
}

/// Regularized comb amplitude C(t).
pub fn comb_amplitude(p: &KickedOscillatorParams, t: f64) -> f64 {
    match p.comb_mode {
        CombMode::MeanField => 1.0 / p.tau,
        CombMode::OffKickZero { frame_width } => {
            let nearest = (t / p.tau).round() * p.tau;
            if (t - nearest).abs() < frame_width / 2.0 {
                1.0 / frame_width
            } else {
                0.0
            }
        }
        CombMode::GaussianComb => {
            let s = p.sigma_t;
            let lo = ((t - 6.0 * s) / p.tau).ceil() as i64;
            let hi = ((t + 6.0 * s) / p.tau).floor() as i64;
            let norm = 1.0 / (s * (2.0 * std::f64::consts::PI).sqrt());
            let mut acc = 0.0;
            for n in lo..=hi {
                let dt = t - n as f64 * p.tau;
                acc += (-dt * dt / (2.0 * s * s)).exp() * norm;
            }
            acc
        }
    }
}

/// Delta-kicked harmonic potential on the grid at time t.
pub fn eval_delta_kicked(p: &KickedOscillatorParams, grid: &SpatialGrid, t: f64) -> PotentialField {
    let s = p.harmonic_sign.factor();
    let c = comb_amplitude(p, t);
    let values = grid
        .points()
        .iter()
        .map(|&x| {
            s * 0.5 * p.mass * p.omega * p.omega * x * x
                + p.kick_strength * (p.wavenumber * x).cos() * c
        })
        .collect();
    PotentialField {
        grid: *grid,
        t,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> SpatialGrid {
        SpatialGrid::new(-8.0, 8.0, 801).unwrap()
    }

    fn params() -> KickedOscillatorParams {
        KickedOscillatorParams::figure_defaults()
    }

    #[test]
    fn harmonic_values() {
        let g = grid();
        let zero = eval_harmonic(0.0, 1.0, &g, 0.0);
        assert!(zero.values.iter().all(|&v| v == 0.0));

        let v = eval_harmonic(1.0, 1.0, &g, 0.0);
        let i = g.index_of(2.0);
        assert!((v.values[i] - 2.0).abs() < 1e-12);

        // even in x
        let n = v.values.len();
        for i in 0..n / 2 {
            assert_eq!(v.values[i], v.values[n - 1 - i]);
        }
    }

    #[test]
    fn kicked_harmonic_term_as_printed() {
        let g = grid();
        let mut p = params();
        p.kick_strength = 0.0;
        p.omega = 1.0;
        let v = eval_delta_kicked(&p, &g, 0.33);
        let i = g.index_of(1.0);
        assert!((v.values[i] + 0.5).abs() < 1e-12, "{}", v.values[i]);

        p.harmonic_sign = HarmonicSign::StandardPlus;
        let v = eval_delta_kicked(&p, &g, 0.33);
        assert!((v.values[i] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mean_field_amplitude() {
        let g = grid();
        let mut p = params();
        p.comb_mode = CombMode::MeanField;
        p.omega = 0.0;
        let v = eval_delta_kicked(&p, &g, 0.123);
        let i = g.index_of(0.0);
        // K / tau = 10
        assert!((v.values[i] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_comb_vanishes_between_kicks() {
        let mut p = params();
        p.sigma_t = p.tau / 50.0;
        let mid = 7.0 * p.tau + p.tau / 2.0;
        assert_eq!(comb_amplitude(&p, mid), 0.0); // beyond the 6-sigma cut
    }

    #[test]
    fn gaussian_comb_unit_mass_per_period() {
        let p = params();
        // Trapezoid over one period with step sigma/20, centered on a kick.
        let step = p.sigma_t / 20.0;
        let lo = 5.0 * p.tau - p.tau / 2.0;
        let n = (p.tau / step).round() as usize;
        let mut acc = 0.0;
        for i in 0..n {
            let t0 = lo + i as f64 * step;
            acc += 0.5 * (comb_amplitude(&p, t0) + comb_amplitude(&p, t0 + step)) * step;
        }
        assert!((acc - 1.0).abs() < 1e-6, "{acc}");
    }

    #[test]
    fn mean_field_equals_comb_period_average() {
        let p = params();
        let step = p.sigma_t / 20.0;
        let lo = 3.0 * p.tau - p.tau / 2.0;
        let n = (p.tau / step).round() as usize;
        let mut acc = 0.0;
        for i in 0..n {
            let t0 = lo + i as f64 * step;
            acc += 0.5 * (comb_amplitude(&p, t0) + comb_amplitude(&p, t0 + step)) * step;
        }
        let avg = acc / p.tau;
        assert!((avg - 1.0 / p.tau).abs() < 1e-6 / p.tau, "{avg}");
    }

    #[test]
    fn off_kick_zero_frames() {
        let mut p = params();
        p.comb_mode = CombMode::OffKickZero { frame_width: 0.01 };
        assert_eq!(comb_amplitude(&p, 0.3), 100.0); // on a kick
        assert_eq!(comb_amplitude(&p, 0.35), 0.0); // between kicks
    }

    #[test]
    fn kicked_potential_even_in_x() {
        let g = grid();
        for mode in [
            CombMode::GaussianComb,
            CombMode::MeanField,
            CombMode::OffKickZero { frame_width: 0.01 },
        ] {
            let mut p = params();
            p.comb_mode = mode;
            let v = eval_delta_kicked(&p, &g, 0.4);
            let n = v.values.len();
            for i in 0..n / 2 {
                assert_eq!(v.values[i], v.values[n - 1 - i], "mode {:?}", mode);
            }
        }
    }

    #[test]
    fn params_validation() {
        let good = KickedOscillatorParams::figure_defaults();
        assert!(good.validated().is_ok());
        assert!(KickedOscillatorParams { mass: 0.0, ..good }.validated().is_err());
        assert!(KickedOscillatorParams { tau: 0.0, ..good }.validated().is_err());
        assert!(KickedOscillatorParams { sigma_t: 0.0, ..good }.validated().is_err());
        assert!(KickedOscillatorParams {
            comb_mode: CombMode::OffKickZero { frame_width: -1.0 },
            ..good
        }
        .validated()
        .is_err());
    }
}
