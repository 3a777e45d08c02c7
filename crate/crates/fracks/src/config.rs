//! Simulation configuration: defaults, the sectioned key = value file
//! format, and a canonical echo used for run identification.
//!
//! Unknown sections or keys are hard errors; a config that parses is a
//! config the pipeline fully understands.

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::{SpatialGrid, PHASE_TIME_DELTA};
use crate::fractional::{FracOrder, PowerBranchMode};
use crate::ksfrac::FracConfig;
use crate::lindblad::TwoLevelDensity;
use crate::potentials::{CombMode, HarmonicSign, KickedOscillatorParams};

/// Which external potential drives the run.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum ExternalKind {
    Harmonic,
    DeltaKicked,
}

/// Output formats the pipeline can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum OutputFormat {
    Csv,
    Svg,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SimulationConfig {
    pub grid: SpatialGrid,
    /// Snapshot times, strictly increasing, starting at >= 0.
    pub times: Vec<f64>,
    /// Half-width of the central time stencil for d_t theta.
    pub phase_delta: f64,
    pub gamma: f64,
    /// Initial density matrix entries (rho00, Re rho01, Im rho01).
    pub rho00: f64,
    pub rho01_re: f64,
    pub rho01_im: f64,
    pub omega_sys: f64,
    pub mass: f64,
    /// Table metadata: ground-state wavelength in meters. Recorded in the
    /// manifest, not used by the numerics.
    pub lambda_e: f64,
    pub external_kind: ExternalKind,
    pub kicked: KickedOscillatorParams,
    pub frac: FracConfig,
    pub omega_sweep: Vec<f64>,
    pub kick_sweep: Vec<f64>,
    pub alpha_sweep: Vec<f64>,
    /// Snapshot time used by parameter sweeps.
    pub sweep_time: f64,
    pub output_dir: String,
    pub formats: Vec<OutputFormat>,
}

impl Default for SimulationConfig {
    /// Table-1 system (gamma = 0.15, equal superposition) under the
    /// figure-default kicked oscillator, sampled at t = 0, pi/4, pi/2, pi.
    fn default() -> Self {
        use std::f64::consts::PI;
        SimulationConfig {
            grid: SpatialGrid::new(-8.0, 8.0, 801).expect("default grid is valid"),
            times: vec![0.0, PI / 4.0, PI / 2.0, PI],
            phase_delta: PHASE_TIME_DELTA,
            gamma: 0.15,
            rho00: 0.5,
            rho01_re: 0.5,
            rho01_im: 0.0,
            omega_sys: 1.0,
            mass: 1.0,
            lambda_e: 5.5e-5,
            external_kind: ExternalKind::DeltaKicked,
            kicked: KickedOscillatorParams::figure_defaults(),
            frac: FracConfig::default(),
            omega_sweep: vec![0.1, 0.2, 0.4, 0.6, 0.8, 1.0, 1.5, 2.0],
            kick_sweep: vec![0.1, 0.2, 0.5, 1.0, 1.5, 2.0],
            alpha_sweep: vec![0.1, 0.3, 0.5, 0.7, 0.9, 1.0],
            sweep_time: PI,
            output_dir: "runs".to_string(),
            formats: vec![OutputFormat::Csv, OutputFormat::Svg],
        }
    }
}

impl SimulationConfig {
    pub fn initial_density(&self) -> Result<TwoLevelDensity> {
        TwoLevelDensity::from_parts(self.rho00, Complex64::new(self.rho01_re, self.rho01_im))
    }

    /// Cross-field validation beyond what parsing enforces.
    pub fn validate(&self) -> Result<()> {
        if self.times.is_empty() {
            return Err(Error::Config("at least one snapshot time required".into()));
        }
        if self.times[0] < 0.0 {
            return Err(Error::Config(format!(
                "times must start at >= 0, got {}",
                self.times[0]
            )));
        }
        if self.times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("times must be strictly increasing".into()));
        }
        if self.phase_delta <= 0.0 {
            return Err(Error::Config("phase_delta must be positive".into()));
        }
        if self.gamma < 0.0 {
            return Err(Error::Config(format!("gamma = {} < 0", self.gamma)));
        }
        if self.omega_sys <= 0.0 || self.mass <= 0.0 {
            return Err(Error::Config(
                "basis omega_sys and mass must be positive".into(),
            ));
        }
        if self.sweep_time < 0.0 {
            return Err(Error::Config("sweep_time must be >= 0".into()));
        }
        self.initial_density()
            .map_err(|e| Error::Config(format!("initial density invalid: {e}")))?;
        Ok(())
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Parses the sectioned key = value format, starting from defaults.
    /// Unknown sections and keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SimulationConfig::default();
        let mut section = String::new();
        let mut sigma_explicit = false;

        for (lineno, raw) in text.lines().enumerate() {
            let line = strip_comment(raw).trim().to_string();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                if !line.ends_with(']') {
                    return Err(Error::Config(format!(
                        "line {}: malformed section header '{line}'",
                        lineno + 1
                    )));
                }
                section = line[1..line.len() - 1].trim().to_string();
                const SECTIONS: [&str; 8] = [
                    "grid", "times", "dephasing", "basis", "external", "frac", "sweeps",
                    "output",
                ];
                if !SECTIONS.contains(&section.as_str()) {
                    return Err(Error::Config(format!(
                        "line {}: unknown section [{section}]",
                        lineno + 1
                    )));
                }
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value, got '{line}'", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            if section.is_empty() {
                return Err(Error::Config(format!(
                    "line {}: key '{key}' outside any section",
                    lineno + 1
                )));
            }
            apply_key(&mut cfg, &section, key, value, &mut sigma_explicit).map_err(|e| {
                Error::Config(format!("line {}: {e}", lineno + 1))
            })?;
        }

        // Keep the comb width tied to tau unless the file pinned it.
        if !sigma_explicit {
            cfg.kicked.sigma_t = cfg.kicked.tau / 50.0;
        }
        cfg.validate()?;
        // Re-validate the kicked parameters as a whole.
        cfg.kicked = cfg.kicked.validated()?;
        Ok(cfg)
    }

    /// Canonical text echo: parsing it reproduces this config exactly.
    pub fn canonical_text(&self) -> String {
        let fmt_list = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x:.17e}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let formats = self
            .formats
            .iter()
            .map(|f| match f {
                OutputFormat::Csv => "csv",
                OutputFormat::Svg => "svg",
            })
            .collect::<Vec<_>>()
            .join(", ");
        let mut out = String::new();
        out.push_str(&format!(
            "[grid]\nx_min = {:.17e}\nx_max = {:.17e}\nn_points = {}\n\n",
            self.grid.x_min, self.grid.x_max, self.grid.n_points
        ));
        out.push_str(&format!(
            "[times]\nvalues = {}\nphase_delta = {:.17e}\n\n",
            fmt_list(&self.times),
            self.phase_delta
        ));
        out.push_str(&format!(
            "[dephasing]\ngamma = {:.17e}\nrho00 = {:.17e}\nrho01_re = {:.17e}\nrho01_im = {:.17e}\n\n",
            self.gamma, self.rho00, self.rho01_re, self.rho01_im
        ));
        out.push_str(&format!(
            "[basis]\nomega_sys = {:.17e}\nmass = {:.17e}\nlambda_e = {:.17e}\n\n",
            self.omega_sys, self.mass, self.lambda_e
        ));
        let kind = match self.external_kind {
            ExternalKind::Harmonic => "harmonic",
            ExternalKind::DeltaKicked => "delta-kicked",
        };
        out.push_str(&format!(
            "[external]\nkind = {kind}\nomega = {:.17e}\nmass = {:.17e}\nkick_strength = {:.17e}\nwavenumber = {:.17e}\ntau = {:.17e}\nharmonic_sign = {}\ncomb_mode = {}\nsigma_t = {:.17e}\n",
            self.kicked.omega,
            self.kicked.mass,
            self.kicked.kick_strength,
            self.kicked.wavenumber,
            self.kicked.tau,
            self.kicked.harmonic_sign.name(),
            self.kicked.comb_mode.name(),
            self.kicked.sigma_t
        ));
        if let CombMode::OffKickZero { frame_width } = self.kicked.comb_mode {
            out.push_str(&format!("frame_width = {frame_width:.17e}\n"));
        }
        out.push('\n');
        out.push_str(&format!(
            "[frac]\nalpha = {:.17e}\nbranch = {}\nrepair_max_run = {}\n\n",
            self.frac.order.alpha(),
            self.frac.branch.name(),
            self.frac.repair_max_run
        ));
        out.push_str(&format!(
            "[sweeps]\nomega_values = {}\nkick_values = {}\nalpha_values = {}\nsweep_time = {:.17e}\n\n",
            fmt_list(&self.omega_sweep),
            fmt_list(&self.kick_sweep),
            fmt_list(&self.alpha_sweep),
            self.sweep_time
        ));
        out.push_str(&format!(
            "[output]\ndirectory = {}\nformats = {}\n",
            self.output_dir, formats
        ));
        out
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("key '{key}': '{value}' is not a number")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value
        .parse::<usize>()
        .map_err(|_| Error::Config(format!("key '{key}': '{value}' is not an integer")))
}

fn parse_f64_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|s| parse_f64(key, s.trim()))
        .collect()
}

fn apply_key(
    cfg: &mut SimulationConfig,
    section: &str,
    key: &str,
    value: &str,
    sigma_explicit: &mut bool,
) -> Result<()> {
    let unknown = || Error::Config(format!("unknown key '{key}' in section [{section}]"));
    match section {
        "grid" => {
            let mut x_min = cfg.grid.x_min;
            let mut x_max = cfg.grid.x_max;
            let mut n_points = cfg.grid.n_points;
            match key {
                "x_min" => x_min = parse_f64(key, value)?,
                "x_max" => x_max = parse_f64(key, value)?,
                "n_points" => n_points = parse_usize(key, value)?,
                _ => return Err(unknown()),
            }
            cfg.grid = SpatialGrid::new(x_min, x_max, n_points)
                .map_err(|e| Error::Config(e.to_string()))?;
        }
        "times" => match key {
            "values" => cfg.times = parse_f64_list(key, value)?,
            "phase_delta" => cfg.phase_delta = parse_f64(key, value)?,
            _ => return Err(unknown()),
        },
        "dephasing" => match key {
            "gamma" => cfg.gamma = parse_f64(key, value)?,
            "rho00" => cfg.rho00 = parse_f64(key, value)?,
            "rho01_re" => cfg.rho01_re = parse_f64(key, value)?,
            "rho01_im" => cfg.rho01_im = parse_f64(key, value)?,
            _ => return Err(unknown()),
        },
        "basis" => match key {
            "omega_sys" => cfg.omega_sys = parse_f64(key, value)?,
            "mass" => cfg.mass = parse_f64(key, value)?,
            "lambda_e" => cfg.lambda_e = parse_f64(key, value)?,
            _ => return Err(unknown()),
        },
        "external" => match key {
            "kind" => {
                cfg.external_kind = match value {
                    "harmonic" => ExternalKind::Harmonic,
                    "delta-kicked" => ExternalKind::DeltaKicked,
                    other => {
                        return Err(Error::Config(format!(
                            "kind must be harmonic or delta-kicked, got '{other}'"
                        )))
                    }
                }
            }
            "omega" => cfg.kicked.omega = parse_f64(key, value)?,
            "mass" => cfg.kicked.mass = parse_f64(key, value)?,
            "kick_strength" => cfg.kicked.kick_strength = parse_f64(key, value)?,
            "wavenumber" => cfg.kicked.wavenumber = parse_f64(key, value)?,
            "tau" => cfg.kicked.tau = parse_f64(key, value)?,
            "harmonic_sign" => {
                cfg.kicked.harmonic_sign = match value {
                    "as-printed-minus" => HarmonicSign::AsPrintedMinus,
                    "standard-plus" => HarmonicSign::StandardPlus,
                    other => {
                        return Err(Error::Config(format!(
                            "harmonic_sign must be as-printed-minus or standard-plus, got '{other}'"
                        )))
                    }
                }
            }
            "comb_mode" => {
                cfg.kicked.comb_mode = match value {
                    "gaussian-comb" => CombMode::GaussianComb,
                    "mean-field" => CombMode::MeanField,
                    "off-kick-zero" => CombMode::OffKickZero { frame_width: 0.01 },
                    other => {
                        return Err(Error::Config(format!(
                            "comb_mode must be gaussian-comb, mean-field or off-kick-zero, got '{other}'"
                        )))
                    }
                }
            }
            "sigma_t" => {
                cfg.kicked.sigma_t = parse_f64(key, value)?;
                *sigma_explicit = true;
            }
            "frame_width" => {
                let width = parse_f64(key, value)?;
                match cfg.kicked.comb_mode {
                    CombMode::OffKickZero { .. } => {
                        cfg.kicked.comb_mode = CombMode::OffKickZero { frame_width: width }
                    }
                    _ => {
                        return Err(Error::Config(
                            "frame_width only applies to comb_mode = off-kick-zero (set comb_mode first)"
                                .into(),
                        ))
                    }
                }
            }
            _ => return Err(unknown()),
        },
        "frac" => match key {
            "alpha" => {
                let alpha = parse_f64(key, value)?;
                cfg.frac.order =
                    FracOrder::new(alpha).map_err(|e| Error::Config(e.to_string()))?;
            }
            "branch" => {
                cfg.frac.branch = match value {
                    "signed" => PowerBranchMode::Signed,
                    "principal-real" => PowerBranchMode::PrincipalReal,
                    "strict" => PowerBranchMode::Strict,
                    other => {
                        return Err(Error::Config(format!(
                            "branch must be signed, principal-real or strict, got '{other}'"
                        )))
                    }
                }
            }
            "repair_max_run" => {
                let run = parse_usize(key, value)?;
                if run < 1 {
                    return Err(Error::Config("repair_max_run must be >= 1".into()));
                }
                cfg.frac.repair_max_run = run;
            }
            _ => return Err(unknown()),
        },
        "sweeps" => match key {
            "omega_values" => cfg.omega_sweep = parse_f64_list(key, value)?,
            "kick_values" => cfg.kick_sweep = parse_f64_list(key, value)?,
            "alpha_values" => cfg.alpha_sweep = parse_f64_list(key, value)?,
            "sweep_time" => cfg.sweep_time = parse_f64(key, value)?,
            _ => return Err(unknown()),
        },
        "output" => match key {
            "directory" => cfg.output_dir = value.to_string(),
            "formats" => {
                let mut formats = Vec::new();
                for item in value.split(',') {
                    match item.trim() {
                        "csv" => formats.push(OutputFormat::Csv),
                        "svg" => formats.push(OutputFormat::Svg),
                        other => {
                            return Err(Error::Config(format!(
                                "formats must be csv or svg, got '{other}'"
                            )))
                        }
                    }
                }
                cfg.formats = formats;
            }
            _ => return Err(unknown()),
        },
        _ => return Err(Error::Config(format!("unknown section [{section}]"))),
    }
    Ok(())
}
