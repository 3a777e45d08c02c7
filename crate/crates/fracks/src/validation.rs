//! Built-in validation suite: every gating numerical contract of the
//! artifact, each pinned to its tolerance, plus the non-gating regression
//! trends that are reported and tracked but do not fail the build.

use std::path::Path;

use num_complex::Complex64;

use crate::config::SimulationConfig;
use crate::error::{Error, Result};
use crate::fields::{FieldSnapshot, SpatialGrid, TwoLevelBasis};
use crate::fractional::{
    frac_power_rule, gamma_fn, mittag_leffler, rl_frac_derivative, FracOrder, SampledFunction,
};
use crate::ks::{exact_correlation_potential, ks_potential_total, tdse_residual, KsOrbital};
use crate::ksfrac::{frac_correlation_potential, frac_ks_potential, singularity_repair, FracConfig};
use crate::lindblad::{analytic_state, dephasing_timescale, propagate_rk4, TwoLevelDensity};
use crate::pipeline::{build_snapshot_block, correlation_distance, simulate_into};
use crate::potentials::{eval_delta_kicked, eval_harmonic, CombMode, PotentialField};

/// One executed check: measured value, threshold, verdict.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub gating: bool,
    pub passed: bool,
    pub measured: String,
    pub threshold: String,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {} — measured {}, require {}",
            if self.passed { "PASS" } else { "FAIL" },
            if self.gating { "gate " } else { "trend" },
            self.name,
            self.measured,
            self.threshold
        )
    }
}

fn table_setup(npts: usize) -> (TwoLevelBasis, crate::lindblad::DephasingParams) {
    let grid = SpatialGrid::new(-8.0, 8.0, npts).expect("valid grid");
    let basis = TwoLevelBasis::new(1.0, 1.0, grid).expect("valid basis");
    let params = basis.dephasing_params(0.15).expect("valid params");
    (basis, params)
}

fn check_lindblad_rk4_agreement() -> CheckOutcome {
    let rho0 = TwoLevelDensity::equal_superposition();
    let (_, p) = table_setup(801);
    let mut worst: f64 = 0.0;
    let mut k = 0;
    while k <= 40 {
        let t = 0.25 * k as f64;
        let exact = analytic_state(&rho0, &p, t);
        match propagate_rk4(&rho0, &p, t, 1e-3) {
            Ok(num) => {
                worst = worst
                    .max((num.rho00 - exact.rho00).norm())
                    .max((num.rho01 - exact.rho01).norm())
                    .max((num.rho10 - exact.rho10).norm())
                    .max((num.rho11 - exact.rho11).norm());
            }
            Err(_) => worst = f64::INFINITY,
        }
        k += 1;
    }
    CheckOutcome {
        name: "lindblad closed form vs RK4",
        gating: true,
        passed: worst < 1e-8,
        measured: format!("max |drho| = {worst:.3e} over t in [0, 10]"),
        threshold: "< 1e-8".to_string(),
    }
}

fn check_pure_dephasing_law() -> CheckOutcome {
    let rho0 = TwoLevelDensity::equal_superposition();
    let (_, p) = table_setup(801);
    let mut worst_diag: f64 = 0.0;
    let mut worst_law: f64 = 0.0;
    let mut k = 0;
    while k <= 100 {
        let t = 0.1 * k as f64;
        let s = analytic_state(&rho0, &p, t);
        worst_diag = worst_diag
            .max((s.rho00.re - 0.5).abs())
            .max((s.rho11.re - 0.5).abs());
        worst_law = worst_law.max((s.rho01.norm() - 0.5 * (-0.15 * t).exp()).abs());
        k += 1;
    }
    let rk = propagate_rk4(&rho0, &p, 5.0, 1e-3).expect("rk4 propagation");
    let rk_diag = (rk.rho00.re - 0.5).abs().max((rk.rho11.re - 0.5).abs());
    let at_one = analytic_state(&rho0, &p, 1.0).rho01.norm();
    let spot = (at_one - 0.430354).abs();
    let passed = worst_diag < 1e-12 && worst_law < 1e-12 && rk_diag < 1e-9 && spot < 1e-6;
    CheckOutcome {
        name: "pure dephasing decay law",
        gating: true,
        passed,
        measured: format!(
            "diag drift {worst_diag:.2e} (RK4 {rk_diag:.2e}), law residual {worst_law:.2e}, |rho01(1)| off by {spot:.2e}"
        ),
        threshold: "1e-12 / 1e-9 / 1e-12 / 1e-6".to_string(),
    }
}

fn check_dephasing_timescale() -> CheckOutcome {
    let v = dephasing_timescale(0.15, 0.15);
    CheckOutcome {
        name: "dephasing timescale",
        gating: true,
        passed: v == 0.15,
        measured: format!("{v}"),
        threshold: "= 0.15 a.u. exactly".to_string(),
    }
}

fn check_density_normalization() -> CheckOutcome {
    let rho0 = TwoLevelDensity::equal_superposition();
    let (basis, p) = table_setup(801);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let t = 4.0 * std::f64::consts::PI * k as f64 / 99.0;
        let state = analytic_state(&rho0, &p, t);
        let n = crate::fields::assemble_density(&state, &basis).expect("density");
        worst = worst.max((basis.grid.integrate(&n) - 1.0).abs());
    }
    CheckOutcome {
        name: "density normalization",
        gating: true,
        passed: worst < 1e-6,
        measured: format!("max |int n - 1| = {worst:.3e} at 100 times in [0, 4pi]"),
        threshold: "< 1e-6".to_string(),
    }
}

fn check_mixed_state_limit() -> CheckOutcome {
    let rho0 = TwoLevelDensity::equal_superposition();
    let (basis, p) = table_setup(801);
    let state = analytic_state(&rho0, &p, 40.0);
    let n = crate::fields::assemble_density(&state, &basis).expect("density");
    let worst = n
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mixed = 0.5 * basis.phi0[i] * basis.phi0[i] + 0.5 * basis.phi1[i] * basis.phi1[i];
            (v - mixed).abs()
        })
        .fold(0.0f64, f64::max);
    CheckOutcome {
        name: "mixed-state limit",
        gating: true,
        passed: worst < 1e-3,
        measured: format!("sup |n(40) - n_mixed| = {worst:.3e}"),
        threshold: "< 1e-3".to_string(),
    }
}

fn check_continuity_convergence() -> CheckOutcome {
    let rho0 = TwoLevelDensity::equal_superposition();
    let t = std::f64::consts::FRAC_PI_4;
    let mut residuals = Vec::new();
    for npts in [801, 1601] {
        let (basis, p) = table_setup(npts);
        let snap = FieldSnapshot::build(&rho0, &p, &basis, t, 1e-4).expect("snapshot");
        residuals.push(snap.continuity_residual(1e-6).expect("residual"));
    }
    let ratio = residuals[0] / residuals[1];
    CheckOutcome {
        name: "continuity closure convergence",
        gating: true,
        passed: (3.5..=4.5).contains(&ratio),
        measured: format!(
            "residual {:.3e} -> {:.3e}, ratio {ratio:.3}",
            residuals[0], residuals[1]
        ),
        threshold: "ratio in [3.5, 4.5] per grid halving".to_string(),
    }
}

fn orbital_triplet(
    rho0: &TwoLevelDensity,
    basis: &TwoLevelBasis,
    p: &crate::lindblad::DephasingParams,
    t: f64,
    delta: f64,
) -> (KsOrbital, KsOrbital, KsOrbital) {
    let at = |time: f64| {
        KsOrbital::from_snapshot(
            &FieldSnapshot::build(rho0, p, basis, time, delta).expect("snapshot"),
        )
    };
    (at(t - delta), at(t), at(t + delta))
}

fn dephasing_residual(npts: usize, t: f64) -> f64 {
    let rho0 = TwoLevelDensity::equal_superposition();
    let (basis, p) = table_setup(npts);
    let delta = 1e-4;
    let snap = FieldSnapshot::build(&rho0, &p, &basis, t, delta).expect("snapshot");
    let v_ext = eval_harmonic(1.0, 1.0, &basis.grid, t);
    let v_c = exact_correlation_potential(&snap, &v_ext).expect("v_c");
    let v_ks = ks_potential_total(&v_c, &v_ext).expect("v_ks");
    let (minus, center, plus) = orbital_triplet(&rho0, &basis, &p, t, delta);
    tdse_residual(&minus, &center, &plus, &v_ks, &basis.grid, delta).expect("residual")
}

fn check_tdse_residual() -> CheckOutcome {
    // Stationary state on a fine grid.
    let rho0 = TwoLevelDensity::diagonal(1.0, 0.0).expect("diag state");
    let (basis, p) = table_setup(20001);
    let delta = 1e-4;
    let t = 0.5;
    let snap = FieldSnapshot::build(&rho0, &p, &basis, t, delta).expect("snapshot");
    let v_ext = PotentialField {
        grid: basis.grid,
        t,
        values: vec![0.0; basis.grid.n_points],
    };
    let v_c = exact_correlation_potential(&snap, &v_ext).expect("v_c");
    let v_ks = ks_potential_total(&v_c, &v_ext).expect("v_ks");
    let (minus, center, plus) = orbital_triplet(&rho0, &basis, &p, t, delta);
    let stationary =
        tdse_residual(&minus, &center, &plus, &v_ks, &basis.grid, delta).expect("residual");

    // Dephasing state: second-order grid convergence at t = pi/4.
    let r_coarse = dephasing_residual(801, std::f64::consts::FRAC_PI_4);
    let r_fine = dephasing_residual(1601, std::f64::consts::FRAC_PI_4);
    let ratio = r_coarse / r_fine;

    let passed = stationary < 1e-6 && (3.5..=4.5).contains(&ratio);
    CheckOutcome {
        name: "evolution-equation residual",
        gating: true,
        passed,
        measured: format!(
            "stationary {stationary:.3e}; dephasing {r_coarse:.3e} -> {r_fine:.3e}, ratio {ratio:.3}"
        ),
        threshold: "< 1e-6 and ratio in [3.5, 4.5]".to_string(),
    }
}

fn check_stationary_oracle() -> CheckOutcome {
    let rho0 = TwoLevelDensity::diagonal(1.0, 0.0).expect("diag state");
    let (basis, p) = table_setup(16001);
    let snap = FieldSnapshot::build(&rho0, &p, &basis, 0.0, 1e-4).expect("snapshot");
    let v_ext = PotentialField {
        grid: basis.grid,
        t: 0.0,
        values: vec![0.0; basis.grid.n_points],
    };
    let v_c = exact_correlation_potential(&snap, &v_ext).expect("v_c");
    let v_ks = ks_potential_total(&v_c, &v_ext).expect("v_ks");
    let xs = basis.grid.points();
    let mut worst: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        if x.abs() <= 3.0 {
            worst = worst.max((v_ks.values[i] - (0.5 * x * x - 0.5)).abs());
        }
    }
    CheckOutcome {
        name: "stationary potential oracle",
        gating: true,
        passed: worst < 1e-4,
        measured: format!("sup |V_KS - (x^2/2 - 1/2)| = {worst:.3e} on |x| <= 3"),
        threshold: "< 1e-4".to_string(),
    }
}

fn check_external_cancellation() -> CheckOutcome {
    let rho0 = TwoLevelDensity::equal_superposition();
    let (basis, p) = table_setup(801);
    let t = std::f64::consts::FRAC_PI_4;
    let snap = FieldSnapshot::build(&rho0, &p, &basis, t, 1e-4).expect("snapshot");
    let v_a = eval_harmonic(1.0, 1.0, &basis.grid, t);
    let mut kicked = crate::potentials::KickedOscillatorParams::figure_defaults();
    kicked.comb_mode = CombMode::MeanField;
    let v_b = eval_delta_kicked(&kicked, &basis.grid, t);

    let frac = FracConfig::default();
    let mut worst: f64 = 0.0;
    let ks_a =
        ks_potential_total(&exact_correlation_potential(&snap, &v_a).expect("v_c"), &v_a)
            .expect("v_ks");
    let ks_b =
        ks_potential_total(&exact_correlation_potential(&snap, &v_b).expect("v_c"), &v_b)
            .expect("v_ks");
    let fks_a = frac_ks_potential(
        &frac_correlation_potential(&snap, &v_a, &frac).expect("v_c~"),
        &v_a,
    )
    .expect("v_ks~");
    let fks_b = frac_ks_potential(
        &frac_correlation_potential(&snap, &v_b, &frac).expect("v_c~"),
        &v_b,
    )
    .expect("v_ks~");
    for i in 0..basis.grid.n_points {
        if ks_a.values[i].is_finite() {
            worst = worst.max((ks_a.values[i] - ks_b.values[i]).abs());
        }
        if fks_a.values[i].is_finite() {
            worst = worst.max((fks_a.values[i] - fks_b.values[i]).abs());
        }
    }
    CheckOutcome {
        name: "external-potential cancellation",
        gating: true,
        passed: worst < 1e-12,
        measured: format!("sup |V_KS(harmonic) - V_KS(kicked)| = {worst:.3e}"),
        threshold: "< 1e-12 (both schemes)".to_string(),
    }
}

fn check_mittag_leffler() -> CheckOutcome {
    let one = FracOrder::new(1.0).expect("order 1");
    let mut worst: f64 = 0.0;
    for k in 0..=100 {
        let x = -5.0 + 0.1 * k as f64;
        let got = mittag_leffler(one, Complex64::new(x, 0.0)).expect("series");
        worst = worst.max(((got.re - x.exp()) / x.exp()).abs());
    }
    let half = FracOrder::new(0.5).expect("order 1/2");
    let e_half = mittag_leffler(half, Complex64::new(1.0, 0.0)).expect("series");
    let spot = (e_half.re - 5.008980).abs();
    CheckOutcome {
        name: "mittag-leffler oracle",
        gating: true,
        passed: worst < 1e-10 && spot < 1e-5,
        measured: format!("max rel |E_1(x) - e^x| = {worst:.3e}; |E_0.5(1) - 5.008980| = {spot:.3e}"),
        threshold: "< 1e-10 and < 1e-5".to_string(),
    }
}

fn check_fractional_power_rule() -> CheckOutcome {
    let h: f64 = 1.0 / 1024.0;
    let len = (2.0 / h).round() as usize + 1;
    let mut worst: f64 = 0.0;
    for gamma_exp in [0.5, 1.0, 2.0] {
        for a in [0.3, 0.5, 0.7] {
            let order = FracOrder::new(a).expect("order");
            let f = SampledFunction::from_fn(0.0, h, len, |x| x.powf(gamma_exp))
                .expect("sampled function");
            let d = rl_frac_derivative(&f, order).expect("derivative");
            for (i, &x) in f.xs.iter().enumerate() {
                if (0.25..=2.0).contains(&x) {
                    let want = frac_power_rule(gamma_exp, order, x).expect("closed form");
                    worst = worst.max(((d.ys[i] - want) / want).abs());
                }
            }
        }
    }
    let flat = SampledFunction::from_fn(0.0, h, len, |_| 2.31).expect("sampled function");
    let d = rl_frac_derivative(&flat, FracOrder::new(0.5).expect("order")).expect("derivative");
    let const_resid = d.ys.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    CheckOutcome {
        name: "fractional power rule",
        gating: true,
        passed: worst < 1e-3 && const_resid < 1e-10,
        measured: format!(
            "max rel err {worst:.3e} (9 gamma/alpha combos, h = 1/1024); constants {const_resid:.2e}"
        ),
        threshold: "< 1e-3 and < 1e-10".to_string(),
    }
}

fn check_fractional_spot_value() -> CheckOutcome {
    // Independent term-by-term target at x = -1 with analytic fields:
    // n = e^{-1}/sqrt(pi), d_x n = 2n, all gamma factors explicit.
    let n = (-1.0f64).exp() / std::f64::consts::PI.sqrt();
    let dn = 2.0 * n;
    let target = 0.5 / n.sqrt() * gamma_fn(1.5).expect("gamma") / gamma_fn(1.2).expect("gamma")
        * n.powf(0.2)
        * dn.powf(0.3);

    let rho0 = TwoLevelDensity::diagonal(1.0, 0.0).expect("diag state");
    let (basis, p) = table_setup(801);
    let snap = FieldSnapshot::build(&rho0, &p, &basis, 0.0, 1e-4).expect("snapshot");
    let v_ext = PotentialField {
        grid: basis.grid,
        t: 0.0,
        values: vec![0.0; basis.grid.n_points],
    };
    let v = frac_correlation_potential(&snap, &v_ext, &FracConfig::default()).expect("v_c~");
    let got = v.values[basis.grid.index_of(-1.0)];
    let diff = (got - target).abs();
    CheckOutcome {
        name: "fractional correlation spot value",
        gating: true,
        passed: diff < 1e-3 && (target - 0.5942).abs() < 1e-3,
        measured: format!("pipeline {got:.6}, independent target {target:.6}, diff {diff:.2e}"),
        threshold: "within 1e-3 of 0.5942".to_string(),
    }
}

fn check_singularity_repair() -> CheckOutcome {
    let grid = SpatialGrid::new(-1.0, 1.0, 9).expect("grid");
    let cfg = FracConfig::default();
    let mut ok = true;
    let mut notes = Vec::new();

    let single = PotentialField {
        grid,
        t: 0.0,
        values: vec![1.0, 2.0, 2.0, 2.0, f64::NAN, 4.0, 4.0, 4.0, 4.0],
    };
    match singularity_repair(&single, &cfg) {
        Ok((repaired, stats)) => {
            if repaired.values[4] != 3.0 || stats.repaired_points != 1 {
                ok = false;
                notes.push(format!("single-point mean gave {}", repaired.values[4]));
            } else {
                let (again, stats2) = singularity_repair(&repaired, &cfg).expect("repair");
                if again.values != repaired.values || stats2.repaired_points != 0 {
                    ok = false;
                    notes.push("repair not idempotent".to_string());
                }
            }
        }
        Err(e) => {
            ok = false;
            notes.push(format!("single-point repair failed: {e}"));
        }
    }

    let mut values = vec![1.0; 9];
    for v in values.iter_mut().take(7).skip(2) {
        *v = f64::NAN;
    }
    let long_run = PotentialField {
        grid,
        t: 0.0,
        values,
    };
    match singularity_repair(&long_run, &cfg) {
        Err(e @ Error::UnrepairableSingularity { .. }) => {
            if e.exit_code() != 3 {
                ok = false;
                notes.push(format!("long-run exit code {}", e.exit_code()));
            }
        }
        other => {
            ok = false;
            notes.push(format!("5-point run not rejected: {other:?}"));
        }
    }

    CheckOutcome {
        name: "singularity repair",
        gating: true,
        passed: ok,
        measured: if notes.is_empty() {
            "neighbor mean, idempotence, long-run rejection (exit 3)".to_string()
        } else {
            notes.join("; ")
        },
        threshold: "all three behaviors".to_string(),
    }
}

fn check_determinism(scratch: &Path) -> CheckOutcome {
    let cfg = SimulationConfig {
        output_dir: scratch.to_string_lossy().into_owned(),
        ..SimulationConfig::default()
    };
    let run = |tag: &str| -> Result<Vec<Vec<u8>>> {
        let report = simulate_into(&cfg, &scratch.join(tag))?;
        (0..report.snapshots)
            .map(|i| {
                Ok(std::fs::read(
                    report.directory.join(format!("snapshot_{i}.csv")),
                )?)
            })
            .collect()
    };
    let outcome = (|| -> Result<bool> {
        let a = run("a")?;
        let b = run("b")?;
        Ok(a == b && !a.is_empty())
    })();
    let _ = std::fs::remove_dir_all(scratch);
    match outcome {
        Ok(identical) => CheckOutcome {
            name: "deterministic output",
            gating: true,
            passed: identical,
            measured: if identical {
                "two default-config runs byte-identical".to_string()
            } else {
                "snapshot CSVs differ between runs".to_string()
            },
            threshold: "byte-identical CSVs".to_string(),
        },
        Err(e) => CheckOutcome {
            name: "deterministic output",
            gating: true,
            passed: false,
            measured: format!("run failed: {e}"),
            threshold: "byte-identical CSVs".to_string(),
        },
    }
}

fn sweep_blocks(
    values: &[f64],
    comb: CombMode,
    apply: impl Fn(&mut SimulationConfig, f64),
) -> Vec<(f64, crate::pipeline::SnapshotBlock)> {
    let base = {
        let mut cfg = SimulationConfig::default();
        cfg.kicked.comb_mode = comb;
        cfg
    };
    let (basis, params) = table_setup(base.grid.n_points);
    values
        .iter()
        .map(|&v| {
            let mut cfg = base.clone();
            apply(&mut cfg, v);
            let block = build_snapshot_block(&cfg, &basis, &params, &cfg.frac, cfg.sweep_time)
                .expect("sweep block");
            (v, block)
        })
        .collect()
}

fn trend_omega_sweep() -> CheckOutcome {
    // Default comb: at the sweep time t = pi the Gaussian kick train has
    // no support, so the omega^2 harmonic term alone drives the trend.
    let values = [0.5, 1.0, 1.5, 2.0, 3.0];
    let blocks = sweep_blocks(&values, CombMode::GaussianComb, |cfg, v| {
        cfg.kicked.omega = v
    });
    let xs = blocks[0].1.v_c.grid.points();
    let rels: Vec<f64> = blocks
        .iter()
        .map(|(_, b)| correlation_distance(b, &xs).1)
        .collect();
    let monotone = rels.windows(2).all(|w| w[1] < w[0]);
    CheckOutcome {
        name: "omega-sweep distance trend",
        gating: false,
        passed: monotone,
        measured: format!(
            "rel dist over omega {values:?}: {:?}",
            rels.iter().map(|r| (r * 1e4).round() / 1e4).collect::<Vec<_>>()
        ),
        threshold: "monotonically decreasing".to_string(),
    }
}

fn trend_kick_sweep() -> CheckOutcome {
    // Mean-field comb: with the Gaussian comb the kick term has no support
    // at t = pi and every K produces identical fields.
    let values = [0.1, 0.2, 0.5, 1.0, 1.5, 2.0];
    let blocks = sweep_blocks(&values, CombMode::MeanField, |cfg, v| {
        cfg.kicked.kick_strength = v
    });
    let xs = blocks[0].1.v_c.grid.points();
    // Successive sup-distances of the fractional correlation potential on
    // |x| <= 2.
    let mut successive = Vec::new();
    for w in blocks.windows(2) {
        let mut sup: f64 = 0.0;
        for (i, &x) in xs.iter().enumerate() {
            if x.abs() > 2.0 {
                continue;
            }
            let a = w[0].1.v_c_frac.values[i];
            let b = w[1].1.v_c_frac.values[i];
            if a.is_finite() && b.is_finite() {
                sup = sup.max((b - a).abs());
            }
        }
        successive.push(sup);
    }
    // Pairs fully inside [0.2, 1.0] vs pairs fully at K >= 1.5.
    let low_mean = (successive[1] + successive[2]) / 2.0;
    let high = successive[4];
    CheckOutcome {
        name: "kick-sweep saturation trend",
        gating: false,
        passed: high < low_mean,
        measured: format!(
            "successive sup distances {:?}; K >= 1.5 mean {high:.3} vs K in [0.2, 1] mean {low_mean:.3}",
            successive.iter().map(|r| (r * 1e3).round() / 1e3).collect::<Vec<_>>()
        ),
        threshold: "shrinking for K >= 1.5".to_string(),
    }
}

fn trend_fractional_u_shape() -> CheckOutcome {
    let cfg = SimulationConfig::default();
    let (basis, params) = table_setup(cfg.grid.n_points);
    let block =
        build_snapshot_block(&cfg, &basis, &params, &cfg.frac, 0.0).expect("t = 0 block");
    let xs = cfg.grid.points();
    let finite: Vec<(f64, f64)> = xs
        .iter()
        .zip(&block.v_ks_frac.values)
        .filter(|(_, v)| v.is_finite())
        .map(|(&x, &v)| (x, v))
        .collect();
    let central: Vec<f64> = finite
        .iter()
        .filter(|(x, _)| x.abs() <= 0.5)
        .map(|&(_, v)| v)
        .collect();
    let central_mean = central.iter().sum::<f64>() / central.len().max(1) as f64;
    let left = finite.iter().take(10).map(|&(_, v)| v).sum::<f64>() / 10.0;
    let right = finite.iter().rev().take(10).map(|&(_, v)| v).sum::<f64>() / 10.0;
    CheckOutcome {
        name: "fractional potential edge decrease",
        gating: false,
        passed: left < central_mean && right < central_mean,
        measured: format!(
            "window-edge means {left:.3} / {right:.3} vs central mean {central_mean:.3} at t = 0"
        ),
        threshold: "both edges below the central region".to_string(),
    }
}

/// Runs the whole suite. Gating checks decide the exit status; trends are
/// reported alongside. `scratch` hosts the determinism check's run
/// directories (a temp directory by default).
pub fn run_acceptance(scratch: Option<&Path>) -> Vec<CheckOutcome> {
    let tmp;
    let scratch = match scratch {
        Some(p) => p,
        None => {
            tmp = std::env::temp_dir().join(format!("fracks-validate-{}", std::process::id()));
            &tmp
        }
    };
    vec![
        check_lindblad_rk4_agreement(),
        check_pure_dephasing_law(),
        check_dephasing_timescale(),
        check_density_normalization(),
        check_mixed_state_limit(),
        check_continuity_convergence(),
        check_tdse_residual(),
        check_stationary_oracle(),
        check_external_cancellation(),
        check_mittag_leffler(),
        check_fractional_power_rule(),
        check_fractional_spot_value(),
        check_singularity_repair(),
        check_determinism(scratch),
        trend_omega_sweep(),
        trend_kick_sweep(),
        trend_fractional_u_shape(),
    ]
}

/// True when every gating check passed.
pub fn all_gates_pass(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().filter(|o| o.gating).all(|o| o.passed)
}

/// Human-readable report, one line per check plus a summary.
pub fn report(outcomes: &[CheckOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        out.push_str(&o.line());
        out.push('\n');
    }
    let gates = outcomes.iter().filter(|o| o.gating).count();
    let passed = outcomes.iter().filter(|o| o.gating && o.passed).count();
    let trends = outcomes.iter().filter(|o| !o.gating).count();
    let trends_ok = outcomes.iter().filter(|o| !o.gating && o.passed).count();
    out.push_str(&format!(
        "gating: {passed}/{gates} passed; trends: {trends_ok}/{trends} reproduced\n"
    ));
    out
}
