//! Simulation driver: snapshot assembly, parameter sweeps, and the file
//! outputs (CSV tables, run manifest, optional SVG figures).
//!
//! Output is deterministic: run identifiers hash the canonical config
//! echo, floats are written with a fixed 17-significant-digit format, and
//! rows follow a fixed field order. Runs are staged in a scratch
//! directory and atomically renamed into place.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::config::{ExternalKind, OutputFormat, SimulationConfig};
use crate::error::{Error, Result};
use crate::fields::{FieldSnapshot, TwoLevelBasis};
use crate::fractional::FracOrder;
use crate::ks::{exact_correlation_potential, ks_potential_total};
use crate::ksfrac::{
    frac_correlation_potential, frac_ks_potential, singularity_repair, FracConfig, RepairStats,
};
use crate::lindblad::DephasingParams;
use crate::potentials::{eval_delta_kicked, eval_harmonic, PotentialField};
use crate::svg;

/// Sweep axes exposed by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SweepAxis {
    Omega,
    Kick,
    Alpha,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Omega => "omega",
            SweepAxis::Kick => "K",
            SweepAxis::Alpha => "alpha",
        }
    }
}

/// All fields written for one snapshot, already repaired.
#[derive(Debug, Clone)]
pub struct SnapshotBlock {
    pub t: f64,
    pub n: Vec<f64>,
    pub theta: Vec<f64>,
    pub v_ext: PotentialField,
    pub v_c: PotentialField,
    pub v_c_frac: PotentialField,
    pub v_ks: PotentialField,
    pub v_ks_frac: PotentialField,
    /// Grid indices repaired in either correlation potential.
    pub repaired: Vec<bool>,
    pub repair_exact: RepairStats,
    pub repair_frac: RepairStats,
}

/// Reproducibility record written next to the data files.
#[derive(Debug, serde::Serialize)]
pub struct RunManifest {
    pub run_id: String,
    pub version: String,
    pub mode: String,
    pub gauge: String,
    pub comb_mode: String,
    pub power_branch: String,
    pub snapshot_files: Vec<String>,
    pub repairs: Vec<ManifestRepairEntry>,
    pub flagged: Vec<String>,
    pub wall_time_ms: u128,
    pub config_echo: String,
}

#[derive(Debug, serde::Serialize)]
pub struct ManifestRepairEntry {
    pub file: String,
    pub t: f64,
    pub repaired_exact: RepairStats,
    pub repaired_frac: RepairStats,
}

/// Result of a completed run, with the directory it was renamed into.
#[derive(Debug)]
pub struct RunReport {
    pub run_id: String,
    pub directory: PathBuf,
    pub snapshots: usize,
    pub repaired_points: usize,
}

/// Per-value sweep summary row.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    /// sup |Vc~ - Vc| on |x| <= 2.
    pub sup_dist: f64,
    /// sup_dist normalized by sup |Vc| on the same window.
    pub rel_dist: f64,
    pub repaired_points: usize,
    /// Set when the fractional potential could not be evaluated or
    /// repaired for this value.
    pub flagged: bool,
}

#[derive(Debug)]
pub struct SweepReport {
    pub run_id: String,
    pub directory: PathBuf,
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

/// FNV-1a 64-bit hash of the canonical config echo plus run mode; the
/// deterministic run identifier.
fn run_id(tag: &str, payload: &str) -> String {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x1000_0000_01b3;
    let mut hash = OFFSET;
    for b in tag.bytes().chain(payload.bytes()) {
        hash ^= b as u64;
        hash = hash.wrapping_mul(PRIME);
    }
    format!("{tag}-{hash:016x}")
}

fn external_field(cfg: &SimulationConfig, t: f64) -> PotentialField {
    match cfg.external_kind {
        ExternalKind::Harmonic => eval_harmonic(cfg.kicked.omega, cfg.kicked.mass, &cfg.grid, t),
        ExternalKind::DeltaKicked => eval_delta_kicked(&cfg.kicked, &cfg.grid, t),
    }
}

/// Builds the complete, repaired snapshot block at time t.
pub fn build_snapshot_block(
    cfg: &SimulationConfig,
    basis: &TwoLevelBasis,
    params: &DephasingParams,
    frac: &FracConfig,
    t: f64,
) -> Result<SnapshotBlock> {
    let rho0 = cfg.initial_density()?;
    let snap = FieldSnapshot::build(&rho0, params, basis, t, cfg.phase_delta)?;
    let v_ext = external_field(cfg, t);

    let v_c_raw = exact_correlation_potential(&snap, &v_ext)?;
    let (v_c, repair_exact) = singularity_repair(&v_c_raw, frac)?;
    let v_c_frac_raw = frac_correlation_potential(&snap, &v_ext, frac)?;
    let (v_c_frac, repair_frac) = singularity_repair(&v_c_frac_raw, frac)?;

    let v_ks = ks_potential_total(&v_c, &v_ext)?;
    let v_ks_frac = frac_ks_potential(&v_c_frac, &v_ext)?;

    let repaired: Vec<bool> = (0..snap.n.len())
        .map(|i| {
            (v_c_raw.values[i].is_nan() && v_c.values[i].is_finite())
                || (v_c_frac_raw.values[i].is_nan() && v_c_frac.values[i].is_finite())
        })
        .collect();

    Ok(SnapshotBlock {
        t,
        n: snap.n.clone(),
        theta: snap.theta.clone(),
        v_ext,
        v_c,
        v_c_frac,
        v_ks,
        v_ks_frac,
        repaired,
        repair_exact,
        repair_frac,
    })
}

/// Fixed 17-significant-digit float format shared by every output file.
fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_snapshot_csv(
    path: &Path,
    run_id: &str,
    block: &SnapshotBlock,
    grid_points: &[f64],
) -> Result<()> {
    let mut out = String::new();
    out.push_str("run_id,t,x,field,value,repaired\n");
    let t_str = fmt_float(block.t);
    // Full-grid fields first, then the window-restricted potentials.
    let full: [(&str, &Vec<f64>); 3] = [
        ("n", &block.n),
        ("theta", &block.theta),
        ("V_ext", &block.v_ext.values),
    ];
    for (name, values) in full {
        for (i, &x) in grid_points.iter().enumerate() {
            writeln!(
                out,
                "{run_id},{t_str},{},{name},{},0",
                fmt_float(x),
                fmt_float(values[i])
            )
            .expect("string write");
        }
    }
    let windowed: [(&str, &Vec<f64>); 4] = [
        ("V_c", &block.v_c.values),
        ("V_c_frac", &block.v_c_frac.values),
        ("V_KS", &block.v_ks.values),
        ("V_KS_frac", &block.v_ks_frac.values),
    ];
    for (name, values) in windowed {
        for (i, &x) in grid_points.iter().enumerate() {
            if values[i].is_finite() {
                writeln!(
                    out,
                    "{run_id},{t_str},{},{name},{},{}",
                    fmt_float(x),
                    fmt_float(values[i]),
                    u8::from(block.repaired[i])
                )
                .expect("string write");
            }
        }
    }
    fs::write(path, out)?;
    Ok(())
}

fn stage_dir(final_dir: &Path, run_id: &str) -> PathBuf {
    final_dir
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .join(format!(".staging-{run_id}"))
}

/// Atomically publishes the staged directory, replacing a previous run of
/// the same id.
fn publish(staged: &Path, final_dir: &Path) -> Result<()> {
    if final_dir.exists() {
        fs::remove_dir_all(final_dir)?;
    }
    fs::rename(staged, final_dir)?;
    Ok(())
}

/// Runs the full pipeline at each configured snapshot time and writes one
/// CSV block per time, a manifest, and (when enabled) one SVG per time.
pub fn simulate(cfg: &SimulationConfig) -> Result<RunReport> {
    simulate_into(cfg, Path::new(&cfg.output_dir))
}

pub fn simulate_into(cfg: &SimulationConfig, out_root: &Path) -> Result<RunReport> {
    cfg.validate()?;
    let started = Instant::now();
    let echo = cfg.canonical_text();
    let id = run_id("sim", &echo);
    let basis = TwoLevelBasis::new(cfg.omega_sys, cfg.mass, cfg.grid)?;
    let params = basis.dephasing_params(cfg.gamma)?;

    let blocks: Vec<SnapshotBlock> = cfg
        .times
        .par_iter()
        .map(|&t| build_snapshot_block(cfg, &basis, &params, &cfg.frac, t))
        .collect::<Result<Vec<_>>>()?;

    let final_dir = out_root.join(&id);
    let staged = stage_dir(&final_dir, &id);
    if staged.exists() {
        fs::remove_dir_all(&staged)?;
    }
    fs::create_dir_all(&staged)?;

    let xs = cfg.grid.points();
    let mut snapshot_files = Vec::new();
    let mut repairs = Vec::new();
    let mut repaired_total = 0;
    for (i, block) in blocks.iter().enumerate() {
        let file = format!("snapshot_{i}.csv");
        if cfg.formats.contains(&OutputFormat::Csv) {
            write_snapshot_csv(&staged.join(&file), &id, block, &xs)?;
            snapshot_files.push(file.clone());
        }
        if cfg.formats.contains(&OutputFormat::Svg) {
            let svg_file = format!("snapshot_{i}.svg");
            svg::write_snapshot_figure(&staged.join(&svg_file), block, &xs)?;
            snapshot_files.push(svg_file);
        }
        repaired_total +=
            block.repair_exact.repaired_points + block.repair_frac.repaired_points;
        repairs.push(ManifestRepairEntry {
            file,
            t: block.t,
            repaired_exact: block.repair_exact,
            repaired_frac: block.repair_frac,
        });
    }

    let manifest = RunManifest {
        run_id: id.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        mode: "simulate".to_string(),
        gauge: "theta(x_min) = 0".to_string(),
        comb_mode: cfg.kicked.comb_mode.name().to_string(),
        power_branch: cfg.frac.branch.name().to_string(),
        snapshot_files,
        repairs,
        flagged: Vec::new(),
        wall_time_ms: started.elapsed().as_millis(),
        config_echo: echo,
    };
    fs::write(
        staged.join("manifest.json"),
        serde_json::to_string_pretty(&manifest)?,
    )?;

    publish(&staged, &final_dir)?;
    Ok(RunReport {
        run_id: id,
        directory: final_dir,
        snapshots: blocks.len(),
        repaired_points: repaired_total,
    })
}

/// Distance between the fractional and exact correlation potentials,
/// sup over |x| <= 2 and the shared finite window.
pub fn correlation_distance(block: &SnapshotBlock, grid_points: &[f64]) -> (f64, f64) {
    let mut sup = 0.0f64;
    let mut scale = 0.0f64;
    for (i, &x) in grid_points.iter().enumerate() {
        if x.abs() > 2.0 {
            continue;
        }
        let a = block.v_c.values[i];
        let b = block.v_c_frac.values[i];
        if a.is_finite() && b.is_finite() {
            sup = sup.max((b - a).abs());
            scale = scale.max(a.abs());
        }
    }
    let rel = if scale > 0.0 { sup / scale } else { f64::NAN };
    (sup, rel)
}

/// One snapshot block per axis value at the configured sweep time, plus a
/// summary CSV of the exact-vs-fractional correlation distances.
/// Values whose fractional potential cannot be evaluated or repaired are
/// flagged and reported, not fatal.
pub fn sweep(cfg: &SimulationConfig, axis: SweepAxis, values: &[f64]) -> Result<SweepReport> {
    sweep_into(cfg, axis, values, Path::new(&cfg.output_dir))
}

pub fn sweep_into(
    cfg: &SimulationConfig,
    axis: SweepAxis,
    values: &[f64],
    out_root: &Path,
) -> Result<SweepReport> {
    cfg.validate()?;
    if values.is_empty() {
        return Err(Error::Config("sweep needs at least one value".into()));
    }
    let started = Instant::now();
    let echo = cfg.canonical_text();
    let values_echo: String = values.iter().map(|v| format!("{v:.17e},")).collect();
    let id = run_id(&format!("sweep-{}", axis.name()), &format!("{echo}{values_echo}"));

    let basis = TwoLevelBasis::new(cfg.omega_sys, cfg.mass, cfg.grid)?;
    let params = basis.dephasing_params(cfg.gamma)?;
    let t = cfg.sweep_time;

    // A sweep point is pure: vary one axis, rebuild the block.
    let point = |&value: &f64| -> (f64, Result<SnapshotBlock>) {
        let mut local = cfg.clone();
        let mut frac = cfg.frac;
        match axis {
            SweepAxis::Omega => local.kicked.omega = value,
            SweepAxis::Kick => local.kicked.kick_strength = value,
            SweepAxis::Alpha => match FracOrder::new(value) {
                Ok(order) => frac.order = order,
                Err(e) => return (value, Err(e)),
            },
        }
        (value, build_snapshot_block(&local, &basis, &params, &frac, t))
    };
    let outcomes: Vec<(f64, Result<SnapshotBlock>)> = values.par_iter().map(point).collect();

    let final_dir = out_root.join(&id);
    let staged = stage_dir(&final_dir, &id);
    if staged.exists() {
        fs::remove_dir_all(&staged)?;
    }
    fs::create_dir_all(&staged)?;

    let xs = cfg.grid.points();
    let mut rows = Vec::new();
    let mut repairs = Vec::new();
    let mut flagged = Vec::new();
    let mut snapshot_files = Vec::new();
    for (i, (value, outcome)) in outcomes.iter().enumerate() {
        match outcome {
            Ok(block) => {
                let file = format!("snapshot_{i}.csv");
                if cfg.formats.contains(&OutputFormat::Csv) {
                    write_snapshot_csv(&staged.join(&file), &id, block, &xs)?;
                    snapshot_files.push(file.clone());
                }
                let (sup, rel) = correlation_distance(block, &xs);
                let repaired = block.repair_exact.repaired_points
                    + block.repair_frac.repaired_points;
                repairs.push(ManifestRepairEntry {
                    file,
                    t,
                    repaired_exact: block.repair_exact,
                    repaired_frac: block.repair_frac,
                });
                rows.push(SweepRow {
                    value: *value,
                    sup_dist: sup,
                    rel_dist: rel,
                    repaired_points: repaired,
                    flagged: false,
                });
            }
            Err(err) => match err {
                Error::UnrepairableSingularity { .. }
                | Error::StrictNegativeBase(_)
                | Error::InvalidFracOrder(_)
                | Error::MittagLefflerDomain { .. }
                | Error::MittagLefflerDiverged { .. } => {
                    flagged.push(format!("{} = {value}: {err}", axis.name()));
                    rows.push(SweepRow {
                        value: *value,
                        sup_dist: f64::NAN,
                        rel_dist: f64::NAN,
                        repaired_points: 0,
                        flagged: true,
                    });
                }
                _ => {
                    return Err(Error::Config(format!(
                        "sweep point {} = {value} failed: {err}",
                        axis.name()
                    )))
                }
            },
        }
    }

    let mut summary = String::from("axis,value,sup_dist,rel_dist,repaired_points\n");
    for row in &rows {
        writeln!(
            summary,
            "{},{},{},{},{}",
            axis.name(),
            fmt_float(row.value),
            fmt_float(row.sup_dist),
            fmt_float(row.rel_dist),
            row.repaired_points
        )
        .expect("string write");
    }
    fs::write(staged.join("summary.csv"), summary)?;

    let manifest = RunManifest {
        run_id: id.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        mode: format!("sweep-{}", axis.name()),
        gauge: "theta(x_min) = 0".to_string(),
        comb_mode: cfg.kicked.comb_mode.name().to_string(),
        power_branch: cfg.frac.branch.name().to_string(),
        snapshot_files,
        repairs,
        flagged,
        wall_time_ms: started.elapsed().as_millis(),
        config_echo: echo,
    };
    fs::write(
        staged.join("manifest.json"),
        serde_json::to_string_pretty(&manifest)?,
    )?;

    publish(&staged, &final_dir)?;
    Ok(SweepReport {
        run_id: id,
        directory: final_dir,
        axis,
        rows,
    })
}
