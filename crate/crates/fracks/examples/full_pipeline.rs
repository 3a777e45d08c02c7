//! The complete file-producing pipeline: simulate into a scratch
//! directory, then inspect the run layout, manifest, and CSV schema.
//!
//! ```bash
//! cargo run --example full_pipeline
//! ```

use fracks::config::SimulationConfig;
use fracks::pipeline::{simulate_into, sweep_into, SweepAxis};

fn main() {
    let scratch = std::env::temp_dir().join(format!("fracks-example-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&scratch);

    let cfg = SimulationConfig {
        grid: fracks::SpatialGrid::new(-8.0, 8.0, 401).expect("valid grid"),
        ..SimulationConfig::default()
    };

    let report = simulate_into(&cfg, &scratch).expect("simulate");
    println!("simulate run {}", report.run_id);
    println!("  {} snapshot blocks, {} repaired points", report.snapshots, report.repaired_points);
    println!("  files:");
    let mut names: Vec<_> = std::fs::read_dir(&report.directory)
        .expect("run directory")
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    for name in &names {
        println!("    {name}");
    }

    let csv = std::fs::read_to_string(report.directory.join("snapshot_0.csv")).expect("csv");
    println!();
    println!("snapshot_0.csv starts with:");
    for line in csv.lines().take(4) {
        println!("    {line}");
    }

    let sweep = sweep_into(&cfg, SweepAxis::Omega, &[0.5, 1.0, 2.0], &scratch).expect("sweep");
    println!();
    println!("sweep run {} summary:", sweep.run_id);
    let summary = std::fs::read_to_string(sweep.directory.join("summary.csv")).expect("summary");
    for line in summary.lines() {
        println!("    {line}");
    }

    std::fs::remove_dir_all(&scratch).expect("cleanup");
    println!();
    println!("(scratch directory removed; point [output] directory at a real path");
    println!(" or use the fracks binary for persistent runs)");
}
