//! fracks: exact and space-fractional Kohn-Sham potential reconstruction
//! for a two-level one-electron system undergoing pure dephasing.
//!
//! The density matrix evolves under a dephasing master equation; the grid
//! density it produces is carried by one closed Kohn-Sham orbital whose
//! phase is closed from continuity. From those fields the crate
//! reconstructs the exact correlation/K-S potentials and their
//! space-fractional counterparts built on the modified Riemann-Liouville
//! derivative and Mittag-Leffler functions, with a delta-kicked harmonic
//! oscillator available as the external potential.
//!
//! The `examples/` directory holds one runnable program per capability;
//! the `fracks` binary wraps the same pipeline behind `simulate`,
//! `sweep`, `validate`, and `ml` subcommands.

pub mod config;
pub mod error;
pub mod fields;
pub mod fractional;
pub mod ks;
pub mod ksfrac;
pub mod lindblad;
pub mod pipeline;
pub mod potentials;
mod svg;
pub mod validation;

pub use config::{ExternalKind, OutputFormat, SimulationConfig};
pub use error::{Error, Result};
pub use fields::{
    assemble_density, density_time_derivative, ho_eigenfunction, phase_from_continuity,
    phase_time_derivative, spatial_derivatives, FieldSnapshot, SpatialGrid, TwoLevelBasis,
};
pub use fractional::{
    frac_power, frac_power_rule, gamma_fn, ml_derivative_a8, mittag_leffler,
    mittag_leffler_trunc2, rl_frac_derivative, FracOrder, PowerBranchMode, SampledFunction,
};
pub use ks::{exact_correlation_potential, ks_potential_total, tdse_residual, KsOrbital};
pub use ksfrac::{
    frac_correlation_potential, frac_ks_potential, frac_orbital_full, frac_orbital_trunc,
    frac_partial_density, frac_partial_phase, frac_spatial_derivative, singularity_repair,
    FracConfig, RepairStats,
};
pub use lindblad::{
    analytic_state, dephasing_timescale, lindblad_rhs, propagate_rk4, DephasingParams,
    TwoLevelDensity,
};
pub use pipeline::{simulate, simulate_into, sweep, sweep_into, RunReport, SweepAxis, SweepReport};
pub use potentials::{
    comb_amplitude, eval_delta_kicked, eval_harmonic, CombMode, HarmonicSign,
    KickedOscillatorParams, PotentialField,
};
