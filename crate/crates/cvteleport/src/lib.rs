//! Teleportation fidelity for continuous-variable protocols with Gaussian
//! and non-Gaussian entangled resources.
//!
//! The crate models coherent-state teleportation through a shared two-mode
//! channel (the two-mode squeezed vacuum, its photon-subtracted variant or
//! its photon-added variant) including realistic imperfections: a lossy
//! Bell measurement (beam-splitter reflectivity `R`), propagation damping
//! (`tau`) with thermal occupation `n_th`, and a free displacement gain `g`.
//!
//! Three layers:
//!
//! * closed forms: [`states::epr_variance`], [`fidelity::fidelity_closed_form`],
//!   [`fidelity::fidelity_ideal`] and the characteristic functions in
//!   [`charfunc`];
//! * brute-force oracles: [`oracle`] re-derives the same quantities by 2-D
//!   quadrature, finite differences and truncated Fock-space series;
//! * drivers: [`sweep`] tabulates figures-of-merit over parameter grids and
//!   optimizes the gain, [`verify`] cross-validates the closed forms against
//!   the oracles.

pub mod charfunc;
pub mod error;
pub mod fidelity;
pub mod oracle;
pub mod states;
pub mod sweep;
pub mod verify;

pub use charfunc::{
    chi_coherent, chi_output, chi_output_xp, chi_resource, gamma_thermal, ChannelParams,
    PhasePoint, TwoModePhasePoint,
};
pub use error::{Error, Result};
pub use fidelity::{
    coefficients, fidelity_closed_form, fidelity_ideal, FidelityCoefficients, FidelityReport,
    CLASSICAL_BENCHMARK, NO_CLONING_BENCHMARK,
};
pub use oracle::{
    chi_resource_fock, displaced_fock_element, epr_variance_fock, fidelity_quadrature,
    lambda_operator_fd, FockOracleSpec, QuadratureResult, QuadratureSpec,
};
pub use states::{
    epr_variance, fock_amplitudes, lambda_from_r, FockAmplitudes, ResourceKind, ResourceSpec,
    SqueezingParam, LAMBDA_MAX,
};
pub use sweep::{
    epr_crossover, optimize_gain, run_sweep, SweepQuantity, SweepSpec, SweepTable, SweepVariable,
};
pub use verify::{run_verification, SuiteOutcome, VerifyGrid};

pub use num_complex::Complex64;
