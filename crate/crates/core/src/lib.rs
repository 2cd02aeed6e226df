//! Thermodynamics of ideal Bose and Fermi gases in confined geometry.
//!
//! The single-particle state sum of a planar Dirichlet domain with area `Ω`,
//! boundary length `L` and `r` holes is replaced by its three-term heat-kernel
//! expansion `Ω/λ² − L/(4λ) + (1−r)/6`. Summing over occupation numbers turns
//! every thermodynamic quantity into a combination of the Bose-Einstein or
//! Fermi-Dirac integrals `h_σ(z)`.
//!
//! Module map:
//!
//! - [`specfun`]: the `h_σ(z)` family with error bounds.
//! - [`geometry`]: container descriptors and the corrected state sum.
//! - [`eos`]: grand potential, particle number, fugacity solver, pressure.
//! - [`thermo`]: internal energy, free energy, entropy and heat capacity in
//!   closed form, with the auxiliary coefficients that resolve `λ`.
//! - [`spectral`]: exact Dirichlet spectra of rectangles, disks and annuli,
//!   used as a brute-force reference for everything above.
//! - [`verify`]: the oracle comparisons packaged as pass/fail rows.
//!
//! All quantities are in natural units, `ħ = m = k_B = 1`.

pub mod eos;
pub mod error;
pub mod geometry;
pub mod quadrature;
pub mod roots;
pub mod spectral;
pub mod specfun;
pub mod thermo;
pub mod verify;

pub use eos::{
    log_grand_potential_2d, log_grand_potential_tube, particle_number_2d, particle_number_tube,
    pressure, solve_fugacity, Container, GasState, SolverOptions, ValidityReport,
    ValidityThresholds, Warning,
};
pub use error::{Error, Result};
pub use geometry::{
    make_domain, thermal_wavelength, weyl_state_sum, PlanarDomain, ShapeSpec, TubeDomain,
    UnitSystem,
};
pub use specfun::{eval_h, FunctionValue, Method, Order, StatKind};
pub use thermo::{thermo_2d, thermo_3d, Aux, Aux2D, Aux3D, ThermoReport};
