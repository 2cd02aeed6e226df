//! Grand potential, particle number and pressure of the confined gas, and the
//! inversion of the particle-number equation for the fugacity.
//!
//! Planar domain:
//!
//! ```text
//! ln Ξ = (Ω/λ²) h_2(z)   − (L/(4λ)) h_{3/2}(z) + ((1−r)/6) h_1(z)
//! N    = (Ω/λ²) h_1(z)   − (L/(4λ)) h_{1/2}(z) + ((1−r)/6) h_0(z)
//! ```
//!
//! Tube of length `L_z` over a planar cross-section:
//!
//! ```text
//! ln Ξ = (L_zΩ/λ³) h_{5/2} − (L_zL/(4λ²)) h_2 + ((1−r)/6)(L_z/λ) h_{3/2}
//! N    = (L_zΩ/λ³) h_{3/2} − (L_zL/(4λ²)) h_1 + ((1−r)/6)(L_z/λ) h_{1/2}
//! ```
//!
//! `N = z ∂ln Ξ/∂z` lowers every order by one, and applying `z ∂/∂z` again
//! gives the slope used by the Newton steps of the solver.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{thermal_wavelength, PlanarDomain, TubeDomain};
use crate::roots::newton_bisect;
use crate::specfun::{h, Order, StatKind, DEFAULT_Z_MAX};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Container {
    Planar(PlanarDomain),
    Tube(TubeDomain),
}

impl From<PlanarDomain> for Container {
    fn from(d: PlanarDomain) -> Self {
        Container::Planar(d)
    }
}

impl From<TubeDomain> for Container {
    fn from(t: TubeDomain) -> Self {
        Container::Tube(t)
    }
}

impl Container {
    /// The planar domain, or the tube's cross-section.
    pub fn section(&self) -> &PlanarDomain {
        match self {
            Container::Planar(d) => d,
            Container::Tube(t) => t.cross_section(),
        }
    }

    /// Area (planar) or volume (tube).
    pub fn measure(&self) -> f64 {
        match self {
            Container::Planar(d) => d.area(),
            Container::Tube(t) => t.volume(),
        }
    }

    /// Bulk, boundary and connectivity prefactors at wavelength `lambda`,
    /// signs included.
    pub fn weyl_terms(&self, lambda: f64) -> [f64; 3] {
        let d = self.section();
        match self {
            Container::Planar(_) => [
                d.area() / (lambda * lambda),
                -0.25 * d.perimeter() / lambda,
                d.connectivity(),
            ],
            Container::Tube(t) => {
                let lz = t.length_z();
                [
                    lz * d.area() / lambda.powi(3),
                    -0.25 * lz * d.perimeter() / (lambda * lambda),
                    d.connectivity() * lz / lambda,
                ]
            }
        }
    }

    /// Order multiplying the bulk term of `ln Ξ`.
    pub fn top_order(&self) -> Order {
        match self {
            Container::Planar(_) => Order::TWO,
            Container::Tube(_) => Order::FIVE_HALVES,
        }
    }
}

/// Orders for the bulk, boundary and connectivity terms after `shift`
/// applications of `z ∂/∂z`.
fn term_orders(container: &Container, shift: i32) -> [Order; 3] {
    let top = container.top_order().twice() - 2 * shift;
    [top, top - 1, top - 2].map(|t| Order::new(f64::from(t) / 2.0).expect("supported order"))
}

/// The three contributions `coefficient × h_σ(z)` separately.
pub fn term_values(
    stat: StatKind,
    container: &Container,
    lambda: f64,
    z: f64,
    shift: i32,
) -> Result<[f64; 3]> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("wavelength must be positive, got {lambda}")));
    }
    let coeffs = container.weyl_terms(lambda);
    let orders = term_orders(container, shift);
    let mut out = [0.0; 3];
    for i in 0..3 {
        // Vanishing prefactors (free space, r = 1) must not force evaluating
        // orders that may diverge at this z.
        out[i] = if coeffs[i] == 0.0 { 0.0 } else { coeffs[i] * h(stat, orders[i], z)? };
    }
    Ok(out)
}

fn non_negative(what: &str, v: f64) -> Result<f64> {
    if v < 0.0 {
        Err(Error::Model(format!("{what} = {v} is negative; corrections exceed the bulk term")))
    } else {
        Ok(v)
    }
}

/// `ln Ξ` for any container.
pub fn log_grand_potential(stat: StatKind, container: &Container, lambda: f64, z: f64) -> Result<f64> {
    let t = term_values(stat, container, lambda, z, 0)?;
    non_negative("ln Ξ", t.iter().sum())
}

/// `N` for any container.
pub fn particle_number(stat: StatKind, container: &Container, lambda: f64, z: f64) -> Result<f64> {
    let t = term_values(stat, container, lambda, z, 1)?;
    non_negative("N", t.iter().sum())
}

/// `∂N/∂ln z` at fixed `λ`.
pub fn particle_number_slope(
    stat: StatKind,
    container: &Container,
    lambda: f64,
    z: f64,
) -> Result<f64> {
    Ok(term_values(stat, container, lambda, z, 2)?.iter().sum())
}

pub fn log_grand_potential_2d(stat: StatKind, dom: &PlanarDomain, lambda: f64, z: f64) -> Result<f64> {
    log_grand_potential(stat, &Container::Planar(*dom), lambda, z)
}

pub fn particle_number_2d(stat: StatKind, dom: &PlanarDomain, lambda: f64, z: f64) -> Result<f64> {
    particle_number(stat, &Container::Planar(*dom), lambda, z)
}

pub fn log_grand_potential_tube(stat: StatKind, tube: &TubeDomain, lambda: f64, z: f64) -> Result<f64> {
    log_grand_potential(stat, &Container::Tube(*tube), lambda, z)
}

pub fn particle_number_tube(stat: StatKind, tube: &TubeDomain, lambda: f64, z: f64) -> Result<f64> {
    particle_number(stat, &Container::Tube(*tube), lambda, z)
}

/// A solved thermodynamic state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasState {
    pub stat: StatKind,
    pub z: f64,
    pub lambda: f64,
    pub temperature: f64,
    pub particles: f64,
}

/// Thresholds above which a state is reported as outside the asymptotic regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityThresholds {
    /// Limit on `λ/√Ω`.
    pub wavelength: f64,
    /// Limit on `|boundary term| / bulk term` in the particle-number equation.
    pub boundary: f64,
}

impl Default for ValidityThresholds {
    fn default() -> Self {
        ValidityThresholds { wavelength: 0.2, boundary: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub tag: &'static str,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.tag, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    /// `λ/√Ω` (cross-section area for tubes).
    pub ratio_wavelength: f64,
    pub ratio_boundary: f64,
    pub ratio_topology: f64,
    /// Fermi state with `z > 1`, where the boundary and connectivity terms
    /// are used beyond the range of the series they come from.
    pub fermi_extension_used: bool,
    pub warnings: Vec<Warning>,
}

impl ValidityReport {
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// Ratios and warnings for a container at `(λ, z)`.
pub fn validity_report(
    stat: StatKind,
    container: &Container,
    lambda: f64,
    z: f64,
    thresholds: &ValidityThresholds,
) -> Result<ValidityReport> {
    let [bulk, boundary, topology] = term_values(stat, container, lambda, z, 1)?;
    let ratio_wavelength = lambda / container.section().area().sqrt();
    let ratio_boundary = boundary.abs() / bulk;
    let ratio_topology = topology.abs() / bulk;
    let mut warnings = Vec::new();
    if ratio_wavelength > thresholds.wavelength {
        warnings.push(Warning {
            tag: "wavelength",
            message: format!(
                "λ/√Ω = {ratio_wavelength:.4} exceeds the threshold {}",
                thresholds.wavelength
            ),
        });
    }
    if ratio_boundary > thresholds.boundary {
        warnings.push(Warning {
            tag: "boundary",
            message: format!(
                "boundary/bulk = {ratio_boundary:.4} exceeds the threshold {}",
                thresholds.boundary
            ),
        });
    }
    if let Container::Tube(t) = container {
        if t.is_short() {
            warnings.push(Warning {
                tag: "short-tube",
                message: format!(
                    "L_z/√Ω = {:.2} is below 100",
                    t.length_z() / t.cross_section().area().sqrt()
                ),
            });
        }
    }
    Ok(ValidityReport {
        ratio_wavelength,
        ratio_boundary,
        ratio_topology,
        fermi_extension_used: stat == StatKind::Fermi && z > 1.0,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative tolerance on `N`.
    pub tol: f64,
    /// Bose states need `z ≤ 1 − condensation_gap`.
    pub condensation_gap: f64,
    pub z_max: f64,
    pub max_iter: usize,
    pub thresholds: ValidityThresholds,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-12,
            condensation_gap: 1e-12,
            z_max: DEFAULT_Z_MAX,
            max_iter: 200,
            thresholds: ValidityThresholds::default(),
        }
    }
}

/// Solves the particle-number equation for `z` at given `N` and `T`.
///
/// The search runs in `ln z` on a sign-change bracket: below by lowering `z`
/// until `N(z)` falls under the target, above by `1 − ε` for bosons or by
/// doubling `z` for fermions. A non-positive `∂N/∂ln z` anywhere the solver
/// looks aborts with [`Error::NonMonotone`].
pub fn solve_fugacity(
    stat: StatKind,
    container: &Container,
    particles: f64,
    temperature: f64,
    opts: &SolverOptions,
) -> Result<(GasState, ValidityReport)> {
    if !(particles > 0.0) || !particles.is_finite() {
        return Err(Error::Domain(format!("particle number must be positive, got {particles}")));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let lambda = thermal_wavelength(temperature)?;
    let leading: f64 = container.weyl_terms(lambda).iter().sum();
    if !(leading > 0.0) {
        return Err(Error::Model(format!(
            "state sum {leading} is not positive at λ = {lambda}; the wavelength is too large for this container"
        )));
    }

    let residual = |w: f64| -> Result<(f64, f64)> {
        let z = w.exp();
        let n = particle_number(stat, container, lambda, z)?;
        let slope = particle_number_slope(stat, container, lambda, z)?;
        if !(slope > 0.0) {
            return Err(Error::NonMonotone(format!(
                "∂N/∂ln z = {slope:e} at z = {z}; the corrections dominate the bulk term"
            )));
        }
        Ok((n - particles, slope))
    };

    let w_top = match stat {
        StatKind::Bose => (-opts.condensation_gap).ln_1p(),
        StatKind::Fermi => opts.z_max.ln(),
    };
    let mut w_lo = ((particles / leading).ln() - 1.0).min(w_top - 1.0);
    let mut r_lo = residual(w_lo)?;
    while r_lo.0 >= 0.0 {
        w_lo -= 5.0;
        if w_lo < -700.0 {
            return Err(Error::NoBracket(format!("no fugacity gives N below {particles}")));
        }
        r_lo = residual(w_lo)?;
    }

    let (w_hi, r_hi) = match stat {
        StatKind::Bose => {
            // Approach the cap in decades of 1 − z, so a turning point of
            // N(z) short of the cap is seen before the cap is evaluated.
            let mut gaps: Vec<f64> = (1..)
                .map(|k| 10f64.powi(-k))
                .take_while(|&g| g > opts.condensation_gap)
                .collect();
            gaps.push(opts.condensation_gap);
            let mut found = None;
            let mut last = r_lo;
            for gap in gaps {
                let w = (-gap).ln_1p();
                if w <= w_lo {
                    continue;
                }
                last = residual(w)?;
                if last.0 >= 0.0 {
                    found = Some((w, last));
                    break;
                }
            }
            match found {
                Some(b) => b,
                None => {
                    return Err(Error::NoBracket(format!(
                        "N = {particles} exceeds the {} particles reachable below z = 1 − {:e}; \
                         the state is near condensation, outside the model",
                        last.0 + particles,
                        opts.condensation_gap
                    )))
                }
            }
        }
        StatKind::Fermi => {
            let mut w = w_lo.max(0.0);
            let mut r = residual(w)?;
            while r.0 < 0.0 {
                w += std::f64::consts::LN_2;
                if w >= w_top {
                    w = w_top - 1e-9;
                    r = residual(w)?;
                    if r.0 < 0.0 {
                        return Err(Error::NoBracket(format!(
                            "N = {particles} not reached below the fugacity cap {}",
                            opts.z_max
                        )));
                    }
                    break;
                }
                r = residual(w)?;
            }
            (w, r)
        }
    };

    let target = opts.tol * particles;
    let seed = (particles / leading).ln();
    let root = newton_bisect(
        residual,
        w_lo,
        w_hi,
        r_lo.0,
        r_hi.0,
        Some(seed),
        |_, r| r.abs() <= target,
        opts.max_iter,
    )
    .map_err(|e| match e {
        Error::Convergence(msg) => Error::Accuracy {
            context: format!("fugacity solve: {msg}"),
            target: opts.tol,
            achieved: f64::NAN,
        },
        other => other,
    })?;

    let z = root.x.exp();
    let state = GasState { stat, z, lambda, temperature, particles };
    let report = validity_report(stat, container, lambda, z, &opts.thresholds)?;
    Ok((state, report))
}

/// `P = T ln Ξ / Ω` (spreading pressure) or `T ln Ξ / (L_zΩ)`.
pub fn pressure(stat: StatKind, container: &Container, state: &GasState) -> Result<f64> {
    let ln_xi = log_grand_potential(stat, container, state.lambda, state.z)?;
    Ok(state.temperature * ln_xi / container.measure())
}
