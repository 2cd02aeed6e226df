//! Oracle comparisons packaged as pass/fail rows.
//!
//! `heatkernel` compares exact heat-kernel traces with the three-term
//! expansion. `thermo` checks the closed-form thermodynamics against its own
//! defining relations and finite differences of the fugacity solver.

use std::f64::consts::PI;

use crate::eos::{solve_fugacity, Container, SolverOptions};
use crate::error::Result;
use crate::geometry::{make_domain, PlanarDomain, ShapeSpec, TubeDomain};
use crate::spectral::{spectrum_for, theta_cutoff, theta_sum, weyl_theta, ThetaQuery};
use crate::specfun::{h, Order, StatKind};
use crate::thermo::{dz_dt_2d, dz_dt_3d, thermo, Aux};

pub const DEFAULT_T_LIST: [f64; 3] = [0.1, 0.05, 0.025];

/// Tolerances of the heat-kernel rows.
pub const DISK_RESIDUAL_TOL: f64 = 0.03;
pub const RESIDUAL_RATIO_RANGE: (f64, f64) = (0.5, 0.9);
pub const ANNULUS_CONSTANT_TOL: f64 = 0.05;
pub const SQUARE_THETA: f64 = 0.58006;
pub const SQUARE_THETA_TOL: f64 = 5e-4;
pub const SQUARE_CORNER_CONSTANT: f64 = 0.25;
pub const SQUARE_CORNER_TOL: f64 = 0.005;

/// Tolerances of the thermodynamic rows.
pub const SIGMA_IDENTITY_TOL: f64 = 1e-8;
pub const ENTROPY_IDENTITY_TOL: f64 = 1e-12;
pub const DZ_DT_TOL: f64 = 1e-6;
pub const HEAT_CAPACITY_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Reported, never counted as a failure.
    pub informational: bool,
    pub note: String,
}

impl Check {
    fn within(suite: &'static str, name: String, measured: f64, tolerance: f64) -> Check {
        Check {
            suite,
            name,
            measured,
            tolerance,
            passed: measured.abs() <= tolerance,
            informational: false,
            note: String::new(),
        }
    }

    fn note(mut self, note: impl Into<String>) -> Check {
        self.note = note.into();
        self
    }
}

fn theta(shape: &ShapeSpec, t: f64) -> Result<f64> {
    let spec = spectrum_for(shape, theta_cutoff(t))?;
    Ok(theta_sum(&spec, ThetaQuery::new(t)?)?.value)
}

/// Disk residual trend over `t_list`, annulus constant term, unit-square
/// corner constant.
pub fn heatkernel_suite(t_list: &[f64]) -> Result<Vec<Check>> {
    const S: &str = "heatkernel";
    let mut rows = Vec::new();
    let disk = ShapeSpec::Disk { radius: 1.0 };
    let mut residuals = Vec::new();
    for &t in t_list {
        let r = theta(&disk, t)? - weyl_theta(&disk, t)?;
        residuals.push((t, r));
        rows.push(
            Check::within(S, format!("disk R=1 t={t} residual"), r, DISK_RESIDUAL_TOL)
                .note(format!("O(√t) scale {:.4}", t.sqrt())),
        );
    }
    for w in residuals.windows(2) {
        let ratio = w[1].1.abs() / w[0].1.abs();
        let (lo, hi) = RESIDUAL_RATIO_RANGE;
        rows.push(Check {
            suite: S,
            name: format!("disk residual ratio t={}→{}", w[0].0, w[1].0),
            measured: ratio,
            tolerance: hi,
            passed: (lo..=hi).contains(&ratio),
            informational: false,
            note: format!("expected in [{lo}, {hi}]; √(t₂/t₁) = {:.4}", (w[1].0 / w[0].0).sqrt()),
        });
    }

    let annulus = ShapeSpec::Annulus { inner: 1.0, outer: 2.0 };
    let t = 0.05;
    let d = make_domain(&annulus)?;
    let two_term = d.area() / (2.0 * PI * t) - d.perimeter() / (4.0 * (2.0 * PI * t).sqrt());
    let constant = theta(&annulus, t)? - two_term;
    rows.push(
        Check::within(S, "annulus (1,2) t=0.05 constant term".into(), constant, ANNULUS_CONSTANT_TOL)
            .note("(1−r)/6 = 0 for one hole"),
    );

    let square = ShapeSpec::Rectangle { a: 1.0, b: 1.0 };
    let t = 0.1;
    let value = theta(&square, t)?;
    rows.push(Check::within(
        S,
        "unit square t=0.1 Θ".into(),
        value - SQUARE_THETA,
        SQUARE_THETA_TOL,
    ));
    let corner = value - (1.0 / (2.0 * PI * t) - 1.0 / (2.0 * PI * t).sqrt());
    rows.push(Check {
        informational: true,
        ..Check::within(
            S,
            "unit square t=0.1 corner constant".into(),
            corner - SQUARE_CORNER_CONSTANT,
            SQUARE_CORNER_TOL,
        )
        .note(format!(
            "constant {corner:.5}: four right-angle corners give 1/4, not the smooth-boundary 1/6"
        ))
    });
    Ok(rows)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Central difference `(f(x+h) − f(x−h))/2h` extrapolated from steps
/// `1e-4·x` and `1e-5·x`.
pub fn richardson_derivative<F>(mut f: F, x: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut central = |h: f64| -> Result<f64> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
    let coarse = central(1e-4 * x)?;
    let fine = central(1e-5 * x)?;
    Ok((100.0 * fine - coarse) / 99.0)
}

struct Case {
    label: &'static str,
    stat: StatKind,
    container: Container,
    n: f64,
    t: f64,
}

fn thermo_cases() -> Result<Vec<Case>> {
    let square = make_domain(&ShapeSpec::Rectangle { a: 1.0, b: 1.0 })?;
    let disk = make_domain(&ShapeSpec::Disk { radius: 3.0 })?;
    let ring = make_domain(&ShapeSpec::Annulus { inner: 1.0, outer: 3.0 })?;
    let holes = PlanarDomain::new(50.0, 40.0, 3)?;
    let tube = TubeDomain::new(make_domain(&ShapeSpec::Disk { radius: 1.0 })?, 100.0)?;
    let ring_tube = TubeDomain::new(holes, 400.0)?;
    let mut cases = Vec::new();
    for stat in [StatKind::Bose, StatKind::Fermi] {
        cases.push(Case { label: "square", stat, container: square.into(), n: 100.0, t: 1000.0 });
        cases.push(Case { label: "disk R=3", stat, container: disk.into(), n: 50.0, t: 60.0 });
        cases.push(Case { label: "annulus (1,3)", stat, container: ring.into(), n: 80.0, t: 80.0 });
        cases.push(Case { label: "3 holes", stat, container: holes.into(), n: 200.0, t: 150.0 });
        cases.push(Case { label: "tube disk R=1", stat, container: tube.into(), n: 1000.0, t: 60.0 });
        cases.push(Case { label: "tube 3 holes", stat, container: ring_tube.into(), n: 20_000.0, t: 100.0 });
    }
    Ok(cases)
}

/// σ identities, `S·T = U − F`, `∂z/∂T` and `C_V` against finite differences.
pub fn thermo_suite() -> Result<Vec<Check>> {
    const S: &str = "thermo";
    let opts = SolverOptions::default();
    let mut rows = Vec::new();
    for c in thermo_cases()? {
        let tag = format!("{} {} N={} T={}", c.label, c.stat, c.n, c.t);
        let r = thermo(c.stat, &c.container, c.n, c.t, &opts)?;
        let s = r.state;
        let z_of = |t: f64| -> Result<f64> { Ok(solve_fugacity(c.stat, &c.container, c.n, t, &opts)?.0.z) };
        let u_of = |t: f64| -> Result<f64> { Ok(thermo(c.stat, &c.container, c.n, t, &opts)?.energy) };
        let (sigma, identity, dz) = match r.aux {
            Aux::Planar(a) => (
                a.sigma2,
                c.container.section().area() * h(c.stat, Order::ONE, s.z)? / (c.n * s.lambda.powi(2)),
                dz_dt_2d(c.stat, &s, &a)?,
            ),
            Aux::Tube(a) => (
                a.sigma3,
                c.container.measure() * h(c.stat, Order::THREE_HALVES, s.z)? / (c.n * s.lambda.powi(3)),
                dz_dt_3d(c.stat, &s, &a)?,
            ),
        };
        rows.push(Check::within(S, format!("σ identity, {tag}"), rel(sigma, identity), SIGMA_IDENTITY_TOL));
        let ts = r.entropy * s.temperature;
        rows.push(Check::within(
            S,
            format!("S·T = U − F, {tag}"),
            rel(r.energy - r.free_energy, ts),
            ENTROPY_IDENTITY_TOL,
        ));
        let fd = richardson_derivative(z_of, c.t)?;
        rows.push(Check::within(S, format!("∂z/∂T, {tag}"), rel(dz, fd), DZ_DT_TOL));
        let fd = richardson_derivative(u_of, c.t)?;
        rows.push(Check::within(S, format!("C_V, {tag}"), rel(r.heat_capacity, fd), HEAT_CAPACITY_TOL));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_on_polynomial() {
        let d = richardson_derivative(|x| Ok(x.powi(5)), 2.0).unwrap();
        assert!((d - 80.0).abs() < 1e-8);
    }

    #[test]
    fn thermo_suite_passes() {
        for row in thermo_suite().unwrap() {
            assert!(row.passed, "{row:?}");
        }
    }
}
