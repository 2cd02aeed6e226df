//! Internal energy, free energy, entropy and heat capacity at fixed `N`.
//!
//! The closed forms eliminate `λ` from the thermodynamic functions by
//! solving the particle-number equation for `1/λ`: a quadratic in the plane,
//! resolved by `σ₂ = Ωh₁/(Nλ²)`, and a cubic in the tube, resolved by
//! `σ₃ = L_zΩh_{3/2}/(Nλ³)`. Both equal 1 without boundary corrections.
//! `η₂`, `η₃` are the corresponding factors in `∂z/∂T` at fixed `N`.

use crate::eos::{
    pressure, solve_fugacity, validity_report, Container, GasState, SolverOptions, ValidityReport,
};
use crate::error::{Error, Result};
use crate::geometry::{PlanarDomain, TubeDomain};
use crate::specfun::{HTable, Order, StatKind};

/// Smallest denominator magnitude accepted in the closed forms.
pub const SINGULARITY_GUARD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aux2D {
    pub sigma2: f64,
    pub eta2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aux3D {
    pub sigma3: f64,
    pub eta3: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    pub xi4: f64,
    pub xi5: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Aux {
    Planar(Aux2D),
    Tube(Aux3D),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThermoReport {
    pub energy: f64,
    pub free_energy: f64,
    pub entropy: f64,
    pub heat_capacity: f64,
    pub pressure: f64,
    pub state: GasState,
    pub aux: Aux,
    pub validity: ValidityReport,
}

fn guard(what: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || value.abs() < SINGULARITY_GUARD {
        Err(Error::Singularity { what, value })
    } else {
        Ok(value)
    }
}

/// `coef · value`, treating a vanishing coefficient as an exact zero.
fn term(coef: f64, value: f64) -> f64 {
    if coef == 0.0 {
        0.0
    } else {
        coef * value
    }
}

const ORDERS_2D: [Order; 7] = [
    Order::MINUS_ONE,
    Order::MINUS_HALF,
    Order::ZERO,
    Order::HALF,
    Order::ONE,
    Order::THREE_HALVES,
    Order::TWO,
];

const ORDERS_3D: [Order; 7] = [
    Order::MINUS_HALF,
    Order::ZERO,
    Order::HALF,
    Order::ONE,
    Order::THREE_HALVES,
    Order::TWO,
    Order::FIVE_HALVES,
];

fn check_particles(n: f64) -> Result<()> {
    if n > 0.0 && n.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("particle number must be positive, got {n}")))
    }
}

/// Shape factors of the plane: `L/(√Ω √N)` and `(1−r)/(6N)`.
struct Planar {
    g: f64,
    c: f64,
}

impl Planar {
    fn new(dom: &PlanarDomain, n: f64) -> Planar {
        Planar {
            g: dom.perimeter() / (dom.area().sqrt() * n.sqrt()),
            c: dom.connectivity() / n,
        }
    }
}

fn aux_2d_from(h: &HTable, s: &Planar) -> Result<Aux2D> {
    let [hm1, hmh, h0, hh, h1] =
        [Order::MINUS_ONE, Order::MINUS_HALF, Order::ZERO, Order::HALF, Order::ONE].map(|o| h.get(o));
    let ch0 = term(s.c, h0);
    let b = term(s.g / 8.0, hh / h1.sqrt());
    let radicand = 1.0 + term(s.g * s.g / 64.0, hh * hh / h1) - ch0;
    if radicand < 0.0 {
        return Err(Error::Model(format!(
            "σ₂ radicand {radicand} is negative; corrections exceed the bulk term"
        )));
    }
    let den = guard("σ₂ denominator", radicand.sqrt() - b)?;
    let root = (1.0 - ch0) / den;
    let sigma2 = root * root;
    let num = 1.0 - b / root.abs();
    let den = 1.0 - term(s.g / 4.0, h1.sqrt() * hmh / h0) / root.abs() + term(s.c, h1 * hm1 / h0) / sigma2;
    let eta2 = num / guard("η₂ denominator", den)?;
    Ok(Aux2D { sigma2, eta2 })
}

/// `σ₂`, `η₂` for the plane at fugacity `z` and particle number `N`.
pub fn aux_2d(stat: StatKind, z: f64, n: f64, dom: &PlanarDomain) -> Result<Aux2D> {
    check_particles(n)?;
    let h = HTable::with_orders(stat, z, &ORDERS_2D[..5])?;
    aux_2d_from(&h, &Planar::new(dom, n))
}

pub fn thermo_2d(stat: StatKind, dom: &PlanarDomain, n: f64, temperature: f64) -> Result<ThermoReport> {
    thermo_2d_with(stat, dom, n, temperature, &SolverOptions::default())
}

pub fn thermo_2d_with(
    stat: StatKind,
    dom: &PlanarDomain,
    n: f64,
    temperature: f64,
    opts: &SolverOptions,
) -> Result<ThermoReport> {
    let container = Container::Planar(*dom);
    let (state, validity) = solve_fugacity(stat, &container, n, temperature, opts)?;
    let h = HTable::with_orders(stat, state.z, &ORDERS_2D)?;
    let s = Planar::new(dom, n);
    let aux = aux_2d_from(&h, &s)?;
    let (h0, hh, h1, h32, h2) = (
        h.get(Order::ZERO),
        h.get(Order::HALF),
        h.get(Order::ONE),
        h.get(Order::THREE_HALVES),
        h.get(Order::TWO),
    );
    let Aux2D { sigma2, eta2 } = aux;
    let rs = sigma2.sqrt();
    let bulk = h2 / h1 * sigma2;
    let edge = term(s.g, h32 / h1.sqrt() * rs);
    let hole = term(s.c, h1);
    let ln_z = state.z.ln();
    let nt = n * temperature;

    let energy = nt * (bulk - edge / 8.0);
    let free_energy = nt * (ln_z - (bulk - edge / 4.0 + hole));
    let entropy = n * (2.0 * bulk - ln_z - 3.0 * edge / 8.0 + hole);
    let heat_capacity = n
        * (sigma2 * (2.0 * h2 / h1 - eta2 * h1 / h0)
            - term(s.g, rs * (3.0 / 16.0 * h32 / h1.sqrt() - eta2 * h1.sqrt() * hh / (8.0 * h0))));
    Ok(ThermoReport {
        energy,
        free_energy,
        entropy,
        heat_capacity,
        pressure: pressure(stat, &container, &state)?,
        state,
        aux: Aux::Planar(aux),
        validity,
    })
}

/// `∂z/∂T` at fixed `N` in the plane.
pub fn dz_dt_2d(stat: StatKind, state: &GasState, aux: &Aux2D) -> Result<f64> {
    let h = HTable::with_orders(stat, state.z, &[Order::ZERO, Order::ONE])?;
    Ok(-state.z / state.temperature * h.get(Order::ONE) / h.get(Order::ZERO) * aux.eta2)
}

/// Shape factors of the tube.
struct Tube {
    n: f64,
    /// `1 − r`
    hole: f64,
    /// `L_z^{1/3} L / Ω^{2/3}`
    a: f64,
    /// `L_z^{2/3} / Ω^{1/3}`
    b: f64,
    lz: f64,
    area: f64,
    perimeter: f64,
}

impl Tube {
    fn new(tube: &TubeDomain, n: f64) -> Tube {
        let d = tube.cross_section();
        let lz = tube.length_z();
        Tube {
            n,
            hole: 1.0 - f64::from(d.holes()),
            a: lz.cbrt() * d.perimeter() / d.area().powf(2.0 / 3.0),
            b: lz.powf(2.0 / 3.0) / d.area().cbrt(),
            lz,
            area: d.area(),
            perimeter: d.perimeter(),
        }
    }
}

fn aux_3d_from(h: &HTable, t: &Tube) -> Result<Aux3D> {
    let (h0, hmh, hh, h1, h32) = (
        h.get(Order::ZERO),
        h.get(Order::MINUS_HALF),
        h.get(Order::HALF),
        h.get(Order::ONE),
        h.get(Order::THREE_HALVES),
    );
    let n = t.n;
    let n13 = n.cbrt();
    let n23 = n13 * n13;
    let hole = t.hole;

    let xi5 = 1.0 - term(hole * hole / (27.0 * n), t.lz / t.perimeter * hh * hh / h1);
    let xi4 = 1.0 - term(hole / (72.0 * n), t.lz * t.perimeter / t.area * h1 * hh / h32)
        + term(hole.powi(3) / (2916.0 * n * n), t.lz * t.lz / t.area * hh.powi(3) / h32);
    guard("ξ₄", xi4)?;
    let xi3 = xi5.powi(3) / (xi4 * xi4);
    let radicand = 1.0
        + term(
            t.lz * t.perimeter.powi(3) / (432.0 * n * t.area * t.area),
            h1.powi(3) / (h32 * h32) * xi3,
        );
    if radicand < 0.0 {
        return Err(Error::Model(format!(
            "ξ₂ radicand {radicand} is negative; corrections exceed the bulk term"
        )));
    }
    let xi2 = guard("ξ₂", (0.5 + 0.5 * radicand.sqrt()).cbrt())?;
    let xi1 = xi2 - term(t.a / (12.0 * n13), h1 / h32.powf(2.0 / 3.0) * xi3.cbrt()) / xi2
        + term(hole * t.b / (18.0 * n23), hh / h32.cbrt() / xi4.cbrt());
    guard("ξ₁", xi1)?;
    let sigma3 = 1.0 / (xi4 * xi1.powi(3));
    let s13 = sigma3.cbrt();
    let s23 = s13 * s13;
    let num = 1.0 - term(t.a / (6.0 * n13), h1 / h32.powf(2.0 / 3.0) / s13)
        + term(hole * t.b / (18.0 * n23), hh / h32.cbrt() / s23);
    let den = 1.0 - term(t.a / (4.0 * n13), h32.cbrt() * h0 / hh / s13)
        + term(hole * t.b / (6.0 * n23), h32.powf(2.0 / 3.0) * hmh / hh / s23);
    let eta3 = num / guard("η₃ denominator", den)?;
    Ok(Aux3D { sigma3, eta3, xi1, xi2, xi3, xi4, xi5 })
}

/// `σ₃`, `η₃` and `ξ₁…ξ₅` for the tube at fugacity `z` and particle number `N`.
pub fn aux_3d(stat: StatKind, z: f64, n: f64, tube: &TubeDomain) -> Result<Aux3D> {
    check_particles(n)?;
    let h = HTable::with_orders(stat, z, &ORDERS_3D[..5])?;
    aux_3d_from(&h, &Tube::new(tube, n))
}

pub fn thermo_3d(stat: StatKind, tube: &TubeDomain, n: f64, temperature: f64) -> Result<ThermoReport> {
    thermo_3d_with(stat, tube, n, temperature, &SolverOptions::default())
}

pub fn thermo_3d_with(
    stat: StatKind,
    tube: &TubeDomain,
    n: f64,
    temperature: f64,
    opts: &SolverOptions,
) -> Result<ThermoReport> {
    let container = Container::Tube(*tube);
    let (state, validity) = solve_fugacity(stat, &container, n, temperature, opts)?;
    let h = HTable::with_orders(stat, state.z, &ORDERS_3D)?;
    let t = Tube::new(tube, n);
    let aux = aux_3d_from(&h, &t)?;
    let (hh, h1, h32, h2, h52) = (
        h.get(Order::HALF),
        h.get(Order::ONE),
        h.get(Order::THREE_HALVES),
        h.get(Order::TWO),
        h.get(Order::FIVE_HALVES),
    );
    let Aux3D { sigma3, eta3, .. } = aux;
    let n13 = n.cbrt();
    let n23 = n13 * n13;
    let s13 = sigma3.cbrt();
    let s23 = s13 * s13;
    let h32_13 = h32.cbrt();
    let h32_23 = h32_13 * h32_13;

    let bulk = h52 / h32 * sigma3;
    let edge = term(t.a / n13, h2 / h32_23 * s23);
    let hole = term(t.hole * t.b / n23, h32_23 * s13);
    let ln_z = state.z.ln();
    let nt = n * temperature;

    let energy = nt * (1.5 * bulk - edge / 4.0 + hole / 12.0);
    let free_energy = nt * (ln_z - (bulk - edge / 4.0 + hole / 6.0));
    let entropy = n * (2.5 * bulk - ln_z - edge / 2.0 + hole / 4.0);
    let heat_capacity = n
        * (sigma3 * (3.75 * h52 / h32 - 2.25 * eta3 * h32 / hh)
            - term(t.a / n13, s23 * (h2 / (2.0 * h32_23) - 0.375 * eta3 * h32_13 * h1 / hh))
            + term(t.hole * t.b / (6.0 * n23), s13 * 0.75 * (1.0 - eta3) * h32_23));
    Ok(ThermoReport {
        energy,
        free_energy,
        entropy,
        heat_capacity,
        pressure: pressure(stat, &container, &state)?,
        state,
        aux: Aux::Tube(aux),
        validity,
    })
}

/// `∂z/∂T` at fixed `N` in the tube.
pub fn dz_dt_3d(stat: StatKind, state: &GasState, aux: &Aux3D) -> Result<f64> {
    let h = HTable::with_orders(stat, state.z, &[Order::HALF, Order::THREE_HALVES])?;
    Ok(-1.5 * state.z / state.temperature * h.get(Order::THREE_HALVES) / h.get(Order::HALF) * aux.eta3)
}

/// Dispatches on the container kind.
pub fn thermo(
    stat: StatKind,
    container: &Container,
    n: f64,
    temperature: f64,
    opts: &SolverOptions,
) -> Result<ThermoReport> {
    match container {
        Container::Planar(d) => thermo_2d_with(stat, d, n, temperature, opts),
        Container::Tube(t) => thermo_3d_with(stat, t, n, temperature, opts),
    }
}

/// Recomputes the validity report of a finished state with other thresholds.
pub fn revalidate(
    report: &ThermoReport,
    container: &Container,
    opts: &SolverOptions,
) -> Result<ValidityReport> {
    let s = &report.state;
    validity_report(s.stat, container, s.lambda, s.z, &opts.thresholds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eos::particle_number_tube;
    use crate::geometry::{make_domain, ShapeSpec};
    use crate::specfun::h;

    fn rect(a: f64, b: f64) -> PlanarDomain {
        make_domain(&ShapeSpec::Rectangle { a, b }).unwrap()
    }

    fn disk(r: f64) -> PlanarDomain {
        make_domain(&ShapeSpec::Disk { radius: r }).unwrap()
    }

    #[test]
    fn free_space_aux_is_unity() {
        let free = PlanarDomain::free_space(7.0).unwrap();
        for stat in [StatKind::Bose, StatKind::Fermi] {
            let a = aux_2d(stat, 0.37, 55.0, &free).unwrap();
            assert_eq!(a, Aux2D { sigma2: 1.0, eta2: 1.0 });
            let tube = TubeDomain::new(free, 300.0).unwrap();
            let a = aux_3d(stat, 0.37, 55.0, &tube).unwrap();
            for v in [a.sigma3, a.eta3, a.xi1, a.xi2, a.xi3, a.xi4, a.xi5] {
                assert_eq!(v, 1.0);
            }
        }
    }

    #[test]
    fn one_hole_tube_has_trivial_cubic_coefficients() {
        let ring = make_domain(&ShapeSpec::Annulus { inner: 0.5, outer: 1.0 }).unwrap();
        let tube = TubeDomain::new(ring, 100.0).unwrap();
        let a = aux_3d(StatKind::Bose, 0.5, 1000.0, &tube).unwrap();
        assert_eq!((a.xi3, a.xi4, a.xi5), (1.0, 1.0, 1.0));
        assert!(a.xi2 != 1.0 && a.xi1 != 1.0 && a.sigma3 != 1.0 && a.eta3 != 1.0);
    }

    #[test]
    fn sigma2_identity_on_square() {
        let sq = rect(1.0, 1.0);
        let stat = StatKind::Bose;
        // choose T so the solved z is near 0.5
        let r = thermo_2d(stat, &sq, 100.0, 1000.0).unwrap();
        let Aux::Planar(a) = r.aux else { panic!() };
        let s = r.state;
        let identity = sq.area() * h(stat, Order::ONE, s.z).unwrap() / (100.0 * s.lambda * s.lambda);
        assert!((a.sigma2 / identity - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sigma3_identity_on_disk_tube() {
        let tube = TubeDomain::new(disk(1.0), 100.0).unwrap();
        let stat = StatKind::Bose;
        let r = thermo_3d(stat, &tube, 1000.0, 60.0).unwrap();
        let Aux::Tube(a) = r.aux else { panic!() };
        let s = r.state;
        let identity =
            tube.volume() * h(stat, Order::THREE_HALVES, s.z).unwrap() / (1000.0 * s.lambda.powi(3));
        assert!((a.sigma3 / identity - 1.0).abs() < 1e-10, "{} vs {identity}", a.sigma3);
        let n = particle_number_tube(stat, &tube, s.lambda, s.z).unwrap();
        assert!((n / 1000.0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sigma3_identity_with_holes() {
        let ring = PlanarDomain::new(10.0, 30.0, 4).unwrap();
        let tube = TubeDomain::new(ring, 500.0).unwrap();
        for stat in [StatKind::Bose, StatKind::Fermi] {
            let r = thermo_3d(stat, &tube, 5000.0, 40.0).unwrap();
            let Aux::Tube(a) = r.aux else { panic!() };
            let s = r.state;
            let identity = tube.volume() * h(stat, Order::THREE_HALVES, s.z).unwrap()
                / (5000.0 * s.lambda.powi(3));
            assert!((a.sigma3 / identity - 1.0).abs() < 1e-10, "{stat}");
            assert!(a.xi4 != 1.0 && a.xi5 != 1.0);
        }
    }

    #[test]
    fn entropy_identity() {
        let sq = rect(2.0, 1.0);
        let tube = TubeDomain::new(disk(1.0), 200.0).unwrap();
        for stat in [StatKind::Bose, StatKind::Fermi] {
            let r = thermo_2d(stat, &sq, 40.0, 300.0).unwrap();
            let ts = r.entropy * r.state.temperature;
            assert!((ts - (r.energy - r.free_energy)).abs() <= 1e-12 * ts.abs());
            let r = thermo_3d(stat, &tube, 400.0, 80.0).unwrap();
            let ts = r.entropy * r.state.temperature;
            assert!((ts - (r.energy - r.free_energy)).abs() <= 1e-12 * ts.abs());
        }
    }

    #[test]
    fn classical_free_space_limits() {
        let free = PlanarDomain::free_space(1e4).unwrap();
        let r = thermo_2d(StatKind::Bose, &free, 1.0, 1e3).unwrap();
        assert!(r.state.z < 1e-5);
        assert!((r.energy / r.state.temperature - 1.0).abs() < 1e-5);
        assert!((r.heat_capacity - 1.0).abs() < 1e-5);
        let tube = TubeDomain::new(free, 1e4).unwrap();
        let r = thermo_3d(StatKind::Fermi, &tube, 1.0, 1e2).unwrap();
        assert!((r.heat_capacity - 1.5).abs() < 1e-5);
    }

    #[test]
    fn fermi_unit_fugacity_derivative_in_free_space() {
        let free = PlanarDomain::free_space(10.0).unwrap();
        let state = GasState {
            stat: StatKind::Fermi,
            z: 1.0,
            lambda: 1.0,
            temperature: 3.0,
            particles: 1.0,
        };
        let aux = aux_2d(StatKind::Fermi, 1.0, 1.0, &free).unwrap();
        let d = dz_dt_2d(StatKind::Fermi, &state, &aux).unwrap();
        assert!((d + 2.0 * std::f64::consts::LN_2 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_is_negative() {
        let d = disk(2.0);
        for stat in [StatKind::Bose, StatKind::Fermi] {
            let r = thermo_2d(stat, &d, 30.0, 50.0).unwrap();
            let Aux::Planar(a) = r.aux else { panic!() };
            assert!(dz_dt_2d(stat, &r.state, &a).unwrap() < 0.0);
        }
    }
}
