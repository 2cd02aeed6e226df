//! Exact Dirichlet spectra of `½∇²U + μU = 0` for rectangles, disks and
//! annuli, with heat-kernel traces and exact grand-canonical sums built on
//! them. Everything here is independent of the asymptotic formulas in
//! [`crate::eos`] and [`crate::thermo`], which it exists to check.
//!
//! Truncated sums are bounded with the Li–Yau inequality: the `k`-th
//! eigenvalue of `−Δ` is at least `2πk/Ω`, so the counting function of `μ`
//! obeys `N(μ) ≤ Ωμ/π`.

pub mod bessel;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{make_domain, ShapeSpec};
use crate::roots::newton_bisect;
use crate::specfun::StatKind;

pub const DEFAULT_STATE_CAP: u64 = 10_000_000;

/// A thermal sum over a spectrum cut at `Λ` counts only levels with
/// `e^{−μ/T} ≥ e^{−40}`.
pub const MIN_CUTOFF_OVER_T: f64 = 40.0;

/// Largest acceptable truncation bound of a heat-kernel trace, relative to
/// its value.
pub const THETA_TRUNCATION_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub mu: f64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending in `μ`.
    pub levels: Vec<Level>,
    /// Every eigenvalue `μ ≤ cutoff` is listed.
    pub cutoff: f64,
    pub shape: ShapeSpec,
    /// `C` in the bound `N(μ) ≤ Cμ` on the counting function.
    pub tail_bound_coeff: f64,
}

impl Spectrum {
    /// Builds a spectrum from explicit levels, sorted here.
    pub fn from_levels(
        shape: ShapeSpec,
        mut levels: Vec<Level>,
        cutoff: f64,
        tail_bound_coeff: f64,
    ) -> Result<Spectrum> {
        if levels.iter().any(|l| !(l.mu > 0.0) || l.multiplicity == 0 || l.mu > cutoff) {
            return Err(Error::Domain(
                "levels must be positive, below the cutoff and have nonzero multiplicity".into(),
            ));
        }
        levels.sort_by(|a, b| a.mu.total_cmp(&b.mu));
        Ok(Spectrum { levels, cutoff, shape, tail_bound_coeff })
    }

    /// Number of states, multiplicities included.
    pub fn state_count(&self) -> u64 {
        self.levels.iter().map(|l| u64::from(l.multiplicity)).sum()
    }

    /// Number of states with `μ ≤ mu`.
    pub fn count_below(&self, mu: f64) -> u64 {
        self.levels.iter().take_while(|l| l.mu <= mu).map(|l| u64::from(l.multiplicity)).sum()
    }

    pub fn ground_level(&self) -> Option<Level> {
        self.levels.first().copied()
    }
}

/// Two-term smooth counting estimate `Ωμ/(2π) − L√(2μ)/(4π)`.
pub fn weyl_count(area: f64, perimeter: f64, mu: f64) -> f64 {
    area * mu / (2.0 * PI) - perimeter * (2.0 * mu).sqrt() / (4.0 * PI)
}

/// Allowed gap between an enumerated count and [`weyl_count`]: the
/// remainder of the counting function is `O(k^{2/3})` for the shapes here,
/// plus a constant from corners and connectivity.
fn weyl_envelope(area: f64, mu: f64) -> f64 {
    let k_scale = (2.0 * mu * area).sqrt();
    10.0 + 3.0 * k_scale.powf(2.0 / 3.0)
}

fn check_complete(spec: &Spectrum, area: f64, perimeter: f64) -> Result<()> {
    let count = spec.state_count() as f64;
    let estimate = weyl_count(area, perimeter, spec.cutoff);
    let envelope = weyl_envelope(area, spec.cutoff);
    if (count - estimate).abs() > envelope {
        return Err(Error::Convergence(format!(
            "{}: {count} states below μ = {}, but the counting estimate is {estimate:.1} ± {envelope:.1}",
            spec.shape, spec.cutoff
        )));
    }
    Ok(())
}

fn check_positive(what: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be positive and finite, got {v}")))
    }
}

fn check_cap(area: f64, cutoff: f64, cap: u64) -> Result<()> {
    let estimate = area * cutoff / (2.0 * PI);
    if estimate > cap as f64 {
        return Err(Error::Resource(format!(
            "about {estimate:.3e} states below μ = {cutoff}, above the cap {cap}"
        )));
    }
    Ok(())
}

/// `p/q` with `q ≤ 10⁴` equal to `x` within `1e-13` relative, if any.
fn small_rational(x: f64) -> Option<(u64, u64)> {
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a > 1e12 {
            break;
        }
        let a = a as u64;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > 10_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64 / k1 as f64) - x).abs() <= 1e-13 * x {
            return Some((h1, k1));
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

pub fn rectangle_spectrum(a: f64, b: f64, cutoff: f64) -> Result<Spectrum> {
    rectangle_spectrum_with_cap(a, b, cutoff, DEFAULT_STATE_CAP)
}

/// `μ = (π²/2)(n²/a² + m²/b²)`, `n, m ≥ 1`. Coincident levels merge exactly
/// when `a/b` is a small rational and within `1e-12` relative otherwise.
pub fn rectangle_spectrum_with_cap(a: f64, b: f64, cutoff: f64, cap: u64) -> Result<Spectrum> {
    check_positive("side a", a)?;
    check_positive("side b", b)?;
    check_positive("cutoff", cutoff)?;
    check_cap(a * b, cutoff, cap)?;
    let scale = PI * PI / 2.0;
    let n_max = (a * (2.0 * cutoff).sqrt() / PI).floor() as u64;
    let rational = small_rational(a / b);
    let mut raw: Vec<(u128, f64)> = Vec::new();
    for n in 1..=n_max {
        let x = (n * n) as f64 / (a * a);
        let rest = cutoff / scale - x;
        if rest < 0.0 {
            break;
        }
        let m_max = (b * rest.sqrt()).floor() as u64 + 1;
        for m in 1..=m_max {
            let mu = scale * (x + (m * m) as f64 / (b * b));
            if mu > cutoff {
                break;
            }
            let key = rational.map_or(0, |(p, q)| {
                u128::from(n * n) * u128::from(q * q) + u128::from(m * m) * u128::from(p * p)
            });
            raw.push((key, mu));
        }
    }
    let levels = match rational {
        Some(_) => {
            raw.sort_by_key(|&(k, _)| k);
            let mut levels: Vec<Level> = Vec::new();
            let mut last_key = None;
            for (k, mu) in raw {
                if last_key == Some(k) {
                    levels.last_mut().expect("non-empty").multiplicity += 1;
                } else {
                    levels.push(Level { mu, multiplicity: 1 });
                    last_key = Some(k);
                }
            }
            levels
        }
        None => merge_float(raw.into_iter().map(|(_, mu)| mu).collect()),
    };
    let spec = Spectrum {
        levels,
        cutoff,
        shape: ShapeSpec::Rectangle { a, b },
        tail_bound_coeff: a * b / PI,
    };
    check_complete(&spec, a * b, 2.0 * (a + b))?;
    Ok(spec)
}

fn merge_float(mut mus: Vec<f64>) -> Vec<Level> {
    mus.sort_by(f64::total_cmp);
    let mut levels: Vec<Level> = Vec::new();
    for mu in mus {
        match levels.last_mut() {
            Some(l) if (mu - l.mu).abs() <= 1e-12 * mu => l.multiplicity += 1,
            _ => levels.push(Level { mu, multiplicity: 1 }),
        }
    }
    levels
}

/// Radial-angular levels from per-order zeros in `k`: `μ = k²/(2s²)`,
/// multiplicity 1 for `ν = 0` and 2 otherwise.
fn levels_from_zeros<F>(mut zeros_of: F, k_max: f64, k_to_mu: f64) -> Result<Vec<Level>>
where
    F: FnMut(usize, f64) -> Result<Vec<f64>>,
{
    let mut tagged: Vec<(f64, usize)> = Vec::new();
    let mut nu = 0usize;
    loop {
        let zeros = zeros_of(nu, k_max)?;
        if zeros.is_empty() {
            break;
        }
        tagged.extend(zeros.into_iter().map(|k| (k * k * k_to_mu, nu)));
        nu += 1;
    }
    tagged.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    Ok(tagged
        .into_iter()
        .map(|(mu, nu)| Level { mu, multiplicity: if nu == 0 { 1 } else { 2 } })
        .collect())
}

/// `μ = j²_{ν,k}/(2R²)`.
pub fn disk_spectrum(radius: f64, cutoff: f64) -> Result<Spectrum> {
    check_positive("radius", radius)?;
    check_positive("cutoff", cutoff)?;
    let area = PI * radius * radius;
    check_cap(area, cutoff, DEFAULT_STATE_CAP)?;
    let x_max = radius * (2.0 * cutoff).sqrt();
    let levels =
        levels_from_zeros(bessel::bessel_j_zeros, x_max, 0.5 / (radius * radius))?;
    let spec = Spectrum {
        levels,
        cutoff,
        shape: ShapeSpec::Disk { radius },
        tail_bound_coeff: area / PI,
    };
    check_complete(&spec, area, 2.0 * PI * radius)?;
    Ok(spec)
}

/// `μ = k²/2` over the zeros of the radial cross product.
pub fn annulus_spectrum(inner: f64, outer: f64, cutoff: f64) -> Result<Spectrum> {
    check_positive("inner radius", inner)?;
    check_positive("cutoff", cutoff)?;
    if !(outer > inner) || !outer.is_finite() {
        return Err(Error::Domain(format!("annulus needs 0 < R_i < R_o, got ({inner}, {outer})")));
    }
    let area = PI * (outer * outer - inner * inner);
    check_cap(area, cutoff, DEFAULT_STATE_CAP)?;
    let k_max = (2.0 * cutoff).sqrt();
    let levels = levels_from_zeros(
        |nu, k| bessel::annulus_zeros(nu, inner, outer, k),
        k_max,
        0.5,
    )?;
    let spec = Spectrum {
        levels,
        cutoff,
        shape: ShapeSpec::Annulus { inner, outer },
        tail_bound_coeff: area / PI,
    };
    check_complete(&spec, area, 2.0 * PI * (inner + outer))?;
    Ok(spec)
}

/// Spectrum of any shape with a separable Dirichlet problem.
pub fn spectrum_for(shape: &ShapeSpec, cutoff: f64) -> Result<Spectrum> {
    match *shape {
        ShapeSpec::Rectangle { a, b } => rectangle_spectrum(a, b, cutoff),
        ShapeSpec::Disk { radius } => disk_spectrum(radius, cutoff),
        ShapeSpec::Annulus { inner, outer } => annulus_spectrum(inner, outer, cutoff),
        ShapeSpec::PolygonWithHoles { .. } => Err(Error::Domain(
            "exact spectra exist only for rectangles, disks and annuli".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaQuery {
    pub t: f64,
}

impl ThetaQuery {
    pub fn new(t: f64) -> Result<ThetaQuery> {
        check_positive("heat-kernel time", t)?;
        Ok(ThetaQuery { t })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaValue {
    pub value: f64,
    pub truncation_bound: f64,
}

/// `∫_Λ^∞ e^{−μt} dN(μ) ≤ C(Λ + 1/t) e^{−Λt}` for `N(μ) ≤ Cμ`.
fn theta_tail(coeff: f64, cutoff: f64, t: f64) -> f64 {
    coeff * (cutoff + 1.0 / t) * (-cutoff * t).exp()
}

/// `Θ(t) = Σ e^{−μₙ t}` with a rigorous bound on the omitted levels.
pub fn theta_sum(spec: &Spectrum, q: ThetaQuery) -> Result<ThetaValue> {
    let value: f64 = spec
        .levels
        .iter()
        .rev()
        .map(|l| f64::from(l.multiplicity) * (-l.mu * q.t).exp())
        .sum();
    let truncation_bound = theta_tail(spec.tail_bound_coeff, spec.cutoff, q.t);
    if truncation_bound > THETA_TRUNCATION_LIMIT * value {
        return Err(Error::Truncation(format!(
            "tail bound {truncation_bound:e} exceeds {THETA_TRUNCATION_LIMIT:e} of Θ({}) = {value}; raise the cutoff",
            q.t
        )));
    }
    Ok(ThetaValue { value, truncation_bound })
}

/// A cutoff `Λ = 30/t` leaves a trace tail below `1e-9` of the leading term.
pub fn theta_cutoff(t: f64) -> f64 {
    30.0 / t
}

/// The three-term expansion `Ω/(2πt) − L/(4√(2πt)) + (1−r)/6`.
pub fn weyl_theta(shape: &ShapeSpec, t: f64) -> Result<f64> {
    let d = make_domain(shape)?;
    Ok(d.area() / (2.0 * PI * t) - d.perimeter() / (4.0 * (2.0 * PI * t).sqrt()) + d.connectivity())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactThermo {
    pub z: f64,
    pub ln_xi: f64,
    pub energy: f64,
    /// Bounds on the contributions of levels above the cutoff.
    pub particles_tail: f64,
    pub ln_xi_tail: f64,
    pub energy_tail: f64,
}

/// Largest accepted tail of `N`, `ln Ξ` or `U`, relative to the value.
pub const EXACT_TAIL_LIMIT: f64 = 1e-10;

/// Solves `N = Σ g/(z⁻¹e^{μ/T} ∓ 1)` for `z` and returns exact `ln Ξ` and `U`.
pub fn exact_thermo(stat: StatKind, spec: &Spectrum, particles: f64, temperature: f64) -> Result<ExactThermo> {
    check_positive("particle number", particles)?;
    check_positive("temperature", temperature)?;
    if spec.cutoff < MIN_CUTOFF_OVER_T * temperature {
        return Err(Error::Truncation(format!(
            "cutoff {} is below {MIN_CUTOFF_OVER_T}·T = {}",
            spec.cutoff,
            MIN_CUTOFF_OVER_T * temperature
        )));
    }
    let ground = spec
        .ground_level()
        .ok_or_else(|| Error::Domain("empty spectrum".into()))?;
    let beta = 1.0 / temperature;
    let sign = stat.sign();
    let occupations = |w: f64| -> (f64, f64) {
        // N and ∂N/∂ln z
        let mut n = 0.0;
        let mut dn = 0.0;
        for l in spec.levels.iter().rev() {
            let occ = 1.0 / ((beta * l.mu - w).exp() - sign);
            let g = f64::from(l.multiplicity);
            n += g * occ;
            dn += g * occ * (1.0 + sign * occ);
        }
        (n, dn)
    };
    let residual = |w: f64| -> Result<(f64, f64)> {
        let (n, dn) = occupations(w);
        Ok((n - particles, dn))
    };

    let theta = spec
        .levels
        .iter()
        .map(|l| f64::from(l.multiplicity) * (-beta * l.mu).exp())
        .sum::<f64>();
    let mut w_lo = (particles / theta).ln() - 1.0;
    let w_ground = beta * ground.mu;
    if stat == StatKind::Bose {
        w_lo = w_lo.min(w_ground - 1.0);
    }
    let mut r_lo = residual(w_lo)?.0;
    while r_lo >= 0.0 {
        w_lo -= 5.0;
        r_lo = residual(w_lo)?.0;
    }
    let (w_hi, r_hi) = match stat {
        StatKind::Bose => {
            // The ground level alone holds ~2N here.
            let delta = (f64::from(ground.multiplicity) / (2.0 * particles)).min(0.5);
            let w = w_ground - delta;
            let r = residual(w)?.0;
            if r < 0.0 {
                return Err(Error::NoBracket(format!(
                    "no z below the ground level e^{{μ₀/T}} = {:e} holds N = {particles}",
                    w_ground.exp()
                )));
            }
            (w, r)
        }
        StatKind::Fermi => {
            let capacity = spec.state_count() as f64;
            if particles >= capacity {
                return Err(Error::NoBracket(format!(
                    "N = {particles} exceeds the {capacity} states below the cutoff"
                )));
            }
            let mut w = w_lo.max(0.0);
            let mut r = residual(w)?.0;
            while r < 0.0 {
                w += 1.0;
                r = residual(w)?.0;
            }
            (w, r)
        }
    };
    let root = newton_bisect(
        residual,
        w_lo,
        w_hi,
        r_lo,
        r_hi,
        None,
        |_, r| r.abs() <= 1e-13 * particles,
        400,
    )?;
    let w = root.x;
    let z = w.exp();

    let mut ln_xi = 0.0;
    let mut energy = 0.0;
    for l in spec.levels.iter().rev() {
        let g = f64::from(l.multiplicity);
        let x = (w - beta * l.mu).exp();
        ln_xi -= sign * g * (-sign * x).ln_1p();
        energy += g * l.mu / ((beta * l.mu - w).exp() - sign);
    }

    // Occupation above Λ is at most z e^{−βμ}/(1 − z e^{−βΛ}) for bosons
    // and z e^{−βμ} for fermions; −ln(1 − x) and ln(1 + x) obey the same bound.
    let edge = (w - beta * spec.cutoff).exp();
    if stat == StatKind::Bose && edge >= 1.0 {
        return Err(Error::Truncation("fugacity reaches the cutoff level".into()));
    }
    let amplify = if stat == StatKind::Bose { z / (1.0 - edge) } else { z };
    let c = spec.tail_bound_coeff;
    let lam = spec.cutoff;
    let theta_tail = theta_tail(c, lam, beta);
    // ∫_Λ^∞ μ e^{−βμ} dN ≤ C e^{−βΛ}(Λ² + 2Λ/β + 2/β²) once βΛ ≥ 1.
    let first_moment_tail =
        c * (-beta * lam).exp() * (lam * lam + 2.0 * lam / beta + 2.0 / (beta * beta));
    let out = ExactThermo {
        z,
        ln_xi,
        energy,
        particles_tail: amplify * theta_tail,
        ln_xi_tail: amplify * theta_tail,
        energy_tail: amplify * first_moment_tail,
    };
    for (what, tail, value) in [
        ("N", out.particles_tail, particles),
        ("ln Ξ", out.ln_xi_tail, ln_xi),
        ("U", out.energy_tail, energy),
    ] {
        if tail > EXACT_TAIL_LIMIT * value.abs() {
            return Err(Error::Truncation(format!(
                "{what} tail bound {tail:e} exceeds {EXACT_TAIL_LIMIT:e} of {value}; raise the cutoff"
            )));
        }
    }
    Ok(out)
}
