//! Fermi-Dirac integrals by quadrature, used for `z > 0.99`.
//!
//! With `η = ln z` and `x = u²` the integral representation becomes
//!
//! ```text
//! f_σ(z) = 2/Γ(σ) ∫_0^∞ u^{2σ−1} F(u² − η) du,        F(y) = 1/(eʸ + 1),
//! ```
//!
//! which is smooth at the origin for every `σ ≥ ½`. For `σ ≤ 0` the integrand
//! is not integrable, so the order is lowered under the integral sign
//! instead: `z d/dz F = F(1 − F)`, hence
//!
//! ```text
//! f_σ(z) = 2/Γ(σ+1) ∫_0^∞ u^{2σ+1} F(1 − F)(u² − η) du.
//! ```

use super::zeta::gamma_half_integer;
use super::{FunctionValue, Method, Order};
use crate::error::{Error, Result};
use crate::quadrature::integrate;

/// Distance in `x` beyond `max(η, 0)` where the integrand is cut off.
const TAIL_WIDTH: f64 = 64.0;
const MAX_PANELS: usize = 4000;

fn fermi(y: f64) -> f64 {
    if y > 0.0 {
        let e = (-y).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + y.exp())
    }
}

fn fermi_derivative_kernel(y: f64) -> f64 {
    let e = (-y.abs()).exp();
    e / ((1.0 + e) * (1.0 + e))
}

/// `f_σ(z)` for `σ > 0`.
pub(super) fn integral(order: Order, z: f64, tol: f64) -> Result<FunctionValue> {
    if order.sigma() <= 0.0 {
        return Err(Error::Domain(format!("integral representation needs σ > 0, got {order}")));
    }
    let power = order.twice() - 1; // 2σ − 1
    let norm = 2.0 / gamma_half_integer(order.twice());
    let (value, bound, work) = integrate_kernel(z, power, fermi, order.sigma() - 1.0, tol)?;
    Ok(FunctionValue {
        value: norm * value,
        abs_error_bound: norm * bound,
        method: Method::Quadrature,
        work,
    })
}

/// `f_σ(z)` for `σ ≤ 0` via the lowered-order representation.
pub(super) fn recurrence(order: Order, z: f64, tol: f64) -> Result<FunctionValue> {
    let raised = order.twice() + 2; // 2(σ+1)
    if raised <= 0 {
        return Err(Error::Domain(format!("order {order} too low for a single recurrence step")));
    }
    let power = order.twice() + 1; // 2σ + 1
    let norm = 2.0 / gamma_half_integer(raised);
    let (value, bound, work) =
        integrate_kernel(z, power, fermi_derivative_kernel, order.sigma(), tol)?;
    Ok(FunctionValue {
        value: norm * value,
        abs_error_bound: norm * bound,
        method: Method::OrderRecurrence,
        work,
    })
}

/// `∫_0^∞ u^power · kernel(u² − η) du`, with a tail bound for a kernel
/// dominated by `e^{−(x−η)}` and `x^{x_power}` the integrand power in `x`.
fn integrate_kernel(
    z: f64,
    power: i32,
    kernel: fn(f64) -> f64,
    x_power: f64,
    tol: f64,
) -> Result<(f64, f64, usize)> {
    let eta = z.ln();
    let x_max = eta.max(0.0) + TAIL_WIDTH;
    let u_max = x_max.sqrt();
    let mut breaks = vec![0.0];
    for x in [eta - 6.0, eta, eta + 6.0] {
        if x > 0.0 {
            breaks.push(x.sqrt());
        }
    }
    breaks.push(u_max);

    let mut value = 0.0;
    let mut error = 0.0;
    let mut work = 0;
    for pair in breaks.windows(2) {
        let r = integrate(
            |u| u.powi(power) * kernel(u * u - eta),
            pair[0],
            pair[1],
            tol,
            tol,
            MAX_PANELS,
        )?;
        value += r.value;
        error += r.error;
        work += r.evaluations;
    }
    // ∫_X^∞ x^a e^{η−x} dx ≤ 2 X^a e^{η−X} for X ≥ 2|a|; the 1/2 is the u→x Jacobian.
    let tail = x_max.powf(x_power) * (eta - x_max).exp();
    Ok((value, error + tail, work))
}
