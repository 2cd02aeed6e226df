//! Bose functions for `0.99 < z < 1`, where the direct series needs too many
//! terms: expansions in `α = −ln z` about the condensation point.

use std::f64::consts::PI;

use super::zeta::{gamma_half_integer, zeta};
use super::{series_sum, FunctionValue, Method, Order, StatKind, ZETA_2, ZETA_3_2};
use crate::error::{Error, Result};

pub(super) fn near_unity(order: Order, z: f64) -> Result<FunctionValue> {
    debug_assert!(z > 0.0 && z < 1.0);
    match order.twice() {
        4 => dilog_reflection(z),
        -1 | 1 | 3 | 5 => half_integer_expansion(order, z),
        _ => Err(Error::Domain(format!(
            "no near-unity expansion for order {order}; use the closed form"
        ))),
    }
}

/// `g_2(z) = π²/6 − ln z · ln(1−z) − g_2(1−z)`.
fn dilog_reflection(z: f64) -> Result<FunctionValue> {
    let y = 1.0 - z;
    let reflected = series_sum(StatKind::Bose, Order::TWO, y, 1e-18, 1000)?;
    let product = (-y).ln_1p() * y.ln();
    let value = ZETA_2 - product - reflected.value;
    let roundoff = 4.0 * f64::EPSILON * (ZETA_2 + product.abs() + reflected.value);
    Ok(FunctionValue {
        value,
        abs_error_bound: reflected.abs_error_bound + roundoff,
        method: Method::Series,
        work: reflected.work,
    })
}

/// For half-integer `σ`:
/// `g_σ(e^{−α}) = Γ(1−σ) α^{σ−1} + Σ_{k≥0} ζ(σ−k) (−α)^k / k!`, convergent for `α < 2π`.
///
/// Once `σ − k ≤ −½`, `|ζ(σ−k)| ≤ 2ζ(3/2)(2π)^{σ−k−1} Γ(k+1−σ)` bounds the
/// terms, and their ratio is at most `q = 1.5·α/(2π)`, giving a geometric
/// tail bound.
fn half_integer_expansion(order: Order, z: f64) -> Result<FunctionValue> {
    let sigma = order.sigma();
    let alpha = -(-(1.0 - z)).ln_1p();
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("expansion about z = 1 not applicable at z = {z}")));
    }
    let singular = gamma_half_integer(2 - order.twice()) * alpha.powf(sigma - 1.0);
    let q = 1.5 * alpha / (2.0 * PI);
    let mut sum = singular;
    let mut abs_sum = singular.abs();
    let mut power = 1.0; // (−α)^k / k!
    let mut k = 0usize;
    let tail = loop {
        let term = zeta(sigma - k as f64) * power;
        sum += term;
        abs_sum += term.abs();
        k += 1;
        power *= -alpha / k as f64;
        let next_order = sigma - k as f64;
        if next_order <= -0.5 {
            let two_gamma_arg = 2 * k as i32 + 2 - order.twice();
            let majorant = 2.0
                * ZETA_3_2
                * (2.0 * PI).powf(next_order - 1.0)
                * gamma_half_integer(two_gamma_arg)
                * power.abs();
            let tail = majorant / (1.0 - q);
            if tail <= 1e-17 * sum.abs().max(1.0) {
                break tail;
            }
        }
        if k > 60 {
            return Err(Error::Accuracy {
                context: format!("expansion of g_{order}({z}) about z = 1"),
                target: 1e-17,
                achieved: power.abs(),
            });
        }
    };
    Ok(FunctionValue {
        value: sum,
        abs_error_bound: tail + 8.0 * f64::EPSILON * abs_sum,
        method: Method::Series,
        work: k,
    })
}
