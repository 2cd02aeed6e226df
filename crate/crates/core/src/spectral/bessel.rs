//! Bessel functions of integer order and their zeros, for the disk and
//! annulus spectra.
//!
//! `J_n` comes from Miller's backward recurrence normalized by
//! `J_0 + 2 Σ J_{2k} = 1`. `Y_0` and `Y_1` follow from Neumann series in
//! those `J_n`, and higher `Y_n` from forward recurrence, which is stable for
//! the second kind.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::roots::newton_bisect;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const RESCALE: f64 = 1e250;

/// Highest order at which the backward recurrence starts so that orders up
/// to `n` are accurate at `x`. Even.
fn miller_start(n: usize, x: f64) -> usize {
    let top = (n as f64).max(x);
    let m = top + 30.0 + 3.0 * top.sqrt();
    2 * ((m as usize) / 2 + 1)
}

/// `[J_0(x), …, J_n(x)]` for `x ≥ 0`.
pub fn bessel_j_orders(n: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let m = miller_start(n, x);
    let two_over_x = 2.0 / x;
    let mut above = 0.0; // J_{k+1}
    let mut current = 1e-30; // J_k
    let mut norm = 0.0;
    for k in (1..=m).rev() {
        if k <= n {
            out[k] = current;
        }
        if k % 2 == 0 {
            norm += 2.0 * current;
        }
        let below = k as f64 * two_over_x * current - above;
        above = current;
        current = below;
        if current.abs() > RESCALE {
            current /= RESCALE;
            above /= RESCALE;
            norm /= RESCALE;
            for v in out.iter_mut().skip(k.saturating_sub(1)) {
                *v /= RESCALE;
            }
        }
    }
    out[0] = current;
    norm += current;
    for v in &mut out {
        *v /= norm;
    }
    out
}

pub fn bessel_j(n: usize, x: f64) -> f64 {
    bessel_j_orders(n, x)[n]
}

/// `[Y_0(x), …, Y_n(x)]` for `x > 0`. Large orders at small `x` overflow and
/// come out non-finite.
pub fn bessel_y_orders(n: usize, x: f64) -> Vec<f64> {
    debug_assert!(x > 0.0);
    let top = miller_start(1, x);
    let j = bessel_j_orders(top, x);
    let log_term = (x / 2.0).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut sign = -1.0;
    let mut k = 1;
    while 2 * k + 1 <= top {
        let kf = k as f64;
        s0 += sign * j[2 * k] / kf;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / kf;
        sign = -sign;
        k += 1;
    }
    let y0 = 2.0 / PI * (log_term * j[0] - 2.0 * s0);
    let y1 = 2.0 / PI * (-j[0] / x + log_term * j[1] + s1);
    let mut out = Vec::with_capacity(n + 1);
    out.push(y0);
    if n >= 1 {
        out.push(y1);
    }
    for m in 1..n {
        let next = 2.0 * m as f64 / x * out[m] - out[m - 1];
        out.push(next);
    }
    out
}

pub fn bessel_y(n: usize, x: f64) -> f64 {
    bessel_y_orders(n, x)[n]
}

/// `Z_ν(x)` and `Z_ν'(x) = (ν/x) Z_ν − Z_{ν+1}` from a table of orders.
fn with_derivative(table: &[f64], nu: usize, x: f64) -> (f64, f64) {
    (table[nu], nu as f64 / x * table[nu] - table[nu + 1])
}

/// Residual accepted at a zero of `J_ν`.
pub const ZERO_RESIDUAL: f64 = 1e-13;

const DISK_SCAN_STEP: f64 = 0.25;

/// All positive zeros of `J_ν` not exceeding `x_max`, ascending.
pub fn bessel_j_zeros(nu: usize, x_max: f64) -> Result<Vec<f64>> {
    let eval = |x: f64| -> Result<(f64, f64)> {
        let t = bessel_j_orders(nu + 1, x);
        Ok(with_derivative(&t, nu, x))
    };
    // J_ν has no zeros on (0, ν].
    scan_zeros((nu as f64).max(1.0), x_max, DISK_SCAN_STEP, eval, ZERO_RESIDUAL)
}

/// Zeros in `k` of `J_ν(ka) Y_ν(kb) − J_ν(kb) Y_ν(ka)` up to `k_max`,
/// for `0 < a < b`.
///
/// The cross product is divided by `√(J_ν(ka)² + Y_ν(ka)²)` so the residual
/// threshold is on the scale of the outer-radius functions.
pub fn annulus_zeros(nu: usize, a: f64, b: f64, k_max: f64) -> Result<Vec<f64>> {
    let eval = |k: f64| -> Result<(f64, f64)> {
        let (ja, dja) = with_derivative(&bessel_j_orders(nu + 1, k * a), nu, k * a);
        let (jb, djb) = with_derivative(&bessel_j_orders(nu + 1, k * b), nu, k * b);
        let (ya, dya) = with_derivative(&bessel_y_orders(nu + 1, k * a), nu, k * a);
        let (yb, dyb) = with_derivative(&bessel_y_orders(nu + 1, k * b), nu, k * b);
        let scale = ja.hypot(ya);
        let value = (ja * yb - jb * ya) / scale;
        let slope = (a * dja * yb + b * ja * dyb - b * djb * ya - a * jb * dya) / scale;
        Ok((value, slope))
    };
    let step = (0.1 * PI / b).min(0.05);
    // Radial oscillation needs kb > ν; half of that is a safe start.
    let start = (0.5 * nu as f64 / b).max(step);
    scan_zeros(start, k_max, step, eval, ZERO_RESIDUAL)
}

/// Sign-change scan on a uniform grid followed by safeguarded Newton on
/// every bracket. Non-finite samples are skipped.
fn scan_zeros<F>(start: f64, end: f64, step: f64, mut f: F, residual: f64) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let mut zeros = Vec::new();
    if start >= end {
        return Ok(zeros);
    }
    let steps = ((end - start) / step).ceil() as usize + 1;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=steps {
        let x = start + i as f64 * step;
        let (fx, _) = f(x)?;
        if !fx.is_finite() {
            prev = None;
            continue;
        }
        if let Some((xp, fp)) = prev {
            if fp == 0.0 {
                if xp <= end {
                    zeros.push(xp);
                }
            } else if fp.signum() != fx.signum() && fx != 0.0 {
                let root =
                    newton_bisect(&mut f, xp, x, fp, fx, None, |_, r| r.abs() <= residual, 200)?;
                if root.x <= end {
                    zeros.push(root.x);
                }
            }
        }
        prev = Some((x, fx));
    }
    if let Some((xp, fp)) = prev {
        if fp == 0.0 && xp <= end {
            zeros.push(xp);
        }
    }
    for w in zeros.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Convergence(format!("zeros out of order near {}", w[0])));
        }
    }
    Ok(zeros)
}
