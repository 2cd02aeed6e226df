//! Safeguarded Newton iteration on a sign-change bracket.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
    /// Final bracket `[lo, hi]` still containing the sign change.
    pub lo: f64,
    pub hi: f64,
}

/// Finds a zero of `f` inside `[lo, hi]`, given `f(lo)` and `f(hi)` of
/// opposite sign. `f` returns `(value, derivative)`.
///
/// Newton steps are taken when they land inside the current bracket and
/// shrink it at least as fast as bisection would; otherwise the bracket is
/// halved, so convergence is guaranteed. Iteration stops as soon as
/// `accept(x, f(x))` holds. A bracket collapsing to adjacent floats first is
/// an [`Error::Convergence`].
#[allow(clippy::too_many_arguments)]
pub fn newton_bisect<F, A>(
    mut f: F,
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
    seed: Option<f64>,
    mut accept: A,
    max_iter: usize,
) -> Result<Root>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
    A: FnMut(f64, f64) -> bool,
{
    if f_lo == 0.0 {
        return Ok(Root { x: lo, fx: 0.0, iterations: 0, lo, hi: lo });
    }
    if f_hi == 0.0 {
        return Ok(Root { x: hi, fx: 0.0, iterations: 0, lo: hi, hi });
    }
    if f_lo.signum() == f_hi.signum() || !(f_lo.is_finite() && f_hi.is_finite()) {
        return Err(Error::NoBracket(format!(
            "f({lo}) = {f_lo:e} and f({hi}) = {f_hi:e} do not straddle zero"
        )));
    }
    // Orient so that f(neg) < 0 < f(pos).
    let (mut neg, mut pos) = if f_lo < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = match seed {
        Some(s) if s > lo.min(hi) && s < lo.max(hi) => s,
        _ => 0.5 * (lo + hi),
    };
    let mut step_old = (hi - lo).abs();
    let mut best = (x, f64::INFINITY);
    for it in 1..=max_iter {
        let (fx, dfx) = f(x)?;
        if !fx.is_finite() {
            return Err(Error::Convergence(format!("non-finite function value at x = {x}")));
        }
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == 0.0 || accept(x, fx) {
            return Ok(Root { x, fx, iterations: it, lo: neg.min(pos), hi: neg.max(pos) });
        }
        if fx < 0.0 {
            neg = x;
        } else {
            pos = x;
        }
        let (a, b) = (neg.min(pos), neg.max(pos));
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Err(Error::Convergence(format!(
                "bracket collapsed at x = {} with residual {:e}",
                best.0, best.1
            )));
        }
        let newton = x - fx / dfx;
        let use_newton = dfx.is_finite()
            && dfx != 0.0
            && newton > a
            && newton < b
            && (2.0 * fx).abs() <= (step_old * dfx).abs();
        let next = if use_newton { newton } else { mid };
        step_old = (next - x).abs();
        x = next;
    }
    Err(Error::Convergence(format!(
        "no convergence in {max_iter} iterations (best x = {}, residual {:e})",
        best.0, best.1
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = newton_bisect(
            |x| Ok((x * x - 2.0, 2.0 * x)),
            0.0,
            2.0,
            -2.0,
            2.0,
            None,
            |_, fx| fx.abs() < 1e-15,
            100,
        )
        .unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn survives_bad_derivative() {
        // Zero derivative everywhere forces pure bisection.
        let r = newton_bisect(
            |x: f64| Ok(((x - 0.3).powi(3), 0.0)),
            -1.0,
            1.0,
            -2.197,
            0.343,
            None,
            |_, fx| fx.abs() < 1e-30,
            200,
        )
        .unwrap();
        assert!((r.x - 0.3).abs() < 1e-9);
    }

    #[test]
    fn rejects_non_bracket() {
        let err = newton_bisect(|x| Ok((x, 1.0)), 1.0, 2.0, 1.0, 2.0, None, |_, _| false, 10)
            .unwrap_err();
        assert!(matches!(err, Error::NoBracket(_)));
    }
}
