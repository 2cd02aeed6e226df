//! Riemann zeta and gamma at the half-integer arguments the expansions need.

use std::f64::consts::PI;

// B_{2j} / (2j)!, j = 1..=10
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
];

/// `Γ(x)` for `x = two_x / 2`; `x` must not be zero or a negative integer.
pub(crate) fn gamma_half_integer(two_x: i32) -> f64 {
    assert!(
        two_x > 0 || two_x % 2 != 0,
        "gamma has poles at non-positive integers"
    );
    // Start from Γ(1) = 1 or Γ(1/2) = √π and walk with Γ(x+1) = xΓ(x).
    let (mut twice, mut value) = if two_x % 2 == 0 { (2, 1.0) } else { (1, PI.sqrt()) };
    while twice < two_x {
        value *= f64::from(twice) / 2.0;
        twice += 2;
    }
    while twice > two_x {
        twice -= 2;
        value /= f64::from(twice) / 2.0;
    }
    value
}

/// Riemann `ζ(s)` for real `s ≠ 1`.
///
/// Euler–Maclaurin summation for `s ≥ 0`; for `s < 0` the functional
/// equation, which requires `2s` to be an integer here.
pub(crate) fn zeta(s: f64) -> f64 {
    if s == 1.0 {
        return f64::INFINITY;
    }
    if s < 0.0 {
        let two_one_minus_s = (2.0 * (1.0 - s)).round() as i32;
        debug_assert!((2.0 * (1.0 - s) - f64::from(two_one_minus_s)).abs() < 1e-12);
        return 2f64.powf(s)
            * PI.powf(s - 1.0)
            * (PI * s / 2.0).sin()
            * gamma_half_integer(two_one_minus_s)
            * zeta(1.0 - s);
    }
    const N: usize = 20;
    let n = N as f64;
    let mut sum: f64 = (1..N).rev().map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // Rising factorial s(s+1)…(s+2j−2) times N^{−s−2j+1}.
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        sum += coeff * rising * power;
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        power /= n * n;
    }
    sum
}
