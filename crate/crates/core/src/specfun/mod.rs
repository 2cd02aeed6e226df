//! The unified Bose-Einstein / Fermi-Dirac integral family
//!
//! ```text
//! h_σ(z) = Σ_{n≥1} (±1)^{n+1} zⁿ / n^σ = 1/Γ(σ) ∫_0^∞ x^{σ−1} / (z⁻¹eˣ ∓ 1) dx
//! ```
//!
//! with the upper sign for bosons (`g_σ`) and the lower sign for fermions
//! (`f_σ`). Only the eight orders `σ ∈ {−1, −½, 0, ½, 1, 3/2, 2, 5/2}` that
//! the thermodynamic formulas need are supported.
//!
//! Method selection in [`eval_h`]:
//!
//! | region                        | method                                   |
//! |-------------------------------|------------------------------------------|
//! | `σ ∈ {1, 0, −1}`              | closed form                              |
//! | `0 < z ≤ 0.99`                | direct series with geometric tail bound  |
//! | Bose, `0.99 < z < 1`          | expansion about `z = 1` (series)         |
//! | Bose, `z = 1`, `σ > 1`        | `ζ(σ)` constant                          |
//! | Fermi, `z > 0.99`, `σ > 0`    | adaptive quadrature                      |
//! | Fermi, `z > 0.99`, `σ ≤ 0`    | order recurrence under the integral sign |
//!
//! Every value carries an absolute error bound no larger than
//! `max(1e-10, 1e-10·|h|)`; evaluation fails with [`Error::Accuracy`]
//! otherwise.

mod bose;
mod fermi;
pub(crate) mod zeta;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Boundary between the direct series and the other methods.
pub const SERIES_Z_LIMIT: f64 = 0.99;
/// Default cap on the Fermi fugacity.
pub const DEFAULT_Z_MAX: f64 = 1e8;
/// Default cap on the number of series terms.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

const ZETA_3_2: f64 = 2.612_375_348_685_488_343_3;
const ZETA_2: f64 = 1.644_934_066_848_226_436_5;
const ZETA_5_2: f64 = 1.341_487_257_250_917_179_8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatKind {
    Bose,
    Fermi,
}

impl StatKind {
    /// `+1` for bosons, `−1` for fermions: the sign in `1/(z⁻¹eˣ ∓ 1)`.
    pub fn sign(self) -> f64 {
        match self {
            StatKind::Bose => 1.0,
            StatKind::Fermi => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StatKind::Bose => "bose",
            StatKind::Fermi => "fermi",
        }
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bose" | "boson" | "bosons" | "be" => Ok(StatKind::Bose),
            "fermi" | "fermion" | "fermions" | "fd" => Ok(StatKind::Fermi),
            other => Err(Error::Domain(format!("unknown statistics '{other}'"))),
        }
    }
}

/// Order `σ` of the integral family, stored as `2σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Order(i8);

impl Order {
    pub const MINUS_ONE: Order = Order(-2);
    pub const MINUS_HALF: Order = Order(-1);
    pub const ZERO: Order = Order(0);
    pub const HALF: Order = Order(1);
    pub const ONE: Order = Order(2);
    pub const THREE_HALVES: Order = Order(3);
    pub const TWO: Order = Order(4);
    pub const FIVE_HALVES: Order = Order(5);

    pub const ALL: [Order; 8] = [
        Order::MINUS_ONE,
        Order::MINUS_HALF,
        Order::ZERO,
        Order::HALF,
        Order::ONE,
        Order::THREE_HALVES,
        Order::TWO,
        Order::FIVE_HALVES,
    ];

    pub fn new(sigma: f64) -> Result<Order> {
        let twice = 2.0 * sigma;
        if twice.fract() != 0.0 || !(-2.0..=5.0).contains(&twice) {
            return Err(Error::Domain(format!(
                "order {sigma} is not one of -1, -1/2, 0, 1/2, 1, 3/2, 2, 5/2"
            )));
        }
        Ok(Order(twice as i8))
    }

    pub fn sigma(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// `2σ` as an integer.
    pub fn twice(self) -> i32 {
        i32::from(self.0)
    }

    /// `σ − 1`, if still in the supported set.
    pub fn lowered(self) -> Option<Order> {
        (self.0 - 2 >= -2).then(|| Order(self.0 - 2))
    }

    pub fn has_closed_form(self) -> bool {
        matches!(self.0, -2 | 0 | 2)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let sigma = match s.split_once('/') {
            Some((num, den)) => {
                let num: f64 = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad order '{s}'")))?;
                let den: f64 = den
                    .trim()
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad order '{s}'")))?;
                num / den
            }
            None => s.parse().map_err(|_| Error::Domain(format!("bad order '{s}'")))?,
        };
        Order::new(sigma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Series,
    Quadrature,
    OrderRecurrence,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Series => "series",
            Method::Quadrature => "quadrature",
            Method::OrderRecurrence => "order-recurrence",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionValue {
    pub value: f64,
    pub abs_error_bound: f64,
    pub method: Method,
    /// Series terms summed, or integrand evaluations for quadrature.
    pub work: usize,
}

/// Tunable limits for [`eval_h_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecfunConfig {
    pub z_max: f64,
    pub max_terms: usize,
    /// Absolute tail bound requested from the direct series.
    pub series_tail: f64,
    /// Absolute tolerance requested from quadrature before the bound is formed.
    pub quad_tol: f64,
}

impl Default for SpecfunConfig {
    fn default() -> Self {
        SpecfunConfig {
            z_max: DEFAULT_Z_MAX,
            max_terms: DEFAULT_MAX_TERMS,
            series_tail: 1e-14,
            quad_tol: 1e-13,
        }
    }
}

/// The accuracy every returned [`FunctionValue`] must meet.
pub fn accuracy_contract(value: f64) -> f64 {
    1e-10_f64.max(1e-10 * value.abs())
}

/// `h_σ(z)` with default limits.
pub fn eval_h(stat: StatKind, order: Order, z: f64) -> Result<FunctionValue> {
    eval_h_with(&SpecfunConfig::default(), stat, order, z)
}

/// Plain value of `h_σ(z)`, for callers that only propagate errors.
pub fn h(stat: StatKind, order: Order, z: f64) -> Result<f64> {
    eval_h(stat, order, z).map(|v| v.value)
}

pub fn eval_h_with(
    cfg: &SpecfunConfig,
    stat: StatKind,
    order: Order,
    z: f64,
) -> Result<FunctionValue> {
    check_argument(cfg, stat, order, z)?;
    let result = if stat == StatKind::Bose && z == 1.0 {
        bose_limit_at_unity(order)?
    } else if order.has_closed_form() {
        eval_h_closed_form(stat, order, z)?
    } else if z <= SERIES_Z_LIMIT {
        series_sum(stat, order, z, cfg.series_tail, cfg.max_terms)?
    } else {
        match stat {
            StatKind::Bose => bose::near_unity(order, z)?,
            StatKind::Fermi if order.sigma() > 0.0 => fermi::integral(order, z, cfg.quad_tol)?,
            StatKind::Fermi => fermi::recurrence(order, z, cfg.quad_tol)?,
        }
    };
    let target = accuracy_contract(result.value);
    if !(result.abs_error_bound <= target) {
        return Err(Error::Accuracy {
            context: format!("{stat} h_{order}({z})"),
            target,
            achieved: result.abs_error_bound,
        });
    }
    Ok(result)
}

fn check_argument(cfg: &SpecfunConfig, stat: StatKind, order: Order, z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("fugacity must be positive and finite, got {z}")));
    }
    match stat {
        StatKind::Bose if z > 1.0 => Err(Error::Domain(format!(
            "Bose functions are undefined for z = {z} > 1"
        ))),
        StatKind::Bose if z == 1.0 && order.sigma() <= 1.0 => Err(Error::Domain(format!(
            "g_{order}(z) diverges as z -> 1 (condensation)"
        ))),
        StatKind::Fermi if z >= cfg.z_max => Err(Error::Domain(format!(
            "Fermi fugacity {z} exceeds the cap {}",
            cfg.z_max
        ))),
        _ => Ok(()),
    }
}

/// Exact resummations for `σ ∈ {1, 0, −1}`.
pub fn eval_h_closed_form(stat: StatKind, order: Order, z: f64) -> Result<FunctionValue> {
    if !order.has_closed_form() {
        return Err(Error::Domain(format!("no closed form for order {order}")));
    }
    if !(z > 0.0) || !z.is_finite() || (stat == StatKind::Bose && z >= 1.0) {
        return Err(Error::Domain(format!("z = {z} inadmissible for {stat} closed form")));
    }
    let value = match (stat, order.twice()) {
        (StatKind::Bose, 2) => -(-z).ln_1p(),
        (StatKind::Fermi, 2) => z.ln_1p(),
        (StatKind::Bose, 0) => z / (1.0 - z),
        (StatKind::Fermi, 0) => z / (1.0 + z),
        (StatKind::Bose, -2) => z / ((1.0 - z) * (1.0 - z)),
        (StatKind::Fermi, -2) => z / ((1.0 + z) * (1.0 + z)),
        _ => unreachable!("closed-form orders are 1, 0, -1"),
    };
    Ok(FunctionValue {
        value,
        abs_error_bound: 8.0 * f64::EPSILON * value.abs(),
        method: Method::ClosedForm,
        work: 0,
    })
}

/// Direct summation of `Σ (±1)^{n+1} zⁿ/n^σ` for `0 < z < 1`, stopping once
/// the geometric majorant of the remainder is below `tail_bound`.
pub fn eval_h_series(stat: StatKind, order: Order, z: f64, tail_bound: f64) -> Result<FunctionValue> {
    series_sum(stat, order, z, tail_bound, DEFAULT_MAX_TERMS)
}

pub(crate) fn series_sum(
    stat: StatKind,
    order: Order,
    z: f64,
    tail_bound: f64,
    max_terms: usize,
) -> Result<FunctionValue> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("series requires 0 < z < 1, got {z}")));
    }
    if !(tail_bound > 0.0) {
        return Err(Error::Domain(format!("tail bound must be positive, got {tail_bound}")));
    }
    let sigma = order.sigma();
    let alternating = stat == StatKind::Fermi;
    // Neumaier-compensated sum.
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut weighted_abs = 0.0_f64;
    let mut tail = f64::INFINITY;
    let mut n = 0usize;
    while n < max_terms {
        n += 1;
        let nf = n as f64;
        let mag = z.powi(n as i32) * nf.powf(-sigma);
        let term = if alternating && n % 2 == 0 { -mag } else { mag };
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        weighted_abs += (2.0 * nf.log2() + 4.0) * mag;

        let next = z.powi(n as i32 + 1) * (nf + 1.0).powf(-sigma);
        let ratio = if sigma >= 0.0 {
            z
        } else {
            z * ((nf + 2.0) / (nf + 1.0)).powf(-sigma)
        };
        if ratio < 1.0 {
            tail = next / (1.0 - ratio);
            if tail <= tail_bound {
                break;
            }
        }
    }
    if !(tail <= tail_bound) {
        return Err(Error::Accuracy {
            context: format!("series for h_{order}({z}) after {max_terms} terms"),
            target: tail_bound,
            achieved: tail,
        });
    }
    let value = sum + comp;
    let roundoff = f64::EPSILON * (weighted_abs + 2.0 * value.abs());
    Ok(FunctionValue {
        value,
        abs_error_bound: tail + roundoff,
        method: Method::Series,
        work: n,
    })
}

/// `g_σ(1) = ζ(σ)` for `σ ∈ {3/2, 2, 5/2}`.
pub fn bose_limit_at_unity(order: Order) -> Result<FunctionValue> {
    let value = match order.twice() {
        3 => ZETA_3_2,
        4 => ZETA_2,
        5 => ZETA_5_2,
        _ => {
            return Err(Error::Domain(format!(
                "g_{order}(1) diverges; z -> 1 is a singular boundary for order <= 1"
            )))
        }
    };
    Ok(FunctionValue {
        value,
        abs_error_bound: 2.0 * f64::EPSILON * value,
        method: Method::ClosedForm,
        work: 0,
    })
}

/// All eight orders evaluated at one fugacity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HTable {
    pub stat: StatKind,
    pub z: f64,
    values: [f64; 8],
}

impl HTable {
    pub fn new(stat: StatKind, z: f64) -> Result<HTable> {
        let mut values = [0.0; 8];
        for (slot, order) in values.iter_mut().zip(Order::ALL) {
            *slot = h(stat, order, z)?;
        }
        Ok(HTable { stat, z, values })
    }

    /// Only the orders in `orders` are evaluated; the rest read as NaN.
    pub fn with_orders(stat: StatKind, z: f64, orders: &[Order]) -> Result<HTable> {
        let mut values = [f64::NAN; 8];
        for &order in orders {
            values[(order.twice() + 2) as usize] = h(stat, order, z)?;
        }
        Ok(HTable { stat, z, values })
    }

    pub fn get(&self, order: Order) -> f64 {
        self.values[(order.twice() + 2) as usize]
    }
}
