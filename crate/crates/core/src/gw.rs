//! Closed-form three-point invariants and the regime classifier.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{binom, factorial, fmt_rational, inv_factorial, Rational};
use crate::chern::m_index;
use crate::error::{Error, Result};
use crate::ring::Ambient;

/// `⟨η^u, η^v, θ^(g-m) η^w⟩_1` with `m = 2g - 2d - 1 + u + v + w`.
pub fn gw1(u: u32, v: u32, w: u32, amb: Ambient) -> Rational {
    let g = amb.g() as i64;
    let m = m_index(u, v, w, amb);
    if m < 0 || g - m < 0 {
        return Rational::zero();
    }
    let base = g - amb.d() as i64;
    let sum: BigInt = (0..u as i64)
        .map(|i| binom(m, base + i + v as i64) - binom(m, base + i))
        .sum();
    Rational::from_integer(factorial(amb.g()) * sum) * inv_factorial(m)
}

/// `⟨η^u, η^v, θ^(d+1-m) η^w⟩_2`. Zero when `d > g-1` or when the third
/// insertion has negative `θ`-exponent.
pub fn gw2(u: u32, v: u32, w: u32, amb: Ambient) -> Rational {
    let g = amb.g() as i64;
    let d = amb.d() as i64;
    let m = m_index(u, v, w, amb);
    if d + 1 - m < 0 {
        return Rational::zero();
    }
    let g_fact = Rational::from_integer(factorial(amb.g()));
    let mut total = Rational::zero();
    for n in 0..=(g - 1 - d) {
        if m + n < 0 {
            continue;
        }
        let outer = &g_fact * inv_factorial(g - 1 - d - n) * inv_factorial(m + n)
            / Rational::from_integer(BigInt::from(2).pow(n as u32));
        for p in 0..=n {
            let inner: BigInt = (0..u as i64)
                .map(|i| binom(m + n, g - d + i + v as i64 + p) - binom(m + n, g - d + i + p))
                .sum();
            total += &outer * Rational::from_integer(binom(n, p) * inner);
        }
    }
    total
}

/// `e ≥ 1` invariant, or the explicit unknown marker inside the open window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GwValue {
    Known(Rational),
    Unknown,
}

impl GwValue {
    pub fn known(&self) -> Option<&Rational> {
        match self {
            GwValue::Known(q) => Some(q),
            GwValue::Unknown => None,
        }
    }
}

impl fmt::Display for GwValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GwValue::Known(q) => f.write_str(&fmt_rational(q)),
            GwValue::Unknown => f.write_str("unknown"),
        }
    }
}

/// True when `e > (d-3)/(g-1-d)` for `d < g-1`, i.e. all degree-`e`
/// invariants vanish for dimension reasons.
pub fn beyond_hyperbola(e: u32, amb: Ambient) -> bool {
    let g = amb.g() as i64;
    let d = amb.d() as i64;
    d < g - 1 && e as i64 * (g - 1 - d) > d - 3
}

pub fn gw_e(u: u32, v: u32, w: u32, e: u32, amb: Ambient) -> Result<GwValue> {
    let g = amb.g() as i64;
    let d = amb.d() as i64;
    let value = match e {
        0 => {
            return Err(Error::Domain {
                what: "gw_e",
                reason: "curve degree e must be at least 1".into(),
            })
        }
        1 => gw1(u, v, w, amb),
        2 => gw2(u, v, w, amb),
        _ if d > g - 1 => Rational::zero(),
        _ if d == g - 1 => gw1(u, v, w, amb),
        _ if beyond_hyperbola(e, amb) => Rational::zero(),
        _ => return Ok(GwValue::Unknown),
    };
    Ok(GwValue::Known(value))
}

/// Three-point query `⟨η^u, η^v, θ^t η^w⟩_e`, with `t` fixed by the
/// dimension constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GwQuery {
    pub ambient: Ambient,
    pub u: u32,
    pub v: u32,
    pub w: u32,
    pub e: u32,
}

impl GwQuery {
    pub fn new(ambient: Ambient, u: u32, v: u32, w: u32, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::Domain {
                what: "GwQuery",
                reason: "curve degree e must be at least 1".into(),
            });
        }
        Ok(GwQuery {
            ambient,
            u,
            v,
            w,
            e,
        })
    }

    /// `t = d + e(d-g+1) - u - v - w`; negative means no such insertion.
    pub fn third_theta_pow(&self) -> i64 {
        let amb = self.ambient;
        amb.d() as i64 + self.e as i64 * amb.q_weight() - (self.u + self.v + self.w) as i64
    }

    /// The closed forms already vanish when `t < 0`; inside the open window
    /// the value is unknown regardless of the insertions.
    pub fn value(&self) -> Result<GwValue> {
        gw_e(self.u, self.v, self.w, self.e, self.ambient)
    }
}

impl fmt::Display for GwQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<et^{}, et^{}, th^{} et^{}>_{}",
            self.u,
            self.v,
            self.third_theta_pow(),
            self.w,
            self.e
        )
    }
}

/// `(d-3)/(g-1-d)` for `d < g-1`; unbounded otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperbolaBound {
    Finite(Rational),
    Infinite,
}

impl HyperbolaBound {
    pub fn of(amb: Ambient) -> Self {
        let g = amb.g() as i64;
        let d = amb.d() as i64;
        if d < g - 1 {
            HyperbolaBound::Finite(Rational::new((d - 3).into(), (g - 1 - d).into()))
        } else {
            HyperbolaBound::Infinite
        }
    }

    /// Largest `e` not excluded by the bound (`None` when unbounded).
    pub fn max_order(&self) -> Option<u32> {
        match self {
            HyperbolaBound::Finite(b) => Some(
                b.floor()
                    .to_integer()
                    .max(BigInt::zero())
                    .to_u32()
                    .unwrap_or(u32::MAX),
            ),
            HyperbolaBound::Infinite => None,
        }
    }
}

impl fmt::Display for HyperbolaBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperbolaBound::Finite(b) => f.write_str(&fmt_rational(b)),
            HyperbolaBound::Infinite => f.write_str("infinity"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    AllClassical,
    QLinearOnly,
    QuadraticComplete,
    Series,
    UnknownTail,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::AllClassical => "all classical",
            Regime::QLinearOnly => "q-linear only",
            Regime::QuadraticComplete => "q and q^2 complete",
            Regime::Series => "d = g-1 series",
            Regime::UnknownTail => "unknown tail",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Status of a single `q^e` coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderStatus {
    Known,
    Zero,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegimeReport {
    pub ambient: Ambient,
    pub deg_q: i64,
    pub rho1: i64,
    pub rho2: i64,
    pub hyperbola_bound: HyperbolaBound,
    pub regime: Regime,
}

impl RegimeReport {
    pub fn order_status(&self, e: u32) -> OrderStatus {
        let g = self.ambient.g() as i64;
        let d = self.ambient.d() as i64;
        match e {
            0 => OrderStatus::Known,
            _ if d > g - 1 => {
                if e == 1 {
                    OrderStatus::Known
                } else {
                    OrderStatus::Zero
                }
            }
            _ if d == g - 1 => OrderStatus::Known,
            _ if beyond_hyperbola(e, self.ambient) => OrderStatus::Zero,
            1 | 2 => OrderStatus::Known,
            _ => OrderStatus::Unknown,
        }
    }

    pub fn has_unknown_orders(&self) -> bool {
        self.regime == Regime::UnknownTail
    }
}

pub fn regime(amb: Ambient) -> RegimeReport {
    let g = amb.g() as i64;
    let d = amb.d() as i64;
    let bound = HyperbolaBound::of(amb);
    let regime = if d > g - 1 {
        Regime::QLinearOnly
    } else if d == g - 1 {
        Regime::Series
    } else {
        match bound.max_order() {
            Some(0) => Regime::AllClassical,
            Some(1) => Regime::QLinearOnly,
            Some(2) => Regime::QuadraticComplete,
            _ => Regime::UnknownTail,
        }
    };
    RegimeReport {
        ambient: amb,
        deg_q: amb.deg_q(),
        rho1: amb.brill_noether(1),
        rho2: amb.brill_noether(2),
        hyperbola_bound: bound,
        regime,
    }
}
