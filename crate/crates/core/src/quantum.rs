//! Quantum product on the `η`–`θ` subring over `Q[q]/(q^{N+1})`.
//!
//! Products of pure `η`-powers come from the closed forms. Everything else
//! follows from bilinearity and `θ`-linearity: `θ = Σ ξ_i ξ_{i+g}` is a sum of
//! products of `H^1` classes, and quantum multiplication by an `H^1` class is
//! the cup product, so by associativity
//! `(θ^a η^u) * (θ^b η^v) = θ^{a+b} ∪ (η^u * η^v)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binom, inv_factorial, Rational};
use crate::error::{Error, Result};
use crate::gw::beyond_hyperbola;
use crate::ring::{reduce, Ambient, CohClass, Monomial};
use crate::series::QSeries;

/// Per-order classes for `q^0..=q^N`; `None` marks an unknown coefficient.
/// Known coefficients are kept reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QClass {
    ambient: Ambient,
    orders: Vec<Option<CohClass>>,
}

impl QClass {
    pub fn zero(amb: Ambient, n: u32) -> Self {
        QClass {
            ambient: amb,
            orders: vec![Some(CohClass::zero(amb)); n as usize + 1],
        }
    }

    pub fn constant(x: &CohClass, n: u32) -> Self {
        Self::q_power(x, 0, n)
    }

    /// `q^k x`.
    pub fn q_power(x: &CohClass, k: u32, n: u32) -> Self {
        let mut out = Self::zero(x.ambient(), n);
        if k <= n {
            out.orders[k as usize] = Some(reduce(x));
        }
        out
    }

    pub fn from_orders(amb: Ambient, orders: Vec<Option<CohClass>>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Format(
                "a quantum class needs at least the q^0 order".into(),
            ));
        }
        for c in orders.iter().flatten() {
            if c.ambient() != amb {
                return Err(crate::ring::mismatch(amb, c.ambient()));
            }
        }
        Ok(QClass {
            ambient: amb,
            orders: orders.into_iter().map(|c| c.map(|c| reduce(&c))).collect(),
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn truncation_order(&self) -> u32 {
        self.orders.len() as u32 - 1
    }

    pub fn coeff(&self, e: u32) -> Option<&CohClass> {
        self.orders.get(e as usize).and_then(Option::as_ref)
    }

    pub fn orders(&self) -> &[Option<CohClass>] {
        &self.orders
    }

    pub fn unknown_tail(&self) -> bool {
        self.orders.iter().any(Option::is_none)
    }

    pub fn unknown_orders(&self) -> Vec<u32> {
        (0..self.orders.len() as u32)
            .filter(|&e| self.orders[e as usize].is_none())
            .collect()
    }

    pub fn truncate(&self, n: u32) -> QClass {
        let n = n.min(self.truncation_order()) as usize;
        QClass {
            ambient: self.ambient,
            orders: self.orders[..=n].to_vec(),
        }
    }

    pub fn add(&self, other: &QClass) -> Result<QClass> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QClass) -> Result<QClass> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &QClass,
        f: impl Fn(&CohClass, &CohClass) -> CohClass,
    ) -> Result<QClass> {
        if self.ambient != other.ambient {
            return Err(crate::ring::mismatch(self.ambient, other.ambient));
        }
        let orders = self
            .orders
            .iter()
            .zip(&other.orders)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(reduce(&f(a, b))),
                _ => None,
            })
            .collect();
        Ok(QClass {
            ambient: self.ambient,
            orders,
        })
    }

    pub fn scale(&self, s: &Rational) -> QClass {
        QClass {
            ambient: self.ambient,
            orders: self
                .orders
                .iter()
                .map(|c| c.as_ref().map(|c| c.scale(s)))
                .collect(),
        }
    }

    /// Classical cup product of every coefficient with `x`. Agrees with the
    /// quantum product when `x` is a polynomial in `θ`.
    pub fn cup_class(&self, x: &CohClass) -> Result<QClass> {
        let orders = self
            .orders
            .iter()
            .map(|c| c.as_ref().map(|c| c.cup(x).map(|p| reduce(&p))).transpose())
            .collect::<Result<_>>()?;
        Ok(QClass {
            ambient: self.ambient,
            orders,
        })
    }

    /// Multiplication by a scalar series.
    pub fn mul_series(&self, s: &QSeries) -> QClass {
        let n = self.truncation_order().min(s.truncation_order()) as usize;
        let mut orders: Vec<Option<CohClass>> = vec![Some(CohClass::zero(self.ambient)); n + 1];
        for (i, c) in s.coeffs().iter().enumerate().take(n + 1) {
            for j in 0..=(n - i) {
                let term = match (c, &self.orders[j]) {
                    (Some(c), Some(x)) => Some(x.scale(c)),
                    (None, Some(x)) if x.is_empty() => Some(CohClass::zero(self.ambient)),
                    (Some(c), None) if c.is_zero() => Some(CohClass::zero(self.ambient)),
                    _ => None,
                };
                orders[i + j] = match (orders[i + j].take(), term) {
                    (Some(acc), Some(t)) => Some(&acc + &t),
                    _ => None,
                };
            }
        }
        QClass {
            ambient: self.ambient,
            orders: orders.into_iter().map(|c| c.map(|c| reduce(&c))).collect(),
        }
    }

    /// First order, among those known on both sides, where the classes
    /// differ in the ring.
    pub fn first_difference(&self, other: &QClass) -> Option<u32> {
        let n = self.orders.len().min(other.orders.len());
        (0..n)
            .find(|&e| match (&self.orders[e], &other.orders[e]) {
                (Some(a), Some(b)) => !reduce(&(a - b)).is_empty(),
                _ => false,
            })
            .map(|e| e as u32)
    }
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in self.orders.iter().enumerate() {
            let q = if e == 1 {
                "q".to_string()
            } else {
                format!("q^{e}")
            };
            match c {
                None => parts.push(format!("{q}*(unknown)")),
                Some(c) if c.is_empty() => {}
                Some(c) if e == 0 => parts.push(c.to_string()),
                Some(c) => parts.push(format!("{q}*({c})")),
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn divided_theta_eta(amb: Ambient, theta: i64, eta: i64, sign: &Rational) -> CohClass {
    if theta < 0 || eta < 0 {
        return CohClass::zero(amb);
    }
    CohClass::monomial(amb, theta as u32, eta as u32, sign * inv_factorial(theta))
}

/// `Σ_{i<u} θ^{g-d+i+v}/(g-d+i+v)! η^{u-1-i} - θ^{g-d+i}/(g-d+i)! η^{u+v-1-i}`.
pub fn linear_coefficient(u: u32, v: u32, amb: Ambient) -> CohClass {
    let base = amb.g() as i64 - amb.d() as i64;
    let (u, v) = (u as i64, v as i64);
    let mut out = CohClass::zero(amb);
    for i in 0..u {
        out = &out + &divided_theta_eta(amb, base + i + v, u - 1 - i, &Rational::one());
        out = &out + &divided_theta_eta(amb, base + i, u + v - 1 - i, &-Rational::one());
    }
    out
}

/// The `q^2` coefficient for `d ≤ g-1`, dual to the degree-2 invariants:
///
/// ```text
/// Σ_n Σ_p C(n,p) / (2^n (g-1-d-n)!) Σ_{i<u} [ θ^{A+v} η^{u-1+n-i-p} / (g-d+i+v+p)!
///                                            - θ^{A}   η^{u+v-1+n-i-p} / (g-d+i+p)! ]
/// ```
///
/// with `A = 2g - 2d - 1 - n + i + p`.
pub fn quadratic_coefficient(u: u32, v: u32, amb: Ambient) -> CohClass {
    let g = amb.g() as i64;
    let d = amb.d() as i64;
    let (u, v) = (u as i64, v as i64);
    let mut out = CohClass::zero(amb);
    for n in 0..=(g - 1 - d) {
        let pre =
            inv_factorial(g - 1 - d - n) / Rational::from_integer(BigInt::from(2).pow(n as u32));
        for p in 0..=n {
            let c = &pre * Rational::from_integer(binom(n, p));
            for i in 0..u {
                let a = 2 * g - 2 * d - 1 - n + i + p;
                let left = c.clone() * inv_factorial(g - d + i + v + p);
                let right = c.clone() * inv_factorial(g - d + i + p);
                if a + v >= 0 {
                    out.add_term(
                        Monomial::new((a + v) as u32, (u - 1 + n - i - p) as u32),
                        left,
                    );
                }
                if a >= 0 {
                    out.add_term(
                        Monomial::new(a as u32, (u + v - 1 + n - i - p) as u32),
                        -right,
                    );
                }
            }
        }
    }
    out
}

type CoeffCache = RwLock<HashMap<(Ambient, u32, u32, u32), Option<CohClass>>>;

fn coeff_cache() -> &'static CoeffCache {
    static CACHE: OnceLock<CoeffCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Reduced `q^e` coefficient of `η^u * η^v`, or `None` where it is not known.
pub fn eta_product_coeff(u: u32, v: u32, e: u32, amb: Ambient) -> Option<CohClass> {
    let key = (amb, u.min(v), u.max(v), e);
    if let Some(c) = coeff_cache().read().unwrap().get(&key) {
        return c.clone();
    }
    let c = compute_eta_product_coeff(u, v, e, amb);
    coeff_cache().write().unwrap().insert(key, c.clone());
    c
}

fn compute_eta_product_coeff(u: u32, v: u32, e: u32, amb: Ambient) -> Option<CohClass> {
    let g = amb.g() as i64;
    let d = amb.d() as i64;
    if e == 0 {
        return Some(reduce(&CohClass::eta_pow(amb, u + v)));
    }
    // Unit axiom: invariants with a fundamental-class insertion vanish for e ≥ 1.
    if u == 0 || v == 0 {
        return Some(CohClass::zero(amb));
    }
    let raw = if d > g - 1 {
        if e == 1 {
            linear_coefficient(u, v, amb)
        } else {
            CohClass::zero(amb)
        }
    } else if d == g - 1 {
        linear_coefficient(u, v, amb)
    } else if beyond_hyperbola(e, amb) {
        CohClass::zero(amb)
    } else if e == 1 {
        linear_coefficient(u, v, amb)
    } else if e == 2 {
        quadratic_coefficient(u, v, amb)
    } else {
        return None;
    };
    Some(reduce(&raw))
}

/// `η^u * η^v` through order `n`.
pub fn qprod_eta(u: u32, v: u32, amb: Ambient, n: u32) -> QClass {
    QClass {
        ambient: amb,
        orders: (0..=n).map(|e| eta_product_coeff(u, v, e, amb)).collect(),
    }
}

/// Quantum product of classical classes, via `θ`-linearity.
pub fn qprod(x: &CohClass, y: &CohClass, n: u32) -> Result<QClass> {
    x.check_same(y)?;
    let amb = x.ambient();
    let mut out: Vec<Option<CohClass>> = vec![Some(CohClass::zero(amb)); n as usize + 1];
    for (m1, c1) in x.terms() {
        for (m2, c2) in y.terms() {
            let c = c1 * c2;
            for (e, slot) in out.iter_mut().enumerate() {
                let Some(acc) = slot.as_mut() else { continue };
                match eta_product_coeff(m1.eta, m2.eta, e as u32, amb) {
                    Some(p) => {
                        let term = p.mul_theta_pow(m1.theta + m2.theta).scale(&c);
                        *acc = &*acc + &term;
                    }
                    None => *slot = None,
                }
            }
        }
    }
    Ok(QClass {
        ambient: amb,
        orders: out.into_iter().map(|c| c.map(|c| reduce(&c))).collect(),
    })
}

/// Product of quantum classes, truncated at the smaller order.
///
/// An unknown coefficient `x_i` (with `y_j` nonzero) makes every order from
/// `i + j` on unknown, since its contribution can land anywhere above.
pub fn qmul(x: &QClass, y: &QClass) -> Result<QClass> {
    if x.ambient != y.ambient {
        return Err(crate::ring::mismatch(x.ambient, y.ambient));
    }
    let amb = x.ambient;
    let n = x.truncation_order().min(y.truncation_order()) as usize;
    let mut out: Vec<Option<CohClass>> = vec![Some(CohClass::zero(amb)); n + 1];
    let mut poisoned_from = n + 1;
    for i in 0..=n {
        for j in 0..=(n - i) {
            match (&x.orders[i], &y.orders[j]) {
                (Some(a), Some(b)) => {
                    if a.is_empty() || b.is_empty() {
                        continue;
                    }
                    let p = qprod(a, b, (n - i - j) as u32)?;
                    for (k, c) in p.orders.iter().enumerate() {
                        let slot = &mut out[i + j + k];
                        match (slot.as_mut(), c) {
                            (Some(acc), Some(c)) => *acc = &*acc + c,
                            _ => *slot = None,
                        }
                    }
                }
                (None, Some(b)) | (Some(b), None) if b.is_empty() => {}
                _ => poisoned_from = poisoned_from.min(i + j),
            }
        }
    }
    for slot in out.iter_mut().skip(poisoned_from) {
        *slot = None;
    }
    Ok(QClass {
        ambient: amb,
        orders: out.into_iter().map(|c| c.map(|c| reduce(&c))).collect(),
    })
}

/// `x^{*k}`, folded from the left; `x^{*0}` is the unit.
pub fn qpow_q(x: &QClass, k: u32) -> Result<QClass> {
    let mut acc = QClass::constant(&CohClass::one(x.ambient), x.truncation_order());
    for _ in 0..k {
        acc = qmul(&acc, x)?;
    }
    Ok(acc)
}

pub fn qpow(x: &CohClass, k: u32, n: u32) -> Result<QClass> {
    qpow_q(&QClass::constant(x, n), k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WCase {
    I,
    II,
    III,
    IV,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum YCase {
    I,
    II,
    III,
}

fn regime_error(what: &'static str, reason: String) -> Error {
    Error::Regime { what, reason }
}

/// `Σ_j P_j ∪ c_j`, where `term(j)` yields the quantum class `P_j` and the
/// classical `θ`-polynomial `c_j`.
fn theta_weighted_sum(
    amb: Ambient,
    n: u32,
    range: impl Iterator<Item = i64>,
    mut term: impl FnMut(i64) -> Result<(QClass, CohClass)>,
) -> Result<QClass> {
    let mut acc = QClass::zero(amb, n);
    for j in range {
        let (power, theta) = term(j)?;
        acc = acc.add(&power.cup_class(&theta)?)?;
    }
    Ok(acc)
}

fn eta_q(amb: Ambient, n: u32) -> QClass {
    QClass::constant(&CohClass::eta(amb), n)
}

/// Powers `base^{*0}, …, base^{*k}`.
fn power_table(base: &QClass, k: u32) -> Result<Vec<QClass>> {
    let mut v = vec![QClass::constant(
        &CohClass::one(base.ambient),
        base.truncation_order(),
    )];
    for i in 0..k as usize {
        let next = qmul(&v[i], base)?;
        v.push(next);
    }
    Ok(v)
}

/// Right-hand side of the `η^u` identity for the given case.
pub fn w_identity_rhs(u: u32, case: WCase, amb: Ambient, n: u32) -> Result<QClass> {
    let g = amb.g() as i64;
    let d = amb.d() as i64;
    let ui = u as i64;
    let q = QSeries::q_power(1, Rational::one(), n);
    match case {
        WCase::I => {
            if d <= g {
                return Err(regime_error(
                    "w identity (i)",
                    format!("requires d > g, got {amb}"),
                ));
            }
            let k = ui - d + g - 1;
            let powers = power_table(&eta_q(amb, n), u)?;
            let sum = theta_weighted_sum(amb, n, 0..=k, |j| {
                Ok((
                    powers[(k - j) as usize].clone(),
                    CohClass::theta_divided_power(amb, j),
                ))
            })?;
            powers[u as usize].sub(&sum.mul_series(&q))
        }
        WCase::II => {
            if d != g {
                return Err(regime_error(
                    "w identity (ii)",
                    format!("requires d = g, got {amb}"),
                ));
            }
            let base = eta_q(amb, n).add(&QClass::q_power(&CohClass::one(amb), 1, n))?;
            let powers = power_table(&base, u)?;
            let sum = theta_weighted_sum(amb, n, 0..ui, |j| {
                Ok((
                    powers[(ui - 1 - j) as usize].clone(),
                    CohClass::theta_divided_power(amb, j),
                ))
            })?;
            powers[u as usize].sub(&sum.mul_series(&q))
        }
        WCase::III => {
            if d != g - 1 {
                return Err(regime_error(
                    "w identity (iii)",
                    format!("requires d = g-1, got {amb}"),
                ));
            }
            let r = QClass::constant(&CohClass::theta(amb), n).mul_series(&QSeries::geometric(n));
            let base = eta_q(amb, n).add(&r)?;
            let powers = power_table(&base, u)?;
            let sum = theta_weighted_sum(amb, n, 0..ui, |j| {
                let c = CohClass::monomial(amb, j as u32, 0, inv_factorial(j + 1));
                Ok((powers[(ui - 1 - j) as usize].clone(), c))
            })?;
            powers[u as usize].sub(&qmul(&r, &sum)?)
        }
        WCase::IV => {
            if !(g < 2 * d && d < g) {
                return Err(regime_error(
                    "w identity (iv)",
                    format!("requires g/2 < d <= g-1, got {amb}"),
                ));
            }
            let n = n.min(1);
            let q = QSeries::q_power(1, Rational::one(), n);
            let k = ui - d + g - 1;
            let powers = power_table(&eta_q(amb, n), u)?;
            let sum = theta_weighted_sum(amb, n, 0..ui, |j| {
                Ok((
                    powers[j as usize].clone(),
                    CohClass::theta_divided_power(amb, k - j),
                ))
            })?;
            let mut rhs = powers[u as usize].sub(&sum.mul_series(&q))?;
            if u >= 1 {
                let corr = powers[u as usize - 1]
                    .cup_class(
                        &CohClass::theta_divided_power(amb, g - d)
                            .scale(&Rational::from(BigInt::from(u))),
                    )?
                    .mul_series(&q);
                rhs = rhs.add(&corr)?;
            }
            Ok(rhs)
        }
    }
}

/// Checks `η^u = RHS` order by order (modulo `q^2` in case (iv)).
pub fn verify_w_identity(u: u32, case: WCase, amb: Ambient, n: u32) -> Result<bool> {
    let rhs = w_identity_rhs(u, case, amb, n)?;
    let lhs = QClass::constant(&CohClass::eta_pow(amb, u), rhs.truncation_order());
    Ok(rhs.unknown_orders().is_empty() && lhs.first_difference(&rhs).is_none())
}

/// `Σ_j (-1)^j θ^j/j! ∪ base^{*(g-j)}`.
fn eta_minus_sigma_quantum(base: &QClass) -> Result<QClass> {
    let amb = base.ambient;
    let g = amb.g();
    let powers = power_table(base, g)?;
    theta_weighted_sum(amb, base.truncation_order(), 0..=g as i64, |j| {
        let sign = if j % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        Ok((
            powers[(g as i64 - j) as usize].clone(),
            CohClass::theta_divided_power(amb, j).scale(&sign),
        ))
    })
}

/// Both sides of the product relation for the given case.
pub fn y_relation_sides(case: YCase, amb: Ambient, n: u32) -> Result<(QClass, QClass)> {
    let g = amb.g() as i64;
    let d = amb.d() as i64;
    let one = CohClass::one(amb);
    match case {
        YCase::I => {
            if d <= 2 * g - 2 {
                return Err(regime_error(
                    "y relation (i)",
                    format!("requires d > 2g-2, got {amb}"),
                ));
            }
            let p = eta_minus_sigma_quantum(&eta_q(amb, n))?;
            let lhs = qmul(&qpow_q(&eta_q(amb, n), (d - 2 * g + 1) as u32)?, &p)?;
            Ok((lhs, QClass::q_power(&one, 1, n)))
        }
        YCase::II => {
            if !(g < d && d <= 2 * g - 2) {
                return Err(regime_error(
                    "y relation (ii)",
                    format!("requires g < d <= 2g-2, got {amb}"),
                ));
            }
            let lhs = eta_minus_sigma_quantum(&eta_q(amb, n))?;
            let rhs = qpow_q(&eta_q(amb, n), (2 * g - 1 - d) as u32)?
                .mul_series(&QSeries::q_power(1, Rational::one(), n));
            Ok((lhs, rhs))
        }
        YCase::III => {
            if d != g {
                return Err(regime_error(
                    "y relation (iii)",
                    format!("requires d = g, got {amb}"),
                ));
            }
            let base = eta_q(amb, n).add(&QClass::q_power(&one, 1, n))?;
            let lhs = eta_minus_sigma_quantum(&base)?;
            let rhs = qpow_q(&base, (g - 1).max(0) as u32)?.mul_series(&QSeries::q_power(
                1,
                Rational::one(),
                n,
            ));
            Ok((lhs, rhs))
        }
    }
}

pub fn verify_y_relation(case: YCase, amb: Ambient, n: u32) -> Result<bool> {
    let (lhs, rhs) = y_relation_sides(case, amb, n)?;
    Ok(lhs.unknown_orders().is_empty()
        && rhs.unknown_orders().is_empty()
        && lhs.first_difference(&rhs).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssocFailure {
    pub u: u32,
    pub v: u32,
    pub w: u32,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssocReport {
    pub triples: usize,
    /// Orders compared (known on both sides), summed over triples.
    pub orders_compared: usize,
    pub counterexample: Option<AssocFailure>,
}

impl AssocReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// `(η^u * η^v) * η^w` against `η^u * (η^v * η^w)` for `1 ≤ u, v, w ≤ max_u`,
/// comparing only orders known on both sides.
pub fn verify_associativity(amb: Ambient, n: u32, max_u: u32) -> AssocReport {
    let triples: Vec<(u32, u32, u32)> = (1..=max_u)
        .flat_map(|u| (1..=max_u).flat_map(move |v| (1..=max_u).map(move |w| (u, v, w))))
        .collect();
    let results: Vec<(usize, Option<AssocFailure>)> = triples
        .par_iter()
        .map(|&(u, v, w)| {
            let eta = |k| QClass::constant(&CohClass::eta_pow(amb, k), n);
            let left = qmul(&qprod_eta(u, v, amb, n), &eta(w)).expect("same ambient");
            let right = qmul(&eta(u), &qprod_eta(v, w, amb, n)).expect("same ambient");
            let compared = (0..=n as usize)
                .filter(|&e| left.orders[e].is_some() && right.orders[e].is_some())
                .count();
            let failure =
                left.first_difference(&right)
                    .map(|order| AssocFailure { u, v, w, order });
            (compared, failure)
        })
        .collect();
    AssocReport {
        triples: triples.len(),
        orders_compared: results.iter().map(|r| r.0).sum(),
        counterexample: results.into_iter().find_map(|r| r.1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::gw::{gw_e, GwValue};
    use crate::ring::pair;

    fn amb(g: u32, d: u32) -> Ambient {
        Ambient::new(g, d).unwrap()
    }

    #[test]
    fn example_genus_two() {
        let a = amb(2, 2);
        let p = qprod_eta(1, 1, a, 3);
        assert_eq!(p.to_string(), "et^2 + q*(th - et)");
        let expected = QClass::from_orders(
            a,
            vec![
                Some(CohClass::eta_pow(a, 2)),
                Some(&CohClass::theta(a) - &CohClass::eta(a)),
                Some(CohClass::zero(a)),
                Some(CohClass::zero(a)),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn classical_regime_and_unit() {
        assert_eq!(qprod_eta(2, 2, amb(10, 5), 2).to_string(), "et^4");
        let p = qprod_eta(0, 3, amb(4, 3), 4);
        assert_eq!(p, QClass::constant(&CohClass::eta_pow(amb(4, 3), 3), 4));
        assert_eq!(qprod_eta(1, 1, amb(3, 2), 5).to_string(), "et^2");
    }

    #[test]
    fn theta_linearity_examples() {
        let a = amb(2, 2);
        let th = CohClass::theta(a);
        let et = CohClass::eta(a);
        let p = qprod(&th, &et, 3).unwrap();
        assert_eq!(p, QClass::constant(&th.cup(&et).unwrap(), 3));
        let x = &th - &et;
        assert_eq!(
            qprod(&x, &CohClass::one(a), 3).unwrap(),
            QClass::constant(&x, 3)
        );
        let p = qprod(&et, &x, 2).unwrap();
        let expected = QClass::from_orders(
            a,
            vec![
                Some(&th.cup(&et).unwrap() - &CohClass::eta_pow(a, 2)),
                Some(-&x),
                Some(CohClass::zero(a)),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn powers() {
        let a = amb(2, 2);
        let et = CohClass::eta(a);
        assert_eq!(qpow(&et, 2, 3).unwrap(), qprod_eta(1, 1, a, 3));
        assert_eq!(
            qpow(&et, 0, 3).unwrap(),
            QClass::constant(&CohClass::one(a), 3)
        );
        let cube = qpow(&et, 3, 3).unwrap();
        assert_eq!(
            cube,
            qmul(&qprod_eta(1, 1, a, 3), &QClass::constant(&et, 3)).unwrap()
        );
    }

    #[test]
    fn window_marks_unknown_orders() {
        let p = qprod_eta(3, 3, amb(8, 6), 4);
        assert!(p.coeff(3).is_none());
        assert_eq!(p.coeff(4), Some(&CohClass::zero(amb(8, 6))));
        assert!(p.to_string().contains("q^3*(unknown)"));
        let p = qprod_eta(2, 2, amb(16, 13), 6);
        assert_eq!(p.unknown_orders(), vec![3, 4, 5]);
    }

    #[test]
    fn series_regime_has_equal_coefficients() {
        for g in 2..=6 {
            let a = amb(g, g - 1);
            for u in 1..=3 {
                for v in 1..=3 {
                    let p = qprod_eta(u, v, a, 4);
                    for e in 2..=4 {
                        assert_eq!(p.coeff(e), p.coeff(1));
                    }
                }
            }
        }
    }

    #[test]
    fn coefficients_pair_to_invariants() {
        for (g, d) in [(3, 2), (4, 3), (2, 2), (3, 4), (7, 4), (9, 6), (11, 8)] {
            let a = amb(g, d);
            for u in 0..=d {
                for v in 0..=d - u {
                    for e in 1..=2 {
                        let Some(c) = eta_product_coeff(u, v, e, a) else {
                            continue;
                        };
                        let deg = u as i64 + v as i64 - e as i64 * a.q_weight();
                        if deg < 0 || deg > d as i64 {
                            assert!(c.is_empty());
                            continue;
                        }
                        let cd = d as i64 - deg;
                        for w in 0..=cd as u32 {
                            let nu = CohClass::monomial(a, cd as u32 - w, w, int(1));
                            let gw = gw_e(u, v, w, e, a).unwrap();
                            assert_eq!(
                                GwValue::Known(pair(&c, &nu).unwrap()),
                                gw,
                                "{a} u={u} v={v} w={w} e={e}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn w_identities_small() {
        assert!(verify_w_identity(2, WCase::I, amb(2, 3), 4).unwrap());
        assert!(verify_w_identity(2, WCase::II, amb(2, 2), 4).unwrap());
        assert!(verify_w_identity(2, WCase::III, amb(3, 2), 6).unwrap());
        assert!(verify_w_identity(3, WCase::IV, amb(5, 4), 3).unwrap());
        assert!(verify_w_identity(2, WCase::I, amb(2, 2), 4).is_err());
    }

    #[test]
    fn y_relations_small() {
        assert!(verify_y_relation(YCase::I, amb(2, 5), 4).unwrap());
        assert!(verify_y_relation(YCase::II, amb(3, 4), 4).unwrap());
        assert!(verify_y_relation(YCase::III, amb(3, 3), 6).unwrap());
        assert!(verify_y_relation(YCase::II, amb(2, 2), 4).is_err());
    }

    #[test]
    fn associativity_small() {
        assert!(verify_associativity(amb(2, 2), 4, 2).passed());
        assert!(verify_associativity(amb(5, 4), 6, 3).passed());
        assert!(verify_associativity(amb(10, 5), 2, 2).passed());
        let r = verify_associativity(amb(11, 8), 3, 3);
        assert!(r.passed());
    }

    #[test]
    fn rendering_of_quadratic_terms() {
        let a = amb(11, 8);
        let c = quadratic_coefficient(1, 1, a);
        assert_eq!(c.homogeneous_degree(), Some(1 + 1 + 2 * 2));
        assert_eq!(c.coeff(Monomial::new(6, 0)), rat(73, 2880));
    }
}
