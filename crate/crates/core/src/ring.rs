//! The monodromy-invariant subring of `H*(Σ_d; Q)` generated by `η` and `θ`.
//!
//! A class is a finite rational combination of monomials `θ^a η^b`. The ring
//! is modelled as the free span of monomials modulo the kernel of the
//! intersection pairing, where top-degree monomials evaluate as
//!
//! ```text
//! θ^a η^(d-a) [Σ_d] = g!/(g-a)!   if a <= g,   0 otherwise.
//! ```
//!
//! Monomials with `a > g` or `a + b > d` are zero on construction. Products
//! are left unreduced; [`reduce`] maps a class to its canonical representative
//! in the basis chosen greedily by ascending `θ`-exponent.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    falling_factorial, fmt_rational, independent_rows, inv_factorial, inverse, transpose, Matrix,
    Rational,
};
use crate::error::{Error, Result};

/// Genus `g` of the curve and degree `d` of the symmetric product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ambient {
    g: u32,
    d: u32,
}

impl Ambient {
    pub fn new(g: u32, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidAmbient {
                g: g as i64,
                d: d as i64,
            });
        }
        Ok(Ambient { g, d })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `d - g + 1`; the real degree of `q` is twice this.
    pub fn q_weight(&self) -> i64 {
        self.d as i64 - self.g as i64 + 1
    }

    /// Cohomological degree of `q`, `2(d - g + 1)`.
    pub fn deg_q(&self) -> i64 {
        2 * self.q_weight()
    }

    /// Brill–Noether number `g - (r+1)(g - d + r)`.
    pub fn brill_noether(&self, r: u32) -> i64 {
        let (g, d, r) = (self.g as i64, self.d as i64, r as i64);
        g - (r + 1) * (g - d + r)
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={}, d={}", self.g, self.d)
    }
}

/// `θ^theta η^eta`. Its cohomological degree is `2(theta + eta)`; the stored
/// degree is `theta + eta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub theta: u32,
    pub eta: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { theta: 0, eta: 0 };

    pub fn new(theta: u32, eta: u32) -> Self {
        Monomial { theta, eta }
    }

    pub fn degree(&self) -> u32 {
        self.theta + self.eta
    }

    /// True when the monomial is the zero class of `amb`.
    pub fn vanishes_in(&self, amb: Ambient) -> bool {
        self.theta > amb.g || self.degree() > amb.d
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.theta).cmp(&(other.degree(), other.theta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Nonvanishing monomials of degree `k`, by ascending `θ`-exponent.
pub fn monomials_of_degree(amb: Ambient, k: u32) -> Vec<Monomial> {
    if k > amb.d {
        return Vec::new();
    }
    (0..=k.min(amb.g))
        .map(|a| Monomial::new(a, k - a))
        .collect()
}

/// A rational combination of monomials in a fixed ambient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    ambient: Ambient,
    terms: BTreeMap<Monomial, Rational>,
}

impl CohClass {
    pub fn zero(amb: Ambient) -> Self {
        CohClass {
            ambient: amb,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(amb: Ambient) -> Self {
        Self::monomial(amb, 0, 0, Rational::one())
    }

    pub fn eta(amb: Ambient) -> Self {
        Self::monomial(amb, 0, 1, Rational::one())
    }

    pub fn theta(amb: Ambient) -> Self {
        Self::monomial(amb, 1, 0, Rational::one())
    }

    pub fn eta_pow(amb: Ambient, n: u32) -> Self {
        Self::monomial(amb, 0, n, Rational::one())
    }

    /// `θ^j / j!`, the `j`-th elementary symmetric polynomial in the `σ_i`.
    pub fn theta_divided_power(amb: Ambient, j: i64) -> Self {
        if j < 0 {
            return Self::zero(amb);
        }
        Self::monomial(amb, j as u32, 0, inv_factorial(j))
    }

    pub fn monomial(amb: Ambient, theta: u32, eta: u32, coeff: Rational) -> Self {
        let mut c = Self::zero(amb);
        c.add_term(Monomial::new(theta, eta), coeff);
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(
        amb: Ambient,
        terms: I,
    ) -> Self {
        let mut c = Self::zero(amb);
        for (m, q) in terms {
            c.add_term(m, q);
        }
        c
    }

    /// Adds `coeff * m`, dropping vanishing monomials and zero coefficients.
    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        if m.vanishes_in(self.ambient) || coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when no terms are stored. A nonempty class may still be zero in
    /// the ring; see [`CohClass::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero in the ring, i.e. pairs to zero against everything.
    pub fn is_zero(&self) -> bool {
        reduce(self).is_empty()
    }

    /// Common degree of all terms; `None` for the empty class or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|k| k == first).then_some(first)
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(Monomial::degree).collect();
        v.dedup();
        v
    }

    pub fn degree_part(&self, k: u32) -> CohClass {
        CohClass {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, q)| (*m, q.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> CohClass {
        if s.is_zero() {
            return CohClass::zero(self.ambient);
        }
        CohClass {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(m, q)| (*m, q * s)).collect(),
        }
    }

    /// Checked cup product. The result is not reduced.
    pub fn cup(&self, other: &CohClass) -> Result<CohClass> {
        self.check_same(other)?;
        let mut out = CohClass::zero(self.ambient);
        for (m, p) in &self.terms {
            for (n, q) in &other.terms {
                out.add_term(Monomial::new(m.theta + n.theta, m.eta + n.eta), p * q);
            }
        }
        Ok(out)
    }

    /// Cup product with `θ^a`, unreduced.
    pub fn mul_theta_pow(&self, a: u32) -> CohClass {
        CohClass::from_terms(
            self.ambient,
            self.terms
                .iter()
                .map(|(m, q)| (Monomial::new(m.theta + a, m.eta), q.clone())),
        )
    }

    pub fn check_same(&self, other: &CohClass) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(mismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    fn merge(&self, other: &CohClass, sign: &Rational) -> CohClass {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(*m, q * sign);
        }
        out
    }
}

pub(crate) fn mismatch(a: Ambient, b: Ambient) -> Error {
    Error::AmbientMismatch(a.g, a.d, b.g, b.d)
}

// Operator forms panic on ambient mismatch; `cup` is the checked product.
impl Add for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: &CohClass) -> CohClass {
        self.merge(rhs, &Rational::one())
    }
}

impl Sub for &CohClass {
    type Output = CohClass;
    fn sub(self, rhs: &CohClass) -> CohClass {
        self.merge(rhs, &-Rational::one())
    }
}

impl Neg for &CohClass {
    type Output = CohClass;
    fn neg(self) -> CohClass {
        self.scale(&-Rational::one())
    }
}

impl Mul for &CohClass {
    type Output = CohClass;
    fn mul(self, rhs: &CohClass) -> CohClass {
        self.cup(rhs).expect("ambient mismatch")
    }
}

impl fmt::Display for CohClass {
    /// Terms by ascending degree, then descending `θ`-exponent, e.g.
    /// `1/2 * th^2 - th * et`. Unit coefficients and exponents are elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| (m.degree(), std::cmp::Reverse(m.theta)));
        for (i, (m, q)) in ordered.into_iter().enumerate() {
            let negative = q.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            f.write_str(&render_term(m, &q.abs()))?;
        }
        Ok(())
    }
}

fn render_term(m: &Monomial, c: &Rational) -> String {
    let mut factors = Vec::new();
    if !c.is_one() || *m == Monomial::ONE {
        factors.push(fmt_rational(c));
    }
    for (name, e) in [("th", m.theta), ("et", m.eta)] {
        match e {
            0 => {}
            1 => factors.push(name.to_string()),
            _ => factors.push(format!("{name}^{e}")),
        }
    }
    factors.join(" * ")
}

/// `θ^a η^b [Σ_d]` for a top-degree monomial.
pub fn eval_top(m: Monomial, amb: Ambient) -> Result<Rational> {
    if m.degree() != amb.d {
        return Err(Error::DegreeMismatch {
            theta: m.theta,
            eta: m.eta,
            got: m.degree(),
            expected: amb.d,
        });
    }
    Ok(Rational::from_integer(falling_factorial(amb.g, m.theta)))
}

/// Evaluates the top-degree part of a class on the fundamental class.
pub fn integrate(x: &CohClass) -> Rational {
    x.terms
        .iter()
        .filter(|(m, _)| m.degree() == x.ambient.d)
        .map(|(m, q)| q * Rational::from_integer(falling_factorial(x.ambient.g, m.theta)))
        .fold(Rational::zero(), |a, b| a + b)
}

/// Intersection pairing of homogeneous classes of complementary degree.
pub fn pair(x: &CohClass, y: &CohClass) -> Result<Rational> {
    x.check_same(y)?;
    if x.is_empty() || y.is_empty() {
        return Ok(Rational::zero());
    }
    let kx = x.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let ky = y.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let d = x.ambient.d;
    if kx + ky != d {
        return Err(Error::NotComplementary(kx, ky, d));
    }
    Ok(integrate(&x.cup(y)?))
}

/// Pairing value of two monomials of complementary degree.
fn pair_monomials(m: Monomial, n: Monomial, amb: Ambient) -> Rational {
    let theta = m.theta + n.theta;
    if theta > amb.g {
        return Rational::zero();
    }
    Rational::from_integer(falling_factorial(amb.g, theta))
}

/// Canonical basis of one degree together with the data needed to express
/// an arbitrary class in it.
#[derive(Debug)]
struct DegreeBasis {
    basis: Vec<Monomial>,
    tests: Vec<Monomial>,
    /// Inverse of the pairing matrix `[pair(basis_i, tests_j)]`.
    solve: Matrix,
}

type BasisCache = RwLock<HashMap<(Ambient, u32), Arc<DegreeBasis>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn degree_basis(amb: Ambient, k: u32) -> Arc<DegreeBasis> {
    if let Some(b) = basis_cache().read().unwrap().get(&(amb, k)) {
        return b.clone();
    }
    let built = Arc::new(build_degree_basis(amb, k));
    basis_cache()
        .write()
        .unwrap()
        .insert((amb, k), built.clone());
    built
}

fn build_degree_basis(amb: Ambient, k: u32) -> DegreeBasis {
    let rows = monomials_of_degree(amb, k);
    let cols = if k <= amb.d {
        monomials_of_degree(amb, amb.d - k)
    } else {
        Vec::new()
    };
    let gram: Matrix = rows
        .iter()
        .map(|m| cols.iter().map(|n| pair_monomials(*m, *n, amb)).collect())
        .collect();
    let picked = independent_rows(&gram);
    let basis: Vec<Monomial> = picked.iter().map(|&i| rows[i]).collect();
    let sub: Matrix = picked.iter().map(|&i| gram[i].clone()).collect();
    let test_idx = independent_rows(&transpose(&sub));
    let tests: Vec<Monomial> = test_idx.iter().map(|&j| cols[j]).collect();
    let square: Matrix = sub
        .iter()
        .map(|row| test_idx.iter().map(|&j| row[j].clone()).collect())
        .collect();
    let solve = inverse(&square).expect("selected pairing minor is nonsingular");
    DegreeBasis {
        basis,
        tests,
        solve,
    }
}

/// Canonical representative of `x`, computed degree by degree.
pub fn reduce(x: &CohClass) -> CohClass {
    let amb = x.ambient;
    let mut out = CohClass::zero(amb);
    for k in x.degrees() {
        let part = x.degree_part(k);
        let basis = degree_basis(amb, k);
        let pairings: Vec<Rational> = basis
            .tests
            .iter()
            .map(|t| {
                part.terms
                    .iter()
                    .map(|(m, q)| q * pair_monomials(*m, *t, amb))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect();
        for (b_idx, m) in basis.basis.iter().enumerate() {
            let c = pairings
                .iter()
                .zip(basis.solve.iter())
                .map(|(p, row)| p * &row[b_idx])
                .fold(Rational::zero(), |a, b| a + b);
            out.add_term(*m, c);
        }
    }
    out
}

/// The canonical basis monomials of degree `k`.
pub fn canonical_basis(amb: Ambient, k: u32) -> Vec<Monomial> {
    if k > amb.d {
        return Vec::new();
    }
    degree_basis(amb, k).basis.clone()
}

/// Dimension of the degree-`k` part of the subring (rank of the pairing).
pub fn dim_invariant_subring(amb: Ambient, k: i64) -> Result<usize> {
    if k < 0 || k > amb.d as i64 {
        return Err(Error::DegreeOutOfRange { k, d: amb.d });
    }
    Ok(degree_basis(amb, k as u32).basis.len())
}

/// `∏_{i=1}^g (η - σ_i) = Σ_j (-1)^j η^(g-j) θ^j / j!` as a class.
pub fn eta_minus_sigma_product(amb: Ambient) -> CohClass {
    let g = amb.g;
    CohClass::from_terms(
        amb,
        (0..=g).map(|j| {
            let sign = if j % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            (Monomial::new(j, g - j), sign * inv_factorial(j as i64))
        }),
    )
}
