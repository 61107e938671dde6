//! Truncated Novikov series `Σ_{e ≤ N} c_e q^e` with per-order unknowns.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{fmt_rational, Rational};

/// Coefficients for `q^0..=q^N`; `None` marks a coefficient that is not known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Option<Rational>>,
}

impl QSeries {
    pub fn zero(n: u32) -> Self {
        QSeries {
            coeffs: vec![Some(Rational::zero()); n as usize + 1],
        }
    }

    pub fn one(n: u32) -> Self {
        Self::q_power(0, Rational::one(), n)
    }

    /// `c q^k`, truncated to order `n`.
    pub fn q_power(k: u32, c: Rational, n: u32) -> Self {
        let mut s = Self::zero(n);
        if k <= n {
            s.coeffs[k as usize] = Some(c);
        }
        s
    }

    /// `q/(1-q) = q + q^2 + … + q^N`.
    pub fn geometric(n: u32) -> Self {
        let mut s = Self::zero(n);
        for c in s.coeffs.iter_mut().skip(1) {
            *c = Some(Rational::one());
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Option<Rational>>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series has at least the constant term"
        );
        QSeries { coeffs }
    }

    pub fn truncation_order(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeff(&self, e: u32) -> Option<&Rational> {
        self.coeffs.get(e as usize).and_then(Option::as_ref)
    }

    pub fn coeffs(&self) -> &[Option<Rational>] {
        &self.coeffs
    }

    pub fn unknown_tail(&self) -> bool {
        self.coeffs.iter().any(Option::is_none)
    }

    pub fn mark_unknown(&mut self, e: u32) {
        if let Some(c) = self.coeffs.get_mut(e as usize) {
            *c = None;
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.truncation_order().min(other.truncation_order()) as usize;
        let coeffs = (0..=n)
            .map(|e| match (&self.coeffs[e], &other.coeffs[e]) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            })
            .collect();
        QSeries { coeffs }
    }

    pub fn scale(&self, s: &Rational) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.as_ref().map(|c| c * s))
                .collect(),
        }
    }

    /// Cauchy product. An unknown factor poisons the orders it reaches unless
    /// its partner coefficient is a known zero.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.truncation_order().min(other.truncation_order()) as usize;
        let mut coeffs = vec![Some(Rational::zero()); n + 1];
        for i in 0..=n {
            for j in 0..=(n - i) {
                let term = match (&self.coeffs[i], &other.coeffs[j]) {
                    (Some(a), Some(b)) => Some(a * b),
                    (None, Some(b)) | (Some(b), None) if b.is_zero() => Some(Rational::zero()),
                    _ => None,
                };
                coeffs[i + j] = match (coeffs[i + j].take(), term) {
                    (Some(acc), Some(t)) => Some(acc + t),
                    _ => None,
                };
            }
        }
        QSeries { coeffs }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            let q = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            match c {
                None => parts.push(format!("{q}*(unknown)")),
                Some(c) if c.is_zero() => {}
                Some(c) if e == 0 => parts.push(fmt_rational(c)),
                Some(c) if c.is_one() => parts.push(q),
                Some(c) => parts.push(format!("{}*{q}", fmt_rational(c))),
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
