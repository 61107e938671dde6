//! Characteristic classes on the Jacobian and on the loci `G^r_d`.
//!
//! Expressions are polynomials in `θ` and formal Chern roots `x_1, …, x_k`
//! (of the dual tautological subbundle). They are integrated over `G^r_d` by
//! the determinantal formula
//!
//! ```text
//! ν x_1^{i_1} … x_k^{i_k} [M_k] = ν det( c_{(n-m)+k+(l-j)+i_j} ) [M],    c = c(F - E) = exp θ
//! ```
//!
//! and `θ^g [Jac_d] = g!`. Everything here is an independent route to the
//! closed-form invariants in [`crate::gw`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binom, factorial, inv_factorial, leibniz_det, Matrix, Rational};
use crate::error::{Error, Result};
use crate::ring::Ambient;

/// `coeff · θ^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaMonomial {
    pub coeff: Rational,
    pub power: u32,
}

/// `c_α(F - E) = θ^α / α!`, and zero for `α < 0`.
pub fn chern_f_minus_e(alpha: i64, _amb: Ambient) -> ThetaMonomial {
    if alpha < 0 {
        return ThetaMonomial {
            coeff: Rational::zero(),
            power: 0,
        };
    }
    ThetaMonomial {
        coeff: inv_factorial(alpha),
        power: alpha as u32,
    }
}

type ChernKey = (u32, Vec<u32>);

/// Polynomial in `θ` and `nroots` Chern roots with rational coefficients.
/// Terms with `θ`-exponent above `g` are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernExpr {
    ambient: Ambient,
    nroots: usize,
    terms: BTreeMap<ChernKey, Rational>,
}

impl ChernExpr {
    pub fn zero(amb: Ambient, nroots: usize) -> Self {
        ChernExpr {
            ambient: amb,
            nroots,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(amb: Ambient, nroots: usize) -> Self {
        Self::term(amb, 0, vec![0; nroots], Rational::one())
    }

    pub fn term(amb: Ambient, theta: u32, roots: Vec<u32>, coeff: Rational) -> Self {
        let nroots = roots.len();
        let mut e = Self::zero(amb, nroots);
        e.add_term(theta, roots, coeff);
        e
    }

    pub fn add_term(&mut self, theta: u32, roots: Vec<u32>, coeff: Rational) {
        assert_eq!(roots.len(), self.nroots, "root count mismatch");
        if theta > self.ambient.g() || coeff.is_zero() {
            return;
        }
        let key = (theta, roots);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn nroots(&self) -> usize {
        self.nroots
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &[u32], &Rational)> {
        self.terms.iter().map(|((t, r), q)| (*t, r.as_slice(), q))
    }

    pub fn coeff(&self, theta: u32, roots: &[u32]) -> Rational {
        self.terms
            .get(&(theta, roots.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Rational) -> ChernExpr {
        let mut out = Self::zero(self.ambient, self.nroots);
        for ((t, r), q) in &self.terms {
            out.add_term(*t, r.clone(), q * s);
        }
        out
    }

    pub fn add(&self, other: &ChernExpr) -> Result<ChernExpr> {
        self.check(other)?;
        let mut out = self.clone();
        for ((t, r), q) in &other.terms {
            out.add_term(*t, r.clone(), q.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &ChernExpr) -> Result<ChernExpr> {
        self.check(other)?;
        let mut out = Self::zero(self.ambient, self.nroots);
        for ((t1, r1), q1) in &self.terms {
            for ((t2, r2), q2) in &other.terms {
                let roots = r1.iter().zip(r2).map(|(a, b)| a + b).collect();
                out.add_term(t1 + t2, roots, q1 * q2);
            }
        }
        Ok(out)
    }

    fn check(&self, other: &ChernExpr) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(crate::ring::mismatch(self.ambient, other.ambient));
        }
        if self.nroots != other.nroots {
            return Err(Error::RootCountMismatch(self.nroots, other.nroots));
        }
        Ok(())
    }
}

/// Complete homogeneous symmetric polynomial of degree `k` in `nroots` roots
/// (the Segre class `s_k`). Zero for `k < 0`.
pub fn segre_complete(amb: Ambient, k: i64, nroots: usize) -> ChernExpr {
    let mut out = ChernExpr::zero(amb, nroots);
    if k < 0 || nroots == 0 {
        if k == 0 {
            return ChernExpr::one(amb, 0);
        }
        return out;
    }
    let mut exps = vec![0u32; nroots];
    fill_compositions(k as u32, 0, &mut exps, &mut |e| {
        out.add_term(0, e.to_vec(), Rational::one())
    });
    out
}

fn fill_compositions(remaining: u32, idx: usize, exps: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if idx + 1 == exps.len() {
        exps[idx] = remaining;
        f(exps);
        return;
    }
    for e in 0..=remaining {
        exps[idx] = e;
        fill_compositions(remaining - e, idx + 1, exps, f);
    }
}

/// Offset `n - m` between the ranks of `F` and `E` in the construction of
/// `G^r_d` over `Jac_d`.
pub fn brill_noether_offset(amb: Ambient) -> i64 {
    amb.g() as i64 - amb.d() as i64 - 1
}

/// `θ^theta_pow x_1^{i_1} … x_k^{i_k} [M_k]` via the determinantal formula.
///
/// Returns zero unless the total `θ`-degree is exactly `g`.
pub fn ht_monomial_eval(theta_pow: i64, root_pows: &[u32], offset: i64, amb: Ambient) -> Rational {
    let k = root_pows.len() as i64;
    if theta_pow < 0 || k == 0 {
        return Rational::zero();
    }
    let index = |j: i64, l: i64| offset + k + (l - j) + root_pows[j as usize] as i64;
    // Every term of the expansion carries the same θ-degree.
    let det_degree: i64 = (0..k).map(|j| index(j, j)).sum();
    if theta_pow + det_degree != amb.g() as i64 {
        return Rational::zero();
    }
    let matrix: Matrix = (0..k)
        .map(|j| {
            (0..k)
                .map(|l| chern_f_minus_e(index(j, l), amb).coeff)
                .collect()
        })
        .collect();
    leibniz_det(&matrix) * Rational::from_integer(factorial(amb.g()))
}

/// Integrates an expression over the locus `M_k` with `k = nroots`, using the
/// `θ`-exponents stored in the expression.
pub fn integrate_on_locus(expr: &ChernExpr, offset: i64) -> Rational {
    expr.terms()
        .map(|(t, roots, q)| q * ht_monomial_eval(t as i64, roots, offset, expr.ambient()))
        .fold(Rational::zero(), |a, b| a + b)
}

/// `m = 2g - 2d - 1 + u + v + w`.
pub fn m_index(u: u32, v: u32, w: u32, amb: Ambient) -> i64 {
    2 * amb.g() as i64 - 2 * amb.d() as i64 - 1 + (u + v + w) as i64
}

/// Coefficient of `θ^m` in `γ_p = c_{g-d+1+p}(F-E) · c_{g-d+u+v+w-2-p}(F-E)`.
pub fn gamma(p: i64, u: u32, v: u32, w: u32, amb: Ambient) -> Rational {
    let base = amb.g() as i64 - amb.d() as i64;
    let s = (u + v + w) as i64;
    inv_factorial(base + 1 + p) * inv_factorial(base + s - 2 - p)
}

fn insertion_product(amb: Ambient, u: u32, v: u32, w: u32) -> ChernExpr {
    let s = |n: u32| segre_complete(amb, n as i64 - 1, 2);
    s(u).mul(&s(v))
        .and_then(|x| x.mul(&s(w)))
        .expect("same ambient")
}

/// `⟨η^u, η^v, θ^(g-m) η^w⟩_1` by expanding `s_{u-1} s_{v-1} s_{w-1}` over
/// `G^1_d` and evaluating each monomial with the determinantal formula.
pub fn gw1_oracle(u: u32, v: u32, w: u32, amb: Ambient) -> Rational {
    let theta_pow = amb.g() as i64 - m_index(u, v, w, amb);
    if theta_pow < 0 {
        return Rational::zero();
    }
    let offset = brill_noether_offset(amb);
    insertion_product(amb, u, v, w)
        .terms()
        .map(|(_, roots, q)| q * ht_monomial_eval(theta_pow, roots, offset, amb))
        .fold(Rational::zero(), |a, b| a + b)
}

/// Push-forward of the virtual class of the double-cover stratum to `G^1_d`:
/// the degree `g-1-d` part of `(1/8) exp θ / (1 - (x_1+x_2)/2)`, expanded as
///
/// ```text
/// (1/8) Σ_{n=0}^{g-1-d} Σ_{p=0}^{n} C(n,p) θ^{g-1-d-n} x_1^p x_2^{n-p} / (2^n (g-1-d-n)!)
/// ```
pub fn virtual_class_m11(amb: Ambient) -> Result<ChernExpr> {
    let top = amb.g() as i64 - 1 - amb.d() as i64;
    if top < 0 {
        return Err(Error::Domain {
            what: "virtual_class_m11",
            reason: format!("requires d <= g-1, got {amb}"),
        });
    }
    let mut out = ChernExpr::zero(amb, 2);
    for n in 0..=top {
        let pow2 = Rational::from_integer(BigInt::from(2).pow(n as u32));
        for p in 0..=n {
            let c = Rational::from_integer(binom(n, p)) * inv_factorial(top - n)
                / &pow2
                / Rational::from_integer(8.into());
            out.add_term((top - n) as u32, vec![p as u32, (n - p) as u32], c);
        }
    }
    Ok(out)
}

/// `⟨η^u, η^v, θ^(d+1-m) η^w⟩_2` from the insertions `2 s_{a-1}` and the
/// virtual class, evaluated over `G^1_d`.
///
/// The `θ`-power handed to the determinantal formula is fixed by requiring
/// total `θ`-degree `g`; the implied third-insertion exponent is `d+1-m` for
/// every term, and the invariant is zero when that exponent is negative.
pub fn gw2_oracle(u: u32, v: u32, w: u32, amb: Ambient) -> Result<Rational> {
    let vclass = virtual_class_m11(amb).map_err(|_| Error::Domain {
        what: "gw2_oracle",
        reason: format!("requires d <= g-1, got {amb}"),
    })?;
    let insertion_theta = amb.d() as i64 + 1 - m_index(u, v, w, amb);
    if insertion_theta < 0 {
        return Ok(Rational::zero());
    }
    let integrand = insertion_product(amb, u, v, w)
        .scale(&Rational::from_integer(8.into()))
        .mul(&vclass)?;
    let offset = brill_noether_offset(amb);
    let g = amb.g() as i64;
    let mut total = Rational::zero();
    for (theta, roots, q) in integrand.terms() {
        let det_degree = 2 * (offset + 2) + roots.iter().map(|&r| r as i64).sum::<i64>();
        let theta_pow = g - det_degree;
        debug_assert_eq!(theta_pow - theta as i64, insertion_theta);
        total += q * ht_monomial_eval(theta_pow, roots, offset, amb);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn amb(g: u32, d: u32) -> Ambient {
        Ambient::new(g, d).unwrap()
    }

    #[test]
    fn chern_classes_of_difference() {
        let a = amb(4, 3);
        assert_eq!(
            chern_f_minus_e(0, a),
            ThetaMonomial {
                coeff: int(1),
                power: 0
            }
        );
        assert_eq!(
            chern_f_minus_e(2, a),
            ThetaMonomial {
                coeff: rat(1, 2),
                power: 2
            }
        );
        assert!(chern_f_minus_e(-1, a).coeff.is_zero());
    }

    #[test]
    fn segre_examples() {
        let a = amb(3, 2);
        let s1 = segre_complete(a, 1, 2);
        assert_eq!(s1.terms().count(), 2);
        assert_eq!(s1.coeff(0, &[1, 0]), int(1));
        assert_eq!(s1.coeff(0, &[0, 1]), int(1));
        assert_eq!(segre_complete(a, 0, 2), ChernExpr::one(a, 2));
        let s2 = segre_complete(a, 2, 2);
        for roots in [[2, 0], [1, 1], [0, 2]] {
            assert_eq!(s2.coeff(0, &roots), int(1));
        }
        assert_eq!(s2.terms().count(), 3);
        assert!(segre_complete(a, -1, 2).is_zero());
        // Three roots, degree 2: six monomials.
        assert_eq!(segre_complete(a, 2, 3).terms().count(), 6);
    }

    #[test]
    fn determinantal_examples() {
        // Matrix [[c1, c2], [c1, c2]] has zero determinant.
        let a = amb(2, 2);
        assert!(ht_monomial_eval(1, &[0, 1], brill_noether_offset(a), a).is_zero());
        // A full zero column: every index negative in the first column.
        assert!(ht_monomial_eval(0, &[0, 0], -10, a).is_zero());
        // g=4, d=3: sum over the Segre expansion with u=v=w=1 is the single
        // monomial x_1^0 x_2^0, which counts the 2 pencils.
        let b = amb(4, 3);
        assert_eq!(
            ht_monomial_eval(0, &[0, 0], brill_noether_offset(b), b),
            int(2)
        );
    }

    #[test]
    fn determinant_is_gamma_difference() {
        for (g, d) in [(4, 3), (6, 4), (8, 6), (7, 5)] {
            let a = amb(g, d);
            for (u, v, w) in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (3, 1, 2)] {
                let m = m_index(u, v, w, a);
                let total = (u + v + w - 3) as i64;
                for p in 0..=total {
                    let direct = ht_monomial_eval(
                        g as i64 - m,
                        &[p as u32, (total - p) as u32],
                        brill_noether_offset(a),
                        a,
                    );
                    let expected = if g as i64 - m < 0 {
                        Rational::zero()
                    } else {
                        (gamma(p, u, v, w, a) - gamma(p + 1, u, v, w, a))
                            * Rational::from_integer(factorial(g))
                    };
                    assert_eq!(direct, expected, "g={g} d={d} uvw=({u},{v},{w}) p={p}");
                }
            }
        }
    }

    #[test]
    fn gamma_reflection_symmetry() {
        for (g, d) in [(4, 3), (6, 4), (9, 6), (3, 5)] {
            let a = amb(g, d);
            for (u, v, w) in [(1, 1, 1), (2, 3, 1), (4, 2, 2)] {
                let top = (u + v + w) as i64 - 3;
                for p in -2..=top + 2 {
                    assert_eq!(gamma(p, u, v, w, a), gamma(top - p, u, v, w, a));
                }
            }
        }
    }

    #[test]
    fn gw1_oracle_examples() {
        assert_eq!(gw1_oracle(1, 1, 1, amb(4, 3)), int(2));
        assert_eq!(gw1_oracle(0, 2, 1, amb(4, 3)), int(0));
        assert_eq!(gw1_oracle(1, 1, 1, amb(2, 2)), int(1));
    }

    #[test]
    fn virtual_class_examples() {
        let a = amb(4, 3);
        assert_eq!(
            virtual_class_m11(a).unwrap(),
            ChernExpr::term(a, 0, vec![0, 0], rat(1, 8))
        );
        let b = amb(3, 1);
        let v = virtual_class_m11(b).unwrap();
        assert_eq!(v.coeff(1, &[0, 0]), rat(1, 8));
        assert_eq!(v.coeff(0, &[1, 0]), rat(1, 16));
        assert_eq!(v.coeff(0, &[0, 1]), rat(1, 16));
        assert_eq!(v.terms().count(), 3);
        for (g, d) in [(5, 1), (7, 3), (9, 2)] {
            let a = amb(g, d);
            for (t, roots, _) in virtual_class_m11(a).unwrap().terms() {
                assert_eq!(t + roots.iter().sum::<u32>(), g - 1 - d);
            }
        }
        assert!(virtual_class_m11(amb(3, 3)).is_err());
    }

    #[test]
    fn gw2_oracle_examples() {
        assert!(gw2_oracle(1, 1, 1, amb(3, 4)).is_err());
        let a = amb(3, 2);
        assert_eq!(gw2_oracle(1, 1, 1, a).unwrap(), gw1_oracle(1, 1, 1, a));
        assert!(gw2_oracle(0, 3, 1, amb(6, 4)).unwrap().is_zero());
    }
}
