//! Grid sweeps that cross-check the modules against each other.
//!
//! Each sweep returns one [`Check`] per ambient (or per family), so callers
//! can print a line per check and stop at nothing.

use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binom, Rational};
use crate::chern::{gw1_oracle, gw2_oracle};
use crate::gw::{beyond_hyperbola, gw1, gw2, gw_e, regime, GwValue};
use crate::quantum::{
    eta_product_coeff, linear_coefficient, qprod_eta, quadratic_coefficient, verify_associativity,
    verify_w_identity, verify_y_relation, WCase, YCase,
};
use crate::ring::{eta_minus_sigma_product, pair, reduce, Ambient, CohClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    /// Number of individual comparisons behind the verdict.
    pub cases: usize,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(suite: &'static str, name: String) -> Self {
        Check {
            suite,
            name,
            passed: true,
            cases: 0,
            detail: String::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.detail = what();
        }
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("check serializes")
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn ambients(gmax: u32, d_range: impl Fn(u32) -> std::ops::RangeInclusive<u32>) -> Vec<Ambient> {
    (0..=gmax)
        .flat_map(|g| {
            d_range(g)
                .filter(|&d| d >= 1)
                .map(move |d| Ambient::new(g, d).expect("d >= 1"))
        })
        .collect()
}

/// `(u, v, w)` with `u + v + w ≤ total`.
fn triples(total: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (0..=total).flat_map(move |u| {
        (0..=total - u).flat_map(move |v| (0..=total - u - v).map(move |w| (u, v, w)))
    })
}

/// Closed forms against the determinantal pipeline on
/// `g ≤ gmax, 1 ≤ d ≤ g+2, u+v+w ≤ d+3`.
pub fn oracle_checks(gmax: u32) -> Vec<Check> {
    ambients(gmax, |g| 1..=g + 2)
        .par_iter()
        .map(|&amb| oracle_check(amb))
        .collect()
}

pub fn oracle_check(amb: Ambient) -> Check {
    let mut c = Check::new("oracle", format!("{amb}"));
    let degree_two = amb.d() < amb.g();
    for (u, v, w) in triples(amb.d() + 3) {
        let (a, b) = (gw1(u, v, w, amb), gw1_oracle(u, v, w, amb));
        c.record(a == b, || format!("gw1({u},{v},{w}) = {a}, oracle {b}"));
        if degree_two {
            let (a, b) = (
                gw2(u, v, w, amb),
                gw2_oracle(u, v, w, amb).expect("d <= g-1"),
            );
            c.record(a == b, || format!("gw2({u},{v},{w}) = {a}, oracle {b}"));
        }
    }
    c
}

/// `gw2 = 0` for `d > g-1` and `gw2 = gw1` for `d = g-1`.
pub fn degree_two_checks(gmax: u32) -> Vec<Check> {
    ambients(gmax, |g| g.saturating_sub(1)..=g + 2)
        .into_iter()
        .filter(|a| a.d() + 1 >= a.g())
        .map(|amb| {
            let mut c = Check::new("degree-two", format!("{amb}"));
            for (u, v, w) in triples(amb.d() + 3) {
                let value = gw2(u, v, w, amb);
                if amb.d() + 1 == amb.g() {
                    let expected = gw1(u, v, w, amb);
                    c.record(value == expected, || {
                        format!("gw2({u},{v},{w}) = {value}, gw1 = {expected}")
                    });
                } else {
                    c.record(value.is_zero(), || format!("gw2({u},{v},{w}) = {value}"));
                }
            }
            c
        })
        .collect()
}

/// `gw_e = 0` in region A (`d < g-1`, beyond the hyperbola) and region B
/// (`d > g-1`, `e > 1`), for `e ≤ emax`.
pub fn vanishing_checks(gmax: u32, emax: u32) -> Vec<Check> {
    ambients(gmax, |g| 1..=g + 2)
        .par_iter()
        .map(|&amb| vanishing_check(amb, emax))
        .collect()
}

pub fn vanishing_check(amb: Ambient, emax: u32) -> Check {
    let mut c = Check::new("vanishing", format!("{amb}"));
    let (g, d) = (amb.g() as i64, amb.d() as i64);
    for e in 1..=emax {
        let region_a = beyond_hyperbola(e, amb);
        let region_b = d > g - 1 && e > 1;
        if !(region_a || region_b) {
            continue;
        }
        for (u, v, w) in triples(amb.d() + 3) {
            let value = gw_e(u, v, w, e, amb).expect("e >= 1");
            c.record(value == GwValue::Known(Rational::zero()), || {
                format!("gw_{e}({u},{v},{w}) = {value}")
            });
        }
    }
    c
}

/// Homogeneity of every `q^e` coefficient of `η^u * η^v`, both for the raw
/// formula output and for the emitted (reduced) class.
pub fn grading_checks(gmax: u32, qmax: u32) -> Vec<Check> {
    ambients(gmax, |g| 1..=g + 2)
        .par_iter()
        .map(|&amb| grading_check(amb, qmax))
        .collect()
}

pub fn grading_check(amb: Ambient, qmax: u32) -> Check {
    let mut c = Check::new("grading", format!("{amb}"));
    let expected = |u: u32, v: u32, e: u32| u as i64 + v as i64 - e as i64 * amb.q_weight();
    let mut check = |x: &CohClass, u: u32, v: u32, e: u32, what: &str| {
        let k = expected(u, v, e);
        let ok = x.terms().all(|(m, _)| m.degree() as i64 == k);
        c.record(ok, || {
            format!("{what} q^{e} of et^{u}*et^{v}: {x} not of degree {k}")
        });
    };
    for u in 0..=amb.d() + 3 {
        for v in 0..=amb.d() + 3 - u {
            check(&linear_coefficient(u, v, amb), u, v, 1, "raw");
            if amb.d() < amb.g() {
                check(&quadratic_coefficient(u, v, amb), u, v, 2, "raw");
            }
            for e in 0..=qmax {
                if let Some(x) = eta_product_coeff(u, v, e, amb) {
                    check(&x, u, v, e, "emitted");
                }
            }
        }
    }
    c
}

/// Quantum relations on their stated regimes.
pub fn relation_checks_for(amb: Ambient, n: u32) -> Vec<Check> {
    let (g, d) = (amb.g() as i64, amb.d() as i64);
    let mut out = Vec::new();
    let w_cases = [
        (WCase::I, d > g, n),
        (WCase::II, d == g, n),
        (WCase::III, d == g - 1, n),
        (WCase::IV, 2 * d > g && d < g, 1),
    ];
    for (case, applies, order) in w_cases {
        if !applies {
            continue;
        }
        let mut c = Check::new("relations", format!("w-identity {case:?} {amb} N={order}"));
        for u in 0..=amb.d() + 1 {
            let ok = verify_w_identity(u, case, amb, order);
            c.record(matches!(ok, Ok(true)), || format!("u={u}: {ok:?}"));
        }
        out.push(c);
    }
    // Case (i) also needs lines in the fibres (d > g); this only drops g = d = 1.
    let y_cases = [
        (YCase::I, d > 2 * g - 2 && d > g),
        (YCase::II, g < d && d <= 2 * g - 2),
        (YCase::III, d == g),
    ];
    for (case, applies) in y_cases {
        if !applies {
            continue;
        }
        let mut c = Check::new("relations", format!("y-relation {case:?} {amb} N={n}"));
        let ok = verify_y_relation(case, amb, n);
        c.record(matches!(ok, Ok(true)), || format!("{ok:?}"));
        out.push(c);
    }
    out
}

/// The relation grid: identities (i)-(iii) and the product relations for
/// `g ≤ gmax` with `N = g+3`; identity (iv) for `g ≤ gmax_iv` modulo `q^2`.
pub fn relation_checks(gmax: u32, gmax_iv: u32) -> Vec<Check> {
    let mut ambs = ambients(gmax, |g| g.saturating_sub(1)..=2 * g + 2);
    ambs.extend(
        ambients(gmax_iv, |g| 1..=g.saturating_sub(1))
            .into_iter()
            .filter(|a| 2 * a.d() > a.g() && (a.g() > gmax || a.d() + 1 < a.g())),
    );
    let mut checks: Vec<Check> = ambs
        .par_iter()
        .flat_map(|&amb| relation_checks_for(amb, amb.g() + 3))
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    checks
}

/// Default truncation for associativity: enough to see every nonzero order
/// that is not past the hyperbola.
fn assoc_order(amb: Ambient) -> u32 {
    match regime(amb).hyperbola_bound.max_order() {
        Some(b) => b.max(1),
        None => amb.g() + 3,
    }
}

pub fn assoc_checks_for(amb: Ambient, n: Option<u32>, max_u: u32) -> Check {
    let n = n.unwrap_or_else(|| assoc_order(amb));
    let report = verify_associativity(amb, n, max_u);
    let mut c = Check::new("assoc", format!("{amb} N={n} max_u={max_u}"));
    c.cases = report.orders_compared;
    if let Some(f) = &report.counterexample {
        c.passed = false;
        c.detail = format!(
            "(et^{}*et^{})*et^{} differs at q^{}",
            f.u, f.v, f.w, f.order
        );
    }
    c
}

/// Associativity for every ambient with `g ≤ gmax` whose products have no
/// unknown orders (`d < 3g/4` or `d ≥ g-1`).
pub fn assoc_checks(gmax: u32, max_u: u32) -> Vec<Check> {
    ambients(gmax, |g| 1..=g + 3)
        .into_iter()
        .filter(|&a| !regime(a).has_unknown_orders())
        .map(|a| assoc_checks_for(a, None, max_u))
        .collect()
}

/// `pair(q^e coefficient of η^u*η^v, ν) = gw_e(u, v, w)` for every
/// complementary monomial `ν = θ^t η^w`.
pub fn duality_checks_for(amb: Ambient, n: u32) -> Check {
    let mut c = Check::new("duality", format!("{amb} N={n}"));
    for u in 0..=amb.d() {
        for v in 0..=amb.d() - u {
            let product = qprod_eta(u, v, amb, n);
            for e in 1..=n {
                let Some(coeff) = product.coeff(e) else {
                    continue;
                };
                let degree = u as i64 + v as i64 - e as i64 * amb.q_weight();
                if degree < 0 || degree > amb.d() as i64 {
                    c.record(coeff.is_empty(), || {
                        format!("q^{e} of et^{u}*et^{v} = {coeff} outside degrees")
                    });
                    continue;
                }
                let cd = amb.d() - degree as u32;
                for w in 0..=cd {
                    let nu = CohClass::monomial(amb, cd - w, w, Rational::from_integer(1.into()));
                    let lhs = pair(coeff, &nu).expect("complementary");
                    let rhs = gw_e(u, v, w, e, amb).expect("e >= 1");
                    c.record(GwValue::Known(lhs.clone()) == rhs, || {
                        format!("u={u} v={v} w={w} e={e}: pairing {lhs}, invariant {rhs}")
                    });
                }
            }
        }
    }
    c
}

pub fn duality_checks(gmax: u32, n: u32) -> Vec<Check> {
    ambients(gmax, |g| g.saturating_sub(1)..=g + 3)
        .par_iter()
        .map(|&a| duality_checks_for(a, n))
        .collect()
}

/// `Σ_j (-1)^j η^{g-j} θ^j / j!` vanishes for `g ≤ d ≤ 2g-2`.
pub fn classical_relation_checks(gmax: u32) -> Vec<Check> {
    ambients(gmax, |g| g..=(2 * g).saturating_sub(2))
        .into_iter()
        .map(|amb| {
            let mut c = Check::new("classical-relation", format!("{amb}"));
            let r = reduce(&eta_minus_sigma_product(amb));
            c.record(r.is_empty(), || format!("reduces to {r}"));
            c
        })
        .collect()
}

/// `gw1(1,1,1)` at `g = 2d-2` against `(1/d) C(2d-2, d-1)`.
pub fn catalan_check(dmax: u32) -> Check {
    let mut c = Check::new("catalan", format!("2 <= d <= {dmax}"));
    let mut values = String::new();
    for d in 2..=dmax {
        let amb = Ambient::new(2 * d - 2, d).expect("d >= 2");
        let value = gw1(1, 1, 1, amb);
        let expected = Rational::from_integer(binom(2 * d as i64 - 2, d as i64 - 1))
            / Rational::from_integer(d.into());
        let _ = write!(values, "{value} ");
        c.record(value == expected, || {
            format!("d={d}: {value} vs {expected}")
        });
    }
    if c.passed {
        c.detail = values.trim_end().to_string();
    }
    c
}
