//! Algebraic invariants checked on random ambients and classes.

use proptest::prelude::*;

use symprod_core::arith::rat;
use symprod_core::chern::{gamma, gw1_oracle};
use symprod_core::gw::{gw1, regime};
use symprod_core::quantum::{qmul, qprod, QClass};
use symprod_core::ring::{dim_invariant_subring, monomials_of_degree, pair, reduce};
use symprod_core::{Ambient, CohClass, Monomial};

fn ambient() -> impl Strategy<Value = Ambient> {
    (0u32..=6)
        .prop_flat_map(|g| (Just(g), 1u32..=g + 3))
        .prop_map(|(g, d)| Ambient::new(g, d).unwrap())
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 0..6)
}

/// A class of degree `k` with random small rational coefficients.
fn class_of_degree(amb: Ambient, k: u32, cs: &[(i64, i64)]) -> CohClass {
    let monos = monomials_of_degree(amb, k);
    CohClass::from_terms(
        amb,
        monos.into_iter().zip(cs).map(|(m, &(n, d))| (m, rat(n, d))),
    )
}

/// Any-degree class: one random homogeneous piece per degree.
fn class(amb: Ambient, cs: &[(i64, i64)]) -> CohClass {
    let mut x = CohClass::zero(amb);
    for k in 0..=amb.d() {
        let rotated: Vec<_> = cs
            .iter()
            .cycle()
            .skip(k as usize)
            .take(cs.len())
            .copied()
            .collect();
        x = &x + &class_of_degree(amb, k, &rotated);
    }
    x
}

fn without_unknowns(amb: Ambient) -> bool {
    !regime(amb).has_unknown_orders()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cup_is_commutative_and_associative(amb in ambient(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let (x, y, z) = (class(amb, &a), class(amb, &b), class(amb, &c));
        prop_assert_eq!(x.cup(&y).unwrap(), y.cup(&x).unwrap());
        prop_assert_eq!(x.cup(&y).unwrap().cup(&z).unwrap(), x.cup(&y.cup(&z).unwrap()).unwrap());
    }

    #[test]
    fn pairing_is_symmetric(amb in ambient(), k in 0u32..=9, a in coeffs(), b in coeffs()) {
        let k = k % (amb.d() + 1);
        let x = class_of_degree(amb, k, &a);
        let y = class_of_degree(amb, amb.d() - k, &b);
        prop_assert_eq!(pair(&x, &y).unwrap(), pair(&y, &x).unwrap());
    }

    #[test]
    fn reduce_is_a_projection(amb in ambient(), k in 0u32..=9, a in coeffs(), b in coeffs(), t in -3i64..=3) {
        let k = k % (amb.d() + 1);
        let x = class_of_degree(amb, k, &a);
        let y = class_of_degree(amb, k, &b);
        let r = reduce(&x);
        prop_assert_eq!(reduce(&r), r.clone());
        let combo = &x + &y.scale(&rat(t, 1));
        prop_assert_eq!(reduce(&combo), &r + &reduce(&y).scale(&rat(t, 1)));
        for m in monomials_of_degree(amb, amb.d() - k) {
            let test = CohClass::monomial(amb, m.theta, m.eta, rat(1, 1));
            prop_assert_eq!(pair(&r, &test).unwrap(), pair(&x, &test).unwrap());
        }
    }

    #[test]
    fn dimensions_are_symmetric(amb in ambient(), k in 0u32..=9) {
        let k = k % (amb.d() + 1);
        let a = dim_invariant_subring(amb, k as i64).unwrap();
        let b = dim_invariant_subring(amb, (amb.d() - k) as i64).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn degree_one_invariants_are_symmetric(amb in ambient(), u in 0u32..=5, v in 0u32..=5, w in 0u32..=5) {
        let value = gw1(u, v, w, amb);
        for (a, b, c) in [(v, u, w), (u, w, v), (w, v, u), (v, w, u), (w, u, v)] {
            prop_assert_eq!(gw1(a, b, c, amb), value.clone());
        }
        prop_assert_eq!(gw1_oracle(u, v, w, amb), value);
    }

    #[test]
    fn gamma_reflection(amb in ambient(), u in 0u32..=5, v in 0u32..=5, w in 0u32..=5, p in -3i64..=12) {
        let top = (u + v + w) as i64 - 3;
        prop_assert_eq!(gamma(p, u, v, w, amb), gamma(top - p, u, v, w, amb));
    }

    #[test]
    fn quantum_product_basics(amb in ambient(), a in coeffs(), b in coeffs()) {
        let (x, y) = (class(amb, &a), class(amb, &b));
        let n = 3;
        let xy = qprod(&x, &y, n).unwrap();
        prop_assert_eq!(xy.first_difference(&qprod(&y, &x, n).unwrap()), None);
        prop_assert_eq!(xy.coeff(0).cloned(), Some(reduce(&x.cup(&y).unwrap())));
        let one = CohClass::one(amb);
        prop_assert_eq!(qprod(&x, &one, n).unwrap(), QClass::constant(&x, n));
    }

    #[test]
    fn theta_acts_classically(amb in ambient(), a in coeffs(), b in coeffs(), j in 0u32..=3) {
        let (x, y) = (class(amb, &a), class(amb, &b));
        let th = CohClass::monomial(amb, j, 0, rat(1, 1));
        let n = 3;
        let left = qprod(&x.cup(&th).unwrap(), &y, n).unwrap();
        let right = qprod(&x, &y, n).unwrap().cup_class(&th).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn quantum_product_is_associative(amb in ambient().prop_filter("known", |a| without_unknowns(*a)),
                                      m in prop::collection::vec((0u32..=2, 0u32..=3), 3)) {
        let n = 4;
        let c = |(t, e): (u32, u32)| QClass::constant(&CohClass::from_terms(amb, [(Monomial::new(t, e), rat(1, 1))]), n);
        let (x, y, z) = (c(m[0]), c(m[1]), c(m[2]));
        let left = qmul(&qmul(&x, &y).unwrap(), &z).unwrap();
        let right = qmul(&x, &qmul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left.first_difference(&right), None);
    }
}
