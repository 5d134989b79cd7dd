//! Randomized algebra laws for the truncated-series engine.

use lisinv_core::series::{rat_int, BiSeries, Coeff, QJet, QPoly, Rat, Series};
use num_traits::{One, Signed};
use proptest::prelude::*;

const ORDER: usize = 16;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn qpoly_strategy() -> impl Strategy<Value = QPoly> {
    proptest::collection::vec(rat_strategy(), 0..=4).prop_map(QPoly::new)
}

fn series_strategy() -> impl Strategy<Value = BiSeries> {
    proptest::collection::vec(qpoly_strategy(), ORDER + 1).prop_map(BiSeries::from_slices)
}

/// Same slices with the constant term forced to 1 (for sqrt) or to a nonzero
/// constant (for division).
fn with_constant(s: BiSeries, c: QPoly) -> BiSeries {
    let mut slices = s.slices().to_vec();
    slices[0] = c;
    BiSeries::from_slices(slices)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ring_laws(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), BiSeries::zero(ORDER));
    }

    #[test]
    fn division_round_trips(a in series_strategy(), b in series_strategy(), unit in 1i64..=5) {
        let b = with_constant(b, QPoly::from_int_coeffs(&[unit]));
        let q = a.div(&b).unwrap();
        prop_assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn sqrt_squares_back(a in series_strategy()) {
        let a = with_constant(a, QPoly::one());
        let s = a.sqrt().unwrap();
        prop_assert_eq!(s.mul(&s), a);
    }

    #[test]
    fn q_derivative_is_linear_and_leibniz(a in series_strategy(), b in series_strategy()) {
        prop_assert_eq!(a.add(&b).d_dq(1), a.d_dq(1).add(&b.d_dq(1)));
        let product_rule = a.d_dq(1).mul(&b).add(&a.mul(&b.d_dq(1)));
        prop_assert_eq!(a.mul(&b).d_dq(1), product_rule);
    }

    #[test]
    fn jets_are_a_homomorphic_image(a in series_strategy(), b in series_strategy()) {
        // evaluating q-jets commutes with the ring operations
        let to_jets = |s: &BiSeries| -> Series<QJet> {
            Series::from_slices(s.slices().iter().map(QJet::from_q_poly).collect())
        };
        prop_assert_eq!(to_jets(&a.mul(&b)), to_jets(&a).mul(&to_jets(&b)));
        prop_assert_eq!(to_jets(&a.add(&b)), to_jets(&a).add(&to_jets(&b)));
    }

    #[test]
    fn coefficients_stay_canonical(a in series_strategy(), b in series_strategy()) {
        use num_integer::Integer;
        let b = with_constant(b, QPoly::from_int_coeffs(&[2]));
        let q = a.div(&b).unwrap();
        for n in 0..=ORDER {
            for c in q.slice(n).coeffs() {
                prop_assert!(c.denom().is_positive());
                prop_assert!(c.numer().gcd(c.denom()).is_one());
            }
        }
    }
}

#[test]
fn eval_q1_is_additive_and_substitutes() {
    let xq = lisinv_core::gf::parse::parse_xq("q*x").unwrap();
    let a = BiSeries::from_poly(&xq, 8);
    assert_eq!(a.eval_q1()[1], rat_int(1));
    let b = BiSeries::one(8);
    let lhs = a.add(&b).eval_q1();
    let rhs: Vec<Rat> = a
        .eval_q1()
        .iter()
        .zip(b.eval_q1())
        .map(|(x, y)| x + y)
        .collect();
    assert_eq!(lhs, rhs);
}
