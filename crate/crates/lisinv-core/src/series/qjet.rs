//! Second-order Taylor jets at `q = 1`.
//!
//! A [`QJet`] carries `(f(1), f′(1), f″(1)/2)` for a coefficient `f(q)`:
//! exactly the data the expectation and variance of the LIS statistic need,
//! at O(1) storage per `x`-power. Arithmetic is the quotient-ring arithmetic
//! of `Q[ε]/(ε³)` with `ε = q − 1`, so every value stays an exact rational;
//! truncation drops only derivatives of order ≥ 3, which no moment formula
//! here consumes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::qpoly::QPoly;
use super::{Coeff, Rat};

// Jet workloads are overwhelmingly integer-valued (combinatorial counts and
// their q-derivatives), with powers of two showing up transiently in square
// roots. `Ratio` reduces through a full bigint gcd on every operation even
// when the denominator is already 1, which dominates the runtime at large
// truncation orders, so the ring operations below keep the same canonical
// values while skipping the gcd whenever denominators are 1 or pure powers
// of two.

fn raw_int(num: BigInt) -> Rat {
    Rat::new_raw(num, BigInt::one())
}

fn normalize(num: BigInt, den: BigInt) -> Rat {
    debug_assert!(den.is_positive());
    if num.is_zero() {
        return Rat::zero();
    }
    if den.is_one() {
        return raw_int(num);
    }
    let twos = num
        .trailing_zeros()
        .unwrap_or(0)
        .min(den.trailing_zeros().unwrap_or(0));
    let (num, den) = (num >> twos, den >> twos);
    if den.is_one() {
        raw_int(num)
    } else {
        // odd denominator left: the one place a real gcd is needed
        Rat::new(num, den)
    }
}

fn fr_add(a: &Rat, b: &Rat) -> Rat {
    if a.denom().is_one() && b.denom().is_one() {
        return raw_int(a.numer() + b.numer());
    }
    normalize(
        a.numer() * b.denom() + b.numer() * a.denom(),
        a.denom() * b.denom(),
    )
}

fn fr_sub(a: &Rat, b: &Rat) -> Rat {
    if a.denom().is_one() && b.denom().is_one() {
        return raw_int(a.numer() - b.numer());
    }
    normalize(
        a.numer() * b.denom() - b.numer() * a.denom(),
        a.denom() * b.denom(),
    )
}

fn fr_mul(a: &Rat, b: &Rat) -> Rat {
    if a.numer().is_zero() || b.numer().is_zero() {
        return Rat::zero();
    }
    if a.denom().is_one() && b.denom().is_one() {
        return raw_int(a.numer() * b.numer());
    }
    normalize(a.numer() * b.numer(), a.denom() * b.denom())
}

fn fr_div(a: &Rat, b: &Rat) -> Rat {
    debug_assert!(!b.numer().is_zero());
    if a.numer().is_zero() {
        return Rat::zero();
    }
    let (bn, bd) = if b.numer().is_negative() {
        (-b.numer(), -b.denom())
    } else {
        (b.numer().clone(), b.denom().clone())
    };
    normalize(a.numer() * bd, a.denom() * bn)
}

#[derive(Clone, PartialEq, Debug)]
pub struct QJet {
    /// `f(1)`
    pub val: Rat,
    /// `f′(1)`
    pub d1: Rat,
    /// `f″(1)/2`
    pub d2h: Rat,
}

impl QJet {
    pub fn new(val: Rat, d1: Rat, d2h: Rat) -> Self {
        QJet { val, d1, d2h }
    }

    pub fn from_int(v: i64) -> Self {
        QJet::new(Rat::from_integer(v.into()), Rat::zero(), Rat::zero())
    }

    /// Second factorial-moment numerator, `f″(1) = 2·d2h`.
    pub fn second_derivative(&self) -> Rat {
        fr_add(&self.d2h, &self.d2h)
    }
}

impl Coeff for QJet {
    fn zero() -> Self {
        QJet::from_int(0)
    }

    fn one() -> Self {
        QJet::from_int(1)
    }

    fn is_zero(&self) -> bool {
        self.val.is_zero() && self.d1.is_zero() && self.d2h.is_zero()
    }

    fn is_one(&self) -> bool {
        self.val.is_one() && self.d1.is_zero() && self.d2h.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        QJet::new(
            fr_add(&self.val, &rhs.val),
            fr_add(&self.d1, &rhs.d1),
            fr_add(&self.d2h, &rhs.d2h),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        QJet::new(
            fr_sub(&self.val, &rhs.val),
            fr_sub(&self.d1, &rhs.d1),
            fr_sub(&self.d2h, &rhs.d2h),
        )
    }

    fn mul(&self, rhs: &Self) -> Self {
        QJet::new(
            fr_mul(&self.val, &rhs.val),
            fr_add(&fr_mul(&self.val, &rhs.d1), &fr_mul(&self.d1, &rhs.val)),
            fr_add(
                &fr_add(&fr_mul(&self.val, &rhs.d2h), &fr_mul(&self.d1, &rhs.d1)),
                &fr_mul(&self.d2h, &rhs.val),
            ),
        )
    }

    fn neg(&self) -> Self {
        QJet::new(-&self.val, -&self.d1, -&self.d2h)
    }

    fn inverse(&self) -> Option<Self> {
        if self.val.is_zero() {
            return None;
        }
        // Triangular solve of (a·b) = 1 in Q[ε]/(ε³).
        let b0 = fr_div(&Rat::one(), &self.val);
        let b1 = -fr_div(&fr_mul(&self.d1, &b0), &self.val);
        let num = fr_add(&fr_mul(&self.d1, &b1), &fr_mul(&self.d2h, &b0));
        let b2 = -fr_div(&num, &self.val);
        Some(QJet::new(b0, b1, b2))
    }

    fn from_rat(r: &Rat) -> Self {
        QJet::new(r.clone(), Rat::zero(), Rat::zero())
    }

    fn from_q_poly(p: &QPoly) -> Self {
        let d1 = p.derivative();
        let d2 = d1.derivative();
        QJet::new(
            p.eval_one(),
            d1.eval_one(),
            d2.eval_one() / Rat::from_integer(2.into()),
        )
    }
}
