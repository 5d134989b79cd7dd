//! Truncated formal power series in `x` with exact coefficients.
//!
//! [`Series<C>`] keeps the slices `[x⁰] … [xᴺ]` for a caller-chosen truncation
//! order `N`. The coefficient ring `C` is pluggable:
//!
//! * [`QPoly`] — dense exact polynomials in `q`, giving the full bivariate
//!   series `H(x, q)` ([`BiSeries`]). The `q`-degree of intermediate slices is
//!   never truncated; combinatorial results are asserted to satisfy
//!   `deg_q ≤ n` after construction instead.
//! * [`QJet`] — Taylor jets at `q = 1`, giving exactly the three univariate
//!   series (value, first and second `q`-derivative) that moment and slope
//!   extraction consume ([`JetSeries`]); this is what makes truncation orders
//!   in the thousands affordable while staying exact.
//!
//! No floating point anywhere; all coefficients are canonical
//! arbitrary-precision rationals.

pub mod qjet;
pub mod qpoly;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

pub use qjet::QJet;
pub use qpoly::{render_rat, QPoly, XqPoly};

/// Exact rational scalar; always stored reduced with positive denominator.
pub type Rat = num_rational::BigRational;

/// `n/d` as a [`Rat`].
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// `n` as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Ring operations a series coefficient must provide. `inverse` returns
/// `None` for non-units (e.g. non-constant polynomials in `q`).
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn from_rat(r: &Rat) -> Self;
    fn from_q_poly(p: &QPoly) -> Self;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Division by a series whose constant term is not a unit.
    NonUnitDivisor,
    /// Square root of a series whose constant term is not 1.
    SqrtBranch,
    /// Coefficient request beyond the truncation order.
    TruncationExceeded { n: usize, order: usize },
    /// An exact shift-down found a nonzero low-order slice.
    NonvanishingLowOrder { slice: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonUnitDivisor => write!(f, "divisor constant term is not a unit"),
            SeriesError::SqrtBranch => write!(f, "sqrt requires constant term exactly 1"),
            SeriesError::TruncationExceeded { n, order } => {
                write!(
                    f,
                    "coefficient x^{n} requested beyond truncation order {order}"
                )
            }
            SeriesError::NonvanishingLowOrder { slice } => {
                write!(f, "slice x^{slice} expected to vanish before shift")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// A power series truncated at a fixed order in `x`: slice `i` is the
/// coefficient of `xⁱ`, for `0 ≤ i ≤ order`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<C> {
    slices: Vec<C>,
}

/// Bivariate series: exact `q`-polynomial per `x`-slice.
pub type BiSeries = Series<QPoly>;
/// Value/first/second `q`-derivative at `q = 1` per `x`-slice.
pub type JetSeries = Series<QJet>;

impl<C: Coeff> Series<C> {
    /// Builds from explicit slices; at least one slice (the constant term).
    pub fn from_slices(slices: Vec<C>) -> Self {
        debug_assert!(!slices.is_empty());
        Series { slices }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            slices: alloc::vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.slices[0] = C::one();
        s
    }

    /// Embeds a polynomial in `x, q`, truncating at `order`.
    pub fn from_poly(p: &XqPoly, order: usize) -> Self {
        let mut slices = Vec::with_capacity(order + 1);
        for i in 0..=order {
            slices.push(C::from_q_poly(&p.slice(i)));
        }
        Series { slices }
    }

    pub fn order(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, n: usize) -> &C {
        &self.slices[n]
    }

    pub fn slices(&self) -> &[C] {
        &self.slices
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut slices: Vec<C> = self.slices.iter().take(order + 1).cloned().collect();
        while slices.len() <= order {
            slices.push(C::zero());
        }
        Series { slices }
    }

    fn pad_to(&mut self, order: usize) {
        while self.slices.len() <= order {
            self.slices.push(C::zero());
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let slices = (0..=order)
            .map(|i| self.slices[i].add(&rhs.slices[i]))
            .collect();
        Series { slices }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let slices = (0..=order)
            .map(|i| self.slices[i].sub(&rhs.slices[i]))
            .collect();
        Series { slices }
    }

    pub fn neg(&self) -> Self {
        Series {
            slices: self.slices.iter().map(C::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = alloc::vec![C::zero(); order + 1];
        for (i, a) in self.slices.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.slices.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Series { slices: out }
    }

    pub fn scale(&self, c: &C) -> Self {
        Series {
            slices: self.slices.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Quotient `self / rhs`, requiring the divisor's constant term to be a
    /// unit of the coefficient ring. The standard back-substitution visits
    /// only the divisor's nonzero slices, so short (polynomial) denominators
    /// cost O(order · nnz).
    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let inv0 = rhs.slices[0].inverse().ok_or(SeriesError::NonUnitDivisor)?;
        let order = self.order().min(rhs.order());
        let nz: Vec<usize> = (1..=order)
            .filter(|&j| j < rhs.slices.len() && !rhs.slices[j].is_zero())
            .collect();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.slices[n].clone();
            for &j in nz.iter() {
                if j > n {
                    break;
                }
                acc = acc.sub(&rhs.slices[j].mul(&out[n - j]));
            }
            out.push(acc.mul(&inv0));
        }
        Ok(Series { slices: out })
    }

    /// Square root with constant term `+1`, by Newton iteration
    /// `s ← (s + a/s)/2` with the active order doubling each step.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.slices[0].is_one() {
            return Err(SeriesError::SqrtBranch);
        }
        let order = self.order();
        let half = C::from_rat(&rat(1, 2));
        let mut s = Series {
            slices: alloc::vec![C::one()],
        };
        while s.order() < order {
            let next = (2 * s.order() + 1).min(order);
            let a = self.truncated(next);
            s.pad_to(next);
            let q = a.div(&s)?;
            s = s.add(&q).scale(&half);
        }
        Ok(s)
    }

    /// Multiply by `xᵏ`, keeping the truncation order (top slices fall off).
    pub fn mul_xpow(&self, k: usize) -> Self {
        let order = self.order();
        let keep = order + 1 - k.min(order + 1);
        let mut slices = alloc::vec![C::zero(); k.min(order + 1)];
        slices.extend(self.slices[..keep].iter().cloned());
        Series { slices }
    }

    /// Exact division by `xᵏ`: the `k` lowest slices must vanish. The order
    /// drops by `k`.
    pub fn shift_down_exact(&self, k: usize) -> Result<Self, SeriesError> {
        for i in 0..k {
            if !self.slices[i].is_zero() {
                return Err(SeriesError::NonvanishingLowOrder { slice: i });
            }
        }
        Ok(Series {
            slices: self.slices[k..].to_vec(),
        })
    }
}

impl BiSeries {
    /// Formal `∂/∂q`, applied `times ∈ {1, 2}` times.
    pub fn d_dq(&self, times: usize) -> BiSeries {
        debug_assert!(times == 1 || times == 2);
        let mut out = self.clone();
        for _ in 0..times {
            out = Series {
                slices: out.slices.iter().map(QPoly::derivative).collect(),
            };
        }
        out
    }

    /// Substitute `q = 1`: the sequence `[x⁰] … [xᴺ]` of rationals.
    pub fn eval_q1(&self) -> Vec<Rat> {
        self.slices.iter().map(QPoly::eval_one).collect()
    }

    /// The coefficient of `xⁿqᵏ`.
    pub fn coeff(&self, n: usize, k: usize) -> Result<Rat, SeriesError> {
        if n > self.order() {
            return Err(SeriesError::TruncationExceeded {
                n,
                order: self.order(),
            });
        }
        Ok(self.slices[n].coeff(k))
    }

    /// Every combinatorial series must have, for each `n`, a slice that is a
    /// polynomial of `q`-degree ≤ n with nonnegative integer coefficients.
    /// Returns the first offending slice index.
    pub fn check_combinatorial(&self) -> Result<(), usize> {
        for (n, s) in self.slices.iter().enumerate() {
            if s.degree().is_some_and(|d| d > n) || !s.is_nonneg_integer() {
                return Err(n);
            }
        }
        Ok(())
    }

    /// Debug dump: one line per slice, `n: c0 + c1 q + …`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (n, s) in self.slices.iter().enumerate() {
            let _ = writeln!(out, "{n}: {}", s.render());
        }
        out
    }
}

impl JetSeries {
    /// `[xⁿ] F(x, 1)`.
    pub fn value(&self, n: usize) -> &Rat {
        &self.slices[n].val
    }

    /// `[xⁿ] ∂F/∂q |_{q=1}`.
    pub fn d1(&self, n: usize) -> &Rat {
        &self.slices[n].d1
    }

    /// `[xⁿ] ∂²F/∂q² |_{q=1}`.
    pub fn d2(&self, n: usize) -> Rat {
        self.slices[n].second_derivative()
    }
}
