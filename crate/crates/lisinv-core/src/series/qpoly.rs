//! Dense polynomials in the LIS marker `q` over exact rationals, and the
//! bivariate polynomials in `x, q` the catalog formulas are written in.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::{Coeff, Rat};

/// A polynomial in `q`, coefficients ascending, trailing zeros trimmed.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        QPoly::new(alloc::vec![r])
    }

    /// `c·qᵏ`.
    pub fn monomial(k: usize, c: Rat) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = alloc::vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    pub fn from_int_coeffs(ints: &[i64]) -> Self {
        QPoly::new(ints.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval_one(&self) -> Rat {
        let mut s = Rat::zero();
        for c in &self.coeffs {
            s += c;
        }
        s
    }

    /// Formal d/dq.
    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from_integer((i as i64 + 1).into()))
                .collect(),
        )
    }

    /// All coefficients nonnegative integers (every combinatorial slice must
    /// satisfy this).
    pub fn is_nonneg_integer(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Render as `c0 + c1 q + c2 q^2 + …` with rationals as `p/q`.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                out.push_str(" + ");
            }
            first = false;
            let _ = match k {
                0 => write!(out, "{}", render_rat(c)),
                1 => write!(out, "{} q", render_rat(c)),
                _ => write!(out, "{} q^{k}", render_rat(c)),
            };
        }
        if first {
            out.push('0');
        }
        out
    }
}

/// `p` when the denominator is 1, `p/q` otherwise.
pub fn render_rat(r: &Rat) -> String {
    if r.is_integer() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Coeff for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }

    fn one() -> Self {
        QPoly::one()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        QPoly::new(out)
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        QPoly::new(out)
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || Coeff::is_zero(rhs) {
            return QPoly::zero();
        }
        let mut out = alloc::vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Invertible only for nonzero constants; the coefficient ring is a
    /// polynomial ring, not a field.
    fn inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 && !self.coeffs[0].is_zero() {
            Some(QPoly::constant(Rat::one() / &self.coeffs[0]))
        } else {
            None
        }
    }

    fn from_rat(r: &Rat) -> Self {
        QPoly::new(alloc::vec![r.clone()])
    }

    fn from_q_poly(p: &QPoly) -> Self {
        p.clone()
    }
}

/// A polynomial in `x` whose coefficients are polynomials in `q` — the exact
/// form every closed-form numerator/denominator in the catalog takes.
#[derive(Clone, PartialEq, Debug)]
pub struct XqPoly {
    slices: Vec<QPoly>,
}

impl XqPoly {
    pub fn new(mut slices: Vec<QPoly>) -> Self {
        while slices.last().is_some_and(Coeff::is_zero) {
            slices.pop();
        }
        XqPoly { slices }
    }

    pub fn zero() -> Self {
        XqPoly { slices: Vec::new() }
    }

    pub fn one() -> Self {
        XqPoly {
            slices: alloc::vec![QPoly::one()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        XqPoly::new(alloc::vec![QPoly::constant(c)])
    }

    /// `c·xⁱqʲ`.
    pub fn monomial(i: usize, j: usize, c: Rat) -> Self {
        if c.is_zero() {
            return XqPoly::zero();
        }
        let mut slices = alloc::vec![QPoly::zero(); i + 1];
        slices[i] = QPoly::monomial(j, c);
        XqPoly { slices }
    }

    pub fn x() -> Self {
        XqPoly::monomial(1, 0, Rat::one())
    }

    pub fn q() -> Self {
        XqPoly::monomial(0, 1, Rat::one())
    }

    pub fn slices(&self) -> &[QPoly] {
        &self.slices
    }

    pub fn slice(&self, i: usize) -> QPoly {
        self.slices.get(i).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn add(&self, rhs: &XqPoly) -> XqPoly {
        let n = self.slices.len().max(rhs.slices.len());
        XqPoly::new(
            (0..n)
                .map(|i| Coeff::add(&self.slice(i), &rhs.slice(i)))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &XqPoly) -> XqPoly {
        let n = self.slices.len().max(rhs.slices.len());
        XqPoly::new(
            (0..n)
                .map(|i| Coeff::sub(&self.slice(i), &rhs.slice(i)))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &XqPoly) -> XqPoly {
        if self.slices.is_empty() || rhs.slices.is_empty() {
            return XqPoly::zero();
        }
        let mut out = alloc::vec![QPoly::zero(); self.slices.len() + rhs.slices.len() - 1];
        for (i, a) in self.slices.iter().enumerate() {
            if Coeff::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.slices.iter().enumerate() {
                out[i + j] = Coeff::add(&out[i + j], &Coeff::mul(a, b));
            }
        }
        XqPoly::new(out)
    }

    pub fn neg(&self) -> XqPoly {
        XqPoly {
            slices: self.slices.iter().map(Coeff::neg).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> XqPoly {
        let mut out = XqPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}
