//! Real-root isolation for the integer polynomials whose smallest-magnitude
//! roots drive the asymptotic constants.
//!
//! Sturm sequences isolate every real root; bisection refines. Minimality of
//! the chosen root among *all* complex roots is certified without complex
//! arithmetic: when every root is real it is a direct comparison, and when
//! exactly one conjugate pair is missing its squared modulus equals
//! `|a₀/a_d| / Π|real roots|`, which interval arithmetic bounds from below.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::GfError;
use crate::decimal::decimal_sig;
use crate::series::{rat, rat_int, Rat};

/// A real algebraic number: an integer polynomial together with an isolating
/// interval containing exactly one (simple) real root.
#[derive(Clone, Debug)]
pub struct AlgebraicRoot {
    pub polynomial: Vec<BigInt>,
    pub lo: Rat,
    pub hi: Rat,
}

impl AlgebraicRoot {
    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Decimal rendering of the midpoint to `sig` significant digits.
    pub fn decimal(&self, sig: usize) -> String {
        decimal_sig(&self.midpoint(), sig)
    }

    /// Narrow the isolating interval below `eps` by Sturm-guided bisection.
    pub fn refine(&mut self, eps: &Rat) {
        let chain = sturm_chain(&to_rat_poly(&self.polynomial));
        while self.width() > *eps {
            let mid = self.midpoint();
            if count_roots(&chain, &self.lo, &mid) == 1 {
                self.hi = mid;
            } else {
                self.lo = mid;
            }
        }
    }
}

fn to_rat_poly(p: &[BigInt]) -> Vec<Rat> {
    p.iter().map(|c| Rat::from_integer(c.clone())).collect()
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Rat::is_zero) {
        p.pop();
    }
    p
}

fn eval(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return Vec::new();
    }
    p[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c * rat_int(i as i64 + 1))
        .collect()
}

/// Remainder of polynomial division over the rationals.
fn poly_rem(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    while r.len() > dd {
        let k = r.len() - 1;
        let factor = r[k].clone() / lead;
        let shift = k - dd;
        for (i, d) in den.iter().enumerate() {
            let t = &factor * d;
            r[shift + i] -= t;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn sturm_chain(p: &[Rat]) -> Vec<Vec<Rat>> {
    let mut chain = alloc::vec![trim(p.to_vec())];
    let d = derivative(&chain[0]);
    if !d.is_empty() {
        chain.push(d);
    }
    while chain.last().is_some_and(|l| l.len() > 1) {
        let k = chain.len();
        let rem = poly_rem(&chain[k - 2], &chain[k - 1]);
        if rem.is_empty() {
            break;
        }
        chain.push(rem.iter().map(|c| -c).collect());
    }
    chain
}

fn sign_variations(chain: &[Vec<Rat>], x: &Rat) -> usize {
    let mut vars = 0;
    let mut last = 0i8;
    for p in chain {
        let v = eval(p, x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                vars += 1;
            }
            last = s;
        }
    }
    vars
}

/// Number of distinct real roots in the half-open interval `(lo, hi]`.
fn count_roots(chain: &[Vec<Rat>], lo: &Rat, hi: &Rat) -> usize {
    sign_variations(chain, lo) - sign_variations(chain, hi)
}

/// All real roots as isolating intervals of width below `eps`,
/// ascending order.
fn isolate_real_roots(p: &[Rat], eps: &Rat) -> Result<Vec<AlgebraicRoot>, GfError> {
    let chain = sturm_chain(p);
    // the chain ends in a constant for square-free polynomials
    if chain.last().is_some_and(|l| l.len() > 1) {
        return Err(GfError::RootConfiguration(String::from(
            "polynomial is not square-free",
        )));
    }
    // Cauchy bound: all roots lie in (-b, b)
    let lead = p.last().expect("nonempty");
    let max_ratio = p[..p.len() - 1]
        .iter()
        .map(|c| (c / lead).abs())
        .fold(Rat::zero(), |a, b| if b > a { b } else { a });
    let bound = max_ratio + rat_int(1);
    let mut intervals = alloc::vec![(-&bound, bound.clone())];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = intervals.pop() {
        match count_roots(&chain, &lo, &hi) {
            0 => {}
            1 => isolated.push(AlgebraicRoot {
                polynomial: Vec::new(),
                lo,
                hi,
            }),
            _ => {
                let mid = (&lo + &hi) / rat_int(2);
                intervals.push((lo, mid.clone()));
                intervals.push((mid, hi));
            }
        }
    }
    for r in &mut isolated {
        while r.width() > *eps {
            let mid = r.midpoint();
            if count_roots(&chain, &r.lo, &mid) == 1 {
                r.hi = mid;
            } else {
                r.lo = mid;
            }
        }
    }
    isolated.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(isolated)
}

/// Interval bound for `|root|`: `(min, max)` of absolute values over the
/// isolating interval.
fn abs_bounds(r: &AlgebraicRoot) -> (Rat, Rat) {
    let (alo, ahi) = (r.lo.abs(), r.hi.abs());
    if !r.lo.is_negative() || !r.hi.is_positive() {
        // interval does not straddle zero
        (alo.clone().min(ahi.clone()), alo.max(ahi))
    } else {
        (Rat::zero(), alo.max(ahi))
    }
}

/// The real root of smallest absolute value among *all* complex roots of an
/// integer polynomial, isolated by bisection to `1e-12`.
///
/// Errors if minimality cannot be certified (more than one conjugate pair
/// missing) or if the smallest-magnitude root is not real.
pub fn smallest_root(poly: &[BigInt]) -> Result<AlgebraicRoot, GfError> {
    let p = trim(to_rat_poly(poly));
    if p.len() < 2 {
        return Err(GfError::RootConfiguration(String::from(
            "polynomial must be nonconstant",
        )));
    }
    if p[0].is_zero() {
        return Err(GfError::RootConfiguration(String::from(
            "zero constant term (0 is a root; not supported)",
        )));
    }
    let degree = p.len() - 1;
    let eps = rat(1, 1_000_000_000_000);
    let mut reals = isolate_real_roots(&p, &eps)?;
    if reals.is_empty() {
        return Err(GfError::RootConfiguration(String::from("no real roots")));
    }
    // Refine until the absolute-value ordering of real roots is unambiguous.
    let tight = &eps * rat(1, 10_000);
    for r in &mut reals {
        let chain = sturm_chain(&p);
        while r.width() > tight {
            let mid = r.midpoint();
            if count_roots(&chain, &r.lo, &mid) == 1 {
                r.hi = mid;
            } else {
                r.lo = mid;
            }
        }
    }
    let (mut best_idx, mut best_bounds) = (0usize, abs_bounds(&reals[0]));
    for (i, r) in reals.iter().enumerate().skip(1) {
        let b = abs_bounds(r);
        if b.1 < best_bounds.0 {
            best_idx = i;
            best_bounds = b;
        } else if b.0 > best_bounds.1 {
            // keep current
        } else {
            return Err(GfError::RootConfiguration(String::from(
                "real roots too close in magnitude to order",
            )));
        }
    }
    // Certify the real minimum also beats any complex roots.
    let missing = degree - reals.len();
    match missing {
        0 => {}
        2 => {
            // |pair|² = |a₀/a_d| / Π |real roots|
            let const_ratio = (&p[0] / p.last().unwrap()).abs();
            let mut prod_hi = Rat::one();
            for r in &reals {
                let (_, hi) = abs_bounds(r);
                prod_hi *= hi;
            }
            let pair_sq_lower = const_ratio / prod_hi;
            let best_hi = &best_bounds.1;
            if pair_sq_lower <= best_hi * best_hi {
                return Err(GfError::RootConfiguration(String::from(
                    "cannot certify the complex pair is larger in magnitude",
                )));
            }
        }
        _ => {
            return Err(GfError::RootConfiguration(String::from(
                "more than one complex pair; not supported",
            )));
        }
    }
    let chosen = reals.swap_remove(best_idx);
    Ok(AlgebraicRoot {
        polynomial: poly.to_vec(),
        lo: chosen.lo,
        hi: chosen.hi,
    })
}

/// Exact rational interval enclosing an asymptotic-constant expression.
#[derive(Clone, Debug)]
pub struct ConstInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl ConstInterval {
    pub fn exact(v: Rat) -> Self {
        ConstInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn decimal(&self, sig: usize) -> String {
        decimal_sig(&self.midpoint(), sig)
    }

    /// Relative deviation of `v` from this constant, using the midpoint.
    pub fn relative_error(&self, v: &Rat) -> Rat {
        let mid = self.midpoint();
        ((v - &mid) / &mid).abs()
    }

    /// Evaluate a signed-coefficient polynomial over a positive interval.
    pub fn eval_poly(&self, coeffs: &[BigInt], den: &BigInt) -> ConstInterval {
        debug_assert!(self.lo.is_positive());
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        let mut pow_lo = Rat::one();
        let mut pow_hi = Rat::one();
        for c in coeffs {
            let c = Rat::from_integer(c.clone());
            if c.is_positive() {
                lo += &c * &pow_lo;
                hi += &c * &pow_hi;
            } else {
                lo += &c * &pow_hi;
                hi += &c * &pow_lo;
            }
            pow_lo *= &self.lo;
            pow_hi *= &self.hi;
        }
        let d = Rat::from_integer(den.clone());
        debug_assert!(d.is_positive());
        ConstInterval {
            lo: lo / &d,
            hi: hi / &d,
        }
    }
}
