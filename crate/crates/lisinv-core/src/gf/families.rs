//! The three parameterized generating-function families: increasing patterns
//! `12⋯k`, the rotated patterns `k12⋯(k−1)`, and decreasing patterns
//! `k(k−1)⋯1` (the latter through both its step-two recurrence and its
//! cleared Chebyshev closed form).
//!
//! Everything is generic over the series coefficient ring, so the same
//! construction serves the exact bivariate checks and the large-order jet
//! runs.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::parse::parse_xq;
use super::GfError;
use crate::series::{rat_int, Coeff, QPoly, Rat, Series, XqPoly};

fn poly(src: &str) -> XqPoly {
    parse_xq(src).expect("static polynomial")
}

fn series<C: Coeff>(src: &str, order: usize) -> Series<C> {
    Series::from_poly(&poly(src), order)
}

/// Binomial with the conventions the Narayana-type sums need:
/// `C(a, 0) = 1` for every `a` (including `a = −1`), zero for `b < 0` or
/// `b > a ≥ 0`.
fn binom(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if b == 0 {
        return BigInt::one();
    }
    debug_assert!(a >= 0, "only C(-1, 0) is used with a negative top");
    if b > a {
        return BigInt::zero();
    }
    let mut res = BigInt::one();
    for t in 1..=b {
        res *= a - b + t;
        res = res.div_exact(&BigInt::from(t));
    }
    res
}

trait DivExact {
    fn div_exact(&self, d: &BigInt) -> BigInt;
}

impl DivExact for BigInt {
    fn div_exact(&self, d: &BigInt) -> BigInt {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }
}

/// `(1/i)·C(j−1, i−1)·C(j, i−1)`, always an integer.
fn narayana_coefficient(i: u32, j: u32) -> BigInt {
    let prod = binom(j as i64 - 1, i as i64 - 1) * binom(j as i64, i as i64 - 1);
    prod.div_exact(&BigInt::from(i))
}

/// One term of the double sums:
/// `c · x^{2i+j−1} q^{j+1} / ((1−x)^{2j+1} (1+x)^j)`.
fn narayana_term<C: Coeff>(i: u32, j: u32, order: usize) -> Result<Series<C>, GfError> {
    let c = narayana_coefficient(i, j);
    if c.is_zero() {
        return Ok(Series::zero(order));
    }
    let num = XqPoly::monomial(
        (2 * i + j - 1) as usize,
        (j + 1) as usize,
        Rat::from_integer(c),
    );
    let den = poly("1-x")
        .pow(2 * j as usize + 1)
        .mul(&poly("1+x").pow(j as usize));
    Ok(Series::from_poly(&num, order).div(&Series::from_poly(&den, order))?)
}

/// `H_{12⋯k}` for k = 0..=k_max via the family recurrence; the whole family
/// is built bottom-up so each member is computed once.
pub fn f_k_all<C: Coeff>(k_max: u32, order: usize) -> Result<Vec<Series<C>>, GfError> {
    let mut fs: Vec<Series<C>> = Vec::with_capacity(k_max as usize + 1);
    fs.push(Series::zero(order)); // F_0 = 0
    if k_max == 0 {
        return Ok(fs);
    }
    fs.push(Series::one(order)); // F_1 = 1
    let xq_over_1mx = series::<C>("q*x", order).div(&series("1-x", order))?;
    let x2 = series::<C>("x^2", order);
    let one_minus_x2 = series::<C>("1-x^2", order);
    for k in 2..=k_max as usize {
        if k == 2 {
            let f2 = Series::one(order).add(&xq_over_1mx);
            fs.push(f2);
            continue;
        }
        // F_k = 1 + xq/(1−x)·F_{k−1} + x²·Σ_{i=3}^{k}(F_i − F_{i−1})·F_{k−i+1};
        // the i = k summand contains F_k itself (with F_1 = 1), so solve:
        // F_k·(1 − x²) = 1 + xq/(1−x)·F_{k−1} − x²·F_{k−1}
        //               + x²·Σ_{i=3}^{k−1}(F_i − F_{i−1})·F_{k−i+1}
        let mut rhs = Series::one(order)
            .add(&xq_over_1mx.mul(&fs[k - 1]))
            .sub(&x2.mul(&fs[k - 1]));
        for i in 3..k {
            let diff = fs[i].sub(&fs[i - 1]);
            rhs = rhs.add(&x2.mul(&diff.mul(&fs[k - i + 1])));
        }
        fs.push(rhs.div(&one_minus_x2)?);
    }
    Ok(fs)
}

/// `H_{12⋯k}` via the recurrence.
pub fn f_k_recurrence<C: Coeff>(k: u32, order: usize) -> Result<Series<C>, GfError> {
    if k < 1 {
        return Err(GfError::BadParameter {
            what: "f_k requires k >= 1",
            k,
        });
    }
    Ok(f_k_all(k, order)?.pop().expect("nonempty"))
}

/// `H_{12⋯k}` via the explicit Narayana double sum, k ≥ 2:
/// `1 + Σ_{j=0}^{k−2} Σ_{i=1}^{j+1} term(i, j)`.
pub fn f_k_narayana<C: Coeff>(k: u32, order: usize) -> Result<Series<C>, GfError> {
    if k < 2 {
        return Err(GfError::BadParameter {
            what: "f_k_narayana requires k >= 2",
            k,
        });
    }
    let mut acc = Series::one(order);
    for j in 0..=k - 2 {
        for i in 1..=j + 1 {
            acc = acc.add(&narayana_term(i, j, order)?);
        }
    }
    Ok(acc)
}

/// `H_{k12⋯(k−1)}` for k ≥ 3:
/// `1 / (1 − xq/(1−x) − x²·Σ_{j=1}^{k−3} Σ_{i=1}^{j+1} term(i, j))`.
pub fn g_k<C: Coeff>(k: u32, order: usize) -> Result<Series<C>, GfError> {
    if k < 3 {
        return Err(GfError::BadParameter {
            what: "g_k requires k >= 3",
            k,
        });
    }
    let mut den = Series::one(order).sub(&series::<C>("q*x", order).div(&series("1-x", order))?);
    if k >= 4 {
        let x2 = series::<C>("x^2", order);
        let mut inner = Series::zero(order);
        for j in 1..=k - 3 {
            for i in 1..=j + 1 {
                inner = inner.add(&narayana_term(i, j, order)?);
            }
        }
        den = den.sub(&x2.mul(&inner));
    }
    Ok(Series::one(order).div(&den)?)
}

/// `H_{k(k−1)⋯1}` via the step-two recurrence
/// `F_k = 1/(1 − qx − (q−1)x² − x²·F_{k−2})`, `F_1 = 1`, `F_2 = 1/(1−qx)`.
pub fn dec_k<C: Coeff>(k: u32, order: usize) -> Result<Series<C>, GfError> {
    if k < 1 {
        return Err(GfError::BadParameter {
            what: "dec_k requires k >= 1",
            k,
        });
    }
    let mut f = if k % 2 == 1 {
        Series::one(order)
    } else {
        Series::one(order).div(&series::<C>("1-q*x", order))?
    };
    let base = series::<C>("1-q*x-(q-1)*x^2", order);
    let x2 = series::<C>("x^2", order);
    let mut m = if k % 2 == 1 { 1 } else { 2 };
    while m < k {
        m += 2;
        f = Series::one(order).div(&base.sub(&x2.mul(&f)))?;
    }
    Ok(f)
}

/// `H_{k(k−1)⋯1}` via the cleared Chebyshev closed forms, k ≥ 3.
///
/// With `w = 1 − qx − (q−1)x²` and `U_j` the degree-j Chebyshev polynomials of
/// the second kind at the Laurent argument `w/(2x)`, the cleared polynomials
/// `P_j = xʲ·U_j(w/(2x))` satisfy `P_j = w·P_{j−1} − x²·P_{j−2}` with
/// `P_{−1} = 0`, `P_0 = 1`, so no negative power of `x` is ever formed. The
/// closed forms collapse to
/// `H_{2m+1 ⋯ 1} = (P_{m−1} − x²P_{m−2}) / (P_m − x²P_{m−1})` and
/// `H_{2m+2 ⋯ 1} = ((1−xq)P_{m−1} − x²P_{m−2}) / ((1−xq)P_m − x²P_{m−1})`
/// after the common `x`-shift cancels.
pub fn dec_k_chebyshev<C: Coeff>(k: u32, order: usize) -> Result<Series<C>, GfError> {
    if k < 3 {
        return Err(GfError::BadParameter {
            what: "dec_k_chebyshev requires k >= 3",
            k,
        });
    }
    let w = poly("1-q*x-(q-1)*x^2");
    let x2 = poly("x^2");
    let m = ((k as usize) - 1) / 2;
    // P_{m−2}, P_{m−1}, P_m (P_{−1} = 0, P_0 = 1)
    let mut p_prev = XqPoly::zero(); // P_{j−1}
    let mut p_cur = XqPoly::one(); // P_j, starting at j = 0
    let mut trail = XqPoly::zero(); // P_{j−2}
    for _ in 0..m {
        let next = w.mul(&p_cur).sub(&x2.mul(&p_prev));
        trail = p_prev;
        p_prev = p_cur;
        p_cur = next;
    }
    let (num, den) = if k % 2 == 1 {
        (p_prev.sub(&x2.mul(&trail)), p_cur.sub(&x2.mul(&p_prev)))
    } else {
        let u = poly("1-x*q");
        (
            u.mul(&p_prev).sub(&x2.mul(&trail)),
            u.mul(&p_cur).sub(&x2.mul(&p_prev)),
        )
    };
    if den.slice(0) != QPoly::one() {
        return Err(GfError::ConstructionIntegrity(
            "cleared Chebyshev denominator lost its unit constant term",
        ));
    }
    Ok(Series::from_poly(&num, order).div(&Series::from_poly(&den, order))?)
}

/// `k − 1` as a rational, the limit of `E` for the `12⋯k` classes.
pub fn f_k_limit(k: u32) -> Rat {
    rat_int(k as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::BiSeries;

    #[test]
    fn binomial_conventions() {
        assert_eq!(binom(-1, 0), BigInt::one());
        assert_eq!(binom(3, 0), BigInt::one());
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(5, 2), BigInt::from(10));
    }

    #[test]
    fn narayana_values() {
        // j = 0 only admits i = 1 with coefficient 1 (the xq/(1−x) term)
        assert_eq!(narayana_coefficient(1, 0), BigInt::one());
        // j = 1: i=1 → C(0,0)C(1,0) = 1; i=2 → (1/2)C(0,1)C(1,1) = 0
        assert_eq!(narayana_coefficient(1, 1), BigInt::one());
        assert_eq!(narayana_coefficient(2, 1), BigInt::zero());
        // j = 3, i = 2: (1/2)C(2,1)C(3,1) = 3
        assert_eq!(narayana_coefficient(2, 3), BigInt::from(3));
    }

    #[test]
    fn narayana_j0_term_is_xq_over_one_minus_x() {
        let t: BiSeries = narayana_term(1, 0, 8).unwrap();
        let want: BiSeries = series::<QPoly>("q*x", 8).div(&series("1-x", 8)).unwrap();
        assert_eq!(t, want);
    }

    #[test]
    fn fk_base_cases() {
        let f1: BiSeries = f_k_recurrence(1, 8).unwrap();
        assert_eq!(f1, BiSeries::one(8));
        // F_2 = 1 + xq/(1−x): slices q for n ≥ 1
        let f2: BiSeries = f_k_recurrence(2, 8).unwrap();
        assert_eq!(*f2.slice(0), QPoly::one());
        for n in 1..=8 {
            assert_eq!(*f2.slice(n), QPoly::from_int_coeffs(&[0, 1]));
        }
        assert!(f_k_recurrence::<QPoly>(0, 4).is_err());
    }

    #[test]
    fn fk_q_degree_capped_by_k() {
        // avoiding 12⋯k forces lis < k
        for k in 2..=5u32 {
            let f: BiSeries = f_k_recurrence(k, 12).unwrap();
            for n in 0..=12 {
                for j in k as usize..=n.max(k as usize) {
                    assert_eq!(f.coeff(n, j).unwrap(), Rat::zero(), "k={k} n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn dec_small_cases_match_closed_forms() {
        // dec_1 = 1; dec_2 = 1/(1−qx); dec_3 = 1/(1−qx−qx²)
        let d1: BiSeries = dec_k(1, 8).unwrap();
        assert_eq!(d1, BiSeries::one(8));
        let d2: BiSeries = dec_k(2, 8).unwrap();
        assert_eq!(d2, Series::one(8).div(&series("1-q*x", 8)).unwrap());
        let d3: BiSeries = dec_k(3, 8).unwrap();
        assert_eq!(d3, Series::one(8).div(&series("1-q*x-q*x^2", 8)).unwrap());
    }

    #[test]
    fn chebyshev_matches_recurrence_smoke() {
        for k in 3..=6u32 {
            let a: BiSeries = dec_k(k, 16).unwrap();
            let b: BiSeries = dec_k_chebyshev(k, 16).unwrap();
            assert_eq!(a, b, "k = {k}");
        }
    }

    #[test]
    fn g3_is_one_over_one_minus_xq_over_1mx() {
        let g: BiSeries = g_k(3, 10).unwrap();
        let den = series::<QPoly>("1-x-q*x", 10);
        let want = series::<QPoly>("1-x", 10).div(&den).unwrap();
        assert_eq!(g, want);
        assert!(g_k::<QPoly>(2, 4).is_err());
    }
}
