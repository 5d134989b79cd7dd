//! Decimal rendering of exact rationals, and integer-square-root intervals.
//!
//! Decimals are presentation only; every computation upstream stays rational.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::series::Rat;

pub fn pow10(d: usize) -> BigInt {
    BigInt::from(10u32).pow(d as u32)
}

/// Nearest integer, ties away from zero.
fn round_nearest(r: &Rat) -> BigInt {
    if r.is_negative() {
        -round_nearest(&-r)
    } else {
        let num = r.numer() * BigInt::from(2) + r.denom();
        let den = r.denom() * BigInt::from(2);
        num.div_floor(&den)
    }
}

/// `r` to `sig` significant digits, plain decimal notation, trailing zeros
/// after the point trimmed.
pub fn decimal_sig(r: &Rat, sig: usize) -> String {
    debug_assert!(sig >= 1);
    if r.is_zero() {
        return String::from("0");
    }
    let neg = r.is_negative();
    let a = r.abs();
    // decimal exponent: largest e with 10^e ≤ a
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow = |k: i64| -> Rat {
        if k >= 0 {
            Rat::from_integer(pow10(k as usize))
        } else {
            Rat::new(1.into(), pow10((-k) as usize))
        }
    };
    while pow(e) > a {
        e -= 1;
    }
    while pow(e + 1) <= a {
        e += 1;
    }
    let mut digits;
    loop {
        let scaled = &a * pow(sig as i64 - 1 - e);
        digits = round_nearest(&scaled).to_string();
        if digits.len() == sig {
            break;
        }
        // rounding carried into an extra digit (e.g. 0.999 → 1.00)
        debug_assert_eq!(digits.len(), sig + 1);
        e += 1;
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= sig as i64 {
        out.push_str(&digits);
        for _ in 0..(e + 1 - sig as i64) {
            out.push('0');
        }
    } else if e >= 0 {
        let point = (e + 1) as usize;
        out.push_str(&digits[..point]);
        let frac = digits[point..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(digits.trim_end_matches('0'));
    }
    out
}

/// Rational interval `(lo, hi)` with `lo ≤ √r < hi` and `hi − lo = 10^{−digits}`.
pub fn sqrt_interval(r: &Rat, digits: usize) -> (Rat, Rat) {
    debug_assert!(!r.is_negative());
    let scale = pow10(digits);
    let t = (r.numer() * &scale * &scale).div_floor(r.denom());
    let m = t.sqrt();
    (Rat::new(m.clone(), scale.clone()), Rat::new(m + 1, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, rat_int};

    #[test]
    fn significant_digit_rendering() {
        assert_eq!(decimal_sig(&rat(5, 8), 12), "0.625");
        assert_eq!(decimal_sig(&rat(4, 9), 12), "0.444444444444");
        assert_eq!(decimal_sig(&rat(1, 3), 3), "0.333");
        assert_eq!(decimal_sig(&rat(2, 3), 3), "0.667");
        assert_eq!(decimal_sig(&rat(-7, 64), 4), "-0.1094");
        assert_eq!(decimal_sig(&rat_int(0), 5), "0");
        assert_eq!(decimal_sig(&rat_int(12), 5), "12");
        assert_eq!(decimal_sig(&rat(9_999, 10_000), 3), "1");
        assert_eq!(decimal_sig(&rat_int(123_456), 3), "123000");
        assert_eq!(decimal_sig(&rat(1, 1000), 2), "0.001");
    }

    #[test]
    fn sqrt_intervals() {
        let (lo, hi) = sqrt_interval(&rat_int(2), 15);
        assert!(&lo * &lo <= rat_int(2));
        assert!(&hi * &hi > rat_int(2));
        assert_eq!(&hi - &lo, rat(1, 1_000_000_000_000_000));
        // √5/5 ≈ 0.4472135955
        let (lo5, _) = sqrt_interval(&rat_int(5), 12);
        let v = lo5 / rat_int(5);
        assert_eq!(decimal_sig(&v, 10), "0.4472135955");
    }

    #[test]
    fn rounding_to_nearest() {
        assert_eq!(round_nearest(&rat(5, 10)), BigInt::from(1));
        assert_eq!(round_nearest(&rat(4, 10)), BigInt::from(0));
        assert_eq!(round_nearest(&rat(-5, 10)), BigInt::from(-1));
        assert_eq!(round_nearest(&rat(25, 10)), BigInt::from(3));
    }
}
