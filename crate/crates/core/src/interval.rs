//! Rational intervals with outward rounding.
//!
//! Every irrational quantity in the crate is reduced to exact coefficient
//! data; intervals only enter as *sound enclosures* used to decide signs and
//! to print decimal renditions. All endpoints are exact rationals, so no
//! floating-point rounding can leak into a verdict.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        RatInterval::point(BigRational::zero())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> Self {
        RatInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// Scale by an exact rational; swaps endpoints for negative factors.
    pub fn scale(&self, c: &BigRational) -> Self {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if c.is_negative() {
            RatInterval { lo: b, hi: a }
        } else {
            RatInterval { lo: a, hi: b }
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Some(sign)` when the interval excludes zero, `None` otherwise.
    pub fn definite_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }
}

/// Floor of the integer square root. Input must be nonnegative.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer");
    n.sqrt()
}

/// Sound enclosure of `sqrt(x)` for a nonnegative rational `x`.
///
/// Endpoints are dyadic multiples of `1/denominator`; the enclosure width is
/// below `2^-bits` once `x` is moderate, and always shrinks as `bits` grows.
pub fn sqrt_bounds(x: &BigRational, bits: u32) -> RatInterval {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return RatInterval::zero();
    }
    // sqrt(p/q) = sqrt(p*q)/q; bound sqrt(p*q) by scaled integer roots.
    let p = x.numer();
    let q = x.denom();
    let pq = p * q;
    let scale = BigInt::one() << (2 * bits as usize);
    let root = isqrt(&(&pq * &scale));
    let denom = q * (BigInt::one() << bits as usize);
    let lo = BigRational::new(root.clone(), denom.clone());
    let hi = BigRational::new(root + BigInt::one(), denom);
    RatInterval::new(lo, hi)
}

/// A rational `r` with `r <= sqrt(x)`.
pub fn sqrt_lower(x: &BigRational, bits: u32) -> BigRational {
    sqrt_bounds(x, bits).lo
}

/// A rational `r` with `r >= sqrt(x)`.
pub fn sqrt_upper(x: &BigRational, bits: u32) -> BigRational {
    sqrt_bounds(x, bits).hi
}

/// Largest multiple of `10^-digits` not exceeding `x`, as a decimal string.
pub fn decimal_floor(x: &BigRational, digits: u32) -> String {
    decimal_round(x, digits, false)
}

/// Smallest multiple of `10^-digits` not below `x`, as a decimal string.
pub fn decimal_ceil(x: &BigRational, digits: u32) -> String {
    decimal_round(x, digits, true)
}

fn decimal_round(x: &BigRational, digits: u32, round_up: bool) -> String {
    let pow = BigInt::from(10u32).pow(digits);
    let scaled = x * BigRational::from_integer(pow);
    let n = if round_up {
        scaled.ceil().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    let negative = n.is_negative();
    let digits10 = n.abs().to_string();
    let d = digits as usize;
    let (int_part, frac_part) = if digits10.len() > d {
        let split = digits10.len() - d;
        (digits10[..split].to_string(), digits10[split..].to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", digits10, width = d))
    };
    let sign = if negative { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Outward decimal rendition of an interval, `digits` places after the point.
pub fn decimal_interval(iv: &RatInterval, digits: u32) -> (String, String) {
    (decimal_floor(&iv.lo, digits), decimal_ceil(&iv.hi, digits))
}

/// Parse a rational from `"p/q"` or `"p"` decimal-integer notation.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

/// Render a rational as `"p/q"` (or `"p"` for integers).
pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `gcd` helper for plain machine integers.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_bounds_enclose_sqrt2() {
        let iv = sqrt_bounds(&rat(2, 1), 30);
        // 1.41421356... of width < 2^-20
        assert!(iv.lo < BigRational::from_f64(1.414213563).unwrap());
        assert!(iv.hi > BigRational::from_f64(1.414213562).unwrap());
        assert!(iv.width() < rat(1, 1 << 20));
        // lo^2 <= 2 <= hi^2
        assert!(&iv.lo * &iv.lo <= rat(2, 1));
        assert!(&iv.hi * &iv.hi >= rat(2, 1));
    }

    #[test]
    fn sqrt_of_exact_square_is_tightish() {
        let iv = sqrt_bounds(&rat(49, 4), 20);
        assert!(iv.lo <= rat(7, 2) && rat(7, 2) <= iv.hi);
        assert!(iv.width() <= rat(1, 1 << 20));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_floor(&rat(1, 3), 4), "0.3333");
        assert_eq!(decimal_ceil(&rat(1, 3), 4), "0.3334");
        assert_eq!(decimal_floor(&rat(-1, 3), 4), "-0.3334");
        assert_eq!(decimal_ceil(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(decimal_floor(&rat(1234, 1), 2), "1234.00");
        assert_eq!(decimal_floor(&rat(0, 1), 3), "0.000");
    }

    #[test]
    fn parse_and_render_rationals() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational("-7"), Some(rat(-7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(rational_string(&rat(3, 4)), "3/4");
        assert_eq!(rational_string(&rat(-8, 2)), "-4");
    }

    #[test]
    fn interval_sign_logic() {
        assert_eq!(RatInterval::new(rat(1, 5), rat(2, 5)).definite_sign(), Some(1));
        assert_eq!(RatInterval::new(rat(-2, 5), rat(-1, 5)).definite_sign(), Some(-1));
        assert_eq!(RatInterval::new(rat(-1, 5), rat(1, 5)).definite_sign(), None);
        assert!(RatInterval::zero().contains_zero());
    }
}
