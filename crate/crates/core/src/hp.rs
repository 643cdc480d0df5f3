//! Binary floating point with a caller-chosen mantissa width, plus an
//! error-carrying wrapper.
//!
//! `BigFloat` stores `mant * 2^exp` with a `BigInt` mantissa. Rounding is
//! truncation toward zero, so a rounded result `y` of an exact `x` satisfies
//! `|x - y| < |x| * 2^(1 - prec)`. `exp` and `ln` run in fixed point with
//! guard bits sized to the argument reduction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Guard bits added to every transcendental evaluation.
const GUARD_BITS: u32 = 32;
/// Halvings of the reduced argument before the `exp` Taylor series.
const EXP_HALVINGS: u32 = 12;

pub(crate) fn ratio_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidParameter(format!("non-finite value {x}")))
}

fn bit_len(x: &BigInt) -> u64 {
    x.magnitude().bits()
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({})", self.to_sci_string(20))
    }
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        BigFloat { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(i: impl Into<BigInt>) -> Self {
        BigFloat { mant: i.into(), exp: 0 }.normalized()
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Result<Self> {
        let r = ratio_from_f64(x)?;
        // Denominator of a finite f64 is a power of two.
        let shift = r.denom().bits() as i64 - 1;
        Ok(BigFloat { mant: r.numer().clone(), exp: -shift }.normalized())
    }

    /// Rational to `prec` bits, truncated toward zero.
    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let n = r.numer();
        let d = r.denom();
        let shift = i64::from(prec) + 2 + bit_len(d) as i64 - bit_len(n) as i64;
        let q = if shift >= 0 {
            (n << shift as u64) / d
        } else {
            n / (d << (-shift) as u64)
        };
        BigFloat { mant: q, exp: -shift }.rounded(prec)
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    /// Truncates the mantissa to `prec` significant bits.
    pub fn rounded(mut self, prec: u32) -> Self {
        let bits = bit_len(&self.mant);
        if bits > u64::from(prec) {
            let drop = bits - u64::from(prec);
            // Shift the magnitude so truncation is toward zero for both signs.
            let sign = self.mant.sign();
            let mag = self.mant.magnitude() >> drop;
            self.mant = BigInt::from_biguint(sign, mag);
            self.exp += drop as i64;
        }
        self.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp }
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        (!self.is_zero()).then(|| bit_len(&self.mant) as i64 - 1 + self.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        BigFloat { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn mul(&self, other: &BigFloat, prec: u32) -> Self {
        BigFloat { mant: &self.mant * &other.mant, exp: self.exp + other.exp }.rounded(prec)
    }

    pub fn mul_ratio(&self, r: &BigRational, prec: u32) -> Self {
        let num = BigFloat { mant: &self.mant * r.numer(), exp: self.exp };
        num.div(&BigFloat::from_int(r.denom().clone()), prec)
    }

    pub fn div(&self, other: &BigFloat, prec: u32) -> Self {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let shift = i64::from(prec) + 2 + bit_len(&other.mant) as i64 - bit_len(&self.mant) as i64;
        let shift = shift.max(0) as u64;
        let q = (&self.mant << shift) / &other.mant;
        BigFloat { mant: q, exp: self.exp - other.exp - shift as i64 }.rounded(prec)
    }

    pub fn add(&self, other: &BigFloat, prec: u32) -> Self {
        if other.is_zero() {
            return self.clone().rounded(prec);
        }
        if self.is_zero() {
            return other.clone().rounded(prec);
        }
        let (ta, tb) = (self.log2_floor().unwrap(), other.log2_floor().unwrap());
        let margin = i64::from(prec) + 64;
        // An operand below the other's last kept bit only perturbs the truncation.
        if ta - tb > margin {
            return self.clone().rounded(prec);
        }
        if tb - ta > margin {
            return other.clone().rounded(prec);
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &other.mant << (other.exp - exp) as u64;
        BigFloat { mant: a + b, exp }.rounded(prec)
    }

    pub fn sub(&self, other: &BigFloat, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    /// Exact comparison.
    pub fn cmp_value(&self, other: &BigFloat) -> Ordering {
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &other.mant << (other.exp - exp) as u64;
        a.cmp(&b)
    }

    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    /// Nearest-ish `f64`; saturates to infinity or zero outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = bit_len(&self.mant) as i64;
        let shift = (bits - 64).max(0);
        let m = (&self.mant >> shift as u64).to_f64().unwrap_or(f64::NAN);
        let e = self.exp + shift;
        if e > 2100 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0 * m.signum();
        }
        let half = (e / 2) as i32;
        m * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }

    /// `ln |x|` as an `f64`, valid far outside the `f64` range of `x` itself.
    pub fn ln_abs_f64(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = bit_len(&self.mant) as i64;
        let shift = bits - 60;
        let m = if shift >= 0 {
            (self.mant.abs() >> shift as u64).to_f64().unwrap()
        } else {
            (self.mant.abs() << (-shift) as u64).to_f64().unwrap()
        };
        m.ln() + (self.exp + shift) as f64 * std::f64::consts::LN_2
    }

    /// `ln 2` to `prec` bits via `2 atanh(1/3)`.
    pub fn ln2(prec: u32) -> Self {
        let frac = u64::from(prec + GUARD_BITS);
        let one = pow2(frac);
        let mut power = &one / 3u32;
        let mut sum = BigInt::zero();
        let mut k: u32 = 0;
        while !power.is_zero() {
            sum += &power / (2 * k + 1);
            power /= 9u32;
            k += 1;
        }
        BigFloat { mant: sum << 1u32, exp: -(frac as i64) }.rounded(prec)
    }

    /// `e^x` to relative accuracy `2^(4 - prec)`.
    pub fn exp(&self, prec: u32) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::one());
        }
        let approx = self.to_f64();
        if !approx.is_finite() || approx.abs() > 1e15 {
            return Err(Error::InvalidParameter(format!("exp argument out of range: {approx:e}")));
        }
        let n = (approx / std::f64::consts::LN_2).round() as i64;
        let wp = prec + GUARD_BITS + EXP_HALVINGS + 64 - n.unsigned_abs().leading_zeros();
        let reduced = if n == 0 {
            self.clone().rounded(wp)
        } else {
            self.sub(&Self::ln2(wp).mul(&BigFloat::from_int(n), wp), wp)
        };
        // Fixed point with `frac` fraction bits.
        let frac = u64::from(wp + EXP_HALVINGS);
        let one = pow2(frac);
        let shift = frac as i64 + reduced.exp - i64::from(EXP_HALVINGS);
        let r = if shift >= 0 {
            &reduced.mant << shift as u64
        } else {
            &reduced.mant >> (-shift) as u64
        };
        let mut term = one.clone();
        let mut sum = one.clone();
        let mut i: u32 = 1;
        loop {
            term = ((&term * &r) >> frac) / i;
            if term.is_zero() {
                break;
            }
            sum += &term;
            i += 1;
        }
        for _ in 0..EXP_HALVINGS {
            sum = (&sum * &sum) >> frac;
        }
        Ok(BigFloat { mant: sum, exp: n - frac as i64 }.rounded(prec))
    }

    /// Natural logarithm of a positive value, absolute accuracy `2^(4 - prec)`
    /// for arguments near one and relative accuracy elsewhere.
    pub fn ln(&self, prec: u32) -> Result<Self> {
        if self.signum() <= 0 {
            return Err(Error::InvalidParameter("logarithm of a nonpositive value".into()));
        }
        let wp = prec + GUARD_BITS;
        let frac = u64::from(wp) + 8;
        let bits = bit_len(&self.mant) as i64;
        // x = m * 2^e with m in [1, 2); fold m into [sqrt(2)/2, sqrt(2)).
        let mut e = self.exp + bits - 1;
        let shift = frac as i64 - (bits - 1);
        let mut m = if shift >= 0 {
            &self.mant << shift as u64
        } else {
            &self.mant >> (-shift) as u64
        };
        let one = pow2(frac);
        let sqrt2 = BigInt::from(6369051672525773u64) << (frac - 52); // ~ sqrt(2) * 2^52
        if m > sqrt2 {
            m >>= 1u32;
            e += 1;
        }
        let z = ((&m - &one) << frac) / (&m + &one);
        let negative = z.is_negative();
        let z = z.abs();
        let z2 = (&z * &z) >> frac;
        let mut term = z;
        let mut sum = BigInt::zero();
        let mut k: u32 = 0;
        while !term.is_zero() {
            sum += &term / (2 * k + 1);
            term = (&term * &z2) >> frac;
            k += 1;
        }
        if negative {
            sum = -sum;
        }
        let ln_m = BigFloat { mant: sum << 1u32, exp: -(frac as i64) };
        let result = if e == 0 {
            ln_m
        } else {
            ln_m.add(&Self::ln2(wp + 64).mul(&BigFloat::from_int(e), wp + 64), wp)
        };
        Ok(result.rounded(prec))
    }

    /// Scientific notation with `digits` significant decimal digits,
    /// e.g. `-3.678794e-1`. Zero prints as `0`.
    pub fn to_sci_string(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let mag = self.mant.abs();
        let mut e10 = (self.ln_abs_f64() / std::f64::consts::LN_10).floor() as i64;
        let lower = BigInt::from(10u32).pow(digits - 1);
        let upper = &lower * 10u32;
        let scaled = |e10: i64| -> BigInt {
            let s = i64::from(digits) - 1 - e10;
            let mut num = mag.clone();
            let mut den = BigInt::one();
            if s >= 0 {
                num *= BigInt::from(10u32).pow(s as u32);
            } else {
                den *= BigInt::from(10u32).pow((-s) as u32);
            }
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= (-self.exp) as u64;
            }
            let (q, r) = num.div_rem(&den);
            if r * 2u32 >= den {
                q + 1u32
            } else {
                q
            }
        };
        let mut n = scaled(e10);
        for _ in 0..4 {
            if n >= upper {
                e10 += 1;
            } else if n < lower {
                e10 -= 1;
            } else {
                break;
            }
            n = scaled(e10);
        }
        let s = n.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if self.signum() < 0 { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(30))
    }
}

/// A `BigFloat` with a rigorous absolute error bound `|true - value| <= 2^err_log2`.
/// `err_log2 = None` marks an exact value.
#[derive(Clone, Debug, PartialEq)]
pub struct Approx {
    pub value: BigFloat,
    pub err_log2: Option<i64>,
}

impl Approx {
    pub fn exact(value: BigFloat) -> Self {
        Approx { value, err_log2: None }
    }

    pub fn zero() -> Self {
        Self::exact(BigFloat::zero())
    }

    /// A value known to relative accuracy `2^-rel_bits`.
    pub fn with_relative_error(value: BigFloat, rel_bits: u32) -> Self {
        let err = value.log2_floor().map(|l| l + 1 - i64::from(rel_bits));
        Approx { value, err_log2: err }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.value.is_zero() && self.err_log2.is_none()
    }

    /// Upper bound on `|true value|`.
    pub fn abs_upper_bound(&self) -> BigFloat {
        let v = self.value.abs();
        match self.err_log2 {
            None => v,
            Some(e) => v.add(&BigFloat::one().mul_pow2(e), u32::MAX),
        }
    }

    pub fn error_bound_f64(&self) -> f64 {
        self.err_log2.map_or(0.0, |e| BigFloat::one().mul_pow2(e).to_f64())
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Independent oracle: `e^q` for rational `q` via an exact partial Taylor sum.
    fn exp_oracle(q: &BigRational, terms: u32) -> BigRational {
        let mut sum = BigRational::zero();
        let mut term = BigRational::one();
        for k in 1..=terms {
            sum += &term;
            term = term * q / BigRational::from_integer(k.into());
        }
        sum
    }

    fn close(a: &BigFloat, b: &BigRational, bits: u32) -> bool {
        let diff = (a.to_ratio() - b).abs();
        let tol = b.abs() / BigRational::from_integer(pow2(u64::from(bits)));
        diff <= tol
    }

    #[test]
    fn exp_against_series() {
        for &(n, d) in &[(-1, 1), (1, 3), (-7, 10), (5, 2), (-64, 1), (1, 1000)] {
            let q = rat(n, d);
            let got = BigFloat::from_ratio(&q, 400).exp(256).unwrap();
            assert!(close(&got, &exp_oracle(&q, 400), 250), "exp({n}/{d})");
        }
        assert_eq!(BigFloat::zero().exp(64).unwrap(), BigFloat::one());
    }

    #[test]
    fn ln_inverts_exp() {
        for &x in &[2i64, 3, 10, 30, 12345] {
            let v = BigFloat::from_int(x);
            let back = v.ln(256).unwrap().exp(256).unwrap();
            assert!(close(&back, &rat(x, 1), 240), "ln({x})");
        }
        let near_one = BigFloat::from_ratio(&rat(1001, 1000), 300);
        let l = near_one.ln(256).unwrap();
        let back = l.exp(256).unwrap();
        assert!(close(&back, &near_one.to_ratio(), 240));
        assert!(BigFloat::zero().ln(64).is_err());
        assert!(BigFloat::from_int(-2).ln(64).is_err());
    }

    #[test]
    fn ln2_digits() {
        let s = BigFloat::ln2(200).to_sci_string(40);
        assert_eq!(s, "6.931471805599453094172321214581765680755e-1");
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(BigFloat::from_int(1).to_sci_string(5), "1.0000e0");
        assert_eq!(BigFloat::from_int(-250).to_sci_string(2), "-2.5e2");
        assert_eq!(BigFloat::from_f64(0.375).unwrap().to_sci_string(3), "3.75e-1");
        assert_eq!(BigFloat::from_int(99999).to_sci_string(2), "1.0e5");
        assert_eq!(BigFloat::from_int(7).to_sci_string(1), "7e0");
        let e_inv = BigFloat::from_int(-1).exp(128).unwrap();
        assert_eq!(e_inv.to_sci_string(12), "3.67879441171e-1");
    }

    #[test]
    fn arithmetic_and_conversions() {
        let a = BigFloat::from_f64(1.5).unwrap();
        let b = BigFloat::from_f64(-0.25).unwrap();
        assert_eq!(a.add(&b, 64).to_f64(), 1.25);
        assert_eq!(a.mul(&b, 64).to_f64(), -0.375);
        assert_eq!(a.div(&b, 64).to_f64(), -6.0);
        assert_eq!(a.cmp_value(&b), Ordering::Greater);
        let third = BigFloat::from_ratio(&rat(1, 3), 100);
        assert!(close(&third, &rat(1, 3), 98));
        let huge = BigFloat::from_int(1).mul_pow2(5000);
        assert_eq!(huge.to_f64(), f64::INFINITY);
        assert!((huge.ln_abs_f64() - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert_eq!(BigFloat::from_int(1).mul_pow2(-5000).to_f64(), 0.0);
    }

    #[test]
    fn approx_bounds() {
        let v = Approx::with_relative_error(BigFloat::from_int(8), 10);
        assert_eq!(v.err_log2, Some(-6));
        assert!(Approx::zero().is_exact_zero());
        assert_eq!(v.abs_upper_bound().to_f64(), 8.0 + 1.0 / 64.0);
    }
}
