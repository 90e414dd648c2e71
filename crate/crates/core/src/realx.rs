//! Double-double extended precision scalar.
//!
//! A value is the unevaluated sum `hi + lo` of two `f64` with
//! `|lo| <= ulp(hi) / 2`, giving a 106-bit significand (about 31 decimal
//! digits). Arithmetic follows the classic error-free transformations
//! (Dekker, Knuth); `exp`, `ln` and `ln_1p` are accurate to a few units in
//! the last double-double place over the ranges used in this crate.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::LazyLock;

use crate::error::Error;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct RealX {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

pub static LN_2: LazyLock<RealX> = LazyLock::new(|| {
    RealX::parse_decimal("0.69314718055994530941723212145817656807550013436025525412068")
        .expect("constant")
});
pub static LN_3: LazyLock<RealX> = LazyLock::new(|| {
    RealX::parse_decimal("1.09861228866810969139524523692252570464749055782274945173469")
        .expect("constant")
});
pub static E: LazyLock<RealX> = LazyLock::new(|| {
    RealX::parse_decimal("2.71828182845904523536028747135266249775724709369995957496697")
        .expect("constant")
});
/// Euler's constant γ.
pub static EULER_GAMMA: LazyLock<RealX> = LazyLock::new(|| {
    RealX::parse_decimal("0.57721566490153286060651209008240243104215933593992359880577")
        .expect("constant")
});
/// e^γ ≈ 1.7810724179901979852.
pub static EXP_GAMMA: LazyLock<RealX> = LazyLock::new(|| EULER_GAMMA.exp());

impl RealX {
    /// Decimal digits carried reliably by the representation.
    pub const DIGITS: u32 = 31;
    pub const ZERO: RealX = RealX { hi: 0.0, lo: 0.0 };
    pub const ONE: RealX = RealX { hi: 1.0, lo: 0.0 };
    pub const INFINITY: RealX = RealX {
        hi: f64::INFINITY,
        lo: 0.0,
    };

    /// Builds a value from two doubles, renormalizing.
    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        RealX { hi, lo }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    pub fn is_nan(self) -> bool {
        self.hi.is_nan() || self.lo.is_nan()
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Multiplication by an exact power of two.
    #[inline]
    pub fn ldexp(self, exp: i32) -> Self {
        let s = 2f64.powi(exp);
        RealX {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        RealX::ONE / self
    }

    pub fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let lo = self.lo.floor();
            let (hi, lo) = quick_two_sum(hi, lo);
            RealX { hi, lo }
        } else {
            RealX { hi, lo: 0.0 }
        }
    }

    pub fn round(self) -> Self {
        (self + RealX::from(0.5)).floor()
    }

    pub fn powi(self, mut n: u32) -> Self {
        let mut base = self;
        let mut acc = RealX::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            n >>= 1;
        }
        acc
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                RealX::ZERO
            } else {
                RealX::from(f64::NAN)
            };
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = (self - RealX { hi: p, lo: e }).to_f64();
        let (hi, lo) = quick_two_sum(x, r / (2.0 * x));
        RealX { hi, lo }
    }

    /// `exp(self) - 1` for `|self| <= ln 2 / 2`, via halving and the
    /// doubling identity `expm1(2x) = expm1(x) (expm1(x) + 2)`.
    fn expm1_reduced(self) -> Self {
        const HALVINGS: i32 = 9;
        let r = self.ldexp(-HALVINGS);
        let mut term = r;
        let mut sum = r;
        let mut k = 2.0;
        loop {
            term = term * r / RealX::from(k);
            sum += term;
            if term.hi.abs() <= 1e-36 * sum.hi.abs() || k > 40.0 {
                break;
            }
            k += 1.0;
        }
        for _ in 0..HALVINGS {
            sum = sum * (sum + RealX::from(2.0));
        }
        sum
    }

    pub fn exp(self) -> Self {
        if self.hi.is_nan() {
            return self;
        }
        if self.hi > 709.7 {
            return RealX::INFINITY;
        }
        if self.hi < -745.0 {
            return RealX::ZERO;
        }
        let ln2 = *LN_2;
        let k = (self.hi / ln2.hi).round();
        let r = self - ln2 * RealX::from(k);
        (r.expm1_reduced() + RealX::ONE).ldexp(k as i32)
    }

    pub fn exp_m1(self) -> Self {
        if self.hi.abs() <= 0.34 {
            self.expm1_reduced()
        } else {
            self.exp() - RealX::ONE
        }
    }

    /// Natural logarithm; one Newton step on `exp` from the `f64` estimate.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 || self.hi.is_nan() {
            return if self.hi == 0.0 {
                -RealX::INFINITY
            } else {
                RealX::from(f64::NAN)
            };
        }
        if self.hi.is_infinite() {
            return RealX::INFINITY;
        }
        let y = RealX::from(self.hi.ln());
        y + self * (-y).exp() - RealX::ONE
    }

    /// `ln(1 + self)`, keeping full relative precision for tiny arguments.
    pub fn ln_1p(self) -> Self {
        if self.hi.abs() > 0.25 {
            return (RealX::ONE + self).ln();
        }
        if self.hi == 0.0 {
            return RealX::ZERO;
        }
        // ln(1+t) = 2 atanh(t / (2 + t))
        let z = self / (RealX::from(2.0) + self);
        let z2 = z.sqr();
        let mut power = z;
        let mut sum = z;
        let mut k = 3.0;
        loop {
            power *= z2;
            let term = power / RealX::from(k);
            sum += term;
            if term.hi.abs() <= 1e-36 * sum.hi.abs() || k > 200.0 {
                break;
            }
            k += 2.0;
        }
        sum.ldexp(1)
    }

    /// `x^y = exp(y ln x)` for positive `x`.
    pub fn powf(self, y: RealX) -> Self {
        (y * self.ln()).exp()
    }

    /// Parses a decimal literal such as `-12.5e-3`.
    pub fn parse_decimal(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidArgument(format!("not a decimal number: {s:?}"));
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        match t.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" => return Ok(RealX::INFINITY),
            "-inf" | "-infinity" => return Ok(-RealX::INFINITY),
            _ => {}
        }
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let (mantissa, exponent) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (body, 0),
        };
        let mut value = RealX::ZERO;
        let mut scale = exponent;
        let mut seen_dot = false;
        let mut digits = 0usize;
        for c in mantissa.chars() {
            match c {
                '0'..='9' => {
                    value = value * RealX::from(10.0) + RealX::from(f64::from(c as u8 - b'0'));
                    digits += 1;
                    if seen_dot {
                        scale -= 1;
                    }
                }
                '.' if !seen_dot => seen_dot = true,
                '_' => {}
                _ => return Err(bad()),
            }
        }
        if digits == 0 {
            return Err(bad());
        }
        let value = value * pow10(scale);
        Ok(if neg { -value } else { value })
    }

    /// Nearest `i128` (caller guarantees the value fits).
    fn to_i128_rounded(self) -> i128 {
        let h = self.hi.round();
        let rem = (self.hi - h) + self.lo;
        h as i128 + rem.round() as i128
    }

    /// Fixed-point rendering with `decimals` digits after the point.
    pub fn to_fixed(self, decimals: usize) -> String {
        if !self.is_finite() {
            return format!("{}", self.hi);
        }
        let scaled = self * pow10(decimals as i32);
        if scaled.hi.abs() >= 1e36 {
            return self.to_sci(30);
        }
        let n = scaled.to_i128_rounded();
        let neg = n < 0;
        let digits = n.unsigned_abs().to_string();
        let digits = if digits.len() <= decimals {
            format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = digits.split_at(digits.len() - decimals);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(int_part);
        if decimals > 0 {
            out.push('.');
            out.push_str(frac_part);
        }
        out
    }

    /// Scientific rendering with `sig` significant digits.
    pub fn to_sci(self, sig: usize) -> String {
        if !self.is_finite() {
            return format!("{}", self.hi);
        }
        if self.hi == 0.0 {
            return "0".to_string();
        }
        let sig = sig.clamp(1, 32);
        let a = self.abs();
        let mut e10 = a.hi.log10().floor() as i32;
        let mut scaled = a * pow10(sig as i32 - 1 - e10);
        if scaled.hi >= 10f64.powi(sig as i32) - 0.5 {
            e10 += 1;
            scaled = a * pow10(sig as i32 - 1 - e10);
        }
        let n = scaled.to_i128_rounded();
        let mut digits = n.to_string();
        if digits.len() > sig {
            digits.truncate(sig);
            e10 += 1;
        }
        let sign = if self.hi < 0.0 { "-" } else { "" };
        if sig == 1 {
            format!("{sign}{digits}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &digits[..1], &digits[1..])
        }
    }
}

/// 10^k as a double-double (exact for 0 <= k <= 45).
pub fn pow10(k: i32) -> RealX {
    let p = RealX::from(10.0).powi(k.unsigned_abs());
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

impl fmt::Debug for RealX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealX({})", self.to_sci(32))
    }
}

impl fmt::Display for RealX {
    /// Plain decimal with about 28 significant digits, or scientific
    /// notation outside `[1e-9, 1e15)`. A precision flag selects fixed
    /// decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = f.precision() {
            return f.write_str(&self.to_fixed(p));
        }
        if !self.is_finite() {
            return write!(f, "{}", self.hi);
        }
        let a = self.hi.abs();
        if a == 0.0 {
            return f.write_str("0");
        }
        if !(1e-9..1e15).contains(&a) {
            return f.write_str(&self.to_sci(28));
        }
        let mag = a.log10().floor() as i32;
        let decimals = (27 - mag).clamp(0, 36) as usize;
        let s = self.to_fixed(decimals);
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        f.write_str(&s)
    }
}

impl FromStr for RealX {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RealX::parse_decimal(s)
    }
}

impl PartialOrd for RealX {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl From<f64> for RealX {
    fn from(x: f64) -> Self {
        RealX { hi: x, lo: 0.0 }
    }
}

impl From<u64> for RealX {
    fn from(x: u64) -> Self {
        let hi = x as f64;
        let lo = (i128::from(x) - hi as i128) as f64;
        RealX::from_parts(hi, lo)
    }
}

impl From<u32> for RealX {
    fn from(x: u32) -> Self {
        RealX::from(f64::from(x))
    }
}

impl From<i64> for RealX {
    fn from(x: i64) -> Self {
        let hi = x as f64;
        let lo = (i128::from(x) - hi as i128) as f64;
        RealX::from_parts(hi, lo)
    }
}

/// Exact for integers below 2^106.
impl From<u128> for RealX {
    fn from(x: u128) -> Self {
        let hi = x as f64;
        let lo = (x as i128 - hi as i128) as f64;
        RealX::from_parts(hi, lo)
    }
}

impl Neg for RealX {
    type Output = RealX;
    #[inline]
    fn neg(self) -> RealX {
        RealX {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for RealX {
    type Output = RealX;
    #[inline]
    fn add(self, b: RealX) -> RealX {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return RealX { hi: s1, lo: 0.0 };
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        RealX { hi, lo }
    }
}

impl Sub for RealX {
    type Output = RealX;
    #[inline]
    fn sub(self, b: RealX) -> RealX {
        self + (-b)
    }
}

impl Mul for RealX {
    type Output = RealX;
    #[inline]
    fn mul(self, b: RealX) -> RealX {
        let (p1, p2) = two_prod(self.hi, b.hi);
        if !p1.is_finite() {
            return RealX { hi: p1, lo: 0.0 };
        }
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        RealX { hi, lo }
    }
}

impl Div for RealX {
    type Output = RealX;
    fn div(self, b: RealX) -> RealX {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return RealX { hi: q1, lo: 0.0 };
        }
        let mut r = self - b * RealX::from(q1);
        let q2 = r.hi / b.hi;
        r -= b * RealX::from(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        RealX { hi, lo } + RealX::from(q3)
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for RealX {
            #[inline]
            fn $m(&mut self, rhs: RealX) {
                *self = *self $op rhs;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl Sum for RealX {
    fn sum<I: Iterator<Item = RealX>>(iter: I) -> RealX {
        iter.fold(RealX::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a RealX> for RealX {
    fn sum<I: Iterator<Item = &'a RealX>>(iter: I) -> RealX {
        iter.fold(RealX::ZERO, |a, b| a + *b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: RealX, b: RealX) -> f64 {
        ((a - b) / b).abs().to_f64()
    }

    #[test]
    fn constants_agree_with_functions() {
        assert!(rel(RealX::ONE.exp(), *E) < 1e-31);
        assert!(rel(RealX::from(2.0).ln(), *LN_2) < 1e-31);
        assert!(rel(RealX::from(3.0).ln(), *LN_3) < 1e-31);
        let eg =
            RealX::parse_decimal("1.78107241799019798523650410310717954916964521430343").unwrap();
        assert!(rel(*EXP_GAMMA, eg) < 1e-31);
    }

    #[test]
    fn ln_1p_tiny_keeps_relative_precision() {
        let t = RealX::from(1.0) / RealX::from(2248723u64);
        // series ln(1+t) = t - t^2/2 + t^3/3 - ...
        let series = t - t.sqr().ldexp(-1) + t.powi(3) / RealX::from(3.0) - t.powi(4).ldexp(-2)
            + t.powi(5) / RealX::from(5.0);
        assert!(rel(t.ln_1p(), series) < 1e-30);
        assert!(rel((RealX::ONE + t).ln(), series) < 1e-24);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for x in [1e-12, 0.001, 0.3, 0.7, 1.0, 2.5, 17.0, 123.456, -40.0] {
            let x = RealX::from(x);
            let y = x.exp().ln();
            assert!(
                (y - x).abs().to_f64() <= 1e-30 * x.abs().to_f64().max(1.0),
                "{x:?}"
            );
        }
        let t = RealX::from(1e-9);
        assert!(rel(t.exp_m1().ln_1p(), t) < 1e-30);
    }

    #[test]
    fn sqrt_and_div() {
        let two = RealX::from(2.0);
        let s = two.sqrt();
        assert!(rel(s * s, two) < 1e-31);
        let third = RealX::ONE / RealX::from(3.0);
        assert!(rel(third * RealX::from(3.0), RealX::ONE) < 1e-31);
    }

    #[test]
    fn formatting() {
        assert_eq!(RealX::from(3.25).to_fixed(3), "3.250");
        assert_eq!(RealX::from(-0.0004).to_fixed(3), "0.000");
        assert_eq!(RealX::from(2.0 / 3.0).to_fixed(2), "0.67");
        assert_eq!(RealX::from(6.4156e-7).to_sci(5), "6.4156e-7");
        assert_eq!(RealX::from(120.0).to_string(), "120");
        assert_eq!(format!("{:.4}", RealX::from(0.12345)), "0.1235");
        let x: RealX = "0.9414440795".parse().unwrap();
        assert_eq!(x.to_fixed(10), "0.9414440795");
        assert!("1.2.3".parse::<RealX>().is_err());
        assert!("".parse::<RealX>().is_err());
        assert_eq!("2.5e3".parse::<RealX>().unwrap(), RealX::from(2500.0));
    }

    #[test]
    fn ordering_uses_low_word() {
        let a = RealX::from_parts(1.0, 1e-20);
        let b = RealX::ONE;
        assert!(a > b);
        assert!(RealX::INFINITY > a);
        assert_eq!(a.max(b), a);
    }

    #[test]
    fn large_integers_are_exact() {
        let x: u64 = (1 << 60) + 12345;
        let r = RealX::from(x);
        assert_eq!(r.hi as i128 + r.lo as i128, x as i128);
    }
}
