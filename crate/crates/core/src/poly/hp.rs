//! Multiprecision reals and complex numbers on top of `dashu-float`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;

pub type Real = FBig<HalfEven>;

/// Binary precision used for a target of `digits` decimal digits, with guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize + 32
}

fn ibig(x: &BigInt) -> IBig {
    x.to_string().parse().expect("decimal integer")
}

pub fn from_bigint(x: &BigInt, bits: usize) -> Real {
    Real::from(ibig(x)).with_precision(bits).value()
}

pub fn from_i64(x: i64, bits: usize) -> Real {
    Real::from(x).with_precision(bits).value()
}

pub fn from_f64(x: f64, bits: usize) -> Real {
    Real::try_from(x).expect("finite f64").with_precision(bits).value()
}

pub fn from_rational(x: &BigRational, bits: usize) -> Real {
    from_bigint(x.numer(), bits) / from_bigint(x.denom(), bits)
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Decimal rendering rounded to `digits` significant digits.
pub fn to_decimal_string(x: &Real, digits: usize) -> String {
    x.to_decimal().value().with_precision(digits).value().to_string()
}

pub fn abs(x: &Real) -> Real {
    if x < &Real::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}

/// `2^−e` at the given precision.
pub fn epsilon(e: usize, bits: usize) -> Real {
    let e = isize::try_from(e).expect("exponent fits");
    Real::from_parts(IBig::from(1), -e).with_precision(bits).value()
}

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_f64(0.0, 0.0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_f64(1.0, 0.0, bits)
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        Complex { re: from_f64(re, bits), im: from_f64(im, bits) }
    }

    pub fn from_real(re: Real, bits: usize) -> Self {
        Complex { re, im: from_f64(0.0, bits) }
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, k: &Real) -> Complex {
        Complex { re: &self.re * k, im: &self.im * k }
    }

    pub fn recip(&self) -> Complex {
        let d = self.norm_sqr();
        Complex { re: &self.re / &d, im: -(&self.im / &d) }
    }

    pub fn is_zero(&self) -> bool {
        self.re == Real::ZERO && self.im == Real::ZERO
    }
}

impl Add for &Complex {
    type Output = Complex;

    fn add(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &Complex {
    type Output = Complex;

    fn sub(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &Complex {
    type Output = Complex;

    fn mul(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Div for &Complex {
    type Output = Complex;

    fn div(self, rhs: &Complex) -> Complex {
        let d = rhs.norm_sqr();
        Complex {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &d,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &d,
        }
    }
}

impl Neg for &Complex {
    type Output = Complex;

    fn neg(self) -> Complex {
        Complex { re: -self.re.clone(), im: -self.im.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt3_digits() {
        let bits = bits_for_digits(50);
        let x = from_i64(2, bits) + from_i64(3, bits).sqrt();
        assert!(to_decimal_string(&x, 30).starts_with("3.7320508075688772935274463415"));
    }

    #[test]
    fn complex_field_ops() {
        let bits = bits_for_digits(40);
        let a = Complex::from_f64(1.5, -2.0, bits);
        let b = Complex::from_f64(-0.25, 3.0, bits);
        let back = &(&a * &b) / &b;
        let err = (&back - &a).abs();
        assert!(err < epsilon(120, bits));
        assert!((to_f64(&a.abs()) - 2.5).abs() < 1e-15);
        let one = &a * &a.recip();
        assert!((&one - &Complex::one(bits)).abs() < epsilon(120, bits));
    }

    #[test]
    fn rational_conversion() {
        let bits = bits_for_digits(30);
        let q = BigRational::new(7.into(), 3.into());
        assert!((to_f64(&from_rational(&q, bits)) - 7.0 / 3.0).abs() < 1e-15);
    }
}
