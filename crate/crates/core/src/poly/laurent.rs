use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::chebyshev::chebyshev_polys;
use super::int::IntPoly;

/// Palindromic Laurent polynomial `η₀ + Σ_{j=1..k} η_j (z^j + z^−j)`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymmetricLaurentPoly {
    #[serde(with = "crate::bigjson::bigint_vec")]
    eta: Vec<BigInt>,
}

impl SymmetricLaurentPoly {
    pub fn new(mut eta: Vec<BigInt>) -> Self {
        while eta.last().is_some_and(Zero::is_zero) {
            eta.pop();
        }
        SymmetricLaurentPoly { eta }
    }

    pub fn from_i64(eta: &[i64]) -> Self {
        Self::new(eta.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `z^j + z^−j`; for `j = 0` this is the constant 2.
    pub fn cosine(j: usize) -> Self {
        let mut eta = vec![BigInt::zero(); j + 1];
        eta[j] = if j == 0 { BigInt::from(2) } else { BigInt::one() };
        Self::new(eta)
    }

    /// Builds from dense coefficients `c_−k..c_k`; `None` unless palindromic
    /// with odd length.
    pub fn from_dense(dense: &[BigInt]) -> Option<Self> {
        if dense.len() % 2 == 0 {
            return None;
        }
        let k = dense.len() / 2;
        if (0..k).any(|i| dense[i] != dense[dense.len() - 1 - i]) {
            return None;
        }
        Some(Self::new(dense[k..].to_vec()))
    }

    pub fn eta(&self) -> &[BigInt] {
        &self.eta
    }

    pub fn is_zero(&self) -> bool {
        self.eta.is_empty()
    }

    /// The `k` of `z^k`; zero for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.eta.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.eta.last().cloned().unwrap_or_default()
    }

    /// Coefficients `c_−k..c_k`.
    pub fn dense(&self) -> Vec<BigInt> {
        let k = self.degree();
        if self.is_zero() {
            return Vec::new();
        }
        (0..=2 * k).map(|i| self.eta[i.abs_diff(k)].clone()).collect()
    }

    /// `z^k · P(z)` as an ordinary polynomial of degree `2k`.
    pub fn shifted(&self) -> IntPoly {
        IntPoly::new(self.dense())
    }

    pub fn eval_rational(&self, z: &BigRational) -> BigRational {
        let inv = z.recip();
        let mut zp = BigRational::one();
        let mut zm = BigRational::one();
        let mut acc = BigRational::zero();
        for (j, c) in self.eta.iter().enumerate() {
            let c = BigRational::from_integer(c.clone());
            if j == 0 {
                acc += c;
            } else {
                zp *= z;
                zm *= &inv;
                acc += c * (&zp + &zm);
            }
        }
        acc
    }

    pub fn eval_int(&self, z: i64) -> BigInt {
        assert!(z == 1 || z == -1, "integer evaluation only at z = ±1");
        self.eta
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let sign = if z == -1 && j % 2 == 1 { -1 } else { 1 };
                let weight = if j == 0 { 1 } else { 2 * sign };
                c * BigInt::from(weight)
            })
            .sum()
    }

    /// `P(e^{iθ}) = η₀ + 2Σ η_j cos(jθ)`, always real.
    pub fn eval_on_circle(&self, theta: f64) -> f64 {
        self.eta
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let c = super::bigint_to_f64(c);
                if j == 0 {
                    c
                } else {
                    2.0 * c * (j as f64 * theta).cos()
                }
            })
            .sum()
    }

    /// Ordinary derivative of order `order` at `z = 1`: `Σ c_i · i(i−1)…(i−order+1)`
    /// over the dense coefficients.
    pub fn derivative_at_one(&self, order: u32) -> BigInt {
        let k = self.degree() as i64;
        self.dense()
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let i = idx as i64 - k;
                let falling: BigInt = (0..order as i64).map(|m| BigInt::from(i - m)).product();
                c * falling
            })
            .sum()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.eta.iter().map(|c| c * k).collect())
    }

    /// Chebyshev transform: the polynomial `K` with `P(z) = K((z + 1/z)/2)`.
    pub fn chebyshev_transform(&self) -> ChebyshevTransform {
        let ts = chebyshev_polys(self.degree());
        let mut k = IntPoly::zero();
        for (j, c) in self.eta.iter().enumerate() {
            let weight = if j == 0 { c.clone() } else { c * BigInt::from(2) };
            k = &k + &ts[j].scale(&weight);
        }
        ChebyshevTransform { k }
    }

    /// `C(1/z)·C(z)` for an ordinary polynomial `C`.
    pub fn reflection_product(c: &IntPoly) -> Self {
        let d = c.coeffs().len();
        let mut eta = vec![BigInt::zero(); d.max(1)];
        for shift in 0..d {
            let mut sum = BigInt::zero();
            for i in 0..d - shift {
                sum += &c.coeffs()[i] * &c.coeffs()[i + shift];
            }
            eta[shift] = sum;
        }
        Self::new(eta)
    }
}

pub fn chebyshev_transform(p: &SymmetricLaurentPoly) -> ChebyshevTransform {
    p.chebyshev_transform()
}

/// `K(w)` with `P(z) = K((z + 1/z)/2)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ChebyshevTransform {
    pub k: IntPoly,
}

impl ChebyshevTransform {
    pub fn poly(&self) -> &IntPoly {
        &self.k
    }

    pub fn eval(&self, w: &BigRational) -> BigRational {
        self.k.eval_rational(w)
    }
}

impl fmt::Debug for SymmetricLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricLaurentPoly({self})")
    }
}

impl fmt::Display for SymmetricLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.eta.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "(z + z^-1)")?,
                (1, false) => write!(f, "{mag}(z + z^-1)")?,
                (_, true) => write!(f, "(z^{j} + z^-{j})")?,
                (_, false) => write!(f, "{mag}(z^{j} + z^-{j})")?,
            }
        }
        Ok(())
    }
}

impl Add for &SymmetricLaurentPoly {
    type Output = SymmetricLaurentPoly;

    fn add(self, rhs: &SymmetricLaurentPoly) -> SymmetricLaurentPoly {
        let len = self.eta.len().max(rhs.eta.len());
        let get = |p: &SymmetricLaurentPoly, i: usize| p.eta.get(i).cloned().unwrap_or_default();
        SymmetricLaurentPoly::new((0..len).map(|i| get(self, i) + get(rhs, i)).collect())
    }
}

impl Sub for &SymmetricLaurentPoly {
    type Output = SymmetricLaurentPoly;

    fn sub(self, rhs: &SymmetricLaurentPoly) -> SymmetricLaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &SymmetricLaurentPoly {
    type Output = SymmetricLaurentPoly;

    fn neg(self) -> SymmetricLaurentPoly {
        SymmetricLaurentPoly::new(self.eta.iter().map(|c| -c).collect())
    }
}

impl Mul for &SymmetricLaurentPoly {
    type Output = SymmetricLaurentPoly;

    fn mul(self, rhs: &SymmetricLaurentPoly) -> SymmetricLaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return SymmetricLaurentPoly::default();
        }
        let prod = &self.shifted() * &rhs.shifted();
        let k = self.degree() + rhs.degree();
        let mut dense = prod.coeffs().to_vec();
        dense.resize(2 * k + 1, BigInt::zero());
        SymmetricLaurentPoly::new(dense[k..].to_vec())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for SymmetricLaurentPoly {
            type Output = SymmetricLaurentPoly;
            fn $m(self, rhs: SymmetricLaurentPoly) -> SymmetricLaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(eta: &[i64]) -> SymmetricLaurentPoly {
        SymmetricLaurentPoly::from_i64(eta)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn transform_examples() {
        assert_eq!(s(&[2, -1]).chebyshev_transform().k, IntPoly::from_i64(&[2, -2]));
        let k = s(&[10, -6, 1]).chebyshev_transform().k;
        assert_eq!(k, IntPoly::from_i64(&[8, -12, 4]));
        assert!(k.eval(&1.into()).is_zero() && k.eval(&2.into()).is_zero());
        assert_eq!(s(&[5]).chebyshev_transform().k, IntPoly::from_i64(&[5]));
    }

    #[test]
    fn shifted_and_dense() {
        let p = s(&[10, -6, 1]);
        assert_eq!(p.shifted(), IntPoly::from_i64(&[1, -6, 10, -6, 1]));
        assert_eq!(SymmetricLaurentPoly::from_dense(&p.dense()), Some(p));
        assert_eq!(SymmetricLaurentPoly::from_dense(&[1.into(), 2.into(), 3.into()]), None);
    }

    #[test]
    fn product_matches_expansion() {
        // (4 − (z + 1/z)) · (2 − (z + 1/z)) = 10 − 6(z + 1/z) + (z² + z⁻²)
        assert_eq!(&s(&[4, -1]) * &s(&[2, -1]), s(&[10, -6, 1]));
        assert_eq!(SymmetricLaurentPoly::reflection_product(&IntPoly::from_i64(&[1, 1])), s(&[2, 1]));
    }

    #[test]
    fn derivatives_at_one() {
        let p = s(&[10, -6, 1]);
        assert_eq!(p.derivative_at_one(0), BigInt::zero());
        assert_eq!(p.derivative_at_one(1), BigInt::zero());
        assert_eq!(p.derivative_at_one(2), BigInt::from(-4));
        assert_eq!(s(&[2, -1]).derivative_at_one(2), BigInt::from(-2));
    }

    #[test]
    fn display() {
        assert_eq!(s(&[14, -3]).to_string(), "14 - 3(z + z^-1)");
        assert_eq!(s(&[0, 0, 1]).to_string(), "(z^2 + z^-2)");
    }

    proptest! {
        #[test]
        fn transform_round_trip(
            eta in proptest::collection::vec(-30i64..30, 1..6),
            zn in -9i64..9,
            zd in 1i64..9,
        ) {
            prop_assume!(zn != 0);
            let p = s(&eta);
            let z = q(zn, zd);
            let w = (&z + z.recip()) / BigRational::from_integer(2.into());
            prop_assert_eq!(p.eval_rational(&z), p.chebyshev_transform().eval(&w));
        }

        #[test]
        fn product_is_pointwise(
            a in proptest::collection::vec(-9i64..9, 1..5),
            b in proptest::collection::vec(-9i64..9, 1..5),
            zn in 1i64..9,
            zd in 1i64..9,
        ) {
            let (a, b) = (s(&a), s(&b));
            let z = q(zn, zd);
            prop_assert_eq!((&a * &b).eval_rational(&z), a.eval_rational(&z) * b.eval_rational(&z));
        }

        #[test]
        fn circle_values_match_rational_at_one(eta in proptest::collection::vec(-30i64..30, 1..6)) {
            let p = s(&eta);
            let exact = p.eval_int(1);
            prop_assert!((p.eval_on_circle(0.0) - crate::poly::bigint_to_f64(&exact)).abs() < 1e-9);
        }
    }
}
