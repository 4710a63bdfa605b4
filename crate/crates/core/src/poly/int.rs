use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense univariate polynomial over ℤ, coefficients stored low degree first.
///
/// The representation is canonical: the leading stored coefficient is never
/// zero, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    #[serde(with = "crate::bigjson::bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·z^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `z − a`
    pub fn linear_root(a: i64) -> Self {
        Self::from_i64(&[-a, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + crate::poly::bigint_to_f64(c))
    }

    pub fn derivative(&self) -> IntPoly {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides every coefficient by `k`; panics if any division is inexact.
    pub fn div_scalar_exact(&self, k: &BigInt) -> IntPoly {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(k);
                    assert!(r.is_zero(), "inexact scalar division by {k}");
                    q
                })
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    /// `z^deg · f(1/z)`.
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `f(c·z)`.
    pub fn compose_scale(&self, c: &BigInt) -> IntPoly {
        let mut power = BigInt::one();
        Self::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let term = a * &power;
                    power *= c;
                    term
                })
                .collect(),
        )
    }

    /// Pseudo-remainder: `lc(d)^(deg f − deg d + 1)·f mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero(), "pseudo-remainder by zero polynomial");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return self.clone();
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let steps = self.deg() - dd + 1;
        for _ in 0..steps {
            let top = r.len() - 1;
            let t = r[top].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            if !t.is_zero() {
                let shift = top - dd;
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[shift + j] -= &t * dc;
                }
            }
            debug_assert!(r[top].is_zero());
            r.pop();
        }
        Self::new(r)
    }

    /// Exact quotient `self / d` over ℤ.
    ///
    /// Fails with [`Error::InexactDivision`] when a nonzero remainder remains
    /// or a quotient coefficient would not be an integer.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let dd = d.deg();
        if self.deg() < dd {
            return Err(Error::InexactDivision);
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - dd + 1];
        for shift in (0..q.len()).rev() {
            let top = shift + dd;
            let (t, rem) = r[top].div_rem(&lc);
            if !rem.is_zero() {
                return Err(Error::InexactDivision);
            }
            if !t.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[shift + j] -= &t * dc;
                }
            }
            q[shift] = t;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::new(q))
    }

    /// Primitive gcd (positive leading coefficient) by the primitive PRS.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Multiplicity of `root` as a zero, stripping `(z − root)` factors.
    pub fn strip_linear_factor(&self, root: i64) -> (IntPoly, usize) {
        let factor = IntPoly::linear_root(root);
        let mut p = self.clone();
        let mut count = 0;
        while !p.is_zero() && p.eval(&BigInt::from(root)).is_zero() {
            p = p.div_exact(&factor).expect("root gives an exact linear factor");
            count += 1;
        }
        (p, count)
    }

    /// Square-free decomposition (Yun): pairs `(factor, multiplicity)` whose
    /// product is the primitive part of `self` up to sign.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let f = self.primitive_part();
        if f.deg() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        let mut c = f.div_exact(&g).expect("gcd divides f");
        let mut d = &df.div_exact(&g).expect("gcd divides f'") - &c.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while c.deg() > 0 {
            let a = c.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            c = c.div_exact(&a).expect("gcd divides c");
            d = &d.div_exact(&a).expect("gcd divides d") - &c.derivative();
            i += 1;
        }
        out
    }
}

/// `1 + z + … + z^(n−1)`, i.e. `(z^n − 1)/(z − 1)`.
pub fn cyclotomic_quotient(n: usize) -> IntPoly {
    assert!(n >= 1, "cyclotomic_quotient needs n >= 1");
    IntPoly::new(vec![BigInt::one(); n])
}

/// Exact quotient `f / g`; see [`IntPoly::div_exact`].
pub fn exact_divide(f: &IntPoly, g: &IntPoly) -> Result<IntPoly> {
    f.div_exact(g)
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}
