use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::int::IntPoly;
use crate::error::{Error, Result};
use crate::linalg::{det_fraction_free, IntegerMatrix};

fn pow(b: &BigInt, e: usize) -> BigInt {
    Pow::pow(b, e)
}

/// Exact resultant `Res(f, g) = lc(f)^deg g · Π g(x_i)` over the roots `x_i` of `f`,
/// by the subresultant PRS.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = BigInt::one();
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        return Ok(sign * pow(&b.leading(), a.deg()));
    }

    let ca = a.content();
    let cb = b.content();
    let t = pow(&ca, b.deg()) * pow(&cb, a.deg());
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let mut g_ = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        b = r.div_scalar_exact(&(&g_ * pow(&h, delta)));
        g_ = a.leading();
        h = match delta {
            0 => h,
            1 => g_.clone(),
            _ => exact_div(&pow(&g_, delta), &pow(&h, delta - 1)),
        };
        if b.deg() == 0 {
            let da = a.deg();
            let hh = exact_div(&pow(&b.leading(), da), &pow(&h, da - 1));
            return Ok(sign * t * hh);
        }
    }
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact subresultant division");
    q
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of f
/// followed by m shifted rows of g, coefficients highest degree first.
pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> IntegerMatrix {
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    let mut s = IntegerMatrix::zeros(size, size);
    for row in 0..n {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            s[(row, row + j)] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            s[(n + row, row + j)] = c.clone();
        }
    }
    s
}

/// Resultant as the Sylvester determinant; cubic, kept as a cross-check.
pub fn resultant_sylvester(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(det_fraction_free(&sylvester_matrix(f, g)))
}

/// Polynomial arithmetic in `Q[z]/(f)`.
struct QuotientRing {
    /// Monic version of the modulus, low degree first.
    monic: Vec<BigRational>,
}

impl QuotientRing {
    fn new(f: &IntPoly) -> Self {
        let lc = BigRational::from_integer(f.leading());
        let monic = f.coeffs().iter().map(|c| BigRational::from_integer(c.clone()) / &lc).collect();
        QuotientRing { monic }
    }

    fn degree(&self) -> usize {
        self.monic.len() - 1
    }

    fn reduce(&self, mut p: Vec<BigRational>) -> Vec<BigRational> {
        let m = self.degree();
        while p.len() > m {
            let top = p.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - m;
            for (j, c) in self.monic[..m].iter().enumerate() {
                p[shift + j] -= &top * c;
            }
        }
        trim(&mut p);
        p
    }

    fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    fn add(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let len = a.len().max(b.len());
        let mut out: Vec<BigRational> =
            (0..len).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect();
        trim(&mut out);
        out
    }

    fn z(&self) -> Vec<BigRational> {
        self.reduce(vec![BigRational::zero(), BigRational::one()])
    }

    fn one(&self) -> Vec<BigRational> {
        self.reduce(vec![BigRational::one()])
    }

    /// `z^n mod f`.
    fn power_of_z(&self, n: u64) -> Vec<BigRational> {
        let z = self.z();
        let mut acc = self.one();
        for bit in (0..64 - n.leading_zeros()).rev() {
            acc = self.mul(&acc, &acc);
            if (n >> bit) & 1 == 1 {
                acc = self.mul(&acc, &z);
            }
        }
        acc
    }

    /// `(1 + z + … + z^{n−1}) mod f`.
    fn geometric_sum(&self, n: u64) -> Vec<BigRational> {
        let z = self.z();
        let mut sum: Vec<BigRational> = Vec::new();
        let mut power = self.one();
        for bit in (0..64 - n.leading_zeros()).rev() {
            // (S_m, z^m) -> (S_2m, z^2m)
            sum = self.add(&sum, &self.mul(&power, &sum));
            power = self.mul(&power, &power);
            if (n >> bit) & 1 == 1 {
                sum = self.add(&sum, &power);
                power = self.mul(&power, &z);
            }
        }
        sum
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// `Res(f, g)` where `g` has degree `deg_g` and `g ≡ rem (mod f)` over ℚ.
///
/// Uses `Res(f, g) = lc(f)^(deg g − deg r) · Res(f, r)` and clears the
/// denominators of `r` before the integer resultant.
fn resultant_from_remainder(f: &IntPoly, deg_g: usize, rem: Vec<BigRational>) -> BigInt {
    let m = f.deg();
    if rem.is_empty() {
        return BigInt::zero();
    }
    let denom = rem.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let r = IntPoly::new(rem.iter().map(|c| (c * BigRational::from_integer(denom.clone())).to_integer()).collect());
    let d = r.deg();
    let res = resultant(f, &r).expect("nonzero operands");
    let num = pow(&f.leading(), deg_g - d) * res;
    exact_div(&num, &pow(&denom, m))
}

/// `Res(f, z^n + c)`.
pub fn resultant_with_binomial(f: &IntPoly, n: u64, c: i64) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g_deg = usize::try_from(n).expect("exponent fits in usize");
    if f.deg() == 0 || n <= f.deg() as u64 {
        let mut g = IntPoly::monomial(BigInt::one(), g_deg);
        g = &g + &IntPoly::constant(BigInt::from(c));
        return resultant(f, &g);
    }
    let ring = QuotientRing::new(f);
    let rem = ring.add(&ring.power_of_z(n), &ring.reduce(vec![BigRational::from_integer(c.into())]));
    Ok(resultant_from_remainder(f, g_deg, rem))
}

/// `Res(f, 1 + z + … + z^{n−1})`.
pub fn resultant_with_cyclotomic_quotient(f: &IntPoly, n: u64) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    assert!(n >= 1, "cyclotomic quotient needs n >= 1");
    let g_deg = usize::try_from(n - 1).expect("exponent fits in usize");
    if f.deg() == 0 || n <= f.deg() as u64 + 1 {
        return resultant(f, &super::int::cyclotomic_quotient(g_deg + 1));
    }
    let ring = QuotientRing::new(f);
    Ok(resultant_from_remainder(f, g_deg, ring.geometric_sum(n)))
}

/// Absolute value of a resultant, the only form the tree-count formulas need.
pub fn abs_resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    resultant(f, g).map(|r| r.abs())
}
