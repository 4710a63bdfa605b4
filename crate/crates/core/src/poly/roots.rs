//! Certified numerical roots of integer polynomials.
//!
//! Roots come from Aberth–Ehrlich iteration, first in `f64` for a starting
//! configuration and then at the requested precision. Every approximation
//! carries an inclusion radius `r_i = d·|f(z_i)| / |lc·Π_{j≠i}(z_i − z_j)|`;
//! the union of these discs contains all roots and an isolated disc contains
//! exactly one. Roots on the unit circle are certified through the reciprocal
//! symmetry of self-reciprocal factors.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::hp::{self, Complex, Real};
use super::int::IntPoly;
use crate::error::{Error, Result};

/// Highest working precision tried before giving up on classification.
pub const MAX_DIGITS: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Inside,
    OnCircle,
    Outside,
    /// Disc overlaps the circle and no symmetry argument applies.
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct RootApprox {
    pub value: Complex,
    /// Radius of a disc around `value` certified to contain the root.
    pub radius: Real,
    pub multiplicity: usize,
    pub location: Location,
}

impl RootApprox {
    pub fn modulus(&self) -> Real {
        self.value.abs()
    }

    pub fn to_c64(&self) -> Complex64 {
        self.value.to_c64()
    }
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<RootApprox>,
    /// Decimal digits of the working precision that succeeded.
    pub digits: u32,
}

/// All roots of `f` with multiplicity, each classified against the unit circle.
///
/// Starts at `digits` and doubles the working precision up to [`MAX_DIGITS`]
/// while some root stays unresolved.
pub fn roots_numeric(f: &IntPoly, digits: u32) -> Result<RootSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut d = digits.max(16);
    loop {
        let roots = find_roots(f, d);
        match roots.iter().find(|r| r.location == Location::Unresolved) {
            None => return Ok(RootSet { roots, digits: d }),
            Some(bad) if d >= MAX_DIGITS => {
                return Err(Error::UnitCircleAmbiguity { modulus: hp::to_f64(&bad.modulus()), digits: d })
            }
            Some(_) => d = (d * 2).min(MAX_DIGITS),
        }
    }
}

/// Roots of `f` at a fixed precision; unclassifiable roots are reported as
/// [`Location::Unresolved`] rather than failing.
pub fn find_roots(f: &IntPoly, digits: u32) -> Vec<RootApprox> {
    let bits = hp::bits_for_digits(digits);
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }

    let zeros = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let rest = IntPoly::new(f.coeffs()[zeros..].to_vec());
    if zeros > 0 {
        out.push(exact_root(0, zeros, Location::Inside, bits));
    }
    let (rest, m1) = rest.strip_linear_factor(1);
    if m1 > 0 {
        out.push(exact_root(1, m1, Location::OnCircle, bits));
    }
    let (rest, m2) = rest.strip_linear_factor(-1);
    if m2 > 0 {
        out.push(exact_root(-1, m2, Location::OnCircle, bits));
    }

    for (factor, mult) in rest.squarefree_decomposition() {
        let recip = factor.gcd(&factor.reversed());
        let other = factor.div_exact(&recip).expect("gcd divides its argument");
        for (part, palindromic) in [(recip, true), (other, false)] {
            if part.deg() == 0 {
                continue;
            }
            out.extend(squarefree_roots(&part, mult, palindromic, bits));
        }
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.to_c64(), b.to_c64());
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
    });
    out
}

fn exact_root(value: i64, multiplicity: usize, location: Location, bits: usize) -> RootApprox {
    RootApprox {
        value: Complex::from_f64(value as f64, 0.0, bits),
        radius: hp::from_i64(0, bits),
        multiplicity,
        location,
    }
}

/// Roots of a square-free polynomial with nonzero constant term.
fn squarefree_roots(p: &IntPoly, multiplicity: usize, palindromic: bool, bits: usize) -> Vec<RootApprox> {
    let start = aberth_f64(p);
    let coeffs: Vec<Real> = p.coeffs().iter().map(|c| hp::from_bigint(c, bits)).collect();
    let z = aberth_hp(&coeffs, start, bits);
    let radii = inclusion_radii(&coeffs, &z, bits);
    let one = hp::from_i64(1, bits);
    let mut out = Vec::with_capacity(z.len());
    for i in 0..z.len() {
        let modulus = z[i].abs();
        let r = &radii[i];
        let isolated_at = |factor: i64| {
            let wide = r * &hp::from_i64(factor, bits);
            (0..z.len()).all(|j| j == i || (&z[i] - &z[j]).abs() > &wide + &radii[j])
        };
        let location = if !isolated_at(1) {
            Location::Unresolved
        } else if &modulus - r > one {
            Location::Outside
        } else if &modulus + r < one {
            Location::Inside
        } else if palindromic && on_circle_by_symmetry(&z[i], r, bits) && isolated_at(3) {
            Location::OnCircle
        } else {
            Location::Unresolved
        };
        out.push(RootApprox { value: z[i].clone(), radius: r.clone(), multiplicity, location });
    }
    out
}

/// For a self-reciprocal factor, `1/conj(ρ)` is a root whenever `ρ` is. If the
/// reflected centre stays within the disc and the tripled disc is isolated,
/// the reflection of the unique root inside is that same root, so `|ρ| = 1`.
fn on_circle_by_symmetry(c: &Complex, r: &Real, bits: usize) -> bool {
    let tenth = hp::from_f64(0.1, bits);
    if r >= &tenth {
        return false;
    }
    let reflected = c.conj().recip();
    (&reflected - c).abs() <= *r
}

/// Horner evaluation of `p` and `p'` at `z`.
fn eval_with_derivative(coeffs: &[Real], z: &Complex, bits: usize) -> (Complex, Complex) {
    let mut p = Complex::zero(bits);
    let mut dp = Complex::zero(bits);
    for c in coeffs.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &p * z;
        p.re = &p.re + c;
    }
    (p, dp)
}

fn aberth_hp(coeffs: &[Real], start: Vec<Complex64>, bits: usize) -> Vec<Complex> {
    let mut z: Vec<Complex> = start.iter().map(|c| Complex::from_f64(c.re, c.im, bits)).collect();
    let n = z.len();
    let tol = hp::epsilon(bits.saturating_sub(24), bits);
    let one = hp::from_i64(1, bits);
    for _ in 0..500 {
        let mut worst = hp::from_i64(0, bits);
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, &z[i], bits);
            if p.is_zero() {
                continue;
            }
            let ratio = &p / &dp;
            let mut sum = Complex::zero(bits);
            for j in 0..n {
                if j != i {
                    sum = &sum + &(&z[i] - &z[j]).recip();
                }
            }
            let denom = &Complex::one(bits) - &(&ratio * &sum);
            let step = &ratio / &denom;
            let scale = {
                let m = z[i].abs();
                if m > one {
                    m
                } else {
                    one.clone()
                }
            };
            let rel = step.abs() / scale;
            if rel > worst {
                worst = rel;
            }
            z[i] = &z[i] - &step;
        }
        if worst < tol {
            break;
        }
    }
    z
}

fn inclusion_radii(coeffs: &[Real], z: &[Complex], bits: usize) -> Vec<Real> {
    let n = z.len();
    let d = hp::from_i64(n as i64, bits);
    let lc = hp::abs(coeffs.last().expect("nonconstant"));
    (0..n)
        .map(|i| {
            let (p, _) = eval_with_derivative(coeffs, &z[i], bits);
            // rounding error of the Horner evaluation
            let m = z[i].abs();
            let magnitude = coeffs.iter().rev().fold(hp::from_i64(0, bits), |acc, c| acc * &m + hp::abs(c));
            let rounding = magnitude * hp::from_i64(4 * n as i64 + 4, bits) * hp::epsilon(bits, bits);
            let mut denom = lc.clone();
            for j in 0..n {
                if j != i {
                    denom *= (&z[i] - &z[j]).abs();
                }
            }
            if denom == Real::ZERO {
                // coincident approximations: nothing can be certified
                return hp::from_f64(1e300, bits);
            }
            &d * (p.abs() + rounding) / denom
        })
        .collect()
}

/// Double-precision Aberth iteration for starting values.
fn aberth_f64(p: &IntPoly) -> Vec<Complex64> {
    let c: Vec<f64> = p.coeffs().iter().map(super::bigint_to_f64).collect();
    let n = p.deg();
    let lc = c[n];
    // geometric mean of root moduli, guarded against overflow
    let mut radius = (c[0] / lc).abs().powf(1.0 / n as f64);
    if !radius.is_finite() || radius == 0.0 {
        radius = 1.0;
    }
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4)).collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for a in c.iter().rev() {
            dv = dv * x + v;
            v = v * x + a;
        }
        (v, dv)
    };
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (v, dv) = eval(z[i]);
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / dv;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                worst = worst.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    // keep starting points distinct for the multiprecision stage
    for i in 0..n {
        if !z[i].is_finite() {
            z[i] = Complex64::from_polar(radius, 1.0 + i as f64);
        }
        for j in 0..i {
            if (z[i] - z[j]).norm() < 1e-12 * z[i].norm().max(1.0) {
                z[i] += Complex64::new(1e-9, 1e-9 * (i as f64 + 1.0));
            }
        }
    }
    z
}

/// `|lc(f)| · Π_{|ρ|>1} |ρ|^mult` over the roots of `f`, with a bound on
/// the absolute error.
pub fn outside_root_product(f: &IntPoly, set: &RootSet) -> (Real, Real) {
    let bits = hp::bits_for_digits(set.digits);
    let mut value = hp::abs(&hp::from_bigint(&f.leading(), bits));
    let mut rel = hp::from_i64(0, bits);
    for root in set.roots.iter().filter(|r| r.location == Location::Outside) {
        let m = root.modulus();
        let mult = hp::from_i64(root.multiplicity as i64, bits);
        for _ in 0..root.multiplicity {
            value *= &m;
        }
        rel += mult * (&root.radius / &m);
    }
    let err = &value * &rel + hp::epsilon(bits - 40, bits);
    (value, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn moduli(set: &RootSet) -> Vec<(f64, Location, usize)> {
        set.roots.iter().map(|r| (hp::to_f64(&r.modulus()), r.location, r.multiplicity)).collect()
    }

    #[test]
    fn quadratic_with_reciprocal_roots() {
        let set = roots_numeric(&p(&[1, -4, 1]), 64).unwrap();
        let m = moduli(&set);
        assert_eq!(m.len(), 2);
        assert!((m[0].0 - (2.0 - 3f64.sqrt())).abs() < 1e-14 && m[0].1 == Location::Inside);
        assert!((m[1].0 - (2.0 + 3f64.sqrt())).abs() < 1e-14 && m[1].1 == Location::Outside);
        let exact = hp::from_i64(2, 300) + hp::from_i64(3, 300).sqrt();
        let err = hp::abs(&(set.roots[1].value.re.clone() - exact));
        assert!(err < hp::epsilon(200, 300));
        assert!(set.roots[1].radius < hp::epsilon(200, 300));
    }

    #[test]
    fn double_root_on_circle() {
        let set = roots_numeric(&p(&[1, -2, 1]), 64).unwrap();
        assert_eq!(moduli(&set), vec![(1.0, Location::OnCircle, 2)]);
    }

    #[test]
    fn family_four_factor() {
        let set = roots_numeric(&p(&[-3, 14, -3]), 64).unwrap();
        let m = moduli(&set);
        let sq = 2.0 * 10f64.sqrt();
        assert!((m[0].0 - (7.0 - sq) / 3.0).abs() < 1e-14);
        assert!((m[1].0 - (7.0 + sq) / 3.0).abs() < 1e-14);
    }

    #[test]
    fn cyclotomic_roots_certified_on_circle() {
        // z^4 + z^3 + z^2 + z + 1 and z^2 − z + 1: all roots primitive roots of unity
        for f in [p(&[1, 1, 1, 1, 1]), p(&[1, -1, 1]), p(&[1, 0, 1])] {
            let set = roots_numeric(&f, 64).unwrap();
            assert!(set.roots.iter().all(|r| r.location == Location::OnCircle), "{f}");
        }
    }

    #[test]
    fn mixed_factor_splits_reciprocal_part() {
        // (z² + z + 1)(z − 3)(z − 1)²(z + 2)z
        let f = &(&(&p(&[1, 1, 1]) * &p(&[-3, 1])) * &p(&[1, -2, 1])) * &p(&[0, 2, 1]);
        let set = roots_numeric(&f, 64).unwrap();
        let count = |loc| set.roots.iter().filter(|r| r.location == loc).map(|r| r.multiplicity).sum::<usize>();
        assert_eq!(count(Location::OnCircle), 4);
        assert_eq!(count(Location::Outside), 2);
        assert_eq!(count(Location::Inside), 1);
        let (value, err) = outside_root_product(&f, &set);
        assert!((hp::to_f64(&value) - 6.0).abs() < 1e-12);
        assert!(hp::to_f64(&err) < 1e-30);
    }

    #[test]
    fn higher_degree_palindromic() {
        // z^4 − 6z^3 + 10z^2 − 6z + 1 = (z − 1)²(z² − 4z + 1)
        let set = roots_numeric(&p(&[1, -6, 10, -6, 1]), 64).unwrap();
        assert_eq!(set.roots.iter().map(|r| r.multiplicity).sum::<usize>(), 4);
        let f = p(&[2, -7, 0, 11, 0, -7, 2]);
        let set = roots_numeric(&f, 64).unwrap();
        assert_eq!(set.roots.iter().map(|r| r.multiplicity).sum::<usize>(), 6);
        assert!(set.roots.iter().all(|r| r.location != Location::Unresolved));
    }
}
