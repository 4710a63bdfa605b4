use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::int::IntPoly;

/// `T_n(x)` over any commutative ring, by powering the companion matrix of
/// `T_{m+1} = 2x·T_m − T_{m−1}`.
///
/// `one` and `zero` carry whatever context the ring needs (e.g. precision).
pub fn chebyshev_t_with<T>(n: u64, x: &T, one: &T, zero: &T) -> T
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    // M = [[2x, −1], [1, 0]]; (T_{m+1}, T_m) = M^m (x, 1).
    let two_x = x + x;
    let neg_one = zero - one;
    let mut base = [two_x, neg_one, one.clone(), zero.clone()];
    let mut acc = [one.clone(), zero.clone(), zero.clone(), one.clone()];
    let mul = |a: &[T; 4], b: &[T; 4]| -> [T; 4] {
        [
            &(&a[0] * &b[0]) + &(&a[1] * &b[2]),
            &(&a[0] * &b[1]) + &(&a[1] * &b[3]),
            &(&a[2] * &b[0]) + &(&a[3] * &b[2]),
            &(&a[2] * &b[1]) + &(&a[3] * &b[3]),
        ]
    };
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    &(&acc[2] * x) + &acc[3]
}

/// Exact `T_n(x)` for rational `x`.
#[allow(non_snake_case)]
pub fn chebyshev_T(n: u64, x: &BigRational) -> BigRational {
    chebyshev_t_with(n, x, &BigRational::one(), &BigRational::zero())
}

/// `T_0..T_k` as integer polynomials in `w`.
pub fn chebyshev_polys(k: usize) -> Vec<IntPoly> {
    let mut ts = vec![IntPoly::one()];
    if k >= 1 {
        ts.push(IntPoly::from_i64(&[0, 1]));
    }
    let two_w = IntPoly::from_i64(&[0, 2]);
    for j in 2..=k {
        let next = &(&two_w * &ts[j - 1]) - &ts[j - 2];
        ts.push(next);
    }
    ts
}

/// Exact `T_n(m)` for an integer point, convenient for closed-form fixtures.
pub fn chebyshev_t_int(n: u64, m: &BigInt) -> BigInt {
    chebyshev_t_with(n, m, &BigInt::one(), &BigInt::zero())
}
