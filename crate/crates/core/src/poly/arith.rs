use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

/// The square-free `v` with `u = v·r²`, by trial division up to `√u`.
pub fn squarefree_part(u: u64) -> u64 {
    assert!(u >= 1, "squarefree_part needs u >= 1");
    let mut rest = u;
    let mut v = 1;
    let mut p = 2;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            v *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    v * rest
}

/// `Some(r)` with `r² = x` when `x` is a perfect square.
pub fn isqrt_exact(x: &BigInt) -> Option<BigUint> {
    if x.is_negative() {
        return None;
    }
    let x = x.magnitude();
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}
