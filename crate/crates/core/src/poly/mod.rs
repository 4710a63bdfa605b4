//! Exact polynomial arithmetic: integer and symmetric Laurent polynomials,
//! Chebyshev transforms, resultants, and certified numerical roots.

mod arith;
mod chebyshev;
pub mod hp;
mod int;
mod laurent;
mod resultant;
mod roots;

use num_bigint::BigInt;

pub use arith::{isqrt_exact, squarefree_part};
pub use chebyshev::{chebyshev_T, chebyshev_polys, chebyshev_t_int, chebyshev_t_with};
pub use int::{cyclotomic_quotient, exact_divide, IntPoly};
pub use laurent::{chebyshev_transform, ChebyshevTransform, SymmetricLaurentPoly};
pub use resultant::{
    abs_resultant, resultant, resultant_sylvester, resultant_with_binomial, resultant_with_cyclotomic_quotient,
    sylvester_matrix,
};
pub use roots::{find_roots, outside_root_product, roots_numeric, Location, RootApprox, RootSet, MAX_DIGITS};

/// Nearest `f64` to a big integer (infinite when out of range).
pub fn bigint_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}
