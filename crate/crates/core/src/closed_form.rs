//! Spectral polynomials of a bicirculant graph and its spanning-tree count
//! through integer resultants, with a multiprecision Chebyshev cross-check.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{is_connected, ConnectionSpec, Family};
use crate::poly::hp::{self, Complex, Real};
use crate::poly::{
    chebyshev_t_with, exact_divide, find_roots, resultant_with_binomial, resultant_with_cyclotomic_quotient, IntPoly,
    SymmetricLaurentPoly,
};

/// The polynomials `A`, `B`, `C`, `P1` and the family polynomial `Pj`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralSystem {
    pub family: Family,
    pub s: u64,
    pub a: SymmetricLaurentPoly,
    pub b: SymmetricLaurentPoly,
    /// Spoke polynomial `Σ z^γ`.
    pub c: IntPoly,
    pub p1: SymmetricLaurentPoly,
    /// Equal to `p1` for family 1.
    pub pj: SymmetricLaurentPoly,
    /// Laurent degree of `P1`.
    pub k: usize,
    /// Laurent degree of `Pj`; can differ from `k` when leading terms cancel.
    pub kj: usize,
    #[serde(with = "crate::bigjson::bigint")]
    pub lead: BigInt,
    #[serde(with = "crate::bigjson::bigint")]
    pub lead_j: BigInt,
    #[serde(with = "crate::bigjson::bigint")]
    pub q: BigInt,
}

impl SpectralSystem {
    pub fn is_degenerate(&self) -> bool {
        self.p1.is_zero()
    }

    /// `z^k·P1(z) / (z − 1)²`.
    pub fn reduced_p1(&self) -> Result<IntPoly> {
        if self.is_degenerate() {
            return Err(Error::DegenerateSystem);
        }
        exact_divide(&self.p1.shifted(), &IntPoly::from_i64(&[1, -2, 1]))
    }
}

fn vertex_factor(offsets: &[u64], s: usize) -> SymmetricLaurentPoly {
    let mut p = SymmetricLaurentPoly::constant(BigInt::from(2 * offsets.len() + s));
    for &d in offsets {
        p = &p - &SymmetricLaurentPoly::cosine(d as usize);
    }
    p
}

/// The defining sum `q = sΣα² + sΣβ² + Σ_{j<i}(γ_j − γ_i)²`.
pub fn degeneracy_constant(spec: &ConnectionSpec) -> BigInt {
    let s = BigInt::from(spec.s());
    let squares = |v: &[u64]| -> BigInt { v.iter().map(|&x| BigInt::from(x) * BigInt::from(x)).sum() };
    let g = spec.gammas();
    let spokes: BigInt = (0..g.len()).flat_map(|i| (0..i).map(move |j| BigInt::from(g[i] - g[j]).pow(2u32))).sum();
    &s * squares(spec.alphas()) + &s * squares(spec.betas()) + spokes
}

/// The spectral system without the degeneracy check; its polynomials do not
/// depend on `n`, so it also serves formal evaluations at other parameters.
pub fn formal_system(spec: &ConnectionSpec) -> SpectralSystem {
    let s = spec.s();
    let a = vertex_factor(spec.alphas(), s);
    let b = vertex_factor(spec.betas(), s);
    let c = IntPoly::new({
        let top = spec.gammas().last().map_or(0, |&g| g as usize + 1);
        let mut coeffs = vec![BigInt::zero(); top];
        for &g in spec.gammas() {
            coeffs[g as usize] = BigInt::one();
        }
        coeffs
    });
    let cc = SymmetricLaurentPoly::reflection_product(&c);
    let two = SymmetricLaurentPoly::constant(BigInt::from(2));
    let p1 = &(&a * &b) - &cc;
    let family = spec.family();
    let pj = match family {
        Family::One => p1.clone(),
        Family::Two => &(&(&a + &two) * &b) - &cc,
        Family::Three => &(&a * &(&b + &two)) - &cc,
        Family::Four => &(&(&a + &two) * &(&b + &two)) - &cc,
    };
    SpectralSystem {
        family,
        s: s as u64,
        k: p1.degree(),
        kj: pj.degree(),
        lead: p1.leading(),
        lead_j: pj.leading(),
        q: degeneracy_constant(spec),
        a,
        b,
        c,
        p1,
        pj,
    }
}

/// Builds the spectral system; fails only when `P1` vanishes identically.
pub fn spectral_system(spec: &ConnectionSpec) -> Result<SpectralSystem> {
    let sys = formal_system(spec);
    if sys.is_degenerate() {
        return Err(Error::DegenerateSystem);
    }
    Ok(sys)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyReport {
    #[serde(with = "crate::bigjson::bigint")]
    pub p1_at_1: BigInt,
    #[serde(with = "crate::bigjson::bigint")]
    pub dp1_at_1: BigInt,
    #[serde(with = "crate::bigjson::bigint")]
    pub ddp1_at_1: BigInt,
    #[serde(with = "crate::bigjson::bigint")]
    pub q: BigInt,
}

/// `P1(1)`, `P1'(1)`, `P1''(1)` and `q`; panics unless `P1''(1) = −2q`.
pub fn degeneracy_report(sys: &SpectralSystem) -> DegeneracyReport {
    let report = DegeneracyReport {
        p1_at_1: sys.p1.derivative_at_one(0),
        dp1_at_1: sys.p1.derivative_at_one(1),
        ddp1_at_1: sys.p1.derivative_at_one(2),
        q: sys.q.clone(),
    };
    assert_eq!(report.ddp1_at_1, -BigInt::from(2) * &sys.q, "P1''(1) must equal -2q");
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ResultantExact,
    ChebyshevFloat,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeCount {
    #[serde(with = "crate::bigjson::biguint")]
    pub tau: BigUint,
    pub method: Method,
    /// The resultant magnitudes the count was assembled from.
    #[serde(with = "crate::bigjson::bigint_vec")]
    pub parts: Vec<BigInt>,
}

/// Exact τ from the resultant identities, by the family's formula at
/// parameter `n`, without checking that the graph exists or is connected.
///
/// Family 1: `n·s·|Res(C̃1, Φ_n)|`. Families 2–4 (even `n`, `m = n/2`):
/// `(n·s/4)·|Res(z^m + 1, z^kj·Pj)|·|Res(Φ_m, C̃1)|`, where
/// `Φ_m = 1 + z + … + z^{m−1}` and `C̃1 = z^k·P1/(z − 1)²`.
pub fn closed_form_tau(sys: &SpectralSystem, n: u64) -> Result<TreeCount> {
    assert!(n >= 1, "n must be positive");
    let ns = BigInt::from(n) * BigInt::from(sys.s);
    let (tau, parts) = if sys.family == Family::One {
        let r = if sys.is_degenerate() {
            // perfect matching: connected only for n = 1
            BigInt::from(u8::from(n == 1))
        } else {
            resultant_with_cyclotomic_quotient(&sys.reduced_p1()?, n)?.abs()
        };
        (&ns * &r, vec![r])
    } else {
        if n % 2 == 1 {
            return Err(Error::HalfWithoutEvenN { n });
        }
        let m = n / 2;
        let r1 = resultant_with_binomial(&sys.pj.shifted(), m, 1)?.abs();
        let r2 = if sys.is_degenerate() {
            BigInt::from(u8::from(m == 1))
        } else {
            resultant_with_cyclotomic_quotient(&sys.reduced_p1()?, m)?.abs()
        };
        let (quot, rem) = (&ns * &r1 * &r2).div_rem(&BigInt::from(4));
        if !rem.is_zero() {
            return Err(Error::NonIntegralResult(format!("{}·{}·{}/4", ns, r1, r2)));
        }
        (quot, vec![r1, r2])
    };
    Ok(TreeCount { tau: tau.to_biguint().expect("product of magnitudes"), method: Method::ResultantExact, parts })
}

/// Exact spanning-tree count of a connected spec via resultants.
pub fn tree_count_closed(spec: &ConnectionSpec) -> Result<TreeCount> {
    if spec.s() == 0 || !is_connected(spec) {
        return Err(Error::NotConnected);
    }
    closed_form_tau(&formal_system(spec), spec.n())
}

/// Matrix-Tree count wrapped in a [`TreeCount`].
pub fn tree_count_by_oracle(spec: &ConnectionSpec) -> TreeCount {
    TreeCount {
        tau: crate::linalg::tree_count_oracle(&crate::model::realize(spec)),
        method: Method::Oracle,
        parts: Vec::new(),
    }
}

#[derive(Clone, Debug)]
pub struct ChebyshevEstimate {
    pub value: Real,
    /// Estimated relative error, from re-evaluation at a higher precision.
    pub rel_error: f64,
    pub digits: u32,
}

impl ChebyshevEstimate {
    pub fn to_f64(&self) -> f64 {
        hp::to_f64(&self.value)
    }

    /// Nearest integer to the estimate.
    pub fn rounded(&self) -> BigInt {
        let text = hp::to_decimal_string(&self.value, (self.digits as usize).max(20));
        let x: f64 = text.parse().unwrap_or(f64::NAN);
        if x.abs() < 1e15 {
            return BigInt::from(x.round() as i64);
        }
        let half = hp::from_f64(0.5, hp::bits_for_digits(self.digits));
        let floor = (&self.value + &half).floor();
        floor.to_int().value().to_string().parse().expect("integer")
    }
}

/// τ as the floating Chebyshev product over the roots of the transforms.
pub fn tree_count_chebyshev(spec: &ConnectionSpec, digits: u32) -> Result<ChebyshevEstimate> {
    if spec.s() == 0 || !is_connected(spec) {
        return Err(Error::NotConnected);
    }
    let sys = spectral_system(spec)?;
    let low = chebyshev_value(&sys, spec.n(), digits)?;
    let high = chebyshev_value(&sys, spec.n(), digits + 16)?;
    let diff = hp::abs(&(&high - &low));
    let rel = hp::to_f64(&(diff / &high)).max(10f64.powi(-(digits as i32)));
    Ok(ChebyshevEstimate { value: low, rel_error: rel, digits })
}

/// Roots of `K(w)` with multiplicity, the transform of `P` (optionally with
/// the simple root `w = 1` removed).
fn transform_roots(p: &SymmetricLaurentPoly, drop_one: bool, digits: u32) -> Result<Vec<(Complex, usize)>> {
    let mut k = p.chebyshev_transform().k;
    if drop_one {
        k = exact_divide(&k, &IntPoly::from_i64(&[-1, 1]))?;
    }
    Ok(find_roots(&k, digits).into_iter().map(|r| (r.value, r.multiplicity)).collect())
}

fn chebyshev_value(sys: &SpectralSystem, n: u64, digits: u32) -> Result<Real> {
    let bits = hp::bits_for_digits(digits);
    let one = Complex::one(bits);
    let zero = Complex::zero(bits);
    let two = Complex::from_f64(2.0, 0.0, bits);
    let factor = |roots: &[(Complex, usize)], order: u64, shift: &Complex| -> Real {
        let mut acc = hp::from_i64(1, bits);
        for (w, mult) in roots {
            let t = chebyshev_t_with(order, w, &one, &zero);
            let term = (&(&two * &t) + shift).abs();
            for _ in 0..*mult {
                acc *= &term;
            }
        }
        acc
    };
    let ns = hp::from_bigint(&(BigInt::from(n) * BigInt::from(sys.s)), bits);
    let q = hp::from_bigint(&sys.q, bits);
    let w = transform_roots(&sys.p1, true, digits)?;
    let neg_two = -&two;
    let value = if sys.family == Family::One {
        let lead = hp::from_bigint(&sys.lead.abs().pow(n as u32), bits);
        ns * lead / q * factor(&w, n, &neg_two)
    } else {
        let m = n / 2;
        let v = transform_roots(&sys.pj, false, digits)?;
        let leads = hp::from_bigint(&(sys.lead.abs() * sys.lead_j.abs()).pow(m as u32), bits);
        let four = hp::from_i64(4, bits);
        ns * leads / (four * q) * factor(&v, m, &two) * factor(&w, m, &neg_two)
    };
    Ok(value)
}
