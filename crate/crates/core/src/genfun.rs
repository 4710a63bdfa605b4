//! Rational generating functions of spanning-tree sequences.
//!
//! Terms come from the exact closed form; the minimal linear recurrence is
//! found by Berlekamp–Massey over ℚ and turned into `N(x)/Q(x)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::closed_form::{closed_form_tau, formal_system, SpectralSystem};
use crate::error::{Error, Result};
use crate::model::{ConnectionSpec, Family};
use crate::poly::IntPoly;

pub const DEFAULT_MAX_ORDER: usize = 128;

/// `a(1), a(2), …` where `a(n)` is τ at parameter `n` (family 1) or `2n`
/// (families 2–4).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauSequence {
    pub family: Family,
    /// Parameter of term `a(n)` is `stride·n`.
    pub stride: u64,
    #[serde(serialize_with = "serialize_biguints")]
    pub values: Vec<BigUint>,
}

fn serialize_biguints<S: Serializer>(xs: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    let ints: Vec<BigInt> = xs.iter().cloned().map(BigInt::from).collect();
    crate::bigjson::serialize_bigint_vec(&ints, s)
}

impl TauSequence {
    pub fn as_integers(&self) -> Vec<BigInt> {
        self.values.iter().cloned().map(BigInt::from).collect()
    }
}

/// First `count` formal values of the family's closed formula.
pub fn tau_sequence(spec: &ConnectionSpec, count: usize) -> Result<TauSequence> {
    tau_sequence_from(&formal_system(spec), count)
}

pub fn tau_sequence_from(sys: &SpectralSystem, count: usize) -> Result<TauSequence> {
    let stride = if sys.family == Family::One { 1 } else { 2 };
    let values =
        (1..=count as u64).map(|n| closed_form_tau(sys, stride * n).map(|t| t.tau)).collect::<Result<Vec<_>>>()?;
    Ok(TauSequence { family: sys.family, stride, values })
}

/// `Q(0)·a(n) + Q_1·a(n−1) + … + Q_L·a(n−L) = 0` for all `n > L`, where
/// `Q` is the (integer, primitive) connection polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub order: usize,
    pub connection: IntPoly,
}

impl Recurrence {
    /// Coefficients `r_i` of `a(n) = Σ r_i·a(n−i)`, as exact rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let q0 = BigRational::from_integer(self.connection.coeff(0));
        (1..=self.order).map(|i| -BigRational::from_integer(self.connection.coeff(i)) / &q0).collect()
    }

    /// Extends `terms` to `count` entries with the recurrence.
    pub fn extend(&self, terms: &[BigInt], count: usize) -> Vec<BigRational> {
        let r = self.coefficients();
        let mut out: Vec<BigRational> = terms.iter().cloned().map(BigRational::from_integer).collect();
        while out.len() < count {
            let n = out.len();
            let next = (1..=self.order).map(|i| &r[i - 1] * &out[n - i]).sum();
            out.push(next);
        }
        out.truncate(count);
        out
    }
}

/// Minimal linear recurrence of `terms` by Berlekamp–Massey over ℚ.
///
/// Needs at least `2·max_order + 2` terms so that any recurrence of order up
/// to `max_order` is determined, and checks the result on every term.
pub fn find_recurrence(terms: &[BigInt], max_order: usize) -> Result<Recurrence> {
    let needed = 2 * max_order + 2;
    if terms.len() < needed {
        return Err(Error::InsufficientTerms { needed, got: terms.len() });
    }
    let s: Vec<BigRational> = terms.iter().cloned().map(BigRational::from_integer).collect();
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last = BigRational::one();
    for n in 0..s.len() {
        let d: BigRational = &s[n] + (1..=l).map(|i| &c[i] * &s[n - i]).sum::<BigRational>();
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &last;
        let previous = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = previous;
            last = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    if l > max_order {
        return Err(Error::OrderExceeded { max_order });
    }
    c.resize(l + 1, BigRational::zero());
    let denom = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut connection =
        IntPoly::new(c.iter().map(|x| (x * BigRational::from_integer(denom.clone())).to_integer()).collect());
    let content = connection.content();
    connection = connection.div_scalar_exact(&content);
    if connection.coeff(0).is_negative() {
        connection = -connection;
    }
    let rec = Recurrence { order: l, connection };
    let holds =
        (l..terms.len()).all(|n| (0..=l).map(|i| rec.connection.coeff(i) * &terms[n - i]).sum::<BigInt>().is_zero());
    assert!(holds, "Berlekamp-Massey result fails on the supplied terms");
    Ok(rec)
}

/// `F(x) = N(x)/Q(x) = Σ_{n≥1} a(n)·x^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
    pub recurrence: Recurrence,
}

impl Serialize for RationalGF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RationalGF", 3)?;
        st.serialize_field("numerator", &self.numerator)?;
        st.serialize_field("denominator", &self.denominator)?;
        st.serialize_field("order", &self.recurrence.order)?;
        st.end()
    }
}

impl RationalGF {
    /// Coefficients of `x^0..x^{count−1}` in the expansion of `N/Q`.
    pub fn series(&self, count: usize) -> Vec<BigRational> {
        let q0 = BigRational::from_integer(self.denominator.coeff(0));
        let mut out: Vec<BigRational> = Vec::with_capacity(count);
        for n in 0..count {
            let mut acc = BigRational::from_integer(self.numerator.coeff(n));
            for i in 1..=n.min(self.denominator.deg()) {
                acc -= BigRational::from_integer(self.denominator.coeff(i)) * &out[n - i];
            }
            out.push(acc / &q0);
        }
        out
    }

    /// `a(1)..a(count)` as predicted by the rational function.
    pub fn predict(&self, count: usize) -> Vec<BigRational> {
        self.series(count + 1).split_off(1)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.numerator.eval_f64(x) / self.denominator.eval_f64(x)
    }
}

/// Builds `N/Q` from the terms and their recurrence: `Q` is the connection
/// polynomial and `N = A(x)·Q(x) mod x^{L+1}` with `A = Σ a(n) x^n`.
pub fn genfun(terms: &[BigInt], recurrence: &Recurrence) -> RationalGF {
    let l = recurrence.order;
    let q = &recurrence.connection;
    let mut series = vec![BigInt::zero()];
    series.extend(terms.iter().take(l).cloned());
    let a = IntPoly::new(series);
    let product = &a * q;
    let numerator = IntPoly::new(product.coeffs().iter().take(l + 1).cloned().collect());
    let g = numerator.gcd(q);
    let (mut numerator, mut denominator) = if g.deg() > 0 {
        (numerator.div_exact(&g).expect("gcd divides"), q.div_exact(&g).expect("gcd divides"))
    } else {
        (numerator, q.clone())
    };
    if denominator.coeff(0).is_negative() {
        numerator = -numerator;
        denominator = -denominator;
    }
    RationalGF { numerator, denominator, recurrence: recurrence.clone() }
}

/// Checks `F(x/ℓ) = F(1/(ℓx))` as an identity of rational functions.
///
/// With `d = max(deg N, deg Q)` and `Ñ(x) = ℓ^d·N(x/ℓ) = Σ n_i ℓ^{d−i} x^i`,
/// the right side is `Ñ^R/Q̃^R` with `R` the reversal in degree `d`, so the
/// check is `Ñ·Q̃^R = Ñ^R·Q̃`. For `ℓ = 1` this is `F(x) = F(1/x)`.
pub fn verify_symmetry(gf: &RationalGF, scale: &BigInt) -> bool {
    assert!(!scale.is_zero(), "scale must be nonzero");
    let d = gf.numerator.deg().max(gf.denominator.deg());
    let scaled = |p: &IntPoly| -> Vec<BigInt> { (0..=d).map(|i| p.coeff(i) * Pow::pow(scale, d - i)).collect() };
    let (n, q) = (scaled(&gf.numerator), scaled(&gf.denominator));
    let rev = |v: &[BigInt]| -> IntPoly { IntPoly::new(v.iter().rev().cloned().collect()) };
    let (n, q, nr, qr) = (IntPoly::new(n.clone()), IntPoly::new(q.clone()), rev(&n), rev(&q));
    &n * &qr == &nr * &q
}

/// `ℓ = |a_k|` for family 1 and `|a_k·lead(Pj)|` for families 2–4.
pub fn family_scale(sys: &SpectralSystem) -> BigInt {
    match sys.family {
        Family::One => sys.lead.abs(),
        _ => (&sys.lead * &sys.lead_j).abs(),
    }
}

/// Everything the generating-function analysis produces for one spec.
#[derive(Clone, Debug, Serialize)]
pub struct GenfunAnalysis {
    pub family: Family,
    /// Term `a(n)` is τ at parameter `stride·n`.
    pub stride: u64,
    pub terms_used: usize,
    pub gf: RationalGF,
    #[serde(with = "crate::bigjson::bigint_vec")]
    pub recurrence: Vec<BigInt>,
    #[serde(with = "crate::bigjson::bigint")]
    pub scale: BigInt,
    pub symmetric: bool,
    /// Held-out terms reproduced exactly by the recurrence.
    pub predicted_terms: usize,
    pub predictions_hold: bool,
}

/// Fits the recurrence on `2·max_order + 2` terms and checks it against ten
/// further terms.
pub fn analyze(spec: &ConnectionSpec, max_order: usize) -> Result<GenfunAnalysis> {
    let sys = formal_system(spec);
    let fit = 2 * max_order + 2;
    let held_out = 10;
    let seq = tau_sequence_from(&sys, fit + held_out)?;
    let all = seq.as_integers();
    let rec = find_recurrence(&all[..fit], max_order)?;
    let gf = genfun(&all[..fit], &rec);
    let predicted = gf.predict(fit + held_out);
    let predictions_hold = predicted.iter().zip(&all).all(|(p, a)| p.is_integer() && &p.to_integer() == a);
    let scale = family_scale(&sys);
    Ok(GenfunAnalysis {
        family: sys.family,
        stride: seq.stride,
        terms_used: fit,
        symmetric: verify_symmetry(&gf, &scale),
        recurrence: rec.connection.coeffs().to_vec(),
        scale,
        predicted_terms: held_out,
        predictions_hold,
        gf,
    })
}
