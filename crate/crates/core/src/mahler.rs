//! Mahler measures and the exponential growth of spanning-tree counts.

use num_bigint::BigUint;
use num_complex::Complex64;
use serde::Serialize;

use crate::closed_form::{formal_system, tree_count_closed};
use crate::error::{Error, Result};
use crate::model::{is_connected, ConnectionSpec, Family};
use crate::poly::hp::{self, Real};
use crate::poly::{outside_root_product, roots_numeric, IntPoly, SymmetricLaurentPoly};

/// Anything with an ordinary-polynomial form of the same Mahler measure.
pub trait AsPolynomial {
    fn to_int_poly(&self) -> IntPoly;
}

impl AsPolynomial for IntPoly {
    fn to_int_poly(&self) -> IntPoly {
        self.clone()
    }
}

/// `z^k·P(z)`; the shift moves no root and leaves the measure unchanged.
impl AsPolynomial for SymmetricLaurentPoly {
    fn to_int_poly(&self) -> IntPoly {
        self.shifted()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MahlerMethod {
    RootProduct,
    Quadrature,
}

#[derive(Clone, Debug)]
pub struct MahlerEstimate {
    pub value: Real,
    pub method: MahlerMethod,
    pub error_bound: f64,
    /// Rendering of the polynomial the measure belongs to.
    pub polynomial: String,
    /// Decimal digits carried by `value`.
    pub digits: u32,
}

impl MahlerEstimate {
    pub fn to_f64(&self) -> f64 {
        hp::to_f64(&self.value)
    }

    pub fn decimal(&self) -> String {
        hp::to_decimal_string(&self.value, self.digits.min(60) as usize)
    }
}

impl Serialize for MahlerEstimate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MahlerEstimate", 5)?;
        st.serialize_field("value", &self.to_f64())?;
        st.serialize_field("decimal", &self.decimal())?;
        st.serialize_field("method", &self.method)?;
        st.serialize_field("error_bound", &self.error_bound)?;
        st.serialize_field("polynomial", &self.polynomial)?;
        st.end()
    }
}

/// `|lead| · Π |ρ|` over the roots outside the unit circle.
pub fn mahler_root_product<P: AsPolynomial + ?Sized>(p: &P, digits: u32) -> Result<MahlerEstimate> {
    let f = p.to_int_poly();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let bits = hp::bits_for_digits(digits);
    let (value, err) = if f.deg() == 0 {
        (hp::abs(&hp::from_bigint(&f.leading(), bits)), hp::from_i64(0, bits))
    } else {
        let set = roots_numeric(&f, digits)?;
        outside_root_product(&f, &set)
    };
    Ok(MahlerEstimate {
        value,
        method: MahlerMethod::RootProduct,
        error_bound: hp::to_f64(&err),
        polynomial: f.to_string(),
        digits,
    })
}

/// `exp(∫₀¹ log|P(e^{2πit})| dt)` by the trapezoidal rule, doubling the
/// number of nodes until two successive estimates of the log-integral agree.
///
/// Factors `z`, `z − 1` and `z + 1` have measure 1 and are removed exactly
/// first. The node grid is offset from `t = 0` so that no node lands on a
/// root of unity. Fails when `max_points` nodes do not suffice.
pub fn mahler_quadrature<P: AsPolynomial + ?Sized>(p: &P, max_points: usize) -> Result<MahlerEstimate> {
    let f = p.to_int_poly();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let zeros = f.coeffs().iter().take_while(|c| num_traits::Zero::is_zero(*c)).count();
    let g = IntPoly::new(f.coeffs()[zeros..].to_vec());
    let (g, _) = g.strip_linear_factor(1);
    let (g, _) = g.strip_linear_factor(-1);
    let coeffs: Vec<f64> = g.coeffs().iter().map(crate::poly::bigint_to_f64).collect();

    const OFFSET: f64 = std::f64::consts::FRAC_1_PI;
    let integral = |points: usize| -> f64 {
        let step = std::f64::consts::TAU / points as f64;
        let sum: f64 = (0..points)
            .map(|k| {
                let z = Complex64::from_polar(1.0, step * (k as f64 + OFFSET));
                let v = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
                v.norm().ln()
            })
            .sum();
        sum / points as f64
    };

    let mut points = 16;
    let mut previous = integral(points);
    loop {
        if points * 2 > max_points {
            return Err(Error::NonConvergence { points });
        }
        points *= 2;
        let current = integral(points);
        let diff = (current - previous).abs();
        if diff <= 1e-12 * current.abs().max(1.0) {
            let value = current.exp();
            let bits = hp::bits_for_digits(16);
            return Ok(MahlerEstimate {
                value: hp::from_f64(value, bits),
                method: MahlerMethod::Quadrature,
                error_bound: value * (diff + 1e-13),
                polynomial: f.to_string(),
                digits: 16,
            });
        }
        previous = current;
    }
}

/// Default node cap for [`mahler_quadrature`].
pub const QUADRATURE_MAX_POINTS: usize = 1 << 22;

/// Growth base of τ: `M(P1)` for family 1, `M(Pj·P1)` for families 2–4.
pub fn growth_base(spec: &ConnectionSpec, digits: u32) -> Result<MahlerEstimate> {
    let sys = crate::closed_form::spectral_system(spec)?;
    if sys.family == Family::One {
        mahler_root_product(&sys.p1, digits)
    } else {
        mahler_root_product(&(&sys.pj * &sys.p1), digits)
    }
}

/// `(n·s/q)·A^n` for family 1, `(n·s/(4q))·M(Pj·P1)^{n/2}` for families 2–4.
pub fn asymptotic_prediction(spec: &ConnectionSpec, n: u64, digits: u32) -> Result<Real> {
    if spec.s() == 0 || !is_connected(spec) {
        return Err(Error::NotConnected);
    }
    let base = growth_base(spec, digits)?;
    prediction_from_base(spec, &base.value, n, digits)
}

fn prediction_from_base(spec: &ConnectionSpec, base: &Real, n: u64, digits: u32) -> Result<Real> {
    let bits = hp::bits_for_digits(digits);
    let sys = formal_system(spec);
    let ns = hp::from_i64(n as i64 * spec.s() as i64, bits);
    let q = hp::from_bigint(&sys.q, bits);
    Ok(if sys.family == Family::One {
        ns / q * base.powi(n.into())
    } else {
        if n % 2 == 1 {
            return Err(Error::HalfWithoutEvenN { n });
        }
        ns / (hp::from_i64(4, bits) * q) * base.powi((n / 2).into())
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    #[serde(with = "crate::bigjson::biguint")]
    pub tau: BigUint,
    pub prediction: f64,
    pub ratio: f64,
    /// `|ratio − 1|`, kept as a decimal string since it underflows `f64`
    /// for large `n`.
    pub deviation: String,
    #[serde(skip)]
    pub deviation_hp: Real,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub family: Family,
    pub base: MahlerEstimate,
    /// Exponent applied to the base: `"n"` for family 1, `"n/2"` otherwise.
    pub exponent: &'static str,
    pub rows: Vec<ConvergenceRow>,
    /// Whether `|ratio − 1|` strictly decreases along `rows`.
    pub decreasing: bool,
}

/// τ against its asymptotic prediction for each `n` in `ns`.
pub fn convergence_report(spec: &ConnectionSpec, ns: &[u64], digits: u32) -> Result<ConvergenceReport> {
    if spec.s() == 0 || !is_connected(spec) {
        return Err(Error::NotConnected);
    }
    let base = growth_base(spec, digits)?;
    let bits = hp::bits_for_digits(digits);
    let one = hp::from_i64(1, bits);
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let at_n = spec.with_n(n)?;
        let tau = tree_count_closed(&at_n)?.tau;
        let prediction = prediction_from_base(&at_n, &base.value, n, digits)?;
        let ratio = hp::from_bigint(&tau.clone().into(), bits) / &prediction;
        let deviation_hp = hp::abs(&(&ratio - &one));
        rows.push(ConvergenceRow {
            n,
            tau,
            prediction: hp::to_f64(&prediction),
            ratio: hp::to_f64(&ratio),
            deviation: hp::to_decimal_string(&deviation_hp, 12),
            deviation_hp,
        });
    }
    let decreasing = rows.windows(2).all(|w| w[1].deviation_hp < w[0].deviation_hp);
    Ok(ConvergenceReport {
        family: spec.family(),
        base,
        exponent: if spec.family() == Family::One { "n" } else { "n/2" },
        rows,
        decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_spec, RawSpec};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn spec(n: u64, a: &[i64], b: &[i64], g: &[i64], hr: bool, ht: bool) -> ConnectionSpec {
        let raw = RawSpec { n, alphas: a.to_vec(), betas: b.to_vec(), gammas: g.to_vec(), half_r: hr, half_t: ht };
        validate_spec(&raw, true).unwrap()
    }

    #[test]
    fn root_product_constants() {
        let a = mahler_root_product(&p(&[1, -4, 1]), 64).unwrap();
        assert!((a.to_f64() - (2.0 + 3f64.sqrt())).abs() < 1e-14);
        assert!(a.decimal().starts_with("3.73205080756887729352744634150587236694"));
        let c = mahler_root_product(&p(&[-3, 8, -3]), 64).unwrap();
        assert!((c.to_f64() - (4.0 + 7f64.sqrt())).abs() < 1e-14);
        let one = mahler_root_product(&p(&[1, -2, 1]), 64).unwrap();
        assert_eq!(one.to_f64(), 1.0);
        assert_eq!(mahler_root_product(&p(&[-5]), 64).unwrap().to_f64(), 5.0);
    }

    #[test]
    fn quadrature_constants() {
        let p1 = SymmetricLaurentPoly::from_i64(&[10, -6, 1]);
        let q = mahler_quadrature(&p1, 1 << 16).unwrap();
        assert!((q.to_f64().ln() - (2.0 + 3f64.sqrt()).ln()).abs() < 1e-4);
        assert!((mahler_quadrature(&p(&[5]), 1 << 16).unwrap().to_f64() - 5.0).abs() < 1e-12);
        let d = mahler_quadrature(&p(&[-3, 14, -3]), 1 << 16).unwrap();
        assert!((d.to_f64() - (7.0 + 2.0 * 10f64.sqrt())).abs() < 1e-4);
    }

    #[test]
    fn quadrature_gives_up_past_cap() {
        assert_eq!(mahler_quadrature(&p(&[1, -4, 1]), 16).unwrap_err(), Error::NonConvergence { points: 16 });
    }

    #[test]
    fn family_one_prediction() {
        let s = spec(20, &[1], &[1], &[0], false, false);
        let ratio = hp::from_bigint(&tree_count_closed(&s).unwrap().tau.into(), 300)
            / asymptotic_prediction(&s, 20, 64).unwrap();
        let r = hp::to_f64(&ratio);
        assert!((1.0 - 1e-10..=1.0).contains(&r), "{r}");
        let s4 = spec(4, &[1], &[1], &[0], false, false);
        let pred = hp::to_f64(&asymptotic_prediction(&s4, 4, 64).unwrap());
        assert!((pred - 388.0).abs() < 0.1);
    }

    #[test]
    fn convergence_tables() {
        let s = spec(10, &[1], &[1], &[0], false, false);
        let rep = convergence_report(&s, &[10, 20, 40], 64).unwrap();
        assert!(rep.decreasing);
        assert!(hp::to_f64(&rep.rows[1].deviation_hp) < 1e-10);
        let s3 = spec(8, &[1], &[], &[0], false, true);
        let rep = convergence_report(&s3, &[8, 16, 32], 64).unwrap();
        assert!(rep.decreasing);
        assert_eq!(rep.exponent, "n/2");
        let s2 = spec(8, &[1], &[], &[0], true, false);
        let base = growth_base(&s2, 64).unwrap().to_f64();
        assert!((base - (2.0 + 3f64.sqrt())).abs() < 1e-12);
        let disconnected = spec(6, &[2], &[], &[0], false, false);
        assert_eq!(convergence_report(&disconnected, &[6], 64).unwrap_err(), Error::NotConnected);
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-5i64..=5, 2..5)
            .prop_map(|c| p(&c))
            .prop_filter("nonconstant", |f| f.deg() > 0 && !f.coeff(0).is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn measure_is_multiplicative(a in small_poly(), b in small_poly()) {
            let (Ok(ma), Ok(mb), Ok(mab)) = (
                mahler_root_product(&a, 32),
                mahler_root_product(&b, 32),
                mahler_root_product(&(&a * &b), 32),
            ) else {
                return Ok(());
            };
            let err = hp::to_f64(&hp::abs(&(ma.value * mb.value - mab.value.clone())));
            prop_assert!(err < 1e-20 * mab.to_f64().max(1.0));
            prop_assert!(mab.to_f64() >= 1.0 - 1e-12);
        }

        #[test]
        fn quadrature_agrees_with_roots(a in small_poly()) {
            let Ok(exact) = mahler_root_product(&a, 32) else { return Ok(()) };
            if let Ok(q) = mahler_quadrature(&a, 1 << 18) {
                prop_assert!((q.to_f64() - exact.to_f64()).abs() < 1e-6 * exact.to_f64());
            }
        }
    }
}
