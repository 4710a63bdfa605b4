//! Perfect-square decompositions of spanning-tree counts.
//!
//! τ is `n·s·a²` or `n·s·q·b²` in family 1 depending on the parity of `n`,
//! and `(n·s·q/4)·a²` in families 2–4, where the square-free `q` depends on
//! the parity of `n/2`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::closed_form::TreeCount;
use crate::error::{Error, Result};
use crate::model::{ConnectionSpec, Family};
use crate::poly::{isqrt_exact, squarefree_part};

/// `raw = X·Y − (h2 − h1)²` and its square-free part when `raw > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructureConstant {
    pub raw: i64,
    pub value: Option<u64>,
}

impl StructureConstant {
    fn new(raw: i64) -> Self {
        let value = u64::try_from(raw).ok().filter(|&v| v > 0).map(squarefree_part);
        StructureConstant { raw, value }
    }

    fn require(&self) -> Result<u64> {
        self.value.ok_or(Error::NonPositiveStructure { value: self.raw.to_string() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArithmeticProfile {
    pub family: Family,
    pub s: u64,
    pub k1: u64,
    pub k2: u64,
    pub m1: u64,
    pub m2: u64,
    pub h1: u64,
    pub h2: u64,
    /// Constant of the even branch (`n` even in family 1, `n/2` even otherwise).
    pub q_even: StructureConstant,
    /// Constant of the odd-`n/2` branch in families 2–4; family 1's odd
    /// branch needs none.
    pub q_odd: Option<StructureConstant>,
}

fn parity_counts(values: &[u64]) -> (u64, u64) {
    let odd = values.iter().filter(|v| *v % 2 == 1).count() as u64;
    (odd, values.len() as u64 - odd)
}

pub fn arithmetic_profile(spec: &ConnectionSpec) -> ArithmeticProfile {
    let (k1, k2) = parity_counts(spec.alphas());
    let (m1, m2) = parity_counts(spec.betas());
    let (h1, h2) = parity_counts(spec.gammas());
    let s = spec.s() as i64;
    let x = 4 * k1 as i64 + s;
    let y = 4 * m1 as i64 + s;
    let d = h2 as i64 - h1 as i64;
    let raw = |dx: i64, dy: i64| StructureConstant::new((x + dx) * (y + dy) - d * d);
    let family = spec.family();
    let q_odd = match family {
        Family::One => None,
        Family::Two => Some(raw(2, 0)),
        Family::Three => Some(raw(0, 2)),
        Family::Four => Some(raw(2, 2)),
    };
    ArithmeticProfile { family, s: s as u64, k1, k2, m1, m2, h1, h2, q_even: raw(0, 0), q_odd }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Odd,
    Even,
}

/// `τ = (numerator / denominator) · witness²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub branch: Branch,
    /// Square-free structure constant of the branch (1 when none applies).
    pub structure: u64,
    #[serde(with = "crate::bigjson::bigint")]
    pub numerator: BigInt,
    pub denominator: u32,
    #[serde(with = "crate::bigjson::biguint")]
    pub witness: BigUint,
    /// Whether the parity remark applied (odd `n/2`, `s` and `q`), in which
    /// case the witness was checked to be even.
    pub parity_checked: bool,
}

/// Splits τ into cofactor and square for the branch selected by `n`.
pub fn verify_square_structure(spec: &ConnectionSpec, tau: &TreeCount) -> Result<SquareWitness> {
    verify_square_structure_at(&arithmetic_profile(spec), spec.n(), &tau.tau)
}

/// As [`verify_square_structure`], from a profile and a bare τ at parameter `n`.
pub fn verify_square_structure_at(profile: &ArithmeticProfile, n: u64, tau: &BigUint) -> Result<SquareWitness> {
    let ns = BigInt::from(n) * BigInt::from(profile.s);
    let tau = BigInt::from(tau.clone());
    let (branch, structure, denominator) = match profile.family {
        Family::One if n % 2 == 1 => (Branch::Odd, 1, 1u32),
        Family::One => (Branch::Even, profile.q_even.require()?, 1),
        _ => {
            assert!(n % 2 == 0, "families 2-4 need even n");
            if (n / 2) % 2 == 1 {
                let q = profile.q_odd.expect("families 2-4 carry an odd-branch constant");
                (Branch::Odd, q.require()?, 4)
            } else {
                (Branch::Even, profile.q_even.require()?, 4)
            }
        }
    };
    let numerator = &ns * BigInt::from(structure);
    let scaled = &tau * BigInt::from(denominator);
    let (square, rem) = scaled.div_rem(&numerator);
    if !rem.is_zero() {
        return Err(Error::NonDivisible { cofactor: format!("{numerator}/{denominator}"), value: tau.to_string() });
    }
    let witness = isqrt_exact(&square).ok_or_else(|| Error::NotAPerfectSquare(square.to_string()))?;
    let parity_checked = profile.family != Family::One && (n / 2) % 2 == 1 && profile.s % 2 == 1 && structure % 2 == 1;
    if parity_checked && witness.bit(0) {
        return Err(Error::ParityViolation(witness.to_string()));
    }
    Ok(SquareWitness { branch, structure, numerator, denominator, witness, parity_checked })
}
