//! Bicirculant graph specifications `BC(Z_n; R, T, S)`.
//!
//! `R = {±α_j} (∪ {n/2})` carries the right-part edges, `T = {±β_j} (∪ {n/2})`
//! the left-part edges, and `S = {γ_j}` the spokes `h_0 ~ (h+γ)_1`.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unvalidated connection data, as read from JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSpec {
    pub n: u64,
    #[serde(default)]
    pub alphas: Vec<i64>,
    #[serde(default)]
    pub betas: Vec<i64>,
    #[serde(default)]
    pub gammas: Vec<i64>,
    #[serde(default)]
    pub half_r: bool,
    #[serde(default)]
    pub half_t: bool,
}

/// A validated, normalized bicirculant specification.
///
/// Lists are sorted and duplicate-free; `0 < α, β < n/2`, `0 <= γ < n`, and
/// the half flags only appear with even `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct ConnectionSpec {
    n: u64,
    alphas: Vec<u64>,
    betas: Vec<u64>,
    gammas: Vec<u64>,
    half_r: bool,
    half_t: bool,
}

impl TryFrom<RawSpec> for ConnectionSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        validate_spec(&raw, false)
    }
}

impl From<ConnectionSpec> for RawSpec {
    fn from(spec: ConnectionSpec) -> Self {
        let signed = |v: Vec<u64>| v.into_iter().map(|x| x as i64).collect();
        RawSpec {
            n: spec.n,
            alphas: signed(spec.alphas),
            betas: signed(spec.betas),
            gammas: signed(spec.gammas),
            half_r: spec.half_r,
            half_t: spec.half_t,
        }
    }
}

impl ConnectionSpec {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alphas(&self) -> &[u64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[u64] {
        &self.betas
    }

    pub fn gammas(&self) -> &[u64] {
        &self.gammas
    }

    pub fn half_r(&self) -> bool {
        self.half_r
    }

    pub fn half_t(&self) -> bool {
        self.half_t
    }

    /// `r`, the number of `±α` pairs.
    pub fn r(&self) -> usize {
        self.alphas.len()
    }

    /// `t`, the number of `±β` pairs.
    pub fn t(&self) -> usize {
        self.betas.len()
    }

    /// `s = |S|`.
    pub fn s(&self) -> usize {
        self.gammas.len()
    }

    pub fn family(&self) -> Family {
        classify_family(self)
    }

    /// The same connection sets over a different cyclic group order.
    pub fn with_n(&self, n: u64) -> Result<ConnectionSpec> {
        let mut raw = RawSpec::from(self.clone());
        raw.n = n;
        validate_spec(&raw, false)
    }

    pub fn from_json(text: &str) -> Result<ConnectionSpec> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        validate_spec(&raw, false)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization is infallible")
    }
}

impl fmt::Display for ConnectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BC(Z_{}; α={:?}{}, β={:?}{}, γ={:?})",
            self.n,
            self.alphas,
            if self.half_r { "+n/2" } else { "" },
            self.betas,
            if self.half_t { "+n/2" } else { "" },
            self.gammas
        )
    }
}

fn normalize(values: &[i64]) -> Vec<i64> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Validates and normalizes raw connection data.
///
/// With `require_spokes`, an empty `S` is rejected with
/// [`Error::EmptySpokes`].
pub fn validate_spec(raw: &RawSpec, require_spokes: bool) -> Result<ConnectionSpec> {
    let n = raw.n;
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if (raw.half_r || raw.half_t) && n % 2 == 1 {
        return Err(Error::HalfWithoutEvenN { n });
    }
    let half_range = |set: &'static str, values: &[i64]| -> Result<Vec<u64>> {
        normalize(values)
            .into_iter()
            .map(|v| {
                // 0 < v < n/2
                if v >= 1 && (2 * v as i128) < n as i128 {
                    Ok(v as u64)
                } else {
                    Err(Error::OutOfRange { set, value: v, n, bound: "must satisfy 0 < x < n/2" })
                }
            })
            .collect()
    };
    let alphas = half_range("alpha", &raw.alphas)?;
    let betas = half_range("beta", &raw.betas)?;
    let gammas = normalize(&raw.gammas)
        .into_iter()
        .map(|v| {
            if v >= 0 && (v as u64) < n {
                Ok(v as u64)
            } else {
                Err(Error::OutOfRange { set: "gamma", value: v, n, bound: "must satisfy 0 <= x <= n-1" })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if require_spokes && gammas.is_empty() {
        return Err(Error::EmptySpokes);
    }
    Ok(ConnectionSpec { n, alphas, betas, gammas, half_r: raw.half_r, half_t: raw.half_t })
}

/// Which of the four families `Γ_1..Γ_4` a spec belongs to, decided by the
/// half-turn flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Family {
    One,
    Two,
    Three,
    Four,
}

impl Family {
    pub fn index(self) -> u8 {
        match self {
            Family::One => 1,
            Family::Two => 2,
            Family::Three => 3,
            Family::Four => 4,
        }
    }

    pub fn half_flags(self) -> (bool, bool) {
        match self {
            Family::One => (false, false),
            Family::Two => (true, false),
            Family::Three => (false, true),
            Family::Four => (true, true),
        }
    }

    /// Families 2–4 contain the half turn and need even `n`.
    pub fn needs_even_n(self) -> bool {
        self != Family::One
    }
}

impl From<Family> for u8 {
    fn from(f: Family) -> u8 {
        f.index()
    }
}

impl TryFrom<u8> for Family {
    type Error = String;

    fn try_from(j: u8) -> std::result::Result<Self, String> {
        match j {
            1 => Ok(Family::One),
            2 => Ok(Family::Two),
            3 => Ok(Family::Three),
            4 => Ok(Family::Four),
            other => Err(format!("family index {other} not in 1..=4")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

pub fn classify_family(spec: &ConnectionSpec) -> Family {
    match (spec.half_r, spec.half_t) {
        (false, false) => Family::One,
        (true, false) => Family::Two,
        (false, true) => Family::Three,
        (true, true) => Family::Four,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    /// `gcd(n, α_1..α_r) = 1` and `s > 0`.
    pub cond_a: bool,
    /// `gcd(n, β_1..β_t) = 1` and `s > 0`.
    pub cond_b: bool,
    /// `gcd(n, γ_l − γ_k) = 1` over spoke pairs; false when `s < 2`.
    pub cond_c: bool,
    /// Ground truth from a graph search on the realization.
    pub connected: bool,
}

impl Connectivity {
    pub fn any_gcd_condition(&self) -> bool {
        self.cond_a || self.cond_b || self.cond_c
    }
}

pub fn check_connectivity(spec: &ConnectionSpec) -> Connectivity {
    let n = spec.n;
    let s = spec.s();
    let gcd_all = |vals: &[u64]| vals.iter().fold(n, |g, &v| g.gcd(&v));
    let cond_a = s > 0 && gcd_all(&spec.alphas) == 1;
    let cond_b = s > 0 && gcd_all(&spec.betas) == 1;
    let cond_c = if s < 2 {
        false
    } else {
        let diffs: Vec<u64> = spec
            .gammas
            .iter()
            .enumerate()
            .flat_map(|(i, &gi)| spec.gammas[i + 1..].iter().map(move |&gk| gk - gi))
            .collect();
        gcd_all(&diffs) == 1
    };
    Connectivity { cond_a, cond_b, cond_c, connected: is_connected(spec) }
}

/// Breadth-first search over the implicit bicirculant adjacency, without
/// materializing the `2n × 2n` matrix.
pub fn is_connected(spec: &ConnectionSpec) -> bool {
    let n = spec.n as usize;
    let size = 2 * n;
    let mut right_steps: Vec<usize> = spec.alphas.iter().flat_map(|&a| [a as usize, n - a as usize]).collect();
    let mut left_steps: Vec<usize> = spec.betas.iter().flat_map(|&b| [b as usize, n - b as usize]).collect();
    if spec.half_r {
        right_steps.push(n / 2);
    }
    if spec.half_t {
        left_steps.push(n / 2);
    }
    let mut seen = vec![false; size];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        let (h, right) = if u < n { (u, true) } else { (u - n, false) };
        let steps = if right { &right_steps } else { &left_steps };
        let same = steps.iter().map(|&d| (h + d) % n + if right { 0 } else { n });
        let across: Vec<usize> = spec
            .gammas
            .iter()
            .map(|&g| if right { n + (h + g as usize) % n } else { (h + n - g as usize) % n })
            .collect();
        for v in same.chain(across) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == size
}

/// The materialized graph: vertices `0..n` form the right part, `n..2n` the
/// left part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphRealization {
    n: usize,
    adjacency: Vec<bool>,
}

impl GraphRealization {
    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u * self.vertex_count() + v]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let size = self.vertex_count();
        (0..size).filter(move |&v| self.adjacency[u * size + v])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().filter(|&&a| a).count() / 2
    }

    /// Dense 0/1 adjacency matrix, row-major.
    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        let size = self.vertex_count();
        (0..size).map(|u| (0..size).map(|v| self.adjacent(u, v) as u8).collect()).collect()
    }

    pub fn is_connected(&self) -> bool {
        let size = self.vertex_count();
        let mut seen = vec![false; size];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == size
    }
}

pub fn realize(spec: &ConnectionSpec) -> GraphRealization {
    let n = spec.n as usize;
    let size = 2 * n;
    let mut adjacency = vec![false; size * size];
    let mut link = |u: usize, v: usize| {
        adjacency[u * size + v] = true;
        adjacency[v * size + u] = true;
    };
    let shift = |h: usize, d: u64| (h + d as usize) % n;
    for h in 0..n {
        for &a in &spec.alphas {
            link(h, shift(h, a));
        }
        if spec.half_r {
            link(h, shift(h, spec.n / 2));
        }
        for &b in &spec.betas {
            link(n + h, n + shift(h, b));
        }
        if spec.half_t {
            link(n + h, n + shift(h, spec.n / 2));
        }
        for &g in &spec.gammas {
            link(h, n + shift(h, g));
        }
    }
    GraphRealization { n, adjacency }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn raw(n: u64, a: &[i64], b: &[i64], g: &[i64], hr: bool, ht: bool) -> RawSpec {
        RawSpec { n, alphas: a.to_vec(), betas: b.to_vec(), gammas: g.to_vec(), half_r: hr, half_t: ht }
    }

    #[test]
    fn prism_spec_is_family_one() {
        let spec = validate_spec(&raw(3, &[1], &[1], &[0], false, false), true).unwrap();
        assert_eq!(classify_family(&spec), Family::One);
    }

    #[test]
    fn half_flag_needs_even_order() {
        let err = validate_spec(&raw(3, &[], &[], &[0], true, false), false).unwrap_err();
        assert_eq!(err, Error::HalfWithoutEvenN { n: 3 });
    }

    #[test]
    fn half_r_with_empty_betas_is_family_two() {
        let spec = validate_spec(&raw(4, &[1], &[], &[0], true, false), true).unwrap();
        assert_eq!(spec.family(), Family::Two);
    }

    #[test]
    fn range_errors() {
        assert!(matches!(
            validate_spec(&raw(4, &[2], &[], &[0], false, false), false),
            Err(Error::OutOfRange { set: "alpha", value: 2, .. })
        ));
        assert!(matches!(
            validate_spec(&raw(5, &[], &[0], &[0], false, false), false),
            Err(Error::OutOfRange { set: "beta", .. })
        ));
        assert!(matches!(
            validate_spec(&raw(5, &[], &[], &[5], false, false), false),
            Err(Error::OutOfRange { set: "gamma", .. })
        ));
        assert!(matches!(
            validate_spec(&raw(5, &[], &[], &[-1], false, false), false),
            Err(Error::OutOfRange { set: "gamma", .. })
        ));
        assert_eq!(validate_spec(&raw(5, &[1], &[], &[], false, false), true), Err(Error::EmptySpokes));
        assert_eq!(validate_spec(&raw(0, &[], &[], &[], false, false), false), Err(Error::ZeroOrder));
    }

    #[test]
    fn inputs_are_sorted_and_deduplicated() {
        let spec = validate_spec(&raw(11, &[3, 1, 3], &[2, 2], &[4, 0, 4], false, false), true).unwrap();
        assert_eq!(spec.alphas(), &[1, 3]);
        assert_eq!(spec.betas(), &[2]);
        assert_eq!(spec.gammas(), &[0, 4]);
    }

    #[test]
    fn family_classification_table() {
        for (hr, ht, j) in [(false, false, 1), (true, false, 2), (false, true, 3), (true, true, 4)] {
            let spec = validate_spec(&raw(6, &[1], &[1], &[0], hr, ht), true).unwrap();
            assert_eq!(spec.family().index(), j);
            assert_eq!(spec.family().half_flags(), (hr, ht));
        }
    }

    #[test]
    fn connectivity_examples() {
        let prism = validate_spec(&raw(3, &[1], &[1], &[0], false, false), true).unwrap();
        let c = check_connectivity(&prism);
        assert!(c.cond_a && c.cond_b && !c.cond_c && c.connected);

        let split = validate_spec(&raw(4, &[], &[], &[0], false, false), true).unwrap();
        let c = check_connectivity(&split);
        assert!(!c.cond_a && !c.connected);

        // α = {2} needs n > 4; use n = 6 where gcd(6, 2) = 2.
        let split = validate_spec(&raw(6, &[2], &[], &[0], false, false), true).unwrap();
        let c = check_connectivity(&split);
        assert!(!c.cond_a && !c.connected);

        let square = validate_spec(&raw(2, &[], &[], &[0, 1], false, false), true).unwrap();
        let c = check_connectivity(&square);
        assert!(c.cond_c && c.connected);
        assert_eq!(realize(&square).edge_count(), 4);
    }

    #[test]
    fn prism_realization() {
        let spec = validate_spec(&raw(3, &[1], &[1], &[0], false, false), true).unwrap();
        let g = realize(&spec);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 9);
        for v in 0..6 {
            assert_eq!(g.degree(v), 3);
        }
        // two triangles joined by the matching i ~ i + 3
        for i in 0..3 {
            assert!(g.adjacent(i, i + 3));
            assert!(g.adjacent(i, (i + 1) % 3));
            assert!(g.adjacent(3 + i, 3 + (i + 1) % 3));
        }
    }

    #[test]
    fn family_two_n4_blocks() {
        let spec = validate_spec(&raw(4, &[1], &[], &[0], true, false), true).unwrap();
        let g = realize(&spec);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(g.adjacent(u, v), u != v, "right block is K4");
                assert!(!g.adjacent(4 + u, 4 + v), "left block is empty");
                assert_eq!(g.adjacent(u, 4 + v), u == v, "spokes are the identity");
            }
        }
    }

    #[test]
    fn smallest_case_is_k2() {
        let spec = validate_spec(&raw(1, &[], &[], &[0], false, false), true).unwrap();
        let g = realize(&spec);
        assert_eq!(g.adjacency_rows(), vec![vec![0, 1], vec![1, 0]]);
        assert!(check_connectivity(&spec).connected);
    }

    #[test]
    fn json_shape() {
        let spec =
            ConnectionSpec::from_json(r#"{"n":4,"alphas":[1],"betas":[],"gammas":[0],"half_r":true,"half_t":false}"#)
                .unwrap();
        assert_eq!(spec.family(), Family::Two);
        assert_eq!(spec.to_json(), r#"{"n":4,"alphas":[1],"betas":[],"gammas":[0],"half_r":true,"half_t":false}"#);
        assert!(ConnectionSpec::from_json(r#"{"n":3,"half_r":true}"#).is_err());
    }

    fn random_spec() -> impl Strategy<Value = Option<ConnectionSpec>> {
        (
            1u64..=12,
            proptest::collection::vec(1i64..6, 0..3),
            proptest::collection::vec(1i64..6, 0..3),
            proptest::collection::vec(0i64..12, 0..4),
            any::<bool>(),
            any::<bool>(),
        )
            .prop_map(|(n, a, b, g, hr, ht)| validate_spec(&raw(n, &a, &b, &g, hr, ht), false).ok())
    }

    proptest! {
        #[test]
        fn realization_invariants(spec in random_spec()) {
            let Some(spec) = spec else { return Ok(()) };
            let g = realize(&spec);
            let n = spec.n() as usize;
            for u in 0..2 * n {
                prop_assert!(!g.adjacent(u, u));
                for v in 0..2 * n {
                    prop_assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
                }
            }
            let right = 2 * spec.r() + spec.s() + usize::from(spec.half_r());
            let left = 2 * spec.t() + spec.s() + usize::from(spec.half_t());
            prop_assert!((0..n).all(|u| g.degree(u) == right));
            prop_assert!((n..2 * n).all(|u| g.degree(u) == left));
        }

        #[test]
        fn gcd_conditions_are_sufficient(spec in random_spec()) {
            let Some(spec) = spec else { return Ok(()) };
            let c = check_connectivity(&spec);
            prop_assert_eq!(c.connected, realize(&spec).is_connected());
            if c.any_gcd_condition() {
                prop_assert!(c.connected);
            }
        }
    }
}
