//! Acceptance suite. Runs without the test harness so that the one
//! PASS/FAIL line per criterion is always printed; exits nonzero on failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bforest_core::closed_form::formal_system;
use bforest_core::genfun::analyze;
use bforest_core::mahler::QUADRATURE_MAX_POINTS;
use bforest_core::{
    convergence_report, growth_base, is_connected, mahler_quadrature, tree_count_by_oracle, tree_count_closed,
    validate_spec, verify_square_structure, ConnectionSpec, Family, RawSpec, TreeCount,
};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const RANDOM_CASES: usize = 200;
const RANDOM_SEED: u64 = 0x6266_6f72;
const MAHLER_ROOT_TOL: f64 = 1e-9;
const MAHLER_QUAD_TOL: f64 = 1e-4;
const CONVERGENCE_TOL: f64 = 1e-10;
const GF_TOL: f64 = 1e-5;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(j: u8, n: u64) -> ConnectionSpec {
    let (betas, hr, ht): (Vec<i64>, bool, bool) = match j {
        1 => (vec![1], false, false),
        2 => (vec![], true, false),
        3 => (vec![], false, true),
        _ => (vec![], true, true),
    };
    let raw = RawSpec { n, alphas: vec![1], betas, gammas: vec![0], half_r: hr, half_t: ht };
    validate_spec(&raw, true).unwrap()
}

/// Fixture instances with `2n ≤ 28`.
fn fixture_cases() -> Vec<ConnectionSpec> {
    let mut out: Vec<ConnectionSpec> = (3..=14).map(|n| fixture(1, n)).collect();
    for j in 2..=4 {
        out.extend((4..=14).step_by(2).map(|n| fixture(j, n)));
    }
    out
}

fn pick(rng: &mut StdRng, pool: &[i64], max: usize) -> Vec<i64> {
    let count = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, count).copied().collect()
}

/// Connected specs with `n ≤ 12`, at most two `±α` and `±β` pairs and
/// `1 ≤ s ≤ 3`, drawn from a fixed seed.
fn random_cases() -> Vec<ConnectionSpec> {
    let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
    let mut out = Vec::with_capacity(RANDOM_CASES);
    while out.len() < RANDOM_CASES {
        let n: u64 = rng.gen_range(1..=12);
        let half: Vec<i64> = (1..).take_while(|v| 2 * v < n as i64).collect();
        let all: Vec<i64> = (0..n as i64).collect();
        let mut gammas = pick(&mut rng, &all, 3);
        if gammas.is_empty() {
            gammas.push(*all.choose(&mut rng).unwrap());
        }
        let even = n % 2 == 0;
        let raw = RawSpec {
            n,
            alphas: pick(&mut rng, &half, 2),
            betas: pick(&mut rng, &half, 2),
            gammas,
            half_r: even && rng.gen_bool(0.5),
            half_t: even && rng.gen_bool(0.5),
        };
        let spec = validate_spec(&raw, true).expect("sampled within range");
        if is_connected(&spec) {
            out.push(spec);
        }
    }
    out
}

fn equivalence(cases: &[ConnectionSpec]) -> std::result::Result<Vec<TreeCount>, String> {
    cases
        .iter()
        .map(|spec| {
            let closed = tree_count_closed(spec).map_err(|e| format!("{spec}: {e}"))?;
            let oracle = tree_count_by_oracle(spec);
            if closed.tau != oracle.tau {
                return Err(format!("{spec}: closed {} vs oracle {}", closed.tau, oracle.tau));
            }
            Ok(closed)
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cases = fixture_cases();
    equivalence(&cases)?;
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:.2?}"));
    }
    Ok(format!("{} fixture instances equal, {elapsed:.2?}", cases.len()))
}

fn criterion_2() -> Outcome {
    let expected = [(fixture(1, 3), 75u32), (fixture(1, 4), 384), (fixture(2, 4), 16)];
    for (spec, tau) in &expected {
        let oracle = tree_count_by_oracle(spec).tau;
        let closed = tree_count_closed(spec).map_err(|e| e.to_string())?.tau;
        if oracle != BigUint::from(*tau) || closed != oracle {
            return Err(format!("{spec}: oracle {oracle}, closed {closed}, expected {tau}"));
        }
    }
    Ok("prism 75, cube 384, family 2 n=4 16".into())
}

fn criterion_3() -> Outcome {
    let cases = random_cases();
    equivalence(&cases)?;
    let mut per_family = [0usize; 4];
    for c in &cases {
        per_family[c.family().index() as usize - 1] += 1;
    }
    Ok(format!("{} random specs equal (per family {per_family:?})", cases.len()))
}

fn criterion_4() -> Outcome {
    let mut cases = fixture_cases();
    cases.extend(random_cases());
    let mut parity = 0;
    for spec in &cases {
        let tau = tree_count_closed(spec).map_err(|e| format!("{spec}: {e}"))?;
        let w = verify_square_structure(spec, &tau).map_err(|e| format!("{spec}: {e}"))?;
        let expected = match spec.family() {
            Family::One => spec.n() % 2,
            _ => (spec.n() / 2) % 2,
        };
        if (w.branch == bforest_core::Branch::Odd) != (expected == 1) {
            return Err(format!("{spec}: wrong branch {:?}", w.branch));
        }
        if w.parity_checked {
            parity += 1;
        }
    }
    Ok(format!("{} instances decomposed, {parity} with even-witness parity checked", cases.len()))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let targets = [(1u8, 2.0 + 3f64.sqrt(), "A"), (3, 4.0 + 7f64.sqrt(), "C"), (4, 7.0 + 2.0 * 10f64.sqrt(), "D")];
    let mut parts = Vec::new();
    for (j, exact, name) in targets {
        let spec = fixture(j, 6);
        let root = growth_base(&spec, 40).map_err(|e| e.to_string())?.to_f64();
        let sys = formal_system(&spec);
        let product = if j == 1 { sys.p1.clone() } else { &sys.pj * &sys.p1 };
        let quad = mahler_quadrature(&product, QUADRATURE_MAX_POINTS).map_err(|e| e.to_string())?.to_f64();
        if (root - exact).abs() > MAHLER_ROOT_TOL || (quad - root).abs() > MAHLER_QUAD_TOL {
            return Err(format!("{name}: roots {root}, quadrature {quad}, exact {exact}"));
        }
        parts.push(format!("{name}={root:.10}"));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(5) {
        return Err(format!("took {elapsed:.2?}"));
    }
    Ok(format!("{}, {elapsed:.2?}", parts.join(" ")))
}

fn criterion_6() -> Outcome {
    let report = convergence_report(&fixture(1, 6), &[10, 15, 20], 64).map_err(|e| e.to_string())?;
    let last = report.rows.last().unwrap();
    let dev: f64 = last.deviation.parse().map_err(|_| last.deviation.clone())?;
    let devs: Vec<&str> = report.rows.iter().map(|r| r.deviation.as_str()).collect();
    if dev > CONVERGENCE_TOL || !report.decreasing {
        return Err(format!("deviations {devs:?}"));
    }
    Ok(format!("|ratio-1| at n=10,15,20: {devs:?}"))
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    for j in 1..=4u8 {
        // 2·11 + 2 = 24 fitted terms, 10 held out
        let a = analyze(&fixture(j, 6), 11).map_err(|e| format!("family {j}: {e}"))?;
        if a.terms_used != 24 || a.gf.recurrence.order > 6 || !a.predictions_hold || !a.symmetric {
            return Err(format!(
                "family {j}: order {}, predictions {}, symmetric {}",
                a.gf.recurrence.order, a.predictions_hold, a.symmetric
            ));
        }
        let expected = match j {
            1 => Some(0.365659),
            2 => Some(0.612573),
            _ => None,
        };
        if let Some(v) = expected {
            let got = a.gf.eval_f64(0.1);
            if (got - v).abs() > GF_TOL {
                return Err(format!("family {j}: F(0.1) = {got}, expected {v}"));
            }
        }
        parts.push(format!("F{j}: order {} scale {}", a.gf.recurrence.order, a.scale));
    }
    Ok(parts.join(", "))
}

fn criterion_8() -> Outcome {
    let mut cases = fixture_cases();
    cases.extend(random_cases());
    for spec in &cases {
        let tau = tree_count_closed(spec).map_err(|e| e.to_string())?.tau;
        let ns = BigUint::from(spec.n() * spec.s() as u64);
        let scaled = if spec.family() == Family::One { tau.clone() } else { &tau * 4u32 };
        if !scaled.mod_floor(&ns).is_zero() {
            return Err(format!("{spec}: τ = {tau} not divisible as required by n·s = {ns}"));
        }
    }
    Ok(format!("{} instances divisible", cases.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("oracle/closed-form equivalence on fixtures", criterion_1),
        ("classical fixtures", criterion_2),
        ("randomized equivalence", criterion_3),
        ("square structure and parity", criterion_4),
        ("Mahler constants", criterion_5),
        ("asymptotic convergence", criterion_6),
        ("generating functions", criterion_7),
        ("divisibility invariants", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
