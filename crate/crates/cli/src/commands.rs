use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use bforest_core::closed_form::{formal_system, DegeneracyReport};
use bforest_core::mahler::{ConvergenceReport, QUADRATURE_MAX_POINTS};
use bforest_core::{
    analyze, arithmetic_profile, check_connectivity, convergence_report, degeneracy_report, growth_base,
    mahler_quadrature, tree_count_by_oracle, tree_count_closed, verify_square_structure, ArithmeticProfile,
    ConnectionSpec, Connectivity, Error, Family, GenfunAnalysis, MahlerEstimate, Method, SpectralSystem, SquareWitness,
};

use crate::args::{Command, Options};
use crate::render::{Output, Table};

/// Why a run stopped; maps onto the process exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or an invalid spec: exit 1.
    Usage(String),
    /// A failed internal consistency check: exit 2.
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Internal(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Run<T> = Result<T, Failure>;

/// Evaluates `f` at each `n` on a pool of `jobs` workers, in input order.
/// The first failure by position wins, so errors are deterministic too.
fn per_n<T: Send>(ns: &[u64], jobs: Option<usize>, f: impl Fn(u64) -> Run<T> + Sync) -> Run<Vec<T>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    let results: Vec<Run<T>> = pool.install(|| ns.par_iter().map(|&n| f(n)).collect());
    results.into_iter().collect()
}

fn at(spec: &ConnectionSpec, n: u64) -> Run<ConnectionSpec> {
    Ok(spec.with_n(n)?)
}

#[derive(Serialize)]
pub struct Validation {
    pub n: u64,
    pub family: Family,
    pub vertices: u64,
    pub edges: u64,
    pub right_degree: u64,
    pub left_degree: u64,
    pub connectivity: Connectivity,
    pub system: SpectralSystem,
    pub degeneracy: DegeneracyReport,
}

fn validation(spec: &ConnectionSpec) -> Validation {
    let n = spec.n();
    let (r, t, s) = (spec.r() as u64, spec.t() as u64, spec.s() as u64);
    let right_degree = 2 * r + s + u64::from(spec.half_r());
    let left_degree = 2 * t + s + u64::from(spec.half_t());
    let system = formal_system(spec);
    Validation {
        n,
        family: spec.family(),
        vertices: 2 * n,
        edges: n * (right_degree + left_degree) / 2,
        right_degree,
        left_degree,
        connectivity: check_connectivity(spec),
        degeneracy: degeneracy_report(&system),
        system,
    }
}

#[derive(Serialize)]
pub struct CountRow {
    pub n: u64,
    #[serde(with = "bforest_core::bigjson::biguint")]
    pub tau: BigUint,
    pub method: Method,
    #[serde(with = "bforest_core::bigjson::bigint_vec")]
    pub parts: Vec<BigInt>,
}

fn count_rows(spec: &ConnectionSpec, ns: &[u64], jobs: Option<usize>) -> Run<Vec<CountRow>> {
    per_n(ns, jobs, |n| {
        let t = tree_count_closed(&at(spec, n)?)?;
        Ok(CountRow { n, tau: t.tau, method: t.method, parts: t.parts })
    })
}

fn oracle_rows(spec: &ConnectionSpec, ns: &[u64], jobs: Option<usize>) -> Run<Vec<CountRow>> {
    per_n(ns, jobs, |n| {
        let t = tree_count_by_oracle(&at(spec, n)?);
        Ok(CountRow { n, tau: t.tau, method: t.method, parts: t.parts })
    })
}

#[derive(Serialize)]
pub struct CompareRow {
    pub n: u64,
    #[serde(with = "bforest_core::bigjson::biguint")]
    pub closed: BigUint,
    #[serde(with = "bforest_core::bigjson::biguint")]
    pub oracle: BigUint,
    pub equal: bool,
}

fn compare_rows(spec: &ConnectionSpec, ns: &[u64], jobs: Option<usize>) -> Run<Vec<CompareRow>> {
    per_n(ns, jobs, |n| {
        let s = at(spec, n)?;
        let closed = tree_count_closed(&s)?.tau;
        let oracle = tree_count_by_oracle(&s).tau;
        Ok(CompareRow { n, equal: closed == oracle, closed, oracle })
    })
}

#[derive(Serialize)]
pub struct ArithmeticRow {
    pub n: u64,
    #[serde(with = "bforest_core::bigjson::biguint")]
    pub tau: BigUint,
    pub witness: SquareWitness,
}

#[derive(Serialize)]
pub struct Arithmetic {
    pub profile: ArithmeticProfile,
    pub rows: Vec<ArithmeticRow>,
}

fn arithmetic(spec: &ConnectionSpec, ns: &[u64], jobs: Option<usize>) -> Run<Arithmetic> {
    let rows = per_n(ns, jobs, |n| {
        let s = at(spec, n)?;
        let t = tree_count_closed(&s)?;
        let witness = verify_square_structure(&s, &t)?;
        Ok(ArithmeticRow { n, tau: t.tau, witness })
    })?;
    Ok(Arithmetic { profile: arithmetic_profile(spec), rows })
}

#[derive(Serialize)]
pub struct Asymptotics {
    pub precision: u32,
    pub root_product: MahlerEstimate,
    pub quadrature: MahlerEstimate,
    /// `|root_product − quadrature|`.
    pub method_gap: f64,
    pub convergence: ConvergenceReport,
}

fn asymptotics(spec: &ConnectionSpec, ns: &[u64], precision: u32) -> Run<Asymptotics> {
    let root_product = growth_base(spec, precision)?;
    let sys = formal_system(spec);
    let quadrature = if sys.family == Family::One {
        mahler_quadrature(&sys.p1, QUADRATURE_MAX_POINTS)?
    } else {
        mahler_quadrature(&(&sys.pj * &sys.p1), QUADRATURE_MAX_POINTS)?
    };
    let convergence = convergence_report(spec, ns, precision)?;
    Ok(Asymptotics {
        precision,
        method_gap: (root_product.to_f64() - quadrature.to_f64()).abs(),
        root_product,
        quadrature,
        convergence,
    })
}

#[derive(Serialize)]
pub struct Genfun {
    /// How sequence index maps to the graph parameter.
    pub indexing: String,
    #[serde(flatten)]
    pub analysis: GenfunAnalysis,
}

fn genfun(spec: &ConnectionSpec, max_order: usize) -> Run<Genfun> {
    let analysis = analyze(spec, max_order)?;
    let indexing = if analysis.stride == 1 {
        "a(n) = tau at parameter n".to_owned()
    } else {
        format!("a(n) = tau at parameter {}n (vertex count {}n)", analysis.stride, 2 * analysis.stride)
    };
    Ok(Genfun { indexing, analysis })
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    command: &'static str,
    spec: &'a ConnectionSpec,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct Rows<T: Serialize> {
    rows: Vec<T>,
}

#[derive(Serialize)]
struct Compared {
    rows: Vec<CompareRow>,
    all_equal: bool,
}

#[derive(Serialize)]
struct Report {
    validation: Validation,
    counts: Compared,
    arithmetic: Arithmetic,
    asymptotics: Asymptotics,
    genfun: Genfun,
}

fn json<T: Serialize>(command: &'static str, spec: &ConnectionSpec, body: T) -> String {
    let doc = Document { command, spec, body };
    serde_json::to_string_pretty(&doc).expect("documents serialize")
}

/// Runs one subcommand; `Ok` carries the rendered output and whether its
/// consistency checks held.
pub fn run(command: &Command) -> Run<(Output, bool)> {
    let opts: &Options = command.options();
    let spec = opts.spec.load().map_err(Failure::Usage)?;
    let ns = opts.range(&spec).map_err(Failure::Usage)?;
    let name = command.name();
    let jobs = opts.jobs;
    let out = match command {
        Command::Validate(_) => {
            let v = validation(&spec);
            let text = crate::render::validation_text(&spec, &v);
            (Output::new(json(name, &spec, v), None, text), true)
        }
        Command::Count(_) | Command::Oracle(_) => {
            let rows = if matches!(command, Command::Count(_)) {
                count_rows(&spec, &ns, jobs)?
            } else {
                oracle_rows(&spec, &ns, jobs)?
            };
            let table = Table::counts(&rows);
            (Output::new(json(name, &spec, Rows { rows }), Some(table.clone()), table.text(&spec)), true)
        }
        Command::Compare(_) => {
            let rows = compare_rows(&spec, &ns, jobs)?;
            let all_equal = rows.iter().all(|r| r.equal);
            let table = Table::compare(&rows);
            let text = format!("{}all equal: {all_equal}\n", table.text(&spec));
            (Output::new(json(name, &spec, Compared { rows, all_equal }), Some(table), text), all_equal)
        }
        Command::Arithmetic(_) => {
            let a = arithmetic(&spec, &ns, jobs)?;
            let table = Table::arithmetic(&a.rows);
            let text = table.text(&spec);
            (Output::new(json(name, &spec, a), Some(table), text), true)
        }
        Command::Asymptotics(_) => {
            let a = asymptotics(&spec, &ns, opts.precision)?;
            let table = Table::convergence(&a.convergence);
            let text = crate::render::asymptotics_text(&spec, &a, &table);
            (Output::new(json(name, &spec, a), Some(table), text), true)
        }
        Command::Genfun(_) => {
            let g = genfun(&spec, opts.max_order)?;
            let text = crate::render::genfun_text(&spec, &g);
            let ok = g.analysis.predictions_hold;
            (Output::new(json(name, &spec, g), None, text), ok)
        }
        Command::Report(_) => {
            let rows = compare_rows(&spec, &ns, jobs)?;
            let all_equal = rows.iter().all(|r| r.equal);
            let report = Report {
                validation: validation(&spec),
                counts: Compared { rows, all_equal },
                arithmetic: arithmetic(&spec, &ns, jobs)?,
                asymptotics: asymptotics(&spec, &ns, opts.precision)?,
                genfun: genfun(&spec, opts.max_order)?,
            };
            let ok = all_equal && report.genfun.analysis.predictions_hold;
            (Output::new(json(name, &spec, report), None, String::new()), ok)
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_kind() {
        assert_eq!(Failure::from(Error::NotConnected).exit_code(), 1);
        assert_eq!(Failure::from(Error::HalfWithoutEvenN { n: 3 }).exit_code(), 1);
        assert_eq!(Failure::from(Error::NonIntegralResult("1/4".into())).exit_code(), 2);
        assert_eq!(Failure::from(Error::ParityViolation("3".into())).exit_code(), 2);
    }
}
