use std::fmt::Write as _;

use bforest_core::mahler::ConvergenceReport;
use bforest_core::ConnectionSpec;

use crate::args::Format;
use crate::commands::{ArithmeticRow, Asymptotics, CompareRow, CountRow, Genfun, Validation};

pub struct Output {
    json: String,
    table: Option<Table>,
    text: String,
}

impl Output {
    pub fn new(json: String, table: Option<Table>, text: String) -> Self {
        Output { json, table, text }
    }

    pub fn render(&self, format: Format) -> Option<String> {
        match format {
            Format::Json => Some(format!("{}\n", self.json)),
            Format::Csv => self.table.as_ref().map(Table::csv),
            Format::Text => (!self.text.is_empty()).then(|| self.text.clone()),
        }
    }
}

#[derive(Clone)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn counts(rows: &[CountRow]) -> Table {
        Table {
            header: vec!["n", "tau", "method"],
            rows: rows.iter().map(|r| vec![r.n.to_string(), r.tau.to_string(), method_name(&r.method)]).collect(),
        }
    }

    pub fn compare(rows: &[CompareRow]) -> Table {
        Table {
            header: vec!["n", "closed", "oracle", "equal"],
            rows: rows
                .iter()
                .map(|r| vec![r.n.to_string(), r.closed.to_string(), r.oracle.to_string(), r.equal.to_string()])
                .collect(),
        }
    }

    pub fn arithmetic(rows: &[ArithmeticRow]) -> Table {
        Table {
            header: vec!["n", "tau", "branch", "structure", "cofactor", "witness", "parity_checked"],
            rows: rows
                .iter()
                .map(|r| {
                    let w = &r.witness;
                    vec![
                        r.n.to_string(),
                        r.tau.to_string(),
                        format!("{:?}", w.branch).to_lowercase(),
                        w.structure.to_string(),
                        format!("{}/{}", w.numerator, w.denominator),
                        w.witness.to_string(),
                        w.parity_checked.to_string(),
                    ]
                })
                .collect(),
        }
    }

    pub fn convergence(report: &ConvergenceReport) -> Table {
        Table {
            header: vec!["n", "tau", "prediction", "ratio", "deviation"],
            rows: report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.tau.to_string(),
                        format!("{:e}", r.prediction),
                        format!("{:.15}", r.ratio),
                        r.deviation.clone(),
                    ]
                })
                .collect(),
        }
    }

    pub fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn aligned(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|i| self.rows.iter().map(|r| r[i].len()).chain([self.header[i].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: Vec<&str>| -> String {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            format!("{}\n", padded.join("  ").trim_end())
        };
        let mut out = line(self.header.clone());
        for row in &self.rows {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }

    pub fn text(&self, spec: &ConnectionSpec) -> String {
        format!("{spec}\n{}", self.aligned())
    }
}

fn method_name(m: &bforest_core::Method) -> String {
    serde_json::to_value(m).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

pub fn validation_text(spec: &ConnectionSpec, v: &Validation) -> String {
    let c = &v.connectivity;
    let mut out = String::new();
    let _ = writeln!(out, "{spec}");
    let _ = writeln!(out, "family {}, {} vertices, {} edges", v.family, v.vertices, v.edges);
    let _ = writeln!(out, "degrees: right {}, left {}", v.right_degree, v.left_degree);
    let _ = writeln!(out, "connected: {} (gcd conditions a={} b={} c={})", c.connected, c.cond_a, c.cond_b, c.cond_c);
    let _ = writeln!(out, "A = {}", v.system.a);
    let _ = writeln!(out, "B = {}", v.system.b);
    let _ = writeln!(out, "C = {}", v.system.c);
    let _ = writeln!(out, "P1 = {}", v.system.p1);
    if v.family != bforest_core::Family::One {
        let _ = writeln!(out, "P{} = {}", v.family, v.system.pj);
    }
    let _ = writeln!(out, "q = {}", v.system.q);
    out
}

pub fn asymptotics_text(spec: &ConnectionSpec, a: &Asymptotics, table: &Table) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{spec}");
    let _ = writeln!(out, "Mahler measure of {}", a.root_product.polynomial);
    let _ = writeln!(out, "  root product  {}", a.root_product.decimal());
    let _ = writeln!(out, "  quadrature    {:.15}", a.quadrature.to_f64());
    let _ = writeln!(out, "growth base^{}", a.convergence.exponent);
    out.push_str(&table.aligned());
    let _ = writeln!(out, "deviation decreasing: {}", a.convergence.decreasing);
    out
}

pub fn genfun_text(spec: &ConnectionSpec, g: &Genfun) -> String {
    let a = &g.analysis;
    let mut out = String::new();
    let _ = writeln!(out, "{spec}");
    let _ = writeln!(out, "{}", g.indexing);
    let _ = writeln!(out, "order {} from {} terms", a.gf.recurrence.order, a.terms_used);
    let _ = writeln!(out, "numerator   {}", a.gf.numerator);
    let _ = writeln!(out, "denominator {}", a.gf.denominator);
    let _ = writeln!(out, "symmetry F(x/l) = F(1/(l x)) with l = {}: {}", a.scale, a.symmetric);
    let _ = writeln!(out, "next {} terms predicted: {}", a.predicted_terms, a.predictions_hold);
    out
}
