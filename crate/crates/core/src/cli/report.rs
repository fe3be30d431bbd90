//! Plain-text reports.

use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::dsf::{Dsf, StructureLimits};
use crate::minreal::MinrealReport;
use crate::ratcore::format_value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub consistent: bool,
    pub order: usize,
    /// `p + l - phi`, absent when the modes of `[Q P]` could not be extracted.
    pub minimal_order: Option<usize>,
}

fn matrix(out: &mut String, name: &str, m: &DMatrix<f64>) {
    let cells: Vec<Vec<String>> = m
        .row_iter()
        .map(|r| r.iter().map(|&x| format_value(x)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let _ = writeln!(out, "{name} =");
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  [ {} ]", line.join("  "));
    }
}

fn pattern(m: &DMatrix<f64>) -> String {
    let mut cells = Vec::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if m[(i, j)] != 0.0 {
                cells.push(format!("({},{})", i + 1, j + 1));
            }
        }
    }
    if cells.is_empty() {
        "none".into()
    } else {
        cells.join(" ")
    }
}

fn values(xs: &[f64]) -> String {
    xs.iter()
        .map(|&x| format_value(x))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render_extract(d: &Dsf, limits: &StructureLimits) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p = {}, m = {}", d.measured(), d.inputs());
    out.push_str(&d.to_string());
    matrix(&mut out, "lim s Q", &limits.a11_offdiag);
    matrix(&mut out, "lim s P", &limits.b1);
    let _ = writeln!(out, "nonzero lim s Q: {}", pattern(&limits.a11_offdiag));
    out
}

pub fn render_minreal(r: &MinrealReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p = {}, m = {}", r.p, r.m);
    let _ = writeln!(out, "poles ({}): {}", r.l, values(&r.poles));
    if r.shift != 0.0 {
        let _ = writeln!(out, "shift: a = {}", format_value(r.shift));
    }
    match r.mcmillan_degree_g {
        Some(k) => {
            let _ = writeln!(out, "McMillan degree of G: {k}");
        }
        None => out.push_str("McMillan degree of G: unavailable\n"),
    }
    let edges: Vec<String> = r
        .graph_edges
        .iter()
        .map(|&(i, j)| format!("{}~{}", format_value(r.poles[i]), format_value(r.poles[j])))
        .collect();
    let _ = writeln!(
        out,
        "compatibility graph ({}): {} edges{}{}",
        r.edge_rule,
        edges.len(),
        if edges.is_empty() { "" } else { ": " },
        edges.join(" ")
    );
    let _ = writeln!(out, "phi = {}", r.phi);
    let _ = writeln!(
        out,
        "minimal order = p + l - phi = {} + {} - {} = {}",
        r.p, r.l, r.phi, r.minimal_order
    );
    let _ = writeln!(out, "hidden states = {}", r.hidden_state_count);
    for (k, real) in r.realizations.iter().enumerate() {
        let _ = writeln!(out, "realization {}:", k + 1);
        let _ = writeln!(out, "  Phi = {{{}}}", values(&real.clique_poles));
        let _ = writeln!(out, "  R* = {}", real.family);
        let cancelled: Vec<f64> = r
            .poles
            .iter()
            .zip(&real.cancelled)
            .filter(|(_, &c)| c)
            .map(|(&p, _)| p)
            .collect();
        let _ = writeln!(out, "  cancelled poles: {{{}}}", values(&cancelled));
        let _ = writeln!(out, "  order = {}", real.order);
        let _ = writeln!(out, "  consistent = {}", real.consistent);
        for check in &real.zero_checks {
            let _ = writeln!(
                out,
                "  invariant zero at {}: V {}, G {}; control {}: V {}, G {}",
                format_value(check.pole),
                yes_no(check.v_zero),
                yes_no(check.g_zero),
                format_value(check.control_point),
                yes_no(check.v_control),
                yes_no(check.g_control)
            );
        }
    }
    out
}

pub fn render_verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "consistent = {}", r.consistent);
    let _ = writeln!(out, "order = {}", r.order);
    if let Some(min) = r.minimal_order {
        let verdict = match r.order.cmp(&min) {
            std::cmp::Ordering::Equal => "minimal",
            std::cmp::Ordering::Greater => "not minimal",
            std::cmp::Ordering::Less => "below the minimal order",
        };
        let _ = writeln!(out, "minimal order = {min} ({verdict})");
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
