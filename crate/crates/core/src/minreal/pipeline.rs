use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    cancellation_check, compatibility_graph, construct_rstar, extract_modes, maximum_cliques,
    realize, realize_unpruned, EdgeRule, GilbertData, RStar, ShiftMode, DEFAULT_FREE_VALUE,
};
use crate::dsf::{consistency_check, dsf_to_transfer, Dsf};
use crate::error::Result;
use crate::sslib::{is_invariant_zero, mcmillan_degree, PartitionedRealization, StateSpace};
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinrealOptions {
    pub rule: EdgeRule,
    pub free_value: f64,
    pub enumerate_all: bool,
    pub shift: ShiftMode,
    pub tol: Tolerances,
}

impl Default for MinrealOptions {
    fn default() -> Self {
        Self {
            rule: EdgeRule::default(),
            free_value: DEFAULT_FREE_VALUE,
            enumerate_all: false,
            shift: ShiftMode::Auto,
            tol: Tolerances::default(),
        }
    }
}

/// Pole count, clique size and the resulting minimal order `p + l - phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSummary {
    pub p: usize,
    pub l: usize,
    pub phi: usize,
    pub order: usize,
    pub hidden: usize,
}

/// Order of a minimal realization consistent with `d`.
pub fn minimal_order(
    d: &Dsf,
    rule: EdgeRule,
    shift: ShiftMode,
    tol: &Tolerances,
) -> Result<OrderSummary> {
    let g = extract_modes(d, shift, tol)?;
    let phi = maximum_cliques(&compatibility_graph(&g, rule, tol.tol_orth), false).phi;
    Ok(summary(d.measured(), g.len(), phi))
}

fn summary(p: usize, l: usize, phi: usize) -> OrderSummary {
    OrderSummary {
        p,
        l,
        phi,
        order: p + l - phi,
        hidden: l - phi,
    }
}

/// Invariant-zero tests at one cancelled pole and at a control point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCheck {
    pub pole: f64,
    pub v_zero: bool,
    pub g_zero: bool,
    pub control_point: f64,
    pub v_control: bool,
    pub g_control: bool,
}

impl ZeroCheck {
    /// Both realizations agree at the pole and at the control point.
    pub fn agrees(&self) -> bool {
        self.v_zero == self.g_zero && self.v_control == self.g_control
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationReport {
    pub clique: Vec<usize>,
    pub clique_poles: Vec<f64>,
    pub rstar: RStar,
    pub family: String,
    pub cancelled: Vec<bool>,
    pub order: usize,
    pub consistent: bool,
    pub zero_checks: Vec<ZeroCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinrealReport {
    pub p: usize,
    pub m: usize,
    pub l: usize,
    pub phi: usize,
    pub minimal_order: usize,
    pub hidden_state_count: usize,
    pub poles: Vec<f64>,
    pub shift: f64,
    pub edge_rule: EdgeRule,
    pub graph_edges: Vec<(usize, usize)>,
    /// McMillan degree of `G = (I - Q)^-1 P`, absent when `G` has complex or
    /// repeated poles.
    pub mcmillan_degree_g: Option<usize>,
    pub realizations: Vec<RealizationReport>,
}

#[derive(Debug, Clone)]
pub struct MinrealOutput {
    pub report: MinrealReport,
    pub modes: GilbertData,
    pub realizations: Vec<PartitionedRealization>,
}

/// Runs mode extraction, the clique search, `R*` construction, realization
/// and verification.
pub fn minreal_pipeline(d: &Dsf, opts: &MinrealOptions) -> Result<MinrealOutput> {
    let tol = &opts.tol;
    let g = extract_modes(d, opts.shift, tol)?;
    let graph = compatibility_graph(&g, opts.rule, tol.tol_orth);
    let cliques = maximum_cliques(&graph, opts.enumerate_all);
    let order = summary(d.measured(), g.len(), cliques.phi);

    let mcmillan_degree_g = dsf_to_transfer(d, tol.tol_root)
        .and_then(|gm| mcmillan_degree(&gm, tol.tol_pole, tol.tol_root, tol.tol_rank))
        .ok();

    let mut reports = Vec::new();
    let mut realizations = Vec::new();
    for clique in &cliques.cliques {
        let rstar = construct_rstar(&g, clique, opts.free_value)?;
        let cancelled = cancellation_check(&g, &rstar, tol.tol_orth)?;
        let part = realize(&g, &rstar, tol.tol_orth)?;
        let consistent = consistency_check(&part, d, tol.tol_eval, tol.tol_root)?;
        let zero_checks = zero_checks(&g, &rstar, &cancelled, tol)?;
        reports.push(RealizationReport {
            clique: clique.clone(),
            clique_poles: clique.iter().map(|&i| g.poles[i]).collect(),
            family: rstar.family(),
            rstar,
            cancelled,
            order: part.order(),
            consistent,
            zero_checks,
        });
        realizations.push(part);
    }

    let report = MinrealReport {
        p: order.p,
        m: d.inputs(),
        l: order.l,
        phi: order.phi,
        minimal_order: order.order,
        hidden_state_count: order.hidden,
        poles: g.poles.clone(),
        shift: g.shift,
        edge_rule: opts.rule,
        graph_edges: graph.edges(),
        mcmillan_degree_g,
        realizations: reports,
    };
    Ok(MinrealOutput {
        report,
        modes: g,
        realizations,
    })
}

/// The `V = B1 + A12 (sI - A22)^-1 B2` subsystem of a realization.
pub fn v_subsystem(part: &PartitionedRealization) -> StateSpace {
    StateSpace::new(
        part.a22.clone(),
        part.b2.clone(),
        part.a12.clone(),
        part.b1.clone(),
    )
    .expect("partition blocks are consistent")
}

/// Point tests at every cancelled pole on the unpruned realization, where a
/// cancelled pole is a hidden mode with a zero `A12` column.
pub fn zero_checks(
    g: &GilbertData,
    rstar: &RStar,
    cancelled: &[bool],
    tol: &Tolerances,
) -> Result<Vec<ZeroCheck>> {
    let full = realize_unpruned(g, rstar)?;
    let v_ss = v_subsystem(&full);
    let g_ss = full.assemble();
    let zero =
        |ss: &StateSpace, s: f64| is_invariant_zero(ss, Complex64::new(s, 0.0), tol.tol_rank);
    Ok((0..g.len())
        .filter(|&i| cancelled[i])
        .map(|i| {
            let pole = g.poles[i];
            let control_point = control_point(&g.poles, i);
            ZeroCheck {
                pole,
                v_zero: zero(&v_ss, pole),
                g_zero: zero(&g_ss, pole),
                control_point,
                v_control: zero(&v_ss, control_point),
                g_control: zero(&g_ss, control_point),
            }
        })
        .collect())
}

/// Midpoint between pole `i` and its nearest other pole, or one unit left of
/// it when it is the only pole.
fn control_point(poles: &[f64], i: usize) -> f64 {
    let lambda = poles[i];
    poles
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, &mu)| mu)
        .min_by(|a, b| (a - lambda).abs().total_cmp(&(b - lambda).abs()))
        .map_or(lambda - 1.0, |mu| 0.5 * (lambda + mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{RationalFunction as Rf, RationalMatrix};

    #[test]
    fn scalar_lag_has_order_one() {
        let d = Dsf::new(
            RationalMatrix::zeros(1, 1),
            RationalMatrix::new(1, 1, vec![Rf::first_order(1.0, -1.0)]).unwrap(),
        )
        .unwrap();
        let out = minreal_pipeline(&d, &MinrealOptions::default()).unwrap();
        assert_eq!(out.report.minimal_order, 1);
        let part = &out.realizations[0];
        assert_eq!(part.hidden(), 0);
        assert!((part.a11[(0, 0)] + 1.0).abs() < 1e-14);
        assert!((part.b1[(0, 0)] - 1.0).abs() < 1e-14);
        assert!(out.report.realizations[0].consistent);
        let l1 = &out.report.realizations[0].zero_checks;
        assert_eq!(l1.len(), 1);
        assert!(l1[0].v_zero && l1[0].g_zero && !l1[0].v_control && !l1[0].g_control);
    }

    #[test]
    fn diagonal_p_cancels_everything() {
        let p = RationalMatrix::new(
            3,
            2,
            vec![
                Rf::first_order(1.0, -1.0),
                Rf::zero(),
                Rf::zero(),
                Rf::first_order(2.0, -2.0),
                Rf::first_order(-1.0, -3.0),
                Rf::zero(),
            ],
        )
        .unwrap();
        let d = Dsf::new(RationalMatrix::zeros(3, 3), p).unwrap();
        let out = minreal_pipeline(&d, &MinrealOptions::default()).unwrap();
        assert_eq!(
            (out.report.l, out.report.phi, out.report.minimal_order),
            (3, 3, 3)
        );
        assert_eq!(out.report.realizations[0].family, "diag{-1,-2,-3}");
        assert!(out.report.realizations[0].consistent);
    }
}
