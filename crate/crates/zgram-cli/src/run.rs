//! Cell planning and execution.
//!
//! A cell is one (claim, T, parameter) triple.  Cells run independently in a
//! dedicated thread pool; a failing cell becomes an error record, never a
//! crash.  Output order is (claim, T, parameter) regardless of completion
//! order, and all numeric content is schedule-independent.

use std::time::Instant;

use rayon::prelude::*;
use zgram::{
    newton_leibniz_check, nu_range, verify_alternating, verify_mean_value, verify_theorem1,
    verify_theorem2, verify_theorem3, verify_w_nu, AltVariant, ClaimId, Parity, SetKind,
    VerificationReport, Window,
};

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub claim: ClaimId,
    pub t: f64,
    pub h: f64,
    pub parameter: f64,
}

/// Result of one cell: either a report or an error message, plus timing.
#[derive(Clone, Debug)]
pub struct CellOutcome {
    pub cell: Cell,
    pub report: Result<VerificationReport, String>,
    pub elapsed_ms: u64,
}

fn parameters_for(claim: ClaimId, config: &RunConfig) -> Vec<f64> {
    match claim {
        // tau-parameterized sums
        ClaimId::T1 | ClaimId::T2Even | ClaimId::T2Odd | ClaimId::Alt32 | ClaimId::Alt33 => {
            config.tau_grid.clone()
        }
        // tau enters only the report label; one cell per window
        ClaimId::Alt31 => vec![0.0],
        // offset-parameterized claims
        ClaimId::T3Even | ClaimId::T3Odd | ClaimId::MvG1 | ClaimId::MvG2 => {
            config.offset_grid.clone()
        }
        // pointwise checks need tau strictly positive
        ClaimId::Nl73 | ClaimId::Wnu => config
            .tau_grid
            .iter()
            .copied()
            .filter(|&tau| tau > 0.0)
            .collect(),
    }
}

/// Expands the configuration into cells, ordered by (claim, T, parameter).
pub fn plan(config: &RunConfig) -> Vec<Cell> {
    let mut claims = config.claims.clone();
    claims.sort();
    claims.dedup();
    let mut cells = Vec::new();
    for &claim in &claims {
        for &t in &config.t_ladder {
            let h = config.h_rule.h_for(t, config.delta, config.epsilon);
            for &parameter in &parameters_for(claim, config) {
                cells.push(Cell {
                    claim,
                    t,
                    h,
                    parameter,
                });
            }
        }
    }
    // output order is part of the contract, whatever order the grids came in
    cells.sort_by(|a, b| {
        (a.claim, a.t, a.parameter)
            .partial_cmp(&(b.claim, b.t, b.parameter))
            .expect("validated grids contain no NaN")
    });
    cells
}

fn run_cell(cell: &Cell, config: &RunConfig) -> Result<VerificationReport, String> {
    let cfg = &config.rs;
    let delta = config.delta;
    let w = Window::new(cell.t, cell.h).map_err(|e| e.to_string())?;
    let report = match cell.claim {
        ClaimId::T1 => verify_theorem1(cell.parameter, &w, delta, cfg),
        ClaimId::T2Even => verify_theorem2(Parity::Even, cell.parameter, &w, delta, cfg),
        ClaimId::T2Odd => verify_theorem2(Parity::Odd, cell.parameter, &w, delta, cfg),
        ClaimId::T3Even => verify_theorem3(Parity::Even, cell.parameter, &w, delta, cfg),
        ClaimId::T3Odd => verify_theorem3(Parity::Odd, cell.parameter, &w, delta, cfg),
        ClaimId::MvG1 => verify_mean_value(SetKind::G1, cell.parameter, &w, cfg),
        ClaimId::MvG2 => verify_mean_value(SetKind::G2, cell.parameter, &w, cfg),
        ClaimId::Alt31 => verify_alternating(AltVariant::Alt31, cell.parameter, &w, delta, cfg),
        ClaimId::Alt32 => verify_alternating(AltVariant::Alt32, cell.parameter, &w, delta, cfg),
        ClaimId::Alt33 => verify_alternating(AltVariant::Alt33, cell.parameter, &w, delta, cfg),
        // pointwise claims run at the first node of the window
        ClaimId::Nl73 => {
            nu_range(&w, cfg).and_then(|(nu, _)| newton_leibniz_check(nu, cell.parameter, cfg))
        }
        ClaimId::Wnu => nu_range(&w, cfg).and_then(|(nu, _)| verify_w_nu(nu, cell.parameter, cfg)),
    };
    report.map_err(|e| e.to_string())
}

/// Runs every cell of the plan.  `config.threads` bounds the worker pool
/// (0 = machine default).
pub fn execute(config: &RunConfig) -> anyhow::Result<Vec<CellOutcome>> {
    config.validate().map_err(anyhow::Error::msg)?;
    for &t in &config.t_ladder {
        let h = config.h_rule.h_for(t, config.delta, config.epsilon);
        if let Ok(w) = Window::new(t, h) {
            if w.exceeds_h1(config.epsilon) {
                eprintln!(
                    "warning: H = {h:.3} exceeds H1 = T^(1/6+eps) = {:.3} at T = {t:e}",
                    w.h1_bound(config.epsilon)
                );
            }
        }
    }
    let cells = plan(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()?;
    let outcomes = pool.install(|| {
        cells
            .par_iter()
            .map(|cell| {
                let start = Instant::now();
                let report = run_cell(cell, config);
                CellOutcome {
                    cell: *cell,
                    report,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                }
            })
            .collect::<Vec<_>>()
    });
    Ok(outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::HRule;

    #[test]
    fn empty_claims_gives_empty_plan() {
        let config = RunConfig {
            claims: vec![],
            ..RunConfig::default()
        };
        assert!(plan(&config).is_empty());
        assert!(execute(&config).unwrap().is_empty());
    }

    #[test]
    fn plan_is_sorted_and_deduplicated() {
        let config = RunConfig {
            claims: vec![ClaimId::Alt31, ClaimId::T1, ClaimId::T1],
            t_ladder: vec![1e6, 1e7],
            // deliberately unsorted grid: output order must not depend on it
            tau_grid: vec![2.0, 0.0, 1.0, 3.0, -1.0],
            ..RunConfig::default()
        };
        let cells = plan(&config);
        // T1 has 5 taus per T, ALT31 one cell per T
        assert_eq!(cells.len(), 2 * 5 + 2);
        assert!(cells.windows(2).all(|p| {
            (p[0].claim, p[0].t, p[0].parameter) <= (p[1].claim, p[1].t, p[1].parameter)
        }));
    }

    #[test]
    fn nl_cells_skip_tau_zero() {
        let config = RunConfig {
            claims: vec![ClaimId::Nl73],
            t_ladder: vec![1e6],
            ..RunConfig::default()
        };
        let cells = plan(&config);
        assert_eq!(cells.len(), 4); // grid has 5 taus, zero excluded
        assert!(cells.iter().all(|c| c.parameter > 0.0));
    }

    #[test]
    fn single_cell_t1_at_tau_zero() {
        let config = RunConfig {
            claims: vec![ClaimId::T1],
            t_ladder: vec![1e6],
            tau_grid: vec![0.0],
            threads: 1,
            ..RunConfig::default()
        };
        let out = execute(&config).unwrap();
        assert_eq!(out.len(), 1);
        let r = out[0].report.as_ref().unwrap();
        assert_eq!(r.lhs, 0.0);
    }

    #[test]
    fn unreachable_tolerance_degrades_to_error_rows() {
        let config = RunConfig {
            claims: vec![ClaimId::T1, ClaimId::Alt31],
            t_ladder: vec![1e6],
            tau_grid: vec![0.5],
            h_rule: HRule::Fixed(5.0),
            rs: zgram::RsConfig {
                newton_tol: 1e-300,
                ..zgram::RsConfig::default()
            },
            threads: 1,
            ..RunConfig::default()
        };
        let out = execute(&config).unwrap();
        assert_eq!(out.len(), 2);
        for o in &out {
            let err = o.report.as_ref().unwrap_err();
            assert!(err.contains("stalled"), "unexpected error: {err}");
        }
    }
}
