//! Sweep engines: one table builder per quantity plus the seeded oracle
//! re-evaluation.

use anyhow::{bail, Result};
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use squeezelab_core::mach_zehnder::{q_scan, MZConfig, ScanGrid, ScanRow};
use squeezelab_core::oracle::{oracle_mz_auto, oracle_state_auto, oracle_variances};
use squeezelab_core::photon_stats::{p_even, p_odd};
use squeezelab_core::quadratures::{
    squeezed_quadrature, transition_polys_from_coeffs, transition_roots, variance_from_coeffs,
    SqueezedQuadrature, TransitionPolys, TransitionRoots,
};
use squeezelab_core::su11::{disentangle_general, SqueezeParams};
use squeezelab_core::SqueezeError;

use crate::output::{Cell, OracleCheckSummary, Table};
use crate::spec::{ParityArg, Quantity, SweepSpec};

/// Context a sampled row needs for its oracle re-evaluation.
enum RowCheck {
    Variance {
        params: SqueezeParams,
        var_q: f64,
        var_p: f64,
    },
    MonicRoot {
        x: f64,
        roots: Vec<f64>,
    },
    PolyRoot {
        polys: TransitionPolys,
        roots: Vec<f64>,
    },
    Photon {
        params: SqueezeParams,
        photon_number: usize,
        probability: f64,
    },
    Mandel {
        config: MZConfig,
        params: SqueezeParams,
        mean_n: f64,
        mean_n2: f64,
    },
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Table> {
    spec.validate()?;
    let (mut table, checks) = match spec.quantity {
        Quantity::Variances => variances_table(spec)?,
        Quantity::Transition => transition_table(spec)?,
        Quantity::PhotonDist => photon_dist_table(spec)?,
        Quantity::Mandel => mandel_table(spec)?,
    };
    if table.rows.len() > spec.max_points {
        bail!(
            "sweep has {} points, above the cap of {}",
            table.rows.len(),
            spec.max_points
        );
    }
    if let Some(fraction) = spec.oracle_check {
        if fraction > 0.0 && !checks.is_empty() {
            table.oracle_check = Some(run_oracle_check(spec.seed, fraction, &checks)?);
        }
    }
    Ok(table)
}

fn run_oracle_check(
    seed: u64,
    fraction: f64,
    checks: &[RowCheck],
) -> Result<OracleCheckSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = ((fraction * checks.len() as f64).round() as usize)
        .clamp(1, checks.len());
    let mut indices = rand::seq::index::sample(&mut rng, checks.len(), count).into_vec();
    indices.sort_unstable();

    let deviations: Result<Vec<f64>> = indices
        .par_iter()
        .map(|&i| row_deviation(&checks[i]))
        .collect();
    let max = deviations?
        .into_iter()
        .fold(0.0f64, f64::max);
    Ok(OracleCheckSummary {
        fraction,
        sampled: count,
        max_abs_deviation: max,
    })
}

fn row_deviation(check: &RowCheck) -> Result<f64> {
    Ok(match check {
        RowCheck::Variance { params, var_q, var_p } => {
            let state = oracle_state_auto(params)?;
            let o = oracle_variances(&state);
            (o.var_q - var_q).abs().max((o.var_p - var_p).abs())
        }
        RowCheck::MonicRoot { x, roots } => roots
            .iter()
            .map(|s| (s * s + x * s + (1.0 + x) / 2.0).abs())
            .fold(0.0, f64::max),
        RowCheck::PolyRoot { polys, roots } => roots
            .iter()
            .map(|&s| polys.g_at(s).abs())
            .fold(0.0, f64::max),
        RowCheck::Photon {
            params,
            photon_number,
            probability,
        } => {
            let state = oracle_state_auto(params)?;
            (state.amplitude(*photon_number).norm_sqr() - probability).abs()
        }
        RowCheck::Mandel {
            config,
            params,
            mean_n,
            mean_n2,
        } => match oracle_mz_auto(config, params) {
            Ok(obs) => (obs.mean_n - mean_n)
                .abs()
                .max((obs.mean_n2 - mean_n2).abs()),
            Err(SqueezeError::UndefinedMandelQ { mean }) => (mean - mean_n).abs(),
            Err(e) => return Err(e.into()),
        },
    })
}

fn grid_or(spec_grid: &Option<crate::spec::GridSpec>, fallback: f64) -> Result<Vec<f64>> {
    match spec_grid {
        Some(g) => Ok(g.resolve()?),
        None => Ok(vec![fallback]),
    }
}

// ---------------------------------------------------------------- variances

fn variances_table(spec: &SweepSpec) -> Result<(Table, Vec<RowCheck>)> {
    let alphas = grid_or(&spec.grids.alpha, 0.0)?;
    let taus = spec.resolve_taus()?;
    let thetas = grid_or(&spec.grids.theta, 0.0)?;

    let mut points: Vec<(f64, C64, f64)> =
        Vec::with_capacity(alphas.len() * taus.len() * thetas.len());
    for &a in &alphas {
        for &t in &taus {
            for &th in &thetas {
                points.push((a, t, th));
            }
        }
    }

    let built: Vec<(Vec<Cell>, RowCheck)> = points
        .par_iter()
        .map(|&(alpha, tau, theta)| {
            let params = SqueezeParams::new(alpha, tau, theta)
                .expect("finite grid values");
            let coeffs = disentangle_general(&params);
            let v = variance_from_coeffs(&coeffs, theta);
            let polys = transition_polys_from_coeffs(&coeffs);
            let squeezed = match squeezed_quadrature(params.s(), &polys) {
                SqueezedQuadrature::QSqueezed => "q",
                SqueezedQuadrature::PSqueezed => "p",
                SqueezedQuadrature::Neither => "none",
            };
            let row = vec![
                Cell::Num(alpha),
                Cell::Num(tau.norm()),
                Cell::Num(tau.arg()),
                Cell::Num(theta),
                Cell::Num(v.var_q),
                Cell::Num(v.var_p),
                Cell::Text(squeezed),
                Cell::Empty,
            ];
            let check = RowCheck::Variance {
                params,
                var_q: v.var_q,
                var_p: v.var_p,
            };
            (row, check)
        })
        .collect();

    let (rows, checks) = built.into_iter().unzip();
    Ok((
        Table {
            columns: vec![
                "alpha", "tau_abs", "tau_phase", "theta", "var_q", "var_p", "squeezed", "flag",
            ],
            rows,
            oracle_check: None,
        },
        checks,
    ))
}

// --------------------------------------------------------------- transition

const TRANSITION_COLUMNS: [&str; 13] = [
    "alpha", "tau_abs", "tau_phase", "a", "b", "c", "l", "m", "n", "x", "s_minus", "s_plus",
    "flag",
];

fn root_cells(x: f64) -> (Cell, Cell, Cell, Vec<f64>) {
    match transition_roots(x) {
        TransitionRoots::Pair { lower, upper } => (
            Cell::Num(lower),
            Cell::Num(upper),
            Cell::Empty,
            vec![lower, upper],
        ),
        TransitionRoots::Single(s) => (
            Cell::Num(s),
            Cell::Num(s),
            Cell::Text("double_root"),
            vec![s],
        ),
        TransitionRoots::Empty => (Cell::Empty, Cell::Empty, Cell::Text("no_roots"), vec![]),
    }
}

fn transition_table(spec: &SweepSpec) -> Result<(Table, Vec<RowCheck>)> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();

    if let Some(xg) = &spec.grids.x {
        for x in xg.resolve()? {
            let (s_minus, s_plus, flag, roots) = root_cells(x);
            rows.push(vec![
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Num(x),
                s_minus,
                s_plus,
                flag,
            ]);
            checks.push(RowCheck::MonicRoot { x, roots });
        }
    } else {
        let alphas = grid_or(&spec.grids.alpha, 0.0)?;
        let taus = spec.resolve_taus()?;
        for &alpha in &alphas {
            for &tau in &taus {
                let params = SqueezeParams::new(alpha, tau, 0.0)?;
                let polys = transition_polys_from_coeffs(&disentangle_general(&params));
                let (x_cell, s_minus, s_plus, flag, roots) = match polys.x {
                    None => (
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Text("x_undefined"),
                        vec![],
                    ),
                    Some(x) => {
                        let (s_minus, s_plus, flag, roots) = root_cells(x);
                        (Cell::Num(x), s_minus, s_plus, flag, roots)
                    }
                };
                rows.push(vec![
                    Cell::Num(alpha),
                    Cell::Num(tau.norm()),
                    Cell::Num(tau.arg()),
                    Cell::Num(polys.a),
                    Cell::Num(polys.b),
                    Cell::Num(polys.c),
                    Cell::Num(polys.l),
                    Cell::Num(polys.m),
                    Cell::Num(polys.n),
                    x_cell,
                    s_minus,
                    s_plus,
                    flag,
                ]);
                checks.push(RowCheck::PolyRoot { polys, roots });
            }
        }
    }

    Ok((
        Table {
            columns: TRANSITION_COLUMNS.to_vec(),
            rows,
            oracle_check: None,
        },
        checks,
    ))
}

// -------------------------------------------------------------- photon-dist

fn photon_dist_table(spec: &SweepSpec) -> Result<(Table, Vec<RowCheck>)> {
    let parity = spec.fixed.parity.unwrap_or(ParityArg::Even);
    let alphas = grid_or(&spec.grids.alpha, 0.0)?;
    let taus = spec.resolve_taus()?;
    let ns = spec
        .grids
        .n
        .as_ref()
        .expect("validated: photon_dist needs an n grid")
        .resolve_indices()?;
    let theta = match parity {
        ParityArg::Mixed => crate::grid::parse_scalar(
            spec.fixed
                .theta
                .as_deref()
                .expect("validated: mixed parity needs theta"),
        )?,
        _ => 0.0,
    };

    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for &tau in &taus {
        for &alpha in &alphas {
            let (parity_name, state_theta) = match parity {
                ParityArg::Even => ("even", 0.0),
                ParityArg::Odd => ("odd", std::f64::consts::FRAC_PI_2),
                ParityArg::Mixed => ("mixed", theta),
            };
            let params = SqueezeParams::new(alpha, tau, state_theta)?;
            let coeffs = disentangle_general(&params);
            for &n in &ns {
                let (photon_number, probability) = match parity {
                    ParityArg::Even => (2 * n, p_even(n, &coeffs)),
                    ParityArg::Odd => (2 * n + 1, p_odd(n, &coeffs)),
                    ParityArg::Mixed => (n, squeezelab_core::photon_stats::p_n(n, &params)),
                };
                let theta_cell = match parity {
                    ParityArg::Mixed => Cell::Num(theta),
                    _ => Cell::Empty,
                };
                rows.push(vec![
                    Cell::Num(alpha),
                    Cell::Num(tau.norm()),
                    Cell::Num(tau.arg()),
                    theta_cell,
                    Cell::Text(parity_name),
                    Cell::Int(n as u64),
                    Cell::Int(photon_number as u64),
                    Cell::Num(probability),
                    Cell::Empty,
                ]);
                checks.push(RowCheck::Photon {
                    params,
                    photon_number,
                    probability,
                });
            }
        }
    }

    Ok((
        Table {
            columns: vec![
                "alpha",
                "tau_abs",
                "tau_phase",
                "theta",
                "parity",
                "n",
                "photon_number",
                "probability",
                "flag",
            ],
            rows,
            oracle_check: None,
        },
        checks,
    ))
}

// ------------------------------------------------------------------- mandel

fn mandel_table(spec: &SweepSpec) -> Result<(Table, Vec<RowCheck>)> {
    let z = spec.resolve_z()?;
    let phi = spec.resolve_phi()?;
    let port = spec.fixed.port.unwrap_or(crate::spec::PortArg::APrime);
    let port_name = match port {
        crate::spec::PortArg::APrime => "a_prime",
        crate::spec::PortArg::BPrime => "b_prime",
    };
    let config = MZConfig::new(z, phi, port.into())?;

    let grid = ScanGrid {
        taus: spec.resolve_taus()?,
        thetas: grid_or(&spec.grids.theta, 0.0)?,
        alphas: grid_or(&spec.grids.alpha, 0.0)?,
    };
    let scan = q_scan(&config, &grid);

    let mut rows = Vec::with_capacity(scan.len());
    let mut checks = Vec::with_capacity(scan.len());
    for ScanRow {
        alpha,
        tau,
        theta,
        mean_n,
        mean_n2,
        mandel_q,
        break_locus,
    } in scan
    {
        let (q_cell, flag) = match (mandel_q, break_locus) {
            (None, _) => (Cell::Empty, Cell::Text("undefined_q")),
            (Some(q), true) => (Cell::Num(q), Cell::Text("break_locus")),
            (Some(q), false) => (Cell::Num(q), Cell::Empty),
        };
        rows.push(vec![
            Cell::Num(z.re),
            Cell::Num(z.im),
            Cell::Num(phi),
            Cell::Text(port_name),
            Cell::Num(alpha),
            Cell::Num(tau.norm()),
            Cell::Num(tau.arg()),
            Cell::Num(theta),
            Cell::Num(mean_n),
            Cell::Num(mean_n2),
            q_cell,
            flag,
        ]);
        let params = SqueezeParams::new(alpha, tau, theta)?;
        checks.push(RowCheck::Mandel {
            config,
            params,
            mean_n,
            mean_n2,
        });
    }

    Ok((
        Table {
            columns: vec![
                "z_re", "z_im", "phi", "port", "alpha", "tau_abs", "tau_phase", "theta",
                "mean_n", "mean_n2", "q", "flag",
            ],
            rows,
            oracle_check: None,
        },
        checks,
    ))
}
