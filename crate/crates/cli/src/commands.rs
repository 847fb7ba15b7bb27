//! `fig1`, `fig2` and `spectrum`.

use bipot::spectrum::{spectrum_spread, LevelSpread, SpreadConfig, SOLVER_TOLERANCE};
use bipot::{AxialConfig, AxialPotentials, PotentialError, PotentialKind, Tolerance};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{FigArgs, Format, SpectrumArgs};
use crate::grid::{grid, Spacing};
use crate::output::{csv_row, emit, json, num};
use crate::{CliError, EXIT_SUCCESS};

struct Range {
    beta: f64,
    grid: Vec<f64>,
}

fn range(a: &FigArgs, defaults: (f64, f64, usize, Spacing)) -> Result<Range, CliError> {
    let (r_min, r_max) = (a.r_min.unwrap_or(defaults.0), a.r_max.unwrap_or(defaults.1));
    let points = a.points.unwrap_or(defaults.2);
    let spacing = match (a.log, a.lin) {
        (true, _) => Spacing::Log,
        (_, true) => Spacing::Linear,
        _ => defaults.3,
    };
    if !(a.beta > 0.0 && a.beta.is_finite()) {
        return Err(CliError::Usage(format!(
            "--beta must be positive, got {}",
            a.beta
        )));
    }
    if !(r_min > 0.0 && r_max.is_finite()) {
        return Err(CliError::Usage(format!(
            "radii must be positive and finite, got {r_min}..{r_max}"
        )));
    }
    if r_min >= r_max {
        return Err(CliError::Usage(format!(
            "--r-min {r_min} must be below --r-max {r_max}"
        )));
    }
    if points < 2 {
        return Err(CliError::Usage(format!(
            "--points must be at least 2, got {points}"
        )));
    }
    Ok(Range {
        beta: a.beta,
        grid: grid(r_min, r_max, points, spacing),
    })
}

#[derive(Serialize)]
struct Fig1Row {
    r: f64,
    phi_minus_infinity: f64,
}

/// Default `fig1` grid: 200 log-spaced radii on [0.01, 50].
pub const FIG1_DEFAULTS: (f64, f64, usize, Spacing) = (0.01, 50.0, 200, Spacing::Log);
/// Default `fig2` grid: 500 linear radii on [0.02, 10].
pub const FIG2_DEFAULTS: (f64, f64, usize, Spacing) = (0.02, 10.0, 500, Spacing::Linear);

pub fn fig1(a: &FigArgs, tol: Tolerance) -> Result<(), CliError> {
    let Range { beta, grid } = range(a, FIG1_DEFAULTS)?;
    let p = AxialPotentials::new(tol);
    let rows: Vec<Fig1Row> = grid
        .par_iter()
        .map(|&r| {
            let cfg = AxialConfig::new(beta, r)?;
            Ok(Fig1Row {
                r,
                phi_minus_infinity: p.phi_minus_infinity(&cfg)?,
            })
        })
        .collect::<Result<_, PotentialError>>()?;
    let body = match a.out.format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("r,phi_minus_infinity\n");
            for row in &rows {
                s += &csv_row(&[num(row.r), num(row.phi_minus_infinity)]);
            }
            s
        }
    };
    emit(a.out.output.as_deref(), &body)
}

#[derive(Serialize)]
struct Fig2Row {
    r: f64,
    def1: f64,
    def2: f64,
    coulomb: f64,
    single: f64,
}

pub fn fig2(a: &FigArgs, tol: Tolerance) -> Result<(), CliError> {
    let Range { beta, grid } = range(a, FIG2_DEFAULTS)?;
    let p = AxialPotentials::new(tol);
    let rows: Vec<Fig2Row> = grid
        .par_iter()
        .map(|&r| {
            let cfg = AxialConfig::new(beta, r)?;
            let v = |k| p.effective_potential(k, &cfg);
            Ok(Fig2Row {
                r,
                def1: v(PotentialKind::Def1)?,
                def2: v(PotentialKind::Def2)?,
                coulomb: v(PotentialKind::Coulomb)?,
                single: v(PotentialKind::Single)?,
            })
        })
        .collect::<Result<_, PotentialError>>()?;
    let body = match a.out.format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("r,def1,def2,coulomb,single\n");
            for row in &rows {
                s += &csv_row(&[
                    num(row.r),
                    num(row.def1),
                    num(row.def2),
                    num(row.coulomb),
                    num(row.single),
                ]);
            }
            s
        }
    };
    emit(a.out.output.as_deref(), &body)
}

#[derive(Serialize)]
struct SpectrumRow {
    beta: f64,
    n: usize,
    energy_a: Option<f64>,
    energy_b: Option<f64>,
    delta: Option<f64>,
    /// `|delta|` above the solver tolerance.
    resolved: Option<bool>,
}

#[derive(Serialize)]
struct SpectrumReport<'a> {
    kinds: [&'a str; 2],
    solver_tolerance: f64,
    rows: Vec<SpectrumRow>,
}

fn parse_kinds(raw: &[String]) -> Result<(PotentialKind, PotentialKind), CliError> {
    let kinds: Vec<PotentialKind> = raw
        .iter()
        .map(|k| {
            k.parse()
                .map_err(|e| CliError::Usage(format!("--kinds: {e}")))
        })
        .collect::<Result<_, _>>()?;
    match kinds.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(CliError::Usage(format!(
            "--kinds takes exactly two kinds, got {}",
            kinds.len()
        ))),
    }
}

/// Returns the exit code: failure only when every row failed.
pub fn spectrum(a: &SpectrumArgs, tol: Tolerance) -> Result<u8, CliError> {
    let kinds = parse_kinds(&a.kinds)?;
    if a.betas.is_empty() || !a.betas.iter().all(|b| *b > 0.0 && b.is_finite()) {
        return Err(CliError::Usage("--betas must be positive numbers".into()));
    }
    if a.levels == 0 {
        return Err(CliError::Usage("--levels must be at least 1".into()));
    }
    if a.mesh_points < bipot::RadialProblem::MIN_MESH_POINTS {
        return Err(CliError::Usage(format!(
            "--mesh-points must be at least {}",
            bipot::RadialProblem::MIN_MESH_POINTS
        )));
    }
    if a.table_nodes < bipot::PotentialTable::MIN_NODES {
        return Err(CliError::Usage(format!(
            "--table-nodes must be at least {}",
            bipot::PotentialTable::MIN_NODES
        )));
    }
    let cfg = SpreadConfig {
        kinds,
        l: a.l,
        mesh_points: a.mesh_points,
        table_nodes: a.table_nodes,
    };
    let p = AxialPotentials::new(tol);
    let results: Vec<Result<Vec<LevelSpread>, bipot::SpectrumError>> = a
        .betas
        .par_iter()
        .map(|&beta| spectrum_spread(&p, beta, a.levels, &cfg))
        .collect();

    let mut rows = Vec::new();
    let mut failed = 0;
    for (&beta, res) in a.betas.iter().zip(results) {
        match res {
            Ok(levels) => rows.extend(levels.into_iter().map(|s| SpectrumRow {
                beta,
                n: s.n,
                energy_a: Some(s.energy_a),
                energy_b: Some(s.energy_b),
                delta: Some(s.delta),
                resolved: Some(s.resolved()),
            })),
            Err(e) => {
                failed += 1;
                eprintln!("warning: beta={beta}: {e}");
                rows.extend((1..=a.levels).map(|n| SpectrumRow {
                    beta,
                    n,
                    energy_a: None,
                    energy_b: None,
                    delta: None,
                    resolved: None,
                }));
            }
        }
    }

    let names = [kinds.0.as_str(), kinds.1.as_str()];
    let body = match a.out.format {
        Format::Json => json(&SpectrumReport {
            kinds: names,
            solver_tolerance: SOLVER_TOLERANCE,
            rows,
        }),
        Format::Csv => {
            let mut s = format!("beta,n,E_{},E_{},delta,resolved\n", names[0], names[1]);
            let cell = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), num);
            for row in &rows {
                s += &csv_row(&[
                    num(row.beta),
                    row.n.to_string(),
                    cell(row.energy_a),
                    cell(row.energy_b),
                    cell(row.delta),
                    row.resolved
                        .map_or_else(|| "NA".to_string(), |b| b.to_string()),
                ]);
            }
            s
        }
    };
    emit(a.out.output.as_deref(), &body)?;
    if failed == a.betas.len() {
        return Err(CliError::AllRowsFailed);
    }
    Ok(EXIT_SUCCESS)
}
