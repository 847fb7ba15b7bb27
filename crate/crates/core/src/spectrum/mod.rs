//! Radial Schroedinger bound states for the effective potentials.
//!
//! Solves `-(1/2) u'' + [l(l+1) / (2 r^2) + V(r)] u = E u` with
//! `u ~ r^(l+1)` at `r_min` and `u(r_max) = 0`, in units where the Coulomb
//! potential `-Z / r` has levels `-Z^2 / (2 n^2)`.
//!
//! The mesh is uniform in `x = ln r`. With `u = r^(1/2) w` the equation
//! becomes `w'' = [(l + 1/2)^2 + 2 r^2 (V - E)] w`, which has no first
//! derivative term and is propagated with Numerov's fourth-order recurrence.
//! Each level is bracketed by bisection on the node count of the outward
//! solution (a Sturm count of the discrete problem), then refined by
//! matching outward and inward solutions at the classical turning point and
//! zeroing the jump in logarithmic derivative.

mod shooting;
mod table;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::axial::{AxialPotentials, PotentialError, PotentialKind};

pub use shooting::solve_levels;
pub use table::{build_potential_table, log_spaced, PotentialTable};

/// Convergence target for eigenvalues, absolute in `E`.
pub const SOLVER_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("invalid potential table: {0}")]
    InvalidTable(String),
    #[error("table tail mismatch at r={r}: last node {value} vs Coulomb tail {tail} (more than 5% apart)")]
    TailMismatch { r: f64, value: f64, tail: f64 },
    #[error("invalid radial problem: {0}")]
    InvalidProblem(String),
    #[error("requested {requested} bound states but the potential supports only {available} on this mesh")]
    Shortfall { requested: usize, available: usize },
    #[error("could not bracket level {level}: node count {count_lo} at E={e_lo}, {count_hi} at E={e_hi}")]
    NoBracket {
        level: usize,
        e_lo: f64,
        count_lo: usize,
        e_hi: f64,
        count_hi: usize,
    },
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

/// Potential energy `V(r)` entering the radial equation.
#[derive(Clone)]
pub enum Potential {
    Table(Arc<PotentialTable>),
    /// `-charge / r`.
    Coulomb {
        charge: f64,
    },
    /// `omega^2 r^2 / 2`.
    Harmonic {
        omega: f64,
    },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Potential {
    pub fn value(&self, r: f64) -> f64 {
        match self {
            Self::Table(t) => t.value_at(r),
            Self::Coulomb { charge } => -charge / r,
            Self::Harmonic { omega } => 0.5 * omega * omega * r * r,
            Self::Custom(f) => f(r),
        }
    }
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Table(t) => write!(f, "Table({} nodes)", t.grid().len()),
            Self::Coulomb { charge } => write!(f, "Coulomb {{ charge: {charge} }}"),
            Self::Harmonic { omega } => write!(f, "Harmonic {{ omega: {omega} }}"),
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl From<PotentialTable> for Potential {
    fn from(t: PotentialTable) -> Self {
        Self::Table(Arc::new(t))
    }
}

#[derive(Debug, Clone)]
pub struct RadialProblem {
    pub potential: Potential,
    pub l: u32,
    pub r_min: f64,
    pub r_max: f64,
    pub mesh_points: usize,
}

impl RadialProblem {
    pub const MIN_MESH_POINTS: usize = 1_000;
    pub const DEFAULT_MESH_POINTS: usize = 20_000;
    pub const DEFAULT_R_MIN: f64 = 1e-4;

    pub fn new(
        potential: Potential,
        l: u32,
        r_min: f64,
        r_max: f64,
        mesh_points: usize,
    ) -> Result<Self, SpectrumError> {
        if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
            return Err(SpectrumError::InvalidProblem(format!(
                "need 0 < r_min < r_max, got r_min={r_min}, r_max={r_max}"
            )));
        }
        if mesh_points < Self::MIN_MESH_POINTS {
            return Err(SpectrumError::InvalidProblem(format!(
                "need at least {} mesh points, got {mesh_points}",
                Self::MIN_MESH_POINTS
            )));
        }
        Ok(Self {
            potential,
            l,
            r_min,
            r_max,
            mesh_points,
        })
    }

    /// Outer radius for a level near `energy_estimate`:
    /// `max(50, 30 / sqrt(2 |E|))`.
    pub fn default_r_max(energy_estimate: f64) -> f64 {
        let k = (2.0 * energy_estimate.abs()).sqrt();
        if k > 0.0 {
            (30.0 / k).max(50.0)
        } else {
            50.0
        }
    }

    /// Default mesh: 20 000 points from `r_min = 1e-4` to
    /// [`default_r_max`](Self::default_r_max).
    pub fn with_defaults(
        potential: Potential,
        l: u32,
        energy_estimate: f64,
    ) -> Result<Self, SpectrumError> {
        Self::new(
            potential,
            l,
            Self::DEFAULT_R_MIN,
            Self::default_r_max(energy_estimate),
            Self::DEFAULT_MESH_POINTS,
        )
    }
}

/// One bound state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenLevel {
    pub nodes: usize,
    pub l: u32,
    pub energy: f64,
}

/// Settings for [`spectrum_spread`].
#[derive(Debug, Clone, Copy)]
pub struct SpreadConfig {
    pub kinds: (PotentialKind, PotentialKind),
    pub l: u32,
    pub mesh_points: usize,
    pub table_nodes: usize,
}

impl Default for SpreadConfig {
    fn default() -> Self {
        Self {
            kinds: (PotentialKind::Def1, PotentialKind::Def2),
            l: 0,
            mesh_points: RadialProblem::DEFAULT_MESH_POINTS,
            table_nodes: 800,
        }
    }
}

/// Level `n` (1-based) for both potentials and `delta = energy_a - energy_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSpread {
    pub n: usize,
    pub energy_a: f64,
    pub energy_b: f64,
    pub delta: f64,
}

impl LevelSpread {
    /// Whether `|delta|` exceeds the eigenvalue convergence target.
    pub fn resolved(&self) -> bool {
        self.delta.abs() > SOLVER_TOLERANCE
    }
}

/// Mesh used by [`spectrum_spread`] for `levels` states at Born parameter
/// `beta`: the Coulomb estimate `E ~ -beta^2 / (2 levels^2)` fixes `r_max`.
pub fn spread_problem_geometry(beta: f64, levels: usize) -> (f64, f64) {
    let n = levels.max(1) as f64;
    let estimate = -beta * beta / (2.0 * n * n);
    (
        RadialProblem::DEFAULT_R_MIN,
        RadialProblem::default_r_max(estimate),
    )
}

/// Separation, in units of `beta`, out to which [`spectrum_spread`] tables
/// extend at least. The effective potentials are within about 1.3% of
/// `-beta / r` there, well inside the table's tail tolerance.
pub const TABLE_REACH_RHO: f64 = 100.0;

/// Builds the two effective-potential tables for `cfg.kinds` at `beta` and
/// returns the per-level energy differences.
pub fn spectrum_spread(
    potentials: &AxialPotentials,
    beta: f64,
    levels: usize,
    cfg: &SpreadConfig,
) -> Result<Vec<LevelSpread>, SpectrumError> {
    let (r_min, r_max) = spread_problem_geometry(beta, levels);
    let grid = log_spaced(r_min, r_max.max(TABLE_REACH_RHO * beta), cfg.table_nodes);

    let solve = |kind: PotentialKind| -> Result<Vec<EigenLevel>, SpectrumError> {
        let table = build_potential_table(kind, beta, &grid, potentials)?;
        let problem = RadialProblem::new(table.into(), cfg.l, r_min, r_max, cfg.mesh_points)?;
        solve_levels(&problem, levels)
    };

    let (a, b) = if cfg.kinds.0 == cfg.kinds.1 {
        let a = solve(cfg.kinds.0)?;
        (a.clone(), a)
    } else {
        let (a, b) = rayon::join(|| solve(cfg.kinds.0), || solve(cfg.kinds.1));
        (a?, b?)
    };

    Ok(a.iter()
        .zip(&b)
        .enumerate()
        .map(|(i, (ea, eb))| LevelSpread {
            n: i + 1,
            energy_a: ea.energy,
            energy_b: eb.energy,
            delta: ea.energy - eb.energy,
        })
        .collect())
}
