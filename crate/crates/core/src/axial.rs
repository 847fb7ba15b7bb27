//! Potentials on the line through the two charges.
//!
//! Two line-integral definitions of the potential are implemented:
//!
//! * `def1`: `phi(s) = int_s^inf F_z ds'`, which vanishes at `+inf` but tends
//!   to a nonzero constant at `-inf`;
//! * `def2`: `phi~(s) = -int_{r/2}^s F_z ds'`, anchored at the midpoint and
//!   tending to `-/+ phi(-inf) / 2` at `+/- inf`.
//!
//! Here `F = f_bi(d_c)` is the Born-Infeld map applied to the superposed
//! Coulomb displacement. After substituting `s' = x r` the values at the
//! electron reduce to one-dimensional integrals of [`integrand_outer`] and
//! [`integrand_inner`] that depend on `rho = r / beta` only; the general
//! axial functions instead integrate the raw three-dimensional field sampled
//! on the z-axis, which gives an independent route to the same numbers.
//!
//! Every quantity here satisfies `beta * phi(beta, beta rho) = phi(1, rho)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{bi_field, integrand_inner, integrand_outer, AxialConfig, FieldError, Point3};
use crate::quadrature::{
    integrate_finite, integrate_semi_infinite, integrate_to_minus_infinity, QuadratureError,
    Tolerance,
};
use crate::specfun::born_constant;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("{what} at beta={beta}, r={r}: {source}")]
    Quadrature {
        what: &'static str,
        beta: f64,
        r: f64,
        #[source]
        source: QuadratureError,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("axial coordinate must not be NaN")]
    NanCoordinate,
}

/// The four effective-potential curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PotentialKind {
    /// `-(beta phi(r) + C/4)`, the upper solid line.
    Def1,
    /// `-(beta phi~(r) + C/4)`, the lower solid line.
    Def2,
    /// `-beta / r`.
    Coulomb,
    /// `-beta int_r^inf dt / sqrt(t^4 + beta^4)`, the single-charge solution.
    Single,
}

impl PotentialKind {
    pub const ALL: [PotentialKind; 4] = [Self::Def1, Self::Def2, Self::Coulomb, Self::Single];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Def1 => "def1",
            Self::Def2 => "def2",
            Self::Coulomb => "coulomb",
            Self::Single => "single",
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown potential kind '{0}' (expected def1, def2, coulomb or single)")]
pub struct UnknownKind(pub String);

impl FromStr for PotentialKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// One sampled point of an effective-potential curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSample {
    pub r: f64,
    pub value: f64,
}

/// Evaluator for the axial potentials at a fixed quadrature tolerance.
///
/// The absolute tolerance applies to the dimensionless products
/// `beta * phi`; internally it is tightened by `1 / max(rho, 1)` because the
/// integrals get multiplied by `rho`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AxialPotentials {
    tol: Tolerance,
}

fn dedup_sorted(mut pts: Vec<f64>) -> Vec<f64> {
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Points that bracket the narrow features of the axial field, in units of
/// `x = s / r`: the charges, the saturation layers of width `~1/rho`
/// around them, the midpoint and, for small `rho`, the knee at
/// `|x| ~ rho^(-2/3)` where the far field stops being saturated.
fn axial_breaks(rho: f64) -> Vec<f64> {
    let mut pts = vec![0.0, 0.5, 1.0];
    for k in [0.1, 1.0, 10.0] {
        let w = k / rho;
        if w < 0.5 {
            pts.extend([-w, w, 1.0 - w, 1.0 + w]);
        } else {
            pts.extend([-w, 1.0 + w]);
        }
    }
    if rho < 1.0 {
        let knee = rho.powf(-2.0 / 3.0);
        for k in [1.0, 4.0, 16.0] {
            pts.extend([-k * knee, 1.0 + k * knee]);
        }
    }
    dedup_sorted(pts)
}

impl AxialPotentials {
    pub fn new(tol: Tolerance) -> Self {
        Self { tol }
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    fn scaled_tol(&self, rho: f64, panels: usize) -> Tolerance {
        self.tol
            .scale_absolute(1.0 / (rho.max(1.0) * panels as f64))
    }

    fn wrap<T>(
        what: &'static str,
        cfg: &AxialConfig,
        r: Result<T, QuadratureError>,
    ) -> Result<T, PotentialError> {
        r.map_err(|source| PotentialError::Quadrature {
            what,
            beta: cfg.beta(),
            r: cfg.r(),
            source,
        })
    }

    /// `int_1^inf integrand_outer(x, rho) dx`.
    pub fn outer_integral(&self, cfg: &AxialConfig) -> Result<f64, PotentialError> {
        let rho = cfg.rho();
        let breaks: Vec<f64> = axial_breaks(rho)
            .into_iter()
            .filter(|&x| x >= 1.0)
            .collect();
        let tol = self.scaled_tol(rho, breaks.len());
        let f = |x: f64| integrand_outer(x, rho);
        let mut total = 0.0;
        for w in breaks.windows(2) {
            total +=
                Self::wrap("outer integral", cfg, integrate_finite(f, w[0], w[1], &tol))?.value;
        }
        let last = *breaks.last().expect("contains 1");
        total += Self::wrap(
            "outer integral",
            cfg,
            integrate_semi_infinite(f, last, &tol),
        )?
        .value;
        Ok(total)
    }

    /// `int_{1/2}^1 integrand_inner(x, rho) dx`.
    pub fn inner_integral(&self, cfg: &AxialConfig) -> Result<f64, PotentialError> {
        let rho = cfg.rho();
        let breaks: Vec<f64> = axial_breaks(rho)
            .into_iter()
            .filter(|&x| (0.5..=1.0).contains(&x))
            .collect();
        let tol = self.scaled_tol(rho, breaks.len());
        let f = |x: f64| integrand_inner(x, rho);
        let mut total = 0.0;
        for w in breaks.windows(2) {
            total +=
                Self::wrap("inner integral", cfg, integrate_finite(f, w[0], w[1], &tol))?.value;
        }
        Ok(total)
    }

    /// `phi(r) = (r / beta^2) int_1^inf integrand_outer`; always negative.
    pub fn phi_at_electron(&self, cfg: &AxialConfig) -> Result<f64, PotentialError> {
        Ok(cfg.r() / cfg.beta().powi(2) * self.outer_integral(cfg)?)
    }

    /// `phi~(r) = -(r / beta^2) int_{1/2}^1 integrand_inner`; always negative.
    pub fn phi_tilde_at_electron(&self, cfg: &AxialConfig) -> Result<f64, PotentialError> {
        Ok(-cfg.r() / cfg.beta().powi(2) * self.inner_integral(cfg)?)
    }

    /// Limit of `def1` at `s -> -inf`, from the substituted integrals.
    pub fn phi_minus_infinity(&self, cfg: &AxialConfig) -> Result<f64, PotentialError> {
        let sum = self.outer_integral(cfg)? + self.inner_integral(cfg)?;
        Ok(2.0 * cfg.r() / cfg.beta().powi(2) * sum)
    }

    /// `int_from^to F_z(0, 0, s') ds'` of the raw field, `from <= to`, either
    /// end possibly infinite.
    fn axial_integral(&self, cfg: &AxialConfig, from: f64, to: f64) -> Result<f64, PotentialError> {
        if from.is_nan() || to.is_nan() {
            return Err(PotentialError::NanCoordinate);
        }
        if from >= to {
            return Ok(0.0);
        }
        let (r, rho) = (cfg.r(), cfg.rho());
        let b2 = cfg.beta().powi(2);
        let (lo, hi) = (from / r, to / r);

        let mut pts = vec![lo, hi];
        pts.extend(axial_breaks(rho).into_iter().filter(|&x| x > lo && x < hi));
        let pts = dedup_sorted(pts);
        let tol = self.scaled_tol(rho, pts.len());

        // Dimensionless beta^2 F_z at s' = x r. A field error can only come
        // from a node rounding onto a charge; it is surfaced after the pass.
        let failure = std::cell::Cell::new(None);
        let g = |x: f64| match bi_field(Point3::on_axis(x * r), cfg) {
            Ok(v) => v.z * b2,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        };

        let mut total = 0.0;
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let res = match (a.is_finite(), b.is_finite()) {
                (true, true) => integrate_finite(g, a, b, &tol),
                (true, false) => integrate_semi_infinite(g, a, &tol),
                (false, true) => integrate_to_minus_infinity(g, b, &tol),
                (false, false) => unreachable!("breakpoints are finite"),
            };
            if let Some(e) = failure.take() {
                return Err(e.into());
            }
            total += Self::wrap("axial line integral", cfg, res)?.value;
        }
        Ok(r / b2 * total)
    }

    /// `def1` potential at axial coordinate `s` (may be `-inf` or `+inf`).
    pub fn phi_def1_axial(&self, cfg: &AxialConfig, s: f64) -> Result<f64, PotentialError> {
        self.axial_integral(cfg, s, f64::INFINITY)
    }

    /// `def2` potential at axial coordinate `s` (may be `-inf` or `+inf`).
    pub fn phi_def2_axial(&self, cfg: &AxialConfig, s: f64) -> Result<f64, PotentialError> {
        let mid = 0.5 * cfg.r();
        if s.is_nan() {
            Err(PotentialError::NanCoordinate)
        } else if s > mid {
            Ok(-self.axial_integral(cfg, mid, s)?)
        } else {
            self.axial_integral(cfg, s, mid)
        }
    }

    /// `int_s^inf dt / sqrt(t^4 + beta^4)`; equals `C / (4 beta)` at `s = 0`.
    pub fn single_particle_potential(&self, beta: f64, s: f64) -> Result<f64, PotentialError> {
        let cfg = AxialConfig::new(beta, 1.0)?;
        if !(s >= 0.0) {
            return Err(FieldError::InvalidParameter {
                name: "s",
                value: s,
            }
            .into());
        }
        if s.is_infinite() {
            return Ok(0.0);
        }
        let sigma = s / beta;
        let f = |u: f64| 1.0 / (u * u).hypot(1.0);
        let tol = self.tol.scale_absolute(0.5);
        let mut total = 0.0;
        let mut start = sigma;
        if sigma < 1.0 {
            total += Self::wrap(
                "single-particle potential",
                &cfg,
                integrate_finite(f, sigma, 1.0, &tol),
            )?
            .value;
            start = 1.0;
        }
        total += Self::wrap(
            "single-particle potential",
            &cfg,
            integrate_semi_infinite(f, start, &tol),
        )?
        .value;
        Ok(total / beta)
    }

    /// Effective Schroedinger potential of the given kind at separation `r`.
    pub fn effective_potential(
        &self,
        kind: PotentialKind,
        cfg: &AxialConfig,
    ) -> Result<f64, PotentialError> {
        let quarter_c = 0.25 * born_constant();
        let rho = cfg.rho();
        Ok(match kind {
            // beta * phi = rho * integral, written out to keep scale covariance exact.
            PotentialKind::Def1 => -(rho * self.outer_integral(cfg)? + quarter_c),
            PotentialKind::Def2 => -(-rho * self.inner_integral(cfg)? + quarter_c),
            PotentialKind::Coulomb => -cfg.beta() / cfg.r(),
            PotentialKind::Single => {
                -cfg.beta() * self.single_particle_potential(cfg.beta(), cfg.r())?
            }
        })
    }

    /// Samples one curve on `grid`, in parallel; output order follows `grid`.
    pub fn sample(
        &self,
        kind: PotentialKind,
        beta: f64,
        grid: &[f64],
    ) -> Result<Vec<PotentialSample>, PotentialError> {
        grid.par_iter()
            .map(|&r| {
                let cfg = AxialConfig::new(beta, r)?;
                Ok(PotentialSample {
                    r,
                    value: self.effective_potential(kind, &cfg)?,
                })
            })
            .collect()
    }
}
