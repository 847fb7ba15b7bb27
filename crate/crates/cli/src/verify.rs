//! The invariant suite behind `bipot verify`.
//!
//! Each check reduces to one number (the worst residual over its probe
//! set) compared against a fixed threshold. Identity-type checks are held
//! to 1e-8 or tighter. The asymptotic split is compared at the finite
//! distance `S = 1000 beta`, where its physical remainder is `~ r / S^2`,
//! so its residual is about 1e-6 against a 1e-3 threshold; the companion
//! tail-model check pins that remainder to 1e-8.

use std::f64::consts::PI;

use bipot::field::{
    curl_probe, curl_probe_richardson, default_curl_step, f_bi, integrand_inner, integrand_outer,
};
use bipot::quadrature::integrate_semi_infinite;
use bipot::specfun::gamma;
use bipot::{born_constant, AxialConfig, AxialPotentials, FieldVector, Point3, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::VerifyArgs;
use crate::output::json;
use crate::{CliError, EXIT_FAILURE, EXIT_SUCCESS};

/// Seed of the random field sample in the saturation check.
pub const SATURATION_SEED: u64 = 0x5eed_b0d1;
pub const SATURATION_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    #[serde(rename = "<")]
    Below,
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Comparison {
    fn holds(self, residual: f64, threshold: f64) -> bool {
        match self {
            Self::Below => residual < threshold,
            Self::AtMost => residual <= threshold,
            Self::AtLeast => residual >= threshold,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Self::Below => "<",
            Self::AtMost => "<=",
            Self::AtLeast => ">=",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub passed: bool,
    /// Where the worst residual occurred.
    pub worst_at: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Constant offset added to one potential definition (test hook).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Perturbation {
    pub def1: f64,
    pub def2: f64,
}

impl Perturbation {
    pub fn parse(raw: &[String]) -> Result<Self, CliError> {
        let [kind, mag] = raw else {
            return Err(CliError::Usage("--perturb takes KIND MAG".into()));
        };
        let mag: f64 = mag
            .parse()
            .map_err(|_| CliError::Usage(format!("--perturb: bad magnitude {mag:?}")))?;
        match kind.to_ascii_lowercase().as_str() {
            "def1" => Ok(Self {
                def1: mag,
                def2: 0.0,
            }),
            "def2" => Ok(Self {
                def1: 0.0,
                def2: mag,
            }),
            other => Err(CliError::Usage(format!(
                "--perturb supports def1 or def2, got {other:?}"
            ))),
        }
    }
}

/// Worst value and its location.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn max() -> Self {
        Self {
            value: f64::NEG_INFINITY,
            at: String::new(),
        }
    }

    fn min() -> Self {
        Self {
            value: f64::INFINITY,
            at: String::new(),
        }
    }

    fn raise(&mut self, v: f64, at: impl FnOnce() -> String) {
        if v > self.value || v.is_nan() {
            self.value = v;
            self.at = at();
        }
    }

    fn lower(&mut self, v: f64, at: impl FnOnce() -> String) {
        if v < self.value || v.is_nan() {
            self.value = v;
            self.at = at();
        }
    }
}

fn check(name: &'static str, worst: Worst, threshold: f64, comparison: Comparison) -> Check {
    Check {
        name,
        residual: worst.value,
        threshold,
        comparison,
        passed: comparison.holds(worst.value, threshold),
        worst_at: worst.at,
    }
}

/// Potentials with the optional perturbation folded in.
struct Probe {
    p: AxialPotentials,
    shift: Perturbation,
}

impl Probe {
    fn phi(&self, c: &AxialConfig) -> Result<f64, CliError> {
        Ok(self.p.phi_at_electron(c)? + self.shift.def1)
    }

    fn tilde(&self, c: &AxialConfig) -> Result<f64, CliError> {
        Ok(self.p.phi_tilde_at_electron(c)? + self.shift.def2)
    }

    /// Full-axis line integral, independent of the substituted integrals.
    fn minus_infinity(&self, c: &AxialConfig) -> Result<f64, CliError> {
        Ok(self.p.phi_def1_axial(c, f64::NEG_INFINITY)? + self.shift.def1)
    }

    fn def2_axial(&self, c: &AxialConfig, s: f64) -> Result<f64, CliError> {
        Ok(self.p.phi_def2_axial(c, s)? + self.shift.def2)
    }
}

pub const IDENTITY_BETAS: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];

/// Seven log-spaced values of `rho` on [0.1, 100].
pub fn identity_rhos() -> Vec<f64> {
    crate::grid::grid(0.1, 100.0, 7, crate::grid::Spacing::Log)
}

fn born_constant_check() -> Check {
    let via_gamma = gamma(0.25).expect("positive").powi(2) / PI.sqrt();
    let mut w = Worst::max();
    w.raise((born_constant() / via_gamma - 1.0).abs(), || {
        "C vs Gamma(1/4)^2/sqrt(pi)".into()
    });
    check("born_constant", w, 1e-12, Comparison::Below)
}

fn quarter_c_check(tol: &Tolerance) -> Result<Check, CliError> {
    let mut w = Worst::max();
    for beta in [0.5_f64, 1.0, 2.0] {
        let b4 = beta.powi(4);
        let v = integrate_semi_infinite(|t| 1.0 / (b4 + t.powi(4)).sqrt(), 0.0, tol)
            .map_err(|e| CliError::Verification(e.to_string()))?
            .value;
        let exact = born_constant() / (4.0 * beta);
        w.raise((v / exact - 1.0).abs(), || format!("beta={beta}"));
    }
    Ok(check("single_charge_integral", w, 1e-9, Comparison::Below))
}

fn difference_identity(probe: &Probe) -> Result<Check, CliError> {
    let mut w = Worst::max();
    for beta in IDENTITY_BETAS {
        for rho in identity_rhos() {
            let c = AxialConfig::from_rho(beta, rho).map_err(bipot::PotentialError::from)?;
            let minf = probe.minus_infinity(&c)?;
            let res = (probe.phi(&c)? - probe.tilde(&c)? - 0.5 * minf).abs() / minf.abs();
            w.raise(res, || format!("beta={beta}, r={}", c.r()));
        }
    }
    Ok(check("difference_identity", w, 1e-8, Comparison::Below))
}

/// `phi~(S) + phi(-inf)/2` and `phi~(-S) - phi(-inf)/2`.
fn split(probe: &Probe, c: &AxialConfig, s: f64) -> Result<(f64, f64), CliError> {
    let half = 0.5 * probe.minus_infinity(c)?;
    Ok((
        probe.def2_axial(c, s)? + half,
        probe.def2_axial(c, -s)? - half,
    ))
}

fn asymptotic_checks(probe: &Probe) -> Result<Vec<Check>, CliError> {
    let (mut level, mut rate, mut model) = (Worst::max(), Worst::max(), Worst::max());
    for beta in [0.5, 1.0, 2.0] {
        let c = AxialConfig::new(beta, beta).map_err(bipot::PotentialError::from)?;
        let s = 1e3 * beta;
        let near = split(probe, &c, s)?;
        let far = split(probe, &c, 2.0 * s)?;
        let r = c.r();
        for (sign, a, b) in [("+", near.0, far.0), ("-", near.1, far.1)] {
            let at = || format!("beta={beta}, r={r}, s={sign}{s}");
            // beta * phi is the dimensionless potential.
            level.raise(beta * a.abs(), at);
            rate.raise((a / b - 4.0).abs(), at);
        }
        // Far from both charges the field is Coulombic and the remainder is
        // the point-charge difference.
        for s in [50.0 * beta, s] {
            let (plus, minus) = split(probe, &c, s)?;
            let mp = 1.0 / s - 1.0 / (s - r);
            let mm = 1.0 / s - 1.0 / (s + r);
            let res = beta * (plus - mp).abs().max((minus - mm).abs());
            model.raise(res, || format!("beta={beta}, r={r}, s=+-{s}"));
        }
    }
    Ok(vec![
        check("asymptotic_split", level, 1e-3, Comparison::Below),
        check("asymptotic_rate", rate, 0.05, Comparison::Below),
        check("asymptotic_tail_model", model, 1e-8, Comparison::Below),
    ])
}

fn broken_asymptotics(probe: &Probe) -> Result<Vec<Check>, CliError> {
    let at = |r: f64| -> Result<f64, CliError> {
        Ok(probe
            .p
            .phi_minus_infinity(&AxialConfig::new(1.0, r).map_err(bipot::PotentialError::from)?)?)
    };
    let mut mag = Worst::min();
    mag.lower(at(1.0)?.abs(), || "beta=1, r=1".into());
    let vals = [(0.5, at(0.5)?), (1.0, at(1.0)?), (2.0, at(2.0)?)];
    let mut gap = Worst::min();
    for i in 0..3 {
        for j in i + 1..3 {
            let d = (vals[i].1 - vals[j].1).abs();
            gap.lower(d, || format!("r={} vs r={}", vals[i].0, vals[j].0));
        }
    }
    Ok(vec![
        check("phi_minus_infinity_nonzero", mag, 0.1, Comparison::AtLeast),
        check("phi_minus_infinity_varies", gap, 1e-4, Comparison::AtLeast),
    ])
}

fn scale_covariance(probe: &Probe) -> Result<Check, CliError> {
    let p = &probe.p;
    let ops = |beta: f64, rho: f64| -> Result<Vec<f64>, CliError> {
        let c = AxialConfig::from_rho(beta, rho).map_err(bipot::PotentialError::from)?;
        let mut v = vec![
            beta * probe.phi(&c)?,
            beta * probe.tilde(&c)?,
            beta * p.phi_minus_infinity(&c)?,
            beta * p.phi_def1_axial(&c, -2.0 * beta)?,
            beta * probe.def2_axial(&c, 3.0 * beta)?,
            beta * p.single_particle_potential(beta, 0.4 * beta)?,
        ];
        for kind in bipot::PotentialKind::ALL {
            v.push(p.effective_potential(kind, &c)?);
        }
        Ok(v)
    };
    let mut w = Worst::max();
    for rho in [0.3, 1.0, 10.0] {
        let base = ops(1.0, rho)?;
        for beta in [0.5, 2.0, 4.0] {
            for (k, (a, b)) in ops(beta, rho)?.iter().zip(&base).enumerate() {
                w.raise((a - b).abs(), || format!("beta={beta}, rho={rho}, op={k}"));
            }
        }
    }
    Ok(check("scale_covariance", w, 1e-9, Comparison::Below))
}

/// Twenty axial probe points on [-3r, 4r], nudged off the charges.
pub fn on_axis_probes(r: f64) -> Vec<f64> {
    (0..20)
        .map(|i| r * (-3.0 + 7.0 * i as f64 / 19.0))
        .map(|z: f64| {
            if (z / r * 4.0).fract() == 0.0 {
                z + 0.013 * r
            } else {
                z
            }
        })
        .collect()
}

/// Off-axis probes, in units of `r`.
pub const OFF_AXIS_PROBES: [(f64, f64, f64); 3] =
    [(0.5, 0.0, 0.5), (0.0, 0.4, 1.3), (0.3, 0.3, -0.2)];

fn curl_checks() -> Result<Vec<Check>, CliError> {
    let cfg = AxialConfig::new(1.0, 1.0).map_err(bipot::PotentialError::from)?;
    let fe = |e: bipot::FieldError| CliError::Potential(e.into());
    let mut on_axis = Worst::max();
    for z in on_axis_probes(cfg.r()) {
        let c = curl_probe(Point3::on_axis(z), &cfg, 1e-4).map_err(fe)?;
        on_axis.raise(c.norm(), || format!("z={z}"));
    }
    let scale = 1.0 / cfg.beta().powi(2);
    let (mut size, mut drift, mut radial) = (Worst::min(), Worst::max(), Worst::max());
    for (x, y, z) in OFF_AXIS_PROBES {
        let s = Point3::new(x, y, z).map_err(fe)?;
        let h = default_curl_step(s, &cfg);
        let coarse = curl_probe_richardson(s, &cfg, h).map_err(fe)?;
        let fine = curl_probe_richardson(s, &cfg, 0.5 * h).map_err(fe)?;
        let n = fine.norm();
        let at = || format!("s=({x}, {y}, {z})");
        size.lower(n / scale, at);
        drift.raise((coarse - fine).norm() / n, at);
        let rp = x.hypot(y);
        let phi = FieldVector::new(-y / rp, x / rp, 0.0).map_err(fe)?;
        radial.raise((fine - phi * fine.dot(&phi)).norm() / n, at);
    }
    Ok(vec![
        check("curl_on_axis", on_axis, 1e-6, Comparison::AtMost),
        check("curl_off_axis", size, 1e-2, Comparison::AtLeast),
        check("curl_richardson_stability", drift, 1e-6, Comparison::Below),
        check("curl_azimuthal", radial, 1e-6, Comparison::Below),
    ])
}

fn saturation_check() -> Result<Check, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(SATURATION_SEED);
    let mut w = Worst::max();
    for i in 0..SATURATION_SAMPLES {
        let beta = [0.5, 1.0, 2.0][i % 3];
        let dir: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let mag = 10f64.powf(rng.gen_range(-6.0..12.0)) / (beta * beta);
        let z = FieldVector::new(dir[0] * mag, dir[1] * mag, dir[2] * mag)
            .map_err(|e| CliError::Potential(e.into()))?;
        let ratio = f_bi(z, beta).norm() * beta * beta;
        w.raise(ratio, || format!("beta={beta}, |Z|={:e}", z.norm()));
    }
    Ok(check("saturation_bound", w, 1.0, Comparison::Below))
}

fn integrand_bounds() -> Check {
    // Distance outside [-1, 0) and (0, 1]; zero when the bounds hold.
    let mut w = Worst::max();
    for rho in crate::grid::grid(1e-3, 1e3, 13, crate::grid::Spacing::Log) {
        for x in crate::grid::grid(1.0, 1e4, 200, crate::grid::Spacing::Log) {
            let v = integrand_outer(x, rho);
            let excess = if v >= 0.0 {
                v + f64::MIN_POSITIVE
            } else {
                (-1.0 - v).max(0.0)
            };
            w.raise(excess, || format!("outer x={x}, rho={rho}"));
        }
        for x in crate::grid::grid(0.5, 1.0, 200, crate::grid::Spacing::Linear) {
            let v = integrand_inner(x, rho);
            let excess = if v <= 0.0 {
                -v + f64::MIN_POSITIVE
            } else {
                (v - 1.0).max(0.0)
            };
            w.raise(excess, || format!("inner x={x}, rho={rho}"));
        }
    }
    check("integrand_bounds", w, 0.0, Comparison::AtMost)
}

/// Runs every check.
pub fn suite(tol: Tolerance, shift: Perturbation) -> Result<Report, CliError> {
    let probe = Probe {
        p: AxialPotentials::new(tol),
        shift,
    };
    let mut checks = vec![
        born_constant_check(),
        quarter_c_check(&tol)?,
        difference_identity(&probe)?,
    ];
    checks.extend(asymptotic_checks(&probe)?);
    checks.extend(broken_asymptotics(&probe)?);
    checks.push(scale_covariance(&probe)?);
    checks.extend(curl_checks()?);
    checks.push(saturation_check()?);
    checks.push(integrand_bounds());
    Ok(Report {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn text(report: &Report) -> String {
    let mut s = String::new();
    for c in &report.checks {
        s += &format!(
            "{} {:<28} residual={:.3e} {} {:.1e}  (worst at {})\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.residual,
            c.comparison.symbol(),
            c.threshold,
            c.worst_at
        );
    }
    s += if report.passed {
        "all checks passed\n"
    } else {
        "verification FAILED\n"
    };
    s
}

pub fn run(a: &VerifyArgs, tol: Tolerance) -> Result<u8, CliError> {
    let shift = match &a.perturb {
        Some(raw) => Perturbation::parse(raw)?,
        None => Perturbation::default(),
    };
    let report = suite(tol, shift)?;
    let body = if a.json { json(&report) } else { text(&report) };
    crate::output::emit(None, &body)?;
    if !report.passed {
        for c in report.checks.iter().filter(|c| !c.passed) {
            eprintln!(
                "failed: {} residual {:e} at {}",
                c.name, c.residual, c.worst_at
            );
        }
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_SUCCESS)
}
