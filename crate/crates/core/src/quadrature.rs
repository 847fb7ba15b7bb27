//! Globally adaptive Gauss-Kronrod integration.
//!
//! Every interval is integrated with the 7-point Gauss / 15-point Kronrod
//! pair. The interval with the largest local error estimate is bisected until
//! the summed estimate drops below `max(absolute, relative * |value|)`. The
//! rule is open, so integrable endpoint singularities are never evaluated.
//!
//! Semi-infinite ranges `[a, inf)` are mapped onto `[0, 1)` with
//! `t = a + u / (1 - u)`, `dt = du / (1 - u)^2`. This keeps algebraically
//! decaying tails (`~ t^-3` and slower) smooth near `u = 1`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

/// Kronrod abscissae on `[-1, 1]`, positive half, descending. Odd indices are
/// the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Width (in the mapped variable) below which a tail interval touching
/// `u = 1` that still carries more than the tolerance is taken as evidence
/// that the integrand does not decay. Corresponds to `t - a > 1e12`.
const TAIL_WIDTH: f64 = 1e-12;

/// Outcome of a successful integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Upper-bound style estimate of `|value - exact|`; never negative.
    pub error_estimate: f64,
    /// Number of integrand evaluations, at least one.
    pub evaluations: usize,
}

/// Convergence target for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
    pub max_subdivisions: usize,
}

impl Tolerance {
    pub const DEFAULT_ABSOLUTE: f64 = 1e-10;
    pub const DEFAULT_RELATIVE: f64 = 1e-10;
    pub const DEFAULT_MAX_SUBDIVISIONS: usize = 1_000_000;

    pub fn new(
        absolute: f64,
        relative: f64,
        max_subdivisions: usize,
    ) -> Result<Self, QuadratureError> {
        let in_unit = |v: f64| v > 0.0 && v < 1.0;
        if !in_unit(absolute) || !in_unit(relative) || max_subdivisions == 0 {
            return Err(QuadratureError::InvalidTolerance {
                absolute,
                relative,
                max_subdivisions,
            });
        }
        Ok(Self {
            absolute,
            relative,
            max_subdivisions,
        })
    }

    /// Same tolerance with the absolute target multiplied by `factor`.
    /// The result is clamped into the valid range.
    pub fn scale_absolute(self, factor: f64) -> Self {
        let absolute = (self.absolute * factor).clamp(f64::MIN_POSITIVE, 0.5);
        Self { absolute, ..self }
    }

    fn target(&self, value: f64) -> f64 {
        self.absolute.max(self.relative * value.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            absolute: Self::DEFAULT_ABSOLUTE,
            relative: Self::DEFAULT_RELATIVE,
            max_subdivisions: Self::DEFAULT_MAX_SUBDIVISIONS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("invalid interval: need finite a < b, got [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error(
        "invalid tolerance: absolute={absolute}, relative={relative}, \
         max_subdivisions={max_subdivisions}"
    )]
    InvalidTolerance {
        absolute: f64,
        relative: f64,
        max_subdivisions: usize,
    },
    #[error("integrand returned {value} at x = {abscissa}")]
    NonFinite { abscissa: f64, value: f64 },
    #[error(
        "no convergence after {subdivisions} subdivisions: best estimate {} +/- {}",
        best.value,
        best.error_estimate
    )]
    NotConverged {
        best: QuadratureResult,
        subdivisions: usize,
    },
    #[error("integrand does not decay on [{a}, inf): tail beyond t = {tail_start} still contributes {tail_value}")]
    NoDecay {
        a: f64,
        tail_start: f64,
        tail_value: f64,
    },
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Max-heap on error; ties broken by position so the order is total and
    // the refinement sequence reproducible.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

fn checked<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64, QuadratureError> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QuadratureError::NonFinite {
            abscissa: x,
            value: v,
        })
    }
}

/// One 15-point Kronrod evaluation of `f` on `[a, b]`.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment, QuadratureError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = checked(f, center)?;
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut resabs = res_k.abs();

    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = checked(f, center - dx)?;
        let f2 = checked(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_k;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let scale = half.abs();
    Ok(Segment {
        a,
        b,
        value: res_k * half,
        error: rescale_error((res_k - res_g) * half, resabs * scale, resasc * scale),
    })
}

/// Tail monitoring for the mapped semi-infinite integrand.
struct TailGuard {
    origin: f64,
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: &Tolerance,
    tail: Option<TailGuard>,
) -> Result<QuadratureResult, QuadratureError> {
    let first = kronrod15(f, a, b)?;
    let mut evaluations = 15;
    let mut value = first.value;
    let mut error = first.error;

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    heap.push(first);

    let mut subdivisions = 0;
    while error > tol.target(value) {
        let Some(worst) = heap.pop() else { break };

        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Interval exhausted at machine resolution; its error stays.
            frozen.push(worst);
            continue;
        }
        if let Some(guard) = &tail {
            if worst.b == 1.0
                && worst.b - worst.a < TAIL_WIDTH
                && worst.value.abs() > tol.target(value)
            {
                return Err(QuadratureError::NoDecay {
                    a: guard.origin,
                    tail_start: guard.origin + worst.a / (1.0 - worst.a),
                    tail_value: worst.value,
                });
            }
        }
        if subdivisions >= tol.max_subdivisions {
            heap.push(worst);
            let best = summarize(&heap, &frozen, evaluations);
            return Err(QuadratureError::NotConverged { best, subdivisions });
        }

        let left = kronrod15(f, worst.a, mid)?;
        let right = kronrod15(f, mid, worst.b)?;
        evaluations += 30;
        subdivisions += 1;

        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        // Resynchronise the running sums now and then to shed drift.
        if subdivisions % 4096 == 0 {
            let s = summarize(&heap, &frozen, evaluations);
            value = s.value;
            error = s.error_estimate;
        }
    }

    let result = summarize(&heap, &frozen, evaluations);
    if result.error_estimate > tol.target(result.value) {
        return Err(QuadratureError::NotConverged {
            best: result,
            subdivisions,
        });
    }
    Ok(result)
}

fn summarize(
    heap: &BinaryHeap<Segment>,
    frozen: &[Segment],
    evaluations: usize,
) -> QuadratureResult {
    // Sum in position order so the result does not depend on heap layout.
    let mut segments: Vec<Segment> = heap.iter().chain(frozen.iter()).copied().collect();
    segments.sort_by(|l, r| l.a.total_cmp(&r.a));
    let mut value = 0.0;
    let mut comp = 0.0;
    let mut error = 0.0;
    for s in &segments {
        // Neumaier summation.
        let t = value + s.value;
        if value.abs() >= s.value.abs() {
            comp += (value - t) + s.value;
        } else {
            comp += (s.value - t) + value;
        }
        value = t;
        error += s.error;
    }
    QuadratureResult {
        value: value + comp,
        error_estimate: error,
        evaluations,
    }
}

/// Integrates `f` over the finite interval `[a, b]`.
///
/// `f` is only sampled at interior points, so integrable singularities at
/// `a` or `b` are allowed.
pub fn integrate_finite<F>(
    f: F,
    a: f64,
    b: f64,
    tol: &Tolerance,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(QuadratureError::InvalidInterval { a, b });
    }
    adaptive(&f, a, b, tol, None)
}

/// Integrates `f` over `[a, inf)` through the map `t = a + u / (1 - u)`.
///
/// Fails with [`QuadratureError::NoDecay`] when the contribution from
/// `t > a + 1e12` stays above the tolerance.
pub fn integrate_semi_infinite<F>(
    f: F,
    a: f64,
    tol: &Tolerance,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !a.is_finite() {
        return Err(QuadratureError::InvalidInterval {
            a,
            b: f64::INFINITY,
        });
    }
    let mapped = |u: f64| {
        let w = 1.0 - u;
        let v = f(a + u / w);
        if v == 0.0 {
            0.0
        } else {
            v / (w * w)
        }
    };
    let guard = TailGuard { origin: a };
    adaptive(&mapped, 0.0, 1.0, tol, Some(guard)).map_err(|e| match e {
        QuadratureError::NonFinite { abscissa, value } => QuadratureError::NonFinite {
            abscissa: a + abscissa / (1.0 - abscissa),
            value,
        },
        other => other,
    })
}

/// Integrates `f` over `(-inf, b]` by reflection onto `[-b, inf)`.
pub fn integrate_to_minus_infinity<F>(
    f: F,
    b: f64,
    tol: &Tolerance,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite(|t| f(-t), -b, tol).map_err(|e| match e {
        QuadratureError::NonFinite { abscissa, value } => QuadratureError::NonFinite {
            abscissa: -abscissa,
            value,
        },
        QuadratureError::InvalidInterval { a, .. } => QuadratureError::InvalidInterval {
            a: f64::NEG_INFINITY,
            b: -a,
        },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate_finite(|x| x * x, 0.0, 1.0, &tol()).unwrap();
        assert_abs_diff_eq!(r.value, 1.0 / 3.0, epsilon = 1e-12);
        assert!(r.error_estimate >= 0.0);
        assert!(r.evaluations >= 1);
    }

    #[test]
    fn inverse_sqrt_endpoint_singularity() {
        let r = integrate_finite(|x| 1.0 / x.sqrt(), 0.0, 1.0, &tol()).unwrap();
        assert_abs_diff_eq!(r.value, 2.0, epsilon = 1e-9);
        assert!(r.error_estimate >= (r.value - 2.0).abs());
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_semi_infinite(|t| (-t).exp(), 0.0, &tol()).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn inverse_square_tail() {
        let r = integrate_semi_infinite(|t| 1.0 / (t * t), 1.0, &tol()).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn reflection_to_minus_infinity() {
        let r = integrate_to_minus_infinity(|t| t.exp(), 0.0, &tol()).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn rejects_reversed_interval() {
        assert!(matches!(
            integrate_finite(|x| x, 1.0, 0.0, &tol()),
            Err(QuadratureError::InvalidInterval { .. })
        ));
        assert!(matches!(
            integrate_finite(|x| x, 0.0, f64::INFINITY, &tol()),
            Err(QuadratureError::InvalidInterval { .. })
        ));
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(Tolerance::new(0.0, 1e-10, 10).is_err());
        assert!(Tolerance::new(1e-10, 1.0, 10).is_err());
        assert!(Tolerance::new(1e-10, 1e-10, 0).is_err());
        assert!(Tolerance::new(1e-10, 1e-10, 1).is_ok());
    }

    #[test]
    fn non_finite_reports_abscissa() {
        let err = integrate_finite(|x| 1.0 / (x - 0.5), 0.0, 1.0, &tol()).unwrap_err();
        match err {
            QuadratureError::NonFinite { abscissa, value } => {
                assert_eq!(abscissa, 0.5);
                assert!(value.is_infinite());
            }
            other => panic!("unexpected {other:?}"),
        }

        let err = integrate_semi_infinite(|t| if t > 3.0 { f64::NAN } else { 0.0 }, 0.0, &tol())
            .unwrap_err();
        match err {
            QuadratureError::NonFinite { abscissa, .. } => assert!(abscissa > 3.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_convergence_carries_estimate() {
        let tight = Tolerance::new(1e-14, 1e-14, 3).unwrap();
        let err = integrate_finite(|x| x.sin() / x.sqrt(), 0.0, 50.0, &tight).unwrap_err();
        match err {
            QuadratureError::NotConverged { best, subdivisions } => {
                assert_eq!(subdivisions, 3);
                assert!(best.value.is_finite());
                assert!(best.error_estimate > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_non_decay() {
        for f in [|_t: f64| 1.0, |t: f64| 1.0 / (1.0 + t)] {
            let err = integrate_semi_infinite(f, 0.0, &tol()).unwrap_err();
            assert!(matches!(err, QuadratureError::NoDecay { .. }), "{err:?}");
        }
    }

    #[test]
    fn deterministic_bitwise() {
        let f = |x: f64| (1.0 - 2.0 * x) / ((x * (x - 1.0)).powi(2) * 1e6).hypot(1.0 - 2.0 * x);
        let a = integrate_semi_infinite(f, 1.0, &tol()).unwrap();
        let b = integrate_semi_infinite(f, 1.0, &tol()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.evaluations, b.evaluations);
    }
}
