use super::{EigenLevel, RadialProblem, SpectrumError};

/// Values are rescaled once they exceed this magnitude; only ratios and
/// signs matter for node counting and matching.
const RESCALE_ABOVE: f64 = 1e150;

/// Bracket width (relative to `|E|`) at which bisection hands over to the
/// matching-point root search.
const HANDOVER_WIDTH: f64 = 1e-9;

/// The discretised radial problem: `w'' = (q_i - b_i E) w` on a uniform
/// `ln r` mesh with spacing `h`.
struct Mesh {
    h2_12: f64,
    q: Vec<f64>,
    b: Vec<f64>,
    w0: f64,
    w1: f64,
}

impl Mesh {
    fn new(problem: &RadialProblem) -> Self {
        let n = problem.mesh_points;
        let (xa, xb) = (problem.r_min.ln(), problem.r_max.ln());
        let h = (xb - xa) / (n - 1) as f64;
        let lh = f64::from(problem.l) + 0.5;
        let mut q = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for i in 0..n {
            let r = if i == n - 1 {
                problem.r_max
            } else {
                (xa + h * i as f64).exp()
            };
            let r2 = 2.0 * r * r;
            q.push(lh * lh + r2 * problem.potential.value(r));
            b.push(r2);
        }
        // u ~ r^(l+1)  =>  w ~ r^(l+1/2); only the ratio w1 / w0 matters.
        let w0 = 1.0;
        let w1 = (lh * h).exp();
        Self {
            h2_12: h * h / 12.0,
            q,
            b,
            w0,
            w1,
        }
    }

    fn len(&self) -> usize {
        self.q.len()
    }

    #[inline]
    fn f(&self, i: usize, e: f64) -> f64 {
        1.0 - self.h2_12 * (self.q[i] - self.b[i] * e)
    }

    /// Lowest value of the effective potential `q_i / b_i` on the mesh.
    fn floor(&self) -> f64 {
        self.q
            .iter()
            .zip(&self.b)
            .map(|(q, b)| q / b)
            .fold(f64::INFINITY, f64::min)
    }

    fn effective(&self, i: usize) -> f64 {
        self.q[i] / self.b[i]
    }

    /// Sign changes of the outward solution over the whole mesh, the last
    /// point included. Equals the number of discrete eigenvalues below `e`.
    fn count_nodes(&self, e: f64) -> usize {
        let n = self.len();
        let (mut prev, mut cur) = (self.w0, self.w1);
        let mut nodes = usize::from(prev * cur < 0.0);
        let (mut fp, mut fc) = (self.f(0, e), self.f(1, e));
        for i in 1..n - 1 {
            let fn_ = self.f(i + 1, e);
            let next = ((12.0 - 10.0 * fc) * cur - fp * prev) / fn_;
            if next * cur < 0.0 || (next == 0.0 && cur != 0.0) {
                nodes += 1;
            }
            prev = cur;
            cur = next;
            if cur.abs() > RESCALE_ABOVE {
                prev /= RESCALE_ABOVE;
                cur /= RESCALE_ABOVE;
            }
            fp = fc;
            fc = fn_;
        }
        nodes
    }

    /// Outermost point where the motion is classically allowed at `e`,
    /// clamped away from the mesh ends.
    fn turning_point(&self, e: f64) -> usize {
        let n = self.len();
        let idx = (0..n)
            .rev()
            .find(|&i| self.effective(i) < e)
            .unwrap_or_else(|| {
                (0..n)
                    .min_by(|&i, &j| self.effective(i).total_cmp(&self.effective(j)))
                    .unwrap_or(n / 2)
            });
        idx.clamp(2, n - 3)
    }

    /// Jump in the Numerov-consistent logarithmic derivative at `m` between
    /// the outward and inward solutions. Zero at an eigenvalue.
    fn mismatch(&self, e: f64, m: usize) -> f64 {
        let n = self.len();

        // Outward: ratio w[m-1] / w[m].
        let (mut prev, mut cur) = (self.w0, self.w1);
        for i in 1..m {
            let next =
                ((12.0 - 10.0 * self.f(i, e)) * cur - self.f(i - 1, e) * prev) / self.f(i + 1, e);
            prev = cur;
            cur = next;
            if cur.abs() > RESCALE_ABOVE {
                prev /= RESCALE_ABOVE;
                cur /= RESCALE_ABOVE;
            }
        }
        let out_ratio = prev / cur;

        // Inward from w[n-1] = 0: ratio w[m+1] / w[m].
        let (mut prev, mut cur) = (0.0, 1e-30);
        for i in (m + 1..n - 1).rev() {
            let next =
                ((12.0 - 10.0 * self.f(i, e)) * cur - self.f(i + 1, e) * prev) / self.f(i - 1, e);
            prev = cur;
            cur = next;
            if cur.abs() > RESCALE_ABOVE {
                prev /= RESCALE_ABOVE;
                cur /= RESCALE_ABOVE;
            }
        }
        let in_ratio = prev / cur;

        self.f(m - 1, e) * out_ratio + self.f(m + 1, e) * in_ratio - (12.0 - 10.0 * self.f(m, e))
    }
}

/// Refines a root of `g` in `[lo, hi]` given opposite signs at the ends
/// (Illinois regula falsi). Returns `None` if the signs agree.
fn refine_root(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let (mut glo, mut ghi) = (g(lo), g(hi));
    if !(glo.is_finite() && ghi.is_finite()) || glo * ghi > 0.0 {
        return None;
    }
    if glo == 0.0 {
        return Some(lo);
    }
    if ghi == 0.0 {
        return Some(hi);
    }
    // Which end moved last: -1 low, +1 high.
    let mut last = 0i8;
    for _ in 0..200 {
        let mut x = (lo * ghi - hi * glo) / (ghi - glo);
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        if hi - lo <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            return Some(x);
        }
        let gx = g(x);
        if !gx.is_finite() {
            return None;
        }
        if gx == 0.0 {
            return Some(x);
        }
        if gx * glo > 0.0 {
            lo = x;
            glo = gx;
            if last == -1 {
                ghi *= 0.5;
            }
            last = -1;
        } else {
            hi = x;
            ghi = gx;
            if last == 1 {
                glo *= 0.5;
            }
            last = 1;
        }
    }
    Some(0.5 * (lo + hi))
}

impl Mesh {
    fn solve_level(&self, level: usize, floor: f64, top: f64) -> Result<f64, SpectrumError> {
        let (mut lo, mut hi) = (floor, top);
        let (count_lo, count_hi) = (self.count_nodes(lo), self.count_nodes(hi));
        if count_lo > level || count_hi <= level {
            return Err(SpectrumError::NoBracket {
                level,
                e_lo: lo,
                count_lo,
                e_hi: hi,
                count_hi,
            });
        }
        // Invariant: count(lo) <= level < count(hi).
        let width = |lo: f64, hi: f64| hi - lo;
        let scale = |lo: f64, hi: f64| lo.abs().max(hi.abs()).max(1e-300);
        while width(lo, hi) > HANDOVER_WIDTH * scale(lo, hi) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_nodes(mid) > level {
                hi = mid;
            } else {
                lo = mid;
            }
        }

        let m = self.turning_point(0.5 * (lo + hi));
        if let Some(e) = refine_root(|e| self.mismatch(e, m), lo, hi) {
            return Ok(e);
        }
        // Matching function did not change sign across the bracket; finish
        // on the node count alone.
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.count_nodes(mid) > level {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
}

/// The `count` lowest levels of `problem`, ordered by node number.
///
/// For potentials that are negative at `r_max` only bound states (`E < 0`)
/// are eligible; otherwise (confining potentials) energies up to the
/// effective potential at `r_max` are searched.
pub fn solve_levels(
    problem: &RadialProblem,
    count: usize,
) -> Result<Vec<EigenLevel>, SpectrumError> {
    if count == 0 {
        return Err(SpectrumError::InvalidProblem(
            "count must be at least 1".into(),
        ));
    }
    let mesh = Mesh::new(problem);
    if !mesh.q.iter().all(|q| q.is_finite()) {
        return Err(SpectrumError::InvalidProblem(
            "potential is not finite on the mesh".into(),
        ));
    }
    let floor = {
        let f = mesh.floor();
        f - 1e-6 * f.abs().max(1e-300)
    };
    let top = if problem.potential.value(problem.r_max) < 0.0 {
        0.0
    } else {
        mesh.effective(mesh.len() - 1)
    };
    // Numerov node counting is a valid Sturm count only while every
    // f_i = 1 - h^2 (q_i - b_i E) / 12 stays positive; f grows with E, so the
    // lowest trial energy is the binding one.
    let g_max = mesh
        .q
        .iter()
        .zip(&mesh.b)
        .map(|(q, b)| q - b * floor)
        .fold(0.0, f64::max);
    if g_max * mesh.h2_12 >= 1.0 {
        let span = (problem.r_max / problem.r_min).ln();
        let needed = (span * (g_max / 12.0).sqrt()).ceil() as usize + 1;
        return Err(SpectrumError::InvalidProblem(format!(
            "mesh too coarse for the energy window: {} points, need more than {needed}",
            problem.mesh_points
        )));
    }
    if floor >= top {
        return Err(SpectrumError::Shortfall {
            requested: count,
            available: 0,
        });
    }
    let available = mesh.count_nodes(top);
    if available < count {
        return Err(SpectrumError::Shortfall {
            requested: count,
            available,
        });
    }

    let mut levels = Vec::with_capacity(count);
    let mut lo = floor;
    for n in 0..count {
        let e = mesh.solve_level(n, lo, top)?;
        levels.push(EigenLevel {
            nodes: n,
            l: problem.l,
            energy: e,
        });
        lo = e;
    }
    Ok(levels)
}
