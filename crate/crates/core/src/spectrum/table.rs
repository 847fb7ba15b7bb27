use crate::axial::{AxialPotentials, PotentialKind};

use super::SpectrumError;

/// Sampled potential with natural cubic-spline interpolation in `ln r` and
/// an analytic `-coupling / r` tail beyond the last node.
///
/// Below the first node the first value is held constant.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTable {
    grid: Vec<f64>,
    values: Vec<f64>,
    log_grid: Vec<f64>,
    curvature: Vec<f64>,
    tail_coupling: f64,
}

impl PotentialTable {
    pub const MIN_NODES: usize = 16;
    /// Largest allowed relative gap between the last node and the tail.
    pub const TAIL_MISMATCH: f64 = 0.05;

    pub fn new(
        grid: Vec<f64>,
        values: Vec<f64>,
        tail_coupling: f64,
    ) -> Result<Self, SpectrumError> {
        if grid.len() != values.len() {
            return Err(SpectrumError::InvalidTable(format!(
                "{} radii but {} values",
                grid.len(),
                values.len()
            )));
        }
        if grid.len() < Self::MIN_NODES {
            return Err(SpectrumError::InvalidTable(format!(
                "need at least {} nodes, got {}",
                Self::MIN_NODES,
                grid.len()
            )));
        }
        if !grid.iter().all(|r| r.is_finite() && *r > 0.0) || !values.iter().all(|v| v.is_finite())
        {
            return Err(SpectrumError::InvalidTable(
                "radii must be positive and values finite".into(),
            ));
        }
        if !grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(SpectrumError::InvalidTable(
                "grid is not strictly increasing".into(),
            ));
        }
        if !(tail_coupling.is_finite() && tail_coupling > 0.0) {
            return Err(SpectrumError::InvalidTable(format!(
                "tail coupling must be positive, got {tail_coupling}"
            )));
        }
        let (r_last, v_last) = (grid[grid.len() - 1], values[values.len() - 1]);
        let tail = -tail_coupling / r_last;
        let gap = ((v_last - tail) / tail).abs();
        if gap > Self::TAIL_MISMATCH {
            return Err(SpectrumError::TailMismatch {
                r: r_last,
                value: v_last,
                tail,
            });
        }

        let log_grid: Vec<f64> = grid.iter().map(|r| r.ln()).collect();
        let curvature = natural_spline(&log_grid, &values);
        Ok(Self {
            grid,
            values,
            log_grid,
            curvature,
            tail_coupling,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail_coupling(&self) -> f64 {
        self.tail_coupling
    }

    pub fn value_at(&self, r: f64) -> f64 {
        let n = self.grid.len();
        if r >= self.grid[n - 1] {
            return if r == self.grid[n - 1] {
                self.values[n - 1]
            } else {
                -self.tail_coupling / r
            };
        }
        if r <= self.grid[0] {
            return self.values[0];
        }
        let t = r.ln();
        let i = self.log_grid.partition_point(|&x| x <= t).clamp(1, n - 1) - 1;
        let (t0, t1) = (self.log_grid[i], self.log_grid[i + 1]);
        let h = t1 - t0;
        let a = (t1 - t) / h;
        let b = 1.0 - a;
        a * self.values[i]
            + b * self.values[i + 1]
            + ((a * a * a - a) * self.curvature[i] + (b * b * b - b) * self.curvature[i + 1])
                * h
                * h
                / 6.0
    }
}

/// Second derivatives of the natural cubic spline through `(x, y)`.
fn natural_spline(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut m = vec![0.0; n];
    let mut u = vec![0.0; n];
    for i in 1..n - 1 {
        let sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
        let p = sig * m[i - 1] + 2.0;
        m[i] = (sig - 1.0) / p;
        let slope = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        u[i] = (6.0 * slope / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
    }
    m[n - 1] = 0.0;
    for k in (0..n - 1).rev() {
        m[k] = m[k] * m[k + 1] + u[k];
    }
    m
}

/// Samples `effective_potential(kind, beta, r_i)` at every node of `grid`.
///
/// The tail coupling is `beta`, the Coulomb limit shared by all kinds.
pub fn build_potential_table(
    kind: PotentialKind,
    beta: f64,
    grid: &[f64],
    potentials: &AxialPotentials,
) -> Result<PotentialTable, SpectrumError> {
    let samples = potentials.sample(kind, beta, grid)?;
    PotentialTable::new(
        grid.to_vec(),
        samples.into_iter().map(|s| s.value).collect(),
        beta,
    )
}

/// `n` log-spaced radii from `r_min` to `r_max`, endpoints exact.
pub fn log_spaced(r_min: f64, r_max: f64, n: usize) -> Vec<f64> {
    let (a, b) = (r_min.ln(), r_max.ln());
    let step = (b - a) / (n - 1) as f64;
    let mut g: Vec<f64> = (0..n).map(|i| (a + step * i as f64).exp()).collect();
    g[0] = r_min;
    g[n - 1] = r_max;
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn coulomb_table_is_exact_at_nodes() {
        let grid = log_spaced(1e-3, 100.0, 64);
        let p = AxialPotentials::default();
        let t = build_potential_table(PotentialKind::Coulomb, 0.5, &grid, &p).unwrap();
        for (r, v) in t.grid().iter().zip(t.values()) {
            assert_eq!(*v, -0.5 / r);
            assert_eq!(t.value_at(*r), *v);
        }
        assert_eq!(t.value_at(200.0), -0.5 / 200.0);
    }

    #[test]
    fn spline_reproduces_smooth_function() {
        let grid = log_spaced(1e-2, 10.0, 200);
        let f = |r: f64| -(1.0 + 0.5 * r.ln().sin() / (1.0 + r)) / r;
        let vals: Vec<f64> = grid.iter().map(|&r| f(r)).collect();
        let t = PotentialTable::new(grid.clone(), vals, 1.0).unwrap();
        // The natural end condition costs accuracy in the first and last few
        // intervals only.
        for w in grid[5..grid.len() - 5].windows(2) {
            let r = (w[0] * w[1]).sqrt();
            assert_relative_eq!(t.value_at(r), f(r), max_relative = 1e-6);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let grid = log_spaced(1e-2, 10.0, 20);
        let vals: Vec<f64> = grid.iter().map(|r| -1.0 / r).collect();
        assert!(PotentialTable::new(grid[..10].to_vec(), vals[..10].to_vec(), 1.0).is_err());
        assert!(PotentialTable::new(grid.clone(), vals[..19].to_vec(), 1.0).is_err());

        let mut unsorted = grid.clone();
        unsorted.swap(3, 4);
        assert!(PotentialTable::new(unsorted, vals.clone(), 1.0).is_err());

        // Tail off by 10%.
        assert!(matches!(
            PotentialTable::new(grid.clone(), vals.clone(), 1.1),
            Err(SpectrumError::TailMismatch { .. })
        ));
        assert!(PotentialTable::new(grid, vals, 1.04).is_ok());
    }
}
