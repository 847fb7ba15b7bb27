//! Finite-difference oracle for the radial eigenvalue problem.
//!
//! On the uniform `x = ln r` mesh the radial equation for `w = u / sqrt(r)`
//! reads `-w'' + [(l + 1/2)^2 + 2 r^2 V] w = E (2 r^2) w`. Three-point
//! differences turn it into the symmetric generalized problem `A w = E B w`
//! with tridiagonal `A` and diagonal positive `B`. The inner boundary uses
//! the regular behaviour `w ~ r^(l+1/2)` through a ghost node and the outer
//! one is a hard wall at `r_max`, matching the shooting solver.
//!
//! Eigenvalues come from Sylvester inertia: the number of negative pivots of
//! `A - E B` equals the number of eigenvalues below `E`. For small meshes a
//! dense symmetric eigendecomposition of `B^(-1/2) A B^(-1/2)` provides an
//! independent cross-check of the counts.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};

pub struct FdProblem {
    diag: Vec<f64>,
    off: Vec<f64>,
    mass: Vec<f64>,
}

impl FdProblem {
    pub fn new<V: Fn(f64) -> f64>(
        v: V,
        l: u32,
        r_min: f64,
        r_max: f64,
        mesh_points: usize,
    ) -> Self {
        let (xa, xb) = (r_min.ln(), r_max.ln());
        let h = (xb - xa) / (mesh_points - 1) as f64;
        let lh = f64::from(l) + 0.5;
        let inv_h2 = 1.0 / (h * h);
        // Unknowns at nodes 0..n-2; node n-1 is the wall.
        let n = mesh_points - 1;
        let mut diag = Vec::with_capacity(n);
        let mut mass = Vec::with_capacity(n);
        for i in 0..n {
            let r = (xa + h * i as f64).exp();
            let r2 = 2.0 * r * r;
            let kinetic = if i == 0 {
                (2.0 - (-lh * h).exp()) * inv_h2
            } else {
                2.0 * inv_h2
            };
            diag.push(kinetic + lh * lh + r2 * v(r));
            mass.push(r2);
        }
        let off = vec![-inv_h2; n - 1];
        Self { diag, off, mass }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `e`.
    pub fn count_below(&self, e: f64) -> usize {
        let mut count = 0;
        let mut d = self.diag[0] - e * self.mass[0];
        for i in 0..self.len() {
            if i > 0 {
                let prev = if d == 0.0 { f64::EPSILON } else { d };
                d = self.diag[i] - e * self.mass[i] - self.off[i - 1] * self.off[i - 1] / prev;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th eigenvalue (0-based) by bisection on the inertia count.
    pub fn eigenvalue(&self, k: usize, lo: f64, hi: f64) -> f64 {
        let (mut lo, mut hi) = (lo, hi);
        assert!(
            self.count_below(lo) <= k && self.count_below(hi) > k,
            "bad bracket"
        );
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// All eigenvalues from a dense symmetric decomposition, ascending.
    pub fn dense_eigenvalues(&self) -> Vec<f64> {
        let n = self.len();
        let s: Vec<f64> = self.mass.iter().map(|m| 1.0 / m.sqrt()).collect();
        let mut a = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = self.diag[i] * s[i] * s[i];
            if i + 1 < n {
                let v = self.off[i] * s[i] * s[i + 1];
                a[(i, i + 1)] = v;
                a[(i + 1, i)] = v;
            }
        }
        let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Richardson-extrapolated FD eigenvalue: meshes with `n` and `2n - 1`
/// points share every other node, so `(4 E(h/2) - E(h)) / 3` removes the
/// `h^2` error term.
pub fn extrapolated_level<V: Fn(f64) -> f64 + Copy>(
    v: V,
    l: u32,
    r_min: f64,
    r_max: f64,
    mesh_points: usize,
    k: usize,
    bracket: (f64, f64),
) -> f64 {
    let coarse =
        FdProblem::new(v, l, r_min, r_max, mesh_points).eigenvalue(k, bracket.0, bracket.1);
    let fine =
        FdProblem::new(v, l, r_min, r_max, 2 * mesh_points - 1).eigenvalue(k, bracket.0, bracket.1);
    (4.0 * fine - coarse) / 3.0
}
