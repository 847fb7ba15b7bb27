//! Sample grids with exact endpoints.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

pub fn grid(r_min: f64, r_max: f64, points: usize, spacing: Spacing) -> Vec<f64> {
    let last = points - 1;
    let mut g: Vec<f64> = match spacing {
        Spacing::Linear => {
            let step = (r_max - r_min) / last as f64;
            (0..points).map(|i| r_min + step * i as f64).collect()
        }
        Spacing::Log => {
            let (a, b) = (r_min.ln(), r_max.ln());
            let step = (b - a) / last as f64;
            (0..points).map(|i| (a + step * i as f64).exp()).collect()
        }
    };
    g[0] = r_min;
    g[last] = r_max;
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_spacing() {
        let g = grid(0.02, 10.0, 500, Spacing::Linear);
        assert_eq!((g[0], g[499]), (0.02, 10.0));
        let l = grid(0.01, 50.0, 200, Spacing::Log);
        assert_eq!((l[0], l[199]), (0.01, 50.0));
        assert!(l.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(grid(1.0, 2.0, 2, Spacing::Log), vec![1.0, 2.0]);
    }
}
