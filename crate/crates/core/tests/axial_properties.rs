mod common;

use bipot::{born_constant, AxialConfig, AxialPotentials, PotentialKind};

fn pots() -> AxialPotentials {
    AxialPotentials::default()
}

fn cfg(beta: f64, r: f64) -> AxialConfig {
    AxialConfig::new(beta, r).unwrap()
}

const BETAS: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];

#[test]
fn unit_config_goldens() {
    let p = pots();
    let c = cfg(1.0, 1.0);
    let cases = [
        ("phi_at_electron_b1_r1", p.phi_at_electron(&c).unwrap()),
        (
            "phi_tilde_at_electron_b1_r1",
            p.phi_tilde_at_electron(&c).unwrap(),
        ),
        (
            "phi_minus_infinity_b1_r1",
            p.phi_minus_infinity(&c).unwrap(),
        ),
        ("inner_integral_rho1", p.inner_integral(&c).unwrap()),
        ("outer_integral_rho1", p.outer_integral(&c).unwrap()),
        (
            "def1_b1_r1",
            p.effective_potential(PotentialKind::Def1, &c).unwrap(),
        ),
        (
            "def2_b1_r1",
            p.effective_potential(PotentialKind::Def2, &c).unwrap(),
        ),
    ];
    for (name, got) in cases {
        let want = common::golden(name);
        assert!((got - want).abs() < 1e-8, "{name}: {got} vs {want}");
    }
}

/// `phi - phi~ = phi(-inf) / 2`, with `phi(-inf)` taken from the raw line
/// integral over the whole axis rather than the substituted integrals.
#[test]
fn difference_identity_on_grid() {
    let p = pots();
    let mut worst: f64 = 0.0;
    for beta in BETAS {
        for rho in common::log_grid(0.1, 100.0, 7) {
            let c = AxialConfig::from_rho(beta, rho).unwrap();
            let phi = p.phi_at_electron(&c).unwrap();
            let tilde = p.phi_tilde_at_electron(&c).unwrap();
            let minf = p.phi_def1_axial(&c, f64::NEG_INFINITY).unwrap();
            let rel = (phi - tilde - 0.5 * minf).abs() / minf.abs();
            worst = worst.max(rel);
        }
    }
    assert!(worst < 1e-8, "worst relative residual {worst:e}");
}

#[test]
fn axial_routes_agree_with_substituted_integrals() {
    let p = pots();
    for (beta, r) in [(1.0, 1.0), (0.5, 0.05), (2.0, 50.0)] {
        let c = cfg(beta, r);
        let scale = 1.0 / beta;
        let d1 = p.phi_def1_axial(&c, r).unwrap() - p.phi_at_electron(&c).unwrap();
        let d2 = p.phi_def2_axial(&c, r).unwrap() - p.phi_tilde_at_electron(&c).unwrap();
        assert!(
            d1.abs() < 1e-8 * scale && d2.abs() < 1e-8 * scale,
            "beta={beta} r={r}"
        );
    }
}

#[test]
fn broken_asymptotic_condition() {
    let p = pots();
    let at = |r: f64| p.phi_minus_infinity(&cfg(1.0, r)).unwrap();
    let (half, one, two) = (at(0.5), at(1.0), at(2.0));
    assert!(one.abs() > 0.1);
    assert!((one - common::golden("phi_minus_infinity_b1_r1")).abs() < 1e-8);
    assert!((half - common::golden("phi_minus_infinity_b1_r0.5")).abs() < 1e-8);
    assert!((two - common::golden("phi_minus_infinity_b1_r2")).abs() < 1e-8);
    for (a, b) in [(half, one), (one, two), (half, two)] {
        assert!((a - b).abs() > 1e-4);
    }
}

#[test]
fn minus_infinity_limits() {
    let p = pots();
    let mag = |rho: f64| {
        p.phi_minus_infinity(&AxialConfig::from_rho(1.0, rho).unwrap())
            .unwrap()
            .abs()
    };
    let small: Vec<f64> = [1e-1, 1e-2, 1e-3].iter().map(|&r| mag(r)).collect();
    // The approach to zero is slow, roughly rho^(1/3).
    assert!(
        small[0] > small[1] && small[1] > small[2] && small[2] < 0.3 * small[0],
        "{small:?}"
    );
    let large: Vec<f64> = [1e1, 1e2, 1e3].iter().map(|&r| mag(r)).collect();
    assert!(
        large[0] > large[1] && large[1] > large[2] && large[2] < 1e-2,
        "{large:?}"
    );
}

#[test]
fn coulomb_tail_of_phi_at_electron() {
    let p = pots();
    let quarter_c = 0.25 * born_constant();
    let gaps: Vec<f64> = [1e2, 1e3, 1e4]
        .iter()
        .map(|&rho| {
            let c = AxialConfig::from_rho(1.0, rho).unwrap();
            (c.r() * (p.phi_at_electron(&c).unwrap() + quarter_c) - 1.0).abs()
        })
        .collect();
    assert!(
        gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 1e-2,
        "{gaps:?}"
    );
}

#[test]
fn def1_tails() {
    let p = pots();
    let c = cfg(1.0, 1.0);
    assert!(p.phi_def1_axial(&c, 1e6).unwrap().abs() <= 2e-6);
    let minf = p.phi_minus_infinity(&c).unwrap();
    assert!((p.phi_def1_axial(&c, -1e3).unwrap() - minf).abs() < 1e-3);
}

fn split_residuals(p: &AxialPotentials, c: &AxialConfig, s: f64) -> (f64, f64) {
    let half = 0.5 * p.phi_minus_infinity(c).unwrap();
    let plus = p.phi_def2_axial(c, s).unwrap() + half;
    let minus = p.phi_def2_axial(c, -s).unwrap() - half;
    (plus, minus)
}

#[test]
fn asymptotic_split_at_tail_rate() {
    let p = pots();
    for beta in [0.5, 1.0, 2.0] {
        let c = cfg(beta, beta);
        let s = 1e3 * beta;
        let (p1, m1) = split_residuals(&p, &c, s);
        let (p2, m2) = split_residuals(&p, &c, 2.0 * s);
        for (a, b) in [(p1, p2), (m1, m2)] {
            assert!(a.abs() < 1e-3 / beta, "beta={beta}: residual {a:e}");
            let ratio = a / b;
            assert!((ratio - 4.0).abs() < 0.05, "beta={beta}: ratio {ratio}");
        }
    }
}

#[test]
fn def2_far_field_matches_dipole_model() {
    let p = pots();
    let (beta, r) = (1.0, 1.0);
    let c = cfg(beta, r);
    for s in [50.0, 200.0, 1e3] {
        let (plus, minus) = split_residuals(&p, &c, s);
        // Saturation is negligible this far out; the remainder is Coulomb.
        let model_plus = 1.0 / s - 1.0 / (s - r);
        let model_minus = 1.0 / s - 1.0 / (s + r);
        assert!(
            (plus - model_plus).abs() < 1e-8,
            "s={s}: {plus:e} vs {model_plus:e}"
        );
        assert!(
            (minus - model_minus).abs() < 1e-8,
            "s={s}: {minus:e} vs {model_minus:e}"
        );
    }
}

#[test]
fn scale_covariance_of_every_operation() {
    let p = pots();
    let (rho, sigma) = (1.0, 0.37);
    let reference = |beta: f64| -> Vec<f64> {
        let c = AxialConfig::from_rho(beta, rho).unwrap();
        let mut v = vec![
            beta * p.phi_at_electron(&c).unwrap(),
            beta * p.phi_tilde_at_electron(&c).unwrap(),
            beta * p.phi_minus_infinity(&c).unwrap(),
            beta * p.phi_def1_axial(&c, beta * sigma).unwrap(),
            beta * p.phi_def1_axial(&c, -beta * 4.0).unwrap(),
            beta * p.phi_def2_axial(&c, beta * sigma).unwrap(),
            beta * p.phi_def2_axial(&c, beta * 3.0).unwrap(),
            beta * p.single_particle_potential(beta, beta * sigma).unwrap(),
        ];
        for kind in PotentialKind::ALL {
            v.push(p.effective_potential(kind, &c).unwrap());
        }
        v
    };
    let base = reference(1.0);
    for beta in [0.5, 2.0, 4.0] {
        for (i, (a, b)) in reference(beta).iter().zip(&base).enumerate() {
            assert!((a - b).abs() < 1e-9, "op {i} at beta={beta}: {a} vs {b}");
        }
    }
}

#[test]
fn single_particle_limits() {
    let p = pots();
    let quarter_c = 0.25 * born_constant();
    assert!((p.single_particle_potential(1.0, 0.0).unwrap() - quarter_c).abs() < 1e-10);
    for beta in [0.5, 2.0] {
        let v = p.single_particle_potential(beta, 0.0).unwrap();
        assert!((v - quarter_c / beta).abs() < 1e-9 / beta);
    }
    let s = 1e4;
    assert!((s * p.single_particle_potential(1.0, s).unwrap() - 1.0).abs() < 1e-6);
}

/// Pointwise on the plotted range of the effective-potential figure.
#[test]
fn figure_two_inequality() {
    let p = pots();
    let grid: Vec<f64> = (0..500)
        .map(|i| 0.02 + (10.0 - 0.02) * i as f64 / 499.0)
        .filter(|r| (0.2..=3.0).contains(r))
        .collect();
    for r in grid {
        let c = cfg(1.0, r);
        let d1 = p.effective_potential(PotentialKind::Def1, &c).unwrap();
        let d2 = p.effective_potential(PotentialKind::Def2, &c).unwrap();
        let s = p.effective_potential(PotentialKind::Single, &c).unwrap();
        assert!(d2 <= d1, "r={r}");
        let spread = (d1 - d2).abs();
        assert!(spread > (d1 - s).abs() && spread > (d2 - s).abs(), "r={r}");
    }
}

#[test]
fn effective_potentials_approach_coulomb() {
    let p = pots();
    let c = AxialConfig::from_rho(1.0, 1e2).unwrap();
    let coulomb = -1.0 / c.r();
    for kind in [PotentialKind::Def1, PotentialKind::Def2] {
        let v = p.effective_potential(kind, &c).unwrap();
        assert!(v < 0.0);
        assert!(
            ((v - coulomb) / coulomb).abs() < 0.05,
            "{kind}: {v} vs {coulomb}"
        );
    }
}
