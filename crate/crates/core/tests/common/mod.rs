//! Shared helpers for the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

/// Scalars frozen by the arbitrary-precision oracle in `tools/oracle`.
pub fn goldens() -> HashMap<String, f64> {
    let text = include_str!("../golden/scalars.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            let key = it.next().expect("key").to_string();
            let value = it.next().expect("value").parse().expect("number");
            (key, value)
        })
        .collect()
}

pub fn golden(name: &str) -> f64 {
    *goldens()
        .get(name)
        .unwrap_or_else(|| panic!("no golden named {name}"))
}

/// Composite Simpson rule with `panels` (even) subintervals and
/// compensated summation.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels % 2 == 0);
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut add = |v: f64| {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    add(f(a));
    add(f(b));
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        add(w * f(a + h * i as f64));
    }
    sum * h / 3.0
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
