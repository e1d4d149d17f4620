//! Adaptive Gauss–Legendre quadrature.
//!
//! Each panel is integrated with an `n`-point Gauss–Legendre rule and compared
//! against the sum over its two halves; panels whose difference exceeds their
//! share of the absolute target are bisected.

use crate::error::{Error, Result};

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// Sum of the per-panel coarse/fine differences.
    pub error: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub order: usize,
    pub max_depth: u32,
    pub max_panels: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-11, order: 20, max_depth: 40, max_panels: 20_000 }
    }
}

/// Integrates `f` over `[a, b]` to the absolute target in `opts`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &AdaptiveOptions) -> Result<Estimate> {
    let rule = GaussLegendre::new(opts.order);
    let width = (b - a).abs();
    if width == 0.0 {
        return Ok(Estimate { value: 0.0, error: 0.0, panels: 0 });
    }
    let mut stack = vec![(a, b, rule.integrate(&f, a, b), 0u32)];
    let mut value = 0.0;
    let mut error = 0.0;
    let mut panels = 0usize;
    let mut converged = true;
    while let Some((lo, hi, coarse, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.integrate(&f, lo, mid);
        let right = rule.integrate(&f, mid, hi);
        let fine = left + right;
        let diff = (fine - coarse).abs();
        let share = opts.abs_tol * (hi - lo).abs() / width;
        if diff <= share || depth >= opts.max_depth || panels + stack.len() >= opts.max_panels {
            if diff > share {
                converged = false;
            }
            value += fine;
            error += diff;
            panels += 1;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    if !converged || !value.is_finite() {
        return Err(Error::QuadratureNotConverged { estimate: value, bound: error });
    }
    Ok(Estimate { value, error, panels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(5);
        // degree 9 is the highest exact degree of a 5-point rule
        let v = rule.integrate(|x| x.powi(9) + x.powi(8), -1.0, 1.0);
        assert!((v - 2.0 / 9.0).abs() < 1e-15);
        let sum: f64 = rule.weights().iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn nodes_are_symmetric_and_sorted() {
        let rule = GaussLegendre::new(20);
        let n = rule.nodes();
        assert!(n.windows(2).all(|w| w[0] < w[1]));
        for i in 0..n.len() {
            assert!((n[i] + n[n.len() - 1 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn adaptive_handles_smooth_and_peaked_integrands() {
        let opts = AdaptiveOptions::default();
        let e = integrate(|x: f64| x.sin(), 0.0, std::f64::consts::PI, &opts).unwrap();
        assert!((e.value - 2.0).abs() < 1e-13);
        let e = integrate(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, &opts).unwrap();
        let exact = 2.0 / 1e-2 * (1.0f64 / 1e-2).atan();
        assert!((e.value - exact).abs() < 1e-9, "{} vs {exact}", e.value);
        assert!(e.panels > 1);
    }

    #[test]
    fn reversed_interval_flips_sign() {
        let opts = AdaptiveOptions::default();
        let e = integrate(|x: f64| x.exp(), 1.0, 0.0, &opts).unwrap();
        assert!((e.value + (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn reports_non_convergence() {
        let opts = AdaptiveOptions { max_depth: 2, ..Default::default() };
        let r = integrate(|x: f64| x.abs().sqrt().recip(), -1.0, 1.0, &opts);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }
}
