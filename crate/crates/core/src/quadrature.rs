//! Gauss-Legendre quadrature on [-1, 1].

use crate::basis::legendre_with_derivative;

pub const DEFAULT_ORDER: usize = 64;

/// An m-point Gauss-Legendre rule. Exact for polynomials of degree <= 2m - 1.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Nodes are the roots of L_m, located by Newton iteration from the
    /// Chebyshev-like initial guess cos(pi (i + 3/4) / (m + 1/2)).
    ///
    /// # Panics
    /// Panics if `order == 0`.
    pub fn gauss_legendre(order: usize) -> Self {
        assert!(order > 0, "quadrature order must be positive");
        let m = order;
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        let half = m.div_ceil(2);
        for i in 0..half {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(m, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(m, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // descending guesses; store ascending and mirror
            nodes[i] = -x;
            weights[i] = w;
            nodes[m - 1 - i] = x;
            weights[m - 1 - i] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Approximates the integral of `f` over [-1, 1].
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Approximates the integral of `f` over [lo, hi].
    pub fn integrate_on<F: Fn(f64) -> f64>(&self, lo: f64, hi: f64, f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        half * self.integrate(|s| f(mid + half * s))
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self::gauss_legendre(DEFAULT_ORDER)
    }
}

/// <f, g>_E = (1/2) int_{-1}^{1} f g ds + f(1) g(1).
pub fn inner_product_e<F, G>(f: F, g: G, rule: &QuadratureRule) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    0.5 * rule.integrate(|s| f(s) * g(s)) + f(1.0) * g(1.0)
}
