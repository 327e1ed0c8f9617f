//! Nonlinear terms F(x_current, x_delayed, x_integral).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// coeff * x^p1 * xd^p2 * z^p3
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub powers: [u32; 3],
}

impl Monomial {
    pub fn new(coeff: f64, powers: [u32; 3]) -> Self {
        Self { coeff, powers }
    }

    fn eval(&self, args: [f64; 3]) -> f64 {
        let mut v = self.coeff;
        for (x, &p) in args.iter().zip(&self.powers) {
            if p > 0 {
                v *= x.powi(p as i32);
            }
        }
        v
    }
}

pub type NonlinearFn = dyn Fn(f64, f64, f64) -> f64 + Send + Sync;

#[derive(Clone, Default)]
pub enum Nonlinearity {
    #[default]
    Zero,
    Polynomial(Vec<Monomial>),
    /// Arbitrary evaluator; library use only, not serialisable.
    Custom(Arc<NonlinearFn>),
}

impl Nonlinearity {
    pub fn polynomial(terms: Vec<Monomial>) -> Self {
        if terms.is_empty() {
            Self::Zero
        } else {
            Self::Polynomial(terms)
        }
    }

    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self::Custom(Arc::new(f))
    }

    /// F(-3 T+ x^2 - x^3) for the Suarez-Schopf model about T+.
    pub fn suarez_schopf(t_plus: f64) -> Self {
        Self::Polynomial(vec![
            Monomial::new(-3.0 * t_plus, [2, 0, 0]),
            Monomial::new(-1.0, [3, 0, 0]),
        ])
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Zero => true,
            Self::Polynomial(t) => t.iter().all(|m| m.coeff == 0.0),
            Self::Custom(_) => false,
        }
    }

    pub fn eval(&self, current: f64, delayed: f64, integral: f64) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::Polynomial(terms) => terms
                .iter()
                .map(|m| m.eval([current, delayed, integral]))
                .sum(),
            Self::Custom(f) => f(current, delayed, integral),
        }
    }

    pub fn terms(&self) -> Option<&[Monomial]> {
        match self {
            Self::Zero => Some(&[]),
            Self::Polynomial(t) => Some(t),
            Self::Custom(_) => None,
        }
    }
}

impl fmt::Debug for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => write!(f, "Zero"),
            Self::Polynomial(t) => f.debug_tuple("Polynomial").field(t).finish(),
            Self::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_eval() {
        let f = Nonlinearity::polynomial(vec![
            Monomial::new(2.0, [1, 1, 0]),
            Monomial::new(-1.0, [0, 0, 2]),
            Monomial::new(0.5, [0, 0, 0]),
        ]);
        assert_eq!(f.eval(3.0, 4.0, 5.0), 24.0 - 25.0 + 0.5);
    }

    #[test]
    fn suarez_schopf_term() {
        let f = Nonlinearity::suarez_schopf(0.5);
        assert_eq!(f.eval(1.0, 7.0, 9.0), -2.5);
        assert_eq!(f.eval(0.0, 1.0, 1.0), 0.0);
    }

    #[test]
    fn zero_and_custom() {
        assert!(Nonlinearity::Zero.is_zero());
        assert!(Nonlinearity::polynomial(vec![]).is_zero());
        let g = Nonlinearity::custom(|x, y, z| x + y + z);
        assert!(!g.is_zero());
        assert_eq!(g.eval(1.0, 2.0, 3.0), 6.0);
        assert!(g.terms().is_none());
    }
}
