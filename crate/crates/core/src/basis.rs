//! Legendre and Koornwinder polynomials on [-1, 1] and the rescaled
//! Koornwinder family on [-tau, 0].
//!
//! Koornwinder polynomials are built from Legendre polynomials as
//!
//! K_n(s) = -(1 + s) L_n'(s) + (n^2 + n + 1) L_n(s)
//!
//! and are orthogonal for the measure ds/2 + delta_1 (Lebesgue plus a point
//! mass at s = 1). Every K_n is normalised so that K_n(1) = 1.

use crate::error::{check_tau, GkError, Result};

/// Largest degree accepted by [`PolynomialBasis`] unless overridden.
pub const DEFAULT_MAX_DEGREE: usize = 200;

/// L_n(s) by the Bonnet three-term recurrence.
pub fn legendre_eval(n: usize, s: f64) -> f64 {
    legendre_pair(n, s).1
}

/// (L_{n-1}(s), L_n(s)), with L_{-1} taken as 0.
fn legendre_pair(n: usize, s: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut curr = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * s * curr - kf * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    (prev, curr)
}

/// Derivative from (1 - s^2) L_n' = n (L_{n-1} - s L_n), with the exact limit
/// L_n'(+-1) = (+-1)^(n-1) n (n+1) / 2 at the endpoints.
fn legendre_derivative_from(n: usize, s: f64, l_prev: f64, l_n: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    if s == 1.0 || s == -1.0 {
        let magnitude = 0.5 * nf * (nf + 1.0);
        return if s == 1.0 || n % 2 == 1 {
            magnitude
        } else {
            -magnitude
        };
    }
    nf * (l_prev - s * l_n) / (1.0 - s * s)
}

/// (L_n(s), L_n'(s)).
pub fn legendre_with_derivative(n: usize, s: f64) -> (f64, f64) {
    let (prev, curr) = legendre_pair(n, s);
    (curr, legendre_derivative_from(n, s, prev, curr))
}

pub fn legendre_derivative(n: usize, s: f64) -> f64 {
    legendre_with_derivative(n, s).1
}

#[inline]
fn koornwinder_from(n: usize, s: f64, l_n: f64, dl_n: f64) -> f64 {
    let nf = n as f64;
    -(1.0 + s) * dl_n + (nf * nf + nf + 1.0) * l_n
}

/// K_n(s) = -(1+s) L_n'(s) + (n^2+n+1) L_n(s).
pub fn koornwinder_eval(n: usize, s: f64) -> f64 {
    let (l_n, dl_n) = legendre_with_derivative(n, s);
    koornwinder_from(n, s, l_n, dl_n)
}

/// K_0(s), ..., K_{count-1}(s) in a single recurrence sweep.
///
/// Each entry is bit-identical to `koornwinder_eval(n, s)`.
pub fn koornwinder_all(count: usize, s: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut prev = 0.0;
    let mut curr = 1.0;
    for n in 0..count {
        let dl = legendre_derivative_from(n, s, prev, curr);
        out.push(koornwinder_from(n, s, curr, dl));
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * s * curr - nf * prev) / (nf + 1.0);
        prev = curr;
        curr = next;
    }
    out
}

/// Maps theta in [-tau, 0] onto s in [-1, 1].
#[inline]
pub fn theta_to_s(theta: f64, tau: f64) -> f64 {
    1.0 + 2.0 * theta / tau
}

/// K_n^tau(theta) = K_n(1 + 2 theta / tau).
pub fn koornwinder_eval_rescaled(n: usize, theta: f64, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    Ok(koornwinder_eval(n, theta_to_s(theta, tau)))
}

/// Squared E-norm (n^2+1)((n+1)^2+1)/(2n+1). Also the squared H-norm of K_n^tau.
pub fn koornwinder_norm_sq(n: usize) -> f64 {
    let nf = n as f64;
    (nf * nf + 1.0) * ((nf + 1.0) * (nf + 1.0) + 1.0) / (2.0 * nf + 1.0)
}

/// Closed form K_n(-1) = (-1)^n (n^2 + n + 1).
pub fn koornwinder_at_minus_one(n: usize) -> f64 {
    let nf = n as f64;
    let magnitude = nf * nf + nf + 1.0;
    if n.is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    }
}

/// Koornwinder family of degrees `0..=max_degree`, rescaled to [-tau, 0].
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialBasis {
    max_degree: usize,
    tau: f64,
}

impl PolynomialBasis {
    pub fn new(max_degree: usize, tau: f64) -> Result<Self> {
        Self::with_cap(max_degree, tau, DEFAULT_MAX_DEGREE)
    }

    pub fn with_cap(max_degree: usize, tau: f64, cap: usize) -> Result<Self> {
        check_tau(tau)?;
        if max_degree > cap {
            return Err(GkError::InvalidDegree {
                degree: max_degree,
                max: cap,
            });
        }
        Ok(Self { max_degree, tau })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Number of basis elements, `max_degree + 1`.
    pub fn len(&self) -> usize {
        self.max_degree + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn eval(&self, n: usize, s: f64) -> f64 {
        koornwinder_eval(n, s)
    }

    pub fn eval_rescaled(&self, n: usize, theta: f64) -> f64 {
        koornwinder_eval(n, theta_to_s(theta, self.tau))
    }

    /// All rescaled basis values at `theta`.
    pub fn eval_all_rescaled(&self, theta: f64) -> Vec<f64> {
        koornwinder_all(self.len(), theta_to_s(theta, self.tau))
    }

    pub fn norms_sq(&self) -> Vec<f64> {
        (0..self.len()).map(koornwinder_norm_sq).collect()
    }

    pub fn values_at_minus_one(&self) -> Vec<f64> {
        (0..self.len()).map(koornwinder_at_minus_one).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_eval(0, 0.3), 1.0);
        assert_eq!(legendre_eval(1, -1.0), -1.0);
        assert_eq!(legendre_eval(4, 1.0), 1.0);
        // L_2 = (3s^2 - 1)/2
        assert!(close(
            legendre_eval(2, 0.4),
            (3.0 * 0.16 - 1.0) / 2.0,
            1e-15
        ));
    }

    #[test]
    fn legendre_derivative_endpoints() {
        for n in 0..30usize {
            let expect = 0.5 * (n * (n + 1)) as f64;
            assert_eq!(legendre_derivative(n, 1.0), expect);
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            assert_eq!(legendre_derivative(n, -1.0), sign * expect);
        }
        // L_3' = (15 s^2 - 3)/2
        assert!(close(
            legendre_derivative(3, 0.2),
            (15.0 * 0.04 - 3.0) / 2.0,
            1e-14
        ));
    }

    #[test]
    fn koornwinder_examples() {
        // K_1(s) = 2s - 1
        assert!(koornwinder_eval(1, 0.5).abs() < 1e-15);
        assert_eq!(koornwinder_eval(2, 1.0), 1.0);
        assert_eq!(koornwinder_eval(3, -1.0), -13.0);
        // K_2(s) = (15/2) s^2 - 3 s - 7/2
        let s = 0.3;
        assert!(close(
            koornwinder_eval(2, s),
            7.5 * s * s - 3.0 * s - 3.5,
            1e-14
        ));
    }

    #[test]
    fn rescaled_examples() {
        assert_eq!(koornwinder_eval_rescaled(5, 0.0, 2.0).unwrap(), 1.0);
        assert_eq!(koornwinder_eval_rescaled(1, -1.7, 1.7).unwrap(), -3.0);
        assert_eq!(koornwinder_eval_rescaled(0, -0.4, 1.0).unwrap(), 1.0);
        assert!(matches!(
            koornwinder_eval_rescaled(1, 0.0, 0.0),
            Err(GkError::InvalidDelay(_))
        ));
        assert!(koornwinder_eval_rescaled(1, 0.0, -1.0).is_err());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(koornwinder_norm_sq(0), 2.0);
        assert!(close(koornwinder_norm_sq(1), 10.0 / 3.0, 1e-15));
        assert_eq!(koornwinder_norm_sq(2), 10.0);
    }

    #[test]
    fn all_matches_single() {
        for &s in &[-1.0, -0.73, 0.0, 0.41, 1.0] {
            let all = koornwinder_all(25, s);
            for (n, v) in all.iter().enumerate() {
                assert_eq!(v.to_bits(), koornwinder_eval(n, s).to_bits());
            }
        }
    }

    #[test]
    fn basis_degree_cap() {
        assert!(PolynomialBasis::new(200, 1.0).is_ok());
        assert!(matches!(
            PolynomialBasis::new(201, 1.0),
            Err(GkError::InvalidDegree {
                degree: 201,
                max: 200
            })
        ));
        assert!(PolynomialBasis::with_cap(300, 1.0, 400).is_ok());
        assert!(PolynomialBasis::new(3, -2.0).is_err());
    }

    #[test]
    fn endpoint_closed_form_matches_evaluation() {
        for n in 0..=50 {
            assert_eq!(koornwinder_eval(n, -1.0), koornwinder_at_minus_one(n));
            assert_eq!(koornwinder_eval(n, 1.0), 1.0);
        }
    }
}
