//! Coefficients a_{n,k} of the expansion dK_n/ds = sum_{k<n} a_{n,k} K_k.
//!
//! For each degree n the vector a_n solves the upper-triangular system
//! T a_n = b_n with
//!
//! ```text
//! T[i][j] = 0            j < i
//!           i^2 + 1      j = i
//!           -(2i + 1)    j > i
//!
//! b[i] = -(1/2)(2i+1)(n+i+1)(n-i)                                n+i even
//!        (n^2+n)(2i+1) - (i/2)(n+i)(n-i+1) - (1/2)(i+1)(n-i-1)(n+i+2)
//!                                                                n+i odd
//! ```
//!
//! The odd branch above is the corrected form; older write-ups of this
//! system carried a sign error and a stray factor of i in it.

use crate::basis::DEFAULT_MAX_DEGREE;
use crate::error::{check_tau, GkError, Result};

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        Err(GkError::InvalidDegree {
            degree: 0,
            max: DEFAULT_MAX_DEGREE,
        })
    } else {
        Ok(())
    }
}

/// Right-hand side b_n (length n).
pub fn build_rhs(n: usize) -> Result<Vec<f64>> {
    check_degree(n)?;
    let nf = n as f64;
    let rhs = (0..n)
        .map(|i| {
            let fi = i as f64;
            if (n + i).is_multiple_of(2) {
                -0.5 * (2.0 * fi + 1.0) * (nf + fi + 1.0) * (nf - fi)
            } else {
                (nf * nf + nf) * (2.0 * fi + 1.0)
                    - 0.5 * fi * (nf + fi) * (nf - fi + 1.0)
                    - 0.5 * (fi + 1.0) * (nf - fi - 1.0) * (nf + fi + 2.0)
            }
        })
        .collect();
    Ok(rhs)
}

/// Dense n x n upper-triangular matrix T, row-major as `rows[i][j]`.
pub fn build_matrix(n: usize) -> Result<Vec<Vec<f64>>> {
    check_degree(n)?;
    let rows = (0..n)
        .map(|i| (0..n).map(|j| matrix_entry(i, j)).collect::<Vec<_>>())
        .collect();
    Ok(rows)
}

#[inline]
fn matrix_entry(i: usize, j: usize) -> f64 {
    use std::cmp::Ordering::*;
    match j.cmp(&i) {
        Less => 0.0,
        Equal => (i * i + 1) as f64,
        Greater => -((2 * i + 1) as f64),
    }
}

/// Solves T a_n = b_n by back substitution. The diagonal i^2 + 1 never vanishes.
pub fn solve_coeffs(n: usize) -> Result<Vec<f64>> {
    let b = build_rhs(n)?;
    let mut a = vec![0.0; n];
    // Row i: (i^2+1) a_i - (2i+1) sum_{j>i} a_j = b_i
    let mut tail = 0.0;
    for i in (0..n).rev() {
        let fi = i as f64;
        a[i] = (b[i] + (2.0 * fi + 1.0) * tail) / (fi * fi + 1.0);
        tail += a[i];
    }
    Ok(a)
}

/// Coefficients of dK_n^tau/dtheta in the rescaled basis: (2/tau) a_n.
pub fn rescaled_derivative_coeffs(n: usize, tau: f64) -> Result<Vec<f64>> {
    check_tau(tau)?;
    let scale = 2.0 / tau;
    Ok(solve_coeffs(n)?.into_iter().map(|a| scale * a).collect())
}

/// Strict lower-triangular table of a_{n,k} for n = 1..=max_degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeTable {
    rows: Vec<Vec<f64>>,
}

impl DerivativeTable {
    pub fn new(max_degree: usize) -> Result<Self> {
        if max_degree > DEFAULT_MAX_DEGREE {
            return Err(GkError::InvalidDegree {
                degree: max_degree,
                max: DEFAULT_MAX_DEGREE,
            });
        }
        let rows = (1..=max_degree)
            .map(solve_coeffs)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    pub fn max_degree(&self) -> usize {
        self.rows.len()
    }

    /// a_n; empty for n = 0 since K_0 is constant.
    pub fn row(&self, n: usize) -> &[f64] {
        if n == 0 {
            &[]
        } else {
            &self.rows[n - 1]
        }
    }

    /// a_{n,k}, zero for k >= n.
    pub fn get(&self, n: usize, k: usize) -> f64 {
        self.row(n).get(k).copied().unwrap_or(0.0)
    }

    /// Rows a_1, ..., a_max.
    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.rows.iter().map(Vec::as_slice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhs_examples() {
        assert_eq!(build_rhs(1).unwrap(), vec![2.0]);
        assert_eq!(build_rhs(2).unwrap(), vec![-3.0, 15.0]);
        assert_eq!(build_rhs(3).unwrap()[0], 7.0);
        assert!(build_rhs(0).is_err());
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(build_matrix(1).unwrap(), vec![vec![1.0]]);
        assert_eq!(
            build_matrix(2).unwrap(),
            vec![vec![1.0, -1.0], vec![0.0, 2.0]]
        );
        assert_eq!(
            build_matrix(3).unwrap(),
            vec![
                vec![1.0, -1.0, -1.0],
                vec![0.0, 2.0, -3.0],
                vec![0.0, 0.0, 5.0]
            ]
        );
        assert!(build_matrix(0).is_err());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_coeffs(1).unwrap(), vec![2.0]);
        assert_eq!(solve_coeffs(2).unwrap(), vec![4.5, 7.5]);
        assert!(solve_coeffs(0).is_err());
    }

    #[test]
    fn residual_is_small() {
        for n in 1..=50 {
            let t = build_matrix(n).unwrap();
            let b = build_rhs(n).unwrap();
            let a = solve_coeffs(n).unwrap();
            let bmax = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for i in 0..n {
                let r: f64 = (0..n).map(|j| t[i][j] * a[j]).sum::<f64>() - b[i];
                assert!(r.abs() < 1e-10 * bmax, "n={n} i={i} r={r}");
            }
        }
    }

    #[test]
    fn rescaled_examples() {
        assert_eq!(rescaled_derivative_coeffs(1, 2.0).unwrap(), vec![2.0]);
        assert_eq!(rescaled_derivative_coeffs(1, 0.5).unwrap(), vec![8.0]);
        assert_eq!(rescaled_derivative_coeffs(2, 1.0).unwrap(), vec![9.0, 15.0]);
        assert!(matches!(
            rescaled_derivative_coeffs(2, 0.0),
            Err(GkError::InvalidDelay(_))
        ));
    }

    #[test]
    fn table_layout() {
        let table = DerivativeTable::new(6).unwrap();
        assert_eq!(table.max_degree(), 6);
        assert!(table.row(0).is_empty());
        for n in 1..=6 {
            assert_eq!(table.row(n).len(), n);
        }
        assert_eq!(table.get(2, 1), 7.5);
        assert_eq!(table.get(2, 2), 0.0);
        assert!(DerivativeTable::new(201).is_err());
    }
}
