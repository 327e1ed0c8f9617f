//! Galerkin-Koornwinder reduction of
//!
//! x'(t) = a x(t) + b x(t - tau) + c int_{t-tau}^t x(s) ds + F(x(t), x(t - tau), int ...)
//!
//! to the N-dimensional ODE system y' = A_N(tau) y + F_N(y, tau), where the
//! history segment is expanded as u_N(t, theta) = sum_j y_j(t) K_j^tau(theta).

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::basis::{koornwinder_all, koornwinder_at_minus_one, koornwinder_norm_sq, theta_to_s};
use crate::derivative::DerivativeTable;
use crate::error::{check_tau, GkError, Result};
use crate::nonlinearity::Nonlinearity;
use crate::quadrature::QuadratureRule;

/// Scalar DDE with one discrete delay and one distributed delay over [t - tau, t].
#[derive(Debug, Clone)]
pub struct DDESpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub tau: f64,
    pub nonlinearity: Nonlinearity,
}

impl DDESpec {
    pub fn new(a: f64, b: f64, c: f64, tau: f64, nonlinearity: Nonlinearity) -> Result<Self> {
        let spec = Self {
            a,
            b,
            c,
            tau,
            nonlinearity,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn linear(a: f64, b: f64, c: f64, tau: f64) -> Result<Self> {
        Self::new(a, b, c, tau, Nonlinearity::Zero)
    }

    pub fn validate(&self) -> Result<()> {
        check_tau(self.tau)?;
        for (name, v) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            if !v.is_finite() {
                return Err(GkError::InvalidParameter(format!(
                    "{name} = {v} is not finite"
                )));
            }
        }
        Ok(())
    }

    pub fn with_tau(&self, tau: f64) -> Result<Self> {
        let mut spec = self.clone();
        spec.tau = tau;
        spec.validate()?;
        Ok(spec)
    }

    /// Linear part plus F evaluated at (current, delayed, integral).
    pub fn rhs(&self, current: f64, delayed: f64, integral: f64) -> f64 {
        self.a * current
            + self.b * delayed
            + self.c * integral
            + self.nonlinearity.eval(current, delayed, integral)
    }
}

/// Model-independent part of the reduced matrix: P_N, the squared norms and
/// the endpoint values K_n(-1). Depends on N only, so it can be reused across
/// delays and model parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPart {
    p: DMatrix<f64>,
    norms_sq: Vec<f64>,
    at_minus_one: Vec<f64>,
}

impl TransportPart {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(GkError::InvalidDimension(0));
        }
        let table = DerivativeTable::new(dim - 1)?;
        let norms_sq: Vec<f64> = (0..dim).map(koornwinder_norm_sq).collect();
        let at_minus_one = (0..dim).map(koornwinder_at_minus_one).collect();
        // P[i][j] = (1/|K_i|^2) sum_{k<j} a_{j,k} (delta_{ik} |K_i|^2 - 1)
        let p = DMatrix::from_fn(dim, dim, |i, j| {
            let row = table.row(j);
            let total: f64 = row
                .iter()
                .enumerate()
                .map(|(k, &a)| {
                    let delta = if i == k { norms_sq[i] } else { 0.0 };
                    a * (delta - 1.0)
                })
                .sum();
            total / norms_sq[i]
        });
        Ok(Self {
            p,
            norms_sq,
            at_minus_one,
        })
    }

    pub fn dim(&self) -> usize {
        self.norms_sq.len()
    }

    pub fn p(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn norms_sq(&self) -> &[f64] {
        &self.norms_sq
    }

    pub fn at_minus_one(&self) -> &[f64] {
        &self.at_minus_one
    }
}

/// Galerkin reconstructions fed to F: current state, delayed state and
/// distributed integral.
pub fn galerkin_arguments(y: &[f64], at_minus_one: &[f64], tau: f64) -> [f64; 3] {
    let current = reconstruct_state(y);
    let delayed: f64 = y.iter().zip(at_minus_one).map(|(v, k)| v * k).sum();
    let integral = match y.split_first() {
        Some((y0, rest)) => tau * y0 - tau * rest.iter().sum::<f64>(),
        None => 0.0,
    };
    [current, delayed, integral]
}

/// F_N: component j is nu_j F(sum y, sum y K(-1), tau y_0 - tau sum_{n>=1} y_n).
#[derive(Debug, Clone)]
pub struct NonlinearTerm {
    nu: Vec<f64>,
    at_minus_one: Vec<f64>,
    f: Nonlinearity,
}

impl NonlinearTerm {
    pub fn dim(&self) -> usize {
        self.nu.len()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    /// Writes F_N(y, tau) into `out`.
    pub fn eval_into(&self, y: &[f64], tau: f64, out: &mut [f64]) {
        if self.f.is_zero() {
            out.iter_mut().for_each(|v| *v = 0.0);
            return;
        }
        let [x, xd, z] = galerkin_arguments(y, &self.at_minus_one, tau);
        let fx = self.f.eval(x, xd, z);
        for (o, nu) in out.iter_mut().zip(&self.nu) {
            *o = nu * fx;
        }
    }

    pub fn eval(&self, y: &[f64], tau: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.nu.len()];
        self.eval_into(y, tau, &mut out);
        out
    }
}

pub fn assemble_nonlinearity(spec: &DDESpec, dim: usize) -> Result<NonlinearTerm> {
    spec.validate()?;
    if dim == 0 {
        return Err(GkError::InvalidDimension(0));
    }
    Ok(NonlinearTerm {
        nu: (0..dim).map(|n| 1.0 / koornwinder_norm_sq(n)).collect(),
        at_minus_one: (0..dim).map(koornwinder_at_minus_one).collect(),
        f: spec.nonlinearity.clone(),
    })
}

/// y' = A y + F_N(y, tau) with A = (2/tau) P + Q.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    spec: DDESpec,
    transport: Arc<TransportPart>,
    q: DMatrix<f64>,
    a: DMatrix<f64>,
    nu: Vec<f64>,
    nonlinear: NonlinearTerm,
}

/// Builds A_N(tau) for `spec`:
///
/// A[i][j] = (1/|K_i|^2) [a + b K_j(-1) + c tau (2 delta_{j0} - 1)
///           + (2/tau) sum_{k<j} a_{j,k} (delta_{ik} |K_i|^2 - 1)]
pub fn assemble_matrix(spec: &DDESpec, dim: usize) -> Result<ReducedSystem> {
    spec.validate()?;
    let transport = Arc::new(TransportPart::new(dim)?);
    ReducedSystem::with_transport(spec, transport)
}

impl ReducedSystem {
    /// Assembles against a precomputed P, e.g. when sweeping tau.
    pub fn with_transport(spec: &DDESpec, transport: Arc<TransportPart>) -> Result<Self> {
        spec.validate()?;
        let dim = transport.dim();
        let tau = spec.tau;
        let norms = transport.norms_sq();
        let ends = transport.at_minus_one();
        let q = DMatrix::from_fn(dim, dim, |i, j| {
            let distributed = if j == 0 { spec.c * tau } else { -spec.c * tau };
            (spec.a + spec.b * ends[j] + distributed) / norms[i]
        });
        let a = transport.p() * (2.0 / tau) + &q;
        let nu = norms.iter().map(|n| 1.0 / n).collect();
        let nonlinear = assemble_nonlinearity(spec, dim)?;
        Ok(Self {
            spec: spec.clone(),
            transport,
            q,
            a,
            nu,
            nonlinear,
        })
    }

    pub fn dim(&self) -> usize {
        self.transport.dim()
    }

    pub fn tau(&self) -> f64 {
        self.spec.tau
    }

    pub fn spec(&self) -> &DDESpec {
        &self.spec
    }

    pub fn transport(&self) -> &Arc<TransportPart> {
        &self.transport
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn p(&self) -> &DMatrix<f64> {
        self.transport.p()
    }

    pub fn q(&self) -> &DMatrix<f64> {
        &self.q
    }

    /// nu_j = 1 / |K_j|^2.
    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    pub fn endpoint_values(&self) -> &[f64] {
        self.transport.at_minus_one()
    }

    pub fn nonlinear(&self) -> &NonlinearTerm {
        &self.nonlinear
    }

    /// Writes A y + F_N(y, tau) into `out`.
    pub fn vector_field(&self, y: &[f64], out: &mut [f64]) {
        self.nonlinear.eval_into(y, self.spec.tau, out);
        let dim = self.dim();
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (j, yj) in y.iter().enumerate().take(dim) {
                acc += self.a[(i, j)] * yj;
            }
            *o += acc;
        }
    }
}

/// Initial history segment phi on [-tau, 0].
#[derive(Clone)]
pub enum HistorySegment {
    Constant(f64),
    /// Coefficients c_0, c_1, ... of sum_k c_k theta^k.
    Polynomial(Vec<f64>),
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl HistorySegment {
    pub fn function<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::Function(Arc::new(f))
    }

    pub fn eval(&self, theta: f64) -> f64 {
        match self {
            Self::Constant(v) => *v,
            Self::Polynomial(coeffs) => coeffs.iter().rev().fold(0.0, |acc, c| acc * theta + c),
            Self::Function(f) => f(theta),
        }
    }

    /// phi(0).
    pub fn endpoint(&self) -> f64 {
        self.eval(0.0)
    }

    /// Shifts the whole segment by `offset`.
    pub fn shifted(&self, offset: f64) -> Self {
        match self {
            Self::Constant(v) => Self::Constant(v + offset),
            Self::Polynomial(coeffs) => {
                let mut c = if coeffs.is_empty() {
                    vec![0.0]
                } else {
                    coeffs.clone()
                };
                c[0] += offset;
                Self::Polynomial(c)
            }
            Self::Function(f) => {
                let f = Arc::clone(f);
                Self::function(move |t| f(t) + offset)
            }
        }
    }
}

impl std::fmt::Debug for HistorySegment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Constant(v) => f.debug_tuple("Constant").field(v).finish(),
            Self::Polynomial(c) => f.debug_tuple("Polynomial").field(c).finish(),
            Self::Function(_) => write!(f, "Function(..)"),
        }
    }
}

/// H-orthogonal projection of phi onto K_0^tau, ..., K_{N-1}^tau:
///
/// y_j = [(1/tau) int_{-tau}^0 phi K_j^tau dtheta + phi(0)] / |K_j|^2
pub fn project_history(
    history: &HistorySegment,
    dim: usize,
    tau: f64,
    rule: &QuadratureRule,
) -> Result<Vec<f64>> {
    check_tau(tau)?;
    if dim == 0 {
        return Err(GkError::InvalidDimension(0));
    }
    let mut acc = vec![0.0; dim];
    for (&s, &w) in rule.nodes().iter().zip(rule.weights()) {
        let phi = history.eval(0.5 * tau * (s - 1.0));
        let ks = koornwinder_all(dim, s);
        for (a, k) in acc.iter_mut().zip(&ks) {
            *a += w * phi * k;
        }
    }
    let endpoint = history.endpoint();
    Ok(acc
        .into_iter()
        .enumerate()
        .map(|(j, integral)| (0.5 * integral + endpoint) / koornwinder_norm_sq(j))
        .collect())
}

/// x_N = sum_j y_j, since every K_j^tau(0) = 1.
pub fn reconstruct_state(y: &[f64]) -> f64 {
    y.iter().sum()
}

/// u_N(theta) = sum_j y_j K_j^tau(theta) at each grid point.
pub fn reconstruct_field(y: &[f64], grid: &[f64], tau: f64) -> Result<Vec<f64>> {
    check_tau(tau)?;
    grid.iter()
        .map(|&theta| {
            if !(theta <= 0.0 && theta >= -tau) {
                return Err(GkError::OutOfDomain { theta, tau });
            }
            let ks = koornwinder_all(y.len(), theta_to_s(theta, tau));
            Ok(y.iter().zip(&ks).map(|(v, k)| v * k).sum())
        })
        .collect()
}

/// `count` equally spaced points from -tau to 0 inclusive, hitting both ends exactly.
pub fn uniform_theta_grid(count: usize, tau: f64) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => {
            let last = (count - 1) as f64;
            (0..count)
                .map(|k| {
                    if k == count - 1 {
                        0.0
                    } else {
                        -tau + tau * (k as f64) / last
                    }
                })
                .collect()
        }
    }
}
