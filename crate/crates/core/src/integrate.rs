//! Fixed-step RK4 integration of the reduced system, and a method-of-steps
//! RK4 solver for the original DDE used as the reference.

use serde::Serialize;

use crate::error::{check_tau, GkError, Result};
use crate::reduction::{reconstruct_state, DDESpec, HistorySegment, ReducedSystem};

/// States with a component beyond this magnitude count as a blow-up.
pub const BLOW_UP_THRESHOLD: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrajectoryKind {
    /// Coefficient vectors y(t) of the reduced system.
    Reduced,
    /// Scalar x(t) of the original DDE.
    Reference,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    kind: TrajectoryKind,
    step: f64,
    times: Vec<f64>,
    states: Vec<Vec<f64>>,
    /// x'(t_k) at every grid point (reference runs only), for Hermite dense output.
    slopes: Vec<f64>,
}

impl Trajectory {
    pub fn kind(&self) -> TrajectoryKind {
        self.kind
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[Vec<f64>] {
        &self.states
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// x_N(t_k) for reduced runs, x(t_k) for reference runs.
    pub fn scalar_at(&self, k: usize) -> f64 {
        match self.kind {
            TrajectoryKind::Reduced => reconstruct_state(&self.states[k]),
            TrajectoryKind::Reference => self.states[k][0],
        }
    }

    pub fn scalar_series(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.scalar_at(k)).collect()
    }

    pub fn last_time(&self) -> f64 {
        self.times.last().copied().unwrap_or(0.0)
    }

    /// Cubic Hermite interpolant of a reference run at `t` in [0, last_time].
    pub fn dense_value(&self, t: f64) -> Option<f64> {
        if self.kind != TrajectoryKind::Reference || self.is_empty() {
            return None;
        }
        if t < 0.0 || t > self.last_time() {
            return None;
        }
        let h = self.step;
        let k = ((t / h).floor() as usize).min(self.len().saturating_sub(2));
        if self.len() == 1 {
            return Some(self.states[0][0]);
        }
        let u = (t - self.times[k]) / h;
        Some(hermite(
            self.states[k][0],
            self.states[k + 1][0],
            self.slopes[k],
            self.slopes[k + 1],
            h,
            u,
        ))
    }
}

/// Cubic Hermite interpolant at fraction u in [0, 1] of a step of length h.
fn hermite(x0: f64, x1: f64, f0: f64, f1: f64, h: f64, u: f64) -> f64 {
    let u2 = u * u;
    let u3 = u2 * u;
    let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    let h10 = u3 - 2.0 * u2 + u;
    let h01 = -2.0 * u3 + 3.0 * u2;
    let h11 = u3 - u2;
    h00 * x0 + h10 * h * f0 + h01 * x1 + h11 * h * f1
}

/// Exact integral of the Hermite cubic over one step (Simpson with the
/// Hermite midpoint value).
fn hermite_step_integral(x0: f64, x1: f64, f0: f64, f1: f64, h: f64) -> f64 {
    0.5 * h * (x0 + x1) + h * h / 12.0 * (f0 - f1)
}

fn step_count(t_end: f64, h: f64) -> Result<usize> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(GkError::InvalidParameter(format!(
            "step h = {h} must be positive"
        )));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(GkError::InvalidParameter(format!(
            "t_end = {t_end} must be positive"
        )));
    }
    let ratio = t_end / h;
    let rounded = ratio.round();
    let steps = if (rounded - ratio).abs() <= 1e-9 * ratio.max(1.0) {
        rounded
    } else {
        ratio.ceil()
    };
    Ok(steps as usize)
}

fn blown_up(values: &[f64]) -> bool {
    values
        .iter()
        .any(|v| !v.is_finite() || v.abs() > BLOW_UP_THRESHOLD)
}

/// Classical RK4 on y' = A y + F_N(y, tau), recording y at every step.
pub fn integrate_reduced(
    system: &ReducedSystem,
    y0: &[f64],
    t_end: f64,
    h: f64,
) -> Result<Trajectory> {
    let dim = system.dim();
    if y0.len() != dim {
        return Err(GkError::InvalidParameter(format!(
            "initial vector has length {} but the system has dimension {dim}",
            y0.len()
        )));
    }
    let steps = step_count(t_end, h)?;
    let mut traj = Trajectory {
        kind: TrajectoryKind::Reduced,
        step: h,
        times: Vec::with_capacity(steps + 1),
        states: Vec::with_capacity(steps + 1),
        slopes: Vec::new(),
    };
    if blown_up(y0) {
        return Err(GkError::BlowUp {
            time: 0.0,
            partial: Box::new(traj),
        });
    }
    traj.times.push(0.0);
    traj.states.push(y0.to_vec());

    let mut y = y0.to_vec();
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];
    for n in 0..steps {
        system.vector_field(&y, &mut k1);
        axpy_into(&mut tmp, &y, 0.5 * h, &k1);
        system.vector_field(&tmp, &mut k2);
        axpy_into(&mut tmp, &y, 0.5 * h, &k2);
        system.vector_field(&tmp, &mut k3);
        axpy_into(&mut tmp, &y, h, &k3);
        system.vector_field(&tmp, &mut k4);
        for i in 0..dim {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t = (n + 1) as f64 * h;
        if blown_up(&y) {
            return Err(GkError::BlowUp {
                time: t,
                partial: Box::new(traj),
            });
        }
        traj.times.push(t);
        traj.states.push(y.clone());
    }
    Ok(traj)
}

#[inline]
fn axpy_into(out: &mut [f64], y: &[f64], alpha: f64, k: &[f64]) {
    for ((o, yi), ki) in out.iter_mut().zip(y).zip(k) {
        *o = yi + alpha * ki;
    }
}

/// Number of steps per delay, m = tau / h, when h divides tau.
pub fn steps_per_delay(tau: f64, h: f64) -> Result<usize> {
    check_tau(tau)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(GkError::InvalidParameter(format!(
            "step h = {h} must be positive"
        )));
    }
    let m = (tau / h).round();
    if m < 1.0 || (m * h - tau).abs() > 1e-12 * tau.max(1.0) {
        return Err(GkError::IncommensurateStep { h, tau });
    }
    Ok(m as usize)
}

/// Method-of-steps solver for the original DDE.
///
/// Each RK4 step advances the pair (x, z) with z(t) = int_{t-tau}^t x, using
/// z' = x(t) - x(t - tau). Delayed values come from the history segment for
/// t - tau <= 0 and from cubic Hermite dense output afterwards (slopes are the
/// DDE right-hand side at each grid point). At the start of every step z is
/// reset to the composite Simpson sum over the stored window, so the
/// distributed term never accumulates drift from the auxiliary equation.
pub fn integrate_dde_reference(
    spec: &DDESpec,
    history: &HistorySegment,
    t_end: f64,
    h: f64,
) -> Result<Trajectory> {
    spec.validate()?;
    let tau = spec.tau;
    let m = steps_per_delay(tau, h)?;
    let steps = step_count(t_end, h)?;

    // Simpson integrals of each history step [jh, (j+1)h], j = -m..-1.
    let phi = |theta: f64| history.eval(theta.clamp(-tau, 0.0));
    let history_integrals: Vec<f64> = (0..m)
        .map(|i| {
            let j = i as f64 - m as f64;
            let (lo, mid, hi) = (j * h, (j + 0.5) * h, (j + 1.0) * h);
            h / 6.0 * (phi(lo) + 4.0 * phi(mid) + phi(hi))
        })
        .collect();

    let mut traj = Trajectory {
        kind: TrajectoryKind::Reference,
        step: h,
        times: Vec::with_capacity(steps + 1),
        states: Vec::with_capacity(steps + 1),
        slopes: Vec::with_capacity(steps + 1),
    };
    let mut xs: Vec<f64> = Vec::with_capacity(steps + 1);
    let mut fs: Vec<f64> = Vec::with_capacity(steps + 1);
    let mut step_integrals: Vec<f64> = Vec::with_capacity(steps);

    // Delayed value at t = (j + frac) h, frac in {0, 1/2, 1}.
    let delayed = |j: isize, frac: f64, xs: &[f64], fs: &[f64]| -> f64 {
        if j < 0 {
            phi((j as f64 + frac) * h)
        } else {
            let j = j as usize;
            if frac == 0.0 {
                xs[j]
            } else if frac == 1.0 {
                xs[j + 1]
            } else {
                hermite(xs[j], xs[j + 1], fs[j], fs[j + 1], h, frac)
            }
        }
    };
    // z at t_n = sum of the m step integrals covering [t_n - tau, t_n].
    let window = |n: usize, step_integrals: &[f64]| -> f64 {
        let mut sum = 0.0;
        for j in (n as isize - m as isize)..(n as isize) {
            sum += if j < 0 {
                history_integrals[(j + m as isize) as usize]
            } else {
                step_integrals[j as usize]
            };
        }
        sum
    };

    let x0 = history.endpoint();
    let z0 = window(0, &step_integrals);
    let f0 = spec.rhs(x0, phi(-tau), z0);
    if blown_up(&[x0, f0]) {
        return Err(GkError::BlowUp {
            time: 0.0,
            partial: Box::new(traj),
        });
    }
    xs.push(x0);
    fs.push(f0);
    traj.times.push(0.0);
    traj.states.push(vec![x0]);
    traj.slopes.push(f0);

    let rhs = |x: f64, z: f64, xd: f64| -> (f64, f64) { (spec.rhs(x, xd, z), x - xd) };

    for n in 0..steps {
        let x = xs[n];
        let z = window(n, &step_integrals);
        let j = n as isize - m as isize;
        let xd0 = delayed(j, 0.0, &xs, &fs);
        let xdh = delayed(j, 0.5, &xs, &fs);
        let xd1 = delayed(j, 1.0, &xs, &fs);

        let k1 = rhs(x, z, xd0);
        let k2 = rhs(x + 0.5 * h * k1.0, z + 0.5 * h * k1.1, xdh);
        let k3 = rhs(x + 0.5 * h * k2.0, z + 0.5 * h * k2.1, xdh);
        let k4 = rhs(x + h * k3.0, z + h * k3.1, xd1);
        let x_next = x + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        let z_next = z + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        let f_next = spec.rhs(x_next, xd1, z_next);

        let t = (n + 1) as f64 * h;
        if blown_up(&[x_next, f_next]) {
            return Err(GkError::BlowUp {
                time: t,
                partial: Box::new(traj),
            });
        }
        step_integrals.push(hermite_step_integral(x, x_next, fs[n], f_next, h));
        xs.push(x_next);
        fs.push(f_next);
        traj.times.push(t);
        traj.states.push(vec![x_next]);
        traj.slopes.push(f_next);
    }
    Ok(traj)
}

/// Pointwise deviation between a reduced run and a reference run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorReport {
    pub sup: f64,
    pub rms: f64,
    /// Time at which the sup error is attained.
    pub sup_time: f64,
    pub samples: usize,
}

/// sup and RMS of |x_N(t) - x(t)| over a shared time grid.
pub fn compare(reduced: &Trajectory, reference: &Trajectory) -> Result<ErrorReport> {
    if reduced.len() != reference.len() {
        return Err(GkError::GridMismatch(format!(
            "{} vs {} samples",
            reduced.len(),
            reference.len()
        )));
    }
    if reduced.is_empty() {
        return Err(GkError::GridMismatch("empty trajectories".into()));
    }
    let mut sup = 0.0f64;
    let mut sup_time = reduced.times[0];
    let mut sum_sq = 0.0;
    for k in 0..reduced.len() {
        let (ta, tb) = (reduced.times[k], reference.times[k]);
        if (ta - tb).abs() > 1e-9 * ta.abs().max(1.0) {
            return Err(GkError::GridMismatch(format!(
                "sample {k}: t = {ta} vs t = {tb}"
            )));
        }
        let err = (reduced.scalar_at(k) - reference.scalar_at(k)).abs();
        if err > sup {
            sup = err;
            sup_time = ta;
        }
        sum_sq += err * err;
    }
    Ok(ErrorReport {
        sup,
        rms: (sum_sq / reduced.len() as f64).sqrt(),
        sup_time,
        samples: reduced.len(),
    })
}
