//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's polynomial or solver code.

#![allow(dead_code)]

use num_complex::Complex64;

/// (L_n, L_n', L_n'') at an interior point s, with L_n' from the recurrence
/// L'_{k+1} = L'_{k-1} + (2k+1) L_k and L_n'' from the Legendre ODE
/// (1 - s^2) L'' = 2 s L' - n(n+1) L.
pub fn legendre_oracle(n: usize, s: f64) -> (f64, f64, f64) {
    let mut l = vec![0.0; n + 2];
    let mut dl = vec![0.0; n + 2];
    l[0] = 1.0;
    if n >= 1 {
        l[1] = s;
        dl[1] = 1.0;
    }
    for k in 1..n {
        let kf = k as f64;
        l[k + 1] = ((2.0 * kf + 1.0) * s * l[k] - kf * l[k - 1]) / (kf + 1.0);
        dl[k + 1] = dl[k - 1] + (2.0 * kf + 1.0) * l[k];
    }
    let nf = n as f64;
    let d2 = (2.0 * s * dl[n] - nf * (nf + 1.0) * l[n]) / (1.0 - s * s);
    (l[n], dl[n], d2)
}

/// dK_n/ds by the product rule applied to K_n = -(1+s) L_n' + (n^2+n+1) L_n.
pub fn koornwinder_derivative_oracle(n: usize, s: f64) -> f64 {
    let (_, dl, d2l) = legendre_oracle(n, s);
    let nf = n as f64;
    -dl - (1.0 + s) * d2l + (nf * nf + nf + 1.0) * dl
}

/// K_n(s) from the oracle Legendre values.
pub fn koornwinder_oracle(n: usize, s: f64) -> f64 {
    let (l, dl, _) = legendre_oracle(n, s);
    let nf = n as f64;
    -(1.0 + s) * dl + (nf * nf + nf + 1.0) * l
}

/// Newton iteration on g(lambda) = lambda - a - b exp(-lambda tau).
pub fn characteristic_root(a: f64, b: f64, tau: f64, seed: Complex64) -> Option<Complex64> {
    let mut z = seed;
    for _ in 0..100 {
        let e = (-z * tau).exp();
        let g = z - a - b * e;
        let dg = 1.0 + b * tau * e;
        let dz = g / dg;
        z -= dz;
        if dz.norm() < 1e-15 * z.norm().max(1.0) {
            let e = (-z * tau).exp();
            let residual = (z - a - b * e).norm();
            return (residual < 1e-12).then_some(z);
        }
    }
    None
}

/// Solution x(t) = exp(lambda t) of x' = b x(t - tau) when b = lambda exp(lambda tau).
pub fn delayed_exponential_b(lambda: f64, tau: f64) -> f64 {
    lambda * (lambda * tau).exp()
}

/// Solution x(t) = exp(lambda t) of x' = c int_{t-tau}^t x when
/// c = lambda^2 / (1 - exp(-lambda tau)).
pub fn distributed_exponential_c(lambda: f64, tau: f64) -> f64 {
    lambda * lambda / (1.0 - (-lambda * tau).exp())
}

pub fn report(id: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id}: {detail}");
}
