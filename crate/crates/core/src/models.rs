//! Built-in models.
//!
//! The Suarez-Schopf delayed oscillator T' = T - alpha T(t - tau) - T^3 has
//! fixed points 0 and +-sqrt(1 - alpha). It is reduced about T+ in the
//! perturbed variable x = T - T+, where it reads
//!
//! x' = (1 - 3 T+^2) x - alpha x(t - tau) - 3 T+ x^2 - x^3.

use std::path::PathBuf;

use crate::error::{check_tau, GkError, Result};
use crate::model_file::ModelFile;
use crate::nonlinearity::{Monomial, Nonlinearity};
use crate::reduction::DDESpec;

pub const DEFAULT_ALPHA: f64 = 0.75;
/// Demo delay. The reduced matrices keep tau symbolic, so this is a free choice.
pub const DEFAULT_TAU: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuarezSchopfParams {
    alpha: f64,
    tau: f64,
}

impl SuarezSchopfParams {
    pub fn new(alpha: f64, tau: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(GkError::InvalidParameter(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        check_tau(tau)?;
        Ok(Self { alpha, tau })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// T+ = sqrt(1 - alpha).
    pub fn t_plus(&self) -> f64 {
        (1.0 - self.alpha).sqrt()
    }

    /// (T0, T+, T-).
    pub fn fixed_points(&self) -> [f64; 3] {
        let t = self.t_plus();
        [0.0, t, -t]
    }
}

impl Default for SuarezSchopfParams {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
            tau: DEFAULT_TAU,
        }
    }
}

/// Perturbed-variable form: a = 1 - 3 T+^2, b = -alpha, c = 0, F = -3 T+ x^2 - x^3.
pub fn suarez_schopf_spec(params: &SuarezSchopfParams) -> DDESpec {
    let t_plus = params.t_plus();
    DDESpec {
        a: 1.0 - 3.0 * t_plus * t_plus,
        b: -params.alpha,
        c: 0.0,
        tau: params.tau,
        nonlinearity: Nonlinearity::suarez_schopf(t_plus),
    }
}

/// The model in its original variable T: a = 1, b = -alpha, F = -T^3.
pub fn suarez_schopf_original_spec(params: &SuarezSchopfParams) -> DDESpec {
    DDESpec {
        a: 1.0,
        b: -params.alpha,
        c: 0.0,
        tau: params.tau,
        nonlinearity: Nonlinearity::Polynomial(vec![Monomial::new(-1.0, [3, 0, 0])]),
    }
}

/// T = x + T+.
pub fn to_original_variable(x: f64, params: &SuarezSchopfParams) -> f64 {
    x + params.t_plus()
}

/// x = T - T+.
pub fn to_perturbed_variable(t: f64, params: &SuarezSchopfParams) -> f64 {
    t - params.t_plus()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelInfo {
    pub name: &'static str,
    pub summary: &'static str,
}

const REGISTRY: &[ModelInfo] = &[
    ModelInfo {
        name: "suarez-schopf",
        summary: "delayed oscillator T' = T - alpha T(t-tau) - T^3, reduced about T+ (alpha default 0.75)",
    },
    ModelInfo {
        name: "linear-discrete-delay",
        summary: "x' = a x + b x(t-tau)",
    },
    ModelInfo {
        name: "linear-distributed",
        summary: "x' = c int_{t-tau}^t x(s) ds",
    },
    ModelInfo {
        name: "custom-from-json",
        summary: "model read from a JSON file",
    },
];

pub fn builtin_registry() -> &'static [ModelInfo] {
    REGISTRY
}

pub fn model_names() -> Vec<String> {
    REGISTRY.iter().map(|m| m.name.to_string()).collect()
}

/// Parameters consulted when resolving a named model. Unset values fall back
/// to the model's defaults (alpha = 0.75; a, b, c = 0).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModelOptions {
    pub alpha: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub json_path: Option<PathBuf>,
}

/// Looks up `name` in the registry and builds its spec at delay `tau`.
/// For `custom-from-json`, `tau` overrides the file's delay when given.
pub fn resolve_model(name: &str, tau: Option<f64>, opts: &ModelOptions) -> Result<DDESpec> {
    let tau_or_default = tau.unwrap_or(DEFAULT_TAU);
    match name {
        "suarez-schopf" => {
            let params =
                SuarezSchopfParams::new(opts.alpha.unwrap_or(DEFAULT_ALPHA), tau_or_default)?;
            Ok(suarez_schopf_spec(&params))
        }
        "linear-discrete-delay" => DDESpec::linear(
            opts.a.unwrap_or(0.0),
            opts.b.unwrap_or(0.0),
            0.0,
            tau_or_default,
        ),
        "linear-distributed" => DDESpec::linear(0.0, 0.0, opts.c.unwrap_or(0.0), tau_or_default),
        "custom-from-json" => {
            let path = opts.json_path.as_ref().ok_or_else(|| {
                GkError::InvalidParameter("custom-from-json needs a model file path".into())
            })?;
            let spec = ModelFile::load(path)?.to_spec()?;
            match tau {
                Some(t) => spec.with_tau(t),
                None => Ok(spec),
            }
        }
        other => Err(GkError::UnknownModel {
            name: other.to_string(),
            available: model_names(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suarez_schopf_defaults() {
        let p = SuarezSchopfParams::new(0.75, 2.0).unwrap();
        assert_eq!(p.t_plus(), 0.5);
        let spec = suarez_schopf_spec(&p);
        assert_eq!((spec.a, spec.b, spec.c), (0.25, -0.75, 0.0));
        assert_eq!(spec.nonlinearity.eval(1.0, 0.0, 0.0), -2.5);
        assert_eq!(p.fixed_points(), [0.0, 0.5, -0.5]);
    }

    #[test]
    fn alpha_range_is_enforced() {
        assert!(SuarezSchopfParams::new(0.0, 1.0).is_err());
        assert!(SuarezSchopfParams::new(1.0, 1.0).is_err());
        assert!(SuarezSchopfParams::new(1.2, 1.0).is_err());
        assert!(SuarezSchopfParams::new(0.5, 0.0).is_err());
    }

    #[test]
    fn near_one_alpha_leaves_pure_cubic() {
        let p = SuarezSchopfParams::new(1.0 - 1e-12, 1.0).unwrap();
        let spec = suarez_schopf_spec(&p);
        let x = 0.7;
        assert!((spec.nonlinearity.eval(x, 0.0, 0.0) + x * x * x).abs() < 1e-5);
        assert!((spec.a - 1.0).abs() < 1e-11);
    }

    #[test]
    fn variable_change() {
        let p = SuarezSchopfParams::default();
        assert_eq!(to_original_variable(0.0, &p), 0.5);
        assert_eq!(to_original_variable(-p.t_plus(), &p), 0.0);
        for t in [-1.3, -0.2, 0.0, 0.4, 2.7] {
            assert!((to_original_variable(to_perturbed_variable(t, &p), &p) - t).abs() < 1e-15);
        }
    }

    #[test]
    fn registry_lookup() {
        let spec = resolve_model("suarez-schopf", None, &ModelOptions::default()).unwrap();
        assert_eq!((spec.a, spec.b, spec.tau), (0.25, -0.75, DEFAULT_TAU));

        let opts = ModelOptions {
            a: Some(0.0),
            b: Some(-1.0),
            ..Default::default()
        };
        let spec = resolve_model("linear-discrete-delay", Some(1.0), &opts).unwrap();
        assert_eq!((spec.a, spec.b, spec.c), (0.0, -1.0, 0.0));
        assert!(spec.nonlinearity.is_zero());

        let opts = ModelOptions {
            c: Some(0.4),
            ..Default::default()
        };
        let spec = resolve_model("linear-distributed", Some(1.0), &opts).unwrap();
        assert_eq!(spec.c, 0.4);

        match resolve_model("foo", None, &ModelOptions::default()) {
            Err(e @ GkError::UnknownModel { .. }) => {
                let msg = e.to_string();
                assert!(msg.contains("suarez-schopf") && msg.contains("custom-from-json"));
            }
            other => panic!("expected unknown-model error, got {other:?}"),
        }
        assert!(resolve_model("custom-from-json", None, &ModelOptions::default()).is_err());
        assert!(resolve_model("suarez-schopf", Some(-1.0), &ModelOptions::default()).is_err());
    }
}
