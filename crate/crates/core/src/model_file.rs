//! JSON model files.
//!
//! ```json
//! { "a": 0.25, "b": -0.75, "c": 0.0, "tau": 2.0,
//!   "nonlinearity": [{"coeff": -1.5, "powers": [2, 0, 0]}] }
//! ```
//!
//! `nonlinearity` is either a list of monomials in (x, x_delayed, integral) or
//! `{"builtin": name}` with name one of `zero`, `cubic`, `suarez-schopf`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{GkError, Result};
use crate::nonlinearity::{Monomial, Nonlinearity};
use crate::reduction::DDESpec;

pub const BUILTIN_NONLINEARITIES: &[&str] = &["zero", "cubic", "suarez-schopf"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NonlinearitySpec {
    Terms(Vec<Monomial>),
    Builtin {
        builtin: String,
        /// Only read by `suarez-schopf`; defaults to -b.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha: Option<f64>,
    },
}

impl Default for NonlinearitySpec {
    fn default() -> Self {
        Self::Terms(Vec::new())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub a: f64,
    pub b: f64,
    #[serde(default)]
    pub c: f64,
    pub tau: f64,
    #[serde(default)]
    pub nonlinearity: NonlinearitySpec,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_spec(&self) -> Result<DDESpec> {
        let f = match &self.nonlinearity {
            NonlinearitySpec::Terms(terms) => Nonlinearity::polynomial(terms.clone()),
            NonlinearitySpec::Builtin { builtin, alpha } => match builtin.as_str() {
                "zero" => Nonlinearity::Zero,
                "cubic" => Nonlinearity::Polynomial(vec![Monomial::new(-1.0, [3, 0, 0])]),
                "suarez-schopf" => {
                    let alpha = alpha.unwrap_or(-self.b);
                    if !(alpha > 0.0 && alpha < 1.0) {
                        return Err(GkError::InvalidParameter(format!(
                            "suarez-schopf nonlinearity needs alpha in (0, 1), got {alpha}"
                        )));
                    }
                    Nonlinearity::suarez_schopf((1.0 - alpha).sqrt())
                }
                other => {
                    return Err(GkError::InvalidParameter(format!(
                        "unknown builtin nonlinearity `{other}`; available: {}",
                        BUILTIN_NONLINEARITIES.join(", ")
                    )))
                }
            },
        };
        DDESpec::new(self.a, self.b, self.c, self.tau, f)
    }

    /// None when the nonlinearity is an opaque evaluator.
    pub fn from_spec(spec: &DDESpec) -> Option<Self> {
        let terms = spec.nonlinearity.terms()?.to_vec();
        Some(Self {
            a: spec.a,
            b: spec.b,
            c: spec.c,
            tau: spec.tau,
            nonlinearity: NonlinearitySpec::Terms(terms),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let m = ModelFile::from_json(
            r#"{"a": 0.25, "b": -0.75, "c": 0, "tau": 2,
                "nonlinearity": [{"coeff": -1.5, "powers": [2, 0, 0]},
                                 {"coeff": -1, "powers": [3, 0, 0]}]}"#,
        )
        .unwrap();
        let spec = m.to_spec().unwrap();
        assert_eq!(spec.nonlinearity.eval(1.0, 0.0, 0.0), -2.5);
        assert_eq!(spec.tau, 2.0);
    }

    #[test]
    fn parses_builtins() {
        let m = ModelFile::from_json(
            r#"{"a": 0.25, "b": -0.75, "tau": 2, "nonlinearity": {"builtin": "suarez-schopf"}}"#,
        )
        .unwrap();
        assert_eq!(m.c, 0.0);
        let spec = m.to_spec().unwrap();
        assert_eq!(spec.nonlinearity.eval(1.0, 0.0, 0.0), -2.5);

        let m = ModelFile::from_json(r#"{"a": 1, "b": 0, "tau": 1}"#).unwrap();
        assert!(m.to_spec().unwrap().nonlinearity.is_zero());

        let m = ModelFile::from_json(
            r#"{"a": 1, "b": 0, "tau": 1, "nonlinearity": {"builtin": "nope"}}"#,
        )
        .unwrap();
        assert!(m.to_spec().is_err());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(ModelFile::from_json(r#"{"a": 1, "tau": 1}"#).is_err());
        assert!(ModelFile::from_json(r#"{"a": 1, "b": 1, "tau": 1, "d": 3}"#).is_err());
        let m = ModelFile::from_json(r#"{"a": 1, "b": 0, "tau": -1}"#).unwrap();
        assert!(matches!(m.to_spec(), Err(GkError::InvalidDelay(_))));
    }

    #[test]
    fn roundtrip_through_spec() {
        let spec = DDESpec::new(0.1, 0.2, 0.3, 1.5, Nonlinearity::suarez_schopf(0.25)).unwrap();
        let file = ModelFile::from_spec(&spec).unwrap();
        let again = ModelFile::from_json(&file.to_json().unwrap()).unwrap();
        assert_eq!(file, again);
        assert!(ModelFile::from_spec(
            &DDESpec::new(0.0, 0.0, 0.0, 1.0, Nonlinearity::custom(|x, _, _| x)).unwrap()
        )
        .is_none());
    }
}
