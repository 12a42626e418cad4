//! Typed access to a scenario's string parameters.
//!
//! Every read records the effective value (defaults included) so the
//! manifest shows exactly what ran, and leftover keys can be rejected.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::str::FromStr;

use airy_evolve::wei_norman::Profile;
use num_rational::BigRational;

use crate::config::Scenario;
use crate::error::{CliError, Result};

pub struct Params<'a> {
    scenario: &'a Scenario,
    effective: RefCell<BTreeMap<String, String>>,
}

impl<'a> Params<'a> {
    pub fn new(scenario: &'a Scenario) -> Self {
        Params { scenario, effective: RefCell::new(BTreeMap::new()) }
    }

    fn err(&self, key: &str, msg: impl std::fmt::Display) -> CliError {
        CliError::config(format!("scenario {:?}, key {key:?}: {msg}", self.scenario.name))
    }

    fn raw(&self, key: &str) -> Option<&'a str> {
        self.scenario.params.get(key).map(String::as_str)
    }

    fn record(&self, key: &str, value: String) {
        self.effective.borrow_mut().insert(key.to_string(), value);
    }

    fn parsed<T: FromStr + Debug>(&self, key: &str, default: T, what: &str) -> Result<T> {
        let v = match self.raw(key) {
            Some(s) => s.parse::<T>().map_err(|_| self.err(key, format!("expected {what}, got {s:?}")))?,
            None => default,
        };
        self.record(key, format!("{v:?}"));
        Ok(v)
    }

    pub fn f64(&self, key: &str, default: f64) -> Result<f64> {
        let v = self.parsed(key, default, "a number")?;
        if !v.is_finite() {
            return Err(self.err(key, "must be finite"));
        }
        Ok(v)
    }

    /// A number satisfying `pred`; `rule` names the constraint in the error.
    pub fn f64_where(&self, key: &str, default: f64, rule: &str, pred: impl Fn(f64) -> bool) -> Result<f64> {
        let v = self.f64(key, default)?;
        if pred(v) {
            Ok(v)
        } else {
            Err(self.err(key, format!("must be {rule}, got {v}")))
        }
    }

    pub fn positive(&self, key: &str, default: f64) -> Result<f64> {
        self.f64_where(key, default, "> 0", |v| v > 0.0)
    }

    pub fn non_negative(&self, key: &str, default: f64) -> Result<f64> {
        self.f64_where(key, default, ">= 0", |v| v >= 0.0)
    }

    pub fn usize_in(&self, key: &str, default: usize, lo: usize, hi: usize) -> Result<usize> {
        let v: usize = self.parsed(key, default, "a non-negative integer")?;
        if (lo..=hi).contains(&v) {
            Ok(v)
        } else {
            Err(self.err(key, format!("must lie in [{lo}, {hi}], got {v}")))
        }
    }

    pub fn bool(&self, key: &str, default: bool) -> Result<bool> {
        self.parsed(key, default, "true or false")
    }

    pub fn choice(&self, key: &str, default: &'static str, options: &[&'static str]) -> Result<&'static str> {
        let v = self.raw(key).unwrap_or(default);
        let found = options
            .iter()
            .find(|o| **o == v)
            .ok_or_else(|| self.err(key, format!("expected one of {options:?}, got {v:?}")))?;
        self.record(key, v.to_string());
        Ok(found)
    }

    pub fn list(&self, key: &str, default: &str) -> Vec<String> {
        let v = self.raw(key).unwrap_or(default);
        self.record(key, v.to_string());
        v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
    }

    pub fn rational(&self, key: &str, default: &str) -> Result<BigRational> {
        let v = self.raw(key).unwrap_or(default);
        let r = BigRational::from_str(v).or_else(|_| {
            v.parse::<f64>()
                .map_err(|_| self.err(key, format!("expected a rational p/q, got {v:?}")))
                .and_then(|f| airy_evolve::polynomials::rational_from_f64(f).map_err(|e| self.err(key, e)))
        })?;
        self.record(key, r.to_string());
        Ok(r)
    }

    /// Coefficient preset. `key = 0.5` is a constant; `key = constant|linear|sin`
    /// reads `key.value`, `key.offset`/`key.slope` or `key.amplitude`/`key.omega`.
    pub fn profile(&self, key: &str, default: f64) -> Result<Profile> {
        let raw = self.raw(key);
        if let Some(v) = raw.and_then(|s| s.parse::<f64>().ok()) {
            if !v.is_finite() {
                return Err(self.err(key, "must be finite"));
            }
            self.record(key, format!("{v:?}"));
            return Ok(Profile::Constant(v));
        }
        let preset = self.choice(key, "constant", &["constant", "linear", "sin"])?;
        let sub = |name: &str, d: f64| self.f64(&format!("{key}.{name}"), d);
        Ok(match preset {
            "constant" => Profile::Constant(sub("value", default)?),
            "linear" => Profile::Linear { offset: sub("offset", 0.0)?, slope: sub("slope", 1.0)? },
            _ => Profile::Sin { amplitude: sub("amplitude", 1.0)?, omega: sub("omega", 1.0)? },
        })
    }

    /// Effective parameters; errors on keys that were never read.
    pub fn finish(self) -> Result<BTreeMap<String, String>> {
        let effective = self.effective.into_inner();
        let unused: Vec<&String> = self.scenario.params.keys().filter(|k| !effective.contains_key(*k)).collect();
        if let Some(k) = unused.first() {
            return Err(CliError::config(format!(
                "scenario {:?}: key {k:?} is not used by {}",
                self.scenario.name, self.scenario.kind
            )));
        }
        Ok(effective)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Kind;

    fn scenario(pairs: &[(&str, &str)]) -> Scenario {
        Scenario {
            name: "s".into(),
            kind: Kind::Heat,
            params: pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }

    #[test]
    fn defaults_are_recorded() {
        let s = scenario(&[("beta", "0.5")]);
        let p = Params::new(&s);
        assert_eq!(p.f64("beta", 0.0).unwrap(), 0.5);
        assert_eq!(p.usize_in("n", 64, 2, 100).unwrap(), 64);
        let eff = p.finish().unwrap();
        assert_eq!(eff["n"], "64");
    }

    #[test]
    fn rejects_bad_values_and_leftovers() {
        let s = scenario(&[("t", "-1"), ("typo", "1")]);
        let p = Params::new(&s);
        assert!(p.positive("t", 1.0).is_err());
        assert!(p.finish().is_err());
        let s = scenario(&[("t", "abc")]);
        assert!(Params::new(&s).f64("t", 1.0).is_err());
    }

    #[test]
    fn presets() {
        let s = scenario(&[("beta", "sin"), ("beta.omega", "2"), ("phi", "0.7"), ("lambda", "3/7")]);
        let p = Params::new(&s);
        assert!(matches!(p.profile("beta", 0.0).unwrap(), Profile::Sin { omega, .. } if omega == 2.0));
        assert!(matches!(p.profile("phi", 0.0).unwrap(), Profile::Constant(v) if v == 0.7));
        assert!(matches!(p.profile("alpha", 1.0).unwrap(), Profile::Constant(v) if v == 1.0));
        assert_eq!(p.rational("lambda", "1").unwrap().to_string(), "3/7");
        p.finish().unwrap();
    }
}
