//! Scenario lists from INI files or command-line flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use ini::Ini;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Heat,
    Schrodinger,
    AiryPacket,
    Transform,
    Poly,
    WeiNorman,
    Centroid,
    Validate,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::Heat,
        Kind::Schrodinger,
        Kind::AiryPacket,
        Kind::Transform,
        Kind::Poly,
        Kind::WeiNorman,
        Kind::Centroid,
        Kind::Validate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Heat => "heat",
            Kind::Schrodinger => "schrodinger",
            Kind::AiryPacket => "airy-packet",
            Kind::Transform => "transform",
            Kind::Poly => "poly",
            Kind::WeiNorman => "wei-norman",
            Kind::Centroid => "centroid",
            Kind::Validate => "validate",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One named run: a kind plus raw string parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub kind: Kind,
    pub params: BTreeMap<String, String>,
}

fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && !name.starts_with('.')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'));
    if ok {
        Ok(())
    } else {
        Err(CliError::config(format!("scenario name {name:?} must use only [A-Za-z0-9._-]")))
    }
}

/// Parses INI text. Each section is a scenario; keys in the unnamed
/// leading section are defaults shared by every scenario. A section's
/// optional `kind` key must match the subcommand.
pub fn parse_config(text: &str, kind: Kind) -> Result<Vec<Scenario>> {
    let ini = Ini::load_from_str(text).map_err(|e| CliError::config(e.to_string()))?;
    let mut defaults = BTreeMap::new();
    if let Some(general) = ini.section(None::<String>) {
        for (k, v) in general.iter() {
            defaults.insert(k.to_string(), v.trim().to_string());
        }
    }
    if let Some(k) = defaults.remove("kind") {
        if k != kind.name() {
            return Err(CliError::config(format!("default kind {k:?} does not match subcommand {kind}")));
        }
    }
    let mut out: Vec<Scenario> = Vec::new();
    for (section, props) in ini.iter() {
        let Some(name) = section else { continue };
        check_name(name)?;
        if out.iter().any(|s| s.name == name) {
            return Err(CliError::config(format!("duplicate scenario {name:?}")));
        }
        let mut params = defaults.clone();
        for (k, v) in props.iter() {
            params.insert(k.to_string(), v.trim().to_string());
        }
        if let Some(k) = params.remove("kind") {
            if k != kind.name() {
                return Err(CliError::config(format!("scenario {name:?} has kind {k:?}, expected {kind}")));
            }
        }
        out.push(Scenario { name: name.to_string(), kind, params });
    }
    Ok(out)
}

pub fn load_config(path: &Path, kind: Kind) -> Result<Vec<Scenario>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text, kind)
}

/// Command-line parameters after the subcommand.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlagArgs {
    pub params: BTreeMap<String, String>,
    pub positional: Vec<String>,
    pub config: Option<String>,
    pub out: Option<String>,
    pub parallel: bool,
}

/// Splits `--key value`, `--key=value` and bare `--switch` tokens. The runner's
/// own options (`--config`, `--out`, `--parallel`) are recognised anywhere.
pub fn parse_flags(tokens: &[String]) -> Result<FlagArgs> {
    let mut args = FlagArgs::default();
    let mut i = 0;
    while i < tokens.len() {
        let tok = &tokens[i];
        i += 1;
        let Some(key) = tok.strip_prefix("--") else {
            args.positional.push(tok.clone());
            continue;
        };
        let (key, value) = match key.split_once('=') {
            Some((k, v)) => (k.to_string(), Some(v.to_string())),
            None => (key.to_string(), None),
        };
        if key.is_empty() {
            return Err(CliError::config(format!("bad flag {tok:?}")));
        }
        if key == "parallel" && value.is_none() {
            args.parallel = true;
            continue;
        }
        let value = match value {
            Some(v) => v,
            None if i < tokens.len() && !tokens[i].starts_with("--") => {
                i += 1;
                tokens[i - 1].clone()
            }
            None => "true".to_string(),
        };
        let slot = match key.as_str() {
            "config" => Some(&mut args.config),
            "out" => Some(&mut args.out),
            _ => None,
        };
        match slot {
            Some(s) => *s = Some(value),
            None => {
                if args.params.insert(key.clone(), value).is_some() {
                    return Err(CliError::config(format!("flag --{key} given twice")));
                }
            }
        }
    }
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn flags() {
        let a = parse_flags(&toks("--b 1 --A=2 --tau-max -2 --oracle --out dir --parallel x")).unwrap();
        assert_eq!(a.params["b"], "1");
        assert_eq!(a.params["A"], "2");
        assert_eq!(a.params["tau-max"], "-2");
        assert_eq!(a.params["oracle"], "true");
        assert_eq!(a.out.as_deref(), Some("dir"));
        assert!(a.parallel);
        assert_eq!(a.positional, vec!["x"]);
        assert!(parse_flags(&toks("--b 1 --b 2")).is_err());
    }

    #[test]
    fn sections_become_scenarios() {
        let text = "n = 512\n[one]\nbeta = 0.5\n[two]\nkind = heat\nn = 1024\n";
        let s = parse_config(text, Kind::Heat).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].params["n"], "512");
        assert_eq!(s[1].params["n"], "1024");
        assert!(!s[1].params.contains_key("kind"));
        assert!(parse_config("[a]\nkind = poly\n", Kind::Heat).is_err());
        assert!(parse_config("[bad name]\n", Kind::Heat).is_err());
        assert!(parse_config("", Kind::Heat).unwrap().is_empty());
    }
}
