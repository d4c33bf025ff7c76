//! Flat key-value session configs: TOML file plus `key=value` overrides.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::base::{fp, RPoly};
use crate::drinfeld::{Characteristic, DrinfeldModule};
use crate::error::{Error, Result};
use crate::field::{parse_k, parse_r, KElem};
use crate::places::Place;
use crate::twisted::TwistedPoly;

pub const COMMANDS: &[&str] = &[
    "product-formula",
    "compose",
    "torsion",
    "divide",
    "module-present",
    "module-member",
    "module-quotient",
    "hull",
    "hensel",
    "discreteness",
    "closure-member",
    "quotient-iso",
    "snap",
    "zero-dim",
    "generic",
    "uniformity",
    "reduce-dml",
];

/// Keys every command accepts, with defaults.
const DEFAULTS: &[(&str, &str)] = &[
    ("p", "3"),
    ("phi", "[t, 1]"),
    ("characteristic", ""),
    ("g", "1"),
    ("gens", "θ"),
    ("hull", "false"),
    ("deg_bound", "8"),
    ("prime_bound", "2"),
    ("max_rounds", "6"),
    ("division_cap", "24"),
    ("cutoff", "10"),
    ("places", "3"),
    ("tracked", ""),
    ("precision", "10"),
    ("enum_deg", "2"),
    ("box_theta", "1"),
    ("box_t", "2"),
    ("samples", "8"),
    ("seed", "0"),
];

/// Commands that never build Γ, so `gens` is not checked against `g`.
const WITHOUT_MODULE: &[&str] = &["product-formula", "compose", "torsion", "divide", "hensel", "snap", "uniformity"];

/// Command-specific keys: (required, optional).
fn command_keys(cmd: &str) -> (&'static [&'static str], &'static [&'static str]) {
    match cmd {
        "product-formula" => (&["x"], &[]),
        "compose" => (&["a"], &["b"]),
        "torsion" => (&[], &["a", "x"]),
        "divide" => (&["a", "y"], &[]),
        "module-present" => (&[], &[]),
        "module-member" => (&["y"], &[]),
        "module-quotient" => (&["a"], &[]),
        "hull" => (&[], &[]),
        "hensel" => (&["a", "y", "place"], &[]),
        "discreteness" => (&[], &["place"]),
        "closure-member" => (&["y"], &[]),
        "quotient-iso" => (&["a"], &[]),
        "snap" => (&["seq", "y0"], &["c0"]),
        "zero-dim" => (&["points"], &[]),
        "generic" => (&[], &["points", "poly"]),
        "uniformity" => (&["poly", "translates"], &["m"]),
        "reduce-dml" => (&["poly"], &["m"]),
        _ => (&[], &[]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionConfig {
    pub command: String,
    values: BTreeMap<String, String>,
}

/// Reads a flat TOML table; arrays of scalars are joined with `;`.
pub fn read_toml(text: &str) -> Result<BTreeMap<String, String>> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| {
        let (line, col) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        Error::Config(format!("line {line}, column {col}: {}", e.message()))
    })?;
    let mut out = BTreeMap::new();
    for (k, v) in table {
        out.insert(k.clone(), scalar_text(&k, &v)?);
    }
    Ok(out)
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn scalar_text(k: &str, v: &toml::Value) -> Result<String> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Boolean(b) => b.to_string(),
        toml::Value::Array(a) => a.iter().map(|x| scalar_text(k, x)).collect::<Result<Vec<_>>>()?.join("; "),
        _ => return Err(Error::Config(format!("`{k}` must be a string, integer, boolean or array"))),
    })
}

/// Splits `key=value` arguments.
pub fn parse_overrides(args: &[String]) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for a in args {
        let (k, v) = a.split_once('=').ok_or_else(|| Error::Config(format!("expected key=value, got `{a}`")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

impl SessionConfig {
    pub fn new(command: &str, given: BTreeMap<String, String>) -> Result<Self> {
        if !COMMANDS.contains(&command) {
            return Err(Error::UnknownCommand(command.into()));
        }
        let (req, opt) = command_keys(command);
        for k in given.keys() {
            let known = k == "command" || DEFAULTS.iter().any(|(d, _)| d == k) || req.contains(&k.as_str()) || opt.contains(&k.as_str());
            if !known {
                return Err(Error::Config(format!("unknown key `{k}` for `{command}`")));
            }
        }
        for k in req {
            if !given.contains_key(*k) {
                return Err(Error::Config(format!("`{command}` requires `{k}`")));
            }
        }
        let mut values: BTreeMap<String, String> = DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        values.extend(given.into_iter().filter(|(k, _)| k != "command"));
        let cfg = SessionConfig { command: command.into(), values };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        fp::check_prime(self.p()?)?;
        for k in ["g", "deg_bound", "prime_bound", "max_rounds", "division_cap", "cutoff", "places", "precision", "samples"] {
            if self.usize(k)? == 0 {
                return Err(Error::Config(format!("`{k}` must be positive")));
            }
        }
        self.bool("hull")?;
        self.u64("seed")?;
        self.drinfeld()?;
        if !WITHOUT_MODULE.contains(&self.command.as_str()) {
            self.gens()?;
        }
        self.tracked()?;
        Ok(())
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    pub fn set(&mut self, k: &str, v: String) {
        self.values.insert(k.into(), v);
    }

    /// Hex sha256 of the canonical `key=value` lines, command first.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("command={}\n", self.command));
        for (k, v) in &self.values {
            h.update(format!("{k}={v}\n"));
        }
        hex::encode(h.finalize())
    }

    pub fn get(&self, k: &str) -> Option<&str> {
        self.values.get(k).map(String::as_str).filter(|s| !s.is_empty())
    }

    pub fn req(&self, k: &str) -> Result<&str> {
        self.get(k).ok_or_else(|| Error::Config(format!("`{k}` is required")))
    }

    pub fn usize(&self, k: &str) -> Result<usize> {
        self.req(k)?.parse().map_err(|_| Error::Config(format!("`{k}` must be a non-negative integer")))
    }

    pub fn i64(&self, k: &str) -> Result<i64> {
        self.req(k)?.parse().map_err(|_| Error::Config(format!("`{k}` must be an integer")))
    }

    pub fn u64(&self, k: &str) -> Result<u64> {
        self.req(k)?.parse().map_err(|_| Error::Config(format!("`{k}` must be a non-negative integer")))
    }

    pub fn bool(&self, k: &str) -> Result<bool> {
        self.req(k)?.parse().map_err(|_| Error::Config(format!("`{k}` must be true or false")))
    }

    pub fn p(&self) -> Result<u32> {
        self.req("p")?.parse().map_err(|_| Error::Config("`p` must be an integer".into()))
    }

    fn keyed<T>(&self, k: &str, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { column, message } => Error::Parse { column, message: format!("in `{k}`: {message}") },
            other => other,
        })
    }

    pub fn elem(&self, k: &str) -> Result<KElem> {
        let p = self.p()?;
        self.keyed(k, parse_k(self.req(k)?, p))
    }

    pub fn rpoly(&self, k: &str) -> Result<RPoly> {
        let p = self.p()?;
        self.keyed(k, parse_r(self.req(k)?, p))
    }

    pub fn drinfeld(&self) -> Result<DrinfeldModule> {
        let p = self.p()?;
        let declared = match self.get("characteristic") {
            None => None,
            Some("generic") => Some(Characteristic::Generic),
            Some("special") => Some(Characteristic::Special),
            Some(o) => return Err(Error::Config(format!("unknown characteristic `{o}`"))),
        };
        let phi = self.keyed("phi", TwistedPoly::parse(self.req("phi")?, p))?;
        DrinfeldModule::new(phi, declared)
    }

    /// `;`-separated tuples of `,`-separated coordinates.
    pub fn points(&self, k: &str) -> Result<Vec<Vec<KElem>>> {
        let p = self.p()?;
        let g = self.usize("g")?;
        let mut out = Vec::new();
        for tuple in self.get(k).unwrap_or("").split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let x = tuple.split(',').map(|c| self.keyed(k, parse_k(c.trim(), p))).collect::<Result<Vec<_>>>()?;
            if x.len() != g {
                return Err(Error::Config(format!("`{k}`: `{tuple}` has {} coordinates, expected {g}", x.len())));
            }
            out.push(x);
        }
        Ok(out)
    }

    pub fn point(&self, k: &str) -> Result<Vec<KElem>> {
        let mut pts = self.points(k)?;
        if pts.len() != 1 {
            return Err(Error::Config(format!("`{k}` must be a single point")));
        }
        Ok(pts.remove(0))
    }

    pub fn gens(&self) -> Result<Vec<Vec<KElem>>> {
        self.points("gens")
    }

    pub fn place(&self, k: &str) -> Result<Place> {
        Place::parse(self.req(k)?, self.p()?)
    }

    pub fn tracked(&self) -> Result<Vec<Place>> {
        let p = self.p()?;
        self.get("tracked").unwrap_or("").split(';').map(str::trim).filter(|s| !s.is_empty()).map(|s| Place::parse(s, p)).collect()
    }
}
