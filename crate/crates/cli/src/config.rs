//! Flat `key = value` job files.

use std::collections::BTreeMap;
use std::fmt;

use arcurve::field::Field;
use arcurve::poly::WPoly;
use arcurve::ring::{HypersurfaceRing, RingSpec};
use sha2::{Digest, Sha256};

const KEYS: [&str; 8] = ["field", "p", "q", "b", "f", "m", "n", "branch"];

#[derive(Debug)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "config: {}", self.message)
        } else {
            write!(f, "config line {}: {}", self.line, self.message)
        }
    }
}

/// Parsed job file. `entries` keeps the line each key came from.
#[derive(Clone, Debug)]
pub struct JobSpec {
    entries: BTreeMap<String, (usize, String)>,
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<JobSpec, ConfigError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((k, v)) = body.split_once('=') else {
                return Err(ConfigError {
                    line,
                    message: format!("expected key = value, got '{body}'"),
                });
            };
            let (k, v) = (k.trim().to_lowercase(), v.trim().to_string());
            if !KEYS.contains(&k.as_str()) {
                return Err(ConfigError {
                    line,
                    message: format!("unknown key '{k}'"),
                });
            }
            if v.is_empty() {
                return Err(ConfigError {
                    line,
                    message: format!("empty value for '{k}'"),
                });
            }
            if let Some((first, _)) = entries.insert(k.clone(), (line, v)) {
                return Err(ConfigError {
                    line,
                    message: format!("duplicate key '{k}' (first on line {first})"),
                });
            }
        }
        Ok(JobSpec { entries })
    }

    fn get(&self, key: &str) -> Option<&(usize, String)> {
        self.entries.get(key)
    }

    fn int(&self, key: &str) -> Result<Option<u32>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| ConfigError {
                line: *line,
                message: format!("'{key}' must be a nonnegative integer, got '{v}'"),
            }),
        }
    }

    fn required(&self, key: &str) -> Result<u32, ConfigError> {
        self.int(key)?.ok_or_else(|| ConfigError {
            line: 0,
            message: format!("missing key '{key}'"),
        })
    }

    pub fn field(&self) -> Result<Field, ConfigError> {
        let Some((line, v)) = self.get("field") else {
            return Ok(Field::Rational);
        };
        let err = |message: String| ConfigError { line: *line, message };
        let f = match v.as_str() {
            "Q" | "QQ" | "rational" => Field::Rational,
            s => {
                let digits = s.trim_start_matches("GF(").trim_start_matches("F_").trim_end_matches(')');
                let l: u64 = digits
                    .parse()
                    .map_err(|_| err(format!("unknown field '{s}' (use Q or F_l)")))?;
                Field::Prime(l)
            }
        };
        f.checked().map_err(|e| err(e.to_string()))
    }

    pub fn branch(&self) -> Result<Option<usize>, ConfigError> {
        Ok(self.int("branch")?.map(|b| b as usize))
    }

    pub fn has_ideal(&self) -> bool {
        self.get("m").is_some() && self.get("n").is_some()
    }

    /// Validates every value against the ring invariants.
    pub fn ring(&self) -> Result<HypersurfaceRing, ConfigError> {
        let field = self.field()?;
        let p = self.required("p")?;
        let q = self.required("q")?;
        let b = match self.get("b") {
            None => field.one(),
            Some((line, v)) => field.parse(v).map_err(|e| ConfigError {
                line: *line,
                message: e.to_string(),
            })?,
        };
        let f = match self.get("f") {
            None => WPoly::one(field),
            Some((line, v)) => WPoly::parse(field, v).map_err(|e| ConfigError {
                line: *line,
                message: e.to_string(),
            })?,
        };
        let (m, n) = (self.int("m")?, self.int("n")?);
        let line_of = |k: &str| self.get(k).map_or(0, |e| e.0);
        HypersurfaceRing::new(RingSpec {
            field,
            p,
            q,
            b,
            f,
            m,
            n,
        })
        .map_err(|e| {
            let msg = e.to_string();
            let line = ["f", "m", "n", "b", "p", "q"]
                .iter()
                .find(|k| msg.contains(&format!("{k} ")) || msg.contains(&format!("{k} =")))
                .map_or(line_of("p"), |k| line_of(k));
            ConfigError { line, message: msg }
        })
    }

    /// Canonical `key=value` text, one key per line in sorted order.
    pub fn canonical(&self) -> String {
        self.entries
            .iter()
            .map(|(k, (_, v))| format!("{k}={}\n", v.split_whitespace().collect::<String>()))
            .collect()
    }

    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn values(&self) -> BTreeMap<String, String> {
        self.entries
            .iter()
            .map(|(k, (_, v))| (k.clone(), v.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_carry_line_numbers() {
        let e = JobSpec::parse("p = 3\n\nq 4\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = JobSpec::parse("p = 3\nwidth = 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = JobSpec::parse("p = 3\np = 4\n").unwrap_err();
        assert!(e.message.contains("duplicate"));
        let e = JobSpec::parse("p = x\nq = 4\n").unwrap().ring().unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn hash_ignores_layout() {
        let a = JobSpec::parse("p=3\nq=4\nf=y\n").unwrap();
        let b = JobSpec::parse("# ring\nq = 4\n  f = y   # the extra factor\np = 3\n").unwrap();
        assert_eq!(a.hash(), b.hash());
        let c = JobSpec::parse("p=3\nq=4\nf=1\n").unwrap();
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn bad_weights_rejected() {
        let e = JobSpec::parse("p = 2\nq = 4\n").unwrap().ring().unwrap_err();
        assert!(e.message.contains("weights not coprime"), "{e}");
    }
}
