use serde::Serialize;
use sha2::{Digest, Sha256};

use qborch::datum::DatumSpec;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity or property the check exercises.
    pub property: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, property: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), property: property.to_string(), pass, detail: detail.into() }
    }

    /// A computed value rather than a verdict.
    pub fn value(name: impl Into<String>, property: &str, detail: impl Into<String>) -> Self {
        Check::new(name, property, true, detail)
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub verb: String,
    pub datum_hash: String,
    pub depth: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verb {}  depth {}  datum {}\n", self.verb, self.depth, &self.datum_hash[..16]);
        for c in &self.checks {
            let tag = if c.pass { "ok  " } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
            if !c.pass {
                out.push_str(&format!("     violated: {}\n", c.property));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

/// SHA-256 of the canonical JSON form.
pub fn datum_hash(spec: &DatumSpec) -> String {
    hex::encode(Sha256::digest(spec.to_json().as_bytes()))
}
