use std::collections::HashSet;
use std::path::Path;

use derivring_core::{CoordinateRing, MonomialOrder, Polynomial};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::parse::{is_identifier, parse_polynomial};

fn default_order() -> String {
    "degrevlex".into()
}

/// On-disk description of a variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyFile {
    pub name: String,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    #[serde(default = "default_order")]
    pub order: String,
}

impl VarietyFile {
    pub fn new(name: &str, variables: &[&str], generators: &[&str]) -> Self {
        VarietyFile {
            name: name.into(),
            variables: variables.iter().map(|s| s.to_string()).collect(),
            generators: generators.iter().map(|s| s.to_string()).collect(),
            order: default_order(),
        }
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("variety file: {}", e)))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("variety files serialize")
    }

    pub fn monomial_order(&self) -> CliResult<MonomialOrder> {
        MonomialOrder::from_name(&self.order)
            .ok_or_else(|| CliError::Parse(format!("unknown monomial order '{}'", self.order)))
    }

    /// Checks identifiers and parses every generator.
    pub fn polynomials(&self) -> CliResult<Vec<Polynomial>> {
        let mut seen = HashSet::new();
        for v in &self.variables {
            if !is_identifier(v) {
                return Err(CliError::Parse(format!("'{}' is not a valid identifier", v)));
            }
            if !seen.insert(v.as_str()) {
                return Err(CliError::Parse(format!("variable '{}' declared twice", v)));
            }
        }
        if self.variables.is_empty() {
            return Err(CliError::Parse("no variables declared".into()));
        }
        let order = self.monomial_order()?;
        self.generators
            .iter()
            .enumerate()
            .map(|(k, g)| {
                parse_polynomial(g, &self.variables, order)
                    .map_err(|e| CliError::Parse(format!("generator {}: {}", k + 1, e)))
            })
            .collect()
    }

    /// The coordinate ring, after the primality probe.
    pub fn ring(&self) -> CliResult<CoordinateRing> {
        let gens = self.polynomials()?;
        Ok(CoordinateRing::new(self.variables.clone(), gens, self.monomial_order()?)?)
    }
}
