//! Versioned registry of known discrepancies in the published closed-form
//! displays. Verification failures matching a registered theorem-regime
//! entry keep exit codes stable; display-scope entries are informational
//! (they document errata in auxiliary value displays that the implementation
//! does not use).

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// A printed theorem regime whose formula disagrees with the engine.
    TheoremRegime,
    /// An auxiliary value display; does not affect any computed result.
    Display,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Entry {
    pub id: String,
    pub scope: Scope,
    pub family: String,
    pub regime: Option<String>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Registry {
    pub version: u32,
    pub entries: Vec<Entry>,
}

const REGISTRY_JSON: &str = include_str!("../data/known_discrepancies.json");

/// The registry shipped with this build.
pub fn known_discrepancies() -> Registry {
    serde_json::from_str(REGISTRY_JSON).expect("bundled registry parses")
}

/// True when a failed check on (family, regime) is a registered known
/// discrepancy.
pub fn is_registered(reg: &Registry, family: &str, regime: &str) -> bool {
    reg.entries.iter().any(|e| {
        e.scope == Scope::TheoremRegime
            && family.starts_with(&e.family)
            && e.regime.as_deref() == Some(regime)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_parses_and_is_versioned() {
        let reg = known_discrepancies();
        assert_eq!(reg.version, 1);
        // only display-scope errata are known; every theorem regime checks out
        assert!(reg.entries.iter().all(|e| e.scope == Scope::Display));
        assert!(!is_registered(&reg, "power(m=2)", "0<=k<=m-2"));
    }
}
