//! Optional JSON configuration; command-line flags take precedence.

use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub max_order: Option<usize>,
    pub budget: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// Fields set in `flags` win over those of `self`.
    pub fn overridden_by(self, flags: Config) -> Config {
        Config {
            max_order: flags.max_order.or(self.max_order),
            budget: flags.budget.or(self.budget),
            seed: flags.seed.or(self.seed),
            out: flags.out.or(self.out),
        }
    }
}
