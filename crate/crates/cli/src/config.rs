use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::Failure;

/// Keys accepted by `--config`; names match the long flags with `-`
/// replaced by `_`. Flags given on the command line win.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: Option<u64>,
    pub p: Option<u64>,
    pub pmin: Option<u64>,
    pub pmax: Option<u64>,
    pub max_per_prime: Option<usize>,
    pub group_order: Option<u64>,
    pub trials: Option<u64>,
    pub exhaustive: Option<bool>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig =
            toml::from_str(&text).map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), Failure> {
        let positive = [("n", self.n), ("p", self.p), ("pmin", self.pmin), ("pmax", self.pmax), ("group_order", self.group_order)];
        for (key, value) in positive {
            if value == Some(0) {
                return Err(Failure::Usage(format!("config key {key} must be positive")));
            }
        }
        Ok(())
    }
}

/// Flag value, else config value, else a usage error naming the flag.
pub fn require<T>(flag: Option<T>, config: Option<T>, name: &str) -> Result<T, Failure> {
    flag.or(config).ok_or_else(|| Failure::Usage(format!("missing --{name} (flag or config key)")))
}
