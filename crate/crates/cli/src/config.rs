use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::Failure;

/// Run parameters. Every count is positive; a fixed seed makes runs reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct Config {
    /// Largest module dimension the representation backend will build.
    pub dimension_cap: usize,
    /// Number of equations checked for `B`; `None` means `2 deg(b) + 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    /// Largest filtration degree accepted by the Kostant decomposition.
    pub degree_cap: u32,
    pub seed: u64,
    pub parallelism: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            dimension_cap: f4wb::repth::DEFAULT_DIMENSION_CAP,
            n_max: None,
            degree_cap: f4wb::repth::DEFAULT_DEGREE_CAP,
            seed: 7,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let cfg: Config = toml::from_str(text).map_err(|e| Failure::Usage(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Failure> {
        let zero = [
            ("dimensionCap", self.dimension_cap == 0),
            ("nMax", self.n_max == Some(0)),
            ("degreeCap", self.degree_cap == 0),
            ("parallelism", self.parallelism == 0),
        ];
        match zero.iter().find(|(_, z)| *z) {
            Some((name, _)) => Err(Failure::Usage(format!("{name} must be positive"))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_files_keep_defaults() {
        let cfg = Config::parse("seed = 3\nnMax = 6\n").unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.n_max, Some(6));
        assert_eq!(cfg.dimension_cap, 512);
        assert_eq!(cfg.degree_cap, 4);
    }

    #[test]
    fn rejects_zero_and_unknown_keys() {
        assert!(matches!(Config::parse("parallelism = 0"), Err(Failure::Usage(_))));
        assert!(matches!(Config::parse("dimension_cap = 3"), Err(Failure::Usage(_))));
    }
}
