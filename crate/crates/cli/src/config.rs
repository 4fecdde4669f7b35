//! Optional TOML config file. Keys are the long flag names; flags given on
//! the command line win.

use std::fs;
use std::num::NonZeroUsize;
use std::path::Path;

use serde::Deserialize;

use crate::cli::{ParityArg, SignChoice};
use crate::output::Format;

#[derive(Debug, Clone, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub max_n: Option<u64>,
    pub sign: Option<SignChoice>,
    pub parity: Option<ParityArg>,
    pub format: Option<Format>,
    pub workers: Option<NonZeroUsize>,
    pub include_degenerate: Option<bool>,
    pub bound: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config file {path}: {source}")]
    Parse {
        path: String,
        source: toml::de::Error,
    },
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: shown.clone(),
            source,
        })?;
        Self::parse(&text).map_err(|source| ConfigError::Parse {
            path: shown,
            source,
        })
    }

    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flag_named_keys() {
        let c = FileConfig::parse(
            "max-n = 40\nsign = \"-\"\nparity = \"same\"\nformat = \"csv\"\nworkers = 2\ninclude-degenerate = false\n",
        )
        .unwrap();
        assert_eq!(c.max_n, Some(40));
        assert_eq!(c.sign, Some(SignChoice::Minus));
        assert_eq!(c.parity, Some(ParityArg::Same));
        assert_eq!(c.format, Some(Format::Csv));
        assert_eq!(c.workers, NonZeroUsize::new(2));
        assert_eq!(c.include_degenerate, Some(false));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(FileConfig::parse("max_n = 3\n").is_err());
        assert!(FileConfig::parse("workers = 0\n").is_err());
    }
}
