//! TOML configuration for aligner parameters and fixture specs.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;

use patcorpus::align::{Bead, DictParams, MtParams};
use patcorpus::fixtures::FixtureSpec;

/// Aligner parameters read from `--config`. Every key is optional; unset
/// keys keep the built-in defaults. Unknown keys are rejected so typos
/// fail loudly instead of silently running with defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlignConfig {
    /// Bead shapes as `"ja-en"` strings, e.g. `["1-1", "1-2", "2-1"]`.
    pub beads: Option<Vec<Bead>>,
    pub skip_penalty: Option<f64>,
    pub merge_penalty: Option<f64>,
    pub anchor_threshold: Option<f64>,
    pub max_gap_merge: Option<usize>,
    pub bleu_order: Option<usize>,
}

impl AlignConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid config file {}", path.display()))
    }

    pub fn dict_params(&self) -> patcorpus::Result<DictParams> {
        let mut params = DictParams::default();
        if let Some(beads) = &self.beads {
            params.beads = beads.clone();
        }
        if let Some(v) = self.skip_penalty {
            params.skip_penalty = v;
        }
        if let Some(v) = self.merge_penalty {
            params.merge_penalty = v;
        }
        params.validate()?;
        Ok(params)
    }

    pub fn mt_params(&self) -> patcorpus::Result<MtParams> {
        let mut params = MtParams::default();
        if let Some(v) = self.anchor_threshold {
            params.anchor_threshold = v;
        }
        if let Some(v) = self.max_gap_merge {
            params.max_gap_merge = v;
        }
        if let Some(v) = self.bleu_order {
            params.bleu_order = v;
        }
        params.validate()?;
        Ok(params)
    }
}

/// Fixture spec from `--config`, or the default spec without one. A
/// `--seed` on the command line overrides the file.
pub fn load_fixture_spec(path: Option<&Path>, seed: Option<u64>) -> Result<FixtureSpec> {
    let mut spec = match path {
        None => FixtureSpec::default(),
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            toml::from_str(&text)
                .with_context(|| format!("invalid config file {}", path.display()))?
        }
    };
    if let Some(seed) = seed {
        spec.seed = seed;
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_config(text: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        file
    }

    #[test]
    fn missing_path_yields_defaults() {
        let cfg = AlignConfig::load(None).unwrap();
        let dict = cfg.dict_params().unwrap();
        assert_eq!(dict.skip_penalty, DictParams::default().skip_penalty);
        let mt = cfg.mt_params().unwrap();
        assert_eq!(mt.max_gap_merge, MtParams::default().max_gap_merge);
    }

    #[test]
    fn partial_config_overrides_only_named_keys() {
        let file = write_config("anchor_threshold = 0.3\nskip_penalty = 0.2\n");
        let cfg = AlignConfig::load(Some(file.path())).unwrap();
        let dict = cfg.dict_params().unwrap();
        assert_eq!(dict.skip_penalty, 0.2);
        assert_eq!(dict.merge_penalty, DictParams::default().merge_penalty);
        let mt = cfg.mt_params().unwrap();
        assert_eq!(mt.anchor_threshold, 0.3);
        assert_eq!(mt.bleu_order, MtParams::default().bleu_order);
    }

    #[test]
    fn beads_parse_from_strings() {
        let file = write_config("beads = [\"1-1\", \"2-1\"]\n");
        let cfg = AlignConfig::load(Some(file.path())).unwrap();
        let dict = cfg.dict_params().unwrap();
        assert_eq!(dict.beads, vec![Bead::new(1, 1), Bead::new(2, 1)]);
    }

    #[test]
    fn unknown_keys_and_bad_values_are_rejected() {
        let file = write_config("skip_penlaty = 0.2\n");
        assert!(AlignConfig::load(Some(file.path())).is_err());
        let file = write_config("beads = [\"1-x\"]\n");
        assert!(AlignConfig::load(Some(file.path())).is_err());
        let file = write_config("beads = [\"3-3\"]\n");
        let cfg = AlignConfig::load(Some(file.path())).unwrap();
        assert!(cfg.dict_params().is_err());
        let file = write_config("max_gap_merge = 7\n");
        let cfg = AlignConfig::load(Some(file.path())).unwrap();
        assert!(cfg.mt_params().is_err());
    }

    #[test]
    fn fixture_seed_flag_wins_over_file() {
        let file = write_config("seed = 5\nn_decoys = 3\n");
        let spec = load_fixture_spec(Some(file.path()), Some(9)).unwrap();
        assert_eq!(spec.seed, 9);
        assert_eq!(spec.n_decoys, 3);
        let spec = load_fixture_spec(Some(file.path()), None).unwrap();
        assert_eq!(spec.seed, 5);
    }
}
