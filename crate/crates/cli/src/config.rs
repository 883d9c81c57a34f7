//! Pipeline settings read from a TOML file. Command-line flags win over the
//! file, and the file wins over built-in defaults.

use std::path::{Path, PathBuf};

use amrkit::postprocess::WIKI_THRESHOLD;
use amrkit::smatch::DEFAULT_RESTARTS;
use anyhow::{bail, Context, Result};
use serde::Deserialize;

pub const CONFIG_ENV: &str = "AMRKIT_CONFIG";
pub const DEFAULT_CAP: usize = 1000;
pub const DEFAULT_EDGES: [usize; 6] = [10, 20, 30, 40, 50, 60];

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Paths {
    pub corpus: Option<PathBuf>,
    pub alignments: Option<PathBuf>,
    pub pos: Option<PathBuf>,
    pub wiki_table: Option<PathBuf>,
    #[serde(default)]
    pub runs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub threshold: f64,
    pub restarts: usize,
    pub seed: Option<u64>,
    pub cap: usize,
    pub bucket_edges: Vec<usize>,
    pub paths: Paths,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            threshold: WIKI_THRESHOLD,
            restarts: DEFAULT_RESTARTS,
            seed: None,
            cap: DEFAULT_CAP,
            bucket_edges: DEFAULT_EDGES.to_vec(),
            paths: Paths::default(),
        }
    }
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: PipelineConfig =
            toml::from_str(&text).with_context(|| format!("in config {}", path.display()))?;
        config
            .check()
            .with_context(|| format!("in config {}", path.display()))?;
        Ok(config)
    }

    pub fn check(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.threshold) {
            bail!("threshold {} is outside [0, 1]", self.threshold);
        }
        if self.cap < 1 {
            bail!("cap must be at least 1");
        }
        if self.restarts < 1 {
            bail!("restarts must be at least 1");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c: PipelineConfig = toml::from_str("").unwrap();
        assert_eq!(c, PipelineConfig::default());
        assert_eq!(c.threshold, 0.5);
        assert_eq!(c.restarts, 4);
        assert_eq!(c.cap, 1000);
    }

    #[test]
    fn reads_paths_and_values() {
        let c: PipelineConfig = toml::from_str(
            "seed = 7\nthreshold = 0.6\nbucket_edges = [5]\n[paths]\ncorpus = \"c.amr\"\nruns = [\"a=a.amr\"]\n",
        )
        .unwrap();
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.bucket_edges, vec![5]);
        assert_eq!(c.paths.corpus.as_deref(), Some(Path::new("c.amr")));
        assert_eq!(c.paths.runs, vec!["a=a.amr".to_string()]);
    }

    #[test]
    fn rejects_bad_values() {
        let c = PipelineConfig {
            threshold: 1.5,
            ..Default::default()
        };
        assert!(c.check().is_err());
        let c = PipelineConfig {
            cap: 0,
            ..Default::default()
        };
        assert!(c.check().is_err());
        assert!(toml::from_str::<PipelineConfig>("unknown = 1").is_err());
    }
}
