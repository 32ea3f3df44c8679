//! Experiment configuration: a TOML file overridden by command-line flags.
//!
//! ```toml
//! suite = "hall-separability"
//! output = "reports"
//! seed = 1
//!
//! [params]
//! radius = 8
//! samples = 200
//!
//! [budgets]
//! lattice = 2000
//!
//! [inputs]
//! groups = ["s4.grp", "a5.grp"]
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sublab::Budgets;

use crate::{read_file, CliError, CliResult};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Ball radius `r`; each suite has its own default.
    pub radius: Option<usize>,
    /// Depth for regularity and germ probes.
    pub probe_depth: Option<usize>,
    /// Number of random samples for randomized suites.
    pub samples: Option<usize>,
    /// Index bound for hereditary minimality and virtual laws.
    pub index_bound: Option<usize>,
    /// Subgroup generators (word syntax) for file-given towers.
    pub subgroup: Option<Vec<String>>,
}

/// Budget overrides; unset fields keep library defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetOverrides {
    pub order: Option<usize>,
    pub lattice: Option<usize>,
    pub tuples: Option<u64>,
    pub ball: Option<usize>,
    pub degree: Option<usize>,
    pub search_nodes: Option<u64>,
}

impl BudgetOverrides {
    pub fn apply(&self, mut b: Budgets) -> Budgets {
        if let Some(x) = self.order {
            b.order = x;
        }
        if let Some(x) = self.lattice {
            b.lattice = x;
        }
        if let Some(x) = self.tuples {
            b.tuples = x;
        }
        if let Some(x) = self.ball {
            b.ball = x;
        }
        if let Some(x) = self.degree {
            b.degree = x;
        }
        if let Some(x) = self.search_nodes {
            b.search_nodes = x;
        }
        b
    }

    fn validate(&self) -> Result<(), String> {
        let all = [
            self.order.map(|x| x as u64),
            self.lattice.map(|x| x as u64),
            self.tuples,
            self.ball.map(|x| x as u64),
            self.degree.map(|x| x as u64),
            self.search_nodes,
        ];
        if all.iter().flatten().any(|&x| x == 0) {
            return Err("budgets must be positive".into());
        }
        Ok(())
    }
}

/// Input files, relative to the config file's directory.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    /// Group files replacing the bundled corpus.
    pub groups: Option<Vec<PathBuf>>,
    /// Law file for the law suite.
    pub laws: Option<PathBuf>,
    /// Automaton file replacing the Grigorchuk preset.
    pub automaton: Option<PathBuf>,
    /// Tower file for the closure suite.
    pub tower: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub suite: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub jobs: Option<usize>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub budgets: BudgetOverrides,
    #[serde(default)]
    pub inputs: Inputs,
    /// Directory input paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

fn default_seed() -> u64 {
    1
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            suite: String::new(),
            seed: default_seed(),
            output: None,
            jobs: None,
            params: Params::default(),
            budgets: BudgetOverrides::default(),
            inputs: Inputs::default(),
            base_dir: PathBuf::from("."),
        }
    }
}

impl ExperimentConfig {
    pub fn for_suite(suite: &str) -> Self {
        ExperimentConfig {
            suite: suite.to_string(),
            ..Default::default()
        }
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = read_file(path)?;
        let mut cfg: ExperimentConfig = toml::from_str(&text).map_err(|e| CliError::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |message: String| CliError::Config {
            path: self.base_dir.clone(),
            message,
        };
        self.budgets.validate().map_err(bad)?;
        let p = &self.params;
        if [p.radius, p.samples, p.index_bound].contains(&Some(0)) || self.jobs == Some(0) {
            return Err(bad(
                "samples, index bound, radius and jobs must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn budgets(&self) -> Budgets {
        let mut b = self.budgets.apply(Budgets::default());
        if let Some(d) = self.params.probe_depth {
            b.probe_depth = d;
        }
        if let Some(m) = self.params.index_bound {
            b.index_bound = m;
        }
        b
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_sections() {
        let cfg: ExperimentConfig = toml::from_str(
            r#"
            suite = "envelope-law"
            seed = 9
            jobs = 2
            [params]
            index_bound = 6
            probe_depth = 4
            [budgets]
            lattice = 500
            [inputs]
            groups = ["a.grp"]
            "#,
        )
        .unwrap();
        assert_eq!(cfg.suite, "envelope-law");
        assert_eq!(cfg.seed, 9);
        let b = cfg.budgets();
        assert_eq!((b.lattice, b.index_bound, b.probe_depth), (500, 6, 4));
        assert_eq!(b.order, Budgets::default().order);
        assert_eq!(cfg.inputs.groups.unwrap(), vec![PathBuf::from("a.grp")]);
    }

    #[test]
    fn defaults_and_rejections() {
        let cfg: ExperimentConfig = toml::from_str("").unwrap();
        assert_eq!(cfg.seed, 1);
        assert!(toml::from_str::<ExperimentConfig>("[params]\nradiuss = 3").is_err());
        let mut cfg = ExperimentConfig::for_suite("zp-non-usc");
        cfg.validate().unwrap();
        cfg.budgets.tuples = Some(0);
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::for_suite("zp-non-usc");
        cfg.params.radius = Some(0);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn paths_resolve_against_the_config_directory() {
        let cfg = ExperimentConfig {
            base_dir: PathBuf::from("/data/exp"),
            ..Default::default()
        };
        assert_eq!(
            cfg.resolve(Path::new("g.grp")),
            PathBuf::from("/data/exp/g.grp")
        );
        assert_eq!(
            cfg.resolve(Path::new("/abs/g.grp")),
            PathBuf::from("/abs/g.grp")
        );
    }
}
