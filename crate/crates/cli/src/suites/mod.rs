//! Named experiment suites.

mod closure;
mod germ;
mod grigorchuk;
mod hall;
mod laws;
mod neumann;
mod subgroups;
mod zp;

use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::{json, Value};
use sublab::formats;
use sublab::laws::Law;
use sublab::permgrp::library;
use sublab::towers::Tower;
use sublab::treelab::AutomatonGroup;
use sublab::{Budgets, PermGroup};

use crate::config::ExperimentConfig;
use crate::report::{Check, SuiteReport, Table};
use crate::{read_file, CliError, CliResult};

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    run: fn(&Context, &mut Recorder) -> sublab::Result<()>,
}

static SUITES: &[Suite] = &[
    Suite {
        name: "zp-non-usc",
        description: "Z[1/2]: closures of 2^n Z stay dense while 2^n Z tends to {0}",
        run: zp::run,
    },
    Suite {
        name: "hall-separability",
        description:
            "random f.g. subgroups of F_2 are closed: separating covers recover H on a ball",
        run: hall::run,
    },
    Suite {
        name: "grigorchuk-tower",
        description: "level quotients of the Grigorchuk group: 2-groups, transitive, compatible",
        run: grigorchuk::run,
    },
    Suite {
        name: "law-derived-equivalence",
        description: "w_l holds in a finite group exactly when its derived length is at most l",
        run: laws::run,
    },
    Suite {
        name: "sigma-partition",
        description: "the blocks H_Sigma partition every conjugacy class of subgroups",
        run: subgroups::sigma,
    },
    Suite {
        name: "n-constancy",
        description: "the number of conjugates of L containing H is constant on a class",
        run: subgroups::n_constancy,
    },
    Suite {
        name: "envelope-law",
        description: "laws of members pass to the envelope of hereditarily minimal classes",
        run: subgroups::envelope_law,
    },
    Suite {
        name: "neumann-example",
        description:
            "Alt(5) x Alt(7) acting on cosets of an abelian subgroup: non-abelian envelope",
        run: neumann::run,
    },
    Suite {
        name: "closure-idempotence",
        description: "closures are idempotent and shrink as tower maps are added",
        run: closure::run,
    },
    Suite {
        name: "germ-closure-probe",
        description: "Grigorchuk: prefix stabilizers lie in the level closure of germ stabilizers",
        run: germ::run,
    },
];

pub fn all() -> &'static [Suite] {
    SUITES
}

pub fn find(name: &str) -> CliResult<&'static Suite> {
    SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| CliError::UnknownSuite {
            name: name.to_string(),
            available: SUITES.iter().map(|s| s.name).collect::<Vec<_>>().join(", "),
        })
}

/// Loaded inputs and resolved parameters shared by all suites.
pub struct Context {
    pub config: ExperimentConfig,
    pub budgets: Budgets,
    /// Named groups: the bundled corpus unless group files are given.
    pub groups: Vec<(String, PermGroup)>,
    pub laws: Option<Vec<Law>>,
    pub automaton: Arc<AutomatonGroup>,
    pub tower: Option<Tower>,
}

impl Context {
    pub fn load(config: &ExperimentConfig) -> CliResult<Self> {
        config.validate()?;
        let input = |path: &Path| {
            let path = config.resolve(path);
            move |source| CliError::Input { path, source }
        };
        let groups = match &config.inputs.groups {
            None => library::corpus()
                .into_iter()
                .map(|(n, g)| (n.to_string(), g))
                .collect(),
            Some(files) => files
                .iter()
                .map(|f| {
                    let text = read_file(&config.resolve(f))?;
                    let g = formats::parse_group(&text).map_err(input(f))?;
                    let name = g.name.unwrap_or_else(|| f.display().to_string());
                    Ok((name, g.group))
                })
                .collect::<CliResult<_>>()?,
        };
        let laws = match &config.inputs.laws {
            None => None,
            Some(f) => {
                Some(formats::parse_laws(&read_file(&config.resolve(f))?).map_err(input(f))?)
            }
        };
        let automaton = match &config.inputs.automaton {
            None => Arc::new(AutomatonGroup::grigorchuk()),
            Some(f) => Arc::new(
                formats::parse_automaton(&read_file(&config.resolve(f))?).map_err(input(f))?,
            ),
        };
        let tower = match &config.inputs.tower {
            None => None,
            Some(f) => {
                // Files named inside a tower file are relative to it.
                let dir = config
                    .resolve(f)
                    .parent()
                    .map(Path::to_path_buf)
                    .unwrap_or_default();
                let mut load = |name: &str| -> sublab::Result<String> {
                    std::fs::read_to_string(dir.join(name))
                        .map_err(|e| sublab::Error::invalid(format!("{name}: {e}")))
                };
                let text = read_file(&config.resolve(f))?;
                Some(formats::parse_tower(&text, &mut load).map_err(input(f))?)
            }
        };
        Ok(Context {
            config: config.clone(),
            budgets: config.budgets(),
            groups,
            laws,
            automaton,
            tower,
        })
    }

    pub fn seed(&self) -> u64 {
        self.config.seed
    }

    pub fn radius(&self, default: usize) -> usize {
        self.config.params.radius.unwrap_or(default)
    }

    pub fn samples(&self, default: usize) -> usize {
        self.config.params.samples.unwrap_or(default)
    }

    pub fn probe_depth(&self, default: usize) -> usize {
        self.config.params.probe_depth.unwrap_or(default)
    }

    pub fn index_bound(&self, default: usize) -> usize {
        self.config.params.index_bound.unwrap_or(default)
    }
}

/// Collects checks and the summary table while a suite runs.
pub struct Recorder {
    checks: Vec<Check>,
    table: Table,
    parameters: serde_json::Map<String, Value>,
    last: Instant,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            checks: Vec::new(),
            table: Table::default(),
            parameters: serde_json::Map::new(),
            last: Instant::now(),
        }
    }

    /// Records a check; its time runs from the previous check.
    pub fn check(&mut self, name: &str, passed: bool, detail: Value) {
        let now = Instant::now();
        let elapsed: Duration = now - self.last;
        self.last = now;
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
            elapsed,
        });
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn table(&mut self, table: Table) {
        self.table = table;
    }
}

pub fn execute(suite: &Suite, ctx: &Context) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let run = || -> sublab::Result<Recorder> {
        let mut rec = Recorder::new();
        (suite.run)(ctx, &mut rec)?;
        Ok(rec)
    };
    let rec = match ctx.config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Output(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let mut parameters = rec.parameters;
    parameters.insert("budgets".into(), budgets_json(&ctx.budgets));
    Ok(SuiteReport {
        suite: suite.name.to_string(),
        seed: ctx.seed(),
        parameters: Value::Object(parameters),
        checks: rec.checks,
        table: rec.table,
        elapsed: start.elapsed(),
    })
}

fn budgets_json(b: &Budgets) -> Value {
    json!({
        "order": b.order,
        "lattice": b.lattice,
        "tuples": b.tuples,
        "ball": b.ball,
        "degree": b.degree,
        "probe_depth": b.probe_depth,
        "index_bound": b.index_bound,
        "search_nodes": b.search_nodes,
    })
}

/// A seeded generator for a suite; each use site passes its own stream.
pub fn rng(seed: u64, stream: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}
