//! JSON run configuration.
//!
//! ```json
//! {
//!   "scenario": "vertical",
//!   "dt": 0.01,
//!   "params": { "masses": [1.0, 0.75, 3.0] },
//!   "oracle": true,
//!   "plots": false,
//!   "out": "vertical.csv"
//! }
//! ```
//!
//! `scenario` is `"vertical"`, `"rotation"`, or an object
//! `{ "x": m, "y": m, "phi": rad, "duration": s, "law": "raised_cosine" | "hold", "name": str }`.
//! Any `RobotParams` field may be overridden under `params`; base anchors and
//! the platform offset always follow `l0`.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::{base_anchors_for, platform_offset_for, standard_params, RobotParams, SolverTolerances};
use crate::sim::scenario::{Law, Scenario};
use crate::smallmat::{Mat3, Vec3};

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub scenario: Scenario,
    pub params: RobotParams,
    /// Run the Newton–Euler cross-check at every sample.
    pub oracle: bool,
    pub plots: bool,
    pub out: Option<PathBuf>,
    pub plots_dir: Option<PathBuf>,
    /// Evaluations per path in `bench`.
    pub bench_n: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            scenario: Scenario::vertical(),
            params: standard_params(),
            oracle: true,
            plots: false,
            out: None,
            plots_dir: None,
            bench_n: 100_000,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScenarioSpec {
    Named(String),
    Custom(CustomScenario),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomScenario {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    x: f64,
    #[serde(default)]
    y: f64,
    #[serde(default)]
    phi: f64,
    #[serde(default = "default_duration")]
    duration: f64,
    #[serde(default)]
    law: Law,
}

fn default_duration() -> f64 {
    3.0
}

/// Partial `RobotParams`; absent fields keep the standard values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    pub l0: Option<f64>,
    pub alpha: Option<[f64; 3]>,
    pub masses: Option<[f64; 3]>,
    pub com: Option<[Vec3; 3]>,
    pub j2: Option<Mat3>,
    pub j3: Option<Mat3>,
    pub gravity: Option<Vec3>,
    pub platform_force: Option<Vec3>,
    pub platform_moment: Option<f64>,
    pub tolerances: Option<SolverTolerances>,
}

impl ParamOverrides {
    pub fn apply(self, base: &RobotParams) -> Result<RobotParams> {
        let mut p = base.clone();
        if let Some(l0) = self.l0 {
            p.l0 = l0;
            p.base_anchors = base_anchors_for(l0);
            p.platform_offset = platform_offset_for(l0);
            p.com[2] = p.platform_offset;
        }
        if let Some(m) = self.masses {
            p.masses = m;
        }
        // keep the uniform-plate default in step with l0 and m3 unless given
        let e = p.edge_length();
        p.j3 = self.j3.unwrap_or(Mat3::diag(0.0, 0.0, p.masses[2] * e * e / 12.0));
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { p.$f = v; } )* };
        }
        set!(alpha, com, j2, gravity, platform_force, platform_moment, tolerances);
        p.validate()?;
        Ok(p)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    scenario: Option<ScenarioSpec>,
    dt: Option<f64>,
    params: Option<ParamOverrides>,
    oracle: Option<bool>,
    plots: Option<bool>,
    out: Option<PathBuf>,
    plots_dir: Option<PathBuf>,
    bench_n: Option<usize>,
}

pub fn parse_scenario(name: &str) -> Result<Scenario> {
    Scenario::builtin(name).ok_or_else(|| Error::Config(format!("unknown scenario {name:?} (expected \"vertical\" or \"rotation\")")))
}

impl SimConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: ConfigFile = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut cfg = SimConfig::default();
        if let Some(spec) = file.scenario {
            cfg.scenario = match spec {
                ScenarioSpec::Named(n) => parse_scenario(&n)?,
                ScenarioSpec::Custom(c) => Scenario {
                    name: c.name.unwrap_or_else(|| "custom".into()),
                    amplitudes: [c.x, c.y, c.phi],
                    duration: c.duration,
                    sample_dt: cfg.scenario.sample_dt,
                    law: c.law,
                },
            };
        }
        if let Some(dt) = file.dt {
            cfg.scenario.sample_dt = dt;
        }
        if let Some(o) = file.params {
            cfg.params = o.apply(&cfg.params)?;
        }
        cfg.oracle = file.oracle.unwrap_or(cfg.oracle);
        cfg.plots = file.plots.unwrap_or(cfg.plots);
        cfg.out = file.out;
        cfg.plots_dir = file.plots_dir;
        cfg.bench_n = file.bench_n.unwrap_or(cfg.bench_n);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        self.params.validate()
    }
}
