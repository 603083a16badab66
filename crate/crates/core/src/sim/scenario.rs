use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::PlatformState;

/// Angular rate of the raised-cosine law, rad/s.
pub const TRAJECTORY_RATE: f64 = PI / 3.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    /// `q(t) = q*·(1 - cos(πt/3))`: starts and ends at rest over 3 s.
    #[default]
    RaisedCosine,
    /// `q(t) = q*` with zero rates.
    Hold,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    /// `(x*, y*, φ*)` in m, m, rad.
    pub amplitudes: [f64; 3],
    pub duration: f64,
    pub sample_dt: f64,
    pub law: Law,
}

impl Scenario {
    /// Platform centre rises along `y` without rotation.
    pub fn vertical() -> Self {
        Self { name: "vertical".into(), amplitudes: [0.0, 0.025, 0.0], duration: 3.0, sample_dt: 0.01, law: Law::RaisedCosine }
    }

    /// Platform turns about the base normal with its centre held at the origin.
    pub fn rotation() -> Self {
        Self { name: "rotation".into(), amplitudes: [0.0, 0.0, PI / 12.0], duration: 3.0, sample_dt: 0.01, law: Law::RaisedCosine }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "vertical" => Some(Self::vertical()),
            "rotation" => Some(Self::rotation()),
            _ => None,
        }
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.sample_dt = dt;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(Error::Config(format!("scenario duration must be positive, got {}", self.duration)));
        }
        if !(self.sample_dt > 0.0 && self.sample_dt.is_finite()) {
            return Err(Error::Config(format!("sample dt must be positive, got {}", self.sample_dt)));
        }
        if !self.amplitudes.iter().all(|a| a.is_finite()) {
            return Err(Error::Config("scenario amplitudes must be finite".into()));
        }
        Ok(())
    }

    /// Sample instants `0, dt, 2dt, ...` up to and including `duration`
    /// (within a millionth of a step).
    pub fn sample_times(&self) -> Vec<f64> {
        let steps = (self.duration / self.sample_dt + 1e-6).floor() as usize;
        (0..=steps).map(|i| (i as f64 * self.sample_dt).min(self.duration)).collect()
    }

    pub fn eval(&self, t: f64) -> PlatformState {
        scenario_eval(self, t)
    }
}

/// Platform state of the scenario at time `t`.
pub fn scenario_eval(s: &Scenario, t: f64) -> PlatformState {
    let [ax, ay, ap] = s.amplitudes;
    let (f, fd, fdd) = match s.law {
        Law::RaisedCosine => {
            let w = TRAJECTORY_RATE;
            let (sn, cs) = (w * t).sin_cos();
            (1.0 - cs, w * sn, w * w * cs)
        }
        Law::Hold => (1.0, 0.0, 0.0),
    };
    PlatformState {
        x: ax * f,
        y: ay * f,
        phi: ap * f,
        xd: ax * fd,
        yd: ay * fd,
        phid: ap * fd,
        xdd: ax * fdd,
        ydd: ay * fdd,
        phidd: ap * fdd,
    }
}
