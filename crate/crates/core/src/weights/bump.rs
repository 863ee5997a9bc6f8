use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Monotone profile `g` in the log coordinate `s = log(-p) - log(q)`, with
/// `φ(x) = g(log(-x))`. The density `g'` is a polynomial kernel supported on
/// `[-1, 1]` with unit mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BumpFunction {
    /// `(15/16)(1 - s²)²`
    #[default]
    QuarticKernel,
    /// `(3/4)(1 - s²)`
    Epanechnikov,
}

impl BumpFunction {
    pub const ALL: [BumpFunction; 2] = [BumpFunction::QuarticKernel, BumpFunction::Epanechnikov];

    pub fn id(self) -> &'static str {
        match self {
            BumpFunction::QuarticKernel => "quartic-kernel",
            BumpFunction::Epanechnikov => "epanechnikov",
        }
    }

    pub fn density(self, s: f64) -> f64 {
        if !(-1.0..=1.0).contains(&s) {
            return 0.0;
        }
        let u = 1.0 - s * s;
        match self {
            BumpFunction::QuarticKernel => 15.0 / 16.0 * u * u,
            BumpFunction::Epanechnikov => 0.75 * u,
        }
    }

    /// `g(s) = ∫_{-∞}^s g'`.
    pub fn cdf(self, s: f64) -> f64 {
        if s <= -1.0 {
            return 0.0;
        }
        if s >= 1.0 {
            return 1.0;
        }
        match self {
            BumpFunction::QuarticKernel => 0.5 + 15.0 / 16.0 * (s - 2.0 * s.powi(3) / 3.0 + s.powi(5) / 5.0),
            BumpFunction::Epanechnikov => 0.5 + 0.75 * (s - s.powi(3) / 3.0),
        }
    }

    /// `φ(x)` for `x < 0`.
    pub fn phi(self, x: f64) -> f64 {
        assert!(x < 0.0, "φ is defined on x < 0");
        self.cdf((-x).ln())
    }

    /// Draws from `g'`: the kernels are `Beta(3,3)` and `Beta(2,2)` mapped to `[-1, 1]`.
    pub(crate) fn sampler(self) -> Beta<f64> {
        let a = match self {
            BumpFunction::QuarticKernel => 3.0,
            BumpFunction::Epanechnikov => 2.0,
        };
        Beta::new(a, a).expect("valid shape")
    }

    pub(crate) fn sample<R: Rng + ?Sized>(sampler: &Beta<f64>, rng: &mut R) -> f64 {
        2.0 * sampler.sample(rng) - 1.0
    }
}

impl fmt::Display for BumpFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BumpFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "quartic-kernel" | "quartic" => Ok(BumpFunction::QuarticKernel),
            "epanechnikov" => Ok(BumpFunction::Epanechnikov),
            _ => Err(Error::Parse(format!("unknown bump function {s:?}"))),
        }
    }
}
