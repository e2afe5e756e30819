use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, invalid, Error, Result};
use crate::geometry::{StationKind, Window};
use crate::policies::PolicyKind;
use crate::traffic::{Catalogue, TemporalTrafficConfig};

/// Station layout. `margin` defaults to the coverage radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    pub kind: StationKind,
    pub lambda_b: f64,
    pub radius: f64,
    pub width: f64,
    pub height: f64,
    pub margin: Option<f64>,
    /// Largest coverage count kept in profiles.
    pub max_count: usize,
    /// Probe count for Monte Carlo coverage profiles (lattice).
    pub coverage_samples: usize,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            kind: StationKind::Ppp,
            lambda_b: 0.5,
            radius: 1.13,
            width: 12.0,
            height: 12.0,
            margin: None,
            max_count: 50,
            coverage_samples: 100_000,
        }
    }
}

impl GeometryConfig {
    pub fn window(&self) -> Result<Window> {
        Window::new(self.width, self.height, self.margin.unwrap_or(self.radius))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrafficKind {
    Irm,
    Temporal,
}

/// Parameters of the birth/lifespan traffic model; rates per day, times in
/// days.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TemporalParams {
    pub object_rate: f64,
    pub mean_lifespan: f64,
    pub request_rate: f64,
    pub duration: f64,
}

impl Default for TemporalParams {
    fn default() -> Self {
        TemporalParams {
            object_rate: 240.0,
            mean_lifespan: 100.0,
            request_rate: 4000.0,
            duration: 180.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrafficConfig {
    pub kind: TrafficKind,
    /// IRM request intensity per km² per second.
    pub lambda_u: f64,
    /// IRM horizon in seconds.
    pub duration: f64,
    pub catalogue_size: usize,
    pub zipf_exponent: f64,
    /// Leading fraction of the horizon served but not counted.
    pub warmup_fraction: f64,
    pub temporal: TemporalParams,
}

impl Default for TrafficConfig {
    fn default() -> Self {
        TrafficConfig {
            kind: TrafficKind::Irm,
            lambda_u: 0.023,
            // about 10^6 requests on a 12 x 12 km window
            duration: 302_000.0,
            catalogue_size: 10_000,
            zipf_exponent: 0.78,
            warmup_fraction: 0.0,
            temporal: TemporalParams::default(),
        }
    }
}

/// Cache size, either absolute (`k`) or as a fraction of the catalogue
/// (`alpha`). `k` wins when both are given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CacheConfig {
    pub k: Option<usize>,
    pub alpha: Option<f64>,
}

impl Default for CacheConfig {
    fn default() -> Self {
        CacheConfig {
            k: None,
            alpha: Some(0.01),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub policies: Vec<PolicyKind>,
    pub replications: usize,
    pub seed: u64,
    /// Probe points for greedy placement.
    pub gfi_probes: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            policies: vec![
                PolicyKind::SingleLru,
                PolicyKind::MultiLruOne,
                PolicyKind::MultiLruAll,
                PolicyKind::Lfu,
                PolicyKind::Pbp,
                PolicyKind::Gfi,
            ],
            replications: 20,
            seed: 1,
            gfi_probes: 100_000,
        }
    }
}

/// Everything needed to reproduce a simulation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub geometry: GeometryConfig,
    pub traffic: TrafficConfig,
    pub cache: CacheConfig,
    pub run: RunConfig,
    /// Optional sweep, read by the command-line front end.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.geometry;
        ensure_positive("lambda_b", g.lambda_b)?;
        ensure_positive("radius", g.radius)?;
        g.window()?;
        if g.max_count == 0 {
            return Err(invalid("max_count", "must be >= 1"));
        }
        if g.kind == StationKind::Lattice && g.coverage_samples == 0 {
            return Err(invalid("coverage_samples", "must be >= 1"));
        }
        let t = &self.traffic;
        if !(0.0..1.0).contains(&t.warmup_fraction) {
            return Err(invalid("warmup_fraction", "must lie in [0, 1)"));
        }
        match t.kind {
            TrafficKind::Irm => {
                ensure_positive("lambda_u", t.lambda_u)?;
                ensure_positive("duration", t.duration)?;
                if t.catalogue_size == 0 {
                    return Err(invalid("catalogue_size", "must be >= 1"));
                }
                if !(t.zipf_exponent.is_finite() && t.zipf_exponent >= 0.0) {
                    return Err(invalid("zipf_exponent", "must be finite and >= 0"));
                }
            }
            TrafficKind::Temporal => {
                self.temporal_traffic()?.validate()?;
                if self.cache.k.is_none() {
                    return Err(invalid("k", "temporal traffic has no fixed catalogue; give `k`"));
                }
                if let Some(p) = self.run.policies.iter().find(|p| p.is_static()) {
                    return Err(invalid(
                        "policies",
                        format!("static policy `{p}` needs a fixed catalogue (IRM traffic)"),
                    ));
                }
            }
        }
        self.cache_size()?;
        if self.run.policies.is_empty() {
            return Err(invalid("policies", "at least one policy is required"));
        }
        for p in &self.run.policies {
            p.validate()?;
        }
        if self.run.replications == 0 {
            return Err(invalid("replications", "must be >= 1"));
        }
        if self.run.policies.contains(&PolicyKind::Gfi) && self.run.gfi_probes == 0 {
            return Err(invalid("gfi_probes", "must be >= 1"));
        }
        Ok(())
    }

    /// Cache capacity `K`.
    pub fn cache_size(&self) -> Result<usize> {
        let f = self.traffic.catalogue_size;
        let fixed_catalogue = self.traffic.kind == TrafficKind::Irm;
        let k = match (self.cache.k, self.cache.alpha) {
            (Some(k), _) => k,
            (None, Some(alpha)) => {
                if !(alpha > 0.0 && alpha <= 1.0) {
                    return Err(invalid("alpha", format!("must lie in (0, 1], got {alpha}")));
                }
                (alpha * f as f64).round() as usize
            }
            (None, None) => return Err(invalid("k", "give either `k` or `alpha`")),
        };
        if k == 0 {
            return Err(invalid("k", "cache capacity must be at least 1"));
        }
        if fixed_catalogue && k > f {
            return Err(invalid("k", format!("K = {k} exceeds the catalogue size {f}")));
        }
        Ok(k)
    }

    pub fn catalogue(&self) -> Result<Catalogue> {
        Catalogue::zipf(self.traffic.catalogue_size, self.traffic.zipf_exponent)
    }

    pub fn temporal_traffic(&self) -> Result<TemporalTrafficConfig> {
        let p = &self.traffic.temporal;
        Ok(TemporalTrafficConfig {
            object_rate: p.object_rate,
            mean_lifespan: p.mean_lifespan,
            request_rate: p.request_rate,
            duration: p.duration,
            window: Window::new(self.geometry.width, self.geometry.height, 0.0)?,
        })
    }

    /// Horizon in the traffic model's own time unit.
    pub fn horizon(&self) -> f64 {
        match self.traffic.kind {
            TrafficKind::Irm => self.traffic.duration,
            TrafficKind::Temporal => self.traffic.temporal.duration,
        }
    }
}

/// Parameter varied by a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepVariable {
    Radius,
    Gamma,
    Alpha,
    Q,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::Radius => "radius",
            SweepVariable::Gamma => "gamma",
            SweepVariable::Alpha => "alpha",
            SweepVariable::Q => "q",
        })
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "radius" | "rb" => Ok(SweepVariable::Radius),
            "gamma" => Ok(SweepVariable::Gamma),
            "alpha" => Ok(SweepVariable::Alpha),
            "q" => Ok(SweepVariable::Q),
            other => Err(invalid(
                "sweep",
                format!("expected radius, gamma, alpha or q, got `{other}`"),
            )),
        }
    }
}

impl SweepVariable {
    /// Copy of `config` with this variable set to `value`.
    pub fn apply(self, config: &ExperimentConfig, value: f64) -> Result<ExperimentConfig> {
        let mut c = config.clone();
        match self {
            SweepVariable::Radius => c.geometry.radius = value,
            SweepVariable::Gamma => c.traffic.zipf_exponent = value,
            SweepVariable::Alpha => {
                c.cache.k = None;
                c.cache.alpha = Some(value);
            }
            SweepVariable::Q => {
                for p in &mut c.run.policies {
                    *p = match *p {
                        PolicyKind::QLru(_) => PolicyKind::QLru(value),
                        PolicyKind::QMultiLruAll(_) => PolicyKind::QMultiLruAll(value),
                        other => other,
                    };
                }
            }
        }
        c.sweep = None;
        c.validate()?;
        Ok(c)
    }
}
