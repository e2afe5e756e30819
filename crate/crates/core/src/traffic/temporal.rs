use rand::Rng;
use rand_distr::{Distribution, Exp, Poisson};
use serde::{Deserialize, Serialize};

use super::{ObjectId, Request, RequestStream};
use crate::error::{ensure_positive, invalid, Result};
use crate::geometry::Window;

/// Catalogue with births and finite lifespans. Rates are per day, times in
/// days.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemporalTrafficConfig {
    /// New objects per day.
    pub object_rate: f64,
    /// Mean object lifespan in days.
    pub mean_lifespan: f64,
    /// Total requests per day over the whole window.
    pub request_rate: f64,
    /// Horizon in days.
    pub duration: f64,
    pub window: Window,
}

impl TemporalTrafficConfig {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("object_rate", self.object_rate)?;
        ensure_positive("mean_lifespan", self.mean_lifespan)?;
        ensure_positive("request_rate", self.request_rate)?;
        ensure_positive("duration", self.duration)?;
        Ok(())
    }

    /// Mean number of requests per object, `λ_u / λ_obj`.
    pub fn mean_popularity(&self) -> f64 {
        self.request_rate / self.object_rate
    }
}

/// Birth instant and active interval of one object.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObjectLifetime {
    pub birth: f64,
    pub lifespan: f64,
}

impl ObjectLifetime {
    /// End of the interval over which requests are spread (clipped to the
    /// horizon).
    pub fn end(&self, horizon: f64) -> f64 {
        (self.birth + self.lifespan).min(horizon)
    }
}

#[derive(Clone, Debug)]
pub struct TemporalTraffic {
    pub stream: RequestStream,
    /// Indexed by object id.
    pub lifetimes: Vec<ObjectLifetime>,
}

/// Shot-noise traffic: Poisson births at `object_rate`, exponential
/// lifespans, and a Poisson(`P̄`) number of requests per object spread
/// uniformly over its (horizon-clipped) lifespan. Object ids follow birth
/// order.
pub fn generate_temporal_traffic<R: Rng + ?Sized>(
    config: &TemporalTrafficConfig,
    rng: &mut R,
) -> Result<TemporalTraffic> {
    config.validate()?;
    let horizon = config.duration;
    let births = Poisson::new(config.object_rate * horizon)
        .map_err(|e| invalid("object_rate", e.to_string()))?
        .sample(rng) as usize;
    if births > u32::MAX as usize {
        return Err(invalid("object_rate", "too many objects"));
    }
    let mut birth_times: Vec<f64> = (0..births).map(|_| rng.random::<f64>() * horizon).collect();
    birth_times.sort_by(f64::total_cmp);

    let lifespan = Exp::new(1.0 / config.mean_lifespan).map_err(|e| invalid("mean_lifespan", e.to_string()))?;
    let per_object = Poisson::new(config.mean_popularity()).map_err(|e| invalid("request_rate", e.to_string()))?;

    let mut lifetimes = Vec::with_capacity(births);
    let mut requests = Vec::with_capacity((config.request_rate * horizon * 1.05) as usize);
    for (id, &birth) in birth_times.iter().enumerate() {
        let life = ObjectLifetime {
            birth,
            lifespan: lifespan.sample(rng),
        };
        let end = life.end(horizon);
        let n = per_object.sample(rng) as usize;
        for _ in 0..n {
            requests.push(Request {
                time: birth + rng.random::<f64>() * (end - birth),
                location: config.window.sample_inner(rng),
                object: ObjectId(id as u32),
            });
        }
        lifetimes.push(life);
    }
    // stable: equal instants keep generation order
    requests.sort_by(|a, b| a.time.total_cmp(&b.time));
    Ok(TemporalTraffic {
        stream: RequestStream {
            requests,
            intensity: config.request_rate / config.window.area(),
            duration: horizon,
        },
        lifetimes,
    })
}

pub fn generate_temporal_stream<R: Rng + ?Sized>(config: &TemporalTrafficConfig, rng: &mut R) -> Result<RequestStream> {
    generate_temporal_traffic(config, rng).map(|t| t.stream)
}
