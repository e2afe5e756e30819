//! Seeded replications of the spatial caching system.
//!
//! A replication draws a station field and a request stream and replays the
//! stream once, feeding each request to every configured policy in lockstep,
//! so all policies see identical stations and traffic. Replication `i` uses
//! seed `base_seed + i`; each purpose (stations, traffic, probes, placement,
//! each policy's coin flips) reads its own ChaCha stream of that seed.

mod config;
mod report;
mod shared_area;

pub use config::{
    CacheConfig, ExperimentConfig, GeometryConfig, RunConfig, SweepSpec, SweepVariable, TemporalParams, TrafficConfig,
    TrafficKind,
};
pub use report::{mean_ci95, ExperimentReport, HitCount, HitReport, ReplicationResult};
pub use shared_area::simulate_shared_area;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{
    build_lattice_stations, coverage_profile_monte_carlo, coverage_profile_ppp_boolean, sample_stations,
    CoverageProfile, StationField, StationKind,
};
use crate::policies::{
    gfi_place, handle_request_into, lfu_fill, pbp_sample, pbp_solve, CacheInventory, HitOutcome, PbpSolution,
    PolicyKind,
};
use crate::traffic::{generate_temporal_stream, Catalogue, IrmRequests, Request};

const STREAM_STATIONS: u64 = 0;
const STREAM_TRAFFIC: u64 = 1;
const STREAM_PROBES: u64 = 2;
const STREAM_PLACEMENT: u64 = 3;
const STREAM_COVERAGE: u64 = 4;
const STREAM_POLICY: u64 = 16;

pub(crate) fn rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Coverage profile of the configured geometry: the Poisson law for PPP
/// stations, a Monte Carlo estimate for the lattice.
pub fn coverage_profile(config: &ExperimentConfig, seed: u64) -> Result<CoverageProfile> {
    let g = &config.geometry;
    match g.kind {
        StationKind::Ppp => coverage_profile_ppp_boolean(g.lambda_b, g.radius, g.max_count),
        StationKind::Lattice => {
            let window = g.window()?;
            let mut rng = rng_stream(seed, STREAM_COVERAGE);
            coverage_profile_monte_carlo(
                |r: &mut ChaCha8Rng| build_lattice_stations(g.lambda_b, g.radius, window, r),
                g.radius,
                g.max_count,
                g.coverage_samples,
                &mut rng,
            )
        }
    }
}

/// Per-experiment inputs shared by all replications.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub cache_size: usize,
    pub catalogue: Option<Catalogue>,
    pub profile: CoverageProfile,
    pub pbp: Option<PbpSolution>,
}

pub fn prepare(config: &ExperimentConfig) -> Result<Prepared> {
    config.validate()?;
    let cache_size = config.cache_size()?;
    let profile = coverage_profile(config, config.run.seed)?;
    let catalogue = match config.traffic.kind {
        TrafficKind::Irm => Some(config.catalogue()?),
        TrafficKind::Temporal => None,
    };
    let pbp = match (&catalogue, config.run.policies.contains(&PolicyKind::Pbp)) {
        (Some(cat), true) => Some(pbp_solve(cat, &profile, cache_size)?),
        _ => None,
    };
    Ok(Prepared {
        cache_size,
        catalogue,
        profile,
        pbp,
    })
}

struct Slot {
    policy: PolicyKind,
    caches: Vec<CacheInventory>,
    rng: ChaCha8Rng,
    count: HitCount,
}

fn initial_caches(
    policy: PolicyKind,
    config: &ExperimentConfig,
    prepared: &Prepared,
    field: &StationField,
    seed: u64,
) -> Result<Vec<CacheInventory>> {
    let k = prepared.cache_size;
    let n = field.len();
    let static_catalogue = || {
        prepared
            .catalogue
            .as_ref()
            .ok_or_else(|| crate::error::invalid("policies", "static policies need IRM traffic"))
    };
    match policy {
        PolicyKind::Lfu => Ok(vec![lfu_fill(static_catalogue()?, k)?; n]),
        PolicyKind::Pbp => {
            let sol = prepared
                .pbp
                .as_ref()
                .ok_or_else(|| crate::error::invalid("policies", "PBP needs a solved placement"))?;
            let mut rng = rng_stream(seed, STREAM_PLACEMENT);
            (0..n).map(|_| pbp_sample(&sol.placement, k, &mut rng)).collect()
        }
        PolicyKind::Gfi => {
            let mut rng = rng_stream(seed, STREAM_PROBES);
            let window = field.window();
            let probes: Vec<_> = (0..config.run.gfi_probes)
                .map(|_| window.sample_inner(&mut rng))
                .collect();
            gfi_place(field, &probes, static_catalogue()?, k)
        }
        _ => {
            let universe = prepared.catalogue.as_ref().map_or(0, Catalogue::len);
            (0..n).map(|_| CacheInventory::with_universe(k, universe)).collect()
        }
    }
}

/// One replication with seed `seed`.
pub fn run_replication(config: &ExperimentConfig, seed: u64) -> Result<ReplicationResult> {
    let prepared = prepare(config)?;
    run_replication_prepared(config, &prepared, seed)
}

/// [`run_replication`] reusing precomputed shared inputs.
pub fn run_replication_prepared(
    config: &ExperimentConfig,
    prepared: &Prepared,
    seed: u64,
) -> Result<ReplicationResult> {
    let g = &config.geometry;
    let window = match config.traffic.kind {
        TrafficKind::Irm => g.window()?,
        // the temporal scenario is a closed set of stations
        TrafficKind::Temporal => g.window()?.with_margin(g.margin.unwrap_or(0.0))?,
    };
    let field = sample_stations(
        g.kind,
        g.lambda_b,
        g.radius,
        window,
        &mut rng_stream(seed, STREAM_STATIONS),
    )?;

    let mut slots = config
        .run
        .policies
        .iter()
        .enumerate()
        .map(|(i, &policy)| {
            Ok(Slot {
                policy,
                caches: initial_caches(policy, config, prepared, &field, seed)?,
                rng: rng_stream(seed, STREAM_POLICY + i as u64),
                count: HitCount::default(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let warm_until = config.traffic.warmup_fraction * config.horizon();
    let mut traffic_rng = rng_stream(seed, STREAM_TRAFFIC);
    let total_requests = match config.traffic.kind {
        TrafficKind::Irm => {
            let catalogue = prepared
                .catalogue
                .as_ref()
                .ok_or_else(|| crate::error::invalid("traffic", "IRM needs a catalogue"))?;
            let requests = IrmRequests::new(
                config.traffic.lambda_u,
                *field.window(),
                config.traffic.duration,
                catalogue,
                &mut traffic_rng,
            )?;
            replay(&field, requests, warm_until, &mut slots)?
        }
        TrafficKind::Temporal => {
            let stream = generate_temporal_stream(&config.temporal_traffic()?, &mut traffic_rng)?;
            replay(&field, stream.requests.into_iter(), warm_until, &mut slots)?
        }
    };
    Ok(ReplicationResult {
        seed,
        stations: field.len(),
        total_requests,
        counts: slots.into_iter().map(|s| (s.policy, s.count)).collect(),
    })
}

fn replay(
    field: &StationField,
    requests: impl Iterator<Item = Request>,
    warm_until: f64,
    slots: &mut [Slot],
) -> Result<u64> {
    let radius = field.coverage_radius();
    let mut near = Vec::new();
    let mut covering = Vec::new();
    let mut outcome = HitOutcome::default();
    let mut total = 0;
    for req in requests {
        total += 1;
        field.within_into(req.location, radius, &mut near);
        covering.clear();
        covering.extend(near.iter().map(|&(_, i)| i));
        let counted = req.time >= warm_until;
        for slot in slots.iter_mut() {
            handle_request_into(
                slot.policy,
                &mut slot.caches,
                &covering,
                req.object,
                &mut slot.rng,
                &mut outcome,
            )?;
            if counted {
                slot.count.record(outcome.hit);
            }
        }
    }
    Ok(total)
}

/// All replications (in parallel), aggregated per policy.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let prepared = prepare(config)?;
    run_experiment_prepared(config, &prepared)
}

pub fn run_experiment_prepared(config: &ExperimentConfig, prepared: &Prepared) -> Result<ExperimentReport> {
    let base = config.run.seed;
    let replications = (0..config.run.replications as u64)
        .into_par_iter()
        .map(|i| run_replication_prepared(config, prepared, base.wrapping_add(i)))
        .collect::<Result<Vec<_>>>()?;
    let reports = config
        .run
        .policies
        .iter()
        .enumerate()
        .map(|(i, &policy)| {
            let counts: Vec<HitCount> = replications.iter().map(|r| r.counts[i].1).collect();
            HitReport::from_counts(policy, &counts)
        })
        .collect();
    Ok(ExperimentReport {
        base_seed: base,
        cache_size: prepared.cache_size,
        mean_coverage: prepared.profile.mean(),
        replications,
        reports,
    })
}

/// One sweep point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    pub report: ExperimentReport,
}

/// Runs the experiment at every value of `variable`. All points use the same
/// base seed, so neighbouring points share random numbers where the varied
/// parameter allows it.
pub fn run_sweep(config: &ExperimentConfig, variable: SweepVariable, values: &[f64]) -> Result<Vec<SweepPoint>> {
    if values.is_empty() {
        return Err(crate::error::invalid("values", "sweep needs at least one value"));
    }
    values
        .iter()
        .map(|&value| {
            let point = variable.apply(config, value)?;
            Ok(SweepPoint {
                value,
                report: run_experiment(&point)?,
            })
        })
        .collect()
}

/// A uniformly drawn index in `0..n` (helper for shared-area runs).
pub(crate) fn pick<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    rng.random_range(0..n)
}
