use crate::error::{invalid, Result};
use crate::policies::{handle_request_into, CacheInventory, HitOutcome, PolicyKind};
use crate::traffic::Catalogue;

use super::{pick, rng_stream, HitCount, STREAM_POLICY, STREAM_TRAFFIC};

/// `caches` stations that all cover one common area, each the closest
/// station for an equal share of it. With two caches this is the two-cache
/// network; with one it is an isolated LRU cache.
///
/// Only request order matters under IRM, so requests are a plain sequence;
/// the first `warmup` are served but not counted.
pub fn simulate_shared_area(
    policy: PolicyKind,
    caches: usize,
    catalogue: &Catalogue,
    k: usize,
    requests: u64,
    warmup: u64,
    seed: u64,
) -> Result<HitCount> {
    if caches == 0 {
        return Err(invalid("caches", "need at least one cache"));
    }
    policy.validate()?;
    let mut inventories = (0..caches)
        .map(|_| CacheInventory::with_universe(k, catalogue.len()))
        .collect::<Result<Vec<_>>>()?;
    let sampler = catalogue.sampler();
    let mut traffic = rng_stream(seed, STREAM_TRAFFIC);
    let mut coins = rng_stream(seed, STREAM_POLICY);
    let mut covering: Vec<usize> = Vec::with_capacity(caches);
    let mut outcome = HitOutcome::default();
    let mut count = HitCount::default();
    for n in 0..requests {
        let object = sampler.sample(&mut traffic);
        let nearest = pick(&mut traffic, caches);
        covering.clear();
        covering.push(nearest);
        covering.extend((0..caches).filter(|&s| s != nearest));
        handle_request_into(policy, &mut inventories, &covering, object, &mut coins, &mut outcome)?;
        if n >= warmup {
            count.record(outcome.hit);
        }
    }
    Ok(count)
}
