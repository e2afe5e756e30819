//! Cache inventories and the cache-management policies: the dynamic LRU
//! family acting on request outcomes, and the static placements (LFU, PBP,
//! GFI) fixed before traffic starts.

mod gfi;
mod inventory;
mod pbp;

pub use gfi::{gfi_place, placement_objective};
pub use inventory::{CacheInventory, Iter};
pub use pbp::{pbp_sample, pbp_solve, PbpSolution};

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::geometry::CoverageProfile;
use crate::traffic::{Catalogue, ObjectId};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PolicyKind {
    /// LRU at the closest covering station only.
    SingleLru,
    /// Single-station LRU inserting a missed object with probability `q`.
    QLru(f64),
    /// Top-K objects in every cache.
    Lfu,
    /// One replica per miss, at the closest covering station.
    MultiLruOne,
    /// A replica in every covering cache on a miss.
    MultiLruAll,
    /// As [`PolicyKind::MultiLruAll`] but each insertion happens with
    /// probability `q`.
    QMultiLruAll(f64),
    Pbp,
    Gfi,
}

impl PolicyKind {
    /// Inventories are fixed before the run and never mutated.
    pub fn is_static(self) -> bool {
        matches!(self, PolicyKind::Lfu | PolicyKind::Pbp | PolicyKind::Gfi)
    }

    pub fn q(self) -> Option<f64> {
        match self {
            PolicyKind::QLru(q) | PolicyKind::QMultiLruAll(q) => Some(q),
            _ => None,
        }
    }

    pub fn validate(self) -> Result<()> {
        match self.q() {
            Some(q) if !(q > 0.0 && q <= 1.0) => Err(invalid("q", format!("must lie in (0, 1], got {q}"))),
            _ => Ok(()),
        }
    }

    fn base_name(self) -> &'static str {
        match self {
            PolicyKind::SingleLru => "single-lru",
            PolicyKind::QLru(_) => "q-lru",
            PolicyKind::Lfu => "lfu",
            PolicyKind::MultiLruOne => "multi-lru-one",
            PolicyKind::MultiLruAll => "multi-lru-all",
            PolicyKind::QMultiLruAll(_) => "q-multi-lru-all",
            PolicyKind::Pbp => "pbp",
            PolicyKind::Gfi => "gfi",
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q() {
            Some(q) => write!(f, "{}:{q}", self.base_name()),
            None => f.write_str(self.base_name()),
        }
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    /// Accepts the display names; q-variants take `name:q`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, q) = match s.split_once(':') {
            Some((n, q)) => {
                let q: f64 = q
                    .parse()
                    .map_err(|_| invalid("policy", format!("bad q value in `{s}`")))?;
                (n.to_string(), Some(q))
            }
            None => (s.clone(), None),
        };
        let kind = match (name.as_str(), q) {
            ("single-lru", None) => PolicyKind::SingleLru,
            ("q-lru", Some(q)) => PolicyKind::QLru(q),
            ("lfu", None) => PolicyKind::Lfu,
            ("multi-lru-one", None) => PolicyKind::MultiLruOne,
            ("multi-lru-all", None) => PolicyKind::MultiLruAll,
            ("q-multi-lru-all", Some(q)) => PolicyKind::QMultiLruAll(q),
            ("pbp", None) => PolicyKind::Pbp,
            ("gfi", None) => PolicyKind::Gfi,
            _ => return Err(invalid("policy", format!("unknown policy `{s}`"))),
        };
        kind.validate()?;
        Ok(kind)
    }
}

impl Serialize for PolicyKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PolicyKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What a single request did to the network.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HitOutcome {
    pub hit: bool,
    pub serving_station: Option<usize>,
    pub insertions: Vec<usize>,
    pub evictions: Vec<(usize, ObjectId)>,
}

impl HitOutcome {
    fn reset(&mut self) {
        self.hit = false;
        self.serving_station = None;
        self.insertions.clear();
        self.evictions.clear();
    }
}

/// Serves one request for `object` from a user covered by `covering`
/// (station indices, nearest first).
pub fn handle_request<R: Rng + ?Sized>(
    policy: PolicyKind,
    caches: &mut [CacheInventory],
    covering: &[usize],
    object: ObjectId,
    rng: &mut R,
) -> Result<HitOutcome> {
    let mut outcome = HitOutcome::default();
    handle_request_into(policy, caches, covering, object, rng, &mut outcome)?;
    Ok(outcome)
}

/// [`handle_request`] writing into a reusable outcome buffer.
pub fn handle_request_into<R: Rng + ?Sized>(
    policy: PolicyKind,
    caches: &mut [CacheInventory],
    covering: &[usize],
    object: ObjectId,
    rng: &mut R,
    out: &mut HitOutcome,
) -> Result<()> {
    out.reset();
    if let Some(&index) = covering.iter().find(|&&s| s >= caches.len()) {
        return Err(Error::UnknownStation {
            index,
            count: caches.len(),
        });
    }
    let Some(&nearest) = covering.first() else {
        return Ok(());
    };
    match policy {
        PolicyKind::SingleLru | PolicyKind::QLru(_) => {
            if caches[nearest].touch(object) {
                out.hit = true;
                out.serving_station = Some(nearest);
            } else if admit(policy.q(), rng) {
                insert(caches, nearest, object, out)?;
            }
        }
        PolicyKind::MultiLruOne => match covering.iter().copied().find(|&s| caches[s].contains(object)) {
            Some(s) => {
                caches[s].touch(object);
                out.hit = true;
                out.serving_station = Some(s);
            }
            None => insert(caches, nearest, object, out)?,
        },
        PolicyKind::MultiLruAll | PolicyKind::QMultiLruAll(_) => {
            for &s in covering {
                if caches[s].touch(object) && !out.hit {
                    out.hit = true;
                    out.serving_station = Some(s);
                }
            }
            if !out.hit {
                for &s in covering {
                    if admit(policy.q(), rng) {
                        insert(caches, s, object, out)?;
                    }
                }
            }
        }
        PolicyKind::Lfu | PolicyKind::Pbp | PolicyKind::Gfi => {
            if let Some(s) = covering.iter().copied().find(|&s| caches[s].contains(object)) {
                out.hit = true;
                out.serving_station = Some(s);
            }
        }
    }
    Ok(())
}

// no draw at all when q >= 1, so q = 1 replays the deterministic policy
fn admit<R: Rng + ?Sized>(q: Option<f64>, rng: &mut R) -> bool {
    match q {
        Some(q) if q < 1.0 => rng.random::<f64>() < q,
        _ => true,
    }
}

fn insert(caches: &mut [CacheInventory], station: usize, object: ObjectId, out: &mut HitOutcome) -> Result<()> {
    if let Some(victim) = caches[station].insert(object)? {
        out.evictions.push((station, victim));
    }
    out.insertions.push(station);
    Ok(())
}

/// The `k` most popular objects.
pub fn lfu_fill(catalogue: &Catalogue, k: usize) -> Result<CacheInventory> {
    if k > catalogue.len() {
        return Err(invalid(
            "k",
            format!("cache size {k} exceeds catalogue size {}", catalogue.len()),
        ));
    }
    CacheInventory::from_objects(k, (0..k).map(ObjectId::from))
}

/// Hit probability if every user covered by `m` stations could see the
/// `m·K` most popular objects: `Σ_{m≥1} p_m Σ_{j ≤ min(mK, F)} a_j`.
pub fn hit_upper_bound(catalogue: &Catalogue, profile: &CoverageProfile, k: usize) -> f64 {
    profile
        .covered_terms()
        .map(|(m, p)| p * catalogue.head_mass(m.saturating_mul(k).min(catalogue.len())))
        .sum::<f64>()
        .min(1.0)
}
