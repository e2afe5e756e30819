//! Che-like hit-probability approximations for spatial caches.
//!
//! Every formula solves one occupancy equation for the characteristic time
//! `T_C` and then integrates the per-object hit probability against the
//! coverage profile. multi-LRU-One uses cache independence (neighbouring
//! inventories treated as independent), multi-LRU-All uses cache similarity
//! (neighbouring inventories treated as identical).

mod che;
mod surface;

pub use che::{che_single_hit, solve_characteristic_time, CheSolution};
pub use surface::{build_surface_model, estimate_union_surfaces, SurfaceModel};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, invalid, Error, Result};
use crate::geometry::CoverageProfile;
use crate::traffic::Catalogue;
use che::seen_within;

/// Hit probability together with the characteristic time it came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChePrediction {
    pub hit_probability: f64,
    pub characteristic_time: f64,
}

/// Whether a coverage disc is larger than the mean Voronoi cell, the regime
/// in which the independence approximation for multi-LRU-One is meaningful.
pub fn cia_regime_holds(intensity: f64, radius: f64) -> bool {
    PI * radius * radius > 1.0 / intensity
}

/// multi-LRU-One under cache independence: `T_C` from the per-cache request
/// rate `λ_u |V|`, and a user covered by `m` caches misses only if all `m`
/// independently miss, `Σ_j a_j Σ_m p_m (1 - e^{-a_j λ_u m |V| T_C})`.
pub fn che_multi_one(
    catalogue: &Catalogue,
    intensity: f64,
    voronoi_area: f64,
    profile: &CoverageProfile,
    k: usize,
) -> Result<ChePrediction> {
    ensure_positive("lambda_u", intensity)?;
    ensure_positive("voronoi_area", voronoi_area)?;
    let rate = intensity * voronoi_area;
    let sol = solve_characteristic_time(catalogue, rate, k)?;
    let t = sol.characteristic_time;
    let hit = integrate(catalogue, profile, |a, m| seen_within(a, rate * m as f64, t));
    Ok(ChePrediction {
        hit_probability: hit,
        characteristic_time: t,
    })
}

pub fn che_multi_one_hit(
    catalogue: &Catalogue,
    intensity: f64,
    voronoi_area: f64,
    profile: &CoverageProfile,
    k: usize,
) -> Result<f64> {
    che_multi_one(catalogue, intensity, voronoi_area, profile, k).map(|p| p.hit_probability)
}

/// multi-LRU-All under cache similarity with the exponential union-surface
/// model: `T_C` from the per-cache rate `λ_u πR²`, and a user covered by `m`
/// caches misses only if nobody requested the object inside the union
/// `A_m` during `T_C`.
pub fn che_multi_all(
    catalogue: &Catalogue,
    intensity: f64,
    radius: f64,
    profile: &CoverageProfile,
    k: usize,
) -> Result<ChePrediction> {
    let surfaces = build_surface_model(radius, profile.max_count().max(1))?;
    che_multi_all_with_surfaces(catalogue, intensity, &surfaces, profile, k)
}

pub fn che_multi_all_hit(
    catalogue: &Catalogue,
    intensity: f64,
    radius: f64,
    profile: &CoverageProfile,
    k: usize,
) -> Result<f64> {
    che_multi_all(catalogue, intensity, radius, profile, k).map(|p| p.hit_probability)
}

/// [`che_multi_all`] with caller-supplied union surfaces, e.g. from
/// [`estimate_union_surfaces`].
pub fn che_multi_all_with_surfaces(
    catalogue: &Catalogue,
    intensity: f64,
    surfaces: &SurfaceModel,
    profile: &CoverageProfile,
    k: usize,
) -> Result<ChePrediction> {
    ensure_positive("lambda_u", intensity)?;
    ensure_positive("coverage_radius", surfaces.radius)?;
    let disc = PI * surfaces.radius * surfaces.radius;
    let sol = solve_characteristic_time(catalogue, intensity * disc, k)?;
    let t = sol.characteristic_time;
    let hit = integrate(catalogue, profile, |a, m| {
        seen_within(a, intensity * surfaces.area(m), t)
    });
    Ok(ChePrediction {
        hit_probability: hit,
        characteristic_time: t,
    })
}

// Σ_j a_j Σ_{m≥1} p_m h(a_j, m)
fn integrate(catalogue: &Catalogue, profile: &CoverageProfile, h: impl Fn(f64, usize) -> f64) -> f64 {
    let terms: Vec<(usize, f64)> = profile.covered_terms().filter(|&(_, p)| p > 0.0).collect();
    let total: f64 = catalogue
        .popularities()
        .iter()
        .map(|&a| a * terms.iter().map(|&(m, p)| p * h(a, m)).sum::<f64>())
        .sum();
    total.clamp(0.0, 1.0)
}

/// Policy of the two-cache network where both caches cover the whole area.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwoCachePolicy {
    One,
    All,
}

impl fmt::Display for TwoCachePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwoCachePolicy::One => "one",
            TwoCachePolicy::All => "all",
        })
    }
}

impl FromStr for TwoCachePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "one" => Ok(TwoCachePolicy::One),
            "all" => Ok(TwoCachePolicy::All),
            other => Err(invalid("policy", format!("expected `one` or `all`, got `{other}`"))),
        }
    }
}

/// Two caches covering the same area `|A| = 2|V|`, each the closest cache for
/// half of it.
///
/// One: `T_C` from `λ_u |V|`, hit `Σ a_j (1 - e^{-a_j λ_u 2|V| T_C})`.
/// All: both `T_C` and the hit use `λ_u |A|`; similarity is exact here.
pub fn two_cache(
    policy: TwoCachePolicy,
    catalogue: &Catalogue,
    intensity: f64,
    voronoi_area: f64,
    k: usize,
) -> Result<ChePrediction> {
    ensure_positive("lambda_u", intensity)?;
    ensure_positive("voronoi_area", voronoi_area)?;
    let whole = intensity * 2.0 * voronoi_area;
    let rate = match policy {
        TwoCachePolicy::One => intensity * voronoi_area,
        TwoCachePolicy::All => whole,
    };
    let sol = solve_characteristic_time(catalogue, rate, k)?;
    let t = sol.characteristic_time;
    let hit: f64 = catalogue
        .popularities()
        .iter()
        .map(|&a| a * seen_within(a, whole, t))
        .sum();
    Ok(ChePrediction {
        hit_probability: hit.clamp(0.0, 1.0),
        characteristic_time: t,
    })
}

pub fn two_cache_hit(
    policy: TwoCachePolicy,
    catalogue: &Catalogue,
    intensity: f64,
    voronoi_area: f64,
    k: usize,
) -> Result<f64> {
    two_cache(policy, catalogue, intensity, voronoi_area, k).map(|p| p.hit_probability)
}
