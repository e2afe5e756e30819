use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, invalid, Result};
use crate::geometry::{Point, StationField};

/// Outer radius of the union of all discs covering a point, in units of
/// `R_b`: `R_b` plus the mean distance `2R_b/3` of a covering station.
const OUTER_RADIUS_FACTOR: f64 = 5.0 / 3.0;

/// Mean area `|A_m|` of the union of the `m` coverage discs that contain a
/// typical point, for `m = 0..=M`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub radius: f64,
    pub areas: Vec<f64>,
    /// Decay rate of the exponential model; `None` for estimated surfaces.
    pub rho: Option<f64>,
}

impl SurfaceModel {
    /// `|A_m|`, saturating at the last tabulated value.
    pub fn area(&self, m: usize) -> f64 {
        self.areas.get(m).or(self.areas.last()).copied().unwrap_or(0.0)
    }

    pub fn max_count(&self) -> usize {
        self.areas.len().saturating_sub(1)
    }
}

/// Exponential saturation model `|A_m| = |A_∞| (1 - e^{-mρ})` with
/// `|A_∞| = (5/3)² πR²` and `ρ` fixed by `|A_1| = πR²`, i.e.
/// `ρ = ln(25/16)`.
pub fn build_surface_model(radius: f64, max_count: usize) -> Result<SurfaceModel> {
    ensure_positive("coverage_radius", radius)?;
    if max_count == 0 {
        return Err(invalid("max_count", "need M >= 1"));
    }
    let disc = PI * radius * radius;
    let limit = OUTER_RADIUS_FACTOR * OUTER_RADIUS_FACTOR * disc;
    let rho = -(1.0 - disc / limit).ln();
    let areas = (0..=max_count).map(|m| -limit * (-(m as f64) * rho).exp_m1()).collect();
    Ok(SurfaceModel {
        radius,
        areas,
        rho: Some(rho),
    })
}

/// Monte Carlo estimate of `|A_m|` on sampled station fields.
///
/// For each probe point the union of the covering discs lies inside the disc
/// of radius `2R` around the probe; its area is estimated by hit-or-miss with
/// `points_per_probe` uniform points there, then averaged per coverage count.
/// Counts never observed inherit the previous value, which keeps the table
/// monotone.
pub fn estimate_union_surfaces<R, F>(
    mut sampler: F,
    radius: f64,
    max_count: usize,
    n_probes: usize,
    points_per_probe: usize,
    rng: &mut R,
) -> Result<SurfaceModel>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Result<StationField>,
{
    ensure_positive("coverage_radius", radius)?;
    if max_count == 0 || n_probes == 0 || points_per_probe == 0 {
        return Err(invalid("n_probes", "need positive M, probe and point counts"));
    }
    const PROBES_PER_FIELD: usize = 200;
    let mut sums = vec![0.0; max_count + 1];
    let mut counts = vec![0usize; max_count + 1];
    let r2 = radius * radius;
    let reach = 2.0 * radius;
    let mut covering = Vec::new();
    let mut done = 0;
    while done < n_probes {
        let field = sampler(rng)?;
        let w = field.window();
        let inset = (radius - w.margin).max(0.0);
        if 2.0 * inset >= w.width || 2.0 * inset >= w.height {
            return Err(invalid("window", "too small for interior probing"));
        }
        for _ in 0..PROBES_PER_FIELD.min(n_probes - done) {
            let probe = Point::new(
                inset + rng.random::<f64>() * (w.width - 2.0 * inset),
                inset + rng.random::<f64>() * (w.height - 2.0 * inset),
            );
            field.within_into(probe, radius, &mut covering);
            let m = covering.len().min(max_count);
            let area = if covering.is_empty() {
                0.0
            } else {
                let mut inside = 0usize;
                for _ in 0..points_per_probe {
                    // uniform point in the disc of radius 2R around the probe
                    let rr = reach * rng.random::<f64>().sqrt();
                    let th = 2.0 * PI * rng.random::<f64>();
                    let q = Point::new(probe.x + rr * th.cos(), probe.y + rr * th.sin());
                    if covering.iter().any(|&(_, s)| field.positions()[s].distance_sq(q) < r2) {
                        inside += 1;
                    }
                }
                PI * reach * reach * inside as f64 / points_per_probe as f64
            };
            sums[m] += area;
            counts[m] += 1;
            done += 1;
        }
    }
    let mut areas = vec![0.0; max_count + 1];
    for m in 1..=max_count {
        let estimate = if counts[m] > 0 { sums[m] / counts[m] as f64 } else { 0.0 };
        areas[m] = estimate.max(areas[m - 1]);
    }
    Ok(SurfaceModel {
        radius,
        areas,
        rho: None,
    })
}
