use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Point, StationField};
use crate::error::{ensure_positive, invalid, Result};

const PMF_TOLERANCE: f64 = 1e-9;
const PROBES_PER_FIELD: usize = 1000;

/// Distribution `p_0..p_M` of the number of coverage discs containing a
/// typical location.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageProfile {
    pmf: Vec<f64>,
}

impl CoverageProfile {
    pub fn new(pmf: Vec<f64>) -> Result<Self> {
        if pmf.is_empty() {
            return Err(invalid("pmf", "needs at least p_0"));
        }
        if let Some((m, p)) = pmf
            .iter()
            .enumerate()
            .find(|(_, p)| !(p.is_finite() && (0.0..=1.0).contains(*p)))
        {
            return Err(invalid("pmf", format!("p_{m} = {p} is not a probability")));
        }
        let total: f64 = pmf.iter().sum();
        if (total - 1.0).abs() > PMF_TOLERANCE {
            return Err(invalid("pmf", format!("sums to {total}, expected 1")));
        }
        Ok(CoverageProfile { pmf })
    }

    /// Every location covered by exactly `m` stations.
    pub fn degenerate(m: usize) -> Self {
        let mut pmf = vec![0.0; m + 1];
        pmf[m] = 1.0;
        CoverageProfile { pmf }
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    /// Largest coverage count `M` represented.
    pub fn max_count(&self) -> usize {
        self.pmf.len() - 1
    }

    pub fn probability(&self, m: usize) -> f64 {
        self.pmf.get(m).copied().unwrap_or(0.0)
    }

    pub fn mean(&self) -> f64 {
        mean_coverage_number(self)
    }

    /// `(m, p_m)` pairs with `m >= 1`.
    pub fn covered_terms(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.pmf.iter().copied().enumerate().skip(1)
    }

    /// Total variation distance to another profile.
    pub fn total_variation(&self, other: &CoverageProfile) -> f64 {
        let n = self.pmf.len().max(other.pmf.len());
        0.5 * (0..n)
            .map(|m| (self.probability(m) - other.probability(m)).abs())
            .sum::<f64>()
    }
}

/// `Σ m·p_m`.
pub fn mean_coverage_number(profile: &CoverageProfile) -> f64 {
    profile.pmf.iter().enumerate().map(|(m, p)| m as f64 * p).sum()
}

/// Poisson coverage law of the Boolean model on a PPP, with parameter
/// `ν = λ_b π R_b²`. Mass beyond `M` is folded into `p_M`.
pub fn coverage_profile_ppp_boolean(intensity: f64, radius: f64, max_count: usize) -> Result<CoverageProfile> {
    ensure_positive("lambda_b", intensity)?;
    ensure_positive("radius", radius)?;
    if max_count == 0 {
        return Err(invalid("max_count", "must be >= 1"));
    }
    let nu = intensity * PI * radius * radius;
    let mut pmf = Vec::with_capacity(max_count + 1);
    let mut term = (-nu).exp();
    let mut head = 0.0;
    for m in 0..max_count {
        pmf.push(term);
        head += term;
        term *= nu / (m + 1) as f64;
    }
    pmf.push((1.0 - head).max(0.0));
    CoverageProfile::new(pmf)
}

/// Empirical coverage law. `sampler` draws a fresh station field for every
/// block of probes; probes are uniform on the part of the inner window at
/// least `radius` away from the edge of the generated stations.
pub fn coverage_profile_monte_carlo<R, F>(
    mut sampler: F,
    radius: f64,
    max_count: usize,
    n_samples: usize,
    rng: &mut R,
) -> Result<CoverageProfile>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Result<StationField>,
{
    ensure_positive("radius", radius)?;
    if max_count == 0 {
        return Err(invalid("max_count", "must be >= 1"));
    }
    if n_samples == 0 {
        return Err(invalid("n_samples", "must be >= 1"));
    }
    let mut counts = vec![0u64; max_count + 1];
    let mut drawn = 0;
    while drawn < n_samples {
        let field = sampler(rng)?;
        let w = *field.window();
        let inset = (radius - w.margin).max(0.0);
        let (span_x, span_y) = (w.width - 2.0 * inset, w.height - 2.0 * inset);
        if span_x <= 0.0 || span_y <= 0.0 {
            return Err(invalid("radius", "window too small for edge-free probing"));
        }
        let block = PROBES_PER_FIELD.min(n_samples - drawn);
        for _ in 0..block {
            let p = Point::new(
                inset + rng.random::<f64>() * span_x,
                inset + rng.random::<f64>() * span_y,
            );
            let m = field.count_within(p, radius).min(max_count);
            counts[m] += 1;
        }
        drawn += block;
    }
    let n = n_samples as f64;
    let mut pmf: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    // absorb rounding so the pmf sums to one exactly enough
    let total: f64 = pmf.iter().sum();
    let last = pmf.len() - 1;
    pmf[last] = (pmf[last] + 1.0 - total).max(0.0);
    CoverageProfile::new(pmf)
}

/// Boolean-model radius for an SNR threshold: `T^{-1/β} / B̃`.
pub fn radius_from_snr_threshold(threshold: f64, path_loss_exponent: f64, attenuation: f64) -> Result<f64> {
    ensure_positive("threshold", threshold)?;
    ensure_positive("attenuation", attenuation)?;
    if !(path_loss_exponent.is_finite() && path_loss_exponent > 2.0) {
        return Err(invalid(
            "path_loss_exponent",
            format!("must be > 2, got {path_loss_exponent}"),
        ));
    }
    Ok(threshold.powf(-1.0 / path_loss_exponent) / attenuation)
}
