use serde::{Deserialize, Serialize};

use crate::policies::PolicyKind;

/// Counted requests and hits of one policy in one replication.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitCount {
    pub requests: u64,
    pub hits: u64,
}

impl HitCount {
    pub fn record(&mut self, hit: bool) {
        self.requests += 1;
        self.hits += u64::from(hit);
    }

    pub fn misses(&self) -> u64 {
        self.requests - self.hits
    }

    /// `hits / requests`, undefined without requests.
    pub fn probability(&self) -> Option<f64> {
        (self.requests > 0).then(|| self.hits as f64 / self.requests as f64)
    }
}

/// One replication: every policy saw the same stations and requests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplicationResult {
    pub seed: u64,
    pub stations: usize,
    /// Requests generated, including warm-up.
    pub total_requests: u64,
    pub counts: Vec<(PolicyKind, HitCount)>,
}

impl ReplicationResult {
    pub fn count(&self, policy: PolicyKind) -> Option<HitCount> {
        self.counts.iter().find(|(p, _)| *p == policy).map(|(_, c)| *c)
    }
}

/// Hit statistics of one policy over all replications.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HitReport {
    pub policy: PolicyKind,
    /// Pooled over replications.
    pub requests: u64,
    pub hits: u64,
    /// `hits / requests`; `None` without requests.
    pub hit_probability: Option<f64>,
    /// Per-replication hit probabilities (replications without requests
    /// are skipped).
    pub per_replication: Vec<f64>,
    pub mean: f64,
    /// Normal-approximation 95% half-width `1.96 s / √n`; NaN below two
    /// replications.
    pub ci95: f64,
}

impl HitReport {
    pub fn from_counts(policy: PolicyKind, counts: &[HitCount]) -> Self {
        let requests = counts.iter().map(|c| c.requests).sum();
        let hits = counts.iter().map(|c| c.hits).sum();
        let per_replication: Vec<f64> = counts.iter().filter_map(HitCount::probability).collect();
        let (mean, ci95) = mean_ci95(&per_replication);
        HitReport {
            policy,
            requests,
            hits,
            hit_probability: HitCount { requests, hits }.probability(),
            per_replication,
            mean,
            ci95,
        }
    }

    pub fn n_replications(&self) -> usize {
        self.per_replication.len()
    }

    /// `|self.mean - other.mean|` exceeds the sum of the two half-widths.
    pub fn separated_from(&self, other: &HitReport) -> bool {
        (self.mean - other.mean).abs() > self.ci95 + other.ci95
    }

    /// Means agree within the sum of the two half-widths.
    pub fn overlaps(&self, other: &HitReport) -> bool {
        (self.mean - other.mean).abs() <= self.ci95 + other.ci95
    }
}

/// Sample mean and `1.96 s / √n` (NaN for `n < 2`; mean NaN for `n = 0`).
pub fn mean_ci95(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, f64::NAN);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, 1.96 * (var / n as f64).sqrt())
}

/// Aggregated outcome of [`super::run_experiment`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub base_seed: u64,
    pub cache_size: usize,
    /// Mean coverage number of the profile used by the run.
    pub mean_coverage: f64,
    pub replications: Vec<ReplicationResult>,
    pub reports: Vec<HitReport>,
}

impl ExperimentReport {
    pub fn report(&self, policy: PolicyKind) -> Option<&HitReport> {
        self.reports.iter().find(|r| r.policy == policy)
    }
}
