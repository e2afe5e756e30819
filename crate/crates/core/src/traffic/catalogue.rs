use rand::Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Index of an object in the catalogue; object 0 is the most popular.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub u32);

impl ObjectId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ObjectId {
    fn from(i: usize) -> Self {
        ObjectId(i as u32)
    }
}

/// Object popularities `a_1 >= a_2 >= ... >= a_F > 0`, summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct Catalogue {
    popularity: Vec<f64>,
    // prefix[k] = a_1 + ... + a_k
    prefix: Vec<f64>,
}

impl Catalogue {
    pub fn new(popularity: Vec<f64>) -> Result<Self> {
        if popularity.is_empty() {
            return Err(invalid("catalogue", "must contain at least one object"));
        }
        if popularity.len() > u32::MAX as usize {
            return Err(invalid("catalogue", "too many objects"));
        }
        if let Some(a) = popularity.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
            return Err(invalid("catalogue", format!("popularity {a} must be > 0")));
        }
        if popularity.windows(2).any(|w| w[1] > w[0]) {
            return Err(invalid("catalogue", "popularities must be non-increasing"));
        }
        let total: f64 = popularity.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(invalid("catalogue", format!("popularities sum to {total}")));
        }
        let mut prefix = Vec::with_capacity(popularity.len() + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for a in &popularity {
            acc += a;
            prefix.push(acc);
        }
        Ok(Catalogue { popularity, prefix })
    }

    /// Zipf law `a_j ∝ j^{-γ}`.
    pub fn zipf(size: usize, exponent: f64) -> Result<Self> {
        if size == 0 {
            return Err(invalid("catalogue_size", "must be >= 1"));
        }
        if !(exponent.is_finite() && exponent >= 0.0) {
            return Err(invalid("gamma", format!("must be >= 0, got {exponent}")));
        }
        let weights: Vec<f64> = (1..=size).map(|j| (j as f64).powf(-exponent)).collect();
        let norm: f64 = weights.iter().sum();
        let mut popularity: Vec<f64> = weights.into_iter().map(|w| w / norm).collect();
        // keep monotone after rounding
        for j in 1..popularity.len() {
            if popularity[j] > popularity[j - 1] {
                popularity[j] = popularity[j - 1];
            }
        }
        Catalogue::new(popularity)
    }

    pub fn uniform(size: usize) -> Result<Self> {
        Catalogue::zipf(size, 0.0)
    }

    pub fn len(&self) -> usize {
        self.popularity.len()
    }

    pub fn is_empty(&self) -> bool {
        self.popularity.is_empty()
    }

    pub fn popularities(&self) -> &[f64] {
        &self.popularity
    }

    pub fn popularity(&self, object: ObjectId) -> f64 {
        self.popularity[object.index()]
    }

    /// Mass of the `k` most popular objects.
    pub fn head_mass(&self, k: usize) -> f64 {
        self.prefix[k.min(self.len())]
    }

    /// Sampler drawing object ids with probability `a_j`.
    pub fn sampler(&self) -> ObjectSampler {
        ObjectSampler {
            alias: WeightedAliasIndex::new(self.popularity.clone())
                .expect("validated popularities are positive and finite"),
        }
    }
}

/// O(1) object draws from a catalogue.
#[derive(Clone, Debug)]
pub struct ObjectSampler {
    alias: WeightedAliasIndex<f64>,
}

impl ObjectSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ObjectId {
        ObjectId(self.alias.sample(rng) as u32)
    }
}
