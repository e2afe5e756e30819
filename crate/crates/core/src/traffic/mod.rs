//! Request generation: IRM space-time Poisson traffic and a temporal
//! locality model where objects are born, live a while, and expire.

mod catalogue;
mod irm;
mod temporal;

pub use catalogue::{Catalogue, ObjectId, ObjectSampler};
pub use irm::{expected_irm_requests, generate_irm_stream, IrmRequests};
pub use temporal::{
    generate_temporal_stream, generate_temporal_traffic, ObjectLifetime, TemporalTraffic, TemporalTrafficConfig,
};

use serde::{Deserialize, Serialize};

use crate::geometry::Point;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Request {
    pub time: f64,
    pub location: Point,
    pub object: ObjectId,
}

/// Time-ordered requests over `[0, duration]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RequestStream {
    pub requests: Vec<Request>,
    /// Requests per unit area per unit time.
    pub intensity: f64,
    pub duration: f64,
}

impl RequestStream {
    pub fn len(&self) -> usize {
        self.requests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.requests.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Request> {
        self.requests.iter()
    }

    /// Request counts per object id, indexed by id.
    pub fn object_counts(&self, universe: usize) -> Vec<u64> {
        let mut counts = vec![0u64; universe];
        for r in &self.requests {
            if let Some(c) = counts.get_mut(r.object.index()) {
                *c += 1;
            }
        }
        counts
    }
}
