use rand::Rng;
use rand_distr::{Distribution, Poisson};

use super::{Catalogue, ObjectSampler, Request, RequestStream};
use crate::error::{ensure_positive, invalid, Result};
use crate::geometry::Window;

/// Mean request count `λ_u · A · B · T` over the inner window.
pub fn expected_irm_requests(intensity: f64, window: &Window, duration: f64) -> f64 {
    intensity * window.area() * duration
}

/// Lazily generated IRM stream in time order.
///
/// The request count is Poisson; arrival instants are the order statistics
/// of that many uniforms on `[0, duration]`, produced one at a time from the
/// largest down (`U_(k) = U_(k+1) · V^{1/k}`) and mirrored, so no sort or
/// buffer is needed. Locations are uniform on the inner window and object
/// marks are i.i.d. from the catalogue.
pub struct IrmRequests<'a, R: Rng + ?Sized> {
    rng: &'a mut R,
    window: Window,
    duration: f64,
    sampler: ObjectSampler,
    remaining: u64,
    upper: f64,
}

impl<'a, R: Rng + ?Sized> IrmRequests<'a, R> {
    pub fn new(intensity: f64, window: Window, duration: f64, catalogue: &Catalogue, rng: &'a mut R) -> Result<Self> {
        ensure_positive("lambda_u", intensity)?;
        ensure_positive("duration", duration)?;
        let mean = expected_irm_requests(intensity, &window, duration);
        let count = Poisson::new(mean)
            .map_err(|e| invalid("lambda_u", e.to_string()))?
            .sample(rng) as u64;
        Ok(IrmRequests {
            rng,
            window,
            duration,
            sampler: catalogue.sampler(),
            remaining: count,
            upper: 1.0,
        })
    }

    /// Requests not yet produced.
    pub fn remaining(&self) -> u64 {
        self.remaining
    }
}

impl<R: Rng + ?Sized> Iterator for IrmRequests<'_, R> {
    type Item = Request;

    fn next(&mut self) -> Option<Request> {
        if self.remaining == 0 {
            return None;
        }
        let v: f64 = 1.0 - self.rng.random::<f64>();
        self.upper *= v.powf(1.0 / self.remaining as f64);
        self.remaining -= 1;
        let time = self.duration * (1.0 - self.upper);
        let location = self.window.sample_inner(self.rng);
        let object = self.sampler.sample(self.rng);
        Some(Request { time, location, object })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

/// Materialised IRM stream.
pub fn generate_irm_stream<R: Rng + ?Sized>(
    intensity: f64,
    window: Window,
    duration: f64,
    catalogue: &Catalogue,
    rng: &mut R,
) -> Result<RequestStream> {
    let requests = IrmRequests::new(intensity, window, duration, catalogue, rng)?.collect();
    Ok(RequestStream {
        requests,
        intensity,
        duration,
    })
}
