use crate::error::{ensure_positive, invalid, Error, Result};
use crate::traffic::Catalogue;

const RESIDUAL_TOLERANCE: f64 = 1e-8;
const MAX_BISECTIONS: usize = 400;

/// Root of the Che occupancy equation.
#[derive(Clone, Debug, PartialEq)]
pub struct CheSolution {
    /// Characteristic time `T_C`; `f64::INFINITY` when the whole catalogue
    /// fits in the cache.
    pub characteristic_time: f64,
    /// `|Σ_j (1 - e^{-Λ a_j T_C}) - K|`.
    pub residual: f64,
    /// Time-average probability that each object is cached.
    pub per_object_hit: Vec<f64>,
}

impl CheSolution {
    pub fn is_unbounded(&self) -> bool {
        self.characteristic_time.is_infinite()
    }
}

/// `1 - e^{-x}` with the conventions `x = 0 → 0` and `x = ∞ → 1`.
pub(crate) fn occupancy(x: f64) -> f64 {
    if x.is_infinite() {
        1.0
    } else {
        -(-x).exp_m1()
    }
}

/// Probability that a request of popularity `a` arriving at rate
/// `a · rate` over an exposure window `t` has occurred. Zero rate means the
/// object is never seen, even if `t` is infinite.
pub(crate) fn seen_within(a: f64, rate: f64, t: f64) -> f64 {
    if a == 0.0 || rate == 0.0 {
        0.0
    } else {
        occupancy(a * rate * t)
    }
}

fn occupancy_sum(popularity: &[f64], rate: f64, t: f64) -> f64 {
    popularity.iter().map(|&a| occupancy(rate * a * t)).sum()
}

/// Solves `Σ_j (1 - e^{-Λ a_j T}) = K` for `T` by bisection. The left side
/// increases strictly from 0 to `F`, so the root is unique when `K < F`.
pub fn solve_characteristic_time(catalogue: &Catalogue, rate: f64, k: usize) -> Result<CheSolution> {
    ensure_positive("rate", rate)?;
    if k == 0 {
        return Err(invalid("k", "cache capacity must be at least 1"));
    }
    let a = catalogue.popularities();
    if k >= a.len() {
        return Ok(CheSolution {
            characteristic_time: f64::INFINITY,
            residual: 0.0,
            per_object_hit: vec![1.0; a.len()],
        });
    }
    let target = k as f64;
    let mut hi = 1.0 / rate;
    while occupancy_sum(a, rate, hi) <= target {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::RootFinding("could not bracket the characteristic time".into()));
        }
    }
    let mut lo = 0.0;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if occupancy_sum(a, rate, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (f_lo, f_hi) = (occupancy_sum(a, rate, lo), occupancy_sum(a, rate, hi));
    let t = if (f_lo - target).abs() <= (f_hi - target).abs() {
        lo
    } else {
        hi
    };
    let residual = (occupancy_sum(a, rate, t) - target).abs();
    if residual >= RESIDUAL_TOLERANCE {
        return Err(Error::RootFinding(format!("residual {residual:e} at T = {t}")));
    }
    Ok(CheSolution {
        characteristic_time: t,
        residual,
        per_object_hit: a.iter().map(|&aj| occupancy(rate * aj * t)).collect(),
    })
}

/// Single-LRU hit probability `Σ_j a_j (1 - e^{-Λ a_j T_C})`.
pub fn che_single_hit(catalogue: &Catalogue, rate: f64, k: usize) -> Result<f64> {
    let sol = solve_characteristic_time(catalogue, rate, k)?;
    Ok(catalogue
        .popularities()
        .iter()
        .zip(&sol.per_object_hit)
        .map(|(a, h)| a * h)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_uniform_objects_have_closed_form_root() {
        let cat = Catalogue::uniform(2).unwrap();
        let sol = solve_characteristic_time(&cat, 1.0, 1).unwrap();
        assert!((sol.characteristic_time - 2.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert!(sol.residual < 1e-8);
        assert!((che_single_hit(&cat, 1.0, 1).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn full_cache_is_unbounded() {
        let cat = Catalogue::zipf(4, 0.8).unwrap();
        let sol = solve_characteristic_time(&cat, 3.0, 4).unwrap();
        assert!(sol.is_unbounded());
        assert!(sol.per_object_hit.iter().all(|&h| h == 1.0));
        assert!((che_single_hit(&cat, 3.0, 9).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn root_agrees_with_fine_scan() {
        let cat = Catalogue::zipf(3, 1.0).unwrap();
        let sol = solve_characteristic_time(&cat, 1.0, 1).unwrap();
        let a = cat.popularities();
        // coarse scan to locate the sign change, then a 1e-9 step scan
        let f = |t: f64| occupancy_sum(a, 1.0, t) - 1.0;
        let mut t = 0.0;
        while f(t + 1e-3) < 0.0 {
            t += 1e-3;
        }
        let mut steps = 0;
        while f(t) < 0.0 && steps < 2_000_000 {
            t += 1e-9;
            steps += 1;
        }
        assert!(
            (sol.characteristic_time - t).abs() < 2e-9,
            "{} vs {t}",
            sol.characteristic_time
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        let cat = Catalogue::uniform(3).unwrap();
        assert!(solve_characteristic_time(&cat, 0.0, 1).is_err());
        assert!(solve_characteristic_time(&cat, -1.0, 1).is_err());
        assert!(solve_characteristic_time(&cat, 1.0, 0).is_err());
    }

    #[test]
    fn occupancy_edge_cases() {
        assert_eq!(occupancy(0.0), 0.0);
        assert_eq!(occupancy(f64::INFINITY), 1.0);
        assert_eq!(seen_within(0.3, 0.0, f64::INFINITY), 0.0);
    }
}
