use rand::Rng;

use super::CacheInventory;
use crate::error::{invalid, Error, Result};
use crate::geometry::CoverageProfile;
use crate::traffic::{Catalogue, ObjectId};

const OUTER_ITERATIONS: usize = 200;
const INNER_ITERATIONS: usize = 200;

/// Placement probabilities for probabilistic block placement.
#[derive(Clone, Debug, PartialEq)]
pub struct PbpSolution {
    /// Inclusion probability `b_j` of each object in any one cache.
    pub placement: Vec<f64>,
    /// Lagrange multiplier of the `Σ b_j = K` constraint.
    pub multiplier: f64,
    /// Largest KKT violation, relative to the largest possible marginal gain.
    pub kkt_residual: f64,
    /// Hit probability achieved by `placement` under the coverage profile.
    pub objective: f64,
}

/// Maximises `Σ_j a_j (1 - Σ_m p_m (1 - b_j)^m)` over `0 ≤ b_j ≤ 1`,
/// `Σ_j b_j = K`.
///
/// The objective is separable and concave, so the optimum equalises the
/// marginal gains `a_j g(b_j)` with `g(b) = Σ_m m p_m (1 - b)^{m-1}` on the
/// interior objects. The multiplier is found by bisection; the two bracketing
/// solutions are blended at the end so the budget holds exactly even when
/// several objects share the same marginal gain.
pub fn pbp_solve(catalogue: &Catalogue, profile: &CoverageProfile, k: usize) -> Result<PbpSolution> {
    let f = catalogue.len();
    if k == 0 || k > f {
        return Err(invalid("k", format!("need 1 <= K <= F = {f}, got {k}")));
    }
    let a = catalogue.popularities();
    let coeffs = Marginal::new(profile);
    if k == f {
        let placement = vec![1.0; f];
        let objective = objective(a, profile, &placement);
        return Ok(PbpSolution {
            placement,
            multiplier: 0.0,
            kkt_residual: 0.0,
            objective,
        });
    }

    let budget = k as f64;
    let scale = a[0] * coeffs.at_zero();
    let (mut lo, mut hi) = (0.0, scale);
    let mut b_lo = vec![0.0; f];
    let mut b_hi = vec![0.0; f];
    let mut s_lo = fill(&coeffs, a, lo, &mut b_lo);
    let mut s_hi = fill(&coeffs, a, hi, &mut b_hi);
    let mut scratch = vec![0.0; f];
    for _ in 0..OUTER_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = fill(&coeffs, a, mid, &mut scratch);
        if s >= budget {
            lo = mid;
            s_lo = s;
            std::mem::swap(&mut b_lo, &mut scratch);
        } else {
            hi = mid;
            s_hi = s;
            std::mem::swap(&mut b_hi, &mut scratch);
        }
    }

    let theta = if s_lo > s_hi {
        ((budget - s_hi) / (s_lo - s_hi)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let placement: Vec<f64> = b_hi
        .iter()
        .zip(&b_lo)
        .map(|(&h, &l)| (h + theta * (l - h)).clamp(0.0, 1.0))
        .collect();
    let multiplier = 0.5 * (lo + hi);
    let kkt_residual = kkt_residual(&coeffs, a, &placement, multiplier, budget, scale);
    Ok(PbpSolution {
        objective: objective(a, profile, &placement),
        placement,
        multiplier,
        kkt_residual,
    })
}

/// `g(b) = Σ_m m p_m (1-b)^{m-1}` and its derivative, by Horner's rule in
/// `x = 1 - b`.
struct Marginal {
    // c[i] = (i + 1) p_{i+1}
    c: Vec<f64>,
}

impl Marginal {
    fn new(profile: &CoverageProfile) -> Self {
        let mut c: Vec<f64> = profile.covered_terms().map(|(m, p)| m as f64 * p).collect();
        while c.last() == Some(&0.0) {
            c.pop();
        }
        Marginal { c }
    }

    fn at_zero(&self) -> f64 {
        self.c.iter().sum()
    }

    fn at_one(&self) -> f64 {
        self.c.first().copied().unwrap_or(0.0)
    }

    fn eval(&self, b: f64) -> (f64, f64) {
        let x = 1.0 - b;
        let (mut g, mut dg) = (0.0, 0.0);
        for &c in self.c.iter().rev() {
            dg = dg * x + g;
            g = g * x + c;
        }
        // dg is dg/dx; b = 1 - x flips the sign
        (g, -dg)
    }

    /// Solves `g(b) = target` for `g(1) < target < g(0)`. `g` is convex and
    /// decreasing, so Newton iterates started at 0 stay left of the root; a
    /// bisection bracket guards the last digits.
    fn invert(&self, target: f64) -> f64 {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut b = 0.0;
        for _ in 0..INNER_ITERATIONS {
            let (g, dg) = self.eval(b);
            let r = g - target;
            if r > 0.0 {
                lo = b;
            } else {
                hi = b;
            }
            if r.abs() <= 1e-15 * target || hi - lo <= 1e-16 {
                break;
            }
            let step = if dg < 0.0 { b - r / dg } else { f64::NAN };
            b = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
        }
        b
    }
}

// b_j(μ) for every object; returns the sum
fn fill(coeffs: &Marginal, a: &[f64], mu: f64, out: &mut [f64]) -> f64 {
    let (g1, g0) = (coeffs.at_one(), coeffs.at_zero());
    let mut total = 0.0;
    for (b, &aj) in out.iter_mut().zip(a) {
        let target = mu / aj;
        *b = if target <= g1 {
            1.0
        } else if target >= g0 {
            0.0
        } else {
            coeffs.invert(target)
        };
        total += *b;
    }
    total
}

fn kkt_residual(coeffs: &Marginal, a: &[f64], b: &[f64], mu: f64, budget: f64, scale: f64) -> f64 {
    const EDGE: f64 = 1e-12;
    let mut worst = 0.0f64;
    for (&bj, &aj) in b.iter().zip(a) {
        let gain = aj * coeffs.eval(bj).0;
        let violation = if bj <= EDGE {
            (gain - mu).max(0.0)
        } else if bj >= 1.0 - EDGE {
            (mu - gain).max(0.0)
        } else {
            (gain - mu).abs()
        };
        worst = worst.max(violation);
    }
    let budget_gap = (b.iter().sum::<f64>() - budget).abs() / budget;
    if scale > 0.0 {
        (worst / scale).max(budget_gap)
    } else {
        budget_gap
    }
}

fn objective(a: &[f64], profile: &CoverageProfile, b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&aj, &bj)| {
            let miss: f64 = profile
                .pmf()
                .iter()
                .enumerate()
                .map(|(m, &p)| p * (1.0 - bj).powi(m as i32))
                .sum();
            aj * (1.0 - miss)
        })
        .sum()
}

/// Draws one cache's `K` objects so that object `j` is included with
/// probability `b_j`: lengths `b_j` are laid end to end on a ring of
/// circumference `K` and the objects under the points `u, u+1, …, u+K-1` are
/// kept.
pub fn pbp_sample<R: Rng + ?Sized>(placement: &[f64], k: usize, rng: &mut R) -> Result<CacheInventory> {
    if k == 0 || k > placement.len() {
        return Err(Error::InvalidPlacement(format!(
            "K = {k} with {} objects",
            placement.len()
        )));
    }
    if let Some((j, b)) = placement
        .iter()
        .enumerate()
        .find(|(_, b)| !(b.is_finite() && (-1e-9..=1.0 + 1e-9).contains(*b)))
    {
        return Err(Error::InvalidPlacement(format!("b_{j} = {b} outside [0, 1]")));
    }
    let total: f64 = placement.iter().map(|b| b.clamp(0.0, 1.0)).sum();
    if (total - k as f64).abs() > 1e-6 * (k as f64).max(1.0) {
        return Err(Error::InvalidPlacement(format!(
            "probabilities sum to {total}, expected {k}"
        )));
    }

    let stretch = k as f64 / total;
    let mut point = rng.random::<f64>();
    let mut chosen = Vec::with_capacity(k);
    let mut taken = vec![false; placement.len()];
    let mut end = 0.0;
    for (j, &b) in placement.iter().enumerate() {
        end += b.clamp(0.0, 1.0) * stretch;
        if point < end && chosen.len() < k {
            chosen.push(ObjectId::from(j));
            taken[j] = true;
            while point < end {
                point += 1.0;
            }
        }
    }
    // rounding can in principle swallow a point; top up with the likeliest
    if chosen.len() < k {
        let mut rest: Vec<usize> = (0..placement.len()).filter(|&j| !taken[j]).collect();
        rest.sort_by(|&x, &y| placement[y].total_cmp(&placement[x]).then(x.cmp(&y)));
        chosen.extend(rest.into_iter().take(k - chosen.len()).map(ObjectId::from));
    }
    CacheInventory::from_objects(k, chosen)
}
