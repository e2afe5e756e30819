//! Station point patterns and coverage queries.
//!
//! Stations are generated on the inner window enlarged by `margin` on each
//! side so that requests near the window edge still see every station whose
//! disc reaches them. Coverage cells are Boolean discs of radius `R_b`
//! (strict inequality `d < R_b`).

mod coverage;
mod grid;

pub use coverage::{
    coverage_profile_monte_carlo, coverage_profile_ppp_boolean, mean_coverage_number, radius_from_snr_threshold,
    CoverageProfile,
};

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, invalid, Error, Result};
use grid::GridIndex;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance_sq(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn distance(self, other: Point) -> f64 {
        self.distance_sq(other).sqrt()
    }
}

/// Rectangular simulation window `[0, width) × [0, height)` in km, plus the
/// per-side margin over which stations are over-generated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
}

impl Window {
    pub fn new(width: f64, height: f64, margin: f64) -> Result<Self> {
        ensure_positive("width", width)?;
        ensure_positive("height", height)?;
        if !(margin.is_finite() && margin >= 0.0) {
            return Err(invalid("margin", format!("must be finite and >= 0, got {margin}")));
        }
        Ok(Window { width, height, margin })
    }

    pub fn with_margin(self, margin: f64) -> Result<Self> {
        Window::new(self.width, self.height, margin)
    }

    pub fn area(&self) -> f64 {
        self.width * self.height
    }

    pub fn outer_width(&self) -> f64 {
        self.width + 2.0 * self.margin
    }

    pub fn outer_height(&self) -> f64 {
        self.height + 2.0 * self.margin
    }

    pub fn outer_area(&self) -> f64 {
        self.outer_width() * self.outer_height()
    }

    pub fn outer_origin(&self) -> Point {
        Point::new(-self.margin, -self.margin)
    }

    pub fn contains_inner(&self, p: Point) -> bool {
        (0.0..self.width).contains(&p.x) && (0.0..self.height).contains(&p.y)
    }

    pub fn contains_outer(&self, p: Point) -> bool {
        let m = self.margin;
        (-m..self.width + m).contains(&p.x) && (-m..self.height + m).contains(&p.y)
    }

    /// Uniform point on the inner window.
    pub fn sample_inner<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        Point::new(rng.random::<f64>() * self.width, rng.random::<f64>() * self.height)
    }

    /// Uniform point on the margin-expanded window.
    pub fn sample_outer<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        Point::new(
            rng.random::<f64>() * self.outer_width() - self.margin,
            rng.random::<f64>() * self.outer_height() - self.margin,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StationKind {
    Ppp,
    Lattice,
}

impl fmt::Display for StationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StationKind::Ppp => "ppp",
            StationKind::Lattice => "lattice",
        })
    }
}

impl FromStr for StationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ppp" | "poisson" => Ok(StationKind::Ppp),
            "lattice" | "grid" => Ok(StationKind::Lattice),
            other => Err(invalid("kind", format!("expected `ppp` or `lattice`, got `{other}`"))),
        }
    }
}

/// A realised set of stations with Boolean coverage discs.
#[derive(Clone, Debug)]
pub struct StationField {
    positions: Vec<Point>,
    intensity: f64,
    coverage_radius: f64,
    window: Window,
    kind: StationKind,
    index: GridIndex,
}

impl StationField {
    pub fn new(
        positions: Vec<Point>,
        intensity: f64,
        coverage_radius: f64,
        window: Window,
        kind: StationKind,
    ) -> Result<Self> {
        ensure_positive("lambda_b", intensity)?;
        ensure_positive("coverage_radius", coverage_radius)?;
        if let Some(p) = positions.iter().find(|p| !window.contains_outer(**p)) {
            return Err(invalid(
                "positions",
                format!("station ({}, {}) lies outside the expanded window", p.x, p.y),
            ));
        }
        let index = GridIndex::build(
            &positions,
            window.outer_origin(),
            window.outer_width(),
            window.outer_height(),
            coverage_radius,
        );
        Ok(StationField {
            positions,
            intensity,
            coverage_radius,
            window,
            kind,
            index,
        })
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn intensity(&self) -> f64 {
        self.intensity
    }

    pub fn coverage_radius(&self) -> f64 {
        self.coverage_radius
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn kind(&self) -> StationKind {
        self.kind
    }

    /// Mean Voronoi cell area, `1 / λ_b`.
    pub fn mean_voronoi_area(&self) -> f64 {
        1.0 / self.intensity
    }

    /// Stations strictly within `radius` of `point`, nearest first, written
    /// into `out` as `(squared distance, index)` pairs. Equal distances are
    /// ordered by index.
    pub fn within_into(&self, point: Point, radius: f64, out: &mut Vec<(f64, usize)>) {
        out.clear();
        let r2 = radius * radius;
        self.index.for_each_near(point, radius, |i| {
            let d = self.positions[i].distance_sq(point);
            if d < r2 {
                out.push((d, i));
            }
        });
        if out.len() > 1 {
            out.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        }
    }

    /// Number of stations strictly within `radius` of `point`.
    pub fn count_within(&self, point: Point, radius: f64) -> usize {
        let r2 = radius * radius;
        let mut n = 0;
        self.index.for_each_near(point, radius, |i| {
            if self.positions[i].distance_sq(point) < r2 {
                n += 1;
            }
        });
        n
    }

    /// Indices of the stations whose coverage disc contains `point`,
    /// ascending by distance.
    pub fn covering_stations(&self, point: Point) -> Vec<usize> {
        let mut buf = Vec::new();
        self.within_into(point, self.coverage_radius, &mut buf);
        buf.into_iter().map(|(_, i)| i).collect()
    }

    /// The station whose Voronoi cell contains `point`; ties go to the lowest
    /// index.
    pub fn closest_station(&self, point: Point) -> Result<usize> {
        self.index.nearest(&self.positions, point).ok_or(Error::EmptyField)
    }
}

/// Homogeneous Poisson stations on the margin-expanded window.
pub fn sample_ppp_stations<R: Rng + ?Sized>(
    intensity: f64,
    coverage_radius: f64,
    window: Window,
    rng: &mut R,
) -> Result<StationField> {
    ensure_positive("lambda_b", intensity)?;
    let mean = intensity * window.outer_area();
    let count = Poisson::new(mean)
        .map_err(|e| invalid("lambda_b", e.to_string()))?
        .sample(rng) as usize;
    let positions = (0..count).map(|_| window.sample_outer(rng)).collect();
    StationField::new(positions, intensity, coverage_radius, window, StationKind::Ppp)
}

/// Lattice spacing `η = λ_b^{-1/2}`.
pub fn lattice_spacing(intensity: f64) -> f64 {
    intensity.powf(-0.5)
}

/// Square lattice with spacing `λ_b^{-1/2}`, translated by a uniform vector
/// in `[0, η)²`.
pub fn build_lattice_stations<R: Rng + ?Sized>(
    intensity: f64,
    coverage_radius: f64,
    window: Window,
    rng: &mut R,
) -> Result<StationField> {
    ensure_positive("lambda_b", intensity)?;
    let eta = lattice_spacing(intensity);
    let offset = Point::new(rng.random::<f64>() * eta, rng.random::<f64>() * eta);
    build_lattice_with_offset(intensity, coverage_radius, window, offset)
}

/// Lattice with an explicit translation; `offset` is reduced modulo `η`.
pub fn build_lattice_with_offset(
    intensity: f64,
    coverage_radius: f64,
    window: Window,
    offset: Point,
) -> Result<StationField> {
    ensure_positive("lambda_b", intensity)?;
    let eta = lattice_spacing(intensity);
    let ux = offset.x.rem_euclid(eta);
    let uy = offset.y.rem_euclid(eta);
    let origin = window.outer_origin();
    let axis = |lo: f64, len: f64, u: f64| -> Vec<f64> {
        let first = ((lo - u) / eta).ceil() as i64;
        (first..)
            .map(|i| u + i as f64 * eta)
            .take_while(|&v| v < lo + len)
            .filter(|&v| v >= lo)
            .collect()
    };
    let xs = axis(origin.x, window.outer_width(), ux);
    let ys = axis(origin.y, window.outer_height(), uy);
    let positions = ys
        .iter()
        .flat_map(|&y| xs.iter().map(move |&x| Point::new(x, y)))
        .collect();
    StationField::new(positions, intensity, coverage_radius, window, StationKind::Lattice)
}

/// Dispatches on `kind`.
pub fn sample_stations<R: Rng + ?Sized>(
    kind: StationKind,
    intensity: f64,
    coverage_radius: f64,
    window: Window,
    rng: &mut R,
) -> Result<StationField> {
    match kind {
        StationKind::Ppp => sample_ppp_stations(intensity, coverage_radius, window, rng),
        StationKind::Lattice => build_lattice_stations(intensity, coverage_radius, window, rng),
    }
}
