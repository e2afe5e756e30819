use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::CacheInventory;
use crate::error::{invalid, Result};
use crate::geometry::{Point, StationField};
use crate::traffic::{Catalogue, ObjectId};

#[derive(Clone, Copy, Debug)]
struct Candidate {
    gain: f64,
    station: u32,
    object: u32,
}

// max-heap on gain; ties go to the lowest (station, object)
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.station.cmp(&self.station))
            .then_with(|| other.object.cmp(&self.object))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

/// Compressed adjacency: row `r` is `items[starts[r]..starts[r + 1]]`.
struct Csr {
    starts: Vec<usize>,
    items: Vec<u32>,
}

impl Csr {
    fn row(&self, r: usize) -> &[u32] {
        &self.items[self.starts[r]..self.starts[r + 1]]
    }

    fn from_rows(rows: impl Iterator<Item = Vec<u32>>) -> Self {
        let mut starts = vec![0];
        let mut items = Vec::new();
        for row in rows {
            items.extend(row);
            starts.push(items.len());
        }
        Csr { starts, items }
    }
}

/// Greedy static placement with full knowledge of stations and (probe)
/// user positions.
///
/// Each step adds the (station, object) pair with the largest gain in
/// `Σ_probes a_j · 1{j becomes reachable at the probe}` until every cache
/// holds `K` objects. Gains only shrink as caches fill, so stale heap entries
/// are re-scored lazily on pop.
pub fn gfi_place(
    field: &StationField,
    probes: &[Point],
    catalogue: &Catalogue,
    k: usize,
) -> Result<Vec<CacheInventory>> {
    let f = catalogue.len();
    let s_count = field.len();
    if probes.is_empty() {
        return Err(invalid("probes", "need at least one probe point"));
    }
    if k == 0 || k > f {
        return Err(invalid("k", format!("need 1 <= K <= F = {f}, got {k}")));
    }
    let a = catalogue.popularities();

    let covering = Csr::from_rows(
        probes
            .iter()
            .map(|&p| field.covering_stations(p).into_iter().map(|s| s as u32).collect()),
    );
    let mut members = vec![Vec::new(); s_count];
    for p in 0..probes.len() {
        for &s in covering.row(p) {
            members[s as usize].push(p as u32);
        }
    }
    let members = Csr::from_rows(members.into_iter());

    // count[s * F + j]: probes in s's disc where j is not reachable yet
    let mut count = Vec::with_capacity(s_count * f);
    for s in 0..s_count {
        let n = members.row(s).len() as u32;
        count.extend(std::iter::repeat_n(n, f));
    }
    let mut reachable: Vec<Vec<u64>> = vec![Vec::new(); f];
    let words = probes.len().div_ceil(64);

    let mut heap: BinaryHeap<Candidate> = (0..s_count)
        .flat_map(|s| {
            let n = members.row(s).len() as f64;
            (0..f).map(move |j| Candidate {
                gain: a[j] * n,
                station: s as u32,
                object: j as u32,
            })
        })
        .collect();

    let mut chosen: Vec<Vec<ObjectId>> = vec![Vec::with_capacity(k); s_count];
    let mut open = s_count;
    while open > 0 {
        let Some(top) = heap.pop() else { break };
        let (s, j) = (top.station as usize, top.object as usize);
        if chosen[s].len() == k {
            continue;
        }
        let gain = a[j] * count[s * f + j] as f64;
        if gain != top.gain {
            heap.push(Candidate { gain, ..top });
            continue;
        }
        chosen[s].push(ObjectId::from(j));
        if chosen[s].len() == k {
            open -= 1;
        }
        let bits = &mut reachable[j];
        if bits.is_empty() {
            bits.resize(words, 0);
        }
        for &p in members.row(s) {
            let (w, mask) = (p as usize / 64, 1u64 << (p % 64));
            if bits[w] & mask == 0 {
                bits[w] |= mask;
                for &t in covering.row(p as usize) {
                    count[t as usize * f + j] -= 1;
                }
            }
        }
    }
    chosen
        .into_iter()
        .map(|objects| CacheInventory::from_objects(k, objects))
        .collect()
}

/// Mean over probe points of the popularity mass reachable from the caches
/// covering each probe.
pub fn placement_objective(
    field: &StationField,
    probes: &[Point],
    catalogue: &Catalogue,
    caches: &[CacheInventory],
) -> f64 {
    if probes.is_empty() {
        return 0.0;
    }
    let a = catalogue.popularities();
    let mut seen = vec![false; a.len()];
    let mut touched = Vec::new();
    let mut total = 0.0;
    for &p in probes {
        for s in field.covering_stations(p) {
            for o in caches[s].iter() {
                if let Some(flag) = seen.get_mut(o.index()) {
                    if !*flag {
                        *flag = true;
                        touched.push(o.index());
                        total += a[o.index()];
                    }
                }
            }
        }
        for j in touched.drain(..) {
            seen[j] = false;
        }
    }
    total / probes.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{StationKind, Window};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(points: &[(f64, f64)], radius: f64) -> StationField {
        let window = Window::new(10.0, 10.0, 0.0).unwrap();
        let pts = points.iter().map(|&(x, y)| Point::new(x, y)).collect();
        StationField::new(pts, 0.5, radius, window, StationKind::Ppp).unwrap()
    }

    fn probes(n: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Window::new(10.0, 10.0, 0.0).unwrap();
        (0..n).map(|_| w.sample_inner(&mut rng)).collect()
    }

    #[test]
    fn isolated_station_gets_top_k() {
        let cat = Catalogue::zipf(20, 0.8).unwrap();
        let f = field(&[(5.0, 5.0)], 1.0);
        let caches = gfi_place(&f, &probes(2000, 1), &cat, 4).unwrap();
        let mut got: Vec<u32> = caches[0].iter().map(|o| o.0).collect();
        got.sort_unstable();
        assert_eq!(got, vec![0, 1, 2, 3]);
    }

    #[test]
    fn overlapping_pair_diversifies() {
        let cat = Catalogue::zipf(5, 1.0).unwrap();
        let f = field(&[(5.0, 5.0), (5.0, 5.0)], 2.0);
        let caches = gfi_place(&f, &probes(2000, 2), &cat, 1).unwrap();
        assert_eq!(caches[0].to_vec(), vec![ObjectId(0)]);
        assert_eq!(caches[1].to_vec(), vec![ObjectId(1)]);
    }

    #[test]
    fn station_without_probes_still_fills() {
        let cat = Catalogue::zipf(10, 0.8).unwrap();
        let f = field(&[(5.0, 5.0), (9.9, 9.9)], 0.05);
        let pts = vec![Point::new(5.0, 5.0)];
        let caches = gfi_place(&f, &pts, &cat, 3).unwrap();
        assert!(caches.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn greedy_beats_lfu() {
        let cat = Catalogue::zipf(200, 0.78).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let window = Window::new(10.0, 10.0, 0.0).unwrap();
        let stations = crate::geometry::sample_ppp_stations(0.5, 1.6, window, &mut rng).unwrap();
        let pts = probes(5000, 4);
        let greedy = gfi_place(&stations, &pts, &cat, 5).unwrap();
        let lfu = vec![super::super::lfu_fill(&cat, 5).unwrap(); stations.len()];
        let g = placement_objective(&stations, &pts, &cat, &greedy);
        let l = placement_objective(&stations, &pts, &cat, &lfu);
        assert!(g >= l, "greedy {g} < lfu {l}");
    }

    #[test]
    fn rejects_empty_probe_set() {
        let cat = Catalogue::zipf(10, 0.8).unwrap();
        let f = field(&[(5.0, 5.0)], 1.0);
        assert!(gfi_place(&f, &[], &cat, 1).is_err());
    }
}
