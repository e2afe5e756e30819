use super::Point;

/// Uniform bucket grid over a rectangle; station lookups scan only the
/// buckets a query disc can touch.
#[derive(Clone, Debug)]
pub(crate) struct GridIndex {
    origin: Point,
    cell: f64,
    nx: usize,
    ny: usize,
    // CSR layout: bucket b holds items[starts[b]..starts[b + 1]]
    starts: Vec<u32>,
    items: Vec<u32>,
}

impl GridIndex {
    pub(crate) fn build(points: &[Point], origin: Point, width: f64, height: f64, cell: f64) -> Self {
        let cell = cell.max(1e-9);
        let nx = ((width / cell).ceil() as usize).max(1);
        let ny = ((height / cell).ceil() as usize).max(1);
        let mut grid = GridIndex {
            origin,
            cell,
            nx,
            ny,
            starts: vec![0; nx * ny + 1],
            items: vec![0; points.len()],
        };
        let buckets: Vec<usize> = points.iter().map(|p| grid.bucket_of(*p)).collect();
        for &b in &buckets {
            grid.starts[b + 1] += 1;
        }
        for b in 0..nx * ny {
            grid.starts[b + 1] += grid.starts[b];
        }
        let mut fill = grid.starts.clone();
        for (i, &b) in buckets.iter().enumerate() {
            grid.items[fill[b] as usize] = i as u32;
            fill[b] += 1;
        }
        grid
    }

    fn raw_cell(&self, p: Point) -> (i64, i64) {
        (
            ((p.x - self.origin.x) / self.cell).floor() as i64,
            ((p.y - self.origin.y) / self.cell).floor() as i64,
        )
    }

    fn bucket_of(&self, p: Point) -> usize {
        let (cx, cy) = self.raw_cell(p);
        let cx = cx.clamp(0, self.nx as i64 - 1) as usize;
        let cy = cy.clamp(0, self.ny as i64 - 1) as usize;
        cy * self.nx + cx
    }

    fn bucket(&self, cx: i64, cy: i64) -> Option<&[u32]> {
        if cx < 0 || cy < 0 || cx >= self.nx as i64 || cy >= self.ny as i64 {
            return None;
        }
        let b = cy as usize * self.nx + cx as usize;
        Some(&self.items[self.starts[b] as usize..self.starts[b + 1] as usize])
    }

    /// Calls `f(index)` for every stored point whose bucket intersects the
    /// square of half-side `radius` around `p`. Callers filter by distance.
    pub(crate) fn for_each_near(&self, p: Point, radius: f64, mut f: impl FnMut(usize)) {
        let (cx, cy) = self.raw_cell(p);
        let reach = (radius / self.cell).ceil() as i64;
        // Points outside the grid are clamped into edge buckets on insertion,
        // so the clamped neighbourhood must be scanned for them too.
        let lo_x = (cx - reach).max(0);
        let hi_x = (cx + reach).min(self.nx as i64 - 1);
        let lo_y = (cy - reach).max(0);
        let hi_y = (cy + reach).min(self.ny as i64 - 1);
        for y in lo_y..=hi_y {
            for x in lo_x..=hi_x {
                if let Some(items) = self.bucket(x, y) {
                    items.iter().for_each(|&i| f(i as usize));
                }
            }
        }
    }

    /// Nearest stored point by expanding rings of buckets. Ties go to the
    /// lowest index.
    pub(crate) fn nearest(&self, points: &[Point], p: Point) -> Option<usize> {
        if points.is_empty() {
            return None;
        }
        let (cx, cy) = self.raw_cell(p);
        let cx = cx.clamp(-1, self.nx as i64);
        let cy = cy.clamp(-1, self.ny as i64);
        let max_ring = self.nx.max(self.ny) as i64 + 2;
        let mut best: Option<(f64, usize)> = None;
        for ring in 0..=max_ring {
            for y in (cy - ring)..=(cy + ring) {
                for x in (cx - ring)..=(cx + ring) {
                    if (x - cx).abs() != ring && (y - cy).abs() != ring {
                        continue;
                    }
                    let Some(items) = self.bucket(x, y) else { continue };
                    for &i in items {
                        let i = i as usize;
                        let d = points[i].distance_sq(p);
                        best = match best {
                            Some((bd, bi)) if bd < d || (bd == d && bi < i) => Some((bd, bi)),
                            _ => Some((d, i)),
                        };
                    }
                }
            }
            if let Some((bd, _)) = best {
                // every bucket in ring + 1 is at least `ring * cell` away
                let guard = ring as f64 * self.cell;
                if bd.sqrt() <= guard {
                    break;
                }
            }
        }
        best.map(|(_, i)| i)
    }
}
