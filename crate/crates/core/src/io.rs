//! File formats: CSV tables (`.` decimals, LF line endings) and JSON
//! documents written atomically.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{CoverageProfile, StationField, StationKind, Window};
use crate::policies::CacheInventory;
use crate::traffic::{Catalogue, RequestStream};

fn writer<W: Write>(sink: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink)
}

/// Serialises `rows` as CSV with a header line.
pub fn write_csv_to<W: Write, T: Serialize>(sink: W, rows: &[T]) -> Result<()> {
    let mut w = writer(sink);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut buf = Vec::new();
    write_csv_to(&mut buf, rows)?;
    write_atomic(path, &buf)
}

pub fn read_csv<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r.deserialize().collect::<std::result::Result<Vec<T>, _>>()?;
    Ok(rows)
}

/// Writes via a sibling temporary file and a rename, so readers never see
/// a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

/// One row of a simulation table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationRow {
    pub sweep_value: f64,
    #[serde(rename = "N_bs_mean")]
    pub n_bs_mean: f64,
    pub policy: String,
    pub p_hit_mean: f64,
    pub ci95: f64,
    pub n_replications: usize,
    pub seed: u64,
}

/// One row of an analytical table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRow {
    pub sweep_value: f64,
    pub policy: String,
    pub p_hit: f64,
    /// Characteristic time; empty for formulas without one, `inf` when the
    /// catalogue fits.
    pub t_c: Option<f64>,
}

#[derive(Serialize)]
struct StationRow {
    index: usize,
    x: f64,
    y: f64,
}

/// Metadata stored next to a station CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationHeader {
    pub lambda_b: f64,
    pub radius: f64,
    pub kind: StationKind,
    pub window: Window,
    pub seed: Option<u64>,
}

/// `index,x,y` table plus a JSON header at `<csv path>.json`.
pub fn write_stations(path: &Path, field: &StationField, seed: Option<u64>) -> Result<()> {
    let rows: Vec<StationRow> = field
        .positions()
        .iter()
        .enumerate()
        .map(|(index, p)| StationRow { index, x: p.x, y: p.y })
        .collect();
    write_csv(path, &rows)?;
    let header = StationHeader {
        lambda_b: field.intensity(),
        radius: field.coverage_radius(),
        kind: field.kind(),
        window: *field.window(),
        seed,
    };
    let mut json = path.as_os_str().to_owned();
    json.push(".json");
    write_json(Path::new(&json), &header)
}

#[derive(Serialize)]
struct RequestRow {
    t: f64,
    x: f64,
    y: f64,
    object_id: u32,
}

pub fn write_stream(path: &Path, stream: &RequestStream) -> Result<()> {
    let rows: Vec<RequestRow> = stream
        .iter()
        .map(|r| RequestRow {
            t: r.time,
            x: r.location.x,
            y: r.location.y,
            object_id: r.object.0,
        })
        .collect();
    write_csv(path, &rows)
}

#[derive(Serialize)]
struct PopularityRow {
    rank: usize,
    popularity: f64,
}

/// `rank,popularity` with ranks from 1.
pub fn write_catalogue(path: &Path, catalogue: &Catalogue) -> Result<()> {
    let rows: Vec<PopularityRow> = catalogue
        .popularities()
        .iter()
        .enumerate()
        .map(|(i, &popularity)| PopularityRow {
            rank: i + 1,
            popularity,
        })
        .collect();
    write_csv(path, &rows)
}

#[derive(Serialize)]
struct InventoryRow {
    station: usize,
    rank: usize,
    object: u32,
}

/// `station,rank,object` with rank 0 at the MRU position.
pub fn write_inventories(path: &Path, caches: &[CacheInventory]) -> Result<()> {
    let rows: Vec<InventoryRow> = caches
        .iter()
        .enumerate()
        .flat_map(|(station, c)| {
            c.iter().enumerate().map(move |(rank, o)| InventoryRow {
                station,
                rank,
                object: o.0,
            })
        })
        .collect();
    write_csv(path, &rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub m: usize,
    pub p_m: f64,
}

pub fn profile_rows(profile: &CoverageProfile) -> Vec<ProfileRow> {
    profile
        .pmf()
        .iter()
        .enumerate()
        .map(|(m, &p_m)| ProfileRow { m, p_m })
        .collect()
}
