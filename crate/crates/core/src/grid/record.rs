use std::collections::BTreeMap;
use std::io::Write;

use chrono::{DateTime, Months, TimeDelta, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::EnergySource;

/// Interval length of an ingested observation.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Resolution {
    Hour,
    Day,
    Month,
    Year,
}

impl Resolution {
    pub const ALL: [Resolution; 4] = [
        Resolution::Hour,
        Resolution::Day,
        Resolution::Month,
        Resolution::Year,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Resolution::Hour => "hour",
            Resolution::Day => "day",
            Resolution::Month => "month",
            Resolution::Year => "year",
        }
    }

    pub fn parse(s: &str) -> Option<Resolution> {
        Resolution::ALL.iter().copied().find(|r| r.label() == s)
    }

    /// End of the interval beginning at `start`. Months and years follow the
    /// calendar rather than a fixed duration.
    pub fn interval_end(self, start: DateTime<Utc>) -> DateTime<Utc> {
        match self {
            Resolution::Hour => start + TimeDelta::hours(1),
            Resolution::Day => start + TimeDelta::days(1),
            Resolution::Month => start
                .checked_add_months(Months::new(1))
                .unwrap_or(DateTime::<Utc>::MAX_UTC),
            Resolution::Year => start
                .checked_add_months(Months::new(12))
                .unwrap_or(DateTime::<Utc>::MAX_UTC),
        }
    }
}

impl std::fmt::Display for Resolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Region identifier as it appears in ingested data, e.g. `IE` or `Taiwan`.
#[derive(
    Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct RegionId(String);

impl RegionId {
    pub fn new(id: impl Into<String>) -> Self {
        RegionId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for RegionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for RegionId {
    fn from(s: &str) -> Self {
        RegionId(s.to_string())
    }
}

impl From<String> for RegionId {
    fn from(s: String) -> Self {
        RegionId(s)
    }
}

/// One (region, interval, source, energy) observation, the atom of ingestion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyGenerationRecord {
    pub region: RegionId,
    pub interval_start: DateTime<Utc>,
    pub interval_length: Resolution,
    pub source: EnergySource,
    pub energy_kwh: f64,
}

type SourceMix = BTreeMap<EnergySource, f64>;
type RegionData = BTreeMap<Resolution, BTreeMap<DateTime<Utc>, SourceMix>>;

/// Validated, immutable collection of generation records.
///
/// Uniqueness of (region, interval start, interval length, source) is
/// structural; intervals of one (region, resolution) are checked to be
/// non-overlapping at construction. Safe to share across threads for reads.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GenerationDataset {
    data: BTreeMap<RegionId, RegionData>,
    provenance: Vec<String>,
}

impl GenerationDataset {
    pub fn empty() -> Self {
        GenerationDataset::default()
    }

    pub fn from_records(
        records: impl IntoIterator<Item = EnergyGenerationRecord>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let mut ds = GenerationDataset {
            data: BTreeMap::new(),
            provenance: vec![provenance.into()],
        };
        for r in records {
            ds.insert(r)?;
        }
        ds.check_overlaps()?;
        Ok(ds)
    }

    pub(crate) fn insert(&mut self, r: EnergyGenerationRecord) -> Result<()> {
        if !r.energy_kwh.is_finite() || r.energy_kwh < 0.0 {
            return Err(Error::InvalidInput(format!(
                "record ({}, {}, {}, {}): negative or non-finite energy",
                r.region, r.interval_start, r.interval_length, r.source
            )));
        }
        let slot = self
            .data
            .entry(r.region.clone())
            .or_default()
            .entry(r.interval_length)
            .or_default()
            .entry(r.interval_start)
            .or_default();
        if slot.insert(r.source, r.energy_kwh).is_some() {
            return Err(Error::InvalidInput(format!(
                "duplicate record for ({}, {}, {}, {})",
                r.region, r.interval_start, r.interval_length, r.source
            )));
        }
        Ok(())
    }

    pub(crate) fn check_overlaps(&self) -> Result<()> {
        for (region, by_res) in &self.data {
            for (&res, intervals) in by_res {
                let mut prev: Option<DateTime<Utc>> = None;
                for &start in intervals.keys() {
                    if let Some(prev_start) = prev {
                        if res.interval_end(prev_start) > start {
                            return Err(Error::InvalidInput(format!(
                                "region {region}: overlapping {res} intervals at {prev_start} and {start}"
                            )));
                        }
                    }
                    prev = Some(start);
                }
            }
        }
        Ok(())
    }

    /// Merge two datasets; duplicate (region, start, length, source) keys
    /// are rejected. Ingest files concurrently, then merge under one owner.
    pub fn merge(mut self, other: GenerationDataset) -> Result<GenerationDataset> {
        for r in other.records() {
            self.insert(r)?;
        }
        self.provenance.extend(other.provenance);
        self.check_overlaps()?;
        Ok(self)
    }

    pub fn records(&self) -> impl Iterator<Item = EnergyGenerationRecord> + '_ {
        self.data.iter().flat_map(|(region, by_res)| {
            by_res.iter().flat_map(move |(&res, intervals)| {
                intervals.iter().flat_map(move |(&start, mix)| {
                    let region = region.clone();
                    mix.iter().map(move |(&source, &energy)| EnergyGenerationRecord {
                        region: region.clone(),
                        interval_start: start,
                        interval_length: res,
                        source,
                        energy_kwh: energy,
                    })
                })
            })
        })
    }

    pub fn len(&self) -> usize {
        self.data
            .values()
            .flat_map(|by_res| by_res.values())
            .flat_map(|intervals| intervals.values())
            .map(|mix| mix.len())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn regions(&self) -> impl Iterator<Item = &RegionId> + '_ {
        self.data.keys()
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    /// Finest interval length present for a region.
    pub fn finest_resolution(&self, region: &RegionId) -> Option<Resolution> {
        self.data
            .get(region)
            .and_then(|by_res| by_res.keys().next().copied())
    }

    /// Temporal coverage span (first interval start, last interval end)
    /// across all records of a region.
    pub fn coverage(&self, region: &RegionId) -> Option<(DateTime<Utc>, DateTime<Utc>)> {
        let by_res = self.data.get(region)?;
        let mut span: Option<(DateTime<Utc>, DateTime<Utc>)> = None;
        for (&res, intervals) in by_res {
            for &start in intervals.keys() {
                let end = res.interval_end(start);
                span = Some(match span {
                    None => (start, end),
                    Some((s, e)) => (s.min(start), e.max(end)),
                });
            }
        }
        span
    }

    /// Per-interval source mixes of a region at one resolution, in
    /// chronological order.
    pub fn mixes(
        &self,
        region: &RegionId,
        resolution: Resolution,
    ) -> impl Iterator<Item = (DateTime<Utc>, &SourceMix)> + '_ {
        self.data
            .get(region)
            .and_then(|by_res| by_res.get(&resolution))
            .into_iter()
            .flat_map(|intervals| intervals.iter().map(|(&start, mix)| (start, mix)))
    }

    /// Total generation of one interval, the denominator of the intensity
    /// ratio: the sum over per-source energies.
    pub fn interval_total(
        &self,
        region: &RegionId,
        resolution: Resolution,
        start: DateTime<Utc>,
    ) -> Option<f64> {
        self.data
            .get(region)?
            .get(&resolution)?
            .get(&start)
            .map(|mix| mix.values().sum())
    }

    /// Serialize in the canonical CSV schema. Record order is
    /// (region, interval length, start, source); floats are written in the
    /// shortest form that parses back bit-exactly.
    pub fn write_canonical_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["region", "interval_start", "interval_length", "source", "energy_kwh"])
            .map_err(|e| Error::malformed("canonical csv", e))?;
        for r in self.records() {
            w.write_record([
                r.region.as_str(),
                &format_timestamp(r.interval_start),
                r.interval_length.label(),
                r.source.label(),
                &format!("{}", r.energy_kwh),
            ])
            .map_err(|e| Error::malformed("canonical csv", e))?;
        }
        w.flush().map_err(|e| Error::malformed("canonical csv", e))?;
        Ok(())
    }
}

pub(crate) fn format_timestamp(ts: DateTime<Utc>) -> String {
    ts.to_rfc3339_opts(chrono::SecondsFormat::AutoSi, true)
}
