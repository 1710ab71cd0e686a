//! Spatial-temporal embodied carbon: bind a hardware model to intensity
//! series at a supported (spatial, temporal) granularity cell and compare
//! the result against the global-yearly baseline.
//!
//! Supported cells and their short codes:
//!
//! | spatial      | day | season | year |
//! |--------------|-----|--------|------|
//! | country      | cd  | cs     | -    |
//! | treaty_zone  | -   | -      | zy   |
//! | global       | -   | -      | gy   |

use std::collections::BTreeSet;
use std::io::Write;

use chrono::{DateTime, Utc};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{EmissionFactorTable, GenerationDataset, RegionId, RegionRegistry};
use crate::hardware::HardwareModel;
use crate::intensity::{
    intensity_series, zone_intensity, BucketKind, IntensitySeries, SeasonConvention, TimeBucket,
    WeightMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpatialLevel {
    Country,
    TreatyZone,
    Global,
}

impl SpatialLevel {
    pub fn label(self) -> &'static str {
        match self {
            SpatialLevel::Country => "country",
            SpatialLevel::TreatyZone => "treaty_zone",
            SpatialLevel::Global => "global",
        }
    }
}

impl std::fmt::Display for SpatialLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A supported granularity cell bound to concrete spatial units and an
/// optional period filter (half-open, by bucket start).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GranularitySpec {
    pub spatial: SpatialLevel,
    pub temporal: BucketKind,
    pub units: Vec<String>,
    pub period: Option<(DateTime<Utc>, DateTime<Utc>)>,
}

impl GranularitySpec {
    pub fn new(
        spatial: SpatialLevel,
        temporal: BucketKind,
        units: Vec<String>,
        period: Option<(DateTime<Utc>, DateTime<Utc>)>,
    ) -> Result<Self> {
        match (spatial, temporal) {
            (SpatialLevel::Country, BucketKind::Day)
            | (SpatialLevel::Country, BucketKind::Season)
            | (SpatialLevel::TreatyZone, BucketKind::Year)
            | (SpatialLevel::Global, BucketKind::Year) => {}
            _ => return Err(Error::UnsupportedGranularity { spatial, temporal }),
        }
        if units.is_empty() {
            return Err(Error::InvalidInput("no spatial units given".to_string()));
        }
        Ok(GranularitySpec {
            spatial,
            temporal,
            units,
            period,
        })
    }

    /// Short model code: cd, cs, zy or gy.
    pub fn code(&self) -> &'static str {
        match (self.spatial, self.temporal) {
            (SpatialLevel::Country, BucketKind::Day) => "cd",
            (SpatialLevel::Country, _) => "cs",
            (SpatialLevel::TreatyZone, _) => "zy",
            (SpatialLevel::Global, _) => "gy",
        }
    }

    pub fn from_code(
        code: &str,
        units: Vec<String>,
        period: Option<(DateTime<Utc>, DateTime<Utc>)>,
    ) -> Result<Self> {
        let (spatial, temporal) = match code {
            "cd" => (SpatialLevel::Country, BucketKind::Day),
            "cs" => (SpatialLevel::Country, BucketKind::Season),
            "zy" => (SpatialLevel::TreatyZone, BucketKind::Year),
            "gy" => (SpatialLevel::Global, BucketKind::Year),
            other => {
                return Err(Error::InvalidInput(format!(
                    "unsupported granularity: {other}; expected one of cd, cs, zy, gy"
                )))
            }
        };
        GranularitySpec::new(spatial, temporal, units, period)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StecPoint {
    pub unit: String,
    pub bucket: TimeBucket,
    pub ci_g_per_kwh: f64,
    pub embodied: f64,
}

/// Embodied carbon of one hardware model per (unit, bucket).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StecSeries {
    pub hardware: String,
    pub unit_of_measure: String,
    pub model: String,
    pub points: Vec<StecPoint>,
}

impl StecSeries {
    /// CSV export: `unit,bucket_key,embodied,unit_of_measure`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["unit", "bucket_key", "embodied", "unit_of_measure"])
            .map_err(|e| Error::malformed("stec csv", e))?;
        for p in &self.points {
            w.write_record([
                p.unit.as_str(),
                p.bucket.key.as_str(),
                &format!("{}", p.embodied),
                self.unit_of_measure.as_str(),
            ])
            .map_err(|e| Error::malformed("stec csv", e))?;
        }
        w.flush().map_err(|e| Error::malformed("stec csv", e))?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut writer: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut writer, self)
            .map_err(|e| Error::malformed("stec json", e))?;
        writer
            .write_all(b"\n")
            .map_err(|e| Error::malformed("stec json", e))?;
        Ok(())
    }
}

/// Intensity series for one spatial unit of a granularity: a region at
/// country level, a registered zone (generation-pooled) at zone level.
fn unit_intensity(
    spatial: SpatialLevel,
    unit: &str,
    kind: BucketKind,
    dataset: &GenerationDataset,
    registry: &RegionRegistry,
    factors: &EmissionFactorTable,
    convention: SeasonConvention,
) -> Result<IntensitySeries> {
    match spatial {
        SpatialLevel::Country | SpatialLevel::Global => {
            intensity_series(dataset, &RegionId::from(unit), kind, factors, convention)
        }
        SpatialLevel::TreatyZone => zone_intensity(
            dataset,
            registry,
            unit,
            kind,
            factors,
            convention,
            WeightMode::Weighted,
        ),
    }
}

fn in_period(bucket: &TimeBucket, period: &Option<(DateTime<Utc>, DateTime<Utc>)>) -> bool {
    match period {
        Some((start, end)) => bucket.start >= *start && bucket.start < *end,
        None => true,
    }
}

/// Evaluate a hardware model at a granularity cell: one point per
/// (unit, bucket), each recomputable as `model.embodied(ci)` of the
/// corresponding intensity bucket.
///
/// At the global cell the units are pooled per year bucket with the
/// unweighted mean of their intensities, matching the default baseline.
pub fn evaluate(
    model: &HardwareModel,
    granularity: &GranularitySpec,
    dataset: &GenerationDataset,
    registry: &RegionRegistry,
    factors: &EmissionFactorTable,
    convention: SeasonConvention,
) -> Result<StecSeries> {
    let mut points = Vec::new();
    if granularity.spatial == SpatialLevel::Global {
        let mut per_year: std::collections::BTreeMap<String, (TimeBucket, Vec<f64>)> =
            Default::default();
        for unit in &granularity.units {
            let series = unit_intensity(
                SpatialLevel::Global,
                unit,
                granularity.temporal,
                dataset,
                registry,
                factors,
                convention,
            )?;
            for p in series.points.iter().filter(|p| in_period(&p.bucket, &granularity.period)) {
                per_year
                    .entry(p.bucket.key.clone())
                    .or_insert_with(|| (p.bucket.clone(), Vec::new()))
                    .1
                    .push(p.ci_g_per_kwh);
            }
        }
        for (_, (bucket, cis)) in per_year {
            if cis.len() != granularity.units.len() {
                continue; // a unit lacks this year; never impute
            }
            let ci = cis.iter().sum::<f64>() / cis.len() as f64;
            points.push(StecPoint {
                unit: "global".to_string(),
                bucket,
                ci_g_per_kwh: ci,
                embodied: model.embodied(ci),
            });
        }
    } else {
        for unit in &granularity.units {
            let series = unit_intensity(
                granularity.spatial,
                unit,
                granularity.temporal,
                dataset,
                registry,
                factors,
                convention,
            )?;
            for p in series.points.iter().filter(|p| in_period(&p.bucket, &granularity.period)) {
                points.push(StecPoint {
                    unit: unit.clone(),
                    bucket: p.bucket.clone(),
                    ci_g_per_kwh: p.ci_g_per_kwh,
                    embodied: model.embodied(p.ci_g_per_kwh),
                });
            }
        }
    }
    Ok(StecSeries {
        hardware: model.label(),
        unit_of_measure: model.unit().to_string(),
        model: granularity.code().to_string(),
        points,
    })
}

/// Global-yearly baseline embodied value over the given units for one year.
///
/// Unweighted (the default) evaluates the model at the arithmetic mean of
/// the unit annual intensities; weighted uses the generation-pooled
/// intensity instead. With affine models the unweighted baseline over two
/// units is exactly the midpoint of their embodied values.
pub fn baseline_gy(
    model: &HardwareModel,
    dataset: &GenerationDataset,
    registry: &RegionRegistry,
    units: &[String],
    year: i32,
    factors: &EmissionFactorTable,
    convention: SeasonConvention,
    mode: WeightMode,
) -> Result<f64> {
    if units.is_empty() {
        return Err(Error::InvalidInput("no spatial units given".to_string()));
    }
    let key = year.to_string();
    let mut contributions = Vec::new();
    for unit in units {
        let spatial = if registry.zone_members(unit).is_some() {
            SpatialLevel::TreatyZone
        } else {
            SpatialLevel::Country
        };
        let series = unit_intensity(
            spatial,
            unit,
            BucketKind::Year,
            dataset,
            registry,
            factors,
            convention,
        )?;
        let point = series
            .point(&key)
            .ok_or_else(|| Error::MissingYear {
                unit: unit.clone(),
                year,
            })?;
        contributions.push((point.ci_g_per_kwh, point.total_energy_kwh));
    }
    let ci = match mode {
        WeightMode::Unweighted => {
            contributions.iter().map(|(ci, _)| ci).sum::<f64>() / contributions.len() as f64
        }
        WeightMode::Weighted => {
            let total: f64 = contributions.iter().map(|(_, e)| e).sum();
            contributions.iter().map(|(ci, e)| ci * e).sum::<f64>() / total
        }
    };
    Ok(model.embodied(ci))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonPoint {
    pub unit: String,
    pub bucket_key: String,
    pub value: f64,
    pub diff_pct: f64,
}

/// Average and maximum relative differences of a series against a baseline
/// value, in percent. `coverage` is the filled fraction of the
/// (unit x bucket key) grid the series spans; missing points are excluded
/// from the averages, never imputed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub hardware: String,
    pub model: String,
    pub baseline: f64,
    pub avg_diff_pct: f64,
    pub max_diff_pct: f64,
    pub coverage: f64,
    pub per_point: Vec<ComparisonPoint>,
}

pub fn compare(series: &StecSeries, baseline: f64) -> Result<ComparisonReport> {
    if series.points.is_empty() {
        return Err(Error::EmptySeries);
    }
    if !baseline.is_finite() || baseline <= 0.0 {
        return Err(Error::NonPositiveBaseline(baseline));
    }
    let per_point: Vec<ComparisonPoint> = series
        .points
        .iter()
        .map(|p| ComparisonPoint {
            unit: p.unit.clone(),
            bucket_key: p.bucket.key.clone(),
            value: p.embodied,
            diff_pct: (p.embodied - baseline).abs() / baseline * 100.0,
        })
        .collect();
    let avg = per_point.iter().map(|p| p.diff_pct).sum::<f64>() / per_point.len() as f64;
    let max = per_point.iter().map(|p| p.diff_pct).fold(0.0, f64::max);
    let units: BTreeSet<_> = per_point.iter().map(|p| &p.unit).collect();
    let keys: BTreeSet<_> = per_point.iter().map(|p| &p.bucket_key).collect();
    Ok(ComparisonReport {
        hardware: series.hardware.clone(),
        model: series.model.clone(),
        baseline,
        avg_diff_pct: avg,
        max_diff_pct: max,
        coverage: per_point.len() as f64 / (units.len() * keys.len()) as f64,
        per_point,
    })
}

/// Summary CSV in the table layout `hardware,avg_diff_pct,max_diff_pct`,
/// two decimals, plus an `average` row when several reports are given.
pub fn write_comparison_summary_csv<W: Write>(
    reports: &[ComparisonReport],
    writer: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["hardware", "avg_diff_pct", "max_diff_pct"])
        .map_err(|e| Error::malformed("comparison csv", e))?;
    for r in reports {
        w.write_record([
            r.hardware.as_str(),
            &format!("{:.2}", r.avg_diff_pct),
            &format!("{:.2}", r.max_diff_pct),
        ])
        .map_err(|e| Error::malformed("comparison csv", e))?;
    }
    if reports.len() > 1 {
        let n = reports.len() as f64;
        let avg = reports.iter().map(|r| r.avg_diff_pct).sum::<f64>() / n;
        let max = reports.iter().map(|r| r.max_diff_pct).sum::<f64>() / n;
        w.write_record(["average", &format!("{avg:.2}"), &format!("{max:.2}")])
            .map_err(|e| Error::malformed("comparison csv", e))?;
    }
    w.flush().map_err(|e| Error::malformed("comparison csv", e))?;
    Ok(())
}

pub fn write_comparison_json<W: Write>(reports: &[ComparisonReport], mut writer: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, reports)
        .map_err(|e| Error::malformed("comparison json", e))?;
    writer
        .write_all(b"\n")
        .map_err(|e| Error::malformed("comparison json", e))?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
}

/// Least-squares affine fit of (ci, embodied) pairs. A negative slope flags
/// values that cannot come from a single calibrated hardware model.
pub fn affine_consistency_check(points: &[(f64, f64)]) -> Result<AffineFit> {
    let distinct: BTreeSet<_> = points.iter().map(|(ci, _)| ci.to_bits()).collect();
    if points.len() < 2 || distinct.len() < 2 {
        return Err(Error::DegenerateFit);
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let max_residual = points
        .iter()
        .map(|(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0, f64::max);
    Ok(AffineFit {
        slope,
        intercept,
        max_residual,
    })
}
