//! Carbon intensity of generated electricity per spatial unit and time
//! bucket, with generation-weighted aggregation across granularities.

mod bucket;

pub use bucket::{BucketKind, SeasonConvention, TimeBucket};

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{EmissionFactorTable, EnergySource, GenerationDataset, RegionId, RegionRegistry};

/// Per-source generation of one bucket, in kWh.
pub type EnergyMix = BTreeMap<EnergySource, f64>;

/// How to pool carbon intensity across several spatial units.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum WeightMode {
    /// Generation-weighted pooling, equivalent to merging the mixes.
    #[default]
    Weighted,
    /// Arithmetic mean of the per-unit intensities.
    Unweighted,
}

impl WeightMode {
    pub fn parse(s: &str) -> Option<WeightMode> {
        match s {
            "weighted" => Some(WeightMode::Weighted),
            "unweighted" => Some(WeightMode::Unweighted),
            _ => None,
        }
    }
}

/// Carbon intensity of a generation mix in g CO2 per kWh: total emissions
/// over total generation, a convex combination of the per-source factors.
pub fn carbon_intensity(mix: &EnergyMix, factors: &EmissionFactorTable) -> Result<f64> {
    let mut emissions = 0.0;
    let mut total = 0.0;
    for (&source, &energy) in mix {
        if !energy.is_finite() || energy < 0.0 {
            return Err(Error::NegativeEnergy(source));
        }
        emissions += factors.factor(source) * energy;
        total += energy;
    }
    if total <= 0.0 {
        return Err(Error::NoGeneration);
    }
    Ok(emissions / total)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntensityPoint {
    pub bucket: TimeBucket,
    pub ci_g_per_kwh: f64,
    pub total_energy_kwh: f64,
}

/// Carbon intensity per time bucket for one spatial unit (region or zone).
/// Zero-generation buckets are never emitted; the intensity of an empty
/// mix is undefined, not zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntensitySeries {
    pub spatial_unit: String,
    pub kind: BucketKind,
    pub points: Vec<IntensityPoint>,
}

impl IntensitySeries {
    /// Re-bucket into a strictly coarser kind. The coarse intensity is the
    /// generation-weighted mean of the contained fine buckets, which equals
    /// the intensity of their pooled mix.
    pub fn aggregate(&self, to: BucketKind, convention: SeasonConvention) -> Result<IntensitySeries> {
        if to <= self.kind {
            return Err(Error::NotCoarser {
                from: self.kind,
                to,
            });
        }
        let mut groups: BTreeMap<(chrono::DateTime<chrono::Utc>, String), (TimeBucket, f64, f64)> =
            BTreeMap::new();
        for p in &self.points {
            let parent = p.bucket.parent(to, convention);
            let entry = groups
                .entry((parent.start, parent.key.clone()))
                .or_insert((parent, 0.0, 0.0));
            entry.1 += p.ci_g_per_kwh * p.total_energy_kwh;
            entry.2 += p.total_energy_kwh;
        }
        let points = groups
            .into_values()
            .filter(|(_, _, total)| *total > 0.0)
            .map(|(bucket, weighted, total)| IntensityPoint {
                bucket,
                ci_g_per_kwh: weighted / total,
                total_energy_kwh: total,
            })
            .collect();
        Ok(IntensitySeries {
            spatial_unit: self.spatial_unit.clone(),
            kind: to,
            points,
        })
    }

    /// Intensity and generation of the bucket keyed `key`, if present.
    pub fn point(&self, key: &str) -> Option<&IntensityPoint> {
        self.points.iter().find(|p| p.bucket.key == key)
    }

    /// CSV export: `spatial_unit,bucket_kind,bucket_key,ci_g_per_kwh,total_energy_kwh`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record([
            "spatial_unit",
            "bucket_kind",
            "bucket_key",
            "ci_g_per_kwh",
            "total_energy_kwh",
        ])
        .map_err(|e| Error::malformed("intensity csv", e))?;
        for p in &self.points {
            w.write_record([
                self.spatial_unit.as_str(),
                self.kind.label(),
                p.bucket.key.as_str(),
                &format!("{}", p.ci_g_per_kwh),
                &format!("{}", p.total_energy_kwh),
            ])
            .map_err(|e| Error::malformed("intensity csv", e))?;
        }
        w.flush().map_err(|e| Error::malformed("intensity csv", e))?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut writer: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut writer, self)
            .map_err(|e| Error::malformed("intensity json", e))?;
        writer
            .write_all(b"\n")
            .map_err(|e| Error::malformed("intensity json", e))?;
        Ok(())
    }
}

/// Partition a region's records into buckets of `kind` and sum the mixes.
///
/// Records are taken at the finest resolution present for the region, which
/// must be at least as fine as the bucket kind requires; mixing resolutions
/// of one region would double-count generation. Buckets come back in
/// chronological order; every record lands in the bucket containing its
/// interval start.
pub fn bucketize(
    dataset: &GenerationDataset,
    region: &RegionId,
    kind: BucketKind,
    convention: SeasonConvention,
) -> Result<Vec<(TimeBucket, EnergyMix)>> {
    let Some(resolution) = dataset.finest_resolution(region) else {
        return Ok(Vec::new());
    };
    if resolution > kind.required_resolution() {
        return Err(Error::ResolutionTooCoarse {
            have: resolution,
            need: kind.required_resolution(),
        });
    }
    let mut buckets: BTreeMap<(chrono::DateTime<chrono::Utc>, String), (TimeBucket, EnergyMix)> =
        BTreeMap::new();
    for (start, mix) in dataset.mixes(region, resolution) {
        let bucket = TimeBucket::containing(start, kind, convention);
        let entry = buckets
            .entry((bucket.start, bucket.key.clone()))
            .or_insert_with(|| (bucket, EnergyMix::new()));
        for (&source, &kwh) in mix {
            *entry.1.entry(source).or_insert(0.0) += kwh;
        }
    }
    Ok(buckets.into_values().collect())
}

/// Intensity series of one region at the requested granularity.
pub fn intensity_series(
    dataset: &GenerationDataset,
    region: &RegionId,
    kind: BucketKind,
    factors: &EmissionFactorTable,
    convention: SeasonConvention,
) -> Result<IntensitySeries> {
    let mut points = Vec::new();
    for (bucket, mix) in bucketize(dataset, region, kind, convention)? {
        let total: f64 = mix.values().sum();
        if total <= 0.0 {
            continue;
        }
        points.push(IntensityPoint {
            ci_g_per_kwh: carbon_intensity(&mix, factors)?,
            total_energy_kwh: total,
            bucket,
        });
    }
    Ok(IntensitySeries {
        spatial_unit: region.to_string(),
        kind,
        points,
    })
}

/// Intensity series of a treaty zone. `Weighted` pools all member
/// generation per bucket (equivalent to the union mix); `Unweighted`
/// averages the member intensities arithmetically. Every member must cover
/// every bucket the zone emits.
pub fn zone_intensity(
    dataset: &GenerationDataset,
    registry: &RegionRegistry,
    zone: &str,
    kind: BucketKind,
    factors: &EmissionFactorTable,
    convention: SeasonConvention,
    mode: WeightMode,
) -> Result<IntensitySeries> {
    let members = registry
        .zone_members(zone)
        .ok_or_else(|| Error::UnknownZone(zone.to_string()))?;

    let mut series = Vec::new();
    let mut missing = Vec::new();
    for member in members {
        match intensity_series(dataset, member, kind, factors, convention) {
            Ok(s) if s.points.is_empty() => missing.push(member.to_string()),
            Ok(s) => series.push(s),
            Err(Error::ResolutionTooCoarse { .. }) => missing.push(member.to_string()),
            Err(e) => return Err(e),
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingCoverage {
            zone: zone.to_string(),
            regions: missing,
        });
    }

    // Align member buckets; a member missing a bucket someone else has is a
    // coverage gap, not a zero.
    let mut groups: BTreeMap<(chrono::DateTime<chrono::Utc>, String), (TimeBucket, Vec<(f64, f64)>)> =
        BTreeMap::new();
    for s in &series {
        for p in &s.points {
            groups
                .entry((p.bucket.start, p.bucket.key.clone()))
                .or_insert_with(|| (p.bucket.clone(), Vec::new()))
                .1
                .push((p.ci_g_per_kwh, p.total_energy_kwh));
        }
    }
    let mut gaps = Vec::new();
    for s in &series {
        for (_, (bucket, contributions)) in &groups {
            if contributions.len() != series.len() && s.point(&bucket.key).is_none() {
                gaps.push(s.spatial_unit.clone());
                break;
            }
        }
    }
    if !gaps.is_empty() {
        gaps.sort();
        gaps.dedup();
        return Err(Error::MissingCoverage {
            zone: zone.to_string(),
            regions: gaps,
        });
    }

    let points = groups
        .into_values()
        .map(|(bucket, contributions)| {
            let total: f64 = contributions.iter().map(|(_, e)| e).sum();
            let ci = match mode {
                WeightMode::Weighted => {
                    contributions.iter().map(|(ci, e)| ci * e).sum::<f64>() / total
                }
                WeightMode::Unweighted => {
                    contributions.iter().map(|(ci, _)| ci).sum::<f64>()
                        / contributions.len() as f64
                }
            };
            IntensityPoint {
                bucket,
                ci_g_per_kwh: ci,
                total_energy_kwh: total,
            }
        })
        .collect();

    Ok(IntensitySeries {
        spatial_unit: zone.to_string(),
        kind,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{EnergyGenerationRecord, Resolution};

    fn factors() -> EmissionFactorTable {
        EmissionFactorTable::builtin()
    }

    fn mix(entries: &[(EnergySource, f64)]) -> EnergyMix {
        entries.iter().copied().collect()
    }

    fn rec(region: &str, ts: &str, res: Resolution, source: EnergySource, kwh: f64) -> EnergyGenerationRecord {
        EnergyGenerationRecord {
            region: region.into(),
            interval_start: ts.parse().unwrap(),
            interval_length: res,
            source,
            energy_kwh: kwh,
        }
    }

    #[test]
    fn pure_coal_hits_the_coal_factor() {
        let ci = carbon_intensity(&mix(&[(EnergySource::Coal, 1000.0)]), &factors()).unwrap();
        assert_eq!(ci, 760.0);
    }

    #[test]
    fn even_coal_wind_blend() {
        let ci = carbon_intensity(
            &mix(&[(EnergySource::Coal, 500.0), (EnergySource::Wind, 500.0)]),
            &factors(),
        )
        .unwrap();
        assert_eq!(ci, 380.0);
    }

    #[test]
    fn three_source_blend_matches_hand_arithmetic() {
        // (370*300 + 0*100 + 406*100) / 500
        let ci = carbon_intensity(
            &mix(&[
                (EnergySource::NaturalGas, 300.0),
                (EnergySource::Solar, 100.0),
                (EnergySource::Oil, 100.0),
            ]),
            &factors(),
        )
        .unwrap();
        assert!((ci - 303.2).abs() < 1e-12);
    }

    #[test]
    fn empty_and_negative_mixes_rejected() {
        assert!(matches!(
            carbon_intensity(&mix(&[(EnergySource::Wind, 0.0)]), &factors()),
            Err(Error::NoGeneration)
        ));
        assert!(matches!(
            carbon_intensity(&mix(&[(EnergySource::Wind, -1.0)]), &factors()),
            Err(Error::NegativeEnergy(EnergySource::Wind))
        ));
    }

    fn one_day_hourly(region: &str) -> GenerationDataset {
        let mut records = Vec::new();
        for h in 0..24 {
            let ts = format!("2021-01-28T{h:02}:00:00Z");
            records.push(rec(region, &ts, Resolution::Hour, EnergySource::Coal, 500.0));
            records.push(rec(region, &ts, Resolution::Hour, EnergySource::Wind, 500.0));
        }
        GenerationDataset::from_records(records, "test").unwrap()
    }

    #[test]
    fn day_bucket_sums_24_hours() {
        let ds = one_day_hourly("IE");
        let buckets = bucketize(&ds, &"IE".into(), BucketKind::Day, SeasonConvention::default()).unwrap();
        assert_eq!(buckets.len(), 1);
        let (bucket, m) = &buckets[0];
        assert_eq!(bucket.key, "2021-01-28");
        assert_eq!(m[&EnergySource::Coal], 12_000.0);
        assert_eq!(m[&EnergySource::Wind], 12_000.0);
    }

    #[test]
    fn season_buckets_split_by_meteorological_quarter() {
        let ds = GenerationDataset::from_records(
            [
                rec("IE", "2021-01-15T00:00:00Z", Resolution::Hour, EnergySource::Coal, 1.0),
                rec("IE", "2021-07-15T00:00:00Z", Resolution::Hour, EnergySource::Coal, 1.0),
            ],
            "test",
        )
        .unwrap();
        let buckets = bucketize(&ds, &"IE".into(), BucketKind::Season, SeasonConvention::default()).unwrap();
        let keys: Vec<_> = buckets.iter().map(|(b, _)| b.key.as_str()).collect();
        assert_eq!(keys, ["2021-winter", "2021-summer"]);
    }

    #[test]
    fn coarse_data_cannot_fill_fine_buckets() {
        let ds = GenerationDataset::from_records(
            [rec("IE", "2021-01-01T00:00:00Z", Resolution::Year, EnergySource::Coal, 1.0)],
            "test",
        )
        .unwrap();
        let err = bucketize(&ds, &"IE".into(), BucketKind::Day, SeasonConvention::default()).unwrap_err();
        assert_eq!(err.to_string(), "resolution: have year, need \u{2264} day");
    }

    #[test]
    fn series_of_single_day() {
        let ds = one_day_hourly("IE");
        let s = intensity_series(&ds, &"IE".into(), BucketKind::Day, &factors(), SeasonConvention::default()).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].ci_g_per_kwh, 380.0);
        assert_eq!(s.points[0].total_energy_kwh, 24_000.0);
    }

    #[test]
    fn yearly_blend_calibrated_to_taiwan_2022() {
        // coal 561 of 760 total puts the annual intensity at 561 g/kWh
        let ds = GenerationDataset::from_records(
            [
                rec("Taiwan", "2022-01-01T00:00:00Z", Resolution::Year, EnergySource::Coal, 561.0),
                rec("Taiwan", "2022-01-01T00:00:00Z", Resolution::Year, EnergySource::Wind, 199.0),
            ],
            "test",
        )
        .unwrap();
        let s = intensity_series(&ds, &"Taiwan".into(), BucketKind::Year, &factors(), SeasonConvention::default()).unwrap();
        assert!((s.points[0].ci_g_per_kwh - 561.0).abs() < 0.5);
    }

    #[test]
    fn missing_region_gives_empty_series() {
        let ds = GenerationDataset::empty();
        let s = intensity_series(&ds, &"IE".into(), BucketKind::Day, &factors(), SeasonConvention::default()).unwrap();
        assert!(s.points.is_empty());
    }

    fn series_of(points: &[(&str, f64, f64)], kind: BucketKind) -> IntensitySeries {
        IntensitySeries {
            spatial_unit: "X".to_string(),
            kind,
            points: points
                .iter()
                .map(|&(day, ci, kwh)| IntensityPoint {
                    bucket: TimeBucket::containing(
                        format!("{day}T00:00:00Z").parse().unwrap(),
                        kind,
                        SeasonConvention::default(),
                    ),
                    ci_g_per_kwh: ci,
                    total_energy_kwh: kwh,
                })
                .collect(),
        }
    }

    #[test]
    fn aggregation_is_a_weighted_mean() {
        let s = series_of(&[("2021-01-10", 380.0, 10.0), ("2021-02-10", 760.0, 30.0)], BucketKind::Day);
        let agg = s.aggregate(BucketKind::Season, SeasonConvention::default()).unwrap();
        assert_eq!(agg.points.len(), 1);
        assert_eq!(agg.points[0].bucket.key, "2021-winter");
        assert!((agg.points[0].ci_g_per_kwh - 665.0).abs() < 1e-12);
        assert_eq!(agg.points[0].total_energy_kwh, 40.0);
    }

    #[test]
    fn single_bucket_aggregation_is_identity() {
        let s = series_of(&[("2021-01-10", 123.45, 10.0)], BucketKind::Day);
        let agg = s.aggregate(BucketKind::Year, SeasonConvention::default()).unwrap();
        assert_eq!(agg.points[0].ci_g_per_kwh, 123.45);
    }

    #[test]
    fn aggregation_must_go_coarser() {
        let s = series_of(&[("2021-01-10", 1.0, 1.0)], BucketKind::Day);
        assert!(matches!(
            s.aggregate(BucketKind::Day, SeasonConvention::default()),
            Err(Error::NotCoarser { .. })
        ));
        assert!(matches!(
            s.aggregate(BucketKind::Hour, SeasonConvention::default()),
            Err(Error::NotCoarser { .. })
        ));
    }

    fn zone_fixture(gen_a: (f64, f64), gen_b: (f64, f64)) -> (GenerationDataset, RegionRegistry) {
        let ds = GenerationDataset::from_records(
            [
                rec("A", "2022-01-01T00:00:00Z", Resolution::Year, EnergySource::Coal, gen_a.0),
                rec("A", "2022-01-01T00:00:00Z", Resolution::Year, EnergySource::Wind, gen_a.1),
                rec("B", "2022-01-01T00:00:00Z", Resolution::Year, EnergySource::Coal, gen_b.0),
                rec("B", "2022-01-01T00:00:00Z", Resolution::Year, EnergySource::Wind, gen_b.1),
            ],
            "test",
        )
        .unwrap();
        let mut registry = RegionRegistry::new();
        for id in ["A", "B"] {
            registry.add_region(
                id.into(),
                crate::grid::RegionInfo {
                    name: id.to_string(),
                    country: id.to_string(),
                },
            );
        }
        registry.register_zone("Z", &["A".into(), "B".into()]).unwrap();
        registry.register_zone("JUST_A", &["A".into()]).unwrap();
        (ds, registry)
    }

    #[test]
    fn degenerate_zone_equals_member_series() {
        let (ds, registry) = zone_fixture((300.0, 460.0), (1500.0, 780.0));
        for mode in [WeightMode::Weighted, WeightMode::Unweighted] {
            let z = zone_intensity(&ds, &registry, "JUST_A", BucketKind::Year, &factors(), SeasonConvention::default(), mode).unwrap();
            let a = intensity_series(&ds, &"A".into(), BucketKind::Year, &factors(), SeasonConvention::default()).unwrap();
            assert_eq!(z.points[0].ci_g_per_kwh, a.points[0].ci_g_per_kwh);
            assert_eq!(z.points[0].total_energy_kwh, a.points[0].total_energy_kwh);
        }
    }

    #[test]
    fn equal_generation_makes_modes_agree() {
        // both members: 760 kWh total, intensities 300 and 500
        let (ds, registry) = zone_fixture((300.0, 460.0), (500.0, 260.0));
        let w = zone_intensity(&ds, &registry, "Z", BucketKind::Year, &factors(), SeasonConvention::default(), WeightMode::Weighted).unwrap();
        let u = zone_intensity(&ds, &registry, "Z", BucketKind::Year, &factors(), SeasonConvention::default(), WeightMode::Unweighted).unwrap();
        assert!((w.points[0].ci_g_per_kwh - 400.0).abs() < 1e-12);
        assert!((u.points[0].ci_g_per_kwh - 400.0).abs() < 1e-12);
    }

    #[test]
    fn one_to_three_generation_splits_modes() {
        // A: ci 300 over 760 kWh; B: ci 500 over 2280 kWh
        let (ds, registry) = zone_fixture((300.0, 460.0), (1500.0, 780.0));
        let w = zone_intensity(&ds, &registry, "Z", BucketKind::Year, &factors(), SeasonConvention::default(), WeightMode::Weighted).unwrap();
        let u = zone_intensity(&ds, &registry, "Z", BucketKind::Year, &factors(), SeasonConvention::default(), WeightMode::Unweighted).unwrap();
        assert!((w.points[0].ci_g_per_kwh - 450.0).abs() < 1e-12);
        assert!((u.points[0].ci_g_per_kwh - 400.0).abs() < 1e-12);
    }

    #[test]
    fn missing_member_coverage_names_regions() {
        let ds = GenerationDataset::from_records(
            [
                rec("A", "2022-01-01T00:00:00Z", Resolution::Year, EnergySource::Coal, 1.0),
            ],
            "test",
        )
        .unwrap();
        let mut registry = RegionRegistry::new();
        for id in ["A", "B"] {
            registry.add_region(
                id.into(),
                crate::grid::RegionInfo { name: id.into(), country: id.into() },
            );
        }
        registry.register_zone("Z", &["A".into(), "B".into()]).unwrap();
        let err = zone_intensity(&ds, &registry, "Z", BucketKind::Year, &factors(), SeasonConvention::default(), WeightMode::Weighted).unwrap_err();
        assert_eq!(err.to_string(), "zone Z: missing coverage for regions [B]");
    }
}
