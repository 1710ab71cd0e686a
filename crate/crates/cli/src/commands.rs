use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Datelike, TimeZone, Utc};

use stec_core::grid::{EnergySource, GenerationDataset, RegionId};
use stec_core::hardware::HardwareModel;
use stec_core::intensity::{
    bucketize, intensity_series, zone_intensity, BucketKind, IntensitySeries, WeightMode,
};
use stec_core::stec::{
    baseline_gy, compare, evaluate, write_comparison_json, write_comparison_summary_csv,
    ComparisonReport, GranularitySpec,
};

use crate::config::Project;
use crate::CliError;

pub fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

/// Resolve `--out` against the project output directory and write the
/// bytes. Failures to create or write outputs are environment problems,
/// not data problems.
fn write_output(project: &Project, out: &Path, bytes: &[u8]) -> Result<PathBuf, CliError> {
    let path = if out.is_absolute() {
        out.to_path_buf()
    } else {
        project.output_dir.join(out)
    };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(internal)?;
        }
    }
    std::fs::write(&path, bytes).map_err(internal)?;
    Ok(path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Csv,
    Json,
}

fn format_of(out: &Path) -> Result<OutputFormat, CliError> {
    match out.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(OutputFormat::Csv),
        Some("json") => Ok(OutputFormat::Json),
        _ => Err(CliError::User(format!(
            "output path {} must end in .csv or .json",
            out.display()
        ))),
    }
}

pub fn cmd_ingest(project: &Project, lenient: bool, quiet: bool) -> Result<(), CliError> {
    let (dataset, summaries) = project.ingest(lenient)?;
    let mut warnings = 0usize;
    for s in &summaries {
        if !quiet {
            println!(
                "{}: schema={} records={} warnings={}",
                s.path.display(),
                s.schema.label(),
                s.records,
                s.warnings.len()
            );
            for (region, resolution, start, end) in &s.coverage {
                println!("  {region}: resolution={resolution} coverage={start}..{end}");
            }
            for w in &s.warnings {
                println!("  warning: {w}");
            }
        }
        warnings += s.warnings.len();
    }
    if !quiet {
        println!(
            "datasets: {} records: {} warnings: {}",
            summaries.len(),
            dataset.len(),
            warnings
        );
    }
    Ok(())
}

pub fn cmd_intensity(
    project: &Project,
    region: Option<&str>,
    zone: Option<&str>,
    bucket: &str,
    out: &Path,
    lenient: bool,
    quiet: bool,
) -> Result<(), CliError> {
    let kind = parse_series_bucket(bucket)?;
    let format = format_of(out)?;
    let (dataset, _) = project.ingest(lenient)?;
    let series = match (region, zone) {
        (Some(region), None) => intensity_series(
            &dataset,
            &RegionId::from(region),
            kind,
            &project.factors,
            project.convention,
        )?,
        (None, Some(zone)) => zone_intensity(
            &dataset,
            &project.registry,
            zone,
            kind,
            &project.factors,
            project.convention,
            WeightMode::Weighted,
        )?,
        _ => {
            return Err(CliError::User(
                "pass exactly one of --region or --zone".to_string(),
            ))
        }
    };
    let mut bytes = Vec::new();
    match format {
        OutputFormat::Csv => series.write_csv(&mut bytes)?,
        OutputFormat::Json => series.write_json(&mut bytes)?,
    }
    let path = write_output(project, out, &bytes)?;
    if !quiet {
        println!("wrote {} ({} buckets)", path.display(), series.points.len());
    }
    Ok(())
}

pub fn cmd_embodied(
    project: &Project,
    hardware: &str,
    model_code: &str,
    units: &[String],
    year: Option<i32>,
    out: &Path,
    lenient: bool,
    quiet: bool,
) -> Result<(), CliError> {
    let format = format_of(out)?;
    let granularity = granularity_for(model_code, units, year)?;
    let model = project.hardware.resolve(hardware)?;
    let (dataset, _) = project.ingest(lenient)?;
    let series = evaluate(
        &model,
        &granularity,
        &dataset,
        &project.registry,
        &project.factors,
        project.convention,
    )?;
    let mut bytes = Vec::new();
    match format {
        OutputFormat::Csv => series.write_csv(&mut bytes)?,
        OutputFormat::Json => series.write_json(&mut bytes)?,
    }
    let path = write_output(project, out, &bytes)?;
    if !quiet {
        println!("wrote {} ({} points)", path.display(), series.points.len());
    }
    Ok(())
}

pub fn cmd_compare(
    project: &Project,
    hardware: &[String],
    model_code: &str,
    units: &[String],
    year: Option<i32>,
    out: &Path,
    lenient: bool,
    quiet: bool,
) -> Result<(), CliError> {
    if hardware.is_empty() {
        return Err(CliError::User("pass at least one --hardware".to_string()));
    }
    let format = format_of(out)?;
    let granularity = granularity_for(model_code, units, year)?;
    let (dataset, _) = project.ingest(lenient)?;

    let mut reports: Vec<ComparisonReport> = Vec::new();
    let mut baseline_year = year;
    for reference in hardware {
        let model = project.hardware.resolve(reference)?;
        let series = evaluate(
            &model,
            &granularity,
            &dataset,
            &project.registry,
            &project.factors,
            project.convention,
        )?;
        let year = match baseline_year {
            Some(y) => y,
            None => {
                let years: BTreeSet<i32> =
                    series.points.iter().map(|p| p.bucket.start.year()).collect();
                match (years.len(), years.first()) {
                    (1, Some(&y)) => {
                        baseline_year = Some(y);
                        y
                    }
                    (0, _) => return Err(CliError::User("empty series; no data in range".into())),
                    _ => {
                        return Err(CliError::User(
                            "series spans multiple years; pass --year to pin the baseline"
                                .to_string(),
                        ))
                    }
                }
            }
        };
        let baseline = baseline_gy(
            &model,
            &dataset,
            &project.registry,
            units,
            year,
            &project.factors,
            project.convention,
            project.baseline_mode,
        )?;
        let report = compare(&series, baseline)?;
        if !quiet {
            println!(
                "{}: baseline {:.2} avg_diff {:.2}% max_diff {:.2}%",
                report.hardware, report.baseline, report.avg_diff_pct, report.max_diff_pct
            );
        }
        reports.push(report);
    }

    let mut bytes = Vec::new();
    match format {
        OutputFormat::Csv => write_comparison_summary_csv(&reports, &mut bytes)?,
        OutputFormat::Json => write_comparison_json(&reports, &mut bytes)?,
    }
    let path = write_output(project, out, &bytes)?;
    if !quiet {
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_plotdata(
    project: &Project,
    figure: &str,
    hardware: Option<&str>,
    region: Option<&str>,
    units: &[String],
    year: Option<i32>,
    from: Option<&str>,
    to: Option<&str>,
    out: &Path,
    lenient: bool,
    quiet: bool,
) -> Result<(), CliError> {
    let hardware = hardware.unwrap_or("cpu:7nm");
    let model = project.hardware.resolve(hardware)?;
    let (dataset, _) = project.ingest(lenient)?;
    let bytes = match figure {
        "storm" => {
            let region = region.ok_or_else(|| {
                CliError::User("--figure storm needs --region".to_string())
            })?;
            storm_csv(project, &dataset, &model, region, from, to)?
        }
        "cd-timeline" => timeline_csv(project, &dataset, &model, "cd", units, year)?,
        "cs-timeline" => timeline_csv(project, &dataset, &model, "cs", units, year)?,
        other => {
            return Err(CliError::User(format!(
                "unknown figure '{other}' (expected cd-timeline, cs-timeline or storm)"
            )))
        }
    };
    let path = write_output(project, out, &bytes)?;
    if !quiet {
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Hourly embodied carbon plus the per-source generation behind it.
fn storm_csv(
    project: &Project,
    dataset: &GenerationDataset,
    model: &HardwareModel,
    region: &str,
    from: Option<&str>,
    to: Option<&str>,
) -> Result<Vec<u8>, CliError> {
    let from = from.map(parse_instant).transpose()?;
    let to = to.map(parse_instant).transpose()?;
    let region = RegionId::from(region);
    let series = intensity_series(
        dataset,
        &region,
        BucketKind::Hour,
        &project.factors,
        project.convention,
    )?;
    let buckets = bucketize(dataset, &region, BucketKind::Hour, project.convention)?;
    let in_window = |start: DateTime<Utc>| {
        from.map_or(true, |f| start >= f) && to.map_or(true, |t| start < t)
    };

    let mut sources: BTreeSet<EnergySource> = BTreeSet::new();
    for (bucket, mix) in &buckets {
        if in_window(bucket.start) {
            sources.extend(mix.keys().copied());
        }
    }
    let points: Vec<_> = series
        .points
        .iter()
        .filter(|p| in_window(p.bucket.start))
        .collect();
    if points.is_empty() {
        return Err(CliError::User("empty span: no hourly data in the window".into()));
    }

    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["time".to_string(), embodied_column(model)];
    header.extend(
        EnergySource::ALL
            .iter()
            .filter(|s| sources.contains(s))
            .map(|s| format!("{s}_kwh")),
    );
    w.write_record(&header).map_err(internal)?;
    for p in points {
        let mut row = vec![p.bucket.key.clone(), format!("{}", model.embodied(p.ci_g_per_kwh))];
        let mix = buckets
            .iter()
            .find(|(b, _)| b.key == p.bucket.key)
            .map(|(_, m)| m);
        for source in EnergySource::ALL.iter().filter(|s| sources.contains(s)) {
            let kwh = mix.and_then(|m| m.get(source)).copied().unwrap_or(0.0);
            row.push(format!("{kwh}"));
        }
        w.write_record(&row).map_err(internal)?;
    }
    w.into_inner().map_err(internal)
}

/// Per-unit bucket values next to the shared global-yearly baseline.
fn timeline_csv(
    project: &Project,
    dataset: &GenerationDataset,
    model: &HardwareModel,
    code: &str,
    units: &[String],
    year: Option<i32>,
) -> Result<Vec<u8>, CliError> {
    let granularity = granularity_for(code, units, year)?;
    let series = evaluate(
        model,
        &granularity,
        dataset,
        &project.registry,
        &project.factors,
        project.convention,
    )?;
    if series.points.is_empty() {
        return Err(CliError::User("empty span: no data in range".into()));
    }
    let baseline_year = match year {
        Some(y) => y,
        None => {
            let years: BTreeSet<i32> = series.points.iter().map(|p| p.bucket.start.year()).collect();
            match (years.len(), years.first()) {
                (1, Some(&y)) => y,
                _ => {
                    return Err(CliError::User(
                        "series spans multiple years; pass --year to pin the baseline".to_string(),
                    ))
                }
            }
        }
    };
    let baseline = baseline_gy(
        model,
        dataset,
        &project.registry,
        units,
        baseline_year,
        &project.factors,
        project.convention,
        project.baseline_mode,
    )?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["unit", "bucket_key", "bucket_start", "embodied", "baseline"])
        .map_err(internal)?;
    for p in &series.points {
        w.write_record([
            p.unit.as_str(),
            p.bucket.key.as_str(),
            &p.bucket.start.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            &format!("{}", p.embodied),
            &format!("{baseline}"),
        ])
        .map_err(internal)?;
    }
    w.into_inner().map_err(internal)
}

fn embodied_column(model: &HardwareModel) -> String {
    match model.unit() {
        "g/cm2" => "embodied_g_per_cm2".to_string(),
        _ => "embodied_g_per_gb".to_string(),
    }
}

fn parse_series_bucket(bucket: &str) -> Result<BucketKind, CliError> {
    match bucket {
        "day" => Ok(BucketKind::Day),
        "season" => Ok(BucketKind::Season),
        "year" => Ok(BucketKind::Year),
        other => Err(CliError::User(format!(
            "invalid bucket '{other}' (expected day, season or year)"
        ))),
    }
}

fn granularity_for(
    code: &str,
    units: &[String],
    year: Option<i32>,
) -> Result<GranularitySpec, CliError> {
    let period = year.map(|y| {
        (
            Utc.with_ymd_and_hms(y, 1, 1, 0, 0, 0).unwrap(),
            Utc.with_ymd_and_hms(y + 1, 1, 1, 0, 0, 0).unwrap(),
        )
    });
    GranularitySpec::from_code(code, units.to_vec(), period).map_err(CliError::from)
}

fn parse_instant(s: &str) -> Result<DateTime<Utc>, CliError> {
    DateTime::parse_from_rfc3339(s)
        .map(|t| t.with_timezone(&Utc))
        .map_err(|_| CliError::User(format!("malformed timestamp '{s}' (expected RFC 3339)")))
}

/// Intensity series shape sanity used by a couple of subcommands' tests.
#[allow(dead_code)]
pub(crate) fn series_len(series: &IntensitySeries) -> usize {
    series.points.len()
}
