use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use chrono::{DateTime, NaiveDateTime, TimeZone, Utc};

use crate::error::{Error, Result, RowError};
use crate::grid::{
    EnergyGenerationRecord, EnergySource, GenerationDataset, RegionId, Resolution,
};

/// Supported input layouts for generation data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsvSchema {
    /// `region,interval_start,interval_length,source,energy_kwh`, one record
    /// per row, energies in kWh, ISO-8601 timestamps with offset.
    Canonical,
    /// Wide hourly export: one timestamp column followed by one column per
    /// production type, values in MWh. Region supplied via `region_hint`.
    EntsoeLike,
    /// One row per (region, year); source columns named `<source>_twh`,
    /// values in TWh.
    OwidLike,
}

impl CsvSchema {
    pub fn parse(s: &str) -> Option<CsvSchema> {
        match s {
            "canonical" => Some(CsvSchema::Canonical),
            "entsoe_like" => Some(CsvSchema::EntsoeLike),
            "owid_like" => Some(CsvSchema::OwidLike),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CsvSchema::Canonical => "canonical",
            CsvSchema::EntsoeLike => "entsoe_like",
            CsvSchema::OwidLike => "owid_like",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestWarning {
    pub line: Option<u64>,
    pub message: String,
}

#[derive(Debug)]
pub struct IngestOutcome {
    pub dataset: GenerationDataset,
    pub warnings: Vec<IngestWarning>,
}

/// Parse a generation CSV file. With `lenient` set, rows that would be hard
/// errors are skipped and reported as warnings instead; otherwise any hard
/// error fails the whole file, citing row numbers.
pub fn parse_generation_csv(
    path: &Path,
    schema: CsvSchema,
    region_hint: Option<&RegionId>,
    lenient: bool,
) -> Result<IngestOutcome> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_generation_reader(file, schema, region_hint, lenient, &path.display().to_string())
}

/// Same as [`parse_generation_csv`] over any reader; `context` names the
/// input in errors and becomes the dataset provenance tag.
pub fn parse_generation_reader<R: Read>(
    reader: R,
    schema: CsvSchema,
    region_hint: Option<&RegionId>,
    lenient: bool,
    context: &str,
) -> Result<IngestOutcome> {
    let mut parser = Parser::new(context, lenient);
    let mut csv_reader = csv::ReaderBuilder::new()
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    match schema {
        CsvSchema::Canonical => parser.parse_canonical(&mut csv_reader)?,
        CsvSchema::EntsoeLike => parser.parse_entsoe(&mut csv_reader, region_hint)?,
        CsvSchema::OwidLike => parser.parse_owid(&mut csv_reader, region_hint)?,
    }
    parser.finish()
}

type RecordKey = (RegionId, DateTime<Utc>, Resolution, EnergySource);

struct Parser {
    context: String,
    lenient: bool,
    records: BTreeMap<RecordKey, f64>,
    errors: Vec<RowError>,
    warnings: Vec<IngestWarning>,
    // unknown label -> (first line, occurrences)
    unknown_labels: BTreeMap<String, (u64, u64)>,
}

impl Parser {
    fn new(context: &str, lenient: bool) -> Self {
        Parser {
            context: context.to_string(),
            lenient,
            records: BTreeMap::new(),
            errors: Vec::new(),
            warnings: Vec::new(),
            unknown_labels: BTreeMap::new(),
        }
    }

    fn row_error(&mut self, line: u64, message: impl Into<String>) {
        let err = RowError {
            line,
            message: message.into(),
        };
        if self.lenient {
            self.warnings.push(IngestWarning {
                line: Some(line),
                message: format!("skipped: {}", err.message),
            });
        } else {
            self.errors.push(err);
        }
    }

    fn unknown_label(&mut self, label: &str, line: u64) {
        let entry = self.unknown_labels.entry(label.to_string()).or_insert((line, 0));
        entry.1 += 1;
    }

    fn push(&mut self, line: u64, key: RecordKey, energy_kwh: f64) {
        if self.records.contains_key(&key) {
            self.row_error(
                line,
                format!(
                    "duplicate record for ({}, {}, {}, {})",
                    key.0, key.1, key.2, key.3
                ),
            );
            return;
        }
        self.records.insert(key, energy_kwh);
    }

    fn finish(mut self) -> Result<IngestOutcome> {
        for (label, (line, count)) in std::mem::take(&mut self.unknown_labels) {
            self.warnings.push(IngestWarning {
                line: Some(line),
                message: format!(
                    "unknown source label '{label}' mapped to other ({count} value(s))"
                ),
            });
        }
        if !self.errors.is_empty() {
            return Err(Error::Rows {
                context: self.context,
                errors: self.errors,
            });
        }
        let records = self
            .records
            .into_iter()
            .map(|((region, start, resolution, source), energy_kwh)| EnergyGenerationRecord {
                region,
                interval_start: start,
                interval_length: resolution,
                source,
                energy_kwh,
            });
        let dataset = GenerationDataset::from_records(records, self.context)?;
        Ok(IngestOutcome {
            dataset,
            warnings: self.warnings,
        })
    }

    fn parse_canonical<R: Read>(&mut self, reader: &mut csv::Reader<R>) -> Result<()> {
        let headers = self.headers(reader)?;
        let idx = |name: &str| headers.iter().position(|h| h == name);
        let (region_i, start_i, len_i, source_i, energy_i) = match (
            idx("region"),
            idx("interval_start"),
            idx("interval_length"),
            idx("source"),
            idx("energy_kwh"),
        ) {
            (Some(a), Some(b), Some(c), Some(d), Some(e)) => (a, b, c, d, e),
            _ => {
                return Err(Error::malformed(
                    &self.context,
                    "canonical header must contain region,interval_start,interval_length,source,energy_kwh",
                ))
            }
        };

        for row in self.rows(reader)? {
            let (line, record) = row;
            let region = record[region_i].trim();
            if region.is_empty() {
                self.row_error(line, "unresolvable region");
                continue;
            }
            let start = match parse_iso_timestamp(&record[start_i]) {
                Ok(ts) => ts,
                Err(msg) => {
                    self.row_error(line, msg);
                    continue;
                }
            };
            let resolution = match Resolution::parse(record[len_i].trim()) {
                Some(r) => r,
                None => {
                    self.row_error(
                        line,
                        format!("invalid interval_length '{}'", &record[len_i]),
                    );
                    continue;
                }
            };
            let source = match EnergySource::resolve_alias(&record[source_i]) {
                Some(s) => s,
                None => {
                    self.unknown_label(record[source_i].trim(), line);
                    EnergySource::Other
                }
            };
            let energy = match parse_energy(&record[energy_i]) {
                Ok(e) => e,
                Err(msg) => {
                    self.row_error(line, msg);
                    continue;
                }
            };
            self.push(line, (RegionId::from(region), start, resolution, source), energy);
        }
        Ok(())
    }

    fn parse_entsoe<R: Read>(
        &mut self,
        reader: &mut csv::Reader<R>,
        region_hint: Option<&RegionId>,
    ) -> Result<()> {
        let region = region_hint
            .cloned()
            .ok_or_else(|| {
                Error::malformed(&self.context, "entsoe_like schema requires a region_hint")
            })?;
        let headers = self.headers(reader)?;
        if headers.len() < 2 {
            return Err(Error::malformed(
                &self.context,
                "entsoe_like needs a timestamp column plus production-type columns",
            ));
        }
        // Column 0 is the timestamp; every other header names a production type.
        let columns: Vec<Option<EnergySource>> = headers
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, h)| {
                let label = strip_entsoe_noise(h);
                match EnergySource::resolve_alias(&label) {
                    Some(s) => Some(s),
                    None => {
                        self.warnings.push(IngestWarning {
                            line: None,
                            message: format!(
                                "unknown source label '{}' (column {}) mapped to other",
                                label,
                                i + 1
                            ),
                        });
                        Some(EnergySource::Other)
                    }
                }
            })
            .collect();

        for (line, record) in self.rows(reader)? {
            let start = match parse_entsoe_timestamp(&record[0]) {
                Ok(ts) => ts,
                Err(msg) => {
                    self.row_error(line, msg);
                    continue;
                }
            };
            let mut mix: BTreeMap<EnergySource, f64> = BTreeMap::new();
            let mut bad = false;
            for (col, source) in columns.iter().enumerate() {
                let cell = record.get(col + 1).unwrap_or("");
                if is_missing(cell) {
                    continue;
                }
                match parse_energy(cell) {
                    // values are MWh per hour
                    Ok(mwh) => *mix.entry(source.unwrap()).or_insert(0.0) += mwh * 1000.0,
                    Err(msg) => {
                        self.row_error(line, format!("column {}: {msg}", col + 2));
                        bad = true;
                        break;
                    }
                }
            }
            if bad {
                continue;
            }
            for (source, kwh) in mix {
                self.push(line, (region.clone(), start, Resolution::Hour, source), kwh);
            }
        }
        Ok(())
    }

    fn parse_owid<R: Read>(
        &mut self,
        reader: &mut csv::Reader<R>,
        region_hint: Option<&RegionId>,
    ) -> Result<()> {
        let headers = self.headers(reader)?;
        let lower: Vec<String> = headers.iter().map(|h| h.to_ascii_lowercase()).collect();
        let region_i = lower
            .iter()
            .position(|h| h == "region" || h == "entity" || h == "country");
        let year_i = lower.iter().position(|h| h == "year").ok_or_else(|| {
            Error::malformed(&self.context, "owid_like needs a 'year' column")
        })?;

        let mut columns: Vec<(usize, EnergySource)> = Vec::new();
        for (i, h) in lower.iter().enumerate() {
            if Some(i) == region_i || i == year_i {
                continue;
            }
            match h.strip_suffix("_twh") {
                Some(stem) => match EnergySource::resolve_alias(stem) {
                    Some(s) => columns.push((i, s)),
                    None => {
                        self.warnings.push(IngestWarning {
                            line: None,
                            message: format!(
                                "unknown source label '{stem}' (column {}) mapped to other",
                                i + 1
                            ),
                        });
                        columns.push((i, EnergySource::Other));
                    }
                },
                None => self.warnings.push(IngestWarning {
                    line: None,
                    message: format!("ignored column '{}'", headers[i]),
                }),
            }
        }
        if columns.is_empty() {
            return Err(Error::malformed(
                &self.context,
                "owid_like needs at least one '<source>_twh' column",
            ));
        }

        for (line, record) in self.rows(reader)? {
            let region = match region_i {
                Some(i) if !record[i].trim().is_empty() => RegionId::from(record[i].trim()),
                _ => match region_hint {
                    Some(hint) => hint.clone(),
                    None => {
                        self.row_error(line, "unresolvable region");
                        continue;
                    }
                },
            };
            let year: i32 = match record[year_i].trim().parse() {
                Ok(y) => y,
                Err(_) => {
                    self.row_error(line, format!("malformed year '{}'", &record[year_i]));
                    continue;
                }
            };
            let Some(start) = Utc.with_ymd_and_hms(year, 1, 1, 0, 0, 0).single() else {
                self.row_error(line, format!("malformed year '{year}'"));
                continue;
            };
            let mut mix: BTreeMap<EnergySource, f64> = BTreeMap::new();
            let mut bad = false;
            for &(col, source) in &columns {
                let cell = record.get(col).unwrap_or("");
                if is_missing(cell) {
                    continue;
                }
                match parse_energy(cell) {
                    // values are TWh per year
                    Ok(twh) => *mix.entry(source).or_insert(0.0) += twh * 1.0e9,
                    Err(msg) => {
                        self.row_error(line, format!("column {}: {msg}", col + 1));
                        bad = true;
                        break;
                    }
                }
            }
            if bad {
                continue;
            }
            for (source, kwh) in mix {
                self.push(line, (region.clone(), start, Resolution::Year, source), kwh);
            }
        }
        Ok(())
    }

    fn headers<R: Read>(&self, reader: &mut csv::Reader<R>) -> Result<Vec<String>> {
        let headers = reader
            .headers()
            .map_err(|e| Error::malformed(&self.context, e))?;
        Ok(headers.iter().map(|h| h.trim().to_string()).collect())
    }

    fn rows<R: Read>(
        &self,
        reader: &mut csv::Reader<R>,
    ) -> Result<Vec<(u64, csv::StringRecord)>> {
        let mut out = Vec::new();
        for result in reader.records() {
            let record = result.map_err(|e| Error::malformed(&self.context, e))?;
            let line = record.position().map(|p| p.line()).unwrap_or(0);
            out.push((line, record));
        }
        Ok(out)
    }
}

fn is_missing(cell: &str) -> bool {
    let c = cell.trim();
    c.is_empty() || matches!(c.to_ascii_lowercase().as_str(), "n/e" | "n/a" | "-" | "n.a.")
}

fn parse_energy(cell: &str) -> std::result::Result<f64, String> {
    let value: f64 = cell
        .trim()
        .parse()
        .map_err(|_| format!("invalid energy '{}'", cell.trim()))?;
    if !value.is_finite() {
        return Err(format!("invalid energy '{}'", cell.trim()));
    }
    if value < 0.0 {
        return Err("negative energy".to_string());
    }
    Ok(value)
}

/// ISO-8601 with an explicit offset (`Z` or `+hh:mm`); local-time inputs
/// without an offset are rejected so bucketing stays deterministic.
fn parse_iso_timestamp(cell: &str) -> std::result::Result<DateTime<Utc>, String> {
    let s = cell.trim();
    let normalized = if let Some(stripped) = s.strip_suffix('Z') {
        format!("{stripped}+00:00")
    } else {
        s.to_string()
    };
    for format in ["%Y-%m-%dT%H:%M:%S%.f%:z", "%Y-%m-%dT%H:%M%:z"] {
        if let Ok(ts) = DateTime::parse_from_str(&normalized, format) {
            return Ok(ts.with_timezone(&Utc));
        }
    }
    if NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M:%S").is_ok()
        || NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M").is_ok()
    {
        return Err(format!("malformed timestamp '{s}': missing UTC offset"));
    }
    Err(format!("malformed timestamp '{s}'"))
}

/// ENTSO-E exports write interval ranges like
/// `28.01.2021 00:00 - 28.01.2021 01:00 (UTC)`; ISO-8601 is accepted too.
fn parse_entsoe_timestamp(cell: &str) -> std::result::Result<DateTime<Utc>, String> {
    let s = cell.trim();
    if let Ok(ts) = parse_iso_timestamp(s) {
        return Ok(ts);
    }
    let (range, tz) = match s.rfind('(') {
        Some(i) => (s[..i].trim(), s[i..].trim()),
        None => (s, ""),
    };
    if !tz.is_empty() && tz != "(UTC)" {
        return Err(format!("malformed timestamp '{s}': zone {tz} is not (UTC)"));
    }
    let first = range.split(" - ").next().unwrap_or(range).trim();
    if tz.is_empty() {
        return Err(format!("malformed timestamp '{s}': missing UTC offset"));
    }
    match NaiveDateTime::parse_from_str(first, "%d.%m.%Y %H:%M") {
        Ok(naive) => Ok(Utc.from_utc_datetime(&naive)),
        Err(_) => Err(format!("malformed timestamp '{s}'")),
    }
}

fn strip_entsoe_noise(header: &str) -> String {
    let mut out = String::new();
    let mut depth = 0usize;
    for c in header.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            c if depth == 0 => out.push(c),
            _ => {}
        }
    }
    let out = out.split(" - ").next().unwrap_or(&out);
    out.trim().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, schema: CsvSchema, hint: Option<&str>, lenient: bool) -> Result<IngestOutcome> {
        let hint = hint.map(RegionId::from);
        parse_generation_reader(text.as_bytes(), schema, hint.as_ref(), lenient, "test.csv")
    }

    #[test]
    fn canonical_two_rows() {
        let text = "region,interval_start,interval_length,source,energy_kwh\n\
                    IE,2021-01-28T00:00Z,hour,wind,3000\n\
                    IE,2021-01-28T00:00Z,hour,coal,1000\n";
        let out = parse(text, CsvSchema::Canonical, None, false).unwrap();
        assert_eq!(out.dataset.len(), 2);
        assert!(out.warnings.is_empty());
        let (start, end) = out.dataset.coverage(&"IE".into()).unwrap();
        assert_eq!((end - start).num_hours(), 1);
        assert_eq!(
            out.dataset.finest_resolution(&"IE".into()),
            Some(Resolution::Hour)
        );
    }

    #[test]
    fn canonical_negative_energy_cites_row() {
        let text = "region,interval_start,interval_length,source,energy_kwh\n\
                    IE,2021-01-28T00:00Z,hour,wind,-5\n\
                    IE,2021-01-28T01:00Z,hour,wind,5\n";
        let err = parse(text, CsvSchema::Canonical, None, false).unwrap_err();
        assert!(err.to_string().contains("row 2: negative energy"), "{err}");
    }

    #[test]
    fn canonical_lenient_skips_bad_row() {
        let text = "region,interval_start,interval_length,source,energy_kwh\n\
                    IE,2021-01-28T00:00Z,hour,wind,-5\n\
                    IE,2021-01-28T01:00Z,hour,wind,5\n";
        let out = parse(text, CsvSchema::Canonical, None, true).unwrap();
        assert_eq!(out.dataset.len(), 1);
        assert_eq!(out.warnings.len(), 1);
        assert!(out.warnings[0].message.contains("negative energy"));
    }

    #[test]
    fn canonical_rejects_naive_timestamp() {
        let text = "region,interval_start,interval_length,source,energy_kwh\n\
                    IE,2021-01-28T00:00,hour,wind,5\n";
        let err = parse(text, CsvSchema::Canonical, None, false).unwrap_err();
        assert!(err.to_string().contains("missing UTC offset"), "{err}");
    }

    #[test]
    fn canonical_offset_normalized_to_utc() {
        let text = "region,interval_start,interval_length,source,energy_kwh\n\
                    IE,2021-01-28T01:00+01:00,hour,wind,5\n";
        let out = parse(text, CsvSchema::Canonical, None, false).unwrap();
        let rec: Vec<_> = out.dataset.records().collect();
        assert_eq!(
            rec[0].interval_start,
            "2021-01-28T00:00:00Z".parse::<DateTime<Utc>>().unwrap()
        );
    }

    #[test]
    fn canonical_unknown_source_maps_to_other_with_warning() {
        let text = "region,interval_start,interval_length,source,energy_kwh\n\
                    IE,2021-01-28T00:00Z,hour,fusion,5\n";
        let out = parse(text, CsvSchema::Canonical, None, false).unwrap();
        let rec: Vec<_> = out.dataset.records().collect();
        assert_eq!(rec[0].source, EnergySource::Other);
        assert_eq!(out.warnings.len(), 1);
        assert!(out.warnings[0].message.contains("'fusion'"));
    }

    #[test]
    fn canonical_duplicate_rejected() {
        let text = "region,interval_start,interval_length,source,energy_kwh\n\
                    IE,2021-01-28T00:00Z,hour,wind,5\n\
                    IE,2021-01-28T00:00Z,hour,wind,6\n";
        let err = parse(text, CsvSchema::Canonical, None, false).unwrap_err();
        assert!(err.to_string().contains("duplicate record"), "{err}");
    }

    #[test]
    fn entsoe_wide_format() {
        let text = "MTU,Fossil Gas  - Actual Aggregated [MW],Wind Onshore  - Actual Aggregated [MW],Wind Offshore  - Actual Aggregated [MW]\n\
                    28.01.2021 00:00 - 28.01.2021 01:00 (UTC),100,n/e,20.5\n\
                    28.01.2021 01:00 - 28.01.2021 02:00 (UTC),90,10,30\n";
        let out = parse(text, CsvSchema::EntsoeLike, Some("IE"), false).unwrap();
        // row 1: gas + wind(offshore); row 2: gas + wind(on+off summed)
        assert_eq!(out.dataset.len(), 4);
        let start = "2021-01-28T01:00:00Z".parse().unwrap();
        let mix: BTreeMap<_, _> = out
            .dataset
            .mixes(&"IE".into(), Resolution::Hour)
            .find(|(s, _)| *s == start)
            .map(|(_, m)| m.clone())
            .unwrap();
        assert_eq!(mix[&EnergySource::Wind], 40_000.0); // (10 + 30) MWh in kWh
        assert_eq!(mix[&EnergySource::NaturalGas], 90_000.0);
    }

    #[test]
    fn entsoe_requires_region_hint() {
        let text = "MTU,Fossil Gas\n28.01.2021 00:00 - 28.01.2021 01:00 (UTC),1\n";
        let err = parse(text, CsvSchema::EntsoeLike, None, false).unwrap_err();
        assert!(err.to_string().contains("region_hint"), "{err}");
    }

    #[test]
    fn entsoe_rejects_non_utc_zone() {
        let text = "MTU,Fossil Gas\n28.01.2021 00:00 - 28.01.2021 01:00 (CET),1\n";
        let err = parse(text, CsvSchema::EntsoeLike, Some("IE"), false).unwrap_err();
        assert!(err.to_string().contains("not (UTC)"), "{err}");
    }

    #[test]
    fn owid_yearly_rows() {
        let text = "entity,year,coal_twh,gas_twh,nuclear_twh\n\
                    Taiwan,2022,1.5,0.5,0.25\n\
                    Taiwan,2021,1.0,,0.5\n";
        let out = parse(text, CsvSchema::OwidLike, None, false).unwrap();
        // row 1 fills all three columns, row 2 skips the empty gas cell
        assert_eq!(out.dataset.len(), 5);
        let records: Vec<_> = out.dataset.records().collect();
        assert!(records.iter().all(|r| r.interval_length == Resolution::Year));
        let start = "2022-01-01T00:00:00Z".parse().unwrap();
        assert_eq!(
            out.dataset
                .interval_total(&"Taiwan".into(), Resolution::Year, start),
            Some(2.25e9)
        );
    }

    #[test]
    fn owid_record_count_equals_source_columns() {
        let text = "entity,year,coal_twh,wind_twh,solar_twh\nIE,2022,1,2,3\n";
        let out = parse(text, CsvSchema::OwidLike, None, false).unwrap();
        assert_eq!(out.dataset.len(), 3);
    }
}
