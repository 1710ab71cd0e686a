use chrono::{DateTime, Datelike, Months, NaiveDate, Utc};
use serde::Serialize;

use crate::grid::Resolution;

/// Temporal granularity of an intensity bucket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BucketKind {
    Hour,
    Day,
    Season,
    Year,
}

impl BucketKind {
    pub fn label(self) -> &'static str {
        match self {
            BucketKind::Hour => "hour",
            BucketKind::Day => "day",
            BucketKind::Season => "season",
            BucketKind::Year => "year",
        }
    }

    pub fn parse(s: &str) -> Option<BucketKind> {
        match s {
            "hour" => Some(BucketKind::Hour),
            "day" => Some(BucketKind::Day),
            "season" => Some(BucketKind::Season),
            "year" => Some(BucketKind::Year),
            _ => None,
        }
    }

    /// Coarsest record resolution that can still fill buckets of this kind.
    /// Seasons are whole months, so monthly data is fine there.
    pub fn required_resolution(self) -> Resolution {
        match self {
            BucketKind::Hour => Resolution::Hour,
            BucketKind::Day => Resolution::Day,
            BucketKind::Season => Resolution::Month,
            BucketKind::Year => Resolution::Year,
        }
    }
}

impl std::fmt::Display for BucketKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Meteorological season convention. Northern: winter is Dec-Feb with
/// December attributed to the following year's winter label; southern swaps
/// summer/winter and spring/fall.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeasonConvention {
    #[default]
    Northern,
    Southern,
}

impl SeasonConvention {
    pub fn parse(s: &str) -> Option<SeasonConvention> {
        match s {
            "northern" => Some(SeasonConvention::Northern),
            "southern" => Some(SeasonConvention::Southern),
            _ => None,
        }
    }

    /// Season label and label year for a month. The Dec-Feb season spans two
    /// calendar years and carries the label of the January/February year.
    fn season_of(self, year: i32, month: u32) -> (i32, &'static str) {
        let (label_year, quarter) = match month {
            12 => (year + 1, 0),
            1 | 2 => (year, 0),
            3..=5 => (year, 1),
            6..=8 => (year, 2),
            _ => (year, 3),
        };
        let name = match (self, quarter) {
            (SeasonConvention::Northern, 0) => "winter",
            (SeasonConvention::Northern, 1) => "spring",
            (SeasonConvention::Northern, 2) => "summer",
            (SeasonConvention::Northern, 3) => "fall",
            (SeasonConvention::Southern, 0) => "summer",
            (SeasonConvention::Southern, 1) => "fall",
            (SeasonConvention::Southern, 2) => "winter",
            (SeasonConvention::Southern, _) => "spring",
        };
        (label_year, name)
    }
}

/// One bucket of the time axis: canonical key plus UTC half-open `[start, end)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TimeBucket {
    pub kind: BucketKind,
    pub key: String,
    pub start: DateTime<Utc>,
    pub end: DateTime<Utc>,
}

impl TimeBucket {
    /// Bucket of `kind` containing the instant `ts`.
    pub fn containing(ts: DateTime<Utc>, kind: BucketKind, convention: SeasonConvention) -> TimeBucket {
        let date = ts.date_naive();
        match kind {
            BucketKind::Hour => {
                let start = ts
                    .date_naive()
                    .and_hms_opt(ts.time().hour(), 0, 0)
                    .expect("valid hour")
                    .and_utc();
                TimeBucket {
                    kind,
                    key: start.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
                    start,
                    end: start + chrono::TimeDelta::hours(1),
                }
            }
            BucketKind::Day => {
                let start = date.and_hms_opt(0, 0, 0).expect("midnight").and_utc();
                TimeBucket {
                    kind,
                    key: date.format("%Y-%m-%d").to_string(),
                    start,
                    end: start + chrono::TimeDelta::days(1),
                }
            }
            BucketKind::Season => {
                let (label_year, name) = convention.season_of(date.year(), date.month());
                let start_month = match date.month() {
                    12 => 12,
                    1 | 2 => 12,
                    3..=5 => 3,
                    6..=8 => 6,
                    _ => 9,
                };
                let start_year = if start_month == 12 { label_year - 1 } else { label_year };
                let start = NaiveDate::from_ymd_opt(start_year, start_month, 1)
                    .expect("valid season start")
                    .and_hms_opt(0, 0, 0)
                    .expect("midnight")
                    .and_utc();
                let end = start
                    .checked_add_months(Months::new(3))
                    .expect("season end");
                TimeBucket {
                    kind,
                    key: format!("{label_year}-{name}"),
                    start,
                    end,
                }
            }
            BucketKind::Year => TimeBucket::year(date.year()),
        }
    }

    pub fn year(year: i32) -> TimeBucket {
        let start = NaiveDate::from_ymd_opt(year, 1, 1)
            .expect("valid year")
            .and_hms_opt(0, 0, 0)
            .expect("midnight")
            .and_utc();
        TimeBucket {
            kind: BucketKind::Year,
            key: year.to_string(),
            start,
            end: start.checked_add_months(Months::new(12)).expect("year end"),
        }
    }

    /// The bucket of a strictly coarser kind that this bucket rolls up into.
    ///
    /// Assignment follows the bucket start, except season -> year which uses
    /// the season's label year so a Dec-Feb season stays with its label.
    pub fn parent(&self, to: BucketKind, convention: SeasonConvention) -> TimeBucket {
        if self.kind == BucketKind::Season && to == BucketKind::Year {
            let label_year = self
                .start
                .checked_add_months(Months::new(1))
                .expect("mid-season")
                .year();
            return TimeBucket::year(label_year);
        }
        TimeBucket::containing(self.start, to, convention)
    }
}

use chrono::Timelike;

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(s: &str) -> DateTime<Utc> {
        s.parse().unwrap()
    }

    #[test]
    fn day_and_year_keys() {
        let b = TimeBucket::containing(ts("2021-01-28T05:30:00Z"), BucketKind::Day, SeasonConvention::Northern);
        assert_eq!(b.key, "2021-01-28");
        assert_eq!(b.start, ts("2021-01-28T00:00:00Z"));
        assert_eq!(b.end, ts("2021-01-29T00:00:00Z"));
        let y = TimeBucket::containing(ts("2021-06-01T00:00:00Z"), BucketKind::Year, SeasonConvention::Northern);
        assert_eq!(y.key, "2021");
    }

    #[test]
    fn northern_seasons() {
        let conv = SeasonConvention::Northern;
        let jan = TimeBucket::containing(ts("2021-01-15T00:00:00Z"), BucketKind::Season, conv);
        assert_eq!(jan.key, "2021-winter");
        assert_eq!(jan.start, ts("2020-12-01T00:00:00Z"));
        assert_eq!(jan.end, ts("2021-03-01T00:00:00Z"));
        let jul = TimeBucket::containing(ts("2021-07-15T00:00:00Z"), BucketKind::Season, conv);
        assert_eq!(jul.key, "2021-summer");
        // December rolls forward into the next year's winter label
        let dec = TimeBucket::containing(ts("2021-12-15T00:00:00Z"), BucketKind::Season, conv);
        assert_eq!(dec.key, "2022-winter");
        assert_eq!(dec.start, ts("2021-12-01T00:00:00Z"));
    }

    #[test]
    fn southern_seasons() {
        let conv = SeasonConvention::Southern;
        let jan = TimeBucket::containing(ts("2021-01-15T00:00:00Z"), BucketKind::Season, conv);
        assert_eq!(jan.key, "2021-summer");
        let jul = TimeBucket::containing(ts("2021-07-15T00:00:00Z"), BucketKind::Season, conv);
        assert_eq!(jul.key, "2021-winter");
    }

    #[test]
    fn leap_day_keeps_its_bucket() {
        let b = TimeBucket::containing(ts("2020-02-29T10:00:00Z"), BucketKind::Day, SeasonConvention::Northern);
        assert_eq!(b.key, "2020-02-29");
    }

    #[test]
    fn season_parent_year_uses_label_year() {
        let conv = SeasonConvention::Northern;
        let dec = TimeBucket::containing(ts("2021-12-15T00:00:00Z"), BucketKind::Season, conv);
        assert_eq!(dec.key, "2022-winter");
        assert_eq!(dec.parent(BucketKind::Year, conv).key, "2022");
        // day -> year stays with the calendar year
        let day = TimeBucket::containing(ts("2021-12-15T00:00:00Z"), BucketKind::Day, conv);
        assert_eq!(day.parent(BucketKind::Year, conv).key, "2021");
    }

    #[test]
    fn hour_key_is_rfc3339() {
        let b = TimeBucket::containing(ts("2022-01-28T02:59:59Z"), BucketKind::Hour, SeasonConvention::Northern);
        assert_eq!(b.key, "2022-01-28T02:00:00Z");
    }
}
