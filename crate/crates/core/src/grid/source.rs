use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The ten energy-source classes carried through every mix and factor table.
///
/// Provider-specific production types (e.g. "Fossil Gas", "Wind Onshore")
/// are folded into these classes by [`EnergySource::resolve_alias`].
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum EnergySource {
    Oil,
    Coal,
    NaturalGas,
    Nuclear,
    Wind,
    Solar,
    Hydro,
    Geothermal,
    Biomass,
    Other,
}

impl EnergySource {
    pub const ALL: [EnergySource; 10] = [
        EnergySource::Oil,
        EnergySource::Coal,
        EnergySource::NaturalGas,
        EnergySource::Nuclear,
        EnergySource::Wind,
        EnergySource::Solar,
        EnergySource::Hydro,
        EnergySource::Geothermal,
        EnergySource::Biomass,
        EnergySource::Other,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EnergySource::Oil => "oil",
            EnergySource::Coal => "coal",
            EnergySource::NaturalGas => "natural_gas",
            EnergySource::Nuclear => "nuclear",
            EnergySource::Wind => "wind",
            EnergySource::Solar => "solar",
            EnergySource::Hydro => "hydro",
            EnergySource::Geothermal => "geothermal",
            EnergySource::Biomass => "biomass",
            EnergySource::Other => "other",
        }
    }

    /// Strict parse of a canonical label; no alias folding.
    pub fn parse(label: &str) -> Option<EnergySource> {
        EnergySource::ALL.iter().copied().find(|s| s.label() == label)
    }

    /// Map a provider label onto a source class via the bundled alias table.
    ///
    /// Labels are compared case-insensitively with `-`, `_` and `/` treated
    /// as spaces. Returns `None` for labels the table does not know; callers
    /// ingesting provider data fold those into [`EnergySource::Other`] and
    /// count a warning.
    pub fn resolve_alias(label: &str) -> Option<EnergySource> {
        let norm = normalize(label);
        ALIASES
            .iter()
            .find(|(alias, _)| *alias == norm)
            .map(|&(_, source)| source)
    }
}

impl std::fmt::Display for EnergySource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for EnergySource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EnergySource::parse(s).ok_or_else(|| Error::UnknownSource(s.to_string()))
    }
}

fn normalize(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    let mut last_space = true;
    for c in label.trim().chars() {
        let c = match c {
            '-' | '_' | '/' => ' ',
            c => c.to_ascii_lowercase(),
        };
        if c == ' ' {
            if !last_space {
                out.push(' ');
            }
            last_space = true;
        } else {
            out.push(c);
            last_space = false;
        }
    }
    while out.ends_with(' ') {
        out.pop();
    }
    out
}

/// Bundled alias table, normalized form -> source class.
///
/// "Waste" and "other renewable" style labels fold into `Other` on purpose:
/// the factor applied to `Other` is overridable through the emission-factor
/// file, which keeps the mapping explicit rather than baked into a number.
const ALIASES: &[(&str, EnergySource)] = &[
    ("oil", EnergySource::Oil),
    ("fossil oil", EnergySource::Oil),
    ("fossil oil shale", EnergySource::Oil),
    ("petroleum", EnergySource::Oil),
    ("fuel oil", EnergySource::Oil),
    ("coal", EnergySource::Coal),
    ("hard coal", EnergySource::Coal),
    ("fossil hard coal", EnergySource::Coal),
    ("fossil brown coal lignite", EnergySource::Coal),
    ("brown coal", EnergySource::Coal),
    ("lignite", EnergySource::Coal),
    ("fossil peat", EnergySource::Coal),
    ("peat", EnergySource::Coal),
    ("fossil coal derived gas", EnergySource::Coal),
    ("natural gas", EnergySource::NaturalGas),
    ("gas", EnergySource::NaturalGas),
    ("fossil gas", EnergySource::NaturalGas),
    ("lng", EnergySource::NaturalGas),
    ("nuclear", EnergySource::Nuclear),
    ("wind", EnergySource::Wind),
    ("wind onshore", EnergySource::Wind),
    ("wind offshore", EnergySource::Wind),
    ("solar", EnergySource::Solar),
    ("solar pv", EnergySource::Solar),
    ("solar photovoltaic", EnergySource::Solar),
    ("photovoltaic", EnergySource::Solar),
    ("solar thermal", EnergySource::Solar),
    ("hydro", EnergySource::Hydro),
    ("hydropower", EnergySource::Hydro),
    ("hydro run of river and poundage", EnergySource::Hydro),
    ("hydro water reservoir", EnergySource::Hydro),
    ("hydro pumped storage", EnergySource::Hydro),
    ("pumped storage", EnergySource::Hydro),
    ("geothermal", EnergySource::Geothermal),
    ("biomass", EnergySource::Biomass),
    ("biofuel", EnergySource::Biomass),
    ("biofuels", EnergySource::Biomass),
    ("bioenergy", EnergySource::Biomass),
    ("other", EnergySource::Other),
    ("other fossil", EnergySource::Other),
    ("other renewable", EnergySource::Other),
    ("other renewables", EnergySource::Other),
    ("marine", EnergySource::Other),
    ("waste", EnergySource::Other),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_parse_covers_all_labels() {
        for s in EnergySource::ALL {
            assert_eq!(EnergySource::parse(s.label()), Some(s));
        }
        assert_eq!(EnergySource::parse("Fossil Gas"), None);
    }

    #[test]
    fn alias_folding() {
        assert_eq!(
            EnergySource::resolve_alias("Fossil Gas"),
            Some(EnergySource::NaturalGas)
        );
        assert_eq!(
            EnergySource::resolve_alias("Wind Onshore"),
            Some(EnergySource::Wind)
        );
        assert_eq!(
            EnergySource::resolve_alias("Hydro Run-of-river and poundage"),
            Some(EnergySource::Hydro)
        );
        assert_eq!(
            EnergySource::resolve_alias("natural_gas"),
            Some(EnergySource::NaturalGas)
        );
        assert_eq!(EnergySource::resolve_alias("mystery fuel"), None);
    }
}
