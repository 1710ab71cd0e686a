use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::EnergySource;

/// Direct emission factors in grams CO2 per kWh, total over [`EnergySource`].
#[derive(Debug, Clone, PartialEq)]
pub struct EmissionFactorTable {
    factors: [f64; EnergySource::ALL.len()],
}

/// Builtin direct emission factors (g/kWh).
const BUILTIN: [(EnergySource, f64); 10] = [
    (EnergySource::Oil, 406.0),
    (EnergySource::Coal, 760.0),
    (EnergySource::NaturalGas, 370.0),
    (EnergySource::Nuclear, 0.0),
    (EnergySource::Wind, 0.0),
    (EnergySource::Solar, 0.0),
    (EnergySource::Hydro, 0.0),
    (EnergySource::Geothermal, 0.0),
    (EnergySource::Biomass, 0.0),
    (EnergySource::Other, 575.0),
];

impl EmissionFactorTable {
    pub fn builtin() -> Self {
        let mut factors = [0.0; EnergySource::ALL.len()];
        for (source, factor) in BUILTIN {
            factors[source as usize] = factor;
        }
        EmissionFactorTable { factors }
    }

    /// Build from an explicit map. The map must name every source exactly
    /// once with a non-negative, finite factor.
    pub fn new(map: &BTreeMap<EnergySource, f64>) -> Result<Self> {
        let mut factors = [f64::NAN; EnergySource::ALL.len()];
        for (&source, &factor) in map {
            if !factor.is_finite() || factor < 0.0 {
                return Err(Error::NegativeFactor(source));
            }
            factors[source as usize] = factor;
        }
        for source in EnergySource::ALL {
            if factors[source as usize].is_nan() {
                return Err(Error::MissingFactor(source));
            }
        }
        Ok(EmissionFactorTable { factors })
    }

    /// Parse a flat key-value TOML document (`coal = 760.0`, ...). Every
    /// source must be listed; unknown keys are rejected with their label.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, f64> = toml::from_str(text)
            .map_err(|e| Error::malformed("emission factors", e.message()))?;
        let mut map = BTreeMap::new();
        for (label, factor) in raw {
            let source = EnergySource::parse(&label)
                .ok_or_else(|| Error::UnknownSource(label.clone()))?;
            map.insert(source, factor);
        }
        EmissionFactorTable::new(&map)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        EmissionFactorTable::from_toml_str(&text)
    }

    /// `"builtin"` or a path to a factors file.
    pub fn load(spec: &str) -> Result<Self> {
        if spec == "builtin" {
            Ok(EmissionFactorTable::builtin())
        } else {
            EmissionFactorTable::from_path(Path::new(spec))
        }
    }

    pub fn factor(&self, source: EnergySource) -> f64 {
        self.factors[source as usize]
    }

    pub fn max_factor(&self) -> f64 {
        self.factors.iter().copied().fold(0.0, f64::max)
    }

    pub fn iter(&self) -> impl Iterator<Item = (EnergySource, f64)> + '_ {
        EnergySource::ALL
            .iter()
            .map(move |&s| (s, self.factors[s as usize]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_matches_published_factors() {
        let t = EmissionFactorTable::builtin();
        assert_eq!(t.factor(EnergySource::Oil), 406.0);
        assert_eq!(t.factor(EnergySource::Coal), 760.0);
        assert_eq!(t.factor(EnergySource::NaturalGas), 370.0);
        assert_eq!(t.factor(EnergySource::Other), 575.0);
        for s in [
            EnergySource::Nuclear,
            EnergySource::Wind,
            EnergySource::Solar,
            EnergySource::Hydro,
            EnergySource::Geothermal,
            EnergySource::Biomass,
        ] {
            assert_eq!(t.factor(s), 0.0);
        }
        assert_eq!(t.max_factor(), 760.0);
    }

    #[test]
    fn file_identical_to_builtin_round_trips() {
        let mut doc = String::new();
        for (s, f) in EmissionFactorTable::builtin().iter() {
            doc.push_str(&format!("{} = {:.1}\n", s, f));
        }
        let parsed = EmissionFactorTable::from_toml_str(&doc).unwrap();
        assert_eq!(parsed, EmissionFactorTable::builtin());
    }

    #[test]
    fn negative_factor_rejected() {
        let doc = "coal = -1.0\noil = 406\nnatural_gas = 370\nnuclear = 0\nwind = 0\nsolar = 0\nhydro = 0\ngeothermal = 0\nbiomass = 0\nother = 575\n";
        let err = EmissionFactorTable::from_toml_str(doc).unwrap_err();
        assert_eq!(err.to_string(), "negative factor: coal");
    }

    #[test]
    fn unknown_source_rejected_with_label() {
        let doc = "plutonium = 3.0\n";
        let err = EmissionFactorTable::from_toml_str(doc).unwrap_err();
        assert_eq!(err.to_string(), "unknown source: plutonium");
    }

    #[test]
    fn missing_source_rejected() {
        let doc = "coal = 760\n";
        let err = EmissionFactorTable::from_toml_str(doc).unwrap_err();
        assert!(err.to_string().starts_with("missing factor:"));
    }

    #[test]
    fn lookup_is_total() {
        let t = EmissionFactorTable::builtin();
        for s in EnergySource::ALL {
            assert!(t.factor(s).is_finite());
        }
    }
}
