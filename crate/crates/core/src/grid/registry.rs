use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::RegionId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionInfo {
    pub name: String,
    pub country: String,
}

/// Registered regions plus treaty-zone memberships (EU, ASEAN, ...).
/// A region may belong to any number of zones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegionRegistry {
    regions: BTreeMap<RegionId, RegionInfo>,
    zones: BTreeMap<String, BTreeSet<RegionId>>,
}

impl RegionRegistry {
    pub fn new() -> Self {
        RegionRegistry::default()
    }

    pub fn add_region(&mut self, id: RegionId, info: RegionInfo) {
        self.regions.insert(id, info);
    }

    /// Register (or re-register) a zone. Members must be non-empty and
    /// already registered; re-registration with identical members is a no-op.
    pub fn register_zone(&mut self, zone: &str, members: &[RegionId]) -> Result<()> {
        if members.is_empty() {
            return Err(Error::EmptyZone(zone.to_string()));
        }
        for m in members {
            if !self.regions.contains_key(m) {
                return Err(Error::UnknownRegion(m.to_string()));
            }
        }
        self.zones
            .insert(zone.to_string(), members.iter().cloned().collect());
        Ok(())
    }

    pub fn is_region(&self, id: &RegionId) -> bool {
        self.regions.contains_key(id)
    }

    pub fn region_info(&self, id: &RegionId) -> Option<&RegionInfo> {
        self.regions.get(id)
    }

    pub fn zone_members(&self, zone: &str) -> Option<&BTreeSet<RegionId>> {
        self.zones.get(zone)
    }

    pub fn regions(&self) -> impl Iterator<Item = (&RegionId, &RegionInfo)> + '_ {
        self.regions.iter()
    }

    pub fn zones(&self) -> impl Iterator<Item = (&String, &BTreeSet<RegionId>)> + '_ {
        self.zones.iter()
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: RegistryFile =
            toml::from_str(text).map_err(|e| Error::malformed("region registry", e.message()))?;
        let mut registry = RegionRegistry::new();
        for r in file.region {
            registry.add_region(
                RegionId::new(r.id),
                RegionInfo {
                    name: r.name,
                    country: r.country,
                },
            );
        }
        for z in file.zone {
            let members: Vec<RegionId> = z.members.into_iter().map(RegionId::new).collect();
            registry.register_zone(&z.id, &members)?;
        }
        Ok(registry)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RegionRegistry::from_toml_str(&text)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegistryFile {
    #[serde(default)]
    region: Vec<RegionEntry>,
    #[serde(default)]
    zone: Vec<ZoneEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionEntry {
    id: String,
    #[serde(default)]
    name: String,
    #[serde(default)]
    country: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZoneEntry {
    id: String,
    members: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn registry_with(ids: &[&str]) -> RegionRegistry {
        let mut r = RegionRegistry::new();
        for id in ids {
            r.add_region(
                RegionId::from(*id),
                RegionInfo {
                    name: id.to_string(),
                    country: id.to_string(),
                },
            );
        }
        r
    }

    #[test]
    fn zone_members_contain_registered_regions() {
        let mut r = registry_with(&["IE", "IT", "DE"]);
        r.register_zone("EU", &["IE".into(), "IT".into()]).unwrap();
        let members = r.zone_members("EU").unwrap();
        assert!(members.contains(&RegionId::from("IE")));
        assert!(members.contains(&RegionId::from("IT")));
    }

    #[test]
    fn empty_member_list_rejected() {
        let mut r = registry_with(&["IE"]);
        let err = r.register_zone("X", &[]).unwrap_err();
        assert_eq!(err.to_string(), "zone X: empty member list");
    }

    #[test]
    fn unknown_member_rejected() {
        let mut r = registry_with(&["IE"]);
        let err = r.register_zone("EU", &["FR".into()]).unwrap_err();
        assert_eq!(err.to_string(), "unknown region: FR");
    }

    #[test]
    fn reregistration_is_idempotent() {
        let mut a = registry_with(&["IE", "IT"]);
        a.register_zone("EU", &["IE".into(), "IT".into()]).unwrap();
        let mut b = a.clone();
        b.register_zone("EU", &["IT".into(), "IE".into()]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn toml_round_trip() {
        let doc = r#"
            [[region]]
            id = "IE"
            name = "Ireland"
            country = "IE"

            [[region]]
            id = "IT"
            name = "Italy"
            country = "IT"

            [[zone]]
            id = "EU"
            members = ["IE", "IT"]
        "#;
        let r = RegionRegistry::from_toml_str(doc).unwrap();
        assert!(r.is_region(&"IE".into()));
        assert_eq!(r.zone_members("EU").unwrap().len(), 2);
        assert!(RegionRegistry::from_toml_str("[[zone]]\nid = \"EU\"\nmembers = [\"XX\"]\n").is_err());
    }
}
