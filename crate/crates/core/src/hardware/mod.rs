//! Embodied-carbon models per hardware class.
//!
//! All three models are affine in the grid carbon intensity:
//! `embodied(ci) = electricity_rate * ci + electricity_independent_carbon`.
//! CPU parameters are published directly; memory and storage rates are
//! recovered from published yearly figures by reverse calibration against
//! the annual intensity those reports assumed (the [`CalibrationContext`]).

mod builtin;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The annual carbon intensity a published yearly figure was computed
/// against. Never a hidden constant: calibrations carry their provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationContext {
    pub reference_ci: f64,
    pub provenance: String,
}

impl CalibrationContext {
    pub fn new(reference_ci: f64, provenance: impl Into<String>) -> Result<Self> {
        if !reference_ci.is_finite() || reference_ci <= 0.0 {
            return Err(Error::Calibration(format!(
                "reference carbon intensity must be positive, got {reference_ci}"
            )));
        }
        Ok(CalibrationContext {
            reference_ci,
            provenance: provenance.into(),
        })
    }
}

/// CPU process-node parameters per cm2 of die.
///
/// EPS is electricity (kWh/cm2); GPS and MPS are carbon already (g/cm2)
/// from process gases and material procurement. The published parameter
/// tables disagree on the EPS unit header; it must be kWh/cm2 because the
/// model multiplies it by an intensity in g/kWh.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CpuProcessSpec {
    pub node: String,
    pub eps_kwh_per_cm2: f64,
    pub gps_g_per_cm2: f64,
    pub mps_g_per_cm2: f64,
    pub fab_yield: f64,
}

impl CpuProcessSpec {
    pub fn new(
        node: impl Into<String>,
        eps_kwh_per_cm2: f64,
        gps_g_per_cm2: f64,
        mps_g_per_cm2: f64,
        fab_yield: f64,
    ) -> Result<Self> {
        let spec = CpuProcessSpec {
            node: node.into(),
            eps_kwh_per_cm2,
            gps_g_per_cm2,
            mps_g_per_cm2,
            fab_yield,
        };
        for (name, v) in [
            ("eps", spec.eps_kwh_per_cm2),
            ("gps", spec.gps_g_per_cm2),
            ("mps", spec.mps_g_per_cm2),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "cpu node {}: {name} must be non-negative",
                    spec.node
                )));
            }
        }
        if !spec.fab_yield.is_finite() || spec.fab_yield <= 0.0 || spec.fab_yield > 1.0 {
            return Err(Error::InvalidInput(format!(
                "cpu node {}: yield must lie in (0, 1]",
                spec.node
            )));
        }
        Ok(spec)
    }

    /// Embodied carbon in g/cm2 at intensity `ci`:
    /// `(gps + mps + ci * eps) / yield`. Affine and increasing in `ci`.
    pub fn embodied(&self, ci: f64) -> f64 {
        (self.gps_g_per_cm2 + self.mps_g_per_cm2 + ci * self.eps_kwh_per_cm2) / self.fab_yield
    }

    /// Shares of the three emission components at intensity `ci`; the yield
    /// factor cancels, and the shares sum to one.
    pub fn breakdown(&self, ci: f64) -> CarbonShares {
        let gas = self.gps_g_per_cm2;
        let material = self.mps_g_per_cm2;
        let electricity = ci * self.eps_kwh_per_cm2;
        let total = gas + material + electricity;
        CarbonShares {
            gas: gas / total,
            material: material / total,
            electricity: electricity / total,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CarbonShares {
    pub gas: f64,
    pub material: f64,
    pub electricity: f64,
}

/// Memory technology with the electricity term stored as the composite
/// kWh/GB rate (fab electricity per die area over bit density); storing the
/// composite sidesteps the inconsistent area units of the published tables.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemoryTechSpec {
    pub tech: String,
    pub yearly_ec_g_per_gb: f64,
    pub elec_per_gb_kwh: f64,
    pub alpha_m_g_per_gb: f64,
}

impl MemoryTechSpec {
    /// Recover the electricity-independent carbon from a published yearly
    /// figure and its electricity-consumption share:
    /// `alpha = yearly - elec_carbon`, `rate = elec_carbon / reference_ci`.
    pub fn calibrate(
        tech: impl Into<String>,
        yearly_ec_g_per_gb: f64,
        elec_carbon_g_per_gb: f64,
        ctx: &CalibrationContext,
    ) -> Result<Self> {
        let tech = tech.into();
        if !elec_carbon_g_per_gb.is_finite() || elec_carbon_g_per_gb < 0.0 {
            return Err(Error::Calibration(format!(
                "memory {tech}: electricity carbon must be non-negative"
            )));
        }
        if elec_carbon_g_per_gb > yearly_ec_g_per_gb {
            return Err(Error::Calibration(format!(
                "memory {tech}: electricity carbon {elec_carbon_g_per_gb} exceeds yearly embodied carbon {yearly_ec_g_per_gb} (would force a negative alpha)"
            )));
        }
        Ok(MemoryTechSpec {
            tech,
            yearly_ec_g_per_gb,
            elec_per_gb_kwh: elec_carbon_g_per_gb / ctx.reference_ci,
            alpha_m_g_per_gb: yearly_ec_g_per_gb - elec_carbon_g_per_gb,
        })
    }

    /// Build from an explicit electricity rate instead of the published
    /// electricity-carbon column: `alpha = yearly - reference_ci * rate`.
    /// Alpha must still come out non-negative.
    pub fn from_electricity_rate(
        tech: impl Into<String>,
        yearly_ec_g_per_gb: f64,
        elec_per_gb_kwh: f64,
        ctx: &CalibrationContext,
    ) -> Result<Self> {
        let tech = tech.into();
        let alpha = yearly_ec_g_per_gb - ctx.reference_ci * elec_per_gb_kwh;
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::Calibration(format!(
                "memory {tech}: electricity rate {elec_per_gb_kwh} kWh/GB forces a negative alpha at reference intensity {}",
                ctx.reference_ci
            )));
        }
        Ok(MemoryTechSpec {
            tech,
            yearly_ec_g_per_gb,
            elec_per_gb_kwh,
            alpha_m_g_per_gb: alpha,
        })
    }

    /// Embodied carbon in g/GB at intensity `ci`; at the calibration
    /// reference this reproduces the published yearly figure.
    pub fn embodied(&self, ci: f64) -> f64 {
        ci * self.elec_per_gb_kwh + self.alpha_m_g_per_gb
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StorageKind {
    Ssd,
    Hdd,
}

impl StorageKind {
    pub fn label(self) -> &'static str {
        match self {
            StorageKind::Ssd => "ssd",
            StorageKind::Hdd => "hdd",
        }
    }
}

impl std::fmt::Display for StorageKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Storage product; the LCA report publishes the electricity-independent
/// carbon directly, and the electricity rate falls out as
/// `(yearly - alpha) / reference_ci`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StorageProductSpec {
    pub product: String,
    pub kind: StorageKind,
    pub yearly_ec_g_per_gb: f64,
    pub alpha_s_g_per_gb: f64,
    pub epg_kwh_per_gb: f64,
}

impl StorageProductSpec {
    pub fn calibrate(
        product: impl Into<String>,
        kind: StorageKind,
        yearly_ec_g_per_gb: f64,
        alpha_s_g_per_gb: f64,
        ctx: &CalibrationContext,
    ) -> Result<Self> {
        let product = product.into();
        if !alpha_s_g_per_gb.is_finite() || alpha_s_g_per_gb < 0.0 {
            return Err(Error::Calibration(format!(
                "storage {product}: other carbon must be non-negative"
            )));
        }
        if alpha_s_g_per_gb > yearly_ec_g_per_gb {
            return Err(Error::Calibration(format!(
                "storage {product}: other carbon {alpha_s_g_per_gb} exceeds yearly embodied carbon {yearly_ec_g_per_gb}"
            )));
        }
        Ok(StorageProductSpec {
            product,
            kind,
            yearly_ec_g_per_gb,
            alpha_s_g_per_gb,
            epg_kwh_per_gb: (yearly_ec_g_per_gb - alpha_s_g_per_gb) / ctx.reference_ci,
        })
    }

    /// Embodied carbon in g/GB at intensity `ci`.
    pub fn embodied(&self, ci: f64) -> f64 {
        ci * self.epg_kwh_per_gb + self.alpha_s_g_per_gb
    }
}

/// Any of the three hardware models, resolved from a `kind:label` string.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HardwareModel {
    Cpu(CpuProcessSpec),
    Memory(MemoryTechSpec),
    Storage(StorageProductSpec),
}

impl HardwareModel {
    pub fn embodied(&self, ci: f64) -> f64 {
        match self {
            HardwareModel::Cpu(s) => s.embodied(ci),
            HardwareModel::Memory(s) => s.embodied(ci),
            HardwareModel::Storage(s) => s.embodied(ci),
        }
    }

    pub fn label(&self) -> String {
        match self {
            HardwareModel::Cpu(s) => format!("cpu:{}", s.node),
            HardwareModel::Memory(s) => format!("memory:{}", s.tech),
            HardwareModel::Storage(s) => format!("{}:{}", s.kind, s.product),
        }
    }

    /// Unit of the embodied value: g/cm2 for CPUs, g/GB otherwise.
    pub fn unit(&self) -> &'static str {
        match self {
            HardwareModel::Cpu(_) => "g/cm2",
            HardwareModel::Memory(_) | HardwareModel::Storage(_) => "g/GB",
        }
    }
}

/// A calibration context plus every hardware spec it calibrated.
#[derive(Debug, Clone, PartialEq)]
pub struct HardwareBundle {
    pub calibration: CalibrationContext,
    pub cpus: Vec<CpuProcessSpec>,
    pub memories: Vec<MemoryTechSpec>,
    pub storages: Vec<StorageProductSpec>,
}

impl HardwareBundle {
    /// The published parameter tables under the builtin placeholder context.
    pub fn builtin() -> Self {
        let ctx = CalibrationContext::new(builtin::REFERENCE_CI, builtin::REFERENCE_PROVENANCE)
            .expect("builtin context is valid");
        HardwareBundle {
            cpus: builtin::CPU_NODES
                .iter()
                .map(|&(node, eps, gps, mps)| {
                    CpuProcessSpec::new(node, eps, gps, mps, 1.0).expect("builtin cpu row")
                })
                .collect(),
            memories: builtin::MEMORY_TECHS
                .iter()
                .map(|&(tech, yearly, elec)| {
                    MemoryTechSpec::calibrate(tech, yearly, elec, &ctx).expect("builtin memory row")
                })
                .collect(),
            storages: builtin::STORAGE_PRODUCTS
                .iter()
                .map(|&(product, kind, yearly, alpha)| {
                    StorageProductSpec::calibrate(product, kind, yearly, alpha, &ctx)
                        .expect("builtin storage row")
                })
                .collect(),
            calibration: ctx,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: BundleFile =
            toml::from_str(text).map_err(|e| Error::malformed("hardware specs", e.message()))?;
        let ctx = CalibrationContext::new(file.calibration.reference_ci, file.calibration.provenance)?;
        let mut bundle = HardwareBundle {
            calibration: ctx.clone(),
            cpus: Vec::new(),
            memories: Vec::new(),
            storages: Vec::new(),
        };
        for c in file.cpu {
            bundle
                .cpus
                .push(CpuProcessSpec::new(c.node, c.eps, c.gps, c.mps, c.fab_yield)?);
        }
        for m in file.memory {
            let spec = match (m.elec_carbon_g_per_gb, m.elec_per_gb_kwh) {
                (Some(carbon), None) => MemoryTechSpec::calibrate(m.tech, m.yearly_ec, carbon, &ctx)?,
                (None, Some(rate)) => {
                    MemoryTechSpec::from_electricity_rate(m.tech, m.yearly_ec, rate, &ctx)?
                }
                _ => {
                    return Err(Error::malformed(
                        "hardware specs",
                        format!(
                            "memory {}: give exactly one of elec_carbon_g_per_gb or elec_per_gb_kwh",
                            m.tech
                        ),
                    ))
                }
            };
            bundle.memories.push(spec);
        }
        for s in file.storage {
            bundle.storages.push(StorageProductSpec::calibrate(
                s.product,
                s.kind,
                s.yearly_ec_g_per_gb,
                s.other_carbon_g_per_gb,
                &ctx,
            )?);
        }
        Ok(bundle)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        HardwareBundle::from_toml_str(&text)
    }

    /// `"builtin"` or a path to a hardware-spec file.
    pub fn load(spec: &str) -> Result<Self> {
        if spec == "builtin" {
            Ok(HardwareBundle::builtin())
        } else {
            HardwareBundle::from_path(Path::new(spec))
        }
    }

    pub fn cpu(&self, node: &str) -> Option<&CpuProcessSpec> {
        self.cpus.iter().find(|c| c.node.eq_ignore_ascii_case(node))
    }

    pub fn memory(&self, tech: &str) -> Option<&MemoryTechSpec> {
        self.memories.iter().find(|m| m.tech.eq_ignore_ascii_case(tech))
    }

    pub fn storage(&self, product: &str) -> Option<&StorageProductSpec> {
        self.storages
            .iter()
            .find(|s| s.product.eq_ignore_ascii_case(product))
    }

    /// Resolve a `kind:label` reference such as `cpu:7nm`,
    /// `memory:10nm DDR4`, `ssd:Nytro 1551` or `hdd:Exos 7E8`.
    pub fn resolve(&self, reference: &str) -> Result<HardwareModel> {
        let (kind, label) = reference
            .split_once(':')
            .ok_or_else(|| Error::UnknownHardware(reference.to_string()))?;
        let label = label.trim();
        match kind.trim().to_ascii_lowercase().as_str() {
            "cpu" => self
                .cpu(label)
                .cloned()
                .map(HardwareModel::Cpu)
                .ok_or_else(|| Error::UnknownHardware(reference.to_string())),
            "memory" => self
                .memory(label)
                .cloned()
                .map(HardwareModel::Memory)
                .ok_or_else(|| Error::UnknownHardware(reference.to_string())),
            kind @ ("ssd" | "hdd") => {
                let spec = self
                    .storage(label)
                    .ok_or_else(|| Error::UnknownHardware(reference.to_string()))?;
                if spec.kind.label() != kind {
                    return Err(Error::InvalidInput(format!(
                        "storage product '{}' is {}, not {kind}",
                        spec.product, spec.kind
                    )));
                }
                Ok(HardwareModel::Storage(spec.clone()))
            }
            _ => Err(Error::UnknownHardware(reference.to_string())),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleFile {
    calibration: CalibrationEntry,
    #[serde(default)]
    cpu: Vec<CpuEntry>,
    #[serde(default)]
    memory: Vec<MemoryEntry>,
    #[serde(default)]
    storage: Vec<StorageEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CalibrationEntry {
    reference_ci: f64,
    #[serde(default)]
    provenance: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CpuEntry {
    node: String,
    eps: f64,
    gps: f64,
    mps: f64,
    #[serde(rename = "yield", default = "default_yield")]
    fab_yield: f64,
}

fn default_yield() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MemoryEntry {
    tech: String,
    yearly_ec: f64,
    #[serde(default)]
    elec_carbon_g_per_gb: Option<f64>,
    #[serde(default)]
    elec_per_gb_kwh: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StorageEntry {
    product: String,
    kind: StorageKind,
    yearly_ec_g_per_gb: f64,
    other_carbon_g_per_gb: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(ci: f64) -> CalibrationContext {
        CalibrationContext::new(ci, "test").unwrap()
    }

    fn cpu_7nm() -> CpuProcessSpec {
        HardwareBundle::builtin().cpu("7nm").unwrap().clone()
    }

    #[test]
    fn builtin_cpu_rows_match_published_parameters() {
        let b = HardwareBundle::builtin();
        let n7 = b.cpu("7nm").unwrap();
        assert_eq!((n7.eps_kwh_per_cm2, n7.gps_g_per_cm2, n7.mps_g_per_cm2), (1.52, 200.0, 500.0));
        let n28 = b.cpu("28nm").unwrap();
        assert_eq!((n28.eps_kwh_per_cm2, n28.gps_g_per_cm2, n28.mps_g_per_cm2), (0.9, 100.0, 500.0));
        let n3 = b.cpu("3nm").unwrap();
        assert_eq!((n3.eps_kwh_per_cm2, n3.gps_g_per_cm2, n3.mps_g_per_cm2), (2.75, 275.0, 500.0));
        assert_eq!(b.cpus.len(), 9);
        assert!(b.cpus.iter().all(|c| c.fab_yield == 1.0));
    }

    #[test]
    fn cpu_embodied_examples() {
        let cpu = cpu_7nm();
        assert_eq!(cpu.embodied(561.0), 1552.72);
        assert!((cpu.embodied(379.52) - 1276.87).abs() <= 0.01);
        assert!((cpu.embodied(127.64) - 894.01).abs() <= 0.01);
        assert_eq!(cpu.embodied(0.0), 700.0);
    }

    #[test]
    fn yield_divides_everything() {
        let spec = CpuProcessSpec::new("14nm", 1.2, 125.0, 500.0, 0.95).unwrap();
        let full = CpuProcessSpec::new("14nm", 1.2, 125.0, 500.0, 1.0).unwrap();
        let ci = 400.0;
        assert!((spec.embodied(ci) - full.embodied(ci) / 0.95).abs() < 1e-9);
        assert!(spec.embodied(ci) > full.embodied(ci));
    }

    #[test]
    fn breakdown_shares() {
        let cpu = cpu_7nm();
        let s = cpu.breakdown(720.3);
        assert!((s.gas - 0.111).abs() <= 0.005);
        assert!((s.material - 0.279).abs() <= 0.005);
        assert!((s.electricity - 0.610).abs() <= 0.005);
        assert!((s.gas + s.material + s.electricity - 1.0).abs() < 1e-12);

        let zero = cpu.breakdown(0.0);
        assert!((zero.gas - 200.0 / 700.0).abs() < 1e-12);
        assert!((zero.material - 500.0 / 700.0).abs() < 1e-12);
        assert_eq!(zero.electricity, 0.0);
    }

    #[test]
    fn memory_calibration_examples() {
        let c = ctx(500.0);
        let ddr4 = MemoryTechSpec::calibrate("10nm DDR4", 65.0, 35.74, &c).unwrap();
        assert!((ddr4.alpha_m_g_per_gb - 29.26).abs() < 1e-9);
        let lpddr3 = MemoryTechSpec::calibrate("30nm LPDDR3", 230.0, 67.50, &c).unwrap();
        assert!((lpddr3.alpha_m_g_per_gb - 162.50).abs() < 1e-9);
        let boundary = MemoryTechSpec::calibrate("x", 10.0, 10.0, &c).unwrap();
        assert_eq!(boundary.alpha_m_g_per_gb, 0.0);
        assert!(MemoryTechSpec::calibrate("x", 10.0, 10.1, &c).is_err());
    }

    #[test]
    fn memory_embodied_round_trips_and_extrapolates() {
        let c = ctx(500.0);
        let ddr4 = MemoryTechSpec::calibrate("10nm DDR4", 65.0, 35.74, &c).unwrap();
        assert!((ddr4.embodied(500.0) - 65.0).abs() < 1e-9);
        assert!((ddr4.embodied(0.0) - ddr4.alpha_m_g_per_gb).abs() < 1e-12);
        // doubling the intensity adds the electricity share once more
        assert!((ddr4.embodied(1000.0) - 100.74).abs() < 1e-9);
    }

    #[test]
    fn storage_calibration_examples() {
        let c = ctx(500.0);
        let nytro = StorageProductSpec::calibrate("Nytro 1551", StorageKind::Ssd, 3.91, 2.38, &c).unwrap();
        assert!((nytro.epg_kwh_per_gb - 0.00306).abs() < 1e-12);
        let exos = StorageProductSpec::calibrate("Exos 7E8", StorageKind::Hdd, 5.28, 2.94, &c).unwrap();
        assert!((exos.epg_kwh_per_gb - 2.34 / 500.0).abs() < 1e-12);
        let degenerate = StorageProductSpec::calibrate("x", StorageKind::Hdd, 5.0, 5.0, &c).unwrap();
        assert_eq!(degenerate.epg_kwh_per_gb, 0.0);
        assert!(StorageProductSpec::calibrate("x", StorageKind::Hdd, 5.0, 5.1, &c).is_err());
    }

    #[test]
    fn storage_affine_property() {
        let c = ctx(500.0);
        let s = StorageProductSpec::calibrate("Nytro 1551", StorageKind::Ssd, 3.91, 2.38, &c).unwrap();
        assert_eq!(s.embodied(0.0), s.alpha_s_g_per_gb);
        let base = 321.0;
        assert!((s.embodied(2.0 * base) - s.embodied(base) - base * s.epg_kwh_per_gb).abs() < 1e-12);
    }

    #[test]
    fn bundle_counts_match_published_tables() {
        let b = HardwareBundle::builtin();
        assert_eq!(b.memories.len(), 4);
        assert_eq!(b.storages.len(), 27);
        assert_eq!(b.storages.iter().filter(|s| s.kind == StorageKind::Ssd).count(), 5);
    }

    #[test]
    fn resolve_hardware_references() {
        let b = HardwareBundle::builtin();
        assert!(matches!(b.resolve("cpu:7nm"), Ok(HardwareModel::Cpu(_))));
        assert!(matches!(b.resolve("memory:10nm DDR4"), Ok(HardwareModel::Memory(_))));
        assert!(matches!(b.resolve("ssd:Nytro 1551"), Ok(HardwareModel::Storage(_))));
        assert!(matches!(b.resolve("hdd:Exos 7E8"), Ok(HardwareModel::Storage(_))));
        assert!(b.resolve("hdd:Nytro 1551").is_err());
        assert!(b.resolve("cpu:9000nm").is_err());
        assert!(b.resolve("7nm").is_err());
        assert_eq!(b.resolve("cpu:7nm").unwrap().unit(), "g/cm2");
    }

    #[test]
    fn bundle_file_round_trip() {
        let doc = r#"
            [calibration]
            reference_ci = 500.0
            provenance = "test file"

            [[cpu]]
            node = "7nm"
            eps = 1.52
            gps = 200.0
            mps = 500.0

            [[memory]]
            tech = "10nm DDR4"
            yearly_ec = 65.0
            elec_carbon_g_per_gb = 35.74

            [[storage]]
            product = "Nytro 1551"
            kind = "ssd"
            yearly_ec_g_per_gb = 3.91
            other_carbon_g_per_gb = 2.38
        "#;
        let b = HardwareBundle::from_toml_str(doc).unwrap();
        assert_eq!(b.cpu("7nm").unwrap().fab_yield, 1.0);
        assert!((b.memory("10nm DDR4").unwrap().alpha_m_g_per_gb - 29.26).abs() < 1e-9);
        assert!((b.storage("Nytro 1551").unwrap().epg_kwh_per_gb - 0.00306).abs() < 1e-12);

        let bad = doc.replace("elec_carbon_g_per_gb = 35.74", "mystery_key = 1.0");
        assert!(HardwareBundle::from_toml_str(&bad).is_err());
    }
}
