//! Ingestion and indexing of electricity-generation data: source taxonomy,
//! emission factors, generation records, and the region/zone registry.
//!
//! Everything here normalizes to kWh and UTC at the boundary; the rest of
//! the crate never converts units again.

mod csv;
mod factors;
mod record;
mod registry;
mod source;

pub use csv::{
    parse_generation_csv, parse_generation_reader, CsvSchema, IngestOutcome, IngestWarning,
};
pub use factors::EmissionFactorTable;
pub use record::{EnergyGenerationRecord, GenerationDataset, RegionId, Resolution};
pub use registry::{RegionInfo, RegionRegistry};
pub use source::EnergySource;
