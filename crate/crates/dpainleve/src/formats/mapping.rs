//! JSON output of the parameter maps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::model::{ComplexText, ParamsDoc};

pub const FORMAT: &str = "dp1-parameters";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HierarchyEntry {
    pub n: i64,
    pub a: ComplexText,
    pub b: ComplexText,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingDocument {
    pub format: String,
    pub precision_bits: usize,
    /// `p4` or `freud`.
    pub source: String,
    pub inputs: BTreeMap<String, ComplexText>,
    pub params: ParamsDoc,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub hierarchy: Vec<HierarchyEntry>,
}
