use serde::Serialize;
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use ubc_core::{Instance, Point2};

/// Region counts and extent of an input.
#[derive(Debug, Serialize)]
pub struct InstanceDigest {
    pub name: Option<String>,
    pub regions: usize,
    pub kinds: BTreeMap<&'static str, usize>,
    pub bbox_min: Point2,
    pub bbox_max: Point2,
}

impl InstanceDigest {
    pub fn of(inst: &Instance) -> Self {
        let mut kinds = BTreeMap::new();
        for r in &inst.regions {
            *kinds.entry(r.kind()).or_insert(0) += 1;
        }
        let b = inst.bbox();
        InstanceDigest { name: inst.name.clone(), regions: inst.len(), kinds, bbox_min: b.min, bbox_max: b.max }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub instance: Option<InstanceDigest>,
    pub result: Value,
    pub wall_time_s: f64,
    /// Every parameter that influenced the result, defaults included.
    pub params: Map<String, Value>,
}
