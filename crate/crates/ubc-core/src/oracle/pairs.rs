//! Connectability decision for point-pair instances.

use crate::connectivity::connected_at;
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::instance::{Instance, Region, Selection};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const EXHAUSTIVE_PAIR_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DecisionMode {
    Exhaustive,
    Randomized { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum PairDecision {
    ConnectableYes { witness: Selection },
    ConnectableNo,
    /// No connected selection among the sampled ones.
    Unknown { trials: u64 },
}

fn select(pairs: &[(Point2, Point2)], bits: impl Fn(usize) -> bool) -> Vec<Point2> {
    pairs.iter().enumerate().map(|(i, &(a, b))| if bits(i) { b } else { a }).collect()
}

/// Decides whether some choice of one point per pair is connected at `alpha`.
pub fn pair_decision(inst: &Instance, alpha: f64, mode: DecisionMode) -> Result<PairDecision> {
    let eps = inst.eps();
    let mut pairs = Vec::with_capacity(inst.len());
    for (i, r) in inst.regions.iter().enumerate() {
        match *r {
            Region::PointPair(a, b) => pairs.push((a, b)),
            _ => return Err(Error::UnsupportedRegion { index: i, kind: r.kind(), operation: "pair_decision" }),
        }
    }
    let n = pairs.len();
    match mode {
        DecisionMode::Exhaustive => {
            if n > EXHAUSTIVE_PAIR_LIMIT {
                return Err(Error::BudgetExceeded {
                    what: "exhaustive pair selections",
                    required: 2f64.powi(n as i32),
                    budget: 2f64.powi(EXHAUSTIVE_PAIR_LIMIT as i32),
                });
            }
            let hit = (0..1u64 << n).into_par_iter().find_first(|&m| connected_at(&select(&pairs, |i| m >> i & 1 == 1), alpha, eps));
            Ok(match hit {
                Some(m) => PairDecision::ConnectableYes { witness: Selection::new(select(&pairs, |i| m >> i & 1 == 1)) },
                None => PairDecision::ConnectableNo,
            })
        }
        DecisionMode::Randomized { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let bits: Vec<bool> = (0..n).map(|_| rng.random()).collect();
                let pts = select(&pairs, |i| bits[i]);
                if connected_at(&pts, alpha, eps) {
                    return Ok(PairDecision::ConnectableYes { witness: Selection::new(pts) });
                }
            }
            Ok(PairDecision::Unknown { trials })
        }
    }
}
