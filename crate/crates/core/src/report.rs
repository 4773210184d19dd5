//! Verification report: measured distance, bounds, locality and local MDS
//! checks for one code.

use serde::Serialize;

use crate::bounds::BoundReport;
use crate::codespec::AnyCode;
use crate::error::Result;
use crate::oracle::{
    min_distance, verify_locality, verify_mds, LocalityEntry, DEFAULT_DISTANCE_CAP,
    DEFAULT_PROJECTION_CAP, DEFAULT_SUBSET_CAP,
};

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest message space enumerated for the exact distance.
    pub exhaustive_cap: u128,
    /// Random messages tried when the space exceeds the cap.
    pub samples: usize,
    pub seed: u64,
    pub projection_cap: u128,
    /// Largest number of column subsets tried per MDS check.
    pub subset_cap: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_cap: DEFAULT_DISTANCE_CAP,
            samples: 20_000,
            seed: 0,
            projection_cap: DEFAULT_PROJECTION_CAP,
            subset_cap: DEFAULT_SUBSET_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MdsBlockReport {
    pub route: usize,
    pub block: usize,
    pub positions: Vec<usize>,
    pub local_k: usize,
    /// `None` when the subset count exceeds the cap.
    pub is_mds: Option<bool>,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub construction: String,
    pub n: usize,
    pub k: usize,
    /// Exact distance, or `null` when enumeration was over the cap.
    pub measured_d: Option<usize>,
    /// Lowest weight seen when sampling.
    pub sampled_upper_d: Option<usize>,
    /// Message of a lowest-weight codeword.
    pub witness: Vec<u32>,
    pub designed_d: usize,
    pub bound_d: i64,
    pub optimal: bool,
    pub locality: Vec<LocalityEntry>,
    pub mds_blocks: Vec<MdsBlockReport>,
    pub bounds: BoundReport,
}

impl VerifyReport {
    /// Every declared recovering set holds and every checked block is MDS.
    pub fn all_hold(&self) -> bool {
        self.locality.iter().all(|e| e.holds) && self.mds_blocks.iter().all(|b| b.is_mds != Some(false))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k.min(n - k.min(n))).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

pub fn verify(code: &AnyCode, opts: &VerifyOptions) -> Result<VerifyReport> {
    let dist = min_distance(code, opts.exhaustive_cap, opts.samples, opts.seed);
    let (n, k, r, rho, t) = code.bound_params();
    let bounds = BoundReport::new(n, k, r.min(k), rho, t)?;
    let bound_d = bounds.best_upper();
    let mut sets = Vec::new();
    for position in 0..code.length() {
        for set in code.recovering_sets(position)? {
            sets.push((position, set));
        }
    }
    let locality = verify_locality(code, &sets, opts.projection_cap)?;
    let mut mds_blocks = Vec::new();
    for (route, blocks) in code.local_codes().into_iter().enumerate() {
        for (block, (positions, local_k)) in blocks.into_iter().enumerate() {
            let (is_mds, witness) = if binomial(positions.len(), local_k) <= opts.subset_cap {
                let rep = verify_mds(code, &positions, local_k)?;
                (Some(rep.is_mds), rep.witness)
            } else {
                (None, None)
            };
            mds_blocks.push(MdsBlockReport {
                route: route + 1,
                block,
                positions,
                local_k,
                is_mds,
                witness,
            });
        }
    }
    let measured_d = dist.exhaustive.then_some(dist.distance);
    Ok(VerifyReport {
        construction: code.name().to_string(),
        n: code.length(),
        k: code.dimension(),
        measured_d,
        sampled_upper_d: (!dist.exhaustive).then_some(dist.distance),
        witness: dist.witness,
        designed_d: code.designed_distance(),
        bound_d,
        optimal: measured_d.is_some_and(|d| d as i64 == bound_d),
        locality,
        mds_blocks,
        bounds: match measured_d {
            Some(d) => bounds.with_measured(d as u64),
            None => bounds,
        },
    })
}
