//! Closed-form bounds on the parameters of locally recoverable codes, in
//! exact integer and rational arithmetic.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiset::{smallest_m_for_t, two_set_distance_bound};

/// Largest dimension allowed by the rate bound `k/n ≤ r/(r+1)`.
pub fn rate_bound(n: u64, r: u64) -> u64 {
    n * r / (r + 1)
}

/// `n − k − ⌈k/r⌉ + 2`.
pub fn singleton_like(n: u64, k: u64, r: u64) -> i64 {
    n as i64 - k as i64 - k.div_ceil(r) as i64 + 2
}

/// `n − k + 1 − (⌈k/r⌉ − 1)(ρ − 1)` for codes whose local codes have
/// distance `ρ`.
pub fn kamath_bound(n: u64, k: u64, r: u64, rho: u64) -> Result<i64> {
    if rho < 2 {
        return Err(Error::InvalidParameters(format!("rho = {rho} must be at least 2")));
    }
    Ok(n as i64 - k as i64 + 1 - (k.div_ceil(r) as i64 - 1) * (rho as i64 - 1))
}

/// Whether `0 < n − k(r+1)/r < r+1`, the range in which no code meets
/// [`singleton_like`]. Defined only for `r | k`.
pub fn nonexistence_window(n: u64, k: u64, r: u64) -> Result<bool> {
    if r == 0 || !k.is_multiple_of(r) {
        return Err(Error::InvalidParameters(format!("r = {r} must divide k = {k}")));
    }
    let gap = n as i64 - (k / r * (r + 1)) as i64;
    Ok(gap > 0 && gap < r as i64 + 1)
}

/// Upper bound `n − k − ⌊(k−1)/r⌋ − ⌊(k−1)/r²⌋ + 1` for codes with two
/// disjoint recovering sets of size `r`.
pub fn mr_upper(n: u64, k: u64, r: u64) -> i64 {
    let k1 = k.saturating_sub(1);
    n as i64 - k as i64 - (k1 / r) as i64 - (k1 / (r * r)) as i64 + 1
}

/// `n / (1 + d̄)` with `d̄` the average out-degree: the guaranteed size of an
/// induced acyclic subgraph of a digraph with these out-degrees.
pub fn turan_dag_bound(out_degrees: &[u64]) -> Result<Ratio<u64>> {
    if out_degrees.is_empty() {
        return Err(Error::InvalidParameters("empty degree list".into()));
    }
    let n = out_degrees.len() as u64;
    let total: u64 = out_degrees.iter().sum();
    Ok(Ratio::new(n * n, n + total))
}

/// Every bound that applies to a parameter set, plus an optional measured
/// distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u64,
    pub k: u64,
    pub r: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    /// `r/(r+1)`, reduced, as `"num/den"`.
    pub rate_cap: String,
    pub max_k: u64,
    pub singleton_like_d: i64,
    pub kamath_d: Option<i64>,
    pub multi_lower_m: Option<u64>,
    pub two_set_lower_d: Option<u64>,
    pub mr_upper_d: Option<i64>,
    pub nonexistence_window: Option<bool>,
    pub measured_d: Option<u64>,
    pub optimal: Option<bool>,
}

impl BoundReport {
    pub fn new(n: u64, k: u64, r: u64, rho: Option<u64>, t: Option<u64>) -> Result<Self> {
        if r == 0 || k == 0 || r > k || k > n {
            return Err(Error::InvalidParameters(format!(
                "need 1 ≤ r ≤ k ≤ n, got n = {n}, k = {k}, r = {r}"
            )));
        }
        let rate = Ratio::new(r, r + 1);
        let kamath_d = rho.map(|rho| kamath_bound(n, k, r, rho)).transpose()?;
        let two = t.is_some_and(|t| t >= 2);
        Ok(BoundReport {
            n,
            k,
            r,
            rho,
            t,
            rate_cap: format!("{}/{}", rate.numer(), rate.denom()),
            max_k: rate_bound(n, r),
            singleton_like_d: singleton_like(n, k, r),
            kamath_d,
            multi_lower_m: t.filter(|&t| t >= 2).map(|t| smallest_m_for_t(t as usize) as u64),
            two_set_lower_d: if t == Some(2) && r >= 2 {
                two_set_distance_bound(n, k, r)?
            } else {
                None
            },
            mr_upper_d: two.then(|| mr_upper(n, k, r)),
            nonexistence_window: k.is_multiple_of(r).then(|| nonexistence_window(n, k, r)).transpose()?,
            measured_d: None,
            optimal: None,
        })
    }

    /// The tightest upper bound on the distance among those reported.
    pub fn best_upper(&self) -> i64 {
        let mut best = self.kamath_d.unwrap_or(self.singleton_like_d);
        if let Some(mr) = self.mr_upper_d {
            best = best.min(mr);
        }
        best
    }

    /// Record a measured distance; `optimal` says whether it meets the
    /// Singleton-like bound (or its multi-erasure refinement when `ρ` is set).
    pub fn with_measured(mut self, d: u64) -> Self {
        let target = self.kamath_d.unwrap_or(self.singleton_like_d);
        self.measured_d = Some(d);
        self.optimal = Some(d as i64 == target);
        self
    }
}
