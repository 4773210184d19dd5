//! Brute-force verification of linear codes: exact minimum distance by
//! enumeration, locality and MDS certificates, and a generic erasure decoder.
//!
//! Everything here works from the generator matrix alone, independently of
//! how a code was constructed.

use std::collections::HashMap;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{EvaluationCode, LrcCode};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::multiset::{Lrc2Code, ProductCode};

/// Default bound on `q^k` for exhaustive distance computation.
pub const DEFAULT_DISTANCE_CAP: u128 = 1 << 25;
/// Default bound on `q^k` for projection-table locality checks.
pub const DEFAULT_PROJECTION_CAP: u128 = 1 << 16;
/// Default bound on the number of subsets scanned for recovering sets.
pub const DEFAULT_SUBSET_CAP: u128 = 1 << 20;

/// A linear code given by its generator matrix.
pub trait LinearCode {
    fn field(&self) -> &Field;
    fn generator_matrix(&self) -> Matrix;
    fn length(&self) -> usize;
    fn dimension(&self) -> usize;
}

impl LinearCode for EvaluationCode {
    fn field(&self) -> &Field {
        EvaluationCode::field(self)
    }
    fn generator_matrix(&self) -> Matrix {
        EvaluationCode::generator_matrix(self)
    }
    fn length(&self) -> usize {
        EvaluationCode::length(self)
    }
    fn dimension(&self) -> usize {
        EvaluationCode::dimension(self)
    }
}

impl LinearCode for LrcCode {
    fn field(&self) -> &Field {
        LrcCode::field(self)
    }
    fn generator_matrix(&self) -> Matrix {
        LrcCode::generator_matrix(self)
    }
    fn length(&self) -> usize {
        self.params().n
    }
    fn dimension(&self) -> usize {
        self.params().k
    }
}

impl LinearCode for Lrc2Code {
    fn field(&self) -> &Field {
        Lrc2Code::field(self)
    }
    fn generator_matrix(&self) -> Matrix {
        Lrc2Code::generator_matrix(self)
    }
    fn length(&self) -> usize {
        Lrc2Code::length(self)
    }
    fn dimension(&self) -> usize {
        Lrc2Code::dimension(self)
    }
}

impl LinearCode for ProductCode {
    fn field(&self) -> &Field {
        ProductCode::field(self)
    }
    fn generator_matrix(&self) -> Matrix {
        ProductCode::generator_matrix(self)
    }
    fn length(&self) -> usize {
        ProductCode::length(self)
    }
    fn dimension(&self) -> usize {
        ProductCode::dimension(self)
    }
}

/// A code given directly by a full-rank generator matrix.
#[derive(Debug, Clone)]
pub struct ExplicitCode {
    field: Field,
    generator: Matrix,
}

impl ExplicitCode {
    pub fn new(field: Field, generator: Matrix) -> Result<Self> {
        let rank = generator.rank(&field);
        if rank != generator.rows() || rank == 0 {
            return Err(Error::DependentBasis);
        }
        Ok(ExplicitCode { field, generator })
    }

    /// Build from rows of canonical integers.
    pub fn from_values(field: Field, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.element(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameters("ragged generator rows".into()));
        }
        ExplicitCode::new(field, Matrix::from_rows(cols, rows))
    }
}

impl LinearCode for ExplicitCode {
    fn field(&self) -> &Field {
        &self.field
    }
    fn generator_matrix(&self) -> Matrix {
        self.generator.clone()
    }
    fn length(&self) -> usize {
        self.generator.cols()
    }
    fn dimension(&self) -> usize {
        self.generator.rows()
    }
}

/// Encode through the generator matrix.
pub fn encode<C: LinearCode + ?Sized>(code: &C, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let g = code.generator_matrix();
    if message.len() != g.rows() {
        return Err(Error::LengthMismatch {
            expected: g.rows(),
            got: message.len(),
        });
    }
    Ok(g.left_mul_vec(code.field(), message))
}

fn message_space(q: u32, k: usize) -> Option<u128> {
    (q as u128).checked_pow(k as u32)
}

/// Minimum distance with a lowest-weight codeword's message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    /// Exact distance when `exhaustive`, otherwise an upper bound.
    pub distance: usize,
    pub witness: Vec<u32>,
    pub exhaustive: bool,
}

/// Exact minimum distance by enumerating all `q^k − 1` nonzero messages.
///
/// Work is split over the first message symbol; each worker walks its range
/// in lexicographic order and the results are reduced by (weight, message),
/// so the witness does not depend on scheduling.
pub fn min_distance_exhaustive<C: LinearCode + ?Sized>(code: &C, cap: u128) -> Result<DistanceResult> {
    let field = code.field();
    let g = code.generator_matrix();
    let (k, n) = (g.rows(), g.cols());
    let q = field.order();
    let size = message_space(q, k).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    // mult[j][c] = c · row_j as raw values
    let mult: Vec<Vec<Vec<u32>>> = (0..k)
        .map(|j| {
            (0..q)
                .map(|c| {
                    let c = field.wrap(c);
                    g.row(j).iter().map(|&x| field.mul(c, x).value()).collect()
                })
                .collect()
        })
        .collect();
    if k == 1 {
        let (weight, c) = (1..q)
            .map(|c| (mult[0][c as usize].iter().filter(|&&v| v != 0).count(), c))
            .min()
            .expect("q ≥ 2");
        return Ok(DistanceResult {
            distance: weight,
            witness: vec![c],
            exhaustive: true,
        });
    }
    let neg_last: Vec<Vec<u32>> = mult[k - 1]
        .iter()
        .map(|row| row.iter().map(|&v| field.neg_raw(v)).collect())
        .collect();

    let best = (0..q)
        .into_par_iter()
        .map(|top| {
            let mut digits = vec![0u32; k];
            digits[0] = top;
            let mut partial: Vec<Vec<u32>> = vec![mult[0][top as usize].clone(); k - 1];
            let mut best: Option<(usize, Vec<u32>)> = None;
            loop {
                let base = &partial[k - 2];
                let prefix_zero = digits[..k - 1].iter().all(|&d| d == 0);
                for c in 0..q {
                    if prefix_zero && c == 0 {
                        continue;
                    }
                    let target = &neg_last[c as usize];
                    let weight = base.iter().zip(target).filter(|(a, b)| a != b).count();
                    if best.as_ref().is_none_or(|(w, _)| weight < *w) {
                        let mut msg = digits.clone();
                        msg[k - 1] = c;
                        best = Some((weight, msg));
                    }
                }
                // advance the middle digits, least significant first
                let mut j = k - 2;
                loop {
                    if j == 0 {
                        return best;
                    }
                    digits[j] += 1;
                    if digits[j] < q {
                        break;
                    }
                    digits[j] = 0;
                    j -= 1;
                }
                for i in j..k - 1 {
                    let (done, rest) = partial.split_at_mut(i);
                    let prev = &done[i - 1];
                    let add = &mult[i][digits[i] as usize];
                    for t in 0..n {
                        rest[0][t] = field.add_raw(prev[t], add[t]);
                    }
                }
            }
        })
        .flatten()
        .min()
        .expect("at least one nonzero message");
    Ok(DistanceResult {
        distance: best.0,
        witness: best.1,
        exhaustive: true,
    })
}

/// Upper bound on the distance from the generator rows and `samples` seeded
/// random nonzero messages.
pub fn min_distance_sampled<C: LinearCode + ?Sized>(
    code: &C,
    samples: usize,
    seed: u64,
) -> DistanceResult {
    let field = code.field();
    let g = code.generator_matrix();
    let k = g.rows();
    let q = field.order();
    let weight = |msg: &[u32]| {
        let m: Vec<FieldElement> = msg.iter().map(|&v| field.wrap(v)).collect();
        g.left_mul_vec(field, &m).iter().filter(|v| v.value() != 0).count()
    };
    let mut candidates: Vec<Vec<u32>> = (0..k)
        .map(|i| (0..k).map(|j| u32::from(i == j)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let msg: Vec<u32> = (0..k).map(|_| rng.gen_range(0..q)).collect();
        if msg.iter().any(|&v| v != 0) {
            candidates.push(msg);
        }
    }
    let (distance, witness) = candidates
        .into_iter()
        .map(|m| (weight(&m), m))
        .min()
        .expect("k ≥ 1");
    DistanceResult {
        distance,
        witness,
        exhaustive: false,
    }
}

/// Exhaustive distance when `q^k ≤ cap`, sampled upper bound otherwise.
pub fn min_distance<C: LinearCode + ?Sized>(code: &C, cap: u128, samples: usize, seed: u64) -> DistanceResult {
    match min_distance_exhaustive(code, cap) {
        Ok(result) => result,
        Err(_) => min_distance_sampled(code, samples, seed),
    }
}

/// How a recovering set was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalityMethod {
    /// Every message enumerated; projections onto the set never collide
    /// with different values at the position.
    ProjectionTable,
    /// Column of the position lies in the span of the set's columns.
    Rank,
}

/// Outcome for one position and its declared recovering set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalityEntry {
    pub position: usize,
    pub set: Vec<usize>,
    pub holds: bool,
    pub method: LocalityMethod,
    /// Two messages whose codewords agree on `set` but differ at `position`.
    pub witness: Option<(Vec<u32>, Vec<u32>)>,
}

fn in_column_span(field: &Field, g: &Matrix, set: &[usize], position: usize) -> bool {
    let base = g.select_columns(set).rank(field);
    let mut with = set.to_vec();
    with.push(position);
    g.select_columns(&with).rank(field) == base
}

/// Message `a` with `a·G_I = 0` and `(a·G)_i ≠ 0`, if any.
fn rank_witness(field: &Field, g: &Matrix, set: &[usize], position: usize) -> Option<Vec<u32>> {
    let sub = g.select_columns(set).transpose();
    let column = g.column(position);
    let kernel = if set.is_empty() {
        (0..g.rows())
            .map(|i| (0..g.rows()).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect()
    } else {
        sub.null_space(field)
    };
    kernel.into_iter().find_map(|a: Vec<FieldElement>| {
        let dot = a
            .iter()
            .zip(&column)
            .fold(field.zero(), |acc, (&x, &y)| field.add(acc, field.mul(x, y)));
        (dot.value() != 0).then(|| a.iter().map(|v| v.value()).collect())
    })
}

fn messages(field: &Field, k: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let q = field.order();
    (0..k)
        .map(|_| 0..q)
        .multi_cartesian_product()
        .map(move |m| m.into_iter().map(|v| field.wrap(v)).collect())
}

/// Check each `(position, set)` pair against the definition of a
/// recovering set.
///
/// Uses the projection table when `q^k ≤ projection_cap`, the exact rank
/// criterion otherwise. Failures carry witness messages.
pub fn verify_locality<C: LinearCode + ?Sized>(
    code: &C,
    sets: &[(usize, Vec<usize>)],
    projection_cap: u128,
) -> Result<Vec<LocalityEntry>> {
    let field = code.field();
    let g = code.generator_matrix();
    let (k, n) = (g.rows(), g.cols());
    for (position, set) in sets {
        if let Some(&bad) = std::iter::once(position).chain(set).find(|&&p| p >= n) {
            return Err(Error::InvalidPosition(bad));
        }
    }
    let size = message_space(field.order(), k).unwrap_or(u128::MAX);
    if size <= projection_cap {
        // projection onto the set -> (symbol seen, message that produced it)
        type Table = HashMap<Vec<u32>, (u32, Vec<u32>)>;
        let mut tables: Vec<Table> = vec![HashMap::new(); sets.len()];
        let mut witnesses: Vec<Option<(Vec<u32>, Vec<u32>)>> = vec![None; sets.len()];
        for msg in messages(field, k) {
            let word = g.left_mul_vec(field, &msg);
            let raw: Vec<u32> = msg.iter().map(|v| v.value()).collect();
            for (idx, (position, set)) in sets.iter().enumerate() {
                if witnesses[idx].is_some() {
                    continue;
                }
                let key: Vec<u32> = set.iter().map(|&p| word[p].value()).collect();
                let value = word[*position].value();
                match tables[idx].get(&key) {
                    Some((seen, other)) if *seen != value => {
                        witnesses[idx] = Some((other.clone(), raw.clone()));
                    }
                    Some(_) => {}
                    None => {
                        tables[idx].insert(key, (value, raw.clone()));
                    }
                }
            }
        }
        return Ok(sets
            .iter()
            .zip(witnesses)
            .map(|((position, set), witness)| LocalityEntry {
                position: *position,
                set: set.clone(),
                holds: witness.is_none(),
                method: LocalityMethod::ProjectionTable,
                witness,
            })
            .collect());
    }
    Ok(sets
        .iter()
        .map(|(position, set)| {
            let holds = in_column_span(field, &g, set, *position);
            let witness = if holds {
                None
            } else {
                rank_witness(field, &g, set, *position).map(|a| (vec![0; k], a))
            };
            LocalityEntry {
                position: *position,
                set: set.clone(),
                holds,
                method: LocalityMethod::Rank,
                witness,
            }
        })
        .collect())
}

/// Whether the code punctured to `positions` is a `(|positions|, local_k)`
/// MDS code. The witness is a set of columns that fails: the whole block
/// when its rank is not `local_k`, else a `local_k`-subset of lower rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MdsReport {
    pub is_mds: bool,
    pub witness: Option<Vec<usize>>,
}

pub fn verify_mds<C: LinearCode + ?Sized>(code: &C, positions: &[usize], local_k: usize) -> Result<MdsReport> {
    let field = code.field();
    let g = code.generator_matrix();
    if let Some(&bad) = positions.iter().find(|&&p| p >= g.cols()) {
        return Err(Error::InvalidPosition(bad));
    }
    if g.select_columns(positions).rank(field) != local_k || local_k > positions.len() {
        return Ok(MdsReport {
            is_mds: false,
            witness: Some(positions.to_vec()),
        });
    }
    for subset in positions.iter().copied().combinations(local_k) {
        if g.select_columns(&subset).rank(field) < local_k {
            return Ok(MdsReport {
                is_mds: false,
                witness: Some(subset),
            });
        }
    }
    Ok(MdsReport {
        is_mds: true,
        witness: None,
    })
}

/// Recover the message from any surviving symbols whose generator columns
/// have rank `k`.
pub fn erasure_decode_global<C: LinearCode + ?Sized>(
    code: &C,
    symbols: &[Option<FieldElement>],
) -> Result<Vec<FieldElement>> {
    let field = code.field();
    let g = code.generator_matrix();
    if symbols.len() != g.cols() {
        return Err(Error::LengthMismatch {
            expected: g.cols(),
            got: symbols.len(),
        });
    }
    let survivors: Vec<usize> = (0..symbols.len()).filter(|&p| symbols[p].is_some()).collect();
    let sub = g.select_columns(&survivors);
    let rank = sub.rank(field);
    if rank < g.rows() {
        return Err(Error::Undecodable { rank, k: g.rows() });
    }
    let values: Vec<FieldElement> = survivors.iter().map(|&p| symbols[p].unwrap()).collect();
    sub.transpose().solve(field, &values).ok_or(Error::Inconsistent)
}

/// All inclusion-minimal recovering sets of `position` with at most
/// `max_size` elements, ordered by size then lexicographically.
pub fn search_recovering_sets<C: LinearCode + ?Sized>(
    code: &C,
    position: usize,
    max_size: usize,
    cap: u128,
) -> Result<Vec<Vec<usize>>> {
    let field = code.field();
    let g = code.generator_matrix();
    let n = g.cols();
    if position >= n {
        return Err(Error::InvalidPosition(position));
    }
    let others: Vec<usize> = (0..n).filter(|&p| p != position).collect();
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for s in 0..=max_size.min(others.len()) {
        total += binom;
        binom = binom * (others.len() - s) as u128 / (s + 1) as u128;
    }
    if total > cap {
        return Err(Error::CapExceeded { size: total, cap });
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    for size in 0..=max_size.min(others.len()) {
        for subset in others.iter().copied().combinations(size) {
            if found.iter().any(|f| f.iter().all(|p| subset.contains(p))) {
                continue;
            }
            if in_column_span(field, &g, &subset, position) {
                found.push(subset);
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodpoly::from_multiplicative_subgroup;

    fn f13() -> Field {
        Field::prime(13).unwrap()
    }

    fn code_942() -> LrcCode {
        let f = f13();
        let gp = from_multiplicative_subgroup(&f, f.element(3).unwrap(), 3).unwrap();
        LrcCode::build(&f, &gp, 4).unwrap()
    }

    #[test]
    fn distance_small() {
        let code = code_942();
        let d = min_distance_exhaustive(&code, DEFAULT_DISTANCE_CAP).unwrap();
        assert_eq!(d.distance, 5);
        let msg: Vec<FieldElement> = d.witness.iter().map(|&v| code.field().wrap(v)).collect();
        let word = code.encode(&msg).unwrap();
        assert_eq!(word.iter().filter(|v| v.value() != 0).count(), 5);
        assert!(min_distance_exhaustive(&code, 1000).is_err());
        let sampled = min_distance_sampled(&code, 2000, 3);
        assert!(sampled.distance >= 5 && !sampled.exhaustive);
    }

    #[test]
    fn distance_full_space_and_repetition() {
        let f = Field::prime(5).unwrap();
        let points: Vec<FieldElement> = (0..5).map(|v| f.element(v).unwrap()).collect();
        let full = LrcCode::reed_solomon(&f, points, 5).unwrap();
        assert_eq!(min_distance_exhaustive(&full, DEFAULT_DISTANCE_CAP).unwrap().distance, 1);
        let rep = ExplicitCode::from_values(f.clone(), &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        assert_eq!(min_distance_exhaustive(&rep, DEFAULT_DISTANCE_CAP).unwrap().distance, 2);
        let single = ExplicitCode::from_values(f, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(min_distance_exhaustive(&single, DEFAULT_DISTANCE_CAP).unwrap().distance, 3);
    }

    #[test]
    fn locality_certificates() {
        let code = code_942();
        let sets: Vec<(usize, Vec<usize>)> = (0..9).map(|p| (p, code.recovering_set(p).unwrap())).collect();
        for cap in [DEFAULT_PROJECTION_CAP, 0] {
            let report = verify_locality(&code, &sets, cap).unwrap();
            assert!(report.iter().all(|e| e.holds));
        }
        let f = Field::prime(5).unwrap();
        let rep = ExplicitCode::from_values(f.clone(), &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        let report = verify_locality(&rep, &[(0, vec![1]), (3, vec![2])], DEFAULT_PROJECTION_CAP).unwrap();
        assert!(report.iter().all(|e| e.holds));
        // an MDS code cannot be repaired from k − 1 symbols
        let points: Vec<FieldElement> = (0..5).map(|v| f.element(v).unwrap()).collect();
        let rs = LrcCode::reed_solomon(&f, points, 3).unwrap();
        for cap in [DEFAULT_PROJECTION_CAP, 0] {
            let bad = verify_locality(&rs, &[(0, vec![1, 2])], cap).unwrap();
            assert!(!bad[0].holds);
            let (a, b) = bad[0].witness.clone().unwrap();
            let enc = |m: &[u32]| {
                let m: Vec<FieldElement> = m.iter().map(|&v| f.wrap(v)).collect();
                rs.encode(&m).unwrap()
            };
            let (wa, wb) = (enc(&a), enc(&b));
            assert_eq!((wa[1], wa[2]), (wb[1], wb[2]));
            assert_ne!(wa[0], wb[0]);
        }
    }

    #[test]
    fn mds_checks() {
        let code = code_942();
        for b in code.blocks() {
            assert!(verify_mds(&code, &b.positions, 2).unwrap().is_mds);
        }
        let f = Field::prime(5).unwrap();
        let dup = ExplicitCode::from_values(f, &[vec![1, 1, 2], vec![1, 1, 3]]).unwrap();
        let report = verify_mds(&dup, &[0, 1, 2], 2).unwrap();
        assert!(!report.is_mds);
        assert_eq!(report.witness, Some(vec![0, 1]));
    }

    #[test]
    fn global_erasure_decoding() {
        let code = code_942();
        let f = code.field().clone();
        let msg: Vec<FieldElement> = [9u64, 4, 0, 12].iter().map(|&v| f.element(v).unwrap()).collect();
        let word = code.encode(&msg).unwrap();
        for erased in (0..9).combinations(4) {
            let mut s: Vec<Option<FieldElement>> = word.iter().copied().map(Some).collect();
            for &p in &erased {
                s[p] = None;
            }
            assert_eq!(erasure_decode_global(&code, &s).unwrap(), msg);
        }
        let undecodable = (0..9).combinations(5).any(|erased| {
            let mut s: Vec<Option<FieldElement>> = word.iter().copied().map(Some).collect();
            for &p in &erased {
                s[p] = None;
            }
            matches!(erasure_decode_global(&code, &s), Err(Error::Undecodable { .. }))
        });
        assert!(undecodable);
        let mut s: Vec<Option<FieldElement>> = word.iter().copied().map(Some).collect();
        s[0] = Some(f.add(word[0], f.one()));
        assert_eq!(erasure_decode_global(&code, &s).unwrap_err(), Error::Inconsistent);
    }

    #[test]
    fn recovering_set_search() {
        let f = Field::prime(5).unwrap();
        let rep = ExplicitCode::from_values(f.clone(), &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        assert_eq!(search_recovering_sets(&rep, 0, 3, DEFAULT_SUBSET_CAP).unwrap(), vec![vec![1]]);
        let points: Vec<FieldElement> = (0..5).map(|v| f.element(v).unwrap()).collect();
        let rs = LrcCode::reed_solomon(&f, points, 3).unwrap();
        let sets = search_recovering_sets(&rs, 0, 4, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(sets.len(), 4);
        assert!(sets.iter().all(|s| s.len() == 3));
        assert!(search_recovering_sets(&rs, 0, 4, 3).is_err());
    }
}
