//! Codes with two disjoint recovering sets per symbol: evaluation codes over
//! two orthogonal partitions, and tensor products of two LRC codes.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::algebra::{intersect_spans, local_space_spanning_set};
use crate::code::{repair_in_block, Block, EvaluationCode, LrcCode};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::goodpoly::{are_orthogonal, Partition};
use crate::linalg::Matrix;
use crate::poly::Polynomial;

fn locality_of(partition: &Partition) -> Result<usize> {
    match partition.uniform_block_size() {
        Some(size) if size >= 2 => Ok(size - 1),
        _ => Err(Error::InvalidParameters(
            "partition blocks must share one size of at least 2".into(),
        )),
    }
}

/// Basis of `V_m`: polynomials of degree below `m` lying in both
/// `⊕_{i<r} F_A[x] x^i` and `⊕_{i<s} F_A'[x] x^i`, where `r+1` and `s+1` are
/// the block sizes. Canonical echelon form, increasing degree.
pub fn intersect_spaces(
    field: &Field,
    first: &Partition,
    second: &Partition,
    m: usize,
) -> Result<Vec<Polynomial>> {
    let (r, s) = (locality_of(first)?, locality_of(second)?);
    let mut a = first.support();
    let mut b = second.support();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::SupportMismatch);
    }
    let u = local_space_spanning_set(field, first, r)?;
    let w = local_space_spanning_set(field, second, s)?;
    Ok(intersect_spans(field, &u, &w, m.min(a.len())))
}

/// Evaluation code on the common support of two orthogonal partitions, with
/// a local repair block in each.
#[derive(Debug, Clone)]
pub struct Lrc2Code {
    inner: EvaluationCode,
    partitions: [Partition; 2],
    systems: [Vec<Block>; 2],
    block_of: [Vec<usize>; 2],
    m: usize,
}

impl Lrc2Code {
    /// Uses the least `m` with `dim V_m = k`. Positions follow the first
    /// partition's block order.
    pub fn build(field: &Field, first: Partition, second: Partition, k: usize) -> Result<Self> {
        if !are_orthogonal(&first, &second)? {
            return Err(Error::InvalidParameters("partitions are not orthogonal".into()));
        }
        if k == 0 {
            return Err(Error::InvalidParameters("dimension must be at least 1".into()));
        }
        let n = first.size();
        let (r, s) = (locality_of(&first)?, locality_of(&second)?);
        let u = local_space_spanning_set(field, &first, r)?;
        let w = local_space_spanning_set(field, &second, s)?;
        let mut found = None;
        for m in 1..=n {
            let basis = intersect_spans(field, &u, &w, m);
            if basis.len() >= k {
                found = Some((m, basis));
                break;
            }
        }
        let Some((m, basis)) = found else {
            let full = intersect_spans(field, &u, &w, n).len();
            return Err(Error::InvalidParameters(format!(
                "k = {k} exceeds the intersection dimension {full}"
            )));
        };
        let inner = EvaluationCode::new(field.clone(), first.support(), basis)?;
        let index: HashMap<FieldElement, usize> = inner
            .locations()
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i))
            .collect();
        let make = |p: &Partition, dim: usize| -> (Vec<Block>, Vec<usize>) {
            let mut owner = vec![0; n];
            let blocks = p
                .blocks()
                .iter()
                .enumerate()
                .map(|(bi, b)| {
                    let positions: Vec<usize> = b.iter().map(|a| index[a]).collect();
                    for &q in &positions {
                        owner[q] = bi;
                    }
                    Block {
                        positions,
                        local_dim: dim,
                    }
                })
                .collect();
            (blocks, owner)
        };
        let (sys0, own0) = make(&first, r);
        let (sys1, own1) = make(&second, s);
        Ok(Lrc2Code {
            inner,
            partitions: [first, second],
            systems: [sys0, sys1],
            block_of: [own0, own1],
            m,
        })
    }

    pub fn field(&self) -> &Field {
        self.inner.field()
    }

    pub fn evaluation_code(&self) -> &EvaluationCode {
        &self.inner
    }

    pub fn partitions(&self) -> &[Partition; 2] {
        &self.partitions
    }

    /// Localities `(r, s)` of the two partitions.
    pub fn localities(&self) -> (usize, usize) {
        (
            self.systems[0][0].local_dim,
            self.systems[1][0].local_dim,
        )
    }

    pub fn length(&self) -> usize {
        self.inner.length()
    }

    pub fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    /// Degree cap: every encoding polynomial has degree below `m`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> &[Polynomial] {
        self.inner.basis()
    }

    pub fn locations(&self) -> &[FieldElement] {
        self.inner.locations()
    }

    /// `n − m + 1`.
    pub fn designed_distance(&self) -> usize {
        self.length() - self.m + 1
    }

    /// The larger of the degree bound and the two-partition counting bound.
    pub fn certified_distance(&self) -> usize {
        self.designed_distance().max(smallest_m_for_t(2))
    }

    pub fn blocks(&self, which: usize) -> Result<&[Block]> {
        self.systems
            .get(which)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::InvalidParameters(format!("no partition {which}")))
    }

    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.inner.encode(message)
    }

    pub fn generator_matrix(&self) -> Matrix {
        self.inner.generator_matrix()
    }

    /// Recovering set of `position` in partition `which`.
    pub fn recovering_set(&self, position: usize, which: usize) -> Result<Vec<usize>> {
        let blocks = self.blocks(which)?;
        let b = *self.block_of[which]
            .get(position)
            .ok_or(Error::InvalidPosition(position))?;
        Ok(blocks[b]
            .positions
            .iter()
            .copied()
            .filter(|&p| p != position)
            .collect())
    }

    /// Repair through the block of partition `which` (0 or 1).
    pub fn repair(
        &self,
        symbols: &[Option<FieldElement>],
        erased: usize,
        which: usize,
    ) -> Result<FieldElement> {
        let blocks = self.blocks(which)?;
        let b = *self.block_of[which]
            .get(erased)
            .ok_or(Error::InvalidPosition(erased))?;
        repair_in_block(self.field(), self.locations(), b, &blocks[b], symbols, erased)
            .map(|(_, v)| v)
    }
}

/// Least `m ≥ 1` with `t·f(m) ≤ C(m,2)`, where `f(m) = m/2` for even `m` and
/// `(m+3)/2` for odd `m`. A code whose recovering sets come from `t`
/// mutually orthogonal partitions has distance at least this `m`.
pub fn smallest_m_for_t(t: usize) -> usize {
    assert!(t >= 1, "t must be positive");
    (1..)
        .find(|&m: &usize| {
            // doubled to stay in integers
            let twice_f = if m % 2 == 0 { m } else { m + 3 };
            t * twice_f <= m * (m - 1)
        })
        .expect("the inequality eventually holds")
}

/// Lower bound `m(r−1)/(r+1)` on `dim V_m` for two orthogonal partitions
/// into blocks of size `r+1`.
pub fn dim_lower_bound(m: u64, r: u64) -> Result<Ratio<u64>> {
    if r < 2 {
        return Err(Error::InvalidParameters("the bound needs r ≥ 2".into()));
    }
    Ok(Ratio::new(m * (r - 1), r + 1))
}

/// `n − k − ⌈2k/(r−1)⌉ + 1`: distance guaranteed for two equal-locality
/// partitions. `None` when the value is not positive.
pub fn two_set_distance_bound(n: u64, k: u64, r: u64) -> Result<Option<u64>> {
    if r < 2 {
        return Err(Error::InvalidParameters("the bound needs r ≥ 2".into()));
    }
    let sub = k + (2 * k).div_ceil(r - 1);
    Ok((n + 1).checked_sub(sub).filter(|&d| d > 0))
}

/// Tensor product of two LRC codes. Messages are `k_1 × k_2` matrices and
/// codewords `n_1 × n_2` grids, both flattened row-major.
#[derive(Debug, Clone)]
pub struct ProductCode {
    first: LrcCode,
    second: LrcCode,
}

impl ProductCode {
    pub fn build(first: LrcCode, second: LrcCode) -> Result<Self> {
        if first.field().spec() != second.field().spec() {
            return Err(Error::FieldMismatch);
        }
        Ok(ProductCode { first, second })
    }

    pub fn components(&self) -> (&LrcCode, &LrcCode) {
        (&self.first, &self.second)
    }

    pub fn field(&self) -> &Field {
        self.first.field()
    }

    /// `(n_1, n_2)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.first.params().n, self.second.params().n)
    }

    pub fn length(&self) -> usize {
        self.first.params().n * self.second.params().n
    }

    pub fn dimension(&self) -> usize {
        self.first.params().k * self.second.params().k
    }

    /// Grid of `f_a(x, y) = Σ a_{ij} b_i(x) c_j(y)`, computed as `G_1ᵀ A G_2`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let field = self.field();
        let (k1, k2) = (self.first.params().k, self.second.params().k);
        if message.len() != k1 * k2 {
            return Err(Error::LengthMismatch {
                expected: k1 * k2,
                got: message.len(),
            });
        }
        let a = Matrix::from_rows(k2, message.chunks(k2).map(<[_]>::to_vec).collect());
        let g1 = self.first.generator_matrix();
        let g2 = self.second.generator_matrix();
        let grid = g1.transpose().mul(field, &a).mul(field, &g2);
        Ok((0..grid.rows()).flat_map(|i| grid.row(i).to_vec()).collect())
    }

    /// Kronecker product of the component generator matrices.
    pub fn generator_matrix(&self) -> Matrix {
        let field = self.field();
        let g1 = self.first.generator_matrix();
        let g2 = self.second.generator_matrix();
        let rows = (0..g1.rows())
            .flat_map(|i| (0..g2.rows()).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut row = Vec::with_capacity(g1.cols() * g2.cols());
                for u in 0..g1.cols() {
                    for v in 0..g2.cols() {
                        row.push(field.mul(g1[(i, u)], g2[(j, v)]));
                    }
                }
                row
            })
            .collect();
        Matrix::from_rows(g1.cols() * g2.cols(), rows)
    }

    /// Recovering set of grid position `(u, v)` along `axis` (1: the first
    /// code's block within column `v`; 2: the second code's block within
    /// row `u`), as flat positions.
    pub fn recovering_set(&self, position: usize, axis: usize) -> Result<Vec<usize>> {
        let (n1, n2) = self.shape();
        if position >= n1 * n2 {
            return Err(Error::InvalidPosition(position));
        }
        let (u, v) = (position / n2, position % n2);
        match axis {
            1 => Ok(self
                .first
                .recovering_set(u)?
                .into_iter()
                .map(|p| p * n2 + v)
                .collect()),
            2 => Ok(self
                .second
                .recovering_set(v)?
                .into_iter()
                .map(|p| u * n2 + p)
                .collect()),
            _ => Err(Error::InvalidParameters(format!("axis must be 1 or 2, got {axis}"))),
        }
    }

    /// Repair flat position `erased` along `axis`.
    pub fn repair(
        &self,
        symbols: &[Option<FieldElement>],
        erased: usize,
        axis: usize,
    ) -> Result<FieldElement> {
        let (n1, n2) = self.shape();
        if symbols.len() != n1 * n2 {
            return Err(Error::LengthMismatch {
                expected: n1 * n2,
                got: symbols.len(),
            });
        }
        if erased >= n1 * n2 {
            return Err(Error::InvalidPosition(erased));
        }
        let (u, v) = (erased / n2, erased % n2);
        match axis {
            1 => {
                let column: Vec<Option<FieldElement>> = (0..n1).map(|i| symbols[i * n2 + v]).collect();
                self.first.repair(&column, u)
            }
            2 => self.second.repair(&symbols[u * n2..(u + 1) * n2], v),
            _ => Err(Error::InvalidParameters(format!("axis must be 1 or 2, got {axis}"))),
        }
    }
}
