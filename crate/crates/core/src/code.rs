//! Evaluation codes with local repair groups: the optimal construction from
//! a good polynomial, Reed-Solomon codes, codes from arbitrary encoding bases,
//! and systematic encoding.

use serde::{Deserialize, Serialize};

use crate::algebra::algebra_membership;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::goodpoly::{GoodPolynomial, Partition};
use crate::linalg::Matrix;
use crate::poly::{interpolate, Polynomial};

/// Length, dimension and locality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrcParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

/// A repair group: codeword positions whose symbols are the values of one
/// polynomial of degree below `local_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub positions: Vec<usize>,
    pub local_dim: usize,
}

/// Evaluations of `Σ a_i b_i` over an ordered list of distinct points.
#[derive(Debug, Clone)]
pub struct EvaluationCode {
    field: Field,
    locations: Vec<FieldElement>,
    basis: Vec<Polynomial>,
}

impl EvaluationCode {
    /// Checks that the points are distinct and the basis evaluates to a
    /// rank-`k` generator matrix.
    pub fn new(field: Field, locations: Vec<FieldElement>, basis: Vec<Polynomial>) -> Result<Self> {
        let mut sorted = locations.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::OverlappingBlocks(w[0].value()));
        }
        if basis.is_empty() {
            return Err(Error::InvalidParameters("dimension must be at least 1".into()));
        }
        let code = EvaluationCode {
            field,
            locations,
            basis,
        };
        if code.generator_matrix().rank(&code.field) < code.basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(code)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn locations(&self) -> &[FieldElement] {
        &self.locations
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn length(&self) -> usize {
        self.locations.len()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn max_degree(&self) -> usize {
        self.basis.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    /// `f_a = Σ a_i b_i`.
    pub fn message_polynomial(&self, message: &[FieldElement]) -> Result<Polynomial> {
        if message.len() != self.basis.len() {
            return Err(Error::LengthMismatch {
                expected: self.basis.len(),
                got: message.len(),
            });
        }
        if let Some(bad) = message.iter().find(|a| !self.field.contains(**a)) {
            return Err(Error::ElementOutOfRange {
                value: bad.value() as u64,
                q: self.field.order(),
            });
        }
        Ok(self
            .basis
            .iter()
            .zip(message)
            .fold(Polynomial::zero(), |acc, (b, &a)| acc.add(&self.field, &b.scale(&self.field, a))))
    }

    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let f = self.message_polynomial(message)?;
        Ok(self.locations.iter().map(|&a| f.evaluate(&self.field, a)).collect())
    }

    /// Row `i` is basis polynomial `i` evaluated at every location.
    pub fn generator_matrix(&self) -> Matrix {
        let rows = self
            .basis
            .iter()
            .map(|b| self.locations.iter().map(|&a| b.evaluate(&self.field, a)).collect())
            .collect();
        Matrix::from_rows(self.locations.len(), rows)
    }
}

/// Recover the symbol at `erased` from the first `local_dim` other surviving
/// symbols of `block`. Returns the interpolating polynomial and its value.
pub(crate) fn repair_in_block(
    field: &Field,
    locations: &[FieldElement],
    block_index: usize,
    block: &Block,
    symbols: &[Option<FieldElement>],
    erased: usize,
) -> Result<(Polynomial, FieldElement)> {
    if symbols.len() != locations.len() {
        return Err(Error::LengthMismatch {
            expected: locations.len(),
            got: symbols.len(),
        });
    }
    let survivors: Vec<(FieldElement, FieldElement)> = block
        .positions
        .iter()
        .filter(|&&p| p != erased)
        .filter_map(|&p| symbols[p].map(|s| (locations[p], s)))
        .take(block.local_dim)
        .collect();
    if survivors.len() < block.local_dim {
        return Err(Error::InsufficientSurvivors {
            block: block_index,
            needed: block.local_dim,
            available: survivors.len(),
        });
    }
    let delta = interpolate(field, &survivors)?;
    let value = delta.evaluate(field, locations[erased]);
    Ok((delta, value))
}

/// An evaluation code whose positions are grouped into repair blocks.
///
/// Position order is the concatenation of the partition's blocks.
#[derive(Debug, Clone)]
pub struct LrcCode {
    inner: EvaluationCode,
    params: LrcParams,
    partition: Partition,
    blocks: Vec<Block>,
    block_of: Vec<usize>,
    good: Option<Polynomial>,
    degree_cap: usize,
    designed_distance: usize,
    systematic: Option<Vec<Vec<FieldElement>>>,
}

/// Positions of each block when the codeword lists the blocks in order.
fn block_positions(partition: &Partition) -> Vec<Vec<usize>> {
    let mut next = 0;
    partition
        .blocks()
        .iter()
        .map(|b| {
            let positions = (next..next + b.len()).collect();
            next += b.len();
            positions
        })
        .collect()
}

/// `g^{⌊m/D⌋} x^{m mod D}` for increasing `m` with `m mod D < r`, where
/// `D = deg g`, until `k` polynomials are produced.
pub fn power_basis(field: &Field, g: &Polynomial, r: usize, k: usize) -> Vec<Polynomial> {
    let d = g.degree().unwrap_or(0).max(1);
    let mut basis = Vec::with_capacity(k);
    let mut powers = vec![Polynomial::constant(field.one())];
    let mut m = 0;
    while basis.len() < k {
        let (j, i) = (m / d, m % d);
        if i < r {
            while powers.len() <= j {
                let next = powers.last().unwrap().mul(field, g);
                powers.push(next);
            }
            basis.push(powers[j].shift(field, i));
        }
        m += 1;
    }
    basis
}

impl LrcCode {
    /// Shared constructor for every variant.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        field: &Field,
        partition: Partition,
        local_dims: Vec<usize>,
        r: usize,
        good: Option<Polynomial>,
        basis: Vec<Polynomial>,
        degree_cap: usize,
        designed_distance: usize,
    ) -> Result<Self> {
        let inner = EvaluationCode::new(field.clone(), partition.support(), basis)?;
        if inner.max_degree() > degree_cap {
            return Err(Error::InvalidParameters(format!(
                "basis degree {} exceeds the cap {degree_cap}",
                inner.max_degree()
            )));
        }
        let blocks: Vec<Block> = block_positions(&partition)
            .into_iter()
            .zip(local_dims)
            .map(|(positions, local_dim)| Block {
                positions,
                local_dim,
            })
            .collect();
        let mut block_of = vec![0; inner.length()];
        for (i, b) in blocks.iter().enumerate() {
            for &p in &b.positions {
                block_of[p] = i;
            }
        }
        Ok(LrcCode {
            params: LrcParams {
                n: inner.length(),
                k: inner.dimension(),
                r,
            },
            inner,
            partition,
            blocks,
            block_of,
            good,
            degree_cap,
            designed_distance,
            systematic: None,
        })
    }

    /// The optimal construction: blocks of size `r+1 = deg g` and the basis
    /// `g^j x^i`, `i < r`, enumerated by increasing degree. Handles `r ∤ k`.
    pub fn build(field: &Field, good: &GoodPolynomial, k: usize) -> Result<Self> {
        let deg = good.degree();
        if deg < 2 {
            return Err(Error::InvalidParameters("good polynomial must have degree at least 2".into()));
        }
        let r = deg - 1;
        let partition = good.partition().clone();
        if partition.uniform_block_size() != Some(r + 1) {
            return Err(Error::InvalidParameters(format!(
                "every block must have size deg g = {}",
                r + 1
            )));
        }
        let n = partition.size();
        if k == 0 || k > n * r / (r + 1) {
            return Err(Error::InvalidParameters(format!(
                "k = {k} must lie in 1..={} for n = {n}, r = {r}",
                n * r / (r + 1)
            )));
        }
        let basis = power_basis(field, good.polynomial(), r, k);
        let cap = k + k.div_ceil(r) - 2;
        let dims = vec![r; partition.num_blocks()];
        LrcCode::assemble(
            field,
            partition,
            dims,
            r,
            Some(good.polynomial().clone()),
            basis,
            cap,
            n - cap,
        )
    }

    /// Reed-Solomon code: one block holding every point, basis `1, x, …, x^{k-1}`.
    pub fn reed_solomon(field: &Field, locations: Vec<FieldElement>, k: usize) -> Result<Self> {
        let n = locations.len();
        if k == 0 || k > n {
            return Err(Error::InvalidParameters(format!("k = {k} must lie in 1..={n}")));
        }
        let basis = (0..k).map(|i| Polynomial::monomial(field, field.one(), i)).collect();
        let partition = Partition::new(vec![locations])?;
        LrcCode::assemble(field, partition, vec![k], k, None, basis, k - 1, n - k + 1)
    }

    /// Code from an explicit encoding basis lying in `⊕_{i<r} F_A[x] x^i`.
    /// The designed distance is `n − max deg`.
    pub fn build_from_mapping(
        field: &Field,
        partition: Partition,
        r: usize,
        basis: Vec<Polynomial>,
    ) -> Result<Self> {
        let n = partition.size();
        if r == 0 || partition.blocks().iter().any(|b| b.len() <= r) {
            return Err(Error::InvalidParameters(format!(
                "every block needs more than r = {r} points"
            )));
        }
        for (index, b) in basis.iter().enumerate() {
            if b.degree().unwrap_or(0) >= n || algebra_membership(field, b, &partition, r)?.is_none()
            {
                return Err(Error::NotInAlgebra { index });
            }
        }
        let max_deg = basis.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        let dims = vec![r; partition.num_blocks()];
        LrcCode::assemble(field, partition, dims, r, None, basis, max_deg, n - max_deg)
    }

    pub fn field(&self) -> &Field {
        self.inner.field()
    }

    pub fn params(&self) -> LrcParams {
        self.params
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Field element evaluated at each codeword position.
    pub fn locations(&self) -> &[FieldElement] {
        self.inner.locations()
    }

    pub fn basis(&self) -> &[Polynomial] {
        self.inner.basis()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_of(&self, position: usize) -> Result<usize> {
        self.block_of
            .get(position)
            .copied()
            .ok_or(Error::InvalidPosition(position))
    }

    /// The good polynomial, for constructions built from one.
    pub fn good_polynomial(&self) -> Option<&Polynomial> {
        self.good.as_ref()
    }

    /// Bound on `deg f_a` asserted during encoding.
    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// `n − deg cap`, the distance guaranteed by the degree argument.
    pub fn designed_distance(&self) -> usize {
        self.designed_distance
    }

    pub fn evaluation_code(&self) -> &EvaluationCode {
        &self.inner
    }

    pub fn generator_matrix(&self) -> Matrix {
        self.inner.generator_matrix()
    }

    pub fn message_polynomial(&self, message: &[FieldElement]) -> Result<Polynomial> {
        let f = self.inner.message_polynomial(message)?;
        assert!(
            f.degree().unwrap_or(0) <= self.degree_cap,
            "encoding polynomial exceeds its degree cap"
        );
        Ok(f)
    }

    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let f = self.message_polynomial(message)?;
        Ok(self
            .locations()
            .iter()
            .map(|&a| f.evaluate(self.field(), a))
            .collect())
    }

    /// The decoding polynomial `δ` interpolated from the erased position's
    /// block survivors.
    pub fn decoding_polynomial(
        &self,
        symbols: &[Option<FieldElement>],
        erased: usize,
    ) -> Result<Polynomial> {
        let b = self.block_of(erased)?;
        repair_in_block(self.field(), self.locations(), b, &self.blocks[b], symbols, erased)
            .map(|(delta, _)| delta)
    }

    /// Recover the symbol at `erased` from its block.
    pub fn repair(&self, symbols: &[Option<FieldElement>], erased: usize) -> Result<FieldElement> {
        let b = self.block_of(erased)?;
        repair_in_block(self.field(), self.locations(), b, &self.blocks[b], symbols, erased)
            .map(|(_, value)| value)
    }

    /// The other positions of the block holding `position`.
    pub fn recovering_set(&self, position: usize) -> Result<Vec<usize>> {
        let b = self.block_of(position)?;
        Ok(self.blocks[b]
            .positions
            .iter()
            .copied()
            .filter(|&p| p != position)
            .collect())
    }

    /// First `r` points of each of the first `k/r` blocks.
    pub fn default_info_points(&self) -> Vec<Vec<FieldElement>> {
        let r = self.params.r;
        self.partition
            .blocks()
            .iter()
            .take(self.params.k / r.max(1))
            .map(|b| b[..r.min(b.len())].to_vec())
            .collect()
    }

    /// Systematic variant of an optimal code. Message symbol `a_{ij}`
    /// (flat index `i·r + j`) appears verbatim at point `info_points[i][j]`,
    /// which must lie in block `i`.
    ///
    /// The basis becomes `f̄_i φ_{ij}` where `φ_{ij}` are the Lagrange
    /// polynomials of `info_points[i]` and `f̄_i` is the combination of powers
    /// of `g` equal to 1 on block `i` and 0 on the other information blocks.
    pub fn systematic_build(&self, info_points: &[Vec<FieldElement>]) -> Result<LrcCode> {
        let field = self.field().clone();
        let LrcParams { k, r, .. } = self.params;
        let g = self
            .good
            .as_ref()
            .filter(|_| self.blocks.iter().all(|b| b.local_dim == r && b.positions.len() == r + 1))
            .ok_or_else(|| {
                Error::InvalidParameters("systematic encoding needs an optimal construction".into())
            })?;
        if k % r != 0 {
            return Err(Error::InvalidParameters(format!("r = {r} must divide k = {k}")));
        }
        let groups = k / r;
        if info_points.len() != groups {
            return Err(Error::InvalidParameters(format!(
                "{groups} information groups required, {} given",
                info_points.len()
            )));
        }
        for (i, group) in info_points.iter().enumerate() {
            let block = &self.partition.blocks()[i];
            let mut distinct = group.clone();
            distinct.sort();
            distinct.dedup();
            if group.len() != r || distinct.len() != r || !group.iter().all(|a| block.contains(a)) {
                return Err(Error::InvalidParameters(format!(
                    "information group {i} must be {r} distinct points of block {i}"
                )));
            }
        }
        let values: Vec<FieldElement> = (0..groups)
            .map(|i| g.evaluate(&field, self.partition.blocks()[i][0]))
            .collect();
        let vandermonde = Matrix::from_rows(
            groups,
            values
                .iter()
                .map(|&v| (0..groups).map(|j| field.pow(v, j as u64)).collect())
                .collect(),
        );
        let powers: Vec<Polynomial> = (0..groups).map(|j| g.pow(&field, j as u32)).collect();
        let mut basis = Vec::with_capacity(k);
        for (i, group) in info_points.iter().enumerate() {
            let mut unit = vec![field.zero(); groups];
            unit[i] = field.one();
            let coeffs = vandermonde
                .solve(&field, &unit)
                .expect("block values are distinct, so the Vandermonde matrix is invertible");
            let fbar = powers
                .iter()
                .zip(&coeffs)
                .fold(Polynomial::zero(), |acc, (p, &c)| acc.add(&field, &p.scale(&field, c)));
            for j in 0..r {
                let points: Vec<(FieldElement, FieldElement)> = group
                    .iter()
                    .enumerate()
                    .map(|(t, &b)| (b, if t == j { field.one() } else { field.zero() }))
                    .collect();
                let phi = interpolate(&field, &points)?;
                basis.push(fbar.mul(&field, &phi));
            }
        }
        let mut code = LrcCode::assemble(
            &field,
            self.partition.clone(),
            self.blocks.iter().map(|b| b.local_dim).collect(),
            r,
            self.good.clone(),
            basis,
            self.degree_cap,
            self.designed_distance,
        )?;
        code.systematic = Some(info_points.to_vec());
        Ok(code)
    }

    /// Information points of a systematic code.
    pub fn info_points(&self) -> Option<&[Vec<FieldElement>]> {
        self.systematic.as_deref()
    }

    /// Codeword positions carrying the message symbols, in message order.
    pub fn info_positions(&self) -> Option<Vec<usize>> {
        let points = self.systematic.as_ref()?;
        Some(
            points
                .iter()
                .flatten()
                .map(|a| {
                    self.locations()
                        .iter()
                        .position(|b| b == a)
                        .expect("information points lie in the support")
                })
                .collect(),
        )
    }
}
