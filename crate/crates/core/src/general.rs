//! Variants of the optimal construction: lengths not divisible by `r+1`,
//! CRT codes with MDS local codes of arbitrary sizes, and codes whose local
//! codes tolerate several erasures.

use crate::code::{power_basis, LrcCode};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::goodpoly::{GoodPolynomial, Partition};
use crate::poly::{annihilator, crt_combine, interpolate, Polynomial};

/// Code whose last block is shorter than the others.
///
/// The short block has `s` points and locality `s − 1`; every other block
/// has `r + 1` points and locality `r`.
#[derive(Debug, Clone)]
pub struct ArbitraryLengthCode {
    code: LrcCode,
    short_size: usize,
    short_annihilator: Polynomial,
}

impl ArbitraryLengthCode {
    pub fn code(&self) -> &LrcCode {
        &self.code
    }

    pub fn into_code(self) -> LrcCode {
        self.code
    }

    /// `s`, the size of the last block.
    pub fn short_size(&self) -> usize {
        self.short_size
    }

    /// Annihilator of the short block.
    pub fn short_annihilator(&self) -> &Polynomial {
        &self.short_annihilator
    }
}

/// Split a partition into full blocks of size `r+1` and a final short block,
/// returning `s`.
fn short_block_size(partition: &Partition, r: usize) -> Result<usize> {
    let blocks = partition.blocks();
    let (last, full) = blocks
        .split_last()
        .ok_or_else(|| Error::InvalidParameters("empty partition".into()))?;
    if full.iter().any(|b| b.len() != r + 1) {
        return Err(Error::InvalidParameters(format!(
            "all blocks but the last must have size {}",
            r + 1
        )));
    }
    let s = last.len();
    if s == r + 1 {
        return Err(Error::InvalidParameters(
            "n is a multiple of r+1; use the optimal construction".into(),
        ));
    }
    if s < 2 {
        return Err(Error::InvalidParameters("the short block needs at least 2 points".into()));
    }
    Ok(s)
}

/// Linear construction for `n mod (r+1) = s ∉ {0, 1}` with `r | k+1`.
///
/// `g` has degree `r+1` and is constant on every block, the short last one
/// included; it is replaced by `g − g(A_m)` so that it vanishes there. The
/// encoding polynomial has degree at most `k + ⌈k/r⌉ − 1`.
pub fn build_arbitrary_linear(
    field: &Field,
    good: &GoodPolynomial,
    k: usize,
) -> Result<ArbitraryLengthCode> {
    let r = good
        .degree()
        .checked_sub(1)
        .filter(|&r| r >= 1)
        .ok_or_else(|| Error::InvalidParameters("good polynomial must have degree at least 2".into()))?;
    let partition = good.partition().clone();
    let s = short_block_size(&partition, r)?;
    if k == 0 || !(k + 1).is_multiple_of(r) {
        return Err(Error::InvalidParameters(format!("r = {r} must divide k + 1 = {}", k + 1)));
    }
    let per = (k + 1) / r;
    if per > partition.num_blocks() {
        return Err(Error::InvalidParameters(format!(
            "k = {k} too large for {} blocks",
            partition.num_blocks()
        )));
    }
    let short = partition.blocks().last().unwrap().clone();
    let shift = good.block_values().last().copied().unwrap();
    let g = good
        .polynomial()
        .sub(field, &Polynomial::constant(shift));
    let h = annihilator(field, &short);

    // entries (degree, polynomial) with distinct degrees j(r+1) + i
    let mut entries: Vec<(usize, Polynomial)> = Vec::with_capacity(k);
    let mut power = Polynomial::constant(field.one());
    for j in 0..per {
        for i in 0..r {
            let poly = if i + 1 < s {
                power.shift(field, i)
            } else if i + 1 == s {
                if j == 0 {
                    continue;
                }
                power.shift(field, i)
            } else {
                power.shift(field, i - s).mul(field, &h)
            };
            entries.push((j * (r + 1) + i, poly));
        }
        power = power.mul(field, &g);
    }
    entries.sort_by_key(|(d, _)| *d);
    let basis: Vec<Polynomial> = entries.into_iter().map(|(_, p)| p).collect();
    debug_assert_eq!(basis.len(), k);
    let cap = k + k.div_ceil(r) - 1;
    let mut dims = vec![r; partition.num_blocks()];
    *dims.last_mut().unwrap() = s - 1;
    let n = partition.size();
    let code = LrcCode::assemble(field, partition, dims, r, Some(g), basis, cap, n - cap)?;
    Ok(ArbitraryLengthCode {
        code,
        short_size: s,
        short_annihilator: h,
    })
}

/// Largest dimension the general construction can reach with `blocks`
/// blocks and locality `r`: each coefficient map is injective into the
/// `blocks`-dimensional algebra, and the one for `x^{s−1}` into its
/// codimension-one subspace vanishing on the short block.
pub fn arbitrary_dimension_cap(blocks: usize, r: usize) -> usize {
    (r * blocks).saturating_sub(1)
}

/// Images of unit vectors under power-of-`g` coefficient maps:
/// `g^0, …, g^{len−1}` for `i ≠ s−1` and `g^1, …, g^{len}` for `i = s−1`.
/// `g` must vanish on the short block.
pub fn power_mappings(
    field: &Field,
    g: &Polynomial,
    s: usize,
    lengths: &[usize],
) -> Vec<Vec<Polynomial>> {
    lengths
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            let offset = usize::from(i + 1 == s);
            (offset..offset + len).map(|j| g.pow(field, j as u32)).collect()
        })
        .collect()
}

/// General construction: `mappings[i]` lists the images of the unit vectors
/// under the linear map into the block algebra that produces the
/// coefficient of `x^i` (for `i < s`) or of `x^{i−s} h(x)` (for `i ≥ s`),
/// where `h` annihilates the short block. Images for `i = s−1` must vanish on
/// the short block.
pub fn build_arbitrary_general(
    field: &Field,
    partition: Partition,
    r: usize,
    mappings: &[Vec<Polynomial>],
) -> Result<ArbitraryLengthCode> {
    let s = short_block_size(&partition, r)?;
    if mappings.len() != r {
        return Err(Error::InvalidParameters(format!(
            "{r} coefficient maps required, {} given",
            mappings.len()
        )));
    }
    let short = partition.blocks().last().unwrap().clone();
    let h = annihilator(field, &short);
    let mut basis = Vec::new();
    for (i, images) in mappings.iter().enumerate() {
        for f in images {
            let index = basis.len();
            for block in partition.blocks() {
                let v = f.evaluate(field, block[0]);
                if block.iter().any(|&a| f.evaluate(field, a) != v) {
                    return Err(Error::NotInAlgebra { index });
                }
            }
            if i + 1 == s && short.iter().any(|&a| f.evaluate(field, a).value() != 0) {
                return Err(Error::InvalidParameters(format!(
                    "map {i} must land in polynomials vanishing on the short block"
                )));
            }
            let term = if i < s {
                f.shift(field, i)
            } else {
                f.shift(field, i - s).mul(field, &h)
            };
            basis.push(term);
        }
    }
    let cap = arbitrary_dimension_cap(partition.num_blocks(), r);
    if basis.len() > cap {
        return Err(Error::InvalidParameters(format!(
            "dimension {} exceeds the cap {cap}",
            basis.len()
        )));
    }
    let max_deg = basis.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let mut dims = vec![r; partition.num_blocks()];
    *dims.last_mut().unwrap() = s - 1;
    let n = partition.size();
    if max_deg >= n {
        return Err(Error::InvalidParameters(format!(
            "encoding degree {max_deg} is not below n = {n}"
        )));
    }
    let code = LrcCode::assemble(field, partition, dims, r, None, basis, max_deg, n - max_deg)?;
    Ok(ArbitraryLengthCode {
        code,
        short_size: s,
        short_annihilator: h,
    })
}

/// CRT code: the message fills residues `M_i` of degree below `k_i` (block 1
/// first, then block 2, …; unused tail coefficients are zero), and the
/// encoding polynomial is the unique `f` of degree below `n` with
/// `f ≡ M_i mod ∏_{α∈A_i}(x − α)`. Each block is an `(n_i, k_i)` MDS code.
#[derive(Debug, Clone)]
pub struct CrtCode {
    code: LrcCode,
    local_dims: Vec<usize>,
}

impl CrtCode {
    pub fn build(field: &Field, blocks: Vec<(Vec<FieldElement>, usize)>, k: usize) -> Result<Self> {
        let local_dims: Vec<usize> = blocks.iter().map(|(_, ki)| *ki).collect();
        for (i, (points, ki)) in blocks.iter().enumerate() {
            if *ki == 0 || *ki > points.len() {
                return Err(Error::InvalidParameters(format!(
                    "block {i}: local dimension {ki} must lie in 1..={}",
                    points.len()
                )));
            }
        }
        let total: usize = local_dims.iter().sum();
        if k == 0 || k > total {
            return Err(Error::InvalidParameters(format!("k = {k} must lie in 1..={total}")));
        }
        let partition = Partition::new(blocks.into_iter().map(|(p, _)| p).collect())?;
        let moduli: Vec<Polynomial> = partition
            .blocks()
            .iter()
            .map(|b| annihilator(field, b))
            .collect();
        let mut basis = Vec::with_capacity(k);
        'fill: for (i, &ki) in local_dims.iter().enumerate() {
            for t in 0..ki {
                if basis.len() == k {
                    break 'fill;
                }
                let residues: Vec<Polynomial> = (0..moduli.len())
                    .map(|j| {
                        if j == i {
                            Polynomial::monomial(field, field.one(), t)
                        } else {
                            Polynomial::zero()
                        }
                    })
                    .collect();
                basis.push(crt_combine(field, &residues, &moduli)?);
            }
        }
        let n = partition.size();
        let max_deg = basis.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        let r = *local_dims.iter().max().unwrap();
        let code = LrcCode::assemble(
            field,
            partition,
            local_dims.clone(),
            r,
            None,
            basis,
            n - 1,
            n - max_deg,
        )?;
        Ok(CrtCode { code, local_dims })
    }

    pub fn code(&self) -> &LrcCode {
        &self.code
    }

    pub fn into_code(self) -> LrcCode {
        self.code
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.code.encode(message)
    }

    /// The residues `M_i` a message is split into.
    pub fn message_residues(&self, message: &[FieldElement]) -> Result<Vec<Polynomial>> {
        let k = self.code.params().k;
        if message.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: message.len(),
            });
        }
        let mut rest = message;
        Ok(self
            .local_dims
            .iter()
            .map(|&ki| {
                let take = ki.min(rest.len());
                let (head, tail) = rest.split_at(take);
                rest = tail;
                Polynomial::new(head.to_vec())
            })
            .collect())
    }

    /// Rebuild every symbol of `block` from any `k_i` of its surviving
    /// symbols.
    pub fn local_decode(
        &self,
        symbols: &[Option<FieldElement>],
        block: usize,
    ) -> Result<Vec<FieldElement>> {
        let field = self.code.field();
        let b = self
            .code
            .blocks()
            .get(block)
            .ok_or_else(|| Error::InvalidParameters(format!("no block {block}")))?;
        if symbols.len() != self.code.params().n {
            return Err(Error::LengthMismatch {
                expected: self.code.params().n,
                got: symbols.len(),
            });
        }
        let locations = self.code.locations();
        let survivors: Vec<(FieldElement, FieldElement)> = b
            .positions
            .iter()
            .filter_map(|&p| symbols[p].map(|s| (locations[p], s)))
            .take(b.local_dim)
            .collect();
        if survivors.len() < b.local_dim {
            return Err(Error::InsufficientSurvivors {
                block,
                needed: b.local_dim,
                available: survivors.len(),
            });
        }
        let m = interpolate(field, &survivors)?;
        Ok(b.positions
            .iter()
            .map(|&p| m.evaluate(field, locations[p]))
            .collect())
    }
}

/// Code whose blocks have `r + ρ − 1` points and are `(r+ρ−1, r)` MDS codes,
/// so any `ρ − 1` erasures inside a block are locally repairable.
#[derive(Debug, Clone)]
pub struct LocalMdsCode {
    code: LrcCode,
    rho: usize,
}

impl LocalMdsCode {
    /// `g` has degree `r + ρ − 1` and is constant on blocks of that size;
    /// the basis is `g^j x^i`, `i < r`, `j < k/r`.
    pub fn build(field: &Field, good: &GoodPolynomial, r: usize, k: usize) -> Result<Self> {
        let size = good.degree();
        if r == 0 || size < r + 1 {
            return Err(Error::InvalidParameters(format!(
                "deg g = {size} must be at least r + 1 = {}",
                r + 1
            )));
        }
        let rho = size - r + 1;
        let partition = good.partition().clone();
        if partition.uniform_block_size() != Some(size) {
            return Err(Error::InvalidParameters(format!(
                "every block must have size deg g = {size}"
            )));
        }
        if k == 0 || !k.is_multiple_of(r) {
            return Err(Error::InvalidParameters(format!("r = {r} must divide k = {k}")));
        }
        if k / r > partition.num_blocks() {
            return Err(Error::InvalidParameters(format!(
                "k = {k} too large for {} blocks",
                partition.num_blocks()
            )));
        }
        let basis = power_basis(field, good.polynomial(), r, k);
        let cap = k - 1 + (k / r - 1) * (rho - 1);
        let n = partition.size();
        let dims = vec![r; partition.num_blocks()];
        let code = LrcCode::assemble(
            field,
            partition,
            dims,
            r,
            Some(good.polynomial().clone()),
            basis,
            cap,
            n - cap,
        )?;
        Ok(LocalMdsCode { code, rho })
    }

    pub fn code(&self) -> &LrcCode {
        &self.code
    }

    pub fn into_code(self) -> LrcCode {
        self.code
    }

    pub fn rho(&self) -> usize {
        self.rho
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodpoly::from_multiplicative_subgroup;

    fn f13() -> Field {
        Field::prime(13).unwrap()
    }

    fn elems(f: &Field, v: &[u64]) -> Vec<FieldElement> {
        v.iter().map(|&x| f.element(x).unwrap()).collect()
    }

    /// Cosets of the order-4 subgroup with the last one cut to three points.
    fn short_good() -> GoodPolynomial {
        let f = f13();
        let gp = from_multiplicative_subgroup(&f, f.element(5).unwrap(), 3).unwrap();
        let part = Partition::from_values(&f, &[vec![1, 5, 12, 8], vec![2, 10, 11, 3], vec![4, 7, 9]])
            .unwrap();
        GoodPolynomial::new(&f, gp.polynomial().clone(), part).unwrap()
    }

    #[test]
    fn arbitrary_linear_instance() {
        let f = f13();
        let code = build_arbitrary_linear(&f, &short_good(), 5).unwrap();
        assert_eq!(code.short_size(), 3);
        let c = code.code();
        assert_eq!(c.params().n, 11);
        assert_eq!(c.designed_distance(), 5);
        assert_eq!(
            c.good_polynomial().unwrap(),
            &Polynomial::from_values(&f, &[4, 0, 0, 0, 1]).unwrap()
        );
        let degrees: Vec<usize> = c.basis().iter().map(|b| b.degree().unwrap()).collect();
        assert_eq!(degrees, vec![0, 1, 4, 5, 6]);
        let msg = elems(&f, &[3, 1, 4, 1, 5]);
        let word = c.encode(&msg).unwrap();
        for p in 0..11 {
            let mut s: Vec<Option<FieldElement>> = word.iter().copied().map(Some).collect();
            s[p] = None;
            assert_eq!(c.repair(&s, p).unwrap(), word[p]);
        }
        assert_eq!(c.recovering_set(10).unwrap().len(), 2);
        // restriction to the short block has degree at most s − 2
        let fa = c.message_polynomial(&msg).unwrap();
        let (_, rem) = fa.divmod(&f, code.short_annihilator()).unwrap();
        assert!(rem.degree().unwrap_or(0) <= 1);
    }

    #[test]
    fn arbitrary_rejections() {
        let f = f13();
        let gp = from_multiplicative_subgroup(&f, f.element(5).unwrap(), 3).unwrap();
        assert!(build_arbitrary_linear(&f, &gp, 5).is_err());
        assert!(build_arbitrary_linear(&f, &short_good(), 4).is_err());
        let part = Partition::from_values(&f, &[vec![1, 5, 12, 8], vec![2]]).unwrap();
        let single = GoodPolynomial::new(&f, gp.polynomial().clone(), part).unwrap();
        assert!(build_arbitrary_linear(&f, &single, 2).is_err());
    }

    #[test]
    fn general_matches_linear_with_power_maps() {
        let f = f13();
        let linear = build_arbitrary_linear(&f, &short_good(), 5).unwrap();
        let g = linear.code().good_polynomial().unwrap().clone();
        let maps = power_mappings(&f, &g, 3, &[2, 2, 1]);
        let general = build_arbitrary_general(&f, short_good().partition().clone(), 3, &maps).unwrap();
        let span = |c: &LrcCode| crate::algebra::canonical_basis(&f, c.basis());
        assert_eq!(span(general.code()), span(linear.code()));
        let bad = power_mappings(&f, &g.add(&f, &Polynomial::constant(f.one())), 3, &[2, 2, 1]);
        assert!(build_arbitrary_general(&f, short_good().partition().clone(), 3, &bad).is_err());
        let not_algebra = vec![vec![Polynomial::x(&f)], vec![], vec![]];
        assert_eq!(
            build_arbitrary_general(&f, short_good().partition().clone(), 3, &not_algebra).unwrap_err(),
            Error::NotInAlgebra { index: 0 }
        );
        assert_eq!(arbitrary_dimension_cap(3, 3), 8);
    }

    #[test]
    fn crt_residues_and_local_decoding() {
        let f = f13();
        let code = CrtCode::build(
            &f,
            vec![(elems(&f, &[1, 3, 9, 2]), 2), (elems(&f, &[6, 5, 4, 12]), 2)],
            4,
        )
        .unwrap();
        let msg = elems(&f, &[7, 0, 2, 11]);
        let word = code.encode(&msg).unwrap();
        let residues = code.message_residues(&msg).unwrap();
        assert_eq!(residues[0], Polynomial::from_values(&f, &[7]).unwrap());
        for (p, a) in code.code().locations().iter().enumerate() {
            let b = code.code().block_of(p).unwrap();
            assert_eq!(word[p], residues[b].evaluate(&f, *a));
        }
        let mut s: Vec<Option<FieldElement>> = word.iter().copied().map(Some).collect();
        s[0] = None;
        s[2] = None;
        assert_eq!(code.local_decode(&s, 0).unwrap(), word[..4].to_vec());
        s[1] = None;
        assert!(code.local_decode(&s, 0).is_err());
        let rs = CrtCode::build(&f, vec![(elems(&f, &[1, 2, 3, 4, 5]), 3)], 3).unwrap();
        let degrees: Vec<usize> = rs.code().basis().iter().map(|b| b.degree().unwrap_or(0)).collect();
        assert_eq!(degrees, vec![0, 1, 2]);
    }

    #[test]
    fn local_mds_instance() {
        let f = f13();
        let gp = from_multiplicative_subgroup(&f, f.element(5).unwrap(), 3).unwrap();
        let code = LocalMdsCode::build(&f, &gp, 2, 4).unwrap();
        assert_eq!(code.rho(), 3);
        assert_eq!(code.code().designed_distance(), 7);
        let degrees: Vec<usize> = code.code().basis().iter().map(|b| b.degree().unwrap()).collect();
        assert_eq!(degrees, vec![0, 1, 4, 5]);
        // ρ = 2 is the optimal construction
        let gp3 = from_multiplicative_subgroup(&f, f.element(3).unwrap(), 3).unwrap();
        let plain = LrcCode::build(&f, &gp3, 4).unwrap();
        let as_mds = LocalMdsCode::build(&f, &gp3, 2, 4).unwrap();
        assert_eq!(plain.generator_matrix(), as_mds.code().generator_matrix());
        assert!(LocalMdsCode::build(&f, &gp, 2, 3).is_err());
    }
}
