//! Good polynomials: polynomials constant on every block of a partition of
//! the evaluation set.
//!
//! Three algebraic sources are provided (multiplicative cosets, additive
//! cosets, and the combined additive/multiplicative product), together with a
//! randomized search for the cases none of them cover.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::poly::{annihilator, Polynomial};

/// Default sample budget for [`search_good_polynomial`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// A set of evaluation points split into pairwise disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<FieldElement>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<FieldElement>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidParameters("empty partition block".into()));
            }
            for &a in block {
                if !seen.insert(a) {
                    return Err(Error::OverlappingBlocks(a.value()));
                }
            }
        }
        Ok(Partition { blocks })
    }

    pub fn from_values(field: &Field, blocks: &[Vec<u64>]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|&v| field.element(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Partition::new(blocks)
    }

    pub fn to_values(&self) -> Vec<Vec<u32>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|a| a.value()).collect())
            .collect()
    }

    pub fn blocks(&self) -> &[Vec<FieldElement>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Total number of points.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Blocks concatenated in partition order.
    pub fn support(&self) -> Vec<FieldElement> {
        self.blocks.concat()
    }

    pub fn block_of(&self, a: FieldElement) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&a))
    }

    /// The common block size, if all blocks have the same size.
    pub fn uniform_block_size(&self) -> Option<usize> {
        let first = self.blocks.first()?.len();
        self.blocks.iter().all(|b| b.len() == first).then_some(first)
    }

    /// The sub-partition made of the listed blocks, in the listed order.
    pub fn select(&self, indices: &[usize]) -> Result<Partition> {
        let blocks = indices
            .iter()
            .map(|&i| {
                self.blocks
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidParameters(format!("no block {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(blocks)
    }
}

/// A polynomial together with a partition it is constant on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPolynomial {
    g: Polynomial,
    partition: Partition,
    block_values: Vec<FieldElement>,
}

/// Outcome of [`verify_good`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goodness {
    /// The value taken on each block, in block order.
    Constant(Vec<FieldElement>),
    /// First witness of non-constancy: `g(alpha) != g(beta)` inside `block`.
    Violation {
        block: usize,
        alpha: FieldElement,
        beta: FieldElement,
    },
}

/// Check that `g` is constant on every block of `partition`.
pub fn verify_good(field: &Field, g: &Polynomial, partition: &Partition) -> Goodness {
    let mut values = Vec::with_capacity(partition.num_blocks());
    for (i, block) in partition.blocks().iter().enumerate() {
        let first = block[0];
        let v = g.evaluate(field, first);
        for &b in &block[1..] {
            if g.evaluate(field, b) != v {
                return Goodness::Violation {
                    block: i,
                    alpha: first,
                    beta: b,
                };
            }
        }
        values.push(v);
    }
    Goodness::Constant(values)
}

impl GoodPolynomial {
    /// Validate `g` against `partition` exhaustively.
    pub fn new(field: &Field, g: Polynomial, partition: Partition) -> Result<Self> {
        match verify_good(field, &g, &partition) {
            Goodness::Constant(block_values) => Ok(GoodPolynomial {
                g,
                partition,
                block_values,
            }),
            Goodness::Violation { block, alpha, beta } => Err(Error::NotGood {
                block,
                alpha: alpha.value(),
                beta: beta.value(),
            }),
        }
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.g
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn block_values(&self) -> &[FieldElement] {
        &self.block_values
    }

    pub fn degree(&self) -> usize {
        self.g.degree().unwrap_or(0)
    }

    /// Keep only the listed blocks.
    pub fn select_blocks(&self, indices: &[usize]) -> Result<GoodPolynomial> {
        let partition = self.partition.select(indices)?;
        let block_values = indices.iter().map(|&i| self.block_values[i]).collect();
        Ok(GoodPolynomial {
            g: self.g.clone(),
            partition,
            block_values,
        })
    }

    /// Keep the first `count` blocks of size `size`, in partition order.
    pub fn blocks_of_size(&self, size: usize, count: usize) -> Result<GoodPolynomial> {
        let indices: Vec<usize> = self
            .partition
            .blocks()
            .iter()
            .enumerate()
            .filter(|(_, b)| b.len() == size)
            .map(|(i, _)| i)
            .take(count)
            .collect();
        if indices.len() < count {
            return Err(Error::InvalidParameters(format!(
                "only {} blocks of size {size} available, {count} requested",
                indices.len()
            )));
        }
        self.select_blocks(&indices)
    }
}

/// Cosets of the cyclic group generated by `generator`, with `g(x) = x^{|H|}`.
///
/// Coset representatives are the smallest nonzero elements not yet covered,
/// in ascending order; each coset lists `rep · generator^j` for increasing `j`.
pub fn from_multiplicative_subgroup(
    field: &Field,
    generator: FieldElement,
    num_blocks: usize,
) -> Result<GoodPolynomial> {
    let order = field.multiplicative_order(generator)? as usize;
    let available = (field.order() as usize - 1) / order;
    if num_blocks > available {
        return Err(Error::InvalidParameters(format!(
            "{num_blocks} cosets requested, the subgroup of order {order} has {available}"
        )));
    }
    let subgroup: Vec<FieldElement> = (0..order).map(|j| field.pow(generator, j as u64)).collect();
    let mut covered = vec![false; field.order() as usize];
    let mut blocks = Vec::with_capacity(num_blocks);
    for rep in field.elements().skip(1) {
        if blocks.len() == num_blocks {
            break;
        }
        if covered[rep.value() as usize] {
            continue;
        }
        let coset: Vec<FieldElement> = subgroup.iter().map(|&h| field.mul(rep, h)).collect();
        for a in &coset {
            covered[a.value() as usize] = true;
        }
        blocks.push(coset);
    }
    let g = Polynomial::monomial(field, field.one(), order);
    GoodPolynomial::new(field, g, Partition::new(blocks)?)
}

/// Additive span of `generators` over the prime field, enumerated with the
/// first generator's coefficient varying fastest.
pub fn additive_span(field: &Field, generators: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let scalars: Vec<FieldElement> = (0..field.characteristic())
        .map(|c| field.element(c as u64))
        .collect::<Result<_>>()?;
    span_over(field, generators, &scalars)
}

fn span_over(
    field: &Field,
    basis: &[FieldElement],
    scalars: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    let mut span = vec![field.zero()];
    for &b in basis {
        let mut next = Vec::with_capacity(span.len() * scalars.len());
        for &c in scalars {
            let shift = field.mul(c, b);
            next.extend(span.iter().map(|&h| field.add(h, shift)));
        }
        span = next;
    }
    let distinct: HashSet<_> = span.iter().collect();
    if distinct.len() != span.len() {
        return Err(Error::InvalidParameters("generators are linearly dependent".into()));
    }
    Ok(span)
}

/// Cosets of an additive subgroup `H`, with `g` the annihilator of `H`.
///
/// Representatives are the smallest uncovered elements (starting from zero,
/// so the first block is `H` itself).
pub fn from_additive_subgroup(
    field: &Field,
    generators: &[FieldElement],
    num_blocks: usize,
) -> Result<GoodPolynomial> {
    let subgroup = additive_span(field, generators)?;
    let available = field.order() as usize / subgroup.len();
    if num_blocks > available {
        return Err(Error::InvalidParameters(format!(
            "{num_blocks} cosets requested, the subgroup of size {} has {available}",
            subgroup.len()
        )));
    }
    let mut covered = vec![false; field.order() as usize];
    let mut blocks = Vec::with_capacity(num_blocks);
    for rep in field.elements() {
        if blocks.len() == num_blocks {
            break;
        }
        if covered[rep.value() as usize] {
            continue;
        }
        let coset: Vec<FieldElement> = subgroup.iter().map(|&h| field.add(rep, h)).collect();
        for a in &coset {
            covered[a.value() as usize] = true;
        }
        blocks.push(coset);
    }
    let g = annihilator(field, &subgroup);
    GoodPolynomial::new(field, g, Partition::new(blocks)?)
}

/// Combined construction over `F_{p^s}`: `H` is the `F_{p^l}`-span of
/// `subspace_basis`, and `g(x) = ∏_{i=1..m} ∏_{h∈H} (x + h + α_i)` with
/// `α_i` the `m`-th roots of unity.
///
/// The whole field is partitioned by the value of `g`; blocks are ordered by
/// their smallest element and list their elements in ascending order. The
/// result has `(p^s − |H|)/(m|H|)` blocks of size `m|H|` and one of size `|H|`.
pub fn from_combined(
    field: &Field,
    subfield_degree: u32,
    subspace_basis: &[FieldElement],
    m: u32,
) -> Result<GoodPolynomial> {
    let s = field.degree();
    let p = field.characteristic() as u64;
    if subfield_degree == 0 || !s.is_multiple_of(subfield_degree) {
        return Err(Error::InvalidParameters(format!(
            "subfield degree {subfield_degree} does not divide {s}"
        )));
    }
    if m == 0 || !(p.pow(subfield_degree) - 1).is_multiple_of(m as u64) {
        return Err(Error::InvalidParameters(format!(
            "m must divide p^l - 1 (p = {p}, l = {subfield_degree}, m = {m})"
        )));
    }
    let sub_order = p.pow(subfield_degree);
    let subfield: Vec<FieldElement> = field
        .elements()
        .filter(|&a| field.pow(a, sub_order) == a)
        .collect();
    let subspace = span_over(field, subspace_basis, &subfield)?;
    let roots: Vec<FieldElement> = field
        .elements()
        .skip(1)
        .filter(|&a| field.pow(a, m as u64) == field.one())
        .collect();
    debug_assert_eq!(roots.len(), m as usize);
    let zeros: Vec<FieldElement> = roots
        .iter()
        .flat_map(|&alpha| subspace.iter().map(move |&h| (alpha, h)))
        .map(|(alpha, h)| field.neg(field.add(h, alpha)))
        .collect();
    let g = annihilator(field, &zeros);

    let mut fibers: HashMap<FieldElement, Vec<FieldElement>> = HashMap::new();
    for a in field.elements() {
        fibers.entry(g.evaluate(field, a)).or_default().push(a);
    }
    let mut blocks: Vec<Vec<FieldElement>> = fibers.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    GoodPolynomial::new(field, g, Partition::new(blocks)?)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact ratio `C(q, r+1) / q^r` as `(numerator, denominator)`.
pub fn existence_ratio(q: u64, r: u64) -> (BigUint, BigUint) {
    (binomial(q, r + 1), BigUint::from(q).pow(r as u32))
}

/// Guaranteed number of disjoint `(r+1)`-sets some degree-`r+1` polynomial is
/// constant on: `⌈C(q, r+1) / q^r⌉`.
pub fn existence_count(q: u64, r: u64) -> Result<BigUint> {
    if r + 1 > q {
        return Err(Error::InvalidParameters(format!("r + 1 = {} exceeds q = {q}", r + 1)));
    }
    let (num, den) = existence_ratio(q, r);
    Ok(Integer::div_ceil(&num, &den))
}

/// Decimal rendering of [`existence_ratio`].
pub fn existence_ratio_f64(q: u64, r: u64) -> f64 {
    let (num, den) = existence_ratio(q, r);
    if den.is_zero() {
        return f64::INFINITY;
    }
    // scale to keep precision before converting
    let scaled = (num * BigUint::from(1_000_000_000u64)) / den;
    scaled.to_f64().unwrap_or(f64::INFINITY) / 1e9
}

/// Randomized search for a good polynomial with at least `min_blocks`
/// disjoint blocks of size `block_size`.
///
/// Each sample is a monic polynomial with `block_size` distinct roots. Its
/// whole equivalence class under adding constants is read off at once: every
/// value `c` taken exactly `block_size` times gives a split member `f − c`,
/// whose root set is a block. Samples are drawn from a seeded generator, so
/// the first hit is reproducible. Returns `Ok(None)` when the budget runs out.
pub fn search_good_polynomial(
    field: &Field,
    block_size: usize,
    min_blocks: usize,
    budget: u64,
    seed: u64,
) -> Result<Option<GoodPolynomial>> {
    let q = field.order() as usize;
    if block_size == 0 || block_size > q {
        return Err(Error::InvalidParameters(format!(
            "block size {block_size} outside 1..={q}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let mut roots: Vec<FieldElement> = rand::seq::index::sample(&mut rng, q, block_size)
            .into_iter()
            .map(|i| field.element(i as u64).expect("index below q"))
            .collect();
        roots.sort();
        let f = annihilator(field, &roots);
        let mut fibers: BTreeMap<u32, Vec<FieldElement>> = BTreeMap::new();
        for a in field.elements() {
            fibers.entry(f.evaluate(field, a).value()).or_default().push(a);
        }
        let mut blocks: Vec<Vec<FieldElement>> = fibers
            .into_values()
            .filter(|b| b.len() == block_size)
            .collect();
        if blocks.len() >= min_blocks {
            blocks.sort_by_key(|b| b[0]);
            return Ok(Some(GoodPolynomial::new(field, f, Partition::new(blocks)?)?));
        }
    }
    Ok(None)
}

/// Do all block pairs of the two partitions meet in at most one point?
pub fn are_orthogonal(first: &Partition, second: &Partition) -> Result<bool> {
    let support_a: HashSet<FieldElement> = first.support().into_iter().collect();
    let support_b: HashSet<FieldElement> = second.support().into_iter().collect();
    if support_a != support_b {
        return Err(Error::SupportMismatch);
    }
    let mut owner = HashMap::new();
    for (i, block) in first.blocks().iter().enumerate() {
        for &a in block {
            owner.insert(a, i);
        }
    }
    for block in second.blocks() {
        let mut hit = HashSet::new();
        for a in block {
            if !hit.insert(owner[a]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Coset partitions of two subgroups of a cyclic group of order
/// `group_order` are orthogonal iff the subgroup orders are coprime.
pub fn subgroups_yield_orthogonal(h: u64, g: u64, group_order: u64) -> Result<bool> {
    if h == 0 || g == 0 || !group_order.is_multiple_of(h) || !group_order.is_multiple_of(g) {
        return Err(Error::InvalidParameters(format!(
            "subgroup orders {h} and {g} must divide {group_order}"
        )));
    }
    Ok(h.gcd(&g) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn f13() -> Field {
        Field::prime(13).unwrap()
    }

    fn gf16() -> Field {
        Field::new(FieldSpec {
            p: 2,
            l: 4,
            modulus: vec![1, 1, 0, 0, 1],
        })
        .unwrap()
    }

    fn vals(blocks: &Partition) -> Vec<Vec<u32>> {
        blocks.to_values()
    }

    #[test]
    fn multiplicative_examples() {
        let f = f13();
        let gp = from_multiplicative_subgroup(&f, f.element(3).unwrap(), 3).unwrap();
        assert_eq!(
            vals(gp.partition()),
            vec![vec![1, 3, 9], vec![2, 6, 5], vec![4, 12, 10]]
        );
        assert_eq!(gp.polynomial().values(), vec![0, 0, 0, 1]);
        assert_eq!(
            gp.block_values().iter().map(|v| v.value()).collect::<Vec<_>>(),
            vec![1, 8, 12]
        );
        let gp5 = from_multiplicative_subgroup(&f, f.element(5).unwrap(), 3).unwrap();
        assert_eq!(
            vals(gp5.partition()),
            vec![vec![1, 5, 12, 8], vec![2, 10, 11, 3], vec![4, 7, 9, 6]]
        );
        assert_eq!(
            gp5.block_values().iter().map(|v| v.value()).collect::<Vec<_>>(),
            vec![1, 3, 9]
        );
        assert!(from_multiplicative_subgroup(&f, f.element(3).unwrap(), 5).is_err());
        assert!(from_multiplicative_subgroup(&f, f.zero(), 1).is_err());
    }

    #[test]
    fn multiplicative_block_values_are_powers_of_representatives() {
        let f = Field::standard(2, 6).unwrap();
        for d in [3u64, 7, 9, 21] {
            let gen = f.element_of_order(d).unwrap();
            let blocks = 63 / d as usize;
            let gp = from_multiplicative_subgroup(&f, gen, blocks).unwrap();
            let distinct: HashSet<_> = gp.block_values().iter().collect();
            assert_eq!(distinct.len(), blocks);
            for (b, v) in gp.partition().blocks().iter().zip(gp.block_values()) {
                assert_eq!(f.pow(b[0], d), *v);
            }
        }
    }

    #[test]
    fn additive_examples() {
        let f = gf16();
        let gens = [f.element(1).unwrap(), f.element(2).unwrap()];
        let gp = from_additive_subgroup(&f, &gens, 3).unwrap();
        assert_eq!(gp.polynomial().values(), vec![0, 6, 7, 0, 1]);
        assert_eq!(gp.partition().size(), 12);
        let all = from_additive_subgroup(&f, &gens, 4).unwrap();
        for a in f.elements() {
            let block = all.partition().block_of(a).unwrap();
            assert_eq!(all.polynomial().evaluate(&f, a), all.block_values()[block]);
        }
        let dependent = [f.element(3).unwrap(), f.element(3).unwrap()];
        assert!(from_additive_subgroup(&f, &dependent, 1).is_err());
        assert!(from_additive_subgroup(&f, &gens, 5).is_err());
    }

    #[test]
    fn combined_over_f49() {
        let f = Field::standard(7, 2).unwrap();
        let gp = from_combined(&f, 1, &[f.one()], 2).unwrap();
        let mut sizes: Vec<usize> = gp.partition().blocks().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![7, 14, 14, 14]);
        assert_eq!(gp.degree(), 14);
        for a in f.elements() {
            let b = gp.partition().block_of(a).unwrap();
            assert_eq!(gp.polynomial().evaluate(&f, a), gp.block_values()[b]);
        }
    }

    #[test]
    fn combined_with_m_one_gives_additive_cosets() {
        let f = Field::standard(3, 2).unwrap();
        let basis = [f.element(3).unwrap()];
        let combined = from_combined(&f, 1, &basis, 1).unwrap();
        let additive = from_additive_subgroup(&f, &basis, 3).unwrap();
        let canon = |p: &Partition| {
            let mut v: Vec<Vec<u32>> = p
                .to_values()
                .into_iter()
                .map(|mut b| {
                    b.sort();
                    b
                })
                .collect();
            v.sort();
            v
        };
        assert_eq!(canon(combined.partition()), canon(additive.partition()));
    }

    #[test]
    fn combined_rejects_bad_arithmetic() {
        let f = Field::standard(7, 2).unwrap();
        assert!(from_combined(&f, 1, &[f.one()], 4).is_err());
        assert!(from_combined(&f, 3, &[f.one()], 2).is_err());
    }

    #[test]
    fn verify_good_examples() {
        let f = f13();
        let g = Polynomial::monomial(&f, f.one(), 3);
        let part = Partition::from_values(&f, &[vec![1, 3, 9], vec![2, 6, 5], vec![4, 12, 10]])
            .unwrap();
        let Goodness::Constant(v) = verify_good(&f, &g, &part) else {
            panic!("x^3 is good");
        };
        assert_eq!(v.iter().map(|x| x.value()).collect::<Vec<_>>(), vec![1, 8, 12]);
        let c = Polynomial::constant(f.element(7).unwrap());
        assert!(matches!(verify_good(&f, &c, &part), Goodness::Constant(_)));
        let x = Polynomial::x(&f);
        let pair = Partition::from_values(&f, &[vec![1], vec![2, 5]]).unwrap();
        assert_eq!(
            verify_good(&f, &x, &pair),
            Goodness::Violation {
                block: 1,
                alpha: f.element(2).unwrap(),
                beta: f.element(5).unwrap()
            }
        );
    }

    #[test]
    fn existence_count_examples() {
        assert_eq!(existence_count(2048, 5).unwrap(), BigUint::from(3u32));
        assert!((existence_ratio_f64(2048, 5) - 2.82).abs() < 0.01);
        assert_eq!(existence_count(13, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(existence_count(7, 6).unwrap(), BigUint::from(1u32));
        assert!(existence_count(5, 5).is_err());
    }

    #[test]
    fn search_finds_classes() {
        let f = f13();
        let gp = search_good_polynomial(&f, 3, 3, 10_000, 7).unwrap().unwrap();
        assert!(gp.partition().num_blocks() >= 3);
        assert_eq!(gp.degree(), 3);
        assert!(matches!(
            verify_good(&f, gp.polynomial(), gp.partition()),
            Goodness::Constant(_)
        ));
        let whole = search_good_polynomial(&f, 13, 1, 5, 0).unwrap().unwrap();
        assert_eq!(whole.partition().num_blocks(), 1);
        assert_eq!(whole.partition().size(), 13);
        // reproducible for a fixed seed
        let again = search_good_polynomial(&f, 3, 3, 10_000, 7).unwrap().unwrap();
        assert_eq!(gp, again);
    }

    #[test]
    fn search_exhaustive_oracle_over_f13() {
        // Every monic cubic x^3 + a x^2 + b x: count values hit exactly three
        // times. The search must only return classes this enumeration knows.
        let f = f13();
        let mut best = 0;
        for a in 0..13 {
            for b in 0..13 {
                let poly = Polynomial::from_values(&f, &[0, b, a, 1]).unwrap();
                let mut counts = HashMap::new();
                for x in f.elements() {
                    *counts.entry(poly.evaluate(&f, x)).or_insert(0) += 1;
                }
                best = best.max(counts.values().filter(|&&c| c == 3).count());
            }
        }
        assert!(best >= 3);
        let found = search_good_polynomial(&f, 3, best, 100_000, 1).unwrap().unwrap();
        assert_eq!(found.partition().num_blocks(), best);
    }

    #[test]
    fn orthogonality_examples() {
        let f = f13();
        let a = from_multiplicative_subgroup(&f, f.element(5).unwrap(), 3).unwrap();
        let b = from_multiplicative_subgroup(&f, f.element(3).unwrap(), 4).unwrap();
        assert_eq!(
            vals(b.partition()),
            vec![vec![1, 3, 9], vec![2, 6, 5], vec![4, 12, 10], vec![7, 8, 11]]
        );
        assert!(are_orthogonal(a.partition(), b.partition()).unwrap());
        assert!(!are_orthogonal(a.partition(), a.partition()).unwrap());
        let singles = Partition::new(a.partition().support().into_iter().map(|x| vec![x]).collect())
            .unwrap();
        assert!(are_orthogonal(&singles, b.partition()).unwrap());
        let short = a.select_blocks(&[0, 1]).unwrap();
        assert_eq!(
            are_orthogonal(short.partition(), b.partition()).unwrap_err(),
            Error::SupportMismatch
        );
        assert!(subgroups_yield_orthogonal(4, 3, 12).unwrap());
        assert!(!subgroups_yield_orthogonal(6, 6, 12).unwrap());
        assert!(subgroups_yield_orthogonal(3, 7, 63).unwrap());
        assert!(subgroups_yield_orthogonal(5, 3, 12).is_err());
    }

    #[test]
    fn orthogonality_criterion_matches_exhaustive_check() {
        let fields = [
            Field::prime(13).unwrap(),
            Field::prime(31).unwrap(),
            Field::prime(37).unwrap(),
            Field::standard(2, 6).unwrap(),
            Field::standard(7, 2).unwrap(),
            Field::standard(2, 4).unwrap(),
        ];
        for f in fields {
            let n = f.order() as u64 - 1;
            let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
            for &h in &divisors {
                for &g in &divisors {
                    let ph = from_multiplicative_subgroup(&f, f.element_of_order(h).unwrap(), (n / h) as usize)
                        .unwrap();
                    let pg = from_multiplicative_subgroup(&f, f.element_of_order(g).unwrap(), (n / g) as usize)
                        .unwrap();
                    assert_eq!(
                        are_orthogonal(ph.partition(), pg.partition()).unwrap(),
                        subgroups_yield_orthogonal(h, g, n).unwrap(),
                        "{f:?} h={h} g={g}"
                    );
                }
            }
        }
    }
}
