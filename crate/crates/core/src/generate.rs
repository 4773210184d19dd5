//! Deterministic code generation from parameters.

use serde::{Deserialize, Serialize};

use crate::code::LrcCode;
use crate::codespec::AnyCode;
use crate::error::{Error, Result};
use crate::general::{build_arbitrary_linear, CrtCode, LocalMdsCode};
use crate::gf::{factorize, Field, FieldElement, MAX_FIELD_ORDER};
use crate::goodpoly::{
    from_additive_subgroup, from_multiplicative_subgroup, search_good_polynomial, GoodPolynomial,
    Partition, DEFAULT_SEARCH_BUDGET,
};
use crate::multiset::{Lrc2Code, ProductCode};

/// Which construction to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Pick from the other flags and the shape of `(n, k, r)`.
    #[default]
    Auto,
    Lrc,
    Rs,
    Arbitrary,
    Multi,
    Product,
    Crt,
    LocalMds,
}

/// Parameters of `gen`. With `product`, `(n, k, r)` describe each of the two
/// identical components.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct GenRequest {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// Field order; the smallest workable prime power `≥ n` when absent.
    pub q: Option<u64>,
    pub construction: Construction,
    /// Second locality (codes with two recovering sets).
    pub s: Option<usize>,
    /// Local distance (local-MDS codes).
    pub rho: Option<usize>,
    /// `(block size, local dimension)` per block of a CRT code.
    pub crt: Option<Vec<(usize, usize)>>,
    pub systematic: bool,
    pub seed: u64,
}

impl GenRequest {
    pub fn new(n: usize, k: usize, r: usize) -> Self {
        GenRequest {
            n,
            k,
            r,
            ..GenRequest::default()
        }
    }

    fn resolved(&self) -> Construction {
        if self.construction != Construction::Auto {
            return self.construction;
        }
        if self.rho.is_some() {
            Construction::LocalMds
        } else if self.crt.is_some() {
            Construction::Crt
        } else if self.s.is_some() {
            Construction::Multi
        } else if self.r >= self.k {
            Construction::Rs
        } else if self.r > 0 && self.n.is_multiple_of(self.r + 1) {
            Construction::Lrc
        } else {
            Construction::Arbitrary
        }
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameters(msg)
}

/// Smallest element of multiplicative order `d`; picks the canonical
/// generator of the subgroup of order `d`.
fn least_of_order(field: &Field, d: usize) -> Result<FieldElement> {
    field
        .elements()
        .skip(1)
        .find(|&a| field.multiplicative_order(a).ok() == Some(d as u64))
        .ok_or_else(|| invalid(format!("no element of order {d} in F_{}", field.order())))
}

/// `count` blocks of size `size`: cosets of a multiplicative subgroup, else
/// cosets of an additive subgroup, else a seeded search.
fn good_blocks(field: &Field, size: usize, count: usize, seed: u64) -> Result<GoodPolynomial> {
    let q = field.order() as usize;
    if size < 2 || size * count > q {
        return Err(invalid(format!(
            "{count} blocks of size {size} do not fit in a field of order {q}"
        )));
    }
    if (q - 1).is_multiple_of(size) && count <= (q - 1) / size {
        return from_multiplicative_subgroup(field, least_of_order(field, size)?, count);
    }
    let p = field.characteristic() as usize;
    let mut j = 0u32;
    while p.pow(j) < size {
        j += 1;
    }
    if p.pow(j) == size && j <= field.degree() {
        let generators: Vec<FieldElement> = (0..j)
            .map(|i| field.element(p.pow(i) as u64).expect("below q"))
            .collect();
        return from_additive_subgroup(field, &generators, count);
    }
    match search_good_polynomial(field, size, count, DEFAULT_SEARCH_BUDGET, seed)? {
        Some(good) => good.blocks_of_size(size, count),
        None => Err(invalid(format!(
            "no good polynomial with {count} blocks of size {size} found over F_{q}"
        ))),
    }
}

fn optimal(field: &Field, req: &GenRequest) -> Result<LrcCode> {
    let (n, k, r) = (req.n, req.k, req.r);
    if r == 0 || n % (r + 1) != 0 {
        return Err(invalid(format!("r + 1 = {} must divide n = {n}", r + 1)));
    }
    let good = good_blocks(field, r + 1, n / (r + 1), req.seed)?;
    let code = LrcCode::build(field, &good, k)?;
    if req.systematic {
        code.systematic_build(&code.default_info_points())
    } else {
        Ok(code)
    }
}

fn arbitrary(field: &Field, req: &GenRequest) -> Result<AnyCode> {
    let (n, k, r) = (req.n, req.k, req.r);
    let s = n % (r + 1);
    if s < 2 {
        return Err(invalid(format!(
            "n mod (r + 1) = {s}; the short block needs at least 2 points"
        )));
    }
    let full = n / (r + 1);
    let good = good_blocks(field, r + 1, full + 1, req.seed)?;
    let mut blocks = good.partition().blocks().to_vec();
    blocks.last_mut().unwrap().truncate(s);
    let trimmed = GoodPolynomial::new(field, good.polynomial().clone(), Partition::new(blocks)?)?;
    Ok(AnyCode::Arbitrary(build_arbitrary_linear(field, &trimmed, k)?))
}

/// Two orthogonal partitions from subgroups of orders `r+1` and `s+1`,
/// restricted to the first `n / ((r+1)(s+1))` cosets of their product.
fn multi(field: &Field, req: &GenRequest) -> Result<Lrc2Code> {
    let s = req.s.ok_or_else(|| invalid("the second locality s is required".into()))?;
    let (n, r) = (req.n, req.r);
    let (a, b) = (r + 1, s + 1);
    let q1 = field.order() as usize - 1;
    if num_integer::gcd(a, b) != 1 || !q1.is_multiple_of(a * b) {
        return Err(invalid(format!(
            "need coprime r + 1 = {a} and s + 1 = {b} with {} dividing q - 1 = {q1}",
            a * b
        )));
    }
    if n % (a * b) != 0 || n > q1 {
        return Err(invalid(format!("n = {n} must be a multiple of {} and at most {q1}", a * b)));
    }
    let product = from_multiplicative_subgroup(field, least_of_order(field, a * b)?, n / (a * b))?;
    let support = product.partition().support();
    let restrict = |size: usize| -> Result<Partition> {
        let all = from_multiplicative_subgroup(field, least_of_order(field, size)?, q1 / size)?;
        let blocks = all
            .partition()
            .blocks()
            .iter()
            .filter(|blk| support.contains(&blk[0]))
            .cloned()
            .collect();
        Partition::new(blocks)
    };
    Lrc2Code::build(field, restrict(a)?, restrict(b)?, req.k)
}

fn crt(field: &Field, req: &GenRequest) -> Result<CrtCode> {
    let table = req.crt.as_ref().ok_or_else(|| invalid("a CRT block table is required".into()))?;
    let total: usize = table.iter().map(|(size, _)| size).sum();
    if total > field.order() as usize {
        return Err(invalid(format!("{total} points exceed the field order {}", field.order())));
    }
    let mut points = field.elements();
    let blocks = table
        .iter()
        .map(|&(size, ki)| (points.by_ref().take(size).collect(), ki))
        .collect();
    CrtCode::build(field, blocks, req.k)
}

fn local_mds(field: &Field, req: &GenRequest) -> Result<LocalMdsCode> {
    let rho = req.rho.ok_or_else(|| invalid("rho is required".into()))?;
    let size = (req.r + rho).saturating_sub(1);
    if rho < 2 || !req.n.is_multiple_of(size) {
        return Err(invalid(format!(
            "need rho ≥ 2 and r + rho - 1 = {size} dividing n = {}",
            req.n
        )));
    }
    let good = good_blocks(field, size, req.n / size, req.seed)?;
    LocalMdsCode::build(field, &good, req.r, req.k)
}

fn build_in(field: &Field, req: &GenRequest) -> Result<AnyCode> {
    if req.n == 0 || req.k == 0 || req.k > req.n {
        return Err(invalid(format!("need 1 ≤ k ≤ n, got n = {}, k = {}", req.n, req.k)));
    }
    if req.systematic && req.resolved() != Construction::Lrc {
        return Err(invalid("systematic encoding is available for the optimal construction only".into()));
    }
    match req.resolved() {
        Construction::Auto => unreachable!("resolved"),
        Construction::Rs => {
            let points: Vec<FieldElement> = field.elements().take(req.n).collect();
            if points.len() < req.n {
                return Err(invalid(format!("n = {} exceeds q = {}", req.n, field.order())));
            }
            Ok(AnyCode::ReedSolomon(LrcCode::reed_solomon(field, points, req.k)?))
        }
        Construction::Lrc => Ok(AnyCode::Optimal(optimal(field, req)?)),
        Construction::Arbitrary => arbitrary(field, req),
        Construction::Multi => Ok(AnyCode::Multi(multi(field, req)?)),
        Construction::Product => {
            let component = GenRequest {
                construction: Construction::Auto,
                ..req.clone()
            };
            let c = match build_in(field, &component)? {
                AnyCode::Optimal(c) | AnyCode::ReedSolomon(c) => c,
                other => {
                    return Err(invalid(format!(
                        "product components must be optimal or RS codes, got {}",
                        other.name()
                    )))
                }
            };
            Ok(AnyCode::Product(ProductCode::build(c.clone(), c)?))
        }
        Construction::Crt => Ok(AnyCode::Crt(crt(field, req)?)),
        Construction::LocalMds => Ok(AnyCode::LocalMds(local_mds(field, req)?)),
    }
}

fn is_prime_power(q: u64) -> bool {
    q >= 2 && factorize(q).len() == 1
}

/// Build the code described by `req`. Without an explicit `q`, prime powers
/// from `n` upward are tried in order and the first that works is used.
pub fn generate(req: &GenRequest) -> Result<AnyCode> {
    if let Some(q) = req.q {
        return build_in(&Field::of_order(q)?, req);
    }
    let mut last = invalid("no field order tried".into());
    let mut tried = 0;
    for q in (req.n.max(2) as u64)..=MAX_FIELD_ORDER {
        if !is_prime_power(q) {
            continue;
        }
        match build_in(&Field::of_order(q)?, req) {
            Ok(code) => return Ok(code),
            Err(e) => last = e,
        }
        tried += 1;
        if tried == 32 {
            break;
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(v: &[FieldElement]) -> Vec<u32> {
        v.iter().map(|a| a.value()).collect()
    }

    #[test]
    fn default_choices() {
        let mut req = GenRequest::new(9, 4, 2);
        req.q = Some(13);
        let AnyCode::Optimal(code) = generate(&req).unwrap() else { panic!() };
        assert_eq!(code.partition().to_values(), vec![vec![1, 3, 9], vec![2, 6, 5], vec![4, 12, 10]]);
        let f = code.field().clone();
        let ones = vec![f.one(); 4];
        assert_eq!(values(&code.encode(&ones).unwrap()), vec![4, 8, 7, 1, 11, 2, 0, 0, 0]);

        let rs = generate(&GenRequest::new(9, 4, 4)).unwrap();
        assert_eq!(rs.name(), "rs");
        assert_eq!(rs.field().order(), 9);

        let mut req = GenRequest::new(12, 4, 2);
        req.s = Some(3);
        let multi = generate(&req).unwrap();
        assert_eq!((multi.name(), multi.field().order()), ("multi", 13));

        let mut req = GenRequest::new(12, 6, 3);
        req.q = Some(13);
        let code = generate(&req).unwrap();
        let first = &code.as_lrc().unwrap().partition().to_values()[0];
        assert_eq!(first, &vec![1, 5, 12, 8]);

        let mut req = GenRequest::new(11, 5, 3);
        req.q = Some(13);
        let code = generate(&req).unwrap();
        assert_eq!(code.name(), "arbitrary");
        assert_eq!(code.as_lrc().unwrap().partition().to_values()[2], vec![4, 7, 9]);

        let mut req = GenRequest::new(12, 4, 2);
        req.q = Some(13);
        req.rho = Some(3);
        assert_eq!(generate(&req).unwrap().designed_distance(), 7);

        let mut req = GenRequest::new(8, 4, 0);
        req.q = Some(13);
        req.crt = Some(vec![(4, 2), (4, 2)]);
        assert_eq!(generate(&req).unwrap().name(), "crt");

        let mut req = GenRequest::new(9, 4, 2);
        req.q = Some(13);
        req.construction = Construction::Product;
        assert_eq!(generate(&req).unwrap().length(), 81);
    }

    #[test]
    fn additive_and_searched_blocks() {
        let mut req = GenRequest::new(12, 6, 3);
        req.q = Some(16);
        let code = generate(&req).unwrap();
        assert_eq!(code.as_lrc().unwrap().partition().blocks()[0].len(), 4);
        // 3 neither divides 16 nor is a power of 17
        let f = Field::of_order(17).unwrap();
        let good = good_blocks(&f, 3, 3, 1).unwrap();
        assert_eq!(good.partition().num_blocks(), 3);
        assert!(good.partition().blocks().iter().all(|b| b.len() == 3));
    }

    #[test]
    fn rejections() {
        let mut req = GenRequest::new(9, 4, 2);
        req.q = Some(12);
        assert!(generate(&req).is_err());
        req.q = Some(7);
        assert!(generate(&req).is_err());
        let mut req = GenRequest::new(10, 4, 2);
        req.q = Some(13);
        req.systematic = true;
        assert!(generate(&req).is_err());
    }
}
