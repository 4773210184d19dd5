//! Portable JSON description of a code, and [`AnyCode`], the union of every
//! construction.
//!
//! A spec records the construction inputs together with the derived basis
//! and position order. Loading rebuilds the code from the inputs and
//! rejects specs whose derived fields disagree with the rebuilt code.

use serde::{Deserialize, Serialize};

use crate::code::{LrcCode, LrcParams};
use crate::error::{Error, Result};
use crate::general::{build_arbitrary_linear, ArbitraryLengthCode, CrtCode, LocalMdsCode};
use crate::gf::{Field, FieldElement, FieldSpec};
use crate::goodpoly::{GoodPolynomial, Partition};
use crate::linalg::Matrix;
use crate::multiset::{Lrc2Code, ProductCode};
use crate::oracle::LinearCode;
use crate::poly::Polynomial;

pub const SPEC_VERSION: u32 = 1;

/// Top-level spec file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpecFile {
    pub version: u32,
    pub field: FieldSpec,
    #[serde(flatten)]
    pub code: ConstructionSpec,
}

/// Parameters of a code with two recovering sets of sizes `r` and `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub s: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtBlockSpec {
    pub points: Vec<u32>,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub c1: Box<ConstructionSpec>,
    pub c2: Box<ConstructionSpec>,
}

/// Polynomials are coefficient lists of canonical integers, low-to-high.
/// Partitions list blocks of canonical integers. `position_locations[t]` is
/// the field element evaluated at codeword position `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum ConstructionSpec {
    Lrc {
        params: LrcParams,
        partition: Vec<Vec<u32>>,
        g: Vec<u32>,
        basis: Vec<Vec<u32>>,
        position_locations: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        systematic: Option<Vec<Vec<u32>>>,
    },
    Rs {
        params: LrcParams,
        basis: Vec<Vec<u32>>,
        position_locations: Vec<u32>,
    },
    Mapping {
        params: LrcParams,
        partition: Vec<Vec<u32>>,
        basis: Vec<Vec<u32>>,
        position_locations: Vec<u32>,
    },
    Multi {
        params: MultiParams,
        partitions: Vec<Vec<Vec<u32>>>,
        m: usize,
        basis: Vec<Vec<u32>>,
        position_locations: Vec<u32>,
    },
    Product {
        product: ProductSpec,
    },
    Arbitrary {
        params: LrcParams,
        partition: Vec<Vec<u32>>,
        g: Vec<u32>,
        basis: Vec<Vec<u32>>,
        position_locations: Vec<u32>,
    },
    Crt {
        params: LrcParams,
        blocks: Vec<CrtBlockSpec>,
        basis: Vec<Vec<u32>>,
        position_locations: Vec<u32>,
    },
    LocalMds {
        params: LrcParams,
        rho: usize,
        partition: Vec<Vec<u32>>,
        g: Vec<u32>,
        basis: Vec<Vec<u32>>,
        position_locations: Vec<u32>,
    },
}

/// Any constructed code.
#[derive(Debug, Clone)]
pub enum AnyCode {
    Optimal(LrcCode),
    ReedSolomon(LrcCode),
    Mapping(LrcCode),
    Multi(Lrc2Code),
    Product(ProductCode),
    Arbitrary(ArbitraryLengthCode),
    Crt(CrtCode),
    LocalMds(LocalMdsCode),
}

fn values(elements: &[FieldElement]) -> Vec<u32> {
    elements.iter().map(|a| a.value()).collect()
}

fn polys(field: &Field, lists: &[Vec<u32>]) -> Result<Vec<Polynomial>> {
    lists.iter().map(|c| poly(field, c)).collect()
}

fn poly(field: &Field, coeffs: &[u32]) -> Result<Polynomial> {
    let wide: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
    Polynomial::from_values(field, &wide)
}

fn partition(field: &Field, blocks: &[Vec<u32>]) -> Result<Partition> {
    let wide: Vec<Vec<u64>> = blocks
        .iter()
        .map(|b| b.iter().map(|&v| v as u64).collect())
        .collect();
    Partition::from_values(field, &wide)
}

fn elements(field: &Field, vals: &[u32]) -> Result<Vec<FieldElement>> {
    vals.iter().map(|&v| field.element(v as u64)).collect()
}

fn mismatch(what: &str) -> Error {
    Error::InvalidParameters(format!("spec {what} does not match the rebuilt code"))
}

fn check_lrc(code: &LrcCode, params: &LrcParams, basis: &[Vec<u32>], locations: &[u32]) -> Result<()> {
    if code.params() != *params {
        return Err(mismatch("params"));
    }
    let derived: Vec<Vec<u32>> = code.basis().iter().map(Polynomial::values).collect();
    if derived != basis {
        return Err(mismatch("basis"));
    }
    if values(code.locations()) != locations {
        return Err(mismatch("position_locations"));
    }
    Ok(())
}

fn lrc_code(any: AnyCode) -> Result<LrcCode> {
    match any {
        AnyCode::Optimal(c) | AnyCode::ReedSolomon(c) | AnyCode::Mapping(c) => Ok(c),
        AnyCode::Arbitrary(c) => Ok(c.into_code()),
        AnyCode::Crt(c) => Ok(c.into_code()),
        AnyCode::LocalMds(c) => Ok(c.into_code()),
        AnyCode::Multi(_) | AnyCode::Product(_) => Err(Error::InvalidParameters(
            "product components must be single-partition codes".into(),
        )),
    }
}

impl ConstructionSpec {
    fn load(&self, field: &Field) -> Result<AnyCode> {
        match self {
            ConstructionSpec::Lrc {
                params,
                partition: blocks,
                g,
                basis,
                position_locations,
                systematic,
            } => {
                let good = GoodPolynomial::new(field, poly(field, g)?, partition(field, blocks)?)?;
                let mut code = LrcCode::build(field, &good, params.k)?;
                if let Some(points) = systematic {
                    let points = points
                        .iter()
                        .map(|group| elements(field, group))
                        .collect::<Result<Vec<_>>>()?;
                    code = code.systematic_build(&points)?;
                }
                check_lrc(&code, params, basis, position_locations)?;
                Ok(AnyCode::Optimal(code))
            }
            ConstructionSpec::Rs {
                params,
                basis,
                position_locations,
            } => {
                let code =
                    LrcCode::reed_solomon(field, elements(field, position_locations)?, params.k)?;
                check_lrc(&code, params, basis, position_locations)?;
                Ok(AnyCode::ReedSolomon(code))
            }
            ConstructionSpec::Mapping {
                params,
                partition: blocks,
                basis,
                position_locations,
            } => {
                let code = LrcCode::build_from_mapping(
                    field,
                    partition(field, blocks)?,
                    params.r,
                    polys(field, basis)?,
                )?;
                check_lrc(&code, params, basis, position_locations)?;
                Ok(AnyCode::Mapping(code))
            }
            ConstructionSpec::Multi {
                params,
                partitions,
                m,
                basis,
                position_locations,
            } => {
                let [first, second] = partitions.as_slice() else {
                    return Err(Error::InvalidParameters("exactly two partitions required".into()));
                };
                let code = Lrc2Code::build(
                    field,
                    partition(field, first)?,
                    partition(field, second)?,
                    params.k,
                )?;
                let (r, s) = code.localities();
                if code.m() != *m || (code.length(), code.dimension(), r, s) != (params.n, params.k, params.r, params.s)
                {
                    return Err(mismatch("params"));
                }
                if code.basis().iter().map(Polynomial::values).collect::<Vec<_>>() != *basis {
                    return Err(mismatch("basis"));
                }
                if values(code.locations()) != *position_locations {
                    return Err(mismatch("position_locations"));
                }
                Ok(AnyCode::Multi(code))
            }
            ConstructionSpec::Product { product } => {
                let c1 = lrc_code(product.c1.load(field)?)?;
                let c2 = lrc_code(product.c2.load(field)?)?;
                Ok(AnyCode::Product(ProductCode::build(c1, c2)?))
            }
            ConstructionSpec::Arbitrary {
                params,
                partition: blocks,
                g,
                basis,
                position_locations,
            } => {
                let good = GoodPolynomial::new(field, poly(field, g)?, partition(field, blocks)?)?;
                let code = build_arbitrary_linear(field, &good, params.k)?;
                check_lrc(code.code(), params, basis, position_locations)?;
                Ok(AnyCode::Arbitrary(code))
            }
            ConstructionSpec::Crt {
                params,
                blocks,
                basis,
                position_locations,
            } => {
                let blocks = blocks
                    .iter()
                    .map(|b| Ok((elements(field, &b.points)?, b.k)))
                    .collect::<Result<Vec<_>>>()?;
                let code = CrtCode::build(field, blocks, params.k)?;
                check_lrc(code.code(), params, basis, position_locations)?;
                Ok(AnyCode::Crt(code))
            }
            ConstructionSpec::LocalMds {
                params,
                rho,
                partition: blocks,
                g,
                basis,
                position_locations,
            } => {
                let good = GoodPolynomial::new(field, poly(field, g)?, partition(field, blocks)?)?;
                let code = LocalMdsCode::build(field, &good, params.r, params.k)?;
                if code.rho() != *rho {
                    return Err(mismatch("rho"));
                }
                check_lrc(code.code(), params, basis, position_locations)?;
                Ok(AnyCode::LocalMds(code))
            }
        }
    }
}

impl CodeSpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameters(format!("bad spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Rebuild and validate the code.
    pub fn load(&self) -> Result<AnyCode> {
        if self.version != SPEC_VERSION {
            return Err(Error::InvalidParameters(format!(
                "unsupported spec version {}",
                self.version
            )));
        }
        let field = Field::new(self.field.clone())?;
        self.code.load(&field)
    }
}

/// Params, partition, basis and position locations of a built code.
type LrcParts = (LrcParams, Vec<Vec<u32>>, Vec<Vec<u32>>, Vec<u32>);

fn lrc_spec(code: &LrcCode) -> LrcParts {
    (
        code.params(),
        code.partition().to_values(),
        code.basis().iter().map(Polynomial::values).collect(),
        values(code.locations()),
    )
}

impl AnyCode {
    /// Construction name as used in spec files.
    pub fn name(&self) -> &'static str {
        match self {
            AnyCode::Optimal(_) => "lrc",
            AnyCode::ReedSolomon(_) => "rs",
            AnyCode::Mapping(_) => "mapping",
            AnyCode::Multi(_) => "multi",
            AnyCode::Product(_) => "product",
            AnyCode::Arbitrary(_) => "arbitrary",
            AnyCode::Crt(_) => "crt",
            AnyCode::LocalMds(_) => "local_mds",
        }
    }

    /// The single-partition code underneath, when there is one.
    pub fn as_lrc(&self) -> Option<&LrcCode> {
        match self {
            AnyCode::Optimal(c) | AnyCode::ReedSolomon(c) | AnyCode::Mapping(c) => Some(c),
            AnyCode::Arbitrary(c) => Some(c.code()),
            AnyCode::Crt(c) => Some(c.code()),
            AnyCode::LocalMds(c) => Some(c.code()),
            AnyCode::Multi(_) | AnyCode::Product(_) => None,
        }
    }

    fn construction_spec(&self) -> ConstructionSpec {
        match self {
            AnyCode::Optimal(c) => {
                let (params, partition, basis, position_locations) = lrc_spec(c);
                ConstructionSpec::Lrc {
                    params,
                    partition,
                    g: c.good_polynomial().map(Polynomial::values).unwrap_or_default(),
                    basis,
                    position_locations,
                    systematic: c
                        .info_points()
                        .map(|pts| pts.iter().map(|g| values(g)).collect()),
                }
            }
            AnyCode::ReedSolomon(c) => {
                let (params, _, basis, position_locations) = lrc_spec(c);
                ConstructionSpec::Rs {
                    params,
                    basis,
                    position_locations,
                }
            }
            AnyCode::Mapping(c) => {
                let (params, partition, basis, position_locations) = lrc_spec(c);
                ConstructionSpec::Mapping {
                    params,
                    partition,
                    basis,
                    position_locations,
                }
            }
            AnyCode::Multi(c) => {
                let (r, s) = c.localities();
                ConstructionSpec::Multi {
                    params: MultiParams {
                        n: c.length(),
                        k: c.dimension(),
                        r,
                        s,
                    },
                    partitions: c.partitions().iter().map(Partition::to_values).collect(),
                    m: c.m(),
                    basis: c.basis().iter().map(Polynomial::values).collect(),
                    position_locations: values(c.locations()),
                }
            }
            AnyCode::Product(p) => {
                let (c1, c2) = p.components();
                let wrap = |c: &LrcCode| {
                    let kind = if c.good_polynomial().is_some() {
                        AnyCode::Optimal(c.clone())
                    } else {
                        AnyCode::Mapping(c.clone())
                    };
                    Box::new(kind.construction_spec())
                };
                ConstructionSpec::Product {
                    product: ProductSpec {
                        c1: wrap(c1),
                        c2: wrap(c2),
                    },
                }
            }
            AnyCode::Arbitrary(a) => {
                let c = a.code();
                let (params, partition, basis, position_locations) = lrc_spec(c);
                ConstructionSpec::Arbitrary {
                    params,
                    partition,
                    g: c.good_polynomial().map(Polynomial::values).unwrap_or_default(),
                    basis,
                    position_locations,
                }
            }
            AnyCode::Crt(crt) => {
                let c = crt.code();
                let (params, partition, basis, position_locations) = lrc_spec(c);
                ConstructionSpec::Crt {
                    params,
                    blocks: partition
                        .into_iter()
                        .zip(crt.local_dims())
                        .map(|(points, &k)| CrtBlockSpec { points, k })
                        .collect(),
                    basis,
                    position_locations,
                }
            }
            AnyCode::LocalMds(l) => {
                let c = l.code();
                let (params, partition, basis, position_locations) = lrc_spec(c);
                ConstructionSpec::LocalMds {
                    params,
                    rho: l.rho(),
                    partition,
                    g: c.good_polynomial().map(Polynomial::values).unwrap_or_default(),
                    basis,
                    position_locations,
                }
            }
        }
    }

    pub fn to_spec(&self) -> CodeSpecFile {
        CodeSpecFile {
            version: SPEC_VERSION,
            field: self.field().spec().clone(),
            code: self.construction_spec(),
        }
    }

    pub fn field(&self) -> &Field {
        match self {
            AnyCode::Multi(c) => c.field(),
            AnyCode::Product(c) => c.field(),
            _ => self.as_lrc().expect("single-partition code").field(),
        }
    }

    pub fn length(&self) -> usize {
        match self {
            AnyCode::Multi(c) => c.length(),
            AnyCode::Product(c) => c.length(),
            _ => self.as_lrc().expect("single-partition code").params().n,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            AnyCode::Multi(c) => c.dimension(),
            AnyCode::Product(c) => c.dimension(),
            _ => self.as_lrc().expect("single-partition code").params().k,
        }
    }

    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        match self {
            AnyCode::Multi(c) => c.encode(message),
            AnyCode::Product(c) => c.encode(message),
            _ => self.as_lrc().expect("single-partition code").encode(message),
        }
    }

    /// Number of alternative repair routes per position: 2 for codes with
    /// two recovering sets, 1 otherwise.
    pub fn routes(&self) -> usize {
        match self {
            AnyCode::Multi(_) | AnyCode::Product(_) => 2,
            _ => 1,
        }
    }

    /// Repair `position` through route `via` (1-based: partition or axis).
    pub fn repair(
        &self,
        symbols: &[Option<FieldElement>],
        position: usize,
        via: usize,
    ) -> Result<FieldElement> {
        if via == 0 || via > self.routes() {
            return Err(Error::InvalidParameters(format!(
                "route {via} not available; this code has {}",
                self.routes()
            )));
        }
        if symbols.len() != self.length() {
            return Err(Error::LengthMismatch {
                expected: self.length(),
                got: symbols.len(),
            });
        }
        match self {
            AnyCode::Multi(c) => c.repair(symbols, position, via - 1),
            AnyCode::Product(c) => c.repair(symbols, position, via),
            _ => self.as_lrc().expect("single-partition code").repair(symbols, position),
        }
    }

    /// Declared recovering sets of `position`, one per route.
    pub fn recovering_sets(&self, position: usize) -> Result<Vec<Vec<usize>>> {
        match self {
            AnyCode::Multi(c) => Ok(vec![c.recovering_set(position, 0)?, c.recovering_set(position, 1)?]),
            AnyCode::Product(c) => Ok(vec![c.recovering_set(position, 1)?, c.recovering_set(position, 2)?]),
            _ => {
                let code = self.as_lrc().expect("single-partition code");
                let set = code.recovering_set(position)?;
                let dim = code.blocks()[code.block_of(position)?].local_dim;
                // any `local_dim` of the others suffice; declare the first ones
                Ok(vec![set.into_iter().take(dim).collect()])
            }
        }
    }

    /// `(positions, local dimension)` of every local code that should be
    /// MDS, grouped by route.
    pub fn local_codes(&self) -> Vec<Vec<(Vec<usize>, usize)>> {
        let listed = |blocks: &[crate::code::Block]| -> Vec<(Vec<usize>, usize)> {
            blocks.iter().map(|b| (b.positions.clone(), b.local_dim)).collect()
        };
        match self {
            AnyCode::Multi(c) => (0..2).map(|w| listed(c.blocks(w).expect("two routes"))).collect(),
            AnyCode::Product(_) => Vec::new(),
            _ => vec![listed(self.as_lrc().expect("single-partition code").blocks())],
        }
    }

    /// Distance guaranteed by the construction.
    pub fn designed_distance(&self) -> usize {
        match self {
            AnyCode::Multi(c) => c.certified_distance(),
            AnyCode::Product(p) => {
                let (a, b) = p.components();
                a.designed_distance() * b.designed_distance()
            }
            _ => self.as_lrc().expect("single-partition code").designed_distance(),
        }
    }

    /// `(n, k, r, ρ, t)` for the bounds report.
    pub fn bound_params(&self) -> (u64, u64, u64, Option<u64>, Option<u64>) {
        let (n, k) = (self.length() as u64, self.dimension() as u64);
        match self {
            AnyCode::Multi(c) => {
                let (r, s) = c.localities();
                (n, k, r.max(s) as u64, None, Some(2))
            }
            AnyCode::Product(p) => {
                let (a, b) = p.components();
                (n, k, a.params().r.max(b.params().r) as u64, None, Some(2))
            }
            AnyCode::LocalMds(l) => (n, k, l.code().params().r as u64, Some(l.rho() as u64), None),
            _ => {
                let code = self.as_lrc().expect("single-partition code");
                (n, k, code.params().r as u64, None, None)
            }
        }
    }
}

impl LinearCode for AnyCode {
    fn field(&self) -> &Field {
        AnyCode::field(self)
    }
    fn generator_matrix(&self) -> Matrix {
        match self {
            AnyCode::Multi(c) => c.generator_matrix(),
            AnyCode::Product(c) => c.generator_matrix(),
            _ => self.as_lrc().expect("single-partition code").generator_matrix(),
        }
    }
    fn length(&self) -> usize {
        AnyCode::length(self)
    }
    fn dimension(&self) -> usize {
        AnyCode::dimension(self)
    }
}
