//! The algebra of polynomials constant on the blocks of a partition, and
//! linear algebra on polynomial spans.

use crate::error::Result;
use crate::gf::{Field, FieldElement};
use crate::goodpoly::Partition;
use crate::linalg::Matrix;
use crate::poly::{annihilator, interpolate, Polynomial};

/// Polynomials `f_i` of degree below `|A|` with `f_i = 1` on block `i` and
/// `0` on every other block.
pub fn lagrange_block_basis(field: &Field, partition: &Partition) -> Result<Vec<Polynomial>> {
    let support = partition.support();
    partition
        .blocks()
        .iter()
        .map(|block| {
            let points: Vec<(FieldElement, FieldElement)> = support
                .iter()
                .map(|&a| {
                    let v = if block.contains(&a) { field.one() } else { field.zero() };
                    (a, v)
                })
                .collect();
            interpolate(field, &points)
        })
        .collect()
}

/// Canonical basis of the span of `polys`: fully reduced echelon form with
/// pivots on leading degrees, returned by increasing degree. Two spanning
/// sets of the same space give the same output.
pub fn canonical_basis(field: &Field, polys: &[Polynomial]) -> Vec<Polynomial> {
    let width = polys
        .iter()
        .filter_map(Polynomial::degree)
        .max()
        .map_or(0, |d| d + 1);
    if width == 0 {
        return Vec::new();
    }
    let rows = polys
        .iter()
        .map(|p| (0..width).rev().map(|d| p.coeff(field, d)).collect())
        .collect();
    let (reduced, pivots) = Matrix::from_rows(width, rows).rref(field);
    let mut out: Vec<Polynomial> = (0..pivots.len())
        .map(|i| {
            let mut coeffs: Vec<FieldElement> = reduced.row(i).to_vec();
            coeffs.reverse();
            Polynomial::new(coeffs)
        })
        .collect();
    out.reverse();
    out
}

/// Canonical basis of the block algebra: polynomials of degree below `|A|`
/// that are constant on every block.
pub fn block_algebra_basis(field: &Field, partition: &Partition) -> Result<Vec<Polynomial>> {
    Ok(canonical_basis(field, &lagrange_block_basis(field, partition)?))
}

/// Spanning set of `⊕_{i<r} F_A[x]·x^i`, reduced modulo the annihilator of
/// the support so every member has degree below `|A|`.
pub fn local_space_spanning_set(
    field: &Field,
    partition: &Partition,
    r: usize,
) -> Result<Vec<Polynomial>> {
    let algebra = block_algebra_basis(field, partition)?;
    let h = annihilator(field, &partition.support());
    let mut out = Vec::with_capacity(algebra.len() * r);
    for i in 0..r {
        for f in &algebra {
            out.push(f.shift(field, i).rem(field, &h)?);
        }
    }
    Ok(out)
}

/// Write `f` as `Σ_{i<r} f_i x^i` with every `f_i` in the block algebra.
/// Returns `None` when `f` is not in that space.
pub fn algebra_membership(
    field: &Field,
    f: &Polynomial,
    partition: &Partition,
    r: usize,
) -> Result<Option<Vec<Polynomial>>> {
    let algebra = block_algebra_basis(field, partition)?;
    let deg_f = f.degree().unwrap_or(0);
    let deg_alg = algebra.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let height = (deg_f + 1).max(deg_alg + r);
    let unknowns = algebra.len() * r;
    let mut system = Matrix::zeros(field, height, unknowns);
    for i in 0..r {
        for (t, a) in algebra.iter().enumerate() {
            for (d, &c) in a.coeffs().iter().enumerate() {
                system[(d + i, i * algebra.len() + t)] = c;
            }
        }
    }
    let target: Vec<FieldElement> = (0..height).map(|d| f.coeff(field, d)).collect();
    let Some(solution) = system.solve(field, &target) else {
        return Ok(None);
    };
    let parts: Vec<Polynomial> = (0..r)
        .map(|i| {
            algebra
                .iter()
                .enumerate()
                .fold(Polynomial::zero(), |acc, (t, a)| {
                    acc.add(field, &a.scale(field, solution[i * algebra.len() + t]))
                })
        })
        .collect();
    // each part must really be constant on every block
    for part in &parts {
        for block in partition.blocks() {
            let v = part.evaluate(field, block[0]);
            if block.iter().any(|&b| part.evaluate(field, b) != v) {
                return Ok(None);
            }
        }
    }
    Ok(Some(parts))
}

/// Intersection of the spans of `u` and `w` restricted to degree below `m`,
/// in canonical form.
pub fn intersect_spans(
    field: &Field,
    u: &[Polynomial],
    w: &[Polynomial],
    m: usize,
) -> Vec<Polynomial> {
    let height = u
        .iter()
        .chain(w)
        .filter_map(Polynomial::degree)
        .max()
        .map_or(0, |d| d + 1)
        .max(m);
    // unknowns (x, y): Σ x_i u_i − Σ y_j w_j = 0, and Σ x_i u_i has no
    // coefficient of degree ≥ m
    let cols = u.len() + w.len();
    let extra = height - m;
    let mut system = Matrix::zeros(field, height + extra, cols);
    for (i, p) in u.iter().enumerate() {
        for (d, &c) in p.coeffs().iter().enumerate() {
            system[(d, i)] = c;
            if d >= m {
                system[(height + d - m, i)] = c;
            }
        }
    }
    for (j, p) in w.iter().enumerate() {
        for (d, &c) in p.coeffs().iter().enumerate() {
            system[(d, u.len() + j)] = field.neg(c);
        }
    }
    let members: Vec<Polynomial> = system
        .null_space(field)
        .into_iter()
        .map(|v| {
            u.iter().zip(&v).fold(Polynomial::zero(), |acc, (p, &c)| {
                acc.add(field, &p.scale(field, c))
            })
        })
        .collect();
    canonical_basis(field, &members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodpoly::from_multiplicative_subgroup;

    fn degrees(polys: &[Polynomial]) -> Vec<usize> {
        polys.iter().map(|p| p.degree().unwrap()).collect()
    }

    #[test]
    fn block_algebra_of_order_four_cosets() {
        let f = Field::prime(13).unwrap();
        let gp = from_multiplicative_subgroup(&f, f.element(5).unwrap(), 3).unwrap();
        let basis = block_algebra_basis(&f, gp.partition()).unwrap();
        assert_eq!(basis.len(), 3);
        for (p, d) in basis.iter().zip([0, 4, 8]) {
            assert_eq!(*p, Polynomial::monomial(&f, f.one(), d));
        }
    }

    #[test]
    fn lagrange_block_basis_is_indicator() {
        let f = Field::prime(13).unwrap();
        let gp = from_multiplicative_subgroup(&f, f.element(3).unwrap(), 4).unwrap();
        let part = gp.partition();
        let basis = lagrange_block_basis(&f, part).unwrap();
        for (i, p) in basis.iter().enumerate() {
            assert!(p.degree().unwrap_or(0) < part.size());
            for (j, block) in part.blocks().iter().enumerate() {
                for &a in block {
                    let expected = if i == j { f.one() } else { f.zero() };
                    assert_eq!(p.evaluate(&f, a), expected);
                }
            }
        }
        for a in part.support() {
            let total = basis
                .iter()
                .fold(f.zero(), |acc, p| f.add(acc, p.evaluate(&f, a)));
            assert_eq!(total, f.one());
        }
        let single = Partition::from_values(&f, &[vec![2, 7, 11]]).unwrap();
        assert_eq!(
            lagrange_block_basis(&f, &single).unwrap(),
            vec![Polynomial::constant(f.one())]
        );
    }

    #[test]
    fn membership() {
        let f = Field::prime(13).unwrap();
        let gp = from_multiplicative_subgroup(&f, f.element(3).unwrap(), 4).unwrap();
        let part = gp.partition();
        let c = Polynomial::constant(f.element(5).unwrap());
        assert!(algebra_membership(&f, &c, part, 2).unwrap().is_some());
        let x2 = Polynomial::monomial(&f, f.one(), 2);
        assert!(algebra_membership(&f, &x2, part, 2).unwrap().is_none());
        let x7 = Polynomial::monomial(&f, f.one(), 7);
        let parts = algebra_membership(&f, &x7, part, 2).unwrap().unwrap();
        assert_eq!(parts[0], Polynomial::zero());
        assert_eq!(parts[1], Polynomial::monomial(&f, f.one(), 6));
    }

    #[test]
    fn canonical_basis_ignores_order_and_scaling() {
        let f = Field::prime(7).unwrap();
        let a = Polynomial::from_values(&f, &[1, 2, 3]).unwrap();
        let b = Polynomial::from_values(&f, &[0, 1, 5]).unwrap();
        let first = canonical_basis(&f, &[a.clone(), b.clone()]);
        let second = canonical_basis(&f, &[b.scale(&f, f.element(3).unwrap()), a.add(&f, &b)]);
        assert_eq!(first, second);
        assert_eq!(degrees(&first), vec![0, 2]);
    }
}
