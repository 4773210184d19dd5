//! Univariate polynomials over a [`Field`].
//!
//! Coefficients are stored low-to-high without trailing zeros, so the zero
//! polynomial is the empty vector and has no degree.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]", self.to_text())
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.value() == 0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Build from canonical integers, low-to-high.
    pub fn from_values(field: &Field, values: &[u64]) -> Result<Self> {
        let coeffs = values
            .iter()
            .map(|&v| field.element(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(coeffs))
    }

    pub fn constant(c: FieldElement) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c · x^degree`.
    pub fn monomial(field: &Field, c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> Self {
        Polynomial::monomial(field, field.one(), 1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, field: &Field, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_else(|| field.zero())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    /// Canonical integers of the coefficients, low-to-high.
    pub fn values(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    /// Exponents carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.value() != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Space-separated decimal coefficients, low-to-high; `0` for zero.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.value().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_text(field: &Field, text: &str) -> Result<Self> {
        let values = text
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::InvalidParameters(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_values(field, &values)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, field: &Field, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// Evaluation that reports a field mismatch instead of panicking.
    pub fn try_evaluate(&self, field: &Field, x: FieldElement) -> Result<FieldElement> {
        if !field.contains(x) || self.coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.evaluate(field, x))
    }

    pub fn add(&self, field: &Field, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| field.add(self.coeff(field, i), other.coeff(field, i)))
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, field: &Field, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| field.sub(self.coeff(field, i), other.coeff(field, i)))
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, field: &Field, c: FieldElement) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, field: &Field, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![field.zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    pub fn mul(&self, field: &Field, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.value() == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.add(coeffs[i + j], field.mul(a, b));
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn pow(&self, field: &Field, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(field.one());
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// Scale so the leading coefficient is one; zero stays zero.
    pub fn monic(&self, field: &Field) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(lead) => self.scale(field, field.inv(lead).expect("nonzero leading coefficient")),
        }
    }

    /// Quotient and remainder with `deg r < deg g`.
    pub fn divmod(&self, field: &Field, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dg = g.degree().ok_or(Error::ZeroPolynomialDivisor)?;
        let lead_inv = field.inv(g.coeffs[dg])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - dg];
        for top in (dg..rem.len()).rev() {
            let c = rem[top];
            if c.value() == 0 {
                continue;
            }
            let factor = field.mul(c, lead_inv);
            quot[top - dg] = factor;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                let idx = top - dg + i;
                rem[idx] = field.sub(rem[idx], field.mul(factor, gc));
            }
        }
        rem.truncate(dg);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    pub fn rem(&self, field: &Field, g: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(field, g)?.1)
    }
}

/// Monic greatest common divisor.
pub fn gcd(field: &Field, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    Ok(ext_gcd(field, f, g).0)
}

/// Extended Euclid: returns `(d, s, t)` with `s·f + t·g = d`, `d` monic.
/// Both inputs zero yields three zero polynomials.
pub fn ext_gcd(
    field: &Field,
    f: &Polynomial,
    g: &Polynomial,
) -> (Polynomial, Polynomial, Polynomial) {
    let one = Polynomial::constant(field.one());
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (one.clone(), Polynomial::zero());
    let (mut t0, mut t1) = (Polynomial::zero(), one);
    while !r1.is_zero() {
        let (q, r) = r0.divmod(field, &r1).expect("nonzero divisor");
        let s = s0.sub(field, &q.mul(field, &s1));
        let t = t0.sub(field, &q.mul(field, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.leading() {
        None => (r0, s0, t0),
        Some(lead) => {
            let inv = field.inv(lead).expect("nonzero");
            (r0.scale(field, inv), s0.scale(field, inv), t0.scale(field, inv))
        }
    }
}

/// Monic `∏ (x − α)` over the points; the empty product is `1`.
pub fn annihilator(field: &Field, points: &[FieldElement]) -> Polynomial {
    let mut coeffs = vec![field.one()];
    for &a in points {
        // multiply by (x - a)
        let mut next = vec![field.zero(); coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.sub(next[i], field.mul(c, a));
        }
        coeffs = next;
    }
    Polynomial::new(coeffs)
}

/// The unique polynomial of degree below `points.len()` through every
/// `(x, y)` pair, computed from the Lagrange form
/// `Σ_j y_j ∏_{m≠j} (x − x_m)/(x_j − x_m)`.
pub fn interpolate(field: &Field, points: &[(FieldElement, FieldElement)]) -> Result<Polynomial> {
    if points.is_empty() {
        return Err(Error::EmptyInterpolation);
    }
    let mut seen = HashSet::with_capacity(points.len());
    for &(x, y) in points {
        if !field.contains(x) || !field.contains(y) {
            return Err(Error::FieldMismatch);
        }
        if !seen.insert(x) {
            return Err(Error::DuplicateAbscissa(x.value()));
        }
    }
    let xs: Vec<FieldElement> = points.iter().map(|&(x, _)| x).collect();
    let master = annihilator(field, &xs);
    let n = points.len();
    let mut acc = vec![field.zero(); n];
    for &(xj, yj) in points {
        if yj.value() == 0 {
            continue;
        }
        // master / (x - xj) by synthetic division; quotient has degree n-1
        let mut quot = vec![field.zero(); n];
        let mut carry = field.zero();
        for i in (1..=n).rev() {
            carry = field.add(master.coeffs[i], field.mul(carry, xj));
            quot[i - 1] = carry;
        }
        let denom = Polynomial { coeffs: quot.clone() }.evaluate(field, xj);
        let factor = field.div(yj, denom)?;
        for (a, q) in acc.iter_mut().zip(&quot) {
            *a = field.add(*a, field.mul(factor, *q));
        }
    }
    Ok(Polynomial::new(acc))
}

/// Chinese remaindering: the unique `f` with `f ≡ residues[i] mod moduli[i]`
/// and `deg f < Σ deg moduli[i]`.
pub fn crt_combine(
    field: &Field,
    residues: &[Polynomial],
    moduli: &[Polynomial],
) -> Result<Polynomial> {
    if residues.len() != moduli.len() {
        return Err(Error::LengthMismatch {
            expected: moduli.len(),
            got: residues.len(),
        });
    }
    for (i, (r, m)) in residues.iter().zip(moduli).enumerate() {
        let dm = m.degree().ok_or(Error::ZeroPolynomialDivisor)?;
        if r.degree().is_some_and(|dr| dr >= dm) {
            return Err(Error::ResidueDegree { index: i });
        }
    }
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            if gcd(field, &moduli[i], &moduli[j])?.degree() != Some(0) {
                return Err(Error::NonCoprimeModuli(i, j));
            }
        }
    }
    let product = moduli
        .iter()
        .fold(Polynomial::constant(field.one()), |acc, m| acc.mul(field, m));
    let mut f = Polynomial::zero();
    for (r, m) in residues.iter().zip(moduli) {
        if r.is_zero() {
            continue;
        }
        let (others, _) = product.divmod(field, m)?;
        let (_, s, _) = ext_gcd(field, &others.rem(field, m)?, m);
        let term = r.mul(field, &s).rem(field, m)?.mul(field, &others);
        f = f.add(field, &term);
    }
    f.rem(field, &product)
}
