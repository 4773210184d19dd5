//! Exact arithmetic in prime fields `F_p` and extension fields `F_{p^l}`.
//!
//! Elements use polynomial-basis coordinates over `F_p`, packed into their
//! canonical integer `Σ c_i p^i`. Every element carries a short tag derived
//! from its field so that mixing elements of different fields is caught.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Default cap for [`Field::enumerate_elements`].
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

const MAX_DEGREE: usize = 20;

/// Serializable description of a finite field.
///
/// `modulus` lists the monic irreducible polynomial low-to-high (length
/// `l + 1`). It is empty for prime fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub l: u32,
    #[serde(default)]
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec {
            p,
            l: 1,
            modulus: Vec::new(),
        }
    }

    /// Canonical choice of modulus for `F_{p^l}`: the primitive monic
    /// polynomial of degree `l` with the smallest canonical integer
    /// `Σ c_i p^i`. For `GF(16)` this is `x^4 + x + 1`, for `GF(256)`
    /// `x^8 + x^4 + x^3 + x^2 + 1`.
    pub fn standard(p: u32, l: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        check_order(p, l)?;
        if l == 1 {
            return Ok(FieldSpec::prime(p));
        }
        let lu = l as usize;
        let count = (p as u64).pow(l);
        for low in 0..count {
            let mut modulus = to_digits(low, p, lu);
            if modulus[0] == 0 {
                continue;
            }
            modulus.push(1);
            if !is_irreducible(&modulus, p) {
                continue;
            }
            let candidate = FieldSpec { p, l, modulus };
            let field = Field::from_spec_unchecked(candidate.clone());
            let x = field.element(p as u64)?;
            if field.multiplicative_order(x)? == field.order() as u64 - 1 {
                return Ok(candidate);
            }
        }
        Err(Error::InvalidModulus(format!(
            "no primitive polynomial of degree {l} over F_{p}"
        )))
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).saturating_pow(self.l)
    }
}

struct Inner {
    spec: FieldSpec,
    q: u32,
    p: u32,
    l: usize,
    tag: u32,
    /// Low-to-high monic modulus of length `l + 1`; empty for prime fields.
    modulus: Vec<u32>,
    /// Bit mask of the modulus for characteristic two.
    modulus_bits: u64,
}

/// A validated finite field. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

/// An element of some [`Field`], stored as its canonical integer.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    tag: u32,
}

impl FieldElement {
    /// Canonical integer `Σ c_i p^i`.
    pub fn value(self) -> u32 {
        self.value
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.value, self.tag).cmp(&(other.value, other.tag))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.tag == other.0.tag && self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.l == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.l, self.0.modulus)
        }
    }
}

impl Field {
    /// Validate `spec` and build the field.
    pub fn new(spec: FieldSpec) -> Result<Self> {
        if !is_prime(spec.p) {
            return Err(Error::NotPrime(spec.p));
        }
        check_order(spec.p, spec.l)?;
        if spec.l == 1 {
            if !(spec.modulus.is_empty() || spec.modulus == [0, 1]) {
                return Err(Error::InvalidModulus(
                    "prime fields take an empty modulus".into(),
                ));
            }
            return Ok(Field::from_spec_unchecked(FieldSpec::prime(spec.p)));
        }
        let l = spec.l as usize;
        if spec.modulus.len() != l + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients, got {}",
                l + 1,
                spec.modulus.len()
            )));
        }
        if spec.modulus[l] != 1 {
            return Err(Error::InvalidModulus("modulus is not monic".into()));
        }
        if spec.modulus.iter().any(|&c| c >= spec.p) {
            return Err(Error::InvalidModulus(
                "coefficient not reduced mod p".into(),
            ));
        }
        if !is_irreducible(&spec.modulus, spec.p) {
            return Err(Error::ReducibleModulus { p: spec.p });
        }
        Ok(Field::from_spec_unchecked(spec))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Field::new(FieldSpec::prime(p))
    }

    /// `F_{p^l}` with the canonical modulus of [`FieldSpec::standard`].
    pub fn standard(p: u32, l: u32) -> Result<Self> {
        Field::new(FieldSpec::standard(p, l)?)
    }

    /// The field of order `q` with the canonical modulus.
    pub fn of_order(q: u64) -> Result<Self> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge {
                q,
                cap: MAX_FIELD_ORDER,
            });
        }
        match factorize(q).as_slice() {
            [(p, l)] => Field::standard(*p as u32, *l),
            _ => Err(Error::InvalidParameters(format!("{q} is not a prime power"))),
        }
    }

    fn from_spec_unchecked(spec: FieldSpec) -> Self {
        let p = spec.p;
        let l = spec.l as usize;
        let q = p.pow(spec.l);
        let modulus_bits = if p == 2 {
            spec.modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        } else {
            0
        };
        let tag = fingerprint(&spec);
        Field(Arc::new(Inner {
            modulus: spec.modulus.clone(),
            spec,
            q,
            p,
            l,
            tag,
            modulus_bits,
        }))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    /// Field order `q = p^l`.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.l as u32
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// Element with the given canonical integer.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.0.q as u64 {
            return Err(Error::ElementOutOfRange {
                value,
                q: self.0.q,
            });
        }
        Ok(self.wrap(value as u32))
    }

    /// Element from polynomial-basis coordinates (low-to-high).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.0.l {
            return Err(Error::InvalidParameters(format!(
                "{} coordinates for an extension of degree {}",
                coeffs.len(),
                self.0.l
            )));
        }
        let mut value = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(Error::ElementOutOfRange {
                    value: c as u64,
                    q: self.0.p,
                });
            }
            value = value * self.0.p as u64 + c as u64;
        }
        self.element(value)
    }

    /// Polynomial-basis coordinates of `a`, length `l`.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        self.same(a);
        to_digits(a.value as u64, self.0.p, self.0.l)
    }

    /// Does `a` belong to this field?
    pub fn contains(&self, a: FieldElement) -> bool {
        a.tag == self.0.tag
    }

    pub(crate) fn wrap(&self, value: u32) -> FieldElement {
        debug_assert!(value < self.0.q);
        FieldElement {
            value,
            tag: self.0.tag,
        }
    }

    #[inline]
    fn same(&self, a: FieldElement) {
        assert!(a.tag == self.0.tag, "element from a different field");
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if a.tag == self.0.tag {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.add_raw(a.value, b.value)))
    }

    pub fn try_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.mul_raw(a.value, b.value)))
    }

    /// Sum of two elements.
    ///
    /// Panics if either operand belongs to another field; see
    /// [`Field::try_add`] for the checked form.
    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.same(a);
        self.same(b);
        self.wrap(self.add_raw(a.value, b.value))
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.same(a);
        self.same(b);
        self.wrap(self.add_raw(a.value, self.neg_raw(b.value)))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.same(a);
        self.wrap(self.neg_raw(a.value))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.same(a);
        self.same(b);
        self.wrap(self.mul_raw(a.value, b.value))
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0.q as u64 - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let inv = self.inv(b)?;
        self.check(a)?;
        Ok(self.mul(a, inv))
    }

    /// `a^e` by square-and-multiply, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        self.same(a);
        let mut base = a.value;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        self.wrap(acc)
    }

    /// Least `e ≥ 1` with `a^e = 1`.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64> {
        self.check(a)?;
        if a.value == 0 {
            return Err(Error::DivisionByZero);
        }
        let group = self.0.q as u64 - 1;
        let mut ord = group;
        for (prime, _) in factorize(group) {
            while ord.is_multiple_of(prime) && self.pow(a, ord / prime).value == 1 {
                ord /= prime;
            }
        }
        Ok(ord)
    }

    /// Smallest element (by canonical integer) of multiplicative order `d`.
    pub fn element_of_order(&self, d: u64) -> Option<FieldElement> {
        if d == 0 || !(self.0.q as u64 - 1).is_multiple_of(d) {
            return None;
        }
        (1..self.0.q)
            .map(|v| self.wrap(v))
            .find(|&a| self.multiplicative_order(a).ok() == Some(d))
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.element_of_order(self.0.q as u64 - 1)
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// All elements in canonical-integer order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |v| self.wrap(v))
    }

    /// All elements in canonical-integer order, refusing fields above `cap`.
    pub fn enumerate_elements(&self, cap: u64) -> Result<Vec<FieldElement>> {
        if self.0.q as u64 > cap {
            return Err(Error::CapExceeded {
                size: self.0.q as u128,
                cap: cap as u128,
            });
        }
        Ok(self.elements().collect())
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            a ^ b
        } else if self.0.l == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else {
            let mut out = 0u32;
            let mut scale = 1u32;
            let (mut a, mut b) = (a, b);
            for _ in 0..self.0.l {
                let s = (a % p + b % p) % p;
                out += s * scale;
                scale *= p;
                a /= p;
                b /= p;
            }
            out
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            a
        } else if self.0.l == 1 {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else {
            let mut out = 0u32;
            let mut scale = 1u32;
            let mut a = a;
            for _ in 0..self.0.l {
                let d = a % p;
                out += ((p - d) % p) * scale;
                scale *= p;
                a /= p;
            }
            out
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        let l = self.0.l;
        if l == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        if p == 2 {
            let mut prod = 0u64;
            let (a, mut b) = (a as u64, b as u64);
            let mut shift = 0;
            while b != 0 {
                if b & 1 == 1 {
                    prod ^= a << shift;
                }
                b >>= 1;
                shift += 1;
            }
            for bit in (l..2 * l - 1).rev() {
                if prod >> bit & 1 == 1 {
                    prod ^= self.0.modulus_bits << (bit - l);
                }
            }
            return prod as u32;
        }
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        let (mut x, mut y) = (a, b);
        for i in 0..l {
            da[i] = (x % p) as u64;
            db[i] = (y % p) as u64;
            x /= p;
            y /= p;
        }
        let p64 = p as u64;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..l {
            if da[i] == 0 {
                continue;
            }
            for j in 0..l {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p64;
            }
        }
        let modulus = &self.0.modulus;
        for top in (l..2 * l - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            // x^top = -x^(top-l) * (modulus - x^l)
            for (i, &m) in modulus[..l].iter().enumerate() {
                let idx = top - l + i;
                prod[idx] = (prod[idx] + (p64 - c) * m as u64) % p64;
            }
            prod[top] = 0;
        }
        let mut out = 0u64;
        for i in (0..l).rev() {
            out = out * p64 + prod[i];
        }
        out as u32
    }
}

fn check_order(p: u32, l: u32) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidParameters("extension degree must be ≥ 1".into()));
    }
    let q = (p as u64).checked_pow(l).unwrap_or(u64::MAX);
    if q > MAX_FIELD_ORDER {
        return Err(Error::FieldTooLarge {
            q,
            cap: MAX_FIELD_ORDER,
        });
    }
    Ok(())
}

fn fingerprint(spec: &FieldSpec) -> u32 {
    // FNV-1a over (p, l, modulus)
    let mut h: u32 = 0x811c_9dc5;
    let mut feed = |v: u32| {
        for byte in v.to_le_bytes() {
            h ^= byte as u32;
            h = h.wrapping_mul(0x0100_0193);
        }
    };
    feed(spec.p);
    feed(spec.l);
    for &c in &spec.modulus {
        feed(c);
    }
    h
}

fn to_digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

/// Deterministic trial division up to `√n`.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Irreducibility of a monic polynomial over `F_p` by trial division against
/// every monic polynomial of degree at most half its degree.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = to_digits(low, p, d);
            divisor.push(1);
            if fp_rem_is_zero(f, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn fp_rem_is_zero(f: &[u32], monic: &[u32], p: u32) -> bool {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let d = monic.len() - 1;
    for top in (d..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (i, &m) in monic.iter().enumerate() {
            let idx = top - d + i;
            r[idx] = (r[idx] + (p - c) * m as u64) % p;
        }
    }
    r[..d].iter().all(|&c| c == 0)
}
