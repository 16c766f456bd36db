//! Table-driven arithmetic in small finite fields `F_q`, `q = p^m <= 256`.
//!
//! Elements are identified with their canonical index `sum coeffs[i] * p^i`,
//! where `coeffs` is the little-endian coefficient vector of the residue
//! class modulo the field modulus. Index 0 is zero and index 1 is one, and
//! enumerating indices in ascending order gives the canonical element order
//! used everywhere else in the crate.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 256;

/// Parameters identifying a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// Characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Order `p^m`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic irreducible modulus, `m + 1` coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// An element of some `F_q`, stored as its canonical index.
///
/// The element does not know which field it lives in; arithmetic goes through
/// [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub(crate) const fn from_index(i: u8) -> FieldElement {
        FieldElement(i)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct Tables {
    spec: FieldSpec,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// A finite field with precomputed addition and multiplication tables.
///
/// Cloning is cheap; clones share the tables.
#[derive(Debug, Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `F_{p^m}` using the lexicographically smallest monic irreducible
    /// polynomial of degree `m` (coefficients compared constant term first).
    pub fn new(p: u32, m: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER as u64);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, m });
        };
        let q = q as u32;
        let modulus = smallest_irreducible(p, m);
        let spec = FieldSpec { p, m, q, modulus };
        Ok(Field {
            inner: Arc::new(Tables::build(spec)),
        })
    }

    /// Builds the field of order `q`, which must be a prime power `<= 256`.
    pub fn with_order(q: u64) -> Result<Field> {
        let Some((p, m)) = prime_power(q) else {
            return Err(Error::NotAPrimePower(q));
        };
        Field::new(p, m)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    /// Field order `q`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.spec.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.spec.p
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The element with canonical index `index`.
    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.order() {
            Ok(FieldElement(index as u8))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                q: self.order(),
            })
        }
    }

    /// All `q` elements in ascending index order; the first is zero.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = FieldElement> + Clone {
        (0..self.order()).map(|i| FieldElement(i as u8))
    }

    /// Little-endian coefficient vector of length `m`.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let FieldSpec { p, m, .. } = self.inner.spec;
        let mut idx = a.0 as u32;
        (0..m)
            .map(|_| {
                let c = idx % p;
                idx /= p;
                c
            })
            .collect()
    }

    /// Inverse of [`Field::coeffs`]; coefficients are reduced mod `p`.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        let FieldSpec { p, m, .. } = self.inner.spec;
        if coeffs.len() > m as usize {
            return Err(Error::ElementOutOfRange {
                index: u32::MAX,
                q: self.order(),
            });
        }
        let idx = coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c % p);
        self.element(idx)
    }

    #[inline]
    fn slot(&self, a: FieldElement, b: FieldElement) -> usize {
        a.index() * self.order() as usize + b.index()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.inner.add[self.slot(a, b)])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.inner.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.inner.mul[self.slot(a, b)])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.inner.inv[a.index()]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with the convention `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        // The multiplicative group has order q - 1.
        let mut e = e % (self.order() as u64 - 1);
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The full addition table, `add_table()[a * q + b] = a + b` on indices.
    #[inline]
    pub fn add_table(&self) -> &[u8] {
        &self.inner.add
    }

    /// Row of the addition table for `a`: `add_row(a)[b] = a + b`.
    #[inline]
    pub fn add_row(&self, a: FieldElement) -> &[u8] {
        let q = self.order() as usize;
        &self.inner.add[a.index() * q..(a.index() + 1) * q]
    }

    /// Row of the multiplication table for `a`.
    #[inline]
    pub fn mul_row(&self, a: FieldElement) -> &[u8] {
        let q = self.order() as usize;
        &self.inner.mul[a.index() * q..(a.index() + 1) * q]
    }

    /// Checks that `other` is the same field.
    pub fn ensure_same(&self, other: &FieldSpec) -> Result<()> {
        if self.spec() == other {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }
}

impl Tables {
    fn build(spec: FieldSpec) -> Tables {
        let q = spec.q as usize;
        let p = spec.p;
        let m = spec.m as usize;
        let digits = |mut idx: usize| -> Vec<u32> {
            (0..m)
                .map(|_| {
                    let c = (idx % p as usize) as u32;
                    idx /= p as usize;
                    c
                })
                .collect()
        };
        let index_of = |c: &[u32]| -> u8 { c.iter().rev().fold(0u32, |acc, &x| acc * p + x) as u8 };
        let all: Vec<Vec<u32>> = (0..q).map(digits).collect();

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index_of(&sum);
                let prod = poly_mulmod(&all[a], &all[b], &spec.modulus, p);
                mul[a * q + b] = index_of(&prod);
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
            }
        }
        Tables {
            spec,
            add,
            mul,
            neg,
            inv,
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits `q` as `p^m` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > u32::MAX as u64 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))? as u32;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p as u64) {
        rest /= p as u64;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Remainder of `a` modulo the monic polynomial `modulus` over `F_p`
/// (little-endian coefficients).
fn poly_rem(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let deg = modulus.len() - 1;
    let mut r: Vec<u32> = a.to_vec();
    while r.len() > deg {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - deg;
            for (i, &c) in modulus[..deg].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * lead) % p;
            }
        }
    }
    r.resize(deg, 0);
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, modulus, p)
}

/// Monic polynomials of degree `d` over `F_p`, constant term first, in
/// lexicographic order of their coefficient vectors.
fn monic_polys(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d);
    (0..count).map(move |n| {
        // Most significant digit first so that the constant term varies slowest.
        let mut coeffs = vec![0u32; d as usize + 1];
        let mut n = n;
        for i in (0..d as usize).rev() {
            coeffs[i] = (n % p as u64) as u32;
            n /= p as u64;
        }
        coeffs[d as usize] = 1;
        coeffs
    })
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0)))
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    monic_polys(p, m)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields_use_modulus_x() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.spec().modulus(), &[0, 1]);
        assert_eq!(f2.order(), 2);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!(f3.spec().modulus(), &[0, 1]);
    }

    #[test]
    fn f4_modulus_is_the_only_irreducible_quadratic() {
        // Exhaustive over the four monic quadratics x^2 + b x + c over F_2.
        let irreducible: Vec<Vec<u32>> = (0..2)
            .flat_map(|c| (0..2).map(move |b| vec![c, b, 1]))
            .filter(|f| (0..2u32).all(|x| (f[0] + f[1] * x + x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.spec().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn f4_x_squared_is_x_plus_one() {
        let f4 = Field::new(2, 2).unwrap();
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        let x_plus_1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f4.mul(x, x), x_plus_1);
        assert_eq!(x_plus_1.index(), 3);
    }

    #[test]
    fn f4_table_matches_repeated_addition() {
        // Multiplication by a fixed element is additive, so a*b can be rebuilt
        // from a*x^i and the coefficient vector of b.
        let f4 = Field::new(2, 2).unwrap();
        let x = f4.from_coeffs(&[0, 1]).unwrap();
        for a in f4.elements() {
            let basis_images = [a, f4.mul(a, x)];
            for b in f4.elements() {
                let mut acc = f4.zero();
                for (i, &c) in f4.coeffs(b).iter().enumerate() {
                    for _ in 0..c {
                        acc = f4.add(acc, basis_images[i]);
                    }
                }
                assert_eq!(f4.mul(a, b), acc);
            }
        }
    }

    #[test]
    fn f3_two_squared_is_one() {
        let f3 = Field::new(3, 1).unwrap();
        let two = f3.element(2).unwrap();
        assert_eq!(f3.pow(two, 2), f3.one());
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        for q in [2u64, 3, 4, 9, 16] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(f.pow(f.zero(), 0), f.one());
            assert_eq!(f.pow(f.zero(), 5), f.zero());
        }
    }

    #[test]
    fn element_enumeration() {
        let idx = |q: u64| -> Vec<usize> { Field::with_order(q).unwrap().elements().map(|e| e.index()).collect() };
        assert_eq!(idx(2), vec![0, 1]);
        assert_eq!(idx(3), vec![0, 1, 2]);
        let f4 = Field::new(2, 2).unwrap();
        let coeffs: Vec<Vec<u32>> = f4.elements().map(|e| f4.coeffs(e)).collect();
        assert_eq!(coeffs, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert_eq!(Field::new(1, 3).unwrap_err(), Error::NonPrimeCharacteristic(1));
        assert_eq!(Field::new(2, 9).unwrap_err(), Error::FieldTooLarge { p: 2, m: 9 });
        assert_eq!(Field::new(257, 1).unwrap_err(), Error::FieldTooLarge { p: 257, m: 1 });
        assert_eq!(Field::new(2, 0).unwrap_err(), Error::ZeroDegree);
        assert_eq!(Field::with_order(6).unwrap_err(), Error::NotAPrimePower(6));
        assert!(Field::with_order(256).is_ok());
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = Field::with_order(5).unwrap();
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverses_and_frobenius_all_orders() {
        for q in (2..=256u64).filter(|&q| prime_power(q).is_some()) {
            let f = Field::with_order(q).unwrap();
            for a in f.elements() {
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one(), "q={q}");
                }
                assert_eq!(f.pow(a, q), a, "Frobenius fixes F_q, q={q}");
                assert_eq!(f.add(a, f.zero()), a);
            }
        }
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = Field::with_order(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn moduli_are_irreducible() {
        for q in (2..=256u64).filter(|&q| prime_power(q).is_some()) {
            let f = Field::with_order(q).unwrap();
            assert!(is_irreducible(f.spec().modulus(), f.characteristic()));
        }
    }

    #[test]
    fn mixed_fields_detected() {
        let f4 = Field::with_order(4).unwrap();
        let f5 = Field::with_order(5).unwrap();
        assert_eq!(f4.ensure_same(f5.spec()), Err(Error::MixedFields));
        assert!(f4.ensure_same(Field::new(2, 2).unwrap().spec()).is_ok());
    }
}
