//! Rational points, bigraded monomials and homogeneous polynomials on the
//! Hirzebruch surface `H_eta`.
//!
//! The Cox ring is `F_q[T1, T2, X1, X2]` with `T1, T2` of bidegree `(1, 0)`,
//! `X1` of bidegree `(-eta, 1)` and `X2` of bidegree `(0, 1)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::lattice::{self, LatticePoint};

/// A bidegree `(dT, dX)` on `H_eta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub eta: u32,
    pub dt: i64,
    pub dx: i64,
}

impl Bidegree {
    pub const fn new(eta: u32, dt: i64, dx: i64) -> Bidegree {
        Bidegree { eta, dt, dx }
    }

    /// `delta = dT + eta * dX`.
    pub const fn delta(&self) -> i64 {
        self.dt + self.eta as i64 * self.dx
    }

    /// Whether the graded piece `R(dT, dX)` is nonzero.
    pub const fn is_nonzero(&self) -> bool {
        self.dx >= 0 && self.delta() >= 0
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_nonzero() {
            Ok(())
        } else {
            Err(Error::EmptyGradedPiece {
                dt: self.dt,
                dx: self.dx,
            })
        }
    }

    /// Sum of bidegrees (the bidegree of a product).
    pub fn add(&self, other: &Bidegree) -> Result<Bidegree> {
        if self.eta != other.eta {
            return Err(Error::MixedSurfaces(self.eta, other.eta));
        }
        Ok(Bidegree::new(self.eta, self.dt + other.dt, self.dx + other.dx))
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}({}, {})", self.eta, self.dt, self.dx)
    }
}

/// Exponents of `T1^c1 T2^c2 X1^d1 X2^d2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ExponentVector {
    pub c1: u32,
    pub c2: u32,
    pub d1: u32,
    pub d2: u32,
}

impl ExponentVector {
    pub const ONE: ExponentVector = ExponentVector::new(0, 0, 0, 0);

    pub const fn new(c1: u32, c2: u32, d1: u32, d2: u32) -> ExponentVector {
        ExponentVector { c1, c2, d1, d2 }
    }

    pub const fn as_array(&self) -> [u32; 4] {
        [self.c1, self.c2, self.d1, self.d2]
    }

    /// The bidegree of this monomial on `H_eta`.
    pub fn bidegree(&self, eta: u32) -> Bidegree {
        let dt = self.c1 as i64 + self.c2 as i64 - eta as i64 * self.d1 as i64;
        Bidegree::new(eta, dt, self.d1 as i64 + self.d2 as i64)
    }

    pub fn has_bidegree(&self, bideg: &Bidegree) -> bool {
        self.bidegree(bideg.eta) == *bideg
    }

    /// The lattice point `(d2, c2)` this monomial corresponds to.
    pub fn lattice_point(&self) -> LatticePoint {
        LatticePoint::new(self.d2 as i64, self.c2 as i64)
    }

    /// Exponentwise divisibility `self | other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.as_array().iter().zip(other.as_array()).all(|(a, b)| *a <= b)
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector::new(
            self.c1 + other.c1,
            self.c2 + other.c2,
            self.d1 + other.d1,
            self.d2 + other.d2,
        )
    }

    /// Value of the monomial at the coordinate tuple `(t1, t2, x1, x2)`.
    pub fn evaluate_at(&self, field: &Field, coords: [FieldElement; 4]) -> FieldElement {
        self.as_array()
            .iter()
            .zip(coords)
            .fold(field.one(), |acc, (&e, x)| field.mul(acc, field.pow(x, e as u64)))
    }

    pub fn evaluate(&self, field: &Field, point: &SurfacePoint) -> FieldElement {
        self.evaluate_at(field, point.coords())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.c1, self.c2, self.d1, self.d2)
    }
}

/// The canonical representative form of a rational point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointForm {
    /// `(1, a, 1, b)`
    TorusLike { a: FieldElement, b: FieldElement },
    /// `(0, 1, 1, b)`
    T1Zero { b: FieldElement },
    /// `(1, a, 0, 1)`
    X1Zero { a: FieldElement },
    /// `(0, 1, 0, 1)`
    BothZero,
}

/// A rational point of `H_eta`, stored in canonical coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub form: PointForm,
}

impl SurfacePoint {
    /// Coordinates `(t1, t2, x1, x2)`.
    pub fn coords(&self) -> [FieldElement; 4] {
        let (z, o) = (FieldElement::ZERO, FieldElement::ONE);
        match self.form {
            PointForm::TorusLike { a, b } => [o, a, o, b],
            PointForm::T1Zero { b } => [z, o, o, b],
            PointForm::X1Zero { a } => [o, a, z, o],
            PointForm::BothZero => [z, o, z, o],
        }
    }

    /// Whether `x1 = 0`.
    pub fn on_x1_zero(&self) -> bool {
        matches!(self.form, PointForm::X1Zero { .. } | PointForm::BothZero)
    }

    /// Whether some coordinate vanishes.
    pub fn off_torus(&self) -> bool {
        self.coords().iter().any(|c| c.is_zero())
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [t1, t2, x1, x2] = self.coords();
        write!(f, "({t1},{t2},{x1},{x2})")
    }
}

/// All `(q+1)^2` rational points in canonical order: `(1,a,1,b)` by
/// `(a, b)`, then `(0,1,1,b)`, then `(1,a,0,1)`, then `(0,1,0,1)`.
///
/// The list does not depend on `eta`.
pub fn rational_points(field: &Field) -> Vec<SurfacePoint> {
    let q = field.order() as usize;
    let mut pts = Vec::with_capacity((q + 1) * (q + 1));
    for a in field.elements() {
        for b in field.elements() {
            pts.push(SurfacePoint {
                form: PointForm::TorusLike { a, b },
            });
        }
    }
    pts.extend(field.elements().map(|b| SurfacePoint {
        form: PointForm::T1Zero { b },
    }));
    pts.extend(field.elements().map(|a| SurfacePoint {
        form: PointForm::X1Zero { a },
    }));
    pts.push(SurfacePoint {
        form: PointForm::BothZero,
    });
    pts
}

/// The monomial `M(d2, c2)` of bidegree `bideg`.
pub fn monomial_from_lattice(bideg: &Bidegree, d2: i64, c2: i64) -> Result<ExponentVector> {
    let c1 = bideg.delta() - bideg.eta as i64 * d2 - c2;
    let d1 = bideg.dx - d2;
    if [c1, c2, d1, d2].iter().any(|&e| e < 0) {
        return Err(Error::OutsidePolygon { d2, c2 });
    }
    Ok(ExponentVector::new(c1 as u32, c2 as u32, d1 as u32, d2 as u32))
}

pub fn monomial_at(bideg: &Bidegree, u: LatticePoint) -> Result<ExponentVector> {
    monomial_from_lattice(bideg, u.d2, u.c2)
}

/// Every monomial of bidegree `bideg`, ordered by `(d2, c2)`.
pub fn monomial_basis(bideg: &Bidegree) -> Result<Vec<ExponentVector>> {
    lattice::polygon_points(bideg)?
        .into_iter()
        .map(|u| monomial_at(bideg, u))
        .collect()
}

/// A homogeneous polynomial of the Cox ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxPolynomial {
    field: Field,
    bidegree: Bidegree,
    terms: BTreeMap<ExponentVector, FieldElement>,
}

/// The four Cox ring variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    T1,
    T2,
    X1,
    X2,
}

impl CoxPolynomial {
    pub fn zero(field: &Field, bidegree: Bidegree) -> CoxPolynomial {
        CoxPolynomial {
            field: field.clone(),
            bidegree,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff * m` as a polynomial of bidegree `bidegree`.
    pub fn term(field: &Field, bidegree: Bidegree, m: ExponentVector, coeff: FieldElement) -> Result<CoxPolynomial> {
        if !m.has_bidegree(&bidegree) {
            return Err(Error::NotHomogeneous);
        }
        let mut p = CoxPolynomial::zero(field, bidegree);
        if !coeff.is_zero() {
            p.terms.insert(m, coeff);
        }
        Ok(p)
    }

    pub fn monomial(field: &Field, eta: u32, m: ExponentVector) -> CoxPolynomial {
        let bideg = m.bidegree(eta);
        CoxPolynomial::term(field, bideg, m, field.one()).expect("monomial has its own bidegree")
    }

    pub fn constant(field: &Field, eta: u32, c: FieldElement) -> CoxPolynomial {
        CoxPolynomial::term(field, Bidegree::new(eta, 0, 0), ExponentVector::ONE, c).expect("constants have bidegree (0,0)")
    }

    pub fn variable(field: &Field, eta: u32, v: Variable) -> CoxPolynomial {
        let m = match v {
            Variable::T1 => ExponentVector::new(1, 0, 0, 0),
            Variable::T2 => ExponentVector::new(0, 1, 0, 0),
            Variable::X1 => ExponentVector::new(0, 0, 1, 0),
            Variable::X2 => ExponentVector::new(0, 0, 0, 1),
        };
        CoxPolynomial::monomial(field, eta, m)
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        field: &Field,
        bidegree: Bidegree,
        terms: impl IntoIterator<Item = (ExponentVector, FieldElement)>,
    ) -> Result<CoxPolynomial> {
        let mut p = CoxPolynomial::zero(field, bidegree);
        for (m, c) in terms {
            if !m.has_bidegree(&bidegree) {
                return Err(Error::NotHomogeneous);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &ExponentVector) -> FieldElement {
        self.terms.get(m).copied().unwrap_or(FieldElement::ZERO)
    }

    fn add_term(&mut self, m: ExponentVector, c: FieldElement) {
        let sum = self.field.add(self.coefficient(&m), c);
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    fn check_compatible(&self, other: &CoxPolynomial) -> Result<()> {
        self.field.ensure_same(other.field.spec())?;
        if self.bidegree.eta != other.bidegree.eta {
            return Err(Error::MixedSurfaces(self.bidegree.eta, other.bidegree.eta));
        }
        Ok(())
    }

    pub fn add(&self, other: &CoxPolynomial) -> Result<CoxPolynomial> {
        self.check_compatible(other)?;
        if self.bidegree != other.bidegree {
            return Err(Error::NotHomogeneous);
        }
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> CoxPolynomial {
        self.scale(self.field.neg(self.field.one()))
    }

    pub fn sub(&self, other: &CoxPolynomial) -> Result<CoxPolynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElement) -> CoxPolynomial {
        let mut out = CoxPolynomial::zero(&self.field, self.bidegree);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(&m, &a)| (m, self.field.mul(a, c))).collect();
        }
        out
    }

    pub fn mul(&self, other: &CoxPolynomial) -> Result<CoxPolynomial> {
        self.check_compatible(other)?;
        let mut out = CoxPolynomial::zero(&self.field, self.bidegree.add(&other.bidegree)?);
        for (m, &a) in &self.terms {
            for (n, &b) in &other.terms {
                out.add_term(m.mul(n), self.field.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<CoxPolynomial> {
        let mut acc = CoxPolynomial::constant(&self.field, self.bidegree.eta, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn evaluate_at(&self, coords: [FieldElement; 4]) -> FieldElement {
        self.terms.iter().fold(self.field.zero(), |acc, (m, &c)| {
            self.field.add(acc, self.field.mul(c, m.evaluate_at(&self.field, coords)))
        })
    }

    pub fn evaluate(&self, point: &SurfacePoint) -> FieldElement {
        self.evaluate_at(point.coords())
    }

    /// Values at `points`, in order.
    pub fn evaluation_vector(&self, points: &[SurfacePoint]) -> Vec<FieldElement> {
        points.iter().map(|p| self.evaluate(p)).collect()
    }

    /// Number of points where the polynomial does not vanish.
    pub fn weight(&self, points: &[SurfacePoint]) -> usize {
        points.iter().filter(|p| !self.evaluate(p).is_zero()).count()
    }
}

impl fmt::Display for CoxPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["T1", "T2", "X1", "X2"];
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (name, e) in names.iter().zip(m.as_array()) {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
