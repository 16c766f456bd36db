//! Monomial order, projection onto representatives and the distance lower bound.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::lattice::{self, LatticePoint};
use crate::surface::{monomial_at, Bidegree, CoxPolynomial, ExponentVector};

/// The monomial order: total `X` degree, then `d2`, then `c2`, then `c1`.
pub fn compare(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    let key = |m: &ExponentVector| (m.d1 + m.d2, m.d2, m.c2, m.c1);
    key(a).cmp(&key(b))
}

/// Splits `A = k(q-1) + r` with `r` in `[1, q-1]`.
fn split_corner(a: i64, q: u32) -> (i64, i64) {
    let step = q as i64 - 1;
    let r = (a - 1).rem_euclid(step) + 1;
    ((a - r) / step, r)
}

/// The corner `(A, 0)` removed from `K` under hypothesis (H).
fn special_corner(bideg: &Bidegree, q: u32) -> Option<LatticePoint> {
    lattice::hypothesis_h(bideg, q).then(|| LatticePoint::new(bideg.delta() / bideg.eta as i64, 0))
}

/// Projection of a monomial onto the span of the representatives `Delta*`.
///
/// The result has the same evaluation vector as `m`.
pub fn project(field: &Field, bideg: &Bidegree, m: &ExponentVector) -> Result<CoxPolynomial> {
    if !m.has_bidegree(bideg) {
        return Err(Error::NotHomogeneous);
    }
    let q = field.order();
    let u = m.lattice_point();
    let one = field.one();
    if Some(u) == special_corner(bideg, q) {
        let (k, r) = split_corner(u.d2, q);
        let top = bideg.eta as i64 * k * (q as i64 - 1);
        return CoxPolynomial::from_terms(
            field,
            *bideg,
            [
                (monomial_at(bideg, LatticePoint::new(r, 0))?, one),
                (monomial_at(bideg, LatticePoint::new(r, top))?, one),
                (monomial_at(bideg, LatticePoint::new(r, q as i64 - 1))?, field.neg(one)),
            ],
        );
    }
    let rep = lattice::reduce(bideg, q, u)?;
    CoxPolynomial::term(field, *bideg, monomial_at(bideg, rep)?, one)
}

/// Termwise extension of [`project`].
pub fn project_poly(poly: &CoxPolynomial) -> Result<CoxPolynomial> {
    let field = poly.field();
    let bideg = poly.bidegree();
    let mut out = CoxPolynomial::zero(field, bideg);
    for (m, &c) in poly.terms() {
        out = out.add(&project(field, &bideg, m)?.scale(c))?;
    }
    Ok(out)
}

/// The kernel polynomial `F0 = M(A,0) - M(r,0) + M(r,q-1) - M(r, eta*k*(q-1))`.
pub fn special_kernel_element(field: &Field, bideg: &Bidegree) -> Result<CoxPolynomial> {
    bideg.validate()?;
    let corner = special_corner(bideg, field.order()).ok_or(Error::HypothesisHNotSatisfied)?;
    let m = monomial_at(bideg, corner)?;
    CoxPolynomial::term(field, *bideg, m, field.one())?.sub(&project(field, bideg, &m)?)
}

/// Greatest monomial of `poly` under [`compare`].
pub fn leading_monomial(poly: &CoxPolynomial) -> Result<ExponentVector> {
    poly.terms().keys().copied().max_by(compare).ok_or(Error::ZeroPolynomial)
}

/// The enlarged bidegree `(delta + q, dX + q)` used by the distance bound.
pub fn epsilon_bidegree(bideg: &Bidegree, q: u32) -> Bidegree {
    Bidegree::new(bideg.eta, bideg.delta() + q as i64, bideg.dx + q as i64)
}

fn representative_monomials(bideg: &Bidegree, q: u32) -> Result<Vec<ExponentVector>> {
    lattice::representatives(bideg, q)?
        .k_star
        .into_iter()
        .map(|u| monomial_at(bideg, u))
        .collect()
}

fn count_multiples(m: &ExponentVector, big: &[ExponentVector]) -> u64 {
    big.iter().filter(|n| m.divides(n)).count() as u64
}

/// Number of representatives of the enlarged bidegree divisible by `M(rep)`.
pub fn divisibility_count(bideg: &Bidegree, q: u32, rep: LatticePoint) -> Result<u64> {
    let reps = lattice::representatives(bideg, q)?;
    if !reps.k_star.contains(&rep) {
        return Err(Error::NotARepresentative { d2: rep.d2, c2: rep.c2 });
    }
    let big = representative_monomials(&epsilon_bidegree(bideg, q), q)?;
    Ok(count_multiples(&monomial_at(bideg, rep)?, &big))
}

/// Lower bound on the minimum distance, with per-representative detail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBoundReport {
    pub epsilon_t: i64,
    pub epsilon_x: i64,
    pub per_representative_counts: Vec<(LatticePoint, u64)>,
    pub bound: u64,
    pub argmin: LatticePoint,
    /// Minimum of the one-variable function `f` over its abscissae.
    pub f_minimum: u64,
    pub f_argmin: i64,
}

impl DistanceBoundReport {
    /// Whether the enumerated bound and the minimum of `f` coincide.
    pub fn consistent(&self) -> bool {
        self.bound == self.f_minimum
    }
}

/// Abscissae over which `f` is minimised.
pub fn f_domain(bideg: &Bidegree, q: u32) -> Vec<i64> {
    let q = q as i64;
    if bideg.dt >= 0 {
        let mut v: Vec<i64> = (0..=bideg.dx.min(q - 1)).collect();
        if bideg.dx > q - 1 {
            v.push(bideg.dx);
        }
        v
    } else {
        let floor_a = lattice::a_value(bideg).floor().to_integer();
        (0..=floor_a.min(q - 1)).collect()
    }
}

/// `f(a) = max(q - a + [a = dX], 1) * max(q - delta + eta*a + 1, 1)`.
pub fn f_value(bideg: &Bidegree, q: u32, a: i64) -> u64 {
    let q = q as i64;
    let first = (q - a + i64::from(a == bideg.dx)).max(1);
    let second = (q - bideg.delta() + bideg.eta as i64 * a + 1).max(1);
    (first * second) as u64
}

pub fn distance_bound(bideg: &Bidegree, q: u32) -> Result<DistanceBoundReport> {
    let reps = lattice::representatives(bideg, q)?;
    let eps = epsilon_bidegree(bideg, q);
    let big = representative_monomials(&eps, q)?;
    let counts: Vec<(LatticePoint, u64)> = reps
        .k_star
        .par_iter()
        .map(|&u| Ok((u, count_multiples(&monomial_at(bideg, u)?, &big))))
        .collect::<Result<_>>()?;
    let &(argmin, bound) = counts
        .iter()
        .min_by_key(|(_, c)| *c)
        .expect("K* is never empty for a nonzero graded piece");
    let (f_argmin, f_minimum) = f_domain(bideg, q)
        .into_iter()
        .map(|a| (a, f_value(bideg, q, a)))
        .min_by_key(|&(_, v)| v)
        .expect("the abscissa set contains 0");
    Ok(DistanceBoundReport {
        epsilon_t: eps.dt,
        epsilon_x: eps.dx,
        per_representative_counts: counts,
        bound,
        argmin,
        f_minimum,
        f_argmin,
    })
}
