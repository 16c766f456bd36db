//! Lattice-polygon combinatorics of the monomial basis.
//!
//! A monomial of bidegree `(dT, dX)` is identified with the lattice point
//! `(d2, c2)`. The polygon is `P = {(a, b) : 0 <= a <= floor(A), 0 <= b <= delta - eta*a}`
//! with `A = min(dX, delta/eta)` (or `dX` when `eta = 0`).

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{monomial_at, Bidegree};

/// A point `(d2, c2)` of the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub d2: i64,
    pub c2: i64,
}

impl LatticePoint {
    pub const fn new(d2: i64, c2: i64) -> LatticePoint {
        LatticePoint { d2, c2 }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d2, self.c2)
    }
}

/// The right-most abscissa `A` of the polygon, as an exact rational.
pub fn a_value(bideg: &Bidegree) -> Ratio<i64> {
    let dx = Ratio::from_integer(bideg.dx);
    if bideg.eta == 0 {
        dx
    } else {
        dx.min(Ratio::new(bideg.delta(), bideg.eta as i64))
    }
}

/// `A` when it is an integer.
fn a_integer(bideg: &Bidegree) -> Option<i64> {
    let a = a_value(bideg);
    a.is_integer().then(|| a.to_integer())
}

/// Height `delta - eta*a` of column `a`.
fn column_top(bideg: &Bidegree, a: i64) -> i64 {
    bideg.delta() - bideg.eta as i64 * a
}

pub fn contains(bideg: &Bidegree, u: LatticePoint) -> bool {
    bideg.is_nonzero() && u.d2 >= 0 && u.c2 >= 0 && u.d2 <= bideg.dx && u.c2 <= column_top(bideg, u.d2)
}

fn ensure_contains(bideg: &Bidegree, u: LatticePoint) -> Result<()> {
    if contains(bideg, u) {
        Ok(())
    } else {
        Err(Error::OutsidePolygon { d2: u.d2, c2: u.c2 })
    }
}

/// All lattice points of the polygon, ordered by `(d2, c2)`.
pub fn polygon_points(bideg: &Bidegree) -> Result<Vec<LatticePoint>> {
    bideg.validate()?;
    let floor_a = a_value(bideg).floor().to_integer();
    Ok((0..=floor_a)
        .flat_map(|a| (0..=column_top(bideg, a)).map(move |b| LatticePoint::new(a, b)))
        .collect())
}

/// Whether `M(u)` and `M(v)` have the same evaluation at every rational
/// point: for every variable, `q - 1` divides the exponent difference and
/// the exponents vanish together.
pub fn equivalent(bideg: &Bidegree, q: u32, u: LatticePoint, v: LatticePoint) -> Result<bool> {
    let mu = monomial_at(bideg, u)?;
    let mv = monomial_at(bideg, v)?;
    let step = q as i64 - 1;
    Ok(mu.as_array().iter().zip(mv.as_array()).all(|(&a, b)| {
        let (a, b) = (a as i64, b as i64);
        (a - b) % step == 0 && ((a == 0) == (b == 0))
    }))
}

/// Hypothesis (H): `eta >= 2`, `dT < 0`, `eta | dT` and `q <= dX + dT/eta`.
pub fn hypothesis_h(bideg: &Bidegree, q: u32) -> bool {
    let eta = bideg.eta as i64;
    eta >= 2 && bideg.dt < 0 && bideg.dt % eta == 0 && (q as i64) <= bideg.dx + bideg.dt / eta
}

/// The representative sets `K` and `K*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representatives {
    pub k: Vec<LatticePoint>,
    pub k_star: Vec<LatticePoint>,
}

/// Abscissae used by `K`: `[0, min(floor(A), q-1)]` together with `A` when integral.
pub fn representative_columns(bideg: &Bidegree, q: u32) -> Vec<i64> {
    let floor_a = a_value(bideg).floor().to_integer();
    let mut cols: Vec<i64> = (0..=floor_a.min(q as i64 - 1)).collect();
    if let Some(a) = a_integer(bideg) {
        if a > *cols.last().unwrap_or(&-1) {
            cols.push(a);
        }
    }
    cols
}

pub fn representatives(bideg: &Bidegree, q: u32) -> Result<Representatives> {
    bideg.validate()?;
    let q = q as i64;
    let mut k = Vec::new();
    for alpha in representative_columns(bideg, q as u32) {
        let top = column_top(bideg, alpha);
        k.extend((0..top.min(q)).map(|b| LatticePoint::new(alpha, b)));
        k.push(LatticePoint::new(alpha, top));
    }
    let mut k_star = k.clone();
    if hypothesis_h(bideg, q as u32) {
        let corner = LatticePoint::new(bideg.delta() / bideg.eta as i64, 0);
        k_star.retain(|&u| u != corner);
    }
    Ok(Representatives { k, k_star })
}

/// Representative of `x` modulo `q - 1` in `[1, q - 1]`.
fn positive_residue(x: i64, q: i64) -> i64 {
    (x - 1).mod_floor(&(q - 1)) + 1
}

/// The reduction map onto `K`.
pub fn reduce(bideg: &Bidegree, q: u32, u: LatticePoint) -> Result<LatticePoint> {
    ensure_contains(bideg, u)?;
    let q = q as i64;
    let d2 = if u.d2 == 0 || Some(u.d2) == a_integer(bideg) {
        u.d2
    } else {
        positive_residue(u.d2, q)
    };
    let c2 = if u.c2 == 0 {
        0
    } else if u.c2 == column_top(bideg, u.d2) {
        column_top(bideg, d2)
    } else {
        positive_residue(u.c2, q)
    };
    Ok(LatticePoint::new(d2, c2))
}

/// Auxiliary quantities of the dimension formula for `eta >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTerms {
    /// `min(floor(A), q - 1)`
    pub m: i64,
    /// `(delta - q) / eta`
    pub s: Ratio<i64>,
    pub s_tilde: i64,
    pub h: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonSummary {
    pub a: Ratio<i64>,
    pub floor_a: i64,
    pub hypothesis_h: bool,
    /// Present for `eta >= 2`; `eta = 0` uses the rectangle formula instead.
    pub terms: Option<DimensionTerms>,
}

pub fn polygon_summary(bideg: &Bidegree, q: u32) -> Result<PolygonSummary> {
    bideg.validate()?;
    if bideg.eta == 1 {
        return Err(Error::EtaOneUnsupported);
    }
    let a = a_value(bideg);
    let floor_a = a.floor().to_integer();
    let terms = (bideg.eta >= 2).then(|| {
        let qi = q as i64;
        let m = floor_a.min(qi - 1);
        let s = Ratio::new(bideg.delta() - qi, bideg.eta as i64);
        let s_tilde = if s < Ratio::from_integer(0) {
            -1
        } else if s > Ratio::from_integer(m) {
            m
        } else {
            s.floor().to_integer()
        };
        let h = if bideg.dt >= 0 && qi <= bideg.dx {
            bideg.dt.min(qi) + 1
        } else {
            0
        };
        DimensionTerms { m, s, s_tilde, h }
    });
    Ok(PolygonSummary {
        a,
        floor_a,
        hypothesis_h: hypothesis_h(bideg, q),
        terms,
    })
}
