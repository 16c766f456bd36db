//! Evaluation codes `C_eta(dT, dX)`: generator matrices, parameters,
//! minimum-weight witnesses, punctured codes and curve point bounds.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{self, DistanceBoundReport};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::lattice;
use crate::linalg::Matrix;
use crate::search;
use crate::surface::{monomial_at, monomial_basis, rational_points, Bidegree, CoxPolynomial, ExponentVector, SurfacePoint, Variable};

/// Default cap on the number of codewords enumerated by exhaustive search.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Which coordinates of the full code have been deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Puncturing {
    None,
    /// Points with `x1 = 0` removed.
    Fiber,
    /// Points with a zero coordinate removed.
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeMeta {
    pub bidegree: Bidegree,
    pub puncturing: Puncturing,
}

/// A code given by the evaluation of the representative monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    generator: Matrix,
    points: Vec<SurfacePoint>,
    monomials: Vec<ExponentVector>,
    meta: CodeMeta,
}

impl LinearCode {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Rows are the evaluation vectors of [`LinearCode::monomials`].
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Column labels, in canonical order.
    pub fn points(&self) -> &[SurfacePoint] {
        &self.points
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    pub fn meta(&self) -> CodeMeta {
        self.meta
    }

    pub fn bidegree(&self) -> Bidegree {
        self.meta.bidegree
    }

    pub fn length(&self) -> usize {
        self.points.len()
    }

    pub fn rank(&self) -> usize {
        self.generator.rank()
    }

    /// Number of columns where `poly` does not vanish.
    pub fn weight_of(&self, poly: &CoxPolynomial) -> Result<usize> {
        self.field.ensure_same(poly.field().spec())?;
        Ok(poly.weight(&self.points))
    }

    /// Generator matrix in the `hirzecode v1` text format.
    pub fn export_v1(&self) -> String {
        let b = self.meta.bidegree;
        let mut out = format!(
            "hirzecode v1 eta={} dT={} dX={} q={} n={} k={}\n",
            b.eta,
            b.dt,
            b.dx,
            self.field.order(),
            self.length(),
            self.generator.rows()
        );
        for r in 0..self.generator.rows() {
            let row: Vec<String> = self.generator.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", row.join(" ")).expect("writing to a String");
        }
        out
    }

    fn with_columns(&self, keep: impl Fn(&SurfacePoint) -> bool, puncturing: Puncturing) -> LinearCode {
        let generator = self.generator.select_columns(|c| keep(&self.points[c]));
        LinearCode {
            field: self.field.clone(),
            generator,
            points: self.points.iter().filter(|p| keep(p)).copied().collect(),
            monomials: self.monomials.clone(),
            meta: CodeMeta {
                puncturing,
                ..self.meta
            },
        }
    }
}

/// Matrix whose rows are the evaluations of `monomials` at `points`.
pub fn evaluation_matrix(field: &Field, monomials: &[ExponentVector], points: &[SurfacePoint]) -> Matrix {
    let rows: Vec<Vec<FieldElement>> = monomials
        .par_iter()
        .map(|m| points.iter().map(|p| m.evaluate(field, p)).collect())
        .collect();
    Matrix::from_rows(field, points.len(), rows)
}

/// The code `C_eta(dT, dX)` over `field`, with one row per representative in `K*`.
pub fn build_code(field: &Field, bideg: &Bidegree) -> Result<LinearCode> {
    let reps = lattice::representatives(bideg, field.order())?;
    let monomials: Vec<ExponentVector> = reps.k_star.iter().map(|&u| monomial_at(bideg, u)).collect::<Result<_>>()?;
    let points = rational_points(field);
    Ok(LinearCode {
        field: field.clone(),
        generator: evaluation_matrix(field, &monomials, &points),
        points,
        monomials,
        meta: CodeMeta {
            bidegree: *bideg,
            puncturing: Puncturing::None,
        },
    })
}

/// Closed-form dimension.
pub fn dimension_closed_form(bideg: &Bidegree, q: u32) -> Result<u64> {
    let summary = lattice::polygon_summary(bideg, q)?;
    let qi = q as i64;
    let k = match summary.terms {
        None => (bideg.dt.min(qi) + 1) * (bideg.dx.min(qi) + 1),
        Some(t) => {
            let eta = bideg.eta as i64;
            let delta = bideg.delta();
            // (m - s~)(delta + 1 - eta (m + s~ + 1)/2), kept in integers.
            let trapezoid = (t.m - t.s_tilde) * (2 * (delta + 1) - eta * (t.m + t.s_tilde + 1)) / 2;
            (qi + 1) * (t.s_tilde + 1) + trapezoid + t.h
        }
    };
    Ok(k as u64)
}

/// Rank of the evaluation matrix of every monomial of the bidegree at the
/// code's columns.
pub fn dimension_oracle(code: &LinearCode) -> usize {
    let all = monomial_basis(&code.bidegree()).expect("a built code has a valid bidegree");
    evaluation_matrix(&code.field, &all, &code.points).rank()
}

/// The regime of the closed-form minimum distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistanceCase {
    /// `eta = 0`.
    Product,
    /// `eta >= 2` and `q > delta`.
    SmallDegree,
    /// `eta >= 2` and `max(delta/(eta+1), dT) < q <= delta`.
    Intermediate,
    /// `eta >= 2` and `q <= max(delta/(eta+1), dT)`.
    LargeDegree,
}

pub fn distance_case(bideg: &Bidegree, q: u32) -> Result<DistanceCase> {
    bideg.validate()?;
    let q = q as i64;
    let eta = bideg.eta as i64;
    let delta = bideg.delta();
    Ok(match bideg.eta {
        0 => DistanceCase::Product,
        1 => return Err(Error::EtaOneUnsupported),
        _ if q > delta => DistanceCase::SmallDegree,
        // delta/(eta+1) < q without leaving the integers.
        _ if delta < q * (eta + 1) && bideg.dt < q => DistanceCase::Intermediate,
        _ => DistanceCase::LargeDegree,
    })
}

/// Closed-form minimum distance.
pub fn distance_closed_form(bideg: &Bidegree, q: u32) -> Result<u64> {
    let case = distance_case(bideg, q)?;
    let q = q as i64;
    let (dt, dx, delta) = (bideg.dt, bideg.dx, bideg.delta());
    let d = match case {
        DistanceCase::Product => (q - dx + 1).max(1) * (q - dt + 1).max(1),
        DistanceCase::SmallDegree => (q + i64::from(dx == 0)) * (q - delta + 1),
        DistanceCase::Intermediate => q - (delta - q).div_euclid(bideg.eta as i64),
        DistanceCase::LargeDegree if dt >= 0 => (q - dx + 1).max(1),
        DistanceCase::LargeDegree => 1,
    };
    Ok(d as u64)
}

/// A polynomial of the bidegree whose codeword has minimum weight.
pub fn witness_polynomial(field: &Field, bideg: &Bidegree) -> Result<CoxPolynomial> {
    let case = distance_case(bideg, field.order())?;
    let eta = bideg.eta;
    let q = field.order() as i64;
    let (dt, dx, delta) = (bideg.dt, bideg.dx, bideg.delta());
    let var = |v| CoxPolynomial::variable(field, eta, v);
    let (t1, t2, x1, x2) = (var(Variable::T1), var(Variable::T2), var(Variable::X1), var(Variable::X2));
    let xi: Vec<FieldElement> = field.elements().collect();
    let pow = |p: &CoxPolynomial, e: i64| p.pow(u32::try_from(e).expect("witness exponents are non-negative"));
    let product = |factors: Vec<Result<CoxPolynomial>>| -> Result<CoxPolynomial> {
        factors.into_iter().try_fold(CoxPolynomial::constant(field, eta, field.one()), |acc, f| acc.mul(&f?))
    };
    // T2 - xi T1
    let t_line = |c: FieldElement| t2.sub(&t1.scale(c));
    // X2 - xi X1 T2^eta, which vanishes on the fibre T1 = 0 only where x2 = xi.
    let x_line = |c: FieldElement| -> Result<CoxPolynomial> { x2.sub(&x1.mul(&pow(&t2, eta as i64)?)?.scale(c)) };
    // T2^q - T2 T1^(q-1), zero exactly on T1 = 0.
    let frob = || -> Result<CoxPolynomial> { pow(&t2, q)?.sub(&t2.mul(&pow(&t1, q - 1)?)?) };

    let f = match case {
        DistanceCase::Product => {
            let (m_t, m_x) = (dt.min(q), dx.min(q));
            let xs = product(xi[..m_x as usize].iter().map(|&c| x_line(c)).collect())?;
            let ts = product(xi[..m_t as usize].iter().map(|&c| t_line(c)).collect())?;
            pow(&x2, dx - m_x)?.mul(&pow(&t2, dt - m_t)?)?.mul(&xs)?.mul(&ts)?
        }
        DistanceCase::SmallDegree => {
            let ts = product(xi[..delta as usize].iter().map(|&c| t_line(c)).collect())?;
            pow(&x1, dx)?.mul(&ts)?
        }
        DistanceCase::Intermediate => {
            let s = (delta - q).div_euclid(eta as i64);
            let xs = product(xi[..s as usize].iter().map(|&c| x_line(c)).collect())?;
            pow(&t2, delta - eta as i64 * s - q)?
                .mul(&frob()?)?
                .mul(&pow(&x1, dx - s)?)?
                .mul(&xs)?
        }
        DistanceCase::LargeDegree if dx < q => {
            let xs = product(xi[..dx as usize].iter().map(|&c| x_line(c)).collect())?;
            pow(&t2, dt - q)?.mul(&frob()?)?.mul(&xs)?
        }
        DistanceCase::LargeDegree if dt >= q => {
            let xs = product(xi.iter().map(|&c| x_line(c)).collect())?;
            pow(&x2, dx - q)?.mul(&pow(&t2, dt - q)?)?.mul(&frob()?)?.mul(&xs)?
        }
        DistanceCase::LargeDegree => {
            // Nonzero only at (0,1,1,0).
            let e = dx - q + 1;
            let g = dt - q + eta as i64 * e;
            let xs = product(xi[1..].iter().map(|&c| x_line(c)).collect())?;
            pow(&x1, e)?.mul(&pow(&t2, g)?)?.mul(&frob()?)?.mul(&xs)?
        }
    };
    debug_assert_eq!(f.bidegree(), *bideg);
    Ok(f)
}

/// How a minimum distance was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistanceSource {
    ClosedForm,
    Exhaustive,
    WitnessPlusBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParameters {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub d_source: DistanceSource,
}

/// `[N, k, d]` from the closed forms alone.
pub fn closed_form_parameters(bideg: &Bidegree, q: u32) -> Result<CodeParameters> {
    Ok(CodeParameters {
        n: (q as u64 + 1).pow(2),
        k: dimension_closed_form(bideg, q)?,
        d: distance_closed_form(bideg, q)?,
        d_source: DistanceSource::ClosedForm,
    })
}

/// Exhaustive minimum distance of any code, or `None` if `q^k - 1 > budget`.
pub fn exhaustive_distance(code: &LinearCode, budget: u64) -> Option<usize> {
    search::exhaustive_min_weight(&code.generator.rref(), budget)
}

/// Everything known about the minimum distance of an unpunctured code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceEvidence {
    pub closed_form: Option<u64>,
    pub bound: Option<DistanceBoundReport>,
    pub witness_weight: Option<u64>,
    pub exhaustive: Option<u64>,
}

impl DistanceEvidence {
    /// Whether every available value agrees with every other.
    pub fn consistent(&self) -> bool {
        let values: Vec<u64> = [
            self.closed_form,
            self.bound.as_ref().map(|b| b.bound),
            self.bound.as_ref().map(|b| b.f_minimum),
            self.witness_weight,
            self.exhaustive,
        ]
        .into_iter()
        .flatten()
        .collect();
        values.windows(2).all(|w| w[0] == w[1])
    }
}

/// Collects closed form, lower bound, witness weight and (if affordable) the
/// exhaustive minimum weight for `code`. Closed-form pieces are skipped for
/// `eta = 1`.
pub fn distance_evidence(code: &LinearCode, budget: u64) -> Result<DistanceEvidence> {
    let bideg = code.bidegree();
    let q = code.field.order();
    let exhaustive = exhaustive_distance(code, budget).map(|d| d as u64);
    if bideg.eta == 1 {
        return Ok(DistanceEvidence {
            closed_form: None,
            bound: None,
            witness_weight: None,
            exhaustive,
        });
    }
    let witness = witness_polynomial(&code.field, &bideg)?;
    Ok(DistanceEvidence {
        closed_form: Some(distance_closed_form(&bideg, q)?),
        bound: Some(algebra::distance_bound(&bideg, q)?),
        witness_weight: Some(code.weight_of(&witness)? as u64),
        exhaustive,
    })
}

/// Certified `[N, k, d]` of `C_eta(dT, dX)`: exhaustive search when
/// `q^k - 1 <= budget`, otherwise a witness whose weight meets the lower bound.
pub fn min_distance(field: &Field, bideg: &Bidegree, budget: u64) -> Result<CodeParameters> {
    let code = build_code(field, bideg)?;
    let n = code.length() as u64;
    let k = code.rank() as u64;
    if let Some(d) = exhaustive_distance(&code, budget) {
        return Ok(CodeParameters {
            n,
            k,
            d: d as u64,
            d_source: DistanceSource::Exhaustive,
        });
    }
    if bideg.eta == 1 {
        return Err(Error::EtaOneUnsupported);
    }
    let w = code.weight_of(&witness_polynomial(field, bideg)?)? as u64;
    let bound = algebra::distance_bound(bideg, field.order())?.bound;
    if w != bound {
        return Err(Error::BudgetExceededWithoutWitnessMatch);
    }
    Ok(CodeParameters {
        n,
        k,
        d: w,
        d_source: DistanceSource::WitnessPlusBound,
    })
}

/// Deletes the `q + 1` coordinates on `x1 = 0`.
///
/// Requires an unpunctured code with `dT < 0` and `dX > 0`, where every
/// monomial is divisible by `X1`.
pub fn puncture_fiber(code: &LinearCode) -> Result<LinearCode> {
    let b = code.bidegree();
    if code.meta.puncturing != Puncturing::None {
        return Err(Error::PrecedingConditionsViolated("the code is already punctured"));
    }
    if b.dt >= 0 || b.dx <= 0 {
        return Err(Error::PrecedingConditionsViolated("fibre puncturing needs dT < 0 and dX > 0"));
    }
    Ok(code.with_columns(|p| !p.on_x1_zero(), Puncturing::Fiber))
}

/// Deletes the `4q` coordinates that have a zero entry, keeping the torus.
pub fn puncture_torus(code: &LinearCode) -> Result<LinearCode> {
    let b = code.bidegree();
    if code.meta.puncturing != Puncturing::None {
        return Err(Error::PrecedingConditionsViolated("the code is already punctured"));
    }
    if b.dt <= 0 || b.dx <= 0 {
        return Err(Error::PrecedingConditionsViolated("torus puncturing needs dT > 0 and dX > 0"));
    }
    Ok(code.with_columns(|p| !p.off_torus(), Puncturing::Torus))
}

/// Upper bound on the rational points of a non-filling curve of the given class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveBound {
    pub value: u64,
    pub case: DistanceCase,
}

pub fn curve_point_bound(bideg: &Bidegree, q: u32) -> Result<CurveBound> {
    let case = distance_case(bideg, q)?;
    let qi = q as i64;
    let (dt, dx, delta) = (bideg.dt, bideg.dx, bideg.delta());
    let value = match case {
        DistanceCase::Product => (qi + 1).pow(2) - distance_closed_form(bideg, q)? as i64,
        DistanceCase::SmallDegree if dx == 0 && dt >= 0 => (qi + 1) * dt,
        DistanceCase::SmallDegree => qi * (delta + 1) + 1,
        DistanceCase::Intermediate => qi * qi + qi + 1 + (delta - qi).div_euclid(bideg.eta as i64),
        DistanceCase::LargeDegree if qi >= dx => qi * qi + qi + dx,
        DistanceCase::LargeDegree => return Err(Error::CaseOutOfRange("q < dX in the large-degree case")),
    };
    Ok(CurveBound {
        value: value as u64,
        case,
    })
}
