//! Evaluation codes on minimal Hirzebruch surfaces over small finite fields.
//!
//! The crate builds the codes `C_eta(dT, dX)`, computes their parameters
//! `[N, k, d]` from closed formulas, and checks those formulas against
//! brute-force oracles: matrix rank, exhaustive minimum-weight search and
//! explicit minimum-weight codewords.

pub mod algebra;
pub mod code;
pub mod error;
pub mod gf;
pub mod lattice;
pub mod linalg;
pub mod search;
pub mod surface;

pub use algebra::{compare, distance_bound, divisibility_count, leading_monomial, project, project_poly, special_kernel_element, DistanceBoundReport};
pub use code::{
    build_code, closed_form_parameters, curve_point_bound, dimension_closed_form, dimension_oracle, distance_case, distance_closed_form,
    distance_evidence, exhaustive_distance, min_distance, puncture_fiber, puncture_torus, witness_polynomial, CodeMeta, CodeParameters, CurveBound,
    DistanceCase, DistanceEvidence, DistanceSource, LinearCode, Puncturing, DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement, FieldSpec};
pub use lattice::{equivalent, hypothesis_h, polygon_points, polygon_summary, reduce, representatives, LatticePoint, PolygonSummary, Representatives};
pub use linalg::Matrix;
pub use surface::{monomial_basis, monomial_from_lattice, rational_points, Bidegree, CoxPolynomial, ExponentVector, PointForm, SurfacePoint, Variable};
