//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or exceeds its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hirzecode::code::evaluation_matrix;
use hirzecode::search::nonzero_codewords;
use hirzecode::{
    build_code, dimension_closed_form, dimension_oracle, distance_bound, distance_closed_form, equivalent, exhaustive_distance, hypothesis_h,
    monomial_basis, polygon_points, puncture_fiber, puncture_torus, rational_points, representatives, special_kernel_element, witness_polynomial,
    Bidegree, Field, DEFAULT_BUDGET,
};
use rayon::prelude::*;

type Check = fn() -> Result<String, String>;

fn field(q: u32) -> Field {
    Field::with_order(q as u64).expect("prime power")
}

/// eta in {0,2,3}, dX in 0..=4, dT in [-eta*dX, 6], for the given orders.
fn sweep(qs: &[u32]) -> Vec<(Bidegree, u32)> {
    let mut out = Vec::new();
    for eta in [0u32, 2, 3] {
        for &q in qs {
            for dx in 0..=4i64 {
                for dt in -(eta as i64) * dx..=6 {
                    out.push((Bidegree::new(eta, dt, dx), q));
                }
            }
        }
    }
    out
}

const SWEEP_Q: [u32; 5] = [2, 3, 4, 5, 7];

fn first_failure(failures: Vec<String>, total: usize, what: &str) -> Result<String, String> {
    match failures.first() {
        None => Ok(format!("{total} {what}")),
        Some(f) => Err(format!("{} of {total} {what} failed, first: {f}", failures.len())),
    }
}

fn dimension_regression() -> Result<String, String> {
    let cases = [
        ((-2, 5), 11, 25),
        ((-2, 5), 7, 24),
        ((-2, 5), 4, 18),
        ((-2, 5), 2, 6),
        ((1, 3), 3, 14),
        ((1, 3), 2, 8),
        ((5, 3), 13, 36),
        ((5, 3), 7, 30),
        ((5, 3), 4, 20),
    ];
    let mut failures = Vec::new();
    for ((dt, dx), q, k) in cases {
        let bd = Bidegree::new(2, dt, dx);
        let formula = dimension_closed_form(&bd, q).map_err(|e| e.to_string())?;
        let oracle = dimension_oracle(&build_code(&field(q), &bd).map_err(|e| e.to_string())?) as u64;
        if formula != k || oracle != k {
            failures.push(format!("{bd} q={q}: formula {formula}, rank {oracle}, expected {k}"));
        }
    }
    first_failure(failures, cases.len(), "dimensions")
}

fn dimension_sweep() -> Result<String, String> {
    let instances = sweep(&SWEEP_Q);
    let failures: Vec<String> = instances
        .par_iter()
        .filter_map(|&(bd, q)| {
            let formula = dimension_closed_form(&bd, q).ok()?;
            let oracle = dimension_oracle(&build_code(&field(q), &bd).ok()?) as u64;
            (formula != oracle).then(|| format!("{bd} q={q}: formula {formula}, rank {oracle}"))
        })
        .collect();
    first_failure(failures, instances.len(), "instances")
}

fn equivalence_oracle() -> Result<String, String> {
    let instances = sweep(&[2, 3, 4]);
    let results: Vec<(usize, Vec<String>)> = instances
        .par_iter()
        .map(|&(bd, q)| {
            let f = field(q);
            let pts = rational_points(&f);
            let lattice = polygon_points(&bd).expect("sweep bidegrees are valid");
            let vectors: Vec<Vec<usize>> = monomial_basis(&bd)
                .expect("valid")
                .iter()
                .map(|m| pts.iter().map(|p| m.evaluate(&f, p).index()).collect())
                .collect();
            let mut failures = Vec::new();
            for i in 0..lattice.len() {
                for j in 0..lattice.len() {
                    let criterion = equivalent(&bd, q, lattice[i], lattice[j]).expect("points lie in the polygon");
                    if criterion != (vectors[i] == vectors[j]) {
                        failures.push(format!("{bd} q={q}: {} vs {}", lattice[i], lattice[j]));
                    }
                }
            }
            (lattice.len() * lattice.len(), failures)
        })
        .collect();
    let pairs: usize = results.iter().map(|r| r.0).sum();
    first_failure(results.into_iter().flat_map(|r| r.1).collect(), pairs, "monomial pairs")
}

fn distance_certification() -> Result<String, String> {
    let instances = sweep(&SWEEP_Q);
    let results: Vec<(bool, Option<String>)> = instances
        .par_iter()
        .map(|&(bd, q)| {
            let f = field(q);
            let code = build_code(&f, &bd).expect("valid");
            let closed = distance_closed_form(&bd, q).expect("eta != 1");
            let witness = code.weight_of(&witness_polynomial(&f, &bd).expect("eta != 1")).expect("same field") as u64;
            let report = distance_bound(&bd, q).expect("valid");
            let k = code.rank();
            let exhaustive = match nonzero_codewords(q, k) {
                Some(n) if n <= DEFAULT_BUDGET => exhaustive_distance(&code, DEFAULT_BUDGET).map(|d| d as u64),
                _ => None,
            };
            let ok = witness == closed && report.bound == closed && report.f_minimum == closed && exhaustive.is_none_or(|d| d == closed);
            let msg = (!ok).then(|| {
                format!(
                    "{bd} q={q}: closed {closed}, witness {witness}, bound {}, f {}, exhaustive {exhaustive:?}",
                    report.bound, report.f_minimum
                )
            });
            (exhaustive.is_some(), msg)
        })
        .collect();
    let searched = results.iter().filter(|r| r.0).count();
    let failures: Vec<String> = results.into_iter().filter_map(|r| r.1).collect();
    first_failure(failures, instances.len(), "instances").map(|s| format!("{s}, {searched} also exhaustively searched"))
}

fn punctured_table() -> Result<String, String> {
    let table = [((-1, 1), (12, 2, 9)), ((-1, 3), (12, 10, 2)), ((-2, 2), (12, 4, 6)), ((-2, 3), (12, 8, 3))];
    let f3 = field(3);
    let mut failures = Vec::new();
    for ((dt, dx), expected) in table {
        let bd = Bidegree::new(2, dt, dx);
        let punctured = puncture_fiber(&build_code(&f3, &bd).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let got = (
            punctured.length(),
            punctured.rank(),
            exhaustive_distance(&punctured, u64::MAX).unwrap_or(0),
        );
        if got != expected {
            failures.push(format!("{bd}: got {got:?}, expected {expected:?}"));
        }
    }
    first_failure(failures, table.len(), "codes")
}

const FIBER_INSTANCES: [(u32, i64, i64, u32); 20] = [
    (1, -1, 1, 2),
    (1, -1, 2, 2),
    (1, -2, 3, 2),
    (1, -2, 2, 3),
    (1, -1, 3, 3),
    (1, -1, 1, 4),
    (2, -1, 1, 3),
    (2, -1, 3, 3),
    (2, -2, 2, 3),
    (2, -2, 3, 3),
    (2, -1, 2, 2),
    (2, -3, 2, 4),
    (2, -4, 3, 2),
    (2, -1, 1, 4),
    (3, -1, 1, 2),
    (3, -2, 1, 3),
    (3, -3, 2, 3),
    (3, -1, 2, 4),
    (3, -5, 2, 2),
    (3, -4, 3, 2),
];

fn fiber_puncture() -> Result<String, String> {
    let failures: Vec<String> = FIBER_INSTANCES
        .par_iter()
        .filter_map(|&(eta, dt, dx, q)| {
            let bd = Bidegree::new(eta, dt, dx);
            let code = match build_code(&field(q), &bd) {
                Ok(c) => c,
                Err(e) => return Some(format!("{bd} q={q}: {e}")),
            };
            let punctured = puncture_fiber(&code).expect("dT < 0 < dX");
            let full = (code.rank(), exhaustive_distance(&code, DEFAULT_BUDGET));
            let cut = (punctured.rank(), exhaustive_distance(&punctured, DEFAULT_BUDGET));
            let len_ok = punctured.length() == (q * (q + 1)) as usize;
            (!(len_ok && full == cut && full.1.is_some()))
                .then(|| format!("{bd} q={q}: n {} (k, d) {full:?} -> {cut:?}", punctured.length()))
        })
        .collect();
    first_failure(failures, FIBER_INSTANCES.len(), "instances")
}

fn kernel_vanishing() -> Result<String, String> {
    let instances: Vec<_> = sweep(&SWEEP_Q).into_iter().filter(|(bd, q)| hypothesis_h(bd, *q)).collect();
    if instances.is_empty() {
        return Err("no sweep instance satisfies (H)".into());
    }
    let failures: Vec<String> = instances
        .iter()
        .filter_map(|&(bd, q)| {
            let f = field(q);
            let f0 = special_kernel_element(&f, &bd).expect("(H) holds");
            let nonzero = rational_points(&f).iter().filter(|p| !f0.evaluate(p).is_zero()).count();
            (nonzero > 0).then(|| format!("{bd} q={q}: nonzero at {nonzero} points"))
        })
        .collect();
    first_failure(failures, instances.len(), "instances with (H)")
}

fn surjectivity() -> Result<String, String> {
    let mut failures = Vec::new();
    let mut total = 0;
    for q in [2u32, 3] {
        let full = ((q + 1) * (q + 1)) as usize;
        for eta in 0..=3u32 {
            for dt in q as i64..=q as i64 + 2 {
                for dx in q as i64..=q as i64 + 2 {
                    total += 1;
                    let bd = Bidegree::new(eta, dt, dx);
                    let code = build_code(&field(q), &bd).map_err(|e| e.to_string())?;
                    let k = code.rank();
                    let formula = (eta != 1).then(|| dimension_closed_form(&bd, q).map(|k| k as usize));
                    if k != full || formula.as_ref().is_some_and(|f| *f != Ok(full)) {
                        failures.push(format!("{bd} q={q}: rank {k}, formula {formula:?}"));
                    }
                }
            }
        }
    }
    first_failure(failures, total, "instances")
}

const TORUS_INSTANCES: [(u32, i64, i64, u32); 5] = [(2, 1, 1, 5), (2, 1, 1, 7), (3, 1, 1, 7), (2, 1, 1, 8), (2, 2, 1, 7)];

fn torus_comparison() -> Result<String, String> {
    let failures: Vec<String> = TORUS_INSTANCES
        .par_iter()
        .filter_map(|&(eta, dt, dx, q)| {
            let bd = Bidegree::new(eta, dt, dx);
            let code = build_code(&field(q), &bd).expect("valid");
            let torus = puncture_torus(&code).expect("dT, dX > 0");
            let (Some(d), Some(d_torus)) = (exhaustive_distance(&code, u64::MAX), exhaustive_distance(&torus, u64::MAX)) else {
                return Some(format!("{bd} q={q}: exhaustive search did not run"));
            };
            let (n, k) = (code.length(), code.rank());
            let got = (torus.length(), torus.rank(), d_torus);
            let delta = bd.delta() as usize;
            let q = q as usize;
            let expected = (n - 4 * q, k, d - (3 * q - delta - 1));
            (got != expected).then(|| format!("{bd} q={q}: got {got:?}, expected {expected:?}"))
        })
        .collect();
    first_failure(failures, TORUS_INSTANCES.len(), "instances")
}

fn linear_independence() -> Result<String, String> {
    let instances = sweep(&SWEEP_Q);
    let failures: Vec<String> = instances
        .par_iter()
        .filter_map(|&(bd, q)| {
            let f = field(q);
            let reps = representatives(&bd, q).ok()?.k_star;
            let monomials: Vec<_> = reps.iter().map(|&u| hirzecode::surface::monomial_at(&bd, u).expect("in polygon")).collect();
            let rank = evaluation_matrix(&f, &monomials, &rational_points(&f)).rank();
            (rank != reps.len()).then(|| format!("{bd} q={q}: rank {rank}, |K*| {}", reps.len()))
        })
        .collect();
    first_failure(failures, instances.len(), "instances")
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [(u32, &str, Option<Duration>, Check); 10] = [
        (1, "dimension regression", Some(secs(10)), dimension_regression),
        (2, "dimension oracle sweep", Some(secs(180)), dimension_sweep),
        (3, "equivalence criterion oracle", Some(secs(180)), equivalence_oracle),
        (4, "distance certification", Some(secs(300)), distance_certification),
        (5, "punctured code table over F_3", Some(secs(30)), punctured_table),
        (6, "fibre puncturing keeps k and d", None, fiber_puncture),
        (7, "kernel polynomial vanishes", None, kernel_vanishing),
        (8, "surjectivity for large bidegrees", None, surjectivity),
        (9, "torus puncturing comparison", None, torus_comparison),
        (10, "representative rows are independent", None, linear_independence),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; exceeded {:?}", limit.unwrap())),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2} {status} [{name}] {detail} ({:.2}s)", elapsed.as_secs_f64());
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
