//! Exhaustive minimum-weight search over all nonzero codewords.
//!
//! Codewords are enumerated projectively: the highest nonzero message
//! coordinate is fixed to 1 and the lower coordinates run over a modular
//! p-ary Gray code on their coefficient vectors over the prime field.
//! Consecutive messages differ by `x^l` in a single coordinate `j`, so each
//! step adds one precomputed multiple `x^l * row_j` to the running codeword.

use rayon::prelude::*;

use crate::gf::Field;
use crate::linalg::Matrix;

/// Inner Gray-code blocks hold at most this many messages.
const BLOCK: u64 = 1 << 12;

/// Number of nonzero codewords `q^k - 1`, or `None` on overflow.
pub fn nonzero_codewords(q: u32, k: usize) -> Option<u64> {
    (q as u64).checked_pow(k as u32).map(|n| n - 1)
}

/// Minimum weight of a nonzero codeword spanned by the rows of `generator`,
/// which must be linearly independent.
///
/// Returns `None` when there are no rows or when `q^k - 1` exceeds `budget`.
pub fn exhaustive_min_weight(generator: &Matrix, budget: u64) -> Option<usize> {
    let k = generator.rows();
    let field = generator.field();
    let q = field.order() as u64;
    match nonzero_codewords(field.order(), k) {
        Some(total) if k > 0 && total <= budget => {}
        _ => return None,
    }
    let mut low_max = 0;
    while q.pow(low_max + 1) <= BLOCK {
        low_max += 1;
    }
    // scaled[j][l] = x^l * row_j, where x^l is the element of index p^l.
    let p = field.characteristic();
    let degree = field.spec().m();
    let scaled: Vec<Vec<Vec<u8>>> = (0..k)
        .map(|j| {
            (0..degree)
                .map(|l| {
                    let c = field.element(p.pow(l)).expect("p^l < q");
                    let mul = field.mul_row(c);
                    generator.row(j).iter().map(|&y| mul[y as usize]).collect()
                })
                .collect()
        })
        .collect();
    let tasks: Vec<(usize, u64)> = (0..k)
        .flat_map(|t| {
            let high = t.saturating_sub(low_max as usize);
            (0..q.pow(high as u32)).map(move |h| (t, h))
        })
        .collect();
    tasks
        .into_par_iter()
        .map(|(t, h)| block_min(generator, &scaled, t, h, low_max as usize))
        .min()
}

/// Minimum weight over messages whose top nonzero coordinate is `t` (equal
/// to 1), whose coordinates above the Gray block are the base-q digits of
/// `high`, and whose low coordinates range over everything.
fn block_min(g: &Matrix, scaled: &[Vec<Vec<u8>>], t: usize, high: u64, low_max: usize) -> usize {
    let field = g.field();
    let q = field.order() as u64;
    let p = field.characteristic() as u64;
    let degree = field.spec().m() as usize;
    let low = t.min(low_max);
    let mut cw: Vec<u8> = g.row(t).to_vec();
    let mut h = high;
    for j in low..t {
        let c = field.element((h % q) as u32).expect("digit below q");
        h /= q;
        if !c.is_zero() {
            let mul = field.mul_row(c);
            add_into(field, &mut cw, g.row(j).iter().map(|&y| mul[y as usize]));
        }
    }
    let mut best = weight(&cw);
    for i in 1..p.pow((low * degree) as u32) {
        let mut digit = 0;
        let mut x = i;
        while x % p == 0 {
            x /= p;
            digit += 1;
        }
        add_into(field, &mut cw, scaled[digit / degree][digit % degree].iter().copied());
        best = best.min(weight(&cw));
    }
    best
}

#[inline]
fn add_into(field: &Field, cw: &mut [u8], row: impl Iterator<Item = u8>) {
    if field.characteristic() == 2 {
        for (x, y) in cw.iter_mut().zip(row) {
            *x ^= y;
        }
    } else {
        let q = field.order() as usize;
        let table = field.add_table();
        for (x, y) in cw.iter_mut().zip(row) {
            *x = table[*x as usize * q + y as usize];
        }
    }
}

#[inline]
fn weight(cw: &[u8]) -> usize {
    cw.iter().filter(|&&x| x != 0).count()
}
