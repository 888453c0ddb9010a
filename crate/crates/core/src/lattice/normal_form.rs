//! Hermite and Smith normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

type Row = Vec<BigInt>;

/// Brings `rows` into row echelon form using unimodular row operations on the
/// first `width` columns, applying the same operations to the remaining columns.
/// Returns the pivot columns in order.
fn echelon(rows: &mut [Row], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == rows.len() {
            break;
        }
        loop {
            // smallest nonzero entry in this column at or below `top`
            let best = (top..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[top][col]);
                let pivot_row = rows[top].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            pivots.push(col);
            top += 1;
        }
    }
    pivots
}

/// Row Hermite normal form of the lattice spanned by `rows`. Zero rows are
/// dropped, pivots are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Row]) -> Vec<Row> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut m: Vec<Row> = rows.to_vec();
    let pivots = echelon(&mut m, width);
    m.truncate(pivots.len());
    for (i, &col) in pivots.iter().enumerate() {
        if m[i][col].is_negative() {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
        for k in 0..i {
            let q = m[k][col].div_floor(&m[i][col]);
            if q.is_zero() {
                continue;
            }
            let pivot_row = m[i].clone();
            for (x, p) in m[k].iter_mut().zip(&pivot_row) {
                *x -= &q * p;
            }
        }
    }
    m
}

/// Basis of `{x in Z^n : A x = 0}` for the matrix `a` (rows of length `n`).
///
/// Obtained from a unimodular reduction of `[A^T | I]`, so the result spans a
/// saturated sublattice.
pub fn integer_kernel(a: &[Row], n: usize) -> Vec<Row> {
    let m = a.len();
    let mut aug: Vec<Row> = (0..n)
        .map(|j| {
            let mut row: Row = a.iter().map(|r| r[j].clone()).collect();
            row.extend((0..n).map(|k| if k == j { BigInt::from(1) } else { BigInt::zero() }));
            row
        })
        .collect();
    let pivots = echelon(&mut aug, m);
    aug.into_iter()
        .skip(pivots.len())
        .map(|row| row[m..].to_vec())
        .collect()
}

/// Elementary divisors (the nonzero diagonal of the Smith normal form).
pub fn elementary_divisors(matrix: &[Row]) -> Vec<BigInt> {
    let mut m: Vec<Row> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t].div_floor(&m[t][t]);
            if q.is_zero() && m[i][t].is_zero() {
                continue;
            }
            let pivot_row = m[t].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                *x -= &q * p;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = m[t][j].div_floor(&m[t][t]);
            if q.is_zero() && m[t][j].is_zero() {
                continue;
            }
            for row in m.iter_mut() {
                let p = row[t].clone();
                row[j] -= &q * p;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the remaining block
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
        if let Some((i, _)) = offender {
            let other = m[i].clone();
            for (x, o) in m[t].iter_mut().zip(&other) {
                *x += o;
            }
            continue;
        }
        divisors.push(m[t][t].abs());
        t += 1;
    }
    divisors
}

/// Solves `sum_j x_j columns[j] = target` for an integer vector `x`, when the
/// columns are linearly independent. Returns `None` when there is no rational
/// solution or the solution is not integral.
pub fn solve_integral(columns: &[Row], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = columns.len();
    let n = target.len();
    if columns.iter().any(|c| c.len() != n) {
        return None;
    }
    // augmented system rows: [c_0[i] ... c_{k-1}[i] | target[i]]
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = columns
                .iter()
                .map(|c| BigRational::from_integer(c[i].clone()))
                .collect();
            row.push(BigRational::from_integer(target[i].clone()));
            row
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(k);
    let mut r = 0;
    for c in 0..k {
        let p = (r..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        let lead = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivot_rows.push(r);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    pivot_rows
        .iter()
        .map(|&i| {
            let v = &a[i][k];
            v.is_integer().then(|| v.to_integer())
        })
        .collect()
}
