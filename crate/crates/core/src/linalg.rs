//! Exact linear algebra over `Q(q, rho)`.
//!
//! Large systems are first screened at a rational sample point to pick a set
//! of rows that is independent there (hence independent generically); the
//! exact solve then runs on that subset and every original row is checked
//! symbolically against the result.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::ScalarFraction;

type Row = Vec<ScalarFraction>;

const SAMPLE_POINTS: [(i64, i64, i64, i64); 4] = [(37, 29, 53, 41), (-61, 17, 29, 71), (89, 47, -43, 13), (103, 7, 11, 97)];

fn sample(rows: &[Row]) -> Option<Vec<Vec<BigRational>>> {
    'points: for &(qn, qd, rn, rd) in &SAMPLE_POINTS {
        let q = BigRational::new(qn.into(), qd.into());
        let r = BigRational::new(rn.into(), rd.into());
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let mut vals = Vec::with_capacity(row.len());
            for x in row {
                match x.eval(&q, &r) {
                    Ok(v) => vals.push(v),
                    Err(_) => continue 'points,
                }
            }
            out.push(vals);
        }
        return Some(out);
    }
    None
}

/// Indices of a maximal set of rows independent at a sample point.
fn screen_rows(rows: &[Row]) -> Option<Vec<usize>> {
    let vals = sample(rows)?;
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in vals.into_iter().enumerate() {
        let mut v = row;
        for (p, b) in &basis {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = BigRational::one() / &v[p];
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x -= &f * y;
                    }
                }
            }
            basis.push((p, v));
            picked.push(idx);
        }
    }
    Some(picked)
}

fn complexity(x: &ScalarFraction) -> usize {
    x.numer().degree_q() + x.numer().degree_r() + x.denom().degree_q() + x.denom().degree_r()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut Vec<Row>) -> Vec<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| complexity(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("pivot is nonzero");
        let pivot_row: Row = m[r].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        m[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Exact rank.
pub fn rank(rows: &[Row]) -> usize {
    if let Some(picked) = screen_rows(rows) {
        let n = picked.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if n == ncols {
            return n;
        }
    }
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

fn dot(row: &[ScalarFraction], x: &[ScalarFraction]) -> ScalarFraction {
    let mut acc = ScalarFraction::zero();
    for (a, b) in row.iter().zip(x) {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

/// Solves `a x = b`, requiring a unique solution. Every row is checked.
pub fn solve_unique(a: &[Row], b: &[ScalarFraction]) -> Result<Vec<ScalarFraction>> {
    let ncols = a.first().map_or(0, Vec::len);
    let picked = screen_rows(a).unwrap_or_else(|| (0..a.len()).collect());
    let mut aug: Vec<Row> = picked
        .iter()
        .map(|&i| {
            let mut row = a[i].clone();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < ncols || pivots.contains(&ncols) {
        let r = rank(a);
        if r < ncols {
            return Err(Error::LinearSystem(format!("rank {r} below {ncols} unknowns")));
        }
        return Err(Error::LinearSystem("inconsistent".into()));
    }
    let x: Vec<ScalarFraction> = aug.iter().map(|row| row[ncols].clone()).collect();
    for (i, row) in a.iter().enumerate() {
        if dot(row, &x) != b[i] {
            return Err(Error::LinearSystem(format!("inconsistent at row {i}")));
        }
    }
    Ok(x)
}

/// Basis of the right nullspace.
pub fn nullspace(rows: &[Row], ncols: usize) -> Vec<Row> {
    let compute = |mut m: Vec<Row>| -> Vec<Row> {
        let pivots = if m.is_empty() { Vec::new() } else { rref(&mut m) };
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![ScalarFraction::zero(); ncols];
            v[free] = ScalarFraction::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -&row[free];
            }
            basis.push(v);
        }
        basis
    };
    if let Some(picked) = screen_rows(rows) {
        let basis = compute(picked.iter().map(|&i| rows[i].clone()).collect());
        if basis.iter().all(|v| rows.iter().all(|row| dot(row, v).is_zero())) {
            return basis;
        }
    }
    compute(rows.to_vec())
}
