//! Dense linear algebra over the small fields, on row-major `Vec<Vec<u8>>`.

use crate::gf::Field;

pub type Matrix = Vec<Vec<u8>>;

/// Reduce `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(field: &Field, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let s = field.inv_unchecked(rows[r][col]);
        field.scale(&mut rows[r], s);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = field.neg(row[col]);
                field.axpy(row, c, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<u8>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Reduce `v` against an RREF basis; returns the residue.
pub fn reduce(field: &Field, basis: &[Vec<u8>], pivots: &[usize], v: &[u8]) -> Vec<u8> {
    let mut out = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if out[p] != 0 {
            let c = field.neg(out[p]);
            field.axpy(&mut out, c, row);
        }
    }
    out
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(field: &Field, m: &[Vec<u8>]) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u8::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `a * b` for matrices.
pub fn mat_mul(field: &Field, a: &[Vec<u8>], b: &[Vec<u8>]) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![0u8; cols];
            for (&c, brow) in row.iter().zip(b) {
                field.axpy(&mut out, c, brow);
            }
            out
        })
        .collect()
}

/// `m * x` for a column vector `x`.
pub fn mat_vec(field: &Field, m: &[Vec<u8>], x: &[u8]) -> Vec<u8> {
    m.iter().map(|row| field.dot(row, x)).collect()
}

/// Express each row of `targets` as a combination of the rows of `basis`.
/// `basis` must have full row rank. Returns `None` if some target is not in
/// the row space.
pub fn coordinates(field: &Field, basis: &[Vec<u8>], targets: &[Vec<u8>]) -> Option<Matrix> {
    let k = basis.len();
    if k == 0 {
        return targets.iter().all(|t| t.iter().all(|&x| x == 0)).then(|| vec![Vec::new(); targets.len()]);
    }
    let mut r = basis.to_vec();
    let pivots = rref(field, &mut r);
    if pivots.len() != k {
        return None;
    }
    // basis restricted to the pivot columns is invertible
    let square: Matrix = basis.iter().map(|row| pivots.iter().map(|&p| row[p]).collect()).collect();
    let inv = invert(field, &square)?;
    let mut out = Vec::with_capacity(targets.len());
    for t in targets {
        let restricted: Vec<u8> = pivots.iter().map(|&p| t[p]).collect();
        let x = mat_mul(field, &[restricted], &inv).pop().unwrap();
        let mut check = vec![0u8; t.len()];
        for (&c, row) in x.iter().zip(basis) {
            field.axpy(&mut check, c, row);
        }
        if check != *t {
            return None;
        }
        out.push(x);
    }
    Some(out)
}

pub fn transpose(m: &[Vec<u8>], cols: usize) -> Matrix {
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}
