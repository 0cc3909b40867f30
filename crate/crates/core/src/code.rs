//! Linear codes given by generator matrices, with the metric and structural
//! predicates used while classifying.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::gf::{Field, FieldError, Form};
use crate::linalg::{self, Matrix};
use crate::packed::{self, Packed, MAX_LEN};

/// Upper bound on `q^k` for anything that enumerates all codewords.
pub const ENUMERATION_BUDGET: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("generator matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("expected {expected} rows of length {n}, got {rows} rows")]
    Shape { expected: usize, n: usize, rows: usize },
    #[error("row {row} has length {len}, expected {n}")]
    RowLength { row: usize, len: usize, n: usize },
    #[error("symbol {symbol} at row {row} is not an element of GF({q})")]
    Symbol { symbol: u8, row: usize, q: u8 },
    #[error("length {0} exceeds the supported maximum of {MAX_LEN}")]
    TooLong(usize),
    #[error("enumerating {size} codewords exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: usize },
    #[error("coordinate {index} out of range for length {n}")]
    Index { index: usize, n: usize },
    #[error("divisor must be at least 2, got {0}")]
    Divisor(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Number of codewords of each weight, `counts[w] = A_w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightDistribution {
    pub counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight, `None` for the zero code.
    pub fn min_nonzero(&self) -> Option<usize> {
        self.counts.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w)
    }
}

#[derive(Debug)]
struct Enumerated {
    words: Vec<Packed>,
    distribution: WeightDistribution,
}

/// A linear `[n, k]_q` code stored by a full-rank generator matrix.
///
/// Equality compares row spaces, not matrices.
#[derive(Clone)]
pub struct LinearCode {
    field: Field,
    n: usize,
    gen: Matrix,
    cache: OnceLock<Arc<Enumerated>>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]_{} {{", self.n, self.k(), self.field.q())?;
        for (i, row) in self.gen.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            for &x in row {
                write!(f, "{x}")?;
            }
        }
        write!(f, "}}")
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.same_code(other)
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Build a code from `k` rows of length `n`, rejecting rank deficiency.
    pub fn from_rows(field: Field, k: usize, n: usize, rows: Matrix) -> Result<LinearCode, CodeError> {
        if rows.len() != k {
            return Err(CodeError::Shape { expected: k, n, rows: rows.len() });
        }
        check_rows(&field, n, &rows)?;
        let rank = linalg::rank(&field, &rows);
        if rank != k {
            return Err(CodeError::RankDeficient { rank, expected: k });
        }
        Ok(Self::from_basis(field, n, rows))
    }

    /// The code spanned by `rows`, whatever their rank.
    pub fn spanned_by(field: Field, n: usize, rows: &[Vec<u8>]) -> Result<LinearCode, CodeError> {
        check_rows(&field, n, rows)?;
        let mut m = rows.to_vec();
        if linalg::rank(&field, &m) < m.len() {
            linalg::rref(&field, &mut m);
        }
        Ok(Self::from_basis(field, n, m))
    }

    /// Caller guarantees the rows are valid and independent.
    pub(crate) fn from_basis(field: Field, n: usize, gen: Matrix) -> LinearCode {
        debug_assert!(n <= MAX_LEN);
        debug_assert!(gen.iter().all(|r| r.len() == n));
        LinearCode { field, n, gen, cache: OnceLock::new() }
    }

    pub fn zero(field: Field, n: usize) -> LinearCode {
        Self::from_basis(field, n, Vec::new())
    }

    /// The trivial `[k, k, 1]` code generated by `I_k`.
    pub fn identity(field: Field, k: usize) -> LinearCode {
        let gen = (0..k).map(|i| (0..k).map(|j| u8::from(i == j)).collect()).collect();
        Self::from_basis(field, k, gen)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn packed_rows(&self) -> Vec<Packed> {
        self.gen.iter().map(|r| Packed::from_slice(r)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        self.gen.iter().map(|r| r[j]).collect()
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.gen.clone();
        let piv = linalg::rref(&self.field, &mut m);
        (m, piv)
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.field == other.field && self.n == other.n && self.k() == other.k() && self.rref().0 == other.rref().0
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let (basis, piv) = self.rref();
        linalg::reduce(&self.field, &basis, &piv, v).iter().all(|&x| x == 0)
    }

    /// A generator `(I_k | A)` of an equivalent code together with the column
    /// order used: new column `i` is old column `order[i]`. When the pivots of
    /// the RREF are the first `k` columns the order is the identity and the
    /// code is unchanged.
    pub fn systematic_form(&self) -> (Matrix, Vec<usize>) {
        let (m, piv) = self.rref();
        let mut order = piv.clone();
        order.extend((0..self.n).filter(|j| !piv.contains(j)));
        let gen = m.iter().map(|row| order.iter().map(|&j| row[j]).collect()).collect();
        (gen, order)
    }

    fn enumerated(&self) -> Result<&Enumerated, CodeError> {
        if let Some(e) = self.cache.get() {
            return Ok(e);
        }
        let size = (self.field.q() as u128).pow(self.k() as u32);
        if size > ENUMERATION_BUDGET as u128 {
            return Err(CodeError::BudgetExceeded { size, budget: ENUMERATION_BUDGET });
        }
        let words = packed::span(&self.packed_rows(), &self.field);
        let mut counts = vec![0u64; self.n + 1];
        for w in &words {
            counts[w.weight() as usize] += 1;
        }
        let e = Arc::new(Enumerated { words, distribution: WeightDistribution { counts } });
        // A concurrent fill computes the same value; either one wins.
        let _ = self.cache.set(e);
        Ok(self.cache.get().expect("cache filled"))
    }

    /// All `q^k` codewords in packed form, indexed by message (lexicographic,
    /// first generator row most significant).
    pub fn codewords(&self) -> Result<&[Packed], CodeError> {
        Ok(&self.enumerated()?.words)
    }

    pub fn codeword_vecs(&self) -> Result<Vec<Vec<u8>>, CodeError> {
        Ok(self.codewords()?.iter().map(|w| w.to_vec(self.n)).collect())
    }

    pub fn weight_distribution(&self) -> Result<&WeightDistribution, CodeError> {
        Ok(&self.enumerated()?.distribution)
    }

    /// Minimum nonzero weight; `None` stands for infinity (the zero code).
    pub fn min_distance(&self) -> Result<Option<usize>, CodeError> {
        Ok(self.weight_distribution()?.min_nonzero())
    }

    /// `true` when the minimum distance is at least `d` (the zero code passes).
    pub fn min_distance_at_least(&self, d: usize) -> Result<bool, CodeError> {
        Ok(self.min_distance()?.is_none_or(|m| m >= d))
    }

    /// The Euclidean dual code.
    pub fn dual(&self) -> LinearCode {
        let (m, piv) = self.rref();
        let f = &self.field;
        let gen = (0..self.n)
            .filter(|j| !piv.contains(j))
            .map(|j| {
                let mut v = vec![0u8; self.n];
                v[j] = 1;
                for (row, &p) in m.iter().zip(&piv) {
                    v[p] = f.neg(row[j]);
                }
                v
            })
            .collect();
        Self::from_basis(self.field, self.n, gen)
    }

    /// `true` iff every `t - 1` columns of a generator matrix are linearly
    /// independent, i.e. the dual distance is at least `t`.
    pub fn dual_distance_at_least(&self, t: usize) -> bool {
        if t <= 1 || self.k() == self.n {
            return true;
        }
        let s = t - 1;
        if s > self.k() || s > self.n {
            return false;
        }
        let cols: Vec<Vec<u8>> = (0..self.n).map(|j| self.column(j)).collect();
        match s {
            1 => cols.iter().all(|c| c.iter().any(|&x| x != 0)),
            2 => {
                let mut seen = std::collections::HashSet::new();
                cols.iter().all(|c| {
                    let mut c = c.clone();
                    self.field.normalize(&mut c) != 0 && seen.insert(c)
                })
            }
            _ => all_subsets_independent(&self.field, &cols, s),
        }
    }

    /// Exact dual distance; `None` stands for infinity (`k == n`).
    pub fn dual_distance(&self) -> Option<usize> {
        if self.k() == self.n {
            return None;
        }
        (2..=self.k() + 1).find(|&t| !self.dual_distance_at_least(t)).map(|t| t - 1).or(Some(self.k() + 1))
    }

    fn check_index(&self, j: usize) -> Result<(), CodeError> {
        if j >= self.n {
            Err(CodeError::Index { index: j, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Delete coordinate `j` (0-based). The dimension drops when `j` supports
    /// a weight-1 codeword.
    pub fn puncture(&self, j: usize) -> Result<LinearCode, CodeError> {
        self.check_index(j)?;
        let rows: Matrix = self.gen.iter().map(|r| remove_at(r, j)).collect();
        Self::spanned_by(self.field, self.n - 1, &rows)
    }

    /// Keep the codewords vanishing at `j`, then delete `j` (0-based).
    pub fn shorten(&self, j: usize) -> Result<LinearCode, CodeError> {
        self.check_index(j)?;
        let f = &self.field;
        let mut rows = self.gen.clone();
        if let Some(p) = rows.iter().position(|r| r[j] != 0) {
            let pivot = rows.remove(p);
            let inv = f.inv_unchecked(pivot[j]);
            for r in rows.iter_mut() {
                if r[j] != 0 {
                    let c = f.neg(f.mul(r[j], inv));
                    f.axpy(r, c, &pivot);
                }
            }
        }
        let rows: Matrix = rows.iter().map(|r| remove_at(r, j)).collect();
        Self::spanned_by(self.field, self.n - 1, &rows)
    }

    pub fn is_self_orthogonal(&self, form: Form) -> Result<bool, CodeError> {
        if form == Form::Hermitian && self.field.q() != 4 {
            return Err(FieldError::HermitianNeedsGf4(self.field.q()).into());
        }
        let f = &self.field;
        for (i, a) in self.gen.iter().enumerate() {
            for b in &self.gen[i..] {
                if f.inner_product_unchecked(a, b, form) != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every codeword weight is a multiple of `delta`.
    pub fn is_divisible(&self, delta: u32) -> Result<bool, CodeError> {
        if delta < 2 {
            return Err(CodeError::Divisor(delta));
        }
        let dist = self.weight_distribution()?;
        Ok(dist.counts.iter().enumerate().all(|(w, &c)| c == 0 || (w as u32).is_multiple_of(delta)))
    }

    /// Coordinates where every codeword is zero.
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.gen.iter().all(|r| r[j] == 0)).collect()
    }

    /// Coordinates that support a weight-1 codeword.
    pub fn weight_one_supports(&self) -> Vec<usize> {
        let (m, piv) = self.rref();
        (0..self.n)
            .filter(|&j| {
                let mut e = vec![0u8; self.n];
                e[j] = 1;
                linalg::reduce(&self.field, &m, &piv, &e).iter().all(|&x| x == 0)
            })
            .collect()
    }

    /// The code with generator `(G | column)`.
    pub fn extend_column(&self, column: &[u8]) -> LinearCode {
        let gen = self
            .gen
            .iter()
            .zip(column)
            .map(|(r, &c)| {
                let mut r = r.clone();
                r.push(c);
                r
            })
            .collect();
        Self::from_basis(self.field, self.n + 1, gen)
    }
}

fn check_rows(field: &Field, n: usize, rows: &[Vec<u8>]) -> Result<(), CodeError> {
    if n > MAX_LEN {
        return Err(CodeError::TooLong(n));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(CodeError::RowLength { row: i, len: r.len(), n });
        }
        if let Some(&s) = r.iter().find(|&&s| s >= field.q()) {
            return Err(CodeError::Symbol { symbol: s, row: i, q: field.q() });
        }
    }
    Ok(())
}

fn remove_at(r: &[u8], j: usize) -> Vec<u8> {
    let mut v = r.to_vec();
    v.remove(j);
    v
}

/// Whether every `size`-subset of `cols` is linearly independent.
pub(crate) fn all_subsets_independent(field: &Field, cols: &[Vec<u8>], size: usize) -> bool {
    let n = cols.len();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let sub: Matrix = idx.iter().map(|&i| cols[i].clone()).collect();
        if linalg::rank(field, &sub) < size {
            return false;
        }
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < n - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn example1() -> LinearCode {
        LinearCode::from_rows(f(2), 2, 4, vec![vec![1, 0, 1, 1], vec![0, 1, 0, 1]]).unwrap()
    }

    fn sorted_words(c: &LinearCode) -> Vec<Vec<u8>> {
        let mut w = c.codeword_vecs().unwrap();
        w.sort();
        w
    }

    #[test]
    fn construction() {
        let c = example1();
        assert_eq!((c.n(), c.k()), (4, 2));
        let err = LinearCode::from_rows(f(2), 2, 2, vec![vec![1, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, CodeError::RankDeficient { rank: 1, expected: 2 });
        assert!(err.to_string().contains("rank 1"));
        let t = LinearCode::from_rows(f(3), 2, 2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(t.min_distance().unwrap(), Some(1));
        assert!(LinearCode::from_rows(f(2), 1, 2, vec![vec![1, 2]]).is_err());
        assert!(LinearCode::from_rows(f(2), 1, 2, vec![vec![1]]).is_err());
    }

    #[test]
    fn systematic() {
        let c = example1();
        let (g, order) = c.systematic_form();
        assert_eq!(g, vec![vec![1, 0, 1, 1], vec![0, 1, 0, 1]]);
        assert_eq!(order, vec![0, 1, 2, 3]);
        let id = LinearCode::identity(f(3), 3);
        assert_eq!(id.systematic_form().1, vec![0, 1, 2]);
        let c = LinearCode::from_rows(f(2), 2, 3, vec![vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
        let (g, order) = c.systematic_form();
        assert_eq!(order, vec![1, 2, 0]);
        assert_eq!(g, vec![vec![1, 0, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn codewords_and_weights() {
        let c = example1();
        assert_eq!(sorted_words(&c), vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![1, 0, 1, 1], vec![1, 1, 1, 0]]);
        assert_eq!(c.weight_distribution().unwrap().counts, vec![1, 0, 1, 2, 0]);
        assert_eq!(c.min_distance().unwrap(), Some(2));
        let id = LinearCode::identity(f(2), 3);
        assert_eq!(id.weight_distribution().unwrap().counts, vec![1, 3, 3, 1]);
        assert_eq!(id.min_distance().unwrap(), Some(1));
        let t = LinearCode::from_rows(f(3), 1, 2, vec![vec![1, 2]]).unwrap();
        assert_eq!(sorted_words(&t), vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
        assert_eq!(t.weight_distribution().unwrap().counts, vec![1, 0, 2]);
        let c = LinearCode::from_rows(f(2), 2, 5, vec![vec![1, 1, 1, 0, 0], vec![0, 0, 1, 1, 1]]).unwrap();
        assert_eq!(c.min_distance().unwrap(), Some(3));
        assert_eq!(LinearCode::zero(f(2), 3).min_distance().unwrap(), None);
    }

    #[test]
    fn budget_refusal() {
        let c = LinearCode::identity(f(4), 12);
        assert!(matches!(c.codewords(), Err(CodeError::BudgetExceeded { .. })));
    }

    #[test]
    fn duals() {
        let c = example1();
        let d = c.dual();
        let expect = LinearCode::from_rows(f(2), 2, 4, vec![vec![1, 0, 1, 0], vec![1, 1, 0, 1]]).unwrap();
        assert_eq!(d, expect);
        for a in c.generator() {
            for b in d.generator() {
                assert_eq!(f(2).dot(a, b), 0);
            }
        }
        let rep = LinearCode::from_rows(f(2), 1, 2, vec![vec![1, 1]]).unwrap();
        assert_eq!(rep.dual(), rep);
        let t = LinearCode::from_rows(f(3), 1, 2, vec![vec![1, 1]]).unwrap();
        assert_eq!(t.dual(), LinearCode::from_rows(f(3), 1, 2, vec![vec![1, 2]]).unwrap());
        assert_eq!(LinearCode::identity(f(2), 3).dual().k(), 0);
        assert_eq!(LinearCode::zero(f(3), 2).dual().k(), 2);
    }

    #[test]
    fn dual_distance() {
        let c = LinearCode::from_rows(f(2), 1, 2, vec![vec![1, 0]]).unwrap();
        assert!(!c.dual_distance_at_least(2));
        let e = example1();
        assert!(e.dual_distance_at_least(1));
        assert!(e.dual_distance_at_least(2));
        assert!(!e.dual_distance_at_least(3));
        assert_eq!(e.dual_distance(), Some(2));
        assert!(LinearCode::identity(f(3), 3).dual_distance_at_least(9));
    }

    #[test]
    fn puncture_and_shorten() {
        let p = example1().puncture(3).unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(sorted_words(&p), vec![vec![0, 0, 0], vec![0, 1, 0], vec![1, 0, 1], vec![1, 1, 1]]);
        let rep = LinearCode::from_rows(f(2), 1, 2, vec![vec![1, 1]]).unwrap();
        let s = rep.shorten(0).unwrap();
        assert_eq!((s.n(), s.k()), (1, 0));
        assert!(example1().puncture(4).is_err());
        let id = LinearCode::identity(f(2), 2);
        assert_eq!(id.puncture(0).unwrap().k(), 1);
        assert_eq!(id.shorten(0).unwrap().k(), 1);
    }

    #[test]
    fn orthogonality_and_divisibility() {
        let all_ones = LinearCode::from_rows(f(2), 1, 4, vec![vec![1, 1, 1, 1]]).unwrap();
        assert!(all_ones.is_self_orthogonal(Form::Euclidean).unwrap());
        assert!(all_ones.is_divisible(4).unwrap());
        assert!(!example1().is_self_orthogonal(Form::Euclidean).unwrap());
        assert!(example1().is_self_orthogonal(Form::Hermitian).is_err());
        assert!(all_ones.is_divisible(1).is_err());
        let h = LinearCode::from_rows(f(4), 1, 2, vec![vec![1, 2]]).unwrap();
        assert!(h.is_self_orthogonal(Form::Hermitian).unwrap());
        assert!(!h.is_self_orthogonal(Form::Euclidean).unwrap());
    }

    #[test]
    fn special_coordinates() {
        let c = LinearCode::from_rows(f(2), 2, 4, vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0]]).unwrap();
        assert_eq!(c.zero_columns(), vec![3]);
        assert_eq!(c.weight_one_supports(), vec![0]);
    }
}
