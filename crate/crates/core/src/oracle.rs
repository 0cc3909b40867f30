//! Brute-force ground truth for tiny parameters.
//!
//! Nothing here shares search code with the canonical-form or generation
//! modules: equivalence is decided by trying every semimonomial map, the
//! reference canonical form is a minimum over every map, and exhaustive
//! classification walks every reduced row echelon matrix. Every entry point
//! refuses work beyond a fixed budget instead of running slowly.

use std::collections::HashSet;

use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::constraints::ConstraintSet;
use crate::gf::Field;
use crate::linalg::Matrix;
use crate::symmetry::SemimonomialMap;

/// Longest length the map searches accept, by field order.
pub fn max_map_length(q: u8) -> usize {
    if q == 2 {
        8
    } else {
        6
    }
}

/// Most reduced row echelon matrices `classify_exhaustive` will walk.
pub const EXHAUSTIVE_BUDGET: u128 = 1 << 21;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("{what}: {size} exceeds the oracle budget of {budget}")]
    Budget { what: &'static str, size: u128, budget: u128 },
    #[error("codes differ in field, length or dimension")]
    Mismatch,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Every semimonomial map on `n` coordinates, visited in a fixed order.
struct Maps {
    field: Field,
    n: usize,
}

impl Maps {
    fn new(field: Field, n: usize) -> Result<Maps, OracleError> {
        let count =
            |n: usize| (1..=n as u128).product::<u128>() * (field.q() as u128 - 1).pow(n as u32) * field.automorphism_count() as u128;
        let cap = max_map_length(field.q());
        if n > cap {
            return Err(OracleError::Budget { what: "semimonomial maps", size: count(n), budget: count(cap) });
        }
        Ok(Maps { field, n })
    }

    /// Calls `visit` on every map until it returns `false`.
    fn for_each(&self, mut visit: impl FnMut(&[usize], &[u8], u8) -> bool) {
        let n = self.n;
        let q = self.field.q();
        let mut perm: Vec<usize> = (0..n).collect();
        // Heap's algorithm
        let mut c = vec![0usize; n];
        let mut scalars = vec![1u8; n];
        let mut run = |perm: &[usize]| -> bool {
            scalars.iter_mut().for_each(|s| *s = 1);
            loop {
                for auto in 0..self.field.automorphism_count() {
                    if !visit(perm, &scalars, auto) {
                        return false;
                    }
                }
                let mut i = 0;
                while i < n && scalars[i] == q - 1 {
                    scalars[i] = 1;
                    i += 1;
                }
                if i == n {
                    return true;
                }
                scalars[i] += 1;
            }
        };
        if !run(&perm) {
            return;
        }
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                if !run(&perm) {
                    return;
                }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
    }
}

/// Image of `v`: entry `i` moves to `perm[i]`, is multiplied by the scalar
/// of its new position, then the field automorphism is applied.
fn image(field: &Field, perm: &[usize], scalars: &[u8], auto: u8, v: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; v.len()];
    for (i, &x) in v.iter().enumerate() {
        let t = perm[i];
        out[t] = field.auto(field.mul(scalars[t], x), auto);
    }
    out
}

/// Whether some semimonomial map carries `a` onto `b`, with such a map.
pub fn equivalent_bruteforce(a: &LinearCode, b: &LinearCode) -> Result<Option<SemimonomialMap>, OracleError> {
    if a.field().q() != b.field().q() || a.n() != b.n() || a.k() != b.k() {
        return Err(OracleError::Mismatch);
    }
    let field = *a.field();
    let maps = Maps::new(field, a.n())?;
    let target: HashSet<Vec<u8>> = b.codeword_vecs()?.into_iter().collect();
    let rows = a.generator().clone();
    let mut found = None;
    maps.for_each(|perm, scalars, auto| {
        if rows.iter().all(|r| target.contains(&image(&field, perm, scalars, auto, r))) {
            found = Some(SemimonomialMap { perm: perm.to_vec(), scalars: scalars.to_vec(), auto });
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// The equivalent code whose sorted list of nonzero codewords, read as one
/// concatenated string, is smallest.
pub fn canonical_lexmin(code: &LinearCode) -> Result<LinearCode, OracleError> {
    let field = *code.field();
    let maps = Maps::new(field, code.n())?;
    let words: Vec<Vec<u8>> = code.codeword_vecs()?.into_iter().filter(|w| w.iter().any(|&x| x != 0)).collect();
    let mut best: Option<Vec<Vec<u8>>> = None;
    maps.for_each(|perm, scalars, auto| {
        let mut img: Vec<Vec<u8>> = words.iter().map(|w| image(&field, perm, scalars, auto, w)).collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
        true
    });
    let words = best.unwrap_or_default();
    Ok(LinearCode::spanned_by(field, code.n(), &basis_of(&field, &words, code.k()))?)
}

/// `k` independent vectors among `words`, greedily in order.
fn basis_of(field: &Field, words: &[Vec<u8>], k: usize) -> Matrix {
    let mut basis: Matrix = Vec::new();
    for w in words {
        if basis.len() == k {
            break;
        }
        let mut trial = basis.clone();
        trial.push(w.clone());
        if crate::linalg::rank(field, &trial) == trial.len() {
            basis = trial;
        }
    }
    basis
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(q: u128, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num.saturating_mul(q.pow((n - i) as u32) - 1);
        den = den.saturating_mul(q.pow((i + 1) as u32) - 1);
    }
    num / den
}

/// Classes of an exhaustive classification.
#[derive(Debug, Clone)]
pub struct ExhaustiveResult {
    pub count: usize,
    /// One lexicographically minimal representative per class.
    pub representatives: Vec<LinearCode>,
}

fn matches(code: &LinearCode, set: &ConstraintSet) -> Result<bool, OracleError> {
    let d_ok = code.min_distance()?.is_none_or(|d| d >= set.d);
    let dual_ok = code.dual().min_distance()?.is_none_or(|d| d >= set.d_dual);
    let so_ok = match set.so {
        Some(form) => code.is_self_orthogonal(form)?,
        None => true,
    };
    let div_ok = match set.divisor {
        Some(delta) => code.is_divisible(delta)?,
        None => true,
    };
    Ok(d_ok && dual_ok && so_ok && div_ok)
}

/// Every `[n, k]` code meeting `set`, grouped into equivalence classes.
///
/// Walks all reduced row echelon generators, joins each one to its images
/// under a generating set of the semimonomial group (adjacent swaps, scaling
/// one coordinate by a primitive element, the Frobenius map), and reports
/// the connected components.
pub fn classify_exhaustive(field: Field, n: usize, k: usize, set: &ConstraintSet) -> Result<ExhaustiveResult, OracleError> {
    let total = gaussian_binomial(field.q() as u128, n, k);
    if total > EXHAUSTIVE_BUDGET {
        return Err(OracleError::Budget { what: "reduced row echelon matrices", size: total, budget: EXHAUSTIVE_BUDGET });
    }
    let mut codes: Vec<Matrix> = Vec::new();
    for_each_rref(&field, n, k, &mut |m| {
        let code = LinearCode::from_rows(field, k, n, m.clone()).expect("echelon rows are independent");
        if matches(&code, set).unwrap_or(false) {
            codes.push(m.clone());
        }
    });
    codes.sort();
    let index: std::collections::HashMap<Matrix, usize> = codes.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut parent: Vec<usize> = (0..codes.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut generators: Vec<(Vec<usize>, Vec<u8>, u8)> = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(i, i + 1);
        generators.push((p, vec![1; n], 0));
    }
    if field.q() > 2 && n > 0 {
        let mut s = vec![1; n];
        s[0] = field.primitive();
        generators.push(((0..n).collect(), s, 0));
    }
    if field.automorphism_count() > 1 {
        generators.push(((0..n).collect(), vec![1; n], 1));
    }
    for (i, m) in codes.iter().enumerate() {
        for (perm, scalars, auto) in &generators {
            let mut img: Matrix = m.iter().map(|r| image(&field, perm, scalars, *auto, r)).collect();
            crate::linalg::rref(&field, &mut img);
            let j = index[&img];
            let (a, b) = (root(&mut parent, i), root(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut representatives = Vec::new();
    for i in 0..codes.len() {
        if root(&mut parent, i) == i {
            let code = LinearCode::from_rows(field, k, n, codes[i].clone())?;
            let rep = if n <= max_map_length(field.q()) { canonical_lexmin(&code)? } else { code };
            representatives.push(rep);
        }
    }
    Ok(ExhaustiveResult { count: representatives.len(), representatives })
}

/// Calls `visit` on every `k x n` matrix in reduced row echelon form.
fn for_each_rref(field: &Field, n: usize, k: usize, visit: &mut dyn FnMut(&Matrix)) {
    fn pivots(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in start..n {
            cur.push(p);
            pivots(n, k, p + 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    pivots(n, k, 0, &mut Vec::new(), &mut sets);
    let q = field.q();
    for piv in sets {
        let free: Vec<(usize, usize)> = (0..k).flat_map(|i| ((piv[i] + 1)..n).filter(|j| !piv.contains(j)).map(move |j| (i, j))).collect();
        let mut m: Matrix = vec![vec![0u8; n]; k];
        for (i, &p) in piv.iter().enumerate() {
            m[i][p] = 1;
        }
        let mut digits = vec![0u8; free.len()];
        loop {
            for (&(i, j), &x) in free.iter().zip(&digits) {
                m[i][j] = x;
            }
            visit(&m);
            let mut t = 0;
            while t < digits.len() && digits[t] == q - 1 {
                digits[t] = 0;
                t += 1;
            }
            if t == digits.len() {
                break;
            }
            digits[t] += 1;
        }
    }
}
