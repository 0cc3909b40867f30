//! Semimonomial maps, their action on vectors and codes, and the actions
//! induced by code automorphisms on extension vectors.
//!
//! A map is stored as `(perm, scalars, auto)` and acts on a row vector by
//! `(phi(v))[perm[i]] = auto(scalars[perm[i]] * v[i])`, i.e. coordinate `i`
//! moves to `perm[i]`, is multiplied by the scalar attached to its target
//! position, and then the field automorphism is applied.

use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::gf::Field;
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("length mismatch: map acts on {map} coordinates, vector has {vector}")]
    Length { map: usize, vector: usize },
    #[error("map does not stabilize the code")]
    NotAnAutomorphism,
    #[error("invalid map: {0}")]
    Invalid(&'static str),
    #[error("orbit space of size {size} exceeds the budget of {budget}")]
    Budget { size: u128, budget: usize },
    #[error("row-side orbits need a generator of the form (A | I_k)")]
    NotRightSystematic,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// An element of the semimonomial group acting on `F_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemimonomialMap {
    pub perm: Vec<usize>,
    pub scalars: Vec<u8>,
    pub auto: u8,
}

impl SemimonomialMap {
    pub fn identity(n: usize) -> SemimonomialMap {
        SemimonomialMap { perm: (0..n).collect(), scalars: vec![1; n], auto: 0 }
    }

    pub fn new(field: &Field, perm: Vec<usize>, scalars: Vec<u8>, auto: u8) -> Result<Self, SymmetryError> {
        let n = perm.len();
        if scalars.len() != n {
            return Err(SymmetryError::Invalid("scalar count differs from length"));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(SymmetryError::Invalid("not a permutation"));
            }
        }
        if scalars.iter().any(|&s| s == 0 || s >= field.q()) {
            return Err(SymmetryError::Invalid("scalars must be nonzero field elements"));
        }
        if auto >= field.automorphism_count() {
            return Err(SymmetryError::Invalid("automorphism index out of range"));
        }
        Ok(SemimonomialMap { perm, scalars, auto })
    }

    /// A pure coordinate permutation.
    pub fn permutation(perm: Vec<usize>) -> SemimonomialMap {
        let n = perm.len();
        SemimonomialMap { perm, scalars: vec![1; n], auto: 0 }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.auto == 0 && self.scalars.iter().all(|&s| s == 1) && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Apply to a vector without length checks.
    pub fn apply_unchecked(&self, field: &Field, v: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; v.len()];
        for (i, &x) in v.iter().enumerate() {
            let t = self.perm[i];
            out[t] = field.auto(field.mul(self.scalars[t], x), self.auto);
        }
        out
    }

    pub fn apply(&self, field: &Field, v: &[u8]) -> Result<Vec<u8>, SymmetryError> {
        if v.len() != self.len() {
            return Err(SymmetryError::Length { map: self.len(), vector: v.len() });
        }
        Ok(self.apply_unchecked(field, v))
    }

    /// The image code, obtained by mapping every generator row.
    pub fn apply_code(&self, code: &LinearCode) -> Result<LinearCode, SymmetryError> {
        if code.n() != self.len() {
            return Err(SymmetryError::Length { map: self.len(), vector: code.n() });
        }
        let rows: Matrix = code.generator().iter().map(|r| self.apply_unchecked(code.field(), r)).collect();
        Ok(LinearCode::from_basis(*code.field(), code.n(), rows))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, field: &Field, other: &SemimonomialMap) -> Result<SemimonomialMap, SymmetryError> {
        if self.len() != other.len() {
            return Err(SymmetryError::Length { map: self.len(), vector: other.len() });
        }
        Ok(self.compose_unchecked(field, other))
    }

    pub fn compose_unchecked(&self, field: &Field, other: &SemimonomialMap) -> SemimonomialMap {
        let n = self.len();
        let inv_self = invert_perm(&self.perm);
        let perm: Vec<usize> = (0..n).map(|i| self.perm[other.perm[i]]).collect();
        let back = field.auto_inverse(other.auto);
        let scalars = (0..n).map(|j| field.mul(field.auto(self.scalars[j], back), other.scalars[inv_self[j]])).collect();
        SemimonomialMap { perm, scalars, auto: field.auto_compose(self.auto, other.auto) }
    }

    pub fn invert(&self, field: &Field) -> SemimonomialMap {
        let n = self.len();
        let perm = invert_perm(&self.perm);
        let scalars = (0..n).map(|i| field.auto(field.inv_unchecked(self.scalars[self.perm[i]]), self.auto)).collect();
        SemimonomialMap { perm, scalars, auto: field.auto_inverse(self.auto) }
    }

    /// The corresponding automorphism of the dual code: same permutation and
    /// field automorphism, inverted scalars.
    pub fn dualize(&self, field: &Field) -> SemimonomialMap {
        SemimonomialMap {
            perm: self.perm.clone(),
            scalars: self.scalars.iter().map(|&s| field.inv_unchecked(s)).collect(),
            auto: self.auto,
        }
    }

    /// Whether the map carries `code` onto itself.
    pub fn is_automorphism(&self, code: &LinearCode) -> bool {
        if code.n() != self.len() {
            return false;
        }
        let (basis, piv) = code.rref();
        code.generator().iter().all(|r| {
            let img = self.apply_unchecked(code.field(), r);
            linalg::reduce(code.field(), &basis, &piv, &img).iter().all(|&x| x == 0)
        })
    }

    /// The map on `n + 1` coordinates fixing the new last coordinate with
    /// scalar 1.
    pub fn extend_fixing_last(&self) -> SemimonomialMap {
        let mut m = self.clone();
        m.perm.push(self.len());
        m.scalars.push(1);
        m
    }
}

pub fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &t) in p.iter().enumerate() {
        inv[t] = i;
    }
    inv
}

/// Generators of the full semimonomial group on `n` coordinates.
pub fn full_group_generators(field: &Field, n: usize) -> Vec<SemimonomialMap> {
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(i, i + 1);
        gens.push(SemimonomialMap::permutation(p));
    }
    if field.q() > 2 && n > 0 {
        let mut m = SemimonomialMap::identity(n);
        m.scalars[0] = field.primitive();
        gens.push(m);
    }
    if field.automorphism_count() > 1 {
        let mut m = SemimonomialMap::identity(n);
        m.auto = 1;
        gens.push(m);
    }
    gens
}

/// An element `(A, alpha)` of `GL(k, q) ⋊ Aut(F_q)` acting on extension
/// vectors by `x -> (A x)^(alpha^-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InducedMap {
    pub matrix: Matrix,
    pub auto: u8,
}

impl InducedMap {
    pub fn act(&self, field: &Field, x: &[u8]) -> Vec<u8> {
        let inv = field.auto_inverse(self.auto);
        linalg::mat_vec(field, &self.matrix, x).into_iter().map(|y| field.auto(y, inv)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.auto == 0 && self.matrix.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == u8::from(i == j)))
    }
}

/// The matrix `A` with `G phi = A G` for an automorphism `phi` of the code
/// generated by `gen`.
pub fn induced_action(field: &Field, phi: &SemimonomialMap, gen: &[Vec<u8>]) -> Result<InducedMap, SymmetryError> {
    let image: Matrix = gen.iter().map(|r| phi.apply_unchecked(field, r)).collect();
    let matrix = linalg::coordinates(field, gen, &image).ok_or(SymmetryError::NotAnAutomorphism)?;
    Ok(InducedMap { matrix, auto: phi.auto })
}

/// Orbits of the permutation parts on `0..n`, each sorted, ordered by their
/// smallest element.
pub fn coordinate_orbits(gens: &[SemimonomialMap], n: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for g in gens {
        for (i, &t) in g.perm.iter().enumerate() {
            uf.union(i, t);
        }
    }
    uf.classes()
}

/// Which generator matrix the induced maps act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `F_q^k`, extension columns of the code itself.
    Column,
    /// `F_q^(n-k)`, extension rows; maps come from the dual automorphisms
    /// acting on `(I_(n-k) | -A^T)` for a generator `(A | I_k)`.
    Row,
}

/// Induced maps of `gens` for the given side. Identity images are dropped.
pub fn induced_maps(code: &LinearCode, gens: &[SemimonomialMap], side: Side) -> Result<Vec<InducedMap>, SymmetryError> {
    let field = code.field();
    let (gen, maps): (Matrix, Vec<SemimonomialMap>) = match side {
        Side::Column => (code.generator().clone(), gens.to_vec()),
        Side::Row => {
            (right_systematic_dual(code).ok_or(SymmetryError::NotRightSystematic)?, gens.iter().map(|g| g.dualize(field)).collect())
        }
    };
    let mut out = Vec::new();
    for g in &maps {
        let m = induced_action(field, g, &gen)?;
        if !m.is_identity() && !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// For a generator `(A | I_k)`, the dual generator `(I_(n-k) | -A^T)`.
pub fn right_systematic_dual(code: &LinearCode) -> Option<Matrix> {
    let (n, k) = (code.n(), code.k());
    let r = n - k;
    let g = code.generator();
    for (i, row) in g.iter().enumerate() {
        if (0..k).any(|j| row[r + j] != u8::from(i == j)) {
            return None;
        }
    }
    let field = code.field();
    Some(
        (0..r)
            .map(|i| {
                let mut v = vec![0u8; n];
                v[i] = 1;
                for (j, row) in g.iter().enumerate() {
                    v[r + j] = field.neg(row[i]);
                }
                v
            })
            .collect(),
    )
}

/// Orbit representatives on the full space `F_q^dim`.
#[derive(Debug, Clone)]
pub struct VectorOrbits {
    /// Lexicographically smallest vector of each orbit, in increasing order.
    pub reps: Vec<Vec<u8>>,
    /// Orbit id of every vector, indexed by [`Field::vec_index`].
    pub orbit_of: Vec<u32>,
    pub sizes: Vec<usize>,
}

pub const ORBIT_BUDGET: usize = 1 << 22;

pub fn vector_orbits(field: &Field, maps: &[InducedMap], dim: usize) -> Result<VectorOrbits, SymmetryError> {
    let size = (field.q() as u128).pow(dim as u32);
    if size > ORBIT_BUDGET as u128 {
        return Err(SymmetryError::Budget { size, budget: ORBIT_BUDGET });
    }
    let size = size as usize;
    let mut orbit_of = vec![u32::MAX; size];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..size {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(field.index_vec(start, dim));
        orbit_of[start] = id;
        stack.push(start);
        let mut count = 1;
        while let Some(x) = stack.pop() {
            let v = field.index_vec(x, dim);
            for m in maps {
                let y = field.vec_index(&m.act(field, &v));
                if orbit_of[y] == u32::MAX {
                    orbit_of[y] = id;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        sizes.push(count);
    }
    Ok(VectorOrbits { reps, orbit_of, sizes })
}

/// Orbit representatives of extension vectors for `code` under `gens`.
pub fn vector_orbit_reps(code: &LinearCode, gens: &[SemimonomialMap], side: Side) -> Result<VectorOrbits, SymmetryError> {
    let maps = induced_maps(code, gens, side)?;
    let dim = match side {
        Side::Column => code.k(),
        Side::Row => code.n() - code.k(),
    };
    vector_orbits(code.field(), &maps, dim)
}

/// Plain union-find with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merge; the smaller root survives. Returns whether anything changed.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = self.find(i);
            by_root[r].push(i);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

/// All permutations of `0..n` (n! of them).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
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

    fn swap(n: usize, a: usize, b: usize) -> SemimonomialMap {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        SemimonomialMap::permutation(p)
    }

    #[test]
    fn apply_conventions() {
        let c = example1();
        let s13 = swap(4, 0, 2);
        assert_eq!(s13.apply_code(&c).unwrap(), c);
        assert!(s13.is_automorphism(&c));
        assert!(!swap(4, 0, 1).is_automorphism(&c));
        let f3 = f(3);
        let m = SemimonomialMap::new(&f3, vec![0, 1], vec![2, 1], 0).unwrap();
        assert_eq!(m.apply(&f3, &[1, 1]).unwrap(), vec![2, 1]);
        assert!(m.apply(&f3, &[1]).is_err());
        let id = SemimonomialMap::identity(3);
        assert_eq!(id.apply(&f3, &[2, 0, 1]).unwrap(), vec![2, 0, 1]);
        assert!(SemimonomialMap::new(&f3, vec![0, 0], vec![1, 1], 0).is_err());
        assert!(SemimonomialMap::new(&f3, vec![0, 1], vec![0, 1], 0).is_err());
    }

    #[test]
    fn swaps_compose() {
        let f2 = f(2);
        let a = swap(4, 0, 2);
        let b = swap(4, 1, 3);
        let ab = a.compose(&f2, &b).unwrap();
        assert_eq!(ab.perm, vec![2, 3, 0, 1]);
        assert!(ab.is_automorphism(&example1()));
    }

    #[test]
    fn semidirect_twist_gf4_brute_force() {
        let f4 = f(4);
        let frob = SemimonomialMap::new(&f4, vec![0, 1], vec![1, 1], 1).unwrap();
        let scale = SemimonomialMap::new(&f4, vec![0, 1], vec![2, 1], 0).unwrap();
        for (x, y) in [(&frob, &scale), (&scale, &frob)] {
            let xy = x.compose(&f4, y).unwrap();
            for idx in 0..16 {
                let v = f4.index_vec(idx, 2);
                let direct = x.apply(&f4, &y.apply(&f4, &v).unwrap()).unwrap();
                assert_eq!(xy.apply(&f4, &v).unwrap(), direct);
            }
        }
        // Frobenius after scaling by w is scaling by w^2 after Frobenius.
        let fs = frob.compose(&f4, &scale).unwrap();
        assert_eq!(fs.scalars[0], 2);
        assert_eq!(fs.apply(&f4, &[1, 0]).unwrap(), vec![3, 0]);
    }

    #[test]
    fn inverse_undoes() {
        let f4 = f(4);
        let m = SemimonomialMap::new(&f4, vec![2, 0, 1], vec![2, 3, 1], 1).unwrap();
        let inv = m.invert(&f4);
        for idx in 0..64 {
            let v = f4.index_vec(idx, 3);
            assert_eq!(inv.apply(&f4, &m.apply(&f4, &v).unwrap()).unwrap(), v);
        }
        assert!(m.compose(&f4, &inv).unwrap().is_identity());
    }

    #[test]
    fn dualize_scalars() {
        let f4 = f(4);
        let m = SemimonomialMap::new(&f4, vec![0], vec![2], 0).unwrap();
        assert_eq!(m.dualize(&f4).scalars, vec![3]);
        let f3 = f(3);
        let m = SemimonomialMap::new(&f3, vec![0], vec![2], 0).unwrap();
        assert_eq!(m.dualize(&f3).scalars, vec![2]);
        let s = swap(3, 0, 1);
        assert_eq!(s.dualize(&f(2)), s);
    }

    #[test]
    fn dualized_automorphism_fixes_dual() {
        let f3 = f(3);
        let c = LinearCode::from_rows(f3, 2, 4, vec![vec![1, 0, 1, 2], vec![0, 1, 1, 1]]).unwrap();
        // brute-force the monomial automorphisms
        let mut found = 0;
        for p in permutations(4) {
            for s in 0..16usize {
                let scalars: Vec<u8> = (0..4).map(|i| 1 + ((s >> i) & 1) as u8).collect();
                let m = SemimonomialMap::new(&f3, p.clone(), scalars, 0).unwrap();
                if m.is_automorphism(&c) {
                    found += 1;
                    assert!(m.dualize(&f3).is_automorphism(&c.dual()));
                }
            }
        }
        assert!(found >= 2);
    }

    #[test]
    fn induced_matrices() {
        let f2 = f(2);
        let c = example1();
        let id = induced_action(&f2, &SemimonomialMap::identity(4), c.generator()).unwrap();
        assert!(id.is_identity());
        // (24) maps row 1011 -> 1110 = r1 + r2, row 0101 -> 0101.
        let m = induced_action(&f2, &swap(4, 1, 3), c.generator()).unwrap();
        assert_eq!(m.matrix, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(induced_action(&f2, &swap(4, 0, 1), c.generator()), Err(SymmetryError::NotAnAutomorphism));
    }

    #[test]
    fn orbits() {
        let c = example1();
        let gens = vec![swap(4, 0, 2), swap(4, 1, 3)];
        assert_eq!(coordinate_orbits(&gens, 4), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(coordinate_orbits(&[], 3), vec![vec![0], vec![1], vec![2]]);
        let f3 = f(3);
        let id = LinearCode::identity(f3, 3);
        let g = full_group_generators(&f3, 3);
        assert_eq!(coordinate_orbits(&g, 3), vec![vec![0, 1, 2]]);
        let orb = vector_orbit_reps(&id, &g, Side::Column).unwrap();
        assert_eq!(orb.reps, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]);
        assert_eq!(orb.sizes.iter().sum::<usize>(), 27);
        let triv = vector_orbit_reps(&c, &[], Side::Column).unwrap();
        assert_eq!(triv.reps.len(), 4);
        // Example code: induced maps of (13) and (24) on F_2^2.
        let e = vector_orbit_reps(&c, &gens, Side::Column).unwrap();
        assert_eq!(e.reps, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }
}
