//! Canonical forms, automorphism groups and special orbits of linear codes.
//!
//! The canonical form of a `[n, k]` code is the smallest matrix, in
//! row-major lexicographic order, among all matrices obtained by
//!
//! 1. picking a field automorphism `alpha` and an ordered basis
//!    `c_1, ..., c_k` of the code,
//! 2. applying `alpha` to the basis rows,
//! 3. scaling every column so that its first nonzero entry is 1,
//! 4. sorting the columns by (coordinate invariant, column vector).
//!
//! Every such matrix generates a code equivalent to the input, and the set
//! of reachable matrices depends only on the equivalence class, so the
//! minimum is a canonical representative. Rows `1..=i` of the sorted matrix
//! depend only on `c_1, ..., c_i`, which turns the minimization into a
//! depth-first search over partial bases with prefix pruning. Automorphisms
//! show up as pairs of leaves with equal matrices and are used to skip
//! symmetric branches. A final pass along the best leaf's path completes a
//! generating set of the automorphism group (one stabilizer level at a time).

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::code::{CodeError, LinearCode};
use crate::gf::Field;
use crate::linalg::Matrix;
use crate::packed::Packed;
use crate::symmetry::{coordinate_orbits, full_group_generators, SemimonomialMap};

/// Which generation algorithm a special orbit is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Extend the generator matrix by one column per step.
    Column,
    /// Extend the generator matrix by one row and one column per step.
    Row,
}

/// Coordinates grouped by an equivalence-invariant label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinatePartition {
    /// Label of every coordinate; smaller labels come first.
    pub labels: Vec<u32>,
    /// Coordinates with equal label, ordered by label.
    pub cells: Vec<Vec<usize>>,
}

/// Everything the generators need to know about one code.
#[derive(Debug, Clone)]
pub struct CanonicalResult {
    /// Canonical representative; equivalent codes get identical matrices.
    pub rho: LinearCode,
    /// A map with `phi(code) = rho`.
    pub phi: SemimonomialMap,
    /// Generators of the automorphism group of the input code.
    pub aut: Vec<SemimonomialMap>,
    /// Coordinate orbits outside `zero_coords` and `weight_one_coords`, in canonical order.
    pub orbits: Vec<Vec<usize>>,
    /// Zero coordinates.
    pub zero_coords: Vec<usize>,
    /// Supports of weight-1 codewords.
    pub weight_one_coords: Vec<usize>,
    pub partition: CoordinatePartition,
    pub leaves: usize,
}

impl CanonicalResult {
    /// All coordinate orbits including `zero_coords` and `weight_one_coords`, sorted by smallest element.
    pub fn all_orbits(&self) -> Vec<Vec<usize>> {
        coordinate_orbits(&self.aut, self.rho.n())
    }

    pub fn special_orbit(&self, mode: Mode) -> Option<&[usize]> {
        special_orbit(self, mode)
    }
}

/// The special orbit. In row mode it is the first orbit outside `zero_coords ∪ weight_one_coords`
/// (undefined when there is none). In column mode a nonempty `zero_coords` takes
/// precedence, so codes with zero columns descend from the code with one
/// zero column fewer.
pub fn special_orbit(result: &CanonicalResult, mode: Mode) -> Option<&[usize]> {
    if mode == Mode::Column && !result.zero_coords.is_empty() {
        return Some(&result.zero_coords);
    }
    result.orbits.first().map(|o| o.as_slice())
}

/// Whether the coordinate `added` lies in the special orbit.
pub fn parent_test(result: &CanonicalResult, added: usize, mode: Mode) -> bool {
    special_orbit(result, mode).is_some_and(|o| o.contains(&added))
}

/// Parent test from the coordinate invariant alone, when it decides.
///
/// The special orbit lies in the smallest-label cell among coordinates
/// outside `zero_coords ∪ weight_one_coords` (or is `zero_coords` itself in column mode). If `added` is
/// elsewhere the test fails; if that cell is `{added}` it passes. Otherwise
/// the full canonical form is needed and `None` is returned.
pub fn quick_parent_test(code: &LinearCode, partition: &CoordinatePartition, added: usize, mode: Mode) -> Option<bool> {
    let zero_coords = code.zero_columns();
    if mode == Mode::Column && !zero_coords.is_empty() {
        return Some(zero_coords.contains(&added));
    }
    let weight_one_coords = code.weight_one_supports();
    let eligible = |j: &usize| !zero_coords.contains(j) && !weight_one_coords.contains(j);
    if !eligible(&added) {
        return Some(false);
    }
    let min_label = (0..code.n()).filter(eligible).map(|j| partition.labels[j]).min()?;
    if partition.labels[added] != min_label {
        return Some(false);
    }
    let cell_size = partition.cells[min_label as usize].iter().filter(|j| eligible(j)).count();
    (cell_size == 1).then_some(true)
}

/// Per-coordinate invariant built from the weights of the codewords that are
/// nonzero there, plus the number of columns proportional to it.
pub fn coordinate_invariant(code: &LinearCode) -> Result<CoordinatePartition, CodeError> {
    let n = code.n();
    let words = code.codewords()?;
    let mut counts = vec![vec![0u32; n + 1]; n];
    for w in words {
        let weight = w.weight() as usize;
        let mut s = w.support();
        while s != 0 {
            let j = s.trailing_zeros() as usize;
            counts[j][weight] += 1;
            s &= s - 1;
        }
    }
    let field = code.field();
    let normalized: Vec<Vec<u8>> = (0..n)
        .map(|j| {
            let mut c = code.column(j);
            field.normalize(&mut c);
            c
        })
        .collect();
    let tuples: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut t: Vec<u32> = counts[j][1..].to_vec();
            t.push(normalized.iter().filter(|c| **c == normalized[j]).count() as u32);
            t
        })
        .collect();
    let mut distinct = tuples.clone();
    distinct.sort();
    distinct.dedup();
    let labels: Vec<u32> = tuples.iter().map(|t| distinct.binary_search(t).unwrap() as u32).collect();
    let mut cells = vec![Vec::new(); distinct.len()];
    for (j, &l) in labels.iter().enumerate() {
        cells[l as usize].push(j);
    }
    Ok(CoordinatePartition { labels, cells })
}

/// Canonical form, automorphism generators and ordered orbits of `code`.
pub fn canonicalize(code: &LinearCode) -> Result<CanonicalResult, CodeError> {
    let partition = coordinate_invariant(code)?;
    canonicalize_with(code, partition)
}

pub(crate) fn canonicalize_with(code: &LinearCode, partition: CoordinatePartition) -> Result<CanonicalResult, CodeError> {
    let field = *code.field();
    let n = code.n();
    let zero_coords = code.zero_columns();
    let weight_one_coords = code.weight_one_supports();
    if code.k() == 0 {
        let aut = full_group_generators(&field, n);
        return Ok(CanonicalResult {
            rho: code.clone(),
            phi: SemimonomialMap::identity(n),
            aut,
            orbits: Vec::new(),
            zero_coords,
            weight_one_coords,
            partition,
            leaves: 0,
        });
    }
    let mut search = Search::new(code, &partition)?;
    search.run();
    let best = search.best.take().expect("search reaches a leaf");
    let mut aut = kernel_generators(code);
    aut.extend(search.gens.iter().map(|g| g.map.clone()));
    let rho = LinearCode::from_basis(field, n, best.rows.clone());
    let orbits_all = coordinate_orbits(&aut, n);
    let mut orbits: Vec<Vec<usize>> =
        orbits_all.into_iter().filter(|o| !zero_coords.contains(&o[0]) && !weight_one_coords.contains(&o[0])).collect();
    orbits.sort_by_key(|o| o.iter().map(|&j| best.phi.perm[j]).min());
    Ok(CanonicalResult { rho, phi: best.phi, aut, orbits, zero_coords, weight_one_coords, partition, leaves: search.leaves })
}

/// Automorphisms fixing every codeword: swaps of proportional columns and
/// scalings of zero columns.
fn kernel_generators(code: &LinearCode) -> Vec<SemimonomialMap> {
    let field = code.field();
    let n = code.n();
    let mut classes: HashMap<Vec<u8>, Vec<(usize, u8)>> = HashMap::new();
    for j in 0..n {
        let mut c = code.column(j);
        let lead = field.normalize(&mut c);
        classes.entry(c).or_default().push((j, lead));
    }
    let mut keys: Vec<_> = classes.keys().cloned().collect();
    keys.sort();
    let mut gens = Vec::new();
    for key in keys {
        let members = &classes[&key];
        let (j0, s0) = members[0];
        let zero = s0 == 0;
        for &(j, s) in &members[1..] {
            let mut m = SemimonomialMap::identity(n);
            m.perm.swap(j0, j);
            if !zero {
                // column j = mu * column j0
                let mu = field.mul(s, field.inv_unchecked(s0));
                m.scalars[j0] = field.inv_unchecked(mu);
                m.scalars[j] = mu;
            }
            gens.push(m);
        }
        if zero && field.q() > 2 {
            let mut m = SemimonomialMap::identity(n);
            m.scalars[j0] = field.primitive();
            gens.push(m);
        }
    }
    gens
}

/// One cell of the column partition, split by the current column scale:
/// `masks[0]` holds columns whose prefix is still zero, `masks[s]` columns
/// whose first nonzero entry is `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cell {
    masks: [u64; 4],
}

impl Cell {
    fn all(&self) -> u64 {
        self.masks[0] | self.masks[1] | self.masks[2] | self.masks[3]
    }
}

#[derive(Debug, Clone)]
struct State {
    cells: Vec<Cell>,
    span: Vec<bool>,
    prefix: Vec<u32>,
}

type Key = Vec<u8>;

#[derive(Debug, Clone)]
struct Gen {
    map: SemimonomialMap,
    word_perm: Vec<u32>,
    beta: u8,
}

#[derive(Debug, Clone)]
struct Leaf {
    alpha: u8,
    basis: Vec<u32>,
    keys: Vec<Key>,
    phi: SemimonomialMap,
    rows: Matrix,
}

struct Search<'a> {
    field: Field,
    n: usize,
    k: usize,
    /// codewords under each field automorphism, indexed by message
    words: Vec<Vec<Packed>>,
    plain: &'a [Packed],
    index: HashMap<Packed, u32>,
    root_cells: Vec<Cell>,
    gens: Vec<Gen>,
    best: Option<Leaf>,
    path_keys: Vec<Key>,
    leaves: usize,
}

/// Positions where a packed word equals each field element.
#[inline]
fn element_masks(w: Packed, q: u8, full: u64) -> [u64; 4] {
    match q {
        2 => [full & !w.lo, w.lo, 0, 0],
        3 => [full & !(w.lo | w.hi), w.lo, w.hi, 0],
        _ => [full & !(w.lo | w.hi), w.lo & !w.hi, w.hi & !w.lo, w.lo & w.hi],
    }
}

impl<'a> Search<'a> {
    fn new(code: &'a LinearCode, partition: &CoordinatePartition) -> Result<Search<'a>, CodeError> {
        let field = *code.field();
        let plain = code.codewords()?;
        let mut words = vec![plain.to_vec()];
        if field.automorphism_count() > 1 {
            words.push(plain.iter().map(|w| w.frobenius(&field)).collect());
        }
        let index = plain.iter().enumerate().map(|(i, &w)| (w, i as u32)).collect();
        let root_cells = partition
            .cells
            .iter()
            .map(|cell| {
                let mut m = 0u64;
                for &j in cell {
                    m |= 1u64 << j;
                }
                Cell { masks: [m, 0, 0, 0] }
            })
            .collect();
        let mut search = Search {
            field,
            n: code.n(),
            k: code.k(),
            words,
            plain,
            index,
            root_cells,
            gens: Vec::new(),
            best: None,
            path_keys: Vec::new(),
            leaves: 0,
        };
        // Scalar multiplication of the whole code is always an automorphism.
        if field.q() > 2 {
            let mut m = SemimonomialMap::identity(search.n);
            m.scalars = vec![field.primitive(); search.n];
            search.add_gen(m);
        }
        Ok(search)
    }

    fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn root_state(&self) -> State {
        let mut span = vec![false; self.plain.len()];
        span[0] = true;
        State { cells: self.root_cells.clone(), span, prefix: Vec::new() }
    }

    /// Sorted-row key of candidate word `x` relative to `state`.
    fn key(&self, alpha: u8, state: &State, x: u32) -> Key {
        let q = self.field.q();
        let w = self.words[alpha as usize][x as usize];
        let em = element_masks(w, q, self.full_mask());
        let mut key = Vec::with_capacity(state.cells.len() * (q as usize - 1));
        for cell in &state.cells {
            let size = cell.all().count_ones() as u8;
            let mut counts = [0u8; 4];
            // unset columns: value 0 stays 0, anything else becomes 1
            let z = cell.masks[0];
            if z != 0 {
                let zeros = (z & em[0]).count_ones() as u8;
                counts[0] += zeros;
                counts[1] += z.count_ones() as u8 - zeros;
            }
            for s in 1..q {
                let m = cell.masks[s as usize];
                if m == 0 {
                    continue;
                }
                for v in 0..q {
                    let e = self.field.mul(v, s);
                    counts[v as usize] += (m & em[e as usize]).count_ones() as u8;
                }
            }
            for v in 0..(q as usize - 1) {
                key.push(size - counts[v]);
            }
        }
        key
    }

    fn refine(&self, alpha: u8, state: &State, x: u32) -> State {
        let q = self.field.q();
        let f = &self.field;
        let w = self.words[alpha as usize][x as usize];
        let em = element_masks(w, q, self.full_mask());
        let mut cells = Vec::with_capacity(state.cells.len() * 2);
        for cell in &state.cells {
            for v in 0..q {
                let mut out = Cell { masks: [0; 4] };
                if v == 0 {
                    out.masks[0] = cell.masks[0] & em[0];
                } else if v == 1 {
                    for e in 1..q {
                        out.masks[e as usize] |= cell.masks[0] & em[e as usize];
                    }
                }
                for s in 1..q {
                    let m = cell.masks[s as usize];
                    if m != 0 {
                        out.masks[s as usize] |= m & em[f.mul(v, s) as usize];
                    }
                }
                if out.all() != 0 {
                    cells.push(out);
                }
            }
        }
        let mut span = state.span.clone();
        let plain_x = self.plain[x as usize];
        let members: Vec<usize> = (0..span.len()).filter(|&i| state.span[i]).collect();
        for c in 1..q {
            let shift = plain_x.scale(c, f);
            for &i in &members {
                let y = self.plain[i].add(shift, f);
                span[self.index[&y] as usize] = true;
            }
        }
        let mut prefix = state.prefix.clone();
        prefix.push(x);
        State { cells, span, prefix }
    }

    /// Minimal key among the candidates of `state`, and the candidates
    /// attaining it.
    fn min_candidates(&self, alpha: u8, state: &State) -> (Key, Vec<u32>) {
        let mut best: Option<Key> = None;
        let mut ties = Vec::new();
        for x in 0..self.plain.len() as u32 {
            if state.span[x as usize] {
                continue;
            }
            let key = self.key(alpha, state, x);
            match best.as_ref().map(|b| key.cmp(b)) {
                None | Some(Ordering::Less) => {
                    best = Some(key);
                    ties.clear();
                    ties.push(x);
                }
                Some(Ordering::Equal) => ties.push(x),
                Some(Ordering::Greater) => {}
            }
        }
        (best.expect("a basis can always be extended"), ties)
    }

    fn candidates_matching(&self, alpha: u8, state: &State, key: &Key) -> Vec<u32> {
        (0..self.plain.len() as u32).filter(|&x| !state.span[x as usize] && self.key(alpha, state, x) == *key).collect()
    }

    /// The leaf map: columns go to their sorted position and are scaled to
    /// a leading 1.
    fn leaf(&self, alpha: u8, state: &State, keys: Vec<Key>) -> Leaf {
        let f = &self.field;
        let mut perm = vec![0usize; self.n];
        let mut scalars = vec![1u8; self.n];
        let mut pos = 0;
        for cell in &state.cells {
            let mut all = cell.all();
            while all != 0 {
                let j = all.trailing_zeros() as usize;
                all &= all - 1;
                perm[j] = pos;
                let s = (0..4).find(|&s| cell.masks[s] >> j & 1 == 1).unwrap() as u8;
                if s != 0 {
                    // auto(lambda * v) = s^-1 * auto(v)
                    scalars[pos] = f.auto(f.inv_unchecked(s), f.auto_inverse(alpha));
                }
                pos += 1;
            }
        }
        let phi = SemimonomialMap { perm, scalars, auto: alpha };
        let rows = state.prefix.iter().map(|&x| phi.apply_unchecked(f, &self.plain[x as usize].to_vec(self.n))).collect();
        Leaf { alpha, basis: state.prefix.clone(), keys, phi, rows }
    }

    fn word_perm(&self, map: &SemimonomialMap) -> Vec<u32> {
        self.plain
            .iter()
            .map(|w| {
                let img = map.apply_unchecked(&self.field, &w.to_vec(self.n));
                self.index[&Packed::from_slice(&img)]
            })
            .collect()
    }

    fn add_gen(&mut self, map: SemimonomialMap) -> bool {
        if map.is_identity() || self.gens.iter().any(|g| g.map == map) {
            return false;
        }
        let word_perm = self.word_perm(&map);
        let beta = map.auto;
        self.gens.push(Gen { map, word_perm, beta });
        true
    }

    /// Automorphism taking the best leaf's basis to `leaf`'s basis.
    fn gen_between(&self, best: &Leaf, leaf: &Leaf) -> SemimonomialMap {
        leaf.phi.invert(&self.field).compose_unchecked(&self.field, &best.phi)
    }

    fn stabilizer(&self, prefix: &[u32]) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| {
                let g = &self.gens[i];
                g.beta == 0 && prefix.iter().all(|&p| g.word_perm[p as usize] == p)
            })
            .collect()
    }

    fn orbit_of(&self, gens: &[usize], start: u32) -> Vec<bool> {
        let mut seen = vec![false; self.plain.len()];
        seen[start as usize] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.gens[g].word_perm[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Whether `x` is in the orbit of an already explored sibling under the
    /// automorphisms fixing `prefix`.
    fn pruned(&self, prefix: &[u32], explored: &[u32], x: u32) -> bool {
        if explored.is_empty() {
            return false;
        }
        let stab = self.stabilizer(prefix);
        if stab.is_empty() {
            return false;
        }
        let orbit = self.orbit_of(&stab, x);
        explored.iter().any(|&e| orbit[e as usize])
    }

    fn compare_path(&self, key: &Key) -> Ordering {
        let Some(best) = &self.best else {
            return Ordering::Less;
        };
        let depth = self.path_keys.len();
        for (a, b) in self.path_keys.iter().zip(&best.keys) {
            match a.cmp(b) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        key.cmp(&best.keys[depth])
    }

    fn run(&mut self) {
        let autos = self.field.automorphism_count();
        let mut explored_alpha: Vec<u8> = Vec::new();
        for alpha in 0..autos {
            let covered = explored_alpha
                .iter()
                .any(|&e| self.gens.iter().any(|g| self.field.auto_compose(e, self.field.auto_inverse(g.beta)) == alpha));
            if covered {
                continue;
            }
            let root = self.root_state();
            self.explore(alpha, root);
            explored_alpha.push(alpha);
        }
        self.complete_generators();
    }

    fn explore(&mut self, alpha: u8, state: State) {
        let depth = state.prefix.len();
        if depth == self.k {
            self.leaves += 1;
            let leaf = self.leaf(alpha, &state, self.path_keys.clone());
            let ord = match &self.best {
                None => Ordering::Less,
                Some(b) => leaf.keys.cmp(&b.keys),
            };
            match ord {
                Ordering::Less => self.best = Some(leaf),
                Ordering::Equal => {
                    let best = self.best.as_ref().unwrap();
                    let g = self.gen_between(best, &leaf);
                    self.add_gen(g);
                }
                Ordering::Greater => {}
            }
            return;
        }
        let (key, ties) = self.min_candidates(alpha, &state);
        if self.compare_path(&key) == Ordering::Greater {
            return;
        }
        self.path_keys.push(key);
        let mut explored = Vec::new();
        for x in ties {
            if self.pruned(&state.prefix, &explored, x) {
                continue;
            }
            let child = self.refine(alpha, &state, x);
            self.explore(alpha, child);
            explored.push(x);
            // a better leaf elsewhere may have made this node's prefix worse
            if self.compare_path_prefix() == Ordering::Greater {
                break;
            }
        }
        self.path_keys.pop();
    }

    fn compare_path_prefix(&self) -> Ordering {
        let Some(best) = &self.best else {
            return Ordering::Less;
        };
        for (a, b) in self.path_keys.iter().zip(&best.keys) {
            match a.cmp(b) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// Make the generators generate the full automorphism group, working up
    /// the best leaf's path from the deepest stabilizer.
    fn complete_generators(&mut self) {
        let best = self.best.clone().expect("best leaf");
        let mut states = vec![self.root_state()];
        for &b in &best.basis {
            let next = self.refine(best.alpha, states.last().unwrap(), b);
            states.push(next);
        }
        for depth in (0..self.k).rev() {
            let state = &states[depth];
            let candidates = self.candidates_matching(best.alpha, state, &best.keys[depth]);
            let mut rejected = vec![false; self.plain.len()];
            for x in candidates {
                if rejected[x as usize] {
                    continue;
                }
                let stab = self.stabilizer(&state.prefix);
                let orbit = self.orbit_of(&stab, best.basis[depth]);
                if orbit[x as usize] {
                    continue;
                }
                let child = self.refine(best.alpha, state, x);
                match self.find_equal_leaf(best.alpha, child, &best) {
                    Some(leaf) => {
                        let g = self.gen_between(&best, &leaf);
                        self.add_gen(g);
                    }
                    None => {
                        for (y, &inside) in self.orbit_of(&stab, x).iter().enumerate() {
                            if inside {
                                rejected[y] = true;
                            }
                        }
                    }
                }
            }
        }
        for alpha in 0..self.field.automorphism_count() {
            if alpha == best.alpha {
                continue;
            }
            let reached = self.gens.iter().any(|g| self.field.auto_compose(best.alpha, self.field.auto_inverse(g.beta)) == alpha);
            if reached {
                continue;
            }
            let root = self.root_state();
            if let Some(leaf) = self.find_equal_leaf(alpha, root, &best) {
                let g = self.gen_between(&best, &leaf);
                self.add_gen(g);
            }
        }
    }

    /// Any leaf below `state` whose matrix equals the best one.
    fn find_equal_leaf(&mut self, alpha: u8, state: State, best: &Leaf) -> Option<Leaf> {
        let depth = state.prefix.len();
        if depth == self.k {
            self.leaves += 1;
            return Some(self.leaf(alpha, &state, best.keys.clone()));
        }
        let candidates = self.candidates_matching(alpha, &state, &best.keys[depth]);
        let mut explored = Vec::new();
        for x in candidates {
            if self.pruned(&state.prefix, &explored, x) {
                continue;
            }
            let child = self.refine(alpha, &state, x);
            if let Some(leaf) = self.find_equal_leaf(alpha, child, best) {
                return Some(leaf);
            }
            explored.push(x);
        }
        None
    }
}

/// Canonical data for a code and its dual at once, computed on whichever
/// side has the smaller dimension and transported to the other:
/// `rho(C^⊥) = rho(C)^⊥`, the same permutations, dualized scalars, and the
/// zero-coordinate and weight-1 orbits swapped.
#[derive(Debug, Clone)]
pub struct DualCanonical {
    pub primal: CanonicalResult,
    pub dual: CanonicalResult,
    /// First orbit outside the zero and weight-1 coordinates; identical on
    /// both sides.
    pub special: Option<Vec<usize>>,
}

pub fn dual_consistent_canonicalize(code: &LinearCode) -> Result<DualCanonical, CodeError> {
    let dual = code.dual();
    let (small, large) = if code.k() <= dual.k() { (code, &dual) } else { (&dual, code) };
    let base = canonicalize(small)?;
    let field = code.field();
    let phi = base.phi.dualize(field);
    let moved = CanonicalResult {
        rho: phi.apply_code(large).expect("same length"),
        phi,
        aut: base.aut.iter().map(|g| g.dualize(field)).collect(),
        orbits: base.orbits.clone(),
        zero_coords: base.weight_one_coords.clone(),
        weight_one_coords: base.zero_coords.clone(),
        partition: base.partition.clone(),
        leaves: base.leaves,
    };
    let special = base.orbits.first().cloned();
    let (primal, dual) = if code.k() <= dual.k() { (base, moved) } else { (moved, base) };
    Ok(DualCanonical { primal, dual, special })
}
