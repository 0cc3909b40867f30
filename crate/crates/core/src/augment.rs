//! The two generation engines.
//!
//! Column mode starts from `I_k` and appends one column per level; the
//! parent of a code is its puncture at the special orbit. Row mode starts
//! from the zero code of length `n - k` and appends a row and a column per
//! level; the parent is the shortening at the special orbit. In both modes
//! a node produces one child per orbit of extension vectors under its
//! automorphism group and keeps the children whose new coordinate lies in
//! their special orbit, which yields exactly one code per equivalence class.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use log::{debug, info};
use rayon::prelude::*;
use thiserror::Error;

use crate::candidates::{row_candidates, RowTargets};
use crate::canon::{canonicalize, canonicalize_with, coordinate_invariant, parent_test, quick_parent_test, Mode};
use crate::code::{CodeError, LinearCode};
use crate::constraints::{validate, ConstraintError, ConstraintSet, Validated};
use crate::gf::Field;
use crate::linalg::Matrix;
use crate::symmetry::{full_group_generators, vector_orbit_reps, SemimonomialMap, Side, SymmetryError, UnionFind};

pub use crate::constraints::{distance_schedule, dual_schedule};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Everything a run needs.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub constraints: ConstraintSet,
    /// Starting codes; empty means the trivial root.
    pub seeds: Vec<LinearCode>,
    /// Worker threads; 1 runs sequentially.
    pub jobs: usize,
}

impl RunContext {
    pub fn new(field: Field, n: usize, k: usize, mode: Mode, constraints: ConstraintSet) -> RunContext {
        RunContext { field, n, k, mode, constraints, seeds: Vec::new(), jobs: 1 }
    }
}

/// Counters of one run. `per_level[i]` counts the codes accepted at level
/// `i`; `level_complete[i]` counts those that also meet every final
/// predicate, i.e. the classification for their own length and dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub nodes_expanded: u64,
    pub children_generated: u64,
    pub parent_test_passes: u64,
    pub parent_test_failures: u64,
    pub canonical_forms: u64,
    pub per_level: Vec<u64>,
    pub level_complete: Vec<u64>,
}

#[derive(Default)]
struct Counters {
    nodes: AtomicU64,
    children: AtomicU64,
    passes: AtomicU64,
    failures: AtomicU64,
    canon: AtomicU64,
    per_level: Vec<AtomicU64>,
    complete: Vec<AtomicU64>,
}

impl Counters {
    fn new(levels: usize) -> Counters {
        Counters {
            per_level: (0..=levels).map(|_| AtomicU64::new(0)).collect(),
            complete: (0..=levels).map(|_| AtomicU64::new(0)).collect(),
            ..Default::default()
        }
    }

    fn snapshot(&self) -> RunStats {
        let load = |a: &AtomicU64| a.load(Ordering::Relaxed);
        RunStats {
            nodes_expanded: load(&self.nodes),
            children_generated: load(&self.children),
            parent_test_passes: load(&self.passes),
            parent_test_failures: load(&self.failures),
            canonical_forms: load(&self.canon),
            per_level: self.per_level.iter().map(load).collect(),
            level_complete: self.complete.iter().map(load).collect(),
        }
    }
}

fn bump(a: &AtomicU64) {
    a.fetch_add(1, Ordering::Relaxed);
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// Pairwise inequivalent codes meeting every final predicate, in the
    /// form they were built: `(I_k | A)` in column mode, `(A | I_k)` in row
    /// mode.
    pub codes: Vec<LinearCode>,
    pub stats: RunStats,
    pub warnings: Vec<String>,
}

/// A child code and the extension vector that produced it.
#[derive(Debug, Clone)]
pub struct Child {
    pub code: LinearCode,
    pub added: Vec<u8>,
}

/// One child per orbit of `F_q^k` under the automorphisms of `code`
/// (generator `(I_k | A)`), keeping those that meet the step predicates of
/// `level + 1`.
pub fn children_column(code: &LinearCode, aut: &[SemimonomialMap], v: &Validated, level: usize) -> Result<Vec<Child>, EngineError> {
    let orbits = vector_orbit_reps(code, aut, Side::Column)?;
    let mut out = Vec::new();
    for a in orbits.reps {
        if v.set.d_dual > 1 && a.iter().all(|&x| x == 0) {
            continue;
        }
        let child = code.extend_column(&a);
        if v.check_step(&child, level + 1)? {
            out.push(Child { code: child, added: a });
        }
    }
    Ok(out)
}

/// The code `((A; a) | I_{s+1})` from `(A | I_s)`.
pub fn extend_row(code: &LinearCode, r: usize, a: &[u8]) -> LinearCode {
    let s = code.k();
    let mut rows: Matrix = code
        .generator()
        .iter()
        .map(|row| {
            let mut row = row.clone();
            row.push(0);
            row
        })
        .collect();
    let mut new = a.to_vec();
    new.extend(std::iter::repeat_n(0, s));
    new.push(1);
    rows.push(new);
    debug_assert_eq!(rows[0].len(), r + s + 1);
    LinearCode::from_basis(*code.field(), r + s + 1, rows)
}

/// The action of an automorphism of `(A | I_s)` on row extension vectors:
/// `a` goes to the `A`-part of `g(a | 0)` reduced modulo the node.
pub fn row_action(field: &Field, code: &LinearCode, r: usize, g: &SemimonomialMap, a: &[u8]) -> Vec<u8> {
    let s = code.k();
    let mut v = a.to_vec();
    v.extend(std::iter::repeat_n(0, s));
    let img = g.apply_unchecked(field, &v);
    let mut out = img[..r].to_vec();
    for (i, row) in code.generator().iter().enumerate() {
        let c = img[r + i];
        if c != 0 {
            field.axpy(&mut out, field.neg(c), &row[..r]);
        }
    }
    out
}

/// One child per orbit of row extension vectors of `(A | I_s)`, keeping
/// those that meet the step predicates of `level + 1`.
pub fn children_row(code: &LinearCode, aut: &[SemimonomialMap], v: &Validated, level: usize) -> Result<Vec<Child>, EngineError> {
    let field = *code.field();
    let s = code.k();
    let r = code.n() - s;
    let a_part: Matrix = code.generator().iter().map(|row| row[..r].to_vec()).collect();
    let goals = RowTargets {
        d: v.set.d,
        divisor: v.effective_divisor(),
        form: v.effective_form(),
        fill_zero_columns: v.dual_distance_at(level + 1) >= 2,
    };
    let mut candidates = Vec::new();
    for a in row_candidates(&field, &a_part, r, goals) {
        let child = extend_row(code, r, &a);
        if v.check_step(&child, level + 1)? {
            candidates.push(Child { code: child, added: a });
        }
    }
    if candidates.len() <= 1 {
        return Ok(candidates);
    }
    // Group-sorted form: values in ascending order within every group of
    // identical columns of A.
    let mut group_positions: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for j in 0..r {
        let col: Vec<u8> = a_part.iter().map(|row| row[j]).collect();
        group_positions.entry(col).or_default().push(j);
    }
    let groups: Vec<Vec<usize>> = group_positions.into_values().filter(|g| g.len() > 1).collect();
    let sort_groups = |mut a: Vec<u8>| {
        for g in &groups {
            let mut vals: Vec<u8> = g.iter().map(|&j| a[j]).collect();
            vals.sort_unstable();
            for (&j, x) in g.iter().zip(vals) {
                a[j] = x;
            }
        }
        a
    };
    let index: HashMap<&[u8], usize> = candidates.iter().enumerate().map(|(i, c)| (c.added.as_slice(), i)).collect();
    let mut uf = UnionFind::new(candidates.len());
    for g in aut {
        for (i, c) in candidates.iter().enumerate() {
            let img = sort_groups(row_action(&field, code, r, g, &c.added));
            if let Some(&j) = index.get(img.as_slice()) {
                uf.union(i, j);
            }
        }
    }
    // The generator images above only merge some orbits. Children from the
    // same orbit are equivalent by a map fixing the new coordinate and vice
    // versa, so a canonical form with that coordinate singled out settles
    // the rest.
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, c) in candidates.into_iter().enumerate() {
        if uf.find(i) != i {
            continue;
        }
        if seen.insert(marked_canonical_form(&c.code)?) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Canonical matrix of `code` among equivalences that fix its last
/// coordinate.
fn marked_canonical_form(code: &LinearCode) -> Result<Matrix, EngineError> {
    let mut p = coordinate_invariant(code)?;
    let last = code.n() - 1;
    let old = p.labels[last] as usize;
    p.cells[old].retain(|&j| j != last);
    p.labels[last] = p.cells.len() as u32;
    p.cells.push(vec![last]);
    if p.cells[old].is_empty() {
        p.cells.remove(old);
        for l in p.labels.iter_mut() {
            if *l as usize > old {
                *l -= 1;
            }
        }
    }
    Ok(canonicalize_with(code, p)?.rho.generator().clone())
}

/// Equivalent code whose information set sits at the front (column mode)
/// or the back (row mode), with the identity block in place.
pub fn systematic_for(code: &LinearCode, mode: Mode) -> LinearCode {
    let (m, piv) = code.rref();
    let others: Vec<usize> = (0..code.n()).filter(|j| !piv.contains(j)).collect();
    let order: Vec<usize> = match mode {
        Mode::Column => piv.iter().chain(&others).copied().collect(),
        Mode::Row => others.iter().chain(&piv).copied().collect(),
    };
    let gen = m.iter().map(|row| order.iter().map(|&j| row[j]).collect()).collect();
    LinearCode::from_basis(*code.field(), code.n(), gen)
}

struct Engine<'a> {
    v: &'a Validated,
    counters: Counters,
    parallel: bool,
}

impl Engine<'_> {
    fn children(&self, code: &LinearCode, aut: &[SemimonomialMap], level: usize) -> Result<Vec<Child>, EngineError> {
        match self.v.mode {
            Mode::Column => children_column(code, aut, self.v, level),
            Mode::Row => children_row(code, aut, self.v, level),
        }
    }

    /// Parent test of a child; on success returns its automorphism
    /// generators, which are only computed when the child will be expanded.
    fn accept(&self, child: &LinearCode, need_aut: bool) -> Result<Option<Vec<SemimonomialMap>>, EngineError> {
        let added = child.n() - 1;
        let partition = coordinate_invariant(child)?;
        let quick = quick_parent_test(child, &partition, added, self.v.mode);
        if quick == Some(false) {
            return Ok(None);
        }
        if quick == Some(true) && !need_aut {
            return Ok(Some(Vec::new()));
        }
        bump(&self.counters.canon);
        let result = canonicalize_with(child, partition)?;
        Ok(parent_test(&result, added, self.v.mode).then_some(result.aut))
    }

    fn record(&self, code: &LinearCode, level: usize) -> Result<(), EngineError> {
        bump(&self.counters.per_level[level]);
        if self.v.check_complete(code)? {
            bump(&self.counters.complete[level]);
        }
        Ok(())
    }

    fn expand(&self, code: &LinearCode, aut: &[SemimonomialMap], level: usize) -> Result<Vec<LinearCode>, EngineError> {
        if level == self.v.final_level() {
            return Ok(if self.v.check_final(code)? { vec![code.clone()] } else { Vec::new() });
        }
        bump(&self.counters.nodes);
        let children = self.children(code, aut, level)?;
        let next = level + 1;
        let need_aut = next < self.v.final_level();
        let visit = |child: &Child| -> Result<Vec<LinearCode>, EngineError> {
            bump(&self.counters.children);
            match self.accept(&child.code, need_aut)? {
                None => {
                    bump(&self.counters.failures);
                    Ok(Vec::new())
                }
                Some(child_aut) => {
                    bump(&self.counters.passes);
                    self.record(&child.code, next)?;
                    self.expand(&child.code, &child_aut, next)
                }
            }
        };
        let parts: Vec<Vec<LinearCode>> = if self.parallel {
            children.par_iter().map(visit).collect::<Result<_, _>>()?
        } else {
            children.iter().map(visit).collect::<Result<_, _>>()?
        };
        Ok(parts.into_iter().flatten().collect())
    }
}

/// Roots of the search: the trivial code, or the certified seeds with
/// duplicates removed.
fn roots(ctx: &RunContext, v: &Validated) -> Result<Vec<(LinearCode, Vec<SemimonomialMap>, usize)>, EngineError> {
    let field = ctx.field;
    if ctx.seeds.is_empty() {
        let root = match ctx.mode {
            Mode::Column => LinearCode::identity(field, ctx.k),
            Mode::Row => LinearCode::zero(field, ctx.n - ctx.k),
        };
        let aut = full_group_generators(&field, root.n());
        return Ok(vec![(root, aut, 0)]);
    }
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (index, seed) in ctx.seeds.iter().enumerate() {
        let reject = |reason: String| EngineError::Constraint(ConstraintError::Seed { index, reason });
        if seed.field().q() != field.q() {
            return Err(reject(format!("seed is over GF({}), run is over GF({})", seed.field().q(), field.q())));
        }
        let level = match ctx.mode {
            Mode::Column if seed.k() == ctx.k && seed.n() >= ctx.k && seed.n() <= ctx.n => seed.n() - ctx.k,
            Mode::Row if seed.k() <= ctx.k && seed.n() == ctx.n - ctx.k + seed.k() => seed.k(),
            _ => {
                return Err(reject(format!(
                    "a [{}, {}] seed does not fit a {:?}-mode run for [{}, {}]",
                    seed.n(),
                    seed.k(),
                    ctx.mode,
                    ctx.n,
                    ctx.k
                )))
            }
        };
        let code = systematic_for(seed, ctx.mode);
        if !v.check_step(&code, level)? {
            return Err(reject("seed fails the constraints of its level".into()));
        }
        let result = canonicalize(&code)?;
        if seen.insert(result.rho.generator().clone()) {
            out.push((code, result.aut, level));
        }
    }
    Ok(out)
}

/// Classify all codes of the requested class up to equivalence.
pub fn generate(ctx: &RunContext) -> Result<RunOutput, EngineError> {
    let v = validate(ctx.field, ctx.n, ctx.k, ctx.mode, ctx.constraints)?;
    let roots = roots(ctx, &v)?;
    let engine = Engine { v: &v, counters: Counters::new(v.final_level()), parallel: ctx.jobs > 1 };
    let run = || -> Result<Vec<LinearCode>, EngineError> {
        let mut codes = Vec::new();
        for (code, aut, level) in &roots {
            engine.record(code, *level)?;
            codes.extend(engine.expand(code, aut, *level)?);
        }
        Ok(codes)
    };
    let codes = if ctx.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(ctx.jobs).build().map_err(|e| EngineError::Pool(e.to_string()))?;
        pool.install(run)?
    } else {
        run()?
    };
    let stats = engine.counters.snapshot();
    info!("classified {} codes", codes.len());
    debug!("{stats:?}");
    Ok(RunOutput { codes, stats, warnings: v.warnings.clone() })
}
