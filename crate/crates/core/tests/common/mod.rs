//! Helpers shared by the integration tests: random codes and maps, a
//! transparent walk of the generation tree, and the structural checks run on
//! it.
#![allow(dead_code)]

use codeclass::augment::{children_column, children_row, extend_row, row_action, systematic_for};
use codeclass::canon::{canonicalize, parent_test, Mode};
use codeclass::code::LinearCode;
use codeclass::constraints::{validate, ConstraintSet};
use codeclass::gf::{Field, Form};
use codeclass::linalg::Matrix;
use codeclass::oracle::equivalent_bruteforce;
use codeclass::symmetry::{full_group_generators, induced_action, induced_maps, vector_orbit_reps, SemimonomialMap, Side};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn field(q: u32) -> Field {
    Field::new(q).unwrap()
}

pub fn random_map(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> SemimonomialMap {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let scalars = (0..n).map(|_| rng.gen_range(1..field.q())).collect();
    let auto = rng.gen_range(0..field.automorphism_count());
    SemimonomialMap::new(field, perm, scalars, auto).unwrap()
}

pub fn random_code(field: Field, n: usize, k: usize, rng: &mut ChaCha8Rng) -> LinearCode {
    loop {
        let rows: Matrix = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..field.q())).collect()).collect();
        if let Ok(c) = LinearCode::from_rows(field, k, n, rows) {
            return c;
        }
    }
}

/// Oracle equivalence, skipping the search when the weight distributions
/// already differ.
pub fn equivalent(a: &LinearCode, b: &LinearCode) -> bool {
    if a.weight_distribution().unwrap() != b.weight_distribution().unwrap() {
        return false;
    }
    equivalent_bruteforce(a, b).expect("within the oracle's reach").is_some()
}

/// A random element of the group generated by `gens`.
pub fn random_word(field: &Field, n: usize, gens: &[SemimonomialMap], rng: &mut ChaCha8Rng) -> SemimonomialMap {
    let mut g = SemimonomialMap::identity(n);
    if gens.is_empty() {
        return g;
    }
    for _ in 0..rng.gen_range(1..6) {
        g = g.compose(field, &gens[rng.gen_range(0..gens.len())]).unwrap();
    }
    g
}

/// A code in the generation tree together with its automorphism generators.
#[derive(Debug, Clone)]
pub struct Node {
    pub code: LinearCode,
    pub aut: Vec<SemimonomialMap>,
    pub level: usize,
}

/// One child considered during the walk.
#[derive(Debug, Clone)]
pub struct Edge {
    pub parent: usize,
    pub child: LinearCode,
    pub passed: bool,
}

/// Every node and every child produced by a run, computed with the public
/// building blocks instead of the engine.
#[derive(Debug, Clone)]
pub struct Walk {
    pub mode: Mode,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub leaves: Vec<LinearCode>,
    pub final_level: usize,
}

pub fn walk(field: Field, n: usize, k: usize, mode: Mode, set: ConstraintSet) -> Walk {
    let v = validate(field, n, k, mode, set).unwrap();
    let root = match mode {
        Mode::Column => LinearCode::identity(field, k),
        Mode::Row => LinearCode::zero(field, n - k),
    };
    let aut = full_group_generators(&field, root.n());
    let mut w =
        Walk { mode, nodes: vec![Node { code: root, aut, level: 0 }], edges: Vec::new(), leaves: Vec::new(), final_level: v.final_level() };
    let mut next = 0;
    while next < w.nodes.len() {
        let node = w.nodes[next].clone();
        if node.level == v.final_level() {
            if v.check_final(&node.code).unwrap() {
                w.leaves.push(node.code);
            }
            next += 1;
            continue;
        }
        let children = match mode {
            Mode::Column => children_column(&node.code, &node.aut, &v, node.level),
            Mode::Row => children_row(&node.code, &node.aut, &v, node.level),
        }
        .unwrap();
        for c in children {
            let result = canonicalize(&c.code).unwrap();
            let passed = parent_test(&result, c.code.n() - 1, mode);
            if passed {
                w.nodes.push(Node { code: c.code.clone(), aut: result.aut, level: node.level + 1 });
            }
            w.edges.push(Edge { parent: next, child: c.code, passed });
        }
        next += 1;
    }
    w
}

/// Outcome of a batch of checks.
#[derive(Debug, Default, Clone, Copy)]
pub struct Tally {
    pub checks: usize,
    pub failures: usize,
}

impl Tally {
    pub fn record(&mut self, ok: bool) {
        self.checks += 1;
        self.failures += usize::from(!ok);
    }

    pub fn add(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures += other.failures;
    }
}

/// Passing children that are equivalent have equivalent parents. Besides
/// the tree nodes, every node is also entered as a random equivalent copy,
/// so equivalent passing children from distinct parents actually occur.
pub fn check_equivalent_children_have_equivalent_parents(w: &Walk, set: ConstraintSet, n: usize, k: usize, rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let field = *w.nodes[0].code.field();
    let v = validate(field, n, k, w.mode, set).unwrap();
    // (parent, passing child)
    let mut passed: Vec<(LinearCode, LinearCode)> = Vec::new();
    for node in w.nodes.iter().filter(|x| x.level < w.final_level) {
        let psi = random_map(&field, node.code.n(), rng);
        let copy = systematic_for(&psi.apply_code(&node.code).unwrap(), w.mode);
        let copy_aut = canonicalize(&copy).unwrap().aut;
        for (parent, aut) in [(&node.code, &node.aut), (&copy, &copy_aut)] {
            for (child, ok) in children_of(parent, aut, node.level, w.mode, &v) {
                if ok {
                    passed.push((parent.clone(), child));
                }
            }
        }
    }
    for (i, (pa, a)) in passed.iter().enumerate() {
        for (pb, b) in &passed[i + 1..] {
            if a.n() != b.n() || !equivalent(a, b) {
                continue;
            }
            let ra = canonicalize(pa).unwrap().rho;
            let rb = canonicalize(pb).unwrap().rho;
            t.record(ra.generator() == rb.generator());
        }
    }
    t
}

fn children_of(
    code: &LinearCode,
    aut: &[SemimonomialMap],
    level: usize,
    mode: Mode,
    v: &codeclass::constraints::Validated,
) -> Vec<(LinearCode, bool)> {
    let children = match mode {
        Mode::Column => children_column(code, aut, v, level),
        Mode::Row => children_row(code, aut, v, level),
    }
    .unwrap();
    children
        .into_iter()
        .map(|c| {
            let passed = parent_test(&canonicalize(&c.code).unwrap(), c.code.n() - 1, mode);
            (c.code, passed)
        })
        .collect()
}

/// For a parent `A1` and an equivalent `A2`, every passing child of `A1` is
/// equivalent to some passing child of `A2`.
pub fn check_equivalent_parents_share_children(w: &Walk, set: ConstraintSet, n: usize, k: usize, rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let field = *w.nodes[0].code.field();
    let v = validate(field, n, k, w.mode, set).unwrap();
    for node in w.nodes.iter().filter(|x| x.level < v.final_level()) {
        let psi = random_map(&field, node.code.n(), rng);
        let a2 = systematic_for(&psi.apply_code(&node.code).unwrap(), w.mode);
        let aut2 = canonicalize(&a2).unwrap().aut;
        let mine = children_of(&node.code, &node.aut, node.level, w.mode, &v);
        let theirs = children_of(&a2, &aut2, node.level, w.mode, &v);
        for (b1, _) in mine.iter().filter(|c| c.1) {
            t.record(theirs.iter().any(|(b2, ok)| *ok && equivalent(b1, b2)));
        }
    }
    t
}

fn random_vector(field: &Field, dim: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    (0..dim).map(|_| rng.gen_range(0..field.q())).collect()
}

/// Extension vectors related by an automorphism of the parent lie in one
/// orbit, give equivalent children, and get the same parent-test outcome.
pub fn check_orbit_mates_give_equivalent_children(w: &Walk, samples: usize, rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    for node in w.nodes.iter().filter(|x| x.level < w.final_level) {
        let code = &node.code;
        let field = *code.field();
        let (n, k) = (code.n(), code.k());
        let side = match w.mode {
            Mode::Column => Side::Column,
            Mode::Row => Side::Row,
        };
        let dim = if w.mode == Mode::Column { k } else { n - k };
        if dim == 0 {
            continue;
        }
        let orbits = vector_orbit_reps(code, &node.aut, side).unwrap();
        for _ in 0..samples {
            let g = random_word(&field, n, &node.aut, rng);
            let x = random_vector(&field, dim, rng);
            let (y, bx, by) = match w.mode {
                Mode::Column => {
                    let y = induced_action(&field, &g, code.generator()).unwrap().act(&field, &x);
                    let (bx, by) = (code.extend_column(&x), code.extend_column(&y));
                    (y, bx, by)
                }
                Mode::Row => {
                    let y = row_action(&field, code, dim, &g, &x);
                    let (bx, by) = (extend_row(code, dim, &x), extend_row(code, dim, &y));
                    (y, bx, by)
                }
            };
            t.record(orbits.orbit_of[field.vec_index(&x)] == orbits.orbit_of[field.vec_index(&y)]);
            t.record(equivalent(&bx, &by));
            let px = parent_test(&canonicalize(&bx).unwrap(), n, w.mode);
            let py = parent_test(&canonicalize(&by).unwrap(), n, w.mode);
            t.record(px == py);
        }
    }
    t
}

/// Automorphism generators fix the code and its dual, induced maps reproduce
/// the image of the generator matrix, and vector orbits are closed and
/// partition the space.
pub fn check_symmetry_invariants(code: &LinearCode, aut: &[SemimonomialMap], side: Side) -> Tally {
    let mut t = Tally::default();
    let field = *code.field();
    let dual = code.dual();
    for g in aut {
        t.record(g.apply_code(code).unwrap().same_code(code));
        t.record(g.dualize(&field).apply_code(&dual).unwrap().same_code(&dual));
        let m = induced_action(&field, g, code.generator()).unwrap();
        let ok = code.generator().iter().zip(&m.matrix).all(|(row, coeffs)| {
            let mut combo = vec![0u8; code.n()];
            for (c, basis) in coeffs.iter().zip(code.generator()) {
                field.axpy(&mut combo, *c, basis);
            }
            combo == g.apply(&field, row).unwrap()
        });
        t.record(ok);
    }
    let dim = if side == Side::Column { code.k() } else { code.n() - code.k() };
    let orbits = vector_orbit_reps(code, aut, side).unwrap();
    t.record(orbits.sizes.iter().sum::<usize>() == (field.q() as usize).pow(dim as u32));
    for m in induced_maps(code, aut, side).unwrap() {
        for (id, r) in orbits.reps.iter().enumerate() {
            t.record(orbits.orbit_of[field.vec_index(&m.act(&field, r))] as usize == id);
        }
    }
    t
}

pub fn plain(d: usize, d_dual: usize) -> ConstraintSet {
    ConstraintSet { d, d_dual, ..Default::default() }
}

/// Small runs covering both modes and all three fields.
pub fn tree_corpus() -> Vec<(u32, usize, usize, Mode, ConstraintSet)> {
    vec![
        (2, 7, 3, Mode::Column, plain(1, 1)),
        (2, 7, 3, Mode::Column, plain(3, 2)),
        (3, 5, 2, Mode::Column, plain(2, 1)),
        (4, 5, 2, Mode::Column, plain(1, 2)),
        (2, 8, 4, Mode::Row, plain(2, 1)),
        (2, 8, 3, Mode::Row, ConstraintSet { d: 2, d_dual: 2, so: Some(Form::Euclidean), divisor: None }),
        (3, 6, 3, Mode::Row, plain(2, 2)),
        (4, 5, 2, Mode::Row, plain(2, 1)),
    ]
}
