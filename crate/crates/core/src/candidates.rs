//! Extension vectors for row-mode children.
//!
//! A node `(A | I_s)` gains the row `(a | 0 | 1)`. Columns of `A` that are
//! identical can be permuted freely without changing the node, so a
//! candidate is determined up to that symmetry by how many entries of each
//! value it puts into every group of identical columns. The search runs over
//! these count vectors, tracking the weight of every new codeword
//! `(a | 0 | 1) + m (A | I_s)` as it goes. Only group-sorted vectors are
//! produced: within each group the values appear in ascending order.

use crate::gf::{Field, Form};
use crate::linalg::Matrix;

/// Requirements on the new row.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RowTargets {
    /// Minimum weight of every new codeword.
    pub d: usize,
    /// Every new weight is a multiple of this.
    pub divisor: u32,
    /// Orthogonality of the new row to the node and to itself.
    pub form: Option<Form>,
    /// Coordinates that are zero in the node must become nonzero.
    pub fill_zero_columns: bool,
}

struct Group {
    positions: Vec<usize>,
    column: Vec<u8>,
}

struct Enumerator<'a> {
    field: &'a Field,
    q: usize,
    groups: Vec<Group>,
    /// `targets[m * groups + g]`: the value of `a` in group `g` that makes
    /// the coordinate vanish in the codeword for message `m`.
    targets: Vec<u8>,
    /// `wt(m) + 1` for every message.
    base: Vec<usize>,
    compositions: Vec<Vec<[u8; 4]>>,
    goals: RowTargets,
    rows: usize,
    out: Vec<Vec<[u8; 4]>>,
}

/// All group-sorted extension vectors of the node `(A | I_s)` whose new
/// codewords meet `goals`. `a_part` holds the first `r` columns of the
/// node's rows.
pub(crate) fn row_candidates(field: &Field, a_part: &Matrix, r: usize, goals: RowTargets) -> Vec<Vec<u8>> {
    let s = a_part.len();
    let mut groups: Vec<Group> = Vec::new();
    for j in 0..r {
        let column: Vec<u8> = a_part.iter().map(|row| row[j]).collect();
        match groups.iter_mut().find(|g| g.column == column) {
            Some(g) => g.positions.push(j),
            None => groups.push(Group { positions: vec![j], column }),
        }
    }
    // Large groups first: their choices constrain the weights the most.
    groups.sort_by(|a, b| b.positions.len().cmp(&a.positions.len()).then(a.positions[0].cmp(&b.positions[0])));
    let messages = (field.q() as usize).pow(s as u32);
    let mut targets = Vec::with_capacity(messages * groups.len());
    let mut base = Vec::with_capacity(messages);
    for m in 0..messages {
        let mv = field.index_vec(m, s);
        base.push(mv.iter().filter(|&&x| x != 0).count() + 1);
        for g in &groups {
            targets.push(field.neg(field.dot(&mv, &g.column)));
        }
    }
    let mut compositions = vec![Vec::new(); r + 1];
    for g in &groups {
        let size = g.positions.len();
        if compositions[size].is_empty() {
            compositions[size] = compositions_of(size, field.q() as usize);
        }
    }
    let mut e = Enumerator { field, q: field.q() as usize, groups, targets, base, compositions, goals, rows: s, out: Vec::new() };
    let mut dist = vec![0usize; messages];
    let mut counts = Vec::new();
    e.search(0, r, &mut dist, &mut counts);
    let mut result: Vec<Vec<u8>> = e
        .out
        .iter()
        .map(|counts| {
            let mut a = vec![0u8; r];
            for (g, c) in e.groups.iter().zip(counts) {
                let mut pos = g.positions.iter();
                for v in 0..e.q {
                    for _ in 0..c[v] {
                        a[*pos.next().unwrap()] = v as u8;
                    }
                }
            }
            a
        })
        .collect();
    result.sort();
    result
}

fn compositions_of(size: usize, q: usize) -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    let mut c = [0u8; 4];
    fn rec(v: usize, left: usize, q: usize, c: &mut [u8; 4], out: &mut Vec<[u8; 4]>) {
        if v == q - 1 {
            c[v] = left as u8;
            out.push(*c);
            c[v] = 0;
            return;
        }
        for x in 0..=left {
            c[v] = x as u8;
            rec(v + 1, left - x, q, c, out);
        }
        c[v] = 0;
    }
    rec(0, size, q, &mut c, &mut out);
    out
}

impl Enumerator<'_> {
    /// Whether some completion can still make message `m`'s weight valid.
    fn feasible(&self, m: usize, dist: usize, remaining: usize) -> bool {
        let lo = (dist + self.base[m]).max(self.goals.d);
        let hi = dist + remaining + self.base[m];
        if lo > hi {
            return false;
        }
        let delta = self.goals.divisor as usize;
        delta <= 1 || lo.div_ceil(delta) * delta <= hi
    }

    fn search(&mut self, gi: usize, remaining: usize, dist: &mut [usize], counts: &mut Vec<[u8; 4]>) {
        if gi == self.groups.len() {
            if self.orthogonal(counts) {
                self.out.push(counts.clone());
            }
            return;
        }
        let ng = self.groups.len();
        let size = self.groups[gi].positions.len();
        let zero_group = self.groups[gi].column.iter().all(|&x| x == 0);
        let left = remaining - size;
        for ci in 0..self.compositions[size].len() {
            let c = self.compositions[size][ci];
            if zero_group && self.goals.fill_zero_columns && c[0] > 0 {
                continue;
            }
            let mut ok = true;
            for m in 0..dist.len() {
                let t = self.targets[m * ng + gi] as usize;
                dist[m] += size - c[t] as usize;
                if ok && !self.feasible(m, dist[m], left) {
                    ok = false;
                }
            }
            if ok {
                counts.push(c);
                self.search(gi + 1, left, dist, counts);
                counts.pop();
            }
            for m in 0..dist.len() {
                let t = self.targets[m * ng + gi] as usize;
                dist[m] -= size - c[t] as usize;
            }
        }
    }

    /// Orthogonality of `(a | 0 | 1)` to the node rows and to itself.
    fn orthogonal(&self, counts: &[[u8; 4]]) -> bool {
        let Some(form) = self.goals.form else {
            return true;
        };
        let f = self.field;
        // sums of the entries of `a` in each group
        let sums: Vec<u8> = counts.iter().map(|c| (0..self.q).fold(0, |acc, v| f.add(acc, f.times(c[v] as usize, v as u8)))).collect();
        for i in 0..self.rows {
            let mut acc = 0u8;
            for (g, &sum) in self.groups.iter().zip(&sums) {
                let coef = match form {
                    Form::Euclidean => g.column[i],
                    Form::Hermitian => f.mul(g.column[i], g.column[i]),
                };
                acc = f.add(acc, f.mul(coef, sum));
            }
            if acc != 0 {
                return false;
            }
        }
        let mut own = 1u8;
        for c in counts {
            for v in 1..self.q {
                let x = v as u8;
                let term = match form {
                    Form::Euclidean => f.mul(x, x),
                    Form::Hermitian => f.mul(x, f.mul(x, x)),
                };
                own = f.add(own, f.times(c[v] as usize, term));
            }
        }
        own == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;

    fn f(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    /// Every vector of `F_q^r` whose row extension meets the goals, by
    /// direct construction of the extended code.
    fn brute(field: &Field, a_part: &Matrix, r: usize, goals: RowTargets) -> Vec<Vec<u8>> {
        let s = a_part.len();
        let total = (field.q() as usize).pow(r as u32);
        let mut out = Vec::new();
        for idx in 0..total {
            let a = field.index_vec(idx, r);
            let mut rows: Matrix = a_part
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut v = row.clone();
                    v.extend((0..=s).map(|j| u8::from(i == j)));
                    v
                })
                .collect();
            let mut new = a.clone();
            new.extend(std::iter::repeat_n(0, s));
            new.push(1);
            rows.push(new);
            let code = LinearCode::from_rows(*field, s + 1, r + s + 1, rows).unwrap();
            let words = code.codeword_vecs().unwrap();
            let ok_weights = words.iter().all(|w| {
                let wt = w.iter().filter(|&&x| x != 0).count();
                // words without the new row already belong to the node
                w[r + s] == 0 || (wt >= goals.d && wt % goals.divisor as usize == 0)
            });
            let ok_so = goals.form.is_none_or(|form| code.is_self_orthogonal(form).unwrap());
            let ok_zero = !goals.fill_zero_columns || code.zero_columns().is_empty();
            if ok_weights && ok_so && ok_zero {
                out.push(a);
            }
        }
        out
    }

    fn sorted_form(a: &[u8], a_part: &Matrix) -> Vec<u8> {
        let r = a.len();
        let mut out = a.to_vec();
        let mut seen = vec![false; r];
        for j in 0..r {
            if seen[j] {
                continue;
            }
            let col: Vec<u8> = a_part.iter().map(|row| row[j]).collect();
            let members: Vec<usize> = (j..r).filter(|&t| a_part.iter().map(|row| row[t]).eq(col.iter().copied())).collect();
            let mut vals: Vec<u8> = members.iter().map(|&t| a[t]).collect();
            vals.sort();
            for (&t, v) in members.iter().zip(vals) {
                seen[t] = true;
                out[t] = v;
            }
        }
        out
    }

    fn check(q: u32, a_part: Matrix, r: usize, goals: RowTargets) {
        let field = f(q);
        let fast = row_candidates(&field, &a_part, r, goals);
        let mut slow: Vec<Vec<u8>> = brute(&field, &a_part, r, goals).iter().map(|a| sorted_form(a, &a_part)).collect();
        slow.sort();
        slow.dedup();
        assert_eq!(fast, slow, "q={q} A={a_part:?} goals={goals:?}");
    }

    #[test]
    fn matches_brute_force() {
        let plain = RowTargets { d: 3, divisor: 1, form: None, fill_zero_columns: false };
        check(2, vec![], 5, plain);
        check(2, vec![vec![1, 1, 1, 0, 0, 1]], 6, plain);
        check(2, vec![vec![1, 1, 1, 0, 0, 1], vec![0, 1, 1, 1, 0, 1]], 6, RowTargets { d: 2, ..plain });
        let so = RowTargets { d: 4, divisor: 2, form: Some(Form::Euclidean), fill_zero_columns: true };
        check(2, vec![vec![1, 1, 1, 0, 0, 0, 0]], 7, so);
        check(2, vec![vec![1, 1, 1, 0, 0, 0, 0]], 7, RowTargets { fill_zero_columns: false, ..so });
        let tern = RowTargets { d: 3, divisor: 3, form: Some(Form::Euclidean), fill_zero_columns: false };
        check(3, vec![vec![1, 2, 0, 0, 0]], 5, tern);
        check(3, vec![vec![1, 2, 0, 0, 0, 0], vec![0, 1, 1, 1, 1, 0]], 6, RowTargets { d: 2, ..tern });
        check(3, vec![], 5, RowTargets { d: 3, divisor: 1, form: None, fill_zero_columns: false });
        let herm = RowTargets { d: 2, divisor: 2, form: Some(Form::Hermitian), fill_zero_columns: false };
        check(4, vec![vec![1, 2, 3, 0]], 4, herm);
        check(4, vec![vec![1, 1, 1, 0]], 4, RowTargets { d: 2, divisor: 1, form: Some(Form::Euclidean), fill_zero_columns: true });
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions_of(4, 2).len(), 5);
        assert_eq!(compositions_of(4, 3).len(), 15);
        assert_eq!(compositions_of(2, 4).len(), 10);
    }
}
