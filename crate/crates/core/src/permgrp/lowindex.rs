//! Low-index subgroups of an enumerated group by coset-table search.
//!
//! Partial coset tables over the group's generators are filled in canonical
//! order, so each transitive action with a marked point (hence each
//! subgroup) is produced once. Short relations of the group (powers,
//! products of two generators, commutators) are scanned to prune and to
//! deduce entries. A complete table is accepted only if it defines an
//! action of the group, which is checked exactly on the Cayley graph.

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::{FiniteGroup, Subgroup};

const UNDEF: u32 = u32::MAX;

/// Columns are `2i` for generator `i` and `2i + 1` for its inverse.
type Rel = Vec<usize>;

struct Search<'a> {
    g: &'a FiniteGroup,
    cols: usize,
    max_index: usize,
    /// `by_col[c]`: cyclic rotations of relators and their inverses that
    /// start with column `c`.
    by_col: Vec<Vec<Rel>>,
    nodes: u64,
    node_budget: u64,
    found: Vec<Subgroup>,
}

/// Row-major partial coset table.
#[derive(Clone)]
struct Table {
    cols: usize,
    cells: Vec<u32>,
}

impl Table {
    fn rows(&self) -> usize {
        self.cells.len() / self.cols
    }

    fn get(&self, p: usize, c: usize) -> u32 {
        self.cells[p * self.cols + c]
    }

    fn set(&mut self, p: usize, c: usize, q: u32) {
        self.cells[p * self.cols + c] = q;
    }
}

fn relators(g: &FiniteGroup) -> Vec<Rel> {
    let s = g.generator_ids().len();
    let gens = g.generator_ids();
    let word_order = |w: &[usize]| -> usize {
        let mut x = 0u32;
        for &c in w {
            let e = gens[c / 2];
            x = g.mul(x, if c % 2 == 0 { e } else { g.inv(e) });
        }
        g.element_order(x)
    };
    let power = |w: Vec<usize>| -> Rel {
        let k = word_order(&w);
        w.iter().copied().cycle().take(w.len() * k).collect()
    };
    let mut out = Vec::new();
    for i in 0..s {
        out.push(power(vec![2 * i]));
    }
    for i in 0..s {
        for j in (i + 1)..s {
            out.push(power(vec![2 * i, 2 * j]));
            out.push(power(vec![2 * i, 2 * j + 1]));
            out.push(power(vec![2 * i, 2 * j, 2 * i + 1, 2 * j + 1]));
        }
    }
    out.retain(|r| !r.is_empty());
    out
}

impl Search<'_> {
    /// Records `p·c = q` and `q·c⁻¹ = p`. Returns false on a clash.
    fn define(
        &self,
        t: &mut Table,
        p: usize,
        c: usize,
        q: usize,
        queue: &mut Vec<(usize, usize)>,
    ) -> bool {
        let ci = c ^ 1;
        let a = t.get(p, c);
        let b = t.get(q, ci);
        if a != UNDEF && a as usize != q {
            return false;
        }
        if b != UNDEF && b as usize != p {
            return false;
        }
        if a == UNDEF {
            t.set(p, c, q as u32);
            queue.push((p, c));
        }
        if b == UNDEF {
            t.set(q, ci, p as u32);
            queue.push((q, ci));
        }
        true
    }

    /// Traces `r` from `p` in both directions, deducing a single missing
    /// entry. Returns false if the relator fails at `p`.
    fn scan(&self, t: &mut Table, r: &[usize], p: usize, queue: &mut Vec<(usize, usize)>) -> bool {
        let mut f = p;
        let mut i = 0;
        while i < r.len() {
            let q = t.get(f, r[i]);
            if q == UNDEF {
                break;
            }
            f = q as usize;
            i += 1;
        }
        if i == r.len() {
            return f == p;
        }
        let mut b = p;
        let mut j = r.len();
        while j > i {
            let q = t.get(b, r[j - 1] ^ 1);
            if q == UNDEF {
                break;
            }
            b = q as usize;
            j -= 1;
        }
        if j == i {
            f == b
        } else if j == i + 1 {
            self.define(t, f, r[i], b, queue)
        } else {
            true
        }
    }

    /// Processes new entries until no relator through them yields a
    /// deduction. Returns false if a relator is violated.
    fn propagate(&self, t: &mut Table, mut queue: Vec<(usize, usize)>) -> bool {
        while let Some((p, c)) = queue.pop() {
            for r in &self.by_col[c] {
                if !self.scan(t, r, p, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn first_gap(&self, t: &Table) -> Option<(usize, usize)> {
        t.cells
            .iter()
            .position(|&x| x == UNDEF)
            .map(|i| (i / self.cols, i % self.cols))
    }

    fn run(&mut self, t: Table) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(Error::budget(
                "low-index search nodes",
                self.nodes as u128,
                self.node_budget as u128,
            ));
        }
        let Some((p, c)) = self.first_gap(&t) else {
            self.accept(&t);
            return Ok(());
        };
        let n = t.rows();
        for q in 0..n {
            if t.get(q, c ^ 1) != UNDEF {
                continue;
            }
            let mut next = t.clone();
            let mut queue = Vec::new();
            if self.define(&mut next, p, c, q, &mut queue) && self.propagate(&mut next, queue) {
                self.run(next)?;
            }
        }
        if n < self.max_index {
            let mut next = t;
            next.cells.extend(std::iter::repeat_n(UNDEF, self.cols));
            let mut queue = Vec::new();
            if self.define(&mut next, p, c, n, &mut queue) && self.propagate(&mut next, queue) {
                self.run(next)?;
            }
        }
        Ok(())
    }

    fn accept(&mut self, t: &Table) {
        let images: Vec<Permutation> = (0..self.cols / 2)
            .map(|i| {
                Permutation::from_images_unchecked((0..t.rows()).map(|p| t.get(p, 2 * i)).collect())
            })
            .collect();
        if let Ok(pos) = self.g.orbit_map(&images, 0) {
            let stab: Vec<u32> = (0..self.g.order() as u32)
                .filter(|&x| pos[x as usize] == 0)
                .collect();
            let h = self
                .g
                .subgroup_from_elements(&stab)
                .expect("point stabiliser is a subgroup");
            debug_assert_eq!(self.g.order() / h.order(), t.rows());
            self.found.push(h);
        }
    }
}

fn rotations(relators: &[Rel], cols: usize) -> Vec<Vec<Rel>> {
    let mut by_col: Vec<Vec<Rel>> = vec![Vec::new(); cols];
    for r in relators {
        let inv: Rel = r.iter().rev().map(|&c| c ^ 1).collect();
        for w in [r, &inv] {
            for k in 0..w.len() {
                let rot: Rel = w[k..].iter().chain(&w[..k]).copied().collect();
                by_col[rot[0]].push(rot);
            }
        }
    }
    for list in &mut by_col {
        list.sort();
        list.dedup();
    }
    by_col
}

pub(super) fn subgroups_of_index_at_most(
    g: &FiniteGroup,
    m: usize,
    node_budget: u64,
) -> Result<Vec<Subgroup>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    let s = g.generator_ids().len();
    if s == 0 {
        return Ok(vec![g.whole()]);
    }
    let cols = 2 * s;
    let mut search = Search {
        g,
        cols,
        max_index: m,
        by_col: rotations(&relators(g), cols),
        nodes: 0,
        node_budget,
        found: Vec::new(),
    };
    let mut start = Table {
        cols,
        cells: vec![UNDEF; cols],
    };
    let queue = (0..cols).map(|c| (0, c)).collect();
    if search.propagate(&mut start, queue) {
        search.run(start)?;
    }
    let mut found = search.found;
    found.sort();
    found.dedup();
    Ok(found)
}
