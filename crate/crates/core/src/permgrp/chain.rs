//! Deterministic Schreier–Sims.
//!
//! Levels are completed from the deepest upwards; a Schreier generator that
//! does not sift becomes a new strong generator at the level where sifting
//! stopped, and processing resumes there. Checked (point, generator) pairs
//! are remembered, which is sound because membership in the lower levels
//! only ever grows.

use crate::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `trans[p] = u` with `base·u = p`, and its inverse.
    trans: Vec<Option<(Permutation, Permutation)>>,
    /// `checked[k][s]`: Schreier generator for `orbit[k]` and `gens[s]` sifts.
    checked: Vec<Vec<bool>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut trans = vec![None; degree];
        let id = Permutation::identity(degree);
        trans[base] = Some((id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            trans,
            checked: vec![Vec::new()],
        }
    }

    /// Appends a generator and extends the orbit.
    fn push_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        let s_new = self.gens.len() - 1;
        let mut head = 0;
        let old_len = self.orbit.len();
        // New generator on old points, then every generator on new points.
        while head < self.orbit.len() {
            let q = self.orbit[head];
            let range = if head < old_len {
                s_new..s_new + 1
            } else {
                0..self.gens.len()
            };
            for s in range {
                let p = self.gens[s].apply(q);
                if self.trans[p].is_none() {
                    let u = self.trans[q].as_ref().unwrap().0.then(&self.gens[s]);
                    let ui = u.inverse();
                    self.trans[p] = Some((u, ui));
                    self.orbit.push(p);
                }
            }
            head += 1;
        }
        for row in &mut self.checked {
            row.resize(self.gens.len(), false);
        }
        while self.checked.len() < self.orbit.len() {
            self.checked.push(vec![false; self.gens.len()]);
        }
    }
}

/// A base and strong generating set.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            let (r, j) = chain.sift_from(g.clone(), 0);
            if !r.is_identity() {
                chain.add_at(j, r);
            }
        }
        chain.complete();
        chain
    }

    fn add_at(&mut self, j: usize, r: Permutation) {
        if j == self.levels.len() {
            let b = r.first_moved().expect("nontrivial residue");
            self.levels.push(Level::new(self.degree, b));
        }
        for k in 0..=j {
            self.levels[k].push_gen(r.clone());
        }
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lv = i as usize;
            match self.next_unchecked(lv) {
                None => i -= 1,
                Some((k, s)) => {
                    self.levels[lv].checked[k][s] = true;
                    let level = &self.levels[lv];
                    let p = level.orbit[k];
                    let g = &level.gens[s];
                    let q = g.apply(p);
                    let h = level.trans[p]
                        .as_ref()
                        .unwrap()
                        .0
                        .then(g)
                        .then(&level.trans[q].as_ref().unwrap().1);
                    let (r, j) = self.sift_from(h, lv + 1);
                    if !r.is_identity() {
                        self.add_at(j, r);
                        i = j as isize;
                    }
                }
            }
        }
    }

    fn next_unchecked(&self, lv: usize) -> Option<(usize, usize)> {
        let level = &self.levels[lv];
        for (k, row) in level.checked.iter().enumerate() {
            if let Some(s) = row.iter().position(|&c| !c) {
                return Some((k, s));
            }
        }
        None
    }

    /// Sifts from level `from`; returns the residue and the level where it
    /// stopped (`levels.len()` if it passed all levels).
    fn sift_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let p = h.apply(level.base);
            match &level.trans[p] {
                None => return (h, j),
                Some((_, ui)) => h = h.then(ui),
            }
        }
        let n = self.levels.len();
        (h, n)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Group order, `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        self.sift_from(p.clone(), 0).0.is_identity()
    }

    /// Strong generators (those of the top level).
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels
            .first()
            .map(|l| l.gens.as_slice())
            .unwrap_or(&[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn symmetric_orders() {
        for n in 2..=9usize {
            let gens = vec![
                p("(1 2)", n),
                Permutation::from_cycles(n, &[&(0..n).collect::<Vec<_>>()]).unwrap(),
            ];
            let chain = StabChain::new(n, &gens);
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(chain.order(), Some(fact));
        }
    }

    #[test]
    fn membership_in_alternating() {
        let gens = vec![
            p("(1 2 3)", 6),
            p("(1 2 4)", 6),
            p("(1 2 5)", 6),
            p("(1 2 6)", 6),
        ];
        let chain = StabChain::new(6, &gens);
        assert_eq!(chain.order(), Some(360));
        assert!(chain.contains(&p("(1 2)(3 4)", 6)));
        assert!(!chain.contains(&p("(1 2)", 6)));
    }

    #[test]
    fn trivial_group() {
        let chain = StabChain::new(4, &[Permutation::identity(4)]);
        assert_eq!(chain.order(), Some(1));
        assert!(chain.contains(&Permutation::identity(4)));
        assert!(!chain.contains(&p("(1 2)", 4)));
    }
}
