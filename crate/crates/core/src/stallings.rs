//! Finitely generated subgroups of free groups as Stallings graphs.
//!
//! A graph is stored in canonical form: vertices are numbered in
//! breadth-first order from the basepoint `0`, visiting edges by generator
//! index and, for each generator, outgoing before incoming. Two graphs are
//! therefore equal exactly when they are isomorphic as based labelled
//! graphs, i.e. when they represent the same subgroup.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::words::{Letter, Word};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StallingsGraph {
    rank: usize,
    /// `fwd[g][v]`: target of the `g`-edge leaving `v`.
    fwd: Vec<Vec<u32>>,
    /// `bwd[g][v]`: source of the `g`-edge entering `v`.
    bwd: Vec<Vec<u32>>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut y = x;
        while self.parent[y as usize] != r {
            let next = self.parent[y as usize];
            self.parent[y as usize] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// Folds a labelled multigraph; returns a folded partial-injection form on
/// the surviving classes plus the class of every original vertex.
fn fold(
    rank: usize,
    n: usize,
    edges: &[(u32, u32, u32)],
) -> (Vec<Vec<u32>>, Vec<Vec<u32>>, Vec<u32>) {
    let mut uf = UnionFind::new(n);
    loop {
        let mut changed = false;
        let mut out: HashMap<(u32, u32), u32> = HashMap::new();
        let mut inc: HashMap<(u32, u32), u32> = HashMap::new();
        for &(u, g, v) in edges {
            let (ru, rv) = (uf.find(u), uf.find(v));
            match out.get(&(ru, g)) {
                Some(&w) => changed |= uf.union(w, rv),
                None => {
                    out.insert((ru, g), rv);
                }
            }
            let (ru, rv) = (uf.find(u), uf.find(v));
            match inc.get(&(rv, g)) {
                Some(&w) => changed |= uf.union(w, ru),
                None => {
                    inc.insert((rv, g), ru);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut fwd = vec![vec![NONE; n]; rank];
    let mut bwd = vec![vec![NONE; n]; rank];
    let class: Vec<u32> = (0..n as u32).map(|v| uf.find(v)).collect();
    for &(u, g, v) in edges {
        let (ru, rv) = (class[u as usize], class[v as usize]);
        fwd[g as usize][ru as usize] = rv;
        bwd[g as usize][rv as usize] = ru;
    }
    (fwd, bwd, class)
}

impl StallingsGraph {
    /// Builds the graph of the subgroup of loops at `basepoint` in an
    /// arbitrary labelled graph: folds, prunes to the core and
    /// canonicalises. Vertices not connected to the basepoint are dropped.
    pub fn from_edges(
        rank: usize,
        vertices: usize,
        basepoint: usize,
        edges: &[(usize, usize, usize)],
    ) -> Result<Self> {
        if basepoint >= vertices {
            return Err(Error::invalid(format!(
                "basepoint {basepoint} out of range"
            )));
        }
        let mut raw = Vec::with_capacity(edges.len());
        for &(u, g, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::invalid(format!(
                    "edge ({u}, {g}, {v}) leaves the vertex range"
                )));
            }
            if g >= rank {
                return Err(Error::GeneratorOutOfRange { index: g, rank });
            }
            raw.push((u as u32, g as u32, v as u32));
        }
        Ok(Self::finish(rank, vertices, basepoint as u32, &raw, true).0)
    }

    /// Folded core graph of `⟨gens⟩ ≤ F_rank`.
    pub fn from_generators(rank: usize, gens: &[Word]) -> Result<Self> {
        let mut n = 1usize;
        let mut raw = Vec::new();
        for w in gens {
            if w.support_rank() > rank {
                return Err(Error::GeneratorOutOfRange {
                    index: w.support_rank() - 1,
                    rank,
                });
            }
            let len = w.len();
            let mut cur = 0u32;
            for (i, l) in w.letters().iter().enumerate() {
                let next = if i + 1 == len {
                    0
                } else {
                    n += 1;
                    (n - 1) as u32
                };
                if l.inverse {
                    raw.push((next, l.generator, cur));
                } else {
                    raw.push((cur, l.generator, next));
                }
                cur = next;
            }
        }
        Ok(Self::finish(rank, n, 0, &raw, true).0)
    }

    /// Folds, optionally cores, canonicalises; also returns the canonical
    /// label of every original vertex (`NONE` if pruned).
    fn finish(
        rank: usize,
        n: usize,
        base: u32,
        raw: &[(u32, u32, u32)],
        core: bool,
    ) -> (Self, Vec<u32>) {
        let (mut fwd, mut bwd, class) = fold(rank, n, raw);
        let base = class[base as usize];
        let mut alive: Vec<bool> = (0..n).map(|v| class[v] == v as u32).collect();
        if core {
            let degree = |v: usize, fwd: &[Vec<u32>], bwd: &[Vec<u32>]| -> usize {
                (0..rank)
                    .map(|g| (fwd[g][v] != NONE) as usize + (bwd[g][v] != NONE) as usize)
                    .sum()
            };
            let mut stack: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
            while let Some(v) = stack.pop() {
                if !alive[v] || v == base as usize || degree(v, &fwd, &bwd) > 1 {
                    continue;
                }
                alive[v] = false;
                for g in 0..rank {
                    let t = fwd[g][v];
                    if t != NONE {
                        fwd[g][v] = NONE;
                        bwd[g][t as usize] = NONE;
                        stack.push(t as usize);
                    }
                    let s = bwd[g][v];
                    if s != NONE {
                        bwd[g][v] = NONE;
                        fwd[g][s as usize] = NONE;
                        stack.push(s as usize);
                    }
                }
            }
        }
        // Canonical breadth-first relabelling.
        let mut label = vec![NONE; n];
        let mut order = vec![base];
        label[base as usize] = 0;
        let mut head = 0;
        while head < order.len() {
            let v = order[head] as usize;
            head += 1;
            for g in 0..rank {
                for t in [fwd[g][v], bwd[g][v]] {
                    if t != NONE && label[t as usize] == NONE {
                        label[t as usize] = order.len() as u32;
                        order.push(t);
                    }
                }
            }
        }
        let m = order.len();
        let mut cf = vec![vec![NONE; m]; rank];
        let mut cb = vec![vec![NONE; m]; rank];
        for (new, &old) in order.iter().enumerate() {
            for g in 0..rank {
                let t = fwd[g][old as usize];
                if t != NONE {
                    cf[g][new] = label[t as usize];
                    cb[g][label[t as usize] as usize] = new as u32;
                }
            }
        }
        let orig: Vec<u32> = (0..n).map(|v| label[class[v] as usize]).collect();
        (
            StallingsGraph {
                rank,
                fwd: cf,
                bwd: cb,
            },
            orig,
        )
    }

    fn raw_edges(&self) -> Vec<(u32, u32, u32)> {
        let mut out = Vec::new();
        for g in 0..self.rank {
            for (v, &t) in self.fwd[g].iter().enumerate() {
                if t != NONE {
                    out.push((v as u32, g as u32, t));
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.fwd.first().map_or(1, |f| f.len())
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    /// Edge triples `(from, generator, to)`, sorted by generator then source.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        self.raw_edges()
            .into_iter()
            .map(|(u, g, v)| (u as usize, g as usize, v as usize))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.fwd
            .iter()
            .map(|f| f.iter().filter(|&&t| t != NONE).count())
            .sum()
    }

    #[inline]
    fn step(&self, v: u32, l: Letter) -> u32 {
        if l.inverse {
            self.bwd[l.generator as usize][v as usize]
        } else {
            self.fwd[l.generator as usize][v as usize]
        }
    }

    /// Endpoint of the path labelled `w` from vertex `v`, if it exists.
    pub fn read(&self, v: usize, w: &Word) -> Option<usize> {
        let mut cur = v as u32;
        for &l in w.letters() {
            if l.generator as usize >= self.rank {
                return None;
            }
            cur = self.step(cur, l);
            if cur == NONE {
                return None;
            }
        }
        Some(cur as usize)
    }

    pub fn member(&self, w: &Word) -> bool {
        self.read(0, w) == Some(0)
    }

    /// `[F_k : H]` when the graph covers the rose, `None` for infinite index.
    pub fn index(&self) -> Option<usize> {
        self.fwd
            .iter()
            .all(|f| f.iter().all(|&t| t != NONE))
            .then(|| self.vertex_count())
    }

    pub fn is_trivial(&self) -> bool {
        self.edge_count() == 0
    }

    /// Rank of `H` as a free group.
    pub fn subgroup_rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// A free basis of `H` read off a breadth-first spanning tree.
    pub fn free_basis(&self) -> Vec<Word> {
        let n = self.vertex_count();
        let mut path: Vec<Option<Word>> = vec![None; n];
        path[0] = Some(Word::identity());
        let mut tree = std::collections::HashSet::new();
        let mut queue = VecDeque::from([0u32]);
        while let Some(v) = queue.pop_front() {
            let pv = path[v as usize].clone().unwrap();
            for g in 0..self.rank {
                let t = self.fwd[g][v as usize];
                if t != NONE && path[t as usize].is_none() {
                    path[t as usize] = Some(pv.mul(&Word::letter(Letter::pos(g as u32))));
                    tree.insert((v, g as u32, t));
                    queue.push_back(t);
                }
                let s = self.bwd[g][v as usize];
                if s != NONE && path[s as usize].is_none() {
                    path[s as usize] = Some(pv.mul(&Word::letter(Letter::neg(g as u32))));
                    tree.insert((s, g as u32, v));
                    queue.push_back(s);
                }
            }
        }
        self.raw_edges()
            .into_iter()
            .filter(|e| !tree.contains(e))
            .map(|(u, g, v)| {
                let pu = path[u as usize].as_ref().unwrap();
                let pv = path[v as usize].as_ref().unwrap();
                pu.mul(&Word::generator(g)).mul(&pv.inverse())
            })
            .collect()
    }

    /// Graph of `H₁ ∩ H₂`: the core of the basepoint component of the
    /// product graph.
    pub fn intersect(&self, other: &StallingsGraph) -> Result<StallingsGraph> {
        if self.rank != other.rank {
            return Err(Error::invalid(format!(
                "rank mismatch: {} and {}",
                self.rank, other.rank
            )));
        }
        let mut id: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(0u32, 0u32)];
        id.insert((0, 0), 0);
        let mut raw = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (a, b) = pairs[head];
            let here = head as u32;
            head += 1;
            for g in 0..self.rank {
                let (ta, tb) = (self.fwd[g][a as usize], other.fwd[g][b as usize]);
                if ta != NONE && tb != NONE {
                    let t = *id.entry((ta, tb)).or_insert_with(|| {
                        pairs.push((ta, tb));
                        (pairs.len() - 1) as u32
                    });
                    raw.push((here, g as u32, t));
                }
                let (sa, sb) = (self.bwd[g][a as usize], other.bwd[g][b as usize]);
                if sa != NONE && sb != NONE && !id.contains_key(&(sa, sb)) {
                    id.insert((sa, sb), pairs.len() as u32);
                    pairs.push((sa, sb));
                }
            }
        }
        Ok(Self::finish(self.rank, pairs.len(), 0, &raw, true).0)
    }

    /// Graph of `w⁻¹ H w`.
    pub fn conjugate(&self, w: &Word) -> Result<StallingsGraph> {
        if w.support_rank() > self.rank {
            return Err(Error::GeneratorOutOfRange {
                index: w.support_rank() - 1,
                rank: self.rank,
            });
        }
        let (raw, n, end) = self.with_path(w);
        Ok(Self::finish(self.rank, n, end, &raw, true).0)
    }

    /// Edges plus a path labelled `w` from the basepoint, reusing existing
    /// edges for as long as possible. Returns edges, vertex count, endpoint.
    fn with_path(&self, w: &Word) -> (Vec<(u32, u32, u32)>, usize, u32) {
        let mut raw = self.raw_edges();
        let mut n = self.vertex_count();
        let mut cur = 0u32;
        for &l in w.letters() {
            let t = self.step_checked(cur, l);
            if t != NONE {
                cur = t;
                continue;
            }
            let new = n as u32;
            n += 1;
            if l.inverse {
                raw.push((new, l.generator, cur));
            } else {
                raw.push((cur, l.generator, new));
            }
            cur = new;
        }
        (raw, n, cur)
    }

    fn step_checked(&self, v: u32, l: Letter) -> u32 {
        if (v as usize) < self.vertex_count() {
            self.step(v, l)
        } else {
            NONE
        }
    }

    /// Extends every partial injection to a permutation of the vertices,
    /// matching missing sources to missing targets in increasing order.
    ///
    /// Returns the covering graph (the finite-index overgroup `H* ⊇ H`) and
    /// the generator images of `φ: F_k → Sym(V)`; the basepoint is vertex 0
    /// of the input graph and the images act on its vertex numbering.
    pub fn complete_to_cover(&self) -> (StallingsGraph, Vec<Permutation>) {
        let images = self.completed_images();
        let n = self.vertex_count();
        let raw: Vec<(u32, u32, u32)> = images
            .iter()
            .enumerate()
            .flat_map(|(g, p)| (0..n).map(move |v| (v as u32, g as u32, p.apply(v) as u32)))
            .collect();
        let cover = Self::finish(self.rank, n, 0, &raw, true).0;
        (cover, images)
    }

    fn completed_images(&self) -> Vec<Permutation> {
        (0..self.rank)
            .map(|g| {
                let f = &self.fwd[g];
                let b = &self.bwd[g];
                let sources = (0..f.len()).filter(|&v| f[v] == NONE);
                let mut targets = (0..b.len()).filter(|&v| b[v] == NONE);
                let mut img = f.clone();
                for s in sources {
                    img[s] = targets.next().expect("partial injection") as u32;
                }
                Permutation::from_images_unchecked(img)
            })
            .collect()
    }

    /// A finite permutation quotient `φ` with `φ(g) ∉ φ(H)`.
    ///
    /// The `g`-path is attached at the basepoint (no folding is needed since
    /// it leaves the graph along a fresh reduced path) and the result is
    /// completed to a cover. Then `φ(H)` fixes the basepoint and `φ(g)`
    /// moves it.
    pub fn separate(&self, g: &Word) -> Result<Vec<Permutation>> {
        if g.support_rank() > self.rank {
            return Err(Error::GeneratorOutOfRange {
                index: g.support_rank() - 1,
                rank: self.rank,
            });
        }
        if self.member(g) {
            return Err(Error::Precondition("element lies in the subgroup".into()));
        }
        let (raw, n, _) = self.with_path(g);
        let (fwd, bwd, _) = fold(self.rank, n, &raw);
        let ext = StallingsGraph {
            rank: self.rank,
            fwd,
            bwd,
        };
        Ok(ext.completed_images())
    }
}

/// Image of `w` under the homomorphism given by generator images.
pub fn image_of(images: &[Permutation], w: &Word) -> Permutation {
    let n = images.first().map_or(0, |p| p.degree());
    let mut acc: Vec<u32> = (0..n as u32).collect();
    for l in w.letters() {
        let p = &images[l.generator as usize];
        if l.inverse {
            let inv = p.inverse();
            acc.iter_mut().for_each(|x| *x = inv.images()[*x as usize]);
        } else {
            acc.iter_mut().for_each(|x| *x = p.images()[*x as usize]);
        }
    }
    Permutation::from_images_unchecked(acc)
}

/// Image of the point `v` under `φ(w)`.
pub fn trace_point(images: &[Permutation], inverses: &[Permutation], w: &Word, v: usize) -> usize {
    let mut cur = v;
    for l in w.letters() {
        let p = if l.inverse {
            &inverses[l.generator as usize]
        } else {
            &images[l.generator as usize]
        };
        cur = p.apply(cur);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{free_ball, Alphabet};
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Alphabet::letters(2).parse(s).unwrap()
    }

    fn graph(gens: &[&str]) -> StallingsGraph {
        StallingsGraph::from_generators(2, &gens.iter().map(|s| w(s)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn basic_shapes() {
        let g = graph(&["a"]);
        assert_eq!((g.vertex_count(), g.edges()), (1, vec![(0, 0, 0)]));
        let g = graph(&["a^2", "b"]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), vec![(0, 0, 1), (1, 0, 0), (0, 1, 0)]);
        let t = graph(&[]);
        assert_eq!((t.vertex_count(), t.edge_count()), (1, 0));
        assert!(t.is_trivial());
        // a b a⁻¹ folds to a lollipop that cores away only at the stem.
        assert_eq!(graph(&["a b a^-1"]).vertex_count(), 2);
        assert_eq!(graph(&["a a^-1 b"]), graph(&["b"]));
    }

    #[test]
    fn membership_and_index() {
        let g = graph(&["a^2", "b"]);
        assert!(g.member(&w("a^2 b")));
        assert!(!g.member(&w("a")));
        assert!(g.member(&Word::identity()));
        assert_eq!(graph(&["a^2", "b", "a b a^-1"]).index(), Some(2));
        assert_eq!(graph(&["a"]).index(), None);
        assert_eq!(graph(&["a", "b"]).index(), Some(1));
    }

    #[test]
    fn intersections() {
        assert_eq!(
            graph(&["a"]).intersect(&graph(&["a^2"])).unwrap(),
            graph(&["a^2"])
        );
        assert!(graph(&["a"])
            .intersect(&graph(&["b"]))
            .unwrap()
            .is_trivial());
        let h = graph(&["a^2", "b a b^-1"]);
        assert_eq!(h.intersect(&h).unwrap(), h);
        // Index-2 subgroups: even a-exponent and even b-exponent meet in
        // the index-4 kernel of F_2 -> (Z/2)^2.
        let x = graph(&["a^2", "b", "a b a^-1"])
            .intersect(&graph(&["a", "b^2", "b a b^-1"]))
            .unwrap();
        assert_eq!(x.index(), Some(4));
    }

    #[test]
    fn conjugation() {
        let h = graph(&["a^2", "b"]);
        let c = h.conjugate(&w("a")).unwrap();
        assert!(c.member(&w("a^-1 b a")));
        assert!(!c.member(&w("b")));
        assert_eq!(c.conjugate(&w("a^-1")).unwrap(), h);
    }

    #[test]
    fn cover_completion() {
        let h = graph(&["a^2", "b"]);
        let (cover, images) = h.complete_to_cover();
        assert_eq!(cover.index(), Some(2));
        assert_eq!(images.len(), 2);
        let t = graph(&[]);
        let (cover, images) = t.complete_to_cover();
        assert_eq!(cover.index(), Some(1));
        assert!(images.iter().all(|p| p.is_identity()));
        let full = graph(&["a^2", "b", "a b a^-1"]);
        assert_eq!(full.complete_to_cover().0, full);
    }

    #[test]
    fn separation_examples() {
        let h = graph(&["a^2", "b"]);
        let phi = h.separate(&w("a")).unwrap();
        assert_eq!(phi[0].degree(), 2);
        assert_eq!(phi[0].cycles(), vec![vec![0, 1]]);
        assert!(phi[1].is_identity());
        assert!(h.separate(&w("a^2")).is_err());
        let t = graph(&[]);
        let phi = t.separate(&w("a")).unwrap();
        assert!(!image_of(&phi, &w("a")).is_identity());
        let c = graph(&["a b a^-1 b^-1"]);
        let phi = c.separate(&w("a")).unwrap();
        assert_ne!(image_of(&phi, &w("a")).apply(0), 0);
    }

    /// Coset-table oracle: membership in finite-index subgroups given by
    /// explicit permutation actions.
    #[test]
    fn membership_matches_coset_tables() {
        let acts: Vec<(Permutation, Permutation)> = vec![
            (
                Permutation::parse_cycles("(1 2 3)", 3).unwrap(),
                Permutation::parse_cycles("(1 2)", 3).unwrap(),
            ),
            (
                Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap(),
                Permutation::parse_cycles("(2 3 4)", 4).unwrap(),
            ),
            (
                Permutation::parse_cycles("(1 2 3 4 5 6)", 6).unwrap(),
                Permutation::parse_cycles("(2 6)(3 5)", 6).unwrap(),
            ),
        ];
        for (a, b) in acts {
            let n = a.degree();
            let edges: Vec<(usize, usize, usize)> = (0..n)
                .flat_map(|v| [(v, 0, a.apply(v)), (v, 1, b.apply(v))])
                .collect();
            let g = StallingsGraph::from_edges(2, n, 0, &edges).unwrap();
            assert_eq!(g.index(), Some(n));
            // Rebuilding from a free basis gives the same graph.
            assert_eq!(
                StallingsGraph::from_generators(2, &g.free_basis()).unwrap(),
                g
            );
            let images = [a.clone(), b.clone()];
            for x in free_ball(2, 6) {
                assert_eq!(g.member(&x), image_of(&images, &x).apply(0) == 0);
            }
        }
    }

    fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0u32..2, any::<bool>()), 0..max_len)
            .prop_map(|v| Word::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn generator_order_is_irrelevant(gens in prop::collection::vec(word_strategy(6), 0..4)) {
            let a = StallingsGraph::from_generators(2, &gens).unwrap();
            let mut rev = gens.clone();
            rev.reverse();
            let b = StallingsGraph::from_generators(2, &rev).unwrap();
            prop_assert_eq!(&a, &b);
            for x in &gens {
                prop_assert!(a.member(x));
            }
            prop_assert_eq!(StallingsGraph::from_generators(2, &a.free_basis()).unwrap(), a);
        }

        #[test]
        fn membership_is_a_subgroup(gens in prop::collection::vec(word_strategy(5), 1..3), x in word_strategy(5), y in word_strategy(5)) {
            let g = StallingsGraph::from_generators(2, &gens).unwrap();
            if g.member(&x) && g.member(&y) {
                prop_assert!(g.member(&x.mul(&y.inverse())));
            }
            if g.member(&x) && !g.member(&y) {
                prop_assert!(!g.member(&x.mul(&y)));
            }
        }

        #[test]
        fn intersection_laws(a in prop::collection::vec(word_strategy(4), 1..3), b in prop::collection::vec(word_strategy(4), 1..3), c in prop::collection::vec(word_strategy(4), 1..3), x in word_strategy(6)) {
            let (ga, gb, gc) = (
                StallingsGraph::from_generators(2, &a).unwrap(),
                StallingsGraph::from_generators(2, &b).unwrap(),
                StallingsGraph::from_generators(2, &c).unwrap(),
            );
            let ab = ga.intersect(&gb).unwrap();
            prop_assert_eq!(&ab, &gb.intersect(&ga).unwrap());
            prop_assert_eq!(ab.intersect(&gc).unwrap(), ga.intersect(&gb.intersect(&gc).unwrap()).unwrap());
            prop_assert_eq!(ab.member(&x), ga.member(&x) && gb.member(&x));
        }

        #[test]
        fn separation_and_cover(gens in prop::collection::vec(word_strategy(6), 0..3), x in word_strategy(8)) {
            let g = StallingsGraph::from_generators(2, &gens).unwrap();
            let (cover, images) = g.complete_to_cover();
            prop_assert!(cover.index().is_some());
            for h in &gens {
                prop_assert_eq!(image_of(&images, h).apply(0), 0);
            }
            if !g.member(&x) {
                let phi = g.separate(&x).unwrap();
                prop_assert_ne!(image_of(&phi, &x).apply(0), 0);
                for h in &gens {
                    prop_assert_eq!(image_of(&phi, h).apply(0), 0);
                }
            }
        }
    }
}
