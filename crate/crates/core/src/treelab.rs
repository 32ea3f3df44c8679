//! Automaton groups acting on rooted `d`-ary trees.
//!
//! A state `s` reading letter `x` writes `out[s][x]` and continues in state
//! `next[s][x]`. Group words act on the right, letter by letter, like
//! permutations. The word problem is solved exactly by exploring all
//! sections of a word: it is trivial iff every reachable section acts
//! trivially on the first level. Sections are freely reduced, identity
//! states dropped and involutive states cancelled, which keeps the set of
//! sections finite for contracting groups such as Grigorchuk's.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgrp::PermGroup;
use crate::towers::{BallView, Element, QuotientMap, Source};
use crate::words::{Letter, Word};

/// Cap on the number of section words explored by one triviality check.
const SECTION_LIMIT: usize = 1 << 20;
/// Depth of the level action used as a hash key for ball deduplication.
const KEY_DEPTH: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyAutomaton {
    alphabet: usize,
    names: Vec<String>,
    identity: usize,
    out: Vec<Vec<u32>>,
    out_inv: Vec<Vec<u32>>,
    next: Vec<Vec<u32>>,
}

impl MealyAutomaton {
    pub fn new(
        alphabet: usize,
        names: Vec<String>,
        identity: usize,
        out: Vec<Vec<u32>>,
        next: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let n = names.len();
        if alphabet < 2 {
            return Err(Error::invalid("alphabet needs at least 2 letters"));
        }
        if identity >= n || out.len() != n || next.len() != n {
            return Err(Error::invalid("state tables do not match the state list"));
        }
        let mut out_inv = Vec::with_capacity(n);
        for (s, row) in out.iter().enumerate() {
            let p = Permutation::from_images(row.clone())
                .ok()
                .filter(|p| p.degree() == alphabet)
                .ok_or_else(|| {
                    Error::invalid(format!("output of state {} is not a bijection", names[s]))
                })?;
            out_inv.push(p.inverse().images().to_vec());
            if next[s].len() != alphabet || next[s].iter().any(|&t| t as usize >= n) {
                return Err(Error::invalid(format!(
                    "bad transitions for state {}",
                    names[s]
                )));
            }
        }
        if !Permutation::from_images(out[identity].clone())
            .unwrap()
            .is_identity()
            || next[identity].iter().any(|&t| t as usize != identity)
        {
            return Err(Error::invalid("identity state must act trivially"));
        }
        Ok(MealyAutomaton {
            alphabet,
            names,
            identity,
            out,
            out_inv,
            next,
        })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity_state(&self) -> usize {
        self.identity
    }

    pub fn output(&self, s: usize) -> &[u32] {
        &self.out[s]
    }

    pub fn transition(&self, s: usize) -> &[u32] {
        &self.next[s]
    }
}

/// A finite path from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPath {
    letters: Vec<u32>,
}

impl VertexPath {
    pub fn new(letters: Vec<u32>, alphabet: usize) -> Result<Self> {
        if letters.iter().any(|&x| x as usize >= alphabet) {
            return Err(Error::invalid("vertex letter outside the alphabet"));
        }
        Ok(VertexPath { letters })
    }

    pub fn root() -> Self {
        VertexPath {
            letters: Vec::new(),
        }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn depth(&self) -> usize {
        self.letters.len()
    }

    pub fn prefix(&self, k: usize) -> VertexPath {
        VertexPath {
            letters: self.letters[..k.min(self.letters.len())].to_vec(),
        }
    }

    pub fn child(&self, x: u32) -> VertexPath {
        let mut letters = self.letters.clone();
        letters.push(x);
        VertexPath { letters }
    }

    /// Position among the vertices of its level, first letter most significant.
    pub fn index(&self, alphabet: usize) -> usize {
        self.letters
            .iter()
            .fold(0, |acc, &x| acc * alphabet + x as usize)
    }

    pub fn from_index(mut index: usize, depth: usize, alphabet: usize) -> Self {
        let mut letters = vec![0u32; depth];
        for slot in letters.iter_mut().rev() {
            *slot = (index % alphabet) as u32;
            index /= alphabet;
        }
        VertexPath { letters }
    }
}

impl std::fmt::Display for VertexPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "∅");
        }
        for x in &self.letters {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Letters of section words: `2·state + inverse`.
type SLetter = u32;

/// The group generated by some states of an automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonGroup {
    name: String,
    automaton: MealyAutomaton,
    generators: Vec<usize>,
    involutive: Vec<bool>,
}

/// Fixed-vertex report for one element.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedVertices {
    pub depth: usize,
    pub vertices: Vec<VertexPath>,
    /// Fixed vertices below which some subtree is fixed pointwise, found
    /// within the probe depth.
    pub interior_supported: usize,
    pub probe_depth: usize,
}

impl FixedVertices {
    pub fn supported_fraction(&self) -> f64 {
        if self.vertices.is_empty() {
            1.0
        } else {
            self.interior_supported as f64 / self.vertices.len() as f64
        }
    }
}

impl AutomatonGroup {
    pub fn new(
        name: impl Into<String>,
        automaton: MealyAutomaton,
        generators: Vec<usize>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::invalid("an automaton group needs generators"));
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= automaton.names.len()) {
            return Err(Error::invalid(format!(
                "generator state {g} does not exist"
            )));
        }
        let mut group = AutomatonGroup {
            name: name.into(),
            involutive: vec![false; automaton.names.len()],
            automaton,
            generators,
        };
        let n = group.automaton.names.len();
        let mut involutive = vec![false; n];
        for (s, slot) in involutive.iter_mut().enumerate() {
            if s != group.automaton.identity {
                *slot = group.sections_trivial(vec![2 * s as u32, 2 * s as u32])?;
            }
        }
        group.involutive = involutive;
        Ok(group)
    }

    /// Grigorchuk's group: `a` swaps the root, `b = (a, c)`, `c = (a, d)`,
    /// `d = (1, b)`.
    pub fn grigorchuk() -> Self {
        let names = ["e", "a", "b", "c", "d"].map(String::from).to_vec();
        let (e, a, b, c, d) = (0u32, 1, 2, 3, 4);
        let out = vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 1]];
        let next = vec![vec![e, e], vec![e, e], vec![a, c], vec![a, d], vec![e, b]];
        let automaton = MealyAutomaton::new(2, names, 0, out, next).expect("valid preset");
        AutomatonGroup::new("grigorchuk", automaton, vec![1, 2, 3, 4]).expect("valid preset")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn automaton(&self) -> &MealyAutomaton {
        &self.automaton
    }

    pub fn alphabet(&self) -> usize {
        self.automaton.alphabet
    }

    /// Number of generators; words use indices `0..rank`.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|&s| self.automaton.names[s].clone())
            .collect()
    }

    /// Whether generator `i` has order two.
    pub fn generator_is_involution(&self, i: usize) -> bool {
        self.involutive[self.generators[i]]
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.support_rank() > self.rank() {
            return Err(Error::GeneratorOutOfRange {
                index: w.support_rank() - 1,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    fn to_sections(&self, w: &Word) -> Vec<SLetter> {
        self.reduce(
            w.letters()
                .iter()
                .map(|l| 2 * self.generators[l.generator as usize] as u32 + l.inverse as u32),
        )
    }

    fn reduce(&self, letters: impl IntoIterator<Item = SLetter>) -> Vec<SLetter> {
        let mut out: Vec<SLetter> = Vec::new();
        for l in letters {
            let s = (l / 2) as usize;
            if s == self.automaton.identity {
                continue;
            }
            let l = if self.involutive[s] { l & !1 } else { l };
            if out.last() == Some(&(l ^ 1)) || (self.involutive[s] && out.last() == Some(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }

    /// Image of letter `x` and the section at `x`, for one section letter.
    #[inline]
    fn step(&self, l: SLetter, x: u32) -> (u32, SLetter) {
        let s = (l / 2) as usize;
        if l & 1 == 0 {
            (
                self.automaton.out[s][x as usize],
                2 * self.automaton.next[s][x as usize],
            )
        } else {
            let y = self.automaton.out_inv[s][x as usize];
            (y, 2 * self.automaton.next[s][y as usize] + 1)
        }
    }

    fn root_image(&self, w: &[SLetter], x: u32) -> u32 {
        w.iter().fold(x, |y, &l| self.step(l, y).0)
    }

    fn section(&self, w: &[SLetter], x: u32) -> Vec<SLetter> {
        let mut y = x;
        let mut raw = Vec::with_capacity(w.len());
        for &l in w {
            let (z, sec) = self.step(l, y);
            raw.push(sec);
            y = z;
        }
        self.reduce(raw)
    }

    fn sections_trivial(&self, start: Vec<SLetter>) -> Result<bool> {
        let start = self.reduce(start);
        let mut seen: HashSet<Vec<SLetter>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(w) = queue.pop_front() {
            if w.is_empty() {
                continue;
            }
            for x in 0..self.alphabet() as u32 {
                if self.root_image(&w, x) != x {
                    return Ok(false);
                }
            }
            for x in 0..self.alphabet() as u32 {
                let s = self.section(&w, x);
                if !seen.contains(&s) {
                    if seen.len() >= SECTION_LIMIT {
                        return Err(Error::budget(
                            "section words",
                            seen.len() as u128 + 1,
                            SECTION_LIMIT as u128,
                        ));
                    }
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        Ok(true)
    }

    /// Exact word problem.
    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        self.check_word(w)?;
        self.sections_trivial(self.to_sections(w))
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        self.is_trivial(&u.mul(&v.inverse()))
    }

    /// Whether `w` fixes `v` and acts trivially on the whole subtree below it.
    pub fn trivial_below(&self, w: &Word, v: &VertexPath) -> Result<bool> {
        self.check_word(w)?;
        let mut sec = self.to_sections(w);
        for &x in v.letters() {
            if self.root_image(&sec, x) != x {
                return Ok(false);
            }
            sec = self.section(&sec, x);
        }
        self.sections_trivial(sec)
    }

    /// Whether `w` fixes some boundary point extending `v`. Sections along
    /// fixed letters form a finite graph and a fixed ray is an infinite
    /// path in it, so this is cycle detection.
    pub fn fixes_ray_below(&self, w: &Word, v: &VertexPath) -> Result<bool> {
        self.check_word(w)?;
        let mut sec = self.to_sections(w);
        for &x in v.letters() {
            if self.root_image(&sec, x) != x {
                return Ok(false);
            }
            sec = self.section(&sec, x);
        }
        // 1 = on the DFS stack, 2 = finished.
        let mut state: HashMap<Vec<SLetter>, u8> = HashMap::new();
        let mut stack: Vec<(Vec<SLetter>, u32)> = vec![(sec.clone(), 0)];
        state.insert(sec, 1);
        while let Some((s, x)) = stack.last_mut() {
            if *x as usize == self.alphabet() {
                let (s, _) = stack.pop().unwrap();
                state.insert(s, 2);
                continue;
            }
            let y = *x;
            *x += 1;
            if self.root_image(s, y) != y {
                continue;
            }
            let child = self.section(s, y);
            match state.get(&child) {
                Some(1) => return Ok(true),
                Some(_) => {}
                None => {
                    if state.len() >= SECTION_LIMIT {
                        return Err(Error::budget(
                            "section words",
                            state.len() as u128 + 1,
                            SECTION_LIMIT as u128,
                        ));
                    }
                    state.insert(child.clone(), 1);
                    stack.push((child, 0));
                }
            }
        }
        Ok(false)
    }

    pub fn act(&self, w: &Word, v: &VertexPath) -> Result<VertexPath> {
        self.check_word(w)?;
        let mut letters = v.letters.clone();
        for l in w.letters() {
            let mut sl = 2 * self.generators[l.generator as usize] as u32 + l.inverse as u32;
            for x in letters.iter_mut() {
                let (y, next) = self.step(sl, *x);
                *x = y;
                sl = next;
            }
        }
        Ok(VertexPath { letters })
    }

    /// Generator actions on the vertices of level `depth`.
    pub fn level_images(&self, depth: usize, budgets: &Budgets) -> Result<Vec<Permutation>> {
        let d = self.alphabet();
        let n = d
            .checked_pow(depth as u32)
            .filter(|&n| n <= budgets.degree)
            .ok_or_else(|| {
                Error::budget(
                    "degree",
                    (d as u128).saturating_pow(depth as u32),
                    budgets.degree as u128,
                )
            })?;
        Ok((0..self.rank())
            .map(|i| {
                let w = Word::generator(i as u32);
                let img = (0..n)
                    .map(|v| {
                        let p = VertexPath::from_index(v, depth, d);
                        self.act(&w, &p).unwrap().index(d) as u32
                    })
                    .collect();
                Permutation::from_images_unchecked(img)
            })
            .collect())
    }

    /// The quotient `G → G/St(depth)` as a permutation representation.
    pub fn level_quotient(
        self: &Arc<Self>,
        depth: usize,
        budgets: &Budgets,
    ) -> Result<QuotientMap> {
        let images = self.level_images(depth, budgets)?;
        QuotientMap::trusted(Source::Automaton(self.clone()), images)
    }

    /// The image group at level `depth`.
    pub fn level_group(&self, depth: usize, budgets: &Budgets) -> Result<PermGroup> {
        let n = self.alphabet().pow(depth as u32);
        PermGroup::new(n, self.level_images(depth, budgets)?)
    }

    /// Shortlex-least words of all elements of length at most `radius`.
    pub fn ball(&self, radius: usize, limit: usize) -> Result<Vec<Word>> {
        let key_depth = KEY_DEPTH.min(20 / self.alphabet().ilog2().max(1)) as usize;
        let images = self.level_images(key_depth, &Budgets::default())?;
        let inverses: Vec<Permutation> = images.iter().map(|p| p.inverse()).collect();
        let mut letters: Vec<Letter> = Vec::new();
        for i in 0..self.rank() as u32 {
            letters.push(Letter::pos(i));
            if !self.generator_is_involution(i as usize) {
                letters.push(Letter::neg(i));
            }
        }
        let n = images.first().map_or(1, |p| p.degree());
        let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        let mut words = vec![Word::identity()];
        let mut keys: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
        buckets.insert(keys[0].clone(), vec![0]);
        let mut frontier = 0..1;
        for _ in 0..radius {
            let start = words.len();
            for idx in frontier.clone() {
                for &l in &letters {
                    let w = words[idx].mul(&Word::letter(l));
                    if w.len() <= words[idx].len() {
                        continue;
                    }
                    let p = if l.inverse {
                        &inverses[l.generator as usize]
                    } else {
                        &images[l.generator as usize]
                    };
                    let key: Vec<u32> = keys[idx].iter().map(|&x| p.images()[x as usize]).collect();
                    let bucket = buckets.entry(key.clone()).or_default();
                    let mut known = false;
                    for &j in bucket.iter() {
                        if self.equal(&w, &words[j])? {
                            known = true;
                            break;
                        }
                    }
                    if known {
                        continue;
                    }
                    if words.len() >= limit {
                        return Err(Error::budget(
                            "ball",
                            words.len() as u128 + 1,
                            limit as u128,
                        ));
                    }
                    bucket.push(words.len());
                    words.push(w);
                    keys.push(key);
                }
            }
            frontier = start..words.len();
        }
        Ok(words)
    }

    fn view(&self, radius: usize, members: impl IntoIterator<Item = Word>) -> BallView {
        BallView::new(
            Source::Automaton(Arc::new(self.clone())).tag(),
            radius,
            members.into_iter().map(Element::Word),
        )
    }

    /// `{ g ∈ B_r : g·v = v }`.
    pub fn prefix_stabilizer_ball(
        &self,
        v: &VertexPath,
        radius: usize,
        budgets: &Budgets,
    ) -> Result<BallView> {
        let mut keep = Vec::new();
        for w in self.ball(radius, budgets.ball)? {
            if self.act(&w, v)? == *v {
                keep.push(w);
            }
        }
        Ok(self.view(radius, keep))
    }

    /// Elements of `B_r` that fix some prefix `u` of `v` with `|u| ≤ depth`
    /// and act trivially on the whole subtree below `u`: a certified part
    /// of the germ stabiliser of any boundary point extending `v`.
    pub fn germ_stabilizer_ball(
        &self,
        v: &VertexPath,
        radius: usize,
        depth: usize,
        budgets: &Budgets,
    ) -> Result<BallView> {
        let mut keep = Vec::new();
        for w in self.ball(radius, budgets.ball)? {
            let mut hit = false;
            for k in 0..=depth.min(v.depth()) {
                if self.trivial_below(&w, &v.prefix(k))? {
                    hit = true;
                    break;
                }
            }
            if hit {
                keep.push(w);
            }
        }
        Ok(self.view(radius, keep))
    }

    /// Level-`depth` vertices fixed by `w`, with the regularity probe: a
    /// fixed vertex counts as interior-supported when some descendant at
    /// depth at most `probe_depth` is fixed with trivial section.
    pub fn fixed_vertices(
        &self,
        w: &Word,
        depth: usize,
        probe_depth: usize,
        budgets: &Budgets,
    ) -> Result<FixedVertices> {
        self.check_word(w)?;
        let d = self.alphabet();
        let n = d
            .checked_pow(depth as u32)
            .filter(|&n| n <= budgets.degree)
            .ok_or_else(|| {
                Error::budget(
                    "vertices",
                    (d as u128).saturating_pow(depth as u32),
                    budgets.degree as u128,
                )
            })?;
        let sec0 = self.to_sections(w);
        let mut vertices = Vec::new();
        let mut supported = 0;
        for i in 0..n {
            let v = VertexPath::from_index(i, depth, d);
            if self.act(w, &v)? != v {
                continue;
            }
            let mut sec = sec0.clone();
            for &x in v.letters() {
                sec = self.section(&sec, x);
            }
            if self.supported_below(&sec, depth, probe_depth.max(depth))? {
                supported += 1;
            }
            vertices.push(v);
        }
        Ok(FixedVertices {
            depth,
            vertices,
            interior_supported: supported,
            probe_depth,
        })
    }

    fn supported_below(&self, sec: &[SLetter], depth: usize, probe: usize) -> Result<bool> {
        if self.sections_trivial(sec.to_vec())? {
            return Ok(true);
        }
        if depth >= probe {
            return Ok(false);
        }
        for x in 0..self.alphabet() as u32 {
            if self.root_image(sec, x) == x
                && self.supported_below(&self.section(sec, x), depth + 1, probe)?
            {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn g() -> AutomatonGroup {
        AutomatonGroup::grigorchuk()
    }

    fn w(s: &str) -> Word {
        Alphabet::letters(4).parse(s).unwrap()
    }

    fn path(s: &str) -> VertexPath {
        VertexPath::new(s.bytes().map(|b| (b - b'0') as u32).collect(), 2).unwrap()
    }

    #[test]
    fn recursion_table() {
        let g = g();
        assert_eq!(g.act(&w("a"), &path("0110")).unwrap(), path("1110"));
        assert_eq!(
            g.act(&Word::identity(), &path("0101")).unwrap(),
            path("0101")
        );
        // b = (a, c): on 0x it applies a to x, on 1x it applies c.
        assert_eq!(g.act(&w("b"), &path("00")).unwrap(), path("01"));
        assert_eq!(g.act(&w("b"), &path("10")).unwrap(), path("10"));
        assert_eq!(g.act(&w("b"), &path("100")).unwrap(), path("101"));
        // d = (1, b): trivial below 0, b below 1.
        assert_eq!(g.act(&w("d"), &path("00")).unwrap(), path("00"));
        assert_eq!(g.act(&w("d"), &path("100")).unwrap(), path("101"));
    }

    #[test]
    fn word_problem() {
        let g = g();
        for s in [
            "a^2", "b^2", "c^2", "d^2", "b c d", "(a d)^4", "(a b)^16", "(a c)^8",
        ] {
            assert!(g.is_trivial(&w(s)).unwrap(), "{s}");
        }
        for s in ["a", "b c", "(a d)^2", "(a b)^8", "(a c)^4"] {
            assert!(!g.is_trivial(&w(s)).unwrap(), "{s}");
        }
        assert!((0..4).all(|i| g.generator_is_involution(i)));
    }

    #[test]
    fn fixed_rays() {
        let g = g();
        assert!(g.fixes_ray_below(&Word::identity(), &path("0101")).unwrap());
        assert!(!g.fixes_ray_below(&w("a"), &VertexPath::root()).unwrap());
        // b, c, d all fix 111…
        assert!(g.fixes_ray_below(&w("b"), &path("111")).unwrap());
        // b has section a at 0.
        assert!(!g.fixes_ray_below(&w("b"), &path("0")).unwrap());
        // Oracle: by compactness a fixed ray exists iff every level has a
        // fixed vertex; level 10 suffices for these short words.
        for u in g.ball(4, 1000).unwrap() {
            for v in ["", "0", "1", "01", "110"] {
                let v = path(v);
                let deep = (0..1usize << 10).any(|i| {
                    let mut x = v.clone();
                    for y in VertexPath::from_index(i, 10, 2).letters() {
                        x = x.child(*y);
                    }
                    g.act(&u, &x).unwrap() == x
                });
                assert_eq!(g.fixes_ray_below(&u, &v).unwrap(), deep, "{u:?} {v}");
            }
        }
    }

    #[test]
    fn level_orders() {
        let g = g();
        let b = Budgets::default();
        let orders: Vec<u128> = (0..=6)
            .map(|k| g.level_group(k, &b).unwrap().order().unwrap())
            .collect();
        // Level 0 is trivial, then 2, 2^3, 2^7, 2^12, 2^22, 2^42.
        assert_eq!(orders, vec![1, 2, 8, 1 << 7, 1 << 12, 1 << 22, 1 << 42]);
    }

    #[test]
    fn ball_sizes_match_brute_force() {
        // Oracle: distinct level-10 actions of all free words, which
        // separate elements of length ≤ 4 (their difference has length ≤ 8
        // and acts nontrivially on level 10 unless trivial).
        let g = g();
        let ball = g.ball(4, 100_000).unwrap();
        let imgs = g.level_images(10, &Budgets::default()).unwrap();
        let mut seen = HashSet::new();
        for x in crate::words::free_ball(4, 4) {
            seen.insert(crate::stallings::image_of(&imgs, &x));
        }
        assert_eq!(ball.len(), seen.len());
        assert_eq!(
            &ball[..5],
            &[Word::identity(), w("a"), w("b"), w("c"), w("d")]
        );
    }

    #[test]
    fn stabilizer_balls() {
        let g = g();
        let b = Budgets::default();
        let root = g
            .prefix_stabilizer_ball(&VertexPath::root(), 4, &b)
            .unwrap();
        assert_eq!(root.len(), g.ball(4, 1000).unwrap().len());
        let one = g.prefix_stabilizer_ball(&path("0"), 1, &b).unwrap();
        let words: Vec<Word> = one.words().cloned().collect();
        assert_eq!(words, vec![Word::identity(), w("b"), w("c"), w("d")]);
        let mut prev = root.len();
        for depth in 1..=5 {
            let v = path(&"01101"[..depth]);
            let s = g.prefix_stabilizer_ball(&v, 4, &b).unwrap();
            let germ = g.germ_stabilizer_ball(&v, 4, 6, &b).unwrap();
            assert!(germ.is_subset_of(&s));
            assert!(germ.contains(&Element::Word(Word::identity())));
            assert!(s.len() <= prev);
            prev = s.len();
        }
        // d acts trivially below 0.
        let germ = g.germ_stabilizer_ball(&path("00"), 1, 6, &b).unwrap();
        assert!(germ.contains(&Element::Word(w("d"))));
    }

    #[test]
    fn fixed_vertex_sets() {
        let g = g();
        let b = Budgets::default();
        assert_eq!(
            g.fixed_vertices(&Word::identity(), 3, 6, &b)
                .unwrap()
                .vertices
                .len(),
            8
        );
        assert!(g
            .fixed_vertices(&w("a"), 1, 6, &b)
            .unwrap()
            .vertices
            .is_empty());
        // d moves only 10x at depth 3. Its section at 110 is a, which fixes
        // no child; every other fixed vertex has a trivial section below.
        let d = g.fixed_vertices(&w("d"), 3, 6, &b).unwrap();
        let expected: Vec<VertexPath> = ["000", "001", "010", "011", "110", "111"]
            .map(path)
            .to_vec();
        assert_eq!(d.vertices, expected);
        assert_eq!(d.interior_supported, 5);
    }

    #[test]
    fn levels_are_compatible_and_transitive() {
        let g = g();
        let b = Budgets::default();
        for k in 1..=5 {
            let lo = g.level_images(k, &b).unwrap();
            let hi = g.level_images(k + 1, &b).unwrap();
            for (p, q) in lo.iter().zip(&hi) {
                for v in 0..q.degree() {
                    assert_eq!(q.apply(v) / 2, p.apply(v / 2));
                }
            }
            let pg = g.level_group(k, &b).unwrap();
            let chain = pg.stab_chain();
            assert_eq!(chain.orbit_lengths()[0], 1 << k);
        }
    }
}
