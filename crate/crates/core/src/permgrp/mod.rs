//! Exact finite permutation groups.
//!
//! [`PermGroup`] is a cheap description (degree plus generators) that can
//! answer order and membership through a stabiliser chain. Enumerating it
//! gives a [`FiniteGroup`], whose elements are indexed `0..order` in
//! lexicographic order of their image arrays (so the identity is `0`) and
//! whose subgroups are sorted index lists. Two subgroups are equal exactly
//! when their element lists are.

mod chain;
mod lattice;
pub mod library;
mod lowindex;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

pub use chain::StabChain;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::words::GroupBackend;

/// Orders up to this size get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A permutation group given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::invalid(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn stab_chain(&self) -> StabChain {
        StabChain::new(self.degree, &self.generators)
    }

    /// Group order via a stabiliser chain; `None` if it overflows `u128`.
    pub fn order(&self) -> Option<u128> {
        self.stab_chain().order()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.stab_chain().contains(p)
    }

    /// Enumerates all elements by breadth-first closure.
    pub fn enumerate(&self, budgets: &Budgets) -> Result<FiniteGroup> {
        FiniteGroup::enumerate(self.clone(), budgets.order)
    }
}

/// A subgroup of an enumerated group: sorted element indices plus a
/// generating set. Equality, hashing and ordering use the elements only;
/// ordering is by order first.
#[derive(Clone)]
pub struct Subgroup {
    elements: Arc<[u32]>,
    gens: Arc<[u32]>,
}

impl Subgroup {
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        if self.order() > other.order() || !other.order().is_multiple_of(self.order()) {
            return false;
        }
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.elements, &other.elements);
        while i < a.len() {
            if j == b.len() {
                return false;
            }
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Less => return false,
            }
        }
        true
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        let (a, b) = (&self.elements, &other.elements);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
            }
        }
        n
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(order {}, {:?})",
            self.order(),
            &self.elements[..self.order().min(8)]
        )
    }
}

/// A conjugacy class of subgroups: all conjugates, sorted, the least one
/// being the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClass {
    pub members: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn representative(&self) -> &Subgroup {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.members.binary_search(h).is_ok()
    }
}

/// Result of [`FiniteGroup::derived_series`].
#[derive(Debug, Clone)]
pub struct DerivedSeries {
    /// `H ▷ H' ▷ H'' ▷ …`, stopping at the first repeated term.
    pub terms: Vec<Subgroup>,
}

impl DerivedSeries {
    pub fn is_solvable(&self) -> bool {
        self.terms.last().is_some_and(|t| t.is_trivial())
    }

    /// Number of steps down to the trivial group; `None` if not solvable.
    pub fn derived_length(&self) -> Option<usize> {
        self.is_solvable().then(|| self.terms.len() - 1)
    }
}

/// A transitive action on right cosets `L x`.
#[derive(Debug, Clone)]
pub struct CosetAction {
    /// Image of each group generator on cosets.
    pub images: Vec<Permutation>,
    /// Coset index of each group element; coset `0` is `L` itself.
    pub coset_of: Vec<u32>,
    /// Least element of each coset.
    pub representatives: Vec<u32>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    pub fn image_group(&self) -> PermGroup {
        PermGroup {
            degree: self.degree(),
            generators: self.images.clone(),
        }
    }
}

/// An explicitly enumerated permutation group.
pub struct FiniteGroup {
    source: PermGroup,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverses: Vec<u32>,
    gen_ids: Vec<u32>,
    /// `right_gen[x * s + i] = x · g_i`.
    right_gen: Vec<u32>,
    /// Breadth-first tree: element = parent · generator.
    parent: Vec<(u32, u32)>,
    table: OnceLock<Vec<u32>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.source.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteGroup {
    pub fn enumerate(source: PermGroup, max_order: usize) -> Result<Self> {
        let n = source.degree;
        let s = source.generators.len();
        let id = Permutation::identity(n);
        let mut found: HashMap<Permutation, u32> = HashMap::new();
        let mut order: Vec<Permutation> = vec![id.clone()];
        let mut bfs_parent: Vec<(u32, u32)> = vec![(0, u32::MAX)];
        found.insert(id, 0);
        let mut head = 0;
        while head < order.len() {
            let x = order[head].clone();
            for (i, g) in source.generators.iter().enumerate() {
                let y = x.then(g);
                if !found.contains_key(&y) {
                    if order.len() >= max_order {
                        return Err(Error::budget(
                            "group order",
                            order.len() as u128 + 1,
                            max_order as u128,
                        ));
                    }
                    found.insert(y.clone(), order.len() as u32);
                    order.push(y);
                    bfs_parent.push((head as u32, i as u32));
                }
            }
            head += 1;
        }
        // Canonical numbering: lexicographic on image arrays.
        let mut perm_idx: Vec<u32> = (0..order.len() as u32).collect();
        perm_idx.sort_by(|&a, &b| order[a as usize].cmp(&order[b as usize]));
        let mut relabel = vec![0u32; order.len()];
        for (new, &old) in perm_idx.iter().enumerate() {
            relabel[old as usize] = new as u32;
        }
        let mut elements = Vec::with_capacity(order.len());
        let mut parent = vec![(0u32, u32::MAX); order.len()];
        for &old in &perm_idx {
            let (p, g) = bfs_parent[old as usize];
            let new = relabel[old as usize] as usize;
            parent[new] = (relabel[p as usize], g);
            elements.push(std::mem::replace(
                &mut order[old as usize],
                Permutation::identity(0),
            ));
        }
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let mut right_gen = vec![0u32; elements.len() * s];
        for (x, p) in elements.iter().enumerate() {
            for (i, g) in source.generators.iter().enumerate() {
                right_gen[x * s + i] = index[&p.then(g)];
            }
        }
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let gen_ids = source.generators.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup {
            source,
            elements,
            index,
            inverses,
            gen_ids,
            right_gen,
            parent,
            table: OnceLock::new(),
        })
    }

    pub fn perm_group(&self) -> &PermGroup {
        &self.source
    }

    pub fn degree(&self) -> usize {
        self.source.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, x: u32) -> &Permutation {
        &self.elements[x as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Element indices of the generators.
    pub fn generator_ids(&self) -> &[u32] {
        &self.gen_ids
    }

    pub const fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inverses[x as usize]
    }

    #[inline]
    pub fn mul_gen(&self, x: u32, i: usize) -> u32 {
        self.right_gen[x as usize * self.gen_ids.len() + i]
    }

    fn table(&self) -> Option<&[u32]> {
        let n = self.order();
        if n > TABLE_LIMIT {
            return None;
        }
        Some(self.table.get_or_init(|| {
            let mut t = vec![0u32; n * n];
            // Rows filled along the breadth-first tree: a·b = (a·parent(b))·g.
            let mut by_depth: Vec<u32> = (0..n as u32).collect();
            let depth = self.depths();
            by_depth.sort_by_key(|&b| depth[b as usize]);
            for a in 0..n {
                let row = &mut t[a * n..(a + 1) * n];
                for &b in &by_depth {
                    let (p, g) = self.parent[b as usize];
                    row[b as usize] = if g == u32::MAX {
                        a as u32
                    } else {
                        self.right_gen[row[p as usize] as usize * self.gen_ids.len() + g as usize]
                    };
                }
            }
            t
        }))
    }

    fn depths(&self) -> Vec<u32> {
        let mut depth = vec![u32::MAX; self.order()];
        depth[0] = 0;
        fn fill(x: usize, parent: &[(u32, u32)], depth: &mut [u32]) -> u32 {
            if depth[x] != u32::MAX {
                return depth[x];
            }
            let d = fill(parent[x].0 as usize, parent, depth) + 1;
            depth[x] = d;
            d
        }
        for x in 0..self.order() {
            fill(x, &self.parent, &mut depth);
        }
        depth
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = self.table() {
            return t[a as usize * self.order() + b as usize];
        }
        let mut path = Vec::new();
        let mut x = b;
        while x != 0 {
            let (p, g) = self.parent[x as usize];
            path.push(g);
            x = p;
        }
        let mut acc = a;
        for &g in path.iter().rev() {
            acc = self.mul_gen(acc, g as usize);
        }
        acc
    }

    /// `x⁻¹ a x`.
    pub fn conj(&self, a: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), a), x)
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        self.mul(self.mul(ab, self.inv(a)), self.inv(b))
    }

    pub fn element_order(&self, x: u32) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order() as u32).collect(),
            gens: self.gen_ids.iter().copied().filter(|&g| g != 0).collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup {
            elements: Arc::from([0u32]),
            gens: Arc::from([]),
        }
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let mut g: Vec<u32> = Vec::new();
        for &x in gens {
            if x != 0 && !g.contains(&x) {
                g.push(x);
            }
        }
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            for &y in &g {
                let z = self.mul(x, y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    out.push(z);
                }
            }
            head += 1;
        }
        out.sort_unstable();
        Subgroup {
            elements: out.into(),
            gens: g.into(),
        }
    }

    /// `⟨H, x⟩`.
    pub fn extend(&self, h: &Subgroup, x: u32) -> Subgroup {
        if h.contains(x) {
            return h.clone();
        }
        let mut gens = h.gens.to_vec();
        gens.push(x);
        self.closure(&gens)
    }

    pub fn join(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut acc = h.clone();
        for &x in k.generators() {
            acc = self.extend(&acc, x);
        }
        acc
    }

    /// Validates that `elements` form a subgroup.
    pub fn subgroup_from_elements(&self, elements: &[u32]) -> Result<Subgroup> {
        let mut sorted: Vec<u32> = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&x| x as usize >= self.order()) {
            return Err(Error::NotSubgroup);
        }
        let mut acc = self.trivial();
        for &x in &sorted {
            acc = self.extend(&acc, x);
            if acc.order() > sorted.len() {
                return Err(Error::NotSubgroup);
            }
        }
        if *acc.elements != *sorted {
            return Err(Error::NotSubgroup);
        }
        Ok(acc)
    }

    /// The subgroup generated by the given permutations (which must lie in
    /// the group).
    pub fn subgroup_generated(&self, perms: &[Permutation]) -> Result<Subgroup> {
        let ids = perms
            .iter()
            .map(|p| self.index_of(p).ok_or(Error::NotSubgroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&ids))
    }

    fn is_subgroup(&self, h: &Subgroup) -> bool {
        h.contains(0)
            && h.gens
                .iter()
                .all(|&g| h.contains(g) && h.elements.iter().all(|&x| h.contains(self.mul(x, g))))
            && self.closure(&h.gens) == *h
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, x: u32) -> Subgroup {
        let mut el: Vec<u32> = h.elements.iter().map(|&a| self.conj(a, x)).collect();
        el.sort_unstable();
        Subgroup {
            elements: el.into(),
            gens: h.gens.iter().map(|&a| self.conj(a, x)).collect(),
        }
    }

    pub fn normalizes(&self, x: u32, h: &Subgroup) -> bool {
        h.gens.iter().all(|&a| h.contains(self.conj(a, x)))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.gen_ids.iter().all(|&g| self.normalizes(g, h))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let el: Vec<u32> = (0..self.order() as u32)
            .filter(|&x| self.normalizes(x, h))
            .collect();
        let mut acc = self.trivial();
        for &x in &el {
            if !acc.contains(x) {
                acc = self.extend(&acc, x);
            }
            if acc.order() == el.len() {
                break;
            }
        }
        acc
    }

    /// All conjugates of `h`, found by orbit search under the generators.
    pub fn conjugacy_class(&self, h: &Subgroup) -> SubgroupClass {
        let mut seen: HashSet<Subgroup> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(h.clone());
        queue.push_back(h.clone());
        while let Some(k) = queue.pop_front() {
            for &g in &self.gen_ids {
                let c = self.conjugate_subgroup(&k, g);
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        let mut members: Vec<Subgroup> = seen.into_iter().collect();
        members.sort();
        SubgroupClass { members }
    }

    /// Smallest subgroup of `within` that contains `s` and is normalised by
    /// `within`.
    pub fn normal_closure_in(&self, s: &Subgroup, within: &Subgroup) -> Subgroup {
        let mut n = s.clone();
        loop {
            let mut grown = false;
            let gens = n.gens.to_vec();
            'scan: for &a in &gens {
                for &g in within.generators() {
                    let c = self.conj(a, g);
                    if !n.contains(c) {
                        n = self.extend(&n, c);
                        grown = true;
                        break 'scan;
                    }
                }
            }
            if !grown {
                return n;
            }
        }
    }

    /// Smallest normal subgroup containing `s`.
    pub fn normal_closure(&self, s: &Subgroup) -> Subgroup {
        self.normal_closure_in(s, &self.whole())
    }

    /// `[H, H]`: normal closure in `H` of the commutators of its generators.
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let g = h.generators();
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in (i + 1)..g.len() {
                comms.push(self.commutator(g[i], g[j]));
            }
        }
        let seed = self.closure(&comms);
        self.normal_closure_in(&seed, h)
    }

    pub fn derived_series(&self, h: &Subgroup) -> DerivedSeries {
        let mut terms = vec![h.clone()];
        loop {
            let last = terms.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = self.derived_subgroup(last);
            if next == *last {
                break;
            }
            terms.push(next);
        }
        DerivedSeries { terms }
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        let g = h.generators();
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The action on right cosets of `l`.
    pub fn coset_action(&self, l: &Subgroup) -> Result<CosetAction> {
        if !self.is_subgroup(l) {
            return Err(Error::NotSubgroup);
        }
        let mut coset_of = vec![u32::MAX; self.order()];
        let mut representatives = Vec::new();
        for x in 0..self.order() as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = representatives.len() as u32;
            representatives.push(x);
            for &h in l.elements() {
                coset_of[self.mul(h, x) as usize] = c;
            }
        }
        let images = (0..self.gen_ids.len())
            .map(|i| {
                let img = representatives
                    .iter()
                    .map(|&r| coset_of[self.mul_gen(r, i) as usize])
                    .collect();
                Permutation::from_images_unchecked(img)
            })
            .collect();
        Ok(CosetAction {
            images,
            coset_of,
            representatives,
        })
    }

    /// Image point of `start` under every element, for an action given by
    /// generator images. Fails if the images do not define an action.
    pub fn orbit_map(&self, images: &[Permutation], start: usize) -> Result<Vec<u32>> {
        if images.len() != self.gen_ids.len() {
            return Err(Error::ArityMismatch {
                expected: self.gen_ids.len(),
                got: images.len(),
            });
        }
        let mut pos = vec![u32::MAX; self.order()];
        pos[0] = start as u32;
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let p = pos[x as usize] as usize;
            for (i, img) in images.iter().enumerate() {
                let y = self.mul_gen(x, i);
                let q = img.apply(p) as u32;
                if pos[y as usize] == u32::MAX {
                    pos[y as usize] = q;
                    queue.push(y);
                } else if pos[y as usize] != q {
                    return Err(Error::NotHomomorphism);
                }
            }
        }
        Ok(pos)
    }

    /// Full subgroup lattice, one entry per conjugacy class.
    pub fn subgroup_lattice(&self, budgets: &Budgets) -> Result<Vec<SubgroupClass>> {
        if self.order() > budgets.lattice {
            return Err(Error::budget(
                "lattice",
                self.order() as u128,
                budgets.lattice as u128,
            ));
        }
        Ok(lattice::subgroup_classes(self))
    }

    /// All subgroups of index at most `m`, sorted.
    ///
    /// Uses the lattice when the order is within the lattice budget and a
    /// low-index coset-table search otherwise.
    pub fn subgroups_of_index_at_most(&self, m: usize, budgets: &Budgets) -> Result<Vec<Subgroup>> {
        if self.order() <= budgets.lattice {
            let mut out: Vec<Subgroup> = lattice::subgroup_classes(self)
                .into_iter()
                .flat_map(|c| c.members)
                .filter(|h| self.order() / h.order() <= m)
                .collect();
            out.sort();
            return Ok(out);
        }
        lowindex::subgroups_of_index_at_most(self, m, budgets.search_nodes)
    }

    pub fn low_index_subgroups(&self, m: usize, node_budget: u64) -> Result<Vec<Subgroup>> {
        lowindex::subgroups_of_index_at_most(self, m, node_budget)
    }
}

impl GroupBackend for FiniteGroup {
    type Elem = u32;

    fn identity(&self) -> u32 {
        0
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        FiniteGroup::mul(self, *a, *b)
    }

    fn inv(&self, a: &u32) -> u32 {
        FiniteGroup::inv(self, *a)
    }
}

/// Permutations of a fixed degree under composition.
#[derive(Debug, Clone, Copy)]
pub struct SymmetricBackend {
    pub degree: usize,
}

impl GroupBackend for SymmetricBackend {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn mul(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.then(b)
    }

    fn inv(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }
}

#[cfg(test)]
mod tests;
