//! Closures of subgroups over towers of finite quotients.
//!
//! A [`Tower`] is a finite list of homomorphisms `φ_i : G → Q_i` onto
//! finite groups; the closure it defines is
//! `cl(H) = ∩ φ_i⁻¹(φ_i(H))`. Everything is computed on balls: a
//! [`BallView`] is `X ∩ B_r` for a subgroup or closure `X`.
//!
//! Three sources are supported: free groups (words), automaton groups
//! (words in the automaton generators) and `Z[1/p]`. For `Z[1/p]` the maps
//! are reductions modulo `q` coprime to `p` and the ball `B_r` is the set
//! of elements of height at most `2^r`.

pub mod zp;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgrp::{PermGroup, StabChain};
use crate::stallings::StallingsGraph;
use crate::treelab::AutomatonGroup;
use crate::words::{free_ball, Word};

pub use zp::ZpElement;

/// The group all maps of a tower start from.
#[derive(Debug, Clone)]
pub enum Source {
    Free { rank: usize },
    Automaton(Arc<AutomatonGroup>),
    PAdic { p: u64 },
}

/// Identifies a source for compatibility checks and reports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BackendTag {
    Free(usize),
    Automaton(String),
    PAdic(u64),
}

impl fmt::Display for BackendTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendTag::Free(k) => write!(f, "F_{k}"),
            BackendTag::Automaton(name) => write!(f, "automaton group {name}"),
            BackendTag::PAdic(p) => write!(f, "Z[1/{p}]"),
        }
    }
}

impl Source {
    pub fn tag(&self) -> BackendTag {
        match self {
            Source::Free { rank } => BackendTag::Free(*rank),
            Source::Automaton(g) => BackendTag::Automaton(g.name().to_string()),
            Source::PAdic { p } => BackendTag::PAdic(*p),
        }
    }

    fn same(&self, other: &Source) -> bool {
        match (self, other) {
            (Source::Automaton(a), Source::Automaton(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => self.tag() == other.tag(),
        }
    }

    fn expect(&self, other: &Source) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::BackendMismatch {
                expected: self.tag().to_string(),
                found: other.tag().to_string(),
            })
        }
    }

    /// Number of word generators, for word-based sources.
    pub fn rank(&self) -> Option<usize> {
        match self {
            Source::Free { rank } => Some(*rank),
            Source::Automaton(g) => Some(g.rank()),
            Source::PAdic { .. } => None,
        }
    }

    /// The ball `B_r`, sorted.
    pub fn ball(&self, radius: usize, budgets: &Budgets) -> Result<Vec<Element>> {
        match self {
            Source::Free { rank } => {
                let size = free_ball_size(*rank, radius);
                if size > budgets.ball as u128 {
                    return Err(Error::budget("ball", size, budgets.ball as u128));
                }
                Ok(free_ball(*rank, radius)
                    .into_iter()
                    .map(Element::Word)
                    .collect())
            }
            Source::Automaton(g) => Ok(g
                .ball(radius, budgets.ball)?
                .into_iter()
                .map(Element::Word)
                .collect()),
            Source::PAdic { p } => Ok(zp::ball(*p, radius as u32, budgets.ball)?
                .into_iter()
                .map(Element::PAdic)
                .collect()),
        }
    }

    fn check_element(&self, g: &Element) -> Result<()> {
        match (self, g) {
            (Source::PAdic { p }, Element::PAdic(x)) if x.p() == *p => Ok(()),
            (Source::Free { .. } | Source::Automaton(_), Element::Word(w)) => {
                let rank = self.rank().unwrap();
                if w.support_rank() > rank {
                    Err(Error::GeneratorOutOfRange {
                        index: w.support_rank() - 1,
                        rank,
                    })
                } else {
                    Ok(())
                }
            }
            _ => Err(Error::BackendMismatch {
                expected: self.tag().to_string(),
                found: g.kind().to_string(),
            }),
        }
    }
}

fn free_ball_size(rank: usize, radius: usize) -> u128 {
    if rank == 0 {
        return 1;
    }
    let (k, mut total, mut sphere) = (rank as u128, 1u128, 2 * rank as u128);
    for _ in 0..radius {
        total = total.saturating_add(sphere);
        sphere = sphere.saturating_mul(2 * k - 1);
    }
    total
}

/// An element of a source group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Word(Word),
    PAdic(ZpElement),
}

impl Element {
    fn kind(&self) -> &'static str {
        match self {
            Element::Word(_) => "word",
            Element::PAdic(_) => "Z[1/p] element",
        }
    }

    /// Least `r` with the element in `B_r`.
    pub fn level(&self) -> usize {
        match self {
            Element::Word(w) => w.len(),
            Element::PAdic(x) => x.level() as usize,
        }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            Element::Word(w) => Some(w),
            Element::PAdic(_) => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Word(w) => {
                let names: Vec<String> = (0..w.support_rank().max(1)).map(default_name).collect();
                let alpha = crate::words::Alphabet::new(names).expect("distinct names");
                write!(f, "{}", w.display(&alpha))
            }
            Element::PAdic(x) => write!(f, "{x}"),
        }
    }
}

fn default_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{}", i + 1)
    }
}

/// Where a quotient map lands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Target {
    /// Permutation images of the generators.
    Perm(Vec<Permutation>),
    /// Reduction `Z[1/p] → Z/q`.
    Modulus(u64),
}

/// A homomorphism from the source onto a finite group.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: Source,
    target: Target,
    inverses: Vec<Permutation>,
}

/// Image of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Image {
    Perm(Permutation),
    Residue(u64),
}

impl QuotientMap {
    /// A map from a free group; every assignment of generators is a
    /// homomorphism.
    pub fn free(rank: usize, images: Vec<Permutation>) -> Result<Self> {
        Self::check_images(rank, &images)?;
        Self::trusted(Source::Free { rank }, images)
    }

    /// Reduction modulo `q` on `Z[1/p]`; requires `gcd(p, q) = 1`.
    pub fn modulus(p: u64, q: u64) -> Result<Self> {
        if q == 0 || zp::gcd(p, q) != 1 {
            return Err(Error::invalid(format!(
                "modulus {q} must be positive and coprime to {p}"
            )));
        }
        Ok(QuotientMap {
            source: Source::PAdic { p },
            target: Target::Modulus(q),
            inverses: Vec::new(),
        })
    }

    /// A map from an automaton group, validated on all relations of length
    /// at most `radius` (relators found by the exact word problem).
    pub fn automaton(
        group: Arc<AutomatonGroup>,
        images: Vec<Permutation>,
        radius: usize,
    ) -> Result<Self> {
        Self::check_images(group.rank(), &images)?;
        let map = Self::trusted(Source::Automaton(group.clone()), images)?;
        for w in free_ball(group.rank(), radius) {
            if !w.is_identity() && group.is_trivial(&w)? && !map.perm_image(&w).is_identity() {
                return Err(Error::NotHomomorphism);
            }
        }
        Ok(map)
    }

    fn check_images(rank: usize, images: &[Permutation]) -> Result<()> {
        if images.len() != rank {
            return Err(Error::ArityMismatch {
                expected: rank,
                got: images.len(),
            });
        }
        if images.windows(2).any(|w| w[0].degree() != w[1].degree()) {
            return Err(Error::invalid("generator images have different degrees"));
        }
        Ok(())
    }

    /// Builds a map whose homomorphism property is known by construction.
    pub(crate) fn trusted(source: Source, images: Vec<Permutation>) -> Result<Self> {
        let inverses = images.iter().map(|p| p.inverse()).collect();
        Ok(QuotientMap {
            source,
            target: Target::Perm(images),
            inverses,
        })
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    /// Degree of a permutation target, or the modulus.
    pub fn size(&self) -> usize {
        match &self.target {
            Target::Perm(images) => images.first().map_or(1, |p| p.degree()),
            Target::Modulus(q) => *q as usize,
        }
    }

    /// The image group as a permutation group (`None` for moduli).
    pub fn target_group(&self) -> Option<PermGroup> {
        match &self.target {
            Target::Perm(images) => {
                Some(PermGroup::new(self.size(), images.clone()).expect("same degree"))
            }
            Target::Modulus(_) => None,
        }
    }

    fn perm_image(&self, w: &Word) -> Permutation {
        let Target::Perm(images) = &self.target else {
            unreachable!("word image on a modulus map")
        };
        let n = self.size();
        let mut acc: Vec<u32> = (0..n as u32).collect();
        for l in w.letters() {
            let p = if l.inverse {
                &self.inverses[l.generator as usize]
            } else {
                &images[l.generator as usize]
            };
            acc.iter_mut().for_each(|x| *x = p.images()[*x as usize]);
        }
        Permutation::from_images_unchecked(acc)
    }

    pub fn image(&self, g: &Element) -> Result<Image> {
        self.source.check_element(g)?;
        Ok(match (&self.target, g) {
            (Target::Perm(_), Element::Word(w)) => Image::Perm(self.perm_image(w)),
            (Target::Modulus(q), Element::PAdic(x)) => Image::Residue(x.residue(*q)),
            _ => unreachable!("checked by source"),
        })
    }

    /// `φ(H)`.
    pub fn image_subgroup(&self, h: &SubgroupSpec) -> Result<ImageSubgroup> {
        h.check_source(&self.source)?;
        match &self.target {
            Target::Modulus(q) => {
                let d = match h {
                    SubgroupSpec::PAdicZero => *q,
                    SubgroupSpec::PAdicFull => 1,
                    // p^n is a unit mod q, so it generates everything.
                    SubgroupSpec::PAdicPower(_) => 1,
                    _ => unreachable!("variant checked above"),
                };
                Ok(ImageSubgroup::Residues {
                    modulus: *q,
                    step: d,
                })
            }
            Target::Perm(_) => {
                let gens: Vec<Permutation> = h
                    .generators()?
                    .iter()
                    .map(|w| self.perm_image(w))
                    .filter(|p| !p.is_identity())
                    .collect();
                Ok(ImageSubgroup::perm(self.size(), gens))
            }
        }
    }

    /// Same source and same target.
    pub fn same_as(&self, other: &QuotientMap) -> bool {
        self.source.same(&other.source) && self.target == other.target
    }
}

/// `φ(H)` inside a finite target.
#[derive(Debug)]
pub enum ImageSubgroup {
    Perm {
        degree: usize,
        generators: Vec<Permutation>,
        /// Orbit number of every point.
        orbit_of: Vec<u32>,
        chain: OnceLock<StabChain>,
    },
    /// `step · Z/modulus` (`step` divides `modulus`).
    Residues { modulus: u64, step: u64 },
}

impl ImageSubgroup {
    fn perm(degree: usize, generators: Vec<Permutation>) -> Self {
        let mut orbit_of = vec![u32::MAX; degree];
        let mut next = 0;
        for start in 0..degree {
            if orbit_of[start] != u32::MAX {
                continue;
            }
            orbit_of[start] = next;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for g in &generators {
                    let y = g.apply(x);
                    if orbit_of[y] == u32::MAX {
                        orbit_of[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        ImageSubgroup::Perm {
            degree,
            generators,
            orbit_of,
            chain: OnceLock::new(),
        }
    }

    /// Exact membership of an image.
    pub fn contains(&self, x: &Image) -> bool {
        match (self, x) {
            (ImageSubgroup::Residues { step, .. }, Image::Residue(r)) => r % step == 0,
            (
                ImageSubgroup::Perm {
                    degree,
                    generators,
                    orbit_of,
                    chain,
                },
                Image::Perm(p),
            ) => {
                // Elements of the subgroup preserve every orbit.
                if (0..*degree).any(|v| orbit_of[v] != orbit_of[p.apply(v)]) {
                    return false;
                }
                if p.is_identity() {
                    return true;
                }
                chain
                    .get_or_init(|| StabChain::new(*degree, generators))
                    .contains(p)
            }
            _ => false,
        }
    }

    pub fn order(&self) -> Option<u128> {
        match self {
            ImageSubgroup::Residues { modulus, step } => Some((*modulus / *step) as u128),
            ImageSubgroup::Perm {
                degree,
                generators,
                chain,
                ..
            } => chain
                .get_or_init(|| StabChain::new(*degree, generators))
                .order(),
        }
    }

    pub fn generators(&self) -> &[Permutation] {
        match self {
            ImageSubgroup::Perm { generators, .. } => generators,
            ImageSubgroup::Residues { .. } => &[],
        }
    }
}

/// A subgroup of a source group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    /// Generated by words (free or automaton sources).
    Words(Vec<Word>),
    /// A finitely generated subgroup of a free group.
    Stallings(StallingsGraph),
    /// `p^n Z ≤ Z[1/p]`.
    PAdicPower(u32),
    PAdicZero,
    PAdicFull,
}

impl SubgroupSpec {
    fn check_source(&self, source: &Source) -> Result<()> {
        let ok = match (self, source) {
            (SubgroupSpec::Words(ws), Source::Free { rank }) => {
                ws.iter().all(|w| w.support_rank() <= *rank)
            }
            (SubgroupSpec::Words(ws), Source::Automaton(g)) => {
                ws.iter().all(|w| w.support_rank() <= g.rank())
            }
            (SubgroupSpec::Stallings(s), Source::Free { rank }) => s.rank() == *rank,
            (
                SubgroupSpec::PAdicPower(_) | SubgroupSpec::PAdicZero | SubgroupSpec::PAdicFull,
                Source::PAdic { .. },
            ) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BackendMismatch {
                expected: source.tag().to_string(),
                found: self.describe(),
            })
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SubgroupSpec::Words(ws) => format!("subgroup generated by {} words", ws.len()),
            SubgroupSpec::Stallings(g) => {
                format!("Stallings graph with {} vertices", g.vertex_count())
            }
            SubgroupSpec::PAdicPower(n) => format!("p^{n} Z"),
            SubgroupSpec::PAdicZero => "{0}".into(),
            SubgroupSpec::PAdicFull => "Z[1/p]".into(),
        }
    }

    fn generators(&self) -> Result<Vec<Word>> {
        match self {
            SubgroupSpec::Words(ws) => Ok(ws.clone()),
            SubgroupSpec::Stallings(g) => Ok(g.free_basis()),
            _ => Err(Error::Unsupported(
                "word generators of a Z[1/p] subgroup".into(),
            )),
        }
    }

    /// A membership oracle, if the backend decides membership.
    fn decider(&self, source: &Source) -> Result<Option<Decider>> {
        self.check_source(source)?;
        Ok(match (self, source) {
            (SubgroupSpec::Words(ws), Source::Free { rank }) => {
                Some(Decider::Graph(StallingsGraph::from_generators(*rank, ws)?))
            }
            (SubgroupSpec::Stallings(g), _) => Some(Decider::Graph(g.clone())),
            (SubgroupSpec::PAdicPower(n), _) => Some(Decider::Power(*n)),
            (SubgroupSpec::PAdicZero, _) => Some(Decider::Zero),
            (SubgroupSpec::PAdicFull, _) => Some(Decider::Full),
            _ => None,
        })
    }
}

enum Decider {
    Graph(StallingsGraph),
    Power(u32),
    Zero,
    Full,
}

impl Decider {
    fn member(&self, g: &Element) -> bool {
        match (self, g) {
            (Decider::Graph(s), Element::Word(w)) => s.member(w),
            (Decider::Power(n), Element::PAdic(x)) => x.in_power(*n),
            (Decider::Zero, Element::PAdic(x)) => x.is_zero(),
            (Decider::Full, _) => true,
            _ => false,
        }
    }
}

/// A finite family of quotient maps from one source.
#[derive(Debug, Clone)]
pub struct Tower {
    source: Source,
    maps: Vec<QuotientMap>,
    /// For pairs `(i, j)`, an index `m` with `ker φ_m ≤ ker φ_i ∩ ker φ_j`.
    filtering: Option<Vec<((usize, usize), usize)>>,
}

impl Tower {
    pub fn new(source: Source, maps: Vec<QuotientMap>) -> Result<Self> {
        for m in &maps {
            source.expect(&m.source)?;
        }
        Ok(Tower {
            source,
            maps,
            filtering: None,
        })
    }

    pub fn empty(source: Source) -> Self {
        Tower {
            source,
            maps: Vec::new(),
            filtering: None,
        }
    }

    /// Reductions of `Z[1/p]` modulo each `q`.
    pub fn moduli(p: u64, qs: &[u64]) -> Result<Self> {
        let maps = qs
            .iter()
            .map(|&q| QuotientMap::modulus(p, q))
            .collect::<Result<_>>()?;
        Tower::new(Source::PAdic { p }, maps)
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn maps(&self) -> &[QuotientMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Appends a map unless an identical one is present; returns whether
    /// it was added.
    pub fn push(&mut self, map: QuotientMap) -> Result<bool> {
        self.source.expect(&map.source)?;
        if self.maps.iter().any(|m| m.same_as(&map)) {
            return Ok(false);
        }
        self.maps.push(map);
        self.filtering = None;
        Ok(true)
    }

    /// The first `k` maps.
    pub fn prefix(&self, k: usize) -> Tower {
        Tower {
            source: self.source.clone(),
            maps: self.maps[..k.min(self.maps.len())].to_vec(),
            filtering: None,
        }
    }

    pub fn filtering_witnesses(&self) -> Option<&[((usize, usize), usize)]> {
        self.filtering.as_deref()
    }

    /// Records filtering witnesses after checking them on `samples`:
    /// `φ_m(g) = 1` must imply `φ_i(g) = 1` and `φ_j(g) = 1`.
    pub fn set_filtering(
        &mut self,
        witnesses: Vec<((usize, usize), usize)>,
        samples: &[Element],
    ) -> Result<()> {
        for &((i, j), m) in &witnesses {
            let n = self.maps.len();
            if i >= n || j >= n || m >= n {
                return Err(Error::invalid("filtering witness refers to a missing map"));
            }
            for g in samples {
                let trivial = |k: usize| -> Result<bool> {
                    Ok(match self.maps[k].image(g)? {
                        Image::Perm(p) => p.is_identity(),
                        Image::Residue(r) => r == 0,
                    })
                };
                if trivial(m)? && !(trivial(i)? && trivial(j)?) {
                    return Err(Error::Consistency(format!(
                        "kernel of map {m} is not inside kernels of maps {i} and {j}"
                    )));
                }
            }
        }
        self.filtering = Some(witnesses);
        Ok(())
    }
}

/// `H ∩ B_r` or `cl(H) ∩ B_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallView {
    backend: BackendTag,
    radius: usize,
    members: BTreeSet<Element>,
}

impl BallView {
    pub fn new(
        backend: BackendTag,
        radius: usize,
        members: impl IntoIterator<Item = Element>,
    ) -> Self {
        BallView {
            backend,
            radius,
            members: members.into_iter().collect(),
        }
    }

    pub fn backend(&self) -> &BackendTag {
        &self.backend
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn members(&self) -> &BTreeSet<Element> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.members.contains(g)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.members.iter().filter_map(|e| e.as_word())
    }

    pub fn is_subset_of(&self, other: &BallView) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `{0}` or the empty word only.
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
            && self.members.iter().all(|e| match e {
                Element::Word(w) => w.is_identity(),
                Element::PAdic(x) => x.is_zero(),
            })
    }
}

/// Closure of `H` over a tower, with images of `H` precomputed.
pub struct PreparedClosure<'a> {
    tower: &'a Tower,
    images: Vec<ImageSubgroup>,
    decider: Option<Decider>,
}

impl<'a> PreparedClosure<'a> {
    pub fn new(h: &SubgroupSpec, tower: &'a Tower) -> Result<Self> {
        let images = tower
            .maps
            .iter()
            .map(|m| m.image_subgroup(h))
            .collect::<Result<_>>()?;
        Ok(PreparedClosure {
            tower,
            images,
            decider: h.decider(&tower.source)?,
        })
    }

    /// `φ_i(H)` for every map.
    pub fn images(&self) -> &[ImageSubgroup] {
        &self.images
    }

    /// Index of the first map with `φ_i(g) ∉ φ_i(H)`, if any.
    pub fn separating_map(&self, g: &Element) -> Result<Option<usize>> {
        for (i, (m, img)) in self.tower.maps.iter().zip(&self.images).enumerate() {
            if !img.contains(&m.image(g)?) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Membership in `cl(H)`. Elements of `H` itself are accepted without
    /// computing images when membership in `H` is decidable, which gives
    /// the same answer since `φ(g) ∈ φ(H)` for every `g ∈ H`.
    pub fn contains(&self, g: &Element) -> Result<bool> {
        self.tower.source.check_element(g)?;
        if self.decider.as_ref().is_some_and(|d| d.member(g)) {
            return Ok(true);
        }
        Ok(self.separating_map(g)?.is_none())
    }

    /// Membership in `cl(H)` from the images alone.
    pub fn contains_by_images(&self, g: &Element) -> Result<bool> {
        Ok(self.separating_map(g)?.is_none())
    }
}

/// `g ∈ cl(H)`: `φ_i(g) ∈ φ_i(H)` for every map of the tower.
pub fn in_closure(g: &Element, h: &SubgroupSpec, tower: &Tower) -> Result<bool> {
    PreparedClosure::new(h, tower)?.contains(g)
}

/// `cl(H) ∩ B_r`.
pub fn closure_ball(
    h: &SubgroupSpec,
    tower: &Tower,
    radius: usize,
    budgets: &Budgets,
) -> Result<BallView> {
    let prepared = PreparedClosure::new(h, tower)?;
    let ball = tower.source.ball(radius, budgets)?;
    let mut members = Vec::new();
    for g in ball {
        if prepared.contains(&g)? {
            members.push(g);
        }
    }
    Ok(BallView::new(tower.source.tag(), radius, members))
}

/// `H ∩ B_r`; requires decidable membership.
pub fn truncate(
    h: &SubgroupSpec,
    source: &Source,
    radius: usize,
    budgets: &Budgets,
) -> Result<BallView> {
    let decider = h.decider(source)?.ok_or_else(|| {
        Error::Unsupported(format!(
            "membership in a {} for {}",
            h.describe(),
            source.tag()
        ))
    })?;
    let members: Vec<Element> = source
        .ball(radius, budgets)?
        .into_iter()
        .filter(|g| decider.member(g))
        .collect();
    Ok(BallView::new(source.tag(), radius, members))
}

/// Largest `r' ≤ min radius` with `X ∩ B_{r'} = Y ∩ B_{r'}`.
pub fn chabauty_agreement(x: &BallView, y: &BallView) -> Result<usize> {
    if x.backend != y.backend {
        return Err(Error::BackendMismatch {
            expected: x.backend.to_string(),
            found: y.backend.to_string(),
        });
    }
    let r = x.radius.min(y.radius);
    let first = x
        .members
        .symmetric_difference(&y.members)
        .map(|e| e.level())
        .filter(|&l| l <= r)
        .min();
    Ok(match first {
        Some(l) => l.saturating_sub(1),
        None => r,
    })
}

/// One row of a semicontinuity scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UscEntry {
    /// Agreement of `H_n ∩ B_r` with `limit ∩ B_r`.
    pub agreement: usize,
    pub truncation_size: usize,
    pub closure_size: usize,
    /// `cl(H_n) ∩ B_r ⊆ cl(limit) ∩ B_r`.
    pub closure_contained: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UscReport {
    pub radius: usize,
    pub entries: Vec<UscEntry>,
    pub limit_truncation_size: usize,
    pub limit_closure_size: usize,
    /// Entries that agree with the limit on the whole ball.
    pub tail: Vec<usize>,
    /// Least element in the closure of every tail entry but not in the
    /// closure of the limit.
    pub witness: Option<Element>,
}

impl UscReport {
    pub fn violation(&self) -> bool {
        self.witness.is_some()
    }
}

/// Compares closures along a sequence with the closure of its limit.
pub fn usc_scan(
    sequence: &[SubgroupSpec],
    limit: &SubgroupSpec,
    tower: &Tower,
    radius: usize,
    budgets: &Budgets,
) -> Result<UscReport> {
    let limit_trunc = truncate(limit, &tower.source, radius, budgets)?;
    let limit_closure = closure_ball(limit, tower, radius, budgets)?;
    let mut entries = Vec::new();
    let mut tail = Vec::new();
    let mut common: Option<BTreeSet<Element>> = None;
    for (i, h) in sequence.iter().enumerate() {
        let trunc = truncate(h, &tower.source, radius, budgets)?;
        let closure = closure_ball(h, tower, radius, budgets)?;
        let agreement = chabauty_agreement(&trunc, &limit_trunc)?;
        if agreement == radius {
            tail.push(i);
            common = Some(match common {
                None => closure.members.clone(),
                Some(c) => c.intersection(&closure.members).cloned().collect(),
            });
        }
        entries.push(UscEntry {
            agreement,
            truncation_size: trunc.len(),
            closure_size: closure.len(),
            closure_contained: closure.is_subset_of(&limit_closure),
        });
    }
    let witness = common.and_then(|c| {
        c.difference(&limit_closure.members)
            .min_by_key(|e| (e.level(), (*e).clone()))
            .cloned()
    });
    Ok(UscReport {
        radius,
        entries,
        limit_truncation_size: limit_trunc.len(),
        limit_closure_size: limit_closure.len(),
        tail,
        witness,
    })
}

/// `φ(H)`, the finite face of `HN` for `N = ker φ`.
pub fn lsc_product_map(h: &SubgroupSpec, phi: &QuotientMap) -> Result<ImageSubgroup> {
    phi.image_subgroup(h)
}

/// Whether the closure of `⟨cl(H) ∩ B_r⟩` adds nothing inside `B_r`.
pub fn idempotence_check(
    h: &SubgroupSpec,
    tower: &Tower,
    radius: usize,
    budgets: &Budgets,
) -> Result<bool> {
    let closed = closure_ball(h, tower, radius, budgets)?;
    let again = match &tower.source {
        Source::PAdic { .. } => {
            // Subgroups of Z[1/p] met here are determined by their images:
            // use the generated images directly.
            closure_of_members_padic(&closed, tower, radius, budgets)?
        }
        _ => {
            let gens: Vec<Word> = closed
                .words()
                .filter(|w| !w.is_identity())
                .cloned()
                .collect();
            closure_ball_unshortcut(&SubgroupSpec::Words(gens), tower, radius, budgets)?
        }
    };
    Ok(again == closed)
}

fn closure_ball_unshortcut(
    h: &SubgroupSpec,
    tower: &Tower,
    radius: usize,
    budgets: &Budgets,
) -> Result<BallView> {
    let prepared = PreparedClosure::new(h, tower)?;
    let mut members = Vec::new();
    for g in tower.source.ball(radius, budgets)? {
        if prepared.contains_by_images(&g)? {
            members.push(g);
        }
    }
    Ok(BallView::new(tower.source.tag(), radius, members))
}

/// Closure of the subgroup generated by the members of a `Z[1/p]` view,
/// computed modulo each `q` as the subgroup generated by their residues.
fn closure_of_members_padic(
    view: &BallView,
    tower: &Tower,
    radius: usize,
    budgets: &Budgets,
) -> Result<BallView> {
    let steps: Vec<u64> = tower
        .maps
        .iter()
        .map(|m| {
            let Target::Modulus(q) = m.target else {
                unreachable!()
            };
            let mut d = q;
            for e in &view.members {
                if let Image::Residue(r) = m.image(e).expect("same source") {
                    d = zp::gcd(d, r);
                }
            }
            d
        })
        .collect();
    let mut members = Vec::new();
    for g in tower.source.ball(radius, budgets)? {
        let mut ok = true;
        for (m, &d) in tower.maps.iter().zip(&steps) {
            if let Image::Residue(r) = m.image(&g)? {
                if r % d != 0 {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            members.push(g);
        }
    }
    Ok(BallView::new(tower.source.tag(), radius, members))
}

#[cfg(test)]
mod tests;
