//! Conjugation dynamics on the subgroups of a finite group.
//!
//! For a finite group every conjugation orbit in the space of subgroups is
//! closed, and the minimal closed invariant sets are exactly the conjugacy
//! classes. So a uniformly recurrent subgroup of a finite group is a
//! conjugacy class of subgroups, and that is how [`FiniteUrs`] stores it.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::laws::{satisfies_law, Law};
use crate::perm::Permutation;
use crate::permgrp::{library, CosetAction, FiniteGroup, PermGroup, Subgroup, SubgroupClass};

/// A conjugation-invariant set of subgroups with the action of the
/// generators recorded as point permutations.
pub struct FiniteSubgroupSpace<'g> {
    group: &'g FiniteGroup,
    points: Vec<Subgroup>,
    /// `action[i][k]`: index of the conjugate of point `k` by generator `i`.
    action: Vec<Vec<u32>>,
}

impl<'g> FiniteSubgroupSpace<'g> {
    /// Fails unless `points` is closed under conjugation.
    pub fn new(group: &'g FiniteGroup, mut points: Vec<Subgroup>) -> Result<Self> {
        points.sort();
        points.dedup();
        let index: HashMap<&Subgroup, u32> = points
            .iter()
            .enumerate()
            .map(|(i, h)| (h, i as u32))
            .collect();
        let mut action = Vec::new();
        for &g in group.generator_ids() {
            let row = points
                .iter()
                .map(|h| {
                    index
                        .get(&group.conjugate_subgroup(h, g))
                        .copied()
                        .ok_or_else(|| {
                            Error::invalid("subgroup set is not closed under conjugation")
                        })
                })
                .collect::<Result<Vec<u32>>>()?;
            action.push(row);
        }
        Ok(FiniteSubgroupSpace {
            group,
            points,
            action,
        })
    }

    /// All subgroups, from the lattice.
    pub fn all(group: &'g FiniteGroup, budgets: &Budgets) -> Result<Self> {
        let points = group
            .subgroup_lattice(budgets)?
            .into_iter()
            .flat_map(|c| c.members)
            .collect();
        Self::new(group, points)
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn points(&self) -> &[Subgroup] {
        &self.points
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.points.binary_search(h).ok()
    }

    /// Conjugate of point `k` by the group element `x`, i.e. `x⁻¹ H_k x`.
    pub fn act(&self, x: u32, k: usize) -> usize {
        let c = self.group.conjugate_subgroup(&self.points[k], x);
        self.index_of(&c).expect("closed under conjugation")
    }

    /// Generator images as permutations of the points.
    pub fn generator_permutations(&self) -> Vec<Permutation> {
        self.action
            .iter()
            .map(|row| Permutation::from_images(row.clone()).expect("conjugation is a bijection"))
            .collect()
    }

    /// Orbits of the conjugation action; each is a finite URS.
    pub fn orbits(&self) -> Vec<FiniteUrs> {
        let mut seen = vec![false; self.points.len()];
        let mut out = Vec::new();
        for k in 0..self.points.len() {
            if seen[k] {
                continue;
            }
            let mut members = vec![k];
            seen[k] = true;
            let mut head = 0;
            while head < members.len() {
                let j = members[head];
                head += 1;
                for row in &self.action {
                    let t = row[j] as usize;
                    if !seen[t] {
                        seen[t] = true;
                        members.push(t);
                    }
                }
            }
            let mut members: Vec<Subgroup> = members
                .into_iter()
                .map(|i| self.points[i].clone())
                .collect();
            members.sort();
            out.push(FiniteUrs {
                class: SubgroupClass { members },
            });
        }
        out
    }
}

/// A uniformly recurrent subgroup of a finite group: one conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteUrs {
    class: SubgroupClass,
}

impl FiniteUrs {
    /// The class of `h`.
    pub fn of(g: &FiniteGroup, h: &Subgroup) -> Self {
        FiniteUrs {
            class: g.conjugacy_class(h),
        }
    }

    /// Checks that `class` is a single conjugacy class.
    pub fn from_class(g: &FiniteGroup, class: SubgroupClass) -> Result<Self> {
        if class.is_empty() || g.conjugacy_class(class.representative()) != class {
            return Err(Error::invalid("not a single conjugacy class"));
        }
        Ok(FiniteUrs { class })
    }

    pub fn class(&self) -> &SubgroupClass {
        &self.class
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.class.members
    }

    pub fn representative(&self) -> &Subgroup {
        self.class.representative()
    }

    pub fn len(&self) -> usize {
        self.class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class.is_empty()
    }
}

/// Blocks `ℋ_Σ`, keyed by `Σ`: the conjugates of `L` containing the member.
pub type SigmaPartition = BTreeMap<Vec<Subgroup>, Vec<Subgroup>>;

/// Splits `ℋ` by which conjugates of `l` contain each member.
pub fn sigma_partition(g: &FiniteGroup, urs: &FiniteUrs, l: &Subgroup) -> SigmaPartition {
    let conjugates = g.conjugacy_class(l).members;
    let keys: Vec<Vec<Subgroup>> = urs
        .members()
        .par_iter()
        .map(|h| {
            conjugates
                .iter()
                .filter(|k| h.is_subset_of(k))
                .cloned()
                .collect()
        })
        .collect();
    let mut out = SigmaPartition::new();
    for (sigma, h) in keys.into_iter().zip(urs.members()) {
        out.entry(sigma).or_default().push(h.clone());
    }
    out
}

/// Number of conjugates of `l` containing a member of `ℋ`. The count is
/// the same for every member by equivariance; a different count is
/// reported as a consistency error.
pub fn n_of(g: &FiniteGroup, urs: &FiniteUrs, l: &Subgroup) -> Result<usize> {
    let conjugates = g.conjugacy_class(l).members;
    let counts: Vec<usize> = urs
        .members()
        .par_iter()
        .map(|h| conjugates.iter().filter(|k| h.is_subset_of(k)).count())
        .collect();
    let n = counts[0];
    if let Some(i) = counts.iter().position(|&c| c != n) {
        return Err(Error::Consistency(format!(
            "member {i} lies in {} conjugates, the representative in {n}",
            counts[i]
        )));
    }
    Ok(n)
}

/// Smallest normal subgroup containing a member.
pub fn envelope(g: &FiniteGroup, urs: &FiniteUrs) -> Subgroup {
    g.normal_closure(urs.representative())
}

/// The class of point stabilizers of a transitive action given by
/// generator images.
pub fn stabilizer_urs(g: &FiniteGroup, images: &[Permutation]) -> Result<FiniteUrs> {
    let degree = images.first().map_or(1, |p| p.degree());
    let pos = g.orbit_map(images, 0)?;
    let mut hit = vec![false; degree];
    pos.iter().for_each(|&p| hit[p as usize] = true);
    let orbit = hit.iter().filter(|&&b| b).count();
    if orbit != degree {
        return Err(Error::NotTransitive { orbit, degree });
    }
    let stab: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| pos[x as usize] == 0)
        .collect();
    let h = g.subgroup_from_elements(&stab)?;
    Ok(FiniteUrs::of(g, &h))
}

/// Outcome of a hereditary minimality check.
#[derive(Debug, Clone)]
pub struct Minimality {
    pub holds: bool,
    /// A subgroup within the index bound with more than one orbit.
    pub witness: Option<Subgroup>,
    pub subgroups_checked: usize,
}

/// Whether `k` acts transitively on `ℋ` by conjugation. The orbit of `H`
/// under `K` has `|K| / |K ∩ N(H)|` elements.
pub fn acts_transitively(k: &Subgroup, normalizer: &Subgroup, urs: &FiniteUrs) -> bool {
    k.order() / k.intersection_order(normalizer) == urs.len()
}

/// Whether every subgroup of index at most `index_bound` acts
/// transitively on `ℋ`.
pub fn hereditarily_minimal(
    g: &FiniteGroup,
    urs: &FiniteUrs,
    index_bound: usize,
    budgets: &Budgets,
) -> Result<Minimality> {
    let subs = g.subgroups_of_index_at_most(index_bound, budgets)?;
    Ok(hereditarily_minimal_among(g, urs, &subs))
}

/// As [`hereditarily_minimal`] with the candidate subgroups supplied.
pub fn hereditarily_minimal_among(
    g: &FiniteGroup,
    urs: &FiniteUrs,
    subgroups: &[Subgroup],
) -> Minimality {
    let normalizer = g.normalizer(urs.representative());
    // Report the witness of least index.
    let witness = subgroups
        .par_iter()
        .filter(|k| !acts_transitively(k, &normalizer, urs))
        .max();
    Minimality {
        holds: witness.is_none(),
        witness: witness.cloned(),
        subgroups_checked: subgroups.len(),
    }
}

/// Finite instance of "a law of the members passes to the envelope when
/// the URS is hereditarily minimal".
#[derive(Debug, Clone)]
pub struct EnvelopeLawReport {
    pub law: String,
    pub class_size: usize,
    pub member_order: usize,
    pub member_satisfies: bool,
    pub hereditarily_minimal: bool,
    pub minimality_witness: Option<Subgroup>,
    pub envelope_order: usize,
    pub envelope_satisfies: bool,
}

impl EnvelopeLawReport {
    /// Hypotheses hold but the conclusion fails.
    pub fn counterexample(&self) -> bool {
        self.member_satisfies && self.hereditarily_minimal && !self.envelope_satisfies
    }
}

pub fn envelope_law_check(
    g: &FiniteGroup,
    urs: &FiniteUrs,
    law: &Law,
    index_bound: usize,
    budgets: &Budgets,
) -> Result<EnvelopeLawReport> {
    let subs = g.subgroups_of_index_at_most(index_bound, budgets)?;
    envelope_law_check_among(g, urs, law, &subs, budgets)
}

/// As [`envelope_law_check`] with the bounded-index subgroups supplied.
pub fn envelope_law_check_among(
    g: &FiniteGroup,
    urs: &FiniteUrs,
    law: &Law,
    subgroups: &[Subgroup],
    budgets: &Budgets,
) -> Result<EnvelopeLawReport> {
    let rep = urs.representative();
    let member_satisfies = satisfies_law(g, rep, law, budgets)?.holds;
    let minimality = hereditarily_minimal_among(g, urs, subgroups);
    let env = envelope(g, urs);
    let envelope_satisfies = satisfies_law(g, &env, law, budgets)?.holds;
    Ok(EnvelopeLawReport {
        law: law.name().to_string(),
        class_size: urs.len(),
        member_order: rep.order(),
        member_satisfies,
        hereditarily_minimal: minimality.holds,
        minimality_witness: minimality.witness,
        envelope_order: env.order(),
        envelope_satisfies,
    })
}

/// A finite truncation of the product of alternating groups acting on
/// `∏ Alt(u_i) / E_i`.
pub struct NeumannExample {
    pub degrees: Vec<usize>,
    pub group: FiniteGroup,
    /// Generator images on the product of coset spaces, points in
    /// mixed radix with the first factor most significant.
    pub action: Vec<Permutation>,
    pub urs: FiniteUrs,
    pub members_abelian: bool,
    pub envelope: Subgroup,
    /// Whether the normal closure of `E_i` in `Alt(u_i)` is everything.
    pub factor_closures_full: Vec<bool>,
}

impl NeumannExample {
    pub fn envelope_is_whole(&self) -> bool {
        self.envelope.order() == self.group.order()
    }
}

/// Builds the product action for odd degrees `us` and abelian subgroups
/// `es[i] ≤ Alt(us[i])` given by generators.
pub fn neumann_truncation(
    us: &[usize],
    es: &[Vec<Permutation>],
    budgets: &Budgets,
) -> Result<NeumannExample> {
    if us.len() != es.len() || us.is_empty() {
        return Err(Error::invalid("need one subgroup per factor"));
    }
    let factors: Vec<PermGroup> = us
        .iter()
        .map(|&u| library::alt_group(u))
        .collect::<Result<_>>()?;
    let mut actions: Vec<CosetAction> = Vec::new();
    let mut factor_closures_full = Vec::new();
    for (f, gens) in factors.iter().zip(es) {
        let fg = f.enumerate(budgets)?;
        let e = fg.subgroup_generated(gens)?;
        if !fg.is_abelian(&e) {
            return Err(Error::Precondition("each E_i must be abelian".into()));
        }
        factor_closures_full.push(fg.normal_closure(&e).order() == fg.order());
        actions.push(fg.coset_action(&e)?);
    }
    let q = library::product(&factors, budgets.degree)?;
    let total: usize = actions.iter().map(|a| a.degree()).product();
    if total > budgets.degree {
        return Err(Error::budget(
            "degree",
            total as u128,
            budgets.degree as u128,
        ));
    }
    // Generators of the product are the factor generators in order; each
    // acts on its own coordinate.
    let mut action = Vec::new();
    for (fi, a) in actions.iter().enumerate() {
        let stride: usize = actions[fi + 1..].iter().map(|b| b.degree()).product();
        let n = a.degree();
        for img in &a.images {
            let images = (0..total)
                .map(|x| {
                    let c = (x / stride) % n;
                    (x - c * stride + img.apply(c) * stride) as u32
                })
                .collect();
            action.push(Permutation::from_images_unchecked(images));
        }
    }
    let group = q.enumerate(budgets)?;
    let urs = stabilizer_urs(&group, &action)?;
    let members_abelian = urs.members().iter().all(|h| group.is_abelian(h));
    let envelope = envelope(&group, &urs);
    Ok(NeumannExample {
        degrees: us.to_vec(),
        group,
        action,
        urs,
        members_abelian,
        envelope,
        factor_closures_full,
    })
}
