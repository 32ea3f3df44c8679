//! Group laws and the law engine.
//!
//! A law is a nontrivial word `w(x_1, …, x_k)`; a group satisfies it when
//! every substitution evaluates to the identity. Commutators are
//! `[x, y] = x y x⁻¹ y⁻¹` throughout, and the solvability laws are
//! `w_1 = [x_1, x_2]`, `w_{ℓ+1} = [w_ℓ(x_1..x_m), w_ℓ(x_{m+1}..x_{2m})]`
//! with `m = 2^ℓ`, so `w_ℓ` holds exactly in groups of derived length ≤ ℓ.

use rayon::prelude::*;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::permgrp::{FiniteGroup, Subgroup};
use crate::words::{Alphabet, Word};

/// Largest `ℓ` for which `w_ℓ` is built (its length is `4^ℓ`).
pub const MAX_SOLVABILITY_LENGTH: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Law {
    name: String,
    arity: usize,
    term: Word,
    solvability: Option<u32>,
}

impl Law {
    /// A law with the given term; the term must be nontrivial and use at
    /// most `arity` variables. Solvability laws are recognised by their term.
    pub fn new(name: impl Into<String>, arity: usize, term: Word) -> Result<Self> {
        if term.is_identity() {
            return Err(Error::invalid("a law must be a nontrivial word"));
        }
        if term.support_rank() > arity {
            return Err(Error::ArityMismatch {
                expected: term.support_rank(),
                got: arity,
            });
        }
        let solvability = (arity.is_power_of_two() && arity >= 2)
            .then(|| arity.trailing_zeros())
            .filter(|&l| l <= MAX_SOLVABILITY_LENGTH && solvability_term(l) == term);
        Ok(Law {
            name: name.into(),
            arity,
            term,
            solvability,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn term(&self) -> &Word {
        &self.term
    }

    /// `Some(ℓ)` if this is the solvability law `w_ℓ`.
    pub fn solvability_length(&self) -> Option<u32> {
        self.solvability
    }

    /// The term over `x1..xk`.
    pub fn term_string(&self) -> String {
        self.term
            .display(&Alphabet::variables(self.arity))
            .to_string()
    }
}

fn solvability_term(l: u32) -> Word {
    let mut w = Word::commutator(&Word::generator(0), &Word::generator(1));
    for k in 1..l {
        w = Word::commutator(&w, &w.shifted(1 << k));
    }
    w
}

/// The solvability law `w_ℓ` on `2^ℓ` variables.
pub fn solvability_law(l: u32) -> Result<Law> {
    if l == 0 || l > MAX_SOLVABILITY_LENGTH {
        return Err(Error::Precondition(format!(
            "solvability length must be in 1..={MAX_SOLVABILITY_LENGTH}, got {l}"
        )));
    }
    Ok(Law {
        name: format!("w{l}"),
        arity: 1 << l,
        term: solvability_term(l),
        solvability: Some(l),
    })
}

/// An ordered, nonempty list of laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawFamily {
    laws: Vec<Law>,
}

impl LawFamily {
    pub fn new(laws: Vec<Law>) -> Result<Self> {
        if laws.is_empty() {
            return Err(Error::invalid("a law family needs at least one law"));
        }
        Ok(LawFamily { laws })
    }

    /// `w_1, …, w_ℓ`.
    pub fn solvability(up_to: u32) -> Result<Self> {
        LawFamily::new((1..=up_to).map(solvability_law).collect::<Result<_>>()?)
    }

    pub fn laws(&self) -> &[Law] {
        &self.laws
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Every tuple evaluated.
    BruteForce { tuples: u64 },
    /// Value sets of the recursive commutators enumerated level by level;
    /// exact for the solvability laws because their halves use disjoint
    /// variables.
    ValueSets { products: u64 },
    /// Derived length compared with `ℓ`.
    DerivedSeries,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawVerdict {
    pub holds: bool,
    pub method: Method,
    /// A failing tuple of element indices, when brute force found one.
    pub witness: Option<Vec<u32>>,
}

/// Whether the subgroup `h` of `g` satisfies `law`.
///
/// Brute force is used when `|H|^arity` fits the tuple budget. For the
/// solvability laws the value-set enumeration is tried next, then the
/// derived series. Other laws beyond the budget are a budget error.
pub fn satisfies_law(
    g: &FiniteGroup,
    h: &Subgroup,
    law: &Law,
    budgets: &Budgets,
) -> Result<LawVerdict> {
    let n = h.order() as u64;
    let tuples = n.checked_pow(law.arity as u32);
    if let Some(t) = tuples.filter(|&t| t <= budgets.tuples) {
        let witness = brute_force(g, h, law, t);
        return Ok(LawVerdict {
            holds: witness.is_none(),
            method: Method::BruteForce { tuples: t },
            witness,
        });
    }
    let Some(l) = law.solvability else {
        return Err(Error::budget(
            "law tuples",
            tuples.map_or(u128::MAX, u128::from),
            budgets.tuples,
        ));
    };
    if let Some((holds, products)) = value_sets(g, h, l, budgets.tuples) {
        return Ok(LawVerdict {
            holds,
            method: Method::ValueSets { products },
            witness: None,
        });
    }
    let len = g.derived_series(h).derived_length();
    Ok(LawVerdict {
        holds: len.is_some_and(|d| d <= l as usize),
        method: Method::DerivedSeries,
        witness: None,
    })
}

/// Convenience wrapper for the whole group.
pub fn group_satisfies_law(g: &FiniteGroup, law: &Law, budgets: &Budgets) -> Result<bool> {
    Ok(satisfies_law(g, &g.whole(), law, budgets)?.holds)
}

fn brute_force(g: &FiniteGroup, h: &Subgroup, law: &Law, total: u64) -> Option<Vec<u32>> {
    let el = h.elements();
    let n = el.len() as u64;
    let k = law.arity;
    let letters: Vec<(usize, bool)> = law
        .term
        .letters()
        .iter()
        .map(|l| (l.generator as usize, l.inverse))
        .collect();
    let decode = |mut t: u64| -> Vec<u32> {
        let mut tuple = vec![0u32; k];
        for slot in tuple.iter_mut().rev() {
            *slot = el[(t % n) as usize];
            t /= n;
        }
        tuple
    };
    (0..total)
        .into_par_iter()
        .find_first(|&t| {
            let tuple = decode(t);
            let inv: Vec<u32> = tuple.iter().map(|&x| g.inv(x)).collect();
            let mut acc = 0u32;
            for &(v, i) in &letters {
                acc = g.mul(acc, if i { inv[v] } else { tuple[v] });
            }
            acc != 0
        })
        .map(decode)
}

/// `Σ_1 = {[a,b]}`, `Σ_{k+1} = {[u,v] : u,v ∈ Σ_k}`; `w_ℓ` holds iff
/// `Σ_ℓ = {1}`. Returns `None` if the work would exceed `limit` products.
fn value_sets(g: &FiniteGroup, h: &Subgroup, l: u32, limit: u64) -> Option<(bool, u64)> {
    let mut current: Vec<u32> = h.elements().to_vec();
    let mut products = 0u64;
    for _ in 0..l {
        let m = current.len() as u64;
        products = products.checked_add(m * m)?;
        if products > limit {
            return None;
        }
        let mut seen = vec![false; g.order()];
        let mut next = Vec::new();
        for &a in &current {
            for &b in &current {
                let c = g.commutator(a, b);
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    next.push(c);
                }
            }
        }
        next.sort_unstable();
        current = next;
        if current == [0] {
            return Some((true, products));
        }
    }
    Some((current == [0], products))
}

/// Outcome of a virtual-satisfaction search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualVerdict {
    pub holds: bool,
    /// A subgroup of least index satisfying the law.
    pub witness: Option<Subgroup>,
}

/// Literal virtual satisfaction for a finite group: some subgroup satisfies
/// `law`. Always true (the trivial subgroup does), kept for completeness.
pub fn virtually_satisfies(
    g: &FiniteGroup,
    law: &Law,
    budgets: &Budgets,
) -> Result<VirtualVerdict> {
    virtually_satisfies_with_index_bound(g, law, g.order(), budgets)
}

/// Whether some subgroup of index at most `m` satisfies `law`.
pub fn virtually_satisfies_with_index_bound(
    g: &FiniteGroup,
    law: &Law,
    m: usize,
    budgets: &Budgets,
) -> Result<VirtualVerdict> {
    let subs = g.subgroups_of_index_at_most(m, budgets)?;
    // Largest subgroups first, so the witness has least index.
    for h in subs.iter().rev() {
        if satisfies_law(g, h, law, budgets)?.holds {
            return Ok(VirtualVerdict {
                holds: true,
                witness: Some(h.clone()),
            });
        }
    }
    Ok(VirtualVerdict {
        holds: false,
        witness: None,
    })
}

/// Finite stand-in for amenability detection by a family of laws: a group
/// is flagged when some law of the family holds in a subgroup of index at
/// most `index_bound`.
#[derive(Debug, Clone)]
pub struct AmenabilityDetector {
    pub laws: LawFamily,
    pub index_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detection {
    pub detected: bool,
    pub law: Option<String>,
    pub subgroup: Option<Subgroup>,
}

impl AmenabilityDetector {
    pub fn new(laws: LawFamily, index_bound: usize) -> Self {
        AmenabilityDetector { laws, index_bound }
    }

    pub fn detect(&self, g: &FiniteGroup, budgets: &Budgets) -> Result<Detection> {
        for law in self.laws.laws() {
            let v = virtually_satisfies_with_index_bound(g, law, self.index_bound, budgets)?;
            if v.holds {
                return Ok(Detection {
                    detected: true,
                    law: Some(law.name.clone()),
                    subgroup: v.witness,
                });
            }
        }
        Ok(Detection {
            detected: false,
            law: None,
            subgroup: None,
        })
    }
}
