//! Uniformly recurrent subgroups of finite groups: the `Σ` partition, the
//! constancy of `n(ℋ, L)` and the envelope law transfer, over all classes
//! of the corpus.

use std::collections::BTreeSet;

use serde_json::json;
use sublab::laws::{solvability_law, Law};
use sublab::subdyn::{envelope_law_check_among, n_of, sigma_partition, FiniteUrs};
use sublab::{FiniteGroup, Subgroup};

use super::{Context, Recorder};
use crate::report::Table;

pub const DEFAULT_INDEX_BOUND: usize = 12;

struct Loaded {
    name: String,
    group: FiniteGroup,
    classes: Vec<FiniteUrs>,
}

fn load(ctx: &Context) -> sublab::Result<Vec<Loaded>> {
    ctx.groups
        .iter()
        .map(|(name, pg)| {
            let group = pg.enumerate(&ctx.budgets)?;
            let classes = group
                .subgroup_lattice(&ctx.budgets)?
                .into_iter()
                .map(|c| FiniteUrs::from_class(&group, c))
                .collect::<sublab::Result<_>>()?;
            Ok(Loaded {
                name: name.clone(),
                group,
                classes,
            })
        })
        .collect()
}

/// Conjugates of `l` computed directly from the elements.
fn conjugates(g: &FiniteGroup, l: &Subgroup) -> BTreeSet<Subgroup> {
    (0..g.order() as u32)
        .map(|x| g.conjugate_subgroup(l, x))
        .collect()
}

pub fn sigma(ctx: &Context, rec: &mut Recorder) -> sublab::Result<()> {
    let groups = load(ctx)?;
    rec.param(
        "groups",
        groups.iter().map(|l| l.name.clone()).collect::<Vec<_>>(),
    );
    let mut table = Table::new(&[
        "group",
        "classes",
        "pairs",
        "partitions",
        "keys_correct",
        "equal_blocks",
    ]);
    let (mut pairs, mut bad_partition, mut bad_keys, mut unequal) =
        (0usize, Vec::new(), Vec::new(), Vec::new());
    for ld in &groups {
        let g = &ld.group;
        let (mut part_ok, mut keys_ok, mut eq_ok) = (0usize, 0usize, 0usize);
        for urs in &ld.classes {
            for l in &ld.classes {
                let l = l.representative();
                pairs += 1;
                let sp = sigma_partition(g, urs, l);
                let blocks: Vec<&Subgroup> = sp.values().flatten().collect();
                let distinct: BTreeSet<&Subgroup> = blocks.iter().copied().collect();
                let members: BTreeSet<&Subgroup> = urs.members().iter().collect();
                let partition = blocks.len() == distinct.len()
                    && distinct == members
                    && sp.values().all(|b| !b.is_empty());
                let conj = conjugates(g, l);
                let keys = sp.iter().all(|(key, block)| {
                    block.iter().all(|h| {
                        let expect: Vec<&Subgroup> =
                            conj.iter().filter(|k| h.is_subset_of(k)).collect();
                        expect.len() == key.len() && expect.iter().zip(key).all(|(a, b)| *a == b)
                    })
                });
                let size = sp.values().next().map_or(0, Vec::len);
                let equal = sp.values().all(|b| b.len() == size);
                let tag = || json!({"group": ld.name, "member_order": urs.representative().order(), "l_order": l.order()});
                if partition {
                    part_ok += 1;
                } else {
                    bad_partition.push(tag());
                }
                if keys {
                    keys_ok += 1;
                } else {
                    bad_keys.push(tag());
                }
                if equal {
                    eq_ok += 1;
                } else {
                    unequal.push(tag());
                }
            }
        }
        let n = ld.classes.len() * ld.classes.len();
        table.push(vec![
            ld.name.clone(),
            ld.classes.len().to_string(),
            n.to_string(),
            part_ok.to_string(),
            keys_ok.to_string(),
            eq_ok.to_string(),
        ]);
    }
    rec.check(
        "blocks-partition-the-class",
        bad_partition.is_empty(),
        json!({"pairs": pairs, "failures": bad_partition}),
    );
    rec.check(
        "block-keys-are-containing-conjugates",
        bad_keys.is_empty(),
        json!({"pairs": pairs, "failures": bad_keys}),
    );
    rec.check(
        "blocks-have-equal-size",
        unequal.is_empty(),
        json!({"pairs": pairs, "failures": unequal}),
    );
    rec.table(table);
    Ok(())
}

pub fn n_constancy(ctx: &Context, rec: &mut Recorder) -> sublab::Result<()> {
    let groups = load(ctx)?;
    rec.param(
        "groups",
        groups.iter().map(|l| l.name.clone()).collect::<Vec<_>>(),
    );
    let mut table = Table::new(&[
        "group",
        "classes",
        "pairs",
        "constant",
        "matches_oracle",
        "double_count",
    ]);
    let (mut pairs, mut inconsistent, mut oracle_bad, mut count_bad) =
        (0usize, Vec::new(), Vec::new(), Vec::new());
    for ld in &groups {
        let g = &ld.group;
        let (mut c_ok, mut o_ok, mut d_ok) = (0usize, 0usize, 0usize);
        for urs in &ld.classes {
            for lc in &ld.classes {
                let l = lc.representative();
                pairs += 1;
                let tag = || json!({"group": ld.name, "member_order": urs.representative().order(), "l_order": l.order()});
                let n = match n_of(g, urs, l) {
                    Ok(n) => {
                        c_ok += 1;
                        n
                    }
                    Err(sublab::Error::Consistency(msg)) => {
                        let mut t = tag();
                        t["error"] = json!(msg);
                        inconsistent.push(t);
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let conj = conjugates(g, l);
                let oracle = conj
                    .iter()
                    .filter(|k| urs.representative().is_subset_of(k))
                    .count();
                if oracle == n {
                    o_ok += 1;
                } else {
                    oracle_bad.push(tag());
                }
                // Count pairs (H, K) with H ≤ K both ways.
                let inside = urs.members().iter().filter(|h| h.is_subset_of(l)).count();
                if n * urs.len() == inside * conj.len() {
                    d_ok += 1;
                } else {
                    count_bad.push(tag());
                }
            }
        }
        let n = ld.classes.len() * ld.classes.len();
        table.push(vec![
            ld.name.clone(),
            ld.classes.len().to_string(),
            n.to_string(),
            c_ok.to_string(),
            o_ok.to_string(),
            d_ok.to_string(),
        ]);
    }
    rec.check(
        "n-constant-on-class",
        inconsistent.is_empty(),
        json!({"pairs": pairs, "failures": inconsistent}),
    );
    rec.check(
        "n-matches-direct-count",
        oracle_bad.is_empty(),
        json!({"pairs": pairs, "failures": oracle_bad}),
    );
    rec.check(
        "double-counting-identity",
        count_bad.is_empty(),
        json!({"pairs": pairs, "failures": count_bad}),
    );
    rec.table(table);
    Ok(())
}

pub fn envelope_law(ctx: &Context, rec: &mut Recorder) -> sublab::Result<()> {
    let bound = ctx.index_bound(DEFAULT_INDEX_BOUND);
    let b = &ctx.budgets;
    let laws: Vec<Law> = match &ctx.laws {
        Some(l) => l.clone(),
        None => vec![solvability_law(1)?, solvability_law(2)?],
    };
    rec.param("index_bound", bound);
    rec.param(
        "laws",
        laws.iter()
            .map(|l| l.name().to_string())
            .collect::<Vec<_>>(),
    );
    let groups = load(ctx)?;
    rec.param(
        "groups",
        groups.iter().map(|l| l.name.clone()).collect::<Vec<_>>(),
    );

    let mut table = Table::new(&[
        "group",
        "member_order",
        "class_size",
        "law",
        "member_satisfies",
        "hereditarily_minimal",
        "witness_order",
        "envelope_order",
        "envelope_satisfies",
    ]);
    let (mut instances, mut hypotheses, mut counterexamples) = (0usize, 0usize, Vec::new());
    for ld in &groups {
        let g = &ld.group;
        let subs = g.subgroups_of_index_at_most(bound, b)?;
        for urs in &ld.classes {
            for law in &laws {
                let r = envelope_law_check_among(g, urs, law, &subs, b)?;
                instances += 1;
                hypotheses += (r.member_satisfies && r.hereditarily_minimal) as usize;
                if r.counterexample() {
                    counterexamples.push(
                        json!({"group": ld.name, "member_order": r.member_order, "law": r.law}),
                    );
                }
                table.push(vec![
                    ld.name.clone(),
                    r.member_order.to_string(),
                    r.class_size.to_string(),
                    r.law.clone(),
                    r.member_satisfies.to_string(),
                    r.hereditarily_minimal.to_string(),
                    r.minimality_witness
                        .as_ref()
                        .map_or(String::new(), |w| w.order().to_string()),
                    r.envelope_order.to_string(),
                    r.envelope_satisfies.to_string(),
                ]);
            }
        }
    }
    rec.check(
        "no-envelope-law-counterexample",
        counterexamples.is_empty(),
        json!({"instances": instances, "hypotheses_hold": hypotheses, "counterexamples": counterexamples}),
    );
    rec.table(table);
    Ok(())
}
