//! `Alt(5) × Alt(7)` acting on cosets of `E_5 × E_7` with both `E_i`
//! abelian: the stabilizer class has abelian members but its envelope is
//! the whole, non-abelian group.

use serde_json::json;
use sublab::laws::solvability_law;
use sublab::subdyn::{envelope_law_check_among, neumann_truncation};
use sublab::Permutation;

use super::{Context, Recorder};
use crate::report::Table;

pub const DEGREES: [usize; 2] = [5, 7];
pub const DEFAULT_INDEX_BOUND: usize = 12;

/// `E_u = ⟨(1 2)(3 4)⟩ ≤ Alt(u)`.
fn double_transposition(u: usize) -> sublab::Result<Vec<Permutation>> {
    Ok(vec![Permutation::from_cycles(u, &[&[0, 1], &[2, 3]])?])
}

pub fn run(ctx: &Context, rec: &mut Recorder) -> sublab::Result<()> {
    let b = &ctx.budgets;
    let bound = ctx.index_bound(DEFAULT_INDEX_BOUND);
    let es: Vec<Vec<Permutation>> = DEGREES
        .iter()
        .map(|&u| double_transposition(u))
        .collect::<sublab::Result<_>>()?;
    rec.param("degrees", DEGREES.to_vec());
    rec.param(
        "subgroups",
        es.iter().map(|e| e[0].to_string()).collect::<Vec<_>>(),
    );
    rec.param("index_bound", bound);

    let ex = neumann_truncation(&DEGREES, &es, b)?;
    let g = &ex.group;
    let w1 = solvability_law(1)?;
    let subs = g.subgroups_of_index_at_most(bound, b)?;
    let report = envelope_law_check_among(g, &ex.urs, &w1, &subs, b)?;
    let degree = ex.action.first().map_or(1, |p| p.degree());

    rec.check(
        "members-abelian",
        ex.members_abelian && report.member_satisfies,
        json!({"member_order": report.member_order}),
    );
    rec.check(
        "envelope-is-whole-group",
        ex.envelope_is_whole(),
        json!({"envelope_order": ex.envelope.order(), "group_order": g.order()}),
    );
    rec.check(
        "envelope-not-abelian",
        !report.envelope_satisfies,
        json!({"law": w1.name()}),
    );
    rec.check(
        "factor-closures-full",
        ex.factor_closures_full.iter().all(|&f| f),
        json!({"factors": ex.factor_closures_full}),
    );
    // The transfer theorem needs hereditary minimality, which fails here.
    rec.check(
        "not-hereditarily-minimal",
        !report.hereditarily_minimal,
        json!({
            "subgroups_checked": subs.len(),
            "witness_order": report.minimality_witness.as_ref().map(|w| w.order()),
            "witness_index": report.minimality_witness.as_ref().map(|w| g.order() / w.order()),
        }),
    );
    rec.check(
        "consistent-with-transfer",
        !report.counterexample(),
        json!({}),
    );

    let mut table = Table::new(&[
        "group_order",
        "action_degree",
        "class_size",
        "member_order",
        "envelope_order",
    ]);
    table.push(vec![
        g.order().to_string(),
        degree.to_string(),
        ex.urs.len().to_string(),
        report.member_order.to_string(),
        ex.envelope.order().to_string(),
    ]);
    rec.table(table);
    Ok(())
}
