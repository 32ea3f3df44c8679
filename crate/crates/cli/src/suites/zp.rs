//! `Z[1/2]` with `H_n = 2^n Z`: the closure map is not upper
//! semi-continuous.

use serde_json::json;
use sublab::towers::{
    closure_ball, truncate, usc_scan, Element, Source, SubgroupSpec, Tower, ZpElement,
};

use super::{Context, Recorder};
use crate::report::Table;

pub const P: u64 = 2;
pub const MAX_N: u32 = 8;
pub const DEFAULT_RADIUS: usize = 6;

/// Odd moduli `3, 5, …, 31`.
pub fn moduli() -> Vec<u64> {
    (3..=31).step_by(2).collect()
}

pub fn tower() -> Tower {
    Tower::moduli(P, &moduli()).expect("odd moduli are coprime to 2")
}

/// `(label, H, tower)` pairs for the closure suite.
pub fn pairs() -> Vec<(String, SubgroupSpec, Tower)> {
    let mut out: Vec<(String, SubgroupSpec, Tower)> = (1..=MAX_N)
        .map(|n| (format!("2^{n}Z"), SubgroupSpec::PAdicPower(n), tower()))
        .collect();
    out.push(("{0}".into(), SubgroupSpec::PAdicZero, tower()));
    out
}

pub fn run(ctx: &Context, rec: &mut Recorder) -> sublab::Result<()> {
    let radius = ctx.radius(DEFAULT_RADIUS);
    let b = &ctx.budgets;
    let t = tower();
    rec.param("p", P);
    rec.param("moduli", moduli());
    rec.param("radius", radius);
    rec.param("height_bound", 1u64 << radius);
    let source = Source::PAdic { p: P };
    let ball = source.ball(radius, b)?;

    let mut table = Table::new(&[
        "n",
        "truncation_size",
        "closure_size",
        "ball_size",
        "agreement_with_zero",
    ]);
    let zero_trunc = truncate(&SubgroupSpec::PAdicZero, &source, radius, b)?;
    let mut trivial_from = None;
    let mut nontrivial_for_n_ge_3 = Vec::new();
    let mut dense = true;
    for n in 1..=MAX_N {
        let h = SubgroupSpec::PAdicPower(n);
        let trunc = truncate(&h, &source, radius, b)?;
        let closure = closure_ball(&h, &t, radius, b)?;
        let agreement = sublab::towers::chabauty_agreement(&trunc, &zero_trunc)?;
        if trunc.is_trivial() {
            trivial_from.get_or_insert(n);
        } else {
            trivial_from = None;
            if n >= 3 {
                nontrivial_for_n_ge_3.push(n);
            }
        }
        dense &= closure.len() == ball.len();
        table.push(vec![
            n.to_string(),
            trunc.len().to_string(),
            closure.len().to_string(),
            ball.len().to_string(),
            agreement.to_string(),
        ]);
    }
    rec.check(
        "truncation-trivial-for-n-ge-3",
        nontrivial_for_n_ge_3.is_empty(),
        json!({
            "nontrivial_n": nontrivial_for_n_ge_3,
            "trivial_from_n": trivial_from,
            "note": "2^n lies in the ball while 2^n <= 2^radius",
        }),
    );
    rec.check(
        "truncation-eventually-trivial",
        trivial_from.is_some(),
        json!({"trivial_from_n": trivial_from}),
    );
    rec.check(
        "closure-is-full-ball",
        dense,
        json!({"ball_size": ball.len()}),
    );

    let zero_closure = closure_ball(&SubgroupSpec::PAdicZero, &t, radius, b)?;
    rec.check(
        "closure-of-zero-is-zero",
        zero_closure.is_trivial(),
        json!({"closure_size": zero_closure.len()}),
    );

    let seq: Vec<SubgroupSpec> = (1..=MAX_N).map(SubgroupSpec::PAdicPower).collect();
    let report = usc_scan(&seq, &SubgroupSpec::PAdicZero, &t, radius, b)?;
    let one = Element::PAdic(ZpElement::integer(P, 1));
    rec.check(
        "usc-violation-witness-is-1",
        report.violation() && report.witness.as_ref() == Some(&one),
        json!({
            "violation": report.violation(),
            "witness": report.witness.as_ref().map(|w| w.to_string()),
            "tail_n": report.tail.iter().map(|&i| i + 1).collect::<Vec<_>>(),
        }),
    );
    rec.table(table);
    Ok(())
}
