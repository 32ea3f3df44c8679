//! `w_ℓ` holds in a finite group exactly when its derived length is at
//! most `ℓ`.

use serde_json::json;
use sublab::laws::{satisfies_law, solvability_law, Law, Method};

use super::{Context, Recorder};
use crate::report::Table;

pub const MAX_LENGTH: u32 = 4;

fn method_name(m: &Method) -> &'static str {
    match m {
        Method::BruteForce { .. } => "brute-force",
        Method::ValueSets { .. } => "value-sets",
        Method::DerivedSeries => "derived-series",
    }
}

pub fn run(ctx: &Context, rec: &mut Recorder) -> sublab::Result<()> {
    let b = &ctx.budgets;
    let laws: Vec<Law> = match &ctx.laws {
        Some(l) => l.clone(),
        None => (1..=MAX_LENGTH)
            .map(solvability_law)
            .collect::<sublab::Result<_>>()?,
    };
    rec.param(
        "laws",
        laws.iter()
            .map(|l| l.name().to_string())
            .collect::<Vec<_>>(),
    );
    rec.param(
        "groups",
        ctx.groups
            .iter()
            .map(|(n, _)| n.clone())
            .collect::<Vec<_>>(),
    );
    rec.param("tuple_budget", b.tuples);

    let mut table = Table::new(&[
        "group",
        "order",
        "derived_length",
        "law",
        "holds",
        "oracle",
        "method",
    ]);
    let (mut compared, mut brute, mut skipped) = (0usize, 0usize, Vec::new());
    let mut mismatches = Vec::new();
    for (name, pg) in &ctx.groups {
        let g = pg.enumerate(b)?;
        let whole = g.whole();
        let dl = g.derived_series(&whole).derived_length();
        for law in &laws {
            let verdict = satisfies_law(&g, &whole, law, b)?;
            let oracle = law
                .solvability_length()
                .map(|l| dl.is_some_and(|d| d <= l as usize));
            match oracle {
                Some(o) => {
                    compared += 1;
                    if o != verdict.holds {
                        mismatches.push(json!({"group": name, "law": law.name()}));
                    }
                }
                None => skipped.push(format!("{name}/{}", law.name())),
            }
            brute += matches!(verdict.method, Method::BruteForce { .. }) as usize;
            table.push(vec![
                name.clone(),
                g.order().to_string(),
                dl.map_or("insoluble".into(), |d| d.to_string()),
                law.name().to_string(),
                verdict.holds.to_string(),
                oracle.map_or(String::new(), |o| o.to_string()),
                method_name(&verdict.method).to_string(),
            ]);
        }
    }
    rec.check(
        "law-iff-derived-length",
        mismatches.is_empty() && compared > 0,
        json!({
            "compared": compared,
            "brute_force": brute,
            "mismatches": mismatches,
            "not_solvability_laws": skipped,
        }),
    );
    rec.table(table);
    Ok(())
}
