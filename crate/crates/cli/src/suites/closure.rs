//! Closures are idempotent, contain their subgroup and shrink as maps are
//! added to the tower.

use serde_json::json;
use sublab::towers::{closure_ball, idempotence_check, truncate, Source, SubgroupSpec, Tower};
use sublab::words::Alphabet;

use super::{germ, hall, zp, Context, Recorder};
use crate::report::Table;

/// The first 20 subgroups of the hall sample, with their radius-8 towers;
/// prefix scans over all 200 would dominate the run.
const HALL_PAIRS: usize = 20;
const HALL_RADIUS: usize = 8;
const DEFAULT_FILE_RADIUS: usize = 4;

/// Prefix lengths at which the closure is compared: every length for short
/// towers, powers of two and the full length otherwise.
fn cut_points(len: usize) -> Vec<usize> {
    if len <= 16 {
        return (0..=len).collect();
    }
    let mut cuts: Vec<usize> = std::iter::once(0)
        .chain((0..).map(|k| 1usize << k).take_while(|&c| c < len))
        .collect();
    cuts.push(len);
    cuts
}

fn file_pair(ctx: &Context) -> sublab::Result<Option<(String, SubgroupSpec, Tower)>> {
    let Some(tower) = &ctx.tower else {
        return Ok(None);
    };
    let gens = ctx.config.params.subgroup.clone().unwrap_or_default();
    let spec = match tower.source() {
        Source::PAdic { .. } => {
            let n = gens
                .first()
                .map(|s| s.trim().parse::<u32>())
                .transpose()
                .map_err(|_| {
                    sublab::Error::invalid(
                        "the subgroup of Z[1/p] is given as an exponent n for p^n Z",
                    )
                })?;
            n.map_or(SubgroupSpec::PAdicZero, SubgroupSpec::PAdicPower)
        }
        Source::Free { rank } => {
            let a = Alphabet::letters(*rank);
            SubgroupSpec::Words(
                gens.iter()
                    .map(|s| a.parse(s))
                    .collect::<sublab::Result<_>>()?,
            )
        }
        Source::Automaton(g) => {
            let a = Alphabet::new(g.generator_names())?;
            SubgroupSpec::Words(
                gens.iter()
                    .map(|s| a.parse(s))
                    .collect::<sublab::Result<_>>()?,
            )
        }
    };
    Ok(Some(("file".into(), spec, tower.clone())))
}

pub fn run(ctx: &Context, rec: &mut Recorder) -> sublab::Result<()> {
    let b = &ctx.budgets;
    let over = ctx.config.params.radius;
    let with = |r: usize, v: Vec<(String, SubgroupSpec, Tower)>| {
        v.into_iter()
            .map(move |(l, h, t)| (l, h, t, over.unwrap_or(r)))
    };
    let hall_radius = over.unwrap_or(HALL_RADIUS);
    let germ_depth = ctx.probe_depth(germ::DEFAULT_PROBE_DEPTH);
    let germ_radius = over.unwrap_or(germ::DEFAULT_RADIUS);
    let mut pairs: Vec<(String, SubgroupSpec, Tower, usize)> =
        with(zp::DEFAULT_RADIUS, zp::pairs()).collect();
    pairs.extend(with(
        hall_radius,
        hall::pairs(ctx.seed(), HALL_PAIRS, hall_radius)?,
    ));
    pairs.extend(with(
        germ_radius,
        germ::pairs(ctx, germ::DEFAULT_SAMPLES, germ_radius, germ_depth)?,
    ));
    pairs.extend(with(
        DEFAULT_FILE_RADIUS,
        file_pair(ctx)?.into_iter().collect(),
    ));
    rec.param(
        "pairs",
        pairs
            .iter()
            .map(|p| format!("{} (r={})", p.0, p.3))
            .collect::<Vec<_>>(),
    );

    let mut table = Table::new(&[
        "pair",
        "radius",
        "subgroup",
        "tower_maps",
        "closure_size",
        "idempotent",
        "contains_h",
        "monotone",
    ]);
    let (mut idem_fail, mut contain_fail, mut mono_fail) = (Vec::new(), Vec::new(), Vec::new());
    for (label, h, tower, radius) in &pairs {
        let radius = *radius;
        let closure = closure_ball(h, tower, radius, b)?;
        let idem = idempotence_check(h, tower, radius, b)?;
        let contains = match truncate(h, tower.source(), radius, b) {
            Ok(t) => Some(t.is_subset_of(&closure)),
            Err(sublab::Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        };
        let mut previous = None;
        let mut mono = true;
        for k in cut_points(tower.len()) {
            let c = closure_ball(h, &tower.prefix(k), radius, b)?;
            if let Some(p) = &previous {
                mono &= c.is_subset_of(p);
            }
            previous = Some(c);
        }
        if !idem {
            idem_fail.push(label.clone());
        }
        if contains == Some(false) {
            contain_fail.push(label.clone());
        }
        if !mono {
            mono_fail.push(label.clone());
        }
        table.push(vec![
            label.clone(),
            radius.to_string(),
            h.describe(),
            tower.len().to_string(),
            closure.len().to_string(),
            idem.to_string(),
            contains.map_or("undecidable".into(), |c| c.to_string()),
            mono.to_string(),
        ]);
    }
    rec.check(
        "closure-idempotent",
        idem_fail.is_empty(),
        json!({"pairs": pairs.len(), "failures": idem_fail}),
    );
    rec.check(
        "closure-contains-subgroup",
        contain_fail.is_empty(),
        json!({"failures": contain_fail}),
    );
    rec.check(
        "closure-shrinks-with-tower",
        mono_fail.is_empty(),
        json!({"failures": mono_fail}),
    );
    rec.table(table);
    Ok(())
}
