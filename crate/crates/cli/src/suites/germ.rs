//! Grigorchuk: the stabilizer of a boundary point lies in the closure of
//! its germ stabilizer, checked on balls against the level-quotient tower.
//!
//! The germ stabilizer is approximated from below at the probe depth: an
//! element counts when it acts trivially below some prefix of the path of
//! length at most the probe depth.

use std::sync::Arc;

use rand::Rng;
use serde_json::json;
use sublab::towers::{closure_ball, Source, SubgroupSpec, Tower};
use sublab::treelab::{AutomatonGroup, VertexPath};

use super::{rng, Context, Recorder};
use crate::report::Table;

pub const DEFAULT_SAMPLES: usize = 20;
pub const DEFAULT_RADIUS: usize = 6;
pub const DEFAULT_PROBE_DEPTH: usize = 6;
pub const MAX_SAMPLED_DEPTH: usize = 4;

/// Level quotients `1..=depth` as a tower.
pub fn level_tower(
    g: &Arc<AutomatonGroup>,
    depth: usize,
    b: &sublab::Budgets,
) -> sublab::Result<Tower> {
    let maps = (1..=depth)
        .map(|n| g.level_quotient(n, b))
        .collect::<sublab::Result<_>>()?;
    Tower::new(Source::Automaton(g.clone()), maps)
}

/// Sampled path `i` (depth at most 4) and its seeded extension to `depth`.
pub fn sample_path(seed: u64, i: usize, alphabet: usize, depth: usize) -> (VertexPath, VertexPath) {
    let mut r = rng(seed, 1000 + i as u64);
    let k = r.gen_range(0..=MAX_SAMPLED_DEPTH.min(depth));
    let mut v = VertexPath::root();
    for _ in 0..k {
        v = v.child(r.gen_range(0..alphabet as u32));
    }
    let mut x = v.clone();
    while x.depth() < depth {
        x = x.child(r.gen_range(0..alphabet as u32));
    }
    (v, x)
}

/// Germ subgroups for a few sampled paths, for the closure suite.
pub fn pairs(
    ctx: &Context,
    count: usize,
    radius: usize,
    depth: usize,
) -> sublab::Result<Vec<(String, SubgroupSpec, Tower)>> {
    let g = &ctx.automaton;
    let tower = level_tower(g, depth, &ctx.budgets)?;
    (0..count)
        .map(|i| {
            let (_, x) = sample_path(ctx.seed(), i, g.alphabet(), depth);
            let germ = g.germ_stabilizer_ball(&x, radius, depth, &ctx.budgets)?;
            Ok((
                format!("germ-{i}-{x}"),
                SubgroupSpec::Words(germ.words().cloned().collect()),
                tower.clone(),
            ))
        })
        .collect()
}

pub fn run(ctx: &Context, rec: &mut Recorder) -> sublab::Result<()> {
    let samples = ctx.samples(DEFAULT_SAMPLES);
    let radius = ctx.radius(DEFAULT_RADIUS);
    let depth = ctx.probe_depth(DEFAULT_PROBE_DEPTH);
    let g = &ctx.automaton;
    let b = &ctx.budgets;
    rec.param("automaton", g.name());
    rec.param("samples", samples);
    rec.param("radius", radius);
    rec.param("probe_depth", depth);
    rec.param("tower_levels", depth);
    let tower = level_tower(g, depth, b)?;

    let mut table = Table::new(&[
        "sample",
        "path",
        "extended_path",
        "prefix_stabilizer_size",
        "fixing_a_ray",
        "germ_size",
        "closure_size",
        "contained",
        "fixing_a_ray_contained",
    ]);
    let mut germ_inside = true;
    let (mut tested, mut contained, mut ray_tested, mut ray_contained) =
        (0usize, 0usize, 0usize, 0usize);
    // The stabilizer of the sampled vertex itself, before extension.
    let (mut short_tested, mut short_contained) = (0usize, 0usize);
    let mut failures = Vec::new();
    for i in 0..samples {
        let (v, x) = sample_path(ctx.seed(), i, g.alphabet(), depth);
        let stab = g.prefix_stabilizer_ball(&x, radius, b)?;
        let germ = g.germ_stabilizer_ball(&x, radius, depth, b)?;
        germ_inside &= germ.is_subset_of(&stab);
        let spec = SubgroupSpec::Words(germ.words().cloned().collect());
        let closure = closure_ball(&spec, &tower, radius, b)?;
        let (mut inside, mut ray, mut ray_inside) = (0usize, 0usize, 0usize);
        for e in stab.members() {
            let w = e.as_word().expect("automaton balls hold words");
            let fixes_ray = g.fixes_ray_below(w, &x)?;
            let hit = closure.contains(e);
            inside += hit as usize;
            ray += fixes_ray as usize;
            ray_inside += (hit && fixes_ray) as usize;
            if !hit && failures.len() < 10 {
                failures.push(json!({
                    "sample": i,
                    "path": x.to_string(),
                    "element": e.to_string(),
                    "fixes_a_ray": fixes_ray,
                }));
            }
        }
        let short = g.prefix_stabilizer_ball(&v, radius, b)?;
        short_tested += short.len();
        short_contained += short
            .members()
            .iter()
            .filter(|e| closure.contains(e))
            .count();
        tested += stab.len();
        contained += inside;
        ray_tested += ray;
        ray_contained += ray_inside;
        table.push(vec![
            i.to_string(),
            v.to_string(),
            x.to_string(),
            stab.len().to_string(),
            ray.to_string(),
            germ.len().to_string(),
            closure.len().to_string(),
            inside.to_string(),
            ray_inside.to_string(),
        ]);
    }
    let rate = |a: usize, t: usize| if t == 0 { 1.0 } else { a as f64 / t as f64 };
    rec.check("germ-inside-prefix-stabilizer", germ_inside, json!({}));
    rec.check(
        "prefix-stabilizer-in-germ-closure",
        contained == tested,
        json!({
            "tested": tested,
            "contained": contained,
            "pass_rate": rate(contained, tested),
            "failures": failures,
            "unextended_vertex": {
                "tested": short_tested,
                "contained": short_contained,
                "pass_rate": rate(short_contained, short_tested),
            },
        }),
    );
    // The stabilizer of a vertex also holds elements fixing no boundary
    // point below it; only those fixing one lie in some G_x.
    rec.check(
        "point-stabilizer-in-germ-closure",
        ray_contained == ray_tested,
        json!({
            "tested": ray_tested,
            "contained": ray_contained,
            "pass_rate": rate(ray_contained, ray_tested),
        }),
    );
    rec.table(table);
    Ok(())
}
