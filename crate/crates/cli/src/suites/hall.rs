//! Finitely generated subgroups of `F_2` are closed in the profinite
//! topology: every element outside `H` is separated by a finite cover.

use rand::Rng;
use rayon::prelude::*;
use serde_json::json;
use sublab::stallings::StallingsGraph;
use sublab::towers::{closure_ball, truncate, Element, QuotientMap, Source, SubgroupSpec, Tower};
use sublab::words::{free_ball, Letter, Word};

use super::{rng, Context, Recorder};
use crate::report::Table;

pub const RANK: usize = 2;
pub const MAX_VERTICES: usize = 12;
pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_RADIUS: usize = 8;

fn random_word(r: &mut impl Rng, max_len: usize) -> Word {
    let len = r.gen_range(1..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(r.gen_range(0..RANK as u32), r.gen_bool(0.5));
        if letters.last().is_some_and(|p| *p == l.inv()) {
            continue;
        }
        letters.push(l);
    }
    Word::from_letters(letters)
}

/// Subgroup `i` of the seeded sample: one to three random words of length
/// at most five, resampled until the graph has at most 12 vertices.
pub fn random_subgroup(seed: u64, i: usize) -> sublab::Result<(Vec<Word>, StallingsGraph)> {
    let mut r = rng(seed, i as u64);
    loop {
        let k = r.gen_range(1..=3);
        let gens: Vec<Word> = (0..k).map(|_| random_word(&mut r, 5)).collect();
        let g = StallingsGraph::from_generators(RANK, &gens)?;
        if g.vertex_count() <= MAX_VERTICES {
            return Ok((gens, g));
        }
    }
}

pub struct Separation {
    pub outside: usize,
    pub separated: usize,
    /// First element whose cover failed to separate it.
    pub failure: Option<Word>,
    pub tower: Tower,
}

/// Builds one separating cover per element of `B_r` outside `H` and checks
/// that each separates its element.
pub fn separate_ball(graph: &StallingsGraph, radius: usize) -> sublab::Result<Separation> {
    let spec = SubgroupSpec::Stallings(graph.clone());
    let outside: Vec<Word> = free_ball(RANK, radius)
        .into_iter()
        .filter(|w| !graph.member(w))
        .collect();
    let maps: Vec<(Word, QuotientMap, bool)> = outside
        .par_iter()
        .map(|w| {
            let map = QuotientMap::free(RANK, graph.separate(w)?)?;
            let img = map.image(&Element::Word(w.clone()))?;
            let ok = !map.image_subgroup(&spec)?.contains(&img);
            Ok((w.clone(), map, ok))
        })
        .collect::<sublab::Result<_>>()?;
    let mut tower = Tower::empty(Source::Free { rank: RANK });
    let mut separated = 0;
    let mut failure = None;
    for (w, map, ok) in maps {
        if ok {
            separated += 1;
        } else if failure.is_none() {
            failure = Some(w);
        }
        tower.push(map)?;
    }
    Ok(Separation {
        outside: outside.len(),
        separated,
        failure,
        tower,
    })
}

/// `(label, H, tower)` pairs with separating towers at a small radius.
pub fn pairs(
    seed: u64,
    count: usize,
    radius: usize,
) -> sublab::Result<Vec<(String, SubgroupSpec, Tower)>> {
    (0..count)
        .map(|i| {
            let (_, g) = random_subgroup(seed, i)?;
            let sep = separate_ball(&g, radius)?;
            Ok((format!("hall-{i}"), SubgroupSpec::Stallings(g), sep.tower))
        })
        .collect()
}

pub fn run(ctx: &Context, rec: &mut Recorder) -> sublab::Result<()> {
    let radius = ctx.radius(DEFAULT_RADIUS);
    let samples = ctx.samples(DEFAULT_SAMPLES);
    rec.param("rank", RANK);
    rec.param("radius", radius);
    rec.param("samples", samples);
    rec.param("max_vertices", MAX_VERTICES);
    let b = &ctx.budgets;
    let source = Source::Free { rank: RANK };
    let alpha = sublab::words::Alphabet::letters(RANK);

    let mut table = Table::new(&[
        "sample",
        "generators",
        "vertices",
        "rank",
        "outside",
        "separated",
        "tower_maps",
        "closure_size",
        "truncation_size",
        "closed",
    ]);
    let (mut pairs_total, mut pairs_separated, mut closed_count) = (0usize, 0usize, 0usize);
    let mut first_failure = None;
    for i in 0..samples {
        let (gens, g) = random_subgroup(ctx.seed(), i)?;
        let sep = separate_ball(&g, radius)?;
        let spec = SubgroupSpec::Stallings(g.clone());
        let closure = closure_ball(&spec, &sep.tower, radius, b)?;
        let trunc = truncate(&spec, &source, radius, b)?;
        let closed = closure == trunc;
        pairs_total += sep.outside;
        pairs_separated += sep.separated;
        closed_count += closed as usize;
        if first_failure.is_none() && (!closed || sep.failure.is_some()) {
            first_failure = Some(json!({
                "sample": i,
                "unseparated": sep.failure.as_ref().map(|w| w.display(&alpha).to_string()),
                "closure_size": closure.len(),
                "truncation_size": trunc.len(),
            }));
        }
        let shown: Vec<String> = gens.iter().map(|w| w.display(&alpha).to_string()).collect();
        table.push(vec![
            i.to_string(),
            shown.join("; "),
            g.vertex_count().to_string(),
            g.subgroup_rank().to_string(),
            sep.outside.to_string(),
            sep.separated.to_string(),
            sep.tower.len().to_string(),
            closure.len().to_string(),
            trunc.len().to_string(),
            closed.to_string(),
        ]);
    }
    rec.check(
        "every-outside-element-separated",
        pairs_separated == pairs_total,
        json!({"pairs": pairs_total, "separated": pairs_separated, "first_failure": first_failure}),
    );
    rec.check(
        "closure-equals-truncation",
        closed_count == samples,
        json!({"closed": closed_count, "samples": samples}),
    );
    rec.table(table);
    Ok(())
}
