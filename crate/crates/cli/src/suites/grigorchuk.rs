//! Level quotients `G/St(n)` of the Grigorchuk group.

use serde_json::json;
use sublab::treelab::VertexPath;
use sublab::Permutation;

use super::{Context, Recorder};
use crate::report::Table;

pub const DEFAULT_DEPTH: usize = 5;

/// `|G/St(n)|` for `n = 1..=6`: `2^(5·2^(n-3)+2)` from level 3 on.
pub const KNOWN_ORDERS: [u128; 6] = [2, 8, 1 << 7, 1 << 12, 1 << 22, 1 << 42];

fn orbit_size(images: &[Permutation], start: usize) -> usize {
    let n = images.first().map_or(1, |p| p.degree());
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for p in images {
            let u = p.apply(v);
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count
}

/// Whether the level-`n` action covers the level-`n-1` action under
/// truncation of vertices.
fn compatible(upper: &[Permutation], lower: &[Permutation], n: usize, d: usize) -> bool {
    upper.iter().zip(lower).all(|(p, q)| {
        (0..p.degree()).all(|v| {
            let parent = VertexPath::from_index(v, n, d).prefix(n - 1).index(d);
            let image = VertexPath::from_index(p.apply(v), n, d)
                .prefix(n - 1)
                .index(d);
            q.apply(parent) == image
        })
    })
}

pub fn run(ctx: &Context, rec: &mut Recorder) -> sublab::Result<()> {
    let depth = ctx.probe_depth(DEFAULT_DEPTH);
    let g = &ctx.automaton;
    let b = &ctx.budgets;
    let d = g.alphabet();
    rec.param("automaton", g.name());
    rec.param("depth", depth);

    let mut table = Table::new(&[
        "depth",
        "degree",
        "order",
        "log2_order",
        "orbit_size",
        "compatible",
    ]);
    let (mut orders, mut all_2groups, mut all_transitive, mut all_compatible) =
        (Vec::new(), true, true, true);
    let mut lower: Vec<Permutation> = vec![Permutation::identity(1); g.rank()];
    let mut lower_order = 1u128;
    for n in 1..=depth {
        let images = g.level_images(n, b)?;
        let group = g.level_group(n, b)?;
        let order = group
            .order()
            .ok_or_else(|| sublab::Error::invalid("level group too large"))?;
        let degree = d.pow(n as u32);
        let orbit = orbit_size(&images, 0);
        let two = order.is_power_of_two();
        let comp = compatible(&images, &lower, n, d) && order % lower_order == 0;
        all_2groups &= two;
        all_transitive &= orbit == degree;
        all_compatible &= comp;
        orders.push(order.to_string());
        table.push(vec![
            n.to_string(),
            degree.to_string(),
            order.to_string(),
            if two {
                order.trailing_zeros().to_string()
            } else {
                String::new()
            },
            orbit.to_string(),
            comp.to_string(),
        ]);
        lower = images;
        lower_order = order;
    }
    let binary = d == 2;
    rec.check(
        "orders-are-powers-of-two",
        !binary || all_2groups,
        json!({"orders": orders, "applies": binary}),
    );
    rec.check("levels-transitive", all_transitive, json!({"depth": depth}));
    rec.check("levels-compatible", all_compatible, json!({"depth": depth}));
    if g.name() == "grigorchuk" {
        let expect: Vec<String> = KNOWN_ORDERS
            .iter()
            .take(depth)
            .map(|o| o.to_string())
            .collect();
        let n = expect.len();
        rec.check(
            "orders-match-known-values",
            orders[..n] == expect[..],
            json!({"expected": expect, "computed": orders}),
        );
        rec.check(
            "level-one-order-is-2",
            orders.first().is_some_and(|o| o == "2"),
            json!({}),
        );
    }
    rec.table(table);
    Ok(())
}
