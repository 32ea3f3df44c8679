use std::collections::BTreeSet;

use proptest::prelude::*;

use super::library::*;
use super::*;

fn enumerate(g: PermGroup) -> FiniteGroup {
    g.enumerate(&Budgets::default()).unwrap()
}

/// Brute force: all subsets containing the identity and closed under
/// multiplication.
fn subsets_oracle(g: &FiniteGroup) -> BTreeSet<Vec<u32>> {
    let n = g.order();
    assert!(n <= 16);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let set: Vec<u32> = std::iter::once(0)
            .chain((1..n as u32).filter(|&i| mask & (1 << (i - 1)) != 0))
            .collect();
        let closed = set
            .iter()
            .all(|&a| set.iter().all(|&b| set.binary_search(&g.mul(a, b)).is_ok()));
        if closed {
            out.insert(set);
        }
    }
    out
}

/// Conjugacy classes of the oracle subgroups, by conjugating with every element.
fn oracle_class_count(g: &FiniteGroup, subs: &BTreeSet<Vec<u32>>) -> usize {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut classes = 0;
    for s in subs {
        if seen.contains(s) {
            continue;
        }
        classes += 1;
        for x in 0..g.order() as u32 {
            let mut c: Vec<u32> = s.iter().map(|&a| g.conj(a, x)).collect();
            c.sort_unstable();
            seen.insert(c);
        }
    }
    classes
}

fn small_groups() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("S3", symmetric(3)),
        ("Z4", cyclic(4)),
        ("Q8", quaternion()),
        ("D4", dihedral(4).unwrap()),
        ("A4", alternating(4)),
        ("Z6", cyclic(6)),
    ]
}

#[test]
fn lattice_matches_subset_oracle() {
    for (name, pg) in small_groups() {
        let g = enumerate(pg);
        let oracle = subsets_oracle(&g);
        let classes = g.subgroup_lattice(&Budgets::default()).unwrap();
        let ours: BTreeSet<Vec<u32>> = classes
            .iter()
            .flat_map(|c| c.members.iter().map(|h| h.elements().to_vec()))
            .collect();
        assert_eq!(ours, oracle, "{name}");
        assert_eq!(classes.len(), oracle_class_count(&g, &oracle), "{name}");
    }
}

#[test]
fn lattice_sizes_of_larger_groups() {
    // Subgroup and class counts of S4, A5 and S5.
    for (pg, subs, classes) in [
        (symmetric(4), 30, 11),
        (alternating(5), 59, 9),
        (symmetric(5), 156, 19),
    ] {
        let g = enumerate(pg);
        let lat = g.subgroup_lattice(&Budgets::default()).unwrap();
        assert_eq!(lat.len(), classes);
        assert_eq!(lat.iter().map(|c| c.len()).sum::<usize>(), subs);
    }
}

#[test]
fn identity_is_index_zero_and_orders_match_chain() {
    for (_, pg) in small_groups() {
        let chain_order = pg.order().unwrap();
        let g = enumerate(pg);
        assert!(g.element(0).is_identity());
        assert_eq!(g.order() as u128, chain_order);
    }
    assert_eq!(quaternion().order(), Some(8));
    assert_eq!(
        direct_product(&alternating(5), &alternating(7)).order(),
        Some(151_200)
    );
}

#[test]
fn derived_lengths() {
    let cases: [(PermGroup, Option<usize>); 6] = [
        (cyclic(4), Some(1)),
        (symmetric(3), Some(2)),
        (quaternion(), Some(2)),
        (alternating(4), Some(2)),
        (symmetric(4), Some(3)),
        (alternating(5), None),
    ];
    for (pg, expected) in cases {
        let g = enumerate(pg);
        assert_eq!(g.derived_series(&g.whole()).derived_length(), expected);
    }
    let t = enumerate(cyclic(1));
    assert_eq!(t.derived_series(&t.whole()).derived_length(), Some(0));
}

#[test]
fn derived_subgroup_matches_commutator_oracle() {
    // [G, G] is generated by all commutators.
    for pg in [
        symmetric(4),
        dihedral(5).unwrap(),
        quaternion(),
        alternating(5),
    ] {
        let g = enumerate(pg);
        let n = g.order() as u32;
        let comms: Vec<u32> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| g.commutator(a, b))
            .collect();
        assert_eq!(g.derived_subgroup(&g.whole()), g.closure(&comms));
    }
}

#[test]
fn normal_closure_and_normalizer() {
    let g = enumerate(symmetric(4));
    let t = g
        .index_of(&Permutation::parse_cycles("(1 2)", 4).unwrap())
        .unwrap();
    let h = g.closure(&[t]);
    assert_eq!(g.normal_closure(&h).order(), 24);
    assert_eq!(g.normalizer(&h).order(), 4);
    let v = g
        .index_of(&Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap())
        .unwrap();
    assert_eq!(g.normal_closure(&g.closure(&[v])).order(), 4);
    assert!(g.is_normal(&g.normal_closure(&g.closure(&[v]))));
    assert_eq!(g.conjugacy_class(&h).len(), 6);
}

#[test]
fn coset_action_is_transitive_homomorphism() {
    let g = enumerate(alternating(5));
    let a4 = g
        .subgroup_generated(&[
            Permutation::parse_cycles("(1 2 3)", 5).unwrap(),
            Permutation::parse_cycles("(1 2 4)", 5).unwrap(),
        ])
        .unwrap();
    let act = g.coset_action(&a4).unwrap();
    assert_eq!(act.degree(), 5);
    let pos = g.orbit_map(&act.images, 0).unwrap();
    let stab: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| pos[x as usize] == 0)
        .collect();
    assert_eq!(stab, a4.elements());
    assert_eq!(act.image_group().order(), Some(60));
}

#[test]
fn low_index_agrees_with_lattice() {
    for pg in [
        symmetric(4),
        alternating(5),
        dihedral(6).unwrap(),
        quaternion(),
        symmetric(5),
    ] {
        let g = enumerate(pg);
        for m in [1, 2, 3, 4, 5, 6, 8, 10] {
            let mut expect: Vec<Subgroup> = g
                .subgroup_lattice(&Budgets::default())
                .unwrap()
                .into_iter()
                .flat_map(|c| c.members)
                .filter(|h| g.order() / h.order() <= m)
                .collect();
            expect.sort();
            assert_eq!(
                g.low_index_subgroups(m, 5_000_000).unwrap(),
                expect,
                "m={m}"
            );
        }
    }
}

#[test]
fn low_index_in_a5_times_a7() {
    let g = enumerate(direct_product(&alternating(5), &alternating(7)));
    let subs = g
        .subgroups_of_index_at_most(7, &Budgets::default())
        .unwrap();
    // Whole group, five conjugates of A4 x A7, seven of A5 x A6.
    let mut idx: Vec<usize> = subs.iter().map(|h| g.order() / h.order()).collect();
    idx.sort();
    assert_eq!(
        idx,
        vec![1, 5, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6, 7, 7, 7, 7, 7, 7, 7]
    );
}

#[test]
fn subgroup_from_elements_rejects_non_subgroups() {
    let g = enumerate(symmetric(3));
    assert!(g.subgroup_from_elements(&[0, 1]).is_ok() || g.element_order(1) != 2);
    assert!(matches!(
        g.subgroup_from_elements(&[0, 1, 2]),
        Err(Error::NotSubgroup)
    ));
    assert!(g.subgroup_from_elements(&[0, 99]).is_err());
}

#[test]
fn order_budget_enforced() {
    let b = Budgets {
        order: 100,
        ..Budgets::default()
    };
    assert!(matches!(
        symmetric(5).enumerate(&b),
        Err(Error::Budget { .. })
    ));
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_agrees_with_chain(gens in prop::collection::vec(perm_strategy(6), 1..3)) {
        let pg = PermGroup::new(6, gens.clone()).unwrap();
        let g = enumerate(pg.clone());
        prop_assert_eq!(g.order() as u128, pg.order().unwrap());
        let chain = pg.stab_chain();
        for p in g.elements() {
            prop_assert!(chain.contains(p));
        }
    }

    #[test]
    fn table_multiplication_matches_composition(gens in prop::collection::vec(perm_strategy(5), 1..3), a in any::<u32>(), b in any::<u32>()) {
        let g = enumerate(PermGroup::new(5, gens).unwrap());
        let n = g.order() as u32;
        let (a, b) = (a % n, b % n);
        let expect = g.element(a).then(g.element(b));
        prop_assert_eq!(g.element(g.mul(a, b)), &expect);
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
    }

    #[test]
    fn derived_series_is_normal_and_decreasing(gens in prop::collection::vec(perm_strategy(5), 1..3)) {
        let g = enumerate(PermGroup::new(5, gens).unwrap());
        let series = g.derived_series(&g.whole());
        for w in series.terms.windows(2) {
            prop_assert!(w[1].is_subset_of(&w[0]));
            prop_assert!(w[0].generators().iter().all(|&x| g.normalizes(x, &w[1])));
        }
    }
}

#[test]
fn corpus_orders() {
    let orders: Vec<(&str, u128)> = library::corpus()
        .into_iter()
        .map(|(name, g)| (name, g.order().unwrap()))
        .collect();
    let expected = [
        2, 3, 4, 6, 8, 4, 8, 6, 8, 8, 10, 12, 12, 18, 16, 20, 12, 24, 24, 36, 60, 120, 168,
    ];
    assert_eq!(orders.iter().map(|x| x.1).collect::<Vec<_>>(), expected);
    assert!(orders.len() >= 15);
}
