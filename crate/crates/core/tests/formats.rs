use proptest::prelude::*;
use sublab::formats::{parse_graph, parse_group, parse_laws, print_graph, print_group, print_laws};
use sublab::laws::Law;
use sublab::stallings::StallingsGraph;
use sublab::{Letter, PermGroup, Permutation, Word};

fn word(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 1..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i))))
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graphs_round_trip(gens in prop::collection::vec(word(3, 6), 1..4)) {
        let g = StallingsGraph::from_generators(3, &gens).unwrap();
        let back = parse_graph(&print_graph(&g)).unwrap();
        prop_assert_eq!(&back, &g);
        for w in &gens {
            prop_assert!(back.member(w));
        }
    }

    #[test]
    fn groups_round_trip((n, gens) in (2usize..9).prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..4)))) {
        let g = PermGroup::new(n, gens).unwrap();
        let file = parse_group(&print_group(Some("G"), &g)).unwrap();
        prop_assert_eq!(file.name.as_deref(), Some("G"));
        prop_assert_eq!(file.group.order(), g.order());
        prop_assert!(g.generators().iter().all(|p| file.group.contains(p)));
    }

    #[test]
    fn laws_round_trip(terms in prop::collection::vec(word(4, 8), 1..4)) {
        let laws: Vec<Law> = terms
            .into_iter()
            .filter(|t| !t.is_identity())
            .enumerate()
            .map(|(i, t)| Law::new(format!("l{i}"), 4, t).unwrap())
            .collect();
        // A file with no laws is rejected, so skip all-trivial draws.
        prop_assume!(!laws.is_empty());
        prop_assert_eq!(parse_laws(&print_laws(&laws)).unwrap(), laws);
    }
}
