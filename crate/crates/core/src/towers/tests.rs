use super::*;
use crate::words::Letter;
use proptest::prelude::*;

fn budgets() -> Budgets {
    Budgets::default()
}

fn word(letters: &[(u32, bool)]) -> Word {
    Word::from_letters(letters.iter().map(|&(g, i)| Letter::new(g, i)))
}

fn padic(n: i64) -> Element {
    Element::PAdic(ZpElement::integer(2, n))
}

#[test]
fn padic_closure_of_even_integers_is_everything() {
    let tower = Tower::moduli(2, &[3, 5, 7]).unwrap();
    let h = SubgroupSpec::PAdicPower(1);
    assert!(in_closure(&padic(1), &h, &tower).unwrap());
    let prepared = PreparedClosure::new(&h, &tower).unwrap();
    assert!(prepared.contains_by_images(&padic(1)).unwrap());
    let closed = closure_ball(&h, &tower, 2, &budgets()).unwrap();
    assert_eq!(closed.len(), zp::ball(2, 2, 1000).unwrap().len());
}

#[test]
fn padic_closure_of_zero_is_zero_in_ball() {
    let tower = Tower::moduli(2, &[3, 5, 7, 9, 11, 13]).unwrap();
    let closed = closure_ball(&SubgroupSpec::PAdicZero, &tower, 3, &budgets()).unwrap();
    // Heights ≤ 8 and a modulus product of 45045 separate everything.
    assert!(closed.is_trivial());
    let coarse = Tower::moduli(2, &[3]).unwrap();
    assert!(in_closure(&padic(3), &SubgroupSpec::PAdicZero, &coarse).unwrap());
    assert!(!in_closure(&padic(1), &SubgroupSpec::PAdicZero, &coarse).unwrap());
}

#[test]
fn moduli_must_be_coprime() {
    assert!(QuotientMap::modulus(2, 6).is_err());
    assert!(QuotientMap::modulus(3, 6).is_err());
    assert!(QuotientMap::modulus(3, 10).is_ok());
}

#[test]
fn truncation_of_powers() {
    let src = Source::PAdic { p: 2 };
    let t = truncate(&SubgroupSpec::PAdicPower(3), &src, 4, &budgets()).unwrap();
    let ints: Vec<String> = t.members().iter().map(|e| e.to_string()).collect();
    assert_eq!(ints, ["0", "8", "-8", "16", "-16"]);
    // 8 has height 8, so p^3 Z is visible inside B_3 and truncation is not {0}.
    let t3 = truncate(&SubgroupSpec::PAdicPower(3), &src, 3, &budgets()).unwrap();
    assert!(!t3.is_trivial());
    let t6 = truncate(&SubgroupSpec::PAdicPower(7), &src, 6, &budgets()).unwrap();
    assert!(t6.is_trivial());
}

#[test]
fn free_closure_with_separating_tower_is_the_subgroup() {
    // Finitely generated subgroups of free groups are closed: adding a
    // separating cover for every outside element of the ball recovers H.
    let (a, b) = (Word::generator(0), Word::generator(1));
    let h_gens = vec![a.pow(2), b.mul(&a).mul(&b.inverse())];
    let graph = StallingsGraph::from_generators(2, &h_gens).unwrap();
    let radius = 4;
    let mut tower = Tower::empty(Source::Free { rank: 2 });
    for w in free_ball(2, radius) {
        if !graph.member(&w) {
            let images = graph.separate(&w).unwrap();
            tower.push(QuotientMap::free(2, images).unwrap()).unwrap();
        }
    }
    let h = SubgroupSpec::Stallings(graph.clone());
    let closed = closure_ball(&h, &tower, radius, &budgets()).unwrap();
    let trunc = truncate(&h, tower.source(), radius, &budgets()).unwrap();
    assert_eq!(closed, trunc);
    assert_eq!(chabauty_agreement(&closed, &trunc).unwrap(), radius);
    assert!(idempotence_check(&h, &tower, 3, &budgets()).unwrap());
}

#[test]
fn coarse_tower_has_larger_closure() {
    let a = Word::generator(0);
    let b = Word::generator(1);
    let sign = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
    let map = QuotientMap::free(2, vec![sign, Permutation::identity(2)]).unwrap();
    let tower = Tower::new(Source::Free { rank: 2 }, vec![map]).unwrap();
    let h = SubgroupSpec::Words(vec![a.pow(2)]);
    assert!(in_closure(&Element::Word(b.clone()), &h, &tower).unwrap());
    assert!(!in_closure(&Element::Word(a.clone()), &h, &tower).unwrap());
    let prepared = PreparedClosure::new(&h, &tower).unwrap();
    assert_eq!(prepared.separating_map(&Element::Word(a)).unwrap(), Some(0));
}

#[test]
fn maps_are_deduplicated_and_sources_checked() {
    let p = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
    let m = QuotientMap::free(1, vec![p.clone()]).unwrap();
    let mut tower = Tower::empty(Source::Free { rank: 1 });
    assert!(tower.push(m.clone()).unwrap());
    assert!(!tower.push(m).unwrap());
    assert_eq!(tower.len(), 1);
    let other = QuotientMap::free(2, vec![p.clone(), p]).unwrap();
    assert!(matches!(
        tower.push(other),
        Err(Error::BackendMismatch { .. })
    ));
    assert!(matches!(
        in_closure(&padic(1), &SubgroupSpec::Words(vec![]), &tower),
        Err(Error::BackendMismatch { .. })
    ));
    assert!(QuotientMap::free(2, vec![Permutation::identity(2)]).is_err());
}

#[test]
fn agreement_radius() {
    let tag = BackendTag::Free(1);
    let a = Word::generator(0);
    let x = BallView::new(
        tag.clone(),
        3,
        [Element::Word(Word::identity()), Element::Word(a.pow(2))],
    );
    let y = BallView::new(tag.clone(), 3, [Element::Word(Word::identity())]);
    assert_eq!(chabauty_agreement(&x, &y).unwrap(), 1);
    assert_eq!(chabauty_agreement(&x, &x).unwrap(), 3);
    let z = BallView::new(BackendTag::PAdic(2), 3, []);
    assert!(chabauty_agreement(&x, &z).is_err());
}

#[test]
fn usc_scan_finds_witness_for_padic_powers() {
    // H_n = 2^n Z tends to {0}, but every H_n is dense for odd moduli.
    let tower = Tower::moduli(2, &[3, 5, 7]).unwrap();
    let seq: Vec<SubgroupSpec> = (1..=9).map(SubgroupSpec::PAdicPower).collect();
    let report = usc_scan(&seq, &SubgroupSpec::PAdicZero, &tower, 4, &budgets()).unwrap();
    assert_eq!(report.tail, vec![4, 5, 6, 7, 8]);
    assert_eq!(report.witness, Some(padic(1)));
    assert!(report.violation());
    assert!(report.entries.iter().all(|e| !e.closure_contained));
}

#[test]
fn filtering_witnesses_are_checked() {
    let s3 = crate::permgrp::library::symmetric(3);
    let sign = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
    let m_sign = QuotientMap::free(2, vec![sign, Permutation::identity(2)]).unwrap();
    let m_s3 = QuotientMap::free(2, s3.generators().to_vec()).unwrap();
    let mut tower = Tower::new(Source::Free { rank: 2 }, vec![m_sign, m_s3]).unwrap();
    let samples: Vec<Element> = free_ball(2, 4).into_iter().map(Element::Word).collect();
    tower.set_filtering(vec![((0, 1), 1)], &samples).unwrap();
    assert!(tower.set_filtering(vec![((1, 1), 0)], &samples).is_err());
}

#[test]
fn lsc_product_map_is_image() {
    let a = Word::generator(0);
    let p = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
    let m = QuotientMap::free(1, vec![p]).unwrap();
    let img = lsc_product_map(&SubgroupSpec::Words(vec![a.pow(2)]), &m).unwrap();
    assert_eq!(img.order(), Some(2));
    let _ = word(&[]);
}

proptest! {
    #[test]
    fn closure_contains_subgroup(
        gens in prop::collection::vec(prop::collection::vec((0u32..2, any::<bool>()), 1..4), 1..3),
        seed in 0u64..1000,
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut random_perm = |n: usize| {
            let mut v: Vec<u32> = (0..n as u32).collect();
            for i in (1..n).rev() { v.swap(i, rng.gen_range(0..=i)); }
            Permutation::from_images(v).unwrap()
        };
        let maps = (0..2).map(|_| QuotientMap::free(2, vec![random_perm(5), random_perm(5)]).unwrap()).collect();
        let tower = Tower::new(Source::Free { rank: 2 }, maps).unwrap();
        let words: Vec<Word> = gens.iter().map(|g| word(g)).collect();
        let h = SubgroupSpec::Words(words.clone());
        let prepared = PreparedClosure::new(&h, &tower).unwrap();
        for w in &words {
            prop_assert!(prepared.contains_by_images(&Element::Word(w.clone())).unwrap());
        }
        // The shortcut agrees with the image test on the ball.
        for w in free_ball(2, 3) {
            let g = Element::Word(w);
            prop_assert_eq!(prepared.contains(&g).unwrap(), prepared.contains_by_images(&g).unwrap());
        }
        // Closure only grows with a coarser tower.
        let fine = closure_ball(&h, &tower, 3, &Budgets::default()).unwrap();
        let coarse = closure_ball(&h, &tower.prefix(1), 3, &Budgets::default()).unwrap();
        prop_assert!(fine.is_subset_of(&coarse));
    }
}
