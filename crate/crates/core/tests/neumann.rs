use std::time::Instant;

use sublab::laws::solvability_law;
use sublab::subdyn::{envelope_law_check, hereditarily_minimal, neumann_truncation};
use sublab::{Budgets, Permutation};

#[test]
fn neumann_alt5_alt7() {
    let b = Budgets::default();
    let start = Instant::now();
    let es = vec![
        vec![Permutation::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap()],
        vec![Permutation::from_cycles(7, &[&[0, 1], &[2, 3]]).unwrap()],
    ];
    let ex = neumann_truncation(&[5, 7], &es, &b).unwrap();
    eprintln!("built in {:?}", start.elapsed());
    assert_eq!(ex.group.order(), 60 * 2520);
    assert_eq!(ex.action[0].degree(), 30 * 1260);
    assert!(ex.members_abelian);
    assert_eq!(ex.urs.len(), 15 * 105);
    assert!(ex.envelope_is_whole());
    assert_eq!(ex.factor_closures_full, vec![true, true]);
    let m = hereditarily_minimal(&ex.group, &ex.urs, 12, &b).unwrap();
    eprintln!("minimality in {:?}", start.elapsed());
    assert!(!m.holds);
    // Alt(4) × Alt(7) has index 5 and fixes the subgroups inside its V4.
    assert_eq!(m.witness.unwrap().order(), 12 * 2520);
    let r = envelope_law_check(&ex.group, &ex.urs, &solvability_law(1).unwrap(), 12, &b).unwrap();
    assert!(r.member_satisfies && !r.envelope_satisfies && !r.counterexample());
    eprintln!("total {:?}", start.elapsed());
}
