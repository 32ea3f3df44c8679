//! Subgroup lattice by cyclic extension.
//!
//! Every subgroup is reached from the trivial group by adjoining one
//! element at a time. Only class representatives are extended, and an
//! element `x` is skipped once some `n⁻¹ h x n` (`h ∈ H`, `n ∈ N(H)`) has
//! been tried, since those give conjugate extensions.

use std::collections::HashMap;

use super::{FiniteGroup, Subgroup, SubgroupClass};

pub(super) fn subgroup_classes(g: &FiniteGroup) -> Vec<SubgroupClass> {
    let mut class_of: HashMap<Subgroup, usize> = HashMap::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    let register =
        |h: Subgroup, class_of: &mut HashMap<Subgroup, usize>, classes: &mut Vec<SubgroupClass>| {
            if class_of.contains_key(&h) {
                return;
            }
            let class = g.conjugacy_class(&h);
            let id = classes.len();
            for m in &class.members {
                class_of.insert(m.clone(), id);
            }
            classes.push(class);
        };
    register(g.trivial(), &mut class_of, &mut classes);
    let mut next = 0;
    while next < classes.len() {
        let h = classes[next].representative().clone();
        next += 1;
        if h.order() == g.order() {
            continue;
        }
        let norm = g.normalizer(&h);
        let mut tried = vec![false; g.order()];
        for &x in h.elements() {
            tried[x as usize] = true;
        }
        for x in 0..g.order() as u32 {
            if tried[x as usize] {
                continue;
            }
            for &a in h.elements() {
                let hx = g.mul(a, x);
                for &n in norm.elements() {
                    tried[g.conj(hx, n) as usize] = true;
                }
            }
            let k = g.extend(&h, x);
            register(k, &mut class_of, &mut classes);
        }
    }
    classes.sort_by(|a, b| a.representative().cmp(b.representative()));
    classes
}
