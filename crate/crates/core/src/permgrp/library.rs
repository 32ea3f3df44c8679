//! Standard small groups as permutation groups.

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::PermGroup;

fn cycle(n: usize, points: &[usize]) -> Permutation {
    Permutation::from_cycles(n, &[points]).expect("valid cycle")
}

/// `S_n` generated by `(1 2)` and `(1 2 … n)`.
pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n);
    }
    let full: Vec<usize> = (0..n).collect();
    PermGroup {
        degree: n,
        generators: vec![cycle(n, &[0, 1]), cycle(n, &full)],
    }
}

/// `A_n` generated by the 3-cycles `(1 2 k)`, `k = 3..n`.
pub fn alternating(n: usize) -> PermGroup {
    PermGroup {
        degree: n,
        generators: (2..n).map(|k| cycle(n, &[0, 1, k])).collect(),
    }
}

/// Cyclic group of order `n` acting regularly.
pub fn cyclic(n: usize) -> PermGroup {
    let full: Vec<usize> = (0..n).collect();
    if n < 2 {
        return PermGroup::trivial(n);
    }
    PermGroup {
        degree: n,
        generators: vec![cycle(n, &full)],
    }
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::invalid("dihedral group needs n >= 3"));
    }
    let rot = cycle(n, &(0..n).collect::<Vec<_>>());
    let refl = Permutation::from_images_unchecked(
        (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect(),
    );
    Ok(PermGroup {
        degree: n,
        generators: vec![rot, refl],
    })
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> PermGroup {
    // Element (s, u): sign s in {0, 1}, unit u in {1, i, j, k}; index 4s + u.
    fn mul(a: usize, b: usize) -> usize {
        let (sa, ua) = (a / 4, a % 4);
        let (sb, ub) = (b / 4, b % 4);
        // Unit products: table[ua][ub] = (sign, unit).
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let (s, u) = T[ua][ub];
        4 * ((sa + sb + s) % 2) + u
    }
    let right =
        |g: usize| Permutation::from_images_unchecked((0..8).map(|x| mul(x, g) as u32).collect());
    PermGroup {
        degree: 8,
        generators: vec![right(1), right(2)],
    }
}

/// Direct product on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let n = a.degree + b.degree;
    let mut generators: Vec<Permutation> = a.generators.iter().map(|g| g.embed(0, n)).collect();
    generators.extend(b.generators.iter().map(|g| g.embed(a.degree, n)));
    PermGroup {
        degree: n,
        generators,
    }
}

/// `Alt(u)` for odd `u ≥ 5`, generated by `(1 2 k)`.
pub fn alt_group(u: usize) -> Result<PermGroup> {
    if u < 5 || u.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "alt_group needs an odd degree >= 5, got {u}"
        )));
    }
    Ok(alternating(u))
}

/// Direct product of several groups; the combined degree must fit `max_degree`.
pub fn product(groups: &[PermGroup], max_degree: usize) -> Result<PermGroup> {
    let degree: usize = groups.iter().map(|g| g.degree).sum();
    if degree > max_degree {
        return Err(Error::budget("degree", degree as u128, max_degree as u128));
    }
    let mut generators = Vec::new();
    let mut offset = 0;
    for g in groups {
        generators.extend(g.generators.iter().map(|p| p.embed(offset, degree)));
        offset += g.degree;
    }
    Ok(PermGroup { degree, generators })
}

/// `AGL(1, 5)`: the affine maps `x ↦ ax + b` of `Z/5`, order 20.
pub fn affine_5() -> PermGroup {
    PermGroup {
        degree: 5,
        generators: vec![
            cycle(5, &[0, 1, 2, 3, 4]),
            Permutation::from_images_unchecked(vec![0, 2, 4, 1, 3]),
        ],
    }
}

/// `PSL(2, 7) ≅ GL(3, 2)` acting on the 7 points of the Fano plane with
/// lines `{0, 1, 3} + i mod 7`.
pub fn psl_2_7() -> PermGroup {
    let p = |c: &[&[usize]]| Permutation::from_cycles(7, c).expect("valid cycles");
    PermGroup {
        degree: 7,
        generators: vec![p(&[&[0, 1, 2, 3, 4, 5, 6]]), p(&[&[2, 4], &[5, 6]])],
    }
}

/// Named groups of order at most 200 used by the exhaustive scans.
pub fn corpus() -> Vec<(&'static str, PermGroup)> {
    let z2 = cyclic(2);
    let d = |n| dihedral(n).expect("n >= 3");
    vec![
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z6", cyclic(6)),
        ("Z8", cyclic(8)),
        ("Z2xZ2", direct_product(&z2, &z2)),
        ("Z2^3", direct_product(&direct_product(&z2, &z2), &z2)),
        ("S3", symmetric(3)),
        ("D4", d(4)),
        ("Q8", quaternion()),
        ("D5", d(5)),
        ("D6", d(6)),
        ("S3xZ2", direct_product(&symmetric(3), &z2)),
        ("S3xZ3", direct_product(&symmetric(3), &cyclic(3))),
        ("D4xZ2", direct_product(&d(4), &z2)),
        ("AGL(1,5)", affine_5()),
        ("A4", alternating(4)),
        ("S4", symmetric(4)),
        ("A4xZ2", direct_product(&alternating(4), &z2)),
        ("S3xS3", direct_product(&symmetric(3), &symmetric(3))),
        ("A5", alternating(5)),
        ("S5", symmetric(5)),
        ("PSL(2,7)", psl_2_7()),
    ]
}
