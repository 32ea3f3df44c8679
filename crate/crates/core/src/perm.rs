//! Permutations of `{0, …, n-1}` acting on the right.
//!
//! `p.then(q)` (also `&p * &q`) applies `p` first, then `q`, so a word
//! `x y` evaluates to `x.then(y)` and words act on points left to right.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::invalid(format!(
                    "{images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::invalid(format!(
                        "point {} exceeds degree {degree}",
                        p + 1
                    )));
                }
                if touched[p] {
                    return Err(Error::invalid(format!(
                        "point {} repeated in cycles",
                        p + 1
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based disjoint cycle notation such as `(1 2)(3 4 5)`; `()`
    /// is the identity. Commas between points are allowed.
    pub fn parse_cycles(src: &str, degree: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut chars = src.char_indices().peekable();
        let err = |pos: usize, msg: &str| Error::Parse {
            line: 1,
            column: pos + 1,
            message: msg.to_string(),
        };
        while let Some((pos, c)) = chars.next() {
            match c {
                '(' if current.is_none() => current = Some(Vec::new()),
                ')' => match current.take() {
                    Some(cyc) => cycles.push(cyc),
                    None => return Err(err(pos, "unmatched ')'")),
                },
                c if c.is_ascii_whitespace() || c == ',' => {}
                c if c.is_ascii_digit() => {
                    let mut n = c.to_digit(10).unwrap() as usize;
                    while let Some(&(_, d)) = chars.peek() {
                        if let Some(v) = d.to_digit(10) {
                            n = n * 10 + v as usize;
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    match current.as_mut() {
                        Some(cyc) if n >= 1 => cyc.push(n - 1),
                        Some(_) => return Err(err(pos, "points are 1-based")),
                        None => return Err(err(pos, "point outside a cycle")),
                    }
                }
                _ => return Err(err(pos, "unexpected character in cycle notation")),
            }
        }
        if current.is_some() {
            return Err(err(src.len(), "unclosed cycle"));
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn pow(&self, n: i64) -> Permutation {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..n.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    /// Nontrivial cycles, each starting at its least point, sorted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cyc.push(p);
                p = self.apply(p);
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Smallest moved point.
    pub fn first_moved(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.apply(i) != i)
    }

    /// Embeds into a larger degree, acting on `offset..offset+degree`.
    pub fn embed(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = (offset as u32) + j;
        }
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

/// 1-based cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
