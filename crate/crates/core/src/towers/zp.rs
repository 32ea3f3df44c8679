//! Exact arithmetic in `Z[1/p]`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// `num / p^exp` in lowest terms: `exp == 0` or `p ∤ num`; zero has `exp == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZpElement {
    p: u64,
    num: i64,
    exp: u32,
}

impl ZpElement {
    pub fn new(p: u64, num: i64, exp: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::invalid(format!("p must be at least 2, got {p}")));
        }
        let (mut num, mut exp) = (num, exp);
        while exp > 0 && num % p as i64 == 0 {
            num /= p as i64;
            exp -= 1;
        }
        if num == 0 {
            exp = 0;
        }
        p.checked_pow(exp)
            .ok_or_else(|| Error::invalid("denominator overflows"))?;
        Ok(ZpElement { p, num, exp })
    }

    pub fn integer(p: u64, n: i64) -> Self {
        ZpElement::new(p, n, 0).expect("integers are valid")
    }

    pub fn zero(p: u64) -> Self {
        ZpElement::integer(p, 0)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    fn denominator(&self) -> u64 {
        self.p.pow(self.exp)
    }

    /// `max(|num|, p^exp)`.
    pub fn height(&self) -> u64 {
        self.num.unsigned_abs().max(self.denominator())
    }

    /// Least `r` with `height ≤ 2^r`.
    pub fn level(&self) -> u32 {
        let h = self.height();
        if h <= 1 {
            0
        } else {
            64 - (h - 1).leading_zeros()
        }
    }

    pub fn add(&self, other: &ZpElement) -> Result<ZpElement> {
        if self.p != other.p {
            return Err(Error::BackendMismatch {
                expected: format!("Z[1/{}]", self.p),
                found: format!("Z[1/{}]", other.p),
            });
        }
        let e = self.exp.max(other.exp);
        let scale = |x: &ZpElement| -> Option<i64> {
            x.num.checked_mul(self.p.checked_pow(e - x.exp)? as i64)
        };
        let sum = scale(self)
            .zip(scale(other))
            .and_then(|(a, b)| a.checked_add(b))
            .ok_or_else(|| Error::invalid("Z[1/p] arithmetic overflow"))?;
        ZpElement::new(self.p, sum, e)
    }

    pub fn neg(&self) -> ZpElement {
        ZpElement {
            num: -self.num,
            ..*self
        }
    }

    /// Image in `Z/q` for `q` coprime to `p`: `num · p^{-exp} mod q`.
    pub fn residue(&self, q: u64) -> u64 {
        let inv_p = mod_inverse(self.p % q, q).expect("modulus coprime to p");
        let mut r = (self.num.rem_euclid(q as i64)) as u128;
        for _ in 0..self.exp {
            r = r * inv_p as u128 % q as u128;
        }
        r as u64
    }

    /// Membership in `p^n Z`.
    pub fn in_power(&self, n: u32) -> bool {
        self.exp == 0
            && self
                .p
                .checked_pow(n)
                .is_some_and(|m| self.num % m as i64 == 0)
    }

    fn sort_key(&self) -> (u64, u32, u64, bool) {
        (
            self.height(),
            self.exp,
            self.num.unsigned_abs(),
            self.num < 0,
        )
    }
}

/// Height first, so smaller elements come first and `1` precedes `-1`.
impl Ord for ZpElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl PartialOrd for ZpElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ZpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.denominator())
        }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    crate::perm::gcd(a, b)
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// All elements of height at most `2^radius`, sorted.
pub fn ball(p: u64, radius: u32, limit: usize) -> Result<Vec<ZpElement>> {
    let bound = 1u64
        .checked_shl(radius)
        .filter(|&b| b <= 1 << 40)
        .ok_or_else(|| Error::budget("ball radius", radius as u128, 40u128))?;
    let mut out = Vec::new();
    let mut exp = 0u32;
    while p.checked_pow(exp).is_some_and(|d| d <= bound) {
        let b = bound as i64;
        for num in -b..=b {
            if exp > 0 && num % p as i64 == 0 {
                continue;
            }
            if out.len() >= limit {
                return Err(Error::budget("ball", out.len() as u128 + 1, limit as u128));
            }
            out.push(ZpElement { p, num, exp });
        }
        exp += 1;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normal_form_and_height() {
        let x = ZpElement::new(2, 12, 3).unwrap();
        assert_eq!((x.numerator(), x.exponent()), (3, 1));
        assert_eq!(x.to_string(), "3/2");
        assert_eq!(x.height(), 3);
        assert_eq!(x.level(), 2);
        assert_eq!(ZpElement::new(2, 0, 5).unwrap(), ZpElement::zero(2));
        assert_eq!(ZpElement::integer(2, 2).level(), 1);
        assert_eq!(ZpElement::integer(2, 1).level(), 0);
    }

    #[test]
    fn residues() {
        // 1/2 mod 3 = 2, since 2·2 = 4 ≡ 1.
        assert_eq!(ZpElement::new(2, 1, 1).unwrap().residue(3), 2);
        assert_eq!(ZpElement::integer(2, -1).residue(7), 6);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
    }

    #[test]
    fn ball_counts() {
        // Height ≤ 2: 0, ±1, ±2, ±1/2.
        let b = ball(2, 1, 1000).unwrap();
        assert_eq!(b.len(), 7);
        assert_eq!(b[0], ZpElement::zero(2));
        assert_eq!(b[1], ZpElement::integer(2, 1));
        assert!(b.iter().all(|x| x.height() <= 2));
    }

    proptest! {
        #[test]
        fn residue_is_additive(a in -1000i64..1000, e in 0u32..6, b in -1000i64..1000, f in 0u32..6, q in prop::sample::select(vec![3u64, 5, 7, 9, 11, 31])) {
            let x = ZpElement::new(2, a, e).unwrap();
            let y = ZpElement::new(2, b, f).unwrap();
            let s = x.add(&y).unwrap();
            prop_assert_eq!(s.residue(q), (x.residue(q) + y.residue(q)) % q);
            prop_assert!(s.add(&y.neg()).unwrap() == x);
        }
    }
}
