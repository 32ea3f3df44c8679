//! Reduced words in abstract generators and word maps.
//!
//! Products are read left to right: the word `u v` evaluated in a group
//! backend is `eval(u) * eval(v)`, where `*` is the backend's product. The
//! commutator convention is `[x, y] = x y x⁻¹ y⁻¹` throughout the crate.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A generator or the inverse of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: u32, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn pos(generator: u32) -> Self {
        Letter::new(generator, false)
    }

    pub const fn neg(generator: u32) -> Self {
        Letter::new(generator, true)
    }

    pub const fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// The `2k` letters of rank `k` in canonical order `x1, x1⁻¹, x2, x2⁻¹, …`.
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> {
        (0..rank as u32).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }
}

/// A freely reduced word. Ordered shortlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Freely reduces `letters`, rejecting generator indices `>= rank`.
pub fn reduce(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Word> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if l.generator as usize >= rank {
            return Err(Error::GeneratorOutOfRange {
                index: l.generator as usize,
                rank,
            });
        }
        push_reduced(&mut out, l);
    }
    Ok(Word { letters: out })
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: u32) -> Self {
        Word {
            letters: vec![Letter::pos(g)],
        }
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    /// Reduces without a rank check.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of generators needed to write this word (largest index + 1).
    pub fn support_rank(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.generator as usize + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// `v⁻¹ u v`.
    pub fn conjugate_by(&self, v: &Word) -> Word {
        v.inverse().mul(self).mul(v)
    }

    /// Replaces generator `i` by `images[i]`; the word map `F_k → F_m`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        let mut out = Vec::new();
        for l in &self.letters {
            let img = images
                .get(l.generator as usize)
                .ok_or(Error::ArityMismatch {
                    expected: self.support_rank(),
                    got: images.len(),
                })?;
            if l.inverse {
                for &m in img.letters.iter().rev() {
                    push_reduced(&mut out, m.inv());
                }
            } else {
                for &m in &img.letters {
                    push_reduced(&mut out, m);
                }
            }
        }
        Ok(Word { letters: out })
    }

    /// Shifts every generator index by `offset`.
    pub fn shifted(&self, offset: u32) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(l.generator + offset, l.inverse))
                .collect(),
        }
    }

    /// Cyclically reduced core of the word.
    pub fn cyclic_core(&self) -> &[Letter] {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j > i + 1 && l[i] == l[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        &l[i..j]
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All reduced words of length `<= radius` over `rank` generators, shortlex.
pub fn free_ball(rank: usize, radius: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Word::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for l in Letter::all(rank) {
                if w.letters.last() == Some(&l.inv()) {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(l);
                next.push(Word { letters });
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Names of generators used for parsing and printing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            let ok = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::invalid(format!("bad generator name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::invalid(format!("duplicate generator name {n:?}")));
            }
        }
        Ok(Alphabet { names })
    }

    /// `x1, …, xk`: the variables of a law.
    pub fn variables(k: usize) -> Self {
        Alphabet {
            names: (1..=k).map(|i| format!("x{i}")).collect(),
        }
    }

    /// `a, b, c, …` (falls back to `g1, g2, …` beyond 26 generators).
    pub fn letters(k: usize) -> Self {
        if k <= 26 {
            Alphabet {
                names: (0..k)
                    .map(|i| ((b'a' + i as u8) as char).to_string())
                    .collect(),
            }
        } else {
            Alphabet {
                names: (1..=k).map(|i| format!("g{i}")).collect(),
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn lookup(&self, ident: &str) -> Option<Letter> {
        if let Some(i) = self.names.iter().position(|n| n == ident) {
            return Some(Letter::pos(i as u32));
        }
        // Upper-case single letters denote inverses of lower-case names.
        let mut chars = ident.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if c.is_ascii_uppercase() {
                let lower = c.to_ascii_lowercase().to_string();
                if let Some(i) = self.names.iter().position(|n| *n == lower) {
                    return Some(Letter::neg(i as u32));
                }
            }
        }
        None
    }

    /// Parses a word expression.
    ///
    /// Grammar: juxtaposition (optionally separated by `*`) of atoms, each
    /// optionally raised to an integer power with `^`. Atoms are generator
    /// names, `1` (identity), parenthesised expressions and left-normed
    /// commutators `[u, v, …]`.
    pub fn parse(&self, src: &str) -> Result<Word> {
        let mut p = Parser {
            src: src.as_bytes(),
            pos: 0,
            alphabet: self,
        };
        let w = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(w)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.alphabet.names.get(l.generator as usize) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "?{}", l.generator)?,
            }
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Word> {
        let mut acc = Word::identity();
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(c) if c == b'(' || c == b'[' || c.is_ascii_alphanumeric() || c == b'_' => {
                    let t = self.power()?;
                    acc = acc.mul(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            let n: i64 = text.parse().map_err(|_| {
                self.pos = start;
                self.error("expected integer exponent")
            })?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut acc = self.expr()?;
                let mut parts = 1;
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    let next = self.expr()?;
                    acc = Word::commutator(&acc, &next);
                    parts += 1;
                }
                if parts < 2 {
                    return Err(self.error("commutator needs at least two entries"));
                }
                if self.peek() != Some(b']') {
                    return Err(self.error("expected ']'"));
                }
                self.pos += 1;
                Ok(acc)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if &self.src[start..self.pos] == b"1" {
                    Ok(Word::identity())
                } else {
                    self.pos = start;
                    Err(self.error("only `1` is allowed as a numeric atom"))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                if let Some(l) = self.alphabet.lookup(ident) {
                    return Ok(Word::letter(l));
                }
                // Juxtaposed names without spaces, e.g. `abA` or `x1x2`:
                // split greedily by longest known prefix.
                let mut letters = Vec::new();
                let mut rest = ident;
                while !rest.is_empty() {
                    let hit = (1..=rest.len())
                        .rev()
                        .find_map(|n| self.alphabet.lookup(&rest[..n]).map(|l| (n, l)));
                    match hit {
                        Some((n, l)) => {
                            letters.push(l);
                            rest = &rest[n..];
                        }
                        None => {
                            self.pos = start + (ident.len() - rest.len());
                            return Err(self.error(&format!("unknown generator in {ident:?}")));
                        }
                    }
                }
                Ok(Word::from_letters(letters))
            }
            _ => Err(self.error("expected a generator, '(', '[' or '1'")),
        }
    }
}

/// A group in which words can be evaluated.
pub trait GroupBackend {
    type Elem: Clone + PartialEq;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// Evaluates the word map `w(g_1, …, g_k)`.
///
/// Every generator index occurring in `w` must have an argument.
pub fn eval_word<B: GroupBackend>(w: &Word, args: &[B::Elem], backend: &B) -> Result<B::Elem> {
    if w.support_rank() > args.len() {
        return Err(Error::ArityMismatch {
            expected: w.support_rank(),
            got: args.len(),
        });
    }
    let mut inverses: Vec<Option<B::Elem>> = vec![None; args.len()];
    let mut acc = backend.identity();
    for l in w.letters() {
        let g = l.generator as usize;
        if l.inverse {
            let inv = inverses[g].get_or_insert_with(|| backend.inv(&args[g]));
            acc = backend.mul(&acc, inv);
        } else {
            acc = backend.mul(&acc, &args[g]);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Alphabet::letters(3).parse(s).unwrap()
    }

    #[test]
    fn cancellation() {
        let a = Letter::pos(0);
        let b = Letter::pos(1);
        assert_eq!(reduce(2, [a, b, b.inv()]).unwrap(), Word::generator(0));
        assert_eq!(reduce(2, []).unwrap(), Word::identity());
        assert_eq!(reduce(2, [a, a.inv(), a]).unwrap(), Word::generator(0));
        assert_eq!(
            reduce(2, [Letter::pos(2)]),
            Err(Error::GeneratorOutOfRange { index: 2, rank: 2 })
        );
    }

    #[test]
    fn parse_forms() {
        assert_eq!(w("a b B"), w("a"));
        assert_eq!(w("a^-1"), w("A"));
        assert_eq!(w("[a,b]"), w("a b A B"));
        assert_eq!(w("(ab)^2").len(), 4);
        assert_eq!(w("[a,b,c]"), Word::commutator(&w("[a,b]"), &w("c")));
        assert_eq!(w("1"), Word::identity());
        assert_eq!(w("a^0 b"), w("b"));
        let err = Alphabet::letters(2).parse("a z").unwrap_err();
        assert!(matches!(err, Error::Parse { column: 3, .. }));
        assert!(Alphabet::variables(2).parse("[x1,x2").is_err());
    }

    #[test]
    fn print_round_trip() {
        let alpha = Alphabet::variables(4);
        let x = alpha.parse("[[x1,x2],[x3,x4]] x1^-1").unwrap();
        let printed = x.display(&alpha).to_string();
        assert_eq!(alpha.parse(&printed).unwrap(), x);
        assert_eq!(Word::identity().display(&alpha).to_string(), "1");
    }

    #[test]
    fn shortlex_order() {
        let mut ws = vec![w("b"), w("a a"), w("a"), w("A"), Word::identity()];
        ws.sort();
        assert_eq!(ws, vec![Word::identity(), w("a"), w("A"), w("b"), w("a a")]);
    }

    #[test]
    fn ball_sizes() {
        // 1 + 2k(2k-1)^{i-1} summed.
        assert_eq!(free_ball(2, 0).len(), 1);
        assert_eq!(free_ball(2, 1).len(), 5);
        assert_eq!(free_ball(2, 3).len(), 1 + 4 + 12 + 36);
        assert_eq!(free_ball(2, 8).len(), 13121);
    }

    #[test]
    fn substitution_is_a_word_map() {
        let u = w("[a,b]");
        let images = [w("a a"), w("b c")];
        let s = u.substitute(&images).unwrap();
        assert_eq!(s, Word::commutator(&images[0], &images[1]));
    }

    #[test]
    fn cyclic_core() {
        assert_eq!(w("a b A").cyclic_core(), w("b").letters());
        assert_eq!(w("a b").cyclic_core(), w("a b").letters());
    }
}
