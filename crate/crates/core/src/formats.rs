//! Plain-text file formats for laws, groups, Stallings graphs, towers and
//! automata.
//!
//! Every format is line based: a keyword followed by its arguments, one
//! entry per line. Blank lines and `#` comments are ignored. Parse errors
//! carry the 1-based line and column of the offending token. Each printer
//! produces text its parser reads back to an equal value.
//!
//! ```text
//! # law file                    # group file
//! law w2                        name S4
//! arity 4                       degree 4
//! term [[x1,x2],[x3,x4]]        generator (1 2)
//!                               generator (1 2 3 4)
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laws::Law;
use crate::perm::Permutation;
use crate::permgrp::PermGroup;
use crate::stallings::StallingsGraph;
use crate::towers::{QuotientMap, Source, Target, Tower};
use crate::treelab::{AutomatonGroup, MealyAutomaton};
use crate::words::Alphabet;

/// Ball radius on which explicit maps from automaton groups are checked.
pub const AUTOMATON_CHECK_RADIUS: usize = 4;

/// One non-empty line split into keyword and argument.
struct Entry<'a> {
    line: usize,
    keyword: &'a str,
    rest: &'a str,
    /// 1-based column where `rest` starts.
    rest_col: usize,
}

impl<'a> Entry<'a> {
    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.rest_col + offset,
            message: message.into(),
        }
    }

    fn keyword_error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.rest_col - self.keyword.len() - 1,
            message: message.into(),
        }
    }

    /// Moves an error reported against `rest` alone to file coordinates.
    fn relocate(&self, e: Error) -> Error {
        match e {
            Error::Parse {
                column, message, ..
            } => self.error(column.saturating_sub(1), message),
            other => self.error(0, other.to_string()),
        }
    }

    fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.rest.char_indices().chain([(self.rest.len(), ' ')]) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((s, &self.rest[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        out
    }

    fn number<T: std::str::FromStr>(&self) -> Result<T> {
        let t = self.tokens();
        match t.as_slice() {
            [(off, tok)] => tok
                .parse()
                .map_err(|_| self.error(*off, format!("expected a number, got {tok:?}"))),
            _ => Err(self.error(0, format!("{} takes one number", self.keyword))),
        }
    }

    fn word(&self) -> Result<&'a str> {
        match self.tokens().as_slice() {
            [(_, tok)] => Ok(tok),
            _ => Err(self.error(0, format!("{} takes one name", self.keyword))),
        }
    }
}

fn entries(src: &str) -> impl Iterator<Item = Entry<'_>> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let text = raw.split('#').next().unwrap_or("");
        let lead = text.len() - text.trim_start().len();
        let body = text.trim();
        if body.is_empty() {
            return None;
        }
        let kw_len = body.find(char::is_whitespace).unwrap_or(body.len());
        let keyword = &body[..kw_len];
        let after = &body[kw_len..];
        let gap = after.len() - after.trim_start().len();
        Some(Entry {
            line: i + 1,
            keyword,
            rest: after.trim_start(),
            rest_col: lead + kw_len + gap + 1,
        })
    })
}

/// An entry that never appeared, reported at the end of the file.
fn missing(src: &str, what: &str) -> Error {
    Error::Parse {
        line: end_of_file(src),
        column: 1,
        message: format!("missing {what}"),
    }
}

fn end_of_file(src: &str) -> usize {
    src.lines().count() + 1
}

// Laws.

pub fn parse_laws(src: &str) -> Result<Vec<Law>> {
    struct Pending {
        line: usize,
        name: String,
        arity: Option<usize>,
        term: Option<(String, usize, usize)>,
    }
    fn finish(p: Pending) -> Result<Law> {
        let at = |message: String| Error::Parse {
            line: p.line,
            column: 1,
            message,
        };
        let arity = p
            .arity
            .ok_or_else(|| at(format!("law {} has no arity", p.name)))?;
        let (text, line, col) = p
            .term
            .ok_or_else(|| at(format!("law {} has no term", p.name)))?;
        let term = Alphabet::variables(arity)
            .parse(&text)
            .map_err(|e| match e {
                Error::Parse {
                    column, message, ..
                } => Error::Parse {
                    line,
                    column: col + column - 1,
                    message,
                },
                other => other,
            })?;
        Law::new(p.name, arity, term).map_err(|e| Error::Parse {
            line,
            column: col,
            message: e.to_string(),
        })
    }
    let mut out = Vec::new();
    let mut cur: Option<Pending> = None;
    for e in entries(src) {
        match e.keyword {
            "law" => {
                if let Some(p) = cur.take() {
                    out.push(finish(p)?);
                }
                cur = Some(Pending {
                    line: e.line,
                    name: e.word()?.to_string(),
                    arity: None,
                    term: None,
                });
            }
            "arity" | "term" => {
                let p = cur
                    .as_mut()
                    .ok_or_else(|| e.keyword_error("expected `law <name>` first"))?;
                if e.keyword == "arity" {
                    p.arity = Some(e.number()?);
                } else {
                    p.term = Some((e.rest.to_string(), e.line, e.rest_col));
                }
            }
            other => return Err(e.keyword_error(format!("unknown keyword {other:?} in law file"))),
        }
    }
    if let Some(p) = cur {
        out.push(finish(p)?);
    }
    if out.is_empty() {
        return Err(Error::Parse {
            line: end_of_file(src),
            column: 1,
            message: "no laws in file".into(),
        });
    }
    Ok(out)
}

pub fn print_laws(laws: &[Law]) -> String {
    let mut s = String::new();
    for (i, law) in laws.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        writeln!(s, "law {}", law.name()).unwrap();
        writeln!(s, "arity {}", law.arity()).unwrap();
        writeln!(s, "term {}", law.term_string()).unwrap();
    }
    s
}

// Groups.

/// A permutation group read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub name: Option<String>,
    pub group: PermGroup,
}

pub fn parse_group(src: &str) -> Result<GroupFile> {
    let mut name = None;
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for e in entries(src) {
        match e.keyword {
            "name" => name = Some(e.word()?.to_string()),
            "degree" => {
                if degree.is_some() {
                    return Err(e.keyword_error("degree given twice"));
                }
                degree = Some(e.number()?);
            }
            "generator" => {
                let n =
                    degree.ok_or_else(|| e.keyword_error("degree must come before generators"))?;
                gens.push(Permutation::parse_cycles(e.rest, n).map_err(|x| e.relocate(x))?);
            }
            other => {
                return Err(e.keyword_error(format!("unknown keyword {other:?} in group file")))
            }
        }
    }
    let degree = degree.ok_or_else(|| missing(src, "degree"))?;
    Ok(GroupFile {
        name,
        group: PermGroup::new(degree, gens)?,
    })
}

pub fn print_group(name: Option<&str>, group: &PermGroup) -> String {
    let mut s = String::new();
    if let Some(n) = name {
        writeln!(s, "name {n}").unwrap();
    }
    writeln!(s, "degree {}", group.degree()).unwrap();
    for g in group.generators() {
        writeln!(s, "generator {g}").unwrap();
    }
    s
}

// Stallings graphs. Vertices are 0-based; generators are named x1..xk.

pub fn parse_graph(src: &str) -> Result<StallingsGraph> {
    let mut rank = None;
    let mut vertices = None;
    let mut basepoint = 0;
    let mut edges = Vec::new();
    for e in entries(src) {
        match e.keyword {
            "rank" => rank = Some(e.number()?),
            "vertices" => vertices = Some(e.number()?),
            "basepoint" => basepoint = e.number()?,
            "edge" => {
                let r: usize =
                    rank.ok_or_else(|| e.keyword_error("rank must come before edges"))?;
                let n: usize =
                    vertices.ok_or_else(|| e.keyword_error("vertices must come before edges"))?;
                let t = e.tokens();
                let [(o1, u), (o2, g), (o3, v)] = t.as_slice() else {
                    return Err(e.error(0, "edge takes `from generator to`"));
                };
                let vertex = |off: usize, tok: &str| -> Result<usize> {
                    tok.parse::<usize>()
                        .ok()
                        .filter(|&x| x < n)
                        .ok_or_else(|| e.error(off, format!("bad vertex {tok:?}")))
                };
                let gen = g
                    .strip_prefix('x')
                    .and_then(|i| i.parse::<usize>().ok())
                    .filter(|&i| (1..=r).contains(&i))
                    .ok_or_else(|| {
                        e.error(*o2, format!("bad generator {g:?}, expected x1..x{r}"))
                    })?;
                edges.push((vertex(*o1, u)?, gen - 1, vertex(*o3, v)?));
            }
            other => {
                return Err(e.keyword_error(format!("unknown keyword {other:?} in graph file")))
            }
        }
    }
    let rank = rank.ok_or_else(|| missing(src, "rank"))?;
    let vertices = vertices.ok_or_else(|| missing(src, "vertices"))?;
    StallingsGraph::from_edges(rank, vertices, basepoint, &edges)
}

pub fn print_graph(g: &StallingsGraph) -> String {
    let mut s = String::new();
    writeln!(s, "rank {}", g.rank()).unwrap();
    writeln!(s, "vertices {}", g.vertex_count()).unwrap();
    writeln!(s, "basepoint {}", g.basepoint()).unwrap();
    for (u, gen, v) in g.edges() {
        writeln!(s, "edge {u} x{} {v}", gen + 1).unwrap();
    }
    s
}

// Automata.

/// ```text
/// name grigorchuk
/// alphabet 2
/// state e identity
/// state a output (1 2) next e e
/// state b output () next a c
/// generators a b c d
/// ```
pub fn parse_automaton(src: &str) -> Result<AutomatonGroup> {
    struct State<'a> {
        entry: Entry<'a>,
        name: String,
        identity: bool,
        output: Option<Permutation>,
        next: Vec<(usize, String)>,
    }
    let mut name = String::from("automaton");
    let mut alphabet: Option<usize> = None;
    let mut states: Vec<State> = Vec::new();
    let mut generators: Option<Entry> = None;
    for e in entries(src) {
        match e.keyword {
            "name" => name = e.word()?.to_string(),
            "alphabet" => alphabet = Some(e.number()?),
            "state" => {
                let d =
                    alphabet.ok_or_else(|| e.keyword_error("alphabet must come before states"))?;
                let toks = e.tokens();
                let Some(&(_, sname)) = toks.first() else {
                    return Err(e.error(0, "state needs a name"));
                };
                let mut st = State {
                    name: sname.to_string(),
                    identity: false,
                    output: None,
                    next: Vec::new(),
                    entry: e,
                };
                let e = &st.entry;
                match toks.get(1).map(|t| t.1) {
                    Some("identity") if toks.len() == 2 => st.identity = true,
                    Some("output") => {
                        let out_start = toks[1].0 + "output".len();
                        let next_at = e
                            .rest
                            .find(" next ")
                            .ok_or_else(|| e.error(toks[1].0, "expected `next`"))?;
                        let cycles = &e.rest[out_start..next_at];
                        st.output = Some(
                            Permutation::parse_cycles(cycles, d)
                                .map_err(|x| e.relocate(shift(x, out_start)))?,
                        );
                        let rest_toks: Vec<(usize, String)> = toks
                            .iter()
                            .filter(|(off, _)| *off > next_at + 1)
                            .map(|(off, t)| (*off, t.to_string()))
                            .collect();
                        if rest_toks.len() != d {
                            return Err(e.error(next_at + 1, format!("expected {d} next states")));
                        }
                        st.next = rest_toks;
                    }
                    _ => return Err(e.error(0, "expected `identity` or `output … next …`")),
                }
                if states.iter().any(|s| s.name == st.name) {
                    return Err(st
                        .entry
                        .error(0, format!("state {} defined twice", st.name)));
                }
                states.push(st);
            }
            "generators" => generators = Some(e),
            other => {
                return Err(e.keyword_error(format!("unknown keyword {other:?} in automaton file")))
            }
        }
    }
    let d = alphabet.ok_or_else(|| missing(src, "alphabet"))?;
    let gens = generators.ok_or_else(|| missing(src, "generators"))?;
    let index = |entry: &Entry, off: usize, n: &str| -> Result<u32> {
        states
            .iter()
            .position(|s| s.name == n)
            .map(|i| i as u32)
            .ok_or_else(|| entry.error(off, format!("unknown state {n:?}")))
    };
    let ids: Vec<usize> = states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.identity)
        .map(|(i, _)| i)
        .collect();
    let identity = match ids.as_slice() {
        [i] => *i,
        _ => return Err(missing(src, "exactly one identity state")),
    };
    let mut out = Vec::new();
    let mut next = Vec::new();
    for (i, s) in states.iter().enumerate() {
        if s.identity {
            out.push((0..d as u32).collect());
            next.push(vec![i as u32; d]);
        } else {
            let p = s.output.as_ref().unwrap();
            out.push(p.images().to_vec());
            next.push(
                s.next
                    .iter()
                    .map(|(off, n)| index(&s.entry, *off, n))
                    .collect::<Result<_>>()?,
            );
        }
    }
    let gen_ids = gens
        .tokens()
        .iter()
        .map(|(off, n)| index(&gens, *off, n).map(|i| i as usize))
        .collect::<Result<Vec<_>>>()?;
    let names = states.iter().map(|s| s.name.clone()).collect();
    let automaton = MealyAutomaton::new(d, names, identity, out, next)?;
    AutomatonGroup::new(name, automaton, gen_ids)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column: column + by,
            message,
        },
        other => other,
    }
}

pub fn print_automaton(g: &AutomatonGroup) -> String {
    let a = g.automaton();
    let names = a.state_names();
    let mut s = String::new();
    writeln!(s, "name {}", g.name()).unwrap();
    writeln!(s, "alphabet {}", a.alphabet()).unwrap();
    for (i, n) in names.iter().enumerate() {
        if i == a.identity_state() {
            writeln!(s, "state {n} identity").unwrap();
            continue;
        }
        let out = Permutation::from_images(a.output(i).to_vec()).expect("valid output");
        let next: Vec<&str> = a
            .transition(i)
            .iter()
            .map(|&t| names[t as usize].as_str())
            .collect();
        writeln!(s, "state {n} output {out} next {}", next.join(" ")).unwrap();
    }
    writeln!(s, "generators {}", g.generator_names().join(" ")).unwrap();
    s
}

// Towers.

/// Resolves a file reference in a tower file to its contents.
pub type Loader<'a> = dyn FnMut(&str) -> Result<String> + 'a;

/// ```text
/// source free 2            # or: source zp 2, source automaton grigorchuk
/// map 4                    # explicit images of degree 4
/// image (1 2)
/// image (1 2 3 4)
/// map target s4.grp        # images are the target file's generators
/// modulus 5                # Z[1/p] only
/// level 3                  # automaton sources only
/// ```
pub fn parse_tower(src: &str, load: &mut Loader) -> Result<Tower> {
    enum Pending {
        Images {
            line: usize,
            degree: usize,
            images: Vec<Permutation>,
        },
    }
    let mut source: Option<Source> = None;
    let mut maps: Vec<QuotientMap> = Vec::new();
    let mut pending: Option<Pending> = None;
    let flush =
        |pending: Option<Pending>, source: &Source, maps: &mut Vec<QuotientMap>| -> Result<()> {
            if let Some(Pending::Images {
                line,
                degree,
                images,
            }) = pending
            {
                let at = |e: Error| Error::Parse {
                    line,
                    column: 1,
                    message: e.to_string(),
                };
                if images.iter().any(|p| p.degree() != degree) {
                    return Err(at(Error::invalid(
                        "image degree differs from the map degree",
                    )));
                }
                maps.push(build_map(source, images).map_err(at)?);
            }
            Ok(())
        };
    for e in entries(src) {
        if e.keyword != "source" && source.is_none() {
            return Err(e.keyword_error("the first entry must be `source`"));
        }
        match e.keyword {
            "source" => {
                if source.is_some() {
                    return Err(e.keyword_error("source given twice"));
                }
                let t = e.tokens();
                source = Some(match t.as_slice() {
                    [(_, "free"), (off, k)] => Source::Free {
                        rank: k
                            .parse()
                            .map_err(|_| e.error(*off, "rank must be a number"))?,
                    },
                    [(_, "zp"), (off, p)] => {
                        let p: u64 = p
                            .parse()
                            .ok()
                            .filter(|&p| p >= 2)
                            .ok_or_else(|| e.error(*off, "p must be at least 2"))?;
                        Source::PAdic { p }
                    }
                    [(_, "automaton"), (_, "grigorchuk")] => {
                        Source::Automaton(Arc::new(AutomatonGroup::grigorchuk()))
                    }
                    [(_, "automaton"), (off, file)] => {
                        let text = load(file).map_err(|x| e.error(*off, x.to_string()))?;
                        Source::Automaton(Arc::new(
                            parse_automaton(&text)
                                .map_err(|x| e.error(*off, format!("in {file}: {x}")))?,
                        ))
                    }
                    _ => {
                        return Err(e.error(
                            0,
                            "expected `free <rank>`, `zp <p>` or `automaton <name|file>`",
                        ))
                    }
                });
            }
            "map" => {
                let src_ref = source.as_ref().unwrap();
                flush(pending.take(), src_ref, &mut maps)?;
                let t = e.tokens();
                match t.as_slice() {
                    [(_, "target"), (off, file)] => {
                        let text = load(file).map_err(|x| e.error(*off, x.to_string()))?;
                        let g = parse_group(&text)
                            .map_err(|x| e.error(*off, format!("in {file}: {x}")))?;
                        maps.push(
                            build_map(src_ref, g.group.generators().to_vec())
                                .map_err(|x| e.error(0, x.to_string()))?,
                        );
                    }
                    [(off, n)] => {
                        let degree = n
                            .parse()
                            .map_err(|_| e.error(*off, "expected a degree or `target <file>`"))?;
                        pending = Some(Pending::Images {
                            line: e.line,
                            degree,
                            images: Vec::new(),
                        });
                    }
                    _ => return Err(e.error(0, "expected `map <degree>` or `map target <file>`")),
                }
            }
            "image" => {
                let Some(Pending::Images { degree, images, .. }) = pending.as_mut() else {
                    return Err(e.keyword_error("image outside a `map <degree>` entry"));
                };
                images.push(Permutation::parse_cycles(e.rest, *degree).map_err(|x| e.relocate(x))?);
            }
            "modulus" => {
                flush(pending.take(), source.as_ref().unwrap(), &mut maps)?;
                let Some(Source::PAdic { p }) = source else {
                    return Err(e.keyword_error("modulus needs a zp source"));
                };
                let q: u64 = e.number()?;
                maps.push(QuotientMap::modulus(p, q).map_err(|x| e.error(0, x.to_string()))?);
            }
            "level" => {
                flush(pending.take(), source.as_ref().unwrap(), &mut maps)?;
                let Some(Source::Automaton(g)) = &source else {
                    return Err(e.keyword_error("level needs an automaton source"));
                };
                let k: usize = e.number()?;
                maps.push(
                    g.level_quotient(k, &crate::Budgets::default())
                        .map_err(|x| e.error(0, x.to_string()))?,
                );
            }
            other => {
                return Err(e.keyword_error(format!("unknown keyword {other:?} in tower file")))
            }
        }
    }
    let source = source.ok_or_else(|| missing(src, "source"))?;
    flush(pending, &source, &mut maps)?;
    let mut tower = Tower::empty(source);
    for m in maps {
        tower.push(m)?;
    }
    Ok(tower)
}

fn build_map(source: &Source, images: Vec<Permutation>) -> Result<QuotientMap> {
    match source {
        Source::Free { rank } => QuotientMap::free(*rank, images),
        Source::Automaton(g) => QuotientMap::automaton(g.clone(), images, AUTOMATON_CHECK_RADIUS),
        Source::PAdic { .. } => Err(Error::invalid("zp sources take `modulus` entries")),
    }
}

/// Prints a tower with explicit images. Automaton sources other than the
/// Grigorchuk preset are written as `automaton_file`.
pub fn print_tower(t: &Tower, automaton_file: &str) -> String {
    let mut s = String::new();
    match t.source() {
        Source::Free { rank } => writeln!(s, "source free {rank}").unwrap(),
        Source::PAdic { p } => writeln!(s, "source zp {p}").unwrap(),
        Source::Automaton(g) if **g == AutomatonGroup::grigorchuk() => {
            writeln!(s, "source automaton grigorchuk").unwrap()
        }
        Source::Automaton(_) => writeln!(s, "source automaton {automaton_file}").unwrap(),
    }
    for m in t.maps() {
        match m.target() {
            Target::Modulus(q) => writeln!(s, "modulus {q}").unwrap(),
            Target::Perm(images) => {
                writeln!(s, "map {}", m.size()).unwrap();
                for p in images {
                    writeln!(s, "image {p}").unwrap();
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::solvability_law;
    use crate::permgrp::library;
    use crate::words::Word;

    fn no_files(_: &str) -> Result<String> {
        Err(Error::invalid("no files"))
    }

    #[test]
    fn law_round_trip() {
        let laws = vec![
            solvability_law(1).unwrap(),
            solvability_law(2).unwrap(),
            Law::new("square", 1, Word::generator(0).pow(2)).unwrap(),
        ];
        let text = print_laws(&laws);
        let back = parse_laws(&text).unwrap();
        assert_eq!(back, laws);
        assert_eq!(back[1].solvability_length(), Some(2));
        let src = "law w2\narity 4\nterm [[x1,x2],[x3,x4]]\n";
        assert_eq!(parse_laws(src).unwrap()[0], laws[1]);
    }

    #[test]
    fn law_errors_have_positions() {
        let err = parse_laws("law bad\narity 2\nterm x1 x3\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 3,
                    column: 9,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_laws("arity 2\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 1,
                column: 1,
                ..
            }
        ));
        let err = parse_laws("law id\narity 1\nterm x1 x1^-1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn group_round_trip() {
        for (name, g) in library::corpus() {
            let text = print_group(Some(name), &g);
            let back = parse_group(&text).unwrap();
            assert_eq!(back.group, g);
            assert_eq!(back.name.as_deref(), Some(name));
        }
        let g = parse_group("# S3\ndegree 3\ngenerator (1 2)\n  generator (1 2 3)  # 3-cycle\n")
            .unwrap();
        assert_eq!(g.group.order(), Some(6));
    }

    #[test]
    fn group_errors_have_positions() {
        let err = parse_group("degree 3\ngenerator (1 4)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_group("degree 3\ngenerator (1 2]\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 2,
                    column: 15,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_group("generator (1 2)\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 1,
                column: 1,
                ..
            }
        ));
        let err = parse_group("degree x\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 1,
                column: 8,
                ..
            }
        ));
    }

    #[test]
    fn graph_round_trip() {
        let (a, b) = (Word::generator(0), Word::generator(1));
        let g =
            StallingsGraph::from_generators(2, &[a.pow(2), b.mul(&a).mul(&b.inverse())]).unwrap();
        let text = print_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        let err = parse_graph("rank 2\nvertices 2\nedge 0 x3 1\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 3,
                    column: 8,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn automaton_round_trip() {
        let g = AutomatonGroup::grigorchuk();
        let text = print_automaton(&g);
        assert!(text.contains("state b output () next a c"));
        assert_eq!(parse_automaton(&text).unwrap(), g);
        let err = parse_automaton(
            "alphabet 2\nstate e identity\nstate a output (1 2) next e f\ngenerators a\n",
        )
        .unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 3,
                    column: 29,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn tower_round_trip() {
        let s4 = library::symmetric(4);
        let mut files = |name: &str| -> Result<String> {
            match name {
                "s4.grp" => Ok(print_group(Some("S4"), &s4)),
                _ => Err(Error::invalid(format!("no file {name}"))),
            }
        };
        let src = "source free 2\nmap 3\nimage (1 2)\nimage (1 2 3)\nmap target s4.grp\nmap target s4.grp\n";
        let t = parse_tower(src, &mut files).unwrap();
        assert_eq!(t.len(), 2);
        let back = parse_tower(&print_tower(&t, ""), &mut no_files).unwrap();
        assert!(t.maps().iter().zip(back.maps()).all(|(a, b)| a.same_as(b)));

        let z = parse_tower("source zp 2\nmodulus 3\nmodulus 5\n", &mut no_files).unwrap();
        assert_eq!(print_tower(&z, ""), "source zp 2\nmodulus 3\nmodulus 5\n");
        let err = parse_tower("source zp 2\nmodulus 4\n", &mut no_files).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));

        let g = parse_tower(
            "source automaton grigorchuk\nlevel 1\nlevel 2\n",
            &mut no_files,
        )
        .unwrap();
        let back = parse_tower(&print_tower(&g, ""), &mut no_files).unwrap();
        assert_eq!(back.len(), 2);
        assert!(g.maps().iter().zip(back.maps()).all(|(a, b)| a.same_as(b)));
        // Not a homomorphism: b c d = 1 but its image is (1 2).
        let bad =
            "source automaton grigorchuk\nmap 2\nimage (1 2)\nimage (1 2)\nimage ()\nimage ()\n";
        assert!(parse_tower(bad, &mut no_files).is_err());
    }
}
