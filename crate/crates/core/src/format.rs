//! Text formats for algebras and cochains.
//!
//! Algebra files:
//!
//! ```text
//! algebra <name>
//! grading <graded|quasi_graded> height <k>
//! truncation <d>            (optional)
//! basis
//! <name> degree <d>
//! brackets
//! [<a>,<b>] = <rat>*<name> + <rat>*<name> ...
//! end
//! ```
//!
//! Cochain files:
//!
//! ```text
//! cochain p <p> q <q> level <r> W <n>
//! (<i1>,...,<iq>) = <rat>*<name> + ...
//! ```
//!
//! Rationals are integers or `p/q`; terms may be joined with ` - ` as well as
//! ` + `. Blank lines and lines starting with `#` are ignored; unlisted
//! brackets and tuples are zero.

use std::collections::HashMap;
use std::fmt::{Display, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lie::{GradedLieAlgebra, GradingKind, Terms};
use crate::scalar::{zeros, Scalar};
use crate::spencer::{Cochain, SpencerComplex, Subsets};

struct Line<'a> {
    no: usize,
    text: &'a str,
    /// Byte offset of `text` inside the raw line.
    indent: usize,
}

fn content_lines(src: &str) -> Vec<Line<'_>> {
    src.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                return None;
            }
            Some(Line {
                no: i + 1,
                text,
                indent: raw.len() - raw.trim_start().len(),
            })
        })
        .collect()
}

impl Line<'_> {
    fn err(&self, offset: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.no, self.indent + offset + 1, msg)
    }

    /// Column offset of a subslice of `text`.
    fn offset_of(&self, part: &str) -> usize {
        part.as_ptr() as usize - self.text.as_ptr() as usize
    }
}

fn parse_int<T: FromStr>(line: &Line<'_>, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| line.err(line.offset_of(tok), format!("expected {what}, found `{tok}`")))
}

/// Parses `<rat>*<name> (+|- <rat>*<name>)*` or `0`.
fn parse_terms<S: Scalar + FromStr>(
    line: &Line<'_>,
    rhs: &str,
    lookup: &dyn Fn(&str) -> Option<usize>,
) -> Result<Vec<(usize, S)>> {
    let rhs_trim = rhs.trim();
    if rhs_trim == "0" {
        return Ok(Vec::new());
    }
    if rhs_trim.is_empty() {
        return Err(line.err(line.offset_of(rhs), "missing right-hand side"));
    }
    let mut out = Vec::new();
    let mut rest = rhs_trim;
    let mut negate = false;
    loop {
        let (term, next) = match find_separator(rest) {
            Some((pos, sign)) => (&rest[..pos], Some((&rest[pos + 3..], sign))),
            None => (rest, None),
        };
        let term = term.trim();
        let at = line.offset_of(term);
        let (coef, name) = term
            .split_once('*')
            .ok_or_else(|| line.err(at, format!("term `{term}` is not of the form <rational>*<name>")))?;
        let mut c: S = coef
            .trim()
            .parse()
            .map_err(|_| line.err(at, format!("bad rational `{}`", coef.trim())))?;
        if negate {
            c = c.negated();
        }
        let name = name.trim();
        let idx =
            lookup(name).ok_or_else(|| line.err(line.offset_of(name), format!("unknown basis element `{name}`")))?;
        out.push((idx, c));
        match next {
            Some((r, sign)) => {
                rest = r;
                negate = sign < 0;
            }
            None => break,
        }
    }
    Ok(out)
}

/// Position and sign of the first ` + ` or ` - ` separator.
fn find_separator(s: &str) -> Option<(usize, i32)> {
    let plus = s.find(" + ").map(|p| (p, 1));
    let minus = s.find(" - ").map(|p| (p, -1));
    match (plus, minus) {
        (Some(a), Some(b)) => Some(if a.0 < b.0 { a } else { b }),
        (a, b) => a.or(b),
    }
}

fn write_terms<S: Scalar + Display>(out: &mut String, terms: &[(usize, S)], names: &[String]) {
    if terms.is_empty() {
        out.push('0');
        return;
    }
    for (k, (i, c)) in terms.iter().enumerate() {
        let shown = c.to_string();
        let (neg, abs) = match shown.strip_prefix('-') {
            Some(a) => (true, a.to_string()),
            None => (false, shown.clone()),
        };
        match (k, neg) {
            (0, true) => write!(out, "-{abs}*{}", names[*i]),
            (0, false) => write!(out, "{abs}*{}", names[*i]),
            (_, true) => write!(out, " - {abs}*{}", names[*i]),
            (_, false) => write!(out, " + {abs}*{}", names[*i]),
        }
        .expect("writing to a String");
    }
}

pub fn parse_algebra<S: Scalar + FromStr>(src: &str) -> Result<GradedLieAlgebra<S>> {
    let lines = content_lines(src);
    let last_line = src.lines().count().max(1);
    let mut it = lines.iter().peekable();
    let eof = |what: &str| Error::parse(last_line, 1, format!("unexpected end of file, expected {what}"));

    let head = it.next().ok_or_else(|| eof("`algebra <name>`"))?;
    let name = head
        .text
        .strip_prefix("algebra")
        .filter(|r| r.is_empty() || r.starts_with(' '))
        .ok_or_else(|| head.err(0, "expected `algebra <name>`"))?
        .trim()
        .to_string();

    let g = it.next().ok_or_else(|| eof("`grading ...`"))?;
    let toks: Vec<&str> = g.text.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "grading" || toks[2] != "height" {
        return Err(g.err(0, "expected `grading <graded|quasi_graded> height <k>`"));
    }
    let kind = match toks[1] {
        "graded" => GradingKind::Graded,
        "quasi_graded" => GradingKind::QuasiGraded,
        other => return Err(g.err(g.offset_of(toks[1]), format!("unknown grading `{other}`"))),
    };
    let height: usize = parse_int(g, toks[3], "a height")?;

    let mut truncation = None;
    if let Some(l) = it.peek() {
        if l.text.starts_with("truncation") {
            let toks: Vec<&str> = l.text.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(l.err(0, "expected `truncation <degree>`"));
            }
            truncation = Some(parse_int::<i32>(l, toks[1], "a degree")?);
            it.next();
        }
    }

    let b = it.next().ok_or_else(|| eof("`basis`"))?;
    if b.text != "basis" {
        return Err(b.err(0, "expected `basis`"));
    }
    let mut basis: Vec<(String, i32)> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    loop {
        let l = it.next().ok_or_else(|| eof("`brackets`"))?;
        if l.text == "brackets" {
            break;
        }
        let toks: Vec<&str> = l.text.split_whitespace().collect();
        if toks.len() != 3 || toks[1] != "degree" {
            return Err(l.err(0, "expected `<name> degree <d>` or `brackets`"));
        }
        let d: i32 = parse_int(l, toks[2], "a degree")?;
        if d < -1 || d >= height as i32 {
            return Err(l.err(
                l.offset_of(toks[2]),
                format!("degree {d} outside -1..={}", height as i32 - 1),
            ));
        }
        if index.insert(toks[0].to_string(), basis.len()).is_some() {
            return Err(l.err(0, format!("duplicate basis name `{}`", toks[0])));
        }
        basis.push((toks[0].to_string(), d));
    }

    let lookup = |n: &str| index.get(n).copied();
    let mut brackets: Vec<((usize, usize), Terms<S>)> = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut ended = false;
    for l in it.by_ref() {
        if l.text == "end" {
            ended = true;
            break;
        }
        let (lhs, rhs) = l
            .text
            .split_once('=')
            .ok_or_else(|| l.err(0, "expected `[<a>,<b>] = ...` or `end`"))?;
        let inner = lhs
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| l.err(0, "bracket must be written `[<a>,<b>]`"))?;
        let (a, bname) = inner
            .split_once(',')
            .ok_or_else(|| l.err(1, "bracket must name two basis elements"))?;
        let (a, bname) = (a.trim(), bname.trim());
        let ia = lookup(a).ok_or_else(|| l.err(l.offset_of(a), format!("unknown basis element `{a}`")))?;
        let ib = lookup(bname).ok_or_else(|| l.err(l.offset_of(bname), format!("unknown basis element `{bname}`")))?;
        if ia == ib {
            return Err(l.err(0, format!("bracket of `{a}` with itself")));
        }
        let key = (ia.min(ib), ia.max(ib));
        if let Some(prev) = seen.insert(key, l.no) {
            return Err(l.err(0, format!("bracket [{a},{bname}] already given on line {prev}")));
        }
        let terms = parse_terms(l, rhs, &lookup)?;
        brackets.push(((ia, ib), terms));
    }
    if !ended {
        return Err(eof("`end`"));
    }
    if let Some(l) = it.next() {
        return Err(l.err(0, "content after `end`"));
    }
    let alg = GradedLieAlgebra::new(name, basis, kind, height, brackets)?;
    Ok(match truncation {
        Some(d) => alg.with_truncation(d),
        None => alg,
    })
}

pub fn write_algebra<S: Scalar + Display>(alg: &GradedLieAlgebra<S>) -> String {
    let mut out = String::new();
    writeln!(out, "algebra {}", alg.name()).unwrap();
    writeln!(out, "grading {} height {}", alg.kind(), alg.height()).unwrap();
    if let Some(t) = alg.truncation() {
        writeln!(out, "truncation {t}").unwrap();
    }
    out.push_str("basis\n");
    for (n, d) in alg.names().iter().zip(alg.degrees()) {
        writeln!(out, "{n} degree {d}").unwrap();
    }
    out.push_str("brackets\n");
    for ((i, j), terms) in alg.structure() {
        write!(out, "[{},{}] = ", alg.names()[i], alg.names()[j]).unwrap();
        write_terms(&mut out, terms, alg.names());
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

/// Parses a cochain file against a complex; values are reduced to the
/// stated level.
pub fn parse_cochain<S: Scalar + FromStr>(c: &SpencerComplex<S>, src: &str) -> Result<Cochain<S>> {
    let lines = content_lines(src);
    let head = lines.first().ok_or_else(|| Error::parse(1, 1, "empty cochain file"))?;
    let toks: Vec<&str> = head.text.split_whitespace().collect();
    if toks.len() != 9
        || toks[0] != "cochain"
        || toks[1] != "p"
        || toks[3] != "q"
        || toks[5] != "level"
        || toks[7] != "W"
    {
        return Err(head.err(0, "expected `cochain p <p> q <q> level <r> W <n>`"));
    }
    let p: usize = parse_int(head, toks[2], "p")?;
    let q: usize = parse_int(head, toks[4], "q")?;
    let r: usize = parse_int(head, toks[6], "a level")?;
    let n: usize = parse_int(head, toks[8], "the dimension of W")?;
    if n != c.w_dim() {
        return Err(head.err(
            head.offset_of(toks[8]),
            format!("W has dimension {}, file says {n}", c.w_dim()),
        ));
    }
    let alg = c.algebra();
    let d = p as i32 - 1;
    let comp = alg.component(d);
    let pos: HashMap<&str, usize> = comp
        .iter()
        .enumerate()
        .map(|(k, &i)| (alg.names()[i].as_str(), k))
        .collect();
    let lookup = |name: &str| pos.get(name).copied();
    let sets = Subsets::new(n, q);
    let mut values = vec![zeros::<S>(comp.len()); sets.len()];
    let mut given = vec![0usize; sets.len()];
    for l in &lines[1..] {
        let (lhs, rhs) = l
            .text
            .split_once('=')
            .ok_or_else(|| l.err(0, "expected `(<i1>,...,<iq>) = ...`"))?;
        let inner = lhs
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| l.err(0, "index tuple must be written `(<i1>,...,<iq>)`"))?;
        let mut idx = Vec::new();
        if !inner.trim().is_empty() {
            for tok in inner.split(',') {
                let tok = tok.trim();
                let i: usize = parse_int(l, tok, "an index")?;
                if i == 0 || i > n {
                    return Err(l.err(l.offset_of(tok), format!("index {i} outside 1..={n}")));
                }
                idx.push(i - 1);
            }
        }
        if idx.len() != q {
            return Err(l.err(0, format!("expected {q} indices, found {}", idx.len())));
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(l.err(0, "indices must be strictly increasing"));
        }
        let t = sets.position(&idx).expect("valid increasing tuple");
        if given[t] != 0 {
            return Err(l.err(0, format!("tuple already given on line {}", given[t])));
        }
        given[t] = l.no;
        for (k, c) in parse_terms::<S>(l, rhs, &|name| {
            lookup(name).or_else(|| {
                // Distinguish names of the wrong degree from unknown ones.
                alg.index_of(name).map(|_| usize::MAX)
            })
        })? {
            if k == usize::MAX {
                return Err(l.err(0, format!("value names an element outside degree {d}")));
            }
            values[t][k] = values[t][k].plus(&c);
        }
    }
    c.cochain(p, q, r, values)
}

pub fn write_cochain<S: Scalar + Display>(c: &SpencerComplex<S>, x: &Cochain<S>) -> String {
    let alg = c.algebra();
    let comp = alg.component(x.p() as i32 - 1);
    let names: Vec<String> = comp.iter().map(|&i| alg.names()[i].clone()).collect();
    let mut out = String::new();
    writeln!(
        out,
        "cochain p {} q {} level {} W {}",
        x.p(),
        x.q(),
        x.level(),
        x.w_dim()
    )
    .unwrap();
    let sets = Subsets::new(x.w_dim(), x.q());
    for (t, v) in x.values().iter().enumerate() {
        let terms: Vec<(usize, S)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect();
        if terms.is_empty() {
            continue;
        }
        let idx: Vec<String> = sets.get(t).iter().map(|i| (i + 1).to_string()).collect();
        write!(out, "({}) = ", idx.join(",")).unwrap();
        write_terms(&mut out, &terms, &names);
        out.push('\n');
    }
    out
}
