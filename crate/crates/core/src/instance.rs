//! Line-oriented instance files: `[ring]`, `[semigroup]`, `[action]` and
//! `[options]` sections. See `docs/format` for the grammar.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use crate::action::{validate_action, UnitalAction};
use crate::error::{Error, Result};
use crate::fixtures::{action_from_generators, GeneratorData};
use crate::ring::{Atom, AtomKind, FiniteRing, IsoPair, StructuredIso};
use crate::semigroup::{evaluate_word, InverseSemigroup, PartialPerm, Word};

/// Settings an instance file may carry; command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceOptions {
    pub guard_max_order: Option<BigUint>,
    pub brute_force_subalgebras: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub action: UnitalAction,
    pub options: InstanceOptions,
    /// sha256 of the source text, hex.
    pub digest: String,
}

#[derive(Clone, Debug)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn perr(line: usize, col: usize, expected: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        expected: expected.into(),
    }
}

impl Tok<'_> {
    fn err(&self, expected: impl Into<String>) -> Error {
        perr(self.line, self.col, expected)
    }

    fn int<T: std::str::FromStr>(&self, what: &str) -> Result<T> {
        self.text.parse().map_err(|_| self.err(what))
    }
}

/// Split a line into tokens with 1-based columns, dropping `#` comments.
fn tokens(line: &str, lineno: usize) -> Vec<Tok<'_>> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Tok {
                    text: &body[s..i],
                    line: lineno,
                    col: body[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

#[derive(Default)]
struct Sections<'a> {
    ring: Vec<Vec<Tok<'a>>>,
    semigroup: Vec<Vec<Tok<'a>>>,
    action: Vec<Vec<Tok<'a>>>,
    options: Vec<Vec<Tok<'a>>>,
    seen: Vec<&'static str>,
}

fn split_sections(src: &str) -> Result<Sections<'_>> {
    let mut s = Sections::default();
    let mut current: Option<&'static str> = None;
    for (i, line) in src.lines().enumerate() {
        let toks = tokens(line, i + 1);
        let Some(first) = toks.first() else { continue };
        if first.text.starts_with('[') {
            let name = match first.text {
                "[ring]" => "ring",
                "[semigroup]" => "semigroup",
                "[action]" => "action",
                "[options]" => "options",
                _ => return Err(first.err("one of [ring], [semigroup], [action], [options]")),
            };
            if s.seen.contains(&name) {
                return Err(first.err(format!("no second [{name}] section")));
            }
            if let Some(extra) = toks.get(1) {
                return Err(extra.err("end of line after section header"));
            }
            s.seen.push(name);
            current = Some(name);
            continue;
        }
        let bucket = match current {
            None => return Err(first.err("section header")),
            Some("ring") => &mut s.ring,
            Some("semigroup") => &mut s.semigroup,
            Some("action") => &mut s.action,
            Some(_) => &mut s.options,
        };
        bucket.push(toks);
    }
    Ok(s)
}

fn end_position(src: &str) -> (usize, usize) {
    if src.is_empty() {
        return (1, 1);
    }
    let lines = src.lines().count();
    if src.ends_with('\n') {
        (lines + 1, 1)
    } else {
        (lines, src.lines().last().map_or(0, |l| l.chars().count()) + 1)
    }
}

fn parse_ring(lines: &[Vec<Tok>]) -> Result<FiniteRing> {
    let mut atoms = Vec::new();
    for toks in lines {
        if toks[0].text != "atom" {
            return Err(toks[0].err("atom"));
        }
        let kind = toks.get(1).ok_or_else(|| eol(&toks[0], "atom kind gf or zmod"))?;
        let p_tok = toks.get(2).ok_or_else(|| eol(kind, "prime p"))?;
        let k_tok = toks.get(3).ok_or_else(|| eol(p_tok, "exponent k"))?;
        let p: i64 = p_tok.int("prime p")?;
        let k: u32 = k_tok.int("exponent k")?;
        let atom = match kind.text {
            "zmod" => {
                if let Some(extra) = toks.get(4) {
                    return Err(extra.err("end of line"));
                }
                Atom::zmod(p, k)
            }
            "gf" => {
                let coeffs = toks[4..]
                    .iter()
                    .map(|t| t.int::<i64>("polynomial coefficient"))
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.is_empty() {
                    Atom::gf_default(p, k)
                } else {
                    Atom::gf(p, k, &coeffs)
                }
            }
            _ => return Err(kind.err("atom kind gf or zmod")),
        };
        atoms.push(atom.map_err(|e| match e {
            Error::InvalidAtom(m) => p_tok.err(format!("a valid atom ({m})")),
            other => other,
        })?);
    }
    FiniteRing::new(atoms)
}

fn eol(after: &Tok, expected: &str) -> Error {
    perr(after.line, after.col + after.text.chars().count(), expected)
}

/// Parsed but not yet validated semigroup section.
enum SemigroupDecl<'a> {
    Table {
        names: Vec<String>,
        rows: Vec<(Tok<'a>, Vec<Tok<'a>>)>,
        zero: Option<Tok<'a>>,
    },
    Generators {
        gens: Vec<(String, PartialPerm)>,
        relations: Vec<(Tok<'a>, Word, Word)>,
    },
}

fn parse_pair(t: &Tok, s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once('>').ok_or_else(|| t.err("a pair a>b"))?;
    let a = a.parse().map_err(|_| t.err("a pair a>b"))?;
    let b = b.parse().map_err(|_| t.err("a pair a>b"))?;
    Ok((a, b))
}

fn parse_semigroup<'a>(lines: &[Vec<Tok<'a>>]) -> Result<SemigroupDecl<'a>> {
    let first = &lines[0][0];
    match first.text {
        "elements" => {
            let names: Vec<String> = lines[0][1..].iter().map(|t| t.text.to_string()).collect();
            if names.is_empty() {
                return Err(eol(first, "element names"));
            }
            for (i, t) in lines[0][1..].iter().enumerate() {
                if names[..i].contains(&names[i]) {
                    return Err(t.err("distinct element names"));
                }
            }
            let mut rows = Vec::new();
            let mut zero = None;
            for toks in &lines[1..] {
                match toks[0].text {
                    "row" => {
                        let name = toks.get(1).ok_or_else(|| eol(&toks[0], "element name"))?;
                        rows.push((name.clone(), toks[2..].to_vec()));
                    }
                    "zero" => {
                        let z = toks.get(1).ok_or_else(|| eol(&toks[0], "zero element name"))?;
                        if zero.is_some() {
                            return Err(toks[0].err("a single zero line"));
                        }
                        zero = Some(z.clone());
                    }
                    _ => return Err(toks[0].err("row or zero")),
                }
            }
            Ok(SemigroupDecl::Table { names, rows, zero })
        }
        "points" => {
            let n_tok = lines[0].get(1).ok_or_else(|| eol(first, "number of points"))?;
            let points: usize = n_tok.int("number of points")?;
            if points == 0 || points > 64 {
                return Err(n_tok.err("between 1 and 64 points"));
            }
            let mut gens: Vec<(String, PartialPerm)> = Vec::new();
            let mut relations = Vec::new();
            for toks in &lines[1..] {
                match toks[0].text {
                    "generator" => {
                        let name = toks.get(1).ok_or_else(|| eol(&toks[0], "generator name"))?;
                        if gens.iter().any(|(g, _)| g == name.text) {
                            return Err(name.err("a new generator name"));
                        }
                        let map = toks[2..]
                            .iter()
                            .map(|t| parse_pair(t, t.text))
                            .collect::<Result<Vec<_>>>()?;
                        let perm = PartialPerm::new(points, &map)
                            .map_err(|e| name.err(format!("a partial injection ({e})")))?;
                        gens.push((name.text.to_string(), perm));
                    }
                    "relation" => {
                        let eq = toks
                            .iter()
                            .position(|t| t.text == "=")
                            .ok_or_else(|| eol(toks.last().expect("nonempty"), "="))?;
                        let word = |ts: &[Tok]| -> Result<Word> {
                            ts.iter()
                                .map(|t| {
                                    let (base, inv) = match t.text.strip_suffix("^-1") {
                                        Some(b) => (b, true),
                                        None => (t.text, false),
                                    };
                                    gens.iter()
                                        .position(|(g, _)| g == base)
                                        .map(|i| (i, inv))
                                        .ok_or_else(|| t.err("a declared generator"))
                                })
                                .collect()
                        };
                        let lhs = word(&toks[1..eq])?;
                        let rhs = word(&toks[eq + 1..])?;
                        if lhs.is_empty() || rhs.is_empty() {
                            return Err(toks[0].err("nonempty words on both sides"));
                        }
                        relations.push((toks[0].clone(), lhs, rhs));
                    }
                    _ => return Err(toks[0].err("generator or relation")),
                }
            }
            if gens.is_empty() {
                return Err(eol(first, "at least one generator"));
            }
            Ok(SemigroupDecl::Generators { gens, relations })
        }
        _ => Err(first.err("elements or points")),
    }
}

fn parse_list(t: &Tok, v: &str) -> Result<Vec<usize>> {
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|x| x.parse().map_err(|_| t.err("a comma separated list of atom indices")))
        .collect()
}

/// `act <name> dom=<list> im=<list> map=<a>b,...> twist=<list>`.
fn parse_act<'a>(ring: &FiniteRing, toks: &[Tok<'a>]) -> Result<(Tok<'a>, StructuredIso)> {
    let name = toks.get(1).ok_or_else(|| eol(&toks[0], "element name"))?;
    let mut fields: HashMap<&str, (&Tok, &str)> = HashMap::new();
    for t in &toks[2..] {
        let (k, v) = t.text.split_once('=').ok_or_else(|| t.err("key=value"))?;
        if !matches!(k, "dom" | "im" | "map" | "twist") {
            return Err(t.err("dom=, im=, map= or twist="));
        }
        if fields.insert(k, (t, v)).is_some() {
            return Err(t.err(format!("a single {k}=")));
        }
    }
    let last = toks.last().expect("nonempty");
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| eol(last, &format!("{k}=")));
    let (mt, mv) = get("map")?;
    let map: Vec<(usize, usize)> = if mv.is_empty() {
        Vec::new()
    } else {
        mv.split(',').map(|p| parse_pair(mt, p)).collect::<Result<_>>()?
    };
    let (tt, tv) = get("twist")?;
    let twists = parse_list(tt, tv)?;
    if twists.len() != map.len() {
        return Err(tt.err(format!("{} twist values", map.len())));
    }
    let pairs: Vec<IsoPair> = map
        .iter()
        .zip(&twists)
        .map(|(&(from, to), &tw)| IsoPair {
            from,
            to,
            twist: tw as u32,
        })
        .collect();
    let iso = StructuredIso::new(ring, pairs).map_err(|e| mt.err(format!("a valid matching ({e})")))?;
    let (dt, dv) = get("dom")?;
    let (it, iv) = get("im")?;
    let mut dom = parse_list(dt, dv)?;
    let mut im = parse_list(it, iv)?;
    dom.sort_unstable();
    im.sort_unstable();
    if dom != iso.dom().iter().collect::<Vec<_>>() {
        return Err(dt.err("dom= equal to the sources of map="));
    }
    if im != iso.im().iter().collect::<Vec<_>>() {
        return Err(it.err("im= equal to the targets of map="));
    }
    Ok((name.clone(), iso))
}

fn parse_options(lines: &[Vec<Tok>]) -> Result<InstanceOptions> {
    let mut o = InstanceOptions::default();
    for toks in lines {
        let v = toks.get(1).ok_or_else(|| eol(&toks[0], "a value"))?;
        if let Some(extra) = toks.get(2) {
            return Err(extra.err("end of line"));
        }
        match toks[0].text {
            "guard-max-order" => o.guard_max_order = Some(v.int("a positive integer")?),
            "brute-force-subalgebras" => {
                o.brute_force_subalgebras = Some(match v.text {
                    "true" => true,
                    "false" => false,
                    _ => return Err(v.err("true or false")),
                })
            }
            _ => return Err(toks[0].err("guard-max-order or brute-force-subalgebras")),
        }
    }
    Ok(o)
}

pub fn digest(src: &str) -> String {
    hex::encode(Sha256::digest(src.as_bytes()))
}

/// Parse and validate an instance.
pub fn parse_instance(src: &str) -> Result<Instance> {
    let sec = split_sections(src)?;
    let (el, ec) = end_position(src);
    let missing = |need: &str| perr(el, ec, format!("[{need}] section"));
    if !sec.seen.contains(&"ring") {
        return Err(missing("ring"));
    }
    if sec.ring.is_empty() {
        return Err(perr(el, ec, "at least one atom line in [ring]"));
    }
    let ring = parse_ring(&sec.ring)?;
    if !sec.seen.contains(&"semigroup") {
        return Err(missing("semigroup"));
    }
    if sec.semigroup.is_empty() {
        return Err(perr(el, ec, "elements or points in [semigroup]"));
    }
    let decl = parse_semigroup(&sec.semigroup)?;
    if !sec.seen.contains(&"action") {
        return Err(missing("action"));
    }
    let mut acts: Vec<(Tok, StructuredIso)> = Vec::new();
    for toks in &sec.action {
        if toks[0].text != "act" {
            return Err(toks[0].err("act"));
        }
        acts.push(parse_act(&ring, toks)?);
    }
    let options = parse_options(&sec.options)?;
    let action = match decl {
        SemigroupDecl::Table { names, rows, zero } => build_table(ring, names, rows, zero, acts, (el, ec))?,
        SemigroupDecl::Generators { gens, relations } => build_generated(ring, gens, relations, acts, (el, ec))?,
    };
    Ok(Instance {
        action,
        options,
        digest: digest(src),
    })
}

fn assign<T: Clone>(names: &[String], items: Vec<(Tok, T)>, end: (usize, usize), what: &str) -> Result<Vec<T>> {
    let mut out: Vec<Option<T>> = vec![None; names.len()];
    for (t, x) in items {
        let i = names
            .iter()
            .position(|n| n == t.text)
            .ok_or_else(|| t.err(format!("a declared {what}")))?;
        if out[i].is_some() {
            return Err(t.err(format!("a single line per {what}")));
        }
        out[i] = Some(x);
    }
    out.into_iter()
        .zip(names)
        .map(|(x, n)| x.ok_or_else(|| perr(end.0, end.1, format!("a line for {what} {n}"))))
        .collect()
}

fn build_table(
    ring: FiniteRing,
    names: Vec<String>,
    rows: Vec<(Tok, Vec<Tok>)>,
    zero: Option<Tok>,
    acts: Vec<(Tok, StructuredIso)>,
    end: (usize, usize),
) -> Result<UnitalAction> {
    let n = names.len();
    let mut parsed = Vec::new();
    for (name, entries) in rows {
        if entries.len() != n {
            let at = entries.get(n).unwrap_or(&name);
            return Err(at.err(format!("{n} products in the row of {}", name.text)));
        }
        let row = entries
            .iter()
            .map(|t| {
                names
                    .iter()
                    .position(|x| x == t.text)
                    .ok_or_else(|| t.err("a declared element"))
            })
            .collect::<Result<Vec<_>>>()?;
        parsed.push((name, row));
    }
    let table = assign(&names, parsed, end, "element")?;
    let z = match zero {
        Some(t) => Some(
            names
                .iter()
                .position(|x| x == t.text)
                .ok_or_else(|| t.err("a declared element"))?,
        ),
        None => None,
    };
    let sg = InverseSemigroup::from_table(table, z, Some(names.clone()))?;
    let isos = assign(&names, acts, end, "element")?;
    validate_action(sg, ring, isos)
}

fn build_generated(
    ring: FiniteRing,
    gens: Vec<(String, PartialPerm)>,
    relations: Vec<(Tok, Word, Word)>,
    acts: Vec<(Tok, StructuredIso)>,
    end: (usize, usize),
) -> Result<UnitalAction> {
    let names: Vec<String> = gens.iter().map(|(g, _)| g.clone()).collect();
    let perms: Vec<PartialPerm> = gens.into_iter().map(|(_, p)| p).collect();
    for (t, l, r) in &relations {
        if evaluate_word(&perms, l) != evaluate_word(&perms, r) {
            return Err(Error::InconsistentPresentation(format!(
                "relation on line {} does not hold",
                t.line
            )));
        }
    }
    let isos = assign(&names, acts, end, "generator")?;
    // relations must also hold for the isomorphisms
    for (t, l, r) in &relations {
        let ev = |w: &Word| {
            w.iter()
                .map(|&(g, inv)| if inv { isos[g].inverse(&ring) } else { isos[g].clone() })
                .reduce(|a, b| crate::iso_pu::compose(&ring, &a, &b))
        };
        if ev(l) != ev(r) {
            return Err(Error::InconsistentPresentation(format!(
                "relation on line {} does not hold for the action",
                t.line
            )));
        }
    }
    let data = GeneratorData { names, perms, isos };
    action_from_generators(ring, &data)
}

pub fn parse_instance_file(path: &Path) -> Result<Instance> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&src)
}

/// Names that survive tokenisation: whitespace removed, `#` and `=`
/// replaced, duplicates suffixed with their index.
fn safe_names(s: &InverseSemigroup) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(s.len());
    for i in 0..s.len() {
        let mut n: String = s
            .name(i)
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '#' || c == '=' || c == '[' { '_' } else { c })
            .collect();
        if n.is_empty() || out.contains(&n) {
            n = format!("x{i}");
        }
        out.push(n);
    }
    out
}

/// Render an action in table form; `parse_instance` reads it back.
pub fn render_instance(act: &UnitalAction) -> String {
    let mut out = String::from("[ring]\n");
    for a in act.ring().atoms() {
        match a.kind() {
            AtomKind::ZMod => writeln!(out, "atom zmod {} {}", a.p(), a.k()),
            AtomKind::GF => {
                let c: Vec<String> = a.poly().iter().map(|x| x.to_string()).collect();
                writeln!(out, "atom gf {} {} {}", a.p(), a.k(), c.join(" "))
            }
        }
        .expect("string write");
    }
    let s = act.semigroup();
    let names = safe_names(s);
    writeln!(out, "\n[semigroup]\nelements {}", names.join(" ")).expect("string write");
    for a in 0..s.len() {
        let row: Vec<&str> = (0..s.len()).map(|b| names[s.mul(a, b)].as_str()).collect();
        writeln!(out, "row {} {}", names[a], row.join(" ")).expect("string write");
    }
    if let Some(z) = s.zero() {
        writeln!(out, "zero {}", names[z]).expect("string write");
    }
    out.push_str("\n[action]\n");
    for (a, f) in act.isos().iter().enumerate() {
        let list = |it: Vec<String>| it.join(",");
        writeln!(
            out,
            "act {} dom={} im={} map={} twist={}",
            names[a],
            list(f.dom().iter().map(|x| x.to_string()).collect()),
            list(f.im().iter().map(|x| x.to_string()).collect()),
            list(f.pairs().iter().map(|p| format!("{}>{}", p.from, p.to)).collect()),
            list(f.pairs().iter().map(|p| p.twist.to_string()).collect()),
        )
        .expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn empty_file_fails_at_origin() {
        assert_eq!(
            parse_instance("").unwrap_err(),
            Error::Parse {
                line: 1,
                col: 1,
                expected: "[ring] section".into()
            }
        );
    }

    #[test]
    fn round_trip_fixtures() {
        for act in [
            fixtures::s7(),
            fixtures::c2_swap(),
            fixtures::b2(),
            fixtures::c2_zero_swap(),
        ] {
            let text = render_instance(&act);
            let back = parse_instance(&text).unwrap();
            assert_eq!(back.action.isos(), act.isos());
            assert_eq!(back.action.semigroup().raw_table(), act.semigroup().raw_table());
            assert_eq!(back.action.semigroup().zero(), act.semigroup().zero());
            assert_eq!(render_instance(&back.action), text);
        }
    }

    #[test]
    fn generator_form() {
        let src = "\
[ring]
atom gf 3 2 1 0 1
atom gf 3 2 1 0 1
atom gf 3 2 1 0 1
[semigroup]
points 4
generator 1 0>0 1>1 2>2 3>3
generator s 0>3 1>2 2>1
generator t 1>2 2>1
relation s s = s s^-1 t t  # both are the restriction to e2
[action]
act 1 dom=0,1,2 im=0,1,2 map=0>0,1>1,2>2 twist=0,0,0
act s dom=0,1 im=2,1 map=0>2,1>1 twist=0,1
act t dom=1 im=1 map=1>1 twist=1
";
        let inst = parse_instance(src).unwrap();
        assert_eq!(inst.action.semigroup().len(), 7);
        assert_eq!(inst.digest.len(), 64);
    }

    #[test]
    fn positioned_errors() {
        let e = parse_instance("[ring]\natom gf 3 2 1 1 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, col: 9, .. }), "{e:?}");
        let e = parse_instance("atom zmod 3 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 1, .. }));
        let e = parse_instance(
            "[ring]\natom zmod 3 1\n[semigroup]\nelements a\nrow a a\n[action]\nact a dom=0 im=0 map=0>0\n",
        )
        .unwrap_err();
        assert!(matches!(e, Error::Parse { line: 7, col: 25, .. }), "{e:?}");
    }

    #[test]
    fn non_associative_table_names_triple() {
        let src = "[ring]\natom zmod 2 1\n[semigroup]\nelements a b\nrow a b a\nrow b b b\n[action]\n\
                   act a dom=0 im=0 map=0>0 twist=0\nact b dom=0 im=0 map=0>0 twist=0\n";
        assert!(matches!(parse_instance(src), Err(Error::NotAssociative { .. })));
    }
}
