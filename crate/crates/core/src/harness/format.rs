//! The line-oriented space and map file formats.
//!
//! ```text
//! # comments run to the end of a line
//! space: chain
//! points: a b c
//! mode: topology
//! open: {} {a} {a,b} {a,b,c}
//! ```
//!
//! `mode: explicit` lists limits as `lim: {a} -> {a,b,c}`; unlisted kernels
//! have empty limits. `mode: generators` uses the same entry syntax and takes
//! the finest lawful structure containing them. `mode: topology` lists open
//! sets, which must form a topology. Map files hold `map: a -> p` lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::families::{Carrier, Subset};
use crate::maps::SpaceMap;
use crate::space::Convergence;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Explicit,
    Generators,
    Topology,
}

/// A parsed space file.
#[derive(Clone, Debug)]
pub struct SpaceFile {
    pub name: String,
    pub mode: Mode,
    pub convergence: Convergence,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Syntax { message, .. } => syntax(line, message),
        other => other,
    })
}

/// Content lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let l = raw.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn split_key(no: usize, l: &str) -> Result<(&str, &str)> {
    let (k, v) = l
        .split_once(':')
        .ok_or_else(|| syntax(no, format!("expected `key: value`, got `{l}`")))?;
    Ok((k.trim(), v.trim()))
}

fn parse_arrow(no: usize, v: &str) -> Result<(&str, &str)> {
    let (a, b) = v
        .split_once("->")
        .ok_or_else(|| syntax(no, format!("expected `X -> Y`, got `{v}`")))?;
    Ok((a.trim(), b.trim()))
}

pub fn parse_space(text: &str) -> Result<SpaceFile> {
    let mut file = parse_space_unchecked(text)?;
    file.convergence = file.convergence.validated()?;
    Ok(file)
}

/// Parses without checking the axioms, so that every violation of an
/// explicit table can be reported.
pub fn parse_space_unchecked(text: &str) -> Result<SpaceFile> {
    let mut name = String::new();
    let mut carrier: Option<Carrier> = None;
    let mut mode = Mode::Explicit;
    let mut entries: Vec<(usize, Subset, Subset)> = Vec::new();
    let mut opens: Vec<Subset> = Vec::new();
    let mut last_line = 0;
    for (no, l) in lines(text) {
        last_line = no;
        let (key, value) = split_key(no, l)?;
        match key {
            "space" => name = value.to_string(),
            "points" => {
                if carrier.is_some() {
                    return Err(syntax(no, "points given twice"));
                }
                carrier = Some(Carrier::new(value.split_whitespace())?);
            }
            "mode" => {
                mode = match value {
                    "explicit" => Mode::Explicit,
                    "generators" => Mode::Generators,
                    "topology" => Mode::Topology,
                    _ => return Err(syntax(no, format!("unknown mode `{value}`"))),
                }
            }
            "lim" => {
                let x = carrier.as_ref().ok_or_else(|| syntax(no, "`lim` before `points`"))?;
                let (a, b) = parse_arrow(no, value)?;
                let k = at_line(no, x.parse_subset(a))?;
                if k.is_empty() {
                    return Err(syntax(no, "kernel must be nonempty"));
                }
                let lim = at_line(no, x.parse_subset(b))?;
                entries.push((no, k, lim));
            }
            "open" => {
                let x = carrier.as_ref().ok_or_else(|| syntax(no, "`open` before `points`"))?;
                for tok in value.split_whitespace() {
                    opens.push(at_line(no, x.parse_subset(tok))?);
                }
            }
            _ => return Err(syntax(no, format!("unknown key `{key}`"))),
        }
    }
    let x = carrier.ok_or_else(|| syntax(last_line, "missing `points`"))?;
    let convergence = match mode {
        Mode::Topology => {
            if !entries.is_empty() {
                return Err(syntax(entries[0].0, "`lim` entries in topology mode"));
            }
            check_topology(&x, &opens).map_err(|m| syntax(last_line, m))?;
            Convergence::from_open_sets(&x, &opens)?
        }
        Mode::Explicit | Mode::Generators => {
            if !opens.is_empty() {
                return Err(syntax(last_line, "`open` entries outside topology mode"));
            }
            let pairs: Vec<(Subset, Subset)> = entries.iter().map(|&(_, k, l)| (k, l)).collect();
            if mode == Mode::Generators {
                Convergence::generate(&x, &pairs)?
            } else {
                for (i, &(no, k, _)) in entries.iter().enumerate() {
                    if entries[..i].iter().any(|e| e.1 == k) {
                        return Err(syntax(no, format!("kernel {} listed twice", x.format(k))));
                    }
                }
                let mut table = vec![Subset::EMPTY; 1 << x.size()];
                for &(k, l) in &pairs {
                    table[k.0 as usize] = l;
                }
                Convergence::tabulate_fn(&x, |k| table[k.0 as usize])?
            }
        }
    };
    Ok(SpaceFile {
        name,
        mode,
        convergence,
    })
}

fn check_topology(x: &Carrier, opens: &[Subset]) -> std::result::Result<(), String> {
    let has = |s: Subset| opens.contains(&s);
    if !has(Subset::EMPTY) || !has(x.full()) {
        return Err("open sets must include {} and the whole carrier".into());
    }
    for &a in opens {
        for &b in opens {
            if !has(a.union(b)) || !has(a.intersection(b)) {
                return Err(format!(
                    "open sets not closed under union and intersection at {} and {}",
                    x.format(a),
                    x.format(b)
                ));
            }
        }
    }
    Ok(())
}

/// Writes a structure in explicit mode, every kernel in mask order.
pub fn serialize_space(name: &str, c: &Convergence) -> String {
    let x = c.carrier();
    let mut out = String::new();
    if !name.is_empty() {
        let _ = writeln!(out, "space: {name}");
    }
    let _ = writeln!(out, "points: {}", x.labels().join(" "));
    let _ = writeln!(out, "mode: explicit");
    for k in x.kernels() {
        let _ = writeln!(out, "lim: {} -> {}", x.format(k), x.format(c.limit(k)));
    }
    out
}

/// Parses `map: a -> p` lines into a map between two spaces.
pub fn parse_map(text: &str, source: &Convergence, target: &Convergence) -> Result<SpaceMap> {
    let mut pairs = Vec::new();
    for (no, l) in lines(text) {
        let (key, value) = split_key(no, l)?;
        if key != "map" {
            return Err(syntax(no, format!("unknown key `{key}`")));
        }
        let (a, b) = parse_arrow(no, value)?;
        pairs.push((a, b));
    }
    SpaceMap::from_labels(source, target, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures;

    #[test]
    fn topology_file_gives_chain() {
        let f = parse_space("space: chain\npoints: a b c\nmode: topology\nopen: {} {a} {a,b} {a,b,c}\n").unwrap();
        assert_eq!(f.name, "chain");
        assert!(f.convergence.same_limits(&fixtures::chain()));
    }

    #[test]
    fn explicit_and_generator_files_give_ultra() {
        let explicit = "points: 1 2 3\nmode: explicit\nlim: {1} -> {1,2,3}\nlim: {2} -> {1,2,3}\nlim: {3} -> {1,2,3}\n";
        assert!(parse_space(explicit)
            .unwrap()
            .convergence
            .same_limits(&fixtures::ultra()));
        let generators = explicit.replace("explicit", "generators");
        assert!(parse_space(&generators)
            .unwrap()
            .convergence
            .same_limits(&fixtures::ultra()));
    }

    #[test]
    fn round_trip() {
        for c in [
            fixtures::chain(),
            fixtures::ultra(),
            fixtures::overlap(),
            fixtures::disc2(),
        ] {
            let text = serialize_space("x", &c);
            let back = parse_space(&text).unwrap();
            assert!(back.convergence.same_limits(&c));
            assert_eq!(serialize_space("x", &back.convergence), text);
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_space("points: a b\n# note\nlim: {a -> {a}\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 3, .. }), "{e:?}");
        let e = parse_space("points: a b\nfoo: bar\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }));
        let e = parse_space("points: a b\nlim: {z} -> {a}\n").unwrap_err();
        assert_eq!(e, Error::UnknownLabel("z".into()));
        let e = parse_space("points: a b\nlim: {a} -> {b}\n").unwrap_err();
        assert!(matches!(e, Error::Invalid(_)));
        let e = parse_space("points: a b\nmode: topology\nopen: {} {a}\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { .. }));
        let labels: Vec<String> = (0..17).map(|i| format!("p{i}")).collect();
        let e = parse_space(&format!("points: {}\n", labels.join(" "))).unwrap_err();
        assert!(matches!(e, Error::Capacity { size: 17, .. }));
    }

    #[test]
    fn map_file() {
        let c = fixtures::chain();
        let d = fixtures::disc2();
        let m = parse_map("map: a -> p\nmap: b -> p # merged\nmap: c -> q\n", &c, &d).unwrap();
        assert_eq!(m.images(), &[0, 0, 1]);
        assert_eq!(
            parse_map("map: a -> p\n", &c, &d).unwrap_err(),
            Error::NotTotal("b".into())
        );
    }
}
