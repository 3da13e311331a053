//! Line-oriented text formats.
//!
//! ```text
//! digraph <n> <m>        rainbow <n> <m>
//! <u> <v>                <u>-<v>[,<u>-<v>]
//! ...                    ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::{Digraph, Edge, GraphError, RainbowInstance};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, GraphError> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, found {tok:?}")))
}

pub fn parse_digraph(text: &str) -> Result<Digraph, GraphError> {
    let last_line = text.lines().count().max(1);
    let mut it = content_lines(text);
    let (n, m) = header(&mut it, "digraph")?;
    let mut arcs = Vec::with_capacity(m);
    for (line, l) in it {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(line, format!("expected `<u> <v>`, found {l:?}")));
        }
        arcs.push((parse_usize(line, toks[0])?, parse_usize(line, toks[1])?));
    }
    if arcs.len() != m {
        return Err(parse_err(
            last_line,
            format!("header promises {m} arcs, found {}", arcs.len()),
        ));
    }
    Digraph::from_arcs(n, arcs)
}

fn header<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
) -> Result<(usize, usize), GraphError> {
    let (line, h) = it
        .next()
        .ok_or_else(|| parse_err(1, format!("missing `{keyword} <n> <m>` header")))?;
    let toks: Vec<&str> = h.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != keyword {
        return Err(parse_err(line, format!("expected `{keyword} <n> <m>`, found {h:?}")));
    }
    Ok((parse_usize(line, toks[1])?, parse_usize(line, toks[2])?))
}

fn parse_edge(line: usize, tok: &str) -> Result<Edge, GraphError> {
    let (u, v) = tok
        .trim()
        .split_once('-')
        .ok_or_else(|| parse_err(line, format!("expected `u-v`, found {tok:?}")))?;
    Ok(Edge::new(parse_usize(line, u.trim())?, parse_usize(line, v.trim())?))
}

/// Parses a simple-origin family system.
pub fn parse_rainbow(text: &str) -> Result<RainbowInstance, GraphError> {
    let last_line = text.lines().count().max(1);
    let mut it = content_lines(text);
    let (n, m) = header(&mut it, "rainbow")?;
    let mut families = Vec::with_capacity(m);
    for (line, l) in it {
        let fam = l
            .split(',')
            .map(|tok| parse_edge(line, tok))
            .collect::<Result<Vec<_>, _>>()?;
        if fam.len() > 2 {
            return Err(parse_err(line, format!("a family holds 1 or 2 edges, found {}", fam.len())));
        }
        families.push(fam);
    }
    if families.len() != m {
        return Err(parse_err(
            last_line,
            format!("header promises {m} families, found {}", families.len()),
        ));
    }
    RainbowInstance::new(n, families)
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut s = format!("digraph {} {}\n", d.n(), d.arc_count());
    for &(u, v) in d.arcs() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn write_rainbow(inst: &RainbowInstance) -> String {
    let mut s = format!("rainbow {} {}\n", inst.n(), inst.m());
    for fam in inst.families() {
        let parts: Vec<String> = fam.iter().map(|e| e.to_string()).collect();
        writeln!(s, "{}", parts.join(",")).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digraph_round_trip() {
        let d = parse_digraph("digraph 3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(d, Digraph::cycle(3));
        assert_eq!(parse_digraph(&write_digraph(&d)).unwrap(), d);
    }

    #[test]
    fn comments_and_blank_lines() {
        let d = parse_digraph("# a digon\n\ndigraph 2 2\n0 1\n\n1 0\n").unwrap();
        assert_eq!(d.arc_count(), 2);
    }

    #[test]
    fn malformed_digraphs() {
        assert!(matches!(parse_digraph("graph 3 3\n"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(parse_digraph(""), Err(GraphError::Parse { .. })));
        assert!(matches!(
            parse_digraph("digraph 3 2\n0 1\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            parse_digraph("digraph 3 1\n0 x\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert_eq!(parse_digraph("digraph 2 1\n0 0\n"), Err(GraphError::Loop(0)));
    }

    #[test]
    fn rainbow_round_trip() {
        let text = "rainbow 4 4\n0-1\n0-2,1-2\n0-3,1-3\n2-3\n";
        let inst = parse_rainbow(text).unwrap();
        assert_eq!(inst.p(), 2);
        assert_eq!(write_rainbow(&inst), text);
    }

    #[test]
    fn malformed_rainbow() {
        assert!(parse_rainbow("rainbow 3 1\n0-1,1-2,0-2\n").is_err());
        assert!(parse_rainbow("rainbow 3 1\n0:1\n").is_err());
        assert_eq!(
            parse_rainbow("rainbow 3 1\n1-1\n"),
            Err(GraphError::LoopInFamily(0))
        );
    }
}
