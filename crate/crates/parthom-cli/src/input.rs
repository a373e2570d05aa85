//! The line-oriented input format: one declaration per line, `#`
//! comments, paths written as a vertex name or dot-joined edge names
//! in range-to-source order.
//!
//! ```text
//! version 1
//! vertex v
//! edge e v v
//! gen a
//! rule a v -> e
//! ```
//!
//! A file carries a graph and at most one dynamical section: either
//! generators with their rules or `maprule` pieces of a one-sided
//! prefix-replacement map.

use std::collections::HashSet;
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use parthom_core::action::PartialAction;
use parthom_core::dr::DRSystem;
use parthom_core::graph::{Graph, Path};
use parthom_core::prefix::PrefixMap;

/// A parsed input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub graph: Arc<Graph>,
    pub payload: Payload,
}

/// The dynamical section of a file, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    GraphOnly,
    Action(Arc<PartialAction>),
    Map(DRSystem),
}

/// A parse failure, always tied to an input line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn check_name(line: usize, name: &str, names: &HashSet<String>) -> Result<(), ParseError> {
    if name.contains('.') || name.contains("->") || name == "1" {
        return Err(ParseError::new(line, format!("invalid name '{name}'")));
    }
    if names.contains(name) {
        return Err(ParseError::new(line, format!("duplicate name '{name}'")));
    }
    Ok(())
}

/// Splits `SRC -> DST` out of the tail of a declaration line.
fn arrow_pair<'a>(line: usize, tokens: &[&'a str]) -> Result<(&'a str, &'a str), ParseError> {
    match tokens {
        [src, "->", dst] => Ok((src, dst)),
        _ => Err(ParseError::new(line, "expected `SRC -> DST`")),
    }
}

pub fn parse(text: &str) -> Result<InputDocument, ParseError> {
    let mut version_seen = false;
    let mut names: HashSet<String> = HashSet::new();
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_set: HashSet<String> = HashSet::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut gens: Vec<String> = Vec::new();
    let mut gen_set: HashSet<String> = HashSet::new();
    let mut rules: Vec<(usize, String, String, String)> = Vec::new();
    let mut map_rules: Vec<(usize, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !version_seen {
            if tokens != ["version", "1"] {
                return Err(ParseError::new(line, "expected `version 1` first"));
            }
            version_seen = true;
            continue;
        }
        match tokens[0] {
            "version" => {
                return Err(ParseError::new(line, "duplicate version line"));
            }
            "vertex" => {
                if tokens.len() < 2 {
                    return Err(ParseError::new(line, "vertex needs at least one name"));
                }
                for &name in &tokens[1..] {
                    check_name(line, name, &names)?;
                    names.insert(name.to_string());
                    vertex_set.insert(name.to_string());
                    vertices.push(name.to_string());
                }
            }
            "edge" => {
                let [_, name, range, source] = tokens[..] else {
                    return Err(ParseError::new(line, "expected `edge NAME RANGE SOURCE`"));
                };
                check_name(line, name, &names)?;
                for v in [range, source] {
                    if !vertex_set.contains(v) {
                        return Err(ParseError::new(line, format!("unknown vertex '{v}'")));
                    }
                }
                names.insert(name.to_string());
                edges.push((name.to_string(), range.to_string(), source.to_string()));
            }
            "gen" => {
                let [_, name] = tokens[..] else {
                    return Err(ParseError::new(line, "expected `gen NAME`"));
                };
                if !map_rules.is_empty() {
                    return Err(ParseError::new(line, "cannot mix gen with maprule"));
                }
                check_name(line, name, &names)?;
                names.insert(name.to_string());
                gen_set.insert(name.to_string());
                gens.push(name.to_string());
            }
            "rule" => {
                if tokens.len() < 2 {
                    return Err(ParseError::new(line, "expected `rule GEN SRC -> DST`"));
                }
                let gen = tokens[1];
                if !gen_set.contains(gen) {
                    return Err(ParseError::new(line, format!("unknown generator '{gen}'")));
                }
                let tail = if tokens.get(2) == Some(&":") { &tokens[3..] } else { &tokens[2..] };
                let (src, dst) = arrow_pair(line, tail)?;
                rules.push((line, gen.to_string(), src.to_string(), dst.to_string()));
            }
            "maprule" => {
                if !gens.is_empty() {
                    return Err(ParseError::new(line, "cannot mix maprule with gen"));
                }
                let (src, dst) = arrow_pair(line, &tokens[1..])?;
                map_rules.push((line, src.to_string(), dst.to_string()));
            }
            other => {
                return Err(ParseError::new(line, format!("unknown declaration '{other}'")));
            }
        }
    }
    if !version_seen {
        return Err(ParseError::new(1, "expected `version 1` first"));
    }

    let graph = Arc::new(Graph::new(&vertices, &edges).expect("declarations were validated"));

    let resolve = |line: usize, token: &str| -> Result<Path, ParseError> {
        graph.parse_path(token).map_err(|e| ParseError::new(line, e.to_string()))
    };
    let endpoints = |line: usize, src: &Path, dst: &Path| -> Result<(), ParseError> {
        if graph.path_source(src) != graph.path_source(dst) {
            return Err(ParseError::new(
                line,
                format!(
                    "endpoint mismatch: s({}) != s({})",
                    graph.path_string(src),
                    graph.path_string(dst)
                ),
            ));
        }
        Ok(())
    };

    if !map_rules.is_empty() {
        let mut pieces: Vec<(Path, Path)> = Vec::new();
        for (line, src_tok, dst_tok) in &map_rules {
            let src = resolve(*line, src_tok)?;
            let dst = resolve(*line, dst_tok)?;
            endpoints(*line, &src, &dst)?;
            if let Some((prev, _)) = pieces.iter().find(|(p, _)| p.comparable(&src)) {
                return Err(ParseError::new(
                    *line,
                    format!(
                        "source {} overlaps earlier source {}",
                        graph.path_string(&src),
                        graph.path_string(prev)
                    ),
                ));
            }
            pieces.push((src, dst));
        }
        let sys = DRSystem::new(&graph, pieces).expect("pieces were validated");
        return Ok(InputDocument { graph, payload: Payload::Map(sys) });
    }

    if gens.is_empty() {
        return Ok(InputDocument { graph, payload: Payload::GraphOnly });
    }

    let mut tables: Vec<Vec<(Path, Path)>> = vec![Vec::new(); gens.len()];
    for (line, gen, src_tok, dst_tok) in &rules {
        let g = gens.iter().position(|n| n == gen).expect("rule generators were checked");
        let src = resolve(*line, src_tok)?;
        let dst = resolve(*line, dst_tok)?;
        endpoints(*line, &src, &dst)?;
        for (prev_src, prev_dst) in &tables[g] {
            if prev_src.comparable(&src) {
                return Err(ParseError::new(
                    *line,
                    format!(
                        "source {} overlaps earlier source {} for generator {gen}",
                        graph.path_string(&src),
                        graph.path_string(prev_src)
                    ),
                ));
            }
            if prev_dst.comparable(&dst) {
                return Err(ParseError::new(
                    *line,
                    format!(
                        "target {} overlaps earlier target {} for generator {gen}",
                        graph.path_string(&dst),
                        graph.path_string(prev_dst)
                    ),
                ));
            }
        }
        tables[g].push((src, dst));
    }
    let named: Vec<(&str, PrefixMap)> = gens
        .iter()
        .zip(tables)
        .map(|(name, table)| {
            let map = PrefixMap::from_rules(&graph, table).expect("rules were validated");
            (name.as_str(), map)
        })
        .collect();
    let action =
        Arc::new(PartialAction::new(&graph, named).expect("declarations were validated"));
    Ok(InputDocument { graph, payload: Payload::Action(action) })
}

/// Pretty-prints a document in the canonical form that `parse`
/// round-trips.
#[cfg_attr(not(test), allow(dead_code))]
pub fn print(doc: &InputDocument) -> String {
    let g = &doc.graph;
    let mut out = String::from("version 1\n");
    for v in g.vertex_ids() {
        let _ = writeln!(out, "vertex {}", g.vertex_name(v));
    }
    for e in g.edge_ids() {
        let _ = writeln!(
            out,
            "edge {} {} {}",
            g.edge_name(e),
            g.vertex_name(g.range(e)),
            g.vertex_name(g.source(e))
        );
    }
    match &doc.payload {
        Payload::GraphOnly => {}
        Payload::Action(act) => {
            for a in act.generator_ids() {
                let _ = writeln!(out, "gen {}", act.generator_name(a));
            }
            for a in act.generator_ids() {
                for (src, dst) in act.theta(a).rules() {
                    let _ = writeln!(
                        out,
                        "rule {} {} -> {}",
                        act.generator_name(a),
                        g.path_string(src),
                        g.path_string(dst)
                    );
                }
            }
        }
        Payload::Map(sys) => {
            for (src, dst) in sys.pieces() {
                let _ =
                    writeln!(out, "maprule {} -> {}", g.path_string(src), g.path_string(dst));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A1: &str = "version 1\nvertex v\nedge e v v\nedge f v v\ngen a\ngen b\nrule a v -> e\nrule b v -> f\n";

    #[test]
    fn parses_an_action_document() {
        let doc = parse(A1).unwrap();
        assert_eq!(doc.graph.vertex_count(), 1);
        assert_eq!(doc.graph.edge_count(), 2);
        let Payload::Action(act) = &doc.payload else { panic!("expected an action") };
        assert_eq!(act.generator_count(), 2);
        let a = act.generator("a").unwrap();
        assert_eq!(act.theta(a).to_string(), "{v -> e}");
    }

    #[test]
    fn accepts_a_colon_after_the_generator() {
        let with = A1.replace("rule a v -> e", "rule a : v -> e");
        assert_eq!(parse(&with).unwrap(), parse(A1).unwrap());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let noisy = "# header\n\nversion 1   # tag\nvertex v # the only vertex\n\nedge e v v\nedge f v v\ngen a\nrule a v -> e # into e\n";
        let doc = parse(noisy).unwrap();
        assert_eq!(doc.graph.edge_count(), 2);
    }

    #[test]
    fn parses_a_map_document() {
        let text = "version 1\nvertex v\nedge e v v\nedge f v v\nmaprule e -> v\nmaprule f -> v\n";
        let doc = parse(text).unwrap();
        let Payload::Map(sys) = &doc.payload else { panic!("expected a map") };
        assert_eq!(sys.piece_count(), 2);
    }

    #[test]
    fn multi_name_vertex_lines_flatten() {
        let text = "version 1\nvertex u w\nedge e u w\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.graph.vertex_count(), 2);
        assert_eq!(doc.payload, Payload::GraphOnly);
    }

    #[test]
    fn print_then_parse_is_the_identity() {
        let docs = [
            A1.to_string(),
            "version 1\nvertex u w\nedge e u w\nmaprule e -> w\n".to_string(),
            "version 1\nvertex v\n".to_string(),
            "version 1\nvertex v\nedge e v v\nedge f v v\ngen a\nrule a e -> f.e\n".to_string(),
        ];
        for text in docs {
            let doc = parse(&text).unwrap();
            let printed = print(&doc);
            assert_eq!(parse(&printed).unwrap(), doc);
            assert_eq!(print(&parse(&printed).unwrap()), printed);
        }
    }

    #[test]
    fn error_lines_are_reported() {
        let cases: [(&str, usize, &str); 10] = [
            ("vertex v\n", 1, "expected `version 1` first"),
            ("version 1\nversion 1\n", 2, "duplicate version line"),
            ("version 1\nvertex v\nedge e v w\n", 3, "unknown vertex 'w'"),
            ("version 1\nvertex v\nvertex v\n", 3, "duplicate name 'v'"),
            ("version 1\nvertex v\nedge v v v\n", 3, "duplicate name 'v'"),
            ("version 1\nvertex v\nrule a v -> v\n", 3, "unknown generator 'a'"),
            ("version 1\nvertex v\ngen a\nmaprule v -> v\n", 4, "cannot mix maprule with gen"),
            ("version 1\nvertex v\nwidget v\n", 3, "unknown declaration 'widget'"),
            ("version 1\nvertex v\ngen a\nrule a v v\n", 4, "expected `SRC -> DST`"),
            ("version 1\nvertex v\nedge e v v\ngen a\nrule a v -> e\nrule a e -> v\n", 6,
             "source e overlaps earlier source v for generator a"),
        ];
        for (text, line, message) in cases {
            let err = parse(text).unwrap_err();
            assert_eq!((err.line, err.message.as_str()), (line, message), "for {text:?}");
        }
    }

    #[test]
    fn path_errors_carry_their_line() {
        let err = parse("version 1\nvertex v\nedge e v v\ngen a\nrule a v -> g\n").unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.message.contains("g"), "{}", err.message);
        let err = parse("version 1\nvertex u w\nedge e u w\ngen a\nrule a u -> e\n").unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.message.contains("endpoint mismatch"), "{}", err.message);
    }
}
