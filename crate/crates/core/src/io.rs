//! File formats for maps and embedded graphs, plus JSON mirrors.
//!
//! The text format lists the rotation at each vertex using edge names with
//! `.0` / `.1` end markers:
//!
//! ```text
//! ribbon v1
//! vertices: 2
//! edges: a b c
//! vertex 0: a.0 b.0 c.0
//! vertex 1: a.1 b.1 c.1
//! isolated: 0
//! marked: a b
//! ```
//!
//! Only the header, `vertices` and the vertex lines are required. A file
//! with `marked` describes an embedded graph whose surface is the one capped
//! by the full map. Edges are indexed in the order of the `edges` line, or
//! by first appearance without one; end `.0` of edge `i` is half-edge `2i`.
//! Lines starting with `#` are comments.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::embed::{EmbedError, EmbeddedGraph};
use crate::laurent::{Coeff, LaurentPoly};
use crate::rgraph::{EdgeSubset, RibbonError, RibbonGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

/// A map with edge names and, for embedded graphs, the marked edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDocument {
    pub graph: RibbonGraph,
    pub names: Vec<String>,
    pub marked: Option<EdgeSubset>,
}

#[derive(Serialize, Deserialize)]
struct JsonMap {
    format: String,
    version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<String>>,
    vertices: Vec<Vec<String>>,
    #[serde(default)]
    isolated: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    marked: Option<Vec<String>>,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Shared builder: rotations given as `(edge name, end)` lists.
fn assemble(
    order: Option<Vec<String>>,
    rotations: Vec<Vec<(String, u8)>>,
    isolated: usize,
    marked: Option<Vec<String>>,
    err: impl Fn(String) -> FormatError,
) -> Result<MapDocument, FormatError> {
    let declared = order.is_some();
    let mut names: Vec<String> = order.unwrap_or_default();
    if let Some(dup) = names
        .iter()
        .enumerate()
        .find(|(i, n)| names[..*i].contains(n))
    {
        return Err(err(format!("edge `{}` declared twice", dup.1)));
    }
    let mut ends_seen: Vec<[bool; 2]> = vec![[false; 2]; names.len()];
    let mut rots: Vec<Vec<usize>> = Vec::new();
    for rot in rotations {
        let mut r = Vec::with_capacity(rot.len());
        for (name, end) in rot {
            let i = match names.iter().position(|n| *n == name) {
                Some(i) => i,
                None if declared => return Err(err(format!("edge `{name}` is not declared"))),
                None => {
                    names.push(name.clone());
                    ends_seen.push([false; 2]);
                    names.len() - 1
                }
            };
            if std::mem::replace(&mut ends_seen[i][end as usize], true) {
                return Err(err(format!("end {name}.{end} appears twice")));
            }
            r.push(2 * i + end as usize);
        }
        rots.push(r);
    }
    if let Some(i) = ends_seen.iter().position(|s| !(s[0] && s[1])) {
        return Err(err(format!("edge `{}` does not have both ends", names[i])));
    }
    let graph = RibbonGraph::from_rotations(&rots)?;
    let graph = graph
        .clone()
        .with_isolated(graph.isolated_vertices() + isolated);
    let marked = marked
        .map(|list| {
            list.iter().try_fold(EdgeSubset::EMPTY, |acc, n| {
                names
                    .iter()
                    .position(|x| x == n)
                    .map(|i| acc.with(i))
                    .ok_or_else(|| FormatError::UnknownEdge(n.clone()))
            })
        })
        .transpose()?;
    Ok(MapDocument {
        graph,
        names,
        marked,
    })
}

fn parse_end(tok: &str) -> Option<(String, u8)> {
    let (name, end) = tok.rsplit_once('.')?;
    let end = match end {
        "0" => 0,
        "1" => 1,
        _ => return None,
    };
    valid_name(name).then(|| (name.to_string(), end))
}

impl MapDocument {
    pub fn new(graph: RibbonGraph) -> Self {
        let names = (0..graph.num_edges()).map(|i| format!("e{i}")).collect();
        MapDocument {
            graph,
            names,
            marked: None,
        }
    }

    pub fn embedded_doc(e: &EmbeddedGraph, names: Vec<String>) -> Self {
        MapDocument {
            graph: e.carrier().clone(),
            names,
            marked: Some(e.marked()),
        }
    }

    /// Parses either format, choosing JSON when the text starts with `{`.
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_text(text)
        }
    }

    pub fn from_text(text: &str) -> Result<Self, FormatError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let syntax = |line: usize, msg: &str| FormatError::Syntax {
            line,
            msg: msg.to_string(),
        };
        match lines.next() {
            Some((_, "ribbon v1")) => {}
            Some((ln, _)) => return Err(syntax(ln, "expected header `ribbon v1`")),
            None => return Err(syntax(1, "empty input")),
        }
        let mut declared: Option<usize> = None;
        let mut rotations: Vec<Vec<(String, u8)>> = Vec::new();
        let mut isolated = 0;
        let mut marked = None;
        let mut order = None;
        let mut last_line = 1;
        for (ln, line) in lines {
            last_line = ln;
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| syntax(ln, "expected `key: value`"))?;
            let key = key.trim();
            let rest = rest.trim();
            if key == "vertices" {
                declared = Some(rest.parse().map_err(|_| syntax(ln, "bad vertex count"))?);
            } else if key == "isolated" {
                isolated = rest.parse().map_err(|_| syntax(ln, "bad isolated count"))?;
            } else if key == "edges" {
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.iter().any(|n| !valid_name(n)) {
                    return Err(syntax(ln, "bad edge name"));
                }
                order = Some(names);
            } else if key == "marked" {
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.iter().any(|n| !valid_name(n)) {
                    return Err(syntax(ln, "bad edge name"));
                }
                marked = Some(names);
            } else if let Some(idx) = key.strip_prefix("vertex ") {
                let idx: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| syntax(ln, "bad vertex index"))?;
                if idx != rotations.len() {
                    return Err(syntax(ln, "vertices must be listed in order from 0"));
                }
                let rot = rest
                    .split_whitespace()
                    .map(|t| {
                        parse_end(t).ok_or_else(|| syntax(ln, &format!("bad half-edge `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                rotations.push(rot);
            } else {
                return Err(syntax(ln, &format!("unknown key `{key}`")));
            }
        }
        match declared {
            None => return Err(syntax(last_line, "missing `vertices:` line")),
            Some(k) if k != rotations.len() => {
                return Err(syntax(
                    last_line,
                    &format!("declared {k} vertices but listed {}", rotations.len()),
                ))
            }
            _ => {}
        }
        assemble(order, rotations, isolated, marked, |msg| {
            FormatError::Syntax {
                line: last_line,
                msg,
            }
        })
    }

    fn rotation_names(&self) -> Vec<Vec<String>> {
        self.graph
            .rotations()
            .iter()
            .map(|rot| {
                rot.iter()
                    .map(|&h| format!("{}.{}", self.names[h / 2], h & 1))
                    .collect()
            })
            .collect()
    }

    fn marked_names(&self) -> Option<Vec<String>> {
        self.marked
            .map(|m| m.iter().map(|i| self.names[i].clone()).collect())
    }

    pub fn to_text(&self) -> String {
        let rots = self.rotation_names();
        let mut s = format!("ribbon v1\nvertices: {}\n", rots.len());
        if !self.names.is_empty() {
            s.push_str(&format!("edges: {}\n", self.names.join(" ")));
        }
        for (i, r) in rots.iter().enumerate() {
            s.push_str(&format!("vertex {i}: {}\n", r.join(" ")));
        }
        if self.graph.isolated_vertices() > 0 {
            s.push_str(&format!("isolated: {}\n", self.graph.isolated_vertices()));
        }
        if let Some(m) = self.marked_names() {
            s.push_str(&format!("marked: {}\n", m.join(" ")).replace(": \n", ":\n"));
        }
        s
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let j: JsonMap =
            serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
        if j.format != "ribbon" || j.version != 1 {
            return Err(FormatError::Json(
                "expected format \"ribbon\", version 1".into(),
            ));
        }
        let rotations = j
            .vertices
            .iter()
            .map(|rot| {
                rot.iter()
                    .map(|t| {
                        parse_end(t)
                            .ok_or_else(|| FormatError::Json(format!("bad half-edge `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        assemble(j.edges, rotations, j.isolated, j.marked, FormatError::Json)
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(JsonMap {
            format: "ribbon".into(),
            version: 1,
            edges: Some(self.names.clone()),
            vertices: self.rotation_names(),
            isolated: self.graph.isolated_vertices(),
            marked: self.marked_names(),
        })
        .expect("serializable")
    }

    pub fn edge_index(&self, name: &str) -> Result<usize, FormatError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| FormatError::UnknownEdge(name.to_string()))
    }

    /// The document as an embedded graph; unmarked documents are cellular.
    pub fn embedded(&self) -> Result<EmbeddedGraph, EmbedError> {
        EmbeddedGraph::new(
            self.graph.clone(),
            self.marked.unwrap_or(self.graph.all_edges()),
        )
    }

    pub fn is_cellular(&self) -> bool {
        self.marked.is_none_or(|m| m == self.graph.all_edges())
    }

    /// Embedded deletion: same surface, one fewer marked edge.
    pub fn delete_embedded(&self, name: &str) -> Result<MapDocument, EditError> {
        let e = self.edge_index(name)?;
        let emb = self.embedded()?.delete_embedded(e)?;
        Ok(MapDocument::embedded_doc(&emb, self.names.clone()))
    }

    /// Ribbon deletion; the result is a map on its own surface.
    pub fn delete_ribbon(&self, name: &str) -> Result<MapDocument, EditError> {
        let e = self.require_cellular(name)?;
        let mut names = self.names.clone();
        names.remove(e);
        Ok(MapDocument {
            graph: self.graph.delete_ribbon(e)?,
            names,
            marked: None,
        })
    }

    pub fn contract(&self, name: &str) -> Result<MapDocument, EditError> {
        let e = self.require_cellular(name)?;
        let mut names = self.names.clone();
        names.remove(e);
        Ok(MapDocument {
            graph: self.graph.contract(e)?,
            names,
            marked: None,
        })
    }

    fn require_cellular(&self, name: &str) -> Result<usize, EditError> {
        let e = self.edge_index(name)?;
        if !self.is_cellular() {
            return Err(EditError::Embed(EmbedError::NotCellular));
        }
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EditError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

/// `{vars, terms: [{exps, coeff}], text}` with terms in canonical order.
pub fn poly_json<C: Coeff>(p: &LaurentPoly<C>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(exps, c)| {
            let text = c.to_string();
            let coeff = text
                .parse::<i64>()
                .map(Value::from)
                .unwrap_or(Value::String(text));
            json!({ "exps": exps, "coeff": coeff })
        })
        .collect();
    json!({
        "vars": p.vars().names(),
        "terms": terms,
        "text": p.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const THETA: &str = "ribbon v1\nvertices: 2\nvertex 0: a.0 b.0 c.0\nvertex 1: a.1 b.1 c.1\n";

    #[test]
    fn parses_theta() {
        let d = MapDocument::parse(THETA).unwrap();
        assert_eq!(d.graph, catalog::theta_torus());
        assert_eq!(d.names, vec!["a", "b", "c"]);
        assert_eq!(d.marked, None);
        assert_eq!(
            d.to_text(),
            "ribbon v1\nvertices: 2\nedges: a b c\nvertex 0: a.0 b.0 c.0\nvertex 1: a.1 b.1 c.1\n"
        );
    }

    #[test]
    fn json_mirror() {
        let d = MapDocument::parse(THETA).unwrap();
        let j = d.to_json_value().to_string();
        assert_eq!(MapDocument::parse(&j).unwrap(), d);
    }

    #[test]
    fn marked_and_isolated() {
        let text = "ribbon v1\n# comment\nvertices: 2\nvertex 0: a.0 b.0 c.0\nvertex 1: a.1 b.1 c.1\nisolated: 2\nmarked: a b\n";
        let d = MapDocument::parse(text).unwrap();
        assert_eq!(d.graph.isolated_vertices(), 2);
        assert_eq!(d.marked, Some(EdgeSubset(0b011)));
        assert!(!d.is_cellular());
        let back = MapDocument::parse(&d.to_text()).unwrap();
        assert_eq!(back, d);
        let empty_marks = MapDocument {
            marked: Some(EdgeSubset::EMPTY),
            ..d
        };
        assert!(empty_marks.to_text().ends_with("marked:\n"));
        assert_eq!(
            MapDocument::parse(&empty_marks.to_text()).unwrap(),
            empty_marks
        );
    }

    #[test]
    fn declared_edge_order_wins() {
        let d =
            MapDocument::parse("ribbon v1\nvertices: 1\nedges: b a\nvertex 0: a.0 b.0 a.1 b.1\n")
                .unwrap();
        assert_eq!(d.names, vec!["b", "a"]);
        assert_eq!(d.graph.rotations(), vec![vec![0, 3, 1, 2]]);
    }

    #[test]
    fn empty_vertex_line_is_isolated() {
        let d = MapDocument::parse("ribbon v1\nvertices: 1\nvertex 0:\n").unwrap();
        assert_eq!(d.graph, RibbonGraph::empty(1));
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            "",
            "ribbon v2\nvertices: 0\n",
            "ribbon v1\nvertex 0: a.0 a.1\n",
            "ribbon v1\nvertices: 2\nvertex 0: a.0 a.1\n",
            "ribbon v1\nvertices: 1\nvertex 0: a.0\n",
            "ribbon v1\nvertices: 1\nvertex 0: a.0 a.0\n",
            "ribbon v1\nvertices: 1\nvertex 0: a.2 a.1\n",
            "ribbon v1\nvertices: 1\nvertex 1: a.0 a.1\n",
            "ribbon v1\nvertices: 1\nvertex 0: a.0 a.1\ncolour: red\n",
            "ribbon v1\nvertices: 1\nedges: a\nvertex 0: a.0 b.0 a.1 b.1\n",
            "ribbon v1\nvertices: 1\nedges: a b a\nvertex 0: a.0 b.0 a.1 b.1\n",
            "ribbon v1\nvertices: 1\nedges: a b\nvertex 0: a.0 a.1\n",
        ];
        for text in bad {
            assert!(
                matches!(MapDocument::parse(text), Err(FormatError::Syntax { .. })),
                "{text:?}"
            );
        }
        assert_eq!(
            MapDocument::parse("ribbon v1\nvertices: 1\nvertex 0: a.0 a.1\nmarked: q\n"),
            Err(FormatError::UnknownEdge("q".into()))
        );
        assert!(matches!(
            MapDocument::parse("{\"format\":1}"),
            Err(FormatError::Json(_))
        ));
    }

    #[test]
    fn edits_track_names() {
        let d = MapDocument::parse(THETA).unwrap();
        let c = d.contract("c").unwrap();
        assert_eq!(c.names, vec!["a", "b"]);
        assert!(c.graph.is_isomorphic(&catalog::two_loop_torus()));
        let r = d.delete_ribbon("c").unwrap();
        assert_eq!(r.graph.genus(), 0);
        let e = d.delete_embedded("c").unwrap();
        assert_eq!(e.graph, d.graph);
        assert_eq!(e.marked, Some(EdgeSubset(0b011)));
        assert!(matches!(
            e.contract("a"),
            Err(EditError::Embed(EmbedError::NotCellular))
        ));
        assert!(matches!(
            d.contract("zz"),
            Err(EditError::Format(FormatError::UnknownEdge(_)))
        ));
    }

    #[test]
    fn polynomial_json() {
        let p = crate::Poly::parse("z^2+2*z+1", &crate::VarSet::las_vergnas()).unwrap();
        let v = poly_json(&p);
        assert_eq!(v["text"], "z^2+2*z+1");
        assert_eq!(v["vars"], json!(["x", "y", "z"]));
        assert_eq!(v["terms"][1], json!({"exps": [0, 0, 1], "coeff": 2}));
    }
}
