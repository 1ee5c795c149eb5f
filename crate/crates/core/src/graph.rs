//! Directed edge-labeled graphs: parsing, validation and the purely
//! combinatorial quantities (neighbourhoods, label degrees, the set of
//! vertices whose neighbours all see a repeated label, colorings, paths).
//!
//! Vertices are kept in declaration order and labels in order of first
//! appearance; every matrix built from a graph uses this ordering.
//!
//! # Text format
//!
//! ```text
//! #nonsimple            % optional: permits loops
//! #allow-disconnected   % optional: skips the connectivity check
//! vertex v1             % optional explicit declarations
//! v1 v2 Z1              % TAIL HEAD LABEL
//! ```
//!
//! Once any `vertex` line is present, every edge endpoint must be declared.
//! Without declarations, vertices are introduced by the edges that mention
//! them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Label(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_string())
    }
}

/// An edge, by vertex and label index into its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub label: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(&self, v: usize) -> Option<usize> {
        if self.tail == v {
            Some(self.head)
        } else if self.head == v {
            Some(self.tail)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDigraph {
    vertices: Vec<VertexId>,
    labels: Vec<Label>,
    edges: Vec<Edge>,
    nonsimple: bool,
    allow_disconnected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphDiagnostics {
    pub connected: bool,
    pub simple: bool,
    pub schreier: bool,
    pub max_degree: usize,
    pub degree_map: BTreeMap<String, usize>,
}

/// Parameters of a uniform coloring: `p` labels, `q` vertices, each label
/// used `r` times, every vertex of degree `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UniformParams {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
}

/// A maximal monochromatic path, listed from one endpoint to the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SameLabeledPath {
    pub label: Label,
    pub vertices: Vec<VertexId>,
}

impl SameLabeledPath {
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Incremental construction with the same validation as the parser.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<VertexId>,
    index: HashMap<String, usize>,
    labels: Vec<Label>,
    label_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    nonsimple: bool,
    allow_disconnected: bool,
    explicit: bool,
}

fn valid_token(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | ',' | '-'))
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn nonsimple(mut self, yes: bool) -> Self {
        self.nonsimple = yes;
        self
    }

    pub fn allow_disconnected(mut self, yes: bool) -> Self {
        self.allow_disconnected = yes;
        self
    }

    fn declare(&mut self, name: &str, line: usize) -> Result<usize> {
        if !valid_token(name) {
            return Err(Error::Syntax {
                line,
                message: format!("invalid vertex name `{name}`"),
            });
        }
        if self.index.contains_key(name) {
            return Err(Error::DuplicateVertex {
                line,
                name: name.into(),
            });
        }
        let i = self.vertices.len();
        self.vertices.push(VertexId(name.into()));
        self.index.insert(name.into(), i);
        Ok(i)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        self.explicit = true;
        self.declare(name, 0)
    }

    fn vertex_for_edge(&mut self, name: &str, line: usize) -> Result<usize> {
        match self.index.get(name) {
            Some(&i) => Ok(i),
            None if self.explicit => Err(Error::UndeclaredVertex {
                line,
                name: name.into(),
            }),
            None => self.declare(name, line),
        }
    }

    pub fn add_edge(&mut self, tail: &str, head: &str, label: &str) -> Result<()> {
        self.add_edge_at(tail, head, label, 0)
    }

    fn add_edge_at(&mut self, tail: &str, head: &str, label: &str, line: usize) -> Result<()> {
        if !valid_token(label) {
            return Err(Error::Syntax {
                line,
                message: format!("invalid label `{label}`"),
            });
        }
        if tail == head && !self.nonsimple {
            return Err(Error::LoopNotAllowed {
                line,
                vertex: tail.into(),
            });
        }
        let t = self.vertex_for_edge(tail, line)?;
        let h = self.vertex_for_edge(head, line)?;
        let l = match self.label_index.get(label) {
            Some(&l) => l,
            None => {
                let l = self.labels.len();
                self.labels.push(Label(label.into()));
                self.label_index.insert(label.into(), l);
                l
            }
        };
        let e = Edge {
            tail: t,
            head: h,
            label: l,
        };
        if self.edges.contains(&e) {
            return Err(Error::DuplicateEdge {
                line,
                tail: tail.into(),
                head: head.into(),
                label: label.into(),
            });
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn build(self) -> Result<LabeledDigraph> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let g = LabeledDigraph {
            vertices: self.vertices,
            labels: self.labels,
            edges: self.edges,
            nonsimple: self.nonsimple,
            allow_disconnected: self.allow_disconnected,
        };
        if !g.allow_disconnected {
            let comps = g.component_count();
            if comps > 1 {
                return Err(Error::Disconnected { components: comps });
            }
        }
        Ok(g)
    }
}

/// Parses the line-oriented graph format.
pub fn parse_graph(text: &str) -> Result<LabeledDigraph> {
    let mut b = GraphBuilder::new();
    let mut body_started = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('%').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(header) = content.strip_prefix('#') {
            if body_started {
                return Err(Error::Syntax {
                    line,
                    message: "header lines must precede vertices and edges".into(),
                });
            }
            match header.trim() {
                "nonsimple" => b.nonsimple = true,
                "allow-disconnected" => b.allow_disconnected = true,
                other => {
                    return Err(Error::Syntax {
                        line,
                        message: format!("unknown header `#{other}`"),
                    })
                }
            }
            continue;
        }
        body_started = true;
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", name] => {
                b.explicit = true;
                b.declare(name, line)?;
            }
            ["vertex", ..] => {
                return Err(Error::Syntax {
                    line,
                    message: "expected `vertex NAME`".into(),
                })
            }
            [tail, head, label] => b.add_edge_at(tail, head, label, line)?,
            _ => {
                return Err(Error::Syntax {
                    line,
                    message: format!("expected `TAIL HEAD LABEL`, found {} tokens", tokens.len()),
                })
            }
        }
    }
    b.build()
}

impl LabeledDigraph {
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_nonsimple_flagged(&self) -> bool {
        self.nonsimple
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|x| x.0 == v)
            .ok_or_else(|| Error::UnknownVertex(v.into()))
    }

    pub fn label_index(&self, z: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|x| x.0 == z)
            .ok_or_else(|| Error::UnknownLabel(z.into()))
    }

    /// Canonical text form; [`parse_graph`] inverts it exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if self.nonsimple {
            out.push_str("#nonsimple\n");
        }
        if self.allow_disconnected {
            out.push_str("#allow-disconnected\n");
        }
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "{} {} {}\n",
                self.vertices[e.tail], self.vertices[e.head], self.labels[e.label]
            ));
        }
        out
    }

    /// Graphviz rendering, for looking at a graph only.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.vertices[e.tail], self.vertices[e.head], self.labels[e.label]
            ));
        }
        out.push_str("}\n");
        out
    }

    fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = n;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// No loops and at most one edge between any two vertices.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for e in &self.edges {
            if e.is_loop() {
                return false;
            }
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            if !seen.insert(key) {
                return false;
            }
        }
        true
    }

    fn require_simple(&self) -> Result<()> {
        if self.is_simple() {
            Ok(())
        } else {
            Err(Error::NonSimpleGraph)
        }
    }

    /// Undirected degree; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.tail == v) as usize + (e.head == v) as usize)
            .sum()
    }

    pub fn diagnostics(&self) -> GraphDiagnostics {
        let degrees: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        GraphDiagnostics {
            connected: self.is_connected(),
            simple: self.is_simple(),
            schreier: self.is_schreier(),
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            degree_map: self
                .vertices
                .iter()
                .zip(&degrees)
                .map(|(v, &d)| (v.0.clone(), d))
                .collect(),
        }
    }

    /// Every vertex has exactly one outgoing and one incoming edge of each
    /// label (a loop fills both slots).
    pub fn is_schreier(&self) -> bool {
        self.schreier_violation().is_none()
    }

    pub(crate) fn schreier_violation(&self) -> Option<String> {
        let (n, p) = (self.vertex_count(), self.label_count());
        if p == 0 {
            return Some("graph has no edges".into());
        }
        let mut outs = vec![0usize; n * p];
        let mut ins = vec![0usize; n * p];
        for e in &self.edges {
            outs[e.tail * p + e.label] += 1;
            ins[e.head * p + e.label] += 1;
        }
        for v in 0..n {
            for l in 0..p {
                if outs[v * p + l] != 1 || ins[v * p + l] != 1 {
                    return Some(format!(
                        "vertex {} has {} outgoing and {} incoming {} edges",
                        self.vertices[v],
                        outs[v * p + l],
                        ins[v * p + l],
                        self.labels[l]
                    ));
                }
            }
        }
        None
    }

    fn neighbors_idx(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .filter_map(|e| e.other(v))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn z_neighbors_idx(&self, v: usize, z: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| e.label == z && !e.is_loop())
            .filter_map(|e| e.other(v))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Adjacent vertices ignoring direction; loops are excluded.
    pub fn neighborhood(&self, v: &str) -> Result<Vec<VertexId>> {
        let i = self.vertex_index(v)?;
        Ok(self.names(&self.neighbors_idx(i)))
    }

    /// Neighbours joined to `v` by at least one edge labeled `z`.
    pub fn z_neighborhood(&self, v: &str, z: &str) -> Result<Vec<VertexId>> {
        let i = self.vertex_index(v)?;
        let l = self.label_index(z)?;
        Ok(self.names(&self.z_neighbors_idx(i, l)))
    }

    pub fn edge_label_degree(&self, v: &str, z: &str) -> Result<usize> {
        let i = self.vertex_index(v)?;
        let l = self.label_index(z)?;
        Ok(self.z_neighbors_idx(i, l).len())
    }

    pub(crate) fn label_degree_idx(&self, v: usize, z: usize) -> usize {
        self.z_neighbors_idx(v, z).len()
    }

    fn names(&self, idx: &[usize]) -> Vec<VertexId> {
        idx.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// The label on the unique edge between `a` and `b` of a simple graph.
    fn label_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .find(|e| (e.tail == a && e.head == b) || (e.tail == b && e.head == a))
            .map(|e| e.label)
    }

    /// Vertices `v` such that each neighbour `y` has label degree greater than
    /// one for the label on the edge `vy`.
    pub fn script_a(&self) -> Result<Vec<VertexId>> {
        Ok(self.names(&self.script_a_idx()?))
    }

    pub fn script_a_idx(&self) -> Result<Vec<usize>> {
        self.require_simple()?;
        Ok((0..self.vertex_count())
            .filter(|&v| {
                self.neighbors_idx(v).into_iter().all(|y| {
                    let z = self.label_between(v, y).expect("adjacent vertices share an edge");
                    self.label_degree_idx(y, z) > 1
                })
            })
            .collect())
    }

    /// No two edges sharing a vertex carry the same label.
    pub fn is_proper_coloring(&self) -> Result<bool> {
        self.require_simple()?;
        Ok(self.proper_unchecked())
    }

    fn proper_unchecked(&self) -> bool {
        (0..self.vertex_count()).all(|v| {
            let mut seen = vec![false; self.label_count()];
            self.edges
                .iter()
                .filter(|e| e.tail == v || e.head == v)
                .all(|e| !std::mem::replace(&mut seen[e.label], true))
        })
    }

    pub fn uniform_coloring_check(&self) -> Option<UniformParams> {
        if !self.is_simple() || !self.proper_unchecked() {
            return None;
        }
        let s = self.degree(0);
        if s == 0 || (0..self.vertex_count()).any(|v| self.degree(v) != s) {
            return None;
        }
        let p = self.label_count();
        let mut uses = vec![0usize; p];
        for e in &self.edges {
            uses[e.label] += 1;
        }
        let r = uses[0];
        if uses.iter().any(|&u| u != r) {
            return None;
        }
        Some(UniformParams {
            p,
            q: self.vertex_count(),
            r,
            s,
        })
    }

    /// The subgraph formed by the edges labeled `z` and their endpoints.
    /// Connectivity is not required of the result.
    pub fn induced_label_subgraph(&self, z: &str) -> Result<LabeledDigraph> {
        let l = self.label_index(z)?;
        let mut used = vec![false; self.vertex_count()];
        for e in self.edges.iter().filter(|e| e.label == l) {
            used[e.tail] = true;
            used[e.head] = true;
        }
        let mut b = GraphBuilder::new()
            .nonsimple(self.nonsimple)
            .allow_disconnected(true);
        for (v, name) in self.vertices.iter().enumerate() {
            if used[v] {
                b.add_vertex(&name.0)?;
            }
        }
        for e in self.edges.iter().filter(|e| e.label == l) {
            b.add_edge(&self.vertices[e.tail].0, &self.vertices[e.head].0, z)?;
        }
        b.build()
    }

    /// All maximal same-labeled paths, label by label in canonical order.
    /// Fails with [`Error::AmbiguousPath`] when some label induces a vertex of
    /// label degree three or more, or a closed cycle.
    pub fn same_labeled_paths(&self) -> Result<Vec<SameLabeledPath>> {
        self.require_simple()?;
        let mut out = Vec::new();
        for l in 0..self.label_count() {
            let adj: Vec<Vec<usize>> = (0..self.vertex_count())
                .map(|v| self.z_neighbors_idx(v, l))
                .collect();
            let ambiguous = |v: usize| Error::AmbiguousPath {
                label: self.labels[l].0.clone(),
                vertex: self.vertices[v].0.clone(),
            };
            if let Some(v) = (0..self.vertex_count()).find(|&v| adj[v].len() >= 3) {
                return Err(ambiguous(v));
            }
            let mut visited = vec![false; self.vertex_count()];
            for start in 0..self.vertex_count() {
                if visited[start] || adj[start].len() != 1 {
                    continue;
                }
                let mut path = vec![start];
                visited[start] = true;
                let (mut prev, mut cur) = (start, adj[start][0]);
                loop {
                    path.push(cur);
                    visited[cur] = true;
                    match adj[cur].iter().find(|&&w| w != prev) {
                        Some(&next) => {
                            prev = cur;
                            cur = next;
                        }
                        None => break,
                    }
                }
                out.push(SameLabeledPath {
                    label: self.labels[l].clone(),
                    vertices: self.names(&path),
                });
            }
            // anything left with label degree 2 lies on a closed cycle
            if let Some(v) = (0..self.vertex_count()).find(|&v| !visited[v] && adj[v].len() == 2) {
                return Err(ambiguous(v));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const THREE_VERTEX: &str = "v1 v2 Z1\nv1 v3 Z2\nv2 v3 Z1\nv3 v2 Z2\n";
    const G1: &str = "v1 v2 Z1\nv2 v3 Z1\nv3 v4 Z1\nv4 v1 Z1\n";
    const G2: &str = "v1 v3 Z1\nv2 v3 Z2\nv3 v4 Z1\nv4 v5 Z1\nv4 v6 Z2\n";
    const SCHREIER5: &str = "#nonsimple\nvertex v1\nvertex v2\nvertex v3\nvertex v4\nvertex v5\n\
        v1 v1 Z1\nv1 v2 Z2\nv2 v3 Z1\nv2 v5 Z2\nv3 v4 Z2\nv3 v5 Z1\nv4 v3 Z2\nv4 v2 Z1\nv5 v1 Z2\nv5 v4 Z1\n";

    fn ids(xs: &[&str]) -> Vec<VertexId> {
        xs.iter().map(|&x| VertexId::from(x)).collect()
    }

    #[test]
    fn parses_three_vertex_graph() {
        let g = parse_graph(THREE_VERTEX).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().len(), 4);
        assert_eq!(g.labels(), &[Label::from("Z1"), Label::from("Z2")]);
        assert!(!g.is_simple());
    }

    #[test]
    fn minimal_graph() {
        let g = parse_graph("a b Z").unwrap();
        assert_eq!(g.vertices(), &ids(&["a", "b"])[..]);
        assert_eq!(g.edges().len(), 1);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_graph("v1 v2 Z1\nv3 v4 Z1"),
            Err(Error::Disconnected { components: 2 })
        );
        assert!(parse_graph("#allow-disconnected\nv1 v2 Z1\nv3 v4 Z1").is_ok());
        assert!(matches!(
            parse_graph("a b Z\na b"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("a b Z\na b Z"),
            Err(Error::DuplicateEdge { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("vertex a\nvertex b\na c Z"),
            Err(Error::UndeclaredVertex { line: 3, .. })
        ));
        assert!(matches!(parse_graph("a a Z"), Err(Error::LoopNotAllowed { line: 1, .. })));
        assert!(matches!(parse_graph("a b Z$"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_graph("a b Z\n#nonsimple"), Err(Error::Syntax { line: 2, .. })));
        assert_eq!(parse_graph("% nothing\n"), Err(Error::EmptyGraph));
    }

    #[test]
    fn comments_and_round_trip() {
        let g = parse_graph("% three vertices\nv1 v2 Z1 % first\nv1 v3 Z2\nv2 v3 Z1\nv3 v2 Z2\n").unwrap();
        let text = g.serialize();
        let h = parse_graph(&text).unwrap();
        assert_eq!(g, h);
        assert_eq!(h.serialize(), text);
        assert!(g.to_dot().contains("\"v3\" -> \"v2\" [label=\"Z2\"]"));
    }

    #[test]
    fn schreier_diagnostics() {
        let d = parse_graph(SCHREIER5).unwrap().diagnostics();
        assert!(d.schreier);
        assert!(d.degree_map.values().all(|&x| x == 4));
        assert_eq!(d.max_degree, 4);
        let star = parse_graph("c a Z\nc b Z\nc d Z").unwrap().diagnostics();
        assert!(!star.schreier);
        let single = parse_graph("#nonsimple\nv v Z1\nv v Z2").unwrap().diagnostics();
        assert!(single.schreier);
        assert_eq!(single.max_degree, 4);
    }

    #[test]
    fn neighborhoods() {
        let g = parse_graph(THREE_VERTEX).unwrap();
        assert_eq!(g.neighborhood("v2").unwrap(), ids(&["v1", "v3"]));
        let p = parse_graph("a b Z").unwrap();
        assert_eq!(p.neighborhood("a").unwrap(), ids(&["b"]));
        let s = parse_graph(SCHREIER5).unwrap();
        assert_eq!(s.neighborhood("v1").unwrap(), ids(&["v2", "v5"]));
        assert_eq!(g.neighborhood("zz"), Err(Error::UnknownVertex("zz".into())));
    }

    #[test]
    fn label_neighborhoods_and_degrees() {
        let g1 = parse_graph(G1).unwrap();
        assert_eq!(g1.z_neighborhood("v1", "Z1").unwrap(), ids(&["v2", "v4"]));
        assert_eq!(g1.edge_label_degree("v1", "Z1").unwrap(), 2);
        let g2 = parse_graph(G2).unwrap();
        assert_eq!(g2.z_neighborhood("v3", "Z2").unwrap(), ids(&["v2"]));
        assert!(g2.z_neighborhood("v1", "Z2").unwrap().is_empty());
        assert_eq!(g2.edge_label_degree("v1", "Z2").unwrap(), 0);
        assert_eq!(g2.edge_label_degree("v1", "Q"), Err(Error::UnknownLabel("Q".into())));
    }

    #[test]
    fn script_a_examples() {
        let g1 = parse_graph(G1).unwrap();
        assert_eq!(g1.script_a().unwrap(), ids(&["v1", "v2", "v3", "v4"]));
        let g2 = parse_graph(G2).unwrap();
        assert_eq!(g2.script_a().unwrap(), ids(&["v1", "v5"]));
        let proper = parse_graph("a b X\nb c Y\nc d X").unwrap();
        assert!(proper.is_proper_coloring().unwrap());
        assert!(proper.script_a().unwrap().is_empty());
        assert_eq!(parse_graph(THREE_VERTEX).unwrap().script_a(), Err(Error::NonSimpleGraph));
    }

    #[test]
    fn colorings() {
        let g1 = parse_graph(G1).unwrap();
        assert!(!g1.is_proper_coloring().unwrap());
        assert!(parse_graph("a b Z").unwrap().is_proper_coloring().unwrap());
        let c8 = parse_graph(
            "v1 v2 Z1\nv2 v3 Z2\nv3 v4 Z3\nv4 v5 Z4\nv5 v6 Z1\nv6 v7 Z2\nv7 v8 Z3\nv8 v1 Z4",
        )
        .unwrap();
        assert_eq!(
            c8.uniform_coloring_check(),
            Some(UniformParams { p: 4, q: 8, r: 2, s: 2 })
        );
        let star = parse_graph("c a X\nc b Y\nc d Z").unwrap();
        assert_eq!(star.uniform_coloring_check(), None);
    }

    #[test]
    fn induced_subgraphs() {
        let c6 = parse_graph("v1 v2 Z1\nv2 v3 Z1\nv3 v4 Z2\nv4 v5 Z2\nv5 v6 Z3\nv6 v1 Z3").unwrap();
        let h = c6.induced_label_subgraph("Z1").unwrap();
        assert_eq!(h.vertices(), &ids(&["v1", "v2", "v3"])[..]);
        assert_eq!(h.edges().len(), 2);
        let g1 = parse_graph(G1).unwrap();
        assert_eq!(g1.induced_label_subgraph("Z1").unwrap().edges().len(), 4);
        let g2 = parse_graph(G2).unwrap();
        let z2 = g2.induced_label_subgraph("Z2").unwrap();
        assert_eq!(z2.edges().len(), 2);
        assert!(!z2.is_connected());
        assert!(g2.induced_label_subgraph("nope").is_err());
    }

    #[test]
    fn same_labeled_paths_examples() {
        let c6 = parse_graph("v1 v2 Z1\nv2 v3 Z1\nv3 v4 Z2\nv4 v5 Z2\nv5 v6 Z3\nv6 v1 Z3").unwrap();
        let paths = c6.same_labeled_paths().unwrap();
        assert_eq!(paths.len(), 3);
        assert!(paths.iter().all(|p| p.len() == 2));
        assert_eq!(paths[2].vertices, ids(&["v1", "v6", "v5"]));

        let c5 = parse_graph("v1 v2 A\nv2 v3 B\nv3 v4 C\nv4 v5 D\nv5 v1 E").unwrap();
        let paths = c5.same_labeled_paths().unwrap();
        assert_eq!(paths.len(), 5);
        assert!(paths.iter().all(|p| p.len() == 1));

        let path = parse_graph("v1 v2 Z\nv2 v3 Z\nv3 v4 Z\nv4 v5 Z").unwrap();
        let paths = path.same_labeled_paths().unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].len(), 4);

        let star = parse_graph("c a Z\nc b Z\nc d Z").unwrap();
        assert!(matches!(star.same_labeled_paths(), Err(Error::AmbiguousPath { .. })));
        let cycle = parse_graph(G1).unwrap();
        assert!(matches!(cycle.same_labeled_paths(), Err(Error::AmbiguousPath { .. })));
    }
}
