//! Defining graphs, their complement and Coxeter graphs, and the join
//! decomposition into a maximal clique factor plus indecomposable factors.
//!
//! Vertices are kept in lexicographic order of their names, so a vertex is
//! identified by its index and comparing indices is comparing names. Every
//! downstream tie-break ("shortlex on vertex names") relies on this.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::GraphError;

/// Largest supported vertex count. Words are stored one byte per letter.
pub const MAX_VERTICES: usize = 255;

/// Index of a vertex in a [`DefiningGraph`].
pub type Vertex = usize;

/// Edge label of a vertex pair. An absent edge in the defining graph is
/// `Infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }

    /// True for labels in {3, 4, ...} and ∞, i.e. the edges of Γ^t.
    pub fn exceeds_two(self) -> bool {
        !matches!(self, Label::Finite(m) if m <= 2)
    }

    /// True for finite labels ≥ 3: edges of Γ whose endpoints do not commute.
    pub fn is_finite_braid(self) -> bool {
        matches!(self, Label::Finite(m) if m >= 3)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Finite(m) => s.serialize_u32(*m),
            Label::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) if s == "inf" => Ok(Label::Infinity),
            Value::Number(n) => n
                .as_u64()
                .and_then(|m| u32::try_from(m).ok())
                .map(Label::Finite)
                .ok_or_else(|| serde::de::Error::custom("label out of range")),
            other => Err(serde::de::Error::custom(format!("bad label {other}"))),
        }
    }
}

/// A finite simple graph with integer edge labels ≥ 2; absent pairs carry ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefiningGraph {
    names: Vec<String>,
    /// Row-major `n × n`; the diagonal holds `Finite(1)`.
    labels: Vec<Label>,
}

impl DefiningGraph {
    /// Builds a graph from vertex names and finite-labelled edges.
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        edges: &[(&str, &str, u32)],
    ) -> Result<Self, GraphError> {
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_owned()).collect();
        let edges: Vec<(String, String, i64)> = edges
            .iter()
            .map(|&(a, b, m)| (a.to_owned(), b.to_owned(), i64::from(m)))
            .collect();
        Self::build(&names, &edges)
    }

    fn build(names: &[String], edges: &[(String, String, i64)]) -> Result<Self, GraphError> {
        if names.is_empty() {
            return Err(GraphError::Empty);
        }
        if names.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                count: names.len(),
                max: MAX_VERTICES,
            });
        }
        let mut seen = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex {
                    location: format!("vertices[{i}]"),
                    name: name.clone(),
                });
            }
        }
        let sorted: Vec<String> = seen.keys().cloned().collect();
        let index: BTreeMap<&str, usize> = sorted
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let n = sorted.len();
        let mut labels = vec![Label::Infinity; n * n];
        for v in 0..n {
            labels[v * n + v] = Label::Finite(1);
        }
        let mut listed = BTreeSet::new();
        for (e, (a, b, m)) in edges.iter().enumerate() {
            let location = format!("edges[{e}]");
            let ia = *index.get(a.as_str()).ok_or_else(|| GraphError::UnknownVertex {
                location: location.clone(),
                name: a.clone(),
            })?;
            let ib = *index.get(b.as_str()).ok_or_else(|| GraphError::UnknownVertex {
                location: location.clone(),
                name: b.clone(),
            })?;
            if ia == ib {
                return Err(GraphError::SelfEdge {
                    location,
                    name: a.clone(),
                });
            }
            if *m < 2 {
                return Err(GraphError::LabelTooSmall { location, label: *m });
            }
            let m = u32::try_from(*m).map_err(|_| GraphError::Shape {
                location: location.clone(),
                message: format!("label {m} is too large"),
            })?;
            if !listed.insert((ia.min(ib), ia.max(ib))) {
                return Err(GraphError::DuplicateEdge {
                    location,
                    a: a.clone(),
                    b: b.clone(),
                });
            }
            labels[ia * n + ib] = Label::Finite(m);
            labels[ib * n + ia] = Label::Finite(m);
        }
        Ok(DefiningGraph {
            names: sorted,
            labels,
        })
    }

    /// Parses the JSON document `{"vertices":[..],"edges":[[a,b,m],..]}`.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| GraphError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let obj = doc.as_object().ok_or_else(|| GraphError::Shape {
            location: "$".into(),
            message: "expected a JSON object".into(),
        })?;
        let vertices = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| GraphError::Shape {
                location: "vertices".into(),
                message: "expected an array of vertex names".into(),
            })?;
        let mut names = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            let name = v.as_str().ok_or_else(|| GraphError::Shape {
                location: format!("vertices[{i}]"),
                message: "vertex name must be a string".into(),
            })?;
            names.push(name.to_owned());
        }
        let edges = match obj.get("edges") {
            None => &[][..],
            Some(Value::Array(a)) => a.as_slice(),
            Some(_) => {
                return Err(GraphError::Shape {
                    location: "edges".into(),
                    message: "expected an array of [u, v, label] triples".into(),
                })
            }
        };
        let mut triples = Vec::with_capacity(edges.len());
        for (e, item) in edges.iter().enumerate() {
            let location = format!("edges[{e}]");
            let parts = item
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| GraphError::Shape {
                    location: location.clone(),
                    message: "expected a [u, v, label] triple".into(),
                })?;
            let end = |k: usize| {
                parts[k]
                    .as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| GraphError::Shape {
                        location: format!("{location}[{k}]"),
                        message: "edge endpoint must be a vertex name".into(),
                    })
            };
            let (a, b) = (end(0)?, end(1)?);
            let m = parts[2].as_i64().ok_or_else(|| GraphError::NonIntegerLabel {
                location: location.clone(),
                found: parts[2].to_string(),
            })?;
            triples.push((a, b, m));
        }
        Self::build(&names, &triples)
    }

    /// Serializes back to the input document format (finite labels only).
    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .pairs()
            .filter_map(|(u, v)| {
                self.label(u, v)
                    .finite()
                    .map(|m| serde_json::json!([self.name(u), self.name(v), m]))
            })
            .collect();
        serde_json::json!({ "vertices": self.names, "edges": edges })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<Vertex> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    /// Label of a pair; `Finite(1)` on the diagonal (the Coxeter convention).
    pub fn label(&self, u: Vertex, v: Vertex) -> Label {
        self.labels[u * self.len() + v]
    }

    /// Adjacency in Γ: distinct vertices with a finite label.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.label(u, v) != Label::Infinity
    }

    /// All unordered pairs `(u, v)` with `u < v`.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
    }

    pub fn spell(&self, word: &[Vertex]) -> Vec<String> {
        word.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn vertex_set(&self, set: impl IntoIterator<Item = Vertex>) -> Vec<String> {
        set.into_iter().map(|v| self.names[v].clone()).collect()
    }

    /// Resolves vertex names, failing on the first unknown one.
    pub fn resolve<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Vertex>, GraphError> {
        names
            .iter()
            .enumerate()
            .map(|(i, n)| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| GraphError::UnknownVertex {
                        location: format!("word[{i}]"),
                        name: n.as_ref().to_owned(),
                    })
            })
            .collect()
    }

    /// Induced subgraph on `set`. Names are preserved, so the result's
    /// indices are the rank of each vertex inside `set`.
    pub fn induced(&self, set: &[Vertex]) -> DefiningGraph {
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        let n = set.len();
        let mut labels = vec![Label::Finite(1); n * n];
        for (a, &u) in set.iter().enumerate() {
            for (b, &v) in set.iter().enumerate() {
                labels[a * n + b] = self.label(u, v);
            }
        }
        DefiningGraph {
            names: set.iter().map(|&v| self.names[v].clone()).collect(),
            labels,
        }
    }

    /// Neighbours of `v` in Γ^t (labels ≥ 3 or ∞).
    pub fn coxeter_neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.len()).filter(move |&u| u != v && self.label(u, v).exceeds_two())
    }

    /// Connected components of Γ^t restricted to `set`, each sorted, listed by
    /// least member.
    pub fn coxeter_components(&self, set: &[Vertex]) -> Vec<Vec<Vertex>> {
        components(set, |u, v| self.label(u, v).exceeds_two())
    }

    /// Connected components of Γ^c restricted to `set`.
    pub fn complement_components(&self, set: &[Vertex]) -> Vec<Vec<Vertex>> {
        components(set, |u, v| self.label(u, v) == Label::Infinity)
    }

    pub fn is_clique(&self) -> bool {
        self.pairs().all(|(u, v)| self.adjacent(u, v))
    }

    pub fn spans_clique(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &u)| set[a + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }

    /// Γ^t connected.
    pub fn coxeter_connected(&self) -> bool {
        let all: Vec<Vertex> = (0..self.len()).collect();
        self.coxeter_components(&all).len() == 1
    }

    /// Graph distances in Γ^t from a set of sources (`None` if unreachable).
    pub fn coxeter_distances(&self, sources: &[Vertex]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for v in self.coxeter_neighbours(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

fn components(set: &[Vertex], linked: impl Fn(Vertex, Vertex) -> bool) -> Vec<Vec<Vertex>> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    let mut seen = vec![false; set.len()];
    let mut out = Vec::new();
    for start in 0..set.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![set[start]];
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for b in 0..set.len() {
                if !seen[b] && linked(set[a], set[b]) {
                    seen[b] = true;
                    comp.push(set[b]);
                    stack.push(b);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Unlabelled simple graph on the same vertex names, used for Γ^c.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(Vertex, Vertex)>,
}

/// Γ^t: edges carry labels in {3, 4, ...} ∪ {∞}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(Vertex, Vertex, Label)>,
}

/// Complement graph Γ^c and Coxeter graph Γ^t.
pub fn derived_graphs(g: &DefiningGraph) -> (SimpleGraph, LabeledGraph) {
    let complement = SimpleGraph {
        vertices: g.names.clone(),
        edges: g
            .pairs()
            .filter(|&(u, v)| g.label(u, v) == Label::Infinity)
            .collect(),
    };
    let coxeter = LabeledGraph {
        vertices: g.names.clone(),
        edges: g
            .pairs()
            .filter(|&(u, v)| g.label(u, v).exceeds_two())
            .map(|(u, v)| (u, v, g.label(u, v)))
            .collect(),
    };
    (complement, coxeter)
}

/// Γ = Γ₀ ∗ Γ₁ ∗ … ∗ Γ_k with Γ₀ the maximal clique factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JoinDecomposition {
    /// V₀, sorted.
    pub clique_factor: Vec<Vertex>,
    /// V₁ … V_k, each sorted and of size ≥ 2, ordered by least member.
    pub factors: Vec<Vec<Vertex>>,
}

impl JoinDecomposition {
    /// V_∗ = V₁ ⊔ … ⊔ V_k, sorted.
    pub fn star_vertices(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.factors.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// Factor index (0-based into `factors`) of a vertex of V_∗.
    pub fn factor_of(&self, v: Vertex) -> Option<usize> {
        self.factors.iter().position(|f| f.contains(&v))
    }

    pub fn named(&self, g: &DefiningGraph) -> NamedJoinDecomposition {
        NamedJoinDecomposition {
            clique_factor: g.vertex_set(self.clique_factor.iter().copied()),
            factors: self
                .factors
                .iter()
                .map(|f| g.vertex_set(f.iter().copied()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedJoinDecomposition {
    pub clique_factor: Vec<String>,
    pub factors: Vec<Vec<String>>,
}

/// Complement components of size ≥ 2 become the factors; singleton
/// components form the clique factor.
pub fn join_decompose(g: &DefiningGraph) -> JoinDecomposition {
    let all: Vec<Vertex> = (0..g.len()).collect();
    let mut clique_factor = Vec::new();
    let mut factors = Vec::new();
    for comp in g.complement_components(&all) {
        if comp.len() == 1 {
            clique_factor.push(comp[0]);
        } else {
            factors.push(comp);
        }
    }
    clique_factor.sort_unstable();
    factors.sort_by_key(|f| f[0]);
    JoinDecomposition {
        clique_factor,
        factors,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeFlags {
    pub is_clique: bool,
    pub is_cone: bool,
}

pub fn shape_flags(g: &DefiningGraph) -> ShapeFlags {
    let d = join_decompose(g);
    ShapeFlags {
        is_clique: d.factors.is_empty(),
        is_cone: !d.clique_factor.is_empty(),
    }
}

/// Which graph a DOT export draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GraphView {
    #[default]
    Defining,
    Complement,
    Coxeter,
}

pub fn to_dot(g: &DefiningGraph, view: GraphView) -> String {
    let title = match view {
        GraphView::Defining => "defining",
        GraphView::Complement => "complement",
        GraphView::Coxeter => "coxeter",
    };
    let mut out = format!("graph {title} {{\n");
    for name in &g.names {
        let _ = writeln!(out, "  {};", dot_id(name));
    }
    let (complement, coxeter) = derived_graphs(g);
    match view {
        GraphView::Defining => {
            for (u, v) in g.pairs() {
                if let Label::Finite(m) = g.label(u, v) {
                    let _ = writeln!(out, "  {} -- {} [label={m}];", dot_id(g.name(u)), dot_id(g.name(v)));
                }
            }
        }
        GraphView::Complement => {
            for (u, v) in complement.edges {
                let _ = writeln!(out, "  {} -- {};", dot_id(g.name(u)), dot_id(g.name(v)));
            }
        }
        GraphView::Coxeter => {
            for (u, v, m) in coxeter.edges {
                let _ = writeln!(
                    out,
                    "  {} -- {} [label=\"{}\"];",
                    dot_id(g.name(u)),
                    dot_id(g.name(v)),
                    if m == Label::Infinity { "∞".to_string() } else { m.to_string() }
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

pub(crate) fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}
