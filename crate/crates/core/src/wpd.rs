//! Explicit construction of the WPD candidate γ for irreducible non-clique
//! defining graphs.
//!
//! Pipeline: factor graph Q → rooted spanning tree and closed tour →
//! connecting paths p_{i,j} → aligned covering walks on each (Γ_i)^c →
//! strata W(0), …, W(𝔡) of the clique factor with drop chains → λ blocks →
//! γ = γ_♭ γ_♮ together with its prefix table γ(0), …, γ((𝔪+r)n).
//!
//! Factor indices and walk positions are 1-based in the serialized plan.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{join_decompose, DefiningGraph, JoinDecomposition, Vertex};

/// Visited-state cap for the covering-walk search.
pub const WALK_STATE_CAP: usize = 10_000_000;

/// Upper bound on the common walk length n.
pub const MAX_WALK_LENGTH: usize = 1_000_000;

/// Q(Γ,Γ₀): factors joined when a label > 2 path links them through V₀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGraph {
    /// Factor vertex sets in join-decomposition order.
    pub nodes: Vec<Vec<Vertex>>,
    /// Pairs (a, b), a < b, of 0-based node indices.
    pub edges: Vec<(usize, usize)>,
}

impl QGraph {
    pub fn is_connected(&self) -> bool {
        let k = self.nodes.len();
        if k == 0 {
            return true;
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for &(x, y) in &self.edges {
                for (p, q) in [(x, y), (y, x)] {
                    if p == a && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn neighbours(&self, a: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(x, y)| match () {
                _ if x == a => Some(y),
                _ if y == a => Some(x),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }
}

fn require_hypotheses(g: &DefiningGraph, d: &JoinDecomposition) -> Result<()> {
    if d.factors.is_empty() {
        return Err(Error::Hypothesis(
            "defining graph is a clique: the non-clique hypothesis fails".into(),
        ));
    }
    if !g.coxeter_connected() {
        return Err(Error::Hypothesis(
            "Γ^t is disconnected: A_Γ is reducible".into(),
        ));
    }
    Ok(())
}

/// Shortlex-least shortest path from `from` to `to` along edges of Γ with
/// finite label > 2 whose interior lies in `via`.
pub fn shortest_connection(
    g: &DefiningGraph,
    via: &[Vertex],
    from: &[Vertex],
    to: &[Vertex],
) -> Option<Vec<Vertex>> {
    let n = g.len();
    let linked = |u: Vertex, v: Vertex| u != v && g.label(u, v).is_finite_braid();
    // Distance to the target set, through interior vertices only.
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut queue = VecDeque::new();
    for &t in to {
        dist[t] = Some(0);
        queue.push_back(t);
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap_or(0);
        for &v in via {
            if dist[v].is_none() && linked(u, v) {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    let step = |u: Vertex| -> Option<usize> {
        from.contains(&u).then_some(())?;
        to.iter()
            .chain(via)
            .filter(|&&v| linked(u, v))
            .filter_map(|&v| dist[v].map(|d| d + 1))
            .min()
    };
    let mut starts: Vec<Vertex> = from.to_vec();
    starts.sort_unstable();
    let (best, start) = starts
        .iter()
        .filter_map(|&s| step(s).map(|d| (d, s)))
        .min()?;
    let mut path = vec![start];
    let mut remaining = best;
    let mut current = start;
    while remaining > 0 {
        let mut candidates: Vec<Vertex> = to.iter().chain(via).copied().collect();
        candidates.sort_unstable();
        let next = candidates
            .into_iter()
            .find(|&v| linked(current, v) && dist[v] == Some(remaining - 1))?;
        path.push(next);
        current = next;
        remaining -= 1;
    }
    Some(path)
}

pub fn build_q(g: &DefiningGraph, d: &JoinDecomposition) -> Result<QGraph> {
    require_hypotheses(g, d)?;
    let k = d.factors.len();
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            if shortest_connection(g, &d.clique_factor, &d.factors[a], &d.factors[b]).is_some() {
                edges.push((a, b));
            }
        }
    }
    let q = QGraph {
        nodes: d.factors.clone(),
        edges,
    };
    if !q.is_connected() {
        return Err(Error::Hypothesis(
            "factor graph Q is disconnected: A_Γ is reducible".into(),
        ));
    }
    Ok(q)
}

/// Rooted BFS spanning tree of Q, reindexed by discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    /// `order[i]` is the Q node (join-decomposition factor) that becomes V_{i+1}.
    pub order: Vec<usize>,
    /// Tree edges (parent, child) in new 0-based indices; parent < child.
    pub edges: Vec<(usize, usize)>,
    /// Closed tour i₁ … i_{r+1}, 0-based, starting and ending at the root.
    pub tour: Vec<usize>,
}

impl SpanningTree {
    pub fn r(&self) -> usize {
        self.tour.len() - 1
    }

    pub fn degenerate(&self) -> bool {
        self.order.len() == 1
    }

    pub fn parent(&self, child: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.1 == child).map(|e| e.0)
    }
}

pub fn spanning_tree_and_tour(q: &QGraph) -> Result<SpanningTree> {
    let k = q.nodes.len();
    if k == 0 || !q.is_connected() {
        return Err(Error::Hypothesis("factor graph Q is disconnected".into()));
    }
    let mut new_index = vec![usize::MAX; k];
    let mut order = vec![0];
    new_index[0] = 0;
    let mut edges = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let a = order[head];
        for b in q.neighbours(a) {
            if new_index[b] == usize::MAX {
                new_index[b] = order.len();
                edges.push((new_index[a], order.len()));
                order.push(b);
            }
        }
        head += 1;
    }
    let tour = if k == 1 {
        vec![0, 0]
    } else {
        let mut tour = Vec::new();
        euler(0, &edges, &mut tour);
        tour
    };
    Ok(SpanningTree { order, edges, tour })
}

fn euler(node: usize, edges: &[(usize, usize)], tour: &mut Vec<usize>) {
    tour.push(node);
    for &(p, c) in edges {
        if p == node {
            euler(c, edges, tour);
            tour.push(node);
        }
    }
}

/// Minimum closed walk on (Γ[set])^c through every vertex, from the least
/// vertex, lexicographically least among the minimum ones. The returned walk
/// has its start repeated at the end.
pub fn min_covering_walk(g: &DefiningGraph, set: &[Vertex]) -> Result<Vec<Vertex>> {
    let mut set = set.to_vec();
    set.sort_unstable();
    let m = set.len();
    if m > 128 {
        return Err(Error::ResourceLimit {
            what: "covering-walk search (factor size)".into(),
            cap: 128,
        });
    }
    if m == 1 {
        return Ok(vec![set[0], set[0]]);
    }
    let full: u128 = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
    let nbrs: Vec<Vec<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| b != a && !g.adjacent(set[a], set[b]))
                .collect()
        })
        .collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert((0usize, 1u128));
    // Each layer is kept in lexicographic order of its walks, so the first
    // arrival at a state carries the least walk of minimum length.
    let mut layer: Vec<(usize, u128, Vec<usize>)> = vec![(0, 1, vec![0])];
    loop {
        let mut next = Vec::new();
        for (v, mask, walk) in &layer {
            for &b in &nbrs[*v] {
                let mask2 = mask | (1u128 << b);
                if b == 0 && mask2 == full {
                    let mut w = walk.clone();
                    w.push(0);
                    return Ok(w.into_iter().map(|i| set[i]).collect());
                }
                if seen.insert((b, mask2)) {
                    if seen.len() > WALK_STATE_CAP {
                        return Err(Error::ResourceLimit {
                            what: "covering-walk search".into(),
                            cap: WALK_STATE_CAP,
                        });
                    }
                    let mut w = walk.clone();
                    w.push(b);
                    next.push((b, mask2, w));
                }
            }
        }
        if next.is_empty() {
            return Err(Error::Malformed(
                "factor complement is disconnected".into(),
            ));
        }
        next.sort_by(|x, y| x.2.cmp(&y.2));
        layer = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectingPath {
    pub i: usize,
    pub j: usize,
    /// w_{i,j,0}, …, w_{i,j,d(i,j)}.
    pub vertices: Vec<String>,
}

impl ConnectingPath {
    pub fn d(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alignment {
    pub i: usize,
    pub j: usize,
    pub l: usize,
}

/// Drop data of a vertex of W(0) ⊔ V₀.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropEntry {
    pub vertex: String,
    pub stratum: usize,
    /// (i(w), l(w)).
    pub i: usize,
    pub l: usize,
    /// w(h), w(h−1), …, w(0).
    pub chain: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// λ_l.
    Plain,
    /// λ_{l(i,j)}(i,j).
    Twist,
    /// λ_{l(w_𝔧)}(𝔧).
    Drop,
}

/// One λ block: γ(step) = γ(step − 1) · word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub step: usize,
    pub l: usize,
    pub kind: BlockKind,
    /// 𝔧 for γ_♭ blocks, the tour leg a for γ_♮ blocks.
    pub segment: usize,
    pub flat: bool,
    pub word: Vec<String>,
}

/// Every intermediate of the γ construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaPlan {
    pub vertices: Vec<String>,
    pub clique_factor: Vec<String>,
    /// V₁ … V_k after tree reindexing.
    pub factors: Vec<Vec<String>>,
    /// Q edges (i, j), i < j, in the new indices.
    pub q_edges: Vec<(usize, usize)>,
    /// Tree edges (parent, child).
    pub tree: Vec<(usize, usize)>,
    pub tour: Vec<usize>,
    pub r: usize,
    /// k = 1: no tree edge, tour (1, 1) and γ_♮ = λ₁ ⋯ λ_n.
    pub degenerate: bool,
    /// p_{i,j} for tree edges with i < j.
    pub paths: Vec<ConnectingPath>,
    pub walk_lengths: Vec<usize>,
    pub n: usize,
    /// v_{i,1}, …, v_{i,n+1}.
    pub walks: Vec<Vec<String>>,
    pub align: Vec<Alignment>,
    /// 𝔡; zero when V₀ is empty.
    pub depth: usize,
    /// W(0), W(1), …, W(𝔡), each in the total order.
    pub strata: Vec<Vec<String>>,
    pub drops: Vec<DropEntry>,
    /// w₁ < … < w_𝔪.
    pub order: Vec<String>,
    pub m: usize,
    /// λ₁ … λ_n.
    pub lambda: Vec<Vec<String>>,
    pub blocks: Vec<Block>,
    pub gamma_flat: Vec<String>,
    pub gamma_nat: Vec<String>,
    pub gamma: Vec<String>,
    /// |γ(d)| for d = 0 … (𝔪+r)n.
    pub prefix_lengths: Vec<usize>,
}

impl GammaPlan {
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    /// γ(d) as a word.
    pub fn prefix(&self, d: usize) -> Option<&[String]> {
        let len = *self.prefix_lengths.get(d)?;
        self.gamma.get(..len)
    }

    /// v_{i,l}, 1-based; l is taken mod n.
    pub fn walk_letter(&self, i: usize, l: usize) -> Option<&str> {
        let walk = self.walks.get(i.checked_sub(1)?)?;
        let n = self.n.max(1);
        let idx = (l.checked_sub(1)? % n) + 1;
        walk.get(idx - 1).map(String::as_str)
    }

    /// l(i, j) for a tree edge in either orientation.
    pub fn alignment(&self, i: usize, j: usize) -> Option<usize> {
        self.align
            .iter()
            .find(|a| (a.i, a.j) == (i, j) || (a.i, a.j) == (j, i))
            .map(|a| a.l)
    }

    /// τ_{i,j}: the connecting path read from V_i to V_j.
    pub fn tau(&self, i: usize, j: usize) -> Option<Vec<String>> {
        self.paths.iter().find_map(|p| {
            if (p.i, p.j) == (i, j) {
                Some(p.vertices.clone())
            } else if (p.i, p.j) == (j, i) {
                Some(p.vertices.iter().rev().cloned().collect())
            } else {
                None
            }
        })
    }

    /// U_l = V₀ ⊔ {v_{1,l}, …, v_{k,l}} as a list (duplicates kept).
    pub fn u_l(&self, l: usize) -> Vec<String> {
        let mut u = self.clique_factor.clone();
        for i in 1..=self.k() {
            if let Some(v) = self.walk_letter(i, l) {
                u.push(v.to_owned());
            }
        }
        u
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap_or(serde_json::Value::Null)
    }
}

/// Runs the whole construction on an irreducible non-clique graph.
pub fn build_gamma(g: &DefiningGraph) -> Result<GammaPlan> {
    let d = join_decompose(g);
    let q = build_q(g, &d)?;
    let tree = spanning_tree_and_tour(&q)?;
    let k = q.nodes.len();
    let factors: Vec<Vec<Vertex>> = tree.order.iter().map(|&o| q.nodes[o].clone()).collect();
    let v0 = &d.clique_factor;

    // Connecting paths, keyed by the tree edge (parent, child).
    let mut paths: Vec<(usize, usize, Vec<Vertex>)> = Vec::new();
    for &(i, j) in &tree.edges {
        let p = shortest_connection(g, v0, &factors[i], &factors[j]).ok_or_else(|| {
            Error::Malformed(format!("no connecting path for tree edge ({}, {})", i + 1, j + 1))
        })?;
        paths.push((i, j, p));
    }

    // Covering walks, repeated to the common length and rotated in tree order.
    let base: Vec<Vec<Vertex>> = factors
        .iter()
        .map(|f| min_covering_walk(g, f))
        .collect::<Result<_>>()?;
    let walk_lengths: Vec<usize> = base.iter().map(|w| w.len() - 1).collect();
    let n = walk_lengths
        .iter()
        .try_fold(1usize, |acc, &x| acc.checked_mul(x))
        .filter(|&n| n <= MAX_WALK_LENGTH)
        .ok_or_else(|| Error::ResourceLimit {
            what: "common walk length n".into(),
            cap: MAX_WALK_LENGTH,
        })?;
    let mut walks: Vec<Vec<Vertex>> = base
        .iter()
        .map(|w| {
            let cycle = &w[..w.len() - 1];
            (0..n).map(|l| cycle[l % cycle.len()]).collect()
        })
        .collect();
    let mut align = Vec::new();
    for j in 1..k {
        let (i, _, p) = paths
            .iter()
            .find(|e| e.1 == j)
            .ok_or_else(|| Error::Malformed(format!("factor {} has no parent", j + 1)))?;
        let (s, t) = (p[0], p[p.len() - 1]);
        let l = walks[*i].iter().position(|&v| v == s).ok_or_else(|| {
            Error::Malformed("connecting path does not start on the parent walk".into())
        })?;
        let shift = (0..n).find(|&c| walks[j][(l + c) % n] == t).ok_or_else(|| {
            Error::Malformed("connecting path does not end on the child walk".into())
        })?;
        walks[j] = (0..n).map(|x| walks[j][(x + shift) % n]).collect();
        align.push((*i, j, l));
    }
    let v = |i: usize, l: usize| walks[i][l % n];

    // Strata of V₀ by Γ^t distance to V_∗, then the drop maps.
    let star = d.star_vertices();
    let dist = g.coxeter_distances(&star);
    let depth = v0.iter().filter_map(|&w| dist[w]).max().unwrap_or(0);
    let first_index = |x: Vertex| -> Option<(usize, usize)> {
        (0..k).flat_map(|i| (0..n).map(move |l| (i, l))).find(|&(i, l)| v(i, l) == x)
    };
    let mut levels: Vec<Vec<Vertex>> = vec![Vec::new(); depth + 1];
    // (i, l) and chain of every ordered vertex.
    let mut info: std::collections::BTreeMap<Vertex, ((usize, usize), Vec<Vertex>, usize)> =
        Default::default();
    if depth > 0 {
        let mut w0: Vec<Vertex> = Vec::new();
        for &w in v0.iter().filter(|&&w| dist[w] == Some(1)) {
            let (i, l) = (0..k)
                .flat_map(|i| (0..n).map(move |l| (i, l)))
                .find(|&(i, l)| g.label(w, v(i, l)).exceeds_two())
                .ok_or_else(|| Error::Malformed("W(1) vertex without a label > 2 neighbour".into()))?;
            if !w0.contains(&v(i, l)) {
                w0.push(v(i, l));
            }
        }
        let mut keyed: Vec<((usize, usize), Vertex)> = w0
            .into_iter()
            .map(|x| first_index(x).map(|ix| (ix, x)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Malformed("W(0) vertex missing from walks".into()))?;
        keyed.sort();
        for &(ix, x) in &keyed {
            info.insert(x, (ix, vec![x], 0));
        }
        levels[0] = keyed.into_iter().map(|(_, x)| x).collect();
        for h in 1..=depth {
            let mut keyed: Vec<(usize, Vertex)> = Vec::new();
            for &w in v0.iter().filter(|&&w| dist[w] == Some(h)) {
                let pos = levels[h - 1]
                    .iter()
                    .position(|&x| g.label(w, x).exceeds_two())
                    .ok_or_else(|| Error::Malformed(format!("no drop target at stratum {h}")))?;
                keyed.push((pos, w));
            }
            keyed.sort();
            for &(pos, w) in &keyed {
                let below = levels[h - 1][pos];
                let (ix, below_chain, _) = info[&below].clone();
                let mut chain = vec![w];
                chain.extend(below_chain);
                info.insert(w, (ix, chain, h));
            }
            levels[h] = keyed.into_iter().map(|(_, w)| w).collect();
        }
    }
    let order: Vec<Vertex> = if depth == 0 {
        Vec::new()
    } else {
        levels[..depth].iter().flatten().copied().collect()
    };

    // λ blocks.
    let lambda: Vec<Vec<Vertex>> = (0..n).map(|l| (0..k).map(|i| v(i, l)).collect()).collect();
    let tau = |i: usize, j: usize| -> Vec<Vertex> {
        paths
            .iter()
            .find_map(|(a, b, p)| {
                if (*a, *b) == (i, j) {
                    Some(p.clone())
                } else if (*a, *b) == (j, i) {
                    Some(p.iter().rev().copied().collect())
                } else {
                    None
                }
            })
            .unwrap_or_default()
    };
    let align_of = |i: usize, j: usize| {
        align
            .iter()
            .find(|e| (e.0, e.1) == (i, j) || (e.0, e.1) == (j, i))
            .map(|e| e.2)
    };
    let mut blocks: Vec<(usize, BlockKind, usize, bool, Vec<Vertex>)> = Vec::new();
    for (jj, w) in order.iter().enumerate() {
        let ((iw, lw), chain, _) = &info[w];
        for l in 0..n {
            if l == *lw {
                let mut word: Vec<Vertex> = (0..k).filter(|&i| i != *iw).map(|i| v(i, l)).collect();
                word.extend(chain.iter().copied());
                blocks.push((l, BlockKind::Drop, jj + 1, true, word));
            } else {
                blocks.push((l, BlockKind::Plain, jj + 1, true, lambda[l].clone()));
            }
        }
    }
    for a in 0..tree.r() {
        let (i, j) = (tree.tour[a], tree.tour[a + 1]);
        let twist_at = if tree.degenerate() { None } else { align_of(i, j) };
        for l in 0..n {
            if Some(l) == twist_at {
                let mut word = tau(i, j);
                word.extend((0..k).filter(|&x| x != i && x != j).map(|x| v(x, l)));
                blocks.push((l, BlockKind::Twist, a + 1, false, word));
            } else {
                blocks.push((l, BlockKind::Plain, a + 1, false, lambda[l].clone()));
            }
        }
    }
    let mut gamma: Vec<Vertex> = Vec::new();
    let mut prefix_lengths = vec![0];
    for b in &blocks {
        gamma.extend(&b.4);
        prefix_lengths.push(gamma.len());
    }
    let flat_len = prefix_lengths[order.len() * n];

    let names = |w: &[Vertex]| g.spell(w);
    Ok(GammaPlan {
        vertices: g.names().to_vec(),
        clique_factor: names(v0),
        factors: factors.iter().map(|f| names(f)).collect(),
        q_edges: {
            let mut e: Vec<(usize, usize)> = q
                .edges
                .iter()
                .map(|&(a, b)| {
                    let na = tree.order.iter().position(|&o| o == a).unwrap_or(0) + 1;
                    let nb = tree.order.iter().position(|&o| o == b).unwrap_or(0) + 1;
                    (na.min(nb), na.max(nb))
                })
                .collect();
            e.sort_unstable();
            e
        },
        tree: tree.edges.iter().map(|&(p, c)| (p + 1, c + 1)).collect(),
        tour: tree.tour.iter().map(|&x| x + 1).collect(),
        r: tree.r(),
        degenerate: tree.degenerate(),
        paths: paths
            .iter()
            .map(|(i, j, p)| ConnectingPath {
                i: i + 1,
                j: j + 1,
                vertices: names(p),
            })
            .collect(),
        walk_lengths,
        n,
        walks: walks
            .iter()
            .map(|w| {
                let mut closed = names(w);
                closed.push(closed[0].clone());
                closed
            })
            .collect(),
        align: align
            .iter()
            .map(|&(i, j, l)| Alignment {
                i: i + 1,
                j: j + 1,
                l: l + 1,
            })
            .collect(),
        depth,
        strata: levels.iter().map(|lv| names(lv)).collect(),
        drops: levels
            .iter()
            .flatten()
            .map(|w| {
                let ((i, l), chain, h) = &info[w];
                DropEntry {
                    vertex: g.name(*w).to_owned(),
                    stratum: *h,
                    i: i + 1,
                    l: l + 1,
                    chain: names(chain),
                }
            })
            .collect(),
        m: order.len(),
        order: names(&order),
        lambda: lambda.iter().map(|w| names(w)).collect(),
        blocks: blocks
            .iter()
            .enumerate()
            .map(|(x, (l, kind, segment, flat, word))| Block {
                step: x + 1,
                l: l + 1,
                kind: *kind,
                segment: *segment,
                flat: *flat,
                word: names(word),
            })
            .collect(),
        gamma_flat: names(&gamma[..flat_len]),
        gamma_nat: names(&gamma[flat_len..]),
        gamma: names(&gamma),
        prefix_lengths,
    })
}
