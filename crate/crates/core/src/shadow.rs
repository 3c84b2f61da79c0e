//! Finite pieces of the coset cube complex over the Coxeter quotient W_Γ.
//!
//! Vertices are cosets gW_U for U spanning a clique (∅ included), cubes are
//! intervals [gW_U, gW_{U'}] with U ⊆ U'. Everything here is a statement about
//! the W_Γ shadow only.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::cert::{CheckResult, CheckStatus};
use crate::coxeter::{CoxNormalForm, CoxeterSystem, RootSigns};
use crate::error::{Error, Result};
use crate::graph::{dot_id, DefiningGraph, JoinDecomposition, Vertex};

/// Default cap on the number of clique subsets.
pub const DELTA_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaSets {
    /// Vertex sets spanning cliques of Γ, ∅ first, ordered by size then lex.
    pub all_cliques: Vec<Vec<Vertex>>,
    /// Members containing V₀.
    pub reduced: Vec<Vec<Vertex>>,
}

fn mask_of(set: &[Vertex]) -> u64 {
    set.iter().fold(0, |m, &v| m | (1 << v))
}

pub fn delta_sets(g: &DefiningGraph, d: &JoinDecomposition, cap: usize) -> Result<DeltaSets> {
    if g.len() > 64 {
        return Err(Error::ResourceLimit { what: "shadow generators".into(), cap: 64 });
    }
    let mut all: Vec<Vec<Vertex>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<Vertex>> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            let start = c.last().map_or(0, |&v| v + 1);
            for v in start..g.len() {
                if c.iter().all(|&u| g.adjacent(u, v)) {
                    let mut e = c.clone();
                    e.push(v);
                    next.push(e);
                }
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > cap {
            return Err(Error::ResourceLimit { what: "clique subsets".into(), cap });
        }
        frontier = next;
    }
    let v0 = mask_of(&d.clique_factor);
    let reduced = all.iter().filter(|u| mask_of(u) & v0 == v0).cloned().collect();
    Ok(DeltaSets { all_cliques: all, reduced })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShadowVertex {
    /// Minimal representative of the coset.
    pub rep: Vec<Vertex>,
    pub parabolic: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowCube {
    /// Index of the bottom vertex gW_U.
    pub min: usize,
    /// U' ∖ U.
    pub letters: Vec<Vertex>,
    /// Vertices gW_{U ∪ L} indexed by the bitmask of L within `letters`.
    pub corners: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowEdge {
    pub lower: usize,
    pub upper: usize,
    pub letter: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneClass {
    pub letter: Vertex,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ShadowComplex {
    pub names: Vec<String>,
    pub reduced: bool,
    pub vertices: Vec<ShadowVertex>,
    pub edges: Vec<ShadowEdge>,
    pub cubes: Vec<ShadowCube>,
    pub classes: Vec<HyperplaneClass>,
    /// Class of each edge.
    pub edge_class: Vec<usize>,
    /// The whole (finite) complex was built.
    pub saturated: bool,
    /// Every coset with a representative of length ≤ this is present.
    pub ball_complete_radius: usize,
    index: HashMap<(Vec<Vertex>, u64), usize>,
}

impl ShadowComplex {
    pub fn vertex_index(&self, rep: &[Vertex], parabolic: &[Vertex]) -> Option<usize> {
        self.index.get(&(rep.to_vec(), mask_of(parabolic))).copied()
    }

    pub fn squares(&self) -> impl Iterator<Item = &ShadowCube> {
        self.cubes.iter().filter(|c| c.letters.len() == 2)
    }

    /// Edge ids of a square, as (a-edge at bottom, a-edge at top, b-edge at bottom, b-edge at top).
    fn square_edges(&self, c: &ShadowCube, edge_id: &HashMap<(usize, usize), usize>) -> [usize; 4] {
        let e = |x: usize, y: usize| edge_id[&(c.corners[x], c.corners[y])];
        [e(0, 1), e(2, 3), e(0, 2), e(1, 3)]
    }

    fn edge_ids(&self) -> HashMap<(usize, usize), usize> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.lower, e.upper), i))
            .collect()
    }

    fn label_vertex(&self, v: usize) -> String {
        let x = &self.vertices[v];
        let rep: String = x.rep.iter().map(|&s| self.names[s].as_str()).collect();
        let u: Vec<&str> = x.parabolic.iter().map(|&s| self.names[s].as_str()).collect();
        format!("{}W{{{}}}", if rep.is_empty() { "1" } else { &rep }, u.join(","))
    }

    /// Pairs of classes that share a square.
    pub fn crossings(&self) -> BTreeSet<(usize, usize)> {
        let ids = self.edge_ids();
        let mut out = BTreeSet::new();
        for sq in self.squares() {
            let [a, _, b, _] = self.square_edges(sq, &ids);
            let (x, y) = (self.edge_class[a], self.edge_class[b]);
            out.insert((x.min(y), x.max(y)));
        }
        out
    }

    /// Components of the 1-skeleton after deleting the edges dual to `removed`.
    pub fn components_without(&self, removed: Option<usize>) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for (i, e) in self.edges.iter().enumerate() {
            if Some(self.edge_class[i]) != removed {
                uf.union(e.lower, e.upper);
            }
        }
        uf.count()
    }

    pub fn to_json(&self) -> Value {
        let spell = |w: &[Vertex]| w.iter().map(|&s| self.names[s].clone()).collect::<Vec<_>>();
        json!({
            "kind": "coxeter-shadow",
            "reduced": self.reduced,
            "saturated": self.saturated,
            "ball_complete_radius": self.ball_complete_radius,
            "vertices": self.vertices.iter().map(|v| json!({
                "rep": spell(&v.rep),
                "parabolic": spell(&v.parabolic),
            })).collect::<Vec<_>>(),
            "cubes": self.cubes.iter().map(|c| json!({
                "min": c.min,
                "letters": spell(&c.letters),
            })).collect::<Vec<_>>(),
            "hyperplane_classes": self.classes.iter().map(|h| json!({
                "type": self.names[h.letter],
                "edges": h.edges.len(),
            })).collect::<Vec<_>>(),
        })
    }

    /// 1-skeleton with edges coloured by hyperplane class.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];
        let mut out = String::from("graph shadow {\n");
        for v in 0..self.vertices.len() {
            out.push_str(&format!("  v{v} [label={}];\n", dot_id(&self.label_vertex(v))));
        }
        for (i, e) in self.edges.iter().enumerate() {
            let class = self.edge_class[i];
            out.push_str(&format!(
                "  v{} -- v{} [label={}, color={}];\n",
                e.lower,
                e.upper,
                dot_id(&self.names[e.letter]),
                PALETTE[class % PALETTE.len()]
            ));
        }
        out.push_str("}\n");
        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Minimal representative of gW_U by greedy right descent.
pub fn minimal_representative(rs: &RootSigns, g: &[Vertex], u: &[Vertex]) -> Result<CoxNormalForm> {
    let mut cur = rs.normal_form(g)?;
    'descend: loop {
        for &s in u {
            let mut w = cur.to_vec();
            w.push(s);
            let next = rs.normal_form(&w)?;
            if next.len() < cur.len() {
                cur = next;
                continue 'descend;
            }
        }
        return Ok(cur);
    }
}

/// Minimal representative of gW_U by running through all of W_U.
pub fn minimal_representative_exhaustive(
    cox: &CoxeterSystem,
    rs: &RootSigns,
    g: &[Vertex],
    u: &[Vertex],
) -> Result<CoxNormalForm> {
    let parabolic = cox.finite_parabolic(u)?;
    let mut best: Option<CoxNormalForm> = None;
    for x in &parabolic {
        let w: Vec<Vertex> = g.iter().chain(x.iter()).copied().collect();
        let nf = rs.normal_form(&w)?;
        if best.as_ref().is_none_or(|b| (nf.len(), nf.to_vec()) < (b.len(), b.to_vec())) {
            best = Some(nf);
        }
    }
    Ok(best.unwrap_or_else(CoxNormalForm::identity))
}

fn has_right_descent_in(rs: &RootSigns, g: &CoxNormalForm, u: &[Vertex]) -> Result<bool> {
    for &s in u {
        let mut w = g.to_vec();
        w.push(s);
        if rs.length(&w)? < g.len() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Builds the shadow on the ball of the given radius (the whole group when
/// `radius` is `None`), with at most `cap` group elements and `cap` vertices.
pub fn build_shadow(
    g: &DefiningGraph,
    d: &JoinDecomposition,
    reduced: bool,
    cap: usize,
    radius: Option<usize>,
) -> Result<ShadowComplex> {
    if cap == 0 {
        return Err(Error::Malformed("shadow cap must be at least 1".into()));
    }
    let delta = delta_sets(g, d, DELTA_CAP)?;
    let sets = if reduced { &delta.reduced } else { &delta.all_cliques };
    let allowed: BTreeSet<u64> = sets.iter().map(|u| mask_of(u)).collect();
    let cox = CoxeterSystem::new(g);
    let all: Vec<Vertex> = (0..g.len()).collect();
    let rs = cox.root_signs(&all);
    let ball = rs.ball(radius, cap)?;
    let complete = if ball.saturated {
        ball.elements.last().map_or(0, |e| e.len())
    } else {
        ball.complete_radius
    };
    let elements: Vec<&CoxNormalForm> = ball.elements.iter().filter(|e| e.len() <= complete).collect();

    let mut vertices = Vec::new();
    let mut index = HashMap::new();
    for h in &elements {
        for u in sets {
            if !has_right_descent_in(&rs, h, u)? {
                index.insert((h.to_vec(), mask_of(u)), vertices.len());
                vertices.push(ShadowVertex { rep: h.to_vec(), parabolic: u.clone() });
                if vertices.len() > cap {
                    return Err(Error::ResourceLimit { what: "shadow vertices".into(), cap });
                }
            }
        }
    }

    let mut cubes = Vec::new();
    for (vi, v) in vertices.iter().enumerate() {
        let base = mask_of(&v.parabolic);
        let extra: Vec<Vertex> = all.iter().copied().filter(|&s| base & (1 << s) == 0).collect();
        for sub in 1u64..(1 << extra.len()) {
            let letters: Vec<Vertex> = members_of(&extra, sub);
            if !allowed.contains(&(base | mask_of(&letters))) {
                continue;
            }
            let mut corners = Vec::with_capacity(1 << letters.len());
            for part in 0u64..(1 << letters.len()) {
                let mut u = v.parabolic.clone();
                u.extend(members_of(&letters, part));
                u.sort_unstable();
                let rep = minimal_representative(&rs, &v.rep, &u)?;
                let key = (rep.to_vec(), mask_of(&u));
                let idx = *index.get(&key).ok_or_else(|| {
                    Error::Numerical("cube corner missing from the ball".into())
                })?;
                corners.push(idx);
            }
            cubes.push(ShadowCube { min: vi, letters, corners });
        }
    }

    let mut edges = Vec::new();
    let mut edge_id = HashMap::new();
    for c in cubes.iter().filter(|c| c.letters.len() == 1) {
        edge_id.insert((c.corners[0], c.corners[1]), edges.len());
        edges.push(ShadowEdge { lower: c.corners[0], upper: c.corners[1], letter: c.letters[0] });
    }
    let mut uf = UnionFind::new(edges.len());
    for c in cubes.iter().filter(|c| c.letters.len() == 2) {
        let e = |x: usize, y: usize| edge_id[&(c.corners[x], c.corners[y])];
        uf.union(e(0, 1), e(2, 3));
        uf.union(e(0, 2), e(1, 3));
    }
    let mut class_of_root = BTreeMap::new();
    let mut classes: Vec<HyperplaneClass> = Vec::new();
    let mut edge_class = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        let root = uf.find(i);
        let c = *class_of_root.entry(root).or_insert_with(|| {
            classes.push(HyperplaneClass { letter: e.letter, edges: Vec::new() });
            classes.len() - 1
        });
        classes[c].edges.push(i);
        edge_class.push(c);
    }

    Ok(ShadowComplex {
        names: g.names().to_vec(),
        reduced,
        vertices,
        edges,
        cubes,
        classes,
        edge_class,
        saturated: ball.saturated,
        ball_complete_radius: complete,
        index,
    })
}

fn members_of(letters: &[Vertex], sub: u64) -> Vec<Vertex> {
    letters
        .iter()
        .enumerate()
        .filter(|(i, _)| sub & (1 << i) != 0)
        .map(|(_, &s)| s)
        .collect()
}

/// Link of a vertex: one simplex (set of neighbouring vertices) per cube.
fn links(c: &ShadowComplex) -> Vec<Vec<BTreeSet<usize>>> {
    let mut out = vec![Vec::new(); c.vertices.len()];
    for cube in &c.cubes {
        let k = cube.letters.len();
        for part in 0..(1usize << k) {
            let simplex: BTreeSet<usize> = (0..k).map(|b| cube.corners[part ^ (1 << b)]).collect();
            out[cube.corners[part]].push(simplex);
        }
    }
    out
}

/// Whole-link eligibility: ℓ(g) + ℓ(w₀(W_U)) within the complete radius.
fn eligible(c: &ShadowComplex, g: &DefiningGraph) -> Result<Vec<bool>> {
    if c.saturated {
        return Ok(vec![true; c.vertices.len()]);
    }
    let cox = CoxeterSystem::new(g);
    let mut longest: HashMap<Vec<Vertex>, Option<usize>> = HashMap::new();
    c.vertices
        .iter()
        .map(|v| {
            let w0 = match longest.get(&v.parabolic) {
                Some(&x) => x,
                None => {
                    let ball = cox.enumerate_parabolic(&v.parabolic, cox.cap())?;
                    let x = ball.saturated.then(|| ball.elements.last().map_or(0, |e| e.len()));
                    longest.insert(v.parabolic.clone(), x);
                    x
                }
            };
            Ok(w0.is_some_and(|w0| v.rep.len() + w0 <= c.ball_complete_radius))
        })
        .collect()
}

fn cliques_of(nodes: &[usize], adjacent: &dyn Fn(usize, usize) -> bool) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    fn grow(
        current: &mut Vec<usize>,
        rest: &[usize],
        adjacent: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        for (i, &x) in rest.iter().enumerate() {
            if current.iter().all(|&y| adjacent(x, y)) {
                current.push(x);
                out.push(current.iter().copied().collect());
                grow(current, &rest[i + 1..], adjacent, out);
                current.pop();
            }
        }
    }
    grow(&mut Vec::new(), nodes, adjacent, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub eligible: usize,
    pub flag_failures: Vec<String>,
    pub full_failures: Vec<String>,
    pub inconclusive: bool,
}

impl LinkReport {
    pub fn status(&self) -> CheckStatus {
        if self.inconclusive {
            CheckStatus::NotChecked
        } else if self.flag_failures.is_empty() && self.full_failures.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

/// Ambient links are simplicial and flag; links of `sub` are full in them.
pub fn links_full_check(g: &DefiningGraph, c: &ShadowComplex, sub: &ShadowComplex) -> Result<LinkReport> {
    let ok = eligible(c, g)?;
    let ambient = links(c);
    let inner = links(sub);
    let mut report = LinkReport {
        eligible: ok.iter().filter(|&&b| b).count(),
        flag_failures: Vec::new(),
        full_failures: Vec::new(),
        inconclusive: false,
    };
    for (v, simplices) in ambient.iter().enumerate() {
        if !ok[v] {
            continue;
        }
        let set: BTreeSet<&BTreeSet<usize>> = simplices.iter().collect();
        if set.len() != simplices.len() {
            report.flag_failures.push(format!("{}: two cubes share a link simplex", c.label_vertex(v)));
            continue;
        }
        let nodes: Vec<usize> = simplices.iter().filter(|s| s.len() == 1).flatten().copied().collect();
        let joined = |a: usize, b: usize| set.contains(&BTreeSet::from([a, b]));
        if let Some(missing) = cliques_of(&nodes, &joined).into_iter().find(|q| !set.contains(q)) {
            report.flag_failures.push(format!(
                "{}: {} pairwise-joined link vertices span no cube",
                c.label_vertex(v),
                missing.len()
            ));
        }
    }
    let sub_eligible = eligible(sub, g)?;
    for (sv, sub_simplices) in inner.iter().enumerate() {
        let x = &sub.vertices[sv];
        let Some(v) = c.vertex_index(&x.rep, &x.parabolic) else {
            report.full_failures.push(format!("{} is not a vertex of the ambient shadow", sub.label_vertex(sv)));
            continue;
        };
        if !ok[v] || !sub_eligible[sv] {
            continue;
        }
        let to_ambient = |s: &BTreeSet<usize>| -> Option<BTreeSet<usize>> {
            s.iter()
                .map(|&w| c.vertex_index(&sub.vertices[w].rep, &sub.vertices[w].parabolic))
                .collect()
        };
        let have: BTreeSet<BTreeSet<usize>> = sub_simplices.iter().filter_map(to_ambient).collect();
        let link_vertices: BTreeSet<usize> = have.iter().filter(|s| s.len() == 1).flatten().copied().collect();
        let missing = ambient[v]
            .iter()
            .find(|s| s.is_subset(&link_vertices) && !have.contains(*s));
        if let Some(s) = missing {
            report.full_failures.push(format!(
                "{}: ambient link simplex of size {} on reduced vertices is missing",
                c.label_vertex(v),
                s.len()
            ));
        }
    }
    report.inconclusive = report.eligible == 0;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    /// Components after removing each class; `None` on incomplete balls.
    pub components: [Option<usize>; 2],
    pub cross_each_other: bool,
    /// Third classes sharing a square with both.
    pub crossing_both: Vec<usize>,
}

pub fn separation_check(c: &ShadowComplex, j: usize, j2: usize) -> Result<SeparationReport> {
    if j >= c.classes.len() || j2 >= c.classes.len() {
        return Err(Error::Malformed("no such hyperplane class".into()));
    }
    let count = |x| c.saturated.then(|| c.components_without(Some(x)));
    let crossings = c.crossings();
    let crosses = |a: usize, b: usize| a != b && crossings.contains(&(a.min(b), a.max(b)));
    Ok(SeparationReport {
        components: [count(j), count(j2)],
        cross_each_other: crosses(j, j2),
        crossing_both: (0..c.classes.len())
            .filter(|&x| x != j && x != j2 && crosses(x, j) && crosses(x, j2))
            .collect(),
    })
}

/// Σ_{U ∈ Δ} |W|/|W_U| when W_Γ is finite.
pub fn expected_vertex_count(g: &DefiningGraph, sets: &[Vec<Vertex>]) -> Result<Option<u128>> {
    let Some(total) = crate::classify::coxeter_group_order(g) else {
        return Ok(None);
    };
    let mut sum = 0u128;
    for u in sets {
        let order = crate::classify::coxeter_group_order(&g.induced(u)).unwrap_or(1);
        sum += total / order;
    }
    Ok(Some(sum))
}

/// The shadow laws as a check list.
pub fn shadow_laws(g: &DefiningGraph, d: &JoinDecomposition, c: &ShadowComplex, sub: &ShadowComplex) -> Result<Vec<CheckResult>> {
    const SCOPE: &str = "shadow";
    let mut out = Vec::new();
    let check = |name: &str, cite: &str, failure: Option<String>, ok: String| CheckResult {
        name: name.into(),
        citation: format!("{SCOPE}: {cite}"),
        status: if failure.is_some() { CheckStatus::Fail } else { CheckStatus::Pass },
        evidence: failure.unwrap_or(ok),
    };
    let skip = |name: &str, cite: &str, why: &str| CheckResult {
        name: name.into(),
        citation: format!("{SCOPE}: {cite}"),
        status: CheckStatus::NotChecked,
        evidence: why.into(),
    };

    let delta = delta_sets(g, d, DELTA_CAP)?;
    let sets = if c.reduced { &delta.reduced } else { &delta.all_cliques };
    let orbit = "vertex count equals Σ_U |W|/|W_U|";
    match (c.saturated, expected_vertex_count(g, sets)?) {
        (true, Some(n)) => out.push(check(
            "vertex-count",
            orbit,
            (n != c.vertices.len() as u128).then(|| format!("{} vertices, expected {n}", c.vertices.len())),
            format!("{n} vertices"),
        )),
        _ => out.push(skip("vertex-count", orbit, "W_Γ infinite or not fully built")),
    }

    let cox = CoxeterSystem::new(g);
    let all: Vec<Vertex> = (0..g.len()).collect();
    let rs = cox.root_signs(&all);
    let mut greedy_failure = None;
    let mut compared = 0;
    for v in &c.vertices {
        if crate::classify::is_spherical(g, &v.parabolic) {
            compared += 1;
            let exhaustive = minimal_representative_exhaustive(&cox, &rs, &v.rep, &v.parabolic)?;
            if exhaustive.to_vec() != v.rep {
                greedy_failure = Some(format!("greedy descent disagrees with exhaustive search at rep of length {}", v.rep.len()));
                break;
            }
        }
    }
    let greedy = "greedy right descent reaches the minimal coset representative";
    out.push(if compared == 0 && greedy_failure.is_none() {
        skip("minimal-representatives", greedy, "no coset with a finite parabolic")
    } else {
        check("minimal-representatives", greedy, greedy_failure, format!("{compared} cosets compared with exhaustive search"))
    });

    let separation = "each hyperplane class separates the complex into exactly two components";
    if c.saturated {
        let bad = (0..c.classes.len()).find_map(|x| {
            let k = c.components_without(Some(x));
            (k != 2).then(|| format!("class {x} of type {} leaves {k} components", g.name(c.classes[x].letter)))
        });
        out.push(check("two-components", separation, bad, format!("{} classes", c.classes.len())));
    } else {
        out.push(skip("two-components", separation, "incomplete ball"));
    }

    let crossings = c.crossings();
    let same_type = crossings
        .iter()
        .find(|&&(a, b)| a != b && c.classes[a].letter == c.classes[b].letter)
        .map(|&(a, b)| format!("classes {a} and {b} of type {} cross", g.name(c.classes[a].letter)));
    let self_cross = crossings.iter().find(|&&(a, b)| a == b).map(|&(a, _)| format!("class {a} crosses itself"));
    out.push(check(
        "same-type-noncrossing",
        "distinct hyperplanes of the same type do not cross",
        same_type.or(self_cross),
        format!("{} crossing pairs", crossings.len()),
    ));
    let non_adjacent = crossings
        .iter()
        .find(|&&(a, b)| !g.adjacent(c.classes[a].letter, c.classes[b].letter))
        .map(|&(a, b)| format!("types {} and {} cross but are not adjacent", g.name(c.classes[a].letter), g.name(c.classes[b].letter)));
    out.push(check(
        "crossing-adjacency",
        "crossing hyperplanes have Γ-adjacent types",
        non_adjacent,
        "all crossing types adjacent".into(),
    ));

    let links = links_full_check(g, c, sub)?;
    let cite = "links are flag and reduced links are full subcomplexes";
    out.push(if links.inconclusive {
        skip("links", cite, "no vertex has its whole link inside the complete ball")
    } else {
        let failure = links.flag_failures.first().or(links.full_failures.first()).cloned();
        check("links", cite, failure, format!("{} eligible vertices", links.eligible))
    });

    out.push(check(
        "reduced-connected",
        "the reduced shadow ball is connected",
        (sub.components_without(None) != 1).then(|| format!("{} components", sub.components_without(None))),
        format!("{} vertices", sub.vertices.len()),
    ));
    Ok(out)
}
