//! Classification flags and the acylindrical hyperbolicity verdict.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{join_decompose, DefiningGraph, Label, Vertex};

/// An irreducible finite Coxeter system found as a component of Γ^t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteComponent {
    /// One of A_n, B_n, D_n, E6, E7, E8, F4, H3, H4, I2(m).
    pub name: String,
    pub vertices: Vec<String>,
    /// |W| of the component; `None` if it does not fit in 128 bits.
    pub order: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub spherical: bool,
    pub irreducible: bool,
    pub free_of_infinity: bool,
    pub type_fc: bool,
    pub two_dimensional: bool,
    pub finite_type_name: Option<Vec<String>>,
    /// Irreducible components of a spherical W_Γ with their orders.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finite_components: Option<Vec<FiniteComponent>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    AcylindricallyHyperbolic,
    NotAcylindricallyHyperbolic,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Justification {
    pub claim: String,
    pub citation: String,
}

impl Justification {
    fn new(claim: impl Into<String>, citation: &str) -> Self {
        Justification {
            claim: claim.into(),
            citation: citation.to_owned(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub justifications: Vec<Justification>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub center_finite: bool,
    pub contained_in_clique_factor_center: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial: Option<bool>,
    pub clique_factor_size: usize,
    pub justifications: Vec<Justification>,
}

pub mod citation {
    pub const NON_CLIQUE_EQUIVALENCE: &str =
        "non-clique theorem: irreducible <=> WPD contracting element <=> acylindrically hyperbolic <=> virtually directly indecomposable";
    pub const REDUCIBLE: &str =
        "reducible Artin groups split as direct products of infinite groups and are not acylindrically hyperbolic";
    pub const SPHERICAL_CENTER: &str =
        "Artin groups of spherical type have infinite cyclic center and are not acylindrically hyperbolic";
    pub const FC_COROLLARY: &str =
        "FC corollary: irreducible Artin groups of infinite type and of type FC are acylindrically hyperbolic";
    pub const OPEN_CLIQUE: &str =
        "open problem: irreducible infinite-type Artin groups on cliques are not covered by the non-clique theorem";
    pub const CENTER_COROLLARY: &str =
        "center corollary: for irreducible non-clique graphs Z(A_Γ) is finite and contained in Z(A_Γ₀)";
    pub const SMALL_CLIQUE_FACTOR: &str =
        "external: Z(A_Γ₀) is known to be trivial or torsion-free when Γ₀ has at most three vertices (stated without proof)";
}

fn factorial(n: u32) -> Option<u128> {
    (1..=u128::from(n)).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// Name and order of a connected Coxeter diagram, or `None` if infinite.
fn recognize_component(g: &DefiningGraph, comp: &[Vertex]) -> Option<(String, Option<u128>)> {
    let n = comp.len();
    if n == 1 {
        return Some(("A_1".into(), Some(2)));
    }
    let mut edges = Vec::new();
    for (a, &u) in comp.iter().enumerate() {
        for (b, &v) in comp.iter().enumerate().skip(a + 1) {
            match g.label(u, v) {
                Label::Infinity => return None,
                Label::Finite(m) if m >= 3 => edges.push((a, b, m)),
                Label::Finite(_) => {}
            }
        }
    }
    if n == 2 {
        let m = edges[0].2;
        return Some((format!("I2({m})"), Some(2 * u128::from(m))));
    }
    // Every connected finite diagram of rank ≥ 3 is a tree.
    if edges.len() != n - 1 {
        return None;
    }
    let mut degree = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for &(a, b, m) in &edges {
        degree[a] += 1;
        degree[b] += 1;
        adj[a].push((b, m));
        adj[b].push((a, m));
    }
    if degree.iter().any(|&d| d > 3) || edges.iter().any(|e| e.2 > 5) {
        return None;
    }
    let branches: Vec<usize> = (0..n).filter(|&v| degree[v] == 3).collect();
    let heavy: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 > 3).collect();
    let rank = n as u32;
    match (branches.len(), heavy.len()) {
        (0, 0) => Some((format!("A_{n}"), factorial(rank + 1))),
        (0, 1) => {
            let (a, b, m) = *heavy[0];
            let at_end = degree[a] == 1 || degree[b] == 1;
            match (m, at_end, n) {
                (4, true, _) => Some((
                    format!("B_{n}"),
                    factorial(rank).and_then(|f| f.checked_mul(1u128 << rank.min(127))),
                )),
                (4, false, 4) => Some(("F4".into(), Some(1152))),
                (5, true, 3) => Some(("H3".into(), Some(120))),
                (5, true, 4) => Some(("H4".into(), Some(14_400))),
                _ => None,
            }
        }
        (1, 0) => {
            let centre = branches[0];
            let mut arms: Vec<usize> = adj[centre]
                .iter()
                .map(|&(start, _)| {
                    let (mut prev, mut cur, mut len) = (centre, start, 1);
                    while degree[cur] == 2 {
                        let next = adj[cur].iter().map(|e| e.0).find(|&x| x != prev)?;
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    Some(len)
                })
                .collect::<Option<Vec<_>>>()?;
            arms.sort_unstable();
            match arms[..] {
                [1, 1, _] => Some((
                    format!("D_{n}"),
                    factorial(rank).and_then(|f| f.checked_mul(1u128 << (rank - 1).min(127))),
                )),
                [1, 2, 2] => Some(("E6".into(), Some(51_840))),
                [1, 2, 3] => Some(("E7".into(), Some(2_903_040))),
                [1, 2, 4] => Some(("E8".into(), Some(696_729_600))),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Irreducible finite types of W_Γ, one per component of Γ^t, or `None`
/// when W_Γ is infinite.
pub fn finite_type_components(g: &DefiningGraph) -> Option<Vec<FiniteComponent>> {
    let all: Vec<Vertex> = (0..g.len()).collect();
    g.coxeter_components(&all)
        .into_iter()
        .map(|comp| {
            recognize_component(g, &comp).map(|(name, order)| FiniteComponent {
                name,
                vertices: g.vertex_set(comp.iter().copied()),
                order,
            })
        })
        .collect()
}

pub fn finite_type_recognize(g: &DefiningGraph) -> Option<Vec<String>> {
    finite_type_components(g).map(|cs| cs.into_iter().map(|c| c.name).collect())
}

/// |W_Γ| when finite and representable.
pub fn coxeter_group_order(g: &DefiningGraph) -> Option<u128> {
    finite_type_components(g)?
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.order?))
}

pub fn is_spherical(g: &DefiningGraph, set: &[Vertex]) -> bool {
    finite_type_components(&g.induced(set)).is_some()
}

/// Maximal cliques of Γ (pairs with finite label), each sorted.
pub fn maximal_cliques(g: &DefiningGraph) -> Vec<Vec<Vertex>> {
    fn extend(
        g: &DefiningGraph,
        r: &mut Vec<Vertex>,
        mut p: Vec<Vertex>,
        mut x: Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p.iter().chain(&x).copied().max_by_key(|&u| {
            p.iter().filter(|&&v| g.adjacent(u, v)).count()
        });
        let candidates: Vec<Vertex> = p
            .iter()
            .copied()
            .filter(|&v| pivot.is_none_or(|u| !g.adjacent(u, v)))
            .collect();
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&u| g.adjacent(u, v)).collect();
            let nx = x.iter().copied().filter(|&u| g.adjacent(u, v)).collect();
            extend(g, r, np, nx, out);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), (0..g.len()).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

fn two_dimensional(g: &DefiningGraph) -> bool {
    let n = g.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let labels = [g.label(a, b), g.label(b, c), g.label(a, c)];
                let ms: Option<Vec<u32>> = labels.iter().map(|l| l.finite()).collect();
                if let Some(ms) = ms {
                    // 1/p + 1/q + 1/r ≤ 1  ⇔  qr + pr + pq ≤ pqr
                    let (p, q, r) = (u64::from(ms[0]), u64::from(ms[1]), u64::from(ms[2]));
                    if q * r + p * r + p * q > p * q * r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn classify(g: &DefiningGraph) -> ClassificationReport {
    let components = finite_type_components(g);
    ClassificationReport {
        spherical: components.is_some(),
        irreducible: g.coxeter_connected(),
        free_of_infinity: g.is_clique(),
        type_fc: maximal_cliques(g).iter().all(|c| is_spherical(g, c)),
        two_dimensional: two_dimensional(g),
        finite_type_name: components
            .as_ref()
            .map(|cs| cs.iter().map(|c| c.name.clone()).collect()),
        finite_components: components,
    }
}

pub fn decide_acyl(g: &DefiningGraph) -> Verdict {
    decide_from_report(&classify(g))
}

pub fn decide_from_report(report: &ClassificationReport) -> Verdict {
    use VerdictStatus::*;
    if !report.irreducible {
        return Verdict {
            status: NotAcylindricallyHyperbolic,
            justifications: vec![Justification::new(
                "Γ^t is disconnected, so A_Γ is reducible",
                citation::REDUCIBLE,
            )],
        };
    }
    if !report.free_of_infinity {
        let mut justifications = vec![Justification::new(
            "Γ is not a clique and Γ^t is connected",
            citation::NON_CLIQUE_EQUIVALENCE,
        )];
        if report.type_fc {
            justifications.push(Justification::new(
                "A_Γ is irreducible, of infinite type and of type FC",
                citation::FC_COROLLARY,
            ));
        }
        return Verdict {
            status: AcylindricallyHyperbolic,
            justifications,
        };
    }
    if report.spherical {
        let names = report.finite_type_name.clone().unwrap_or_default().join(" x ");
        return Verdict {
            status: NotAcylindricallyHyperbolic,
            justifications: vec![Justification::new(
                format!("W_Γ is finite of type {names}, so Z(A_Γ) is infinite cyclic"),
                citation::SPHERICAL_CENTER,
            )],
        };
    }
    Verdict {
        status: Unknown,
        justifications: vec![Justification::new(
            "Γ is a clique with infinite W_Γ and Γ^t connected",
            citation::OPEN_CLIQUE,
        )],
    }
}

/// Center facts for irreducible non-clique graphs.
pub fn center_report(g: &DefiningGraph) -> Result<CenterReport> {
    if !g.coxeter_connected() {
        return Err(Error::Hypothesis(
            "A_Γ is not irreducible: Γ^t is disconnected".into(),
        ));
    }
    if g.is_clique() {
        return Err(Error::Hypothesis("defining graph is a clique".into()));
    }
    let v0 = join_decompose(g).clique_factor.len();
    let mut justifications = vec![Justification::new(
        "Γ is not a clique and Γ^t is connected",
        citation::CENTER_COROLLARY,
    )];
    let trivial = (v0 <= 3).then(|| {
        justifications.push(Justification::new(
            format!("|V(Γ₀)| = {v0}"),
            citation::SMALL_CLIQUE_FACTOR,
        ));
        true
    });
    Ok(CenterReport {
        center_finite: true,
        contained_in_clique_factor_center: true,
        trivial,
        clique_factor_size: v0,
        justifications,
    })
}
