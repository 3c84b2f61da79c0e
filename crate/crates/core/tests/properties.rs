use std::collections::BTreeSet;

use artinacyl::cert::{certify, CheckStatus};
use artinacyl::graph::{join_decompose, Label};
use artinacyl::wpd::build_gamma;
use artinacyl::{CoxeterSystem, DefiningGraph};
use proptest::prelude::*;

/// Labels per pair in upper-triangular order; 0 stands for ∞.
fn build(n: usize, labels: &[u32]) -> DefiningGraph {
    let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if labels[k] != 0 {
                edges.push((names[a].as_str(), names[b].as_str(), labels[k]));
            }
            k += 1;
        }
    }
    DefiningGraph::new(&names, &edges).unwrap()
}

fn graph(max_n: usize, alphabet: Vec<u32>) -> impl Strategy<Value = DefiningGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::sample::select(alphabet.clone()), pairs)
            .prop_map(move |labels| build(n, &labels))
    })
}

fn graph_and_word(max_n: usize, max_len: usize) -> impl Strategy<Value = (DefiningGraph, Vec<usize>)> {
    graph(max_n, vec![2, 3, 4, 5, 6, 0]).prop_flat_map(move |g| {
        let n = g.len();
        (Just(g), proptest::collection::vec(0..n, 0..=max_len))
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tits_agrees_with_root_signs((g, w) in graph_and_word(4, 10)) {
        let cox = CoxeterSystem::new(&g);
        let all: Vec<usize> = (0..g.len()).collect();
        let tits = cox.reduce(&w).unwrap();
        let geometric = cox.root_signs(&all).normal_form(&w).unwrap();
        prop_assert_eq!(tits, geometric);
    }

    #[test]
    fn reduction_is_idempotent_and_keeps_parity((g, w) in graph_and_word(4, 12)) {
        let cox = CoxeterSystem::new(&g);
        let r = cox.reduce(&w).unwrap();
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.len() % 2, w.len() % 2);
        prop_assert_eq!(cox.reduce(&r).unwrap(), r.clone());
        prop_assert!(cox.equal(&w, &r).unwrap());
    }

    #[test]
    fn reduced_expressions_share_the_element((g, w) in graph_and_word(3, 7)) {
        let cox = CoxeterSystem::new(&g);
        let r = cox.reduce(&w).unwrap();
        let all = cox.reduced_expressions(&w).unwrap();
        prop_assert!(all.contains(&r.to_vec()));
        for e in &all {
            prop_assert_eq!(e.len(), r.len());
            prop_assert_eq!(cox.reduce(e).unwrap(), r.clone());
        }
        let support: BTreeSet<usize> = r.iter().copied().collect();
        prop_assert_eq!(cox.support(&w).unwrap(), support);
    }

    #[test]
    fn type_a_matches_permutations(n in 1usize..=5, w1 in proptest::collection::vec(0usize..5, 0..12), w2 in proptest::collection::vec(0usize..5, 0..12)) {
        let w1: Vec<usize> = w1.into_iter().map(|s| s % n).collect();
        let w2: Vec<usize> = w2.into_iter().map(|s| s % n).collect();
        let mut labels = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                labels.push(if b == a + 1 { 3 } else { 2 });
            }
        }
        let g = build(n, &labels);
        let perm = |w: &[usize]| {
            let mut p: Vec<usize> = (0..=n).collect();
            for &s in w {
                p.swap(s, s + 1);
            }
            p
        };
        let cox = CoxeterSystem::new(&g);
        prop_assert_eq!(cox.equal(&w1, &w2).unwrap(), perm(&w1) == perm(&w2));
    }

    #[test]
    fn join_decomposition_matches_union_find(g in graph(7, vec![2, 3, 0])) {
        let n = g.len();
        let mut uf = UnionFind((0..n).collect());
        for a in 0..n {
            for b in a + 1..n {
                if g.label(a, b) == Label::Infinity {
                    let (ra, rb) = (uf.find(a), uf.find(b));
                    uf.0[ra] = rb;
                }
            }
        }
        let mut classes = std::collections::BTreeMap::<usize, BTreeSet<usize>>::new();
        for v in 0..n {
            let r = uf.find(v);
            classes.entry(r).or_default().insert(v);
        }
        let d = join_decompose(&g);
        let want_factors: BTreeSet<BTreeSet<usize>> = classes.values().filter(|c| c.len() > 1).cloned().collect();
        let want_v0: BTreeSet<usize> = classes.values().filter(|c| c.len() == 1).flatten().copied().collect();
        let got_factors: BTreeSet<BTreeSet<usize>> = d.factors.iter().map(|f| f.iter().copied().collect()).collect();
        prop_assert_eq!(got_factors, want_factors);
        prop_assert_eq!(d.clique_factor.iter().copied().collect::<BTreeSet<_>>(), want_v0);
        let mut union: Vec<usize> = d.clique_factor.clone();
        union.extend(d.factors.iter().flatten());
        union.sort_unstable();
        prop_assert_eq!(union, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn json_round_trip(g in graph(6, vec![2, 3, 4, 7, 0])) {
        let again = DefiningGraph::from_json(&g.to_json().to_string()).unwrap();
        prop_assert_eq!(again, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificates_pass_on_irreducible_non_cliques(g in graph(5, vec![2, 2, 3, 4, 0])) {
        prop_assume!(!g.is_clique() && g.coxeter_connected());
        let plan = build_gamma(&g).unwrap();
        prop_assert_eq!(plan.walks.len(), plan.factors.len());
        prop_assert_eq!(plan.prefix(0).unwrap().len(), 0);
        prop_assert_eq!(plan.prefix((plan.m + plan.r) * plan.n).unwrap(), plan.gamma.as_slice());
        let cert = certify(&g, &plan).unwrap();
        let failed: Vec<&str> = cert.checks.iter().filter(|c| c.status == CheckStatus::Fail).map(|c| c.name.as_str()).collect();
        prop_assert!(failed.is_empty(), "failed checks {:?}", failed);
    }
}
