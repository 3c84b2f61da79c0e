//! Word problem in the Coxeter quotient W_Γ.
//!
//! [`CoxeterSystem::reduce`] is Tits' algorithm: saturate the current word
//! under braid moves, and as soon as some word in the closure shows two equal
//! adjacent letters, delete them and start over. When the closure is
//! exhausted without such a word, the word is reduced and the closure is the
//! full set of reduced expressions of the element; the normal form is its
//! shortlex-least member.
//!
//! Enumeration of balls and parabolic subgroups goes through the root-sign
//! test of the geometric representation (see [`geometric`]), which is
//! independent of the braid-move machinery and is used to cross-check it.

pub mod geometric;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::ops::Deref;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DefiningGraph, Label, Vertex};

pub use geometric::{Ball, Census, RootSigns};

/// Default cap on the number of words in a braid closure.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Environment variable overriding the default caps.
pub const CAP_ENV: &str = "ARTINACYL_CAP";

/// A word in the generators, as vertex indices.
pub type CoxWord = Vec<Vertex>;

/// Shortlex-least reduced word of a Coxeter group element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoxNormalForm(Vec<Vertex>);

impl CoxNormalForm {
    pub fn identity() -> Self {
        CoxNormalForm(Vec::new())
    }

    /// Wraps a word already known to be the normal form of its element.
    pub(crate) fn trusted(word: Vec<Vertex>) -> Self {
        CoxNormalForm(word)
    }

    pub fn into_word(self) -> Vec<Vertex> {
        self.0
    }
}

impl Deref for CoxNormalForm {
    type Target = [Vertex];
    fn deref(&self) -> &[Vertex] {
        &self.0
    }
}

/// Reads `ARTINACYL_CAP`, ignoring unparsable or zero values.
pub fn cap_from_env() -> Option<usize> {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c > 0)
}

/// Coxeter matrix of a defining graph plus the solver state.
pub struct CoxeterSystem {
    names: Vec<String>,
    /// Row-major m(s,t); 0 encodes ∞, 1 on the diagonal.
    orders: Vec<u32>,
    cap: usize,
    memo: RwLock<HashMap<Vec<u8>, Vec<u8>>>,
}

impl Clone for CoxeterSystem {
    fn clone(&self) -> Self {
        CoxeterSystem {
            names: self.names.clone(),
            orders: self.orders.clone(),
            cap: self.cap,
            memo: RwLock::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("names", &self.names)
            .field("cap", &self.cap)
            .finish()
    }
}

/// Outcome of a membership test in W_{U1}·W_{U2}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductMembership {
    pub member: bool,
    /// Number of products a·b examined.
    pub products_checked: usize,
    pub witness: Option<(CoxNormalForm, CoxNormalForm)>,
}

impl CoxeterSystem {
    pub fn new(g: &DefiningGraph) -> Self {
        let n = g.len();
        let mut orders = vec![0u32; n * n];
        for u in 0..n {
            for v in 0..n {
                orders[u * n + v] = match g.label(u, v) {
                    Label::Finite(m) => m,
                    Label::Infinity => 0,
                };
            }
        }
        CoxeterSystem {
            names: g.names().to_vec(),
            orders,
            cap: cap_from_env().unwrap_or(DEFAULT_CAP),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap.max(1);
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// m(s,t), `None` for ∞.
    pub fn order(&self, s: Vertex, t: Vertex) -> Option<u32> {
        match self.orders[s * self.rank() + t] {
            0 => None,
            m => Some(m),
        }
    }

    fn check_letters(&self, w: &[Vertex]) -> Result<Vec<u8>> {
        w.iter()
            .map(|&v| {
                if v < self.rank() {
                    Ok(v as u8)
                } else {
                    Err(Error::Malformed(format!("letter {v} is not a generator")))
                }
            })
            .collect()
    }

    /// Normal form of the element represented by `w`.
    pub fn reduce(&self, w: &[Vertex]) -> Result<CoxNormalForm> {
        let bytes = self.check_letters(w)?;
        if let Some(hit) = self.memo.read().ok().and_then(|m| m.get(&bytes).cloned()) {
            return Ok(CoxNormalForm(hit.into_iter().map(usize::from).collect()));
        }
        let nf = self.reduce_bytes(&bytes)?;
        if let Ok(mut memo) = self.memo.write() {
            memo.insert(bytes, nf.clone());
        }
        Ok(CoxNormalForm(nf.into_iter().map(usize::from).collect()))
    }

    fn reduce_bytes(&self, w: &[u8]) -> Result<Vec<u8>> {
        let mut current = free_reduce(w);
        'restart: loop {
            if current.len() <= 1 {
                return Ok(current);
            }
            let mut seen: HashSet<Vec<u8>> = HashSet::new();
            let mut queue = VecDeque::new();
            seen.insert(current.clone());
            queue.push_back(current.clone());
            while let Some(word) = queue.pop_front() {
                for i in 0..word.len() - 1 {
                    let Some((next, span)) = self.braid_move(&word, i) else {
                        continue;
                    };
                    let lo = i.saturating_sub(1);
                    let hi = (i + span).min(next.len() - 1);
                    if let Some(p) = (lo..hi).find(|&p| next[p] == next[p + 1]) {
                        let mut shorter = next;
                        shorter.drain(p..p + 2);
                        current = free_reduce(&shorter);
                        continue 'restart;
                    }
                    if seen.insert(next.clone()) {
                        if seen.len() > self.cap {
                            return Err(Error::ResourceLimit {
                                what: "braid-move closure".into(),
                                cap: self.cap,
                            });
                        }
                        queue.push_back(next);
                    }
                }
            }
            return Ok(seen.into_iter().min().unwrap_or_default());
        }
    }

    /// Applies the braid move starting at position `i`, if the alternating
    /// pattern of length m(a,b) starts there. Returns the new word and m.
    fn braid_move(&self, word: &[u8], i: usize) -> Option<(Vec<u8>, usize)> {
        let (a, b) = (word[i], word[i + 1]);
        if a == b {
            return None;
        }
        let m = self.orders[usize::from(a) * self.rank() + usize::from(b)] as usize;
        if m == 0 || i + m > word.len() {
            return None;
        }
        let alternates = (0..m).all(|k| word[i + k] == if k % 2 == 0 { a } else { b });
        if !alternates {
            return None;
        }
        let mut next = word.to_vec();
        for k in 0..m {
            next[i + k] = if k % 2 == 0 { b } else { a };
        }
        Some((next, m))
    }

    /// Equality in W_Γ via normal forms.
    pub fn equal(&self, w1: &[Vertex], w2: &[Vertex]) -> Result<bool> {
        Ok(self.reduce(w1)? == self.reduce(w2)?)
    }

    /// All reduced expressions of the element represented by `w`.
    pub fn reduced_expressions(&self, w: &[Vertex]) -> Result<BTreeSet<CoxWord>> {
        let nf = self.reduce(w)?;
        let start: Vec<u8> = nf.iter().map(|&v| v as u8).collect();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(word) = queue.pop_front() {
            for i in 0..word.len().saturating_sub(1) {
                if let Some((next, _)) = self.braid_move(&word, i) {
                    if seen.insert(next.clone()) {
                        if seen.len() > self.cap {
                            return Err(Error::ResourceLimit {
                                what: "reduced-expression closure".into(),
                                cap: self.cap,
                            });
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(seen
            .into_iter()
            .map(|w| w.into_iter().map(usize::from).collect())
            .collect())
    }

    /// Letter set of any reduced expression of `w`.
    pub fn support(&self, w: &[Vertex]) -> Result<BTreeSet<Vertex>> {
        Ok(self.reduce(w)?.iter().copied().collect())
    }

    /// True iff the element of `w` lies in the standard parabolic W_U.
    pub fn in_parabolic(&self, w: &[Vertex], set: &[Vertex]) -> Result<bool> {
        Ok(self.support(w)?.iter().all(|v| set.contains(v)))
    }

    /// Root-sign representation restricted to `gens`.
    pub fn root_signs(&self, gens: &[Vertex]) -> RootSigns {
        RootSigns::new(self, gens)
    }

    fn all_generators(&self) -> Vec<Vertex> {
        (0..self.rank()).collect()
    }

    /// Breadth-first ball of W_Γ holding at most `cap` elements.
    pub fn enumerate_ball(&self, cap: usize) -> Result<Ball> {
        self.root_signs(&self.all_generators()).ball(None, cap)
    }

    /// All elements of length ≤ `radius`, failing if there are more than `cap`.
    pub fn enumerate_ball_within(&self, radius: usize, cap: usize) -> Result<Ball> {
        let ball = self.root_signs(&self.all_generators()).ball(Some(radius), cap)?;
        if ball.complete_radius < radius && !ball.saturated {
            return Err(Error::ResourceLimit {
                what: format!("ball of radius {radius}"),
                cap,
            });
        }
        Ok(ball)
    }

    /// Ball in the standard parabolic W_U.
    pub fn enumerate_parabolic(&self, set: &[Vertex], cap: usize) -> Result<Ball> {
        self.root_signs(set).ball(None, cap)
    }

    /// Finite parabolic W_U in full, or [`Error::InfiniteParabolic`].
    pub fn finite_parabolic(&self, set: &[Vertex]) -> Result<Vec<CoxNormalForm>> {
        let ball = self.enumerate_parabolic(set, self.cap)?;
        if !ball.saturated {
            return Err(Error::InfiniteParabolic {
                generators: set.iter().map(|&v| self.names[v].clone()).collect(),
                cap: self.cap,
            });
        }
        Ok(ball.elements)
    }

    /// Decides x̄ ∈ W_{U1}·W_{U2} by running through every product a·b.
    pub fn in_product_of_parabolics(
        &self,
        x: &[Vertex],
        u1: &[Vertex],
        u2: &[Vertex],
    ) -> Result<ProductMembership> {
        let left = self.finite_parabolic(u1)?;
        let right = self.finite_parabolic(u2)?;
        let target = self.reduce(x)?;
        let mut checked = 0;
        for a in &left {
            for b in &right {
                checked += 1;
                let product: Vec<Vertex> = a.iter().chain(b.iter()).copied().collect();
                if self.reduce(&product)? == target {
                    return Ok(ProductMembership {
                        member: true,
                        products_checked: checked,
                        witness: Some((a.clone(), b.clone())),
                    });
                }
            }
        }
        Ok(ProductMembership {
            member: false,
            products_checked: checked,
            witness: None,
        })
    }
}

/// Cancels adjacent equal letters (stack-based free reduction).
fn free_reduce(w: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(w.len());
    for &c in w {
        if out.last() == Some(&c) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out
}
