//! Root-sign arithmetic in the contragredient of the geometric representation.
//!
//! For `x = w·ρ` with ρ = (1, …, 1) in the fundamental chamber, the
//! coordinate `x_s` is the coefficient sum of the root `w⁻¹α_s`. So `s` is a
//! left descent of `w` exactly when `x_s < 0`. Coefficient sums of roots are
//! never in (-1, 1), which leaves a wide margin for the floating point sign
//! test; a value inside (-½, ½) is reported instead of trusted.
//!
//! Peeling off the least left descent repeatedly spells the lexicographically
//! least reduced word, so elements come out already in normal form, and
//! generating each element only from the parent obtained by removing its least
//! left descent visits every element exactly once.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::graph::Vertex;

use super::{CoxNormalForm, CoxeterSystem};

const GUARD: f64 = 0.5;

/// The reflection representation of a standard parabolic W_U.
#[derive(Clone, Debug)]
pub struct RootSigns {
    /// Global vertex of each local generator, ascending.
    gens: Vec<Vertex>,
    /// Row-major 2B(α_s, α_t) = −2cos(π/m(s,t)).
    form: Vec<f64>,
}

/// Breadth-first ball, layers in shortlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub elements: Vec<CoxNormalForm>,
    /// The closure finished: `elements` is the whole (finite) group.
    pub saturated: bool,
    /// Every element of length ≤ this radius is present.
    pub complete_radius: usize,
}

/// Element count of a sphere-by-sphere sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Census {
    /// Exact group order when saturated, otherwise `cap + 1`.
    pub count: usize,
    pub saturated: bool,
}

fn twice_cos_pi_over(m: Option<u32>) -> f64 {
    match m {
        None => 2.0,
        Some(1) => -2.0,
        Some(2) => 0.0,
        Some(3) => 1.0,
        Some(4) => std::f64::consts::SQRT_2,
        Some(6) => 3f64.sqrt(),
        Some(m) => 2.0 * (PI / f64::from(m)).cos(),
    }
}

impl RootSigns {
    pub fn new(system: &CoxeterSystem, gens: &[Vertex]) -> Self {
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let n = gens.len();
        let mut form = vec![0.0; n * n];
        for (a, &s) in gens.iter().enumerate() {
            for (b, &t) in gens.iter().enumerate() {
                form[a * n + b] = if a == b {
                    2.0
                } else {
                    -twice_cos_pi_over(system.order(s, t))
                };
            }
        }
        RootSigns { gens, form }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Vertex] {
        &self.gens
    }

    fn local(&self, v: Vertex) -> Option<usize> {
        self.gens.binary_search(&v).ok()
    }

    #[inline]
    fn reflect(&self, s: usize, x: &mut [f64]) {
        let n = self.rank();
        let xs = x[s];
        let row = &self.form[s * n..(s + 1) * n];
        for (xt, c) in x.iter_mut().zip(row) {
            *xt -= c * xs;
        }
    }

    #[inline]
    fn sign(&self, value: f64) -> Result<bool> {
        if value.abs() < GUARD || !value.is_finite() {
            return Err(Error::Numerical(format!(
                "root coefficient sum {value} lost its margin"
            )));
        }
        Ok(value < 0.0)
    }

    /// Least local generator `s` with `x_s < 0`.
    fn least_descent(&self, x: &[f64]) -> Result<Option<usize>> {
        for (s, &v) in x.iter().enumerate() {
            if self.sign(v)? {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    /// w·ρ for a word over this parabolic's generators.
    fn act(&self, word: &[Vertex]) -> Result<Vec<f64>> {
        let mut x = vec![1.0; self.rank()];
        for &v in word.iter().rev() {
            let s = self.local(v).ok_or_else(|| {
                Error::Malformed(format!("letter {v} is outside the parabolic"))
            })?;
            self.reflect(s, &mut x);
        }
        Ok(x)
    }

    /// Normal form through root signs: a second word-problem solver.
    pub fn normal_form(&self, word: &[Vertex]) -> Result<CoxNormalForm> {
        let mut x = self.act(word)?;
        let mut out = Vec::new();
        while let Some(s) = self.least_descent(&x)? {
            out.push(self.gens[s]);
            self.reflect(s, &mut x);
            if out.len() > word.len() {
                return Err(Error::Numerical("descent walk did not terminate".into()));
            }
        }
        Ok(CoxNormalForm::trusted(out))
    }

    /// Word length of the element of `word`.
    pub fn length(&self, word: &[Vertex]) -> Result<usize> {
        Ok(self.normal_form(word)?.len())
    }

    /// If `s·x` is a new element whose least left descent is `s`, returns it.
    fn canonical_child(&self, x: &[f64], s: usize) -> Result<Option<Vec<f64>>> {
        if self.sign(x[s])? {
            return Ok(None);
        }
        let mut y = x.to_vec();
        self.reflect(s, &mut y);
        for &v in &y[..s] {
            if self.sign(v)? {
                return Ok(None);
            }
        }
        Ok(Some(y))
    }

    /// Layered enumeration; stops at `max_len` if given, and never returns
    /// more than `cap` elements (the last layer may be partial).
    pub fn ball(&self, max_len: Option<usize>, cap: usize) -> Result<Ball> {
        let cap = cap.max(1);
        let n = self.rank();
        let mut elements = vec![CoxNormalForm::identity()];
        let mut layer: Vec<(Vec<f64>, Vec<Vertex>)> = vec![(vec![1.0; n], Vec::new())];
        let mut radius = 0;
        loop {
            if max_len == Some(radius) {
                // Saturated only if nothing lies beyond.
                let beyond = self.next_layer(&layer, Some(1))?;
                return Ok(Ball {
                    elements,
                    saturated: beyond.is_empty(),
                    complete_radius: radius,
                });
            }
            let room = cap - elements.len();
            // One extra element tells a full-but-closed group from a capped one.
            let next = self.next_layer(&layer, Some(room + 1))?;
            if next.is_empty() {
                return Ok(Ball {
                    elements,
                    saturated: true,
                    complete_radius: radius,
                });
            }
            if next.len() > room {
                elements.extend(
                    next.into_iter()
                        .take(room)
                        .map(|(_, w)| CoxNormalForm::trusted(w)),
                );
                return Ok(Ball {
                    elements,
                    saturated: false,
                    complete_radius: radius,
                });
            }
            // The layer fits; it might still have been truncated at room + 1.
            let full = self.next_layer(&layer, None)?;
            if full.len() > room {
                elements.extend(
                    full.into_iter()
                        .take(room)
                        .map(|(_, w)| CoxNormalForm::trusted(w)),
                );
                return Ok(Ball {
                    elements,
                    saturated: false,
                    complete_radius: radius,
                });
            }
            elements.extend(full.iter().map(|(_, w)| CoxNormalForm::trusted(w.clone())));
            layer = full;
            radius += 1;
        }
    }

    fn next_layer(
        &self,
        layer: &[(Vec<f64>, Vec<Vertex>)],
        limit: Option<usize>,
    ) -> Result<Vec<(Vec<f64>, Vec<Vertex>)>> {
        let mut next = Vec::new();
        for s in 0..self.rank() {
            for (x, word) in layer {
                if let Some(y) = self.canonical_child(x, s)? {
                    let mut w = Vec::with_capacity(word.len() + 1);
                    w.push(self.gens[s]);
                    w.extend_from_slice(word);
                    next.push((y, w));
                    if limit.is_some_and(|l| next.len() >= l) {
                        return Ok(next);
                    }
                }
            }
        }
        Ok(next)
    }

    /// Counts elements sphere by sphere, keeping only the current sphere's
    /// vectors; stops once the count exceeds `cap`. Breadth-first order keeps
    /// coordinates at the size of the ball radius, where depth-first walks in
    /// hyperbolic groups overflow.
    pub fn census(&self, cap: usize) -> Result<Census> {
        let n = self.rank();
        let mut sphere: Vec<f64> = vec![1.0; n];
        let mut next: Vec<f64> = Vec::new();
        let mut count = 1usize;
        while !sphere.is_empty() {
            next.clear();
            for x in sphere.chunks_exact(n) {
                'gens: for s in 0..n {
                    if self.sign(x[s])? {
                        continue;
                    }
                    let start = next.len();
                    next.extend_from_slice(x);
                    self.reflect(s, &mut next[start..]);
                    for t in 0..s {
                        if self.sign(next[start + t])? {
                            next.truncate(start);
                            continue 'gens;
                        }
                    }
                    count += 1;
                    if count > cap {
                        return Ok(Census {
                            count,
                            saturated: false,
                        });
                    }
                }
            }
            std::mem::swap(&mut sphere, &mut next);
        }
        Ok(Census {
            count,
            saturated: true,
        })
    }
}
