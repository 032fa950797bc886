//! Brute-force reference implementations used to cross-check the fast
//! algorithms. Nothing here relies on gates or double cosets.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;

use crate::graph::Graph;
use crate::roller::Hyperplane;
use crate::word::{self, GroupElement, Letter};

pub fn alphabet(g: &Graph) -> Vec<Letter> {
    (0..g.vertex_count())
        .flat_map(|v| [Letter::pos(v), Letter::neg(v)])
        .collect()
}

/// Every word of length `≤ max_len`, shortest first.
pub fn all_words(g: &Graph, max_len: usize) -> Vec<Vec<Letter>> {
    let letters = alphabet(g);
    let mut out = vec![vec![]];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for &l in &letters {
                let mut w = out[i].clone();
                w.push(l);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

/// Number of words of length `≤ max_len` over `2n` letters.
pub fn word_count(n: usize, max_len: usize) -> u128 {
    (0..=max_len as u32).map(|k| (2 * n as u128).pow(k)).sum()
}

/// Words with length uniform in `0..=max_len` and uniform letters.
pub fn random_words<R: Rng>(g: &Graph, rng: &mut R, count: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let letters = alphabet(g);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
        })
        .collect()
}

fn commute(g: &Graph, a: Letter, b: Letter) -> bool {
    a.generator() != b.generator() && g.adjacent(a.generator(), b.generator())
}

/// Words reachable from `w` by swapping adjacent commuting letters and
/// deleting adjacent inverse pairs.
pub fn descendants(g: &Graph, w: &[Letter]) -> HashSet<Vec<Letter>> {
    let mut seen = HashSet::from([w.to_vec()]);
    let mut stack = vec![w.to_vec()];
    while let Some(u) = stack.pop() {
        for i in 0..u.len().saturating_sub(1) {
            let (a, b) = (u[i], u[i + 1]);
            let next = if commute(g, a, b) {
                let mut v = u.clone();
                v.swap(i, i + 1);
                v
            } else if b == a.inverse() {
                let mut v = u.clone();
                v.drain(i..i + 2);
                v
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen
}

/// Inserting one inverse pair anywhere.
pub fn insertions(g: &Graph, w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for i in 0..=w.len() {
        for l in alphabet(g) {
            let mut v = w.to_vec();
            v.splice(i..i, [l, l.inverse()]);
            out.push(v);
        }
    }
    out
}

/// The lexicographically least among the shortest descendants.
pub fn least_shortest(class: &HashSet<Vec<Letter>>) -> Vec<Letter> {
    let min = class.iter().map(Vec::len).min().unwrap_or(0);
    class.iter().filter(|w| w.len() == min).min().cloned().unwrap_or_default()
}

/// A word is geodesic iff no letter meets its inverse later with only
/// commuting letters in between.
pub fn naive_is_geodesic(g: &Graph, w: &[Letter]) -> bool {
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[j] == w[i].inverse() {
                return false;
            }
            if !commute(g, w[i], w[j]) {
                break;
            }
        }
    }
    true
}

/// Every crossing pair witnessed by a square with corner in the ball of the
/// given radius: the hyperplanes dual to `(k, kv)` and `(k, kw)` for an edge
/// `v - w` of `Γ`. Pairs are stored in both orders.
pub fn square_corner_crossings(g: &Graph, radius: usize) -> HashSet<(Hyperplane, Hyperplane)> {
    let mut out = HashSet::new();
    for k in word::ball(g, radius) {
        for (v, w) in g.edges() {
            let hv = Hyperplane::dual_to_edge(g, &k, v);
            let hw = Hyperplane::dual_to_edge(g, &k, w);
            out.insert((hv.clone(), hw.clone()));
            out.insert((hw, hv));
        }
    }
    out
}

/// Distinct conjugates `c v c⁻¹` with `|c| ≤ radius` commuting with every
/// vertex of `fixers`.
pub fn fixed_conjugates(g: &Graph, fixers: &[usize], radius: usize) -> BTreeSet<GroupElement> {
    let mut out = BTreeSet::new();
    let fixers: Vec<GroupElement> = fixers.iter().map(|&f| word::generator(g, f).unwrap()).collect();
    for c in word::ball(g, radius) {
        for v in 0..g.vertex_count() {
            let x = word::conjugate(g, &c, &word::generator(g, v).unwrap());
            if fixers.iter().all(|f| word::commutator(g, f, &x).is_identity()) {
                out.insert(x);
            }
        }
    }
    out
}
