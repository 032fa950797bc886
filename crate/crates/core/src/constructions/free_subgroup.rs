//! A rank-two free subgroup none of whose nontrivial elements lies in a
//! proper parabolic subgroup.
//!
//! For an irreducible `Γ` the complement graph is connected. Round trips in
//! it from a base vertex `v₀` spell a word `W` in which consecutive letters
//! never commute, and `W₁ = v₀ W u₀`, `W₂ = v₀⁻¹ u₀ W u₀⁻¹` span a rose that
//! maps locally isometrically to the Salvetti complex. Joins are handled one
//! irreducible factor at a time and the factor witnesses are multiplied.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::word::{self, GroupElement, Letter, Word};

/// How a witness was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trace {
    Complement {
        u0: usize,
        v0: usize,
        /// `paths[i]` walks the complement graph from `v₀` to the `i`-th vertex of the domain.
        paths: Vec<Vec<usize>>,
        w: Word,
    },
    /// One witness per irreducible join factor.
    Diagonal(Vec<FreePairWitness>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreePairWitness {
    domain: VertexSet,
    w1_word: Word,
    w2_word: Word,
    w1: GroupElement,
    w2: GroupElement,
    trace: Option<Trace>,
}

impl FreePairWitness {
    /// Assembles a witness from explicit words; `verify_*` treat it like any other.
    pub fn new(g: &Graph, domain: VertexSet, w1_word: Word, w2_word: Word, trace: Option<Trace>) -> Result<Self> {
        let w1 = word::reduce(g, &w1_word)?;
        let w2 = word::reduce(g, &w2_word)?;
        Ok(FreePairWitness {
            domain,
            w1_word,
            w2_word,
            w1,
            w2,
            trace,
        })
    }

    /// Vertices the generated subgroup is expected to fill.
    pub fn domain(&self) -> VertexSet {
        self.domain
    }

    pub fn w1(&self) -> &GroupElement {
        &self.w1
    }

    pub fn w2(&self) -> &GroupElement {
        &self.w2
    }

    pub fn w1_word(&self) -> &Word {
        &self.w1_word
    }

    pub fn w2_word(&self) -> &Word {
        &self.w2_word
    }

    pub fn trace(&self) -> Option<&Trace> {
        self.trace.as_ref()
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.trace, Some(Trace::Diagonal(_)))
    }
}

pub fn full_support_free(g: &Graph) -> Result<FreePairWitness> {
    let d = g.de_rham(g.vertices())?;
    if !d.clique_factor.is_empty() {
        return Err(Error::CliqueFactor);
    }
    if let [only] = d.irreducible_factors[..] {
        return complement_witness(g, only);
    }
    let factors = d
        .irreducible_factors
        .iter()
        .map(|&s| complement_witness(g, s))
        .collect::<Result<Vec<_>>>()?;
    let mut w1 = Word::new();
    let mut w2 = Word::new();
    for f in &factors {
        w1.extend_from(&f.w1_word);
        w2.extend_from(&f.w2_word);
    }
    FreePairWitness::new(g, g.vertices(), w1, w2, Some(Trace::Diagonal(factors)))
}

/// The construction on the induced subgraph `s`, whose complement must be connected.
fn complement_witness(g: &Graph, s: VertexSet) -> Result<FreePairWitness> {
    let non_adjacent = |a: usize, b: usize| a != b && !g.adjacent(a, b);
    let (u0, v0) = s
        .iter()
        .flat_map(|i| s.iter().filter(move |&j| j > i).map(move |j| (i, j)))
        .find(|&(i, j)| non_adjacent(i, j))
        .ok_or(Error::CliqueFactor)?;

    let mut parent = vec![usize::MAX; g.vertex_count()];
    parent[v0] = v0;
    let mut queue = VecDeque::from([v0]);
    while let Some(x) = queue.pop_front() {
        for y in s.iter() {
            if parent[y] == usize::MAX && non_adjacent(x, y) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }

    let mut paths = Vec::new();
    let mut w = Word::new();
    for v in s.iter() {
        if parent[v] == usize::MAX {
            return Err(Error::Disconnected);
        }
        let mut path = vec![v];
        while *path.last().unwrap() != v0 {
            let x = *path.last().unwrap();
            path.push(parent[x]);
        }
        path.reverse();
        for &x in path.iter().chain(path.iter().rev().skip(1)) {
            w.push(Letter::pos(x));
        }
        paths.push(path);
    }

    let (u, v) = (Letter::pos(u0), Letter::pos(v0));
    let mut w1 = Word::from_letters(vec![v]);
    w1.extend_from(&w);
    w1.push(u);
    let mut w2 = Word::from_letters(vec![v.inverse(), u]);
    w2.extend_from(&w);
    w2.push(u.inverse());
    FreePairWitness::new(g, s, w1, w2, Some(Trace::Complement { u0, v0, paths, w }))
}

/// A path entering along `x` may leave along `y` iff this is neither a
/// backtrack nor a corner of a square.
fn legal_turn(g: &Graph, x: Letter, y: Letter) -> bool {
    y != x.inverse() && (x.generator() == y.generator() || !g.adjacent(x.generator(), y.generator()))
}

/// The turn condition for the rose spelled by `W₁` and `W₂`.
///
/// Inside each word, including the turn from its last letter back to the
/// first, and between any two petals traversed in any directions except
/// straight back.
pub fn verify_local_isometry(g: &Graph, wit: &FreePairWitness) -> Result<bool> {
    match wit.trace.as_ref().ok_or(Error::MissingTrace)? {
        Trace::Diagonal(factors) => {
            for f in factors {
                if !verify_local_isometry(g, f)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Trace::Complement { .. } => Ok(rose_is_locally_geodesic(g, &wit.w1_word, &wit.w2_word)),
    }
}

fn rose_is_locally_geodesic(g: &Graph, w1: &Word, w2: &Word) -> bool {
    let (a, b) = (w1.letters(), w2.letters());
    if a.is_empty() || b.is_empty() {
        return false;
    }
    for w in [a, b] {
        if !w.windows(2).all(|p| legal_turn(g, p[0], p[1])) {
            return false;
        }
    }
    // (first letter, last letter) of W₁, W₁⁻¹, W₂, W₂⁻¹
    let ends = [
        (a[0], a[a.len() - 1]),
        (a[a.len() - 1].inverse(), a[0].inverse()),
        (b[0], b[b.len() - 1]),
        (b[b.len() - 1].inverse(), b[0].inverse()),
    ];
    for (i, &(_, last)) in ends.iter().enumerate() {
        for (j, &(first, _)) in ends.iter().enumerate() {
            if j != (i ^ 1) && !legal_turn(g, last, first) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSupportReport {
    pub checked: usize,
    /// Offending products, spelled in `W1`, `W2` and their inverses.
    pub failures: Vec<String>,
}

impl FullSupportReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Reduced words in `W₁^{±1}, W₂^{±1}` of syllable length `1..=max`, as indices
/// `2i + inverse`.
pub fn syllable_words(max: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..4u8 {
                if w.last().is_some_and(|&t| t ^ 1 == s) {
                    continue;
                }
                let mut w = w.clone();
                w.push(s);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn spell(w: &[u8]) -> String {
    w.iter()
        .map(|&s| match s {
            0 => "W1",
            1 => "W1^-1",
            2 => "W2",
            _ => "W2^-1",
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Checks every product of at most `max_syllables` syllables has support
/// type equal to the witness domain. For a diagonal witness, each product
/// must also project nontrivially to every factor.
pub fn verify_full_support(g: &Graph, wit: &FreePairWitness, max_syllables: usize) -> FullSupportReport {
    let gens = [
        wit.w1.clone(),
        word::inv(g, &wit.w1),
        wit.w2.clone(),
        word::inv(g, &wit.w2),
    ];
    let factors: Vec<VertexSet> = match &wit.trace {
        Some(Trace::Diagonal(fs)) => fs.iter().map(|f| f.domain).collect(),
        _ => Vec::new(),
    };
    let words = syllable_words(max_syllables);
    let mut failures: Vec<(usize, String)> = words
        .par_iter()
        .enumerate()
        .filter_map(|(i, w)| {
            let x = word::mul_all(g, w.iter().map(|&s| &gens[s as usize]));
            let full = word::cyclic_reduce(g, &x).core_letters == wit.domain;
            let projections_ok = factors.iter().all(|&f| {
                x.letters().iter().any(|l| f.contains(l.generator()))
            });
            (!(full && projections_ok)).then(|| (i, spell(w)))
        })
        .collect();
    failures.sort();
    FullSupportReport {
        checked: words.len(),
        failures: failures.into_iter().map(|(_, s)| s).collect(),
    }
}
