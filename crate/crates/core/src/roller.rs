//! Hyperplanes of the universal cover of the Salvetti complex and eventually
//! periodic combinatorial geodesic rays.
//!
//! The 1-skeleton is the Cayley graph. The edge `(x, x·v)` is dual to the
//! hyperplane with label `v` whose carrier edges are `(x·k, x·k·v)` for
//! `k ∈ G_{lk(v)}`, so a hyperplane is a label plus a coset of `G_{lk(v)}`.
//! Boundary points are only represented by rays `prefix · period^∞`.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::word::{self, GroupElement, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    label: usize,
    coset_rep: GroupElement,
}

impl Hyperplane {
    /// Hyperplane dual to the edge `(base, base · label)`.
    pub fn dual_to_edge(g: &Graph, base: &GroupElement, label: usize) -> Self {
        Hyperplane {
            label,
            coset_rep: word::gate_right(g, base, g.lk(label)),
        }
    }

    pub fn label(&self) -> usize {
        self.label
    }

    pub fn coset_rep(&self) -> &GroupElement {
        &self.coset_rep
    }

    pub fn display(&self, g: &Graph) -> String {
        format!("({}, \"{}\")", g.name(self.label), word::format_element(g, &self.coset_rep))
    }
}

/// Hyperplanes dual to the successive edges of the path spelled by `w` from
/// the identity, with no geodesic requirement.
///
/// A letter `v⁻¹` traverses the edge `(x·v⁻¹, x)` backwards, so its dual
/// hyperplane is computed from the far endpoint.
pub fn edge_path_hyperplanes(g: &Graph, w: &Word) -> Vec<Hyperplane> {
    let mut prefix = GroupElement::identity();
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let step = Word::from_letters(vec![l]);
        let next = word::mul(g, &prefix, &word::reduce_unchecked(g, step.letters()));
        let base = if l.is_inverse() { &next } else { &prefix };
        out.push(Hyperplane::dual_to_edge(g, base, l.generator()));
        prefix = next;
    }
    out
}

/// Hyperplanes crossed by a geodesic word, in order; they are pairwise distinct.
pub fn hyperplanes_crossed(g: &Graph, w: &Word) -> Result<Vec<Hyperplane>> {
    if !word::is_geodesic(g, w) {
        return Err(Error::NotGeodesic);
    }
    Ok(edge_path_hyperplanes(g, w))
}

/// Two distinct hyperplanes cross iff their labels are adjacent and their
/// carriers share a square corner: `rep₁⁻¹ rep₂ ∈ G_{lk(v)} · G_{lk(w)}`.
pub fn crosses(g: &Graph, h1: &Hyperplane, h2: &Hyperplane) -> Result<bool> {
    if h1 == h2 {
        return Err(Error::EqualHyperplanes);
    }
    if !g.adjacent(h1.label, h2.label) {
        return Ok(false);
    }
    let d = word::mul(g, &word::inv(g, &h1.coset_rep), &h2.coset_rep);
    Ok(word::in_double_coset(g, &d, g.lk(h1.label), g.lk(h2.label)))
}

/// Three-valued answer of a bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separation {
    Yes,
    No,
    Unknown,
}

/// Whether no hyperplane crosses both `h1` and `h2`.
///
/// A third hyperplane crossing both must have a label in `lk(v) ∩ lk(w)`, so
/// an empty common link settles the question. Otherwise hyperplanes crossing
/// `h1` are enumerated with carrier offsets of length `≤ radius`.
pub fn strongly_separated_bounded(g: &Graph, h1: &Hyperplane, h2: &Hyperplane, radius: usize) -> Result<Separation> {
    if crosses(g, h1, h2)? {
        return Ok(Separation::No);
    }
    let common = g.lk(h1.label).intersection(g.lk(h2.label));
    if common.is_empty() {
        return Ok(Separation::Yes);
    }
    for k in word::ball(g, radius) {
        if !word::member_of_standard(&k, g.lk(h1.label)) {
            continue;
        }
        let corner = word::mul(g, &h1.coset_rep, &k);
        for u in common.iter() {
            let third = Hyperplane::dual_to_edge(g, &corner, u);
            if third != *h2 && crosses(g, &third, h2)? {
                return Ok(Separation::No);
            }
        }
    }
    Ok(Separation::Unknown)
}

/// Validated eventually periodic ray `prefix · period^∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaySpec {
    prefix: Word,
    period: Word,
    checked_to: usize,
}

impl RaySpec {
    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Largest power of the period for which geodesicity was verified.
    pub fn checked_to(&self) -> usize {
        self.checked_to
    }

    /// The same ray read from `prefix · period^j`.
    pub fn shifted(&self, j: usize) -> RaySpec {
        RaySpec {
            prefix: self.prefix.concat(&self.period.pow(j)),
            period: self.period.clone(),
            checked_to: self.checked_to.saturating_sub(j),
        }
    }
}

pub fn default_k_check(g: &Graph) -> usize {
    2 * g.vertex_count() + 2
}

/// Accepts iff `prefix · period^k_check` is geodesic; otherwise reports the
/// smallest failing power (0 when the prefix itself is not geodesic).
pub fn validate_ray(g: &Graph, prefix: &Word, period: &Word, k_check: usize) -> Result<RaySpec> {
    if period.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    for w in [prefix, period] {
        if let Some(l) = w.letters().iter().find(|l| l.generator() >= g.vertex_count()) {
            return Err(Error::InvalidLetter(l.generator()));
        }
    }
    let mut acc: Vec<Letter> = Vec::new();
    let mut seen = 0usize;
    let mut extend = |acc: &mut Vec<Letter>, w: &Word| {
        for &l in w.letters() {
            acc.push(l);
        }
        seen += w.len();
        word::reduce_letters(g, acc.iter().copied()).len() == seen
    };
    if !extend(&mut acc, prefix) {
        return Err(Error::RayNotGeodesic { power: 0 });
    }
    for k in 1..=k_check {
        if !extend(&mut acc, period) {
            return Err(Error::RayNotGeodesic { power: k });
        }
    }
    Ok(RaySpec {
        prefix: prefix.clone(),
        period: period.clone(),
        checked_to: k_check,
    })
}

/// A standard subcomplex, i.e. a coset `rep · G_stype` with `rep` gate-minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardCoset {
    pub stype: VertexSet,
    pub rep: GroupElement,
}

impl StandardCoset {
    pub fn new(g: &Graph, stype: VertexSet, x: &GroupElement) -> Self {
        StandardCoset {
            stype,
            rep: word::gate_right(g, x, stype),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayClass {
    pub regular: bool,
    /// Smallest standard subcomplex virtually containing the ray. Reported for
    /// regular rays too; only for non-regular ones is it a join subcomplex.
    pub phi: StandardCoset,
}

pub fn classify_ray(g: &Graph, r: &RaySpec) -> RayClass {
    let limit = r.period.support();
    let prefix = word::reduce_unchecked(g, r.prefix.letters());
    RayClass {
        regular: !g.contained_in_join(limit).expect("period is nonempty"),
        phi: StandardCoset::new(g, limit, &prefix),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubrayReport {
    pub phis: Vec<StandardCoset>,
    pub passed: bool,
}

/// Classifies `prefix · period^j` with the same period for `0 ≤ j ≤ shifts`
/// and checks the assigned subcomplex never changes.
pub fn phi_subray_invariance(g: &Graph, r: &RaySpec, shifts: usize) -> SubrayReport {
    let phis: Vec<StandardCoset> = (0..=shifts).map(|j| classify_ray(g, &r.shifted(j)).phi).collect();
    let passed = phis.windows(2).all(|w| w[0] == w[1]);
    SubrayReport { phis, passed }
}
