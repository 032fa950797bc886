//! Parabolic subgroups `g · G_Λ · g⁻¹`.
//!
//! A parabolic is stored as its type `Λ` together with the shortest
//! representative of `g · G_{Λ ∪ Λ⊥}`. Since the normalizer of `G_Λ` is
//! `G_{Λ ∪ Λ⊥}`, two parabolics are equal exactly when both components agree.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::word::{self, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parabolic {
    ptype: VertexSet,
    rep: GroupElement,
}

impl Parabolic {
    pub fn ptype(&self) -> VertexSet {
        self.ptype
    }

    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }

    pub fn is_cyclic(&self) -> bool {
        self.ptype.len() == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.ptype.is_empty()
    }

    /// `ptype=[v1,v2] rep="v3"`.
    pub fn display(&self, g: &Graph) -> String {
        let names: Vec<&str> = self.ptype.iter().map(|v| g.name(v)).collect();
        format!(
            "ptype=[{}] rep=\"{}\"",
            names.join(","),
            word::format_element(g, &self.rep)
        )
    }
}

pub fn make_parabolic(g: &Graph, ptype: VertexSet, conj: &GroupElement) -> Parabolic {
    let normal = ptype.union(g.perp_unchecked(ptype));
    Parabolic {
        ptype,
        rep: word::gate_right(g, conj, normal),
    }
}

pub fn standard(g: &Graph, ptype: VertexSet) -> Parabolic {
    make_parabolic(g, ptype, &GroupElement::identity())
}

pub fn parabolic_equal(p: &Parabolic, q: &Parabolic) -> bool {
    p == q
}

/// `h · P · h⁻¹`.
pub fn conjugate(g: &Graph, h: &GroupElement, p: &Parabolic) -> Parabolic {
    make_parabolic(g, p.ptype, &word::mul(g, h, &p.rep))
}

pub fn member(g: &Graph, p: &Parabolic, x: &GroupElement) -> bool {
    let inner = word::mul_all(g, [&word::inv(g, &p.rep), x, &p.rep]);
    word::member_of_standard(&inner, p.ptype)
}

pub fn normalizer(g: &Graph, p: &Parabolic) -> Parabolic {
    make_parabolic(g, p.ptype.union(g.perp_unchecked(p.ptype)), &p.rep)
}

/// `P⊥ = rep · G_{Λ⊥} · rep⁻¹`.
pub fn perp(g: &Graph, p: &Parabolic) -> Parabolic {
    make_parabolic(g, g.perp_unchecked(p.ptype), &p.rep)
}

pub fn standard_intersection(s1: VertexSet, s2: VertexSet) -> VertexSet {
    s1.intersection(s2)
}

/// Generators `rep · v · rep⁻¹` for `v` in the type.
pub fn generators(g: &Graph, p: &Parabolic) -> Vec<GroupElement> {
    p.ptype
        .iter()
        .map(|v| {
            let gen = word::generator(g, v).expect("type within graph");
            word::conjugate(g, &p.rep, &gen)
        })
        .collect()
}

/// `Q ⊆ P`.
pub fn contains(g: &Graph, p: &Parabolic, q: &Parabolic) -> bool {
    q.ptype.is_subset(p.ptype) && generators(g, q).iter().all(|x| member(g, p, x))
}

/// Centralizer of a cyclic parabolic `⟨rep v rep⁻¹⟩`, which is the parabolic of type `st(v)`.
pub fn centralizer_of_cyclic(g: &Graph, z: &Parabolic) -> Result<Parabolic> {
    if !z.is_cyclic() {
        return Err(Error::NotCyclic(z.ptype.len()));
    }
    let v = z.ptype.first().expect("cyclic");
    Ok(make_parabolic(g, g.st(v), &z.rep))
}

/// Longest possible strict chain of parabolics we certify: `|VΓ| + 1` subgroups.
///
/// Types strictly increase along a strict chain (containment forces type
/// containment, and equal types with containment force equality), so the
/// chain visits at most `|VΓ| + 1` types.
pub fn chain_length_bound(g: &Graph) -> usize {
    g.vertex_count() + 1
}

/// Outcome of [`intersect_bounded`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedIntersection {
    /// The intersection when it could be determined: exactly when `complete`,
    /// otherwise the smallest parabolic among the supports found that contains
    /// every common short member (if one exists).
    pub parabolic: Option<Parabolic>,
    /// Nontrivial common members of length `≤ max_len`.
    pub common_members: Vec<GroupElement>,
    pub complete: bool,
}

/// Intersection of two parabolics.
///
/// When a common conjugator exists after moving each representative within
/// its normalizer, the answer is exact: `k · G_{Λ ∩ Ξ} · k⁻¹`. Otherwise only
/// the common members of the ball of radius `max_len` are reported.
pub fn intersect_bounded(g: &Graph, p: &Parabolic, q: &Parabolic, max_len: usize) -> BoundedIntersection {
    let np = p.ptype.union(g.perp_unchecked(p.ptype));
    let nq = q.ptype.union(g.perp_unchecked(q.ptype));
    let d = word::mul(g, &word::inv(g, &p.rep), &q.rep);
    let (head, rest) = word::split_left_coset(g, &d, np);
    let shortlist = word::ball(g, max_len);
    let common_members: Vec<GroupElement> = shortlist
        .into_par_iter()
        .filter(|x| !x.is_identity() && member(g, p, x) && member(g, q, x))
        .collect();
    if word::member_of_standard(&rest, nq) {
        let k = word::mul(g, &p.rep, &head);
        return BoundedIntersection {
            parabolic: Some(make_parabolic(g, p.ptype.intersection(q.ptype), &k)),
            common_members,
            complete: true,
        };
    }
    let parabolic = if common_members.is_empty() {
        Some(standard(g, VertexSet::EMPTY))
    } else {
        let supports: Vec<Parabolic> = common_members
            .iter()
            .map(|x| {
                let s = word::cyclic_reduce(g, x);
                make_parabolic(g, s.core_letters, &s.conjugator)
            })
            .collect();
        supports
            .iter()
            .filter(|cand| supports.iter().all(|s| contains(g, cand, s)))
            .min_by_key(|cand| cand.ptype.len())
            .cloned()
    };
    BoundedIntersection {
        parabolic,
        common_members,
        complete: false,
    }
}

/// One verified instance of the transvection-free lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaInstance {
    /// Vertex `v_Z` with `Z = ⟨v_Z⟩`.
    pub cyclic_vertex: usize,
    pub ptype: VertexSet,
    /// For noncyclic `P`: a non-adjacent pair inside `type(P) ∩ lk(v_Z)`.
    pub nonabelian_witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LemmaReport {
    pub verified: Vec<LemmaInstance>,
    /// Conjugated copies `h·(Z, P)` re-checked with group-level parabolic arithmetic.
    pub conjugates_checked: usize,
    pub counterexamples: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// For a transvection-free graph, enumerates every standard cyclic `Z = ⟨v⟩`
/// and standard `P = G_Λ` with `st(v) ⊆ Λ ∪ Λ⊥` and checks: cyclic `P`
/// forces `Z = P`; noncyclic `P` has nonabelian `P ∩ Z⊥`. Each instance is
/// also conjugated by every `h` with `|h| ≤ max_len` and re-checked through
/// [`contains`] / [`normalizer`] on genuine (non-standard) parabolics.
pub fn check_transvection_free_lemma(g: &Graph, max_len: usize) -> Result<LemmaReport> {
    let t = g.transvection_check();
    if let Some((v, w)) = t.witness {
        return Err(Error::NotTransvectionFree {
            v: g.name(v).to_string(),
            w: g.name(w).to_string(),
        });
    }
    let conjugators = word::ball(g, max_len);
    let mut report = LemmaReport::default();
    let n = g.vertex_count();
    for v in 0..n {
        for bits in 1..(1u64 << n) {
            let ptype = VertexSet::from_bits(bits);
            let np = ptype.union(g.perp_unchecked(ptype));
            if !g.st(v).is_subset(np) {
                continue;
            }
            let mut witness = None;
            if ptype.len() == 1 {
                if ptype != VertexSet::singleton(v) {
                    report.counterexamples.push(format!(
                        "cyclic P={} differs from Z=<{}>",
                        g.format_set(ptype),
                        g.name(v)
                    ));
                }
            } else {
                let inner = ptype.intersection(g.lk(v));
                witness = inner
                    .iter()
                    .flat_map(|a| inner.iter().map(move |b| (a, b)))
                    .find(|&(a, b)| a < b && !g.adjacent(a, b));
                if witness.is_none() {
                    report.counterexamples.push(format!(
                        "P={} with Z=<{}>: P ∩ Z⊥ is abelian",
                        g.format_set(ptype),
                        g.name(v)
                    ));
                }
            }
            let z = standard(g, VertexSet::singleton(v));
            let p = standard(g, ptype);
            let bad: Vec<String> = conjugators
                .par_iter()
                .filter_map(|h| {
                    let zh = conjugate(g, h, &z);
                    let ph = conjugate(g, h, &p);
                    let zz = centralizer_of_cyclic(g, &zh).expect("cyclic");
                    if !contains(g, &normalizer(g, &ph), &zz) {
                        return Some(format!("conjugate by |h|={} lost containment", h.len()));
                    }
                    if ph.is_cyclic() && zh != ph {
                        return Some(format!("conjugate by |h|={}: cyclic P != Z", h.len()));
                    }
                    None
                })
                .collect();
            report.conjugates_checked += conjugators.len();
            report.counterexamples.extend(bad);
            report.verified.push(LemmaInstance {
                cyclic_vertex: v,
                ptype,
                nonabelian_witness: witness,
            });
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SetwiseReport {
    pub pool_size: usize,
    pub families_checked: usize,
    pub elements_checked: usize,
    /// Pairs (family, g) where `g` stabilises the family setwise but not pointwise.
    pub setwise_fixings: usize,
    pub counterexamples: Vec<String>,
}

impl SetwiseReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Candidate parabolics: every nonempty type, conjugated by every element of length `≤ 1`.
pub fn parabolic_pool(g: &Graph, conj_len: usize) -> Vec<Parabolic> {
    let conjugators = word::ball(g, conj_len);
    let mut seen = HashSet::new();
    let mut pool = Vec::new();
    for bits in 1..(1u64 << g.vertex_count()) {
        let ptype = VertexSet::from_bits(bits);
        for h in &conjugators {
            let p = make_parabolic(g, ptype, h);
            if seen.insert(p.clone()) {
                pool.push(p);
            }
        }
    }
    pool
}

/// For every family of at most `family_size` parabolics from [`parabolic_pool`]
/// and every `h` with `|h| ≤ max_len` stabilising the family as a set, checks
/// that `h` fixes each member.
pub fn check_setwise_pointwise(g: &Graph, family_size: usize, max_len: usize) -> SetwiseReport {
    let pool = parabolic_pool(g, 1);
    let index: HashMap<&Parabolic, usize> = pool.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let elements = word::ball(g, max_len);
    // image[h][i] = index of h·P_i in the pool, or None when it leaves the pool
    let images: Vec<Vec<Option<usize>>> = elements
        .par_iter()
        .map(|h| {
            pool.iter()
                .map(|p| index.get(&conjugate(g, h, p)).copied())
                .collect()
        })
        .collect();
    let mut report = SetwiseReport {
        pool_size: pool.len(),
        elements_checked: elements.len(),
        ..Default::default()
    };
    let families = families(pool.len(), family_size);
    report.families_checked = families.len();
    let results: Vec<(usize, Vec<String>)> = families
        .par_iter()
        .map(|fam| {
            let mut fixings = 0;
            let mut bad = Vec::new();
            for (h, img) in elements.iter().zip(&images) {
                let mapped: Option<Vec<usize>> = fam.iter().map(|&i| img[i]).collect();
                let Some(mut mapped) = mapped else { continue };
                let pointwise = mapped.iter().zip(fam).all(|(a, b)| a == b);
                mapped.sort_unstable();
                if mapped == *fam {
                    fixings += 1;
                    if !pointwise {
                        bad.push(format!(
                            "h={} permutes {:?} without fixing it",
                            word::format_element(g, h),
                            fam.iter().map(|&i| pool[i].display(g)).collect::<Vec<_>>()
                        ));
                    }
                }
            }
            (fixings, bad)
        })
        .collect();
    for (fixings, bad) in results {
        report.setwise_fixings += fixings;
        report.counterexamples.extend(bad);
    }
    report
}

/// Sorted index families of size `1..=k` drawn from `0..n` (the empty family is vacuous).
fn families(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        if current.len() == k {
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}
