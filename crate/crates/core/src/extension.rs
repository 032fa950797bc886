//! Finite balls of the extension graph `Γ^e`.
//!
//! A vertex is the cyclic parabolic `rep · ⟨v⟩ · rep⁻¹`, stored with `rep`
//! reduced modulo the centralizer `G_{st(v)}`. Balls are generated by
//! conjugator length, not by distance in `Γ^e`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::parabolic::{self, Parabolic};
use crate::word::{self, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtVertex {
    base: usize,
    rep: GroupElement,
}

impl ExtVertex {
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }

    /// The conjugated generator `rep · v · rep⁻¹`.
    pub fn generator(&self, g: &Graph) -> GroupElement {
        let v = word::generator(g, self.base).expect("base within graph");
        word::conjugate(g, &self.rep, &v)
    }

    pub fn as_parabolic(&self, g: &Graph) -> Parabolic {
        parabolic::make_parabolic(g, crate::graph::VertexSet::singleton(self.base), &self.rep)
    }

    pub fn display(&self, g: &Graph) -> String {
        format!("({}, \"{}\")", g.name(self.base), word::format_element(g, &self.rep))
    }
}

impl PartialOrd for ExtVertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shorter conjugators first, then normal form, then base vertex.
impl Ord for ExtVertex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rep.len(), &self.rep, self.base).cmp(&(other.rep.len(), &other.rep, other.base))
    }
}

pub fn ext_vertex(g: &Graph, v: usize, conj: &GroupElement) -> Result<ExtVertex> {
    let st = g.star(v)?;
    Ok(ExtVertex {
        base: v,
        rep: word::gate_right(g, conj, st),
    })
}

/// `h · x`.
pub fn translate(g: &Graph, h: &GroupElement, x: &ExtVertex) -> ExtVertex {
    ExtVertex {
        base: x.base,
        rep: word::gate_right(g, &word::mul(g, h, &x.rep), g.st(x.base)),
    }
}

/// Whether two distinct vertices commute. Equal vertices are not adjacent.
pub fn ext_adjacent(g: &Graph, x: &ExtVertex, y: &ExtVertex) -> bool {
    x != y && word::commutator(g, &x.generator(g), &y.generator(g)).is_identity()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtBall {
    /// Sorted by [`ExtVertex`]'s ordering.
    pub vertices: Vec<ExtVertex>,
    /// Index pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub radius: usize,
}

impl ExtBall {
    /// DOT rendering with vertices labelled `base|rep`.
    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::from("graph extension {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!(
                "  n{i} [label=\"{}|{}\"];\n",
                g.name(v.base),
                word::format_element(g, &v.rep)
            ));
        }
        for (i, j) in &self.edges {
            out.push_str(&format!("  n{i} -- n{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// `{ext_vertex(v, c) : v ∈ VΓ, |c| ≤ radius}`, deduplicated and sorted.
pub fn ext_ball_vertices(g: &Graph, radius: usize) -> Result<Vec<ExtVertex>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let conjugators = word::ball(g, radius);
    let set: BTreeSet<ExtVertex> = conjugators
        .par_iter()
        .flat_map_iter(|c| {
            (0..g.vertex_count()).map(move |v| ExtVertex {
                base: v,
                rep: word::gate_right(g, c, g.st(v)),
            })
        })
        .collect();
    Ok(set.into_iter().collect())
}

pub fn ext_ball(g: &Graph, radius: usize) -> Result<ExtBall> {
    let vertices = ext_ball_vertices(g, radius)?;
    let gens: Vec<GroupElement> = vertices.par_iter().map(|x| x.generator(g)).collect();
    let mut edges: Vec<(usize, usize)> = (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (vertices, gens) = (&vertices, &gens);
            (i + 1..vertices.len()).filter_map(move |j| {
                let (x, y) = (&vertices[i], &vertices[j]);
                (g.adjacent(x.base, y.base) && word::commutator(g, &gens[i], &gens[j]).is_identity())
                    .then_some((i, j))
            })
        })
        .collect();
    edges.sort_unstable();
    Ok(ExtBall {
        vertices,
        edges,
        radius,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedVertexScan {
    pub vertices: Vec<ExtVertex>,
    /// Generators used for `Stab(x) ∩ Stab(y)`.
    pub stabilizer_generators: Vec<GroupElement>,
    /// False when the stabilizer intersection came from a bounded search.
    pub complete: bool,
}

/// Search radius used for the stabilizer intersection when no common conjugator exists.
pub const STABILIZER_SEARCH_RADIUS: usize = 3;

/// Vertices of the radius-`radius` ball fixed by `Stab(x) ∩ Stab(y)`.
///
/// The stabilizer of a vertex of `Γ^e` is its centralizer, a parabolic of type `st(v)`.
pub fn common_fixed_vertices(g: &Graph, x: &ExtVertex, y: &ExtVertex, radius: usize) -> Result<FixedVertexScan> {
    let sx = parabolic::make_parabolic(g, g.st(x.base), &x.rep);
    let sy = parabolic::make_parabolic(g, g.st(y.base), &y.rep);
    let inter = parabolic::intersect_bounded(g, &sx, &sy, STABILIZER_SEARCH_RADIUS);
    let stabilizer_generators = match (&inter.parabolic, inter.complete) {
        (Some(p), true) => parabolic::generators(g, p),
        _ => inter.common_members.clone(),
    };
    let ball = ext_ball_vertices(g, radius)?;
    let vertices = ball
        .into_par_iter()
        .filter(|u| {
            let gu = u.generator(g);
            stabilizer_generators
                .iter()
                .all(|h| word::commutator(g, h, &gu).is_identity())
        })
        .collect::<Vec<_>>();
    Ok(FixedVertexScan {
        vertices,
        stabilizer_generators,
        complete: inter.complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_element;

    fn el(g: &Graph, s: &str) -> GroupElement {
        parse_element(g, s).unwrap()
    }

    #[test]
    fn vertex_canonicalization() {
        let c5 = Graph::cycle(5);
        let x = ext_vertex(&c5, 0, &el(&c5, "v2")).unwrap();
        assert!(x.rep().is_identity());
        let x = ext_vertex(&c5, 0, &el(&c5, "v3")).unwrap();
        assert_eq!(x.rep(), &el(&c5, "v3"));
        assert!(ext_vertex(&c5, 3, &GroupElement::identity()).unwrap().rep().is_identity());
        assert!(ext_vertex(&c5, 9, &GroupElement::identity()).is_err());
    }

    #[test]
    fn adjacency_examples() {
        let c5 = Graph::cycle(5);
        let id = GroupElement::identity();
        let v = |i, c: &str| ext_vertex(&c5, i, &el(&c5, c)).unwrap();
        assert!(ext_adjacent(&c5, &v(0, ""), &v(1, "")));
        assert!(!ext_adjacent(&c5, &v(0, ""), &v(2, "")));
        assert!(!ext_adjacent(&c5, &v(0, ""), &v(0, "v3")));
        assert!(!ext_adjacent(&c5, &v(0, ""), &ext_vertex(&c5, 0, &id).unwrap()));
    }

    #[test]
    fn filter_agrees_with_commutator() {
        let c5 = Graph::cycle(5);
        let vs = ext_ball_vertices(&c5, 1).unwrap();
        for x in &vs {
            for y in &vs {
                if ext_adjacent(&c5, x, y) {
                    assert!(c5.adjacent(x.base(), y.base()));
                }
            }
        }
    }

    #[test]
    fn radius_zero_is_base_copy() {
        let c5 = Graph::cycle(5);
        let b = ext_ball(&c5, 0).unwrap();
        assert_eq!(b.vertices.len(), 5);
        assert_eq!(b.edges, c5.edges().collect::<Vec<_>>());
        let c4 = Graph::parse("vertices: a b c d\nedges: a-b b-c c-d d-a").unwrap();
        let b = ext_ball(&c4, 0).unwrap();
        assert_eq!((b.vertices.len(), b.edges.len()), (4, 4));
        assert!(b.to_dot(&c4).contains("n0 -- n1"));
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(["x", "y"], []).unwrap();
        assert_eq!(ext_ball(&g, 1), Err(Error::Disconnected));
    }

    #[test]
    fn adjacent_pair_has_two_fixed_vertices() {
        let c5 = Graph::cycle(5);
        let id = GroupElement::identity();
        let x = ext_vertex(&c5, 0, &id).unwrap();
        let y = ext_vertex(&c5, 1, &id).unwrap();
        let scan = common_fixed_vertices(&c5, &x, &y, 0).unwrap();
        assert!(scan.complete);
        assert_eq!(scan.vertices, vec![x, y]);
    }
}
