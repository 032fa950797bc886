//! Finite simple graphs: the defining graph of a right-angled Artin group.
//!
//! Vertices are indexed `0..n` in the order they appear in the graph file;
//! that order is the generator order used by every normal form in the crate.
//! Vertex subsets are stored as 64-bit masks, which caps graphs at
//! [`MAX_VERTICES`] vertices.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A subset of the vertices of a graph, always read as an induced subgraph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Canonical join decomposition of an induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub clique_factor: VertexSet,
    /// Irreducible factors, ordered by their smallest vertex.
    pub irreducible_factors: Vec<VertexSet>,
}

impl JoinDecomposition {
    /// Number of nontrivial join pieces: each clique vertex counts separately.
    pub fn join_pieces(&self) -> usize {
        self.clique_factor.len() + self.irreducible_factors.len()
    }
}

/// Result of the transvection scan. `witness = Some((v, w))` means `lk(w) ⊆ st(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransvectionCheck {
    pub transvection_free: bool,
    pub witness: Option<(usize, usize)>,
}

/// Result of the separating-star scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparatingStarCheck {
    pub has_separating_star: bool,
    pub witness: Option<usize>,
}

/// A finite simple graph with ordered, named vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '-' | '^' | ':' | '#'))
}

impl Graph {
    /// Builds a graph from vertex names and edges given by index.
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::GraphParse {
                    line: 0,
                    message: format!("invalid vertex name `{name}`"),
                });
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::GraphParse {
                    line: 0,
                    message: format!("duplicate vertex `{name}`"),
                });
            }
        }
        let mut adj = vec![0u64; names.len()];
        for (u, v) in edges {
            if u >= names.len() {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= names.len() {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::GraphParse {
                    line: 0,
                    message: format!("self-loop at `{}`", names[u]),
                });
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { names, index, adj })
    }

    /// Convenience constructor from names and name pairs.
    pub fn from_named_edges(names: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let lookup = |n: &str| {
            names
                .iter()
                .position(|m| *m == n)
                .ok_or_else(|| Error::UnknownVertex(n.to_string()))
        };
        let edges = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(names.iter().copied(), edges)
    }

    /// The cycle `v1 - v2 - ... - vn - v1`.
    pub fn cycle(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("v{i}"));
        Graph::new(names, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    /// The path `v1 - v2 - ... - vn`.
    pub fn path(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("v{i}"));
        Graph::new(names, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// The complete graph on `v1..vn`.
    pub fn complete(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("v{i}"));
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(names, edges).expect("valid clique")
    }

    /// Parses the line-based graph format:
    ///
    /// ```text
    /// # comment
    /// vertices: a b c d
    /// edges: a-b b-c
    /// edges: c-d d-a
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::GraphParse { line, message };
        let mut names: Option<Vec<String>> = None;
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, rest) = trimmed
                .split_once(':')
                .ok_or_else(|| err(line, format!("malformed line `{trimmed}`")))?;
            match key.trim() {
                "vertices" => {
                    if names.is_some() {
                        return Err(err(line, "second `vertices:` line".into()));
                    }
                    let mut list = Vec::new();
                    for tok in rest.split_whitespace() {
                        if !valid_name(tok) {
                            return Err(err(line, format!("invalid vertex name `{tok}`")));
                        }
                        if index.insert(tok.to_string(), list.len()).is_some() {
                            return Err(err(line, format!("duplicate vertex `{tok}`")));
                        }
                        list.push(tok.to_string());
                    }
                    if list.len() > MAX_VERTICES {
                        return Err(Error::TooManyVertices(list.len()));
                    }
                    names = Some(list);
                }
                "edges" => {
                    if names.is_none() {
                        return Err(err(line, "`edges:` line before `vertices:` line".into()));
                    }
                    for tok in rest.split_whitespace() {
                        let (a, b) = tok
                            .split_once('-')
                            .filter(|(a, b)| !a.is_empty() && !b.is_empty() && !b.contains('-'))
                            .ok_or_else(|| err(line, format!("malformed edge `{tok}`")))?;
                        let u = *index
                            .get(a)
                            .ok_or_else(|| err(line, format!("edge `{tok}` references unknown vertex `{a}`")))?;
                        let v = *index
                            .get(b)
                            .ok_or_else(|| err(line, format!("edge `{tok}` references unknown vertex `{b}`")))?;
                        if u == v {
                            return Err(err(line, format!("self-loop `{tok}`")));
                        }
                        edges.push((u, v));
                    }
                }
                other => return Err(err(line, format!("unknown key `{other}`"))),
            }
        }
        let names = names.ok_or_else(|| err(0, "missing `vertices:` line".into()))?;
        let mut adj = vec![0u64; names.len()];
        for (u, v) in edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { names, index, adj })
    }

    /// Serializes back into the graph file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices: {}\n", self.names.join(" "));
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v)| format!("{}-{}", self.names[u], self.names[v]))
            .collect();
        if !edges.is_empty() {
            out.push_str(&format!("edges: {}\n", edges.join(" ")));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.names.len())
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Parses a whitespace or comma separated list of vertex names.
    pub fn parse_vertex_set(&self, text: &str) -> Result<VertexSet> {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| self.vertex(t))
            .collect()
    }

    pub fn format_set(&self, s: VertexSet) -> String {
        let names: Vec<&str> = s.iter().map(|v| self.name(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbour mask of `v`, unchecked.
    #[inline]
    pub(crate) fn adj_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.names.len())
            .flat_map(move |u| VertexSet(self.adj[u] & !((2u64 << u) - 1)).iter().map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.names.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<()> {
        if s.is_subset(self.vertices()) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(
                s.difference(self.vertices()).first().unwrap_or(0),
            ))
        }
    }

    pub fn link(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v]))
    }

    pub fn star(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v] | 1 << v))
    }

    /// `lk(v)` without a range check.
    #[inline]
    pub(crate) fn lk(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub(crate) fn st(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | 1 << v)
    }

    /// Vertices outside `s` adjacent to every vertex of `s`; `perp(∅) = VΓ`.
    pub fn perp(&self, s: VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        Ok(self.perp_unchecked(s))
    }

    pub(crate) fn perp_unchecked(&self, s: VertexSet) -> VertexSet {
        let mut acc = self.vertices().bits();
        for v in s.iter() {
            acc &= self.adj[v];
        }
        VertexSet(acc & !s.bits())
    }

    /// Connected components of the induced subgraph on `s`, ordered by smallest vertex.
    pub fn components(&self, s: VertexSet) -> Vec<VertexSet> {
        self.components_with(s, |v| self.adj[v])
    }

    /// Connected components of the complement graph restricted to `s`.
    pub fn complement_components(&self, s: VertexSet) -> Vec<VertexSet> {
        self.components_with(s, |v| !self.adj[v] & !(1u64 << v))
    }

    fn components_with(&self, s: VertexSet, nbrs: impl Fn(usize) -> u64) -> Vec<VertexSet> {
        let mut left = s.bits();
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = nbrs(v) & s.bits() & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            left &= !comp;
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(self.vertices()).len() <= 1
    }

    /// de Rham decomposition of the induced subgraph on `s`: the clique factor
    /// collects the singleton components of the complement graph, the other
    /// complement components are the irreducible factors.
    pub fn de_rham(&self, s: VertexSet) -> Result<JoinDecomposition> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut clique_factor = VertexSet::EMPTY;
        let mut irreducible_factors = Vec::new();
        for comp in self.complement_components(s) {
            if comp.len() == 1 {
                clique_factor = clique_factor.union(comp);
            } else {
                irreducible_factors.push(comp);
            }
        }
        Ok(JoinDecomposition {
            clique_factor,
            irreducible_factors,
        })
    }

    /// Whether the standard subcomplex of type `s` sits inside a join
    /// standard subcomplex: either `perp(s) ≠ ∅` or `s` itself splits as a join.
    pub fn contained_in_join(&self, s: VertexSet) -> Result<bool> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(!self.perp_unchecked(s).is_empty() || self.complement_components(s).len() >= 2)
    }

    /// Scans ordered pairs of distinct vertices for `lk(w) ⊆ st(v)`.
    /// The witness is the first hit with `w` as the outer loop variable.
    pub fn transvection_check(&self) -> TransvectionCheck {
        for w in 0..self.vertex_count() {
            for v in 0..self.vertex_count() {
                if v != w && self.lk(w).is_subset(self.st(v)) {
                    return TransvectionCheck {
                        transvection_free: false,
                        witness: Some((v, w)),
                    };
                }
            }
        }
        TransvectionCheck {
            transvection_free: true,
            witness: None,
        }
    }

    pub fn is_transvection_free(&self) -> bool {
        self.transvection_check().transvection_free
    }

    /// A star is separating when removing it leaves at least two components.
    pub fn separating_star_check(&self) -> Result<SeparatingStarCheck> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        for v in 0..self.vertex_count() {
            let rest = self.vertices().difference(self.st(v));
            if self.components(rest).len() >= 2 {
                return Ok(SeparatingStarCheck {
                    has_separating_star: true,
                    witness: Some(v),
                });
            }
        }
        Ok(SeparatingStarCheck {
            has_separating_star: false,
            witness: None,
        })
    }

    pub fn has_separating_star(&self) -> Result<bool> {
        Ok(self.separating_star_check()?.has_separating_star)
    }

    /// Finiteness of `Out(G_Γ)`: transvection-free and no separating star.
    pub fn finite_out(&self) -> Result<bool> {
        let sep = self.has_separating_star()?;
        Ok(self.is_transvection_free() && !sep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::parse("vertices: a b c d\nedges: a-b b-c c-d d-a").unwrap()
    }

    fn k2() -> Graph {
        Graph::parse("vertices: a b\nedges: a-b").unwrap()
    }

    fn set(g: &Graph, names: &str) -> VertexSet {
        g.parse_vertex_set(names).unwrap()
    }

    #[test]
    fn parses_examples() {
        let k2 = k2();
        assert_eq!(k2.vertex_count(), 2);
        assert_eq!(k2.edge_count(), 1);
        let c5 = Graph::parse("vertices: v1 v2 v3 v4 v5\nedges: v1-v2 v2-v3 v3-v4 v4-v5 v5-v1").unwrap();
        assert_eq!(c5, Graph::cycle(5));
        let with_comments = "# pentagon\n\nvertices: v1 v2 v3 v4 v5\nedges: v1-v2 v2-v3\n# more\nedges: v3-v4 v4-v5 v5-v1\n";
        assert_eq!(Graph::parse(with_comments).unwrap(), c5);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = Graph::parse("vertices: a\nedges: a-a").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 2, ref message } if message.contains("self-loop")));
        let e = Graph::parse("vertices: a a").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 1, ref message } if message.contains("duplicate")));
        let e = Graph::parse("# x\nvertices: a b\nedges: a-c").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 3, ref message } if message.contains("unknown")));
        let e = Graph::parse("vertices: a b\nedges: ab").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 2, .. }));
        let e = Graph::parse("vertices: a b\nfoo bar").unwrap_err();
        assert!(matches!(e, Error::GraphParse { line: 2, .. }));
        assert!(Graph::parse("edges: a-b").is_err());
        assert!(Graph::parse("").is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = c4();
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn links_and_stars() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.link(0).unwrap(), VertexSet::from_iter([1, 4]));
        assert_eq!(c5.star(0).unwrap(), VertexSet::from_iter([0, 1, 4]));
        let k2 = k2();
        assert_eq!(k2.link(0).unwrap(), set(&k2, "b"));
        assert_eq!(k2.star(0).unwrap(), set(&k2, "a b"));
        let c4 = c4();
        assert_eq!(c4.link(0).unwrap(), set(&c4, "b d"));
        assert_eq!(c4.star(0).unwrap(), set(&c4, "a b d"));
        assert!(matches!(c5.link(7), Err(Error::VertexOutOfRange(7))));
    }

    #[test]
    fn perp_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.perp(VertexSet::singleton(0)).unwrap(), c5.link(0).unwrap());
        assert_eq!(c5.perp(VertexSet::from_iter([0, 1])).unwrap(), VertexSet::EMPTY);
        assert_eq!(c5.perp(VertexSet::EMPTY).unwrap(), c5.vertices());
        let c4 = c4();
        assert_eq!(c4.perp(set(&c4, "a c")).unwrap(), set(&c4, "b d"));
    }

    #[test]
    fn de_rham_examples() {
        let c4 = c4();
        let d = c4.de_rham(c4.vertices()).unwrap();
        assert_eq!(d.clique_factor, VertexSet::EMPTY);
        assert_eq!(d.irreducible_factors, vec![set(&c4, "a c"), set(&c4, "b d")]);
        let c5 = Graph::cycle(5);
        let d = c5.de_rham(c5.vertices()).unwrap();
        assert_eq!(d.clique_factor, VertexSet::EMPTY);
        assert_eq!(d.irreducible_factors, vec![c5.vertices()]);
        let k2 = k2();
        let d = k2.de_rham(k2.vertices()).unwrap();
        assert_eq!(d.clique_factor, k2.vertices());
        assert!(d.irreducible_factors.is_empty());
        assert_eq!(c5.de_rham(VertexSet::EMPTY), Err(Error::EmptySet));
    }

    #[test]
    fn join_containment_examples() {
        let c5 = Graph::cycle(5);
        assert!(!c5.contained_in_join(c5.vertices()).unwrap());
        assert!(c5.contained_in_join(VertexSet::singleton(0)).unwrap());
        let c4 = c4();
        assert!(c4.contained_in_join(set(&c4, "a b")).unwrap());
        assert_eq!(c4.contained_in_join(VertexSet::EMPTY), Err(Error::EmptySet));
    }

    #[test]
    fn rigidity_predicates() {
        let c5 = Graph::cycle(5);
        assert!(c5.is_transvection_free());
        assert!(!c5.has_separating_star().unwrap());
        assert!(c5.finite_out().unwrap());

        let c4 = c4();
        let t = c4.transvection_check();
        assert_eq!(t.witness, Some((2, 0)));
        assert!(!c4.finite_out().unwrap());

        let k2 = k2();
        assert_eq!(k2.transvection_check().witness, Some((1, 0)));
        assert!(!k2.has_separating_star().unwrap());

        let p5 = Graph::path(5);
        let s = p5.separating_star_check().unwrap();
        assert_eq!(s.witness, Some(2));
        assert!(!p5.finite_out().unwrap());

        let p3 = Graph::path(3);
        // st(v2) swallows the whole path: empty remainder is not separating
        assert!(!p3.has_separating_star().unwrap());

        let disconnected = Graph::new(["x", "y"], []).unwrap();
        assert_eq!(disconnected.finite_out(), Err(Error::Disconnected));
    }
}
