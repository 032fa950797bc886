//! Edge-labelled graphs of finite groups and the quantities that decide
//! whether they describe a lattice acting on the 4-valent tree.
//!
//! Groups are recorded by order only. The valence of the Bass–Serre tree at
//! a lift of `x`, restricted to a label, is `Σ α_x / β_e` over the incident
//! edges with that label, a loop counting twice.
//!
//! Text format, one item per line, `#` starts a comment:
//!
//! ```text
//! gvertex <id> <order>
//! gedge <id> <id> <a|b> <order>
//! tail <labels> <formula> [caps]
//! ```
//!
//! Orders are `N`, `2^N` or `N*2^N`. A tail adds a ray `t0 - t1 - t2 - …`
//! whose `k`-th edge has label `labels[k mod len]`, with vertex and edge
//! orders `α_k = c·r^k` given by the formula `c*r^k`, `r^k` or `c`. With
//! `caps`, every `t_k` also gets a neighbour `c_k` of order `2α_k` joined by
//! an edge of order `α_k` with the label of the outgoing ray edge, and `c_k`
//! carries a loop of order `2α_k` with the other label. Edges may mention
//! tail vertices by id.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    A,
    B,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::A, Label::B];

    pub fn other(self) -> Label {
        match self {
            Label::A => Label::B,
            Label::B => Label::A,
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    fn parse(c: char) -> Option<Label> {
        match c {
            'a' => Some(Label::A),
            'b' => Some(Label::B),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::A => "a",
            Label::B => "b",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GogVertex {
    pub id: String,
    pub order: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GogEdge {
    pub ends: (String, String),
    pub label: Label,
    pub order: BigUint,
}

/// `α_k = coefficient · ratio^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tail {
    pub pattern: Vec<Label>,
    pub coefficient: BigUint,
    pub ratio: BigUint,
    pub caps: bool,
}

impl Tail {
    pub fn order(&self, k: usize) -> BigUint {
        &self.coefficient * num_traits::pow(self.ratio.clone(), k)
    }

    fn label(&self, k: usize) -> Label {
        self.pattern[k % self.pattern.len()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphOfGroups {
    pub vertices: Vec<GogVertex>,
    pub edges: Vec<GogEdge>,
    pub tail: Option<Tail>,
}

fn parse_order(s: &str) -> Option<BigUint> {
    let pow2 = |e: &str| e.parse::<usize>().ok().map(|e| BigUint::one() << e);
    let n = match s.split_once('*') {
        Some((c, p)) => s_num(c)? * pow2(p.strip_prefix("2^")?)?,
        None => match s.strip_prefix("2^") {
            Some(e) => pow2(e)?,
            None => s_num(s)?,
        },
    };
    Some(n)
}

fn s_num(s: &str) -> Option<BigUint> {
    s.parse::<BigUint>().ok()
}

/// `c*r^k`, `r^k` or `c`; returns `(c, r)`.
fn parse_formula(s: &str) -> Option<(BigUint, BigUint)> {
    let (c, rest) = match s.split_once('*') {
        Some((c, rest)) => (s_num(c)?, rest),
        None if s.ends_with("^k") => (BigUint::one(), s),
        None => return Some((s_num(s)?, BigUint::one())),
    };
    let r = s_num(rest.strip_suffix("^k")?)?;
    Some((c, r))
}

impl GraphOfGroups {
    pub fn parse(text: &str) -> Result<Self> {
        let mut gog = GraphOfGroups::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::GogParse {
                line: i + 1,
                message: m.to_string(),
            };
            let order = |s: &str| parse_order(s).ok_or_else(|| err(&format!("bad order `{s}`")));
            let tok: Vec<&str> = line.split_whitespace().collect();
            match tok[..] {
                ["gvertex", id, o] => gog.vertices.push(GogVertex {
                    id: id.to_string(),
                    order: order(o)?,
                }),
                ["gedge", x, y, l, o] => {
                    let mut cs = l.chars();
                    let label = match (cs.next().and_then(Label::parse), cs.next()) {
                        (Some(label), None) => label,
                        _ => return Err(err(&format!("label must be `a` or `b`, got `{l}`"))),
                    };
                    gog.edges.push(GogEdge {
                        ends: (x.to_string(), y.to_string()),
                        label,
                        order: order(o)?,
                    });
                }
                ["tail", pattern, formula, ref rest @ ..] => {
                    if gog.tail.is_some() {
                        return Err(err("at most one tail"));
                    }
                    let pattern: Vec<Label> = pattern
                        .chars()
                        .map(Label::parse)
                        .collect::<Option<_>>()
                        .filter(|p: &Vec<Label>| !p.is_empty())
                        .ok_or_else(|| err(&format!("bad label pattern `{pattern}`")))?;
                    let (coefficient, ratio) =
                        parse_formula(formula).ok_or_else(|| err(&format!("bad order formula `{formula}`")))?;
                    let caps = match rest {
                        [] => false,
                        ["caps"] => true,
                        _ => return Err(err("trailing tokens after tail formula")),
                    };
                    gog.tail = Some(Tail {
                        pattern,
                        coefficient,
                        ratio,
                        caps,
                    });
                }
                _ => return Err(err(&format!("unrecognized line `{line}`"))),
            }
        }
        Ok(gog)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("gvertex {} {}\n", v.id, v.order));
        }
        for e in &self.edges {
            out.push_str(&format!("gedge {} {} {} {}\n", e.ends.0, e.ends.1, e.label, e.order));
        }
        if let Some(t) = &self.tail {
            let pattern: String = t.pattern.iter().map(|l| l.to_string()).collect();
            out.push_str(&format!(
                "tail {pattern} {}*{}^k{}\n",
                t.coefficient,
                t.ratio,
                if t.caps { " caps" } else { "" }
            ));
        }
        out
    }

    /// The finite part together with the tail up to `t_depth`. Caps are
    /// added below `t_depth` only, so `t_depth` is the one unfinished vertex.
    pub fn materialize(&self, depth: usize) -> Result<FiniteGog> {
        let mut vertices = self.vertices.clone();
        let mut edges = Vec::new();
        let mut frontier = None;
        if let Some(t) = &self.tail {
            for k in 0..=depth {
                vertices.push(GogVertex {
                    id: format!("t{k}"),
                    order: t.order(k),
                });
            }
            for k in 0..depth {
                let label = t.label(k);
                edges.push(GogEdge {
                    ends: (format!("t{k}"), format!("t{}", k + 1)),
                    label,
                    order: t.order(k),
                });
                if t.caps {
                    let cap = format!("c{k}");
                    let double = t.order(k) * 2u32;
                    vertices.push(GogVertex {
                        id: cap.clone(),
                        order: double.clone(),
                    });
                    edges.push(GogEdge {
                        ends: (format!("t{k}"), cap.clone()),
                        label,
                        order: t.order(k),
                    });
                    edges.push(GogEdge {
                        ends: (cap.clone(), cap),
                        label: label.other(),
                        order: double,
                    });
                }
            }
            frontier = Some(format!("t{depth}"));
        }
        edges.extend(self.edges.iter().cloned());
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::Gog("duplicate vertex id".into()));
        }
        let mut resolved = Vec::with_capacity(edges.len());
        for e in &edges {
            let find = |id: &str| {
                index
                    .get(id)
                    .copied()
                    .ok_or_else(|| Error::Gog(format!("edge mentions unknown vertex `{id}`")))
            };
            resolved.push((find(&e.ends.0)?, find(&e.ends.1)?));
        }
        let frontier = frontier.map(|id| index[id.as_str()]);
        let fin = FiniteGog {
            vertices,
            edges,
            resolved,
            frontier,
        };
        fin.check()?;
        Ok(fin)
    }
}

/// A materialized graph of groups with edge endpoints resolved to indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGog {
    pub vertices: Vec<GogVertex>,
    pub edges: Vec<GogEdge>,
    resolved: Vec<(usize, usize)>,
    /// Last generated tail vertex, whose neighbourhood is incomplete.
    pub frontier: Option<usize>,
}

impl FiniteGog {
    fn check(&self) -> Result<()> {
        if self.vertices.iter().any(|v| v.order.is_zero()) {
            return Err(Error::ZeroOrder);
        }
        for (e, &(x, y)) in self.edges.iter().zip(&self.resolved) {
            if e.order.is_zero() {
                return Err(Error::ZeroOrder);
            }
            for v in [x, y] {
                let vo = &self.vertices[v].order;
                if !(vo % &e.order).is_zero() {
                    return Err(Error::Divisibility {
                        edge: format!("{}-{} {}", e.ends.0, e.ends.1, e.label),
                        edge_order: e.order.to_string(),
                        vertex: self.vertices[v].id.clone(),
                        vertex_order: vo.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Per-label valence of the Bass–Serre tree at a lift of vertex `v`.
    pub fn valence(&self, v: usize) -> [BigUint; 2] {
        let mut out = [BigUint::zero(), BigUint::zero()];
        for (e, &(x, y)) in self.edges.iter().zip(&self.resolved) {
            let index = &self.vertices[v].order / &e.order;
            let hits = usize::from(x == v) + usize::from(y == v);
            out[e.label.index()] += index * hits;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovolumeReport {
    /// Running sums of `1/α_x`, one per vertex of the finite part and then one
    /// per tail step.
    pub partial_sums: Vec<BigRational>,
    pub converged: bool,
    /// The full sum, when finite and known exactly.
    pub closed_form: Option<BigRational>,
}

fn recip(n: &BigUint) -> Result<BigRational> {
    if n.is_zero() {
        return Err(Error::ZeroOrder);
    }
    Ok(BigRational::new(One::one(), n.clone().into()))
}

/// Partial sums of `Σ 1/α_x`, taking `n_terms` steps of the tail.
pub fn serre_covolume(gog: &GraphOfGroups, n_terms: usize) -> Result<CovolumeReport> {
    let mut partial_sums = Vec::new();
    let mut acc = BigRational::zero();
    for v in &gog.vertices {
        acc += recip(&v.order)?;
        partial_sums.push(acc.clone());
    }
    let Some(t) = &gog.tail else {
        return Ok(CovolumeReport {
            partial_sums,
            converged: true,
            closed_form: Some(acc),
        });
    };
    if n_terms == 0 {
        return Err(Error::Gog("a parametric tail needs at least one term".into()));
    }
    let weight = if t.caps {
        BigRational::new(3.into(), 2.into())
    } else {
        BigRational::one()
    };
    for k in 0..n_terms {
        acc += recip(&t.order(k))? * &weight;
        partial_sums.push(acc.clone());
    }
    let converged = t.ratio > BigUint::one();
    let closed_form = converged.then(|| {
        let finite: BigRational = gog
            .vertices
            .iter()
            .map(|v| recip(&v.order).expect("checked above"))
            .sum();
        let r: BigRational = BigRational::from_integer(t.ratio.clone().into());
        let c: BigRational = BigRational::from_integer(t.coefficient.clone().into());
        finite + weight * &r / (c * (&r - BigRational::one()))
    });
    Ok(CovolumeReport {
        partial_sums,
        converged,
        closed_form,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexValence {
    pub id: String,
    pub per_label: [u64; 2],
    pub total: u64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValenceReport {
    pub vertices: Vec<VertexValence>,
    /// Vertex left out because its neighbourhood is not generated yet.
    pub skipped: Option<String>,
}

impl ValenceReport {
    pub fn passed(&self) -> bool {
        self.vertices.iter().all(|v| v.passed)
    }
}

/// Tail depth used by [`validate_bass_serre_valence`].
pub const DEFAULT_TAIL_DEPTH: usize = 8;

pub fn validate_bass_serre_valence(gog: &GraphOfGroups, target_valence: u64, per_label: u64) -> Result<ValenceReport> {
    validate_bass_serre_valence_to_depth(gog, target_valence, per_label, DEFAULT_TAIL_DEPTH)
}

pub fn validate_bass_serre_valence_to_depth(
    gog: &GraphOfGroups,
    target_valence: u64,
    per_label: u64,
    depth: usize,
) -> Result<ValenceReport> {
    let fin = gog.materialize(depth)?;
    let vertices = (0..fin.vertices.len())
        .filter(|&v| Some(v) != fin.frontier)
        .map(|v| {
            let [a, b] = fin.valence(v).map(|x| x.to_u64().unwrap_or(u64::MAX));
            VertexValence {
                id: fin.vertices[v].id.clone(),
                per_label: [a, b],
                total: a.saturating_add(b),
                passed: a == per_label && b == per_label && a.saturating_add(b) == target_valence,
            }
        })
        .collect();
    Ok(ValenceReport {
        vertices,
        skipped: fin.frontier.map(|v| fin.vertices[v].id.clone()),
    })
}

/// A graph of groups in the style of the non-finitely-generated lattices of
/// the 4-valent tree: a ray with vertex groups of order `2^{k+1}` and
/// alternating labels, capped so every vertex has valence two per label.
/// The covolume is `3/2`.
pub fn four_valent_family() -> GraphOfGroups {
    GraphOfGroups::parse("gedge t0 t0 b 2\ntail ab 2*2^k caps\n").expect("well-formed")
}

/// Partial sums displayed as `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
