//! JSON shapes emitted with `--json`. Words are rendered in the input syntax.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementOut {
    pub normal_form: String,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicOut {
    pub ptype: Vec<String>,
    pub rep: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportOut {
    pub conjugator: String,
    pub core: String,
    pub support: ParabolicOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCheckOut {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub transvection_free: bool,
    /// `(v, w)` with `lk(w) ⊆ st(v)`.
    pub transvection_witness: Option<(String, String)>,
    /// Absent for disconnected graphs.
    pub separating_star: Option<bool>,
    pub separating_star_vertex: Option<String>,
    pub finite_out: Option<bool>,
    pub clique_factor: Vec<String>,
    pub irreducible_factors: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtVertexOut {
    pub base: String,
    pub rep: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtBallOut {
    pub radius: usize,
    pub vertices: Vec<ExtVertexOut>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtAdjacentOut {
    pub x: ExtVertexOut,
    pub y: ExtVertexOut,
    pub adjacent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixpointOut {
    pub radius: usize,
    pub count: usize,
    pub complete: bool,
    pub stabilizer_generators: Vec<String>,
    pub vertices: Vec<ExtVertexOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayOut {
    pub regular: bool,
    pub phi_type: Vec<String>,
    pub phi_rep: String,
    pub checked_to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneOut {
    pub label: String,
    pub coset_rep: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplanesOut {
    pub hyperplanes: Vec<HyperplaneOut>,
    /// Index pairs `(i, j)`, `i < j`, of crossing hyperplanes.
    pub crossings: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeOut {
    pub w1: String,
    pub w2: String,
    pub diagonal: bool,
    pub u0: Option<String>,
    pub v0: Option<String>,
    pub local_isometry: bool,
    pub max_syllables: usize,
    pub words_checked: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CovolumeOut {
    /// Exact rationals as `p/q`.
    pub partial_sums: Vec<String>,
    pub converged: bool,
    pub closed_form: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexValenceOut {
    pub id: String,
    pub a: u64,
    pub b: u64,
    pub total: u64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValenceOut {
    pub passed: bool,
    pub skipped: Option<String>,
    pub vertices: Vec<VertexValenceOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOut {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestOut {
    pub passed: bool,
    pub criteria: Vec<CriterionOut>,
}
