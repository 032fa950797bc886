//! Right-angled Artin groups: normal forms, parabolic subgroups, the
//! extension graph, hyperplanes and boundary rays of the universal cover of
//! the Salvetti complex, and two explicit constructions.

pub mod constructions;
pub mod error;
pub mod extension;
pub mod graph;
pub mod oracle;
pub mod parabolic;
pub mod roller;
pub mod suites;
pub mod word;

pub use error::{Error, Result};
pub use extension::{ExtBall, ExtVertex};
pub use graph::{Graph, VertexSet};
pub use parabolic::Parabolic;
pub use roller::{Hyperplane, RaySpec};
pub use word::{GroupElement, Letter, Word};
