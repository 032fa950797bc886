pub mod free_subgroup;
pub mod lattice;

pub use free_subgroup::{full_support_free, verify_full_support, verify_local_isometry, FreePairWitness};
pub use lattice::{serre_covolume, validate_bass_serre_valence, CovolumeReport, GraphOfGroups};
