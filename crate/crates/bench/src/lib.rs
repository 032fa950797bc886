//! Fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use raag_core::oracle;
use raag_core::{Graph, Letter, Word};

pub fn c4() -> Graph {
    Graph::parse("vertices: a b c d\nedges: a-b b-c c-d d-a").expect("well-formed")
}

/// Graphs the benches sweep over, smallest first.
pub fn graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("c4", c4()),
        ("c5", Graph::cycle(5)),
        ("p8", Graph::path(8)),
        ("c12", Graph::cycle(12)),
    ]
}

/// Deterministic words of length at most `max_len`.
pub fn words(g: &Graph, count: usize, max_len: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    oracle::random_words(g, &mut rng, count, max_len)
        .into_iter()
        .map(|w: Vec<Letter>| Word::from_letters(w))
        .collect()
}
