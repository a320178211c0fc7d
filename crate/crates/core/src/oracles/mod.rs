//! Ground-truth computations used to test every estimator.

mod blossom;
mod exhaustive;
mod gmm_exact;
mod hall;
mod hopcroft_karp;
mod matching;
mod monte_carlo;

pub use blossom::max_matching_general;
pub use exhaustive::max_matching_exhaustive;
pub use gmm_exact::{expected_gmm_exact, ExactGmm, MAX_EXACT_EDGES};
pub use hall::{hall_witness, HallWitness};
pub use hopcroft_karp::{max_matching_bipartite, phase_cap_for};
pub use matching::Matching;
pub use monte_carlo::expected_gmm_montecarlo;
