//! Extremal rotation numbers of positive words in two circle homeomorphisms,
//! the fringe of their ziggurats, and piecewise-projective self-similarity.

mod error;
pub mod fringe;
pub mod lp;
mod rational;
pub mod selfsim;
pub mod stairstep;
mod word;
pub mod xy;

pub use error::{Error, Result};
pub use fringe::{fringe, fringe_length, lambda_sum, prime_case_fringe, sigma, sigma_bounds, FringeResult, Side};
pub use rational::{farey, gcd, Rational};
pub use selfsim::{abaab_pieces, prime_pieces, verify_piece, ProjectiveMap, SimilarityPiece, VerifyReport};
pub use stairstep::{stairstep_min_t, StairstepConfig, StairstepProblem};
pub use word::{is_cyclic_rotation, BlockForm, Letter, PositiveWord};
pub use xy::{max_rot, rot_interval, OracleConfig, RotationQuery, XYWord};
