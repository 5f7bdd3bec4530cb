//! Exponential brute-force procedures used to cross-check the deciders:
//! bounded subsequence profiles (Simon levels), bounded zigzag search and
//! layer separation of finite languages.

mod layers;
mod profile;
mod zigzag;

pub use layers::{layer, layer_separation_finite, verify_layer_separation, Layer, LayerSeparation, Side};
pub use profile::{pt_oracle, simon_level_sep, subseq_profile, LevelSeparation, PtOracle, SubseqProfile};
pub use zigzag::{bounded_zigzag_search, ZigzagCertificate};
