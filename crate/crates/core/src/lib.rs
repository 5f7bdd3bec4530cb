//! Deciding whether one regular language can be separated from another by
//! piecewise-testable languages, by subsequence- or suffix-closed languages
//! and their unions and boolean combinations.
//!
//! Inputs are [`Nfa`]s, usually compiled from regular expressions with
//! [`regex::compile`]. Each decider returns a [`Verdict`] carrying either a
//! witness (a description of a separator) or a certificate of
//! non-separability, both of which can be re-checked independently. The
//! [`oracles`] module holds exponential brute-force procedures used to
//! cross-validate the deciders.

pub mod error;
pub mod format;
pub mod nfa;
pub mod oracles;
pub mod pt;
pub mod regex;
pub mod scc;
pub mod subseq;
pub mod suffix;
pub mod symbol;
pub mod verdict;

pub use error::{Error, Result};
pub use nfa::{Nfa, StateId};
pub use symbol::{Alphabet, Symbol, SymbolSet, Word};
pub use verdict::{Certificate, Family, Limits, Stats, Verdict, Witness};

/// Runs the decider for `family`. Both automata are taken over the union of
/// their alphabets; widen them with [`Nfa::with_alphabet`] beforehand to
/// decide relative to a larger ambient alphabet.
pub fn decide(family: Family, k: &Nfa, l: &Nfa, limits: &Limits) -> Verdict {
    match family {
        Family::Pt => pt::decide_pt(k, l),
        Family::SubseqSingle => subseq::decide_subseq_single(k, l, limits),
        Family::SubseqUnion => subseq::decide_subseq_union(k, l, limits),
        Family::SuffixSingle => suffix::decide_suffix_single(k, l, limits),
        Family::SuffixUnion => suffix::decide_suffix_union(k, l, limits),
        Family::SuffixBc => suffix::decide_suffix_bc(k, l, limits),
        Family::PrefixSingle => suffix::decide_prefix(suffix::Combination::Single, k, l, limits),
        Family::PrefixUnion => suffix::decide_prefix(suffix::Combination::Union, k, l, limits),
        Family::PrefixBc => suffix::decide_prefix(suffix::Combination::Bc, k, l, limits),
    }
}
