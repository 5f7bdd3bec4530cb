//! Decision outcomes shared by every decider.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::pt::SynchPath;
use crate::suffix::SuffixWitness;
use crate::symbol::Word;

/// Separator families: piecewise testable, plus the subsequence, suffix and
/// prefix orders with single / union / boolean-combination restrictions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Pt,
    SubseqSingle,
    SubseqUnion,
    SuffixSingle,
    SuffixUnion,
    SuffixBc,
    PrefixSingle,
    PrefixUnion,
    PrefixBc,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Pt,
        Family::SubseqSingle,
        Family::SubseqUnion,
        Family::SuffixSingle,
        Family::SuffixUnion,
        Family::SuffixBc,
        Family::PrefixSingle,
        Family::PrefixUnion,
        Family::PrefixBc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Pt => "pt",
            Family::SubseqSingle => "subseq-single",
            Family::SubseqUnion => "subseq-union",
            Family::SuffixSingle => "suffix-single",
            Family::SuffixUnion => "suffix-union",
            Family::SuffixBc => "suffix-bc",
            Family::PrefixSingle => "prefix-single",
            Family::PrefixUnion => "prefix-union",
            Family::PrefixBc => "prefix-bc",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// Caps and deadline for the searches that can blow up.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Depth bound for the subseq-single word search; `None` means the
    /// complete bound (length of a shortest word of K).
    pub depth_cap: Option<usize>,
    /// Subset-construction cap for determinization.
    pub determinize_cap: usize,
    /// Distinct reachable (profile, state) pairs in the Simon-level oracle.
    pub profile_cap: usize,
    /// Longest word considered when listing ≼-minimal words of K.
    pub basis_max_len: usize,
    /// Cap on the number of words listed in union/bc witnesses.
    pub witness_words_cap: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            depth_cap: None,
            determinize_cap: 4096,
            profile_cap: 200_000,
            basis_max_len: 16,
            witness_words_cap: 10_000,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

/// Evidence that the separator family exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The separator is `closure≼(w)`.
    SubseqWord(Word),
    /// The separator is `closure≼(K)`. `minimal_words` lists ≼-minimal words
    /// of K found within the configured length; `complete` is set when they
    /// provably generate the whole closure.
    SubseqClosure {
        closure: Nfa,
        minimal_words: Vec<Word>,
        complete: bool,
    },
    /// Suffix-order separators. For the prefix families the words are
    /// prefixes and every `Σ*w` reads `wΣ*`.
    Affix(SuffixWitness),
}

/// Evidence of non-separability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    SynchPath(SynchPath),
    /// A word in both languages.
    SharedWord(Word),
    /// `k_word` is below `l_word` in the family's order.
    Embedding { k_word: Word, l_word: Word },
    /// The longest common suffix (prefix) of K occurs as a suffix (prefix)
    /// of `l_word`.
    LcsCovered { lcs: Word, l_word: Word },
    /// A common suffix (prefix) of a K-word and an L-word long enough to be
    /// pumped, so common suffixes of every length exist.
    UnboundedCommonAffix {
        affix: Word,
        k_word: Word,
        l_word: Word,
    },
    /// No word up to `depth` separates; the bound is complete.
    SearchExhausted { depth: usize },
    /// K is empty and every word is below some word of L.
    NoAvoidingWord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub elapsed: Duration,
    pub vertices: usize,
    pub caps_hit: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub family: Family,
    /// `None` when a cap or deadline made the outcome inconclusive.
    pub separable: Option<bool>,
    pub witness: Option<Witness>,
    pub certificate: Option<Certificate>,
    pub stats: Stats,
}

impl Verdict {
    pub fn separable(family: Family, witness: Option<Witness>) -> Verdict {
        Verdict {
            family,
            separable: Some(true),
            witness,
            certificate: None,
            stats: Stats::default(),
        }
    }

    pub fn not_separable(family: Family, certificate: Option<Certificate>) -> Verdict {
        Verdict {
            family,
            separable: Some(false),
            witness: None,
            certificate,
            stats: Stats::default(),
        }
    }

    pub fn inconclusive(family: Family, reason: impl Into<String>) -> Verdict {
        Verdict {
            family,
            separable: None,
            witness: None,
            certificate: None,
            stats: Stats {
                caps_hit: vec![reason.into()],
                ..Stats::default()
            },
        }
    }

    pub fn is_separable(&self) -> bool {
        self.separable == Some(true)
    }

    pub fn is_inconclusive(&self) -> bool {
        self.separable.is_none()
    }

    pub(crate) fn timed(mut self, start: Instant) -> Verdict {
        self.stats.elapsed = start.elapsed();
        self
    }
}

/// Turns a cap or deadline error into an inconclusive verdict.
pub(crate) fn or_inconclusive(family: Family, r: Result<Verdict>) -> Verdict {
    match r {
        Ok(v) => v,
        Err(e) => Verdict::inconclusive(family, e.to_string()),
    }
}
