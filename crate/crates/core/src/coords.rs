use serde::{Deserialize, Serialize};

/// A sentence addressed by 1-based paragraph and sentence-within-paragraph indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SentenceRef {
    pub par: usize,
    pub sent: usize,
}

impl SentenceRef {
    pub fn new(par: usize, sent: usize) -> Self {
        SentenceRef { par, sent }
    }
}

/// A source sentence aligned to a target sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SentencePair {
    pub src: SentenceRef,
    pub tgt: SentenceRef,
}

impl SentencePair {
    pub fn new(src: SentenceRef, tgt: SentenceRef) -> Self {
        SentencePair { src, tgt }
    }

    /// `(src_par, src_sent, tgt_par, tgt_sent)`
    pub fn from_tuple((a, b, c, d): (usize, usize, usize, usize)) -> Self {
        SentencePair::new(SentenceRef::new(a, b), SentenceRef::new(c, d))
    }

    pub fn transposed(&self) -> Self {
        SentencePair::new(self.tgt, self.src)
    }
}
