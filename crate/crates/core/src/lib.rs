//! Vicinity-driven paragraph and sentence alignment for comparable documents.
//!
//! A document pair (for instance an article and its simplified rewrite) is
//! aligned in two stages. Paragraphs are aligned first by a greedy search
//! that walks forward from the titles through widening vicinities; paragraphs
//! that end up in 1-N, N-1 or N-N alignments are concatenated, and sentences
//! are then aligned inside each paragraph group by a second vicinity search
//! that can grow 1-N and N-1 blocks. Both searches are monotone, so content
//! order is preserved, and both may skip arbitrarily many units.
//!
//! ```
//! use vicalign::{align_documents, Document, PipelineConfig};
//!
//! let src = Document::parse("A title\n\nThe cat sat on the mat.\nIt was warm.", "src").unwrap();
//! let tgt = Document::parse("A title\n\nThe cat sat.\nOn the mat.\nIt was warm.", "tgt").unwrap();
//! let result = align_documents(&src, &tgt, &PipelineConfig::default()).unwrap();
//! assert!(result.sentence_pairs().count() >= 3);
//! ```

pub mod coords;
pub mod error;
pub mod eval;
pub mod para_align;
pub mod path;
pub mod pipeline;
pub mod sent_align;
pub mod similarity;
pub mod synth;
pub mod text;

pub use coords::{SentencePair, SentenceRef};
pub use error::{AlignError, Result};
pub use eval::{
    evaluate, jaccard_align, jaccard_align_scored, EvalReport, GoldAlignment,
    DEFAULT_JACCARD_THRESHOLD,
};
pub use para_align::{
    align_paragraphs, align_paragraphs_with_stats, concatenate_group, ParaAlignConfig,
};
pub use path::{group_alignments, AlignmentGroup, AlignmentPath, GroupKind, SearchStats, Span};
pub use pipeline::{
    align_document_paragraphs, align_documents, local_to_global, GroupAlignment, PipelineConfig,
    PipelineResult, ScoredPair,
};
pub use sent_align::{
    align_sentences, concat_similarity, group_sentence_alignments, search_sentences,
    ConcatSimilarityQuery, SentAlignConfig, SentenceScorer, TfIdfScorer,
};
pub use similarity::{
    cosine, jaccard, paragraph_matrix, sentence_matrix, SimilarityMatrix, TextUnit, TfIdfModel,
};
pub use synth::{synthesize_pair, SynthPair, SynthSpec};
pub use text::{parse_document, tokenize, Document, Paragraph, Sentence};
