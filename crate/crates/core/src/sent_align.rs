//! Vicinity-driven sentence alignment with 1-N / N-1 expansion.
//!
//! Unlike paragraphs there is no anchor: the search starts at the qualifying
//! cell nearest to `(0, 0)`. From the cursor it inspects V1 and then
//!
//! * jumps to the nearest qualifying cell of the remaining rectangle when the
//!   best V1 cell is below `alpha`;
//! * steps along the diagonal on a 1-1 continuation;
//! * on a horizontal (vertical) continuation, grows the target (source) block
//!   one sentence at a time while the similarity of the single sentence
//!   against the concatenated block stays above the previous block's
//!   similarity minus `beta`, and above the similarity the neighbouring
//!   sentence would get against the same block.

use serde::{Deserialize, Serialize};

use crate::error::{AlignError, Result};
use crate::path::{
    best_in_vicinity, group_alignments, nearest_at_least, AlignmentGroup, AlignmentPath,
    SearchStats, Span,
};
use crate::similarity::{paragraph_vectors, SimilarityMatrix, TfIdfModel, TfIdfVector};
use crate::text::Paragraph;

pub const DEFAULT_SENTENCE_ALPHA: f64 = 0.5;
pub const DEFAULT_BETA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentAlignConfig {
    pub alpha: f64,
    pub beta: f64,
}

impl SentAlignConfig {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(AlignError::InvalidConfig(format!(
                "sentence alpha {alpha} outside [0, 1]"
            )));
        }
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(AlignError::InvalidConfig(format!(
                "beta {beta} must be a non-negative number"
            )));
        }
        Ok(SentAlignConfig { alpha, beta })
    }
}

impl Default for SentAlignConfig {
    fn default() -> Self {
        SentAlignConfig {
            alpha: DEFAULT_SENTENCE_ALPHA,
            beta: DEFAULT_BETA,
        }
    }
}

/// One sentence against an inclusive block of sentences on the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConcatSimilarityQuery {
    /// Source sentence `row` against target sentences `cols`.
    RowAgainstCols { row: usize, cols: Span },
    /// Source sentences `rows` against target sentence `col`.
    RowsAgainstCol { rows: Span, col: usize },
}

impl ConcatSimilarityQuery {
    fn check(&self, n_rows: usize, n_cols: usize) -> Result<()> {
        let (single, single_bound, span, span_bound) = match *self {
            ConcatSimilarityQuery::RowAgainstCols { row, cols } => (row, n_rows, cols, n_cols),
            ConcatSimilarityQuery::RowsAgainstCol { rows, col } => (col, n_cols, rows, n_rows),
        };
        if !(1..=single_bound).contains(&single) {
            return Err(AlignError::OutOfBounds {
                index: single,
                bound: single_bound,
            });
        }
        if span.start < 1 || span.end > span_bound {
            return Err(AlignError::OutOfBounds {
                index: span.end,
                bound: span_bound,
            });
        }
        Ok(())
    }
}

/// Similarity source for the sentence search.
///
/// `concat` is only called with in-bounds queries and must agree with the
/// matrix entry when the block holds a single sentence.
pub trait SentenceScorer {
    fn matrix(&self) -> &SimilarityMatrix;
    fn concat(&self, query: ConcatSimilarityQuery) -> f64;
}

/// TF-IDF scorer over a (pseudo-)paragraph pair.
pub struct TfIdfScorer<'a> {
    model: &'a TfIdfModel,
    p1: &'a Paragraph,
    p2: &'a Paragraph,
    src: Vec<TfIdfVector>,
    tgt: Vec<TfIdfVector>,
    matrix: SimilarityMatrix,
}

impl<'a> TfIdfScorer<'a> {
    pub fn new(model: &'a TfIdfModel, p1: &'a Paragraph, p2: &'a Paragraph) -> Self {
        let src = paragraph_vectors(model, p1);
        let tgt = paragraph_vectors(model, p2);
        let matrix =
            SimilarityMatrix::from_fn(src.len(), tgt.len(), |x, y| src[x - 1].cosine(&tgt[y - 1]));
        TfIdfScorer {
            model,
            p1,
            p2,
            src,
            tgt,
            matrix,
        }
    }

    fn block(&self, side: &Paragraph, span: Span) -> TfIdfVector {
        self.model.vectorize(
            side.sentences()[span.start - 1..span.end]
                .iter()
                .flat_map(|s| s.tokens().iter()),
        )
    }
}

impl SentenceScorer for TfIdfScorer<'_> {
    fn matrix(&self) -> &SimilarityMatrix {
        &self.matrix
    }

    fn concat(&self, query: ConcatSimilarityQuery) -> f64 {
        match query {
            ConcatSimilarityQuery::RowAgainstCols { row, cols } if cols.len() == 1 => {
                self.matrix.at(row, cols.start)
            }
            ConcatSimilarityQuery::RowsAgainstCol { rows, col } if rows.len() == 1 => {
                self.matrix.at(rows.start, col)
            }
            ConcatSimilarityQuery::RowAgainstCols { row, cols } => {
                self.src[row - 1].cosine(&self.block(self.p2, cols))
            }
            ConcatSimilarityQuery::RowsAgainstCol { rows, col } => {
                self.block(self.p1, rows).cosine(&self.tgt[col - 1])
            }
        }
    }
}

/// TF-IDF cosine of one sentence against a concatenated block of sentences.
pub fn concat_similarity(
    model: &TfIdfModel,
    p1: &Paragraph,
    p2: &Paragraph,
    query: ConcatSimilarityQuery,
) -> Result<f64> {
    query.check(p1.len(), p2.len())?;
    let join = |p: &Paragraph, span: Span| {
        model.vectorize(
            p.sentences()[span.start - 1..span.end]
                .iter()
                .flat_map(|s| s.tokens().iter()),
        )
    };
    Ok(match query {
        ConcatSimilarityQuery::RowAgainstCols { row, cols } => {
            join(p1, Span::single(row)).cosine(&join(p2, cols))
        }
        ConcatSimilarityQuery::RowsAgainstCol { rows, col } => {
            join(p1, rows).cosine(&join(p2, Span::single(col)))
        }
    })
}

pub fn align_sentences(
    model: &TfIdfModel,
    p1: &Paragraph,
    p2: &Paragraph,
    cfg: &SentAlignConfig,
) -> Result<AlignmentPath> {
    if p1.is_empty() || p2.is_empty() {
        return Err(AlignError::EmptyParagraph);
    }
    search_sentences(&TfIdfScorer::new(model, p1, p2), cfg).map(|(path, _)| path)
}

/// The sentence search over any scorer.
pub fn search_sentences<S: SentenceScorer + ?Sized>(
    scorer: &S,
    cfg: &SentAlignConfig,
) -> Result<(AlignmentPath, SearchStats)> {
    let m = scorer.matrix();
    if m.is_empty() {
        return Err(AlignError::EmptyParagraph);
    }
    let (alpha, beta) = (cfg.alpha, cfg.beta);
    let (n_rows, n_cols) = (m.n_rows(), m.n_cols());
    let mut path = AlignmentPath::new(n_rows, n_cols);
    let mut stats = SearchStats::default();

    let mut cursor = nearest_at_least(m, (0, 0), alpha, false);
    if let Some((x, y)) = cursor {
        path.mark(x, y);
    }

    while let Some((cx, cy)) = cursor {
        stats.iterations += 1;
        let v1 = [(cx + 1, cy + 1), (cx, cy + 1), (cx + 1, cy)];

        cursor =
            match best_in_vicinity(m, &v1) {
                Some(((nx, ny), v)) if v >= alpha => {
                    path.mark(nx, ny);
                    if (nx, ny) == (cx + 1, cy + 1) {
                        Some((nx, ny))
                    } else if nx == cx {
                        let grown = expand(
                            scorer,
                            beta,
                            n_cols,
                            |n| {
                                let cols = Span::new(ny, ny + n);
                                let adjacent = (nx < n_rows).then_some(
                                    ConcatSimilarityQuery::RowAgainstCols { row: nx + 1, cols },
                                );
                                (
                                    ConcatSimilarityQuery::RowAgainstCols { row: nx, cols },
                                    adjacent,
                                )
                            },
                            ny,
                        );
                        for n in 1..=grown {
                            path.mark(nx, ny + n);
                        }
                        stats.expansions += grown;
                        Some((nx, ny + grown))
                    } else {
                        let grown = expand(
                            scorer,
                            beta,
                            n_rows,
                            |n| {
                                let rows = Span::new(nx, nx + n);
                                let adjacent = (ny < n_cols).then_some(
                                    ConcatSimilarityQuery::RowsAgainstCol { rows, col: ny + 1 },
                                );
                                (
                                    ConcatSimilarityQuery::RowsAgainstCol { rows, col: ny },
                                    adjacent,
                                )
                            },
                            nx,
                        );
                        for n in 1..=grown {
                            path.mark(nx + n, ny);
                        }
                        stats.expansions += grown;
                        Some((nx + grown, ny))
                    }
                }
                _ => {
                    let next = nearest_at_least(m, (cx, cy), alpha, true);
                    if let Some((x, y)) = next {
                        path.mark(x, y);
                    }
                    next
                }
            };
    }
    Ok((path, stats))
}

/// Number of extra sentences the block starting at `start` can absorb.
///
/// `queries(n)` yields the block query covering `start..=start+n` and the
/// competing query for the neighbouring sentence (absent past the edge, where
/// it counts as 0).
fn expand<S, F>(scorer: &S, beta: f64, bound: usize, queries: F, start: usize) -> usize
where
    S: SentenceScorer + ?Sized,
    F: Fn(usize) -> (ConcatSimilarityQuery, Option<ConcatSimilarityQuery>),
{
    let mut previous = scorer.concat(queries(0).0);
    let mut n = 1;
    while start + n <= bound {
        let (block, adjacent) = queries(n);
        let current = scorer.concat(block);
        let rival = adjacent.map_or(0.0, |q| scorer.concat(q));
        if !(current > previous - beta && current > rival) {
            break;
        }
        previous = current;
        n += 1;
    }
    n - 1
}

/// Same contract as paragraph grouping, over sentence indices.
pub fn group_sentence_alignments(path: &AlignmentPath) -> Result<Vec<AlignmentGroup>> {
    group_alignments(path)
}
