//! Two-stage document pair alignment: paragraphs first, then sentences
//! inside each paragraph group.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coords::{SentencePair, SentenceRef};
use crate::error::{AlignError, Result};
use crate::para_align::{align_paragraphs, concatenate_group, ParaAlignConfig};
use crate::path::{group_alignments, AlignmentGroup, AlignmentPath, Span};
use crate::sent_align::{search_sentences, SentAlignConfig, SentenceScorer, TfIdfScorer};
use crate::similarity::{paragraph_matrix, SimilarityMatrix, TfIdfModel};
use crate::text::Document;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub paragraph: ParaAlignConfig,
    pub sentence: SentAlignConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoredPair {
    #[serde(flatten)]
    pub pair: SentencePair,
    /// Sentence-matrix entry of the marked cell.
    pub score: f64,
}

/// Sentence alignments found inside one paragraph group.
#[derive(Debug, Clone)]
pub struct GroupAlignment {
    pub group: AlignmentGroup,
    pub pairs: Vec<ScoredPair>,
    pub sentence_matrix: SimilarityMatrix,
}

#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub config: PipelineConfig,
    pub paragraph_matrix: SimilarityMatrix,
    pub paragraph_path: AlignmentPath,
    pub groups: Vec<GroupAlignment>,
}

impl PipelineResult {
    pub fn paragraph_groups(&self) -> impl Iterator<Item = &AlignmentGroup> {
        self.groups.iter().map(|g| &g.group)
    }

    /// All sentence pairs, in group order.
    pub fn sentence_pairs(&self) -> impl Iterator<Item = &ScoredPair> {
        self.groups.iter().flat_map(|g| g.pairs.iter())
    }

    pub fn pair_set(&self) -> std::collections::BTreeSet<SentencePair> {
        self.sentence_pairs().map(|p| p.pair).collect()
    }
}

fn locate(span: Span, sizes: &[usize], local: usize) -> Result<SentenceRef> {
    let total: usize = sizes.iter().sum();
    if local == 0 || local > total {
        return Err(AlignError::OutOfBounds {
            index: local,
            bound: total,
        });
    }
    let mut rest = local;
    for (k, &n) in sizes.iter().enumerate() {
        if rest <= n {
            return Ok(SentenceRef::new(span.start + k, rest));
        }
        rest -= n;
    }
    unreachable!("local index within total")
}

fn unlocate(span: Span, sizes: &[usize], r: SentenceRef) -> Result<usize> {
    if !span.contains(r.par) {
        return Err(AlignError::OutOfBounds {
            index: r.par,
            bound: span.end,
        });
    }
    let k = r.par - span.start;
    if r.sent == 0 || r.sent > sizes[k] {
        return Err(AlignError::OutOfBounds {
            index: r.sent,
            bound: sizes[k],
        });
    }
    Ok(sizes[..k].iter().sum::<usize>() + r.sent)
}

/// Maps a pair of concatenation-local sentence indices back to document
/// coordinates. `src_sizes` / `tgt_sizes` are the sentence counts of the
/// paragraphs in `group.src` / `group.tgt`, in order.
pub fn local_to_global(
    group: &AlignmentGroup,
    src_sizes: &[usize],
    tgt_sizes: &[usize],
    local: (usize, usize),
) -> Result<SentencePair> {
    debug_assert_eq!(src_sizes.len(), group.src.len());
    debug_assert_eq!(tgt_sizes.len(), group.tgt.len());
    Ok(SentencePair::new(
        locate(group.src, src_sizes, local.0)?,
        locate(group.tgt, tgt_sizes, local.1)?,
    ))
}

/// Inverse of [`local_to_global`].
pub fn global_to_local(
    group: &AlignmentGroup,
    src_sizes: &[usize],
    tgt_sizes: &[usize],
    pair: SentencePair,
) -> Result<(usize, usize)> {
    Ok((
        unlocate(group.src, src_sizes, pair.src)?,
        unlocate(group.tgt, tgt_sizes, pair.tgt)?,
    ))
}

fn sizes(d: &Document, span: Span) -> Vec<usize> {
    span.iter().map(|i| d.paragraphs()[i - 1].len()).collect()
}

/// Runs the paragraph stage only.
pub fn align_document_paragraphs(
    model: &TfIdfModel,
    d1: &Document,
    d2: &Document,
    cfg: &ParaAlignConfig,
) -> Result<(SimilarityMatrix, AlignmentPath, Vec<AlignmentGroup>)> {
    if d1.is_empty() || d2.is_empty() {
        return Err(AlignError::EmptyDocument);
    }
    let pm = paragraph_matrix(model, d1, d2);
    let path = align_paragraphs(&pm, cfg)?;
    let groups = group_alignments(&path)?;
    Ok((pm, path, groups))
}

pub fn align_documents(
    d1: &Document,
    d2: &Document,
    cfg: &PipelineConfig,
) -> Result<PipelineResult> {
    if d1.is_empty() || d2.is_empty() {
        return Err(AlignError::EmptyDocument);
    }
    let model = TfIdfModel::fit_documents(d1, d2)?;
    let (paragraph_matrix, paragraph_path, groups) =
        align_document_paragraphs(&model, d1, d2, &cfg.paragraph)?;

    // groups are independent; collect keeps group order
    let groups = groups
        .par_iter()
        .map(|group| -> Result<GroupAlignment> {
            let (p1, p2) = concatenate_group(d1, d2, group)?;
            let scorer = TfIdfScorer::new(&model, &p1, &p2);
            let (path, _) = search_sentences(&scorer, &cfg.sentence)?;
            let (src_sizes, tgt_sizes) = (sizes(d1, group.src), sizes(d2, group.tgt));
            let pairs = path
                .pairs()
                .iter()
                .map(|&(i, j)| {
                    Ok(ScoredPair {
                        pair: local_to_global(group, &src_sizes, &tgt_sizes, (i, j))?,
                        score: scorer.matrix().at(i, j),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(GroupAlignment {
                group: *group,
                pairs,
                sentence_matrix: scorer.matrix().clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(PipelineResult {
        config: *cfg,
        paragraph_matrix,
        paragraph_path,
        groups,
    })
}
