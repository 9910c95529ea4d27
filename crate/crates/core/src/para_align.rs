//! Vicinity-driven paragraph alignment.
//!
//! The search starts from the title anchor `(1, 1)` and repeatedly looks for
//! the next alignment in three widening vicinities of the cursor:
//!
//! * V1: `(cx, cy+1)`, `(cx+1, cy)`, `(cx+1, cy+1)`, i.e. 1-1, 1-N and N-1 continuations;
//! * V2: `(cx+2, cy+1)`, `(cx+1, cy+2)`, a single skipped paragraph;
//! * V3: every cell of the remaining rectangle, taking the one nearest to the
//!   cursor among those reaching the threshold (long-distance skips).
//!
//! V1 and V2 accept their best cell only if it reaches `alpha`. The search
//! stops when V3 has no qualifying cell.

use serde::{Deserialize, Serialize};

use crate::error::{AlignError, Result};
use crate::path::{best_in_vicinity, nearest_at_least, AlignmentGroup, AlignmentPath, SearchStats};
use crate::similarity::SimilarityMatrix;
use crate::text::{Document, Paragraph};

pub const DEFAULT_PARAGRAPH_ALPHA: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParaAlignConfig {
    pub alpha: f64,
}

impl ParaAlignConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(AlignError::InvalidConfig(format!(
                "paragraph alpha {alpha} outside [0, 1]"
            )));
        }
        Ok(ParaAlignConfig { alpha })
    }
}

impl Default for ParaAlignConfig {
    fn default() -> Self {
        ParaAlignConfig {
            alpha: DEFAULT_PARAGRAPH_ALPHA,
        }
    }
}

pub fn align_paragraphs(m: &SimilarityMatrix, cfg: &ParaAlignConfig) -> Result<AlignmentPath> {
    align_paragraphs_with_stats(m, cfg).map(|(path, _)| path)
}

pub fn align_paragraphs_with_stats(
    m: &SimilarityMatrix,
    cfg: &ParaAlignConfig,
) -> Result<(AlignmentPath, SearchStats)> {
    if m.is_empty() {
        return Err(AlignError::EmptyMatrix);
    }
    let alpha = cfg.alpha;
    let mut path = AlignmentPath::new(m.n_rows(), m.n_cols());
    let mut stats = SearchStats::default();

    // the titles are aligned whatever their similarity
    let mut cursor = Some((1, 1));
    while let Some((cx, cy)) = cursor {
        stats.iterations += 1;
        path.mark(cx, cy);

        // candidates in tie-break order: diagonal first
        let v1 = [(cx + 1, cy + 1), (cx, cy + 1), (cx + 1, cy)];
        let v2 = [(cx + 2, cy + 1), (cx + 1, cy + 2)];

        cursor = match best_in_vicinity(m, &v1) {
            Some((cell, v)) if v >= alpha => Some(cell),
            _ => match best_in_vicinity(m, &v2) {
                Some((cell, v)) if v >= alpha => Some(cell),
                _ => nearest_at_least(m, (cx, cy), alpha, true),
            },
        };
    }
    Ok((path, stats))
}

/// Concatenates the paragraphs covered by `g` on each side into a pair of
/// pseudo-paragraphs with sentences renumbered from 1.
pub fn concatenate_group(
    d1: &Document,
    d2: &Document,
    g: &AlignmentGroup,
) -> Result<(Paragraph, Paragraph)> {
    let side = |d: &Document, span: crate::path::Span| -> Result<Paragraph> {
        if span.end > d.len() {
            return Err(AlignError::OutOfBounds {
                index: span.end,
                bound: d.len(),
            });
        }
        Paragraph::concatenate(span.start, &d.paragraphs()[span.start - 1..span.end])
    };
    Ok((side(d1, g.src)?, side(d2, g.tgt)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::Span;
    use proptest::prelude::*;

    fn matrix(rows: &[&[f64]]) -> SimilarityMatrix {
        SimilarityMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn cfg(alpha: f64) -> ParaAlignConfig {
        ParaAlignConfig::new(alpha).unwrap()
    }

    #[test]
    fn diagonal() {
        let m = SimilarityMatrix::from_fn(3, 3, |x, y| if x == y { 0.9 } else { 0.1 });
        let path = align_paragraphs(&m, &cfg(0.5)).unwrap();
        assert_eq!(path.pairs(), [(1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn single_cell_anchor() {
        for alpha in [0.0, 0.5, 1.0] {
            let m = matrix(&[&[0.0]]);
            assert_eq!(align_paragraphs(&m, &cfg(alpha)).unwrap().pairs(), [(1, 1)]);
        }
    }

    #[test]
    fn v2_skip() {
        let mut rows = vec![vec![0.1; 4]; 4];
        rows[0][0] = 0.9;
        rows[2][1] = 0.8; // (3,2)
        rows[3][2] = 0.8; // (4,3)
        let m = SimilarityMatrix::from_rows(rows).unwrap();
        let (path, stats) = align_paragraphs_with_stats(&m, &cfg(0.5)).unwrap();
        assert_eq!(path.pairs(), [(1, 1), (3, 2), (4, 3)]);
        assert_eq!(stats.iterations, 3);
    }

    #[test]
    fn v3_long_jump() {
        let mut rows = vec![vec![0.1; 6]; 6];
        rows[0][0] = 0.9;
        rows[4][4] = 0.9; // (5,5)
        rows[4][5] = 0.8; // (5,6)
        let m = SimilarityMatrix::from_rows(rows).unwrap();
        let path = align_paragraphs(&m, &cfg(0.5)).unwrap();
        assert_eq!(path.pairs(), [(1, 1), (5, 5), (5, 6)]);
    }

    #[test]
    fn v1_ties_prefer_diagonal_then_right() {
        let m = matrix(&[&[1.0, 0.7], &[0.7, 0.7]]);
        assert_eq!(
            align_paragraphs(&m, &cfg(0.5)).unwrap().pairs(),
            [(1, 1), (2, 2)]
        );
        let m = matrix(&[&[1.0, 0.7, 0.0], &[0.7, 0.2, 0.0]]);
        assert_eq!(align_paragraphs(&m, &cfg(0.5)).unwrap().pairs()[1], (1, 2));
    }

    #[test]
    fn v2_ties_prefer_row_skip() {
        let mut rows = vec![vec![0.0; 3]; 3];
        rows[0][0] = 1.0;
        rows[2][1] = 0.6; // (3,2)
        rows[1][2] = 0.6; // (2,3)
        let m = SimilarityMatrix::from_rows(rows).unwrap();
        assert_eq!(align_paragraphs(&m, &cfg(0.5)).unwrap().pairs()[1], (3, 2));
    }

    #[test]
    fn out_of_bounds_candidates_are_absent() {
        // at the last row only (cx, cy+1) exists; 0.0 there means "below alpha", not "missing"
        let m = matrix(&[&[1.0, 0.0, 0.9]]);
        assert_eq!(
            align_paragraphs(&m, &cfg(0.5)).unwrap().pairs(),
            [(1, 1), (1, 3)]
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            align_paragraphs(&SimilarityMatrix::from_rows(vec![]).unwrap(), &cfg(0.5)),
            Err(AlignError::EmptyMatrix)
        ));
        assert!(ParaAlignConfig::new(1.01).is_err());
        assert!(ParaAlignConfig::new(-0.1).is_err());
        assert!(ParaAlignConfig::new(f64::NAN).is_err());
    }

    #[test]
    fn concatenation() {
        let d1 = Document::parse("t\n\na\nb\n\nc", "1").unwrap();
        let d2 = Document::parse("t\n\nx\n\ny\nz\nw", "2").unwrap();
        let g = AlignmentGroup::new(Span::single(2), Span::single(2));
        let (p, q) = concatenate_group(&d1, &d2, &g).unwrap();
        assert_eq!(&p, d1.paragraph(2).unwrap());
        assert_eq!(&q, d2.paragraph(2).unwrap());

        let g = AlignmentGroup::new(Span::single(2), Span::new(2, 3));
        let (p, q) = concatenate_group(&d1, &d2, &g).unwrap();
        assert_eq!((p.len(), q.len()), (2, 4));
        let texts: Vec<&str> = q.sentences().iter().map(|s| s.text()).collect();
        assert_eq!(texts, ["x", "y", "z", "w"]);

        let g = AlignmentGroup::new(Span::new(2, 3), Span::new(2, 3));
        let (p, _) = concatenate_group(&d1, &d2, &g).unwrap();
        let texts: Vec<&str> = p.sentences().iter().map(|s| s.text()).collect();
        assert_eq!(texts, ["a", "b", "c"]);

        let g = AlignmentGroup::new(Span::new(2, 4), Span::single(1));
        assert!(matches!(
            concatenate_group(&d1, &d2, &g),
            Err(AlignError::OutOfBounds { .. })
        ));
    }

    fn random_matrix() -> impl Strategy<Value = SimilarityMatrix> {
        (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| {
            prop::collection::vec(0.0f64..=1.0, r * c)
                .prop_map(move |v| SimilarityMatrix::from_fn(r, c, |x, y| v[(x - 1) * c + y - 1]))
        })
    }

    fn as_rows(m: &SimilarityMatrix) -> Vec<Vec<f64>> {
        m.rows().map(<[f64]>::to_vec).collect()
    }

    proptest! {
        #[test]
        fn matches_reference_interpreter(m in random_matrix(),
                                         alpha in prop::sample::select(vec![0.1, 0.3, 0.5, 0.7, 0.9])) {
            let (path, stats) = align_paragraphs_with_stats(&m, &cfg(alpha)).unwrap();
            let reference = vicalign_oracle::paragraph_search(&as_rows(&m), alpha);
            prop_assert_eq!(path.pairs(), reference.marks.as_slice());
            prop_assert_eq!(path.to_binary_matrix(), reference.a);
            prop_assert_eq!(stats.iterations, reference.iterations);
        }

        #[test]
        fn invariants(m in random_matrix(), alpha in 0.0f64..=1.0) {
            let (path, stats) = align_paragraphs_with_stats(&m, &cfg(alpha)).unwrap();
            prop_assert!(path.is_monotone());
            prop_assert!(stats.iterations <= m.n_rows() + m.n_cols());
            prop_assert_eq!(path.pairs()[0], (1, 1));
            for &(x, y) in &path.pairs()[1..] {
                prop_assert!(m.at(x, y) >= alpha);
            }
            for &(x, y) in path.pairs() {
                for &(u, v) in path.pairs() {
                    if x < u {
                        prop_assert!(y <= v);
                    }
                }
            }
            let groups = crate::path::group_alignments(&path).unwrap();
            for w in groups.windows(2) {
                prop_assert!(w[0].src.end < w[1].src.start);
                prop_assert!(w[0].tgt.end < w[1].tgt.start);
            }
        }
    }
}
