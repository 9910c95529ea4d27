//! Jaccard-threshold baseline, gold alignments and precision/recall scoring.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::BufRead;

use serde::Serialize;

use crate::coords::{SentencePair, SentenceRef};
use crate::error::{AlignError, Result};
use crate::similarity::jaccard_tokens;
use crate::text::Document;

pub const DEFAULT_JACCARD_THRESHOLD: f64 = 0.5;

/// Known-true sentence correspondences between two documents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldAlignment {
    pairs: BTreeSet<SentencePair>,
}

impl GoldAlignment {
    pub fn new(pairs: impl IntoIterator<Item = SentencePair>) -> Self {
        GoldAlignment {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn pairs(&self) -> &BTreeSet<SentencePair> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks every coordinate against the two documents.
    pub fn validate(&self, d1: &Document, d2: &Document) -> Result<()> {
        for p in &self.pairs {
            check_ref(d1, p.src)?;
            check_ref(d2, p.tgt)?;
        }
        Ok(())
    }

    /// Reads the four-column TSV format; `#` lines and blank lines are skipped.
    /// A fifth (score) column, as written by the aligner, is tolerated and ignored.
    pub fn read<R: BufRead>(reader: R) -> Result<Self> {
        read_pairs(reader).map(GoldAlignment::new)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# src_par\tsrc_sent\ttgt_par\ttgt_sent\n");
        for p in &self.pairs {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                p.src.par, p.src.sent, p.tgt.par, p.tgt.sent
            );
        }
        out
    }
}

fn check_ref(d: &Document, r: SentenceRef) -> Result<()> {
    let p = d.paragraph(r.par).ok_or(AlignError::OutOfBounds {
        index: r.par,
        bound: d.len(),
    })?;
    p.sentence(r.sent).ok_or(AlignError::OutOfBounds {
        index: r.sent,
        bound: p.len(),
    })?;
    Ok(())
}

/// Parses sentence pairs from TSV (four 1-based integer columns, optional fifth column).
pub fn read_pairs<R: BufRead>(reader: R) -> Result<BTreeSet<SentencePair>> {
    let mut out = BTreeSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != 4 && fields.len() != 5 {
            return Err(AlignError::Parse {
                line: i + 1,
                message: format!("expected 4 tab-separated columns, found {}", fields.len()),
            });
        }
        let mut nums = [0usize; 4];
        for (slot, f) in nums.iter_mut().zip(&fields) {
            *slot = f
                .trim()
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| AlignError::Parse {
                    line: i + 1,
                    message: format!("{f:?} is not a positive integer"),
                })?;
        }
        out.insert(SentencePair::from_tuple((
            nums[0], nums[1], nums[2], nums[3],
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct EvalReport {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

impl EvalReport {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Self {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        EvalReport {
            precision,
            recall,
            f1,
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_,
        }
    }

    /// Micro-average: pools the counts of several reports.
    pub fn pooled<'a>(reports: impl IntoIterator<Item = &'a EvalReport>) -> Self {
        let (tp, fp, fn_) = reports.into_iter().fold((0, 0, 0), |acc, r| {
            (
                acc.0 + r.true_positives,
                acc.1 + r.false_positives,
                acc.2 + r.false_negatives,
            )
        });
        EvalReport::from_counts(tp, fp, fn_)
    }
}

/// Exact-match precision, recall and F1. Empty predictions score P = 0.
pub fn evaluate<'a, I>(predicted: I, gold: &GoldAlignment) -> EvalReport
where
    I: IntoIterator<Item = &'a SentencePair>,
{
    let predicted: BTreeSet<&SentencePair> = predicted.into_iter().collect();
    let tp = predicted.iter().filter(|p| gold.pairs.contains(p)).count();
    EvalReport::from_counts(tp, predicted.len() - tp, gold.len() - tp)
}

/// Every cross-document sentence pair whose Jaccard similarity is strictly
/// above `threshold`, with its score. No paragraph step, no ordering constraint.
pub fn jaccard_align_scored(
    d1: &Document,
    d2: &Document,
    threshold: f64,
) -> Vec<(SentencePair, f64)> {
    let mut out = Vec::new();
    for p in d1.paragraphs() {
        for s in p.sentences() {
            for q in d2.paragraphs() {
                for t in q.sentences() {
                    let j = jaccard_tokens(s.tokens(), t.tokens());
                    if j > threshold {
                        out.push((
                            SentencePair::new(
                                SentenceRef::new(p.index(), s.index()),
                                SentenceRef::new(q.index(), t.index()),
                            ),
                            j,
                        ));
                    }
                }
            }
        }
    }
    out
}

pub fn jaccard_align(d1: &Document, d2: &Document, threshold: f64) -> BTreeSet<SentencePair> {
    jaccard_align_scored(d1, d2, threshold)
        .into_iter()
        .map(|(p, _)| p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(a: usize, b: usize, c: usize, d: usize) -> SentencePair {
        SentencePair::from_tuple((a, b, c, d))
    }

    #[test]
    fn evaluate_examples() {
        let gold = GoldAlignment::new([pair(1, 1, 1, 1), pair(2, 1, 2, 1)]);
        let r = evaluate(gold.pairs(), &gold);
        assert_eq!((r.precision, r.recall, r.f1), (1.0, 1.0, 1.0));

        let gold = GoldAlignment::new([pair(1, 1, 1, 1), pair(3, 1, 3, 1)]);
        let pred = [pair(1, 1, 1, 1), pair(2, 1, 2, 1)];
        let r = evaluate(&pred, &gold);
        assert_eq!((r.precision, r.recall, r.f1), (0.5, 0.5, 0.5));
        assert_eq!(
            (r.true_positives, r.false_positives, r.false_negatives),
            (1, 1, 1)
        );

        let r = evaluate(&[], &gold);
        assert_eq!((r.precision, r.recall, r.f1), (0.0, 0.0, 0.0));

        let r = evaluate(&pred, &GoldAlignment::default());
        assert_eq!((r.precision, r.recall, r.f1), (0.0, 0.0, 0.0));
    }

    #[test]
    fn pooled_is_micro_average() {
        let a = EvalReport::from_counts(1, 0, 0);
        let b = EvalReport::from_counts(0, 1, 2);
        let p = EvalReport::pooled([&a, &b]);
        assert_eq!(
            (p.true_positives, p.false_positives, p.false_negatives),
            (1, 1, 2)
        );
        assert_eq!(p.precision, 0.5);
    }

    #[test]
    fn jaccard_baseline_examples() {
        let d = Document::parse("a b c\n\nd e f\ng h\n\nd e f", "d").unwrap();
        let identity = jaccard_align(&d, &d, 0.99);
        let expected: BTreeSet<SentencePair> = [
            pair(1, 1, 1, 1),
            pair(2, 1, 2, 1),
            pair(2, 2, 2, 2),
            pair(3, 1, 3, 1),
            // duplicate sentence "d e f"
            pair(2, 1, 3, 1),
            pair(3, 1, 2, 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(identity, expected);
        assert!(jaccard_align(&d, &d, 1.0).is_empty());
    }

    #[test]
    fn jaccard_baseline_matches_enumeration() {
        // token sets: S1={a,b,c} S2={c,d} S3={e}; T1={a,b} T2={c,d,e} T3={e,f}
        let d1 = Document::parse("a b c\nc d\ne", "1").unwrap();
        let d2 = Document::parse("a b\nc d e\ne f", "2").unwrap();
        // J(S1,T1)=2/3  J(S1,T2)=1/5  J(S1,T3)=0
        // J(S2,T1)=0    J(S2,T2)=2/3  J(S2,T3)=0
        // J(S3,T1)=0    J(S3,T2)=1/3  J(S3,T3)=1/2
        let scored = jaccard_align_scored(&d1, &d2, 0.3);
        let expect = [
            (pair(1, 1, 1, 1), 2.0 / 3.0),
            (pair(1, 2, 1, 2), 2.0 / 3.0),
            (pair(1, 3, 1, 2), 1.0 / 3.0),
            (pair(1, 3, 1, 3), 0.5),
        ];
        assert_eq!(scored.len(), expect.len());
        for ((p, s), (q, t)) in scored.iter().zip(expect.iter()) {
            assert_eq!(p, q);
            assert!((s - t).abs() < 1e-12);
        }
        // strict: 0.5 is not above 0.5
        assert_eq!(jaccard_align(&d1, &d2, 0.5).len(), 2);
    }

    #[test]
    fn gold_io() {
        let raw = "# comment\n1\t1\t1\t1\n\n2\t3\t2\t1\t0.250000\n";
        let gold = GoldAlignment::read(raw.as_bytes()).unwrap();
        assert_eq!(gold.len(), 2);
        assert!(gold.pairs().contains(&pair(2, 3, 2, 1)));
        let again = GoldAlignment::read(gold.to_tsv().as_bytes()).unwrap();
        assert_eq!(again, gold);

        assert!(matches!(
            GoldAlignment::read("1\t2\t3\n".as_bytes()),
            Err(AlignError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            GoldAlignment::read("# x\n1\t0\t1\t1\n".as_bytes()),
            Err(AlignError::Parse { line: 2, .. })
        ));
        assert!(GoldAlignment::read("1\tx\t1\t1\n".as_bytes()).is_err());
    }

    #[test]
    fn gold_validation() {
        let d = Document::parse("a\n\nb\nc", "d").unwrap();
        assert!(GoldAlignment::new([pair(2, 2, 1, 1)])
            .validate(&d, &d)
            .is_ok());
        assert!(GoldAlignment::new([pair(2, 3, 1, 1)])
            .validate(&d, &d)
            .is_err());
        assert!(GoldAlignment::new([pair(1, 1, 3, 1)])
            .validate(&d, &d)
            .is_err());
    }

    fn pair_strategy() -> impl Strategy<Value = SentencePair> {
        (1usize..4, 1usize..4, 1usize..4, 1usize..4).prop_map(SentencePair::from_tuple)
    }

    proptest! {
        #[test]
        fn evaluate_is_order_invariant(mut pred in prop::collection::vec(pair_strategy(), 0..12),
                                       gold in prop::collection::vec(pair_strategy(), 0..12)) {
            let gold_a = GoldAlignment::new(gold.iter().copied());
            let gold_b = GoldAlignment::new(gold.iter().rev().copied());
            let a = evaluate(&pred, &gold_a);
            pred.reverse();
            let b = evaluate(&pred, &gold_b);
            prop_assert_eq!(a, b);
            prop_assert!((0.0..=1.0).contains(&a.f1));
            if a.precision + a.recall > 0.0 {
                prop_assert!((a.f1 - 2.0 * a.precision * a.recall / (a.precision + a.recall)).abs() < 1e-12);
            }
        }

        #[test]
        fn baseline_is_symmetric(p1 in prop::collection::vec(prop::collection::vec("[a-e]( [a-e]){0,3}", 1..3), 1..3),
                                 p2 in prop::collection::vec(prop::collection::vec("[a-e]( [a-e]){0,3}", 1..3), 1..3),
                                 threshold in 0.0f64..1.0) {
            let d1 = Document::from_paragraphs("1", &p1).unwrap();
            let d2 = Document::from_paragraphs("2", &p2).unwrap();
            let forward = jaccard_align(&d1, &d2, threshold);
            let backward: BTreeSet<SentencePair> = jaccard_align(&d2, &d1, threshold).iter().map(SentencePair::transposed).collect();
            prop_assert_eq!(forward, backward);
        }
    }
}
