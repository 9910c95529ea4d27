//! TSV and JSON renderings of command results.
//!
//! Scores are written with six decimals in TSV; JSON carries the same
//! rounded values so both formats hold identical information.

use std::fmt::Write as _;

use serde::Serialize;
use vicalign::{
    AlignmentGroup, AlignmentPath, Document, EvalReport, ParaAlignConfig, PipelineResult,
    SentencePair, Span,
};

pub const PAIR_HEADER: &str = "# src_par\tsrc_sent\ttgt_par\ttgt_sent\tscore\n";
pub const GROUP_HEADER: &str = "# src_start\tsrc_end\ttgt_start\ttgt_end\tkind\tscore\n";

fn round6(v: f64) -> f64 {
    format!("{v:.6}").parse().expect("formatted float parses")
}

#[derive(Serialize)]
struct JsonPair {
    src_par: usize,
    src_sent: usize,
    tgt_par: usize,
    tgt_sent: usize,
    score: f64,
}

impl JsonPair {
    fn new(p: &SentencePair, score: f64) -> Self {
        JsonPair {
            src_par: p.src.par,
            src_sent: p.src.sent,
            tgt_par: p.tgt.par,
            tgt_sent: p.tgt.sent,
            score: round6(score),
        }
    }
}

#[derive(Serialize)]
struct JsonGroup {
    src: Span,
    tgt: Span,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    score: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<JsonPair>>,
}

impl JsonGroup {
    fn new(g: &AlignmentGroup) -> Self {
        JsonGroup {
            src: g.src,
            tgt: g.tgt,
            kind: g.kind().to_string(),
            score: None,
            pairs: None,
        }
    }
}

#[derive(Serialize)]
struct JsonAlignment<'a> {
    source: &'a str,
    target: &'a str,
    alpha_paragraph: f64,
    alpha_sentence: f64,
    beta: f64,
    paragraph_path: &'a [(usize, usize)],
    groups: Vec<JsonGroup>,
}

pub fn pairs_tsv(pairs: impl IntoIterator<Item = (SentencePair, f64)>) -> String {
    let mut out = String::from(PAIR_HEADER);
    for (p, score) in pairs {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{:.6}",
            p.src.par, p.src.sent, p.tgt.par, p.tgt.sent, score
        );
    }
    out
}

pub fn alignment_tsv(result: &PipelineResult) -> String {
    pairs_tsv(result.sentence_pairs().map(|p| (p.pair, p.score)))
}

pub fn alignment_json(
    d1: &Document,
    d2: &Document,
    result: &PipelineResult,
) -> serde_json::Result<String> {
    let doc = JsonAlignment {
        source: d1.id(),
        target: d2.id(),
        alpha_paragraph: result.config.paragraph.alpha,
        alpha_sentence: result.config.sentence.alpha,
        beta: result.config.sentence.beta,
        paragraph_path: result.paragraph_path.pairs(),
        groups: result
            .groups
            .iter()
            .map(|g| JsonGroup {
                pairs: Some(
                    g.pairs
                        .iter()
                        .map(|p| JsonPair::new(&p.pair, p.score))
                        .collect(),
                ),
                ..JsonGroup::new(&g.group)
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn paragraph_groups_tsv(groups: &[AlignmentGroup], scores: &[f64]) -> String {
    let mut out = String::from(GROUP_HEADER);
    for (g, s) in groups.iter().zip(scores) {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{:.6}",
            g.src.start,
            g.src.end,
            g.tgt.start,
            g.tgt.end,
            g.kind(),
            s
        );
    }
    out
}

pub fn paragraph_groups_json(
    d1: &Document,
    d2: &Document,
    cfg: &ParaAlignConfig,
    path: &AlignmentPath,
    groups: &[AlignmentGroup],
    scores: &[f64],
) -> serde_json::Result<String> {
    #[derive(Serialize)]
    struct Doc<'a> {
        source: &'a str,
        target: &'a str,
        alpha_paragraph: f64,
        paragraph_path: &'a [(usize, usize)],
        groups: Vec<JsonGroup>,
    }
    let doc = Doc {
        source: d1.id(),
        target: d2.id(),
        alpha_paragraph: cfg.alpha,
        paragraph_path: path.pairs(),
        groups: groups
            .iter()
            .zip(scores)
            .map(|(g, &s)| JsonGroup {
                score: Some(round6(s)),
                ..JsonGroup::new(g)
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn baseline_json(
    d1: &Document,
    d2: &Document,
    threshold: f64,
    scored: &[(SentencePair, f64)],
) -> serde_json::Result<String> {
    #[derive(Serialize)]
    struct Doc<'a> {
        source: &'a str,
        target: &'a str,
        threshold: f64,
        pairs: Vec<JsonPair>,
    }
    let doc = Doc {
        source: d1.id(),
        target: d2.id(),
        threshold,
        pairs: scored.iter().map(|(p, s)| JsonPair::new(p, *s)).collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn report_tsv(r: &EvalReport) -> String {
    format!(
        "precision\t{:.6}\nrecall\t{:.6}\nf1\t{:.6}\ntrue_positives\t{}\nfalse_positives\t{}\nfalse_negatives\t{}\n",
        r.precision, r.recall, r.f1, r.true_positives, r.false_positives, r.false_negatives
    )
}
