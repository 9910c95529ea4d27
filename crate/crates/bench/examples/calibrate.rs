//! Sweeps the synthetic edit mix and prints pooled F1 of the aligner and of
//! the Jaccard baseline over seeds 0..100.
//!
//! `cargo run --release -p vicalign-bench --example calibrate`

use vicalign::{
    align_documents, evaluate, jaccard_align, synthesize_pair, EvalReport, PipelineConfig,
    SynthSpec, DEFAULT_JACCARD_THRESHOLD,
};

fn score(spec: &SynthSpec) -> (EvalReport, EvalReport) {
    let cfg = PipelineConfig::default();
    let mut ours = Vec::new();
    let mut base = Vec::new();
    for seed in 0..100 {
        let pair = synthesize_pair(seed, spec).expect("valid spec");
        let result = align_documents(&pair.source, &pair.target, &cfg).expect("alignable pair");
        ours.push(evaluate(&result.pair_set(), &pair.gold));
        base.push(evaluate(
            &jaccard_align(&pair.source, &pair.target, DEFAULT_JACCARD_THRESHOLD),
            &pair.gold,
        ));
    }
    (EvalReport::pooled(&ours), EvalReport::pooled(&base))
}

fn main() {
    println!("replacement\tparagraph_drop\tsplit\tmerge\tf1\tjaccard_f1");
    for replacement_rate in [0.0, 0.1, 0.2, 0.3] {
        for (paragraph_drop_rate, split_rate, merge_rate) in [(0.15, 0.15, 0.1), (0.3, 0.25, 0.2)] {
            let spec = SynthSpec {
                replacement_rate,
                paragraph_drop_rate,
                split_rate,
                merge_rate,
                ..SynthSpec::structured()
            };
            let (ours, base) = score(&spec);
            println!(
                "{replacement_rate:.2}\t{paragraph_drop_rate:.2}\t{split_rate:.2}\t{merge_rate:.2}\t{:.4}\t{:.4}",
                ours.f1, base.f1
            );
        }
    }
}
