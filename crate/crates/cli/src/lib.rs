//! `vicalign` command line: align, align-paragraphs, baseline-jaccard, eval, synth.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on data errors. Output is
//! rendered in memory and written only once the command has succeeded, so a
//! failing run never leaves a partial output file behind.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use vicalign::{
    align_document_paragraphs, align_documents, evaluate, jaccard_align_scored, synthesize_pair,
    AlignmentGroup, Document, GoldAlignment, ParaAlignConfig, PipelineConfig, PipelineResult,
    SentAlignConfig, SentencePair, SynthSpec, TfIdfModel,
};

pub mod render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} must be a non-negative number"))
    }
}

fn non_empty_path(s: &str) -> Result<PathBuf, String> {
    if s.is_empty() {
        Err("path must not be empty".into())
    } else {
        Ok(PathBuf::from(s))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "vicalign",
    version,
    about = "Paragraph and sentence alignment for comparable document pairs"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Source document (one sentence per line, blank lines between paragraphs)
    #[arg(long, value_parser = non_empty_path)]
    pub src: PathBuf,
    /// Target document
    #[arg(long, value_parser = non_empty_path)]
    pub tgt: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: Format,
    /// Write to this file instead of standard output
    #[arg(long, short, value_parser = non_empty_path)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Align paragraphs, then sentences inside each paragraph group
    Align {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 0.5, value_parser = unit_interval)]
        alpha_paragraph: f64,
        #[arg(long, default_value_t = 0.5, value_parser = unit_interval)]
        alpha_sentence: f64,
        #[arg(long, default_value_t = 0.05, value_parser = non_negative)]
        beta: f64,
        #[command(flatten)]
        out: OutputArgs,
        /// Also write the similarity matrices used, as row/col/value TSV
        #[arg(long, value_parser = non_empty_path)]
        dump_matrices: Option<PathBuf>,
    },
    /// Align paragraphs only and print the paragraph groups
    AlignParagraphs {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 0.5, value_parser = unit_interval)]
        alpha_paragraph: f64,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, value_parser = non_empty_path)]
        dump_matrices: Option<PathBuf>,
    },
    /// Every sentence pair with Jaccard similarity above a threshold
    BaselineJaccard {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 0.5, value_parser = unit_interval)]
        threshold: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Precision, recall and F1 of predicted sentence pairs against gold pairs
    Eval {
        #[arg(long, value_parser = non_empty_path)]
        pred: PathBuf,
        #[arg(long, value_parser = non_empty_path)]
        gold: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Generate a synthetic document pair with its gold alignment
    Synth {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// JSON file with generator parameters; missing fields take defaults
        #[arg(long, value_parser = non_empty_path)]
        spec: Option<PathBuf>,
        /// Directory receiving source.txt, target.txt and gold.tsv
        #[arg(long, short, value_parser = non_empty_path)]
        output: PathBuf,
    },
}

/// Files a successful command wants written, plus what goes to standard output.
#[derive(Debug, Default)]
struct Emitted {
    stdout: String,
    files: Vec<(PathBuf, String)>,
}

impl Emitted {
    fn primary(out: &OutputArgs, body: String) -> Self {
        let mut e = Emitted::default();
        match &out.output {
            Some(path) => e.files.push((path.clone(), body)),
            None => e.stdout = body,
        }
        e
    }
}

fn read_document(path: &Path) -> Result<Document> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Document::parse(&raw, path.display().to_string())
        .with_context(|| format!("parsing {}", path.display()))
}

fn read_pairs(path: &Path) -> Result<std::collections::BTreeSet<SentencePair>> {
    let f = fs::File::open(path).with_context(|| format!("reading {}", path.display()))?;
    vicalign::eval::read_pairs(BufReader::new(f))
        .with_context(|| format!("parsing {}", path.display()))
}

fn dump_pipeline_matrices(result: &PipelineResult) -> String {
    let mut out = String::from("# paragraph matrix\n");
    out.push_str(&result.paragraph_matrix.to_tsv());
    for g in &result.groups {
        let _ = writeln!(
            out,
            "# sentence matrix src={} tgt={}",
            g.group.src, g.group.tgt
        );
        out.push_str(&g.sentence_matrix.to_tsv());
    }
    out
}

fn execute(cmd: &Command) -> Result<Emitted> {
    match cmd {
        Command::Align {
            pair,
            alpha_paragraph,
            alpha_sentence,
            beta,
            out,
            dump_matrices,
        } => {
            let d1 = read_document(&pair.src)?;
            let d2 = read_document(&pair.tgt)?;
            let cfg = PipelineConfig {
                paragraph: ParaAlignConfig::new(*alpha_paragraph)?,
                sentence: SentAlignConfig::new(*alpha_sentence, *beta)?,
            };
            let result = align_documents(&d1, &d2, &cfg)?;
            let body = match out.format {
                Format::Tsv => render::alignment_tsv(&result),
                Format::Json => render::alignment_json(&d1, &d2, &result)?,
            };
            let mut e = Emitted::primary(out, body);
            if let Some(path) = dump_matrices {
                e.files
                    .push((path.clone(), dump_pipeline_matrices(&result)));
            }
            Ok(e)
        }
        Command::AlignParagraphs {
            pair,
            alpha_paragraph,
            out,
            dump_matrices,
        } => {
            let d1 = read_document(&pair.src)?;
            let d2 = read_document(&pair.tgt)?;
            let cfg = ParaAlignConfig::new(*alpha_paragraph)?;
            let model = TfIdfModel::fit_documents(&d1, &d2)?;
            let (matrix, path, groups) = align_document_paragraphs(&model, &d1, &d2, &cfg)?;
            let scores: Vec<f64> = groups
                .iter()
                .map(|g| group_score(&matrix, &path, g))
                .collect();
            let body = match out.format {
                Format::Tsv => render::paragraph_groups_tsv(&groups, &scores),
                Format::Json => {
                    render::paragraph_groups_json(&d1, &d2, &cfg, &path, &groups, &scores)?
                }
            };
            let mut e = Emitted::primary(out, body);
            if let Some(p) = dump_matrices {
                e.files.push((
                    p.clone(),
                    format!("# paragraph matrix\n{}", matrix.to_tsv()),
                ));
            }
            Ok(e)
        }
        Command::BaselineJaccard {
            pair,
            threshold,
            out,
        } => {
            let d1 = read_document(&pair.src)?;
            let d2 = read_document(&pair.tgt)?;
            let scored = jaccard_align_scored(&d1, &d2, *threshold);
            let body = match out.format {
                Format::Tsv => render::pairs_tsv(scored.iter().map(|(p, s)| (*p, *s))),
                Format::Json => render::baseline_json(&d1, &d2, *threshold, &scored)?,
            };
            Ok(Emitted::primary(out, body))
        }
        Command::Eval { pred, gold, out } => {
            let predicted = read_pairs(pred)?;
            let gold = GoldAlignment::new(read_pairs(gold)?);
            let report = evaluate(&predicted, &gold);
            let body = match out.format {
                Format::Tsv => render::report_tsv(&report),
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            Ok(Emitted::primary(out, body))
        }
        Command::Synth { seed, spec, output } => {
            let spec = match spec {
                Some(path) => {
                    let raw = fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str::<SynthSpec>(&raw)
                        .with_context(|| format!("parsing {}", path.display()))?
                }
                None => SynthSpec::default(),
            };
            let pair = synthesize_pair(*seed, &spec)?;
            let files = vec![
                (output.join("source.txt"), pair.source.to_corpus_string()),
                (output.join("target.txt"), pair.target.to_corpus_string()),
                (output.join("gold.tsv"), pair.gold.to_tsv()),
            ];
            let stdout = files
                .iter()
                .map(|(p, _)| format!("{}\n", p.display()))
                .collect();
            Ok(Emitted { stdout, files })
        }
    }
}

/// Mean paragraph similarity over the path cells inside a group.
fn group_score(
    m: &vicalign::SimilarityMatrix,
    path: &vicalign::AlignmentPath,
    g: &AlignmentGroup,
) -> f64 {
    let cells: Vec<f64> = path
        .pairs()
        .iter()
        .filter(|(x, y)| g.src.contains(*x) && g.tgt.contains(*y))
        .map(|&(x, y)| m.at(x, y))
        .collect();
    cells.iter().sum::<f64>() / cells.len().max(1) as f64
}

fn commit(emitted: &Emitted, synth_dir: Option<&Path>) -> Result<()> {
    if let Some(dir) = synth_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for (path, body) in &emitted.files {
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };

    let synth_dir = match &cfg.command {
        Command::Synth { output, .. } => Some(output.as_path()),
        _ => None,
    };
    let outcome = execute(&cfg.command).and_then(|emitted| {
        commit(&emitted, synth_dir)?;
        stdout.write_all(emitted.stdout.as_bytes())?;
        Ok(())
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}
