//! TF-IDF cosine, Jaccard, and the similarity matrices consumed by the aligners.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{AlignError, Result};
use crate::text::{Document, Paragraph, Sentence};

/// A bag of tokens to compare: a sentence, or a concatenation of sentences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TextUnit {
    tokens: Vec<String>,
}

impl TextUnit {
    pub fn new(tokens: Vec<String>) -> Self {
        TextUnit { tokens }
    }

    pub fn from_sentence(sentence: &Sentence) -> Self {
        TextUnit::new(sentence.tokens().to_vec())
    }

    /// Token lists joined in order.
    pub fn concat<'a, I>(sentences: I) -> Self
    where
        I: IntoIterator<Item = &'a Sentence>,
    {
        TextUnit::new(
            sentences
                .into_iter()
                .flat_map(|s| s.tokens().iter().cloned())
                .collect(),
        )
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

impl From<&Sentence> for TextUnit {
    fn from(s: &Sentence) -> Self {
        TextUnit::from_sentence(s)
    }
}

/// Sparse TF-IDF vector with entries sorted by token id.
#[derive(Debug, Clone, PartialEq)]
pub struct TfIdfVector {
    entries: Vec<(usize, f64)>,
    norm: f64,
}

impl TfIdfVector {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Cosine of two non-negative vectors, clamped to [0, 1]. Zero vectors score 0.
    pub fn cosine(&self, other: &TfIdfVector) -> f64 {
        if self.is_zero() || other.is_zero() {
            return 0.0;
        }
        if self.entries == other.entries {
            return 1.0;
        }
        let (mut i, mut j) = (0, 0);
        let mut dot = 0.0;
        while i < self.entries.len() && j < other.entries.len() {
            let (a, wa) = self.entries[i];
            let (b, wb) = other.entries[j];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    dot += wa * wb;
                    i += 1;
                    j += 1;
                }
            }
        }
        (dot / (self.norm * other.norm)).clamp(0.0, 1.0)
    }
}

/// Vocabulary and smoothed inverse document frequencies.
///
/// `idf(t) = ln((n_docs + 1) / (df(t) + 1)) + 1`, so every known token has a
/// strictly positive weight.
#[derive(Debug, Clone)]
pub struct TfIdfModel {
    vocabulary: HashMap<String, usize>,
    idf: Vec<f64>,
    n_docs: usize,
}

impl TfIdfModel {
    /// Fits over `units`; each unit counts as one document for document frequency.
    pub fn fit(units: &[TextUnit]) -> Result<Self> {
        TfIdfModel::fit_token_lists(units.iter().map(|u| u.tokens()))
    }

    /// Fits over every sentence of both documents.
    pub fn fit_documents(d1: &Document, d2: &Document) -> Result<Self> {
        TfIdfModel::fit_token_lists(d1.sentences().chain(d2.sentences()).map(|s| s.tokens()))
    }

    pub fn fit_token_lists<'a, I>(lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [String]>,
    {
        let mut vocabulary: HashMap<String, usize> = HashMap::new();
        let mut df: Vec<usize> = Vec::new();
        let mut n_docs = 0;
        let mut seen = HashSet::new();
        for tokens in lists {
            n_docs += 1;
            seen.clear();
            for t in tokens {
                let next_id = vocabulary.len();
                let id = *vocabulary.entry(t.clone()).or_insert(next_id);
                if id == df.len() {
                    df.push(0);
                }
                if seen.insert(id) {
                    df[id] += 1;
                }
            }
        }
        if n_docs == 0 {
            return Err(AlignError::EmptyCorpus);
        }
        let n = n_docs as f64;
        let idf = df
            .iter()
            .map(|&d| ((n + 1.0) / (d as f64 + 1.0)).ln() + 1.0)
            .collect();
        Ok(TfIdfModel {
            vocabulary,
            idf,
            n_docs,
        })
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn vocabulary_len(&self) -> usize {
        self.idf.len()
    }

    pub fn token_id(&self, token: &str) -> Option<usize> {
        self.vocabulary.get(token).copied()
    }

    pub fn idf(&self, token: &str) -> Option<f64> {
        self.token_id(token).map(|id| self.idf[id])
    }

    /// Raw term counts times idf. Unknown tokens are dropped.
    pub fn vectorize<'a, I>(&self, tokens: I) -> TfIdfVector
    where
        I: IntoIterator<Item = &'a String>,
    {
        let mut counts: HashMap<usize, f64> = HashMap::new();
        for t in tokens {
            if let Some(&id) = self.vocabulary.get(t.as_str()) {
                *counts.entry(id).or_insert(0.0) += 1.0;
            }
        }
        let mut entries: Vec<(usize, f64)> = counts
            .into_iter()
            .map(|(id, tf)| (id, tf * self.idf[id]))
            .collect();
        entries.sort_unstable_by_key(|&(id, _)| id);
        let norm = entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
        TfIdfVector { entries, norm }
    }

    pub fn vectorize_unit(&self, unit: &TextUnit) -> TfIdfVector {
        self.vectorize(unit.tokens())
    }
}

/// TF-IDF cosine similarity of two units under `model`.
pub fn cosine(model: &TfIdfModel, u: &TextUnit, v: &TextUnit) -> f64 {
    model.vectorize_unit(u).cosine(&model.vectorize_unit(v))
}

/// Set Jaccard over token types; two empty units score 0.
pub fn jaccard(u: &TextUnit, v: &TextUnit) -> f64 {
    jaccard_tokens(u.tokens(), v.tokens())
}

pub fn jaccard_tokens(u: &[String], v: &[String]) -> f64 {
    let a: HashSet<&str> = u.iter().map(String::as_str).collect();
    let b: HashSet<&str> = v.iter().map(String::as_str).collect();
    let union = a.union(&b).count();
    if union == 0 {
        return 0.0;
    }
    a.intersection(&b).count() as f64 / union as f64
}

/// Dense row-major matrix of similarities in [0, 1], addressed with 1-based indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n_rows: usize,
    n_cols: usize,
    values: Vec<f64>,
}

impl SimilarityMatrix {
    /// Builds a matrix from `f(row, col)` with 1-based arguments.
    ///
    /// Panics if `f` yields a value outside [0, 1].
    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(n_rows * n_cols);
        for x in 1..=n_rows {
            for y in 1..=n_cols {
                let v = f(x, y);
                assert!(
                    (0.0..=1.0).contains(&v),
                    "similarity {v} at ({x}, {y}) outside [0, 1]"
                );
                values.push(v);
            }
        }
        SimilarityMatrix {
            n_rows,
            n_cols,
            values,
        }
    }

    /// Builds a matrix from rows. Zero-sized matrices are representable so
    /// that the aligners can reject them explicitly.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(AlignError::InvalidConfig(format!(
                    "row {} has {} columns, expected {n_cols}",
                    i + 1,
                    row.len()
                )));
            }
            for v in row {
                if !(0.0..=1.0).contains(&v) {
                    return Err(AlignError::InvalidConfig(format!(
                        "similarity {v} outside [0, 1]"
                    )));
                }
                values.push(v);
            }
        }
        Ok(SimilarityMatrix {
            n_rows,
            n_cols,
            values,
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_empty(&self) -> bool {
        self.n_rows == 0 || self.n_cols == 0
    }

    pub fn in_bounds(&self, x: usize, y: usize) -> bool {
        (1..=self.n_rows).contains(&x) && (1..=self.n_cols).contains(&y)
    }

    /// Entry at 1-based `(x, y)`, or `None` outside the matrix.
    pub fn get(&self, x: usize, y: usize) -> Option<f64> {
        self.in_bounds(x, y)
            .then(|| self.values[(x - 1) * self.n_cols + (y - 1)])
    }

    /// Entry at 1-based `(x, y)`; panics when out of bounds.
    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.get(x, y)
            .unwrap_or_else(|| panic!("({x}, {y}) outside {}x{} matrix", self.n_rows, self.n_cols))
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.n_cols.max(1)).take(self.n_rows)
    }

    /// `row<TAB>col<TAB>value` lines, 1-based, six decimals.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for x in 1..=self.n_rows {
            for y in 1..=self.n_cols {
                let _ = writeln!(out, "{x}\t{y}\t{:.6}", self.at(x, y));
            }
        }
        out
    }
}

/// Sentence vectors of a paragraph under `model`.
pub(crate) fn paragraph_vectors(model: &TfIdfModel, p: &Paragraph) -> Vec<TfIdfVector> {
    p.sentences()
        .iter()
        .map(|s| model.vectorize(s.tokens()))
        .collect()
}

/// Sentence-by-sentence cosine matrix, `‖P1‖ × ‖P2‖`.
pub fn sentence_matrix(model: &TfIdfModel, p1: &Paragraph, p2: &Paragraph) -> SimilarityMatrix {
    let a = paragraph_vectors(model, p1);
    let b = paragraph_vectors(model, p2);
    SimilarityMatrix::from_fn(a.len(), b.len(), |x, y| a[x - 1].cosine(&b[y - 1]))
}

/// Paragraph-by-paragraph matrix, `‖D1‖ × ‖D2‖`; each entry is the best
/// cosine over all sentence pairs drawn from the two paragraphs.
pub fn paragraph_matrix(model: &TfIdfModel, d1: &Document, d2: &Document) -> SimilarityMatrix {
    let a: Vec<Vec<TfIdfVector>> = d1
        .paragraphs()
        .iter()
        .map(|p| paragraph_vectors(model, p))
        .collect();
    let b: Vec<Vec<TfIdfVector>> = d2
        .paragraphs()
        .iter()
        .map(|p| paragraph_vectors(model, p))
        .collect();
    SimilarityMatrix::from_fn(a.len(), b.len(), |x, y| {
        let mut best = 0.0f64;
        for s in &a[x - 1] {
            for t in &b[y - 1] {
                best = best.max(s.cosine(t));
            }
        }
        best
    })
}
