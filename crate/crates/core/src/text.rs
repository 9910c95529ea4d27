//! Document → paragraph → sentence model and the tokenizer.
//!
//! The corpus format is pre-segmented UTF-8 text: one sentence per line,
//! paragraphs separated by one or more blank lines. The first paragraph is
//! expected to hold the article title.

use std::io::Read;

use unicode_normalization::UnicodeNormalization;

use crate::error::{AlignError, Result};

/// Lowercase, NFC-normalise and split on every run of non-alphanumeric characters.
///
/// No stemming and no stopword removal. Lowercasing happens before
/// normalisation so that case mappings which emit combining marks are
/// recomposed (or split) consistently on re-tokenisation.
pub fn tokenize(text: &str) -> Vec<String> {
    let folded: String = text.to_lowercase().nfc().collect();
    folded
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    index: usize,
    text: String,
    tokens: Vec<String>,
}

impl Sentence {
    /// Builds a sentence at 1-based `index`. The text is NFC-normalised and tokenized.
    pub fn new(index: usize, text: &str) -> Self {
        assert!(index >= 1, "sentence indices are 1-based");
        let text: String = text.nfc().collect();
        let tokens = tokenize(&text);
        Sentence {
            index,
            text,
            tokens,
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    fn reindexed(&self, index: usize) -> Self {
        Sentence {
            index,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paragraph {
    index: usize,
    sentences: Vec<Sentence>,
}

impl Paragraph {
    /// Builds a paragraph from sentence texts; sentences are numbered 1..n.
    pub fn new<S: AsRef<str>>(index: usize, texts: &[S]) -> Result<Self> {
        if texts.is_empty() {
            return Err(AlignError::EmptyParagraph);
        }
        assert!(index >= 1, "paragraph indices are 1-based");
        let sentences = texts
            .iter()
            .enumerate()
            .map(|(i, t)| Sentence::new(i + 1, t.as_ref()))
            .collect();
        Ok(Paragraph { index, sentences })
    }

    /// Concatenates the sentences of several paragraphs, renumbering them 1..n.
    /// Sentence texts and tokens are carried over unchanged.
    pub fn concatenate<'a, I>(index: usize, parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Paragraph>,
    {
        let sentences: Vec<Sentence> = parts
            .into_iter()
            .flat_map(|p| p.sentences.iter())
            .enumerate()
            .map(|(i, s)| s.reindexed(i + 1))
            .collect();
        if sentences.is_empty() {
            return Err(AlignError::EmptyParagraph);
        }
        Ok(Paragraph { index, sentences })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// 1-based lookup.
    pub fn sentence(&self, index: usize) -> Option<&Sentence> {
        index.checked_sub(1).and_then(|i| self.sentences.get(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    id: String,
    paragraphs: Vec<Paragraph>,
}

impl Document {
    /// Builds a document from paragraphs given as lists of sentence texts.
    pub fn from_paragraphs<P, S>(id: impl Into<String>, paragraphs: &[P]) -> Result<Self>
    where
        P: AsRef<[S]>,
        S: AsRef<str>,
    {
        if paragraphs.is_empty() {
            return Err(AlignError::EmptyDocument);
        }
        let paragraphs = paragraphs
            .iter()
            .enumerate()
            .map(|(i, p)| Paragraph::new(i + 1, p.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Document {
            id: id.into(),
            paragraphs,
        })
    }

    /// Parses the corpus format from a string.
    pub fn parse(raw: &str, id: impl Into<String>) -> Result<Self> {
        let mut blocks: Vec<Vec<&str>> = Vec::new();
        let mut current: Vec<&str> = Vec::new();
        for line in raw.lines() {
            let line = line.trim();
            if line.is_empty() {
                if !current.is_empty() {
                    blocks.push(std::mem::take(&mut current));
                }
            } else {
                current.push(line);
            }
        }
        if !current.is_empty() {
            blocks.push(current);
        }
        if blocks.is_empty() {
            return Err(AlignError::EmptyDocument);
        }
        Document::from_paragraphs(id, &blocks)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn paragraphs(&self) -> &[Paragraph] {
        &self.paragraphs
    }

    /// Number of paragraphs.
    pub fn len(&self) -> usize {
        self.paragraphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paragraphs.is_empty()
    }

    /// 1-based lookup.
    pub fn paragraph(&self, index: usize) -> Option<&Paragraph> {
        index.checked_sub(1).and_then(|i| self.paragraphs.get(i))
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.paragraphs.iter().flat_map(|p| p.sentences.iter())
    }

    pub fn sentence_count(&self) -> usize {
        self.paragraphs.iter().map(Paragraph::len).sum()
    }

    /// Serialises back to the corpus format.
    pub fn to_corpus_string(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.paragraphs.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for s in &p.sentences {
                out.push_str(&s.text);
                out.push('\n');
            }
        }
        out
    }
}

/// Reads a whole corpus file from `reader` and parses it.
pub fn parse_document<R: Read>(mut reader: R, id: impl Into<String>) -> Result<Document> {
    let mut raw = String::new();
    reader.read_to_string(&mut raw)?;
    Document::parse(&raw, id)
}
