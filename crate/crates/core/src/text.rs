//! Tokenization, stopword filtering and stemming shared by the query
//! analyzer and the index.

use std::collections::HashSet;
use std::path::Path;

use crate::error::IoContext;
use crate::stem::porter_stem;
use crate::Result;

/// Bundled English stopword list.
pub const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords.txt");

/// A token of raw text with its original casing and byte offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub lower: String,
    pub start: usize,
    pub end: usize,
}

/// Split on any non-alphanumeric character, keeping original case.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_alphanumeric(), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                tokens.push(make_token(text, s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push(make_token(text, s, text.len()));
    }
    tokens
}

fn make_token(text: &str, start: usize, end: usize) -> Token {
    let raw = &text[start..end];
    Token {
        text: raw.to_string(),
        lower: raw.to_lowercase(),
        start,
        end,
    }
}

/// Lowercase and collapse runs of whitespace to a single space.
pub fn normalize_surface(surface: &str) -> String {
    surface
        .split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone)]
pub struct Stopwords {
    words: HashSet<String>,
}

impl Stopwords {
    /// One lowercase token per line; blank lines and `#` lines are skipped.
    pub fn parse(content: &str) -> Self {
        let words = content
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        Stopwords { words }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = std::fs::read_to_string(path).io_context(path)?;
        Ok(Self::parse(&content))
    }

    pub fn english() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }

    pub fn none() -> Self {
        Stopwords {
            words: HashSet::new(),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl Default for Stopwords {
    fn default() -> Self {
        Self::english()
    }
}

/// Lowercase, split, drop stopwords, stem.
///
/// [`TextPipeline::keywords`] stops before stemming; it produces the
/// readable terms shown in expanded queries. [`TextPipeline::normalize_text`]
/// produces index terms. Stemming the keywords of a text yields exactly its
/// index terms.
#[derive(Debug, Clone, Default)]
pub struct TextPipeline {
    stopwords: Stopwords,
}

impl TextPipeline {
    pub fn new(stopwords: Stopwords) -> Self {
        TextPipeline { stopwords }
    }

    pub fn stopwords(&self) -> &Stopwords {
        &self.stopwords
    }

    pub fn keywords(&self, text: &str) -> Vec<String> {
        tokenize(text)
            .into_iter()
            .map(|t| t.lower)
            .filter(|w| !self.stopwords.contains(w))
            .collect()
    }

    pub fn normalize_text(&self, text: &str) -> Vec<String> {
        self.keywords(text).iter().map(|w| stem(w)).collect()
    }
}

/// Stem one lowercase token.
pub fn stem(word: &str) -> String {
    porter_stem(word)
}
