//! Keyword vector-space retrieval: inverted index, tf.idf weights, cosine
//! ranking.
//!
//! Weights are `tf · ln(N / df)` on both sides. A term present in every
//! document has weight zero and never contributes to a score.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, IoContext, Origin};
use crate::text::TextPipeline;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
        }
    }
}

/// JSON lines, one `{"id": ..., "text": ...}` object per line.
pub fn parse_corpus(source: &str, content: &str) -> Result<Vec<Document>> {
    content
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                at: Origin::line(source, i + 1),
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn read_corpus(path: &Path) -> Result<Vec<Document>> {
    let content = std::fs::read_to_string(path).io_context(path)?;
    parse_corpus(&path.display().to_string(), &content)
}

/// `w = tf · ln(N / df)`; zero when `tf`, `df` is zero or `df == N`.
pub fn tf_idf_weight(tf: u32, df: usize, n: usize) -> f64 {
    assert!(df <= n, "document frequency {df} exceeds collection size {n}");
    if tf == 0 || df == 0 || df == n {
        return 0.0;
    }
    f64::from(tf) * (n as f64 / df as f64).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Posting {
    /// Position in [`InvertedIndex::doc_ids`].
    pub doc: u32,
    pub tf: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoredDoc {
    pub id: String,
    pub score: f64,
}

pub const INDEX_FORMAT: &str = "rcsa-index";
pub const INDEX_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct InvertedIndex {
    doc_ids: Vec<String>,
    doc_norms: Vec<f64>,
    postings: BTreeMap<String, Vec<Posting>>,
}

impl InvertedIndex {
    /// Documents are ordered by id before indexing, so the result does not
    /// depend on input order.
    pub fn build(mut corpus: Vec<Document>, text: &TextPipeline) -> Result<Self> {
        corpus.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = corpus.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateDocument(w[0].id.clone()));
        }
        let counts: Vec<BTreeMap<String, u32>> = corpus
            .par_iter()
            .map(|d| {
                let mut tf = BTreeMap::new();
                for term in text.normalize_text(&d.text) {
                    *tf.entry(term).or_insert(0) += 1;
                }
                tf
            })
            .collect();

        let mut postings: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
        for (doc, tf) in counts.iter().enumerate() {
            for (term, &n) in tf {
                postings.entry(term.clone()).or_default().push(Posting {
                    doc: doc as u32,
                    tf: n,
                });
            }
        }
        let doc_ids: Vec<String> = corpus.into_iter().map(|d| d.id).collect();
        let doc_norms = compute_norms(doc_ids.len(), &postings);
        Ok(InvertedIndex {
            doc_ids,
            doc_norms,
            postings,
        })
    }

    pub fn doc_count(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn vocabulary_size(&self) -> usize {
        self.postings.len()
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn doc_norm(&self, doc: usize) -> f64 {
        self.doc_norms[doc]
    }

    pub fn df(&self, term: &str) -> usize {
        self.postings.get(term).map_or(0, Vec::len)
    }

    pub fn postings(&self, term: &str) -> &[Posting] {
        self.postings.get(term).map_or(&[], Vec::as_slice)
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.postings.keys().map(String::as_str)
    }

    pub fn tf(&self, term: &str, doc_id: &str) -> u32 {
        let Ok(doc) = self.doc_ids.binary_search_by(|d| d.as_str().cmp(doc_id)) else {
            return 0;
        };
        self.postings(term)
            .iter()
            .find(|p| p.doc as usize == doc)
            .map_or(0, |p| p.tf)
    }

    /// Cosine ranking of `query_terms` (already normalized). Repeated terms
    /// count towards the query tf. Zero-score documents are omitted; ties
    /// go to the smaller doc id.
    pub fn rank(&self, query_terms: &[String], k: usize) -> Result<Vec<ScoredDoc>> {
        if k == 0 {
            return Err(Error::InvalidArgument("result cap k must be at least 1".into()));
        }
        let n = self.doc_count();
        let mut query_tf: BTreeMap<&str, u32> = BTreeMap::new();
        for t in query_terms {
            *query_tf.entry(t.as_str()).or_insert(0) += 1;
        }
        let mut query_norm_sq = 0.0;
        let mut dots: HashMap<u32, f64> = HashMap::new();
        for (term, &qtf) in &query_tf {
            let postings = self.postings(term);
            let df = postings.len();
            let wq = tf_idf_weight(qtf, df, n);
            if wq == 0.0 {
                continue;
            }
            query_norm_sq += wq * wq;
            for p in postings {
                *dots.entry(p.doc).or_insert(0.0) += wq * tf_idf_weight(p.tf, df, n);
            }
        }
        if query_norm_sq == 0.0 {
            return Ok(Vec::new());
        }
        let query_norm = query_norm_sq.sqrt();
        let mut scored: Vec<(u32, f64)> = dots
            .into_iter()
            .filter(|&(_, dot)| dot > 0.0)
            .map(|(d, dot)| (d, dot / (query_norm * self.doc_norms[d as usize])))
            .collect();
        // doc positions follow id order, so position breaks ties by id
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        scored.truncate(k);
        Ok(scored
            .into_iter()
            .map(|(d, score)| ScoredDoc {
                id: self.doc_ids[d as usize].clone(),
                score,
            })
            .collect())
    }

    pub fn to_json(&self) -> Result<String> {
        let file = IndexFile {
            format: INDEX_FORMAT.to_string(),
            version: INDEX_VERSION,
            doc_count: self.doc_count(),
            doc_ids: self.doc_ids.clone(),
            doc_norms: self.doc_norms.clone(),
            postings: self
                .postings
                .iter()
                .map(|(t, ps)| (t.clone(), ps.iter().map(|p| (p.doc, p.tf)).collect()))
                .collect(),
        };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let file: IndexFile = serde_json::from_str(json)?;
        if file.format != INDEX_FORMAT {
            return Err(Error::InvalidIndex(format!(
                "unexpected format `{}`",
                file.format
            )));
        }
        if file.version != INDEX_VERSION {
            return Err(Error::InvalidIndex(format!(
                "unsupported version {}",
                file.version
            )));
        }
        let n = file.doc_ids.len();
        if file.doc_count != n || file.doc_norms.len() != n {
            return Err(Error::InvalidIndex("document table sizes disagree".into()));
        }
        if file.doc_ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex("document ids not strictly sorted".into()));
        }
        let mut postings = BTreeMap::new();
        for (term, ps) in file.postings {
            let ps: Vec<Posting> = ps.into_iter().map(|(doc, tf)| Posting { doc, tf }).collect();
            if ps.is_empty()
                || ps.iter().any(|p| p.doc as usize >= n || p.tf == 0)
                || ps.windows(2).any(|w| w[0].doc >= w[1].doc)
            {
                return Err(Error::InvalidIndex(format!("bad postings for `{term}`")));
            }
            postings.insert(term, ps);
        }
        Ok(InvertedIndex {
            doc_ids: file.doc_ids,
            doc_norms: file.doc_norms,
            postings,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = self.to_json()?;
        std::fs::write(path, json).io_context(path)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let json = std::fs::read_to_string(path).io_context(path)?;
        Self::from_json(&json)
    }
}

fn compute_norms(n: usize, postings: &BTreeMap<String, Vec<Posting>>) -> Vec<f64> {
    let mut sq = vec![0.0; n];
    for ps in postings.values() {
        let df = ps.len();
        for p in ps {
            let w = tf_idf_weight(p.tf, df, n);
            sq[p.doc as usize] += w * w;
        }
    }
    sq.into_iter().map(f64::sqrt).collect()
}

#[derive(Serialize, Deserialize)]
struct IndexFile {
    format: String,
    version: u32,
    doc_count: usize,
    doc_ids: Vec<String>,
    doc_norms: Vec<f64>,
    postings: BTreeMap<String, Vec<(u32, u32)>>,
}
