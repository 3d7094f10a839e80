//! Settings merged from defaults, an optional TOML file, and flags.

use std::path::{Path, PathBuf};

use anyhow::Context;
use rcsa::pipeline::{Engine, Strategy};
use rcsa::query::{ClassLexicon, PhraseDictionary};
use rcsa::retrieval::{read_corpus, Document, InvertedIndex};
use rcsa::significance::DEFAULT_PERMUTATIONS;
use rcsa::text::{Stopwords, TextPipeline};
use rcsa::{fixtures, kb::KnowledgeBase};
use serde::Deserialize;

use crate::GlobalArgs;

pub const DEFAULT_K: usize = 10;
pub const DEFAULT_SEED: u64 = 0;

/// `--config` file contents; every key is optional. Relative paths are
/// resolved against the file's directory.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub kb_dir: Option<PathBuf>,
    pub phrases: Option<PathBuf>,
    pub class_lexicon: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub index: Option<PathBuf>,
    pub qrels: Option<PathBuf>,
    pub strategy: Option<String>,
    pub k: Option<usize>,
    pub permutations: Option<u64>,
    pub seed: Option<u64>,
    pub max_added: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg: RunConfig =
            toml::from_str(&text).map_err(|e| crate::UsageError(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [
            &mut cfg.kb_dir,
            &mut cfg.phrases,
            &mut cfg.class_lexicon,
            &mut cfg.stopwords,
            &mut cfg.corpus,
            &mut cfg.index,
            &mut cfg.qrels,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Resolved settings. Absent data paths fall back to the bundled fixtures.
#[derive(Debug)]
pub struct Settings {
    pub kb_dir: Option<PathBuf>,
    pub phrases: Option<PathBuf>,
    pub class_lexicon: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub index: Option<PathBuf>,
    pub qrels: Option<PathBuf>,
    pub strategy: Strategy,
    pub k: usize,
    pub permutations: u64,
    pub seed: u64,
    pub max_added: Option<usize>,
}

impl Settings {
    pub fn resolve(args: &GlobalArgs) -> anyhow::Result<Self> {
        let cfg = match &args.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let strategy = match (&args.strategy, &cfg.strategy) {
            (Some(s), _) => *s,
            (None, Some(s)) => s.parse().map_err(crate::UsageError)?,
            (None, None) => Strategy::Rcsa,
        };
        let settings = Settings {
            kb_dir: args.kb_dir.clone().or(cfg.kb_dir),
            phrases: args.phrases.clone().or(cfg.phrases),
            class_lexicon: args.class_lexicon.clone().or(cfg.class_lexicon),
            stopwords: args.stopwords.clone().or(cfg.stopwords),
            corpus: args.corpus.clone().or(cfg.corpus),
            index: args.index.clone().or(cfg.index),
            qrels: args.qrels.clone().or(cfg.qrels),
            strategy,
            k: args.k.or(cfg.k).unwrap_or(DEFAULT_K),
            permutations: args
                .permutations
                .or(cfg.permutations)
                .unwrap_or(DEFAULT_PERMUTATIONS),
            seed: args.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED),
            max_added: args.max_added.or(cfg.max_added),
        };
        if settings.k == 0 {
            return Err(crate::UsageError("--k must be at least 1".into()).into());
        }
        if settings.permutations == 0 {
            return Err(crate::UsageError("--permutations must be at least 1".into()).into());
        }
        Ok(settings)
    }

    pub fn text_pipeline(&self) -> anyhow::Result<TextPipeline> {
        let stopwords = match &self.stopwords {
            Some(p) => Stopwords::load(p)?,
            None => Stopwords::english(),
        };
        Ok(TextPipeline::new(stopwords))
    }

    pub fn engine(&self) -> anyhow::Result<Engine> {
        let kb = match &self.kb_dir {
            Some(dir) => KnowledgeBase::load_dir(dir)?,
            None => fixtures::knowledge_base()?,
        };
        let phrases = match &self.phrases {
            Some(p) => PhraseDictionary::load(p, &kb)?,
            None => fixtures::phrases(&kb)?,
        };
        let lexicon = match &self.class_lexicon {
            Some(p) => ClassLexicon::load(p, &kb)?,
            None => fixtures::class_lexicon(&kb)?,
        };
        Ok(Engine::new(kb, phrases, lexicon, self.text_pipeline()?))
    }

    pub fn corpus(&self) -> anyhow::Result<Vec<Document>> {
        Ok(match &self.corpus {
            Some(p) => read_corpus(p)?,
            None => fixtures::corpus()?,
        })
    }

    /// A saved index when `--index` is given, else one built from the corpus.
    pub fn index(&self, text: &TextPipeline) -> anyhow::Result<InvertedIndex> {
        Ok(match &self.index {
            Some(p) => InvertedIndex::load(p)?,
            None => InvertedIndex::build(self.corpus()?, text)?,
        })
    }
}
