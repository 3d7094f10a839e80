//! Random knowledge bases, corpora and rankings for property testing and
//! benchmarking.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::kb::{KnowledgeBase, Role};
use crate::query::RelationPattern;
use crate::retrieval::Document;

/// A random single-root class tree with up to `max_entities` entities,
/// `max_relations` relations, and facts that respect every domain and
/// range constraint.
pub fn random_kb<R: Rng>(rng: &mut R, max_entities: usize, max_relations: usize) -> KnowledgeBase {
    let n_classes = rng.gen_range(1..=8);
    let n_entities = rng.gen_range(1..=max_entities.max(1));
    let n_relations = rng.gen_range(1..=max_relations.max(1));
    let mut b = KnowledgeBase::builder();
    let class = |i: usize| format!("C{i}");
    b.class(&class(0), None);
    for i in 1..n_classes {
        let parent = class(rng.gen_range(0..i));
        b.class(&class(i), Some(&parent));
    }
    let mut entity_class = Vec::new();
    for i in 0..n_entities {
        let c = rng.gen_range(0..n_classes);
        entity_class.push(c);
        b.entity(&format!("#e{i}"), &format!("name{i}"), &class(c), &[]);
    }
    let mut relations = Vec::new();
    for i in 0..n_relations {
        let (d, r) = (rng.gen_range(0..n_classes), rng.gen_range(0..n_classes));
        relations.push((format!("r{i}"), class(d), class(r)));
        b.relation(&format!("r{i}"), &class(d), &class(r));
    }
    // Classes only; used to filter candidate facts before the real build.
    let skeleton = b.build().expect("generated hierarchy is a tree");
    let attempts = rng.gen_range(0..=3 * n_entities);
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..attempts {
        let s = rng.gen_range(0..n_entities);
        let o = rng.gen_range(0..n_entities);
        let (rel, dom, ran) = &relations[rng.gen_range(0..n_relations)];
        let ok = skeleton.is_subclass(&class(entity_class[s]), dom).unwrap()
            && skeleton.is_subclass(&class(entity_class[o]), ran).unwrap();
        if ok && seen.insert((s, rel.clone(), o)) {
            b.fact(&format!("#e{s}"), rel, &format!("#e{o}"));
        }
    }
    b.build().expect("generated facts satisfy their constraints")
}

/// A pattern anchored on a random entity, any relation, role and class.
pub fn random_pattern<R: Rng>(rng: &mut R, kb: &KnowledgeBase) -> RelationPattern {
    let entities: Vec<_> = kb.entities().collect();
    let relations: Vec<_> = kb.relations().collect();
    let classes: Vec<_> = kb.classes().collect();
    RelationPattern {
        anchor: entities.choose(rng).expect("non-empty").id.clone(),
        relation: relations.choose(rng).expect("non-empty").id.clone(),
        target_class: classes.choose(rng).expect("non-empty").id.clone(),
        anchor_role: if rng.gen_bool(0.5) {
            Role::Subject
        } else {
            Role::Object
        },
    }
}

/// Terms `w0 .. w{vocab-1}`; they pass through the text pipeline unchanged.
pub fn vocabulary(vocab: usize) -> Vec<String> {
    (0..vocab).map(|i| format!("w{i}")).collect()
}

/// Up to `max_docs` documents of 1–20 words drawn from a vocabulary of at
/// most `max_vocab` terms.
pub fn random_corpus<R: Rng>(rng: &mut R, max_docs: usize, max_vocab: usize) -> (Vec<Document>, Vec<String>) {
    let vocab = vocabulary(rng.gen_range(1..=max_vocab.max(1)));
    let n_docs = rng.gen_range(0..=max_docs);
    let docs = (0..n_docs)
        .map(|i| {
            let len = rng.gen_range(1..=20);
            // skew towards low ids so some terms are common
            let words: Vec<&str> = (0..len)
                .map(|_| {
                    let a = rng.gen_range(0..vocab.len());
                    let b = rng.gen_range(0..vocab.len());
                    vocab[a.min(b)].as_str()
                })
                .collect();
            Document::new(format!("d{i:03}"), words.join(" "))
        })
        .collect();
    (docs, vocab)
}

/// 1–6 terms from `vocab`, repeats allowed, plus sometimes an unseen term.
pub fn random_query<R: Rng>(rng: &mut R, vocab: &[String]) -> Vec<String> {
    let mut q: Vec<String> = (0..rng.gen_range(1..=6))
        .map(|_| vocab.choose(rng).expect("non-empty").clone())
        .collect();
    if rng.gen_bool(0.2) {
        q.push("unseen".to_string());
    }
    q
}

/// A ranking over up to `max_docs` doc ids and a non-empty relevant set,
/// some of which may be missing from the ranking.
pub fn random_judged_ranking<R: Rng>(
    rng: &mut R,
    max_docs: usize,
) -> (Vec<String>, std::collections::BTreeSet<String>) {
    let pool = rng.gen_range(1..=max_docs.max(1));
    let mut ids: Vec<String> = (0..pool).map(|i| format!("d{i}")).collect();
    ids.shuffle(rng);
    let mut relevant: std::collections::BTreeSet<String> =
        ids.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
    if relevant.is_empty() {
        relevant.insert(ids[rng.gen_range(0..pool)].clone());
    }
    let retrieved = rng.gen_range(0..=pool);
    ids.truncate(retrieved);
    (ids, relevant)
}
