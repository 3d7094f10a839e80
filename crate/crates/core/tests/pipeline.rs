use rcsa::fixtures;
use rcsa::kb::KnowledgeBase;
use rcsa::pipeline::{Engine, Strategy};
use rcsa::query::{ClassLexicon, PhraseDictionary};
use rcsa::retrieval::InvertedIndex;
use rcsa::text::{Stopwords, TextPipeline};

const WORKED: [&str; 4] = [
    "What is the capital of Italy?",
    "How many moons does Jupiter have?",
    "Where is the actress, Marion Davies, buried?",
    "What famous communist leader died in Mexico City?",
];

#[test]
fn worked_patterns() {
    let e = Engine::fixture().unwrap();
    let patterns: Vec<Vec<String>> = WORKED
        .iter()
        .map(|q| {
            e.analyzer()
                .analyze(q)
                .patterns
                .iter()
                .map(|p| p.to_string())
                .collect()
        })
        .collect();
    assert_eq!(
        patterns,
        [
            vec!["[C: Capital]-(R: capitalOf)-[I: #Italy]"],
            vec!["[I: #Jupiter]-(R: moonQuantity)-[C: Number]"],
            vec!["[I: #Marion_Davies]-(R: buriedIn)-[C: Location]"],
            vec!["[C: Leader]-(R: diedIn)-[I: #Mexico_City]"],
        ]
    );
}

#[test]
fn rcsa_activates_a_subset_of_csa() {
    let e = Engine::fixture().unwrap();
    for (_, q) in fixtures::eval_queries().unwrap() {
        let r = e.expand(&q, Strategy::Rcsa, None).unwrap().activation.unwrap();
        let c = e.expand(&q, Strategy::Csa, None).unwrap().activation.unwrap();
        assert!(r.activated.is_subset(&c.activated), "{q}");
        assert!(!r.activated.is_empty(), "{q}");
    }
}

#[test]
fn expansion_reaches_documents_keywords_cannot() {
    let e = Engine::fixture().unwrap();
    let index = InvertedIndex::build(fixtures::corpus().unwrap(), &e.text).unwrap();
    let hits = |s| {
        let (_, docs) = e.search(&index, WORKED[0], s, 10, None).unwrap();
        docs.into_iter().map(|d| d.id).collect::<Vec<_>>()
    };
    assert!(hits(Strategy::Rcsa).contains(&"c01".to_string()));
    assert!(!hits(Strategy::Lexical).contains(&"c01".to_string()));
}

#[test]
fn engine_from_files_matches_fixture() {
    let dir = fixtures::data_dir();
    let kb = KnowledgeBase::load_dir(&dir.join("kb")).unwrap();
    let phrases = PhraseDictionary::load(&dir.join("phrases.tsv"), &kb).unwrap();
    let lexicon = ClassLexicon::load(&dir.join("class_lexicon.tsv"), &kb).unwrap();
    let text = TextPipeline::new(Stopwords::load(&dir.join("stopwords.txt")).unwrap());
    let from_files = Engine::new(kb, phrases, lexicon, text);
    let fixture = Engine::fixture().unwrap();
    for q in WORKED {
        for s in Strategy::ALL {
            assert_eq!(
                from_files.expand(q, s, None).unwrap().query,
                fixture.expand(q, s, None).unwrap().query
            );
        }
    }
}

#[test]
fn unknown_names_in_lexicons_are_rejected() {
    let kb = fixtures::knowledge_base().unwrap();
    assert!(PhraseDictionary::parse("p", "married to\tspouseOf\tobject\n", &kb).is_err());
    assert!(ClassLexicon::parse("c", "galaxy\tGalaxy\tnoun\n", &kb).is_err());
}

#[test]
fn runs_are_deterministic() {
    let e = Engine::fixture().unwrap();
    let index = InvertedIndex::build(fixtures::eval_corpus().unwrap(), &e.text).unwrap();
    let queries = fixtures::eval_queries().unwrap();
    for s in Strategy::ALL {
        let a = e.run(&index, &queries, s, 20, None).unwrap().to_trec();
        let b = e.run(&index, &queries, s, 20, None).unwrap().to_trec();
        assert_eq!(a, b);
        assert!(a.lines().all(|l| l.ends_with(s.as_str())));
    }
}
