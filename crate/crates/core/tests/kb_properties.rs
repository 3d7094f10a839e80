use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rcsa::kb::{KnowledgeBase, Role};
use rcsa::synthetic::random_kb;
use rcsa::Error;

fn kb_from(seed: u64) -> KnowledgeBase {
    random_kb(&mut StdRng::seed_from_u64(seed), 50, 10)
}

/// Ancestors by walking parent links: the reflexive-transitive closure.
fn ancestors(kb: &KnowledgeBase, class: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut cur = Some(class.to_string());
    while let Some(c) = cur {
        out.insert(c.clone());
        cur = kb.class(&c).unwrap().parent.as_ref().map(|p| p.to_string());
    }
    out
}

proptest! {
    #[test]
    fn subclass_matches_parent_walk(seed in any::<u64>()) {
        let kb = kb_from(seed);
        let classes: Vec<String> = kb.classes().map(|c| c.id.to_string()).collect();
        for a in &classes {
            let up = ancestors(&kb, a);
            prop_assert!(up.contains(kb.root().as_str()));
            for b in &classes {
                prop_assert_eq!(kb.is_subclass(a, b).unwrap(), up.contains(b));
            }
        }
    }

    #[test]
    fn subclass_is_a_partial_order(seed in any::<u64>()) {
        let kb = kb_from(seed);
        let classes: Vec<String> = kb.classes().map(|c| c.id.to_string()).collect();
        for a in &classes {
            prop_assert!(kb.is_subclass(a, a).unwrap());
            for b in &classes {
                let ab = kb.is_subclass(a, b).unwrap();
                if a != b && ab {
                    prop_assert!(!kb.is_subclass(b, a).unwrap());
                }
                prop_assert_eq!(kb.classes_compatible(a, b).unwrap(), ab || kb.is_subclass(b, a).unwrap());
                for c in &classes {
                    if ab && kb.is_subclass(b, c).unwrap() {
                        prop_assert!(kb.is_subclass(a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn neighbours_are_fact_lookups_in_both_directions(seed in any::<u64>()) {
        let kb = kb_from(seed);
        for f in kb.facts() {
            let r = f.relation.as_str();
            prop_assert!(kb.neighbors(f.subject.as_str(), r, Role::Subject).unwrap().contains(&f.object));
            prop_assert!(kb.neighbors(f.object.as_str(), r, Role::Object).unwrap().contains(&f.subject));
        }
        for e in kb.entities() {
            for rel in kb.relations() {
                for role in [Role::Subject, Role::Object] {
                    let got = kb.neighbors(e.id.as_str(), rel.id.as_str(), role).unwrap();
                    let want: BTreeSet<_> = kb
                        .facts()
                        .iter()
                        .filter(|f| f.relation == rel.id && f.end(role) == &e.id)
                        .map(|f| f.end(role.other()).clone())
                        .collect();
                    prop_assert_eq!(got, &want);
                }
            }
        }
    }

    #[test]
    fn tsv_round_trip(seed in any::<u64>()) {
        let kb = kb_from(seed);
        let tsv = kb.to_tsv();
        let again = KnowledgeBase::from_tsv(&tsv.classes, &tsv.entities, &tsv.relations, &tsv.facts).unwrap();
        prop_assert_eq!(again.to_tsv(), tsv);
        prop_assert_eq!(again.facts(), kb.facts());
    }
}

#[test]
fn fixture_loads_from_disk_and_round_trips_through_files() {
    let kb = KnowledgeBase::load_dir(&rcsa::fixtures::data_dir().join("kb")).unwrap();
    assert_eq!(kb.to_tsv(), rcsa::fixtures::knowledge_base().unwrap().to_tsv());
    let dir = tempfile::tempdir().unwrap();
    kb.write_dir(dir.path()).unwrap();
    assert_eq!(KnowledgeBase::load_dir(dir.path()).unwrap().to_tsv(), kb.to_tsv());
}

const CLASSES: &str = "Thing\t\nPlace\tThing\nCity\tPlace\nPerson\tThing\n";
const ENTITIES: &str = "#Rome\tRome\tCity\t\n#Ann\tAnn\tPerson\t\n";
const RELATIONS: &str = "livesIn\tPerson\tPlace\n";

fn load(classes: &str, entities: &str, relations: &str, facts: &str) -> Error {
    KnowledgeBase::from_tsv(classes, entities, relations, facts).unwrap_err()
}

#[test]
fn rejects_malformed_knowledge_bases() {
    assert!(KnowledgeBase::from_tsv(CLASSES, ENTITIES, RELATIONS, "#Ann\tlivesIn\t#Rome\n").is_ok());

    let e = load(CLASSES, ENTITIES, RELATIONS, "#Rome\tlivesIn\t#Rome\n");
    assert!(matches!(e, Error::DomainViolation(_)), "{e}");
    assert!(e.to_string().contains(":1"), "{e}");
    let e = load(CLASSES, ENTITIES, RELATIONS, "#Ann\tlivesIn\t#Ann\n");
    assert!(matches!(e, Error::RangeViolation(_)), "{e}");
    let e = load(CLASSES, ENTITIES, RELATIONS, "#Ann\tlivesIn\t#Paris\n");
    assert!(matches!(e, Error::UnknownEntity { .. }), "{e}");
    let e = load(CLASSES, ENTITIES, RELATIONS, "#Ann\tvisits\t#Rome\n");
    assert!(matches!(e, Error::UnknownRelation { .. }), "{e}");
    let e = load(
        CLASSES,
        ENTITIES,
        RELATIONS,
        "#Ann\tlivesIn\t#Rome\n#Ann\tlivesIn\t#Rome\n",
    );
    assert!(matches!(e, Error::Duplicate { .. }), "{e}");

    let e = load("Thing\t\nA\tB\nB\tA\n", "", "", "");
    assert!(matches!(e, Error::HierarchyCycle(_)), "{e}");
    let e = load("Thing\t\nOther\t\n", "", "", "");
    assert!(matches!(e, Error::RootCount(_)), "{e}");
    let e = load("Thing\t\nA\tMissing\n", "", "", "");
    assert!(matches!(e, Error::UnknownClass { .. }), "{e}");
    let e = load(CLASSES, "#X\tX\tNowhere\t\n", "", "");
    assert!(matches!(e, Error::UnknownClass { .. }), "{e}");
    let e = load(CLASSES, "#X\tX\tCity\t\n#X\tY\tCity\t\n", "", "");
    assert!(matches!(e, Error::Duplicate { .. }), "{e}");
}

#[test]
fn missing_file_reports_path() {
    let dir = tempfile::tempdir().unwrap();
    let e = KnowledgeBase::load_dir(dir.path()).unwrap_err();
    assert!(matches!(e, Error::Io { .. }));
    assert!(e.to_string().contains("classes.tsv"), "{e}");
}
