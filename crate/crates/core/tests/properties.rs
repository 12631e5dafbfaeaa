use dllite::model::{normalize, Notation};
use dllite::oracle::enumerate_interpretations;
use dllite::parser::{parse_axiom, serialize};
use dllite::random::{random_axiom, random_ontology, RandomSpec};
use dllite::rng::seeded;
use proptest::prelude::*;

fn spec(conjunctions: bool) -> RandomSpec {
    RandomSpec { conjunctions, ..RandomSpec::default() }
}

proptest! {
    #[test]
    fn serialized_axioms_parse_back(seed in any::<u64>(), conjunctions in any::<bool>()) {
        let ax = random_axiom(&spec(conjunctions), &mut seeded(seed, "prop-axiom"));
        for n in [Notation::Unicode, Notation::Ascii] {
            let text = serialize(&ax, n);
            prop_assert_eq!(parse_axiom(&text, n).map_err(|e| format!("{text}: {e}")), Ok(ax.clone()));
        }
    }

    #[test]
    fn normalizing_keeps_the_models(seed in any::<u64>()) {
        let small = RandomSpec { concepts: 3, roles: 2, individuals: 0, max_assertions: 0, ..spec(true) };
        let o = random_ontology(&small, &mut seeded(seed, "prop-normalize"));
        let split = normalize(o.tbox());
        let sig = o.signature();
        for size in 1..=2 {
            for i in enumerate_interpretations(&sig, size) {
                let before = o.tbox().iter().all(|a| i.satisfies_axiom(a));
                let after = split.iter().all(|a| i.satisfies_axiom(a));
                prop_assert_eq!(before, after, "{:?}", o);
            }
        }
    }
}
