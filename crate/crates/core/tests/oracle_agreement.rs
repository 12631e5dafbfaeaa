use dllite::oracle::agreement::{check_ontology, Agreement};
use dllite::random::{random_ontology, RandomSpec};
use dllite::rng::seeded;

#[test]
fn reasoner_agrees_with_oracle_on_random_ontologies() {
    let spec = RandomSpec::default();
    let mut total = Agreement::default();
    for seed in 0..1000 {
        let o = random_ontology(&spec, &mut seeded(seed, "agreement"));
        total.absorb(check_ontology(&o, seed < 200).expect("within oracle budget"));
    }
    println!(
        "checked {} statements: {} unsound, {} sat disagreements, {} raw disagreements, {} gaps, {} without small model",
        total.checked,
        total.unsound.len(),
        total.sat_disagreements.len(),
        total.raw_disagreements.len(),
        total.gaps.len(),
        total.no_small_model.len()
    );
    for g in total.gaps.iter().take(10) {
        println!("gap: {g}");
    }
    assert!(total.unsound.is_empty(), "{:#?}", &total.unsound[..total.unsound.len().min(5)]);
    assert!(total.sat_disagreements.is_empty(), "{:#?}", total.sat_disagreements);
    assert!(total.raw_disagreements.is_empty(), "{:#?}", total.raw_disagreements);
}
