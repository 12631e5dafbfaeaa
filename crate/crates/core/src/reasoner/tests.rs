use super::*;
use crate::model::name;
use crate::parser::{parse_axiom, parse_ontology_strict};

fn ont(text: &str) -> Ontology {
    parse_ontology_strict(text, Notation::Unicode).expect("fixture parses")
}

fn ax(text: &str) -> Axiom {
    parse_axiom(text, Notation::Unicode).expect("axiom parses")
}

fn texts(v: &[Implication]) -> BTreeSet<String> {
    v.iter().map(|i| i.to_string()).collect()
}

#[test]
fn pi_chain_and_reflexives() {
    let r = Reasoner::new(&ont("A ⊑ B\nB ⊑ C\nR1 ⊑ R2\nR2 ⊑ R3"));
    let pis = r.pi_closure();
    assert!(pis.contains(&ax("A ⊑ C")));
    assert!(pis.contains(&ax("R1 ⊑ R3")));
    assert!(pis.contains(&ax("R1⁻ ⊑ R3⁻")));
    assert!(pis.contains(&ax("A ⊑ A")));
    assert!(pis.contains(&ax("∃R1⁻ ⊑ ∃R1⁻")));
    assert_eq!(pis.derivations[&ax("A ⊑ C")].rule, Rule::PI1);
    assert_eq!(pis.derivations[&ax("R1 ⊑ R3")].rule, Rule::PI2);
    assert_eq!(pis.derived().count(), 2);
}

#[test]
fn every_closure_member_is_justified() {
    let t = ont("A ⊑ B\nB ⊑ ¬C\nR1 ⊑ R2\n∃R2 ⊑ ¬D\nE ⊑ ¬∃R2⁻\nR2 ⊑ ¬R3\nR3 ⊑ R4\nR5 ⊑ ¬R5");
    let cl = Reasoner::new(&t).ni_closure();
    for (concl, d) in &cl.derivations {
        assert!(!cl.inputs.contains(concl));
        for p in &d.premises {
            assert!(cl.axioms.contains(p), "{p} premise of {concl} is not a member");
        }
    }
    assert_eq!(cl.derivations[&ax("A ⊑ ¬C")].rule, Rule::NI1);
    assert_eq!(cl.derivations[&ax("∃R1 ⊑ ¬D")].rule, Rule::NI3);
    assert_eq!(cl.derivations[&ax("∃R1⁻ ⊑ ¬E")].rule, Rule::NI5);
    assert_eq!(cl.derivations[&ax("R1 ⊑ ¬R3")].rule, Rule::NI7);
    assert_eq!(cl.derivations[&ax("∃R5 ⊑ ¬∃R5")].rule, Rule::NI9);
}

#[test]
fn derivation_prefers_fewest_steps() {
    // A ⊑ D is one step through the direct edge, three through the chain
    let r = Reasoner::new(&ont("A ⊑ B\nB ⊑ C\nC ⊑ D\nA ⊑ C"));
    let steps = r.entails_inclusion(&ax("A ⊑ D")).steps;
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0].premises, vec!["A ⊑ C".to_string(), "C ⊑ D".to_string()]);
}

#[test]
fn entailment_extras() {
    let r = Reasoner::new(&ont("A ⊑ B\nB ⊑ ¬C\nU ⊑ ¬U\nR1 ⊑ ¬R1"));
    assert!(r.entails_inclusion(&ax("C ⊑ ¬A")).entailed);
    assert!(r.entails_inclusion(&ax("U ⊑ C")).entailed);
    assert!(r.entails_inclusion(&ax("X ⊑ X")).entailed);
    assert!(!r.entails_inclusion(&ax("B ⊑ A")).entailed);
    assert!(r.entails_functionality(&Role::atomic(name("R1"))));
    assert!(r.entails_functionality(&Role::inverted(name("R1"))));
    assert!(!r.entails_functionality(&Role::atomic(name("R2"))));
}

#[test]
fn chase_depth_bounds_fresh_constants() {
    let o = ont("C ⊑ ∃R\n∃R⁻ ⊑ C\nC(a)");
    let ch = chase(&o, 2);
    assert_eq!(ch.fresh, 2);
    assert!(ch.truncated);
    let ch1 = chase(&o, 1);
    assert_eq!(ch1.fresh, 1);
}

#[test]
fn query_through_anonymous_witness() {
    let o = ont("A ⊑ ∃R\n∃R⁻ ⊑ C\nA(a)");
    let q = Query::parse("Q(x) <- R(x, y), C(y)").unwrap();
    let ans = answer_query(&o, &q).unwrap();
    assert_eq!(ans, [vec![name("a")]].into_iter().collect());
    assert_eq!(Query::parse("Q(x, z) ← R(x, y)").unwrap_err(), ReasonError::UnsafeQuery("z".into()));
}

#[test]
fn master_student_is_unsatisfiable() {
    let o = ont("MasterStudent ⊑ Student\nMasterStudent ⊑ Employee\nStudent ⊑ ¬Employee\nMasterStudent(John)");
    let s = is_satisfiable(&o).unwrap();
    assert!(!s.satisfiable);
    let v = s.violation.unwrap();
    assert_eq!(v.axiom, ax("Student ⊑ ¬Employee"));
    assert_eq!(v.support, [Assertion::concept("MasterStudent", "John")].into_iter().collect());
    assert!(matches!(entails_assertion(&o, &Implication::parse("Student(John)").unwrap()), Err(ReasonError::UnsatisfiableOntology(_))));
}

#[test]
fn functionality_clash_and_placeholder_merge() {
    let o = ont("(funct WorksIn)\nWorksIn(John, Google)\nWorksIn(John, Acme)");
    assert!(!is_satisfiable(&o).unwrap().satisfiable);
    let o = ont("(funct WorksAt)\nWorksAt(Anna, RegionalHospital)\nWorksAt(Anna, x3)\nHospital(x3)");
    let r = Reasoner::new(&o);
    assert!(r.is_satisfiable().unwrap());
    let eq = Implication::parse("x3 ≡ RegionalHospital").unwrap();
    assert!(r.entails_assertion(&eq).unwrap().entailed);
    assert!(r.entails_assertion(&Implication::parse("Hospital(RegionalHospital)").unwrap()).unwrap().entailed);
    assert!(r.abox_implications().unwrap().contains(&eq));
}

#[test]
fn functional_role_may_not_be_specialised() {
    let o = ont("(funct S)\nR ⊑ S\nR(a, b)");
    assert!(matches!(is_satisfiable(&o), Err(ReasonError::DialectRejected { .. })));
}

#[test]
fn inverse_role_entailment() {
    let o = ont("WorksIn ⊑ Employs⁻\nWorksIn(John, Google)");
    let r = Reasoner::new(&o);
    let e = r.entails_assertion(&Implication::parse("Employs(Google, John)").unwrap()).unwrap();
    assert!(e.entailed);
    assert_eq!(e.steps[0].rule, "ABX5");
}

#[test]
fn implication_text_round_trip() {
    for t in ["R(a, _)", "R(_, a)", "x1 ≡ Google", "C ⊑ ¬D", "C(a)", "R(a, b)"] {
        assert_eq!(Implication::parse(t).unwrap().to_string(), t);
    }
    assert_eq!(Implication::parse("x1 == Google").unwrap().to_string(), "x1 ≡ Google");
}

#[test]
fn raw_and_chased_satisfiability_agree_on_small_cases() {
    for text in [
        "A ⊑ ∃R\n∃R ⊑ ¬A\nA(a)",
        "A ⊑ B\nB ⊑ ¬C\nA(a)\nC(a)",
        "R ⊑ S\nS ⊑ ¬T\nR(a, b)\nT(a, b)",
        "A ⊑ ∃R\nR ⊑ S\n∃S ⊑ ¬A\nA(a)",
        "A ⊑ B\nA(a)",
    ] {
        let r = Reasoner::new(&ont(text));
        assert_eq!(r.is_satisfiable().unwrap(), r.is_satisfiable_raw().unwrap(), "{text}");
    }
}

#[test]
fn tbox_implications_exclude_inputs() {
    let got = texts(&extract_tbox_implications(ont("A ⊑ B\nB ⊑ C").tbox()));
    assert_eq!(got, ["A ⊑ C".to_string()].into_iter().collect());
}
