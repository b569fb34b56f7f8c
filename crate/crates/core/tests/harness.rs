use std::sync::{Arc, OnceLock};

use fusible::harness::{
    check_statement, division_ring_probe, generate_corpus, run_suite, search_counterexample,
    Corpus, CorpusBudget, CorpusEntry, Instance, Shape, StatementId, SuiteOptions, Verdict,
};
use fusible::spec::StructureSpec;
use fusible::FiniteRing;

fn corpus() -> &'static Corpus {
    static C: OnceLock<Corpus> = OnceLock::new();
    C.get_or_init(|| generate_corpus(&CorpusBudget::default()).unwrap())
}

fn entry(label: &str, shape: Shape, spec: StructureSpec) -> CorpusEntry {
    CorpusEntry {
        label: label.into(),
        shape,
        provenance: "test".into(),
        instance: Instance::from_spec(shape, &spec).unwrap(),
        spec,
    }
}

fn z8_quarter() -> CorpusEntry {
    let spec = StructureSpec::Submodule {
        module: Box::new(StructureSpec::regular(StructureSpec::cyclic(8))),
        elements: vec![0, 4],
        label: None,
    };
    entry("4Z8", Shape::Module, spec)
}

#[test]
fn search_examples() {
    let c = corpus();
    let hit = |id: &str, drop: Option<&str>| {
        let r = search_counterexample(c, id.parse().unwrap(), drop).unwrap();
        r.found.map(|h| h.label)
    };
    assert_eq!(hit("ex1_torsionfree", None).as_deref(), Some("Z6"));
    assert_eq!(hit("thm3_ii", None).as_deref(), Some("4Z8"));
    assert_eq!(
        hit("prop3", Some("regular_multipliers_central")).as_deref(),
        Some("lower 2x2 over Z2")
    );
    eprintln!("prop3 with nothing dropped: {:?}", hit("prop3", None));
    assert!(search_counterexample(c, StatementId::Prop3, Some("commutative")).is_err());
}

#[test]
fn check_statement_examples() {
    let z6 = entry(
        "Z6",
        Shape::Module,
        StructureSpec::regular(StructureSpec::cyclic(6)),
    );
    assert_eq!(
        check_statement(StatementId::Prop3, &z6).unwrap().verdict,
        Verdict::Holds
    );
    assert_eq!(
        check_statement(StatementId::Prop4, &z6).unwrap().verdict,
        Verdict::Vacuous
    );
    let q = z8_quarter();
    assert_eq!(
        check_statement(StatementId::Ex1Torsion, &q)
            .unwrap()
            .verdict,
        Verdict::Holds
    );
    assert_eq!(
        check_statement(StatementId::Thm3Ii, &q).unwrap().verdict,
        Verdict::Vacuous
    );
    assert!(check_statement(StatementId::Th6, &q).is_err());
}

#[test]
fn division_probe_examples() {
    let z = |n| Arc::new(FiniteRing::cyclic(n).unwrap());
    assert_eq!(division_ring_probe(&z(2)).unwrap().verdict, Verdict::Holds);
    for n in [4, 6] {
        let out = division_ring_probe(&z(n)).unwrap();
        assert_eq!(out.verdict, Verdict::Holds);
        let Some(fusible) = (match &out.claim {
            fusible::harness::Claim::Equivalent { facts } => facts.first().map(|f| f.value),
            _ => None,
        }) else {
            panic!("probe claim shape")
        };
        assert!(!fusible, "a non-fusible module over Z{n}");
    }
}

#[test]
fn suite_is_deterministic_and_clean() {
    let c = corpus();
    let a = run_suite(c, StatementId::ALL, SuiteOptions::default()).unwrap();
    let b = run_suite(c, StatementId::ALL, SuiteOptions::default()).unwrap();
    assert_eq!(a.violations, 0);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert_eq!(a.summary.len(), 28);
}

#[test]
fn corpus_is_deterministic_and_round_trips() {
    let again = generate_corpus(&CorpusBudget::default()).unwrap();
    let c = corpus();
    assert_eq!(c.manifest(), again.manifest());
    for e in &c.entries {
        let text = serde_json::to_string(&e.spec).unwrap();
        let back = fusible::spec::parse_spec(&text).unwrap();
        let inst = Instance::from_spec(e.shape, &back).unwrap();
        assert_eq!(inst.digest(), e.instance.digest(), "{}", e.label);
    }
}

#[test]
fn small_budget_families() {
    let c = generate_corpus(&CorpusBudget::with_max_ring_order(8)).unwrap();
    let rings: Vec<&str> = c
        .entries
        .iter()
        .filter(|e| e.shape == Shape::Ring)
        .map(|e| e.label.as_str())
        .collect();
    for n in 2..=8 {
        assert!(rings.contains(&format!("Z{n}").as_str()), "Z{n}");
    }
    assert!(rings.iter().any(|l| l.starts_with("Mat2(Z2)[10/11]")));
    assert!(rings.contains(&"Z2∝Z2"));
}
