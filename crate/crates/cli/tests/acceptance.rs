//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fusible::constructions::localize_module;
use fusible::harness::{
    generate_corpus, probe_modules, Corpus, CorpusBudget, Instance, Shape, StatementId,
};
use fusible::reference;
use fusible::ring::Sidedness;
use fusible::{FiniteModule, FiniteRing, FusibleWitness, LatticeBudget, SubsetMask};
use serde_json::Value;

type Check = Result<String, String>;

fn tmp() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance")
}

fn write_spec(name: &str, json: &str) -> PathBuf {
    let path = tmp().join(name);
    std::fs::write(&path, json).unwrap();
    path
}

struct Run {
    code: i32,
    stdout: Vec<u8>,
    json: Value,
}

fn cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fusible"))
        .args(args)
        .env_remove("FUSIBLE_MAX_ORDER")
        .env_remove("FUSIBLE_MAX_LATTICE")
        .output()
        .expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        json,
    }
}

fn classify(path: &Path) -> Result<Value, String> {
    let r = cli(&["module", "classify", path.to_str().unwrap(), "--witnesses"]);
    if r.code != 0 {
        return Err(format!("module classify exited {}", r.code));
    }
    Ok(r.json["result"].clone())
}

fn indices(v: &Value) -> Vec<u64> {
    v["elements"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default()
}

fn names(v: &Value) -> Vec<String> {
    v["names"]
        .as_array()
        .map(|a| {
            a.iter()
                .filter_map(|s| s.as_str().map(String::from))
                .collect()
        })
        .unwrap_or_default()
}

/// Collects `(label, ok)` parts into a verdict and a one-line detail.
fn parts(items: &[(&str, bool)]) -> Check {
    let text: Vec<String> = items
        .iter()
        .map(|(l, ok)| format!("{l}:{}", if *ok { "ok" } else { "MISMATCH" }))
        .collect();
    if items.iter().all(|(_, ok)| *ok) {
        Ok(text.join(", "))
    } else {
        Err(text.join(", "))
    }
}

fn element(result: &Value, name: &str) -> Option<usize> {
    result["element_names"]
        .as_array()?
        .iter()
        .position(|n| n.as_str() == Some(name))
}

fn witness_of(result: &Value, e: usize) -> Value {
    result["witnesses"]
        .as_array()
        .and_then(|ws| ws.iter().find(|w| w["element"].as_u64() == Some(e as u64)))
        .map(|w| w["witness"].clone())
        .unwrap_or(Value::String("missing".into()))
}

fn criterion_1() -> Check {
    let r = classify(&write_spec("z6.json", r#"{"kind":"cyclic","n":6}"#))?;
    parts(&[
        (
            "T={0,2,3,4}",
            indices(&r["sets"]["torsion"]) == [0, 2, 3, 4],
        ),
        ("T*={1,5}", indices(&r["sets"]["torsion_free"]) == [1, 5]),
        (
            "R-Zd={1,5}",
            indices(&r["sets"]["regular_multipliers"]) == [1, 5],
        ),
        (
            "regular_fusible",
            r["predicates"]["regular_fusible"] == true,
        ),
        ("not torsion_free", r["predicates"]["torsion_free"] == false),
    ])
}

fn criterion_2() -> Check {
    let spec = r#"{"kind":"submodule","module":{"kind":"regular_module","ring":{"kind":"cyclic","n":8}},"elements":[0,4]}"#;
    let r = classify(&write_spec("4z8.json", spec))?;
    parts(&[
        ("reduced", r["predicates"]["reduced"] == true),
        (
            "not regular_fusible",
            r["predicates"]["regular_fusible"] == false,
        ),
        ("T={0,4}", names(&r["sets"]["torsion"]) == ["0", "4"]),
        ("T* empty", indices(&r["sets"]["torsion_free"]).is_empty()),
        (
            "R-Zd={1,3,5,7}",
            indices(&r["sets"]["regular_multipliers"]) == [1, 3, 5, 7],
        ),
    ])
}

fn criterion_3() -> Check {
    let spec = r#"{"kind":"pattern_matrix","p":2,"k":3,"pattern":[[1,0,0],[0,1,0],[1,1,1]]}"#;
    let r = classify(&write_spec("mat3.json", spec))?;
    let mut t_star = names(&r["sets"]["torsion_free"]);
    t_star.sort();
    let mut displayed = vec![
        "[[1,0,0],[0,1,0],[0,0,1]]",
        "[[1,0,0],[0,1,0],[1,0,1]]",
        "[[1,0,0],[0,1,0],[1,1,1]]",
        "[[1,0,0],[0,1,0],[0,1,1]]",
    ];
    displayed.sort();
    let e31 = element(&r, "[[0,0,0],[0,0,0],[1,0,0]]").ok_or("E31 not found")?;
    let in_z = indices(&r["sets"]["singular"]).contains(&(e31 as u64));
    let in_z2 = indices(&r["sets"]["singular_two_sided"]).contains(&(e31 as u64));
    let verdict = parts(&[
        ("order 32", r["order"] == 32),
        ("T* = four displayed matrices", t_star == displayed),
        ("E31 in Z(M)", in_z),
        ("nonsingular=false", r["predicates"]["nonsingular"] == false),
        (
            "regular_fusible=false",
            r["predicates"]["regular_fusible"] == false,
        ),
        ("no witness for E31", witness_of(&r, e31).is_null()),
    ]);
    let note = format!(
        "; right-ideal essentiality gives Z(M)={:?}; two-sided variant: E31 in Z = {in_z2}, nonsingular = {}",
        indices(&r["sets"]["singular"]),
        r["predicates"]["nonsingular_two_sided"]
    );
    verdict.map(|s| s + &note).map_err(|s| s + &note)
}

fn criterion_4() -> Check {
    let spec = r#"{"kind":"pattern_matrix","p":2,"k":2,"pattern":[[1,0],[1,1]]}"#;
    let r = classify(&write_spec("lower2.json", spec))?;
    let mut t_star = names(&r["sets"]["torsion_free"]);
    t_star.sort();
    let e21 = element(&r, "[[0,0],[1,0]]").ok_or("E21 not found")?;
    parts(&[
        ("order 8", r["order"] == 8),
        (
            "T* = two displayed matrices",
            t_star == ["[[1,0],[0,1]]", "[[1,0],[1,1]]"],
        ),
        ("Z(M)={0}", indices(&r["sets"]["singular"]) == [0]),
        ("nonsingular", r["predicates"]["nonsingular"] == true),
        (
            "regular_fusible=false",
            r["predicates"]["regular_fusible"] == false,
        ),
        ("no witness for E21", witness_of(&r, e21).is_null()),
    ])
}

/// Definitional check, straight from the tables.
fn regular_fusible_in(module: &FiniteModule, m: usize) -> bool {
    reference::regular_fusible_element(module, m)
}

fn criterion_5() -> Check {
    let z4 = Arc::new(FiniteRing::cyclic(4).unwrap());
    let z18 = Arc::new(FiniteRing::cyclic(18).unwrap());
    let (m4, m18) = (FiniteModule::regular(&z4), FiniteModule::regular(&z18));
    let m = FiniteModule::product(&m4, &m18).map_err(|e| e.to_string())?;
    let at = |i: usize, j: usize| i * 18 + j;
    let sub = |elements: Vec<usize>| SubsetMask::from_indices(m.order(), elements);
    let fast = |s: &SubsetMask| m.is_regular_fusible_submodule(s).unwrap();
    let slow = |s: &SubsetMask| {
        s.iter()
            .filter(|&e| e != 0)
            .all(|e| regular_fusible_in(&m, e))
    };
    let small = sub(vec![at(0, 0), at(0, 9)]);
    let thirds = sub((0..6).map(|k| at(0, 3 * k)).collect());
    let mixed = sub(vec![at(0, 0), at(0, 9), at(2, 0), at(2, 9)]);
    parts(&[
        (
            "6,12 fail in Z18",
            !regular_fusible_in(&m18, 6) && !regular_fusible_in(&m18, 12),
        ),
        ("2 fails in Z4", !regular_fusible_in(&m4, 2)),
        (
            "(0,6),(0,12) fail",
            m.regular_fusible_witness(at(0, 6)).unwrap().is_none()
                && m.regular_fusible_witness(at(0, 12)).unwrap().is_none()
                && !regular_fusible_in(&m, at(0, 6))
                && !regular_fusible_in(&m, at(0, 12)),
        ),
        ("{0}x{0,9} regular fusible", fast(&small) && slow(&small)),
        ("{0}x3Z18 not", !fast(&thirds) && !slow(&thirds)),
        ("{0,2}x{0,9} not", !fast(&mixed) && !slow(&mixed)),
    ])
}

fn criterion_6(first: &mut Option<Vec<u8>>) -> Check {
    let r = cli(&["verify", "--statement", "all", "--corpus", "default"]);
    *first = Some(r.stdout.clone());
    let res = &r.json["result"];
    let summary = res["summary"].as_array().cloned().unwrap_or_default();
    let covered = summary.len() == StatementId::ALL.len()
        && summary
            .iter()
            .all(|s| s["holds"].as_u64().unwrap_or(0) + s["vacuous"].as_u64().unwrap_or(0) > 0);
    let detail = format!(
        "{} instances, {} checks, {} violations, {} anomalies",
        res["instances"], res["checks"], res["violations"], res["anomalies"]
    );
    let verdict = parts(&[
        ("exit 0", r.code == 0),
        ("0 violations", res["violations"] == 0),
        ("28 statements evaluated", covered),
    ]);
    verdict
        .map(|s| format!("{s}; {detail}"))
        .map_err(|s| format!("{s}; {detail}"))
}

/// Every distinct ring in the corpus, keyed by digest.
fn corpus_rings(corpus: &Corpus) -> Vec<Arc<FiniteRing>> {
    let mut rings: BTreeMap<[u8; 32], Arc<FiniteRing>> = BTreeMap::new();
    let mut add = |r: &Arc<FiniteRing>| {
        rings.entry(r.digest()).or_insert_with(|| Arc::clone(r));
    };
    for e in &corpus.entries {
        match &e.instance {
            Instance::Module(m) | Instance::Localization { module: m, .. } => add(m.ring_arc()),
            Instance::Pair(a, b) => {
                add(a.ring_arc());
                add(b.ring_arc());
            }
            Instance::Triple(t) => t.iter().for_each(|m| add(m.ring_arc())),
            Instance::Bimodule(b) => add(&Arc::new(b.ring().clone())),
            Instance::Ring(r) => add(r),
        }
    }
    rings.into_values().collect()
}

fn criterion_7(corpus: &Corpus) -> Check {
    let budget = LatticeBudget::default();
    let mut rings = 0;
    let mut ideals = 0;
    let mut bad = Vec::new();
    for r in corpus_rings(corpus).iter().filter(|r| r.order() <= 16) {
        rings += 1;
        for two_sided in [false, true] {
            let filtered = reference::ideals_by_subsets(r, two_sided).expect("order <= 16");
            let closed = r.enumerate_right_ideals(two_sided, &budget).unwrap();
            if filtered != closed {
                bad.push(format!("{} ideals (two_sided={two_sided})", r.label()));
            }
        }
        for ideal in reference::ideals_by_subsets(r, false).unwrap() {
            ideals += 1;
            let cyclic = r.is_essential_right_ideal(&ideal).unwrap();
            let full = r
                .is_essential_by_enumeration(&ideal, Sidedness::Right, &budget)
                .unwrap();
            if cyclic != full {
                bad.push(format!(
                    "{} essentiality of {:?}",
                    r.label(),
                    ideal.to_vec()
                ));
            }
        }
    }
    let detail = format!("{rings} rings of order <= 16, {ideals} right ideals");
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; mismatches: {}", bad.join("; ")))
    }
}

fn criterion_8(corpus: &Corpus) -> Check {
    let mut probed = 0;
    let mut bad = Vec::new();
    for r in corpus_rings(corpus) {
        if reference::division(&r) || !reference::right_duo(&r) {
            continue;
        }
        probed += 1;
        let found = probe_modules(&r).into_iter().any(|(_, ideal)| {
            let q = FiniteModule::quotient_of_ring(&r, &ideal).unwrap();
            !reference::fusible(&q)
        });
        if !found {
            bad.push(format!("no non-fusible probe module over {}", r.label()));
        }
    }
    let mut field_modules = 0;
    for e in &corpus.entries {
        let modules: Vec<&FiniteModule> = match &e.instance {
            Instance::Module(m) | Instance::Localization { module: m, .. } => vec![m],
            Instance::Pair(a, b) => vec![a, b],
            Instance::Triple(t) => t.iter().collect(),
            _ => vec![],
        };
        for m in modules {
            let r = m.ring();
            if reference::division(r) && reference::commutative(r) {
                field_modules += 1;
                if !reference::fusible(m) {
                    bad.push(format!("{} over a field is not fusible", e.label));
                }
            }
        }
    }
    let detail = format!(
        "{probed} non-division right duo rings probed, {field_modules} modules over fields"
    );
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", bad.join("; ")))
    }
}

fn criterion_9(corpus: &Corpus) -> Check {
    let mut pairs = 0;
    let mut instances = 0;
    let mut skipped = 0;
    let mut bad = Vec::new();
    for (_, e) in corpus.of_shape(Shape::Localization) {
        let Instance::Localization {
            module,
            denominators,
        } = &e.instance
        else {
            continue;
        };
        let ring = module.ring();
        if !reference::commutative(ring) {
            continue;
        }
        if !denominators.iter().all(|s| reference::is_unit(ring, s)) {
            skipped += 1;
            continue;
        }
        instances += 1;
        let l = localize_module(module, denominators).map_err(|err| err.to_string())?;
        let local = reference::torsion(&l.module);
        let here = reference::torsion(module);
        for m in module.elements() {
            for s in denominators.iter() {
                pairs += 1;
                let c = l.fractions.class(m, s).unwrap();
                if here[m] != local[c] {
                    bad.push(format!("{}: ({m},{s})", e.label));
                }
            }
        }
    }
    let mut faithful = 0;
    for (_, e) in corpus.of_shape(Shape::Module) {
        let Instance::Module(m) = &e.instance else {
            continue;
        };
        if m.is_zero_module() || !reference::commutative(m.ring()) || !reference::faithful(m) {
            continue;
        }
        faithful += 1;
        let zd = reference::zero_divisors(m);
        let s = SubsetMask::from_predicate(m.ring().order(), |r| !zd[r]);
        let q = localize_module(m, &s)
            .map_err(|err| err.to_string())?
            .module;
        let rf = reference::regular_fusible(m);
        if reference::fusible(&q) != rf || reference::regular_fusible(&q) != rf {
            bad.push(format!("{}: quotient predicates disagree", e.label));
        }
    }
    let detail = format!(
        "{instances} localizations with regular denominators ({pairs} pairs, {skipped} skipped for zero-divisor denominators), {faithful} faithful commutative modules"
    );
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", bad.join("; ")))
    }
}

/// Independent re-verifier: `m·r = x + y`, `r` kills no nonzero element,
/// `x` torsion, `y` torsion-free.
fn witness_valid(module: &FiniteModule, m: usize, w: &FusibleWitness) -> bool {
    let k = module.ring().order();
    let n = module.order();
    let torsion = |e: usize| (1..k).any(|r| module.act(e, r) == 0);
    (1..n).all(|e| module.act(e, w.multiplier) != 0)
        && torsion(w.torsion_part)
        && !torsion(w.free_part)
        && module.act(m, w.multiplier) == module.add(w.torsion_part, w.free_part)
}

fn criterion_10(corpus: &Corpus, first: Option<Vec<u8>>) -> Check {
    let mut emitted = 0;
    let mut failed = Vec::new();
    for (_, e) in corpus.of_shape(Shape::Module) {
        let Instance::Module(m) = &e.instance else {
            continue;
        };
        let c = m.classify().map_err(|err| err.to_string())?;
        for (el, w) in c.witnesses.iter().enumerate() {
            if let Some(w) = w {
                emitted += 1;
                if !witness_valid(m, el, w) {
                    failed.push(format!("{} element {el}", e.label));
                }
            }
        }
    }
    let mat3 = tmp().join("mat3.json");
    let mat3 = mat3.to_str().unwrap();
    let classify_twice = cli(&["module", "classify", mat3, "--witnesses"]).stdout
        == cli(&["module", "classify", mat3, "--witnesses"]).stdout;
    let out = |n: u8| tmp().join(format!("corpus{n}.json"));
    let generate = |n: u8| {
        cli(&[
            "corpus",
            "generate",
            "--max-ring-order",
            "32",
            "--out",
            out(n).to_str().unwrap(),
        ]);
        std::fs::read(out(n)).unwrap_or_default()
    };
    let corpus_twice = generate(1) == generate(2);
    let second = cli(&["verify", "--statement", "all", "--corpus", "default"]).stdout;
    let suite_twice = first.is_some_and(|f| !f.is_empty() && f == second);
    let verdict = parts(&[
        ("witnesses re-verified", failed.is_empty() && emitted > 0),
        ("classify byte-identical", classify_twice),
        ("corpus manifest byte-identical", corpus_twice),
        ("full suite report byte-identical", suite_twice),
    ]);
    let detail = format!("; {emitted} witnesses, {} rejected", failed.len());
    verdict.map(|s| s + &detail).map_err(|s| s + &detail)
}

fn main() {
    std::fs::create_dir_all(tmp()).unwrap();
    let start = Instant::now();
    let corpus = generate_corpus(&CorpusBudget::default()).expect("default corpus");
    println!(
        "default corpus: {} entries in {:.1}s",
        corpus.len(),
        start.elapsed().as_secs_f64()
    );

    let mut suite_output = None;
    let mut failures = 0;
    let mut line = |n: u32, title: &str, limit: Duration, run: &mut dyn FnMut() -> Check| {
        let t = Instant::now();
        let result = run();
        let elapsed = t.elapsed();
        let slow = elapsed > limit;
        let (ok, detail) = match result {
            Ok(d) if !slow => (true, d),
            Ok(d) => (false, format!("{d}; over the {:?} limit", limit)),
            Err(d) => (false, d),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} criterion {n} ({title}) [{:.2}s]: {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    };
    let s = Duration::from_secs;
    line(1, "Z6 fixture", s(1), &mut criterion_1);
    line(2, "4Z8 fixture", s(1), &mut criterion_2);
    line(3, "3x3 pattern ring", s(5), &mut criterion_3);
    line(4, "2x2 pattern ring", s(1), &mut criterion_4);
    line(5, "Z4xZ18 fixture", s(5), &mut criterion_5);
    line(6, "statement suite", s(300), &mut || {
        criterion_6(&mut suite_output)
    });
    line(7, "oracle equivalence", s(30), &mut || criterion_7(&corpus));
    line(8, "division probe", s(30), &mut || criterion_8(&corpus));
    line(9, "localization properties", s(30), &mut || {
        criterion_9(&corpus)
    });
    line(10, "witness integrity and determinism", s(600), &mut || {
        criterion_10(&corpus, suite_output.take())
    });
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
