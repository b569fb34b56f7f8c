use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use fusible::harness::{
    generate_corpus, run_suite, search_counterexample, CheckOutcome, Corpus, CorpusBudget,
    CorpusEntry, CorpusManifest, Instance, SearchResult, Shape, StatementId, StatementSummary,
    SuiteOptions, Verdict,
};
use fusible::ring::{verify_ring_axioms, RingIdeals, Sidedness};
use fusible::spec::{parse_json, parse_spec, StructureSpec};
use fusible::{recheck_witness, AlgebraError, FiniteModule, LatticeBudget};

use crate::error::CliError;
use crate::report::{ElementSet, Report};

/// Caps read from the environment.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_order: usize,
    pub lattice: LatticeBudget,
}

impl Limits {
    pub fn from_env() -> Result<Limits, CliError> {
        let read = |name: &str, default: usize| -> Result<usize, CliError> {
            match std::env::var(name) {
                Ok(v) => v
                    .trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| CliError::Usage(format!("{name} must be a positive integer"))),
                Err(_) => Ok(default),
            }
        };
        let lattice = LatticeBudget::default();
        Ok(Limits {
            max_order: read("FUSIBLE_MAX_ORDER", fusible::ring::MAX_TABLE_ORDER)?,
            lattice: LatticeBudget {
                max_order: lattice.max_order,
                max_members: read("FUSIBLE_MAX_LATTICE", lattice.max_members)?,
            },
        })
    }

    fn check(&self, what: &str, order: usize) -> Result<(), CliError> {
        if order > self.max_order {
            return Err(AlgebraError::Budget {
                what: format!("{what} of order {order}"),
                cap: self.max_order,
            }
            .into());
        }
        Ok(())
    }
}

pub struct Outcome {
    pub json: String,
    pub exit: i32,
}

fn read_input(path: &Path) -> Result<(Vec<u8>, String), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))?;
    Ok((bytes, text))
}

fn read_spec(path: &Path) -> Result<(Vec<u8>, StructureSpec), CliError> {
    let (bytes, text) = read_input(path)?;
    let spec = parse_spec(&text).map_err(|e| CliError::Spec(path.to_path_buf(), e))?;
    Ok((bytes, spec))
}

/// Input errors raised while resolving a file name the file.
fn in_file(path: &Path, e: AlgebraError) -> CliError {
    match e {
        AlgebraError::Input(m) => {
            CliError::Usage(format!("{}: invalid input: {m}", path.display()))
        }
        other => other.into(),
    }
}

fn finish<T: Serialize>(mut report: Report<T>, start: Instant, timing: bool, exit: i32) -> Outcome {
    if timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    Outcome {
        json: report.to_json(),
        exit,
    }
}

#[derive(Serialize)]
struct AxiomFailureView {
    axiom: &'static str,
    witness: Vec<usize>,
}

#[derive(Serialize)]
struct AxiomsView {
    passed: bool,
    failures: Vec<AxiomFailureView>,
}

impl AxiomsView {
    fn from(report: &fusible::AxiomReport) -> Self {
        AxiomsView {
            passed: report.passed(),
            failures: report
                .failures
                .iter()
                .map(|f| AxiomFailureView {
                    axiom: f.axiom,
                    witness: f.witness.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct RolesView {
    units: ElementSet,
    left_zero_divisors: ElementSet,
    right_zero_divisors: ElementSet,
    regular: ElementSet,
    center: ElementSet,
}

#[derive(Serialize)]
struct RingPredicatesView {
    commutative: bool,
    right_duo: bool,
    domain: bool,
    division: bool,
    field: bool,
    reduced_ring: bool,
    local: bool,
    left_fusible: bool,
    right_fusible: bool,
    fusible: bool,
    regular_left_fusible: bool,
}

#[derive(Serialize)]
struct RingCheckView {
    label: String,
    order: usize,
    axioms: AxiomsView,
    #[serde(skip_serializing_if = "Option::is_none")]
    roles: Option<RolesView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicates: Option<RingPredicatesView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    right_ideals: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    two_sided_ideals: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    element_names: Vec<String>,
}

pub fn ring_check(path: &Path, limits: Limits, timing: bool) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (bytes, spec) = read_spec(path)?;
    let ring = match spec.ring() {
        Ok(r) => r,
        Err(AlgebraError::Axioms(report)) => {
            let order = match &spec {
                StructureSpec::Table { order, .. } => *order,
                _ => 0,
            };
            let view = RingCheckView {
                label: path.display().to_string(),
                order,
                axioms: AxiomsView::from(&report),
                roles: None,
                predicates: None,
                right_ideals: None,
                two_sided_ideals: None,
                element_names: Vec::new(),
            };
            let out = finish(Report::new("ring check", &bytes, view), start, timing, 2);
            return Ok(out);
        }
        Err(e) => return Err(in_file(path, e)),
    };
    limits.check("ring", ring.order())?;
    let axioms = verify_ring_axioms(&ring.tables());
    let names = ring.element_names();
    let roles = ring.element_roles();
    let p = ring.ring_predicates_with(&roles);
    let right = ring.enumerate_right_ideals(false, &limits.lattice)?;
    let two = ring.enumerate_right_ideals(true, &limits.lattice)?;
    let view = RingCheckView {
        label: ring.label().to_string(),
        order: ring.order(),
        axioms: AxiomsView::from(&axioms),
        roles: Some(RolesView {
            units: ElementSet::new(&roles.units, names),
            left_zero_divisors: ElementSet::new(&roles.left_zero_divisors, names),
            right_zero_divisors: ElementSet::new(&roles.right_zero_divisors, names),
            regular: ElementSet::new(&roles.regular, names),
            center: ElementSet::new(&roles.center, names),
        }),
        predicates: Some(RingPredicatesView {
            commutative: p.commutative,
            right_duo: p.right_duo,
            domain: p.domain,
            division: p.division,
            field: p.field,
            reduced_ring: p.reduced_ring,
            local: p.local,
            left_fusible: p.left_fusible,
            right_fusible: p.right_fusible,
            fusible: p.fusible,
            regular_left_fusible: p.regular_left_fusible,
        }),
        right_ideals: Some(right.len()),
        two_sided_ideals: Some(two.len()),
        element_names: names.to_vec(),
    };
    let exit = if axioms.passed() { 0 } else { 1 };
    Ok(finish(
        Report::new("ring check", &bytes, view),
        start,
        timing,
        exit,
    ))
}

#[derive(Serialize)]
struct ModuleSetsView {
    torsion: ElementSet,
    torsion_free: ElementSet,
    zero_divisors: ElementSet,
    regular_multipliers: ElementSet,
    singular: ElementSet,
    singular_two_sided: ElementSet,
    not_regular_fusible: ElementSet,
}

#[derive(Serialize)]
struct ModulePredicatesView {
    faithful: bool,
    torsion_free: bool,
    torsion_module: bool,
    fusible: bool,
    regular_fusible: bool,
    nonsingular: bool,
    nonsingular_two_sided: bool,
    singular: bool,
    reduced: bool,
    torsion_set_is_submodule: bool,
    annihilator_comparability: bool,
    simple: bool,
}

#[derive(Serialize)]
struct WitnessView {
    element: usize,
    name: String,
    /// `[multiplier, torsion_part, free_part]`, or null when none exists.
    witness: Option<[usize; 3]>,
}

#[derive(Serialize)]
struct ModuleClassifyView {
    label: String,
    ring: String,
    order: usize,
    ring_order: usize,
    sets: ModuleSetsView,
    predicates: ModulePredicatesView,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<WitnessView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses_rechecked: Option<usize>,
    element_names: Vec<String>,
    ring_element_names: Vec<String>,
}

fn classify_view(module: &FiniteModule, witnesses: bool) -> Result<ModuleClassifyView, CliError> {
    let ring = module.ring();
    let c = module.classify()?;
    let names = module.element_names();
    let rnames = ring.element_names();
    let singular_two_sided = module.singular_set(&RingIdeals::new(ring), Sidedness::TwoSided);
    let mut rechecked = 0;
    let witness_list = if witnesses {
        let mut out = Vec::new();
        for m in module.nonzero_elements() {
            let w = c.witnesses[m];
            if let Some(w) = &w {
                recheck_witness(module, m, w).map_err(|why| AlgebraError::Consistency {
                    message: format!("emitted witness fails re-verification: {why}"),
                    element: m,
                })?;
                rechecked += 1;
            }
            out.push(WitnessView {
                element: m,
                name: names[m].clone(),
                witness: w.map(|w| [w.multiplier, w.torsion_part, w.free_part]),
            });
        }
        Some(out)
    } else {
        None
    };
    let p = c.predicates;
    Ok(ModuleClassifyView {
        label: module.label().to_string(),
        ring: ring.label().to_string(),
        order: module.order(),
        ring_order: ring.order(),
        sets: ModuleSetsView {
            torsion: ElementSet::new(&c.torsion.torsion, names),
            torsion_free: ElementSet::new(&c.torsion.torsion_free, names),
            zero_divisors: ElementSet::new(&c.zero_divisors, rnames),
            regular_multipliers: ElementSet::new(&c.regular_multipliers, rnames),
            singular: ElementSet::new(&c.singular, names),
            singular_two_sided: ElementSet::new(&singular_two_sided, names),
            not_regular_fusible: ElementSet::new(&c.failing_elements, names),
        },
        predicates: ModulePredicatesView {
            faithful: p.faithful,
            torsion_free: p.torsion_free,
            torsion_module: p.torsion_module,
            fusible: c.fusible,
            regular_fusible: c.regular_fusible,
            nonsingular: p.nonsingular,
            nonsingular_two_sided: singular_two_sided.is_zero_only(),
            singular: p.singular,
            reduced: p.reduced,
            torsion_set_is_submodule: p.torsion_set_is_submodule,
            annihilator_comparability: p.annihilator_comparability,
            simple: module.is_simple(),
        },
        witnesses: witness_list,
        witnesses_rechecked: witnesses.then_some(rechecked),
        element_names: names.to_vec(),
        ring_element_names: rnames.to_vec(),
    })
}

pub fn module_classify(
    path: &Path,
    witnesses: bool,
    limits: Limits,
    timing: bool,
) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (bytes, spec) = read_spec(path)?;
    let module = spec.module().map_err(|e| in_file(path, e))?;
    limits.check("ring", module.ring().order())?;
    limits.check("module", module.order())?;
    let view = classify_view(&module, witnesses)?;
    Ok(finish(
        Report::new("module classify", &bytes, view),
        start,
        timing,
        0,
    ))
}

/// Where a corpus comes from: the built-in generator or a manifest file.
#[derive(Debug, Clone)]
pub enum CorpusSource {
    Default { max_ring_order: Option<usize> },
    File(PathBuf),
}

impl CorpusSource {
    pub fn parse(arg: &str, max_ring_order: Option<usize>) -> CorpusSource {
        if arg == "default" {
            CorpusSource::Default { max_ring_order }
        } else {
            CorpusSource::File(PathBuf::from(arg))
        }
    }

    fn describe(&self) -> String {
        match self {
            CorpusSource::Default { .. } => "default".into(),
            CorpusSource::File(p) => p.display().to_string(),
        }
    }

    /// Loads the corpus and returns the bytes its digest is taken over.
    fn load(&self, limits: Limits) -> Result<(Vec<u8>, Corpus), CliError> {
        let corpus = match self {
            CorpusSource::Default { max_ring_order } => {
                let budget = default_budget(*max_ring_order, limits);
                let bytes = serde_json::to_vec(&budget).expect("budget serializes");
                return Ok((bytes, generate_corpus(&budget)?));
            }
            CorpusSource::File(path) => {
                let (bytes, text) = read_input(path)?;
                let manifest: CorpusManifest =
                    parse_json(&text).map_err(|e| CliError::Spec(path.clone(), e))?;
                (bytes, Corpus::from_manifest(manifest)?)
            }
        };
        for e in &corpus.1.entries {
            check_instance(&e.instance, limits)?;
        }
        Ok(corpus)
    }
}

fn default_budget(max_ring_order: Option<usize>, limits: Limits) -> CorpusBudget {
    let mut budget = match max_ring_order {
        Some(n) => CorpusBudget::with_max_ring_order(n),
        None => CorpusBudget::default(),
    };
    budget.max_ring_order = budget.max_ring_order.min(limits.max_order);
    budget.max_module_order = budget.max_module_order.min(limits.max_order);
    budget
}

fn check_instance(instance: &Instance, limits: Limits) -> Result<(), CliError> {
    let module = |m: &FiniteModule| -> Result<(), CliError> {
        limits.check("ring", m.ring().order())?;
        limits.check("module", m.order())
    };
    match instance {
        Instance::Module(m) | Instance::Localization { module: m, .. } => module(m),
        Instance::Pair(a, b) => module(a).and(module(b)),
        Instance::Triple(t) => t.iter().try_for_each(module),
        Instance::Bimodule(b) => {
            limits.check("ring", b.ring().order())?;
            limits.check("bimodule", b.order())
        }
        Instance::Ring(r) => limits.check("ring", r.order()),
    }
}

/// The shapes a single spec file is checked as.
fn instance_shapes(spec: &StructureSpec) -> Vec<Shape> {
    match spec {
        StructureSpec::RegularModule { .. }
        | StructureSpec::CyclicQuotientModule { .. }
        | StructureSpec::Submodule { .. } => vec![Shape::Module],
        StructureSpec::ProductModule { left, .. } => {
            let mut shapes = vec![Shape::Module, Shape::Pair];
            if matches!(left.as_ref(), StructureSpec::ProductModule { .. }) {
                shapes.push(Shape::Triple);
            }
            shapes
        }
        StructureSpec::Bimodule { .. } => vec![Shape::Bimodule, Shape::Module],
        StructureSpec::Localization { of, .. } => match of.as_ref() {
            StructureSpec::RegularModule { .. }
            | StructureSpec::CyclicQuotientModule { .. }
            | StructureSpec::Submodule { .. }
            | StructureSpec::ProductModule { .. } => vec![Shape::Localization, Shape::Module],
            _ => vec![Shape::Ring, Shape::Module],
        },
        _ => vec![Shape::Ring, Shape::Module],
    }
}

fn instance_corpus(spec: &StructureSpec, limits: Limits) -> Result<Corpus, CliError> {
    let mut entries = Vec::new();
    for shape in instance_shapes(spec) {
        let instance = Instance::from_spec(shape, spec)?;
        instance.verify_axioms()?;
        check_instance(&instance, limits)?;
        let label = match &instance {
            Instance::Module(m) | Instance::Localization { module: m, .. } => m.label().to_string(),
            Instance::Pair(a, b) => format!("{} and {}", a.label(), b.label()),
            Instance::Triple(t) => {
                format!("{}, {} and {}", t[0].label(), t[1].label(), t[2].label())
            }
            Instance::Bimodule(b) => b.label().to_string(),
            Instance::Ring(r) => r.label().to_string(),
        };
        entries.push(CorpusEntry {
            label,
            shape,
            provenance: "instance file".into(),
            spec: spec.clone(),
            instance,
        });
    }
    Ok(Corpus::from_entries(entries))
}

fn parse_statements(name: &str) -> Result<Vec<StatementId>, CliError> {
    if name == "all" {
        return Ok(StatementId::ALL.to_vec());
    }
    Ok(vec![name.parse::<StatementId>()?])
}

#[derive(Serialize)]
struct VerifyView {
    corpus: String,
    statements: Vec<StatementId>,
    instances: usize,
    checks: usize,
    violations: usize,
    anomalies: usize,
    witnesses_checked: usize,
    summary: Vec<StatementSummary>,
    flagged: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outcomes: Option<Vec<CheckOutcome>>,
}

pub struct VerifyArgs {
    pub statement: String,
    pub corpus: CorpusSource,
    pub instance: Option<PathBuf>,
    pub all_outcomes: bool,
}

pub fn verify(args: VerifyArgs, limits: Limits, timing: bool) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let statements = parse_statements(&args.statement)?;
    let (bytes, corpus, source) = match &args.instance {
        Some(path) => {
            let (bytes, spec) = read_spec(path)?;
            let corpus = instance_corpus(&spec, limits).map_err(|e| match e {
                CliError::Algebra(a) => in_file(path, a),
                other => other,
            })?;
            let shapes: Vec<Shape> = corpus.entries.iter().map(|e| e.shape).collect();
            if args.statement != "all" && !statements.iter().any(|s| shapes.contains(&s.shape())) {
                return Err(CliError::Usage(format!(
                    "{} needs a {:?} instance; {} provides {:?}",
                    statements[0],
                    statements[0].shape(),
                    path.display(),
                    shapes
                )));
            }
            (bytes, corpus, path.display().to_string())
        }
        None => {
            let (bytes, corpus) = args.corpus.load(limits)?;
            (bytes, corpus, args.corpus.describe())
        }
    };
    let report = run_suite(&corpus, &statements, SuiteOptions { timing })?;
    let flagged = report
        .outcomes
        .iter()
        .filter(|o| matches!(o.verdict, Verdict::Violated | Verdict::Anomaly))
        .cloned()
        .collect();
    let show_all = args.all_outcomes || args.instance.is_some();
    let exit = if report.violations > 0 { 1 } else { 0 };
    let view = VerifyView {
        corpus: source,
        statements,
        instances: report.instances,
        checks: report.checks,
        violations: report.violations,
        anomalies: report.anomalies,
        witnesses_checked: report.witnesses_checked,
        summary: report.summary,
        flagged,
        outcomes: show_all.then_some(report.outcomes),
    };
    Ok(finish(
        Report::new("verify", &bytes, view),
        start,
        timing,
        exit,
    ))
}

#[derive(Serialize)]
struct SearchView {
    corpus: String,
    #[serde(flatten)]
    search: SearchResult,
}

pub fn search(
    statement: &str,
    drop: &str,
    corpus: CorpusSource,
    limits: Limits,
    timing: bool,
) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let id: StatementId = statement.parse()?;
    let dropped = (drop != "none").then_some(drop);
    let (bytes, loaded) = corpus.load(limits)?;
    let result = search_counterexample(&loaded, id, dropped)?;
    let view = SearchView {
        corpus: corpus.describe(),
        search: result,
    };
    Ok(finish(
        Report::new("search", &bytes, view),
        start,
        timing,
        0,
    ))
}

#[derive(Serialize)]
struct ShapeCount {
    shape: Shape,
    count: usize,
}

#[derive(Serialize)]
struct CorpusView {
    out: String,
    manifest_digest: String,
    entries: usize,
    by_shape: Vec<ShapeCount>,
    truncated: Vec<String>,
}

pub fn corpus_generate(
    max_ring_order: usize,
    out: &Path,
    limits: Limits,
    timing: bool,
) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let budget = default_budget(Some(max_ring_order), limits);
    let corpus = generate_corpus(&budget)?;
    let mut text = serde_json::to_string_pretty(&corpus.manifest()).expect("manifest serializes");
    text.push('\n');
    std::fs::write(out, &text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    let shapes = [
        Shape::Module,
        Shape::Localization,
        Shape::Pair,
        Shape::Triple,
        Shape::Bimodule,
        Shape::Ring,
    ];
    let view = CorpusView {
        out: out.display().to_string(),
        manifest_digest: crate::report::digest_hex(text.as_bytes()),
        entries: corpus.len(),
        by_shape: shapes
            .iter()
            .map(|&shape| ShapeCount {
                shape,
                count: corpus.of_shape(shape).count(),
            })
            .collect(),
        truncated: corpus.truncated.clone(),
    };
    let input = serde_json::to_vec(&budget).expect("budget serializes");
    Ok(finish(
        Report::new("corpus generate", &input, view),
        start,
        timing,
        0,
    ))
}
