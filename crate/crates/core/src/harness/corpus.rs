use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::statements::Shape;
use crate::constructions::{multiplicative_subsets, verify_bimodule_axioms, FiniteBimodule};
use crate::error::{AlgebraError, Result};
use crate::lattice::LatticeBudget;
use crate::mask::SubsetMask;
use crate::module::{verify_module_axioms, FiniteModule};
use crate::ring::{verify_ring_axioms, FiniteRing};
use crate::spec::{Structure, StructureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Fixtures,
    Cyclic,
    Products,
    Patterns,
    QuotientRings,
    TrivialExtensions,
    Localizations,
    Pairs,
    Triples,
}

impl Family {
    pub const ALL: &'static [Family] = &[
        Family::Fixtures,
        Family::Cyclic,
        Family::Products,
        Family::Patterns,
        Family::QuotientRings,
        Family::TrivialExtensions,
        Family::Localizations,
        Family::Pairs,
        Family::Triples,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusBudget {
    /// Largest ring order in any family.
    pub max_ring_order: usize,
    /// Largest module order, products included.
    pub max_module_order: usize,
    /// Cyclic rings `Z_n` go up to this `n`.
    pub max_cyclic: usize,
    pub max_product_order: usize,
    pub max_extension_order: usize,
    /// Quotient and submodule modules kept per ring.
    pub max_modules_per_ring: usize,
    pub families: Vec<Family>,
}

impl Default for CorpusBudget {
    fn default() -> Self {
        CorpusBudget {
            max_ring_order: 81,
            max_module_order: 144,
            max_cyclic: 30,
            max_product_order: 72,
            max_extension_order: 64,
            max_modules_per_ring: 24,
            families: Family::ALL.to_vec(),
        }
    }
}

impl CorpusBudget {
    pub fn with_max_ring_order(max_ring_order: usize) -> Self {
        CorpusBudget {
            max_ring_order,
            ..CorpusBudget::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let caps = [
            ("max_ring_order", self.max_ring_order),
            ("max_module_order", self.max_module_order),
            ("max_cyclic", self.max_cyclic),
            ("max_product_order", self.max_product_order),
            ("max_extension_order", self.max_extension_order),
            ("max_modules_per_ring", self.max_modules_per_ring),
        ];
        if let Some((name, _)) = caps.iter().find(|(_, v)| *v == 0) {
            return Err(AlgebraError::Input(format!(
                "corpus budget {name} must be positive"
            )));
        }
        Ok(())
    }

    fn has(&self, f: Family) -> bool {
        self.families.contains(&f)
    }

    fn ring_fits(&self, order: usize) -> bool {
        order <= self.max_ring_order
    }
}

/// A resolved corpus entry.
#[derive(Debug, Clone)]
pub enum Instance {
    Module(FiniteModule),
    Localization {
        module: FiniteModule,
        denominators: SubsetMask,
    },
    Pair(FiniteModule, FiniteModule),
    Triple(Box<[FiniteModule; 3]>),
    Bimodule(FiniteBimodule),
    Ring(Arc<FiniteRing>),
}

impl Instance {
    pub fn shape(&self) -> Shape {
        match self {
            Instance::Module(_) => Shape::Module,
            Instance::Localization { .. } => Shape::Localization,
            Instance::Pair(..) => Shape::Pair,
            Instance::Triple(_) => Shape::Triple,
            Instance::Bimodule(_) => Shape::Bimodule,
            Instance::Ring(_) => Shape::Ring,
        }
    }

    /// Resolves `spec` as an instance of the given shape.
    pub fn from_spec(shape: Shape, spec: &StructureSpec) -> Result<Instance> {
        match shape {
            Shape::Module => Ok(Instance::Module(spec.module()?)),
            Shape::Ring => Ok(Instance::Ring(Arc::new(spec.ring()?))),
            Shape::Bimodule => Ok(Instance::Bimodule(spec.bimodule()?)),
            Shape::Localization => match spec {
                StructureSpec::Localization {
                    of, denominators, ..
                } => {
                    let module = of.module()?;
                    let k = module.ring().order();
                    if let Some(&bad) = denominators.iter().find(|&&s| s >= k) {
                        return Err(AlgebraError::Input(format!(
                            "denominator {bad} out of range"
                        )));
                    }
                    Ok(Instance::Localization {
                        denominators: SubsetMask::from_indices(k, denominators.iter().copied()),
                        module,
                    })
                }
                other => Err(shape_error("localization", other)),
            },
            Shape::Pair => match spec {
                StructureSpec::ProductModule { left, right, .. } => {
                    Ok(Instance::Pair(left.module()?, right.module()?))
                }
                other => Err(shape_error("product_module", other)),
            },
            Shape::Triple => match spec {
                StructureSpec::ProductModule { left, right, .. } => match left.as_ref() {
                    StructureSpec::ProductModule {
                        left: a, right: b, ..
                    } => Ok(Instance::Triple(Box::new([
                        a.module()?,
                        b.module()?,
                        right.module()?,
                    ]))),
                    other => Err(shape_error("product_module", other)),
                },
                other => Err(shape_error("product_module", other)),
            },
        }
    }

    /// Content digest, independent of labels.
    pub fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(format!("{:?}", self.shape()).as_bytes());
        match self {
            Instance::Module(m) => h.update(m.digest()),
            Instance::Localization {
                module,
                denominators,
            } => {
                h.update(module.digest());
                for s in denominators.iter() {
                    h.update((s as u64).to_le_bytes());
                }
            }
            Instance::Pair(a, b) => {
                h.update(a.digest());
                h.update(b.digest());
            }
            Instance::Triple(t) => t.iter().for_each(|m| h.update(m.digest())),
            Instance::Bimodule(b) => h.update(Structure::Bimodule(b.clone()).digest()),
            Instance::Ring(r) => h.update(r.digest()),
        }
        h.finalize().into()
    }

    /// Runs the exhaustive axiom checks on every table involved.
    pub fn verify_axioms(&self) -> Result<()> {
        let ring = |r: &FiniteRing| {
            let report = verify_ring_axioms(&r.tables());
            report
                .passed()
                .then_some(())
                .ok_or(AlgebraError::Axioms(report))
        };
        let module = |m: &FiniteModule| {
            ring(m.ring())?;
            let report = verify_module_axioms(m.ring(), &m.tables());
            report
                .passed()
                .then_some(())
                .ok_or(AlgebraError::Axioms(report))
        };
        match self {
            Instance::Module(m) | Instance::Localization { module: m, .. } => module(m),
            Instance::Pair(a, b) => module(a).and(module(b)),
            Instance::Triple(t) => t.iter().try_for_each(module),
            Instance::Bimodule(b) => {
                ring(b.ring())?;
                let report = verify_bimodule_axioms(b.ring(), &b.tables());
                report
                    .passed()
                    .then_some(())
                    .ok_or(AlgebraError::Axioms(report))
            }
            Instance::Ring(r) => ring(r),
        }
    }
}

fn shape_error(expected: &str, found: &StructureSpec) -> AlgebraError {
    AlgebraError::Input(format!(
        "expected a {expected} spec, found kind `{}`",
        found.kind()
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryManifest {
    pub label: String,
    pub shape: Shape,
    pub provenance: String,
    pub spec: StructureSpec,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub label: String,
    pub shape: Shape,
    pub provenance: String,
    pub spec: StructureSpec,
    pub instance: Instance,
}

impl CorpusEntry {
    pub fn manifest(&self) -> EntryManifest {
        EntryManifest {
            label: self.label.clone(),
            shape: self.shape,
            provenance: self.provenance.clone(),
            spec: self.spec.clone(),
        }
    }

    pub fn from_manifest(m: EntryManifest) -> Result<CorpusEntry> {
        let instance = Instance::from_spec(m.shape, &m.spec)?;
        instance.verify_axioms()?;
        Ok(CorpusEntry {
            label: m.label,
            shape: m.shape,
            provenance: m.provenance,
            spec: m.spec,
            instance,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusManifest {
    pub budget: Option<CorpusBudget>,
    pub entries: Vec<EntryManifest>,
    #[serde(default)]
    pub truncated: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub budget: Option<CorpusBudget>,
    pub entries: Vec<CorpusEntry>,
    /// Families or modules left out because a cap was reached.
    pub truncated: Vec<String>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn manifest(&self) -> CorpusManifest {
        CorpusManifest {
            budget: self.budget.clone(),
            entries: self.entries.iter().map(CorpusEntry::manifest).collect(),
            truncated: self.truncated.clone(),
        }
    }

    pub fn from_manifest(m: CorpusManifest) -> Result<Corpus> {
        let entries = m
            .entries
            .into_iter()
            .map(CorpusEntry::from_manifest)
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus {
            budget: m.budget,
            entries,
            truncated: m.truncated,
        })
    }

    /// A corpus built from single instances, e.g. one file on the command
    /// line.
    pub fn from_entries(entries: Vec<CorpusEntry>) -> Corpus {
        Corpus {
            budget: None,
            entries,
            truncated: Vec::new(),
        }
    }

    pub fn of_shape(&self, shape: Shape) -> impl Iterator<Item = (usize, &CorpusEntry)> {
        self.entries
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.shape == shape)
    }
}

struct Builder {
    budget: CorpusBudget,
    entries: Vec<CorpusEntry>,
    seen: HashSet<[u8; 32]>,
    truncated: Vec<String>,
}

impl Builder {
    fn push(
        &mut self,
        label: String,
        shape: Shape,
        provenance: &str,
        spec: StructureSpec,
    ) -> Result<bool> {
        let instance = Instance::from_spec(shape, &spec)?;
        let too_big = match &instance {
            Instance::Module(m) | Instance::Localization { module: m, .. } => {
                m.order() > self.budget.max_module_order
            }
            Instance::Pair(a, b) => a.order() * b.order() > self.budget.max_module_order,
            Instance::Triple(t) => {
                t.iter().map(FiniteModule::order).product::<usize>() > self.budget.max_module_order
            }
            _ => false,
        };
        if too_big || !self.seen.insert(instance.digest()) {
            return Ok(false);
        }
        instance.verify_axioms()?;
        self.entries.push(CorpusEntry {
            label,
            shape,
            provenance: provenance.to_string(),
            spec,
            instance,
        });
        Ok(true)
    }

    /// A ring entry plus its regular module, cyclic quotients `R/I` and
    /// submodules, the latter two capped.
    fn ring_family(&mut self, spec: StructureSpec, provenance: &str) -> Result<()> {
        let ring = Arc::new(spec.ring()?);
        let label = ring.label().to_string();
        self.push(label.clone(), Shape::Ring, provenance, spec.clone())?;
        self.push(
            label.clone(),
            Shape::Module,
            provenance,
            StructureSpec::regular(spec.clone()),
        )?;
        let ideals = ring.enumerate_right_ideals(false, &LatticeBudget::default())?;
        let proper: Vec<&SubsetMask> = ideals
            .iter()
            .filter(|i| i.has_nonzero() && !i.is_full())
            .collect();
        let cap = self.budget.max_modules_per_ring;
        let mut kept = 0;
        for ideal in &proper {
            if kept >= cap {
                break;
            }
            let quotient = StructureSpec::CyclicQuotientModule {
                ring: Box::new(spec.clone()),
                ideal: ideal.to_vec(),
                label: None,
            };
            let sub = StructureSpec::Submodule {
                module: Box::new(StructureSpec::regular(spec.clone())),
                elements: ideal.to_vec(),
                label: None,
            };
            let names: Vec<&str> = ideal.iter().map(|i| ring.element_name(i)).collect();
            let names = names.join(",");
            kept += self.push(
                format!("{label}/{{{names}}}"),
                Shape::Module,
                provenance,
                quotient,
            )? as usize;
            kept += self.push(
                format!("{{{names}}}<={label}"),
                Shape::Module,
                provenance,
                sub,
            )? as usize;
        }
        if 2 * proper.len() > cap {
            self.truncated.push(format!(
                "{label}: kept {kept} quotient and submodule modules of {}",
                2 * proper.len()
            ));
        }
        Ok(())
    }
}

/// Patterns over `k x k` with full diagonal that are closed under
/// composition, in increasing bit order of the off-diagonal cells.
pub fn closed_patterns(k: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << off.len()) {
        let mut p = vec![vec![false; k]; k];
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = true;
        }
        for (b, &(i, j)) in off.iter().enumerate() {
            p[i][j] = bits >> b & 1 == 1;
        }
        let closed =
            (0..k).all(|i| (0..k).all(|j| (0..k).all(|l| !(p[i][j] && p[j][l]) || p[i][l])));
        if closed {
            out.push(p);
        }
    }
    out
}

pub fn lower_triangular(k: usize) -> Vec<Vec<bool>> {
    (0..k).map(|i| (0..k).map(|j| j <= i).collect()).collect()
}

/// The two displayed matrix rings.
pub fn fixture_patterns() -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
    let lower2 = lower_triangular(2);
    let three = vec![
        vec![true, false, false],
        vec![false, true, false],
        vec![true, true, true],
    ];
    (lower2, three)
}

fn pattern_order(p: usize, pattern: &[Vec<bool>]) -> usize {
    let cells = pattern.iter().flatten().filter(|&&b| b).count() as u32;
    p.checked_pow(cells).unwrap_or(usize::MAX)
}

/// Deterministic corpus of small structures. Two calls with equal budgets
/// give equal corpora.
pub fn generate_corpus(budget: &CorpusBudget) -> Result<Corpus> {
    budget.validate()?;
    let mut b = Builder {
        budget: budget.clone(),
        entries: Vec::new(),
        seen: HashSet::new(),
        truncated: Vec::new(),
    };
    let n_max = budget.max_ring_order;
    let z = StructureSpec::cyclic;
    let (lower2, three) = fixture_patterns();

    if budget.has(Family::Fixtures) {
        let fixture = "fixture";
        if b.budget.ring_fits(6) {
            b.push(
                "Z6".into(),
                Shape::Module,
                fixture,
                StructureSpec::regular(z(6)),
            )?;
        }
        if b.budget.ring_fits(8) {
            let spec = StructureSpec::Submodule {
                module: Box::new(StructureSpec::regular(z(8))),
                elements: vec![0, 4],
                label: Some("4Z8".into()),
            };
            b.push("4Z8".into(), Shape::Module, fixture, spec)?;
            b.push(
                "lower 2x2 over Z2".into(),
                Shape::Module,
                fixture,
                StructureSpec::regular(StructureSpec::pattern(2, 2, &lower2)),
            )?;
        }
        if b.budget.ring_fits(32) {
            b.push(
                "3x3 pattern over Z2".into(),
                Shape::Module,
                fixture,
                StructureSpec::regular(StructureSpec::pattern(2, 3, &three)),
            )?;
        }
        if b.budget.ring_fits(72) {
            b.push(
                "Z4xZ18".into(),
                Shape::Module,
                fixture,
                StructureSpec::product_module(
                    StructureSpec::regular(z(4)),
                    StructureSpec::regular(z(18)),
                ),
            )?;
            b.push(
                "Z4 and Z18".into(),
                Shape::Pair,
                fixture,
                StructureSpec::product_module(
                    StructureSpec::regular(z(4)),
                    StructureSpec::regular(z(18)),
                ),
            )?;
        }
    }

    if budget.has(Family::Cyclic) {
        let top = budget.max_cyclic.min(n_max);
        for n in 2..=top {
            b.ring_family(z(n), "cyclic")?;
        }
        if budget.max_cyclic > n_max {
            b.truncated.push(format!("cyclic rings stop at Z{top}"));
        }
    }

    if budget.has(Family::Products) {
        let cap = budget.max_product_order.min(n_max);
        for a in 2..=cap / 2 {
            for c in a..=cap / a {
                b.ring_family(
                    StructureSpec::product(z(a), z(c)),
                    "product of cyclic rings",
                )?;
            }
        }
    }

    let mut patterns = Vec::new();
    if budget.has(Family::Patterns) {
        for (p, k) in [(2, 2), (2, 3), (3, 2)] {
            for pattern in closed_patterns(k) {
                let order = pattern_order(p, &pattern);
                if !b.budget.ring_fits(order) {
                    b.truncated.push(format!(
                        "pattern ring over Z{p} of order {order} exceeds max_ring_order"
                    ));
                    continue;
                }
                let spec = StructureSpec::pattern(p, k, &pattern);
                b.ring_family(spec.clone(), "pattern matrix ring")?;
                patterns.push(spec);
            }
        }
    }

    if budget.has(Family::QuotientRings) {
        let mut bases: Vec<StructureSpec> = patterns.clone();
        for n in [8, 12] {
            if b.budget.ring_fits(n) {
                bases.push(StructureSpec::product(z(2), z(n / 2)));
            }
        }
        for base in bases {
            let ring = base.ring()?;
            let ideals = ring.enumerate_right_ideals(true, &LatticeBudget::default())?;
            let proper: Vec<&SubsetMask> = ideals
                .iter()
                .filter(|i| i.has_nonzero() && !i.is_full())
                .collect();
            for ideal in proper.iter().take(6) {
                let spec = StructureSpec::Quotient {
                    ring: Box::new(base.clone()),
                    ideal: ideal.to_vec(),
                    label: None,
                };
                b.ring_family(spec, "quotient ring")?;
            }
            if proper.len() > 6 {
                b.truncated.push(format!(
                    "{}: kept 6 quotient rings of {}",
                    ring.label(),
                    proper.len()
                ));
            }
        }
    }

    if budget.has(Family::TrivialExtensions) {
        let cap = budget.max_extension_order.min(n_max);
        for (ring_spec, bimodule) in bimodule_list()? {
            let order = bimodule.ring().order() * bimodule.order();
            if order > cap {
                continue;
            }
            let spec = StructureSpec::from_bimodule(ring_spec, &bimodule);
            let label = format!("{}∝{}", bimodule.ring().label(), bimodule.label());
            b.push(
                label.clone(),
                Shape::Bimodule,
                "trivial extension",
                spec.clone(),
            )?;
            let ext = StructureSpec::TrivialExtension {
                bimodule: Box::new(spec),
                label: Some(label),
            };
            b.push(
                ext.ring()?.label().to_string(),
                Shape::Ring,
                "trivial extension",
                ext.clone(),
            )?;
            b.push(
                ext.ring()?.label().to_string(),
                Shape::Module,
                "trivial extension",
                StructureSpec::regular(ext),
            )?;
        }
    }

    if budget.has(Family::Localizations) {
        for n in [6, 12] {
            if !b.budget.ring_fits(n) {
                continue;
            }
            let ring = Arc::new(FiniteRing::cyclic(n)?);
            let mut modules = vec![StructureSpec::regular(z(n))];
            for ideal in ring.enumerate_right_ideals(false, &LatticeBudget::default())? {
                if ideal.has_nonzero() && !ideal.is_full() {
                    modules.push(StructureSpec::CyclicQuotientModule {
                        ring: Box::new(z(n)),
                        ideal: ideal.to_vec(),
                        label: None,
                    });
                }
            }
            let sets = multiplicative_subsets(&ring)?;
            for m in &modules {
                let module = m.module()?;
                for s in &sets {
                    let spec = StructureSpec::Localization {
                        of: Box::new(m.clone()),
                        denominators: s.to_vec(),
                        label: None,
                    };
                    b.push(
                        format!("{} at {:?}", module.label(), s.to_vec()),
                        Shape::Localization,
                        "localization at explicit S",
                        spec,
                    )?;
                }
            }
        }
    }

    let pool = small_pool(n_max);
    if budget.has(Family::Pairs) {
        for i in 0..pool.len() {
            for j in i..pool.len() {
                let (li, si, ri) = &pool[i];
                let (lj, sj, rj) = &pool[j];
                if ri * rj > budget.max_product_order.min(n_max) {
                    continue;
                }
                b.push(
                    format!("{li} and {lj}"),
                    Shape::Pair,
                    "pair of small modules",
                    StructureSpec::product_module(si.clone(), sj.clone()),
                )?;
            }
        }
    }

    if budget.has(Family::Triples) {
        let pool: Vec<_> = pool.iter().filter(|(_, _, r)| *r <= 6).collect();
        for i in 0..pool.len() {
            for j in i..pool.len() {
                for k in j..pool.len() {
                    let (l1, s1, r1) = pool[i];
                    let (l2, s2, r2) = pool[j];
                    let (l3, s3, r3) = pool[k];
                    if r1 * r2 * r3 > 96 {
                        continue;
                    }
                    b.push(
                        format!("{l1}, {l2} and {l3}"),
                        Shape::Triple,
                        "triple of small modules",
                        StructureSpec::product_module(
                            StructureSpec::product_module(s1.clone(), s2.clone()),
                            s3.clone(),
                        ),
                    )?;
                }
            }
        }
    }

    Ok(Corpus {
        budget: Some(b.budget),
        entries: b.entries,
        truncated: b.truncated,
    })
}

/// Small modules used for products, with their ring orders.
fn small_pool(max_ring_order: usize) -> Vec<(String, StructureSpec, usize)> {
    let z = StructureSpec::cyclic;
    let reg = |n: usize| (format!("Z{n}"), StructureSpec::regular(z(n)), n);
    let mut pool = vec![reg(2), reg(3), reg(4), reg(6), reg(9)];
    pool.push((
        "4Z8".into(),
        StructureSpec::Submodule {
            module: Box::new(StructureSpec::regular(z(8))),
            elements: vec![0, 4],
            label: Some("4Z8".into()),
        },
        8,
    ));
    pool.push((
        "Z4/<2>".into(),
        StructureSpec::CyclicQuotientModule {
            ring: Box::new(z(4)),
            ideal: vec![0, 2],
            label: None,
        },
        4,
    ));
    pool.push((
        "lower 2x2 over Z2".into(),
        StructureSpec::regular(StructureSpec::pattern(2, 2, &lower_triangular(2))),
        8,
    ));
    pool.push(reg(18));
    pool.into_iter()
        .filter(|(_, _, r)| *r <= max_ring_order)
        .collect()
}

/// Bimodules whose trivial extensions enter the corpus.
pub fn bimodule_list() -> Result<Vec<(StructureSpec, FiniteBimodule)>> {
    let z = StructureSpec::cyclic;
    let mut out = Vec::new();
    for n in 2..=8 {
        let ring = Arc::new(FiniteRing::cyclic(n)?);
        out.push((z(n), FiniteBimodule::regular(&ring)));
    }
    for n in 2..=12 {
        let ring = Arc::new(FiniteRing::cyclic(n)?);
        out.push((z(n), FiniteBimodule::zero(&ring)));
    }
    for n in 4..=30 {
        let ring = Arc::new(FiniteRing::cyclic(n)?);
        for ideal in ring.enumerate_right_ideals(true, &LatticeBudget::default())? {
            if ideal.has_nonzero() && !ideal.is_full() {
                out.push((z(n), FiniteBimodule::quotient(&ring, &ideal)?));
            }
        }
    }

    let z2 = Arc::new(FiniteRing::cyclic(2)?);
    let square = crate::constructions::BimoduleTables {
        order: 4,
        add: (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect(),
        left_action: (0..2)
            .map(|a| (0..4).map(|m| if a == 1 { m } else { 0 }).collect())
            .collect(),
        right_action: (0..4)
            .map(|m| (0..2).map(|a| if a == 1 { m } else { 0 }).collect())
            .collect(),
    };
    out.push((z(2), FiniteBimodule::from_tables(&z2, "Z2^2", &square)?));

    let lower = lower_triangular(2);
    let lower_spec = StructureSpec::pattern(2, 2, &lower);
    let lower_ring = Arc::new(lower_spec.ring()?);
    let a11: Vec<usize> = (0..8).map(|x| x & 1).collect();
    let a22: Vec<usize> = (0..8).map(|x| x >> 2 & 1).collect();
    for (l, r, name) in [
        (&a11, &a22, "Z2[11,22]"),
        (&a22, &a11, "Z2[22,11]"),
        (&a11, &a11, "Z2[11,11]"),
        (&a22, &a22, "Z2[22,22]"),
    ] {
        out.push((
            lower_spec.clone(),
            FiniteBimodule::scalar(&lower_ring, 2, l, r)?.with_label(name),
        ));
    }
    out.push((lower_spec.clone(), FiniteBimodule::regular(&lower_ring)));

    let z2z2_spec = StructureSpec::product(z(2), z(2));
    let z2z2 = Arc::new(z2z2_spec.ring()?);
    let p1: Vec<usize> = (0..4).map(|x| x / 2).collect();
    let p2: Vec<usize> = (0..4).map(|x| x % 2).collect();
    for (l, r, name) in [
        (&p1, &p2, "Z2[1,2]"),
        (&p1, &p1, "Z2[1,1]"),
        (&p2, &p1, "Z2[2,1]"),
    ] {
        out.push((
            z2z2_spec.clone(),
            FiniteBimodule::scalar(&z2z2, 2, l, r)?.with_label(name),
        ));
    }
    out.push((z2z2_spec.clone(), FiniteBimodule::regular(&z2z2)));
    Ok(out)
}
