use std::sync::Arc;

use serde::Serialize;

use crate::constructions::{
    localize_module, trivial_ext_zero_divisor_check, trivial_extension, FiniteBimodule,
};
use crate::error::{AlgebraError, Result};
use crate::fusibility::recheck_witness;
use crate::mask::SubsetMask;
use crate::module::FiniteModule;
use crate::reference;
use crate::ring::FiniteRing;

use super::corpus::Instance;

/// A named boolean, optionally with the elements that make it false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub name: &'static str,
    pub value: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

impl Fact {
    pub fn new(name: &'static str, value: bool) -> Fact {
        Fact {
            name,
            value,
            witness: None,
        }
    }

    pub fn with_witness(name: &'static str, value: bool, witness: Option<Vec<usize>>) -> Fact {
        Fact {
            name,
            value,
            witness: if value { None } else { witness },
        }
    }

    pub fn renamed(mut self, name: &'static str) -> Fact {
        self.name = name;
        self
    }

    pub fn and(self, other: Fact, name: &'static str) -> Fact {
        let witness = if !self.value {
            self.witness
        } else {
            other.witness
        };
        Fact::with_witness(name, self.value && other.value, witness)
    }

    pub fn not(self, name: &'static str) -> Fact {
        Fact::new(name, !self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingFacts {
    pub commutative: bool,
    pub right_duo: bool,
    pub domain: bool,
    pub division: bool,
    pub field: bool,
    pub local: bool,
    pub left_fusible: bool,
    pub regular_left_fusible: bool,
    pub regular: SubsetMask,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleFacts {
    pub nonzero: bool,
    pub torsion_free: bool,
    pub torsion_module: bool,
    pub fusible: bool,
    pub regular_fusible: bool,
    pub nonsingular: bool,
    pub reduced: bool,
    pub faithful: bool,
    pub torsion_set_is_submodule: bool,
    pub annihilator_comparability: bool,
    pub regular_multipliers_central: bool,
    pub simple: bool,
    pub torsion: SubsetMask,
    pub zero_divisors: SubsetMask,
    pub non_fusible: Option<usize>,
    pub non_regular_fusible: Option<usize>,
    pub singular_element: Option<usize>,
    pub reduced_failure: Option<(usize, usize)>,
    /// Regular fusible witnesses that went through the independent re-check.
    pub witnesses_checked: usize,
}

impl ModuleFacts {
    /// The named predicate together with an element refuting it.
    pub fn fact(&self, name: &'static str) -> Fact {
        let one = |x: Option<usize>| x.map(|v| vec![v]);
        match name {
            "nonzero_module" => Fact::new(name, self.nonzero),
            "torsion_free" => Fact::with_witness(
                name,
                self.torsion_free,
                self.torsion.iter().find(|&m| m != 0).map(|m| vec![m]),
            ),
            "torsion_module" => Fact::with_witness(
                name,
                self.torsion_module,
                self.torsion.complement().first().map(|m| vec![m]),
            ),
            "fusible" => Fact::with_witness(name, self.fusible, one(self.non_fusible)),
            "regular_fusible" => {
                Fact::with_witness(name, self.regular_fusible, one(self.non_regular_fusible))
            }
            "nonsingular" => Fact::with_witness(name, self.nonsingular, one(self.singular_element)),
            "reduced" => Fact::with_witness(
                name,
                self.reduced,
                self.reduced_failure.map(|(m, r)| vec![m, r]),
            ),
            "faithful" => Fact::new(name, self.faithful),
            "torsion_set_is_submodule" => Fact::new(name, self.torsion_set_is_submodule),
            "annihilator_comparability" => Fact::new(name, self.annihilator_comparability),
            "regular_multipliers_central" => Fact::new(name, self.regular_multipliers_central),
            "simple" => Fact::new(name, self.simple),
            other => panic!("unknown module fact {other}"),
        }
    }
}

/// Left zero divisor data of a bimodule and its trivial extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleFacts {
    pub base: RingFacts,
    pub extension: RingFacts,
    pub module_zero: bool,
    /// `ann_l(M) ⊆ ann_r(M)`.
    pub left_annihilator_in_right: bool,
    /// `Zd_l(M) ⊆ zd_l(A)`.
    pub module_zero_divisors_in_ring: bool,
    pub membership_mismatch: Option<usize>,
    pub annihilator_mismatch: Option<usize>,
}

/// Computes the predicates statements are stated in. Two implementations
/// exist so that anything reported by one can be re-derived by the other.
pub trait Oracle: Sync {
    fn name(&self) -> &'static str;
    fn ring(&self, ring: &FiniteRing) -> RingFacts;
    fn module(&self, module: &FiniteModule) -> Result<ModuleFacts>;
    fn bimodule(&self, b: &FiniteBimodule) -> Result<BimoduleFacts>;
}

/// Profiles, cached ideals and witness search.
pub struct Fast;

/// Direct quantification over the tables.
pub struct Reference;

impl Oracle for Fast {
    fn name(&self) -> &'static str {
        "fast"
    }

    fn ring(&self, ring: &FiniteRing) -> RingFacts {
        let roles = ring.element_roles();
        let p = ring.ring_predicates_with(&roles);
        RingFacts {
            commutative: p.commutative,
            right_duo: p.right_duo,
            domain: p.domain,
            division: p.division,
            field: p.field,
            local: p.local,
            left_fusible: p.left_fusible,
            regular_left_fusible: p.regular_left_fusible,
            regular: roles.regular,
        }
    }

    fn module(&self, module: &FiniteModule) -> Result<ModuleFacts> {
        let c = module.classify()?;
        let mut witnesses_checked = 0;
        for (m, w) in c.witnesses.iter().enumerate() {
            if let Some(w) = w {
                recheck_witness(module, m, w).map_err(|why| AlgebraError::Consistency {
                    message: format!(
                        "witness for {m} in {} fails re-check: {why}",
                        module.label()
                    ),
                    element: m,
                })?;
                witnesses_checked += 1;
            }
        }
        let p = &c.predicates;
        let center = module.ring().element_roles().center;
        let non_fusible = (1..module.order()).find(|&m| c.fusible_parts[m].is_none());
        let singular_element = c.singular.iter().find(|&m| m != 0);
        Ok(ModuleFacts {
            nonzero: !module.is_zero_module(),
            torsion_free: p.torsion_free,
            torsion_module: p.torsion_module,
            fusible: c.fusible,
            regular_fusible: c.regular_fusible,
            nonsingular: p.nonsingular,
            reduced: p.reduced,
            faithful: p.faithful,
            torsion_set_is_submodule: p.torsion_set_is_submodule,
            annihilator_comparability: p.annihilator_comparability,
            regular_multipliers_central: c.regular_multipliers.is_subset(&center),
            simple: module.is_simple(),
            non_fusible,
            non_regular_fusible: c.failing_elements.first(),
            singular_element,
            reduced_failure: if p.reduced {
                None
            } else {
                reduced_failure(module)
            },
            torsion: c.torsion.torsion,
            zero_divisors: c.zero_divisors,
            witnesses_checked,
        })
    }

    fn bimodule(&self, b: &FiniteBimodule) -> Result<BimoduleFacts> {
        let ext = trivial_extension(b)?;
        let check = trivial_ext_zero_divisor_check(b, &ext);
        let anns = b.annihilators();
        let roles = b.ring().element_roles();
        Ok(BimoduleFacts {
            base: self.ring(b.ring()),
            extension: self.ring(&ext.ring),
            module_zero: b.is_zero(),
            left_annihilator_in_right: check.hypothesis_met,
            module_zero_divisors_in_ring: anns.zd_l.is_subset(&roles.left_zero_divisors),
            membership_mismatch: check.membership_mismatches.first().copied(),
            annihilator_mismatch: check.annihilator_mismatches.first().copied(),
        })
    }
}

fn reduced_failure(module: &FiniteModule) -> Option<(usize, usize)> {
    let n = module.order();
    for m in 0..n {
        let cyclic = module.cyclic_submodule(m);
        for r in module.ring().elements() {
            if module.act(m, r) == 0 && cyclic.meets_nontrivially(&module.multiples_by(r)) {
                return Some((m, r));
            }
        }
    }
    None
}

impl Oracle for Reference {
    fn name(&self) -> &'static str {
        "reference"
    }

    fn ring(&self, ring: &FiniteRing) -> RingFacts {
        let commutative = reference::commutative(ring);
        let division = reference::division(ring);
        let lz = reference::left_zero_divisors(ring);
        let rz = reference::right_zero_divisors(ring);
        RingFacts {
            commutative,
            right_duo: reference::right_duo(ring),
            domain: reference::domain(ring),
            division,
            field: division && commutative,
            local: reference::local(ring),
            left_fusible: reference::left_fusible(ring),
            regular_left_fusible: reference::regular_left_fusible(ring),
            regular: SubsetMask::from_predicate(ring.order(), |a| !lz[a] && !rz[a]),
        }
    }

    fn module(&self, module: &FiniteModule) -> Result<ModuleFacts> {
        let n = module.order();
        let k = module.ring().order();
        let torsion = reference::torsion(module);
        let zd = reference::zero_divisors(module);
        let fusible = reference::fusible(module);
        let non_fusible = if fusible {
            None
        } else {
            let tor = &torsion;
            (1..n).find(|&m| {
                !(0..n).any(|x| (0..n).any(|y| tor[x] && !tor[y] && module.add(x, y) == m))
            })
        };
        let non_regular_fusible = (1..n).find(|&m| !reference::regular_fusible_element(module, m));
        let singular = reference::singular(module);
        let reduced = reference::reduced(module);
        let singular_element = singular.iter().find(|&m| m != 0);
        Ok(ModuleFacts {
            nonzero: n > 1,
            torsion_free: (1..n).all(|m| !torsion[m]),
            torsion_module: torsion.iter().all(|&t| t),
            fusible,
            regular_fusible: non_regular_fusible.is_none(),
            nonsingular: singular.is_zero_only(),
            reduced,
            faithful: reference::faithful(module),
            torsion_set_is_submodule: reference::is_submodule(module, &torsion),
            annihilator_comparability: reference::annihilator_comparability(module),
            regular_multipliers_central: reference::regular_multipliers_central(module),
            simple: reference::simple(module),
            non_fusible,
            non_regular_fusible,
            singular_element,
            reduced_failure: if reduced {
                None
            } else {
                reduced_failure(module)
            },
            torsion: SubsetMask::from_predicate(n, |m| torsion[m]),
            zero_divisors: SubsetMask::from_predicate(k, |r| zd[r]),
            witnesses_checked: 0,
        })
    }

    fn bimodule(&self, b: &FiniteBimodule) -> Result<BimoduleFacts> {
        let ext = trivial_extension(b)?;
        let a = b.ring();
        let (k, n) = (a.order(), b.order());
        let ann_l: Vec<bool> = (0..k)
            .map(|x| (0..n).all(|m| b.left_act(x, m) == 0))
            .collect();
        let ann_r: Vec<bool> = (0..k)
            .map(|x| (0..n).all(|m| b.right_act(m, x) == 0))
            .collect();
        let zd_m: Vec<bool> = (0..k)
            .map(|x| (1..n).any(|m| b.left_act(x, m) == 0))
            .collect();
        let zd_a = reference::left_zero_divisors(a);
        // (a,m)(x,m') = (ax, a·m' + m·x)
        let kills = |p: usize, q: usize| {
            let (x, m) = (p / n, p % n);
            let (y, m2) = (q / n, q % n);
            a.mul(x, y) == 0 && b.add(b.left_act(x, m2), b.right_act(m, y)) == 0
        };
        let mut membership_mismatch = None;
        let mut annihilator_mismatch = None;
        for p in 0..k * n {
            let x = p / n;
            let direct = (1..k * n).any(|q| kills(p, q));
            if membership_mismatch.is_none() && direct != (zd_a[x] || zd_m[x]) {
                membership_mismatch = Some(p);
            }
            let ann_x_zero = (1..k).all(|y| a.mul(x, y) != 0);
            let ann_rm_zero = (1..n).all(|m| b.left_act(x, m) != 0);
            if annihilator_mismatch.is_none() && !direct != (ann_x_zero && ann_rm_zero) {
                annihilator_mismatch = Some(p);
            }
        }
        Ok(BimoduleFacts {
            base: self.ring(a),
            extension: self.ring(&ext.ring),
            module_zero: n == 1,
            left_annihilator_in_right: (0..k).all(|x| !ann_l[x] || ann_r[x]),
            module_zero_divisors_in_ring: (0..k).all(|x| !zd_m[x] || zd_a[x]),
            membership_mismatch,
            annihilator_mismatch,
        })
    }
}

/// A set of modules over a right duo ring aimed at finding a non-fusible one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeFacts {
    pub probed: usize,
    pub non_fusible: Option<String>,
}

/// Facts for one corpus entry, by shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryFacts {
    Module {
        ring: RingFacts,
        module: ModuleFacts,
        /// `q(M)` over a commutative ring with nonzero `M`. Skipped for a
        /// non-faithful module with too many fraction pairs.
        quotient: Option<Box<ModuleFacts>>,
    },
    Localization {
        ring: RingFacts,
        module: ModuleFacts,
        local: ModuleFacts,
        regular_denominators: bool,
        denominators_avoid_zero_divisors: bool,
        /// First `(m, s)` with `m ∈ T(M)` differing from `m/s ∈ T(S⁻¹M)`.
        correspondence_failure: Option<(usize, usize)>,
    },
    Pair {
        left: ModuleFacts,
        right: ModuleFacts,
        product: ModuleFacts,
    },
    Triple {
        factors: Box<[ModuleFacts; 3]>,
        inner: ModuleFacts,
        product: ModuleFacts,
    },
    Bimodule(BimoduleFacts),
    Ring {
        ring: RingFacts,
        probe: ProbeFacts,
    },
}

impl EntryFacts {
    /// Re-checked regular fusible witnesses behind these facts.
    pub fn witnesses_checked(&self) -> usize {
        match self {
            EntryFacts::Module {
                module, quotient, ..
            } => module.witnesses_checked + quotient.as_ref().map_or(0, |q| q.witnesses_checked),
            EntryFacts::Localization { module, local, .. } => {
                module.witnesses_checked + local.witnesses_checked
            }
            EntryFacts::Pair {
                left,
                right,
                product,
            } => left.witnesses_checked + right.witnesses_checked + product.witnesses_checked,
            EntryFacts::Triple {
                factors,
                inner,
                product,
            } => {
                factors.iter().map(|f| f.witnesses_checked).sum::<usize>()
                    + inner.witnesses_checked
                    + product.witnesses_checked
            }
            EntryFacts::Bimodule(_) | EntryFacts::Ring { .. } => 0,
        }
    }
}

/// Module plus ring fraction pairs allowed when forming `q(M)` for a
/// non-faithful module, where it only matters to converse searches.
pub const UNFAITHFUL_QUOTIENT_PAIRS: usize = 1024;

pub fn entry_facts(oracle: &dyn Oracle, instance: &Instance) -> Result<EntryFacts> {
    match instance {
        Instance::Module(m) => {
            let ring = oracle.ring(m.ring());
            let module = oracle.module(m)?;
            let s = module.zero_divisors.complement();
            let small = (m.order() + m.ring().order()) * s.len() <= UNFAITHFUL_QUOTIENT_PAIRS;
            let quotient = if ring.commutative && module.nonzero && (module.faithful || small) {
                match localize_module(m, &s) {
                    Ok(q) => Some(Box::new(oracle.module(&q.module)?)),
                    Err(AlgebraError::Budget { .. }) if !module.faithful => None,
                    Err(e) => return Err(e),
                }
            } else {
                None
            };
            Ok(EntryFacts::Module {
                ring,
                module,
                quotient,
            })
        }
        Instance::Localization {
            module: m,
            denominators,
        } => {
            let ring = oracle.ring(m.ring());
            let module = oracle.module(m)?;
            let l = localize_module(m, denominators)?;
            let local = oracle.module(&l.module)?;
            let correspondence_failure = m.elements().find_map(|x| {
                denominators.iter().find_map(|s| {
                    let c = l.fractions.class(x, s).expect("s is a denominator");
                    (module.torsion.contains(x) != local.torsion.contains(c)).then_some((x, s))
                })
            });
            Ok(EntryFacts::Localization {
                regular_denominators: denominators.is_subset(&ring.regular),
                denominators_avoid_zero_divisors: !denominators.intersects(&module.zero_divisors),
                ring,
                module,
                local,
                correspondence_failure,
            })
        }
        Instance::Pair(a, b) => {
            let product = FiniteModule::product(a, b)?;
            Ok(EntryFacts::Pair {
                left: oracle.module(a)?,
                right: oracle.module(b)?,
                product: oracle.module(&product)?,
            })
        }
        Instance::Triple(t) => {
            let inner = FiniteModule::product(&t[0], &t[1])?;
            let product = FiniteModule::product(&inner, &t[2])?;
            Ok(EntryFacts::Triple {
                factors: Box::new([
                    oracle.module(&t[0])?,
                    oracle.module(&t[1])?,
                    oracle.module(&t[2])?,
                ]),
                inner: oracle.module(&inner)?,
                product: oracle.module(&product)?,
            })
        }
        Instance::Bimodule(b) => Ok(EntryFacts::Bimodule(oracle.bimodule(b)?)),
        Instance::Ring(r) => {
            let ring = oracle.ring(r);
            let probe = division_probe(oracle, r, &ring)?;
            Ok(EntryFacts::Ring { ring, probe })
        }
    }
}

/// Modules `R`, `R/ann(a)` and `R/a²R` for nonzero `a`, in that order,
/// each ideal taken once. Stops at the first non-fusible one unless the
/// ring is a division ring.
pub fn probe_modules(ring: &Arc<FiniteRing>) -> Vec<(String, SubsetMask)> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = vec![("R".to_string(), SubsetMask::zero(ring.order()))];
    seen.insert(SubsetMask::zero(ring.order()));
    for a in ring.nonzero_elements() {
        let ann = SubsetMask::from_predicate(ring.order(), |r| ring.mul(a, r) == 0);
        if seen.insert(ann.clone()) {
            out.push((format!("R/ann({})", ring.element_name(a)), ann));
        }
    }
    for a in ring.nonzero_elements() {
        let sq = ring.right_multiples(ring.mul(a, a));
        if seen.insert(sq.clone()) {
            out.push((format!("R/{0}²R", ring.element_name(a)), sq));
        }
    }
    out
}

fn division_probe(
    oracle: &dyn Oracle,
    ring: &Arc<FiniteRing>,
    facts: &RingFacts,
) -> Result<ProbeFacts> {
    if !facts.right_duo {
        return Ok(ProbeFacts {
            probed: 0,
            non_fusible: None,
        });
    }
    let mut probed = 0;
    for (label, ideal) in probe_modules(ring) {
        let module = FiniteModule::quotient_of_ring(ring, &ideal)?;
        probed += 1;
        if module.is_zero_module() {
            continue;
        }
        if !oracle.module(&module)?.fusible {
            return Ok(ProbeFacts {
                probed,
                non_fusible: Some(label),
            });
        }
    }
    Ok(ProbeFacts {
        probed,
        non_fusible: None,
    })
}
