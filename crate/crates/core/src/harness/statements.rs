use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::facts::{EntryFacts, Fact, ModuleFacts};
use crate::error::AlgebraError;

/// Instance shape a statement is evaluated on.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, serde::Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Module,
    Localization,
    Pair,
    Triple,
    Bimodule,
    Ring,
}

macro_rules! statements {
    ($($variant:ident => $name:literal, $shape:ident, [$($hyp:literal),*];)*) => {
        /// Every registered statement. Names are stable.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum StatementId {
            $($variant,)*
        }

        impl StatementId {
            pub const ALL: &'static [StatementId] = &[$(StatementId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(StatementId::$variant => $name,)*
                }
            }

            pub fn shape(self) -> Shape {
                match self {
                    $(StatementId::$variant => Shape::$shape,)*
                }
            }

            /// Hypothesis names, in evaluation order. Any of them can be
            /// dropped in a counterexample search.
            pub fn hypotheses(self) -> &'static [&'static str] {
                match self {
                    $(StatementId::$variant => &[$($hyp),*],)*
                }
            }
        }
    };
}

statements! {
    Ex1TorsionFree => "ex1_torsionfree", Module, [];
    Ex1Torsion => "ex1_torsion", Module, ["nonzero_module"];
    Ex2Local => "ex2_local", Module, ["local_ring", "not_field"];
    Ex2Field => "ex2_field", Module, [];
    FusibleImpliesRegular => "fusible_implies_regular", Module, [];
    Prop1 => "prop1", Module, ["torsion_set_is_submodule"];
    Cor1 => "cor1", Module, ["integral_domain"];
    Prop2 => "prop2", Module, ["annihilator_comparability", "regular_multipliers_central"];
    Prop3 => "prop3", Module, ["regular_multipliers_central"];
    Cor12I => "cor12_i", Module, ["right_duo"];
    Cor12Ii => "cor12_ii", Module, ["commutative"];
    Prop4 => "prop4", Module, ["integral_domain"];
    Cor11 => "cor11", Module, ["integral_domain"];
    Lem1 => "lem1", Localization, ["commutative", "regular_denominators"];
    Th2I => "th2_i", Localization, ["commutative", "regular_denominators"];
    Th2Ii => "th2_ii", Localization, ["commutative", "denominators_avoid_zero_divisors", "faithful"];
    TLocalization => "tlocalization", Module, ["commutative", "faithful"];
    TReduced => "treduced", Module, ["right_duo"];
    Thm3I => "thm3_i", Module, ["right_duo"];
    Thm3Ii => "thm3_ii", Module, ["commutative"];
    Th6 => "th6", Pair, [];
    Cor13 => "cor13", Triple, [];
    Lem2 => "lem2", Bimodule, ["left_annihilator_in_right"];
    Thm5 => "thm5", Bimodule, ["left_annihilator_in_right"];
    TrivextRegular => "trivext_regular", Bimodule, ["left_annihilator_in_right", "module_zero_divisors_in_ring"];
    TrivextCorollary => "trivext_corollary", Bimodule, ["left_annihilator_in_right", "module_zero_divisors_in_ring"];
    Division => "division", Ring, ["right_duo"];
    DivisionCommutative => "division_commutative", Ring, ["commutative"];
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StatementId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| AlgebraError::Input(format!("unknown statement `{s}`")))
    }
}

impl Serialize for StatementId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "form")]
pub enum Claim {
    Implies { premise: Fact, conclusion: Fact },
    Equivalent { facts: Vec<Fact> },
    All { facts: Vec<Fact> },
}

impl Claim {
    pub fn holds(&self) -> bool {
        match self {
            Claim::Implies {
                premise,
                conclusion,
            } => !premise.value || conclusion.value,
            Claim::Equivalent { facts } => facts.windows(2).all(|w| w[0].value == w[1].value),
            Claim::All { facts } => facts.iter().all(|f| f.value),
        }
    }

    /// Elements refuting the claim, taken from the first false fact.
    pub fn witness(&self) -> Option<Vec<usize>> {
        match self {
            Claim::Implies { conclusion, .. } => conclusion.witness.clone(),
            Claim::Equivalent { facts } | Claim::All { facts } => facts
                .iter()
                .find(|f| !f.value)
                .and_then(|f| f.witness.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    /// Hypotheses or the premise of an implication are unmet.
    Vacuous,
    Violated,
    /// The division probe found no non-fusible module over a non-division
    /// ring. The probe is incomplete, so this is not a violation.
    Anomaly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub hypotheses: Vec<Fact>,
    pub claim: Claim,
    /// Set when a failed claim is explained by probe incompleteness.
    #[serde(skip)]
    pub incomplete_probe: bool,
    /// Some claim fact could not be computed within budget.
    #[serde(skip)]
    pub undetermined: bool,
}

impl Evaluation {
    pub fn hypotheses_hold(&self, dropped: Option<&str>) -> bool {
        self.hypotheses
            .iter()
            .filter(|h| Some(h.name) != dropped)
            .all(|h| h.value)
    }

    pub fn verdict(&self) -> Verdict {
        if !self.hypotheses_hold(None) {
            return Verdict::Vacuous;
        }
        if let Claim::Implies { premise, .. } = &self.claim {
            if !premise.value {
                return Verdict::Vacuous;
            }
        }
        match (
            self.claim.holds(),
            self.incomplete_probe || self.undetermined,
        ) {
            (true, _) => Verdict::Holds,
            (false, true) => Verdict::Anomaly,
            (false, false) => Verdict::Violated,
        }
    }

    /// Converse search target: the remaining hypotheses hold, and either the
    /// converse of an implication fails or a symmetric claim fails.
    pub fn is_converse_counterexample(&self, dropped: Option<&str>) -> bool {
        !self.undetermined
            && self.hypotheses_hold(dropped)
            && match &self.claim {
                Claim::Implies {
                    premise,
                    conclusion,
                } => conclusion.value && !premise.value,
                claim => !claim.holds(),
            }
    }
}

fn module_implies(
    hypotheses: Vec<Fact>,
    m: &ModuleFacts,
    premise: &'static str,
    conclusion: &'static str,
) -> Evaluation {
    Evaluation {
        hypotheses,
        claim: Claim::Implies {
            premise: m.fact(premise),
            conclusion: m.fact(conclusion),
        },
        incomplete_probe: false,
        undetermined: false,
    }
}

fn equivalent(hypotheses: Vec<Fact>, facts: Vec<Fact>) -> Evaluation {
    Evaluation {
        hypotheses,
        claim: Claim::Equivalent { facts },
        incomplete_probe: false,
        undetermined: false,
    }
}

fn missing_fact(name: &'static str) -> Fact {
    Fact::new(name, false)
}

/// Evaluates `id` against facts of the matching shape; `None` on a shape
/// mismatch.
pub fn evaluate(id: StatementId, facts: &EntryFacts) -> Option<Evaluation> {
    use StatementId::*;
    let eval = match (id, facts) {
        (
            _,
            EntryFacts::Module {
                ring: r,
                module: m,
                quotient,
            },
        ) if id.shape() == Shape::Module => {
            let h = |name: &'static str, value: bool| Fact::new(name, value);
            match id {
                Ex1TorsionFree => module_implies(vec![], m, "torsion_free", "regular_fusible"),
                Ex1Torsion => Evaluation {
                    hypotheses: vec![m.fact("nonzero_module")],
                    claim: Claim::Implies {
                        premise: m.fact("torsion_module"),
                        conclusion: m.fact("regular_fusible").not("not_regular_fusible"),
                    },
                    incomplete_probe: false,
                    undetermined: false,
                },
                Ex2Local => Evaluation {
                    hypotheses: vec![h("local_ring", r.local), h("not_field", !r.field)],
                    claim: Claim::Implies {
                        premise: m.fact("simple"),
                        conclusion: m.fact("torsion_module").and(
                            m.fact("regular_fusible").not("not_regular_fusible"),
                            "torsion_and_not_regular_fusible",
                        ),
                    },
                    incomplete_probe: false,
                    undetermined: false,
                },
                Ex2Field => Evaluation {
                    hypotheses: vec![],
                    claim: Claim::Implies {
                        premise: h("field", r.field),
                        conclusion: m.fact("regular_fusible"),
                    },
                    incomplete_probe: false,
                    undetermined: false,
                },
                FusibleImpliesRegular => module_implies(vec![], m, "fusible", "regular_fusible"),
                Prop1 => equivalent(
                    vec![m.fact("torsion_set_is_submodule")],
                    vec![m.fact("torsion_free"), m.fact("regular_fusible")],
                ),
                Cor1 => equivalent(
                    vec![h("integral_domain", r.domain)],
                    vec![m.fact("torsion_free"), m.fact("regular_fusible")],
                ),
                Prop2 => equivalent(
                    vec![
                        m.fact("annihilator_comparability"),
                        m.fact("regular_multipliers_central"),
                    ],
                    vec![m.fact("regular_fusible"), m.fact("torsion_free")],
                ),
                Prop3 => module_implies(
                    vec![m.fact("regular_multipliers_central")],
                    m,
                    "regular_fusible",
                    "nonsingular",
                ),
                Cor12I => module_implies(
                    vec![h("right_duo", r.right_duo)],
                    m,
                    "regular_fusible",
                    "nonsingular",
                ),
                Cor12Ii => module_implies(
                    vec![h("commutative", r.commutative)],
                    m,
                    "regular_fusible",
                    "nonsingular",
                ),
                Prop4 => module_implies(
                    vec![h("integral_domain", r.domain)],
                    m,
                    "nonsingular",
                    "fusible",
                ),
                Cor11 => equivalent(
                    vec![h("integral_domain", r.domain)],
                    vec![
                        m.fact("fusible"),
                        m.fact("regular_fusible"),
                        m.fact("nonsingular"),
                        m.fact("torsion_free"),
                    ],
                ),
                TLocalization => {
                    let q = |name: &'static str, as_name: &'static str| {
                        quotient.as_ref().map_or_else(
                            || missing_fact(as_name),
                            |q| q.fact(name).renamed(as_name),
                        )
                    };
                    let mut e = equivalent(
                        vec![h("commutative", r.commutative), m.fact("faithful")],
                        vec![
                            m.fact("regular_fusible"),
                            q("fusible", "quotient_fusible"),
                            q("regular_fusible", "quotient_regular_fusible"),
                        ],
                    );
                    e.undetermined = quotient.is_none() && r.commutative && m.nonzero;
                    e
                }
                TReduced => module_implies(
                    vec![h("right_duo", r.right_duo)],
                    m,
                    "regular_fusible",
                    "reduced",
                ),
                Thm3I => module_implies(vec![h("right_duo", r.right_duo)], m, "fusible", "reduced"),
                Thm3Ii => module_implies(
                    vec![h("commutative", r.commutative)],
                    m,
                    "regular_fusible",
                    "reduced",
                ),
                _ => unreachable!("module-shaped statements are listed above"),
            }
        }
        (
            _,
            EntryFacts::Localization {
                ring,
                module,
                local,
                regular_denominators,
                denominators_avoid_zero_divisors,
                correspondence_failure,
            },
        ) if id.shape() == Shape::Localization => {
            let commutative = Fact::new("commutative", ring.commutative);
            let regular = Fact::new("regular_denominators", *regular_denominators);
            let local_rf = local
                .fact("regular_fusible")
                .renamed("localized_regular_fusible");
            match id {
                Lem1 => Evaluation {
                    hypotheses: vec![commutative, regular],
                    claim: Claim::All {
                        facts: vec![Fact::with_witness(
                            "torsion_correspondence",
                            correspondence_failure.is_none(),
                            correspondence_failure.map(|(m, s)| vec![m, s]),
                        )],
                    },
                    incomplete_probe: false,
                    undetermined: false,
                },
                Th2I => Evaluation {
                    hypotheses: vec![commutative, regular],
                    claim: Claim::Implies {
                        premise: module.fact("regular_fusible"),
                        conclusion: local_rf,
                    },
                    incomplete_probe: false,
                    undetermined: false,
                },
                Th2Ii => Evaluation {
                    hypotheses: vec![
                        commutative,
                        Fact::new(
                            "denominators_avoid_zero_divisors",
                            *denominators_avoid_zero_divisors,
                        ),
                        module.fact("faithful"),
                    ],
                    claim: Claim::Implies {
                        premise: local_rf,
                        conclusion: module.fact("regular_fusible"),
                    },
                    incomplete_probe: false,
                    undetermined: false,
                },
                _ => unreachable!("localization-shaped statements are listed above"),
            }
        }
        (
            Th6,
            EntryFacts::Pair {
                left,
                right,
                product,
            },
        ) => equivalent(
            vec![],
            vec![
                product
                    .fact("regular_fusible")
                    .renamed("product_regular_fusible"),
                left.fact("regular_fusible")
                    .and(right.fact("regular_fusible"), "factors_regular_fusible"),
            ],
        ),
        (
            Cor13,
            EntryFacts::Triple {
                factors,
                inner,
                product,
            },
        ) => {
            let rf = |m: &ModuleFacts| m.fact("regular_fusible");
            equivalent(
                vec![],
                vec![
                    rf(product).renamed("product_regular_fusible"),
                    rf(inner).and(rf(&factors[2]), "pairwise_regular_fusible"),
                    rf(&factors[0])
                        .and(rf(&factors[1]), "factors_regular_fusible")
                        .and(rf(&factors[2]), "factors_regular_fusible"),
                ],
            )
        }
        (_, EntryFacts::Bimodule(b)) if id.shape() == Shape::Bimodule => {
            let ann = Fact::new("left_annihilator_in_right", b.left_annihilator_in_right);
            let zd = Fact::new(
                "module_zero_divisors_in_ring",
                b.module_zero_divisors_in_ring,
            );
            let base_and_zero =
                |value: bool| Fact::new("base_and_module_zero", value && b.module_zero);
            match id {
                Lem2 => Evaluation {
                    hypotheses: vec![ann],
                    claim: Claim::All {
                        facts: vec![
                            Fact::with_witness(
                                "left_zero_divisor_description",
                                b.membership_mismatch.is_none(),
                                b.membership_mismatch.map(|x| vec![x]),
                            ),
                            Fact::with_witness(
                                "right_annihilator_description",
                                b.annihilator_mismatch.is_none(),
                                b.annihilator_mismatch.map(|x| vec![x]),
                            ),
                        ],
                    },
                    incomplete_probe: false,
                    undetermined: false,
                },
                Thm5 => equivalent(
                    vec![ann],
                    vec![
                        Fact::new("extension_left_fusible", b.extension.left_fusible),
                        base_and_zero(b.base.left_fusible),
                    ],
                ),
                TrivextRegular => Evaluation {
                    hypotheses: vec![ann, zd],
                    claim: Claim::Implies {
                        premise: Fact::new(
                            "extension_regular_left_fusible",
                            b.extension.regular_left_fusible,
                        ),
                        conclusion: base_and_zero(b.base.regular_left_fusible),
                    },
                    incomplete_probe: false,
                    undetermined: false,
                },
                TrivextCorollary => equivalent(
                    vec![ann, zd],
                    vec![
                        Fact::new(
                            "extension_regular_left_fusible",
                            b.extension.regular_left_fusible,
                        ),
                        base_and_zero(b.base.regular_left_fusible),
                    ],
                ),
                _ => unreachable!("bimodule-shaped statements are listed above"),
            }
        }
        (Division | DivisionCommutative, EntryFacts::Ring { ring, probe }) => {
            let (hyp, target) = if id == Division {
                (
                    Fact::new("right_duo", ring.right_duo),
                    Fact::new("division_ring", ring.division),
                )
            } else {
                (
                    Fact::new("commutative", ring.commutative),
                    Fact::new("field", ring.field),
                )
            };
            let all_fusible = Fact::new("probed_modules_fusible", probe.non_fusible.is_none());
            let incomplete = all_fusible.value && !target.value;
            let mut e = equivalent(vec![hyp], vec![all_fusible, target]);
            e.incomplete_probe = incomplete;
            e
        }
        _ => return None,
    };
    Some(eval)
}
