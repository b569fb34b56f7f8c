use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::mask::SubsetMask;
use crate::module::FiniteModule;
use crate::ring::{verify_ring_axioms, FiniteRing};

/// Cap on `|carrier|·|S|`; the relation and well-definedness checks are
/// quadratic in it.
pub const MAX_FRACTION_PAIRS: usize = 8192;

/// Equivalence classes of pairs `(x, s)` with `s` in `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionStructure {
    pub denominators: SubsetMask,
    /// Members of `S` in increasing index order.
    pub denominator_list: Vec<usize>,
    /// Class of `(x, denominator_list[j])` at position `x·|S| + j`.
    pub class_of_pair: Vec<usize>,
    /// Least `(element, denominator)` in each class.
    pub class_reps: Vec<(usize, usize)>,
    /// `x ↦ class(x, 1)`.
    pub canonical_map: Vec<usize>,
}

impl FractionStructure {
    pub fn len(&self) -> usize {
        self.class_reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_reps.is_empty()
    }

    /// Class of `x/s`; `None` when `s` is not a denominator.
    pub fn class(&self, x: usize, s: usize) -> Option<usize> {
        let j = self.denominator_list.binary_search(&s).ok()?;
        Some(self.class_of_pair[x * self.denominator_list.len() + j])
    }
}

/// Checks that `S` is multiplicatively closed with `1 ∈ S` and `0 ∉ S`
/// over a commutative ring.
fn denominators(ring: &FiniteRing, s: &SubsetMask) -> Result<Vec<usize>> {
    if !ring.is_commutative() {
        return Err(AlgebraError::input(format!(
            "localization needs a commutative ring; {} is not",
            ring.label()
        )));
    }
    if s.carrier_size() != ring.order() {
        return Err(AlgebraError::input("denominator set has the wrong carrier"));
    }
    if !s.contains(ring.one()) || s.contains(0) {
        return Err(AlgebraError::input(
            "denominators must contain 1 and exclude 0",
        ));
    }
    if let Some((a, b)) = s
        .iter()
        .flat_map(|a| s.iter().map(move |b| (a, b)))
        .find(|&(a, b)| !s.contains(ring.mul(a, b)))
    {
        return Err(AlgebraError::input(format!(
            "denominators are not multiplicatively closed: {a}·{b}"
        )));
    }
    Ok(s.to_vec())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = x;
        while self.0[x] != root {
            let next = self.0[x];
            self.0[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Partitions `carrier × S` under `(x,s) ~ (x',s')` iff
/// `(x·s' - x'·s)·u = 0` for some `u` in `S`.
fn partition(
    carrier: usize,
    denominators: &SubsetMask,
    list: &[usize],
    one: usize,
    sub: impl Fn(usize, usize) -> usize,
    act: impl Fn(usize, usize) -> usize,
) -> Result<FractionStructure> {
    let k = list.len();
    let pairs = carrier * k;
    if pairs > MAX_FRACTION_PAIRS {
        return Err(AlgebraError::Budget {
            what: format!("{pairs} fraction pairs"),
            cap: MAX_FRACTION_PAIRS,
        });
    }
    let killed = SubsetMask::from_predicate(carrier, |z| list.iter().any(|&u| act(z, u) == 0));
    let related = |p: usize, q: usize| {
        let (x, s) = (p / k, list[p % k]);
        let (y, t) = (q / k, list[q % k]);
        killed.contains(sub(act(x, t), act(y, s)))
    };
    let mut uf = UnionFind((0..pairs).collect());
    for p in 0..pairs {
        for q in p + 1..pairs {
            if related(p, q) {
                uf.union(p, q);
            }
        }
    }
    let roots: Vec<usize> = (0..pairs).map(|p| uf.find(p)).collect();
    for p in 0..pairs {
        for q in p + 1..pairs {
            if roots[p] == roots[q] && !related(p, q) {
                return Err(AlgebraError::Consistency {
                    message: "fraction relation is not transitive".into(),
                    element: p,
                });
            }
        }
    }
    let mut class_id = vec![usize::MAX; pairs];
    let mut class_of_pair = vec![0; pairs];
    let mut class_reps = Vec::new();
    for p in 0..pairs {
        let root = roots[p];
        if class_id[root] == usize::MAX {
            class_id[root] = class_reps.len();
            class_reps.push((p / k, list[p % k]));
        }
        class_of_pair[p] = class_id[root];
    }
    let j1 = list.binary_search(&one).expect("1 is a denominator");
    let canonical_map = (0..carrier).map(|x| class_of_pair[x * k + j1]).collect();
    Ok(FractionStructure {
        denominators: denominators.clone(),
        denominator_list: list.to_vec(),
        class_of_pair,
        class_reps,
        canonical_map,
    })
}

#[derive(Debug, Clone)]
pub struct LocalizedRing {
    pub ring: Arc<FiniteRing>,
    pub fractions: FractionStructure,
}

#[derive(Debug, Clone)]
pub struct LocalizedModule {
    pub ring: LocalizedRing,
    pub module: FiniteModule,
    pub fractions: FractionStructure,
}

/// `S⁻¹R` for a commutative ring.
pub fn localize_ring(ring: &FiniteRing, s: &SubsetMask) -> Result<LocalizedRing> {
    let list = denominators(ring, s)?;
    let f = partition(
        ring.order(),
        s,
        &list,
        ring.one(),
        |a, b| ring.sub(a, b),
        |a, b| ring.mul(a, b),
    )?;
    let q = f.len();
    let cls = |x: usize, t: usize| f.class(x, t).expect("closed denominators");
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for &(x, s1) in &f.class_reps {
        for &(y, s2) in &f.class_reps {
            let d = ring.mul(s1, s2);
            add.push(cls(ring.add(ring.mul(x, s2), ring.mul(y, s1)), d) as u32);
            mul.push(cls(ring.mul(x, y), d) as u32);
        }
    }
    let k = list.len();
    let pairs = ring.order() * k;
    for p in 0..pairs {
        let (x, s1) = (p / k, list[p % k]);
        for r in 0..pairs {
            let (y, s2) = (r / k, list[r % k]);
            let (cp, cr) = (f.class_of_pair[p], f.class_of_pair[r]);
            let d = ring.mul(s1, s2);
            let sum = cls(ring.add(ring.mul(x, s2), ring.mul(y, s1)), d);
            let prod = cls(ring.mul(x, y), d);
            if add[cp * q + cr] as usize != sum || mul[cp * q + cr] as usize != prod {
                return Err(AlgebraError::Consistency {
                    message: "fraction operations are not well defined".into(),
                    element: p,
                });
            }
        }
    }
    let names = f
        .class_reps
        .iter()
        .map(|&(x, t)| format!("{}/{}", ring.element_name(x), ring.element_name(t)))
        .collect();
    let one = f.canonical_map[ring.one()];
    let local = FiniteRing::from_parts(format!("S^-1 {}", ring.label()), q, add, mul, one, names);
    if q < 2 || !verify_ring_axioms(&local.tables()).passed() {
        return Err(AlgebraError::Consistency {
            message: "localized ring fails the ring axioms".into(),
            element: 0,
        });
    }
    Ok(LocalizedRing {
        ring: Arc::new(local),
        fractions: f,
    })
}

/// `S⁻¹M` over `S⁻¹R`.
pub fn localize_module(module: &FiniteModule, s: &SubsetMask) -> Result<LocalizedModule> {
    let ring = module.ring();
    let local = localize_ring(ring, s)?;
    let list = local.fractions.denominator_list.clone();
    let f = partition(
        module.order(),
        s,
        &list,
        ring.one(),
        |a, b| module.sub(a, b),
        |m, r| module.act(m, r),
    )?;
    let q = f.len();
    let lr = &local.ring;
    let rf = &local.fractions;
    let cls = |x: usize, t: usize| f.class(x, t).expect("closed denominators");
    let mut add = Vec::with_capacity(q * q);
    let mut action = Vec::with_capacity(q * lr.order());
    for &(m, s1) in &f.class_reps {
        for &(n, s2) in &f.class_reps {
            let sum = module.add(module.act(m, s2), module.act(n, s1));
            add.push(cls(sum, ring.mul(s1, s2)) as u32);
        }
        for &(r, t) in &rf.class_reps {
            action.push(cls(module.act(m, r), ring.mul(s1, t)) as u32);
        }
    }
    let k = list.len();
    let module_pairs = module.order() * k;
    let ring_pairs = ring.order() * k;
    if module_pairs * (module_pairs + ring_pairs) > MAX_FRACTION_PAIRS * MAX_FRACTION_PAIRS {
        return Err(AlgebraError::Budget {
            what: format!("{module_pairs} module fraction pairs"),
            cap: MAX_FRACTION_PAIRS,
        });
    }
    for p in 0..module_pairs {
        let (m, s1) = (p / k, list[p % k]);
        let cp = f.class_of_pair[p];
        for o in 0..module_pairs {
            let (n, s2) = (o / k, list[o % k]);
            let sum = cls(
                module.add(module.act(m, s2), module.act(n, s1)),
                ring.mul(s1, s2),
            );
            if add[cp * q + f.class_of_pair[o]] as usize != sum {
                return Err(AlgebraError::Consistency {
                    message: "fraction addition is not well defined".into(),
                    element: p,
                });
            }
        }
        for o in 0..ring_pairs {
            let (r, t) = (o / k, list[o % k]);
            let img = cls(module.act(m, r), ring.mul(s1, t));
            if action[cp * lr.order() + rf.class_of_pair[o]] as usize != img {
                return Err(AlgebraError::Consistency {
                    message: "fraction action is not well defined".into(),
                    element: p,
                });
            }
        }
    }
    let names = f
        .class_reps
        .iter()
        .map(|&(m, t)| format!("{}/{}", module.element_name(m), ring.element_name(t)))
        .collect();
    let localized = FiniteModule::from_parts(
        Arc::clone(&local.ring),
        format!("S^-1 {}", module.label()),
        q,
        add,
        action,
        names,
    );
    Ok(LocalizedModule {
        ring: local,
        module: localized,
        fractions: f,
    })
}

/// `q(M)`: localization at `R - Zd(M)` of a faithful module over a
/// commutative ring.
pub fn total_quotient(module: &FiniteModule) -> Result<LocalizedModule> {
    if !module.is_faithful() {
        return Err(AlgebraError::input(format!(
            "{} is not faithful; localize at an explicit denominator set instead",
            module.label()
        )));
    }
    localize_module(module, &module.zero_divisors().complement())
}

/// Every multiplicatively closed `S` with `1 ∈ S`, `0 ∉ S`, by subset
/// enumeration. Only for small rings.
pub fn multiplicative_subsets(ring: &FiniteRing) -> Result<Vec<SubsetMask>> {
    const MAX: usize = 20;
    let n = ring.order();
    if n > MAX {
        return Err(AlgebraError::Budget {
            what: format!("subset enumeration over order {n}"),
            cap: MAX,
        });
    }
    let one = ring.one();
    let others: Vec<usize> = (1..n).filter(|&x| x != one).collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << others.len()) {
        let s = SubsetMask::from_indices(
            n,
            std::iter::once(one).chain(
                others
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| bits >> j & 1 == 1)
                    .map(|(_, &x)| x),
            ),
        );
        if s.iter()
            .all(|a| s.iter().all(|b| s.contains(ring.mul(a, b))))
        {
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}
