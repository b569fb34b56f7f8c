//! Worklist closure and closure-based lattice generation, shared by ideal
//! and submodule enumeration.

use std::collections::HashSet;

use crate::error::{AlgebraError, Result};
use crate::mask::SubsetMask;

/// Caps on lattice generation. Subset filtering would be `2^n`; closure
/// generation is bounded by these instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeBudget {
    pub max_order: usize,
    pub max_members: usize,
}

impl Default for LatticeBudget {
    fn default() -> Self {
        LatticeBudget {
            max_order: 512,
            max_members: 100_000,
        }
    }
}

impl LatticeBudget {
    pub(crate) fn check_order(&self, order: usize, what: &str) -> Result<()> {
        if order > self.max_order {
            return Err(AlgebraError::Budget {
                what: format!("{what} of order {order}"),
                cap: self.max_order,
            });
        }
        Ok(())
    }
}

/// Smallest superset of `seed ∪ gens ∪ {0}` closed under `add` and under
/// every image produced by `spread`.
pub(crate) fn close(
    seed: &SubsetMask,
    gens: impl IntoIterator<Item = usize>,
    add: impl Fn(usize, usize) -> usize,
    spread: impl Fn(usize, &mut Vec<usize>),
) -> SubsetMask {
    let mut set = seed.clone();
    let mut members: Vec<usize> = set.iter().collect();
    let mut queue: Vec<usize> = Vec::new();
    if set.insert(0) {
        members.push(0);
        queue.push(0);
    }
    for g in gens {
        if set.insert(g) {
            members.push(g);
            queue.push(g);
        }
    }
    let mut images = Vec::new();
    while let Some(e) = queue.pop() {
        images.clear();
        spread(e, &mut images);
        images.extend(members.iter().map(|&m| add(e, m)));
        for &img in &images {
            if set.insert(img) {
                members.push(img);
                queue.push(img);
            }
        }
    }
    set
}

/// Generates every closed subset reachable from `{0}` by repeatedly
/// adjoining one element and closing again.
pub(crate) fn generate(
    order: usize,
    budget: &LatticeBudget,
    what: &str,
    extend: impl Fn(&SubsetMask, usize) -> SubsetMask,
) -> Result<Vec<SubsetMask>> {
    budget.check_order(order, what)?;
    let bottom = extend(&SubsetMask::empty(order), 0);
    let mut seen: HashSet<SubsetMask> = HashSet::new();
    seen.insert(bottom.clone());
    let mut found = vec![bottom];
    let mut cursor = 0;
    while cursor < found.len() {
        let current = found[cursor].clone();
        cursor += 1;
        for a in 0..order {
            if current.contains(a) {
                continue;
            }
            let next = extend(&current, a);
            if seen.insert(next.clone()) {
                found.push(next);
                if found.len() > budget.max_members {
                    return Err(AlgebraError::Budget {
                        what: format!("{what} lattice size"),
                        cap: budget.max_members,
                    });
                }
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}
