use super::{FiniteRing, MAX_TABLE_ORDER};
use crate::error::{AlgebraError, Result};
use crate::mask::SubsetMask;

fn check_order(order: usize) -> Result<()> {
    if order > MAX_TABLE_ORDER {
        return Err(AlgebraError::Budget {
            what: format!("ring order {order}"),
            cap: MAX_TABLE_ORDER,
        });
    }
    Ok(())
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FiniteRing {
    /// The residue ring `Z/nZ`; element `i` is the residue `i`.
    pub fn cyclic(n: usize) -> Result<FiniteRing> {
        if n < 2 {
            return Err(AlgebraError::input(format!(
                "cyclic ring needs n >= 2, got {n}"
            )));
        }
        check_order(n)?;
        let add = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let mul = (0..n * n).map(|k| ((k / n) * (k % n) % n) as u32).collect();
        Ok(FiniteRing::from_parts(
            format!("Z{n}"),
            n,
            add,
            mul,
            1,
            (0..n).map(|i| i.to_string()).collect(),
        ))
    }

    /// Componentwise product; `(i, j)` has index `i * |right| + j`.
    pub fn product(left: &FiniteRing, right: &FiniteRing) -> Result<FiniteRing> {
        let (n1, n2) = (left.order(), right.order());
        let n = n1 * n2;
        check_order(n)?;
        let split = |x: usize| (x / n2, x % n2);
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            let (a1, a2) = split(x);
            for y in 0..n {
                let (b1, b2) = split(y);
                add.push((left.add(a1, b1) * n2 + right.add(a2, b2)) as u32);
                mul.push((left.mul(a1, b1) * n2 + right.mul(a2, b2)) as u32);
            }
        }
        let names = (0..n)
            .map(|x| {
                let (a, b) = split(x);
                format!("({},{})", left.element_name(a), right.element_name(b))
            })
            .collect();
        Ok(FiniteRing::from_parts(
            format!("{}x{}", left.label(), right.label()),
            n,
            add,
            mul,
            left.one() * n2 + right.one(),
            names,
        ))
    }

    /// The ring of `k x k` matrices over `Z/pZ` supported on `pattern`.
    pub fn pattern_matrix(p: usize, k: usize, pattern: &[Vec<bool>]) -> Result<FiniteRing> {
        Ok(PatternMatrix::new(p, k, pattern)?.ring())
    }

    /// `R/I` for a two-sided ideal `I`, with the projection `R -> R/I`.
    pub fn quotient(&self, ideal: &SubsetMask) -> Result<QuotientRing> {
        if ideal.carrier_size() != self.order() {
            return Err(AlgebraError::input(
                "ideal mask is over a different carrier",
            ));
        }
        if !self.is_two_sided_ideal(ideal) {
            return Err(AlgebraError::input(format!(
                "{:?} is not a two-sided ideal of {}",
                ideal,
                self.label()
            )));
        }
        if ideal.is_full() {
            return Err(AlgebraError::input(
                "quotient by the whole ring is the zero ring, which is not allowed",
            ));
        }
        let (reps, class_of) = cosets(self.order(), ideal, |x, i| self.add(x, i));
        let q = reps.len();
        let mut add = Vec::with_capacity(q * q);
        let mut mul = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                add.push(class_of[self.add(a, b)] as u32);
                mul.push(class_of[self.mul(a, b)] as u32);
            }
        }
        let names = reps
            .iter()
            .map(|&r| format!("{}+I", self.element_name(r)))
            .collect();
        let ring = FiniteRing::from_parts(
            format!("{}/I{}", self.label(), ideal.len()),
            q,
            add,
            mul,
            class_of[self.one()],
            names,
        );
        Ok(QuotientRing {
            ring,
            projection: class_of,
        })
    }
}

/// Partitions `0..n` into cosets `x + I`, each represented by its least
/// index. Returns the sorted representatives and the class of each element.
pub(crate) fn cosets(
    n: usize,
    subgroup: &SubsetMask,
    add: impl Fn(usize, usize) -> usize,
) -> (Vec<usize>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for i in subgroup.iter() {
            class_of[add(x, i)] = id;
        }
    }
    (reps, class_of)
}

/// A quotient ring together with its projection map.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub ring: FiniteRing,
    pub projection: Vec<usize>,
}

/// Encoding between pattern-supported matrices and ring element indices.
///
/// Allowed cells are listed row-major; a matrix with entry `v_j` at the
/// `j`-th allowed cell has index `sum v_j * p^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternMatrix {
    p: usize,
    k: usize,
    cells: Vec<(usize, usize)>,
}

impl PatternMatrix {
    pub fn new(p: usize, k: usize, pattern: &[Vec<bool>]) -> Result<PatternMatrix> {
        if !is_prime(p) {
            return Err(AlgebraError::input(format!("p = {p} is not prime")));
        }
        if k == 0 {
            return Err(AlgebraError::input("matrix size must be positive"));
        }
        if pattern.len() != k || pattern.iter().any(|row| row.len() != k) {
            return Err(AlgebraError::input(format!("pattern must be {k}x{k}")));
        }
        if let Some(i) = (0..k).find(|&i| !pattern[i][i]) {
            return Err(AlgebraError::input(format!(
                "pattern misses diagonal cell ({0},{0}); the ring would have no identity",
                i + 1
            )));
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if pattern[i][j] && pattern[j][l] && !pattern[i][l] {
                        return Err(AlgebraError::input(format!(
                            "pattern not closed under multiplication: ({},{})*({},{}) lands outside",
                            i + 1,
                            j + 1,
                            j + 1,
                            l + 1
                        )));
                    }
                }
            }
        }
        let cells: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|&(i, j)| pattern[i][j])
            .collect();
        let fits = p
            .checked_pow(cells.len() as u32)
            .is_some_and(|order| order <= MAX_TABLE_ORDER);
        if !fits {
            return Err(AlgebraError::Budget {
                what: format!("pattern ring over Z{p} with {} cells", cells.len()),
                cap: MAX_TABLE_ORDER,
            });
        }
        Ok(PatternMatrix { p, k, cells })
    }

    pub fn order(&self) -> usize {
        self.p.pow(self.cells.len() as u32)
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> usize {
        self.p
    }

    pub fn decode(&self, mut index: usize) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.k]; self.k];
        for &(i, j) in &self.cells {
            m[i][j] = index % self.p;
            index /= self.p;
        }
        m
    }

    /// Returns `None` if the matrix has support outside the pattern.
    pub fn encode(&self, matrix: &[Vec<usize>]) -> Option<usize> {
        let mut index = 0;
        let mut place = 1;
        for &(i, j) in &self.cells {
            index += (matrix[i][j] % self.p) * place;
            place *= self.p;
        }
        (self.decode(index) == matrix).then_some(index)
    }

    pub fn name(&self, index: usize) -> String {
        let rows: Vec<String> = self
            .decode(index)
            .iter()
            .map(|row| {
                let cols: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                format!("[{}]", cols.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    pub fn ring(&self) -> FiniteRing {
        let n = self.order();
        let (p, k) = (self.p, self.k);
        let mats: Vec<Vec<Vec<usize>>> = (0..n).map(|x| self.decode(x)).collect();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        let mut scratch = vec![vec![0; k]; k];
        for a in &mats {
            for b in &mats {
                for i in 0..k {
                    for j in 0..k {
                        scratch[i][j] = (a[i][j] + b[i][j]) % p;
                    }
                }
                add.push(self.encode(&scratch).expect("sum stays in pattern") as u32);
                for i in 0..k {
                    for j in 0..k {
                        scratch[i][j] = (0..k).map(|l| a[i][l] * b[l][j]).sum::<usize>() % p;
                    }
                }
                mul.push(self.encode(&scratch).expect("pattern is closed") as u32);
            }
        }
        let identity: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| usize::from(i == j)).collect())
            .collect();
        let one = self.encode(&identity).expect("diagonal is in pattern");
        let pattern_tag: String = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if self.cells.contains(&(i, j)) {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("/");
        FiniteRing::from_parts(
            format!("Mat{k}(Z{p})[{pattern_tag}]"),
            n,
            add,
            mul,
            one,
            (0..n).map(|x| self.name(x)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{find_isomorphism, verify_ring_axioms};

    fn lower(k: usize) -> Vec<Vec<bool>> {
        (0..k).map(|i| (0..k).map(|j| j <= i).collect()).collect()
    }

    #[test]
    fn z6_arithmetic() {
        let r = FiniteRing::cyclic(6).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.add(5, 5), 4);
        assert_eq!(r.mul(5, 5), 1);
        assert_eq!(r.neg(2), 4);
        assert!(FiniteRing::cyclic(1).is_err());
        assert!(FiniteRing::cyclic(0).is_err());
    }

    #[test]
    fn constructors_pass_axioms() {
        let rings = vec![
            FiniteRing::cyclic(2).unwrap(),
            FiniteRing::cyclic(8).unwrap(),
            FiniteRing::product(
                &FiniteRing::cyclic(2).unwrap(),
                &FiniteRing::cyclic(3).unwrap(),
            )
            .unwrap(),
            FiniteRing::pattern_matrix(2, 2, &lower(2)).unwrap(),
            FiniteRing::pattern_matrix(3, 2, &lower(2)).unwrap(),
            FiniteRing::pattern_matrix(2, 2, &[vec![true; 2], vec![true; 2]]).unwrap(),
        ];
        for r in rings {
            assert!(verify_ring_axioms(&r.tables()).passed(), "{}", r.label());
        }
    }

    #[test]
    fn product_indexing() {
        let z2 = FiniteRing::cyclic(2).unwrap();
        let r = FiniteRing::product(&z2, &z2).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.one(), 3);
        // (1,0) + (0,1) = (1,1); (1,0)(0,1) = 0
        assert_eq!(r.add(2, 1), 3);
        assert_eq!(r.mul(2, 1), 0);
        assert_eq!(r.element_name(2), "(1,0)");
        let big = FiniteRing::product(
            &FiniteRing::cyclic(4).unwrap(),
            &FiniteRing::cyclic(18).unwrap(),
        )
        .unwrap();
        assert_eq!(big.order(), 72);
    }

    #[test]
    fn z2_times_z3_is_z6() {
        let p = FiniteRing::product(
            &FiniteRing::cyclic(2).unwrap(),
            &FiniteRing::cyclic(3).unwrap(),
        )
        .unwrap();
        let z6 = FiniteRing::cyclic(6).unwrap();
        let iso = find_isomorphism(&p, &z6).expect("CRT isomorphism");
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(iso[p.mul(a, b)], z6.mul(iso[a], iso[b]));
                assert_eq!(iso[p.add(a, b)], z6.add(iso[a], iso[b]));
            }
        }
        assert!(find_isomorphism(
            &FiniteRing::cyclic(4).unwrap(),
            &FiniteRing::product(
                &FiniteRing::cyclic(2).unwrap(),
                &FiniteRing::cyclic(2).unwrap()
            )
            .unwrap()
        )
        .is_none());
    }

    #[test]
    fn pattern_rings() {
        let three = vec![
            vec![true, false, false],
            vec![false, true, false],
            vec![true, true, true],
        ];
        let pm = PatternMatrix::new(2, 3, &three).unwrap();
        let r = pm.ring();
        assert_eq!(r.order(), 32);
        assert_eq!(
            pm.decode(r.one()),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        let r2 = FiniteRing::pattern_matrix(2, 2, &lower(2)).unwrap();
        assert_eq!(r2.order(), 8);
        let full = FiniteRing::pattern_matrix(2, 2, &[vec![true; 2], vec![true; 2]]).unwrap();
        assert_eq!(full.order(), 16);
        assert!(!full.is_commutative());
        assert!(r2.element_name(2).starts_with("[[0,0],[1,0]]"));
    }

    #[test]
    fn pattern_errors() {
        let no_diag = vec![vec![true, false], vec![true, false]];
        assert!(PatternMatrix::new(2, 2, &no_diag).is_err());
        // (1,2) and (2,3) without (1,3)
        let open = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(PatternMatrix::new(2, 3, &open).is_err());
        assert!(PatternMatrix::new(4, 2, &lower(2)).is_err());
    }

    #[test]
    fn quotients() {
        let z4 = FiniteRing::cyclic(4).unwrap();
        let q = z4.quotient(&SubsetMask::from_indices(4, [0, 2])).unwrap();
        assert_eq!(q.ring.order(), 2);
        assert_eq!(q.projection, vec![0, 1, 0, 1]);
        assert!(find_isomorphism(&q.ring, &FiniteRing::cyclic(2).unwrap()).is_some());

        let z6 = FiniteRing::cyclic(6).unwrap();
        let q = z6.quotient(&SubsetMask::from_indices(6, [0, 3])).unwrap();
        assert!(find_isomorphism(&q.ring, &FiniteRing::cyclic(3).unwrap()).is_some());

        let z8 = FiniteRing::cyclic(8).unwrap();
        let q = z8.quotient(&SubsetMask::from_indices(8, [0, 4])).unwrap();
        assert!(find_isomorphism(&q.ring, &FiniteRing::cyclic(4).unwrap()).is_some());

        assert!(z6.quotient(&SubsetMask::from_indices(6, [0, 2])).is_err());
    }
}
