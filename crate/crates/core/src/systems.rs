//! One-sided linear systems `A ⊗ X = B` over a tropical semiring.
//!
//! The central object is the principal solution `X*`: entrywise the largest
//! candidate, computed by residuation as `x*_{ij} = min_l b_{lj} ⊘ a_{li}`
//! where `⊘` is integer subtraction (max-plus) or exact division
//! (max-times). `A ⊗ X` is monotone in `X`, so the system is solvable over
//! the domain exactly when the entrywise floor of `X*` is a domain matrix
//! and itself solves the system.
//!
//! Beyond solvability, the residuation data characterizes the full solution
//! set: `X` (with domain entries) solves the system iff `X ≤ X*` and, for
//! every position `(l, j)` of `B`, some row `i` has `x_{ij}` exactly equal
//! to `x*_{ij}` with the minimum defining `x*_{ij}` attained at `l`. The
//! attainment sets are exposed as cover rows and drive both the membership
//! check and the pruned enumeration of all solutions.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::Error;
use crate::matrix::{mat_mul, TropicalMatrix};
use crate::semiring::SemiringTag;

/// `b ⊘ a`: the largest scalar `t` (over the rationals) with `a ⊗ t ≤ b`.
fn residual(b: &BigUint, a: &BigUint, tag: SemiringTag) -> BigRational {
    let b = BigInt::from(b.clone());
    let a = BigInt::from(a.clone());
    match tag {
        SemiringTag::MaxPlus => BigRational::from_integer(b - a),
        SemiringTag::MaxTimes => BigRational::new(b, a),
    }
}

/// The principal solution `X*` of `A ⊗ X = B`, with its domain floor and
/// the rows attaining each defining minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalSolution {
    dim: usize,
    tag: SemiringTag,
    /// `x*_{ij}`, row-major; exact rationals (integers for max-plus,
    /// possibly negative; possibly fractional for max-times).
    entries: Vec<BigRational>,
    /// Largest domain matrix `≤ X*` entrywise, or `None` when some entry
    /// of `X*` lies below the domain minimum (then nothing solves even
    /// `A ⊗ X ≤ B`).
    floor: Option<TropicalMatrix>,
    /// Per position `(i, j)`: rows `l` with `x*_{ij} = b_{lj} ⊘ a_{li}`.
    cover_rows: Vec<Vec<usize>>,
}

impl PrincipalSolution {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    /// Exact value of `x*_{ij}`.
    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.dim + j]
    }

    /// Largest domain matrix below `X*`, if one exists.
    pub fn feasible_floor(&self) -> Option<&TropicalMatrix> {
        self.floor.as_ref()
    }

    /// Rows `l` for which the minimum defining `x*_{ij}` is attained, i.e.
    /// the positions `(l, j)` of `B` that a tight `x_{ij}` makes exact.
    pub fn cover_rows(&self, i: usize, j: usize) -> &[usize] {
        &self.cover_rows[i * self.dim + j]
    }

    /// Whether the integer `v` sits exactly at the principal value; only
    /// such entries contribute to covering `B`.
    pub fn is_tight(&self, i: usize, j: usize, v: &BigUint) -> bool {
        BigRational::from_integer(BigInt::from(v.clone())) == *self.entry(i, j)
    }
}

/// Computes `X*(A, B)` together with its floor and cover rows.
pub fn principal_solution(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<PrincipalSolution, Error> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    if a.tag() != b.tag() {
        return Err(Error::TagMismatch);
    }
    let k = a.dim();
    let tag = a.tag();
    let mut entries = Vec::with_capacity(k * k);
    let mut cover_rows = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut best = residual(b.entry(0, j), a.entry(0, i), tag);
            for l in 1..k {
                let cand = residual(b.entry(l, j), a.entry(l, i), tag);
                if cand < best {
                    best = cand;
                }
            }
            let attained =
                (0..k).filter(|&l| residual(b.entry(l, j), a.entry(l, i), tag) == best).collect();
            entries.push(best);
            cover_rows.push(attained);
        }
    }

    let dom_min = BigInt::from(tag.domain_min());
    let mut floor_entries = Vec::with_capacity(k * k);
    let mut feasible = true;
    for e in &entries {
        let f = e.floor().to_integer();
        if f < dom_min {
            feasible = false;
            break;
        }
        floor_entries.push(f.to_biguint().expect("floor is >= 0"));
    }
    let floor = if feasible {
        Some(TropicalMatrix::new(k, tag, floor_entries)?)
    } else {
        None
    };
    Ok(PrincipalSolution { dim: k, tag, entries, floor, cover_rows })
}

/// Whether `A ⊗ X = B` has any solution with domain entries.
///
/// Since `X ↦ A ⊗ X` is monotone and every domain solution is below `X*`,
/// it suffices to test the floor of `X*`.
pub fn has_solution(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<bool, Error> {
    let ps = principal_solution(a, b)?;
    match ps.feasible_floor() {
        None => Ok(false),
        Some(f) => Ok(mat_mul(a, f)? == *b),
    }
}

/// Membership test for the solution set of `A ⊗ X = B`, via the principal
/// solution instead of multiplying out: `X ≤ X*` entrywise, and the cover
/// rows of the tight positions jointly reach every `(l, j)` of `B`.
///
/// Agrees with `mat_mul(a, x)? == *b` on every domain matrix `X`.
pub fn satisfies_cover_criterion(
    a: &TropicalMatrix,
    x: &TropicalMatrix,
    b: &TropicalMatrix,
) -> Result<bool, Error> {
    if x.dim() != a.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: a.dim() });
    }
    if x.tag() != a.tag() {
        return Err(Error::TagMismatch);
    }
    let ps = principal_solution(a, b)?;
    let k = a.dim();
    for i in 0..k {
        for j in 0..k {
            let v = BigRational::from_integer(BigInt::from(x.entry(i, j).clone()));
            if v > *ps.entry(i, j) {
                return Ok(false);
            }
        }
    }
    // covered[j][l]: position (l, j) of B is attained by some tight entry.
    let mut covered = vec![vec![false; k]; k];
    for (j, col) in covered.iter_mut().enumerate() {
        for i in 0..k {
            if ps.is_tight(i, j, x.entry(i, j)) {
                for &l in ps.cover_rows(i, j) {
                    col[l] = true;
                }
            }
        }
    }
    Ok(covered.iter().all(|col| col.iter().all(|&c| c)))
}

/// Enumerates every domain solution of `A ⊗ X = B`, in lexicographic order
/// of the row-major entry vector, stopping after `limit` solutions when one
/// is given. Unsolvable systems yield an empty list.
///
/// The search assigns positions row by row. A position may take any domain
/// value up to the floor of its principal value; only the exact principal
/// value (when it is a domain integer) contributes cover rows. A partial
/// assignment is abandoned as soon as some column can no longer cover all
/// of its rows with the tight positions still available.
pub fn enumerate_solutions(
    a: &TropicalMatrix,
    b: &TropicalMatrix,
    limit: Option<usize>,
) -> Result<Vec<TropicalMatrix>, Error> {
    let ps = principal_solution(a, b)?;
    let out = Vec::new();
    if limit == Some(0) {
        return Ok(out);
    }
    let floor = match ps.feasible_floor() {
        None => return Ok(out),
        Some(f) => f.clone(),
    };
    let k = a.dim();
    let tag = a.tag();
    let dom_min = tag.domain_min();

    // tight_ok[p]: the floor value at position p equals x* exactly.
    let tight_ok: Vec<bool> = (0..k * k)
        .map(|p| ps.is_tight(p / k, p % k, floor.entry(p / k, p % k)))
        .collect();
    // potential[j][i][l]: some position (i', j) with i' >= i can still
    // cover row l (i.e. is tightable and has l among its cover rows).
    let mut potential = vec![vec![vec![false; k]; k + 1]; k];
    for j in 0..k {
        for i in (0..k).rev() {
            let mut row = potential[j][i + 1].clone();
            if tight_ok[i * k + j] {
                for &l in ps.cover_rows(i, j) {
                    row[l] = true;
                }
            }
            potential[j][i] = row;
        }
    }

    struct Search<'s> {
        k: usize,
        tag: SemiringTag,
        dom_min: BigUint,
        ps: &'s PrincipalSolution,
        floor: &'s TropicalMatrix,
        tight_ok: &'s [bool],
        potential: &'s [Vec<Vec<bool>>],
        covered: Vec<Vec<bool>>,
        current: Vec<BigUint>,
        out: Vec<TropicalMatrix>,
        limit: Option<usize>,
    }

    impl Search<'_> {
        /// Returns false once the limit is reached, to unwind the search.
        fn descend(&mut self, p: usize) -> bool {
            if p == self.k * self.k {
                let m = TropicalMatrix::new(self.k, self.tag, self.current.clone())
                    .expect("entries stay in domain");
                self.out.push(m);
                return Some(self.out.len()) != self.limit;
            }
            let (i, j) = (p / self.k, p % self.k);
            let hi = self.floor.entry(i, j).clone();
            let future = &self.potential[j][i + 1];
            let slack_viable = (0..self.k).all(|l| self.covered[j][l] || future[l]);

            if slack_viable {
                let mut v = self.dom_min.clone();
                let slack_max = if self.tight_ok[p] {
                    if hi > self.dom_min {
                        Some(&hi - 1u32)
                    } else {
                        None
                    }
                } else {
                    Some(hi.clone())
                };
                if let Some(slack_max) = slack_max {
                    while v <= slack_max {
                        self.current[p] = v.clone();
                        if !self.descend(p + 1) {
                            return false;
                        }
                        v += 1u32;
                    }
                }
            }

            if self.tight_ok[p] {
                let rows = self.ps.cover_rows(i, j);
                let tight_viable = (0..self.k)
                    .all(|l| self.covered[j][l] || future[l] || rows.contains(&l));
                if tight_viable {
                    let newly: Vec<usize> =
                        rows.iter().copied().filter(|&l| !self.covered[j][l]).collect();
                    for &l in &newly {
                        self.covered[j][l] = true;
                    }
                    self.current[p] = hi;
                    let keep_going = self.descend(p + 1);
                    for &l in &newly {
                        self.covered[j][l] = false;
                    }
                    if !keep_going {
                        return false;
                    }
                }
            }
            true
        }
    }

    // A column whose tightable positions cannot cover it even from the top
    // admits no solution at all.
    if (0..k).any(|j| potential[j][0].iter().any(|&c| !c)) {
        return Ok(out);
    }

    let mut search = Search {
        k,
        tag,
        dom_min: dom_min.clone(),
        ps: &ps,
        floor: &floor,
        tight_ok: &tight_ok,
        potential: &potential,
        covered: vec![vec![false; k]; k],
        current: vec![dom_min; k * k],
        out,
        limit,
    };
    search.descend(0);
    Ok(search.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(dim: usize, tag: SemiringTag, vals: &[u64]) -> TropicalMatrix {
        TropicalMatrix::new(dim, tag, vals.iter().map(|&v| BigUint::from(v)).collect()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn principal_solution_max_plus() {
        let a = m(2, SemiringTag::MaxPlus, &[1, 2, 3, 4]);
        let b = m(2, SemiringTag::MaxPlus, &[5, 6, 7, 8]);
        let ps = principal_solution(&a, &b).unwrap();
        let expected = [4, 5, 3, 4];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*ps.entry(i, j), rat(expected[i * 2 + j], 1));
            }
        }
        assert_eq!(
            ps.feasible_floor().unwrap(),
            &m(2, SemiringTag::MaxPlus, &[4, 5, 3, 4])
        );
    }

    #[test]
    fn principal_solution_of_zero_matrix_takes_column_minima() {
        let a = m(2, SemiringTag::MaxPlus, &[0, 0, 0, 0]);
        let b = m(2, SemiringTag::MaxPlus, &[1, 2, 3, 4]);
        let ps = principal_solution(&a, &b).unwrap();
        let expected = [1, 2, 1, 2];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*ps.entry(i, j), rat(expected[i * 2 + j], 1));
            }
        }
    }

    #[test]
    fn principal_solution_max_times_exact_division() {
        let a = m(2, SemiringTag::MaxTimes, &[2, 2, 2, 2]);
        let b = m(2, SemiringTag::MaxTimes, &[4, 4, 4, 4]);
        let ps = principal_solution(&a, &b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*ps.entry(i, j), rat(2, 1));
            }
        }
    }

    #[test]
    fn solvability_matches_floor_check() {
        let a = m(2, SemiringTag::MaxPlus, &[1, 2, 3, 4]);
        let b = m(2, SemiringTag::MaxPlus, &[5, 6, 7, 8]);
        assert!(has_solution(&a, &b).unwrap());

        let zeros = m(2, SemiringTag::MaxPlus, &[0, 0, 0, 0]);
        assert!(!has_solution(&zeros, &b).unwrap());

        let a = m(2, SemiringTag::MaxTimes, &[2, 2, 2, 2]);
        let b = m(2, SemiringTag::MaxTimes, &[4, 4, 4, 4]);
        assert!(has_solution(&a, &b).unwrap());
    }

    #[test]
    fn cover_criterion_examples() {
        let a = m(2, SemiringTag::MaxPlus, &[1, 2, 3, 4]);
        let b = m(2, SemiringTag::MaxPlus, &[5, 6, 7, 8]);
        let x_star = m(2, SemiringTag::MaxPlus, &[4, 5, 3, 4]);
        assert!(satisfies_cover_criterion(&a, &x_star, &b).unwrap());
        // entry (2,2) slack; its column stays covered by the tight (1,2)
        let slack = m(2, SemiringTag::MaxPlus, &[4, 5, 3, 3]);
        assert!(satisfies_cover_criterion(&a, &slack, &b).unwrap());
        // no tight entries left in column 1, so row positions there are missed
        let loose = m(2, SemiringTag::MaxPlus, &[3, 5, 2, 4]);
        assert!(!satisfies_cover_criterion(&a, &loose, &b).unwrap());
        assert_ne!(mat_mul(&a, &loose).unwrap(), b);
    }

    #[test]
    fn enumerate_forced_single_solution() {
        let a = m(1, SemiringTag::MaxPlus, &[0]);
        let b = m(1, SemiringTag::MaxPlus, &[3]);
        let all = enumerate_solutions(&a, &b, None).unwrap();
        assert_eq!(all, vec![m(1, SemiringTag::MaxPlus, &[3])]);
    }

    #[test]
    fn enumerate_matches_brute_force() {
        let a = m(2, SemiringTag::MaxPlus, &[1, 2, 3, 4]);
        let b = m(2, SemiringTag::MaxPlus, &[5, 6, 7, 8]);
        let all = enumerate_solutions(&a, &b, None).unwrap();
        assert!(all.contains(&m(2, SemiringTag::MaxPlus, &[4, 5, 3, 4])));
        assert!(all.contains(&m(2, SemiringTag::MaxPlus, &[4, 5, 3, 3])));

        // brute force over every X with entries <= 5
        let mut brute = Vec::new();
        for code in 0..6u64.pow(4) {
            let vals: Vec<u64> = (0..4).map(|p| (code / 6u64.pow(p)) % 6).collect();
            let x = m(2, SemiringTag::MaxPlus, &vals);
            if mat_mul(&a, &x).unwrap() == b {
                brute.push(x);
            }
        }
        assert_eq!(all.len(), brute.len());
        for x in &brute {
            assert!(all.contains(x));
        }
        // lexicographic order of the flattened entry vectors
        for w in all.windows(2) {
            assert!(w[0].entries() < w[1].entries());
        }
    }

    #[test]
    fn enumerate_fractional_principal_value_is_unsolvable() {
        let a = m(1, SemiringTag::MaxTimes, &[2]);
        let b = m(1, SemiringTag::MaxTimes, &[7]);
        assert!(enumerate_solutions(&a, &b, None).unwrap().is_empty());
        assert!(!has_solution(&a, &b).unwrap());
    }

    #[test]
    fn enumerate_respects_limit() {
        let a = m(2, SemiringTag::MaxPlus, &[1, 2, 3, 4]);
        let b = m(2, SemiringTag::MaxPlus, &[5, 6, 7, 8]);
        let all = enumerate_solutions(&a, &b, None).unwrap();
        assert!(all.len() >= 2);
        let two = enumerate_solutions(&a, &b, Some(2)).unwrap();
        assert_eq!(two, all[..2]);
    }

    #[test]
    fn negative_principal_entry_means_no_floor() {
        let a = m(1, SemiringTag::MaxPlus, &[5]);
        let b = m(1, SemiringTag::MaxPlus, &[3]);
        let ps = principal_solution(&a, &b).unwrap();
        assert_eq!(*ps.entry(0, 0), rat(-2, 1));
        assert!(ps.feasible_floor().is_none());
        assert!(!has_solution(&a, &b).unwrap());
    }
}
