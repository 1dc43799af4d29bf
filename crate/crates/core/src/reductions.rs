//! Reductions between scalar problems, exact cover, and the matrix
//! problems.
//!
//! Two constructions are implemented. Constant matrices embed scalar subset
//! sum and knapsack into the matrix problems: `embed_constant` is a
//! ⊗-homomorphism (`f(a) ⊗ f(b) = f(a ⊗ b)`), so a scalar instance and its
//! matrix image have exactly the same solutions. Prime encodings embed
//! three-dimensional exact cover into knapsack over the positive integers
//! with multiplication: ground elements and triples become primes, a triple
//! becomes the product of its members' primes times its own tag prime, and
//! a squarefree target forces every tag prime to be used exactly once.
//!
//! The scalar brute-force solver at the bottom is the independent oracle
//! the reduction tests compare against.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::instance::{Certificate, Mode, ProblemInstance};
use crate::matrix::TropicalMatrix;
use crate::semiring::SemiringTag;

/// The `k × k` matrix with every entry equal to `a`.
pub fn embed_constant(a: &BigUint, k: usize, tag: SemiringTag) -> Result<TropicalMatrix, Error> {
    TropicalMatrix::new(k, tag, vec![a.clone(); k * k])
}

/// Lifts a scalar instance `(w₁, …, wₙ; c)` to the matrix instance
/// `(f(w₁), …, f(wₙ); f(c))` of constant matrices. Solution vectors carry
/// over unchanged in both directions.
pub fn reduce_scalar_to_matrix(
    weights: &[BigUint],
    target: &BigUint,
    k: usize,
    tag: SemiringTag,
) -> Result<ProblemInstance, Error> {
    let witnesses = weights
        .iter()
        .map(|w| embed_constant(w, k, tag))
        .collect::<Result<Vec<_>, _>>()?;
    ProblemInstance::new(witnesses, embed_constant(target, k, tag)?)
}

/// The first `count` primes in increasing order, by trial division.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| !candidate.is_multiple_of(p))
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// An exact-cover-by-3-sets question: a ground set `{1, …, 3m}` and a
/// collection of 3-element subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3CInstance {
    ground_size: usize,
    triples: Vec<[usize; 3]>,
}

impl X3CInstance {
    /// Validates that the ground size is a positive multiple of 3 and that
    /// every triple has three distinct members in `{1, …, ground_size}`.
    pub fn new(ground_size: usize, triples: Vec<[usize; 3]>) -> Result<Self, Error> {
        if ground_size == 0 || !ground_size.is_multiple_of(3) {
            return Err(Error::InvalidX3c(format!(
                "ground size must be a positive multiple of 3, got {ground_size}"
            )));
        }
        for t in &triples {
            if t.iter().any(|&x| x == 0 || x > ground_size) {
                return Err(Error::InvalidX3c(format!(
                    "triple {t:?} leaves the ground set 1..={ground_size}"
                )));
            }
            if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
                return Err(Error::InvalidX3c(format!("triple {t:?} has repeated members")));
            }
        }
        Ok(X3CInstance { ground_size, triples })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// Exhaustive search for an exact cover; returns the indices of a
    /// covering sub-collection if one exists. Exponential in the number of
    /// triples — an oracle for small instances, not a real X3C solver.
    pub fn exact_cover_brute(&self) -> Option<Vec<usize>> {
        let n = self.triples.len();
        let want = self.ground_size / 3;
        for mask in 0u64..(1u64 << n) {
            if mask.count_ones() as usize != want {
                continue;
            }
            let mut seen = vec![false; self.ground_size + 1];
            let mut ok = true;
            'mask: for (i, t) in self.triples.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &x in t {
                        if seen[x] {
                            ok = false;
                            break 'mask;
                        }
                        seen[x] = true;
                    }
                }
            }
            if ok && seen[1..].iter().all(|&s| s) {
                return Some((0..n).filter(|i| mask >> i & 1 == 1).collect());
            }
        }
        None
    }
}

/// Encodes an exact-cover question as scalar knapsack over `ℤ≥1` with
/// multiplication: with `p₁, …, p_{3m}` primes for the ground elements and
/// `q₁, …, qₙ` primes for the triples, each triple `cᵢ = {a, b, c}`
/// contributes the item pair `(p_a p_b p_c qᵢ, qᵢ)`, and the target is
/// `p₁ ⋯ p_{3m} · q₁ ⋯ qₙ`. The target is squarefree, so any solution uses
/// each pair exactly once — the first item when the triple is in the cover,
/// the bare `qᵢ` when it is not — and the instance is solvable exactly when
/// an exact cover exists.
///
/// Returns the `2n` items in pair order and the target.
pub fn reduce_x3c_to_kp_product(x3c: &X3CInstance) -> (Vec<BigUint>, BigUint) {
    let m3 = x3c.ground_size();
    let n = x3c.triples().len();
    let primes = first_primes(m3 + n);
    let ground: Vec<BigUint> = primes[..m3].iter().map(|&p| BigUint::from(p)).collect();
    let tags: Vec<BigUint> = primes[m3..].iter().map(|&p| BigUint::from(p)).collect();

    let mut items = Vec::with_capacity(2 * n);
    for (i, t) in x3c.triples().iter().enumerate() {
        let triple_item =
            &ground[t[0] - 1] * &ground[t[1] - 1] * &ground[t[2] - 1] * &tags[i];
        items.push(triple_item);
        items.push(tags[i].clone());
    }

    let mut target = BigUint::one();
    for p in ground.iter().chain(tags.iter()) {
        target *= p;
    }
    (items, target)
}

/// Scalar combining law for [`solve_scalar_brute`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    /// Subset sum / knapsack over `ℤ≥0` with `+`.
    Add,
    /// Subset sum / knapsack over `ℤ≥1` with `×`.
    Multiply,
}

/// Exhaustive scalar solver, the oracle the matrix reductions are checked
/// against. Returns the lexicographically smallest exponent vector (not all
/// zero) combining the items to the target, or `None`.
///
/// Exponents are bounded per item — 1 in subset-sum mode and for items that
/// cannot grow (0 under `+`, 1 under `×`), otherwise `target / wᵢ` under
/// `+` and `log₂ target` under `×` — and partial combinations are pruned
/// once they exceed the target, or under `×` once they stop dividing it.
pub fn solve_scalar_brute(
    items: &[BigUint],
    target: &BigUint,
    op: ScalarOp,
    mode: Mode,
) -> Option<Certificate> {
    let identity = match op {
        ScalarOp::Add => BigUint::zero(),
        ScalarOp::Multiply => BigUint::one(),
    };
    let bounds: Vec<BigUint> = items
        .iter()
        .map(|w| {
            if mode == Mode::SubsetSum || *w == identity {
                BigUint::one()
            } else {
                match op {
                    ScalarOp::Add => target / w,
                    // x ≤ log₂(target) once w ≥ 2
                    ScalarOp::Multiply => BigUint::from(target.bits().saturating_sub(1)),
                }
            }
        })
        .collect();

    struct Scan<'a> {
        items: &'a [BigUint],
        target: &'a BigUint,
        op: ScalarOp,
        bounds: &'a [BigUint],
        exponents: Vec<BigUint>,
    }

    impl Scan<'_> {
        fn rec(&mut self, i: usize, acc: &BigUint, used: bool) -> Option<Certificate> {
            if i == self.items.len() {
                return if used && acc == self.target {
                    Some(Certificate(self.exponents.clone()))
                } else {
                    None
                };
            }
            let w = &self.items[i];
            let mut e = BigUint::zero();
            let mut val = acc.clone();
            loop {
                if !e.is_zero() {
                    match self.op {
                        ScalarOp::Add => val += w,
                        ScalarOp::Multiply => val *= w,
                    }
                    if val > *self.target {
                        return None;
                    }
                }
                let divides = match self.op {
                    ScalarOp::Add => true,
                    ScalarOp::Multiply => val.is_zero() || (self.target % &val).is_zero(),
                };
                if divides {
                    self.exponents.push(e.clone());
                    let found = self.rec(i + 1, &val, used || !e.is_zero());
                    self.exponents.pop();
                    if found.is_some() {
                        return found;
                    }
                }
                if e == self.bounds[i] {
                    return None;
                }
                e += 1u32;
            }
        }
    }

    let mut scan = Scan { items, target, op, bounds: &bounds, exponents: Vec::new() };
    scan.rec(0, &identity, false)
}
