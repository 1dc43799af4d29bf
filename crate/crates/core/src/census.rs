//! Counting, sampling, and density estimation over max-times instances
//! stratified by binary size.
//!
//! The stratum `U_m` collects the max-times instances `(W₁, …, Wₙ; C)` of
//! binary size exactly `m` (witness count included; `n = 0` is allowed).
//! Everything here rests on one counting fact: a `k × k` matrix of binary
//! size `l` spends `k² − 1` on separators and `l − k² + 1` on entry bits,
//! and since a number of bit length `s` leaves `s − 1` free bits, every
//! split of the entry budget contributes the same `2^{l − 2k² + 1}`
//! matrices. Matrices per size, witness tuples per budget, and instances
//! per stratum then follow by convolution, and exact uniform sampling walks
//! the same decomposition: pick sizes proportional to counts, split budgets
//! by uniform delimiters, fill free bits uniformly.
//!
//! Density estimation measures how rare targets with unusually many
//! factorizations `X ⊗ Y = C` are: instances whose target admits more than
//! `m^e` such pairs count as hits.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::instance::ProblemInstance;
use crate::matrix::TropicalMatrix;
use crate::semiring::SemiringTag;
use crate::systems::enumerate_solutions;

/// A single census figure: the count `value` for strata parameter
/// `parameter` at dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusCount {
    /// Matrix size `l` or instance size `m`, depending on the operation.
    pub parameter: u64,
    pub dim: usize,
    pub value: BigUint,
}

/// Result of sampling-based hard-instance density estimation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityEstimate {
    pub m: u64,
    pub samples: u64,
    /// Samples whose target has more than `m^threshold_exponent` solution
    /// pairs.
    pub hits: u64,
    pub threshold_exponent: u32,
}

impl DensityEstimate {
    pub fn fraction(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.hits as f64 / self.samples as f64
        }
    }
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Smallest binary size of a `k × k` max-times matrix (the all-ones
/// matrix: one bit per entry plus the separators).
fn min_matrix_size(k: usize) -> u64 {
    2 * (k * k) as u64 - 1
}

/// Number of `k × k` max-times matrices of binary size exactly `l`, in
/// closed form: `2^{l − 2k² + 1} · C(l − k², k² − 1)`, and `0` below the
/// minimum size `2k² − 1`.
pub fn count_matrices_closed(l: u64, k: usize) -> CensusCount {
    let kk = (k * k) as u64;
    let value = if l < min_matrix_size(k) {
        BigUint::zero()
    } else {
        (BigUint::one() << (l + 1 - 2 * kk)) * binomial(l - kk, kk - 1)
    };
    CensusCount { parameter: l, dim: k, value }
}

/// Number of `k × k` max-times matrices of binary size exactly `l`, by
/// brute-force enumeration of entry tuples. The oracle for the closed
/// form; aborts once more than `cap` candidate entries have been tried.
pub fn count_matrices_exhaustive(l: u64, k: usize, cap: u64) -> Result<CensusCount, Error> {
    let kk = k * k;
    let separators = kk as u64 - 1;
    let mut count = BigUint::zero();
    if l > separators {
        let budget = l - separators; // total entry bits to spend
        let mut visited = 0u64;
        // entries[t] consumes bits(entries[t]); every later entry needs ≥ 1
        fn rec(
            t: usize,
            kk: usize,
            remaining: u64,
            count: &mut BigUint,
            visited: &mut u64,
            cap: u64,
        ) -> Result<(), Error> {
            if t == kk {
                if remaining == 0 {
                    *count += 1u32;
                }
                return Ok(());
            }
            let later = (kk - t - 1) as u64;
            if remaining <= later {
                return Ok(());
            }
            let max_bits = remaining - later;
            if max_bits >= 64 {
                return Err(Error::SearchSpaceExceeded {
                    space: format!("entries up to 2^{max_bits}"),
                    cap,
                });
            }
            let mut v = 1u64;
            while v < (1u64 << max_bits) {
                *visited += 1;
                if *visited > cap {
                    return Err(Error::SearchSpaceExceeded {
                        space: format!("more than {visited} candidate entries"),
                        cap,
                    });
                }
                let bits = 64 - v.leading_zeros() as u64;
                rec(t + 1, kk, remaining - bits, count, visited, cap)?;
                v += 1;
            }
            Ok(())
        }
        rec(0, kk, budget, &mut count, &mut visited, cap)?;
    }
    Ok(CensusCount { parameter: l, dim: k, value: count })
}

/// Counts of witness tuples by total budget: `tuples[s]` is the number of
/// ordered tuples `(W₁, …, Wₙ)`, `n ≥ 0`, with `Σᵢ (size₂(Wᵢ) + 1) = s`.
fn tuple_counts(up_to: u64, k: usize, matrices: &[BigUint]) -> Vec<BigUint> {
    let min_l = min_matrix_size(k);
    let mut tuples = vec![BigUint::zero(); (up_to + 1) as usize];
    tuples[0] = BigUint::one();
    for s in 1..=up_to {
        let mut total = BigUint::zero();
        // first witness has size l, costing l + 1 of the budget
        let mut l = min_l;
        while l < s {
            let rest = (s - l - 1) as usize;
            total += &matrices[l as usize] * &tuples[rest];
            l += 1;
        }
        tuples[s as usize] = total;
    }
    tuples
}

fn matrix_counts(up_to: u64, k: usize) -> Vec<BigUint> {
    (0..=up_to).map(|l| count_matrices_closed(l, k).value).collect()
}

/// Number of max-times instances of binary size exactly `m`: targets of
/// every feasible size convolved with witness-tuple counts for the
/// remaining budget.
pub fn count_instances(m: u64, k: usize) -> CensusCount {
    let matrices = matrix_counts(m, k);
    let tuples = tuple_counts(m, k, &matrices);
    let mut value = BigUint::zero();
    let mut l = min_matrix_size(k);
    while l <= m {
        value += &matrices[l as usize] * &tuples[(m - l) as usize];
        l += 1;
    }
    CensusCount { parameter: m, dim: k, value }
}

/// Draws an index with probability proportional to the (not all zero)
/// weights.
fn weighted_index(weights: &[BigUint], rng: &mut ChaCha8Rng) -> usize {
    let total: BigUint = weights.iter().sum();
    debug_assert!(!total.is_zero());
    let mut r = rng.gen_biguint_below(&total);
    for (i, w) in weights.iter().enumerate() {
        if r < *w {
            return i;
        }
        r -= w;
    }
    unreachable!("weights sum covers every draw")
}

/// Uniform matrix from the size-`l` stratum: split the entry-bit budget by
/// uniformly chosen delimiters (every split carries equally many
/// matrices), then fill each entry's free bits uniformly.
fn sample_matrix(l: u64, k: usize, rng: &mut ChaCha8Rng) -> TropicalMatrix {
    let kk = k * k;
    let budget = l - (kk as u64 - 1);
    // composition of `budget` into kk parts ≥ 1 via delimiter positions
    let mut delimiters: Vec<u64> = if kk > 1 {
        rand::seq::index::sample(rng, (budget - 1) as usize, kk - 1)
            .into_iter()
            .map(|d| d as u64 + 1)
            .collect()
    } else {
        Vec::new()
    };
    delimiters.sort_unstable();
    delimiters.insert(0, 0);
    delimiters.push(budget);
    let entries: Vec<BigUint> = delimiters
        .windows(2)
        .map(|w| {
            let bits = w[1] - w[0];
            (BigUint::one() << (bits - 1)) + rng.gen_biguint(bits - 1)
        })
        .collect();
    TropicalMatrix::new(k, SemiringTag::MaxTimes, entries).expect("entries are ≥ 1")
}

/// Exactly uniform sample from the size-`m` stratum of max-times
/// instances; deterministic per seed. Fails on empty strata.
pub fn sample_instance(m: u64, k: usize, seed: u64) -> Result<ProblemInstance, Error> {
    let matrices = matrix_counts(m, k);
    let tuples = tuple_counts(m, k, &matrices);
    let min_l = min_matrix_size(k);

    // target size first, proportional to (targets of that size) × (tuples
    // fitting in the rest)
    let target_weights: Vec<BigUint> = (0..=m)
        .map(|l| {
            if l < min_l {
                BigUint::zero()
            } else {
                &matrices[l as usize] * &tuples[(m - l) as usize]
            }
        })
        .collect();
    if target_weights.iter().all(|w| w.is_zero()) {
        return Err(Error::EmptyStratum { m, dim: k });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target_size = weighted_index(&target_weights, &mut rng) as u64;
    let target = sample_matrix(target_size, k, &mut rng);

    let mut witnesses = Vec::new();
    let mut budget = m - target_size;
    while budget > 0 {
        // first-witness size, proportional to (witnesses of that size) ×
        // (tuples fitting in the remainder); budget > 0 admits no empty rest
        let weights: Vec<BigUint> = (0..budget)
            .map(|l| {
                if l < min_l {
                    BigUint::zero()
                } else {
                    &matrices[l as usize] * &tuples[(budget - l - 1) as usize]
                }
            })
            .collect();
        let l = weighted_index(&weights, &mut rng) as u64;
        witnesses.push(sample_matrix(l, k, &mut rng));
        budget -= l + 1;
    }
    ProblemInstance::new(witnesses, target)
}

/// Counts solution pairs `(X, Y)` of `X ⊗ Y = C` until the count exceeds
/// `threshold`; returns true (a "hard" target) in that case.
fn target_exceeds_threshold(c: &TropicalMatrix, threshold: &BigUint) -> bool {
    let k = c.dim();
    if k == 1 {
        // pairs (x, y) with x · y = c: the divisor count, by trial division
        let value = c.entry(0, 0);
        let mut count = BigUint::zero();
        if let Some(v) = value.to_u64() {
            let mut d = 1u64;
            while d <= v / d {
                if v % d == 0 {
                    count += if d * d == v { 1u32 } else { 2u32 };
                    if count > *threshold {
                        return true;
                    }
                }
                d += 1;
            }
        } else {
            let root = value.sqrt();
            let mut d = BigUint::one();
            while d <= root {
                if (value % &d).is_zero() {
                    count += if &d * &d == *value { 1u32 } else { 2u32 };
                    if count > *threshold {
                        return true;
                    }
                }
                d += 1u32;
            }
        }
        return false;
    }

    // general case: X ≤ C entrywise is necessary (products never shrink),
    // so scan all candidate X and count solutions Y of X ⊗ Y = C
    let mut count = BigUint::zero();
    let mut x_entries: Vec<BigUint> = vec![BigUint::one(); k * k];
    loop {
        let x = TropicalMatrix::new(k, SemiringTag::MaxTimes, x_entries.clone())
            .expect("entries are ≥ 1");
        let remaining = (threshold - &count) + 1u32;
        let cap = remaining.to_usize().unwrap_or(usize::MAX);
        let found = enumerate_solutions(&x, c, Some(cap)).expect("same dim and tag");
        count += BigUint::from(found.len());
        if count > *threshold {
            return true;
        }
        // odometer over X ≤ C
        let mut pos = k * k;
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            if x_entries[pos] < *c.entry(pos / k, pos % k) {
                x_entries[pos] += 1u32;
                break;
            }
            x_entries[pos] = BigUint::one();
        }
    }
}

/// Samples `samples` instances uniformly from the size-`m` stratum and
/// reports how many have a target with more than `m^threshold_exponent`
/// solution pairs to `X ⊗ Y = C`. Deterministic per seed.
pub fn estimate_hard_density(
    m: u64,
    k: usize,
    samples: u64,
    threshold_exponent: u32,
    seed: u64,
) -> Result<DensityEstimate, Error> {
    if count_instances(m, k).value.is_zero() {
        return Err(Error::EmptyStratum { m, dim: k });
    }
    let threshold = BigUint::from(m).pow(threshold_exponent);
    let mut seeder = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let inst = sample_instance(m, k, seeder.gen::<u64>())?;
        if target_exceeds_threshold(inst.target(), &threshold) {
            hits += 1;
        }
    }
    Ok(DensityEstimate { m, samples, hits, threshold_exponent })
}
