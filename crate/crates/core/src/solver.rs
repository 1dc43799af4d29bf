//! Decision procedures for subset sum and knapsack over the matrix
//! semigroups.
//!
//! Four engines share this module. The brute-force scanners settle tiny
//! instances by exhausting exponent vectors and serve as oracles for the
//! others. The memoized solvers recurse on pairs (suffix index, remaining
//! target): a witness either matches the target outright, is skipped, or is
//! peeled off by solving the one-sided system `W_i ⊗ X = Y` and recursing
//! on each solution `X`; knapsack adds a reuse branch that keeps the index
//! while shrinking the target, so a witness can contribute several factors.
//! The memo-capped variants run the same recursion but give up with
//! `Unknown` once the table outgrows a budget tied to the instance size,
//! trading completeness on rare targets for a polynomial footprint.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::instance::{size_of_instance, Certificate, Mode, ProblemInstance};
use crate::matrix::{mat_mul, TropicalMatrix};
use crate::semiring::SizeMode;
use crate::systems::enumerate_solutions;

/// Answer of a solve, with the certificate when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(Certificate),
    No,
    /// Only the memo-capped engines produce this.
    Unknown,
}

/// Work counters reported alongside every verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    /// Distinct memo keys at the end of the run (0 for brute force).
    pub memo_entries: usize,
    /// Recursive search nodes visited.
    pub recursive_calls: u64,
}

/// Verdict plus statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub verdict: Verdict,
    pub stats: SolveStats,
}

/// Checks a candidate exponent vector against an instance.
///
/// Accepts exactly when the selected product equals the target; the all-zero
/// vector is never accepted. Subset-sum mode additionally requires every
/// exponent to be 0 or 1 (rejected as an error, not a `false`).
pub fn verify_certificate(
    instance: &ProblemInstance,
    cert: &Certificate,
    mode: Mode,
) -> Result<bool, Error> {
    if cert.exponents().len() != instance.len() {
        return Err(Error::CertificateLength {
            expected: instance.len(),
            got: cert.exponents().len(),
        });
    }
    if mode == Mode::SubsetSum && !cert.is_binary() {
        return Err(Error::NonBinaryCertificate);
    }
    if !cert.is_nonzero() {
        return Ok(false);
    }
    Ok(instance.evaluate(cert)? == *instance.target())
}

/// Whether repeated powers of `w` stay put: the all-zeros matrix under
/// max-plus, the all-ones matrix under max-times.
fn is_idempotent_min(w: &TropicalMatrix) -> bool {
    let min = w.tag().domain_min();
    w.entries().iter().all(|e| *e == min)
}

/// Shared exhaustive scan over exponent vectors in lexicographic order.
///
/// `bounds[i]` caps the exponent of witness `i`. Partial products are pruned
/// as soon as they exceed the target anywhere: appending factors or raising
/// exponents only grows a product entrywise, so nothing below the target is
/// ever lost.
fn brute_force(instance: &ProblemInstance, bounds: &[BigUint]) -> SolveOutcome {
    struct Scan<'a> {
        instance: &'a ProblemInstance,
        bounds: &'a [BigUint],
        exponents: Vec<BigUint>,
        calls: u64,
    }

    impl Scan<'_> {
        fn rec(&mut self, i: usize, prefix: Option<TropicalMatrix>) -> Option<Certificate> {
            self.calls += 1;
            if i == self.instance.len() {
                return match prefix {
                    Some(p) if p == *self.instance.target() => {
                        Some(Certificate(self.exponents.clone()))
                    }
                    _ => None,
                };
            }
            let w = self.instance.witness(i);
            let mut e = BigUint::zero();
            let mut cur = prefix;
            loop {
                if !e.is_zero() {
                    cur = Some(match cur {
                        None => w.clone(),
                        Some(p) => mat_mul(&p, w).expect("instance matrices are compatible"),
                    });
                    if let Some(p) = &cur {
                        if !p.leq(self.instance.target()).expect("compatible") {
                            return None;
                        }
                    }
                }
                self.exponents.push(e.clone());
                let found = self.rec(i + 1, cur.clone());
                self.exponents.pop();
                if found.is_some() {
                    return found;
                }
                if e == self.bounds[i] {
                    return None;
                }
                e += 1u32;
            }
        }
    }

    let mut scan = Scan { instance, bounds, exponents: Vec::new(), calls: 0 };
    let found = scan.rec(0, None);
    SolveOutcome {
        verdict: match found {
            Some(cert) => Verdict::Yes(cert),
            None => Verdict::No,
        },
        stats: SolveStats { memo_entries: 0, recursive_calls: scan.calls },
    }
}

/// Exhaustive subset-sum scan over `{0,1}ⁿ \ {0ⁿ}`; returns the
/// lexicographically smallest certificate when one exists.
pub fn brute_force_ssp(instance: &ProblemInstance) -> SolveOutcome {
    let bounds = vec![BigUint::one(); instance.len()];
    brute_force(instance, &bounds)
}

/// Exhaustive knapsack scan with per-witness exponent bounds: 1 for
/// witnesses whose powers never move (all-zeros under max-plus, all-ones
/// under max-times), otherwise twice the largest target entry — beyond
/// that, some power already exceeds the target. Returns the
/// lexicographically smallest certificate when one exists.
pub fn brute_force_kp(instance: &ProblemInstance) -> SolveOutcome {
    let max_target =
        instance.target().entries().iter().max().cloned().unwrap_or_else(BigUint::zero);
    let general_bound = BigUint::from(2u32) * max_target;
    let bounds: Vec<BigUint> = instance
        .witnesses()
        .iter()
        .map(|w| if is_idempotent_min(w) { BigUint::one() } else { general_bound.clone() })
        .collect();
    brute_force(instance, &bounds)
}

/// The branch that proved a memoized target reachable, for certificate
/// replay.
#[derive(Debug, Clone)]
enum Branch {
    /// `W_i` equals the target outright.
    Match,
    /// Witness `i` unused; continue at `i + 1` with the same target.
    Skip,
    /// Peel `W_i` once: continue at `i + 1` with target `X`.
    Descend(TropicalMatrix),
    /// Peel `W_i` once and allow it again: continue at `i` with target `X`.
    Reuse(TropicalMatrix),
}

type MemoKey = (usize, Vec<BigUint>);

struct Engine<'a> {
    instance: &'a ProblemInstance,
    /// Knapsack adds the reuse branch; subset sum does not.
    reuse: bool,
    /// `None` value = target unreachable from this key.
    memo: HashMap<MemoKey, Option<Branch>>,
    calls: u64,
    /// Maximum memo keys before the solve aborts with `Unknown`.
    cap: Option<BigUint>,
    aborted: bool,
}

impl Engine<'_> {
    fn record(&mut self, key: MemoKey, value: Option<Branch>) {
        self.memo.insert(key, value);
        if let Some(cap) = &self.cap {
            if BigUint::from(self.memo.len()) > *cap {
                self.aborted = true;
            }
        }
    }

    /// Can witnesses `i..n` (each used per mode) multiply to exactly `y`?
    ///
    /// Branch order is fixed — match, skip, then each solution `X` of
    /// `W_i ⊗ X = Y` in lexicographic order (descend before reuse) — so
    /// verdicts and certificates are deterministic. Every enumerated `X`
    /// satisfies `X ≤ Y` entrywise (multiplying by `W_i` never decreases
    /// an entry), and the reuse branch demands `X ≠ Y`, so reuse chains
    /// strictly shrink the target and the recursion terminates.
    fn solve(&mut self, i: usize, y: &TropicalMatrix) -> bool {
        self.calls += 1;
        if self.aborted {
            return false;
        }
        let key: MemoKey = (i, y.entries().to_vec());
        if let Some(known) = self.memo.get(&key) {
            return known.is_some();
        }
        if i == self.instance.len() {
            // Constant leaf: no witnesses left. Not worth a memo slot.
            return false;
        }
        if self.instance.witness(i) == y {
            self.record(key, Some(Branch::Match));
            return true;
        }
        if self.solve(i + 1, y) {
            self.record(key, Some(Branch::Skip));
            return true;
        }
        if self.aborted {
            return false;
        }
        let peels = enumerate_solutions(self.instance.witness(i), y, None)
            .expect("instance matrices share dim and tag");
        for x in peels {
            if self.solve(i + 1, &x) {
                self.record(key, Some(Branch::Descend(x)));
                return true;
            }
            if self.aborted {
                return false;
            }
            if self.reuse && x != *y {
                if self.solve(i, &x) {
                    self.record(key, Some(Branch::Reuse(x)));
                    return true;
                }
                if self.aborted {
                    return false;
                }
            }
        }
        self.record(key, None);
        false
    }

    /// Replays recorded branches from the root into an exponent vector.
    fn reconstruct(&self) -> Certificate {
        let n = self.instance.len();
        let mut exponents = vec![BigUint::zero(); n];
        let mut i = 0usize;
        let mut y = self.instance.target().clone();
        loop {
            let branch = self
                .memo
                .get(&(i, y.entries().to_vec()))
                .and_then(|b| b.as_ref())
                .expect("reachable keys were memoized as such");
            match branch {
                Branch::Match => {
                    exponents[i] += 1u32;
                    return Certificate(exponents);
                }
                Branch::Skip => i += 1,
                Branch::Descend(x) => {
                    exponents[i] += 1u32;
                    y = x.clone();
                    i += 1;
                }
                Branch::Reuse(x) => {
                    exponents[i] += 1u32;
                    y = x.clone();
                }
            }
        }
    }

    fn run(mut self) -> SolveOutcome {
        let target = self.instance.target().clone();
        let reachable = self.solve(0, &target);
        let verdict = if self.aborted {
            Verdict::Unknown
        } else if reachable {
            Verdict::Yes(self.reconstruct())
        } else {
            Verdict::No
        };
        SolveOutcome {
            verdict,
            stats: SolveStats { memo_entries: self.memo.len(), recursive_calls: self.calls },
        }
    }
}

fn run_engine(instance: &ProblemInstance, reuse: bool, cap: Option<BigUint>) -> SolveOutcome {
    Engine { instance, reuse, memo: HashMap::new(), calls: 0, cap, aborted: false }.run()
}

/// Memoized subset-sum decision. Never returns `Unknown`; the memo key
/// count stays within `(n+1)·(M+1)^{k²}` where `M` is the largest target
/// entry, since every intermediate target is entrywise at most the target.
pub fn solve_ssp_dp(instance: &ProblemInstance) -> SolveOutcome {
    run_engine(instance, false, None)
}

/// Memoized knapsack decision; subset sum plus the reuse branch.
pub fn solve_kp_dp(instance: &ProblemInstance) -> SolveOutcome {
    run_engine(instance, true, None)
}

fn generic_cap(instance: &ProblemInstance, cap_exponent: Option<u32>) -> BigUint {
    let exponent =
        cap_exponent.unwrap_or_else(|| (instance.dim() * instance.dim()) as u32 + 3);
    size_of_instance(instance, SizeMode::Binary).pow(exponent)
}

/// Subset sum with a memo budget of `m^cap_exponent` keys, where `m` is the
/// binary size of the instance (default exponent `k² + 3`). Exceeding the
/// budget aborts the whole solve with `Unknown`; otherwise the verdict and
/// certificate equal the uncapped solver's.
pub fn solve_ssp_generic(instance: &ProblemInstance, cap_exponent: Option<u32>) -> SolveOutcome {
    run_engine(instance, false, Some(generic_cap(instance, cap_exponent)))
}

/// Knapsack with the same memo budget policy as [`solve_ssp_generic`].
pub fn solve_kp_generic(instance: &ProblemInstance, cap_exponent: Option<u32>) -> SolveOutcome {
    run_engine(instance, true, Some(generic_cap(instance, cap_exponent)))
}
