//! Command implementations. Each returns the process exit code (0 Yes /
//! valid, 1 No / invalid, 2 Unknown) or a [`CliError`] carrying 64/65.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::ValueEnum;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tropical_knapsack::matrix::{mat_mul, mat_pow};
use tropical_knapsack::reductions::{reduce_scalar_to_matrix, reduce_x3c_to_kp_product};
use tropical_knapsack::solver::{
    brute_force_kp, brute_force_ssp, solve_kp_dp, solve_kp_generic, solve_ssp_dp,
    solve_ssp_generic, verify_certificate,
};
use tropical_knapsack::{
    census, Certificate, Error, Mode, ProblemInstance, SemiringTag, SolveOutcome, TropicalMatrix,
    Verdict,
};

use crate::format::{self, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Subset sum: each witness used at most once.
    Ssp,
    /// Knapsack: each witness used any number of times.
    Kp,
}

impl ModeArg {
    fn mode(self) -> Mode {
        match self {
            ModeArg::Ssp => Mode::SubsetSum,
            ModeArg::Kp => Mode::Knapsack,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    /// Exhaustive exponent scan (exponential; small instances only).
    Brute,
    /// Memoized pseudo-polynomial search.
    Dp,
    /// Memo-capped search that may answer `unknown`.
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TagArg {
    /// Non-negative integers under (max, +).
    #[value(name = "max_plus")]
    MaxPlus,
    /// Positive integers under (max, ×).
    #[value(name = "max_times")]
    MaxTimes,
}

impl TagArg {
    fn tag(self) -> SemiringTag {
        match self {
            TagArg::MaxPlus => SemiringTag::MaxPlus,
            TagArg::MaxTimes => SemiringTag::MaxTimes,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// Labelled lines for reading at a terminal (includes wall time).
    Human,
    /// JSON for downstream tooling (no wall time; stable across runs).
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// Random instances, brute force vs. memoized solver.
    Oracle,
    /// Memo growth on a fixed family with doubling targets.
    Scaling,
}

fn verdict_name(verdict: &Verdict) -> &'static str {
    match verdict {
        Verdict::Yes(_) => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

fn verdict_code(verdict: &Verdict) -> i32 {
    match verdict {
        Verdict::Yes(_) => 0,
        Verdict::No => 1,
        Verdict::Unknown => 2,
    }
}

fn cert_line(cert: &Certificate) -> String {
    let parts: Vec<String> = cert.exponents().iter().map(|e| e.to_str_radix(10)).collect();
    parts.join(" ")
}

#[derive(Serialize)]
struct SolveReport {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Vec<String>>,
    memo_entries: usize,
    recursive_calls: u64,
}

pub fn cmd_solve(
    mode: ModeArg,
    engine: EngineArg,
    cap_exponent: Option<u32>,
    output_format: FormatArg,
    instance_path: &Path,
) -> Result<i32, CliError> {
    if cap_exponent.is_some() && engine != EngineArg::Generic {
        return Err(CliError::usage(
            "--cap-exponent only applies to --engine generic",
        ));
    }
    let instance = format::read_instance(instance_path)?;
    let started = Instant::now();
    let outcome = run_engine(&instance, mode.mode(), engine, cap_exponent);
    let wall = started.elapsed();

    match output_format {
        FormatArg::Human => {
            println!("verdict: {}", verdict_name(&outcome.verdict));
            if let Verdict::Yes(cert) = &outcome.verdict {
                println!("certificate: {}", cert_line(cert));
            }
            println!("memo entries: {}", outcome.stats.memo_entries);
            println!("recursive calls: {}", outcome.stats.recursive_calls);
            println!("wall time: {:.6}s", wall.as_secs_f64());
        }
        FormatArg::Machine => {
            let report = SolveReport {
                verdict: verdict_name(&outcome.verdict),
                certificate: match &outcome.verdict {
                    Verdict::Yes(cert) => Some(
                        cert.exponents().iter().map(|e| e.to_str_radix(10)).collect(),
                    ),
                    _ => None,
                },
                memo_entries: outcome.stats.memo_entries,
                recursive_calls: outcome.stats.recursive_calls,
            };
            println!("{}", serde_json::to_string(&report).expect("plain data serializes"));
        }
    }
    Ok(verdict_code(&outcome.verdict))
}

fn run_engine(
    instance: &ProblemInstance,
    mode: Mode,
    engine: EngineArg,
    cap_exponent: Option<u32>,
) -> SolveOutcome {
    match (engine, mode) {
        (EngineArg::Brute, Mode::SubsetSum) => brute_force_ssp(instance),
        (EngineArg::Brute, Mode::Knapsack) => brute_force_kp(instance),
        (EngineArg::Dp, Mode::SubsetSum) => solve_ssp_dp(instance),
        (EngineArg::Dp, Mode::Knapsack) => solve_kp_dp(instance),
        (EngineArg::Generic, Mode::SubsetSum) => solve_ssp_generic(instance, cap_exponent),
        (EngineArg::Generic, Mode::Knapsack) => solve_kp_generic(instance, cap_exponent),
    }
}

pub fn cmd_verify(
    mode: ModeArg,
    certificate_path: &Path,
    instance_path: &Path,
) -> Result<i32, CliError> {
    let instance = format::read_instance(instance_path)?;
    let cert = format::read_certificate(certificate_path)?;
    match verify_certificate(&instance, &cert, mode.mode()) {
        Ok(true) => {
            println!("valid");
            Ok(0)
        }
        Ok(false) => {
            println!("invalid");
            Ok(1)
        }
        // Right length, wrong shape for the mode: a rejected certificate,
        // not a malformed file.
        Err(Error::NonBinaryCertificate) => {
            println!("invalid: {}", Error::NonBinaryCertificate);
            Ok(1)
        }
        Err(e) => Err(CliError::data(format!(
            "{}: {e}",
            certificate_path.display()
        ))),
    }
}

pub fn cmd_reduce(
    scalar: Option<&Path>,
    k: Option<usize>,
    tag: Option<TagArg>,
    x3c: Option<&Path>,
    output: Option<&Path>,
) -> Result<i32, CliError> {
    let content = match (scalar, x3c) {
        (Some(path), None) => {
            let k = k.expect("clap: --scalar requires --k");
            let tag = tag.expect("clap: --scalar requires --tag");
            if k == 0 {
                return Err(CliError::usage("--k must be at least 1"));
            }
            let file = format::read_scalar(path)?;
            let instance = reduce_scalar_to_matrix(&file.items, &file.target, k, tag.tag())
                .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
            format::instance_to_json(&instance)
        }
        (None, Some(path)) => {
            let x3c = format::read_x3c(path)?;
            let (items, target) = reduce_x3c_to_kp_product(&x3c);
            format::scalar_to_text(&items, &target)
        }
        // clap enforces exactly one of --scalar / --x3c.
        _ => unreachable!("clap: --scalar and --x3c are exclusive and one is required"),
    };
    format::write_output(output, &content)?;
    Ok(0)
}

pub fn cmd_sample(m: u64, k: usize, seed: u64, output: Option<&Path>) -> Result<i32, CliError> {
    if k == 0 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    let instance =
        census::sample_instance(m, k, seed).map_err(|e| CliError::data(e.to_string()))?;
    format::write_output(output, &format::instance_to_json(&instance))?;
    Ok(0)
}

pub fn cmd_count(k: usize, l: Option<u64>, m: Option<u64>) -> Result<i32, CliError> {
    if k == 0 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    let count = match (l, m) {
        (Some(l), None) => census::count_matrices_closed(l, k),
        (None, Some(m)) => census::count_instances(m, k),
        // clap enforces exactly one of --l / --m.
        _ => unreachable!("clap: --l and --m are exclusive and one is required"),
    };
    println!("{}", count.value);
    Ok(0)
}

// ---------------------------------------------------------------------------
// bench

/// Runs `job(0..jobs)` on `workers` threads and returns the results in job
/// order, so aggregation does not depend on scheduling.
fn run_pool<T, F>(jobs: usize, workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..jobs).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = workers.clamp(1, jobs.max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs {
                    break;
                }
                let result = job(i);
                slots.lock().expect("pool poisoned")[i] = Some(result);
            });
        }
    });
    slots
        .into_inner()
        .expect("pool poisoned")
        .into_iter()
        .map(|slot| slot.expect("every job ran"))
        .collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize, tag: SemiringTag, max: u64) -> TropicalMatrix {
    let lo = match tag {
        SemiringTag::MaxPlus => 0u64,
        SemiringTag::MaxTimes => 1,
    };
    let entries = (0..dim * dim).map(|_| BigUint::from(rng.gen_range(lo..=max))).collect();
    TropicalMatrix::new(dim, tag, entries).expect("entries lie in the domain")
}

/// A random instance whose target is an actual product of the witnesses, so
/// benchmark corpora exercise the Yes side at every dimension.
fn planted_instance(
    rng: &mut ChaCha8Rng,
    dim: usize,
    tag: SemiringTag,
    mode: Mode,
) -> ProblemInstance {
    let n = rng.gen_range(1..=4usize);
    let witnesses: Vec<TropicalMatrix> =
        (0..n).map(|_| random_matrix(rng, dim, tag, 2)).collect();
    let per_item = match mode {
        Mode::SubsetSum => 1u64,
        Mode::Knapsack => 2,
    };
    let total_cap = match tag {
        SemiringTag::MaxPlus => 4u64,
        SemiringTag::MaxTimes => 3,
    };
    let exponents = loop {
        let draw: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=per_item)).collect();
        let total: u64 = draw.iter().sum();
        if total >= 1 && total <= total_cap {
            break draw;
        }
    };
    let mut product: Option<TropicalMatrix> = None;
    for (w, &e) in witnesses.iter().zip(&exponents) {
        if e == 0 {
            continue;
        }
        let p = mat_pow(w, &BigUint::from(e)).expect("exponent is positive");
        product = Some(match product {
            None => p,
            Some(acc) => mat_mul(&acc, &p).expect("same dimension and tag"),
        });
    }
    let target = product.expect("at least one exponent is positive");
    ProblemInstance::new(witnesses, target).expect("witnesses and target share shape")
}

fn bench_instance(seed: u64, index: u64, tag: SemiringTag, mode: Mode) -> ProblemInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
    let dim = 1 + (index % 3) as usize;
    if index % 2 == 1 {
        planted_instance(&mut rng, dim, tag, mode)
    } else {
        let n = rng.gen_range(0..=4usize);
        let witnesses = (0..n).map(|_| random_matrix(&mut rng, dim, tag, 8)).collect();
        let target = random_matrix(&mut rng, dim, tag, 8);
        ProblemInstance::new(witnesses, target).expect("witnesses and target share shape")
    }
}

#[derive(Serialize)]
struct OracleCell {
    semiring: &'static str,
    mode: &'static str,
    instances: u64,
    yes: u64,
    no: u64,
    disagreements: u64,
    certificate_failures: u64,
    dp_memo_entries_max: usize,
    dp_recursive_calls: u64,
    brute_recursive_calls: u64,
}

#[derive(Serialize)]
struct OracleSummary {
    suite: &'static str,
    seed: u64,
    cells: Vec<OracleCell>,
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::SubsetSum => "ssp",
        Mode::Knapsack => "kp",
    }
}

fn bench_oracle(instances: u64, seed: u64, workers: usize) -> OracleSummary {
    let cells = [
        (SemiringTag::MaxPlus, Mode::SubsetSum),
        (SemiringTag::MaxTimes, Mode::SubsetSum),
        (SemiringTag::MaxPlus, Mode::Knapsack),
        (SemiringTag::MaxTimes, Mode::Knapsack),
    ];
    let mut summaries = Vec::with_capacity(cells.len());
    for (cell_index, &(tag, mode)) in cells.iter().enumerate() {
        let cell_seed = seed.wrapping_add(1 + cell_index as u64);
        let runs = run_pool(instances as usize, workers, |i| {
            let instance = bench_instance(cell_seed, i as u64, tag, mode);
            let reference = match mode {
                Mode::SubsetSum => brute_force_ssp(&instance),
                Mode::Knapsack => brute_force_kp(&instance),
            };
            let fast = match mode {
                Mode::SubsetSum => solve_ssp_dp(&instance),
                Mode::Knapsack => solve_kp_dp(&instance),
            };
            let agree = matches!(&reference.verdict, Verdict::Yes(_))
                == matches!(&fast.verdict, Verdict::Yes(_));
            let cert_ok = match &fast.verdict {
                Verdict::Yes(cert) => {
                    verify_certificate(&instance, cert, mode).unwrap_or(false)
                }
                _ => true,
            };
            (reference, fast, agree, cert_ok)
        });
        let mut cell = OracleCell {
            semiring: format::tag_name(tag),
            mode: mode_name(mode),
            instances,
            yes: 0,
            no: 0,
            disagreements: 0,
            certificate_failures: 0,
            dp_memo_entries_max: 0,
            dp_recursive_calls: 0,
            brute_recursive_calls: 0,
        };
        for (reference, fast, agree, cert_ok) in runs {
            match &fast.verdict {
                Verdict::Yes(_) => cell.yes += 1,
                _ => cell.no += 1,
            }
            if !agree {
                cell.disagreements += 1;
            }
            if !cert_ok {
                cell.certificate_failures += 1;
            }
            cell.dp_memo_entries_max = cell.dp_memo_entries_max.max(fast.stats.memo_entries);
            cell.dp_recursive_calls += fast.stats.recursive_calls;
            cell.brute_recursive_calls += reference.stats.recursive_calls;
        }
        summaries.push(cell);
    }
    OracleSummary { suite: "oracle", seed, cells: summaries }
}

#[derive(Serialize)]
struct ScalingPoint {
    target: u64,
    memo_entries: usize,
    recursive_calls: u64,
}

#[derive(Serialize)]
struct ScalingSummary {
    suite: &'static str,
    points: Vec<ScalingPoint>,
    fitted_exponent: f64,
}

/// Knapsack over max-plus with witnesses `[[1]]` and `[[2]]` against target
/// `[[M]]`: every even value in `2..=M` is reachable, so memo growth tracks
/// the target magnitude linearly and the fitted log-log slope should sit
/// near 1.
fn bench_scaling(workers: usize) -> ScalingSummary {
    let targets: Vec<u64> = (3..=8).map(|p| 1u64 << p).collect();
    let points = run_pool(targets.len(), workers, |i| {
        let m = targets[i];
        let witnesses = vec![
            TropicalMatrix::new(1, SemiringTag::MaxPlus, vec![BigUint::from(1u32)])
                .expect("entry in domain"),
            TropicalMatrix::new(1, SemiringTag::MaxPlus, vec![BigUint::from(2u32)])
                .expect("entry in domain"),
        ];
        let target = TropicalMatrix::new(1, SemiringTag::MaxPlus, vec![BigUint::from(m)])
            .expect("entry in domain");
        let instance =
            ProblemInstance::new(witnesses, target).expect("witnesses and target share shape");
        let outcome = solve_kp_dp(&instance);
        ScalingPoint {
            target: m,
            memo_entries: outcome.stats.memo_entries,
            recursive_calls: outcome.stats.recursive_calls,
        }
    });
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|p| ((p.target as f64).ln(), (p.memo_entries.max(1) as f64).ln()))
        .collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = logs.iter().map(|(_, y)| y).sum::<f64>() / n;
    let slope = logs.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum::<f64>()
        / logs.iter().map(|(x, _)| (x - mean_x) * (x - mean_x)).sum::<f64>();
    ScalingSummary { suite: "scaling", points, fitted_exponent: slope }
}

pub fn cmd_bench(
    suite: SuiteArg,
    instances: u64,
    seed: u64,
    workers: usize,
    output_format: FormatArg,
) -> Result<i32, CliError> {
    let started = Instant::now();
    let (json, exit) = match suite {
        SuiteArg::Oracle => {
            let summary = bench_oracle(instances, seed, workers);
            let bad = summary
                .cells
                .iter()
                .any(|c| c.disagreements > 0 || c.certificate_failures > 0);
            (
                serde_json::to_string_pretty(&summary).expect("plain data serializes"),
                if bad { 1 } else { 0 },
            )
        }
        SuiteArg::Scaling => {
            let summary = bench_scaling(workers);
            (serde_json::to_string_pretty(&summary).expect("plain data serializes"), 0)
        }
    };
    let wall = started.elapsed();
    println!("{json}");
    if output_format == FormatArg::Human {
        println!("wall time: {:.6}s", wall.as_secs_f64());
    }
    Ok(exit)
}
