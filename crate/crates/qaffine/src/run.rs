use qaffine_core::polyrep::{check_window, relation_checks, verify_unit, verify_units, Relation, Report};
use qaffine_core::Result;
use rayon::prelude::*;

/// Worker count from `QA_THREADS`, or all cores when unset or invalid.
pub fn thread_count() -> usize {
    std::env::var("QA_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&k| k > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|k| k.get()).unwrap_or(1))
}

/// Same report as `verify_relation`, with the weight/sample units spread over
/// a pool of `threads` workers. Unit order is kept, so the output is deterministic.
pub fn verify_parallel(rel: Relation, n: usize, d: usize, window: i64, samples: usize, seed: u64, threads: usize) -> Result<Report> {
    check_window(window)?;
    let checks = relation_checks(rel, n, window);
    let units = verify_units(n, d, samples, seed);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool");
    let results: Vec<Result<_>> = pool.install(|| units.par_iter().map(|(v, s, f)| verify_unit(&checks, window, v, *s, f)).collect());
    let mut report = Report { relation: rel, n, d, window, samples, seed, checks: 0, failures: Vec::new() };
    for r in results {
        let (count, fails) = r?;
        report.checks += count;
        report.failures.extend(fails);
    }
    Ok(report)
}
