//! Multi-threaded equal-split search.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;

use charpoly_forge_core::boundary::{EqualSplitOutcome, EqualSplitProblem};
use charpoly_forge_core::Result;

/// Environment variable overriding the candidate budget.
pub const BUDGET_ENV: &str = "CHARPOLY_FORGE_BUDGET";

/// Splits the candidate range into contiguous chunks, one per thread, and
/// reports the smallest witness index, so the answer matches the sequential
/// search. Threads stop early once a smaller witness is known.
pub fn parallel_search(
    problem: &EqualSplitProblem,
    budget: u64,
    threads: NonZeroUsize,
) -> Result<EqualSplitOutcome> {
    let total = problem.check_budget(budget)?;
    let threads = (threads.get() as u64).min(total.max(1));
    let chunk = total.div_ceil(threads);
    let best = AtomicU64::new(u64::MAX);
    let results: Vec<Result<()>> = thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let start = t * chunk;
                let end = (start + chunk).min(total);
                let best = &best;
                s.spawn(move || -> Result<()> {
                    for idx in start..end {
                        if idx >= best.load(Ordering::Relaxed) {
                            break;
                        }
                        if problem.is_witness(&problem.candidate(idx))? {
                            best.fetch_min(idx, Ordering::Relaxed);
                            break;
                        }
                    }
                    Ok(())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search thread panicked"))
            .collect()
    });
    for r in results {
        r?;
    }
    Ok(match best.into_inner() {
        u64::MAX => EqualSplitOutcome::Exhausted { candidates: total },
        index => EqualSplitOutcome::Witness {
            index,
            x: problem.candidate(index),
        },
    })
}

/// Reads [`BUDGET_ENV`], which must be a positive integer when set.
pub fn budget_from_env() -> std::result::Result<Option<u64>, String> {
    match std::env::var(BUDGET_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("{BUDGET_ENV}: {e}")),
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(0) | Err(_) => Err(format!(
                "{BUDGET_ENV} must be a positive integer, got {s:?}"
            )),
            Ok(v) => Ok(Some(v)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use charpoly_forge_core::boundary::search_equal_split;
    use charpoly_forge_core::{FieldSpec, Polynomial};

    #[test]
    fn agrees_with_sequential_search() {
        let f3 = FieldSpec::prime_field(3).unwrap();
        let p22 = Polynomial::from_i64s(f3, &[1, 0, 1]);
        for c in 1..3 {
            for b in 0..3 {
                for a in 0..3 {
                    let q = Polynomial::from_i64s(f3, &[c, a, b, 0, 1]);
                    let problem = EqualSplitProblem::from_block(&p22, &q).unwrap();
                    let seq = search_equal_split(&problem, 1 << 20).unwrap();
                    for t in [1, 2, 3, 7] {
                        let par = parallel_search(&problem, 1 << 20, NonZeroUsize::new(t).unwrap())
                            .unwrap();
                        assert_eq!(par, seq);
                    }
                }
            }
        }
    }
}
