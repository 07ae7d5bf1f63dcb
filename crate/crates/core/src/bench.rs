//! Wall-clock comparison of the naive and bijective generators.

use std::hint::black_box;
use std::time::{Duration, Instant};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::generate::{generate_bijective, generate_naive, naive_overhead_ratio};
use crate::guard::Guard;

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub n: usize,
    pub repetitions: usize,
    pub naive_candidates: u64,
    pub naive_survivors: u64,
    pub bijective_count: u64,
    /// Fastest of the repetitions.
    pub naive_time: Duration,
    pub bijective_time: Duration,
    /// `(n²)! / (n!)^{2n}`, exact.
    pub ratio: BigRational,
}

impl BenchReport {
    pub fn bijective_faster(&self) -> bool {
        self.bijective_time < self.naive_time
    }
}

/// Runs both generators to exhaustion `repetitions` times each, alternating
/// between them, and keeps the fastest run of each.
pub fn compare_generators(n: usize, repetitions: usize, guard: Guard) -> Result<BenchReport> {
    if repetitions == 0 {
        return Err(Error::InvalidArgument(
            "repetitions must be at least 1".into(),
        ));
    }
    // validate the size before timing anything
    generate_naive(n, guard)?;

    let mut naive_time = Duration::MAX;
    let mut bijective_time = Duration::MAX;
    let (mut candidates, mut survivors, mut bijective_count) = (0, 0, 0);
    for _ in 0..repetitions {
        let start = Instant::now();
        let mut naive = generate_naive(n, guard)?;
        for a in naive.by_ref() {
            black_box(a);
        }
        naive_time = naive_time.min(start.elapsed());
        candidates = naive.candidates_examined();
        survivors = naive.survivors();

        let start = Instant::now();
        let mut count = 0u64;
        for a in generate_bijective(n) {
            black_box(a);
            count += 1;
        }
        bijective_time = bijective_time.min(start.elapsed());
        bijective_count = count;
    }
    Ok(BenchReport {
        n,
        repetitions,
        naive_candidates: candidates,
        naive_survivors: survivors,
        bijective_count,
        naive_time,
        bijective_time,
        ratio: naive_overhead_ratio(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_reports_counts() {
        let r = compare_generators(2, 2, Guard::Enforce).unwrap();
        assert_eq!(r.naive_candidates, 24);
        assert_eq!(r.naive_survivors, 16);
        assert_eq!(r.bijective_count, 16);
        assert_eq!(r.ratio, BigRational::new(3.into(), 2.into()));
        assert!(compare_generators(2, 0, Guard::Enforce).is_err());
        assert!(compare_generators(4, 1, Guard::Enforce).is_err());
    }
}
