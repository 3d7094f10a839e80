//! Two-sided Fisher randomization (sign-flip permutation) test on paired
//! per-query scores.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Permutations back-derived from the reported counts: 100000 · p equals
/// N⁻ + N⁺ exactly for every reported row.
pub const DEFAULT_PERMUTATIONS: u64 = 100_000;

/// Largest query count enumerated exhaustively.
pub const MAX_EXHAUSTIVE: usize = 20;

/// Permutations drawn from one random stream.
const CHUNK: u64 = 4096;

/// Slack for comparing permuted means against the observed one.
const EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PermutationMode {
    Sampled,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomizationReport {
    /// mean(a) − mean(b)
    pub observed_diff: f64,
    pub n_minus: u64,
    pub n_plus: u64,
    pub permutations: u64,
    pub p_two_sided: f64,
    pub rng_seed: u64,
    pub mode: PermutationMode,
}

impl RandomizationReport {
    /// Re-check the count bounds and `p = min(1, (N⁻ + N⁺) / S)`.
    pub fn verify(&self) -> Result<()> {
        if self.permutations == 0 || self.n_minus > self.permutations || self.n_plus > self.permutations {
            return Err(Error::InvalidArgument("permutation counts out of range".into()));
        }
        let expected = p_value(self.n_minus, self.n_plus, self.permutations);
        if (expected - self.p_two_sided).abs() > 1e-15 {
            return Err(Error::InvalidArgument(format!(
                "p = {} does not match (N⁻ + N⁺)/S = {expected}",
                self.p_two_sided
            )));
        }
        Ok(())
    }
}

/// `min(1, (N⁻ + N⁺) / S)`
pub fn p_value(n_minus: u64, n_plus: u64, permutations: u64) -> f64 {
    assert!(permutations > 0);
    ((n_minus + n_plus) as f64 / permutations as f64).min(1.0)
}

#[derive(Debug, Clone, Copy, Default)]
struct Counts {
    minus: u64,
    plus: u64,
}

impl Counts {
    fn add(self, other: Counts) -> Counts {
        Counts {
            minus: self.minus + other.minus,
            plus: self.plus + other.plus,
        }
    }
}

/// Count the permuted mean as at least as extreme as `bound` on either side.
#[inline]
fn classify(diffs: &[f64], bound: f64, flipped: impl Fn(usize) -> bool) -> Counts {
    let mut sum = 0.0;
    for (i, d) in diffs.iter().enumerate() {
        sum += if flipped(i) { -d } else { *d };
    }
    let mean = sum / diffs.len() as f64;
    Counts {
        plus: u64::from(mean >= bound - EPS),
        minus: u64::from(mean <= -bound + EPS),
    }
}

/// Sign-flip test of `mean(a − b)`.
///
/// Sampled mode draws `permutations` sign vectors; permutation block `c`
/// uses stream `c` of a ChaCha generator seeded with `seed`, so the result
/// depends only on the seed, not on thread count. Exhaustive mode
/// enumerates all 2ⁿ sign vectors and ignores `permutations` and `seed`.
pub fn fisher_randomization(
    a: &[f64],
    b: &[f64],
    mode: PermutationMode,
    permutations: u64,
    seed: u64,
) -> Result<RandomizationReport> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "score lists differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::InvalidArgument("no paired scores".into()));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let n = diffs.len();
    let observed = diffs.iter().sum::<f64>() / n as f64;
    let bound = observed.abs();

    let (counts, total) = match mode {
        PermutationMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE {
                return Err(Error::InvalidArgument(format!(
                    "exhaustive mode supports at most {MAX_EXHAUSTIVE} queries, got {n}"
                )));
            }
            let total = 1u64 << n;
            let counts = (0..total)
                .into_par_iter()
                .map(|mask| classify(&diffs, bound, |i| mask >> i & 1 == 1))
                .reduce(Counts::default, Counts::add);
            (counts, total)
        }
        PermutationMode::Sampled => {
            if permutations == 0 {
                return Err(Error::InvalidArgument(
                    "permutation count must be at least 1".into(),
                ));
            }
            let chunks = permutations.div_ceil(CHUNK);
            let words = n.div_ceil(64);
            let counts = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(c);
                    let len = CHUNK.min(permutations - c * CHUNK);
                    let mut bits = vec![0u64; words];
                    let mut acc = Counts::default();
                    for _ in 0..len {
                        for w in bits.iter_mut() {
                            *w = rng.next_u64();
                        }
                        acc = acc.add(classify(&diffs, bound, |i| bits[i / 64] >> (i % 64) & 1 == 1));
                    }
                    acc
                })
                .reduce(Counts::default, Counts::add);
            (counts, permutations)
        }
    };

    Ok(RandomizationReport {
        observed_diff: observed,
        n_minus: counts.minus,
        n_plus: counts.plus,
        permutations: total,
        p_two_sided: p_value(counts.minus, counts.plus, total),
        rng_seed: seed,
        mode,
    })
}
