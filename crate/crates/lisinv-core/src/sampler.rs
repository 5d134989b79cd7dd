//! Exact uniform random generation of 3412-avoiding involutions.
//!
//! The class decomposes recursively: a nonempty member is either `1 ⊕ ρ′` or
//! `(1 ⊖ ρ″ ⊖ 1) ⊕ ρ′` for a frame size `m ≥ 2`. Branch probabilities are the
//! exact big-integer count ratios `M[n−1]/M[n]` and `M[m−2]·M[n−m]/M[n]`, so
//! the sampler is measure-exact: the only randomness is integers drawn
//! uniformly below exact counts, never floating point.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::decimal::{decimal_sig, sqrt_interval};
use crate::oracle::{enumerate_involutions, Oracle, OracleError, PatternSet, MAX_ENUM_N};
use crate::perm::Permutation;
use crate::series::{rat_int, Rat};

/// Generator identifier recorded alongside every sample run.
pub const RNG_ALGORITHM: &str = "chacha12";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SamplerError {
    SizeLimit { n: usize, max: usize },
    EmptyClass { n: usize, patterns: String },
}

impl fmt::Display for SamplerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplerError::SizeLimit { n, max } => {
                write!(f, "n = {n} exceeds the restricted-sampler limit {max}")
            }
            SamplerError::EmptyClass { n, patterns } => {
                write!(f, "no involutions of [{n}] avoid {{{patterns}}}")
            }
        }
    }
}

impl core::error::Error for SamplerError {}

/// `M[n] = |I_n(3412)|`, the Motzkin numbers, via the decomposition
/// convolution `M[n] = M[n−1] + Σ_{m=2}^{n} M[m−2]·M[n−m]`.
pub struct CountTable {
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn build(n_max: usize) -> CountTable {
        let mut counts: Vec<BigUint> = Vec::with_capacity(n_max + 1);
        counts.push(BigUint::one());
        if n_max >= 1 {
            counts.push(BigUint::one());
        }
        for n in 2..=n_max {
            let mut total = counts[n - 1].clone();
            for m in 2..=n {
                total += &counts[m - 2] * &counts[n - m];
            }
            counts.push(total);
        }
        CountTable { counts }
    }

    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }
}

/// Uniform integer in `[0, bound)` by rejection over the bit width.
fn gen_below<R: RngCore>(rng: &mut R, bound: &BigUint) -> BigUint {
    debug_assert!(!bound.is_zero());
    if bound.is_one() {
        return BigUint::zero();
    }
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask: u32 = if bits.is_multiple_of(32) {
        u32::MAX
    } else {
        (1u32 << (bits % 32)) - 1
    };
    loop {
        let mut digits = Vec::with_capacity(words);
        for i in 0..words {
            let mut w = rng.next_u32();
            if i == words - 1 {
                w &= top_mask;
            }
            digits.push(w);
        }
        let candidate = BigUint::from_slice(&digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// One uniform draw from `I_n(3412)`.
///
/// Iterative with an explicit work stack of `(offset, size)` segments, so
/// sizes in the tens of thousands stay within stack limits. Requires
/// `table.n_max() ≥ n`.
pub fn sample_3412_involution<R: RngCore>(
    n: usize,
    table: &CountTable,
    rng: &mut R,
) -> Permutation {
    assert!(table.n_max() >= n, "count table too shallow for n = {n}");
    let mut entries = alloc::vec![0u32; n];
    let mut stack: Vec<(usize, usize)> = alloc::vec![(0, n)];
    while let Some((lo, sz)) = stack.pop() {
        if sz == 0 {
            continue;
        }
        let mut r = gen_below(rng, table.count(sz));
        if r < *table.count(sz - 1) {
            // 1 ⊕ ρ′
            entries[lo] = lo as u32 + 1;
            stack.push((lo + 1, sz - 1));
            continue;
        }
        r -= table.count(sz - 1);
        // frame (1 ⊖ ρ″ ⊖ 1) of size m, weight M[m−2]·M[sz−m]
        let mut m = 2;
        loop {
            let w = table.count(m - 2) * table.count(sz - m);
            if r < w {
                break;
            }
            r -= w;
            m += 1;
            debug_assert!(m <= sz, "cumulative weights must cover the draw");
        }
        entries[lo] = (lo + m) as u32;
        entries[lo + m - 1] = lo as u32 + 1;
        stack.push((lo + 1, m - 2));
        stack.push((lo + m, sz - m));
    }
    Permutation::new(entries).expect("block construction yields a bijection")
}

/// Summary of a Monte Carlo LIS run; mean and variance are exact rationals
/// over the recorded histogram.
#[derive(Clone, Debug)]
pub struct SampleStats {
    pub n: usize,
    pub sample_count: u64,
    pub seed: u64,
    pub rng_algorithm: &'static str,
    pub histogram: BTreeMap<usize, u64>,
}

impl SampleStats {
    pub fn mean(&self) -> Rat {
        let total: u64 = self.histogram.iter().map(|(&k, &c)| k as u64 * c).sum();
        Rat::new(total.into(), self.sample_count.into())
    }

    /// Unbiased sample variance (zero for fewer than two samples).
    pub fn sample_variance(&self) -> Rat {
        if self.sample_count < 2 {
            return Rat::zero();
        }
        let mean = self.mean();
        let mut acc = Rat::zero();
        for (&k, &c) in &self.histogram {
            let d = rat_int(k as i64) - &mean;
            acc += &d * &d * rat_int(c as i64);
        }
        acc / rat_int(self.sample_count as i64 - 1)
    }

    /// Standard error of the mean as a rational interval
    /// (`√(s²/count)` bracketed to 15 digits).
    pub fn stderr_interval(&self) -> (Rat, Rat) {
        let v = self.sample_variance() / rat_int(self.sample_count as i64);
        sqrt_interval(&v, 15)
    }

    pub fn mean_decimal(&self, sig: usize) -> String {
        decimal_sig(&self.mean(), sig)
    }

    pub fn stderr_decimal(&self, sig: usize) -> String {
        decimal_sig(&self.stderr_interval().0, sig)
    }
}

/// `samples` iid uniform draws from `I_n(3412)` with their LIS histogram.
/// Deterministic for a fixed seed.
pub fn monte_carlo_lis(n: usize, samples: u64, seed: u64) -> SampleStats {
    use rand_core::SeedableRng;
    let table = CountTable::build(n);
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let mut histogram: BTreeMap<usize, u64> = BTreeMap::new();
    for _ in 0..samples {
        let p = sample_3412_involution(n, &table, &mut rng);
        *histogram.entry(p.lis()).or_insert(0) += 1;
    }
    SampleStats {
        n,
        sample_count: samples,
        seed,
        rng_algorithm: RNG_ALGORITHM,
        histogram,
    }
}

/// Uniform sampling from small restricted classes `I_n(T)` by
/// enumerate-and-index, with the enumerations cached.
pub struct RestrictedSampler {
    cache: BTreeMap<(usize, String), Vec<Permutation>>,
}

/// Restricted sampling stays within the oracle's reach.
pub const MAX_RESTRICTED_N: usize = 12;

impl Default for RestrictedSampler {
    fn default() -> Self {
        Self::new()
    }
}

impl RestrictedSampler {
    pub fn new() -> Self {
        RestrictedSampler {
            cache: BTreeMap::new(),
        }
    }

    pub fn sample<R: RngCore>(
        &mut self,
        n: usize,
        t: &PatternSet,
        rng: &mut R,
    ) -> Result<Permutation, SamplerError> {
        if n > MAX_RESTRICTED_N {
            return Err(SamplerError::SizeLimit {
                n,
                max: MAX_RESTRICTED_N,
            });
        }
        let key = (n, t.key());
        if !self.cache.contains_key(&key) {
            let class: Vec<Permutation> = enumerate_involutions(n)
                .expect("n bounded above by the oracle limit")
                .filter(|p| t.admits(p))
                .collect();
            self.cache.insert(key.clone(), class);
        }
        let class = &self.cache[&key];
        if class.is_empty() {
            return Err(SamplerError::EmptyClass {
                n,
                patterns: t.key(),
            });
        }
        let idx = gen_below(rng, &BigUint::from(class.len()));
        let idx: usize = idx.try_into().expect("class size fits usize");
        Ok(class[idx].clone())
    }
}

/// Compile-time guard: the restricted limit stays within the oracle's.
const _: () = assert!(MAX_RESTRICTED_N <= MAX_ENUM_N);

/// Exactness cross-check helper used by tests and verification: the oracle
/// distribution restated as exact probabilities.
pub fn oracle_probabilities(
    oracle: &mut Oracle,
    n: usize,
    t: &PatternSet,
) -> Result<Vec<(usize, Rat)>, OracleError> {
    let d = oracle.lis_distribution(n, t)?;
    let size = d.class_size;
    Ok(d.counts
        .iter()
        .map(|(&k, &c)| (k, Rat::new(c.into(), size.into())))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_core::SeedableRng;

    #[test]
    fn count_table_is_motzkin() {
        let t = CountTable::build(12);
        let motzkin: [u64; 13] = [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798, 15511];
        for (n, m) in motzkin.iter().enumerate() {
            assert_eq!(t.count(n), &BigUint::from(*m), "n = {n}");
        }
    }

    #[test]
    fn count_table_matches_oracle_class_sizes() {
        let t = CountTable::build(8);
        let mut oracle = Oracle::new();
        let set = PatternSet::with_3412([]);
        for n in 0..=8 {
            let d = oracle.lis_distribution(n, &set).unwrap();
            assert_eq!(t.count(n), &BigUint::from(d.class_size), "n = {n}");
        }
    }

    #[test]
    fn samples_are_valid_and_deterministic() {
        let table = CountTable::build(60);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(99);
        let three412: Permutation = "3412".parse().unwrap();
        let mut firsts = Vec::new();
        for _ in 0..200 {
            let p = sample_3412_involution(60, &table, &mut rng);
            assert!(p.is_involution());
            assert!(p.avoids(&three412));
            firsts.push(p);
        }
        // identical stream on re-seed
        let mut rng2 = rand_chacha::ChaCha12Rng::seed_from_u64(99);
        for want in &firsts {
            assert_eq!(&sample_3412_involution(60, &table, &mut rng2), want);
        }
    }

    #[test]
    fn trivial_sizes() {
        let table = CountTable::build(2);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(1);
        assert!(sample_3412_involution(0, &table, &mut rng).is_empty());
        // n = 2 hits both classes eventually
        let mut seen = alloc::collections::BTreeSet::new();
        for _ in 0..64 {
            seen.insert(sample_3412_involution(2, &table, &mut rng).to_string());
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn monte_carlo_stats_shape() {
        let stats = monte_carlo_lis(1, 50, 7);
        assert_eq!(stats.mean(), rat_int(1));
        assert_eq!(stats.sample_variance(), rat_int(0));
        assert_eq!(stats.stderr_decimal(3), "0");
        assert_eq!(stats.rng_algorithm, "chacha12");
        let total: u64 = stats.histogram.values().sum();
        assert_eq!(total, 50);
        for &k in stats.histogram.keys() {
            assert!(k >= 1 && k <= stats.n);
        }
    }

    #[test]
    fn restricted_sampler_basics() {
        let mut rs = RestrictedSampler::new();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        let t = PatternSet::with_3412(["321".parse().unwrap()]);
        let mut seen = alloc::collections::BTreeSet::new();
        for _ in 0..200 {
            let p = rs.sample(3, &t, &mut rng).unwrap();
            assert!(p.is_involution() && p.avoids(&"321".parse().unwrap()));
            seen.insert(p.to_string());
        }
        // I_3(3412, 321) = {123, 132, 213}
        assert_eq!(seen.len(), 3);
        assert!(rs.sample(0, &t, &mut rng).unwrap().is_empty());
        let t1 = PatternSet::bare(["1".parse().unwrap()]);
        assert!(matches!(
            rs.sample(2, &t1, &mut rng),
            Err(SamplerError::EmptyClass { .. })
        ));
        assert!(matches!(
            rs.sample(13, &t, &mut rng),
            Err(SamplerError::SizeLimit { .. })
        ));
    }

    #[test]
    fn gen_below_is_uniform_enough_and_in_range() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        let bound = BigUint::from(7u32);
        let mut counts = [0u32; 7];
        for _ in 0..7000 {
            let v = gen_below(&mut rng, &bound);
            let v: usize = v.try_into().unwrap();
            counts[v] += 1;
        }
        for c in counts {
            assert!(c > 800 && c < 1200, "{counts:?}");
        }
    }
}
