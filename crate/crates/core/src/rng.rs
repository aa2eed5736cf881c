//! Seedable random streams.
//!
//! [`RngStream`] is a SplitMix64 generator: a 64-bit Weyl sequence passed
//! through the SplitMix64 finalizer. It is implemented here rather than taken
//! from a crate so that draw sequences never change with a dependency bump.
//! Substreams are derived with [`mix_seed`], which runs both the parent seed
//! and the stream index through the same finalizer before combining them.

use statrs::function::gamma::ln_gamma;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// The SplitMix64 output finalizer (a bijection on `u64`).
#[inline]
pub fn splitmix64_finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives the seed of substream `index` of `seed`.
///
/// `mix(s, r) = F(F(s) + F(r + γ))` with `F` the SplitMix64 finalizer and `γ`
/// the golden-ratio increment.
#[inline]
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    splitmix64_finalize(
        splitmix64_finalize(seed).wrapping_add(splitmix64_finalize(index.wrapping_add(GOLDEN_GAMMA))),
    )
}

/// Folds several indices into `seed`, left to right.
pub fn mix_seed_path(seed: u64, indices: &[u64]) -> u64 {
    indices.iter().fold(seed, |s, &i| mix_seed(s, i))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
    state: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream { seed, state: seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream for replication / job `index`, derived from this
    /// stream's seed (not its current position).
    pub fn substream(&self, index: u64) -> RngStream {
        RngStream::new(mix_seed(self.seed, index))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        splitmix64_finalize(self.state)
    }

    /// Uniform on `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[low, high)`.
    #[inline]
    pub fn uniform_range(&mut self, low: f64, high: f64) -> f64 {
        let x = low + (high - low) * self.uniform();
        // rounding can land exactly on `high` when the span is tiny
        if x >= high && high > low {
            low.max(high - (high - low) * f64::EPSILON)
        } else {
            x
        }
    }

    /// Uniform integer in `0..n` (unbiased, Lemire's multiply-shift with rejection).
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        let n = n as u64;
        let mut m = (self.next_u64() as u128) * (n as u128);
        let mut low = m as u64;
        if low < n {
            let threshold = n.wrapping_neg() % n;
            while low < threshold {
                m = (self.next_u64() as u128) * (n as u128);
                low = m as u64;
            }
        }
        (m >> 64) as usize
    }

    /// Uniform integer in the closed range `[low, high]`.
    pub fn int_inclusive(&mut self, low: usize, high: usize) -> usize {
        debug_assert!(low <= high);
        low + self.below(high - low + 1)
    }

    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Standard normal draw (Box-Muller, one value per call).
    pub fn standard_normal(&mut self) -> f64 {
        // 1 - u lies in (0, 1], so the log is finite
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn normal(&mut self, mean: f64, sigma: f64) -> f64 {
        mean + sigma * self.standard_normal()
    }

    /// Poisson draw: CDF inversion below mean 10, PTRS transformed rejection above.
    pub fn poisson(&mut self, mean: f64) -> u64 {
        if mean <= 0.0 || !mean.is_finite() {
            return 0;
        }
        if mean < 10.0 {
            self.poisson_inversion(mean)
        } else {
            self.poisson_ptrs(mean)
        }
    }

    fn poisson_inversion(&mut self, mean: f64) -> u64 {
        let u = self.uniform();
        let mut k = 0u64;
        let mut p = (-mean).exp();
        let mut cdf = p;
        while u > cdf {
            k += 1;
            p *= mean / k as f64;
            cdf += p;
            if p == 0.0 && cdf < u {
                // numerical tail exhausted
                break;
            }
        }
        k
    }

    fn poisson_ptrs(&mut self, mean: f64) -> u64 {
        let smu = mean.sqrt();
        let log_mean = mean.ln();
        let b = 0.931 + 2.53 * smu;
        let a = -0.059 + 0.02483 * b;
        let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        let vr = 0.9277 - 3.6224 / (b - 2.0);
        loop {
            let u = self.uniform() - 0.5;
            let v = self.uniform();
            let us = 0.5 - u.abs();
            let k = ((2.0 * a / us + b) * u + mean + 0.43).floor();
            if us >= 0.07 && v <= vr {
                return k as u64;
            }
            if k < 0.0 || (us < 0.013 && v > us) {
                continue;
            }
            let lhs = v.ln() + inv_alpha.ln() - (a / (us * us) + b).ln();
            let rhs = -mean + k * log_mean - ln_gamma(k + 1.0);
            if lhs <= rhs {
                return k as u64;
            }
        }
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }

    /// `k` distinct indices from `0..n`, in draw order.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n);
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below(n - i);
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn reference_splitmix_values() {
        // reference output of SplitMix64 seeded with 1234567
        let mut r = RngStream::new(1234567);
        assert_eq!(r.next_u64(), 6457827717110365317);
        assert_eq!(r.next_u64(), 3203168211198807973);
    }

    #[test]
    fn substreams_differ() {
        let base = RngStream::new(7);
        let seeds: Vec<u64> = (0..100).map(|r| base.substream(r).seed()).collect();
        let mut dedup = seeds.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), seeds.len());
        assert_ne!(mix_seed(1, 2), mix_seed(2, 1));
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut r = RngStream::new(3);
        let mut sum = 0.0;
        for _ in 0..100_000 {
            let u = r.uniform();
            assert!((0.0..1.0).contains(&u));
            sum += u;
        }
        assert!((sum / 100_000.0 - 0.5).abs() < 0.005);
    }

    #[test]
    fn below_covers_range_evenly() {
        let mut r = RngStream::new(11);
        let mut counts = [0usize; 7];
        for _ in 0..70_000 {
            counts[r.below(7)] += 1;
        }
        for c in counts {
            assert!((c as f64 - 10_000.0).abs() < 500.0, "{counts:?}");
        }
    }

    #[test]
    fn normal_moments() {
        let mut r = RngStream::new(5);
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| r.standard_normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01);
        assert!((var - 1.0).abs() < 0.01);
    }

    #[test]
    fn poisson_moments_both_regimes() {
        for &mean in &[0.3, 4.0, 9.9, 10.0, 50.0, 2500.0] {
            let mut r = RngStream::new(99);
            let n = 50_000;
            let xs: Vec<f64> = (0..n).map(|_| r.poisson(mean) as f64).collect();
            let m = xs.iter().sum::<f64>() / n as f64;
            let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n as f64;
            let se = (mean / n as f64).sqrt();
            assert!((m - mean).abs() < 4.0 * se, "mean {mean}: got {m}");
            assert!((v / mean - 1.0).abs() < 0.05, "mean {mean}: var {v}");
        }
    }

    #[test]
    fn sample_indices_distinct() {
        let mut r = RngStream::new(1);
        let mut s = r.sample_indices(20, 20);
        s.sort_unstable();
        assert_eq!(s, (0..20).collect::<Vec<_>>());
    }
}
