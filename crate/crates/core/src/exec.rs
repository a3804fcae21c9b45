//! Execution policy for the data-parallel inner loops (quadrature node sums,
//! grid evaluation, period scans, Monte Carlo blocks).
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on rayon;
//! without it every policy degrades to the sequential path. Reductions are
//! always performed over fixed-size blocks in index order, so results are
//! bitwise identical between the two policies and across thread counts.

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of summands folded sequentially inside one reduction block.
const BLOCK: usize = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this policy actually runs on a thread pool in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Evaluates `f` at `0..n`, preserving order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Maps a slice, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Deterministic blocked sum of `f(i)` over `0..n`.
    pub fn sum<F>(self, n: usize, f: F) -> Complex64
    where
        F: Fn(usize) -> Complex64 + Sync + Send,
    {
        let blocks = n.div_ceil(BLOCK);
        let partial = self.map_range(blocks, |b| {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(n);
            (lo..hi).fold(Complex64::new(0.0, 0.0), |acc, i| acc + f(i))
        });
        partial.into_iter().sum()
    }

    /// Deterministic blocked sum of real summands.
    pub fn sum_real<F>(self, n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        let blocks = n.div_ceil(BLOCK);
        let partial = self.map_range(blocks, |b| {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(n);
            (lo..hi).fold(0.0, |acc, i| acc + f(i))
        });
        partial.into_iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree_bitwise() {
        let f = |i: usize| Complex64::new((i as f64).sin(), (i as f64 * 0.37).cos() / 3.0);
        let a = Exec::Sequential.sum(10_007, f);
        let b = Exec::Parallel.sum(10_007, f);
        assert_eq!(a, b);
        let m1 = Exec::Sequential.map_range(100, |i| i * i);
        let m2 = Exec::Parallel.map_range(100, |i| i * i);
        assert_eq!(m1, m2);
    }

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(Exec::Parallel.sum(0, |_| Complex64::new(1.0, 0.0)), Complex64::new(0.0, 0.0));
        assert_eq!(Exec::Sequential.sum_real(0, |_| 1.0), 0.0);
    }
}
