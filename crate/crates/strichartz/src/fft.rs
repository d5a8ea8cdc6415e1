//! In-place radix-2 complex FFT for power-of-two lengths.
//!
//! Grid sizes are powers of two by construction, so a plain iterative
//! decimation-in-time transform with a precomputed twiddle table covers every
//! use in the crate. Correctness is pinned by the direct `O(M²)` summation
//! oracles in the grid tests.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::math;

pub struct Plan {
    size: usize,
    /// `e^{-2πik/size}` for `k < size/2`.
    twiddles: Vec<Complex64>,
    bitrev: Vec<u32>,
}

impl Plan {
    pub fn new(size: usize) -> Plan {
        debug_assert!(size.is_power_of_two() && size >= 2);
        let mut twiddles = Vec::with_capacity(size / 2);
        for k in 0..size / 2 {
            twiddles.push(math::cis(-math::TAU * k as f64 / size as f64));
        }
        let bits = size.trailing_zeros();
        let mut bitrev = vec![0u32; size];
        for (i, slot) in bitrev.iter_mut().enumerate() {
            *slot = (i as u32).reverse_bits() >> (32 - bits);
        }
        Plan {
            size,
            twiddles,
            bitrev,
        }
    }

    /// Unnormalized DFT with kernel `e^{-2πi jk/M}`.
    pub fn forward(&self, buf: &mut [Complex64]) {
        self.transform(buf, false);
    }

    /// Unnormalized DFT with kernel `e^{+2πi jk/M}`; the caller scales.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        self.transform(buf, true);
    }

    fn transform(&self, buf: &mut [Complex64], conjugate: bool) {
        let n = self.size;
        debug_assert_eq!(buf.len(), n);
        for i in 0..n {
            let j = self.bitrev[i] as usize;
            if i < j {
                buf.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if conjugate {
                        w = w.conj();
                    }
                    let a = buf[start + k];
                    let b = buf[start + k + half] * w;
                    buf[start + k] = a + b;
                    buf[start + k + half] = a - b;
                }
            }
            len <<= 1;
        }
    }
}

/// Out-of-place square transpose with 64×64 blocking.
pub fn transpose_square(src: &[Complex64], dst: &mut [Complex64], m: usize) {
    const BLOCK: usize = 64;
    debug_assert_eq!(src.len(), m * m);
    debug_assert_eq!(dst.len(), m * m);
    for bi in (0..m).step_by(BLOCK) {
        for bj in (0..m).step_by(BLOCK) {
            for i in bi..(bi + BLOCK).min(m) {
                for j in bj..(bj + BLOCK).min(m) {
                    dst[j * m + i] = src[i * m + j];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_dft(input: &[Complex64], conjugate: bool) -> Vec<Complex64> {
        let n = input.len();
        let sign = if conjugate { 1.0 } else { -1.0 };
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        input[j] * math::cis(sign * math::TAU * (j * k) as f64 / n as f64)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_direct_dft() {
        let mut rng = crate::rng::SplitMix64::new(123);
        for &n in &[2usize, 4, 8, 32, 128] {
            let input: Vec<Complex64> = (0..n).map(|_| rng.next_complex()).collect();
            for conj in [false, true] {
                let expected = direct_dft(&input, conj);
                let mut buf = input.clone();
                let plan = Plan::new(n);
                if conj {
                    plan.inverse(&mut buf);
                } else {
                    plan.forward(&mut buf);
                }
                for (got, want) in buf.iter().zip(&expected) {
                    assert!((got - want).norm_sqr() < 1e-18 * n as f64);
                }
            }
        }
    }

    #[test]
    fn round_trip_scales_by_n() {
        let mut rng = crate::rng::SplitMix64::new(5);
        let n = 64;
        let input: Vec<Complex64> = (0..n).map(|_| rng.next_complex()).collect();
        let mut buf = input.clone();
        let plan = Plan::new(n);
        plan.forward(&mut buf);
        plan.inverse(&mut buf);
        for (got, want) in buf.iter().zip(&input) {
            assert!((got / n as f64 - want).norm_sqr() < 1e-24);
        }
    }

    #[test]
    fn transpose_round_trip() {
        let m = 96; // not a multiple of the block size
        let src: Vec<Complex64> = (0..m * m)
            .map(|i| Complex64::new(i as f64, -(i as f64)))
            .collect();
        let mut once = vec![Complex64::default(); m * m];
        let mut twice = vec![Complex64::default(); m * m];
        transpose_square(&src, &mut once, m);
        transpose_square(&once, &mut twice, m);
        assert_eq!(src, twice);
    }
}
