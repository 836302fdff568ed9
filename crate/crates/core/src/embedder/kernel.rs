//! Projection kernel `u = A x` for one or many signals.
//!
//! Every dot product follows one fixed arithmetic sequence: four lane
//! accumulators, lane `l` taking indices `j = l mod 4` in increasing order via
//! fused multiply-add, combined as `(acc0 + acc1) + (acc2 + acc3)`, then a
//! sequential fused tail. The AVX2 path and the portable path both implement
//! exactly this sequence, and tiling only changes which dot products run
//! together, so results are bit-identical however a batch is split.

use rayon::prelude::*;

use crate::randproj::Matrix;

/// Rows per cache block.
const ROW_BLOCK: usize = 64;
/// Signals per parallel task.
const SIGNAL_BLOCK: usize = 32;

/// Portable reference dot product.
#[inline(always)]
pub fn dot(a: &[f64], x: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), x.len());
    let n = a.len();
    let body = n - n % 4;
    let mut acc = [0.0f64; 4];
    let mut j = 0;
    while j < body {
        for l in 0..4 {
            acc[l] = a[j + l].mul_add(x[j + l], acc[l]);
        }
        j += 4;
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for j in body..n {
        s = a[j].mul_add(x[j], s);
    }
    s
}

/// `out[s * m + i] = <row i, xs[s]>` for all signals and rows.
pub fn project_many<X: AsRef<[f64]> + Sync>(a: &Matrix, xs: &[X], out: &mut [f64]) {
    let m = a.rows();
    debug_assert_eq!(out.len(), xs.len() * m);
    out.par_chunks_mut(SIGNAL_BLOCK * m)
        .zip(xs.par_chunks(SIGNAL_BLOCK))
        .for_each(|(out, xs)| {
            let xs: Vec<&[f64]> = xs.iter().map(|x| x.as_ref()).collect();
            project_block(a, &xs, out);
        });
}

fn project_block(a: &Matrix, xs: &[&[f64]], out: &mut [f64]) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::is_x86_feature_detected!("avx2") && std::is_x86_feature_detected!("fma") {
            // SAFETY: the required CPU features were detected above.
            unsafe { avx2::project_block(a, xs, out) };
            return;
        }
    }
    portable_block(a, xs, out);
}

fn portable_block(a: &Matrix, xs: &[&[f64]], out: &mut [f64]) {
    let m = a.rows();
    for (s, x) in xs.iter().enumerate() {
        for i in 0..m {
            out[s * m + i] = dot(a.row(i), x);
        }
    }
}

#[cfg(target_arch = "x86_64")]
mod avx2 {
    use std::arch::x86_64::*;

    use super::{ROW_BLOCK, SIGNAL_BLOCK};
    use crate::randproj::Matrix;

    #[target_feature(enable = "avx2,fma")]
    pub(super) unsafe fn project_block(a: &Matrix, xs: &[&[f64]], out: &mut [f64]) {
        let m = a.rows();
        let n = a.cols();
        debug_assert!(xs.len() <= SIGNAL_BLOCK);
        let mut r0 = 0;
        while r0 < m {
            let r1 = (r0 + ROW_BLOCK).min(m);
            let mut s = 0;
            while s + 2 <= xs.len() {
                let mut i = r0;
                while i + 4 <= r1 {
                    let v = tile::<2, 4>(a, i, [xs[s], xs[s + 1]], n);
                    for (ds, row) in v.iter().enumerate() {
                        out[(s + ds) * m + i..(s + ds) * m + i + 4].copy_from_slice(row);
                    }
                    i += 4;
                }
                while i < r1 {
                    let v = tile::<2, 1>(a, i, [xs[s], xs[s + 1]], n);
                    out[s * m + i] = v[0][0];
                    out[(s + 1) * m + i] = v[1][0];
                    i += 1;
                }
                s += 2;
            }
            if s < xs.len() {
                let mut i = r0;
                while i + 4 <= r1 {
                    let v = tile::<1, 4>(a, i, [xs[s]], n);
                    out[s * m + i..s * m + i + 4].copy_from_slice(&v[0]);
                    i += 4;
                }
                while i < r1 {
                    out[s * m + i] = tile::<1, 1>(a, i, [xs[s]], n)[0][0];
                    i += 1;
                }
            }
            r0 = r1;
        }
    }

    /// `S` signals against rows `i0..i0 + R`.
    #[inline(always)]
    unsafe fn tile<const S: usize, const R: usize>(a: &Matrix, i0: usize, xs: [&[f64]; S], n: usize) -> [[f64; R]; S] {
        let body = n - n % 4;
        let data = a.as_slice().as_ptr();
        let rows: [*const f64; R] = std::array::from_fn(|r| data.add((i0 + r) * n));
        let mut acc = [[_mm256_setzero_pd(); R]; S];
        let mut j = 0;
        while j < body {
            let xv: [__m256d; S] = std::array::from_fn(|s| _mm256_loadu_pd(xs[s].as_ptr().add(j)));
            for r in 0..R {
                let av = _mm256_loadu_pd(rows[r].add(j));
                for s in 0..S {
                    acc[s][r] = _mm256_fmadd_pd(av, xv[s], acc[s][r]);
                }
            }
            j += 4;
        }
        let mut out = [[0.0; R]; S];
        for s in 0..S {
            for r in 0..R {
                let mut lanes = [0.0f64; 4];
                _mm256_storeu_pd(lanes.as_mut_ptr(), acc[s][r]);
                let mut v = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
                #[allow(clippy::needless_range_loop)]
                for jj in body..n {
                    v = (*rows[r].add(jj)).mul_add(xs[s][jj], v);
                }
                out[s][r] = v;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randproj::{sample_projection, ProjectionSpec, RandomState, Stream};

    #[test]
    fn dot_matches_naive_closely() {
        let a: Vec<f64> = (0..37).map(|i| (i as f64 * 0.37).sin()).collect();
        let x: Vec<f64> = (0..37).map(|i| (i as f64 * 0.11).cos()).collect();
        let naive: f64 = a.iter().zip(&x).map(|(p, q)| p * q).sum();
        assert!((dot(&a, &x) - naive).abs() < 1e-13);
    }

    #[test]
    fn blocked_equals_portable_bitwise() {
        let spec = ProjectionSpec::gaussian(1.0).unwrap();
        for (m, n) in [(1, 1), (3, 5), (67, 13), (130, 64)] {
            let a = sample_projection(&spec, m, n, &RandomState::new(9, Stream::Matrix)).unwrap();
            let xs: Vec<Vec<f64>> = (0..37)
                .map(|s| (0..n).map(|j| ((s * 31 + j) as f64).sin()).collect())
                .collect();
            let mut fast = vec![0.0; xs.len() * m];
            project_many(&a, &xs, &mut fast);
            let refs: Vec<&[f64]> = xs.iter().map(|x| x.as_slice()).collect();
            let mut slow = vec![0.0; xs.len() * m];
            portable_block(&a, &refs, &mut slow);
            for (f, s) in fast.iter().zip(&slow) {
                assert_eq!(f.to_bits(), s.to_bits(), "m={m} n={n}");
            }
        }
    }
}
