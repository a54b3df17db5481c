//! Seeded sampling of states, unitaries and density matrices.
//!
//! All samplers take an explicit `Rng`; callers that need reproducible,
//! independent streams (one per restart, one per cut) derive child seeds with
//! [`derive_seed`].

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{self, C64, CMatrix};

/// Standard complex Gaussian with independent N(0,1) real and imaginary parts.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly distributed unit vector on the complex sphere in Cⁿ.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    loop {
        let mut v: Vec<C64> = (0..n).map(|_| complex_normal(rng)).collect();
        if linalg::normalize(&mut v) > 1e-12 {
            return v;
        }
    }
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-random unitary (Gram-Schmidt of a Ginibre matrix's columns).
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    loop {
        let g = ginibre(rng, n, n);
        let cols: Vec<Vec<C64>> = (0..n).map(|j| g.column(j)).collect();
        let q = linalg::gram_schmidt(&cols, 1e-8);
        if q.len() == n {
            return CMatrix::from_columns(&q).expect("square");
        }
    }
}

/// Random density matrix G G† / Tr(G G†) with a `rank`-column Ginibre factor.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> CMatrix {
    let g = ginibre(rng, n, rank.max(1));
    let p = g.matmul(&g.adjoint());
    let t = p.trace().re;
    p.scale_real(1.0 / t).hermitian_part()
}

/// Random mixture of the given orthonormal vectors: Σ wᵢ |vᵢ⟩⟨vᵢ| plus random
/// coherences, i.e. a random density matrix supported on their span.
pub fn density_on_span<R: Rng + ?Sized>(rng: &mut R, basis: &[Vec<C64>]) -> CMatrix {
    let k = basis.len();
    let n = basis.first().map_or(0, |v| v.len());
    let inner = density_matrix(rng, k, k);
    let b = CMatrix::from_columns(basis).expect("equal lengths");
    debug_assert_eq!(b.rows(), n);
    b.matmul(&inner).matmul(&b.adjoint()).hermitian_part()
}

/// Independent child seed for stream `index` of `seed` (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform real in (lo, hi), never touching the endpoints.
pub fn open_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    loop {
        let x: f64 = rng.random();
        if x > 0.0 {
            let y = lo + (hi - lo) * x;
            if y > lo && y < hi {
                return y;
            }
        }
    }
}
