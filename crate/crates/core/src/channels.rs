//! Quantum channels in Kraus form, their Stinespring isometries, maximal
//! output norms, and the Kraus families used by the subspace constructions.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{DEFAULT_MAX_DEN, DEFAULT_RATIONAL_TOL, ExactMatrix};
use crate::linalg::{self, C64, CMatrix, ZERO};
use crate::polysys::{self, GaussianRational, TrivialRootReport};
use crate::tensor::{DensityMatrix, Dims};
use crate::{Error, Result, Tolerances, certify, random};

/// Default number of random restarts for [`max_output_norm`].
pub const DEFAULT_RESTARTS: usize = 200;

/// Completely positive trace-preserving map ρ ↦ Σᵢ Kᵢ ρ Kᵢ†.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<CMatrix>,
}

impl KrausChannel {
    /// Validates shapes, the operator count and trace preservation (1e-9).
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::InvalidDims("a channel needs at least one Kraus operator".into()))?;
        let (out_dim, in_dim) = (first.rows(), first.cols());
        if in_dim == 0 || out_dim == 0 {
            return Err(Error::InvalidDims("Kraus operators must be non-empty".into()));
        }
        if let Some(k) = kraus.iter().find(|k| k.rows() != out_dim || k.cols() != in_dim) {
            return Err(Error::DimensionMismatch { expected: out_dim * in_dim, found: k.rows() * k.cols() });
        }
        if kraus.len() > in_dim * out_dim {
            return Err(Error::InvalidDims(format!("{} Kraus operators exceed in·out = {}", kraus.len(), in_dim * out_dim)));
        }
        let ch = KrausChannel { in_dim, out_dim, kraus };
        let dev = ch.trace_preservation_deviation();
        if dev > Tolerances::DEFAULT.structural {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(ch)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// max |Σ Kᵢ†Kᵢ − I|.
    pub fn trace_preservation_deviation(&self) -> f64 {
        let mut s = CMatrix::zeros(self.in_dim, self.in_dim);
        for k in &self.kraus {
            s = s.add(&k.adjoint().matmul(k));
        }
        s.max_abs_diff(&CMatrix::identity(self.in_dim))
    }

    /// Φ(m) for an arbitrary in_dim × in_dim matrix.
    pub fn apply(&self, m: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            out = out.add(&k.matmul(m).matmul(&k.adjoint()));
        }
        out
    }

    /// Φ(|ψ⟩⟨ψ|) = Σ (Kᵢψ)(Kᵢψ)†.
    pub fn apply_pure(&self, psi: &[C64]) -> CMatrix {
        let mut out = CMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            let v = k.mul_vec(psi);
            out = out.add(&CMatrix::outer(&v));
        }
        out
    }

    /// Adjoint map Φ†(X) = Σ Kᵢ† X Kᵢ.
    pub fn apply_adjoint(&self, x: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.in_dim, self.in_dim);
        for k in &self.kraus {
            out = out.add(&k.adjoint().matmul(x).matmul(k));
        }
        out
    }
}

/// Φ(ρ) as a density matrix on a single `out_dim`-level system.
pub fn apply_channel(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let n = rho.matrix().rows();
    if n != ch.in_dim {
        return Err(Error::DimensionMismatch { expected: ch.in_dim, found: n });
    }
    DensityMatrix::new(Dims::new(vec![ch.out_dim])?, ch.apply(rho.matrix()).hermitian_part())
}

/// Isometry V: H_in → H_B ⊗ H_C with V†V = I.
#[derive(Clone, Debug, PartialEq)]
pub struct Isometry {
    in_dim: usize,
    out_dims: (usize, usize),
    matrix: CMatrix,
}

impl Isometry {
    /// Validates the shape and V†V = I (1e-9).
    pub fn new(out_dims: (usize, usize), matrix: CMatrix) -> Result<Self> {
        if matrix.rows() != out_dims.0 * out_dims.1 {
            return Err(Error::DimensionMismatch { expected: out_dims.0 * out_dims.1, found: matrix.rows() });
        }
        let dev = matrix.isometry_deviation();
        if dev > Tolerances::DEFAULT.structural {
            return Err(Error::NotIsometry(dev));
        }
        Ok(Isometry { in_dim: matrix.cols(), out_dims, matrix })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dims(&self) -> (usize, usize) {
        self.out_dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// V|k⟩.
    pub fn image(&self, k: usize) -> Vec<C64> {
        self.matrix.column(k)
    }
}

/// V|φ⟩ = Σᵢ Kᵢ|φ⟩ ⊗ |i⟩, environment basis ordered by Kraus index.
pub fn isometry_from_kraus(ch: &KrausChannel) -> Result<Isometry> {
    let n = ch.kraus.len();
    let m = CMatrix::from_fn(ch.out_dim * n, ch.in_dim, |row, j| ch.kraus[row % n][(row / n, j)]);
    Isometry::new((ch.out_dim, n), m)
}

/// Kraus operators Kᵢ = (I ⊗ ⟨i|) V.
pub fn channel_from_isometry(v: &Isometry) -> Result<KrausChannel> {
    let (b, n) = v.out_dims;
    let kraus = (0..n).map(|i| CMatrix::from_fn(b, v.in_dim, |r, j| v.matrix[(r * n + i, j)])).collect();
    KrausChannel::new(kraus)
}

/// Tr_C(V ρ V†).
pub fn stinespring_apply(v: &Isometry, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let n_in = rho.matrix().rows();
    if n_in != v.in_dim {
        return Err(Error::DimensionMismatch { expected: v.in_dim, found: n_in });
    }
    let big = v.matrix.matmul(rho.matrix()).matmul(&v.matrix.adjoint());
    let (b, n) = v.out_dims;
    let out = CMatrix::from_fn(b, b, |r, c| (0..n).map(|i| big[(r * n + i, c * n + i)]).sum());
    DensityMatrix::new(Dims::new(vec![b])?, out.hermitian_part())
}

/// Schatten p-norm of a Hermitian PSD matrix (p = ∞ gives the largest eigenvalue).
pub fn schatten_norm(m: &CMatrix, p: f64) -> f64 {
    let ev = linalg::eigvalsh(m);
    if p.is_infinite() {
        return ev.first().copied().unwrap_or(0.0).max(0.0);
    }
    let s: f64 = ev.iter().map(|&x| num_traits::Float::powf(x.max(0.0), p)).sum();
    num_traits::Float::powf(s, 1.0 / p)
}

/// Result of [`max_output_norm`].
#[derive(Clone, Debug, PartialEq)]
pub struct OutputNorm {
    /// Best ‖Φ(|ψ⟩⟨ψ|)‖_p found.
    pub value: f64,
    pub p: f64,
    pub restarts: usize,
    /// Input achieving `value`.
    pub best_input: Vec<C64>,
    /// Best value after each restart (nondecreasing).
    pub trace: Vec<f64>,
}

/// Maximal output p-norm over pure inputs by seeded random-restart ascent.
///
/// Each restart starts from a uniformly random unit vector and follows the
/// gradient of ‖Φ(ψψ†)‖_p^p, projected on the tangent space of the sphere,
/// with step halving on failure and step growth on success. Restart r uses
/// the stream `derive_seed(seed, r)`, so results are reproducible and the
/// best value never decreases as `restarts` grows.
pub fn max_output_norm(ch: &KrausChannel, p: f64, restarts: usize, seed: u64) -> Result<OutputNorm> {
    if p.is_nan() || p <= 1.0 {
        return Err(Error::OutOfRange(format!("output norm order p = {p} must exceed 1")));
    }
    if restarts == 0 {
        return Err(Error::OutOfRange("at least one restart is required".into()));
    }
    let mut best = OutputNorm { value: f64::NEG_INFINITY, p, restarts, best_input: Vec::new(), trace: Vec::with_capacity(restarts) };
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(random::derive_seed(seed, r as u64));
        let start = random::unit_vector(&mut rng, ch.in_dim);
        let (value, psi) = ascend(ch, p, start);
        if value > best.value {
            best.value = value;
            best.best_input = psi;
        }
        best.trace.push(best.value);
    }
    Ok(best)
}

/// Objective ‖Φ(ψψ†)‖_p and the Hermitian operator G with ∇ = G ψ.
fn objective_and_gradient(ch: &KrausChannel, p: f64, psi: &[C64]) -> (f64, CMatrix) {
    let out = ch.apply_pure(psi).hermitian_part();
    let e = linalg::eigh(&out);
    if p.is_infinite() {
        let w = e.vectors.column(0);
        return (e.values[0].max(0.0), ch.apply_adjoint(&CMatrix::outer(&w)));
    }
    let x = linalg::hermitian_fn(&out, |v| num_traits::Float::powf(v.max(0.0), p - 1.0));
    let s: f64 = e.values.iter().map(|&v| num_traits::Float::powf(v.max(0.0), p)).sum();
    (num_traits::Float::powf(s, 1.0 / p), ch.apply_adjoint(&x))
}

fn ascend(ch: &KrausChannel, p: f64, mut psi: Vec<C64>) -> (f64, Vec<C64>) {
    const MAX_ITERS: usize = 2000;
    let (mut f, mut g) = objective_and_gradient(ch, p, &psi);
    let mut step = 1.0;
    for _ in 0..MAX_ITERS {
        let gpsi = g.mul_vec(&psi);
        let along = linalg::inner(&psi, &gpsi);
        let tangent: Vec<C64> = gpsi.iter().zip(&psi).map(|(a, b)| a - along * b).collect();
        if linalg::norm(&tangent) < 1e-13 {
            break;
        }
        let mut improved = false;
        while step > 1e-12 {
            let mut cand: Vec<C64> = psi.iter().zip(&tangent).map(|(a, t)| a + t * step).collect();
            linalg::normalize(&mut cand);
            let (fc, gc) = objective_and_gradient(ch, p, &cand);
            if fc > f {
                let gain = fc - f;
                psi = cand;
                f = fc;
                g = gc;
                step *= 2.0;
                improved = gain > 1e-15;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (f, psi)
}

/// Per operator: ‖Kᵢ†Kᵢ‖_op < 1 − 1e-12.
pub fn kraus_norm_condition(ch: &KrausChannel) -> Vec<bool> {
    ch.kraus.iter().map(|k| linalg::singular_values(k).first().map_or(0.0, |s| s * s) < 1.0 - 1e-12).collect()
}

/// Φ(ρ) = (I − ρᵀ)/(d − 1) with Kraus operators (|i⟩⟨j| − |j⟩⟨i|)/√(d−1), i < j.
pub fn holevo_werner(d: usize) -> Result<KrausChannel> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("Holevo-Werner dimension {d} < 2")));
    }
    let s = 1.0 / ((d - 1) as f64).sqrt();
    let mut kraus = Vec::with_capacity(d * (d - 1) / 2);
    for i in 0..d {
        for j in i + 1..d {
            let mut k = CMatrix::zeros(d, d);
            k[(i, j)] = C64::new(s, 0.0);
            k[(j, i)] = C64::new(-s, 0.0);
            kraus.push(k);
        }
    }
    KrausChannel::new(kraus)
}

/// Kraus family with exact (Gaussian-rational) entries. Trace preservation is
/// not required: rationalized siblings rescale amplitudes, which leaves the
/// linear-independence question unchanged.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactKraus {
    pub in_dim: usize,
    pub out_dim: usize,
    pub kraus: Vec<ExactMatrix>,
}

impl ExactKraus {
    pub fn new(kraus: Vec<ExactMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::InvalidDims("a channel needs at least one Kraus operator".into()))?;
        let (out_dim, in_dim) = (first.rows(), first.cols());
        if let Some(k) = kraus.iter().find(|k| k.rows() != out_dim || k.cols() != in_dim) {
            return Err(Error::DimensionMismatch { expected: out_dim * in_dim, found: k.rows() * k.cols() });
        }
        Ok(ExactKraus { in_dim, out_dim, kraus })
    }

    /// Reads a floating point channel entrywise as rationals.
    pub fn rationalize(ch: &KrausChannel) -> Result<Self> {
        let kraus = ch.kraus.iter().map(|k| ExactMatrix::rationalize(k, DEFAULT_MAX_DEN, DEFAULT_RATIONAL_TOL)).collect::<Result<Vec<_>>>()?;
        Self::new(kraus)
    }

    /// V with V[(b·N + i, j)] = (Kᵢ)[b][j], as in [`isometry_from_kraus`].
    pub fn isometry_matrix(&self) -> ExactMatrix {
        let n = self.kraus.len();
        ExactMatrix::from_fn(self.out_dim * n, self.in_dim, |row, j| self.kraus[row % n][(row / n, j)].clone())
    }

    /// Pencil A_μ with A_μ[r][i] = (Kᵢ)[r][μ]: Σ_μ φ_μ A_μ has columns Kᵢ|φ⟩.
    pub fn column_pencil(&self) -> Vec<ExactMatrix> {
        (0..self.in_dim).map(|mu| ExactMatrix::from_fn(self.out_dim, self.kraus.len(), |r, i| self.kraus[i][(r, mu)].clone())).collect()
    }
}

/// Decides whether, for every nonzero |φ⟩, some pair Kᵢ|φ⟩, Kⱼ|φ⟩ is linearly
/// independent (so every output is mixed), via the 2×2 minors of the matrix
/// with columns Kᵢ|φ⟩ and the projective emptiness test.
pub fn purity_certificate_exact(ch: &ExactKraus) -> Result<bool> {
    Ok(purity_certificate_report(ch, polysys::DEFAULT_SPAIR_CAP)?.trivial)
}

/// [`purity_certificate_exact`] with per-chart Groebner evidence.
pub fn purity_certificate_report(ch: &ExactKraus, cap: usize) -> Result<TrivialRootReport> {
    let polys = certify::pencil_minors(&ch.column_pencil());
    polysys::only_trivial_root_report(&polys, cap)
}

/// Floating point channel with exactly rational entries; fails with
/// [`Error::Irrational`] otherwise.
pub fn purity_certificate_rational(ch: &KrausChannel) -> Result<bool> {
    purity_certificate_exact(&ExactKraus::rationalize(ch)?)
}

/// Sparse Kraus layout K_op = W_op Σ_op where every input level j appears in
/// exactly two operators with amplitudes (a_j, b_j).
/// (Kraus operator, row of Σ).
type Slot = (usize, usize);

struct TwoTermLayout<'a> {
    out_dim: usize,
    in_dim: usize,
    ops: usize,
    /// For input column j: (op, row of Σ) for the first and second amplitude.
    entries: &'a [(Slot, Slot)],
    /// `perms[op][r]` is the row that W_op sends row r to (zero-based).
    perms: &'a [&'a [usize]],
}

impl TwoTermLayout<'_> {
    fn build<T: Clone>(&self, zero: T, amps: &[(T, T)]) -> Vec<Vec<T>> {
        let mut ks = vec![vec![zero; self.out_dim * self.in_dim]; self.ops];
        for (j, (&(first, second), (a, b))) in self.entries.iter().zip(amps).enumerate() {
            for (&(op, row), amp) in [(&first, a), (&second, b)] {
                let r = self.perms[op][row];
                ks[op][r * self.in_dim + j] = amp.clone();
            }
        }
        ks
    }

    fn numeric(&self, lambdas: &[f64]) -> Result<KrausChannel> {
        check_open_unit(lambdas)?;
        let amps: Vec<(C64, C64)> = lambdas.iter().map(|&l| (C64::new(l.sqrt(), 0.0), C64::new((1.0 - l).sqrt(), 0.0))).collect();
        let ks = self.build(ZERO, &amps);
        KrausChannel::new(ks.into_iter().map(|k| CMatrix::from_vec(self.out_dim, self.in_dim, k).expect("shape")).collect())
    }

    fn exact(&self, weights: &[(i64, i64)]) -> Result<ExactKraus> {
        check_weights(weights)?;
        let amps: Vec<_> = weights.iter().map(|&(r, s)| (GaussianRational::from_integer(r), GaussianRational::from_integer(s))).collect();
        let ks = self.build(GaussianRational::zero(), &amps);
        ExactKraus::new(ks.into_iter().map(|k| ExactMatrix::from_vec(self.out_dim, self.in_dim, k).expect("shape")).collect())
    }
}

pub(crate) fn check_open_unit(lambdas: &[f64]) -> Result<()> {
    match lambdas.iter().find(|&&l| !(l > 0.0 && l < 1.0)) {
        Some(l) => Err(Error::OutOfRange(format!("λ = {l} must lie in the open interval (0, 1)"))),
        None => Ok(()),
    }
}

pub(crate) fn check_weights(weights: &[(i64, i64)]) -> Result<()> {
    match weights.iter().find(|&&(r, s)| r == 0 || s == 0) {
        Some(w) => Err(Error::OutOfRange(format!("integer weights {w:?} must both be nonzero"))),
        None => Ok(()),
    }
}

const ID3: [usize; 3] = [0, 1, 2];
const ID4: [usize; 4] = [0, 1, 2, 3];

// 4×3 operators, W₁ = I, W₂: 1234 → 4123.
const K42_ENTRIES: [((usize, usize), (usize, usize)); 3] = [((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 2), (1, 2))];
const K42_W2: [usize; 4] = [3, 0, 1, 2];

fn k42_layout() -> TwoTermLayout<'static> {
    TwoTermLayout { out_dim: 4, in_dim: 3, ops: 2, entries: &K42_ENTRIES, perms: &[&ID4, &K42_W2] }
}

/// Two 4×3 Kraus operators whose isometry range is a 3-dimensional
/// completely entangled subspace of 4⊗2; `lambdas[j]` is λ⁽¹⁾ⱼ.
pub fn ces_4x2_kraus(lambdas: [f64; 3]) -> Result<KrausChannel> {
    k42_layout().numeric(&lambdas)
}

/// Rationalized sibling of [`ces_4x2_kraus`]: amplitude pairs replaced by
/// integer weights.
pub fn ces_4x2_kraus_exact(weights: [(i64, i64); 3]) -> Result<ExactKraus> {
    k42_layout().exact(&weights)
}

// 3×4 operators, W₁ = I, W₂ swaps levels 1 and 2, W₃: 123 → 312.
const KCES_ENTRIES: [((usize, usize), (usize, usize)); 4] = [((0, 0), (2, 0)), ((0, 1), (1, 1)), ((0, 2), (2, 2)), ((1, 2), (2, 1))];
const KCES_W2: [usize; 3] = [1, 0, 2];
const KCES_W3: [usize; 3] = [2, 0, 1];

fn kces_layout() -> TwoTermLayout<'static> {
    TwoTermLayout { out_dim: 3, in_dim: 4, ops: 3, entries: &KCES_ENTRIES, perms: &[&ID3, &KCES_W2, &KCES_W3] }
}

/// Three 3×4 Kraus operators (with λ⁽²⁾₁ = 0) whose isometry range is the
/// 4-dimensional completely entangled subspace of 3⊗3; `lambdas[j]` is the
/// weight of the first term of the j-th range vector.
pub fn ces_3x3_kraus(lambdas: [f64; 4]) -> Result<KrausChannel> {
    kces_layout().numeric(&lambdas)
}

pub fn ces_3x3_kraus_exact(weights: [(i64, i64); 4]) -> Result<ExactKraus> {
    kces_layout().exact(&weights)
}

// 4×7 operators, W₁ = I, W₂ = (1 3), W₃ = (3 4), W₄ = (2 4).
const K44_ENTRIES: [((usize, usize), (usize, usize)); 7] =
    [((0, 0), (1, 0)), ((2, 1), (3, 1)), ((1, 2), (2, 2)), ((0, 3), (2, 3)), ((1, 1), (3, 0)), ((0, 1), (3, 2)), ((0, 2), (1, 3))];
const K44_W2: [usize; 4] = [2, 1, 0, 3];
const K44_W3: [usize; 4] = [0, 1, 3, 2];
const K44_W4: [usize; 4] = [0, 3, 2, 1];

fn k44_layout() -> TwoTermLayout<'static> {
    TwoTermLayout { out_dim: 4, in_dim: 7, ops: 4, entries: &K44_ENTRIES, perms: &[&ID4, &K44_W2, &K44_W3, &K44_W4] }
}

/// Four 4×7 Kraus operators whose isometry range is a 7-dimensional
/// completely entangled subspace of 4⊗4.
pub fn ces_4x4_kraus(lambdas: [f64; 7]) -> Result<KrausChannel> {
    k44_layout().numeric(&lambdas)
}

pub fn ces_4x4_kraus_exact(weights: [(i64, i64); 7]) -> Result<ExactKraus> {
    k44_layout().exact(&weights)
}

/// Identity channel on `d` levels.
pub fn identity_channel(d: usize) -> Result<KrausChannel> {
    KrausChannel::new(vec![CMatrix::identity(d)])
}

/// Unitary channel ρ ↦ UρU†.
pub fn unitary_channel(u: CMatrix) -> Result<KrausChannel> {
    u.check_unitary(Tolerances::DEFAULT.structural)?;
    KrausChannel::new(vec![u])
}
