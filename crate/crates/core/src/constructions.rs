//! Explicit completely and genuinely entangled subspaces.
//!
//! Every family is produced by the same pipeline that defines it: Kraus
//! operators → Stinespring isometry → local unitaries → subsystem
//! factorization. Each family also has a rationalized sibling
//! ([`ExactSubspace`]) in which the √λ : √(1−λ) amplitude pairs are replaced
//! by integer weights r : s. Rescaling the two terms of a spanning vector
//! gives another member of the same family, so exact certificates of a
//! sibling are certificates of that member's span.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;

#[allow(unused_imports)]
use num_traits::Float;

use crate::channels::{self, Isometry, KrausChannel};
use crate::exact::{DEFAULT_MAX_DEN, DEFAULT_RATIONAL_TOL, ExactMatrix, ExactSubspace};
use crate::linalg::{self, C64, CMatrix, ZERO};
use crate::tensor::{self, Bipartition, Dims, FactorizationScheme, PureState};
use crate::{Error, Result, Tolerances};

/// Orthonormal basis of a subspace of a tensor-product space.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    dims: Dims,
    basis: Vec<PureState>,
    /// One line per basis vector describing how it was produced.
    provenance: Vec<String>,
}

impl Subspace {
    /// Validates normalization and pairwise orthogonality (1e-9).
    pub fn new(dims: Dims, vectors: Vec<Vec<C64>>) -> Result<Self> {
        let basis = vectors.into_iter().map(|v| PureState::new(dims.clone(), v)).collect::<Result<Vec<_>>>()?;
        Self::from_states(dims, basis)
    }

    pub fn from_states(dims: Dims, basis: Vec<PureState>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidDims("a subspace needs at least one basis vector".into()));
        }
        if let Some(s) = basis.iter().find(|s| s.dims() != &dims) {
            return Err(Error::InvalidDims(format!("basis vector on {} in a {} subspace", s.dims(), dims)));
        }
        let sub = Subspace { dims, basis, provenance: Vec::new() };
        let dev = sub.orthonormality_deviation();
        if dev > Tolerances::DEFAULT.structural {
            return Err(Error::NotOrthonormal(dev));
        }
        Ok(sub)
    }

    /// Gram-Schmidt orthonormalization of a linearly independent spanning set.
    pub fn orthonormalized(dims: Dims, vectors: &[Vec<C64>]) -> Result<Self> {
        let q = linalg::gram_schmidt(vectors, 1e-10);
        if q.len() != vectors.len() {
            return Err(Error::InvalidDims("spanning set is linearly dependent".into()));
        }
        Self::new(dims, q)
    }

    pub fn with_provenance(mut self, provenance: Vec<String>) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn basis(&self) -> &[PureState] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> Vec<Vec<C64>> {
        self.basis.iter().map(|s| s.amplitudes().to_vec()).collect()
    }

    /// Matrix of inner products ⟨bᵢ|bⱼ⟩.
    pub fn gram(&self) -> CMatrix {
        CMatrix::from_fn(self.dim(), self.dim(), |i, j| self.basis[i].inner(&self.basis[j]))
    }

    pub fn orthonormality_deviation(&self) -> f64 {
        self.gram().max_abs_diff(&CMatrix::identity(self.dim()))
    }

    /// Orthogonal projector Π_W.
    pub fn projector(&self) -> CMatrix {
        let n = self.dims.total();
        let mut p = CMatrix::zeros(n, n);
        for s in &self.basis {
            p = p.add(&CMatrix::outer(s.amplitudes()));
        }
        p
    }

    /// ‖Π_W ψ‖².
    pub fn overlap(&self, psi: &[C64]) -> f64 {
        self.basis.iter().map(|b| linalg::inner(b.amplitudes(), psi).norm_sqr()).sum()
    }

    pub fn apply_local_unitary(&self, u: &CMatrix, subsystem: usize) -> Result<Self> {
        let basis = self.basis.iter().map(|s| tensor::apply_local_unitary(s, u, subsystem)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace { dims: self.dims.clone(), basis, provenance: self.provenance.clone() })
    }

    pub fn factorize(&self, scheme: &FactorizationScheme) -> Result<Self> {
        let basis = self.basis.iter().map(|s| tensor::factorize_subsystem(s, scheme)).collect::<Result<Vec<_>>>()?;
        let dims = basis[0].dims().clone();
        Ok(Subspace { dims, basis, provenance: self.provenance.clone() })
    }

    fn annotate(mut self, step: &str) -> Self {
        if self.provenance.is_empty() {
            self.provenance = (1..=self.dim()).map(|k| format!("vector {k}")).collect();
        }
        for p in &mut self.provenance {
            p.push_str(" → ");
            p.push_str(step);
        }
        self
    }
}

/// Subspace spanned by the isometry columns V|0⟩, …, V|n−1⟩.
pub fn isometry_range(v: &Isometry, source: &str) -> Result<Subspace> {
    let (b, c) = v.out_dims();
    let dims = Dims::new(vec![b, c])?;
    let vectors = (0..v.in_dim()).map(|k| v.image(k)).collect();
    let provenance = (0..v.in_dim()).map(|k| format!("{source} isometry column {}", k + 1)).collect();
    Ok(Subspace::new(dims, vectors)?.with_provenance(provenance))
}

fn exact_range(ch: &channels::ExactKraus) -> Result<ExactSubspace> {
    let v = ch.isometry_matrix();
    let dims = Dims::new(vec![ch.out_dim, ch.kraus.len()])?;
    ExactSubspace::new(dims, (0..ch.in_dim).map(|j| v.column(j)).collect())
}

/// (d₁−1)(d₂−1): largest dimension of a completely entangled subspace of d₁⊗d₂.
pub fn max_ces_dim(d1: usize, d2: usize) -> usize {
    (d1 * d2 + 1).saturating_sub(d1 + d2)
}

/// Largest possible dimension of a genuinely entangled subspace: the
/// minimum of [`max_ces_dim`] over all bipartitions.
pub fn max_ges_dim(dims: &Dims) -> usize {
    Bipartition::all(dims.parties())
        .iter()
        .map(|cut| {
            let (a, b) = cut.shape(dims);
            max_ces_dim(a, b)
        })
        .min()
        .unwrap_or(0)
}

// ---------------------------------------------------------------------------
// 3⊗3 completely entangled subspaces and lifts to three qutrits

/// √λⱼ, √(1−λⱼ) pairs: |00⟩,|22⟩; |10⟩,|01⟩; |20⟩,|12⟩; |21⟩,|02⟩.
pub fn ces_3x3(lambdas: [f64; 4]) -> Result<Subspace> {
    let v = channels::isometry_from_kraus(&channels::ces_3x3_kraus(lambdas)?)?;
    isometry_range(&v, "three 3×4 Kraus operators")
}

pub fn ces_3x3_exact(weights: [(i64, i64); 4]) -> Result<ExactSubspace> {
    Ok(exact_range(&channels::ces_3x3_kraus_exact(weights)?)?.with_span_sibling(true))
}

/// (|ij⟩ − |ji⟩)/√2 for i < j.
pub fn antisymmetric_subspace(d: usize) -> Result<Subspace> {
    let iso = antisymmetric_isometry(d)?;
    let dims = Dims::new(vec![d, d])?;
    let vectors = (0..iso.in_dim()).map(|k| iso.image(k)).collect();
    let provenance = antisymmetric_pairs(d).iter().map(|(i, j)| format!("(|{i}{j}⟩ − |{j}{i}⟩)/√2")).collect();
    Ok(Subspace::new(dims, vectors)?.with_provenance(provenance))
}

pub fn antisymmetric_exact(d: usize) -> Result<ExactSubspace> {
    let dims = Dims::new(vec![d, d])?;
    let terms: Vec<_> = antisymmetric_pairs(d).iter().map(|&(i, j)| vec![(1, vec![i, j]), (-1, vec![j, i])]).collect();
    ExactSubspace::from_terms(dims, &terms)
}

fn antisymmetric_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
}

/// Isometry from C^{d(d−1)/2} onto the antisymmetric subspace of d⊗d,
/// |k⟩ ↦ k-th antisymmetric vector in (i, j) lexicographic order.
pub fn antisymmetric_isometry(d: usize) -> Result<Isometry> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("antisymmetric subspace needs d ≥ 2, got {d}")));
    }
    let pairs = antisymmetric_pairs(d);
    let s = 0.5f64.sqrt();
    let m = CMatrix::from_fn(d * d, pairs.len(), |row, k| {
        let (i, j) = pairs[k];
        if row == i * d + j {
            C64::new(s, 0.0)
        } else if row == j * d + i {
            C64::new(-s, 0.0)
        } else {
            ZERO
        }
    });
    Isometry::new((d, d), m)
}

/// Applies V to subsystem `party` of every basis vector; the party is
/// replaced by the pair of output systems of V.
pub fn lift_ges(ces: &Subspace, v: &Isometry, party: usize) -> Result<Subspace> {
    let locals = ces.dims().locals();
    let d = *locals.get(party).ok_or_else(|| Error::OutOfRange(format!("party {party}")))?;
    if v.in_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: v.in_dim() });
    }
    let (b, c) = v.out_dims();
    let dims = tensor::split_dims(ces.dims(), party, &[b, c])?;
    let basis =
        ces.basis().iter().map(|s| PureState::new(dims.clone(), tensor::apply_local_map(s, v.matrix(), party, &[b, c])?)).collect::<Result<Vec<_>>>()?;
    Ok(Subspace::from_states(dims, basis)?.with_provenance(ces.provenance().to_vec()).annotate(&format!("isometry on party {party}")))
}

/// Exact lift by a rational multiple of an isometry (a global scale factor
/// does not change spans).
pub fn lift_exact(ces: &ExactSubspace, v: &ExactMatrix, party: usize, out_dims: (usize, usize)) -> Result<ExactSubspace> {
    ces.apply_local(v, party, &[out_dims.0, out_dims.1])
}

/// √2·V read exactly, for isometries with entries in {0, ±1/√2}.
pub fn scaled_exact_isometry(v: &Isometry) -> Result<ExactMatrix> {
    ExactMatrix::rationalize(&v.matrix().scale_real(2f64.sqrt()), DEFAULT_MAX_DEN, DEFAULT_RATIONAL_TOL)
}

/// The 3⊗3 family lifted to three qutrits by the antisymmetric-range
/// isometry on the second party.
pub fn lifted_ces_3x3(lambdas: [f64; 4]) -> Result<Subspace> {
    lift_ges(&ces_3x3(lambdas)?, &antisymmetric_isometry(3)?, 1)
}

pub fn lifted_ces_3x3_exact(weights: [(i64, i64); 4]) -> Result<ExactSubspace> {
    lift_exact(&ces_3x3_exact(weights)?, &scaled_exact_isometry(&antisymmetric_isometry(3)?)?, 1, (3, 3))
}

/// Stinespring isometry of the d = 3 Holevo-Werner channel.
pub fn holevo_werner_isometry() -> Result<Isometry> {
    channels::isometry_from_kraus(&channels::holevo_werner(3)?)
}

/// Antisymmetric subspace of 3⊗3 lifted by the Holevo-Werner isometry on
/// the second qutrit (dims 3⊗3⊗3, parties A, C, D).
pub fn hw_ges() -> Result<Subspace> {
    lift_ges(&antisymmetric_subspace(3)?, &holevo_werner_isometry()?, 1)
}

pub fn hw_ges_exact() -> Result<ExactSubspace> {
    lift_exact(&antisymmetric_exact(3)?, &scaled_exact_isometry(&holevo_werner_isometry()?)?, 1, (3, 3))
}

// ---------------------------------------------------------------------------
// Three qubits

/// √λⱼ|·⟩|0⟩ + √(1−λⱼ)|·⟩|1⟩ spanning set in 4⊗2.
pub fn ces_4x2(lambdas: [f64; 3]) -> Result<Subspace> {
    let v = channels::isometry_from_kraus(&channels::ces_4x2_kraus(lambdas)?)?;
    isometry_range(&v, "two 4×3 Kraus operators")
}

pub fn ces_4x2_exact(weights: [(i64, i64); 3]) -> Result<ExactSubspace> {
    Ok(exact_range(&channels::ces_4x2_kraus_exact(weights)?)?.with_span_sibling(true))
}

/// Unitary on a 4-level system mixing |1⟩ and |2⟩ with weights ±1/√2.
pub fn mixing_unitary_4() -> CMatrix {
    let s = 0.5f64.sqrt();
    CMatrix::from_real(4, 4, &[1.0, 0.0, 0.0, 0.0, 0.0, s, s, 0.0, 0.0, s, -s, 0.0, 0.0, 0.0, 0.0, 1.0]).expect("4×4")
}

/// 4⊗2 family → mixing unitary on the 4-level party → split into two qubits.
pub fn ges_3qubit(lambdas: [f64; 3]) -> Result<Subspace> {
    ces_4x2(lambdas)?
        .apply_local_unitary(&mixing_unitary_4(), 0)?
        .annotate("|1⟩,|2⟩ mixing on party 0")
        .factorize(&FactorizationScheme::qubit_pair(0))
        .map(|s| s.annotate("qubit-pair split of party 0"))
}

/// Rationalized sibling: vectors r|000⟩ + s|111⟩,
/// r(|010⟩+|100⟩) + s|001⟩, r(|010⟩−|100⟩) + s(|011⟩+|101⟩).
/// Produced by the same pipeline with the 1/√2 factors of the mixing
/// unitary dropped. The span is exactly that of [`ges_3qubit`] at
/// [`ges_3qubit_sibling_lambdas`]`(weights)`.
pub fn ges_3qubit_exact(weights: [(i64, i64); 3]) -> Result<ExactSubspace> {
    let mix = ExactMatrix::from_integers(4, 4, &[1, 0, 0, 0, 0, 1, 1, 0, 0, 1, -1, 0, 0, 0, 0, 1], 1)?;
    ces_4x2_exact(weights)?.apply_local(&mix, 0, &[4])?.factorize(&FactorizationScheme::qubit_pair(0))
}

/// Per-vector factors c with r/s = √(c·λ/(1−λ)) for the exact siblings of
/// the three-qubit families.
pub const GES_3QUBIT_RATIO_SCALE: [f64; 3] = [1.0, 0.5, 1.0];
pub const GES_3QUBIT_ORTHOGONAL_RATIO_SCALE: [f64; 3] = [1.0, 2.0, 1.0];

/// λ with r/s = √(c·λ/(1−λ)), i.e. λ = r²/(r² + c·s²).
fn sibling_lambdas(weights: [(i64, i64); 3], scale: [f64; 3]) -> [f64; 3] {
    core::array::from_fn(|k| {
        let (r, s) = (weights[k].0 as f64, weights[k].1 as f64);
        r * r / (r * r + scale[k] * s * s)
    })
}

/// Parameters at which [`ges_3qubit`] spans the same subspace as
/// [`ges_3qubit_exact`]: (r₁²/(r₁²+s₁²), 2r₂²/(2r₂²+s₂²), r₃²/(r₃²+s₃²)).
pub fn ges_3qubit_sibling_lambdas(weights: [(i64, i64); 3]) -> [f64; 3] {
    sibling_lambdas(weights, GES_3QUBIT_RATIO_SCALE)
}

/// Parameters at which [`ges_3qubit_orthogonal`] spans the same subspace as
/// [`ges_3qubit_orthogonal_exact`].
pub fn ges_3qubit_orthogonal_sibling_lambdas(weights: [(i64, i64); 3]) -> [f64; 3] {
    sibling_lambdas(weights, GES_3QUBIT_ORTHOGONAL_RATIO_SCALE)
}

/// Three-qubit subspace orthogonal to [`ges_3qubit`] with the same λ.
pub fn ges_3qubit_orthogonal(lambdas: [f64; 3]) -> Result<Subspace> {
    channels::check_open_unit(&lambdas)?;
    let [l1, l2, l3] = lambdas;
    let dims = Dims::new(vec![2, 2, 2])?;
    let mut v = vec![vec![ZERO; 8]; 3];
    let r = |x: f64| C64::new(x, 0.0);
    // Flat index of |abc⟩ is 4a + 2b + c.
    v[0][0] = r((1.0 - l1).sqrt());
    v[0][7] = r(-l1.sqrt());
    let h2 = ((1.0 - l2) / 2.0).sqrt();
    v[1][2] = r(h2);
    v[1][4] = r(h2);
    v[1][1] = r(-l2.sqrt());
    let (a3, b3) = (((1.0 - l3) / 2.0).sqrt(), (l3 / 2.0).sqrt());
    v[2][2] = r(a3);
    v[2][4] = r(-a3);
    v[2][3] = r(-b3);
    v[2][5] = r(-b3);
    let provenance = (1..=3).map(|k| format!("orthogonal partner {k}")).collect();
    Ok(Subspace::new(dims, v)?.with_provenance(provenance))
}

/// Sibling with √(1−λ) ↦ s and √λ ↦ r on the vector structures of
/// [`ges_3qubit_orthogonal`], 1/√2 factors dropped; see
/// [`ges_3qubit_orthogonal_sibling_lambdas`].
pub fn ges_3qubit_orthogonal_exact(weights: [(i64, i64); 3]) -> Result<ExactSubspace> {
    channels::check_weights(&weights)?;
    let [(r1, s1), (r2, s2), (r3, s3)] = weights;
    let dims = Dims::new(vec![2, 2, 2])?;
    let terms = [
        vec![(s1, vec![0, 0, 0]), (-r1, vec![1, 1, 1])],
        vec![(s2, vec![0, 1, 0]), (s2, vec![1, 0, 0]), (-r2, vec![0, 0, 1])],
        vec![(s3, vec![0, 1, 0]), (-s3, vec![1, 0, 0]), (-r3, vec![0, 1, 1]), (-r3, vec![1, 0, 1])],
    ];
    Ok(ExactSubspace::from_terms(dims, &terms)?.with_span_sibling(true))
}

/// Orthogonal complement of a subspace within its full space.
pub fn complement(sub: &Subspace) -> Result<Subspace> {
    let n = sub.dims().total();
    let comp = linalg::orthogonal_complement(&sub.vectors(), n, 1e-9);
    if comp.is_empty() {
        return Err(Error::InvalidDims("the subspace is the whole space".into()));
    }
    let k = comp.len();
    Ok(Subspace::new(sub.dims().clone(), comp)?.with_provenance((1..=k).map(|i| format!("complement vector {i}")).collect()))
}

// ---------------------------------------------------------------------------
// Four qubits

/// 7-dimensional completely entangled subspace of 4⊗4.
pub fn ces_4x4(lambdas: [f64; 7]) -> Result<Subspace> {
    let v = channels::isometry_from_kraus(&channels::ces_4x4_kraus(lambdas)?)?;
    isometry_range(&v, "four 4×7 Kraus operators")
}

pub fn ces_4x4_exact(weights: [(i64, i64); 7]) -> Result<ExactSubspace> {
    Ok(exact_range(&channels::ces_4x4_kraus_exact(weights)?)?.with_span_sibling(true))
}

const Q_HALVES: [i64; 16] = [-1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, 1, -1];
const T_THIRDS: [i64; 16] = [-1, 2, 0, 2, 2, -1, 0, 2, 0, 0, 3, 0, 2, 2, 0, -1];

/// Q = ½(J − 2I) on four levels.
pub fn q_matrix() -> CMatrix {
    ExactMatrix::from_integers(4, 4, &Q_HALVES, 2).expect("4×4").to_cmatrix()
}

/// Reflection T mixing levels 0, 1, 3 and fixing level 2.
pub fn t_matrix() -> CMatrix {
    ExactMatrix::from_integers(4, 4, &T_THIRDS, 3).expect("4×4").to_cmatrix()
}

/// Factorization of party A (first 4-level system): U₁ = QT then qubit pair.
pub fn four_qubit_scheme_a() -> FactorizationScheme {
    FactorizationScheme::qubit_pair(0).with_unitary(q_matrix().matmul(&t_matrix()))
}

/// Factorization of party B (located at `source`): U₂ = T then qubit pair.
pub fn four_qubit_scheme_b(source: usize) -> FactorizationScheme {
    FactorizationScheme::qubit_pair(source).with_unitary(t_matrix())
}

/// 4⊗4 family → QT on A, T on B → both parties split into qubit pairs.
pub fn ges_4qubit(lambdas: [f64; 7]) -> Result<Subspace> {
    ces_4x4(lambdas)?
        .factorize(&four_qubit_scheme_a())
        .map(|s| s.annotate("QT and qubit-pair split of party A"))?
        .factorize(&four_qubit_scheme_b(2))
        .map(|s| s.annotate("T and qubit-pair split of party B"))
}

pub fn ges_4qubit_exact(weights: [(i64, i64); 7]) -> Result<ExactSubspace> {
    let q = ExactMatrix::from_integers(4, 4, &Q_HALVES, 2)?;
    let t = ExactMatrix::from_integers(4, 4, &T_THIRDS, 3)?;
    let split = ExactMatrix::from_scheme(&FactorizationScheme::qubit_pair(0))?;
    ces_4x4_exact(weights)?.apply_local(&split.matmul(&q.matmul(&t)), 0, &[2, 2])?.apply_local(&split.matmul(&t), 2, &[2, 2])
}

// ---------------------------------------------------------------------------
// Three qutrits

/// Rank-one POVM {P⁽¹⁾, P⁽²⁾, P⁽³⁾} on C² parameterized by α ∈ (0, π/4).
#[derive(Clone, Debug, PartialEq)]
pub struct PovmTriple {
    pub alpha: f64,
    pub elements: [CMatrix; 3],
}

/// Nonzero eigenvalues 1/(1+sin2α), 1/(1+sin2α), 2sin2α/(1+sin2α).
pub fn povm_eigenvalues(alpha: f64) -> [f64; 3] {
    let s = (2.0 * alpha).sin();
    [1.0 / (1.0 + s), 1.0 / (1.0 + s), 2.0 * s / (1.0 + s)]
}

/// Diagonalizing rotations U_k(α); the first column spans the range of P⁽ᵏ⁾.
pub fn povm_rotations(alpha: f64) -> [[[f64; 2]; 2]; 3] {
    let (s, c) = (alpha.sin(), alpha.cos());
    let h = 0.5f64.sqrt();
    [[[c, -s], [s, c]], [[s, -c], [c, s]], [[h, h], [-h, h]]]
}

/// P⁽¹⁾ = A|u⟩⟨u|, P⁽²⁾ = A|v⟩⟨v|, P⁽³⁾ = I − P⁽¹⁾ − P⁽²⁾ with
/// u = (cos α, sin α), v = (sin α, cos α), A = 1/(1+sin 2α).
pub fn povm_triple(alpha: f64) -> Result<PovmTriple> {
    if !(alpha > 0.0 && alpha < FRAC_PI_4) {
        return Err(Error::OutOfRange(format!("α = {alpha} must lie in (0, π/4)")));
    }
    let a = povm_eigenvalues(alpha)[0];
    let (s, c) = (alpha.sin(), alpha.cos());
    let u = [C64::new(c, 0.0), C64::new(s, 0.0)];
    let v = [C64::new(s, 0.0), C64::new(c, 0.0)];
    let p1 = CMatrix::outer(&u).scale_real(a);
    let p2 = CMatrix::outer(&v).scale_real(a);
    let p3 = CMatrix::identity(2).sub(&p1).sub(&p2);
    Ok(PovmTriple { alpha, elements: [p1, p2, p3] })
}

/// Number of 2×2 blocks per Kraus operator, diagonal weights and
/// permutations defining a 9⊗3 completely entangled subspace of dimension
/// 16 (three 9×16 Kraus operators).
#[derive(Clone, Debug, PartialEq)]
pub struct QutritLayout {
    /// α of each of the five 2×2 blocks.
    pub alphas: [f64; 5],
    /// Rows: the six diagonal positions 10..15 of Kᵢ†Kᵢ; columns: operators.
    pub diagonal: [[f64; 3]; 6],
    /// Column c of W_op is the basis vector e_{perms[op][c]} (one-based).
    pub perms: [[usize; 9]; 3],
    /// POVM element used by operator i in block j.
    pub povm_assignment: [[usize; 3]; 5],
}

/// Blocks per operator in a three-qutrit layout.
pub const QUTRIT_BLOCKS: usize = 5;

impl QutritLayout {
    /// The published parameter set (α = π/6 in every block).
    pub fn published() -> Self {
        let a = core::f64::consts::PI / 6.0;
        QutritLayout {
            alphas: [a; 5],
            diagonal: [
                [2.0 / 3.0, 0.0, 1.0 / 3.0],
                [0.0, 0.25, 0.75],
                [1.0 / 6.0, 5.0 / 6.0, 0.0],
                [1.0 / 3.0, 0.0, 2.0 / 3.0],
                [0.0, 0.75, 0.25],
                [5.0 / 6.0, 1.0 / 6.0, 0.0],
            ],
            perms: [[1, 2, 3, 4, 7, 8, 5, 6, 9], [6, 4, 7, 5, 8, 1, 9, 3, 2], [4, 7, 8, 1, 3, 6, 2, 9, 5]],
            povm_assignment: [[0, 1, 2], [2, 0, 1], [1, 2, 0], [0, 2, 1], [2, 1, 0]],
        }
    }

    /// Checks the trace-preservation and counting constraints.
    pub fn validate(&self) -> Result<()> {
        if !block_layout_feasible(16, 9, 3, QUTRIT_BLOCKS) {
            return Err(Error::InvalidDims("block layout cannot cover the diagonal".into()));
        }
        for &a in &self.alphas {
            if !(a > 0.0 && a < FRAC_PI_4) {
                return Err(Error::OutOfRange(format!("block angle α = {a} must lie in (0, π/4)")));
            }
        }
        for (j, row) in self.povm_assignment.iter().enumerate() {
            let mut seen = [false; 3];
            for &e in row {
                if e >= 3 || core::mem::replace(&mut seen[e], true) {
                    return Err(Error::OutOfRange(format!("block {} does not use each POVM element once", j + 1)));
                }
            }
        }
        for (p, row) in self.diagonal.iter().enumerate() {
            if row.iter().any(|&x| !(0.0..1.0).contains(&x)) {
                return Err(Error::OutOfRange(format!("diagonal position {} has a weight outside [0, 1)", p + 1)));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::OutOfRange(format!("diagonal position {} weights add up to {sum}, not 1", p + 1)));
            }
        }
        for op in 0..3 {
            let used = self.diagonal.iter().filter(|row| row[op] > 0.0).count();
            if used > 9 - QUTRIT_BLOCKS {
                return Err(Error::OutOfRange(format!("operator {} needs {used} singular values beyond its blocks (at most {})", op + 1, 9 - QUTRIT_BLOCKS)));
            }
        }
        for (op, perm) in self.perms.iter().enumerate() {
            let mut seen = [false; 9];
            for &e in perm {
                if !(1..=9).contains(&e) || core::mem::replace(&mut seen[e - 1], true) {
                    return Err(Error::OutOfRange(format!("W{} is not a permutation of 1..9", op + 1)));
                }
            }
        }
        Ok(())
    }

    /// Kᵢ = Wᵢ Σᵢ Vᵢ.
    pub fn kraus(&self) -> Result<KrausChannel> {
        self.validate()?;
        let mut ks = Vec::with_capacity(3);
        for op in 0..3 {
            let mut sigma = CMatrix::zeros(9, 16);
            let mut v = CMatrix::identity(16);
            for (j, &alpha) in self.alphas.iter().enumerate() {
                let e = self.povm_assignment[j][op];
                sigma[(2 * j, 2 * j)] = C64::new(povm_eigenvalues(alpha)[e].sqrt(), 0.0);
                let u = povm_rotations(alpha)[e];
                for (r, row) in u.iter().enumerate() {
                    for (c, &x) in row.iter().enumerate() {
                        // Block of V is U†; U is real.
                        v[(2 * j + c, 2 * j + r)] = C64::new(x, 0.0);
                    }
                }
            }
            let mut k = 0;
            for (p, row) in self.diagonal.iter().enumerate() {
                if row[op] > 0.0 {
                    sigma[(2 * k + 1, 2 * QUTRIT_BLOCKS + p)] = C64::new(row[op].sqrt(), 0.0);
                    k += 1;
                }
            }
            let w = CMatrix::from_fn(9, 9, |r, c| if self.perms[op][c] == r + 1 { linalg::ONE } else { ZERO });
            ks.push(w.matmul(&sigma).matmul(&v));
        }
        KrausChannel::new(ks)
    }
}

/// Whether `blocks` rank-one 2×2 blocks per operator leave enough singular
/// values to cover the remaining diagonal positions, each with at least two
/// weights below one.
pub fn block_layout_feasible(in_dim: usize, out_dim: usize, ops: usize, blocks: usize) -> bool {
    if blocks > out_dim || 2 * blocks > in_dim {
        return false;
    }
    ops * (out_dim - blocks) >= 2 * (in_dim - 2 * blocks)
}

/// 3×3 unitary (reflection) mixing levels 2, 5, 6 of the 9-level party.
pub fn qutrit_mixing_unitary() -> CMatrix {
    let mut u = CMatrix::identity(9);
    let idx = [2, 5, 6];
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            u[(i, j)] = C64::new(if a == b { -1.0 / 3.0 } else { 2.0 / 3.0 }, 0.0);
        }
    }
    u
}

/// Splitting of the 9-level party into two qutrits, preceded by the mixing.
pub fn qutrit_scheme() -> FactorizationScheme {
    FactorizationScheme::qutrit_pair(0).with_unitary(qutrit_mixing_unitary())
}

/// The 16-dimensional 9⊗3 completely entangled subspace (before mixing and
/// factorization).
pub fn ges_3qutrit_intermediate(layout: &QutritLayout) -> Result<Subspace> {
    isometry_range(&channels::isometry_from_kraus(&layout.kraus()?)?, "three 9×16 Kraus operators")
}

pub fn ges_3qutrit_with(layout: &QutritLayout) -> Result<Subspace> {
    Ok(ges_3qutrit_intermediate(layout)?.factorize(&qutrit_scheme())?.annotate("2,5,6 mixing and qutrit-pair split of party 0"))
}

/// 16-dimensional three-qutrit subspace from the published layout.
pub fn ges_3qutrit() -> Result<Subspace> {
    ges_3qutrit_with(&QutritLayout::published())
}

/// Rationalized sibling: every block angle is arctan(1/2), which makes the
/// block amplitudes rational (2/3, 1/3, 2/3), and the weights of diagonal
/// position p become r²/(r²+s²), s²/(r²+s²) on the two operators the
/// published layout uses there.
pub fn ges_3qutrit_exact(weights: [(i64, i64); 6]) -> Result<ExactSubspace> {
    channels::check_weights(&weights)?;
    let mut layout = QutritLayout::published();
    layout.alphas = [0.5f64.atan(); 5];
    for (row, &(r, s)) in layout.diagonal.iter_mut().zip(&weights) {
        let (r2, s2) = ((r * r) as f64, (s * s) as f64);
        let mut first = true;
        for x in row.iter_mut().filter(|x| **x > 0.0) {
            *x = if first { r2 / (r2 + s2) } else { s2 / (r2 + s2) };
            first = false;
        }
    }
    let sub = ges_3qutrit_with(&layout)?;
    Ok(ExactSubspace::rationalize(&sub, DEFAULT_MAX_DEN, 1e-9)?.with_span_sibling(true))
}
