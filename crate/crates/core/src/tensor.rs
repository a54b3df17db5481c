//! States on tensor-product spaces and the reshaping operations between them.
//!
//! A multi-index (i₀, i₁, …, i_{n−1}) maps to the flat index
//! i₀·d₁⋯d_{n−1} + … + i_{n−1}: subsystem 0 varies slowest.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{self, C64, CMatrix, ZERO};
use crate::{Error, Result, Tolerances};

/// Local dimensions of a multipartite system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dims(Vec<usize>);

impl Dims {
    pub fn new(locals: Vec<usize>) -> Result<Self> {
        if locals.is_empty() {
            return Err(Error::InvalidDims("empty dimension list".into()));
        }
        if let Some(d) = locals.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDims(format!("local dimension {d} < 2")));
        }
        Ok(Dims(locals))
    }

    pub fn locals(&self) -> &[usize] {
        &self.0
    }

    /// Number of subsystems.
    pub fn parties(&self) -> usize {
        self.0.len()
    }

    /// Dimension of the full space.
    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Dimension of the joint space of the listed subsystems.
    pub fn dim_of(&self, subsystems: &[usize]) -> usize {
        subsystems.iter().map(|&i| self.0[i]).product()
    }

    /// Splits a flat index into its per-subsystem digits.
    pub fn digits(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (k, &d) in self.0.iter().enumerate().rev() {
            out[k] = flat % d;
            flat /= d;
        }
        out
    }

    pub fn flat(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.0).fold(0, |acc, (&i, &d)| acc * d + i)
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("⊗")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Split A|Ā of the subsystems, stored in canonical form (0 ∈ A).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    parties: usize,
    side_a: Vec<usize>,
}

impl Bipartition {
    /// Builds the cut separating `side` from the rest of `parties`
    /// subsystems. Either side may be given; the result is canonicalized so
    /// that it contains subsystem 0.
    pub fn new(side: &[usize], parties: usize) -> Result<Self> {
        let mut s: Vec<usize> = side.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || s.len() >= parties {
            return Err(Error::InvalidBipartition(format!("{side:?} is not a proper nonempty subset of {parties} parties")));
        }
        if let Some(&bad) = s.iter().find(|&&i| i >= parties) {
            return Err(Error::InvalidBipartition(format!("subsystem {bad} out of range for {parties} parties")));
        }
        if s[0] != 0 {
            s = (0..parties).filter(|i| !s.contains(i)).collect();
        }
        Ok(Bipartition { parties, side_a: s })
    }

    /// All 2^(n−1) − 1 canonical cuts, ordered by |A| and then lexicographically.
    pub fn all(parties: usize) -> Vec<Bipartition> {
        let mut cuts = Vec::new();
        if parties < 2 {
            return cuts;
        }
        // Subsets of {1..n-1} joined with 0; the full set is excluded.
        for mask in 0u64..(1u64 << (parties - 1)) - 1 {
            let mut side = vec![0];
            side.extend((1..parties).filter(|i| mask >> (i - 1) & 1 == 1));
            cuts.push(Bipartition { parties, side_a: side });
        }
        cuts.sort_by(|a, b| a.side_a.len().cmp(&b.side_a.len()).then_with(|| a.side_a.cmp(&b.side_a)));
        cuts
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> Vec<usize> {
        (0..self.parties).filter(|i| !self.side_a.contains(i)).collect()
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn check(&self, dims: &Dims) -> Result<()> {
        if dims.parties() != self.parties {
            return Err(Error::InvalidBipartition(format!("cut over {} parties applied to {} subsystems", self.parties, dims.parties())));
        }
        Ok(())
    }

    /// (dim A, dim Ā) for the given dimensions.
    pub fn shape(&self, dims: &Dims) -> (usize, usize) {
        let a = dims.dim_of(&self.side_a);
        (a, dims.total() / a)
    }

    /// Label such as "A|BC" (parties lettered from A).
    pub fn label(&self) -> String {
        let letter = |i: usize| char::from(b'A' + (i % 26) as u8);
        let mut s: String = self.side_a.iter().map(|&i| letter(i)).collect();
        s.push('|');
        s.extend(self.side_b().into_iter().map(letter));
        s
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// For every (row, col) of the A|Ā reshaping, the flat index it comes from.
///
/// Rows enumerate the A digits and columns the Ā digits, each in ascending
/// subsystem order with the lowest subsystem slowest.
pub fn cut_permutation(dims: &Dims, side_a: &[usize]) -> (usize, usize, Vec<usize>) {
    let n = dims.parties();
    let side_b: Vec<usize> = (0..n).filter(|i| !side_a.contains(i)).collect();
    let rows = dims.dim_of(side_a);
    let cols = dims.dim_of(&side_b);
    let locals = dims.locals();
    // Stride of each subsystem in the flat index.
    let mut stride = vec![1usize; n];
    for k in (0..n.saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * locals[k + 1];
    }
    let offsets = |subs: &[usize], count: usize| -> Vec<usize> {
        let mut out = Vec::with_capacity(count);
        let mut digits = vec![0usize; subs.len()];
        for _ in 0..count {
            out.push(subs.iter().zip(&digits).map(|(&s, &d)| d * stride[s]).sum());
            for k in (0..subs.len()).rev() {
                digits[k] += 1;
                if digits[k] < locals[subs[k]] {
                    break;
                }
                digits[k] = 0;
            }
        }
        out
    };
    let ra = offsets(side_a, rows);
    let cb = offsets(&side_b, cols);
    let mut perm = Vec::with_capacity(rows * cols);
    for &r in &ra {
        for &c in &cb {
            perm.push(r + c);
        }
    }
    (rows, cols, perm)
}

/// Reshapes amplitudes into the row-major A|Ā coefficient matrix.
pub fn matricize_slice<T: Clone>(amps: &[T], dims: &Dims, cut: &Bipartition) -> (usize, usize, Vec<T>) {
    let (rows, cols, perm) = cut_permutation(dims, cut.side_a());
    (rows, cols, perm.iter().map(|&i| amps[i].clone()).collect())
}

/// Inverse of [`matricize_slice`].
pub fn vectorize_slice<T: Clone + Default>(matrix: &[T], dims: &Dims, cut: &Bipartition) -> Vec<T> {
    let (_, _, perm) = cut_permutation(dims, cut.side_a());
    let mut out = vec![T::default(); perm.len()];
    for (k, &i) in perm.iter().enumerate() {
        out[i] = matrix[k].clone();
    }
    out
}

/// Applies `m` (rows × dims[subsystem]) to one subsystem of a flat vector.
/// The output has `m.rows()` levels in that position.
pub fn apply_local_slice(amps: &[C64], dims: &[usize], subsystem: usize, m: &CMatrix) -> Vec<C64> {
    let left: usize = dims[..subsystem].iter().product();
    let right: usize = dims[subsystem + 1..].iter().product();
    let din = dims[subsystem];
    let dout = m.rows();
    let mut out = vec![ZERO; left * dout * right];
    for l in 0..left {
        for j in 0..din {
            for r in 0..right {
                let a = amps[(l * din + j) * right + r];
                if a == ZERO {
                    continue;
                }
                for i in 0..dout {
                    out[(l * dout + i) * right + r] += m[(i, j)] * a;
                }
            }
        }
    }
    out
}

/// Normalized pure state on a tensor-product space.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    dims: Dims,
    amps: Vec<C64>,
}

impl PureState {
    /// Validates length and normalization (structural tolerance).
    pub fn new(dims: Dims, amps: Vec<C64>) -> Result<Self> {
        Self::with_tolerance(dims, amps, Tolerances::DEFAULT.structural)
    }

    pub fn with_tolerance(dims: Dims, amps: Vec<C64>, tol: f64) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(Error::DimensionMismatch { expected: dims.total(), found: amps.len() });
        }
        let n = linalg::norm(&amps);
        if (n - 1.0).abs() > tol {
            return Err(Error::NotNormalized(n));
        }
        Ok(PureState { dims, amps })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(dims: Dims, mut amps: Vec<C64>) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(Error::DimensionMismatch { expected: dims.total(), found: amps.len() });
        }
        if linalg::normalize(&mut amps) == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        Ok(PureState { dims, amps })
    }

    /// Computational basis state |digits⟩.
    pub fn basis(dims: Dims, digits: &[usize]) -> Result<Self> {
        if digits.len() != dims.parties() || digits.iter().zip(dims.locals()).any(|(&i, &d)| i >= d) {
            return Err(Error::OutOfRange(format!("basis label {digits:?} for dims {dims}")));
        }
        let mut amps = vec![ZERO; dims.total()];
        amps[dims.flat(digits)] = linalg::ONE;
        Ok(PureState { dims, amps })
    }

    /// Product state |v₀⟩⊗|v₁⟩⊗…; factors are normalized first.
    pub fn product(factors: &[Vec<C64>]) -> Result<Self> {
        let dims = Dims::new(factors.iter().map(|f| f.len()).collect())?;
        let mut amps = alloc::vec![linalg::ONE];
        for f in factors {
            let mut f = f.clone();
            if linalg::normalize(&mut f) == 0.0 {
                return Err(Error::NotNormalized(0.0));
            }
            amps = linalg::kron_vec(&amps, &f);
        }
        Ok(PureState { dims, amps })
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        linalg::inner(&self.amps, &other.amps)
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        DensityMatrix { dims: self.dims.clone(), matrix: CMatrix::outer(&self.amps) }
    }

    pub fn kron(&self, other: &PureState) -> PureState {
        let mut locals = self.dims.locals().to_vec();
        locals.extend_from_slice(other.dims.locals());
        PureState { dims: Dims(locals), amps: linalg::kron_vec(&self.amps, &other.amps) }
    }
}

/// Coefficient matrix of `psi` across `cut` (rows: A basis, columns: Ā basis).
pub fn matricize(psi: &PureState, cut: &Bipartition) -> Result<CMatrix> {
    cut.check(psi.dims())?;
    let (r, c, data) = matricize_slice(psi.amplitudes(), psi.dims(), cut);
    CMatrix::from_vec(r, c, data)
}

/// Inverse of [`matricize`].
pub fn vectorize(m: &CMatrix, dims: &Dims, cut: &Bipartition) -> Result<PureState> {
    cut.check(dims)?;
    let (r, c) = cut.shape(dims);
    if (m.rows(), m.cols()) != (r, c) {
        return Err(Error::DimensionMismatch { expected: r * c, found: m.rows() * m.cols() });
    }
    let amps = vectorize_slice(m.as_slice(), dims, cut);
    PureState::new(dims.clone(), amps)
}

/// Schmidt coefficients across `cut`, descending.
pub fn schmidt_coefficients(psi: &PureState, cut: &Bipartition) -> Result<Vec<f64>> {
    Ok(linalg::singular_values(&matricize(psi, cut)?))
}

/// Reduced state of the A side of `cut`: M M† with M the coefficient matrix.
pub fn reduced_density(psi: &PureState, cut: &Bipartition) -> Result<CMatrix> {
    let m = matricize(psi, cut)?;
    Ok(m.matmul(&m.adjoint()))
}

/// Density operator on a tensor-product space.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dims: Dims,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (structural tolerance).
    pub fn new(dims: Dims, matrix: CMatrix) -> Result<Self> {
        let tol = Tolerances::DEFAULT.structural;
        let n = dims.total();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.rows() });
        }
        let h = matrix.hermitian_deviation();
        if h > tol {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian (deviation {h:e})")));
        }
        let t = matrix.trace();
        if (t.re - 1.0).abs() > tol || t.im.abs() > tol {
            return Err(Error::InvalidDensityMatrix(format!("trace {} + {}i", t.re, t.im)));
        }
        let min = linalg::eigvalsh(&matrix).last().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {min:e}")));
        }
        Ok(DensityMatrix { dims, matrix })
    }

    /// Wraps a matrix without validation (for outputs of validated maps).
    pub(crate) fn from_parts(dims: Dims, matrix: CMatrix) -> Self {
        DensityMatrix { dims, matrix }
    }

    pub fn maximally_mixed(dims: Dims) -> Self {
        let n = dims.total();
        DensityMatrix { dims, matrix: CMatrix::identity(n).scale_real(1.0 / n as f64) }
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Tr(ρ²).
    pub fn purity(&self) -> f64 {
        let m = &self.matrix;
        m.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Tr(ρ P) for a Hermitian P.
    pub fn expectation(&self, p: &CMatrix) -> f64 {
        let n = self.matrix.rows();
        let mut acc = ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += self.matrix[(i, j)] * p[(j, i)];
            }
        }
        acc.re
    }
}

/// Partial trace keeping the listed subsystems (in ascending order).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.dims().parties();
    let mut k: Vec<usize> = keep.to_vec();
    k.sort_unstable();
    k.dedup();
    if k.is_empty() || k.len() >= n || k.iter().any(|&i| i >= n) {
        return Err(Error::InvalidBipartition(format!("cannot keep {keep:?} out of {n} subsystems")));
    }
    let (rows, cols, perm) = cut_permutation(rho.dims(), &k);
    let m = rho.matrix();
    let out = CMatrix::from_fn(rows, rows, |i, j| {
        let mut acc = ZERO;
        for c in 0..cols {
            acc += m[(perm[i * cols + c], perm[j * cols + c])];
        }
        acc
    });
    let dims = Dims(k.iter().map(|&i| rho.dims().locals()[i]).collect());
    Ok(DensityMatrix::from_parts(dims, out))
}

/// Partial transpose on the Ā side of `cut`.
pub fn partial_transpose(rho: &DensityMatrix, cut: &Bipartition) -> Result<CMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.dims(), cut)
}

/// Partial transpose of any square operator on the Ā side of `cut`.
pub fn partial_transpose_matrix(m: &CMatrix, dims: &Dims, cut: &Bipartition) -> Result<CMatrix> {
    cut.check(dims)?;
    if m.rows() != dims.total() || !m.is_square() {
        return Err(Error::DimensionMismatch { expected: dims.total(), found: m.rows() });
    }
    let (ra, cb, perm) = cut_permutation(dims, cut.side_a());
    let mut out = CMatrix::zeros(m.rows(), m.cols());
    for a1 in 0..ra {
        for b1 in 0..cb {
            for a2 in 0..ra {
                for b2 in 0..cb {
                    out[(perm[a1 * cb + b1], perm[a2 * cb + b2])] = m[(perm[a1 * cb + b2], perm[a2 * cb + b1])];
                }
            }
        }
    }
    Ok(out)
}

/// Sum of singular values.
pub fn trace_norm(m: &CMatrix) -> f64 {
    linalg::singular_values(m).iter().sum()
}

/// Sum of the `k` largest eigenvalues of a Hermitian matrix.
pub fn ky_fan_norm(m: &CMatrix, k: usize) -> Result<f64> {
    if k == 0 || k > m.rows() {
        return Err(Error::OutOfRange(format!("Ky Fan index {k} for side {}", m.rows())));
    }
    Ok(linalg::eigvalsh(m).iter().take(k).sum())
}

/// Applies a linear map `m` on one subsystem, replacing that local factor by
/// `new_locals` (whose product must equal `m.rows()`).
pub fn apply_local_map(psi: &PureState, m: &CMatrix, subsystem: usize, new_locals: &[usize]) -> Result<Vec<C64>> {
    let dims = psi.dims();
    if subsystem >= dims.parties() {
        return Err(Error::OutOfRange(format!("subsystem {subsystem}")));
    }
    if m.cols() != dims.locals()[subsystem] {
        return Err(Error::DimensionMismatch { expected: dims.locals()[subsystem], found: m.cols() });
    }
    let prod: usize = new_locals.iter().product();
    if prod != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: prod });
    }
    Ok(apply_local_slice(psi.amplitudes(), dims.locals(), subsystem, m))
}

/// Dimension list with entry `subsystem` replaced by `new_locals`.
pub fn split_dims(dims: &Dims, subsystem: usize, new_locals: &[usize]) -> Result<Dims> {
    let mut locals = dims.locals()[..subsystem].to_vec();
    locals.extend_from_slice(new_locals);
    locals.extend_from_slice(&dims.locals()[subsystem + 1..]);
    Dims::new(locals)
}

/// U acting on one subsystem.
pub fn apply_local_unitary(psi: &PureState, u: &CMatrix, subsystem: usize) -> Result<PureState> {
    u.check_unitary(Tolerances::DEFAULT.structural)?;
    let d = psi.dims().locals().get(subsystem).copied().ok_or_else(|| Error::OutOfRange(format!("subsystem {subsystem}")))?;
    let amps = apply_local_map(psi, u, subsystem, &[d])?;
    Ok(PureState { dims: psi.dims().clone(), amps })
}

/// Re-reads one local factor of dimension d₁d₂ as a pair of subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationScheme {
    pub source_subsystem: usize,
    pub new_dims: (usize, usize),
    /// `basis_map[l]` is the pair of labels assigned to source label l.
    pub basis_map: Vec<(usize, usize)>,
    /// Unitary applied on the source subsystem before relabeling.
    pub unitary: Option<CMatrix>,
}

impl FactorizationScheme {
    /// l ↦ (l div d₂, l mod d₂).
    pub fn standard(source: usize, d1: usize, d2: usize) -> Self {
        FactorizationScheme { source_subsystem: source, new_dims: (d1, d2), basis_map: (0..d1 * d2).map(|l| (l / d2, l % d2)).collect(), unitary: None }
    }

    /// Four levels as two qubits: |0⟩,|1⟩,|2⟩,|3⟩ ↦ |00⟩,|01⟩,|10⟩,|11⟩.
    pub fn qubit_pair(source: usize) -> Self {
        Self::standard(source, 2, 2)
    }

    /// Nine levels as two qutrits with the relabeling used for the
    /// three-qutrit subspace.
    pub fn qutrit_pair(source: usize) -> Self {
        FactorizationScheme {
            source_subsystem: source,
            new_dims: (3, 3),
            basis_map: vec![(2, 2), (2, 0), (2, 1), (1, 0), (0, 2), (0, 1), (0, 0), (1, 2), (1, 1)],
            unitary: None,
        }
    }

    pub fn with_unitary(mut self, u: CMatrix) -> Self {
        self.unitary = Some(u);
        self
    }

    /// Checks the scheme against the dimensions it will be applied to.
    pub fn validate(&self, dims: &Dims) -> Result<()> {
        let s = self.source_subsystem;
        let d = *dims.locals().get(s).ok_or_else(|| Error::InvalidScheme(format!("source subsystem {s} out of range")))?;
        let (d1, d2) = self.new_dims;
        if d1 < 2 || d2 < 2 || d1 * d2 != d {
            return Err(Error::InvalidScheme(format!("{d1}x{d2} does not factor a {d}-level subsystem")));
        }
        if self.basis_map.len() != d {
            return Err(Error::InvalidScheme(format!("basis map has {} entries, expected {d}", self.basis_map.len())));
        }
        let mut seen = vec![false; d];
        for &(a, b) in &self.basis_map {
            if a >= d1 || b >= d2 || core::mem::replace(&mut seen[a * d2 + b], true) {
                return Err(Error::InvalidScheme("basis map is not a bijection".into()));
            }
        }
        if let Some(u) = &self.unitary {
            if u.rows() != d {
                return Err(Error::InvalidScheme(format!("unitary side {} != {d}", u.rows())));
            }
            u.check_unitary(Tolerances::DEFAULT.structural)?;
        }
        Ok(())
    }

    /// The full d×d map (permutation after optional unitary) onto the
    /// pair space ordered as (a, b) ↦ a·d₂ + b.
    pub fn matrix(&self) -> CMatrix {
        let d = self.basis_map.len();
        let d2 = self.new_dims.1;
        let p = CMatrix::from_fn(d, d, |r, l| {
            let (a, b) = self.basis_map[l];
            if a * d2 + b == r { linalg::ONE } else { ZERO }
        });
        match &self.unitary {
            Some(u) => p.matmul(u),
            None => p,
        }
    }
}

/// Splits one subsystem of `psi` into two according to `scheme`.
pub fn factorize_subsystem(psi: &PureState, scheme: &FactorizationScheme) -> Result<PureState> {
    scheme.validate(psi.dims())?;
    let (d1, d2) = scheme.new_dims;
    let amps = apply_local_map(psi, &scheme.matrix(), scheme.source_subsystem, &[d1, d2])?;
    let dims = split_dims(psi.dims(), scheme.source_subsystem, &[d1, d2])?;
    Ok(PureState { dims, amps })
}
