//! Per-bipartition entanglement certificates for subspaces.
//!
//! Exact path: a subspace W = span{w₁, …, w_k} contains a vector that is
//! product across A|Ā iff the pencil Σ β_μ a⁽μ⁾ of coefficient matrices has
//! rank ≤ 1 for some β ≠ 0, i.e. iff the homogeneous system of its 2×2 minors
//! has a nontrivial complex root.
//!
//! Numeric path: λ̄₁ = max over product φ of ‖Π_W φ‖², estimated by a seesaw
//! over (a, b) with random restarts. A seesaw only ever finds lower bounds on
//! λ̄₁, so numeric "entangled" verdicts carry a margin and "product_found" is
//! only reported with an explicit witness.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::Subspace;
use crate::exact::{ExactMatrix, ExactSubspace};
use crate::linalg::{self, C64, CMatrix};
use crate::polysys::{self, Monomial, MonomialOrder, Polynomial, TrivialRootReport};
use crate::tensor::{self, Bipartition, PureState};
use crate::{Error, Result, random};

/// Smallest 1 − λ̄₁ accepted as evidence of entanglement.
pub const NUMERIC_GAP: f64 = 1e-6;

/// Fewest restarts for which a numeric "entangled" verdict is issued.
pub const MIN_RESTARTS: usize = 200;

/// A product witness must reach ‖Π_W φ‖² > 1 − PRODUCT_RESIDUAL.
pub const PRODUCT_RESIDUAL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numeric,
    #[default]
    Both,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
            Mode::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Entangled,
    ProductFound,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Entangled => "entangled",
            Verdict::ProductFound => "product_found",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of the Groebner computation on the minor system.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactEvidence {
    pub variables: usize,
    pub minors: usize,
    /// None when the S-pair cap was reached.
    pub report: Option<TrivialRootReport>,
    pub spair_cap: usize,
}

impl ExactEvidence {
    pub fn capped(&self) -> bool {
        self.report.is_none()
    }

    /// One-line summary, e.g. "{1} on all 3 charts".
    pub fn summary(&self) -> String {
        match &self.report {
            None => format!("S-pair cap {} reached", self.spair_cap),
            Some(r) if r.trivial => format!("{{1}} on all {} charts", r.charts.len()),
            Some(r) => {
                let k = r.charts.last().map_or(0, |c| c.chart + 1);
                format!("solutions in chart {k} (basis of {} elements)", r.failing_basis.as_ref().map_or(0, Vec::len))
            }
        }
    }
}

/// Best product state found by the seesaw.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericEvidence {
    pub lambda1: f64,
    pub restarts: usize,
    /// Product vector a⊗b in the original subsystem order.
    pub witness: PureState,
    /// Objective after every sweep of the best restart.
    pub trace: Vec<f64>,
}

impl NumericEvidence {
    pub fn gap(&self) -> f64 {
        1.0 - self.lambda1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub cut: Bipartition,
    pub mode: Mode,
    pub verdict: Verdict,
    pub exact: Option<ExactEvidence>,
    pub numeric: Option<NumericEvidence>,
    /// The exact evidence concerns a rescaled family member (see
    /// [`ExactSubspace::span_sibling`]).
    pub span_sibling: bool,
}

impl Certificate {
    pub fn lambda1(&self) -> Option<f64> {
        self.numeric.as_ref().map(|n| n.lambda1)
    }
}

/// Seesaw settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeesawOptions {
    pub restarts: usize,
    pub max_sweeps: usize,
    /// A restart stops once a sweep improves the objective by less than this.
    pub tol: f64,
    pub seed: u64,
    /// S-pair cap for the exact path.
    pub spair_cap: usize,
}

impl Default for SeesawOptions {
    fn default() -> Self {
        SeesawOptions { restarts: MIN_RESTARTS, max_sweeps: 5000, tol: 1e-15, seed: 0, spair_cap: polysys::DEFAULT_SPAIR_CAP }
    }
}

impl SeesawOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }
}

// ---------------------------------------------------------------------------
// Exact path

/// Nonzero 2×2 minors of Σ β_μ A_μ, made monic and deduplicated.
pub fn pencil_minors(pencil: &[ExactMatrix]) -> Vec<Polynomial> {
    let Some(first) = pencil.first() else {
        return Vec::new();
    };
    let (rows, cols) = (first.rows(), first.cols());
    let vars = polysys::beta_vars(pencil.len());
    let order = MonomialOrder::Grevlex;
    let entry = |r: usize, c: usize| {
        let terms = pencil.iter().enumerate().map(|(mu, a)| (Monomial::var(mu), a[(r, c)].clone())).filter(|(_, x)| !x.is_zero()).collect();
        Polynomial::from_terms(vars.clone(), order, terms)
    };
    let lin: Vec<Vec<Polynomial>> = (0..rows).map(|r| (0..cols).map(|c| entry(r, c)).collect()).collect();
    let mut out: Vec<Polynomial> = Vec::new();
    for r1 in 0..rows {
        for r2 in r1 + 1..rows {
            for c1 in 0..cols {
                for c2 in c1 + 1..cols {
                    let m = lin[r1][c1].mul(&lin[r2][c2]).sub(&lin[r1][c2].mul(&lin[r2][c1]));
                    if m.is_zero() {
                        continue;
                    }
                    let m = m.monic();
                    if !out.contains(&m) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// C(d_A, 2)·C(d_B, 2): number of 2×2 minors before simplification.
pub fn minor_count(d_a: usize, d_b: usize) -> usize {
    d_a * d_a.saturating_sub(1) / 2 * (d_b * d_b.saturating_sub(1) / 2)
}

/// Minor system of the pencil of coefficient matrices across `cut`.
pub fn minor_system(sub: &ExactSubspace, cut: &Bipartition) -> Result<Vec<Polynomial>> {
    Ok(pencil_minors(&sub.matricize(cut)?))
}

/// Entangled iff the minor system has only the trivial root. Reaching the
/// S-pair cap yields an inconclusive certificate rather than an error.
pub fn certify_ces_exact(sub: &ExactSubspace, cut: &Bipartition, spair_cap: usize) -> Result<Certificate> {
    let polys = minor_system(sub, cut)?;
    let (report, verdict) = match polysys::only_trivial_root_report(&polys, spair_cap) {
        Ok(r) => {
            let v = if r.trivial { Verdict::Entangled } else { Verdict::ProductFound };
            (Some(r), v)
        }
        Err(Error::GroebnerLimit(_)) => (None, Verdict::Inconclusive),
        Err(e) => return Err(e),
    };
    let exact = ExactEvidence { variables: sub.dim(), minors: polys.len(), report, spair_cap };
    Ok(Certificate { cut: cut.clone(), mode: Mode::Exact, verdict, exact: Some(exact), numeric: None, span_sibling: sub.span_sibling() })
}

// ---------------------------------------------------------------------------
// Numeric path

/// One seesaw run from a given side-a start; returns (objective, a, b, trace).
/// (best λ, a, b, per-sweep trace) of one seesaw restart.
type SeesawRun = (f64, Vec<C64>, Vec<C64>, Vec<f64>);

fn seesaw_run(ms: &[CMatrix], mut a: Vec<C64>, opts: &SeesawOptions) -> SeesawRun {
    let (ra, cb) = (ms[0].rows(), ms[0].cols());
    let mut b = vec![C64::new(0.0, 0.0); cb];
    let mut trace = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for _ in 0..opts.max_sweeps {
        // Fix a: f = ⟨b|B|b⟩ with B = Σ u u†, u = Mᵀ ā.
        let mut bm = CMatrix::zeros(cb, cb);
        for m in ms {
            // vec_mul conjugates its argument: u = a†M = Mᵀā.
            let u = m.vec_mul(&a);
            bm = bm.add(&CMatrix::outer(&u));
        }
        b = linalg::top_eigenpair(&bm).1;
        // Fix b: f = ⟨a|A|a⟩ with A = Σ v v†, v = M b̄.
        let bbar: Vec<C64> = b.iter().map(|z| z.conj()).collect();
        let mut am = CMatrix::zeros(ra, ra);
        for m in ms {
            let v = m.mul_vec(&bbar);
            am = am.add(&CMatrix::outer(&v));
        }
        let (val, top) = linalg::top_eigenpair(&am);
        a = top;
        trace.push(val);
        let improved = val - best;
        best = best.max(val);
        if improved < opts.tol {
            break;
        }
    }
    (best, a, b, trace)
}

/// λ̄₁ of `sub` across `cut`: best seesaw value over `opts.restarts`
/// uniformly random side-a starts.
pub fn max_product_overlap(sub: &Subspace, cut: &Bipartition, opts: &SeesawOptions) -> Result<NumericEvidence> {
    if opts.restarts == 0 {
        return Err(Error::OutOfRange("the seesaw needs at least one restart".into()));
    }
    let ms = sub.basis().iter().map(|s| tensor::matricize(s, cut)).collect::<Result<Vec<_>>>()?;
    let (ra, _) = cut.shape(sub.dims());
    let mut best: Option<SeesawRun> = None;
    for r in 0..opts.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(random::derive_seed(opts.seed, r as u64));
        let run = seesaw_run(&ms, random::unit_vector(&mut rng, ra), opts);
        if best.as_ref().is_none_or(|b| run.0 > b.0) {
            best = Some(run);
        }
    }
    let (lambda1, a, b, trace) = best.expect("at least one restart");
    let witness = tensor::vectorize(&CMatrix::from_fn(a.len(), b.len(), |i, j| a[i] * b[j]), sub.dims(), cut)?;
    Ok(NumericEvidence { lambda1: lambda1.clamp(0.0, 1.0), restarts: opts.restarts, witness, trace })
}

/// Numeric verdict for one cut.
pub fn certify_numeric(sub: &Subspace, cut: &Bipartition, opts: &SeesawOptions) -> Result<Certificate> {
    let ev = max_product_overlap(sub, cut, opts)?;
    let residual = sub.overlap(ev.witness.amplitudes());
    let verdict = if residual > 1.0 - PRODUCT_RESIDUAL {
        Verdict::ProductFound
    } else if ev.gap() >= NUMERIC_GAP && ev.restarts >= MIN_RESTARTS {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate { cut: cut.clone(), mode: Mode::Numeric, verdict, exact: None, numeric: Some(ev), span_sibling: false })
}

/// Certificate for a single cut. `cut_index` feeds the seed derivation so
/// that each cut has an independent, reproducible random stream.
pub fn certify_cut(
    sub: &Subspace,
    exact: Option<&ExactSubspace>,
    cut: &Bipartition,
    cut_index: usize,
    mode: Mode,
    opts: &SeesawOptions,
) -> Result<Certificate> {
    let cut_opts = opts.with_seed(random::derive_seed(opts.seed, cut_index as u64));
    if let Some(e) = exact {
        if e.dims() != sub.dims() {
            return Err(Error::InvalidDims(format!("exact sibling on {} for a subspace on {}", e.dims(), sub.dims())));
        }
    }
    match mode {
        Mode::Numeric => certify_numeric(sub, cut, &cut_opts),
        Mode::Exact => {
            let e = exact.ok_or(Error::MissingExact)?;
            certify_ces_exact(e, cut, opts.spair_cap)
        }
        Mode::Both => {
            let numeric = certify_numeric(sub, cut, &cut_opts)?;
            let Some(e) = exact else {
                return Ok(Certificate { mode: Mode::Both, ..numeric });
            };
            let exact_cert = certify_ces_exact(e, cut, opts.spair_cap)?;
            // A decisive exact verdict takes precedence.
            let verdict = if exact_cert.verdict == Verdict::Inconclusive { numeric.verdict } else { exact_cert.verdict };
            Ok(Certificate { cut: cut.clone(), mode: Mode::Both, verdict, exact: exact_cert.exact, numeric: numeric.numeric, span_sibling: e.span_sibling() })
        }
    }
}

/// One certificate per canonical bipartition; W is genuinely entangled iff
/// all verdicts are `Entangled`.
pub fn certify_ges(sub: &Subspace, exact: Option<&ExactSubspace>, mode: Mode, opts: &SeesawOptions) -> Result<Vec<Certificate>> {
    let n = sub.dims().parties();
    if n < 2 {
        return Err(Error::InvalidDims("certification needs at least two parties".into()));
    }
    Bipartition::all(n).iter().enumerate().map(|(i, cut)| certify_cut(sub, exact, cut, i, mode, opts)).collect()
}

/// Whether every certificate says entangled.
pub fn all_entangled(certs: &[Certificate]) -> bool {
    !certs.is_empty() && certs.iter().all(|c| c.verdict == Verdict::Entangled)
}

/// λ̄₁ per cut and G_GME(W) = 1 − max over cuts of λ̄₁.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceEntanglement {
    pub per_cut: Vec<CutOverlap>,
    pub g_gme: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutOverlap {
    pub cut: Bipartition,
    /// Seesaw estimate of λ̄₁.
    pub lambda1: f64,
    /// max over basis vectors of the largest squared Schmidt coefficient;
    /// a rigorous lower bound on λ̄₁.
    pub basis_lambda1: f64,
}

pub fn subspace_entanglement(sub: &Subspace, opts: &SeesawOptions) -> Result<SubspaceEntanglement> {
    let cuts = Bipartition::all(sub.dims().parties());
    let per_cut = cuts.iter().enumerate().map(|(i, cut)| cut_overlap(sub, cut, i, opts)).collect::<Result<Vec<_>>>()?;
    Ok(entanglement_from_cuts(per_cut))
}

/// λ̄₁ data for one cut, seeded like [`certify_cut`].
pub fn cut_overlap(sub: &Subspace, cut: &Bipartition, cut_index: usize, opts: &SeesawOptions) -> Result<CutOverlap> {
    let cut_opts = opts.with_seed(random::derive_seed(opts.seed, cut_index as u64));
    let ev = max_product_overlap(sub, cut, &cut_opts)?;
    let mut basis_lambda1: f64 = 0.0;
    for s in sub.basis() {
        let sv = tensor::schmidt_coefficients(s, cut)?;
        basis_lambda1 = basis_lambda1.max(sv[0] * sv[0]);
    }
    // The seesaw can only improve on the best basis vector.
    Ok(CutOverlap { cut: cut.clone(), lambda1: ev.lambda1.max(basis_lambda1), basis_lambda1 })
}

pub fn entanglement_from_cuts(per_cut: Vec<CutOverlap>) -> SubspaceEntanglement {
    let worst = per_cut.iter().map(|c| c.lambda1).fold(0.0, f64::max);
    SubspaceEntanglement { per_cut, g_gme: (1.0 - worst).clamp(0.0, 1.0) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Dims;
    use crate::constructions;
    use alloc::string::ToString;

    fn exact(dims: &[usize], terms: &[Vec<(i64, Vec<usize>)>]) -> ExactSubspace {
        ExactSubspace::from_terms(Dims::new(dims.to_vec()).unwrap(), terms).unwrap()
    }

    fn cut0(n: usize) -> Bipartition {
        Bipartition::new(&[0], n).unwrap()
    }

    #[test]
    fn diagonal_pencil_minor() {
        let s = exact(&[2, 2], &[vec![(1, vec![0, 0])], vec![(1, vec![1, 1])]]);
        let m = minor_system(&s, &cut0(2)).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].to_string(), "b1*b2");
        let c = certify_ces_exact(&s, &cut0(2), 1000).unwrap();
        assert_eq!(c.verdict, Verdict::ProductFound);
    }

    #[test]
    fn bell_pencil() {
        let s = exact(&[2, 2], &[vec![(1, vec![0, 0]), (1, vec![1, 1])]]);
        let m = minor_system(&s, &cut0(2)).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].to_string(), "b1^2");
        assert_eq!(certify_ces_exact(&s, &cut0(2), 1000).unwrap().verdict, Verdict::Entangled);
    }

    #[test]
    fn ces_4x2_minor_count() {
        let s = constructions::ces_4x2_exact([(1, 1); 3]).unwrap();
        assert_eq!(minor_count(4, 2), 6);
        let m = minor_system(&s, &cut0(2)).unwrap();
        assert!(m.len() <= 6 && !m.is_empty());
        assert_eq!(certify_ces_exact(&s, &cut0(2), 100_000).unwrap().verdict, Verdict::Entangled);
    }

    #[test]
    fn three_qubit_sibling_all_cuts() {
        let s = constructions::ges_3qubit_exact([(1, 1); 3]).unwrap();
        for cut in Bipartition::all(3) {
            let c = certify_ces_exact(&s, &cut, 100_000).unwrap();
            assert_eq!(c.verdict, Verdict::Entangled, "{cut}");
            assert!(c.span_sibling);
        }
    }

    #[test]
    fn seesaw_known_values() {
        let opts = SeesawOptions::default().with_restarts(20);
        let a = constructions::antisymmetric_subspace(3).unwrap();
        let ev = max_product_overlap(&a, &cut0(2), &opts).unwrap();
        assert!((ev.lambda1 - 0.5).abs() < 1e-9);
        for w in ev.trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
        let bell = Subspace::new(
            Dims::new(vec![2, 2]).unwrap(),
            vec![{
                let h = C64::new(0.5f64.sqrt(), 0.0);
                vec![h, C64::new(0.0, 0.0), C64::new(0.0, 0.0), h]
            }],
        )
        .unwrap();
        assert!((max_product_overlap(&bell, &cut0(2), &opts).unwrap().lambda1 - 0.5).abs() < 1e-9);
        let full =
            Subspace::new(Dims::new(vec![2, 2]).unwrap(), (0..4).map(|i| (0..4).map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect()).collect())
                .unwrap();
        let c = certify_numeric(&full, &cut0(2), &opts).unwrap();
        assert_eq!(c.verdict, Verdict::ProductFound);
    }

    #[test]
    fn ghz_subspace_entanglement() {
        let h = C64::new(0.5f64.sqrt(), 0.0);
        let mut v = vec![C64::new(0.0, 0.0); 8];
        v[0] = h;
        v[7] = h;
        let s = Subspace::new(Dims::new(vec![2, 2, 2]).unwrap(), vec![v]).unwrap();
        let e = subspace_entanglement(&s, &SeesawOptions::default().with_restarts(10)).unwrap();
        assert_eq!(e.per_cut.len(), 3);
        for c in &e.per_cut {
            assert!((c.lambda1 - 0.5).abs() < 1e-9);
        }
        assert!((e.g_gme - 0.5).abs() < 1e-9);
    }

    #[test]
    fn exact_mode_requires_sibling() {
        let a = constructions::antisymmetric_subspace(3).unwrap();
        assert_eq!(certify_ges(&a, None, Mode::Exact, &SeesawOptions::default()).unwrap_err(), Error::MissingExact);
    }
}
