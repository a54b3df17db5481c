//! JSON file formats. Complex numbers are `[re, im]` pairs; exact amplitudes
//! are sparse `[index, "p/q"]` lists in the Gaussian-rational text form.

use entsub_core::certify::{Certificate, SubspaceEntanglement};
use entsub_core::channels::KrausChannel;
use entsub_core::constructions::Subspace;
use entsub_core::exact::ExactSubspace;
use entsub_core::measures::BoundReport;
use entsub_core::polysys::GaussianRational;
use entsub_core::{Bipartition, C64, CMatrix, DensityMatrix, Dims, PureState};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub type Complex = [f64; 2];

pub fn to_pair(z: C64) -> Complex {
    [z.re, z.im]
}

pub fn from_pair(p: &Complex) -> C64 {
    C64::new(p[0], p[1])
}

pub fn vector_json(v: &[C64]) -> Vec<Complex> {
    v.iter().copied().map(to_pair).collect()
}

pub fn vector_from_json(v: &[Complex]) -> Vec<C64> {
    v.iter().map(from_pair).collect()
}

pub fn matrix_json(m: &CMatrix) -> Vec<Vec<Complex>> {
    (0..m.rows()).map(|i| vector_json(m.row(i))).collect()
}

pub fn matrix_from_json(rows: &[Vec<Complex>]) -> Result<CMatrix, CliError> {
    Ok(CMatrix::from_rows(&rows.iter().map(|r| vector_from_json(r)).collect::<Vec<_>>())?)
}

/// Spanning set of a subspace, optionally with its exact sibling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub dim: usize,
    pub vectors: Vec<Vec<Complex>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactFile {
    /// The exact span is a rescaled family member, not the floating point span.
    pub span_sibling: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<[i64; 2]>>,
    /// Nonzero entries of each spanning vector.
    pub vectors: Vec<Vec<(usize, String)>>,
}

impl SubspaceFile {
    pub fn new(sub: &Subspace, exact: Option<&ExactSubspace>) -> Self {
        SubspaceFile {
            seed: None,
            family: None,
            params: None,
            dims: sub.dims().locals().to_vec(),
            dim: sub.dim(),
            vectors: sub.basis().iter().map(|s| vector_json(s.amplitudes())).collect(),
            provenance: sub.provenance().to_vec(),
            exact: exact.map(ExactFile::new),
        }
    }

    /// Orthonormal subspace; accepts any linearly independent spanning set.
    pub fn subspace(&self) -> Result<Subspace, CliError> {
        let dims = Dims::new(self.dims.clone())?;
        let vs: Vec<Vec<C64>> = self.vectors.iter().map(|v| vector_from_json(v)).collect();
        let sub = match Subspace::new(dims.clone(), vs.clone()) {
            Ok(s) => s,
            Err(_) => Subspace::orthonormalized(dims, &vs)?,
        };
        Ok(sub.with_provenance(self.provenance.clone()))
    }

    pub fn exact_subspace(&self) -> Result<Option<ExactSubspace>, CliError> {
        let Some(e) = &self.exact else { return Ok(None) };
        let dims = Dims::new(self.dims.clone())?;
        let n = dims.total();
        let mut basis = Vec::with_capacity(e.vectors.len());
        for v in &e.vectors {
            let mut full = vec![GaussianRational::zero(); n];
            for (i, s) in v {
                let slot = full.get_mut(*i).ok_or_else(|| CliError::Usage(format!("exact amplitude index {i} outside a {n}-dimensional space")))?;
                *slot = s.parse()?;
            }
            basis.push(full);
        }
        Ok(Some(ExactSubspace::new(dims, basis)?.with_span_sibling(e.span_sibling)))
    }
}

impl ExactFile {
    pub fn new(e: &ExactSubspace) -> Self {
        ExactFile {
            span_sibling: e.span_sibling(),
            weights: None,
            vectors: e.basis().iter().map(|v| v.iter().enumerate().filter(|(_, z)| !z.is_zero()).map(|(i, z)| (i, z.to_string())).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<Complex>,
}

impl StateFile {
    pub fn state(&self) -> Result<PureState, CliError> {
        Ok(PureState::new(Dims::new(self.dims.clone())?, vector_from_json(&self.amplitudes))?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityFile {
    pub dims: Vec<usize>,
    pub matrix: Vec<Vec<Complex>>,
}

impl DensityFile {
    pub fn new(rho: &DensityMatrix) -> Self {
        DensityFile { dims: rho.dims().locals().to_vec(), matrix: matrix_json(rho.matrix()) }
    }

    pub fn density(&self) -> Result<DensityMatrix, CliError> {
        Ok(DensityMatrix::new(Dims::new(self.dims.clone())?, matrix_from_json(&self.matrix)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub in_dim: usize,
    pub out_dim: usize,
    pub kraus: Vec<Vec<Vec<Complex>>>,
}

impl ChannelFile {
    pub fn new(ch: &KrausChannel) -> Self {
        ChannelFile { seed: None, in_dim: ch.in_dim(), out_dim: ch.out_dim(), kraus: ch.kraus().iter().map(matrix_json).collect() }
    }

    pub fn channel(&self) -> Result<KrausChannel, CliError> {
        let ks = self.kraus.iter().map(|k| matrix_from_json(k)).collect::<Result<Vec<_>, _>>()?;
        let ch = KrausChannel::new(ks)?;
        if (ch.in_dim(), ch.out_dim()) != (self.in_dim, self.out_dim) {
            return Err(CliError::Usage(format!("declared {}→{} channel has {}×{} Kraus operators", self.in_dim, self.out_dim, ch.out_dim(), ch.in_dim())));
        }
        Ok(ch)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateJson {
    pub cut: Vec<usize>,
    pub mode: &'static str,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groebner: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minors: Option<usize>,
    pub span_sibling: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Complex>>,
}

impl CertificateJson {
    pub fn new(c: &Certificate) -> Self {
        let product = c.verdict == entsub_core::certify::Verdict::ProductFound;
        CertificateJson {
            cut: c.cut.side_a().to_vec(),
            mode: c.mode.name(),
            verdict: c.verdict.name(),
            lambda1: c.numeric.as_ref().map(|n| n.lambda1),
            restarts: c.numeric.as_ref().map(|n| n.restarts),
            groebner: c.exact.as_ref().map(|e| e.summary()),
            minors: c.exact.as_ref().map(|e| e.minors),
            span_sibling: c.span_sibling,
            witness: c.numeric.as_ref().filter(|_| product).map(|n| vector_json(n.witness.amplitudes())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertifyReport {
    pub seed: u64,
    pub restarts: usize,
    pub mode: &'static str,
    pub dims: Vec<usize>,
    pub dim: usize,
    /// Every cut certified entangled.
    pub ges: bool,
    pub certificates: Vec<CertificateJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutValue {
    pub cut: Vec<usize>,
    pub value: f64,
}

pub fn cut_json(cut: &Bipartition) -> Vec<usize> {
    cut.side_a().to_vec()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureReport {
    pub seed: u64,
    pub measure: &'static str,
    pub per_cut: Vec<CutValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gme: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntanglementJson {
    pub per_cut: Vec<CutOverlapJson>,
    pub g_gme: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutOverlapJson {
    pub cut: Vec<usize>,
    pub lambda1: f64,
    pub basis_lambda1: f64,
}

impl EntanglementJson {
    pub fn new(e: &SubspaceEntanglement) -> Self {
        EntanglementJson {
            per_cut: e.per_cut.iter().map(|c| CutOverlapJson { cut: cut_json(&c.cut), lambda1: c.lambda1, basis_lambda1: c.basis_lambda1 }).collect(),
            g_gme: e.g_gme,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundJson {
    pub seed: u64,
    /// "given" or "computed".
    pub g_source: &'static str,
    /// "file" or "projector": Π_W / dim W when no state is supplied.
    pub rho_source: &'static str,
    pub overlap: f64,
    pub g_gme_used: f64,
    pub d_used: usize,
    pub concurrence_lb: f64,
    pub negativity_lb: f64,
    pub robustness_white: f64,
    pub robustness_spectrum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entanglement: Option<EntanglementJson>,
}

impl BoundJson {
    pub fn new(seed: u64, g_source: &'static str, rho_source: &'static str, r: &BoundReport, ent: Option<&SubspaceEntanglement>) -> Self {
        BoundJson {
            seed,
            g_source,
            rho_source,
            overlap: r.overlap,
            g_gme_used: r.g_gme_used,
            d_used: r.d_used,
            concurrence_lb: r.concurrence_lb,
            negativity_lb: r.negativity_lb,
            robustness_white: r.robustness_white,
            robustness_spectrum: r.robustness_spectrum,
            entanglement: ent.map(EntanglementJson::new),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RobustnessJson {
    pub seed: u64,
    pub dim_w: usize,
    pub dim_h: usize,
    pub g: f64,
    pub white: f64,
    pub spectrum: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidateJson {
    pub seed: u64,
    pub in_dim: usize,
    pub out_dim: usize,
    pub kraus_count: usize,
    pub trace_preservation_deviation: f64,
    /// ‖Kᵢ†Kᵢ‖ < 1, per Kraus operator.
    pub kraus_norm_condition: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsometryJson {
    pub seed: u64,
    pub in_dim: usize,
    pub out_dims: [usize; 2],
    pub matrix: Vec<Vec<Complex>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormJson {
    pub seed: u64,
    /// A number, or "inf".
    pub p: serde_json::Value,
    pub restarts: usize,
    pub value: f64,
    pub best_input: Vec<Complex>,
}
