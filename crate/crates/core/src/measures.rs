//! Pure-state entanglement measures and projector-based lower bounds for
//! mixed states.
//!
//! Convex-roof quantities are never computed; functions that bound them carry
//! an `_lb` suffix.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;

use crate::constructions::Subspace;
use crate::tensor::{self, Bipartition, DensityMatrix, Dims, PureState};
use crate::{Error, Result};

/// Bipartite concurrence √(2(1 − Tr ρ_A²)).
pub fn concurrence_pure(psi: &PureState, cut: &Bipartition) -> Result<f64> {
    let rho_a = tensor::reduced_density(psi, cut)?;
    let purity = rho_a.frobenius_norm().powi(2);
    Ok(Float::sqrt((2.0 * (1.0 - purity)).max(0.0)))
}

/// (‖ρ^{T_Ā}‖₁ − 1)/2, clamped at 0.
pub fn negativity(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    let pt = tensor::partial_transpose(rho, cut)?;
    Ok(((tensor::trace_norm(&pt) - 1.0) / 2.0).max(0.0))
}

/// 1 − (largest Schmidt coefficient)².
pub fn geometric_pure(psi: &PureState, cut: &Bipartition) -> Result<f64> {
    let s = tensor::schmidt_coefficients(psi, cut)?;
    Ok((1.0 - s[0] * s[0]).clamp(0.0, 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Concurrence,
    Negativity,
    Geometric,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Negativity => "negativity",
            Measure::Geometric => "geometric",
        }
    }
}

/// Bipartite value of `m` for a pure state.
pub fn pure_measure(psi: &PureState, cut: &Bipartition, m: Measure) -> Result<f64> {
    match m {
        Measure::Concurrence => concurrence_pure(psi, cut),
        Measure::Negativity => negativity(&psi.density_matrix(), cut),
        Measure::Geometric => geometric_pure(psi, cut),
    }
}

/// Value of `m` on every canonical cut, in enumeration order.
pub fn per_cut(psi: &PureState, m: Measure) -> Result<Vec<(Bipartition, f64)>> {
    Bipartition::all(psi.dims().parties()).into_iter().map(|c| pure_measure(psi, &c, m).map(|v| (c, v))).collect()
}

/// Minimum of `m` over all bipartitions.
pub fn gme_pure(psi: &PureState, m: Measure) -> Result<f64> {
    Ok(per_cut(psi, m)?.into_iter().map(|(_, v)| v).fold(f64::INFINITY, f64::min))
}

fn check_lambda1(lambda1: f64) -> Result<()> {
    if lambda1 > 0.0 && lambda1 < 1.0 { Ok(()) } else { Err(Error::OutOfRange(format!("λ̄₁ = {lambda1} must lie in (0, 1)"))) }
}

fn check_g(g: f64) -> Result<()> {
    if g > 0.0 && g < 1.0 { Ok(()) } else { Err(Error::OutOfRange(format!("g = {g} must lie in (0, 1)"))) }
}

/// Tr ρΠ_W.
pub fn overlap(rho: &DensityMatrix, w: &Subspace) -> Result<f64> {
    if rho.dims() != w.dims() {
        return Err(Error::InvalidDims(format!("state on {} but subspace on {}", rho.dims(), w.dims())));
    }
    Ok(rho.expectation(&w.projector()))
}

fn single_cut(w: &Subspace) -> Result<Bipartition> {
    if w.dims().parties() != 2 {
        return Err(Error::InvalidDims(format!("bipartite bound needs two parties, got {}", w.dims())));
    }
    Bipartition::new(&[0], 2)
}

fn concurrence_prefactor(d: usize) -> f64 {
    Float::sqrt(2.0 / (d * (d - 1)) as f64)
}

/// max(√(2/(d(d−1)))·(TrρΠ_W − λ̄₁)/λ̄₁, 0) with d the smaller local
/// dimension.
pub fn bipartite_concurrence_lb(rho: &DensityMatrix, w: &Subspace, lambda1: f64) -> Result<f64> {
    check_lambda1(lambda1)?;
    let cut = single_cut(w)?;
    let (a, b) = cut.shape(w.dims());
    let p = overlap(rho, w)?;
    Ok((concurrence_prefactor(a.min(b)) * (p - lambda1) / lambda1).max(0.0))
}

/// max((TrρΠ_W − λ̄₁)/(2λ̄₁), 0), a bound on the convex-roof negativity.
pub fn bipartite_cren_lb(rho: &DensityMatrix, w: &Subspace, lambda1: f64) -> Result<f64> {
    check_lambda1(lambda1)?;
    single_cut(w)?;
    let p = overlap(rho, w)?;
    Ok(((p - lambda1) / (2.0 * lambda1)).max(0.0))
}

/// Concurrence prefactor dimension for GME bounds: the largest min(d_A, d_Ā)
/// over all cuts. A larger d gives a smaller prefactor, so the bound holds
/// whichever cut attains the GME minimum.
pub fn gme_concurrence_dim(dims: &Dims) -> usize {
    Bipartition::all(dims.parties())
        .iter()
        .map(|c| {
            let (a, b) = c.shape(dims);
            a.min(b)
        })
        .max()
        .unwrap_or(2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    /// Tr ρΠ_W.
    pub overlap: f64,
    pub g_gme_used: f64,
    /// d in the concurrence prefactor √(2/(d(d−1))).
    pub d_used: usize,
    pub concurrence_lb: f64,
    pub negativity_lb: f64,
    pub robustness_white: f64,
    pub robustness_spectrum: Option<f64>,
}

/// Bounds with the default concurrence dimension ([`gme_concurrence_dim`])
/// and no noise spectrum.
pub fn gme_bounds(rho: &DensityMatrix, w: &Subspace, g: f64) -> Result<BoundReport> {
    gme_bounds_with(rho, w, g, None, None)
}

/// C_GME ≥ √(2/(d(d−1)))·max(TrρΠ_W + g − 1, 0)/(1 − g) and
/// N_GME ≥ max(TrρΠ_W + g − 1, 0)/(2(1 − g)) for g = G_GME(W).
pub fn gme_bounds_with(rho: &DensityMatrix, w: &Subspace, g: f64, d: Option<usize>, noise_spectrum: Option<&[f64]>) -> Result<BoundReport> {
    check_g(g)?;
    let p = overlap(rho, w)?;
    let d_used = d.unwrap_or_else(|| gme_concurrence_dim(w.dims()));
    if d_used < 2 {
        return Err(Error::OutOfRange(format!("concurrence dimension {d_used} must be at least 2")));
    }
    let excess = (p + g - 1.0).max(0.0);
    Ok(BoundReport {
        overlap: p,
        g_gme_used: g,
        d_used,
        concurrence_lb: concurrence_prefactor(d_used) * excess / (1.0 - g),
        negativity_lb: excess / (2.0 * (1.0 - g)),
        robustness_white: white_noise_robustness(w, g)?,
        robustness_spectrum: noise_spectrum.map(|s| spectrum_robustness(w, g, s)).transpose()?,
    })
}

/// Largest white-noise weight p for which (1−p)ρ_W + p·I/D stays detected,
/// g·D/(D − dim W), capped at 1.
pub fn white_noise_robustness(w: &Subspace, g: f64) -> Result<f64> {
    white_noise_threshold(w.dim(), w.dims().total(), g)
}

pub fn white_noise_threshold(dim_w: usize, dim_h: usize, g: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&g) {
        return Err(Error::OutOfRange(format!("g = {g} must lie in [0, 1]")));
    }
    if dim_w >= dim_h {
        return Err(Error::OutOfRange(format!("subspace of dimension {dim_w} fills the {dim_h}-dimensional space")));
    }
    Ok((g * dim_h as f64 / (dim_h - dim_w) as f64).min(1.0))
}

/// g / (sum of the codim(W) largest noise eigenvalues), clamped to [0, 1].
pub fn spectrum_robustness(w: &Subspace, g: f64, noise_spectrum: &[f64]) -> Result<f64> {
    let dim_h = w.dims().total();
    if !(0.0..=1.0).contains(&g) {
        return Err(Error::OutOfRange(format!("g = {g} must lie in [0, 1]")));
    }
    if noise_spectrum.len() != dim_h {
        return Err(Error::DimensionMismatch { expected: dim_h, found: noise_spectrum.len() });
    }
    if noise_spectrum.iter().any(|&x| x.is_nan() || x < -1e-12) {
        return Err(Error::OutOfRange("noise spectrum has negative or NaN entries".into()));
    }
    let total: f64 = noise_spectrum.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::OutOfRange(format!("noise spectrum sums to {total}, not 1")));
    }
    let codim = dim_h - w.dim();
    if codim == 0 {
        return Err(Error::OutOfRange("the subspace fills the whole space".into()));
    }
    let mut sorted = noise_spectrum.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let ky_fan: f64 = sorted[..codim].iter().sum();
    Ok((g / ky_fan).clamp(0.0, 1.0))
}
