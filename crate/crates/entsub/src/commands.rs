//! Command implementations.

use std::thread;

use entsub_core::certify::{self, Certificate, Mode, SeesawOptions, Verdict};
use entsub_core::channels::{self, KrausChannel};
use entsub_core::constructions::{self as cons, Subspace};
use entsub_core::exact::{DEFAULT_MAX_DEN, DEFAULT_RATIONAL_TOL, ExactSubspace};
use entsub_core::measures::{self, Measure};
use entsub_core::polysys;
use entsub_core::{Bipartition, DensityMatrix};
use serde_json::json;

use crate::CliError;
use crate::json::*;

/// Subspace families available to `construct`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Ces3x3,
    Antisym,
    Ges3Qubit,
    Ges3QubitOrth,
    Ces4x4,
    Ges4Qubit,
    Ges3Qutrit,
    HwGes,
    Lift,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Ces3x3,
        Family::Antisym,
        Family::Ges3Qubit,
        Family::Ges3QubitOrth,
        Family::Ces4x4,
        Family::Ges4Qubit,
        Family::Ges3Qutrit,
        Family::HwGes,
        Family::Lift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ces3x3 => "ces3x3",
            Family::Antisym => "antisym",
            Family::Ges3Qubit => "ges3qubit",
            Family::Ges3QubitOrth => "ges3qubit-orth",
            Family::Ces4x4 => "ces4x4",
            Family::Ges4Qubit => "ges4qubit",
            Family::Ges3Qutrit => "ges3qutrit",
            Family::HwGes => "hw-ges",
            Family::Lift => "lift",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
            CliError::Usage(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
        })
    }

    /// Number of λ parameters (0 when the family has none).
    pub fn lambda_count(self) -> usize {
        match self {
            Family::Ces3x3 | Family::Lift => 4,
            Family::Ges3Qubit | Family::Ges3QubitOrth => 3,
            Family::Ces4x4 | Family::Ges4Qubit => 7,
            Family::Antisym | Family::HwGes | Family::Ges3Qutrit => 0,
        }
    }
}

/// Second isometry used by the `lift` family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LiftVia {
    #[default]
    Antisym,
    HolevoWerner,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConstructParams {
    pub lambda: Option<Vec<f64>>,
    pub weights: Option<Vec<(i64, i64)>>,
    pub d: Option<usize>,
    pub via: LiftVia,
}

pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("not a number: {x:?}")))).collect()
}

/// "r:s,r:s,…".
pub fn parse_weights(s: &str) -> Result<Vec<(i64, i64)>, CliError> {
    s.split(',')
        .map(|w| {
            let (r, t) = w.split_once(':').ok_or_else(|| CliError::Usage(format!("weight {w:?} is not of the form r:s")))?;
            let p = |x: &str| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("weight {w:?} is not a pair of integers")));
            Ok((p(r)?, p(t)?))
        })
        .collect()
}

pub fn parse_cut(s: &str, parties: usize) -> Result<Bipartition, CliError> {
    let side = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("cut entry {x:?} is not a subsystem index"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Bipartition::new(&side, parties)?)
}

fn fixed<const N: usize, T: Copy>(v: &[T], what: &str) -> Result<[T; N], CliError> {
    v.try_into().map_err(|_| CliError::Usage(format!("expected {N} {what}, got {}", v.len())))
}

/// Integer pair r:s with r/s = √(λ/(1−λ)) when that ratio is a small rational.
fn weights_from_lambda(lambdas: &[f64], scale: &[f64]) -> Option<Vec<(i64, i64)>> {
    lambdas
        .iter()
        .zip(scale)
        .map(|(&l, &c)| {
            if !(l > 0.0 && l < 1.0) {
                return None;
            }
            let q = polysys::rationalize((c * l / (1.0 - l)).sqrt(), 1000, 1e-12)?;
            let (r, s) = (i64::try_from(q.numer()).ok()?, i64::try_from(q.denom()).ok()?);
            (r > 0 && s > 0).then_some((r, s))
        })
        .collect()
}

/// Factors c with r/s = √(c·λ/(1−λ)) under which the exact sibling spans
/// the floating point member itself.
fn ratio_scale(family: Family) -> Vec<f64> {
    match family {
        Family::Ges3Qubit => cons::GES_3QUBIT_RATIO_SCALE.to_vec(),
        Family::Ges3QubitOrth => cons::GES_3QUBIT_ORTHOGONAL_RATIO_SCALE.to_vec(),
        _ => vec![1.0; family.lambda_count()],
    }
}

/// Builds a family member and, when `exact` is set, its exact sibling.
///
/// Exact weights come from `--weights` or from λ itself. From λ, the weights
/// r/s = √(c·λ/(1−λ)) of [`ratio_scale`] make the sibling span the floating
/// point subspace exactly; when those are irrational (e.g. the three-qubit
/// family at λ₂ = 1/2) the plain ratio √(λ/(1−λ)) is used and the sibling is
/// flagged as a different family member. The three-qutrit sibling always is
/// one (its block angles differ).
pub fn construct(family: Family, params: &ConstructParams, exact: bool, seed: u64) -> Result<SubspaceFile, CliError> {
    let n = family.lambda_count();
    let lambdas = match (&params.lambda, family) {
        (_, Family::Antisym | Family::HwGes | Family::Ges3Qutrit) => Vec::new(),
        (Some(l), _) if l.len() == n => l.clone(),
        (Some(l), _) => return Err(CliError::Usage(format!("{} takes {n} λ values, got {}", family.name(), l.len()))),
        (None, _) => vec![0.5; n],
    };
    if let Some(l) = lambdas.iter().find(|l| !(**l > 0.0 && **l < 1.0)) {
        return Err(CliError::Usage(format!("λ = {l} must lie in (0, 1)")));
    }
    // same_span: the sibling is known to span the floating point subspace.
    let (weights, same_span) = match (&params.weights, exact) {
        (_, false) => (None, false),
        (Some(w), true) => (Some(w.clone()), false),
        (None, true) if family == Family::Ges3Qutrit => (Some(vec![(1, 1); 6]), false),
        (None, true) if n == 0 => (None, true),
        (None, true) => match (weights_from_lambda(&lambdas, &ratio_scale(family)), weights_from_lambda(&lambdas, &vec![1.0; n])) {
            (Some(w), _) => (Some(w), true),
            (None, Some(w)) => (Some(w), false),
            (None, None) => return Err(CliError::Usage("λ has no small integer weight ratio r:s; pass --weights".into())),
        },
    };
    if let Some(w) = &weights {
        let want = if family == Family::Ges3Qutrit { 6 } else { n };
        if w.len() != want {
            return Err(CliError::Usage(format!("{} takes {want} weights, got {}", family.name(), w.len())));
        }
    }
    let w = weights.as_deref().unwrap_or(&[]);
    let d = params.d.unwrap_or(3);
    let (sub, ex): (Subspace, Option<ExactSubspace>) = match family {
        Family::Ces3x3 => {
            (cons::ces_3x3(fixed(&lambdas, "λ values")?)?, exact.then(|| Ok::<_, CliError>(cons::ces_3x3_exact(fixed(w, "weights")?)?)).transpose()?)
        }
        Family::Antisym => (cons::antisymmetric_subspace(d)?, exact.then(|| cons::antisymmetric_exact(d)).transpose()?),
        Family::Ges3Qubit => {
            (cons::ges_3qubit(fixed(&lambdas, "λ values")?)?, exact.then(|| Ok::<_, CliError>(cons::ges_3qubit_exact(fixed(w, "weights")?)?)).transpose()?)
        }
        Family::Ges3QubitOrth => (
            cons::ges_3qubit_orthogonal(fixed(&lambdas, "λ values")?)?,
            exact.then(|| Ok::<_, CliError>(cons::ges_3qubit_orthogonal_exact(fixed(w, "weights")?)?)).transpose()?,
        ),
        Family::Ces4x4 => {
            (cons::ces_4x4(fixed(&lambdas, "λ values")?)?, exact.then(|| Ok::<_, CliError>(cons::ces_4x4_exact(fixed(w, "weights")?)?)).transpose()?)
        }
        Family::Ges4Qubit => {
            (cons::ges_4qubit(fixed(&lambdas, "λ values")?)?, exact.then(|| Ok::<_, CliError>(cons::ges_4qubit_exact(fixed(w, "weights")?)?)).transpose()?)
        }
        Family::Ges3Qutrit => (cons::ges_3qutrit()?, exact.then(|| Ok::<_, CliError>(cons::ges_3qutrit_exact(fixed(w, "weights")?)?)).transpose()?),
        Family::HwGes => (cons::hw_ges()?, exact.then(cons::hw_ges_exact).transpose()?),
        Family::Lift => {
            let l = fixed(&lambdas, "λ values")?;
            let iso = match params.via {
                LiftVia::Antisym => cons::antisymmetric_isometry(3)?,
                LiftVia::HolevoWerner => cons::holevo_werner_isometry()?,
            };
            let sub = cons::lift_ges(&cons::ces_3x3(l)?, &iso, 1)?;
            let ex =
                if exact { Some(cons::lift_exact(&cons::ces_3x3_exact(fixed(w, "weights")?)?, &cons::scaled_exact_isometry(&iso)?, 1, (3, 3))?) } else { None };
            (sub, ex)
        }
    };
    let ex = ex.map(|e| if same_span { e.with_span_sibling(false) } else { e });
    let mut file = SubspaceFile::new(&sub, ex.as_ref());
    file.seed = Some(seed);
    file.family = Some(family.name().to_string());
    let mut p = serde_json::Map::new();
    if !lambdas.is_empty() {
        p.insert("lambda".into(), json!(lambdas));
    }
    if family == Family::Antisym {
        p.insert("d".into(), json!(d));
    }
    if family == Family::Lift {
        p.insert("via".into(), json!(if params.via == LiftVia::Antisym { "antisym" } else { "holevo-werner" }));
    }
    if let (Some(w), Some(e)) = (&weights, file.exact.as_mut()) {
        e.weights = Some(w.iter().map(|&(r, s)| [r, s]).collect());
    }
    file.params = (!p.is_empty()).then_some(serde_json::Value::Object(p));
    Ok(file)
}

/// Certifies every canonical cut, one thread per cut.
///
/// `mode` defaults to numeric, or to both when `exact` is set. The exact path
/// uses the file's exact block, or reads the floating point amplitudes as
/// rationals when there is none.
pub fn certify(file: &SubspaceFile, mode: Option<Mode>, exact: bool, opts: &SeesawOptions) -> Result<(CertifyReport, Vec<Certificate>), CliError> {
    let mode = mode.unwrap_or(if exact { Mode::Both } else { Mode::Numeric });
    let sub = file.subspace()?;
    let ex = match (mode, file.exact_subspace()?) {
        (Mode::Numeric, _) => None,
        (_, Some(e)) => Some(e),
        (_, None) => {
            let raw = Subspace::new(sub.dims().clone(), file.vectors.iter().map(|v| vector_from_json(v)).collect());
            match raw.and_then(|r| ExactSubspace::rationalize(&r, DEFAULT_MAX_DEN, DEFAULT_RATIONAL_TOL)) {
                Ok(e) => Some(e),
                Err(e) if mode == Mode::Exact || exact => {
                    return Err(CliError::Usage(format!("no exact amplitudes available ({e}); construct the subspace with --exact")));
                }
                Err(_) => None,
            }
        }
    };
    let cuts = Bipartition::all(sub.dims().parties());
    if cuts.is_empty() {
        return Err(CliError::Usage("certification needs at least two parties".into()));
    }
    let certs = thread::scope(|s| {
        let handles: Vec<_> = cuts
            .iter()
            .enumerate()
            .map(|(i, cut)| {
                s.spawn({
                    let (sub, ex) = (&sub, ex.as_ref());
                    move || certify::certify_cut(sub, ex, cut, i, mode, opts)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("certification thread panicked")).collect::<Result<Vec<_>, _>>()
    })?;
    let report = CertifyReport {
        seed: opts.seed,
        restarts: opts.restarts,
        mode: mode.name(),
        dims: sub.dims().locals().to_vec(),
        dim: sub.dim(),
        ges: certify::all_entangled(&certs),
        certificates: certs.iter().map(CertificateJson::new).collect(),
    };
    Ok((report, certs))
}

/// Whether any certificate is undecided (exit code 3).
pub fn any_inconclusive(certs: &[Certificate]) -> bool {
    certs.iter().any(|c| c.verdict == Verdict::Inconclusive)
}

pub fn parse_measure(s: &str) -> Result<Measure, CliError> {
    match s {
        "concurrence" => Ok(Measure::Concurrence),
        "negativity" => Ok(Measure::Negativity),
        "geometric" => Ok(Measure::Geometric),
        _ => Err(CliError::Usage(format!("unknown measure {s:?}; expected concurrence, negativity or geometric"))),
    }
}

/// Bipartite values on the requested cuts, or on all cuts plus their minimum.
pub fn measure(state: &StateFile, m: Measure, cuts: &[String], seed: u64) -> Result<MeasureReport, CliError> {
    let psi = state.state()?;
    let n = psi.dims().parties();
    if cuts.is_empty() {
        let per = measures::per_cut(&psi, m)?;
        let gme = per.iter().map(|(_, v)| *v).fold(f64::INFINITY, f64::min);
        return Ok(MeasureReport {
            seed,
            measure: m.name(),
            per_cut: per.iter().map(|(c, v)| CutValue { cut: cut_json(c), value: *v }).collect(),
            gme: Some(gme),
        });
    }
    let per_cut = cuts
        .iter()
        .map(|c| {
            let cut = parse_cut(c, n)?;
            Ok(CutValue { cut: cut_json(&cut), value: measures::pure_measure(&psi, &cut, m)? })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(MeasureReport { seed, measure: m.name(), per_cut, gme: None })
}

/// Parallel λ̄₁ over all cuts.
pub fn subspace_entanglement(sub: &Subspace, opts: &SeesawOptions) -> Result<certify::SubspaceEntanglement, CliError> {
    let cuts = Bipartition::all(sub.dims().parties());
    let per = thread::scope(|s| {
        let hs: Vec<_> = cuts.iter().enumerate().map(|(i, c)| s.spawn(move || certify::cut_overlap(sub, c, i, opts))).collect();
        hs.into_iter().map(|h| h.join().expect("overlap thread panicked")).collect::<Result<Vec<_>, _>>()
    })?;
    Ok(certify::entanglement_from_cuts(per))
}

pub struct BoundInputs<'a> {
    pub subspace: &'a SubspaceFile,
    pub rho: Option<&'a DensityFile>,
    pub g: Option<f64>,
    pub d: Option<usize>,
    pub spectrum: Option<Vec<f64>>,
}

/// Bound report; computes G_GME(W) by the seesaw when `g` is not given and
/// uses Π_W / dim W when no state is given.
pub fn bound(inp: &BoundInputs<'_>, opts: &SeesawOptions) -> Result<BoundJson, CliError> {
    let sub = inp.subspace.subspace()?;
    let (rho, rho_source) = match inp.rho {
        Some(r) => (r.density()?, "file"),
        None => (DensityMatrix::new(sub.dims().clone(), sub.projector().scale_real(1.0 / sub.dim() as f64))?, "projector"),
    };
    let (g, g_source, ent) = match inp.g {
        Some(g) => (g, "given", None),
        None => {
            let e = subspace_entanglement(&sub, opts)?;
            (e.g_gme, "computed", Some(e))
        }
    };
    let r = measures::gme_bounds_with(&rho, &sub, g, inp.d, inp.spectrum.as_deref())?;
    Ok(BoundJson::new(opts.seed, g_source, rho_source, &r, ent.as_ref()))
}

pub fn robustness(file: &SubspaceFile, g: f64, spectrum: Option<&[f64]>, seed: u64) -> Result<RobustnessJson, CliError> {
    let sub = file.subspace()?;
    Ok(RobustnessJson {
        seed,
        dim_w: sub.dim(),
        dim_h: sub.dims().total(),
        g,
        white: measures::white_noise_robustness(&sub, g)?,
        spectrum: spectrum.map(|s| measures::spectrum_robustness(&sub, g, s)).transpose()?,
    })
}

pub fn channel_validate(ch: &KrausChannel, seed: u64) -> ValidateJson {
    ValidateJson {
        seed,
        in_dim: ch.in_dim(),
        out_dim: ch.out_dim(),
        kraus_count: ch.kraus().len(),
        trace_preservation_deviation: ch.trace_preservation_deviation(),
        kraus_norm_condition: channels::kraus_norm_condition(ch),
    }
}

pub fn channel_isometry(ch: &KrausChannel, seed: u64) -> Result<IsometryJson, CliError> {
    let v = channels::isometry_from_kraus(ch)?;
    let (b, c) = v.out_dims();
    Ok(IsometryJson { seed, in_dim: v.in_dim(), out_dims: [b, c], matrix: matrix_json(v.matrix()) })
}

/// "inf" or a number > 1.
pub fn parse_p(s: &str) -> Result<f64, CliError> {
    if s == "inf" {
        return Ok(f64::INFINITY);
    }
    s.parse::<f64>().map_err(|_| CliError::Usage(format!("p must be a number or \"inf\", got {s:?}")))
}

pub fn channel_max_norm(ch: &KrausChannel, p: f64, restarts: usize, seed: u64) -> Result<NormJson, CliError> {
    let r = channels::max_output_norm(ch, p, restarts, seed)?;
    let pj = if p.is_infinite() { json!("inf") } else { json!(p) };
    Ok(NormJson { seed, p: pj, restarts, value: r.value, best_input: vector_json(&r.best_input) })
}

pub fn channel_holevo_werner(d: usize, seed: u64) -> Result<ChannelFile, CliError> {
    let mut f = ChannelFile::new(&channels::holevo_werner(d)?);
    f.seed = Some(seed);
    Ok(f)
}
