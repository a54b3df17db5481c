//! Invariants of the core crate, checked on random instances.

use entsub_core::certify::{self, Mode, SeesawOptions, Verdict};
use entsub_core::channels::{self, KrausChannel};
use entsub_core::constructions::{self as cons, Subspace};
use entsub_core::linalg::{self, CMatrix};
use entsub_core::measures::{self, Measure};
use entsub_core::polysys::{self, GaussianRational, Monomial, MonomialOrder, Polynomial};
use entsub_core::{Bipartition, C64, DensityMatrix, Dims, PureState, random, tensor};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=3, 2..=3)
}

fn random_state(seed: u64, locals: &[usize]) -> PureState {
    let dims = Dims::new(locals.to_vec()).unwrap();
    let amps = random::unit_vector(&mut rng(seed), dims.total());
    PureState::new(dims, amps).unwrap()
}

/// Random CPTP map: Kraus operators K_i = G_i (Σ G†G)^(-1/2). At least
/// ⌈d_in/d_out⌉ operators keep Σ G†G invertible.
fn random_channel(seed: u64, din: usize, dout: usize, n: usize) -> KrausChannel {
    let n = n.max(din.div_ceil(dout));
    let mut r = rng(seed);
    let gs: Vec<CMatrix> = (0..n).map(|_| random::ginibre(&mut r, dout, din)).collect();
    let mut s = CMatrix::zeros(din, din);
    for g in &gs {
        s = s.add(&g.adjoint().matmul(g));
    }
    let inv_sqrt = linalg::hermitian_fn(&s, |x| 1.0 / x.sqrt());
    KrausChannel::new(gs.iter().map(|g| g.matmul(&inv_sqrt)).collect()).unwrap()
}

fn lambda() -> impl Strategy<Value = f64> {
    0.05f64..0.95
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isometry_preserves_gram(seed in any::<u64>(), din in 2usize..=4, dout in 2usize..=4, n in 1usize..=4) {
        let ch = random_channel(seed, din, dout, n);
        let v = channels::isometry_from_kraus(&ch).unwrap();
        let vs: Vec<Vec<C64>> = (0..3).map(|k| random::unit_vector(&mut rng(seed ^ k), din)).collect();
        for x in &vs {
            for y in &vs {
                let lhs = linalg::inner(x, y);
                let rhs = linalg::inner(&v.matrix().mul_vec(x), &v.matrix().mul_vec(y));
                prop_assert!((lhs - rhs).norm() < 1e-12, "{lhs} vs {rhs}");
            }
        }
        prop_assert!(v.matrix().isometry_deviation() < 1e-12);
    }

    #[test]
    fn seesaw_is_monotone_per_sweep(seed in any::<u64>(), locals in dims_strategy(), k in 1usize..=3) {
        let dims = Dims::new(locals).unwrap();
        let mut r = rng(seed);
        let vs: Vec<Vec<C64>> = (0..k).map(|_| random::unit_vector(&mut r, dims.total())).collect();
        let sub = Subspace::orthonormalized(dims.clone(), &vs).unwrap();
        let opts = SeesawOptions::default().with_seed(seed).with_restarts(3);
        for cut in Bipartition::all(dims.parties()) {
            let ev = certify::max_product_overlap(&sub, &cut, &opts).unwrap();
            for w in ev.trace.windows(2) {
                prop_assert!(w[1] >= w[0] - 1e-12, "trace decreased: {:?}", w);
            }
            prop_assert!(ev.lambda1 <= 1.0 + 1e-12 && ev.lambda1 > 0.0);
            // The witness attains the reported value.
            prop_assert!((sub.overlap(ev.witness.amplitudes()) - ev.lambda1).abs() < 1e-9);
        }
    }

    #[test]
    fn groebner_basis_is_self_reduced(coeffs in prop::collection::vec(-3i64..=3, 12), order_lex in any::<bool>()) {
        let order = if order_lex { MonomialOrder::Lex } else { MonomialOrder::Grevlex };
        let vars = polysys::beta_vars(3);
        // c0 b1² + c1 b1b2 + c2 b2b3 + c3 b3 + c4 b1 + c5
        let monos = [[2, 0, 0], [1, 1, 0], [0, 1, 1], [0, 0, 1], [1, 0, 0], [0, 0, 0]].map(|e| Monomial::from_exponents(&e));
        let q = |c: &[i64]| {
            let terms = monos.iter().zip(c).map(|(m, &k)| (*m, GaussianRational::from_integer(k))).collect();
            Polynomial::from_terms(vars.clone(), order, terms)
        };
        let gens: Vec<Polynomial> = [q(&coeffs[..6]), q(&coeffs[6..])].into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = polysys::buchberger(&gens, order).unwrap();
        let g = &gb.polys;
        // Every generator reduces to zero, every S-polynomial reduces to zero,
        // and recomputing the basis from the basis is the identity.
        for p in &gens {
            prop_assert!(polysys::reduce(p, g).is_zero());
        }
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                prop_assert!(polysys::reduce(&polysys::s_polynomial(&g[i], &g[j]), g).is_zero());
            }
        }
        let again = polysys::buchberger(g, order).unwrap();
        prop_assert_eq!(&again.polys, g);
    }

    #[test]
    fn measures_are_local_unitary_invariant(seed in any::<u64>(), locals in dims_strategy()) {
        let psi = random_state(seed, &locals);
        let mut r = rng(seed.wrapping_add(1));
        let mut phi = psi.clone();
        for (k, &d) in locals.iter().enumerate() {
            phi = tensor::apply_local_unitary(&phi, &random::unitary(&mut r, d), k).unwrap();
        }
        for m in [Measure::Concurrence, Measure::Negativity, Measure::Geometric] {
            let a = measures::per_cut(&psi, m).unwrap();
            let b = measures::per_cut(&phi, m).unwrap();
            for ((_, x), (_, y)) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-8, "{} {x} vs {y}", m.name());
            }
        }
    }

    #[test]
    fn gme_is_min_over_cuts_and_in_range(seed in any::<u64>(), locals in dims_strategy()) {
        let psi = random_state(seed, &locals);
        for m in [Measure::Concurrence, Measure::Negativity, Measure::Geometric] {
            let per = measures::per_cut(&psi, m).unwrap();
            let g = measures::gme_pure(&psi, m).unwrap();
            for (cut, v) in &per {
                let (da, db) = cut.shape(psi.dims());
                let d = da.min(db) as f64;
                let hi = match m {
                    Measure::Concurrence => (2.0 * (d - 1.0) / d).sqrt(),
                    Measure::Negativity => (d - 1.0) / 2.0,
                    Measure::Geometric => 1.0 - 1.0 / d,
                };
                prop_assert!(*v >= -1e-12 && *v <= hi + 1e-9, "{} = {v} outside [0, {hi}]", m.name());
                prop_assert!(g <= v + 1e-12);
            }
            prop_assert!(per.iter().any(|(_, v)| (v - g).abs() < 1e-12));
        }
    }

    #[test]
    fn separable_states_have_zero_negativity(seed in any::<u64>(), da in 2usize..=3, db in 2usize..=3, terms in 1usize..=4) {
        let dims = Dims::new(vec![da, db]).unwrap();
        let cut = Bipartition::new(&[0], 2).unwrap();
        let mut r = rng(seed);
        let mut m = CMatrix::zeros(da * db, da * db);
        for _ in 0..terms {
            let ra = random::density_matrix(&mut r, da, da);
            let rb = random::density_matrix(&mut r, db, db);
            m = m.add(&ra.kron(&rb).scale_real(1.0 / terms as f64));
        }
        let rho = DensityMatrix::new(dims, m).unwrap();
        prop_assert!(measures::negativity(&rho, &cut).unwrap() < 1e-10);
    }

    #[test]
    fn overlap_is_local_unitary_invariant(seed in any::<u64>(), l in prop::array::uniform3(lambda())) {
        let sub = cons::ges_3qubit(l).unwrap();
        let opts = SeesawOptions::default().with_seed(seed).with_restarts(20);
        let mut r = rng(seed);
        let mut rotated = sub.clone();
        for k in 0..3 {
            rotated = rotated.apply_local_unitary(&random::unitary(&mut r, 2), k).unwrap();
        }
        for cut in Bipartition::all(3) {
            let a = certify::max_product_overlap(&sub, &cut, &opts).unwrap().lambda1;
            let b = certify::max_product_overlap(&rotated, &cut, &opts).unwrap().lambda1;
            prop_assert!((a - b).abs() < 2e-6, "{cut}: {a} vs {b}");
        }
    }

    #[test]
    fn pure_states_in_hw_ges_beat_the_bound(seed in any::<u64>()) {
        let w = cons::hw_ges().unwrap();
        let mut r = rng(seed);
        let coeffs = random::unit_vector(&mut r, w.dim());
        let mut amps = vec![C64::new(0.0, 0.0); w.dims().total()];
        for (c, b) in coeffs.iter().zip(w.basis()) {
            for (a, x) in amps.iter_mut().zip(b.amplitudes()) {
                *a += c * x;
            }
        }
        let psi = PureState::new(w.dims().clone(), amps).unwrap();
        let rep = measures::gme_bounds(&psi.density_matrix(), &w, 0.5).unwrap();
        prop_assert!((rep.overlap - 1.0).abs() < 1e-10);
        prop_assert!(measures::gme_pure(&psi, Measure::Concurrence).unwrap() >= rep.concurrence_lb - 1e-9);
        prop_assert!(measures::gme_pure(&psi, Measure::Negativity).unwrap() >= rep.negativity_lb - 1e-9);
        prop_assert!(measures::gme_pure(&psi, Measure::Geometric).unwrap() >= 0.5 - 1e-9);
    }

    #[test]
    fn exact_and_numeric_certifiers_agree(w in prop::array::uniform3((1i64..=4, 1i64..=4))) {
        let ex = cons::ges_3qubit_exact(w).unwrap();
        let sub = ex.to_subspace().unwrap();
        let opts = SeesawOptions::default().with_seed(w[0].0 as u64);
        for cut in Bipartition::all(3) {
            let e = certify::certify_ces_exact(&ex, &cut, polysys::DEFAULT_SPAIR_CAP).unwrap();
            let n = certify::certify_numeric(&sub, &cut, &opts).unwrap();
            prop_assert!(e.verdict != Verdict::Inconclusive);
            prop_assert_eq!(n.verdict, e.verdict, "{}", cut);
        }
    }
}

/// Two-dimensional pencil x·A + y·B of 2×3 integer matrices: some nonzero
/// member has rank ≤ 1 iff the three 2×2 minors, binary quadratics in (x, y),
/// share a projective root. The oracle finds the roots of one quadratic in
/// floating point and checks them against the others.
#[test]
fn two_dimensional_pencils_match_common_root_oracle() {
    let mut r = rng(7);
    let mut seen = [0usize; 2];
    for trial in 0..300 {
        let mut ints = |n: usize| -> Vec<i64> { (0..n).map(|_| rand::Rng::random_range(&mut r, -2i64..=2)).collect() };
        let a = ints(6);
        let mut b = ints(6);
        // Plant a product member in a third of the trials.
        if trial % 3 == 0 {
            let (u, v) = (ints(2), ints(3));
            for i in 0..2 {
                for j in 0..3 {
                    b[3 * i + j] = u[i] * v[j];
                }
            }
        }
        let quad = |p: usize, q: usize| -> [i64; 3] {
            let (a0p, a0q, a1p, a1q) = (a[p], a[q], a[3 + p], a[3 + q]);
            let (b0p, b0q, b1p, b1q) = (b[p], b[q], b[3 + p], b[3 + q]);
            [a0p * a1q - a0q * a1p, a0p * b1q + b0p * a1q - a0q * b1p - b0q * a1p, b0p * b1q - b0q * b1p]
        };
        let qs: Vec<[i64; 3]> = [quad(0, 1), quad(0, 2), quad(1, 2)].into_iter().filter(|q| q.iter().any(|&c| c != 0)).collect();
        let oracle_rank_one = qs.is_empty() || common_root(&qs);
        let polys = certify::pencil_minors(&[matrix(&a), matrix(&b)]);
        let exact_trivial = polysys::only_trivial_root(&polys).unwrap();
        assert_eq!(!exact_trivial, oracle_rank_one, "trial {trial}: a={a:?} b={b:?}");
        seen[oracle_rank_one as usize] += 1;
    }
    assert!(seen[0] > 20 && seen[1] > 20, "{seen:?}");
}

fn matrix(v: &[i64]) -> entsub_core::exact::ExactMatrix {
    entsub_core::exact::ExactMatrix::from_integers(2, 3, v, 1).unwrap()
}

/// Whether binary quadratics share a projective root, by brute force over the
/// roots of the first nonzero one (computed in floating point, verified with
/// a tolerance scaled to the integer coefficients).
fn common_root(qs: &[[i64; 3]]) -> bool {
    let roots = binary_roots(qs[0]);
    roots.iter().any(|&(x, y)| {
        let n = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (x, y) = (x / n, y / n);
        qs.iter().all(|q| {
            let v = C64::new(q[0] as f64, 0.0) * x * x + C64::new(q[1] as f64, 0.0) * x * y + C64::new(q[2] as f64, 0.0) * y * y;
            v.norm() < 1e-8
        })
    })
}

/// Projective roots (x : y) of a x² + b xy + c y², or the whole line when zero.
fn binary_roots(q: [i64; 3]) -> Vec<(C64, C64)> {
    let (a, b, c) = (q[0] as f64, q[1] as f64, q[2] as f64);
    let one = C64::new(1.0, 0.0);
    if a == 0.0 {
        // y (b x + c y) = 0
        let mut out = vec![(one, C64::new(0.0, 0.0))];
        if b != 0.0 {
            out.push((C64::new(-c / b, 0.0), one));
        }
        return out;
    }
    let disc = C64::new(b * b - 4.0 * a * c, 0.0).sqrt();
    vec![((-b + disc) / (2.0 * a), one), ((-b - disc) / (2.0 * a), one)]
}

#[test]
fn gaussian_rationals_round_trip_through_display() {
    for (p, q) in [(1, 2), (-7, 3), (0, 1), (5, 1)] {
        let x = GaussianRational::from_parts((p, q), (q, 5));
        assert_eq!(x.to_string().parse::<GaussianRational>().unwrap(), x);
    }
}

#[test]
fn both_mode_prefers_a_decisive_exact_verdict() {
    let ex = cons::ges_3qubit_exact([(1, 1), (1, 2), (2, 3)]).unwrap();
    let sub = ex.to_subspace().unwrap();
    let certs = certify::certify_ges(&sub, Some(&ex), Mode::Both, &SeesawOptions::default()).unwrap();
    assert!(certify::all_entangled(&certs));
    assert!(certs.iter().all(|c| c.exact.is_some() && c.numeric.is_some()));
}

/// The three-qubit family is not genuinely entangled for every parameter:
/// with weights (1,4), (1,1), (1,2), i.e. λ = (1/17, 2/3, 1/5), the sum of the
/// three spanning vectors is (|00⟩+|01⟩+2|11⟩)_{A₁B} ⊗ (|0⟩+2|1⟩)_{A₂}.
#[test]
fn three_qubit_family_has_a_product_vector_at_special_parameters() {
    let ex = cons::ges_3qubit_exact([(1, 4), (1, 1), (1, 2)]).unwrap();
    let sum: Vec<C64> = (0..8).map(|i| ex.basis().iter().map(|v| v[i].to_c64()).sum()).collect();
    let expected = [1.0, 1.0, 2.0, 2.0, 0.0, 2.0, 0.0, 4.0];
    assert!(sum.iter().zip(expected).all(|(z, e)| (z - C64::new(e, 0.0)).norm() < 1e-15), "{sum:?}");
    let cut = Bipartition::new(&[0, 2], 3).unwrap();
    let e = certify::certify_ces_exact(&ex, &cut, polysys::DEFAULT_SPAIR_CAP).unwrap();
    assert_eq!(e.verdict, Verdict::ProductFound);
    let numeric = cons::ges_3qubit([1.0 / 17.0, 2.0 / 3.0, 0.2]).unwrap();
    let n = certify::certify_numeric(&numeric, &cut, &SeesawOptions::default()).unwrap();
    assert_eq!(n.verdict, Verdict::ProductFound);
    // The other two cuts stay entangled.
    for side in [&[0][..], &[0, 1]] {
        let c = Bipartition::new(side, 3).unwrap();
        assert_eq!(certify::certify_ces_exact(&ex, &c, polysys::DEFAULT_SPAIR_CAP).unwrap().verdict, Verdict::Entangled);
    }
}
