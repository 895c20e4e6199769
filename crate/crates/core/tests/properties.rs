use nptcert::certify::{eval_certificate, reorder_copies, seesaw_rank2, Rank2Certificate};
use nptcert::construct::{
    build_psi, build_psi_tilde, dense_form, eval_psi_form, eval_psi_tilde_form, minor_matrix,
    witness_frame,
};
use nptcert::linalg::{
    det_lu, det_perm_sum, hermitian_eig, kron, partial_transpose, svd, BipartiteOperator,
};
use nptcert::perm::{enumerate_perms, Permutation};
use nptcert::rng;
use nptcert::states::{horodecki_3x3, random_density, validate, PureState};
use nptcert::witness::{npt_check, schmidt_decompose, seesaw_min, SeesawOptions};
use nptcert::{Matrix, Vector, C64};
use proptest::prelude::*;

fn perm_strategy(d: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=d).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..=8).prop_flat_map(|d| (perm_strategy(d), perm_strategy(d), perm_strategy(d)))
}

proptest! {
    #[test]
    fn composition_is_associative((f, g, h) in triple()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sign_is_multiplicative((f, g, _) in triple()) {
        prop_assert_eq!(f.compose(&g).unwrap().sign(), f.sign() * g.sign());
        prop_assert_eq!(f.inverse().sign(), f.sign());
    }

    #[test]
    fn inverse_and_matrix((f, g, _) in triple()) {
        let e = Permutation::identity(f.degree());
        prop_assert_eq!(f.compose(&f.inverse()).unwrap(), e);
        // P_{f∘g} = P_f P_g
        let pf = f.matrix::<i64>();
        let pg = g.matrix::<i64>();
        prop_assert_eq!(f.compose(&g).unwrap().matrix::<i64>(), &pf * &pg);
        prop_assert_eq!(det_perm_sum(&pf).unwrap(), f.sign() as i64);
    }
}

#[test]
fn basis_indices_are_distinct() {
    for d in 1..=6 {
        let mut idx: Vec<u64> = enumerate_perms(d).unwrap().iter().map(|p| p.basis_index()).collect();
        let n = idx.len();
        idx.sort_unstable();
        idx.dedup();
        assert_eq!(idx.len(), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_transpose_is_trace_preserving_involution(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut g = rng::seeded(seed);
        let m = rng::gaussian_matrix(da * db, da * db, &mut g);
        let op = BipartiteOperator::new(da, db, m).unwrap();
        let pt = partial_transpose(&op);
        prop_assert_eq!(&partial_transpose(&pt), &op);
        prop_assert!((pt.matrix().trace() - op.matrix().trace()).norm() < 1e-12);
    }

    #[test]
    fn kron_mixed_product(seed in any::<u64>()) {
        let mut g = rng::seeded(seed);
        let a = rng::gaussian_matrix(2, 3, &mut g);
        let b = rng::gaussian_matrix(3, 2, &mut g);
        let c = rng::gaussian_matrix(3, 2, &mut g);
        let d = rng::gaussian_matrix(2, 3, &mut g);
        let lhs = kron(&a, &b).unwrap() * kron(&c, &d).unwrap();
        let rhs = kron(&(&a * &c), &(&b * &d)).unwrap();
        prop_assert!((lhs - rhs).camax() < 1e-11);
    }

    #[test]
    fn determinant_routes_agree(seed in any::<u64>(), n in 1usize..=6) {
        let mut g = rng::seeded(seed);
        let m = rng::gaussian_matrix(n, n, &mut g);
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
        prop_assert!((det_perm_sum(&m).unwrap() - det_lu(&m).unwrap()).norm() <= 1e-10 * scale);
    }

    #[test]
    fn svd_reconstructs(seed in any::<u64>(), r in 1usize..7, c in 1usize..7, rank in 1usize..7) {
        let mut g = rng::seeded(seed);
        let m = rng::gaussian_matrix(r, rank, &mut g) * rng::gaussian_matrix(rank, c, &mut g);
        let s = svd(&m);
        let k = r.min(c);
        let sigma = Matrix::from_fn(k, k, |i, j| if i == j { C64::new(s.values[i], 0.0) } else { C64::new(0.0, 0.0) });
        prop_assert!((&s.u * sigma * s.v.adjoint() - &m).camax() < 1e-11);
        prop_assert!((s.u.adjoint() * &s.u - Matrix::identity(k, k)).camax() < 1e-12);
    }

    #[test]
    fn schmidt_decomposition_reconstructs(seed in any::<u64>(), da in 1usize..5, db in 1usize..5) {
        let mut g = rng::seeded(seed);
        let v: Vector = rng::gaussian_matrix(da * db, 1, &mut g).column(0).into_owned();
        let phi = PureState::normalized(da, db, v).unwrap();
        let s = schmidt_decompose(&phi).unwrap();
        prop_assert!((s.reconstruct() - &phi.amplitudes).norm() < 1e-12);
        let total: f64 = s.coefficients.iter().map(|c| c * c).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(s.coefficients.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn random_states_are_valid(seed in any::<u64>(), rank in 1usize..=6) {
        let rho = random_density(2, 3, rank, seed).unwrap();
        prop_assert!(validate(&rho).passed);
        prop_assert_eq!(random_density(2, 3, rank, seed).unwrap(), rho);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seesaw_iterates_never_increase(seed in any::<u64>(), k in 1usize..=3) {
        let rho = random_density(3, 3, 3, seed).unwrap();
        let opts = SeesawOptions { restarts: 2, max_iters: 60, seed, ..Default::default() };
        let run = seesaw_min(&rho.partial_transpose(), k, &opts).unwrap();
        prop_assert!(run.trace.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{:?}", run.trace);
        let floor = hermitian_eig(rho.partial_transpose().matrix()).unwrap().min_value();
        prop_assert!(run.value >= floor - 1e-12);
    }

    #[test]
    fn ppt_states_admit_no_certificate(a in 0.05f64..0.95, n in 1usize..=2) {
        let rho = horodecki_3x3(a).unwrap();
        let opts = SeesawOptions { restarts: 3, max_iters: 40, ..Default::default() };
        let cert = seesaw_rank2(&rho, n, &opts, 1e-10).unwrap();
        prop_assert!(cert.value >= -1e-10);
        prop_assert!(!cert.conclusive);
    }

    #[test]
    fn certificate_value_ignores_global_phase(seed in any::<u64>(), theta in 0.0f64..6.3) {
        let rho = random_density(2, 3, 2, seed).unwrap();
        let opts = SeesawOptions { restarts: 2, max_iters: 40, ..Default::default() };
        let cert = seesaw_rank2(&rho, 1, &opts, 1e-10).unwrap();
        let phase = C64::from_polar(1.0, theta);
        let rotated = Rank2Certificate {
            b_vecs: cert.b_vecs.iter().map(|v| v * phase).collect(),
            ..cert.clone()
        };
        let v0 = eval_certificate(&rho, &cert).unwrap().value;
        let v1 = eval_certificate(&rho, &rotated).unwrap().value;
        prop_assert!((v0 - v1).abs() < 1e-15);
    }

    #[test]
    fn forced_identity_on_random_npt_states(seed in 0u64..400) {
        let rho = random_density(3, 3, 3, seed).unwrap();
        let check = npt_check(&rho).unwrap();
        prop_assume!(check.is_npt());
        let schmidt = schmidt_decompose(&check.witness).unwrap();
        let frame = witness_frame(&rho, &schmidt).unwrap();
        let d = frame.degree;
        let m = minor_matrix(&frame.ctilde, d).unwrap();
        let fact: f64 = (1..=d).map(|x| x as f64).product();
        let t = eval_psi_tilde_form(&frame.ctilde, d).unwrap();
        prop_assert!((t - det_perm_sum(&m.entries).unwrap() * fact).norm() < 1e-9);
        prop_assert!((m.quadratic_form(&frame.lambda).re - check.min_pt_eigenvalue).abs() < 1e-10);
    }
}

#[test]
fn matrix_free_forms_match_dense_path() {
    for seed in 0..6 {
        let rho = random_density(3, 3, 4, seed).unwrap();
        let c = rho.partial_transpose();
        for d in 2..=3 {
            let t = build_psi_tilde(d).unwrap();
            let p = build_psi(d).unwrap();
            assert!((eval_psi_tilde_form(&c, d).unwrap() - dense_form(&c, &t).unwrap()).norm() < 1e-12);
            assert!((eval_psi_form(&c, d).unwrap() - dense_form(&c, &p).unwrap()).norm() < 1e-12);
        }
    }
}

#[test]
fn reordered_two_copy_spectrum() {
    let rho = random_density(2, 3, 3, 21).unwrap();
    let pt = rho.partial_transpose();
    let one = hermitian_eig(pt.matrix()).unwrap().values;
    let two = hermitian_eig(reorder_copies(&pt, 2).unwrap().matrix()).unwrap().values;
    let mut products: Vec<f64> = one.iter().flat_map(|x| one.iter().map(move |y| x * y)).collect();
    products.sort_by(f64::total_cmp);
    for (a, b) in two.iter().zip(&products) {
        assert!((a - b).abs() < 1e-12);
    }
}
