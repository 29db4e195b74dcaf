use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repdim::algebra::tensor;
use repdim::endgldim::{auslander_generator, build_end_category};
use repdim::exactlin::{FieldSpec, Matrix};
use repdim::fixtures;
use repdim::modcat::{decompose, dual, random_module};
use repdim::odim::{eps_alpha, ext_nonzero, ext_nonzero_cocycle, kronecker_family, split_class, tensor_sequence};
use repdim::pipeline::{certify, CertifyOptions};
use repdim::torsfin::{enumerate_torsionless, gamma_bijection_check, Strategy as Search};

const SMALL: &[&str] = &["a3r2", "a3", "a2", "kron", "square", "fullsquare", "local", "ex84left", "ex84mid", "ex84right"];

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Prime(2)), Just(FieldSpec::Prime(3)), Just(FieldSpec::Prime(5)), Just(FieldSpec::Rational)]
}

fn random_matrix(f: FieldSpec, r: usize, c: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_vec(f, r, c, (0..r * c).map(|_| f.random(&mut rng)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(f in field(), r in 0usize..7, c in 0usize..7, seed in any::<u64>()) {
        let a = random_matrix(f, r, c, seed);
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.cols(), c);
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn low_rank_products(f in field(), n in 1usize..6, k in 0usize..3, seed in any::<u64>()) {
        let a = random_matrix(f, n, k, seed).mul(&random_matrix(f, k, n, seed ^ 1));
        prop_assert!(a.rank() <= k);
        prop_assert_eq!(a.rank() + a.kernel_basis().cols(), n);
    }

    #[test]
    fn multiplication_tables_are_associative(f in field(), i in 0..SMALL.len(), j in 0..2usize) {
        let a = fixtures::by_name(SMALL[i], f).unwrap();
        prop_assert!(a.is_associative());
        let b = fixtures::by_name(["a2", "kron"][j], f).unwrap();
        prop_assert!(tensor(&b, &b).unwrap().is_associative());
        if a.dim() <= 6 {
            prop_assert!(tensor(&a, &b).unwrap().is_associative());
        }
    }

    #[test]
    fn dual_is_an_involution(f in field(), i in 0..SMALL.len(), seed in any::<u64>()) {
        let a = fixtures::by_name(SMALL[i], f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&a, &mut rng, 3);
        let dd = dual(&dual(&m));
        prop_assert_eq!(dd.dims(), m.dims());
        prop_assert_eq!(dd.actions(), m.actions());
    }

    #[test]
    fn decomposition_witness_is_invertible(f in field(), i in 0..SMALL.len(), seed in any::<u64>()) {
        let a = fixtures::by_name(SMALL[i], f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&a, &mut rng, 3);
        let d = decompose(&m, seed).unwrap();
        prop_assert!(d.witness.is_iso());
        let inv = d.witness.inverse().unwrap();
        prop_assert!(d.witness.then(&inv).is_iso());
        let total: usize = d.parts.iter().map(|p| p.source().total_dim()).sum();
        prop_assert_eq!(total, m.total_dim());
        prop_assert_eq!(d.parts.len(), d.class_of.len());
    }

    #[test]
    fn degree_one_tests_agree(p in prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], a in 0i64..7) {
        let f = FieldSpec::Prime(p);
        let k = fixtures::kronecker(f);
        let l = kronecker_family(&k).unwrap();
        let e = tensor_sequence(&l, &eps_alpha(f, &f.from_i64(a))).unwrap();
        prop_assert_eq!(ext_nonzero(&e), ext_nonzero_cocycle(&e));
        prop_assert!(ext_nonzero(&e));
        let s = split_class(e.right_end(), e.left_end()).unwrap();
        prop_assert_eq!(ext_nonzero(&s), ext_nonzero_cocycle(&s));
        prop_assert!(!ext_nonzero(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn gamma_two_way_agreement(f in field(), i in 0..3usize, seed in 0u64..1000) {
        let a = [fixtures::a3_rad2(f), fixtures::commutative_square(f), fixtures::local_xy(f)][i].clone();
        let inv = enumerate_torsionless(&a, Search::Auto, 3, seed).unwrap();
        let g = gamma_bijection_check(&inv, seed).unwrap();
        prop_assert!(g.pass, "{:?}", g.witness);
        prop_assert!(g.pairs.iter().all(|p| p.two_way_agree && p.top_equals_socle));
    }

    #[test]
    fn end_categories_are_associative(f in field(), i in 0..3usize, seed in 0u64..1000) {
        let a = [fixtures::a3_rad2(f), fixtures::commutative_square(f), fixtures::local_xy(f)][i].clone();
        let inv = enumerate_torsionless(&a, Search::Auto, 3, seed).unwrap();
        let c = build_end_category(&auslander_generator(&a, &inv).unwrap(), seed).unwrap();
        prop_assert!(c.is_associative());
    }

    #[test]
    fn certificates_are_deterministic(i in 0..3usize, seed in 0u64..1000) {
        let f = FieldSpec::Prime(3);
        let a = [fixtures::a3_rad2(f), fixtures::kronecker(f), fixtures::commutative_square(f)][i].clone();
        let opts = CertifyOptions { seed, ..Default::default() };
        let x = serde_json::to_string(&certify(&a, &opts).unwrap()).unwrap();
        let y = serde_json::to_string(&certify(&a, &opts).unwrap()).unwrap();
        prop_assert_eq!(x, y);
    }
}
