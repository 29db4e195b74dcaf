use repdim::exactlin::FieldSpec;
use repdim::fixtures;
use repdim::torsfin::{enumerate_torsionless, gamma_bijection_check, verify_inventory, Status, Strategy};

const F: FieldSpec = FieldSpec::Prime(3);

#[test]
fn commutative_square_has_six_and_six() {
    let a = fixtures::commutative_square(F);
    let inv = enumerate_torsionless(&a, Strategy::Auto, 3, 0).unwrap();
    assert_eq!(inv.status, Status::Complete(Strategy::ArClosure));
    assert_eq!(inv.torsionless.len(), 6);
    assert_eq!(inv.divisible.len(), 6);
    assert_eq!(inv.non_projective().len(), 1);
    assert_eq!(inv.non_injective().len(), 1);
    assert!(gamma_bijection_check(&inv, 0).unwrap().pass);
    assert!(verify_inventory(&a, &inv, 200, 1).unwrap().pass);
}

#[test]
fn local_algebra_has_five_and_five() {
    let a = fixtures::local_xy(F);
    let inv = enumerate_torsionless(&a, Strategy::Auto, 3, 0).unwrap();
    assert_eq!(inv.status, Status::Complete(Strategy::ArClosure));
    assert_eq!(inv.torsionless.len(), 5);
    assert_eq!(inv.divisible.len(), 5);
    let g = gamma_bijection_check(&inv, 0).unwrap();
    assert!(g.pass, "{g:?}");
    assert_eq!(g.pairs.len(), 4);
    assert!(verify_inventory(&a, &inv, 200, 1).unwrap().pass);
}

#[test]
fn kronecker_times_a2_is_bounded() {
    let a = fixtures::kron_a2(FieldSpec::Prime(2));
    let inv = enumerate_torsionless(&a, Strategy::BoundedSearch, 3, 0).unwrap();
    assert_eq!(inv.status, Status::Bounded(3));
    let d: Vec<String> = inv.torsionless.iter().map(|m| m.dim_vector_string()).collect();
    assert!(inv.torsionless.len() > 5, "{d:?}");
}

#[test]
fn generator_global_dimensions() {
    use repdim::endgldim::{auslander_generator, build_end_category, global_dimension, Pd};
    for (a, expect) in [(fixtures::commutative_square(F), None), (fixtures::local_xy(F), None), (fixtures::a3_rad2(F), Some(2))] {
        let inv = enumerate_torsionless(&a, Strategy::Auto, 3, 0).unwrap();
        let g = auslander_generator(&a, &inv).unwrap();
        let c = build_end_category(&g, 0).unwrap();
        let cert = global_dimension(&c, 10);
        eprintln!("{} objects, gldim {}", g.len(), cert.gldim);
        assert!(cert.gldim.is_exact() && cert.gldim.value() <= 3);
        if let Some(e) = expect {
            assert_eq!(cert.gldim, Pd::Exact(e));
        }
    }
}
