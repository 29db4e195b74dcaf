use repdim::endgldim::{check_generator_cogenerator, global_dimension, layering_check};
use repdim::exactlin::FieldSpec;
use repdim::fixtures;
use repdim::tiered::{build_layering, p1_check, p2_check};

#[test]
fn kk_layering_bounds_global_dimension() {
    let a = fixtures::kk(FieldSpec::Prime(2));
    assert!(p1_check(&a).pass);
    assert!(p2_check(&a, 0).unwrap().pass);
    let l = build_layering(&a, 0).unwrap();
    assert_eq!(l.layers, 4);
    check_generator_cogenerator(&a, &l.modules()).unwrap();
    let c = l.category();
    let cert = layering_check(&c, &l.layer, &l.alpha, 0).unwrap();
    assert!(cert.pass, "{:?}", cert.witness);
    assert_eq!(cert.bound, Some(4));
    let g = global_dimension(&c, 12);
    assert!(g.gldim.is_exact());
    assert!(g.gldim.value() <= 4, "{:?}", g.gldim);
    println!("objects {} gldim {:?}", c.len(), g.gldim);
}
