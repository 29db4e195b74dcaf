//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repdim::algebra::Algebra;
use repdim::approx::{is_torsionless, m_dimension, AddCategory, MDim};
use repdim::endgldim::{auslander_generator, build_end_category, global_dimension, layering_check, Pd};
use repdim::exactlin::{FieldSpec, Matrix};
use repdim::fixtures;
use repdim::modcat::{
    almost_split_sequence, decompose, dual, gamma, injective, is_isomorphic, projective, radical, random_module, simple,
    socle, tau, Module,
};
use repdim::odim::{all_points, ext_nonzero, kronecker_family, kronecker_square_family, kunneth_class, odim_witness};
use repdim::pipeline::{certify, CertifyOptions};
use repdim::tiered::{build_layering, coefficient_quiver, p1_check, p2_check};
use repdim::torsfin::{all_indecomposables, enumerate_torsionless, gamma_bijection_check, Status, Strategy, TorsionlessInventory};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

const Q: FieldSpec = FieldSpec::Rational;
const F2: FieldSpec = FieldSpec::Prime(2);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn inventory(a: &Algebra, seed: u64) -> Result<TorsionlessInventory, String> {
    let inv = enumerate_torsionless(a, Strategy::Auto, 3, seed).map_err(err)?;
    ensure(inv.status.is_complete(), || format!("inventory status {}", inv.status))?;
    Ok(inv)
}

fn iso(a: &Module, b: &Module) -> Result<bool, String> {
    Ok(is_isomorphic(a, b, 0).map_err(err)?.is_some())
}

fn counts(inv: &TorsionlessInventory) -> (usize, usize, usize, usize) {
    (inv.torsionless.len(), inv.divisible.len(), inv.non_projective().len(), inv.non_injective().len())
}

fn c1() -> Check {
    let a = fixtures::a3_rad2(Q);
    let inv = inventory(&a, 0)?;
    let c = counts(&inv);
    ensure(c == (4, 4, 1, 1), || format!("counts {c:?}, expected (4, 4, 1, 1)"))?;
    let s2 = simple(&a, 1);
    ensure(iso(&gamma(&s2), &s2)?, || "γ S(2) ≇ S(2)".into())?;
    let g = gamma_bijection_check(&inv, 0).map_err(err)?;
    ensure(g.pass && g.pairs.iter().all(|p| p.top_equals_socle), || format!("γ check: {:?}", g.witness))?;
    Ok("4 torsionless, 4 divisible, 1 + 1 non-projective/non-injective, γS(2) ≅ S(2), top/soc ok".into())
}

fn c2() -> Check {
    let a = fixtures::commutative_square(Q);
    let inv = inventory(&a, 0)?;
    let c = counts(&inv);
    ensure(c.0 == 6 && c.1 == 6, || format!("counts {c:?}, expected 6 and 6"))?;
    let g = gamma_bijection_check(&inv, 0).map_err(err)?;
    ensure(g.pass, || format!("γ bijection fails: {:?}", g.witness))?;
    Ok(format!("6 torsionless, 6 divisible, γ bijection on {} pair(s)", g.pairs.len()))
}

fn c3() -> Check {
    let a = fixtures::local_xy(Q);
    ensure(a.dim() == 5, || format!("dim {}", a.dim()))?;
    let inv = inventory(&a, 0)?;
    let c = counts(&inv);
    ensure(c.0 == 5 && c.1 == 5, || format!("counts {c:?}, expected 5 and 5"))?;
    ensure(c.2 == c.3, || format!("non-projective {} vs non-injective {}", c.2, c.3))?;
    Ok(format!("dim 5, 5 torsionless, 5 divisible, {} = {} non-projective/non-injective", c.2, c.3))
}

/// gldim of the Auslander algebra of a representation-finite algebra from
/// almost split sequences: S_X has the projective resolution
/// 0 → (-,τX) → (-,E) → (-,X) → S_X → 0 for X non-projective and
/// 0 → (-,rad X) → (-,X) → S_X → 0 for X projective.
fn auslander_algebra_gldim(a: &Algebra, gen: &[Module]) -> Result<Option<usize>, String> {
    let all = all_indecomposables(a, 40, 0).map_err(err)?.ok_or("not representation-finite")?;
    if all.len() != gen.len() {
        return Ok(None);
    }
    let mut gl = 0;
    for x in gen {
        if x.is_projective() {
            gl = gl.max(usize::from(!radical(x).source().is_zero()));
            continue;
        }
        let t = tau(x);
        let s = almost_split_sequence(&t).ok_or("no almost split sequence")?;
        ensure(iso(s.right.target(), x)?, || "almost split sequence does not end at X".into())?;
        ensure(!s.left.source().is_zero(), || "τX vanishes".into())?;
        gl = 2;
    }
    Ok(Some(gl))
}

fn c4() -> Check {
    let mut out = Vec::new();
    for (name, a) in [("A3/rad²", fixtures::a3_rad2(Q)), ("square", fixtures::commutative_square(Q)), ("x²=y²", fixtures::local_xy(Q))] {
        let mut values = Vec::new();
        for seed in 0..3 {
            let t = Instant::now();
            let inv = inventory(&a, seed)?;
            let gen = auslander_generator(&a, &inv).map_err(err)?;
            let c = build_end_category(&gen, seed).map_err(err)?;
            let g = global_dimension(&c, 10).gldim;
            ensure(t.elapsed() < Duration::from_secs(30), || format!("{name}: {:?}", t.elapsed()))?;
            let Pd::Exact(v) = g else { return Err(format!("{name}: gldim {g} not exact")) };
            ensure(v <= 3, || format!("{name}: gldim {v} > 3"))?;
            values.push(v);
            if seed == 0 && name == "A3/rad²" {
                let oracle = auslander_generator_oracle(&a, &gen)?;
                ensure(v == 2 && oracle == 2, || format!("A3/rad²: gldim {v}, oracle {oracle}"))?;
            }
        }
        ensure(values.iter().all(|&v| v == values[0]), || format!("{name}: unstable across seeds {values:?}"))?;
        out.push(format!("{name} {}", values[0]));
    }
    Ok(format!("gldim {} (seeds 0..3, cutoff 10); A3/rad² oracle 2", out.join(", ")))
}

fn auslander_generator_oracle(a: &Algebra, gen: &[Module]) -> Result<usize, String> {
    auslander_algebra_gldim(a, gen)?.ok_or_else(|| "generator is not every indecomposable".into())
}

fn c5() -> Check {
    let mut total = 0;
    let mut worst = 0;
    for (name, a) in [("A3/rad²", fixtures::a3_rad2(Q)), ("square", fixtures::commutative_square(Q)), ("x²=y²", fixtures::local_xy(Q))] {
        let inv = inventory(&a, 0)?;
        let gen = auslander_generator(&a, &inv).map_err(err)?;
        let cat = AddCategory::from_modules(&gen, 0).map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut xs: Vec<Module> = (0..a.num_vertices()).map(|x| simple(&a, x)).collect();
        xs.extend((0..100).map(|_| random_module(&a, &mut rng, 3)));
        for (i, x) in xs.iter().enumerate() {
            match m_dimension(&cat, x, 3, i as u64).map_err(err)? {
                MDim::Exact(v) if v <= 1 => worst = worst.max(v),
                d => return Err(format!("{name}: module {} has M-dimension {d:?}", x.dim_vector_string())),
            }
        }
        total += xs.len();
    }
    Ok(format!("{total} modules (simples + 100 random per fixture), max M-dimension {worst}, 0 violations"))
}

fn c6() -> Check {
    let (k, l) = (fixtures::kronecker(Q), fixtures::kron_a2(Q));
    let e = fixtures::eta_kron(&l, &fixtures::kron_preinjective(&k, 1));
    ensure(e.dims() == [0, 1, 2, 2], || format!("η(I) dims {:?}", e.dims()))?;
    ensure(iso(&e, radical(&projective(&l, 0)).source())?, || "η(I) ≇ rad P(1)".into())?;
    let e2 = fixtures::eta_prime_kron(&l, &fixtures::kron_preprojective(&k, 1));
    ensure(e2.dims() == [2, 2, 1, 0], || format!("η'(T) dims {:?}", e2.dims()))?;
    ensure(iso(&e2, socle(&injective(&l, 3)).cokernel().target())?, || "η'(T) ≇ Q(4)/soc".into())?;
    let mut mods: Vec<Module> = (1..=3).map(|n| fixtures::eta_kron(&l, &fixtures::kron_preprojective(&k, n))).collect();
    mods.push(e);
    let want: [&[usize]; 4] = [&[0, 2, 1, 4], &[0, 3, 2, 6], &[0, 4, 3, 8], &[0, 1, 2, 2]];
    for (m, w) in mods.iter().zip(want) {
        ensure(m.dims() == w, || format!("dims {:?}, expected {w:?}", m.dims()))?;
        ensure(is_torsionless(m), || format!("{w:?} is not torsionless"))?;
    }
    // α34 is injective on every projective, hence on every torsionless
    // module, so dim M_3 ≤ dim M_4 and the literal vector (0,4,8,3) cannot occur.
    let a34 = l.quiver.arrow_index("α34").ok_or("no arrow α34")?;
    for x in 0..4 {
        let p = projective(&l, x);
        let m: &Matrix = p.action(a34);
        ensure(m.rank() == m.cols(), || format!("α34 not injective on P({})", x + 1))?;
    }
    let b = fixtures::kron_a2(F2);
    let inv = enumerate_torsionless(&b, Strategy::BoundedSearch, 3, 0).map_err(err)?;
    ensure(inv.status == Status::Bounded(3), || format!("status {}", inv.status))?;
    Ok("η(I) ≅ rad P(1) (0,1,2,2), η'(T) ≅ Q(4)/soc (2,2,1,0), (0,2,1,4) (0,3,2,6) (0,4,3,8) (0,1,2,2) torsionless; \
        listed (0,4,8,3) read as (0,4,3,8) since α34 is injective on torsionless modules; bounded(3)"
        .into())
}

fn c7() -> Check {
    let kk = fixtures::kk(F2);
    let q = &kk.quiver;
    let comm = kk.relations.iter().filter(|r| r.terms.len() == 2).count();
    ensure((q.num_vertices(), q.num_arrows(), kk.relations.len(), comm) == (4, 8, 4, 4), || {
        format!("{} vertices, {} arrows, {} relations ({comm} commutativity)", q.num_vertices(), q.num_arrows(), kk.relations.len())
    })?;
    let t = q.nicely_tiered_check().map_err(err)?;
    ensure(t.nicely && t.num_tiers == 3, || format!("tiers {:?}", t.tiers))?;
    ensure(p1_check(&kk).pass, || "P1 fails".into())?;
    let p2 = p2_check(&kk, 0).map_err(err)?;
    ensure(p2.pass, || format!("P2 fails: {:?}", p2.failures))?;
    let src = q.vertex_index("s|s").ok_or("no source s|s")?;
    let cq = coefficient_quiver(&kk, src).map_err(err)?;
    ensure(cq.nodes.len() == 9 && cq.connected, || format!("Θ: {} nodes, connected {}", cq.nodes.len(), cq.connected))?;
    ensure(cq.two_nodes.len() == 8 && cq.two_connected, || format!("₂Θ: {} nodes", cq.two_nodes.len()))?;
    let left = fixtures::ex84_left(F2);
    ensure(!p1_check(&left).pass, || "ex84left passes P1".into())?;
    let mid = fixtures::ex84_mid(F2);
    let mid2 = p2_check(&mid, 0).map_err(err)?;
    ensure(!mid2.pass, || "ex84mid passes P2".into())?;
    let right = fixtures::ex84_right(F2);
    let right2 = p2_check(&right, 0).map_err(err)?;
    ensure(p1_check(&right).pass && !right2.pass, || "ex84right: expected P1 pass, P2 fail".into())?;
    Ok(format!(
        "4 vertices, 8 arrows, 4 commutativity relations, 3 tiers, P1/P2 pass, Θ(s|s) 9 nodes connected \
         (₂Θ 8 nodes connected), ex84left P1 fail, ex84mid P2 fail at {}, ex84right P1 pass + P2 fail",
        mid2.failures.first().map(|w| w.split(':').next().unwrap_or(w)).unwrap_or_default()
    ))
}

fn c8() -> Check {
    let kk = fixtures::kk(F2);
    let l = build_layering(&kk, 0).map_err(err)?;
    ensure(l.layers == 4, || format!("{} layers", l.layers))?;
    let c = l.category();
    let cert = layering_check(&c, &l.layer, &l.alpha, 0).map_err(err)?;
    ensure(cert.pass && cert.bound == Some(4), || format!("layering: {:?}", cert.witness))?;
    let g = global_dimension(&c, l.layers + 1).gldim;
    ensure(g.is_exact() && g.value() <= 4, || format!("gldim {g}"))?;
    Ok(format!("{} objects, 4 layers, layering check passes, gldim {g}", c.len()))
}

fn c9() -> Check {
    let mut parts = Vec::new();
    for p in [2, 3, 5] {
        let f = FieldSpec::Prime(p);
        let l = kronecker_family(&fixtures::kronecker(f)).map_err(err)?;
        let cert = odim_witness(&l, &all_points(f, 1).unwrap()).map_err(err)?;
        ensure(cert.passed == cert.total && cert.witness_for == Some(1), || format!("F{p}: {}/{}", cert.passed, cert.total))?;
        parts.push(format!("F{p} {}/{}", cert.passed, cert.total));
    }
    let (kk, l2) = kronecker_square_family(F2).map_err(err)?;
    let cert = odim_witness(&l2, &all_points(F2, 2).unwrap()).map_err(err)?;
    ensure(cert.passed == 4 && cert.total == 4 && cert.witness_for == Some(2), || format!("K⊗K: {}/{}", cert.passed, cert.total))?;
    let k = fixtures::kronecker(F2);
    let l = kronecker_family(&k).map_err(err)?;
    for a in all_points(F2, 1).unwrap() {
        for b in all_points(F2, 1).unwrap() {
            let e = kunneth_class(&kk, &l, &l, &a, &b).map_err(err)?;
            ensure(e.degree() == 2 && ext_nonzero(&e), || format!("external product at {a:?},{b:?} vanishes"))?;
        }
    }
    let r = certify(&fixtures::kk(F2), &CertifyOptions { tiered: true, ..Default::default() }).map_err(err)?;
    ensure(r.bounds.lower == Some(4) && r.bounds.upper == Some(4), || format!("interval {:?}..{:?}", r.bounds.lower, r.bounds.upper))?;
    Ok(format!("Ext¹ nonzero at all points: {}; Ext² nonzero at 4/4 points of F2² (lattice and external product); certify [4,4]", parts.join(", ")))
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn c10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut n = 0;
    for f in [F2, FieldSpec::Prime(3), Q] {
        for name in ["a3r2", "square", "local", "kron", "ex84mid"] {
            let a = fixtures::by_name(name, f).unwrap();
            ensure(a.is_associative(), || format!("{name}: multiplication not associative"))?;
            for _ in 0..10 {
                let m = random_module(&a, &mut rng, 3);
                let dd = dual(&dual(&m));
                ensure(dd.dims() == m.dims() && dd.actions() == m.actions(), || format!("{name}: D² ≠ id"))?;
                let d = decompose(&m, n).map_err(err)?;
                ensure(d.witness.is_iso(), || format!("{name}: decomposition witness not invertible"))?;
                for c in m.actions() {
                    ensure(c.rank() + c.kernel_basis().cols() == c.cols(), || format!("{name}: rank-nullity"))?;
                }
                n += 1;
            }
        }
        for a in [fixtures::a3_rad2(f), fixtures::commutative_square(f), fixtures::local_xy(f)] {
            let inv = inventory(&a, 0)?;
            let g = gamma_bijection_check(&inv, 0).map_err(err)?;
            ensure(g.pairs.iter().all(|p| p.two_way_agree), || "γ two-way computations disagree".into())?;
            let c = build_end_category(&auslander_generator(&a, &inv).map_err(err)?, 0).map_err(err)?;
            ensure(c.is_associative(), || "End category not associative".into())?;
        }
    }
    let bin = env!("CARGO_BIN_EXE_repdim");
    let run = |args: &[&str]| Command::new(bin).args(args).output().map(|o| o.stdout);
    for (args, file) in [(["repdim", "certify"], "a3r2"), (["tors", "gamma"], "square"), (["tiered", "p1p2"], "kk")] {
        let p = fixture_path(file);
        let p = p.to_str().unwrap();
        let x = run(&[args[0], args[1], p, "--seed", "7"]).map_err(err)?;
        let y = run(&[args[0], args[1], p, "--seed", "7"]).map_err(err)?;
        ensure(!x.is_empty() && x == y, || format!("{} {} {file}: certificates differ", args[0], args[1]))?;
    }
    Ok(format!("{n} random modules (dual, decompose, rank-nullity), associativity, γ two-way, 3 certificates byte-identical"))
}

fn main() {
    let criteria: [(usize, fn() -> Check, u64); 10] =
        [(1, c1, 1), (2, c2, 5), (3, c3, 5), (4, c4, 90), (5, c5, 60), (6, c6, 60), (7, c7, 30), (8, c8, 120), (9, c9, 120), (10, c10, 300)];
    let mut failed = 0;
    for (i, f, limit) in criteria {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or("panic".into()))
        });
        let el = t.elapsed();
        let r = r.and_then(|d| if el > Duration::from_secs(limit) { Err(format!("{d}; exceeded {limit}s")) } else { Ok(d) });
        match r {
            Ok(d) => println!("criterion {i:>2}: PASS  {d} [{:.2}s, limit {limit}s]", el.as_secs_f64()),
            Err(d) => {
                failed += 1;
                println!("criterion {i:>2}: FAIL  {d} [{:.2}s, limit {limit}s]", el.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
