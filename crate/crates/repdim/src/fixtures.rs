//! Builtin example algebras and modules.

use crate::algebra::{tensor, Algebra, Quiver, Relation};
use crate::exactlin::{FieldSpec, Matrix};
use crate::modcat::Module;

fn build(field: FieldSpec, vertices: &[&str], arrows: &[(&str, &str, &str)], rels: &[Rel]) -> Algebra {
    let q = Quiver::from_names(vertices, arrows).expect("fixture quiver");
    let idx = |n: &str| q.arrow_index(n).expect("fixture arrow");
    let relations = rels
        .iter()
        .map(|r| match r {
            Rel::Zero(p) => Relation::monomial(field, p.iter().map(|a| idx(a)).collect()),
            Rel::Comm(p, s) => {
                Relation::commutativity(field, p.iter().map(|a| idx(a)).collect(), s.iter().map(|a| idx(a)).collect())
            }
        })
        .collect();
    Algebra::build(q, field, relations, crate::algebra::DEFAULT_MAX_LEN).expect("fixture algebra")
}

enum Rel {
    Zero(&'static [&'static str]),
    Comm(&'static [&'static str], &'static [&'static str]),
}

/// Linear A₃ (3 → 2 → 1) modulo the square of its radical.
pub fn a3_rad2(field: FieldSpec) -> Algebra {
    build(field, &["1", "2", "3"], &[("b", "3", "2"), ("a", "2", "1")], &[Rel::Zero(&["b", "a"])])
}

/// Linear A₃ (3 → 2 → 1) without relations.
pub fn a3_linear(field: FieldSpec) -> Algebra {
    build(field, &["1", "2", "3"], &[("b", "3", "2"), ("a", "2", "1")], &[])
}

/// u → v.
pub fn a2(field: FieldSpec) -> Algebra {
    build(field, &["u", "v"], &[("a", "u", "v")], &[])
}

/// s ⇉ t with arrows b, b'.
pub fn kronecker(field: FieldSpec) -> Algebra {
    build(field, &["s", "t"], &[("b", "s", "t"), ("b'", "s", "t")], &[])
}

/// Commutative square a → b → d, a → c → d with an extra arrow b → e.
pub fn commutative_square(field: FieldSpec) -> Algebra {
    build(
        field,
        &["a", "b", "c", "d", "e"],
        &[("ab", "a", "b"), ("ac", "a", "c"), ("bd", "b", "d"), ("cd", "c", "d"), ("be", "b", "e")],
        &[Rel::Comm(&["ab", "bd"], &["ac", "cd"])],
    )
}

/// Fully commutative square 1 → 2 → 4, 1 → 3 → 4.
pub fn fully_commutative_square(field: FieldSpec) -> Algebra {
    build(
        field,
        &["1", "2", "3", "4"],
        &[("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")],
        &[Rel::Comm(&["a", "c"], &["b", "d"])],
    )
}

/// Local algebra with loops x, y and relations x² = y², xy = 0.
pub fn local_xy(field: FieldSpec) -> Algebra {
    build(field, &["o"], &[("x", "o", "o"), ("y", "o", "o")], &[Rel::Comm(&["x", "x"], &["y", "y"]), Rel::Zero(&["x", "y"])])
}

/// Kronecker ⊗ A₂ with hand-named vertices: 1 = (s,u), 2 = (s,v),
/// 3 = (t,u), 4 = (t,v).
pub fn kron_a2(field: FieldSpec) -> Algebra {
    build(
        field,
        &["1", "2", "3", "4"],
        &[
            ("α12", "1", "2"),
            ("β13", "1", "3"),
            ("β'13", "1", "3"),
            ("β24", "2", "4"),
            ("β'24", "2", "4"),
            ("α34", "3", "4"),
        ],
        &[Rel::Comm(&["α12", "β24"], &["β13", "α34"]), Rel::Comm(&["α12", "β'24"], &["β'13", "α34"])],
    )
}

/// Kronecker ⊗ Kronecker built by the tensor construction.
pub fn kk(field: FieldSpec) -> Algebra {
    let k = kronecker(field);
    tensor(&k, &k).expect("same field")
}

/// c → u → u', c → v → v'.
pub fn ex84_left(field: FieldSpec) -> Algebra {
    build(
        field,
        &["c", "u", "v", "u'", "v'"],
        &[("cu", "c", "u"), ("cv", "c", "v"), ("uu'", "u", "u'"), ("vv'", "v", "v'")],
        &[],
    )
}

/// a → m, a' → m, a' → n, m → p, n → p, n → q with a'mp = a'np.
pub fn ex84_mid(field: FieldSpec) -> Algebra {
    build(
        field,
        &["a", "a'", "m", "n", "p", "q"],
        &[
            ("am", "a", "m"),
            ("a'm", "a'", "m"),
            ("a'n", "a'", "n"),
            ("mp", "m", "p"),
            ("np", "n", "p"),
            ("nq", "n", "q"),
        ],
        &[Rel::Comm(&["a'm", "mp"], &["a'n", "np"])],
    )
}

/// a → b, a' → b, b → c.
pub fn ex84_right(field: FieldSpec) -> Algebra {
    build(field, &["a", "a'", "b", "c"], &[("ab", "a", "b"), ("a'b", "a'", "b"), ("bc", "b", "c")], &[])
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "a3r2", "a3", "a2", "kron", "square", "fullsquare", "local", "kronA2", "kk", "ex84left", "ex84mid", "ex84right",
];

pub fn by_name(name: &str, field: FieldSpec) -> Option<Algebra> {
    Some(match name {
        "a3r2" => a3_rad2(field),
        "a3" => a3_linear(field),
        "a2" => a2(field),
        "kron" => kronecker(field),
        "square" => commutative_square(field),
        "fullsquare" => fully_commutative_square(field),
        "local" => local_xy(field),
        "kronA2" => kron_a2(field),
        "kk" => kk(field),
        "ex84left" => ex84_left(field),
        "ex84mid" => ex84_mid(field),
        "ex84right" => ex84_right(field),
        _ => return None,
    })
}

/// The Kronecker representation U ⇉ V given by the maps w, w'.
pub fn kronecker_module(alg: &Algebra, w: Matrix, w2: Matrix) -> Module {
    let dims = vec![w.cols(), w.rows()];
    Module::new(alg, dims, vec![w, w2]).expect("kronecker module")
}

fn stacked(field: FieldSpec, n: usize, top: bool) -> Matrix {
    let i = Matrix::identity(field, n);
    let z = Matrix::zeros(field, 1, n);
    if top {
        Matrix::vstack(field, n, &[&i, &z])
    } else {
        Matrix::vstack(field, n, &[&z, &i])
    }
}

/// Preprojective Kronecker module of dimension (n, n+1).
pub fn kron_preprojective(alg: &Algebra, n: usize) -> Module {
    let f = alg.field;
    kronecker_module(alg, stacked(f, n, true), stacked(f, n, false))
}

/// Preinjective Kronecker module of dimension (n+1, n).
pub fn kron_preinjective(alg: &Algebra, n: usize) -> Module {
    let f = alg.field;
    kronecker_module(alg, stacked(f, n, true).transpose(), stacked(f, n, false).transpose())
}

/// Regular Kronecker module (k, k; 1, α).
pub fn kron_regular(alg: &Algebra, alpha: &crate::exactlin::Scalar) -> Module {
    let f = alg.field;
    kronecker_module(alg, Matrix::identity(f, 1), Matrix::from_vec(f, 1, 1, vec![alpha.clone()]))
}

/// η(U, V; w, w') = (0, V, U, V⊕V) over [`kron_a2`], with β24 = [I;0],
/// β'24 = [0;I] and α34 = [w;w'].
pub fn eta_kron(alg: &Algebra, k: &Module) -> Module {
    let f = alg.field;
    let (u, v) = (k.dim(0), k.dim(1));
    let (w, w2) = (k.action(0), k.action(1));
    let iv = Matrix::identity(f, v);
    let zv = Matrix::zeros(f, v, v);
    let action = vec![
        Matrix::zeros(f, v, 0),
        Matrix::zeros(f, u, 0),
        Matrix::zeros(f, u, 0),
        Matrix::vstack(f, v, &[&iv, &zv]),
        Matrix::vstack(f, v, &[&zv, &iv]),
        Matrix::vstack(f, u, &[w, w2]),
    ];
    Module::new(alg, vec![0, v, u, 2 * v], action).expect("η module")
}

/// η'(U, V; w, w') = (U⊕U, V, U, 0) over [`kron_a2`], with α12 = [w|w'],
/// β13 = [I|0] and β'13 = [0|I].
pub fn eta_prime_kron(alg: &Algebra, k: &Module) -> Module {
    let f = alg.field;
    let (u, v) = (k.dim(0), k.dim(1));
    let (w, w2) = (k.action(0), k.action(1));
    let iu = Matrix::identity(f, u);
    let zu = Matrix::zeros(f, u, u);
    let action = vec![
        Matrix::hstack(f, v, &[w, w2]),
        Matrix::hstack(f, u, &[&iu, &zu]),
        Matrix::hstack(f, u, &[&zu, &iu]),
        Matrix::zeros(f, 0, v),
        Matrix::zeros(f, 0, v),
        Matrix::zeros(f, 0, u),
    ];
    Module::new(alg, vec![2 * u, v, u, 0], action).expect("η' module")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::is_torsionless;
    use crate::modcat::{injective, is_isomorphic, projective, radical, socle};

    const F: FieldSpec = FieldSpec::Prime(3);

    #[test]
    fn dimensions() {
        assert_eq!(local_xy(F).dim(), 5);
        assert_eq!(local_xy(F).loewy_length(), 3);
        assert_eq!(kron_a2(F).dim(), tensor(&kronecker(F), &a2(F)).unwrap().dim());
        assert_eq!(kk(F).dim(), 16);
        assert_eq!(a3_rad2(F).dim(), 5);
        for name in NAMES {
            assert!(by_name(name, F).unwrap().is_associative(), "{name}");
        }
    }

    #[test]
    fn eta_of_preinjective_is_radical_of_p1() {
        let (k, l) = (kronecker(F), kron_a2(F));
        let e = eta_kron(&l, &kron_preinjective(&k, 1));
        assert_eq!(e.dims(), &[0, 1, 2, 2]);
        let rad = radical(&projective(&l, 0));
        assert!(is_isomorphic(&e, rad.source(), 0).unwrap().is_some());
    }

    #[test]
    fn eta_prime_is_injective_mod_socle() {
        let (k, l) = (kronecker(F), kron_a2(F));
        let e = eta_prime_kron(&l, &kron_preprojective(&k, 1));
        assert_eq!(e.dims(), &[2, 2, 1, 0]);
        let q4 = socle(&injective(&l, 3)).cokernel();
        assert!(is_isomorphic(&e, q4.target(), 0).unwrap().is_some());
    }

    #[test]
    fn eta_images_are_torsionless() {
        let (k, l) = (kronecker(F), kron_a2(F));
        for n in 1..4 {
            let m = eta_kron(&l, &kron_preprojective(&k, n));
            assert_eq!(m.dims(), &[0, n + 1, n, 2 * n + 2]);
            assert!(is_torsionless(&m));
        }
    }
}
