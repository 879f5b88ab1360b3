mod common;

use common::*;
use leibniz_plane::complex::{compose_bar, differential, graded_bracket, is_maurer_cartan, CochainComplex};
use leibniz_plane::rational::{int, zero};
use leibniz_plane::{Cochain, Rational};
use proptest::prelude::*;

/// `(−1)^{(m−1)(n−1)}` for arities `m`, `n`.
fn koszul(m: usize, n: usize) -> Rational {
    if ((m - 1) * (n - 1)).is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// The ten signed terms of `M ∘̄ N` for arity-4 `M` and arity-2 `N`,
/// written out by hand: `(a, b, sign)` puts `N(v_a, v_b)` into slot `b − 1` of `M`,
/// the other arguments keeping their order.
const GOLDEN: [(usize, usize, i64); 10] = [
    (1, 2, 1),
    (1, 3, 1),
    (2, 3, -1),
    (1, 4, 1),
    (2, 4, -1),
    (3, 4, 1),
    (1, 5, 1),
    (2, 5, -1),
    (3, 5, 1),
    (4, 5, -1),
];

fn golden_expansion(m: &Cochain, n: &Cochain) -> Cochain {
    let d = m.dim();
    Cochain::from_fn(d, 5, |v| {
        let mut out = vec![zero(); d];
        for &(a, b, sign) in &GOLDEN {
            let inner = n.eval(&[v[a - 1], v[b - 1]]);
            let rest: Vec<usize> = (1..=5).filter(|&i| i != a && i != b).map(|i| v[i - 1]).collect();
            for (k, nk) in inner.iter().enumerate() {
                if *nk == zero() {
                    continue;
                }
                let mut args = rest.clone();
                args.insert(b - 2, k);
                for (o, x) in out.iter_mut().zip(m.eval(&args)) {
                    *o += int(sign) * nk * x;
                }
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_matches_ten_term_expansion(m in cochain(2, 4), n in cochain(2, 2)) {
        prop_assert_eq!(compose_bar(&m, &n).unwrap(), golden_expansion(&m, &n));
    }

    #[test]
    fn graded_antisymmetry(a in cochain(2, 2), b in cochain(2, 3), c in cochain(2, 1)) {
        for (x, y) in [(&a, &b), (&b, &c), (&a, &c), (&a, &a)] {
            let xy = graded_bracket(x, y).unwrap();
            let yx = graded_bracket(y, x).unwrap();
            prop_assert_eq!(xy, yx.scale(&-koszul(x.arity(), y.arity())));
        }
    }

    #[test]
    fn graded_jacobi(a in cochain(2, 2), b in cochain(2, 1), c in cochain(2, 2)) {
        let br = |x: &Cochain, y: &Cochain| graded_bracket(x, y).unwrap();
        let lhs = br(&a, &br(&b, &c));
        let rhs = br(&br(&a, &b), &c).try_add(&br(&b, &br(&a, &c)).scale(&koszul(a.arity(), b.arity()))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn maurer_cartan_iff_leibniz_on_random_brackets(a in random_algebra(2)) {
        prop_assert_eq!(is_maurer_cartan(&a.to_cochain()).unwrap().0, leibniz_by_brute_force(&a));
    }

    #[test]
    fn maurer_cartan_on_leibniz_algebras(a in leibniz_algebra(3)) {
        prop_assert!(leibniz_by_brute_force(&a));
        prop_assert!(is_maurer_cartan(&a.to_cochain()).unwrap().0);
    }

    #[test]
    fn differential_squares_to_zero(a in leibniz_algebra(3), seed in 0usize..2) {
        let mu = a.to_cochain();
        let d = a.dim();
        let m = if seed == 0 { Cochain::from_matrix(&a.ad(0)).unwrap() } else { mu.scale(&int(3)) };
        let dm = differential(&mu, &m).unwrap();
        prop_assert!(differential(&mu, &dm).unwrap().is_zero());
        prop_assert_eq!(dm.dim(), d);
    }

    #[test]
    fn differential_in_degree_zero(a in leibniz_algebra(3), b in matrix(3)) {
        // d_μ β = μ(β ⊗ 1) + μ(1 ⊗ β) − β ∘ μ
        prop_assume!(a.dim() == 3);
        let mu = a.to_cochain();
        let beta = Cochain::from_matrix(&b).unwrap();
        let expected = mu.precompose_slot(0, &beta).unwrap()
            .try_add(&mu.precompose_slot(1, &beta).unwrap()).unwrap()
            .try_sub(&mu.postcompose(&beta).unwrap()).unwrap();
        prop_assert_eq!(differential(&mu, &beta).unwrap(), expected);
    }
}

#[test]
fn self_bracket_parity() {
    // [[M, M]] vanishes for odd arity and equals 2 M ∘̄ M for even arity
    let cx = CochainComplex::new(5);
    let m1 = Cochain::from_fn(2, 1, |a| vec![int(a[0] as i64 + 1), int(2)]);
    let m3 = Cochain::from_fn(2, 3, |a| vec![int((a[0] * 2 + a[1]) as i64 - a[2] as i64), int(1)]);
    assert!(cx.graded_bracket(&m1, &m1).unwrap().is_zero());
    assert!(cx.graded_bracket(&m3, &m3).unwrap().is_zero());
    let m2 = Cochain::from_fn(2, 2, |a| vec![int(a[0] as i64), int(a[1] as i64 - 1)]);
    let twice = cx.compose_bar(&m2, &m2).unwrap().scale(&int(2));
    assert_eq!(cx.graded_bracket(&m2, &m2).unwrap(), twice);
}

#[test]
fn arity_cap_bounds_the_bracket() {
    let big = Cochain::zero(2, 4);
    assert!(CochainComplex::new(4).graded_bracket(&big, &Cochain::zero(2, 2)).is_err());
    assert!(CochainComplex::new(5).graded_bracket(&big, &Cochain::zero(2, 2)).is_ok());
}
