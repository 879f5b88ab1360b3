//! Strategies and brute-force oracles shared by the property tests.
#![allow(dead_code)]

use leibniz_plane::poly::Monomial;
use leibniz_plane::rational::{int, rat, zero};
use leibniz_plane::{Cochain, LeibnizAlgebra, Matrix, Polynomial, Rational, VectorField};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| rat(a, b))
}

pub fn small_int() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(int)
}

fn monomial(n: usize, positions: &[usize]) -> Monomial {
    let mut e = vec![0u32; 2 * n];
    for &p in positions {
        e[p] += 1;
    }
    Monomial::from_exponents(e)
}

/// Sparse polynomial on `2n` variables with at most `terms` terms of total
/// degree ≤ `max_deg`.
pub fn polynomial(n: usize, max_deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    let term = (0..=max_deg as usize).prop_flat_map(move |d| prop::collection::vec(0..2 * n, d));
    prop::collection::vec((term, small_rational()), 0..=terms).prop_map(move |ts| {
        Polynomial::from_terms(n, ts.into_iter().map(|(pos, c)| (monomial(n, &pos), c))).unwrap()
    })
}

/// Homogeneous polynomial of degree `deg` with integer coefficients.
pub fn homogeneous(n: usize, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    let term = prop::collection::vec(0..2 * n, deg as usize);
    prop::collection::vec((term, small_int()), 0..=terms).prop_map(move |ts| {
        Polynomial::from_terms(n, ts.into_iter().map(|(pos, c)| (monomial(n, &pos), c))).unwrap()
    })
}

/// Field whose components are homogeneous of degree `deg` (polynomial degree `deg − 1`).
pub fn homogeneous_field(n: usize, deg: u32, terms: usize) -> impl Strategy<Value = VectorField> {
    prop::collection::vec(homogeneous(n, deg, terms), 2 * n).prop_map(move |c| VectorField::new(n, c).unwrap())
}

pub fn cochain(dim: usize, arity: usize) -> impl Strategy<Value = Cochain> {
    let len = dim.pow(arity as u32) * dim;
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], len).prop_map(move |v| {
        let mut it = v.into_iter();
        Cochain::from_fn(dim, arity, |_| (0..dim).map(|_| int(it.next().unwrap())).collect())
    })
}

pub fn matrix(size: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, size), size)
        .prop_map(|rows| Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()).unwrap())
}

pub fn symmetric(size: usize) -> impl Strategy<Value = Matrix> {
    matrix(size).prop_map(|m| m.add(&m.transpose()).unwrap())
}

/// Unit lower times unit upper triangular: always invertible over the integers.
pub fn invertible(size: usize) -> impl Strategy<Value = Matrix> {
    (matrix(size), matrix(size)).prop_map(move |(a, b)| {
        let mut lo = Matrix::identity(size);
        let mut up = Matrix::identity(size);
        for i in 0..size {
            for j in 0..i {
                lo[(i, j)] = a[(i, j)].clone();
                up[(j, i)] = b[(j, i)].clone();
            }
        }
        lo.try_mul(&up).unwrap()
    })
}

/// The same algebra in the basis `f_i = Σ_a P[a][i] e_a`.
pub fn change_basis(a: &LeibnizAlgebra, p: &Matrix) -> LeibnizAlgebra {
    let d = a.dim();
    let pinv = p.inverse().unwrap();
    let mut out = LeibnizAlgebra::new(a.name.clone(), d);
    for i in 0..d {
        for j in 0..d {
            let x: Vec<Rational> = (0..d).map(|r| p[(r, i)].clone()).collect();
            let y: Vec<Rational> = (0..d).map(|r| p[(r, j)].clone()).collect();
            let br = a.bracket(&x, &y);
            let coords = pinv.mul_vec(&br).unwrap();
            for (k, c) in coords.into_iter().enumerate() {
                out.set_constant(i, j, k, c).unwrap();
            }
        }
    }
    out
}

pub fn fixtures() -> Vec<LeibnizAlgebra> {
    vec![
        LeibnizAlgebra::abelian(2),
        LeibnizAlgebra::heis(),
        LeibnizAlgebra::sl2(),
        LeibnizAlgebra::so3(),
        LeibnizAlgebra::omni_lie(1).unwrap(),
        LeibnizAlgebra::omni_lie(2).unwrap(),
    ]
}

/// Small fixture Leibniz algebras in a random basis.
pub fn leibniz_algebra(max_dim: usize) -> impl Strategy<Value = LeibnizAlgebra> {
    let small: Vec<LeibnizAlgebra> = fixtures().into_iter().filter(|a| a.dim() <= max_dim).collect();
    prop::sample::select(small).prop_flat_map(|a| {
        let d = a.dim();
        invertible(d).prop_map(move |p| change_basis(&a, &p))
    })
}

/// Random structure constants; almost never Leibniz.
pub fn random_algebra(dim: usize) -> impl Strategy<Value = LeibnizAlgebra> {
    prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -1i64..=1], dim * dim * dim).prop_map(move |v| {
        let mut a = LeibnizAlgebra::new("random", dim);
        for (idx, c) in v.into_iter().enumerate() {
            a.set_constant(idx / (dim * dim), (idx / dim) % dim, idx % dim, int(c)).unwrap();
        }
        a
    })
}

/// `[x,[y,z]] = [[x,y],z] + [y,[x,z]]` evaluated straight from the
/// structure constants on every basis triple.
pub fn leibniz_by_brute_force(a: &LeibnizAlgebra) -> bool {
    let d = a.dim();
    let c = |i: usize, j: usize, k: usize| a.constant(i, j, k).clone();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                for out in 0..d {
                    let mut s = zero();
                    for m in 0..d {
                        s += c(y, z, m) * c(x, m, out);
                        s -= c(x, y, m) * c(m, z, out);
                        s -= c(x, z, m) * c(y, m, out);
                    }
                    if s != zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}
