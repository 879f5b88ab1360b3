use num_traits::Zero;

use crate::complex::Cochain;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;
use crate::structures::LeibnizAlgebra;

use super::rmatrix::RMatrix;

/// `K_ij = tr(ad_{e_i} ad_{e_j})`.
pub fn killing_form(a: &LeibnizAlgebra, require_lie: bool) -> Result<Matrix> {
    if require_lie && !a.is_lie() {
        return Err(Error::precondition(format!("{} is not a Lie algebra", a.name)));
    }
    let d = a.dim();
    let ads: Vec<Matrix> = (0..d).map(|i| a.ad(i)).collect();
    let mut k = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let prod = ads[i].try_mul(&ads[j])?;
            let mut tr = Rational::zero();
            for t in 0..d {
                tr += &prod[(t, t)];
            }
            k[(i, j)] = tr;
        }
    }
    Ok(k)
}

/// `r = K⁻¹` as an r-matrix; fails when `K` is degenerate.
pub fn killing_r_matrix(a: &LeibnizAlgebra) -> Result<RMatrix> {
    let k = killing_form(a, true)?;
    let inv = k
        .inverse()
        .map_err(|_| Error::Singular(format!("the Killing form of {} is degenerate (not semisimple)", a.name)))?;
    RMatrix::new(inv)
}

/// `⟨[x, y], z⟩ = ⟨x, [y, z]⟩` on all basis triples.
pub fn is_invariant_form(a: &LeibnizAlgebra, k: &Matrix) -> bool {
    let d = a.dim();
    let pair = |x: &[Rational], j: usize| -> Rational {
        x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| c * &k[(i, j)]).sum()
    };
    (0..d).all(|i| {
        (0..d).all(|j| {
            (0..d).all(|l| {
                let lhs = pair(a.bracket_basis(i, j), l);
                let rhs: Rational = a
                    .bracket_basis(j, l)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| c * &k[(i, m)])
                    .sum();
                lhs == rhs
            })
        })
    })
}

/// The double `g ⋈ g*` of a Lie algebra with an invariant nondegenerate
/// symmetric form `K`, identified with `g*` by `{p_i, K(p_j)} = K_ij`:
///
/// ```text
/// [K(x), K(y)] = K[x, y],   [x, K(y)] = K[x, y],   [K(x), y] = [x, y].
/// ```
pub fn semisimple_double(a: &LeibnizAlgebra, k: &Matrix) -> Result<Cochain> {
    let d = a.dim();
    if k.rows() != d || k.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: k.rows(),
        });
    }
    if !a.is_lie() {
        return Err(Error::precondition(format!("{} is not a Lie algebra", a.name)));
    }
    if !k.is_symmetric() {
        return Err(Error::precondition("the form is not symmetric"));
    }
    if !is_invariant_form(a, k) {
        return Err(Error::precondition("the form is not invariant"));
    }
    let r = k.inverse().map_err(|_| Error::Singular("the form is degenerate".into()))?;
    // q^a = K(Σ_j r^{aj} p_j): the g-vector behind each dual basis element.
    let lift = |x: usize| -> Vec<Rational> { (0..d).map(|j| r[(x, j)].clone()).collect() };
    // K(y) in q-coordinates: (K y)_l = Σ_k y_k K_kl.
    let to_dual = |y: &[Rational]| -> Vec<Rational> {
        (0..d)
            .map(|l| y.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(kk, c)| c * &k[(kk, l)]).sum())
            .collect()
    };
    Ok(Cochain::from_fn(2 * d, 2, |args| {
        let (x, y) = (args[0], args[1]);
        let mut out = vec![Rational::zero(); 2 * d];
        let ex = |i: usize| crate::structures::unit(d, i);
        match (x < d, y < d) {
            (true, true) => out[..d].clone_from_slice(a.bracket_basis(x, y)),
            (true, false) => {
                let br = a.bracket(&ex(x), &lift(y - d));
                out[d..].clone_from_slice(&to_dual(&br));
            }
            (false, true) => {
                let br = a.bracket(&lift(x - d), &ex(y));
                out[..d].clone_from_slice(&br);
            }
            (false, false) => {
                let br = a.bracket(&lift(x - d), &lift(y - d));
                out[d..].clone_from_slice(&to_dual(&br));
            }
        }
        out
    }))
}
