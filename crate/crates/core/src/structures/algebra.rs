use std::fmt;

use num_traits::{One, Zero};

use crate::check::{for_each_tuple, CheckOutcome, DefectValue};
use crate::complex::Cochain;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::rational::{int, Rational};

/// A finite-dimensional algebra `[e_i, e_j] = Σ_k C^k_ij e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeibnizAlgebra {
    pub name: String,
    dim: usize,
    // C^k_ij at (i·d + j)·d + k
    constants: Vec<Rational>,
}

impl LeibnizAlgebra {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        LeibnizAlgebra {
            name: name.into(),
            dim,
            constants: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// From `(i, j, k, C^k_ij)` entries with 0-based indices.
    pub fn from_entries(name: impl Into<String>, dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut a = LeibnizAlgebra::new(name, dim);
        for (i, j, k, c) in entries {
            a.set_constant(*i, *j, *k, c.clone())?;
        }
        Ok(a)
    }

    fn from_ints(name: &str, dim: usize, entries: &[(usize, usize, usize, i64)]) -> Self {
        let entries: Vec<_> = entries.iter().map(|&(i, j, k, c)| (i, j, k, int(c))).collect();
        LeibnizAlgebra::from_entries(name, dim, &entries).expect("fixture indices in range")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<()> {
        let d = self.dim;
        if let Some(&bad) = [i, j, k].iter().find(|&&x| x >= d) {
            return Err(Error::IndexOutOfRange { index: bad, limit: d });
        }
        self.constants[(i * d + j) * d + k] = c;
        Ok(())
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let b = (i * self.dim + j) * self.dim;
        &self.constants[b..b + self.dim]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (o, c) in out.iter_mut().zip(self.bracket_basis(i, j)) {
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| *self.constant(i, j, k) == -self.constant(j, i, k))))
    }

    /// A Lie algebra is an antisymmetric Leibniz algebra.
    pub fn is_lie(&self) -> bool {
        self.is_antisymmetric() && check_leibniz(self).holds()
    }

    /// The bracket as an arity-2 cochain on the algebra itself.
    pub fn to_cochain(&self) -> Cochain {
        Cochain::from_fn(self.dim, 2, |a| self.bracket_basis(a[0], a[1]).to_vec())
    }

    pub fn from_cochain(name: impl Into<String>, mu: &Cochain) -> Result<Self> {
        if mu.arity() != 2 {
            return Err(Error::precondition("a bracket is an arity-2 cochain"));
        }
        Ok(LeibnizAlgebra {
            name: name.into(),
            dim: mu.dim(),
            constants: mu.coeffs().to_vec(),
        })
    }

    /// `ad_x` for a basis element, as a matrix acting on coordinate columns.
    pub fn ad(&self, i: usize) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            for k in 0..d {
                m[(k, j)] = self.constant(i, j, k).clone();
            }
        }
        m
    }

    pub fn abelian(dim: usize) -> Self {
        LeibnizAlgebra::new(format!("abelian{dim}"), dim)
    }

    /// `[e1, e1] = e2`, all other brackets zero.
    pub fn heis() -> Self {
        LeibnizAlgebra::from_ints("heis", 2, &[(0, 0, 1, 1)])
    }

    /// `sl(2)` in the basis `(h, e, f)`.
    pub fn sl2() -> Self {
        LeibnizAlgebra::from_ints(
            "sl2",
            3,
            &[
                (0, 1, 1, 2),
                (1, 0, 1, -2),
                (0, 2, 2, -2),
                (2, 0, 2, 2),
                (1, 2, 0, 1),
                (2, 1, 0, -1),
            ],
        )
    }

    /// `so(3)`: `[e_i, e_j] = ε_ijk e_k`.
    pub fn so3() -> Self {
        LeibnizAlgebra::from_ints(
            "so3",
            3,
            &[
                (0, 1, 2, 1),
                (1, 0, 2, -1),
                (1, 2, 0, 1),
                (2, 1, 0, -1),
                (2, 0, 1, 1),
                (0, 2, 1, -1),
            ],
        )
    }

    /// `[e1, e1] = e1`: not a Leibniz algebra.
    pub fn non_leibniz() -> Self {
        LeibnizAlgebra::from_ints("bad", 1, &[(0, 0, 0, 1)])
    }

    /// The omni-Lie algebra `gl(V) ⊕ V` with `[f1 + v1, f2 + v2] = [f1, f2] + f1(v2)`.
    ///
    /// Basis: `E_ab` (matrix units, `E_ab e_c = δ_bc e_a`) at index `a·v + b`,
    /// followed by `e_c` at `v² + c`.
    pub fn omni_lie(v: usize) -> Result<Self> {
        if v < 1 {
            return Err(Error::precondition("omni-Lie algebra needs dim V ≥ 1"));
        }
        let mut alg = LeibnizAlgebra::new(format!("omni{v}"), v * v + v);
        let e = |a: usize, b: usize| a * v + b;
        let one = Rational::one();
        for a in 0..v {
            for b in 0..v {
                for c in 0..v {
                    for d in 0..v {
                        // [E_ab, E_cd] = δ_bc E_ad − δ_da E_cb
                        let i = e(a, b);
                        let j = e(c, d);
                        if b == c {
                            let k = e(a, d);
                            let cur = alg.constant(i, j, k) + &one;
                            alg.set_constant(i, j, k, cur)?;
                        }
                        if d == a {
                            let k = e(c, b);
                            let cur = alg.constant(i, j, k) - &one;
                            alg.set_constant(i, j, k, cur)?;
                        }
                    }
                }
                alg.set_constant(e(a, b), v * v + b, v * v + a, one.clone())?;
            }
        }
        Ok(alg)
    }
}

impl fmt::Display for LeibnizAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim)
    }
}

/// The Leibniz identity `[e_i,[e_j,e_k]] = [[e_i,e_j],e_k] + [e_j,[e_i,e_k]]`
/// on all basis triples; defects are `lhs − rhs`.
pub fn check_leibniz(a: &LeibnizAlgebra) -> CheckOutcome {
    let d = a.dim;
    let mut out = CheckOutcome::pass();
    for_each_tuple(d, 3, |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        let ei = unit(d, i);
        let ej = unit(d, j);
        let lhs = a.bracket(&ei, a.bracket_basis(j, k));
        let r1 = a.bracket(a.bracket_basis(i, j), &unit(d, k));
        let r2 = a.bracket(&ej, a.bracket_basis(i, k));
        let defect: Vec<Rational> = lhs
            .iter()
            .zip(r1.iter().zip(&r2))
            .map(|(l, (x, y))| l - x - y)
            .collect();
        if defect.iter().any(|c| !c.is_zero()) {
            out.push(t.to_vec(), DefectValue::Vector(defect));
        }
    });
    out
}

pub(crate) fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::one();
    v
}

/// The semidirect double `g ⋉ g*` on `W = g ⊕ g*` (basis `p_1..p_d, q^1..q^d`).
pub fn semidirect_double(a: &LeibnizAlgebra) -> Result<Cochain> {
    if let Some(defect) = check_leibniz(a).first() {
        return Err(Error::precondition(format!(
            "{} fails the Leibniz identity at {:?}",
            a.name,
            defect.one_based()
        )));
    }
    Ok(semidirect_bracket(a))
}

/// The double bracket without the Leibniz precondition.
pub(crate) fn semidirect_bracket(a: &LeibnizAlgebra) -> Cochain {
    let d = a.dim;
    Cochain::from_fn(2 * d, 2, |args| {
        let mut out = vec![Rational::zero(); 2 * d];
        let (x, y) = (args[0], args[1]);
        match (x < d, y < d) {
            // [p_i, p_j] = C^k_ij p_k
            (true, true) => out[..d].clone_from_slice(a.bracket_basis(x, y)),
            // ⟨p_c, [p_i, q^b]⟩ = −⟨[p_i, p_c], q^b⟩
            (true, false) => {
                for c in 0..d {
                    out[d + c] = -a.constant(x, c, y - d);
                }
            }
            // ⟨p_c, [q^a, p_j]⟩ = ⟨[p_c, p_j] + [p_j, p_c], q^a⟩
            (false, true) => {
                for c in 0..d {
                    out[d + c] = a.constant(c, y, x - d) + a.constant(y, c, x - d);
                }
            }
            (false, false) => {}
        }
        out
    })
}

/// `(l1, l2)_− = {l1, l2}` for linear functions.
pub fn pairing_minus(l1: &Polynomial, l2: &Polynomial) -> Result<Rational> {
    for l in [l1, l2] {
        if !l.is_zero() && !l.is_homogeneous_of(1) {
            return Err(Error::precondition("the pairing is defined on linear functions"));
        }
    }
    l1.poisson(l2)?.constant_value()
}

/// The Poisson pairing on coordinate vectors of `W = V ⊕ V*`.
pub(crate) fn omega(n: usize, x: &[Rational], y: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for i in 0..n {
        s += &x[i] * &y[n + i] - &x[n + i] * &y[i];
    }
    s
}

/// Outcome of the two invariance identities, checked separately.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvarianceOutcome {
    /// `(l1, [l2, l3]) = −([l2, l1], l3)`.
    pub left: CheckOutcome,
    /// `(l1, [l2, l3]) = ([l1, l3] + [l3, l1], l2)`.
    pub right: CheckOutcome,
}

impl InvarianceOutcome {
    pub fn holds(&self) -> bool {
        self.left.holds() && self.right.holds()
    }
}

/// Invariance of the Poisson pairing under an arity-2 bracket on `W`.
pub fn check_invariance(mu: &Cochain) -> Result<InvarianceOutcome> {
    if mu.arity() != 2 {
        return Err(Error::precondition("invariance is defined for arity-2 brackets"));
    }
    if !mu.dim().is_multiple_of(2) {
        return Err(Error::precondition("the bracket must live on an even-dimensional W"));
    }
    let n = mu.dim() / 2;
    let dim = mu.dim();
    let mut out = InvarianceOutcome::default();
    for_each_tuple(dim, 3, |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let la = unit(dim, a);
        let lb = unit(dim, b);
        let lc = unit(dim, c);
        let lhs = omega(n, &la, mu.eval(&[b, c]));
        let left = &lhs + omega(n, mu.eval(&[b, a]), &lc);
        if !left.is_zero() {
            out.left.push(t.to_vec(), DefectValue::Scalar(left));
        }
        let sym: Vec<Rational> = mu.eval(&[a, c]).iter().zip(mu.eval(&[c, a])).map(|(x, y)| x + y).collect();
        let right = &lhs - omega(n, &sym, &lb);
        if !right.is_zero() {
            out.right.push(t.to_vec(), DefectValue::Scalar(right));
        }
    });
    Ok(out)
}
