use num_traits::{One, Zero};

use crate::check::{CheckOutcome, DefectValue};
use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::structures::{omega, psi_of_degree, StructureField};

use super::decompose::bidegree_decompose;
use super::rmatrix::RMatrix;

/// A subspace of `W = V ⊕ V*` spanned by linearly independent linear
/// functions, stored as coordinate vectors of length `2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn new(n: usize, basis: Vec<Vec<Rational>>) -> Result<Self> {
        for v in &basis {
            Error::check_dim(2 * n, v.len())?;
        }
        if !basis.is_empty() && Matrix::from_rows(basis.clone())?.rank() != basis.len() {
            return Err(Error::precondition("subspace basis is linearly dependent"));
        }
        Ok(Subspace { n, basis })
    }

    pub fn from_polynomials(n: usize, polys: &[Polynomial]) -> Result<Self> {
        let basis = polys
            .iter()
            .map(|p| {
                Error::check_dim(n, p.n())?;
                p.linear_coefficients()
            })
            .collect::<Result<Vec<_>>>()?;
        Subspace::new(n, basis)
    }

    /// `span(p_1, …, p_n)`.
    pub fn v(n: usize) -> Self {
        Subspace::coordinate(n, 0..n)
    }

    /// `span(q^1, …, q^n)`.
    pub fn v_dual(n: usize) -> Self {
        Subspace::coordinate(n, n..2 * n)
    }

    /// Span of the given coordinate functions.
    pub fn coordinate(n: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let basis = positions.into_iter().map(|a| crate::structures::unit(2 * n, a)).collect();
        Subspace::new(n, basis).expect("coordinate vectors are independent")
    }

    /// `{p_i + s_ij q^j}`.
    pub fn graph_of_symmetric(s: &Matrix) -> Result<Self> {
        let n = s.rows();
        Error::check_dim(n, s.cols())?;
        let basis = (0..n)
            .map(|i| {
                let mut v = crate::structures::unit(2 * n, i);
                for j in 0..n {
                    v[n + j] = s[(i, j)].clone();
                }
                v
            })
            .collect();
        Subspace::new(n, basis)
    }

    /// The graph `{r(q) + q}` of an r-matrix.
    pub fn graph_of_r(r: &RMatrix) -> Self {
        let n = r.n();
        let basis = (0..n)
            .map(|i| {
                let mut v = crate::structures::unit(2 * n, n + i);
                for j in 0..n {
                    v[j] = r.entry(i, j).clone();
                }
                v
            })
            .collect();
        Subspace::new(n, basis).expect("graph vectors are independent")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|v| Polynomial::from_linear(self.n, v)).collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0) == self.basis.len()
    }

    /// Row-reduced basis; deterministic for a given span.
    pub fn reduced(&self) -> Subspace {
        if self.basis.is_empty() {
            return self.clone();
        }
        let (r, pivots) = Matrix::from_rows(self.basis.clone()).expect("shape").rref();
        Subspace {
            n: self.n,
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }
}

/// `dim D = n` and `{l, l'} = 0` on `D`.
pub fn is_lagrangian(d: &Subspace) -> bool {
    d.dim() == d.n
        && d.basis
            .iter()
            .all(|x| d.basis.iter().all(|y| omega(d.n, x, y).is_zero()))
}

/// Closure of a subspace under the derived bracket of `L`; defects are the
/// brackets of basis pairs that leave the subspace.
pub fn subalgebra_check(l: &StructureField, d: &Subspace) -> Result<CheckOutcome> {
    Error::check_dim(l.n(), d.n())?;
    let mu = psi_of_degree(l.field(), 1)?;
    let mut out = CheckOutcome::pass();
    for (i, x) in d.basis.iter().enumerate() {
        for (j, y) in d.basis.iter().enumerate() {
            let br = mu.eval_vectors(&[x, y])?;
            if !d.contains(&br) {
                out.push(vec![i, j], DefectValue::Vector(br));
            }
        }
    }
    Ok(out)
}

/// Both halves are Leibniz subalgebras of `(W, L)`.
pub fn is_canonical_pair(l: &StructureField, d: &Subspace, dstar: &Subspace) -> Result<bool> {
    check_pair_preconditions(l, d, dstar)?;
    Ok(subalgebra_check(l, d)?.holds() && subalgebra_check(l, dstar)?.holds())
}

fn check_pair_preconditions(l: &StructureField, d: &Subspace, dstar: &Subspace) -> Result<()> {
    if !l.is_leibniz() {
        return Err(Error::precondition("the structure field is not a Leibniz field"));
    }
    Error::check_dim(l.n(), d.n())?;
    Error::check_dim(l.n(), dstar.n())?;
    if !is_lagrangian(d) {
        return Err(Error::precondition("D is not Lagrangian"));
    }
    if !is_lagrangian(dstar) {
        return Err(Error::precondition("D* is not Lagrangian"));
    }
    let mut rows = d.basis.clone();
    rows.extend(dstar.basis.iter().cloned());
    if Matrix::from_rows(rows)?.rank() != 2 * l.n() {
        return Err(Error::precondition("D and D* do not span W"));
    }
    Ok(())
}

/// Canonical coordinates `(p̄, q̄)` with `p̄ ∈ D`, `q̄ ∈ D*` and
/// `{p̄_i, q̄^j} = δ_i^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalFrame {
    n: usize,
    p_bar: Vec<Vec<Rational>>,
    q_bar: Vec<Vec<Rational>>,
}

impl CanonicalFrame {
    /// `p̄` is the row-reduced basis of `D`; `q̄` is the basis of `D*` dual to it.
    pub fn new(d: &Subspace, dstar: &Subspace) -> Result<Self> {
        let n = d.n();
        if !is_lagrangian(d) || !is_lagrangian(dstar) {
            return Err(Error::precondition("a canonical frame needs two Lagrangian subspaces"));
        }
        let p_bar = d.reduced().basis;
        let dstar_basis = dstar.reduced().basis;
        let g = Matrix::from_rows(
            p_bar
                .iter()
                .map(|x| dstar_basis.iter().map(|y| omega(n, x, y)).collect())
                .collect(),
        )?;
        let g_inv = g.inverse().map_err(|_| Error::precondition("D and D* are not in duality"))?;
        let q_bar = (0..n)
            .map(|j| {
                let mut v = vec![Rational::zero(); 2 * n];
                for (k, y) in dstar_basis.iter().enumerate() {
                    let c = &g_inv[(k, j)];
                    if c.is_zero() {
                        continue;
                    }
                    for (a, ya) in v.iter_mut().zip(y) {
                        *a += c * ya;
                    }
                }
                v
            })
            .collect();
        let frame = CanonicalFrame { n, p_bar, q_bar };
        frame.check_symplectic()?;
        Ok(frame)
    }

    fn check_symplectic(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let delta = if i == j { Rational::one() } else { Rational::zero() };
                if omega(n, &self.p_bar[i], &self.q_bar[j]) != delta
                    || !omega(n, &self.p_bar[i], &self.p_bar[j]).is_zero()
                    || !omega(n, &self.q_bar[i], &self.q_bar[j]).is_zero()
                {
                    return Err(Error::precondition("internal error: frame is not canonical"));
                }
            }
        }
        Ok(())
    }

    pub fn p_bar(&self) -> &[Vec<Rational>] {
        &self.p_bar
    }

    pub fn q_bar(&self) -> &[Vec<Rational>] {
        &self.q_bar
    }

    /// The barred coordinate functions, as linear polynomials in `(p, q)`.
    pub fn barred_polynomials(&self) -> Vec<Polynomial> {
        self.p_bar
            .iter()
            .chain(&self.q_bar)
            .map(|v| Polynomial::from_linear(self.n, v))
            .collect()
    }

    /// Rewrites a polynomial in `(p, q)` in the barred variables, using
    /// `x = Σ {x, q̄^i} p̄_i + Σ {p̄_j, x} q̄^j`.
    pub fn to_barred(&self, f: &Polynomial) -> Result<Polynomial> {
        let n = self.n;
        let images: Vec<Polynomial> = (0..2 * n)
            .map(|a| {
                let x = crate::structures::unit(2 * n, a);
                let mut coeffs = vec![Rational::zero(); 2 * n];
                for i in 0..n {
                    coeffs[i] = omega(n, &x, &self.q_bar[i]);
                    coeffs[n + i] = omega(n, &self.p_bar[i], &x);
                }
                Polynomial::from_linear(n, &coeffs)
            })
            .collect();
        f.substitute(&images)
    }

    /// Rewrites a polynomial in the barred variables back in `(p, q)`.
    pub fn from_barred(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(&self.barred_polynomials())
    }

    /// The push-forward of a field to the barred coordinates.
    pub fn push_forward(&self, x: &VectorField) -> Result<VectorField> {
        let comps = self
            .barred_polynomials()
            .iter()
            .map(|b| self.to_barred(&x.apply(b)?))
            .collect::<Result<Vec<_>>>()?;
        VectorField::new(self.n, comps)
    }
}

/// A canonical double split into its two semidirect factors, in barred
/// coordinates.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub frame: CanonicalFrame,
    /// Bidegree (0,1): `D ⋉ D*`.
    pub l_bar: StructureField,
    /// Bidegree (1,0): `D* ⋉ D`.
    pub lstar_bar: StructureField,
}

pub fn factorize(l: &StructureField, d: &Subspace, dstar: &Subspace) -> Result<Factorization> {
    if !is_canonical_pair(l, d, dstar)? {
        return Err(Error::precondition("(D, D*) is not a canonical pair"));
    }
    let frame = CanonicalFrame::new(d, dstar)?;
    let barred = frame.push_forward(l.field())?;
    let parts = bidegree_decompose(&barred)?;
    if !parts.phi.is_zero() || !parts.phistar.is_zero() {
        return Err(Error::precondition("internal error: canonical pair with nonzero Φ or Φ*"));
    }
    Ok(Factorization {
        frame,
        l_bar: StructureField::new(parts.l)?,
        lstar_bar: StructureField::new(parts.lstar)?,
    })
}
