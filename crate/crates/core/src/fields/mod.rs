//! Polynomial vector fields, bivectors and low-degree forms on the plane.

mod flow;
mod forms;
mod multivector;
mod wedge;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Bidegree, Polynomial};
use crate::rational::{self, Rational};

pub use flow::{exp_flow, flow_series, DEFAULT_MAX_ORDER};
pub use forms::{eval_2form, exterior_d, interior, DifferentialForm};
pub use multivector::{sn_bracket, Multivector};

/// Homogeneity of a vector field with respect to polynomial degree: a field of
/// degree `d` has every nonzero component homogeneous of total degree `d+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldDegree {
    Zero,
    Homogeneous(i32),
    Inhomogeneous,
}

/// `Σ X^{p_i} ∂/∂p_i + Σ X^{q^j} ∂/∂q^j`, components stored by variable
/// position (`p` block first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    n: usize,
    comps: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(n: usize, comps: Vec<Polynomial>) -> Result<Self> {
        Error::check_dim(2 * n, comps.len())?;
        for c in &comps {
            Error::check_dim(n, c.n())?;
        }
        Ok(VectorField { n, comps })
    }

    pub fn from_parts(dp: Vec<Polynomial>, dq: Vec<Polynomial>) -> Result<Self> {
        let n = dp.len();
        Error::check_dim(n, dq.len())?;
        VectorField::new(n, dp.into_iter().chain(dq).collect())
    }

    pub fn zero(n: usize) -> Self {
        VectorField {
            n,
            comps: vec![Polynomial::zero(n); 2 * n],
        }
    }

    /// The coordinate derivation `∂/∂x^pos`.
    pub fn basis(n: usize, pos: usize) -> Self {
        let mut v = VectorField::zero(n);
        v.comps[pos] = Polynomial::one(n);
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn component(&self, pos: usize) -> &Polynomial {
        &self.comps[pos]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn dp(&self) -> &[Polynomial] {
        &self.comps[..self.n]
    }

    pub fn dq(&self) -> &[Polynomial] {
        &self.comps[self.n..]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    /// Action as a derivation: `X(f) = Σ X^a ∂f/∂x^a`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        Error::check_dim(self.n, f.n())?;
        let mut out = Polynomial::zero(self.n);
        for (pos, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.partial(pos)?;
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        Ok(out)
    }

    /// `[X, Y] = XY − YX`.
    pub fn commutator(&self, other: &VectorField) -> Result<VectorField> {
        Error::check_dim(self.n, other.n)?;
        let comps = (0..2 * self.n)
            .map(|a| Ok(&self.apply(&other.comps[a])? - &other.apply(&self.comps[a])?))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField { n: self.n, comps })
    }

    /// `H_f = {f, −}`.
    pub fn hamiltonian(f: &Polynomial) -> VectorField {
        let n = f.n();
        let mut comps = Vec::with_capacity(2 * n);
        for i in 0..n {
            comps.push(-&f.partial(n + i).expect("in range"));
        }
        for i in 0..n {
            comps.push(f.partial(i).expect("in range"));
        }
        VectorField { n, comps }
    }

    /// The polynomial `h` (without constant term) with `H_h = self`, if the
    /// field is Hamiltonian.
    pub fn hamiltonian_potential(&self) -> Option<Polynomial> {
        let n = self.n;
        let mut h = Polynomial::zero(n);
        for (deg, part) in self.degree_parts() {
            // Euler: (d+2) h_d = Σ p_i ∂h/∂p_i + q^i ∂h/∂q^i with
            // ∂h/∂p_i = X^{q^i}, ∂h/∂q^i = −X^{p_i}.
            let mut euler = Polynomial::zero(n);
            for i in 0..n {
                euler += &(&Polynomial::p(n, i) * &part.comps[n + i]);
                euler -= &(&Polynomial::q(n, i) * &part.comps[i]);
            }
            let k = Rational::new(1.into(), (deg + 2).into());
            h += &euler.scale(&k);
        }
        (VectorField::hamiltonian(&h) == *self).then_some(h)
    }

    pub fn is_hamiltonian(&self) -> bool {
        self.hamiltonian_potential().is_some()
    }

    pub fn poly_degree(&self) -> FieldDegree {
        let mut deg = FieldDegree::Zero;
        for c in &self.comps {
            for (m, _) in c.terms() {
                let d = m.degree() as i32 - 1;
                deg = match deg {
                    FieldDegree::Zero => FieldDegree::Homogeneous(d),
                    FieldDegree::Homogeneous(e) if e == d => deg,
                    _ => return FieldDegree::Inhomogeneous,
                };
            }
        }
        deg
    }

    /// True when zero or homogeneous of polynomial degree `d`.
    pub fn has_degree(&self, d: i32) -> bool {
        match self.poly_degree() {
            FieldDegree::Zero => true,
            FieldDegree::Homogeneous(e) => e == d,
            FieldDegree::Inhomogeneous => false,
        }
    }

    /// Bidegree as a derivation, counting `|∂/∂p| = (−1,0)`, `|∂/∂q| = (0,−1)`.
    pub fn bidegree(&self) -> Bidegree {
        let mut bd = Bidegree::Zero;
        for (pos, c) in self.comps.iter().enumerate() {
            for (m, _) in c.terms() {
                bd = bd.merge(Self::term_bidegree(self.n, pos, m.bidegree()));
            }
        }
        bd
    }

    fn term_bidegree(n: usize, pos: usize, (a, b): (i32, i32)) -> (i32, i32) {
        if pos < n {
            (a - 1, b)
        } else {
            (a, b - 1)
        }
    }

    /// Splits the field into its homogeneous pieces by bidegree.
    pub fn bidegree_parts(&self) -> BTreeMap<(i32, i32), VectorField> {
        let mut parts: BTreeMap<(i32, i32), VectorField> = BTreeMap::new();
        for (pos, c) in self.comps.iter().enumerate() {
            for (m, coeff) in c.terms() {
                let bd = Self::term_bidegree(self.n, pos, m.bidegree());
                parts
                    .entry(bd)
                    .or_insert_with(|| VectorField::zero(self.n))
                    .comps[pos]
                    .add_term(m.clone(), coeff.clone());
            }
        }
        parts
    }

    pub fn bidegree_part(&self, bd: (i32, i32)) -> VectorField {
        self.bidegree_parts()
            .remove(&bd)
            .unwrap_or_else(|| VectorField::zero(self.n))
    }

    /// Splits the field by polynomial degree.
    pub fn degree_parts(&self) -> BTreeMap<i32, VectorField> {
        let mut parts: BTreeMap<i32, VectorField> = BTreeMap::new();
        for (pos, c) in self.comps.iter().enumerate() {
            for (m, coeff) in c.terms() {
                parts
                    .entry(m.degree() as i32 - 1)
                    .or_insert_with(|| VectorField::zero(self.n))
                    .comps[pos]
                    .add_term(m.clone(), coeff.clone());
            }
        }
        parts
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField {
            n: self.n,
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn try_add(&self, other: &VectorField) -> Result<VectorField> {
        Error::check_dim(self.n, other.n)?;
        Ok(VectorField {
            n: self.n,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    /// Matrix of a degree-0 field as a linear map on `W`, with column `b`
    /// holding the coefficients of `X(x^b)`.
    pub fn linear_matrix(&self) -> Result<Matrix> {
        if !self.has_degree(0) {
            return Err(Error::UnsupportedDegree {
                degree: self.degree_for_error(),
                what: "linear map requires a field of polynomial degree 0",
            });
        }
        let dim = 2 * self.n;
        let mut m = Matrix::zeros(dim, dim);
        for b in 0..dim {
            let img = self.apply(&Polynomial::var(self.n, b))?;
            for (a, c) in img.linear_coefficients()?.into_iter().enumerate() {
                m[(a, b)] = c;
            }
        }
        Ok(m)
    }

    /// Degree-0 field of a linear map given as a matrix in the convention of
    /// [`VectorField::linear_matrix`].
    pub fn from_linear_matrix(n: usize, m: &Matrix) -> Result<VectorField> {
        let dim = 2 * n;
        Error::check_dim(dim, m.rows())?;
        Error::check_dim(dim, m.cols())?;
        // X(x^b) = X^b, so component b is the image of x^b.
        let comps = (0..dim)
            .map(|b| {
                let col: Vec<Rational> = (0..dim).map(|a| m[(a, b)].clone()).collect();
                Polynomial::from_linear(n, &col)
            })
            .collect();
        VectorField::new(n, comps)
    }

    pub(crate) fn degree_for_error(&self) -> i64 {
        match self.poly_degree() {
            FieldDegree::Homogeneous(d) => d.into(),
            _ => -99,
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(pos, c)| {
                let var = Polynomial::var_name(self.n, pos);
                if c.num_terms() == 1 {
                    format!("{c} d/d{var}")
                } else {
                    format!("({c}) d/d{var}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        self.try_add(rhs).expect("vector field dimension mismatch")
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        self.try_add(&-rhs).expect("vector field dimension mismatch")
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField {
            n: self.n,
            comps: self.comps.iter().map(|c| -c).collect(),
        }
    }
}

/// `½ Σ s_ij x^i x^j` restricted to one block: used for the quadratic
/// Hamiltonians `½ r^{ij} p_i p_j` and `½ o_ij q^i q^j`.
pub(crate) fn half_quadratic(n: usize, s: &Matrix, q_block: bool) -> Polynomial {
    let var = |i| {
        if q_block {
            Polynomial::q(n, i)
        } else {
            Polynomial::p(n, i)
        }
    };
    let half = rational::rat(1, 2);
    let mut h = Polynomial::zero(n);
    for i in 0..n {
        for j in 0..n {
            if s[(i, j)].is_zero() {
                continue;
            }
            h += &(&var(i) * &var(j)).scale(&(&s[(i, j)] * &half));
        }
    }
    h
}
