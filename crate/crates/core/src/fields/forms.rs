//! Differential forms of degree at most two.
//!
//! Two-forms evaluate as `(α ∧ β)(X, Y) = α(X)β(Y) − α(Y)β(X)`, and the
//! interior product contracts the first slot.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::wedge::{remove_index, Wedge};
use crate::fields::VectorField;
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DifferentialForm {
    inner: Wedge,
}

impl DifferentialForm {
    pub fn zero(n: usize, degree: usize) -> Result<Self> {
        Wedge::check_degree(degree, "forms are limited to degree 2")?;
        Ok(DifferentialForm {
            inner: Wedge::zero(n, degree),
        })
    }

    pub fn function(f: &Polynomial) -> Self {
        let mut w = Wedge::zero(f.n(), 0);
        w.add(&[], f);
        DifferentialForm { inner: w }
    }

    /// `Σ c_a dx^a`.
    pub fn one_form(n: usize, coeffs: &[Polynomial]) -> Result<Self> {
        Error::check_dim(2 * n, coeffs.len())?;
        let mut w = Wedge::zero(n, 1);
        for (a, c) in coeffs.iter().enumerate() {
            Error::check_dim(n, c.n())?;
            w.add(&[a], c);
        }
        Ok(DifferentialForm { inner: w })
    }

    /// `Σ c · dx^a ∧ dx^b` from `(a, b, c)` entries.
    pub fn two_form(n: usize, entries: &[(usize, usize, Polynomial)]) -> Result<Self> {
        let mut w = Wedge::zero(n, 2);
        for (a, b, c) in entries {
            if *a >= 2 * n || *b >= 2 * n {
                return Err(Error::IndexOutOfRange {
                    index: (*a).max(*b),
                    limit: 2 * n,
                });
            }
            w.add(&[*a, *b], c);
        }
        Ok(DifferentialForm { inner: w })
    }

    /// `ω = Σ_i dp_i ∧ dq^i`.
    pub fn symplectic(n: usize) -> Self {
        let entries: Vec<_> = (0..n).map(|i| (i, n + i, Polynomial::one(n))).collect();
        DifferentialForm::two_form(n, &entries).expect("indices in range")
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Coefficient of `dx^{idx[0]} ∧ …`.
    pub fn coefficient(&self, idx: &[usize]) -> Polynomial {
        self.inner.get(idx)
    }

    pub fn try_add(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        Ok(DifferentialForm {
            inner: self.inner.combine(&other.inner, 1)?,
        })
    }

    pub fn scale(&self, c: &Rational) -> DifferentialForm {
        DifferentialForm {
            inner: self.inner.scale(c),
        }
    }

    /// `α(X)` for a one-form.
    pub fn eval_1form(&self, x: &VectorField) -> Result<Polynomial> {
        if self.degree() != 1 {
            return Err(Error::UnsupportedDegree {
                degree: self.degree() as i64,
                what: "expected a one-form",
            });
        }
        Error::check_dim(self.n(), x.n())?;
        let mut out = Polynomial::zero(self.n());
        for (idx, c) in &self.inner.coeffs {
            out += &(c * x.component(idx[0]));
        }
        Ok(out)
    }
}

/// Contraction `i_X α` in the first slot.
pub fn interior(x: &VectorField, alpha: &DifferentialForm) -> Result<DifferentialForm> {
    if alpha.degree() == 0 {
        return Err(Error::UnsupportedDegree {
            degree: 0,
            what: "interior product needs a form of degree 1 or 2",
        });
    }
    Error::check_dim(alpha.n(), x.n())?;
    let mut out = Wedge::zero(alpha.n(), alpha.degree() - 1);
    for (idx, c) in &alpha.inner.coeffs {
        for &a in idx {
            let xa = x.component(a);
            if xa.is_zero() {
                continue;
            }
            let (rest, sign) = remove_index(idx, a, false).expect("a in idx");
            let term = c * xa;
            out.add(&rest, &if sign < 0 { -&term } else { term });
        }
    }
    Ok(DifferentialForm { inner: out })
}

/// Exterior derivative on functions and one-forms.
pub fn exterior_d(alpha: &DifferentialForm) -> Result<DifferentialForm> {
    if alpha.degree() >= 2 {
        return Err(Error::UnsupportedDegree {
            degree: 3,
            what: "three-forms are not represented",
        });
    }
    let n = alpha.n();
    let mut out = Wedge::zero(n, alpha.degree() + 1);
    for (idx, c) in &alpha.inner.coeffs {
        for a in 0..2 * n {
            let da = c.partial(a)?;
            if da.is_zero() {
                continue;
            }
            let full: Vec<usize> = std::iter::once(a).chain(idx.iter().copied()).collect();
            out.add(&full, &da);
        }
    }
    Ok(DifferentialForm { inner: out })
}

/// `α(X, Y)` for a two-form.
pub fn eval_2form(alpha: &DifferentialForm, x: &VectorField, y: &VectorField) -> Result<Polynomial> {
    if alpha.degree() != 2 {
        return Err(Error::UnsupportedDegree {
            degree: alpha.degree() as i64,
            what: "expected a two-form",
        });
    }
    Error::check_dim(alpha.n(), x.n())?;
    Error::check_dim(alpha.n(), y.n())?;
    let mut out = Polynomial::zero(alpha.n());
    for (idx, c) in &alpha.inner.coeffs {
        let (a, b) = (idx[0], idx[1]);
        let det = &(x.component(a) * y.component(b)) - &(x.component(b) * y.component(a));
        if !det.is_zero() {
            out += &(c * &det);
        }
    }
    Ok(out)
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.n();
        let parts: Vec<String> = self
            .inner
            .coeffs
            .iter()
            .map(|(idx, c)| {
                let basis: Vec<String> = idx
                    .iter()
                    .map(|&a| format!("d{}", Polynomial::var_name(n, a)))
                    .collect();
                if basis.is_empty() {
                    format!("{c}")
                } else {
                    format!("({c}) {}", basis.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn contraction_of_basis_two_form() {
        let n = 1;
        let dpdq = DifferentialForm::symplectic(n);
        let c = interior(&VectorField::basis(n, 0), &dpdq).unwrap();
        assert_eq!(c.degree(), 1);
        assert_eq!(c.coefficient(&[1]), Polynomial::one(n));
        assert!(c.coefficient(&[0]).is_zero());
        let zero = DifferentialForm::zero(n, 2).unwrap();
        assert!(interior(&VectorField::basis(n, 0), &zero).unwrap().is_zero());
        assert!(interior(&VectorField::basis(n, 0), &DifferentialForm::function(&Polynomial::one(n))).is_err());
    }

    #[test]
    fn exterior_derivative_examples() {
        let n = 1;
        let p1 = Polynomial::p(n, 0);
        let q1 = Polynomial::q(n, 0);
        let dp = exterior_d(&DifferentialForm::function(&p1)).unwrap();
        assert_eq!(dp.coefficient(&[0]), Polynomial::one(n));
        let f = &(&p1 * &p1) * &q1;
        let ddf = exterior_d(&exterior_d(&DifferentialForm::function(&f)).unwrap()).unwrap();
        assert!(ddf.is_zero());
        let pdq = DifferentialForm::one_form(n, &[Polynomial::zero(n), p1.clone()]).unwrap();
        assert_eq!(exterior_d(&pdq).unwrap(), DifferentialForm::symplectic(n));
        assert!(exterior_d(&DifferentialForm::symplectic(n)).is_err());
    }

    #[test]
    fn symplectic_form_on_hamiltonian_fields() {
        let n = 1;
        let hp = VectorField::hamiltonian(&Polynomial::p(n, 0));
        let hq = VectorField::hamiltonian(&Polynomial::q(n, 0));
        let w = DifferentialForm::symplectic(n);
        assert_eq!(eval_2form(&w, &hp, &hq).unwrap(), Polynomial::one(n));
        assert!(eval_2form(&w, &hp, &hp).unwrap().is_zero());
        let x = VectorField::new(n, vec![Polynomial::q(n, 0), Polynomial::constant(n, int(2))]).unwrap();
        assert!(eval_2form(&w, &x, &x).unwrap().is_zero());
        assert!(eval_2form(&DifferentialForm::function(&Polynomial::one(n)), &x, &x).is_err());
    }
}
