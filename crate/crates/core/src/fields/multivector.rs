//! Multivector fields of degree at most two and the Schouten-Nijenhuis bracket.
//!
//! A multivector is written as a polynomial in odd symbols `ξ_a ↔ ∂/∂x^a`.
//! The bracket is
//!
//! ```text
//! [P, Q] = Σ_a (P ∂⃖/∂ξ_a)(∂Q/∂x^a) − (∂P/∂x^a)(∂⃗Q/∂ξ_a)
//! ```
//!
//! which gives `[X, f] = X(f)`, `[f, g] = 0`, the commutator on vector fields,
//! and `[[π, f], g] = {f, g}` for `π = Σ ∂/∂q^i ∧ ∂/∂p_i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::wedge::{remove_index, sort_with_sign, Wedge};
use crate::fields::VectorField;
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    inner: Wedge,
}

impl Multivector {
    pub fn zero(n: usize, degree: usize) -> Result<Self> {
        Wedge::check_degree(degree, "multivectors are limited to degree 2")?;
        Ok(Multivector {
            inner: Wedge::zero(n, degree),
        })
    }

    pub fn from_polynomial(f: &Polynomial) -> Self {
        let mut w = Wedge::zero(f.n(), 0);
        w.add(&[], f);
        Multivector { inner: w }
    }

    pub fn from_vector_field(x: &VectorField) -> Self {
        let mut w = Wedge::zero(x.n(), 1);
        for (a, c) in x.components().iter().enumerate() {
            w.add(&[a], c);
        }
        Multivector { inner: w }
    }

    /// Bivector `Σ c · ∂/∂x^a ∧ ∂/∂x^b` from `(a, b, c)` entries.
    pub fn bivector(n: usize, entries: &[(usize, usize, Polynomial)]) -> Result<Self> {
        let mut w = Wedge::zero(n, 2);
        for (a, b, c) in entries {
            if *a >= 2 * n || *b >= 2 * n {
                return Err(Error::IndexOutOfRange {
                    index: (*a).max(*b),
                    limit: 2 * n,
                });
            }
            Error::check_dim(n, c.n())?;
            w.add(&[*a, *b], c);
        }
        Ok(Multivector { inner: w })
    }

    /// The Poisson bivector `π = Σ_i ∂/∂q^i ∧ ∂/∂p_i`.
    pub fn poisson_bivector(n: usize) -> Self {
        let entries: Vec<_> = (0..n)
            .map(|i| (n + i, i, Polynomial::one(n)))
            .collect();
        Multivector::bivector(n, &entries).expect("indices in range")
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

    /// Coefficient of `∂/∂x^{idx[0]} ∧ …` (antisymmetric in the indices).
    pub fn coefficient(&self, idx: &[usize]) -> Polynomial {
        self.inner.get(idx)
    }

    pub fn to_polynomial(&self) -> Result<Polynomial> {
        match self.degree() {
            0 => Ok(self.inner.get(&[])),
            d => Err(Error::UnsupportedDegree {
                degree: d as i64,
                what: "expected a function",
            }),
        }
    }

    pub fn to_vector_field(&self) -> Result<VectorField> {
        match self.degree() {
            1 => {
                let comps = (0..2 * self.n()).map(|a| self.inner.get(&[a])).collect();
                VectorField::new(self.n(), comps)
            }
            d => Err(Error::UnsupportedDegree {
                degree: d as i64,
                what: "expected a vector field",
            }),
        }
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Multivector> {
        Ok(Multivector {
            inner: self.inner.combine(&other.inner, 1)?,
        })
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Multivector> {
        Ok(Multivector {
            inner: self.inner.combine(&other.inner, -1)?,
        })
    }

    pub fn scale(&self, c: &Rational) -> Multivector {
        Multivector {
            inner: self.inner.scale(c),
        }
    }
}

/// Schouten-Nijenhuis bracket, defined when the result has degree at most 2.
pub fn sn_bracket(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    Error::check_dim(a.n(), b.n())?;
    let n = a.n();
    let total = a.degree() + b.degree();
    if total == 0 {
        // [f, g] = 0
        return Multivector::zero(n, 0);
    }
    let degree = total - 1;
    Wedge::check_degree(degree, "Schouten-Nijenhuis bracket result above degree 2")?;
    let mut out = Wedge::zero(n, degree);
    for (i_set, f) in &a.inner.coeffs {
        for (j_set, g) in &b.inner.coeffs {
            for var in 0..2 * n {
                // (P ∂⃖/∂ξ_var) · ∂Q/∂x^var
                if let Some((rest, sign)) = remove_index(i_set, var, true) {
                    let dg = g.partial(var)?;
                    if !dg.is_zero() {
                        push_product(&mut out, &rest, j_set, &(f * &dg), sign);
                    }
                }
                // − ∂P/∂x^var · (∂⃗Q/∂ξ_var)
                if let Some((rest, sign)) = remove_index(j_set, var, false) {
                    let df = f.partial(var)?;
                    if !df.is_zero() {
                        push_product(&mut out, i_set, &rest, &(&df * g), -sign);
                    }
                }
            }
        }
    }
    Ok(Multivector { inner: out })
}

fn push_product(out: &mut Wedge, left: &[usize], right: &[usize], coeff: &Polynomial, sign: i32) {
    let idx: Vec<usize> = left.iter().chain(right).copied().collect();
    if sort_with_sign(&idx).is_none() {
        return;
    }
    if sign < 0 {
        out.add(&idx, &-coeff);
    } else {
        out.add(&idx, coeff);
    }
}

impl fmt::Display for Multivector {
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
                    .map(|&a| format!("d/d{}", Polynomial::var_name(n, a)))
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

    fn mv(f: &Polynomial) -> Multivector {
        Multivector::from_polynomial(f)
    }

    #[test]
    fn elementary_brackets() {
        let n = 1;
        let p1 = Polynomial::p(n, 0);
        let q1 = Polynomial::q(n, 0);
        let x = VectorField::new(n, vec![&p1 * &q1, q1.clone()]).unwrap();
        let xf = sn_bracket(&Multivector::from_vector_field(&x), &mv(&(&p1 * &p1))).unwrap();
        assert_eq!(xf.to_polynomial().unwrap(), x.apply(&(&p1 * &p1)).unwrap());
        let ff = sn_bracket(&mv(&p1), &mv(&q1)).unwrap();
        assert!(ff.is_zero());
        assert_eq!(ff.degree(), 0);
    }

    #[test]
    fn poisson_bivector_reproduces_canonical_bracket() {
        let n = 2;
        let pi = Multivector::poisson_bivector(n);
        let p1 = Polynomial::p(n, 0);
        let q1 = Polynomial::q(n, 0);
        let pif = sn_bracket(&pi, &mv(&p1)).unwrap();
        assert_eq!(pif.degree(), 1);
        let val = sn_bracket(&pif, &mv(&q1)).unwrap().to_polynomial().unwrap();
        assert_eq!(val, Polynomial::one(n));
    }

    #[test]
    fn commutator_of_vector_fields() {
        let n = 1;
        let p1 = Polynomial::p(n, 0);
        let x = VectorField::basis(n, 0);
        let y = VectorField::new(n, vec![&p1 * &p1, Polynomial::zero(n)]).unwrap();
        let br = sn_bracket(&Multivector::from_vector_field(&x), &Multivector::from_vector_field(&y))
            .unwrap()
            .to_vector_field()
            .unwrap();
        assert_eq!(br, x.commutator(&y).unwrap());
        assert_eq!(br.component(0), &p1.scale(&int(2)));
    }

    #[test]
    fn degree_three_results_are_rejected() {
        let pi = Multivector::poisson_bivector(1);
        assert!(matches!(
            sn_bracket(&pi, &pi),
            Err(Error::UnsupportedDegree { degree: 3, .. })
        ));
        assert!(Multivector::zero(1, 3).is_err());
    }
}
