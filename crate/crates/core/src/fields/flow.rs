use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::poly::Bidegree;
use crate::rational;

/// Default truncation guard for [`exp_flow`].
pub const DEFAULT_MAX_ORDER: usize = 8;

/// Terms `(1/k!) ad_H^k(T)` with `ad_H = [−, H]`, for `k = 0, 1, …` up to
/// the last nonzero one.
pub fn flow_series(t: &VectorField, h: &VectorField, max_order: usize) -> Result<Vec<VectorField>> {
    Error::check_dim(t.n(), h.n())?;
    if h.bidegree() == Bidegree::Inhomogeneous {
        return Err(Error::Inhomogeneous("flow generator must have a bidegree".into()));
    }
    let mut terms = vec![t.clone()];
    let mut iterate = t.clone();
    for k in 1.. {
        iterate = iterate.commutator(h)?;
        if iterate.is_zero() {
            break;
        }
        if k > max_order {
            return Err(Error::NotNilpotent { max_order });
        }
        terms.push(iterate.scale(&rational::inv_factorial(k)));
    }
    while terms.len() > 1 && terms.last().is_some_and(VectorField::is_zero) {
        terms.pop();
    }
    Ok(terms)
}

/// `exp(X_H)(T) = Σ_k (1/k!) ad_H^k(T)`, which must terminate by `max_order`.
pub fn exp_flow(t: &VectorField, h: &VectorField, max_order: usize) -> Result<VectorField> {
    let terms = flow_series(t, h, max_order)?;
    let mut sum = VectorField::zero(t.n());
    for term in &terms {
        sum = &sum + term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    #[test]
    fn zero_generator_is_identity() {
        let n = 1;
        let t = VectorField::basis(n, 0);
        assert_eq!(exp_flow(&t, &VectorField::zero(n), DEFAULT_MAX_ORDER).unwrap(), t);
    }

    #[test]
    fn non_nilpotent_generator_is_reported() {
        // H = {p q, −} scales p and q; ad_H never terminates on ∂/∂p.
        let n = 1;
        let pq = &Polynomial::p(n, 0) * &Polynomial::q(n, 0);
        let h = VectorField::hamiltonian(&pq);
        let t = VectorField::basis(n, 0);
        assert!(matches!(
            exp_flow(&t, &h, 4),
            Err(Error::NotNilpotent { max_order: 4 })
        ));
    }

    #[test]
    fn inhomogeneous_generator_is_rejected() {
        let n = 1;
        let f = &Polynomial::p(n, 0) + &(&Polynomial::q(n, 0) * &Polynomial::q(n, 0));
        let h = VectorField::hamiltonian(&f);
        assert!(exp_flow(&VectorField::basis(n, 0), &h, 4).is_err());
    }
}
