//! Shared storage for exterior-algebra valued objects: a map from strictly
//! increasing index sets to polynomial coefficients.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub(crate) const MAX_DEGREE: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Wedge {
    pub n: usize,
    pub degree: usize,
    pub coeffs: BTreeMap<Vec<usize>, Polynomial>,
}

impl Wedge {
    pub fn zero(n: usize, degree: usize) -> Self {
        Wedge {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn check_degree(degree: usize, what: &'static str) -> Result<()> {
        if degree > MAX_DEGREE {
            Err(Error::UnsupportedDegree {
                degree: degree as i64,
                what,
            })
        } else {
            Ok(())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `coeff · e_{idx[0]} ∧ e_{idx[1]} ∧ …` for an arbitrary index order.
    pub fn add(&mut self, idx: &[usize], coeff: &Polynomial) {
        debug_assert_eq!(idx.len(), self.degree);
        if coeff.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_with_sign(idx) else {
            return;
        };
        let c = if sign < 0 { -coeff } else { coeff.clone() };
        let slot = self
            .coeffs
            .entry(sorted.clone())
            .or_insert_with(|| Polynomial::zero(self.n));
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&sorted);
        }
    }

    /// Coefficient of `e_{idx[0]} ∧ …`, with the sign of the reordering.
    pub fn get(&self, idx: &[usize]) -> Polynomial {
        match sort_with_sign(idx) {
            None => Polynomial::zero(self.n),
            Some((sorted, sign)) => {
                let c = self
                    .coeffs
                    .get(&sorted)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(self.n));
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn combine(&self, other: &Wedge, sign: i32) -> Result<Wedge> {
        Error::check_dim(self.n, other.n)?;
        Error::check_dim(self.degree, other.degree)?;
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            if sign < 0 {
                out.add(idx, &-c);
            } else {
                out.add(idx, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &crate::rational::Rational) -> Wedge {
        let mut out = Wedge::zero(self.n, self.degree);
        for (idx, p) in &self.coeffs {
            out.add(idx, &p.scale(c));
        }
        out
    }
}

/// Sorts an index list, returning the permutation sign, or `None` when an
/// index repeats.
pub(crate) fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        for j in 0..v.len() - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Removes `a` from a sorted index set. `from_right` selects the right
/// derivative (sign of moving `a` to the end) instead of the left one.
pub(crate) fn remove_index(idx: &[usize], a: usize, from_right: bool) -> Option<(Vec<usize>, i32)> {
    let j = idx.iter().position(|&x| x == a)?;
    let passes = if from_right { idx.len() - 1 - j } else { j };
    let mut rest = idx.to_vec();
    rest.remove(j);
    Some((rest, if passes % 2 == 0 { 1 } else { -1 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_of_reordering() {
        assert_eq!(sort_with_sign(&[2, 0]), Some((vec![0, 2], -1)));
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }

    #[test]
    fn derivatives_of_monomials() {
        // right derivative of ξ0 ξ1 by ξ0 is −ξ1, left derivative is +ξ1
        assert_eq!(remove_index(&[0, 1], 0, true), Some((vec![1], -1)));
        assert_eq!(remove_index(&[0, 1], 0, false), Some((vec![1], 1)));
        assert_eq!(remove_index(&[0, 1], 1, true), Some((vec![0], 1)));
        assert_eq!(remove_index(&[0, 1], 3, true), None);
    }
}
