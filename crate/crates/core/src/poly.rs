//! The polynomial ring `K[p_1..p_n, q^1..q^n]` with its canonical Poisson
//! bracket `{p_i, q^j} = δ_i^j` and the bidegree `|p| = (1,0)`, `|q| = (0,1)`.
//!
//! Variables are addressed by position: `0..n` are `p_1..p_n`, `n..2n` are
//! `q^1..q^n`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exponent vector of length `2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial { exps: vec![0; len] }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn var(len: usize, pos: usize) -> Self {
        let mut exps = vec![0; len];
        exps[pos] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// `(p-degree, q-degree)`.
    pub fn bidegree(&self) -> (i32, i32) {
        let n = self.exps.len() / 2;
        let a: u32 = self.exps[..n].iter().sum();
        let b: u32 = self.exps[n..].iter().sum();
        (a as i32, b as i32)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Graded lexicographic: total degree first, then exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a bidegree query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bidegree {
    Zero,
    Homogeneous(i32, i32),
    Inhomogeneous,
}

impl Bidegree {
    /// Folds one more homogeneous piece into a running bidegree.
    pub(crate) fn merge(self, bd: (i32, i32)) -> Bidegree {
        match self {
            Bidegree::Zero => Bidegree::Homogeneous(bd.0, bd.1),
            Bidegree::Homogeneous(a, b) if (a, b) == bd => self,
            _ => Bidegree::Inhomogeneous,
        }
    }

    pub fn as_pair(self) -> Option<(i32, i32)> {
        match self {
            Bidegree::Homogeneous(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bidegree::Zero => write!(f, "zero"),
            Bidegree::Homogeneous(a, b) => write!(f, "({a},{b})"),
            Bidegree::Inhomogeneous => write!(f, "inhomogeneous"),
        }
    }
}

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(n);
        p.add_term(Monomial::one(2 * n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, Rational::one())
    }

    /// The coordinate function at `pos` (`0..2n`).
    pub fn var(n: usize, pos: usize) -> Self {
        assert!(pos < 2 * n, "variable {pos} out of range for n = {n}");
        let mut p = Polynomial::zero(n);
        p.add_term(Monomial::var(2 * n, pos), Rational::one());
        p
    }

    /// `p_{i+1}`.
    pub fn p(n: usize, i: usize) -> Self {
        assert!(i < n);
        Polynomial::var(n, i)
    }

    /// `q^{i+1}`.
    pub fn q(n: usize, i: usize) -> Self {
        assert!(i < n);
        Polynomial::var(n, n + i)
    }

    /// Linear function `Σ c_a x^a` from a coefficient vector of length `2n`.
    pub fn from_linear(n: usize, coeffs: &[Rational]) -> Self {
        assert_eq!(coeffs.len(), 2 * n);
        let mut p = Polynomial::zero(n);
        for (pos, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(2 * n, pos), c.clone());
        }
        p
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            Error::check_dim(2 * n, m.exps.len())?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_n(&self, other: &Polynomial) -> Result<()> {
        Error::check_dim(self.n, other.n)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Exact product.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_n(other)?;
        let mut out = Polynomial::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to the variable at `pos`.
    pub fn partial(&self, pos: usize) -> Result<Polynomial> {
        if pos >= 2 * self.n {
            return Err(Error::IndexOutOfRange {
                index: pos,
                limit: 2 * self.n,
            });
        }
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exps[pos];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[pos] -= 1;
            out.add_term(Monomial { exps }, c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Canonical Poisson bracket
    /// `{f, g} = Σ_i ∂f/∂p_i ∂g/∂q^i − ∂f/∂q^i ∂g/∂p_i`.
    pub fn poisson(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_n(other)?;
        let n = self.n;
        let mut out = Polynomial::zero(n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                let prod = m1.mul(m2);
                for i in 0..n {
                    let plus = m1.exps[i] * m2.exps[n + i];
                    let minus = m1.exps[n + i] * m2.exps[i];
                    if plus == 0 && minus == 0 {
                        continue;
                    }
                    let mut exps = prod.exps.clone();
                    exps[i] -= 1;
                    exps[n + i] -= 1;
                    let k = i64::from(plus) - i64::from(minus);
                    if k != 0 {
                        out.add_term(Monomial { exps }, &c * Rational::from_integer(k.into()));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn bidegree(&self) -> Bidegree {
        self.terms
            .keys()
            .fold(Bidegree::Zero, |acc, m| acc.merge(m.bidegree()))
    }

    /// Total degree if every term has the same degree; `None` for zero or
    /// inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// True when zero or homogeneous of total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Sum of the terms of the given bidegree.
    pub fn bidegree_part(&self, bd: (i32, i32)) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == bd)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of a linear polynomial, or an error if any term has
    /// degree other than one.
    pub fn linear_coefficients(&self) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); 2 * self.n];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return Err(Error::Inhomogeneous(format!("{self} is not linear")));
            }
            let pos = m.exps.iter().position(|&e| e == 1).expect("degree one");
            out[pos] = c.clone();
        }
        Ok(out)
    }

    /// The value of a polynomial of degree at most zero.
    pub fn constant_value(&self) -> Result<Rational> {
        match self.max_degree() {
            None => Ok(Rational::zero()),
            Some(0) => Ok(self.terms.values().next().cloned().expect("one term")),
            Some(_) => Err(Error::Inhomogeneous(format!("{self} is not constant"))),
        }
    }

    /// Substitutes `images[pos]` for the variable at `pos`. The images may
    /// live in a ring of different half-dimension.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        Error::check_dim(2 * self.n, images.len())?;
        let target = images.first().map_or(self.n, Polynomial::n);
        for img in images {
            Error::check_dim(target, img.n)?;
        }
        let mut cache: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; images.len()];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (pos, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[pos].len() <= e as usize {
                    let next = cache[pos].last().expect("seeded") * &images[pos];
                    cache[pos].push(next);
                }
                term = &term * &cache[pos][e as usize];
            }
            out += &term;
        }
        Ok(out)
    }

    /// Name of the variable at `pos` (1-based subscripts).
    pub fn var_name(n: usize, pos: usize) -> String {
        if pos < n {
            format!("p_{}", pos + 1)
        } else {
            format!("q^{}", pos - n + 1)
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(pos, &e)| {
                    let name = Polynomial::var_name(self.n, pos);
                    match (e, pos < self.n) {
                        (1, _) => name,
                        (_, true) => format!("{name}^{e}"),
                        (_, false) => format!("({name})^{e}"),
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

// Operator impls panic on mismatched `n`; the `try_*` methods report it.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.n, rhs.n, "polynomial dimension mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}
