//! Leibniz cochains `Hom(W^{⊗m}, W)` as dense tensors.
//!
//! The composition `M ∘̄ N` inserts `N(v_{σ(1)}, …, v_{σ(n)})` into slot
//! `σ(n) − n + 1` of `M`; the unused arguments before `σ(n)` keep their
//! order and the arguments after `σ(n)` follow. The Koszul sign reduces to
//! `(−1)^{Σ_{a<n} (σ(a) − a)}`, which is the sign of moving the first
//! `n − 1` chosen arguments rightwards next to `v_{σ(n)}`.

use std::fmt;

use num_traits::{One, Zero};

use crate::check::for_each_tuple;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};

/// Default cap on cochain arity.
pub const DEFAULT_ARITY_CAP: usize = 5;

/// A multilinear map `W^{⊗arity} → W`.
///
/// `coeffs[((i_1·d + i_2)…)·d + k]` is the `k`-th coordinate of
/// `T(e_{i_1}, …, e_{i_m})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    dim: usize,
    arity: usize,
    coeffs: Vec<Rational>,
}

impl Cochain {
    pub fn zero(dim: usize, arity: usize) -> Self {
        assert!(arity >= 1, "cochains have arity at least 1");
        Cochain {
            dim,
            arity,
            coeffs: vec![Rational::zero(); dim.pow(arity as u32 + 1)],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut c = Cochain::zero(dim, 1);
        for i in 0..dim {
            c.coeffs[i * dim + i] = Rational::one();
        }
        c
    }

    /// Builds a cochain from its values on basis tuples.
    pub fn from_fn(dim: usize, arity: usize, mut f: impl FnMut(&[usize]) -> Vec<Rational>) -> Self {
        let mut c = Cochain::zero(dim, arity);
        for_each_tuple(dim, arity, |args| {
            let v = f(args);
            assert_eq!(v.len(), dim, "cochain value has wrong length");
            let base = c.base(args);
            for (k, x) in v.into_iter().enumerate() {
                c.coeffs[base + k] = x;
            }
        });
        c
    }

    /// Arity-1 cochain with `N(e_b) = Σ_a m[a][b] e_a`.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        let d = m.rows();
        Ok(Cochain::from_fn(d, 1, |args| (0..d).map(|a| m[(a, args[0])].clone()).collect()))
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        self.expect_arity(1)?;
        let d = self.dim;
        let mut m = Matrix::zeros(d, d);
        for b in 0..d {
            for a in 0..d {
                m[(a, b)] = self.coeffs[b * d + a].clone();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Cochain degree `arity − 1`.
    pub fn degree(&self) -> usize {
        self.arity - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn base(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        args.iter().fold(0, |acc, &i| acc * self.dim + i) * self.dim
    }

    pub fn get(&self, args: &[usize], k: usize) -> &Rational {
        &self.coeffs[self.base(args) + k]
    }

    pub fn set(&mut self, args: &[usize], k: usize, value: Rational) {
        let b = self.base(args);
        self.coeffs[b + k] = value;
    }

    /// `T(e_{args})` as a coordinate vector.
    pub fn eval(&self, args: &[usize]) -> &[Rational] {
        let b = self.base(args);
        &self.coeffs[b..b + self.dim]
    }

    /// Multilinear evaluation on arbitrary coordinate vectors.
    pub fn eval_vectors(&self, vs: &[&[Rational]]) -> Result<Vec<Rational>> {
        Error::check_dim(self.arity, vs.len())?;
        for v in vs {
            Error::check_dim(self.dim, v.len())?;
        }
        let mut out = vec![Rational::zero(); self.dim];
        for_each_tuple(self.dim, self.arity, |args| {
            let mut w = Rational::one();
            for (v, &i) in vs.iter().zip(args) {
                if v[i].is_zero() {
                    return;
                }
                w *= &v[i];
            }
            for (o, c) in out.iter_mut().zip(self.eval(args)) {
                if !c.is_zero() {
                    *o += &w * c;
                }
            }
        });
        Ok(out)
    }

    fn expect_arity(&self, arity: usize) -> Result<()> {
        if self.arity == arity {
            Ok(())
        } else {
            Err(Error::precondition(format!(
                "expected a cochain of arity {arity}, found arity {}",
                self.arity
            )))
        }
    }

    fn check_shape(&self, other: &Cochain) -> Result<()> {
        Error::check_dim(self.dim, other.dim)?;
        Error::check_dim(self.arity, other.arity)
    }

    pub fn try_add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Cochain) -> Result<Cochain> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        let mut out = self.clone();
        for a in &mut out.coeffs {
            *a *= c;
        }
        out
    }

    /// `lin ∘ self` for an arity-1 `lin`.
    pub fn postcompose(&self, lin: &Cochain) -> Result<Cochain> {
        lin.expect_arity(1)?;
        Error::check_dim(self.dim, lin.dim)?;
        let d = self.dim;
        Ok(Cochain::from_fn(d, self.arity, |args| {
            let v = self.eval(args);
            let mut out = vec![Rational::zero(); d];
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(lin.eval(&[j])) {
                    *o += vj * c;
                }
            }
            out
        }))
    }

    /// `self(…, lin(v_slot), …)` for an arity-1 `lin` and a 0-based slot.
    pub fn precompose_slot(&self, slot: usize, lin: &Cochain) -> Result<Cochain> {
        lin.expect_arity(1)?;
        Error::check_dim(self.dim, lin.dim)?;
        if slot >= self.arity {
            return Err(Error::IndexOutOfRange {
                index: slot,
                limit: self.arity,
            });
        }
        let d = self.dim;
        Ok(Cochain::from_fn(d, self.arity, |args| {
            let mut out = vec![Rational::zero(); d];
            let mut a = args.to_vec();
            for (j, c) in lin.eval(&[args[slot]]).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                a[slot] = j;
                for (o, x) in out.iter_mut().zip(self.eval(&a)) {
                    *o += c * x;
                }
            }
            out
        }))
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut res = Ok(());
        for_each_tuple(self.dim, self.arity, |args| {
            for (k, c) in self.eval(args).iter().enumerate() {
                if c.is_zero() || res.is_err() {
                    continue;
                }
                let sep = if first { "" } else { ", " };
                first = false;
                let one_based: Vec<String> = args.iter().map(|i| (i + 1).to_string()).collect();
                res = write!(f, "{sep}({})[{}] = {}", one_based.join(","), k + 1, rational::format(c));
            }
        });
        res?;
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The graded Lie algebra of cochains on a fixed space, with an arity cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    pub cap: usize,
}

impl Default for CochainComplex {
    fn default() -> Self {
        CochainComplex {
            cap: DEFAULT_ARITY_CAP,
        }
    }
}

/// One insertion pattern of `M ∘̄ N`.
struct Shuffle {
    chosen: Vec<usize>,
    before: Vec<usize>,
    after: Vec<usize>,
    negative: bool,
}

fn shuffles(m: usize, n: usize) -> Vec<Shuffle> {
    let t = m + n - 1;
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let last = subset[n - 1];
        let exponent: usize = subset[..n - 1].iter().enumerate().map(|(a, &s)| s - a).sum();
        out.push(Shuffle {
            chosen: subset.clone(),
            before: (0..last).filter(|i| !subset.contains(i)).collect(),
            after: (last + 1..t).collect(),
            negative: exponent % 2 == 1,
        });
        // next n-subset of 0..t in lexicographic order
        let Some(pos) = (0..n).rev().find(|&i| subset[i] < t - n + i) else {
            break;
        };
        subset[pos] += 1;
        for i in pos + 1..n {
            subset[i] = subset[i - 1] + 1;
        }
    }
    out
}

impl CochainComplex {
    pub fn new(cap: usize) -> Self {
        CochainComplex { cap }
    }

    fn check_cap(&self, arity: usize) -> Result<()> {
        if arity > self.cap {
            Err(Error::ArityCap {
                arity,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// `M ∘̄ N`, of arity `m + n − 1`.
    pub fn compose_bar(&self, big_m: &Cochain, big_n: &Cochain) -> Result<Cochain> {
        Error::check_dim(big_m.dim, big_n.dim)?;
        let (m, n) = (big_m.arity, big_n.arity);
        let t = m + n - 1;
        self.check_cap(t)?;
        let d = big_m.dim;
        let mut out = Cochain::zero(d, t);
        if big_m.is_zero() || big_n.is_zero() {
            return Ok(out);
        }
        let patterns = shuffles(m, n);
        let mut n_args = vec![0; n];
        let mut m_args = vec![0; m];
        let mut acc = vec![Rational::zero(); d];
        for_each_tuple(d, t, |v| {
            for a in acc.iter_mut() {
                a.set_zero();
            }
            for s in &patterns {
                for (slot, &i) in n_args.iter_mut().zip(&s.chosen) {
                    *slot = v[i];
                }
                let nv = big_n.eval(&n_args);
                let k_slot = s.before.len();
                for (slot, &i) in m_args.iter_mut().zip(&s.before) {
                    *slot = v[i];
                }
                for (slot, &i) in m_args[k_slot + 1..].iter_mut().zip(&s.after) {
                    *slot = v[i];
                }
                for (k, c) in nv.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    m_args[k_slot] = k;
                    for (a, x) in acc.iter_mut().zip(big_m.eval(&m_args)) {
                        if x.is_zero() {
                            continue;
                        }
                        if s.negative {
                            *a -= c * x;
                        } else {
                            *a += c * x;
                        }
                    }
                }
            }
            let base = out.base(v);
            for (k, a) in acc.iter().enumerate() {
                out.coeffs[base + k] = a.clone();
            }
        });
        Ok(out)
    }

    /// `[[M, N]] = M ∘̄ N − (−1)^{(m−1)(n−1)} N ∘̄ M`.
    pub fn graded_bracket(&self, big_m: &Cochain, big_n: &Cochain) -> Result<Cochain> {
        let mn = self.compose_bar(big_m, big_n)?;
        let nm = self.compose_bar(big_n, big_m)?;
        if (big_m.degree() * big_n.degree()).is_multiple_of(2) {
            mn.try_sub(&nm)
        } else {
            mn.try_add(&nm)
        }
    }

    /// `[[μ, μ]] = 0`, with the full defect tensor.
    pub fn is_maurer_cartan(&self, mu: &Cochain) -> Result<(bool, Cochain)> {
        mu.expect_arity(2)?;
        let defect = self.graded_bracket(mu, mu)?;
        Ok((defect.is_zero(), defect))
    }

    /// `d_μ M = [[μ, M]]`; `μ` must be Maurer-Cartan.
    pub fn differential(&self, mu: &Cochain, big_m: &Cochain) -> Result<Cochain> {
        let (mc, _) = self.is_maurer_cartan(mu)?;
        if !mc {
            return Err(Error::precondition("the bracket is not a Maurer-Cartan element"));
        }
        self.graded_bracket(mu, big_m)
    }

    /// `Σ_k (1/k!) ad^k(T)` with `ad = [[−, h]]` for an arity-1 `h`.
    pub fn exp_ad(&self, t: &Cochain, h: &Cochain, max_order: usize) -> Result<Cochain> {
        h.expect_arity(1)?;
        let mut sum = t.clone();
        let mut iterate = t.clone();
        for k in 1.. {
            iterate = self.graded_bracket(&iterate, h)?;
            if iterate.is_zero() {
                break;
            }
            if k > max_order {
                return Err(Error::NotNilpotent { max_order });
            }
            sum = sum.try_add(&iterate.scale(&rational::inv_factorial(k)))?;
        }
        Ok(sum)
    }
}

/// [`CochainComplex::compose_bar`] under the default cap.
pub fn compose_bar(big_m: &Cochain, big_n: &Cochain) -> Result<Cochain> {
    CochainComplex::default().compose_bar(big_m, big_n)
}

/// [`CochainComplex::graded_bracket`] under the default cap.
pub fn graded_bracket(big_m: &Cochain, big_n: &Cochain) -> Result<Cochain> {
    CochainComplex::default().graded_bracket(big_m, big_n)
}

/// [`CochainComplex::differential`] under the default cap.
pub fn differential(mu: &Cochain, big_m: &Cochain) -> Result<Cochain> {
    CochainComplex::default().differential(mu, big_m)
}

/// [`CochainComplex::is_maurer_cartan`] under the default cap.
pub fn is_maurer_cartan(mu: &Cochain) -> Result<(bool, Cochain)> {
    CochainComplex::default().is_maurer_cartan(mu)
}
