use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fields::{half_quadratic, VectorField};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::rational::{rat, Rational};

/// `L^total = L + Φ + L* + Φ*` by bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidegreeDecomposition {
    /// Bidegree (0,1).
    pub l: VectorField,
    /// Bidegree (−1,2).
    pub phi: VectorField,
    /// Bidegree (1,0).
    pub lstar: VectorField,
    /// Bidegree (2,−1).
    pub phistar: VectorField,
}

/// Coefficients of the four coordinate forms
///
/// ```text
/// L  = −C^k_ij p_k q^j ∂/∂p_i − C^k_ij q^i q^j ∂/∂q^k
/// Φ  = ½ φ_ijk q^i q^j ∂/∂p_k
/// L* = C^{ij}_{*k} q^k p_j ∂/∂q^i + C^{ij}_{*k} p_i p_j ∂/∂p_k
/// Φ* = ½ φ*^{ijk} p_i p_j ∂/∂q^k
/// ```
///
/// each stored as a flat `n³` array indexed `(i·n + j)·n + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateForms {
    pub n: usize,
    pub c: Vec<Rational>,
    pub phi: Vec<Rational>,
    pub cstar: Vec<Rational>,
    pub phistar: Vec<Rational>,
}

impl BidegreeDecomposition {
    pub fn sum(&self) -> VectorField {
        &(&(&self.l + &self.phi) + &self.lstar) + &self.phistar
    }

    pub fn coordinate_forms(&self) -> Result<CoordinateForms> {
        let n = self.l.n();
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        let mut forms = CoordinateForms {
            n,
            c: vec![Rational::zero(); n * n * n],
            phi: vec![Rational::zero(); n * n * n],
            cstar: vec![Rational::zero(); n * n * n],
            phistar: vec![Rational::zero(); n * n * n],
        };
        for i in 0..n {
            for j in 0..n {
                // {L(p_i), p_j} = C^k_ij p_k
                let br = self.l.component(i).poisson(&Polynomial::p(n, j))?.linear_coefficients()?;
                // {L*(q^i), q^j} = C^{ij}_{*k} q^k
                let brs = self.lstar.component(n + i).poisson(&Polynomial::q(n, j))?.linear_coefficients()?;
                for k in 0..n {
                    forms.c[idx(i, j, k)] = br[k].clone();
                    forms.cstar[idx(i, j, k)] = brs[n + k].clone();
                    // φ_ijk = ∂²Φ^{p_k}/∂q^i∂q^j, φ*^{ijk} = ∂²Φ*^{q^k}/∂p_i∂p_j
                    forms.phi[idx(i, j, k)] = self.phi.component(k).partial(n + i)?.partial(n + j)?.constant_value()?;
                    forms.phistar[idx(i, j, k)] =
                        self.phistar.component(n + k).partial(i)?.partial(j)?.constant_value()?;
                }
            }
        }
        Ok(forms)
    }
}

impl CoordinateForms {
    fn at(v: &[Rational], n: usize, i: usize, j: usize, k: usize) -> &Rational {
        &v[(i * n + j) * n + k]
    }

    /// Rebuilds the four fields from their coordinate forms.
    pub fn reassemble(&self) -> BidegreeDecomposition {
        let n = self.n;
        let (p, q) = (|i| Polynomial::p(n, i), |i| Polynomial::q(n, i));
        let half = rat(1, 2);
        let mut l = vec![Polynomial::zero(n); 2 * n];
        let mut phi = vec![Polynomial::zero(n); 2 * n];
        let mut lstar = vec![Polynomial::zero(n); 2 * n];
        let mut phistar = vec![Polynomial::zero(n); 2 * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = Self::at(&self.c, n, i, j, k);
                    if !c.is_zero() {
                        l[i] -= &(&p(k) * &q(j)).scale(c);
                        l[n + k] -= &(&q(i) * &q(j)).scale(c);
                    }
                    let f = Self::at(&self.phi, n, i, j, k);
                    if !f.is_zero() {
                        phi[k] += &(&q(i) * &q(j)).scale(&(f * &half));
                    }
                    let cs = Self::at(&self.cstar, n, i, j, k);
                    if !cs.is_zero() {
                        lstar[n + i] += &(&q(k) * &p(j)).scale(cs);
                        lstar[k] += &(&p(i) * &p(j)).scale(cs);
                    }
                    let fs = Self::at(&self.phistar, n, i, j, k);
                    if !fs.is_zero() {
                        phistar[n + k] += &(&p(i) * &p(j)).scale(&(fs * &half));
                    }
                }
            }
        }
        let mk = |c| VectorField::new(n, c).expect("component count");
        BidegreeDecomposition {
            l: mk(l),
            phi: mk(phi),
            lstar: mk(lstar),
            phistar: mk(phistar),
        }
    }
}

/// Splits a field of polynomial degree +1 into its four bidegree parts.
pub fn bidegree_decompose(total: &VectorField) -> Result<BidegreeDecomposition> {
    if !total.has_degree(1) {
        return Err(Error::UnsupportedDegree {
            degree: total.degree_for_error(),
            what: "bidegree decomposition needs polynomial degree +1",
        });
    }
    let mut parts = total.bidegree_parts();
    let mut take = |bd| parts.remove(&bd).unwrap_or_else(|| VectorField::zero(total.n()));
    let out = BidegreeDecomposition {
        l: take((0, 1)),
        phi: take((-1, 2)),
        lstar: take((1, 0)),
        phistar: take((2, -1)),
    };
    debug_assert!(parts.is_empty());
    Ok(out)
}

/// A splitting `σ(p_j) = p_j + s_jk q^k` with symmetric `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingData {
    s: Matrix,
}

impl SplittingData {
    pub fn new(s: Matrix) -> Result<Self> {
        if !s.is_square() || !s.is_symmetric() {
            return Err(Error::precondition("splitting matrix must be square and symmetric"));
        }
        Ok(SplittingData { s })
    }

    pub fn n(&self) -> usize {
        self.s.rows()
    }

    /// `h = ½ s_jk q^j q^k`.
    pub fn hamiltonian(&self) -> Polynomial {
        half_quadratic(self.n(), &self.s, true)
    }
}

/// `σ = 1 + {−, h} + ½{{−, h}, h} + …` as a matrix on `W` (column `b` is
/// the image of the `b`-th coordinate function).
pub fn splitting_flow(s: &SplittingData) -> Result<Matrix> {
    let n = s.n();
    let h = s.hamiltonian();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for b in 0..2 * n {
        let mut term = Polynomial::var(n, b);
        let mut image = term.clone();
        for k in 1..=2 * n + 1 {
            term = term.poisson(&h)?.scale(&rat(1, k as i64));
            if term.is_zero() {
                break;
            }
            image += &term;
        }
        if !term.is_zero() {
            return Err(Error::NotNilpotent { max_order: 2 * n + 1 });
        }
        for (a, c) in image.linear_coefficients()?.into_iter().enumerate() {
            m[(a, b)] = c;
        }
    }
    Ok(m)
}
