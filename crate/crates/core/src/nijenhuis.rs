//! Nijenhuis operators on a Leibniz bracket: torsion, complex structures and
//! the deformations `μ + t[[μ, N]]`.

use crate::complex::{graded_bracket, is_maurer_cartan, Cochain};
use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::rational::{rat, Rational};
use crate::structures::{psi_lemma_check, psi_of_degree, StructureField};

/// A linear operator `N` on `W`, optionally with a quadratic Hamiltonian
/// generator `h` (then `N = {h, −}` lies in `sp(2n)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator1 {
    map: Cochain,
    generator: Option<Polynomial>,
}

impl Operator1 {
    /// `N(x^b) = Σ_a m[a][b] x^a`.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.rows().is_multiple_of(2) {
            return Err(Error::precondition("operators act on an even-dimensional W"));
        }
        Ok(Operator1 {
            map: Cochain::from_matrix(m)?,
            generator: None,
        })
    }

    /// `N = {h, −}` for a quadratic `h`.
    pub fn from_generator(h: &Polynomial) -> Result<Self> {
        if !h.is_zero() && !h.is_homogeneous_of(2) {
            return Err(Error::precondition("the generator must be a quadratic polynomial"));
        }
        let m = VectorField::hamiltonian(h).linear_matrix()?;
        Ok(Operator1 {
            map: Cochain::from_matrix(&m)?,
            generator: Some(h.clone()),
        })
    }

    /// A matrix operator together with a claimed generator; the two must agree.
    pub fn with_generator(m: &Matrix, h: &Polynomial) -> Result<Self> {
        let op = Self::from_generator(h)?;
        if op.matrix() != *m {
            return Err(Error::precondition("the matrix is not the Hamiltonian map of the generator"));
        }
        Ok(op)
    }

    pub fn identity(n: usize) -> Self {
        Operator1 {
            map: Cochain::identity(2 * n),
            generator: None,
        }
    }

    pub fn zero(n: usize) -> Self {
        Operator1 {
            map: Cochain::zero(2 * n, 1),
            generator: Some(Polynomial::zero(n)),
        }
    }

    /// `N = K⁻¹ − K`, generated by `h = ½ r^{ij} p_i p_j + ½ K_ij q^i q^j`
    /// with `r = K⁻¹`. Then `N(p_j) = −K_jk q^k`, `N(q^a) = r^{aj} p_j`.
    pub fn complex_structure_from_form(k: &Matrix) -> Result<Self> {
        if !k.is_square() || !k.is_symmetric() {
            return Err(Error::precondition("the form must be square and symmetric"));
        }
        let r = k.inverse().map_err(|_| Error::Singular("the form is degenerate".into()))?;
        let n = k.rows();
        let h = &crate::fields::half_quadratic(n, &r, false) + &crate::fields::half_quadratic(n, k, true);
        Self::from_generator(&h)
    }

    pub fn n(&self) -> usize {
        self.map.dim() / 2
    }

    pub fn cochain(&self) -> &Cochain {
        &self.map
    }

    pub fn matrix(&self) -> Matrix {
        self.map.to_matrix().expect("arity 1")
    }

    pub fn generator(&self) -> Option<&Polynomial> {
        self.generator.as_ref()
    }

    /// The generator if one was given, or the Hamiltonian potential of the
    /// map when it lies in `sp(2n)`.
    pub fn hamiltonian(&self) -> Option<Polynomial> {
        self.generator.clone().or_else(|| self.as_field().hamiltonian_potential())
    }

    /// The degree-0 field with the same action on coordinate functions.
    pub fn as_field(&self) -> VectorField {
        VectorField::from_linear_matrix(self.n(), &self.matrix()).expect("square operator")
    }

    pub fn compose(&self, other: &Operator1) -> Result<Operator1> {
        Ok(Operator1 {
            map: other.map.postcompose(&self.map)?,
            generator: None,
        })
    }

    pub fn is_minus_identity_square(&self) -> bool {
        let sq = self.compose(self).expect("same dimension");
        sq.map == Cochain::identity(self.map.dim()).scale(&rat(-1, 1))
    }
}

fn expect_bracket(mu: &Cochain, n: &Operator1) -> Result<()> {
    if mu.arity() != 2 {
        return Err(Error::precondition("expected an arity-2 cochain"));
    }
    Error::check_dim(mu.dim(), n.map.dim())
}

/// `Tor_N(x, y) = [Nx, Ny] − N[Nx, y] − N[x, Ny] + N²[x, y]`.
pub fn torsion(mu: &Cochain, n: &Operator1) -> Result<Cochain> {
    expect_bracket(mu, n)?;
    let nn = &n.map;
    let both = mu.precompose_slot(0, nn)?.precompose_slot(1, nn)?;
    let left = mu.precompose_slot(0, nn)?.postcompose(nn)?;
    let right = mu.precompose_slot(1, nn)?.postcompose(nn)?;
    let square = mu.postcompose(nn)?.postcompose(nn)?;
    both.try_sub(&left)?.try_sub(&right)?.try_add(&square)
}

pub fn is_nijenhuis(mu: &Cochain, n: &Operator1) -> Result<bool> {
    Ok(torsion(mu, n)?.is_zero())
}

/// `½[[[[μ, N]], N]] − Tor_N = ½[[μ, N∘N]]`; returns whether it holds and the
/// difference of the two sides.
pub fn fnc_check(mu: &Cochain, n: &Operator1) -> Result<(bool, Cochain)> {
    expect_bracket(mu, n)?;
    let half = rat(1, 2);
    let lhs = graded_bracket(&graded_bracket(mu, &n.map)?, &n.map)?
        .scale(&half)
        .try_sub(&torsion(mu, n)?)?;
    let rhs = graded_bracket(mu, &n.compose(n)?.map)?.scale(&half);
    let defect = lhs.try_sub(&rhs)?;
    Ok((defect.is_zero(), defect))
}

/// Outcome of [`is_complex_structure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexOutcome {
    pub square_is_minus_one: bool,
    pub torsion_free: bool,
    /// `[[[[μ, N]], N]] = −μ`, evaluated regardless of the other two.
    pub double_bracket_is_minus_mu: bool,
}

impl ComplexOutcome {
    pub fn holds(&self) -> bool {
        self.square_is_minus_one && self.torsion_free
    }
}

pub fn is_complex_structure(mu: &Cochain, n: &Operator1) -> Result<ComplexOutcome> {
    expect_bracket(mu, n)?;
    let double = graded_bracket(&graded_bracket(mu, &n.map)?, &n.map)?;
    Ok(ComplexOutcome {
        square_is_minus_one: n.is_minus_identity_square(),
        torsion_free: is_nijenhuis(mu, n)?,
        double_bracket_is_minus_mu: double == mu.scale(&rat(-1, 1)),
    })
}

/// The coefficients of `t⁰, t¹, t²` in `[[μ_t, μ_t]]` for `μ_t = μ + t[[μ, N]]`.
pub fn deformation_coefficients(mu: &Cochain, n: &Operator1) -> Result<[Cochain; 3]> {
    expect_bracket(mu, n)?;
    let nu = graded_bracket(mu, &n.map)?;
    Ok([
        graded_bracket(mu, mu)?,
        graded_bracket(mu, &nu)?.scale(&rat(2, 1)),
        graded_bracket(&nu, &nu)?,
    ])
}

/// `μ_t = μ + t[[μ, N]]`; requires `[[μ, N]]` to be a Leibniz bracket.
pub fn deform(mu: &Cochain, n: &Operator1, t: &Rational) -> Result<Cochain> {
    expect_bracket(mu, n)?;
    let nu = graded_bracket(mu, &n.map)?;
    if !is_maurer_cartan(&nu)?.0 {
        return Err(Error::precondition("the deformation is not flat: [[μ, N]] is not a Leibniz bracket"));
    }
    mu.try_add(&nu.scale(t))
}

/// `[L, N]` for a Hamiltonian degree-0 `N` with vanishing torsion on the
/// bracket of `L`.
pub fn nijenhuis_field_check(l: &StructureField, n: &Operator1) -> Result<StructureField> {
    Error::check_dim(l.n(), n.n())?;
    let nf = n.as_field();
    if !nf.is_hamiltonian() {
        return Err(Error::precondition("N is not a Hamiltonian operator"));
    }
    let mu = psi_of_degree(l.field(), 1)?;
    if !is_nijenhuis(&mu, n)? {
        return Err(Error::precondition("N has nonvanishing torsion on the bracket of L"));
    }
    let bracket = l.field().commutator(&nf)?;
    debug_assert!(psi_lemma_check(l.field(), &nf)?);
    StructureField::new(bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Cochain;
    use crate::doubles::{killing_form, semisimple_double};
    use crate::rational::int;
    use crate::structures::{field_from_bracket, semidirect_double, structure_field, LeibnizAlgebra};

    fn sl2_setup() -> (Cochain, Operator1) {
        let a = LeibnizAlgebra::sl2();
        let k = killing_form(&a, true).unwrap();
        (semisimple_double(&a, &k).unwrap(), Operator1::complex_structure_from_form(&k).unwrap())
    }

    #[test]
    fn trivial_torsions() {
        let mu = semidirect_double(&LeibnizAlgebra::sl2()).unwrap();
        assert!(torsion(&mu, &Operator1::identity(3)).unwrap().is_zero());
        assert!(torsion(&mu, &Operator1::zero(3)).unwrap().is_zero());
        assert!(fnc_check(&mu, &Operator1::zero(3)).unwrap().0);
        let (ok, _) = fnc_check(&mu, &Operator1::identity(3)).unwrap();
        assert!(ok);
        let id = is_complex_structure(&mu, &Operator1::identity(3)).unwrap();
        assert!(id.torsion_free && !id.square_is_minus_one && !id.holds());
    }

    #[test]
    fn killing_complex_structure() {
        let (mu, n) = sl2_setup();
        let k = killing_form(&LeibnizAlgebra::sl2(), true).unwrap();
        // N(p_1) = −8 q^1, N(q^1) = p_1 / 8
        let m = n.matrix();
        assert_eq!(m[(3, 0)], int(-8));
        assert_eq!(m[(0, 3)], rat(1, 8));
        assert_eq!(m[(5, 1)], -&k[(1, 2)]);
        let out = is_complex_structure(&mu, &n).unwrap();
        assert!(out.holds() && out.double_bracket_is_minus_mu);
        // the right side of the fnc identity is −μ/2
        let rhs = graded_bracket(&mu, &n.compose(&n).unwrap().map).unwrap().scale(&rat(1, 2));
        assert_eq!(rhs, mu.scale(&rat(-1, 2)));

        let l = field_from_bracket(&mu).unwrap();
        let ln = nijenhuis_field_check(&l, &n).unwrap();
        assert!(ln.is_leibniz());
        let lnn = ln.field().commutator(&n.as_field()).unwrap();
        assert_eq!(lnn, l.field().scale(&int(-1)));
    }

    #[test]
    fn deformation_by_a_grading_operator() {
        // h = Σ p_i q^i acts by −1 on V and +1 on V*
        let a = LeibnizAlgebra::heis();
        let n = a.dim();
        let h = (0..n).fold(Polynomial::zero(n), |acc, i| &acc + &(&Polynomial::p(n, i) * &Polynomial::q(n, i)));
        let op = Operator1::from_generator(&h).unwrap();
        let mu = semidirect_double(&a).unwrap();
        assert!(is_nijenhuis(&mu, &op).unwrap());
        for t in [int(0), int(1), rat(-3, 2)] {
            let mu_t = deform(&mu, &op, &t).unwrap();
            assert!(is_maurer_cartan(&mu_t).unwrap().0);
        }
        assert_eq!(deform(&mu, &op, &int(0)).unwrap(), mu);
        assert!(deformation_coefficients(&mu, &op).unwrap().iter().all(Cochain::is_zero));
        let l = structure_field(&a).unwrap();
        assert!(nijenhuis_field_check(&l, &op).unwrap().is_leibniz());
        assert!(nijenhuis_field_check(&l, &Operator1::zero(n)).unwrap().field().is_zero());
    }

    #[test]
    fn generator_must_match() {
        let h = &Polynomial::p(1, 0) * &Polynomial::p(1, 0);
        let m = Matrix::identity(2);
        assert!(Operator1::with_generator(&m, &h).is_err());
        assert!(Operator1::from_generator(&Polynomial::p(1, 0)).is_err());
    }
}
