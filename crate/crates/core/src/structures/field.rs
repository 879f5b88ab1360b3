use num_traits::Zero;

use crate::check::{for_each_tuple, CheckOutcome, DefectValue};
use crate::complex::{Cochain, CochainComplex};
use crate::error::{Error, Result};
use crate::fields::{interior, sn_bracket, DifferentialForm, FieldDegree, Multivector, VectorField};
use crate::poly::Polynomial;
use crate::rational::{rat, Rational};

use super::algebra::LeibnizAlgebra;

/// A vector field of polynomial degree +1, with its cohomological and
/// anti-cyclic flags computed at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureField {
    field: VectorField,
    cohomological: bool,
    anticyclic: bool,
}

impl StructureField {
    pub fn new(field: VectorField) -> Result<Self> {
        if !field.has_degree(1) {
            return Err(Error::UnsupportedDegree {
                degree: field.degree_for_error(),
                what: "structure fields have polynomial degree +1",
            });
        }
        let cohomological = is_cohomological(&field)?.holds();
        let anticyclic = is_anticyclic(&field)?.holds();
        Ok(StructureField {
            field,
            cohomological,
            anticyclic,
        })
    }

    pub fn field(&self) -> &VectorField {
        &self.field
    }

    pub fn into_field(self) -> VectorField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.field.n()
    }

    pub fn is_cohomological(&self) -> bool {
        self.cohomological
    }

    pub fn is_anticyclic(&self) -> bool {
        self.anticyclic
    }

    pub fn is_leibniz(&self) -> bool {
        self.cohomological && self.anticyclic
    }
}

/// `L = −C^k_ij p_k q^j ∂/∂p_i − C^k_ij q^i q^j ∂/∂q^k`.
pub fn structure_field(a: &LeibnizAlgebra) -> Result<StructureField> {
    super::algebra::semidirect_double(a)?;
    StructureField::new(structure_vector_field(a))
}

/// The structure field of any bracket, without checking the Leibniz identity.
pub fn structure_vector_field(a: &LeibnizAlgebra) -> VectorField {
    let first = first_term_field(a);
    let d = a.dim();
    let mut comps = first.components().to_vec();
    for (i, j, k, c) in constants(a) {
        let term = (&Polynomial::q(d, i) * &Polynomial::q(d, j)).scale(&-c);
        comps[d + k] += &term;
    }
    VectorField::new(d, comps).expect("component count")
}

/// The first term `−C^k_ij p_k q^j ∂/∂p_i` alone: cohomological, but not
/// anti-cyclic in general.
pub fn first_term_field(a: &LeibnizAlgebra) -> VectorField {
    let d = a.dim();
    let mut comps = vec![Polynomial::zero(d); 2 * d];
    for (i, j, k, c) in constants(a) {
        let term = (&Polynomial::p(d, k) * &Polynomial::q(d, j)).scale(&-c);
        comps[i] += &term;
    }
    VectorField::new(d, comps).expect("component count")
}

fn constants(a: &LeibnizAlgebra) -> Vec<(usize, usize, usize, Rational)> {
    let d = a.dim();
    let mut out = Vec::new();
    for_each_tuple(d, 3, |t| {
        let c = a.constant(t[0], t[1], t[2]);
        if !c.is_zero() {
            out.push((t[0], t[1], t[2], c.clone()));
        }
    });
    out
}

/// `ψ_X(l_1, …, l_{m+1}) = {…{X(l_1), l_2}, …, l_{m+1}}` for `X` of
/// polynomial degree `m`. The zero field gives the zero arity-1 cochain.
pub fn psi(x: &VectorField) -> Result<Cochain> {
    match x.poly_degree() {
        FieldDegree::Zero => Ok(Cochain::zero(2 * x.n(), 1)),
        FieldDegree::Homogeneous(m) if m >= 0 => psi_of_degree(x, m as usize),
        FieldDegree::Homogeneous(m) => Err(Error::UnsupportedDegree {
            degree: m.into(),
            what: "psi needs a field of polynomial degree ≥ 0",
        }),
        FieldDegree::Inhomogeneous => Err(Error::Inhomogeneous("psi needs a homogeneous field".into())),
    }
}

/// [`psi`] with the degree fixed in advance, so that the zero field yields a
/// zero cochain of arity `m + 1`.
pub fn psi_of_degree(x: &VectorField, m: usize) -> Result<Cochain> {
    if !x.has_degree(m as i32) {
        return Err(Error::Inhomogeneous(format!("field is not of polynomial degree {m}")));
    }
    let n = x.n();
    let dim = 2 * n;
    let mut out = Cochain::zero(dim, m + 1);
    if x.is_zero() {
        return Ok(out);
    }
    // Iterated brackets with coordinate functions are partial derivatives:
    // {f, p_i} = −∂f/∂q^i and {f, q^i} = ∂f/∂p_i.
    let bracket_with = |f: &Polynomial, a: usize| -> Result<Polynomial> {
        if a < n {
            Ok(-&f.partial(n + a)?)
        } else {
            f.partial(a - n)
        }
    };
    let mut err = None;
    for_each_tuple(dim, m + 1, |args| {
        if err.is_some() {
            return;
        }
        let mut f = x.component(args[0]).clone();
        for &a in &args[1..] {
            if f.is_zero() {
                break;
            }
            match bracket_with(&f, a) {
                Ok(g) => f = g,
                Err(e) => {
                    err = Some(e);
                    return;
                }
            }
        }
        if f.is_zero() {
            return;
        }
        match f.linear_coefficients() {
            Ok(coeffs) => {
                for (k, c) in coeffs.into_iter().enumerate() {
                    out.set(args, k, c);
                }
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `ψ[X, H] = [[ψ_X, ψ_H]]` for a Hamiltonian `H` of polynomial degree 0.
pub fn psi_lemma_check(x: &VectorField, h: &VectorField) -> Result<bool> {
    if !h.has_degree(0) || !h.is_hamiltonian() {
        return Err(Error::precondition("H must be a Hamiltonian field of polynomial degree 0"));
    }
    let m = match x.poly_degree() {
        FieldDegree::Zero => 1,
        FieldDegree::Homogeneous(m) if m >= 0 => m as usize,
        _ => return Err(Error::Inhomogeneous("X must be homogeneous of degree ≥ 0".into())),
    };
    let lhs = psi_of_degree(&x.commutator(h)?, m)?;
    let complex = CochainComplex::new(usize::MAX);
    let rhs = complex.graded_bracket(&psi_of_degree(x, m)?, &psi_of_degree(h, 0)?)?;
    Ok(lhs == rhs)
}

/// The signed cyclic sum `Σ_k (−1)^{k(m+1)} {ψ_X(τ^k l), l_{τ^k(m+2)}}` over
/// all basis tuples; the sign is the signature of the cyclic shift.
pub fn is_anticyclic(x: &VectorField) -> Result<CheckOutcome> {
    let m = match x.poly_degree() {
        FieldDegree::Zero => return Ok(CheckOutcome::pass()),
        FieldDegree::Homogeneous(m) if m >= 0 => m as usize,
        FieldDegree::Homogeneous(m) => {
            return Err(Error::UnsupportedDegree {
                degree: m.into(),
                what: "anti-cyclicity needs polynomial degree ≥ 0",
            })
        }
        FieldDegree::Inhomogeneous => return Err(Error::Inhomogeneous("anti-cyclicity needs a homogeneous field".into())),
    };
    let n = x.n();
    let dim = 2 * n;
    let psi_x = psi_of_degree(x, m)?;
    let len = m + 2;
    let scalar = |t: &[usize]| -> Rational {
        let v = psi_x.eval(&t[..len - 1]);
        let last = t[len - 1];
        // ω(v, w_last)
        if last < n {
            -&v[n + last]
        } else {
            v[last - n].clone()
        }
    };
    let mut out = CheckOutcome::pass();
    let mut rotated = vec![0; len];
    for_each_tuple(dim, len, |t| {
        let mut sum = Rational::zero();
        for k in 0..len {
            for (i, r) in rotated.iter_mut().enumerate() {
                *r = t[(i + k) % len];
            }
            let s = scalar(&rotated);
            if (k * (m + 1)) % 2 == 1 {
                sum -= s;
            } else {
                sum += s;
            }
        }
        if !sum.is_zero() {
            out.push(t.to_vec(), DefectValue::Scalar(sum));
        }
    });
    Ok(out)
}

/// Both routes to the cohomological condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologicalOutcome {
    /// `{L(l1), L(l2)} − L{L(l1), l2}` on basis pairs.
    pub field: CheckOutcome,
    /// `[[ψ_L, ψ_L]] = 0`.
    pub maurer_cartan: bool,
}

impl CohomologicalOutcome {
    pub fn holds(&self) -> bool {
        self.field.holds()
    }

    pub fn routes_agree(&self) -> bool {
        self.field.holds() == self.maurer_cartan
    }
}

pub fn is_cohomological(l: &VectorField) -> Result<CohomologicalOutcome> {
    if !l.has_degree(1) {
        return Err(Error::UnsupportedDegree {
            degree: l.degree_for_error(),
            what: "the cohomological condition needs polynomial degree +1",
        });
    }
    let dim = 2 * l.n();
    let mut field = CheckOutcome::pass();
    for_each_tuple(dim, 2, |t| {
        let la = l.component(t[0]);
        let lb = l.component(t[1]);
        let xb = Polynomial::var(l.n(), t[1]);
        let defect = la
            .poisson(lb)
            .and_then(|x| Ok(&x - &l.apply(&la.poisson(&xb)?)?))
            .expect("dimensions agree");
        if !defect.is_zero() {
            field.push(t.to_vec(), DefectValue::Poly(defect));
        }
    });
    let (maurer_cartan, _) = CochainComplex::default().is_maurer_cartan(&psi_of_degree(l, 1)?)?;
    Ok(CohomologicalOutcome { field, maurer_cartan })
}

/// Cohomological and anti-cyclic; false for fields not of degree +1.
pub fn is_leibniz_field(l: &VectorField) -> bool {
    if !l.has_degree(1) {
        return false;
    }
    is_cohomological(l).is_ok_and(|c| c.holds()) && is_anticyclic(l).is_ok_and(|c| c.holds())
}

/// `[f1, f2]_L = {L(f1), f2}`.
pub fn derived_bracket(l: &StructureField, f1: &Polynomial, f2: &Polynomial) -> Result<Polynomial> {
    l.field().apply(f1)?.poisson(f2)
}

/// `(l1, l2, l3)_L = ([l1, l2]_L, l3)_−`.
pub fn leibniz_3form(l: &StructureField, l1: &Polynomial, l2: &Polynomial, l3: &Polynomial) -> Result<Rational> {
    super::algebra::pairing_minus(&derived_bracket(l, l1, l2)?, l3)
}

/// Cyclic sums `(l1,l2,l3)_L + (l3,l1,l2)_L + (l2,l3,l1)_L` over basis triples.
pub fn three_form_cyclic_check(l: &StructureField) -> Result<CheckOutcome> {
    let n = l.n();
    let mut out = CheckOutcome::pass();
    let mut err = None;
    for_each_tuple(2 * n, 3, |t| {
        let v: Vec<Polynomial> = t.iter().map(|&a| Polynomial::var(n, a)).collect();
        let sum = [(0, 1, 2), (2, 0, 1), (1, 2, 0)]
            .iter()
            .map(|&(a, b, c)| leibniz_3form(l, &v[a], &v[b], &v[c]))
            .sum::<Result<Rational>>();
        match sum {
            Ok(s) if !s.is_zero() => out.push(t.to_vec(), DefectValue::Scalar(s)),
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    });
    err.map_or(Ok(out), Err)
}

/// `[l1, l2]_− = {L(l1), l2} − {L(l2), l1}`.
pub fn skew_bracket(l: &StructureField, l1: &Polynomial, l2: &Polynomial) -> Result<Polynomial> {
    Ok(&derived_bracket(l, l1, l2)? - &derived_bracket(l, l2, l1)?)
}

/// `Λ = [π, L]`.
pub fn lambda_tensor(l: &StructureField) -> Result<Multivector> {
    sn_bracket(
        &Multivector::poisson_bivector(l.n()),
        &Multivector::from_vector_field(l.field()),
    )
}

/// `[[Λ, l1], l2]`.
pub fn lambda_bracket(lambda: &Multivector, l1: &Polynomial, l2: &Polynomial) -> Result<Polynomial> {
    let inner = sn_bracket(lambda, &Multivector::from_polynomial(l1))?;
    sn_bracket(&inner, &Multivector::from_polynomial(l2))?.to_polynomial()
}

/// `θ_L = i_L ω`.
pub fn theta(l: &StructureField) -> Result<DifferentialForm> {
    interior(l.field(), &DifferentialForm::symplectic(l.n()))
}

/// `[l1,l2]_− = [[Λ,l1],l2] = dθ_L(H_{l1}, H_{l2})` on all basis pairs;
/// failures carry the first disagreeing expression's difference.
pub fn skew_bracket_consistency(l: &StructureField) -> Result<CheckOutcome> {
    use crate::fields::{eval_2form, exterior_d};
    let n = l.n();
    let lambda = lambda_tensor(l)?;
    let dtheta = exterior_d(&theta(l)?)?;
    let mut out = CheckOutcome::pass();
    for a in 0..2 * n {
        for b in 0..2 * n {
            let la = Polynomial::var(n, a);
            let lb = Polynomial::var(n, b);
            let skew = skew_bracket(l, &la, &lb)?;
            let via_lambda = lambda_bracket(&lambda, &la, &lb)?;
            let via_theta = eval_2form(&dtheta, &VectorField::hamiltonian(&la), &VectorField::hamiltonian(&lb))?;
            if via_lambda != skew {
                out.push(vec![a, b], DefectValue::Poly(&via_lambda - &skew));
            } else if via_theta != skew {
                out.push(vec![a, b], DefectValue::Poly(&via_theta - &skew));
            }
        }
    }
    Ok(out)
}

/// Invariance of the Poisson pairing under the derived bracket of a
/// Leibniz field.
pub fn invariance_theorem_check(l: &StructureField) -> Result<super::algebra::InvarianceOutcome> {
    if !l.is_leibniz() {
        return Err(Error::precondition("invariance is only guaranteed for Leibniz fields"));
    }
    super::algebra::check_invariance(&psi_of_degree(l.field(), 1)?)
}

/// The degree-1 field `L` with `ψ_L = μ`, when `μ(l, −)` lies in `sp(W)`
/// for every `l`.
pub fn field_from_bracket(mu: &Cochain) -> Result<StructureField> {
    if mu.arity() != 2 || !mu.dim().is_multiple_of(2) {
        return Err(Error::precondition("expected an arity-2 cochain on an even-dimensional W"));
    }
    let dim = mu.dim();
    let n = dim / 2;
    let half = rat(1, 2);
    let mut comps = Vec::with_capacity(dim);
    for a in 0..dim {
        // ∂Q/∂p_b = μ(w_a, q^b), ∂Q/∂q^b = −μ(w_a, p_b)
        let grads: Vec<Vec<Rational>> = (0..dim)
            .map(|b| {
                if b < n {
                    mu.eval(&[a, n + b]).to_vec()
                } else {
                    mu.eval(&[a, b - n]).iter().map(|c| -c).collect()
                }
            })
            .collect();
        for b in 0..dim {
            for c in 0..b {
                if grads[b][c] != grads[c][b] {
                    return Err(Error::NotRepresentable(format!(
                        "μ(w_{}, −) does not preserve the pairing",
                        a + 1
                    )));
                }
            }
        }
        // Euler: Q = ½ Σ_b x^b ∂Q/∂x^b
        let mut q = Polynomial::zero(n);
        for (b, g) in grads.iter().enumerate() {
            let lin = Polynomial::from_linear(n, g);
            q += &(&Polynomial::var(n, b) * &lin).scale(&half);
        }
        comps.push(q);
    }
    let field = VectorField::new(n, comps)?;
    if psi_of_degree(&field, 1)? != *mu {
        return Err(Error::NotRepresentable("reconstructed field does not reproduce the bracket".into()));
    }
    StructureField::new(field)
}
