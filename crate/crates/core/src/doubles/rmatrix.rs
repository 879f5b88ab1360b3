use num_traits::Zero;

use crate::check::{for_each_tuple, CheckOutcome, DefectValue};
use crate::complex::Cochain;
use crate::error::{Error, Result};
use crate::fields::{flow_series, half_quadratic, VectorField};
use crate::linalg::Matrix;
use crate::poly::{Bidegree, Polynomial};
use crate::rational::{rat, Rational};
use crate::structures::{semidirect_double, LeibnizAlgebra, StructureField};

/// A linear map `r: g* → g`, `r(q^i) = Σ_j r^{ij} p_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix {
    r: Matrix,
}

impl RMatrix {
    pub fn new(r: Matrix) -> Result<Self> {
        if !r.is_square() {
            return Err(Error::DimensionMismatch {
                expected: r.rows(),
                found: r.cols(),
            });
        }
        Ok(RMatrix { r })
    }

    pub fn zero(n: usize) -> Self {
        RMatrix { r: Matrix::zeros(n, n) }
    }

    pub fn n(&self) -> usize {
        self.r.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.r
    }

    /// `r^{ij}`.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.r[(i, j)]
    }

    /// `r̂(p, q) = (r(q), 0)` as an arity-1 cochain on `W`.
    pub fn extended(&self) -> Cochain {
        let n = self.n();
        Cochain::from_fn(2 * n, 1, |a| {
            let mut v = vec![Rational::zero(); 2 * n];
            if a[0] >= n {
                for j in 0..n {
                    v[j] = self.r[(a[0] - n, j)].clone();
                }
            }
            v
        })
    }

    /// The omni-Lie projection `r(q^{E_ba}) = −p_{E_ab}` on `E_V ⋉ E_V*`
    /// (with `gl(V)*` identified with `gl(V)` through the trace pairing).
    pub fn omni_projection(v: usize) -> Result<Self> {
        if v < 1 {
            return Err(Error::precondition("omni-Lie algebra needs dim V ≥ 1"));
        }
        let n = v * v + v;
        let mut r = Matrix::zeros(n, n);
        for a in 0..v {
            for b in 0..v {
                r[(b * v + a, a * v + b)] = rat(-1, 1);
            }
        }
        Ok(RMatrix { r })
    }
}

/// Outcome of the Leibniz Yang-Baxter equation on all basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LybeOutcome {
    /// `[r q1, r q2] − r[r q1, q2] − r[q1, r q2]`.
    pub general: CheckOutcome,
    /// `[r q1, r q2] − r[r q1, q2]`, computed for Lie algebras only.
    pub lie_reduced: Option<CheckOutcome>,
    /// Whether the graph `{r(q) + q}` is closed under the double bracket.
    pub graph_closed: bool,
}

impl LybeOutcome {
    pub fn holds(&self) -> bool {
        self.general.holds()
    }

    /// The three formulations give the same verdict.
    pub fn consistent(&self) -> bool {
        self.lie_reduced.as_ref().is_none_or(|c| c.holds() == self.general.holds())
            && self.graph_closed == self.general.holds()
    }
}

fn apply(c: &Cochain, v: &[Rational]) -> Vec<Rational> {
    c.eval_vectors(&[v]).expect("dimensions agree")
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn lybe_check(a: &LeibnizAlgebra, r: &RMatrix) -> Result<LybeOutcome> {
    Error::check_dim(a.dim(), r.n())?;
    let n = r.n();
    let mu = semidirect_double(a)?;
    let rhat = r.extended();
    let lie = a.is_lie();
    let mut general = CheckOutcome::pass();
    let mut reduced = CheckOutcome::pass();
    for_each_tuple(n, 2, |t| {
        let q1 = crate::structures::unit(2 * n, n + t[0]);
        let q2 = crate::structures::unit(2 * n, n + t[1]);
        let rq1 = apply(&rhat, &q1);
        let rq2 = apply(&rhat, &q2);
        let br = |x: &[Rational], y: &[Rational]| mu.eval_vectors(&[x, y]).expect("dimensions agree");
        let lhs = br(&rq1, &rq2);
        let t1 = apply(&rhat, &br(&rq1, &q2));
        let t2 = apply(&rhat, &br(&q1, &rq2));
        let d1 = sub(&lhs, &t1);
        let full = sub(&d1, &t2);
        if full.iter().any(|c| !c.is_zero()) {
            general.push(t.to_vec(), DefectValue::Vector(full));
        }
        if lie && d1.iter().any(|c| !c.is_zero()) {
            reduced.push(t.to_vec(), DefectValue::Vector(d1));
        }
    });
    let graph = super::Subspace::graph_of_r(r);
    let mut graph_closed = true;
    for x in graph.basis() {
        for y in graph.basis() {
            if !graph.contains(&mu.eval_vectors(&[x, y])?) {
                graph_closed = false;
            }
        }
    }
    Ok(LybeOutcome {
        general,
        lie_reduced: lie.then_some(reduced),
        graph_closed,
    })
}

/// `{r q^a, q^b} + {q^a, r q^b} = r^{ab} − r^{ba}`; defects are scalar.
pub fn is_anti_triangular(r: &RMatrix) -> CheckOutcome {
    let n = r.n();
    let mut out = CheckOutcome::pass();
    for_each_tuple(n, 2, |t| {
        let d = r.entry(t[0], t[1]) - r.entry(t[1], t[0]);
        if !d.is_zero() {
            out.push(t.to_vec(), DefectValue::Scalar(d));
        }
    });
    out
}

/// `r̂ = {½ r^{ij} p_i p_j, −}` for an anti-triangular `r`.
pub fn r_to_hamiltonian(r: &RMatrix) -> Result<VectorField> {
    if !is_anti_triangular(r).holds() {
        return Err(Error::precondition("r is not anti-triangular (not symmetric)"));
    }
    Ok(VectorField::hamiltonian(&half_quadratic(r.n(), &r.r, false)))
}

/// Both sides of `½{[[L,H],H](l1), l2} = [H l1, H l2] − H[H l1, l2] − H[l1, H l2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HhOutcome {
    /// Pairs where the two sides differ.
    pub identity: CheckOutcome,
    /// Pairs where the LYBE defect is nonzero.
    pub lybe: CheckOutcome,
    /// `[[L, H], H] = 0`.
    pub hh_vanishes: bool,
}

impl HhOutcome {
    /// `H` solves LYBE and `[H, H]_L = 0`.
    pub fn holds(&self) -> bool {
        self.identity.holds() && self.lybe.holds() && self.hh_vanishes
    }
}

fn check_generator(h: &VectorField, allowed: &[(i32, i32)]) -> Result<()> {
    match h.bidegree() {
        Bidegree::Zero => {}
        Bidegree::Homogeneous(a, b) if allowed.contains(&(a, b)) => {}
        other => {
            return Err(Error::precondition(format!(
                "generator has bidegree {other}, expected one of {allowed:?}"
            )))
        }
    }
    if !h.is_hamiltonian() {
        return Err(Error::precondition("generator is not a Hamiltonian field"));
    }
    Ok(())
}

pub fn hh_check(l: &StructureField, h: &VectorField) -> Result<HhOutcome> {
    Error::check_dim(l.n(), h.n())?;
    check_generator(h, &[(1, -1)])?;
    let lf = l.field();
    let hh = lf.commutator(h)?.commutator(h)?;
    let n = l.n();
    let half = rat(1, 2);
    let bracket = |x: &Polynomial, y: &Polynomial| -> Result<Polynomial> { lf.apply(x)?.poisson(y) };
    let mut identity = CheckOutcome::pass();
    let mut lybe = CheckOutcome::pass();
    for a in 0..2 * n {
        for b in 0..2 * n {
            let l1 = Polynomial::var(n, a);
            let l2 = Polynomial::var(n, b);
            let lhs = hh.apply(&l1)?.poisson(&l2)?.scale(&half);
            let hl1 = h.apply(&l1)?;
            let hl2 = h.apply(&l2)?;
            let rhs = &(&bracket(&hl1, &hl2)? - &h.apply(&bracket(&hl1, &l2)?)?) - &h.apply(&bracket(&l1, &hl2)?)?;
            if lhs != rhs {
                identity.push(vec![a, b], DefectValue::Poly(&lhs - &rhs));
            }
            if !rhs.is_zero() {
                lybe.push(vec![a, b], DefectValue::Poly(rhs));
            }
        }
    }
    Ok(HhOutcome {
        identity,
        lybe,
        hh_vanishes: hh.is_zero(),
    })
}

/// `(1/3!)[[[L,H],H],H] = H{LH, H}` read on linear functions:
/// `½{[[[L,H],H],H](l1), l2} = 3 H{L H(l1), H(l2)}`.
pub fn third_order_check(l: &StructureField, h: &VectorField) -> Result<CheckOutcome> {
    check_generator(h, &[(1, -1)])?;
    let lf = l.field();
    let hhh = lf.commutator(h)?.commutator(h)?.commutator(h)?;
    let n = l.n();
    let mut out = CheckOutcome::pass();
    for a in 0..2 * n {
        for b in 0..2 * n {
            let l1 = Polynomial::var(n, a);
            let l2 = Polynomial::var(n, b);
            let lhs = hhh.apply(&l1)?.poisson(&l2)?.scale(&rat(1, 2));
            let rhs = h
                .apply(&lf.apply(&h.apply(&l1)?)?.poisson(&h.apply(&l2)?)?)?
                .scale(&rat(3, 1));
            if lhs != rhs {
                out.push(vec![a, b], DefectValue::Poly(&lhs - &rhs));
            }
        }
    }
    Ok(out)
}

/// `exp(X_H)(L)` together with its nonzero series terms `(1/k!) ad_H^k L`.
#[derive(Clone, Debug)]
pub struct FlowResult {
    pub field: StructureField,
    pub terms: Vec<VectorField>,
}

pub fn flow_transform(l: &StructureField, h: &VectorField, max_order: usize) -> Result<FlowResult> {
    if !l.is_leibniz() {
        return Err(Error::precondition("the flow is applied to Leibniz fields"));
    }
    Error::check_dim(l.n(), h.n())?;
    check_generator(h, &[(1, -1), (-1, 1)])?;
    let terms = flow_series(l.field(), h, max_order)?;
    let mut sum = VectorField::zero(l.n());
    for t in &terms {
        sum = &sum + t;
    }
    Ok(FlowResult {
        field: StructureField::new(sum)?,
        terms,
    })
}

/// The four bidegree components of `exp(X_H)(L^total)` predicted from the
/// components of `L^total`, for `H` of bidegree (1,−1):
///
/// ```text
/// (0,1)   L + [Φ,H]
/// (−1,2)  Φ
/// (1,0)   L* + [L,H] + ½[[Φ,H],H]
/// (2,−1)  Φ* + [L*,H] + ½[[L,H],H] + (1/3!)[[[Φ,H],H],H]
/// ```
pub fn predicted_flow_components(
    d: &super::BidegreeDecomposition,
    h: &VectorField,
) -> Result<super::BidegreeDecomposition> {
    let ad = |x: &VectorField| x.commutator(h);
    let phi_h = ad(&d.phi)?;
    let phi_hh = ad(&phi_h)?;
    let phi_hhh = ad(&phi_hh)?;
    let l_h = ad(&d.l)?;
    let l_hh = ad(&l_h)?;
    let ls_h = ad(&d.lstar)?;
    Ok(super::BidegreeDecomposition {
        l: &d.l + &phi_h,
        phi: d.phi.clone(),
        lstar: &(&d.lstar + &l_h) + &phi_hh.scale(&rat(1, 2)),
        phistar: &(&(&d.phistar + &ls_h) + &l_hh.scale(&rat(1, 2))) + &phi_hhh.scale(&rat(1, 6)),
    })
}

/// Solutions of LYBE among the given candidates, in input order.
pub fn lybe_search<'a>(a: &LeibnizAlgebra, candidates: impl IntoIterator<Item = &'a RMatrix>) -> Result<Vec<RMatrix>> {
    let mut out = Vec::new();
    for r in candidates {
        if lybe_check(a, r)?.holds() {
            out.push(r.clone());
        }
    }
    Ok(out)
}

/// All symmetric `n×n` matrices with entries from `values`, in lexicographic
/// order of their upper triangles.
pub fn symmetric_grid(n: usize, values: &[Rational]) -> Vec<RMatrix> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    if values.is_empty() {
        return out;
    }
    for_each_tuple(values.len(), slots.len(), |choice| {
        let mut m = Matrix::zeros(n, n);
        for (&(i, j), &c) in slots.iter().zip(choice) {
            m[(i, j)] = values[c].clone();
            m[(j, i)] = values[c].clone();
        }
        out.push(RMatrix { r: m });
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::structures::structure_field;

    #[test]
    fn zero_and_symmetric_r() {
        let a = LeibnizAlgebra::heis();
        let r0 = RMatrix::zero(2);
        let out = lybe_check(&a, &r0).unwrap();
        assert!(out.holds() && out.consistent());
        assert!(is_anti_triangular(&r0).holds());
        assert!(r_to_hamiltonian(&r0).unwrap().is_zero());
        let anti = RMatrix::new(Matrix::from_ints(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_eq!(is_anti_triangular(&anti).first().unwrap().tuple, vec![0, 1]);
        assert!(r_to_hamiltonian(&anti).is_err());
    }

    #[test]
    fn one_dimensional_hamiltonian() {
        let r = RMatrix::new(Matrix::from_ints(&[&[1]])).unwrap();
        let h = r_to_hamiltonian(&r).unwrap();
        assert_eq!(h.apply(&Polynomial::q(1, 0)).unwrap(), Polynomial::p(1, 0));
        assert!(h.apply(&Polynomial::p(1, 0)).unwrap().is_zero());
        assert_eq!(h.bidegree().as_pair(), Some((1, -1)));
        assert_eq!(h.linear_matrix().unwrap(), r.extended().to_matrix().unwrap());
    }

    #[test]
    fn hh_identity_on_a_non_solution() {
        let a = LeibnizAlgebra::heis();
        let l = structure_field(&a).unwrap();
        let r = RMatrix::new(Matrix::from_ints(&[&[1, 0], &[0, 0]])).unwrap();
        let h = r_to_hamiltonian(&r).unwrap();
        let out = hh_check(&l, &h).unwrap();
        assert!(out.identity.holds());
        assert_eq!(out.lybe.holds(), lybe_check(&a, &r).unwrap().holds());
        assert_eq!(out.hh_vanishes, out.lybe.holds());
    }

    #[test]
    fn grid_enumeration() {
        let vals = [int(-1), int(0), int(1)];
        let grid = symmetric_grid(2, &vals);
        assert_eq!(grid.len(), 27);
        assert!(grid.iter().all(|r| is_anti_triangular(r).holds()));
    }

    #[test]
    fn killing_and_omni_solutions() {
        let sl2 = LeibnizAlgebra::sl2();
        let r = crate::doubles::killing_r_matrix(&sl2).unwrap();
        let out = lybe_check(&sl2, &r).unwrap();
        assert!(out.holds() && out.consistent());
        assert!(is_anti_triangular(&r).holds());
        let omni = LeibnizAlgebra::omni_lie(2).unwrap();
        let pr = RMatrix::omni_projection(2).unwrap();
        let out = lybe_check(&omni, &pr).unwrap();
        assert!(out.holds() && out.graph_closed && out.lie_reduced.is_none());
        assert!(is_anti_triangular(&pr).holds());
    }

    #[test]
    fn killing_flow_components() {
        let sl2 = LeibnizAlgebra::sl2();
        let l = structure_field(&sl2).unwrap();
        let h = r_to_hamiltonian(&crate::doubles::killing_r_matrix(&sl2).unwrap()).unwrap();
        let flow = flow_transform(&l, &h, 8).unwrap();
        assert!(flow.terms.len() <= 4, "series has {} terms", flow.terms.len());
        let hhhh = (0..4).try_fold(l.field().clone(), |x, _| x.commutator(&h)).unwrap();
        assert!(hhhh.is_zero());
        assert!(flow.field.is_leibniz());
        assert!(third_order_check(&l, &h).unwrap().holds());
        let before = crate::doubles::bidegree_decompose(l.field()).unwrap();
        let after = crate::doubles::bidegree_decompose(flow.field.field()).unwrap();
        assert_eq!(predicted_flow_components(&before, &h).unwrap(), after);
        // a LYBE solution turns L into the double L + [L, H]
        let hh = hh_check(&l, &h).unwrap();
        assert!(hh.holds());
        assert_eq!(flow.field.field(), &(l.field() + &l.field().commutator(&h).unwrap()));
    }
}
