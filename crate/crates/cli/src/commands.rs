use std::path::Path;

use serde_json::Value;

use leibniz_plane::complex::{is_maurer_cartan, CochainComplex};
use leibniz_plane::doubles::{
    bidegree_decompose, flow_transform, hh_check, is_anti_triangular, killing_form, lybe_check, lybe_search,
    predicted_flow_components, r_to_hamiltonian, semisimple_double, symmetric_grid, third_order_check, RMatrix,
};
use leibniz_plane::io::{self, Input};
use leibniz_plane::nijenhuis::{
    deform, deformation_coefficients, fnc_check, is_complex_structure, nijenhuis_field_check, torsion,
};
use leibniz_plane::structures::{
    check_invariance, check_leibniz, derived_bracket, field_from_bracket, invariance_theorem_check, is_anticyclic,
    is_cohomological, psi_of_degree, semidirect_double, skew_bracket_consistency, structure_field,
    structure_vector_field,
};
use leibniz_plane::{rational, Bidegree, Cochain, Error, LeibnizAlgebra, Polynomial, Rational, StructureField, VectorField};

use crate::report::{Check, Report};

/// Settings shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub max_arity: usize,
    pub max_order: usize,
}

impl Settings {
    fn complex(&self) -> CochainComplex {
        CochainComplex::new(self.max_arity)
    }
}

/// Unreadable or malformed input; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

type Loaded<T> = std::result::Result<T, InputError>;

fn read(path: &Path) -> Loaded<String> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> leibniz_plane::Result<T>) -> Loaded<T> {
    parse(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn subject_of(input: &Input, path: &Path) -> String {
    match input {
        Input::Algebra(a) => a.name.clone(),
        Input::Field(_) => path.file_stem().map_or_else(|| "field".into(), |s| s.to_string_lossy().into_owned()),
    }
}

fn field_text(x: &VectorField) -> Value {
    Value::String(x.to_string())
}

fn mc_check(name: &str, complex: &CochainComplex, mu: &Cochain) -> Check {
    match complex.graded_bracket(mu, mu) {
        Ok(sq) => Check::vanishing(name, &sq),
        Err(e) => Check::error(name, &e),
    }
}

fn push_invariance(report: &mut Report, mu: &Cochain) {
    match check_invariance(mu) {
        Ok(inv) => {
            report.push(Check::outcome("invariance_left", &inv.left));
            report.push(Check::outcome("invariance_right", &inv.right));
        }
        Err(e) => report.push(Check::error("invariance", &e)),
    }
}

pub fn check(path: &Path, s: Settings) -> Loaded<Report> {
    let a = load(path, io::parse_algebra)?;
    let mut report = Report::new("check", a.name.clone());
    report.put("dim", a.dim());
    report.put("lie", a.is_lie());
    let identity = check_leibniz(&a);
    report.push(Check::outcome("leibniz_identity", &identity));
    let mc = mc_check("maurer_cartan", &s.complex(), &a.to_cochain());
    report.push(Check::flag("maurer_cartan_agrees", mc.pass == identity.holds()));
    report.push(mc);
    match semidirect_double(&a) {
        Ok(mu) => {
            report.push(mc_check("double_maurer_cartan", &s.complex(), &mu));
            push_invariance(&mut report, &mu);
        }
        Err(e) => report.push(Check::error("semidirect_double", &e)),
    }
    Ok(report)
}

pub enum FieldMode {
    Check,
    Derive(usize, usize),
    Decompose,
}

pub fn field(path: &Path, mode: FieldMode, _s: Settings) -> Loaded<Report> {
    let input = load(path, io::parse_input)?;
    let subject = subject_of(&input, path);
    let x = match input {
        Input::Algebra(a) => structure_vector_field(&a),
        Input::Field(x) => x,
    };
    let mut report = Report::new("field", subject);
    report.put("n", x.n());
    match mode {
        FieldMode::Check => field_check(&mut report, &x),
        FieldMode::Derive(i, j) => field_derive(&mut report, &x, i, j),
        FieldMode::Decompose => field_decompose(&mut report, &x),
    }
    Ok(report)
}

fn field_check(report: &mut Report, x: &VectorField) {
    let l = match StructureField::new(x.clone()) {
        Ok(l) => l,
        Err(e) => return report.push(Check::error("polynomial_degree_one", &e)),
    };
    match is_cohomological(x) {
        Ok(co) => {
            report.push(Check::outcome("cohomological", &co.field));
            report.push(Check::flag("cohomological_routes_agree", co.routes_agree()));
        }
        Err(e) => report.push(Check::error("cohomological", &e)),
    }
    match is_anticyclic(x) {
        Ok(ac) => report.push(Check::outcome("anticyclic", &ac)),
        Err(e) => report.push(Check::error("anticyclic", &e)),
    }
    report.put("leibniz_field", l.is_leibniz());
    if l.is_leibniz() {
        match invariance_theorem_check(&l) {
            Ok(inv) => {
                report.push(Check::outcome("invariance_left", &inv.left));
                report.push(Check::outcome("invariance_right", &inv.right));
            }
            Err(e) => report.push(Check::error("invariance", &e)),
        }
        match skew_bracket_consistency(&l) {
            Ok(c) => report.push(Check::outcome("lambda_theta_consistency", &c)),
            Err(e) => report.push(Check::error("lambda_theta_consistency", &e)),
        }
    }
}

fn field_derive(report: &mut Report, x: &VectorField, i: usize, j: usize) {
    let n = x.n();
    let dim = 2 * n;
    if !(1..=dim).contains(&i) || !(1..=dim).contains(&j) {
        let e = Error::IndexOutOfRange {
            index: i.max(j),
            limit: dim,
        };
        return report.push(Check::error("derived_bracket", &e));
    }
    let result = StructureField::new(x.clone()).and_then(|l| {
        derived_bracket(&l, &Polynomial::var(n, i - 1), &Polynomial::var(n, j - 1))
    });
    match result {
        Ok(b) => {
            report.put("left", Polynomial::var_name(n, i - 1));
            report.put("right", Polynomial::var_name(n, j - 1));
            report.put("bracket", b.to_string());
            report.put("bracket_terms", io::polynomial_to_json(&b));
            report.push(Check::flag("derived_bracket", true));
        }
        Err(e) => report.push(Check::error("derived_bracket", &e)),
    }
}

fn partially_symmetric(v: &[Rational], n: usize) -> bool {
    let at = |i: usize, j: usize, k: usize| &v[(i * n + j) * n + k];
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| at(i, j, k) == at(j, i, k))))
}

fn field_decompose(report: &mut Report, x: &VectorField) {
    let d = match bidegree_decompose(x) {
        Ok(d) => d,
        Err(e) => return report.push(Check::error("bidegree_decompose", &e)),
    };
    report.push(Check::flag("sum_equals_input", &d.sum() == x));
    match d.coordinate_forms() {
        Ok(forms) => {
            report.push(Check::flag("coordinate_forms_reassemble", forms.reassemble() == d));
            report.push(Check::flag("phi_partially_symmetric", partially_symmetric(&forms.phi, forms.n)));
            report.push(Check::flag("phistar_partially_symmetric", partially_symmetric(&forms.phistar, forms.n)));
        }
        Err(e) => report.push(Check::error("coordinate_forms", &e)),
    }
    report.put("L", field_text(&d.l));
    report.put("Phi", field_text(&d.phi));
    report.put("Lstar", field_text(&d.lstar));
    report.put("Phistar", field_text(&d.phistar));
}

pub fn lybe(
    alg: &Path,
    r: Option<&Path>,
    search: Option<&str>,
    flow: bool,
    s: Settings,
) -> Loaded<Report> {
    let a = load(alg, io::parse_algebra)?;
    let r = r.map(|p| load(p, io::parse_rmatrix)).transpose()?;
    let grid = search.map(parse_values).transpose()?;
    let mut report = Report::new("lybe", a.name.clone());
    if let Some(r) = &r {
        lybe_single(&mut report, &a, r, flow, s);
    }
    if let Some(values) = grid {
        let candidates = symmetric_grid(a.dim(), &values);
        report.put("candidates", candidates.len());
        match lybe_search(&a, &candidates) {
            Ok(found) => {
                report.put("solution_count", found.len());
                report.put("solutions", Value::Array(found.iter().map(io::rmatrix_to_json).collect()));
                report.push(Check::flag("search", true));
            }
            Err(e) => report.push(Check::error("search", &e)),
        }
    }
    Ok(report)
}

fn parse_values(s: &str) -> Loaded<Vec<Rational>> {
    s.split(',')
        .map(|v| rational::parse(v).map_err(|e| InputError(format!("--search: {e}"))))
        .collect()
}

fn lybe_single(report: &mut Report, a: &LeibnizAlgebra, r: &RMatrix, flow: bool, s: Settings) {
    let out = match lybe_check(a, r) {
        Ok(out) => out,
        Err(e) => return report.push(Check::error("lybe", &e)),
    };
    report.push(Check::outcome("lybe", &out.general));
    if let Some(lie) = &out.lie_reduced {
        report.push(Check::outcome("lybe_lie_form", lie));
    }
    report.push(Check::flag("lybe_forms_consistent", out.consistent()));
    report.push(Check::flag("graph_closed", out.graph_closed));
    let anti = is_anti_triangular(r);
    report.push(Check::outcome("anti_triangular", &anti));
    if !anti.holds() {
        return;
    }
    let l = match structure_field(a) {
        Ok(l) => l,
        Err(e) => return report.push(Check::error("structure_field", &e)),
    };
    let h = match r_to_hamiltonian(r) {
        Ok(h) => h,
        Err(e) => return report.push(Check::error("r_to_hamiltonian", &e)),
    };
    match hh_check(&l, &h) {
        Ok(hh) => {
            report.push(Check::outcome("hh_identity", &hh.identity));
            report.push(Check::flag("hh_vanishes_iff_lybe", hh.hh_vanishes == hh.lybe.holds()));
        }
        Err(e) => report.push(Check::error("hh_identity", &e)),
    }
    if flow {
        push_flow(report, &l, &h, s);
    }
}

fn push_flow(report: &mut Report, l: &StructureField, h: &VectorField, s: Settings) {
    let res = match flow_transform(l, h, s.max_order) {
        Ok(res) => res,
        Err(e) => return report.push(Check::error("flow_terminates", &e)),
    };
    report.push(Check::flag("flow_terminates", true));
    report.put("flow_order", res.terms.len().saturating_sub(1));
    report.put("flow_field", field_text(res.field.field()));
    report.push(Check::flag("flow_is_leibniz", res.field.is_leibniz()));
    // ψ commutes with the flow: exp(ad ψ_H) ψ_L = ψ(exp(X_H) L)
    let cochain_side = psi_of_degree(l.field(), 1)
        .and_then(|pl| Ok((pl, psi_of_degree(h, 0)?)))
        .and_then(|(pl, ph)| s.complex().exp_ad(&pl, &ph, s.max_order))
        .and_then(|lhs| Ok(lhs == psi_of_degree(res.field.field(), 1)?));
    match cochain_side {
        Ok(ok) => report.push(Check::flag("flow_commutes_with_psi", ok)),
        Err(e) => report.push(Check::error("flow_commutes_with_psi", &e)),
    }
    if h.bidegree() == Bidegree::Homogeneous(1, -1) {
        let fourth = (0..4).try_fold(l.field().clone(), |x, _| x.commutator(h));
        report.push(Check::flag("order_four_vanishes", fourth.is_ok_and(|x| x.is_zero())));
        match third_order_check(l, h) {
            Ok(c) => report.push(Check::outcome("third_order_identity", &c)),
            Err(e) => report.push(Check::error("third_order_identity", &e)),
        }
        let matches = bidegree_decompose(l.field())
            .and_then(|before| predicted_flow_components(&before, h))
            .and_then(|pred| Ok(pred == bidegree_decompose(res.field.field())?));
        match matches {
            Ok(ok) => report.push(Check::flag("flow_components", ok)),
            Err(e) => report.push(Check::error("flow_components", &e)),
        }
    }
}

/// The bracket under study and, where available, its structure field.
fn bracket_of(input: &Input, killing: bool) -> leibniz_plane::Result<(Cochain, StructureField)> {
    match input {
        Input::Algebra(a) if killing => {
            let mu = semisimple_double(a, &killing_form(a, true)?)?;
            let l = field_from_bracket(&mu)?;
            Ok((mu, l))
        }
        Input::Algebra(a) => {
            let l = structure_field(a)?;
            Ok((semidirect_double(a)?, l))
        }
        Input::Field(x) => {
            let l = StructureField::new(x.clone())?;
            Ok((psi_of_degree(x, 1)?, l))
        }
    }
}

pub fn nijenhuis(input: &Path, op: &Path, t: &Rational, killing: bool, _s: Settings) -> Loaded<Report> {
    let parsed = load(input, io::parse_input)?;
    let n_op = load(op, io::parse_operator)?;
    let mut report = Report::new("nijenhuis", subject_of(&parsed, input));
    let (mu, l) = match bracket_of(&parsed, killing) {
        Ok(x) => x,
        Err(e) => {
            report.push(Check::error("bracket", &e));
            return Ok(report);
        }
    };
    if l.n() != n_op.n() {
        let e = Error::DimensionMismatch {
            expected: l.n(),
            found: n_op.n(),
        };
        report.push(Check::error("operator", &e));
        return Ok(report);
    }
    if let Ok((_, defect)) = fnc_check(&mu, &n_op) {
        report.push(Check::vanishing("fnc_identity", &defect));
    }
    let tor = torsion(&mu, &n_op).expect("dimensions checked");
    report.push(Check::vanishing("nijenhuis", &tor));
    let cx = is_complex_structure(&mu, &n_op).expect("dimensions checked");
    report.push(Check::flag("square_is_minus_one", cx.square_is_minus_one));
    report.push(Check::flag("complex_structure", cx.holds()));
    if cx.holds() {
        report.push(Check::flag("double_bracket_is_minus_mu", cx.double_bracket_is_minus_mu));
    }
    match deform(&mu, &n_op, t) {
        Ok(mu_t) => {
            report.push(Check::flag("deformation_is_leibniz", is_maurer_cartan(&mu_t).is_ok_and(|r| r.0)));
            if let Ok(coeffs) = deformation_coefficients(&mu, &n_op) {
                for (k, c) in coeffs.iter().enumerate() {
                    report.push(Check::vanishing(&format!("deformation_t{k}"), c));
                }
            }
        }
        Err(e) => report.push(Check::error("deformation_is_leibniz", &e)),
    }
    report.put("hamiltonian", n_op.as_field().is_hamiltonian());
    if tor.is_zero() && n_op.as_field().is_hamiltonian() {
        match nijenhuis_field_check(&l, &n_op) {
            Ok(ln) => {
                report.push(Check::flag("field_bracket_is_leibniz", ln.is_leibniz()));
                if cx.holds() {
                    let lnn = ln.field().commutator(&n_op.as_field());
                    let minus_l = l.field().scale(&rational::int(-1));
                    report.push(Check::flag("field_double_bracket_is_minus_l", lnn.is_ok_and(|x| x == minus_l)));
                }
            }
            Err(e) => report.push(Check::error("field_bracket_is_leibniz", &e)),
        }
    }
    Ok(report)
}

pub fn double(path: &Path, killing: bool, s: Settings) -> Loaded<Report> {
    let a = load(path, io::parse_algebra)?;
    let mut report = Report::new("double", a.name.clone());
    let mu = if killing {
        match killing_form(&a, true) {
            Ok(k) => {
                report.put("killing_form", io::matrix_to_json(&k));
                semisimple_double(&a, &k)
            }
            Err(e) => Err(e),
        }
    } else {
        semidirect_double(&a)
    };
    let mu = match mu {
        Ok(mu) => mu,
        Err(e) => {
            report.push(Check::error("double", &e));
            return Ok(report);
        }
    };
    report.put("dim", mu.dim());
    report.push(mc_check("maurer_cartan", &s.complex(), &mu));
    push_invariance(&mut report, &mu);
    match field_from_bracket(&mu) {
        Ok(l) => {
            report.push(Check::flag("field_is_leibniz", l.is_leibniz()));
            report.push(Check::flag("psi_round_trip", psi_of_degree(l.field(), 1).is_ok_and(|c| c == mu)));
            report.put("field", field_text(l.field()));
        }
        Err(e) => report.push(Check::error("field_from_bracket", &e)),
    }
    Ok(report)
}

pub enum Generator<'a> {
    R(&'a Path),
    Field(&'a Path),
}

pub fn flow(input: &Path, generator: Generator<'_>, s: Settings) -> Loaded<Report> {
    let parsed = load(input, io::parse_input)?;
    let h = match generator {
        Generator::R(p) => {
            let r = load(p, io::parse_rmatrix)?;
            r_to_hamiltonian(&r).map_err(|e| InputError(format!("{}: {e}", p.display())))?
        }
        Generator::Field(p) => load(p, io::parse_field)?,
    };
    let mut report = Report::new("flow", subject_of(&parsed, input));
    let l = match &parsed {
        Input::Algebra(a) => structure_field(a),
        Input::Field(x) => StructureField::new(x.clone()),
    };
    match l {
        Ok(l) => push_flow(&mut report, &l, &h, s),
        Err(e) => report.push(Check::error("structure_field", &e)),
    }
    Ok(report)
}
