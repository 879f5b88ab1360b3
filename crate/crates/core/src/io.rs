//! JSON forms of the basic objects. Rationals are written as `"a/b"`
//! strings; on input plain integers are accepted too. Algebra indices are
//! 1-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::Cochain;
use crate::doubles::{RMatrix, Subspace};
use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::linalg::Matrix;
use crate::nijenhuis::Operator1;
use crate::poly::{Monomial, Polynomial};
use crate::rational::{self, Rational};
use crate::structures::LeibnizAlgebra;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RatText {
    Text(String),
    Int(i64),
}

impl RatText {
    fn value(&self) -> Result<Rational> {
        match self {
            RatText::Text(s) => rational::parse(s),
            RatText::Int(i) => Ok(rational::int(*i)),
        }
    }

    fn of(r: &Rational) -> Self {
        RatText::Text(rational::format(r))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    coeff: RatText,
    exp: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldJson {
    n: usize,
    dp: Vec<Vec<TermJson>>,
    dq: Vec<Vec<TermJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    i: usize,
    j: usize,
    out: BTreeMap<String, RatText>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    name: String,
    dim: usize,
    #[serde(default)]
    bracket: Vec<EntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RMatrixJson {
    n: usize,
    r: Vec<Vec<RatText>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorJson {
    n: usize,
    matrix: Vec<Vec<RatText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<Vec<TermJson>>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn from_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(parse_err)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("plain data serializes")
}

fn poly_from(n: usize, terms: &[TermJson]) -> Result<Polynomial> {
    let terms = terms
        .iter()
        .map(|t| {
            if t.exp.len() != 2 * n {
                return Err(Error::Parse(format!(
                    "exponent vector has length {}, expected {}",
                    t.exp.len(),
                    2 * n
                )));
            }
            Ok((Monomial::from_exponents(t.exp.clone()), t.coeff.value()?))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(n, terms)
}

fn poly_to(p: &Polynomial) -> Vec<TermJson> {
    p.terms()
        .map(|(m, c)| TermJson {
            coeff: RatText::of(c),
            exp: m.exponents().to_vec(),
        })
        .collect()
}

fn matrix_from(rows: &[Vec<RatText>], size: usize, what: &str) -> Result<Matrix> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(Error::Parse(format!("{what} must be a {size}×{size} matrix")));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(RatText::value).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

fn matrix_to(m: &Matrix) -> Vec<Vec<RatText>> {
    m.to_rows().iter().map(|r| r.iter().map(RatText::of).collect()).collect()
}

pub fn parse_polynomial(n: usize, s: &str) -> Result<Polynomial> {
    let terms: Vec<TermJson> = from_str(s)?;
    poly_from(n, &terms)
}

pub fn polynomial_to_json(p: &Polynomial) -> Value {
    to_value(&poly_to(p))
}

pub fn parse_field(s: &str) -> Result<VectorField> {
    field_from(from_str(s)?)
}

fn field_from(raw: FieldJson) -> Result<VectorField> {
    let n = raw.n;
    if raw.dp.len() != n || raw.dq.len() != n {
        return Err(Error::Parse(format!("a field on n = {n} needs {n} dp and {n} dq components")));
    }
    let comps = raw
        .dp
        .iter()
        .chain(&raw.dq)
        .map(|t| poly_from(n, t))
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(n, comps)
}

pub fn field_to_json(x: &VectorField) -> Value {
    let n = x.n();
    let comps: Vec<Vec<TermJson>> = x.components().iter().map(poly_to).collect();
    let (dp, dq) = comps.split_at(n);
    to_value(&FieldJson {
        n,
        dp: dp.to_vec(),
        dq: dq.to_vec(),
    })
}

pub fn parse_algebra(s: &str) -> Result<LeibnizAlgebra> {
    algebra_from(from_str(s)?)
}

fn algebra_from(raw: AlgebraJson) -> Result<LeibnizAlgebra> {
    let d = raw.dim;
    let idx = |i: usize| -> Result<usize> {
        if i == 0 || i > d {
            Err(Error::Parse(format!("basis index {i} out of range 1..={d}")))
        } else {
            Ok(i - 1)
        }
    };
    let mut a = LeibnizAlgebra::new(raw.name, d);
    for e in &raw.bracket {
        let (i, j) = (idx(e.i)?, idx(e.j)?);
        for (k, c) in &e.out {
            let k = idx(k.parse().map_err(|_| Error::Parse(format!("bad output index {k:?}")))?)?;
            let c = a.constant(i, j, k) + &c.value()?;
            a.set_constant(i, j, k, c)?;
        }
    }
    Ok(a)
}

pub fn algebra_to_json(a: &LeibnizAlgebra) -> Value {
    let d = a.dim();
    let mut bracket = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let out: BTreeMap<String, RatText> = a
                .bracket_basis(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| ((k + 1).to_string(), RatText::of(c)))
                .collect();
            if !out.is_empty() {
                bracket.push(EntryJson { i: i + 1, j: j + 1, out });
            }
        }
    }
    to_value(&AlgebraJson {
        name: a.name.clone(),
        dim: d,
        bracket,
    })
}

pub fn parse_rmatrix(s: &str) -> Result<RMatrix> {
    let raw: RMatrixJson = from_str(s)?;
    RMatrix::new(matrix_from(&raw.r, raw.n, "r")?)
}

pub fn rmatrix_to_json(r: &RMatrix) -> Value {
    to_value(&RMatrixJson {
        n: r.n(),
        r: matrix_to(r.matrix()),
    })
}

pub fn parse_operator(s: &str) -> Result<Operator1> {
    let raw: OperatorJson = from_str(s)?;
    let m = matrix_from(&raw.matrix, 2 * raw.n, "matrix")?;
    match &raw.h {
        Some(h) => Operator1::with_generator(&m, &poly_from(raw.n, h)?),
        None => Operator1::from_matrix(&m),
    }
}

pub fn operator_to_json(op: &Operator1) -> Value {
    to_value(&OperatorJson {
        n: op.n(),
        matrix: matrix_to(&op.matrix()),
        h: op.generator().map(poly_to),
    })
}

pub fn parse_subspace(s: &str) -> Result<Subspace> {
    let raw: Vec<Vec<RatText>> = from_str(s)?;
    let len = raw.first().map_or(0, Vec::len);
    if !len.is_multiple_of(2) || raw.iter().any(|v| v.len() != len) {
        return Err(Error::Parse("subspace vectors must share an even length".into()));
    }
    let basis = raw
        .iter()
        .map(|v| v.iter().map(RatText::value).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Subspace::new(len / 2, basis)
}

pub fn subspace_to_json(d: &Subspace) -> Value {
    let rows: Vec<Vec<RatText>> = d.basis().iter().map(|v| v.iter().map(RatText::of).collect()).collect();
    to_value(&rows)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    to_value(&matrix_to(m))
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(rational::format(c))).collect())
}

/// Nested arrays `c[i_1]…[i_m][k]`.
pub fn cochain_to_json(c: &Cochain) -> Value {
    fn nest(c: &Cochain, prefix: &mut Vec<usize>) -> Value {
        if prefix.len() == c.arity() {
            return vector_to_json(c.eval(prefix));
        }
        Value::Array(
            (0..c.dim())
                .map(|i| {
                    prefix.push(i);
                    let v = nest(c, prefix);
                    prefix.pop();
                    v
                })
                .collect(),
        )
    }
    nest(c, &mut Vec::new())
}

/// A file holding either an algebra or a structure field.
#[derive(Clone, Debug)]
pub enum Input {
    Algebra(LeibnizAlgebra),
    Field(VectorField),
}

pub fn parse_input(s: &str) -> Result<Input> {
    let v: Value = from_str(s)?;
    let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if obj.contains_key("dp") || obj.contains_key("dq") {
        Ok(Input::Field(field_from(serde_json::from_value(v).map_err(parse_err)?)?))
    } else if obj.contains_key("dim") {
        Ok(Input::Algebra(algebra_from(serde_json::from_value(v).map_err(parse_err)?)?))
    } else {
        Err(Error::Parse("neither an algebra nor a vector field".into()))
    }
}
