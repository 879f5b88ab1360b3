//! Outcomes of identity checks, with concrete witnesses for every failure.

use std::fmt;

use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// The nonzero value an identity produced on a witness tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefectValue {
    Scalar(Rational),
    /// Coefficients in a basis of `W`.
    Vector(Vec<Rational>),
    Poly(Polynomial),
}

impl fmt::Display for DefectValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefectValue::Scalar(r) => write!(f, "{}", rational::format(r)),
            DefectValue::Vector(v) => {
                let parts: Vec<String> = v.iter().map(rational::format).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            DefectValue::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// A failing basis tuple (0-based indices) and the defect found there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub tuple: Vec<usize>,
    pub value: DefectValue,
}

impl Defect {
    pub fn new(tuple: Vec<usize>, value: DefectValue) -> Self {
        Defect { tuple, value }
    }

    /// Indices shifted to the 1-based convention used in reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.tuple.iter().map(|i| i + 1).collect()
    }
}

/// Result of checking an identity over all basis tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub failures: Vec<Defect>,
}

impl CheckOutcome {
    pub fn pass() -> Self {
        CheckOutcome::default()
    }

    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first(&self) -> Option<&Defect> {
        self.failures.first()
    }

    pub(crate) fn push(&mut self, tuple: Vec<usize>, value: DefectValue) {
        self.failures.push(Defect::new(tuple, value));
    }
}

/// Calls `f` on every tuple in `0..dim` of the given length, in lexicographic
/// order.
pub(crate) fn for_each_tuple(dim: usize, len: usize, mut f: impl FnMut(&[usize])) {
    if len == 0 {
        f(&[]);
        return;
    }
    if dim == 0 {
        return;
    }
    let mut idx = vec![0usize; len];
    loop {
        f(&idx);
        let mut k = len;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < dim {
                break;
            }
            idx[k] = 0;
        }
    }
}
