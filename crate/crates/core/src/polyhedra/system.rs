use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{precondition, Result};
use crate::numeric::{integer_row, rat, Rational};

/// Variable space of a system: `x` over V, optionally followed by `y` over E.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Natural { n: usize },
    Extended { n: usize, m: usize },
}

impl Space {
    pub fn dim(&self) -> usize {
        match *self {
            Space::Natural { n } => n,
            Space::Extended { n, m } => n + m,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Space::Natural { n } | Space::Extended { n, .. } => n,
        }
    }

    pub fn is_extended(&self) -> bool {
        matches!(self, Space::Extended { .. })
    }

    pub fn x(&self, v: usize) -> usize {
        v
    }

    pub fn y(&self, e: usize) -> usize {
        match *self {
            Space::Extended { n, m } if e < m => n + e,
            _ => panic!("edge variable {e} outside the space {self:?}"),
        }
    }

    pub fn var_name(&self, i: usize) -> String {
        let n = self.n();
        if i < n {
            format!("x{i}")
        } else {
            format!("y{}", i - n)
        }
    }
}

/// Sparse `a·x ≤ rhs` with rational data and a provenance label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInequality {
    pub space: Space,
    /// Sorted by variable, no zero entries.
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
    pub label: String,
}

impl LinearInequality {
    pub fn new(
        space: Space,
        terms: impl IntoIterator<Item = (usize, Rational)>,
        rhs: Rational,
        label: impl Into<String>,
    ) -> Self {
        let mut coeffs: Vec<(usize, Rational)> = Vec::new();
        let mut raw: Vec<(usize, Rational)> = terms.into_iter().collect();
        raw.sort_by_key(|(v, _)| *v);
        for (v, c) in raw {
            assert!(v < space.dim(), "variable {v} outside space {space:?}");
            match coeffs.last_mut() {
                Some((last, acc)) if *last == v => *acc += c,
                _ => coeffs.push((v, c)),
            }
        }
        coeffs.retain(|(_, c)| !c.is_zero());
        LinearInequality {
            space,
            coeffs,
            rhs,
            label: label.into(),
        }
    }

    /// Convenience constructor from integer data.
    pub fn from_ints(
        space: Space,
        terms: impl IntoIterator<Item = (usize, i64)>,
        rhs: i64,
        label: impl Into<String>,
    ) -> Self {
        Self::new(space, terms.into_iter().map(|(v, c)| (v, rat(c))), rat(rhs), label)
    }

    pub fn coeff(&self, var: usize) -> Rational {
        self.coeffs
            .binary_search_by_key(&var, |(v, _)| *v)
            .map(|i| self.coeffs[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn dense(&self) -> Vec<Rational> {
        let mut a = vec![Rational::zero(); self.space.dim()];
        for (v, c) in &self.coeffs {
            a[*v] = c.clone();
        }
        a
    }

    /// Variables with a non-zero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().map(|(v, _)| *v).collect()
    }

    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(v, c)| c * &point[*v]).sum()
    }

    pub fn lhs_scalar<T: crate::numeric::Scalar>(&self, point: &[T]) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, (v, c)| {
            acc + T::from_rational(c) * point[*v].clone()
        })
    }

    /// `a·x − rhs`; positive means violated.
    pub fn violation(&self, point: &[Rational]) -> Rational {
        self.lhs(point) - &self.rhs
    }

    pub fn violation_scalar<T: crate::numeric::Scalar>(&self, point: &[T]) -> T {
        self.lhs_scalar(point) - T::from_rational(&self.rhs)
    }

    pub fn is_satisfied(&self, point: &[Rational]) -> bool {
        !self.violation(point).is_positive()
    }

    pub fn is_tight(&self, point: &[Rational]) -> bool {
        self.violation(point).is_zero()
    }

    /// Primitive integer multiple `(a, b)` of the row.
    pub fn integer_form(&self) -> Result<(Vec<i128>, i128)> {
        let mut row = self.dense();
        row.push(self.rhs.clone());
        let mut ints = integer_row(&row)?;
        let b = ints.pop().expect("rhs present");
        Ok((ints, b))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.label)?;
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (v, c)) in self.coeffs.iter().enumerate() {
            let name = self.space.var_name(*v);
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag} {name}")?;
            }
        }
        write!(f, " <= {}", self.rhs)
    }
}

/// Rows plus per-variable bounds and integrality flags. A missing upper
/// bound means `+∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub space: Space,
    pub rows: Vec<LinearInequality>,
    pub lower: Vec<Rational>,
    pub upper: Vec<Option<Rational>>,
    pub integer: Vec<bool>,
}

impl LinearSystem {
    /// Empty system with `0 ≤ x ≤ 1` on every variable, all integer.
    pub fn unit_box(space: Space) -> Self {
        let d = space.dim();
        LinearSystem {
            space,
            rows: Vec::new(),
            lower: vec![Rational::zero(); d],
            upper: vec![Some(Rational::one()); d],
            integer: vec![true; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn push(&mut self, row: LinearInequality) -> Result<()> {
        if row.space != self.space {
            return precondition(format!("row {} lives in a different space", row.label));
        }
        self.rows.push(row);
        Ok(())
    }

    /// The structural rows followed by the bounds written as rows.
    pub fn rows_with_bounds(&self) -> Vec<LinearInequality> {
        let mut out = self.rows.clone();
        for i in 0..self.dim() {
            let name = self.space.var_name(i);
            out.push(LinearInequality::new(
                self.space,
                [(i, -Rational::one())],
                -self.lower[i].clone(),
                format!("lb_{name}"),
            ));
            if let Some(u) = &self.upper[i] {
                out.push(LinearInequality::new(
                    self.space,
                    [(i, Rational::one())],
                    u.clone(),
                    format!("ub_{name}"),
                ));
            }
        }
        out
    }

    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        point.len() == self.dim()
            && (0..self.dim()).all(|i| {
                point[i] >= self.lower[i] && self.upper[i].as_ref().is_none_or(|u| &point[i] <= u)
            })
            && self.rows.iter().all(|r| r.is_satisfied(point))
    }

    /// Same rows, sorted by label, for order-insensitive comparisons.
    pub fn sorted_rows(&self) -> Vec<LinearInequality> {
        let mut rows = self.rows.clone();
        rows.sort_by(|a, b| a.label.cmp(&b.label).then(a.coeffs.cmp(&b.coeffs)));
        rows
    }
}

/// Formats `{1,5}`-style index sets for labels.
pub(crate) fn set_label(items: &[usize]) -> String {
    let inner: Vec<String> = items.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
