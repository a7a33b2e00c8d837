//! Linear programming over [`LinearSystem`]s.

pub mod simplex;

pub use simplex::{Basis, DualSimplex, LpSolution, LpStatus};

use crate::error::{Error, Result};
use crate::numeric::{Rational, Scalar};
use crate::polyhedra::{LinearInequality, LinearSystem};

/// What a backend can do beyond a cold solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Capabilities {
    pub warm_start: bool,
    pub exact: bool,
}

/// A pluggable LP engine: maximize `c·x` over a system with finite bounds.
pub trait LpBackend {
    type Value: Scalar;

    fn capabilities(&self) -> Capabilities;

    fn solve(
        &self,
        system: &LinearSystem,
        objective: &[Rational],
        extra_rows: &[LinearInequality],
    ) -> Result<LpSolution<Self::Value>>;
}

/// The bundled dense dual simplex, in either float or exact arithmetic.
#[derive(Clone, Copy, Debug, Default)]
pub struct DenseSimplex<T>(std::marker::PhantomData<T>);

impl<T: Scalar> DenseSimplex<T> {
    pub fn new() -> Self {
        DenseSimplex(std::marker::PhantomData)
    }
}

impl<T: Scalar> LpBackend for DenseSimplex<T> {
    type Value = T;

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            warm_start: true,
            exact: T::EXACT,
        }
    }

    fn solve(
        &self,
        system: &LinearSystem,
        objective: &[Rational],
        extra_rows: &[LinearInequality],
    ) -> Result<LpSolution<T>> {
        let mut lp = simplex_for(system, objective)?;
        for r in system.rows.iter().chain(extra_rows) {
            lp.add_row(dense_row(r), T::from_rational(&r.rhs));
        }
        lp.solve()
    }
}

/// A simplex with the system's bounds and objective and no rows yet.
pub fn simplex_for<T: Scalar>(system: &LinearSystem, objective: &[Rational]) -> Result<DualSimplex<T>> {
    let d = system.dim();
    if objective.len() != d {
        return Err(Error::Lp(format!("objective has {} entries, system has {d} variables", objective.len())));
    }
    let mut up = Vec::with_capacity(d);
    for (i, u) in system.upper.iter().enumerate() {
        match u {
            Some(u) => up.push(T::from_rational(u)),
            None => {
                return Err(Error::Lp(format!(
                    "variable {} has no upper bound",
                    system.space.var_name(i)
                )))
            }
        }
    }
    let lo = system.lower.iter().map(T::from_rational).collect();
    let c = objective.iter().map(T::from_rational).collect();
    DualSimplex::new(c, lo, up)
}

pub fn dense_row<T: Scalar>(r: &LinearInequality) -> Vec<T> {
    let mut a = vec![T::zero(); r.space.dim()];
    for (v, c) in &r.coeffs {
        a[*v] = T::from_rational(c);
    }
    a
}

/// Optimal value of the LP relaxation, exact.
pub fn lp_relaxation_value(system: &LinearSystem, objective: &[Rational]) -> Result<Option<Rational>> {
    let sol = DenseSimplex::<Rational>::new().solve(system, objective, &[])?;
    Ok(match sol.status {
        LpStatus::Optimal => Some(sol.objective),
        LpStatus::Infeasible => None,
    })
}
