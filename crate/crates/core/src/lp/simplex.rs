//! Dense-tableau dual simplex for `max c·x  s.t.  A x ≤ b,  l ≤ x ≤ u`
//! with finite bounds on every structural variable.
//!
//! Each row gets a slack `s ≥ 0`. Starting from the slack basis with every
//! structural at the bound favoured by its cost sign makes the start dual
//! feasible, so only dual iterations are ever needed, including after rows
//! are appended or bounds are tightened.

use crate::error::{Error, Result};
use crate::numeric::Scalar;

const DEGENERATE_SWITCH: usize = 50;
const REFACTOR_EVERY: usize = 64;
const ITERATION_LIMIT: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub objective: T,
    pub x: Vec<T>,
    pub iterations: usize,
}

/// Basis snapshot for warm starts: basic variable per row and the
/// at-upper flags of all variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub basic: Vec<usize>,
    pub at_upper: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct DualSimplex<T: Scalar> {
    n: usize,
    a: Vec<Vec<T>>,
    b: Vec<T>,
    c: Vec<T>,
    lo: Vec<T>,
    up: Vec<T>,
    tab: Vec<Vec<T>>,
    rhs: Vec<T>,
    d: Vec<T>,
    basic: Vec<usize>,
    row_of: Vec<Option<usize>>,
    at_upper: Vec<bool>,
    pivots_since_refactor: usize,
}

impl<T: Scalar> DualSimplex<T> {
    pub fn new(c: Vec<T>, lo: Vec<T>, up: Vec<T>) -> Result<Self> {
        let n = c.len();
        if lo.len() != n || up.len() != n {
            return Err(Error::Lp("bound vectors differ in length from the objective".into()));
        }
        let at_upper = (0..n).map(|j| c[j].is_pos()).collect();
        Ok(DualSimplex {
            n,
            a: Vec::new(),
            b: Vec::new(),
            d: c.clone(),
            c,
            lo,
            up,
            tab: Vec::new(),
            rhs: Vec::new(),
            basic: Vec::new(),
            row_of: vec![None; n],
            at_upper,
            pivots_since_refactor: 0,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_rows(&self) -> usize {
        self.a.len()
    }

    fn width(&self) -> usize {
        self.n + self.a.len()
    }

    pub fn bounds(&self, j: usize) -> (T, T) {
        (self.lo[j].clone(), self.up[j].clone())
    }

    pub fn set_bounds(&mut self, j: usize, lo: T, up: T) {
        self.lo[j] = lo;
        self.up[j] = up;
    }

    /// Appends `a·x ≤ b`; its slack enters the basis.
    pub fn add_row(&mut self, a: Vec<T>, b: T) {
        assert_eq!(a.len(), self.n, "row width");
        let m = self.a.len();
        for row in &mut self.tab {
            row.push(T::zero());
        }
        let mut row: Vec<T> = a.clone();
        row.extend((0..m).map(|_| T::zero()));
        row.push(T::one());
        let mut r = b.clone();
        for i in 0..m {
            let bv = self.basic[i];
            if bv < self.n && !a[bv].is_zero_tol() {
                let f = a[bv].clone();
                for (x, t) in row.iter_mut().zip(&self.tab[i]) {
                    if !t.is_zero_tol() {
                        *x = x.clone() - f.clone() * t.clone();
                    }
                }
                r = r - f * self.rhs[i].clone();
            }
        }
        self.tab.push(row);
        self.rhs.push(r);
        self.a.push(a);
        self.b.push(b);
        self.d.push(T::zero());
        self.basic.push(self.n + m);
        self.row_of.push(Some(m));
        self.at_upper.push(false);
    }

    pub fn basis(&self) -> Basis {
        Basis {
            basic: self.basic.clone(),
            at_upper: self.at_upper.clone(),
        }
    }

    /// Installs a basis recorded earlier, possibly with fewer rows (the
    /// slacks of later rows stay basic). Falls back to the slack basis when
    /// the recorded one is singular or not dual feasible.
    pub fn load_basis(&mut self, basis: &Basis) {
        let m = self.a.len();
        let mut basic = basis.basic.clone();
        if basic.len() > m {
            return self.reset_to_slack_basis();
        }
        basic.extend(self.n + basic.len()..self.n + m);
        let mut at_upper = basis.at_upper.clone();
        at_upper.resize(self.width(), false);
        let old = (self.basic.clone(), self.at_upper.clone());
        self.basic = basic;
        self.at_upper = at_upper;
        if !self.refactor() || !self.fix_dual_statuses() {
            self.basic = old.0;
            self.at_upper = old.1;
            self.reset_to_slack_basis();
        }
    }

    pub fn reset_to_slack_basis(&mut self) {
        let m = self.a.len();
        self.basic = (self.n..self.n + m).collect();
        self.at_upper = (0..self.width()).map(|j| j < self.n && self.c[j].is_pos()).collect();
        let ok = self.refactor();
        debug_assert!(ok);
    }

    /// Nonbasic statuses consistent with the reduced-cost signs; false if a
    /// nonbasic slack would need to sit at its (infinite) upper bound.
    fn fix_dual_statuses(&mut self) -> bool {
        for j in 0..self.width() {
            if self.row_of[j].is_some() {
                continue;
            }
            if self.d[j].is_pos() {
                if j >= self.n {
                    return false;
                }
                self.at_upper[j] = true;
            } else if self.d[j].is_neg() {
                self.at_upper[j] = false;
            }
        }
        true
    }

    fn column(&self, j: usize, i: usize) -> T {
        if j < self.n {
            self.a[i][j].clone()
        } else if j - self.n == i {
            T::one()
        } else {
            T::zero()
        }
    }

    /// Rebuilds the tableau from the original rows and the basis by
    /// Gauss–Jordan elimination with partial pivoting.
    fn refactor(&mut self) -> bool {
        let m = self.a.len();
        let w = self.width();
        // Working matrix [B | A I | b].
        let mut mat: Vec<Vec<T>> = (0..m)
            .map(|i| {
                let mut row: Vec<T> = self.basic.iter().map(|&j| self.column(j, i)).collect();
                row.extend((0..w).map(|j| self.column(j, i)));
                row.push(self.b[i].clone());
                row
            })
            .collect();
        for col in 0..m {
            let piv = (col..m)
                .filter(|&r| !mat[r][col].is_zero_tol())
                .max_by(|&p, &q| {
                    mat[p][col]
                        .abs()
                        .partial_cmp(&mat[q][col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                        .then(q.cmp(&p))
                });
            let Some(p) = piv else {
                return false;
            };
            mat.swap(col, p);
            let inv = T::one() / mat[col][col].clone();
            for x in mat[col].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            let pivot_row = mat[col].clone();
            for (r, row) in mat.iter_mut().enumerate() {
                if r == col || row[col].is_zero_tol() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero_tol() {
                        *x = x.clone() - f.clone() * p.clone();
                    }
                }
            }
        }
        self.tab = mat.iter().map(|row| row[m..m + w].to_vec()).collect();
        self.rhs = mat.iter().map(|row| row[m + w].clone()).collect();
        self.row_of = vec![None; w];
        for (i, &j) in self.basic.iter().enumerate() {
            self.row_of[j] = Some(i);
        }
        self.recompute_reduced_costs();
        self.pivots_since_refactor = 0;
        true
    }

    fn cost(&self, j: usize) -> T {
        if j < self.n {
            self.c[j].clone()
        } else {
            T::zero()
        }
    }

    fn recompute_reduced_costs(&mut self) {
        let w = self.width();
        let mut d: Vec<T> = (0..w).map(|j| self.cost(j)).collect();
        for (i, &bv) in self.basic.iter().enumerate() {
            let cb = self.cost(bv);
            if cb.is_zero_tol() {
                continue;
            }
            for (dj, t) in d.iter_mut().zip(&self.tab[i]) {
                if !t.is_zero_tol() {
                    *dj = dj.clone() - cb.clone() * t.clone();
                }
            }
        }
        for &bv in &self.basic {
            d[bv] = T::zero();
        }
        self.d = d;
    }

    fn nonbasic_value(&self, j: usize) -> T {
        if j >= self.n {
            T::zero()
        } else if self.at_upper[j] {
            self.up[j].clone()
        } else {
            self.lo[j].clone()
        }
    }

    fn basic_values(&self) -> Vec<T> {
        let w = self.width();
        let vals: Vec<(usize, T)> = (0..w)
            .filter(|&j| self.row_of[j].is_none())
            .map(|j| (j, self.nonbasic_value(j)))
            .filter(|(_, v)| !v.is_zero_tol())
            .collect();
        (0..self.a.len())
            .map(|i| {
                vals.iter().fold(self.rhs[i].clone(), |acc, (j, v)| {
                    let t = &self.tab[i][*j];
                    if t.is_zero_tol() {
                        acc
                    } else {
                        acc - t.clone() * v.clone()
                    }
                })
            })
            .collect()
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let inv = T::one() / self.tab[r][q].clone();
        for x in self.tab[r].iter_mut() {
            if !x.is_zero_tol() {
                *x = x.clone() * inv.clone();
            }
        }
        self.rhs[r] = self.rhs[r].clone() * inv;
        let prow = self.tab[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.tab.len() {
            if i == r || self.tab[i][q].is_zero_tol() {
                continue;
            }
            let f = self.tab[i][q].clone();
            for (x, p) in self.tab[i].iter_mut().zip(&prow) {
                if !p.is_zero_tol() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
            self.tab[i][q] = T::zero();
            self.rhs[i] = self.rhs[i].clone() - f * prhs.clone();
        }
        let dq = self.d[q].clone();
        if !dq.is_zero_tol() {
            for (dj, p) in self.d.iter_mut().zip(&prow) {
                if !p.is_zero_tol() {
                    *dj = dj.clone() - dq.clone() * p.clone();
                }
            }
        }
        let leaving = self.basic[r];
        self.d[q] = T::zero();
        self.row_of[leaving] = None;
        self.row_of[q] = Some(r);
        self.basic[r] = q;
        self.pivots_since_refactor += 1;
    }

    /// Runs dual simplex iterations from the current (dual feasible) basis.
    pub fn solve(&mut self) -> Result<LpSolution<T>> {
        for j in 0..self.n {
            if self.lo[j] > self.up[j] && !(self.lo[j].clone() - self.up[j].clone()).is_zero_tol() {
                return Ok(self.infeasible(0));
            }
        }
        if self.tab.len() != self.a.len() {
            self.reset_to_slack_basis();
        }
        let mut degenerate = 0usize;
        let mut bland = false;
        for it in 0..ITERATION_LIMIT {
            if !T::EXACT && self.pivots_since_refactor >= REFACTOR_EVERY && !self.refactor() {
                return Err(Error::Lp("basis became singular".into()));
            }
            let beta = self.basic_values();
            let mut leave: Option<(usize, T, bool)> = None;
            for (i, v) in beta.iter().enumerate() {
                let bv = self.basic[i];
                let (below, amount) = if bv < self.n {
                    let lo_gap = self.lo[bv].clone() - v.clone();
                    let up_gap = v.clone() - self.up[bv].clone();
                    if lo_gap.is_pos() {
                        (true, lo_gap)
                    } else if up_gap.is_pos() {
                        (false, up_gap)
                    } else {
                        continue;
                    }
                } else if v.is_neg() {
                    (true, -v.clone())
                } else {
                    continue;
                };
                let better = match &leave {
                    None => true,
                    Some((r, best, _)) => {
                        if bland {
                            bv < self.basic[*r]
                        } else {
                            amount > *best
                        }
                    }
                };
                if better {
                    leave = Some((i, amount, below));
                }
            }
            let Some((r, _, below)) = leave else {
                return Ok(self.optimal(it));
            };
            let mut enter: Option<(usize, T, T)> = None;
            for j in 0..self.width() {
                if self.row_of[j].is_some() {
                    continue;
                }
                if j < self.n && (self.lo[j].clone() - self.up[j].clone()).is_zero_tol() {
                    continue;
                }
                let alpha = self.tab[r][j].clone();
                if alpha.is_zero_tol() {
                    continue;
                }
                let up = j < self.n && self.at_upper[j];
                let eligible = if below {
                    (!up && alpha.is_neg()) || (up && alpha.is_pos())
                } else {
                    (!up && alpha.is_pos()) || (up && alpha.is_neg())
                };
                if !eligible {
                    continue;
                }
                let ratio = self.d[j].abs() / alpha.abs();
                let better = match &enter {
                    None => true,
                    Some((_, best, best_alpha)) => {
                        let diff = ratio.clone() - best.clone();
                        if diff.is_neg() {
                            true
                        } else if diff.is_pos() {
                            false
                        } else {
                            !bland && alpha.abs() > *best_alpha
                        }
                    }
                };
                if better {
                    enter = Some((j, ratio, alpha.abs()));
                }
            }
            let Some((q, ratio, _)) = enter else {
                return Ok(self.infeasible(it));
            };
            if ratio.is_zero_tol() {
                degenerate += 1;
                if degenerate > DEGENERATE_SWITCH {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
            let leaving = self.basic[r];
            self.pivot(r, q);
            if leaving < self.n {
                self.at_upper[leaving] = !below;
            } else {
                self.at_upper[leaving] = false;
            }
        }
        Err(Error::Lp("iteration limit reached".into()))
    }

    fn infeasible(&self, iterations: usize) -> LpSolution<T> {
        LpSolution {
            status: LpStatus::Infeasible,
            objective: T::zero(),
            x: Vec::new(),
            iterations,
        }
    }

    fn optimal(&mut self, iterations: usize) -> LpSolution<T> {
        let beta = self.basic_values();
        let x: Vec<T> = (0..self.n)
            .map(|j| match self.row_of[j] {
                Some(i) => beta[i].clone(),
                None => self.nonbasic_value(j),
            })
            .collect();
        let objective = x
            .iter()
            .zip(&self.c)
            .fold(T::zero(), |acc, (xj, cj)| acc + xj.clone() * cj.clone());
        LpSolution {
            status: LpStatus::Optimal,
            objective,
            x,
            iterations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, ratio, Rational};

    fn lp<T: Scalar>(c: &[i64], rows: &[(&[i64], i64)], up: i64) -> DualSimplex<T> {
        let n = c.len();
        let mut s = DualSimplex::new(
            c.iter().map(|&v| T::from_i64(v)).collect(),
            vec![T::zero(); n],
            vec![T::from_i64(up); n],
        )
        .unwrap();
        for (a, b) in rows {
            s.add_row(a.iter().map(|&v| T::from_i64(v)).collect(), T::from_i64(*b));
        }
        s
    }

    #[test]
    fn triangle_stable_set_relaxation() {
        // max x1+x2+x3, pairwise sums ≤ 1 → 3/2
        let rows: [(&[i64], i64); 3] = [(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)];
        let sol = lp::<Rational>(&[1, 1, 1], &rows, 1).solve().unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective, ratio(3, 2));
        let sol = lp::<f64>(&[1, 1, 1], &rows, 1).solve().unwrap();
        assert!((sol.objective - 1.5).abs() < 1e-9);
    }

    #[test]
    fn infeasible_and_bounds() {
        let rows: [(&[i64], i64); 1] = [(&[-1, -1], -3)];
        let sol = lp::<Rational>(&[1, 1], &rows, 1).solve().unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
        let mut s = lp::<Rational>(&[1, -1], &[], 1);
        let sol = s.solve().unwrap();
        assert_eq!(sol.x, vec![rat(1), rat(0)]);
        s.set_bounds(0, rat(0), rat(0));
        assert_eq!(s.solve().unwrap().objective, rat(0));
    }

    #[test]
    fn warm_start_after_cut_matches_cold() {
        let rows: [(&[i64], i64); 2] = [(&[2, 1, 1], 3), (&[1, 3, 0], 3)];
        let mut warm = lp::<Rational>(&[3, 2, 2], &rows, 1);
        warm.solve().unwrap();
        let basis = warm.basis();
        warm.add_row(vec![rat(1), rat(1), rat(1)], rat(2));
        let w = warm.solve().unwrap();
        let rows3: [(&[i64], i64); 3] = [(&[2, 1, 1], 3), (&[1, 3, 0], 3), (&[1, 1, 1], 2)];
        let cold = lp::<Rational>(&[3, 2, 2], &rows3, 1).solve().unwrap();
        assert_eq!(w.objective, cold.objective);
        let mut again = lp::<Rational>(&[3, 2, 2], &rows3, 1);
        again.load_basis(&basis);
        again.set_bounds(1, rat(1), rat(1));
        let fixed = again.solve().unwrap();
        assert!(fixed.objective <= cold.objective);
        assert_eq!(fixed.x[1], rat(1));
    }
}
