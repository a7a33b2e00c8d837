//! Validity, facet and dimension checks against the enumerated integer
//! points of the co-2-plex polytope, in exact integer arithmetic.

use super::system::{LinearInequality, Space};
use crate::co2plex::enumerate_co2plexes;
use crate::error::{precondition, Result};
use crate::graph::Graph;
use crate::numeric::{dot_i128, integer_row, IncrementalRank, Rational};

/// The co-2-plex incidence vectors of a graph in one space, with the
/// affine rank of the whole point set cached.
#[derive(Clone, Debug)]
pub struct FacetChecker {
    space: Space,
    points: Vec<Vec<i128>>,
    rank_all: usize,
}

impl FacetChecker {
    pub fn new(g: &Graph, space: Space) -> Result<Self> {
        if space.n() != g.n() || (space.is_extended() && space.dim() != g.n() + g.m()) {
            return precondition("space does not match the graph");
        }
        let points: Vec<Vec<i128>> = enumerate_co2plexes(g)?
            .iter()
            .map(|c| {
                if space.is_extended() {
                    c.extended_incidence(g)
                } else {
                    c.natural_incidence(g.n())
                }
            })
            .collect();
        let rank_all = affine_rank(points.iter())?;
        Ok(FacetChecker {
            space,
            points,
            rank_all,
        })
    }

    pub fn points(&self) -> &[Vec<i128>] {
        &self.points
    }

    /// Dimension of the polytope.
    pub fn dimension(&self) -> isize {
        self.rank_all as isize - 1
    }

    pub fn is_valid(&self, ineq: &LinearInequality) -> Result<bool> {
        let (a, b) = self.integer(ineq)?;
        for p in &self.points {
            if dot_i128(&a, p)? > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Valid, and the tight points span an affine space of dimension
    /// `dim(P) − 1`. Errors on invalid inequalities.
    pub fn is_facet(&self, ineq: &LinearInequality) -> Result<bool> {
        let (a, b) = self.integer(ineq)?;
        let mut tight = Vec::new();
        for p in &self.points {
            let v = dot_i128(&a, p)?;
            if v > b {
                return precondition(format!("{} is not valid", ineq.label));
            }
            if v == b {
                tight.push(p);
            }
        }
        Ok(affine_rank(tight.into_iter())? + 1 == self.rank_all)
    }

    fn integer(&self, ineq: &LinearInequality) -> Result<(Vec<i128>, i128)> {
        if ineq.space != self.space {
            return precondition(format!("{} lives in a different space", ineq.label));
        }
        ineq.integer_form()
    }
}

/// Rank of the points with a trailing 1 appended.
fn affine_rank<'a>(points: impl Iterator<Item = &'a Vec<i128>>) -> Result<usize> {
    let mut r = IncrementalRank::new();
    for p in points {
        let mut h = p.clone();
        h.push(1);
        r.insert(&h)?;
    }
    Ok(r.rank())
}

pub fn is_valid_inequality(g: &Graph, ineq: &LinearInequality) -> Result<bool> {
    FacetChecker::new(g, ineq.space)?.is_valid(ineq)
}

pub fn is_facet(g: &Graph, ineq: &LinearInequality) -> Result<bool> {
    FacetChecker::new(g, ineq.space)?.is_facet(ineq)
}

/// Affine dimension of a point set; −1 when empty.
pub fn polytope_dimension(points: &[Vec<Rational>]) -> Result<isize> {
    let mut r = IncrementalRank::new();
    for p in points {
        let mut h = p.clone();
        h.push(Rational::from_integer(1.into()));
        r.insert(&integer_row(&h)?)?;
    }
    Ok(r.rank() as isize - 1)
}

/// Convenience: dimension of the co-2-plex polytope in the given space.
pub fn co2plex_polytope_dimension(g: &Graph, space: Space) -> Result<isize> {
    Ok(FacetChecker::new(g, space)?.dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::builders::{
        build_e, extended, hole_inequality, natural, rank_inequality, star_inequality, trivial_inequalities,
    };

    #[test]
    fn trivial_facets() {
        for g in [Graph::cycle(5), Graph::star(3), Graph::complete(4)] {
            let fc = FacetChecker::new(&g, natural(&g)).unwrap();
            assert_eq!(fc.dimension(), g.n() as isize);
            for v in 0..g.n() {
                for t in trivial_inequalities(natural(&g), v) {
                    assert!(fc.is_facet(&t).unwrap(), "{t}");
                }
            }
        }
    }

    #[test]
    fn hole_rank_examples() {
        let c5 = Graph::cycle(5);
        assert!(is_facet(&c5, &hole_inequality(&c5, &[0, 1, 2, 3, 4]).unwrap()).unwrap());
        let c6 = Graph::cycle(6);
        assert!(!is_facet(&c6, &hole_inequality(&c6, &[0, 1, 2, 3, 4, 5]).unwrap()).unwrap());
    }

    #[test]
    fn validity_examples() {
        let g = Graph::cycle(5);
        assert!(is_valid_inequality(&g, &star_inequality(&g, 0, &[1, 4]).unwrap()).unwrap());
        let bad = rank_inequality(natural(&g), &[0, 1, 2, 3, 4], 2, "too tight");
        assert!(!is_valid_inequality(&g, &bad).unwrap());
        assert!(is_facet(&g, &bad).is_err());
        for r in build_e(&g).rows {
            assert!(is_valid_inequality(&g, &r).unwrap());
        }
        assert!(co2plex_polytope_dimension(&g, extended(&g)).unwrap() <= 10);
    }

    #[test]
    fn dimension_of_point_sets() {
        use crate::numeric::rat;
        assert_eq!(polytope_dimension(&[]).unwrap(), -1);
        assert_eq!(polytope_dimension(&[vec![rat(1), rat(2)]]).unwrap(), 0);
        let sq = vec![vec![rat(0), rat(0)], vec![rat(1), rat(0)], vec![rat(0), rat(1)], vec![rat(1), rat(1)]];
        assert_eq!(polytope_dimension(&sq).unwrap(), 2);
    }
}
