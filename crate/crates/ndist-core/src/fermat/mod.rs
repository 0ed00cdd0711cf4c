//! Fermat-point n-distances: the geometric median in Euclidean space and
//! the exact Fermat 3-distance on graph vertices.

mod graph;
mod weiszfeld;

pub use graph::{
    bfs_all_pairs, fermat_value_graph, find_non_median_triple, is_median_graph,
    median_best_constant, median_vertex, DistanceMatrix, Fermat3Table, Graph,
};
pub use weiszfeld::{weiszfeld, WeiszfeldResult, DEFAULT_MAX_ITER, DEFAULT_TOL};

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_rational::Rational64;

use crate::distance::NDistance;
use crate::error::{Error, Result};
use crate::value::{KBound, Value};

/// Fermat n-distance on `R^k`: the minimal total distance from the tuple
/// to a single point, computed by the Weiszfeld solver. The exact best
/// constant is open; the proved bracket is
/// `1/(n-1) <= K* <= (4n-4)/(3n^2-4n)` (which collapses to 1 at `n = 2`).
#[derive(Clone, Debug)]
pub struct FermatEuclidean {
    arity: usize,
    dim: usize,
    tol: f64,
    max_iter: usize,
}

impl FermatEuclidean {
    pub fn new(arity: usize, dim: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidConfig(format!(
                "fermat_euclidean needs arity >= 2, got {arity}"
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidConfig("dimension must be >= 1".into()));
        }
        Ok(FermatEuclidean {
            arity,
            dim,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl NDistance for FermatEuclidean {
    type Point = Vec<f64>;

    fn name(&self) -> &str {
        "fermat_euclidean"
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, tuple: &[Vec<f64>]) -> Result<Value> {
        if tuple.iter().any(|p| p.len() != self.dim) {
            return Err(Error::InvalidConfig(format!(
                "expected points of dimension {}",
                self.dim
            )));
        }
        let r = weiszfeld(tuple, self.tol, self.max_iter)?;
        if !r.converged {
            return Err(Error::SolverDiverged {
                iterations: r.iterations,
            });
        }
        Ok(Value::Approx(r.value))
    }

    fn theoretical_k(&self) -> Option<KBound> {
        let n = self.arity as i64;
        let lo = Rational64::new(1, n - 1);
        let hi = Rational64::new(4 * n - 4, 3 * n * n - 4 * n);
        Some(if lo == hi {
            KBound::Exact(lo)
        } else {
            KBound::Interval {
                lo,
                hi,
                hi_strict: false,
            }
        })
    }
}

/// Fermat 3-distance on the vertices of a fixed connected graph,
/// `d(u, v, w) = min_y d(u,y) + d(v,y) + d(w,y)`, exact integers.
///
/// On a median graph the best constant is exactly `1/2`. Recognition is
/// quartic in the vertex count, so [`Fermat3Graph::new`] (which checks)
/// is meant for small graphs; [`Fermat3Graph::with_median_status`] lets
/// callers skip or precompute the check.
#[derive(Clone, Debug)]
pub struct Fermat3Graph {
    dm: Arc<DistanceMatrix>,
    median: Option<bool>,
}

impl Fermat3Graph {
    pub fn new(g: &Graph) -> Result<Self> {
        let median = is_median_graph(g)?;
        Ok(Fermat3Graph {
            dm: Arc::new(bfs_all_pairs(g)?),
            median: Some(median),
        })
    }

    pub fn with_median_status(g: &Graph, median: Option<bool>) -> Result<Self> {
        Ok(Fermat3Graph {
            dm: Arc::new(bfs_all_pairs(g)?),
            median,
        })
    }

    pub fn distance_matrix(&self) -> &DistanceMatrix {
        &self.dm
    }

    pub fn is_median(&self) -> Option<bool> {
        self.median
    }
}

impl NDistance for Fermat3Graph {
    type Point = usize;

    fn name(&self) -> &str {
        "fermat_graph3"
    }

    fn arity(&self) -> usize {
        3
    }

    fn eval(&self, tuple: &[usize]) -> Result<Value> {
        let (v, _) = fermat_value_graph(&self.dm, tuple)?;
        Ok(Value::from_int(v as i64))
    }

    fn theoretical_k(&self) -> Option<KBound> {
        match self.median {
            Some(true) => Some(KBound::exact(1, 2)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{simplex_ratio, Config};
    use alloc::vec;

    #[test]
    fn fermat_euclidean_examples() {
        // n = 2 reduces to the base distance
        let d2 = FermatEuclidean::new(2, 2).unwrap();
        let v = d2.eval(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert!((v.to_f64() - 5.0).abs() < 1e-9);

        // equilateral triangle of side 1
        let d3 = FermatEuclidean::new(3, 2).unwrap();
        let s = 3.0f64.sqrt() / 2.0;
        let v = d3
            .eval(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, s]])
            .unwrap();
        assert!((v.to_f64() - 3.0f64.sqrt()).abs() < 1e-7);

        // collinear points: the median point wins
        let v = d3
            .eval(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]])
            .unwrap();
        assert!((v.to_f64() - 2.0).abs() < 1e-7);
    }

    #[test]
    fn fermat_theoretical_brackets() {
        assert_eq!(
            FermatEuclidean::new(2, 2).unwrap().theoretical_k(),
            Some(KBound::Exact(Rational64::from_integer(1)))
        );
        assert_eq!(
            FermatEuclidean::new(3, 2).unwrap().theoretical_k(),
            Some(KBound::Interval {
                lo: Rational64::new(1, 2),
                hi: Rational64::new(8, 15),
                hi_strict: false
            })
        );
    }

    #[test]
    fn fermat3_graph_values() {
        let path = Graph::path(3).unwrap();
        let d = Fermat3Graph::new(&path).unwrap();
        assert_eq!(d.is_median(), Some(true));
        assert_eq!(d.eval(&[0, 1, 2]).unwrap(), Value::from_int(2));
        assert_eq!(d.eval(&[1, 1, 1]).unwrap(), Value::zero());

        let q3 = Graph::hypercube(3).unwrap();
        let d = Fermat3Graph::new(&q3).unwrap();
        assert_eq!(
            d.eval(&[0b000, 0b011, 0b101]).unwrap(),
            Value::from_int(3)
        );
        assert_eq!(d.theoretical_k(), Some(KBound::exact(1, 2)));
    }

    #[test]
    fn median_pivot_attains_one_half_exactly() {
        let grid = Graph::grid(3, 3).unwrap();
        let dm = bfs_all_pairs(&grid).unwrap();
        let d = Fermat3Graph::new(&grid).unwrap();
        let (u, v, w) = (0, 2, 6);
        let z = median_vertex(&dm, u, v, w).unwrap();
        let rs = simplex_ratio(&d, Config::new(vec![u, v, w], z)).unwrap();
        assert_eq!(rs.ratio, Value::from_ratio(1, 2));
    }

    #[test]
    fn median_formula_holds_on_q3() {
        // d_m(u,v,w) = (d(u,v) + d(u,w) + d(v,w)) / 2 on median graphs
        let q3 = Graph::hypercube(3).unwrap();
        let dm = bfs_all_pairs(&q3).unwrap();
        let d = Fermat3Graph::new(&q3).unwrap();
        for u in 0..8 {
            for v in 0..8 {
                for w in 0..8 {
                    let lhs = d.eval(&[u, v, w]).unwrap();
                    let total = dm.get(u, v) + dm.get(u, w) + dm.get(v, w);
                    assert_eq!(lhs, Value::from_ratio(total as i64, 2));
                }
            }
        }
    }
}
