use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{mask_to_vertices, Graph, MaskAdjacency};

pub const DEFAULT_BETA_CAP: usize = 16;

#[derive(Clone, Debug)]
pub struct BetaReport {
    pub holds: bool,
    /// ceil(beta * n): the set size actually tested.
    pub threshold: usize,
    /// On failure, a pair of disjoint threshold-sized sets with no edge
    /// between them.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Does every pair of disjoint vertex sets of size >= beta*n span an edge?
///
/// It suffices to test sets of size exactly t = ceil(beta*n): a violating
/// pair of larger sets contains a violating pair of t-sets. For each t-set U
/// the partner candidates are the vertices outside U and N(U); a violating
/// partner exists iff at least t of them remain.
pub fn is_beta_graph(g: &Graph, beta: Ratio<i64>) -> Result<BetaReport> {
    is_beta_graph_with_cap(g, beta, DEFAULT_BETA_CAP)
}

pub fn is_beta_graph_with_cap(g: &Graph, beta: Ratio<i64>, cap: usize) -> Result<BetaReport> {
    if beta <= Ratio::new(0, 1) {
        return Err(Error::InvalidSpec(format!("beta must be positive, got {beta}")));
    }
    let n = g.n();
    if n > cap {
        return Err(Error::SizeLimit(format!(
            "exhaustive beta-graph check capped at n <= {cap}, got n={n}"
        )));
    }
    let t_ratio = beta * Ratio::new(n as i64, 1);
    let t = t_ratio.ceil().to_integer() as usize;
    if 2 * t > n {
        // No two disjoint sets of that size exist.
        return Ok(BetaReport {
            holds: true,
            threshold: t,
            witness: None,
        });
    }
    let adj = MaskAdjacency::build(g)?;
    let all: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    for mask in 1u64..=all {
        if mask.count_ones() as usize != t {
            continue;
        }
        let allowed = all & !(mask | adj.neighbourhood(mask));
        if allowed.count_ones() as usize >= t {
            let mut partner = 0u64;
            let mut rest = allowed;
            for _ in 0..t {
                let v = rest.trailing_zeros();
                partner |= 1 << v;
                rest &= rest - 1;
            }
            return Ok(BetaReport {
                holds: false,
                threshold: t,
                witness: Some((mask_to_vertices(mask), mask_to_vertices(partner))),
            });
        }
    }
    Ok(BetaReport {
        holds: true,
        threshold: t,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn complete_graph_is_beta_for_singletons() {
        let report = is_beta_graph(&complete(6), Ratio::new(1, 6)).unwrap();
        assert!(report.holds);
        assert_eq!(report.threshold, 1);
    }

    #[test]
    fn empty_graph_fails_with_witness() {
        let g = Graph::new(6, vec![]).unwrap();
        let report = is_beta_graph(&g, Ratio::new(1, 6)).unwrap();
        assert!(!report.holds);
        let (u, w) = report.witness.unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(w.len(), 1);
        assert_ne!(u[0], w[0]);
    }

    #[test]
    fn complete_minus_perfect_matching() {
        // Remove the matching {0,1},{2,3},{4,5} from K_6: any two disjoint
        // pairs still span an edge.
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                if !(v == u + 1 && u % 2 == 0) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(6, edges).unwrap();
        let report = is_beta_graph(&g, Ratio::new(1, 3)).unwrap();
        assert_eq!(report.threshold, 2);
        assert!(report.holds);
    }

    #[test]
    fn oversized_threshold_is_vacuous() {
        let g = Graph::new(4, vec![]).unwrap();
        let report = is_beta_graph(&g, Ratio::new(2, 3)).unwrap();
        assert_eq!(report.threshold, 3);
        assert!(report.holds);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            is_beta_graph(&complete(3), Ratio::new(0, 1)),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            is_beta_graph_with_cap(&complete(6), Ratio::new(1, 2), 4),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn witness_really_has_no_cross_edge() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..80 {
            let n = rng.gen_range(2..=9);
            let p: f64 = rng.gen_range(0.1..0.9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let beta = Ratio::new(1, rng.gen_range(2..=4));
            let report = is_beta_graph(&g, beta).unwrap();
            if let Some((u, w)) = report.witness {
                assert!(!report.holds);
                for &a in &u {
                    for &b in &w {
                        assert!(!g.has_edge(a, b));
                        assert_ne!(a, b);
                    }
                }
            }
        }
    }
}
