use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{mask_to_vertices, Graph, MaskAdjacency};

pub const DEFAULT_ISO_CAP: usize = 20;

#[derive(Clone, Debug)]
pub struct IsoReport {
    /// min |N(U)| / |U| over nonempty U with |U| <= n/2, exact.
    pub value: Ratio<i64>,
    /// A minimising set, sorted; the first one in mask order.
    pub witness: Vec<usize>,
    /// True iff the minimum is 0, i.e. some candidate U has empty
    /// neighbourhood (the graph is disconnected in a size-balanced way).
    pub zero_from_disconnection: bool,
}

/// Exact vertex-isoperimetric constant by exhaustive subset enumeration.
///
/// Disconnected graphs are not rejected: the literal minimum (possibly 0) is
/// returned with the flag set. Needs n >= 2 so that a nonempty U with
/// |U| <= n/2 exists.
pub fn isoperimetric_constant(g: &Graph) -> Result<IsoReport> {
    isoperimetric_constant_with_cap(g, DEFAULT_ISO_CAP)
}

pub fn isoperimetric_constant_with_cap(g: &Graph, cap: usize) -> Result<IsoReport> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "isoperimetric constant needs n >= 2, got n={n}"
        )));
    }
    if n > cap {
        return Err(Error::SizeLimit(format!(
            "exhaustive isoperimetric constant capped at n <= {cap}, got n={n}"
        )));
    }
    let adj = MaskAdjacency::build(g)?;
    let half = n / 2;
    let mut best: Option<(Ratio<i64>, u64)> = None;
    for mask in 1u64..(1 << n) {
        let size = mask.count_ones() as usize;
        if size > half {
            continue;
        }
        let boundary = adj.neighbourhood(mask).count_ones() as i64;
        let ratio = Ratio::new(boundary, size as i64);
        match &best {
            Some((b, _)) if *b <= ratio => {}
            _ => best = Some((ratio, mask)),
        }
    }
    let (value, witness_mask) = best.expect("n >= 2 guarantees at least one candidate");
    Ok(IsoReport {
        value,
        witness: mask_to_vertices(witness_mask),
        zero_from_disconnection: value == Ratio::new(0, 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    /// Independent oracle: recursive enumeration of vertex subsets by element
    /// choice (rather than mask iteration), neighbourhood computed from
    /// adjacency lists.
    fn oracle(g: &Graph) -> Ratio<i64> {
        fn rec(g: &Graph, from: usize, current: &mut Vec<usize>, best: &mut Option<Ratio<i64>>) {
            if !current.is_empty() && current.len() <= g.n() / 2 {
                let mut boundary = std::collections::BTreeSet::new();
                for &u in current.iter() {
                    for &w in g.neighbours(u) {
                        if !current.contains(&w) {
                            boundary.insert(w);
                        }
                    }
                }
                let ratio = Ratio::new(boundary.len() as i64, current.len() as i64);
                if best.map_or(true, |b| ratio < b) {
                    *best = Some(ratio);
                }
            }
            if current.len() == g.n() / 2 {
                return;
            }
            for v in from..g.n() {
                current.push(v);
                rec(g, v + 1, current, best);
                current.pop();
            }
        }
        let mut best = None;
        rec(g, 0, &mut Vec::new(), &mut best);
        best.unwrap()
    }

    #[test]
    fn known_values() {
        let k4 = isoperimetric_constant(&complete(4)).unwrap();
        assert_eq!(k4.value, Ratio::new(1, 1));
        assert_eq!(k4.value, oracle(&complete(4)));

        let c6 = isoperimetric_constant(&cycle(6)).unwrap();
        assert_eq!(c6.value, Ratio::new(2, 3));
        assert_eq!(c6.witness.len(), 3);

        let k2 = isoperimetric_constant(&complete(2)).unwrap();
        assert_eq!(k2.value, Ratio::new(1, 1));
    }

    #[test]
    fn disconnected_graph_is_flagged() {
        let g = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let report = isoperimetric_constant(&g).unwrap();
        assert_eq!(report.value, Ratio::new(0, 1));
        assert!(report.zero_from_disconnection);
    }

    #[test]
    fn cap_is_enforced() {
        let g = cycle(8);
        assert!(matches!(
            isoperimetric_constant_with_cap(&g, 6),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn matches_oracle_on_random_graphs() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..60 {
            let n = rng.gen_range(2..=8);
            let p: f64 = rng.gen_range(0.2..0.9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let report = isoperimetric_constant(&g).unwrap();
            assert_eq!(report.value, oracle(&g), "graph {:?}", g);
            // The witness really achieves the reported ratio.
            let adj = MaskAdjacency::build(&g).unwrap();
            let mask: u64 = report.witness.iter().map(|&v| 1u64 << v).sum();
            let boundary = adj.neighbourhood(mask).count_ones() as i64;
            assert_eq!(
                Ratio::new(boundary, report.witness.len() as i64),
                report.value
            );
        }
    }
}
