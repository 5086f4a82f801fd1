use serde::{Deserialize, Serialize};

use crate::colouring::{colour_components, EdgeColouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::union_find::UnionFind;

pub const DEFAULT_TREE_ENUM_BUDGET: usize = 1_000_000;
pub const DEFAULT_COLOURING_ENUM_BUDGET: usize = 10_000_000;
pub const DEFAULT_HAMILTON_CAP: usize = 12;
pub const DEFAULT_MATCHING_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgraphFamily {
    SpanningTree,
    HamiltonCycle,
    PerfectMatching,
}

impl SubgraphFamily {
    /// Number of edges of every member on an n-vertex graph.
    pub fn member_size(&self, n: usize) -> usize {
        match self {
            SubgraphFamily::SpanningTree => n.saturating_sub(1),
            SubgraphFamily::HamiltonCycle => n,
            SubgraphFamily::PerfectMatching => n / 2,
        }
    }
}

/// Result of a discrepancy computation.
///
/// `value` is r * (largest colour count in the best member) - (member size):
/// the scaled deviation of the best-represented colour from an even split,
/// maximised over the family, and for exact computations minimised over
/// colourings. Always a nonnegative integer.
#[derive(Clone, Debug)]
pub struct DiscrepancyReport {
    pub family: SubgraphFamily,
    pub value: i64,
    /// Present for computations that optimise over colourings.
    pub witness_colouring: Option<EdgeColouring>,
    /// Edge indices of a member achieving `value`.
    pub witness_subgraph: Vec<usize>,
}

fn scaled_deviation(r: usize, max_count: usize, member_size: usize) -> i64 {
    (r * max_count) as i64 - member_size as i64
}

/// Discrepancy of a fixed colouring over all spanning trees, in closed form.
///
/// The largest possible number of colour-i edges in a spanning tree is
/// n - c_i, where c_i is the number of components of the colour-i subgraph:
/// a maximum colour-i forest has that many edges and extends to a spanning
/// tree, while no tree can fit more colour-i edges without a colour-i cycle.
/// Hence the discrepancy is r * max_i (n - c_i) - (n - 1).
pub fn tree_discrepancy_of_colouring(g: &Graph, f: &EdgeColouring) -> Result<DiscrepancyReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected(
            "spanning-tree discrepancy needs a connected graph".into(),
        ));
    }
    f.check_against(g)?;
    let n = g.n();
    let cc = colour_components(g, f)?;
    let (mut best_colour, mut best_count) = (1usize, 0usize);
    for colour in 1..=f.r() {
        let count = n - cc.count(colour);
        if count > best_count {
            best_count = count;
            best_colour = colour;
        }
    }
    let forest = max_monochromatic_forest(g, f, best_colour)?;
    debug_assert_eq!(forest.len(), best_count);
    let witness = extend_forest_to_spanning_tree(g, &forest)?;
    Ok(DiscrepancyReport {
        family: SubgraphFamily::SpanningTree,
        value: scaled_deviation(f.r(), best_count, n - 1),
        witness_colouring: None,
        witness_subgraph: witness,
    })
}

/// Maximum forest using only colour-`colour` edges (greedy, which is optimal
/// for forests): edge indices in increasing order. Its size is n - c_colour.
pub fn max_monochromatic_forest(g: &Graph, f: &EdgeColouring, colour: usize) -> Result<Vec<usize>> {
    f.check_against(g)?;
    if colour == 0 || colour > f.r() {
        return Err(Error::InvalidColouring(format!(
            "colour {colour} outside 1..={}",
            f.r()
        )));
    }
    let mut uf = UnionFind::new(g.n());
    let mut forest = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if f.colour_of(e) == colour && uf.union(u, v) {
            forest.push(e);
        }
    }
    Ok(forest)
}

/// Completes an acyclic edge set to a spanning tree, greedily by edge index.
pub fn extend_forest_to_spanning_tree(g: &Graph, forest: &[usize]) -> Result<Vec<usize>> {
    let mut uf = UnionFind::new(g.n());
    let mut tree: Vec<usize> = Vec::with_capacity(g.n().saturating_sub(1));
    for &e in forest {
        if e >= g.m() {
            return Err(Error::InvalidStructure(format!(
                "forest edge index {e} out of range"
            )));
        }
        let (u, v) = g.edge(e);
        if !uf.union(u, v) {
            return Err(Error::InvalidStructure(format!(
                "edge set is not a forest: edge {e} closes a cycle"
            )));
        }
        tree.push(e);
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if uf.component_count() == 1 {
            break;
        }
        if uf.union(u, v) {
            tree.push(e);
        }
    }
    if uf.component_count() != 1 {
        return Err(Error::Disconnected(
            "cannot extend forest: graph has no spanning tree".into(),
        ));
    }
    tree.sort_unstable();
    Ok(tree)
}

/// All spanning trees as edge-index lists, in lexicographic order of the
/// include/exclude decisions. Errors with SizeLimit if there are more than
/// `budget` trees, and Disconnected if there are none.
pub fn spanning_trees(g: &Graph, budget: usize) -> Result<Vec<Vec<usize>>> {
    if !g.is_connected() {
        return Err(Error::Disconnected("no spanning trees".into()));
    }
    let n = g.n();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n.saturating_sub(1));
    // Include/exclude recursion; the exclude branch is only taken when the
    // remaining edges can still connect everything, so every leaf is a tree.
    fn rec(
        g: &Graph,
        pos: usize,
        uf: &UnionFind,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<()> {
        if chosen.len() + 1 == g.n() || g.n() == 1 {
            if out.len() == budget {
                return Err(Error::SizeLimit(format!(
                    "more than {budget} spanning trees"
                )));
            }
            out.push(chosen.clone());
            return Ok(());
        }
        if pos == g.m() {
            return Ok(());
        }
        let (u, v) = g.edge(pos);
        let mut uf_probe = uf.clone();
        if !uf_probe.union(u, v) {
            // Edge closes a cycle with the chosen set; it can never be added.
            return rec(g, pos + 1, uf, chosen, out, budget);
        }
        chosen.push(pos);
        rec(g, pos + 1, &uf_probe, chosen, out, budget)?;
        chosen.pop();
        // Exclude `pos` only if the rest still connects.
        let mut rest = uf.clone();
        for e in pos + 1..g.m() {
            let (a, b) = g.edge(e);
            rest.union(a, b);
        }
        if rest.component_count() == 1 {
            rec(g, pos + 1, uf, chosen, out, budget)?;
        }
        Ok(())
    }
    rec(g, 0, &UnionFind::new(n), &mut chosen, &mut out, budget)?;
    Ok(out)
}

/// Brute-force oracle for `tree_discrepancy_of_colouring`: enumerate every
/// spanning tree and take the worst colour imbalance directly. Shares no
/// logic with the closed form (no component counts anywhere).
pub fn naive_tree_discrepancy(
    g: &Graph,
    f: &EdgeColouring,
    budget: usize,
) -> Result<DiscrepancyReport> {
    f.check_against(g)?;
    let trees = spanning_trees(g, budget)?;
    let n = g.n();
    let mut best: Option<(i64, &Vec<usize>)> = None;
    let mut counts = vec![0usize; f.r() + 1];
    for tree in &trees {
        counts.iter_mut().for_each(|c| *c = 0);
        for &e in tree {
            counts[f.colour_of(e)] += 1;
        }
        let max_count = *counts.iter().max().unwrap();
        let value = scaled_deviation(f.r(), max_count, n - 1);
        if best.map_or(true, |(b, _)| value > b) {
            best = Some((value, tree));
        }
    }
    let (value, witness) = best.ok_or_else(|| Error::Disconnected("no spanning trees".into()))?;
    Ok(DiscrepancyReport {
        family: SubgraphFamily::SpanningTree,
        value,
        witness_colouring: None,
        witness_subgraph: witness.clone(),
    })
}

/// Exact spanning-tree discrepancy of the graph: minimum over all r-edge-
/// colourings of the per-colouring discrepancy.
///
/// Colourings are enumerated up to colour permutation via canonical
/// first-appearance form (the colour of each edge is at most one more than
/// the largest colour used on earlier edges); the per-colouring value is
/// invariant under permuting colours, so this loses nothing. SizeLimit if
/// more than `budget` canonical colourings exist.
pub fn exact_tree_discrepancy(g: &Graph, r: usize, budget: usize) -> Result<DiscrepancyReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected(
            "spanning-tree discrepancy needs a connected graph".into(),
        ));
    }
    if r < 2 {
        return Err(Error::InvalidSpec(format!("need r >= 2 colours, got {r}")));
    }
    let m = g.m();
    let mut colours = vec![1usize; m];
    let mut best: Option<(i64, Vec<usize>)> = None;
    let mut visited = 0usize;

    // Enumerate colourings up to colour permutation as restricted-growth
    // strings: the colour at each position is at most one more than the
    // largest colour used earlier.
    fn rec(
        g: &Graph,
        r: usize,
        pos: usize,
        prefix_max: usize,
        colours: &mut Vec<usize>,
        best: &mut Option<(i64, Vec<usize>)>,
        visited: &mut usize,
        budget: usize,
    ) -> Result<()> {
        if pos == g.m() {
            *visited += 1;
            if *visited > budget {
                return Err(Error::SizeLimit(format!(
                    "more than {budget} canonical colourings"
                )));
            }
            let value = formula_value(g, r, colours);
            if best.as_ref().map_or(true, |(b, _)| value < *b) {
                *best = Some((value, colours.clone()));
            }
            return Ok(());
        }
        for c in 1..=r.min(prefix_max + 1) {
            colours[pos] = c;
            rec(g, r, pos + 1, prefix_max.max(c), colours, best, visited, budget)?;
        }
        Ok(())
    }
    rec(g, r, 0, 0, &mut colours, &mut best, &mut visited, budget)?;

    let (value, best_colours) = best.expect("at least one colouring was visited");
    let f = EdgeColouring::new(r, best_colours)?;
    let witness = tree_discrepancy_of_colouring(g, &f)?;
    debug_assert_eq!(witness.value, value);
    Ok(DiscrepancyReport {
        family: SubgraphFamily::SpanningTree,
        value,
        witness_colouring: Some(f),
        witness_subgraph: witness.witness_subgraph,
    })
}

/// Closed-form value for a colouring given as a raw colour slice; no
/// allocation beyond a fixed-size scratch union-find per colour.
fn formula_value(g: &Graph, r: usize, colours: &[usize]) -> i64 {
    let n = g.n();
    let mut best_count = 0usize;
    for colour in 1..=r {
        let mut uf = UnionFind::new(n);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if colours[e] == colour {
                uf.union(u, v);
            }
        }
        best_count = best_count.max(n - uf.component_count());
    }
    scaled_deviation(r, best_count, n - 1)
}

/// Visits Hamilton cycles as vertex sequences (starting at vertex 0, second
/// vertex smaller than last, so each cycle appears exactly once), in
/// lexicographic order. The callback returns false to stop early.
pub fn for_each_hamilton_cycle<F: FnMut(&[usize]) -> bool>(g: &Graph, mut visit: F) {
    let n = g.n();
    if n < 3 {
        return;
    }
    let mut path = Vec::with_capacity(n);
    path.push(0usize);
    let mut used = vec![false; n];
    used[0] = true;
    fn rec(
        g: &Graph,
        path: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = g.n();
        if path.len() == n {
            let last = *path.last().unwrap();
            if g.has_edge(last, 0) && path[1] < path[n - 1] {
                return visit(path);
            }
            return true;
        }
        let u = *path.last().unwrap();
        for &w in g.neighbours(u) {
            if !used[w] {
                used[w] = true;
                path.push(w);
                let keep_going = rec(g, path, used, visit);
                path.pop();
                used[w] = false;
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
    rec(g, &mut path, &mut used, &mut visit);
}

/// Visits perfect matchings as sorted edge-index lists, in lexicographic
/// order (always matching the smallest unmatched vertex first). The callback
/// returns false to stop early.
pub fn for_each_perfect_matching<F: FnMut(&[usize]) -> bool>(g: &Graph, mut visit: F) {
    let n = g.n();
    if n % 2 != 0 {
        return;
    }
    let mut matched = vec![false; n];
    let mut picked: Vec<usize> = Vec::with_capacity(n / 2);
    fn rec(
        g: &Graph,
        matched: &mut Vec<bool>,
        picked: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let u = match (0..g.n()).find(|&v| !matched[v]) {
            Some(u) => u,
            None => return visit(picked),
        };
        matched[u] = true;
        for &w in g.neighbours(u) {
            if !matched[w] {
                matched[w] = true;
                picked.push(g.edge_index(u, w).unwrap());
                let keep_going = rec(g, matched, picked, visit);
                picked.pop();
                matched[w] = false;
                if !keep_going {
                    matched[u] = false;
                    return false;
                }
            }
        }
        matched[u] = false;
        true
    }
    rec(g, &mut matched, &mut picked, &mut visit);
}

pub fn cycle_vertices_to_edges(g: &Graph, cycle: &[usize]) -> Vec<usize> {
    let mut edges: Vec<usize> = cycle
        .windows(2)
        .map(|w| g.edge_index(w[0], w[1]).expect("cycle edge exists"))
        .collect();
    edges.push(
        g.edge_index(*cycle.last().unwrap(), cycle[0])
            .expect("closing edge exists"),
    );
    edges.sort_unstable();
    edges
}

/// Worst colour imbalance of a fixed colouring over a subgraph family, by
/// exhaustive enumeration of the family.
pub fn subgraph_family_discrepancy(
    g: &Graph,
    f: &EdgeColouring,
    family: SubgraphFamily,
) -> Result<DiscrepancyReport> {
    let cap = match family {
        SubgraphFamily::HamiltonCycle => DEFAULT_HAMILTON_CAP,
        SubgraphFamily::PerfectMatching => DEFAULT_MATCHING_CAP,
        SubgraphFamily::SpanningTree => usize::MAX,
    };
    subgraph_family_discrepancy_with_cap(g, f, family, cap)
}

pub fn subgraph_family_discrepancy_with_cap(
    g: &Graph,
    f: &EdgeColouring,
    family: SubgraphFamily,
    cap: usize,
) -> Result<DiscrepancyReport> {
    f.check_against(g)?;
    if family == SubgraphFamily::SpanningTree {
        return tree_discrepancy_of_colouring(g, f);
    }
    if g.n() > cap {
        return Err(Error::SizeLimit(format!(
            "exhaustive {family:?} enumeration capped at n <= {cap}, got n={}",
            g.n()
        )));
    }
    let member_size = family.member_size(g.n());
    let r = f.r();
    let mut best: Option<(i64, Vec<usize>)> = None;
    let mut counts = vec![0usize; r + 1];
    let mut consider = |edges: &[usize]| {
        counts.iter_mut().for_each(|c| *c = 0);
        for &e in edges {
            counts[f.colour_of(e)] += 1;
        }
        let max_count = *counts.iter().max().unwrap();
        let value = scaled_deviation(r, max_count, member_size);
        if best.as_ref().map_or(true, |(b, _)| value > *b) {
            best = Some((value, edges.to_vec()));
        }
        true
    };
    match family {
        SubgraphFamily::HamiltonCycle => {
            for_each_hamilton_cycle(g, |cycle| consider(&cycle_vertices_to_edges(g, cycle)));
        }
        SubgraphFamily::PerfectMatching => {
            for_each_perfect_matching(g, |edges| {
                let mut sorted = edges.to_vec();
                sorted.sort_unstable();
                consider(&sorted)
            });
        }
        SubgraphFamily::SpanningTree => unreachable!(),
    }
    let (value, witness) = best.ok_or_else(|| {
        Error::EmptyFamily(format!("graph has no {family:?} member to maximise over"))
    })?;
    Ok(DiscrepancyReport {
        family,
        value,
        witness_colouring: None,
        witness_subgraph: witness,
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

    fn path(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect()).unwrap()
    }

    #[test]
    fn spanning_tree_counts_match_cayley() {
        assert_eq!(spanning_trees(&complete(4), 1_000).unwrap().len(), 16);
        assert_eq!(spanning_trees(&complete(5), 1_000).unwrap().len(), 125);
        assert_eq!(spanning_trees(&cycle(4), 1_000).unwrap().len(), 4);
        assert_eq!(spanning_trees(&path(5), 1_000).unwrap().len(), 1);
    }

    #[test]
    fn spanning_tree_budget() {
        assert!(matches!(
            spanning_trees(&complete(5), 100),
            Err(Error::SizeLimit(_))
        ));
        assert!(matches!(
            spanning_trees(&Graph::new(3, vec![(0, 1)]).unwrap(), 100),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn star_discrepancy_is_one() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let f = EdgeColouring::new(2, vec![1, 1, 2]).unwrap();
        let report = tree_discrepancy_of_colouring(&g, &f).unwrap();
        assert_eq!(report.value, 1);
        // A tree's only spanning tree is itself.
        assert_eq!(report.witness_subgraph, vec![0, 1, 2]);
    }

    #[test]
    fn alternating_four_cycle() {
        let g = cycle(4);
        let f = EdgeColouring::new(2, vec![1, 2, 1, 2]).unwrap();
        let formula = tree_discrepancy_of_colouring(&g, &f).unwrap();
        let naive = naive_tree_discrepancy(&g, &f, 1_000).unwrap();
        assert_eq!(formula.value, 1);
        assert_eq!(naive.value, 1);
    }

    #[test]
    fn monochromatic_k4() {
        let g = complete(4);
        let f = EdgeColouring::new(2, vec![1; 6]).unwrap();
        assert_eq!(tree_discrepancy_of_colouring(&g, &f).unwrap().value, 3);
        assert_eq!(naive_tree_discrepancy(&g, &f, 1_000).unwrap().value, 3);
    }

    #[test]
    fn formula_matches_enumeration_on_random_inputs() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(99);
        let mut tested = 0;
        while tested < 100 {
            let n = rng.gen_range(2..=7);
            let p: f64 = rng.gen_range(0.3..0.9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            if !g.is_connected() {
                continue;
            }
            let r = rng.gen_range(2..=3);
            let f = EdgeColouring::random(r, g.m(), &mut rng);
            let formula = tree_discrepancy_of_colouring(&g, &f).unwrap();
            let naive = naive_tree_discrepancy(&g, &f, 100_000).unwrap();
            assert_eq!(formula.value, naive.value, "graph {:?} colours {:?}", g, f);
            tested += 1;
        }
    }

    #[test]
    fn witness_tree_achieves_reported_value() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let g = complete(rng.gen_range(3..=6));
            let f = EdgeColouring::random(rng.gen_range(2..=4), g.m(), &mut rng);
            let report = tree_discrepancy_of_colouring(&g, &f).unwrap();
            assert_eq!(report.witness_subgraph.len(), g.n() - 1);
            let mut counts = vec![0usize; f.r() + 1];
            for &e in &report.witness_subgraph {
                counts[f.colour_of(e)] += 1;
            }
            let max_count = *counts.iter().max().unwrap();
            assert_eq!(
                (f.r() * max_count) as i64 - (g.n() as i64 - 1),
                report.value
            );
        }
    }

    #[test]
    fn max_forest_and_extension() {
        let g = cycle(4);
        let f = EdgeColouring::new(2, vec![1, 1, 1, 2]).unwrap();
        let forest = max_monochromatic_forest(&g, &f, 1).unwrap();
        assert_eq!(forest, vec![0, 1, 2]);
        let tree = extend_forest_to_spanning_tree(&g, &forest).unwrap();
        assert_eq!(tree.len(), 3);

        // A cycle is not a forest.
        assert!(matches!(
            extend_forest_to_spanning_tree(&g, &[0, 1, 2, 3]),
            Err(Error::InvalidStructure(_))
        ));
        let disconnected = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            extend_forest_to_spanning_tree(&disconnected, &[0]),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn exact_values_on_small_graphs() {
        // Path: only one spanning tree; the best colouring still has a
        // majority colour on ceil(3/2) = 2 edges.
        let report = exact_tree_discrepancy(&path(4), 2, 1_000).unwrap();
        assert_eq!(report.value, 1);

        // K_4 with two colours: some colour class always spans a connected
        // subgraph on all four vertices, so the exact value is 3.
        let report = exact_tree_discrepancy(&complete(4), 2, 100_000).unwrap();
        assert_eq!(report.value, 3);
        let f = report.witness_colouring.unwrap();
        assert_eq!(
            tree_discrepancy_of_colouring(&complete(4), &f).unwrap().value,
            3
        );

        let report = exact_tree_discrepancy(&cycle(4), 2, 1_000).unwrap();
        assert_eq!(report.value, 1);
    }

    #[test]
    fn exact_enumeration_respects_budget() {
        assert!(matches!(
            exact_tree_discrepancy(&complete(5), 2, 10),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn exact_matches_unrestricted_minimum() {
        // Cross-check the canonical enumeration against a plain loop over
        // all r^m colourings.
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(8);
        let mut tested = 0;
        while tested < 25 {
            let n = rng.gen_range(2..=5);
            let p: f64 = rng.gen_range(0.4..0.95);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            if !g.is_connected() || g.m() > 8 {
                continue;
            }
            let r = rng.gen_range(2..=3);
            let canonical = exact_tree_discrepancy(&g, r, 1_000_000).unwrap().value;
            let mut minimum = i64::MAX;
            let m = g.m();
            let total = (r as u64).pow(m as u32);
            for code in 0..total {
                let mut c = code;
                let colours: Vec<usize> = (0..m)
                    .map(|_| {
                        let digit = (c % r as u64) as usize + 1;
                        c /= r as u64;
                        digit
                    })
                    .collect();
                let f = EdgeColouring::new(r, colours).unwrap();
                minimum = minimum.min(tree_discrepancy_of_colouring(&g, &f).unwrap().value);
            }
            assert_eq!(canonical, minimum, "graph {:?} r={r}", g);
            tested += 1;
        }
    }

    #[test]
    fn hamilton_family_on_six_cycle() {
        let g = cycle(6);
        let f = EdgeColouring::new(2, vec![1, 2, 1, 2, 1, 2]).unwrap();
        let ham = subgraph_family_discrepancy(&g, &f, SubgraphFamily::HamiltonCycle).unwrap();
        assert_eq!(ham.value, 0); // the unique Hamilton cycle is perfectly split
        assert_eq!(ham.witness_subgraph, vec![0, 1, 2, 3, 4, 5]);

        let pm = subgraph_family_discrepancy(&g, &f, SubgraphFamily::PerfectMatching).unwrap();
        assert_eq!(pm.value, 3); // either matching is monochromatic
    }

    #[test]
    fn perfect_matchings_of_k4() {
        let g = complete(4);
        let mut count = 0;
        for_each_perfect_matching(&g, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 3);
    }

    #[test]
    fn hamilton_cycle_enumeration_counts() {
        // K_5 has (5-1)!/2 = 12 Hamilton cycles.
        let mut count = 0;
        for_each_hamilton_cycle(&complete(5), |_| {
            count += 1;
            true
        });
        assert_eq!(count, 12);
    }

    #[test]
    fn empty_family_errors() {
        let g = path(4);
        let f = EdgeColouring::new(2, vec![1, 1, 1]).unwrap();
        assert!(matches!(
            subgraph_family_discrepancy(&g, &f, SubgraphFamily::HamiltonCycle),
            Err(Error::EmptyFamily(_))
        ));
        let g5 = path(5);
        let f5 = EdgeColouring::new(2, vec![1; 4]).unwrap();
        assert!(matches!(
            subgraph_family_discrepancy(&g5, &f5, SubgraphFamily::PerfectMatching),
            Err(Error::EmptyFamily(_))
        ));
    }

    #[test]
    fn family_cap_is_enforced() {
        let g = complete(14);
        let f = EdgeColouring::new(2, vec![1; g.m()]).unwrap();
        assert!(matches!(
            subgraph_family_discrepancy(&g, &f, SubgraphFamily::HamiltonCycle),
            Err(Error::SizeLimit(_))
        ));
    }
}
