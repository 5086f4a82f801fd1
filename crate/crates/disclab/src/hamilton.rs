//! Hamilton-cycle machinery: constructive Dirac search by rotation and
//! extension, backtracking with forced edge sets, monochromatic matchings
//! extracted by cherry removal, and depth-first long paths in expanding
//! bipartite graphs.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separation::enumerate_subsets;

/// Backtracking Hamilton searches stay below this vertex count.
pub const DEFAULT_HAMILTON_SEARCH_CAP: usize = 14;
/// Brute-force expansion checks stay below this side size.
pub const EXPANSION_CHECK_CAP: usize = 12;

/// Finds a Hamilton cycle. With minimum degree at least n/2 the
/// rotation-extension argument builds one directly at any size; below
/// that threshold a capped backtracking search decides existence.
pub fn dirac_hamilton(g: &Graph) -> Result<Option<Vec<usize>>> {
    dirac_hamilton_with_cap(g, DEFAULT_HAMILTON_SEARCH_CAP)
}

pub fn dirac_hamilton_with_cap(g: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n < 3 {
        return Ok(None);
    }
    if 2 * g.min_degree() >= n {
        let cycle = rotation_extension(g).ok_or_else(|| {
            Error::TheoryViolation(
                "rotation-extension failed despite minimum degree n/2".into(),
            )
        })?;
        debug_assert!(is_hamilton_cycle(g, &cycle));
        return Ok(Some(cycle));
    }
    if n > cap {
        return Err(Error::SizeLimit(format!(
            "backtracking Hamilton search capped at {cap} vertices, got {n}"
        )));
    }
    let mut found = None;
    crate::discrepancy::for_each_hamilton_cycle(g, |cycle| {
        found = Some(cycle.to_vec());
        false
    });
    Ok(found)
}

/// Constructive proof of Dirac's theorem: grow a path greedily at both
/// ends, close it into a cycle through a crossing neighbour pair, and
/// absorb an outside vertex; the structure grows strictly, so this
/// terminates with a Hamilton cycle whenever the degree bound holds.
fn rotation_extension(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut path = vec![0usize];
    let mut on_path = vec![false; n];
    on_path[0] = true;
    loop {
        // extend the head, then the tail, by smallest fresh neighbours
        loop {
            let head = *path.first().unwrap();
            match g.neighbours(head).iter().find(|&&w| !on_path[w]) {
                Some(&w) => {
                    path.insert(0, w);
                    on_path[w] = true;
                }
                None => break,
            }
        }
        loop {
            let tail = *path.last().unwrap();
            match g.neighbours(tail).iter().find(|&&w| !on_path[w]) {
                Some(&w) => {
                    path.push(w);
                    on_path[w] = true;
                }
                None => break,
            }
        }
        let t = path.len();
        // close into a cycle: direct edge or the smallest crossing pair
        let head = path[0];
        let tail = path[t - 1];
        let cycle: Vec<usize> = if g.has_edge(head, tail) {
            path.clone()
        } else {
            let mut rotated = None;
            for i in 0..t - 1 {
                if g.has_edge(tail, path[i]) && g.has_edge(head, path[i + 1]) {
                    // v_0..v_i v_t..v_{i+1} traversed as a cycle
                    let mut c = path[..=i].to_vec();
                    c.extend(path[i + 1..].iter().rev());
                    rotated = Some(c);
                    break;
                }
            }
            rotated?
        };
        if t == n {
            return Some(cycle);
        }
        // absorb the smallest outside vertex adjacent to the cycle
        let (w, at) = (0..n)
            .filter(|&w| !on_path[w])
            .find_map(|w| {
                cycle
                    .iter()
                    .position(|&c| g.has_edge(w, c))
                    .map(|pos| (w, pos))
            })?;
        let mut new_path = vec![w];
        new_path.extend(cycle[at..].iter().copied());
        new_path.extend(cycle[..at].iter().copied());
        on_path[w] = true;
        path = new_path;
    }
}

fn is_hamilton_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    if cycle.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    cycle
        .windows(2)
        .all(|w| g.has_edge(w[0], w[1]))
        && g.has_edge(cycle[n - 1], cycle[0])
}

/// Finds a Hamilton cycle using every forced edge, or reports that none
/// exists. When 2δ(g) >= n + |forced| and the forced edges all lie in
/// the graph, existence is guaranteed, so an empty search outcome under
/// those hypotheses is a theory violation.
pub fn hamilton_with_forced_edges(
    g: &Graph,
    forced: &[(usize, usize)],
) -> Result<Option<Vec<usize>>> {
    hamilton_with_forced_edges_with_cap(g, forced, DEFAULT_HAMILTON_SEARCH_CAP)
}

pub fn hamilton_with_forced_edges_with_cap(
    g: &Graph,
    forced: &[(usize, usize)],
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > cap {
        return Err(Error::SizeLimit(format!(
            "forced-edge Hamilton search capped at {cap} vertices, got {n}"
        )));
    }
    // forced edges must form a path-forest: max degree 2, no cycles
    let mut forced_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut uf = crate::union_find::UnionFind::new(n);
    let mut seen = std::collections::HashSet::new();
    for &(u, v) in forced {
        if u >= n || v >= n || u == v {
            return Err(Error::InvalidStructure(format!(
                "forced edge ({u}, {v}) is not a valid vertex pair"
            )));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidStructure(format!(
                "forced edge ({u}, {v}) repeats"
            )));
        }
        if !uf.union(u, v) {
            return Err(Error::InvalidStructure(
                "forced edges close a cycle".into(),
            ));
        }
        forced_at[u].push(v);
        forced_at[v].push(u);
        if forced_at[u].len() > 2 || forced_at[v].len() > 2 {
            return Err(Error::InvalidStructure(
                "forced edges meet three times at one vertex".into(),
            ));
        }
    }
    if n < 3 {
        return Ok(None);
    }
    let guaranteed = 2 * g.min_degree() >= n + forced.len()
        && forced.iter().all(|&(u, v)| g.has_edge(u, v));

    let mut path = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    let found = forced_search(g, &forced_at, &mut path, &mut used, 0, forced.len());
    if found.is_none() && guaranteed {
        return Err(Error::TheoryViolation(format!(
            "no Hamilton cycle through {} forced edges despite 2δ >= n + |forced|",
            forced.len()
        )));
    }
    Ok(found)
}

/// Backtracking over cycle orders anchored at vertex 0. A middle vertex
/// entering on a non-forced edge must leave along its pending forced
/// edge; constraints at vertex 0 are settled by the closing edge, so the
/// leaf check compares the count of forced edges used against the total.
fn forced_search(
    g: &Graph,
    forced_at: &[Vec<usize>],
    path: &mut Vec<usize>,
    used: &mut Vec<bool>,
    forced_used: usize,
    forced_total: usize,
) -> Option<Vec<usize>> {
    let n = g.n();
    let u = *path.last().unwrap();
    if path.len() == n {
        if !g.has_edge(u, 0) {
            return None;
        }
        let closing_forced = usize::from(forced_at[u].contains(&0));
        if forced_used + closing_forced != forced_total {
            return None;
        }
        return Some(path.clone());
    }
    let entry = if path.len() >= 2 {
        Some(path[path.len() - 2])
    } else {
        None
    };
    let candidates: Vec<usize> = if entry.is_some() {
        // forced edges at u other than the entry must all ride the exit
        let pending: Vec<usize> = forced_at[u]
            .iter()
            .copied()
            .filter(|&w| Some(w) != entry)
            .collect();
        match pending.as_slice() {
            [] => g.neighbours(u).iter().copied().filter(|&w| !used[w]).collect(),
            [w] if !used[*w] => vec![*w],
            _ => return None,
        }
    } else if forced_at[u].len() == 2 {
        // both forced edges at the anchor: one is the first step, the
        // other the closing edge
        forced_at[u].iter().copied().filter(|&w| !used[w]).collect()
    } else {
        g.neighbours(u).iter().copied().filter(|&w| !used[w]).collect()
    };
    for w in candidates {
        let step_forced = usize::from(forced_at[u].contains(&w));
        path.push(w);
        used[w] = true;
        if let Some(c) = forced_search(g, forced_at, path, used, forced_used + step_forced, forced_total) {
            return Some(c);
        }
        path.pop();
        used[w] = false;
    }
    None
}

/// What a depth-first long-path search found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub path: Vec<usize>,
    /// Length in edges.
    pub length: usize,
    /// Result of the brute-force expansion check, when side size allowed it.
    pub hypothesis_checked: Option<bool>,
    pub side_size: usize,
}

/// Depth-first search recording the deepest recursion stack, restarting
/// from the lowest unvisited vertex; the stack is always a simple path.
/// On a bipartite graph with equal sides where every two k-sets on
/// opposite sides span an edge, the deepest path has length at least
/// 2·side - 4k; that bound is asserted whenever the brute-force check
/// (run for sides up to 12) confirms the expansion.
pub fn dfs_long_path(g: &Graph, k: usize) -> Result<PathReport> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidStructure("empty graph has no paths".into()));
    }
    if k == 0 {
        return Err(Error::InvalidSpec("expansion parameter must be positive".into()));
    }
    let side = bipartition(g)?;
    let x_side: Vec<usize> = (0..n).filter(|&v| side[v] == 0).collect();
    let y_side: Vec<usize> = (0..n).filter(|&v| side[v] == 1).collect();
    if x_side.len() != y_side.len() {
        return Err(Error::InvalidStructure(format!(
            "sides must match: {} vs {}",
            x_side.len(),
            y_side.len()
        )));
    }
    let n_side = x_side.len();

    let mut visited = vec![false; n];
    let mut best: Vec<usize> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        stack.push(root);
        if stack.len() > best.len() {
            best = stack.clone();
        }
        dfs_deepest(g, &mut visited, &mut stack, &mut best);
        stack.pop();
    }
    let hypothesis_checked = if n_side <= EXPANSION_CHECK_CAP {
        Some(expansion_holds(g, &x_side, &y_side, k))
    } else {
        None
    };
    let length = best.len() - 1;
    if hypothesis_checked == Some(true) && 2 * n_side >= 4 * k && length < 2 * n_side - 4 * k {
        return Err(Error::TheoryViolation(format!(
            "expansion verified but deepest path has length {length} < {}",
            2 * n_side - 4 * k
        )));
    }
    Ok(PathReport {
        path: best,
        length,
        hypothesis_checked,
        side_size: n_side,
    })
}

fn dfs_deepest(g: &Graph, visited: &mut Vec<bool>, stack: &mut Vec<usize>, best: &mut Vec<usize>) {
    let u = *stack.last().unwrap();
    for &w in g.neighbours(u) {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        stack.push(w);
        if stack.len() > best.len() {
            *best = stack.clone();
        }
        dfs_deepest(g, visited, stack, best);
        stack.pop();
    }
}

/// Two-colours the graph by BFS, smallest vertex of each component on
/// side 0. Errors when an odd cycle appears.
fn bipartition(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbours(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return Err(Error::InvalidStructure(
                        "graph is not bipartite".into(),
                    ));
                }
            }
        }
    }
    Ok(side)
}

/// Brute check: every k-subset of one side must see all but fewer than
/// k vertices of the other.
fn expansion_holds(g: &Graph, x_side: &[usize], y_side: &[usize], k: usize) -> bool {
    let n_side = x_side.len();
    if k > n_side {
        return true; // no k-sets exist
    }
    let mut ok = true;
    for (from, to) in [(x_side, y_side), (y_side, x_side)] {
        let to_index: std::collections::HashMap<usize, usize> =
            to.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let nbr_masks: Vec<u64> = from
            .iter()
            .map(|&v| {
                let mut m = 0u64;
                for &w in g.neighbours(v) {
                    m |= 1 << to_index[&w];
                }
                m
            })
            .collect();
        enumerate_subsets(n_side, k, &mut |mask| {
            let mut union = 0u64;
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                union |= nbr_masks[i];
            }
            if n_side - (union.count_ones() as usize) >= k {
                ok = false;
                return false;
            }
            true
        });
        if !ok {
            return false;
        }
    }
    ok
}

/// How a monochromatic matching was assembled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingTrace {
    /// Removed bichromatic cherries as (x, y, z) with f(xy) != f(yz).
    pub cherries: Vec<[usize; 3]>,
    /// Steps actually performed.
    pub ell: usize,
    /// Step budget floor(2·alpha·n/3).
    pub k: usize,
    /// Per colour: cherry edges of that colour.
    pub a_sets: Vec<Vec<(usize, usize)>>,
    /// Per colour: alternating-cycle matching edges of that colour.
    pub b_sets: Vec<Vec<(usize, usize)>>,
    /// True when the residual graph was monochromatic.
    pub residual_monochromatic: bool,
}

/// A monochromatic matching with the procedure trace and its size slack
/// against (1/(2r) + alpha/(3r))·n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchingResult {
    pub colour: usize,
    pub matching: Vec<(usize, usize)>,
    pub slack: Ratio<i64>,
    pub trace: MatchingTrace,
}

/// Extracts a monochromatic matching of size about (1/(2r) + α/(3r))n
/// from any r-coloured graph with minimum degree (1/2 + α)n: remove up
/// to k = floor(2αn/3) bichromatic cherries (always picking the lowest
/// middle vertex, then the lowest endpoints); if the residue goes
/// monochromatic, alternate edges of its Hamilton cycle; otherwise
/// combine the best colour's cherry edges with that colour's share of
/// the alternating matching.
pub fn monochromatic_matching(
    g: &Graph,
    f: &EdgeColouring,
    alpha: Ratio<i64>,
) -> Result<MatchingResult> {
    f.check_against(g)?;
    if alpha <= Ratio::new(0, 1) || alpha >= Ratio::new(1, 5) {
        return Err(Error::InvalidSpec(format!(
            "alpha must lie strictly between 0 and 1/5, got {alpha}"
        )));
    }
    let n = g.n();
    let r = f.r();
    let need = (Ratio::new(1, 2) + alpha) * Ratio::new(n as i64, 1);
    if Ratio::new(g.min_degree() as i64, 1) < need {
        return Err(Error::DegreeCondition(format!(
            "minimum degree {} below (1/2 + {alpha})·{n}",
            g.min_degree()
        )));
    }
    let k = ((Ratio::new(2, 3) * alpha * Ratio::new(n as i64, 1)).floor())
        .to_integer() as usize;

    let edge_colour = |u: usize, v: usize| f.colours()[g.edge_index(u, v).unwrap()];
    let mut alive = vec![true; n];
    let mut cherries: Vec<[usize; 3]> = Vec::new();
    while cherries.len() < k {
        let mut found = None;
        'outer: for y in 0..n {
            if !alive[y] {
                continue;
            }
            let nbrs: Vec<usize> = g
                .neighbours(y)
                .iter()
                .copied()
                .filter(|&w| alive[w])
                .collect();
            for (xi, &x) in nbrs.iter().enumerate() {
                for &z in &nbrs[xi + 1..] {
                    if edge_colour(x, y) != edge_colour(y, z) {
                        found = Some([x, y, z]);
                        break 'outer;
                    }
                }
            }
        }
        match found {
            Some([x, y, z]) => {
                alive[x] = false;
                alive[y] = false;
                alive[z] = false;
                cherries.push([x, y, z]);
            }
            None => break,
        }
    }
    let ell = cherries.len();

    let residual: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let (sub, map) = g.induced_subgraph(&residual);
    let residual_colours: std::collections::BTreeSet<usize> = sub
        .edges()
        .iter()
        .map(|&(a, b)| edge_colour(map[a], map[b]))
        .collect();
    let residual_monochromatic = residual_colours.len() <= 1;

    // alternating matching from the residual Hamilton cycle (the degree
    // bound survives each cherry removal, so Dirac applies throughout)
    let alt: Vec<(usize, usize)> = if sub.n() >= 3 {
        let cycle = dirac_hamilton(&sub)?.ok_or_else(|| {
            Error::TheoryViolation("residual graph lost its Dirac Hamilton cycle".into())
        })?;
        (0..sub.n() / 2)
            .map(|j| {
                let (a, b) = (map[cycle[2 * j]], map[cycle[2 * j + 1]]);
                (a.min(b), a.max(b))
            })
            .collect()
    } else if sub.n() == 2 && sub.has_edge(0, 1) {
        vec![(map[0].min(map[1]), map[0].max(map[1]))]
    } else {
        Vec::new()
    };

    let mut a_sets: Vec<Vec<(usize, usize)>> = vec![Vec::new(); r];
    for &[x, y, z] in &cherries {
        a_sets[edge_colour(x, y) - 1].push((x.min(y), x.max(y)));
        a_sets[edge_colour(y, z) - 1].push((y.min(z), y.max(z)));
    }
    let mut b_sets: Vec<Vec<(usize, usize)>> = vec![Vec::new(); r];
    for &(u, v) in &alt {
        b_sets[edge_colour(u, v) - 1].push((u, v));
    }

    let (colour, matching) = if residual_monochromatic {
        let colour = residual_colours.iter().next().copied().unwrap_or(1);
        (colour, alt.clone())
    } else {
        debug_assert_eq!(ell, k, "a polychromatic residue means the budget ran out");
        let best = (0..r)
            .max_by_key(|&i| (a_sets[i].len() + b_sets[i].len(), std::cmp::Reverse(i)))
            .unwrap();
        let mut m = a_sets[best].clone();
        m.extend(b_sets[best].iter().copied());
        (best + 1, m)
    };

    // the output must be a monochromatic matching
    let mut touched = vec![false; n];
    for &(u, v) in &matching {
        assert!(g.has_edge(u, v));
        assert_eq!(edge_colour(u, v), colour);
        assert!(!touched[u] && !touched[v], "matching edges must be disjoint");
        touched[u] = true;
        touched[v] = true;
    }

    let bound = (Ratio::new(1, 2 * r as i64) + alpha / Ratio::new(3 * r as i64, 1))
        * Ratio::new(n as i64, 1);
    let slack = Ratio::new(matching.len() as i64, 1) - bound;
    if slack < Ratio::new(-2, 1) {
        eprintln!(
            "warning: matching of size {} misses the ({}/{})-bound by {}",
            matching.len(),
            bound.numer(),
            bound.denom(),
            -slack
        );
    }
    Ok(MatchingResult {
        colour,
        matching,
        slack,
        trace: MatchingTrace {
            cherries,
            ell,
            k,
            a_sets,
            b_sets,
            residual_monochromatic,
        },
    })
}
