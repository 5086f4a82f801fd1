//! Balanced r-separations: validation, exact separation number at desk
//! scale, lower bounds from connectivity and isoperimetry, the layered
//! construction, and Hamming-ball boundaries.

use std::collections::HashSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{mask_to_vertices, Graph, MaskAdjacency};
use crate::isoperimetry::isoperimetric_constant;

/// Default vertex cap for the exhaustive separation-number search.
pub const DEFAULT_SEPARATION_CAP: usize = 16;

/// A partition V = V_1 ∪ ... ∪ V_r ∪ S with equal part sizes and no
/// edges between distinct parts.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BalancedSeparation {
    pub r: usize,
    pub parts: Vec<Vec<usize>>,
    pub separator: Vec<usize>,
}

impl BalancedSeparation {
    pub fn new(r: usize, parts: Vec<Vec<usize>>, separator: Vec<usize>) -> Self {
        BalancedSeparation {
            r,
            parts,
            separator,
        }
    }

    pub fn separator_size(&self) -> usize {
        self.separator.len()
    }

    pub fn has_empty_parts(&self) -> bool {
        self.parts.iter().any(|p| p.is_empty())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

/// Checks the three separation invariants; never errors, every problem
/// is reported as a violation string.
pub fn is_balanced_separation(g: &Graph, sep: &BalancedSeparation) -> ValidationReport {
    let mut violations = Vec::new();
    if sep.r < 1 {
        violations.push("r must be at least 1".into());
    }
    if sep.parts.len() != sep.r {
        violations.push(format!(
            "expected {} parts, got {}",
            sep.r,
            sep.parts.len()
        ));
    }
    let n = g.n();
    let mut owner = vec![None; n];
    let mut assign = |v: usize, label: String, owner: &mut Vec<Option<String>>| {
        if v >= n {
            violations.push(format!("vertex {v} out of range in {label}"));
        } else if let Some(prev) = &owner[v] {
            violations.push(format!("vertex {v} appears in both {prev} and {label}"));
        } else {
            owner[v] = Some(label);
        }
    };
    for (i, part) in sep.parts.iter().enumerate() {
        for &v in part {
            assign(v, format!("part {}", i + 1), &mut owner);
        }
    }
    for &v in &sep.separator {
        assign(v, "separator".into(), &mut owner);
    }
    for (v, o) in owner.iter().enumerate() {
        if o.is_none() {
            violations.push(format!("vertex {v} is not covered"));
        }
    }
    if let Some(first) = sep.parts.first() {
        for (i, part) in sep.parts.iter().enumerate() {
            if part.len() != first.len() {
                violations.push(format!(
                    "part {} has size {}, expected {}",
                    i + 1,
                    part.len(),
                    first.len()
                ));
            }
        }
    }
    // cross edges between distinct parts
    let mut part_of = vec![usize::MAX; n];
    for (i, part) in sep.parts.iter().enumerate() {
        for &v in part {
            if v < n {
                part_of[v] = i;
            }
        }
    }
    for &(u, v) in g.edges() {
        let (a, b) = (part_of[u], part_of[v]);
        if a != usize::MAX && b != usize::MAX && a != b {
            violations.push(format!(
                "edge ({u}, {v}) joins part {} to part {}",
                a + 1,
                b + 1
            ));
        }
    }
    ValidationReport {
        valid: violations.is_empty(),
        violations,
    }
}

/// Decides whether `sizes` can be split into r groups each summing to
/// `target`, backtracking over sizes in descending order with a memo of
/// failed (index, loads) states. Returns a group index per size.
fn group_components(sizes: &[usize], r: usize, target: usize) -> Option<Vec<usize>> {
    let total: usize = sizes.iter().sum();
    if total != r * target {
        return None;
    }
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));
    let mut loads = vec![0usize; r];
    let mut assign = vec![usize::MAX; sizes.len()];
    let mut failed: HashSet<(usize, Vec<usize>)> = HashSet::new();

    fn rec(
        idx: usize,
        order: &[usize],
        sizes: &[usize],
        target: usize,
        loads: &mut Vec<usize>,
        assign: &mut Vec<usize>,
        failed: &mut HashSet<(usize, Vec<usize>)>,
    ) -> bool {
        if idx == order.len() {
            return loads.iter().all(|&l| l == target);
        }
        let mut key = loads.clone();
        key.sort_unstable();
        if failed.contains(&(idx, key.clone())) {
            return false;
        }
        let s = sizes[order[idx]];
        let mut tried = HashSet::new();
        for bin in 0..loads.len() {
            // bins with equal load are interchangeable
            if loads[bin] + s > target || !tried.insert(loads[bin]) {
                continue;
            }
            loads[bin] += s;
            assign[order[idx]] = bin;
            if rec(idx + 1, order, sizes, target, loads, assign, failed) {
                return true;
            }
            loads[bin] -= s;
            assign[order[idx]] = usize::MAX;
        }
        failed.insert((idx, key));
        false
    }

    if rec(0, &order, sizes, target, &mut loads, &mut assign, &mut failed) {
        Some(assign)
    } else {
        None
    }
}

/// Tries to complete separator `sep_mask` into a balanced r-separation,
/// returning the witness if the components of G - S group evenly.
fn try_separator(
    adj: &MaskAdjacency,
    n: usize,
    r: usize,
    sep_mask: u64,
) -> Option<BalancedSeparation> {
    let s = sep_mask.count_ones() as usize;
    debug_assert_eq!((n - s) % r, 0);
    let target = (n - s) / r;
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let rest = full & !sep_mask;
    let mut comp_masks = Vec::new();
    let mut remaining = rest;
    while remaining != 0 {
        let v = remaining.trailing_zeros() as usize;
        let comp = adj.component(v, rest);
        comp_masks.push(comp);
        remaining &= !comp;
    }
    let sizes: Vec<usize> = comp_masks.iter().map(|m| m.count_ones() as usize).collect();
    if sizes.iter().any(|&c| c > target) {
        return None;
    }
    let assign = group_components(&sizes, r, target)?;
    let mut parts = vec![Vec::new(); r];
    for (c, &bin) in assign.iter().enumerate() {
        parts[bin].extend(mask_to_vertices(comp_masks[c]));
    }
    for part in &mut parts {
        part.sort_unstable();
    }
    Some(BalancedSeparation::new(
        r,
        parts,
        mask_to_vertices(sep_mask),
    ))
}

pub fn exact_separation_number(g: &Graph, r: usize) -> Result<(usize, BalancedSeparation)> {
    exact_separation_number_with_cap(g, r, DEFAULT_SEPARATION_CAP)
}

/// Minimum |S| over all balanced r-separations, by ascending-size
/// enumeration of separator candidates. Sizes with (n - |S|) not
/// divisible by r are skipped; empty parts are allowed, so S = V always
/// works and the search terminates.
pub fn exact_separation_number_with_cap(
    g: &Graph,
    r: usize,
    cap: usize,
) -> Result<(usize, BalancedSeparation)> {
    if r < 1 {
        return Err(Error::InvalidSpec("separation needs r >= 1".into()));
    }
    let n = g.n();
    if n > cap {
        return Err(Error::SizeLimit(format!(
            "exact separation number on {n} vertices exceeds the cap of {cap}"
        )));
    }
    let adj = MaskAdjacency::build(g)?;
    for s in 0..=n {
        if (n - s) % r != 0 {
            continue;
        }
        let mut found: Option<BalancedSeparation> = None;
        enumerate_subsets(n, s, &mut |mask| {
            if let Some(sep) = try_separator(&adj, n, r, mask) {
                found = Some(sep);
                false
            } else {
                true
            }
        });
        if let Some(sep) = found {
            return Ok((s, sep));
        }
    }
    unreachable!("S = V is always a valid separation");
}

/// Calls `visit` on every n-bit mask with exactly k bits set, in
/// ascending numeric order, until it returns false.
pub(crate) fn enumerate_subsets(n: usize, k: usize, visit: &mut impl FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    if k == 0 {
        visit(0);
        return;
    }
    let mut mask: u64 = (1u64 << k) - 1;
    let limit: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    loop {
        if !visit(mask) {
            return;
        }
        // Gosper's hack: next mask of equal popcount
        let c = mask & mask.wrapping_neg();
        let rr = mask + c;
        let next = (((rr ^ mask) >> 2) / c) | rr;
        if next > limit || rr > limit {
            return;
        }
        mask = next;
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationBounds {
    /// s_r is at least the vertex connectivity.
    pub kappa_bound: usize,
    /// Smallest s with r*s >= iota*(n-s); applies because a nonempty part
    /// has its whole neighbourhood inside S, and the all-empty-parts
    /// separation has s = n which is never smaller.
    pub iso_bound: usize,
}

impl SeparationBounds {
    pub fn best(&self) -> usize {
        self.kappa_bound.max(self.iso_bound)
    }
}

pub fn separation_lower_bounds(g: &Graph, r: usize) -> Result<SeparationBounds> {
    if r < 2 {
        return Err(Error::InvalidSpec("lower bounds need r >= 2".into()));
    }
    let kappa_bound = vertex_connectivity(g)?;
    if !g.is_connected() {
        return Ok(SeparationBounds {
            kappa_bound: 0,
            iso_bound: 0,
        });
    }
    let iota = isoperimetric_constant(g)?.value;
    let n = Ratio::from_integer(g.n() as i64);
    let r_rat = Ratio::from_integer(r as i64);
    // smallest integer s with s*(r + iota) >= iota*n
    let iso_bound = (iota * n / (r_rat + iota)).ceil().to_integer() as usize;
    Ok(SeparationBounds {
        kappa_bound,
        iso_bound,
    })
}

/// Builds a balanced r-separation from a layering in which every edge
/// stays within a layer or joins consecutive layers. With D the largest
/// layer size, the separator has at most 3rD vertices; when 2D >= n/r
/// that bound is vacuous and the trivial separation S = V is returned.
pub fn layered_separator(
    g: &Graph,
    layers: &[Vec<usize>],
    r: usize,
) -> Result<BalancedSeparation> {
    if r < 2 {
        return Err(Error::InvalidSpec("layered separator needs r >= 2".into()));
    }
    let n = g.n();
    let mut layer_of = vec![usize::MAX; n];
    for (i, layer) in layers.iter().enumerate() {
        for &v in layer {
            if v >= n {
                return Err(Error::InvalidLayering(format!("vertex {v} out of range")));
            }
            if layer_of[v] != usize::MAX {
                return Err(Error::InvalidLayering(format!(
                    "vertex {v} appears in layers {} and {i}",
                    layer_of[v]
                )));
            }
            layer_of[v] = i;
        }
    }
    if let Some(v) = layer_of.iter().position(|&l| l == usize::MAX) {
        return Err(Error::InvalidLayering(format!(
            "vertex {v} is missing from the layering"
        )));
    }
    for &(u, v) in g.edges() {
        let (a, b) = (layer_of[u], layer_of[v]);
        if a.abs_diff(b) > 1 {
            return Err(Error::InvalidLayering(format!(
                "edge ({u}, {v}) skips from layer {} to layer {}",
                a.min(b),
                a.max(b)
            )));
        }
    }
    let d = layers.iter().map(|l| l.len()).max().unwrap_or(0);
    if 2 * d * r >= n {
        // bound 3rD is at least n; the whole vertex set is a separator
        let mut all: Vec<usize> = (0..n).collect();
        all.sort_unstable();
        return Ok(BalancedSeparation::new(r, vec![Vec::new(); r], all));
    }
    // sigma: layers concatenated, ascending inside each layer
    let mut sigma = Vec::with_capacity(n);
    for layer in layers {
        let mut sorted = layer.clone();
        sorted.sort_unstable();
        sigma.extend(sorted);
    }
    // cut layers: those containing the vertices at positions floor(jn/r)
    let mut cut_layers = Vec::new();
    for j in 1..r {
        let pos = j * n / r;
        cut_layers.push(layer_of[sigma[pos - 1]]);
    }
    cut_layers.dedup();
    if cut_layers.len() != r - 1 {
        return Err(Error::TheoryViolation(format!(
            "expected {} distinct cut layers, found {}",
            r - 1,
            cut_layers.len()
        )));
    }
    let is_cut = |l: usize| cut_layers.contains(&l);
    let mut separator: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); r];
    let mut group = 0;
    for (i, layer) in layers.iter().enumerate() {
        if is_cut(i) {
            separator.extend(layer.iter().copied());
            group += 1;
        } else {
            let mut sorted = layer.clone();
            sorted.sort_unstable();
            groups[group].extend(sorted);
        }
    }
    // each group misses at most two cut layers' worth of vertices from
    // its sigma window, whose length is between floor(n/r) and ceil(n/r)
    for grp in &groups {
        if r * grp.len() > n + r - 1 || grp.len() + 2 * d < n / r {
            return Err(Error::TheoryViolation(format!(
                "group size {} outside [n/r - 2D, n/r] = [{} - {}, {}]",
                grp.len(),
                n / r,
                2 * d,
                n / r
            )));
        }
    }
    let target = groups.iter().map(|g| g.len()).min().unwrap();
    for grp in &mut groups {
        // groups keep sigma order, so the tail holds the largest positions
        while grp.len() > target {
            separator.push(grp.pop().unwrap());
        }
        grp.sort_unstable();
    }
    separator.sort_unstable();
    let sep = BalancedSeparation::new(r, groups, separator);
    let check = is_balanced_separation(g, &sep);
    if !check.valid {
        return Err(Error::TheoryViolation(format!(
            "layered construction produced an invalid separation: {}",
            check.violations.join("; ")
        )));
    }
    if sep.separator_size() > 3 * r * d {
        return Err(Error::TheoryViolation(format!(
            "layered separator has {} vertices, above the 3rD bound {}",
            sep.separator_size(),
            3 * r * d
        )));
    }
    Ok(sep)
}

/// Vertex boundary |N(B)| of the canonical Hamming ball with `size`
/// vertices in the d-cube: full layers, then a prefix of the next layer
/// in lexicographic order on the sorted element lists (masks whose
/// lowest bits are set come first). That prefix shape keeps the upper
/// shadow small, which is what the boundary minimisation needs.
pub fn hamming_ball_boundary(d: usize, size: usize) -> Result<usize> {
    let n = 1usize
        .checked_shl(d as u32)
        .ok_or_else(|| Error::SizeLimit("dimension too large".into()))?;
    if d == 0 || d > 20 || size == 0 || size > n {
        return Err(Error::InvalidSpec(format!(
            "need 1 <= size <= 2^d, got d = {d}, size = {size}"
        )));
    }
    let mut by_layer: Vec<Vec<usize>> = vec![Vec::new(); d + 1];
    for v in 0..n {
        by_layer[v.count_ones() as usize].push(v);
    }
    for layer in &mut by_layer {
        // lex on element lists: first differing bit decides, lower set wins
        layer.sort_by(|&a, &b| {
            let diff = a ^ b;
            if diff == 0 {
                return std::cmp::Ordering::Equal;
            }
            let low = diff & diff.wrapping_neg();
            if a & low != 0 {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
    }
    let mut ball = HashSet::with_capacity(size);
    'fill: for layer in &by_layer {
        for &v in layer {
            if ball.len() == size {
                break 'fill;
            }
            ball.insert(v);
        }
    }
    let mut boundary = HashSet::new();
    for &v in &ball {
        for bit in 0..d {
            let w = v ^ (1 << bit);
            if !ball.contains(&w) {
                boundary.insert(w);
            }
        }
    }
    Ok(boundary.len())
}

/// Exhaustive minimum vertex boundary over all `size`-subsets of the
/// d-cube. Only feasible for d <= 4.
pub fn min_cube_boundary_brute(d: usize, size: usize) -> Result<usize> {
    if d == 0 || d > 4 {
        return Err(Error::SizeLimit(
            "brute-force cube boundary needs d <= 4".into(),
        ));
    }
    let n = 1usize << d;
    if size == 0 || size > n {
        return Err(Error::InvalidSpec(format!(
            "need 1 <= size <= 2^d, got d = {d}, size = {size}"
        )));
    }
    let mut best = usize::MAX;
    enumerate_subsets(n, size, &mut |mask| {
        let mut boundary: u64 = 0;
        let mut inside = mask;
        while inside != 0 {
            let v = inside.trailing_zeros() as usize;
            inside &= inside - 1;
            for bit in 0..d {
                let w = v ^ (1 << bit);
                if mask & (1 << w) == 0 {
                    boundary |= 1 << w;
                }
            }
        }
        best = best.min(boundary.count_ones() as usize);
        true
    });
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_clique_cycle, gen_complete, gen_grid, gen_hypercube};

    fn path(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    #[test]
    fn validation_catches_each_invariant() {
        let g = path(4);
        let good = BalancedSeparation::new(2, vec![vec![0], vec![3]], vec![1, 2]);
        assert!(is_balanced_separation(&g, &good).valid);

        let unequal = BalancedSeparation::new(2, vec![vec![0], vec![2, 3]], vec![1]);
        let report = is_balanced_separation(&g, &unequal);
        assert!(!report.valid);
        assert!(report.violations.iter().any(|v| v.contains("size")));

        let k4 = gen_complete(4).unwrap();
        let crossing = BalancedSeparation::new(2, vec![vec![0], vec![1]], vec![2, 3]);
        let report = is_balanced_separation(&k4, &crossing);
        assert!(!report.valid);
        assert!(report.violations.iter().any(|v| v.contains("edge (0, 1)")));

        let missing = BalancedSeparation::new(2, vec![vec![0], vec![3]], vec![1]);
        assert!(!is_balanced_separation(&g, &missing).valid);
    }

    #[test]
    fn exact_values_on_small_graphs() {
        let (s, witness) = exact_separation_number(&path(4), 2).unwrap();
        assert_eq!(s, 2);
        assert!(is_balanced_separation(&path(4), &witness).valid);

        // nonempty parts of a complete graph always touch
        let (s, witness) = exact_separation_number(&gen_complete(4).unwrap(), 2).unwrap();
        assert_eq!(s, 4);
        assert!(witness.has_empty_parts());

        let (s, _) = exact_separation_number(&cycle(6), 2).unwrap();
        assert_eq!(s, 2);

        // P_5 with r=2: |S| = 1 leaves 4 vertices in components {2, 2}
        let (s, _) = exact_separation_number(&path(5), 2).unwrap();
        assert_eq!(s, 1);
    }

    #[test]
    fn cap_is_enforced() {
        let g = gen_grid(5, 2).unwrap();
        assert!(exact_separation_number(&g, 2).unwrap_err().is_budget());
        assert!(exact_separation_number_with_cap(&g, 2, 25).is_ok());
    }

    #[test]
    fn clique_cycle_separation_number() {
        let cc = gen_clique_cycle(2, 3, &[0, 1]).unwrap();
        assert_eq!(cc.graph.n(), 24);
        let (s, witness) = exact_separation_number_with_cap(&cc.graph, 2, 24).unwrap();
        assert_eq!(s, 4);
        assert!(is_balanced_separation(&cc.graph, &witness).valid);
    }

    #[test]
    fn lower_bounds_match_known_graphs() {
        let b = separation_lower_bounds(&cycle(6), 2).unwrap();
        assert_eq!(b.kappa_bound, 2);
        let (s, _) = exact_separation_number(&cycle(6), 2).unwrap();
        assert!(s >= b.best());

        let q3 = gen_hypercube(3).unwrap();
        let b = separation_lower_bounds(&q3, 2).unwrap();
        let (s, _) = exact_separation_number(&q3, 2).unwrap();
        assert!(s >= b.best());
        assert!(b.iso_bound >= 1);

        let two = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let b = separation_lower_bounds(&two, 2).unwrap();
        assert_eq!((b.kappa_bound, b.iso_bound), (0, 0));
    }

    #[test]
    fn bounds_never_exceed_exact_value() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..40 {
            let n = rng.gen_range(3..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            for r in 2..=3 {
                let bounds = separation_lower_bounds(&g, r).unwrap();
                let (s, witness) = exact_separation_number(&g, r).unwrap();
                assert!(
                    s >= bounds.best(),
                    "bounds {bounds:?} exceed exact {s} on {g:?}"
                );
                assert!(is_balanced_separation(&g, &witness).valid);
            }
        }
    }

    #[test]
    fn layered_separator_on_path() {
        let g = path(9);
        let layers: Vec<Vec<usize>> = (0..9).map(|v| vec![v]).collect();
        let sep = layered_separator(&g, &layers, 2).unwrap();
        assert!(is_balanced_separation(&g, &sep).valid);
        assert!(sep.separator_size() <= 6);
        assert!(sep.separator_size() >= 1);
        assert_eq!(sep.parts[0].len(), sep.parts[1].len());
    }

    #[test]
    fn layered_separator_trivial_clause() {
        // 4x4 grid with row layers: D = 4, 2D >= n/r, so S = V
        let g = gen_grid(4, 2).unwrap();
        let layers: Vec<Vec<usize>> = (0..4).map(|row| (0..4).map(|c| 4 * row + c).collect()).collect();
        let sep = layered_separator(&g, &layers, 2).unwrap();
        assert_eq!(sep.separator_size(), 16);
        assert!(sep.has_empty_parts());
        assert!(is_balanced_separation(&g, &sep).valid);
    }

    #[test]
    fn layered_separator_rejects_skipping_edges() {
        let g = path(4);
        let layers = vec![vec![0], vec![2], vec![1], vec![3]];
        assert!(matches!(
            layered_separator(&g, &layers, 2),
            Err(Error::InvalidLayering(_))
        ));
    }

    #[test]
    fn hamming_ball_known_boundaries() {
        assert_eq!(hamming_ball_boundary(3, 1).unwrap(), 3);
        assert_eq!(hamming_ball_boundary(3, 4).unwrap(), 3);
        assert_eq!(hamming_ball_boundary(3, 8).unwrap(), 0);
        // complement of the closed neighbourhood of an edge also has
        // boundary 6, and the lex-prefix ball matches it
        assert_eq!(hamming_ball_boundary(4, 8).unwrap(), 6);
        assert!(hamming_ball_boundary(3, 0).is_err());
    }

    #[test]
    fn hamming_ball_matches_brute_force() {
        for d in 1..=4 {
            let n = 1usize << d;
            for size in 1..=n {
                assert_eq!(
                    hamming_ball_boundary(d, size).unwrap(),
                    min_cube_boundary_brute(d, size).unwrap(),
                    "d = {d}, size = {size}"
                );
            }
        }
    }

    #[test]
    fn grouping_handles_multisets() {
        assert!(group_components(&[3, 3, 2, 2, 2], 2, 6).is_some());
        assert!(group_components(&[5, 3, 3], 2, 6).is_none());
        assert!(group_components(&[], 2, 0).is_some());
        assert!(group_components(&[4, 2, 2, 3, 1], 3, 4).is_some());
        assert!(group_components(&[4, 3, 3, 2], 3, 4).is_none());
    }
}
