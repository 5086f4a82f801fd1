//! Dual multi-hypergraph pipeline. From an edge-coloured connected graph,
//! build the r-partite hypergraph whose vertices are colour components and
//! whose hyperedges are the per-vertex component tuples, trim its leaves,
//! clean it into loose paths and cycles, and walk those into buckets that
//! map back to a balanced r-separation of the graph.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::colouring::{colour_components, EdgeColouring};
use crate::connectivity::{is_three_connected, vertex_connectivity};
use crate::discrepancy::tree_discrepancy_of_colouring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separation::{is_balanced_separation, BalancedSeparation};

/// The dual hypergraph: one vertex per colour component (stable ids are
/// colour-major, components within a colour ordered by smallest member),
/// one hyperedge per graph vertex.
#[derive(Debug, Clone)]
pub struct DualHypergraph {
    r: usize,
    n: usize,
    /// Stable vertex ids of each part (colour class).
    parts: Vec<Vec<usize>>,
    /// Per hypergraph vertex: its 1-based colour.
    colour: Vec<usize>,
    /// Per hypergraph vertex: the sorted graph vertices it contains.
    members: Vec<Vec<usize>>,
    /// Hyperedge of graph vertex v: one hypergraph vertex per colour,
    /// indexed by colour - 1.
    hyperedges: Vec<Vec<usize>>,
}

impl DualHypergraph {
    pub fn r(&self) -> usize {
        self.r
    }

    /// Hyperedge count, which always equals |V(G)|.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.colour.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn colour_of_vertex(&self, x: usize) -> usize {
        self.colour[x]
    }

    pub fn members_of(&self, x: usize) -> &[usize] {
        &self.members[x]
    }

    /// Degree of a hypergraph vertex; equals its member count because
    /// vertex v contributes hyperedge e_v to each of its components.
    pub fn degree(&self, x: usize) -> usize {
        self.members[x].len()
    }

    pub fn hyperedge(&self, v: usize) -> &[usize] {
        &self.hyperedges[v]
    }

    /// Walk connectivity: two hypergraph vertices are adjacent when some
    /// hyperedge contains both.
    pub fn is_connected(&self) -> bool {
        let nv = self.vertex_count();
        if nv == 0 {
            return true;
        }
        let mut seen_v = vec![false; nv];
        let mut seen_e = vec![false; self.n];
        let mut queue = VecDeque::new();
        seen_v[0] = true;
        queue.push_back(0usize);
        while let Some(x) = queue.pop_front() {
            for &v in &self.members[x] {
                if seen_e[v] {
                    continue;
                }
                seen_e[v] = true;
                for &y in &self.hyperedges[v] {
                    if !seen_v[y] {
                        seen_v[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        seen_v.into_iter().all(|s| s)
    }
}

pub fn build_dual(g: &Graph, f: &EdgeColouring) -> Result<DualHypergraph> {
    let comps = colour_components(g, f)?;
    let n = g.n();
    let r = f.r();
    let mut parts = Vec::with_capacity(r);
    let mut colour = Vec::new();
    let mut members = Vec::new();
    let mut base = Vec::with_capacity(r);
    for (ci, class) in comps.per_colour.iter().enumerate() {
        base.push(colour.len());
        let ids: Vec<usize> = (0..class.components.len())
            .map(|k| colour.len() + k)
            .collect();
        for comp in &class.components {
            colour.push(ci + 1);
            members.push(comp.clone());
        }
        parts.push(ids);
    }
    let mut hyperedges = Vec::with_capacity(n);
    for v in 0..n {
        let mut e = Vec::with_capacity(r);
        for ci in 0..r {
            e.push(base[ci] + comps.per_colour[ci].component_of[v]);
        }
        hyperedges.push(e);
    }
    let h = DualHypergraph {
        r,
        n,
        parts,
        colour,
        members,
        hyperedges,
    };
    debug_assert!(h
        .parts
        .iter()
        .all(|p| p.iter().map(|&x| h.degree(x)).sum::<usize>() == n));
    Ok(h)
}

pub fn dual_is_connected(h: &DualHypergraph) -> bool {
    h.is_connected()
}

/// The trimmed hypergraph: all leaves of H removed (a leaf is a hyperedge
/// with exactly one vertex of degree at least 2, its centre), together
/// with the leaf bookkeeping the later stages need.
#[derive(Debug, Clone)]
pub struct TrimmedDual {
    pub dual: DualHypergraph,
    /// Per hyperedge: is it a leaf of H?
    pub is_leaf: Vec<bool>,
    /// Per hypergraph vertex: does it survive into H0?
    pub in_h0: Vec<bool>,
    /// L(X): leaf hyperedges centred at X.
    pub leaves_of: Vec<Vec<usize>>,
    /// Degree in H0 (0 for deleted vertices).
    pub h0_degree: Vec<usize>,
    /// Surviving (non-leaf) hyperedge ids, ascending.
    pub h0_edges: Vec<usize>,
    /// |L_i| per colour: leaves whose centre lies in part i.
    pub leaf_counts: Vec<usize>,
}

/// Single-pass leaf removal. Leaves of H are detected against H itself,
/// not iterated to a fixpoint.
pub fn trim_to_h0(dual: DualHypergraph) -> TrimmedDual {
    let n = dual.n();
    let nv = dual.vertex_count();
    let mut is_leaf = vec![false; n];
    let mut leaves_of = vec![Vec::new(); nv];
    let mut leaf_counts = vec![0usize; dual.r()];
    for v in 0..n {
        let heavy: Vec<usize> = dual.hyperedges[v]
            .iter()
            .copied()
            .filter(|&x| dual.degree(x) >= 2)
            .collect();
        if heavy.len() == 1 {
            is_leaf[v] = true;
            let centre = heavy[0];
            leaves_of[centre].push(v);
            leaf_counts[dual.colour_of_vertex(centre) - 1] += 1;
        }
    }
    let mut h0_degree = vec![0usize; nv];
    let mut h0_edges = Vec::new();
    for v in 0..n {
        if is_leaf[v] {
            continue;
        }
        h0_edges.push(v);
        for &x in &dual.hyperedges[v] {
            h0_degree[x] += 1;
        }
    }
    // a vertex survives if it keeps a hyperedge or is a leaf centre
    let in_h0: Vec<bool> = (0..nv)
        .map(|x| h0_degree[x] > 0 || !leaves_of[x].is_empty())
        .collect();
    debug_assert_eq!(
        h0_edges.len() + leaf_counts.iter().sum::<usize>(),
        n,
        "every hyperedge is either a leaf or survives"
    );
    TrimmedDual {
        dual,
        is_leaf,
        in_h0,
        leaves_of,
        h0_degree,
        h0_edges,
        leaf_counts,
    }
}

impl TrimmedDual {
    /// Walk connectivity of H0 over its surviving vertices.
    pub fn h0_is_connected(&self) -> bool {
        let nv = self.dual.vertex_count();
        let start = match (0..nv).find(|&x| self.in_h0[x]) {
            Some(x) => x,
            None => return true,
        };
        let mut seen_v = vec![false; nv];
        let mut seen_e = vec![false; self.dual.n()];
        let mut queue = VecDeque::new();
        seen_v[start] = true;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &v in &self.dual.members[x] {
                if self.is_leaf[v] || seen_e[v] {
                    continue;
                }
                seen_e[v] = true;
                for &y in &self.dual.hyperedges[v] {
                    if !seen_v[y] {
                        seen_v[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        (0..nv).all(|x| !self.in_h0[x] || seen_v[x])
    }

    /// Part size restricted to surviving vertices.
    pub fn surviving_in_part(&self, part: usize) -> usize {
        self.dual.parts[part]
            .iter()
            .filter(|&&x| self.in_h0[x])
            .count()
    }
}

/// Result of the cleaning step: hyperedges kept in H1 and the two
/// deletion classes.
#[derive(Debug, Clone)]
pub struct CleanedDual {
    pub kept: Vec<usize>,
    /// Hyperedges with more than two vertices of H0-degree at least 2.
    pub deleted_multicore: Vec<usize>,
    /// Hyperedges containing a vertex of H0-degree at least 3.
    pub deleted_high_degree: Vec<usize>,
    /// Degree in H1 per hypergraph vertex.
    pub h1_degree: Vec<usize>,
}

/// Deletes from H0 every hyperedge with more than 2 vertices of
/// H0-degree >= 2 and every hyperedge containing a vertex of H0-degree
/// >= 3. The deletion counts are bounded by 2d and 6d respectively
/// (8d together); exceeding them is a theory violation.
pub fn clean_to_h1(t: &TrimmedDual, d: i64) -> Result<CleanedDual> {
    let mut kept = Vec::new();
    let mut deleted_multicore = Vec::new();
    let mut deleted_high_degree = Vec::new();
    let mut h1_degree = vec![0usize; t.dual.vertex_count()];
    for &v in &t.h0_edges {
        let heavy = t.dual.hyperedges[v]
            .iter()
            .filter(|&&x| t.h0_degree[x] >= 2)
            .count();
        let high = t.dual.hyperedges[v]
            .iter()
            .any(|&x| t.h0_degree[x] >= 3);
        let multicore = heavy > 2;
        if multicore {
            deleted_multicore.push(v);
        }
        if high {
            deleted_high_degree.push(v);
        }
        if !multicore && !high {
            kept.push(v);
            for &x in &t.dual.hyperedges[v] {
                h1_degree[x] += 1;
            }
        }
    }
    let union = deleted_multicore.len()
        + deleted_high_degree
            .iter()
            .filter(|v| !deleted_multicore.contains(v))
            .count();
    if deleted_multicore.len() as i64 > 2 * d
        || deleted_high_degree.len() as i64 > 6 * d
        || union as i64 > 8 * d
    {
        return Err(Error::TheoryViolation(format!(
            "cleaning removed too many hyperedges for d = {d}: {} multicore (cap {}), {} high-degree (cap {}), {} together (cap {})",
            deleted_multicore.len(),
            2 * d,
            deleted_high_degree.len(),
            6 * d,
            union,
            8 * d
        )));
    }
    debug_assert!(h1_degree.iter().all(|&x| x <= 2));
    Ok(CleanedDual {
        kept,
        deleted_multicore,
        deleted_high_degree,
        h1_degree,
    })
}

/// One loose path or cycle (or isolated vertex) of a max-degree-2
/// sub-hypergraph. The vertex order makes every hyperedge a (cyclically)
/// contiguous interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LooseComponent {
    pub vertex_order: Vec<usize>,
    pub hyperedges: Vec<usize>,
    pub is_cycle: bool,
}

/// Decomposes the sub-hypergraph with hyperedge set `edges` over the
/// non-excluded H0 vertices into loose paths and cycles, including
/// isolated vertices as single-vertex components.
pub fn decompose_loose(
    t: &TrimmedDual,
    edges: &[usize],
    excluded: &[bool],
) -> Result<Vec<LooseComponent>> {
    let nv = t.dual.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &v in edges {
        for &x in &t.dual.hyperedges[v] {
            if excluded[x] {
                return Err(Error::InvalidStructure(format!(
                    "hyperedge {v} touches an excluded vertex"
                )));
            }
            incident[x].push(v);
        }
    }
    if let Some(x) = (0..nv).find(|&x| incident[x].len() > 2) {
        return Err(Error::TheoryViolation(format!(
            "vertex {x} has degree {} in a supposedly loose hypergraph",
            incident[x].len()
        )));
    }
    // union-find over vertices through hyperedges
    let mut uf = crate::union_find::UnionFind::new(nv);
    for &v in edges {
        let e = &t.dual.hyperedges[v];
        for w in e.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut roots: Vec<(usize, usize)> = Vec::new(); // (root, min graph vertex)
    let mut comp_vertices: std::collections::HashMap<usize, Vec<usize>> =
        std::collections::HashMap::new();
    for x in 0..nv {
        if excluded[x] || !t.in_h0[x] {
            continue;
        }
        let root = uf.find(x);
        comp_vertices.entry(root).or_default().push(x);
    }
    for (&root, verts) in &comp_vertices {
        let key = verts
            .iter()
            .map(|&x| t.dual.members_of(x)[0])
            .min()
            .unwrap();
        roots.push((root, key));
    }
    // components may tie on their smallest graph vertex (the same graph
    // vertex can sit in components of different colours); break ties by
    // smallest hypergraph vertex id to stay deterministic
    roots.sort_by_key(|&(root, key)| (key, comp_vertices[&root][0]));

    let mut result = Vec::new();
    for (root, _) in roots {
        let verts = &comp_vertices[&root];
        let mut comp_edges: Vec<usize> = verts
            .iter()
            .flat_map(|&x| incident[x].iter().copied())
            .collect();
        comp_edges.sort_unstable();
        comp_edges.dedup();
        if comp_edges.is_empty() {
            debug_assert_eq!(verts.len(), 1);
            result.push(LooseComponent {
                vertex_order: verts.clone(),
                hyperedges: Vec::new(),
                is_cycle: false,
            });
            continue;
        }
        result.push(walk_component(t, &comp_edges, &incident)?);
    }
    Ok(result)
}

/// Orders one path or cycle component. Paths start from the endpoint
/// hyperedge with the smaller id; cycles start from their smallest
/// hyperedge id and head toward its smaller connector.
fn walk_component(
    t: &TrimmedDual,
    comp_edges: &[usize],
    incident: &[Vec<usize>],
) -> Result<LooseComponent> {
    let degree_within = |x: usize| incident[x].len();
    let connectors_of = |v: usize| -> Vec<usize> {
        t.dual.hyperedges[v]
            .iter()
            .copied()
            .filter(|&x| degree_within(x) == 2)
            .collect()
    };
    for &v in comp_edges {
        if connectors_of(v).len() > 2 {
            return Err(Error::TheoryViolation(format!(
                "hyperedge {v} has more than two shared vertices in a loose component"
            )));
        }
    }
    let endpoints: Vec<usize> = comp_edges
        .iter()
        .copied()
        .filter(|&v| connectors_of(v).len() <= 1)
        .collect();
    let is_cycle = endpoints.is_empty();
    let start = if is_cycle {
        comp_edges[0]
    } else {
        *endpoints.iter().min().unwrap()
    };
    let mut order = Vec::new();
    let mut used_edges = vec![false; comp_edges.len()];
    let edge_pos = |v: usize| comp_edges.binary_search(&v).unwrap();
    let mut hyperedges_in_order = Vec::new();
    let mut cur = start;
    let mut entry_connector: Option<usize> = None;
    // a cycle's start hyperedge keeps its second connector out of the
    // inner run: the walk re-emits it as the final hyperedge's exit
    let mut closing_connector: Option<usize> = None;
    loop {
        used_edges[edge_pos(cur)] = true;
        hyperedges_in_order.push(cur);
        let conns = connectors_of(cur);
        // exit connector: unvisited one; for the cycle start, the smaller
        let exit = conns
            .iter()
            .copied()
            .filter(|&c| Some(c) != entry_connector)
            .min();
        if is_cycle && cur == start {
            closing_connector = conns.iter().copied().find(|&c| Some(c) != exit);
        }
        let mut inner: Vec<usize> = t.dual.hyperedges[cur]
            .iter()
            .copied()
            .filter(|&x| {
                Some(x) != entry_connector
                    && Some(x) != exit
                    && !(cur == start && Some(x) == closing_connector)
            })
            .collect();
        inner.sort_unstable();
        order.extend(inner);
        let exit = match exit {
            Some(c) => c,
            None => break, // path ended
        };
        // for cycles the walk closes when the exit connector leads back
        let next = incident[exit].iter().copied().find(|&v| v != cur);
        order.push(exit);
        match next {
            Some(v) if !used_edges[edge_pos(v)] => {
                entry_connector = Some(exit);
                cur = v;
            }
            _ => break,
        }
    }
    if used_edges.iter().any(|&u| !u) {
        return Err(Error::TheoryViolation(
            "loose component walk did not reach every hyperedge".into(),
        ));
    }
    debug_assert!(intervals_ok(t, &order, &hyperedges_in_order, is_cycle));
    Ok(LooseComponent {
        vertex_order: order,
        hyperedges: hyperedges_in_order,
        is_cycle,
    })
}

#[cfg(debug_assertions)]
fn intervals_ok(t: &TrimmedDual, order: &[usize], edges: &[usize], is_cycle: bool) -> bool {
    let pos: std::collections::HashMap<usize, usize> =
        order.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    for &v in edges {
        let mut ps: Vec<usize> = t.dual.hyperedges[v].iter().map(|&x| pos[&x]).collect();
        ps.sort_unstable();
        let contiguous = ps.windows(2).all(|w| w[1] == w[0] + 1);
        let wraps = is_cycle && {
            // rotate: gaps must all be 1 except one gap of len order.len()-ps.len()+1
            let mut gaps: Vec<usize> = ps
                .windows(2)
                .map(|w| w[1] - w[0])
                .chain(std::iter::once(order.len() + ps[0] - ps[ps.len() - 1]))
                .collect();
            gaps.sort_unstable();
            gaps[..gaps.len() - 1].iter().all(|&g| g == 1)
        };
        if !contiguous && !wraps {
            return false;
        }
    }
    true
}

#[cfg(not(debug_assertions))]
fn intervals_ok(_: &TrimmedDual, _: &[usize], _: &[usize], _: bool) -> bool {
    true
}

/// Outcome of one internal consistency check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum CheckOutcome {
    Holds,
    NotApplicable(String),
    Violated(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub outcome: CheckOutcome,
}

/// One intermediate hypergraph of the pipeline, as a list of hyperedges
/// (each a sorted tuple of hypergraph vertex ids) plus the graph vertex
/// each hyperedge came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphSnapshot {
    pub stage: String,
    /// Graph vertex owning each hyperedge, parallel to `hyperedges`.
    pub owners: Vec<usize>,
    pub hyperedges: Vec<Vec<usize>>,
}

fn stage_snapshot(stage: &str, owners: Vec<usize>, dual: &DualHypergraph) -> HypergraphSnapshot {
    let hyperedges = owners.iter().map(|&v| dual.hyperedge(v).to_vec()).collect();
    HypergraphSnapshot {
        stage: stage.into(),
        owners,
        hyperedges,
    }
}

/// Everything the extraction pipeline decided and verified, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractionTrace {
    pub n: usize,
    pub r: usize,
    pub colouring_value: i64,
    pub d_used: i64,
    pub two_connected: bool,
    pub three_connected: bool,
    pub part_sizes: Vec<usize>,
    pub h0_edge_count: usize,
    pub leaf_counts: Vec<usize>,
    pub deleted_multicore: Vec<usize>,
    pub deleted_high_degree: Vec<usize>,
    pub heavy_vertices: Vec<usize>,
    pub heavy_touched: Vec<usize>,
    pub component_count: usize,
    pub cut_hyperedges: Vec<usize>,
    pub cut_events: usize,
    pub bucket_sizes_before_rebalance: Vec<usize>,
    pub rebalance_moves: usize,
    pub final_bucket_size: usize,
    pub separator_size: usize,
    /// The dual, trimmed, and cleaned hypergraphs, in pipeline order.
    pub stages: Vec<HypergraphSnapshot>,
    pub checks: Vec<Check>,
}

impl ExtractionTrace {
    pub fn check_named(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.outcome)
    }

    pub fn violations(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, CheckOutcome::Violated(_)))
            .collect()
    }

    fn summary(&self) -> String {
        format!(
            "n={} r={} d={} |E(H0)|={} leaves={:?} buckets={:?} |S|={} checks=[{}]",
            self.n,
            self.r,
            self.d_used,
            self.h0_edge_count,
            self.leaf_counts,
            self.bucket_sizes_before_rebalance,
            self.separator_size,
            self.checks
                .iter()
                .map(|c| match &c.outcome {
                    CheckOutcome::Holds => format!("{}: holds", c.name),
                    CheckOutcome::NotApplicable(why) => format!("{}: n/a ({why})", c.name),
                    CheckOutcome::Violated(what) => format!("{}: VIOLATED ({what})", c.name),
                })
                .collect::<Vec<_>>()
                .join("; ")
        )
    }
}

/// A completed extraction: the separation plus its full trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extraction {
    pub separation: BalancedSeparation,
    pub trace: ExtractionTrace,
}

fn ceil_sqrt(x: u64) -> u64 {
    let mut s = (x as f64).sqrt() as u64;
    while s * s < x {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= x {
        s -= 1;
    }
    s
}

struct CheckList {
    checks: Vec<Check>,
}

impl CheckList {
    fn record(&mut self, name: &str, outcome: CheckOutcome) -> Result<()> {
        let violated = matches!(outcome, CheckOutcome::Violated(_));
        let detail = match &outcome {
            CheckOutcome::Violated(v) => v.clone(),
            _ => String::new(),
        };
        self.checks.push(Check {
            name: name.into(),
            outcome,
        });
        if violated {
            Err(Error::TheoryViolation(format!("{name}: {detail}")))
        } else {
            Ok(())
        }
    }

    fn holds_if(&mut self, name: &str, ok: bool, detail: impl Fn() -> String) -> Result<()> {
        if ok {
            self.record(name, CheckOutcome::Holds)
        } else {
            self.record(name, CheckOutcome::Violated(detail()))
        }
    }
}

/// Runs the whole pipeline on a connected coloured graph and returns a
/// valid balanced r-separation together with the extraction trace. The
/// discrepancy parameter is the supplied colouring's own value, floored
/// at ceil(sqrt(rn)) when the graph is not 3-connected. Bound violations
/// abort with a theory-violation error carrying the trace summary.
pub fn extract_separator(g: &Graph, f: &EdgeColouring) -> Result<Extraction> {
    if !g.is_connected() {
        return Err(Error::Precondition(
            "separator extraction needs a connected graph".into(),
        ));
    }
    if g.n() < f.r() {
        return Err(Error::Precondition(format!(
            "need at least r = {} vertices, got {}",
            f.r(),
            g.n()
        )));
    }
    let n = g.n();
    let r = f.r();
    let colouring_value = tree_discrepancy_of_colouring(g, f)?.value;
    let two_connected = vertex_connectivity(g)? >= 2;
    let three_connected = is_three_connected(g)?;
    let d = if three_connected {
        colouring_value
    } else {
        colouring_value.max(ceil_sqrt((r * n) as u64) as i64)
    };

    let dual = build_dual(g, f)?;
    let part_sizes: Vec<usize> = dual.parts().iter().map(|p| p.len()).collect();
    let mut checks = CheckList { checks: Vec::new() };
    let ni = n as i64;
    let ri = r as i64;

    let mut trace = ExtractionTrace {
        n,
        r,
        colouring_value,
        d_used: d,
        two_connected,
        three_connected,
        part_sizes: part_sizes.clone(),
        h0_edge_count: 0,
        leaf_counts: Vec::new(),
        deleted_multicore: Vec::new(),
        deleted_high_degree: Vec::new(),
        heavy_vertices: Vec::new(),
        heavy_touched: Vec::new(),
        component_count: 0,
        cut_hyperedges: Vec::new(),
        cut_events: 0,
        bucket_sizes_before_rebalance: Vec::new(),
        rebalance_moves: 0,
        final_bucket_size: 0,
        separator_size: 0,
        stages: Vec::new(),
        checks: Vec::new(),
    };
    trace
        .stages
        .push(stage_snapshot("dual", (0..n).collect(), &dual));

    let fail = |trace: &mut ExtractionTrace, checks: CheckList, e: Error| -> Error {
        trace.checks = checks.checks;
        match e {
            Error::TheoryViolation(msg) => {
                Error::TheoryViolation(format!("{msg}; trace: {}", trace.summary()))
            }
            other => other,
        }
    };

    macro_rules! run {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(err) => return Err(fail(&mut trace, checks, err)),
            }
        };
    }

    run!(checks.holds_if("dual-connected", dual.is_connected(), || {
        "dual of a connected graph must be connected".into()
    }));
    // every part holds at least ([r-1]n - d)/r components; structural
    // consequence of d being at least the colouring's value
    run!(checks.holds_if(
        "part-size-bound",
        part_sizes.iter().all(|&c| ri * c as i64 >= (ri - 1) * ni - d),
        || format!("part sizes {part_sizes:?} below ((r-1)n - d)/r"),
    ));

    let t = trim_to_h0(dual);
    trace.h0_edge_count = t.h0_edges.len();
    trace.leaf_counts = t.leaf_counts.clone();
    trace
        .stages
        .push(stage_snapshot("trimmed", t.h0_edges.clone(), &t.dual));

    run!(checks.holds_if("trimmed-connected", t.h0_is_connected(), || {
        "H0 of a connected graph must be connected".into()
    }));
    run!(checks.holds_if(
        "leaf-count-identity",
        t.h0_edges.len() + t.leaf_counts.iter().sum::<usize>() == n,
        || "hyperedges and leaves must add back to n".into(),
    ));
    // per part: |L_i| = n - |E(H0)| - |C_i| + |C_i ∩ V(H0)|
    for i in 0..r {
        let lhs = t.leaf_counts[i] as i64;
        let rhs = ni - t.h0_edges.len() as i64 - part_sizes[i] as i64
            + t.surviving_in_part(i) as i64;
        run!(checks.holds_if("leaf-part-identity", lhs == rhs, || format!(
            "part {}: |L_i| = {lhs} but counting gives {rhs}",
            i + 1
        )));
    }

    // two-connected graphs: every surviving hyperedge keeps >= 2 vertices
    // of H0-degree >= 2
    if two_connected {
        let ok = t.h0_edges.iter().all(|&v| {
            t.dual.hyperedges[v]
                .iter()
                .filter(|&&x| t.h0_degree[x] >= 2)
                .count()
                >= 2
        });
        run!(checks.holds_if("core-degree-pair", ok, || {
            "a trimmed hyperedge of a 2-connected graph kept fewer than 2 branching vertices"
                .into()
        }));
    } else {
        run!(checks.record(
            "core-degree-pair",
            CheckOutcome::NotApplicable("graph is not 2-connected".into()),
        ));
    }

    // three-connected graphs with all parts above one component: leaf
    // centres branch at least three ways in H0
    if three_connected && part_sizes.iter().all(|&c| c > 1) {
        let ok = (0..t.dual.vertex_count())
            .all(|x| t.leaves_of[x].is_empty() || t.h0_degree[x] >= 3);
        run!(checks.holds_if("leaf-centre-branching", ok, || {
            "a leaf centre has H0-degree below 3 despite 3-connectivity".into()
        }));
    } else {
        let why = if !three_connected {
            "graph is not 3-connected"
        } else {
            "some colour class forms a single component"
        };
        run!(checks.record(
            "leaf-centre-branching",
            CheckOutcome::NotApplicable(why.into()),
        ));
    }

    // leaf balance per part: |L_i| <= (n+d)/r, provable only when part i
    // has no isolated H0 vertex
    for i in 0..r {
        let isolated = t.dual.parts[i]
            .iter()
            .any(|&x| t.in_h0[x] && t.h0_degree[x] == 0);
        if isolated {
            run!(checks.record(
                "leaf-balance",
                CheckOutcome::NotApplicable(format!(
                    "part {} contains an isolated trimmed vertex",
                    i + 1
                )),
            ));
        } else {
            run!(checks.holds_if(
                "leaf-balance",
                ri * t.leaf_counts[i] as i64 <= ni + d,
                || format!(
                    "part {}: r|L_i| = {} exceeds n + d = {}",
                    i + 1,
                    ri * t.leaf_counts[i] as i64,
                    ni + d
                ),
            ));
        }
    }

    let cleaned = run!(clean_to_h1(&t, d));
    trace.deleted_multicore = cleaned.deleted_multicore.clone();
    trace.deleted_high_degree = cleaned.deleted_high_degree.clone();
    trace
        .stages
        .push(stage_snapshot("cleaned", cleaned.kept.clone(), &t.dual));
    run!(checks.record("cleaning-bounds", CheckOutcome::Holds));
    {
        // structural claims about H1
        let max_deg = cleaned.h1_degree.iter().copied().max().unwrap_or(0);
        run!(checks.holds_if("h1-max-degree", max_deg <= 2, || format!(
            "H1 has a vertex of degree {max_deg}"
        )));
        let ok = (0..t.dual.vertex_count())
            .all(|x| t.h0_degree[x] < 3 || cleaned.h1_degree[x] == 0);
        run!(checks.holds_if("h1-isolates-branchers", ok, || {
            "a vertex of H0-degree >= 3 kept hyperedges in H1".into()
        }));
        let ok = cleaned.kept.iter().all(|&v| {
            t.dual.hyperedges[v]
                .iter()
                .filter(|&&x| cleaned.h1_degree[x] == 1)
                .count()
                >= r.saturating_sub(2)
        });
        run!(checks.holds_if("h1-loose-slack", ok, || {
            "an H1 hyperedge has fewer than r-2 degree-1 vertices".into()
        }));
    }

    // heavy vertices: more than d/r leaves each
    let heavy: Vec<usize> = (0..t.dual.vertex_count())
        .filter(|&x| ri * t.leaves_of[x].len() as i64 > d)
        .collect();
    trace.heavy_vertices = heavy.clone();
    if d > 0 {
        run!(checks.holds_if(
            "heavy-set-size",
            (heavy.len() as i64) * d < ni * ri,
            || format!("{} heavy vertices with d = {d}", heavy.len()),
        ));
    } else {
        run!(checks.record(
            "heavy-set-size",
            CheckOutcome::NotApplicable("d = 0".into()),
        ));
    }

    let mut in_heavy = vec![false; t.dual.vertex_count()];
    for &x in &heavy {
        in_heavy[x] = true;
    }

    // buckets as hyperedge-id sets; F collects everything else
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); r];
    let mut fence: Vec<usize> = Vec::new();
    fence.extend(cleaned.deleted_multicore.iter().copied());
    fence.extend(
        cleaned
            .deleted_high_degree
            .iter()
            .filter(|v| !cleaned.deleted_multicore.contains(v)),
    );

    // route the leaves of heavy vertices to their part's bucket
    for &x in &heavy {
        let part = t.dual.colour_of_vertex(x) - 1;
        buckets[part].extend(t.leaves_of[x].iter().copied());
    }

    // H1 hyperedges touching heavy vertices move to F
    let mut h2_edges = Vec::new();
    for &v in &cleaned.kept {
        if t.dual.hyperedges[v].iter().any(|&x| in_heavy[x]) {
            trace.heavy_touched.push(v);
            fence.push(v);
        } else {
            h2_edges.push(v);
        }
    }
    run!(checks.holds_if(
        "heavy-touch-bound",
        trace.heavy_touched.len() <= 2 * heavy.len(),
        || format!(
            "{} hyperedges touch {} heavy vertices",
            trace.heavy_touched.len(),
            heavy.len()
        ),
    ));
    if three_connected && part_sizes.iter().all(|&c| c > 1) {
        run!(checks.holds_if(
            "heavy-touch-empty",
            trace.heavy_touched.is_empty(),
            || format!(
                "3-connected graph still had {} heavy-touching hyperedges",
                trace.heavy_touched.len()
            ),
        ));
    } else {
        run!(checks.record(
            "heavy-touch-empty",
            CheckOutcome::NotApplicable("needs 3-connectivity and no single-component part".into()),
        ));
    }

    let components = run!(decompose_loose(&t, &h2_edges, &in_heavy));
    trace.component_count = components.len();

    // FIFO walk: consume components, cutting when a bucket fills
    let cap = ni + d + 2 * ri;
    let mut queue: VecDeque<LooseComponent> = components.into();
    while let Some(comp) = queue.pop_front() {
        let bucket = (0..r).find(|&i| ri * buckets[i].len() as i64 <= ni);
        let bucket = match bucket {
            Some(i) => i,
            None => {
                run!(checks.record(
                    "bucket-exists",
                    CheckOutcome::Violated(format!(
                        "no bucket at or below n/r; sizes {:?}",
                        buckets.iter().map(|b| b.len()).collect::<Vec<_>>()
                    )),
                ));
                unreachable!()
            }
        };
        // remaining vertex count per hyperedge of this component
        let mut remaining: std::collections::HashMap<usize, usize> = comp
            .hyperedges
            .iter()
            .map(|&v| (v, t.dual.hyperedges[v].len()))
            .collect();
        let mut size = buckets[bucket].len() as i64;
        let mut taken_edges: Vec<usize> = Vec::new();
        let mut taken_leaves: Vec<usize> = Vec::new();
        let mut visited = 0usize;
        for (idx, &x) in comp.vertex_order.iter().enumerate() {
            let mut completed = Vec::new();
            for &v in &comp.hyperedges {
                if let Some(c) = remaining.get_mut(&v) {
                    if t.dual.hyperedges[v].contains(&x) {
                        *c -= 1;
                        if *c == 0 {
                            completed.push(v);
                        }
                    }
                }
            }
            let add = (t.leaves_of[x].len() + completed.len()) as i64;
            if ri * (size + add) <= cap {
                size += add;
                taken_leaves.extend(t.leaves_of[x].iter().copied());
                taken_edges.extend(completed);
                visited = idx + 1;
            } else {
                // roll the counters back for the unvisited vertex
                for &v in &comp.hyperedges {
                    if let Some(c) = remaining.get_mut(&v) {
                        if t.dual.hyperedges[v].contains(&x) {
                            *c += 1;
                        }
                    }
                }
                break;
            }
        }
        run!(checks.holds_if("prefix-progress", visited >= 1, || format!(
            "first vertex of a component did not fit into bucket {}",
            bucket + 1
        )));
        buckets[bucket].extend(taken_leaves);
        buckets[bucket].extend(taken_edges.iter().copied());
        if visited == comp.vertex_order.len() {
            continue;
        }
        // saturation: the refusal must leave the bucket above n/r
        run!(checks.holds_if(
            "saturation",
            ri * buckets[bucket].len() as i64 > ni,
            || format!(
                "cut a component while bucket {} held only {} hyperedges",
                bucket + 1,
                buckets[bucket].len()
            ),
        ));
        trace.cut_events += 1;
        // hyperedges meeting both prefix and suffix go to F
        let mut cut = Vec::new();
        let mut suffix_edges = Vec::new();
        for &v in &comp.hyperedges {
            match remaining.get(&v) {
                None => {}
                Some(&c) if c == t.dual.hyperedges[v].len() => suffix_edges.push(v),
                Some(&c) if c == 0 => {} // already taken
                Some(_) => cut.push(v),
            }
        }
        run!(checks.holds_if("cut-width", cut.len() <= 2, || format!(
            "{} hyperedges straddle one cut",
            cut.len()
        )));
        trace.cut_hyperedges.extend(cut.iter().copied());
        fence.extend(cut);
        queue.push_back(LooseComponent {
            vertex_order: comp.vertex_order[visited..].to_vec(),
            hyperedges: suffix_edges,
            is_cycle: false,
        });
    }
    run!(checks.holds_if(
        "cut-total",
        trace.cut_hyperedges.len() <= 2 * r,
        || format!(
            "{} cut hyperedges exceed the 2r budget",
            trace.cut_hyperedges.len()
        ),
    ));
    trace.bucket_sizes_before_rebalance = buckets.iter().map(|b| b.len()).collect();
    for (i, b) in buckets.iter().enumerate() {
        run!(checks.holds_if(
            "bucket-cap",
            ri * b.len() as i64 <= cap,
            || format!(
                "bucket {} holds {} hyperedges, above (n+d)/r + 2",
                i + 1,
                b.len()
            ),
        ));
    }

    // partition: every hyperedge of H lands in exactly one bucket or F
    {
        let mut count = vec![0usize; n];
        for b in &buckets {
            for &v in b {
                count[v] += 1;
            }
        }
        for &v in &fence {
            count[v] += 1;
        }
        run!(checks.holds_if(
            "partition",
            count.iter().all(|&c| c == 1),
            || {
                let bad: Vec<usize> = (0..n).filter(|&v| count[v] != 1).collect();
                format!("hyperedges {bad:?} are not covered exactly once")
            },
        ));
    }

    // cross-bucket hyperedges must share no hypergraph vertices
    {
        let mut vertex_bucket: Vec<Option<usize>> = vec![None; t.dual.vertex_count()];
        let mut clash = None;
        'outer: for (i, b) in buckets.iter().enumerate() {
            for &v in b {
                for &x in &t.dual.hyperedges[v] {
                    match vertex_bucket[x] {
                        Some(j) if j != i => {
                            clash = Some((x, j, i));
                            break 'outer;
                        }
                        _ => vertex_bucket[x] = Some(i),
                    }
                }
            }
        }
        run!(checks.holds_if("bucket-disjoint", clash.is_none(), || {
            let (x, a, b) = clash.unwrap();
            format!("hypergraph vertex {x} appears in buckets {} and {}", a + 1, b + 1)
        }));
    }

    // rebalance to the smallest bucket: biggest buckets shed their
    // largest hyperedge ids into F
    let target = buckets.iter().map(|b| b.len()).min().unwrap_or(0);
    trace.final_bucket_size = target;
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(buckets[i].len()));
    for i in order {
        buckets[i].sort_unstable();
        while buckets[i].len() > target {
            let v = buckets[i].pop().unwrap();
            fence.push(v);
            trace.rebalance_moves += 1;
        }
    }
    fence.sort_unstable();
    trace.separator_size = fence.len();

    let parts: Vec<Vec<usize>> = buckets;
    let separation = BalancedSeparation::new(r, parts, fence);
    let report = is_balanced_separation(g, &separation);
    run!(checks.holds_if("separation-valid", report.valid, || report
        .violations
        .join("; ")));

    trace.checks = checks.checks;
    Ok(Extraction { separation, trace })
}
