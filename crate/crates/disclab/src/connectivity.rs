use crate::error::{Error, Result};
use crate::graph::Graph;

/// Exact vertex connectivity.
///
/// Menger via unit-capacity max-flow on the split digraph: kappa(G) is the
/// minimum over non-adjacent pairs (s,t) of the maximum number of internally
/// vertex-disjoint s-t paths. Complete graphs have no non-adjacent pair and
/// take the usual convention kappa(K_n) = n-1. Disconnected graphs return 0.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    if g.n() < 2 {
        return Err(Error::Precondition(format!(
            "vertex connectivity needs n >= 2, got n={}",
            g.n()
        )));
    }
    if !g.is_connected() {
        return Ok(0);
    }
    if g.is_complete() {
        return Ok(g.n() - 1);
    }
    let mut best = g.n() - 1;
    for s in 0..g.n() {
        for t in s + 1..g.n() {
            if g.has_edge(s, t) {
                continue;
            }
            best = best.min(local_connectivity(g, s, t, best));
        }
    }
    Ok(best)
}

pub fn is_three_connected(g: &Graph) -> Result<bool> {
    Ok(g.n() >= 4 && vertex_connectivity(g)? >= 3)
}

/// Max number of internally vertex-disjoint s-t paths, stopping early once
/// `cap` paths are found (callers only need min(flow, cap)).
fn local_connectivity(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    // Split digraph: vertex v becomes v_in = 2v, v_out = 2v+1.
    // v_in -> v_out carries capacity 1 (the vertex itself); each undirected
    // edge {u,v} becomes u_out -> v_in and v_out -> u_in with capacity 1.
    // Source is s_out, sink is t_in; s and t have no internal capacity arc
    // crossing the cut, so only interior vertices are cut candidates.
    let nodes = 2 * g.n();
    let mut flow = FlowNetwork::new(nodes);
    for v in 0..g.n() {
        if v != s && v != t {
            flow.add_arc(2 * v, 2 * v + 1, 1);
        }
    }
    for &(u, v) in g.edges() {
        flow.add_arc(2 * u + 1, 2 * v, 1);
        flow.add_arc(2 * v + 1, 2 * u, 1);
    }
    flow.max_flow(2 * s + 1, 2 * t, cap)
}

struct Arc {
    to: usize,
    cap: i32,
}

struct FlowNetwork {
    arcs: Vec<Arc>,
    head: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            head: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i32) {
        self.head[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.head[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// Edmonds-Karp, stopping once `limit` units have been pushed.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut total = 0;
        while total < limit {
            // BFS for a shortest augmenting path.
            let mut prev_arc = vec![usize::MAX; self.head.len()];
            let mut queue = std::collections::VecDeque::from([s]);
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            'bfs: while let Some(v) = queue.pop_front() {
                for &a in &self.head[v] {
                    let arc = &self.arcs[a];
                    if arc.cap > 0 && !seen[arc.to] {
                        seen[arc.to] = true;
                        prev_arc[arc.to] = a;
                        if arc.to == t {
                            break 'bfs;
                        }
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            // All capacities are 1, so each augmentation pushes one unit.
            let mut v = t;
            while v != s {
                let a = prev_arc[v];
                self.arcs[a].cap -= 1;
                self.arcs[a ^ 1].cap += 1;
                v = self.arcs[a ^ 1].to;
            }
            total += 1;
        }
        total
    }
}
