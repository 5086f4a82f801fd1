use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Edges keep their insertion order and are addressed by index everywhere in
/// this crate (colourings, forests, witnesses are all edge-index lists).
/// Endpoints are stored normalised as `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    index: HashMap<(usize, usize), usize>,
}

/// On-disk form: `{"n": 4, "edges": [[0,1],[1,2]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut normalised = Vec::with_capacity(edges.len());
        let mut index = HashMap::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for (pos, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) out of range for n={n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            let e = (a.min(b), a.max(b));
            if index.insert(e, pos).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({},{})",
                    e.0, e.1
                )));
            }
            normalised.push(e);
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalised,
            adj,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.index.contains_key(&(u.min(v), u.max(v)))
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn is_regular(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Vertex sets of the connected components, each sorted, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced on `verts` (which must be distinct). Returns the new
    /// graph together with the map from new vertex ids to original ids;
    /// `verts` is taken in sorted order, so new id `i` is the i-th smallest.
    pub fn induced_subgraph(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = verts.to_vec();
        map.sort_unstable();
        map.dedup();
        let back: HashMap<usize, usize> = map.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if let (Some(&a), Some(&b)) = (back.get(&u), back.get(&v)) {
                edges.push((a, b));
            }
        }
        let g = Graph::new(map.len(), edges).expect("induced subgraph of a valid graph is valid");
        (g, map)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.clone(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        Graph::new(json.n, json.edges.clone())
    }

    /// Graphviz DOT output; when a colouring is supplied each edge carries a
    /// color attribute from a fixed palette (colours beyond the palette cycle).
    pub fn to_dot(&self, colouring: Option<&crate::colouring::EdgeColouring>) -> String {
        const PALETTE: [&str; 8] = [
            "red", "blue", "forestgreen", "orange", "purple", "brown", "cyan3", "magenta",
        ];
        let mut out = String::from("graph g {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            match colouring {
                Some(f) => {
                    let c = f.colour_of(e);
                    out.push_str(&format!(
                        "  {u} -- {v} [color={} label={c}];\n",
                        PALETTE[(c - 1) % PALETTE.len()]
                    ));
                }
                None => out.push_str(&format!("  {u} -- {v};\n")),
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Bit-mask adjacency for graphs on at most 64 vertices; the workhorse for
/// the exhaustive searches in this crate.
#[derive(Clone, Debug)]
pub struct MaskAdjacency {
    pub n: usize,
    pub nb: Vec<u64>,
}

impl MaskAdjacency {
    pub fn build(g: &Graph) -> Result<Self> {
        if g.n() > 64 {
            return Err(Error::SizeLimit(format!(
                "bit-mask routines support n <= 64, got n={}",
                g.n()
            )));
        }
        let mut nb = vec![0u64; g.n()];
        for &(u, v) in g.edges() {
            nb[u] |= 1 << v;
            nb[v] |= 1 << u;
        }
        Ok(MaskAdjacency { n: g.n(), nb })
    }

    /// Open neighbourhood of the vertex set `set`, as a mask.
    pub fn neighbourhood(&self, set: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.nb[v];
        }
        out & !set
    }

    /// Connected component of `start` inside the vertex set `within`.
    pub fn component(&self, start: usize, within: u64) -> u64 {
        debug_assert!(within & (1 << start) != 0);
        let mut comp = 1u64 << start;
        loop {
            let grow = self.neighbourhood(comp) & within;
            if grow == 0 {
                return comp;
            }
            comp |= grow;
        }
    }

    /// Sizes of the components of the subgraph induced on `within`,
    /// in order of smallest member.
    pub fn component_sizes(&self, within: u64) -> Vec<usize> {
        let mut sizes = Vec::new();
        let mut rest = within;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let comp = self.component(v, rest);
            sizes.push(comp.count_ones() as usize);
            rest &= !comp;
        }
        sizes
    }
}

pub fn mask_to_vertices(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}
