//! Graph families used throughout the library: hedgehogs, clique cycles,
//! grids, hypercubes, random regular graphs and complete graphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Resampling budget for the configuration model before giving up.
pub const DEFAULT_RRG_BUDGET: usize = 10_000;

/// Hard cap on generated graph size, to keep accidental parameter typos
/// from allocating gigabytes.
const MAX_GENERATED_VERTICES: usize = 1 << 22;

fn check_size(n: usize) -> Result<()> {
    if n > MAX_GENERATED_VERTICES {
        return Err(Error::SizeLimit(format!(
            "requested graph on {n} vertices exceeds the generator cap of {MAX_GENERATED_VERTICES}"
        )));
    }
    Ok(())
}

pub fn gen_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSpec("complete graph needs n >= 1".into()));
    }
    check_size(n)?;
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges)
}

/// Body clique on n/r vertices; each body vertex carries r-1 private
/// degree-one spikes. The returned colouring gives spike j (j = 0..r-2)
/// colour j+1 and every body edge colour r.
pub fn gen_hedgehog(n: usize, r: usize) -> Result<(Graph, EdgeColouring)> {
    if r < 2 {
        return Err(Error::InvalidSpec("hedgehog needs r >= 2".into()));
    }
    if n == 0 || n % r != 0 {
        return Err(Error::InvalidSpec(format!(
            "hedgehog needs r | n, got n = {n}, r = {r}"
        )));
    }
    check_size(n)?;
    let body = n / r;
    let mut edges = Vec::new();
    let mut colours = Vec::new();
    for u in 0..body {
        for v in (u + 1)..body {
            edges.push((u, v));
            colours.push(r);
        }
    }
    for b in 0..body {
        for j in 0..(r - 1) {
            edges.push((b, body + b * (r - 1) + j));
            colours.push(j + 1);
        }
    }
    let g = Graph::new(n, edges)?;
    let f = EdgeColouring::new(r, colours)?;
    Ok((g, f))
}

/// d-regular variant: n/(d+2) units, each a (d+1)-clique minus one edge
/// whose endpoints both attach to a per-unit hub; hubs carry a seeded
/// random (d-2)-regular graph.
pub fn gen_hedgehog_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d < 5 {
        return Err(Error::InvalidSpec("regular hedgehog needs d >= 5".into()));
    }
    if n == 0 || n % (d + 2) != 0 {
        return Err(Error::InvalidSpec(format!(
            "regular hedgehog needs (d+2) | n, got n = {n}, d = {d}"
        )));
    }
    check_size(n)?;
    let m = n / (d + 2);
    if m <= d - 2 {
        return Err(Error::InvalidSpec(format!(
            "need more than d-2 = {} units for the hub graph, got {m}",
            d - 2
        )));
    }
    if (d - 2) * m % 2 != 0 {
        return Err(Error::InvalidSpec(format!(
            "hub graph needs (d-2)*m even, got d = {d}, m = {m}"
        )));
    }
    let unit = d + 2;
    let hub = |u: usize| u * unit + d + 1;
    let mut edges = Vec::new();
    for u in 0..m {
        let base = u * unit;
        for i in 0..=d {
            for j in (i + 1)..=d {
                if i == 0 && j == 1 {
                    continue;
                }
                edges.push((base + i, base + j));
            }
        }
        edges.push((base, hub(u)));
        edges.push((base + 1, hub(u)));
    }
    let hubs = gen_random_regular(m, d - 2, seed)?;
    for &(a, b) in hubs.edges() {
        edges.push((hub(a), hub(b)));
    }
    let g = Graph::new(n, edges)?;
    debug_assert_eq!(g.is_regular(), Some(d));
    Ok(g)
}

/// A cycle of rk overlapping cliques. Clique i consists of two consecutive
/// cycle vertices w_i, w_{i+1} plus a private set of `sizes[i]` vertices.
#[derive(Debug, Clone)]
pub struct CliqueCycle {
    pub graph: Graph,
    /// Vertex lists of the rk cliques, in cycle order.
    pub cliques: Vec<Vec<usize>>,
    /// Private-set size of each clique.
    pub sizes: Vec<usize>,
    /// For each edge index of `graph`, the unique clique containing it.
    pub edge_clique: Vec<usize>,
    pub r: usize,
    pub k: usize,
}

/// Private-set sizes: position i = qr + t (0 <= t < r) gets x[t] if
/// q < x[t], and k + x[t] otherwise. Each residue class sums to k^2.
pub fn clique_cycle_sizes(r: usize, k: usize, x: &[usize]) -> Result<Vec<usize>> {
    if r < 2 {
        return Err(Error::InvalidSpec("clique cycle needs r >= 2".into()));
    }
    if x.len() != r {
        return Err(Error::InvalidSpec(format!(
            "offset vector must have length r = {r}, got {}",
            x.len()
        )));
    }
    if !x.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidSpec(
            "offsets must be strictly increasing".into(),
        ));
    }
    if x[r - 1] >= k {
        return Err(Error::InvalidSpec(format!(
            "offsets must stay below k = {k}, got {}",
            x[r - 1]
        )));
    }
    let sum: usize = x.iter().sum();
    if sum % r == 0 {
        return Err(Error::InvalidSpec(format!(
            "offset sum {sum} must not be divisible by r = {r}"
        )));
    }
    let mut sizes = Vec::with_capacity(r * k);
    for i in 0..r * k {
        let (q, t) = (i / r, i % r);
        sizes.push(if q < x[t] { x[t] } else { k + x[t] });
    }
    debug_assert_eq!(sizes.iter().sum::<usize>(), r * k * k);
    Ok(sizes)
}

pub fn gen_clique_cycle(r: usize, k: usize, x: &[usize]) -> Result<CliqueCycle> {
    let sizes = clique_cycle_sizes(r, k, x)?;
    let rk = r * k;
    let n = rk + rk * k;
    check_size(n)?;
    let mut cliques = Vec::with_capacity(rk);
    let mut next = rk;
    for (i, &b) in sizes.iter().enumerate() {
        let mut verts = vec![i, (i + 1) % rk];
        verts.extend(next..next + b);
        next += b;
        cliques.push(verts);
    }
    debug_assert_eq!(next, n);
    let mut edges = Vec::new();
    let mut edge_clique = Vec::new();
    for (i, verts) in cliques.iter().enumerate() {
        for (p, &u) in verts.iter().enumerate() {
            for &v in &verts[p + 1..] {
                // consecutive cliques share one cycle vertex, so no pair
                // appears in two cliques
                edges.push((u, v));
                edge_clique.push(i);
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    Ok(CliqueCycle {
        graph,
        cliques,
        sizes,
        edge_clique,
        r,
        k,
    })
}

/// d-dimensional grid on k^d vertices. Vertex ids enumerate coordinates
/// with the last coordinate varying fastest (row-major for d = 2).
pub fn gen_grid(k: usize, d: usize) -> Result<Graph> {
    if k < 2 || d < 1 {
        return Err(Error::InvalidSpec("grid needs k >= 2 and d >= 1".into()));
    }
    let mut n: usize = 1;
    for _ in 0..d {
        n = n
            .checked_mul(k)
            .ok_or_else(|| Error::SizeLimit("grid size overflows".into()))?;
        check_size(n)?;
    }
    let mut edges = Vec::new();
    let mut stride = 1;
    for axis in (0..d).rev() {
        let _ = axis;
        for id in 0..n {
            // coordinate along this axis
            if (id / stride) % k + 1 < k {
                edges.push((id, id + stride));
            }
        }
        stride *= k;
    }
    Graph::new(n, edges)
}

/// Two-dimensional grid with the four corners joined in a cycle:
/// top-left, top-right, bottom-right, bottom-left.
pub fn gen_grid_plus(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidSpec("corner-cycle grid needs k >= 3".into()));
    }
    let grid = gen_grid(k, 2)?;
    let mut edges = grid.edges().to_vec();
    let corner = |row: usize, col: usize| row * k + col;
    let cycle = [
        corner(0, 0),
        corner(0, k - 1),
        corner(k - 1, k - 1),
        corner(k - 1, 0),
    ];
    for i in 0..4 {
        edges.push((cycle[i], cycle[(i + 1) % 4]));
    }
    Graph::new(k * k, edges)
}

pub fn gen_hypercube(d: usize) -> Result<Graph> {
    if d == 0 || d > 20 {
        return Err(Error::InvalidSpec(
            "hypercube needs 1 <= d <= 20".into(),
        ));
    }
    let n = 1usize << d;
    check_size(n)?;
    let mut edges = Vec::with_capacity(n / 2 * d);
    for v in 0..n {
        for bit in 0..d {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::new(n, edges)
}

/// Vertices of the d-cube grouped by popcount, each layer ascending.
pub fn hypercube_layers(d: usize) -> Vec<Vec<usize>> {
    let n = 1usize << d;
    let mut layers = vec![Vec::new(); d + 1];
    for v in 0..n {
        layers[v.count_ones() as usize].push(v);
    }
    layers
}

pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    gen_random_regular_with_budget(n, d, seed, DEFAULT_RRG_BUDGET)
}

/// Configuration model with whole-graph rejection: pair up n*d stubs
/// uniformly, resample from scratch on any loop or repeated pair.
pub fn gen_random_regular_with_budget(
    n: usize,
    d: usize,
    seed: u64,
    budget: usize,
) -> Result<Graph> {
    if d == 0 || n <= d {
        return Err(Error::InvalidSpec(format!(
            "regular graph needs 0 < d < n, got n = {n}, d = {d}"
        )));
    }
    if n * d % 2 != 0 {
        return Err(Error::InvalidSpec(format!(
            "regular graph needs n*d even, got n = {n}, d = {d}"
        )));
    }
    check_size(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n * d).map(|s| s / d).collect();
    'attempt: for _ in 0..budget {
        stubs.shuffle(&mut rng);
        let mut seen = std::collections::HashSet::with_capacity(n * d / 2);
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        return Graph::new(n, edges);
    }
    Err(Error::SamplingExhausted(format!(
        "no simple {d}-regular graph on {n} vertices within {budget} resamplings"
    )))
}
