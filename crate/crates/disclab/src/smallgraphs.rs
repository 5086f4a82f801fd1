//! Exhaustive catalogues of small graphs up to isomorphism, plus random
//! connected samples, for the property-test suites.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Canonical-form enumeration is quadratic in n! and stops here.
pub const MAX_CATALOGUE_N: usize = 6;

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    // position of (u, v), u < v, in row-major upper-triangle order
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

fn mask_is_connected(n: usize, mask: u32, pairs: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut uf = crate::union_find::UnionFind::new(n);
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            uf.union(u, v);
        }
    }
    uf.component_count() == 1
}

/// Every connected graph on exactly n labelled vertices, one canonical
/// representative per isomorphism class (the least edge mask over all
/// vertex relabellings). Counts: 1, 1, 2, 6, 21, 112 for n = 1..6.
pub fn connected_graphs_upto_iso(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_CATALOGUE_N {
        return Err(Error::SizeLimit(format!(
            "catalogue covers 1 <= n <= {MAX_CATALOGUE_N}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let np = pairs.len();
    // for each permutation, where each pair index lands
    let perm_tables: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| {
            pairs
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                    pair_index(n, a, b)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << np) {
        if !mask_is_connected(n, mask, &pairs) {
            continue;
        }
        let canonical = perm_tables
            .iter()
            .map(|table| {
                let mut image = 0u32;
                let mut m = mask;
                while m != 0 {
                    let i = m.trailing_zeros() as usize;
                    m &= m - 1;
                    image |= 1 << table[i];
                }
                image
            })
            .min()
            .unwrap();
        if canonical != mask {
            continue;
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        out.push(Graph::new(n, edges)?);
    }
    Ok(out)
}

/// Uniform-ish connected graph: a random recursive tree plus m - (n-1)
/// distinct extra edges.
pub fn random_connected_graph<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSpec("need at least one vertex".into()));
    }
    let max_m = n * (n - 1) / 2;
    if m + 1 < n || m > max_m {
        return Err(Error::InvalidSpec(format!(
            "connected graph on {n} vertices needs {} <= m <= {max_m}, got {m}",
            n.saturating_sub(1)
        )));
    }
    let mut present = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        present.insert((u, v));
        edges.push((u, v));
    }
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if present.insert(key) {
            edges.push(key);
        }
    }
    let g = Graph::new(n, edges)?;
    debug_assert!(g.is_connected());
    Ok(g)
}
