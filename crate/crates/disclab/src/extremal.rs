//! Extremal sequences, colourings, and parameters: the private-size
//! sequences behind the clique cycle with their deviation/interval scan,
//! low-discrepancy colourings for the canonical constructions, minimal
//! clique covers of K_n, and the dense Hamilton extremal graph.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::colouring::{colour_components, EdgeColouring};
use crate::discrepancy::tree_discrepancy_of_colouring;
use crate::error::{Error, Result};
use crate::generators::CliqueCycle;
use crate::graph::Graph;

/// Exhaustive deviation scans enumerate all 2^(rk) index subsets.
pub const DC_SCAN_MAX_POSITIONS: usize = 24;
/// Default caps for the minimal clique-cover search.
pub const DEFAULT_PHI_R_CAP: usize = 3;
pub const DEFAULT_PHI_N_CAP: usize = 9;

/// Parameters of the private-size sequences: r residue classes, base
/// size k, and a strictly increasing offset vector x of length r whose
/// mean must not be an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub r: usize,
    pub k: usize,
    pub x: Vec<usize>,
}

impl SequenceSpec {
    pub fn new(r: usize, k: usize, x: Vec<usize>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidSpec("sequence spec needs r >= 2".into()));
        }
        if k == 0 {
            return Err(Error::InvalidSpec("sequence spec needs k >= 1".into()));
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
        if *x.last().unwrap() >= k {
            return Err(Error::InvalidSpec(format!(
                "offsets must stay below k = {k}"
            )));
        }
        if x.iter().sum::<usize>() % r == 0 {
            return Err(Error::InvalidSpec(
                "offset mean must not be an integer".into(),
            ));
        }
        Ok(SequenceSpec { r, k, x })
    }

    /// Mean offset; never an integer for a valid spec.
    pub fn mu(&self) -> Ratio<i64> {
        Ratio::new(self.x.iter().sum::<usize>() as i64, self.r as i64)
    }

    /// The scale parameter max{r, x_r} of the deviation bound.
    pub fn big_r(&self) -> usize {
        self.r.max(*self.x.last().unwrap())
    }

    /// a^{k,x}_i = x for i < x and k + x otherwise.
    pub fn a_sequence(&self, x: usize) -> Vec<usize> {
        (0..self.k).map(|i| if i < x { x } else { self.k + x }).collect()
    }

    /// b_i = a^{k, x_t}_q where i = qr + t; length rk.
    pub fn b_sequence(&self) -> Vec<usize> {
        (0..self.r * self.k)
            .map(|i| {
                let (q, t) = (i / self.r, i % self.r);
                let x = self.x[t];
                if q < x {
                    x
                } else {
                    self.k + x
                }
            })
            .collect()
    }
}

/// Materialized sequence arrays with the sum identities asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequences {
    /// One a-array per offset component, each of length k.
    pub a: Vec<Vec<usize>>,
    /// The interleaved b-array of length rk.
    pub b: Vec<usize>,
}

pub fn make_sequences(spec: &SequenceSpec) -> Sequences {
    let k = spec.k;
    let a: Vec<Vec<usize>> = spec.x.iter().map(|&x| spec.a_sequence(x)).collect();
    for arr in &a {
        assert_eq!(arr.iter().sum::<usize>(), k * k);
    }
    let b = spec.b_sequence();
    assert_eq!(b.iter().sum::<usize>(), spec.r * k * k);
    Sequences { a, b }
}

/// Statistics of one index subset I of {0..rk-1}: its b-sum, the
/// deviation |sum - k^2|, and the number of maximal cyclic intervals
/// it decomposes into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSetStats {
    pub mask: u32,
    pub sum: i64,
    pub deviation: i64,
    pub intervals: usize,
}

pub fn index_set_stats(spec: &SequenceSpec, mask: u32) -> IndexSetStats {
    let rk = spec.r * spec.k;
    debug_assert!(rk <= 32 && (mask as u64) < (1u64 << rk));
    let b = spec.b_sequence();
    let mut sum = 0i64;
    let mut intervals = 0usize;
    for i in 0..rk {
        if mask >> i & 1 == 1 {
            sum += b[i] as i64;
            if mask >> ((i + rk - 1) % rk) & 1 == 0 {
                intervals += 1;
            }
        }
    }
    if intervals == 0 && mask != 0 {
        intervals = 1; // the full circle is a single interval
    }
    debug_assert!(mask == 0 || intervals >= 1);
    IndexSetStats {
        mask,
        sum,
        deviation: (sum - (spec.k * spec.k) as i64).abs(),
        intervals,
    }
}

/// Exhaustively minimises D(I) + C(I)R^2 - (k/r - 3R^4) over all index
/// subsets. The minimum is provably nonnegative; a negative slack is a
/// theory violation. Caps at rk <= 24 positions.
pub fn dc_scan(spec: &SequenceSpec) -> Result<Ratio<i64>> {
    let rk = spec.r * spec.k;
    if rk > DC_SCAN_MAX_POSITIONS {
        return Err(Error::SizeLimit(format!(
            "deviation scan enumerates 2^(rk) subsets; rk = {rk} exceeds {DC_SCAN_MAX_POSITIONS}"
        )));
    }
    let b: Vec<i64> = spec.b_sequence().iter().map(|&v| v as i64).collect();
    let k2 = (spec.k * spec.k) as i64;
    let ri = spec.r as i64;
    let ki = spec.k as i64;
    let r2 = (spec.big_r() * spec.big_r()) as i64;
    let r4 = r2 * r2;
    let mut best: Option<(i64, u32)> = None;
    for mask in 0u32..(1u32 << rk) {
        let mut sum = 0i64;
        let mut intervals = 0i64;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            sum += b[i];
            if mask >> ((i + rk - 1) % rk) & 1 == 0 {
                intervals += 1;
            }
        }
        if intervals == 0 && mask != 0 {
            intervals = 1;
        }
        // slack scaled by r to stay in integers
        let scaled = ri * (sum - k2).abs() + ri * intervals * r2 - ki + 3 * ri * r4;
        if best.map_or(true, |(s, _)| scaled < s) {
            best = Some((scaled, mask));
        }
    }
    let (scaled, mask) = best.unwrap();
    if scaled < 0 {
        return Err(Error::TheoryViolation(format!(
            "index set {mask:#b} has negative deviation slack {scaled}/{ri}"
        )));
    }
    Ok(Ratio::new(scaled, ri))
}

/// Colours each clique-cycle edge by its clique's residue class. Every
/// colour then spans (r-1)(k^2+k) components and the colouring's tree
/// discrepancy is exactly 1.
pub fn clique_cycle_colouring(cc: &CliqueCycle) -> Result<EdgeColouring> {
    let r = cc.r;
    let colours: Vec<usize> = cc.edge_clique.iter().map(|&i| i % r + 1).collect();
    let f = EdgeColouring::new(r, colours)?;
    let comps = colour_components(&cc.graph, &f)?;
    let expected = (r - 1) * (cc.k * cc.k + cc.k);
    for colour in 1..=r {
        assert_eq!(
            comps.count(colour),
            expected,
            "colour {colour} must span (r-1)(k^2+k) components"
        );
    }
    let report = tree_discrepancy_of_colouring(&cc.graph, &f)?;
    assert!(report.value <= 1, "clique-cycle colouring must have discrepancy at most 1");
    Ok(f)
}

/// A minimal clique cover of K_n: the common size k and the r cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiCover {
    pub k: usize,
    pub cover: Vec<Vec<usize>>,
}

/// Smallest size with r cliques of that size covering all pairs,
/// counting from r * C(k,2) >= C(n,2).
fn counting_floor(r: usize, n: usize) -> usize {
    let pairs = n * (n - 1) / 2;
    (1..=n)
        .find(|&k| r * (k * (k - 1) / 2) >= pairs)
        .unwrap_or(n)
}

pub fn phi_exact(r: usize, n: usize) -> Result<PhiCover> {
    phi_exact_with_cap(r, n, DEFAULT_PHI_R_CAP, DEFAULT_PHI_N_CAP)
}

/// Minimal k such that r cliques of size k cover every pair of [n],
/// with a witness cover. Search ascends from the counting floor;
/// symmetry is killed by demanding the cliques appear in lexicographic
/// order, which also forces vertex 0 into the first clique.
pub fn phi_exact_with_cap(r: usize, n: usize, r_cap: usize, n_cap: usize) -> Result<PhiCover> {
    if r == 0 || n < 2 {
        return Err(Error::InvalidSpec(
            "cover search needs r >= 1 cliques and n >= 2 vertices".into(),
        ));
    }
    if r > r_cap || n > n_cap {
        return Err(Error::SizeLimit(format!(
            "cover search capped at r <= {r_cap}, n <= {n_cap}; got r = {r}, n = {n}"
        )));
    }
    if n > 16 {
        return Err(Error::SizeLimit("cover search supports n <= 16".into()));
    }
    for k in counting_floor(r, n)..=n {
        if let Some(cover) = search_cover(r, n, k) {
            return Ok(PhiCover { k, cover });
        }
    }
    unreachable!("k = n always covers by taking every clique to be the full vertex set")
}

fn pair_bit(n: usize, u: usize, v: usize) -> u32 {
    debug_assert!(u < v && v < n);
    (u * n + v) as u32
}

fn search_cover(r: usize, n: usize, k: usize) -> Option<Vec<Vec<usize>>> {
    // candidate cliques in lexicographic order of their vertex lists;
    // candidates containing vertex 0 form a prefix
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    gen_combinations(n, k, 0, &mut cur, &mut candidates);
    let masks: Vec<u128> = candidates
        .iter()
        .map(|c| {
            let mut m = 0u128;
            for (ai, &a) in c.iter().enumerate() {
                for &b in &c[ai + 1..] {
                    m |= 1u128 << pair_bit(n, a, b);
                }
            }
            m
        })
        .collect();
    let mut full = 0u128;
    for u in 0..n {
        for v in u + 1..n {
            full |= 1u128 << pair_bit(n, u, v);
        }
    }
    let per_clique = k * (k - 1) / 2;
    let first_without_zero = candidates
        .iter()
        .position(|c| c[0] != 0)
        .unwrap_or(candidates.len());

    fn backtrack(
        depth: usize,
        from: usize,
        covered: u128,
        chosen: &mut Vec<usize>,
        r: usize,
        full: u128,
        masks: &[u128],
        per_clique: usize,
        limit: usize,
    ) -> bool {
        if covered == full {
            return true;
        }
        if depth == r {
            return false;
        }
        let missing = (full & !covered).count_ones() as usize;
        if missing > (r - depth) * per_clique {
            return false;
        }
        let upper = if depth == 0 { limit } else { masks.len() };
        for idx in from..upper {
            chosen.push(idx);
            if backtrack(
                depth + 1,
                idx,
                covered | masks[idx],
                chosen,
                r,
                full,
                masks,
                per_clique,
                limit,
            ) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::new();
    if backtrack(
        0,
        0,
        0,
        &mut chosen,
        r,
        full,
        &masks,
        per_clique,
        first_without_zero,
    ) {
        // a short cover pads with repeats of its last clique
        while chosen.len() < r {
            chosen.push(*chosen.last().unwrap());
        }
        Some(chosen.into_iter().map(|i| candidates[i].clone()).collect())
    } else {
        None
    }
}

fn gen_combinations(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let needed = k - cur.len();
    for v in from..=n.saturating_sub(needed) {
        cur.push(v);
        gen_combinations(n, k, v + 1, cur, out);
        cur.pop();
    }
}

/// Colours each edge by the smallest cover clique containing both its
/// ends. The cover must contain every pair of vertices; each colour
/// class then stays inside its clique, so any spanning tree carries at
/// most |A_i| - 1 edges of colour i.
pub fn clique_cover_colouring(g: &Graph, cover: &[Vec<usize>]) -> Result<EdgeColouring> {
    if cover.is_empty() {
        return Err(Error::InvalidCover("cover has no cliques".into()));
    }
    let n = g.n();
    let mut masks = Vec::with_capacity(cover.len());
    for clique in cover {
        let mut m = 0u128;
        for &v in clique {
            if v >= n {
                return Err(Error::InvalidCover(format!(
                    "clique vertex {v} outside the graph"
                )));
            }
            m |= 1u128 << v;
        }
        masks.push(m);
    }
    if n > 128 {
        return Err(Error::SizeLimit("clique covers support n <= 128".into()));
    }
    for u in 0..n {
        for v in u + 1..n {
            let pair = 1u128 << u | 1u128 << v;
            if !masks.iter().any(|&m| m & pair == pair) {
                return Err(Error::InvalidCover(format!(
                    "pair {{{u}, {v}}} is not inside any clique"
                )));
            }
        }
    }
    let colours: Vec<usize> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let pair = 1u128 << u | 1u128 << v;
            masks.iter().position(|&m| m & pair == pair).unwrap() + 1
        })
        .collect();
    EdgeColouring::new(cover.len(), colours)
}

/// The dense extremal graph: blocks [V_1 | ... | V_r] with |V_i| =
/// n/(2r) for i < r and |V_r| = (r+1)n/(2r); edges are all pairs
/// touching V_r. Edges from V_i get colour i, edges inside V_r get
/// colour r. Minimum degree lands exactly on (r+1)n/(2r).
pub fn hamilton_extremal(r: usize, n: usize) -> Result<(Graph, EdgeColouring)> {
    if r < 2 {
        return Err(Error::InvalidSpec("extremal construction needs r >= 2".into()));
    }
    if n < 4 || n % (2 * r) != 0 {
        return Err(Error::InvalidSpec(format!(
            "need n >= 4 divisible by 2r = {}; got n = {n}",
            2 * r
        )));
    }
    let small = n / (2 * r);
    let big_start = (r - 1) * small;
    let block_of = |v: usize| if v < big_start { v / small } else { r - 1 };
    let mut edges = Vec::new();
    let mut colours = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (bu, bv) = (block_of(u), block_of(v));
            if bu != r - 1 && bv != r - 1 {
                continue;
            }
            edges.push((u, v));
            colours.push(bu.min(bv) + 1);
        }
    }
    let g = Graph::new(n, edges)?;
    let f = EdgeColouring::new(r, colours)?;
    assert_eq!(
        g.min_degree(),
        (r + 1) * n / (2 * r),
        "extremal minimum degree must be (r+1)n/(2r)"
    );
    Ok((g, f))
}
