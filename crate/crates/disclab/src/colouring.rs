use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::union_find::UnionFind;

/// Edge colouring with colours `1..=r`, stored per edge index.
///
/// `r` is the number of available colours; a colouring need not use all of
/// them. Colour 0 is invalid everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColouring {
    r: usize,
    colours: Vec<usize>,
}

/// On-disk form: `{"r": 2, "colours": [1,2,1]}` (one entry per edge index).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColouringJson {
    pub r: usize,
    pub colours: Vec<usize>,
}

impl EdgeColouring {
    pub fn new(r: usize, colours: Vec<usize>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidColouring("r must be at least 1".into()));
        }
        for (e, &c) in colours.iter().enumerate() {
            if c == 0 || c > r {
                return Err(Error::InvalidColouring(format!(
                    "edge {e} has colour {c}, outside 1..={r}"
                )));
            }
        }
        Ok(EdgeColouring { r, colours })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn colour_of(&self, e: usize) -> usize {
        self.colours[e]
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    /// Edge indices of one colour class.
    pub fn class(&self, colour: usize) -> Vec<usize> {
        (0..self.colours.len())
            .filter(|&e| self.colours[e] == colour)
            .collect()
    }

    /// Checks this colouring against a graph (one colour per edge).
    pub fn check_against(&self, g: &Graph) -> Result<()> {
        if self.colours.len() != g.m() {
            return Err(Error::InvalidColouring(format!(
                "colouring has {} entries but the graph has {} edges",
                self.colours.len(),
                g.m()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> ColouringJson {
        ColouringJson {
            r: self.r,
            colours: self.colours.clone(),
        }
    }

    pub fn from_json(json: &ColouringJson) -> Result<Self> {
        EdgeColouring::new(json.r, json.colours.clone())
    }

    /// Uniformly random colouring of `m` edges.
    pub fn random<R: Rng>(r: usize, m: usize, rng: &mut R) -> Self {
        let colours = (0..m).map(|_| rng.gen_range(1..=r)).collect();
        EdgeColouring { r, colours }
    }

    /// Random colouring with class sizes as equal as possible (they differ by
    /// at most one): shuffle the edge indices and deal them out round-robin.
    pub fn random_balanced<R: Rng>(r: usize, m: usize, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        let mut colours = vec![0usize; m];
        for (slot, &e) in order.iter().enumerate() {
            colours[e] = slot % r + 1;
        }
        EdgeColouring { r, colours }
    }
}

/// Components of every colour class of a colouring.
///
/// For colour `i`, the spanning subgraph with exactly the colour-`i` edges is
/// split into connected components; vertices touching no colour-`i` edge are
/// singleton components. So every colour partitions all `n` vertices.
#[derive(Clone, Debug)]
pub struct ColourComponents {
    pub per_colour: Vec<ColourClassComponents>,
}

#[derive(Clone, Debug)]
pub struct ColourClassComponents {
    /// Sorted vertex lists, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    /// Vertex -> index into `components`.
    pub component_of: Vec<usize>,
}

impl ColourComponents {
    /// Number of components of colour `i` (1-based).
    pub fn count(&self, colour: usize) -> usize {
        self.per_colour[colour - 1].components.len()
    }

    pub fn r(&self) -> usize {
        self.per_colour.len()
    }
}

pub fn colour_components(g: &Graph, f: &EdgeColouring) -> Result<ColourComponents> {
    f.check_against(g)?;
    let n = g.n();
    let mut per_colour = Vec::with_capacity(f.r());
    for colour in 1..=f.r() {
        let mut uf = UnionFind::new(n);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if f.colour_of(e) == colour {
                uf.union(u, v);
            }
        }
        let mut root_to_comp = vec![usize::MAX; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut component_of = vec![0usize; n];
        for v in 0..n {
            let root = uf.find(v);
            if root_to_comp[root] == usize::MAX {
                root_to_comp[root] = components.len();
                components.push(Vec::new());
            }
            let idx = root_to_comp[root];
            components[idx].push(v);
            component_of[v] = idx;
        }
        per_colour.push(ColourClassComponents {
            components,
            component_of,
        });
    }
    Ok(ColourComponents { per_colour })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_colours() {
        assert!(matches!(
            EdgeColouring::new(2, vec![1, 0]),
            Err(Error::InvalidColouring(_))
        ));
        assert!(matches!(
            EdgeColouring::new(2, vec![1, 3]),
            Err(Error::InvalidColouring(_))
        ));
    }

    #[test]
    fn path_components() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let f = EdgeColouring::new(2, vec![1, 2]).unwrap();
        let cc = colour_components(&g, &f).unwrap();
        assert_eq!(cc.count(1), 2);
        assert_eq!(cc.count(2), 2);
        assert_eq!(cc.per_colour[0].components, vec![vec![0, 1], vec![2]]);
        assert_eq!(cc.per_colour[1].components, vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn proper_colouring_of_k4_gives_two_components_per_colour() {
        // Three perfect matchings of K_4, one per colour.
        let g = Graph::new(
            4,
            vec![(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)],
        )
        .unwrap();
        let f = EdgeColouring::new(3, vec![1, 1, 2, 2, 3, 3]).unwrap();
        let cc = colour_components(&g, &f).unwrap();
        for colour in 1..=3 {
            assert_eq!(cc.count(colour), 2);
        }
    }

    #[test]
    fn star_components() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let f = EdgeColouring::new(2, vec![1, 1, 2]).unwrap();
        let cc = colour_components(&g, &f).unwrap();
        assert_eq!(cc.count(1), 2);
        assert_eq!(cc.count(2), 3);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let f = EdgeColouring::new(2, vec![1]).unwrap();
        assert!(matches!(
            colour_components(&g, &f),
            Err(Error::InvalidColouring(_))
        ));
    }

    #[test]
    fn balanced_random_classes_differ_by_at_most_one() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f = EdgeColouring::random_balanced(3, 11, &mut rng);
        let mut sizes: Vec<usize> = (1..=3).map(|c| f.class(c).len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 4, 4]);
    }
}
