//! Clustered list-colouring.
//!
//! Every pipeline starts from a colouring with no improving single-vertex
//! move, restricts a stable set of vertices to two colours each and resolves
//! the restricted vertices with the chain procedure of [`recolour_bipartite`].
//! Whenever an intermediate colouring turns out to admit an improving move,
//! the move is applied and the pipeline restarts; the number of
//! monochromatic edges strictly drops at every restart.

mod absolute;
mod bipartite;
mod maxdeg;
mod peel;

pub use absolute::choose_clustered_absolute;
pub use bipartite::{recolour_bipartite, BipartiteRecolourInstance};
pub use maxdeg::{
    choose_clustered_maxdeg, defect2_base, stable_set_colour, stable_set_colour_with_delta,
    ContractionMap, RestrictedLists,
};
pub use peel::{
    choose_clustered_extension, choose_clustered_mad7_10, extension_clustering_bound, peel_pairs,
    PeelWeights,
};

use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring, Graph, ListAssignment};
use crate::local::descend;

/// Monochromatic spanning subgraph.
pub(crate) fn mono_graph(g: &Graph, phi: &Colouring) -> Graph {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| phi.colour(u) == phi.colour(v))
        .collect();
    Graph::new(g.vertex_count(), edges).expect("subgraph edges are valid")
}

/// Membership mask of a vertex set that must be stable in `g`.
pub(crate) fn stable_mask(g: &Graph, set: &[usize]) -> Result<Vec<bool>> {
    let n = g.vertex_count();
    let mut mask = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(Error::OutOfRange { vertex: v, n });
        }
        mask[v] = true;
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| mask[u] && mask[v]) {
        return Err(Error::InvalidInput(format!(
            "I is not stable: edge ({u}, {v})"
        )));
    }
    Ok(mask)
}

pub(crate) fn check_sizes(g: &Graph, lists: &ListAssignment) -> Result<()> {
    if lists.len() != g.vertex_count() {
        return Err(Error::SizeMismatch {
            expected: g.vertex_count(),
            found: lists.len(),
        });
    }
    Ok(())
}

/// Strictly decreasing monochromatic edge count across restarts.
pub(crate) struct Potential(usize);

impl Potential {
    pub(crate) fn new(phi: &Colouring, g: &Graph) -> Self {
        Potential(phi.mono_edge_count(g))
    }

    pub(crate) fn value(&self) -> usize {
        self.0
    }

    /// Descends from `psi`, which must have no more monochromatic edges
    /// than the current potential and admit an improving move.
    pub(crate) fn restart(
        &mut self,
        g: &Graph,
        lists: &ListAssignment,
        mut psi: Colouring,
    ) -> Result<Colouring> {
        descend(g, lists, &mut psi);
        let count = psi.mono_edge_count(g);
        if count >= self.0 {
            return Err(Error::Internal(format!(
                "restart did not lower the monochromatic edge count ({count} >= {})",
                self.0
            )));
        }
        self.0 = count;
        Ok(psi)
    }
}

/// The bipartite instance between the selected vertices `s` (with two-colour
/// lists `pairs`) and the components of `mono - s`, joined when a selected
/// vertex is adjacent to a component whose colour is in its list.
pub(crate) struct SelectedBipartite {
    pub(crate) y_colours: Vec<Colour>,
    pub(crate) edges: Vec<(usize, usize)>,
}

impl SelectedBipartite {
    pub(crate) fn build(
        g: &Graph,
        mono: &Graph,
        phi: &Colouring,
        s: &[usize],
        pairs: &[[Colour; 2]],
    ) -> Self {
        let n = g.vertex_count();
        let mut in_s = vec![false; n];
        for &v in s {
            in_s[v] = true;
        }
        let mut comp = vec![usize::MAX; n];
        let mut y_colours = Vec::new();
        for start in 0..n {
            if in_s[start] || comp[start] != usize::MAX {
                continue;
            }
            let id = y_colours.len();
            y_colours.push(phi.colour(start));
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &u in mono.neighbors(v) {
                    if !in_s[u] && comp[u] == usize::MAX {
                        comp[u] = id;
                        stack.push(u);
                    }
                }
            }
        }
        let mut edges = Vec::new();
        for (x, (&v, pair)) in s.iter().zip(pairs).enumerate() {
            for &u in g.neighbors(v) {
                if !in_s[u] && pair.contains(&phi.colour(u)) {
                    edges.push((x, comp[u]));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        SelectedBipartite { y_colours, edges }
    }

    /// A component adjacent to three or more selected vertices that could
    /// take its colour, with the first three such vertices.
    pub(crate) fn overloaded(&self) -> Option<(usize, [usize; 3])> {
        let mut seen: Vec<Vec<usize>> = vec![Vec::new(); self.y_colours.len()];
        for &(x, y) in &self.edges {
            seen[y].push(x);
            if seen[y].len() == 3 {
                return Some((y, [seen[y][0], seen[y][1], seen[y][2]]));
            }
        }
        None
    }
}
