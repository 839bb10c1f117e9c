//! Single-vertex recolouring moves.
//!
//! A colouring is a *local minimum* when no vertex can switch to another
//! colour of its list and strictly reduce the number of monochromatic edges.
//! All solvers use local minima in place of globally minimising colourings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Colour, Colouring, Graph, ListAssignment};

/// Number of neighbours of `v` carrying each colour of `L(v)`, aligned with
/// `lists.list(v)`.
pub fn list_colour_counts(
    g: &Graph,
    lists: &ListAssignment,
    phi: &Colouring,
    v: usize,
) -> Vec<usize> {
    let list = lists.list(v);
    let mut counts = vec![0; list.len()];
    for &u in g.neighbors(v) {
        if let Ok(i) = list.binary_search(&phi.colour(u)) {
            counts[i] += 1;
        }
    }
    counts
}

/// Neighbours of `v` coloured `c`.
pub fn neighbours_coloured(g: &Graph, phi: &Colouring, v: usize, c: Colour) -> usize {
    g.neighbors(v)
        .iter()
        .filter(|&&u| phi.colour(u) == c)
        .count()
}

/// The first colour (ascending) whose adoption by `v` strictly lowers the
/// monochromatic edge count.
pub fn improving_move(
    g: &Graph,
    lists: &ListAssignment,
    phi: &Colouring,
    v: usize,
) -> Option<Colour> {
    let current = neighbours_coloured(g, phi, v, phi.colour(v));
    if current == 0 {
        return None;
    }
    let counts = list_colour_counts(g, lists, phi, v);
    lists
        .list(v)
        .iter()
        .zip(counts)
        .find(|&(_, count)| count < current)
        .map(|(&c, _)| c)
}

/// First vertex of `candidates` admitting an improving move.
pub fn find_improving_move(
    g: &Graph,
    lists: &ListAssignment,
    phi: &Colouring,
    candidates: impl IntoIterator<Item = usize>,
) -> Option<(usize, Colour)> {
    candidates
        .into_iter()
        .find_map(|v| improving_move(g, lists, phi, v).map(|c| (v, c)))
}

pub fn is_local_min(g: &Graph, lists: &ListAssignment, phi: &Colouring) -> bool {
    find_improving_move(g, lists, phi, 0..g.vertex_count()).is_none()
}

/// Applies first-improvement moves, scanning vertices in id order, until a
/// local minimum is reached. Returns the number of moves made.
pub fn descend(g: &Graph, lists: &ListAssignment, phi: &mut Colouring) -> usize {
    let mut moves = 0;
    loop {
        let mut changed = false;
        for v in 0..g.vertex_count() {
            if let Some(c) = improving_move(g, lists, phi, v) {
                phi.0[v] = c;
                moves += 1;
                changed = true;
            }
        }
        if !changed {
            return moves;
        }
    }
}

/// Uniformly random list colouring drawn from a ChaCha8 stream.
pub fn random_colouring(lists: &ListAssignment, seed: u64) -> Colouring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Colouring(
        lists
            .lists()
            .iter()
            .map(|l| l[rng.gen_range(0..l.len())])
            .collect(),
    )
}

/// `L(phi, v)`: the colours of `L(v)` that `v` could switch to without
/// changing the number of monochromatic edges. At a local minimum these are
/// the colours seen on exactly `monoDegree(v)` neighbours.
pub fn moveable_colours(
    g: &Graph,
    lists: &ListAssignment,
    phi: &Colouring,
    v: usize,
) -> Vec<Colour> {
    let current = neighbours_coloured(g, phi, v, phi.colour(v));
    let counts = list_colour_counts(g, lists, phi, v);
    lists
        .list(v)
        .iter()
        .zip(counts)
        .filter(|&(_, count)| count == current)
        .map(|(&c, _)| c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descend_reaches_local_min() {
        let k4 = Graph::new(4, (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v)))).unwrap();
        let lists = ListAssignment::uniform(4, &[1, 2]).unwrap();
        let mut phi = Colouring(vec![1; 4]);
        let moves = descend(&k4, &lists, &mut phi);
        assert!(moves > 0);
        assert!(is_local_min(&k4, &lists, &phi));
        assert_eq!(phi.mono_edge_count(&k4), 2);
    }

    #[test]
    fn moveable_contains_current_colour() {
        let c4 = Graph::new(4, (0..4).map(|i| (i, (i + 1) % 4))).unwrap();
        let lists = ListAssignment::uniform(4, &[1, 2, 3]).unwrap();
        let phi = Colouring(vec![1, 2, 1, 2]);
        let m = moveable_colours(&c4, &lists, &phi, 0);
        assert_eq!(m, vec![1, 3]);
    }

    #[test]
    fn random_colouring_is_reproducible() {
        let lists = ListAssignment::uniform(10, &[0, 1, 2, 3]).unwrap();
        assert_eq!(random_colouring(&lists, 5), random_colouring(&lists, 5));
        assert!(random_colouring(&lists, 5).is_valid_for(&lists));
    }
}
