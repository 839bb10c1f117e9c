//! Clustered colouring of graphs with bounded maximum average degree, by
//! peeling single vertices and adjacent pairs and extending outwards.

use std::collections::BTreeSet;

use crate::defective::{balanced_assignment, PeelDecomposition};
use crate::error::{Error, Result};
use crate::graph::{
    certify, BoundKind, Colour, Colouring, Graph, ListAssignment, MonoView, Solution,
};
use crate::sparsity::Density;

use super::{check_sizes, choose_clustered_absolute, stable_set_colour_with_delta};

/// Coefficients of the peel conditions. A vertex `v` peels alone when
/// `list * |L(v)| <= list * deg_A(v) + rest * deg_B(v)`, where `A` is the
/// set peeled so far and `B` the rest; two adjacent vertices peel together
/// when each satisfies the same inequality with `+ 1` on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeelWeights {
    pub list: usize,
    pub rest: usize,
}

impl PeelWeights {
    /// Weights for the clustering-9 solver.
    pub const SEVEN_TENTHS: PeelWeights = PeelWeights { list: 5, rest: 2 };
    /// Weights for the `k`-list solver with `mad < 3k/2`.
    pub const TWO_THIRDS: PeelWeights = PeelWeights { list: 3, rest: 1 };

    fn score(&self, deg_a: usize, deg_b: usize) -> usize {
        self.list * deg_a + self.rest * deg_b
    }
}

/// Maximal sequence of peel sets of size 1 or 2. A single vertex at the
/// lowest eligible id is preferred; otherwise the lexicographically least
/// eligible edge is taken.
pub fn peel_pairs(g: &Graph, list_sizes: &[usize], weights: PeelWeights) -> PeelDecomposition {
    let n = g.vertex_count();
    assert!(
        weights.list > weights.rest,
        "peel weights must favour peeled neighbours"
    );
    let mut deg_a = vec![0usize; n];
    let mut peeled = vec![false; n];
    let need = |v: usize| weights.list * list_sizes[v];
    let score = |v: usize, deg_a: &[usize]| weights.score(deg_a[v], g.degree(v) - deg_a[v]);

    let mut single: BTreeSet<usize> = BTreeSet::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut pair_ok: Vec<bool> = (0..n).map(|v| need(v) <= score(v, &deg_a) + 1).collect();
    single.extend((0..n).filter(|&v| need(v) <= score(v, &deg_a)));
    for (u, v) in g.edges() {
        if pair_ok[u] && pair_ok[v] {
            pairs.insert((u, v));
        }
    }

    let mut layers = Vec::new();
    loop {
        let layer = if let Some(v) = single.pop_first() {
            vec![v]
        } else if let Some((v, w)) = pairs.pop_first() {
            vec![v, w]
        } else {
            break;
        };
        for &x in &layer {
            peeled[x] = true;
            single.remove(&x);
        }
        for &x in &layer {
            for &u in g.neighbors(x) {
                pairs.remove(&(x.min(u), x.max(u)));
                if peeled[u] {
                    continue;
                }
                deg_a[u] += 1;
                if need(u) <= score(u, &deg_a) {
                    single.insert(u);
                }
                if !pair_ok[u] && need(u) <= score(u, &deg_a) + 1 {
                    pair_ok[u] = true;
                    for &w in g.neighbors(u) {
                        if !peeled[w] && pair_ok[w] {
                            pairs.insert((u.min(w), u.max(w)));
                        }
                    }
                }
            }
        }
        layers.push(layer);
    }
    let residual: Vec<usize> = (0..n).filter(|&v| !peeled[v]).collect();
    PeelDecomposition {
        exhausted: residual.is_empty() && n > 0,
        layers,
        residual,
    }
}

/// A residual part together with its tight vertices, in global ids.
struct Frame {
    residual: Vec<usize>,
    tight: Vec<usize>,
}

/// Peels nested subgraphs until the remaining vertex set is smaller than
/// `floor`. Returns the frames (outermost first) and the innermost set.
fn peel_frames(
    g: &Graph,
    list_sizes: &[usize],
    weights: PeelWeights,
    floor: usize,
) -> Result<(Vec<Frame>, Vec<usize>)> {
    let mut frames = Vec::new();
    let mut current: Vec<usize> = (0..g.vertex_count()).collect();
    while !current.is_empty() && current.len() >= floor {
        let sub = g.induced(&current);
        let sizes: Vec<usize> = current.iter().map(|&v| list_sizes[v]).collect();
        let peel = peel_pairs(&sub, &sizes, weights);
        if peel.exhausted {
            return Err(Error::DensityViolation {
                density: Density::of_subgraph(g, &current),
                witness: current,
            });
        }
        let mut in_a = vec![false; current.len()];
        for i in peel.peeled() {
            in_a[i] = true;
        }
        let tight = peel
            .residual
            .iter()
            .copied()
            .filter(|&i| {
                let deg_a = sub.degree_in(i, &in_a);
                weights.list * sizes[i] == weights.score(deg_a, sub.degree(i) - deg_a) + 1
            })
            .map(|i| current[i])
            .collect();
        frames.push(Frame {
            residual: peel.residual.iter().map(|&i| current[i]).collect(),
            tight,
        });
        current = peel.peeled().iter().map(|&i| current[i]).collect();
    }
    Ok((frames, current))
}

/// Colours each frame's residual part, innermost first, from the lists with
/// the colours of already coloured neighbours removed.
fn unwind(
    g: &Graph,
    lists: &ListAssignment,
    partial: &mut [Option<Colour>],
    frames: &[Frame],
    mut colour_part: impl FnMut(&Graph, &ListAssignment, &[usize], usize) -> Result<Colouring>,
) -> Result<()> {
    for (level, frame) in frames.iter().enumerate().rev() {
        let b = &frame.residual;
        let reduced: Vec<Vec<Colour>> = b
            .iter()
            .map(|&v| {
                lists
                    .list(v)
                    .iter()
                    .copied()
                    .filter(|&c| g.neighbors(v).iter().all(|&u| partial[u] != Some(c)))
                    .collect()
            })
            .collect();
        if let Some(i) = reduced.iter().position(Vec::is_empty) {
            return Err(Error::Internal(format!(
                "vertex {} lost every colour",
                b[i]
            )));
        }
        let sub = g.induced(b);
        let tight: Vec<usize> = frame
            .tight
            .iter()
            .map(|v| b.binary_search(v).expect("tight vertex is residual"))
            .collect();
        let phi = colour_part(&sub, &ListAssignment::from_sorted(reduced), &tight, level)
            .map_err(|e| Error::Internal(format!("extension failed: {e}")))?;
        for (i, &v) in b.iter().enumerate() {
            partial[v] = Some(phi.colour(i));
        }
    }
    Ok(())
}

/// Colouring with clustering at most 9 from lists of size at least
/// `floor(7 mad / 10) + 1`. Lists that are too short for the graph's density
/// yield a subgraph with average degree at least `10k / 7`.
pub fn choose_clustered_mad7_10(g: &Graph, lists: &ListAssignment, seed: u64) -> Result<Solution> {
    check_sizes(g, lists)?;
    let sizes: Vec<usize> = lists.lists().iter().map(Vec::len).collect();
    let (frames, base) = peel_frames(g, &sizes, PeelWeights::SEVEN_TENTHS, 10)?;
    let mut partial: Vec<Option<Colour>> = vec![None; g.vertex_count()];
    for &v in &base {
        partial[v] = Some(lists.list(v)[0]);
    }
    unwind(
        g,
        lists,
        &mut partial,
        &frames,
        |sub, reduced, tight, level| {
            choose_clustered_absolute(sub, reduced, tight, seed.wrapping_add(level as u64))
                .map(|s| s.colouring)
        },
    )?;
    let phi = Colouring(partial.into_iter().map(Option::unwrap).collect());
    certify(g, lists, phi, BoundKind::Clustering, 9)
}

/// `max(ceil((n0 - 1) / k), 57k - 51)`.
pub fn extension_clustering_bound(k: usize, n0: usize) -> usize {
    (n0 - 1).div_ceil(k).max(57 * k - 51)
}

/// Colouring from a `k`-list-assignment with clustering at most
/// `max(ceil((n0 - 1) / k), 57k - 51)`, provided every subgraph on at least
/// `n0` vertices has average degree below `3k / 2`. Otherwise such a dense
/// subgraph is returned. Longer lists are truncated to their `k` smallest
/// colours.
pub fn choose_clustered_extension(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    n0: usize,
    seed: u64,
) -> Result<Solution> {
    check_sizes(g, lists)?;
    if k == 0 || n0 == 0 {
        return Err(Error::InvalidInput("k and n0 must be positive".into()));
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| lists.list(v).len() < k) {
        return Err(Error::precondition(v, format!("list smaller than k = {k}")));
    }
    let bound = extension_clustering_bound(k, n0);
    let short = lists.truncate(k);

    if k == 1 {
        let phi = Colouring(short.lists().iter().map(|l| l[0]).collect());
        let view = MonoView::new(g, &phi);
        if view.clustering() > bound {
            let big = view
                .components()
                .into_iter()
                .find(|c| c.len() > bound)
                .expect("largest component exceeds the bound");
            return Err(Error::DensityViolation {
                density: Density::of_subgraph(g, &big),
                witness: big,
            });
        }
        return certify(g, lists, phi, BoundKind::Clustering, bound);
    }

    let sizes = vec![k; g.vertex_count()];
    let (frames, base) = peel_frames(g, &sizes, PeelWeights::TWO_THIRDS, n0)?;
    let mut partial: Vec<Option<Colour>> = vec![None; g.vertex_count()];
    if !base.is_empty() {
        let cap = base.len().div_ceil(k);
        let phi = balanced_assignment(&short.restrict(&base), cap)
            .ok_or_else(|| Error::Internal("balanced base assignment infeasible".into()))?;
        for (i, &v) in base.iter().enumerate() {
            partial[v] = Some(phi.colour(i));
        }
    }
    let delta = 3 * k - 1;
    unwind(
        g,
        &short,
        &mut partial,
        &frames,
        |sub, reduced, tight, level| {
            stable_set_colour_with_delta(
                sub,
                reduced,
                tight,
                delta,
                seed.wrapping_add(level as u64),
            )
            .map(|s| s.colouring)
        },
    )?;
    let phi = Colouring(partial.into_iter().map(Option::unwrap).collect());
    certify(g, lists, phi, BoundKind::Clustering, bound)
}
