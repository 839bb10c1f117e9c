//! Defective list-colouring of graphs with bounded maximum average degree.
//!
//! The solver peels vertices that carry a lot of weight towards the already
//! peeled part, colours the peeled part recursively and then extends the
//! colouring to the remainder with a local-search colouring on reduced lists.
//! When every vertex peels, the peel order itself certifies that the graph is
//! denser than the requested bound.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{
    certify, BoundKind, Colour, Colouring, Graph, ListAssignment, MonoView, Solution,
};
use crate::local::{descend, random_colouring};
use crate::sparsity::Density;

/// Ordered peel sets and the residual vertices that never became eligible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelDecomposition {
    pub layers: Vec<Vec<usize>>,
    pub residual: Vec<usize>,
    pub exhausted: bool,
}

impl PeelDecomposition {
    pub fn peeled(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.layers.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectParams {
    /// List size.
    pub k: usize,
    /// Target defect.
    pub d: usize,
    /// Only subgraphs with at least `n0` vertices are assumed sparse.
    pub n0: usize,
}

impl DefectParams {
    pub fn new(k: usize, d: usize, n0: usize) -> Result<Self> {
        if k == 0 || n0 == 0 {
            return Err(Error::InvalidInput("k and n0 must be positive".into()));
        }
        Ok(DefectParams { k, d, n0 })
    }

    /// `max(ceil((n0 - 1) / k) - 1, d)`.
    pub fn final_defect(&self) -> usize {
        (self.n0 - 1).div_ceil(self.k).saturating_sub(1).max(self.d)
    }

    /// The density below which the guarantee applies: `(2d + 2) k / (d + 2)`.
    pub fn density_threshold(&self) -> Density {
        Density::new(((2 * self.d + 2) * self.k) as u64, (self.d + 2) as u64)
    }
}

/// Local-minimum colouring from a seeded random start.
pub fn local_min_colouring(g: &Graph, lists: &ListAssignment, seed: u64) -> Colouring {
    let mut phi = random_colouring(lists, seed);
    descend(g, lists, &mut phi);
    phi
}

/// Colouring with defect at most `d`, provided
/// `deg(v) + 1 <= |L(v)| (d + 1)` for every vertex.
pub fn defective_colour(g: &Graph, lists: &ListAssignment, d: usize) -> Result<Colouring> {
    defective_colour_seeded(g, lists, d, 0)
}

pub fn defective_colour_seeded(
    g: &Graph,
    lists: &ListAssignment,
    d: usize,
    seed: u64,
) -> Result<Colouring> {
    for v in 0..g.vertex_count() {
        if g.degree(v) + 1 > lists.list(v).len() * (d + 1) {
            return Err(Error::precondition(
                v,
                format!(
                    "degree {} + 1 exceeds list size {} times {}",
                    g.degree(v),
                    lists.list(v).len(),
                    d + 1
                ),
            ));
        }
    }
    let phi = local_min_colouring(g, lists, seed);
    let defect = MonoView::new(g, &phi).defect();
    if defect > d {
        return Err(Error::Internal(format!(
            "local minimum has defect {defect} > {d}"
        )));
    }
    Ok(phi)
}

/// Maximal sequence of vertices with
/// `(d + 1) deg_A(v) + deg_B(v) >= (d + 1) k`, where `A` is the set peeled
/// before `v`. The lowest eligible id is always taken next.
pub fn peel_defective(g: &Graph, k: usize, d: usize) -> PeelDecomposition {
    let n = g.vertex_count();
    let target = (d + 1) * k;
    let score = |deg: usize, deg_a: usize| deg + d * deg_a;
    let mut deg_a = vec![0usize; n];
    let mut peeled = vec![false; n];
    let mut eligible: BTreeSet<usize> = (0..n)
        .filter(|&v| score(g.degree(v), 0) >= target)
        .collect();
    let mut layers = Vec::new();
    while let Some(v) = eligible.pop_first() {
        peeled[v] = true;
        layers.push(vec![v]);
        for &u in g.neighbors(v) {
            if !peeled[u] {
                deg_a[u] += 1;
                if score(g.degree(u), deg_a[u]) >= target {
                    eligible.insert(u);
                }
            }
        }
    }
    let residual: Vec<usize> = (0..n).filter(|&v| !peeled[v]).collect();
    PeelDecomposition {
        exhausted: residual.is_empty() && n > 0,
        layers,
        residual,
    }
}

/// Colours `b` given the colours already fixed in `partial`, with no
/// monochromatic edge from `b` to a coloured vertex.
fn extend_into(
    g: &Graph,
    lists: &ListAssignment,
    partial: &mut [Option<Colour>],
    b: &[usize],
    d: usize,
    seed: u64,
) -> Result<()> {
    let mut reduced = Vec::with_capacity(b.len());
    for &v in b {
        let list: Vec<Colour> = lists
            .list(v)
            .iter()
            .copied()
            .filter(|&c| g.neighbors(v).iter().all(|&u| partial[u] != Some(c)))
            .collect();
        if list.is_empty() {
            return Err(Error::precondition(
                v,
                "every colour is used by a coloured neighbour",
            ));
        }
        reduced.push(list);
    }
    let sub = g.induced(b);
    let sub_lists = ListAssignment::from_sorted(reduced);
    let phi = defective_colour_seeded(&sub, &sub_lists, d, seed).map_err(|e| match e {
        Error::PreconditionViolated { vertex, reason } => Error::PreconditionViolated {
            vertex: b[vertex],
            reason,
        },
        other => other,
    })?;
    for (i, &v) in b.iter().enumerate() {
        partial[v] = Some(phi.colour(i));
    }
    Ok(())
}

/// Extends a colouring of `G[A]` (given as `a_colours`, aligned with `a`)
/// to all of `G` with defect at most `d_final`. Each uncoloured vertex loses
/// the colours of its coloured neighbours and must still satisfy
/// `deg_B(v) + 1 <= |L'(v)| (d + 1)`.
pub fn extend_defective(
    g: &Graph,
    lists: &ListAssignment,
    a: &[usize],
    a_colours: &[Colour],
    d: usize,
    d_final: usize,
) -> Result<Colouring> {
    let n = g.vertex_count();
    if a.len() != a_colours.len() {
        return Err(Error::SizeMismatch {
            expected: a.len(),
            found: a_colours.len(),
        });
    }
    if d > d_final {
        return Err(Error::InvalidInput(
            "d must not exceed the final defect".into(),
        ));
    }
    let mut partial = vec![None; n];
    for (&v, &c) in a.iter().zip(a_colours) {
        if v >= n {
            return Err(Error::OutOfRange { vertex: v, n });
        }
        if !lists.contains(v, c) {
            return Err(Error::InvalidColouring {
                vertex: v,
                colour: c,
            });
        }
        partial[v] = Some(c);
    }
    let a_view = MonoView::new(&g.induced(a), &Colouring(a_colours.to_vec()));
    if let Some(i) = (0..a.len()).find(|&i| a_view.mono_degree(i) > d_final) {
        return Err(Error::precondition(
            a[i],
            "partial colouring exceeds the final defect",
        ));
    }
    let b: Vec<usize> = (0..n).filter(|&v| partial[v].is_none()).collect();
    extend_into(g, lists, &mut partial, &b, d, 0)?;
    Ok(Colouring(partial.into_iter().map(Option::unwrap).collect()))
}

/// Assigns every vertex a colour from its list so that no colour is used
/// more than `cap` times. Solved as a bipartite transportation problem.
pub(crate) fn balanced_assignment(lists: &ListAssignment, cap: usize) -> Option<Colouring> {
    let n = lists.len();
    let mut palette: Vec<Colour> = lists.lists().iter().flatten().copied().collect();
    palette.sort_unstable();
    palette.dedup();
    let (source, sink) = (n + palette.len(), n + palette.len() + 1);
    let mut net = FlowNetwork::new(n + palette.len() + 2);
    let mut arcs = Vec::new();
    for v in 0..n {
        net.add_edge(source, v, 1);
        for &c in lists.list(v) {
            let ci = palette.binary_search(&c).unwrap();
            arcs.push((v, c, net.add_edge(v, n + ci, 1)));
        }
    }
    for ci in 0..palette.len() {
        net.add_edge(n + ci, sink, cap as i64);
    }
    if net.max_flow(source, sink) != n as i64 {
        return None;
    }
    let mut colours = vec![0; n];
    for (v, c, handle) in arcs {
        if net.flow_on(handle) > 0 {
            colours[v] = c;
        }
    }
    Some(Colouring(colours))
}

/// L-colouring with defect at most `max(ceil((n0-1)/k) - 1, d)` for a
/// `k`-list-assignment, or a dense subgraph showing that
/// `mad(G, n0) >= (2d + 2) k / (d + 2)`.
pub fn choose_defective(
    g: &Graph,
    lists: &ListAssignment,
    params: DefectParams,
    seed: u64,
) -> Result<Solution> {
    let n = g.vertex_count();
    if lists.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: lists.len(),
        });
    }
    if let Some(v) = (0..n).find(|&v| lists.list(v).len() < params.k) {
        return Err(Error::precondition(
            v,
            format!("list smaller than k = {}", params.k),
        ));
    }
    let d_final = params.final_defect();

    // Nested vertex sets, outermost first, each with the residual part that
    // is coloured by extension once its peeled part is coloured.
    let mut frames: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    while current.len() >= params.n0 {
        let sub = g.induced(&current);
        let peel = peel_defective(&sub, params.k, params.d);
        if peel.exhausted {
            return Err(Error::DensityViolation {
                density: Density::of_subgraph(g, &current),
                witness: current,
            });
        }
        frames.push(peel.residual.iter().map(|&i| current[i]).collect());
        current = peel.peeled().iter().map(|&i| current[i]).collect();
    }

    let mut partial: Vec<Option<Colour>> = vec![None; n];
    if !current.is_empty() {
        let cap = current.len().div_ceil(params.k);
        let base = balanced_assignment(&lists.restrict(&current), cap)
            .ok_or_else(|| Error::Internal("balanced base assignment infeasible".into()))?;
        for (i, &v) in current.iter().enumerate() {
            partial[v] = Some(base.colour(i));
        }
    }
    for (level, residual) in frames.iter().enumerate().rev() {
        extend_into(
            g,
            lists,
            &mut partial,
            residual,
            params.d,
            seed.wrapping_add(level as u64),
        )
        .map_err(|e| Error::Internal(format!("extension failed: {e}")))?;
    }
    let phi = Colouring(partial.into_iter().map(Option::unwrap).collect());
    certify(g, lists, phi, BoundKind::Defect, d_final)
}
