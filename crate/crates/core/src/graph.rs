//! Graph, list-assignment and colouring data model.
//!
//! Vertices are dense ids `0..n`. Colours are arbitrary `u32` values. Every
//! solver in the crate takes a [`Graph`] and a [`ListAssignment`] and returns
//! a [`Colouring`], which is measured through a [`MonoView`].

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparsity::Density;

pub type Colour = u32;

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges (in either direction)
    /// are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            edge_count: edge_count / 2,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Number of neighbours of `v` inside the set given by `mask`.
    pub fn degree_in(&self, v: usize, mask: &[bool]) -> usize {
        self.adj[v].iter().filter(|&&u| mask[u]).count()
    }

    /// Induced subgraph on `vertices`. Vertex `i` of the result is
    /// `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut edge_count = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &u in &self.adj[v] {
                if index[u] != usize::MAX {
                    adj[i].push(index[u]);
                }
            }
            adj[i].sort_unstable();
            edge_count += adj[i].len();
        }
        Graph {
            adj,
            edge_count: edge_count / 2,
        }
    }

    /// Number of edges with both ends in `vertices`.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut mask = vec![false; self.vertex_count()];
        for &v in vertices {
            mask[v] = true;
        }
        vertices
            .iter()
            .map(|&v| self.degree_in(v, &mask))
            .sum::<usize>()
            / 2
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_stable(&self, set: &[usize]) -> bool {
        let mut mask = vec![false; self.vertex_count()];
        for &v in set {
            mask[v] = true;
        }
        set.iter().all(|&v| self.degree_in(v, &mask) == 0)
    }
}

/// Per-vertex sets of allowed colours. Lists are kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: Vec<Vec<Colour>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<Colour>>) -> Result<Self> {
        let mut lists = lists;
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.is_empty() {
                return Err(Error::InvalidInput(format!("empty list at vertex {v}")));
            }
        }
        Ok(ListAssignment { lists })
    }

    /// Every vertex gets the same list.
    pub fn uniform(n: usize, colours: &[Colour]) -> Result<Self> {
        Self::new(vec![colours.to_vec(); n])
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> &[Colour] {
        &self.lists[v]
    }

    pub fn contains(&self, v: usize, c: Colour) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    /// Smallest list size; `0` for an empty assignment.
    pub fn min_size(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn lists(&self) -> &[Vec<Colour>] {
        &self.lists
    }

    /// Lists of the given vertices, in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> ListAssignment {
        ListAssignment {
            lists: vertices.iter().map(|&v| self.lists[v].clone()).collect(),
        }
    }

    /// Keeps the first `k` colours of every list.
    pub fn truncate(&self, k: usize) -> ListAssignment {
        ListAssignment {
            lists: self
                .lists
                .iter()
                .map(|l| l[..k.min(l.len()).max(1)].to_vec())
                .collect(),
        }
    }

    pub(crate) fn from_sorted(lists: Vec<Vec<Colour>>) -> Self {
        ListAssignment { lists }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Colouring(pub Vec<Colour>);

impl Colouring {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colour(&self, v: usize) -> Colour {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[Colour] {
        &self.0
    }

    /// First vertex whose colour is not in its list.
    pub fn first_invalid(&self, lists: &ListAssignment) -> Option<usize> {
        (0..self.len()).find(|&v| !lists.contains(v, self.0[v]))
    }

    pub fn is_valid_for(&self, lists: &ListAssignment) -> bool {
        self.len() == lists.len() && self.first_invalid(lists).is_none()
    }

    /// Number of monochromatic edges.
    pub fn mono_edge_count(&self, g: &Graph) -> usize {
        g.edges().filter(|&(u, v)| self.0[u] == self.0[v]).count()
    }
}

/// The monochromatic subgraph of a coloured graph.
#[derive(Debug, Clone)]
pub struct MonoView {
    mono_degree: Vec<usize>,
    component_of: Vec<usize>,
    component_sizes: Vec<usize>,
    mono_edge_count: usize,
}

impl MonoView {
    pub fn new(g: &Graph, colouring: &Colouring) -> Self {
        let n = g.vertex_count();
        let phi = colouring.as_slice();
        let mono_degree: Vec<usize> = (0..n)
            .map(|v| g.neighbors(v).iter().filter(|&&u| phi[u] == phi[v]).count())
            .collect();
        let mono_edge_count = mono_degree.iter().sum::<usize>() / 2;

        let mut component_of = vec![usize::MAX; n];
        let mut component_sizes = Vec::new();
        for start in 0..n {
            if component_of[start] != usize::MAX {
                continue;
            }
            let id = component_sizes.len();
            component_of[start] = id;
            let mut size = 0;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                size += 1;
                for &u in g.neighbors(v) {
                    if phi[u] == phi[v] && component_of[u] == usize::MAX {
                        component_of[u] = id;
                        stack.push(u);
                    }
                }
            }
            component_sizes.push(size);
        }
        MonoView {
            mono_degree,
            component_of,
            component_sizes,
            mono_edge_count,
        }
    }

    pub fn mono_degree(&self, v: usize) -> usize {
        self.mono_degree[v]
    }

    pub fn mono_degrees(&self) -> &[usize] {
        &self.mono_degree
    }

    pub fn mono_edge_count(&self) -> usize {
        self.mono_edge_count
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn component_sizes(&self) -> &[usize] {
        &self.component_sizes
    }

    /// Monochromatic components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.component_sizes.len()];
        for (v, &c) in self.component_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Maximum monochromatic degree; `0` on the empty graph.
    pub fn defect(&self) -> usize {
        self.mono_degree.iter().copied().max().unwrap_or(0)
    }

    /// Largest monochromatic component; `0` on the empty graph.
    pub fn clustering(&self) -> usize {
        self.component_sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn measured(&self, kind: BoundKind) -> usize {
        match kind {
            BoundKind::Defect => self.defect(),
            BoundKind::Clustering => self.clustering(),
        }
    }
}

pub fn mono_view(g: &Graph, colouring: &Colouring) -> MonoView {
    MonoView::new(g, colouring)
}

pub fn defect_of(view: &MonoView) -> usize {
    view.defect()
}

pub fn clustering_of(view: &MonoView) -> usize {
    view.clustering()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Defect,
    Clustering,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::Defect => f.write_str("defect"),
            BoundKind::Clustering => f.write_str("clustering"),
        }
    }
}

/// Dense subgraph attached to a report when a solver's sparsity
/// precondition turns out to be false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub witness: Vec<usize>,
    pub density: Density,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub kind: BoundKind,
    pub bound: usize,
    pub defect: usize,
    pub clustering: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
}

impl Report {
    pub fn measured(&self) -> usize {
        match self.kind {
            BoundKind::Defect => self.defect,
            BoundKind::Clustering => self.clustering,
        }
    }
}

/// A colouring returned by a solver together with its verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub colouring: Colouring,
    pub report: Report,
}

/// Verifies a solver's output and turns a missed bound into an internal
/// error, so that no solver returns an unverified colouring.
pub(crate) fn certify(
    g: &Graph,
    lists: &ListAssignment,
    colouring: Colouring,
    kind: BoundKind,
    bound: usize,
) -> Result<Solution> {
    let report = verify(g, lists, &colouring, kind, bound)?;
    if !report.ok {
        return Err(Error::Internal(format!(
            "{kind} {} exceeds guaranteed bound {bound}",
            report.measured()
        )));
    }
    Ok(Solution { colouring, report })
}

/// Checks that `colouring` is an `lists`-colouring and measures it against
/// `bound`.
pub fn verify(
    g: &Graph,
    lists: &ListAssignment,
    colouring: &Colouring,
    kind: BoundKind,
    bound: usize,
) -> Result<Report> {
    let n = g.vertex_count();
    if lists.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: lists.len(),
        });
    }
    if colouring.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: colouring.len(),
        });
    }
    if let Some(v) = colouring.first_invalid(lists) {
        return Err(Error::InvalidColouring {
            vertex: v,
            colour: colouring.colour(v),
        });
    }
    let view = MonoView::new(g, colouring);
    let defect = view.defect();
    let clustering = view.clustering();
    let measured = match kind {
        BoundKind::Defect => defect,
        BoundKind::Clustering => clustering,
    };
    Ok(Report {
        kind,
        bound,
        defect,
        clustering,
        ok: measured <= bound,
        certificate: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn builds_path_and_complete() {
        let p = path3();
        assert_eq!(p.edge_count(), 2);
        assert_eq!(p.neighbors(1), &[0, 2]);
        let k4 = complete(4);
        assert_eq!(k4.edge_count(), 6);
        assert!((0..4).all(|v| k4.degree(v) == 3));
    }

    #[test]
    fn rejects_self_loop_and_out_of_range() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::OutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn merges_duplicates() {
        let g = Graph::new(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn mono_view_examples() {
        let c4 = cycle(4);
        let view = MonoView::new(&c4, &Colouring(vec![1, 2, 1, 2]));
        assert_eq!(view.mono_edge_count(), 0);
        assert!(view.component_sizes().iter().all(|&s| s == 1));

        let k4 = complete(4);
        let view = MonoView::new(&k4, &Colouring(vec![1; 4]));
        assert_eq!(view.mono_degrees(), &[3, 3, 3, 3]);
        assert_eq!(view.component_sizes(), &[4]);

        let view = MonoView::new(&path3(), &Colouring(vec![1, 1, 2]));
        assert_eq!(view.mono_degrees(), &[1, 1, 0]);
        assert_eq!(view.clustering(), 2);
    }

    #[test]
    fn defect_and_clustering_examples() {
        let view = MonoView::new(&Graph::empty(0), &Colouring(vec![]));
        assert_eq!((view.defect(), view.clustering()), (0, 0));

        let view = MonoView::new(&cycle(5), &Colouring(vec![7; 5]));
        assert_eq!((defect_of(&view), clustering_of(&view)), (2, 5));

        let view = MonoView::new(&complete(4), &Colouring(vec![1, 1, 2, 2]));
        assert_eq!((view.defect(), view.clustering()), (1, 2));
    }

    #[test]
    fn verify_examples() {
        let c4 = cycle(4);
        let lists = ListAssignment::uniform(4, &[1, 2]).unwrap();
        let r = verify(
            &c4,
            &lists,
            &Colouring(vec![1, 2, 1, 2]),
            BoundKind::Defect,
            0,
        )
        .unwrap();
        assert!(r.ok);

        let k4 = complete(4);
        let lists = ListAssignment::uniform(4, &[1]).unwrap();
        let r = verify(
            &k4,
            &lists,
            &Colouring(vec![1; 4]),
            BoundKind::Clustering,
            2,
        )
        .unwrap();
        assert!(!r.ok);
        assert_eq!(r.clustering, 4);

        let lists = ListAssignment::new(vec![vec![1], vec![2], vec![1]]).unwrap();
        let err = verify(
            &path3(),
            &lists,
            &Colouring(vec![1, 1, 1]),
            BoundKind::Defect,
            5,
        );
        assert_eq!(
            err,
            Err(Error::InvalidColouring {
                vertex: 1,
                colour: 1
            })
        );
    }

    #[test]
    fn induced_subgraph_keeps_order() {
        let k4 = complete(4);
        let h = k4.induced(&[3, 1]);
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(k4.induced_edge_count(&[0, 1, 2]), 3);
    }

    #[test]
    fn empty_list_rejected() {
        assert!(ListAssignment::new(vec![vec![1], vec![]]).is_err());
    }
}
