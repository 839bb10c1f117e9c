//! Independent transversals and the segment stable-set selector.
//!
//! Given a partition of a bounded-degree graph into large parts, an
//! independent transversal picks one vertex per part so that the picks are
//! pairwise non-adjacent. `select_stable_set` cuts the long paths and cycles
//! of a max-degree-2 subgraph into fixed-size segments and takes an
//! independent transversal of the segments, which spreads the chosen
//! vertices evenly along every long path or cycle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalInstance {
    conflict: Graph,
    parts: Vec<Vec<usize>>,
}

impl TransversalInstance {
    /// `parts` must partition the vertices of `conflict`.
    pub fn new(conflict: Graph, parts: Vec<Vec<usize>>) -> Result<Self> {
        let n = conflict.vertex_count();
        let mut owner = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidInput(format!("part {i} is empty")));
            }
            for &v in part {
                if v >= n {
                    return Err(Error::OutOfRange { vertex: v, n });
                }
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidInput(format!("vertex {v} lies in two parts")));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidInput(format!("vertex {v} lies in no part")));
        }
        Ok(TransversalInstance { conflict, parts })
    }

    pub fn conflict(&self) -> &Graph {
        &self.conflict
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn max_degree(&self) -> usize {
        self.conflict.max_degree()
    }

    /// Whether every part has at least `2 * maxDeg` vertices, which
    /// guarantees that an independent transversal exists.
    pub fn meets_size_condition(&self) -> bool {
        let need = 2 * self.max_degree();
        self.parts.iter().all(|p| p.len() >= need)
    }

    /// One vertex per part, pairwise non-adjacent.
    pub fn is_independent_transversal(&self, selection: &[usize]) -> bool {
        selection.len() == self.parts.len()
            && selection
                .iter()
                .zip(&self.parts)
                .all(|(v, part)| part.contains(v))
            && self.conflict.is_stable(selection)
    }
}

struct Search<'a> {
    g: &'a Graph,
    parts: &'a [Vec<usize>],
    selected: Vec<Option<usize>>,
    /// Number of selected neighbours of each vertex.
    blocked: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a TransversalInstance) -> Self {
        Search {
            g: &inst.conflict,
            parts: &inst.parts,
            selected: vec![None; inst.parts.len()],
            blocked: vec![0; inst.conflict.vertex_count()],
        }
    }

    fn select(&mut self, part: usize, v: usize) {
        debug_assert!(self.selected[part].is_none());
        self.selected[part] = Some(v);
        for &u in self.g.neighbors(v) {
            self.blocked[u] += 1;
        }
    }

    fn unselect(&mut self, part: usize) -> usize {
        let v = self.selected[part].take().expect("part has a selection");
        for &u in self.g.neighbors(v) {
            self.blocked[u] -= 1;
        }
        v
    }

    fn free_vertex(&self, part: usize, avoid: Option<usize>) -> Option<usize> {
        self.parts[part]
            .iter()
            .copied()
            .find(|&w| self.blocked[w] == 0 && Some(w) != avoid)
    }

    fn owner_map(&self) -> Vec<usize> {
        let mut owner = vec![0; self.g.vertex_count()];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                owner[v] = i;
            }
        }
        owner
    }

    /// Tries to place part `i` by selecting some `v` and re-placing every
    /// part whose selection blocks `v`.
    fn augment(&mut self, i: usize, owner: &[usize]) -> bool {
        for idx in 0..self.parts[i].len() {
            let v = self.parts[i][idx];
            let blockers: Vec<usize> = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&&u| self.selected[owner[u]] == Some(u))
                .map(|&u| owner[u])
                .collect();
            let previous: Vec<usize> = blockers.iter().map(|&j| self.unselect(j)).collect();
            self.select(i, v);
            let mut placed = Vec::new();
            for (&j, &old) in blockers.iter().zip(&previous) {
                match self.free_vertex(j, Some(old)) {
                    Some(w) => {
                        self.select(j, w);
                        placed.push(j);
                    }
                    None => break,
                }
            }
            if placed.len() == blockers.len() {
                return true;
            }
            for j in placed {
                self.unselect(j);
            }
            self.unselect(i);
            for (&j, &old) in blockers.iter().zip(&previous) {
                self.select(j, old);
            }
        }
        false
    }

    /// Exhaustive search over the unplaced parts, most constrained first.
    fn backtrack(&mut self) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for (i, sel) in self.selected.iter().enumerate() {
            if sel.is_some() {
                continue;
            }
            let free = self.parts[i]
                .iter()
                .filter(|&&w| self.blocked[w] == 0)
                .count();
            if best.is_none_or(|(_, f)| free < f) {
                best = Some((i, free));
            }
        }
        let Some((i, free)) = best else {
            return true;
        };
        if free == 0 {
            return false;
        }
        for idx in 0..self.parts[i].len() {
            let v = self.parts[i][idx];
            if self.blocked[v] != 0 {
                continue;
            }
            self.select(i, v);
            if self.backtrack() {
                return true;
            }
            self.unselect(i);
        }
        false
    }
}

/// Finds an independent transversal. Greedy placement with single-level
/// augmentation handles almost all instances; an exhaustive search settles
/// the rest, so `NotFound` means none exists.
pub fn independent_transversal(inst: &TransversalInstance) -> Result<Vec<usize>> {
    let mut search = Search::new(inst);
    let owner = search.owner_map();
    let mut stuck = false;
    for i in 0..inst.parts.len() {
        if let Some(v) = search.free_vertex(i, None) {
            search.select(i, v);
        } else if !search.augment(i, &owner) {
            stuck = true;
            break;
        }
    }
    if stuck {
        search = Search::new(inst);
        if !search.backtrack() {
            return Err(Error::NotFound);
        }
    }
    let selection: Vec<usize> = search.selected.iter().map(|s| s.unwrap()).collect();
    if !inst.is_independent_transversal(&selection) {
        return Err(Error::Internal(
            "transversal search returned a conflicting set".into(),
        ));
    }
    Ok(selection)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentClass {
    /// Cycle with at least `8Δ - 12` vertices.
    Cycle,
    /// Path with at least `2Δ - 2` vertices.
    Path,
    Short,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentKind {
    A,
    B,
}

/// A run of consecutive vertices `order[start..start + len]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPlan {
    pub class: ComponentClass,
    /// Vertices in traversal order.
    pub order: Vec<usize>,
    pub segments: Vec<Segment>,
}

impl ComponentPlan {
    pub fn a_segments(&self) -> impl Iterator<Item = &[usize]> {
        self.segments
            .iter()
            .filter(|s| s.kind == SegmentKind::A)
            .map(|s| &self.order[s.start..s.start + s.len])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentPlan {
    pub max_degree: usize,
    pub components: Vec<ComponentPlan>,
}

/// Walks each component of a max-degree-2 graph. Paths start at their
/// lower-id end; cycles start at their lowest vertex and continue towards
/// its lower neighbour.
pub(crate) fn traverse_components(h: &Graph) -> Vec<(bool, Vec<usize>)> {
    let mut out = Vec::new();
    for comp in h.components() {
        let is_cycle = comp.len() >= 3 && comp.iter().all(|&v| h.degree(v) == 2);
        let start = if is_cycle {
            comp[0]
        } else {
            *comp.iter().find(|&&v| h.degree(v) <= 1).unwrap()
        };
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = h
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&u| u != prev && u != start);
            match next {
                Some(u) if order.len() < comp.len() => {
                    order.push(u);
                    prev = cur;
                    cur = u;
                }
                _ => break,
            }
        }
        out.push((is_cycle, order));
    }
    out
}

fn plan_cycle(order: Vec<usize>, delta: usize) -> ComponentPlan {
    let a_len = 2 * delta - 4;
    let step = 2 * delta - 3;
    let (a, b) = (order.len() / step, order.len() % step);
    let mut segments = Vec::with_capacity(2 * a);
    let mut pos = 0;
    for i in 0..a {
        segments.push(Segment {
            kind: SegmentKind::A,
            start: pos,
            len: a_len,
        });
        pos += a_len;
        let extra = b / a + usize::from(i < b % a);
        segments.push(Segment {
            kind: SegmentKind::B,
            start: pos,
            len: 1 + extra,
        });
        pos += 1 + extra;
    }
    debug_assert_eq!(pos, order.len());
    ComponentPlan {
        class: ComponentClass::Cycle,
        order,
        segments,
    }
}

fn plan_path(order: Vec<usize>, delta: usize) -> ComponentPlan {
    let a_len = 2 * delta - 4;
    let step = 2 * delta - 3;
    // |P| = step * a + b - 1 with both end blocks nonempty (b >= 2).
    let a = (order.len() - 1) / step;
    let b = order.len() + 1 - step * a;
    let mut segments = Vec::with_capacity(2 * a + 1);
    let mut pos = 0;
    let mut push = |kind, len: usize, segments: &mut Vec<Segment>| {
        segments.push(Segment {
            kind,
            start: pos,
            len,
        });
        pos += len;
    };
    push(SegmentKind::B, b.div_ceil(2), &mut segments);
    for i in 0..a {
        push(SegmentKind::A, a_len, &mut segments);
        let len = if i + 1 == a { b / 2 } else { 1 };
        push(SegmentKind::B, len, &mut segments);
    }
    debug_assert_eq!(pos, order.len());
    ComponentPlan {
        class: ComponentClass::Path,
        order,
        segments,
    }
}

/// Stable set `S` of `g` made of vertices with degree 2 in `h`, one in each
/// A-segment of the plan. `h` is a spanning subgraph of `g` with maximum
/// degree at most 2 and `delta >= max(3, Δ(g))`.
///
/// The segmentation gives, for `S`:
/// * a subpath of `h` with at least `3Δ - 5` vertices that contains an end
///   of a path component meets `S`;
/// * such a subpath with at least `5Δ - 8` vertices meets `S` twice;
/// * a connected subgraph of `h` with at least `ceil(19Δ/2) - 16` vertices
///   meets `S` three times.
pub fn select_stable_set(g: &Graph, h: &Graph, delta: usize) -> Result<(Vec<usize>, SegmentPlan)> {
    if delta < 3 {
        return Err(Error::InvalidInput(format!(
            "Δ must be at least 3, got {delta}"
        )));
    }
    let n = g.vertex_count();
    if h.vertex_count() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: h.vertex_count(),
        });
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) > delta) {
        return Err(Error::precondition(
            v,
            format!("degree exceeds Δ = {delta}"),
        ));
    }
    if let Some(v) = (0..n).find(|&v| h.degree(v) > 2) {
        return Err(Error::precondition(v, "degree in H exceeds 2"));
    }
    if let Some((u, v)) = h.edges().find(|&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::InvalidInput(format!(
            "H edge ({u}, {v}) is not an edge of G"
        )));
    }

    let mut components = Vec::new();
    for (is_cycle, order) in traverse_components(h) {
        let plan = if is_cycle && order.len() >= 8 * delta - 12 {
            plan_cycle(order, delta)
        } else if !is_cycle && order.len() >= 2 * delta - 2 {
            plan_path(order, delta)
        } else {
            ComponentPlan {
                class: ComponentClass::Short,
                order,
                segments: Vec::new(),
            }
        };
        components.push(plan);
    }
    let plan = SegmentPlan {
        max_degree: delta,
        components,
    };

    let segments: Vec<&[usize]> = plan
        .components
        .iter()
        .flat_map(|c| c.a_segments())
        .collect();
    if segments.is_empty() {
        return Ok((Vec::new(), plan));
    }
    let vertices: Vec<usize> = segments.iter().flat_map(|s| s.iter().copied()).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = i;
    }
    let conflict_edges = vertices.iter().flat_map(|&v| {
        let index = &index;
        g.neighbors(v)
            .iter()
            .filter(move |&&u| index[u] != usize::MAX && u > v && !h.has_edge(u, v))
            .map(move |&u| (index[v], index[u]))
    });
    let conflict = Graph::new(vertices.len(), conflict_edges.collect::<Vec<_>>())?;
    let mut parts = Vec::with_capacity(segments.len());
    let mut pos = 0;
    for s in &segments {
        parts.push((pos..pos + s.len()).collect());
        pos += s.len();
    }
    let inst = TransversalInstance::new(conflict, parts)?;
    let picks = independent_transversal(&inst)?;
    let mut stable: Vec<usize> = picks.into_iter().map(|i| vertices[i]).collect();
    stable.sort_unstable();
    if !g.is_stable(&stable) || stable.iter().any(|&s| h.degree(s) != 2) {
        return Err(Error::Internal(
            "segment transversal is not a stable set of H-degree-2 vertices".into(),
        ));
    }
    Ok((stable, plan))
}
