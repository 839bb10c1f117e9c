//! Exhaustive ground truth for tiny instances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BoundKind, Colour, Colouring, Graph, ListAssignment};
use crate::transversal::TransversalInstance;

/// Default limit on the number of complete assignments.
pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub objective: BoundKind,
    /// Least defect or clustering over all list colourings.
    pub minimum: usize,
    /// A colouring attaining the minimum.
    pub witness: Colouring,
    /// Search nodes visited.
    pub explored: u64,
}

fn product_of(sizes: impl Iterator<Item = usize>, cap: u128) -> Result<()> {
    let size = sizes.fold(1u128, |acc, s| acc.saturating_mul(s as u128));
    if size > cap {
        return Err(Error::SizeLimitExceeded { size, cap });
    }
    Ok(())
}

struct Search<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    objective: BoundKind,
    order: Vec<usize>,
    colour: Vec<Option<Colour>>,
    mono_degree: Vec<usize>,
    best: usize,
    best_colouring: Vec<Colour>,
    explored: u64,
    seen: Vec<u32>,
    stamp: u32,
}

impl Search<'_> {
    /// Size of the monochromatic component of `v` among coloured vertices.
    fn component_size(&mut self, v: usize) -> usize {
        self.stamp += 1;
        let c = self.colour[v];
        let mut stack = vec![v];
        self.seen[v] = self.stamp;
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in self.g.neighbors(u) {
                if self.seen[w] != self.stamp && self.colour[w] == c {
                    self.seen[w] = self.stamp;
                    stack.push(w);
                }
            }
        }
        size
    }

    fn run(&mut self, depth: usize, partial: usize) {
        self.explored += 1;
        if partial >= self.best {
            return;
        }
        if depth == self.order.len() {
            self.best = partial;
            self.best_colouring = self.colour.iter().map(|c| c.unwrap()).collect();
            return;
        }
        let v = self.order[depth];
        for i in 0..self.lists.list(v).len() {
            let c = self.lists.list(v)[i];
            self.colour[v] = Some(c);
            let value = match self.objective {
                BoundKind::Defect => {
                    let mut worst = partial;
                    let same: Vec<usize> = self
                        .g
                        .neighbors(v)
                        .iter()
                        .copied()
                        .filter(|&u| self.colour[u] == Some(c) && u != v)
                        .collect();
                    for &u in &same {
                        self.mono_degree[u] += 1;
                        worst = worst.max(self.mono_degree[u]);
                    }
                    self.mono_degree[v] = same.len();
                    worst = worst.max(same.len());
                    self.run(depth + 1, worst);
                    for &u in &same {
                        self.mono_degree[u] -= 1;
                    }
                    self.mono_degree[v] = 0;
                    continue;
                }
                BoundKind::Clustering => partial.max(self.component_size(v)),
            };
            self.run(depth + 1, value);
        }
        self.colour[v] = None;
    }
}

/// Least defect or clustering over every `L`-colouring, by branch and bound
/// over vertices in descending degree order. Fails when the number of
/// colourings exceeds `cap`.
pub fn oracle_colour(
    g: &Graph,
    lists: &ListAssignment,
    objective: BoundKind,
    cap: u128,
) -> Result<OracleResult> {
    let n = g.vertex_count();
    if lists.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: lists.len(),
        });
    }
    product_of(lists.lists().iter().map(Vec::len), cap)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut search = Search {
        g,
        lists,
        objective,
        order,
        colour: vec![None; n],
        mono_degree: vec![0; n],
        best: usize::MAX,
        best_colouring: Vec::new(),
        explored: 0,
        seen: vec![0; n],
        stamp: 0,
    };
    search.run(0, 0);
    Ok(OracleResult {
        objective,
        minimum: search.best,
        witness: Colouring(search.best_colouring),
        explored: search.explored,
    })
}

/// Exhaustive search for an independent transversal; `None` proves that
/// none exists. The first selection in part order is returned.
pub fn oracle_transversal(inst: &TransversalInstance, cap: u128) -> Result<Option<Vec<usize>>> {
    product_of(inst.parts().iter().map(Vec::len), cap)?;
    fn rec(inst: &TransversalInstance, i: usize, chosen: &mut Vec<usize>) -> bool {
        if i == inst.parts().len() {
            return true;
        }
        for &v in &inst.parts()[i] {
            if chosen.iter().all(|&u| !inst.conflict().has_edge(u, v)) {
                chosen.push(v);
                if rec(inst, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    Ok(rec(inst, 0, &mut chosen).then_some(chosen))
}
