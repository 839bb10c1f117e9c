//! Chain recolouring of a bipartite graph whose x-side has two-colour lists
//! and whose y-side is precoloured.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Colour, Graph};
use crate::transversal::traverse_components;

/// Bipartite graph between selectable vertices (x-side, two colours each)
/// and fixed vertices (y-side, one colour each).
///
/// For each colour `c`, the graph induced by the nodes whose list contains
/// `c` must have maximum degree at most 2. Its paths and cycles are oriented
/// along their traversal order, so every node has at most one out- and one
/// in-neighbour sharing any given colour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteRecolourInstance {
    x_lists: Vec<[Colour; 2]>,
    y_colours: Vec<Colour>,
    edges: Vec<(usize, usize)>,
    /// Arcs over node ids, x-nodes first then y-nodes.
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl BipartiteRecolourInstance {
    /// `edges` are `(x, y)` pairs.
    pub fn new(
        x_lists: Vec<[Colour; 2]>,
        y_colours: Vec<Colour>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let (nx, ny) = (x_lists.len(), y_colours.len());
        if let Some(x) = x_lists.iter().position(|l| l[0] == l[1]) {
            return Err(Error::InvalidInput(format!(
                "x-vertex {x} needs two distinct colours"
            )));
        }
        let mut edges = edges;
        edges.sort_unstable();
        edges.dedup();
        if let Some(&(x, y)) = edges.iter().find(|&&(x, y)| x >= nx || y >= ny) {
            return Err(Error::InvalidInput(format!("edge ({x}, {y}) out of range")));
        }

        // Group edges by the colour class containing them; an edge whose
        // y-colour is missing from the x-list lies in no class.
        let mut classes: BTreeMap<Option<Colour>, Vec<(usize, usize)>> = BTreeMap::new();
        for &(x, y) in &edges {
            let c = y_colours[y];
            let key = x_lists[x].contains(&c).then_some(c);
            classes.entry(key).or_default().push((x, nx + y));
        }
        let mut out = vec![Vec::new(); nx + ny];
        let mut inn = vec![Vec::new(); nx + ny];
        for (colour, class_edges) in classes {
            let Some(colour) = colour else {
                for (a, b) in class_edges {
                    out[a].push(b);
                    inn[b].push(a);
                }
                continue;
            };
            let mut nodes: Vec<usize> = class_edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            nodes.sort_unstable();
            nodes.dedup();
            let local = |v: usize| nodes.binary_search(&v).unwrap();
            let hc = Graph::new(
                nodes.len(),
                class_edges.iter().map(|&(a, b)| (local(a), local(b))),
            )?;
            if let Some(v) = (0..nodes.len()).find(|&v| hc.degree(v) > 2) {
                return Err(Error::InvalidInput(format!(
                    "colour class {colour} has degree {} at node {}",
                    hc.degree(v),
                    nodes[v]
                )));
            }
            for (is_cycle, order) in traverse_components(&hc) {
                let mut arcs: Vec<(usize, usize)> =
                    order.windows(2).map(|w| (w[0], w[1])).collect();
                if is_cycle {
                    arcs.push((order[order.len() - 1], order[0]));
                }
                for (a, b) in arcs {
                    out[nodes[a]].push(nodes[b]);
                    inn[nodes[b]].push(nodes[a]);
                }
            }
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
        }
        Ok(BipartiteRecolourInstance {
            x_lists,
            y_colours,
            edges,
            out,
            inn,
        })
    }

    pub fn x_count(&self) -> usize {
        self.x_lists.len()
    }

    pub fn y_count(&self) -> usize {
        self.y_colours.len()
    }

    pub fn x_list(&self, x: usize) -> [Colour; 2] {
        self.x_lists[x]
    }

    pub fn y_colour(&self, y: usize) -> Colour {
        self.y_colours[y]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Largest number of x-vertices in one monochromatic component when the
    /// x-side is coloured by `choice`.
    pub fn max_x_per_component(&self, choice: &[Colour]) -> usize {
        let nx = self.x_count();
        let mono = self
            .edges
            .iter()
            .filter(|&&(x, y)| choice[x] == self.y_colours[y])
            .map(|&(x, y)| (x, nx + y));
        let g = Graph::new(nx + self.y_count(), mono.collect::<Vec<_>>()).expect("edges in range");
        g.components()
            .iter()
            .map(|c| c.iter().filter(|&&v| v < nx).count())
            .max()
            .unwrap_or(0)
    }

    fn node_colour(&self, node: usize, choice: &[Option<Colour>]) -> Colour {
        if node < self.x_count() {
            choice[node].expect("coloured x-node")
        } else {
            self.y_colours[node - self.x_count()]
        }
    }

    /// Next x in a directed path `prev -> y -> x` (or `x -> y -> prev` when
    /// `forward` is false) through a y of the same colour as `prev`.
    fn chain_successor(
        &self,
        prev: usize,
        choice: &[Option<Colour>],
        forward: bool,
    ) -> Option<usize> {
        let c = choice[prev].expect("prev is coloured");
        let step = if forward { &self.out } else { &self.inn };
        step[prev]
            .iter()
            .filter(|&&y| self.node_colour(y, choice) == c)
            .flat_map(|&y| step[y].iter().copied())
            .find(|&x| x < self.x_count() && choice[x].is_none() && self.x_lists[x].contains(&c))
    }
}

/// Colours the x-side so that no monochromatic component contains more than
/// two x-vertices. Uncoloured x-vertices are started from the lowest id with
/// their smaller colour; each chain then follows directed paths through
/// same-coloured y-vertices and forces the next x-vertex onto its other
/// colour.
pub fn recolour_bipartite(inst: &BipartiteRecolourInstance) -> Result<Vec<Colour>> {
    let nx = inst.x_count();
    let mut choice: Vec<Option<Colour>> = vec![None; nx];
    for start in 0..nx {
        if choice[start].is_some() {
            continue;
        }
        choice[start] = Some(inst.x_lists[start][0].min(inst.x_lists[start][1]));
        let mut prev = start;
        loop {
            let next = inst
                .chain_successor(prev, &choice, true)
                .or_else(|| inst.chain_successor(prev, &choice, false));
            let Some(x) = next else { break };
            let avoid = choice[prev].unwrap();
            let [a, b] = inst.x_lists[x];
            choice[x] = Some(if a == avoid { b } else { a });
            prev = x;
        }
    }
    let choice: Vec<Colour> = choice.into_iter().map(Option::unwrap).collect();
    let worst = inst.max_x_per_component(&choice);
    if worst > 2 {
        return Err(Error::Internal(format!(
            "chain recolouring left {worst} x-vertices in one monochromatic component"
        )));
    }
    Ok(choice)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_x_takes_smaller_colour() {
        let inst =
            BipartiteRecolourInstance::new(vec![[2, 1]], vec![1, 1], vec![(0, 0), (0, 1)]).unwrap();
        let choice = recolour_bipartite(&inst).unwrap();
        assert_eq!(choice, vec![1]);
        assert_eq!(inst.max_x_per_component(&choice), 1);
    }

    #[test]
    fn chain_alternates_along_path() {
        // y0 x0 y1 x1 y2, every y coloured 1.
        let inst = BipartiteRecolourInstance::new(
            vec![[1, 2], [1, 2]],
            vec![1, 1, 1],
            vec![(0, 0), (0, 1), (1, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(recolour_bipartite(&inst).unwrap(), vec![1, 2]);
    }

    #[test]
    fn empty_x_side() {
        let inst = BipartiteRecolourInstance::new(vec![], vec![3, 4], vec![]).unwrap();
        assert!(recolour_bipartite(&inst).unwrap().is_empty());
    }

    #[test]
    fn rejects_overloaded_colour_class() {
        let r =
            BipartiteRecolourInstance::new(vec![[1, 2]; 3], vec![1], vec![(0, 0), (1, 0), (2, 0)]);
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    /// Every 2-choice assignment, to compare against the procedure.
    fn best_possible(inst: &BipartiteRecolourInstance) -> usize {
        let nx = inst.x_count();
        (0u32..1 << nx)
            .map(|m| {
                let choice: Vec<Colour> = (0..nx)
                    .map(|x| inst.x_list(x)[((m >> x) & 1) as usize])
                    .collect();
                inst.max_x_per_component(&choice)
            })
            .min()
            .unwrap_or(0)
    }

    #[test]
    fn long_alternating_cycle() {
        // Cycle x0 y0 x1 y1 ... x5 y5 x0, all y coloured 1.
        let n = 6;
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| [(i, i), ((i + 1) % n, i)]).collect();
        let inst = BipartiteRecolourInstance::new(vec![[1, 2]; n], vec![1; n], edges).unwrap();
        let choice = recolour_bipartite(&inst).unwrap();
        assert!(inst.max_x_per_component(&choice) <= 2);
        assert!(best_possible(&inst) <= 2);
    }

    #[test]
    fn mixed_colours_stay_within_two() {
        // Two colour classes interleaved: y coloured 1 or 3, x lists {1,3} or {1,2}.
        let x_lists = vec![[1, 3], [1, 2], [1, 3], [3, 2], [1, 3]];
        let y_colours = vec![1, 3, 1, 3, 1, 2];
        let edges = vec![
            (0, 0),
            (0, 1),
            (1, 0),
            (1, 2),
            (2, 1),
            (2, 2),
            (2, 3),
            (3, 3),
            (3, 5),
            (4, 4),
        ];
        let inst = BipartiteRecolourInstance::new(x_lists, y_colours, edges).unwrap();
        let choice = recolour_bipartite(&inst).unwrap();
        assert!(inst.max_x_per_component(&choice) <= 2);
    }
}
