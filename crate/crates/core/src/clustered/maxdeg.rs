//! Clustered colouring of bounded-degree graphs, optionally with a stable set
//! of vertices that carry one list entry less than the others.

use crate::error::{Error, Result};
use crate::graph::{
    certify, BoundKind, Colour, Colouring, Graph, ListAssignment, MonoView, Solution,
};
use crate::local::{find_improving_move, is_local_min, neighbours_coloured, random_colouring};
use crate::transversal::{select_stable_set, traverse_components};

use super::{
    check_sizes, mono_graph, recolour_bipartite, stable_mask, BipartiteRecolourInstance, Potential,
    SelectedBipartite,
};

/// Alternative colour `β_v` for each vertex of monochromatic degree 2
/// outside the stable set: a colour of `L(v)` other than `φ(v)` seen on at
/// most two neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedLists {
    beta: Vec<Option<Colour>>,
}

impl RestrictedLists {
    fn compute(g: &Graph, lists: &ListAssignment, phi: &Colouring, in_i: &[bool]) -> Result<Self> {
        let view = MonoView::new(g, phi);
        let mut beta = vec![None; g.vertex_count()];
        for v in 0..g.vertex_count() {
            if in_i[v] || view.mono_degree(v) != 2 {
                continue;
            }
            let b = lists
                .list(v)
                .iter()
                .copied()
                .find(|&c| c != phi.colour(v) && neighbours_coloured(g, phi, v, c) <= 2)
                .ok_or_else(|| {
                    Error::Internal(format!("no alternative colour at defect-2 vertex {v}"))
                })?;
            beta[v] = Some(b);
        }
        Ok(RestrictedLists { beta })
    }

    pub fn beta(&self, v: usize) -> Option<Colour> {
        self.beta[v]
    }

    /// `{φ(v), β_v}` in ascending order, when `β_v` exists.
    pub fn pair(&self, v: usize, phi: &Colouring) -> Option<[Colour; 2]> {
        self.beta[v].map(|b| {
            let a = phi.colour(v);
            [a.min(b), a.max(b)]
        })
    }
}

/// `deg(v) + 2 <= 3|L(v)|` off `in_i`, `deg(v) + 1 <= 3|L(v)|` on it.
fn check_defect2_lists(g: &Graph, lists: &ListAssignment, in_i: &[bool]) -> Result<()> {
    for (v, &on_i) in in_i.iter().enumerate() {
        let slack = if on_i { 1 } else { 2 };
        if g.degree(v) + slack > 3 * lists.list(v).len() {
            return Err(Error::precondition(
                v,
                format!(
                    "degree {} + {slack} exceeds three times list size {}",
                    g.degree(v),
                    lists.list(v).len()
                ),
            ));
        }
    }
    Ok(())
}

/// Local-minimum colouring with defect at most 2, with an alternative colour
/// for every defect-2 vertex outside `stable`.
pub fn defect2_base(
    g: &Graph,
    lists: &ListAssignment,
    stable: &[usize],
    seed: u64,
) -> Result<(Colouring, RestrictedLists)> {
    check_sizes(g, lists)?;
    let in_i = stable_mask(g, stable)?;
    check_defect2_lists(g, lists, &in_i)?;
    let mut phi = random_colouring(lists, seed);
    crate::local::descend(g, lists, &mut phi);
    let defect = MonoView::new(g, &phi).defect();
    if defect > 2 {
        return Err(Error::Internal(format!(
            "local minimum has defect {defect}"
        )));
    }
    let restricted = RestrictedLists::compute(g, lists, &phi, &in_i)?;
    Ok((phi, restricted))
}

/// The graph obtained by deleting every non-monochromatic edge at a stable
/// set `I` and contracting each directed monochromatic edge `v -> x` with
/// `x` in `I` of monochromatic degree 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    contracted: Graph,
    mono: Graph,
    /// Original vertices of each contracted vertex; the surviving vertex of
    /// a contraction comes first.
    members: Vec<Vec<usize>>,
    image: Vec<usize>,
}

impl ContractionMap {
    pub fn build(g: &Graph, phi: &Colouring, in_i: &[bool]) -> Result<Self> {
        let n = g.vertex_count();
        let mono = mono_graph(g, phi);
        let mut absorbed_into = vec![usize::MAX; n];
        for (is_cycle, order) in traverse_components(&mono) {
            let len = order.len();
            let arcs = (0..len.saturating_sub(1)).map(|i| (order[i], order[i + 1]));
            let closing = is_cycle.then(|| (order[len - 1], order[0]));
            for (v, x) in arcs.chain(closing) {
                if in_i[x] && mono.degree(x) == 2 {
                    absorbed_into[x] = v;
                }
            }
        }
        let mut image = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if absorbed_into[v] == usize::MAX {
                image[v] = members.len();
                members.push(vec![v]);
            }
        }
        for x in 0..n {
            let v = absorbed_into[x];
            if v != usize::MAX {
                if absorbed_into[v] != usize::MAX {
                    return Err(Error::Internal(format!("contraction chain at {v} -> {x}")));
                }
                image[x] = image[v];
                members[image[v]].push(x);
            }
        }
        let map_edges = |edges: Vec<(usize, usize)>| {
            edges
                .into_iter()
                .map(|(u, v)| (image[u], image[v]))
                .filter(|(a, b)| a != b)
                .collect::<Vec<_>>()
        };
        let kept: Vec<(usize, usize)> = g
            .edges()
            .filter(|&(u, v)| !(in_i[u] || in_i[v]) || phi.colour(u) == phi.colour(v))
            .collect();
        let contracted = Graph::new(members.len(), map_edges(kept))?;
        let mono_contracted = Graph::new(members.len(), map_edges(mono.edges().collect()))?;
        if contracted.max_degree() > g.max_degree() {
            return Err(Error::Internal(
                "contraction raised the maximum degree".into(),
            ));
        }
        Ok(ContractionMap {
            contracted,
            mono: mono_contracted,
            members,
            image,
        })
    }

    pub fn contracted(&self) -> &Graph {
        &self.contracted
    }

    /// Monochromatic subgraph of the contracted graph.
    pub fn mono(&self) -> &Graph {
        &self.mono
    }

    pub fn members(&self, v: usize) -> &[usize] {
        &self.members[v]
    }

    pub fn image(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn contraction_count(&self) -> usize {
        self.image.len() - self.members.len()
    }
}

/// Defect-2 colouring refined so that every monochromatic component picks
/// up at most two of the restricted vertices between pieces of a
/// monochromatic path or cycle.
fn stable_core(
    g: &Graph,
    lists: &ListAssignment,
    in_i: &[bool],
    delta: usize,
    seed: u64,
) -> Result<Colouring> {
    let n = g.vertex_count();
    let mut phi = random_colouring(lists, seed);
    crate::local::descend(g, lists, &mut phi);
    let mut potential = Potential::new(&phi, g);
    'restart: loop {
        let count0 = potential.value();
        let restricted = RestrictedLists::compute(g, lists, &phi, in_i)?;
        let cmap = ContractionMap::build(g, &phi, in_i)?;
        let (picked, _) = select_stable_set(cmap.contracted(), cmap.mono(), delta)?;
        let s: Vec<usize> = {
            let mut s: Vec<usize> = picked.iter().map(|&v| cmap.members(v)[0]).collect();
            s.sort_unstable();
            s
        };
        let pairs: Vec<[Colour; 2]> = s
            .iter()
            .map(|&v| {
                restricted.pair(v, &phi).ok_or_else(|| {
                    Error::Internal(format!("selected vertex {v} lacks an alternative colour"))
                })
            })
            .collect::<Result<_>>()?;
        if !g.is_stable(&s) {
            return Err(Error::Internal("lifted selection is not stable".into()));
        }

        let mono = mono_graph(g, &phi);
        let parts = SelectedBipartite::build(g, &mono, &phi, &s, &pairs);
        if let Some((y, xs)) = parts.overloaded() {
            let mut psi = phi.clone();
            for x in xs {
                psi.0[s[x]] = parts.y_colours[y];
            }
            if psi.mono_edge_count(g) > count0 || is_local_min(g, lists, &psi) {
                return Err(Error::Internal(
                    "overloaded colour class without an improving move".into(),
                ));
            }
            phi = potential.restart(g, lists, psi)?;
            continue 'restart;
        }
        let inst = BipartiteRecolourInstance::new(pairs, parts.y_colours, parts.edges)?;
        let choice = recolour_bipartite(&inst)?;

        let mut next = phi.clone();
        for (&v, &c) in s.iter().zip(&choice) {
            next.0[v] = c;
        }
        let count = next.mono_edge_count(g);
        if count > count0 {
            return Err(Error::Internal(
                "restricted recolouring added monochromatic edges".into(),
            ));
        }
        if count < count0 || !is_local_min(g, lists, &next) {
            phi = potential.restart(g, lists, next)?;
            continue 'restart;
        }
        for (&v, &c) in s.iter().zip(&choice) {
            if c == phi.colour(v) {
                continue;
            }
            let mut psi = phi.clone();
            psi.0[v] = c;
            let near = std::iter::once(v).chain(g.neighbors(v).iter().copied());
            if let Some((u, better)) = find_improving_move(g, lists, &psi, near) {
                psi.0[u] = better;
                phi = potential.restart(g, lists, psi)?;
                continue 'restart;
            }
        }
        debug_assert_eq!(next.len(), n);
        return Ok(next);
    }
}

fn require_delta(g: &Graph, delta: usize) -> Result<()> {
    let worst = (0..g.vertex_count())
        .max_by_key(|&v| g.degree(v))
        .unwrap_or(0);
    if delta < 3 {
        return Err(Error::precondition(
            worst,
            format!("maximum degree bound {delta} is below 3"),
        ));
    }
    if g.max_degree() > delta {
        return Err(Error::precondition(
            worst,
            format!("degree {} exceeds {delta}", g.degree(worst)),
        ));
    }
    Ok(())
}

/// Colouring from lists of size at least `ceil((Δ + 2) / 3)` with clustering
/// at most `ceil(19Δ / 2) - 17`, where `Δ >= 3` is the maximum degree.
pub fn choose_clustered_maxdeg(g: &Graph, lists: &ListAssignment, seed: u64) -> Result<Solution> {
    check_sizes(g, lists)?;
    let delta = g.max_degree();
    require_delta(g, delta)?;
    let need = (delta + 2).div_ceil(3);
    if let Some(v) = (0..g.vertex_count()).find(|&v| lists.list(v).len() < need) {
        return Err(Error::precondition(v, format!("list smaller than {need}")));
    }
    let in_i = vec![false; g.vertex_count()];
    let phi = stable_core(g, lists, &in_i, delta, seed)?;
    certify(
        g,
        lists,
        phi,
        BoundKind::Clustering,
        (19 * delta).div_ceil(2) - 17,
    )
}

/// Colouring with clustering at most `19Δ - 32`, where `Δ` is the maximum
/// degree, given `3|L(v)| >= deg(v) + 1` on the stable set and
/// `3|L(v)| >= deg(v) + 2` elsewhere.
pub fn stable_set_colour(
    g: &Graph,
    lists: &ListAssignment,
    stable: &[usize],
    seed: u64,
) -> Result<Solution> {
    stable_set_colour_with_delta(g, lists, stable, g.max_degree(), seed)
}

/// As [`stable_set_colour`], with any `delta >= max(3, Δ(G))` in the bound.
pub fn stable_set_colour_with_delta(
    g: &Graph,
    lists: &ListAssignment,
    stable: &[usize],
    delta: usize,
    seed: u64,
) -> Result<Solution> {
    check_sizes(g, lists)?;
    require_delta(g, delta)?;
    let in_i = stable_mask(g, stable)?;
    check_defect2_lists(g, lists, &in_i)?;
    let phi = stable_core(g, lists, &in_i, delta, seed)?;
    certify(g, lists, phi, BoundKind::Clustering, 19 * delta - 32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn defect2_base_examples() {
        let lists = ListAssignment::uniform(5, &[1]).unwrap();
        assert!(matches!(
            defect2_base(&cycle(5), &lists, &[], 0),
            Err(Error::PreconditionViolated { .. })
        ));

        let lists = ListAssignment::uniform(5, &[1, 2]).unwrap();
        let (phi, r) = defect2_base(&cycle(5), &lists, &[], 0).unwrap();
        let view = MonoView::new(&cycle(5), &phi);
        assert!(view.defect() <= 2);
        for v in 0..5 {
            assert_eq!(r.beta(v).is_some(), view.mono_degree(v) == 2);
        }

        let lists = ListAssignment::uniform(4, &[1, 2]).unwrap();
        let (phi, _) = defect2_base(&complete(4), &lists, &[], 3).unwrap();
        assert!(MonoView::new(&complete(4), &phi).defect() <= 2);
        assert_eq!(phi.mono_edge_count(&complete(4)), 2);
    }

    #[test]
    fn maxdeg_on_petersen() {
        let g = petersen();
        let lists = ListAssignment::uniform(10, &[1, 2]).unwrap();
        for seed in 0..10 {
            let sol = choose_clustered_maxdeg(&g, &lists, seed).unwrap();
            assert!(sol.report.ok);
            assert_eq!(sol.report.bound, 12);
        }
    }

    #[test]
    fn maxdeg_rejects_cycles() {
        let lists = ListAssignment::uniform(4, &[1, 2]).unwrap();
        assert!(matches!(
            choose_clustered_maxdeg(&cycle(4), &lists, 0),
            Err(Error::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn stable_set_examples() {
        let g = petersen();
        let lists = ListAssignment::uniform(10, &[1, 2]).unwrap();
        let sol = stable_set_colour(&g, &lists, &[], 1).unwrap();
        assert_eq!(sol.report.bound, 25);
        assert!(sol.report.ok);

        let lists = ListAssignment::uniform(6, &[1, 2]).unwrap();
        assert!(matches!(
            stable_set_colour(&cycle(6), &lists, &[], 0),
            Err(Error::PreconditionViolated { .. })
        ));

        let star = Graph::new(5, (1..5).map(|i| (0, i))).unwrap();
        let lists =
            ListAssignment::new(vec![vec![1, 2], vec![1], vec![1], vec![1], vec![1]]).unwrap();
        let sol = stable_set_colour(&star, &lists, &[1, 2, 3, 4], 0).unwrap();
        assert_eq!(sol.report.bound, 44);
        assert_eq!(sol.colouring.colour(0), 2);
        assert_eq!(sol.report.clustering, 1);
    }

    #[test]
    fn contraction_of_path_through_stable_vertex() {
        // Path 0-1-2 all coloured 1 with 1 in I; 0 -> 1 is contracted.
        let g = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let phi = Colouring(vec![1, 1, 1, 2]);
        let in_i = vec![false, true, false, false];
        let map = ContractionMap::build(&g, &phi, &in_i).unwrap();
        assert_eq!(map.contraction_count(), 1);
        assert_eq!(map.members(map.image(1)), &[0, 1]);
        assert_eq!(map.contracted().vertex_count(), 3);
        // Edge 1-3 was not monochromatic, so it is gone.
        assert_eq!(map.contracted().edge_count(), 1);
        assert!(map.contracted().max_degree() <= g.max_degree());
    }
}
