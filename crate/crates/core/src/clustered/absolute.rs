//! Clustering 9 (or 6 without a stable set) from lists with
//! `5|L(v)| >= 2deg(v) + 2`.

use crate::error::{Error, Result};
use crate::graph::{
    certify, BoundKind, Colour, Colouring, Graph, ListAssignment, MonoView, Solution,
};
use crate::local::{find_improving_move, is_local_min, moveable_colours, random_colouring};
use crate::transversal::traverse_components;

use super::{
    check_sizes, mono_graph, recolour_bipartite, stable_mask, BipartiteRecolourInstance, Potential,
    SelectedBipartite,
};

enum Step {
    Restart(Colouring),
    Grow(Colouring, Vec<usize>),
    Done(Colouring),
}

/// Colours each selected vertex in turn with a colour that is free both
/// against the base colouring and against the colouring built so far.
/// Returns `Err(ψ)` with a colouring that admits an improving move.
fn alternative_chain(
    g: &Graph,
    lists: &ListAssignment,
    base: &Colouring,
    s: &[usize],
) -> Result<std::result::Result<Colouring, Colouring>> {
    let mut cur = base.clone();
    for &v in s {
        if !is_local_min(g, lists, &cur) {
            return Ok(Err(cur));
        }
        let from_base = moveable_colours(g, lists, base, v);
        let from_cur = moveable_colours(g, lists, &cur, v);
        let c = from_base
            .iter()
            .copied()
            .find(|c| *c != base.colour(v) && from_cur.contains(c))
            .ok_or_else(|| Error::Internal(format!("no shared alternative colour at {v}")))?;
        cur.0[v] = c;
    }
    if !is_local_min(g, lists, &cur) {
        return Ok(Err(cur));
    }
    Ok(Ok(cur))
}

/// Stable triple of monochromatic-degree-2 vertices in a long monochromatic
/// path or cycle, avoiding `in_i`.
fn exchange_triple(
    order: &[usize],
    is_cycle: bool,
    in_i: &[bool],
    no_stable_set: bool,
) -> Vec<usize> {
    let interior = if is_cycle {
        order
    } else {
        &order[1..order.len() - 1]
    };
    if no_stable_set {
        return vec![interior[0], interior[2], interior[4]];
    }
    let p = &interior[..8];
    for &a in &[p[0], p[1]] {
        for &b in &[p[3], p[4]] {
            for &c in &[p[6], p[7]] {
                if !in_i[a] && !in_i[b] && !in_i[c] {
                    return vec![a, b, c];
                }
            }
        }
    }
    unreachable!("a stable set meets each adjacent pair at most once")
}

fn step(
    g: &Graph,
    lists: &ListAssignment,
    in_i: &[bool],
    no_stable_set: bool,
    base: &Colouring,
    s: &[usize],
) -> Result<Step> {
    let count0 = base.mono_edge_count(g);
    let alt = match alternative_chain(g, lists, base, s)? {
        Ok(alt) => alt,
        Err(psi) => return Ok(Step::Restart(psi)),
    };
    for &v in s {
        let mut psi = base.clone();
        psi.0[v] = alt.colour(v);
        let near = std::iter::once(v).chain(g.neighbors(v).iter().copied());
        if let Some((u, c)) = find_improving_move(g, lists, &psi, near) {
            psi.0[u] = c;
            return Ok(Step::Restart(psi));
        }
    }
    let pairs: Vec<[Colour; 2]> = s
        .iter()
        .map(|&v| {
            let (a, b) = (base.colour(v), alt.colour(v));
            [a.min(b), a.max(b)]
        })
        .collect();

    let mono = mono_graph(g, base);
    let parts = SelectedBipartite::build(g, &mono, base, s, &pairs);
    if let Some((y, xs)) = parts.overloaded() {
        let mut psi = base.clone();
        for x in xs {
            psi.0[s[x]] = parts.y_colours[y];
        }
        if psi.mono_edge_count(g) > count0 || is_local_min(g, lists, &psi) {
            return Err(Error::Internal(
                "overloaded colour class without an improving move".into(),
            ));
        }
        return Ok(Step::Restart(psi));
    }
    let inst = BipartiteRecolourInstance::new(pairs, parts.y_colours, parts.edges)?;
    let choice = recolour_bipartite(&inst)?;
    let mut phi = base.clone();
    for (&v, &c) in s.iter().zip(&choice) {
        phi.0[v] = c;
    }
    let count = phi.mono_edge_count(g);
    if count > count0 {
        return Err(Error::Internal(
            "restricted recolouring added monochromatic edges".into(),
        ));
    }
    if count < count0 || !is_local_min(g, lists, &phi) {
        return Ok(Step::Restart(phi));
    }

    let view = MonoView::new(g, &phi);
    let mut in_s = vec![false; g.vertex_count()];
    for &v in s {
        in_s[v] = true;
    }
    for &v in s {
        let outside = g
            .neighbors(v)
            .iter()
            .filter(|&&u| !in_s[u] && phi.colour(u) == phi.colour(v))
            .count();
        if outside != 2 || view.mono_degree(v) != 2 {
            return Err(Error::Internal(format!(
                "selected vertex {v} lost its two monochromatic neighbours"
            )));
        }
    }

    let threshold = if no_stable_set { 7 } else { 10 };
    let phi_mono = mono_graph(g, &phi);
    let long = traverse_components(&phi_mono)
        .into_iter()
        .find(|(_, order)| order.len() >= threshold);
    let Some((is_cycle, order)) = long else {
        return Ok(Step::Done(phi));
    };
    let triple = exchange_triple(&order, is_cycle, in_i, no_stable_set);
    let mut grown: Vec<usize> = s.iter().copied().filter(|v| !order.contains(v)).collect();
    if s.len() - grown.len() > 2 {
        return Err(Error::Internal(
            "monochromatic component holds three selected vertices".into(),
        ));
    }
    grown.extend(triple);
    grown.sort_unstable();
    Ok(Step::Grow(phi, grown))
}

/// Colouring with clustering at most 9, or at most 6 when `stable` is
/// empty. Requires `5|L(v)| >= 2deg(v) + 2` outside the stable set and
/// `5|L(v)| >= 2deg(v) + 1` on it.
pub fn choose_clustered_absolute(
    g: &Graph,
    lists: &ListAssignment,
    stable: &[usize],
    seed: u64,
) -> Result<Solution> {
    check_sizes(g, lists)?;
    let in_i = stable_mask(g, stable)?;
    for (v, &on_i) in in_i.iter().enumerate() {
        let slack = if on_i { 1 } else { 2 };
        if 5 * lists.list(v).len() < 2 * g.degree(v) + slack {
            return Err(Error::precondition(
                v,
                format!(
                    "5 * {} < 2 * {} + {slack}",
                    lists.list(v).len(),
                    g.degree(v)
                ),
            ));
        }
    }
    let no_stable_set = stable.is_empty();
    let bound = if no_stable_set { 6 } else { 9 };

    let mut base = random_colouring(lists, seed);
    crate::local::descend(g, lists, &mut base);
    let mut potential = Potential::new(&base, g);
    let mut s: Vec<usize> = Vec::new();
    loop {
        match step(g, lists, &in_i, no_stable_set, &base, &s)? {
            Step::Restart(psi) => {
                base = potential.restart(g, lists, psi)?;
                s.clear();
            }
            Step::Grow(phi, grown) => {
                if grown.len() <= s.len() {
                    return Err(Error::Internal(
                        "exchange did not enlarge the selection".into(),
                    ));
                }
                base = phi;
                s = grown;
            }
            Step::Done(phi) => return certify(g, lists, phi, BoundKind::Clustering, bound),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn edgeless_graph_has_clustering_one() {
        let g = Graph::empty(4);
        let lists = ListAssignment::new(vec![vec![1], vec![2, 3], vec![1], vec![4]]).unwrap();
        let sol = choose_clustered_absolute(&g, &lists, &[], 0).unwrap();
        assert_eq!(sol.report.clustering, 1);
    }

    #[test]
    fn c10_without_stable_set() {
        let g = cycle(10);
        let lists = ListAssignment::uniform(10, &[1, 2]).unwrap();
        for seed in 0..20 {
            let sol = choose_clustered_absolute(&g, &lists, &[], seed).unwrap();
            assert!(sol.report.clustering <= 6);
        }
    }

    #[test]
    fn c10_with_alternate_stable_set() {
        let g = cycle(10);
        let lists = ListAssignment::uniform(10, &[1, 2]).unwrap();
        let stable: Vec<usize> = (0..10).step_by(2).collect();
        for seed in 0..20 {
            let sol = choose_clustered_absolute(&g, &lists, &stable, seed).unwrap();
            assert!(sol.report.clustering <= 9);
        }
    }

    #[test]
    fn single_colour_paths_are_split() {
        // Long cycle with a single shared colour plus one private colour per
        // vertex; monochromatic runs must be cut down to at most 6.
        let n = 40;
        let g = cycle(n);
        let lists =
            ListAssignment::new((0..n).map(|v| vec![1, 2 + (v % 2) as Colour]).collect()).unwrap();
        let sol = choose_clustered_absolute(&g, &lists, &[], 7).unwrap();
        assert!(sol.report.clustering <= 6);
    }

    #[test]
    fn rejects_short_lists() {
        let g = cycle(5);
        let lists = ListAssignment::uniform(5, &[1]).unwrap();
        assert!(matches!(
            choose_clustered_absolute(&g, &lists, &[], 0),
            Err(Error::PreconditionViolated { .. })
        ));
    }
}
