//! Seeded graph families.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sparsity::{mad, Density};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    /// Sides of sizes `n` and `m`.
    CompleteBipartite,
    /// Planar triangulation grown by repeatedly subdividing a random face.
    Apollonian,
    /// `n x m` triangulated torus grid; every vertex has degree 6.
    TorusGrid,
    /// Union of two triangulations on a shared, shuffled vertex set.
    EarthMoon,
    /// Union of `t` triangulations on a shared, shuffled vertex set.
    Thickness,
    /// Random edges, each kept only if the maximum average degree stays
    /// below `target`.
    RandomMadBounded,
    /// Random edges, each kept only if both degrees stay at most
    /// `max_degree`.
    RandomMaxDegree,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::CompleteBipartite,
        Family::Apollonian,
        Family::TorusGrid,
        Family::EarthMoon,
        Family::Thickness,
        Family::RandomMadBounded,
        Family::RandomMaxDegree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteBipartite => "completeBipartite",
            Family::Apollonian => "apollonian",
            Family::TorusGrid => "torusGrid",
            Family::EarthMoon => "earthMoon",
            Family::Thickness => "thickness",
            Family::RandomMadBounded => "randomMadBounded",
            Family::RandomMaxDegree => "randomMaxDegree",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    /// Second size: the other side of a complete bipartite graph or the
    /// column count of a torus grid.
    pub m: Option<usize>,
    /// Number of triangulations in a thickness union.
    pub t: Option<usize>,
    pub target: Option<Density>,
    pub max_degree: Option<usize>,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            m: None,
            t: None,
            target: None,
            max_degree: None,
            seed,
        }
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_t(mut self, t: usize) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_target(mut self, target: Density) -> Self {
        self.target = Some(target);
        self
    }

    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = Some(d);
        self
    }
}

fn need(spec: &GenSpec, min_n: usize) -> Result<()> {
    if spec.n < min_n {
        return Err(Error::InvalidSpec(format!(
            "{} needs at least {min_n} vertices, got {}",
            spec.family, spec.n
        )));
    }
    Ok(())
}

fn required<T: Copy>(value: Option<T>, what: &str, family: Family) -> Result<T> {
    value.ok_or_else(|| Error::InvalidSpec(format!("{family} needs {what}")))
}

/// Edges of a random Apollonian triangulation on `n >= 3` vertices.
fn apollonian_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    edges
}

fn shuffled_union(n: usize, layers: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut all = BTreeSet::new();
    for layer in 0..layers {
        let mut perm: Vec<usize> = (0..n).collect();
        if layer > 0 {
            perm.shuffle(rng);
        }
        for (u, v) in apollonian_edges(n, rng) {
            let (a, b) = (perm[u], perm[v]);
            all.insert((a.min(b), a.max(b)));
        }
    }
    all.into_iter().collect()
}

fn all_pairs_shuffled(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    pairs
}

/// Deterministic graph for `spec`.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges: Vec<(usize, usize)> = match spec.family {
        Family::Path => {
            need(spec, 1)?;
            (1..n).map(|i| (i - 1, i)).collect()
        }
        Family::Cycle => {
            need(spec, 3)?;
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        Family::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        Family::CompleteBipartite => {
            let m = required(spec.m, "a second side size m", spec.family)?;
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..m).map(move |v| (u, n + v)))
                .collect();
            return Graph::new(n + m, edges);
        }
        Family::Apollonian => {
            need(spec, 3)?;
            apollonian_edges(n, &mut rng)
        }
        Family::TorusGrid => {
            let m = required(spec.m, "a column count m", spec.family)?;
            if n < 3 || m < 3 {
                return Err(Error::InvalidSpec(
                    "torus grid needs at least 3 rows and 3 columns".into(),
                ));
            }
            let id = |i: usize, j: usize| (i % n) * m + (j % m);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| {
                    (0..m).flat_map(move |j| {
                        [
                            (id(i, j), id(i + 1, j)),
                            (id(i, j), id(i, j + 1)),
                            (id(i, j), id(i + 1, j + 1)),
                        ]
                    })
                })
                .collect();
            return Graph::new(n * m, edges);
        }
        Family::EarthMoon => {
            need(spec, 3)?;
            shuffled_union(n, 2, &mut rng)
        }
        Family::Thickness => {
            need(spec, 3)?;
            let t = required(spec.t, "a thickness t", spec.family)?;
            if t == 0 {
                return Err(Error::InvalidSpec("thickness must be positive".into()));
            }
            shuffled_union(n, t, &mut rng)
        }
        Family::RandomMadBounded => {
            let target = required(spec.target, "a mad target", spec.family)?;
            let mut kept: Vec<(usize, usize)> = Vec::new();
            for (u, v) in all_pairs_shuffled(n, &mut rng) {
                kept.push((u, v));
                let g = Graph::new(n, kept.iter().copied())?;
                if mad(&g)?.density >= target {
                    kept.pop();
                }
            }
            kept
        }
        Family::RandomMaxDegree => {
            let d = required(spec.max_degree, "a maximum degree", spec.family)?;
            let mut degree = vec![0; n];
            let mut kept = Vec::new();
            for (u, v) in all_pairs_shuffled(n, &mut rng) {
                if degree[u] < d && degree[v] < d {
                    degree[u] += 1;
                    degree[v] += 1;
                    kept.push((u, v));
                }
            }
            kept
        }
    };
    Graph::new(n, edges)
}
