//! Exact maximum average degree.
//!
//! `mad` is computed with a parametric max-flow (densest subgraph via
//! maximum-weight closure) and yields a witness vertex set from the final
//! minimum cut. `mad_bruteforce` and `mad_at_least` enumerate subsets and
//! are limited to small graphs.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::Graph;

/// Default vertex cap for the exhaustive variants.
pub const EXHAUSTIVE_CAP: usize = 20;

/// Exact non-negative rational, usually `2|E(H)| / |V(H)|` for some
/// subgraph `H`. Equality and ordering compare values, not representations.
#[derive(Debug, Clone, Copy)]
pub struct Density {
    numerator: u64,
    denominator: u64,
}

impl Density {
    pub fn new(numerator: u64, denominator: u64) -> Self {
        assert!(denominator > 0, "density denominator must be positive");
        Density {
            numerator,
            denominator,
        }
    }

    pub fn zero() -> Self {
        Density::new(0, 1)
    }

    /// Average degree of the subgraph of `g` induced by `vertices`.
    pub fn of_subgraph(g: &Graph, vertices: &[usize]) -> Self {
        if vertices.is_empty() {
            return Density::zero();
        }
        Density::new(
            2 * g.induced_edge_count(vertices) as u64,
            vertices.len() as u64,
        )
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// Lowest-terms `(p, q)`.
    pub fn reduced(&self) -> (u64, u64) {
        let g = gcd(self.numerator, self.denominator);
        (self.numerator / g, self.denominator / g)
    }

    /// `floor(self * num / den)`.
    pub fn floor_mul(&self, num: u64, den: u64) -> u64 {
        let top = self.numerator as u128 * num as u128;
        let bottom = self.denominator as u128 * den as u128;
        (top / bottom) as u64
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Density {}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as u128 * other.denominator as u128;
        let rhs = other.numerator as u128 * self.denominator as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.reduced();
        write!(f, "{p}/{q}")
    }
}

impl FromStr for Density {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok(Density::new(p, q))
    }
}

impl Serialize for Density {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Density {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A vertex set together with the average degree it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityCertificate {
    pub witness: Vec<usize>,
    pub density: Density,
}

impl DensityCertificate {
    /// Re-measures the witness and checks it reproduces the stored density.
    pub fn is_consistent(&self, g: &Graph) -> bool {
        Density::of_subgraph(g, &self.witness) == self.density
    }
}

/// Exact `mad(G)` with a witness inducing the maximum.
///
/// Repeatedly solves `max_S q|E(S)| - p|S|` for the current best density
/// `p/q` as a maximum-weight closure on the edge/vertex incidence network.
/// A positive optimum is a strictly denser set, so the loop climbs through
/// finitely many densities and stops at the maximum.
pub fn mad(g: &Graph) -> Result<DensityCertificate> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut witness: Vec<usize> = (0..n).collect();
    let mut best_edges = edges.len() as i64;
    let mut best_size = n as i64;

    while best_edges > 0 {
        let m = edges.len();
        let (source, sink) = (m + n, m + n + 1);
        let mut net = FlowNetwork::new(m + n + 2);
        let unbounded = best_size * m as i64 + 1;
        for (i, &(u, v)) in edges.iter().enumerate() {
            net.add_edge(source, i, best_size);
            net.add_edge(i, m + u, unbounded);
            net.add_edge(i, m + v, unbounded);
        }
        for v in 0..n {
            net.add_edge(m + v, sink, best_edges);
        }
        let cut = net.max_flow(source, sink);
        let gain = best_size * m as i64 - cut;
        if gain <= 0 {
            break;
        }
        let side = net.source_side(source);
        let next: Vec<usize> = (0..n).filter(|&v| side[m + v]).collect();
        let next_edges = g.induced_edge_count(&next) as i64;
        if next_edges * best_size <= best_edges * next.len() as i64 {
            return Err(Error::Internal(
                "closure step did not increase density".into(),
            ));
        }
        witness = next;
        best_edges = next_edges;
        best_size = witness.len() as i64;
    }

    Ok(DensityCertificate {
        density: Density::new(2 * best_edges as u64, best_size as u64),
        witness,
    })
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeLimitExceeded {
            size: n as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

/// Best density over all vertex subsets of size at least `min_size`.
/// Ties keep the first subset in increasing bitmask order.
fn enumerate_best(g: &Graph, min_size: usize) -> Option<DensityCertificate> {
    let n = g.vertex_count();
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let mut best: Option<(u64, u64, u32)> = None;
    for set in 1u32..(1u32 << n) {
        let size = set.count_ones() as u64;
        if (size as usize) < min_size {
            continue;
        }
        let mut twice_edges = 0u64;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice_edges += (masks[v] & set).count_ones() as u64;
        }
        let better = match best {
            None => true,
            Some((e, s, _)) => twice_edges * s > e * size,
        };
        if better {
            best = Some((twice_edges, size, set));
        }
    }
    best.map(|(e, s, set)| DensityCertificate {
        witness: (0..n).filter(|&v| set & (1 << v) != 0).collect(),
        density: Density::new(e, s),
    })
}

/// Exhaustive `mad(G)` over all nonempty vertex subsets.
pub fn mad_bruteforce(g: &Graph) -> Result<DensityCertificate> {
    mad_bruteforce_capped(g, EXHAUSTIVE_CAP)
}

pub fn mad_bruteforce_capped(g: &Graph, cap: usize) -> Result<DensityCertificate> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    check_cap(n, cap.min(31))?;
    enumerate_best(g, 1).ok_or(Error::EmptyGraph)
}

/// `mad(G, n0)`: the maximum average degree over subgraphs with at least
/// `n0` vertices, and `0` (empty witness) when `G` has fewer than `n0`
/// vertices. Exhaustive.
pub fn mad_at_least(g: &Graph, n0: usize) -> Result<DensityCertificate> {
    mad_at_least_capped(g, n0, EXHAUSTIVE_CAP)
}

pub fn mad_at_least_capped(g: &Graph, n0: usize, cap: usize) -> Result<DensityCertificate> {
    if n0 == 0 {
        return Err(Error::InvalidInput("n0 must be at least 1".into()));
    }
    let n = g.vertex_count();
    if n < n0 {
        return Ok(DensityCertificate {
            witness: Vec::new(),
            density: Density::zero(),
        });
    }
    check_cap(n, cap.min(31))?;
    enumerate_best(g, n0).ok_or(Error::EmptyGraph)
}
