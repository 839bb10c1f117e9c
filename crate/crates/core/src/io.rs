//! Text formats for graphs, list assignments, colourings and vertex sets.
//!
//! All formats ignore blank lines and anything after `#`.
//!
//! * Graph: a header `n m`, then `m` lines `u v` with 0-indexed vertices.
//! * Lists: one line `v: c1 c2 ...` per vertex, or a single header
//!   `uniform k seed=S [pool=P]` requesting [`uniform_lists`].
//! * Colouring: one colour per vertex in vertex order, whitespace separated.
//! * Vertex set: vertex ids, whitespace separated.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{BoundKind, Certificate, Colour, Colouring, Graph, ListAssignment};

/// Non-empty content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("expected {what}, found {token:?}")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing `n m` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_error(header_line, "header must be `n m`"));
    }
    let n: usize = number(fields[0], header_line, "vertex count")?;
    let m: usize = number(fields[1], header_line, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_error(line, "edge line must be `u v`"));
        }
        let u: usize = number(fields[0], line, "vertex")?;
        let v: usize = number(fields[1], line, "vertex")?;
        if u >= n || v >= n {
            return Err(parse_error(
                line,
                format!("vertex out of range for n = {n}"),
            ));
        }
        if u == v {
            return Err(parse_error(line, format!("self-loop at {u}")));
        }
        if edges.len() == m {
            return Err(parse_error(line, format!("more than {m} edges")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_error(
            text.lines().count().max(1),
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

/// Canonical form: merged edges, each as `u v` with `u < v`, sorted.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// For each vertex in turn, `k` distinct colours drawn uniformly from
/// `1..=pool` by a ChaCha8 stream seeded with `seed`.
pub fn uniform_lists(n: usize, k: usize, pool: usize, seed: u64) -> Result<ListAssignment> {
    if k == 0 || k > pool {
        return Err(Error::InvalidInput(format!(
            "cannot draw {k} colours from a pool of {pool}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists = (0..n)
        .map(|_| {
            rand::seq::index::sample(&mut rng, pool, k)
                .into_iter()
                .map(|i| i as Colour + 1)
                .collect()
        })
        .collect();
    ListAssignment::new(lists)
}

pub fn parse_lists(text: &str, n: usize) -> Result<ListAssignment> {
    let mut lines = content_lines(text).peekable();
    if let Some(&(line, body)) = lines.peek() {
        if body.starts_with("uniform") {
            let mut k = None;
            let mut seed = None;
            let mut pool = None;
            for token in body.split_whitespace().skip(1) {
                match token.split_once('=') {
                    None if k.is_none() => k = Some(number::<usize>(token, line, "list size")?),
                    Some(("seed", v)) => seed = Some(number::<u64>(v, line, "seed")?),
                    Some(("pool", v)) => pool = Some(number::<usize>(v, line, "pool size")?),
                    _ => return Err(parse_error(line, format!("unexpected token {token:?}"))),
                }
            }
            let k = k.ok_or_else(|| parse_error(line, "missing list size"))?;
            let seed = seed.ok_or_else(|| parse_error(line, "missing seed=S"))?;
            if let Some((extra, _)) = lines.nth(1) {
                return Err(parse_error(extra, "nothing may follow a uniform header"));
            }
            return uniform_lists(n, k, pool.unwrap_or(2 * k), seed);
        }
    }
    let mut lists: Vec<Option<Vec<Colour>>> = vec![None; n];
    for (line, body) in lines {
        let (head, rest) = body
            .split_once(':')
            .ok_or_else(|| parse_error(line, "list line must be `v: c1 c2 ...`"))?;
        let v: usize = number(head.trim(), line, "vertex")?;
        if v >= n {
            return Err(parse_error(
                line,
                format!("vertex out of range for n = {n}"),
            ));
        }
        if lists[v].is_some() {
            return Err(parse_error(line, format!("vertex {v} listed twice")));
        }
        let colours = rest
            .split_whitespace()
            .map(|t| number::<Colour>(t, line, "colour"))
            .collect::<Result<Vec<_>>>()?;
        if colours.is_empty() {
            return Err(parse_error(line, format!("empty list for vertex {v}")));
        }
        lists[v] = Some(colours);
    }
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| Error::InvalidInput(format!("no list for vertex {v}"))))
        .collect::<Result<Vec<_>>>()?;
    ListAssignment::new(lists)
}

pub fn write_lists(lists: &ListAssignment) -> String {
    let mut out = String::new();
    for (v, list) in lists.lists().iter().enumerate() {
        let colours: Vec<String> = list.iter().map(Colour::to_string).collect();
        writeln!(out, "{v}: {}", colours.join(" ")).unwrap();
    }
    out
}

fn parse_numbers<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for (line, body) in content_lines(text) {
        for token in body.split_whitespace() {
            out.push(number(token, line, what)?);
        }
    }
    Ok(out)
}

pub fn parse_colouring(text: &str) -> Result<Colouring> {
    parse_numbers(text, "colour").map(Colouring)
}

pub fn write_colouring(phi: &Colouring) -> String {
    let colours: Vec<String> = phi.as_slice().iter().map(Colour::to_string).collect();
    format!("{}\n", colours.join(" "))
}

pub fn parse_vertex_set(text: &str) -> Result<Vec<usize>> {
    let mut set: Vec<usize> = parse_numbers(text, "vertex")?;
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::with_capacity(64), |mut out, b| {
            write!(out, "{b:02x}").unwrap();
            out
        })
}

/// JSON document written by the colouring subcommands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the graph file followed by the lists file, if any.
    pub input_sha256: String,
    pub params: serde_json::Value,
    pub seed: u64,
    /// One colour per vertex; empty when the solver found a dense witness
    /// instead.
    pub colours: Vec<Colour>,
    pub kind: BoundKind,
    pub bound: usize,
    pub defect: usize,
    pub clustering: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
    pub elapsed_us: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = "# a 4-cycle\n4 4\n0 1\n1 2 # edge\n\n2 3\n3 0\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 4);
        let canonical = write_graph(&g);
        assert_eq!(canonical, "4 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(parse_graph(&canonical).unwrap(), g);
    }

    #[test]
    fn graph_errors_name_lines() {
        assert_eq!(
            parse_graph("3 2\n0 1\n1 x\n"),
            Err(Error::Parse {
                line: 3,
                message: "expected vertex, found \"x\"".into()
            })
        );
        assert!(matches!(
            parse_graph("3 1\n0 5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 1\n1 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_graph(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn explicit_lists() {
        let lists = parse_lists("0: 3 1\n1: 2\n", 2).unwrap();
        assert_eq!(lists.list(0), &[1, 3]);
        assert_eq!(parse_lists(&write_lists(&lists), 2).unwrap(), lists);
        assert!(matches!(
            parse_lists("0: 1\n0: 2\n", 2),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_lists("0: 1\n", 2).is_err());
    }

    #[test]
    fn uniform_header_is_reproducible() {
        let a = parse_lists("uniform 3 seed=9\n", 10).unwrap();
        let b = uniform_lists(10, 3, 6, 9).unwrap();
        assert_eq!(a, b);
        assert!(a
            .lists()
            .iter()
            .all(|l| l.len() == 3 && l.iter().all(|&c| (1..=6).contains(&c))));
        let c = parse_lists("uniform 2 seed=1 pool=2", 5).unwrap();
        assert!(c.lists().iter().all(|l| l == &[1, 2]));
        assert!(parse_lists("uniform 2 pool=3", 5).is_err());
    }

    #[test]
    fn colourings_and_sets() {
        let phi = parse_colouring("1 2\n# c\n3\n").unwrap();
        assert_eq!(phi, Colouring(vec![1, 2, 3]));
        assert_eq!(parse_colouring(&write_colouring(&phi)).unwrap(), phi);
        assert_eq!(parse_vertex_set("4 1 1\n0").unwrap(), vec![0, 1, 4]);
    }

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
