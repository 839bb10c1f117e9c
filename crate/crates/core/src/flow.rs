//! Dinic's maximum flow on integer capacities.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    rev: usize,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    /// Adds a directed arc and returns its handle `(from, index)`.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> (usize, usize) {
        let fwd = self.arcs[from].len();
        let bwd = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc { to, cap, rev: bwd });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            rev: fwd,
        });
        (from, fwd)
    }

    /// Flow currently pushed through the arc with the given handle.
    pub fn flow_on(&self, handle: (usize, usize)) -> i64 {
        let arc = &self.arcs[handle.0][handle.1];
        self.arcs[arc.to][arc.rev].cap
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for arc in &self.arcs[v] {
                if arc.cap > 0 && self.level[arc.to] < 0 {
                    self.level[arc.to] = self.level[v] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: i64) -> i64 {
        if v == t {
            return pushed;
        }
        while self.iter[v] < self.arcs[v].len() {
            let i = self.iter[v];
            let (to, cap) = (self.arcs[v][i].to, self.arcs[v][i].cap);
            if cap > 0 && self.level[v] < self.level[to] {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.arcs[v][i].cap -= d;
                    let rev = self.arcs[v][i].rev;
                    self.arcs[to][rev].cap += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return flow;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network. After `max_flow`
    /// this is the source side of the minimal minimum cut.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for arc in &self.arcs[v] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        let mut net = FlowNetwork::new(6);
        net.add_edge(0, 1, 10);
        net.add_edge(0, 2, 10);
        net.add_edge(1, 3, 4);
        net.add_edge(1, 4, 8);
        net.add_edge(2, 4, 9);
        net.add_edge(3, 5, 10);
        net.add_edge(4, 3, 6);
        net.add_edge(4, 5, 10);
        assert_eq!(net.max_flow(0, 5), 19);
    }

    #[test]
    fn disconnected_sink() {
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 10);
        net.add_edge(2, 3, 5);
        assert_eq!(net.max_flow(0, 3), 0);
        let side = net.source_side(0);
        assert_eq!(side, vec![true, true, false, false]);
    }

    #[test]
    fn flow_on_reports_pushed_units() {
        let mut net = FlowNetwork::new(3);
        let a = net.add_edge(0, 1, 3);
        let b = net.add_edge(1, 2, 2);
        assert_eq!(net.max_flow(0, 2), 2);
        assert_eq!(net.flow_on(a), 2);
        assert_eq!(net.flow_on(b), 2);
    }
}
