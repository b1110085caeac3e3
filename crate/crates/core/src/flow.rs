//! Exact integer max-flow by blocking flows (Dinic).

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A directed network with integer capacities. Arcs come in pairs: arc `2i`
/// and its reverse `2i + 1`.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    /// Residual capacity.
    cap: Vec<i64>,
    original: Vec<i64>,
    source: usize,
    sink: usize,
    source_capacity: i64,
}

/// Max-flow value and the minimal source side of a minimum cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: i64,
    /// Nodes reachable from the source in the final residual network,
    /// including the source, ascending.
    pub source_side: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < nodes && sink < nodes && source != sink);
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
            source,
            sink,
            source_capacity: 0,
        }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arc_count(&self) -> usize {
        self.to.len()
    }

    fn push_pair(&mut self, u: usize, v: usize, fwd: i64, rev: i64) -> Result<usize> {
        if fwd < 0 || rev < 0 {
            return Err(Error::InvalidParameter("negative capacity".into()));
        }
        if (v == self.source && fwd > 0)
            || (u == self.source && rev > 0)
            || (u == self.sink && fwd > 0)
            || (v == self.sink && rev > 0)
        {
            return Err(Error::InvalidParameter(
                "arcs may not enter the source or leave the sink".into(),
            ));
        }
        if u == self.source {
            self.source_capacity = self
                .source_capacity
                .checked_add(fwd)
                .ok_or(Error::CapacityOverflow)?;
        }
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(fwd);
        self.original.push(fwd);
        self.adj[u].push(id);
        self.to.push(u);
        self.cap.push(rev);
        self.original.push(rev);
        self.adj[v].push(id + 1);
        Ok(id)
    }

    /// Adds a directed arc `u -> v`.
    pub fn add_arc(&mut self, u: usize, v: usize, capacity: i64) -> Result<usize> {
        self.push_pair(u, v, capacity, 0)
    }

    /// Adds an undirected edge: capacity `capacity` in both directions.
    pub fn add_edge(&mut self, u: usize, v: usize, capacity: i64) -> Result<usize> {
        self.push_pair(u, v, capacity, capacity)
    }

    /// Flow currently carried by arc `id` (as returned by `add_arc`).
    pub fn flow_on(&self, id: usize) -> i64 {
        self.original[id] - self.cap[id]
    }

    fn levels(&self) -> Vec<i32> {
        let mut level = vec![-1; self.nodes()];
        let mut queue = VecDeque::new();
        level[self.source] = 0;
        queue.push_back(self.source);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && level[v] < 0 {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    /// Saturates every source-sink path of the level graph.
    fn blocking_flow(&mut self, level: &mut [i32]) -> i64 {
        let (s, t) = (self.source, self.sink);
        let mut next = vec![0usize; self.nodes()];
        let mut path: Vec<usize> = Vec::new();
        let mut total = 0i64;
        let mut u = s;
        loop {
            if u == t {
                let f = path.iter().map(|&a| self.cap[a]).min().unwrap();
                for &a in &path {
                    self.cap[a] -= f;
                    self.cap[a ^ 1] += f;
                }
                total += f;
                let k = path.iter().position(|&a| self.cap[a] == 0).unwrap();
                path.truncate(k);
                u = path.last().map_or(s, |&a| self.to[a]);
                continue;
            }
            let mut advanced = false;
            while next[u] < self.adj[u].len() {
                let a = self.adj[u][next[u]];
                let v = self.to[a];
                if self.cap[a] > 0 && level[v] == level[u] + 1 {
                    path.push(a);
                    u = v;
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if !advanced {
                if u == s {
                    break;
                }
                level[u] = -1;
                let a = path.pop().unwrap();
                u = self.to[a ^ 1];
                next[u] += 1;
            }
        }
        total
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        let mut queue = VecDeque::from([self.source]);
        seen[self.source] = true;
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Capacity of the cut `(side, complement)` under the original capacities.
    pub fn cut_capacity(&self, side: &[bool]) -> i64 {
        let mut total = 0i64;
        for (u, arcs) in self.adj.iter().enumerate() {
            if !side[u] {
                continue;
            }
            for &a in arcs {
                if !side[self.to[a]] {
                    total += self.original[a];
                }
            }
        }
        total
    }
}

/// Solves max-flow from scratch on `net` (residual state is left in `net`).
/// Panics if the flow value differs from the capacity of the returned cut.
pub fn max_flow(net: &mut FlowNetwork) -> MaxFlow {
    let mut value = 0i64;
    loop {
        let mut level = net.levels();
        if level[net.sink] < 0 {
            break;
        }
        value += net.blocking_flow(&mut level);
    }
    let side = net.reachable();
    let certificate = net.cut_capacity(&side);
    assert_eq!(
        value, certificate,
        "max-flow value differs from min-cut capacity"
    );
    MaxFlow {
        value,
        source_side: (0..net.nodes()).filter(|&v| side[v]).collect(),
    }
}
