//! Dinic max-flow on small integer-capacity networks.
//!
//! Used by the exact maximum-subgraph-density computation; capacities stay
//! well inside `i64`.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
struct Arc {
    to: u32,
    cap: i64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    head: Vec<Vec<u32>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { arcs: Vec::new(), head: vec![Vec::new(); nodes] }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        let idx = self.arcs.len() as u32;
        self.arcs.push(Arc { to: to as u32, cap });
        self.arcs.push(Arc { to: from as u32, cap: 0 });
        self.head[from].push(idx);
        self.head[to].push(idx + 1);
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let n = self.head.len();
        let mut total = 0i64;
        loop {
            let mut level = vec![u32::MAX; n];
            level[source] = 0;
            let mut queue = vec![source as u32];
            let mut qi = 0;
            while qi < queue.len() {
                let v = queue[qi] as usize;
                qi += 1;
                for &a in &self.head[v] {
                    let arc = &self.arcs[a as usize];
                    if arc.cap > 0 && level[arc.to as usize] == u32::MAX {
                        level[arc.to as usize] = level[v] + 1;
                        queue.push(arc.to);
                    }
                }
            }
            if level[sink] == u32::MAX {
                return total;
            }
            let mut iter = vec![0usize; n];
            loop {
                let pushed = self.augment(source, sink, i64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(&mut self, v: usize, sink: usize, limit: i64, level: &[u32], iter: &mut [usize]) -> i64 {
        if v == sink {
            return limit;
        }
        while iter[v] < self.head[v].len() {
            let a = self.head[v][iter[v]] as usize;
            let (to, cap) = (self.arcs[a].to as usize, self.arcs[a].cap);
            if cap > 0 && level[to] == level[v] + 1 {
                let pushed = self.augment(to, sink, limit.min(cap), level, iter);
                if pushed > 0 {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
            iter[v] += 1;
        }
        0
    }

    /// Nodes on the source side of the minimum cut (after `max_flow`).
    pub fn source_side(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(v) = stack.pop() {
            for &a in &self.head[v] {
                let arc = &self.arcs[a as usize];
                if arc.cap > 0 && !seen[arc.to as usize] {
                    seen[arc.to as usize] = true;
                    stack.push(arc.to as usize);
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
    fn small_flow() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 3);
        net.add_arc(0, 2, 2);
        net.add_arc(1, 2, 5);
        net.add_arc(1, 3, 2);
        net.add_arc(2, 3, 3);
        assert_eq!(net.max_flow(0, 3), 5);
    }
}
