//! Exact-arithmetic flow solvers on small dense instances.
//!
//! Capacities and costs are rationals, so optimal transportation values and
//! Strassen feasibility tests are free of rounding; instance sizes here are a
//! few dozen nodes, where successive shortest paths and BFS augmentation are
//! more than fast enough.

use crate::rational::{q_zero, Q};
use std::collections::VecDeque;

pub struct FlowNetwork {
    n: usize,
    to: Vec<usize>,
    cap: Vec<Q>,
    init_cap: Vec<Q>,
    cost: Vec<Q>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            to: Vec::new(),
            cap: Vec::new(),
            init_cap: Vec::new(),
            cost: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Adds a directed edge and its zero-capacity reverse; returns the edge id.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: Q, cost: Q) -> usize {
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(cap.clone());
        self.init_cap.push(cap);
        self.cost.push(cost.clone());
        self.adj[u].push(id);
        self.to.push(u);
        self.cap.push(q_zero());
        self.init_cap.push(q_zero());
        self.cost.push(-cost);
        self.adj[v].push(id + 1);
        id
    }

    /// Flow shipped on a forward edge so far.
    pub fn flow_on(&self, edge: usize) -> Q {
        &self.init_cap[edge] - &self.cap[edge]
    }

    /// Maximum flow by BFS augmentation (costs ignored).
    pub fn max_flow(&mut self, s: usize, t: usize) -> Q {
        let mut total = q_zero();
        loop {
            let mut parent: Vec<Option<usize>> = vec![None; self.n];
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.n];
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if !seen[v] && self.cap[e] > q_zero() {
                        seen[v] = true;
                        parent[v] = Some(e);
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push: Option<Q> = None;
            let mut v = t;
            while v != s {
                let e = parent[v].unwrap();
                push = Some(match push {
                    None => self.cap[e].clone(),
                    Some(p) => p.min(self.cap[e].clone()),
                });
                v = self.to[e ^ 1];
            }
            let push = push.unwrap();
            let mut v = t;
            while v != s {
                let e = parent[v].unwrap();
                self.cap[e] -= &push;
                self.cap[e ^ 1] += &push;
                v = self.to[e ^ 1];
            }
            total += push;
        }
    }

    /// Min-cost max-flow by successive shortest paths (SPFA distances; the
    /// residual network has negative reverse costs but no negative cycles).
    pub fn min_cost_max_flow(&mut self, s: usize, t: usize) -> (Q, Q) {
        let mut flow = q_zero();
        let mut cost = q_zero();
        loop {
            let mut dist: Vec<Option<Q>> = vec![None; self.n];
            let mut parent: Vec<Option<usize>> = vec![None; self.n];
            let mut in_queue = vec![false; self.n];
            dist[s] = Some(q_zero());
            let mut queue = VecDeque::from([s]);
            in_queue[s] = true;
            while let Some(u) = queue.pop_front() {
                in_queue[u] = false;
                let du = dist[u].clone().unwrap();
                for &e in &self.adj[u] {
                    if self.cap[e] <= q_zero() {
                        continue;
                    }
                    let v = self.to[e];
                    let cand = &du + &self.cost[e];
                    let better = match &dist[v] {
                        None => true,
                        Some(dv) => cand < *dv,
                    };
                    if better {
                        dist[v] = Some(cand);
                        parent[v] = Some(e);
                        if !in_queue[v] {
                            in_queue[v] = true;
                            queue.push_back(v);
                        }
                    }
                }
            }
            if dist[t].is_none() {
                return (flow, cost);
            }
            let mut push: Option<Q> = None;
            let mut v = t;
            while v != s {
                let e = parent[v].unwrap();
                push = Some(match push {
                    None => self.cap[e].clone(),
                    Some(p) => p.min(self.cap[e].clone()),
                });
                v = self.to[e ^ 1];
            }
            let push = push.unwrap();
            let mut v = t;
            while v != s {
                let e = parent[v].unwrap();
                self.cap[e] -= &push;
                self.cap[e ^ 1] += &push;
                cost += &self.cost[e] * &push;
                v = self.to[e ^ 1];
            }
            flow += push;
        }
    }
}
