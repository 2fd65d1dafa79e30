//! Exact maximisation of `sum_{uv in E} w(u) w(v)` over integer weights
//! `w >= 0` on a triangle-free base with `sum w = n` and `w(I) <= s` for
//! every maximal independent set `I`.
//!
//! Depth-first search over the base vertices in a fixed order. A node is
//! cut when the unassigned vertices cannot absorb the remaining weight, or
//! when an optimistic completion bound falls strictly below the incumbent;
//! ties are explored so that every optimum is found.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::blowup::{blow_up, cached_maximal_independent_sets, WeightVector};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::report::{SearchReport, Witness};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Clone, Debug)]
pub struct OptimizerConfig {
    pub node_budget: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Optimum with every optimal weight vector, before isomorphism reduction.
#[derive(Clone, Debug)]
pub struct BlowupOptimum {
    pub optimum: i64,
    pub assignments: Vec<Vec<i64>>,
    pub nodes: u64,
    pub seconds: f64,
}

pub fn max_blowup_edges(base: &Graph, n: u64, s: u64) -> Result<SearchReport> {
    max_blowup_edges_with(base, n, s, &OptimizerConfig::default())
}

pub fn max_blowup_edges_with(base: &Graph, n: u64, s: u64, config: &OptimizerConfig) -> Result<SearchReport> {
    let raw = optimal_assignments(base, n, s, config)?;
    let mut classes: BTreeMap<Vec<u8>, Vec<i64>> = BTreeMap::new();
    for w in &raw.assignments {
        let g = blow_up(&WeightVector::new(base.clone(), w.clone())?)?;
        let form = g.canonical_form();
        classes
            .entry(form)
            .and_modify(|best| {
                if w < best {
                    *best = w.clone();
                }
            })
            .or_insert_with(|| w.clone());
    }
    let witnesses = classes
        .into_iter()
        .map(|(form, w)| Witness {
            graph6: String::from_utf8(form).expect("graph6 is ASCII"),
            weights: Some(w),
        })
        .collect();
    Ok(SearchReport {
        optimum: raw.optimum,
        witnesses,
        nodes: raw.nodes,
        seconds: raw.seconds,
        structured_assumption: false,
    })
}

/// The search proper: optimum and all optimal weight vectors, sorted.
pub fn optimal_assignments(base: &Graph, n: u64, s: u64, config: &OptimizerConfig) -> Result<BlowupOptimum> {
    let start = Instant::now();
    let m = base.order();
    if m > 64 {
        return Err(Error::BadParams(format!("optimizer bases have at most 64 vertices, got {m}")));
    }
    if n > 10_000 || s > n {
        return Err(Error::BadParams(format!("need s <= n <= 10000, got n={n}, s={s}")));
    }
    if let Some(t) = base.find_triangle() {
        return Err(Error::NotTriangleFree(t));
    }
    if m == 0 {
        return if n == 0 {
            Ok(BlowupOptimum {
                optimum: 0,
                assignments: vec![vec![]],
                nodes: 1,
                seconds: 0.0,
            })
        } else {
            Err(Error::Infeasible("empty base cannot hold positive weight".into()))
        };
    }
    let problem = Problem::new(base, n as i64, s as i64);
    let shared = Shared {
        best: AtomicI64::new(-1),
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
        budget: config.node_budget,
    };

    // enumerate the first two levels, then split the subtrees across threads
    let mut seeds = Vec::new();
    {
        let mut st = State::new(&problem);
        let mut local = Local::default();
        problem.collect_prefixes(&mut st, 0, 2.min(m), &mut seeds, &shared, &mut local);
        shared.nodes.fetch_add(local.nodes, Ordering::Relaxed);
    }
    let results: Vec<Local> = seeds
        .par_iter()
        .map(|prefix| {
            let mut st = State::new(&problem);
            let mut local = Local::default();
            for (t, &x) in prefix.iter().enumerate() {
                st.assign(&problem, t, x);
            }
            problem.search(&mut st, prefix.len(), &shared, &mut local);
            shared.nodes.fetch_add(local.nodes, Ordering::Relaxed);
            local
        })
        .collect();
    if shared.abort.load(Ordering::Relaxed) || shared.nodes.load(Ordering::Relaxed) > config.node_budget {
        return Err(Error::ResourceLimit(format!(
            "optimizer exceeded its budget of {} nodes",
            config.node_budget
        )));
    }
    let best = shared.best.load(Ordering::Relaxed);
    if best < 0 {
        return Err(Error::Infeasible(format!(
            "no weighting of the base with total {n} keeps every independent set at most {s}"
        )));
    }
    let mut assignments: Vec<Vec<i64>> = results
        .into_iter()
        .flat_map(|l| l.found)
        .filter(|(e, _)| *e == best)
        .map(|(_, w)| problem.unpermute(&w))
        .collect();
    assignments.sort();
    assignments.dedup();
    Ok(BlowupOptimum {
        optimum: best,
        assignments,
        nodes: shared.nodes.load(Ordering::Relaxed),
        seconds: start.elapsed().as_secs_f64(),
    })
}

struct Shared {
    best: AtomicI64,
    nodes: AtomicU64,
    abort: AtomicBool,
    budget: u64,
}

#[derive(Default)]
struct Local {
    nodes: u64,
    unflushed: u64,
    /// Leaves at the best value this worker has seen, in search order.
    found: Vec<(i64, Vec<i64>)>,
}

/// Base relabelled into search order.
struct Problem {
    m: usize,
    n: i64,
    s: i64,
    /// `order[t]` is the original vertex searched at depth `t`.
    order: Vec<usize>,
    adj: Vec<u64>,
    /// Maximal independent sets, as masks over search positions.
    mis: Vec<u64>,
    /// Indices into `mis` of the sets containing each position.
    mis_of: Vec<Vec<usize>>,
}

struct State {
    w: Vec<i64>,
    mis_sum: Vec<i64>,
    /// Weight of the assigned neighbours of each position.
    nbr: Vec<i64>,
    edges: i64,
    remaining: i64,
}

impl State {
    fn new(p: &Problem) -> State {
        State {
            w: vec![0; p.m],
            mis_sum: vec![0; p.mis.len()],
            nbr: vec![0; p.m],
            edges: 0,
            remaining: p.n,
        }
    }

    fn assign(&mut self, p: &Problem, t: usize, x: i64) {
        self.w[t] = x;
        self.remaining -= x;
        self.edges += x * self.nbr[t];
        for &j in &p.mis_of[t] {
            self.mis_sum[j] += x;
        }
        let mut a = p.adj[t];
        while a != 0 {
            let u = a.trailing_zeros() as usize;
            a &= a - 1;
            self.nbr[u] += x;
        }
    }

    fn unassign(&mut self, p: &Problem, t: usize) {
        let x = self.w[t];
        self.w[t] = 0;
        self.remaining += x;
        self.edges -= x * self.nbr[t];
        for &j in &p.mis_of[t] {
            self.mis_sum[j] -= x;
        }
        let mut a = p.adj[t];
        while a != 0 {
            let u = a.trailing_zeros() as usize;
            a &= a - 1;
            self.nbr[u] -= x;
        }
    }
}

impl Problem {
    fn new(base: &Graph, n: i64, s: i64) -> Problem {
        let m = base.order();
        // greedy order: each next vertex has the most already-placed neighbours
        let mut order = Vec::with_capacity(m);
        let mut placed = vec![false; m];
        for _ in 0..m {
            let v = (0..m)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let back = base.neighbors(v).iter().filter(|&u| placed[u]).count();
                    (back, base.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[v] = true;
            order.push(v);
        }
        let mut pos = vec![0; m];
        for (t, &v) in order.iter().enumerate() {
            pos[v] = t;
        }
        let adj = (0..m)
            .map(|t| base.neighbors(order[t]).iter().fold(0u64, |a, u| a | 1 << pos[u]))
            .collect();
        let mis: Vec<u64> = cached_maximal_independent_sets(base)
            .iter()
            .map(|set| set.iter().fold(0u64, |a, v| a | 1 << pos[v]))
            .collect();
        let mis_of = (0..m)
            .map(|t| (0..mis.len()).filter(|&j| mis[j] >> t & 1 == 1).collect())
            .collect();
        Problem {
            m,
            n,
            s,
            order,
            adj,
            mis,
            mis_of,
        }
    }

    fn unpermute(&self, w: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.m];
        for (t, &v) in self.order.iter().enumerate() {
            out[v] = w[t];
        }
        out
    }

    fn cap(&self, st: &State, t: usize) -> i64 {
        self.mis_of[t]
            .iter()
            .map(|&j| self.s - st.mis_sum[j])
            .min()
            .unwrap_or(self.s)
    }

    /// Whether the subtree below depth `t` (positions `t..` unassigned) can
    /// still reach the incumbent.
    fn promising(&self, st: &State, t: usize, best: i64) -> bool {
        let r = st.remaining;
        if r == 0 {
            return st.edges >= best;
        }
        if t == self.m {
            return false;
        }
        let mut room = 0;
        let mut reach = 0;
        for u in t..self.m {
            room += self.cap(st, u).max(0);
            reach = reach.max(st.nbr[u].min(self.s));
        }
        if room < r {
            return false;
        }
        // assigned classes can still gain at most s - deg each
        let slack: i64 = (0..t).map(|a| st.w[a] * (self.s - st.nbr[a]).max(0)).sum();
        let cross = slack.min(r * reach).min(r * self.s);
        // the unassigned part spans a triangle-free blow-up on r vertices
        let inner = (r * r / 4).min((r * self.s - cross) / 2);
        st.edges + cross + inner >= best
    }

    fn tick(&self, shared: &Shared, local: &mut Local) -> bool {
        local.nodes += 1;
        local.unflushed += 1;
        if local.unflushed >= FLUSH_EVERY {
            let total = shared.nodes.fetch_add(local.unflushed, Ordering::Relaxed) + local.unflushed;
            local.nodes -= local.unflushed;
            local.unflushed = 0;
            if total > shared.budget {
                shared.abort.store(true, Ordering::Relaxed);
            }
        }
        !shared.abort.load(Ordering::Relaxed)
    }

    fn values(&self, st: &State, t: usize) -> std::ops::RangeInclusive<i64> {
        let hi = st.remaining.min(self.cap(st, t));
        let lo = if t + 1 == self.m { st.remaining } else { 0 };
        lo..=hi
    }

    fn collect_prefixes(
        &self,
        st: &mut State,
        t: usize,
        depth: usize,
        out: &mut Vec<Vec<i64>>,
        shared: &Shared,
        local: &mut Local,
    ) {
        if t == depth {
            out.push(st.w[..t].to_vec());
            return;
        }
        for x in self.values(st, t).rev() {
            self.tick(shared, local);
            st.assign(self, t, x);
            if self.promising(st, t + 1, 0) {
                self.collect_prefixes(st, t + 1, depth, out, shared, local);
            }
            st.unassign(self, t);
        }
    }

    fn search(&self, st: &mut State, t: usize, shared: &Shared, local: &mut Local) {
        // with no weight left the remaining positions are forced to zero
        if st.remaining == 0 {
            self.leaf(st, shared, local);
            return;
        }
        if t == self.m {
            return;
        }
        for x in self.values(st, t).rev() {
            if !self.tick(shared, local) {
                return;
            }
            st.assign(self, t, x);
            if self.promising(st, t + 1, shared.best.load(Ordering::Relaxed)) {
                self.search(st, t + 1, shared, local);
            }
            st.unassign(self, t);
        }
    }

    fn leaf(&self, st: &State, shared: &Shared, local: &mut Local) {
        let e = st.edges;
        let prev = shared.best.fetch_max(e, Ordering::Relaxed);
        if e < prev {
            return;
        }
        if let Some((top, _)) = local.found.last() {
            if *top < e {
                local.found.clear();
            } else if *top > e {
                return;
            }
        }
        local.found.push((e, st.w.clone()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{andrasfai, vega, vega_regular_blowup};
    use crate::families::family_g;

    fn forms(r: &SearchReport) -> Vec<String> {
        r.witness_graph6().into_iter().map(String::from).collect()
    }

    fn family_forms(n: u64, s: u64, k: u64) -> Vec<String> {
        let mut v: Vec<String> = family_g(n, s, k)
            .iter()
            .map(|m| String::from_utf8(m.graph.canonical_form()).unwrap())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn c5_example() {
        let r = max_blowup_edges(&andrasfai(2).unwrap(), 9, 4).unwrap();
        assert_eq!(r.optimum, 17);
        assert_eq!(r.witnesses.len(), 2);
        assert_eq!(forms(&r), family_forms(9, 4, 2));
    }

    #[test]
    fn gamma3_critical_point() {
        let r = max_blowup_edges(&andrasfai(3).unwrap(), 16, 6).unwrap();
        assert_eq!(r.optimum, 48);
        assert_eq!(forms(&r), family_forms(16, 6, 3));
        assert_eq!(r.witnesses[0].weights.as_deref(), Some(&[2i64; 8][..]));
    }

    #[test]
    fn haeggkvist_from_groetzsch_base() {
        let r = max_blowup_edges(&vega(2, 1, 1).unwrap(), 29, 10).unwrap();
        assert_eq!(r.optimum, 145);
        assert_eq!(r.witnesses.len(), 1);
        let h = vega_regular_blowup(2, 1, 1).unwrap();
        assert_eq!(r.witnesses[0].graph6.as_bytes(), &h.canonical_form()[..]);
    }

    #[test]
    fn small_edge_cases() {
        let k2 = Graph::complete(2).unwrap();
        let r = max_blowup_edges(&k2, 7, 7).unwrap();
        assert_eq!(r.optimum, 12);
        assert!(matches!(max_blowup_edges(&k2, 7, 3), Err(Error::Infeasible(_))));
        let k3 = Graph::complete(3).unwrap();
        assert!(matches!(max_blowup_edges(&k3, 3, 3), Err(Error::NotTriangleFree(_))));
        let tight = OptimizerConfig { node_budget: 10 };
        assert!(matches!(
            max_blowup_edges_with(&andrasfai(3).unwrap(), 30, 11, &tight),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn matches_brute_force_on_small_instances() {
        let base = andrasfai(2).unwrap();
        for n in 1..=9i64 {
            for s in 1..=n {
                let mut best = -1;
                let mut count = 0;
                let mut w = [0i64; 5];
                brute(&base, n, s, 0, &mut w, &mut best, &mut count);
                let got = optimal_assignments(&base, n as u64, s as u64, &OptimizerConfig::default());
                match got {
                    Ok(o) => {
                        assert_eq!(o.optimum, best, "n={n} s={s}");
                        assert_eq!(o.assignments.len(), count, "n={n} s={s}");
                    }
                    Err(_) => assert_eq!(best, -1),
                }
            }
        }
    }

    fn brute(base: &Graph, n: i64, s: i64, v: usize, w: &mut [i64; 5], best: &mut i64, count: &mut usize) {
        if v == 5 {
            if w.iter().sum::<i64>() != n {
                return;
            }
            for set in crate::mis::maximal_independent_sets(base) {
                if set.iter().map(|u| w[u]).sum::<i64>() > s {
                    return;
                }
            }
            let e: i64 = base.edges().iter().map(|&(a, b)| w[a] * w[b]).sum();
            if e > *best {
                *best = e;
                *count = 1;
            } else if e == *best {
                *count += 1;
            }
            return;
        }
        for x in 0..=n {
            w[v] = x;
            brute(base, n, s, v + 1, w, best, count);
        }
        w[v] = 0;
    }
}
