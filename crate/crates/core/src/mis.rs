//! Exact independence number and maximal independent set enumeration.

use crate::bits::BitRow;
use crate::graph::Graph;
use crate::twins::TwinQuotient;

/// Exact independence number.
///
/// Twins are merged first (an independent set may take a whole twin class),
/// then a maximum-weight independent set of the quotient is found by branch
/// and bound with a greedy clique-cover bound.
pub fn independence_number(g: &Graph) -> usize {
    if g.order() == 0 {
        return 0;
    }
    let tq = TwinQuotient::of(g);
    max_weight_independent_set(&tq.quotient, &tq.weights()).0 as usize
}

/// Maximum total weight of an independent set, with one optimal set.
pub fn max_weight_independent_set(g: &Graph, weights: &[u64]) -> (u64, BitRow) {
    assert_eq!(weights.len(), g.order());
    let mut s = WeightedMis {
        g,
        w: weights,
        best: 0,
        best_set: BitRow::EMPTY,
        current: BitRow::EMPTY,
    };
    // zero-weight vertices never help
    let cand = BitRow::from_indices((0..g.order()).filter(|&v| weights[v] > 0));
    s.expand(cand, 0);
    (s.best, s.best_set)
}

struct WeightedMis<'a> {
    g: &'a Graph,
    w: &'a [u64],
    best: u64,
    best_set: BitRow,
    current: BitRow,
}

impl WeightedMis<'_> {
    fn expand(&mut self, mut cand: BitRow, cur: u64) {
        if cand.is_empty() {
            if cur > self.best {
                self.best = cur;
                self.best_set = self.current;
            }
            return;
        }
        let (order, bounds) = self.clique_cover(&cand);
        for idx in (0..order.len()).rev() {
            if cur + bounds[idx] <= self.best {
                return;
            }
            let v = order[idx];
            let mut next = cand.difference(self.g.neighbors(v));
            next.remove(v);
            self.current.insert(v);
            self.expand(next, cur + self.w[v]);
            self.current.remove(v);
            cand.remove(v);
        }
    }

    /// Greedy partition of `cand` into cliques. Returns the vertices grouped
    /// by clique together with, for each position, the sum of the clique
    /// maxima up to and including that vertex's clique.
    fn clique_cover(&self, cand: &BitRow) -> (Vec<usize>, Vec<u64>) {
        let mut verts: Vec<usize> = cand.iter().collect();
        verts.sort_by_key(|&v| std::cmp::Reverse(self.w[v]));
        let mut cliques: Vec<(BitRow, u64, Vec<usize>)> = Vec::new();
        for v in verts {
            let nb = self.g.neighbors(v);
            match cliques.iter_mut().find(|(m, _, _)| m.is_subset(nb)) {
                Some((m, mx, list)) => {
                    m.insert(v);
                    *mx = (*mx).max(self.w[v]);
                    list.push(v);
                }
                None => cliques.push((BitRow::singleton(v), self.w[v], vec![v])),
            }
        }
        let mut order = Vec::with_capacity(cand.count());
        let mut bounds = Vec::with_capacity(cand.count());
        let mut acc = 0;
        for (_, mx, list) in cliques {
            acc += mx;
            for v in list {
                order.push(v);
                bounds.push(acc);
            }
        }
        (order, bounds)
    }
}

/// All maximal independent sets (Bron-Kerbosch with pivoting on the
/// complement), in discovery order.
pub fn maximal_independent_sets(g: &Graph) -> Vec<BitRow> {
    let mut out = Vec::new();
    if g.order() == 0 {
        out.push(BitRow::EMPTY);
        return out;
    }
    bron_kerbosch(g, BitRow::EMPTY, g.vertex_set(), BitRow::EMPTY, &mut out);
    out
}

fn bron_kerbosch(g: &Graph, r: BitRow, mut p: BitRow, mut x: BitRow, out: &mut Vec<BitRow>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    // pivot maximising |P \ N[u]|, i.e. the number of non-branching candidates
    let pivot = (p | x)
        .iter()
        .max_by_key(|&u| {
            let mut closed = *g.neighbors(u);
            closed.insert(u);
            p.difference(&closed).count()
        })
        .expect("P is non-empty");
    let mut closed_pivot = *g.neighbors(pivot);
    closed_pivot.insert(pivot);
    let branch = p & closed_pivot;
    for v in branch.iter() {
        let mut closed = *g.neighbors(v);
        closed.insert(v);
        let mut r2 = r;
        r2.insert(v);
        bron_kerbosch(g, r2, p.difference(&closed), x.difference(&closed), out);
        p.remove(v);
        x.insert(v);
    }
}

/// Exhaustive independence number over all vertex subsets; test oracle only.
#[cfg(test)]
pub(crate) fn brute_force_alpha(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 24);
    let rows: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut ok = true;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if rows[v] & mask != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(independence_number(&Graph::cycle(5).unwrap()), 2);
        assert_eq!(independence_number(&Graph::complete(4).unwrap()), 1);
        assert_eq!(independence_number(&Graph::empty(6).unwrap()), 6);
        assert_eq!(independence_number(&Graph::empty(0).unwrap()), 0);
        assert_eq!(independence_number(&Graph::complete_bipartite(4, 5).unwrap()), 5);
    }

    #[test]
    fn groetzsch_alpha_matches_exhaustive_scan() {
        let g = Graph::cycle(5).unwrap().mycielskian().unwrap();
        assert_eq!(brute_force_alpha(&g), 5);
        assert_eq!(independence_number(&g), 5);
    }

    #[test]
    fn maximal_sets_of_c5_are_its_five_non_edges() {
        let sets = maximal_independent_sets(&Graph::cycle(5).unwrap());
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| s.count() == 2));
    }

    #[test]
    fn maximal_sets_of_p4() {
        let mut sets: Vec<Vec<usize>> = maximal_independent_sets(&Graph::path(4).unwrap())
            .into_iter()
            .map(|s| s.iter().collect())
            .collect();
        sets.sort();
        assert_eq!(sets, vec![vec![0, 2], vec![0, 3], vec![1, 3]]);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n, 0.05f64..0.7).prop_flat_map(|(n, p)| {
            proptest::collection::vec(0.0f64..1.0, n * n.saturating_sub(1) / 2).prop_map(
                move |coins| {
                    let mut it = coins.into_iter();
                    Graph::from_fn(n, |_, _| it.next().unwrap() < p).unwrap()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn matches_exhaustive_scan(g in arb_graph(20)) {
            prop_assert_eq!(independence_number(&g), brute_force_alpha(&g));
        }

        #[test]
        fn maximal_sets_are_maximal_and_contain_a_maximum(g in arb_graph(12)) {
            let sets = maximal_independent_sets(&g);
            let alpha = brute_force_alpha(&g);
            for s in &sets {
                prop_assert!(g.is_independent(s));
                for v in 0..g.order() {
                    if !s.contains(v) {
                        let mut t = *s;
                        t.insert(v);
                        prop_assert!(!g.is_independent(&t));
                    }
                }
            }
            prop_assert_eq!(sets.iter().map(|s| s.count()).max().unwrap_or(0), alpha);
        }
    }
}
