//! Weighted blow-ups `F(h)`: every vertex `v` of the base becomes an
//! independent class of `h(v)` vertices and every edge a complete bipartite
//! graph between classes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Serialize, Serializer};

use crate::bits::BitRow;
use crate::error::{Error, Result};
use crate::extremal::Rational;
use crate::graph::{Graph, Label};
use crate::mis::maximal_independent_sets;

/// Integer weights on the vertices of a base graph. Signed, so that weight
/// functions can be combined linearly; materialising requires `w >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    base: Graph,
    w: Vec<i64>,
    total: i64,
}

impl WeightVector {
    pub fn new(base: Graph, w: Vec<i64>) -> Result<WeightVector> {
        if w.len() != base.order() {
            return Err(Error::WeightLength {
                expected: base.order(),
                got: w.len(),
            });
        }
        let total = w.iter().sum();
        Ok(WeightVector { base, w, total })
    }

    /// Every vertex gets weight `p`.
    pub fn uniform(base: Graph, p: i64) -> WeightVector {
        let w = vec![p; base.order()];
        WeightVector::new(base, w).expect("length matches")
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn weights(&self) -> &[i64] {
        &self.w
    }

    pub fn get(&self, v: usize) -> i64 {
        self.w[v]
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    /// `a * self + b * other`; both must live on the same base.
    pub fn combine(&self, a: i64, other: &WeightVector, b: i64) -> Result<WeightVector> {
        if !self.base.same_adjacency(&other.base) {
            return Err(Error::BadParams("weight vectors on different bases".into()));
        }
        let w = self.w.iter().zip(&other.w).map(|(x, y)| a * x + b * y).collect();
        WeightVector::new(self.base.clone(), w)
    }

    pub fn scaled(&self, a: i64) -> WeightVector {
        let w = self.w.iter().map(|x| a * x).collect();
        WeightVector::new(self.base.clone(), w).expect("length matches")
    }

    pub fn sum_over(&self, set: &BitRow) -> i64 {
        set.iter().map(|v| self.w[v]).sum()
    }

    /// `sum_{u in N(v)} w(u)` for every base vertex, without sign checks.
    pub fn neighborhood_sums(&self) -> Vec<i64> {
        (0..self.base.order())
            .map(|v| self.sum_over(self.base.neighbors(v)))
            .collect()
    }

    /// Vertices of positive weight.
    pub fn support(&self) -> BitRow {
        BitRow::from_indices((0..self.w.len()).filter(|&v| self.w[v] > 0))
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        match self.w.iter().position(|&x| x < 0) {
            Some(v) => Err(Error::NegativeWeight {
                vertex: v,
                weight: self.w[v],
            }),
            None => Ok(()),
        }
    }

    /// `sum_{uv in E} w(u) w(v)`, the edge count of the blow-up.
    pub fn edge_count(&self) -> i64 {
        self.base
            .edges()
            .into_iter()
            .map(|(u, v)| self.w[u] * self.w[v])
            .sum()
    }

    fn base_label(&self, v: usize) -> String {
        match self.base.label(v) {
            Some(l) => l.to_string(),
            None => format!("v{v}"),
        }
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.w.serialize(ser)
    }
}

/// Materialise the blow-up. Classes appear in base order, copies within a
/// class consecutively; vertex labels are `(base label, copy index)`.
pub fn blow_up(spec: &WeightVector) -> Result<Graph> {
    spec.check_nonnegative()?;
    let mut class_of = Vec::with_capacity(spec.total as usize);
    let mut labels = Vec::with_capacity(spec.total as usize);
    for v in 0..spec.base.order() {
        let name = spec.base_label(v);
        for c in 0..spec.w[v] as usize {
            class_of.push(v);
            labels.push(Label::copy_of(name.clone(), c));
        }
    }
    let g = Graph::from_fn(class_of.len(), |a, b| spec.base.has_edge(class_of[a], class_of[b]))?;
    g.with_labels(labels)
}

/// `|N(V_v)| = sum_{u in N(v)} w(u)` for every base vertex.
pub fn class_neighborhood_sizes(spec: &WeightVector) -> Result<Vec<i64>> {
    spec.check_nonnegative()?;
    Ok(spec.neighborhood_sums())
}

/// Whether `sum_v |N(V_v)| = k * sum_v w(v)` for a `k`-regular base.
pub fn check_sum_identity(spec: &WeightVector, k: usize) -> Result<bool> {
    if spec.base.regularity() != Some(k) && spec.base.order() > 0 {
        return Err(Error::NotRegular(k));
    }
    let sizes = class_neighborhood_sizes(spec)?;
    Ok(sizes.iter().sum::<i64>() == k as i64 * spec.total)
}

/// `ns/2 - x(rs - kn)/2`.
pub fn edge_bound(r: u64, k: u64, n: u64, s: u64, x: i64) -> Rational {
    let (r, k, n, s, x) = (r as i128, k as i128, n as i128, s as i128, x as i128);
    Rational::new(n * s - x * (r * s - k * n), 2)
}

/// All `d >= 2` with `(d+1)n/(3d+2) < delta` and `Delta < (d-1)n/(3d-4)`.
pub fn regular_parameter_candidates(delta: u64, big_delta: u64, n: u64) -> Vec<u64> {
    if delta > big_delta || n == 0 {
        return Vec::new();
    }
    let (lo, hi, n) = (delta as i128, big_delta as i128, n as i128);
    // the right-hand condition fails for every d once (d-1)/(3d-4) <= Delta/n,
    // which happens by d = n + 2 whenever Delta > n/3
    (2..=n as u64 + 2)
        .filter(|&d| {
            let d = d as i128;
            (d + 1) * n < lo * (3 * d + 2) && hi * (3 * d - 4) < (d - 1) * n
        })
        .collect()
}

/// The regular parameter forced by the degree window.
///
/// A candidate `d` from [`regular_parameter_candidates`] is returned only if
/// it is also consistent with the averaging bound
/// `delta <= dn/(3d-1) <= Delta`, which any proper blow-up of a graph with a
/// `d`-regular blow-up on `3d - 1` vertices obeys. At most one candidate can
/// pass.
pub fn infer_regular_parameter(delta: u64, big_delta: u64, n: u64) -> Option<u64> {
    let (lo, hi, ni) = (delta as i128, big_delta as i128, n as i128);
    regular_parameter_candidates(delta, big_delta, n)
        .into_iter()
        .find(|&d| {
            let d = d as i128;
            lo * (3 * d - 1) <= d * ni && d * ni <= hi * (3 * d - 1)
        })
}

type MisCache = Mutex<HashMap<Vec<BitRow>, Arc<Vec<BitRow>>>>;

fn mis_cache() -> &'static MisCache {
    static CACHE: OnceLock<MisCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Maximal independent sets of `base`, memoised per adjacency.
pub fn cached_maximal_independent_sets(base: &Graph) -> Arc<Vec<BitRow>> {
    let key = base.rows().to_vec();
    if let Some(hit) = mis_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let sets = Arc::new(maximal_independent_sets(base));
    mis_cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(sets)
        .clone()
}

/// `alpha` of the blow-up: the heaviest maximal independent set of the base.
pub fn blowup_alpha(spec: &WeightVector) -> Result<i64> {
    spec.check_nonnegative()?;
    let sets = cached_maximal_independent_sets(&spec.base);
    Ok(sets.iter().map(|s| spec.sum_over(s)).max().unwrap_or(0))
}
