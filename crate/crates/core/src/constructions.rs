//! Andrásfai graphs, cyclic Cayley graphs, Vega graphs and the weight
//! functions whose blow-ups are regular.

use crate::bits::BitRow;
use crate::blowup::{blow_up, WeightVector};
use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

/// Largest `k` whose Andrásfai graph fits the row capacity.
pub const MAX_ANDRASFAI: usize = (crate::bits::CAPACITY + 1) / 3;

fn v_labels(count: usize) -> Vec<Label> {
    (0..count).map(|j| Label::named(format!("v{j}"))).collect()
}

/// `Γ_k` on `v_0..v_{3k-2}` with `v_i ~ v_j` iff `k <= |i - j| <= 2k - 1`.
pub fn andrasfai(k: usize) -> Result<Graph> {
    if k == 0 || k > MAX_ANDRASFAI {
        return Err(Error::BadParams(format!("andrasfai needs 1 <= k <= {MAX_ANDRASFAI}, got {k}")));
    }
    let g = Graph::from_fn(3 * k - 1, |i, j| (k..2 * k).contains(&i.abs_diff(j)))?;
    g.with_labels(v_labels(3 * k - 1))
}

/// Cayley graph of `Z_m`: `i ~ j` iff `i - j mod m` lies in `set`.
pub fn cayley_cyclic(m: usize, set: &[usize]) -> Result<Graph> {
    let mut conn = vec![false; m];
    for &x in set {
        if x == 0 || x >= m {
            return Err(Error::BadParams(format!("connection element {x} not in Z_{m} minus 0")));
        }
        conn[x] = true;
    }
    if let Some(x) = (1..m).find(|&x| conn[x] && !conn[m - x]) {
        return Err(Error::AsymmetricConnectionSet(x));
    }
    Graph::from_fn(m, |i, j| conn[(i + m - j) % m])
}

/// A vertex `w` of `Γ_k` whose neighbourhood contains the independent set `set`.
///
/// Rotate so that a member of `set` sits at `v_k`; the rotated set then lies in
/// `v_k..v_{2k-1}` with extreme indices `i <= j`, and `v_{j+k}` is adjacent to
/// all of it.
pub fn independent_set_cover(k: usize, set: &BitRow) -> Result<usize> {
    let g = andrasfai(k)?;
    let m = 3 * k - 1;
    let first = set.first().ok_or(Error::EmptySet)?;
    for v in set.iter() {
        if v >= m {
            return Err(Error::VertexOutOfRange { vertex: v, order: m });
        }
        if let Some(u) = (*g.neighbors(v) & *set).first() {
            return Err(Error::NotIndependent(v, u));
        }
    }
    let shift = (k + m - first) % m;
    let rotated: Vec<usize> = set.iter().map(|v| (v + shift) % m).collect();
    let j = *rotated.iter().max().unwrap();
    let w = (j + k + m - shift) % m;
    debug_assert!(set.is_subset(g.neighbors(w)));
    Ok(w)
}

/// The map `Γ_k - v_k -> Γ_{k-1}` behind the statement that deleting a
/// vertex of `Γ_k` leaves a subgraph of a proper blow-up of `Γ_{k-1}`.
#[derive(Clone, Debug)]
pub struct DeletionEmbedding {
    pub k: usize,
    /// Image class in `Γ_{k-1}` of each vertex of `Γ_k`; `None` at `v_k`.
    pub image: Vec<Option<usize>>,
    /// Class sizes of the target blow-up.
    pub weights: WeightVector,
}

impl DeletionEmbedding {
    /// Every edge of `Γ_k - v_k` maps to an edge, and no class receives more
    /// vertices than its weight.
    pub fn verify(&self) -> bool {
        let Ok(src) = andrasfai(self.k) else { return false };
        let dst = self.weights.base();
        let mut load = vec![0i64; dst.order()];
        for v in self.image.iter().flatten() {
            load[*v] += 1;
        }
        if load.iter().zip(self.weights.weights()).any(|(l, w)| l > w) {
            return false;
        }
        src.edges().into_iter().all(|(a, b)| match (self.image[a], self.image[b]) {
            (Some(x), Some(y)) => dst.has_edge(x, y),
            _ => true,
        })
    }
}

/// Index of `v_j` of `Γ_k` in `Γ_{k-1} ≅ Γ_k - {v_0, v_k, v_{2k}}`.
fn survivor_index(k: usize, j: usize) -> Option<usize> {
    match j {
        0 => None,
        j if j < k => Some(j - 1),
        j if j == k => None,
        j if j < 2 * k => Some(j - 2),
        j if j == 2 * k => None,
        j => Some(j - 3),
    }
}

pub fn andrasfai_deletion_embedding(k: usize) -> Result<DeletionEmbedding> {
    if k < 2 {
        return Err(Error::BadParams("deletion embedding needs k >= 2".into()));
    }
    let m = 3 * k - 1;
    let mut image: Vec<Option<usize>> = (0..m).map(|j| survivor_index(k, j)).collect();
    // v_0 shares its neighbourhood in Γ_k - v_k with a twin of v_1, and v_{2k}
    // with a twin of v_{2k-1}
    image[0] = survivor_index(k, 1);
    image[2 * k] = survivor_index(k, 2 * k - 1);
    let target = andrasfai(k - 1)?;
    let mut w = vec![1; target.order()];
    w[image[0].unwrap()] = 2;
    w[image[2 * k].unwrap()] = 2;
    let weights = WeightVector::new(target, w)?;
    Ok(DeletionEmbedding { k, image, weights })
}

/// Vega graph parameters; `k = 9i - (6 + mu + nu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VegaParams {
    pub i: usize,
    pub mu: u8,
    pub nu: u8,
}

/// Slot indices in the full Vega graph `Υ_i`.
pub mod slot {
    pub const X: usize = 0;
    pub const Y: usize = 1;
    pub const A: usize = 2;
    pub const B: usize = 3;
    pub const C: usize = 4;
    pub const U: usize = 5;
    pub const V: usize = 6;
    pub const W: usize = 7;
    /// Slot of `v_j`.
    pub const fn core(j: usize) -> usize {
        8 + j
    }
}

impl VegaParams {
    pub fn new(i: usize, mu: u8, nu: u8) -> Result<VegaParams> {
        if i < 2 || mu > 1 || nu > 1 {
            return Err(Error::BadParams(format!("vega needs i >= 2 and mu, nu in {{0, 1}}, got ({i}, {mu}, {nu})")));
        }
        if 3 * i + 7 > crate::bits::CAPACITY || 27 * i > crate::bits::CAPACITY + 19 {
            return Err(Error::BadParams(format!("vega parameter i = {i} exceeds capacity")));
        }
        Ok(VegaParams { i, mu, nu })
    }

    pub fn k(&self) -> usize {
        9 * self.i - (6 + self.mu as usize + self.nu as usize)
    }

    /// Order of `Υ_i`, before deletions.
    pub fn full_order(&self) -> usize {
        3 * self.i + 7
    }

    pub fn order(&self) -> usize {
        self.full_order() - self.mu as usize - self.nu as usize
    }

    /// Slots of `Υ_i` removed in `Υ_i^{mu nu}`.
    pub fn deleted(&self) -> Vec<usize> {
        let mut out = Vec::new();
        if self.mu == 1 {
            out.push(slot::Y);
        }
        if self.nu == 1 {
            out.push(slot::core(2 * self.i - 1));
        }
        out
    }

    /// All `(i, mu, nu)` with `9i - (6 + mu + nu) = k`.
    pub fn for_k(k: usize) -> Vec<VegaParams> {
        let mut out = Vec::new();
        for mu in 0..=1u8 {
            for nu in 0..=1u8 {
                let t = k + 6 + mu as usize + nu as usize;
                if t % 9 == 0 && t / 9 >= 2 {
                    if let Ok(p) = VegaParams::new(t / 9, mu, nu) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

/// `Υ_i` with every slot present.
pub fn vega_full(i: usize) -> Result<Graph> {
    let p = VegaParams::new(i, 0, 0)?;
    use slot::*;
    let mut g = Graph::empty(p.full_order())?;
    let gamma = andrasfai(i)?;
    for (a, b) in gamma.edges() {
        g.add_edge(core(a), core(b))?;
    }
    g.add_edge(X, Y)?;
    for (a, b) in [(A, V), (V, C), (C, U), (U, B), (B, W), (W, A)] {
        g.add_edge(a, b)?;
    }
    for z in [A, B, C] {
        g.add_edge(X, z)?;
    }
    for z in [U, V, W] {
        g.add_edge(Y, z)?;
    }
    for j in 0..3 * i - 1 {
        let (p, q) = match j / i {
            0 => (A, U),
            1 => (B, V),
            _ => (C, W),
        };
        g.add_edge(p, core(j))?;
        g.add_edge(q, core(j))?;
    }
    let mut labels: Vec<Label> = ["x", "y", "a", "b", "c", "u", "v", "w"]
        .iter()
        .map(|s| Label::named(*s))
        .collect();
    labels.extend(v_labels(3 * i - 1));
    let g = g.with_labels(labels)?;
    validate_vega(&g, i);
    Ok(g)
}

fn validate_vega(g: &Graph, i: usize) {
    use slot::*;
    assert!(g.is_triangle_free(), "vega({i}) contains a triangle");
    let mut expected = vec![4, 4, i + 3, i + 3, i + 2, i + 3, i + 3, i + 2];
    expected.extend(std::iter::repeat(i + 2).take(3 * i - 1));
    assert_eq!(g.degrees(), expected, "vega({i}) degree pattern");
    assert_eq!(g.edge_count(), i * (3 * i - 1) / 2 + 6 * i + 11);
    assert!(g.has_edge(X, Y) && !g.has_edge(A, B));
}

/// `Υ_i^{mu nu}`: `Υ_i` minus `y` when `mu = 1` and minus `v_{2i-1}` when `nu = 1`.
pub fn vega(i: usize, mu: u8, nu: u8) -> Result<Graph> {
    let p = VegaParams::new(i, mu, nu)?;
    vega_full(i)?.delete_vertices(&p.deleted())
}

fn weights_on_full(i: usize, w: Vec<i64>) -> Result<WeightVector> {
    WeightVector::new(vega_full(i)?, w)
}

/// `ω_00` on `Υ_i`.
pub fn omega00(i: usize) -> Result<WeightVector> {
    use slot::*;
    VegaParams::new(i, 0, 0)?;
    let t = 3 * i as i64;
    let mut w = vec![0i64; 3 * i + 7];
    w[X] = 1;
    w[Y] = 1;
    for z in [A, B, U, V] {
        w[z] = t - 2;
    }
    for z in [C, W] {
        w[z] = t - 3;
    }
    for j in 0..3 * i - 1 {
        w[core(j)] = if j == 0 || j == 2 * i - 1 { 1 } else { 3 };
    }
    weights_on_full(i, w)
}

/// `f`: `+1` on `u, v, w, y`, `-1` on `x`.
pub fn vega_f(i: usize) -> Result<WeightVector> {
    use slot::*;
    VegaParams::new(i, 0, 0)?;
    let mut w = vec![0i64; 3 * i + 7];
    for z in [U, V, W, Y] {
        w[z] = 1;
    }
    w[X] = -1;
    weights_on_full(i, w)
}

/// `g`: `+1` on `b, v, v_{i-1}, v_{2i-1}`, `-1` on `v_0`.
pub fn vega_g(i: usize) -> Result<WeightVector> {
    use slot::*;
    VegaParams::new(i, 0, 0)?;
    let mut w = vec![0i64; 3 * i + 7];
    for z in [B, V, core(i - 1), core(2 * i - 1)] {
        w[z] = 1;
    }
    w[core(0)] = -1;
    weights_on_full(i, w)
}

/// `ω_{mu nu} = ω_00 - mu f - nu g` on `Υ_i` (deleted slots carry weight 0).
pub fn omega(i: usize, mu: u8, nu: u8) -> Result<WeightVector> {
    VegaParams::new(i, mu, nu)?;
    omega00(i)?
        .combine(1, &vega_f(i)?, -(mu as i64))?
        .combine(1, &vega_g(i)?, -(nu as i64))
}

/// `G_i^{mu nu}`, the blow-up of `Υ_i` by `ω_{mu nu}`.
pub fn vega_regular_blowup(i: usize, mu: u8, nu: u8) -> Result<Graph> {
    blow_up(&omega(i, mu, nu)?)
}

/// The Mycielskian of `C_5`.
pub fn groetzsch() -> Graph {
    Graph::cycle(5)
        .and_then(|c| c.mycielskian())
        .expect("11 vertices fit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mis::maximal_independent_sets;

    #[test]
    fn small_andrasfai_graphs() {
        assert!(andrasfai(1).unwrap().is_isomorphic(&Graph::complete(2).unwrap()));
        assert!(andrasfai(2).unwrap().is_isomorphic(&Graph::cycle(5).unwrap()));
        let g = andrasfai(3).unwrap();
        assert_eq!((g.order(), g.edge_count(), g.regularity()), (8, 12, Some(3)));
        assert_eq!(g.independence_number(), 3);
        assert_eq!(g.chromatic_number(), 3);
        assert!(andrasfai(6).unwrap().is_triangle_free());
        assert!(andrasfai(0).is_err());
    }

    #[test]
    fn cayley_examples() {
        assert!(cayley_cyclic(5, &[2, 3]).unwrap().is_isomorphic(&Graph::cycle(5).unwrap()));
        assert_eq!(cayley_cyclic(7, &[]).unwrap().edge_count(), 0);
        assert!(cayley_cyclic(8, &[3, 4, 5]).unwrap().is_isomorphic(&andrasfai(3).unwrap()));
        assert_eq!(cayley_cyclic(8, &[3, 4]), Err(Error::AsymmetricConnectionSet(3)));
        for k in 1..=10 {
            let set: Vec<usize> = (k..2 * k).collect();
            let c = cayley_cyclic(3 * k - 1, &set).unwrap();
            assert!(c.same_adjacency(&andrasfai(k).unwrap()));
        }
    }

    #[test]
    fn cover_examples() {
        let w = independent_set_cover(2, &BitRow::singleton(2)).unwrap();
        assert!([0, 4].contains(&w));
        assert_eq!(independent_set_cover(3, &BitRow::from_indices([3, 5])).unwrap(), 0);
        assert_eq!(independent_set_cover(3, &BitRow::EMPTY), Err(Error::EmptySet));
        assert!(matches!(
            independent_set_cover(3, &BitRow::from_indices([0, 3])),
            Err(Error::NotIndependent(_, _))
        ));
        for k in 1..=10 {
            let g = andrasfai(k).unwrap();
            for s in maximal_independent_sets(&g) {
                let w = independent_set_cover(k, &s).unwrap();
                assert!(s.is_subset(g.neighbors(w)));
            }
        }
    }

    #[test]
    fn deletion_embeddings_validate() {
        for k in 2..=12 {
            let e = andrasfai_deletion_embedding(k).unwrap();
            assert!(e.verify(), "k = {k}");
            assert_eq!(e.weights.total(), 3 * k as i64 - 2);
        }
        let e = andrasfai_deletion_embedding(3).unwrap();
        assert_eq!(e.weights.weights(), &[2, 1, 1, 2, 1]);
    }

    #[test]
    fn removing_three_vertices_gives_previous_graph() {
        for k in 2..=12 {
            let g = andrasfai(k).unwrap().delete_vertices(&[0, k, 2 * k]).unwrap();
            assert!(g.same_adjacency(&andrasfai(k - 1).unwrap()));
        }
    }

    #[test]
    fn vega_orders_and_groetzsch() {
        let g = vega(2, 0, 0).unwrap();
        assert_eq!((g.order(), g.edge_count()), (13, 28));
        let g11 = vega(2, 1, 1).unwrap();
        assert_eq!(g11.order(), 11);
        assert_eq!(g11.canonical_form(), groetzsch().canonical_form());
        for i in 2..=6 {
            for (mu, nu) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let g = vega(i, mu, nu).unwrap();
                assert_eq!(g.order(), 3 * i + 7 - mu as usize - nu as usize);
                assert!(g.is_triangle_free());
            }
        }
        assert!(vega(1, 0, 0).is_err());
        assert!(vega(2, 2, 0).is_err());
    }

    #[test]
    fn omega_identities() {
        for i in 2..=8 {
            assert_eq!(omega00(i).unwrap().total(), 27 * i as i64 - 19);
            assert_eq!(vega_f(i).unwrap().total(), 3);
            assert_eq!(vega_g(i).unwrap().total(), 3);
            for (mu, nu) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let p = VegaParams::new(i, mu, nu).unwrap();
                let w = omega(i, mu, nu).unwrap();
                let k = p.k() as i64;
                assert_eq!(w.total(), 3 * k - 1);
                let deleted = p.deleted();
                let sums = w.neighborhood_sums();
                for z in 0..w.weights().len() {
                    if deleted.contains(&z) {
                        assert_eq!(w.get(z), 0);
                    } else {
                        assert!(w.get(z) > 0, "i={i} mu={mu} nu={nu} z={z}");
                        assert_eq!(sums[z], k);
                    }
                }
            }
        }
    }

    #[test]
    fn haeggkvist_graph() {
        let g = vega_regular_blowup(2, 1, 1).unwrap();
        assert_eq!((g.order(), g.regularity()), (29, Some(10)));
        assert!(g.is_triangle_free());
        let g = vega_regular_blowup(2, 0, 0).unwrap();
        assert_eq!((g.order(), g.regularity()), (35, Some(12)));
    }

    #[test]
    fn params_for_k() {
        assert_eq!(VegaParams::for_k(10), vec![VegaParams { i: 2, mu: 1, nu: 1 }]);
        assert_eq!(VegaParams::for_k(11).len(), 2);
        assert_eq!(VegaParams::for_k(12), vec![VegaParams { i: 2, mu: 0, nu: 0 }]);
        assert!(VegaParams::for_k(13).is_empty());
        assert_eq!(VegaParams::for_k(19), vec![VegaParams { i: 3, mu: 1, nu: 1 }]);
    }
}
