//! The conjectured extremal families: blow-ups of `Γ_k` (family `G`) and of
//! Vega graphs (family `H`), plus membership tests.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::blowup::{blow_up, blowup_alpha, WeightVector};
use crate::constructions::{andrasfai, omega, vega_f, vega_g, VegaParams};
use crate::error::Result;
use crate::extremal::{class_size_bounds, lambda, pieces_containing};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    G,
    H,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::G => "G",
            Family::H => "H",
        })
    }
}

/// Which rule of the Vega family produced a member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    /// Balanced regular blow-up at the critical point.
    A,
    /// `(3s-n) ω_{0ν} - λ f`.
    B,
    /// `(3s-n) ω_{μ0} - λ g`.
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberParams {
    pub family: Family,
    pub k: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<Clause>,
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub graph: Graph,
    pub weights: WeightVector,
    pub params: MemberParams,
    pub n: u64,
    pub s: u64,
}

impl FamilyMember {
    pub fn base(&self) -> &Graph {
        self.weights.base()
    }

    /// JSON record of the blow-up data accompanying the graph6 export.
    pub fn sidecar(&self) -> serde_json::Value {
        let labels: Vec<String> = (0..self.base().order())
            .map(|v| self.base().label(v).map_or_else(|| format!("v{v}"), |l| l.to_string()))
            .collect();
        json!({
            "n": self.n,
            "s": self.s,
            "params": self.params,
            "base_graph6": self.base().to_graph6(),
            "base_labels": labels,
            "weights": self.weights.weights(),
            "graph6": self.graph.to_graph6(),
            "edges": self.graph.edge_count(),
        })
    }
}

fn member(weights: WeightVector, params: MemberParams, n: u64, s: u64) -> Result<FamilyMember> {
    Ok(FamilyMember {
        graph: blow_up(&weights)?,
        weights,
        params,
        n,
        s,
    })
}

fn dedupe(members: Vec<FamilyMember>) -> Vec<FamilyMember> {
    let mut seen = HashSet::new();
    members
        .into_iter()
        .filter(|m| seen.insert(m.graph.canonical_form()))
        .collect()
}

fn in_window(n: u64, s: u64, k: u64) -> bool {
    k >= 2 && lambda(n, s, k) >= 0 && (3 * k - 4) * s <= (k - 1) * n
}

/// Blow-ups of `Γ_k` with `v_0, v_k` of size `(k-1)n - (3k-4)s`, `v_{2k-1}, v_{2k}`
/// of sizes `a <= b` summing to `(k-2)n - (3k-7)s`, all others `3s - n`.
/// Empty outside the window `kn/(3k-1) <= s <= (k-1)n/(3k-4)`.
pub fn family_g(n: u64, s: u64, k: u64) -> Vec<FamilyMember> {
    if !in_window(n, s, k) {
        return Vec::new();
    }
    let Ok(base) = andrasfai(k as usize) else {
        return Vec::new();
    };
    let (lower, upper) = class_size_bounds(n, s, k);
    let (ni, si, ki) = (n as i64, s as i64, k as i64);
    let sum = (ki - 2) * ni - (3 * ki - 7) * si;
    let k = k as usize;
    let mut out = Vec::new();
    for a in lower.max(sum - upper)..=sum / 2 {
        let b = sum - a;
        let mut w = vec![upper; 3 * k - 1];
        w[0] = lower;
        w[k] = lower;
        w[2 * k - 1] = a;
        w[2 * k] = b;
        let params = MemberParams {
            family: Family::G,
            k: k as u64,
            i: None,
            mu: None,
            nu: None,
            a: Some(a),
            b: Some(b),
            clause: None,
        };
        let weights = WeightVector::new(base.clone(), w).expect("length matches");
        out.push(member(weights, params, n, s).expect("window keeps weights nonnegative"));
    }
    dedupe(out)
}

/// Blow-ups of Vega graphs with `9i - (6 + mu + nu) = k`, for `k >= 10`.
/// Members with a negative class size are skipped with a warning.
pub fn family_h(n: u64, s: u64, k: u64) -> Vec<FamilyMember> {
    if k < 10 || !in_window(n, s, k) {
        return Vec::new();
    }
    let lam = lambda(n, s, k);
    let unit = 3 * s as i64 - n as i64;
    let mut out = Vec::new();
    for p in VegaParams::for_k(k as usize) {
        let mut candidates: Vec<(Clause, Result<WeightVector>)> = Vec::new();
        if lam == 0 {
            candidates.push((Clause::A, omega(p.i, p.mu, p.nu).map(|w| w.scaled(unit))));
        } else {
            if p.mu == 0 {
                let w = omega(p.i, 0, p.nu).and_then(|w| w.scaled(unit).combine(1, &vega_f(p.i)?, -lam));
                candidates.push((Clause::B, w));
            }
            if p.nu == 0 {
                let w = omega(p.i, p.mu, 0).and_then(|w| w.scaled(unit).combine(1, &vega_g(p.i)?, -lam));
                candidates.push((Clause::C, w));
            }
        }
        for (clause, w) in candidates {
            let Ok(w) = w else { continue };
            if let Err(e) = w.check_nonnegative() {
                log::warn!("skipping H member (k={k}, i={}, clause {clause:?}): {e}", p.i);
                continue;
            }
            let params = MemberParams {
                family: Family::H,
                k,
                i: Some(p.i),
                mu: Some(p.mu),
                nu: Some(p.nu),
                a: None,
                b: None,
                clause: Some(clause),
            };
            if let Ok(m) = member(w, params, n, s) {
                out.push(m);
            }
        }
    }
    dedupe(out)
}

/// Outcome of [`classify_extremal`].
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub n: u64,
    pub s: u64,
    pub edges: usize,
    pub triangle_free: bool,
    pub alpha: usize,
    /// Every family member isomorphic to the input.
    pub matches: Vec<MemberParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected: Option<String>,
}

impl Classification {
    pub fn verdict(&self) -> String {
        if let Some(r) = &self.rejected {
            return format!("rejected: {r}");
        }
        if self.matches.is_empty() {
            return "neither".into();
        }
        let parts: Vec<String> = self
            .matches
            .iter()
            .map(|m| match m.family {
                Family::G => format!("in G (k={}, a={}, b={})", m.k, m.a.unwrap(), m.b.unwrap()),
                Family::H => format!(
                    "in H (k={}, i={}, mu={}, nu={}, clause {:?})",
                    m.k,
                    m.i.unwrap(),
                    m.mu.unwrap(),
                    m.nu.unwrap(),
                    m.clause.unwrap()
                ),
            })
            .collect();
        parts.join("; ")
    }

    pub fn in_family(&self, family: Family) -> bool {
        self.matches.iter().any(|m| m.family == family)
    }
}

/// Compare `g` against both families for every `k` whose window holds `s`.
/// Graphs with a triangle, with `alpha > s` or with the wrong order are
/// rejected before any comparison.
pub fn classify_extremal(g: &Graph, n: u64, s: u64) -> Classification {
    let mut out = Classification {
        n,
        s,
        edges: g.edge_count(),
        triangle_free: g.is_triangle_free(),
        alpha: g.independence_number(),
        matches: Vec::new(),
        rejected: None,
    };
    if g.order() as u64 != n {
        out.rejected = Some(format!("graph has {} vertices, expected {n}", g.order()));
    } else if !out.triangle_free {
        out.rejected = Some("graph contains a triangle".into());
    } else if out.alpha as u64 > s {
        out.rejected = Some(format!("independence number {} exceeds {s}", out.alpha));
    }
    if out.rejected.is_some() {
        return out;
    }
    let form = g.canonical_form();
    for k in pieces_containing(n, s) {
        for m in family_g(n, s, k).into_iter().chain(family_h(n, s, k)) {
            if m.graph.canonical_form() == form {
                out.matches.push(m.params);
            }
        }
    }
    out
}

/// Sanity data for a member: order, edge count and `alpha` of the blow-up.
pub fn member_profile(m: &FamilyMember) -> (usize, usize, i64) {
    (
        m.graph.order(),
        m.graph.edge_count(),
        blowup_alpha(&m.weights).expect("members have nonnegative weights"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::vega_regular_blowup;
    use crate::extremal::g_k;

    #[test]
    fn critical_point_gives_balanced_blow_up() {
        let f = family_g(10, 4, 2);
        assert_eq!(f.len(), 1);
        let balanced = blow_up(&WeightVector::uniform(andrasfai(2).unwrap(), 2)).unwrap();
        assert!(f[0].graph.is_isomorphic(&balanced));
    }

    #[test]
    fn interior_example() {
        let f = family_g(9, 4, 2);
        let ws: Vec<Vec<i64>> = f.iter().map(|m| m.weights.weights().to_vec()).collect();
        assert_eq!(ws, vec![vec![1, 3, 1, 1, 3], vec![1, 3, 1, 2, 2]]);
        for m in &f {
            assert_eq!(member_profile(m), (9, 17, 4));
        }
    }

    #[test]
    fn right_endpoint_is_previous_balanced_blow_up() {
        // s = (k-1)n/(3k-4): n = 10, s = 4 for k = 3
        let f = family_g(10, 4, 3);
        assert_eq!(f.len(), 1);
        let balanced = blow_up(&WeightVector::uniform(andrasfai(2).unwrap(), 2)).unwrap();
        assert!(f[0].graph.is_isomorphic(&balanced));
    }

    #[test]
    fn out_of_window_is_empty() {
        assert!(family_g(9, 3, 2).is_empty());
        assert!(family_g(9, 5, 2).is_empty());
        assert!(family_h(29, 10, 9).is_empty());
        assert!(family_h(100, 30, 13).is_empty());
    }

    #[test]
    fn counts_and_edges_on_grid() {
        for k in 2..=4u64 {
            for n in 1..=30u64 {
                for s in 1..=n {
                    if !in_window(n, s, k) {
                        continue;
                    }
                    let f = family_g(n, s, k);
                    let lam = lambda(n, s, k);
                    let interior = lam > 0 && (3 * k - 4) * s < (k - 1) * n;
                    if interior {
                        assert_eq!(f.len() as i64, lam / 2 + 1, "n={n} s={s} k={k}");
                    }
                    for m in &f {
                        let (order, e, alpha) = member_profile(m);
                        assert_eq!(order as u64, n);
                        assert_eq!(e as i128, *g_k(n, s, k).numer());
                        assert!(alpha <= s as i64);
                    }
                }
            }
        }
    }

    #[test]
    fn haeggkvist_is_the_only_h_member() {
        let f = family_h(29, 10, 10);
        assert_eq!(f.len(), 1);
        let m = &f[0];
        assert_eq!(m.graph.order(), 29);
        assert_eq!(m.graph.regularity(), Some(10));
        assert_eq!(m.graph.edge_count(), 145);
        assert!(m.graph.is_isomorphic(&vega_regular_blowup(2, 1, 1).unwrap()));
        assert_eq!(m.params.clause, Some(Clause::A));
    }

    #[test]
    fn two_members_for_k_congruent_two_or_three() {
        for (n, s, k) in [(115u64, 39u64, 20u64), (121, 41, 21)] {
            assert!(lambda(n, s, k) > 0 && (3 * k - 4) * s < (k - 1) * n);
            let f = family_h(n, s, k);
            assert_eq!(f.len(), 2, "n={n} s={s} k={k}");
            let clauses: Vec<_> = f.iter().map(|m| m.params.clause.unwrap()).collect();
            assert_eq!(clauses, vec![Clause::B, Clause::C]);
            for m in &f {
                assert_eq!(m.graph.order() as u64, n);
                assert_eq!(m.graph.edge_count() as i128, *g_k(n, s, k).numer());
                assert!(blowup_alpha(&m.weights).unwrap() <= s as i64);
            }
        }
        // for i = 2 the two clauses give isomorphic graphs, as do both clauses
        // at the right end of any window
        for (n, s, k) in [(61u64, 21u64, 11u64), (67, 23, 12), (29, 10, 11), (32, 11, 12)] {
            assert_eq!(family_h(n, s, k).len(), 1);
        }
        // k = 11 at its critical point: clause (a) for both (0,1) and (1,0)
        let f = family_h(32, 11, 11);
        assert!(!f.is_empty() && f.len() <= 2);
        assert!(f.iter().all(|m| m.params.clause == Some(Clause::A)));
        assert!(f.iter().all(|m| m.graph.regularity() == Some(11)));
    }

    #[test]
    fn classification() {
        let c52 = blow_up(&WeightVector::uniform(andrasfai(2).unwrap(), 2)).unwrap();
        let c = classify_extremal(&c52, 10, 4);
        assert!(c.in_family(Family::G));
        assert!(c.matches.iter().any(|m| m.k == 2));
        let h = vega_regular_blowup(2, 1, 1).unwrap();
        let c = classify_extremal(&h, 29, 10);
        assert!(c.in_family(Family::H));
        let k45 = Graph::complete_bipartite(4, 5).unwrap();
        let c = classify_extremal(&k45, 9, 4);
        assert!(c.rejected.is_some() && c.matches.is_empty());
        assert!(c.verdict().starts_with("rejected"));
    }

    #[test]
    fn sidecar_has_blow_up_data() {
        let m = &family_g(9, 4, 2)[0];
        let j = m.sidecar();
        assert_eq!(j["params"]["k"], 2);
        assert_eq!(j["weights"], json!([1, 3, 1, 1, 3]));
        assert_eq!(j["base_labels"][0], "v0");
    }
}
