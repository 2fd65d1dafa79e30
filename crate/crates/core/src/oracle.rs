//! Exact `ex(n, s)` by exhaustive enumeration of maximal triangle-free graphs.
//!
//! Triangle-free graphs are grown one vertex at a time by canonical
//! augmentation: a child obtained by joining a new vertex `z` to an
//! independent set of the parent is kept only when `z` lies in the
//! automorphism orbit of the child's canonical deletion vertex, and siblings
//! are deduplicated by canonical form. At the last level only independent
//! sets that make the child maximal triangle-free are tried.
//!
//! An edge-maximum triangle-free graph with `alpha <= s` is maximal
//! triangle-free: a missing edge that closes no triangle could be added
//! without raising `alpha`. Full mode therefore maximises over this stream.

use std::collections::HashSet;
use std::fmt;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_labeling;
use crate::constructions::{andrasfai, vega, VegaParams};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::optimizer::{max_blowup_edges_with, OptimizerConfig};
use crate::report::{SearchReport, Witness};

/// Default hard cap on the order of enumerated graphs.
pub const MAX_ORDER: usize = 14;
/// Largest cap the packed representation supports.
pub const ORDER_LIMIT: usize = 16;
pub const GENERATOR_VERSION: &str = "augment-1";

/// Orders up to this are expanded breadth-first before the parallel split.
const SPLIT_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Full,
    Structured,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Structured => "structured",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "full" => Ok(Mode::Full),
            "structured" => Ok(Mode::Structured),
            other => Err(Error::BadParams(format!("unknown oracle mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub max_order: usize,
    /// Forwarded to the optimizer in structured mode.
    pub optimizer: OptimizerConfig,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_order: MAX_ORDER,
            optimizer: OptimizerConfig::default(),
        }
    }
}

/// Maximal triangle-free graphs on `n` vertices, canonically labelled and
/// sorted by canonical form.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub n: usize,
    pub alpha_cap: Option<usize>,
    pub graphs: Vec<Graph>,
    /// Accepted triangle-free graphs over all levels.
    pub nodes: u64,
    pub seconds: f64,
}

pub fn enumerate_maximal_triangle_free(n: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_with(n, None, MAX_ORDER)?.graphs)
}

/// Enumeration restricted to graphs with `alpha <= alpha_cap`.
pub fn enumerate_with(n: usize, alpha_cap: Option<usize>, max_order: usize) -> Result<Enumeration> {
    let start = Instant::now();
    check_order(n, max_order)?;
    let cap = alpha_cap.unwrap_or(usize::MAX);
    let (finals, nodes) = if n == 0 {
        (vec![Small::EMPTY], 1)
    } else if cap == 0 {
        (Vec::new(), 0)
    } else {
        grow(n, cap)
    };
    let mut graphs: Vec<(Vec<u8>, Graph)> = finals
        .par_iter()
        .map(|g| {
            let form = g.to_graph().canonical_form();
            let canon = Graph::from_graph6(std::str::from_utf8(&form).expect("graph6 is ascii"))
                .expect("canonical form decodes");
            (form, canon)
        })
        .collect();
    graphs.sort_by(|a, b| a.0.cmp(&b.0));
    debug_assert!(graphs.windows(2).all(|w| w[0].0 != w[1].0));
    Ok(Enumeration {
        n,
        alpha_cap,
        graphs: graphs.into_iter().map(|(_, g)| g).collect(),
        nodes,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn check_order(n: usize, max_order: usize) -> Result<()> {
    let limit = max_order.min(ORDER_LIMIT);
    if n > limit {
        return Err(Error::ResourceLimit(format!(
            "exhaustive enumeration is capped at {limit} vertices, got {n}"
        )));
    }
    Ok(())
}

fn grow(n: usize, cap: usize) -> (Vec<Small>, u64) {
    let mut level = vec![Small::single()];
    let mut nodes = 1u64;
    if n == 1 {
        return (level, nodes);
    }
    let split = SPLIT_ORDER.min(n - 1);
    while level[0].n < split {
        level = level.par_iter().flat_map_iter(|g| children(g, false, cap)).collect();
        nodes += level.len() as u64;
        if level.is_empty() {
            return (level, nodes);
        }
    }
    let parts: Vec<(Vec<Small>, u64)> = level
        .par_iter()
        .map(|g| {
            let mut out = Vec::new();
            let count = descend(g, n, cap, &mut out);
            (out, count)
        })
        .collect();
    let mut finals = Vec::new();
    for (out, count) in parts {
        finals.extend(out);
        nodes += count;
    }
    (finals, nodes)
}

fn descend(g: &Small, n: usize, cap: usize, out: &mut Vec<Small>) -> u64 {
    let last = g.n + 1 == n;
    let kids = children(g, last, cap);
    let mut count = kids.len() as u64;
    if last {
        out.extend(kids);
    } else {
        for c in &kids {
            count += descend(c, n, cap, out);
        }
    }
    count
}

/// Dense adjacency for graphs on at most [`ORDER_LIMIT`] vertices.
#[derive(Clone, Copy, Debug)]
struct Small {
    n: usize,
    rows: [u16; ORDER_LIMIT],
}

impl Small {
    const EMPTY: Small = Small {
        n: 0,
        rows: [0; ORDER_LIMIT],
    };

    fn single() -> Small {
        Small { n: 1, ..Small::EMPTY }
    }

    fn all(&self) -> u16 {
        ((1u32 << self.n) - 1) as u16
    }

    fn degree(&self, v: usize) -> u32 {
        self.rows[v].count_ones()
    }

    fn to_graph(&self) -> Graph {
        Graph::from_fn(self.n, |i, j| self.rows[i] >> j & 1 == 1).expect("order within capacity")
    }

    fn extended(&self, set: u16) -> Small {
        let mut c = *self;
        let z = self.n;
        c.n += 1;
        c.rows[z] = set;
        for v in bits(set) {
            c.rows[v] |= 1 << z;
        }
        c
    }
}

fn bits(mut m: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn alpha_small(rows: &[u16], cand: u16) -> usize {
    if cand == 0 {
        return 0;
    }
    let v = cand.trailing_zeros() as usize;
    let rest = cand & !(1 << v);
    if rows[v] & rest == 0 {
        return 1 + alpha_small(rows, rest);
    }
    let with = 1 + alpha_small(rows, rest & !rows[v]);
    if with > rest.count_ones() as usize {
        return with;
    }
    with.max(alpha_small(rows, rest))
}

/// Accepted children of `g`, one per isomorphism class.
fn children(g: &Small, last: bool, cap: usize) -> Vec<Small> {
    let m = g.n;
    let mut required = 0u16;
    if last {
        for u in 0..m {
            for v in u + 1..m {
                if g.rows[u] >> v & 1 == 0 && g.rows[u] & g.rows[v] == 0 {
                    required |= 1 << u | 1 << v;
                }
            }
        }
        if bits(required).any(|v| g.rows[v] & required != 0) {
            return Vec::new();
        }
    }
    let mut sets = Vec::new();
    independent_sets(g, 0, 0, 0, required, last, &mut sets);

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for set in sets {
        if cap != usize::MAX && 1 + alpha_small(&g.rows, g.all() & !set) > cap {
            continue;
        }
        let child = g.extended(set);
        if let Some(form) = accept(&child) {
            if seen.insert(form) {
                out.push(child);
            }
        }
    }
    out
}

fn independent_sets(g: &Small, v: usize, chosen: u16, blocked: u16, required: u16, maximal: bool, out: &mut Vec<u16>) {
    if v == g.n {
        if !maximal || (chosen | blocked) == g.all() {
            out.push(chosen);
        }
        return;
    }
    let bit = 1u16 << v;
    let free = blocked & bit == 0;
    if free {
        independent_sets(g, v + 1, chosen | bit, blocked | g.rows[v], required, maximal, out);
    }
    if required & bit == 0 {
        independent_sets(g, v + 1, chosen, blocked, required, maximal, out);
    }
}

fn key(g: &Small, v: usize) -> (u32, u32) {
    (g.degree(v), bits(g.rows[v]).map(|u| g.degree(u)).sum())
}

/// Canonical form of `child` when its last vertex passes the parent test.
fn accept(child: &Small) -> Option<Vec<u8>> {
    let z = child.n - 1;
    let kz = key(child, z);
    let mut top = Vec::new();
    for v in 0..child.n {
        let kv = key(child, v);
        if kv > kz {
            return None;
        }
        if kv == kz {
            top.push(v);
        }
    }
    let labeling = canonical_labeling(&child.to_graph());
    if top.len() > 1 {
        let chosen = *top
            .iter()
            .min_by_key(|&&v| labeling.position[v])
            .expect("z has the top key");
        if !labeling.same_orbit(z, chosen) {
            return None;
        }
    }
    Some(labeling.form)
}

/// Independence number and edge count of every maximal triangle-free graph
/// on `n` vertices, from a single uncapped enumeration.
#[derive(Clone, Debug)]
pub struct OracleTable {
    pub n: usize,
    pub entries: Vec<TableEntry>,
    pub nodes: u64,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub graph: Graph,
    pub alpha: usize,
    pub edges: usize,
}

impl OracleTable {
    pub fn build(n: usize) -> Result<OracleTable> {
        OracleTable::build_with(n, MAX_ORDER)
    }

    pub fn build_with(n: usize, max_order: usize) -> Result<OracleTable> {
        let e = enumerate_with(n, None, max_order)?;
        let entries = e
            .graphs
            .into_par_iter()
            .map(|graph| TableEntry {
                alpha: graph.independence_number(),
                edges: graph.edge_count(),
                graph,
            })
            .collect();
        Ok(OracleTable {
            n,
            entries,
            nodes: e.nodes,
            seconds: e.seconds,
        })
    }

    /// Full-mode `ex(n, s)`; entries stay in canonical order.
    pub fn exact_ex(&self, s: usize) -> Result<SearchReport> {
        let pool: Vec<&TableEntry> = self.entries.iter().filter(|t| t.alpha <= s).collect();
        let best = pool
            .iter()
            .map(|t| t.edges)
            .max()
            .ok_or_else(|| Error::Infeasible(format!("no graph on {} vertices has alpha <= {s}", self.n)))?;
        Ok(SearchReport {
            optimum: best as i64,
            witnesses: witnesses(pool.into_iter().filter(|t| t.edges == best).map(|t| &t.graph)),
            nodes: self.nodes,
            seconds: self.seconds,
            structured_assumption: false,
        })
    }
}

fn witnesses<'a>(graphs: impl Iterator<Item = &'a Graph>) -> Vec<Witness> {
    graphs
        .map(|g| Witness {
            graph6: g.to_graph6(),
            weights: None,
        })
        .collect()
}

pub fn exact_ex(n: usize, s: usize, mode: Mode) -> Result<SearchReport> {
    exact_ex_with(n, s, mode, &OracleConfig::default())
}

pub fn exact_ex_with(n: usize, s: usize, mode: Mode, config: &OracleConfig) -> Result<SearchReport> {
    match mode {
        Mode::Full => full(n, s, config),
        Mode::Structured => structured(n, s, config),
    }
}

fn full(n: usize, s: usize, config: &OracleConfig) -> Result<SearchReport> {
    let e = enumerate_with(n, Some(s), config.max_order)?;
    let best = e
        .graphs
        .iter()
        .map(Graph::edge_count)
        .max()
        .ok_or_else(|| Error::Infeasible(format!("no graph on {n} vertices has alpha <= {s}")))?;
    Ok(SearchReport {
        optimum: best as i64,
        witnesses: witnesses(e.graphs.iter().filter(|g| g.edge_count() == best)),
        nodes: e.nodes,
        seconds: e.seconds,
        structured_assumption: false,
    })
}

/// Smallest `l >= 1` with `l / (3l - 1) <= s / n`.
fn min_andrasfai_index(n: usize, s: usize) -> usize {
    (1..).find(|&l| l * n <= s * (3 * l - 1)).expect("l n <= s (3l - 1) holds for large l when 3s > n")
}

fn structured(n: usize, s: usize, config: &OracleConfig) -> Result<SearchReport> {
    let start = Instant::now();
    if 3 * s <= n {
        return Err(Error::OutOfRange(format!(
            "structured mode needs s > n/3, got n={n} s={s}"
        )));
    }
    let lo = min_andrasfai_index(n, s);
    let mut bases = Vec::new();
    for l in lo..=(n + 1) / 3 {
        if 3 * l - 1 > 64 {
            break;
        }
        bases.push(andrasfai(l)?);
    }
    for i in 2.. {
        if 3 * i + 5 > n.min(64) {
            break;
        }
        for mu in 0..=1 {
            for nu in 0..=1 {
                let p = VegaParams::new(i, mu, nu)?;
                if p.k() >= lo && p.order() <= n.min(64) {
                    bases.push(vega(i, mu, nu)?);
                }
            }
        }
    }
    let runs: Vec<Result<SearchReport>> = bases
        .par_iter()
        .map(|b| max_blowup_edges_with(b, n as u64, s as u64, &config.optimizer))
        .collect();
    let mut best: Option<i64> = None;
    let mut nodes = 0;
    let mut found = Vec::new();
    for run in runs {
        match run {
            Ok(r) => {
                nodes += r.nodes;
                found.push(r);
            }
            Err(Error::Infeasible(_)) => {}
            Err(e) => return Err(e),
        }
    }
    for r in &found {
        best = best.max(Some(r.optimum));
    }
    let best = best.ok_or_else(|| Error::Infeasible(format!("no structured base fits n={n} s={s}")))?;
    let mut forms: Vec<String> = found
        .iter()
        .filter(|r| r.optimum == best)
        .flat_map(|r| r.witnesses.iter().map(|w| w.graph6.clone()))
        .collect();
    forms.sort();
    forms.dedup();
    Ok(SearchReport {
        optimum: best,
        witnesses: forms
            .into_iter()
            .map(|graph6| Witness { graph6, weights: None })
            .collect(),
        nodes,
        seconds: start.elapsed().as_secs_f64(),
        structured_assumption: true,
    })
}

/// One persisted oracle result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub n: usize,
    pub s: usize,
    pub mode: Mode,
    pub ex: i64,
    pub witness_graph6: Vec<String>,
    pub nodes: u64,
    pub seconds: f64,
    pub version: String,
}

impl OracleRecord {
    pub fn from_report(n: usize, s: usize, mode: Mode, report: &SearchReport) -> OracleRecord {
        OracleRecord {
            n,
            s,
            mode,
            ex: report.optimum,
            witness_graph6: report.witness_graph6().into_iter().map(String::from).collect(),
            nodes: report.nodes,
            seconds: report.seconds,
            version: GENERATOR_VERSION.to_string(),
        }
    }

    pub fn to_report(&self) -> SearchReport {
        SearchReport {
            optimum: self.ex,
            witnesses: self
                .witness_graph6
                .iter()
                .map(|g| Witness {
                    graph6: g.clone(),
                    weights: None,
                })
                .collect(),
            nodes: self.nodes,
            seconds: self.seconds,
            structured_assumption: self.mode == Mode::Structured,
        }
    }
}

/// Append-only newline-delimited JSON store of oracle results.
#[derive(Debug)]
pub struct OracleDb {
    path: PathBuf,
    records: Vec<OracleRecord>,
}

impl OracleDb {
    /// Loads `path`, treating a missing file as empty.
    pub fn open(path: impl AsRef<Path>) -> Result<OracleDb> {
        let path = path.as_ref().to_path_buf();
        let mut records = Vec::new();
        if path.exists() {
            let reader = BufReader::new(std::fs::File::open(&path)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let r: OracleRecord = serde_json::from_str(&line)
                    .map_err(|e| Error::MalformedInput(format!("{}:{}: {e}", path.display(), i + 1)))?;
                records.push(r);
            }
        }
        Ok(OracleDb { path, records })
    }

    pub fn records(&self) -> &[OracleRecord] {
        &self.records
    }

    /// Latest record for the key under the current generator version.
    pub fn get(&self, n: usize, s: usize, mode: Mode) -> Option<&OracleRecord> {
        self.records
            .iter()
            .rev()
            .find(|r| r.n == n && r.s == s && r.mode == mode && r.version == GENERATOR_VERSION)
    }

    pub fn append(&mut self, record: OracleRecord) -> Result<()> {
        let line = serde_json::to_string(&record).map_err(|e| Error::Io(e.to_string()))?;
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{line}")?;
        self.records.push(record);
        Ok(())
    }

    /// Cached result, computing and appending it on a miss.
    pub fn exact_ex(&mut self, n: usize, s: usize, mode: Mode, config: &OracleConfig) -> Result<SearchReport> {
        if let Some(r) = self.get(n, s, mode) {
            return Ok(r.to_report());
        }
        let report = exact_ex_with(n, s, mode, config)?;
        self.append(OracleRecord::from_report(n, s, mode, &report))?;
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_alpha(g: &Graph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|m| {
                (0..n).all(|u| (0..n).all(|v| m >> u & 1 == 0 || m >> v & 1 == 0 || !g.has_edge(u, v)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn small_alpha_agrees_with_brute_force() {
        for n in 1..=9 {
            for g in enumerate_maximal_triangle_free(n).unwrap() {
                let mut s = Small { n, ..Small::EMPTY };
                for (u, v) in g.edges() {
                    s.rows[u] |= 1 << v;
                    s.rows[v] |= 1 << u;
                }
                assert_eq!(alpha_small(&s.rows, s.all()), brute_alpha(&g));
            }
        }
    }

    #[test]
    fn small_orders() {
        let counts: Vec<usize> = (0..=10).map(|n| enumerate_maximal_triangle_free(n).unwrap().len()).collect();
        // n = 3: only P3, since K1 + K2 admits an edge to the isolated vertex.
        assert_eq!(counts, vec![1, 1, 1, 1, 2, 3, 4, 6, 10, 16, 31]);
        for n in 0..=8 {
            for g in enumerate_maximal_triangle_free(n).unwrap() {
                assert_eq!(g.order(), n);
                assert!(g.is_maximal_triangle_free().unwrap());
            }
        }
    }

    #[test]
    fn five_vertices_contain_c5() {
        let c5 = Graph::cycle(5).unwrap().canonical_form();
        assert!(enumerate_maximal_triangle_free(5)
            .unwrap()
            .iter()
            .any(|g| g.canonical_form() == c5));
    }

    #[test]
    fn cap_is_a_hard_limit() {
        assert!(matches!(enumerate_with(15, None, MAX_ORDER), Err(Error::ResourceLimit(_))));
        assert!(matches!(enumerate_with(9, None, 8), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn capped_enumeration_is_a_filter() {
        for n in 4..=10 {
            let all = enumerate_with(n, None, MAX_ORDER).unwrap().graphs;
            for cap in 1..=n {
                let capped = enumerate_with(n, Some(cap), MAX_ORDER).unwrap().graphs;
                let expect: Vec<String> = all
                    .iter()
                    .filter(|g| g.independence_number() <= cap)
                    .map(Graph::to_graph6)
                    .collect();
                let got: Vec<String> = capped.iter().map(Graph::to_graph6).collect();
                assert_eq!(got, expect, "n={n} cap={cap}");
            }
        }
    }

    #[test]
    fn known_values() {
        let r = exact_ex(5, 2, Mode::Full).unwrap();
        assert_eq!(r.optimum, 5);
        let c5 = Graph::cycle(5).unwrap().canonical_form();
        assert_eq!(r.witness_graph6(), vec![std::str::from_utf8(&c5).unwrap()]);
        let r = exact_ex(6, 4, Mode::Full).unwrap();
        assert_eq!(r.optimum, 9);
        let k33 = Graph::complete_bipartite(3, 3).unwrap().canonical_form();
        assert_eq!(r.witness_graph6(), vec![std::str::from_utf8(&k33).unwrap()]);
        assert_eq!(exact_ex(9, 4, Mode::Full).unwrap().optimum, 17);
        assert!(matches!(exact_ex(5, 1, Mode::Full), Err(Error::Infeasible(_))));
    }

    #[test]
    fn table_matches_direct_search() {
        for n in 5..=10 {
            let t = OracleTable::build(n).unwrap();
            let mut last = 0;
            for s in 2..=n {
                let direct = exact_ex(n, s, Mode::Full);
                let tabled = t.exact_ex(s);
                match (direct, tabled) {
                    (Ok(a), Ok(b)) => {
                        assert_eq!(a.optimum, b.optimum);
                        assert_eq!(a.witnesses, b.witnesses);
                        assert!(b.optimum >= last);
                        assert!(b.optimum as usize <= n * s / 2);
                        last = b.optimum;
                    }
                    (Err(_), Err(_)) => {}
                    (a, b) => panic!("n={n} s={s}: {a:?} vs {b:?}"),
                }
            }
        }
    }

    #[test]
    fn structured_mode_is_flagged_and_bounded_by_full() {
        for (n, s) in [(9, 4), (10, 4), (11, 4), (8, 3), (12, 5)] {
            let st = exact_ex(n, s, Mode::Structured).unwrap();
            let full = exact_ex(n, s, Mode::Full).unwrap();
            assert!(st.structured_assumption);
            assert!(!full.structured_assumption);
            assert_eq!(st.optimum, full.optimum, "n={n} s={s}");
        }
    }

    #[test]
    fn db_round_trip() {
        let dir = std::env::temp_dir().join(format!("andrasfai-db-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("oracle.ndjson");
        let _ = std::fs::remove_file(&path);
        let mut db = OracleDb::open(&path).unwrap();
        let a = db.exact_ex(9, 4, Mode::Full, &OracleConfig::default()).unwrap();
        let db2 = OracleDb::open(&path).unwrap();
        assert_eq!(db2.records().len(), 1);
        let rec = db2.get(9, 4, Mode::Full).unwrap();
        assert_eq!(rec.ex, 17);
        assert_eq!(rec.to_report().witnesses, a.witnesses);
        assert!(db2.get(9, 4, Mode::Structured).is_none());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn mode_parses() {
        assert_eq!("full".parse::<Mode>().unwrap(), Mode::Full);
        assert_eq!(Mode::Structured.to_string(), "structured");
        assert!("fast".parse::<Mode>().is_err());
    }
}
