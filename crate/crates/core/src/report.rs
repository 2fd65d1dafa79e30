//! Serializable search results shared by the optimizer and the oracle.

use serde::{Deserialize, Serialize};

/// One extremal graph, in canonical graph6 form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub graph6: String,
    /// Class sizes over the base graph, for blow-up searches.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub optimum: i64,
    /// Sorted by canonical form, one per isomorphism class.
    pub witnesses: Vec<Witness>,
    pub nodes: u64,
    pub seconds: f64,
    /// Set when the value assumes extremal graphs are blow-ups of known bases.
    #[serde(default)]
    pub structured_assumption: bool,
}

impl SearchReport {
    pub fn witness_graph6(&self) -> Vec<&str> {
        self.witnesses.iter().map(|w| w.graph6.as_str()).collect()
    }
}
