//! False-twin reduction: vertices with identical neighbourhoods collapse into
//! one weighted vertex. A graph is a blow-up of its twin quotient, and
//! independence number, chromatic number and isomorphism type all factor
//! through it.

use std::collections::HashMap;

use crate::bits::BitRow;
use crate::graph::Graph;

pub struct TwinQuotient {
    /// Members of each class, ascending; classes ordered by first member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub quotient: Graph,
}

impl TwinQuotient {
    pub fn of(g: &Graph) -> TwinQuotient {
        let n = g.order();
        let mut index: HashMap<BitRow, usize> = HashMap::with_capacity(n);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; n];
        for v in 0..n {
            let c = *index.entry(*g.neighbors(v)).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(v);
            class_of[v] = c;
        }
        let quotient = Graph::from_fn(classes.len(), |c, d| {
            g.has_edge(classes[c][0], classes[d][0])
        })
        .expect("quotient is no larger than the graph");
        TwinQuotient {
            classes,
            class_of,
            quotient,
        }
    }

    pub fn weights(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.len() as u64).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }
}
