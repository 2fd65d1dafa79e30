//! graph6 text encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column order, packed six bits per printable byte.

use crate::bits::CAPACITY;
use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + OFFSET);
    }
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn sixbits(b: u8) -> Result<u64> {
    if (OFFSET..=126).contains(&b) {
        Ok((b - OFFSET) as u64)
    } else {
        Err(Error::MalformedInput(format!("byte {b:#04x} outside the graph6 range")))
    }
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize)> {
    match bytes {
        [] => Err(Error::MalformedInput("empty graph6 line".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::MalformedInput("truncated size header".into()));
            }
            let mut n = 0u64;
            for &b in &rest[..6] {
                n = (n << 6) | sixbits(b)?;
            }
            Ok((n as usize, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::MalformedInput("truncated size header".into()));
            }
            let mut n = 0u64;
            for &b in &rest[..3] {
                n = (n << 6) | sixbits(b)?;
            }
            Ok((n as usize, 4))
        }
        [b, ..] => Ok((sixbits(*b)? as usize, 1)),
    }
}

pub fn decode(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let (n, header_len) = decode_size(bytes)?;
    if n > CAPACITY {
        return Err(Error::CapacityExceeded(n));
    }
    let body = &bytes[header_len..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::MalformedInput(format!(
            "expected {expected} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let word = sixbits(body[k / 6])?;
            if (word >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        let last = sixbits(body[expected - 1])?;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::MalformedInput("non-zero padding bits".into()));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(encode(&Graph::cycle(5).unwrap()), "Dhc");
        // a-c, a-e, b-d, d-e from petgraph's fixture
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn long_header_round_trips() {
        let g = Graph::cycle(100).unwrap();
        let s = encode(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert!(decode(&s).unwrap().same_adjacency(&g));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(decode(""), Err(Error::MalformedInput(_))));
        assert!(matches!(decode("D"), Err(Error::MalformedInput(_))));
        assert!(matches!(decode("Dhcc"), Err(Error::MalformedInput(_))));
        assert!(matches!(decode("A\u{7f}"), Err(Error::MalformedInput(_))));
        assert!(matches!(decode("~"), Err(Error::MalformedInput(_))));
        // K2 with a padding bit set
        assert!(matches!(decode("A`"), Err(Error::MalformedInput(_))));
        assert!(decode(">>graph6<<A_").is_ok());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=62).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
                move |bits| {
                    let mut it = bits.into_iter();
                    Graph::from_fn(n, |_, _| it.next().unwrap()).unwrap()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(g in arb_graph()) {
            let line = encode(&g);
            let back = decode(&line).unwrap();
            prop_assert!(back.same_adjacency(&g));
        }
    }
}
