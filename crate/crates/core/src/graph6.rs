//! graph6 encoding: an order prefix followed by the upper triangle of the
//! adjacency matrix, column by column, packed six bits per printable byte.

use crate::error::Graph6Error;
use crate::graph::Graph;

const BIAS: u8 = 63;
const LONG_ORDER: u8 = 126;
const MAX_SHORT: usize = 62;
const MAX_MEDIUM: usize = 258_047;
const HEADER: &str = ">>graph6<<";

fn push_order(out: &mut Vec<u8>, n: usize) -> Result<(), Graph6Error> {
    if n <= MAX_SHORT {
        out.push(n as u8 + BIAS);
    } else if n <= MAX_MEDIUM {
        out.push(LONG_ORDER);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    Ok(())
}

/// Encode `g` as a single graph6 line without the trailing newline.
///
/// Panics if the order exceeds 258047, the largest order with a compact
/// graph6 prefix; such a graph would not fit in memory as a bitset anyway.
pub fn format_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_order(&mut out, n).expect("graph order exceeds graph6 range");

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decode one graph6 line. A trailing newline and the optional `>>graph6<<`
/// header are accepted.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.strip_suffix('\n').unwrap_or(line);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some((offset, &byte)) = bytes
        .iter()
        .enumerate()
        .find(|(_, &b)| !(BIAS..=LONG_ORDER).contains(&b))
    {
        return Err(Graph6Error::MalformedByte { offset, byte });
    }

    let (n, body) = if bytes[0] != LONG_ORDER {
        ((bytes[0] - BIAS) as usize, &bytes[1..])
    } else {
        if bytes.len() > 1 && bytes[1] == LONG_ORDER {
            return Err(Graph6Error::OrderTooLarge(MAX_MEDIUM + 1));
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 4,
                found: bytes.len(),
            });
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        (n, &bytes[4..])
    };

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() < need {
        return Err(Graph6Error::Truncated {
            expected: bytes.len() - body.len() + need,
            found: bytes.len(),
        });
    }
    if body.len() > need {
        return Err(Graph6Error::TrailingData(body.len() - need));
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6] - BIAS;
            if chunk >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[need - 1] - BIAS;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(g)
}

impl Graph {
    pub fn from_graph6(line: &str) -> Result<Graph, Graph6Error> {
        parse_graph6(line)
    }

    pub fn to_graph6(&self) -> String {
        format_graph6(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_and_empty() {
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph6("C?\n").unwrap(), Graph::empty(4));
        assert_eq!(format_graph6(&Graph::complete(4)), "C~");
        assert_eq!(format_graph6(&Graph::empty(0)), "?");
        assert_eq!(parse_graph6("?").unwrap().order(), 0);
    }

    #[test]
    fn header_is_optional() {
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), Graph::complete(4));
    }

    #[test]
    fn medium_order_prefix() {
        let g = Graph::complete(63);
        let s = format_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn error_paths() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(
            parse_graph6("C "),
            Err(Graph6Error::MalformedByte { offset: 1, byte: b' ' })
        );
        assert!(matches!(parse_graph6("E"), Err(Graph6Error::Truncated { .. })));
        assert_eq!(parse_graph6("C~~"), Err(Graph6Error::TrailingData(1)));
        // n = 3 uses 3 bits; the low three bits of the data byte are padding
        assert_eq!(parse_graph6("B@"), Err(Graph6Error::NonZeroPadding));
        assert!(matches!(parse_graph6("~?"), Err(Graph6Error::Truncated { .. })));
    }
}
