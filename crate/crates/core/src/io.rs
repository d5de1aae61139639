//! graph6 / sparse6 (McKay's formats) and a plain adjacency-list text format.

use crate::graph::{Graph, GraphError};

fn parse_err(offset: usize, msg: &str) -> GraphError {
    GraphError::Parse(format!("byte {offset}: {msg}"))
}

/// Reads the size field N(n); returns (n, bytes consumed).
fn read_size(bytes: &[u8], at: usize) -> Result<(usize, usize), GraphError> {
    let b = *bytes.get(at).ok_or_else(|| parse_err(at, "missing size field"))?;
    if b == 126 {
        let b2 = *bytes.get(at + 1).ok_or_else(|| parse_err(at + 1, "truncated size field"))?;
        if b2 == 126 {
            let mut n: usize = 0;
            for i in 0..6 {
                let c = *bytes
                    .get(at + 2 + i)
                    .ok_or_else(|| parse_err(at + 2 + i, "truncated size field"))?;
                if !(63..=126).contains(&c) {
                    return Err(parse_err(at + 2 + i, "size byte out of range"));
                }
                n = (n << 6) | (c - 63) as usize;
            }
            Ok((n, 8))
        } else {
            let mut n: usize = 0;
            for i in 0..3 {
                let c = *bytes
                    .get(at + 1 + i)
                    .ok_or_else(|| parse_err(at + 1 + i, "truncated size field"))?;
                if !(63..=126).contains(&c) {
                    return Err(parse_err(at + 1 + i, "size byte out of range"));
                }
                n = (n << 6) | (c - 63) as usize;
            }
            Ok((n, 4))
        }
    } else if (63..126).contains(&b) {
        Ok(((b - 63) as usize, 1))
    } else {
        Err(parse_err(at, "illegal size byte (must be 63..=126)"))
    }
}

fn write_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    start: usize,
    pos: usize, // bit position
}

impl<'a> BitReader<'a> {
    fn new(bytes: &'a [u8], start: usize) -> Result<Self, GraphError> {
        for (i, &b) in bytes.iter().enumerate().skip(start) {
            if !(63..=126).contains(&b) {
                return Err(parse_err(i, "illegal data byte (must be 63..=126)"));
            }
        }
        Ok(BitReader { bytes, start, pos: 0 })
    }

    fn remaining(&self) -> usize {
        (self.bytes.len() - self.start) * 6 - self.pos
    }

    fn bit(&mut self) -> usize {
        let byte = self.bytes[self.start + self.pos / 6] - 63;
        let bit = (byte >> (5 - self.pos % 6)) & 1;
        self.pos += 1;
        bit as usize
    }

    fn bits(&mut self, k: usize) -> usize {
        let mut x = 0;
        for _ in 0..k {
            x = (x << 1) | self.bit();
        }
        x
    }
}

struct BitWriter {
    bits: Vec<bool>,
}

impl BitWriter {
    fn new() -> Self {
        BitWriter { bits: Vec::new() }
    }

    fn push(&mut self, b: bool) {
        self.bits.push(b);
    }

    fn push_bits(&mut self, x: usize, k: usize) {
        for i in (0..k).rev() {
            self.bits.push((x >> i) & 1 == 1);
        }
    }

    fn finish_into(self, out: &mut Vec<u8>, pad_with: &[bool]) {
        let mut bits = self.bits;
        let mut pad_iter = pad_with.iter().copied().chain(std::iter::repeat(true));
        while bits.len() % 6 != 0 {
            bits.push(pad_iter.next().unwrap());
        }
        for chunk in bits.chunks(6) {
            let mut byte = 0u8;
            for &b in chunk {
                byte = (byte << 1) | b as u8;
            }
            out.push(63 + byte);
        }
    }
}

/// Parses a graph6 string (standard short and long size forms). An optional
/// `>>graph6<<` header is accepted.
pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(0, "empty graph6 string"));
    }
    let (n, header) = read_size(bytes, 0)?;
    let mut reader = BitReader::new(bytes, header)?;
    let need = n * n.saturating_sub(1) / 2;
    if reader.remaining() < need {
        return Err(parse_err(bytes.len(), "graph6 string too short for vertex count"));
    }
    if reader.remaining() >= need + 6 {
        return Err(parse_err(header + (need + 5) / 6, "trailing garbage after graph6 data"));
    }
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if reader.bit() == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Encodes a graph in graph6 format.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    write_size(&mut out, n);
    let mut w = BitWriter::new();
    for v in 1..n {
        for u in 0..v {
            w.push(g.has_edge(u, v));
        }
    }
    // graph6 pads with zero bits
    w.finish_into(&mut out, &[false, false, false, false, false]);
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses a sparse6 string (leading `:`; optional `>>sparse6<<` header).
pub fn from_sparse6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>sparse6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.first() != Some(&b':') {
        return Err(parse_err(0, "sparse6 string must start with ':'"));
    }
    let (n, header) = read_size(bytes, 1)?;
    let k = bits_for(n);
    let mut reader = BitReader::new(bytes, 1 + header)?;
    let mut edges = Vec::new();
    let mut v: usize = 0;
    while reader.remaining() >= 1 + k {
        let b = reader.bit();
        let x = reader.bits(k);
        if b == 1 {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            edges.push((x, v));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, &edges)
}

/// Encodes a graph in sparse6 format.
pub fn to_sparse6(g: &Graph) -> String {
    let n = g.n();
    let k = bits_for(n);
    let mut out = vec![b':'];
    write_size(&mut out, n);
    let mut w = BitWriter::new();
    let mut cur: usize = 0;
    // sparse6 wants edges sorted by (v, u) with u <= v
    let mut edges = g.edges();
    edges.sort_unstable_by_key(|&(u, v)| (v, u));
    for (u, v) in edges {
        if v == cur {
            w.push(false);
            w.push_bits(u, k);
        } else if v == cur + 1 {
            cur += 1;
            w.push(true);
            w.push_bits(u, k);
        } else {
            cur = v;
            w.push(true);
            w.push_bits(v, k);
            w.push(false);
            w.push_bits(u, k);
        }
    }
    // Padding is with 1s, except that for n = 2^k with vertex n-2 incident to
    // an edge and vertex n-1 isolated, a single leading 0 avoids the padding
    // being read back as an extra edge.
    let needs_zero_first = k < 6
        && n == (1usize << k)
        && n >= 2
        && g.degree(n - 2) > 0
        && g.degree(n - 1) == 0
        && w.bits.len() % 6 != 0;
    let pad: &[bool] = if needs_zero_first { &[false] } else { &[] };
    w.finish_into(&mut out, pad);
    String::from_utf8(out).expect("sparse6 bytes are ASCII")
}

fn bits_for(n: usize) -> usize {
    // number of bits needed for n-1, at least 1
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

/// Auto-detects graph6 vs sparse6 by the leading ':'.
pub fn from_g6_or_s6(text: &str) -> Result<Graph, GraphError> {
    let t = text.trim();
    if t.starts_with(':') || t.starts_with(">>sparse6<<") {
        from_sparse6(t)
    } else {
        from_graph6(t)
    }
}

/// Parses the adjacency-list text format: first line `n`, then one `u v`
/// pair per line, 0-based.
pub fn from_adjacency_text(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| GraphError::Parse("missing vertex count line".into()))?
        .parse()
        .map_err(|e| GraphError::Parse(format!("bad vertex count: {e}")))?;
    let mut edges = Vec::new();
    for (i, line) in lines.enumerate() {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .ok_or_else(|| GraphError::Parse(format!("edge line {}: missing endpoint", i + 2)))?
            .parse()
            .map_err(|e| GraphError::Parse(format!("edge line {}: {e}", i + 2)))?;
        let v: usize = it
            .next()
            .ok_or_else(|| GraphError::Parse(format!("edge line {}: missing endpoint", i + 2)))?
            .parse()
            .map_err(|e| GraphError::Parse(format!("edge line {}: {e}", i + 2)))?;
        if it.next().is_some() {
            return Err(GraphError::Parse(format!("edge line {}: trailing tokens", i + 2)));
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges)
}

/// Writes the adjacency-list text format.
pub fn to_adjacency_text(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn k5_graph6_literal() {
        assert_eq!(to_graph6(&complete(5)), "D~{");
        let g = from_graph6("D~{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn k1_is_at_sign() {
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        let g = from_graph6("@").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn illegal_bytes_are_rejected() {
        assert!(from_graph6("D~\u{1f}").is_err());
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D~{Z").is_err()); // trailing garbage
    }

    #[test]
    fn long_form_round_trip() {
        let c63 =
            Graph::from_edges(63, &(0..63).map(|i| (i, (i + 1) % 63)).collect::<Vec<_>>()).unwrap();
        let s = to_graph6(&c63);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(from_graph6(&s).unwrap(), c63);
    }

    #[test]
    fn sparse6_round_trip_petersen_shape() {
        let pet = Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        let s = to_sparse6(&pet);
        assert!(s.starts_with(':'));
        assert_eq!(from_sparse6(&s).unwrap(), pet);
    }

    #[test]
    fn sparse6_padding_edge_case() {
        // n = 4: a graph where vertex 2 has an edge and vertex 3 does not.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let s = to_sparse6(&g);
        assert_eq!(from_sparse6(&s).unwrap(), g);
        // all n=8 graphs with isolated last vertex
        let h = Graph::from_edges(8, &[(0, 6), (5, 6), (1, 2)]).unwrap();
        assert_eq!(from_sparse6(&to_sparse6(&h)).unwrap(), h);
    }

    #[test]
    fn adjacency_text_round_trip() {
        let g = complete(4);
        let text = to_adjacency_text(&g);
        assert_eq!(from_adjacency_text(&text).unwrap(), g);
        assert!(from_adjacency_text("3\n0 1 junk\n").is_err());
        assert!(from_adjacency_text("").is_err());
    }
}
