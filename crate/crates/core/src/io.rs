//! File formats: graph6 for 2-graphs, a line-oriented text format for
//! r-graphs (`r n m` header), and `B m n e` for bipartite graphs.

use crate::error::{Error, Result};
use crate::hypergraph::{BipartiteGraph, Host, Hypergraph};

fn graph6_size(bytes: &[u8]) -> Result<(usize, usize)> {
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 line".into()));
    }
    if bytes[0] == 126 {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::Parse("unsupported graph6 size encoding".into()));
        }
        let n = bytes[1..4]
            .iter()
            .try_fold(0usize, |acc, &b| {
                if !(63..=126).contains(&b) {
                    return Err(Error::Parse("bad graph6 size byte".into()));
                }
                Ok((acc << 6) | (b as usize - 63))
            })?;
        Ok((n, 4))
    } else {
        if !(63..=126).contains(&bytes[0]) {
            return Err(Error::Parse("bad graph6 size byte".into()));
        }
        Ok((bytes[0] as usize - 63, 1))
    }
}

/// Parses one graph6 line into a 2-graph.
pub fn parse_graph6(line: &str) -> Result<Hypergraph> {
    let bytes = line.trim().as_bytes();
    let (n, offset) = graph6_size(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() < offset + nbytes {
        return Err(Error::Parse(format!("graph6 line too short for n = {n}")));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[offset + bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::Parse("bad graph6 data byte".into()));
            }
            let val = (byte - 63) >> (5 - bit % 6) & 1;
            if val == 1 {
                edges.push(vec![i, j]);
            }
            bit += 1;
            if bit == nbits {
                break 'outer;
            }
        }
    }
    Hypergraph::new(2, n, edges)
}

/// Writes a 2-graph as one graph6 line.
pub fn write_graph6(g: &Hypergraph) -> Result<String> {
    if g.r() != 2 {
        return Err(Error::InvalidInput("graph6 encodes 2-graphs only".into()));
    }
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    } else {
        return Err(Error::Unsupported("graph6 n > 258047".into()));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u8; nbits.div_ceil(6)];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(&[i, j]) {
                bits[bit / 6] |= 1 << (5 - bit % 6);
            }
            bit += 1;
        }
    }
    out.extend(bits.iter().map(|b| b + 63));
    Ok(String::from_utf8(out).expect("graph6 bytes are printable"))
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

/// Parses the `r n m` hypergraph text format; `#` starts a comment.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header token {t:?}"))))
        .collect::<Result<_>>()?;
    let [r, n, m] = nums[..] else {
        return Err(Error::Parse(format!("header {header:?} is not `r n m`")));
    };
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let e: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad vertex index {t:?}"))))
            .collect::<Result<_>>()?;
        edges.push(e);
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("expected {m} edges, found {}", edges.len())));
    }
    Hypergraph::new(r, n, edges)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.r(), h.n(), h.edge_count());
    for e in h.edges() {
        let toks: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the `B m n e` bipartite text format.
pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let ["B", m, n, e] = toks[..] else {
        return Err(Error::Parse(format!("header {header:?} is not `B m n e`")));
    };
    let parse = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad token {t:?}")));
    let (m, n, e) = (parse(m)?, parse(n)?, parse(e)?);
    let mut edges = Vec::with_capacity(e);
    for line in lines {
        let pair: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
            .collect::<Result<_>>()?;
        let [i, j] = pair[..] else {
            return Err(Error::Parse(format!("edge line {line:?} is not `i j`")));
        };
        edges.push((i, j));
    }
    if edges.len() != e {
        return Err(Error::Parse(format!("expected {e} edges, found {}", edges.len())));
    }
    BipartiteGraph::new(m, n, edges)
}

pub fn write_bipartite(g: &BipartiteGraph) -> String {
    let mut out = format!("B {} {} {}\n", g.left_size(), g.right_size(), g.edge_count());
    for &(i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

/// Detects the format of a graph file body: bipartite (`B` header), the
/// `r n m` hypergraph format, or graph6 (one graph per line, first taken).
pub fn parse_host(text: &str) -> Result<Host> {
    let first = content_lines(text).next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let toks: Vec<&str> = first.split_whitespace().collect();
    if toks.first() == Some(&"B") && toks.len() == 4 {
        return Ok(Host::Bipartite(parse_bipartite(text)?));
    }
    if toks.len() == 3 && toks.iter().all(|t| t.chars().all(|c| c.is_ascii_digit())) {
        return Ok(Host::Hyper(parse_hypergraph(text)?));
    }
    Ok(Host::Hyper(parse_graph6(first)?))
}

pub fn write_host(host: &Host) -> Result<String> {
    Ok(match host {
        Host::Hyper(h) if h.r() == 2 => {
            let mut s = write_graph6(h)?;
            s.push('\n');
            s
        }
        Host::Hyper(h) => write_hypergraph(h),
        Host::Bipartite(g) => write_bipartite(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_values() {
        // K3 is "Bw", P3 (path 0-1-2) is "BW" in canonical labelling terms
        let k3 = Hypergraph::graph(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(write_graph6(&k3).unwrap(), "Bw");
        assert_eq!(parse_graph6("Bw").unwrap(), k3);
    }

    #[test]
    fn graph6_round_trip() {
        let g = Hypergraph::graph(7, &[(0, 3), (1, 2), (2, 6), (4, 5), (0, 6)]).unwrap();
        let s = write_graph6(&g).unwrap();
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn hypergraph_round_trip_with_comments() {
        let h = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let text = format!("# triple system\n{}", write_hypergraph(&h));
        assert_eq!(parse_hypergraph(&text).unwrap(), h);
    }

    #[test]
    fn bipartite_round_trip() {
        let g = BipartiteGraph::new(2, 3, vec![(0, 0), (1, 2)]).unwrap();
        assert_eq!(parse_bipartite(&write_bipartite(&g)).unwrap(), g);
    }

    #[test]
    fn host_detection() {
        assert!(matches!(parse_host("B 1 1 1\n0 0\n").unwrap(), Host::Bipartite(_)));
        assert!(matches!(parse_host("2 3 1\n0 1\n").unwrap(), Host::Hyper(_)));
        assert!(matches!(parse_host("Bw\n").unwrap(), Host::Hyper(_)));
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(parse_graph6("").is_err());
        assert!(parse_hypergraph("2 3\n").is_err());
        assert!(parse_bipartite("B 2 2 1\n").is_err());
    }
}
