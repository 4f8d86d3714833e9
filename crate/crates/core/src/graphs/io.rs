//! Text formats: graph6 and a plain edge list.

use super::Graph;
use crate::error::{Error, Result};

impl Graph {
    /// Standard graph6 encoding (`n <= 62` uses the one-byte size prefix).
    pub fn to_graph6(&self) -> String {
        let n = self.n();
        let mut out = String::new();
        if n <= 62 {
            out.push((n as u8 + 63) as char);
        } else {
            out.push('~');
            for shift in [12, 6, 0] {
                out.push((((n >> shift) & 63) as u8 + 63) as char);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = acc << 1 | (self.adjacency()[i] >> j & 1) as u8;
                filled += 1;
                if filled == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((acc << (6 - filled)) + 63) as char);
        }
        out
    }

    pub fn from_graph6(s: &str) -> Result<Graph> {
        let s = s.trim();
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes: Vec<u8> = s.bytes().collect();
        if bytes.is_empty() {
            return Err(Error::Parse("empty graph6 string".into()));
        }
        if let Some(&bad) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
            return Err(Error::Parse(format!("byte {bad} is not valid graph6")));
        }
        let (n, rest) = if bytes[0] != 126 {
            ((bytes[0] - 63) as usize, &bytes[1..])
        } else if bytes.len() >= 4 && bytes[1] != 126 {
            let n = bytes[1..4].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
            (n, &bytes[4..])
        } else {
            return Err(Error::Parse("graph6 sizes above 258047 are not supported".into()));
        };
        let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
        if rest.len() != needed {
            return Err(Error::Parse(format!("graph6 body for n={n} needs {needed} bytes, got {}", rest.len())));
        }
        let mut g = Graph::empty(n)?;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = rest[k / 6] - 63;
                if byte >> (5 - k % 6) & 1 == 1 {
                    g.set_edge(i, j);
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Edge-list text: first non-comment line is `n`, then one `i j` pair per
    /// line (1-based). `#` starts a comment.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (lineno, first) = lines.next().ok_or_else(|| Error::Parse("edge list is empty".into()))?;
        let n: usize = first.parse().map_err(|_| Error::Parse(format!("line {lineno}: expected vertex count, got `{first}`")))?;
        let mut pairs = Vec::new();
        for (lineno, line) in lines {
            let nums: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("line {lineno}: bad vertex `{s}`")));
            match nums.as_slice() {
                [a, b] => pairs.push((parse(a)?, parse(b)?)),
                _ => return Err(Error::Parse(format!("line {lineno}: expected `i j`, got `{line}`"))),
            }
        }
        Graph::from_edges(n, &pairs)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (i, j) in self.edges() {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_strings() {
        // petgraph's example: edges a-c, a-e, b-d, d-e on 5 vertices
        let g = Graph::from_edges(5, &[(1, 3), (1, 5), (2, 4), (4, 5)]).unwrap();
        assert_eq!(g.to_graph6(), "DQc");
        assert_eq!(Graph::complete(4).unwrap().to_graph6(), "C~");
        assert_eq!(Graph::empty(1).unwrap().to_graph6(), "@");
        assert_eq!(Graph::empty(0).unwrap().to_graph6(), "?");
        assert_eq!(Graph::from_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn graph6_rejects_bad_lengths() {
        assert!(Graph::from_graph6("D").is_err());
        assert!(Graph::from_graph6("").is_err());
    }

    #[test]
    fn edge_list_parse() {
        let g = Graph::from_edge_list("# triangle\n3\n1 2\n2 3 # closing\n\n3 1\n").unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(Graph::from_edge_list("3\n1 1\n").is_err());
        assert!(Graph::from_edge_list("3\n1 2 3\n").is_err());
    }
}
