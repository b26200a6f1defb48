use std::collections::BTreeSet;
use std::fmt;

use crate::error::{CertificateError, GraphError};
use crate::graph::{find_embedding, AdjacencyGraph, GraphSpec};

/// A red/blue colouring of `K_N`, stored as its red edges; every other pair
/// is blue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoringCertificate {
    n: usize,
    red: Vec<(usize, usize)>,
}

impl ColoringCertificate {
    /// Validates and normalizes the edge list (each edge as `(u, v)` with
    /// `u < v`, sorted).
    pub fn new(n: usize, red_edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, CertificateError> {
        if n > AdjacencyGraph::MAX_VERTICES {
            return Err(CertificateError::TooLarge(n));
        }
        let mut seen = BTreeSet::new();
        for (u, v) in red_edges {
            if u >= n || v >= n {
                return Err(CertificateError::OutOfRange(u, v, n));
            }
            if u == v {
                return Err(CertificateError::Loop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(CertificateError::Duplicate(u, v));
            }
        }
        Ok(ColoringCertificate {
            n,
            red: seen.into_iter().collect(),
        })
    }

    pub fn from_red_graph(red: &AdjacencyGraph) -> Self {
        ColoringCertificate {
            n: red.vertex_count(),
            red: red.edges().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn red_edges(&self) -> &[(usize, usize)] {
        &self.red
    }

    pub fn red_graph(&self) -> AdjacencyGraph {
        AdjacencyGraph::from_edges(self.n, self.red.iter().copied())
    }

    pub fn blue_graph(&self) -> AdjacencyGraph {
        self.red_graph().complement()
    }

    /// Parses `N=<int>` followed by one `u v` red edge per line. Blank lines
    /// and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CertificateError::Format { line: line_no, message };
            match n {
                None => {
                    let value = line
                        .strip_prefix("N=")
                        .ok_or_else(|| err(format!("expected N=<int>, found '{line}'")))?;
                    n = Some(value.trim().parse::<usize>().map_err(|_| err(format!("bad vertex count '{value}'")))?);
                }
                Some(_) => {
                    let parts: Vec<&str> = line.split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(err(format!("expected 'u v', found '{line}'")));
                    }
                    let u = parts[0].parse::<usize>().map_err(|_| err(format!("bad vertex '{}'", parts[0])))?;
                    let v = parts[1].parse::<usize>().map_err(|_| err(format!("bad vertex '{}'", parts[1])))?;
                    edges.push((u, v));
                }
            }
        }
        let n = n.ok_or(CertificateError::Format {
            line: 1,
            message: "missing N=<int> header".into(),
        })?;
        ColoringCertificate::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("N={}\n", self.n);
        for (u, v) in &self.red {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Display for ColoringCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Outcome of checking a colouring against `(G, H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Neither a red `G` nor a blue `H`.
    Good,
    /// Image of `G`'s vertices in a red copy.
    RedCopy(Vec<usize>),
    /// Image of `H`'s vertices in a blue copy.
    BlueCopy(Vec<usize>),
}

pub fn check_coloring(cert: &ColoringCertificate, g: &GraphSpec, h: &GraphSpec) -> Result<Verdict, GraphError> {
    let (pg, ph) = (g.realize()?, h.realize()?);
    let red = cert.red_graph();
    if let Some(m) = find_embedding(&red, &pg) {
        return Ok(Verdict::RedCopy(m));
    }
    if let Some(m) = find_embedding(&red.complement(), &ph) {
        return Ok(Verdict::BlueCopy(m));
    }
    Ok(Verdict::Good)
}

/// Whether the colouring contains neither a red `G` nor a blue `H`.
pub fn is_good_coloring(cert: &ColoringCertificate, g: &GraphSpec, h: &GraphSpec) -> Result<bool, GraphError> {
    Ok(check_coloring(cert, g, h)? == Verdict::Good)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GraphSpec {
        s.parse().unwrap()
    }

    #[test]
    fn c5_is_good_for_triangles() {
        let cert = ColoringCertificate::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(is_good_coloring(&cert, &g("K3"), &g("K3")).unwrap());
    }

    #[test]
    fn red_k6_is_bad() {
        let all: Vec<_> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
        let cert = ColoringCertificate::new(6, all).unwrap();
        assert_eq!(check_coloring(&cert, &g("K3"), &g("K3")).unwrap(), Verdict::RedCopy(vec![0, 1, 2]));
    }

    #[test]
    fn no_good_coloring_of_k6() {
        let edges: Vec<_> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
        for bits in 0u32..(1 << 15) {
            let red = edges.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e);
            let cert = ColoringCertificate::new(6, red).unwrap();
            assert!(!is_good_coloring(&cert, &g("K3"), &g("K3")).unwrap());
        }
    }

    #[test]
    fn k4_colorings_for_paths() {
        // r(K3-e, K4-e) > 4 needs a colouring of K4 with neither pattern
        let edges: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let good = (0u32..64)
            .filter(|bits| {
                let red = edges.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e);
                let cert = ColoringCertificate::new(4, red).unwrap();
                is_good_coloring(&cert, &g("K3-e"), &g("K4-e")).unwrap()
            })
            .count();
        assert!(good > 0);
        let empty = ColoringCertificate::new(4, []).unwrap();
        assert!(!is_good_coloring(&empty, &g("K3-e"), &g("K4-e")).unwrap());
    }

    #[test]
    fn parse_and_validate() {
        let cert = ColoringCertificate::parse("N=5\n0 1\n1 2\n# comment\n3 2\n").unwrap();
        assert_eq!(cert.red_edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(ColoringCertificate::parse(&cert.to_text()).unwrap(), cert);
        assert!(matches!(ColoringCertificate::parse("N=3\n0 3\n"), Err(CertificateError::OutOfRange(0, 3, 3))));
        assert!(matches!(ColoringCertificate::parse("N=3\n1 1\n"), Err(CertificateError::Loop(1))));
        assert!(matches!(ColoringCertificate::parse("N=3\n0 1\n1 0\n"), Err(CertificateError::Duplicate(1, 0))));
        assert!(matches!(ColoringCertificate::parse("0 1\n"), Err(CertificateError::Format { line: 1, .. })));
        assert!(matches!(ColoringCertificate::parse("N=3\n0 1 2\n"), Err(CertificateError::Format { line: 2, .. })));
        assert!(matches!(ColoringCertificate::parse("N=65\n"), Err(CertificateError::TooLarge(65))));
    }
}
