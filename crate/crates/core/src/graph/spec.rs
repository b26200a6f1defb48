//! Symbolic graph-family descriptors and the textual grammar used by seed
//! files and the command line.
//!
//! ```text
//! graph := "K" INT | "K" INT "-e" | "K" INT "-P3" | "K" INT "-K1," INT | "C" INT | "W" INT
//! ```
//!
//! Whitespace between tokens is ignored. `K7-K1,1` and `K7-e` denote the same
//! graph, as do `K7-K1,2` and `K7-P3`; the canonical text always uses the
//! short forms.

use std::fmt;
use std::str::FromStr;

use super::adjacency::AdjacencyGraph;
use crate::error::{GraphError, ParseError};

/// A member of one of the supported graph families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    /// `K_n`.
    Complete(usize),
    /// `K_n - K_{1,s}`: vertex 0 is the star center, vertices `1..=s` are the leaves.
    CompleteMinusStar(usize, usize),
    /// `C_n`.
    Cycle(usize),
    /// `W_n`: a cycle on `n - 1` vertices plus a hub adjacent to all of them.
    Wheel(usize),
    /// Any small graph given by adjacency.
    Explicit(AdjacencyGraph),
}

impl GraphSpec {
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Self::Complete(n).validated()
    }

    pub fn minus_star(n: usize, s: usize) -> Result<Self, GraphError> {
        Self::CompleteMinusStar(n, s).validated()
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Self::Cycle(n).validated()
    }

    pub fn wheel(n: usize) -> Result<Self, GraphError> {
        Self::Wheel(n).validated()
    }

    pub fn validated(self) -> Result<Self, GraphError> {
        self.validate()?;
        Ok(self)
    }

    /// Checks the per-family parameter domains.
    pub fn validate(&self) -> Result<(), GraphError> {
        let ok = match *self {
            GraphSpec::Complete(n) => n >= 1,
            GraphSpec::CompleteMinusStar(n, s) => n >= 3 && s >= 1 && s < n,
            GraphSpec::Cycle(n) => n >= 3,
            GraphSpec::Wheel(n) => n >= 4,
            GraphSpec::Explicit(_) => true,
        };
        if ok {
            Ok(())
        } else {
            Err(GraphError::Domain(format!("{self:?}")))
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            GraphSpec::Complete(n)
            | GraphSpec::CompleteMinusStar(n, _)
            | GraphSpec::Cycle(n)
            | GraphSpec::Wheel(n) => *n,
            GraphSpec::Explicit(g) => g.vertex_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            GraphSpec::Complete(n) => n * (n - 1) / 2,
            GraphSpec::CompleteMinusStar(n, s) => n * (n - 1) / 2 - s,
            GraphSpec::Cycle(n) => *n,
            GraphSpec::Wheel(n) => 2 * (n - 1),
            GraphSpec::Explicit(g) => g.edge_count(),
        }
    }

    pub fn has_edge(&self) -> bool {
        self.edge_count() > 0
    }

    /// Builds the concrete graph with the vertex labelling documented on each variant.
    pub fn realize(&self) -> Result<AdjacencyGraph, GraphError> {
        self.validate()?;
        let n = self.vertex_count();
        if n > AdjacencyGraph::MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let g = match *self {
            GraphSpec::Complete(n) => AdjacencyGraph::complete(n),
            GraphSpec::CompleteMinusStar(n, s) => {
                let mut g = AdjacencyGraph::complete(n);
                for leaf in 1..=s {
                    g.remove_edge(0, leaf);
                }
                g
            }
            GraphSpec::Cycle(n) => {
                let mut g = AdjacencyGraph::empty(n);
                for v in 0..n {
                    g.add_edge(v, (v + 1) % n);
                }
                g
            }
            GraphSpec::Wheel(n) => {
                // hub is vertex 0, rim is 1..n
                let rim = n - 1;
                let mut g = AdjacencyGraph::empty(n);
                for i in 0..rim {
                    g.add_edge(0, i + 1);
                    g.add_edge(i + 1, (i + 1) % rim + 1);
                }
                g
            }
            GraphSpec::Explicit(ref g) => g.clone(),
        };
        Ok(g)
    }

    /// The join of this graph with one new universal vertex.
    pub fn cone(&self) -> GraphSpec {
        match *self {
            GraphSpec::Complete(n) => GraphSpec::Complete(n + 1),
            GraphSpec::CompleteMinusStar(n, s) => GraphSpec::CompleteMinusStar(n + 1, s),
            GraphSpec::Cycle(n) => GraphSpec::Wheel(n + 1),
            GraphSpec::Wheel(_) | GraphSpec::Explicit(_) => {
                let g = self.realize().expect("valid spec");
                GraphSpec::Explicit(g.with_universal_vertex())
            }
        }
    }

    /// Inverse of [`cone`](Self::cone): removes a universal vertex if the
    /// family structure has one.
    pub fn decone(&self) -> Option<GraphSpec> {
        match *self {
            GraphSpec::Complete(n) if n >= 2 => Some(GraphSpec::Complete(n - 1)),
            GraphSpec::Complete(_) => None,
            GraphSpec::CompleteMinusStar(n, s) if s + 2 <= n => {
                if n >= 4 {
                    Some(GraphSpec::CompleteMinusStar(n - 1, s))
                } else {
                    // K_3 - e is a path; dropping its middle leaves two isolated vertices
                    Some(GraphSpec::Explicit(AdjacencyGraph::empty(2)))
                }
            }
            GraphSpec::CompleteMinusStar(..) => None,
            GraphSpec::Cycle(3) => Some(GraphSpec::Complete(2)),
            GraphSpec::Cycle(_) => None,
            GraphSpec::Wheel(n) => Some(GraphSpec::Cycle(n - 1)),
            GraphSpec::Explicit(ref g) => {
                let v = (0..g.vertex_count()).rev().find(|&v| g.is_universal(v))?;
                Some(GraphSpec::Explicit(g.without_vertex(v)))
            }
        }
    }

    pub fn is_catalog(&self) -> bool {
        !matches!(self, GraphSpec::Explicit(_))
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Complete(n) => write!(f, "K{n}"),
            GraphSpec::CompleteMinusStar(n, 1) => write!(f, "K{n}-e"),
            GraphSpec::CompleteMinusStar(n, 2) => write!(f, "K{n}-P3"),
            GraphSpec::CompleteMinusStar(n, s) => write!(f, "K{n}-K1,{s}"),
            GraphSpec::Cycle(n) => write!(f, "C{n}"),
            GraphSpec::Wheel(n) => write!(f, "W{n}"),
            GraphSpec::Explicit(g) => {
                write!(f, "G{}[", g.vertex_count())?;
                for (i, (u, v)) in g.edges().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{u}-{v}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl FromStr for GraphSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let g = p.graph()?;
        p.end()?;
        Ok(g)
    }
}

/// Parses `r(<graph>,<graph>)`.
pub fn parse_pair_expr(s: &str) -> Result<(GraphSpec, GraphSpec), ParseError> {
    let mut p = Parser::new(s);
    p.literal('r')?;
    p.literal('(')?;
    let a = p.graph()?;
    p.literal(',')?;
    let b = p.graph()?;
    p.literal(')')?;
    p.end()?;
    Ok((a, b))
}

/// A small cursor-based recursive-descent parser for the graph grammar.
/// Offsets in errors are byte offsets into the input.
struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&self, expected: &str) -> ParseError {
        let found = self.src[self.pos..].chars().next();
        ParseError {
            offset: self.pos,
            expected: expected.to_string(),
            found: found.map(|c| c.to_string()).unwrap_or_else(|| "end of input".into()),
        }
    }

    fn literal(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("integer"));
        }
        let v = rest[..len].parse().map_err(|_| self.error("integer that fits"))?;
        self.pos += len;
        Ok(v)
    }

    fn domain(&self, start: usize, spec: GraphSpec) -> Result<GraphSpec, ParseError> {
        spec.validate().map_err(|_| ParseError {
            offset: start,
            expected: "graph with valid parameters".into(),
            found: format!("{spec:?}"),
        })?;
        Ok(spec)
    }

    fn graph(&mut self) -> Result<GraphSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('K') => {
                self.pos += 1;
                let n = self.int()?;
                if self.peek() != Some('-') {
                    return self.domain(start, GraphSpec::Complete(n));
                }
                self.pos += 1;
                let spec = match self.peek() {
                    Some('e') => {
                        self.pos += 1;
                        GraphSpec::CompleteMinusStar(n, 1)
                    }
                    Some('P') => {
                        self.pos += 1;
                        let three = self.int()?;
                        if three != 3 {
                            return Err(ParseError {
                                offset: start,
                                expected: "P3".into(),
                                found: format!("P{three}"),
                            });
                        }
                        GraphSpec::CompleteMinusStar(n, 2)
                    }
                    Some('K') => {
                        self.pos += 1;
                        let one = self.int()?;
                        if one != 1 {
                            return Err(ParseError {
                                offset: start,
                                expected: "K1,".into(),
                                found: format!("K{one}"),
                            });
                        }
                        self.literal(',')?;
                        let s = self.int()?;
                        GraphSpec::CompleteMinusStar(n, s)
                    }
                    _ => return Err(self.error("'e', 'P3' or 'K1,'")),
                };
                self.domain(start, spec)
            }
            Some('C') => {
                self.pos += 1;
                let n = self.int()?;
                self.domain(start, GraphSpec::Cycle(n))
            }
            Some('W') => {
                self.pos += 1;
                let n = self.int()?;
                self.domain(start, GraphSpec::Wheel(n))
            }
            _ => Err(self.error("'K', 'C' or 'W'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_family_forms() {
        assert_eq!("K5".parse::<GraphSpec>().unwrap(), GraphSpec::Complete(5));
        assert_eq!("K5-e".parse::<GraphSpec>().unwrap(), GraphSpec::CompleteMinusStar(5, 1));
        assert_eq!("K5-P3".parse::<GraphSpec>().unwrap(), GraphSpec::CompleteMinusStar(5, 2));
        assert_eq!("K7-K1,3".parse::<GraphSpec>().unwrap(), GraphSpec::CompleteMinusStar(7, 3));
        assert_eq!(" K 7 - K1 , 1 ".parse::<GraphSpec>().unwrap(), GraphSpec::CompleteMinusStar(7, 1));
        assert_eq!("C4".parse::<GraphSpec>().unwrap(), GraphSpec::Cycle(4));
        assert_eq!("W5".parse::<GraphSpec>().unwrap(), GraphSpec::Wheel(5));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(GraphSpec::CompleteMinusStar(7, 1).to_string(), "K7-e");
        assert_eq!(GraphSpec::CompleteMinusStar(7, 2).to_string(), "K7-P3");
        assert_eq!(GraphSpec::CompleteMinusStar(7, 3).to_string(), "K7-K1,3");
    }

    #[test]
    fn parse_errors_carry_offset() {
        let err = "K5-Q".parse::<GraphSpec>().unwrap_err();
        assert_eq!(err.offset, 3);
        let err = "K5 K6".parse::<GraphSpec>().unwrap_err();
        assert_eq!(err.offset, 3);
        assert!("X3".parse::<GraphSpec>().is_err());
        assert!("K5-P4".parse::<GraphSpec>().is_err());
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!("K3-K1,3".parse::<GraphSpec>().is_err());
        assert!("K0".parse::<GraphSpec>().is_err());
        assert!("C2".parse::<GraphSpec>().is_err());
        assert!("W3".parse::<GraphSpec>().is_err());
        assert!(GraphSpec::CompleteMinusStar(2, 1).realize().is_err());
    }

    #[test]
    fn pair_expression() {
        let (a, b) = parse_pair_expr("r(K4-e,K7-K1,3)").unwrap();
        assert_eq!(a, GraphSpec::CompleteMinusStar(4, 1));
        assert_eq!(b, GraphSpec::CompleteMinusStar(7, 3));
        assert!(parse_pair_expr("r(K4,K5").is_err());
    }

    #[test]
    fn realize_examples() {
        let p3 = GraphSpec::CompleteMinusStar(3, 1).realize().unwrap();
        assert_eq!(p3.edge_count(), 2);
        let k1 = GraphSpec::Complete(1).realize().unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
        let w5 = GraphSpec::Wheel(5).realize().unwrap();
        assert_eq!(w5.edge_count(), 8);
        let mut degrees: Vec<_> = (0..5).map(|v| w5.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![3, 3, 3, 3, 4]);
    }

    #[test]
    fn minus_star_edge_counts() {
        for n in 3..=12 {
            for s in 1..n {
                let g = GraphSpec::CompleteMinusStar(n, s).realize().unwrap();
                assert_eq!(g.edge_count(), n * (n - 1) / 2 - s);
                assert_eq!(GraphSpec::CompleteMinusStar(n, s).edge_count(), g.edge_count());
            }
        }
    }

    #[test]
    fn cone_and_decone() {
        assert_eq!(GraphSpec::Cycle(4).cone(), GraphSpec::Wheel(5));
        assert_eq!(GraphSpec::Complete(3).cone(), GraphSpec::Complete(4));
        assert_eq!(GraphSpec::CompleteMinusStar(5, 3).cone(), GraphSpec::CompleteMinusStar(6, 3));
        assert_eq!(GraphSpec::Wheel(5).decone(), Some(GraphSpec::Cycle(4)));
        assert_eq!(GraphSpec::CompleteMinusStar(4, 3).decone(), None);
        assert_eq!(GraphSpec::Complete(2).decone(), Some(GraphSpec::Complete(1)));
        assert_eq!(GraphSpec::Complete(1).decone(), None);
    }
}
