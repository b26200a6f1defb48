/// A simple undirected graph on vertices `0..vertex_count`, one neighbour
/// bitset per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdjacencyGraph {
    rows: Vec<u64>,
}

impl AdjacencyGraph {
    pub const MAX_VERTICES: usize = 64;

    pub fn empty(n: usize) -> Self {
        assert!(n <= Self::MAX_VERTICES, "at most 64 vertices supported");
        AdjacencyGraph { rows: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        let all = mask(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row = all & !(1 << v);
        }
        g
    }

    /// Builds a graph from an edge list. Panics on loops or out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Builds a graph directly from neighbour rows, which must be symmetric and loop-free.
    pub fn from_rows(rows: Vec<u64>) -> Self {
        let n = rows.len();
        assert!(n <= Self::MAX_VERTICES);
        for (v, &row) in rows.iter().enumerate() {
            assert_eq!(row & !mask(n), 0, "row {v} has bits outside the vertex range");
            assert_eq!(row >> v & 1, 0, "loop at {v}");
            let mut rest = row;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                assert_eq!(rows[u] >> v & 1, 1, "asymmetric adjacency at ({v},{u})");
            }
        }
        AdjacencyGraph { rows }
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at {u}");
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(u, &row)| {
            let above = row & !mask(u + 1);
            BitIter(above).map(move |v| (u, v))
        })
    }

    pub fn is_universal(&self, v: usize) -> bool {
        self.degree(v) + 1 == self.vertex_count()
    }

    pub fn with_universal_vertex(&self) -> Self {
        let n = self.vertex_count();
        let mut rows = self.rows.clone();
        for row in rows.iter_mut() {
            *row |= 1 << n;
        }
        rows.push(mask(n));
        AdjacencyGraph { rows }
    }

    /// Deletes `v` and relabels the vertices above it down by one.
    pub fn without_vertex(&self, v: usize) -> Self {
        let low = mask(v);
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, &row)| (row & low) | ((row >> 1) & !low))
            .collect();
        AdjacencyGraph { rows }
    }

    pub fn complement(&self) -> Self {
        let n = self.vertex_count();
        let all = mask(n);
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(v, &row)| !row & all & !(1 << v))
            .collect();
        AdjacencyGraph { rows }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Mask with the lowest `n` bits set.
#[inline]
pub(crate) const fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a word, lowest first.
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}
