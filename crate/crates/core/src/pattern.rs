use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::LoopDigraph;
use crate::vertex_set::VertexSet;

/// Square zero/nonzero pattern of a structured state matrix.
///
/// `get(i, j) == true` marks a free parameter at row `i`, column `j`. The
/// associated graph has the edge `j -> i` for each such entry, i.e. the
/// column index is the edge source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    n: usize,
    stars: FixedBitSet,
}

impl PatternMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("pattern dimension must be at least 1".into()));
        }
        Ok(Self { n, stars: FixedBitSet::with_capacity(n * n) })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_entries(n, (0..n).map(|i| (i, i)))
    }

    /// Pattern with a free parameter at each listed `(row, col)`.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut a = Self::zeros(n)?;
        for (i, j) in entries {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::Dimension { index, n });
                }
            }
            a.stars.insert(i * n + j);
        }
        Ok(a)
    }

    /// Pattern from boolean rows; every row must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        let mut a = Self::zeros(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("row has {} entries, expected {n}", row.len()),
                });
            }
            for (j, &star) in row.iter().enumerate() {
                a.stars.set(i * n + j, star);
            }
        }
        Ok(a)
    }

    /// Inverse of [`graph`](Self::graph).
    pub fn from_graph(g: &LoopDigraph) -> Result<Self> {
        Self::from_entries(g.vertex_count(), g.edges().map(|(src, dst)| (dst, src)))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.n && col < self.n, "pattern index out of range");
        self.stars.contains(row * self.n + col)
    }

    pub fn star_count(&self) -> usize {
        self.stars.count_ones(..)
    }

    /// Vertices whose diagonal entry is a free parameter.
    pub fn diagonal_stars(&self) -> VertexSet {
        VertexSet::from_indices(self.n, (0..self.n).filter(|&i| self.get(i, i)))
            .expect("diagonal in range")
    }

    /// The pattern with every zero diagonal entry replaced by a free parameter.
    pub fn modified(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.stars.insert(i * self.n + i);
        }
        out
    }

    /// Graph with edge `j -> i` for every free entry `(i, j)`.
    pub fn graph(&self) -> LoopDigraph {
        let edges = self.stars.ones().map(|k| (k % self.n, k / self.n));
        LoopDigraph::from_edges(self.n, edges).expect("entries in range").0
    }

    /// Simultaneous row/column relabeling: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n;
        Self::from_entries(n, self.stars.ones().map(|k| (perm[k / n], perm[k % n])))
            .expect("permutation stays in range")
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }
}

/// Dedicated input pattern: one column per driven state, with a single free
/// entry in the row of that state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputPattern {
    n: usize,
    columns: Vec<usize>,
}

impl InputPattern {
    /// Columns follow ascending vertex order.
    pub fn from_set(set: &VertexSet, n: usize) -> Result<Self> {
        let columns = set.to_vec();
        if let Some(&index) = columns.iter().find(|&&v| v >= n) {
            return Err(Error::Dimension { index, n });
        }
        Ok(Self { n, columns })
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Row carrying the free entry of each column.
    pub fn driven_rows(&self) -> &[usize] {
        &self.columns
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col] == row
    }

    /// Number of free entries, which for dedicated inputs equals the column count.
    pub fn star_count(&self) -> usize {
        self.columns.len()
    }
}

/// Convenience wrapper matching the matrix-from-set construction.
pub fn input_pattern(set: &VertexSet, n: usize) -> Result<InputPattern> {
    InputPattern::from_set(set, n)
}
