use crate::error::{Error, Result};

/// Directed graph on `[0, n)` in which self-loops are allowed.
///
/// Out- and in-adjacency lists are both kept, sorted ascending and free of
/// duplicates. The forcing engine needs the in-lists to update white
/// out-degree counts when a vertex turns black.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopDigraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl LoopDigraph {
    pub fn empty(n: usize) -> Self {
        Self { out_adj: vec![Vec::new(); n], in_adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from `(src, dst)` pairs. Returns the graph together with
    /// the number of duplicate edges that were collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        for (src, dst) in edges {
            for index in [src, dst] {
                if index >= n {
                    return Err(Error::Dimension { index, n });
                }
            }
            out_adj[src].push(dst);
        }
        let mut duplicates = 0;
        for list in &mut out_adj {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            duplicates += before - list.len();
        }
        Ok((Self::from_sorted_out(out_adj), duplicates))
    }

    fn from_sorted_out(out_adj: Vec<Vec<usize>>) -> Self {
        let mut in_adj = vec![Vec::new(); out_adj.len()];
        for (u, outs) in out_adj.iter().enumerate() {
            for &v in outs {
                in_adj[v].push(u);
            }
        }
        Self { out_adj, in_adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn has_edge(&self, src: usize, dst: usize) -> bool {
        self.out_adj[src].binary_search(&dst).is_ok()
    }

    pub fn has_self_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// All edges in `(src, dst)` lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    /// Copy of the graph with a self-loop added at every listed vertex.
    pub fn with_self_loops<I: IntoIterator<Item = usize>>(&self, vertices: I) -> Self {
        let mut out_adj = self.out_adj.clone();
        for v in vertices {
            if let Err(pos) = out_adj[v].binary_search(&v) {
                out_adj[v].insert(pos, v);
            }
        }
        Self::from_sorted_out(out_adj)
    }

    /// Image of the graph under the vertex map `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let (g, _) = Self::from_edges(self.vertex_count(), self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("permutation stays in range");
        g
    }
}
