//! Finite simple graphs on the vertex set `1..=n`.
//!
//! Vertices are 1-based in every public signature. Internally adjacency is a
//! bitmask per vertex, so graphs are capped at [`MAX_VERTICES`] vertices; the
//! algebra built on top of them is only practical far below that.

mod classify;
mod enumerate;
mod io;

pub use classify::Classification;
pub use enumerate::{canonical_form, enumerate_graphs, CanonicalForm};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 32;

/// A labeled simple graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    /// Bit `k` of `adj[v]` is set iff vertices `v+1` and `k+1` are adjacent.
    adj: Vec<u32>,
}

/// Result of restricting or shrinking a graph: the new graph plus, for each
/// new vertex `k` (1-based), the original vertex `map[k-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: Graph,
    pub map: Vec<usize>,
}

/// The target of a neighborhood completion: a vertex `v` (giving `G_v`) or a
/// non-edge `{u,v}` (giving `G_e`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionTarget {
    Vertex(usize),
    NonEdge(usize, usize),
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 1-based vertex pairs. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in pairs {
            g.check_vertex(i)?;
            g.check_vertex(j)?;
            if i == j {
                return Err(Error::Loop(i));
            }
            g.set_edge(i - 1, j - 1);
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(adj: Vec<u32>) -> Self {
        Graph { n: adj.len(), adj }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn set_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    fn clear_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    pub(crate) fn all_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && (1..=self.n).contains(&i) && (1..=self.n).contains(&j) && self.adj[i - 1] >> (j - 1) & 1 == 1
    }

    /// Edges as pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let mut higher = self.adj[i] >> (i + 1);
            let mut j = i + 1;
            while higher != 0 {
                if higher & 1 == 1 {
                    out.push((i + 1, j + 1));
                }
                higher >>= 1;
                j += 1;
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v - 1]).map(|k| k + 1).collect()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.adj[v - 1] == 0).collect()
    }

    /// The induced subgraph on `vertices`, relabeled to `1..=|vertices|` in
    /// increasing order of the original labels.
    pub fn induced_subgraph(&self, vertices: &BTreeSet<usize>) -> Result<Relabeled> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let map: Vec<usize> = vertices.iter().copied().collect();
        let mut mask = 0u32;
        for &v in &map {
            mask |= 1 << (v - 1);
        }
        Ok(Relabeled { graph: self.induced_on_mask(mask), map })
    }

    /// Induced subgraph on a 0-based vertex bitmask.
    pub(crate) fn induced_on_mask(&self, mask: u32) -> Graph {
        let old: Vec<usize> = bits(mask).collect();
        let mut adj = vec![0u32; old.len()];
        for (a, &va) in old.iter().enumerate() {
            for (b, &vb) in old.iter().enumerate() {
                if self.adj[va] >> vb & 1 == 1 {
                    adj[a] |= 1 << b;
                }
            }
        }
        Graph::from_adjacency(adj)
    }

    /// `G \ e`. Keeps all vertices; fails if `e` is not an edge.
    pub fn delete_edge(&self, i: usize, j: usize) -> Result<Graph> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if !self.has_edge(i, j) {
            return Err(Error::MissingEdge(i.min(j), i.max(j)));
        }
        let mut g = self.clone();
        g.clear_edge(i - 1, j - 1);
        Ok(g)
    }

    /// `G \ v`: the induced subgraph on the remaining vertices.
    pub fn delete_vertex(&self, v: usize) -> Result<Relabeled> {
        self.check_vertex(v)?;
        let rest: BTreeSet<usize> = (1..=self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&rest)
    }

    pub fn add_edge(&self, i: usize, j: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.check_vertex(i)?;
        g.check_vertex(j)?;
        if i == j {
            return Err(Error::Loop(i));
        }
        g.set_edge(i - 1, j - 1);
        Ok(g)
    }

    /// `G_v` (complete `N(v)`) or `G_e` (complete `N(u)` and `N(v)` for a
    /// non-edge `e = {u,v}`).
    pub fn neighborhood_completion(&self, target: CompletionTarget) -> Result<Graph> {
        let mut g = self.clone();
        let centers = match target {
            CompletionTarget::Vertex(v) => {
                self.check_vertex(v)?;
                vec![v]
            }
            CompletionTarget::NonEdge(u, v) => {
                self.check_vertex(u)?;
                self.check_vertex(v)?;
                if u == v {
                    return Err(Error::Loop(u));
                }
                if self.has_edge(u, v) {
                    return Err(Error::ExistingEdge(u.min(v), u.max(v)));
                }
                vec![u, v]
            }
        };
        for c in centers {
            let nb: Vec<usize> = bits(self.adj[c - 1]).collect();
            for (k, &a) in nb.iter().enumerate() {
                for &b in &nb[k + 1..] {
                    g.set_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|m| m << self.n));
        Ok(Graph::from_adjacency(adj))
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.component_masks().into_iter().map(|m| bits(m).map(|k| k + 1).collect()).collect()
    }

    pub(crate) fn component_masks(&self) -> Vec<u32> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let comp = self.reach(start, self.all_mask());
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `within` (0-based masks).
    pub(crate) fn reach(&self, start: usize, within: u32) -> u32 {
        let mut comp = 1u32 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.all_mask()) == self.all_mask()
    }

    /// BFS 2-coloring per component; `V1` holds the side containing the
    /// smallest vertex of each component.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in bits(self.adj[v]) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        let v1 = (0..self.n).filter(|&v| color[v] == 0).map(|v| v + 1).collect();
        let v2 = (0..self.n).filter(|&v| color[v] == 1).map(|v| v + 1).collect();
        Some((v1, v2))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Number of edges in a longest induced path (0 for edgeless graphs).
    /// Exhaustive over vertex subsets.
    pub fn longest_induced_path_length(&self) -> usize {
        let mut best = 0;
        for mask in 1..=self.all_mask() {
            let size = mask.count_ones() as usize;
            if size <= best + 1 {
                continue;
            }
            if self.induces_path(mask) {
                best = size - 1;
            }
        }
        best
    }

    /// Number of vertices of a longest induced odd cycle, 0 if there is none.
    pub fn longest_induced_odd_cycle_length(&self) -> usize {
        let mut best = 0;
        for mask in 1..=self.all_mask() {
            let size = mask.count_ones() as usize;
            if size < 3 || size % 2 == 0 || size <= best {
                continue;
            }
            if self.induces_cycle(mask) {
                best = size;
            }
        }
        best
    }

    fn induced_degrees(&self, mask: u32) -> impl Iterator<Item = u32> + '_ {
        bits(mask).map(move |v| (self.adj[v] & mask).count_ones())
    }

    pub(crate) fn induces_path(&self, mask: u32) -> bool {
        let size = mask.count_ones();
        let edges: u32 = self.induced_degrees(mask).sum::<u32>() / 2;
        edges + 1 == size
            && self.induced_degrees(mask).all(|d| d <= 2)
            && self.reach(mask.trailing_zeros() as usize, mask) == mask
    }

    pub(crate) fn induces_cycle(&self, mask: u32) -> bool {
        mask.count_ones() >= 3
            && self.induced_degrees(mask).all(|d| d == 2)
            && self.reach(mask.trailing_zeros() as usize, mask) == mask
    }

    pub fn classify(&self) -> Classification {
        Classification::of(self)
    }
}

/// Named families, all on vertices `1..=n` in the natural labeling.
impl Graph {
    pub fn path(n: usize) -> Result<Graph> {
        let pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &pairs)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Parse(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        pairs.push((n, 1));
        Graph::from_edges(n, &pairs)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                pairs.push((i, j));
            }
        }
        Graph::from_edges(n, &pairs)
    }

    /// `K_{a,b}` with parts `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        let mut pairs = Vec::new();
        for i in 1..=a {
            for j in a + 1..=a + b {
                pairs.push((i, j));
            }
        }
        Graph::from_edges(a + b, &pairs)
    }

    /// `K_{1,3}` centered at vertex 1.
    pub fn claw() -> Graph {
        Graph::complete_bipartite(1, 3).expect("fixed size")
    }

    /// `K_4` minus the edge `{1,4}`.
    pub fn diamond() -> Graph {
        Graph::from_edges(4, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]).expect("fixed size")
    }

    /// A triangle on `1,2,3` with the pendant edge `{3,4}`.
    pub fn triangle_with_pendant() -> Graph {
        Graph::from_edges(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).expect("fixed size")
    }

    /// Parses `path:n`, `cycle:n`, `complete:n`, `complete_bipartite:a,b`,
    /// `claw`, `diamond`, `paw`, `empty:n`, and `A+B` for disjoint unions.
    pub fn family(spec: &str) -> Result<Graph> {
        let parts: Vec<&str> = spec.split('+').collect();
        if parts.len() > 1 {
            let mut acc = Graph::empty(0)?;
            for p in parts {
                acc = acc.disjoint_union(&Graph::family(p.trim())?)?;
            }
            return Ok(acc);
        }
        let (name, arg) = match spec.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (spec.trim(), None),
        };
        let num = |s: Option<&str>| -> Result<usize> {
            s.ok_or_else(|| Error::Parse(format!("family `{name}` needs a size")))?
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad size in `{spec}`: {e}")))
        };
        match name {
            "path" => Graph::path(num(arg)?),
            "cycle" => Graph::cycle(num(arg)?),
            "complete" => Graph::complete(num(arg)?),
            "empty" => Graph::empty(num(arg)?),
            "complete_bipartite" => {
                let arg = arg.ok_or_else(|| Error::Parse("complete_bipartite needs a,b".into()))?;
                let (a, b) = arg
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("complete_bipartite expects a,b, got `{arg}`")))?;
                Graph::complete_bipartite(num(Some(a))?, num(Some(b))?)
            }
            "claw" => Ok(Graph::claw()),
            "diamond" => Ok(Graph::diamond()),
            "paw" | "triangle_with_pendant" => Ok(Graph::triangle_with_pendant()),
            _ => Err(Error::Parse(format!("unknown graph family `{spec}`"))),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_graph6())
    }
}

/// Iterates over the set bit positions of a mask.
pub(crate) fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let k = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(k)
        }
    })
}
