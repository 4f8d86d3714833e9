use serde::{Deserialize, Serialize};

use super::{bits, Graph};

/// Structural facts about a graph that the algebraic claims are conditioned on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_connected: bool,
    pub components: Vec<Vec<usize>>,
    pub is_bipartite: bool,
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    pub is_complete: bool,
    /// `K_{a,b}` with `a, b >= 1` (so `K_2 = K_{1,1}` counts).
    pub is_complete_bipartite: bool,
    pub is_path: bool,
    pub is_cycle: bool,
    /// Connected and acyclic.
    pub is_tree: bool,
    /// Exactly one cycle (cyclomatic number 1).
    pub is_unicyclic: bool,
    /// Length of a shortest cycle, 0 for forests.
    pub girth: usize,
    pub is_claw: bool,
    pub is_diamond: bool,
    pub is_chordal: bool,
    pub is_block_graph: bool,
    pub cut_vertices: Vec<usize>,
    pub free_vertices: Vec<usize>,
    pub max_degree: usize,
}

impl Classification {
    pub fn of(g: &Graph) -> Self {
        let n = g.n();
        let m = g.edge_count();
        let components = g.components();
        let is_connected = components.len() <= 1;
        let bipartition = g.bipartition();
        let is_bipartite = bipartition.is_some();
        let degrees: Vec<usize> = (1..=n).map(|v| g.degree(v)).collect();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let cyclomatic = m + components.len() - n;
        let is_tree = is_connected && n >= 1 && m + 1 == n;
        let is_complete_bipartite = match &bipartition {
            Some((a, b)) => is_connected && !a.is_empty() && !b.is_empty() && m == a.len() * b.len(),
            None => false,
        };
        let blocks = blocks(g);
        Classification {
            is_connected,
            is_bipartite,
            is_complete: m == n * n.saturating_sub(1) / 2,
            is_complete_bipartite,
            is_path: is_tree && max_degree <= 2,
            is_cycle: is_connected && n >= 3 && degrees.iter().all(|&d| d == 2),
            is_tree,
            is_unicyclic: cyclomatic == 1,
            girth: girth(g),
            is_claw: n == 4 && m == 3 && max_degree == 3,
            is_diamond: n == 4 && m == 5,
            is_chordal: is_chordal(g),
            is_block_graph: blocks.iter().all(|&b| is_clique(g, b)),
            cut_vertices: cut_vertices(g),
            free_vertices: free_vertices(g),
            max_degree,
            components,
            bipartition,
        }
    }

    pub fn is_odd_unicyclic(&self) -> bool {
        self.is_unicyclic && self.girth % 2 == 1
    }
}

fn is_clique(g: &Graph, mask: u32) -> bool {
    bits(mask).all(|v| g.adjacency()[v] & mask == mask & !(1 << v))
}

/// Shortest cycle via BFS from every vertex.
fn girth(g: &Graph) -> usize {
    let n = g.n();
    let mut best = usize::MAX;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in bits(g.adjacency()[v]) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// Chordality by maximum cardinality search followed by a perfect elimination
/// ordering check.
fn is_chordal(g: &Graph) -> bool {
    let n = g.n();
    let adj = g.adjacency();
    let mut weight = vec![0usize; n];
    let mut numbered = 0u32;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| numbered >> v & 1 == 0)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unnumbered vertex remains");
        numbered |= 1 << v;
        order.push(v);
        for w in bits(adj[v] & !numbered) {
            weight[w] += 1;
        }
    }
    // `order` reversed is a perfect elimination ordering iff g is chordal:
    // the earlier-visited neighbors of each vertex must form a clique.
    let mut before = 0u32;
    for &v in &order {
        let earlier = adj[v] & before;
        if !is_clique(g, earlier) {
            return false;
        }
        before |= 1 << v;
    }
    true
}

/// A vertex whose removal increases the number of components.
fn cut_vertices(g: &Graph) -> Vec<usize> {
    let base = g.component_masks().len();
    (0..g.n())
        .filter(|&v| {
            if g.adjacency()[v] == 0 {
                return false;
            }
            let rest = g.all_mask() & !(1 << v);
            let mut seen = 0u32;
            let mut count = 0;
            for s in bits(rest) {
                if seen >> s & 1 == 0 {
                    seen |= g.reach(s, rest);
                    count += 1;
                }
            }
            count > base
        })
        .map(|v| v + 1)
        .collect()
}

/// Biconnected components (blocks) as vertex masks, isolated vertices
/// included as singleton blocks.
fn blocks(g: &Graph) -> Vec<u32> {
    struct Dfs<'a> {
        adj: &'a [u32],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<u32>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, v: usize, parent: usize) {
            self.time += 1;
            self.disc[v] = self.time;
            self.low[v] = self.time;
            for w in bits(self.adj[v]) {
                if self.disc[w] == 0 {
                    self.stack.push((v, w));
                    self.visit(w, v);
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.disc[v] {
                        let mut mask = 0u32;
                        while let Some((a, b)) = self.stack.pop() {
                            mask |= 1 << a | 1 << b;
                            if (a, b) == (v, w) {
                                break;
                            }
                        }
                        self.out.push(mask);
                    }
                } else if w != parent && self.disc[w] < self.disc[v] {
                    self.stack.push((v, w));
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            }
        }
    }
    let n = g.n();
    let mut dfs = Dfs { adj: g.adjacency(), disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if dfs.disc[v] == 0 {
            if g.adjacency()[v] == 0 {
                dfs.disc[v] = usize::MAX;
                dfs.out.push(1 << v);
            } else {
                dfs.visit(v, usize::MAX);
            }
        }
    }
    dfs.out
}

/// Vertices lying in exactly one maximal clique.
fn free_vertices(g: &Graph) -> Vec<usize> {
    let cliques = maximal_cliques(g);
    (0..g.n()).filter(|&v| cliques.iter().filter(|&&c| c >> v & 1 == 1).count() == 1).map(|v| v + 1).collect()
}

/// Bron–Kerbosch with pivoting on bitmasks.
pub(crate) fn maximal_cliques(g: &Graph) -> Vec<u32> {
    fn bk(adj: &[u32], r: u32, mut p: u32, mut x: u32, out: &mut Vec<u32>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = bits(p | x).max_by_key(|&u| (adj[u] & p).count_ones()).expect("p|x nonempty");
        for v in bits(p & !adj[pivot]) {
            bk(adj, r | 1 << v, p & adj[v], x & adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    if g.n() > 0 {
        bk(g.adjacency(), 0, g.all_mask(), 0, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        let c = Graph::diamond().classify();
        assert!(c.is_diamond);
        assert_eq!(c.girth, 3);
        assert!(c.is_chordal);
        assert!(!c.is_block_graph);
        assert_eq!(c.free_vertices, vec![1, 4]);
        assert!(c.cut_vertices.is_empty());
    }

    #[test]
    fn claw() {
        let c = Graph::claw().classify();
        assert!(c.is_claw && c.is_complete_bipartite && c.is_tree);
        assert!(!c.is_path);
        assert_eq!(c.cut_vertices, vec![1]);
        assert_eq!(c.girth, 0);
        assert_eq!(c.max_degree, 3);
    }

    #[test]
    fn c6() {
        let c = Graph::cycle(6).unwrap().classify();
        assert_eq!(c.girth, 6);
        assert!(c.is_cycle && c.is_bipartite && c.is_unicyclic);
        assert!(!c.is_block_graph && !c.is_chordal);
    }

    #[test]
    fn paw_is_odd_unicyclic_block_graph() {
        let c = Graph::triangle_with_pendant().classify();
        assert!(c.is_odd_unicyclic());
        assert!(c.is_block_graph);
        assert_eq!(c.cut_vertices, vec![3]);
        assert_eq!(c.free_vertices, vec![1, 2, 4]);
    }

    #[test]
    fn disconnected_inputs() {
        let g = Graph::family("cycle:3+path:2+empty:1").unwrap();
        let c = g.classify();
        assert!(!c.is_connected);
        assert_eq!(c.components, vec![vec![1, 2, 3], vec![4, 5], vec![6]]);
        assert!(c.is_unicyclic && !c.is_tree);
        assert!(c.free_vertices.contains(&6));
        assert!(c.cut_vertices.is_empty());
        let p = Graph::path(4).unwrap().classify();
        assert_eq!(p.cut_vertices, vec![2, 3]);
        assert!(p.is_path && p.is_block_graph);
    }

    #[test]
    fn complete_graphs() {
        let c = Graph::complete(5).unwrap().classify();
        assert!(c.is_complete && c.is_chordal && c.is_block_graph);
        assert_eq!(c.free_vertices.len(), 5);
        assert!(!Graph::complete(3).unwrap().classify().is_complete_bipartite);
        assert!(Graph::complete(2).unwrap().classify().is_complete_bipartite);
    }
}
