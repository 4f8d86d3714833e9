//! Exhaustive enumeration of small graphs and a canonical form for
//! isomorphism deduplication.

use std::collections::BTreeSet;

use super::{bits, Graph};

/// An isomorphism invariant that determines a graph up to isomorphism:
/// vertex count plus the largest upper-triangle adjacency code over all
/// labelings compatible with color refinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u128,
}

/// Canonical representative and form of `g`. Supports `n <= 16`.
pub fn canonical_form(g: &Graph) -> (CanonicalForm, Graph) {
    let n = g.n();
    assert!(n <= 16, "canonical labeling supports at most 16 vertices");
    let cells = refine(g);
    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(n);
    search(g, &cells, 0, &mut order, 0, &mut best);
    let (code, order) = best.unwrap_or((0, Vec::new()));
    // order[k] = old vertex placed at new position k
    let mut adj = vec![0u32; n];
    for (a, &va) in order.iter().enumerate() {
        for (b, &vb) in order.iter().enumerate() {
            if g.adjacency()[va] >> vb & 1 == 1 {
                adj[a] |= 1 << b;
            }
        }
    }
    (CanonicalForm { n, code }, Graph::from_adjacency(adj))
}

/// Ordered partition of the vertices by iterated neighbor-color refinement,
/// starting from degrees. Cell order depends only on isomorphism-invariant
/// color signatures.
fn refine(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let adj = g.adjacency();
    let mut color: Vec<usize> = (0..n).map(|v| adj[v].count_ones() as usize).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = bits(adj[v]).map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let ranked: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranked.binary_search(&s).expect("present")).collect();
        let before = color.iter().collect::<BTreeSet<_>>().len();
        let after = ranked.len();
        color = next;
        if after == before {
            break;
        }
    }
    let classes = color.iter().copied().max().map_or(0, |m| m + 1);
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

/// Tries every ordering of vertices within each cell, keeping the labeling
/// with the largest adjacency code. The code packs bit `(a,b)`, `a < b`, in
/// row-major order of the new labels, most significant first.
fn search(
    g: &Graph,
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    used: u32,
    best: &mut Option<(u128, Vec<usize>)>,
) {
    if order.len() == g.n() {
        let code = code_of(g, order);
        if best.as_ref().map_or(true, |(b, _)| code > *b) {
            *best = Some((code, order.clone()));
        }
        return;
    }
    let current = &cells[cell];
    let placed_in_cell = current.iter().filter(|&&v| used >> v & 1 == 1).count();
    if placed_in_cell == current.len() {
        search(g, cells, cell + 1, order, used, best);
        return;
    }
    for &v in current {
        if used >> v & 1 == 0 {
            order.push(v);
            search(g, cells, cell, order, used | 1 << v, best);
            order.pop();
        }
    }
}

fn code_of(g: &Graph, order: &[usize]) -> u128 {
    let adj = g.adjacency();
    let mut code = 0u128;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            code = code << 1 | (adj[order[a]] >> order[b] & 1) as u128;
        }
    }
    code
}

/// All simple graphs on `1..=n`, optionally only connected ones, optionally
/// one canonical representative per isomorphism class.
///
/// Without deduplication this walks all `2^C(n,2)` labeled graphs lazily.
/// With deduplication the classes are grown vertex by vertex (every class on
/// `n` vertices arises from a class on `n-1` vertices by adding a vertex with
/// some neighborhood), which stays cheap up to `n = 8`.
pub fn enumerate_graphs(n: usize, connected_only: bool, up_to_iso: bool) -> Box<dyn Iterator<Item = Graph> + Send> {
    if up_to_iso {
        let classes = iso_classes(n);
        return Box::new(classes.into_iter().filter(move |g| !connected_only || g.is_connected()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total: u64 = 1u64 << pairs.len();
    Box::new((0..total).filter_map(move |bitsel| {
        let mut adj = vec![0u32; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bitsel >> k & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        let g = Graph::from_adjacency(adj);
        (!connected_only || g.is_connected()).then_some(g)
    }))
}

fn iso_classes(n: usize) -> Vec<Graph> {
    let mut level: Vec<Graph> = vec![Graph::from_adjacency(Vec::new())];
    for k in 0..n {
        let mut seen = std::collections::BTreeMap::new();
        for g in &level {
            for nbhd in 0u32..(1 << k) {
                let mut adj = g.adjacency().to_vec();
                for w in bits(nbhd) {
                    adj[w] |= 1 << k;
                }
                adj.push(nbhd);
                let (form, canon) = canonical_form(&Graph::from_adjacency(adj));
                seen.entry(form).or_insert(canon);
            }
        }
        level = seen.into_values().collect();
    }
    level
}
