//! The claim registry. Each entry pairs a hypothesis on the graph with a
//! checker over engine-computed invariants.

use std::collections::BTreeSet;

use serde_json::{json, Map, Value};

use super::engine::Ctx;
use super::{colon_edges, is_odd_cycles_and_paths, pure_family, reg2_family, reg_lower_bound, ClaimKind, Scope};
use crate::error::Result;
use crate::graphs::{canonical_form, Graph};
use crate::ideals::IdealKind;
use crate::resolution::BettiTable;

/// Whether a claim's hypotheses hold for a graph.
pub(crate) enum Precondition {
    Met,
    Unmet(String),
}

/// Result of a checker: whether the claim held, and the evidence.
pub(crate) struct Outcome {
    pub holds: bool,
    pub witness: Value,
    pub params: Map<String, Value>,
}

impl Outcome {
    fn new(holds: bool, witness: Value) -> Self {
        Outcome { holds, witness, params: Map::new() }
    }

    fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.into(), v.into());
        self
    }
}

/// A machine-checkable statement about the edge ideals of a graph.
pub struct Claim {
    pub id: &'static str,
    pub kind: ClaimKind,
    /// Which graphs a sweep feeds to the claim.
    pub scope: Scope,
    pub statement: &'static str,
    pub(crate) applies: fn(&Ctx, &Graph) -> Result<Precondition>,
    pub(crate) check: fn(&Ctx, &Graph) -> Result<Outcome>,
}

fn need(cond: bool, why: &str) -> Result<Precondition> {
    Ok(if cond { Precondition::Met } else { Precondition::Unmet(why.into()) })
}

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a).0 == canonical_form(b).0
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn entries_where(t: &BettiTable, pred: impl Fn(usize, u32) -> bool) -> Vec<Value> {
    t.entries().filter(|&(i, j, _)| pred(i, j)).map(|(i, j, b)| json!([i, j, b])).collect()
}

fn reg(ctx: &Ctx, kind: IdealKind, g: &Graph) -> Result<i64> {
    ctx.table(kind, g)?.regularity()
}

/// Proper nonempty vertex subsets, as 1-based sets.
fn proper_subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (1u32..(1u32 << n).saturating_sub(1)).map(move |mask| (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect())
}

fn edge_json(e: (usize, usize)) -> Value {
    json!([e.0, e.1])
}

pub(crate) static REGISTRY: &[Claim] = &[
    Claim {
        id: "reg_bipartite",
        kind: ClaimKind::Theorem,
        scope: Scope::Connected,
        statement: "connected bipartite G: reg(S/I_G) = reg(S/J_G) <= n-1, with equality exactly for paths",
        applies: |_, g| need(g.n() >= 2 && g.is_connected() && g.is_bipartite(), "needs a connected bipartite graph with an edge"),
        check: |ctx, g| {
            let ri = reg(ctx, IdealKind::Parity, g)?;
            let rj = reg(ctx, IdealKind::Binomial, g)?;
            let n = g.n() as i64;
            let path = g.classify().is_path;
            let holds = ri == rj && ri <= n - 1 && ((ri == n - 1) == path);
            Ok(Outcome::new(holds, json!({"reg_parity": ri, "reg_binomial": rj, "n": n, "is_path": path})))
        },
    },
    Claim {
        id: "reg_odd_cycle",
        kind: ClaimKind::Theorem,
        scope: Scope::Connected,
        statement: "odd cycle C_n: reg(S/I_G) = n",
        applies: |_, g| need(g.classify().is_cycle && g.n() % 2 == 1, "needs an odd cycle"),
        check: |ctx, g| {
            let r = reg(ctx, IdealKind::Parity, g)?;
            Ok(Outcome::new(r == g.n() as i64, json!({"reg": r, "n": g.n()})))
        },
    },
    Claim {
        id: "reg_non_bipartite",
        kind: ClaimKind::Theorem,
        scope: Scope::Connected,
        statement: "connected non-bipartite G, not an odd cycle, with G\\e bipartite for some edge e: reg(S/I_G) <= n-1",
        applies: |_, g| {
            need(
                g.is_connected() && !colon_edges(g).is_empty() && !g.classify().is_cycle,
                "needs a connected non-bipartite graph, not an odd cycle, that becomes bipartite after deleting one edge",
            )
        },
        check: |ctx, g| {
            let r = reg(ctx, IdealKind::Parity, g)?;
            let e = colon_edges(g)[0];
            Ok(Outcome::new(r <= g.n() as i64 - 1, json!({"reg": r, "n": g.n()})).param("edge", edge_json(e)))
        },
    },
    Claim {
        id: "lower_bound",
        kind: ClaimKind::Theorem,
        scope: Scope::Connected,
        statement: "connected G: reg(S/I_G) >= max(longest induced path, longest induced odd cycle)",
        applies: |_, g| need(g.is_connected(), "needs a connected graph"),
        check: |ctx, g| {
            let r = reg(ctx, IdealKind::Parity, g)?;
            let bound = reg_lower_bound(g)? as i64;
            Ok(Outcome::new(r >= bound, json!({"reg": r, "bound": bound})))
        },
    },
    Claim {
        id: "reg2_classification",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "G without isolated vertices: reg(S/I_G) = 2 iff G = 2K_2 or G is complete bipartite and not K_2",
        applies: |_, g| need(g.n() >= 1 && g.isolated_vertices().is_empty(), "needs a graph without isolated vertices"),
        check: |ctx, g| {
            let r = reg(ctx, IdealKind::Parity, g)?;
            let fam = reg2_family(g);
            Ok(Outcome::new((r == 2) == fam, json!({"reg": r, "in_family": fam})).param("in_family", fam))
        },
    },
    Claim {
        id: "betti_23_zero",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "beta_{i,i+1}(S/I_G) = 0 for every i != 1; in particular beta_{2,3} = 0",
        applies: |_, _| need(true, ""),
        check: |ctx, g| {
            let bad = entries_where(&ctx.table(IdealKind::Parity, g)?, |i, j| i != 1 && j == i as u32 + 1);
            Ok(Outcome::new(bad.is_empty(), json!({ "nonzero": bad })))
        },
    },
    Claim {
        id: "betti_24_bound",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "G != K_2: beta_{2,4}(S/I_G) >= C(|E|, 2)",
        applies: |_, g| need(!(g.n() == 2 && g.edge_count() == 1), "G must not be K_2"),
        check: |ctx, g| {
            let b = ctx.table(IdealKind::Parity, g)?.get(2, 4);
            let bound = binom(g.edge_count() as u64, 2);
            Ok(Outcome::new(b >= bound, json!({"beta_2_4": b, "bound": bound})))
        },
    },
    Claim {
        id: "colon_no_linear",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "G non-bipartite, G\\e bipartite: beta_{i,i}(S/(I_{G\\e} : gbar_e)) = 0 for i > 0",
        applies: |_, g| need(!colon_edges(g).is_empty(), "needs an edge e with G non-bipartite and G\\e bipartite"),
        check: |ctx, g| {
            let edges = colon_edges(g);
            for &e in &edges {
                let bad = entries_where(&ctx.colon_table(g, e)?, |i, j| i > 0 && j == i as u32);
                if !bad.is_empty() {
                    return Ok(Outcome::new(false, json!({"edge": edge_json(e), "nonzero": bad})));
                }
            }
            Ok(Outcome::new(true, Value::Null).param("edges", edges.len()))
        },
    },
    Claim {
        id: "betti_36_nonzero",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "G non-bipartite: beta_{3,6}(S/I_G) != 0",
        applies: |_, g| need(!g.is_bipartite(), "needs a non-bipartite graph"),
        check: |ctx, g| {
            let b = ctx.table(IdealKind::Parity, g)?.get(3, 6);
            Ok(Outcome::new(b > 0, json!({ "beta_3_6": b })))
        },
    },
    Claim {
        id: "odd_unicyclic_vanishing",
        kind: ClaimKind::Theorem,
        scope: Scope::Connected,
        statement: "G odd unicyclic: beta_{i,j}(S/I_G) = 0 for j > 2i",
        applies: |_, g| need(g.is_connected() && g.classify().is_odd_unicyclic(), "needs a connected unicyclic graph with an odd cycle"),
        check: |ctx, g| {
            let bad = entries_where(&ctx.table(IdealKind::Parity, g)?, |i, j| j > 2 * i as u32);
            Ok(Outcome::new(bad.is_empty(), json!({ "nonzero": bad })))
        },
    },
    Claim {
        id: "chordal_binomial_vanishing",
        kind: ClaimKind::Theorem,
        scope: Scope::Connected,
        statement: "G connected chordal: beta_{i,j}(S/J_G) = 0 for j > 2i",
        applies: |_, g| need(g.is_connected() && g.classify().is_chordal, "needs a connected chordal graph"),
        check: |ctx, g| {
            let bad = entries_where(&ctx.table(IdealKind::Binomial, g)?, |i, j| j > 2 * i as u32);
            Ok(Outcome::new(bad.is_empty(), json!({ "nonzero": bad })))
        },
    },
    Claim {
        id: "diamond_k4_claw_impure",
        kind: ClaimKind::Theorem,
        scope: Scope::Connected,
        statement: "diamond, K_4 and the triangle with a pendant edge: beta_{3,5} and beta_{3,6} of S/I_G are nonzero, so the resolution is not pure",
        applies: |_, g| {
            let named = [Graph::diamond(), Graph::triangle_with_pendant(), Graph::complete(4)?];
            need(named.iter().any(|h| isomorphic(g, h)), "needs the diamond, K_4 or the triangle with a pendant edge")
        },
        check: |ctx, g| {
            let t = ctx.table(IdealKind::Parity, g)?;
            let (b35, b36, pure) = (t.get(3, 5), t.get(3, 6), t.is_pure()?);
            Ok(Outcome::new(b35 > 0 && b36 > 0 && !pure, json!({"beta_3_5": b35, "beta_3_6": b36, "pure": pure})))
        },
    },
    Claim {
        id: "induced_monotonicity",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "H induced in G: beta_{i,j}(S_H/I_H) <= beta_{i,j}(S/I_G), and I_G ∩ S_H = I_H",
        applies: |_, g| need(g.n() >= 2, "needs at least two vertices"),
        check: |ctx, g| {
            let big = ctx.table(IdealKind::Parity, g)?;
            let mut count = 0usize;
            for keep in proper_subsets(g.n()) {
                let h = g.induced_subgraph(&keep)?.graph;
                let small = ctx.table(IdealKind::Parity, &h)?;
                let subset: Vec<usize> = keep.iter().copied().collect();
                if let Some((i, j, b)) = small.entries().find(|&(i, j, b)| b > big.get(i, j)) {
                    let w = json!({"subset": subset, "entry": [i, j], "beta_H": b, "beta_G": big.get(i, j)});
                    return Ok(Outcome::new(false, w));
                }
                if let Some(w) = ctx.subring_identity(g, &keep)? {
                    return Ok(Outcome::new(false, json!({"subset": subset, "ideal_mismatch": w})));
                }
                count += 1;
            }
            Ok(Outcome::new(true, Value::Null).param("subgraphs", count))
        },
    },
    Claim {
        id: "induced_pure",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "S/I_G pure and H induced in G: S_H/I_H pure",
        applies: |ctx, g| need(g.n() >= 2 && ctx.table(IdealKind::Parity, g)?.is_pure()?, "needs a graph with a pure resolution"),
        check: |ctx, g| {
            for keep in proper_subsets(g.n()) {
                let h = g.induced_subgraph(&keep)?.graph;
                if !ctx.table(IdealKind::Parity, &h)?.is_pure()? {
                    let subset: Vec<usize> = keep.into_iter().collect();
                    return Ok(Outcome::new(false, json!({"impure_subset": subset, "subgraph": h.to_graph6()})));
                }
            }
            Ok(Outcome::new(true, Value::Null))
        },
    },
    Claim {
        id: "pure_classification",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "S/I_G is pure iff G is complete bipartite or a disjoint union of odd cycles and paths",
        applies: |_, _| need(true, ""),
        check: |ctx, g| {
            let pure = ctx.table(IdealKind::Parity, g)?.is_pure()?;
            let fam = pure_family(g);
            Ok(Outcome::new(pure == fam, json!({"pure": pure, "in_family": fam})).param("in_family", fam))
        },
    },
    Claim {
        id: "colon_lemma",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "G non-bipartite, G\\e bipartite: I_{G\\e} : gbar_e equals I_{G\\e} plus the f_ij over both endpoint neighborhoods, and Phi(J_{(G\\e)_e})",
        applies: |_, g| need(!colon_edges(g).is_empty(), "needs an edge e with G non-bipartite and G\\e bipartite"),
        check: |ctx, g| {
            let edges = colon_edges(g);
            for &e in &edges {
                if let Some(w) = ctx.colon_three_way(g, e)? {
                    return Ok(Outcome::new(false, json!({"edge": edge_json(e), "mismatch": w})));
                }
            }
            Ok(Outcome::new(true, Value::Null).param("edges", edges.len()))
        },
    },
    Claim {
        id: "phi_identity",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "G bipartite: Phi(J_G) = I_G",
        applies: |_, g| need(g.is_bipartite() && g.edge_count() > 0, "needs a bipartite graph with an edge"),
        check: |ctx, g| Ok(match ctx.phi_identity(g)? {
            None => Outcome::new(true, Value::Null),
            Some(w) => Outcome::new(false, w),
        }),
    },
    Claim {
        id: "eta_identity",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "char != 2: eta(I_G) = Pi_G; char 2: I_G = L_G and Pi_G = J_G",
        applies: |_, g| need(g.edge_count() > 0, "needs an edge"),
        check: |ctx, g| {
            let chars: Vec<u64> = [ctx.config.characteristic, 0, 2].into_iter().collect::<BTreeSet<_>>().into_iter().collect();
            for &ch in &chars {
                if let Some(w) = ctx.eta_identity_at(g, ch)? {
                    return Ok(Outcome::new(false, json!({"characteristic": ch, "mismatch": w})).param("characteristics", chars.clone()));
                }
            }
            Ok(Outcome::new(true, Value::Null).param("characteristics", chars))
        },
    },
    Claim {
        id: "lss_betti_equal",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "the Betti tables of S/L_G and S/I_G coincide",
        applies: |_, g| need(g.edge_count() > 0, "needs an edge"),
        check: |ctx, g| {
            let chars: Vec<u64> = [ctx.config.characteristic, 2].into_iter().collect::<BTreeSet<_>>().into_iter().collect();
            for &ch in &chars {
                let (l, i) = (ctx.table_at(IdealKind::Lss, g, ch)?, ctx.table_at(IdealKind::Parity, g, ch)?);
                if l != i {
                    let w = json!({"characteristic": ch, "lss": l.entries().collect::<Vec<_>>(), "parity": i.entries().collect::<Vec<_>>()});
                    return Ok(Outcome::new(false, w).param("characteristics", chars.clone()));
                }
            }
            Ok(Outcome::new(true, Value::Null).param("characteristics", chars))
        },
    },
    Claim {
        id: "ses_reg_inequality",
        kind: ClaimKind::Theorem,
        scope: Scope::All,
        statement: "G non-bipartite, G\\e bipartite: reg(S/I_G) <= max(reg(S/I_{G\\e}), reg(S/(I_{G\\e} : gbar_e)) + 1)",
        applies: |_, g| need(!colon_edges(g).is_empty(), "needs an edge e with G non-bipartite and G\\e bipartite"),
        check: |ctx, g| {
            let r = reg(ctx, IdealKind::Parity, g)?;
            let edges = colon_edges(g);
            for &e in &edges {
                let r_del = reg(ctx, IdealKind::Parity, &g.delete_edge(e.0, e.1)?)?;
                let r_colon = ctx.colon_table(g, e)?.regularity()?;
                if r > r_del.max(r_colon + 1) {
                    let w = json!({"edge": edge_json(e), "reg": r, "reg_deleted": r_del, "reg_colon": r_colon});
                    return Ok(Outcome::new(false, w));
                }
            }
            Ok(Outcome::new(true, json!({ "reg": r })).param("edges", edges.len()))
        },
    },
    Claim {
        id: "kk_conjecture_probe",
        kind: ClaimKind::Probe,
        scope: Scope::Connected,
        statement: "conjecture, report only: for connected G, longest induced path <= reg(S/I_G) <= n",
        applies: |_, g| need(g.is_connected(), "needs a connected graph"),
        check: |ctx, g| {
            let r = reg(ctx, IdealKind::Parity, g)?;
            let l = g.longest_induced_path_length() as i64;
            Ok(Outcome::new(l <= r && r <= g.n() as i64, json!({"reg": r, "induced_path": l, "n": g.n()})))
        },
    },
    Claim {
        id: "ext_binomial_reg_bound",
        kind: ClaimKind::External,
        scope: Scope::Connected,
        statement: "cited: connected G: reg(S/J_G) <= n-1, with equality exactly for paths",
        applies: |_, g| need(g.n() >= 2 && g.is_connected(), "needs a connected graph with an edge"),
        check: |ctx, g| {
            let r = reg(ctx, IdealKind::Binomial, g)?;
            let n = g.n() as i64;
            let path = g.classify().is_path;
            Ok(Outcome::new(r <= n - 1 && ((r == n - 1) == path), json!({"reg_binomial": r, "n": n, "is_path": path})))
        },
    },
    Claim {
        id: "ext_diamond_binomial_b23",
        kind: ClaimKind::External,
        scope: Scope::Connected,
        statement: "cited: the diamond has beta_{2,3}(S/J_G) = 4",
        applies: |_, g| need(isomorphic(g, &Graph::diamond()), "needs the diamond"),
        check: |ctx, g| {
            let b = ctx.table(IdealKind::Binomial, g)?.get(2, 3);
            Ok(Outcome::new(b == 4, json!({ "beta_2_3": b })))
        },
    },
    Claim {
        id: "ext_claw_b35",
        kind: ClaimKind::External,
        scope: Scope::Connected,
        statement: "cited: the claw has beta_{3,5}(S/I_G) != 0",
        applies: |_, g| need(isomorphic(g, &Graph::claw()), "needs the claw"),
        check: |ctx, g| {
            let b = ctx.table(IdealKind::Parity, g)?.get(3, 5);
            Ok(Outcome::new(b > 0, json!({ "beta_3_5": b })))
        },
    },
    Claim {
        id: "ext_odd_cycles_paths_ci",
        kind: ClaimKind::External,
        scope: Scope::All,
        statement: "cited: for a disjoint union of odd cycles and paths, I_G is a complete intersection, so S/I_G has the Koszul Betti table",
        applies: |_, g| need(g.edge_count() > 0 && is_odd_cycles_and_paths(g), "needs a disjoint union of odd cycles and paths"),
        check: |ctx, g| {
            let t = ctx.table(IdealKind::Parity, g)?;
            let m = g.edge_count() as u64;
            let koszul = t.entries().all(|(i, j, b)| j == 2 * i as u32 && b == binom(m, i as u64)) && t.projective_dimension()? as u64 == m;
            Ok(Outcome::new(koszul, json!({"edges": m, "entries": t.entries().collect::<Vec<_>>()})))
        },
    },
];
