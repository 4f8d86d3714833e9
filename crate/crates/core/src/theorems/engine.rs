//! Field-generic computations behind the claim checkers, dispatched on the
//! characteristic chosen at run time, plus a Betti-table cache shared by all
//! graphs of a sweep.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::error::Result;
use crate::graphs::{canonical_form, CanonicalForm, Graph};
use crate::groebner::{buchberger, colon_ideal, intersect_subring};
use crate::ideals::{
    apply_eta, apply_phi, build_ideal, colon_generators_combinatorial, colon_generators_via_phi, edge_polynomial, EdgePolyKind,
    IdealGenerators, IdealKind,
};
use crate::resolution::{betti_table_schreyer, BettiTable};
use crate::ring::{Field, MonomialOrder, PolyRing, PrimeField, Rationals};

use super::CheckConfig;

/// Runs `$body` with `$f` bound to the field of characteristic `$ch`.
macro_rules! over_field {
    ($ch:expr, $f:ident => $body:expr) => {
        if $ch == 0 {
            let $f = Rationals;
            $body
        } else {
            let $f = PrimeField::new($ch)?;
            $body
        }
    };
}

type CacheKey = (IdealKind, u64, MonomialOrder, CanonicalForm);

/// Betti tables keyed by isomorphism class. Tables are isomorphism
/// invariants, so one entry serves every labeling.
#[derive(Default)]
pub struct TableCache(Mutex<HashMap<CacheKey, BettiTable>>);

pub(crate) struct Ctx {
    pub config: CheckConfig,
    cache: Arc<TableCache>,
}

fn ring<F: Field>(field: F, n: usize, order: MonomialOrder) -> Result<Arc<PolyRing<F>>> {
    PolyRing::new(n, field, order)
}

/// `None` when the two generating sets have the same reduced Gröbner basis,
/// otherwise a description of the difference.
fn mismatch<F: Field>(names: (&str, &str), a: &IdealGenerators<F>, b: &IdealGenerators<F>) -> Result<Option<Value>> {
    let (ga, gb) = (buchberger(a), buchberger(b));
    if ga == gb {
        return Ok(None);
    }
    let mut w = json!({
        "ideals": [names.0, names.1],
        "gb_sizes": [ga.len(), gb.len()],
    });
    for (from, to, key) in [(a, &gb, "not_in_second"), (b, &ga, "not_in_first")] {
        for g in from.generators() {
            if !to.contains(&g.poly)? {
                w[key] = json!(g.poly.to_string());
                break;
            }
        }
    }
    Ok(Some(w))
}

impl Ctx {
    pub fn new(config: CheckConfig, cache: Arc<TableCache>) -> Self {
        Ctx { config, cache }
    }

    pub fn table(&self, kind: IdealKind, g: &Graph) -> Result<BettiTable> {
        self.table_at(kind, g, self.config.characteristic)
    }

    pub fn table_at(&self, kind: IdealKind, g: &Graph, ch: u64) -> Result<BettiTable> {
        let key = (kind, ch, self.config.order, canonical_form(g).0);
        if let Some(t) = self.cache.0.lock().expect("cache lock").get(&key) {
            return Ok(t.clone());
        }
        let order = self.config.order;
        let t = over_field!(ch, f => betti_table_schreyer(&build_ideal(kind, g, &ring(f, g.n(), order)?)?)?);
        self.cache.0.lock().expect("cache lock").insert(key, t.clone());
        Ok(t)
    }

    /// Betti table of `S / (I_{G\e} : gbar_e)`, the colon computed by
    /// elimination.
    pub fn colon_table(&self, g: &Graph, e: (usize, usize)) -> Result<BettiTable> {
        let h = g.delete_edge(e.0, e.1)?;
        let order = self.config.order;
        over_field!(self.config.characteristic, f => {
            let r = ring(f, g.n(), order)?;
            let gbar = edge_polynomial(EdgePolyKind::GBar, e.0, e.1, &r)?;
            betti_table_schreyer(&colon_ideal(&build_ideal(IdealKind::Parity, &h, &r)?, &gbar)?)
        })
    }

    /// Compares the three descriptions of the colon ideal pairwise.
    pub fn colon_three_way(&self, g: &Graph, e: (usize, usize)) -> Result<Option<Value>> {
        let h = g.delete_edge(e.0, e.1)?;
        let order = self.config.order;
        over_field!(self.config.characteristic, f => {
            let r = ring(f, g.n(), order)?;
            let gbar = edge_polynomial(EdgePolyKind::GBar, e.0, e.1, &r)?;
            let comb = colon_generators_combinatorial(g, e, &r)?;
            let elim = colon_ideal(&build_ideal(IdealKind::Parity, &h, &r)?, &gbar)?;
            let phi = colon_generators_via_phi(g, e, &r)?;
            if let Some(w) = mismatch(("combinatorial", "groebner_colon"), &comb, &elim)? {
                return Ok(Some(w));
            }
            mismatch(("groebner_colon", "phi_of_binomial_completion"), &elim, &phi)
        })
    }

    /// `Phi(J_G) = I_G` for a bipartite graph.
    pub fn phi_identity(&self, g: &Graph) -> Result<Option<Value>> {
        let (v1, v2) = g.bipartition().ok_or_else(|| crate::Error::Hypothesis("graph is not bipartite".into()))?;
        let order = self.config.order;
        over_field!(self.config.characteristic, f => {
            let r = ring(f, g.n(), order)?;
            let image = build_ideal(IdealKind::Binomial, g, &r)?.map(|p| apply_phi(p, &v1, &v2))?;
            mismatch(("phi(J_G)", "I_G"), &image, &build_ideal(IdealKind::Parity, g, &r)?)
        })
    }

    /// Away from characteristic 2, `eta(I_G) = Pi_G`; in characteristic 2,
    /// `I_G = L_G` and `Pi_G = J_G`.
    pub fn eta_identity_at(&self, g: &Graph, ch: u64) -> Result<Option<Value>> {
        let order = self.config.order;
        over_field!(ch, f => {
            let r = ring(f, g.n(), order)?;
            let build = |k| build_ideal(k, g, &r);
            if ch == 2 {
                if let Some(w) = mismatch(("I_G", "L_G"), &build(IdealKind::Parity)?, &build(IdealKind::Lss)?)? {
                    return Ok(Some(w));
                }
                mismatch(("Pi_G", "J_G"), &build(IdealKind::Permanental)?, &build(IdealKind::Binomial)?)
            } else {
                let image = build(IdealKind::Parity)?.map(apply_eta)?;
                mismatch(("eta(I_G)", "Pi_G"), &image, &build(IdealKind::Permanental)?)
            }
        })
    }

    /// `I_G ∩ S_H = I_H` for the induced subgraph on `keep`, with `I_H`
    /// written in the variables of `S`.
    pub fn subring_identity(&self, g: &Graph, keep: &BTreeSet<usize>) -> Result<Option<Value>> {
        let inside: Vec<(usize, usize)> = g.edges().into_iter().filter(|(a, b)| keep.contains(a) && keep.contains(b)).collect();
        let h = Graph::from_edges(g.n(), &inside)?;
        let order = self.config.order;
        over_field!(self.config.characteristic, f => {
            let r = ring(f, g.n(), order)?;
            let contracted = intersect_subring(&build_ideal(IdealKind::Parity, g, &r)?, keep)?;
            mismatch(("I_G ∩ S_H", "I_H"), &contracted, &build_ideal(IdealKind::Parity, &h, &r)?)
        })
    }
}
