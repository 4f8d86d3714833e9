//! The four edge ideals of a graph, the substitutions relating them, and the
//! combinatorial generating set of the colon ideal `I_{G\e} : gbar_e`.
//!
//! For an edge `{i,j}`, `i < j`:
//!
//! | kind        | edge polynomial        | ideal  |
//! |-------------|------------------------|--------|
//! | `F`         | `x_i y_j - x_j y_i`    | `J_G`  |
//! | `G`         | `x_i x_j + y_i y_j`    | `L_G`  |
//! | `GBar`      | `x_i x_j - y_i y_j`    | `I_G`  |
//! | `Perm`      | `x_i y_j + x_j y_i`    | `Pi_G` |

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{CompletionTarget, Graph};
use crate::ring::{Field, PolyRing, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgePolyKind {
    F,
    G,
    GBar,
    Perm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdealKind {
    Parity,
    Binomial,
    Lss,
    Permanental,
    Custom,
}

impl IdealKind {
    pub const GRAPH_KINDS: [IdealKind; 4] = [IdealKind::Parity, IdealKind::Binomial, IdealKind::Lss, IdealKind::Permanental];

    pub fn edge_kind(self) -> Option<EdgePolyKind> {
        match self {
            IdealKind::Parity => Some(EdgePolyKind::GBar),
            IdealKind::Binomial => Some(EdgePolyKind::F),
            IdealKind::Lss => Some(EdgePolyKind::G),
            IdealKind::Permanental => Some(EdgePolyKind::Perm),
            IdealKind::Custom => None,
        }
    }
}

impl FromStr for IdealKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "parity" | "i" => Ok(IdealKind::Parity),
            "binomial" | "j" => Ok(IdealKind::Binomial),
            "lss" | "l" => Ok(IdealKind::Lss),
            "permanental" | "pi" => Ok(IdealKind::Permanental),
            _ => Err(Error::Parse(format!("unknown ideal kind `{s}` (parity, binomial, lss, permanental)"))),
        }
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdealKind::Parity => "parity",
            IdealKind::Binomial => "binomial",
            IdealKind::Lss => "lss",
            IdealKind::Permanental => "permanental",
            IdealKind::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// Where a generator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub edge: Option<(usize, usize)>,
    pub kind: Option<EdgePolyKind>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator<F: Field> {
    pub poly: Polynomial<F>,
    pub provenance: Provenance,
}

/// An ordered generator list in a fixed ring.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealGenerators<F: Field> {
    ring: Arc<PolyRing<F>>,
    kind: IdealKind,
    gens: Vec<Generator<F>>,
}

impl<F: Field> IdealGenerators<F> {
    /// Generators without edge provenance. Zero polynomials are dropped.
    pub fn custom(ring: &Arc<PolyRing<F>>, polys: Vec<Polynomial<F>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(polys.len());
        for p in polys {
            if !Arc::ptr_eq(p.ring(), ring) && **p.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if !p.is_zero() {
                gens.push(Generator { poly: p, provenance: Provenance { edge: None, kind: None } });
            }
        }
        Ok(IdealGenerators { ring: ring.clone(), kind: IdealKind::Custom, gens })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn generators(&self) -> &[Generator<F>] {
        &self.gens
    }

    pub fn polys(&self) -> Vec<Polynomial<F>> {
        self.gens.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Applies `f` to every generator, keeping provenance, marking the result
    /// as custom.
    pub fn map(&self, f: impl Fn(&Polynomial<F>) -> Result<Polynomial<F>>) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| Ok(Generator { poly: f(&g.poly)?, provenance: g.provenance }))
            .collect::<Result<Vec<_>>>()?;
        let gens = gens.into_iter().filter(|g| !g.poly.is_zero()).collect();
        Ok(IdealGenerators { ring: self.ring.clone(), kind: IdealKind::Custom, gens })
    }

    /// Same ideal with generators reordered by `perm` (`perm[k]` is the old
    /// index of the new `k`-th generator).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.gens.len());
        let gens = perm.iter().map(|&k| self.gens[k].clone()).collect();
        IdealGenerators { gens, ..self.clone() }
    }

    /// Concatenation of generator lists.
    pub fn extended(&self, more: &[Polynomial<F>]) -> Result<Self> {
        let mut out = IdealGenerators::custom(&self.ring, more.to_vec())?;
        let mut gens = self.gens.clone();
        gens.append(&mut out.gens);
        out.gens = gens;
        Ok(out)
    }

    /// Every generator homogeneous of standard degree 2 and multihomogeneous.
    pub fn all_multihomogeneous_quadrics(&self) -> bool {
        self.gens.iter().all(|g| g.poly.standard_degree() == Some(2) && g.poly.multidegree().is_some())
    }
}

impl<F: Field> fmt::Display for IdealGenerators<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gens {
            writeln!(f, "{}", g.poly)?;
        }
        Ok(())
    }
}

/// The edge polynomial of `kind` on `{i, j}`, normalized to `i < j`.
pub fn edge_polynomial<F: Field>(kind: EdgePolyKind, i: usize, j: usize, ring: &Arc<PolyRing<F>>) -> Result<Polynomial<F>> {
    if i == j {
        return Err(Error::Loop(i));
    }
    for v in [i, j] {
        if v == 0 || v > ring.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: ring.n() });
        }
    }
    let (i, j) = (i.min(j), i.max(j));
    let xx = ring.x(i).mul(&ring.x(j))?;
    let yy = ring.y(i).mul(&ring.y(j))?;
    let xiyj = ring.x(i).mul(&ring.y(j))?;
    let xjyi = ring.x(j).mul(&ring.y(i))?;
    match kind {
        EdgePolyKind::F => xiyj.sub(&xjyi),
        EdgePolyKind::G => xx.add(&yy),
        EdgePolyKind::GBar => xx.sub(&yy),
        EdgePolyKind::Perm => xiyj.add(&xjyi),
    }
}

/// One generator per edge of `g`, in edge order.
pub fn build_ideal<F: Field>(kind: IdealKind, g: &Graph, ring: &Arc<PolyRing<F>>) -> Result<IdealGenerators<F>> {
    if ring.n() != g.n() {
        return Err(Error::Hypothesis(format!("ring has n = {} but graph has {} vertices", ring.n(), g.n())));
    }
    let edge_kind = kind
        .edge_kind()
        .ok_or_else(|| Error::Hypothesis("custom ideals are not built from graphs".into()))?;
    let gens = g
        .edges()
        .into_iter()
        .map(|(i, j)| {
            Ok(Generator { poly: edge_polynomial(edge_kind, i, j, ring)?, provenance: Provenance { edge: Some((i, j)), kind: Some(edge_kind) } })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealGenerators { ring: ring.clone(), kind, gens })
}

fn check_bipartition(n: usize, v1: &[usize], v2: &[usize]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &v in v1.iter().chain(v2) {
        if v == 0 || v > n {
            return Err(Error::InvalidBipartition(format!("vertex {v} outside 1..={n}")));
        }
        if !seen.insert(v) {
            return Err(Error::InvalidBipartition(format!("vertex {v} appears twice")));
        }
    }
    if seen.len() != n {
        return Err(Error::InvalidBipartition(format!("covers {} of {n} vertices", seen.len())));
    }
    Ok(())
}

/// `Phi`: fixes `x_i, y_i` for `i` in `V1` and swaps `x_i <-> y_i` for `i`
/// in `V2`. An involution.
pub fn apply_phi<F: Field>(f: &Polynomial<F>, v1: &[usize], v2: &[usize]) -> Result<Polynomial<F>> {
    let ring = f.ring();
    check_bipartition(ring.n(), v1, v2)?;
    let mut map: Vec<usize> = (0..ring.nvars()).collect();
    for &v in v2 {
        map[ring.x_index(v)] = ring.y_index(v);
        map[ring.y_index(v)] = ring.x_index(v);
    }
    Ok(f.map_variables(ring, &map))
}

/// `eta`: `x_i -> x_i + y_i`, `y_i -> x_i - y_i`. Not rescaled. Rejected in
/// characteristic 2, where it is not invertible.
pub fn apply_eta<F: Field>(f: &Polynomial<F>) -> Result<Polynomial<F>> {
    let ring = f.ring();
    if ring.field().characteristic() == 2 {
        return Err(Error::EtaInCharacteristicTwo);
    }
    let mut images = Vec::with_capacity(ring.nvars());
    for k in 0..ring.nvars() {
        images.push(match ring.vertex_of(k) {
            Some(i) if k < ring.n() => ring.x(i).add(&ring.y(i))?,
            Some(i) => ring.x(i).sub(&ring.y(i))?,
            None => ring.var(k),
        });
    }
    f.substitute(&images)
}

/// Checks the hypotheses under which the colon `I_{G\e} : gbar_e` has the
/// combinatorial description: `G` non-bipartite, `e` an edge, `G\e`
/// bipartite. Returns `G\e`.
pub fn colon_hypotheses(g: &Graph, e: (usize, usize)) -> Result<Graph> {
    if g.is_bipartite() {
        return Err(Error::Hypothesis("G must be non-bipartite".into()));
    }
    if !g.has_edge(e.0, e.1) {
        return Err(Error::Hypothesis(format!("{{{},{}}} must be an edge of G", e.0, e.1)));
    }
    let h = g.delete_edge(e.0, e.1)?;
    if !h.is_bipartite() {
        return Err(Error::Hypothesis(format!("G \\ {{{},{}}} must be bipartite", e.0, e.1)));
    }
    Ok(h)
}

/// `I_{G\e} + (f_{i,j} : i,j in N_{G\e}(u) or i,j in N_{G\e}(v))`.
pub fn colon_generators_combinatorial<F: Field>(g: &Graph, e: (usize, usize), ring: &Arc<PolyRing<F>>) -> Result<IdealGenerators<F>> {
    let h = colon_hypotheses(g, e)?;
    let mut out = build_ideal(IdealKind::Parity, &h, ring)?;
    out.kind = IdealKind::Custom;
    let mut pairs = BTreeSet::new();
    for center in [e.0, e.1] {
        let nb = h.neighbors(center);
        for (k, &a) in nb.iter().enumerate() {
            for &b in &nb[k + 1..] {
                pairs.insert((a, b));
            }
        }
    }
    for (a, b) in pairs {
        out.gens.push(Generator {
            poly: edge_polynomial(EdgePolyKind::F, a, b, ring)?,
            provenance: Provenance { edge: Some((a, b)), kind: Some(EdgePolyKind::F) },
        });
    }
    Ok(out)
}

/// `Phi(J_{(G\e)_e})` under the bipartition of `G\e`: the third description
/// of the colon ideal.
pub fn colon_generators_via_phi<F: Field>(g: &Graph, e: (usize, usize), ring: &Arc<PolyRing<F>>) -> Result<IdealGenerators<F>> {
    let h = colon_hypotheses(g, e)?;
    let (v1, v2) = h.bipartition().expect("checked bipartite");
    let completed = h.neighborhood_completion(CompletionTarget::NonEdge(e.0, e.1))?;
    build_ideal(IdealKind::Binomial, &completed, ring)?.map(|p| apply_phi(p, &v1, &v2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, PrimeField, Rationals};

    fn q(n: usize) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(n, Rationals, MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn edge_polynomials() {
        let r = q(2);
        assert_eq!(edge_polynomial(EdgePolyKind::GBar, 1, 2, &r).unwrap(), r.parse("x1*x2 - y1*y2").unwrap());
        assert_eq!(edge_polynomial(EdgePolyKind::F, 2, 1, &r).unwrap(), r.parse("x1*y2 - x2*y1").unwrap());
        assert_eq!(edge_polynomial(EdgePolyKind::Perm, 1, 2, &r).unwrap(), r.parse("x1*y2 + x2*y1").unwrap());
        assert_eq!(edge_polynomial(EdgePolyKind::G, 1, 2, &r).unwrap(), r.parse("x1*x2 + y1*y2").unwrap());
        assert_eq!(edge_polynomial(EdgePolyKind::F, 1, 1, &r), Err(Error::Loop(1)));
    }

    #[test]
    fn build_examples() {
        let r = q(3);
        let c3 = build_ideal(IdealKind::Parity, &Graph::cycle(3).unwrap(), &r).unwrap();
        let expect: Vec<_> = ["x1*x2 - y1*y2", "x1*x3 - y1*y3", "x2*x3 - y2*y3"].iter().map(|s| r.parse(s).unwrap()).collect();
        assert_eq!(c3.polys(), expect);
        assert_eq!(c3.generators()[1].provenance.edge, Some((1, 3)));
        let p3 = build_ideal(IdealKind::Binomial, &Graph::path(3).unwrap(), &r).unwrap();
        assert_eq!(p3.polys(), vec![r.parse("x1*y2 - x2*y1").unwrap(), r.parse("x2*y3 - x3*y2").unwrap()]);
        assert!(c3.all_multihomogeneous_quadrics());
        assert!(build_ideal(IdealKind::Parity, &Graph::path(2).unwrap(), &r).is_err());
    }

    #[test]
    fn phi_examples() {
        let r = q(2);
        let f = r.parse("x1*y2 - x2*y1").unwrap();
        let image = apply_phi(&f, &[1], &[2]).unwrap();
        assert_eq!(image, r.parse("x1*x2 - y1*y2").unwrap());
        assert_eq!(apply_phi(&image, &[1], &[2]).unwrap(), f);
        let r3 = q(3);
        let g13 = r3.parse("x1*x3 - y1*y3").unwrap();
        assert_eq!(apply_phi(&g13, &[1, 3], &[2]).unwrap(), g13);
        assert!(apply_phi(&g13, &[1, 2], &[2, 3]).is_err());
        assert!(apply_phi(&g13, &[1], &[2]).is_err());
    }

    #[test]
    fn eta_examples() {
        let r = q(2);
        let gbar = r.parse("x1*x2 - y1*y2").unwrap();
        assert_eq!(apply_eta(&gbar).unwrap(), r.parse("2*x1*y2 + 2*x2*y1").unwrap());
        assert!(apply_eta(&r.zero()).unwrap().is_zero());
        assert_eq!(apply_eta(&apply_eta(&r.x(1)).unwrap()).unwrap(), r.parse("2*x1").unwrap());
        let r2 = PolyRing::new(2, PrimeField::new(2).unwrap(), MonomialOrder::DegRevLex).unwrap();
        assert_eq!(apply_eta(&r2.x(1)), Err(Error::EtaInCharacteristicTwo));
    }

    #[test]
    fn char_two_identifies_ideal_kinds() {
        let r = PolyRing::new(3, PrimeField::new(2).unwrap(), MonomialOrder::DegRevLex).unwrap();
        let g = Graph::cycle(3).unwrap();
        assert_eq!(build_ideal(IdealKind::Parity, &g, &r).unwrap().polys(), build_ideal(IdealKind::Lss, &g, &r).unwrap().polys());
        assert_eq!(
            build_ideal(IdealKind::Permanental, &g, &r).unwrap().polys(),
            build_ideal(IdealKind::Binomial, &g, &r).unwrap().polys()
        );
    }

    #[test]
    fn combinatorial_colon_examples() {
        let r = q(3);
        let c3 = Graph::cycle(3).unwrap();
        let colon = colon_generators_combinatorial(&c3, (2, 3), &r).unwrap();
        let path = c3.delete_edge(2, 3).unwrap();
        assert_eq!(colon.polys(), build_ideal(IdealKind::Parity, &path, &r).unwrap().polys());

        let r5 = q(5);
        let c5 = Graph::cycle(5).unwrap();
        let colon = colon_generators_combinatorial(&c5, (1, 2), &r5).unwrap();
        assert_eq!(colon.len(), 4);

        let r4 = q(4);
        let paw = Graph::triangle_with_pendant();
        let colon = colon_generators_combinatorial(&paw, (1, 2), &r4).unwrap();
        assert_eq!(colon.len(), 3);

        let diamond = Graph::diamond();
        // G\{2,3} is C4, N(2) = {1,4} = N(3) adds f_{1,4}
        let colon = colon_generators_combinatorial(&diamond, (2, 3), &r4).unwrap();
        assert_eq!(colon.len(), 5);
        assert_eq!(colon.polys()[4], edge_polynomial(EdgePolyKind::F, 1, 4, &r4).unwrap());
    }

    #[test]
    fn colon_hypothesis_failures_are_named() {
        let r = q(4);
        let c4 = Graph::cycle(4).unwrap();
        assert!(matches!(colon_generators_combinatorial(&c4, (1, 2), &r), Err(Error::Hypothesis(m)) if m.contains("non-bipartite")));
        let k4 = Graph::complete(4).unwrap();
        assert!(matches!(colon_generators_combinatorial(&k4, (1, 2), &r), Err(Error::Hypothesis(m)) if m.contains("bipartite")));
        let paw = Graph::triangle_with_pendant();
        assert!(matches!(colon_generators_combinatorial(&paw, (1, 4), &r), Err(Error::Hypothesis(m)) if m.contains("edge")));
    }
}
