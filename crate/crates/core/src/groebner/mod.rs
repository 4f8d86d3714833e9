//! Buchberger's algorithm with the Gebauer–Möller pair update, normal forms,
//! ideal equality, colon ideals and elimination.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideals::{IdealGenerators, IdealKind};
use crate::ring::{Field, Monomial, MonomialOrder, PolyRing, Polynomial, Term, MAX_VARS};

/// A reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    basis: Vec<Polynomial<F>>,
    source: IdealKind,
    stats: GbStats,
}

/// Counters from one Buchberger run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_skipped: usize,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.basis == other.basis
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn source(&self) -> IdealKind {
        self.source
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// The unit ideal.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].leading_monomial().is_some_and(Monomial::is_one)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|p| *p.leading_monomial().expect("nonzero")).collect()
    }

    pub fn to_generators(&self) -> IdealGenerators<F> {
        IdealGenerators::custom(&self.ring, self.basis.clone()).expect("same ring")
    }

    fn reducer(&self) -> Reducer<'_, F> {
        Reducer::new(&self.ring, self.basis.iter().map(|p| p.terms()).collect())
    }

    /// Remainder of full multivariate division.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if **f.ring() != *self.ring {
            return Err(Error::RingMismatch);
        }
        let r = self.reducer().reduce(f.terms().to_vec(), true);
        Ok(self.ring.from_terms(r))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Standard monomials are those not divisible by any leading monomial.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.basis.iter().all(|p| !p.leading_monomial().expect("nonzero").divides(m))
    }

    /// Recomputes every S-polynomial of the basis and checks that it reduces
    /// to zero, and that the basis is reduced.
    pub fn self_check(&self) -> Result<()> {
        let red = self.reducer();
        let field = self.ring.field();
        for (a, p) in self.basis.iter().enumerate() {
            let others: Vec<&[Term<F>]> = self.basis.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, q)| q.terms()).collect();
            let rest = Reducer::new(&self.ring, others);
            if rest.reduce(p.terms().to_vec(), true) != p.terms() {
                return Err(Error::Internal(format!("basis element {p} is not reduced")));
            }
            for q in &self.basis[a + 1..] {
                let s = s_polynomial(&self.ring, p.terms(), q.terms());
                if !red.reduce(s, false).is_empty() {
                    return Err(Error::Internal(format!("S-polynomial of {p} and {q} does not reduce to zero")));
                }
            }
            if !field.is_one(p.leading_coefficient().expect("nonzero")) && field.characteristic() != 0 {
                return Err(Error::Internal(format!("basis element {p} is not monic")));
            }
        }
        Ok(())
    }
}

fn support_mask(m: &Monomial) -> u32 {
    let mut mask = 0u32;
    for (k, &e) in m.exponents().iter().enumerate().take(MAX_VARS) {
        if e != 0 {
            mask |= 1 << k;
        }
    }
    mask
}

/// Divisor lookup over a fixed list of polynomials.
struct Reducer<'a, F: Field> {
    ring: &'a PolyRing<F>,
    polys: Vec<&'a [Term<F>]>,
    masks: Vec<u32>,
}

impl<'a, F: Field> Reducer<'a, F> {
    fn new(ring: &'a PolyRing<F>, polys: Vec<&'a [Term<F>]>) -> Self {
        let masks = polys.iter().map(|p| support_mask(&p[0].0)).collect();
        Reducer { ring, polys, masks }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let mm = support_mask(m);
        (0..self.polys.len()).find(|&k| self.masks[k] & !mm == 0 && self.polys[k][0].0.divides(m))
    }

    /// Reduces `p`; with `full` the tail is reduced too, otherwise the
    /// result is only top-reduced.
    fn reduce(&self, mut p: Vec<Term<F>>, full: bool) -> Vec<Term<F>> {
        let field = self.ring.field();
        let mut done: Vec<Term<F>> = Vec::new();
        while let Some((m, c)) = p.first().cloned() {
            match self.find(&m) {
                Some(k) => {
                    let g = self.polys[k];
                    let s = field.neg(&field.div(&c, &g[0].1));
                    let q = m.div(&g[0].0);
                    p = crate::ring::add_scaled(self.ring, &p, &s, &q, g);
                }
                None if full => {
                    done.push(p.remove(0));
                }
                None => break,
            }
        }
        if full {
            done
        } else {
            p
        }
    }
}

fn s_polynomial<F: Field>(ring: &PolyRing<F>, a: &[Term<F>], b: &[Term<F>]) -> Vec<Term<F>> {
    let field = ring.field();
    let l = a[0].0.lcm(&b[0].0);
    let ca = field.inv(&a[0].1);
    let cb = field.neg(&field.inv(&b[0].1));
    let left = crate::ring::add_scaled(ring, &[], &ca, &l.div(&a[0].0), a);
    crate::ring::add_scaled(ring, &left, &cb, &l.div(&b[0].0), b)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<F: Field>(gens: &IdealGenerators<F>) -> GroebnerBasis<F> {
    let mut gb = groebner_basis(gens.ring(), gens.polys());
    gb.source = gens.kind();
    gb
}

/// Reduced Gröbner basis of the ideal generated by `polys` in `ring`.
pub fn groebner_basis<F: Field>(ring: &Arc<PolyRing<F>>, polys: Vec<Polynomial<F>>) -> GroebnerBasis<F> {
    let mut stats = GbStats::default();
    let mut all: Vec<Vec<Term<F>>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    // (lcm degree, i, j) -> pair, giving the normal strategy with index ties
    let mut pairs: BTreeMap<(u32, usize, usize), Pair> = BTreeMap::new();

    let normalize = |t: Vec<Term<F>>| -> Vec<Term<F>> { ring.from_terms(t).normalized().into_terms() };

    let mut pending: Vec<Vec<Term<F>>> = Vec::new();
    for p in polys {
        if !p.is_zero() {
            pending.push(p.normalized().into_terms());
        }
    }
    for p in pending {
        let red = Reducer::new(ring, all.iter().map(|v| v.as_slice()).collect());
        let r = red.reduce(p, false);
        if r.is_empty() {
            continue;
        }
        let r = normalize(r);
        insert::<F>(&mut all, &mut active, &mut pairs, r, &mut stats);
    }

    while let Some((_, pair)) = pairs.pop_first() {
        stats.pairs_reduced += 1;
        let s = s_polynomial(ring, &all[pair.i], &all[pair.j]);
        let red = Reducer::new(ring, active.iter().map(|&k| all[k].as_slice()).collect());
        let r = red.reduce(s, false);
        if r.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        let r = normalize(r);
        insert::<F>(&mut all, &mut active, &mut pairs, r, &mut stats);
    }

    // interreduce the active set into the reduced basis
    let mut minimal: Vec<Vec<Term<F>>> = Vec::new();
    for &k in &active {
        let lm = all[k][0].0;
        let dominated = active.iter().any(|&o| o != k && all[o][0].0.divides(&lm) && (all[o][0].0 != lm || o < k));
        if !dominated {
            minimal.push(all[k].clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&[Term<F>]> = minimal.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, p)| p.as_slice()).collect();
        let red = Reducer::new(ring, others);
        let head = minimal[k][0].clone();
        let mut tail = red.reduce(minimal[k][1..].to_vec(), true);
        tail.insert(0, head);
        reduced.push(ring.from_terms(tail).normalized());
    }
    reduced.sort_by(|a, b| ring.cmp(a.leading_monomial().expect("nonzero"), b.leading_monomial().expect("nonzero")));
    GroebnerBasis { ring: ring.clone(), basis: reduced, source: IdealKind::Custom, stats }
}

/// Adds `h` to the basis with the Gebauer–Möller update, which applies the
/// coprime (first) and chain (second) criteria.
fn insert<F: Field>(
    all: &mut Vec<Vec<Term<F>>>,
    active: &mut Vec<usize>,
    pairs: &mut BTreeMap<(u32, usize, usize), Pair>,
    h: Vec<Term<F>>,
    stats: &mut GbStats,
) {
    let hi = all.len();
    let hm = h[0].0;
    all.push(h);

    let mut candidates: Vec<(usize, Monomial, bool)> =
        active.iter().map(|&g| (g, all[g][0].0.lcm(&hm), all[g][0].0.is_coprime(&hm))).collect();
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some((g, l, coprime)) = candidates.pop() {
        let divisible = |c: &(usize, Monomial, bool)| c.1.divides(&l);
        if coprime || (!candidates.iter().any(divisible) && !kept.iter().any(divisible)) {
            kept.push((g, l, coprime));
        } else {
            stats.pairs_skipped += 1;
        }
    }

    let before = pairs.len();
    pairs.retain(|_, p| {
        let drop = hm.divides(&p.lcm) && all[p.i][0].0.lcm(&hm) != p.lcm && all[p.j][0].0.lcm(&hm) != p.lcm;
        !drop
    });
    stats.pairs_skipped += before - pairs.len();

    for (g, l, coprime) in kept {
        if coprime {
            stats.pairs_skipped += 1;
            continue;
        }
        pairs.insert((l.degree(), g, hi), Pair { i: g, j: hi, lcm: l });
    }

    active.retain(|&g| !hm.divides(&all[g][0].0));
    active.push(hi);
}

/// `f` modulo the Gröbner basis.
pub fn normal_form<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Result<Polynomial<F>> {
    gb.normal_form(f)
}

pub fn membership<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Result<bool> {
    gb.contains(f)
}

/// Whether the two generator lists generate the same ideal.
pub fn ideal_equal<F: Field>(a: &IdealGenerators<F>, b: &IdealGenerators<F>) -> Result<bool> {
    if **a.ring() != **b.ring() {
        return Err(Error::RingMismatch);
    }
    let ga = buchberger(a);
    let gb = buchberger(b);
    for g in a.generators() {
        if !gb.contains(&g.poly)? {
            return Ok(false);
        }
    }
    for g in b.generators() {
        if !ga.contains(&g.poly)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact quotient `p / f`, or `None` if `f` does not divide `p`.
pub fn divide_exact<F: Field>(p: &Polynomial<F>, f: &Polynomial<F>) -> Option<Polynomial<F>> {
    let ring = p.ring();
    let field = ring.field();
    let (fm, fc) = f.terms().first()?;
    let mut rest = p.terms().to_vec();
    let mut quotient = Vec::new();
    while let Some((m, c)) = rest.first().cloned() {
        let q = m.checked_div(fm)?;
        let s = field.div(&c, fc);
        rest = crate::ring::add_scaled(ring, &rest, &field.neg(&s), &q, f.terms());
        quotient.push((q, s));
    }
    Some(ring.from_terms(quotient))
}

/// Generators of `(i : f)` via `(t*i + (1-t)*f) ∩ S` and exact division.
pub fn colon_ideal<F: Field>(i: &IdealGenerators<F>, f: &Polynomial<F>) -> Result<IdealGenerators<F>> {
    let ring = i.ring();
    if **f.ring() != **ring {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Err(Error::Hypothesis("colon by the zero polynomial".into()));
    }
    if i.is_empty() {
        return IdealGenerators::custom(ring, Vec::new());
    }
    let t_index = ring.nvars();
    let big = PolyRing::with_aux(ring.n(), ring.aux() + 1, ring.field().clone(), MonomialOrder::Elimination(1 << t_index))?;
    let t = big.var(t_index);
    let one_minus_t = big.one().sub(&t)?;
    let mut gens = Vec::with_capacity(i.len() + 1);
    for g in i.generators() {
        gens.push(t.mul(&g.poly.embed(&big))?);
    }
    gens.push(one_minus_t.mul(&f.embed(&big))?);
    let gb = groebner_basis(&big, gens);
    let back: Vec<usize> = (0..big.nvars()).map(|k| k.min(ring.nvars().saturating_sub(1))).collect();
    let mut out = Vec::new();
    for p in gb.basis() {
        if p.terms().iter().any(|(m, _)| m.exponent(t_index) != 0) {
            continue;
        }
        let in_s = p.map_variables(ring, &back);
        let q = divide_exact(&in_s, f).ok_or_else(|| Error::Internal(format!("{f} does not divide {in_s}")))?;
        out.push(q.normalized());
    }
    IdealGenerators::custom(ring, out)
}

/// Generators of `i ∩ K[x_k, y_k : k in keep]`, as polynomials of the
/// original ring.
pub fn intersect_subring<F: Field>(i: &IdealGenerators<F>, keep: &BTreeSet<usize>) -> Result<IdealGenerators<F>> {
    let ring = i.ring();
    let mut mask = 0u32;
    for v in 1..=ring.n() {
        if !keep.contains(&v) {
            mask |= 1 << ring.x_index(v) | 1 << ring.y_index(v);
        }
    }
    for &v in keep {
        if v == 0 || v > ring.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: ring.n() });
        }
    }
    for k in 2 * ring.n()..ring.nvars() {
        mask |= 1 << k;
    }
    let elim = ring.reordered(MonomialOrder::Elimination(mask));
    let gb = groebner_basis(&elim, i.polys().iter().map(|p| p.embed(&elim)).collect());
    let kept = gb
        .basis()
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| support_mask(m) & mask == 0))
        .map(|p| p.embed(ring))
        .collect();
    IdealGenerators::custom(ring, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;
    use crate::ideals::{build_ideal, edge_polynomial, EdgePolyKind};
    use crate::ring::{PrimeField, Rationals};

    fn q(n: usize) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(n, Rationals, MonomialOrder::DegRevLex).unwrap()
    }

    fn fp(n: usize) -> Arc<PolyRing<PrimeField>> {
        PolyRing::new(n, PrimeField::new(32003).unwrap(), MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let r = q(2);
        let i = build_ideal(IdealKind::Parity, &Graph::path(2).unwrap(), &r).unwrap();
        let gb = buchberger(&i);
        assert_eq!(gb.basis(), i.polys().as_slice());
        gb.self_check().unwrap();
    }

    #[test]
    fn disjoint_edges_keep_generators() {
        let r = q(4);
        let g = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        let i = build_ideal(IdealKind::Parity, &g, &r).unwrap();
        let gb = buchberger(&i);
        assert_eq!(gb.len(), 2);
        for p in i.polys() {
            assert!(gb.basis().contains(&p));
        }
    }

    #[test]
    fn triangle_basis_has_quadrics_and_cubics() {
        let r = fp(3);
        let i = build_ideal(IdealKind::Parity, &Graph::cycle(3).unwrap(), &r).unwrap();
        let gb = buchberger(&i);
        gb.self_check().unwrap();
        let degrees: BTreeSet<u32> = gb.leading_monomials().iter().map(|m| m.degree()).collect();
        assert!(degrees.contains(&2) && degrees.contains(&3), "{degrees:?}");
        assert!(degrees.iter().all(|d| *d <= 4), "{degrees:?}");
        let x2 = r.x(2);
        let g13 = edge_polynomial(EdgePolyKind::GBar, 1, 3, &r).unwrap();
        assert!(gb.contains(&g13.mul(&x2).unwrap()).unwrap());
    }

    #[test]
    fn normal_form_examples() {
        let r = q(2);
        let i = build_ideal(IdealKind::Parity, &Graph::path(2).unwrap(), &r).unwrap();
        let gb = buchberger(&i);
        assert!(gb.normal_form(&i.polys()[0]).unwrap().is_zero());
        let f12 = edge_polynomial(EdgePolyKind::F, 1, 2, &r).unwrap();
        let nf = gb.normal_form(&f12).unwrap();
        assert!(!nf.is_zero());
        assert_eq!(gb.normal_form(&nf).unwrap(), nf);
        let other = q(3);
        assert_eq!(gb.normal_form(&other.x(1)), Err(Error::RingMismatch));
    }

    #[test]
    fn ideal_equality_examples() {
        let r = q(2);
        let k2 = build_ideal(IdealKind::Parity, &Graph::path(2).unwrap(), &r).unwrap();
        let doubled = IdealGenerators::custom(&r, vec![r.parse("2*x1*x2 - 2*y1*y2").unwrap()]).unwrap();
        assert!(ideal_equal(&k2, &doubled).unwrap());

        let c3 = Graph::cycle(3).unwrap();
        let r2 = PolyRing::new(3, PrimeField::new(2).unwrap(), MonomialOrder::DegRevLex).unwrap();
        let i = build_ideal(IdealKind::Parity, &c3, &r2).unwrap();
        let l = build_ideal(IdealKind::Lss, &c3, &r2).unwrap();
        assert!(ideal_equal(&i, &l).unwrap());

        let r3 = q(3);
        let i = build_ideal(IdealKind::Parity, &c3, &r3).unwrap();
        let l = build_ideal(IdealKind::Lss, &c3, &r3).unwrap();
        assert!(!ideal_equal(&i, &l).unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = q(2);
        let k2 = build_ideal(IdealKind::Parity, &Graph::path(2).unwrap(), &r).unwrap();
        let colon = colon_ideal(&k2, &k2.polys()[0]).unwrap();
        assert!(buchberger(&colon).is_unit());

        let r3 = q(3);
        let p3 = Graph::from_edges(3, &[(1, 2), (1, 3)]).unwrap();
        let ip3 = build_ideal(IdealKind::Parity, &p3, &r3).unwrap();
        let g23 = edge_polynomial(EdgePolyKind::GBar, 2, 3, &r3).unwrap();
        let colon = colon_ideal(&ip3, &g23).unwrap();
        assert!(ideal_equal(&colon, &ip3).unwrap());

        let zero = IdealGenerators::custom(&r3, vec![]).unwrap();
        assert!(colon_ideal(&zero, &g23).unwrap().is_empty());
    }

    #[test]
    fn colon_by_variable() {
        // (x1*y1, x1*x2) : x1 = (y1, x2)
        let r = fp(2);
        let i = IdealGenerators::custom(&r, vec![r.parse("x1*y1").unwrap(), r.parse("x1*x2").unwrap()]).unwrap();
        let colon = colon_ideal(&i, &r.x(1)).unwrap();
        let expect = IdealGenerators::custom(&r, vec![r.y(1), r.x(2)]).unwrap();
        assert!(ideal_equal(&colon, &expect).unwrap());
    }

    #[test]
    fn subring_examples() {
        let r = q(3);
        let path = Graph::path(3).unwrap();
        let ip = build_ideal(IdealKind::Parity, &path, &r).unwrap();
        let keep: BTreeSet<usize> = [1, 2].into_iter().collect();
        let sub = intersect_subring(&ip, &keep).unwrap();
        let g12 = IdealGenerators::custom(&r, vec![edge_polynomial(EdgePolyKind::GBar, 1, 2, &r).unwrap()]).unwrap();
        assert!(ideal_equal(&sub, &g12).unwrap());

        let ic3 = build_ideal(IdealKind::Parity, &Graph::cycle(3).unwrap(), &r).unwrap();
        let sub = intersect_subring(&ic3, &keep).unwrap();
        assert!(ideal_equal(&sub, &g12).unwrap());

        let r2 = q(2);
        let k2 = build_ideal(IdealKind::Parity, &Graph::path(2).unwrap(), &r2).unwrap();
        assert!(intersect_subring(&k2, &BTreeSet::new()).unwrap().is_empty());
    }

    #[test]
    fn bases_are_deterministic_and_order_insensitive() {
        let r = fp(4);
        let i = build_ideal(IdealKind::Parity, &Graph::complete(4).unwrap(), &r).unwrap();
        let a = buchberger(&i);
        a.self_check().unwrap();
        let perm: Vec<usize> = (0..i.len()).rev().collect();
        let b = buchberger(&i.permuted(&perm));
        assert_eq!(a, b);
    }

    #[test]
    fn rational_bases_are_primitive() {
        let r = q(4);
        let i = build_ideal(IdealKind::Permanental, &Graph::complete(4).unwrap(), &r).unwrap();
        let gb = buchberger(&i);
        gb.self_check().unwrap();
        for p in gb.basis() {
            assert_eq!(p.normalized(), *p);
        }
    }
}
