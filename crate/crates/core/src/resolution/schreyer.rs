//! Schreyer frames: iterated syzygies of a Gröbner basis under the induced
//! module orders.
//!
//! Basis element `a` of `F_k` carries a total monomial `M_a` (the monomial
//! its image's lead term induces down to `F_0`) and a rank, its position in
//! the level. Terms `m * e_a` compare by `m * M_a` in the ring order, then by
//! rank, lower rank winning. Sorting each level by (rank of lead component,
//! lex-descending lead monomial) makes position equal to rank and bounds the
//! length of the frame by the number of variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ring::{Field, Monomial, PolyRing, Polynomial};

/// `coef * mon * e_comp`, with `tot = mon * M_comp` cached.
#[derive(Clone, Debug)]
pub(crate) struct MTerm<E> {
    pub tot: Monomial,
    pub mon: Monomial,
    pub comp: usize,
    pub coef: E,
}

pub(crate) type Vector<E> = Vec<MTerm<E>>;

pub(crate) struct Level<E> {
    /// Total monomials `M_a`.
    pub totals: Vec<Monomial>,
    /// Images of the basis elements in the previous level (empty at level 0).
    pub vectors: Vec<Vector<E>>,
}

/// A (generally non-minimal) free resolution of `S/I`.
pub(crate) struct Frame<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub levels: Vec<Level<F::Elem>>,
}

fn term_cmp<F: Field>(ring: &PolyRing<F>, a: &MTerm<F::Elem>, b: &MTerm<F::Elem>) -> Ordering {
    ring.cmp(&a.tot, &b.tot).then_with(|| b.comp.cmp(&a.comp))
}

/// `a + s * m * b`.
fn axpy<F: Field>(ring: &PolyRing<F>, a: &[MTerm<F::Elem>], s: &F::Elem, m: &Monomial, b: &[MTerm<F::Elem>]) -> Vector<F::Elem> {
    let field = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let scaled = |t: &MTerm<F::Elem>| MTerm { tot: t.tot.mul(m), mon: t.mon.mul(m), comp: t.comp, coef: field.mul(s, &t.coef) };
    let (mut i, mut j) = (0, 0);
    let mut bj = b.first().map(scaled);
    while i < a.len() || bj.is_some() {
        let ord = match (&bj, a.get(i)) {
            (None, _) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(bt), Some(at)) => term_cmp(ring, at, bt),
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(bj.take().expect("b term"));
                j += 1;
                bj = b.get(j).map(scaled);
            }
            Ordering::Equal => {
                let bt = bj.take().expect("b term");
                let c = field.add(&a[i].coef, &bt.coef);
                if !field.is_zero(&c) {
                    out.push(MTerm { coef: c, ..a[i].clone() });
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(scaled);
            }
        }
    }
    out
}

fn canonical<F: Field>(ring: &PolyRing<F>, mut terms: Vector<F::Elem>) -> Vector<F::Elem> {
    let field = ring.field();
    terms.sort_by(|a, b| term_cmp(ring, b, a));
    let mut out: Vector<F::Elem> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.comp == t.comp && last.mon == t.mon => last.coef = field.add(&last.coef, &t.coef),
            _ => out.push(t),
        }
    }
    out.retain(|t| !field.is_zero(&t.coef));
    out
}

/// Sorts a level's elements into rank order, returning the level.
fn sort_level<E: Clone>(mut vectors: Vec<Vector<E>>) -> Level<E> {
    vectors.sort_by(|a, b| a[0].comp.cmp(&b[0].comp).then_with(|| b[0].mon.cmp_lex(&a[0].mon)));
    let totals = vectors.iter().map(|v| v[0].tot).collect();
    Level { totals, vectors }
}

impl<F: Field> Frame<F> {
    /// The frame of `S/I` from a Gröbner basis of `I`.
    pub fn new(gb: &GroebnerBasis<F>) -> Result<Frame<F>> {
        let ring = gb.ring().clone();
        let mut levels = vec![Level { totals: vec![Monomial::ONE], vectors: vec![Vec::new()] }];
        if gb.is_empty() {
            return Ok(Frame { ring, levels });
        }
        let first: Vec<Vector<F::Elem>> = gb
            .basis()
            .iter()
            .map(|p| p.terms().iter().map(|(m, c)| MTerm { tot: *m, mon: *m, comp: 0, coef: c.clone() }).collect())
            .collect();
        levels.push(sort_level(first));
        loop {
            let next = next_level(&ring, levels.last().expect("nonempty"))?;
            if next.vectors.is_empty() {
                break;
            }
            if levels.len() > ring.nvars() + 1 {
                return Err(Error::Internal("Schreyer frame longer than the number of variables".into()));
            }
            levels.push(next);
        }
        Ok(Frame { ring, levels })
    }

    /// Length of the frame (index of the last nonzero module).
    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, |l| l.totals.len())
    }

    /// Differential `d_k : F_k -> F_{k-1}` as a dense matrix of polynomials
    /// (rows indexed by `F_{k-1}`).
    pub fn differential(&self, k: usize) -> Vec<Vec<Polynomial<F>>> {
        assert!(k >= 1 && k < self.levels.len());
        let rows = self.rank(k - 1);
        let cols = self.rank(k);
        let mut entries: Vec<Vec<Vec<(Monomial, F::Elem)>>> = vec![vec![Vec::new(); cols]; rows];
        for (a, v) in self.levels[k].vectors.iter().enumerate() {
            for t in v {
                entries[t.comp][a].push((t.mon, t.coef.clone()));
            }
        }
        entries.into_iter().map(|row| row.into_iter().map(|terms| self.ring.from_terms(terms)).collect()).collect()
    }
}

/// Syzygies of the elements of `cur`, which form a Gröbner basis under the
/// induced order.
fn next_level<F: Field>(ring: &Arc<PolyRing<F>>, cur: &Level<F::Elem>) -> Result<Level<F::Elem>> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (a, v) in cur.vectors.iter().enumerate() {
        if let Some(lead) = v.first() {
            groups.entry(lead.comp).or_default().push(a);
        }
    }
    let mut out = Vec::new();
    for members in groups.values() {
        for (pos, &i) in members.iter().enumerate() {
            let mi = cur.vectors[i][0].mon;
            // minimal generators of the monomial ideal (m_j : m_i), j > i
            let mut cands: Vec<(Monomial, usize)> =
                members[pos + 1..].iter().map(|&j| (mi.lcm(&cur.vectors[j][0].mon).div(&mi), j)).collect();
            cands.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.1.cmp(&b.1)));
            let mut kept: Vec<(Monomial, usize)> = Vec::new();
            for (q, j) in cands {
                if !kept.iter().any(|(k, _)| k.divides(&q)) {
                    kept.push((q, j));
                }
            }
            for (qi, j) in kept {
                out.push(s_syzygy(ring, cur, &groups, i, qi, j)?);
            }
        }
    }
    Ok(sort_level(out))
}

fn s_syzygy<F: Field>(
    ring: &Arc<PolyRing<F>>,
    cur: &Level<F::Elem>,
    groups: &BTreeMap<usize, Vec<usize>>,
    i: usize,
    qi: Monomial,
    j: usize,
) -> Result<Vector<F::Elem>> {
    let field = ring.field();
    let (vi, vj) = (&cur.vectors[i], &cur.vectors[j]);
    let l = qi.mul(&vi[0].mon);
    let qj = l.div(&vj[0].mon);
    let ci = field.inv(&vi[0].coef);
    let cj = field.neg(&field.inv(&vj[0].coef));
    let mut s = axpy(ring, &[], &ci, &qi, vi);
    s = axpy(ring, &s, &cj, &qj, vj);

    let mut syz = vec![
        MTerm { tot: qi.mul(&cur.totals[i]), mon: qi, comp: i, coef: ci },
        MTerm { tot: qj.mul(&cur.totals[j]), mon: qj, comp: j, coef: cj },
    ];
    while let Some(lead) = s.first() {
        let candidates = groups.get(&lead.comp).map(Vec::as_slice).unwrap_or(&[]);
        let b = candidates
            .iter()
            .copied()
            .find(|&b| cur.vectors[b][0].mon.divides(&lead.mon))
            .ok_or_else(|| Error::Internal("S-vector does not reduce to zero in a Schreyer frame".into()))?;
        let vb = &cur.vectors[b];
        let q = lead.mon.div(&vb[0].mon);
        let c = field.div(&lead.coef, &vb[0].coef);
        syz.push(MTerm { tot: q.mul(&cur.totals[b]), mon: q, comp: b, coef: field.neg(&c) });
        s = axpy(ring, &s, &field.neg(&c), &q, vb);
    }
    let syz = canonical(ring, syz);
    debug_assert!(syz[0].comp == i && syz[0].mon == qi, "unexpected lead term of a Schreyer syzygy");
    Ok(syz)
}
