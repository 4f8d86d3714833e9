use std::cmp::Ordering;
use std::sync::Arc;

use super::{Field, Monomial, PolyRing};
use crate::error::{Error, Result};

pub type Term<F> = (Monomial, <F as Field>::Elem);

/// A polynomial with terms sorted strictly decreasing in the ring's order and
/// no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

pub(crate) fn canonicalize<F: Field>(ring: &PolyRing<F>, mut terms: Vec<Term<F>>) -> Vec<Term<F>> {
    terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
    let field = ring.field();
    let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
            _ => {
                if let Some((_, lc)) = out.last() {
                    if field.is_zero(lc) {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if field.is_zero(lc) {
            out.pop();
        }
    }
    out
}

/// `a + s * m * b` for sorted term lists.
pub(crate) fn add_scaled<F: Field>(ring: &PolyRing<F>, a: &[Term<F>], s: &F::Elem, m: &Monomial, b: &[Term<F>]) -> Vec<Term<F>> {
    let field = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj = b.first().map(|t| t.0.mul(m));
    while i < a.len() || j < b.len() {
        let ord = match (&bj, a.get(i)) {
            (None, _) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(bm), Some(at)) => ring.cmp(&at.0, bm),
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bj.expect("b term"), field.mul(s, &b[j].1)));
                j += 1;
                bj = b.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let c = field.add(&a[i].1, &field.mul(s, &b[j].1));
                if !field.is_zero(&c) {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out
}

pub(crate) fn mul_terms<F: Field>(ring: &PolyRing<F>, a: &[Term<F>], b: &[Term<F>]) -> Vec<Term<F>> {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut acc: Vec<Term<F>> = Vec::new();
    for (m, c) in short {
        acc = add_scaled(ring, &acc, c, m, long);
    }
    acc
}

impl<F: Field> Polynomial<F> {
    pub(crate) fn from_sorted(ring: Arc<PolyRing<F>>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !ring.field().is_zero(&t.1)));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let one = self.ring.field().one();
        Ok(Self::from_sorted(self.ring.clone(), add_scaled(&self.ring, &self.terms, &one, &Monomial::ONE, &other.terms)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m1 = self.ring.field().from_i64(-1);
        Ok(Self::from_sorted(self.ring.clone(), add_scaled(&self.ring, &self.terms, &m1, &Monomial::ONE, &other.terms)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_sorted(self.ring.clone(), mul_terms(&self.ring, &self.terms, &other.terms)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, field.mul(a, c))).collect();
        Self::from_sorted(self.ring.clone(), terms)
    }

    pub fn neg(&self) -> Self {
        let field = self.ring.field();
        Self::from_sorted(self.ring.clone(), self.terms.iter().map(|(m, a)| (*m, field.neg(a))).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self::from_sorted(self.ring.clone(), self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Scales to canonical form (monic over `F_p`, primitive integral with
    /// positive leading coefficient over `Q`). Zero stays zero.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<&F::Elem> = self.terms.iter().map(|t| &t.1).collect();
        let s = self.ring.field().normalizer(&coeffs);
        self.scale(&s)
    }

    /// Standard degree if all terms share it.
    pub fn standard_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|t| t.0.degree() == d).then_some(d)
    }

    /// `Z^n`-multidegree (exponent of `x_i` plus exponent of `y_i` in slot
    /// `i`) if every term has the same one. Auxiliary variables are ignored.
    pub fn multidegree(&self) -> Option<Vec<u32>> {
        let first = self.terms.first()?;
        let md = multidegree_of(&self.ring, &first.0);
        self.terms.iter().all(|t| multidegree_of(&self.ring, &t.0) == md).then_some(md)
    }

    /// Renames variables: variable `k` becomes `map[k]` in `target`.
    pub fn map_variables(&self, target: &Arc<PolyRing<F>>, map: &[usize]) -> Self {
        let nv = self.ring.nvars();
        assert!(map.len() >= nv);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u8; super::MAX_VARS];
                for k in 0..nv {
                    if m.exponent(k) > 0 {
                        e[map[k]] += m.exponent(k);
                    }
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        target.from_terms(terms)
    }

    /// Same variables, moved into a ring with a different order or with
    /// extra trailing auxiliary variables.
    pub fn embed(&self, target: &Arc<PolyRing<F>>) -> Self {
        assert_eq!(self.ring.n(), target.n());
        assert!(self.ring.aux() <= target.aux());
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        self.map_variables(target, &map)
    }

    /// Ring homomorphism sending variable `k` to `images[k]`.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Self> {
        let nv = self.ring.nvars();
        assert!(images.len() >= nv);
        let target = images.first().map(|p| p.ring.clone()).unwrap_or_else(|| self.ring.clone());
        for img in images {
            if !Arc::ptr_eq(&img.ring, &target) && *img.ring != *target {
                return Err(Error::RingMismatch);
            }
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for k in 0..nv {
                let e = m.exponent(k) as usize;
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e {
                    let next = powers[k].last().expect("nonempty").mul(&images[k])?;
                    powers[k].push(next);
                }
                t = t.mul(&powers[k][e])?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}

pub(crate) fn multidegree_of<F: Field>(ring: &PolyRing<F>, m: &Monomial) -> Vec<u32> {
    (0..ring.n()).map(|i| m.exponent(i) as u32 + m.exponent(ring.n() + i) as u32).collect()
}
