//! Betti numbers as Koszul homology: `beta_{p,a} = dim H_p(K(vars) (x) S/I)_a`,
//! one multidegree strand at a time, with `S/I` spanned by standard
//! monomials of a Gröbner basis.
//!
//! Only multidegrees that can carry homology are visited: by upper
//! semicontinuity `beta_{p,a}(S/I) <= beta_{p,a}(S/in(I))`, and the Taylor
//! resolution of `in(I)` lives on lcms of its generators.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{monomials_of_degree, BettiTable, Grading};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::ideals::IdealGenerators;
use crate::ring::{Field, Monomial, PolyRing, SparseRow, MAX_VARS};

/// Betti numbers `beta_{p,j}` of `S/I` for all `j <= j_max`, as a partial
/// table.
pub fn betti_table_koszul<F: Field>(i: &IdealGenerators<F>, j_max: u32) -> Result<BettiTable> {
    if j_max < 2 {
        return Err(Error::Hypothesis("the Koszul oracle needs j_max >= 2".into()));
    }
    let gb = buchberger(i);
    let grading = Grading::detect(&gb)?;
    let ring = gb.ring().clone();
    let mut strand = Strands { gb: &gb, ring: &ring, grading, nf: HashMap::new() };
    let mut multi = BTreeMap::new();
    for a in koszul_support(&gb, grading, j_max) {
        for (p, beta) in strand.homology(&a).into_iter().enumerate() {
            if beta > 0 {
                multi.insert((p, a.clone()), beta);
            }
        }
    }
    let t = BettiTable::from_multigraded(ring.nvars(), Some(j_max), multi);
    Ok(match grading {
        Grading::Multi => t,
        Grading::Standard => {
            // keys were standard degrees already; drop the 1-dim multigraded data
            let mut plain = BettiTable::new(ring.nvars());
            for (p, j, b) in t.entries() {
                plain.set(p, j, b);
            }
            plain.truncated(j_max)
        }
    })
}

/// Degrees (in the detected grading) at which `S/I` may have nonzero Betti
/// numbers of internal degree `<= j_max`.
pub(crate) fn koszul_support<F: Field>(gb: &GroebnerBasis<F>, grading: Grading, j_max: u32) -> Vec<Vec<u32>> {
    let ring = gb.ring();
    let zero = grading.key(ring, &Monomial::ONE);
    if gb.is_unit() {
        return Vec::new();
    }
    let gens = gb.leading_monomials();
    let mut lattice: BTreeSet<[u8; MAX_VARS]> = BTreeSet::new();
    let mut frontier: Vec<Monomial> = Vec::new();
    for g in &gens {
        if g.degree() <= j_max && lattice.insert(*g.exponents()) {
            frontier.push(*g);
        }
    }
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let l = m.lcm(g);
            if l.degree() <= j_max && lattice.insert(*l.exponents()) {
                frontier.push(l);
            }
        }
    }
    let mut keys: BTreeSet<Vec<u32>> = lattice.iter().map(|e| grading.key(ring, &Monomial::from_exponents(e))).collect();
    keys.insert(zero);
    keys.into_iter().collect()
}

struct Strands<'a, F: Field> {
    gb: &'a GroebnerBasis<F>,
    ring: &'a PolyRing<F>,
    grading: Grading,
    nf: HashMap<Monomial, Vec<(Monomial, F::Elem)>>,
}

impl<F: Field> Strands<'_, F> {
    /// Variables grouped by grading coordinate.
    fn groups(&self) -> Vec<Vec<usize>> {
        let n = self.ring.n();
        match self.grading {
            Grading::Multi => (1..=n).map(|i| vec![self.ring.x_index(i), self.ring.y_index(i)]).collect(),
            Grading::Standard => vec![(0..self.ring.nvars()).collect()],
        }
    }

    /// Standard monomials of degree `b`.
    fn standard(&self, groups: &[Vec<usize>], b: &[u32]) -> Vec<Monomial> {
        let mut out = vec![Monomial::ONE];
        for (g, &d) in groups.iter().zip(b) {
            let local = monomials_of_degree(g.len(), d);
            let mut next = Vec::with_capacity(out.len() * local.len());
            for m in &out {
                for l in &local {
                    let mut e = *m.exponents();
                    for (k, &v) in g.iter().enumerate() {
                        e[v] += l.exponent(k);
                    }
                    next.push(Monomial::from_exponents(&e));
                }
            }
            out = next;
        }
        out.retain(|m| self.gb.is_standard(m));
        out
    }

    fn normal_form(&mut self, m: Monomial) -> &[(Monomial, F::Elem)] {
        let gb = self.gb;
        self.nf.entry(m).or_insert_with(|| {
            let p = ring_term(gb, m);
            gb.normal_form(&p).expect("same ring").into_terms()
        })
    }

    /// `[beta_{0,a}, beta_{1,a}, ...]`.
    fn homology(&mut self, a: &[u32]) -> Vec<u64> {
        let groups = self.groups();
        let nv = self.ring.nvars();
        let var_group: Vec<usize> = {
            let mut vg = vec![0; nv];
            for (gi, g) in groups.iter().enumerate() {
                for &v in g {
                    vg[v] = gi;
                }
            }
            vg
        };
        let total: u32 = a.iter().sum();
        let pmax = (total as usize).min(nv);
        // basis of C_p: (subset T as bitmask, standard monomial)
        let mut bases: Vec<Vec<(u32, Monomial)>> = vec![Vec::new(); pmax + 1];
        let mut std_cache: HashMap<Vec<u32>, Vec<Monomial>> = HashMap::new();
        for t in 0u32..(1u32 << nv) {
            let p = t.count_ones() as usize;
            if p > pmax {
                continue;
            }
            let mut b = a.to_vec();
            let mut ok = true;
            for v in 0..nv {
                if t >> v & 1 == 1 {
                    let g = var_group[v];
                    if b[g] == 0 {
                        ok = false;
                        break;
                    }
                    b[g] -= 1;
                }
            }
            if !ok {
                continue;
            }
            let std = std_cache.entry(b.clone()).or_insert_with(|| self.standard(&groups, &b)).clone();
            bases[p].extend(std.into_iter().map(|m| (t, m)));
        }
        let index: Vec<HashMap<(u32, Monomial), usize>> =
            bases.iter().map(|b| b.iter().enumerate().map(|(k, e)| (*e, k)).collect()).collect();
        let field = self.ring.field().clone();
        let mut ranks = vec![0usize; pmax + 2];
        for p in 1..=pmax {
            let mut rows: Vec<SparseRow<F::Elem>> = Vec::with_capacity(bases[p].len());
            for &(t, m) in &bases[p] {
                let mut row: SparseRow<F::Elem> = Vec::new();
                let mut below = 0;
                for v in 0..nv {
                    if t >> v & 1 == 0 {
                        continue;
                    }
                    let sign_neg = below % 2 == 1;
                    below += 1;
                    let t2 = t & !(1 << v);
                    let xm = m.mul(&Monomial::var(v));
                    for (m2, c) in self.normal_form(xm).to_vec() {
                        let col = index[p - 1][&(t2, m2)];
                        row.push((col, if sign_neg { field.neg(&c) } else { c }));
                    }
                }
                row.sort_by_key(|e| e.0);
                // merge duplicates (distinct v give distinct T \ v, so none)
                rows.push(row);
            }
            ranks[p] = field.rank(rows);
        }
        (0..=pmax).map(|p| (bases[p].len() - ranks[p] - ranks[p + 1]) as u64).collect()
    }
}

fn ring_term<F: Field>(gb: &GroebnerBasis<F>, m: Monomial) -> crate::ring::Polynomial<F> {
    let ring = gb.ring();
    ring.term(m, ring.field().one())
}
