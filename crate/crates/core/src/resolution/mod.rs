//! Minimal graded free resolutions of `S/I` and their Betti tables, by a
//! Schreyer frame and, independently, by Koszul homology.

mod koszul;
mod linalg;
mod schreyer;
mod table;

pub use koszul::betti_table_koszul;
pub use table::BettiTable;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::ideals::IdealGenerators;
use crate::ring::{Field, Monomial, PolyRing, Polynomial, SparseRow};
use linalg::Echelon;
use schreyer::Frame;

/// One map of a free resolution: `matrix[r][c]` is the `r`-th coordinate of
/// the image of the `c`-th source basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeResolutionStep<F: Field> {
    pub matrix: Vec<Vec<Polynomial<F>>>,
    pub source_degrees: Vec<u32>,
    pub target_degrees: Vec<u32>,
}

impl<F: Field> FreeResolutionStep<F> {
    pub fn rank_source(&self) -> usize {
        self.source_degrees.len()
    }

    pub fn rank_target(&self) -> usize {
        self.target_degrees.len()
    }

    /// The `c`-th column.
    pub fn column(&self, c: usize) -> Vec<Polynomial<F>> {
        self.matrix.iter().map(|row| row[c].clone()).collect()
    }

    pub fn has_unit_entry(&self) -> bool {
        self.matrix.iter().flatten().any(|p| p.leading_monomial().is_some_and(Monomial::is_one))
    }
}

/// The grading used for blocking: the `Z^n` multidegree when every basis
/// element is multihomogeneous, otherwise the standard degree alone.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Grading {
    Multi,
    Standard,
}

impl Grading {
    pub(crate) fn detect<F: Field>(gb: &GroebnerBasis<F>) -> Result<Grading> {
        if gb.ring().aux() != 0 {
            return Err(Error::Hypothesis("resolutions need a ring without auxiliary variables".into()));
        }
        if gb.basis().iter().any(|p| p.standard_degree().is_none()) {
            return Err(Error::Hypothesis("the ideal must be homogeneous".into()));
        }
        Ok(if gb.basis().iter().all(|p| p.multidegree().is_some()) { Grading::Multi } else { Grading::Standard })
    }

    pub(crate) fn key<F: Field>(self, ring: &PolyRing<F>, m: &Monomial) -> Vec<u32> {
        match self {
            Grading::Multi => (0..ring.n()).map(|i| m.exponent(i) as u32 + m.exponent(ring.n() + i) as u32).collect(),
            Grading::Standard => vec![m.degree()],
        }
    }
}

/// Betti table of `S/I` from a Schreyer frame.
pub fn betti_table_schreyer<F: Field>(i: &IdealGenerators<F>) -> Result<BettiTable> {
    betti_table_from_gb(&buchberger(i))
}

pub fn betti_table_from_gb<F: Field>(gb: &GroebnerBasis<F>) -> Result<BettiTable> {
    let grading = Grading::detect(gb)?;
    let frame = Frame::new(gb)?;
    Ok(betti_from_frame(&frame, grading))
}

/// `beta_{k,a} = rank F_{k,a} - rank(d_k)_a - rank(d_{k+1})_a`, where the
/// ranks are those of the constant parts of the differentials: the
/// dimensions of the homology of `F (x) K`.
fn betti_from_frame<F: Field>(frame: &Frame<F>, grading: Grading) -> BettiTable {
    let ring = &frame.ring;
    let field = ring.field();
    let len = frame.length();
    let keys: Vec<Vec<Vec<u32>>> = frame.levels.iter().map(|l| l.totals.iter().map(|m| grading.key(ring, m)).collect()).collect();
    // const_ranks[k][key] = rank of the constant part of d_k in that degree
    let mut const_ranks: Vec<HashMap<Vec<u32>, usize>> = vec![HashMap::new(); len + 2];
    for k in 1..=len {
        let mut blocks: HashMap<Vec<u32>, Vec<SparseRow<F::Elem>>> = HashMap::new();
        for (a, v) in frame.levels[k].vectors.iter().enumerate() {
            let mut row: SparseRow<F::Elem> = v.iter().filter(|t| t.mon.is_one()).map(|t| (t.comp, t.coef.clone())).collect();
            if row.is_empty() {
                continue;
            }
            row.sort_by_key(|t| t.0);
            blocks.entry(keys[k][a].clone()).or_default().push(row);
        }
        for (key, rows) in blocks {
            const_ranks[k].insert(key, field.rank(rows));
        }
    }
    let mut multi: BTreeMap<(usize, Vec<u32>), u64> = BTreeMap::new();
    for k in 0..=len {
        let mut counts: HashMap<&Vec<u32>, usize> = HashMap::new();
        for key in &keys[k] {
            *counts.entry(key).or_insert(0) += 1;
        }
        for (key, count) in counts {
            let r = const_ranks[k].get(key).copied().unwrap_or(0) + const_ranks[k + 1].get(key).copied().unwrap_or(0);
            let beta = count - r;
            if beta > 0 {
                multi.insert((k, key.clone()), beta as u64);
            }
        }
    }
    match grading {
        Grading::Multi => BettiTable::from_multigraded(ring.nvars(), None, multi),
        Grading::Standard => {
            let mut t = BettiTable::new(ring.nvars());
            for ((k, key), b) in multi {
                t.set(k, key[0], t.get(k, key[0]) + b);
            }
            t
        }
    }
}

/// The minimal graded free resolution of `S/I`: the Schreyer frame with unit
/// entries cancelled. Step `k-1` of the result is `d_k : F_k -> F_{k-1}`.
pub fn minimal_resolution<F: Field>(i: &IdealGenerators<F>) -> Result<Vec<FreeResolutionStep<F>>> {
    let gb = buchberger(i);
    Grading::detect(&gb)?;
    let frame = Frame::new(&gb)?;
    let mut mats: Vec<Vec<Vec<Polynomial<F>>>> = (1..=frame.length()).map(|k| frame.differential(k)).collect();
    let mut degrees: Vec<Vec<u32>> = frame.levels.iter().map(|l| l.totals.iter().map(Monomial::degree).collect()).collect();
    cancel_units(frame.ring.clone(), &mut mats, &mut degrees);
    let mut steps = Vec::new();
    for (k, m) in mats.into_iter().enumerate() {
        if degrees[k + 1].is_empty() {
            break;
        }
        steps.push(FreeResolutionStep { matrix: m, source_degrees: degrees[k + 1].clone(), target_degrees: degrees[k].clone() });
    }
    Ok(steps)
}

/// Betti table read off [`minimal_resolution`]: the ranks of the free modules
/// by degree, after unit cancellation.
pub fn betti_table_minimal<F: Field>(i: &IdealGenerators<F>) -> Result<BettiTable> {
    let steps = minimal_resolution(i)?;
    let mut t = BettiTable::new(i.ring().nvars());
    t.set(0, 0, 1);
    for (k, step) in steps.iter().enumerate() {
        for &d in &step.source_degrees {
            t.set(k + 1, d, t.get(k + 1, d) + 1);
        }
    }
    Ok(t)
}

/// Repeatedly splits off `0 -> S e_c -> S e_r -> 0` summands at unit entries.
/// `mats[k-1]` is `d_k`, with rows indexed by `F_{k-1}` and columns by `F_k`.
fn cancel_units<F: Field>(ring: Arc<PolyRing<F>>, mats: &mut [Vec<Vec<Polynomial<F>>>], degrees: &mut [Vec<u32>]) {
    let field = ring.field().clone();
    for k in 1..=mats.len() {
        loop {
            let d = &mats[k - 1];
            let found = d.iter().enumerate().find_map(|(r, row)| {
                row.iter().position(|p| p.leading_monomial().is_some_and(Monomial::is_one)).map(|c| (r, c))
            });
            let Some((r, c)) = found else { break };
            let d = &mut mats[k - 1];
            let u = d[r][c].leading_coefficient().expect("unit").clone();
            let uinv = field.inv(&u);
            let pivot_col: Vec<Polynomial<F>> = d.iter().map(|row| row[c].clone()).collect();
            for c2 in 0..d[r].len() {
                if c2 == c || d[r][c2].is_zero() {
                    continue;
                }
                let factor = d[r][c2].scale(&uinv);
                for (row, pc) in d.iter_mut().zip(&pivot_col) {
                    if !pc.is_zero() {
                        row[c2] = row[c2].sub(&factor.mul(pc).expect("same ring")).expect("same ring");
                    }
                }
            }
            for row in d.iter_mut() {
                row.remove(c);
            }
            d.remove(r);
            degrees[k].remove(c);
            degrees[k - 1].remove(r);
            if k < mats.len() {
                mats[k].remove(c);
            }
            if k >= 2 {
                for row in mats[k - 2].iter_mut() {
                    row.remove(r);
                }
            }
        }
    }
}

/// A minimal homogeneous generating set of the syzygies of `columns`,
/// computed degree by degree as kernels of the multiplication maps.
pub fn syzygies<F: Field>(columns: &[Polynomial<F>]) -> Result<FreeResolutionStep<F>> {
    let Some(first) = columns.first() else {
        return Err(Error::Hypothesis("syzygies of an empty list".into()));
    };
    let ring = first.ring().clone();
    let field = ring.field();
    let mut degs = Vec::with_capacity(columns.len());
    for c in columns {
        if **c.ring() != *ring {
            return Err(Error::RingMismatch);
        }
        degs.push(c.standard_degree().ok_or_else(|| Error::Hypothesis("columns must be nonzero and homogeneous".into()))?);
    }
    let ideal = IdealGenerators::custom(&ring, columns.to_vec())?;
    let table = betti_table_schreyer(&ideal)?;
    let top = table.entries().filter(|(i, _, _)| *i == 2).map(|(_, j, _)| j).chain(degs.iter().copied()).max().unwrap_or(0);
    let lo = *degs.iter().min().expect("nonempty");

    // generators found so far: (degree, coordinates as polynomials)
    let mut gens: Vec<(u32, Vec<Polynomial<F>>)> = Vec::new();
    for d in lo + 1..=top {
        // unknowns: (column i, monomial mu) with deg mu = d - deg_i
        let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
        for (i, &di) in degs.iter().enumerate() {
            if di <= d {
                unknowns.extend(monomials_of_degree(ring.nvars(), d - di).into_iter().map(|m| (i, m)));
            }
        }
        let index: HashMap<(usize, Monomial), usize> = unknowns.iter().enumerate().map(|(k, u)| (*u, k)).collect();
        let mut targets: HashMap<Monomial, usize> = HashMap::new();
        let images: Vec<SparseRow<F::Elem>> = unknowns
            .iter()
            .map(|(i, mu)| {
                let mut row: SparseRow<F::Elem> = columns[*i]
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let next = targets.len();
                        (*targets.entry(m.mul(mu)).or_insert(next), c.clone())
                    })
                    .collect();
                row.sort_by_key(|t| t.0);
                row
            })
            .collect();
        let ker = linalg::kernel(field, &images);

        let mut span = Echelon::new(field);
        for (e, coords) in &gens {
            for nu in monomials_of_degree(ring.nvars(), d - e) {
                let mut row: SparseRow<F::Elem> = Vec::new();
                for (i, p) in coords.iter().enumerate() {
                    for (m, c) in p.terms() {
                        row.push((index[&(i, m.mul(&nu))], c.clone()));
                    }
                }
                row.sort_by_key(|t| t.0);
                span.insert(row);
            }
        }
        for v in ker {
            if span.insert(v.clone()) {
                let mut coords: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); columns.len()];
                for (k, c) in v {
                    let (i, mu) = unknowns[k];
                    coords[i].push((mu, c));
                }
                let coords: Vec<Polynomial<F>> = coords.into_iter().map(|t| ring.from_terms(t)).collect();
                gens.push((d, normalize_vector(coords)));
            }
        }
    }
    let matrix = (0..columns.len()).map(|i| gens.iter().map(|(_, v)| v[i].clone()).collect()).collect();
    Ok(FreeResolutionStep { matrix, source_degrees: gens.iter().map(|g| g.0).collect(), target_degrees: degs })
}

/// Scales a vector so its first nonzero coordinate is normalized.
fn normalize_vector<F: Field>(v: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let Some(lead) = v.iter().find(|p| !p.is_zero()) else { return v };
    let normalized = lead.normalized();
    let field = lead.ring().field();
    let s = field.div(normalized.leading_coefficient().expect("nonzero"), lead.leading_coefficient().expect("nonzero"));
    v.into_iter().map(|p| p.scale(&s)).collect()
}

/// All monomials of degree `d` in the first `nvars` variables.
pub(crate) fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u8; nvars];
    fn rec(k: usize, left: u32, exps: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if k + 1 == exps.len() {
            exps[k] = left as u8;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[k] = e as u8;
            rec(k + 1, left - e, exps, out);
        }
        exps[k] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out
}
