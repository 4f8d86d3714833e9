//! Coefficient fields: the rationals and prime fields `F_p`.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A sparse matrix row: `(column, nonzero entry)` pairs, sorted by column.
pub type SparseRow<E> = Vec<(usize, E)>;

pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Parses an integer or `a/b`.
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Sign and magnitude for display. Prime-field residues above `p/2` print
    /// as negatives, which re-parse to the same residue.
    fn sign_magnitude(&self, a: &Self::Elem) -> (bool, String);

    /// The scalar that brings a nonzero coefficient list (leading coefficient
    /// first) into canonical form: monic over `F_p`; integral, content-free,
    /// positive leading coefficient over `Q`.
    fn normalizer(&self, coeffs: &[&Self::Elem]) -> Self::Elem;

    /// Rank of a sparse matrix given by rows.
    fn rank(&self, rows: Vec<SparseRow<Self::Elem>>) -> usize {
        gaussian_rank(self, rows)
    }
}

/// Plain row-echelon elimination; pivot rows are indexed by leading column.
fn gaussian_rank<F: Field + ?Sized>(field: &F, rows: Vec<SparseRow<F::Elem>>) -> usize {
    let mut pivots: std::collections::HashMap<usize, SparseRow<F::Elem>> = std::collections::HashMap::new();
    for mut row in rows {
        while let Some((lead, c)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    // row -= c * p   (p is monic)
                    row = axpy(field, &row, &field.neg(&c), p);
                }
                None => {
                    let inv = field.inv(&c);
                    let monic = row.into_iter().map(|(k, v)| (k, field.mul(&v, &inv))).collect();
                    pivots.insert(lead, monic);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `a + s*b` on sorted sparse rows.
fn axpy<F: Field + ?Sized>(field: &F, a: &SparseRow<F::Elem>, s: &F::Elem, b: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(s, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(s, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `Z/pZ` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= 1 << 31 || !is_prime(p) {
            return Err(Error::CharacteristicNotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u32 {
        v.rem_euclid(self.p as i128) as u32
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i128(v as i128)
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as u32
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let den = self.parse(b)?;
            if den == 0 {
                return Err(Error::Parse(format!("division by zero in `{s}` over F_{}", self.p)));
            }
            return Ok(self.div(&self.parse(a)?, &den));
        }
        let v: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
        let r = v.mod_floor(&BigInt::from(self.p));
        Ok(r.try_into().expect("residue fits"))
    }
    fn sign_magnitude(&self, a: &u32) -> (bool, String) {
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }
    fn normalizer(&self, coeffs: &[&u32]) -> u32 {
        self.inv(coeffs[0])
    }
}

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad coefficient `{s}`"));
        match s.split_once('/') {
            Some((a, b)) => {
                let num: BigInt = a.trim().parse().map_err(|_| bad())?;
                let den: BigInt = b.trim().parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(num, den))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn sign_magnitude(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
    fn normalizer(&self, coeffs: &[&BigRational]) -> BigRational {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in coeffs {
            content = content.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut factor = BigRational::new(den, content);
        if coeffs[0].is_negative() {
            factor = -factor;
        }
        factor
    }

    /// Fraction-free elimination: rows are scaled to integers, and each
    /// elimination step `r <- a*r - b*p` is followed by content removal.
    fn rank(&self, rows: Vec<SparseRow<BigRational>>) -> usize {
        let mut pivots: std::collections::HashMap<usize, Vec<(usize, BigInt)>> = std::collections::HashMap::new();
        for row in rows {
            let den = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let mut row: Vec<(usize, BigInt)> = row
                .into_iter()
                .map(|(k, v)| (k, v.numer() * (&den / v.denom())))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            while let Some((lead, c)) = row.first().cloned() {
                match pivots.get(&lead) {
                    Some(p) => {
                        let pc = &p[0].1;
                        let g = pc.gcd(&c);
                        let (a, b) = (pc / &g, &c / &g);
                        row = int_combine(&a, &row, &b, p);
                        primitive(&mut row);
                    }
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

/// `a*r - b*p` on sorted integer rows.
fn int_combine(a: &BigInt, r: &[(usize, BigInt)], b: &BigInt, p: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        if j == p.len() || (i < r.len() && r[i].0 < p[j].0) {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if i == r.len() || p[j].0 < r[i].0 {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn primitive(row: &mut [(usize, BigInt)]) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_checks() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(2).is_ok());
        assert_eq!(PrimeField::new(4), Err(Error::CharacteristicNotPrime(4)));
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.parse("-2").unwrap(), 5);
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert_eq!(f.sign_magnitude(&6), (true, "1".into()));
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.from_i64(-1), f2.from_i64(1));
    }

    #[test]
    fn q_normalizer_clears_content() {
        let q = Rationals;
        let c = [q.parse("-4/3").unwrap(), q.parse("2").unwrap()];
        let s = q.normalizer(&[&c[0], &c[1]]);
        assert_eq!(q.mul(&s, &c[0]), q.from_i64(2));
        assert_eq!(q.mul(&s, &c[1]), q.from_i64(-3));
    }

    #[test]
    fn ranks_agree_between_fields() {
        let q = Rationals;
        let rows = vec![
            vec![(0, q.from_i64(1)), (1, q.from_i64(2))],
            vec![(0, q.from_i64(2)), (1, q.from_i64(4))],
            vec![(1, q.from_i64(3)), (2, q.from_i64(1))],
        ];
        assert_eq!(q.rank(rows), 2);
        let f = PrimeField::new(3).unwrap();
        // over F_3 the last row's 3 vanishes, making it independent anyway
        let rows = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 1)], vec![(2, 1)]];
        assert_eq!(f.rank(rows), 2);
    }
}
