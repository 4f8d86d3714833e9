//! Polynomial rings `K[x_1..x_n, y_1..y_n]` (plus optional auxiliary
//! variables for elimination) over the rationals or a prime field.
//!
//! Variable layout: `x_i` has index `i-1`, `y_i` has index `n+i-1`, and
//! auxiliary variables `t_k` follow at `2n+k`. The default order is degrevlex
//! with `x_1 > ... > x_n > y_1 > ... > y_n > t_1 > ...`.

mod field;
mod monomial;
mod poly;
mod text;

pub use field::{is_prime, Field, PrimeField, Rationals, SparseRow};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::{Polynomial, Term};
pub(crate) use poly::add_scaled;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Monomial orders. `Elimination(mask)` is the block order that first
/// compares the variables in `mask` by degrevlex, then the rest by degrevlex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    Elimination(u32),
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "degrevlex" | "grevlex" | "dp" => Ok(MonomialOrder::DegRevLex),
            "lex" | "lp" => Ok(MonomialOrder::Lex),
            _ => Err(Error::Parse(format!("unknown monomial order `{s}` (expected degrevlex or lex)"))),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Elimination(mask) => write!(f, "elimination({mask:#x})"),
        }
    }
}

/// Field-independent description of a ring: vertex count, characteristic
/// (0 or prime) and monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub n: usize,
    pub characteristic: u64,
    pub order: MonomialOrder,
}

/// Callback for running field-generic code on a runtime characteristic.
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self, field: F) -> Self::Output;
}

impl RingSpec {
    pub fn new(n: usize, characteristic: u64, order: MonomialOrder) -> Result<RingSpec> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::CharacteristicNotPrime(characteristic));
        }
        if characteristic >= 1 << 31 {
            return Err(Error::CharacteristicNotPrime(characteristic));
        }
        check_var_count(n, 0)?;
        Ok(RingSpec { n, characteristic, order })
    }

    pub fn dispatch<V: FieldVisitor>(&self, visitor: V) -> V::Output {
        if self.characteristic == 0 {
            visitor.visit(Rationals)
        } else {
            visitor.visit(PrimeField::new(self.characteristic).expect("validated in RingSpec::new"))
        }
    }
}

fn check_var_count(n: usize, aux: usize) -> Result<()> {
    if 2 * n + aux > MAX_VARS {
        return Err(Error::TooManyVertices { n, max: (MAX_VARS - aux) / 2 });
    }
    Ok(())
}

/// A concrete polynomial ring over the field `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    n: usize,
    aux: usize,
    field: F,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(n: usize, field: F, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::with_aux(n, 0, field, order)
    }

    pub fn with_aux(n: usize, aux: usize, field: F, order: MonomialOrder) -> Result<Arc<Self>> {
        check_var_count(n, aux)?;
        Ok(Arc::new(PolyRing { n, aux, field, order }))
    }

    /// Same variables and field, different order.
    pub fn reordered(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { order, ..self.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn aux(&self) -> usize {
        self.aux
    }

    pub fn nvars(&self) -> usize {
        2 * self.n + self.aux
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn spec(&self) -> RingSpec {
        RingSpec { n: self.n, characteristic: self.field.characteristic(), order: self.order }
    }

    pub fn x_index(&self, i: usize) -> usize {
        assert!((1..=self.n).contains(&i), "x_{i} out of range");
        i - 1
    }

    pub fn y_index(&self, i: usize) -> usize {
        assert!((1..=self.n).contains(&i), "y_{i} out of range");
        self.n + i - 1
    }

    pub fn aux_index(&self, k: usize) -> usize {
        assert!(k < self.aux);
        2 * self.n + k
    }

    /// The vertex a variable belongs to (1-based), `None` for auxiliaries.
    pub fn vertex_of(&self, var: usize) -> Option<usize> {
        if var < self.n {
            Some(var + 1)
        } else if var < 2 * self.n {
            Some(var - self.n + 1)
        } else {
            None
        }
    }

    pub fn var_name(&self, var: usize) -> String {
        if var < self.n {
            format!("x{}", var + 1)
        } else if var < 2 * self.n {
            format!("y{}", var - self.n + 1)
        } else if self.aux == 1 {
            "t".to_string()
        } else {
            format!("t{}", var - 2 * self.n + 1)
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::DegRevLex => a.cmp_degrevlex(b, self.nvars()),
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::Elimination(mask) => a
                .cmp_degrevlex_masked(b, self.nvars(), mask)
                .then_with(|| a.cmp_degrevlex_masked(b, self.nvars(), !mask)),
        }
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial<F> {
        Polynomial::from_sorted(self.clone(), Vec::new())
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Polynomial<F> {
        self.term(Monomial::ONE, c)
    }

    pub fn one(self: &Arc<Self>) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn term(self: &Arc<Self>, m: Monomial, c: F::Elem) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            self.zero()
        } else {
            Polynomial::from_sorted(self.clone(), vec![(m, c)])
        }
    }

    pub fn var(self: &Arc<Self>, index: usize) -> Polynomial<F> {
        assert!(index < self.nvars());
        self.term(Monomial::var(index), self.field.one())
    }

    pub fn x(self: &Arc<Self>, i: usize) -> Polynomial<F> {
        self.var(self.x_index(i))
    }

    pub fn y(self: &Arc<Self>, i: usize) -> Polynomial<F> {
        self.var(self.y_index(i))
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(self: &Arc<Self>, terms: Vec<Term<F>>) -> Polynomial<F> {
        let terms = poly::canonicalize(self, terms);
        Polynomial::from_sorted(self.clone(), terms)
    }

    pub fn from_i64_terms(self: &Arc<Self>, terms: &[(i64, Monomial)]) -> Polynomial<F> {
        self.from_terms(terms.iter().map(|(c, m)| (*m, self.field.from_i64(*c))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_ring_examples() {
        let r = RingSpec::new(3, 0, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(r.n, 3);
        assert!(RingSpec::new(2, 32003, MonomialOrder::DegRevLex).is_ok());
        assert_eq!(RingSpec::new(2, 4, MonomialOrder::DegRevLex), Err(Error::CharacteristicNotPrime(4)));
        let q = PolyRing::new(3, Rationals, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(q.nvars(), 6);
        assert_eq!(q.var_name(q.y_index(2)), "y2");
    }

    #[test]
    fn variable_order_is_x_then_y() {
        let r = PolyRing::new(2, Rationals, MonomialOrder::DegRevLex).unwrap();
        let vars: Vec<Monomial> = (0..4).map(Monomial::var).collect();
        for k in 0..3 {
            assert_eq!(r.cmp(&vars[k], &vars[k + 1]), Ordering::Greater);
        }
        let lex = r.reordered(MonomialOrder::Lex);
        assert_eq!(lex.cmp(&vars[0], &vars[3].mul(&vars[3])), Ordering::Greater);
    }

    #[test]
    fn elimination_order_puts_masked_variables_first() {
        let r = PolyRing::new(2, Rationals, MonomialOrder::Elimination(0b0001)).unwrap();
        // x1 beats any monomial free of x1, whatever its degree
        let y2_cubed = Monomial::from_exponents(&[0, 0, 0, 3]);
        assert_eq!(r.cmp(&Monomial::var(0), &y2_cubed), Ordering::Greater);
    }
}
