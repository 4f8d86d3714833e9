use std::cmp::Ordering;

/// Largest supported variable count: `2n` graph variables plus auxiliary
/// elimination variables.
pub const MAX_VARS: usize = 24;

/// Exponent vector over at most [`MAX_VARS`] variables, with cached degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exp: [u8; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exp: [0; MAX_VARS], deg: 0 };

    pub fn var(index: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.exp[index] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Monomial {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Monomial::ONE;
        m.exp[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u16).sum();
        m
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u8 {
        self.exp[var]
    }

    #[inline]
    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.exp
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product. Exponents are kept below 256; overflow panics.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exp = [0u8; MAX_VARS];
        for k in 0..MAX_VARS {
            exp[k] = self.exp[k].checked_add(other.exp[k]).expect("monomial exponent overflow");
        }
        Monomial { exp, deg: self.deg + other.deg }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|k| self.exp[k] <= other.exp[k])
    }

    /// `other / self`'s counterpart: `self / other`, assuming `other | self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut exp = [0u8; MAX_VARS];
        for k in 0..MAX_VARS {
            exp[k] = self.exp[k] - other.exp[k];
        }
        Monomial { exp, deg: self.deg - other.deg }
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.div(other))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exp = [0u8; MAX_VARS];
        let mut deg = 0;
        for k in 0..MAX_VARS {
            exp[k] = self.exp[k].max(other.exp[k]);
            deg += exp[k] as u16;
        }
        Monomial { exp, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|k| self.exp[k] == 0 || other.exp[k] == 0)
    }

    /// Lexicographic comparison with variable 0 largest.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exp.cmp(&other.exp)
    }

    /// Graded reverse lexicographic comparison on the first `nvars` variables.
    #[inline]
    pub fn cmp_degrevlex(&self, other: &Monomial, nvars: usize) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {
                for k in (0..nvars).rev() {
                    if self.exp[k] != other.exp[k] {
                        return other.exp[k].cmp(&self.exp[k]);
                    }
                }
                Ordering::Equal
            }
            o => o,
        }
    }

    /// Degrevlex restricted to the variables selected by `mask`.
    pub fn cmp_degrevlex_masked(&self, other: &Monomial, nvars: usize, mask: u32) -> Ordering {
        let deg = |m: &Monomial| (0..nvars).filter(|k| mask >> k & 1 == 1).map(|k| m.exp[k] as u32).sum::<u32>();
        match deg(self).cmp(&deg(other)) {
            Ordering::Equal => {
                for k in (0..nvars).rev() {
                    if mask >> k & 1 == 1 && self.exp[k] != other.exp[k] {
                        return other.exp[k].cmp(&self.exp[k]);
                    }
                }
                Ordering::Equal
            }
            o => o,
        }
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let used = self.exp.iter().rposition(|&e| e != 0).map_or(0, |k| k + 1);
        write!(f, "{:?}", &self.exp[..used])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_division() {
        let a = Monomial::from_exponents(&[1, 0, 2]);
        let b = Monomial::from_exponents(&[0, 1, 1]);
        let ab = a.mul(&b);
        assert_eq!(ab, Monomial::from_exponents(&[1, 1, 3]));
        assert_eq!(ab.degree(), 5);
        assert!(a.divides(&ab) && b.divides(&ab));
        assert!(!ab.divides(&a));
        assert_eq!(ab.div(&a), b);
        assert_eq!(a.lcm(&b), Monomial::from_exponents(&[1, 1, 2]));
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(0).is_coprime(&Monomial::var(1)));
    }

    #[test]
    fn degrevlex_examples() {
        // x0^2 vs x0*x1 vs x1^2 in 2 vars: x0^2 > x0 x1 > x1^2
        let m = |e: &[u8]| Monomial::from_exponents(e);
        assert_eq!(m(&[2, 0]).cmp_degrevlex(&m(&[1, 1]), 2), Ordering::Greater);
        assert_eq!(m(&[1, 1]).cmp_degrevlex(&m(&[0, 2]), 2), Ordering::Greater);
        // degrevlex differs from deglex: x0 x2 vs x1^2 in 3 vars
        assert_eq!(m(&[1, 0, 1]).cmp_degrevlex(&m(&[0, 2, 0]), 3), Ordering::Less);
        assert_eq!(m(&[1, 0, 1]).cmp_lex(&m(&[0, 2, 0])), Ordering::Greater);
    }
}
