//! Text form `c*x1^a*y3^b + ...`, parsed and printed losslessly.

use std::fmt;
use std::sync::Arc;

use super::{Field, Monomial, PolyRing, Polynomial, MAX_VARS};
use crate::error::{Error, Result};

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ring = self.ring();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let (neg, mag) = ring.field().sign_magnitude(c);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = monomial_text(ring, m);
            match (mag == "1", mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn monomial_text<F: Field>(ring: &PolyRing<F>, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for k in 0..ring.nvars() {
        match m.exponent(k) {
            0 => {}
            1 => parts.push(ring.var_name(k)),
            e => parts.push(format!("{}^{e}", ring.var_name(k))),
        }
    }
    parts.join("*")
}

impl<F: Field> PolyRing<F> {
    fn var_by_name(&self, name: &str) -> Option<usize> {
        (0..self.nvars()).find(|&k| self.var_name(k) == name)
    }

    /// Parses the text form. Accepts `*` between factors, `^` powers,
    /// rational coefficients `a/b`, and arbitrary whitespace.
    pub fn parse(self: &Arc<Self>, s: &str) -> Result<Polynomial<F>> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // split into signed terms at + and -
        let mut terms_text: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in compact.chars() {
            if ch == '+' || ch == '-' {
                if !current.is_empty() {
                    terms_text.push((negative, std::mem::take(&mut current)));
                    negative = false;
                }
                if ch == '-' {
                    negative = !negative;
                }
                continue;
            }
            current.push(ch);
        }
        if current.is_empty() {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        }
        terms_text.push((negative, current));

        let field = self.field();
        let mut terms = Vec::with_capacity(terms_text.len());
        for (neg, text) in terms_text {
            let mut coeff = field.one();
            let mut exps = [0u8; MAX_VARS];
            for factor in text.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{text}`")));
                }
                let first = factor.chars().next().expect("nonempty");
                if first.is_ascii_digit() {
                    coeff = field.mul(&coeff, &field.parse(factor)?);
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => (n, p.parse::<u8>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
                    None => (factor, 1),
                };
                let var = self
                    .var_by_name(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}` in a ring with n = {}", self.n())))?;
                exps[var] = exps[var].checked_add(power).ok_or(Error::ExponentOverflow)?;
            }
            if neg {
                coeff = field.neg(&coeff);
            }
            terms.push((Monomial::from_exponents(&exps), coeff));
        }
        Ok(self.from_terms(terms))
    }
}
