use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graded Betti numbers `beta_{i,j}` of a cyclic module `S/I`.
///
/// A table computed only up to an internal degree bound is *partial*; the
/// derived invariants then refuse to answer.
#[derive(Clone, Debug, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), u64>,
    ring_vars: usize,
    partial: Option<u32>,
    multigraded: BTreeMap<(usize, Vec<u32>), u64>,
}

impl PartialEq for BettiTable {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.ring_vars == other.ring_vars && self.partial == other.partial
    }
}

impl Eq for BettiTable {}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    entries: Vec<(usize, u32, u64)>,
    reg: Option<i64>,
    pd: Option<usize>,
    pure: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partial: Option<u32>,
    #[serde(default)]
    vars: usize,
}

impl BettiTable {
    pub fn new(ring_vars: usize) -> Self {
        BettiTable { ring_vars, ..Default::default() }
    }

    /// Builds the table from multigraded Betti numbers.
    pub fn from_multigraded(ring_vars: usize, partial: Option<u32>, multigraded: BTreeMap<(usize, Vec<u32>), u64>) -> Self {
        let mut t = BettiTable { ring_vars, partial, ..Default::default() };
        for ((i, a), &b) in &multigraded {
            if b > 0 {
                *t.entries.entry((*i, a.iter().sum())).or_insert(0) += b;
            }
        }
        t.multigraded = multigraded.into_iter().filter(|(_, b)| *b > 0).collect();
        t
    }

    pub fn set(&mut self, i: usize, j: u32, beta: u64) {
        if beta == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), beta);
        }
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `(i, j, beta)` in increasing `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// Nonzero `Z^n`-graded entries, when the ideal was multigraded.
    pub fn multigraded(&self) -> &BTreeMap<(usize, Vec<u32>), u64> {
        &self.multigraded
    }

    pub fn ring_vars(&self) -> usize {
        self.ring_vars
    }

    pub fn is_partial(&self) -> bool {
        self.partial.is_some()
    }

    /// Degree bound of a partial table.
    pub fn degree_bound(&self) -> Option<u32> {
        self.partial
    }

    /// Entries with `j <= j_max`, marked partial.
    pub fn truncated(&self, j_max: u32) -> BettiTable {
        let keep = |j: u32| j <= j_max;
        BettiTable {
            entries: self.entries.iter().filter(|((_, j), _)| keep(*j)).map(|(k, v)| (*k, *v)).collect(),
            ring_vars: self.ring_vars,
            partial: Some(self.partial.map_or(j_max, |p| p.min(j_max))),
            multigraded: self.multigraded.iter().filter(|((_, a), _)| keep(a.iter().sum())).map(|(k, v)| (k.clone(), *v)).collect(),
        }
    }

    /// `sum_j beta_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..=(i, u32::MAX)).map(|(_, b)| b).sum()
    }

    fn require_complete(&self) -> Result<()> {
        match self.partial {
            Some(j) => Err(Error::PartialTable(j)),
            None => Ok(()),
        }
    }

    /// `max { j - i : beta_{i,j} != 0 }`.
    pub fn regularity(&self) -> Result<i64> {
        self.require_complete()?;
        self.entries()
            .map(|(i, j, _)| j as i64 - i as i64)
            .max()
            .ok_or_else(|| Error::Hypothesis("the zero module has no regularity".into()))
    }

    pub fn projective_dimension(&self) -> Result<usize> {
        self.require_complete()?;
        self.entries().map(|(i, _, _)| i).max().ok_or_else(|| Error::Hypothesis("the zero module has no projective dimension".into()))
    }

    /// Each homological degree `1..=pd` is concentrated in a single internal
    /// degree. Requires all minimal generators to be quadrics.
    pub fn is_pure(&self) -> Result<bool> {
        let pd = self.projective_dimension()?;
        if self.entries().any(|(i, j, _)| i == 1 && j != 2) {
            return Err(Error::Hypothesis("purity is only classified for ideals generated by quadrics".into()));
        }
        Ok((1..=pd).all(|i| self.entries().filter(|(k, _, _)| *k == i).count() == 1))
    }

    pub fn to_json(&self) -> String {
        let complete = self.partial.is_none() && !self.entries.is_empty();
        let j = BettiJson {
            entries: self.entries().collect(),
            reg: if complete { self.regularity().ok() } else { None },
            pd: if complete { self.projective_dimension().ok() } else { None },
            pure: if complete { self.is_pure().ok() } else { None },
            partial: self.partial,
            vars: self.ring_vars,
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<BettiTable> {
        let j: BettiJson = serde_json::from_str(s).map_err(|e| Error::Parse(format!("Betti table JSON: {e}")))?;
        let mut t = BettiTable::new(j.vars);
        t.partial = j.partial;
        for (i, deg, b) in j.entries {
            t.set(i, deg, b);
        }
        Ok(t)
    }

    /// Macaulay-style diagram: column `i`, row `j - i`.
    pub fn diagram(&self) -> String {
        let mut out = String::new();
        if let Some(j) = self.partial {
            let _ = writeln!(out, "partial table: internal degrees <= {j}");
        }
        let Some(pd) = self.entries().map(|(i, _, _)| i).max() else {
            out.push_str("zero module\n");
            return out;
        };
        let rows: Vec<i64> = self.entries().map(|(i, j, _)| j as i64 - i as i64).collect();
        let (lo, hi) = (*rows.iter().min().expect("nonempty"), *rows.iter().max().expect("nonempty"));
        let width = self.entries().map(|(_, _, b)| b.to_string().len()).chain((0..=pd).map(|i| self.total(i).to_string().len())).max().unwrap_or(1);
        let label = format!("{hi}").len().max(format!("{lo}").len()).max(5);
        let _ = write!(out, "{:>label$} ", "");
        for i in 0..=pd {
            let _ = write!(out, " {i:>width$}");
        }
        out.push('\n');
        let _ = write!(out, "{:>label$}:", "total");
        for i in 0..=pd {
            let _ = write!(out, " {:>width$}", self.total(i));
        }
        out.push('\n');
        for r in lo..=hi {
            let _ = write!(out, "{r:>label$}:");
            for i in 0..=pd {
                let j = r + i as i64;
                let b = if j < 0 { 0 } else { self.get(i, j as u32) };
                if b == 0 {
                    let _ = write!(out, " {:>width$}", ".");
                } else {
                    let _ = write!(out, " {b:>width$}");
                }
            }
            out.push('\n');
        }
        out
    }
}
