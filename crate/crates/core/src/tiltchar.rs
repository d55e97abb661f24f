//! Characters of the indecomposable tilting modules `T(m)` and greedy
//! decomposition of characters into them.
//!
//! The characters are built recursively:
//!
//! - `T(m) = χ(m)` for `0 <= m <= p-1`;
//! - `T(p-1+t) = χ(p-1+t) + χ(p-1-t)` for `1 <= t <= p-1`;
//! - `T(p-1+t+pn) = T(p-1+t) · T(n)^F` for `0 <= t <= p-1`, `n >= 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::charring::{chi, weyl_expand, weyl_expand_nonnegative, LaurentChar, WeylExpansion, MAX_WEIGHT};
use crate::padic::Prime;
use crate::{Error, Result};

/// How `T(m)` is assembled from smaller pieces.
enum Construction {
    Simple,
    TwoStep { t: u64 },
    Twisted { base: u64, twisted: u64 },
}

fn construction(p: u64, m: u64) -> Construction {
    if m < p {
        Construction::Simple
    } else if m <= 2 * p - 2 {
        Construction::TwoStep { t: m - (p - 1) }
    } else {
        let rest = m - (p - 1);
        Construction::Twisted {
            base: p - 1 + rest % p,
            twisted: rest / p,
        }
    }
}

fn weight(m: u64) -> Result<i64> {
    i64::try_from(m)
        .ok()
        .filter(|&w| w <= MAX_WEIGHT)
        .ok_or(Error::Overflow("tilting weight"))
}

/// `Ch T(m)`, computed without memoisation.
pub fn tilting_char(p: Prime, m: u64) -> Result<LaurentChar> {
    let q = p.get();
    match construction(q, m) {
        Construction::Simple => chi(weight(m)?),
        Construction::TwoStep { t } => {
            chi(weight(q - 1 + t)?)?.checked_add(&chi(weight(q - 1 - t)?)?)
        }
        Construction::Twisted { base, twisted } => tilting_char(p, base)?
            .checked_mul(&tilting_char(p, twisted)?.frobenius_twist(p)?),
    }
}

/// Memoised tilting characters for one prime.
///
/// The cache is owned by the table and mutated through `&mut self`; share a
/// table across threads by giving each thread its own.
#[derive(Debug, Clone)]
pub struct TiltingCharacters {
    p: Prime,
    chars: HashMap<u64, LaurentChar>,
    weyl: HashMap<u64, WeylExpansion>,
}

impl TiltingCharacters {
    pub fn new(p: Prime) -> Self {
        TiltingCharacters {
            p,
            chars: HashMap::new(),
            weyl: HashMap::new(),
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn character(&mut self, m: u64) -> Result<&LaurentChar> {
        if !self.chars.contains_key(&m) {
            let q = self.p.get();
            let c = match construction(q, m) {
                Construction::Twisted { base, twisted } => {
                    let p = self.p;
                    let twisted = self.character(twisted)?.frobenius_twist(p)?;
                    self.character(base)?.checked_mul(&twisted)?
                }
                _ => tilting_char(self.p, m)?,
            };
            self.chars.insert(m, c);
        }
        Ok(&self.chars[&m])
    }

    /// `Ch T(m)` in the Weyl basis.
    pub fn weyl(&mut self, m: u64) -> Result<&WeylExpansion> {
        if !self.weyl.contains_key(&m) {
            let w = weyl_expand(self.character(m)?)?;
            self.weyl.insert(m, w);
        }
        Ok(&self.weyl[&m])
    }

    pub fn dimension(&mut self, m: u64) -> Result<i64> {
        self.character(m)?.checked_dimension()
    }

    /// Peels tilting characters off `c` from the top weight down.
    ///
    /// At each step the highest surviving weight `m` with multiplicity `k`
    /// contributes `k·T(m)`. If a subtraction drives some Weyl multiplicity
    /// negative the outcome is [`Greedy::Failed`].
    pub fn greedy_decompose(&mut self, c: &LaurentChar) -> Result<Greedy> {
        let mut remainder = weyl_expand_nonnegative(c)?;
        let mut found = BTreeMap::new();
        while let Some((m, k)) = remainder.top() {
            let m = m as u64;
            let tilt = self.weyl(m)?;
            remainder.sub_scaled(tilt, k)?;
            if let Some((weight, _)) = tilt
                .iter()
                .rev()
                .map(|(w, _)| (w, remainder.multiplicity(w)))
                .find(|&(_, left)| left < 0)
            {
                return Ok(Greedy::Failed {
                    weight: weight as u64,
                    remainder,
                });
            }
            found.insert(m, k as u64);
        }
        Ok(Greedy::Decomposed(TiltingDecomposition {
            multiplicities: found,
        }))
    }

    /// `Σ mult(m) · Ch T(m)`.
    pub fn reconstruct(&mut self, d: &TiltingDecomposition) -> Result<LaurentChar> {
        let mut out = LaurentChar::zero();
        for (m, k) in d.iter() {
            let k = i64::try_from(k).map_err(|_| Error::Overflow("multiplicity"))?;
            out = out.checked_add(&self.character(m)?.checked_scale(k)?)?;
        }
        Ok(out)
    }

    pub fn decomposition_dimension(&mut self, d: &TiltingDecomposition) -> Result<i64> {
        d.iter().try_fold(0i64, |acc, (m, k)| {
            let dim = self.dimension(m)?;
            i64::try_from(k)
                .ok()
                .and_then(|k| k.checked_mul(dim))
                .and_then(|x| acc.checked_add(x))
                .ok_or(Error::Overflow("dimension"))
        })
    }
}

/// Result of [`TiltingCharacters::greedy_decompose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Greedy {
    Decomposed(TiltingDecomposition),
    /// Nonnegativity first broke at `weight`; `remainder` is the Weyl
    /// expansion left at that point.
    Failed { weight: u64, remainder: WeylExpansion },
}

impl Greedy {
    pub fn decomposition(self) -> Option<TiltingDecomposition> {
        match self {
            Greedy::Decomposed(d) => Some(d),
            Greedy::Failed { .. } => None,
        }
    }
}

/// Multiplicities of indecomposable tilting characters `T(m)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TiltingDecomposition {
    multiplicities: BTreeMap<u64, u64>,
}

impl TiltingDecomposition {
    pub fn from_multiplicities(entries: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut multiplicities = BTreeMap::new();
        for (m, k) in entries.into_iter().filter(|&(_, k)| k > 0) {
            *multiplicities.entry(m).or_insert(0) += k;
        }
        TiltingDecomposition { multiplicities }
    }

    pub fn multiplicity(&self, m: u64) -> u64 {
        self.multiplicities.get(&m).copied().unwrap_or(0)
    }

    /// `(m, multiplicity)` from the highest weight down.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.multiplicities.iter().rev().map(|(&m, &k)| (m, k))
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// JSON object keyed by weight, highest first: `{"5": 1, "3": 1}`.
    pub fn to_json(&self) -> String {
        let body: Vec<String> = self.iter().map(|(m, k)| format!("\"{m}\": {k}")).collect();
        format!("{{{}}}", body.join(", "))
    }
}

impl fmt::Display for TiltingDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, k)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if k != 1 {
                write!(f, "{k}")?;
            }
            write!(f, "T({m})")?;
        }
        Ok(())
    }
}
