//! Exact character arithmetic for `SL2`.
//!
//! Characters live in `Z[x, x^-1]`. [`LaurentChar`] stores a sparse sorted
//! list of `(exponent, coefficient)` terms with no zero coefficients, so
//! structural equality is equality of polynomials. [`WeylExpansion`] is the
//! same character written in the basis of Weyl characters `χ(m)`.
//!
//! All integer arithmetic is checked. The operator impls (`+`, `-`, `*`)
//! panic on overflow; the `checked_*` methods report it as
//! [`Error::Overflow`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::padic::Prime;
use crate::{Error, Result};

/// Largest weight accepted by [`chi`] and the higher-level constructors.
pub const MAX_WEIGHT: i64 = 1 << 20;

/// Products whose exponent range is at most this wide are accumulated in a
/// dense buffer.
const DENSE_LIMIT: usize = 1 << 22;

/// An integer Laurent polynomial in one variable.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentChar {
    // ascending exponents, nonzero coefficients
    terms: Vec<(i64, i64)>,
}

impl LaurentChar {
    pub fn zero() -> Self {
        LaurentChar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exponent: i64, coefficient: i64) -> Self {
        if coefficient == 0 {
            Self::zero()
        } else {
            LaurentChar {
                terms: vec![(exponent, coefficient)],
            }
        }
    }

    /// Sums arbitrary `(exponent, coefficient)` pairs into canonical form.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Result<Self> {
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for (e, c) in terms {
            let slot = acc.entry(e).or_insert(0);
            *slot = slot.checked_add(c).ok_or(Error::Overflow("from_terms"))?;
        }
        Ok(LaurentChar {
            terms: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
        })
    }

    /// Canonical terms in ascending exponent order.
    pub fn terms(&self) -> &[(i64, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> i64 {
        match self.terms.binary_search_by_key(&exponent, |&(e, _)| e) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    /// Lowest and highest exponent, or `None` for the zero character.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        Some((self.terms.first()?.0, self.terms.last()?.0))
    }

    /// Invariance under `x -> x^-1`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.terms.len();
        (0..n).all(|i| {
            let (e, c) = self.terms[i];
            let (f, d) = self.terms[n - 1 - i];
            e == -f && c == d
        })
    }

    /// Value at `x = 1`, the dimension of the module.
    pub fn dimension(&self) -> i64 {
        self.checked_dimension().expect("dimension overflow")
    }

    pub fn checked_dimension(&self) -> Result<i64> {
        self.terms
            .iter()
            .try_fold(0i64, |acc, &(_, c)| acc.checked_add(c))
            .ok_or(Error::Overflow("dimension"))
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| c.checked_mul(k).map(|c| (e, c)))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Overflow("scale"))?;
        Ok(LaurentChar { terms })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.merge(other, 1)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.merge(other, -1)
    }

    fn merge(&self, other: &Self, sign: i64) -> Result<Self> {
        let overflow = || Error::Overflow("addition");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let left = self.terms.get(i);
            let right = other.terms.get(j);
            match (left, right) {
                (Some(&(e, c)), Some(&(f, _))) if e < f => {
                    out.push((e, c));
                    i += 1;
                }
                (Some(&(e, c)), Some(&(f, d))) if e == f => {
                    let sum = c.checked_add(d.checked_mul(sign).ok_or_else(overflow)?);
                    let sum = sum.ok_or_else(overflow)?;
                    if sum != 0 {
                        out.push((e, sum));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(e, c)), None) => {
                    out.push((e, c));
                    i += 1;
                }
                (_, Some(&(f, d))) => {
                    out.push((f, d.checked_mul(sign).ok_or_else(overflow)?));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(LaurentChar { terms: out })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let overflow = || Error::Overflow("multiplication");
        let (Some((alo, ahi)), Some((blo, bhi))) = (self.exponent_range(), other.exponent_range())
        else {
            return Ok(Self::zero());
        };
        let lo = alo.checked_add(blo).ok_or_else(overflow)?;
        let hi = ahi.checked_add(bhi).ok_or_else(overflow)?;
        let width = hi.checked_sub(lo).ok_or_else(overflow)?;

        if (width as u64) < DENSE_LIMIT as u64 {
            let mut dense = vec![0i64; width as usize + 1];
            for &(e, c) in &self.terms {
                for &(f, d) in &other.terms {
                    let slot = &mut dense[(e + f - lo) as usize];
                    let prod = c.checked_mul(d).ok_or_else(overflow)?;
                    *slot = slot.checked_add(prod).ok_or_else(overflow)?;
                }
            }
            Ok(LaurentChar::from_dense(lo, &dense))
        } else {
            let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
            for &(e, c) in &self.terms {
                for &(f, d) in &other.terms {
                    let slot = acc.entry(e + f).or_insert(0);
                    let prod = c.checked_mul(d).ok_or_else(overflow)?;
                    *slot = slot.checked_add(prod).ok_or_else(overflow)?;
                }
            }
            Ok(LaurentChar {
                terms: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
            })
        }
    }

    /// Substitutes `x -> x^p`: the character of the Frobenius twist.
    pub fn frobenius_twist(&self, p: Prime) -> Result<Self> {
        let q = i64::try_from(p.get()).map_err(|_| Error::Overflow("frobenius twist"))?;
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| e.checked_mul(q).map(|e| (e, c)))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Overflow("frobenius twist"))?;
        Ok(LaurentChar { terms })
    }

    fn from_dense(lo: i64, dense: &[i64]) -> Self {
        LaurentChar {
            terms: dense
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(i, &c)| (lo + i as i64, c))
                .collect(),
        }
    }
}

impl fmt::Debug for LaurentChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentChar({self})")
    }
}

/// Renders terms in decreasing exponent order, e.g. `x^5 + 2x + 2x^-1 + x^-5`.
impl fmt::Display for LaurentChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, &(e, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.unsigned_abs();
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if e == 0 {
                write!(f, "{magnitude}")?;
                continue;
            }
            if magnitude != 1 {
                write!(f, "{magnitude}")?;
            }
            if e == 1 {
                f.write_str("x")?;
            } else {
                write!(f, "x^{e}")?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentChar {
    type Output = LaurentChar;
    fn add(self, rhs: &LaurentChar) -> LaurentChar {
        self.checked_add(rhs).expect("character addition overflowed")
    }
}

impl Sub for &LaurentChar {
    type Output = LaurentChar;
    fn sub(self, rhs: &LaurentChar) -> LaurentChar {
        self.checked_sub(rhs).expect("character subtraction overflowed")
    }
}

impl Mul for &LaurentChar {
    type Output = LaurentChar;
    fn mul(self, rhs: &LaurentChar) -> LaurentChar {
        self.checked_mul(rhs).expect("character multiplication overflowed")
    }
}

impl Neg for &LaurentChar {
    type Output = LaurentChar;
    fn neg(self) -> LaurentChar {
        self.checked_scale(-1).expect("character negation overflowed")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for LaurentChar {
            type Output = LaurentChar;
            fn $method(self, rhs: LaurentChar) -> LaurentChar {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for LaurentChar {
    fn sum<I: Iterator<Item = LaurentChar>>(iter: I) -> Self {
        iter.fold(LaurentChar::zero(), |acc, c| &acc + &c)
    }
}

fn check_weight(r: i64) -> Result<()> {
    if (-1..=MAX_WEIGHT).contains(&r) {
        Ok(())
    } else {
        Err(Error::InvalidWeight(r))
    }
}

/// The Weyl character `χ(r) = x^r + x^(r-2) + ... + x^-r`; zero for `r = -1`.
pub fn chi(r: i64) -> Result<LaurentChar> {
    check_weight(r)?;
    Ok(LaurentChar {
        terms: (0..=r).rev().map(|i| (r - 2 * i, 1)).collect(),
    })
}

pub fn multiply(a: &LaurentChar, b: &LaurentChar) -> Result<LaurentChar> {
    a.checked_mul(b)
}

/// Highest weights of the Weyl characters in `χ(r)χ(s)`: `r+s, r+s-2, ..., |r-s|`.
///
/// The arguments may come in either order.
pub fn clebsch_gordan(r: i64, s: i64) -> Result<Vec<i64>> {
    for w in [r, s] {
        if !(0..=MAX_WEIGHT).contains(&w) {
            return Err(Error::InvalidWeight(w));
        }
    }
    let (hi, lo) = (r.max(s), r.min(s));
    Ok((0..=lo).map(|i| hi + lo - 2 * i).collect())
}

pub fn frobenius_twist(c: &LaurentChar, p: Prime) -> Result<LaurentChar> {
    c.frobenius_twist(p)
}

/// A character written as an integer combination of Weyl characters.
///
/// Multiplicities may be negative for virtual characters; zero entries are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct WeylExpansion {
    multiplicities: BTreeMap<i64, i64>,
}

impl WeylExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_multiplicities(entries: impl IntoIterator<Item = (i64, i64)>) -> Result<Self> {
        let mut out = Self::new();
        for (m, k) in entries {
            out.add(m, k)?;
        }
        Ok(out)
    }

    pub fn multiplicity(&self, weight: i64) -> i64 {
        self.multiplicities.get(&weight).copied().unwrap_or(0)
    }

    /// Adds `k` copies of `χ(weight)`.
    pub fn add(&mut self, weight: i64, k: i64) -> Result<()> {
        if !(0..=MAX_WEIGHT).contains(&weight) {
            return Err(Error::InvalidWeight(weight));
        }
        let slot = self.multiplicities.entry(weight).or_insert(0);
        *slot = slot.checked_add(k).ok_or(Error::Overflow("weyl multiplicity"))?;
        if *slot == 0 {
            self.multiplicities.remove(&weight);
        }
        Ok(())
    }

    /// Subtracts `k` times `other`, term by term.
    pub fn sub_scaled(&mut self, other: &WeylExpansion, k: i64) -> Result<()> {
        for (&m, &j) in &other.multiplicities {
            let delta = j.checked_mul(k).ok_or(Error::Overflow("weyl multiplicity"))?;
            self.add(m, -delta)?;
        }
        Ok(())
    }

    /// `(weight, multiplicity)` in ascending weight order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.multiplicities.iter().map(|(&m, &k)| (m, k))
    }

    pub fn top(&self) -> Option<(i64, i64)> {
        self.iter().next_back()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.multiplicities.values().all(|&k| k > 0)
    }

    pub fn dimension(&self) -> Result<i64> {
        self.iter().try_fold(0i64, |acc, (m, k)| {
            k.checked_mul(m + 1)
                .and_then(|d| acc.checked_add(d))
                .ok_or(Error::Overflow("dimension"))
        })
    }

    pub fn to_char(&self) -> Result<LaurentChar> {
        let Some((top, _)) = self.top() else {
            return Ok(LaurentChar::zero());
        };
        // Coefficient of x^j (j >= 0) is the sum of k_m over m >= j, m = j mod 2.
        let mut dense = vec![0i64; top as usize + 1];
        let mut running = [0i64; 2];
        for j in (0..=top).rev() {
            let parity = (j & 1) as usize;
            let k = self.multiplicity(j);
            running[parity] = running[parity]
                .checked_add(k)
                .ok_or(Error::Overflow("weyl reconstruction"))?;
            dense[j as usize] = running[parity];
        }
        let mut terms: Vec<(i64, i64)> = Vec::with_capacity(2 * dense.len());
        terms.extend(
            (1..=top)
                .rev()
                .filter(|&j| dense[j as usize] != 0)
                .map(|j| (-j, dense[j as usize])),
        );
        terms.extend(
            (0..=top)
                .filter(|&j| dense[j as usize] != 0)
                .map(|j| (j, dense[j as usize])),
        );
        Ok(LaurentChar { terms })
    }
}

/// Renders as `χ(5) + χ(3) + 2χ(1)`, highest weight first.
impl fmt::Display for WeylExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, k)) in self.iter().rev().enumerate() {
            match (i, k < 0) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if k.unsigned_abs() != 1 {
                write!(f, "{}", k.unsigned_abs())?;
            }
            write!(f, "χ({m})")?;
        }
        Ok(())
    }
}

/// Rewrites a symmetric character in the Weyl basis.
///
/// Peeling `k·χ(e)` off the top exponent `e` repeatedly leaves, for each
/// `e >= 0`, the multiplicity `c(e) - c(e+2)`; that closed form is what is
/// computed here. The result may contain negative multiplicities.
pub fn weyl_expand(c: &LaurentChar) -> Result<WeylExpansion> {
    if !c.is_symmetric() {
        return Err(Error::Asymmetric);
    }
    let mut out = WeylExpansion::new();
    for &(e, coeff) in c.terms().iter().filter(|&&(e, _)| e >= 0) {
        let k = coeff
            .checked_sub(c.coefficient(e + 2))
            .ok_or(Error::Overflow("weyl expansion"))?;
        // Weights absent from c but with c(e+2) != 0 are picked up below.
        if k != 0 {
            out.add(e, k)?;
        }
    }
    for &(e, coeff) in c.terms().iter().filter(|&&(e, _)| e >= 2) {
        if c.coefficient(e - 2) == 0 {
            out.add(e - 2, -coeff)?;
        }
    }
    Ok(out)
}

/// Like [`weyl_expand`], but rejects characters that are not genuine
/// (nonnegative) sums of Weyl characters.
pub fn weyl_expand_nonnegative(c: &LaurentChar) -> Result<WeylExpansion> {
    let w = weyl_expand(c)?;
    if let Some((weight, multiplicity)) = w.iter().rev().find(|&(_, k)| k < 0) {
        return Err(Error::NegativeMultiplicity {
            weight,
            multiplicity,
        });
    }
    Ok(w)
}

/// Exact division in `Z[x, x^-1]`.
///
/// Returns `Ok(None)` when `divisor` does not divide `numerator`. Long
/// division runs from the top exponent and fails as soon as a leading
/// coefficient is not an integer multiple of the divisor's.
pub fn exact_divide(numerator: &LaurentChar, divisor: &LaurentChar) -> Result<Option<LaurentChar>> {
    let Some((dlo, dhi)) = divisor.exponent_range() else {
        return Err(Error::ZeroDivisor);
    };
    let Some((nlo, nhi)) = numerator.exponent_range() else {
        return Ok(Some(LaurentChar::zero()));
    };
    let overflow = || Error::Overflow("exact division");
    let dspan = dhi.checked_sub(dlo).ok_or_else(overflow)?;
    let nspan = nhi.checked_sub(nlo).ok_or_else(overflow)?;
    if nspan < dspan {
        return Ok(None);
    }
    let lead = divisor.coefficient(dhi);
    // Non-divisible inputs can make the integer quotient explode; a nonzero
    // remainder modulo a large prime settles those without overflowing.
    if !divides_modulo(numerator, divisor, (nlo, nspan), (dlo, dspan)) {
        return Ok(None);
    }

    let mut rem = vec![0i64; nspan as usize + 1];
    for &(e, c) in numerator.terms() {
        rem[(e - nlo) as usize] = c;
    }
    let dterms: Vec<(usize, i64)> = divisor
        .terms()
        .iter()
        .map(|&(e, c)| ((e - dlo) as usize, c))
        .collect();

    // Quotient exponents run from nlo - dlo up to nhi - dhi.
    let qlen = (nspan - dspan) as usize + 1;
    let mut quotient = vec![0i64; qlen];
    for qi in (0..qlen).rev() {
        let top = rem[qi + dspan as usize];
        if top == 0 {
            continue;
        }
        if top % lead != 0 {
            return Ok(None);
        }
        let q = top.checked_div(lead).ok_or_else(overflow)?;
        quotient[qi] = q;
        for &(offset, c) in &dterms {
            let slot = &mut rem[qi + offset];
            let prod = q.checked_mul(c).ok_or_else(overflow)?;
            *slot = slot.checked_sub(prod).ok_or_else(overflow)?;
        }
    }
    if rem.iter().any(|&c| c != 0) {
        return Ok(None);
    }
    Ok(Some(LaurentChar::from_dense(nlo - dlo, &quotient)))
}

const MODULUS: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Long division over `Z / MODULUS`. Returns `true` when the remainder
/// vanishes there, or when the leading coefficient is not invertible.
fn divides_modulo(
    numerator: &LaurentChar,
    divisor: &LaurentChar,
    (nlo, nspan): (i64, i64),
    (dlo, dspan): (i64, i64),
) -> bool {
    let reduce = |c: i64| c.rem_euclid(MODULUS as i64) as u64;
    let lead = reduce(divisor.coefficient(dlo + dspan));
    if lead == 0 {
        return true;
    }
    let inverse = pow_mod(lead, MODULUS - 2);
    let mut rem = vec![0u64; nspan as usize + 1];
    for &(e, c) in numerator.terms() {
        rem[(e - nlo) as usize] = reduce(c);
    }
    let dterms: Vec<(usize, u64)> = divisor
        .terms()
        .iter()
        .map(|&(e, c)| ((e - dlo) as usize, reduce(c)))
        .collect();
    for qi in (0..=(nspan - dspan) as usize).rev() {
        let top = rem[qi + dspan as usize];
        if top == 0 {
            continue;
        }
        let q = mul_mod(top, inverse);
        for &(offset, c) in &dterms {
            let slot = &mut rem[qi + offset];
            *slot = (*slot + MODULUS - mul_mod(q, c)) % MODULUS;
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// Whether the Steinberg character `χ(p-1)` divides `χ(r)`.
///
/// Decided both by long division and by the congruence `r + 1 = 0 (mod p)`;
/// a disagreement is reported as [`Error::Inconsistency`].
pub fn steinberg_divides(p: Prime, r: u64) -> Result<bool> {
    let weight = i64::try_from(r).map_err(|_| Error::Overflow("weight"))?;
    let steinberg = chi(p.get() as i64 - 1)?;
    let by_division = exact_divide(&chi(weight)?, &steinberg)?.is_some();
    let by_congruence = (r + 1).is_multiple_of(p.get());
    if by_division != by_congruence {
        return Err(Error::Inconsistency(format!(
            "χ({}) | χ({r}): division says {by_division}, congruence says {by_congruence}",
            p.get() - 1
        )));
    }
    Ok(by_division)
}

/// Checks the character identity of the Jantzen sequence for `r = pt + v`:
///
/// `χ(pt+v) = χ(v)·χ(t)^F + χ(p-2-v)·χ(t-1)^F`, with `χ(-1) = 0`.
pub fn jantzen_identity_check(p: Prime, t: u64, v: u64) -> Result<bool> {
    let q = p.get();
    if v + 2 > q {
        return Err(Error::ResidueOutOfRange {
            value: v,
            max: q.saturating_sub(2),
        });
    }
    let to_weight = |n: u64| i64::try_from(n).map_err(|_| Error::Overflow("weight"));
    let r = t
        .checked_mul(q)
        .and_then(|pt| pt.checked_add(v))
        .ok_or(Error::Overflow("weight"))?;
    let t = to_weight(t)?;
    let lhs = chi(to_weight(r)?)?;
    let upper = chi(to_weight(v)?)?.checked_mul(&chi(t)?.frobenius_twist(p)?)?;
    let lower = chi(to_weight(q - 2 - v)?)?.checked_mul(&chi(t - 1)?.frobenius_twist(p)?)?;
    Ok(lhs == upper.checked_add(&lower)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn lc(terms: &[(i64, i64)]) -> LaurentChar {
        LaurentChar::from_terms(terms.iter().copied()).unwrap()
    }

    fn chis(weights: &[i64]) -> LaurentChar {
        weights.iter().map(|&w| chi(w).unwrap()).sum()
    }

    /// Literal top-down peeling, kept independent of `weyl_expand`.
    fn peel(c: &LaurentChar) -> WeylExpansion {
        let mut rest = c.clone();
        let mut out = WeylExpansion::new();
        while let Some((_, top)) = rest.exponent_range() {
            let k = rest.coefficient(top);
            out.add(top, k).unwrap();
            rest = &rest - &chi(top).unwrap().checked_scale(k).unwrap();
        }
        out
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(1).unwrap(), lc(&[(1, 1), (-1, 1)]));
        assert_eq!(chi(-1).unwrap(), LaurentChar::zero());
        assert_eq!(chi(2).unwrap(), lc(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(chi(0).unwrap(), LaurentChar::one());
        assert_eq!(chi(-2), Err(Error::InvalidWeight(-2)));
        assert_eq!(chi(MAX_WEIGHT + 1), Err(Error::InvalidWeight(MAX_WEIGHT + 1)));
    }

    #[test]
    fn multiply_examples() {
        let c21 = multiply(&chi(2).unwrap(), &chi(1).unwrap()).unwrap();
        assert_eq!(c21, lc(&[(3, 1), (1, 2), (-1, 2), (-3, 1)]));
        assert_eq!(c21, chis(&[3, 1]));
        assert_eq!(&chi(7).unwrap() * &LaurentChar::zero(), LaurentChar::zero());
        let c11 = multiply(&chi(1).unwrap(), &chi(1).unwrap()).unwrap();
        assert_eq!(c11, lc(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(c11, chis(&[2, 0]));
    }

    #[test]
    fn sparse_multiplication_path() {
        let a = lc(&[(-(1 << 23), 3), (1 << 23, 3)]);
        let b = lc(&[(1, 2), (-1, -1)]);
        assert_eq!(
            &a * &b,
            lc(&[(-(1 << 23) + 1, 6), (-(1 << 23) - 1, -3), ((1 << 23) + 1, 6), ((1 << 23) - 1, -3)])
        );
    }

    #[test]
    fn overflow_is_reported() {
        let big = LaurentChar::monomial(0, i64::MAX);
        assert_eq!(big.checked_mul(&big), Err(Error::Overflow("multiplication")));
        assert_eq!(big.checked_add(&LaurentChar::one()), Err(Error::Overflow("addition")));
        let far = LaurentChar::monomial(i64::MAX / 2, 1);
        assert_eq!(far.frobenius_twist(prime(3)), Err(Error::Overflow("frobenius twist")));
    }

    #[test]
    fn clebsch_gordan_examples() {
        assert_eq!(clebsch_gordan(3, 2).unwrap(), vec![5, 3, 1]);
        assert_eq!(clebsch_gordan(4, 0).unwrap(), vec![4]);
        assert_eq!(clebsch_gordan(1, 1).unwrap(), vec![2, 0]);
        assert_eq!(clebsch_gordan(2, 3).unwrap(), vec![5, 3, 1]);
        assert_eq!(clebsch_gordan(-1, 3), Err(Error::InvalidWeight(-1)));
        let sum: LaurentChar = clebsch_gordan(3, 2)
            .unwrap()
            .into_iter()
            .map(|w| chi(w).unwrap())
            .sum();
        assert_eq!(sum, &chi(3).unwrap() * &chi(2).unwrap());
    }

    #[test]
    fn weyl_expand_examples() {
        let w = weyl_expand(&lc(&[(2, 1), (0, 2), (-2, 1)])).unwrap();
        assert_eq!(w, WeylExpansion::from_multiplicities([(2, 1), (0, 1)]).unwrap());
        assert!(weyl_expand(&LaurentChar::zero()).unwrap().is_empty());
        let w = weyl_expand(&chis(&[5, 1])).unwrap();
        assert_eq!(w, WeylExpansion::from_multiplicities([(5, 1), (1, 1)]).unwrap());
        assert_eq!(weyl_expand(&lc(&[(1, 1)])), Err(Error::Asymmetric));
    }

    #[test]
    fn weyl_expand_signed_and_gapped() {
        // x^4 + x^-4 = χ(4) - χ(2); coefficient at x^2 is absent.
        let c = lc(&[(4, 1), (-4, 1)]);
        let w = weyl_expand(&c).unwrap();
        assert_eq!(w, WeylExpansion::from_multiplicities([(4, 1), (2, -1)]).unwrap());
        assert_eq!(w, peel(&c));
        assert_eq!(
            weyl_expand_nonnegative(&c),
            Err(Error::NegativeMultiplicity { weight: 2, multiplicity: -1 })
        );
        assert_eq!(w.to_char().unwrap(), c);
    }

    #[test]
    fn frobenius_examples() {
        let p3 = prime(3);
        assert_eq!(frobenius_twist(&chi(1).unwrap(), p3).unwrap(), lc(&[(3, 1), (-3, 1)]));
        assert!(frobenius_twist(&LaurentChar::zero(), p3).unwrap().is_zero());
        assert_eq!(
            frobenius_twist(&chi(2).unwrap(), prime(2)).unwrap(),
            lc(&[(4, 1), (0, 1), (-4, 1)])
        );
    }

    #[test]
    fn exact_divide_examples() {
        let q = exact_divide(&chi(5).unwrap(), &chi(2).unwrap()).unwrap().unwrap();
        assert_eq!(q, lc(&[(3, 1), (-3, 1)]));
        assert_eq!(&q * &chi(2).unwrap(), chi(5).unwrap());
        assert_eq!(exact_divide(&chi(4).unwrap(), &chi(1).unwrap()).unwrap(), None);
        assert_eq!(
            exact_divide(&LaurentChar::zero(), &chi(1).unwrap()).unwrap(),
            Some(LaurentChar::zero())
        );
        assert_eq!(exact_divide(&chi(3).unwrap(), &LaurentChar::zero()), Err(Error::ZeroDivisor));
        // The integer quotient of x^60 by x + 3 leaves i64 long before the
        // nonzero remainder shows up.
        assert_eq!(exact_divide(&lc(&[(60, 1)]), &lc(&[(1, 1), (0, 3)])).unwrap(), None);
        // Non-monic divisor, integral quotient.
        let num = lc(&[(3, 6), (1, -4), (0, 2)]);
        let den = lc(&[(1, 2)]);
        assert_eq!(exact_divide(&num, &den).unwrap(), Some(lc(&[(2, 3), (0, -2), (-1, 1)])));
        // Divisible over Q but not over Z.
        assert_eq!(exact_divide(&lc(&[(1, 1)]), &lc(&[(0, 2)])).unwrap(), None);
    }

    #[test]
    fn steinberg_examples() {
        assert!(steinberg_divides(prime(3), 5).unwrap());
        assert!(!steinberg_divides(prime(2), 4).unwrap());
        assert!(steinberg_divides(prime(5), 4).unwrap());
    }

    #[test]
    fn jantzen_examples() {
        assert!(jantzen_identity_check(prime(2), 3, 0).unwrap());
        assert!(jantzen_identity_check(prime(3), 0, 1).unwrap());
        assert!(jantzen_identity_check(prime(5), 2, 3).unwrap());
        assert_eq!(
            jantzen_identity_check(prime(3), 2, 2),
            Err(Error::ResidueOutOfRange { value: 2, max: 1 })
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(chis(&[5, 1]).to_string(), "x^5 + x^3 + 2x + 2x^-1 + x^-3 + x^-5");
        assert_eq!(chi(1).unwrap().to_string(), "x + x^-1");
        assert_eq!(chi(0).unwrap().to_string(), "1");
        assert_eq!(chis(&[2, 0]).to_string(), "x^2 + 2 + x^-2");
        assert_eq!(lc(&[(2, -1), (0, 3), (-1, -2)]).to_string(), "-x^2 + 3 - 2x^-1");
        assert_eq!(LaurentChar::zero().to_string(), "0");
        let w = WeylExpansion::from_multiplicities([(4, 1), (2, -2), (0, 3)]).unwrap();
        assert_eq!(w.to_string(), "χ(4) - 2χ(2) + 3χ(0)");
        assert_eq!(WeylExpansion::new().to_string(), "0");
    }

    #[test]
    fn chi_times_e_splits_into_neighbours() {
        let e = chi(1).unwrap();
        for r in 1..=300 {
            assert_eq!(&chi(r).unwrap() * &e, chis(&[r - 1, r + 1]), "r = {r}");
        }
    }

    #[test]
    fn steinberg_twist_factorisation() {
        for p in [2u64, 3, 5, 7] {
            let p = prime(p);
            let q = p.get() as i64;
            let st = chi(q - 1).unwrap();
            for t in 0..=60 {
                let twisted = chi(t).unwrap().frobenius_twist(p).unwrap();
                assert_eq!(chi(q * t + q - 1).unwrap(), &st * &twisted);
            }
        }
    }

    fn symmetric_char() -> impl Strategy<Value = LaurentChar> {
        prop::collection::vec((0i64..40, -5i64..=5), 0..8).prop_map(|pairs| {
            LaurentChar::from_terms(pairs.into_iter().flat_map(|(e, c)| {
                if e == 0 { vec![(0, c)] } else { vec![(e, c), (-e, c)] }
            }))
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn dimension_is_multiplicative(r in 0i64..300, s in 0i64..300) {
            let prod = &chi(r).unwrap() * &chi(s).unwrap();
            prop_assert_eq!(chi(r).unwrap().dimension(), r + 1);
            prop_assert_eq!(prod.dimension(), (r + 1) * (s + 1));
            prop_assert!(prod.is_symmetric());
        }

        #[test]
        fn weyl_expansion_matches_peeling(c in symmetric_char()) {
            let w = weyl_expand(&c).unwrap();
            prop_assert_eq!(&w, &peel(&c));
            prop_assert_eq!(w.to_char().unwrap(), c.clone());
            prop_assert_eq!(w.dimension().unwrap(), c.dimension());
        }

        #[test]
        fn weyl_round_trip(entries in prop::collection::vec((0i64..=400, 1i64..5), 0..10)) {
            let w = WeylExpansion::from_multiplicities(entries).unwrap();
            let c = w.to_char().unwrap();
            prop_assert_eq!(weyl_expand(&c).unwrap(), w.clone());
            prop_assert_eq!(w.dimension().unwrap(), c.dimension());
        }

        #[test]
        fn division_inverts_multiplication(a in symmetric_char(), b in symmetric_char()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(exact_divide(&prod, &b).unwrap(), Some(a));
        }

        #[test]
        fn division_result_is_exact(a in symmetric_char(), b in symmetric_char()) {
            prop_assume!(!b.is_zero());
            if let Some(q) = exact_divide(&a, &b).unwrap() {
                prop_assert_eq!(&q * &b, a);
            }
        }

        #[test]
        fn ring_laws(a in symmetric_char(), b in symmetric_char(), c in symmetric_char()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }
    }
}
