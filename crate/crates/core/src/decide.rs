//! Deciding whether `∇(r) ⊗ Δ(s)` is tilting.
//!
//! Two independent procedures are provided:
//!
//! - [`is_tilting_explicit`] reads the answer off the base-`p` digits of the
//!   primitive pair `(r̂, ŝ)`: the product is tilting iff
//!   `r̂ = a·p^n + p^n - 1` with `0 <= a <= p-2`, `n >= 0` and `ŝ < p^(n+1)`,
//!   or the same with the roles of `r̂` and `ŝ` exchanged.
//! - [`is_tilting_recursive`] reduces `(r, s)` through the Frobenius
//!   quotients `(r div p, s div p)` until a base case is reached.
//!
//! Both return a [`Verdict`] whose trace can be re-checked rule by rule with
//! [`Verdict::replay`].

use std::fmt;

use crate::padic::{primitive_pair, Prime, PrimitivePair};
use crate::{Error, Result};

/// Residues mod `p` and band membership of a pair of weights.
///
/// A band is a run `{np-1, np, ..., (n+1)p-1}` of `p+1` consecutive weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairClass {
    pub r0: u64,
    pub s0: u64,
    pub same_band: bool,
}

pub fn classify(p: Prime, r: u64, s: u64) -> PairClass {
    let q = p.get();
    let (rq, sq) = (r / q, s / q);
    let (r0, s0) = (r % q, s % q);
    // A weight w = -1 (mod p) also opens the band of quotient w/p + 1.
    let same_band = rq == sq
        || (r0 == q - 1 && rq + 1 == sq)
        || (s0 == q - 1 && sq + 1 == rq);
    PairClass { r0, s0, same_band }
}

/// True when neither weight is `-1 (mod p)` and the two do not share a band;
/// such products are never tilting.
pub fn necessary_not_tilting(p: Prime, r: u64, s: u64) -> bool {
    let class = classify(p, r, s);
    let top = p.get() - 1;
    class.r0 != top && class.s0 != top && !class.same_band
}

/// Which weight of the primitive pair carries the digit pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    R,
    S,
}

/// `hat = a·p^n + p^n - 1` with `other < p^(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Witness {
    pub side: Side,
    pub a: u64,
    pub n: u32,
}

/// `(a, n)` with `x = a·p^n + p^n - 1`, `0 <= a <= p-2`, and `bound < p^(n+1)`.
fn digit_form(p: u64, x: u64, bound: u64) -> Option<(u64, u32)> {
    let mut v = x as u128 + 1;
    let p = p as u128;
    let mut n = 0u32;
    while v.is_multiple_of(p) {
        v /= p;
        n += 1;
    }
    // x + 1 = (a + 1)·p^n needs a + 1 to be a single base-p digit.
    if v >= p {
        return None;
    }
    let limit = p.checked_pow(n + 1).unwrap_or(u128::MAX);
    ((bound as u128) < limit).then(|| (v as u64 - 1, n))
}

/// The digit witness for a primitive pair, if any.
pub fn digit_witness(p: Prime, r_hat: u64, s_hat: u64) -> Option<Witness> {
    let q = p.get();
    digit_form(q, r_hat, s_hat)
        .map(|(a, n)| Witness { side: Side::R, a, n })
        .or_else(|| digit_form(q, s_hat, r_hat).map(|(a, n)| Witness { side: Side::S, a, n }))
}

/// Boolean form of [`is_tilting_explicit`].
pub fn explicit_tilting(p: Prime, r: u64, s: u64) -> bool {
    let pp = primitive_pair(p, r, s);
    digit_witness(p, pp.r_hat, pp.s_hat).is_some()
}

pub fn is_tilting_explicit(p: Prime, r: u64, s: u64) -> Verdict {
    let pp = primitive_pair(p, r, s);
    let witness = digit_witness(p, pp.r_hat, pp.s_hat);
    let (ri, si) = (i128::from(r), i128::from(s));
    let trace = vec![
        Step {
            rule: Rule::Primitive(pp),
            r: ri,
            s: si,
            premises: vec![],
            tilting: None,
        },
        Step {
            rule: Rule::DigitCriterion { witness },
            r: i128::from(pp.r_hat),
            s: i128::from(pp.s_hat),
            premises: vec![0],
            tilting: Some(witness.is_some()),
        },
    ];
    Verdict {
        tilting: witness.is_some(),
        trace,
    }
}

/// A rule applied at one step of a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// One factor is the zero module (weight `-1`).
    ZeroModule,
    /// Both weights are at most `p-1`.
    Restricted,
    /// `r = pt + p-1`, `s = pu + p-1`: tilting iff `(t, u)` is.
    SteinbergTwist { t: i64, u: i64 },
    /// `r = pt + v` with `v <= p-2`, `s = pu + p-1`: tilting iff both
    /// `(t, u)` and `(t-1, u)` are.
    JantzenFiltration { t: i64, v: i64, u: i64 },
    /// Tilting iff the dual pair `(s, r)` is.
    Duality,
    /// Neither weight is `-1 (mod p)` and both have quotient `band`.
    SameBand { band: i64 },
    /// Neither weight is `-1 (mod p)` and the quotients differ.
    DifferentBands,
    /// Computes the primitive pair; carries no verdict of its own.
    Primitive(PrimitivePair),
    /// The digit criterion on the primitive pair.
    DigitCriterion { witness: Option<Witness> },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::ZeroModule => "zero-module",
            Rule::Restricted => "restricted",
            Rule::SteinbergTwist { .. } => "steinberg-twist",
            Rule::JantzenFiltration { .. } => "jantzen-filtration",
            Rule::Duality => "duality",
            Rule::SameBand { .. } => "same-band",
            Rule::DifferentBands => "different-bands",
            Rule::Primitive(_) => "primitive",
            Rule::DigitCriterion { .. } => "digit-criterion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub r: i128,
    pub s: i128,
    /// Indices of earlier steps this one depends on.
    pub premises: Vec<usize>,
    pub tilting: Option<bool>,
}

/// A decision together with the derivation that produced it.
///
/// Steps are in dependency order; the last step concludes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub tilting: bool,
    pub trace: Vec<Step>,
}

impl Verdict {
    /// Re-checks every step of the trace against its rule and returns the
    /// verdict the trace establishes.
    pub fn replay(&self, p: Prime) -> Result<bool> {
        let bad = |i: usize, why: &str| Error::Inconsistency(format!("step {i}: {why}"));
        let q = i128::from(p.get());
        for (i, step) in self.trace.iter().enumerate() {
            if step.premises.iter().any(|&j| j >= i) {
                return Err(bad(i, "premise does not precede its conclusion"));
            }
            let premise = |k: usize| step.premises.get(k).map(|&j| &self.trace[j]);
            let (r, s) = (step.r, step.s);
            let expected = match step.rule {
                Rule::ZeroModule => (r == -1 || s == -1).then_some(Some(true)),
                Rule::Restricted => {
                    ((0..q).contains(&r) && (0..q).contains(&s)).then_some(Some(true))
                }
                Rule::SteinbergTwist { t, u } => {
                    let (t, u) = (i128::from(t), i128::from(u));
                    let shape = q * t + q - 1 == r && q * u + q - 1 == s && t >= 0 && u >= 0;
                    match (premise(0), step.premises.len()) {
                        (Some(pr), 1) if shape && (pr.r, pr.s) == (t, u) => Some(pr.tilting),
                        _ => None,
                    }
                }
                Rule::JantzenFiltration { t, v, u } => {
                    let (t, v, u) = (i128::from(t), i128::from(v), i128::from(u));
                    let shape = q * t + v == r
                        && (0..=q - 2).contains(&v)
                        && q * u + q - 1 == s
                        && t >= 0
                        && u >= 0;
                    let first = premise(0).filter(|pr| (pr.r, pr.s) == (t, u));
                    let second = premise(1).filter(|pr| (pr.r, pr.s) == (t - 1, u));
                    match (shape, first, second, step.premises.len()) {
                        (true, Some(a), _, 1) if a.tilting == Some(false) => Some(Some(false)),
                        (true, Some(a), Some(b), 2) if a.tilting == Some(true) => Some(b.tilting),
                        _ => None,
                    }
                }
                Rule::Duality => match (premise(0), step.premises.len()) {
                    (Some(pr), 1) if (pr.r, pr.s) == (s, r) => Some(pr.tilting),
                    _ => None,
                },
                Rule::SameBand { band } => {
                    let ok = r >= 0
                        && s >= 0
                        && r % q != q - 1
                        && s % q != q - 1
                        && r / q == i128::from(band)
                        && s / q == i128::from(band);
                    ok.then_some(Some(true))
                }
                Rule::DifferentBands => {
                    let ok = r >= 0
                        && s >= 0
                        && r % q != q - 1
                        && s % q != q - 1
                        && r / q != s / q;
                    ok.then_some(Some(false))
                }
                Rule::Primitive(pp) => match (u64::try_from(r), u64::try_from(s)) {
                    (Ok(r), Ok(s)) => (primitive_pair(p, r, s) == pp).then_some(None),
                    _ => None,
                },
                Rule::DigitCriterion { witness } => match (premise(0), step.premises.len()) {
                    (Some(Step { rule: Rule::Primitive(pp), .. }), 1)
                        if (i128::from(pp.r_hat), i128::from(pp.s_hat)) == (r, s) =>
                    {
                        let recomputed = digit_witness(p, pp.r_hat, pp.s_hat);
                        let holds = match witness {
                            Some(w) => {
                                let (hat, other) = match w.side {
                                    Side::R => (pp.r_hat, pp.s_hat),
                                    Side::S => (pp.s_hat, pp.r_hat),
                                };
                                digit_form(p.get(), hat, other) == Some((w.a, w.n))
                            }
                            None => recomputed.is_none(),
                        };
                        holds.then_some(Some(witness.is_some()))
                    }
                    _ => None,
                },
            };
            match expected {
                Some(value) if value == step.tilting => {}
                Some(_) => return Err(bad(i, "recorded result contradicts the rule")),
                None => return Err(bad(i, "rule does not apply")),
            }
        }
        let last = self.trace.last().ok_or_else(|| bad(0, "empty trace"))?;
        match last.tilting {
            Some(t) if t == self.tilting => Ok(t),
            _ => Err(bad(self.trace.len() - 1, "final step does not match the verdict")),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {})", self.rule.name(), self.r, self.s)?;
        match self.rule {
            Rule::SteinbergTwist { t, u } => write!(f, " t={t} u={u}")?,
            Rule::JantzenFiltration { t, v, u } => write!(f, " t={t} v={v} u={u}")?,
            Rule::SameBand { band } => write!(f, " band={band}")?,
            Rule::Primitive(pp) => write!(
                f,
                " -> r̂={} ŝ={} ε={} m={}",
                pp.r_hat, pp.s_hat, pp.epsilon, pp.m
            )?,
            Rule::DigitCriterion { witness: Some(w) } => {
                let side = match w.side {
                    Side::R => "r̂",
                    Side::S => "ŝ",
                };
                write!(f, " {side} + 1 = {}·p^{}, a={} n={}", w.a + 1, w.n, w.a, w.n)?
            }
            Rule::DigitCriterion { witness: None } => f.write_str(" no witness")?,
            _ => {}
        }
        if !self.premises.is_empty() {
            let ids: Vec<String> = self.premises.iter().map(|i| format!("#{i}")).collect();
            write!(f, " from {}", ids.join(", "))?;
        }
        match self.tilting {
            Some(true) => f.write_str(" => tilting"),
            Some(false) => f.write_str(" => not tilting"),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.trace.iter().enumerate() {
            writeln!(f, "#{i} {step}")?;
        }
        Ok(())
    }
}

trait Recorder {
    fn record(&mut self, step: impl FnOnce() -> Step) -> usize;
}

struct Silent;

impl Recorder for Silent {
    #[inline]
    fn record(&mut self, _: impl FnOnce() -> Step) -> usize {
        0
    }
}

impl Recorder for Vec<Step> {
    fn record(&mut self, step: impl FnOnce() -> Step) -> usize {
        self.push(step());
        self.len() - 1
    }
}

fn conclude<R: Recorder>(
    rec: &mut R,
    rule: Rule,
    (r, s): (i64, i64),
    premises: &[usize],
    tilting: bool,
) -> (bool, usize) {
    let id = rec.record(|| Step {
        rule,
        r: r.into(),
        s: s.into(),
        premises: premises.to_vec(),
        tilting: Some(tilting),
    });
    (tilting, id)
}

fn recurse<R: Recorder>(q: i64, r: i64, s: i64, rec: &mut R) -> (bool, usize) {
    if r == -1 || s == -1 {
        return conclude(rec, Rule::ZeroModule, (r, s), &[], true);
    }
    if r < q && s < q {
        return conclude(rec, Rule::Restricted, (r, s), &[], true);
    }
    let top = q - 1;
    match (r % q == top, s % q == top) {
        (true, true) => {
            let (t, u) = (r / q, s / q);
            let (ok, id) = recurse(q, t, u, rec);
            conclude(rec, Rule::SteinbergTwist { t, u }, (r, s), &[id], ok)
        }
        (false, true) => {
            let (t, v, u) = (r / q, r % q, s / q);
            let rule = Rule::JantzenFiltration { t, v, u };
            let (upper, a) = recurse(q, t, u, rec);
            if !upper {
                return conclude(rec, rule, (r, s), &[a], false);
            }
            let (lower, b) = recurse(q, t - 1, u, rec);
            conclude(rec, rule, (r, s), &[a, b], lower)
        }
        (true, false) => {
            let (ok, id) = recurse(q, s, r, rec);
            conclude(rec, Rule::Duality, (r, s), &[id], ok)
        }
        (false, false) => {
            let (rq, sq) = (r / q, s / q);
            if rq == sq {
                conclude(rec, Rule::SameBand { band: rq }, (r, s), &[], true)
            } else {
                conclude(rec, Rule::DifferentBands, (r, s), &[], false)
            }
        }
    }
}

fn check_weights(p: Prime, r: i64, s: i64) -> Result<i64> {
    for w in [r, s] {
        if w < -1 {
            return Err(Error::InvalidWeight(w));
        }
    }
    i64::try_from(p.get()).map_err(|_| Error::Overflow("prime"))
}

/// Boolean form of [`is_tilting_recursive`]; records no trace.
pub fn recursive_tilting(p: Prime, r: i64, s: i64) -> Result<bool> {
    let q = check_weights(p, r, s)?;
    Ok(recurse(q, r, s, &mut Silent).0)
}

/// The recursive decision procedure. Weight `-1` stands for the zero module.
pub fn is_tilting_recursive(p: Prime, r: i64, s: i64) -> Result<Verdict> {
    let q = check_weights(p, r, s)?;
    let mut trace = Vec::new();
    let (tilting, _) = recurse(q, r, s, &mut trace);
    Ok(Verdict { tilting, trace })
}
