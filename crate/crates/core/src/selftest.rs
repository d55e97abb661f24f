//! Invariant sweeps behind the `selftest` subcommand.
//!
//! Each suite runs over every pair `0 <= r, s <= max` (or the analogous
//! range) for every configured prime and records how many checks ran, how
//! many failed and the first counterexample in `(r, s)` order.

use std::fmt;

use rayon::prelude::*;

use crate::charring::{chi, exact_divide, jantzen_identity_check, steinberg_divides};
use crate::decide::{explicit_tilting, recursive_tilting};
use crate::padic::{primitive_pair, Prime};
use crate::tiltchar::{Greedy, TiltingCharacters};

/// The explicit decider under test; [`explicit_tilting`] unless a harness
/// substitutes another.
pub type Decider = dyn Fn(Prime, u64, u64) -> bool + Sync;

#[derive(Debug, Clone)]
pub struct SelfTest {
    pub primes: Vec<Prime>,
    pub max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub p: Prime,
    pub checked: u64,
    pub failed: u64,
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub results: Vec<SuiteResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(SuiteResult::passed)
    }

    pub fn first_failure(&self) -> Option<&SuiteResult> {
        self.results.iter().find(|r| !r.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(
                f,
                "{:<12} {:<22} p={:<3} checked {:>8}  failed {}",
                if r.passed() { "ok" } else { "FAIL" },
                r.suite,
                r.p,
                r.checked,
                r.failed
            )?;
        }
        match self.first_failure() {
            None => writeln!(f, "all suites passed"),
            Some(r) => writeln!(
                f,
                "first counterexample ({} p={}): {}",
                r.suite,
                r.p,
                r.counterexample.as_deref().unwrap_or("?")
            ),
        }
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    // Keeps the earlier counterexample, so row order is preserved.
    fn merge(mut self, later: Tally) -> Tally {
        self.checked += later.checked;
        self.failed += later.failed;
        if self.first.is_none() {
            self.first = later.first;
        }
        self
    }

    fn finish(self, suite: &'static str, p: Prime) -> SuiteResult {
        SuiteResult {
            suite,
            p,
            checked: self.checked,
            failed: self.failed,
            counterexample: self.first,
        }
    }
}

/// Runs `row(r, tally)` for `r = 0..=max` in parallel and merges in order.
fn by_rows<S, I>(max: u64, init: I, row: impl Fn(&mut S, u64, &mut Tally) + Sync) -> Tally
where
    I: Fn() -> S + Sync,
{
    let rows: Vec<Tally> = (0..=max)
        .into_par_iter()
        .map_init(&init, |state, r| {
            let mut t = Tally::default();
            row(state, r, &mut t);
            t
        })
        .collect();
    rows.into_iter().fold(Tally::default(), Tally::merge)
}

fn recursive(p: Prime, r: u64, s: u64) -> bool {
    recursive_tilting(p, r as i64, s as i64).expect("nonnegative weights")
}

impl SelfTest {
    pub fn new(primes: Vec<Prime>, max: u64) -> Self {
        SelfTest { primes, max }
    }

    pub fn run(&self) -> Report {
        self.run_with(&explicit_tilting)
    }

    pub fn run_with(&self, explicit: &Decider) -> Report {
        let mut report = Report::default();
        for &p in &self.primes {
            report.results.extend([
                self.oracle_equivalence(p, explicit),
                self.duality(p, explicit),
                self.band(p, explicit),
                self.primitive_invariance(p, explicit),
                self.necessary_conditions(p, explicit),
                self.jantzen_identity(p),
                self.steinberg_divisibility(p),
                self.greedy_consistency(p, explicit),
            ]);
        }
        report
    }

    fn oracle_equivalence(&self, p: Prime, explicit: &Decider) -> SuiteResult {
        by_rows(self.max, || (), |_, r, t| {
            for s in 0..=self.max {
                let (e, rec) = (explicit(p, r, s), recursive(p, r, s));
                t.check(e == rec, || format!("(r, s) = ({r}, {s}): explicit {e}, recursive {rec}"));
            }
        })
        .finish("oracle-equivalence", p)
    }

    fn duality(&self, p: Prime, explicit: &Decider) -> SuiteResult {
        by_rows(self.max, || (), |_, r, t| {
            for s in 0..=r {
                t.check(explicit(p, r, s) == explicit(p, s, r), || {
                    format!("explicit ({r}, {s}) differs from ({s}, {r})")
                });
                t.check(recursive(p, r, s) == recursive(p, s, r), || {
                    format!("recursive ({r}, {s}) differs from ({s}, {r})")
                });
            }
        })
        .finish("duality", p)
    }

    /// Near-diagonal pairs, pairs sharing a band and Steinberg pairs.
    fn band(&self, p: Prime, explicit: &Decider) -> SuiteResult {
        let q = p.get();
        let mut tally = by_rows(self.max, || (), |_, r, t| {
            for s in 0..=self.max {
                let near = r.abs_diff(s) <= 1;
                let band = crate::decide::classify(p, r, s).same_band;
                if near || band {
                    t.check(explicit(p, r, s) && recursive(p, r, s), || {
                        format!("({r}, {s}) is near-diagonal or in one band but not tilting")
                    });
                }
            }
        });
        let steinberg: Vec<u64> = std::iter::successors(Some(1u64), |w| w.checked_mul(q))
            .take_while(|&w| w - 1 <= self.max)
            .map(|w| w - 1)
            .collect();
        for &a in &steinberg {
            for &b in &steinberg {
                tally.check(explicit(p, a, b) && recursive(p, a, b), || {
                    format!("Steinberg pair ({a}, {b}) not tilting")
                });
            }
        }
        tally.finish("band", p)
    }

    fn primitive_invariance(&self, p: Prime, explicit: &Decider) -> SuiteResult {
        by_rows(self.max, || (), |_, r, t| {
            for s in 0..=self.max {
                let pp = primitive_pair(p, r, s);
                t.check(recursive(p, r, s) == recursive(p, pp.r_hat, pp.s_hat), || {
                    format!("recursive ({r}, {s}) differs from its primitive ({}, {})", pp.r_hat, pp.s_hat)
                });
                t.check(explicit(p, r, s) == explicit(p, pp.r_hat, pp.s_hat), || {
                    format!("explicit ({r}, {s}) differs from its primitive ({}, {})", pp.r_hat, pp.s_hat)
                });
            }
        })
        .finish("primitive-invariance", p)
    }

    fn necessary_conditions(&self, p: Prime, explicit: &Decider) -> SuiteResult {
        by_rows(self.max, || (), |_, r, t| {
            for s in 0..=self.max {
                if crate::decide::necessary_not_tilting(p, r, s) {
                    t.check(!explicit(p, r, s) && !recursive(p, r, s), || {
                        format!("({r}, {s}) fails a necessary condition but was declared tilting")
                    });
                }
            }
        })
        .finish("necessary-condition", p)
    }

    fn jantzen_identity(&self, p: Prime) -> SuiteResult {
        let q = p.get();
        by_rows(self.max / q, || (), |_, t_val, t| {
            for v in 0..=q.saturating_sub(2) {
                let ok = jantzen_identity_check(p, t_val, v);
                t.check(ok == Ok(true), || format!("t = {t_val}, v = {v}: {ok:?}"));
            }
        })
        .finish("jantzen-identity", p)
    }

    fn steinberg_divisibility(&self, p: Prime) -> SuiteResult {
        let q = p.get();
        let steinberg = chi(q as i64 - 1).expect("small weight");
        by_rows(self.max, || TiltingCharacters::new(p), |table, r, t| {
            let agreed = steinberg_divides(p, r);
            t.check(agreed.is_ok(), || format!("χ({r}): {agreed:?}"));
            if r + 1 >= q {
                let divides = table
                    .character(r)
                    .ok()
                    .and_then(|c| exact_divide(c, &steinberg).ok())
                    .flatten()
                    .is_some();
                t.check(divides, || format!("χ({}) does not divide Ch T({r})", q - 1));
            }
        })
        .finish("steinberg-divisibility", p)
    }

    fn greedy_consistency(&self, p: Prime, explicit: &Decider) -> SuiteResult {
        by_rows(self.max, || TiltingCharacters::new(p), |table, r, t| {
            let chi_r = chi(r as i64).expect("grid weight");
            for s in 0..=self.max {
                if !explicit(p, r, s) {
                    continue;
                }
                let product = &chi_r * &chi(s as i64).expect("grid weight");
                let outcome = table.greedy_decompose(&product);
                let ok = match &outcome {
                    Ok(Greedy::Decomposed(d)) => {
                        table.reconstruct(d).ok().as_ref() == Some(&product)
                            && table.decomposition_dimension(d).ok()
                                == Some(((r + 1) * (s + 1)) as i64)
                    }
                    _ => false,
                };
                t.check(ok, || format!("(r, s) = ({r}, {s}): greedy decomposition {outcome:?}"));
            }
        })
        .finish("greedy-consistency", p)
    }
}
