use proptest::prelude::*;

use sl2_tilting::decide::{explicit_tilting, is_tilting_explicit, is_tilting_recursive, recursive_tilting};
use sl2_tilting::padic::primitive_pair;
use sl2_tilting::Prime;

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn recursive(p: Prime, r: i64, s: u64) -> bool {
    recursive_tilting(p, r, s as i64).unwrap()
}

fn small_prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101]).prop_map(prime)
}

/// If some `v + pt` with `v <= p-2` pairs tiltingly with `s`, so does every
/// weight in `[pt, pt + p-1]` and the weight `pt - 1` below it.
#[test]
fn tilting_propagates_along_a_block() {
    for q in [2u64, 3, 5, 7, 11] {
        let p = prime(q);
        let bound = (q.pow(4)).min(600);
        for t in 0..=bound / q {
            for s in 0..=bound {
                let seed = (0..=q - 2).any(|v| explicit_tilting(p, v + q * t, s));
                if !seed {
                    continue;
                }
                for v in 0..q {
                    let r = v + q * t;
                    assert!(explicit_tilting(p, r, s), "p={q} ({r}, {s})");
                    assert!(recursive(p, r as i64, s), "p={q} ({r}, {s})");
                }
                let below = q as i64 * t as i64 - 1;
                assert!(recursive(p, below, s), "p={q} ({below}, {s})");
                if below >= 0 {
                    assert!(explicit_tilting(p, below as u64, s), "p={q} ({below}, {s})");
                }
            }
        }
    }
}

#[test]
fn zero_module_is_tilting_with_everything() {
    for q in [2u64, 3, 5] {
        for s in -1..50 {
            assert!(recursive_tilting(prime(q), -1, s).unwrap());
            assert!(recursive_tilting(prime(q), s, -1).unwrap());
        }
    }
    assert!(recursive_tilting(prime(2), -2, 0).is_err());
}

proptest! {
    #[test]
    fn deciders_agree(p in small_prime(), r in 0u64..2_000_000, s in 0u64..2_000_000) {
        prop_assert_eq!(explicit_tilting(p, r, s), recursive(p, r as i64, s));
    }

    #[test]
    fn deciders_agree_near_powers(p in small_prime(), k in 1u32..6, a in 0u64..40, b in 0u64..40) {
        let top = p.get().pow(k);
        let (r, s) = (top.saturating_sub(a), top + b);
        prop_assert_eq!(explicit_tilting(p, r, s), recursive(p, r as i64, s));
    }

    #[test]
    fn duality(p in small_prime(), r in 0u64..1_000_000, s in 0u64..1_000_000) {
        prop_assert_eq!(explicit_tilting(p, r, s), explicit_tilting(p, s, r));
        prop_assert_eq!(recursive(p, r as i64, s), recursive(p, s as i64, r));
    }

    #[test]
    fn primitive_invariance(p in small_prime(), r in 0u64..1_000_000, s in 0u64..1_000_000) {
        let pp = primitive_pair(p, r, s);
        let verdict = recursive(p, r as i64, s);
        prop_assert_eq!(verdict, recursive(p, pp.r_hat as i64, pp.s_hat));
        prop_assert_eq!(explicit_tilting(p, r, s), explicit_tilting(p, pp.r_hat, pp.s_hat));
    }

    #[test]
    fn traces_replay(p in small_prime(), r in 0u64..100_000, s in 0u64..100_000) {
        let e = is_tilting_explicit(p, r, s);
        let rec = is_tilting_recursive(p, r as i64, s as i64).unwrap();
        prop_assert_eq!(e.replay(p), Ok(e.tilting));
        prop_assert_eq!(rec.replay(p), Ok(rec.tilting));
        prop_assert_eq!(e.tilting, rec.tilting);
    }

    #[test]
    fn huge_weights_are_decided(p in small_prime(), r in any::<u64>(), s in any::<u64>()) {
        let e = is_tilting_explicit(p, r, s);
        prop_assert_eq!(e.replay(p), Ok(e.tilting));
        if r <= i64::MAX as u64 && s <= i64::MAX as u64 {
            prop_assert_eq!(e.tilting, recursive(p, r as i64, s));
        }
    }
}
