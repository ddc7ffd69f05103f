//! Helpers shared by the integration test suites: parsing shorthands,
//! seeded random generators, and independent oracles that rebuild library
//! results by unrelated means.
#![allow(dead_code)]

use midset::{Interval, IntervalSet, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rat(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn open_unit() -> IntervalSet {
    Interval::open(rat("0"), rat("1")).into()
}

pub fn pow3(exp: i32) -> Rational {
    Rational::new(1, 3).pow(exp)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng, max_abs_numer: i64, max_denom: i64) -> Rational {
    Rational::new(
        rng.gen_range(-max_abs_numer..=max_abs_numer),
        rng.gen_range(1..=max_denom),
    )
}

pub fn random_nonzero_rational(
    rng: &mut ChaCha8Rng,
    max_abs_numer: i64,
    max_denom: i64,
) -> Rational {
    loop {
        let r = random_rational(rng, max_abs_numer, max_denom);
        if !r.is_zero() {
            return r;
        }
    }
}

fn interval_between(a: Rational, b: Rational, lo_closed: bool, hi_closed: bool) -> Interval {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if lo == hi {
        Interval::point(lo)
    } else {
        Interval::new(lo, lo_closed, hi, hi_closed).unwrap()
    }
}

/// Up to `max_components` random intervals (possibly degenerate, possibly
/// overlapping before normalization) with endpoints of moderate size.
pub fn random_interval_set(rng: &mut ChaCha8Rng, max_components: usize) -> IntervalSet {
    let count = rng.gen_range(0..=max_components);
    let parts = (0..count)
        .map(|_| {
            interval_between(
                random_rational(rng, 50, 20),
                random_rational(rng, 50, 20),
                rng.gen_bool(0.5),
                rng.gen_bool(0.5),
            )
        })
        .collect();
    IntervalSet::new(parts)
}

/// Like [`random_interval_set`] but with all endpoints in `[0, 1]` on the
/// grid `1/denominator`, so grid-based oracles stay affordable.
pub fn random_unit_interval_set(
    rng: &mut ChaCha8Rng,
    max_components: usize,
    denominator: i64,
) -> IntervalSet {
    let count = rng.gen_range(0..=max_components);
    let parts = (0..count)
        .map(|_| {
            interval_between(
                Rational::new(rng.gen_range(0..=denominator), denominator),
                Rational::new(rng.gen_range(0..=denominator), denominator),
                rng.gen_bool(0.5),
                rng.gen_bool(0.5),
            )
        })
        .collect();
    IntervalSet::new(parts)
}

/// Stage oracle that never touches the affine recursion: a stage component
/// is `[v, v + 3^-level]` for each prefix `v = Σ d_i 3^-i` over digit
/// strings `d ∈ {0, 2}^level`.
pub fn enumerated_stage(level: u32) -> IntervalSet {
    let width = pow3(level as i32);
    let comps = (0..1u64 << level)
        .map(|bits| {
            let mut lo = Rational::zero();
            for pos in 0..level {
                if (bits >> pos) & 1 == 1 {
                    lo = lo + Rational::from_integer(2) * pow3(pos as i32 + 1);
                }
            }
            Interval::closed(lo.clone(), lo + &width)
        })
        .collect();
    IntervalSet::new(comps)
}

/// Asserts the canonical-form invariants directly on the component list:
/// ordered, pairwise disjoint, and no two adjacent components joinable.
pub fn assert_canonical(set: &IntervalSet) {
    for comp in set.components() {
        assert!(
            comp.lo() < comp.hi() || (comp.is_point() && comp.lo_closed() && comp.hi_closed()),
            "malformed component {comp} in {set}"
        );
    }
    for pair in set.components().windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let separated = a.hi() < b.lo() || (a.hi() == b.lo() && !a.hi_closed() && !b.lo_closed());
        assert!(
            separated,
            "components {a} and {b} overlap or touch in {set}"
        );
    }
}
