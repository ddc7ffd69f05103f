//! Nested stage-component pairs witnessing a target as a midpoint.
//!
//! For a target `z ∈ (0, 1)` the chain holds, per level `n`, a pair of
//! stage-`n` components `(X_n, Y_n)` whose closed sum interval contains
//! `2z`; the pair at level `n + 1` is always a pair of children of the pair
//! at level `n`. Widths shrink by a factor of three per level, so the chain
//! localizes a candidate pair `(x, y)` with `(x + y)/2 = z` to arbitrary
//! precision.
//!
//! Selection is greedy and deterministic: among the feasible child pairs,
//! distinct components are preferred over `X = Y`, and ties are broken by
//! the smallest `lo(X)`, then the smallest `lo(Y)`. A feasible child pair
//! always exists because the child sum intervals tile the parent sum
//! interval. When only the diagonal pair is ever feasible — which happens
//! for targets like `1/4` that lie in the limit set but are midpoints of no
//! distinct pair of limit-set points — the chain reports separation as not
//! yet certified rather than inventing a distinct pair.

use serde::Serialize;

use crate::cantor::stage_with_caps;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::Caps;

/// One level of a witness chain: two (possibly equal) components of the
/// stage at `level`, each of width `bound = 3^-level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    level: u32,
    #[serde(rename = "X")]
    x: Interval,
    #[serde(rename = "Y")]
    y: Interval,
    bound: Rational,
}

impl WitnessPair {
    fn new(level: u32, x: Interval, y: Interval) -> Self {
        WitnessPair {
            level,
            x,
            y,
            bound: Rational::new(1, 3).pow(level as i32),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn x(&self) -> &Interval {
        &self.x
    }

    pub fn y(&self) -> &Interval {
        &self.y
    }

    /// Component width at this level, `3^-level`.
    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == self.y
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessChain {
    #[serde(rename = "z")]
    target: Rational,
    pairs: Vec<WitnessPair>,
    #[serde(rename = "separated_at_level")]
    separated_at: Option<u32>,
}

impl WitnessChain {
    pub fn target(&self) -> &Rational {
        &self.target
    }

    pub fn depth(&self) -> u32 {
        self.pairs.len() as u32
    }

    pub fn pairs(&self) -> &[WitnessPair] {
        &self.pairs
    }

    /// First level at which the two components became distinct, if any.
    pub fn separated_at(&self) -> Option<u32> {
        self.separated_at
    }

    pub fn is_separated(&self) -> bool {
        self.separated_at.is_some()
    }

    pub fn last_pair(&self) -> &WitnessPair {
        self.pairs.last().expect("chains have depth at least 1")
    }

    /// Worst-case distance from `z` to a midpoint of representatives drawn
    /// from the deepest pair: `max |(u + v)/2 − z|` over `u ∈ X, v ∈ Y`.
    /// The linear form attains the maximum at the corners, and feasibility
    /// bounds it by `3^-depth`.
    pub fn midpoint_residual(&self) -> Rational {
        let pair = self.last_pair();
        let low = (pair.x.lo() + pair.y.lo()).half() - &self.target;
        let high = (pair.x.hi() + pair.y.hi()).half() - &self.target;
        low.abs().max(high.abs())
    }

    pub fn refine(&self, extra_depth: u32) -> Result<WitnessChain> {
        self.refine_with_caps(extra_depth, &Caps::default())
    }

    /// Extends the chain by `extra_depth` levels with the same greedy rule,
    /// so refining a shallow chain reproduces a deeper direct search.
    pub fn refine_with_caps(&self, extra_depth: u32, caps: &Caps) -> Result<WitnessChain> {
        let depth = self
            .depth()
            .checked_add(extra_depth)
            .ok_or_else(|| Error::InvalidArgument("refined depth overflows".into()))?;
        if depth > caps.stage {
            return Err(Error::ResourceCap {
                requested: depth,
                cap: caps.stage,
            });
        }
        let mut chain = self.clone();
        extend_chain(&mut chain, depth);
        Ok(chain)
    }
}

pub fn find_witness(z: &Rational, depth: u32) -> Result<WitnessChain> {
    find_witness_with_caps(z, depth, &Caps::default())
}

pub fn find_witness_with_caps(z: &Rational, depth: u32, caps: &Caps) -> Result<WitnessChain> {
    if depth < 1 {
        return Err(Error::InvalidLevel(depth));
    }
    if z <= &Rational::zero() || z >= &Rational::one() {
        return Err(Error::OutsideOpenUnitInterval { value: z.clone() });
    }
    if depth > caps.stage {
        return Err(Error::ResourceCap {
            requested: depth,
            cap: caps.stage,
        });
    }

    let two_z = z + z;
    let base = stage_with_caps(1, caps)?;
    let comps = base.set().components();
    let (a, b) = (comps[0].clone(), comps[1].clone());
    let first = select_pair(
        [(a.clone(), a.clone()), (a, b.clone()), (b.clone(), b)],
        &two_z,
    );

    let mut chain = WitnessChain {
        target: z.clone(),
        pairs: Vec::with_capacity(depth as usize),
        separated_at: None,
    };
    push_pair(&mut chain, 1, first);
    extend_chain(&mut chain, depth);
    Ok(chain)
}

fn extend_chain(chain: &mut WitnessChain, depth: u32) {
    let two_z = chain.target.clone() + &chain.target;
    while chain.depth() < depth {
        let level = chain.depth() + 1;
        let prev = chain.last_pair();
        let next = select_pair(child_candidates(prev), &two_z);
        push_pair(chain, level, next);
    }
}

fn push_pair(chain: &mut WitnessChain, level: u32, (x, y): (Interval, Interval)) {
    if chain.separated_at.is_none() && x != y {
        chain.separated_at = Some(level);
    }
    chain.pairs.push(WitnessPair::new(level, x, y));
}

/// The candidate pairs at the next level: all combinations of children of
/// the current pair, kept in `lo(X) <= lo(Y)` order.
fn child_candidates(pair: &WitnessPair) -> Vec<(Interval, Interval)> {
    let (xl, xr) = split(&pair.x);
    if pair.is_diagonal() {
        vec![(xl.clone(), xl.clone()), (xl, xr.clone()), (xr.clone(), xr)]
    } else {
        let (yl, yr) = split(&pair.y);
        vec![
            (xl.clone(), yl.clone()),
            (xl, yr.clone()),
            (xr.clone(), yl),
            (xr, yr),
        ]
    }
}

/// The two surviving thirds of a closed stage component.
fn split(iv: &Interval) -> (Interval, Interval) {
    let third = iv.length() / Rational::from_integer(3);
    (
        Interval::closed(iv.lo().clone(), iv.lo() + &third),
        Interval::closed(iv.hi() - &third, iv.hi().clone()),
    )
}

/// Closed sum-interval feasibility: `2z ∈ [lo X + lo Y, hi X + hi Y]`.
fn sum_contains(x: &Interval, y: &Interval, two_z: &Rational) -> bool {
    &(x.lo() + y.lo()) <= two_z && two_z <= &(x.hi() + y.hi())
}

fn select_pair(
    candidates: impl IntoIterator<Item = (Interval, Interval)>,
    two_z: &Rational,
) -> (Interval, Interval) {
    let mut best_off: Option<(Interval, Interval)> = None;
    let mut diagonal: Option<(Interval, Interval)> = None;
    for (x, y) in candidates {
        if !sum_contains(&x, &y, two_z) {
            continue;
        }
        if x == y {
            // At most one diagonal can be feasible: distinct components are
            // disjoint, so z cannot lie in two of them.
            diagonal = Some((x, y));
        } else {
            let better = match &best_off {
                None => true,
                Some((bx, by)) => (x.lo(), y.lo()) < (bx.lo(), by.lo()),
            };
            if better {
                best_off = Some((x, y));
            }
        }
    }
    best_off
        .or(diagonal)
        .expect("child sum intervals tile the parent sum interval")
}
